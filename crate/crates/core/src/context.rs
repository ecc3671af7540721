//! Unit system and speed-regime classification.
//!
//! Every formula in the crate reads `c`, `c_m` and `ħ` from an
//! [`InvariantSpeedContext`]; there are no global physical constants.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::Vec3;

/// Default relative tolerance for deciding that a speed equals `c`.
pub const DEFAULT_LUMINAL_TOL: f64 = 1e-12;

/// Light speed `c`, invariant maximum speed `c_m > c` and reduced Planck
/// constant `ħ` in one consistent unit system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantSpeedContext {
    c: f64,
    c_max: f64,
    hbar: f64,
}

impl InvariantSpeedContext {
    pub fn new(c: f64, c_max: f64, hbar: f64) -> Result<Self> {
        for (name, value) in [("c", c), ("c_m", c_max), ("hbar", hbar)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::NonPositiveConstant { name, value });
            }
        }
        if c_max <= c {
            return Err(Error::MaxSpeedNotAboveLightSpeed { c, c_max });
        }
        Ok(Self { c, c_max, hbar })
    }

    /// Natural units: `c = 1`, `ħ = 1`, `c_m` given in units of `c`.
    pub fn natural(c_max: f64) -> Result<Self> {
        Self::new(1.0, c_max, 1.0)
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn c_max(&self) -> f64 {
        self.c_max
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Planck constant `h = 2πħ`.
    pub fn h(&self) -> f64 {
        2.0 * PI * self.hbar
    }

    /// `1 - s²/c_m²`, evaluated as `(c_m - s)(c_m + s)/c_m²` so that it keeps
    /// full relative precision as `s → c_m`.
    pub fn speed_gap(&self, speed: f64) -> Result<f64> {
        let s = speed.abs();
        if !(s < self.c_max) {
            return Err(Error::SpeedExceedsMaximum { speed: s, c_max: self.c_max });
        }
        Ok(gap(self.c_max, s))
    }

    /// `1/√(1 - s²/c_m²)` for a scalar speed.
    pub fn gamma_of_speed(&self, speed: f64) -> Result<f64> {
        Ok(1.0 / self.speed_gap(speed)?.sqrt())
    }
}

impl fmt::Display for InvariantSpeedContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c = {}, c_m = {}, hbar = {}", self.c, self.c_max, self.hbar)
    }
}

pub fn make_context(c: f64, c_max: f64, hbar: f64) -> Result<InvariantSpeedContext> {
    InvariantSpeedContext::new(c, c_max, hbar)
}

/// `1 - s²/limit²` without cancellation near the limit.
pub(crate) fn gap(limit: f64, s: f64) -> f64 {
    ((limit - s) / limit) * ((limit + s) / limit)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegimeTag {
    Subluminal,
    Luminal,
    Superluminal,
}

impl RegimeTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RegimeTag::Subluminal => "subluminal",
            RegimeTag::Luminal => "luminal",
            RegimeTag::Superluminal => "superluminal",
        }
    }
}

impl fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classify a speed relative to `c`. `tol` is relative to `c`.
pub fn classify_speed(ctx: &InvariantSpeedContext, speed: f64, tol: f64) -> Result<RegimeTag> {
    let s = speed.abs();
    if !(s < ctx.c_max()) {
        return Err(Error::SpeedExceedsMaximum { speed: s, c_max: ctx.c_max() });
    }
    let band = tol.abs() * ctx.c();
    Ok(if (s - ctx.c()).abs() <= band {
        RegimeTag::Luminal
    } else if s < ctx.c() {
        RegimeTag::Subluminal
    } else {
        RegimeTag::Superluminal
    })
}

/// Classify a velocity vector by its magnitude. Accepts raw components so it
/// can be used before a [`crate::vector::Velocity3`] is built.
pub fn classify_regime(ctx: &InvariantSpeedContext, v: Vec3, tol: f64) -> Result<RegimeTag> {
    classify_speed(ctx, v.norm(), tol)
}

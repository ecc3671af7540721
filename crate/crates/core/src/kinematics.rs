//! Mass–velocity law, four-velocity, four-momentum, energy and photon
//! relations for a particle with characteristic mass `m_c = m(c)`.
//!
//! All formulas are evaluated on the whole range `0 ≤ |v| < c_m`.

use crate::context::{gap, InvariantSpeedContext};
use crate::error::{Error, Result};
use crate::vector::{FourVector, Vec3, Velocity3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourMomentum {
    pub energy: f64,
    pub p: Vec3,
}

impl FourMomentum {
    pub fn new(energy: f64, p: Vec3) -> Self {
        FourMomentum { energy, p }
    }

    /// Real-metric four-vector `(E/c_m, p)`.
    pub fn to_four_vector(&self, ctx: &InvariantSpeedContext) -> FourVector {
        FourVector::new(self.energy / ctx.c_max(), self.p.x, self.p.y, self.p.z)
    }
}

/// Photon of frequency `nu` (measured at speed `c`) moving at `speed`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonSpec {
    nu: f64,
    speed: f64,
}

impl PhotonSpec {
    pub fn new(ctx: &InvariantSpeedContext, nu: f64, speed: f64) -> Result<Self> {
        if !(nu.is_finite() && nu > 0.0) {
            return Err(Error::InvalidParameter(format!("frequency must be positive, got {nu}")));
        }
        if !(speed < ctx.c_max()) {
            return Err(Error::SpeedExceedsMaximum { speed, c_max: ctx.c_max() });
        }
        if speed < ctx.c() {
            return Err(Error::SpeedBelowLight { speed, c: ctx.c() });
        }
        Ok(PhotonSpec { nu, speed })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }
}

/// Mass, energy and frequency of a photon moving at `c ≤ v < c_m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperluminalPhoton {
    pub mass: f64,
    pub energy: f64,
    pub frequency: f64,
}

fn check_mass(m: f64) -> Result<()> {
    if !(m.is_finite() && m >= 0.0) {
        return Err(Error::InvalidMass { m_c: m, requirement: "non-negative" });
    }
    Ok(())
}

/// `√((c_m² - c²)/(c_m² - v²))`, the growth factor of mass, energy and
/// frequency relative to their values at `v = c`.
fn growth_factor(ctx: &InvariantSpeedContext, speed: f64) -> Result<f64> {
    let s = speed.abs();
    if !(s < ctx.c_max()) {
        return Err(Error::SpeedExceedsMaximum { speed: s, c_max: ctx.c_max() });
    }
    let cm = ctx.c_max();
    Ok((gap(cm, ctx.c()) / gap(cm, s)).sqrt())
}

/// `m(v) = m_c·√((c_m² - c²)/(c_m² - v²))`, with `m(c) = m_c`.
pub fn mass_of_velocity(ctx: &InvariantSpeedContext, m_c: f64, v: &Velocity3) -> Result<f64> {
    mass_at_speed(ctx, m_c, v.speed())
}

/// Scalar-speed form of [`mass_of_velocity`].
pub fn mass_at_speed(ctx: &InvariantSpeedContext, m_c: f64, speed: f64) -> Result<f64> {
    check_mass(m_c)?;
    Ok(m_c * growth_factor(ctx, speed)?)
}

/// Mass–velocity law with the speed entering through its gap
/// `1 - v²/c_m²`, for callers that know the gap more precisely than `v`.
pub fn mass_from_speed_gap(ctx: &InvariantSpeedContext, m_c: f64, speed_gap: f64) -> Result<f64> {
    check_mass(m_c)?;
    if !(speed_gap > 0.0 && speed_gap <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "speed gap 1 - v^2/c_m^2 must lie in (0, 1], got {speed_gap}"
        )));
    }
    Ok(m_c * (gap(ctx.c_max(), ctx.c()) / speed_gap).sqrt())
}

/// `m(v)·√(1 - v²/c_m²)`; the same for every speed of a given particle.
pub fn invariant_mass_product(
    ctx: &InvariantSpeedContext,
    m_c: f64,
    v: &Velocity3,
) -> Result<f64> {
    let m = mass_of_velocity(ctx, m_c, v)?;
    Ok(m * ctx.speed_gap(v.speed())?.sqrt())
}

/// `U = γ(c_m, v)` with `γ = 1/√(1 - v²/c_m²)`; `U·U = c_m²`.
pub fn four_velocity(ctx: &InvariantSpeedContext, v: &Velocity3) -> Result<FourVector> {
    let gamma = ctx.gamma_of_speed(v.speed())?;
    Ok(FourVector::new(
        gamma * ctx.c_max(),
        gamma * v.x(),
        gamma * v.y(),
        gamma * v.z(),
    ))
}

/// `p = m_c·v·γ`, `E = m_c·c_m²·γ`.
pub fn four_momentum(ctx: &InvariantSpeedContext, m_c: f64, v: &Velocity3) -> Result<FourMomentum> {
    check_mass(m_c)?;
    let gamma = ctx.gamma_of_speed(v.speed())?;
    let cm = ctx.c_max();
    Ok(FourMomentum::new(m_c * cm * cm * gamma, v.as_vec() * (m_c * gamma)))
}

/// `|E² - p²c_m² - m_c²c_m⁴| / max(E², 1)`.
pub fn energy_momentum_residual(ctx: &InvariantSpeedContext, fm: &FourMomentum, m_c: f64) -> f64 {
    let cm = ctx.c_max();
    let rest = m_c * cm * cm;
    let pc = fm.p.norm() * cm;
    // E² - (pc)² factored to keep precision when E ≈ pc
    let lhs = (fm.energy - pc) * (fm.energy + pc);
    (lhs - rest * rest).abs() / (fm.energy * fm.energy).max(1.0)
}

/// `E = m(v)·c_m³/√(c_m² - c²)`.
pub fn energy_from_mass(ctx: &InvariantSpeedContext, m_v: f64) -> Result<f64> {
    check_mass(m_v)?;
    let cm = ctx.c_max();
    Ok(m_v * cm * cm / gap(cm, ctx.c()).sqrt())
}

/// Characteristic mass of a photon of frequency `nu` moving at `c`:
/// `m = hν·√(1 - c²/c_m²)/c_m²`.
pub fn photon_mass_at_c(ctx: &InvariantSpeedContext, nu: f64) -> Result<f64> {
    if !(nu.is_finite() && nu >= 0.0) {
        return Err(Error::InvalidParameter(format!("frequency must be non-negative, got {nu}")));
    }
    let cm = ctx.c_max();
    Ok(ctx.h() * nu * gap(cm, ctx.c()).sqrt() / (cm * cm))
}

pub fn superluminal_photon(
    ctx: &InvariantSpeedContext,
    spec: &PhotonSpec,
) -> Result<SuperluminalPhoton> {
    let growth = growth_factor(ctx, spec.speed)?;
    let frequency = spec.nu * growth;
    let mass = photon_mass_at_c(ctx, spec.nu)? * growth;
    Ok(SuperluminalPhoton { mass, energy: ctx.h() * frequency, frequency })
}

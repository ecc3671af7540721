//! Collinear two-particle collision seen from the lab frame Σ and the
//! centre-of-mass frame Σ'.
//!
//! In Σ' the particles approach with `+v'` and `-v'`; Σ' moves at `v` along
//! x relative to Σ, and after the (perfectly inelastic) collision both
//! particles move at `v` in Σ. Masses follow the mass–velocity law of
//! [`crate::kinematics::mass_at_speed`].

use crate::context::{classify_speed, InvariantSpeedContext, RegimeTag, DEFAULT_LUMINAL_TOL};
use crate::error::{Error, Result};
use crate::kinematics::{energy_from_mass, mass_at_speed, mass_from_speed_gap};
use crate::vector::Vec3;
use crate::xform::{compose_velocity, BoostParameter};

/// Guard against division by zero in residual normalisation.
pub const RESIDUAL_EPS: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionScenario {
    pub m_c1: f64,
    pub m_c2: f64,
    pub v_cm: f64,
    pub v_prime: f64,
}

impl CollisionScenario {
    pub fn new(
        ctx: &InvariantSpeedContext,
        m_c1: f64,
        m_c2: f64,
        v_cm: f64,
        v_prime: f64,
    ) -> Result<Self> {
        for m in [m_c1, m_c2] {
            if !(m.is_finite() && m >= 0.0) {
                return Err(Error::InvalidMass { m_c: m, requirement: "non-negative" });
            }
        }
        for s in [v_cm, v_prime] {
            if !(s.abs() < ctx.c_max()) {
                return Err(Error::SpeedExceedsMaximum { speed: s.abs(), c_max: ctx.c_max() });
            }
        }
        let s = CollisionScenario { m_c1, m_c2, v_cm, v_prime };
        lab_velocities(ctx, &s)?;
        Ok(s)
    }

    /// Two identical particles of characteristic mass `m_c`.
    pub fn identical(ctx: &InvariantSpeedContext, m_c: f64, v_cm: f64, v_prime: f64) -> Result<Self> {
        Self::new(ctx, m_c, m_c, v_cm, v_prime)
    }
}

/// Lab-frame speeds `v1 = (v' + v)/(1 + vv'/c_m²)`, `v2 = (-v' + v)/(1 - vv'/c_m²)`.
pub fn lab_velocities(ctx: &InvariantSpeedContext, s: &CollisionScenario) -> Result<(f64, f64)> {
    let b = BoostParameter::new(ctx, s.v_cm)?;
    let v1 = compose_velocity(ctx, b, Vec3::new(s.v_prime, 0.0, 0.0))?.x;
    let v2 = compose_velocity(ctx, b, Vec3::new(-s.v_prime, 0.0, 0.0))?.x;
    for v in [v1, v2] {
        if !(v.abs() < ctx.c_max()) {
            return Err(Error::SpeedExceedsMaximum { speed: v.abs(), c_max: ctx.c_max() });
        }
    }
    Ok((v1, v2))
}

/// `1 ∓ x` for `x = v/c_m`, from `c_m ∓ v` so that neither loses precision.
fn complements(cm: f64, v: f64) -> (f64, f64) {
    ((cm - v) / cm, (cm + v) / cm)
}

/// `(1 + vv'/c_m², 1 - vv'/c_m²)` as sums of non-negative products of the
/// complements, well conditioned even when `vv'/c_m² → ±1`.
fn composition_factors(ctx: &InvariantSpeedContext, s: &CollisionScenario) -> (f64, f64) {
    let (am, ap) = complements(ctx.c_max(), s.v_cm);
    let (bm, bp) = complements(ctx.c_max(), s.v_prime);
    (0.5 * (ap * bp + am * bm), 0.5 * (ap * bm + am * bp))
}

/// Speed gaps `1 - v_i²/c_m²` of the two lab speeds.
///
/// A lab speed close to `c_m` is rounded to within one ulp, which is large
/// next to `c_m - v_i`; the gap is instead assembled from
/// `1 ∓ v1/c_m = (1 ∓ v/c_m)(1 ∓ v'/c_m)/(1 + vv'/c_m²)` (and the mirror
/// image for `v2`), which keeps full relative precision.
fn lab_speed_gaps(ctx: &InvariantSpeedContext, s: &CollisionScenario) -> Result<(f64, f64)> {
    lab_velocities(ctx, s)?;
    let (am, ap) = complements(ctx.c_max(), s.v_cm);
    let (bm, bp) = complements(ctx.c_max(), s.v_prime);
    let (kp, km) = composition_factors(ctx, s);
    Ok(((am * bm / kp) * (ap * bp / kp), (am * bp / km) * (ap * bm / km)))
}

/// Lab-frame masses `(m(v1), m(v2))`.
pub fn lab_masses(ctx: &InvariantSpeedContext, s: &CollisionScenario) -> Result<(f64, f64)> {
    let (g1, g2) = lab_speed_gaps(ctx, s)?;
    Ok((mass_from_speed_gap(ctx, s.m_c1, g1)?, mass_from_speed_gap(ctx, s.m_c2, g2)?))
}

/// `|m1·v1 + m2·v2 - (m1 + m2)·v| / (|m1·v1| + |m2·v2| + ε)` for given masses.
pub fn momentum_residual_with_masses(
    ctx: &InvariantSpeedContext,
    s: &CollisionScenario,
    m1: f64,
    m2: f64,
) -> Result<f64> {
    let (v1, v2) = lab_velocities(ctx, s)?;
    let v = s.v_cm;
    // m1(v1 - v) + m2(v2 - v): same quantity, without the large common term
    let diff = m1 * (v1 - v) + m2 * (v2 - v);
    Ok(diff.abs() / ((m1 * v1).abs() + (m2 * v2).abs() + RESIDUAL_EPS))
}

/// Momentum balance before and after the collision, using the mass–velocity
/// law for the lab-frame masses.
pub fn momentum_conservation_residual(
    ctx: &InvariantSpeedContext,
    s: &CollisionScenario,
) -> Result<f64> {
    let (m1, m2) = lab_masses(ctx, s)?;
    momentum_residual_with_masses(ctx, s, m1, m2)
}

/// `|m1(1 - vv'/c_m²) - m2(1 + vv'/c_m²)|`, relative to the sum of both terms.
pub fn mass_ratio_residual_with_masses(
    ctx: &InvariantSpeedContext,
    s: &CollisionScenario,
    m1: f64,
    m2: f64,
) -> Result<f64> {
    lab_velocities(ctx, s)?;
    let (kp, km) = composition_factors(ctx, s);
    let a = m1 * km;
    let b = m2 * kp;
    Ok((a - b).abs() / (a.abs() + b.abs() + RESIDUAL_EPS))
}

pub fn mass_ratio_residual(ctx: &InvariantSpeedContext, s: &CollisionScenario) -> Result<f64> {
    let (m1, m2) = lab_masses(ctx, s)?;
    mass_ratio_residual_with_masses(ctx, s, m1, m2)
}

/// Largest pairwise relative spread of `m·√(1 - v²/c_m²)` over
/// `(mass, speed)` pairs.
pub fn product_spread(ctx: &InvariantSpeedContext, pairs: &[(f64, f64)]) -> Result<f64> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &(m, v) in pairs {
        let q = m * ctx.speed_gap(v)?.sqrt();
        lo = lo.min(q);
        hi = hi.max(q);
    }
    if pairs.len() < 2 {
        return Ok(0.0);
    }
    let scale = lo.abs().max(hi.abs());
    Ok(if scale > 0.0 { (hi - lo) / scale } else { 0.0 })
}

/// Spread of the invariant mass product of one particle across `speeds`.
pub fn invariant_product_check(
    ctx: &InvariantSpeedContext,
    m_c: f64,
    speeds: &[f64],
) -> Result<f64> {
    let pairs = speeds
        .iter()
        .map(|&v| Ok((mass_at_speed(ctx, m_c, v)?, v)))
        .collect::<Result<Vec<_>>>()?;
    product_spread(ctx, &pairs)
}

/// Everything reported for one scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionReport {
    pub v1: f64,
    pub v2: f64,
    pub m1: f64,
    pub m2: f64,
    pub regime1: RegimeTag,
    pub regime2: RegimeTag,
    pub regime_final: RegimeTag,
    pub momentum_residual: f64,
    pub mass_ratio_residual: f64,
    /// Sum of `m(v_i)` before and `m(v)` of both particles after.
    pub mass_before: f64,
    pub mass_after: f64,
    /// Sum of energies (via `E = m(v)·c_m³/√(c_m² - c²)`) before and after.
    pub energy_before: f64,
    pub energy_after: f64,
}

pub fn analyze(ctx: &InvariantSpeedContext, s: &CollisionScenario) -> Result<CollisionReport> {
    let (v1, v2) = lab_velocities(ctx, s)?;
    let (m1, m2) = lab_masses(ctx, s)?;
    let mf1 = mass_at_speed(ctx, s.m_c1, s.v_cm)?;
    let mf2 = mass_at_speed(ctx, s.m_c2, s.v_cm)?;
    let tol = DEFAULT_LUMINAL_TOL;
    Ok(CollisionReport {
        v1,
        v2,
        m1,
        m2,
        regime1: classify_speed(ctx, v1, tol)?,
        regime2: classify_speed(ctx, v2, tol)?,
        regime_final: classify_speed(ctx, s.v_cm, tol)?,
        momentum_residual: momentum_residual_with_masses(ctx, s, m1, m2)?,
        mass_ratio_residual: mass_ratio_residual_with_masses(ctx, s, m1, m2)?,
        mass_before: m1 + m2,
        mass_after: mf1 + mf2,
        energy_before: energy_from_mass(ctx, m1)? + energy_from_mass(ctx, m2)?,
        energy_after: energy_from_mass(ctx, mf1)? + energy_from_mass(ctx, mf2)?,
    })
}

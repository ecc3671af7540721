//! Boosts along the shared x axis, velocity composition, interval and
//! proper time.
//!
//! The generalized boost has the Lorentz form with `c` replaced by the
//! invariant maximum speed `c_m`. Each routine is written against a generic
//! speed limit so that the standard special-relativity formulas are the same
//! code path evaluated with `limit = c` (see [`standard`]).

use crate::context::{gap, InvariantSpeedContext};
use crate::error::{Error, Result};
use crate::vector::{FourVector, Vec3, Velocity3};

/// Signed velocity of frame Σ' along the common x/x' axis, as seen from Σ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostParameter {
    v_rel: f64,
}

impl BoostParameter {
    pub fn new(ctx: &InvariantSpeedContext, v_rel: f64) -> Result<Self> {
        check_boost(ctx.c_max(), v_rel)?;
        Ok(BoostParameter { v_rel })
    }

    pub fn v_rel(&self) -> f64 {
        self.v_rel
    }

    pub fn reversed(&self) -> Self {
        BoostParameter { v_rel: -self.v_rel }
    }
}

fn check_boost(limit: f64, v: f64) -> Result<()> {
    if !(v.abs() < limit) {
        return Err(Error::BoostAtMaximumSpeed { speed: v.abs(), c_max: limit });
    }
    Ok(())
}

/// Boost an event whose time slot holds `limit·t`.
fn boost_with_limit(limit: f64, v: f64, e: FourVector) -> Result<FourVector> {
    check_boost(limit, v)?;
    let beta = v / limit;
    let gamma = 1.0 / gap(limit, v.abs()).sqrt();
    Ok(FourVector::new(
        gamma * (e.t + beta * e.x),
        gamma * (e.x + beta * e.t),
        e.y,
        e.z,
    ))
}

fn compose_with_limit(limit: f64, v: f64, u: Vec3) -> Result<Vec3> {
    check_boost(limit, v)?;
    let speed = u.norm();
    if !(speed <= limit) {
        return Err(Error::SpeedExceedsMaximum { speed, c_max: limit });
    }
    let denom = 1.0 + (v / limit) * (u.x / limit);
    if denom == 0.0 {
        return Err(Error::CompositionSingularity { v, ux: u.x });
    }
    let root = gap(limit, v.abs()).sqrt();
    Ok(Vec3::new(
        (u.x + v) / denom,
        u.y * root / denom,
        u.z * root / denom,
    ))
}

/// Map an event from Σ' coordinates to Σ coordinates.
pub fn boost_event(
    ctx: &InvariantSpeedContext,
    b: BoostParameter,
    event_primed: FourVector,
) -> Result<FourVector> {
    boost_with_limit(ctx.c_max(), b.v_rel, event_primed)
}

/// Map an event from Σ coordinates back to Σ'.
pub fn inverse_boost_event(
    ctx: &InvariantSpeedContext,
    b: BoostParameter,
    event: FourVector,
) -> Result<FourVector> {
    boost_with_limit(ctx.c_max(), -b.v_rel, event)
}

/// Velocity in Σ of a particle moving with `u_primed` in Σ'.
///
/// Takes raw components: `|u_primed| = c_m` is accepted so the fixed point of
/// the composition law can be evaluated.
pub fn compose_velocity(
    ctx: &InvariantSpeedContext,
    b: BoostParameter,
    u_primed: Vec3,
) -> Result<Vec3> {
    compose_with_limit(ctx.c_max(), b.v_rel, u_primed)
}

/// Velocity in Σ' of a particle moving with `u` in Σ.
pub fn inverse_compose_velocity(
    ctx: &InvariantSpeedContext,
    b: BoostParameter,
    u: Vec3,
) -> Result<Vec3> {
    compose_with_limit(ctx.c_max(), -b.v_rel, u)
}

/// Velocity, in a frame moving at `c` along +x, of light travelling along
/// -x in the lab: `-2c·c_m²/(c² + c_m²)`. Lies in `(-2c, -c)`.
pub fn light_frame_counter_speed(ctx: &InvariantSpeedContext) -> f64 {
    let (c, cm) = (ctx.c(), ctx.c_max());
    -2.0 * c * cm * cm / (c * c + cm * cm)
}

/// `ds² = c_m²Δt² - Δx² - Δy² - Δz²`.
pub fn interval_squared(_ctx: &InvariantSpeedContext, a: FourVector, b: FourVector) -> f64 {
    (a - b).minkowski_sqr()
}

pub fn proper_time(ctx: &InvariantSpeedContext, ds_squared: f64) -> Result<f64> {
    if ds_squared < 0.0 {
        return Err(Error::ImaginaryProperTime { ds_squared });
    }
    Ok(ds_squared.sqrt() / ctx.c_max())
}

pub fn gamma_factor(ctx: &InvariantSpeedContext, v: &Velocity3) -> Result<f64> {
    ctx.gamma_of_speed(v.speed())
}

/// Residual of the collinear identity
/// `1 + u'v/c_m² = √(1-u'²/c_m²)·√(1-v²/c_m²) / √(1-u²/c_m²)`
/// where `u` is the composition of `u'` with `v`.
pub fn gamma_composition_residual(
    ctx: &InvariantSpeedContext,
    v_rel: f64,
    u_primed_x: f64,
) -> Result<f64> {
    let b = BoostParameter::new(ctx, v_rel)?;
    let u = compose_velocity(ctx, b, Vec3::new(u_primed_x, 0.0, 0.0))?.x;
    let cm2 = ctx.c_max() * ctx.c_max();
    let lhs = 1.0 + u_primed_x * v_rel / cm2;
    let rhs = (ctx.speed_gap(u_primed_x)? * ctx.speed_gap(v_rel)? / ctx.speed_gap(u)?).sqrt();
    Ok((lhs - rhs).abs())
}

/// Standard special relativity: the same boost and composition routines
/// evaluated with the light speed `c` as the limiting speed.
pub mod standard {
    use super::*;

    /// Boost of an event whose time slot holds `c·t`.
    pub fn boost(c: f64, v: f64, event_primed: FourVector) -> Result<FourVector> {
        boost_with_limit(c, v, event_primed)
    }

    pub fn compose(c: f64, v: f64, u_primed: Vec3) -> Result<Vec3> {
        compose_with_limit(c, v, u_primed)
    }

    /// `m = m₀/√(1 - v²/c²)`.
    pub fn mass(c: f64, m0: f64, speed: f64) -> Result<f64> {
        let s = speed.abs();
        if !(s < c) {
            return Err(Error::SpeedExceedsMaximum { speed: s, c_max: c });
        }
        Ok(m0 / gap(c, s).sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::make_context;

    fn ctx2() -> InvariantSpeedContext {
        make_context(1.0, 2.0, 1.0).unwrap()
    }

    #[test]
    fn identity_boost() {
        let ctx = ctx2();
        let b = BoostParameter::new(&ctx, 0.0).unwrap();
        let e = FourVector::event(&ctx, 1.3, -0.2, 4.0, 5.5);
        assert_eq!(boost_event(&ctx, b, e).unwrap(), e);
        assert_eq!(inverse_boost_event(&ctx, b, e).unwrap(), e);
    }

    #[test]
    fn boost_example() {
        let ctx = ctx2();
        let b = BoostParameter::new(&ctx, 1.2).unwrap();
        let e = boost_event(&ctx, b, FourVector::event(&ctx, 1.0, 0.0, 0.0, 0.0)).unwrap();
        assert!((e.x - 1.5).abs() < 1e-14);
        assert!((e.time(&ctx) - 1.25).abs() < 1e-14);

        let back = inverse_boost_event(&ctx, b, FourVector::event(&ctx, 1.25, 1.5, 0.0, 0.0))
            .unwrap();
        assert!(back.x.abs() < 1e-14);
        assert!((back.time(&ctx) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn boost_at_max_speed_fails() {
        let ctx = ctx2();
        assert!(matches!(
            BoostParameter::new(&ctx, 2.0),
            Err(Error::BoostAtMaximumSpeed { .. })
        ));
        assert!(BoostParameter::new(&ctx, -2.5).is_err());
        assert!(BoostParameter::new(&ctx, f64::NAN).is_err());
    }

    #[test]
    fn fixed_point_and_identity_composition() {
        let ctx = ctx2();
        for v in [-1.9, -1.0, 0.0, 0.7, 1.5, 1.99] {
            let b = BoostParameter::new(&ctx, v).unwrap();
            let u = compose_velocity(&ctx, b, Vec3::new(2.0, 0.0, 0.0)).unwrap();
            assert!((u.x - 2.0).abs() < 1e-12);
            let u = compose_velocity(&ctx, b, Vec3::new(-2.0, 0.0, 0.0)).unwrap();
            assert!((u.x + 2.0).abs() < 1e-12);
        }
        let b0 = BoostParameter::new(&ctx, 0.0).unwrap();
        let u = Vec3::new(0.3, -0.4, 1.1);
        assert_eq!(compose_velocity(&ctx, b0, u).unwrap(), u);
        assert_eq!(inverse_compose_velocity(&ctx, b0, u).unwrap(), u);
    }

    #[test]
    fn light_frame_views() {
        let ctx = ctx2();
        let b = BoostParameter::new(&ctx, 1.0).unwrap();
        let forward = inverse_compose_velocity(&ctx, b, Vec3::new(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(forward.x, 0.0);
        let backward = inverse_compose_velocity(&ctx, b, Vec3::new(-1.0, 0.0, 0.0)).unwrap();
        assert_eq!(backward.x, -1.6);
        assert_eq!(light_frame_counter_speed(&ctx), -1.6);
        // composing back recovers the lab velocity
        let lab = compose_velocity(&ctx, b, backward).unwrap();
        assert!((lab.x + 1.0).abs() < 1e-15);
    }

    #[test]
    fn composition_rejects_superlimit_input() {
        let ctx = ctx2();
        let b = BoostParameter::new(&ctx, 0.5).unwrap();
        assert!(compose_velocity(&ctx, b, Vec3::new(2.1, 0.0, 0.0)).is_err());
    }

    #[test]
    fn transverse_components() {
        let ctx = ctx2();
        let b = BoostParameter::new(&ctx, 1.2).unwrap();
        let u = compose_velocity(&ctx, b, Vec3::new(0.0, 1.0, 0.0)).unwrap();
        assert!((u.x - 1.2).abs() < 1e-15);
        assert!((u.y - 0.8).abs() < 1e-15);
        // the composed speed stays below c_m
        assert!(u.norm() < 2.0);
    }

    #[test]
    fn interval_and_proper_time() {
        let ctx = ctx2();
        let a = FourVector::event(&ctx, 0.7, 1.0, 2.0, 3.0);
        assert_eq!(interval_squared(&ctx, a, a), 0.0);
        let b = FourVector::event(&ctx, 1.0, 0.0, 0.0, 0.0);
        let o = FourVector::default();
        assert_eq!(interval_squared(&ctx, b, o), 4.0);
        assert_eq!(proper_time(&ctx, 0.0).unwrap(), 0.0);
        assert_eq!(proper_time(&ctx, 4.0).unwrap(), 1.0);
        assert!(matches!(
            proper_time(&ctx, -1.0),
            Err(Error::ImaginaryProperTime { .. })
        ));
    }

    #[test]
    fn superluminal_worldline_has_real_proper_time() {
        let ctx = ctx2();
        let (v, dt) = (1.5, 3.0);
        let e = FourVector::event(&ctx, dt, v * dt, 0.0, 0.0);
        let tau = proper_time(&ctx, interval_squared(&ctx, e, FourVector::default())).unwrap();
        let gamma = gamma_factor(&ctx, &Velocity3::along_x(&ctx, v).unwrap()).unwrap();
        assert!(tau > 0.0);
        assert!((tau - dt / gamma).abs() < 1e-14);
        assert!((tau - dt * (1.0f64 - v * v / 4.0).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn gamma_values() {
        let ctx = ctx2();
        let g = |s: f64| gamma_factor(&ctx, &Velocity3::along_x(&ctx, s).unwrap()).unwrap();
        assert_eq!(g(0.0), 1.0);
        assert!((g(1.2) - 1.25).abs() < 1e-15);
        assert!(g(0.999 * 2.0) > g(0.99 * 2.0));
        assert!(g(0.99 * 2.0) > g(0.9 * 2.0));
        assert!(gamma_factor(&ctx, &Velocity3::new(&ctx, 0.6, 0.8, 0.0).unwrap()).is_ok());
    }

    #[test]
    fn gamma_composition_identity_trivial_cases() {
        let ctx = ctx2();
        for u in [-1.9, -0.3, 0.0, 1.2, 1.95] {
            assert!(gamma_composition_residual(&ctx, 0.0, u).unwrap() < 1e-15);
            assert!(gamma_composition_residual(&ctx, u, 0.0).unwrap() < 1e-15);
        }
    }

    #[test]
    fn standard_path_is_the_same_code() {
        let ctx = make_context(1.0, 1.5, 1.0).unwrap();
        let b = BoostParameter::new(&ctx, 0.8).unwrap();
        let e = FourVector::new(0.3, 1.0, -2.0, 0.5);
        assert_eq!(boost_event(&ctx, b, e).unwrap(), standard::boost(1.5, 0.8, e).unwrap());
        let u = Vec3::new(0.4, 0.2, -0.1);
        assert_eq!(
            compose_velocity(&ctx, b, u).unwrap(),
            standard::compose(1.5, 0.8, u).unwrap()
        );
    }
}

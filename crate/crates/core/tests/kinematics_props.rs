use cmax::context::{classify_speed, DEFAULT_LUMINAL_TOL};
use cmax::kinematics::{
    energy_from_mass, energy_momentum_residual, four_momentum, four_velocity,
    invariant_mass_product, mass_at_speed, superluminal_photon, PhotonSpec,
};
use cmax::xform::{
    boost_event, compose_velocity, interval_squared, inverse_boost_event,
    inverse_compose_velocity, standard, BoostParameter,
};
use cmax::{make_context, FourVector, InvariantSpeedContext, RegimeTag, Vec3, Velocity3};
use proptest::prelude::*;

fn ctx_with(cm: f64) -> InvariantSpeedContext {
    make_context(1.0, cm, 1.0).unwrap()
}

fn cm_choice() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.1), Just(2.0), Just(10.0)]
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

proptest! {
    #[test]
    fn velocity_construction_boundary(cm in 1.01f64..20.0, frac in 0.0f64..2.0, theta in 0.0f64..std::f64::consts::TAU) {
        let ctx = ctx_with(cm);
        let s = frac * cm;
        let r = Velocity3::new(&ctx, s * theta.cos(), s * theta.sin(), 0.0);
        let speed = Vec3::new(s * theta.cos(), s * theta.sin(), 0.0).norm();
        prop_assert_eq!(r.is_ok(), speed < cm);
    }

    #[test]
    fn regime_tags_partition_the_speed_range(cm in 1.01f64..20.0, frac in 0.0f64..1.0) {
        let ctx = ctx_with(cm);
        let s = frac * cm;
        let tag = classify_speed(&ctx, s, DEFAULT_LUMINAL_TOL).unwrap();
        let expected = if (s - 1.0).abs() <= DEFAULT_LUMINAL_TOL {
            RegimeTag::Luminal
        } else if s < 1.0 {
            RegimeTag::Subluminal
        } else {
            RegimeTag::Superluminal
        };
        prop_assert_eq!(tag, expected);
    }

    #[test]
    fn interval_is_invariant(
        cm in cm_choice(),
        vf in -0.999f64..0.999,
        t in -10.0f64..10.0, x in -10.0f64..10.0, y in -10.0f64..10.0, z in -10.0f64..10.0,
    ) {
        let ctx = ctx_with(cm);
        let b = BoostParameter::new(&ctx, vf * cm).unwrap();
        let e = FourVector::event(&ctx, t, x, y, z);
        let o = FourVector::event(&ctx, 0.0, 0.0, 0.0, 0.0);
        let before = interval_squared(&ctx, e, o);
        let be = boost_event(&ctx, b, e).unwrap();
        let bo = boost_event(&ctx, b, o).unwrap();
        let after = interval_squared(&ctx, be, bo);
        // deviation relative to the coordinate scale of the larger frame
        let scale = e.euclidean_sqr().max(be.euclidean_sqr()).max(f64::MIN_POSITIVE);
        prop_assert!((before - after).abs() / scale <= 1e-12);
        let back = inverse_boost_event(&ctx, b, be).unwrap();
        prop_assert!((back - e).euclidean_sqr().sqrt() <= 1e-9 * e.euclidean_sqr().sqrt().max(1.0));
    }

    #[test]
    fn maximum_speed_is_a_fixed_point(cm in 1.01f64..50.0, vf in -0.9999f64..0.9999) {
        let ctx = ctx_with(cm);
        let b = BoostParameter::new(&ctx, vf * cm).unwrap();
        for sign in [1.0, -1.0] {
            let u = compose_velocity(&ctx, b, Vec3::new(sign * cm, 0.0, 0.0)).unwrap();
            prop_assert!((u.x - sign * cm).abs() <= 1e-12 * cm);
            prop_assert_eq!(u.y, 0.0);
        }
    }

    #[test]
    fn collinear_composition_is_a_group(
        cm in 1.01f64..20.0, a in -0.99f64..0.99, b in -0.99f64..0.99, u in -0.99f64..0.99,
    ) {
        let ctx = ctx_with(cm);
        let (v1, v2, ux) = (a * cm, b * cm, u * cm);
        let v12 = (v1 + v2) / (1.0 + v1 * v2 / (cm * cm));
        let b1 = BoostParameter::new(&ctx, v1).unwrap();
        let b2 = BoostParameter::new(&ctx, v2).unwrap();
        let b12 = BoostParameter::new(&ctx, v12).unwrap();
        let two_step = compose_velocity(&ctx, b1, compose_velocity(&ctx, b2, Vec3::new(ux, 0.0, 0.0)).unwrap()).unwrap();
        let one_step = compose_velocity(&ctx, b12, Vec3::new(ux, 0.0, 0.0)).unwrap();
        prop_assert!((two_step.x - one_step.x).abs() <= 1e-12 * cm);
    }

    #[test]
    fn counter_moving_light_lands_between_minus_two_c_and_minus_c(cm in 1.0001f64..1e3) {
        let ctx = ctx_with(cm);
        let b = BoostParameter::new(&ctx, 1.0).unwrap();
        let u = inverse_compose_velocity(&ctx, b, Vec3::new(-1.0, 0.0, 0.0)).unwrap();
        prop_assert!(-2.0 < u.x && u.x < -1.0, "u' = {}", u.x);
    }

    #[test]
    fn standard_path_matches_textbook_lorentz(vf in -0.99f64..0.99, t in -5.0f64..5.0, x in -5.0f64..5.0, ux in -0.99f64..0.99) {
        let c = 1.0;
        let v = vf * c;
        let g = 1.0 / (1.0 - v * v / (c * c)).sqrt();
        let e = standard::boost(c, v, FourVector::new(c * t, x, 0.0, 0.0)).unwrap();
        prop_assert!((e.x - g * (x + v * t)).abs() <= 1e-12 * g * 10.0);
        prop_assert!((e.t / c - g * (t + v * x / (c * c))).abs() <= 1e-12 * g * 10.0);
        let w = standard::compose(c, v, Vec3::new(ux, 0.0, 0.0)).unwrap();
        prop_assert!((w.x - (ux + v) / (1.0 + ux * v / (c * c))).abs() <= 1e-15);
    }

    #[test]
    fn invariant_mass_product_is_constant(cm in 1.01f64..20.0, m_c in 0.01f64..100.0, f1 in 0.0f64..0.9999, f2 in 0.0f64..0.9999) {
        let ctx = ctx_with(cm);
        let p1 = invariant_mass_product(&ctx, m_c, &Velocity3::along_x(&ctx, f1 * cm).unwrap()).unwrap();
        let p2 = invariant_mass_product(&ctx, m_c, &Velocity3::along_x(&ctx, f2 * cm).unwrap()).unwrap();
        prop_assert!(rel(p1, p2) <= 1e-12);
    }

    #[test]
    fn four_velocity_has_norm_c_max(cm in 1.01f64..20.0, vx in -0.57f64..0.57, vy in -0.57f64..0.57, vz in -0.57f64..0.57) {
        let ctx = ctx_with(cm);
        let v = Velocity3::new(&ctx, vx * cm, vy * cm, vz * cm).unwrap();
        let u = four_velocity(&ctx, &v).unwrap();
        prop_assert!(rel(u.minkowski_sqr(), cm * cm) <= 1e-12);
    }

    #[test]
    fn four_momentum_is_on_shell(cm in 1.01f64..20.0, m_c in 0.0f64..10.0, f in -0.9999f64..0.9999) {
        let ctx = ctx_with(cm);
        let fm = four_momentum(&ctx, m_c, &Velocity3::along_x(&ctx, f * cm).unwrap()).unwrap();
        prop_assert!(energy_momentum_residual(&ctx, &fm, m_c) <= 1e-12);
    }

    #[test]
    fn energy_routes_agree(cm in 1.01f64..20.0, m_c in 0.01f64..10.0, f in 0.0f64..0.9999) {
        let ctx = ctx_with(cm);
        let v = Velocity3::along_x(&ctx, f * cm).unwrap();
        let via_mass = energy_from_mass(&ctx, mass_at_speed(&ctx, m_c, v.speed()).unwrap()).unwrap();
        let direct = four_momentum(&ctx, m_c, &v).unwrap().energy;
        prop_assert!(rel(via_mass, direct) <= 1e-12);
    }

    #[test]
    fn mass_energy_and_frequency_increase_above_c(cm in 1.01f64..20.0, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        prop_assume!(a != b);
        let ctx = ctx_with(cm);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let s = |f: f64| 1.0 + f * (cm - 1.0) * 0.9999;
        let (s1, s2) = (s(lo), s(hi));
        prop_assume!(s1 < s2);
        prop_assert!(mass_at_speed(&ctx, 1.0, s1).unwrap() < mass_at_speed(&ctx, 1.0, s2).unwrap());
        let e = |sp: f64| four_momentum(&ctx, 1.0, &Velocity3::along_x(&ctx, sp).unwrap()).unwrap().energy;
        prop_assert!(e(s1) < e(s2));
        let nu = |sp: f64| superluminal_photon(&ctx, &PhotonSpec::new(&ctx, 3.0, sp).unwrap()).unwrap().frequency;
        prop_assert!(nu(s1) < nu(s2));
    }
}

#[test]
fn nearly_degenerate_context_stays_finite() {
    let ctx = make_context(1.0, 1.000001, 1.0).unwrap();
    for i in 0..=100 {
        let s = i as f64 / 100.0;
        let v = Velocity3::along_x(&ctx, s).unwrap();
        let fm = four_momentum(&ctx, 1.0, &v).unwrap();
        assert!(fm.energy.is_finite() && fm.p.is_finite());
        assert!(mass_at_speed(&ctx, 1.0, s).unwrap().is_finite());
        let b = BoostParameter::new(&ctx, s).unwrap();
        let e = boost_event(&ctx, b, FourVector::event(&ctx, 1.0, 0.5, 0.0, 0.0)).unwrap();
        assert!(e.t.is_finite() && e.x.is_finite());
        assert!(compose_velocity(&ctx, b, Vec3::new(0.5, 0.2, 0.0)).unwrap().is_finite());
    }
}

#[test]
fn equal_light_and_maximum_speed_is_rejected() {
    assert!(make_context(1.0, 1.0, 1.0).is_err());
    assert!(make_context(2.0, 1.5, 1.0).is_err());
}

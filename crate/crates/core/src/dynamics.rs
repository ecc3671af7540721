//! Four-force and time integration of `dp/dt = F` for a particle with
//! characteristic mass `m_c`.
//!
//! The integrated state is `(x, p)`, not `(x, v)`: momentum space has no
//! barrier, and the velocity recovered from it,
//! `v = p / √(m_c² + p²/c_m²)` (the inverse of `p = m_c·v·γ`), is below `c_m`
//! for every finite `p`. Alongside the state the integrator carries the
//! accumulated work `W = ∫ F·v dt`, so that the work–energy relation
//! `E(t) - E(0) = W(t)` can be checked sample by sample.

use serde::Serialize;

use crate::context::InvariantSpeedContext;
use crate::error::{Error, Result};
use crate::kinematics::four_momentum;
use crate::particle::ParticleState;
use crate::vector::{Vec3, Velocity3};

/// Ordinary force `F = dp/dt` as a function of time and particle state.
pub trait ForceLaw {
    fn force(&self, t: f64, state: &ParticleState) -> Vec3;
}

impl<F> ForceLaw for F
where
    F: Fn(f64, &ParticleState) -> Vec3,
{
    fn force(&self, t: f64, state: &ParticleState) -> Vec3 {
        self(t, state)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantForce(pub Vec3);

impl ForceLaw for ConstantForce {
    fn force(&self, _t: f64, _state: &ParticleState) -> Vec3 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Integrator {
    /// Classical fourth-order Runge–Kutta, fixed step.
    Rk4,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectorySample {
    pub t: f64,
    pub position: Vec3,
    pub velocity: Vec3,
    pub momentum: Vec3,
    /// `m_c·c_m²·γ(v)` at this sample's velocity.
    pub energy: f64,
    /// Work done by the force since the first sample.
    pub work: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryRecord {
    pub m_c: f64,
    pub dt: f64,
    pub integrator: Integrator,
    pub samples: Vec<TrajectorySample>,
}

impl TrajectoryRecord {
    /// `|E_end - E_0 - W_end|`, relative to the largest energy excursion
    /// `max |E - E_0|` along the trajectory (absolute when the energy never
    /// changes).
    pub fn work_energy_residual(&self) -> f64 {
        let (first, last) = match (self.samples.first(), self.samples.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return 0.0,
        };
        let diff = (last.energy - first.energy - last.work).abs();
        let scale = self
            .samples
            .iter()
            .map(|s| (s.energy - first.energy).abs())
            .fold(0.0, f64::max);
        if scale > 0.0 {
            diff / scale
        } else {
            diff
        }
    }
}

/// Four-force `(K, K4)` for ordinary force `F` at velocity `v`:
/// `K = F/√(1 - v²/c_m²)`, `K4 = v·K/c_m`.
pub fn four_force(ctx: &InvariantSpeedContext, force: Vec3, v: &Velocity3) -> Result<(Vec3, f64)> {
    let gamma = ctx.gamma_of_speed(v.speed())?;
    let k = force * gamma;
    Ok((k, v.as_vec().dot(k) / ctx.c_max()))
}

/// Velocity of a particle with characteristic mass `m_c > 0` and momentum `p`.
pub fn velocity_from_momentum(ctx: &InvariantSpeedContext, m_c: f64, p: Vec3) -> Vec3 {
    let cm = ctx.c_max();
    let pn = p.norm() / cm;
    p / m_c.hypot(pn)
}

#[derive(Debug, Clone, Copy)]
struct Phase {
    x: Vec3,
    p: Vec3,
    work: f64,
}

#[derive(Debug, Clone, Copy)]
struct PhaseRate {
    dx: Vec3,
    dp: Vec3,
    dw: f64,
}

impl Phase {
    fn advance(&self, rate: &PhaseRate, h: f64) -> Phase {
        Phase {
            x: self.x + rate.dx * h,
            p: self.p + rate.dp * h,
            work: self.work + rate.dw * h,
        }
    }
}

struct Rk4<'a, L: ForceLaw + ?Sized> {
    ctx: &'a InvariantSpeedContext,
    law: &'a L,
    m_c: f64,
}

impl<L: ForceLaw + ?Sized> Rk4<'_, L> {
    fn state(&self, ph: &Phase) -> Result<ParticleState> {
        let v = velocity_from_momentum(self.ctx, self.m_c, ph.p);
        let v = Velocity3::from_vec(self.ctx, v)?;
        ParticleState::new(self.ctx, self.m_c, ph.x, v)
    }

    fn rate(&self, t: f64, ph: &Phase) -> Result<PhaseRate> {
        let state = self.state(ph)?;
        let f = self.law.force(t, &state);
        if !f.is_finite() {
            return Err(Error::ForceLawNonFinite { t });
        }
        let v = state.velocity().as_vec();
        Ok(PhaseRate { dx: v, dp: f, dw: f.dot(v) })
    }

    fn step(&self, t: f64, ph: &Phase, dt: f64) -> Result<Phase> {
        let k1 = self.rate(t, ph)?;
        let k2 = self.rate(t + 0.5 * dt, &ph.advance(&k1, 0.5 * dt))?;
        let k3 = self.rate(t + 0.5 * dt, &ph.advance(&k2, 0.5 * dt))?;
        let k4 = self.rate(t + dt, &ph.advance(&k3, dt))?;
        let w = dt / 6.0;
        Ok(Phase {
            x: ph.x + (k1.dx + k2.dx * 2.0 + k3.dx * 2.0 + k4.dx) * w,
            p: ph.p + (k1.dp + k2.dp * 2.0 + k3.dp * 2.0 + k4.dp) * w,
            work: ph.work + (k1.dw + 2.0 * k2.dw + 2.0 * k3.dw + k4.dw) * w,
        })
    }

    fn sample(&self, t: f64, ph: &Phase) -> Result<TrajectorySample> {
        let state = self.state(ph)?;
        let fm = four_momentum(self.ctx, self.m_c, &state.velocity())?;
        Ok(TrajectorySample {
            t,
            position: ph.x,
            velocity: state.velocity().as_vec(),
            momentum: ph.p,
            energy: fm.energy,
            work: ph.work,
        })
    }
}

fn check_inputs(state: &ParticleState, dt: f64) -> Result<()> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::NonPositiveStep { dt });
    }
    if !(state.m_c() > 0.0) {
        return Err(Error::InvalidMass { m_c: state.m_c(), requirement: "positive for dynamics" });
    }
    Ok(())
}

fn initial_phase(ctx: &InvariantSpeedContext, state: &ParticleState) -> Result<Phase> {
    let p = four_momentum(ctx, state.m_c(), &state.velocity())?.p;
    Ok(Phase { x: state.position(), p, work: 0.0 })
}

/// Advance a particle by one RK4 step of length `dt` starting at time `t`.
pub fn step_state<L: ForceLaw + ?Sized>(
    ctx: &InvariantSpeedContext,
    law: &L,
    t: f64,
    state: &ParticleState,
    dt: f64,
) -> Result<ParticleState> {
    check_inputs(state, dt)?;
    let rk = Rk4 { ctx, law, m_c: state.m_c() };
    let next = rk.step(t, &initial_phase(ctx, state)?, dt)?;
    rk.state(&next)
}

/// Integrate `n_steps` RK4 steps from `t = 0`, recording every step.
pub fn simulate_trajectory<L: ForceLaw + ?Sized>(
    ctx: &InvariantSpeedContext,
    law: &L,
    initial: &ParticleState,
    dt: f64,
    n_steps: usize,
) -> Result<TrajectoryRecord> {
    check_inputs(initial, dt)?;
    if n_steps == 0 {
        return Err(Error::InvalidParameter("n_steps must be at least 1".into()));
    }
    let rk = Rk4 { ctx, law, m_c: initial.m_c() };
    let mut phase = initial_phase(ctx, initial)?;
    let mut samples = Vec::with_capacity(n_steps + 1);
    samples.push(rk.sample(0.0, &phase)?);
    for n in 0..n_steps {
        let t = n as f64 * dt;
        phase = rk.step(t, &phase, dt)?;
        samples.push(rk.sample((n + 1) as f64 * dt, &phase)?);
    }
    Ok(TrajectoryRecord { m_c: initial.m_c(), dt, integrator: Integrator::Rk4, samples })
}

/// Largest mismatch between the centred-difference `dE/dt` and the power
/// `F·v` over interior samples, relative to `max |dE/dt|`.
pub fn power_residual<L: ForceLaw + ?Sized>(
    ctx: &InvariantSpeedContext,
    record: &TrajectoryRecord,
    law: &L,
) -> Result<f64> {
    let s = &record.samples;
    if s.len() < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: s.len() });
    }
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for w in s.windows(3) {
        let de_dt = (w[2].energy - w[0].energy) / (w[2].t - w[0].t);
        let v = Velocity3::from_vec(ctx, w[1].velocity)?;
        let state = ParticleState::new(ctx, record.m_c, w[1].position, v)?;
        let f = law.force(w[1].t, &state);
        if !f.is_finite() {
            return Err(Error::ForceLawNonFinite { t: w[1].t });
        }
        worst = worst.max((de_dt - f.dot(w[1].velocity)).abs());
        scale = scale.max(de_dt.abs());
    }
    Ok(if scale > 0.0 { worst / scale } else { worst })
}

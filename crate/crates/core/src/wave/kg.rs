//! Leapfrog solver for `ψ_tt = c_m² ψ_xx - μ² ψ`, `μ = m_c c_m²/ħ`.
//!
//! Second-order centred differences in space and time on a periodic grid.
//! The scheme is stable for `dt²(4c_m²/dx² + μ²) ≤ 4`, which reduces to the
//! usual `c_m·dt/dx ≤ 1` for a massless field.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::spectral::{phase_rate, ModeProjector};
use super::{kg_dispersion, mode_wavenumber, rest_frequency, ScalarFieldGrid, SolverParams};
use crate::context::InvariantSpeedContext;
use crate::error::{Error, Result};

/// Largest `dt` allowed by a safety factor `cfl` on both the propagation
/// bound and the mass-augmented bound.
pub fn kg_stable_dt(ctx: &InvariantSpeedContext, m_c: f64, dx: f64, cfl: f64) -> f64 {
    let cm = ctx.c_max();
    let mu = rest_frequency(ctx, m_c);
    cfl * 2.0 / (4.0 * cm * cm / (dx * dx) + mu * mu).sqrt()
}

fn check_cfl(ctx: &InvariantSpeedContext, m_c: f64, dx: f64, dt: f64, cfl_safety: f64) -> Result<()> {
    let courant = ctx.c_max() * dt / dx;
    if courant > cfl_safety {
        return Err(Error::CflViolation {
            detail: format!("c_m*dt/dx = {courant} exceeds cfl_safety = {cfl_safety}"),
        });
    }
    let mu = rest_frequency(ctx, m_c);
    let bound = dt * dt * (4.0 * ctx.c_max() * ctx.c_max() / (dx * dx) + mu * mu) / 4.0;
    if bound > 1.0 {
        return Err(Error::CflViolation {
            detail: format!(
                "dt^2*(4*c_m^2/dx^2 + (m_c*c_m^2/hbar)^2)/4 = {bound} exceeds 1 (mass term)"
            ),
        });
    }
    Ok(())
}

/// Two-level leapfrog state `(ψⁿ⁻¹, ψⁿ)`.
#[derive(Debug, Clone)]
pub struct KgLeapfrog {
    prev: Vec<Complex64>,
    curr: Vec<Complex64>,
    next: Vec<Complex64>,
    dx: f64,
    dt: f64,
    t: f64,
    c2: f64,
    mu2: f64,
}

impl KgLeapfrog {
    /// Start from `(ψ, ψ_t)` at `grid.t()`. The back layer is filled with a
    /// second-order Taylor step, `ψ⁻¹ = ψ - dt ψ_t + dt²/2 ψ_tt`.
    pub fn new(
        ctx: &InvariantSpeedContext,
        grid: &ScalarFieldGrid,
        m_c: f64,
        dt: f64,
        cfl_safety: f64,
    ) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::NonPositiveStep { dt });
        }
        if !(m_c.is_finite() && m_c >= 0.0) {
            return Err(Error::InvalidMass { m_c, requirement: "non-negative" });
        }
        check_cfl(ctx, m_c, grid.dx(), dt, cfl_safety)?;
        let mu = rest_frequency(ctx, m_c);
        let mut s = KgLeapfrog {
            prev: vec![Complex64::new(0.0, 0.0); grid.len()],
            curr: grid.psi().to_vec(),
            next: vec![Complex64::new(0.0, 0.0); grid.len()],
            dx: grid.dx(),
            dt,
            t: grid.t(),
            c2: ctx.c_max() * ctx.c_max(),
            mu2: mu * mu,
        };
        let mut accel = vec![Complex64::new(0.0, 0.0); grid.len()];
        s.acceleration(&s.curr, &mut accel);
        for (j, p) in s.prev.iter_mut().enumerate() {
            *p = grid.psi()[j] - grid.dpsi_dt()[j] * dt + accel[j] * (0.5 * dt * dt);
        }
        Ok(s)
    }

    /// `c_m² D²ψ - μ²ψ` with the three-point periodic Laplacian.
    fn acceleration(&self, psi: &[Complex64], out: &mut [Complex64]) {
        let n = psi.len();
        let inv_dx2 = 1.0 / (self.dx * self.dx);
        for j in 0..n {
            let left = psi[(j + n - 1) % n];
            let right = psi[(j + 1) % n];
            let lap = (left - psi[j] * 2.0 + right) * inv_dx2;
            out[j] = lap * self.c2 - psi[j] * self.mu2;
        }
    }

    fn compute_next(&mut self) {
        let n = self.curr.len();
        let inv_dx2 = 1.0 / (self.dx * self.dx);
        let dt2 = self.dt * self.dt;
        for j in 0..n {
            let c = self.curr[j];
            let lap = (self.curr[(j + n - 1) % n] - c * 2.0 + self.curr[(j + 1) % n]) * inv_dx2;
            let accel = lap * self.c2 - c * self.mu2;
            self.next[j] = c * 2.0 - self.prev[j] + accel * dt2;
        }
    }

    pub fn step(&mut self) -> Result<()> {
        self.compute_next();
        if self.next.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFiniteField { t: self.t + self.dt });
        }
        std::mem::swap(&mut self.prev, &mut self.curr);
        std::mem::swap(&mut self.curr, &mut self.next);
        self.t += self.dt;
        Ok(())
    }

    pub fn psi(&self) -> &[Complex64] {
        &self.curr
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    /// Energy conserved exactly (up to round-off) by the leapfrog scheme:
    ///
    /// `E = dx/2 Σ_j [ |(ψⁿ - ψⁿ⁻¹)/dt|² + c_m² Re(D⁺ψⁿ·conj D⁺ψⁿ⁻¹) + μ² Re(ψⁿ·conj ψⁿ⁻¹) ]`
    ///
    /// It is the time-staggered form of `∫ |ψ_t|² + c_m²|ψ_x|² + μ²|ψ|² dx / 2`
    /// and agrees with it to `O(dt²)`.
    pub fn energy(&self) -> f64 {
        let n = self.curr.len();
        let mut sum = 0.0;
        for j in 0..n {
            let jp = (j + 1) % n;
            let vel = (self.curr[j] - self.prev[j]) / self.dt;
            let grad_c = (self.curr[jp] - self.curr[j]) / self.dx;
            let grad_p = (self.prev[jp] - self.prev[j]) / self.dx;
            sum += vel.norm_sqr()
                + self.c2 * (grad_c * grad_p.conj()).re
                + self.mu2 * (self.curr[j] * self.prev[j].conj()).re;
        }
        0.5 * sum * self.dx
    }

    /// Current layer as a grid; `ψ_t` is the centred difference
    /// `(ψⁿ⁺¹ - ψⁿ⁻¹)/(2dt)`.
    pub fn to_grid(&mut self) -> Result<ScalarFieldGrid> {
        self.compute_next();
        let dpsi: Vec<Complex64> = self
            .next
            .iter()
            .zip(&self.prev)
            .map(|(a, b)| (a - b) / (2.0 * self.dt))
            .collect();
        ScalarFieldGrid::new(self.curr.clone(), dpsi, self.dx, self.t)
    }
}

/// Advance `grid` by `params.n_steps` leapfrog steps.
pub fn evolve_kg(
    ctx: &InvariantSpeedContext,
    grid: &ScalarFieldGrid,
    m_c: f64,
    params: &SolverParams,
) -> Result<ScalarFieldGrid> {
    let mut stepper = KgLeapfrog::new(ctx, grid, m_c, params.dt, params.cfl_safety)?;
    for _ in 0..params.n_steps {
        stepper.step()?;
    }
    stepper.to_grid()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionMeasurement {
    pub k: f64,
    pub omega_measured: f64,
    pub omega_analytic: f64,
    /// Relative drift of the leapfrog energy over the run.
    pub energy_drift: f64,
}

impl DispersionMeasurement {
    /// `ω_measured/ω_analytic - 1`, or the absolute difference when
    /// `ω_analytic = 0`.
    pub fn relative_error(&self) -> f64 {
        if self.omega_analytic != 0.0 {
            self.omega_measured / self.omega_analytic - 1.0
        } else {
            self.omega_measured - self.omega_analytic
        }
    }
}

/// Evolve a single positive-frequency mode with the given step and count and
/// read its frequency off the phase rotation of the mode's Fourier
/// amplitude.
pub fn measure_kg_mode(
    ctx: &InvariantSpeedContext,
    m_c: f64,
    n: usize,
    length: f64,
    mode_index: i64,
    params: &SolverParams,
) -> Result<DispersionMeasurement> {
    measure_kg_mode_observed(ctx, m_c, n, length, mode_index, params, |_, _, _| {})
}

/// [`measure_kg_mode`] with `observe(step, t, ψ)` called on the initial
/// layer and after every step.
pub fn measure_kg_mode_observed(
    ctx: &InvariantSpeedContext,
    m_c: f64,
    n: usize,
    length: f64,
    mode_index: i64,
    params: &SolverParams,
    mut observe: impl FnMut(usize, f64, &[Complex64]),
) -> Result<DispersionMeasurement> {
    if mode_index.unsigned_abs() as usize > n / 4 {
        return Err(Error::InvalidParameter(format!(
            "mode index {mode_index} outside [-N/4, N/4] for N = {n}"
        )));
    }
    let grid = ScalarFieldGrid::plane_wave(ctx, m_c, n, length, mode_index, 1.0)?;
    let k = mode_wavenumber(mode_index, length);
    let projector = ModeProjector::new(n, grid.dx(), k);
    let mut stepper = KgLeapfrog::new(ctx, &grid, m_c, params.dt, params.cfl_safety)?;
    let e0 = stepper.energy();
    let mut times = Vec::with_capacity(params.n_steps + 1);
    let mut amps = Vec::with_capacity(params.n_steps + 1);
    times.push(stepper.t());
    amps.push(projector.project(stepper.psi()));
    observe(0, stepper.t(), stepper.psi());
    for i in 1..=params.n_steps {
        stepper.step()?;
        times.push(stepper.t());
        amps.push(projector.project(stepper.psi()));
        observe(i, stepper.t(), stepper.psi());
    }
    let energy_drift = if e0 != 0.0 { (stepper.energy() - e0).abs() / e0.abs() } else { 0.0 };
    Ok(DispersionMeasurement {
        k,
        omega_measured: -phase_rate(&times, &amps),
        omega_analytic: kg_dispersion(ctx, m_c, k),
        energy_drift,
    })
}

/// Measured angular frequency of mode `mode_index` on an `n`-point grid of
/// length `length`, using `cfl_safety = 0.5` and a run of about two periods.
pub fn measure_dispersion(
    ctx: &InvariantSpeedContext,
    m_c: f64,
    n: usize,
    length: f64,
    mode_index: i64,
) -> Result<f64> {
    const CFL: f64 = 0.5;
    let dx = length / n as f64;
    let dt = kg_stable_dt(ctx, m_c, dx, CFL);
    let omega = kg_dispersion(ctx, m_c, mode_wavenumber(mode_index, length));
    let n_steps = if omega > 0.0 {
        ((4.0 * PI / omega / dt).ceil() as usize).clamp(100, 1_000_000)
    } else {
        100
    };
    let params = SolverParams::new(dt, n_steps, CFL)?;
    Ok(measure_kg_mode(ctx, m_c, n, length, mode_index, &params)?.omega_measured)
}

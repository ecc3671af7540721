//! Free wave equations on a periodic 1D grid.
//!
//! * Klein–Gordon form: `ψ_tt - c_m² ψ_xx + (m_c c_m²/ħ)² ψ = 0`, solved by
//!   explicit leapfrog ([`kg`]).
//! * Dirac form: `iħ ψ_t = (-iħ c_m α ∂_x + m_c c_m² β) ψ` with `α = σ_x`,
//!   `β = σ_z`, solved with a fourth-order explicit polynomial step and a spectral derivative ([`dirac`]).
//!
//! Both share the plane-wave dispersion `ω(k) = √(c_m²k² + (m_c c_m²/ħ)²)`.

pub mod dirac;
pub mod kg;
pub mod spectral;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::context::InvariantSpeedContext;
use crate::error::{Error, Result};

pub use dirac::{
    dirac_apply, dirac_max_frequency, dirac_symbol_eigenvalues, eigenspinor, evolve_dirac,
    measure_dirac_mode, measure_dirac_mode_observed, DiracMeasurement, DiracStepper,
    EnergyBranch,
};
pub use kg::{
    evolve_kg, kg_stable_dt, measure_dispersion, measure_kg_mode, measure_kg_mode_observed,
    DispersionMeasurement, KgLeapfrog,
};

pub const MIN_GRID_POINTS: usize = 8;

/// Rest angular frequency `m_c c_m²/ħ`.
pub fn rest_frequency(ctx: &InvariantSpeedContext, m_c: f64) -> f64 {
    m_c * ctx.c_max() * ctx.c_max() / ctx.hbar()
}

/// `ω(k) = √(c_m²k² + m_c²c_m⁴/ħ²)`.
pub fn kg_dispersion(ctx: &InvariantSpeedContext, m_c: f64, k: f64) -> f64 {
    (ctx.c_max() * k).hypot(rest_frequency(ctx, m_c))
}

/// Wavenumber of Fourier mode `mode` on a periodic domain of length `length`.
pub fn mode_wavenumber(mode: i64, length: f64) -> f64 {
    2.0 * PI * mode as f64 / length
}

fn check_field(values: &[Complex64], what: &str) -> Result<()> {
    if values.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::InvalidGrid(format!("{what} contains non-finite values")));
    }
    Ok(())
}

fn check_spacing(n: usize, dx: f64) -> Result<()> {
    if n < MIN_GRID_POINTS {
        return Err(Error::InvalidGrid(format!(
            "need at least {MIN_GRID_POINTS} grid points, got {n}"
        )));
    }
    if !(dx.is_finite() && dx > 0.0) {
        return Err(Error::InvalidGrid(format!("grid spacing must be positive, got {dx}")));
    }
    Ok(())
}

/// Scalar field `ψ` and its time derivative on a periodic grid `x_j = j·dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarFieldGrid {
    psi: Vec<Complex64>,
    dpsi_dt: Vec<Complex64>,
    dx: f64,
    t: f64,
}

impl ScalarFieldGrid {
    pub fn new(psi: Vec<Complex64>, dpsi_dt: Vec<Complex64>, dx: f64, t: f64) -> Result<Self> {
        check_spacing(psi.len(), dx)?;
        if dpsi_dt.len() != psi.len() {
            return Err(Error::InvalidGrid(format!(
                "psi has {} points but dpsi_dt has {}",
                psi.len(),
                dpsi_dt.len()
            )));
        }
        check_field(&psi, "psi")?;
        check_field(&dpsi_dt, "dpsi_dt")?;
        Ok(ScalarFieldGrid { psi, dpsi_dt, dx, t })
    }

    pub fn zeros(n: usize, length: f64) -> Result<Self> {
        let zero = vec![Complex64::new(0.0, 0.0); n];
        Self::new(zero.clone(), zero, length / n as f64, 0.0)
    }

    /// `ψ = A·e^{ikx}` with `ψ_t = -iω(k)ψ` (positive-frequency branch).
    pub fn plane_wave(
        ctx: &InvariantSpeedContext,
        m_c: f64,
        n: usize,
        length: f64,
        mode: i64,
        amplitude: f64,
    ) -> Result<Self> {
        let dx = length / n as f64;
        check_spacing(n, dx)?;
        let k = mode_wavenumber(mode, length);
        let omega = kg_dispersion(ctx, m_c, k);
        let psi: Vec<Complex64> = (0..n)
            .map(|j| Complex64::from_polar(amplitude, k * j as f64 * dx))
            .collect();
        let dpsi_dt = psi.iter().map(|z| Complex64::new(0.0, -omega) * z).collect();
        Self::new(psi, dpsi_dt, dx, 0.0)
    }

    pub fn psi(&self) -> &[Complex64] {
        &self.psi
    }

    pub fn dpsi_dt(&self) -> &[Complex64] {
        &self.dpsi_dt
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn len(&self) -> usize {
        self.psi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.psi.is_empty()
    }

    pub fn length(&self) -> f64 {
        self.dx * self.psi.len() as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        j as f64 * self.dx
    }
}

/// Two-component spinor field on a periodic grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorFieldGrid {
    upper: Vec<Complex64>,
    lower: Vec<Complex64>,
    dx: f64,
    t: f64,
}

impl SpinorFieldGrid {
    pub fn new(upper: Vec<Complex64>, lower: Vec<Complex64>, dx: f64, t: f64) -> Result<Self> {
        check_spacing(upper.len(), dx)?;
        if lower.len() != upper.len() {
            return Err(Error::InvalidGrid(format!(
                "upper has {} points but lower has {}",
                upper.len(),
                lower.len()
            )));
        }
        check_field(&upper, "upper component")?;
        check_field(&lower, "lower component")?;
        Ok(SpinorFieldGrid { upper, lower, dx, t })
    }

    pub fn zeros(n: usize, length: f64) -> Result<Self> {
        let zero = vec![Complex64::new(0.0, 0.0); n];
        Self::new(zero.clone(), zero, length / n as f64, 0.0)
    }

    pub fn upper(&self) -> &[Complex64] {
        &self.upper
    }

    pub fn lower(&self) -> &[Complex64] {
        &self.lower
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn len(&self) -> usize {
        self.upper.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upper.is_empty()
    }

    pub fn length(&self) -> f64 {
        self.dx * self.upper.len() as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        j as f64 * self.dx
    }

    /// `∫ ψ†ψ dx`.
    pub fn norm(&self) -> f64 {
        self.upper
            .iter()
            .zip(&self.lower)
            .map(|(u, l)| u.norm_sqr() + l.norm_sqr())
            .sum::<f64>()
            * self.dx
    }
}

/// Time step, step count and stability safety factor shared by both solvers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverParams {
    pub dt: f64,
    pub n_steps: usize,
    pub cfl_safety: f64,
}

impl SolverParams {
    pub fn new(dt: f64, n_steps: usize, cfl_safety: f64) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::NonPositiveStep { dt });
        }
        if !(cfl_safety > 0.0 && cfl_safety <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "cfl_safety must lie in (0, 1], got {cfl_safety}"
            )));
        }
        Ok(SolverParams { dt, n_steps, cfl_safety })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::make_context;

    #[test]
    fn dispersion_values() {
        let ctx = make_context(1.0, 2.0, 1.0).unwrap();
        assert_eq!(kg_dispersion(&ctx, 1.0, 0.0), 4.0);
        assert_eq!(kg_dispersion(&ctx, 0.0, -3.0), 6.0);
        assert!((kg_dispersion(&ctx, 1.0, 1.0) - 20f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn dispersion_matches_energy_momentum_relation() {
        let ctx = make_context(1.0, 3.0, 0.5).unwrap();
        for &(m, k) in &[(0.0, 1.0), (1.0, 0.0), (0.3, 2.5), (2.0, -7.0)] {
            let e = ctx.hbar() * kg_dispersion(&ctx, m, k);
            let p = ctx.hbar() * k;
            let cm = ctx.c_max();
            let lhs = e * e - p * p * cm * cm;
            let rhs = m * m * cm.powi(4);
            assert!((lhs - rhs).abs() <= 1e-14 * (e * e).max(1.0));
        }
    }

    #[test]
    fn grid_validation() {
        let z = vec![Complex64::new(0.0, 0.0); 4];
        assert!(ScalarFieldGrid::new(z.clone(), z.clone(), 0.1, 0.0).is_err());
        let z8 = vec![Complex64::new(0.0, 0.0); 8];
        assert!(ScalarFieldGrid::new(z8.clone(), z.clone(), 0.1, 0.0).is_err());
        assert!(ScalarFieldGrid::new(z8.clone(), z8.clone(), 0.0, 0.0).is_err());
        let mut bad = z8.clone();
        bad[3] = Complex64::new(f64::NAN, 0.0);
        assert!(ScalarFieldGrid::new(bad.clone(), z8.clone(), 0.1, 0.0).is_err());
        assert!(SpinorFieldGrid::new(z8.clone(), bad, 0.1, 0.0).is_err());
        assert!(SpinorFieldGrid::new(z8.clone(), z8, 0.1, 0.0).is_ok());
    }

    #[test]
    fn solver_params_validation() {
        assert!(SolverParams::new(0.0, 10, 0.5).is_err());
        assert!(SolverParams::new(0.1, 10, 0.0).is_err());
        assert!(SolverParams::new(0.1, 10, 1.5).is_err());
        assert!(SolverParams::new(0.1, 10, 1.0).is_ok());
    }
}

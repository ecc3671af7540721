//! FFT-based differentiation and single-mode phase tracking.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Spectral `∂/∂x` on a periodic grid of fixed size and spacing.
pub struct SpectralDerivative {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    /// `i·k_m / N` per FFT bin; the Nyquist bin is zeroed.
    multipliers: Vec<Complex64>,
    buf: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl SpectralDerivative {
    pub fn new(n: usize, dx: f64) -> Self {
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let length = n as f64 * dx;
        let multipliers = (0..n)
            .map(|m| {
                let signed = if 2 * m < n {
                    m as f64
                } else if 2 * m == n {
                    0.0
                } else {
                    m as f64 - n as f64
                };
                Complex64::new(0.0, 2.0 * PI * signed / length / n as f64)
            })
            .collect();
        let scratch_len = forward
            .get_inplace_scratch_len()
            .max(inverse.get_inplace_scratch_len());
        SpectralDerivative {
            forward,
            inverse,
            multipliers,
            buf: vec![Complex64::new(0.0, 0.0); n],
            scratch: vec![Complex64::new(0.0, 0.0); scratch_len],
        }
    }

    pub fn len(&self) -> usize {
        self.buf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buf.is_empty()
    }

    /// Writes `∂f/∂x` into `out`.
    pub fn apply(&mut self, f: &[Complex64], out: &mut [Complex64]) {
        self.buf.copy_from_slice(f);
        self.forward.process_with_scratch(&mut self.buf, &mut self.scratch);
        for (b, m) in self.buf.iter_mut().zip(&self.multipliers) {
            *b *= m;
        }
        self.inverse.process_with_scratch(&mut self.buf, &mut self.scratch);
        out.copy_from_slice(&self.buf);
    }
}

/// Projection of a sampled field onto `e^{ikx}`: `(1/N) Σ f_j e^{-ik x_j}`.
pub struct ModeProjector {
    phases: Vec<Complex64>,
}

impl ModeProjector {
    pub fn new(n: usize, dx: f64, k: f64) -> Self {
        let phases = (0..n)
            .map(|j| Complex64::from_polar(1.0 / n as f64, -k * j as f64 * dx))
            .collect();
        ModeProjector { phases }
    }

    pub fn project(&self, f: &[Complex64]) -> Complex64 {
        f.iter().zip(&self.phases).map(|(a, b)| a * b).sum()
    }
}

/// Least-squares rate `dφ/dt` of the unwrapped phase of `amps` sampled at
/// `times`. A field oscillating as `e^{-iωt}` yields `-ω`.
pub fn phase_rate(times: &[f64], amps: &[Complex64]) -> f64 {
    assert_eq!(times.len(), amps.len());
    let n = times.len();
    if n < 2 {
        return 0.0;
    }
    let mut phases = Vec::with_capacity(n);
    let mut prev = amps[0].arg();
    let mut offset = 0.0;
    phases.push(prev);
    for a in &amps[1..] {
        let raw = a.arg();
        let mut d = raw - prev;
        if d > PI {
            offset -= 2.0 * PI;
            d -= 2.0 * PI;
        } else if d < -PI {
            offset += 2.0 * PI;
            d += 2.0 * PI;
        }
        debug_assert!(d.abs() <= PI);
        phases.push(raw + offset);
        prev = raw;
    }
    let mean_t = times.iter().sum::<f64>() / n as f64;
    let mean_p = phases.iter().sum::<f64>() / n as f64;
    let (mut num, mut den) = (0.0, 0.0);
    for (t, p) in times.iter().zip(&phases) {
        num += (t - mean_t) * (p - mean_p);
        den += (t - mean_t) * (t - mean_t);
    }
    num / den
}

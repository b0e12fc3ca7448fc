use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::LabError;

/// Periodic grid on `[−L/2, L/2)` with `N` points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    length: f64,
    n: usize,
}

impl Grid1D {
    pub fn new(length: f64, n: usize) -> Result<Self, LabError> {
        if !(length.is_finite() && length > 0.0) {
            return Err(LabError::InvalidParams(format!("grid length must be positive, got {length}")));
        }
        if n < 4 || !n.is_power_of_two() {
            return Err(LabError::InvalidParams(format!("point count must be a power of two ≥ 4, got {n}")));
        }
        Ok(Grid1D { length, n })
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        -self.length / 2.0 + j as f64 * self.dx()
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.x(j)).collect()
    }

    /// Lattice spacing in k, `2π/L`.
    pub fn dk(&self) -> f64 {
        2.0 * PI / self.length
    }

    /// Wave numbers in FFT order: `0, 1, …, N/2 − 1, −N/2, …, −1` times `2π/L`.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let n = self.n as i64;
        (0..n)
            .map(|j| if j < n / 2 { j } else { j - n } as f64 * self.dk())
            .collect()
    }

    /// FFT slot of `k`, if `k` is a lattice wave number in `[−N/2, N/2)·2π/L`.
    pub fn lattice_index(&self, k: f64) -> Option<usize> {
        let r = k / self.dk();
        let n = r.round();
        if (r - n).abs() > 1e-9 * r.abs().max(1.0) {
            return None;
        }
        let n = n as i64;
        let half = self.n as i64 / 2;
        if n < -half || n >= half {
            return None;
        }
        Some(n.rem_euclid(self.n as i64) as usize)
    }

    pub fn require_lattice(&self, k: f64) -> Result<usize, LabError> {
        self.lattice_index(k).ok_or(LabError::NonLatticeK { k, dk: self.dk() })
    }

    /// Discrete L2 norm `(Σ|ψ|²Δx)^{1/2}`.
    pub fn norm(&self, v: &[Complex64]) -> f64 {
        (v.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.dx()).sqrt()
    }

    pub fn distance(&self, a: &[Complex64], b: &[Complex64]) -> f64 {
        let d: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.norm(&d)
    }

    pub fn forward(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut buf = v.to_vec();
        FftPlanner::new().plan_fft_forward(self.n).process(&mut buf);
        buf
    }

    /// Inverse transform, normalized so that `inverse(forward(v)) = v`.
    pub fn inverse(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut buf = v.to_vec();
        FftPlanner::new().plan_fft_inverse(self.n).process(&mut buf);
        let s = 1.0 / self.n as f64;
        buf.iter_mut().for_each(|z| *z *= s);
        buf
    }

    /// Apply the Fourier multiplier `symbol(k)`.
    pub fn apply_symbol<F>(&self, v: &[Complex64], symbol: F) -> Vec<Complex64>
    where
        F: Fn(f64) -> Complex64,
    {
        let mut hat = self.forward(v);
        for (z, k) in hat.iter_mut().zip(self.wavenumbers()) {
            *z *= symbol(k);
        }
        self.inverse(&hat)
    }

    /// Spectral `∂x^order`.
    pub fn derivative(&self, v: &[Complex64], order: u32) -> Vec<Complex64> {
        self.apply_symbol(v, |k| Complex64::new(0.0, k).powu(order))
    }
}

/// Parameters in dimensionless units (`m = ħ = 1` by default).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalParams {
    pub m: f64,
    pub hbar: f64,
    pub c: f64,
    /// Constant potential.
    pub potential: f64,
    /// Boost speed.
    pub v: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        PhysicalParams {
            m: 1.0,
            hbar: 1.0,
            c: 10.0,
            potential: 0.0,
            v: 0.0,
        }
    }
}

impl PhysicalParams {
    pub fn validate(&self, allow_massless: bool) -> Result<(), LabError> {
        let all = [self.m, self.hbar, self.c, self.potential, self.v];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(LabError::InvalidParams("parameters must be finite".into()));
        }
        if self.m < 0.0 || (self.m == 0.0 && !allow_massless) {
            return Err(LabError::InvalidParams(format!("mass must be positive, got {}", self.m)));
        }
        if self.hbar <= 0.0 || self.c <= 0.0 {
            return Err(LabError::InvalidParams("ħ and c must be positive".into()));
        }
        Ok(())
    }

    /// `β = v/c`, rejecting `|v| ≥ c`.
    pub fn beta(&self) -> Result<f64, LabError> {
        let b = self.v / self.c;
        if b.abs() >= 1.0 {
            return Err(LabError::InvalidParams(format!("|v| must be below c (β = {b})")));
        }
        Ok(b)
    }

    pub fn gamma(&self) -> Result<f64, LabError> {
        Ok(1.0 / (1.0 - self.beta()?.powi(2)).sqrt())
    }
}

/// Samples of `Ψ` on a grid, plus `∂tΨ` for equations second order in time.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveState {
    pub grid: Grid1D,
    pub values: Vec<Complex64>,
    pub velocity: Option<Vec<Complex64>>,
    pub time: f64,
}

impl WaveState {
    pub fn from_fn<F: Fn(f64) -> Complex64>(grid: Grid1D, f: F) -> Self {
        WaveState {
            grid,
            values: grid.xs().into_iter().map(f).collect(),
            velocity: None,
            time: 0.0,
        }
    }

    /// `exp(−(x − x0)²/2σ² + ik0x)`, unnormalized.
    pub fn gaussian(grid: Grid1D, x0: f64, sigma: f64, k0: f64) -> Self {
        WaveState::from_fn(grid, |x| {
            let a = -(x - x0).powi(2) / (2.0 * sigma * sigma);
            Complex64::new(a, k0 * x).exp()
        })
    }

    pub fn plane_wave(grid: Grid1D, k: f64) -> Result<Self, LabError> {
        grid.require_lattice(k)?;
        Ok(WaveState::from_fn(grid, |x| Complex64::new(0.0, k * x).exp()))
    }

    pub fn with_velocity(mut self, velocity: Vec<Complex64>) -> Self {
        self.velocity = Some(velocity);
        self
    }

    pub fn norm(&self) -> f64 {
        self.grid.norm(&self.values)
    }

    pub fn is_finite(&self) -> bool {
        let ok = |v: &[Complex64]| v.iter().all(|z| z.re.is_finite() && z.im.is_finite());
        ok(&self.values) && self.velocity.as_deref().map(ok).unwrap_or(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wavenumber_lattice() {
        let g = Grid1D::new(32.0 * PI, 1024).unwrap();
        assert!((g.dk() - 1.0 / 16.0).abs() < 1e-15);
        assert_eq!(g.lattice_index(1.0), Some(16));
        assert_eq!(g.lattice_index(-1.0), Some(1024 - 16));
        assert_eq!(g.lattice_index(0.03), None);
        assert!(Grid1D::new(1.0, 1000).is_err());
    }

    #[test]
    fn spectral_derivative_of_a_mode() {
        let g = Grid1D::new(2.0 * PI, 64).unwrap();
        let s = WaveState::plane_wave(g, 3.0).unwrap();
        let d2 = g.derivative(&s.values, 2);
        for (a, b) in d2.iter().zip(&s.values) {
            assert!((a + 9.0 * b).norm() < 1e-11);
        }
    }

    #[test]
    fn roundtrip_and_parseval() {
        let g = Grid1D::new(20.0, 256).unwrap();
        let s = WaveState::gaussian(g, 1.0, 1.5, 2.0);
        let back = g.inverse(&g.forward(&s.values));
        assert!(g.distance(&back, &s.values) < 1e-13);
        let spectral: f64 = g.forward(&s.values).iter().map(|z| z.norm_sqr()).sum::<f64>() * g.dx() / g.len() as f64;
        assert!((spectral.sqrt() - s.norm()).abs() < 1e-12);
    }

    #[test]
    fn boost_speed_must_be_subluminal() {
        let p = PhysicalParams { v: 10.0, ..Default::default() };
        assert!(p.beta().is_err());
        let p = PhysicalParams { v: 3.0, ..Default::default() };
        assert!((p.gamma().unwrap() - 1.0 / 0.91f64.sqrt()).abs() < 1e-15);
    }
}

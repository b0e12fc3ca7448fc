use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use super::evolve::{evolve, mode_roots, Equation};
use super::grid::{Grid1D, PhysicalParams, WaveState};
use super::LabError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoostKind {
    Galilean,
    Lorentz,
}

impl fmt::Display for BoostKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoostKind::Galilean => "galilean",
            BoostKind::Lorentz => "lorentz",
        })
    }
}

impl FromStr for BoostKind {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "galilean" => Ok(BoostKind::Galilean),
            "lorentz" => Ok(BoostKind::Lorentz),
            _ => Err(LabError::InvalidParams(format!("unknown boost {s:?}"))),
        }
    }
}

/// Phase of the Galilean multiplier, `(mv²t′/2 + mvx′)/ħ`.
pub fn galilean_phase(x: f64, t: f64, p: &PhysicalParams) -> f64 {
    (p.m * p.v * p.v * t / 2.0 + p.m * p.v * x) / p.hbar
}

/// Phase of the Lorentz multiplier, `((γ − 1)mc²t′ + γmvx′)/ħ`.
pub fn lorentz_phase(x: f64, t: f64, p: &PhysicalParams) -> Result<f64, LabError> {
    let g = p.gamma()?;
    Ok(((g - 1.0) * p.m * p.c * p.c * t + g * p.m * p.v * x) / p.hbar)
}

/// Free spreading Gaussian in S′, times `e^{−iVt/ħ}`.
pub fn spreading_gaussian(x: f64, t: f64, sigma: f64, p: &PhysicalParams) -> Complex64 {
    let s2 = Complex64::new(sigma * sigma, p.hbar * t / p.m);
    let amp = (Complex64::new(sigma * sigma, 0.0) / s2).sqrt();
    amp * (-x * x / (2.0 * s2)).exp() * Complex64::new(0.0, -p.potential * t / p.hbar).exp()
}

/// Analytic packets in the moving frame S′.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Packet {
    Gaussian { sigma: f64, x0: f64 },
    /// `Ψ′ = e^{−iω₀t′}` with `ω₀` the particle root at `k = 0` (`Ψ′ = 1` when `V = 0`).
    RestFrame,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoostReport {
    pub equation: String,
    pub boost: BoostKind,
    pub v: f64,
    pub t: f64,
    /// `max |residual| / max |Ψ|` of the S-frame equation.
    pub max_residual: f64,
    /// Relative L2 distance between `g·Ψ′` and the directly evolved state.
    pub l2_discrepancy: f64,
    pub omega_measured: Option<f64>,
    pub omega_expected: Option<f64>,
    pub k_measured: Option<f64>,
    pub k_expected: Option<f64>,
}

/// Fourth-order central first and second derivatives.
pub fn central_d1<F: Fn(f64) -> Complex64>(f: &F, x: f64, h: f64) -> Complex64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

pub fn central_d2<F: Fn(f64) -> Complex64>(f: &F, x: f64, h: f64) -> Complex64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h)) / (12.0 * h * h)
}

const STEP: f64 = 1e-3;

fn max_abs(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn contained(values: &[Complex64]) -> Result<(), LabError> {
    let peak = max_abs(values);
    let edge = values[0].norm().max(values[values.len() - 1].norm());
    if edge > 1e-13 * peak {
        return Err(LabError::StencilOutsideWindow { edge: edge / peak });
    }
    Ok(())
}

fn galilean_gaussian(grid: Grid1D, sigma: f64, x0: f64, p: &PhysicalParams, t: f64) -> Result<BoostReport, LabError> {
    p.validate(false)?;
    let psi = |x: f64, t: f64| {
        let xp = x - x0 - p.v * t;
        Complex64::new(0.0, galilean_phase(xp, t, p)).exp() * spreading_gaussian(xp, t, sigma, p)
    };
    let xs = grid.xs();
    let start: Vec<Complex64> = xs.iter().map(|&x| psi(x, 0.0)).collect();
    let end: Vec<Complex64> = xs.iter().map(|&x| psi(x, t)).collect();
    contained(&start)?;
    contained(&end)?;
    let dxx = grid.derivative(&end, 2);
    let residual: Vec<Complex64> = xs
        .iter()
        .zip(&dxx)
        .zip(&end)
        .map(|((&x, d2), u)| {
            let dt = central_d1(&|s| psi(x, s), t, STEP);
            Complex64::i() * p.hbar * dt + p.hbar * p.hbar / (2.0 * p.m) * d2 - p.potential * u
        })
        .collect();
    let direct = evolve(Equation::Schrodinger, &WaveState { grid, values: start, velocity: None, time: 0.0 }, p, t)?;
    Ok(BoostReport {
        equation: Equation::Schrodinger.name().into(),
        boost: BoostKind::Galilean,
        v: p.v,
        t,
        max_residual: max_abs(&residual) / max_abs(&end),
        l2_discrepancy: grid.distance(&direct.values, &end) / grid.norm(&end),
        omega_measured: None,
        omega_expected: None,
        k_measured: None,
        k_expected: None,
    })
}

fn lorentz_rest(grid: Grid1D, p: &PhysicalParams, t: f64) -> Result<BoostReport, LabError> {
    p.validate(false)?;
    let gamma = p.gamma()?;
    let w0 = mode_roots(Equation::Lcse, 0.0, p)?.particle;
    let phase = |x: f64, t: f64| -> f64 {
        let xp = gamma * (x - p.v * t);
        let tp = gamma * (t - p.v * x / (p.c * p.c));
        lorentz_phase(xp, tp, p).expect("validated") - w0 * tp
    };
    let psi = |x: f64, t: f64| Complex64::new(0.0, phase(x, t)).exp();
    let (h, m, c) = (p.hbar, p.m, p.c);
    // one wavelength around the origin keeps the phases, and so the
    // rounding in the difference quotients, of order one
    let k_scale = (gamma * m * p.v / h).abs().max(grid.dk());
    let h2 = 2.0 * STEP;
    let residual = (-16..=16)
        .map(|j| j as f64 * std::f64::consts::PI / (16.0 * k_scale))
        .map(|x| {
            let u = psi(x, t);
            let dtt = central_d2(&|s| psi(x, s), t, h2);
            let dt = central_d1(&|s| psi(x, s), t, h2);
            let dxx = central_d2(&|y| psi(y, t), x, h2);
            (-(h * h) / (2.0 * m * c * c) * dtt + Complex64::i() * h * dt + h * h / (2.0 * m) * dxx - p.potential * u).norm()
        })
        .fold(0.0, f64::max);

    let delta = 1e-2;
    let k_measured = (phase(delta, 0.0) - phase(0.0, 0.0)) / delta;
    let omega_measured = -(phase(0.0, delta) - phase(0.0, 0.0)) / delta;
    let k_expected = gamma * m * p.v / h + w0 * gamma * p.v / (c * c);
    let omega_expected = (gamma - 1.0) * m * c * c / h + w0 * gamma;

    // direct evolution on a window holding a whole number of wavelengths
    let window = if k_measured == 0.0 {
        grid
    } else {
        let n = (k_measured.abs() * grid.length() / (2.0 * std::f64::consts::PI)).round().max(1.0);
        Grid1D::new(2.0 * std::f64::consts::PI * n / k_measured.abs(), grid.len())?
    };
    let xs = window.xs();
    let start = WaveState {
        grid: window,
        values: xs.iter().map(|&x| psi(x, 0.0)).collect(),
        velocity: Some(xs.iter().map(|&x| central_d1(&|s| psi(x, s), 0.0, STEP)).collect()),
        time: 0.0,
    };
    let end: Vec<Complex64> = xs.iter().map(|&x| psi(x, t)).collect();
    let direct = evolve(Equation::Lcse, &start, p, t)?;
    Ok(BoostReport {
        equation: Equation::Lcse.name().into(),
        boost: BoostKind::Lorentz,
        v: p.v,
        t,
        max_residual: residual,
        l2_discrepancy: window.distance(&direct.values, &end) / window.norm(&end),
        omega_measured: Some(omega_measured),
        omega_expected: Some(omega_expected),
        k_measured: Some(k_measured),
        k_expected: Some(k_expected),
    })
}

/// Build `Ψ = g·Ψ′` from an analytic S′ solution, then test it against the
/// S-frame equation and against direct evolution of its initial data.
pub fn boost_check(
    eq: Equation,
    packet: Packet,
    p: &PhysicalParams,
    boost: BoostKind,
    grid: Grid1D,
    t: f64,
) -> Result<BoostReport, LabError> {
    match (eq, boost, packet) {
        (Equation::Schrodinger, BoostKind::Galilean, Packet::Gaussian { sigma, x0 }) => galilean_gaussian(grid, sigma, x0, p, t),
        (Equation::Lcse, BoostKind::Lorentz, Packet::RestFrame) => lorentz_rest(grid, p, t),
        _ => Err(LabError::InvalidParams(format!(
            "no analytic moving-frame solution for {eq} under a {boost} boost with {packet:?}"
        ))),
    }
}

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::evolve::{mode_roots, propagate, Equation};
use super::grid::{Grid1D, PhysicalParams, WaveState};
use super::LabError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    Particle,
    Antiparticle,
}

impl Branch {
    pub fn name(&self) -> &'static str {
        match self {
            Branch::Particle => "particle",
            Branch::Antiparticle => "antiparticle",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DispersionRow {
    pub k: f64,
    pub branch: Branch,
    pub omega_measured: f64,
    pub omega_analytic: f64,
    /// `|ω_m − ω_a|/|ω_a|`, or the absolute error where `ω_a = 0`.
    pub error: f64,
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// Remove `2π` jumps from a phase sequence.
pub fn unwrap(phases: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(phases.len());
    let mut offset = 0.0;
    for (j, &p) in phases.iter().enumerate() {
        if j > 0 {
            let d = p - phases[j - 1];
            offset -= 2.0 * PI * (d / (2.0 * PI)).round();
        }
        out.push(p + offset);
    }
    out
}

/// Evolve each eigenmode and read `ω` off its phase at `samples ≥ 3` times.
pub fn measure_dispersion(
    eq: Equation,
    p: &PhysicalParams,
    grid: Grid1D,
    ks: &[f64],
    samples: usize,
) -> Result<Vec<DispersionRow>, LabError> {
    if samples < 3 {
        return Err(LabError::InvalidParams("at least three sample times are needed".into()));
    }
    let mut rows = Vec::new();
    for &k in ks {
        let slot = grid.require_lattice(k)?;
        let roots = mode_roots(eq, k, p)?;
        let branches = [(Branch::Particle, Some(roots.particle)), (Branch::Antiparticle, roots.antiparticle)];
        for (branch, w) in branches {
            let Some(w) = w else { continue };
            let mut s = WaveState::plane_wave(grid, k)?;
            if eq.second_order() {
                let d = s.values.iter().map(|z| -Complex64::i() * w * z).collect();
                s = s.with_velocity(d);
            }
            // keep |ω|·dt well below π so unwrapping is unambiguous
            let dt = 1.0 / (1.0 + w.abs());
            let mut times = vec![0.0];
            let mut phases = vec![grid.forward(&s.values)[slot].arg()];
            for j in 1..=samples {
                s = propagate(eq, &s, p, dt)?;
                times.push(j as f64 * dt);
                phases.push(grid.forward(&s.values)[slot].arg());
            }
            let measured = 0.0 - fit_slope(&times, &unwrap(&phases));
            let error = if w == 0.0 {
                measured.abs()
            } else {
                (measured - w).abs() / w.abs()
            };
            rows.push(DispersionRow {
                k,
                branch,
                omega_measured: measured,
                omega_analytic: w,
                error,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unwrap_removes_jumps() {
        let raw = [3.0, -3.0, -2.9];
        let u = unwrap(&raw);
        assert!((u[1] - (2.0 * PI - 3.0)).abs() < 1e-15);
        assert!((fit_slope(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn schrodinger_table() {
        let g = Grid1D::new(32.0 * PI, 1024).unwrap();
        let rows = measure_dispersion(Equation::Schrodinger, &PhysicalParams::default(), g, &[1.0, 2.0, 4.0], 4).unwrap();
        for (row, w) in rows.iter().zip([0.5, 2.0, 8.0]) {
            assert!((row.omega_measured - w).abs() < 1e-10 * w);
        }
    }

    #[test]
    fn off_lattice_k_is_rejected() {
        let g = Grid1D::new(32.0 * PI, 64).unwrap();
        let r = measure_dispersion(Equation::Schrodinger, &PhysicalParams::default(), g, &[0.1], 3);
        assert!(matches!(r, Err(LabError::NonLatticeK { .. })));
    }
}

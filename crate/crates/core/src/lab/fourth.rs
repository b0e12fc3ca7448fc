use num_complex::Complex64;
use serde::Serialize;

use crate::solver::{schrodinger_square, Potential};
use crate::symbolic::LinearPDE;

use super::evolve::{propagate, Equation};
use super::grid::{Grid1D, PhysicalParams, WaveState};
use super::LabError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FourthOrderRow {
    pub t: f64,
    /// `max |Ŝ²Ψ| / ‖Ψ‖₂`
    pub residual: f64,
}

/// Apply `Ŝ²` (constant `V`) to a Schrödinger-evolved packet at each sample
/// time: exact in `k`, fourth-order central differences in `t` with step `h`.
pub fn fourth_order_residual(
    packet: &WaveState,
    p: &PhysicalParams,
    times: &[f64],
    h: f64,
) -> Result<Vec<FourthOrderRow>, LabError> {
    let g = packet.grid;
    let mut rows = Vec::new();
    for &t in times {
        let at = |dt: f64| -> Result<Vec<Complex64>, LabError> {
            let s = propagate(Equation::Schrodinger, packet, p, t - packet.time + dt)?;
            Ok(g.forward(&s.values))
        };
        let f: Vec<Vec<Complex64>> = [-2.0, -1.0, 0.0, 1.0, 2.0].iter().map(|j| at(j * h)).collect::<Result<_, _>>()?;
        let mut out = Vec::with_capacity(g.len());
        for (n, k) in g.wavenumbers().into_iter().enumerate() {
            let d1 = (-f[4][n] + 8.0 * f[3][n] - 8.0 * f[1][n] + f[0][n]) / (12.0 * h);
            let d2 = (-f[4][n] + 16.0 * f[3][n] - 30.0 * f[2][n] + 16.0 * f[1][n] - f[0][n]) / (12.0 * h * h);
            let a = -p.hbar * p.hbar * k * k / (2.0 * p.m) - p.potential;
            out.push(a * a * f[2][n] + 2.0 * Complex64::i() * p.hbar * a * d1 - p.hbar * p.hbar * d2);
        }
        let psi = g.inverse(&f[2]);
        let sq = g.inverse(&out);
        let peak = sq.iter().map(|z| z.norm()).fold(0.0, f64::max);
        rows.push(FourthOrderRow { t, residual: peak / g.norm(&psi) });
    }
    Ok(rows)
}

/// `Ψ = φ(x)e^{−iΩt}` and the potential `V(x) = cos x`, at `t = 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FieldMismatch {
    /// `max |Ŝ²Ψ − (−covariant + mismatch)Ψ|`, with `Ŝ²Ψ` computed directly.
    pub closure_error: f64,
    /// `max |(Ŝ² + covariant)Ψ − (−(ħ²/m)V′∂x − (ħ²/2m)V″)Ψ|`
    pub predicted_error: f64,
    /// `max |(ħ²/m)V′∂xΨ|`, the part no choice of `f` can absorb.
    pub gradient_term: f64,
}

fn field_values(x: f64, p: &PhysicalParams) -> Vec<(&'static str, f64)> {
    let mut v = vec![
        ("ħ", p.hbar),
        ("m", p.m),
        ("V", x.cos()),
        ("V_1", -x.sin()),
        ("V_11", -x.cos()),
    ];
    for name in ["V_2", "V_3", "V_12", "V_13", "V_22", "V_23", "V_33"] {
        v.push((name, 0.0));
    }
    v
}

/// Evaluate a symbolic operator on `φ(x)e^{−iΩt}` with pointwise coefficients.
/// Derivatives along `x²`, `x³` vanish on a function of `x¹` alone.
pub fn apply_numeric(op: &LinearPDE, grid: Grid1D, phi: &[Complex64], omega: f64, p: &PhysicalParams) -> Result<Vec<Complex64>, LabError> {
    let xs = grid.xs();
    let mut out = vec![Complex64::new(0.0, 0.0); phi.len()];
    let coeff = |c: &crate::symbolic::Scalar, x: f64| {
        c.eval_named(&field_values(x, p))
            .ok_or_else(|| LabError::InvalidParams(format!("cannot evaluate coefficient {c}")))
    };
    for (idx, c) in op.slots() {
        if idx.get(2) > 0 || idx.get(3) > 0 {
            continue;
        }
        let dt = (-Complex64::i() * omega).powu(idx.get(0) as u32);
        let dx = grid.derivative(phi, idx.get(1) as u32);
        for (j, x) in xs.iter().enumerate() {
            out[j] += coeff(&c, *x)? * dt * dx[j];
        }
    }
    Ok(out)
}

/// Compare `Ŝ²` for `V = cos x` with the covariant fourth-order operator,
/// both applied numerically to a Gaussian `φ`.
pub fn field_mismatch(grid: Grid1D, p: &PhysicalParams, omega: f64) -> Result<FieldMismatch, LabError> {
    let cmp = schrodinger_square(Potential::Field).map_err(|e| LabError::InvalidParams(e.to_string()))?;
    let phi = WaveState::gaussian(grid, 0.0, 1.0, 0.5).values;
    let xs = grid.xs();
    let s_hat = |u: &[Complex64]| -> Vec<Complex64> {
        let d2 = grid.derivative(u, 2);
        u.iter()
            .zip(&d2)
            .zip(&xs)
            .map(|((u, d2), x)| p.hbar * p.hbar / (2.0 * p.m) * d2 + p.hbar * omega * u - x.cos() * u)
            .collect()
    };
    let direct = s_hat(&s_hat(&phi));
    let cov = apply_numeric(&cmp.covariant, grid, &phi, omega, p)?;
    let mis = apply_numeric(&cmp.mismatch, grid, &phi, omega, p)?;
    let dphi = grid.derivative(&phi, 1);
    let mut closure: f64 = 0.0;
    let mut predicted: f64 = 0.0;
    let mut gradient: f64 = 0.0;
    for j in 0..phi.len() {
        let x = xs[j];
        let grad = -(p.hbar * p.hbar / p.m) * (-x.sin()) * dphi[j];
        let lap = -(p.hbar * p.hbar / (2.0 * p.m)) * (-x.cos()) * phi[j];
        closure = closure.max((direct[j] + cov[j] - mis[j]).norm());
        predicted = predicted.max((direct[j] + cov[j] - grad - lap).norm());
        gradient = gradient.max(grad.norm());
    }
    Ok(FieldMismatch {
        closure_error: closure,
        predicted_error: predicted,
        gradient_term: gradient,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn plane_wave_is_annihilated() {
        let g = Grid1D::new(32.0 * PI, 256).unwrap();
        let s = WaveState::plane_wave(g, 1.0).unwrap();
        let rows = fourth_order_residual(&s, &PhysicalParams::default(), &[0.0, 1.0], 2e-3).unwrap();
        assert!(rows.iter().all(|r| r.residual < 1e-9), "{rows:?}");
    }

    #[test]
    fn cosine_potential_mismatch() {
        let g = Grid1D::new(32.0 * PI, 1024).unwrap();
        let m = field_mismatch(g, &PhysicalParams::default(), 0.7).unwrap();
        assert!(m.closure_error < 1e-10, "{m:?}");
        assert!(m.predicted_error < 1e-10, "{m:?}");
        assert!(m.gradient_term > 0.1);
    }
}

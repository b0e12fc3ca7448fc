use serde::Serialize;

use super::boost::{galilean_phase, lorentz_phase};
use super::evolve::{evolve, particle_branch, Equation};
use super::grid::{PhysicalParams, WaveState};
use super::measure::fit_slope;
use super::LabError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitRow {
    pub c: f64,
    /// `‖Ψ_LCSE − Ψ_Schr‖₂ / ‖Ψ_Schr‖₂` at the final time.
    pub error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitStudy {
    pub t: f64,
    pub rows: Vec<LimitRow>,
    /// Slope of `log error` against `log c`.
    pub slope: f64,
}

/// Distance between LCSE (particle-branch start) and Schrödinger evolutions
/// of the same packet, for each `c`.
pub fn nr_limit_study(c_list: &[f64], packet: &WaveState, p: &PhysicalParams, t: f64) -> Result<LimitStudy, LabError> {
    if c_list.len() < 2 {
        return Err(LabError::InvalidParams("need at least two values of c".into()));
    }
    let start = WaveState { velocity: None, ..packet.clone() };
    let reference = evolve(Equation::Schrodinger, &start, p, start.time + t)?;
    let scale = reference.norm();
    let mut rows = Vec::new();
    for &c in c_list {
        let pc = PhysicalParams { c, ..*p };
        let lcse = evolve(Equation::Lcse, &particle_branch(Equation::Lcse, &start, &pc)?, &pc, start.time + t)?;
        rows.push(LimitRow {
            c,
            error: packet.grid.distance(&lcse.values, &reference.values) / scale,
        });
    }
    let lx: Vec<f64> = rows.iter().map(|r| r.c.ln()).collect();
    let ly: Vec<f64> = rows.iter().map(|r| r.error.ln()).collect();
    Ok(LimitStudy { t, rows, slope: fit_slope(&lx, &ly) })
}

/// Largest difference between the Lorentz and Galilean multiplier phases
/// over `|x′| ≤ x_max`, `0 ≤ t′ ≤ t_max`, relative to the largest Galilean phase.
pub fn multiplier_phase_gap(p: &PhysicalParams, x_max: f64, t_max: f64) -> Result<f64, LabError> {
    let mut gap: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 0..=20 {
        for j in 0..=20 {
            let x = -x_max + 2.0 * x_max * i as f64 / 20.0;
            let t = t_max * j as f64 / 20.0;
            let g = galilean_phase(x, t, p);
            gap = gap.max((lorentz_phase(x, t, p)? - g).abs());
            scale = scale.max(g.abs());
        }
    }
    Ok(if scale == 0.0 { gap } else { gap / scale })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::Grid1D;

    #[test]
    fn phase_gap_is_second_order() {
        let at = |beta: f64| {
            let p = PhysicalParams { v: beta * 10.0, ..Default::default() };
            multiplier_phase_gap(&p, 10.0, 1.0).unwrap()
        };
        let ratio = at(0.05) / at(0.025);
        assert!((ratio - 4.0).abs() < 0.05, "ratio {ratio}");
        assert!(at(0.05) < 0.05 * 0.05);
    }

    #[test]
    fn same_c_same_error() {
        let g = Grid1D::new(64.0, 256).unwrap();
        let packet = WaveState::gaussian(g, 0.0, 2.0, 1.0);
        let s = nr_limit_study(&[20.0, 20.0], &packet, &PhysicalParams::default(), 1.0).unwrap();
        assert_eq!(s.rows[0].error, s.rows[1].error);
    }
}

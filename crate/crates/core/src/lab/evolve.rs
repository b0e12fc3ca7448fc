use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::grid::{PhysicalParams, WaveState};
use super::LabError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Equation {
    Schrodinger,
    KleinGordon,
    Lcse,
}

impl Equation {
    pub const ALL: [Equation; 3] = [Equation::Schrodinger, Equation::KleinGordon, Equation::Lcse];

    pub fn name(&self) -> &'static str {
        match self {
            Equation::Schrodinger => "schrodinger",
            Equation::KleinGordon => "klein_gordon",
            Equation::Lcse => "lcse",
        }
    }

    pub fn second_order(&self) -> bool {
        !matches!(self, Equation::Schrodinger)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Equation {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "schrodinger" => Ok(Equation::Schrodinger),
            "klein_gordon" | "klein-gordon" | "kg" => Ok(Equation::KleinGordon),
            "lcse" => Ok(Equation::Lcse),
            _ => Err(LabError::InvalidParams(format!("unknown equation {s:?}"))),
        }
    }
}

/// Frequencies of `e^{i(kx − ωt)}` for one mode. First-order equations have
/// only `particle`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeRoots {
    pub particle: f64,
    pub antiparticle: Option<f64>,
}

impl ModeRoots {
    pub fn branches(&self) -> Vec<f64> {
        std::iter::once(self.particle).chain(self.antiparticle).collect()
    }
}

pub fn mode_roots(eq: Equation, k: f64, p: &PhysicalParams) -> Result<ModeRoots, LabError> {
    let (m, h, c, v) = (p.m, p.hbar, p.c, p.potential);
    match eq {
        Equation::Schrodinger => Ok(ModeRoots {
            particle: h * k * k / (2.0 * m) + v / h,
            antiparticle: None,
        }),
        Equation::KleinGordon => {
            if v != 0.0 {
                return Err(LabError::InvalidParams("the Klein-Gordon evolver takes no potential".into()));
            }
            let w = (m * m * c.powi(4) + c * c * h * h * k * k).sqrt() / h;
            Ok(ModeRoots {
                particle: w,
                antiparticle: Some(-w),
            })
        }
        Equation::Lcse => {
            // (ħ²/2mc²)ω² + ħω − E = 0, written as ω = (mc²/ħ)(−1 ± √(1 + x))
            let e = h * h * k * k / (2.0 * m) + v;
            let rest = m * c * c / h;
            let x = 2.0 * e / (m * c * c);
            if 1.0 + x <= 0.0 {
                return Err(LabError::Degenerate { k, discriminant: 1.0 + x });
            }
            let s = (1.0 + x).sqrt();
            Ok(ModeRoots {
                particle: rest * x / (s + 1.0),
                antiparticle: Some(-rest * (1.0 + s)),
            })
        }
    }
}

/// Split `(ψ̂, ∂tψ̂)` of one mode onto its two branches.
pub fn branch_amplitudes(roots: &ModeRoots, psi: Complex64, dpsi: Complex64) -> (Complex64, Complex64) {
    let Some(wm) = roots.antiparticle else {
        return (psi, Complex64::new(0.0, 0.0));
    };
    let wp = roots.particle;
    if wp == wm {
        return (psi, dpsi);
    }
    let a = (Complex64::i() * dpsi - wm * psi) / (wp - wm);
    (a, psi - a)
}

fn check_equation_state(eq: Equation, s: &WaveState) -> Result<(), LabError> {
    match (&s.velocity, eq.second_order()) {
        (None, true) => Err(LabError::InvalidParams(format!("{eq} needs ∂tΨ in the state"))),
        (Some(v), _) if v.len() != s.values.len() => Err(LabError::InvalidParams("∂tΨ has the wrong length".into())),
        _ => Ok(()),
    }
}

/// Exact propagation by `dt`, which may be negative.
pub fn propagate(eq: Equation, s: &WaveState, p: &PhysicalParams, dt: f64) -> Result<WaveState, LabError> {
    p.validate(eq == Equation::KleinGordon)?;
    check_equation_state(eq, s)?;
    let g = s.grid;
    let ks = g.wavenumbers();
    let psi = g.forward(&s.values);
    let i = Complex64::i();
    if !eq.second_order() {
        let mut out = psi;
        for (z, k) in out.iter_mut().zip(&ks) {
            let w = mode_roots(eq, *k, p)?.particle;
            *z *= (-i * w * dt).exp();
        }
        return Ok(WaveState {
            grid: g,
            values: g.inverse(&out),
            velocity: None,
            time: s.time + dt,
        });
    }
    let dpsi = g.forward(s.velocity.as_deref().expect("checked above"));
    let mut vals = Vec::with_capacity(g.len());
    let mut vels = Vec::with_capacity(g.len());
    for ((k, a0), d0) in ks.iter().zip(&psi).zip(&dpsi) {
        let roots = mode_roots(eq, *k, p)?;
        let wp = roots.particle;
        let wm = roots.antiparticle.expect("second order");
        if wp == wm {
            // massless KG at k = 0: ψ̂ is linear in t
            vals.push(a0 + d0 * dt);
            vels.push(*d0);
            continue;
        }
        let (a, b) = branch_amplitudes(&roots, *a0, *d0);
        let ep = (-i * wp * dt).exp();
        let em = (-i * wm * dt).exp();
        vals.push(a * ep + b * em);
        vels.push(-i * (wp * a * ep + wm * b * em));
    }
    Ok(WaveState {
        grid: g,
        values: g.inverse(&vals),
        velocity: Some(g.inverse(&vels)),
        time: s.time + dt,
    })
}

/// Evolve forward to `t_final`.
pub fn evolve(eq: Equation, s: &WaveState, p: &PhysicalParams, t_final: f64) -> Result<WaveState, LabError> {
    if !(t_final >= s.time) {
        return Err(LabError::InvalidParams(format!(
            "t_final = {t_final} precedes the state time {}",
            s.time
        )));
    }
    propagate(eq, s, p, t_final - s.time)
}

/// Attach `∂tΨ` so that every mode sits on its particle branch.
pub fn particle_branch(eq: Equation, s: &WaveState, p: &PhysicalParams) -> Result<WaveState, LabError> {
    let g = s.grid;
    let hat = g.forward(&s.values);
    let mut d = Vec::with_capacity(hat.len());
    for (z, k) in hat.iter().zip(g.wavenumbers()) {
        d.push(-Complex64::i() * mode_roots(eq, k, p)?.particle * z);
    }
    let mut out = s.clone();
    out.velocity = if eq.second_order() { Some(g.inverse(&d)) } else { None };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::Grid1D;
    use std::f64::consts::PI;

    fn params() -> PhysicalParams {
        PhysicalParams::default()
    }

    #[test]
    fn lcse_roots_solve_the_characteristic() {
        let p = PhysicalParams { potential: 0.3, ..params() };
        for k in [0.0, 0.5, 1.0, 7.0] {
            let r = mode_roots(Equation::Lcse, k, &p).unwrap();
            for w in r.branches() {
                let lhs = p.hbar * p.hbar / (2.0 * p.m * p.c * p.c) * w * w + p.hbar * w;
                let rhs = p.hbar * p.hbar * k * k / (2.0 * p.m) + p.potential;
                assert!((lhs - rhs).abs() < 1e-9 * rhs.abs().max(1.0), "k = {k}");
            }
        }
    }

    #[test]
    fn degenerate_lcse_is_reported() {
        let p = PhysicalParams { potential: -60.0, ..params() };
        assert!(matches!(mode_roots(Equation::Lcse, 0.0, &p), Err(LabError::Degenerate { .. })));
    }

    #[test]
    fn branch_split_reconstructs_the_state() {
        let p = params();
        let roots = mode_roots(Equation::Lcse, 1.5, &p).unwrap();
        let psi = Complex64::new(0.3, -1.1);
        let dpsi = Complex64::new(2.0, 0.7);
        let (a, b) = branch_amplitudes(&roots, psi, dpsi);
        let wm = roots.antiparticle.unwrap();
        assert!((a + b - psi).norm() < 1e-14);
        assert!((-Complex64::i() * (roots.particle * a + wm * b) - dpsi).norm() < 1e-12);
    }

    #[test]
    fn massless_klein_gordon_zero_mode_drifts() {
        let g = Grid1D::new(2.0 * PI, 8).unwrap();
        let p = PhysicalParams { m: 0.0, ..params() };
        let s = WaveState::from_fn(g, |_| Complex64::new(1.0, 0.0)).with_velocity(vec![Complex64::new(0.5, 0.0); 8]);
        let out = propagate(Equation::KleinGordon, &s, &p, 2.0).unwrap();
        assert!(out.values.iter().all(|z| (z - Complex64::new(2.0, 0.0)).norm() < 1e-13));
    }

    #[test]
    fn second_order_needs_velocity() {
        let g = Grid1D::new(2.0 * PI, 8).unwrap();
        let s = WaveState::plane_wave(g, 1.0).unwrap();
        assert!(propagate(Equation::Lcse, &s, &params(), 1.0).is_err());
        assert!(evolve(Equation::Schrodinger, &s, &params(), -1.0).is_err());
    }
}

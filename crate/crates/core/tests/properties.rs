use num_complex::Complex64;
use proptest::prelude::*;
use wavecov::lab::{branch_amplitudes, mode_roots, particle_branch, propagate, Equation, Grid1D, PhysicalParams, WaveState};
use wavecov::symbolic::{parse_scalar, Scalar};

fn grid() -> Grid1D {
    Grid1D::new(32.0 * std::f64::consts::PI, 256).unwrap()
}

fn equation() -> impl Strategy<Value = Equation> {
    prop_oneof![Just(Equation::Schrodinger), Just(Equation::KleinGordon), Just(Equation::Lcse)]
}

fn params(eq: Equation) -> impl Strategy<Value = PhysicalParams> {
    let potential = if eq == Equation::KleinGordon { Just(0.0).boxed() } else { (-1.0..1.0f64).boxed() };
    (0.5..2.0f64, 0.5..2.0f64, 5.0..20.0f64, potential).prop_map(|(m, hbar, c, potential)| PhysicalParams {
        m,
        hbar,
        c,
        potential,
        v: 0.0,
    })
}

fn packet(eq: Equation, x0: f64, sigma: f64, k0: f64) -> WaveState {
    let s = WaveState::gaussian(grid(), x0, sigma, k0);
    if eq.second_order() {
        // a mix of both branches
        let v = s.values.iter().map(|z| Complex64::new(0.3, -1.1) * z).collect();
        s.with_velocity(v)
    } else {
        s
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn schrodinger_conserves_norm(p in params(Equation::Schrodinger), x0 in -5.0..5.0f64, sigma in 0.8..3.0f64, k0 in -2.0..2.0f64, t in 0.0..3.0f64) {
        let s = WaveState::gaussian(grid(), x0, sigma, k0);
        let out = propagate(Equation::Schrodinger, &s, &p, t).unwrap();
        prop_assert!((out.norm() - s.norm()).abs() / s.norm() < 1e-12);
    }

    #[test]
    fn particle_branch_conserves_norm((eq, p) in equation().prop_flat_map(|eq| (Just(eq), params(eq))), sigma in 0.8..3.0f64, t in 0.0..2.0f64) {
        let s = particle_branch(eq, &WaveState::gaussian(grid(), 0.0, sigma, 0.5), &p).unwrap();
        let out = propagate(eq, &s, &p, t).unwrap();
        prop_assert!((out.norm() - s.norm()).abs() / s.norm() < 1e-12);
    }

    #[test]
    fn time_reversal((eq, p) in equation().prop_flat_map(|eq| (Just(eq), params(eq))), x0 in -5.0..5.0f64, sigma in 0.8..3.0f64, k0 in -2.0..2.0f64, t in 0.0..2.0f64) {
        let s = packet(eq, x0, sigma, k0);
        let back = propagate(eq, &propagate(eq, &s, &p, t).unwrap(), &p, -t).unwrap();
        prop_assert!(grid().distance(&back.values, &s.values) / s.norm() <= 1e-12);
    }

    #[test]
    fn modes_evolve_by_a_phase((eq, p) in equation().prop_flat_map(|eq| (Just(eq), params(eq))), j in -20i32..20, t in 0.0..2.0f64) {
        let g = grid();
        let k = j as f64 * g.dk();
        let roots = mode_roots(eq, k, &p).unwrap();
        for w in roots.branches() {
            let mut s = WaveState::plane_wave(g, k).unwrap();
            if eq.second_order() {
                let v = s.values.iter().map(|z| -Complex64::i() * w * z).collect();
                s = s.with_velocity(v);
            }
            let out = propagate(eq, &s, &p, t).unwrap();
            let phase = (-Complex64::i() * w * t).exp();
            let err = out.values.iter().zip(&s.values).map(|(a, b)| (a - phase * b).norm()).fold(0.0, f64::max);
            prop_assert!(err < 1e-10, "{eq} k = {k} ω = {w}: {err}");
        }
    }

    #[test]
    fn branches_are_complete(eq in prop_oneof![Just(Equation::KleinGordon), Just(Equation::Lcse)], k in -8.0..8.0f64, re in -2.0..2.0f64, im in -2.0..2.0f64, dre in -50.0..50.0f64, dim in -50.0..50.0f64) {
        let p = PhysicalParams::default();
        let roots = mode_roots(eq, k, &p).unwrap();
        let (psi, dpsi) = (Complex64::new(re, im), Complex64::new(dre, dim));
        let (a, b) = branch_amplitudes(&roots, psi, dpsi);
        let wm = roots.antiparticle.unwrap();
        prop_assert!((a + b - psi).norm() < 1e-12 * (1.0 + psi.norm()));
        let rebuilt = -Complex64::i() * (roots.particle * a + wm * b);
        prop_assert!((rebuilt - dpsi).norm() < 1e-10 * (1.0 + dpsi.norm()));
    }

    #[test]
    fn lcse_roots_solve_the_quadratic(k in -20.0..20.0f64, v in -1.0..1.0f64) {
        let p = PhysicalParams { potential: v, ..Default::default() };
        let r = mode_roots(Equation::Lcse, k, &p).unwrap();
        for w in r.branches() {
            // (ħ²/2mc²)ω² + ħω = ħ²k²/2m + V
            let lhs = p.hbar * p.hbar * w * w / (2.0 * p.m * p.c * p.c) + p.hbar * w;
            let rhs = p.hbar * p.hbar * k * k / (2.0 * p.m) + v;
            prop_assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs.abs() + lhs.abs()));
        }
    }

    #[test]
    fn scalar_text_roundtrip(a in -50i64..50, b in 1i64..50, e in 0u32..4) {
        let x = &Scalar::ratio(a, b) * &Scalar::sym("m").pow(e);
        let y = &x + &(&Scalar::i() * &Scalar::sym("ħ"));
        prop_assert_eq!(parse_scalar(&y.to_string()).unwrap(), y);
    }
}

#[test]
fn massless_zero_mode_is_linear_in_time() {
    let p = PhysicalParams { m: 0.0, ..Default::default() };
    let g = grid();
    let s = WaveState::from_fn(g, |_| Complex64::new(1.0, 0.0)).with_velocity(vec![Complex64::new(0.0, 2.0); g.len()]);
    let out = propagate(Equation::KleinGordon, &s, &p, 1.5).unwrap();
    for z in &out.values {
        assert!((z - Complex64::new(1.0, 3.0)).norm() < 1e-12);
    }
}

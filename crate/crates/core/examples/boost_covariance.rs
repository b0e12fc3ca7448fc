//! Build boosted solutions from the multiplier and compare them with
//! direct evolution.
use wavecov::lab::{boost_check, BoostKind, Equation, Grid1D, Packet, PhysicalParams};

fn main() {
    let grid = Grid1D::new(32.0 * std::f64::consts::PI, 1024).unwrap();

    let p = PhysicalParams { v: 1.0, ..Default::default() };
    for t in [0.25, 0.5, 1.0] {
        let r = boost_check(Equation::Schrodinger, Packet::Gaussian { sigma: 1.0, x0: 0.0 }, &p, BoostKind::Galilean, grid, t).unwrap();
        println!("Galilean Gaussian t = {t:<4}  residual {:.2e}  L2 {:.2e}", r.max_residual, r.l2_discrepancy);
    }

    let p = PhysicalParams { v: 3.0, ..Default::default() };
    let r = boost_check(Equation::Lcse, Packet::RestFrame, &p, BoostKind::Lorentz, grid, 1.0).unwrap();
    println!("\nLCSE at β = {}", p.v / p.c);
    println!("  residual {:.2e}, L2 {:.2e}", r.max_residual, r.l2_discrepancy);
    println!("  ω measured {:.15}  expected {:.15}", r.omega_measured.unwrap(), r.omega_expected.unwrap());
    println!("  k measured {:.15}  expected {:.15}", r.k_measured.unwrap(), r.k_expected.unwrap());
}

use wavecov::lab::{multiplier_phase_gap, nr_limit_study, Grid1D, PhysicalParams, WaveState};

fn main() {
    let grid = Grid1D::new(32.0 * std::f64::consts::PI, 1024).unwrap();
    let packet = WaveState::gaussian(grid, 0.0, 2.0, 1.0);
    let p = PhysicalParams::default();
    let study = nr_limit_study(&[10.0, 20.0, 40.0, 80.0], &packet, &p, 1.0).unwrap();
    for row in &study.rows {
        println!("c = {:>4}   ‖Ψ_LCSE − Ψ_S‖/‖Ψ_S‖ = {:.3e}", row.c, row.error);
    }
    println!("log-log slope: {:.4}", study.slope);

    // the relativistic phase tends to the Galilean one as c grows
    for c in [10.0, 100.0, 1000.0] {
        let p = PhysicalParams { c, v: 1.0, ..Default::default() };
        println!("c = {c:>6}: relative phase gap {:.3e}", multiplier_phase_gap(&p, 5.0, 1.0).unwrap());
    }
}

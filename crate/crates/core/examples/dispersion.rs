use wavecov::lab::{measure_dispersion, Equation, Grid1D, PhysicalParams};

fn main() {
    let grid = Grid1D::new(32.0 * std::f64::consts::PI, 1024).unwrap();
    let p = PhysicalParams::default();
    let ks = [0.0, 1.0, 2.0, 4.0, 8.0];
    println!("{:>13} {:>4} {:>13} {:>22} {:>10}", "equation", "k", "branch", "ω", "error");
    for eq in Equation::ALL {
        for r in measure_dispersion(eq, &p, grid, &ks, 4).unwrap() {
            println!("{:>13} {:>4} {:>13} {:>22.15} {:>10.1e}", eq.name(), r.k, r.branch.name(), r.omega_measured, r.error);
        }
    }
}

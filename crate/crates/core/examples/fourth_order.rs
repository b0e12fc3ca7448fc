use wavecov::lab::{field_mismatch, fourth_order_residual, Grid1D, PhysicalParams, WaveState};

fn main() {
    let grid = Grid1D::new(32.0 * std::f64::consts::PI, 1024).unwrap();
    let p = PhysicalParams::default();
    let packet = WaveState::gaussian(grid, 0.0, 1.0, 0.0);
    for row in fourth_order_residual(&packet, &p, &[0.0, 0.25, 0.5, 0.75, 1.0], 2e-3).unwrap() {
        println!("t = {:<5} |Ŝ²Ψ|/‖Ψ‖ = {:.2e}", row.t, row.residual);
    }
    let m = field_mismatch(grid, &p, 0.7).unwrap();
    println!("\nV = cos x");
    println!("  symbolic mismatch reproduced to   {:.2e}", m.closure_error);
    println!("  −(ħ²/m)V′∂x − (ħ²/2m)V″ matches to {:.2e}", m.predicted_error);
    println!("  size of the gradient term          {:.2e}", m.gradient_term);
}

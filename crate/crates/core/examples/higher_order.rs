//! Third- and fourth-order Galilean operators, and the square of the
//! Schrödinger operator.
use wavecov::solver::{derive_galilean, schrodinger_square, square_on_free_waves, Potential};

fn main() {
    let third = derive_galilean(3).unwrap();
    println!("order 3: {}", third.report.verdict);

    let fourth = derive_galilean(4).unwrap();
    println!("order 4: {}", fourth.report.verdict);
    for key in ["Btil", "bbar", "Cbar/B", "g_t", "g_x"] {
        println!("  {key} = {}", fourth.value(key).unwrap());
    }

    for p in [Potential::Constant, Potential::Field] {
        let cmp = schrodinger_square(p).unwrap();
        println!("\n{p:?}: {}", cmp.verdict);
    }
    println!("\nŜ² on free plane waves: {}", square_on_free_waves().unwrap());
}

use wavecov::solver::derive_galilean;

fn main() {
    let d = derive_galilean(2).expect("derivation runs");
    print!("{}", d.report.to_text());
    println!();
    for (name, value) in &d.values {
        println!("{name:>12} = {value}");
    }
}

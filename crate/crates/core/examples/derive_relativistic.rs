//! Both branches of the Lorentz-covariant second-order equation.
use wavecov::solver::derive_lorentz;

fn main() {
    let lz = derive_lorentz().unwrap();
    for d in [&lz.klein_gordon, &lz.lcse] {
        println!("== {}: {}", d.report.pipeline, d.report.verdict);
        if let Some(eq) = &d.report.final_equation {
            println!("   {eq}");
        }
        if let Some(g) = &d.report.multiplier {
            println!("   {}", g.statement);
        }
        for t in &d.report.theorems {
            println!("   [{}] {}: {}", if t.holds { "holds" } else { "FAILS" }, t.name, t.statement);
        }
    }
}

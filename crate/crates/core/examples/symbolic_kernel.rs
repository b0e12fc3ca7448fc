//! Exact scalars, operators and a hand-driven Galilean boost.
use wavecov::boost::{boost_operator, covariance_constraints, FrameTransform};
use wavecov::symbolic::{parse_scalar, ExpLinearMultiplier, LinearPDE, MultiIndex, Scalar};

fn main() {
    let ratio = parse_scalar("(2*i*m/ħ) * (1 + sqrt2)^2").unwrap();
    println!("ratio          = {ratio}");
    println!("ratio / ratio  = {}", ratio.checked_div(&ratio).unwrap());

    // γ²β² is rewritten as γ² − 1
    let g = parse_scalar("γ^2*β^2 + 1").unwrap();
    println!("γ²β² + 1       = {g}");

    let op = LinearPDE::new()
        .with_laplacian(parse_scalar("ħ^2/(2*m)").unwrap())
        .with_term(MultiIndex::unit(0), Scalar::i() * Scalar::sym("ħ"));
    println!("\noperator: {op}");

    let boost = FrameTransform::galilean(Scalar::sym("v"), 1);
    let plain = boost_operator(&op, &boost, &ExpLinearMultiplier::identity());
    println!("boosted, no multiplier: {plain}");
    println!("{}", covariance_constraints(&op, &plain).unwrap());

    let phase = ExpLinearMultiplier::with_exponent([
        parse_scalar("i*m*v^2/(2*ħ)").unwrap(),
        parse_scalar("i*m*v/ħ").unwrap(),
        Scalar::zero(),
        Scalar::zero(),
    ]);
    let fixed = boost_operator(&op, &boost, &phase);
    println!("boosted, with phase:    {fixed}");
    println!("constraints left: {}", covariance_constraints(&op, &fixed).unwrap().len());
}

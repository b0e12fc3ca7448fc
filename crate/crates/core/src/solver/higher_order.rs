use crate::boost::{rotation_constraints, FrameTransform};
use crate::symbolic::{ExpLinearMultiplier, LinearPDE, MultiIndex, Scalar};

use super::dispersion::{dispersion_match, DispersionTarget, PlaneWave, OMEGA};
use super::pipeline::{bind, eliminate_forced, s, set_of, stage, Derivation, SolverError};
use super::render::{evolution_form, multiplier_form, pretty};
use super::report::{gid, Claim, DerivationReport};
use super::system::{multiplier_ansatz, solve_system, symbols};

/// How the potential in `Ŝ` is treated when squaring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Potential {
    Constant,
    /// `V(r)`, static but position dependent.
    Field,
}

/// `Ŝ²` against the covariant fourth-order operator.
#[derive(Clone, Debug)]
pub struct SquareComparison {
    pub potential: Potential,
    pub schrodinger: LinearPDE,
    pub square: LinearPDE,
    /// Covariant fourth-order operator at `Ā = ħ²`, `B = Vħ²/m`, `f = −V²`.
    pub covariant: LinearPDE,
    /// `Ŝ² + covariant`; zero when the two agree up to the overall sign.
    pub mismatch: LinearPDE,
    pub equivalent: bool,
    pub verdict: String,
}

/// `Ŝ = (ħ²/2m)∇² + iħ∂t − V`
pub fn schrodinger_operator() -> LinearPDE {
    LinearPDE::new()
        .with_laplacian(s("ħ^2/(2*m)"))
        .with_term(MultiIndex::unit(0), s("i*ħ"))
        .with_potential(s("-V"))
}

fn laplacian_squared(c: &Scalar) -> LinearPDE {
    let mut op = LinearPDE::new();
    for a in 1..4 {
        for b in 1..4 {
            op.add_term(MultiIndex::from_coords(&[a, a, b, b]), c);
        }
    }
    op
}

fn time_laplacian(c: &Scalar, time_order: usize) -> LinearPDE {
    let mut op = LinearPDE::new();
    for j in 1..4 {
        let mut coords = vec![0; time_order];
        coords.extend([j, j]);
        op.add_term(MultiIndex::from_coords(&coords), c);
    }
    op
}

/// Rotation-covariant operator up to `order`, built from the reduced
/// operators of each order and renamed to the working symbols.
fn rotation_family(rep: &mut DerivationReport, order: u32) -> Result<LinearPDE, SolverError> {
    let names: &[(&str, &str)] = match order {
        3 => &[("a00", "Abar"), ("a11", "Bbar"), ("b0", "Cbar")],
        _ => &[
            ("a00", "Abar"),
            ("a11", "B"),
            ("b0", "Cbar"),
            ("a000", "atil"),
            ("a011", "bbar"),
            ("a0000", "Atil"),
            ("a0011", "Ctil"),
            ("a1111", "Btil"),
        ],
    };
    let renames = bind(&names.iter().map(|(a, b)| (*a, s(b))).collect::<Vec<_>>());
    let mut op = LinearPDE::new();
    for k in 2..=order {
        let rot = rotation_constraints(k)?;
        rep.record(&format!("R{k}"), &rot.system);
        for r in rot.relations() {
            rep.note(format!("  {r}"));
        }
        op = op.add(&rot.reduced.substitute(&renames)?);
    }
    rep.note(format!("rotation-reduced operator: {op}"));
    Ok(op)
}

fn third_order(mut rep: DerivationReport) -> Result<Derivation, SolverError> {
    let op = rotation_family(&mut rep, 3)?;
    let boost = FrameTransform::galilean(s("v"), 1);
    let (reduced, forced) = eliminate_forced(
        &mut rep,
        "E",
        op,
        &boost,
        &multiplier_ansatz(&[0, 1]),
        &symbols(&["a000", "a011"]),
        &set_of(&["v"]),
    )?;
    for (sym, val, id) in &forced {
        rep.check(sym.name(), &Scalar::zero(), val);
        rep.forced(format!("{sym} = {}", pretty(val)), vec![id.clone()]);
    }
    let order_two = LinearPDE::new()
        .with_term(MultiIndex::from_coords(&[0, 0]), s("Abar"))
        .with_laplacian(s("Bbar"))
        .with_term(MultiIndex::unit(0), s("Cbar"))
        .with_potential(s("f"));
    let collapsed = reduced == order_two;
    rep.check_flag("both third-order coefficients forced", forced.len() == 2);
    rep.check_flag("reduces to the second-order family", collapsed);
    rep.theorem(
        "no-third-order-galilean",
        "without fourth-order terms a Galilean boost removes every third-order term",
        collapsed && forced.iter().all(|(_, v, _)| v.is_zero()),
        forced.iter().map(|(_, _, id)| id.clone()).collect(),
    );
    rep.final_equation = Some(format!("{reduced}"));
    rep.verdict = if rep.reproduced() {
        "collapses to order 2".into()
    } else {
        "derivation did not close".into()
    };
    let mut der = Derivation::new(rep);
    der.set("a000", &Scalar::zero());
    der.set("a011", &Scalar::zero());
    der.operator = Some(reduced);
    Ok(der)
}

fn fourth_order(mut rep: DerivationReport) -> Result<Derivation, SolverError> {
    let op = rotation_family(&mut rep, 4)?;
    let boost = FrameTransform::galilean(s("v"), 1);
    let ansatz = multiplier_ansatz(&[0, 1]);
    let (op1, forced) = eliminate_forced(
        &mut rep,
        "E",
        op,
        &boost,
        &ansatz,
        &symbols(&["Atil", "Ctil", "atil"]),
        &set_of(&["v"]),
    )?;
    for (sym, val, id) in &forced {
        rep.check(sym.name(), &Scalar::zero(), val);
        rep.forced(format!("{sym} = {}", pretty(val)), vec![id.clone()]);
    }
    rep.check_flag("three coefficients forced", forced.len() == 3);

    let (_, cs) = stage(&mut rep, "G4", &op1, &boost, &ansatz)?;
    let sol = solve_system(
        &cs,
        &symbols(&["bbar", "Btil", "λ0", "λ1"]),
        &set_of(&["v", "B", "Cbar", "Abar", "λ1"]),
    );
    let ids: Vec<String> = cs.equations.iter().map(|c| gid("G4", &c.id)).collect();
    rep.check_flag("all boost conditions solved", sol.is_satisfied());
    let get = |n: &str| sol.value(n).cloned().unwrap_or_else(|| s(n));
    let (btil, bbar, l0, l1) = (get("Btil"), get("bbar"), get("λ0"), get("λ1"));
    rep.check("Btil", &s("Abar*B^2/Cbar^2"), &btil);
    rep.check("bbar", &s("2*Abar*B/Cbar"), &bbar);
    rep.check("lambda_t", &s("Cbar*v^2/(4*B)"), &l0);
    rep.check("lambda_x", &s("Cbar*v/(2*B)"), &l1);
    for (name, v) in [("B̃", &btil), ("b̄", &bbar), ("λ_t", &l0), ("λ_x", &l1)] {
        rep.ratio(format!("{name} = {}", pretty(v)), ids.clone());
    }
    let op2 = op1.substitute(&bind(&[("Btil", btil.clone()), ("bbar", bbar.clone())]))?;
    let g = ExpLinearMultiplier::with_exponent([l0.clone(), l1.clone(), Scalar::zero(), Scalar::zero()]);
    let (_, closure) = stage(&mut rep, "G5", &op2, &boost, &g)?;
    rep.check_flag("closure", closure.is_empty());

    let m = dispersion_match(&op2, &DispersionTarget::free_particle(), &symbols(&["Cbar", "f"]), &set_of(&["B", "m", "ħ", "Abar", "Cbar"]));
    rep.record("D1", &m.equations);
    let d_ids: Vec<String> = m.equations.equations.iter().map(|c| gid("D1", &c.id)).collect();
    let cbar = m.solution.value("Cbar").cloned().unwrap_or_else(|| s("Cbar"));
    let f_free = m.solution.value("f").cloned().unwrap_or_else(|| s("f"));
    let ratio = cbar.checked_div(&s("B"))?;
    rep.check_flag("dispersion satisfied", m.is_satisfied());
    rep.check("Cbar/B", &s("2*i*m/ħ"), &ratio);
    rep.check("f (free)", &Scalar::zero(), &f_free);
    rep.ratio(format!("C̄/B = {}", pretty(&ratio)), d_ids.clone());
    rep.ratio(format!("f = {}", pretty(&f_free)), d_ids.clone());

    let phys = bind(&[("Cbar", cbar.clone())]);
    let gt = l0.substitute(&phys)?;
    let gx = l1.substitute(&phys)?;
    rep.check("g exponent t", &s("i*m*v^2/(2*ħ)"), &gt);
    rep.check("g exponent x", &s("i*m*v/ħ"), &gx);
    rep.multiplier = Some(Claim {
        statement: format!("g = {}, the Schrödinger transformation law", multiplier_form(&gt, &gx, "x")),
        backed_by: ids.iter().chain(&d_ids).cloned().collect(),
    });

    // General fourth-order equation, with f left free for the potential.
    let op3 = op2.substitute(&phys)?;
    let expected = laplacian_squared(&s("Abar*ħ^2/(4*m^2)"))
        .add(&time_laplacian(&s("i*ħ*Abar/m"), 1))
        .with_term(MultiIndex::from_coords(&[0, 0]), s("-Abar"))
        .add(&LinearPDE::new().with_laplacian(s("-B")))
        .with_term(MultiIndex::unit(0), s("-2*i*m*B/ħ"))
        .with_potential(s("-f"));
    rep.check_flag("fourth-order operator", op3.scale(&Scalar::int(-1)) == expected);
    rep.note(format!("fourth-order equation: {}", pretty_operator(&op3.scale(&Scalar::int(-1)))));

    let sch = op3
        .substitute(&bind(&[("Abar", Scalar::zero()), ("B", s("-ħ^2/(2*m)")), ("f", s("V"))]))?
        .scale(&Scalar::int(-1));
    let reduces = sch == schrodinger_operator();
    rep.check_flag("Ā = 0 gives Ŝ", reduces);
    rep.theorem(
        "fourth-order-reduces-to-schrodinger",
        "with Ā = 0 and B = −ħ²/2m the fourth-order equation is the Schrödinger equation",
        reduces && sol.is_satisfied(),
        ids.iter().chain(&d_ids).cloned().collect(),
    );

    let sq = schrodinger_square(Potential::Constant)?;
    let matched = op3.substitute(&square_values())?;
    rep.check_flag("Ā = ħ², B = Vħ²/m, f = −V² gives −Ŝ²", matched == sq.square.scale(&Scalar::int(-1)));
    rep.theorem(
        "fourth-order-is-schrodinger-squared",
        "for constant V the fourth-order operator equals −Ŝ²",
        sq.equivalent && matched == sq.square.scale(&Scalar::int(-1)),
        d_ids.clone(),
    );
    let field = schrodinger_square(Potential::Field)?;
    rep.note(format!("V(r): Ŝ² − Ŝ²|const = {}", field.mismatch));
    rep.theorem(
        "square-fails-for-field-potential",
        "for V(r) the square contains −(ħ²/m)∇V·∇, absent from the covariant operator",
        !field.equivalent,
        vec![],
    );

    rep.final_equation = Some(evolution_form(&sch));
    rep.verdict = if rep.reproduced() {
        "fourth-order equation is the Schrödinger equation for Ā = 0 and its square for Ā = ħ²".into()
    } else {
        "derivation did not close".into()
    };
    let mut der = Derivation::new(rep);
    der.set("Btil", &btil);
    der.set("bbar", &bbar);
    der.set("lambda_t", &l0);
    der.set("lambda_x", &l1);
    der.set("Cbar/B", &ratio);
    der.set("f_free", &f_free);
    der.set("g_t", &gt);
    der.set("g_x", &gx);
    der.operator = Some(op3);
    der.multiplier = Some(ExpLinearMultiplier::with_exponent([gt, gx, Scalar::zero(), Scalar::zero()]));
    Ok(der)
}

fn pretty_operator(op: &LinearPDE) -> String {
    let mut parts: Vec<String> = op
        .terms()
        .map(|(k, c)| {
            let ds: String = k.coords().iter().map(|mu| format!("∂{mu}")).collect();
            format!("({}){ds}", pretty(c))
        })
        .collect();
    if !op.potential().is_zero() {
        parts.push(format!("({})", pretty(op.potential())));
    }
    parts.join(" + ")
}

fn square_values() -> std::collections::HashMap<crate::symbolic::Symbol, Scalar> {
    bind(&[("Abar", s("ħ^2")), ("B", s("V*ħ^2/m")), ("f", s("-V^2"))])
}

/// Higher-order Galilean analysis: order 3 collapses, order 4 keeps a
/// companion family built on the Schrödinger operator.
pub fn derive_higher_order(order: u32) -> Result<Derivation, SolverError> {
    let rep = DerivationReport::new(&format!("galilean-{order}"));
    match order {
        3 => third_order(rep),
        4 => fourth_order(rep),
        _ => Err(SolverError::UnsupportedOrder {
            pipeline: "galilean",
            order,
        }),
    }
}

/// Square the Schrödinger operator and compare with the covariant
/// fourth-order operator.
pub fn schrodinger_square(potential: Potential) -> Result<SquareComparison, SolverError> {
    let sh = schrodinger_operator();
    let fields: &[&str] = match potential {
        Potential::Constant => &[],
        Potential::Field => &["V"],
    };
    let square = sh.compose(&sh, fields);
    let covariant = laplacian_squared(&s("-ħ^4/(4*m^2)"))
        .add(&time_laplacian(&s("-i*ħ^3/m"), 1))
        .with_term(MultiIndex::from_coords(&[0, 0]), s("ħ^2"))
        .add(&LinearPDE::new().with_laplacian(s("V*ħ^2/m")))
        .with_term(MultiIndex::unit(0), s("2*i*V*ħ"))
        .with_potential(s("-V^2"));
    let mismatch = square.add(&covariant);
    // a zeroth-order remainder can be absorbed into f
    let equivalent = mismatch.terms().next().is_none();
    let verdict = match (potential, equivalent) {
        (_, true) if mismatch.is_zero() => "equivalent: the fourth-order operator is −Ŝ²".to_string(),
        (_, true) => format!("equivalent after absorbing {} into f", mismatch.potential()),
        (_, false) => format!("inequivalent: Ŝ² carries derivative terms {mismatch}"),
    };
    Ok(SquareComparison {
        potential,
        schrodinger: sh,
        square,
        covariant,
        mismatch,
        equivalent,
        verdict,
    })
}

/// `Ŝ²` at `V = 0` evaluated on a plane wave, with `ω` eliminated through
/// the free-particle relation. Zero when every Schrödinger wave solves `Ŝ²Ψ = 0`.
pub fn square_on_free_waves() -> Result<Scalar, SolverError> {
    let sq = schrodinger_square(Potential::Constant)?.square;
    let free = sq.substitute(&bind(&[("V", Scalar::zero())]))?;
    let e = PlaneWave::symbolic().eigenvalue(&free, &Scalar::one());
    Ok(e.substitute(&bind(&[(OMEGA, s("ħ*k^2/(2*m)"))]))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_order_collapses() {
        let der = derive_higher_order(3).unwrap();
        assert!(der.report.reproduced(), "{}", der.report.to_text());
        assert_eq!(der.report.verdict, "collapses to order 2");
        assert!(der.report.dangling_citations().is_empty());
    }

    #[test]
    fn fourth_order_family() {
        let der = derive_higher_order(4).unwrap();
        assert!(der.report.reproduced(), "{}", der.report.to_text());
        assert!(der.report.dangling_citations().is_empty());
        assert_eq!(der.report.final_equation.as_deref(), Some("iħ∂_tΨ = −(ħ²/2m)∇²Ψ + VΨ"));
    }

    #[test]
    fn square_table() {
        let sq = schrodinger_square(Potential::Constant).unwrap().square;
        let c = |coords: &[usize]| sq.coefficient(&MultiIndex::from_coords(coords));
        assert_eq!(c(&[1, 1, 1, 1]), s("ħ^4/(4*m^2)"));
        assert_eq!(c(&[1, 1, 2, 2]), s("ħ^4/(2*m^2)"));
        assert_eq!(c(&[0, 1, 1]), s("i*ħ^3/m"));
        assert_eq!(c(&[0, 0]), s("-ħ^2"));
        assert_eq!(c(&[1, 1]), s("-V*ħ^2/m"));
        assert_eq!(c(&[0]), s("-2*i*V*ħ"));
        assert_eq!(sq.potential(), &s("V^2"));
    }

    #[test]
    fn field_potential_breaks_equivalence() {
        let sq = schrodinger_square(Potential::Field).unwrap();
        assert!(!sq.equivalent);
        assert_eq!(sq.mismatch.coefficient(&MultiIndex::unit(1)), s("-ħ^2*V_1/m"));
        assert_eq!(sq.mismatch.potential(), &s("-ħ^2*(V_11 + V_22 + V_33)/(2*m)"));
        assert!(schrodinger_square(Potential::Constant).unwrap().mismatch.is_zero());
    }

    #[test]
    fn schrodinger_waves_solve_the_square() {
        assert!(square_on_free_waves().unwrap().is_zero());
    }
}

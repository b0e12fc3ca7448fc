use crate::boost::{rotation_constraints, ConstraintSystem, FrameTransform};
use crate::symbolic::{ExpLinearMultiplier, LinearPDE, Scalar, Symbol, BETA};

use super::dispersion::{dispersion_match, DispersionTarget};
use super::pipeline::{bind, d, id_at, id_of, is_imaginary, s, set_of, stage, Derivation, SolverError};
use super::render::{covariant_form, evolution_form, multiplier_form, pretty};
use super::report::{gid, Claim, DerivationReport};
use super::system::{multiplier_ansatz, solve_multiplier, solve_system, symbols};

/// The two classes of Lorentz-covariant second-order equations.
#[derive(Clone, Debug)]
pub struct LorentzDerivation {
    pub klein_gordon: Derivation,
    pub lcse: Derivation,
}

/// `A∂0² + B∇² + C∂0 + f` in `x⁰ = ct`.
fn lorentz_family(rep: &mut DerivationReport) -> Result<LinearPDE, SolverError> {
    let rot = rotation_constraints(2)?;
    rep.record("R", &rot.system);
    let op = rot
        .reduced
        .substitute(&bind(&[("a00", s("A")), ("a11", s("B")), ("b0", s("C"))]))?;
    rep.note(format!("rotation-reduced operator (A = c²Ā, B = B̄, C = cC̄): {op}"));
    Ok(op)
}

/// Shared opening: the mixed term forces `A = −B`.
fn common_start(rep: &mut DerivationReport) -> Result<LinearPDE, SolverError> {
    let op0 = lorentz_family(rep)?;
    let boost = FrameTransform::lorentz(1);
    let (b1, cs1) = stage(rep, "L1", &op0, &boost, &multiplier_ansatz(&[0, 1]))?;
    let mixed = b1.coefficient(&d(&[0, 1]));
    rep.note(format!("D′ = {}", pretty(&mixed)));
    rep.check("D′", &s("-2*γ^2*β*(A + B)"), &mixed);
    let id = id_at("L1", &cs1, &d(&[0, 1])).unwrap_or_default();
    let only = ConstraintSystem::from_exprs(cs1.equation_at(&d(&[0, 1])).map(|c| (c.slot, c.expr.clone())));
    let sol = solve_system(&only, &symbols(&["A"]), &set_of(&["β", "γ"]));
    let a = sol.value("A").cloned().unwrap_or_else(|| s("A"));
    rep.check("A", &s("-B"), &a);
    rep.forced("D′ = 0, so A = −B", vec![id]);
    Ok(op0.substitute(&bind(&[("A", a)]))?)
}

/// Label the three surviving conditions by their slots.
fn three_conditions(rep: &mut DerivationReport, label: &str, cs: &ConstraintSystem) -> Vec<String> {
    let c_id = id_of(label, cs, &s("-2*B*λ0 + C*γ - C"));
    let e_id = id_of(label, cs, &s("2*B*λ1 - C*β*γ"));
    let f_id = id_of(label, cs, &s("-B*λ0^2 + B*λ1^2 + C*γ*(λ0 - β*λ1)"));
    rep.check_flag("C′ = C condition", c_id.is_some());
    rep.check_flag("E′ = 0 condition", e_id.is_some());
    rep.check_flag("F′ = 0 condition", f_id.is_some());
    rep.check_flag("exactly three conditions", cs.len() == 3);
    [c_id, e_id, f_id].into_iter().flatten().collect()
}

fn klein_gordon(op1: &LinearPDE, rep: &mut DerivationReport) -> Result<Derivation, SolverError> {
    let boost = FrameTransform::lorentz(1);
    let (_, cs) = stage(rep, "K1", op1, &boost, &ExpLinearMultiplier::identity())?;
    let sol = solve_system(&cs, &symbols(&["C"]), &set_of(&["β", "γ"]));
    let c = sol.value("C").cloned().unwrap_or_else(|| s("C"));
    let c_id = sol.source("C").map(|id| gid("K1", id)).unwrap_or_default();
    rep.check("C", &Scalar::zero(), &c);
    rep.check_flag("remaining conditions vanish", sol.is_satisfied());
    rep.forced("C = 0", vec![c_id.clone()]);
    rep.theorem(
        "strict-scalar-lorentz",
        "a constant multiplier gives F′ = 0 identically and forces C = 0",
        c.is_zero() && sol.is_satisfied(),
        vec![c_id],
    );
    let op2 = op1.substitute(&bind(&[("C", c.clone())]))?;
    let m = dispersion_match(op1, &DispersionTarget::relativistic(), &symbols(&["C", "f"]), &set_of(&["c", "ħ", "m", "B"]));
    rep.record("KD", &m.equations);
    let ids: Vec<String> = m.equations.equations.iter().map(|e| gid("KD", &e.id)).collect();
    let f = m.solution.value("f").cloned().unwrap_or_else(|| s("f"));
    rep.check("C from dispersion", &Scalar::zero(), m.solution.value("C").unwrap_or(&s("C")));
    rep.check("f", &s("-m^2*c^2*B/ħ^2"), &f);
    rep.ratio(format!("f = {}", pretty(&f)), ids.clone());
    rep.theorem(
        "klein-gordon-implied",
        "with Ψ = Ψ′ the relativistic dispersion relation leaves only the Klein-Gordon equation",
        m.is_satisfied() && c.is_zero(),
        ids,
    );
    rep.multiplier = Some(Claim {
        statement: "g = 1 (any nonzero constant)".into(),
        backed_by: vec![],
    });
    let fin = op2.substitute(&bind(&[("f", f.clone())]))?.scale(&s("-1/B"));
    let expected = LinearPDE::new()
        .with_term(d(&[0, 0]), Scalar::one())
        .with_laplacian(Scalar::int(-1))
        .with_potential(s("m^2*c^2/ħ^2"));
    rep.check_flag("final operator", fin == expected);
    rep.final_equation = Some(covariant_form(&fin));
    rep.verdict = if rep.reproduced() {
        "Klein-Gordon equation recovered".into()
    } else {
        "derivation did not close".into()
    };
    let mut der = Derivation::new(rep.clone());
    der.set("A", &s("-B"));
    der.set("C", &c);
    der.set("f", &f);
    der.operator = Some(fin);
    der.multiplier = Some(ExpLinearMultiplier::identity());
    Ok(der)
}

fn lcse(op1: &LinearPDE, rep: &mut DerivationReport) -> Result<Derivation, SolverError> {
    let boost = FrameTransform::lorentz(1);
    let (_, cs) = stage(rep, "L2", op1, &boost, &multiplier_ansatz(&[0, 1]))?;
    let cites = three_conditions(rep, "L2", &cs);
    let outcome = solve_multiplier(&cs, &symbols(&["λ0", "λ1"]), &set_of(&["B", "β", "γ"]));
    let g = outcome.multiplier().cloned().unwrap_or_else(ExpLinearMultiplier::identity);
    rep.check_flag("F′ = 0 after solving", outcome.solution().is_satisfied());
    rep.check("lambda_0", &s("C*(γ - 1)/(2*B)"), &g.exponent[0]);
    rep.check("lambda_1", &s("C*γ*β/(2*B)"), &g.exponent[1]);
    rep.ratio(format!("λ_0 = {}", pretty(&g.exponent[0])), cites.clone());
    rep.ratio(format!("λ_1 = {}", pretty(&g.exponent[1])), cites.clone());
    let (_, closure) = stage(rep, "L3", op1, &boost, &g)?;
    rep.check_flag("closure", closure.is_empty());

    // Non-relativistic limit of the exponent, in (t, x) with β = v/c.
    let to_t = bind(&[(BETA, s("v/c"))]);
    let lam_t = &g.exponent[0] * &s("c");
    let lam_x = g.exponent[1].clone();
    let beta = Symbol::new(BETA);
    let leading = |e: &Scalar| -> Result<Scalar, SolverError> {
        let series = e.beta_series(2).unwrap_or_else(|| e.clone());
        let lead = series.leading_order_in(&beta).map(|(_, l)| l).unwrap_or(series);
        Ok(lead.substitute(&to_t)?)
    };
    let nr_t = leading(&lam_t)?;
    let nr_x = leading(&lam_x)?;
    rep.note(format!("β ≪ 1: λ_t ≈ {}, λ_x ≈ {}", pretty(&nr_t), pretty(&nr_x)));
    let galilean_t = s("i*m*v^2/(2*ħ)");
    let galilean_x = s("i*m*v/ħ");
    let nr = ConstraintSystem::from_exprs([(None, &nr_x - &galilean_x), (None, &nr_t - &galilean_t)]);
    rep.record("N", &nr);
    let nsol = solve_system(&nr, &symbols(&["C"]), &set_of(&["v", "B", "c", "ħ"]));
    let c = nsol.value("C").cloned().unwrap_or_else(|| s("C"));
    let n_ids: Vec<String> = nr.equations.iter().map(|e| gid("N", &e.id)).collect();
    let ratio = c.checked_div(&s("B"))?;
    rep.check("C/B", &s("2*i*m*c/ħ"), &ratio);
    rep.check_flag("both limits agree", nsol.is_satisfied());
    rep.ratio(format!("C/B = {}", pretty(&ratio)), n_ids.clone());
    rep.theorem(
        "complex-wave-function-lorentz",
        "matching the Galilean multiplier as β → 0 requires an imaginary C/B",
        is_imaginary(&ratio) && nsol.is_satisfied(),
        n_ids.clone(),
    );

    // Physical multiplier.
    let with_c = bind(&[("C", c.clone())]);
    let l0 = g.exponent[0].substitute(&with_c)?;
    let l1 = g.exponent[1].substitute(&with_c)?;
    let gt = &l0 * &s("c");
    let gx = l1.substitute(&to_t)?;
    rep.check("g exponent t", &s("i*(γ - 1)*m*c^2/ħ"), &gt);
    rep.check("g exponent x", &s("i*γ*m*v/ħ"), &gx);
    let series_t = gt.beta_series(2).map(|e| e.substitute(&to_t)).transpose()?;
    rep.check("exponent t to order β²", &galilean_t, series_t.as_ref().unwrap_or(&gt));
    let series_x = l1.beta_series(2).map(|e| e.substitute(&to_t)).transpose()?;
    rep.check("exponent x to order β²", &galilean_x, series_x.as_ref().unwrap_or(&gx));
    rep.multiplier = Some(Claim {
        statement: format!("g = {} (any direction: v x′ → v·r′)", multiplier_form(&gt, &gx, "x")),
        backed_by: cites.iter().chain(&n_ids).cloned().collect(),
    });
    let massless = [&l0, &l1]
        .iter()
        .all(|e| e.substitute(&bind(&[("m", Scalar::zero())])).map(|z| z.is_zero()).unwrap_or(false));
    rep.check_flag("m = 0 gives g = 1", massless);
    rep.note("m = 0: C = 0 and g ≡ 1, the Klein-Gordon assumptions".to_string());

    // Boosted rest-frame plane wave Ψ′ = Ψ0: read ω and k off g in unprimed coordinates.
    let tm = boost.derivative_matrix();
    let unprimed: Vec<Scalar> = (0..2)
        .map(|nu| &(&l0 * &tm[nu][0]) + &(&l1 * &tm[nu][1]))
        .collect();
    let omega = &(&unprimed[0] * &s("c")) * &Scalar::i();
    let k = (&unprimed[1] * &(-Scalar::i())).substitute(&to_t)?;
    rep.check("ħω of boosted rest state", &s("(γ - 1)*m*c^2"), &(&omega * &s("ħ")));
    rep.check("ħk of boosted rest state", &s("γ*m*v"), &(&k * &s("ħ")));
    rep.note(format!("boosted Ψ′ = Ψ0: ħω = {}, ħk = {}", pretty(&(&omega * &s("ħ"))), pretty(&(&k * &s("ħ")))));

    // Potential term, fixed by the same limit: scale so ∇² carries ħ²/2m.
    let scale = s("ħ^2/(2*m)").checked_div(&s("B"))?;
    let time_coeff = (&c * &scale).checked_div(&s("c"))?;
    rep.check("iħ∂t in the limit", &s("i*ħ"), &time_coeff);
    let fsys = ConstraintSystem::from_exprs([(None, &(&s("f") * &scale) + &s("V"))]);
    rep.record("P", &fsys);
    let fsol = solve_system(&fsys, &symbols(&["f"]), &set_of(&["B", "m", "ħ"]));
    let f = fsol.value("f").cloned().unwrap_or_else(|| s("f"));
    rep.check("f", &s("-2*m*V*B/ħ^2"), &f);
    rep.ratio(format!("f = {}", pretty(&f)), fsys.equations.iter().map(|e| gid("P", &e.id)).collect());

    let op = op1.substitute(&bind(&[("C", c.clone()), ("f", f.clone())]))?;
    let fin = op.scale(&s("-1/B"));
    let expected = LinearPDE::new()
        .with_term(d(&[0, 0]), Scalar::one())
        .with_laplacian(Scalar::int(-1))
        .with_term(d(&[0]), s("-2*i*m*c/ħ"))
        .with_potential(s("2*m*V/ħ^2"));
    rep.check_flag("final operator", fin == expected);
    let mut in_t = LinearPDE::new().with_potential(op.potential().clone());
    for (idx, coef) in op.terms() {
        let back = coef.checked_div(&s("c").pow(idx.get(0) as u32))?;
        in_t.add_term(*idx, &back);
    }
    let in_t = in_t.scale(&scale);
    rep.note(format!("in t: {}", evolution_form(&in_t)));
    rep.final_equation = Some(covariant_form(&fin));
    rep.verdict = if rep.reproduced() {
        "Lorentz covariant Schrödinger equation recovered".into()
    } else {
        "derivation did not close".into()
    };
    let mut der = Derivation::new(rep.clone());
    der.set("A", &s("-B"));
    der.set("lambda_0", &g.exponent[0]);
    der.set("lambda_1", &g.exponent[1]);
    der.set("C/B", &ratio);
    der.set("C", &c);
    der.set("f", &f);
    der.set("g_t", &gt);
    der.set("g_x", &gx);
    der.set("omega_boosted", &omega);
    der.set("k_boosted", &k);
    der.operator = Some(fin);
    der.multiplier = Some(ExpLinearMultiplier::with_exponent([l0, l1, Scalar::zero(), Scalar::zero()]));
    Ok(der)
}

/// Lorentz boost of the general second-order equation: both solution classes.
pub fn derive_lorentz() -> Result<LorentzDerivation, SolverError> {
    let mut base = DerivationReport::new("lorentz-2");
    let op1 = common_start(&mut base)?;
    let mut kg = base.clone();
    kg.pipeline = "lorentz-2/klein-gordon".into();
    let mut lc = base;
    lc.pipeline = "lorentz-2/lcse".into();
    Ok(LorentzDerivation {
        klein_gordon: klein_gordon(&op1, &mut kg)?,
        lcse: lcse(&op1, &mut lc)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_branches() {
        let l = derive_lorentz().unwrap();
        for der in [&l.klein_gordon, &l.lcse] {
            assert!(der.report.reproduced(), "{}", der.report.to_text());
            assert!(der.report.dangling_citations().is_empty());
        }
        assert_eq!(
            l.lcse.report.final_equation.as_deref(),
            Some("∂_μ∂^μΨ − i(2cm/ħ)∂_0Ψ + (2Vm/ħ²)Ψ = 0")
        );
    }
}

use std::collections::{BTreeSet, HashMap};

use crate::boost::{normalize_equation, ConstraintSystem};
use crate::symbolic::{ExpLinearMultiplier, Monomial, Poly, Scalar, Symbol};

/// One solved unknown and the equation it was read off.
#[derive(Clone, Debug, PartialEq)]
pub struct Binding {
    pub symbol: Symbol,
    pub value: Scalar,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub bindings: Vec<Binding>,
    /// Unknowns left unconstrained.
    pub free: Vec<Symbol>,
    /// Equations not used for elimination, after substitution; empty when satisfied.
    pub residual: Vec<(String, Scalar)>,
}

impl Solution {
    pub fn is_satisfied(&self) -> bool {
        self.residual.is_empty()
    }

    pub fn value(&self, name: &str) -> Option<&Scalar> {
        self.bindings.iter().find(|b| b.symbol.name() == name).map(|b| &b.value)
    }

    pub fn source(&self, name: &str) -> Option<&str> {
        self.bindings.iter().find(|b| b.symbol.name() == name).map(|b| b.source.as_str())
    }

    pub fn map(&self) -> HashMap<Symbol, Scalar> {
        self.bindings.iter().map(|b| (b.symbol.clone(), b.value.clone())).collect()
    }
}

/// The numerator with any common factor of `nonzero` symbols cancelled.
fn stripped(e: &Scalar, nonzero: &BTreeSet<Symbol>) -> Poly {
    let num = e.numerator();
    let content = num.monomial_content();
    let safe: Vec<(Symbol, u32)> = content
        .factors()
        .iter()
        .filter(|(s, _)| nonzero.contains(s))
        .cloned()
        .collect();
    num.div_monomial(&Monomial::from_pairs(safe)).unwrap_or_else(|| num.clone())
}

fn linear_in(e: &Scalar, u: &Symbol, nonzero: &BTreeSet<Symbol>) -> Option<Scalar> {
    let num = stripped(e, nonzero);
    if num.degree_in(u) != 1 {
        return None;
    }
    let cs = num.coefficients_in(u);
    let a = Scalar::from_poly(cs[1].clone());
    if !a.is_nonzero_under(nonzero) {
        return None;
    }
    let b = Scalar::from_poly(cs[0].clone());
    (-b).checked_div(&a).ok()
}

/// Eliminate unknowns in priority order.
///
/// At each step the first unknown (in `unknowns` order) that appears
/// linearly in some equation, with a coefficient that is a monomial in
/// `nonzero` symbols, is solved for and substituted everywhere, including
/// earlier solutions. Elimination stops when no such pair exists; the
/// remaining equations are returned as the residual.
pub fn solve_system(cs: &ConstraintSystem, unknowns: &[Symbol], nonzero: &BTreeSet<Symbol>) -> Solution {
    let mut eqs: Vec<(String, Scalar)> = cs.equations.iter().map(|c| (c.id.clone(), c.expr.clone())).collect();
    let mut bindings: Vec<Binding> = Vec::new();
    loop {
        let pick = unknowns
            .iter()
            .filter(|u| !bindings.iter().any(|b| &b.symbol == *u))
            .find_map(|u| {
                eqs.iter()
                    .enumerate()
                    .find_map(|(i, (_, e))| linear_in(e, u, nonzero).map(|v| (i, u.clone(), v)))
            });
        let Some((i, u, value)) = pick else { break };
        let (id, _) = eqs.remove(i);
        let sub: HashMap<Symbol, Scalar> = [(u.clone(), value.clone())].into_iter().collect();
        for b in bindings.iter_mut() {
            b.value = b.value.substitute(&sub).expect("nonzero denominators by construction");
        }
        eqs = eqs
            .into_iter()
            .map(|(id, e)| (id, normalize_equation(&e.substitute(&sub).expect("nonzero denominators by construction"))))
            .filter(|(_, e)| !e.is_zero())
            .collect();
        bindings.push(Binding {
            symbol: u,
            value,
            source: id,
        });
    }
    let free = unknowns
        .iter()
        .filter(|u| !bindings.iter().any(|b| &b.symbol == *u))
        .cloned()
        .collect();
    Solution {
        bindings,
        free,
        residual: eqs,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MultiplierOutcome {
    Solved {
        multiplier: ExpLinearMultiplier,
        solution: Solution,
    },
    Unsatisfiable {
        solution: Solution,
    },
}

impl MultiplierOutcome {
    pub fn multiplier(&self) -> Option<&ExpLinearMultiplier> {
        match self {
            MultiplierOutcome::Solved { multiplier, .. } => Some(multiplier),
            MultiplierOutcome::Unsatisfiable { .. } => None,
        }
    }

    pub fn solution(&self) -> &Solution {
        match self {
            MultiplierOutcome::Solved { solution, .. } | MultiplierOutcome::Unsatisfiable { solution } => solution,
        }
    }
}

/// Exponent unknowns `λ0..λ3` used by the pipelines.
pub fn lambda_symbols() -> [Symbol; 4] {
    std::array::from_fn(|mu| Symbol::new(&format!("λ{mu}")))
}

/// Multiplier ansatz `exp(Σ λ_μ x^μ)` over the listed coordinates.
pub fn multiplier_ansatz(coords: &[usize]) -> ExpLinearMultiplier {
    let l = lambda_symbols();
    let exponent = std::array::from_fn(|mu| {
        if coords.contains(&mu) {
            Scalar::from_symbol(l[mu].clone())
        } else {
            Scalar::zero()
        }
    });
    ExpLinearMultiplier::with_exponent(exponent)
}

/// Solve a constraint system for the exponent of an exponential-of-linear
/// multiplier. The prefactor is fixed to one; unknowns left free stay
/// symbolic in the returned exponent.
pub fn solve_multiplier(cs: &ConstraintSystem, unknowns: &[Symbol], nonzero: &BTreeSet<Symbol>) -> MultiplierOutcome {
    let solution = solve_system(cs, unknowns, nonzero);
    if !solution.is_satisfied() {
        return MultiplierOutcome::Unsatisfiable { solution };
    }
    let l = lambda_symbols();
    let exponent = std::array::from_fn(|mu| match solution.value(l[mu].name()) {
        Some(v) => v.clone(),
        None if unknowns.contains(&l[mu]) => Scalar::from_symbol(l[mu].clone()),
        None => Scalar::zero(),
    });
    MultiplierOutcome::Solved {
        multiplier: ExpLinearMultiplier::with_exponent(exponent),
        solution,
    }
}

pub fn symbols(names: &[&str]) -> Vec<Symbol> {
    names.iter().map(|n| Symbol::new(n)).collect()
}

pub fn symbol_set(names: &[&str]) -> BTreeSet<Symbol> {
    names.iter().map(|n| Symbol::new(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boost::{boost_operator, covariance_constraints, FrameTransform};
    use crate::symbolic::{parse_scalar, LinearPDE, MultiIndex};

    fn s(x: &str) -> Scalar {
        parse_scalar(x).unwrap()
    }

    fn galilean_system() -> ConstraintSystem {
        let op = LinearPDE::new()
            .with_laplacian(s("Bbar"))
            .with_term(MultiIndex::unit(0), s("Cbar"))
            .with_potential(s("f"));
        let t = boost_operator(&op, &FrameTransform::galilean(s("v"), 1), &multiplier_ansatz(&[0, 1]));
        covariance_constraints(&op, &t).unwrap()
    }

    #[test]
    fn galilean_multiplier() {
        let out = solve_multiplier(&galilean_system(), &symbols(&["λ1", "λ0"]), &symbol_set(&["v", "Bbar", "Cbar"]));
        let g = out.multiplier().expect("solvable");
        assert_eq!(g.exponent[0], s("Cbar*v^2/(4*Bbar)"));
        assert_eq!(g.exponent[1], s("Cbar*v/(2*Bbar)"));
        assert!(g.prefactor.is_one());
    }

    #[test]
    fn priority_order_does_not_change_answer() {
        let a = solve_system(&galilean_system(), &symbols(&["λ0", "λ1"]), &symbol_set(&["v", "Bbar", "Cbar"]));
        assert!(a.is_satisfied());
        assert_eq!(a.value("λ0"), Some(&s("Cbar*v^2/(4*Bbar)")));
    }

    #[test]
    fn unsatisfiable_is_reported() {
        let cs = ConstraintSystem::from_exprs([(None, s("x - 1")), (None, s("x - 2"))]);
        let out = solve_multiplier(&cs, &symbols(&["x"]), &BTreeSet::new());
        assert!(matches!(out, MultiplierOutcome::Unsatisfiable { .. }));
        assert_eq!(out.solution().residual.len(), 1);
    }

    #[test]
    fn underdetermined_leaves_free_parameters() {
        let cs = ConstraintSystem::from_exprs([(None, s("λ0 - 2*λ1"))]);
        let out = solve_multiplier(&cs, &symbols(&["λ0", "λ1"]), &BTreeSet::new());
        let g = out.multiplier().unwrap();
        assert_eq!(g.exponent[0], s("2*λ1"));
        assert_eq!(out.solution().free, symbols(&["λ1"]));
    }

    #[test]
    fn non_monomial_coefficients_are_not_divided_by() {
        // (γ − 1)·C = 0 does not force C = 0 without knowing γ ≠ 1.
        let cs = ConstraintSystem::from_exprs([(None, s("(γ - 1)*C"))]);
        let out = solve_system(&cs, &symbols(&["C"]), &symbol_set(&["γ"]));
        assert!(out.bindings.is_empty());
        assert_eq!(out.residual.len(), 1);
    }
}

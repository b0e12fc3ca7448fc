use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::boost::{
    boost_operator, covariance_constraints, BoostError, ConstraintSystem, FrameTransform,
};
use crate::symbolic::{parse_scalar, ExpLinearMultiplier, LinearPDE, MultiIndex, Scalar, Symbol, SymbolicError};

use super::report::{gid, DerivationReport};
use super::system::{lambda_symbols, solve_system};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolverError {
    #[error(transparent)]
    Boost(#[from] BoostError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error("no {pipeline} derivation for order {order}")]
    UnsupportedOrder { pipeline: &'static str, order: u32 },
}

/// A finished derivation: the report plus the exact objects behind it.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub report: DerivationReport,
    /// Named closed forms (`"Cbar/Bbar"`, `"lambda_t"`, ...).
    pub values: BTreeMap<String, Scalar>,
    pub operator: Option<LinearPDE>,
    pub multiplier: Option<ExpLinearMultiplier>,
}

impl Derivation {
    pub fn new(report: DerivationReport) -> Self {
        Derivation {
            report,
            values: BTreeMap::new(),
            operator: None,
            multiplier: None,
        }
    }

    pub fn value(&self, name: &str) -> Option<&Scalar> {
        self.values.get(name)
    }

    pub(crate) fn set(&mut self, name: &str, v: &Scalar) {
        self.values.insert(name.to_string(), v.clone());
    }
}

pub(crate) fn s(text: &str) -> Scalar {
    parse_scalar(text).expect("well-formed literal")
}

pub(crate) fn d(coords: &[usize]) -> MultiIndex {
    MultiIndex::from_coords(coords)
}

pub(crate) fn bind(pairs: &[(&str, Scalar)]) -> HashMap<Symbol, Scalar> {
    pairs.iter().map(|(n, v)| (Symbol::new(n), v.clone())).collect()
}

pub(crate) fn set_of(names: &[&str]) -> BTreeSet<Symbol> {
    names.iter().map(|n| Symbol::new(n)).collect()
}

/// Boost, collect, and record the covariance constraints under `stage`.
pub(crate) fn stage(
    rep: &mut DerivationReport,
    label: &str,
    op: &LinearPDE,
    t: &FrameTransform,
    g: &ExpLinearMultiplier,
) -> Result<(LinearPDE, ConstraintSystem), SolverError> {
    let boosted = boost_operator(op, t, g);
    let cs = covariance_constraints(op, &boosted)?;
    rep.note(format!("[{label}] {t}; multiplier exponent ({})", exponent_text(g)));
    rep.record(label, &cs);
    Ok((boosted, cs))
}

pub(crate) fn exponent_text(g: &ExpLinearMultiplier) -> String {
    g.exponent.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
}

/// Global id of the equation at `slot`, if the stage produced one.
pub(crate) fn id_at(label: &str, cs: &ConstraintSystem, slot: &MultiIndex) -> Option<String> {
    cs.equation_at(slot).map(|c| gid(label, &c.id))
}

pub(crate) fn id_of(label: &str, cs: &ConstraintSystem, e: &Scalar) -> Option<String> {
    cs.find_equivalent(e).map(|id| gid(label, id))
}

fn mentions_lambda(e: &Scalar) -> bool {
    lambda_symbols().iter().any(|l| e.contains(l))
}

/// Repeatedly boost and pick off coefficients forced to zero by equations
/// that do not involve the multiplier. Returns the reduced operator and the
/// forced bindings with the ids that forced them.
pub(crate) fn eliminate_forced(
    rep: &mut DerivationReport,
    prefix: &str,
    mut op: LinearPDE,
    t: &FrameTransform,
    g: &ExpLinearMultiplier,
    priority: &[Symbol],
    nonzero: &BTreeSet<Symbol>,
) -> Result<(LinearPDE, Vec<(Symbol, Scalar, String)>), SolverError> {
    let mut forced = Vec::new();
    for round in 1.. {
        let label = format!("{prefix}{round}");
        let (_, cs) = stage(rep, &label, &op, t, g)?;
        let lambda_free = ConstraintSystem::from_exprs(
            cs.equations
                .iter()
                .filter(|c| !mentions_lambda(&c.expr))
                .map(|c| (c.slot, c.expr.clone())),
        );
        let sol = solve_system(&lambda_free, priority, nonzero);
        let Some(b) = sol.bindings.first() else { break };
        let id = id_of(&label, &cs, &lambda_free.get(&b.source).expect("source exists").expr)
            .expect("equation recorded");
        rep.note(format!("  {} = {}  from {id}", b.symbol, b.value));
        op = op.substitute(&[(b.symbol.clone(), b.value.clone())].into_iter().collect())?;
        forced.push((b.symbol.clone(), b.value.clone(), id));
    }
    Ok((op, forced))
}

/// True when every numerator coefficient is imaginary and every denominator
/// coefficient real, i.e. the value is `i` times a real expression for real symbols.
pub fn is_imaginary(e: &Scalar) -> bool {
    !e.is_zero()
        && e.numerator().terms().all(|(_, c)| c.is_pure_imaginary())
        && e.denominator().terms().all(|(_, c)| c.is_real())
}

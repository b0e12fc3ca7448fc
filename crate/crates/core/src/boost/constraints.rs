use std::collections::BTreeSet;
use std::fmt;

use crate::symbolic::{parse_scalar, LinearPDE, MultiIndex, Scalar, SymbolicError};

use super::BoostError;

/// One equation `expr = 0`, tagged with the operator slot it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub id: String,
    pub slot: Option<MultiIndex>,
    pub expr: Scalar,
}

/// Equations that must all vanish for the transformed operator to be a
/// nonzero multiple of the original one.
///
/// The overall factor is eliminated against the reference slot, so
/// `proportionality` records its value rather than carrying an unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintSystem {
    pub equations: Vec<Constraint>,
    pub reference: Option<MultiIndex>,
    pub proportionality: Option<Scalar>,
}

/// Numerator made monic, so equations differing by a nonzero constant coincide.
pub fn normalize_equation(e: &Scalar) -> Scalar {
    if e.is_zero() {
        return Scalar::zero();
    }
    Scalar::from_poly(e.numerator().monic())
}

impl ConstraintSystem {
    pub fn empty() -> Self {
        ConstraintSystem {
            equations: Vec::new(),
            reference: None,
            proportionality: None,
        }
    }

    /// Build from raw expressions: zeros dropped, duplicates merged, ids assigned.
    pub fn from_exprs<I>(items: I) -> Self
    where
        I: IntoIterator<Item = (Option<MultiIndex>, Scalar)>,
    {
        let mut cs = ConstraintSystem::empty();
        for (slot, e) in items {
            cs.push(slot, &e);
        }
        cs
    }

    /// Append an equation unless it is trivial or already present. Returns its id.
    pub fn push(&mut self, slot: Option<MultiIndex>, e: &Scalar) -> Option<String> {
        let n = normalize_equation(e);
        if n.is_zero() {
            return None;
        }
        if let Some(c) = self.equations.iter().find(|c| c.expr == n) {
            return Some(c.id.clone());
        }
        let id = format!("K{}", self.equations.len() + 1);
        self.equations.push(Constraint {
            id: id.clone(),
            slot,
            expr: n,
        });
        Some(id)
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn exprs(&self) -> impl Iterator<Item = &Scalar> {
        self.equations.iter().map(|c| &c.expr)
    }

    /// Id of an equation equal to `e` up to a nonzero constant factor.
    pub fn find_equivalent(&self, e: &Scalar) -> Option<&str> {
        let n = normalize_equation(e);
        self.equations.iter().find(|c| c.expr == n).map(|c| c.id.as_str())
    }

    pub fn contains_equivalent(&self, e: &Scalar) -> bool {
        self.find_equivalent(e).is_some()
    }

    pub fn get(&self, id: &str) -> Option<&Constraint> {
        self.equations.iter().find(|c| c.id == id)
    }

    pub fn equation_at(&self, slot: &MultiIndex) -> Option<&Constraint> {
        self.equations.iter().find(|c| c.slot.as_ref() == Some(slot))
    }

    /// Apply bindings to every equation and renormalize; ids are reassigned.
    pub fn substitute(
        &self,
        bindings: &std::collections::HashMap<crate::symbolic::Symbol, Scalar>,
    ) -> Result<ConstraintSystem, SymbolicError> {
        let mut out = ConstraintSystem::empty();
        out.reference = self.reference;
        out.proportionality = match &self.proportionality {
            Some(p) => Some(p.substitute(bindings)?),
            None => None,
        };
        for c in &self.equations {
            out.push(c.slot, &c.expr.substitute(bindings)?);
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        match (&self.reference, &self.proportionality) {
            (Some(r), Some(p)) => s.push_str(&format!("# reference {r} ratio {p}\n")),
            _ => s.push_str("# reference none\n"),
        }
        for c in &self.equations {
            let slot = c.slot.map(|m| m.to_string()).unwrap_or_else(|| "-".into());
            s.push_str(&format!("{} {} : {} = 0\n", c.id, slot, c.expr));
        }
        s
    }

    /// Read the form written by [`to_text`](Self::to_text).
    pub fn from_text(text: &str) -> Result<ConstraintSystem, SymbolicError> {
        let mut cs = ConstraintSystem::empty();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            let bad = |msg: &str| SymbolicError::Parse {
                pos: n + 1,
                msg: format!("line {}: {msg}", n + 1),
            };
            if let Some(rest) = line.strip_prefix("# reference ") {
                if rest.trim() != "none" {
                    let (r, p) = rest.split_once(" ratio ").ok_or_else(|| bad("expected 'ratio'"))?;
                    cs.reference = Some(parse_slot(r.trim()).ok_or_else(|| bad("bad slot"))?);
                    cs.proportionality = Some(parse_scalar(p)?);
                }
                continue;
            }
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (head, body) = line.split_once(" : ").ok_or_else(|| bad("expected ' : '"))?;
            let (id, slot) = head.trim().split_once(' ').ok_or_else(|| bad("expected id and slot"))?;
            let slot = match slot.trim() {
                "-" => None,
                s => Some(parse_slot(s).ok_or_else(|| bad("bad slot"))?),
            };
            let expr = body
                .trim()
                .strip_suffix("= 0")
                .ok_or_else(|| bad("expected '= 0'"))?;
            cs.equations.push(Constraint {
                id: id.to_string(),
                slot,
                expr: normalize_equation(&parse_scalar(expr)?),
            });
        }
        Ok(cs)
    }
}

fn parse_slot(s: &str) -> Option<MultiIndex> {
    let inner = s.strip_prefix("d[")?.strip_suffix(']')?;
    let v: Vec<u8> = inner.split(',').map(|p| p.trim().parse().ok()).collect::<Option<_>>()?;
    (v.len() == 4).then(|| MultiIndex([v[0], v[1], v[2], v[3]]))
}

impl fmt::Display for ConstraintSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Equations for `transformed = λ·original` with `λ ≠ 0`.
///
/// `λ` is fixed by the first slot (canonical order) that is nonzero in both
/// operators; every other slot then contributes `t − λ·o = 0`.
pub fn covariance_constraints(
    original: &LinearPDE,
    transformed: &LinearPDE,
) -> Result<ConstraintSystem, BoostError> {
    if transformed.is_zero() {
        return Err(BoostError::ZeroOperator);
    }
    let mut slots: BTreeSet<MultiIndex> = original.slots().into_iter().map(|(k, _)| k).collect();
    slots.extend(transformed.slots().into_iter().map(|(k, _)| k));

    let reference = original
        .slots()
        .into_iter()
        .find(|(k, _)| !transformed.coefficient(k).is_zero())
        .map(|(k, o)| (k, transformed.coefficient(&k).checked_div(&o).expect("nonzero original slot")));

    let mut cs = ConstraintSystem::empty();
    if let Some((r, lambda)) = &reference {
        cs.reference = Some(*r);
        cs.proportionality = Some(lambda.clone());
    }
    for k in slots {
        if reference.as_ref().map(|(r, _)| *r == k).unwrap_or(false) {
            continue;
        }
        let t = transformed.coefficient(&k);
        let o = original.coefficient(&k);
        let e = match &reference {
            Some((_, lambda)) => &t - &(lambda * &o),
            None if t.is_zero() => o,
            None => t,
        };
        cs.push(Some(k), &e);
    }
    Ok(cs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boost::{boost_operator, FrameTransform};
    use crate::symbolic::ExpLinearMultiplier;

    fn s(x: &str) -> Scalar {
        parse_scalar(x).unwrap()
    }

    fn d(c: &[usize]) -> MultiIndex {
        MultiIndex::from_coords(c)
    }

    fn schrodinger_family() -> LinearPDE {
        LinearPDE::new()
            .with_laplacian(s("Bbar"))
            .with_term(d(&[0]), s("Cbar"))
            .with_potential(s("f"))
    }

    #[test]
    fn same_operator_gives_empty_system() {
        let op = schrodinger_family();
        let cs = covariance_constraints(&op, &op).unwrap();
        assert!(cs.is_empty());
        assert_eq!(cs.proportionality, Some(Scalar::one()));
    }

    #[test]
    fn galilean_brackets() {
        let op = schrodinger_family();
        let g = ExpLinearMultiplier::with_exponent([s("λ0"), s("λ1"), Scalar::zero(), Scalar::zero()]);
        let t = boost_operator(&op, &FrameTransform::galilean(s("v"), 1), &g);
        let cs = covariance_constraints(&op, &t).unwrap();
        assert!(cs.contains_equivalent(&s("2*Bbar*λ1 - Cbar*v")));
        assert!(cs.contains_equivalent(&s("Bbar*λ1^2 + Cbar*λ0 - Cbar*v*λ1")));
        assert_eq!(cs.len(), 2);
    }

    #[test]
    fn lorentz_three_conditions() {
        let op = LinearPDE::new()
            .with_term(d(&[0, 0]), s("-B"))
            .with_laplacian(s("B"))
            .with_term(d(&[0]), s("C"))
            .with_potential(s("f"));
        let g = ExpLinearMultiplier::with_exponent([s("λ0"), s("λ1"), Scalar::zero(), Scalar::zero()]);
        let t = boost_operator(&op, &FrameTransform::lorentz(1), &g);
        let cs = covariance_constraints(&op, &t).unwrap();
        assert_eq!(cs.len(), 3);
        assert!(cs.contains_equivalent(&s("-2*B*λ0 + C*γ - C")));
        assert!(cs.contains_equivalent(&s("2*B*λ1 - C*β*γ")));
        assert!(cs.contains_equivalent(&s("-B*λ0^2 + B*λ1^2 + C*γ*(λ0 - β*λ1)")));
    }

    #[test]
    fn zero_transform_is_rejected() {
        let op = schrodinger_family();
        assert!(matches!(
            covariance_constraints(&op, &LinearPDE::new()),
            Err(BoostError::ZeroOperator)
        ));
    }

    #[test]
    fn overall_factor_is_irrelevant() {
        let op = schrodinger_family();
        let scaled = op.scale(&s("7*q"));
        let cs = covariance_constraints(&op, &scaled).unwrap();
        assert!(cs.is_empty());
        assert_eq!(cs.proportionality, Some(s("7*q")));
    }

    #[test]
    fn text_roundtrip() {
        let op = schrodinger_family();
        let g = ExpLinearMultiplier::with_exponent([s("λ0"), s("λ1"), Scalar::zero(), Scalar::zero()]);
        let t = boost_operator(&op, &FrameTransform::galilean(s("v"), 1), &g);
        let cs = covariance_constraints(&op, &t).unwrap();
        let back = ConstraintSystem::from_text(&cs.to_text()).unwrap();
        assert_eq!(back, cs);
    }
}

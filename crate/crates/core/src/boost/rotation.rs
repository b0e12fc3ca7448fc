use std::collections::{BTreeMap, HashMap};

use crate::symbolic::{Coeff, ExpLinearMultiplier, LinearPDE, MultiIndex, Scalar, Symbol};

use super::constraints::{covariance_constraints, ConstraintSystem};
use super::transform::{boost_operator, FrameTransform};
use super::BoostError;

/// Outcome of imposing covariance under a finite set of rotations.
#[derive(Clone, Debug)]
pub struct RotationConstraints {
    pub order: u32,
    /// Every equation from every sampled rotation.
    pub system: ConstraintSystem,
    /// Dependent symbols expressed through the free ones.
    pub solution: Vec<(Symbol, Scalar)>,
    pub free: Vec<Symbol>,
    pub rank: usize,
    /// The generic operator after the solution is imposed.
    pub reduced: LinearPDE,
}

impl RotationConstraints {
    pub fn value_of(&self, name: &str) -> Option<&Scalar> {
        self.solution.iter().find(|(s, _)| s.name() == name).map(|(_, v)| v)
    }

    pub fn relations(&self) -> Vec<String> {
        self.solution.iter().map(|(s, v)| format!("{s} = {v}")).collect()
    }
}

/// `π` and `π/2` about each axis, then `π/4` about x³.
pub fn standard_rotations() -> Vec<FrameTransform> {
    let mut v = Vec::new();
    for axis in 1..4 {
        v.push(FrameTransform::rotation(axis, 4));
    }
    for axis in 1..4 {
        v.push(FrameTransform::rotation(axis, 2));
    }
    v.push(FrameTransform::rotation(3, 1));
    v
}

fn index_name(prefix: &str, idx: &MultiIndex) -> String {
    let digits: String = idx.coords().iter().map(|c| char::from(b'0' + *c as u8)).collect();
    format!("{prefix}{digits}")
}

/// Generic operator of the given order with one symbol per coefficient.
///
/// At order 2 the tensor `a^{μν}` is kept unsymmetrized (`a01` and `a10`
/// both appear) together with `b^μ` and `f`; at orders 3 and 4 only the
/// top-order part is built, with one symbol per sorted index (`a0011`).
pub fn generic_operator(order: u32) -> (LinearPDE, Vec<Symbol>) {
    let mut op = LinearPDE::new();
    let mut syms = Vec::new();
    if order == 2 {
        for mu in 0..4 {
            for nu in 0..4 {
                let name = format!("a{mu}{nu}");
                op.add_term(MultiIndex::from_coords(&[mu, nu]), &Scalar::sym(&name));
                syms.push(Symbol::new(&name));
            }
        }
        for mu in 0..4 {
            let name = format!("b{mu}");
            op.add_term(MultiIndex::unit(mu), &Scalar::sym(&name));
            syms.push(Symbol::new(&name));
        }
        op.add_term(MultiIndex::ZERO, &Scalar::sym("f"));
        syms.push(Symbol::new("f"));
    } else {
        for idx in MultiIndex::all_of_order(order) {
            let name = index_name("a", &idx);
            op.add_term(idx, &Scalar::sym(&name));
            syms.push(Symbol::new(&name));
        }
    }
    (op, syms)
}

type Row = BTreeMap<Symbol, Coeff>;

fn linear_row(e: &Scalar) -> Result<Row, BoostError> {
    let den = e.denominator().as_constant().ok_or(BoostError::NonLinear)?;
    let inv = den.inv().ok_or(BoostError::NonLinear)?;
    let mut row = Row::new();
    for (m, c) in e.numerator().terms() {
        match m.factors() {
            [(s, 1)] => {
                row.insert(s.clone(), c * &inv);
            }
            _ => return Err(BoostError::NonLinear),
        }
    }
    Ok(row)
}

/// Reduced row echelon form. Columns earlier in `columns` are preferred as pivots.
pub(crate) fn rref(mut rows: Vec<Row>, columns: &[Symbol]) -> Vec<(Symbol, Row)> {
    let mut pivots: Vec<(Symbol, Row)> = Vec::new();
    for col in columns {
        let Some(pos) = rows.iter().position(|r| r.get(col).map(|c| !c.is_zero()).unwrap_or(false)) else {
            continue;
        };
        let mut row = rows.swap_remove(pos);
        let inv = row[col].inv().expect("nonzero pivot");
        for c in row.values_mut() {
            *c = &*c * &inv;
        }
        let eliminate = |r: &mut Row| {
            if let Some(f) = r.get(col).cloned() {
                for (s, c) in &row {
                    let e = r.entry(s.clone()).or_insert_with(Coeff::zero);
                    *e = &*e - &(&f * c);
                }
                r.retain(|_, c| !c.is_zero());
            }
        };
        for r in rows.iter_mut() {
            eliminate(r);
        }
        for (_, r) in pivots.iter_mut() {
            eliminate(r);
        }
        rows.retain(|r| !r.is_empty());
        pivots.push((col.clone(), row));
    }
    pivots
}

/// Covariance constraints over the standard rotation set.
pub fn rotation_constraints(order: u32) -> Result<RotationConstraints, BoostError> {
    rotation_constraints_with(order, &standard_rotations())
}

/// As [`rotation_constraints`] with an explicit set of rotations.
pub fn rotation_constraints_with(
    order: u32,
    rotations: &[FrameTransform],
) -> Result<RotationConstraints, BoostError> {
    if !(2..=4).contains(&order) {
        return Err(BoostError::UnsupportedOrder(order));
    }
    let (op, syms) = generic_operator(order);
    let g = ExpLinearMultiplier::identity();
    let mut system = ConstraintSystem::empty();
    for r in rotations {
        let cs = covariance_constraints(&op, &boost_operator(&op, r, &g))?;
        if system.reference.is_none() {
            system.reference = cs.reference;
            system.proportionality = cs.proportionality.clone();
        }
        for c in cs.equations {
            system.push(c.slot, &c.expr);
        }
    }
    let rows = system.exprs().map(linear_row).collect::<Result<Vec<_>, _>>()?;
    // Later symbols become pivots, so the earliest of each family stays free.
    let columns: Vec<Symbol> = syms.iter().rev().cloned().collect();
    let pivots = rref(rows, &columns);

    let mut solution = Vec::new();
    let mut bindings = HashMap::new();
    for (p, row) in &pivots {
        let v = row
            .iter()
            .filter(|(s, _)| *s != p)
            .fold(Scalar::zero(), |acc, (s, c)| &acc - &(&Scalar::from_coeff(c.clone()) * &Scalar::from_symbol(s.clone())));
        bindings.insert(p.clone(), v.clone());
        solution.push((p.clone(), v));
    }
    let pos = |s: &Symbol| syms.iter().position(|x| x == s).unwrap_or(usize::MAX);
    solution.sort_by_key(|(s, _)| pos(s));
    let free = syms.iter().filter(|s| !bindings.contains_key(*s)).cloned().collect();
    let reduced = op.substitute(&bindings).expect("linear substitution");
    Ok(RotationConstraints {
        order,
        system,
        rank: pivots.len(),
        solution,
        free,
        reduced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse_scalar;

    fn s(x: &str) -> Scalar {
        parse_scalar(x).unwrap()
    }

    #[test]
    fn second_order() {
        let rc = rotation_constraints(2).unwrap();
        assert_eq!(rc.rank, 11);
        for j in 1..4 {
            assert_eq!(rc.value_of(&format!("b{j}")), Some(&Scalar::zero()));
            assert_eq!(rc.value_of(&format!("a{j}0")), Some(&s(&format!("-a0{j}"))));
        }
        assert_eq!(rc.value_of("a22"), Some(&s("a11")));
        assert_eq!(rc.value_of("a33"), Some(&s("a11")));
        assert_eq!(rc.value_of("a21"), Some(&s("-a12")));
        let expected = LinearPDE::new()
            .with_term(MultiIndex::from_coords(&[0, 0]), s("a00"))
            .with_laplacian(s("a11"))
            .with_term(MultiIndex::unit(0), s("b0"))
            .with_potential(s("f"));
        assert_eq!(rc.reduced, expected);
    }

    #[test]
    fn third_order_spatial_part_vanishes() {
        let rc = rotation_constraints(3).unwrap();
        for idx in MultiIndex::all_of_order(3).iter().filter(|i| i.is_spatial()) {
            assert_eq!(rc.reduced.coefficient(idx), Scalar::zero(), "{idx}");
        }
        assert_eq!(rc.value_of("a022"), Some(&s("a011")));
        assert_eq!(rc.value_of("a001"), Some(&Scalar::zero()));
        assert!(rc.free.iter().any(|f| f.name() == "a000"));
    }

    #[test]
    fn fourth_order_is_square_of_laplacian() {
        let rc = rotation_constraints(4).unwrap();
        assert_eq!(rc.value_of("a2222"), Some(&s("a1111")));
        assert_eq!(rc.value_of("a3333"), Some(&s("a1111")));
        for n in ["a1122", "a1133", "a2233"] {
            assert_eq!(rc.value_of(n), Some(&s("2*a1111")), "{n}");
        }
        assert_eq!(rc.value_of("a1112"), Some(&Scalar::zero()));
        let lap = LinearPDE::new().with_laplacian(Scalar::one());
        let mut spatial = LinearPDE::new();
        for (k, c) in rc.reduced.terms().filter(|(k, _)| k.is_spatial()) {
            spatial.add_term(*k, c);
        }
        let mut bilap = LinearPDE::new();
        for (a, ca) in lap.terms() {
            for (b, cb) in lap.terms() {
                bilap.add_term(a.add(b), &(ca * cb));
            }
        }
        assert_eq!(spatial, bilap.scale(&s("a1111")));
    }

    #[test]
    fn extra_rotations_do_not_change_solution() {
        for order in 2..=4 {
            let base = rotation_constraints(order).unwrap();
            let mut more = standard_rotations();
            more.push(FrameTransform::rotation(1, 1));
            more.push(FrameTransform::rotation(2, 1));
            let ext = rotation_constraints_with(order, &more).unwrap();
            assert_eq!(base.rank, ext.rank);
            assert_eq!(base.reduced, ext.reduced);
        }
    }

    #[test]
    fn rejects_bad_order() {
        assert!(matches!(rotation_constraints(5), Err(BoostError::UnsupportedOrder(5))));
    }
}

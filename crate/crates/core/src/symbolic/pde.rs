use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::deriv::{MultiIndex, MAX_ORDER};
use super::parse::parse_scalar;
use super::scalar::Scalar;
use super::symbol::Symbol;
use super::SymbolicError;

/// Linear differential operator `Σ_α c_α ∂^α + f` up to fourth order.
///
/// `potential` holds the zeroth-order slot `f`; it may be zero, a constant
/// such as `V`, or an opaque strict-scalar symbol such as `f`. Terms never
/// store a zero coefficient or the zero multi-index.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LinearPDE {
    terms: BTreeMap<MultiIndex, Scalar>,
    potential: Scalar,
}

impl LinearPDE {
    pub fn new() -> Self {
        LinearPDE::default()
    }

    pub fn from_terms<I>(terms: I, potential: Scalar) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, Scalar)>,
    {
        let mut op = LinearPDE::new();
        for (idx, c) in terms {
            op.add_term(idx, &c);
        }
        op.add_term(MultiIndex::ZERO, &potential);
        op
    }

    pub fn with_term(mut self, idx: MultiIndex, c: Scalar) -> Self {
        self.add_term(idx, &c);
        self
    }

    pub fn with_potential(mut self, f: Scalar) -> Self {
        self.potential = f;
        self
    }

    /// `c·∇²` added over the three spatial coordinates.
    pub fn with_laplacian(mut self, c: Scalar) -> Self {
        for mu in 1..4 {
            self.add_term(MultiIndex::from_coords(&[mu, mu]), &c);
        }
        self
    }

    /// Add `c·∂^idx`, accumulating into an existing coefficient.
    pub fn add_term(&mut self, idx: MultiIndex, c: &Scalar) {
        assert!(idx.order() <= MAX_ORDER, "operator order above {MAX_ORDER}");
        if c.is_zero() {
            return;
        }
        if idx == MultiIndex::ZERO {
            self.potential = &self.potential + c;
            return;
        }
        let sum = match self.terms.get(&idx) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&idx);
        } else {
            self.terms.insert(idx, sum);
        }
    }

    pub fn potential(&self) -> &Scalar {
        &self.potential
    }

    /// Coefficient of `∂^idx` (the potential for the zero index).
    pub fn coefficient(&self, idx: &MultiIndex) -> Scalar {
        if *idx == MultiIndex::ZERO {
            return self.potential.clone();
        }
        self.terms.get(idx).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Derivative terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
    }

    /// Every nonzero slot including the potential, in canonical order.
    pub fn slots(&self) -> Vec<(MultiIndex, Scalar)> {
        let mut v: Vec<_> = self.terms.iter().map(|(k, c)| (*k, c.clone())).collect();
        if !self.potential.is_zero() {
            v.push((MultiIndex::ZERO, self.potential.clone()));
        }
        v
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(MultiIndex::order).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.potential.is_zero()
    }

    pub fn scale(&self, s: &Scalar) -> LinearPDE {
        LinearPDE::from_terms(
            self.terms.iter().map(|(k, c)| (*k, c * s)),
            &self.potential * s,
        )
    }

    pub fn add(&self, o: &LinearPDE) -> LinearPDE {
        let mut out = self.clone();
        for (k, c) in o.slots() {
            out.add_term(k, &c);
        }
        out
    }

    pub fn sub(&self, o: &LinearPDE) -> LinearPDE {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn map_coefficients<F>(&self, f: F) -> Result<LinearPDE, SymbolicError>
    where
        F: Fn(&Scalar) -> Result<Scalar, SymbolicError>,
    {
        let mut out = LinearPDE::new();
        for (k, c) in self.slots() {
            out.add_term(k, &f(&c)?);
        }
        Ok(out)
    }

    pub fn substitute(&self, bindings: &HashMap<Symbol, Scalar>) -> Result<LinearPDE, SymbolicError> {
        self.map_coefficients(|c| c.substitute(bindings))
    }

    /// Composition `self ∘ other`, expanded by the Leibniz rule.
    ///
    /// Symbols named in `fields` are functions of the spatial coordinates
    /// (`V` has derivatives `V_1`, `V_12`, ...); everything else is constant.
    pub fn compose(&self, other: &LinearPDE, fields: &[&str]) -> LinearPDE {
        let mut out = LinearPDE::new();
        for (alpha, c) in self.slots() {
            for (beta, d) in other.slots() {
                let a = alpha.0;
                for g0 in 0..=a[0] {
                    for g1 in 0..=a[1] {
                        for g2 in 0..=a[2] {
                            for g3 in 0..=a[3] {
                                let g = [g0, g1, g2, g3];
                                let mut coef = d.clone();
                                let mut weight = 1i64;
                                for mu in 0..4 {
                                    weight *= binomial(a[mu], g[mu]);
                                    for _ in 0..a[mu] - g[mu] {
                                        coef = if mu == 0 {
                                            Scalar::zero()
                                        } else {
                                            coef.coordinate_derivative(mu, fields)
                                        };
                                    }
                                }
                                if coef.is_zero() {
                                    continue;
                                }
                                let w = &(&c * &coef) * &Scalar::int(weight);
                                out.add_term(beta.add(&MultiIndex(g)), &w);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Line-oriented canonical text: one `d[a,b,c,d] = coefficient` per slot.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, c) in self.slots() {
            s.push_str(&format!("{k} = {c}\n"));
        }
        s
    }

    /// Inverse of [`to_text`](Self::to_text); blank lines and `#` comments are ignored.
    pub fn from_text(text: &str) -> Result<LinearPDE, SymbolicError> {
        let mut op = LinearPDE::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| SymbolicError::Parse {
                pos: lineno + 1,
                msg: format!("line {}: {msg}", lineno + 1),
            };
            let rest = line.strip_prefix("d[").ok_or_else(|| bad("expected 'd['"))?;
            let (idx, rest) = rest.split_once(']').ok_or_else(|| bad("expected ']'"))?;
            let parts: Vec<u8> = idx
                .split(',')
                .map(|p| p.trim().parse::<u8>())
                .collect::<Result<_, _>>()
                .map_err(|_| bad("bad multi-index"))?;
            if parts.len() != 4 {
                return Err(bad("multi-index needs four entries"));
            }
            let mi = MultiIndex([parts[0], parts[1], parts[2], parts[3]]);
            if mi.order() > MAX_ORDER {
                return Err(bad("order above 4"));
            }
            let expr = rest
                .trim()
                .strip_prefix('=')
                .ok_or_else(|| bad("expected '='"))?;
            let c = parse_scalar(expr)?;
            op.add_term(mi, &c);
        }
        Ok(op)
    }
}

fn binomial(n: u8, k: u8) -> i64 {
    (0..k as i64).fold(1, |acc, j| acc * (n as i64 - j) / (j + 1))
}

impl fmt::Display for LinearPDE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.slots() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == MultiIndex::ZERO {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})·")?;
                for mu in k.coords() {
                    write!(f, "∂{mu}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeroth_slot_goes_to_potential() {
        let op = LinearPDE::new()
            .with_term(MultiIndex::ZERO, Scalar::sym("f"))
            .with_term(MultiIndex::unit(0), Scalar::sym("Cbar"));
        assert_eq!(op.potential(), &Scalar::sym("f"));
        assert_eq!(op.terms().count(), 1);
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut op = LinearPDE::new().with_laplacian(Scalar::sym("B"));
        op.add_term(MultiIndex::from_coords(&[1, 1]), &-Scalar::sym("B"));
        assert_eq!(op.terms().count(), 2);
        assert_eq!(op.order(), 2);
    }

    #[test]
    fn text_roundtrip() {
        let op = LinearPDE::new()
            .with_laplacian(parse_scalar("ħ^2/(2*m)").unwrap())
            .with_term(MultiIndex::unit(0), parse_scalar("i*ħ").unwrap())
            .with_potential(-Scalar::sym("V"));
        let text = op.to_text();
        assert_eq!(text.lines().next().unwrap(), "d[0,2,0,0] = ħ^2/(2*m)");
        assert_eq!(LinearPDE::from_text(&text).unwrap(), op);
    }

    #[test]
    fn composition_with_a_field() {
        // ∂1 ∘ (V·) = V∂1 + V_1
        let d1 = LinearPDE::new().with_term(MultiIndex::unit(1), Scalar::one());
        let v = LinearPDE::new().with_potential(Scalar::sym("V"));
        let out = d1.compose(&v, &["V"]);
        let expected = LinearPDE::new()
            .with_term(MultiIndex::unit(1), Scalar::sym("V"))
            .with_potential(Scalar::sym("V_1"));
        assert_eq!(out, expected);
        // constant coefficients commute
        assert_eq!(v.compose(&d1, &[]), d1.compose(&v, &[]));
    }

    #[test]
    fn text_errors_carry_line_numbers() {
        let err = LinearPDE::from_text("d[1,0,0,0] = 1\nd[1,0,0] = 2\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
        assert!(LinearPDE::from_text("d[5,0,0,0] = 1").is_err());
    }
}

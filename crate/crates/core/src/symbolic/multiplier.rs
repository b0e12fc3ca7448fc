use super::deriv::MultiIndex;
use super::pde::LinearPDE;
use super::scalar::Scalar;

/// `g(x) = g₀ · exp(Σ_μ λ_μ x^μ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpLinearMultiplier {
    pub prefactor: Scalar,
    pub exponent: [Scalar; 4],
}

impl ExpLinearMultiplier {
    pub fn identity() -> Self {
        ExpLinearMultiplier {
            prefactor: Scalar::one(),
            exponent: Default::default(),
        }
    }

    pub fn new(prefactor: Scalar, exponent: [Scalar; 4]) -> Self {
        ExpLinearMultiplier { prefactor, exponent }
    }

    /// Multiplier with unit prefactor and the given `λ`.
    pub fn with_exponent(exponent: [Scalar; 4]) -> Self {
        ExpLinearMultiplier::new(Scalar::one(), exponent)
    }

    pub fn is_identity(&self) -> bool {
        self.prefactor.is_one() && self.exponent.iter().all(Scalar::is_zero)
    }

    /// Pointwise product; exponents add.
    pub fn product(&self, o: &ExpLinearMultiplier) -> ExpLinearMultiplier {
        let exponent = std::array::from_fn(|mu| &self.exponent[mu] + &o.exponent[mu]);
        ExpLinearMultiplier::new(&self.prefactor * &o.prefactor, exponent)
    }
}

fn binomial(n: u8, k: u8) -> i64 {
    (0..k as i64).fold(1, |acc, j| acc * (n as i64 - j) / (j + 1))
}

/// Operator `D'` with `D(gΨ) = g · D'Ψ`, obtained by shifting every
/// `∂_μ` to `∂_μ + λ_μ`. The prefactor `g₀` cancels and plays no part.
pub fn apply_operator(op: &LinearPDE, g: &ExpLinearMultiplier) -> LinearPDE {
    let lambda = &g.exponent;
    let mut out = LinearPDE::new().with_potential(op.potential().clone());
    for (alpha, c) in op.terms() {
        let a = alpha.0;
        for b0 in 0..=a[0] {
            for b1 in 0..=a[1] {
                for b2 in 0..=a[2] {
                    for b3 in 0..=a[3] {
                        let b = [b0, b1, b2, b3];
                        let mut w = c.clone();
                        for mu in 0..4 {
                            let rest = a[mu] - b[mu];
                            if rest > 0 {
                                if lambda[mu].is_zero() {
                                    w = Scalar::zero();
                                    break;
                                }
                                w = &(&w * &Scalar::int(binomial(a[mu], b[mu]))) * &lambda[mu].pow(rest as u32);
                            }
                        }
                        out.add_term(MultiIndex(b), &w);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lam(mu: usize, s: Scalar) -> ExpLinearMultiplier {
        let mut e: [Scalar; 4] = Default::default();
        e[mu] = s;
        ExpLinearMultiplier::with_exponent(e)
    }

    #[test]
    fn second_derivative_shift() {
        let op = LinearPDE::new().with_term(MultiIndex::from_coords(&[1, 1]), Scalar::one());
        let out = apply_operator(&op, &lam(1, Scalar::sym("a")));
        let expected = LinearPDE::new()
            .with_term(MultiIndex::from_coords(&[1, 1]), Scalar::one())
            .with_term(MultiIndex::unit(1), &Scalar::int(2) * &Scalar::sym("a"))
            .with_potential(Scalar::sym("a").pow(2));
        assert_eq!(out, expected);
    }

    #[test]
    fn prefactor_does_not_matter() {
        let op = LinearPDE::new().with_term(MultiIndex::unit(0), Scalar::one());
        let g = ExpLinearMultiplier::new(Scalar::int(7), Default::default());
        assert_eq!(apply_operator(&op, &g), op);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(3, 3), 1);
    }

    fn small_op() -> impl Strategy<Value = LinearPDE> {
        proptest::collection::vec((0u8..3, 0u8..3, -3i64..4), 1..4).prop_map(|ts| {
            let mut op = LinearPDE::new();
            for (a, b, c) in ts {
                op.add_term(MultiIndex([a, b, 0, 0]), &Scalar::int(c));
            }
            op
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn composition_adds_exponents(op in small_op(), p in -3i64..4, q in -3i64..4, r in -3i64..4) {
            let g1 = lam(0, Scalar::int(p));
            let mut g2 = lam(1, Scalar::int(q));
            g2.exponent[0] = Scalar::int(r);
            let twice = apply_operator(&apply_operator(&op, &g1), &g2);
            let once = apply_operator(&op, &g1.product(&g2));
            prop_assert_eq!(twice, once);
        }

        #[test]
        fn identity_multiplier_is_neutral(op in small_op()) {
            prop_assert_eq!(apply_operator(&op, &ExpLinearMultiplier::identity()), op);
        }
    }
}

use std::collections::BTreeSet;

use crate::boost::ConstraintSystem;
use crate::symbolic::{parse_scalar, LinearPDE, Scalar, Symbol};

use super::system::{solve_system, Solution};

pub const OMEGA: &str = "ω";
pub const WAVENUMBER: &str = "k";

/// Required plane-wave relation `ω^degree = rhs(k)`, from `E = ħω`, `p = ħk`.
#[derive(Clone, Debug, PartialEq)]
pub struct DispersionTarget {
    pub name: &'static str,
    /// Which energy-momentum relation the target encodes.
    pub origin: &'static str,
    pub degree: u32,
    pub rhs: Scalar,
    /// `∂0 = ∂t / time_scale`: one when `x⁰ = t`, `c` when `x⁰ = ct`.
    pub time_scale: Scalar,
}

impl DispersionTarget {
    /// `ω = ħk²/2m`
    pub fn free_particle() -> Self {
        DispersionTarget {
            name: "free",
            origin: "E = p²/2m",
            degree: 1,
            rhs: parse_scalar("ħ*k^2/(2*m)").unwrap(),
            time_scale: Scalar::one(),
        }
    }

    /// `ω = ħk²/2m + V/ħ`
    pub fn with_potential() -> Self {
        DispersionTarget {
            name: "potential",
            origin: "E = p²/2m + V",
            degree: 1,
            rhs: parse_scalar("ħ*k^2/(2*m) + V/ħ").unwrap(),
            time_scale: Scalar::one(),
        }
    }

    /// `ħ²ω² = m²c⁴ + c²ħ²k²`, for operators written in `x⁰ = ct`.
    pub fn relativistic() -> Self {
        DispersionTarget {
            name: "relativistic",
            origin: "E² = m²c⁴ + c²p²",
            degree: 2,
            rhs: parse_scalar("(m^2*c^4 + c^2*ħ^2*k^2)/ħ^2").unwrap(),
            time_scale: Scalar::sym("c"),
        }
    }

    /// `ω^degree − rhs`
    pub fn relation(&self) -> Scalar {
        &Scalar::sym(OMEGA).pow(self.degree) - &self.rhs
    }

    /// Nonnegative root(s) `ω(k)` for numeric parameters; two branches when
    /// the relation is quadratic.
    pub fn omega(&self, k: f64, params: &[(&str, f64)]) -> Option<Vec<f64>> {
        let mut vals: Vec<(&str, f64)> = params.to_vec();
        vals.push((WAVENUMBER, k));
        let r = self.rhs.eval_named(&vals)?.re;
        Some(match self.degree {
            1 => vec![r],
            _ => vec![r.sqrt(), -r.sqrt()],
        })
    }
}

/// `Ψ₀·exp(i(k·r − ωt))`
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneWave {
    pub amplitude: Scalar,
    pub k: [Scalar; 3],
    pub omega: Scalar,
}

impl PlaneWave {
    /// Wave along x¹ with symbolic `k` and `ω`.
    pub fn symbolic() -> Self {
        PlaneWave {
            amplitude: Scalar::sym("Ψ0"),
            k: [Scalar::sym(WAVENUMBER), Scalar::zero(), Scalar::zero()],
            omega: Scalar::sym(OMEGA),
        }
    }

    /// `E` with `op Ψ = E·Ψ`; `∂0 ↦ −iω/time_scale`, `∂j ↦ i k_j`.
    pub fn eigenvalue(&self, op: &LinearPDE, time_scale: &Scalar) -> Scalar {
        let i = Scalar::i();
        let d0 = (&(-&i) * &self.omega).checked_div(time_scale).expect("nonzero time scale");
        let factors = [d0, &i * &self.k[0], &i * &self.k[1], &i * &self.k[2]];
        let mut e = op.potential().clone();
        for (alpha, c) in op.terms() {
            let mut t = c.clone();
            for mu in alpha.coords() {
                t = &t * &factors[mu];
            }
            e = &e + &t;
        }
        e
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DispersionMatch {
    /// Plane-wave eigenvalue after eliminating `ω` with the target.
    pub reduced: Scalar,
    /// One equation per power of `k` and `ω`.
    pub equations: ConstraintSystem,
    pub solution: Solution,
}

impl DispersionMatch {
    pub fn is_satisfied(&self) -> bool {
        self.solution.is_satisfied()
    }
}

/// Impose the target on every plane wave and solve for `unknowns`.
///
/// The eigenvalue is reduced modulo `ω^degree = rhs`; each coefficient of
/// `k^a ω^b` that survives is an equation, since the unknowns may not
/// depend on `k` or `ω`.
pub fn dispersion_match(
    op: &LinearPDE,
    target: &DispersionTarget,
    unknowns: &[Symbol],
    nonzero: &BTreeSet<Symbol>,
) -> DispersionMatch {
    let omega = Symbol::new(OMEGA);
    let k = Symbol::new(WAVENUMBER);
    let e = PlaneWave::symbolic().eigenvalue(op, &target.time_scale);
    let den = Scalar::fraction(e.denominator().clone(), crate::symbolic::Poly::one()).expect("nonzero");
    let mut coeffs: Vec<Scalar> = e
        .numerator()
        .coefficients_in(&omega)
        .into_iter()
        .map(|p| Scalar::from_poly(p).checked_div(&den).expect("nonzero"))
        .collect();
    let d = target.degree as usize;
    for j in (d..coeffs.len()).rev() {
        let hi = std::mem::take(&mut coeffs[j]);
        coeffs[j - d] = &coeffs[j - d] + &(&hi * &target.rhs);
    }
    let reduced = coeffs
        .iter()
        .enumerate()
        .fold(Scalar::zero(), |acc, (j, c)| &acc + &(c * &Scalar::from_symbol(omega.clone()).pow(j as u32)));
    let mut equations = ConstraintSystem::empty();
    for c in &coeffs {
        for p in c.numerator().coefficients_in(&k) {
            equations.push(None, &Scalar::from_poly(p));
        }
    }
    let solution = solve_system(&equations, unknowns, nonzero);
    DispersionMatch {
        reduced,
        equations,
        solution,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::system::{symbol_set, symbols};
    use crate::symbolic::MultiIndex;

    fn s(x: &str) -> Scalar {
        parse_scalar(x).unwrap()
    }

    fn galilean_op() -> LinearPDE {
        LinearPDE::new()
            .with_laplacian(s("Bbar"))
            .with_term(MultiIndex::unit(0), s("Cbar"))
            .with_potential(s("f"))
    }

    #[test]
    fn free_particle_fixes_ratio() {
        let m = dispersion_match(
            &galilean_op(),
            &DispersionTarget::free_particle(),
            &symbols(&["Cbar", "f"]),
            &symbol_set(&["Bbar", "m", "ħ"]),
        );
        assert!(m.is_satisfied());
        let ratio = m.solution.value("Cbar").unwrap().checked_div(&s("Bbar")).unwrap();
        assert_eq!(ratio, s("2*i*m/ħ"));
        assert_eq!(m.solution.value("f"), Some(&Scalar::zero()));
    }

    #[test]
    fn potential_shifts_f() {
        let op = galilean_op()
            .substitute(
                &[
                    (Symbol::new("Bbar"), s("ħ^2*D/(2*m)")),
                    (Symbol::new("Cbar"), s("i*ħ*D")),
                ]
                .into_iter()
                .collect(),
            )
            .unwrap();
        let m = dispersion_match(&op, &DispersionTarget::with_potential(), &symbols(&["f"]), &BTreeSet::new());
        assert!(m.is_satisfied());
        assert_eq!(m.solution.value("f"), Some(&s("-D*V")));
    }

    #[test]
    fn relativistic_target() {
        let op = LinearPDE::new()
            .with_term(MultiIndex::from_coords(&[0, 0]), s("B"))
            .with_laplacian(s("-B"))
            .with_term(MultiIndex::unit(0), s("-C"))
            .with_potential(s("-f"));
        let m = dispersion_match(
            &op,
            &DispersionTarget::relativistic(),
            &symbols(&["C", "f"]),
            &symbol_set(&["c", "ħ", "m", "B"]),
        );
        assert!(m.is_satisfied());
        assert_eq!(m.solution.value("C"), Some(&Scalar::zero()));
        assert_eq!(m.solution.value("f"), Some(&s("-m^2*c^2*B/ħ^2")));
    }

    #[test]
    fn real_ratio_cannot_match() {
        let op2 = LinearPDE::new().with_laplacian(Scalar::one()).with_term(MultiIndex::unit(0), Scalar::one());
        let m2 = dispersion_match(&op2, &DispersionTarget::free_particle(), &[], &BTreeSet::new());
        assert!(!m2.is_satisfied());
    }

    #[test]
    fn numeric_branches() {
        let t = DispersionTarget::relativistic();
        let w = t.omega(1.0, &[("m", 1.0), ("c", 10.0), ("ħ", 1.0)]).unwrap();
        assert!((w[0] - 10100f64.sqrt()).abs() < 1e-12);
        assert_eq!(DispersionTarget::free_particle().omega(2.0, &[("m", 1.0), ("ħ", 1.0)]), Some(vec![2.0]));
    }
}

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::coeff::Coeff;
use super::poly::{Monomial, Poly};
use super::symbol::{Symbol, BETA, GAMMA};
use super::SymbolicError;

/// Exact rational function `num / den` with coefficients in ℚ(i, √2).
///
/// Normal form: numerator and denominator share no polynomial factor, the
/// denominator is monic, and both are reduced modulo `(1 − β²)γ² = 1`.
/// Because of that side relation, equality is decided by cross
/// multiplication rather than by comparing fields.
#[derive(Clone, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::int(1)
    }

    pub fn int(n: i64) -> Self {
        Scalar::from_coeff(Coeff::from_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::from_coeff(Coeff::ratio(n, d))
    }

    pub fn i() -> Self {
        Scalar::from_coeff(Coeff::i())
    }

    pub fn sqrt2() -> Self {
        Scalar::from_coeff(Coeff::sqrt2())
    }

    pub fn from_coeff(c: Coeff) -> Self {
        Scalar {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn sym(name: &str) -> Self {
        Scalar::from_symbol(Symbol::new(name))
    }

    pub fn from_symbol(s: Symbol) -> Self {
        Scalar {
            num: Poly::var(s),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar::normalize(p, Poly::one()).expect("unit denominator")
    }

    /// Build `num / den` and bring it to normal form.
    pub fn fraction(num: Poly, den: Poly) -> Result<Self, SymbolicError> {
        Scalar::normalize(num, den)
    }

    fn normalize(num: Poly, den: Poly) -> Result<Self, SymbolicError> {
        let num = num.reduce_lorentz();
        let den = den.reduce_lorentz();
        if den.is_zero() {
            return Err(SymbolicError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        let (num, den) = if den.as_constant().is_some() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            let num = num.div_exact(&g).expect("gcd divides numerator");
            let den = den.div_exact(&g).expect("gcd divides denominator");
            (num.reduce_lorentz(), den.reduce_lorentz())
        };
        if den.is_zero() {
            return Err(SymbolicError::DivisionByZero);
        }
        let (_, lc) = den.leading().expect("nonzero denominator");
        let inv = lc.inv().expect("nonzero leading coefficient");
        Ok(Scalar {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// Value when free of symbols.
    pub fn as_coeff(&self) -> Option<Coeff> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(&n / &d)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut s = self.num.symbols();
        s.extend(self.den.symbols());
        s
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.num.contains(s) || self.den.contains(s)
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar, SymbolicError> {
        if o.is_zero() {
            return Err(SymbolicError::DivisionByZero);
        }
        Scalar::normalize(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn recip(&self) -> Result<Scalar, SymbolicError> {
        Scalar::one().checked_div(self)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut out = Scalar::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Simultaneous substitution of symbols by scalars, then renormalization.
    pub fn substitute(&self, bindings: &HashMap<Symbol, Scalar>) -> Result<Scalar, SymbolicError> {
        if bindings.is_empty() || !self.symbols().iter().any(|s| bindings.contains_key(s)) {
            return Ok(self.clone());
        }
        // Bring every binding over a common denominator so a polynomial
        // substitution followed by one division suffices.
        let num = substitute_poly(&self.num, bindings)?;
        let den = substitute_poly(&self.den, bindings)?;
        num.checked_div(&den)
    }

    pub fn substitute_one(&self, s: &str, value: &Scalar) -> Result<Scalar, SymbolicError> {
        let mut b = HashMap::new();
        b.insert(Symbol::new(s), value.clone());
        self.substitute(&b)
    }

    /// Partial derivative with respect to the symbol `s`.
    pub fn diff(&self, s: &Symbol) -> Scalar {
        let dn = self.num.diff(s);
        let dd = self.den.diff(s);
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        let den = self.den.mul(&self.den);
        Scalar::normalize(num, den).expect("squared nonzero denominator")
    }

    /// Derivative along coordinate `coord` where the listed symbols are
    /// fields of the coordinates (`V` ↦ `V_1`, ...); all other symbols are constants.
    pub fn coordinate_derivative(&self, coord: usize, fields: &[&str]) -> Scalar {
        let mut out = Scalar::zero();
        for s in self.symbols() {
            let Some(ds) = fields.iter().find_map(|b| s.field_derivative(b, coord)) else {
                continue;
            };
            out = &out + &(&self.diff(&s) * &Scalar::from_symbol(ds));
        }
        out
    }

    /// Numerical value under a complete assignment of its symbols.
    pub fn eval(&self, values: &HashMap<Symbol, Complex64>) -> Option<Complex64> {
        let n = eval_poly(&self.num, values)?;
        let d = eval_poly(&self.den, values)?;
        Some(n / d)
    }

    pub fn eval_named(&self, values: &[(&str, f64)]) -> Option<Complex64> {
        let map = values
            .iter()
            .map(|(n, v)| (Symbol::new(n), Complex64::new(*v, 0.0)))
            .collect();
        self.eval(&map)
    }

    /// True when the scalar is `c·m₁/m₂` with monomials built only from `nonzero` symbols.
    pub fn is_nonzero_under(&self, nonzero: &BTreeSet<Symbol>) -> bool {
        let ok = |p: &Poly| {
            p.as_term()
                .map(|(m, _)| m.factors().iter().all(|(s, _)| nonzero.contains(s)))
                .unwrap_or(false)
        };
        !self.is_zero() && ok(&self.num) && ok(&self.den)
    }

    /// Replace `γ` by its expansion `1 + β²/2 + 3β⁴/8 + …` truncated at
    /// `β^order`, then truncate the whole numerator at `β^order`.
    ///
    /// The denominator must be free of `β` and `γ`.
    pub fn beta_series(&self, order: u32) -> Option<Scalar> {
        let beta = Symbol::new(BETA);
        let gamma = Symbol::new(GAMMA);
        if self.den.contains(&beta) || self.den.contains(&gamma) {
            return None;
        }
        // binomial series of (1 − x)^{-1/2}, x = β²
        let mut gamma_series = Poly::zero();
        let mut coef = BigRational::one();
        let mut k: u32 = 0;
        while 2 * k <= order {
            let term = Poly::term(
                Coeff::from_rational(coef.clone()),
                Monomial::var(beta.clone(), 2 * k),
            );
            gamma_series = gamma_series.add(&term);
            // c_{k+1} = c_k (2k+1) / (2k+2)
            coef *= BigRational::new(BigInt::from(2 * k + 1), BigInt::from(2 * k + 2));
            k += 1;
        }
        let expanded = self
            .num
            .substitute(&|s: &Symbol| (*s == gamma).then(|| gamma_series.clone()));
        let truncated = truncate_in(&expanded, &beta, order);
        Scalar::fraction(truncated, self.den.clone()).ok()
    }

    /// Lowest-order nonzero part of the numerator in `s` (the dominant small-`s` term).
    pub fn leading_order_in(&self, s: &Symbol) -> Option<(u32, Scalar)> {
        let cs = self.num.coefficients_in(s);
        let (k, c) = cs.into_iter().enumerate().find(|(_, c)| !c.is_zero())?;
        let term = c.mul_monomial(&Monomial::var(s.clone(), k as u32));
        Some((k as u32, Scalar::fraction(term, self.den.clone()).ok()?))
    }

    /// Exact Lorentz factor for a rational `β` when `1 − β²` is a rational square.
    pub fn lorentz_gamma(beta: &BigRational) -> Option<Scalar> {
        let one_minus = BigRational::one() - beta * beta;
        if !one_minus.is_positive() {
            return None;
        }
        let n = exact_sqrt(one_minus.numer())?;
        let d = exact_sqrt(one_minus.denom())?;
        Some(Scalar::from_coeff(Coeff::from_rational(BigRational::new(d, n))))
    }
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn truncate_in(p: &Poly, s: &Symbol, order: u32) -> Poly {
    let mut cs = p.coefficients_in(s);
    cs.truncate(order as usize + 1);
    Poly::from_coefficients_in(s, &cs)
}

fn substitute_poly(p: &Poly, bindings: &HashMap<Symbol, Scalar>) -> Result<Scalar, SymbolicError> {
    let mut out = Scalar::zero();
    for (m, c) in p.terms() {
        let mut t = Scalar::from_coeff(c.clone());
        let mut kept = Vec::new();
        for (s, e) in m.factors() {
            match bindings.get(s) {
                Some(v) => t = &t * &v.pow(*e),
                None => kept.push((s.clone(), *e)),
            }
        }
        t = &t * &Scalar::from_poly(Poly::term(Coeff::one(), Monomial::from_pairs(kept)));
        out = &out + &t;
    }
    Ok(out)
}

fn eval_poly(p: &Poly, values: &HashMap<Symbol, Complex64>) -> Option<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, c) in p.terms() {
        let mut t = c.to_complex();
        for (s, e) in m.factors() {
            t *= values.get(s)?.powu(*e);
        }
        acc += t;
    }
    Some(acc)
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Scalar) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        self.num
            .mul(&o.den)
            .sub(&o.num.mul(&self.den))
            .reduce_lorentz()
            .is_zero()
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.den == o.den {
            return Scalar::normalize(self.num.add(&o.num), self.den.clone()).unwrap();
        }
        Scalar::normalize(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
        .expect("product of nonzero denominators")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        Scalar::normalize(self.num.mul(&o.num), self.den.mul(&o.den))
            .expect("product of nonzero denominators")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { (&self).$m(&o) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

fn fmt_poly(f: &mut fmt::Formatter<'_>, p: &Poly) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.support() == 1 && c.leading_sign_negative();
        let mag = if neg { -c } else { c.clone() };
        if k == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        let cs = mag.to_string();
        if m.is_one() {
            if mag.support() > 1 {
                write!(f, "({cs})")?;
            } else {
                write!(f, "{cs}")?;
            }
        } else if mag.is_one() {
            write!(f, "{m}")?;
        } else if mag.support() > 1 {
            write!(f, "({cs})*{m}")?;
        } else {
            write!(f, "{cs}*{m}")?;
        }
    }
    Ok(())
}

fn denominator_lcm(p: &Poly) -> BigInt {
    let mut l = BigInt::one();
    for (_, c) in p.terms() {
        for r in c.components() {
            l = num_integer::Integer::lcm(&l, r.denom());
        }
    }
    l
}

/// Canonical text form; parses back with [`parse_scalar`](crate::symbolic::parse_scalar).
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        if den.len() == 1 {
            let q = denominator_lcm(&num);
            if !q.is_one() {
                let qc = Coeff::from_rational(BigRational::from_integer(q));
                num = num.scale(&qc);
                den = den.scale(&qc);
            }
        }
        if den.as_constant().map(|c| c.is_one()).unwrap_or(false) {
            return fmt_poly(f, &num);
        }
        if num.len() == 1 {
            fmt_poly(f, &num)?;
        } else {
            write!(f, "(")?;
            fmt_poly(f, &num)?;
            write!(f, ")")?;
        }
        write!(f, "/")?;
        let bare = match den.as_term() {
            Some((m, c)) if m.is_one() => c.support() == 1 && !c.leading_sign_negative(),
            Some((m, c)) => c.is_one() && m.factors().len() == 1,
            None => false,
        };
        if bare {
            fmt_poly(f, &den)
        } else {
            write!(f, "(")?;
            fmt_poly(f, &den)?;
            write!(f, ")")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: &str) -> Scalar {
        Scalar::sym(n)
    }

    #[test]
    fn field_identities() {
        let a = &Scalar::ratio(1, 2) + &Scalar::i();
        let b = &Scalar::ratio(1, 2) - &Scalar::i();
        assert_eq!(&a + &b, Scalar::one());
        assert_eq!(&Scalar::sqrt2() * &Scalar::sqrt2(), Scalar::int(2));
    }

    #[test]
    fn cross_multiplied_ratio() {
        // (C̄v²/4B̄)·(4B̄/C̄) = v²
        let lhs = (s("Cbar") * s("v").pow(2)).checked_div(&(Scalar::int(4) * s("Bbar"))).unwrap();
        let rhs = (Scalar::int(4) * s("Bbar")).checked_div(&s("Cbar")).unwrap();
        let prod = lhs * rhs;
        assert_eq!(prod, s("v").pow(2));
        assert_eq!(prod.to_string(), "v^2");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(
            Scalar::one().checked_div(&Scalar::zero()),
            Err(SymbolicError::DivisionByZero)
        ));
        let x = s("x");
        assert!((&x - &x).recip().is_err());
    }

    #[test]
    fn substitution() {
        // C̄/B̄ with C̄ → i2m/ħ·B̄ gives i2m/ħ
        let ratio = s("Cbar").checked_div(&s("Bbar")).unwrap();
        let c = (Scalar::i() * Scalar::int(2) * s("m")).checked_div(&s("ħ")).unwrap() * s("Bbar");
        let out = ratio.substitute_one("Cbar", &c).unwrap();
        assert_eq!(out, (Scalar::i() * Scalar::int(2) * s("m")).checked_div(&s("ħ")).unwrap());
        // (γ−1)mc² with γ = 5/4, m = 1, c = 2 gives 1
        let ke = (s("γ") - Scalar::one()) * s("m") * s("c").pow(2);
        let mut b = HashMap::new();
        b.insert(Symbol::new("γ"), Scalar::ratio(5, 4));
        b.insert(Symbol::new("m"), Scalar::one());
        b.insert(Symbol::new("c"), Scalar::int(2));
        assert_eq!(ke.substitute(&b).unwrap(), Scalar::one());
        // unbound symbols pass through
        assert_eq!(s("q").substitute(&b).unwrap(), s("q"));
        // zero denominator after substitution
        let inv = Scalar::one().checked_div(&(s("m") - Scalar::one())).unwrap();
        assert!(inv.substitute(&b).is_err());
    }

    #[test]
    fn rest_frame_gamma() {
        use num_traits::Zero;
        assert_eq!(Scalar::lorentz_gamma(&BigRational::zero()).unwrap(), Scalar::one());
        let b = BigRational::new(3.into(), 5.into());
        assert_eq!(Scalar::lorentz_gamma(&b).unwrap(), Scalar::ratio(5, 4));
        let irrational = BigRational::new(1.into(), 2.into());
        assert!(Scalar::lorentz_gamma(&irrational).is_none());
    }

    #[test]
    fn lorentz_identity() {
        let b = s("β");
        let g = s("γ");
        let lhs = (Scalar::one() - b.pow(2)) * g.pow(2);
        assert_eq!(lhs, Scalar::one());
        // γ²/(γ² − 1) = 1/β²
        let q = g.pow(2).checked_div(&(g.pow(2) - Scalar::one())).unwrap();
        assert_eq!(q, Scalar::one().checked_div(&b.pow(2)).unwrap());
    }

    #[test]
    fn gcd_cancellation() {
        let x = s("x");
        let y = s("y");
        let q = (&x * &x - &y * &y).checked_div(&(&x + &y)).unwrap();
        assert_eq!(q.denominator(), &Poly::one());
        assert_eq!(q, &x - &y);
    }

    #[test]
    fn coordinate_derivative_of_field() {
        let v = s("V");
        let d = (&v * &v).coordinate_derivative(1, &["V"]);
        assert_eq!(d, Scalar::int(2) * s("V") * s("V_1"));
        assert_eq!(s("m").coordinate_derivative(1, &["V"]), Scalar::zero());
    }

    #[test]
    fn beta_series_of_gamma() {
        let g = s("γ");
        let series = g.beta_series(4).unwrap();
        let b = s("β");
        let expect = Scalar::one() + b.pow(2) * Scalar::ratio(1, 2) + b.pow(4) * Scalar::ratio(3, 8);
        assert_eq!(series, expect);
        let lead = (g.clone() - Scalar::one()).beta_series(2).unwrap();
        assert_eq!(
            lead.leading_order_in(&Symbol::new("β")).unwrap(),
            (2, b.pow(2) * Scalar::ratio(1, 2))
        );
    }
}

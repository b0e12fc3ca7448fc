//! Sparse multivariate polynomials over ℚ(i, √2).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::coeff::Coeff;
use super::symbol::{Symbol, BETA, GAMMA};

/// A power product `Π sᵢ^eᵢ`, sorted by symbol, exponents positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(s, e)])
        }
    }

    pub fn from_pairs(mut pairs: Vec<(Symbol, u32)>) -> Self {
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(pairs.len());
        for (s, e) in pairs {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((ls, le)) if *ls == s => *le += e,
                _ => out.push((s, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, s: &Symbol) -> u32 {
        self.0
            .binary_search_by(|(x, _)| x.cmp(s))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            match self.0[i].0.cmp(&o.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(o.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + o.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&o.0[j..]);
        Monomial(out)
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (s, e) in &self.0 {
            if j < o.0.len() && o.0[j].0 == *s {
                let oe = o.0[j].1;
                j += 1;
                match e.cmp(&oe) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((s.clone(), e - oe)),
                }
            } else if j < o.0.len() && o.0[j].0 < *s {
                return None;
            } else {
                out.push((s.clone(), *e));
            }
        }
        if j < o.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Greatest common divisor of two monomials.
    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut out = Vec::new();
        for (s, e) in &self.0 {
            let oe = o.exponent(s);
            if oe > 0 {
                out.push((s.clone(), (*e).min(oe)));
            }
        }
        Monomial(out)
    }

    /// Drop the factor `s` entirely, returning the remaining monomial and its exponent.
    pub fn split(&self, s: &Symbol) -> (Monomial, u32) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|(x, xe)| {
                if x == s {
                    e = *xe;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (Monomial(rest), e)
    }
}

/// Graded lexicographic order; earlier symbol names are more significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((a, ae)), Some((b, be))) => match a.cmp(b) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ae.cmp(be) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial as a map monomial → nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Coeff>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn term(c: Coeff, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(s: Symbol) -> Self {
        Poly::term(Coeff::one(), Monomial::var(s, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    /// Constant value, if the polynomial has no symbols.
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Single term `c·m`.
    pub fn as_term(&self) -> Option<(&Monomial, &Coeff)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(s, _)| s.clone()))
            .collect()
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.terms.keys().any(|m| m.exponent(s) > 0)
    }

    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Gcd of all monomials (the common monomial factor).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |acc, m| acc.gcd(m))
    }

    pub fn div_monomial(&self, mono: &Monomial) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.div(mono)?, c.clone());
        }
        Some(Poly { terms })
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        if let Some((m, c)) = d.as_term() {
            let inv = c.inv()?;
            return self.div_monomial(m).map(|p| p.scale(&inv));
        }
        let dinv = dc.inv()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(dm)?;
            let qc = rc * &dinv;
            let step = Poly::term(qc.clone(), qm.clone());
            rem = rem.sub(&d.mul(&step));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// View as a univariate polynomial in `s`: entry `k` is the coefficient of `s^k`.
    pub fn coefficients_in(&self, s: &Symbol) -> Vec<Poly> {
        let mut out: Vec<Poly> = vec![Poly::zero(); self.degree_in(s) as usize + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.split(s);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(s: &Symbol, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (k, p) in coeffs.iter().enumerate() {
            let mono = Monomial::var(s.clone(), k as u32);
            for (m, c) in &p.terms {
                out.add_term(m.mul(&mono), c.clone());
            }
        }
        out
    }

    /// Partial derivative with respect to `s`.
    pub fn diff(&self, s: &Symbol) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split(s);
            if e == 0 {
                continue;
            }
            let mono = rest.mul(&Monomial::var(s.clone(), e - 1));
            out.add_term(mono, c * &Coeff::from_int(e as i64));
        }
        out
    }

    /// Replace each symbol by a polynomial (simultaneous).
    pub fn substitute(&self, bind: &dyn Fn(&Symbol) -> Option<Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(c.clone());
            let mut kept = Vec::new();
            for (s, e) in &m.0 {
                match bind(s) {
                    Some(p) => acc = acc.mul(&p.pow(*e)),
                    None => kept.push((s.clone(), *e)),
                }
            }
            let acc = acc.mul_monomial(&Monomial(kept));
            out = out.add(&acc);
        }
        out
    }

    /// Normal form modulo `β²γ² − γ² + 1`, i.e. the identity `(1 − β²)γ² = 1`.
    pub fn reduce_lorentz(&self) -> Poly {
        let beta = Symbol::new(BETA);
        let gamma = Symbol::new(GAMMA);
        let needs = |m: &Monomial| m.exponent(&beta) >= 2 && m.exponent(&gamma) >= 2;
        if !self.terms.keys().any(needs) {
            return self.clone();
        }
        let mut out = Poly::zero();
        let mut work: Vec<(Monomial, Coeff)> =
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        while let Some((m, c)) = work.pop() {
            if needs(&m) {
                let b2g2 = Monomial::from_pairs(vec![(beta.clone(), 2), (gamma.clone(), 2)]);
                let rest = m.div(&b2g2).unwrap();
                // β²γ² → γ² − 1
                work.push((rest.mul(&Monomial::var(gamma.clone(), 2)), c.clone()));
                work.push((rest, -&c));
            } else {
                out.add_term(m, c);
            }
        }
        out
    }

    /// Greatest common divisor, monic (or zero when both are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        if self.as_constant().is_some() || o.as_constant().is_some() {
            return Poly::one();
        }
        if let Some((m, _)) = self.as_term() {
            return Poly::term(Coeff::one(), m.gcd(&o.monomial_content()));
        }
        if let Some((m, _)) = o.as_term() {
            return Poly::term(Coeff::one(), m.gcd(&self.monomial_content()));
        }
        // main variable: the smallest symbol occurring in either
        let x = self
            .symbols()
            .into_iter()
            .chain(o.symbols())
            .min()
            .expect("non-constant polynomial has a symbol");
        if !self.contains(&x) {
            return self.gcd(&content_in(o, &x));
        }
        if !o.contains(&x) {
            return o.gcd(&content_in(self, &x));
        }
        let ca = content_in(self, &x);
        let cb = content_in(o, &x);
        let pa = self.div_exact(&ca).expect("content divides");
        let pb = o.div_exact(&cb).expect("content divides");
        let c = ca.gcd(&cb);
        let g = primitive_prs_gcd(&pa, &pb, &x);
        c.mul(&g).monic()
    }
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x`.
fn content_in(p: &Poly, x: &Symbol) -> Poly {
    p.coefficients_in(x)
        .into_iter()
        .filter(|c| !c.is_zero())
        .fold(Poly::zero(), |acc, c| acc.gcd(&c))
}

fn primitive_part_in(p: &Poly, x: &Symbol) -> Poly {
    let c = content_in(p, x);
    p.div_exact(&c).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` in `x`.
fn prem(a: &Poly, b: &Poly, x: &Symbol) -> Poly {
    let bc = b.coefficients_in(x);
    let db = bc.len() - 1;
    let lb = bc[db].clone();
    let mut r = a.clone();
    loop {
        let rc = r.coefficients_in(x);
        let dr = rc.len() - 1;
        if r.is_zero() || dr < db {
            return r;
        }
        let lr = rc[dr].clone();
        let shift = Monomial::var(x.clone(), (dr - db) as u32);
        r = r.mul(&lb).sub(&b.mul(&lr).mul_monomial(&shift));
    }
}

fn primitive_prs_gcd(a: &Poly, b: &Poly, x: &Symbol) -> Poly {
    let (mut r0, mut r1) = if a.degree_in(x) >= b.degree_in(x) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    loop {
        if r1.degree_in(x) == 0 {
            // r1 is primitive and free of x, hence a unit here
            return Poly::one();
        }
        let r = prem(&r0, &r1, x);
        if r.is_zero() {
            return primitive_part_in(&r1, x).monic();
        }
        r0 = r1;
        r1 = primitive_part_in(&r, x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Poly {
        Poly::var(Symbol::new(n))
    }

    fn c(n: i64) -> Poly {
        Poly::constant(Coeff::from_int(n))
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::var(Symbol::new("a"), 1);
        let b2 = Monomial::var(Symbol::new("b"), 2);
        let b = Monomial::var(Symbol::new("b"), 1);
        assert!(b2 > a);
        assert!(a > b);
        assert!(Monomial::one() < b);
    }

    #[test]
    fn exact_division() {
        let x = v("x");
        let y = v("y");
        let p = x.add(&y).mul(&x.sub(&y));
        let q = p.div_exact(&x.add(&y)).unwrap();
        assert_eq!(q, x.sub(&y));
        assert!(x.mul(&x).add(&c(1)).div_exact(&x.add(&y)).is_none());
    }

    #[test]
    fn gcd_multivariate() {
        let x = v("x");
        let y = v("y");
        let z = v("z");
        let g = x.add(&y.mul(&z)).add(&c(2));
        let a = g.mul(&x.sub(&z));
        let b = g.mul(&y.add(&c(3))).mul(&x);
        assert_eq!(a.gcd(&b), g.monic());
        assert_eq!(x.add(&c(1)).gcd(&x.sub(&c(1))), Poly::one());
    }

    #[test]
    fn gcd_with_monomial() {
        let x = v("x");
        let y = v("y");
        let a = x.mul(&x).mul(&y);
        let b = x.mul(&y).add(&x.mul(&x));
        assert_eq!(a.gcd(&b), x);
    }

    #[test]
    fn lorentz_reduction() {
        let b = v(BETA);
        let g = v(GAMMA);
        // (1 - β²)γ² → 1
        let p = c(1).sub(&b.mul(&b)).mul(&g.mul(&g));
        assert_eq!(p.reduce_lorentz(), c(1));
        // β³γ² → β(γ² − 1)
        let q = b.pow(3).mul(&g.pow(2));
        assert_eq!(q.reduce_lorentz(), b.mul(&g.pow(2).sub(&c(1))));
    }

    #[test]
    fn derivative() {
        let x = v("x");
        let y = v("y");
        let p = x.pow(3).mul(&y).add(&y);
        assert_eq!(
            p.diff(&Symbol::new("x")),
            x.pow(2).mul(&y).scale(&Coeff::from_int(3))
        );
    }
}

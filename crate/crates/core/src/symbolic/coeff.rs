//! Exact numbers in ℚ(i, √2).
//!
//! An element is stored as `(a + b√2) + i(c + d√2)` with rational `a, b, c, d`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Element of the real quadratic field ℚ(√2): `rat + surd·√2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    pub rat: BigRational,
    pub surd: BigRational,
}

impl QSqrt2 {
    pub fn zero() -> Self {
        QSqrt2 {
            rat: BigRational::zero(),
            surd: BigRational::zero(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        QSqrt2 {
            rat: r,
            surd: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        QSqrt2 {
            rat: &self.rat + &o.rat,
            surd: &self.surd + &o.surd,
        }
    }

    fn sub(&self, o: &Self) -> Self {
        QSqrt2 {
            rat: &self.rat - &o.rat,
            surd: &self.surd - &o.surd,
        }
    }

    fn mul(&self, o: &Self) -> Self {
        let two = BigRational::from_integer(BigInt::from(2));
        QSqrt2 {
            rat: &self.rat * &o.rat + two * &self.surd * &o.surd,
            surd: &self.rat * &o.surd + &self.surd * &o.rat,
        }
    }

    fn neg(&self) -> Self {
        QSqrt2 {
            rat: -&self.rat,
            surd: -&self.surd,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self> {
        let two = BigRational::from_integer(BigInt::from(2));
        let norm = &self.rat * &self.rat - two * &self.surd * &self.surd;
        if norm.is_zero() {
            return None;
        }
        Some(QSqrt2 {
            rat: &self.rat / &norm,
            surd: -&self.surd / &norm,
        })
    }

    fn to_f64(&self) -> f64 {
        self.rat.to_f64().unwrap_or(f64::NAN)
            + self.surd.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }
}

/// Element of ℚ(i, √2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coeff {
    pub re: QSqrt2,
    pub im: QSqrt2,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff {
            re: QSqrt2::zero(),
            im: QSqrt2::zero(),
        }
    }

    pub fn one() -> Self {
        Coeff::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Coeff::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Coeff {
            re: QSqrt2::from_rational(r),
            im: QSqrt2::zero(),
        }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator in Coeff::ratio");
        Coeff::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Coeff {
            re: QSqrt2::zero(),
            im: QSqrt2::from_rational(BigRational::one()),
        }
    }

    pub fn sqrt2() -> Self {
        Coeff {
            re: QSqrt2 {
                rat: BigRational::zero(),
                surd: BigRational::one(),
            },
            im: QSqrt2::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == Coeff::one()
    }

    /// Purely rational (no `i`, no `√2` component).
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.im.is_zero() && self.re.surd.is_zero() {
            Some(&self.re.rat)
        } else {
            None
        }
    }

    /// Purely imaginary and nonzero.
    pub fn is_pure_imaginary(&self) -> bool {
        self.re.is_zero() && !self.im.is_zero()
    }

    /// Real (no `i` component).
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Option<Coeff> {
        // (x + iy)^-1 = (x - iy) / (x² + y²); x² + y² ≠ 0 inside a real field.
        let norm = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let ninv = norm.inv()?;
        Some(Coeff {
            re: self.re.mul(&ninv),
            im: self.im.neg().mul(&ninv),
        })
    }

    pub fn pow(&self, e: u32) -> Coeff {
        let mut out = Coeff::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// The four rational components `[a, b, c, d]` of `a + b√2 + i(c + d√2)`.
    pub fn components(&self) -> [&BigRational; 4] {
        [&self.re.rat, &self.re.surd, &self.im.rat, &self.im.surd]
    }

    /// Number of nonzero components.
    pub fn support(&self) -> usize {
        self.components().iter().filter(|c| !c.is_zero()).count()
    }

    /// Sign of the first nonzero component, used to normalize leading coefficients.
    pub fn leading_sign_negative(&self) -> bool {
        self.components()
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_negative())
            .unwrap_or(false)
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        Coeff {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        Coeff {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        Coeff {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }
}

impl Div for &Coeff {
    type Output = Coeff;
    /// Panics on division by zero; callers check `inv` first where zero is possible.
    fn div(self, o: &Coeff) -> Coeff {
        self * &o.inv().expect("division by zero coefficient")
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text: a sum of `r`, `r*sqrt2`, `r*i`, `r*i*sqrt2` parts.
///
/// The output re-parses to the same value.
impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: [(&BigRational, &str); 4] = [
            (&self.re.rat, ""),
            (&self.re.surd, "sqrt2"),
            (&self.im.rat, "i"),
            (&self.im.surd, "i*sqrt2"),
        ];
        let mut first = true;
        for (r, unit) in parts {
            if r.is_zero() {
                continue;
            }
            let neg = r.is_negative();
            let mag = r.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            if unit.is_empty() {
                write_rational(f, &mag)?;
            } else if mag.is_one() {
                write!(f, "{unit}")?;
            } else {
                write_rational(f, &mag)?;
                write!(f, "*{unit}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn imaginary_parts_cancel() {
        let a = &Coeff::ratio(1, 2) + &Coeff::i();
        let b = &Coeff::ratio(1, 2) - &Coeff::i();
        assert_eq!(&a + &b, Coeff::one());
    }

    #[test]
    fn sqrt2_squares_to_two() {
        assert_eq!(&Coeff::sqrt2() * &Coeff::sqrt2(), Coeff::from_int(2));
    }

    #[test]
    fn inverse_of_mixed_element() {
        let x = &(&Coeff::from_int(3) + &Coeff::sqrt2()) + &(&Coeff::i() * &Coeff::ratio(2, 7));
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, Coeff::one());
        assert!(Coeff::zero().inv().is_none());
    }

    #[test]
    fn display() {
        let x = &(&Coeff::ratio(-3, 2) + &Coeff::sqrt2()) - &Coeff::i();
        assert_eq!(x.to_string(), "-3/2 + sqrt2 - i");
        assert_eq!(Coeff::zero().to_string(), "0");
        assert_eq!((&Coeff::i() * &Coeff::sqrt2()).to_string(), "i*sqrt2");
    }
}

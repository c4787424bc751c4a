//! Exact arithmetic in the field Q(i, sqrt 2).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ring::{rat, Ring};

/// `a + b sqrt2` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
struct Quad {
    a: BigRational,
    b: BigRational,
}

impl Quad {
    fn zero() -> Self {
        Quad { a: BigRational::zero(), b: BigRational::zero() }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn add(&self, o: &Quad) -> Quad {
        Quad { a: &self.a + &o.a, b: &self.b + &o.b }
    }

    fn sub(&self, o: &Quad) -> Quad {
        Quad { a: &self.a - &o.a, b: &self.b - &o.b }
    }

    fn neg(&self) -> Quad {
        Quad { a: -&self.a, b: -&self.b }
    }

    fn mul(&self, o: &Quad) -> Quad {
        if self.b.is_zero() && o.b.is_zero() {
            return Quad { a: &self.a * &o.a, b: BigRational::zero() };
        }
        let two = rat(2, 1);
        Quad {
            a: &self.a * &o.a + two * (&self.b * &o.b),
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }

    fn inv(&self) -> Option<Quad> {
        // (a - b sqrt2) / (a^2 - 2 b^2); the norm vanishes only at zero.
        let norm = &self.a * &self.a - rat(2, 1) * (&self.b * &self.b);
        if norm.is_zero() {
            return None;
        }
        Some(Quad { a: &self.a / &norm, b: -(&self.b / &norm) })
    }

    fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }
}

/// An element `a + b sqrt2 + i (c + d sqrt2)` of Q(i, sqrt 2).
///
/// Equality is component-wise and exact.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    re: Quad,
    im: Quad,
}

impl ExactScalar {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        ExactScalar { re: Quad { a, b }, im: Quad { a: c, b: d } }
    }

    pub fn rational(r: BigRational) -> Self {
        ExactScalar { re: Quad { a: r, b: BigRational::zero() }, im: Quad::zero() }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(rat(n, 1))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::rational(rat(n, d))
    }

    pub fn i() -> Self {
        ExactScalar { re: Quad::zero(), im: Quad { a: rat(1, 1), b: BigRational::zero() } }
    }

    pub fn sqrt2() -> Self {
        ExactScalar { re: Quad { a: BigRational::zero(), b: rat(1, 1) }, im: Quad::zero() }
    }

    /// The four rational components `(a, b, c, d)`.
    pub fn components(&self) -> [&BigRational; 4] {
        [&self.re.a, &self.re.b, &self.im.a, &self.im.b]
    }

    pub fn is_rational(&self) -> bool {
        self.re.b.is_zero() && self.im.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.re.a)
    }

    pub fn conj(&self) -> Self {
        ExactScalar { re: self.re.clone(), im: self.im.neg() }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.im.is_zero() {
            return self.re.inv().map(|re| ExactScalar { re, im: Quad::zero() });
        }
        // 1/(x + iy) = (x - iy)/(x^2 + y^2) with x, y in Q(sqrt2)
        let norm = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let ninv = norm.inv()?;
        Some(ExactScalar { re: self.re.mul(&ninv), im: self.im.neg().mul(&ninv) })
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        ExactScalar {
            re: Quad { a: &self.re.a * r, b: &self.re.b * r },
            im: Quad { a: &self.im.a * r, b: &self.im.b * r },
        }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_quad(q: &Quad) -> String {
    match (q.a.is_zero(), q.b.is_zero()) {
        (_, true) => fmt_rat(&q.a),
        (true, false) => format!("{}*sqrt2", fmt_rat(&q.b)),
        (false, false) => {
            let sign = if q.b.is_negative() { "-" } else { "+" };
            format!("{} {} {}*sqrt2", fmt_rat(&q.a), sign, fmt_rat(&q.b.abs()))
        }
    }
}

impl fmt::Display for ExactScalar {
    /// Canonical text: `p/q`, `p/q*sqrt2`, or `(re) + (im)*i` for complex values.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_quad(&self.re));
        }
        if self.re.is_zero() {
            if self.im.b.is_zero() {
                let r = &self.im.a;
                if r.is_one() {
                    return write!(f, "i");
                }
                if (-r).is_one() {
                    return write!(f, "-i");
                }
                return write!(f, "{}*i", fmt_rat(r));
            }
            return write!(f, "({})*i", fmt_quad(&self.im));
        }
        write!(f, "({}) + ({})*i", fmt_quad(&self.re), fmt_quad(&self.im))
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        ExactScalar::int(1)
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: &ExactScalar) -> ExactScalar {
        ExactScalar { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: &ExactScalar) -> ExactScalar {
        if self.im.is_zero() && o.im.is_zero() {
            return ExactScalar { re: self.re.mul(&o.re), im: Quad::zero() };
        }
        ExactScalar {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, o: ExactScalar) -> ExactScalar {
        &self + &o
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: ExactScalar) -> ExactScalar {
        &self - &o
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: ExactScalar) -> ExactScalar {
        &self * &o
    }
}

impl Div for ExactScalar {
    type Output = ExactScalar;
    /// Panics on division by zero, like the primitive numeric types.
    fn div(self, o: ExactScalar) -> ExactScalar {
        &self * &o.inv().expect("division by zero in Q(i, sqrt2)")
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { re: self.re.neg(), im: self.im.neg() }
    }
}

impl Ring for ExactScalar {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn from_int(n: i64) -> Self {
        ExactScalar::int(n)
    }
}

/// Coefficient fields usable inside [`Series`](super::Series).
pub trait Coeff: Ring + fmt::Display {
    fn from_rational(r: &BigRational) -> Self;

    fn inv(&self) -> Option<Self>;

    fn scale(&self, r: &BigRational) -> Self;

    fn to_complex(&self) -> Complex64;
}

impl Coeff for ExactScalar {
    fn from_rational(r: &BigRational) -> Self {
        ExactScalar::rational(r.clone())
    }
    fn inv(&self) -> Option<Self> {
        ExactScalar::inv(self)
    }
    fn scale(&self, r: &BigRational) -> Self {
        ExactScalar::scale(self, r)
    }
    fn to_complex(&self) -> Complex64 {
        ExactScalar::to_complex(self)
    }
}

impl Coeff for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn scale(&self, r: &BigRational) -> Self {
        self * r
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_squares_to_two() {
        let r2 = ExactScalar::sqrt2();
        assert_eq!(&r2 * &r2, ExactScalar::int(2));
    }

    #[test]
    fn i_squares_to_minus_one() {
        assert_eq!(&ExactScalar::i() * &ExactScalar::i(), ExactScalar::int(-1));
    }

    #[test]
    fn inverse_of_generic_element() {
        let x = ExactScalar::new(rat(1, 2), rat(-3, 1), rat(2, 7), rat(1, 1));
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, ExactScalar::one());
        assert!(ExactScalar::zero().inv().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(ExactScalar::frac(-3, 4).to_string(), "-3/4");
        assert_eq!(ExactScalar::sqrt2().inv().unwrap().to_string(), "1/2*sqrt2");
        assert_eq!(ExactScalar::i().to_string(), "i");
        assert_eq!(ExactScalar::frac(0, 1).to_string(), "0");
        assert_eq!((&ExactScalar::i() * &ExactScalar::frac(-1, 2)).to_string(), "-1/2*i");
    }

    #[test]
    fn embedding_into_complex() {
        let x = &ExactScalar::sqrt2().inv().unwrap() + &(&ExactScalar::i() * &ExactScalar::sqrt2().inv().unwrap());
        let c = x.to_complex();
        assert!((c.re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((c.im - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }
}

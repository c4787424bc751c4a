//! Taylor data for the elementary functions and a generic truncated power-series
//! evaluator over any algebra with a weight grading.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The elementary functions that can be composed with a nilpotent argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Elementary {
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Tan,
    Tanh,
}

impl Elementary {
    pub const ALL: [Elementary; 7] = [
        Elementary::Exp,
        Elementary::Sin,
        Elementary::Cos,
        Elementary::Sinh,
        Elementary::Cosh,
        Elementary::Tan,
        Elementary::Tanh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Elementary::Exp => "exp",
            Elementary::Sin => "sin",
            Elementary::Cos => "cos",
            Elementary::Sinh => "sinh",
            Elementary::Cosh => "cosh",
            Elementary::Tan => "tan",
            Elementary::Tanh => "tanh",
        }
    }

    pub fn from_name(name: &str) -> Option<Elementary> {
        Elementary::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Taylor coefficients `c_0 .. c_n` at the origin.
    pub fn taylor(self, n: usize) -> Vec<BigRational> {
        match self {
            Elementary::Exp => (0..=n).map(inv_factorial).collect(),
            Elementary::Sinh => (0..=n)
                .map(|k| if k % 2 == 1 { inv_factorial(k) } else { BigRational::zero() })
                .collect(),
            Elementary::Cosh => (0..=n)
                .map(|k| if k % 2 == 0 { inv_factorial(k) } else { BigRational::zero() })
                .collect(),
            Elementary::Sin => (0..=n)
                .map(|k| match k % 4 {
                    1 => inv_factorial(k),
                    3 => -inv_factorial(k),
                    _ => BigRational::zero(),
                })
                .collect(),
            Elementary::Cos => (0..=n)
                .map(|k| match k % 4 {
                    0 => inv_factorial(k),
                    2 => -inv_factorial(k),
                    _ => BigRational::zero(),
                })
                .collect(),
            Elementary::Tan => divide(&Elementary::Sin.taylor(n), &Elementary::Cos.taylor(n)),
            Elementary::Tanh => divide(&Elementary::Sinh.taylor(n), &Elementary::Cosh.taylor(n)),
        }
    }

    pub fn eval_f64(self, x: num_complex::Complex64) -> num_complex::Complex64 {
        match self {
            Elementary::Exp => x.exp(),
            Elementary::Sin => x.sin(),
            Elementary::Cos => x.cos(),
            Elementary::Sinh => x.sinh(),
            Elementary::Cosh => x.cosh(),
            Elementary::Tan => x.tan(),
            Elementary::Tanh => x.tanh(),
        }
    }
}

pub(crate) fn inv_factorial(k: usize) -> BigRational {
    let mut f = BigInt::one();
    for j in 2..=k {
        f *= BigInt::from(j);
    }
    BigRational::new(BigInt::one(), f)
}

/// Quotient of two power series with invertible constant denominator.
fn divide(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    let n = num.len();
    let d0 = den[0].clone();
    let mut q: Vec<BigRational> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = num[k].clone();
        for j in 1..=k {
            if j < den.len() {
                acc -= &den[j] * &q[k - j];
            }
        }
        q.push(acc / &d0);
    }
    q
}

/// An algebra graded by the weight of its series coefficients, in which
/// elements of positive valuation are nilpotent modulo truncation.
pub trait Graded: Clone {
    /// The multiplicative identity of the algebra `self` lives in.
    fn unit_like(&self) -> Self;

    fn mul_truncated(&self, rhs: &Self, order: i32) -> Result<Self>;

    fn add_scaled(&mut self, rhs: &Self, c: &BigRational);

    fn is_zero(&self) -> bool;

    /// Smallest weight of any coefficient term; `None` for zero.
    fn valuation(&self) -> Option<i32>;

    /// Truncate every coefficient at `order`.
    fn truncated(&self, order: i32) -> Self;
}

/// Evaluate `sum_k coeffs[k] x^k` truncated at weight `order`.
///
/// `x` must have strictly positive valuation so that `x^k` vanishes once
/// `k * val(x) > order`.
pub fn apply_power_series<A: Graded>(
    x: &A,
    coeffs: impl Fn(usize) -> BigRational,
    order: i32,
) -> Result<A> {
    let one = x.unit_like().truncated(order);
    let mut sum = one.clone();
    let c0 = coeffs(0);
    if !c0.is_one() {
        sum.add_scaled(&one, &(c0 - BigRational::one()));
    }
    if x.is_zero() {
        return Ok(sum);
    }
    match x.valuation() {
        Some(v) if v >= 1 => {}
        _ => {
            return Err(Error::Domain(
                "power series argument must have zero constant part and positive weight".into(),
            ))
        }
    }
    let x = x.truncated(order);
    let mut power = one;
    let mut k = 0usize;
    loop {
        k += 1;
        power = power.mul_truncated(&x, order)?;
        if power.is_zero() {
            break;
        }
        let c = coeffs(k);
        if !c.is_zero() {
            sum.add_scaled(&power, &c);
        }
    }
    Ok(sum)
}

/// Apply an elementary function to a graded nilpotent argument.
pub fn apply_elementary<A: Graded>(f: Elementary, x: &A, order: i32) -> Result<A> {
    let kmax = match x.valuation() {
        Some(v) if v >= 1 => (order.max(0) / v) as usize + 1,
        _ => 1,
    };
    let table = f.taylor(kmax);
    apply_power_series(x, |k| table.get(k).cloned().unwrap_or_else(BigRational::zero), order)
}

/// `(1 + u)^{-1}` for nilpotent `u`, i.e. the reciprocal of an element with unit constant part.
pub fn reciprocal_one_plus<A: Graded>(u: &A, order: i32) -> Result<A> {
    apply_power_series(
        u,
        |k| if k % 2 == 0 { BigRational::one() } else { -BigRational::one() },
        order,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    #[test]
    fn tan_coefficients() {
        let t = Elementary::Tan.taylor(7);
        assert_eq!(t[1], rat(1, 1));
        assert_eq!(t[3], rat(1, 3));
        assert_eq!(t[5], rat(2, 15));
        assert_eq!(t[7], rat(17, 315));
        assert!(t[2].is_zero() && t[4].is_zero());
    }

    #[test]
    fn tanh_coefficients() {
        let t = Elementary::Tanh.taylor(5);
        assert_eq!(t[1], rat(1, 1));
        assert_eq!(t[3], rat(-1, 3));
        assert_eq!(t[5], rat(2, 15));
    }

    #[test]
    fn taylor_matches_float_evaluation() {
        let x = num_complex::Complex64::new(0.05, 0.02);
        for f in Elementary::ALL {
            let c = f.taylor(12);
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            let mut p = num_complex::Complex64::new(1.0, 0.0);
            for ck in &c {
                acc += p * num_traits::ToPrimitive::to_f64(ck).unwrap();
                p *= x;
            }
            assert!((acc - f.eval_f64(x)).norm() < 1e-14, "{:?}", f);
        }
    }
}

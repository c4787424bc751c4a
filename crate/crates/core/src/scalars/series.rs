//! Truncated multivariate Laurent series in the deformation parameters.
//!
//! Every variable has weight one. A series carries a truncation order `N`:
//! its stored terms are exact up to total weight `N` and everything of
//! weight `N + 1` or more is unknown. Exact (polynomial) series have no
//! truncation order. Products propagate the unknown part the way big-O
//! terms do, so dividing by a monomial never fabricates precision.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::elementary::{apply_elementary, reciprocal_one_plus, Elementary, Graded};
use super::exact::Coeff;
use crate::error::{Error, Result};
use crate::ring::Ring;

pub const NVARS: usize = 6;

/// Exponents of `(z, theta, s, alpha, beta, delta)`.
pub type Exps = [i8; NVARS];

/// Internal sentinel for "no truncation".
pub(crate) const EXACT: i32 = i32::MAX / 4;

/// The formal variables. `eta = s^2` and `omega = s^4` are not variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Z = 0,
    Theta = 1,
    S = 2,
    Alpha = 3,
    Beta = 4,
    Delta = 5,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Z, Var::Theta, Var::S, Var::Alpha, Var::Beta, Var::Delta];

    pub fn name(self) -> &'static str {
        ["z", "theta", "s", "alpha", "beta", "delta"][self as usize]
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

pub fn weight(e: &Exps) -> i32 {
    e.iter().map(|&k| k as i32).sum()
}

pub(crate) fn ord_add(a: i32, b: i32) -> i32 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        (a + b).min(EXACT)
    }
}

/// Numeric values for every formal variable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Assignment {
    pub values: [Complex64; NVARS],
}

impl Assignment {
    pub fn new(z: Complex64, theta: Complex64, s: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Assignment { values: [z, theta, s, zero, zero, zero] }
    }

    pub fn real(z: f64, theta: f64, s: f64) -> Self {
        Self::new(Complex64::new(z, 0.0), Complex64::new(theta, 0.0), Complex64::new(s, 0.0))
    }

    pub fn with(mut self, v: Var, x: Complex64) -> Self {
        self.values[v as usize] = x;
        self
    }
}

#[derive(Clone, PartialEq)]
pub struct Series<C> {
    terms: BTreeMap<Exps, C>,
    order: i32,
}

impl<C: Coeff> Series<C> {
    /// The exact zero.
    pub fn zero_exact() -> Self {
        Series { terms: BTreeMap::new(), order: EXACT }
    }

    /// `O(w^{order+1})`: zero up to the given truncation order.
    pub fn zero_at(order: i32) -> Self {
        Series { terms: BTreeMap::new(), order: order.min(EXACT) }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial([0; NVARS], c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(C::from_int(n))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::constant(C::from_rational(r))
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v as usize] = 1;
        Self::monomial(e, C::one())
    }

    pub fn monomial(e: Exps, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Series { terms, order: EXACT }
    }

    /// `eta = s^2`.
    pub fn eta() -> Self {
        Self::monomial([0, 0, 2, 0, 0, 0], C::one())
    }

    /// `omega = s^4`.
    pub fn omega() -> Self {
        Self::monomial([0, 0, 4, 0, 0, 0], C::one())
    }

    pub(crate) fn from_parts(terms: BTreeMap<Exps, C>, order: i32) -> Self {
        let mut s = Series { terms, order };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        let order = self.order;
        self.terms.retain(|e, c| !c.is_zero() && weight(e) <= order);
    }

    /// Truncation order, or `None` for an exact series.
    pub fn order(&self) -> Option<i32> {
        (self.order < EXACT).then_some(self.order)
    }

    pub fn is_exact(&self) -> bool {
        self.order >= EXACT
    }

    /// Lower the truncation order to `order` (never raises it).
    pub fn truncate(&self, order: i32) -> Self {
        let mut s = self.clone();
        s.order = s.order.min(order);
        s.normalize();
        s
    }

    /// True when no term is stored; a truncated zero is still zero here.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Exps) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&[0; NVARS])
    }

    /// Smallest total weight of a stored term.
    pub fn valuation(&self) -> Option<i32> {
        self.terms.keys().map(weight).min()
    }

    pub(crate) fn raw_valuation(&self) -> i32 {
        self.valuation().unwrap_or(EXACT)
    }

    /// Highest power of `v` appearing.
    pub fn degree_in(&self, v: Var) -> i32 {
        self.terms.keys().map(|e| e[v as usize] as i32).max().unwrap_or(0)
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        let order = self.order.min(o.order);
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            match terms.get_mut(e) {
                Some(x) => *x = x.add_ref(c),
                None => {
                    terms.insert(*e, c.clone());
                }
            }
        }
        Series::from_parts(terms, order)
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&o.neg_ref())
    }

    pub fn neg_ref(&self) -> Self {
        Series {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
            order: self.order,
        }
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        let order = self
            .order_of_product(o)
            .min(ord_add(self.order, o.order).saturating_add(1).min(EXACT));
        let mut terms: BTreeMap<Exps, C> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let mut e = [0i8; NVARS];
                for k in 0..NVARS {
                    e[k] = ea[k] + eb[k];
                }
                if weight(&e) > order {
                    continue;
                }
                let c = ca.mul_ref(cb);
                match terms.get_mut(&e) {
                    Some(x) => *x = x.add_ref(&c),
                    None => {
                        terms.insert(e, c);
                    }
                }
            }
        }
        Series::from_parts(terms, order)
    }

    fn order_of_product(&self, o: &Self) -> i32 {
        ord_add(self.order, o.raw_valuation()).min(ord_add(o.order, self.raw_valuation()))
    }

    /// Multiply by a scalar.
    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Series::zero_at(self.order);
        }
        Series {
            terms: self.terms.iter().map(|(e, x)| (*e, x.mul_ref(c))).collect(),
            order: self.order,
        }
    }

    pub fn scale_rat(&self, r: &BigRational) -> Self {
        self.scale(&C::from_rational(r))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Series::from_int(1);
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Multiplicative inverse at this series' own truncation order.
    ///
    /// Single-term series invert exactly. Otherwise the unique lowest-weight
    /// term is factored out and the rest inverted geometrically, which needs a
    /// finite truncation order.
    pub fn inverse(&self) -> Result<Self> {
        self.inverse_impl(None)
    }

    /// Multiplicative inverse truncated at `order`.
    pub fn inverse_at(&self, order: i32) -> Result<Self> {
        self.inverse_impl(Some(order))
    }

    fn inverse_impl(&self, target: Option<i32>) -> Result<Self> {
        let Some(w) = self.valuation() else {
            return Err(Error::Domain("inverse of zero series".into()));
        };
        let lowest: Vec<(&Exps, &C)> = self.terms.iter().filter(|(e, _)| weight(e) == w).collect();
        if lowest.len() != 1 {
            return Err(Error::Domain(format!(
                "series {} has no unique leading term and cannot be inverted",
                self
            )));
        }
        let (e0, c0) = lowest[0];
        let cinv = Coeff::inv(c0).ok_or_else(|| Error::Domain("zero leading coefficient".into()))?;
        let mut einv = [0i8; NVARS];
        for k in 0..NVARS {
            einv[k] = -e0[k];
        }
        let lead_inv = Series::monomial(einv, cinv);
        if self.terms.len() == 1 {
            let inv = Series { order: if self.is_exact() { EXACT } else { self.order - 2 * w }, ..lead_inv };
            return Ok(match target {
                Some(t) => inv.truncate(t),
                None => inv,
            });
        }
        let normalized = self.mul_ref(&lead_inv);
        let u = normalized.sub_ref(&Series::from_int(1));
        let inner_order = match (target, normalized.order()) {
            (Some(t), Some(n)) => (t + w).min(n),
            (Some(t), None) => t + w,
            (None, Some(n)) => n,
            (None, None) => {
                return Err(Error::Domain("inverse of an exact non-monomial series needs a truncation order".into()))
            }
        };
        let r = reciprocal_one_plus(&u, inner_order)?;
        let out = r.mul_ref(&lead_inv);
        Ok(match target {
            Some(t) => out.truncate(t),
            None => out,
        })
    }

    /// `f(self)`, truncated at `order`; `self` must have positive valuation.
    pub fn compose_at(&self, f: Elementary, order: i32) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::Domain(format!("{}(a) needs a zero constant term", f.name())));
        }
        apply_elementary(f, self, order.min(self.order))
    }

    /// Evaluate numerically; negative exponents are allowed.
    pub fn evaluate(&self, a: &Assignment) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = c.to_complex();
            for k in 0..NVARS {
                if e[k] != 0 {
                    t *= a.values[k].powi(e[k] as i32);
                }
            }
            acc += t;
        }
        acc
    }

    /// Replace the variable `v` by `by`.
    ///
    /// The truncation order survives when `by` has positive valuation; a
    /// replacement of weight zero would mix the unknown tail into every weight.
    pub fn substitute(&self, v: Var, by: &Series<C>) -> Result<Self> {
        let idx = v as usize;
        let by_val = by.raw_valuation();
        if !self.is_exact() && by_val < 1 {
            return Err(Error::Domain(format!(
                "substituting weight-0 value for {} into a truncated series",
                v.name()
            )));
        }
        let mut out = Series::zero_at(if self.is_exact() { EXACT } else { self.order });
        let mut inv_by: Option<Series<C>> = None;
        let mut cache: BTreeMap<i8, Series<C>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[idx];
            let mut rest = *e;
            rest[idx] = 0;
            let base = Series::monomial(rest, c.clone());
            let p = match cache.get(&k) {
                Some(p) => p.clone(),
                None => {
                    let p = if k >= 0 {
                        by.pow(k as u32)
                    } else {
                        if inv_by.is_none() {
                            inv_by = Some(by.inverse()?);
                        }
                        inv_by.as_ref().unwrap().pow((-k) as u32)
                    };
                    cache.insert(k, p.clone());
                    p
                }
            };
            out = out.add_ref(&base.mul_ref(&p));
        }
        Ok(out)
    }

    /// Specialize `v = 0`; terms with negative powers of `v` are an error.
    pub fn set_zero(&self, v: Var) -> Result<Self> {
        let idx = v as usize;
        if self.terms.keys().any(|e| e[idx] < 0) {
            return Err(Error::Domain(format!("{} = 0 in a series with negative powers of it", v.name())));
        }
        let terms = self.terms.iter().filter(|(e, _)| e[idx] == 0).map(|(e, c)| (*e, c.clone())).collect();
        Ok(Series { terms, order: self.order })
    }

    /// Map every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        Series::from_parts(self.terms.iter().map(|(e, c)| (*e, f(c))).collect(), self.order)
    }

    /// Equality of the known parts up to the smaller of the two truncation orders.
    pub fn agrees_with(&self, o: &Self) -> bool {
        let n = self.order.min(o.order);
        self.truncate(n).terms == o.truncate(n).terms
    }
}

/// The checked arithmetic entry point: both operands must share their truncation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn series_arith<C: Coeff>(a: &Series<C>, b: &Series<C>, op: ArithOp) -> Result<Series<C>> {
    if a.order != b.order {
        let show = |o: Option<i32>| o.map_or("exact".to_string(), |n| n.to_string());
        return Err(Error::OrderMismatch { left: show(a.order()), right: show(b.order()) });
    }
    let r = match op {
        ArithOp::Add => a.add_ref(b),
        ArithOp::Sub => a.sub_ref(b),
        ArithOp::Mul => a.mul_ref(b),
    };
    Ok(if a.is_exact() { r } else { r.truncate(a.order) })
}

/// Taylor series of `f(a)` truncated at the order of `a`.
pub fn series_compose_elementary<C: Coeff>(f: Elementary, a: &Series<C>) -> Result<Series<C>> {
    match a.order() {
        Some(n) => a.compose_at(f, n),
        None if a.valuation().is_none() => a.compose_at(f, 0).map(|s| Series { order: EXACT, ..s }),
        None => Err(Error::Domain("elementary function of an exact series needs a truncation order".into())),
    }
}

fn fmt_monomial(e: &Exps) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        let k = e[v as usize];
        match k {
            0 => {}
            1 => parts.push(v.name().to_string()),
            _ => parts.push(format!("{}^{}", v.name(), k)),
        }
    }
    parts.join("*")
}

/// Canonical text of a single coefficient-times-monomial term.
pub(crate) fn fmt_term<C: Coeff>(c: &C, mono: &str) -> String {
    let cs = c.to_string();
    if mono.is_empty() {
        return cs;
    }
    if c.is_one() {
        return mono.to_string();
    }
    if *c == -C::one() {
        return format!("-{}", mono);
    }
    let simple = !cs.contains(' ') && !cs.starts_with('(');
    if simple {
        format!("{}*{}", cs, mono)
    } else {
        format!("({})*{}", cs, mono)
    }
}

/// Join signed term strings as `a + b - c`.
pub(crate) fn join_terms(terms: &[String]) -> String {
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        if k == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}

impl<C: Coeff> Series<C> {
    /// Terms in canonical order: ascending weight, then descending exponent tuple.
    pub fn sorted_terms(&self) -> Vec<(&Exps, &C)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(e, _)| (weight(e), Reverse(**e)));
        v
    }
}

impl<C: Coeff> fmt::Display for Series<C> {
    /// e.g. `z + 1/3*z^3*s^4 + O(8)`; the `O(n)` suffix marks the first unknown weight.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.sorted_terms().into_iter().map(|(e, c)| fmt_term(c, &fmt_monomial(e))).collect();
        let body = if parts.is_empty() { "0".to_string() } else { join_terms(&parts) };
        match self.order() {
            Some(n) => write!(f, "{} + O({})", body, n + 1),
            None => write!(f, "{}", body),
        }
    }
}

impl<C: Coeff> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coeff> Zero for Series<C> {
    fn zero() -> Self {
        Series::zero_exact()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coeff> One for Series<C> {
    fn one() -> Self {
        Series::from_int(1)
    }
}

impl<C: Coeff> Add for Series<C> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}

impl<C: Coeff> Sub for Series<C> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.sub_ref(&o)
    }
}

impl<C: Coeff> Mul for Series<C> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl<'a, C: Coeff> Add<&'a Series<C>> for &'a Series<C> {
    type Output = Series<C>;
    fn add(self, o: &Series<C>) -> Series<C> {
        self.add_ref(o)
    }
}

impl<'a, C: Coeff> Sub<&'a Series<C>> for &'a Series<C> {
    type Output = Series<C>;
    fn sub(self, o: &Series<C>) -> Series<C> {
        self.sub_ref(o)
    }
}

impl<'a, C: Coeff> Mul<&'a Series<C>> for &'a Series<C> {
    type Output = Series<C>;
    fn mul(self, o: &Series<C>) -> Series<C> {
        self.mul_ref(o)
    }
}

impl<C: Coeff> Neg for Series<C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

impl<C: Coeff> Ring for Series<C> {
    fn mul_ref(&self, rhs: &Self) -> Self {
        Series::mul_ref(self, rhs)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        Series::add_ref(self, rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        Series::sub_ref(self, rhs)
    }
    fn from_int(n: i64) -> Self {
        Series::from_int(n)
    }
}

impl<C: Coeff> Graded for Series<C> {
    fn unit_like(&self) -> Self {
        Series::from_int(1)
    }
    fn mul_truncated(&self, rhs: &Self, order: i32) -> Result<Self> {
        Ok(self.mul_ref(rhs).truncate(order))
    }
    fn add_scaled(&mut self, rhs: &Self, c: &BigRational) {
        *self = self.add_ref(&rhs.scale_rat(c));
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn valuation(&self) -> Option<i32> {
        Series::valuation(self)
    }
    fn truncated(&self, order: i32) -> Self {
        self.truncate(order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;
    use crate::scalars::ExactScalar;

    type S = Series<ExactScalar>;

    fn v(x: Var) -> S {
        S::var(x)
    }

    #[test]
    fn s_squared_is_eta() {
        assert_eq!(v(Var::S).mul_ref(&v(Var::S)), S::eta());
        assert_eq!(S::eta().pow(2), S::omega());
    }

    #[test]
    fn multiplicative_identity() {
        let a = v(Var::Z).add_ref(&S::eta());
        assert_eq!(a.mul_ref(&S::from_int(1)), a);
    }

    #[test]
    fn sinh_over_z() {
        // t is a weight-one placeholder; alpha plays that role here
        let t = v(Var::Alpha);
        let zt = v(Var::Z).mul_ref(&t);
        let sh = zt.compose_at(Elementary::Sinh, 5).unwrap();
        let q = sh.mul_ref(&v(Var::Z).inverse().unwrap()).truncate(4);
        let expected = t.add_ref(&v(Var::Z).pow(2).mul_ref(&t.pow(3)).scale_rat(&rat(1, 6)));
        assert_eq!(q.truncate(4).to_string(), expected.truncate(4).to_string());
    }

    #[test]
    fn tan_prefactor() {
        let x = v(Var::Z).mul_ref(&S::eta());
        let t = x.compose_at(Elementary::Tan, 9).unwrap();
        let q = t.mul_ref(&S::eta().inverse().unwrap()).truncate(7);
        let expected = v(Var::Z).add_ref(&v(Var::Z).pow(3).mul_ref(&S::omega()).scale_rat(&rat(1, 3)));
        assert!(q.agrees_with(&expected));
        assert_eq!(q.order(), Some(7));
    }

    #[test]
    fn division_by_monomial_lowers_order() {
        let x = v(Var::Z).mul_ref(&S::eta()).compose_at(Elementary::Sin, 6).unwrap();
        let q = x.mul_ref(&S::eta().inverse().unwrap());
        assert_eq!(q.order(), Some(4));
        assert_eq!(q.to_string(), "z + O(5)");
    }

    #[test]
    fn order_mismatch_is_reported() {
        let a = v(Var::Z).truncate(3);
        let b = v(Var::Z).truncate(4);
        assert!(matches!(series_arith(&a, &b, ArithOp::Add), Err(Error::OrderMismatch { .. })));
        assert!(series_arith(&a, &a, ArithOp::Mul).is_ok());
    }

    #[test]
    fn constant_term_rejected() {
        let a = S::from_int(1).add_ref(&v(Var::Z)).truncate(4);
        assert!(series_compose_elementary(Elementary::Exp, &a).is_err());
        let zero = S::zero_at(4);
        assert_eq!(series_compose_elementary(Elementary::Exp, &zero).unwrap().to_string(), "1 + O(5)");
    }

    #[test]
    fn evaluation() {
        let i = Complex64::new(0.0, 1.0);
        let a = Assignment::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), i);
        assert!((S::eta().evaluate(&a) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        let zt = v(Var::Z).mul_ref(&v(Var::Theta));
        assert!((zt.evaluate(&Assignment::real(2.0, 3.0, 0.0)) - Complex64::new(6.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn inverse_of_unit() {
        let a = S::from_int(1).add_ref(&v(Var::Z)).add_ref(&S::eta()).truncate(5);
        let b = a.inverse().unwrap();
        assert_eq!(a.mul_ref(&b).to_string(), "1 + O(6)");
    }

    #[test]
    fn substitution_and_specialization() {
        let a = v(Var::Theta).mul_ref(&v(Var::Z)).add_ref(&v(Var::Theta));
        let minus_iz = v(Var::Z).scale(&-ExactScalar::i());
        let b = a.substitute(Var::Theta, &minus_iz).unwrap();
        assert_eq!(b.to_string(), "-i*z - i*z^2");
        assert_eq!(a.set_zero(Var::Z).unwrap(), v(Var::Theta));
    }

    #[test]
    fn display_is_canonical() {
        let a = v(Var::Z).scale(&ExactScalar::int(-1)).sub_ref(&v(Var::Theta)).add_ref(&S::omega().scale_rat(&rat(1, 3)));
        assert_eq!(a.to_string(), "-z - theta + 1/3*s^4");
    }
}

//! Normal ordering in algebras presented by ordered generators and
//! rewrite rules `X_i X_j -> c X_j X_i + R_ij` (`i > j`), together with
//! tensor powers of such algebras.
//!
//! The same engine serves the deformed enveloping algebras (series
//! coefficients, `c = 1`) and the quantum coordinate algebras (Laurent
//! coefficients in `q`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalars::elementary::{apply_elementary, reciprocal_one_plus, Graded};
use crate::scalars::Elementary;
use crate::Series;

pub const MAX_GENS: usize = 8;

/// Exponent vector of a normal-ordered monomial.
pub type Mono = [u8; MAX_GENS];

pub const UNIT: Mono = [0; MAX_GENS];

pub fn mono_len(m: &Mono) -> u32 {
    m.iter().map(|&e| e as u32).sum()
}

/// The monomial as a word of generator indices.
pub fn mono_word(m: &Mono) -> Vec<usize> {
    let mut w = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        for _ in 0..e {
            w.push(i);
        }
    }
    w
}

pub fn fmt_mono(m: &Mono, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

/// Coefficient rings the engine can run over.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Zero with no truncation attached; truncated zeros are kept as order markers.
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Drop everything beyond weight `order`; a no-op for ungraded rings.
    fn truncate(&self, order: i32) -> Self;
    /// Lowest weight present (0 for ungraded rings).
    fn weight(&self) -> i32;
    /// Render `self * basis`; `basis` is empty for the unit monomial.
    fn scaled(&self, basis: &str) -> String;
}

impl Coefficient for Series {
    fn zero() -> Self {
        Series::zero_exact()
    }
    fn one() -> Self {
        Series::from_int(1)
    }
    fn is_zero(&self) -> bool {
        Series::is_zero(self)
    }
    fn is_exact_zero(&self) -> bool {
        Series::is_zero(self) && self.is_exact()
    }
    fn add(&self, o: &Self) -> Self {
        self.add_ref(o)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn truncate(&self, order: i32) -> Self {
        Series::truncate(self, order)
    }
    fn weight(&self) -> i32 {
        self.valuation().unwrap_or(0)
    }
    fn scaled(&self, basis: &str) -> String {
        if basis.is_empty() {
            let s = self.to_string();
            return if self.len() > 1 || s.contains(" + O(") { format!("({})", s) } else { s };
        }
        crate::liealg::fmt_scaled(self, basis)
    }
}

/// A linear combination of normal-ordered monomials.
///
/// Truncated zero coefficients are kept so that the precision of a result
/// survives cancellation; they are invisible to equality and display.
#[derive(Clone)]
pub struct Poly<C> {
    terms: BTreeMap<Mono, C>,
}

impl<C: Coefficient> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Poly::monomial(UNIT, c)
    }

    pub fn one() -> Self {
        Poly::constant(C::one())
    }

    pub fn gen(i: usize) -> Self {
        let mut m = UNIT;
        m[i] = 1;
        Poly::monomial(m, C::one())
    }

    pub fn monomial(m: Mono, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_exact_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// All stored terms, including truncated zeros.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn nonzero_terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter().filter(|(_, c)| !c.is_zero())
    }

    pub fn len(&self) -> usize {
        self.nonzero_terms().count()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn coeff(&self, m: &Mono) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// The coefficient of the unit monomial when it is the only term.
    pub fn as_constant(&self) -> Option<C> {
        if self.nonzero_terms().any(|(m, _)| *m != UNIT) {
            return None;
        }
        Some(self.coeff(&UNIT))
    }

    pub fn add_term(&mut self, m: Mono, c: &C) {
        if c.is_exact_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = x.add(c);
                if x.is_exact_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        self.map_coeffs(|c| c.mul(k))
    }

    pub fn truncate(&self, order: i32) -> Self {
        self.map_coeffs(|c| c.truncate(order))
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, &f(c));
        }
        out
    }

    pub fn try_map_coeffs(&self, f: impl Fn(&C) -> Result<C>) -> Result<Self> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, &f(c)?);
        }
        Ok(out)
    }

    /// Lowest coefficient weight over all terms.
    pub fn weight(&self) -> Option<i32> {
        self.nonzero_terms().map(|(_, c)| c.weight()).min()
    }

    /// Highest word length present.
    pub fn degree(&self) -> u32 {
        self.nonzero_terms().map(|(m, _)| mono_len(m)).max().unwrap_or(0)
    }

    /// Terms sorted by word length, then by exponents with earlier generators first.
    pub fn sorted_terms(&self) -> Vec<(&Mono, &C)> {
        let mut v: Vec<_> = self.nonzero_terms().collect();
        v.sort_by(|a, b| mono_len(a.0).cmp(&mono_len(b.0)).then(b.0.cmp(a.0)));
        v
    }

    pub fn display(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| c.scaled(&fmt_mono(m, names)))
            .collect();
        crate::liealg::fmt_sum(parts)
    }
}

impl<C: Coefficient> PartialEq for Poly<C> {
    fn eq(&self, o: &Self) -> bool {
        self.nonzero_terms().eq(o.nonzero_terms())
    }
}

impl<C: Coefficient> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..MAX_GENS).map(|i| format!("X{}", i)).collect();
        write!(f, "{}", self.display(&names))
    }
}

/// A linear combination of tensor products of normal-ordered monomials.
#[derive(Clone)]
pub struct Tensor<C> {
    arity: usize,
    terms: BTreeMap<Vec<Mono>, C>,
}

impl<C: Coefficient> Tensor<C> {
    pub fn zero(arity: usize) -> Self {
        Tensor { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Tensor::constant(arity, C::one())
    }

    pub fn constant(arity: usize, c: C) -> Self {
        let mut t = Tensor::zero(arity);
        t.add_term(vec![UNIT; arity], &c);
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Mono>, &C)> {
        self.terms.iter()
    }

    pub fn nonzero_terms(&self) -> impl Iterator<Item = (&Vec<Mono>, &C)> {
        self.terms.iter().filter(|(_, c)| !c.is_zero())
    }

    pub fn len(&self) -> usize {
        self.nonzero_terms().count()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn add_term(&mut self, k: Vec<Mono>, c: &C) {
        if c.is_exact_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(x) => {
                *x = x.add(c);
                if x.is_exact_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    /// `f_1 (x) f_2 (x) ...`.
    pub fn product_of(factors: &[Poly<C>]) -> Self {
        let mut t = Tensor::constant(0, C::one());
        for f in factors {
            let mut next = Tensor::zero(t.arity + 1);
            for (k, c) in &t.terms {
                for (m, d) in &f.terms {
                    let mut key = k.clone();
                    key.push(*m);
                    next.add_term(key, &c.mul(d));
                }
            }
            t = next;
        }
        t
    }

    /// `self (x) p`.
    pub fn extend(&self, p: &Poly<C>) -> Self {
        let mut next = Tensor::zero(self.arity + 1);
        for (k, c) in &self.terms {
            for (m, d) in &p.terms {
                let mut key = k.clone();
                key.push(*m);
                next.add_term(key, &c.mul(d));
            }
        }
        next
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.arity, o.arity, "tensor arity mismatch");
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &C) -> Self {
        self.map_coeffs(|c| c.mul(k))
    }

    pub fn truncate(&self, order: i32) -> Self {
        self.map_coeffs(|c| c.truncate(order))
    }

    pub fn map_coeffs(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Tensor::zero(self.arity);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &f(c));
        }
        out
    }

    pub fn try_map_coeffs(&self, f: impl Fn(&C) -> Result<C>) -> Result<Self> {
        let mut out = Tensor::zero(self.arity);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &f(c)?);
        }
        Ok(out)
    }

    pub fn weight(&self) -> Option<i32> {
        self.nonzero_terms().map(|(_, c)| c.weight()).min()
    }

    /// Swap the two factors of a rank-two tensor.
    pub fn flip(&self) -> Self {
        let mut out = Tensor::zero(self.arity);
        for (k, c) in &self.terms {
            let mut k2 = k.clone();
            k2.reverse();
            out.add_term(k2, c);
        }
        out
    }

    /// Apply a linear map on one factor.
    pub fn map_factor(&self, slot: usize, f: impl Fn(&Mono) -> Poly<C>) -> Self {
        let mut out = Tensor::zero(self.arity);
        for (k, c) in &self.terms {
            for (m, d) in f(&k[slot]).terms() {
                let mut k2 = k.clone();
                k2[slot] = *m;
                out.add_term(k2, &c.mul(d));
            }
        }
        out
    }

    /// Contract one factor with the counit (kills every non-unit monomial).
    pub fn counit_on(&self, slot: usize) -> Self {
        let mut out = Tensor::zero(self.arity - 1);
        for (k, c) in &self.terms {
            if k[slot] == UNIT {
                let mut k2 = k.clone();
                k2.remove(slot);
                out.add_term(k2, c);
            }
        }
        out
    }

    /// Collapse a one-factor tensor to a polynomial.
    pub fn to_poly(&self) -> Poly<C> {
        assert_eq!(self.arity, 1);
        let mut p = Poly::zero();
        for (k, c) in &self.terms {
            p.add_term(k[0], c);
        }
        p
    }

    pub fn display(&self, names: &[String]) -> String {
        let mut v: Vec<_> = self.nonzero_terms().collect();
        v.sort_by(|a, b| {
            let la: Vec<u32> = a.0.iter().map(mono_len).collect();
            let lb: Vec<u32> = b.0.iter().map(mono_len).collect();
            la.iter().sum::<u32>().cmp(&lb.iter().sum()).then(la.cmp(&lb)).then(b.0.cmp(a.0))
        });
        let parts: Vec<String> = v
            .into_iter()
            .map(|(k, c)| {
                let basis: Vec<String> = k
                    .iter()
                    .map(|m| if *m == UNIT { "1".to_string() } else { fmt_mono(m, names) })
                    .collect();
                c.scaled(&basis.join("@"))
            })
            .collect();
        crate::liealg::fmt_sum(parts)
    }
}

impl<C: Coefficient> PartialEq for Tensor<C> {
    fn eq(&self, o: &Self) -> bool {
        self.arity == o.arity && self.nonzero_terms().eq(o.nonzero_terms())
    }
}

impl<C: Coefficient> fmt::Debug for Tensor<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..MAX_GENS).map(|i| format!("X{}", i)).collect();
        write!(f, "{}", self.display(&names))
    }
}

#[derive(Clone)]
struct Rule<C> {
    c: C,
    r: Poly<C>,
}

/// An associative algebra with a PBW-type basis of ordered monomials.
pub struct Algebra<C> {
    names: Vec<String>,
    rules: Vec<Option<Rule<C>>>,
    order: Option<i32>,
    gen_memo: RwLock<HashMap<(Mono, usize, i32), Poly<C>>>,
    mono_memo: RwLock<HashMap<(Mono, Mono, i32), Poly<C>>>,
}

impl<C: Coefficient> Clone for Algebra<C> {
    fn clone(&self) -> Self {
        Algebra {
            names: self.names.clone(),
            rules: self.rules.clone(),
            order: self.order,
            gen_memo: RwLock::new(HashMap::new()),
            mono_memo: RwLock::new(HashMap::new()),
        }
    }
}

impl<C: Coefficient> fmt::Debug for Algebra<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra").field("names", &self.names).field("order", &self.order).finish()
    }
}

impl<C: Coefficient> Algebra<C> {
    /// An algebra with no rules yet; `order` bounds coefficient weights.
    pub fn new<S: AsRef<str>>(names: &[S], order: Option<i32>) -> Self {
        let n = names.len();
        assert!(n <= MAX_GENS, "at most {} generators", MAX_GENS);
        Algebra {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            rules: vec![None; n * n],
            order,
            gen_memo: RwLock::new(HashMap::new()),
            mono_memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> Option<i32> {
        self.order
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn clear_memo(&self) {
        self.gen_memo.write().expect("memo lock").clear();
        self.mono_memo.write().expect("memo lock").clear();
    }

    fn trunc(&self, c: C) -> C {
        match self.order {
            Some(n) => c.truncate(n),
            None => c,
        }
    }

    /// Install `X_i X_j -> c X_j X_i + r` for `i > j`.
    ///
    /// Every term of `r` must lower the rewriting measure: either it is a
    /// word of length at most two (hence already ordered) or its
    /// coefficient has positive weight.
    pub fn set_rule(&mut self, i: usize, j: usize, c: C, r: Poly<C>) -> Result<()> {
        if i <= j {
            return Err(Error::Internal(format!("rule ({}, {}) is not an inversion", i, j)));
        }
        for (m, k) in r.nonzero_terms() {
            if mono_len(m) > 2 && k.weight() <= 0 {
                return Err(Error::Internal(format!(
                    "rule for {}{} does not decrease the rewriting measure at {}",
                    self.names[i],
                    self.names[j],
                    fmt_mono(m, &self.names)
                )));
            }
        }
        let n = self.dim();
        self.rules[i * n + j] = Some(Rule { c, r });
        self.clear_memo();
        Ok(())
    }

    /// Install the commutator `[X_a, X_b] = value`.
    pub fn set_commutator(&mut self, a: usize, b: usize, value: Poly<C>) -> Result<()> {
        match a.cmp(&b) {
            std::cmp::Ordering::Greater => self.set_rule(a, b, C::one(), value),
            std::cmp::Ordering::Less => self.set_rule(b, a, C::one(), value.neg()),
            std::cmp::Ordering::Equal => Err(Error::Internal("commutator of a generator with itself".into())),
        }
    }

    pub fn has_rule(&self, i: usize, j: usize) -> bool {
        self.rules[i * self.dim() + j].is_some()
    }

    /// The stored right-hand side `(c, R)` of the rule for `X_i X_j`, `i > j`.
    pub fn rule(&self, i: usize, j: usize) -> Option<(&C, &Poly<C>)> {
        self.rules[i * self.dim() + j].as_ref().map(|r| (&r.c, &r.r))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| self.has_rule(i, j)))
    }

    /// `m * X_j` in normal form.
    pub fn mul_gen(&self, m: &Mono, j: usize) -> Result<Poly<C>> {
        self.mul_gen_within(m, j, self.order)
    }

    /// A caller's remaining weight budget, else the algebra's order.
    ///
    /// Rule coefficients carry their own truncation, so a budget above the
    /// algebra's order only keeps exact reorderings exact.
    fn budget(&self, b: Option<i32>) -> Option<i32> {
        b.or(self.order)
    }

    fn trunc_at(c: C, budget: Option<i32>) -> C {
        match budget {
            Some(n) => c.truncate(n),
            None => c,
        }
    }

    /// Budget left for a factor that multiplies a coefficient of weight `w`.
    fn spend(budget: Option<i32>, w: i32) -> Option<i32> {
        budget.map(|b| b - w.max(0))
    }

    /// `m * X_j` with coefficients kept up to weight `budget`.
    ///
    /// A rewrite can lengthen a word only through a coefficient of positive
    /// weight, so shrinking the budget along the recursion bounds its depth.
    fn mul_gen_within(&self, m: &Mono, j: usize, budget: Option<i32>) -> Result<Poly<C>> {
        let budget = self.budget(budget);
        let top = (0..self.dim()).rev().find(|&i| m[i] > 0);
        match top {
            None => return Ok(Poly::gen(j)),
            Some(i) if i <= j => {
                let mut m2 = *m;
                m2[j] += 1;
                return Ok(Poly::monomial(m2, C::one()));
            }
            _ => {}
        }
        let key = (*m, j, budget.unwrap_or(i32::MAX));
        if let Some(v) = self.gen_memo.read().expect("memo lock").get(&key) {
            return Ok(v.clone());
        }
        let i = top.expect("checked above");
        let rule = self.rules[i * self.dim() + j].as_ref().ok_or_else(|| {
            Error::Internal(format!("no rewrite rule for {}{}", self.names[i], self.names[j]))
        })?;
        let mut head = *m;
        head[i] -= 1;
        // head X_i X_j = c head X_j X_i + head R
        let hj = self.mul_gen_within(&head, j, budget)?;
        let mut out = Poly::zero();
        for (hm, hc) in hj.terms() {
            let k = Self::trunc_at(hc.mul(&rule.c), budget);
            if k.is_zero() {
                out.add_term(UNIT, &k);
                continue;
            }
            for (mm, mc) in self.mul_gen_within(hm, i, Self::spend(budget, k.weight()))?.terms() {
                out.add_term(*mm, &Self::trunc_at(k.mul(mc), budget));
            }
        }
        for (rm, rc) in rule.r.terms() {
            let rc = Self::trunc_at(rc.clone(), budget);
            if rc.is_zero() {
                out.add_term(UNIT, &rc);
                continue;
            }
            for (mm, mc) in self.mono_mul_within(&head, rm, Self::spend(budget, rc.weight()))?.terms() {
                out.add_term(*mm, &Self::trunc_at(rc.mul(mc), budget));
            }
        }
        self.gen_memo.write().expect("memo lock").insert(key, out.clone());
        Ok(out)
    }

    /// Product of two normal-ordered monomials.
    pub fn mono_mul(&self, a: &Mono, b: &Mono) -> Result<Poly<C>> {
        self.mono_mul_within(a, b, self.order)
    }

    fn mono_mul_within(&self, a: &Mono, b: &Mono, budget: Option<i32>) -> Result<Poly<C>> {
        let budget = self.budget(budget);
        if *b == UNIT {
            return Ok(Poly::monomial(*a, C::one()));
        }
        let key = (*a, *b, budget.unwrap_or(i32::MAX));
        if let Some(v) = self.mono_memo.read().expect("memo lock").get(&key) {
            return Ok(v.clone());
        }
        let mut acc = Poly::monomial(*a, C::one());
        for j in mono_word(b) {
            let mut next = Poly::zero();
            for (m, c) in acc.terms() {
                if c.is_zero() {
                    next.add_term(UNIT, c);
                    continue;
                }
                for (mm, mc) in self.mul_gen_within(m, j, Self::spend(budget, c.weight()))?.terms() {
                    next.add_term(*mm, &Self::trunc_at(c.mul(mc), budget));
                }
            }
            acc = next;
        }
        self.mono_memo.write().expect("memo lock").insert(key, acc.clone());
        Ok(acc)
    }

    /// Product truncated at `order` (or the algebra's own order).
    pub fn mul_at(&self, a: &Poly<C>, b: &Poly<C>, order: Option<i32>) -> Result<Poly<C>> {
        let mut out = Poly::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let mut k = ca.mul(cb);
                if let Some(n) = order {
                    k = k.truncate(n);
                }
                if k.is_zero() {
                    out.add_term(UNIT, &k);
                    continue;
                }
                let within = Self::spend(self.budget(order), k.weight());
                for (m, c) in self.mono_mul_within(ma, mb, within)?.terms() {
                    let mut v = k.mul(c);
                    if let Some(n) = order {
                        v = v.truncate(n);
                    }
                    out.add_term(*m, &v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, a: &Poly<C>, b: &Poly<C>) -> Result<Poly<C>> {
        self.mul_at(a, b, self.order)
    }

    pub fn commutator(&self, a: &Poly<C>, b: &Poly<C>) -> Result<Poly<C>> {
        Ok(self.mul(a, b)?.sub(&self.mul(b, a)?))
    }

    /// Normal form of an arbitrary word of generator indices.
    pub fn word(&self, w: &[usize]) -> Result<Poly<C>> {
        let mut acc: Poly<C> = Poly::one();
        for &j in w {
            let mut next = Poly::zero();
            for (m, c) in acc.terms() {
                if c.is_zero() {
                    next.add_term(UNIT, c);
                    continue;
                }
                for (mm, mc) in self.mul_gen_within(m, j, Self::spend(self.order, c.weight()))?.terms() {
                    next.add_term(*mm, &self.trunc(c.mul(mc)));
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Normal form of a word by naive rewriting of adjacent inversions,
    /// the position of each rewrite chosen by `pick` among the candidates.
    ///
    /// Independent of the memoised recursion used by [`Algebra::word`]; the two
    /// agreeing on random words is the confluence check.
    pub fn word_by_strategy(&self, w: &[usize], mut pick: impl FnMut(usize) -> usize) -> Result<Poly<C>> {
        let n = self.dim();
        let mut pending: Vec<(Vec<usize>, C)> = vec![(w.to_vec(), C::one())];
        let mut out = Poly::zero();
        let mut steps = 0usize;
        while let Some((word, c)) = pending.pop() {
            steps += 1;
            if steps > 5_000_000 {
                return Err(Error::Internal("normal ordering did not terminate".into()));
            }
            let inv: Vec<usize> = (0..word.len().saturating_sub(1)).filter(|&k| word[k] > word[k + 1]).collect();
            if inv.is_empty() {
                let mut m = UNIT;
                for &g in &word {
                    m[g] += 1;
                }
                out.add_term(m, &c);
                continue;
            }
            let k = inv[pick(inv.len()) % inv.len()];
            let (i, j) = (word[k], word[k + 1]);
            let rule = self.rules[i * n + j].as_ref().ok_or_else(|| {
                Error::Internal(format!("no rewrite rule for {}{}", self.names[i], self.names[j]))
            })?;
            let swapped_c = self.trunc(c.mul(&rule.c));
            if !swapped_c.is_zero() {
                let mut w2 = word.clone();
                w2.swap(k, k + 1);
                pending.push((w2, swapped_c));
            }
            for (rm, rc) in rule.r.terms() {
                let cc = self.trunc(c.mul(rc));
                if cc.is_zero() {
                    continue;
                }
                let mut w2 = word[..k].to_vec();
                w2.extend(mono_word(rm));
                w2.extend_from_slice(&word[k + 2..]);
                pending.push((w2, cc));
            }
        }
        Ok(out)
    }

    /// Factor-wise product of tensors.
    pub fn tensor_mul_at(&self, a: &Tensor<C>, b: &Tensor<C>, order: Option<i32>) -> Result<Tensor<C>> {
        assert_eq!(a.arity, b.arity, "tensor arity mismatch");
        let mut out = Tensor::zero(a.arity);
        for (ka, ca) in a.terms() {
            for (kb, cb) in b.terms() {
                let mut k = ca.mul(cb);
                if let Some(n) = order {
                    k = k.truncate(n);
                }
                if k.is_zero() {
                    out.add_term(vec![UNIT; a.arity], &k);
                    continue;
                }
                let within = Self::spend(self.budget(order), k.weight());
                let mut partial: Vec<(Vec<Mono>, C)> = vec![(Vec::with_capacity(a.arity), k)];
                for f in 0..a.arity {
                    let p = self.mono_mul_within(&ka[f], &kb[f], within)?;
                    let mut next = Vec::with_capacity(partial.len() * p.len());
                    for (key, c) in &partial {
                        for (m, d) in p.terms() {
                            let mut v = c.mul(d);
                            if let Some(n) = order {
                                v = v.truncate(n);
                            }
                            if v.is_exact_zero() {
                                continue;
                            }
                            let mut key2 = key.clone();
                            key2.push(*m);
                            next.push((key2, v));
                        }
                    }
                    partial = next;
                }
                for (key, c) in partial {
                    out.add_term(key, &c);
                }
            }
        }
        Ok(out)
    }

    pub fn tensor_mul(&self, a: &Tensor<C>, b: &Tensor<C>) -> Result<Tensor<C>> {
        self.tensor_mul_at(a, b, self.order)
    }

    /// Specialise every rule coefficient; the result has fresh memo tables.
    pub fn try_map_rules(&self, f: impl Fn(&C) -> Result<C>) -> Result<Self> {
        let mut out = self.clone();
        for r in out.rules.iter_mut().flatten() {
            r.c = f(&r.c)?;
            r.r = r.r.try_map_coeffs(&f)?;
        }
        Ok(out)
    }
}

/// A coproduct on generators, extended multiplicatively.
#[derive(Clone)]
pub struct Coproduct<C> {
    pub images: Vec<Tensor<C>>,
}

impl<C: Coefficient> Coproduct<C> {
    pub fn new(images: Vec<Tensor<C>>) -> Self {
        Coproduct { images }
    }

    pub fn of_mono(&self, alg: &Algebra<C>, m: &Mono) -> Result<Tensor<C>> {
        let mut acc = Tensor::one(2);
        for j in mono_word(m) {
            acc = alg.tensor_mul(&acc, &self.images[j])?;
        }
        Ok(acc)
    }

    pub fn apply(&self, alg: &Algebra<C>, p: &Poly<C>) -> Result<Tensor<C>> {
        let mut out = Tensor::zero(2);
        for (m, c) in p.terms() {
            out = out.add(&self.of_mono(alg, m)?.scale(c));
        }
        Ok(out.truncate_opt(alg.order))
    }

    /// Apply the coproduct to factor `slot` of a tensor, raising its arity by one.
    pub fn apply_on(&self, alg: &Algebra<C>, t: &Tensor<C>, slot: usize) -> Result<Tensor<C>> {
        let mut cache: HashMap<Mono, Tensor<C>> = HashMap::new();
        let mut out = Tensor::zero(t.arity + 1);
        for (k, c) in t.terms() {
            if !cache.contains_key(&k[slot]) {
                cache.insert(k[slot], self.of_mono(alg, &k[slot])?);
            }
            let d = &cache[&k[slot]];
            for (dk, dc) in d.terms() {
                let mut key = k[..slot].to_vec();
                key.extend_from_slice(dk);
                key.extend_from_slice(&k[slot + 1..]);
                let mut v = c.mul(dc);
                if let Some(n) = alg.order {
                    v = v.truncate(n);
                }
                out.add_term(key, &v);
            }
        }
        Ok(out)
    }

    pub fn map_images(&self, f: impl Fn(&Tensor<C>) -> Result<Tensor<C>>) -> Result<Self> {
        Ok(Coproduct { images: self.images.iter().map(f).collect::<Result<_>>()? })
    }
}

impl<C: Coefficient> Tensor<C> {
    pub fn truncate_opt(&self, order: Option<i32>) -> Self {
        match order {
            Some(n) => self.truncate(n),
            None => self.clone(),
        }
    }

    /// Place a tensor into a higher tensor power: `slots[f]` is the target of factor `f`.
    pub fn embed(&self, arity: usize, slots: &[usize]) -> Self {
        let mut out = Tensor::zero(arity);
        for (k, c) in self.terms() {
            let mut key = vec![UNIT; arity];
            for (f, &s) in slots.iter().enumerate() {
                key[s] = k[f];
            }
            out.add_term(key, c);
        }
        out
    }
}

/// An algebra value bound to its algebra, for the generic series evaluator.
#[derive(Clone)]
pub struct InAlg<'a, T> {
    pub alg: &'a Algebra<Series>,
    pub v: T,
}

impl<'a> Graded for InAlg<'a, Poly<Series>> {
    fn unit_like(&self) -> Self {
        InAlg { alg: self.alg, v: Poly::one() }
    }
    fn mul_truncated(&self, rhs: &Self, order: i32) -> Result<Self> {
        Ok(InAlg { alg: self.alg, v: self.alg.mul_at(&self.v, &rhs.v, Some(order))? })
    }
    fn add_scaled(&mut self, rhs: &Self, c: &BigRational) {
        self.v = self.v.add(&rhs.v.scale(&Series::from_rational(c)));
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero()
    }
    fn valuation(&self) -> Option<i32> {
        self.v.weight()
    }
    fn truncated(&self, order: i32) -> Self {
        InAlg { alg: self.alg, v: self.v.truncate(order) }
    }
}

impl<'a> Graded for InAlg<'a, Tensor<Series>> {
    fn unit_like(&self) -> Self {
        InAlg { alg: self.alg, v: Tensor::one(self.v.arity) }
    }
    fn mul_truncated(&self, rhs: &Self, order: i32) -> Result<Self> {
        Ok(InAlg { alg: self.alg, v: self.alg.tensor_mul_at(&self.v, &rhs.v, Some(order))? })
    }
    fn add_scaled(&mut self, rhs: &Self, c: &BigRational) {
        self.v = self.v.add(&rhs.v.scale(&Series::from_rational(c)));
    }
    fn is_zero(&self) -> bool {
        self.v.is_zero()
    }
    fn valuation(&self) -> Option<i32> {
        self.v.weight()
    }
    fn truncated(&self, order: i32) -> Self {
        InAlg { alg: self.alg, v: self.v.truncate(order) }
    }
}

fn min_order<'a>(cs: impl Iterator<Item = &'a Series>) -> Option<i32> {
    cs.filter_map(|c| c.order()).min()
}

/// Apply an elementary function to an algebra element.
pub fn apply_poly(alg: &Algebra<Series>, f: Elementary, p: &Poly<Series>, order: i32) -> Result<Poly<Series>> {
    if let Some(c) = p.as_constant() {
        return Ok(Poly::constant(c.compose_at(f, order)?));
    }
    let (c0, rest) = split_constant(p);
    if !c0.is_zero() {
        return Err(Error::Domain(format!("{} of an element with a constant part", f.name())));
    }
    Ok(apply_elementary(f, &InAlg { alg, v: rest }, order)?.v)
}

fn split_constant(p: &Poly<Series>) -> (Series, Poly<Series>) {
    let c0 = p.coeff(&UNIT);
    let mut rest = p.clone();
    if !c0.is_zero() {
        rest.terms.remove(&UNIT);
    }
    (c0, rest)
}

/// `1/p` for `p` with an invertible constant part and nilpotent remainder.
pub fn reciprocal_poly(alg: &Algebra<Series>, p: &Poly<Series>, order: i32) -> Result<Poly<Series>> {
    let (c0, rest) = split_constant(p);
    let inv0 = c0.inverse_at(order)?;
    let u = rest.scale(&inv0);
    Ok(reciprocal_one_plus(&InAlg { alg, v: u }, order)?.v.scale(&inv0).truncate(order))
}

/// Formula context evaluating into the algebra; `overrides` re-bind generator names.
pub struct PolyCtx<'a> {
    pub alg: &'a Algebra<Series>,
    pub overrides: HashMap<String, Poly<Series>>,
}

impl<'a> PolyCtx<'a> {
    pub fn new(alg: &'a Algebra<Series>) -> Self {
        PolyCtx { alg, overrides: HashMap::new() }
    }
}

impl<'a> crate::expr::Context for PolyCtx<'a> {
    type Value = Poly<Series>;

    fn scalar(&self, s: Series) -> Poly<Series> {
        Poly::constant(s)
    }
    fn symbol(&self, name: &str) -> Result<Poly<Series>> {
        if let Some(p) = self.overrides.get(name) {
            return Ok(p.clone());
        }
        self.alg
            .index(name)
            .map(Poly::gen)
            .ok_or_else(|| Error::Parse(format!("unknown generator `{}`", name)))
    }
    fn as_scalar(&self, v: &Poly<Series>) -> Option<Series> {
        v.as_constant()
    }
    fn add(&self, a: &Poly<Series>, b: &Poly<Series>) -> Result<Poly<Series>> {
        Ok(a.add(b))
    }
    fn neg(&self, a: &Poly<Series>) -> Poly<Series> {
        a.neg()
    }
    fn mul(&self, a: &Poly<Series>, b: &Poly<Series>, order: i32) -> Result<Poly<Series>> {
        self.alg.mul_at(a, b, Some(order))
    }
    fn apply(&self, f: Elementary, a: &Poly<Series>, order: i32) -> Result<Poly<Series>> {
        apply_poly(self.alg, f, a, order)
    }
    fn reciprocal(&self, a: &Poly<Series>, order: i32) -> Result<Poly<Series>> {
        reciprocal_poly(self.alg, a, order)
    }
    fn order_of(&self, v: &Poly<Series>) -> Option<i32> {
        min_order(v.terms().map(|(_, c)| c))
    }
    fn truncate(&self, v: &Poly<Series>, order: i32) -> Poly<Series> {
        v.truncate(order)
    }
}

/// A formula value in the tensor context: a single-factor element or a tensor.
#[derive(Clone, Debug)]
pub enum TVal {
    Single(Poly<Series>),
    Tensor(Tensor<Series>),
}

/// Formula context for tensor powers of an algebra (`a @ b`).
pub struct TensorCtx<'a> {
    pub inner: PolyCtx<'a>,
}

impl<'a> TensorCtx<'a> {
    pub fn new(alg: &'a Algebra<Series>) -> Self {
        TensorCtx { inner: PolyCtx::new(alg) }
    }

    pub fn with_overrides(alg: &'a Algebra<Series>, overrides: HashMap<String, Poly<Series>>) -> Self {
        TensorCtx { inner: PolyCtx { alg, overrides } }
    }
}

fn promote(v: &TVal, arity: usize) -> Result<Tensor<Series>> {
    match v {
        TVal::Tensor(t) => Ok(t.clone()),
        TVal::Single(p) => match p.as_constant() {
            Some(c) => Ok(Tensor::constant(arity, c)),
            None => Err(Error::Parse("cannot mix an algebra element with a tensor".into())),
        },
    }
}

impl<'a> crate::expr::Context for TensorCtx<'a> {
    type Value = TVal;

    fn scalar(&self, s: Series) -> TVal {
        TVal::Single(Poly::constant(s))
    }
    fn symbol(&self, name: &str) -> Result<TVal> {
        self.inner.symbol(name).map(TVal::Single)
    }
    fn as_scalar(&self, v: &TVal) -> Option<Series> {
        match v {
            TVal::Single(p) => p.as_constant(),
            TVal::Tensor(_) => None,
        }
    }
    fn add(&self, a: &TVal, b: &TVal) -> Result<TVal> {
        Ok(match (a, b) {
            (TVal::Single(x), TVal::Single(y)) => TVal::Single(x.add(y)),
            (TVal::Tensor(t), other) | (other, TVal::Tensor(t)) => TVal::Tensor(t.add(&promote(other, t.arity)?)),
        })
    }
    fn neg(&self, a: &TVal) -> TVal {
        match a {
            TVal::Single(p) => TVal::Single(p.neg()),
            TVal::Tensor(t) => TVal::Tensor(t.neg()),
        }
    }
    fn mul(&self, a: &TVal, b: &TVal, order: i32) -> Result<TVal> {
        Ok(match (a, b) {
            (TVal::Single(x), TVal::Single(y)) => TVal::Single(self.inner.alg.mul_at(x, y, Some(order))?),
            (TVal::Tensor(x), TVal::Tensor(y)) => TVal::Tensor(self.inner.alg.tensor_mul_at(x, y, Some(order))?),
            (TVal::Tensor(t), s) | (s, TVal::Tensor(t)) => {
                let c = self
                    .as_scalar(s)
                    .ok_or_else(|| Error::Parse("cannot multiply an algebra element by a tensor".into()))?;
                TVal::Tensor(t.scale(&c).truncate(order))
            }
        })
    }
    fn apply(&self, f: Elementary, a: &TVal, order: i32) -> Result<TVal> {
        match a {
            TVal::Single(p) => Ok(TVal::Single(apply_poly(self.inner.alg, f, p, order)?)),
            TVal::Tensor(t) => {
                let c0 = t.nonzero_terms().find(|(k, _)| k.iter().all(|m| *m == UNIT)).map(|(_, c)| c.clone());
                if c0.map(|c| !c.is_zero()).unwrap_or(false) {
                    return Err(Error::Domain(format!("{} of a tensor with a constant part", f.name())));
                }
                Ok(TVal::Tensor(apply_elementary(f, &InAlg { alg: self.inner.alg, v: t.clone() }, order)?.v))
            }
        }
    }
    fn reciprocal(&self, a: &TVal, order: i32) -> Result<TVal> {
        match a {
            TVal::Single(p) => Ok(TVal::Single(reciprocal_poly(self.inner.alg, p, order)?)),
            TVal::Tensor(_) => Err(Error::Domain("reciprocal of a tensor".into())),
        }
    }
    fn tensor(&self, factors: &[TVal], _order: i32) -> Result<TVal> {
        let ps = factors
            .iter()
            .map(|f| match f {
                TVal::Single(p) => Ok(p.clone()),
                TVal::Tensor(_) => Err(Error::Parse("nested tensor product".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TVal::Tensor(Tensor::product_of(&ps)))
    }
    fn order_of(&self, v: &TVal) -> Option<i32> {
        match v {
            TVal::Single(p) => min_order(p.terms().map(|(_, c)| c)),
            TVal::Tensor(t) => min_order(t.terms().map(|(_, c)| c)),
        }
    }
    fn truncate(&self, v: &TVal, order: i32) -> TVal {
        match v {
            TVal::Single(p) => TVal::Single(p.truncate(order)),
            TVal::Tensor(t) => TVal::Tensor(t.truncate(order)),
        }
    }
}

/// Evaluate a formula into the algebra at `order`.
pub fn eval_poly(alg: &Algebra<Series>, src: &str, order: i32) -> Result<Poly<Series>> {
    crate::expr::eval_str(src, &PolyCtx::new(alg), &HashMap::new(), order)
}

/// Evaluate a formula with bindings into a tensor of the given arity.
pub fn eval_tensor_with(
    ctx: &TensorCtx<'_>,
    src: &str,
    bindings: &HashMap<String, crate::expr::Expr>,
    arity: usize,
    order: i32,
) -> Result<Tensor<Series>> {
    let v = crate::expr::eval_str(src, ctx, bindings, order)?;
    promote(&v, arity).or_else(|_| match v {
        TVal::Single(p) if arity == 1 => Ok(Tensor::product_of(&[p])),
        _ => Err(Error::Parse(format!("`{}` is not a rank-{} tensor", src, arity))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::exact_scalar;

    /// so(3) with `[X_a, X_b] = eps_abc X_c`.
    fn so3() -> Algebra<Series> {
        let mut a = Algebra::new(&["X", "Y", "Z"], None);
        a.set_commutator(0, 1, Poly::gen(2)).unwrap();
        a.set_commutator(1, 2, Poly::gen(0)).unwrap();
        a.set_commutator(2, 0, Poly::gen(1)).unwrap();
        a
    }

    #[test]
    fn reorders_words() {
        let a = so3();
        let p = a.word(&[1, 0]).unwrap();
        assert_eq!(p.display(a.names()), "-Z + X*Y");
        let p = a.word(&[2, 1, 0]).unwrap();
        let q = a.word_by_strategy(&[2, 1, 0], |n| n - 1).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn casimir_is_central_in_so3() {
        let a = so3();
        let c = eval_poly(&a, "X^2 + Y^2 + Z^2", 4).unwrap();
        for g in 0..3 {
            assert!(a.commutator(&c, &Poly::gen(g)).unwrap().is_zero());
        }
    }

    #[test]
    fn measure_guard_rejects_long_weightless_rules() {
        let mut a: Algebra<Series> = Algebra::new(&["A", "B", "C"], None);
        let bad = eval_poly(&so3(), "X*Y*Z", 2).unwrap();
        assert!(a.set_rule(1, 0, Series::from_int(1), bad).is_err());
    }

    #[test]
    fn tensor_exponential_inverse() {
        let a = so3();
        let ctx = TensorCtx::new(&a);
        let b = HashMap::new();
        let f = eval_tensor_with(&ctx, "exp(z*X@Y)", &b, 2, 4).unwrap();
        let g = eval_tensor_with(&ctx, "exp(-z*X@Y)", &b, 2, 4).unwrap();
        let one = a.tensor_mul(&f, &g).unwrap().truncate(4);
        assert_eq!(one, Tensor::one(2).truncate(4));
        let first = eval_tensor_with(&ctx, "z*X@Y + 1", &b, 2, 1).unwrap();
        assert_eq!(f.truncate(1), first);
        assert_eq!(exact_scalar("1"), Series::from_int(1));
    }
}

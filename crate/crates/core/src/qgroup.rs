//! Quantum SL(2) layer: the SL(2,R) chart and its invariant fields, the
//! Drinfel'd-Jimbo and three-parameter Sklyanin brackets, the q-deformed
//! function algebras for one and two copies, and the twisted
//! sl(2)+sl(2) coproduct.
//!
//! q-symbols are formal Laurent variables so that centrality and
//! homomorphism identities are exact; they become series only in the
//! semiclassical comparison, via `q = e^z`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::marker::PhantomData;

use nalgebra::Matrix2;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expr;
use crate::geom::{derivative, C};
use crate::pbw::{eval_tensor_with, Algebra, Coefficient, Coproduct, Mono, Poly, PolyCtx, Tensor, TensorCtx, UNIT};
use crate::poisson::rel_error;
use crate::report::Check;
use crate::scalars::Var;
use crate::Series;

/// Names and semiclassical variables of the three Laurent slots.
pub trait Symbols: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    const NAMES: [&'static str; 3];
    const VARS: [Var; 3];
}

/// One copy: a single symbol `q = e^z` in slot 0.
#[derive(Clone, Debug, PartialEq)]
pub struct OneCopy;

impl Symbols for OneCopy {
    const NAMES: [&'static str; 3] = ["q", "q_1", "q_2"];
    const VARS: [Var; 3] = [Var::Z, Var::Beta, Var::Delta];
}

/// Two copies: `qa = e^alpha`, `qb = e^beta`, `qd = e^delta`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoCopy;

impl Symbols for TwoCopy {
    const NAMES: [&'static str; 3] = ["qa", "qb", "qd"];
    const VARS: [Var; 3] = [Var::Alpha, Var::Beta, Var::Delta];
}

/// Integer Laurent polynomial in three commuting invertible symbols.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent<S> {
    terms: BTreeMap<[i32; 3], BigInt>,
    _s: PhantomData<S>,
}

pub type Q1 = Laurent<OneCopy>;
pub type Q2 = Laurent<TwoCopy>;
pub type QAlgebra<S> = Algebra<Laurent<S>>;

impl<S: Symbols> Laurent<S> {
    pub fn monomial(e: [i32; 3], k: impl Into<BigInt>) -> Self {
        let mut terms = BTreeMap::new();
        let k = k.into();
        if !k.is_zero() {
            terms.insert(e, k);
        }
        Laurent { terms, _s: PhantomData }
    }

    pub fn from_int(k: i64) -> Self {
        Self::monomial([0; 3], k)
    }

    /// `q_slot^power`.
    pub fn sym(slot: usize, power: i32) -> Self {
        let mut e = [0; 3];
        e[slot] = power;
        Self::monomial(e, 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32; 3], &BigInt)> {
        self.terms.iter()
    }

    /// Value at all symbols equal to one.
    pub fn at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitute `q_slot = exp(var_slot)` as a series truncated at `order`.
    pub fn to_series(&self, order: i32) -> Series {
        let mut acc = Series::zero_at(order);
        for (e, k) in &self.terms {
            let mut t = Series::from_rational(&BigRational::from_integer(k.clone()));
            for (slot, &p) in e.iter().enumerate() {
                if p != 0 {
                    t = t.mul_ref(&exp_series(S::VARS[slot], p, order)).truncate(order);
                }
            }
            acc = acc.add_ref(&t);
        }
        acc.truncate(order)
    }

    fn term_str(e: &[i32; 3], k: &BigInt) -> String {
        let factors: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, p)| **p != 0)
            .map(|(s, p)| if *p == 1 { S::NAMES[s].to_string() } else { format!("{}^{}", S::NAMES[s], p) })
            .collect();
        if factors.is_empty() {
            k.to_string()
        } else if k.is_one() {
            factors.join("*")
        } else if (-k).is_one() {
            format!("-{}", factors.join("*"))
        } else {
            format!("{}*{}", k, factors.join("*"))
        }
    }
}

/// `exp(p * v)` to weight `order`.
fn exp_series(v: Var, p: i32, order: i32) -> Series {
    let mut acc = Series::from_int(1);
    let mut pow = Series::from_int(1);
    let mut fact = BigInt::one();
    for n in 1..=order.max(0) {
        pow = pow.mul_ref(&Series::var(v));
        fact *= n;
        let c = BigRational::new(BigInt::from(p).pow(n as u32), fact.clone());
        acc = acc.add_ref(&pow.scale_rat(&c));
    }
    acc.truncate(order)
}

impl<S: Symbols> fmt::Display for Laurent<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(e, k)| Self::term_str(e, k)).collect();
        write!(f, "{}", crate::scalars::series::join_terms(&parts))
    }
}

impl<S: Symbols> Coefficient for Laurent<S> {
    fn zero() -> Self {
        Laurent { terms: BTreeMap::new(), _s: PhantomData }
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, k) in &o.terms {
            let v = terms.entry(*e).or_insert_with(BigInt::zero);
            *v += k;
            if v.is_zero() {
                terms.remove(e);
            }
        }
        Laurent { terms, _s: PhantomData }
    }
    fn neg(&self) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, k)| (*e, -k)).collect(), _s: PhantomData }
    }
    fn mul(&self, o: &Self) -> Self {
        let mut acc = Self::zero();
        for (ea, ka) in &self.terms {
            for (eb, kb) in &o.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                acc = acc.add(&Self::monomial(e, ka * kb));
            }
        }
        acc
    }
    fn truncate(&self, _order: i32) -> Self {
        self.clone()
    }
    fn weight(&self) -> i32 {
        0
    }
    fn scaled(&self, basis: &str) -> String {
        let s = self.to_string();
        let single = self.terms.len() == 1;
        if basis.is_empty() {
            return if single { s } else { format!("({})", s) };
        }
        if single {
            let (e, k) = self.terms.iter().next().expect("one term");
            if *e == [0; 3] && k.is_one() {
                return basis.to_string();
            }
            if *e == [0; 3] && (-k).is_one() {
                return format!("-{}", basis);
            }
            return format!("{}*{}", s, basis);
        }
        format!("({})*{}", s, basis)
    }
}

pub const ONE_COPY_LETTERS: [&str; 4] = ["a", "b", "c", "d"];
pub const TWO_COPY_LETTERS: [&str; 8] = ["a1", "b1", "c1", "d1", "a2", "b2", "c2", "d2"];

fn mono_of(letters: &[usize]) -> Mono {
    let mut m = UNIT;
    for &l in letters {
        m[l] += 1;
    }
    m
}

/// The copy relations with symbol `q_slot` on letters `o..o+4`:
/// `ba = q ab`, `ca = q ac`, `cb = bc`, `db = q bd`, `dc = q cd`,
/// `da = ad + (q - 1/q) bc`.
fn install_copy<S: Symbols>(alg: &mut QAlgebra<S>, o: usize, slot: usize) -> Result<()> {
    let (a, b, c, d) = (o, o + 1, o + 2, o + 3);
    let q = Laurent::<S>::sym(slot, 1);
    alg.set_rule(b, a, q.clone(), Poly::zero())?;
    alg.set_rule(c, a, q.clone(), Poly::zero())?;
    alg.set_rule(c, b, Laurent::one(), Poly::zero())?;
    alg.set_rule(d, b, q.clone(), Poly::zero())?;
    alg.set_rule(d, c, q.clone(), Poly::zero())?;
    let k = q.add(&Laurent::sym(slot, -1).neg());
    alg.set_rule(d, a, Laurent::one(), Poly::monomial(mono_of(&[b, c]), k))
}

/// Crossed relations `X2 Y1 -> qd^e Y1 X2` as `(X2, Y1, e)` in letter indices.
pub const CROSSED: [(usize, usize, i32); 16] = [
    (4, 0, 0),
    (4, 1, 1),
    (4, 2, -1),
    (4, 3, 0),
    (5, 0, 1),
    (5, 1, 0),
    (5, 2, 0),
    (5, 3, -1),
    (6, 0, -1),
    (6, 1, 0),
    (6, 2, 0),
    (6, 3, 1),
    (7, 0, 0),
    (7, 1, -1),
    (7, 2, 1),
    (7, 3, 0),
];

/// The single-copy quantum algebra in the letter order `a < b < c < d`.
pub fn one_copy() -> Result<QAlgebra<OneCopy>> {
    let mut alg = Algebra::new(&ONE_COPY_LETTERS, None);
    install_copy(&mut alg, 0, 0)?;
    Ok(alg)
}

/// Two copies with symbols `qa`, `qb` and the crossed relations in `qd`.
pub fn two_copy() -> Result<QAlgebra<TwoCopy>> {
    two_copy_with(&CROSSED)
}

/// Two copies with a custom crossed-relation table.
pub fn two_copy_with(crossed: &[(usize, usize, i32)]) -> Result<QAlgebra<TwoCopy>> {
    let mut alg = Algebra::new(&TWO_COPY_LETTERS, None);
    install_copy(&mut alg, 0, 0)?;
    install_copy(&mut alg, 4, 1)?;
    for &(x, y, e) in crossed {
        alg.set_rule(x, y, Laurent::sym(2, e), Poly::zero())?;
    }
    if !alg.is_complete() {
        return Err(Error::Internal("two-copy relations leave a pair without a rule".into()));
    }
    Ok(alg)
}

/// Parse a q-word such as `b1 a1 d2^2` into letter indices.
pub fn parse_qword<S: Symbols>(alg: &QAlgebra<S>, src: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for tok in src.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
        let (name, k) = match tok.split_once('^') {
            Some((n, k)) => {
                let k: usize = k.parse().map_err(|_| Error::Parse(format!("bad exponent in `{}`", tok)))?;
                (n, k)
            }
            None => (tok, 1),
        };
        let i = alg.index(name).ok_or_else(|| Error::Parse(format!("unknown letter `{}`", name)))?;
        out.extend(std::iter::repeat(i).take(k));
    }
    Ok(out)
}

/// Normal form of a q-word, in the one-copy algebra when only `a, b, c, d`
/// occur and in the two-copy algebra otherwise.
pub fn expand(src: &str) -> Result<String> {
    let one_copy_only = src
        .split(|c: char| c.is_whitespace() || c == '*')
        .filter(|t| !t.is_empty())
        .all(|t| ONE_COPY_LETTERS.contains(&t.split('^').next().unwrap_or("")));
    if one_copy_only {
        let alg = one_copy()?;
        let w = parse_qword(&alg, src)?;
        Ok(alg.word(&w)?.display(alg.names()))
    } else {
        let alg = two_copy()?;
        let w = parse_qword(&alg, src)?;
        Ok(alg.word(&w)?.display(alg.names()))
    }
}

const RELATIONS: &str = "q-deformed function algebra relations";

fn poly_residual<C: Coefficient>(p: &Poly<C>, names: &[String]) -> Option<String> {
    if p.is_zero() {
        None
    } else {
        Some(p.display(names))
    }
}

fn tensor_residual<C: Coefficient>(t: &Tensor<C>, names: &[String]) -> Option<String> {
    if t.is_zero() {
        None
    } else {
        Some(t.display(names))
    }
}

fn fmt_word(w: &[usize], names: &[String]) -> String {
    w.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(" ")
}

/// Memoised normal forms against two randomised rewriting strategies on
/// `count` random words of length at most `max_len`.
pub fn confluence_random<S: Symbols>(alg: &QAlgebra<S>, seed: u64, count: usize, max_len: usize) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pick1 = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut pick2 = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let n = alg.dim();
    for _ in 0..count {
        let len = rng.gen_range(1..=max_len);
        let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        let nf = alg.word(&w)?;
        let r1 = alg.word_by_strategy(&w, |k| pick1.gen_range(0..k))?;
        let r2 = alg.word_by_strategy(&w, |k| pick2.gen_range(0..k))?;
        if nf.sub(&r1).is_zero() && r1.sub(&r2).is_zero() {
            continue;
        }
        let names = alg.names();
        return Ok(Check::new(
            "confluence.random",
            RELATIONS,
            false,
            format!("{}: {} | {}", fmt_word(&w, names), r1.display(names), r2.display(names)),
        ));
    }
    Ok(Check::new("confluence.random", RELATIONS, true, format!("0 ({} words)", count)))
}

/// Every overlap `x y z` with `x > y > z` resolves the same way whether the
/// left or the right inversion is rewritten first.
pub fn diamonds<S: Symbols>(alg: &QAlgebra<S>) -> Result<Check> {
    let n = alg.dim();
    let names = alg.names();
    let mut count = 0;
    for x in 0..n {
        for y in 0..x {
            for z in 0..y {
                let w = [x, y, z];
                let left = alg.word_by_strategy(&w, |_| 0)?;
                let right = alg.word_by_strategy(&w, |k| k - 1)?;
                let memo = alg.word(&w)?;
                count += 1;
                if !left.sub(&right).is_zero() || !left.sub(&memo).is_zero() {
                    return Ok(Check::new(
                        "confluence.diamonds",
                        RELATIONS,
                        false,
                        format!("{}: {} | {}", fmt_word(&w, names), left.display(names), right.display(names)),
                    ));
                }
            }
        }
    }
    Ok(Check::new("confluence.diamonds", RELATIONS, true, format!("0 ({} overlaps)", count)))
}

/// `det_q = ad - q^-1 bc` of the copy starting at letter `o` with symbol slot `slot`.
pub fn det_q<S: Symbols>(o: usize, slot: usize) -> Poly<Laurent<S>> {
    let mut p = Poly::monomial(mono_of(&[o, o + 3]), Laurent::one());
    p.add_term(mono_of(&[o + 1, o + 2]), &Laurent::sym(slot, -1).neg());
    p
}

/// Each copy's quantum determinant commutes with every letter.
pub fn check_det<S: Symbols>(alg: &QAlgebra<S>) -> Result<Vec<Check>> {
    let names = alg.names();
    let copies = alg.dim() / 4;
    let mut out = Vec::new();
    for l in 0..copies {
        let det = det_q::<S>(4 * l, l);
        for g in 0..alg.dim() {
            let r = alg.commutator(&det, &Poly::gen(g))?;
            let label = if copies == 1 { String::new() } else { (l + 1).to_string() };
            out.push(Check::exact(
                format!("det_q{}.{}", label, names[g]),
                "quantum determinant is central",
                poly_residual(&r, names),
            ));
        }
    }
    Ok(out)
}

/// `Delta(T) = T (x) T` on every copy:
/// `a -> a@a + b@c`, `b -> a@b + b@d`, `c -> c@a + d@c`, `d -> c@b + d@d`.
pub fn matrix_coproduct<S: Symbols>(alg: &QAlgebra<S>) -> Coproduct<Laurent<S>> {
    let pair = |x: usize, y: usize| Tensor::product_of(&[Poly::gen(x), Poly::gen(y)]);
    let mut images = Vec::new();
    for l in 0..alg.dim() / 4 {
        let (a, b, c, d) = (4 * l, 4 * l + 1, 4 * l + 2, 4 * l + 3);
        images.push(pair(a, a).add(&pair(b, c)));
        images.push(pair(a, b).add(&pair(b, d)));
        images.push(pair(c, a).add(&pair(d, c)));
        images.push(pair(c, b).add(&pair(d, d)));
    }
    Coproduct::new(images)
}

/// The matrix coproduct respects every rewrite rule and is coassociative.
pub fn check_matrix_coproduct<S: Symbols>(alg: &QAlgebra<S>) -> Result<Vec<Check>> {
    let names = alg.names();
    let delta = matrix_coproduct(alg);
    let mut out = Vec::new();
    for i in 0..alg.dim() {
        for j in 0..i {
            let lhs = alg.tensor_mul(&delta.images[i], &delta.images[j])?;
            let rhs = delta.apply(alg, &alg.word(&[i, j])?)?;
            out.push(Check::exact(
                format!("coproduct.homomorphism.{}{}", names[i], names[j]),
                "matrix coproduct induced by the group multiplication",
                tensor_residual(&lhs.sub(&rhs), names),
            ));
        }
    }
    for g in 0..alg.dim() {
        let d = &delta.images[g];
        let diff = delta.apply_on(alg, d, 0)?.sub(&delta.apply_on(alg, d, 1)?);
        out.push(Check::exact(
            format!("coproduct.coassociativity.{}", names[g]),
            "matrix coproduct induced by the group multiplication",
            tensor_residual(&diff, names),
        ));
    }
    Ok(out)
}

/// A tabulated Poisson bracket `{u, v} = coef * param * product(mono)`.
#[derive(Clone, Debug)]
pub struct PlEntry {
    pub u: String,
    pub v: String,
    pub coef: i64,
    pub param: Var,
    pub mono: Vec<String>,
}

fn pl(u: &str, v: &str, coef: i64, param: Var, mono: &[&str]) -> PlEntry {
    PlEntry {
        u: u.into(),
        v: v.into(),
        coef,
        param,
        mono: mono.iter().map(|s| s.to_string()).collect(),
    }
}

/// The quadratic Sklyanin brackets of one copy for `r = z J+ ^ J-`.
pub fn one_copy_table() -> Vec<PlEntry> {
    let z = Var::Z;
    vec![
        pl("b", "a", 1, z, &["a", "b"]),
        pl("c", "a", 1, z, &["a", "c"]),
        pl("c", "b", 0, z, &[]),
        pl("d", "b", 1, z, &["b", "d"]),
        pl("d", "c", 1, z, &["c", "d"]),
        pl("d", "a", 2, z, &["b", "c"]),
    ]
}

/// Brackets of the two-copy Sklyanin structure, copy tables first, then the crossed ones.
pub fn two_copy_table() -> Vec<PlEntry> {
    let mut out = Vec::new();
    for (l, p) in [(1, Var::Alpha), (2, Var::Beta)] {
        let n = |x: &str| format!("{}{}", x, l);
        let e = |u: &str, v: &str, k: i64, m: &[&str]| {
            let m: Vec<String> = m.iter().map(|x| n(x)).collect();
            let m: Vec<&str> = m.iter().map(String::as_str).collect();
            pl(&n(u), &n(v), k, p, &m)
        };
        out.push(e("a", "b", -1, &["a", "b"]));
        out.push(e("a", "c", -1, &["a", "c"]));
        out.push(e("a", "d", -2, &["b", "c"]));
        out.push(e("b", "c", 0, &[]));
        out.push(e("b", "d", -1, &["b", "d"]));
        out.push(e("c", "d", -1, &["c", "d"]));
    }
    let d = Var::Delta;
    out.extend([
        pl("a1", "a2", 0, d, &[]),
        pl("a1", "b2", -1, d, &["a1", "b2"]),
        pl("a1", "c2", 1, d, &["a1", "c2"]),
        pl("a1", "d2", 0, d, &[]),
        pl("b1", "a2", -1, d, &["b1", "a2"]),
        pl("b1", "b2", 0, d, &[]),
        pl("b1", "c2", 0, d, &[]),
        pl("b1", "d2", 1, d, &["d2", "b1"]),
        pl("c1", "a2", 1, d, &["c1", "a2"]),
        pl("c1", "b2", 0, d, &[]),
        pl("c1", "c2", 0, d, &[]),
        pl("c1", "d2", -1, d, &["d2", "c1"]),
        pl("d1", "a2", 0, d, &[]),
        pl("d1", "b2", 1, d, &["d1", "b2"]),
        pl("d1", "c2", -1, d, &["c2", "d1"]),
        pl("d1", "d2", 0, d, &[]),
    ]);
    out
}

/// `{x_i, x_j}` from a table as a commutative polynomial in the letters.
pub fn pl_symbol(table: &[PlEntry], names: &[String], i: usize, j: usize) -> Result<Poly<Series>> {
    let idx = |s: &str| names.iter().position(|n| n == s).ok_or_else(|| Error::Internal(format!("no letter {}", s)));
    for e in table {
        let (u, v) = (idx(&e.u)?, idx(&e.v)?);
        let sign = if (u, v) == (i, j) {
            1
        } else if (u, v) == (j, i) {
            -1
        } else {
            continue;
        };
        if e.coef == 0 {
            return Ok(Poly::zero());
        }
        let m: Vec<usize> = e.mono.iter().map(|s| idx(s)).collect::<Result<_>>()?;
        let k = Series::var(e.param).scale_rat(&BigRational::from_integer(BigInt::from(sign * e.coef)));
        return Ok(Poly::monomial(mono_of(&m), k));
    }
    Err(Error::Internal(format!("no bracket for {}, {}", names[i], names[j])))
}

/// With `q = e^z` (or `qa = e^alpha`, ...), every commutator `[x_i, x_j]`
/// agrees with the Poisson bracket `{x_i, x_j}` through first order.
pub fn semiclassical<S: Symbols>(alg: &QAlgebra<S>, table: &[PlEntry]) -> Result<Vec<Check>> {
    let names = alg.names();
    let mut out = Vec::new();
    for i in 0..alg.dim() {
        for j in 0..i {
            let comm = alg.commutator(&Poly::gen(i), &Poly::gen(j))?;
            let mut as_series: Poly<Series> = Poly::zero();
            for (m, k) in comm.terms() {
                as_series.add_term(*m, &k.to_series(2));
            }
            let diff = as_series.sub(&pl_symbol(table, names, i, j)?).truncate(1);
            out.push(Check::exact(
                format!("semiclassical.[{},{}]", names[i], names[j]),
                "commutators reproduce the Poisson brackets at first order",
                poly_residual(&diff, names),
            ));
        }
    }
    Ok(out)
}

/// `J+`, `J-`, `J3` in the defining representation.
pub fn sl2_generators() -> [Matrix2<f64>; 3] {
    [
        Matrix2::new(0.0, 1.0, 0.0, 0.0),
        Matrix2::new(0.0, 0.0, 1.0, 0.0),
        Matrix2::new(1.0, 0.0, 0.0, -1.0),
    ]
}

pub const SL2_GEN_NAMES: [&str; 3] = ["J+", "J-", "J3"];
pub const SL2_COORD_NAMES: [&str; 3] = ["a+", "a-", "chi"];

/// Chart `T = exp(a- J-) exp(a+ J+) exp(chi J3)` near the identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sl2Chart {
    pub ap: f64,
    pub am: f64,
    pub chi: f64,
}

impl Sl2Chart {
    pub fn coords(&self) -> [f64; 3] {
        [self.ap, self.am, self.chi]
    }

    pub fn matrix(&self) -> Matrix2<f64> {
        let (e, ei) = (self.chi.exp(), (-self.chi).exp());
        Matrix2::new(e, self.ap * ei, self.am * e, (1.0 + self.am * self.ap) * ei)
    }

    /// Inverse of [`Sl2Chart::matrix`]; needs `T[0][0] > 0`.
    pub fn from_matrix(t: &Matrix2<f64>) -> Result<Self> {
        if t[(0, 0)] <= 0.0 {
            return Err(Error::Domain("matrix outside the chart".into()));
        }
        let chi = t[(0, 0)].ln();
        Ok(Sl2Chart { ap: t[(0, 1)] * chi.exp(), am: t[(1, 0)] * (-chi).exp(), chi })
    }

    /// `(a, b, c, d)`.
    pub fn entries(&self) -> [f64; 4] {
        let t = self.matrix();
        [t[(0, 0)], t[(0, 1)], t[(1, 0)], t[(1, 1)]]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Closed-form invariant fields, components along `(a+, a-, chi)`.
/// Left fields generate `T -> T e^{tX}`, right fields `T -> e^{tX} T`.
pub fn sl2_field(side: Side, g: usize, p: &Sl2Chart) -> [f64; 3] {
    let (ap, am) = (p.ap, p.am);
    let (e2, em2) = ((2.0 * p.chi).exp(), (-2.0 * p.chi).exp());
    match (side, g) {
        (Side::Left, 0) => [e2, 0.0, 0.0],
        (Side::Left, 1) => [ap * ap * em2, em2, ap * em2],
        (Side::Left, _) => [0.0, 0.0, 1.0],
        (Side::Right, 0) => [1.0 + 2.0 * am * ap, -am * am, am],
        (Side::Right, 1) => [0.0, 1.0, 0.0],
        (Side::Right, _) => [2.0 * ap, -2.0 * am, 1.0],
    }
}

/// Finite-difference oracle for [`sl2_field`].
pub fn sl2_field_oracle(side: Side, g: usize, p: &Sl2Chart) -> Result<[f64; 3]> {
    let t = p.matrix();
    let x = sl2_generators()[g];
    let d = derivative(
        |s| {
            let e = (x * s).exp();
            let m = if side == Side::Left { t * e } else { e * t };
            let c = Sl2Chart::from_matrix(&m)?.coords();
            Ok(c.iter().map(|&v| C::new(v, 0.0)).collect::<Vec<C>>())
        },
        crate::geom::FD_STEP,
    )?;
    Ok([d[0].re, d[1].re, d[2].re])
}

fn sample_sl2(rng: &mut ChaCha8Rng, radius: f64) -> Sl2Chart {
    Sl2Chart {
        ap: rng.gen_range(-radius..radius),
        am: rng.gen_range(-radius..radius),
        chi: rng.gen_range(-radius..radius),
    }
}

/// A Sklyanin structure on a product of SL(2) copies: the generators as
/// `(copy, matrix)` and the antisymmetric coefficients `r^{ij}`.
struct Sklyanin {
    gens: Vec<(usize, Matrix2<f64>)>,
    r: Vec<Vec<f64>>,
}

impl Sklyanin {
    fn one_copy(z: f64) -> Self {
        let g = sl2_generators();
        let mut r = vec![vec![0.0; 3]; 3];
        r[0][1] = z;
        r[1][0] = -z;
        Sklyanin { gens: g.iter().map(|m| (0, *m)).collect(), r }
    }

    fn two_copy(alpha: f64, beta: f64, delta: f64) -> Self {
        let g = sl2_generators();
        let gens = (0..2).flat_map(|l| g.iter().map(move |m| (l, *m))).collect();
        let mut r = vec![vec![0.0; 6]; 6];
        for (i, j, v) in [(0, 1, alpha), (3, 4, beta), (2, 5, delta / 2.0)] {
            r[i][j] = v;
            r[j][i] = -v;
        }
        Sklyanin { gens, r }
    }

    /// Left and right derivatives of the entry `(i, j)` of copy `l`.
    fn entry_derivs(&self, ts: &[Matrix2<f64>], l: usize, i: usize, j: usize) -> (Vec<f64>, Vec<f64>) {
        self.gens
            .iter()
            .map(|(copy, x)| if *copy == l { ((ts[l] * x)[(i, j)], (x * ts[l])[(i, j)]) } else { (0.0, 0.0) })
            .unzip()
    }

    fn bracket(&self, f: &(Vec<f64>, Vec<f64>), g: &(Vec<f64>, Vec<f64>)) -> f64 {
        let n = self.gens.len();
        let mut acc = 0.0;
        for p in 0..n {
            for q in 0..n {
                acc += self.r[p][q] * (f.0[p] * g.0[q] - f.1[p] * g.1[q]);
            }
        }
        acc
    }
}

fn letter_entry(k: usize) -> (usize, usize, usize) {
    (k / 4, (k % 4) / 2, k % 2)
}

/// Entries `(a, b, c, d)` per copy and their left/right derivatives at `ts`.
fn entry_data(sk: &Sklyanin, ts: &[Matrix2<f64>]) -> Vec<(f64, (Vec<f64>, Vec<f64>))> {
    (0..4 * ts.len())
        .map(|k| {
            let (l, i, j) = letter_entry(k);
            (ts[l][(i, j)], sk.entry_derivs(ts, l, i, j))
        })
        .collect()
}

/// `{det, x}` for each letter `x`, via the Leibniz rule on `ad - bc`.
fn casimir_residual(sk: &Sklyanin, data: &[(f64, (Vec<f64>, Vec<f64>))], l: usize) -> f64 {
    let o = 4 * l;
    let n = sk.gens.len();
    let comb = |side: usize| -> Vec<f64> {
        let get = |k: usize| if side == 0 { &data[o + k].1 .0 } else { &data[o + k].1 .1 };
        (0..n)
            .map(|p| {
                get(0)[p] * data[o + 3].0 + data[o].0 * get(3)[p] - get(1)[p] * data[o + 2].0 - data[o + 1].0 * get(2)[p]
            })
            .collect()
    };
    let c = (comb(0), comb(1));
    data.iter().map(|(_, d)| sk.bracket(&c, d).abs()).fold(0.0, f64::max)
}

fn table_checks(
    sk: &Sklyanin,
    table: &[PlEntry],
    names: &[&str],
    params: &HashMap<Var, f64>,
    points: &[Vec<Matrix2<f64>>],
    anchor: &str,
    tol: f64,
) -> Vec<Check> {
    let idx = |s: &str| names.iter().position(|n| *n == s).expect("letter in table");
    table
        .iter()
        .map(|e| {
            let mut worst: f64 = 0.0;
            for ts in points {
                let data = entry_data(sk, ts);
                let (u, v) = (idx(&e.u), idx(&e.v));
                let got = sk.bracket(&data[u].1, &data[v].1);
                let mono: f64 = e.mono.iter().map(|s| data[idx(s)].0).product();
                let want = e.coef as f64 * params[&e.param] * mono;
                worst = worst.max(rel_error(C::new(got, 0.0), C::new(want, 0.0)));
            }
            Check::bound(format!("bracket.{{{},{}}}", e.u, e.v), anchor, worst, tol)
        })
        .collect()
}

pub const NUMERIC_TOL: f64 = 1e-8;

/// SL(2,R) chart, invariant fields, Drinfel'd-Jimbo and quadratic brackets
/// for `r = z J+ ^ J-`, and the Casimir function `ad - bc`.
pub fn sl2_fields_and_sklyanin(z: f64, seed: u64, count: usize) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Sl2Chart> = (0..count).map(|_| sample_sl2(&mut rng, 0.5)).collect();
    let mut out = Vec::new();
    let det = pts.iter().map(|p| (p.matrix().determinant() - 1.0).abs()).fold(0.0, f64::max);
    out.push(Check::bound("chart.det", "SL(2,R) chart near the identity", det, 1e-12));
    for side in [Side::Left, Side::Right] {
        for g in 0..3 {
            let mut worst: f64 = 0.0;
            for p in &pts {
                let a = sl2_field(side, g, p);
                let b = sl2_field_oracle(side, g, p)?;
                worst = worst.max(a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max));
            }
            let s = if side == Side::Left { "L" } else { "R" };
            out.push(Check::bound(
                format!("field.{}.{}", s, SL2_GEN_NAMES[g]),
                "invariant vector fields of SL(2,R)",
                worst,
                1e-6,
            ));
        }
    }
    let sk = Sklyanin::one_copy(z);
    // Drinfel'd-Jimbo brackets of the chart coordinates, from the closed-form fields.
    let dj: [(usize, usize, &str); 3] = [(2, 0, "chi,a+"), (2, 1, "chi,a-"), (0, 1, "a+,a-")];
    for (k, l, label) in dj {
        let mut worst: f64 = 0.0;
        for p in &pts {
            let grad = |c: usize| -> (Vec<f64>, Vec<f64>) {
                (
                    (0..3).map(|g| sl2_field(Side::Left, g, p)[c]).collect(),
                    (0..3).map(|g| sl2_field(Side::Right, g, p)[c]).collect(),
                )
            };
            let got = sk.bracket(&grad(k), &grad(l));
            let want = match label {
                "chi,a+" => -z * p.ap,
                "chi,a-" => -z * p.am,
                _ => -2.0 * z * p.am * p.ap,
            };
            worst = worst.max(rel_error(C::new(got, 0.0), C::new(want, 0.0)));
        }
        out.push(Check::bound(format!("dj.{{{}}}", label), "Drinfel'd-Jimbo Sklyanin brackets", worst, NUMERIC_TOL));
    }
    let points: Vec<Vec<Matrix2<f64>>> = pts.iter().map(|p| vec![p.matrix()]).collect();
    let params = HashMap::from([(Var::Z, z)]);
    out.extend(table_checks(
        &sk,
        &one_copy_table(),
        &ONE_COPY_LETTERS,
        &params,
        &points,
        "quadratic Sklyanin brackets of the matrix entries",
        NUMERIC_TOL,
    ));
    let cas = points.iter().map(|ts| casimir_residual(&sk, &entry_data(&sk, ts), 0)).fold(0.0, f64::max);
    out.push(Check::bound("casimir.ad-bc", "ad - bc is a Casimir function", cas, 1e-10));
    Ok(out)
}

/// Brackets of the three-parameter structure
/// `r = alpha J+1^J-1 + beta J+2^J-2 + delta/2 J3_1^J3_2` on two copies.
pub fn two_copy_sklyanin(alpha: f64, beta: f64, delta: f64, seed: u64, count: usize) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Vec<Matrix2<f64>>> = (0..count)
        .map(|_| vec![sample_sl2(&mut rng, 0.5).matrix(), sample_sl2(&mut rng, 0.5).matrix()])
        .collect();
    let sk = Sklyanin::two_copy(alpha, beta, delta);
    let params = HashMap::from([(Var::Alpha, alpha), (Var::Beta, beta), (Var::Delta, delta)]);
    let mut out = table_checks(
        &sk,
        &two_copy_table(),
        &TWO_COPY_LETTERS,
        &params,
        &points,
        "three-parameter Sklyanin brackets on two copies",
        NUMERIC_TOL,
    );
    for l in 0..2 {
        let cas = points.iter().map(|ts| casimir_residual(&sk, &entry_data(&sk, ts), l)).fold(0.0, f64::max);
        out.push(Check::bound(format!("casimir.C{}", l + 1), "per-copy determinants are Casimir functions", cas, 1e-10));
    }
    Ok(out)
}

pub const SL2_PAIR_NAMES: [&str; 6] = ["Jp1", "Jm1", "H1", "Jp2", "Jm2", "H2"];

/// Coproduct of each generator of the twisted sl(2)+sl(2) algebra.
pub const TWISTED_SL2_COPRODUCT: [&str; 6] = [
    "Jp1@exp((alpha*H1 - delta*H2)/2) + exp(-(alpha*H1 - delta*H2)/2)@Jp1",
    "Jm1@exp((alpha*H1 + delta*H2)/2) + exp(-(alpha*H1 + delta*H2)/2)@Jm1",
    "H1@1 + 1@H1",
    "Jp2@exp((beta*H2 + delta*H1)/2) + exp(-(beta*H2 + delta*H1)/2)@Jp2",
    "Jm2@exp((beta*H2 - delta*H1)/2) + exp(-(beta*H2 - delta*H1)/2)@Jm2",
    "H2@1 + 1@H2",
];

/// First-order cocommutators `delta(X) = X ^ Y` as `(X, Y)`.
const TWISTED_SL2_COCOMMUTATOR: [(&str, &str); 6] = [
    ("Jp1", "alpha*H1 - delta*H2"),
    ("Jm1", "alpha*H1 + delta*H2"),
    ("H1", "0"),
    ("Jp2", "beta*H2 + delta*H1"),
    ("Jm2", "beta*H2 - delta*H1"),
    ("H2", "0"),
];

/// The twisted sl(2)+sl(2) quantum algebra with `z1 = alpha`, `z2 = beta`.
#[derive(Clone, Debug)]
pub struct TwistedSl2 {
    pub order: i32,
    pub alg: Algebra<Series>,
    pub delta: Coproduct<Series>,
}

impl TwistedSl2 {
    pub fn build(order: i32) -> Result<Self> {
        Self::build_with(order, &TWISTED_SL2_COPRODUCT)
    }

    /// The same algebra with the coproduct given by `coproduct[g]` for each generator.
    pub fn build_with(order: i32, coproduct: &[&str; 6]) -> Result<Self> {
        let mut alg = Algebra::new(&SL2_PAIR_NAMES, Some(order));
        let none = HashMap::new();
        for (o, z) in [(0, "alpha"), (3, "beta")] {
            let n = |k: usize| SL2_PAIR_NAMES[o + k];
            let f = |src: String, alg: &Algebra<Series>| expr::eval_str(&src, &PolyCtx::new(alg), &none, order);
            let pm = f(format!("sinh({z}*{h})/{z}", h = n(2)), &alg)?;
            alg.set_commutator(o, o + 1, pm)?;
            let hp = f(format!("2*{}", n(0)), &alg)?;
            alg.set_commutator(o + 2, o, hp)?;
            let hm = f(format!("-2*{}", n(1)), &alg)?;
            alg.set_commutator(o + 2, o + 1, hm)?;
        }
        for i in 0..3 {
            for j in 3..6 {
                alg.set_commutator(j, i, Poly::zero())?;
            }
        }
        let ctx = TensorCtx::new(&alg);
        let images = coproduct
            .iter()
            .map(|src| eval_tensor_with(&ctx, src, &none, 2, order))
            .collect::<Result<Vec<_>>>()?;
        Ok(TwistedSl2 { order, alg, delta: Coproduct::new(images) })
    }

    pub fn names(&self) -> Vec<String> {
        SL2_PAIR_NAMES.iter().map(|s| s.to_string()).collect()
    }

    pub fn eval_tensor(&self, src: &str) -> Result<Tensor<Series>> {
        eval_tensor_with(&TensorCtx::new(&self.alg), src, &HashMap::new(), 2, self.order)
    }
}

/// Homomorphism on every generator pair, coassociativity, counit, the
/// first-order cocommutators, and the untwisted limit `delta = 0`.
pub fn twisted_sl2_hopf_check(order: i32) -> Result<Vec<Check>> {
    check_twisted_sl2(&TwistedSl2::build(order)?)
}

pub fn check_twisted_sl2(h: &TwistedSl2) -> Result<Vec<Check>> {
    let order = h.order;
    let (alg, delta) = (&h.alg, &h.delta);
    let names = h.names();
    let anchor = "twisted sl(2)+sl(2) coproduct";
    let mut out = Vec::new();
    for a in 0..6 {
        for b in a + 1..6 {
            let lhs = delta.apply(alg, &alg.commutator(&Poly::gen(a), &Poly::gen(b))?)?;
            let (da, db) = (&delta.images[a], &delta.images[b]);
            let rhs = alg.tensor_mul(da, db)?.sub(&alg.tensor_mul(db, da)?);
            out.push(Check::exact(
                format!("homomorphism.[{},{}]", names[a], names[b]),
                anchor,
                tensor_residual(&lhs.sub(&rhs), &names),
            ));
        }
    }
    for g in 0..6 {
        let d = &delta.images[g];
        let diff = delta.apply_on(alg, d, 0)?.sub(&delta.apply_on(alg, d, 1)?);
        out.push(Check::exact(format!("coassociativity.{}", names[g]), anchor, tensor_residual(&diff, &names)));
        let x = Tensor::product_of(&[Poly::gen(g)]).truncate(order);
        let ok = d.counit_on(0).sub(&x).is_zero() && d.counit_on(1).sub(&x).is_zero();
        out.push(Check::exact(
            format!("counit.{}", names[g]),
            anchor,
            if ok { None } else { Some(d.display(&names)) },
        ));
    }
    for (g, (x, y)) in TWISTED_SL2_COCOMMUTATOR.iter().enumerate() {
        let d = &delta.images[g];
        let first = d.sub(&d.flip()).truncate(1);
        let want = h.eval_tensor(&format!("{x}@({y}) - ({y})@{x}"))?.truncate(1);
        out.push(Check::exact(
            format!("cocommutator.{}", names[g]),
            "cocommutators of the twisted sl(2)+sl(2) bialgebra",
            tensor_residual(&first.sub(&want), &names),
        ));
    }
    for (g, src) in [
        (0, "Jp1@exp(alpha*H1/2) + exp(-alpha*H1/2)@Jp1"),
        (1, "Jm1@exp(alpha*H1/2) + exp(-alpha*H1/2)@Jm1"),
        (3, "Jp2@exp(beta*H2/2) + exp(-beta*H2/2)@Jp2"),
        (4, "Jm2@exp(beta*H2/2) + exp(-beta*H2/2)@Jm2"),
    ] {
        let untwisted = delta.images[g].try_map_coeffs(|c| c.set_zero(Var::Delta))?;
        out.push(Check::exact(
            format!("untwisted.{}", names[g]),
            anchor,
            tensor_residual(&untwisted.sub(&h.eval_tensor(src)?), &names),
        ));
    }
    Ok(out)
}

/// Every check of the quantum-group layer.
pub fn run_all(order: i32, seed: u64, count: usize) -> Result<Vec<Check>> {
    let one = one_copy()?;
    let two = two_copy()?;
    let mut out = vec![
        confluence_random(&one, seed, 200, 6)?,
        confluence_random(&two, seed, 200, 6)?,
        diamonds(&one)?,
        diamonds(&two)?,
    ];
    out[0].id = "one-copy.confluence.random".into();
    out[1].id = "two-copy.confluence.random".into();
    out[2].id = "one-copy.confluence.diamonds".into();
    out[3].id = "two-copy.confluence.diamonds".into();
    let prefixed = |p: &str, v: Vec<Check>| -> Vec<Check> {
        v.into_iter()
            .map(|mut c| {
                c.id = format!("{}.{}", p, c.id);
                c
            })
            .collect()
    };
    out.extend(prefixed("one-copy", check_det(&one)?));
    out.extend(prefixed("two-copy", check_det(&two)?));
    out.extend(prefixed("one-copy", check_matrix_coproduct(&one)?));
    out.extend(prefixed("two-copy", check_matrix_coproduct(&two)?));
    out.extend(prefixed("one-copy", semiclassical(&one, &one_copy_table())?));
    out.extend(prefixed("two-copy", semiclassical(&two, &two_copy_table())?));
    out.extend(prefixed("sl2", sl2_fields_and_sklyanin(0.7, seed, count)?));
    out.extend(prefixed("two-copy", two_copy_sklyanin(0.3, -0.45, 0.2, seed, count)?));
    out.extend(prefixed("twisted-sl2", twisted_sl2_hopf_check(order)?));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_arithmetic() {
        let q = Q1::sym(0, 1);
        let qi = Q1::sym(0, -1);
        assert_eq!(q.mul(&qi), Q1::one());
        assert_eq!(q.add(&qi.neg()).to_string(), "q - q^-1");
        assert_eq!(q.add(&qi).at_one(), BigInt::from(2));
    }

    #[test]
    fn exp_substitution() {
        let s = Q1::sym(0, -1).to_series(2);
        let want = expr::scalar("1 - z + z^2/2", 2).unwrap();
        assert!(s.sub_ref(&want).is_zero());
    }

    #[test]
    fn one_copy_reordering() {
        assert_eq!(expand("b a").unwrap(), "q*a*b");
        assert_eq!(expand("d a").unwrap(), "a*d + (q - q^-1)*b*c");
        assert_eq!(expand("c b").unwrap(), "b*c");
    }

    #[test]
    fn crossed_reordering() {
        assert_eq!(expand("a2 b1").unwrap(), "qd*b1*a2");
        assert!(expand("x1").is_err());
    }

    #[test]
    fn determinant_at_q_one() {
        let det = det_q::<OneCopy>(0, 0);
        let classical: Vec<BigInt> = det.terms().map(|(_, k)| k.at_one()).collect();
        assert_eq!(classical.iter().sum::<BigInt>(), BigInt::zero());
    }

    #[test]
    fn chart_round_trip() {
        let p = Sl2Chart { ap: 0.3, am: -0.2, chi: 0.1 };
        let back = Sl2Chart::from_matrix(&p.matrix()).unwrap();
        assert!((back.ap - p.ap).abs() < 1e-14 && (back.am - p.am).abs() < 1e-14);
        assert!((p.matrix().determinant() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn zero_r_brackets_vanish() {
        let checks = two_copy_sklyanin(0.0, 0.0, 0.0, 3, 5).unwrap();
        assert!(checks.iter().all(|c| c.passed()));
    }
}

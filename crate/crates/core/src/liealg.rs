//! Lie algebras given by structure constants, the AdS_omega family, its
//! alternative bases and the changes of basis between them.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::expr::{self, Context};
use crate::ring::Ring;
use crate::scalars::{Assignment, Elementary, Var};
use crate::Series;

/// `epsilon_{12} = 1 = -epsilon_{21}`.
pub const EPS: [[i64; 2]; 2] = [[0, 1], [-1, 0]];

/// Generator order of the kinematical basis, shared with the enveloping algebra.
pub const KIN_NAMES: [&str; 6] = ["J", "P0", "P1", "P2", "K1", "K2"];
pub const J: usize = 0;
pub const P0: usize = 1;
pub const P1: usize = 2;
pub const P2: usize = 3;
pub const K1: usize = 4;
pub const K2: usize = 5;

pub const JT_NAMES: [&str; 6] = ["J0", "J1", "J2", "T0", "T1", "T2"];

/// Two commuting sl(2) copies; Cartan elements first.
pub const SL2_NAMES: [&str; 6] = ["J3_1", "J3_2", "Jp_1", "Jm_1", "Jp_2", "Jm_2"];

/// A vector in the span of the generators.
#[derive(Clone, PartialEq, Debug)]
pub struct Element<R> {
    pub coeffs: Vec<R>,
}

impl<R: Ring> Element<R> {
    pub fn zero(n: usize) -> Self {
        Element { coeffs: vec![R::zero(); n] }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[i] = R::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Element { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add_ref(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Element { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub_ref(b)).collect() }
    }

    pub fn scale(&self, c: &R) -> Self {
        Element { coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect() }
    }
}

/// `c*name` with the coefficient wrapped only when it is a sum.
pub(crate) fn fmt_scaled(c: &Series, name: &str) -> String {
    if c.is_exact() && *c == Series::from_int(1) {
        return name.to_string();
    }
    if c.is_exact() && *c == Series::from_int(-1) {
        return format!("-{}", name);
    }
    let cs = c.to_string();
    if c.len() == 1 && c.is_exact() {
        format!("{}*{}", cs, name)
    } else {
        format!("({})*{}", cs, name)
    }
}

pub(crate) fn fmt_sum(parts: Vec<String>) -> String {
    if parts.is_empty() {
        "0".to_string()
    } else {
        crate::scalars::series::join_terms(&parts)
    }
}

impl Element<Series> {
    pub fn display(&self, names: &[String]) -> String {
        fmt_sum(
            self.coeffs
                .iter()
                .zip(names)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, n)| fmt_scaled(c, n))
                .collect(),
        )
    }

    pub fn map(&self, f: impl Fn(&Series) -> Result<Series>) -> Result<Self> {
        Ok(Element { coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()? })
    }
}

/// A Lie algebra: `[X_i, X_j] = sum_k c[i][j][k] X_k`.
#[derive(Clone, PartialEq, Debug)]
pub struct LieAlgebra<R> {
    names: Vec<String>,
    c: Vec<R>,
}

impl<R: Ring> LieAlgebra<R> {
    /// The abelian algebra on the given generators.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        let n = names.len();
        LieAlgebra { names: names.iter().map(|s| s.as_ref().to_string()).collect(), c: vec![R::zero(); n * n * n] }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &R {
        let n = self.dim();
        &self.c[(i * n + j) * n + k]
    }

    fn c_mut(&mut self, i: usize, j: usize, k: usize) -> &mut R {
        let n = self.dim();
        &mut self.c[(i * n + j) * n + k]
    }

    /// Set `[X_i, X_j] = v` and `[X_j, X_i] = -v`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: &Element<R>) {
        for k in 0..self.dim() {
            *self.c_mut(i, j, k) = v.coeffs[k].clone();
            *self.c_mut(j, i, k) = -v.coeffs[k].clone();
        }
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Element<R> {
        Element { coeffs: (0..self.dim()).map(|k| self.c(i, j, k).clone()).collect() }
    }

    pub fn bracket(&self, a: &Element<R>, b: &Element<R>) -> Element<R> {
        let n = self.dim();
        let mut out: Element<R> = Element::zero(n);
        for i in 0..n {
            if a.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b.coeffs[j].is_zero() || i == j {
                    continue;
                }
                let ab = a.coeffs[i].mul_ref(&b.coeffs[j]);
                for k in 0..n {
                    let c = self.c(i, j, k);
                    if !c.is_zero() {
                        out.coeffs[k] = out.coeffs[k].add_ref(&ab.mul_ref(c));
                    }
                }
            }
        }
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| *self.c(i, j, k) == -self.c(j, i, k).clone())))
    }

    /// Jacobi residual `[X_i,[X_j,X_k]] + cyclic` for every triple `i < j < k`.
    pub fn check_jacobi(&self) -> JacobiReport<R> {
        let n = self.dim();
        let mut residuals = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (Element::basis(n, i), Element::basis(n, j), Element::basis(n, k));
                    let r = self
                        .bracket(&ei, &self.bracket(&ej, &ek))
                        .add(&self.bracket(&ej, &self.bracket(&ek, &ei)))
                        .add(&self.bracket(&ek, &self.bracket(&ei, &ej)));
                    residuals.push(([i, j, k], r));
                }
            }
        }
        JacobiReport { residuals }
    }

    /// Apply `f` to every structure constant.
    pub fn map_constants<S: Ring>(&self, f: impl Fn(&R) -> S) -> LieAlgebra<S> {
        LieAlgebra { names: self.names.clone(), c: self.c.iter().map(f).collect() }
    }

    pub fn try_map_constants<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<LieAlgebra<S>> {
        Ok(LieAlgebra { names: self.names.clone(), c: self.c.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn renamed<S: AsRef<str>>(&self, names: &[S]) -> Self {
        assert_eq!(names.len(), self.dim());
        LieAlgebra { names: names.iter().map(|s| s.as_ref().to_string()).collect(), c: self.c.clone() }
    }
}

#[derive(Clone, Debug)]
pub struct JacobiReport<R> {
    pub residuals: Vec<([usize; 3], Element<R>)>,
}

impl<R: Ring> JacobiReport<R> {
    pub fn pass(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }

    pub fn failures(&self) -> Vec<[usize; 3]> {
        self.residuals.iter().filter(|(_, r)| !r.is_zero()).map(|(t, _)| *t).collect()
    }
}

impl LieAlgebra<Series> {
    /// Set a bracket from a formula linear in the generators.
    pub fn set(&mut self, a: &str, b: &str, rhs: &str) {
        let i = self.index(a).unwrap_or_else(|| panic!("no generator {}", a));
        let j = self.index(b).unwrap_or_else(|| panic!("no generator {}", b));
        let v = self.linear(rhs).unwrap_or_else(|e| panic!("bad bracket `{}`: {}", rhs, e));
        self.set_bracket(i, j, &v);
    }

    /// Parse a linear combination of generators.
    pub fn linear(&self, src: &str) -> Result<Element<Series>> {
        self.linear_with(src, &HashMap::new())
    }

    pub fn linear_with(&self, src: &str, b: &HashMap<String, expr::Expr>) -> Result<Element<Series>> {
        let ctx = LinearCtx { names: &self.names };
        match expr::eval_str(src, &ctx, b, 64)? {
            Lin::Vec(v) => Ok(v),
            Lin::Scalar(s) if s.is_zero() => Ok(Element::zero(self.dim())),
            Lin::Scalar(_) => Err(Error::Parse(format!("`{}` is a scalar, not an algebra element", src))),
        }
    }

    pub fn bracket_named(&self, a: &str, b: &str) -> Element<Series> {
        self.bracket_basis(self.index(a).unwrap(), self.index(b).unwrap())
    }

    pub fn display_element(&self, e: &Element<Series>) -> String {
        e.display(&self.names)
    }

    /// Specialize `s = 0` in every structure constant.
    pub fn contract(&self) -> Result<Self> {
        self.try_map_constants(|c| c.set_zero(Var::S))
    }

    pub fn evaluate(&self, a: &Assignment) -> LieAlgebra<num_complex::Complex64> {
        self.map_constants(|c| c.evaluate(a))
    }

    /// Conjugate the structure constants by a change of basis.
    pub fn apply_basis_map(&self, m: &BasisMap) -> Result<Self> {
        let n = self.dim();
        if m.dim() != n {
            return Err(Error::Config("basis map dimension mismatch".into()));
        }
        let mut out = LieAlgebra::new(&m.names);
        for a in 0..n {
            for b in a + 1..n {
                let old = self.bracket(&m.row(a), &m.row(b));
                out.set_bracket(a, b, &m.to_new(&old));
            }
        }
        Ok(out)
    }

    /// True iff `m` preserves the brackets and squares to the identity.
    pub fn check_automorphism(&self, m: &BasisMap) -> bool {
        match self.apply_basis_map(m) {
            Ok(l) => l.c == self.c && m.compose(m).is_identity(),
            Err(_) => false,
        }
    }

    /// `[X_x, t]` for the quadratic element `t`, one residual matrix per generator:
    /// `R^{pq} = sum_a (c[x][a][p] t^{aq} + c[x][a][q] t^{pa})`.
    pub fn ad_invariance(&self, t: &SymmetricTensor) -> Vec<Vec<Series>> {
        let n = self.dim();
        let mut out = Vec::new();
        for x in 0..n {
            let mut res = vec![Series::zero_exact(); n * n];
            for a in 0..n {
                for b in 0..n {
                    let mut acc = Series::zero_exact();
                    for e in 0..n {
                        acc = acc.add_ref(&self.c(x, e, a).mul_ref(t.get(e, b)));
                        acc = acc.add_ref(&self.c(x, e, b).mul_ref(t.get(a, e)));
                    }
                    res[a * n + b] = acc;
                }
            }
            out.push(res);
        }
        out
    }

    pub fn is_ad_invariant(&self, t: &SymmetricTensor) -> bool {
        self.ad_invariance(t).iter().all(|r| r.iter().all(|c| c.is_zero()))
    }
}

#[derive(Clone, Debug)]
enum Lin {
    Scalar(Series),
    Vec(Element<Series>),
}

struct LinearCtx<'a> {
    names: &'a [String],
}

impl Context for LinearCtx<'_> {
    type Value = Lin;

    fn scalar(&self, s: Series) -> Lin {
        Lin::Scalar(s)
    }
    fn symbol(&self, name: &str) -> Result<Lin> {
        let i = self
            .names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Parse(format!("unknown generator `{}`", name)))?;
        Ok(Lin::Vec(Element::basis(self.names.len(), i)))
    }
    fn as_scalar(&self, v: &Lin) -> Option<Series> {
        match v {
            Lin::Scalar(s) => Some(s.clone()),
            Lin::Vec(_) => None,
        }
    }
    fn add(&self, a: &Lin, b: &Lin) -> Result<Lin> {
        match (a, b) {
            (Lin::Scalar(x), Lin::Scalar(y)) => Ok(Lin::Scalar(x.add_ref(y))),
            (Lin::Vec(x), Lin::Vec(y)) => Ok(Lin::Vec(x.add(y))),
            (Lin::Scalar(x), Lin::Vec(v)) | (Lin::Vec(v), Lin::Scalar(x)) if x.is_zero() => Ok(Lin::Vec(v.clone())),
            _ => Err(Error::Parse("adding a scalar to a Lie algebra element".into())),
        }
    }
    fn neg(&self, a: &Lin) -> Lin {
        match a {
            Lin::Scalar(x) => Lin::Scalar(x.neg_ref()),
            Lin::Vec(v) => Lin::Vec(v.scale(&Series::from_int(-1))),
        }
    }
    fn mul(&self, a: &Lin, b: &Lin, _order: i32) -> Result<Lin> {
        match (a, b) {
            (Lin::Scalar(x), Lin::Scalar(y)) => Ok(Lin::Scalar(x.mul_ref(y))),
            (Lin::Scalar(x), Lin::Vec(v)) | (Lin::Vec(v), Lin::Scalar(x)) => Ok(Lin::Vec(v.scale(x))),
            _ => Err(Error::Parse("product of two Lie algebra elements in a linear formula".into())),
        }
    }
    fn apply(&self, _f: Elementary, _a: &Lin, _order: i32) -> Result<Lin> {
        Err(Error::Parse("functions are not allowed in linear formulas".into()))
    }
    fn reciprocal(&self, _a: &Lin, _order: i32) -> Result<Lin> {
        Err(Error::Parse("division by a Lie algebra element".into()))
    }
    fn order_of(&self, _v: &Lin) -> Option<i32> {
        None
    }
    fn truncate(&self, v: &Lin, _order: i32) -> Lin {
        v.clone()
    }
}

/// A change of basis: row `a` expresses new generator `a` in the old basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisMap {
    names: Vec<String>,
    m: Vec<Vec<Series>>,
    inv: Vec<Vec<Series>>,
}

impl BasisMap {
    pub fn new(names: Vec<String>, m: Vec<Vec<Series>>) -> Result<Self> {
        let inv = invert(&m)?;
        Ok(BasisMap { names, m, inv })
    }

    /// Build from formulas `new = combination of old generators`.
    pub fn from_formulas(old: &LieAlgebra<Series>, rows: &[(&str, &str)]) -> Result<Self> {
        let names = rows.iter().map(|(n, _)| n.to_string()).collect();
        let m = rows.iter().map(|(_, f)| old.linear(f).map(|e| e.coeffs)).collect::<Result<_>>()?;
        Self::new(names, m)
    }

    pub fn identity<S: AsRef<str>>(names: &[S]) -> Self {
        let n = names.len();
        let m: Vec<Vec<Series>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Series::from_int(1) } else { Series::zero_exact() }).collect())
            .collect();
        BasisMap { names: names.iter().map(|s| s.as_ref().to_string()).collect(), inv: m.clone(), m }
    }

    /// A diagonal map of signs.
    pub fn diagonal<S: AsRef<str>>(names: &[S], signs: &[i64]) -> Self {
        let n = names.len();
        let m: Vec<Vec<Series>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Series::from_int(signs[i]) } else { Series::zero_exact() }).collect())
            .collect();
        BasisMap { names: names.iter().map(|s| s.as_ref().to_string()).collect(), inv: m.clone(), m }
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn matrix(&self) -> &[Vec<Series>] {
        &self.m
    }

    pub fn inverse_matrix(&self) -> &[Vec<Series>] {
        &self.inv
    }

    pub fn row(&self, a: usize) -> Element<Series> {
        Element { coeffs: self.m[a].clone() }
    }

    /// Re-express an element of the old basis in the new one.
    pub fn to_new(&self, old: &Element<Series>) -> Element<Series> {
        let n = self.dim();
        let mut out: Element<Series> = Element::zero(n);
        for k in 0..n {
            if old.coeffs[k].is_zero() {
                continue;
            }
            for l in 0..n {
                if !self.inv[k][l].is_zero() {
                    out.coeffs[l] = out.coeffs[l].add_ref(&old.coeffs[k].mul_ref(&self.inv[k][l]));
                }
            }
        }
        out
    }

    /// The map "first `self`, then `next`" (rows of `next` are in the basis of `self`).
    pub fn compose(&self, next: &BasisMap) -> BasisMap {
        BasisMap {
            names: next.names.clone(),
            m: matmul(&next.m, &self.m),
            inv: matmul(&self.inv, &next.inv),
        }
    }

    pub fn inverse(&self, old_names: &[String]) -> BasisMap {
        BasisMap { names: old_names.to_vec(), m: self.inv.clone(), inv: self.m.clone() }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let want = if i == j { Series::from_int(1) } else { Series::zero_exact() };
                self.m[i][j] == want
            })
        })
    }

    /// `M M^{-1}`, for checking the cached inverse.
    pub fn product_with_inverse(&self) -> Vec<Vec<Series>> {
        matmul(&self.m, &self.inv)
    }
}

pub(crate) fn matmul(a: &[Vec<Series>], b: &[Vec<Series>]) -> Vec<Vec<Series>> {
    let n = a.len();
    let p = b[0].len();
    let mut out = vec![vec![Series::zero_exact(); p]; n];
    for i in 0..n {
        for k in 0..b.len() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..p {
                if !b[k][j].is_zero() {
                    out[i][j] = out[i][j].add_ref(&a[i][k].mul_ref(&b[k][j]));
                }
            }
        }
    }
    out
}

/// Gauss-Jordan elimination, preferring single-term pivots that invert exactly.
fn invert(m: &[Vec<Series>]) -> Result<Vec<Vec<Series>>> {
    let n = m.len();
    let mut a: Vec<Vec<Series>> = m.to_vec();
    let mut inv: Vec<Vec<Series>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Series::from_int(1) } else { Series::zero_exact() }).collect())
        .collect();
    for col in 0..n {
        let candidates: Vec<usize> = (col..n).filter(|&r| !a[r][col].is_zero()).collect();
        let pivot = candidates
            .iter()
            .copied()
            .find(|&r| a[r][col].len() == 1)
            .or_else(|| candidates.iter().copied().find(|&r| a[r][col].inverse().is_ok()))
            .ok_or(Error::Singular)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pinv = a[col][col].inverse().map_err(|_| Error::Singular)?;
        for j in 0..n {
            a[col][j] = a[col][j].mul_ref(&pinv);
            inv[col][j] = inv[col][j].mul_ref(&pinv);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = f.mul_ref(&a[col][j]);
                a[r][j] = a[r][j].sub_ref(&t);
                let t = f.mul_ref(&inv[col][j]);
                inv[r][j] = inv[r][j].sub_ref(&t);
            }
        }
    }
    Ok(inv)
}

/// A quadratic element `sum t^{ab} X_a X_b` with symmetric `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricTensor {
    n: usize,
    t: Vec<Series>,
}

impl SymmetricTensor {
    pub fn zero(n: usize) -> Self {
        SymmetricTensor { n, t: vec![Series::zero_exact(); n * n] }
    }

    pub fn get(&self, a: usize, b: usize) -> &Series {
        &self.t[a * self.n + b]
    }

    /// Add `c (X_a X_b + X_b X_a) / 2`.
    pub fn add_sym(&mut self, a: usize, b: usize, c: &Series) {
        if a == b {
            self.t[a * self.n + a] = self.t[a * self.n + a].add_ref(c);
        } else {
            let h = c.mul_ref(&expr::q(1, 2));
            self.t[a * self.n + b] = self.t[a * self.n + b].add_ref(&h);
            self.t[b * self.n + a] = self.t[b * self.n + a].add_ref(&h);
        }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.get(a, b) == self.get(b, a)))
    }

    pub fn map(&self, f: impl Fn(&Series) -> Result<Series>) -> Result<Self> {
        Ok(SymmetricTensor { n: self.n, t: self.t.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn dim(&self) -> usize {
        self.n
    }
}

/// AdS_omega with `omega = s^4`.
pub fn build_ads_omega() -> LieAlgebra<Series> {
    build_ads_omega_with(&Series::omega())
}

/// AdS_omega with an arbitrary curvature series.
pub fn build_ads_omega_with(omega: &Series) -> LieAlgebra<Series> {
    let mut l = LieAlgebra::new(&KIN_NAMES);
    let b = |l: &mut LieAlgebra<Series>, a: usize, c: usize, v: &[(usize, Series)]| {
        let mut e = Element::zero(6);
        for (k, x) in v {
            e.coeffs[*k] = x.clone();
        }
        l.set_bracket(a, c, &e);
    };
    let one = Series::from_int(1);
    let m1 = Series::from_int(-1);
    let ps = [P1, P2];
    let ks = [K1, K2];
    for i in 0..2 {
        for j in 0..2 {
            if EPS[i][j] != 0 {
                let e = Series::from_int(EPS[i][j]);
                b(&mut l, J, ps[i], &[(ps[j], e.clone())]);
                b(&mut l, J, ks[i], &[(ks[j], e)]);
            }
        }
        b(&mut l, ps[i], ks[i], &[(P0, m1.clone())]);
        b(&mut l, P0, ks[i], &[(ps[i], m1.clone())]);
        b(&mut l, P0, ps[i], &[(ks[i], omega.clone())]);
    }
    b(&mut l, K1, K2, &[(J, m1.clone())]);
    b(&mut l, P1, P2, &[(J, omega.neg_ref())]);
    let _ = one;
    l
}

/// The Lorentz/translation basis with `Lambda = -s^4`.
pub fn build_jt_basis() -> LieAlgebra<Series> {
    build_jt_basis_with(&Series::omega().neg_ref())
}

pub fn build_jt_basis_with(lambda: &Series) -> LieAlgebra<Series> {
    let mut l = LieAlgebra::new(&JT_NAMES);
    l.set("J0", "J1", "J2");
    l.set("J0", "J2", "-J1");
    l.set("J1", "J2", "-J0");
    l.set("J0", "T1", "T2");
    l.set("J0", "T2", "-T1");
    l.set("J1", "T0", "-T2");
    l.set("J1", "T2", "-T0");
    l.set("J2", "T0", "T1");
    l.set("J2", "T1", "T0");
    let (i0, i1, i2) = (l.index("T0").unwrap(), l.index("T1").unwrap(), l.index("T2").unwrap());
    let mut e = Element::zero(6);
    e.coeffs[2] = lambda.neg_ref();
    l.set_bracket(i0, i1, &e);
    let mut e = Element::zero(6);
    e.coeffs[1] = lambda.clone();
    l.set_bracket(i0, i2, &e);
    let mut e = Element::zero(6);
    e.coeffs[0] = lambda.clone();
    l.set_bracket(i1, i2, &e);
    l
}

/// sl(2) + sl(2): `[J3, Jp] = 2 Jp`, `[J3, Jm] = -2 Jm`, `[Jp, Jm] = J3` in each copy.
pub fn build_sl2_sum() -> LieAlgebra<Series> {
    let mut l = LieAlgebra::new(&SL2_NAMES);
    for c in ["1", "2"] {
        l.set(&format!("J3_{c}"), &format!("Jp_{c}"), &format!("2*Jp_{c}"));
        l.set(&format!("J3_{c}"), &format!("Jm_{c}"), &format!("-2*Jm_{c}"));
        l.set(&format!("Jp_{c}"), &format!("Jm_{c}"), &format!("J3_{c}"));
    }
    l
}

/// Space-like identification of the kinematical generators with the Lorentz/translation basis.
pub fn space_like_map() -> BasisMap {
    BasisMap::from_formulas(
        &build_jt_basis(),
        &[("J", "J0"), ("P0", "T0"), ("P1", "T1"), ("P2", "T2"), ("K1", "J2"), ("K2", "-J1")],
    )
    .expect("space-like map is invertible")
}

/// Complex time-like identification.
pub fn time_like_map() -> BasisMap {
    BasisMap::from_formulas(
        &build_jt_basis(),
        &[("J", "-i*J2"), ("P0", "i*T2"), ("P1", "-i*T0"), ("P2", "-T1"), ("K1", "J1"), ("K2", "-i*J0")],
    )
    .expect("time-like map is invertible")
}

/// The two identifications of AdS_omega (omega = s^4) with sl(2) + sl(2): (space-like, time-like).
pub fn sl2_basis_maps() -> (BasisMap, BasisMap) {
    let sl2 = build_sl2_sum();
    let space = BasisMap::from_formulas(
        &sl2,
        &[
            ("J", "1/(2*sqrt2*s)*(Jp_1 - Jp_2 + 2*eta*(-Jm_1 + Jm_2))"),
            ("P0", "s/(2*sqrt2)*(Jp_1 + Jp_2 - 2*eta*(Jm_1 + Jm_2))"),
            ("P1", "s/(2*sqrt2)*(Jp_1 + Jp_2 + 2*eta*(Jm_1 + Jm_2))"),
            ("P2", "eta/2*(J3_1 - J3_2)"),
            ("K1", "1/2*(J3_1 + J3_2)"),
            ("K2", "1/(2*sqrt2*s)*(-Jp_1 + Jp_2 + 2*eta*(-Jm_1 + Jm_2))"),
        ],
    )
    .expect("space-like sl2 map is invertible");
    let time = BasisMap::from_formulas(
        &sl2,
        &[
            ("J", "-i/2*(J3_1 + J3_2)"),
            ("P0", "i*eta/2*(J3_1 - J3_2)"),
            ("P1", "-i/2*s/sqrt2*(Jp_1 + Jp_2 - 2*eta*(Jm_1 + Jm_2))"),
            ("P2", "-1/2*s/sqrt2*(Jp_1 + Jp_2 + 2*eta*(Jm_1 + Jm_2))"),
            ("K1", "1/(2*sqrt2*s)*(Jp_1 - Jp_2 + 2*eta*(Jm_1 - Jm_2))"),
            ("K2", "-i/(2*sqrt2*s)*(Jp_1 - Jp_2 - 2*eta*(Jm_1 - Jm_2))"),
        ],
    )
    .expect("time-like sl2 map is invertible");
    (space, time)
}

/// Parity, time reversal and their product, in that order.
pub fn automorphisms() -> [(&'static str, BasisMap); 3] {
    [
        ("Pi", BasisMap::diagonal(&KIN_NAMES, &[1, 1, -1, -1, -1, -1])),
        ("Theta", BasisMap::diagonal(&KIN_NAMES, &[1, -1, 1, 1, -1, -1])),
        ("PiTheta", BasisMap::diagonal(&KIN_NAMES, &[1, -1, -1, -1, 1, 1])),
    ]
}

/// The quadratic Casimirs `C = P0^2 - P^2 + omega (J^2 - K^2)` and `W = -J P0 + K1 P2 - K2 P1`.
pub fn casimir_tensors() -> (SymmetricTensor, SymmetricTensor) {
    let mut c = SymmetricTensor::zero(6);
    let one = Series::from_int(1);
    let w = Series::omega();
    c.add_sym(P0, P0, &one);
    c.add_sym(P1, P1, &one.neg_ref());
    c.add_sym(P2, P2, &one.neg_ref());
    c.add_sym(J, J, &w);
    c.add_sym(K1, K1, &w.neg_ref());
    c.add_sym(K2, K2, &w.neg_ref());
    let mut wt = SymmetricTensor::zero(6);
    wt.add_sym(J, P0, &one.neg_ref());
    wt.add_sym(K1, P2, &one);
    wt.add_sym(K2, P1, &one.neg_ref());
    (c, wt)
}

impl fmt::Display for LieAlgebra<Series> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                let b = self.bracket_basis(i, j);
                if !b.is_zero() {
                    writeln!(f, "[{}, {}] = {}", self.names[i], self.names[j], self.display_element(&b))?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(l: &LieAlgebra<Series>, a: &str, b: &str) -> String {
        l.display_element(&l.bracket_named(a, b))
    }

    #[test]
    fn ads_brackets() {
        let l = build_ads_omega();
        assert_eq!(show(&l, "P0", "K1"), "-P1");
        assert_eq!(show(&l, "P1", "P2"), "-s^4*J");
        assert_eq!(show(&l, "J", "P0"), "0");
        assert_eq!(show(&l, "J", "P2"), "-P1");
        assert_eq!(show(&l, "P0", "P2"), "s^4*K2");
        assert!(l.is_antisymmetric());
    }

    #[test]
    fn jt_brackets() {
        let l = build_jt_basis();
        assert_eq!(show(&l, "T1", "T2"), "-s^4*J0");
        assert_eq!(show(&l, "J0", "T0"), "0");
        assert_eq!(show(&l, "J1", "J2"), "-J0");
    }

    #[test]
    fn jacobi_and_designed_failure() {
        let l = build_ads_omega();
        let rep = l.check_jacobi();
        assert_eq!(rep.residuals.len(), 20);
        assert!(rep.pass());
        let mut bad = l.clone();
        bad.set("P0", "K1", "P1");
        let fails = bad.check_jacobi().failures();
        assert!(fails.contains(&[J, P0, K1]));
        assert!(l.contract().unwrap().check_jacobi().pass());
    }

    #[test]
    fn kinematical_maps_reproduce_ads() {
        let jt = build_jt_basis();
        let ads = build_ads_omega();
        assert_eq!(jt.apply_basis_map(&space_like_map()).unwrap(), ads);
        assert_eq!(jt.apply_basis_map(&time_like_map()).unwrap(), ads);
        let id = BasisMap::identity(&JT_NAMES);
        assert_eq!(jt.apply_basis_map(&id).unwrap(), jt);
    }

    #[test]
    fn basis_map_round_trip() {
        let (space, time) = sl2_basis_maps();
        for m in [&space, &time] {
            assert!(BasisMap { names: m.names.clone(), m: m.product_with_inverse(), inv: vec![] }.is_identity());
        }
        let sl2 = build_sl2_sum();
        let ads = sl2.apply_basis_map(&space).unwrap();
        assert_eq!(ads, build_ads_omega());
        let back = ads.apply_basis_map(&space.inverse(sl2.names())).unwrap();
        assert_eq!(back, sl2);
        assert_eq!(sl2.apply_basis_map(&time).unwrap(), build_ads_omega());
    }

    #[test]
    fn automorphism_group() {
        let l = build_ads_omega();
        let autos = automorphisms();
        for (_, m) in &autos {
            assert!(l.check_automorphism(m));
        }
        let bad = BasisMap::from_formulas(&l, &[("J", "J"), ("P0", "P1"), ("P1", "P0"), ("P2", "P2"), ("K1", "K1"), ("K2", "K2")]).unwrap();
        assert!(!l.check_automorphism(&bad));
        // closure: the product of two distinct involutions is the third
        let prod = autos[0].1.compose(&autos[1].1);
        assert_eq!(prod.matrix(), autos[2].1.matrix());
    }

    #[test]
    fn casimirs_are_invariant() {
        let l = build_ads_omega();
        let (c, w) = casimir_tensors();
        assert!(c.is_symmetric() && w.is_symmetric());
        assert!(l.is_ad_invariant(&c));
        assert!(l.is_ad_invariant(&w));
        assert_eq!(c.get(K1, K1).to_string(), "-s^4");
        let c0 = c.map(|x| x.set_zero(Var::S)).unwrap();
        assert!(c0.get(J, J).is_zero());
        assert!(l.contract().unwrap().is_ad_invariant(&c0));
    }

    #[test]
    fn contraction() {
        let l = build_ads_omega().contract().unwrap();
        assert_eq!(show(&l, "P1", "P2"), "0");
        assert_eq!(show(&l, "P0", "K1"), "-P1");
        assert_eq!(l.contract().unwrap(), l);
    }

    #[test]
    fn sl2_cross_brackets_vanish() {
        let l = build_sl2_sum();
        assert!(l.bracket_named("Jp_1", "Jm_2").is_zero());
        let (space, _) = sl2_basis_maps();
        assert_eq!(l.display_element(&space.row(K1)), "1/2*J3_1 + 1/2*J3_2");
    }
}

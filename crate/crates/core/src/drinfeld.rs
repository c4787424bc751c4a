//! Drinfel'd doubles, classical r-matrices, cocommutators, the Schouten
//! bracket and the dual Lie algebras they induce.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::expr;
use crate::liealg::{
    self, build_ads_omega, build_sl2_sum, fmt_scaled, fmt_sum, BasisMap, Element, LieAlgebra, KIN_NAMES,
};
use crate::scalars::Var;
use crate::Series;

/// A rank-two tensor `sum t^{ij} e_i (x) e_j`; r-matrices and cocommutator values.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor2 {
    n: usize,
    t: Vec<Series>,
}

pub type RMatrix = Tensor2;

impl Tensor2 {
    pub fn zero(n: usize) -> Self {
        Tensor2 { n, t: vec![Series::zero_exact(); n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Series {
        &self.t[i * self.n + j]
    }

    pub fn add_at(&mut self, i: usize, j: usize, c: &Series) {
        let k = i * self.n + j;
        self.t[k] = self.t[k].add_ref(c);
    }

    /// Add `c a^b = c (a(x)b - b(x)a)`.
    pub fn add_wedge(&mut self, a: usize, b: usize, c: &Series) {
        self.add_at(a, b, c);
        self.add_at(b, a, &c.neg_ref());
    }

    /// Build from wedge terms `(coefficient formula, a, b)` over named generators.
    pub fn from_wedges(names: &[String], terms: &[(&str, &str, &str)]) -> Self {
        let mut r = Tensor2::zero(names.len());
        for (c, a, b) in terms {
            let ia = names.iter().position(|n| n == a).unwrap_or_else(|| panic!("no generator {}", a));
            let ib = names.iter().position(|n| n == b).unwrap_or_else(|| panic!("no generator {}", b));
            r.add_wedge(ia, ib, &expr::exact_scalar(c));
        }
        r
    }

    pub fn add(&self, o: &Self) -> Self {
        Tensor2 { n: self.n, t: self.t.iter().zip(&o.t).map(|(a, b)| a.add_ref(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Tensor2 { n: self.n, t: self.t.iter().zip(&o.t).map(|(a, b)| a.sub_ref(b)).collect() }
    }

    pub fn scale(&self, c: &Series) -> Self {
        Tensor2 { n: self.n, t: self.t.iter().map(|a| a.mul_ref(c)).collect() }
    }

    pub fn map(&self, f: impl Fn(&Series) -> Result<Series>) -> Result<Self> {
        Ok(Tensor2 { n: self.n, t: self.t.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Tensor2::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.t[j * n + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// `(t - t^T) / 2`.
    pub fn skew(&self) -> Self {
        self.sub(&self.transpose()).scale(&expr::q(1, 2))
    }

    /// `(t + t^T) / 2`.
    pub fn sym(&self) -> Self {
        self.add(&self.transpose()).scale(&expr::q(1, 2))
    }

    pub fn is_zero(&self) -> bool {
        self.t.iter().all(|c| c.is_zero())
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.add(&self.transpose()).is_zero()
    }

    /// Re-express in the new basis of `m` (the tensor lives in the old basis).
    pub fn transform(&self, m: &BasisMap) -> Self {
        let n = self.n;
        let inv = m.inverse_matrix();
        let mut out = Tensor2::zero(n);
        for i in 0..n {
            for j in 0..n {
                let c = self.get(i, j);
                if c.is_zero() {
                    continue;
                }
                for l in 0..n {
                    if inv[i][l].is_zero() {
                        continue;
                    }
                    let cl = c.mul_ref(&inv[i][l]);
                    for k in 0..n {
                        if !inv[j][k].is_zero() {
                            out.add_at(l, k, &cl.mul_ref(&inv[j][k]));
                        }
                    }
                }
            }
        }
        out
    }

    /// Substitute each generator by a linear combination (`images[i]` replaces `e_i`).
    pub fn substitute(&self, images: &[Element<Series>]) -> Self {
        let n = self.n;
        let mut out = Tensor2::zero(n);
        for i in 0..n {
            for j in 0..n {
                let c = self.get(i, j);
                if c.is_zero() {
                    continue;
                }
                for l in 0..n {
                    for k in 0..n {
                        let (a, b) = (&images[i].coeffs[l], &images[j].coeffs[k]);
                        if !a.is_zero() && !b.is_zero() {
                            out.add_at(l, k, &c.mul_ref(a).mul_ref(b));
                        }
                    }
                }
            }
        }
        out
    }

    /// Wedge form for antisymmetric tensors (`c*A^B`), tensor form `c*A@B` otherwise.
    pub fn display(&self, names: &[String]) -> String {
        let n = self.n;
        let mut parts = Vec::new();
        if self.is_antisymmetric() {
            for i in 0..n {
                for j in i + 1..n {
                    let c = self.get(i, j);
                    if !c.is_zero() {
                        parts.push(fmt_scaled(c, &format!("{}^{}", names[i], names[j])));
                    }
                }
            }
        } else {
            for i in 0..n {
                for j in 0..n {
                    let c = self.get(i, j);
                    if !c.is_zero() {
                        parts.push(fmt_scaled(c, &format!("{}@{}", names[i], names[j])));
                    }
                }
            }
        }
        fmt_sum(parts)
    }
}

/// A rank-three tensor; the Schouten bracket lives here.
#[derive(Clone, Debug, PartialEq)]
pub struct Trivector {
    n: usize,
    t: Vec<Series>,
}

impl Trivector {
    pub fn zero(n: usize) -> Self {
        Trivector { n, t: vec![Series::zero_exact(); n * n * n] }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Series {
        &self.t[(i * self.n + j) * self.n + k]
    }

    pub fn add_at(&mut self, i: usize, j: usize, k: usize, c: &Series) {
        let idx = (i * self.n + j) * self.n + k;
        self.t[idx] = self.t[idx].add_ref(c);
    }

    /// Add `c a^b^c` (sum over permutations with signs).
    pub fn add_wedge(&mut self, a: usize, b: usize, c: usize, x: &Series) {
        let m = x.neg_ref();
        self.add_at(a, b, c, x);
        self.add_at(b, c, a, x);
        self.add_at(c, a, b, x);
        self.add_at(b, a, c, &m);
        self.add_at(a, c, b, &m);
        self.add_at(c, b, a, &m);
    }

    pub fn from_wedges(names: &[String], terms: &[(&str, &str, &str, &str)]) -> Self {
        let idx = |s: &str| names.iter().position(|n| n == s).unwrap_or_else(|| panic!("no generator {}", s));
        let mut t = Trivector::zero(names.len());
        for (c, a, b, d) in terms {
            t.add_wedge(idx(a), idx(b), idx(d), &expr::exact_scalar(c));
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.t.iter().all(|c| c.is_zero())
    }

    pub fn is_totally_antisymmetric(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let x = self.get(i, j, k);
                    if *x != self.get(j, i, k).neg_ref() || *x != self.get(i, k, j).neg_ref() {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn map(&self, f: impl Fn(&Series) -> Result<Series>) -> Result<Self> {
        Ok(Trivector { n: self.n, t: self.t.iter().map(f).collect::<Result<_>>()? })
    }

    pub fn display(&self, names: &[String]) -> String {
        let n = self.n;
        let mut parts = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        parts.push(fmt_scaled(c, &format!("{}^{}^{}", names[i], names[j], names[k])));
                    }
                }
            }
        }
        fmt_sum(parts)
    }
}

/// `delta(X) = [X (x) 1 + 1 (x) X, r]` for every generator.
pub fn cocommutator(l: &LieAlgebra<Series>, r: &RMatrix) -> Vec<Tensor2> {
    let n = l.dim();
    (0..n)
        .map(|x| {
            let mut d = Tensor2::zero(n);
            for i in 0..n {
                for j in 0..n {
                    let rij = r.get(i, j);
                    if rij.is_zero() {
                        continue;
                    }
                    for k in 0..n {
                        let a = l.c(x, i, k);
                        if !a.is_zero() {
                            d.add_at(k, j, &rij.mul_ref(a));
                        }
                        let b = l.c(x, j, k);
                        if !b.is_zero() {
                            d.add_at(i, k, &rij.mul_ref(b));
                        }
                    }
                }
            }
            d
        })
        .collect()
}

/// `[[r, r]] = [r12, r13] + [r12, r23] + [r13, r23]`; `r` must be skew.
pub fn schouten(l: &LieAlgebra<Series>, r: &RMatrix) -> Result<Trivector> {
    if !r.is_antisymmetric() {
        return Err(Error::Domain("Schouten bracket needs a skew-symmetric r-matrix".into()));
    }
    let n = l.dim();
    let mut t = Trivector::zero(n);
    let nz: Vec<(usize, usize, &Series)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, r.get(i, j)))
        .filter(|(_, _, c)| !c.is_zero())
        .collect();
    for &(i, j, a) in &nz {
        for &(k, m, b) in &nz {
            let ab = a.mul_ref(b);
            for p in 0..n {
                let c1 = l.c(i, k, p);
                if !c1.is_zero() {
                    t.add_at(p, j, m, &ab.mul_ref(c1));
                }
                let c2 = l.c(j, k, p);
                if !c2.is_zero() {
                    t.add_at(i, p, m, &ab.mul_ref(c2));
                }
                let c3 = l.c(j, m, p);
                if !c3.is_zero() {
                    t.add_at(i, k, p, &ab.mul_ref(c3));
                }
            }
        }
    }
    Ok(t)
}

/// The diagonal adjoint action of `X_x` on a trivector.
pub fn ad_trivector(l: &LieAlgebra<Series>, x: usize, t: &Trivector) -> Trivector {
    let n = l.dim();
    let mut out = Trivector::zero(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = t.get(i, j, k);
                if c.is_zero() {
                    continue;
                }
                for p in 0..n {
                    if !l.c(x, i, p).is_zero() {
                        out.add_at(p, j, k, &c.mul_ref(l.c(x, i, p)));
                    }
                    if !l.c(x, j, p).is_zero() {
                        out.add_at(i, p, k, &c.mul_ref(l.c(x, j, p)));
                    }
                    if !l.c(x, k, p).is_zero() {
                        out.add_at(i, j, p, &c.mul_ref(l.c(x, k, p)));
                    }
                }
            }
        }
    }
    out
}

/// True iff `t` is invariant under the diagonal action of every generator.
pub fn check_mcybe_invariance(l: &LieAlgebra<Series>, t: &Trivector) -> bool {
    (0..l.dim()).all(|x| ad_trivector(l, x, t).is_zero())
}

/// `[X (x) 1 + 1 (x) X, t]` for a rank-two tensor.
pub fn ad_tensor2(l: &LieAlgebra<Series>, x: usize, t: &Tensor2) -> Tensor2 {
    let n = l.dim();
    let mut out = Tensor2::zero(n);
    for i in 0..n {
        for j in 0..n {
            let c = t.get(i, j);
            if c.is_zero() {
                continue;
            }
            for p in 0..n {
                if !l.c(x, i, p).is_zero() {
                    out.add_at(p, j, &c.mul_ref(l.c(x, i, p)));
                }
                if !l.c(x, j, p).is_zero() {
                    out.add_at(i, p, &c.mul_ref(l.c(x, j, p)));
                }
            }
        }
    }
    out
}

pub fn is_invariant_tensor2(l: &LieAlgebra<Series>, t: &Tensor2) -> bool {
    (0..l.dim()).all(|x| ad_tensor2(l, x, t).is_zero())
}

/// Dual brackets `[x^i, x^j] = sum_k delta(e_k)^{ij} x^k`; fails if co-Jacobi fails.
pub fn dual_lie_brackets<S: AsRef<str>>(delta: &[Tensor2], dual_names: &[S]) -> Result<LieAlgebra<Series>> {
    let n = delta.len();
    let mut d = LieAlgebra::new(dual_names);
    for i in 0..n {
        for j in i + 1..n {
            let mut e = Element::zero(n);
            for k in 0..n {
                e.coeffs[k] = delta[k].get(i, j).clone();
            }
            d.set_bracket(i, j, &e);
        }
    }
    if !delta.iter().all(|t| t.is_antisymmetric()) {
        return Err(Error::Domain("cocommutator is not antisymmetric".into()));
    }
    if !d.check_jacobi().pass() {
        return Err(Error::Domain("cocommutator violates co-Jacobi".into()));
    }
    Ok(d)
}

/// Names of the coordinates dual to `(J, P0, P1, P2, K1, K2)`.
pub const DUAL_NAMES: [&str; 6] = ["th", "x0", "x1", "x2", "xi1", "xi2"];

/// `r = z (K1^P1 + K2^P2) + theta J^P0`.
pub fn two_param_r() -> RMatrix {
    Tensor2::from_wedges(&kin_names(), &[("z", "K1", "P1"), ("z", "K2", "P2"), ("theta", "J", "P0")])
}

pub fn kin_names() -> Vec<String> {
    KIN_NAMES.iter().map(|s| s.to_string()).collect()
}

/// The skew r-matrix common to both doubles in the kinematical basis.
pub fn r_prime_space() -> RMatrix {
    Tensor2::from_wedges(&kin_names(), &[("1/2", "P0", "K2"), ("1/2", "P1", "J"), ("1/2", "K1", "P2")])
}

/// The same r-matrix written in the time-like kinematical basis.
pub fn r_prime_time() -> RMatrix {
    Tensor2::from_wedges(&kin_names(), &[("i/2", "K1", "P1"), ("i/2", "K2", "P2"), ("1/2", "J", "P0")])
}

/// `z (P0^K2 + P1^J) + z K1^P2`.
pub fn r_space() -> RMatrix {
    r_prime_space().scale(&expr::exact_scalar("2*z"))
}

/// `z (K1^P1 + K2^P2) - i z J^P0`.
pub fn r_time() -> RMatrix {
    r_prime_time().scale(&expr::exact_scalar("-2*i*z"))
}

/// Images of `(J, P0, P1, P2, K1, K2)` under the time-like to space-like substitution.
pub fn time_to_space_images() -> Vec<Element<Series>> {
    let l = build_ads_omega();
    ["-i*K1", "i*P2", "-i*P0", "-P1", "-K2", "-i*J"]
        .iter()
        .map(|f| l.linear(f).expect("valid substitution"))
        .collect()
}

/// Substitute `theta = -i z`, the value reproducing the double.
pub fn theta_dd_value(s: &Series) -> Result<Series> {
    s.substitute(Var::Theta, &expr::exact_scalar("-i*z"))
}

/// A Lie algebra of dimension `2d` split as `(Y_1..Y_d, y^1..y^d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DrinfeldDouble {
    pub algebra: LieAlgebra<Series>,
    pub d: usize,
    /// Changes of basis to the Lorentz/translation basis.
    pub to_jt: BasisMap,
}

#[derive(Clone, Debug, Default)]
pub struct DoubleReport {
    pub halves_close: bool,
    pub crossed_form: bool,
    pub pairing_invariant: bool,
    pub jacobi: bool,
    pub detail: Vec<String>,
}

impl DoubleReport {
    pub fn pass(&self) -> bool {
        self.halves_close && self.crossed_form && self.pairing_invariant && self.jacobi
    }
}

const DD_NAMES: [&str; 6] = ["Y0", "Y1", "Y2", "y0", "y1", "y2"];

impl DrinfeldDouble {
    /// The symmetric pairing `<y^i, Y_j> = delta^i_j`.
    pub fn pairing(&self) -> Tensor2 {
        let mut p = Tensor2::zero(2 * self.d);
        for i in 0..self.d {
            p.add_at(i, self.d + i, &Series::from_int(1));
            p.add_at(self.d + i, i, &Series::from_int(1));
        }
        p
    }

    pub fn validate(&self) -> DoubleReport {
        let l = &self.algebra;
        let d = self.d;
        let n = 2 * d;
        let mut rep = DoubleReport { halves_close: true, crossed_form: true, pairing_invariant: true, ..Default::default() };
        for i in 0..n {
            for j in 0..n {
                let lower = i < d && j < d;
                let upper = i >= d && j >= d;
                if !(lower || upper) {
                    continue;
                }
                for k in 0..n {
                    let outside = if lower { k >= d } else { k < d };
                    if outside && !l.c(i, j, k).is_zero() {
                        rep.halves_close = false;
                        rep.detail.push(format!("[{},{}] leaves its half", l.names()[i], l.names()[j]));
                    }
                }
            }
        }
        // [y^i, Y_j] = c^i_{jk} y^k - f^{ik}_j Y_k
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let want_y = l.c(j, k, i).clone();
                    let want_big = l.c(d + i, d + k, d + j).neg_ref();
                    if *l.c(d + i, j, d + k) != want_y || *l.c(d + i, j, k) != want_big {
                        rep.crossed_form = false;
                        rep.detail.push(format!("crossed bracket [y{},Y{}] component {}", i, j, k));
                    }
                }
            }
        }
        let p = self.pairing();
        for x in 0..n {
            for u in 0..n {
                for v in 0..n {
                    let mut acc = Series::zero_exact();
                    for k in 0..n {
                        acc = acc.add_ref(&l.c(x, u, k).mul_ref(p.get(k, v)));
                        acc = acc.add_ref(&l.c(x, v, k).mul_ref(p.get(u, k)));
                    }
                    if !acc.is_zero() {
                        rep.pairing_invariant = false;
                        rep.detail.push(format!(
                            "pairing not invariant at ({},{},{}): {}",
                            l.names()[x],
                            l.names()[u],
                            l.names()[v],
                            acc
                        ));
                    }
                }
            }
        }
        rep.jacobi = l.check_jacobi().pass();
        rep
    }

    /// `r = sum y^i (x) Y_i`.
    pub fn canonical_r(&self) -> RMatrix {
        let mut r = Tensor2::zero(2 * self.d);
        for i in 0..self.d {
            r.add_at(self.d + i, i, &Series::from_int(1));
        }
        r
    }

    /// The canonical r-matrix's skew part pushed into the kinematical basis.
    pub fn kinematical_r_prime(&self) -> RMatrix {
        self.canonical_r().skew().transform(&self.to_jt).transform(&liealg::space_like_map())
    }

    /// The algebra in the kinematical basis.
    pub fn kinematical_algebra(&self) -> Result<LieAlgebra<Series>> {
        self.algebra.apply_basis_map(&self.to_jt)?.apply_basis_map(&liealg::space_like_map())
    }
}

fn double_from(brackets: &[(&str, &str, &str)], jt: &[(&str, &str)]) -> DrinfeldDouble {
    let mut l = LieAlgebra::new(&DD_NAMES);
    for (a, b, rhs) in brackets {
        l.set(a, b, rhs);
    }
    let to_jt = BasisMap::from_formulas(&l, jt).expect("double basis map is invertible");
    DrinfeldDouble { algebra: l, d: 3, to_jt }
}

/// The double whose kinematical form is AdS (`eta = s^2`, `Lambda = -eta^2`).
pub fn build_dd_case_f() -> DrinfeldDouble {
    double_from(
        &[
            ("Y0", "Y1", "-Y2"),
            ("Y0", "Y2", "-Y1"),
            ("y0", "y1", "eta*y1"),
            ("y0", "y2", "eta*y2"),
            ("y0", "Y1", "-eta*Y1"),
            ("y0", "Y2", "-eta*Y2"),
            ("y1", "Y0", "-y2"),
            ("y1", "Y1", "eta*Y0"),
            ("y1", "Y2", "y0"),
            ("y2", "Y0", "-y1"),
            ("y2", "Y1", "y0"),
            ("y2", "Y2", "eta*Y0"),
        ],
        &[
            ("J0", "(Y2 - y1)/(sqrt2*s)"),
            ("J1", "(Y2 + y1)/(sqrt2*s)"),
            ("J2", "-y0/eta"),
            ("T0", "s/sqrt2*(Y1 - y2)"),
            ("T1", "s/sqrt2*(Y1 + y2)"),
            ("T2", "-eta*Y0"),
        ],
    )
}

/// The double whose kinematical form is dS (`Lambda = eta^2`, so `omega = -s^4`).
pub fn build_dd_case_c() -> DrinfeldDouble {
    double_from(
        &[
            ("Y0", "Y1", "Y2"),
            ("Y0", "Y2", "-Y1"),
            ("y0", "y1", "-eta*y1"),
            ("y0", "y2", "-eta*y2"),
            ("y0", "Y1", "eta*Y1"),
            ("y0", "Y2", "eta*Y2"),
            ("y1", "Y0", "-y2"),
            ("y1", "Y1", "-eta*Y0"),
            ("y1", "Y2", "y0"),
            ("y2", "Y0", "y1"),
            ("y2", "Y1", "-y0"),
            ("y2", "Y2", "-eta*Y0"),
        ],
        &[
            ("J0", "(Y1 - y2)/(sqrt2*s)"),
            ("J1", "(Y1 + y2)/(sqrt2*s)"),
            ("J2", "y0/eta"),
            ("T0", "s/sqrt2*(Y2 - y1)"),
            ("T1", "s/sqrt2*(Y2 + y1)"),
            ("T2", "eta*Y0"),
        ],
    )
}

/// `r = alpha Jp_1^Jm_1 + beta Jp_2^Jm_2 + delta/2 J3_1^J3_2` on sl(2) + sl(2).
pub fn build_three_param_r() -> RMatrix {
    let names: Vec<String> = build_sl2_sum().names().to_vec();
    Tensor2::from_wedges(&names, &[("alpha", "Jp_1", "Jm_1"), ("beta", "Jp_2", "Jm_2"), ("delta/2", "J3_1", "J3_2")])
}

/// A compact multi-line rendering of a cocommutator table.
pub fn display_cocommutator(names: &[String], delta: &[Tensor2]) -> String {
    let mut out = String::new();
    for (x, d) in delta.iter().enumerate() {
        let _ = writeln!(out, "delta({}) = {}", names[x], d.display(names));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kin() -> Vec<String> {
        kin_names()
    }

    #[test]
    fn case_f_brackets() {
        let f = build_dd_case_f();
        let l = &f.algebra;
        assert_eq!(l.display_element(&l.bracket_named("y0", "y1")), "s^2*y1");
        assert_eq!(l.display_element(&l.bracket_named("y1", "Y1")), "s^2*Y0");
        let c = build_dd_case_c();
        assert_eq!(c.algebra.display_element(&c.algebra.bracket_named("y2", "Y2")), "-s^2*Y0");
    }

    #[test]
    fn doubles_validate() {
        for d in [build_dd_case_f(), build_dd_case_c()] {
            let rep = d.validate();
            assert!(rep.pass(), "{:?}", rep.detail);
        }
        let mut bad = build_dd_case_f();
        bad.algebra.set("y1", "Y2", "-y0");
        let rep = bad.validate();
        assert!(!rep.pairing_invariant);
        assert!(!rep.pass());
    }

    #[test]
    fn doubles_map_to_kinematical_algebras() {
        assert_eq!(build_dd_case_f().kinematical_algebra().unwrap(), build_ads_omega());
        let omega = Series::omega().neg_ref();
        assert_eq!(build_dd_case_c().kinematical_algebra().unwrap(), liealg::build_ads_omega_with(&omega));
    }

    #[test]
    fn common_r_matrix() {
        for d in [build_dd_case_f(), build_dd_case_c()] {
            let r = d.kinematical_r_prime();
            assert_eq!(r, r_prime_space(), "{}", r.display(&kin()));
        }
    }

    #[test]
    fn omega_is_invariant() {
        for d in [build_dd_case_f(), build_dd_case_c()] {
            let r = d.canonical_r();
            let omega = r.sub(&r.skew());
            assert_eq!(omega, r.sym());
            assert!(is_invariant_tensor2(&d.algebra, &omega));
        }
    }

    #[test]
    fn schouten_of_two_param_r() {
        let l = build_ads_omega();
        let t = schouten(&l, &two_param_r()).unwrap();
        let want = Trivector::from_wedges(
            &kin(),
            &[
                ("-z^2", "P0", "P1", "K1"),
                ("-z^2", "P0", "P2", "K2"),
                ("-z^2", "P1", "P2", "J"),
                ("-z^2*omega", "K1", "K2", "J"),
            ],
        );
        assert_eq!(t.display(&kin()), want.display(&kin()));
        assert!(check_mcybe_invariance(&l, &t));
        let t0 = schouten(&l, &two_param_r().map(|c| c.set_zero(Var::Theta)).unwrap()).unwrap();
        assert_eq!(t0, t);
    }

    #[test]
    fn cocommutator_table() {
        let l = build_ads_omega();
        let d = cocommutator(&l, &two_param_r());
        assert!(d[liealg::P0].is_zero() && d[liealg::J].is_zero());
        let want = Tensor2::from_wedges(
            &kin(),
            &[("z", "P1", "P0"), ("-z*omega", "K2", "J"), ("theta", "P0", "P2"), ("theta*omega", "K1", "J")],
        );
        assert_eq!(d[liealg::P1], want);
        let dual = dual_lie_brackets(&d, &DUAL_NAMES).unwrap();
        assert_eq!(dual.display_element(&dual.bracket_named("x0", "x1")), "-z*x1 - theta*x2");
    }

    #[test]
    fn time_and_space_r_matrices_correspond() {
        let imgs = time_to_space_images();
        assert_eq!(r_prime_time().substitute(&imgs), r_prime_space());
        let minus_i = expr::exact_scalar("-i");
        assert_eq!(r_time().substitute(&imgs), r_space().scale(&minus_i));
        let r = two_param_r().map(theta_dd_value).unwrap();
        assert_eq!(r, r_time());
    }

    #[test]
    fn time_like_map_carries_r_prime() {
        let d = build_dd_case_f();
        let r = d.canonical_r().skew().transform(&d.to_jt).transform(&liealg::time_like_map());
        assert_eq!(r, r_prime_time(), "{}", r.display(&kin()));
    }

    #[test]
    fn three_param_r_matches_r_prime() {
        let sl2 = build_sl2_sum();
        let (space, _) = liealg::sl2_basis_maps();
        let image = r_prime_space().transform(&space.inverse(sl2.names()));
        let r3 = build_three_param_r()
            .map(|c| {
                c.substitute(Var::Alpha, &expr::exact_scalar("-eta/2"))?
                    .substitute(Var::Beta, &expr::exact_scalar("eta/2"))?
                    .substitute(Var::Delta, &expr::exact_scalar("-eta/2"))
            })
            .unwrap();
        assert_eq!(image, r3, "{}", image.display(sl2.names()));
        let d = cocommutator(&sl2, &build_three_param_r());
        assert!(d[0].is_zero());
        let want = Tensor2::from_wedges(sl2.names(), &[("alpha", "Jp_1", "J3_1"), ("-delta", "Jp_1", "J3_2")]);
        assert_eq!(d[2], want, "{}", d[2].display(sl2.names()));
    }

    #[test]
    fn time_like_sl2_image() {
        let sl2 = build_sl2_sum();
        let (_, time) = liealg::sl2_basis_maps();
        let image = r_prime_time().transform(&time.inverse(sl2.names()));
        let want = Tensor2::from_wedges(
            sl2.names(),
            &[("-eta/2", "Jp_1", "Jm_1"), ("eta/2", "Jp_2", "Jm_2"), ("-eta/4", "J3_1", "J3_2")],
        );
        assert_eq!(image, want, "{}", image.display(sl2.names()));
    }
}

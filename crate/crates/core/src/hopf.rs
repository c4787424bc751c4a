//! The twisted kappa-deformed enveloping algebras in the symmetrical and
//! bicrossproduct-type bases, their coproducts, the twist, and the checks
//! tying them together.
//!
//! Closed forms are kept as formula data below and expanded by the series
//! engine; twisted coproducts are computed independently by conjugation.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{self, Expr};
use crate::liealg::KIN_NAMES;
use crate::pbw::{eval_tensor_with, Algebra, Coproduct, Poly, PolyCtx, Tensor, TensorCtx};
use crate::report::Check;
use crate::scalars::Var;
use crate::Series;

pub type UEAElement = Poly<Series>;
pub type TensorUEA = Tensor<Series>;
pub type DeformedAlgebra = Algebra<Series>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Symmetrical,
    Bicross,
}

impl Basis {
    pub const ALL: [Basis; 2] = [Basis::Symmetrical, Basis::Bicross];

    pub fn name(self) -> &'static str {
        match self {
            Basis::Symmetrical => "symmetrical",
            Basis::Bicross => "bicross",
        }
    }

    pub fn from_name(s: &str) -> Option<Basis> {
        Basis::ALL.into_iter().find(|b| b.name() == s)
    }
}

/// The curved algebra or its flat (Poincare) counterpart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    AdS,
    Poincare,
}

/// Shorthands shared by the coproduct formulas.
const SHORTHANDS: [(&str, &str); 12] = [
    ("Em", "exp(-z/2*P0)"),
    ("Ep", "exp(z/2*P0)"),
    ("Ch", "cosh(z/2*eta*J)"),
    ("Sh", "sinh(z/2*eta*J)"),
    ("E1", "exp(-z*P0)"),
    ("C1", "cosh(z*eta*J)"),
    ("S1", "sinh(z*eta*J)"),
    ("cc", "(cos(theta*eta*J)*cos(theta*P0) - 1)"),
    ("sP", "sin(theta*P0)"),
    ("cP", "cos(theta*P0)"),
    ("sJ", "sin(theta*eta*J)"),
    ("cJ", "cos(theta*eta*J)"),
];

/// `Pi, Ki` and `eP = eps_ij P_j`, `eK = eps_ij K_j` for `i = 1, 2`.
fn index_bindings(i: usize) -> [(&'static str, &'static str); 4] {
    if i == 1 {
        [("Pi", "P1"), ("Ki", "K1"), ("eP", "P2"), ("eK", "K2")]
    } else {
        [("Pi", "P2"), ("Ki", "K2"), ("eP", "-P1"), ("eK", "-K1")]
    }
}

/// Untwisted coproducts of `P_i` and `K_i`.
fn dz_formulas(basis: Basis, family: Family) -> (&'static str, &'static str) {
    match (basis, family) {
        (Basis::Symmetrical, Family::AdS) => (
            "Em*Ch@Pi + Pi@Ep*Ch + eta*Em*Sh@eK - eta*eK@Ep*Sh",
            "Em*Ch@Ki + Ki@Ep*Ch - Em*Sh/eta@eP + eP@Ep*Sh/eta",
        ),
        (Basis::Bicross, Family::AdS) => ("E1@Pi + Pi@C1 - eta*eK@S1", "E1@Ki + Ki@C1 + eP@S1/eta"),
        (Basis::Symmetrical, Family::Poincare) => {
            ("Em@Pi + Pi@Ep", "Em@Ki + Ki@Ep - z/2*Em*J@eP + z/2*eP@Ep*J")
        }
        (Basis::Bicross, Family::Poincare) => ("E1@Pi + Pi@1", "E1@Ki + Ki@1 + z*eP@J"),
    }
}

/// Closed forms of the twisted coproducts of `P_i` and `K_i`.
fn twisted_formulas(basis: Basis, family: Family) -> (&'static str, &'static str) {
    match (basis, family) {
        (Basis::Symmetrical, Family::AdS) => (
            "DzPi + Em*Ch*cc@Pi + Em*Ch*sP*cJ@eP - eta*Em*Ch*sJ*cP@Ki - eta*Em*Ch*sJ*sP@eK \
             + Pi@Ep*Ch*cc - eP@Ep*Ch*sP*cJ + eta*Ki@Ep*Ch*sJ*cP - eta*eK@Ep*Ch*sJ*sP \
             - Em*Sh*sJ*sP@Pi + Em*Sh*sJ*cP@eP - eta*Em*Sh*sP*cJ@Ki + eta*Em*Sh*cc@eK \
             + Pi@Ep*Sh*sJ*sP + eP@Ep*Sh*sJ*cP - eta*Ki@Ep*Sh*sP*cJ - eta*eK@Ep*Sh*cc",
            "DzKi + Em*Ch*cc@Ki + Em*Ch*sP*cJ@eK + Em*Ch*sJ/eta*cP@Pi + Em*Ch*sJ/eta*sP@eP \
             + Ki@Ep*Ch*cc - eK@Ep*Ch*sP*cJ - Pi@Ep*Ch*sJ/eta*cP + eP@Ep*Ch*sJ/eta*sP \
             - Em*Sh*sJ*sP@Ki + Em*Sh*sJ*cP@eK + Em*Sh/eta*sP*cJ@Pi - Em*Sh/eta*cc@eP \
             + Ki@Ep*Sh*sJ*sP + eK@Ep*Sh*sJ*cP + Pi@Ep*Sh/eta*sP*cJ + eP@Ep*Sh/eta*cc",
        ),
        (Basis::Bicross, Family::AdS) => (
            "DzPi + E1*cc@Pi + E1*sP*cJ@eP - eta*E1*sJ*cP@Ki - eta*E1*sJ*sP@eK \
             + Pi@C1*cc - eP@C1*sP*cJ + eta*Ki@C1*sJ*cP - eta*eK@C1*sJ*sP \
             + Pi@S1*sJ*sP + eP@S1*sJ*cP - eta*Ki@S1*sP*cJ - eta*eK@S1*cc",
            "DzKi + E1*cc@Ki + E1*sP*cJ@eK + E1*sJ/eta*cP@Pi + E1*sJ/eta*sP@eP \
             + Ki@C1*cc - eK@C1*sP*cJ - Pi@C1*sJ/eta*cP + eP@C1*sJ/eta*sP \
             + Ki@S1*sJ*sP + eK@S1*sJ*cP + Pi@S1/eta*sP*cJ + eP@S1/eta*cc",
        ),
        (Basis::Symmetrical, Family::Poincare) => (
            "DzPi + Pi@Ep*(cP - 1) + Em*(cP - 1)@Pi - eP@Ep*sP + Em*sP@eP",
            "DzKi + Ki@Ep*(cP - 1) + Em*(cP - 1)@Ki - eK@Ep*sP + Em*sP@eK \
             - theta*Pi@Ep*J*cP + theta*Em*J*cP@Pi + theta*eP@Ep*J*sP + theta*Em*J*sP@eP \
             + z/2*Pi@Ep*J*sP + z/2*Em*J*sP@Pi + z/2*eP@Ep*J*(cP - 1) - z/2*Em*J*(cP - 1)@eP",
        ),
        (Basis::Bicross, Family::Poincare) => (
            "DzPi + Pi@(cP - 1) + E1*(cP - 1)@Pi - eP@sP + E1*sP@eP",
            "DzKi + Ki@(cP - 1) + E1*(cP - 1)@Ki - eK@sP + E1*sP@eK \
             - theta*Pi@J*cP + theta*E1*J*cP@Pi + theta*E1*J*sP@eP + theta*eP@J*sP \
             + z*Pi@J*sP + z*eP@J*(cP - 1)",
        ),
    }
}

/// One deformed commutator `[a, b] = formula`, with index bindings.
#[derive(Clone, Debug)]
pub struct CommutatorEntry {
    pub a: &'static str,
    pub b: &'static str,
    pub formula: String,
    pub bindings: Vec<(&'static str, &'static str)>,
}

fn entry(a: &'static str, b: &'static str, f: &str) -> CommutatorEntry {
    CommutatorEntry { a, b, formula: f.to_string(), bindings: Vec::new() }
}

/// The deformed commutators, in an order where each right-hand side only
/// needs rules installed before it.
pub fn commutator_table(basis: Basis, family: Family) -> Vec<CommutatorEntry> {
    let flat = family == Family::Poincare;
    let mut t = vec![
        entry("J", "P0", "0"),
        entry("J", "P1", "P2"),
        entry("J", "P2", "-P1"),
        entry("J", "K1", "K2"),
        entry("J", "K2", "-K1"),
        entry("P0", "P1", if flat { "0" } else { "omega*K1" }),
        entry("P0", "P2", if flat { "0" } else { "omega*K2" }),
        entry("P0", "K1", "-P1"),
        entry("P0", "K2", "-P2"),
    ];
    let (p12, k12) = match (basis, family) {
        (Basis::Symmetrical, Family::AdS) => (
            "-omega*sinh(z*eta*J)/(z*eta)*cosh(z*P0)",
            "-sinh(z*eta*J)/(z*eta)*cosh(z*P0)",
        ),
        (Basis::Bicross, Family::AdS) => ("-omega*sinh(2*z*eta*J)/(2*z*eta)", "-sinh(2*z*eta*J)/(2*z*eta)"),
        (Basis::Symmetrical, Family::Poincare) => ("0", "-J*cosh(z*P0)"),
        (Basis::Bicross, Family::Poincare) => ("0", "-J"),
    };
    t.push(entry("P1", "P2", p12));
    t.push(entry("K1", "K2", k12));
    let (diag, all) = match (basis, family) {
        (Basis::Symmetrical, Family::AdS) => ("-cosh(z*eta*J)*sinh(z*P0)/z", "0"),
        (Basis::Symmetrical, Family::Poincare) => ("-sinh(z*P0)/z", "0"),
        (Basis::Bicross, Family::AdS) => (
            "(exp(-2*z*P0) - cosh(2*z*eta*J))/(2*z) - tan(z*eta)/(2*eta)*(P1^2 + P2^2 + omega*(K1^2 + K2^2))",
            "tan(z*eta)/eta*(Pj*Pi + omega*Ki*Kj)",
        ),
        (Basis::Bicross, Family::Poincare) => ("(exp(-2*z*P0) - 1)/(2*z) - z/2*(P1^2 + P2^2)", "z*Pj*Pi"),
    };
    for (i, pi, ki) in [(1, "P1", "K1"), (2, "P2", "K2")] {
        for (j, pj, kj) in [(1, "P1", "K1"), (2, "P2", "K2")] {
            let formula = match (i == j, all) {
                (true, "0") => diag.to_string(),
                (true, _) => format!("{} + {}", diag, all),
                (false, f) => f.to_string(),
            };
            t.push(CommutatorEntry {
                a: pi,
                b: kj,
                formula,
                bindings: vec![("Pi", pi), ("Pj", pj), ("Ki", ki), ("Kj", kj)],
            });
        }
    }
    t
}

/// Closed forms of the two deformed Casimirs.
pub fn casimir_formulas(basis: Basis, family: Family) -> (&'static str, &'static str) {
    match (basis, family) {
        (Basis::Symmetrical, Family::AdS) => (
            "4*cos(z*eta)*(sinh(z/2*P0)^2/z^2*cosh(z/2*eta*J)^2 + sinh(z/2*eta*J)^2/z^2*cosh(z/2*P0)^2) \
             - sin(z*eta)/(z*eta)*(P1^2 + P2^2 + omega*(K1^2 + K2^2))",
            "-cos(z*eta)*sinh(z*eta*J)/(z*eta)*sinh(z*P0)/z + sin(z*eta)/(z*eta)*(K1*P2 - K2*P1)",
        ),
        (Basis::Bicross, Family::AdS) => (
            "4*cos(z*eta)*(sinh(z/2*P0)^2/z^2*cosh(z/2*eta*J)^2 + sinh(z/2*eta*J)^2/z^2*cosh(z/2*P0)^2) \
             - sin(z*eta)/(z*eta)*exp(z*P0)*(cosh(z*eta*J)*(P1^2 + P2^2 + omega*(K1^2 + K2^2)) \
             - 2*eta*sinh(z*eta*J)*(K1*P2 - K2*P1))",
            "-cos(z*eta)*sinh(z*eta*J)/(z*eta)*sinh(z*P0)/z + sin(z*eta)/(z*eta)*exp(z*P0)*(cosh(z*eta*J)*(K1*P2 - K2*P1) \
             - sinh(z*eta*J)/(2*eta)*(P1^2 + P2^2 + omega*(K1^2 + K2^2)))",
        ),
        (Basis::Symmetrical, Family::Poincare) => (
            "4*sinh(z/2*P0)^2/z^2 - (P1^2 + P2^2)",
            "-J*sinh(z*P0)/z + K1*P2 - K2*P1",
        ),
        (Basis::Bicross, Family::Poincare) => (
            "4*sinh(z/2*P0)^2/z^2 - exp(z*P0)*(P1^2 + P2^2)",
            "-J*sinh(z*P0)/z + exp(z*P0)*(K1*P2 - K2*P1 - z/2*J*(P1^2 + P2^2))",
        ),
    }
}

/// Images of the bicrossproduct-type generators in the symmetrical basis.
fn qa_formulas(family: Family) -> (&'static str, &'static str) {
    match family {
        Family::AdS => (
            "Em*(Ch*Pi - eta*Sh*eK)",
            "Em*(Ch*Ki + Sh/eta*eP)",
        ),
        Family::Poincare => ("Em*Pi", "Em*(Ki + z/2*J*eP)"),
    }
}

fn bindings_for(extra: &[(&str, &str)]) -> Result<HashMap<String, Expr>> {
    let mut pairs: Vec<(&str, &str)> = SHORTHANDS.to_vec();
    pairs.extend_from_slice(extra);
    expr::bindings(&pairs)
}

fn gen_index(name: &str) -> usize {
    KIN_NAMES.iter().position(|n| *n == name).unwrap_or_else(|| panic!("no generator {}", name))
}

/// A deformed algebra with its untwisted coproduct at a fixed order.
#[derive(Clone, Debug)]
pub struct HopfData {
    pub basis: Basis,
    pub family: Family,
    pub order: i32,
    pub alg: DeformedAlgebra,
    pub delta: Coproduct<Series>,
}

impl std::fmt::Debug for Coproduct<Series> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = KIN_NAMES.iter().map(|s| s.to_string()).collect();
        for (k, t) in self.images.iter().enumerate() {
            writeln!(f, "Delta({}) = {}", names[k], t.display(&names))?;
        }
        Ok(())
    }
}

/// Build the rules of a deformed algebra from a commutator table.
pub fn build_algebra(table: &[CommutatorEntry], order: i32) -> Result<DeformedAlgebra> {
    let mut alg = Algebra::new(&KIN_NAMES, Some(order));
    for e in table {
        let b = expr::bindings(&e.bindings)?;
        let v = expr::eval_str(&e.formula, &PolyCtx::new(&alg), &b, order)?;
        alg.set_commutator(gen_index(e.a), gen_index(e.b), v)?;
    }
    if !alg.is_complete() {
        return Err(Error::Internal("commutator table leaves a pair without a rule".into()));
    }
    Ok(alg)
}

/// Evaluate a coproduct-style formula for generator index `i` (1 or 2) into `alg (x) alg`.
pub fn eval_indexed(
    alg: &DeformedAlgebra,
    overrides: &HashMap<String, UEAElement>,
    src: &str,
    i: usize,
    extra: &[(&str, &str)],
    order: i32,
) -> Result<TensorUEA> {
    let mut pairs: Vec<(&str, &str)> = index_bindings(i).to_vec();
    pairs.extend_from_slice(extra);
    let b = bindings_for(&pairs)?;
    let ctx = TensorCtx::with_overrides(alg, overrides.clone());
    eval_tensor_with(&ctx, src, &b, 2, order)
}

fn coproduct_from(
    alg: &DeformedAlgebra,
    overrides: &HashMap<String, UEAElement>,
    basis: Basis,
    family: Family,
    twisted: bool,
    order: i32,
) -> Result<Coproduct<Series>> {
    let (dp, dk) = dz_formulas(basis, family);
    let (tp, tk) = twisted_formulas(basis, family);
    let mut images = vec![Tensor::zero(2); 6];
    let none: &[(&str, &str)] = &[];
    images[0] = eval_indexed(alg, overrides, "1@J + J@1", 1, none, order)?;
    images[1] = eval_indexed(alg, overrides, "1@P0 + P0@1", 1, none, order)?;
    for i in 1..=2 {
        let extra = [("DzPi", dp), ("DzKi", dk)];
        let (fp, fk) = if twisted { (tp, tk) } else { (dp, dk) };
        images[1 + i] = eval_indexed(alg, overrides, fp, i, &extra, order)?;
        images[3 + i] = eval_indexed(alg, overrides, fk, i, &extra, order)?;
    }
    Ok(Coproduct::new(images))
}

impl HopfData {
    pub fn build(basis: Basis, family: Family, order: i32) -> Result<Self> {
        let alg = build_algebra(&commutator_table(basis, family), order)?;
        let delta = coproduct_from(&alg, &HashMap::new(), basis, family, false, order)?;
        Ok(HopfData { basis, family, order, alg, delta })
    }

    pub fn names(&self) -> Vec<String> {
        KIN_NAMES.iter().map(|s| s.to_string()).collect()
    }

    /// The closed form of the twisted coproduct, expanded.
    pub fn golden_twisted(&self) -> Result<Coproduct<Series>> {
        coproduct_from(&self.alg, &HashMap::new(), self.basis, self.family, true, self.order)
    }

    pub fn casimirs(&self) -> Result<(UEAElement, UEAElement)> {
        let (c, w) = casimir_formulas(self.basis, self.family);
        Ok((self.eval(c)?, self.eval(w)?))
    }

    pub fn eval(&self, src: &str) -> Result<UEAElement> {
        crate::pbw::eval_poly(&self.alg, src, self.order)
    }

    pub fn eval_tensor(&self, src: &str) -> Result<TensorUEA> {
        eval_indexed(&self.alg, &HashMap::new(), src, 1, &[], self.order)
    }

    /// The same data re-truncated at a lower order.
    pub fn truncated(&self, order: i32) -> Result<Self> {
        let alg = self.alg.try_map_rules(|c| Ok(c.truncate(order)))?;
        let mut alg = alg;
        alg = reorder_algebra(alg, order);
        let delta = self.delta.map_images(|t| Ok(t.truncate(order)))?;
        Ok(HopfData { basis: self.basis, family: self.family, order, alg, delta })
    }
}

fn reorder_algebra(alg: DeformedAlgebra, order: i32) -> DeformedAlgebra {
    let mut out = Algebra::new(alg.names(), Some(order));
    let n = alg.dim();
    for i in 0..n {
        for j in 0..i {
            if let Some((c, r)) = alg.rule(i, j) {
                out.set_rule(i, j, c.clone(), r.clone()).expect("rule already validated");
            }
        }
    }
    out
}

/// Normal form of a word of generator names such as `["P1", "K1"]`.
pub fn normal_order(alg: &DeformedAlgebra, word: &[&str]) -> Result<UEAElement> {
    let w: Vec<usize> = word
        .iter()
        .map(|g| alg.index(g).ok_or_else(|| Error::Parse(format!("unknown generator `{}`", g))))
        .collect::<Result<_>>()?;
    alg.word(&w)
}

/// `F` and `F^{-1}` in `U (x) U`.
#[derive(Clone, Debug)]
pub struct TwistElement {
    pub f: TensorUEA,
    pub f_inv: TensorUEA,
}

/// `F = exp(-theta (J (x) P0 - P0 (x) J))`.
pub fn build_twist(h: &HopfData) -> Result<TwistElement> {
    twist_from(h, "exp(-theta*(J@P0 - P0@J))", "exp(theta*(J@P0 - P0@J))")
}

/// A twist-shaped element given by a formula and its inverse.
pub fn twist_from(h: &HopfData, f: &str, f_inv: &str) -> Result<TwistElement> {
    Ok(TwistElement { f: h.eval_tensor(f)?, f_inv: h.eval_tensor(f_inv)? })
}

/// `Delta'(Y) = F Delta(Y) F^{-1}` on every generator.
pub fn twist_conjugate(delta: &Coproduct<Series>, tw: &TwistElement, alg: &DeformedAlgebra) -> Result<Coproduct<Series>> {
    delta.map_images(|d| alg.tensor_mul(&alg.tensor_mul(&tw.f, d)?, &tw.f_inv))
}

fn diff_text(a: &TensorUEA, b: &TensorUEA, names: &[String]) -> Option<String> {
    let d = a.sub(b);
    if d.is_zero() {
        None
    } else {
        Some(d.display(names))
    }
}

fn poly_diff(a: &UEAElement, b: &UEAElement, names: &[String]) -> Option<String> {
    let d = a.sub(b);
    if d.is_zero() {
        None
    } else {
        Some(d.display(names))
    }
}

/// Cocycle and normalisation conditions for a twist.
pub fn check_cocycle(h: &HopfData, tw: &TwistElement) -> Result<Vec<Check>> {
    let alg = &h.alg;
    let names = h.names();
    let f12 = tw.f.embed(3, &[0, 1]);
    let f23 = tw.f.embed(3, &[1, 2]);
    let lhs = alg.tensor_mul(&f12, &h.delta.apply_on(alg, &tw.f, 0)?)?;
    let rhs = alg.tensor_mul(&f23, &h.delta.apply_on(alg, &tw.f, 1)?)?;
    let one = Tensor::one(1).truncate(h.order);
    let anchor = "twist cocycle and normalisation conditions";
    Ok(vec![
        Check::exact("cocycle", anchor, diff_text(&lhs, &rhs, &names)),
        Check::exact("counit.left", anchor, diff_text(&tw.f.counit_on(0), &one, &names)),
        Check::exact("counit.right", anchor, diff_text(&tw.f.counit_on(1), &one, &names)),
        Check::exact(
            "inverse",
            anchor,
            diff_text(&alg.tensor_mul(&tw.f, &tw.f_inv)?, &Tensor::one(2).truncate(h.order), &names),
        ),
    ])
}

/// Homomorphism on all generator pairs, coassociativity and counit on generators.
///
/// Coassociativity runs at `coassoc_order`, which may be lower than the data's order.
pub fn check_hopf(h: &HopfData, delta: &Coproduct<Series>, coassoc_order: i32) -> Result<Vec<Check>> {
    let alg = &h.alg;
    let names = h.names();
    let mut out = Vec::new();
    let n = alg.dim();
    for a in 0..n {
        for b in a + 1..n {
            let (xa, xb) = (Poly::gen(a), Poly::gen(b));
            let lhs = delta.apply(alg, &alg.commutator(&xa, &xb)?)?;
            let (da, db) = (&delta.images[a], &delta.images[b]);
            let rhs = alg.tensor_mul(da, db)?.sub(&alg.tensor_mul(db, da)?);
            out.push(Check::exact(
                format!("homomorphism.[{},{}]", names[a], names[b]),
                "coproduct preserves the deformed commutation relations",
                diff_text(&lhs, &rhs, &names),
            ));
        }
    }
    let low = h.truncated(coassoc_order.min(h.order))?;
    let dlow = delta.map_images(|t| Ok(t.truncate(low.order)))?;
    for g in 0..n {
        let d = &dlow.images[g];
        let left = dlow.apply_on(&low.alg, d, 0)?;
        let right = dlow.apply_on(&low.alg, d, 1)?;
        out.push(Check::exact(
            format!("coassociativity.{}", names[g]),
            "coassociativity of the coproduct",
            diff_text(&left, &right, &names),
        ));
        let x = Tensor::product_of(&[Poly::gen(g)]).truncate(h.order);
        let el = delta.images[g].counit_on(0);
        let er = delta.images[g].counit_on(1);
        let ok = if el.sub(&x).is_zero() && er.sub(&x).is_zero() {
            None
        } else {
            Some(format!("{} | {}", el.display(&names), er.display(&names)))
        };
        out.push(Check::exact(format!("counit.{}", names[g]), "counit axiom", ok));
    }
    Ok(out)
}

/// Both Casimirs commute with every generator.
pub fn check_casimirs(h: &HopfData) -> Result<Vec<Check>> {
    let (c, w) = h.casimirs()?;
    let names = h.names();
    let mut out = Vec::new();
    for (label, x) in [("C", &c), ("W", &w)] {
        for g in 0..h.alg.dim() {
            let r = h.alg.commutator(x, &Poly::gen(g))?;
            out.push(Check::exact(
                format!("casimir.{}.{}", label, names[g]),
                "deformed Casimir invariants",
                if r.is_zero() { None } else { Some(r.display(&names)) },
            ));
        }
    }
    Ok(out)
}

/// At `z = theta = 0` the deformed Casimirs reduce to
/// `C = P0^2 - P^2 + omega (J^2 - K^2)` and `W = -J P0 + K1 P2 - K2 P1`.
pub fn check_classical_casimirs(h: &HopfData) -> Result<Vec<Check>> {
    let (c, w) = h.casimirs()?;
    let names = h.names();
    let classical_c = match h.family {
        Family::AdS => "P0^2 - P1^2 - P2^2 + omega*(J^2 - K1^2 - K2^2)",
        Family::Poincare => "P0^2 - P1^2 - P2^2",
    };
    let mut out = Vec::new();
    for (label, x, src) in [("C", &c, classical_c), ("W", &w, "-J*P0 + K1*P2 - K2*P1")] {
        let got = specialize_poly(x, &[Var::Z, Var::Theta])?;
        let want = specialize_poly(&h.eval(src)?, &[Var::Z, Var::Theta])?;
        out.push(Check::exact(
            format!("casimir.classical.{}", label),
            "undeformed quadratic Casimirs",
            poly_diff(&got, &want, &names),
        ));
    }
    Ok(out)
}

/// Set every series variable in `vars` to zero in a polynomial.
pub fn specialize_poly(p: &UEAElement, vars: &[Var]) -> Result<UEAElement> {
    p.try_map_coeffs(|c| vars.iter().try_fold(c.clone(), |acc, v| acc.set_zero(*v)))
}

pub fn specialize_tensor(t: &TensorUEA, vars: &[Var]) -> Result<TensorUEA> {
    t.try_map_coeffs(|c| vars.iter().try_fold(c.clone(), |acc, v| acc.set_zero(*v)))
}

/// The classical (Lie algebra) part of a deformed commutator.
pub fn classical_limit(p: &UEAElement) -> Result<UEAElement> {
    specialize_poly(p, &[Var::Z, Var::Theta, Var::S])
}

/// Images of `J, P0, P1, P2, K1, K2` of the bicrossproduct-type basis in the symmetrical one.
pub fn basis_map_qa(sym: &HopfData) -> Result<Vec<UEAElement>> {
    let (fp, fk) = qa_formulas(sym.family);
    let mut out = vec![Poly::gen(0), Poly::gen(1)];
    let mut ks = Vec::new();
    for i in 1..=2 {
        let b = bindings_for(&index_bindings(i))?;
        let ctx = PolyCtx::new(&sym.alg);
        out.push(expr::eval_str(fp, &ctx, &b, sym.order)?);
        ks.push(expr::eval_str(fk, &ctx, &b, sym.order)?);
    }
    out.extend(ks);
    Ok(out)
}

fn overrides(images: &[UEAElement]) -> HashMap<String, UEAElement> {
    KIN_NAMES.iter().map(|s| s.to_string()).zip(images.iter().cloned()).collect()
}

/// The nonlinear map intertwines commutators and (twisted and untwisted) coproducts.
pub fn verify_qa(sym: &HopfData, bic: &HopfData) -> Result<Vec<Check>> {
    if sym.basis != Basis::Symmetrical || bic.basis != Basis::Bicross || sym.order != bic.order {
        return Err(Error::Config("verify_qa needs a symmetrical and a bicross datum at equal order".into()));
    }
    let names = sym.names();
    let images = basis_map_qa(sym)?;
    let ov = overrides(&images);
    let mut out = Vec::new();
    let ctx = PolyCtx { alg: &sym.alg, overrides: ov.clone() };
    for e in commutator_table(Basis::Bicross, bic.family) {
        let b = expr::bindings(&e.bindings)?;
        let rhs = expr::eval_str(&e.formula, &ctx, &b, sym.order)?;
        let lhs = sym.alg.commutator(&images[gen_index(e.a)], &images[gen_index(e.b)])?;
        out.push(Check::exact(
            format!("qa.commutator.[{},{}]", e.a, e.b),
            "nonlinear map between both bases",
            poly_diff(&lhs, &rhs, &names),
        ));
    }
    let tw = build_twist(sym)?;
    let twisted = twist_conjugate(&sym.delta, &tw, &sym.alg)?;
    for (label, is_twisted, delta) in [("untwisted", false, &sym.delta), ("twisted", true, &twisted)] {
        let pulled = coproduct_from(&sym.alg, &ov, Basis::Bicross, bic.family, is_twisted, sym.order)?;
        for g in 0..6 {
            let rhs = delta.apply(&sym.alg, &images[g])?;
            out.push(Check::exact(
                format!("qa.coproduct.{}.{}", label, names[g]),
                "nonlinear map between both bases",
                diff_text(&pulled.images[g], &rhs, &names),
            ));
        }
    }
    Ok(out)
}

/// `s -> 0` on every rule of the algebra.
pub fn limit_algebra(alg: &DeformedAlgebra) -> Result<DeformedAlgebra> {
    alg.try_map_rules(|c| c.set_zero(Var::S))
}

/// Compare the `s -> 0` limit of the curved data with the flat closed forms.
pub fn poincare_limit(ads: &HopfData, flat: &HopfData) -> Result<Vec<Check>> {
    let names = ads.names();
    let basis = ads.basis.name();
    let mut out = Vec::new();
    let n = ads.alg.dim();
    for i in 0..n {
        for j in 0..i {
            let (ca, ra) = ads.alg.rule(i, j).expect("complete algebra");
            let (cf, rf) = flat.alg.rule(i, j).expect("complete algebra");
            let ra = specialize_poly(ra, &[Var::S])?;
            let ok = ca.sub_ref(cf).is_zero() && ra.sub(rf).is_zero();
            out.push(Check::exact(
                format!("limit.{}.commutator.[{},{}]", basis, names[j], names[i]),
                "Poincare limit of the deformed commutators",
                if ok { None } else { Some(ra.sub(rf).display(&names)) },
            ));
        }
    }
    let (c, w) = ads.casimirs()?;
    let (cf, wf) = flat.casimirs()?;
    for (label, x, y) in [("C", c, cf), ("W", w, wf)] {
        out.push(Check::exact(
            format!("limit.{}.casimir.{}", basis, label),
            "Poincare limit of the deformed Casimirs",
            poly_diff(&specialize_poly(&x, &[Var::S])?, &y, &names),
        ));
    }
    let tw = build_twist(ads)?;
    let engine = twist_conjugate(&ads.delta, &tw, &ads.alg)?;
    let golden_flat = flat.golden_twisted()?;
    for g in 0..n {
        out.push(Check::exact(
            format!("limit.{}.coproduct.untwisted.{}", basis, names[g]),
            "Poincare limit of the coproduct",
            diff_text(&specialize_tensor(&ads.delta.images[g], &[Var::S])?, &flat.delta.images[g], &names),
        ));
        out.push(Check::exact(
            format!("limit.{}.coproduct.twisted.{}", basis, names[g]),
            "Poincare limit of the twisted coproduct",
            diff_text(&specialize_tensor(&engine.images[g], &[Var::S])?, &golden_flat.images[g], &names),
        ));
    }
    if ads.basis == Basis::Symmetrical {
        let curved = basis_map_qa(ads)?;
        let flat_map = basis_map_qa(flat)?;
        for g in 0..n {
            out.push(Check::exact(
                format!("limit.qa.{}", names[g]),
                "Poincare contraction of the nonlinear map",
                poly_diff(&specialize_poly(&curved[g], &[Var::S])?, &flat_map[g], &names),
            ));
        }
    }
    Ok(out)
}

/// Engine twist versus the closed-form twisted coproduct on all six generators.
pub fn check_twisted_coproduct(h: &HopfData) -> Result<Vec<Check>> {
    let names = h.names();
    let tw = build_twist(h)?;
    let engine = twist_conjugate(&h.delta, &tw, &h.alg)?;
    let golden = h.golden_twisted()?;
    Ok((0..6)
        .map(|g| {
            Check::exact(
                format!("twist.{}.{}", h.basis.name(), names[g]),
                "explicit twisted coproduct",
                diff_text(&engine.images[g], &golden.images[g], &names),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{all_pass, failures};

    #[test]
    fn symmetric_reordering() {
        let h = HopfData::build(Basis::Symmetrical, Family::AdS, 3).unwrap();
        let names = h.names();
        let p = normal_order(&h.alg, &["P1", "K1"]).unwrap();
        assert_eq!(p, h.eval("P1*K1").unwrap());
        let q = classical_limit(&normal_order(&h.alg, &["K1", "P1"]).unwrap()).unwrap();
        assert_eq!(q.display(&names).replace(" + O(4)", ""), "(1)*P0 + (1)*P1*K1");
        let r = normal_order(&h.alg, &["P0", "J", "J"]).unwrap();
        assert_eq!(r, h.eval("J^2*P0").unwrap());
    }

    #[test]
    fn low_order_brackets_keep_precision() {
        let h = HopfData::build(Basis::Symmetrical, Family::AdS, 1).unwrap();
        let k = h.alg.commutator(&Poly::gen(4), &Poly::gen(5)).unwrap();
        assert_eq!(k.display(&h.names()), "(-1 + O(2))*J");
    }

    #[test]
    fn twist_first_order() {
        let h = HopfData::build(Basis::Symmetrical, Family::AdS, 2).unwrap();
        let tw = build_twist(&h).unwrap();
        let f1 = tw.f.truncate(1);
        assert_eq!(f1.display(&h.names()), "(1 + O(2))*1@1 + (-theta + O(2))*J@P0 + (theta + O(2))*P0@J");
    }

    #[test]
    fn symmetrical_hopf_low_order() {
        let h = HopfData::build(Basis::Symmetrical, Family::AdS, 2).unwrap();
        let checks = check_hopf(&h, &h.delta, 2).unwrap();
        assert!(all_pass(&checks), "{}", failures(&checks));
        let checks = check_twisted_coproduct(&h).unwrap();
        assert!(all_pass(&checks), "{}", failures(&checks));
    }

    #[test]
    fn bicross_low_order() {
        let h = HopfData::build(Basis::Bicross, Family::AdS, 2).unwrap();
        let checks = check_hopf(&h, &h.delta, 2).unwrap();
        assert!(all_pass(&checks), "{}", failures(&checks));
        let checks = check_twisted_coproduct(&h).unwrap();
        assert!(all_pass(&checks), "{}", failures(&checks));
        let checks = check_casimirs(&h).unwrap();
        assert!(all_pass(&checks), "{}", failures(&checks));
    }
}

//! Named verification suites, run configuration, report assembly and the
//! formula catalogue behind `expand`.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::drinfeld::{
    build_dd_case_c, build_dd_case_f, build_three_param_r, check_mcybe_invariance, cocommutator,
    dual_lie_brackets, is_invariant_tensor2, kin_names, r_prime_space, r_prime_time, r_space, r_time, schouten,
    theta_dd_value, time_to_space_images, two_param_r, Tensor2, Trivector, DUAL_NAMES,
};
use crate::error::{Error, Result};
use crate::geom::{self, default_etas, C};
use crate::hopf::{self, Basis, Family, HopfData};
use crate::liealg::{self, build_ads_omega, build_jt_basis, build_sl2_sum, LieAlgebra, KIN_NAMES};
use crate::poisson::{self, PoissonEvaluator};
use crate::qgroup;
use crate::report::{Check, Status};
use crate::scalars::Var;
use crate::Series;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Jacobi,
    Dd,
    Rmatrix,
    Bialgebra,
    HopfSymmetrical,
    HopfBicross,
    Twist,
    PoincareLimit,
    Geom,
    PlBrackets,
    Spacetime,
    Qgroup,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Jacobi,
        Suite::Dd,
        Suite::Rmatrix,
        Suite::Bialgebra,
        Suite::HopfSymmetrical,
        Suite::HopfBicross,
        Suite::Twist,
        Suite::PoincareLimit,
        Suite::Geom,
        Suite::PlBrackets,
        Suite::Spacetime,
        Suite::Qgroup,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Jacobi => "jacobi",
            Suite::Dd => "dd",
            Suite::Rmatrix => "rmatrix",
            Suite::Bialgebra => "bialgebra",
            Suite::HopfSymmetrical => "hopf-symmetrical",
            Suite::HopfBicross => "hopf-bicross",
            Suite::Twist => "twist",
            Suite::PoincareLimit => "poincare-limit",
            Suite::Geom => "geom",
            Suite::PlBrackets => "pl-brackets",
            Suite::Spacetime => "spacetime",
            Suite::Qgroup => "qgroup",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

/// Where numeric suites evaluate `eta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// Real `eta > 0`.
    Ads,
    /// Imaginary `eta`, the principal square root of a negative `omega`.
    Ds,
    /// `eta = 0`.
    Minkowski,
    /// Every default value of `eta` in turn.
    Symbolic,
}

impl Regime {
    pub fn from_name(s: &str) -> Option<Regime> {
        match s {
            "ads" => Some(Regime::Ads),
            "ds" => Some(Regime::Ds),
            "minkowski" => Some(Regime::Minkowski),
            "symbolic" => Some(Regime::Symbolic),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Md,
    Text,
}

impl Format {
    pub fn from_name(s: &str) -> Option<Format> {
        match s {
            "json" => Some(Format::Json),
            "md" => Some(Format::Md),
            "text" => Some(Format::Text),
            _ => None,
        }
    }
}

/// Tolerances of the numeric checks, overridable by name.
pub const DEFAULT_TOLERANCES: [(&str, f64); 7] = [
    ("fields", 1e-6),
    ("group", 1e-8),
    ("field-algebra", 1e-4),
    ("pl", 1e-8),
    ("poisson-jacobi", 1e-4),
    ("linearization", 1e-6),
    ("ambient", 1e-8),
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Truncation order `N` of the symbolic suites.
    pub order: i32,
    pub tol: BTreeMap<String, f64>,
    pub seed: u64,
    pub regime: Regime,
    /// `|eta|` for the ads and ds regimes; `1/R` in radius units.
    pub eta: Option<f64>,
    /// Numeric `z`; `kappa = 1/z`.
    pub z: f64,
    pub theta: f64,
    pub format: Format,
    pub suites: Vec<Suite>,
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            order: 4,
            tol: DEFAULT_TOLERANCES.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            seed: 7,
            regime: Regime::Symbolic,
            eta: None,
            z: poisson::DEFAULT_Z,
            theta: poisson::DEFAULT_THETA,
            format: Format::Json,
            suites: Suite::ALL.to_vec(),
            timing: true,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.order < 1 {
            return Err(Error::Config(format!("order must be at least 1, got {}", self.order)));
        }
        if self.suites.is_empty() {
            return Err(Error::Config("no suite selected".into()));
        }
        for (k, v) in &self.tol {
            if !DEFAULT_TOLERANCES.iter().any(|(n, _)| n == k) {
                return Err(Error::Config(format!("unknown tolerance `{}`", k)));
            }
            if !(v.is_finite() && *v > 0.0) {
                return Err(Error::Config(format!("tolerance `{}` must be positive", k)));
            }
        }
        match (self.regime, self.eta) {
            (Regime::Minkowski, Some(e)) if e != 0.0 => {
                Err(Error::Config("the minkowski regime forces eta = 0".into()))
            }
            (Regime::Ads | Regime::Ds, Some(e)) if !(e.is_finite() && e > 0.0) => {
                Err(Error::Config("eta must be a positive magnitude in the ads and ds regimes".into()))
            }
            (Regime::Symbolic, Some(_)) => Err(Error::Config("the symbolic regime takes no eta value".into())),
            _ => Ok(()),
        }
    }

    /// Override one tolerance from `name=value`.
    pub fn set_tol(&mut self, pair: &str) -> Result<()> {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("tolerance `{}` is not name=value", pair)))?;
        let v: f64 = v.parse().map_err(|_| Error::Config(format!("bad tolerance value in `{}`", pair)))?;
        self.tol.insert(k.to_string(), v);
        Ok(())
    }

    pub fn tol(&self, name: &str) -> f64 {
        self.tol
            .get(name)
            .copied()
            .or_else(|| DEFAULT_TOLERANCES.iter().find(|(n, _)| *n == name).map(|(_, v)| *v))
            .unwrap_or(1e-8)
    }

    /// Numeric values of `eta` the numeric suites run at.
    pub fn etas(&self) -> Vec<C> {
        match self.regime {
            Regime::Ads => vec![C::new(self.eta.unwrap_or(1.0), 0.0)],
            Regime::Ds => vec![C::new(0.0, self.eta.unwrap_or(0.3))],
            Regime::Minkowski => vec![C::new(0.0, 0.0)],
            Regime::Symbolic => default_etas().to_vec(),
        }
    }
}

/// One line of a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub suite: String,
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub residual: String,
    /// Wall time of the suite that produced the record; `null` without timing.
    pub ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub config: RunConfig,
    pub reports: Vec<Record>,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.status == Status::Pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Md => {
                let mut s = String::from("| suite | id | status | residual | anchor |\n|---|---|---|---|---|\n");
                for r in &self.reports {
                    s.push_str(&format!(
                        "| {} | {} | {} | {} | {} |\n",
                        r.suite,
                        r.id,
                        status_word(r.status),
                        r.residual.replace('|', "\\|"),
                        r.anchor
                    ));
                }
                s
            }
            Format::Text => {
                let mut s = String::new();
                for r in &self.reports {
                    s.push_str(&format!("{} {} {} {}\n", status_word(r.status), r.suite, r.id, r.residual));
                }
                let failed = self.reports.iter().filter(|r| r.status == Status::Fail).count();
                s.push_str(&format!("{} checks, {} failed\n", self.reports.len(), failed));
                s
            }
        }
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
    }
}

/// Stack of each suite thread; rewriting deep words at high order recurses.
const SUITE_STACK: usize = 512 << 20;

/// Run every selected suite, concurrently, and assemble a sorted report.
pub fn run(cfg: &RunConfig) -> Result<CheckReport> {
    cfg.validate()?;
    let mut suites = cfg.suites.clone();
    suites.sort();
    suites.dedup();
    let results: Vec<(Suite, Vec<Check>, f64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&s| {
                std::thread::Builder::new()
                    .name(s.name().to_string())
                    .stack_size(SUITE_STACK)
                    .spawn_scoped(scope, move || {
                    let t = Instant::now();
                    let checks = run_suite(s, cfg).unwrap_or_else(|e| {
                        vec![Check::new("error", "suite execution", false, e.to_string())]
                    });
                    (s, checks, t.elapsed().as_secs_f64() * 1e3)
                    })
                    .expect("spawn suite thread")
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let mut reports: Vec<Record> = results
        .into_iter()
        .flat_map(|(s, checks, ms)| {
            checks.into_iter().map(move |c| Record {
                suite: s.name().to_string(),
                id: c.id,
                anchor: c.anchor,
                status: c.status,
                residual: c.residual,
                ms: if cfg.timing { Some(ms) } else { None },
            })
        })
        .collect();
    reports.sort_by(|a, b| a.suite.cmp(&b.suite).then_with(|| a.id.cmp(&b.id)));
    Ok(CheckReport { config: cfg.clone(), reports })
}

pub fn run_suite(s: Suite, cfg: &RunConfig) -> Result<Vec<Check>> {
    match s {
        Suite::Jacobi => jacobi_suite(),
        Suite::Dd => dd_suite(),
        Suite::Rmatrix => rmatrix_suite(),
        Suite::Bialgebra => bialgebra_suite(),
        Suite::HopfSymmetrical => hopf_suite(Basis::Symmetrical, cfg.order),
        Suite::HopfBicross => hopf_suite(Basis::Bicross, cfg.order),
        Suite::Twist => twist_suite(cfg.order),
        Suite::PoincareLimit => poincare_suite(cfg.order),
        Suite::Geom => geom_suite(cfg),
        Suite::PlBrackets => pl_suite(cfg),
        Suite::Spacetime => spacetime_suite(cfg),
        Suite::Qgroup => qgroup::run_all(cfg.order, cfg.seed, 100),
    }
}

fn prefixed(p: &str, v: Vec<Check>) -> Vec<Check> {
    v.into_iter()
        .map(|mut c| {
            c.id = format!("{}.{}", p, c.id);
            c
        })
        .collect()
}

fn tensor_diff(a: &Tensor2, b: &Tensor2, names: &[String]) -> Option<String> {
    let d = a.sub(b);
    if d.is_zero() {
        None
    } else {
        Some(d.display(names))
    }
}

fn flag(id: &str, anchor: &str, ok: bool, detail: impl FnOnce() -> String) -> Check {
    Check::exact(id, anchor, if ok { None } else { Some(detail()) })
}

/// The 20 Jacobi triples of AdS_omega, the other bases, and a designed failure.
pub fn jacobi_suite() -> Result<Vec<Check>> {
    let l = build_ads_omega();
    let names = l.names().to_vec();
    let anchor = "Lie brackets of AdS_omega";
    let mut out: Vec<Check> = l
        .check_jacobi()
        .residuals
        .iter()
        .map(|(t, r)| {
            Check::exact(
                format!("triple.{},{},{}", names[t[0]], names[t[1]], names[t[2]]),
                anchor,
                if r.is_zero() { None } else { Some(r.display(&names)) },
            )
        })
        .collect();
    out.push(flag("antisymmetry", anchor, l.is_antisymmetric(), || "structure constants not skew".into()));
    for (id, alg) in [("jt-basis", build_jt_basis()), ("sl2-sum", build_sl2_sum()), ("contracted", l.contract()?)] {
        let rep = alg.check_jacobi();
        out.push(flag(&format!("algebra.{}", id), anchor, rep.pass(), || format!("{:?}", rep.failures())));
    }
    let mut bad = l.clone();
    bad.set("P0", "K1", "P1");
    let fails = bad.check_jacobi().failures();
    out.push(flag(
        "designed-failure.[P0,K1]",
        "a sign error in one bracket breaks Jacobi",
        fails.contains(&[liealg::J, liealg::P0, liealg::K1]),
        || format!("mutant failures {:?}", fails),
    ));
    Ok(out)
}

/// Both Drinfel'd doubles, their kinematical forms, and a designed mutant.
pub fn dd_suite() -> Result<Vec<Check>> {
    let anchor = "Drinfel'd double structure";
    let mut out = Vec::new();
    let dds = [("F", build_dd_case_f(), Series::omega()), ("C", build_dd_case_c(), Series::omega().neg_ref())];
    for (case, d, omega) in dds {
        let rep = d.validate();
        let detail = rep.detail.join("; ");
        for (id, ok) in [
            ("halves-close", rep.halves_close),
            ("crossed-form", rep.crossed_form),
            ("pairing-invariant", rep.pairing_invariant),
            ("jacobi", rep.jacobi),
        ] {
            out.push(flag(&format!("case-{}.{}", case, id), anchor, ok, || detail.clone()));
        }
        let kin = d.kinematical_algebra()?;
        let want = liealg::build_ads_omega_with(&omega);
        out.push(flag(&format!("case-{}.kinematical-algebra", case), anchor, kin == want, || kin.to_string()));
        let r = d.canonical_r();
        let omega_part = r.sub(&r.skew());
        out.push(flag(
            &format!("case-{}.casimir-part-invariant", case),
            "symmetric part of the canonical r-matrix",
            omega_part == r.sym() && is_invariant_tensor2(&d.algebra, &omega_part),
            || omega_part.display(d.algebra.names()),
        ));
    }
    let mut bad = build_dd_case_f();
    bad.algebra.set("y1", "Y2", "-y0");
    let rep = bad.validate();
    out.push(flag(
        "mutant.case-F.[y1,Y2]",
        "a sign error in a crossed bracket breaks Ad-invariance",
        !rep.pairing_invariant && !rep.pass(),
        || "mutant double validated".into(),
    ));
    Ok(out)
}

fn s_free(t: &Tensor2) -> bool {
    let n = t.dim();
    (0..n).all(|i| (0..n).all(|j| t.get(i, j).degree_in(Var::S) == 0))
}

/// Canonical r-matrices, basis maps, automorphisms, Casimir tensors and the Schouten bracket.
pub fn rmatrix_suite() -> Result<Vec<Check>> {
    let kin = kin_names();
    let mut out = Vec::new();
    let anchor = "common classical r-matrix of both doubles";
    for (case, d) in [("F", build_dd_case_f()), ("C", build_dd_case_c())] {
        let r = d.kinematical_r_prime();
        out.push(Check::exact(format!("r-prime.case-{}", case), anchor, tensor_diff(&r, &r_prime_space(), &kin)));
        out.push(flag(&format!("r-prime.case-{}.s-independent", case), anchor, s_free(&r), || r.display(&kin)));
    }
    let d = build_dd_case_f();
    let rt = d.canonical_r().skew().transform(&d.to_jt).transform(&liealg::time_like_map());
    out.push(Check::exact("r-prime.time-like", anchor, tensor_diff(&rt, &r_prime_time(), &kin)));
    let imgs = time_to_space_images();
    out.push(Check::exact(
        "time-to-space.r-prime",
        "time-like to space-like substitution",
        tensor_diff(&r_prime_time().substitute(&imgs), &r_prime_space(), &kin),
    ));
    let minus_i = crate::expr::exact_scalar("-i");
    out.push(Check::exact(
        "time-to-space.r",
        "time-like to space-like substitution",
        tensor_diff(&r_time().substitute(&imgs), &r_space().scale(&minus_i), &kin),
    ));
    let r_dd = two_param_r().map(theta_dd_value)?;
    out.push(Check::exact("dd-value.theta=-iz", "twist parameter of the double", tensor_diff(&r_dd, &r_time(), &kin)));

    let jt = build_jt_basis();
    let ads = build_ads_omega();
    for (id, m) in [("space-like", liealg::space_like_map()), ("time-like", liealg::time_like_map())] {
        let got = jt.apply_basis_map(&m)?;
        out.push(flag(&format!("basis-map.{}", id), "kinematical basis maps", got == ads, || got.to_string()));
    }
    let sl2 = build_sl2_sum();
    let (space, time) = liealg::sl2_basis_maps();
    for (id, m) in [("sl2.space-like", &space), ("sl2.time-like", &time)] {
        let got = sl2.apply_basis_map(m)?;
        out.push(flag(&format!("basis-map.{}", id), "isomorphism with sl(2)+sl(2)", got == ads, || got.to_string()));
    }
    for (name, m) in liealg::automorphisms() {
        out.push(flag(&format!("automorphism.{}", name), "involutive automorphisms", ads.check_automorphism(&m), || {
            "not an automorphism".into()
        }));
    }
    let (c, w) = liealg::casimir_tensors();
    for (id, t) in [("C", &c), ("W", &w)] {
        out.push(flag(&format!("casimir-tensor.{}", id), "quadratic Casimir invariants", ads.is_ad_invariant(t), || {
            format!("{:?}", ads.ad_invariance(t))
        }));
    }

    let anchor = "Schouten bracket of the two-parameter r-matrix";
    let t = schouten(&ads, &two_param_r())?;
    let want = Trivector::from_wedges(
        &kin,
        &[
            ("-z^2", "P0", "P1", "K1"),
            ("-z^2", "P0", "P2", "K2"),
            ("-z^2", "P1", "P2", "J"),
            ("-z^2*omega", "K1", "K2", "J"),
        ],
    );
    out.push(flag("schouten.full", anchor, t == want, || t.display(&kin)));
    let t0 = schouten(&ads, &two_param_r().map(|c| c.set_zero(Var::Theta))?)?;
    out.push(flag("schouten.theta-independent", anchor, t0 == t, || t0.display(&kin)));
    out.push(flag("schouten.ad-invariant", anchor, check_mcybe_invariance(&ads, &t), || t.display(&kin)));
    let mut non_inv = Trivector::zero(6);
    non_inv.add_wedge(liealg::P0, liealg::P1, liealg::K2, &Series::from_int(1));
    out.push(flag("schouten.designed-failure", anchor, !check_mcybe_invariance(&ads, &non_inv), || {
        "non-invariant trivector accepted".into()
    }));
    Ok(out)
}

/// `delta(X)` of the two-parameter r-matrix for `J, P0, P1, P2, K1, K2`.
pub const COCOMMUTATOR_TABLE: [&[(&str, &str, &str)]; 6] = [
    &[],
    &[],
    &[("z", "P1", "P0"), ("-z*omega", "K2", "J"), ("theta", "P0", "P2"), ("theta*omega", "K1", "J")],
    &[("z", "P2", "P0"), ("z*omega", "K1", "J"), ("-theta", "P0", "P1"), ("theta*omega", "K2", "J")],
    &[("z", "K1", "P0"), ("z", "P2", "J"), ("theta", "P0", "K2"), ("-theta", "P1", "J")],
    &[("z", "K2", "P0"), ("-z", "P1", "J"), ("-theta", "P0", "K1"), ("-theta", "P2", "J")],
];

/// Dual brackets on `(th, x0, x1, x2, xi1, xi2)`, every pair.
pub const DUAL_TABLE: [(&str, &str, &str); 15] = [
    ("th", "x0", "0"),
    ("th", "x1", "z*xi2 + theta*xi1"),
    ("th", "x2", "-z*xi1 + theta*xi2"),
    ("th", "xi1", "-omega*(z*x2 + theta*x1)"),
    ("th", "xi2", "-omega*(-z*x1 + theta*x2)"),
    ("x0", "x1", "-z*x1 - theta*x2"),
    ("x0", "x2", "-z*x2 + theta*x1"),
    ("x0", "xi1", "-z*xi1 - theta*xi2"),
    ("x0", "xi2", "-z*xi2 + theta*xi1"),
    ("x1", "x2", "0"),
    ("x1", "xi1", "0"),
    ("x1", "xi2", "0"),
    ("x2", "xi1", "0"),
    ("x2", "xi2", "0"),
    ("xi1", "xi2", "0"),
];

/// First-order cocommutators on sl(2)+sl(2) for the three-parameter r-matrix.
const SL2_COCOMMUTATORS: [(&str, &[(&str, &str, &str)]); 6] = [
    ("J3_1", &[]),
    ("J3_2", &[]),
    ("Jp_1", &[("alpha", "Jp_1", "J3_1"), ("-delta", "Jp_1", "J3_2")]),
    ("Jm_1", &[("alpha", "Jm_1", "J3_1"), ("delta", "Jm_1", "J3_2")]),
    ("Jp_2", &[("beta", "Jp_2", "J3_2"), ("delta", "Jp_2", "J3_1")]),
    ("Jm_2", &[("beta", "Jm_2", "J3_2"), ("-delta", "Jm_2", "J3_1")]),
];

pub fn dual_algebra() -> Result<LieAlgebra<Series>> {
    dual_lie_brackets(&cocommutator(&build_ads_omega(), &two_param_r()), &DUAL_NAMES)
}

/// Cocommutator table, co-Jacobi, dual brackets, the kappa-Minkowski limit,
/// primitive generators, and the sl(2)+sl(2) cocommutators.
pub fn bialgebra_suite() -> Result<Vec<Check>> {
    let kin = kin_names();
    let ads = build_ads_omega();
    let delta = cocommutator(&ads, &two_param_r());
    let anchor = "cocommutator of the twisted kappa-AdS bialgebra";
    let mut out = Vec::new();
    for (g, terms) in COCOMMUTATOR_TABLE.iter().enumerate() {
        let want = Tensor2::from_wedges(&kin, terms);
        out.push(Check::exact(format!("cocommutator.{}", KIN_NAMES[g]), anchor, tensor_diff(&delta[g], &want, &kin)));
    }
    out.push(flag("cocommutator.antisymmetric", anchor, delta.iter().all(Tensor2::is_antisymmetric), || {
        "symmetric component present".into()
    }));
    let dual = dual_lie_brackets(&delta, &DUAL_NAMES);
    out.push(flag("co-jacobi", anchor, dual.is_ok(), || format!("{:?}", dual.as_ref().err())));
    let dual = dual?;
    let anchor = "dual Lie brackets of the noncommutative coordinates";
    for (a, b, rhs) in DUAL_TABLE {
        let got = dual.bracket_named(a, b);
        let want = dual.linear(rhs)?;
        out.push(flag(&format!("dual.{}{}", a, b), anchor, got.sub(&want).is_zero(), || dual.display_element(&got)));
    }
    let anchor = "kappa-Minkowski limit";
    let flat = dual.try_map_constants(|c| c.set_zero(Var::Theta))?;
    for (a, b, rhs) in [("x0", "x1", "-z*x1"), ("x0", "x2", "-z*x2"), ("x1", "x2", "0")] {
        let got = flat.bracket_named(a, b);
        let want = flat.linear(rhs)?;
        out.push(flag(&format!("kappa-minkowski.{}{}", a, b), anchor, got.sub(&want).is_zero(), || {
            flat.display_element(&got)
        }));
    }
    let dt = cocommutator(&ads, &r_time());
    let primitive: Vec<&str> = (0..6).filter(|&g| dt[g].is_zero()).map(|g| KIN_NAMES[g]).collect();
    out.push(flag("time-like.primitive-generators", "primitive generators of the time-like r-matrix", primitive == ["J", "P0"], || {
        format!("{:?}", primitive)
    }));
    let sl2 = build_sl2_sum();
    let names = sl2.names().to_vec();
    let d3 = cocommutator(&sl2, &build_three_param_r());
    for (g, terms) in SL2_COCOMMUTATORS {
        let i = sl2.index(g).expect("sl2 generator");
        let want = Tensor2::from_wedges(&names, terms);
        out.push(Check::exact(
            format!("sl2.cocommutator.{}", g),
            "cocommutators of the three-parameter r-matrix",
            tensor_diff(&d3[i], &want, &names),
        ));
    }
    let (space, _) = liealg::sl2_basis_maps();
    let image = r_prime_space().transform(&space.inverse(sl2.names()));
    let r3 = build_three_param_r().map(|c| {
        c.substitute(Var::Alpha, &crate::expr::exact_scalar("-eta/2"))?
            .substitute(Var::Beta, &crate::expr::exact_scalar("eta/2"))?
            .substitute(Var::Delta, &crate::expr::exact_scalar("-eta/2"))
    })?;
    out.push(Check::exact(
        "sl2.r-prime-image",
        "three-parameter r-matrix specialises to the common one",
        tensor_diff(&image, &r3, &names),
    ));
    Ok(out)
}

/// Hopf axioms for the untwisted and twisted coproducts, Casimirs and their classical limits.
pub fn hopf_suite(basis: Basis, order: i32) -> Result<Vec<Check>> {
    let h = HopfData::build(basis, Family::AdS, order)?;
    let tw = hopf::build_twist(&h)?;
    let twisted = hopf::twist_conjugate(&h.delta, &tw, &h.alg)?;
    let coassoc = order.min(3);
    let mut out = prefixed("untwisted", hopf::check_hopf(&h, &h.delta, coassoc)?);
    out.extend(prefixed("twisted", hopf::check_hopf(&h, &twisted, coassoc)?));
    out.extend(hopf::check_casimirs(&h)?);
    out.extend(hopf::check_classical_casimirs(&h)?);
    Ok(out)
}

/// Twisted coproducts against their closed forms, the cocycle condition, and the nonlinear map.
pub fn twist_suite(order: i32) -> Result<Vec<Check>> {
    let sym = HopfData::build(Basis::Symmetrical, Family::AdS, order)?;
    let bic = HopfData::build(Basis::Bicross, Family::AdS, order)?;
    let mut out = hopf::check_twisted_coproduct(&sym)?;
    out.extend(hopf::check_twisted_coproduct(&bic)?);
    let low = order.min(3);
    let sym_low = if low == order { sym.clone() } else { HopfData::build(Basis::Symmetrical, Family::AdS, low)? };
    let bic_low = if low == order { bic } else { HopfData::build(Basis::Bicross, Family::AdS, low)? };
    out.extend(prefixed("symmetrical", hopf::check_cocycle(&sym_low, &hopf::build_twist(&sym_low)?)?));
    out.extend(prefixed("bicross", hopf::check_cocycle(&bic_low, &hopf::build_twist(&bic_low)?)?));
    out.extend(hopf::verify_qa(&sym_low, &bic_low)?);
    Ok(out)
}

/// The `s -> 0` limits of both bases against the Poincare closed forms.
pub fn poincare_suite(order: i32) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for basis in Basis::ALL {
        let ads = HopfData::build(basis, Family::AdS, order)?;
        let flat = HopfData::build(basis, Family::Poincare, order)?;
        out.extend(hopf::poincare_limit(&ads, &flat)?);
        out.extend(prefixed(&format!("poincare.{}", basis.name()), hopf::check_casimirs(&flat)?));
    }
    Ok(out)
}

pub fn geom_suite(cfg: &RunConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for eta in cfg.etas() {
        out.extend(geom::check_vector_fields(eta, cfg.seed, 100, cfg.tol("fields"))?);
        out.extend(geom::check_group(eta, cfg.seed, 100, cfg.tol("group"))?);
        out.extend(geom::check_field_algebra(eta, cfg.seed, 20, cfg.tol("field-algebra"))?);
    }
    Ok(out)
}

pub fn pl_suite(cfg: &RunConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for eta in cfg.etas() {
        let e = PoissonEvaluator::new(cfg.z, cfg.theta, eta);
        out.extend(poisson::verify_pl_tables(&e, cfg.seed, 100, cfg.tol("pl")));
        out.extend(poisson::jacobi_numeric(&e, cfg.seed, 10, cfg.tol("poisson-jacobi"))?);
        out.extend(poisson::check_linearization(&e, cfg.tol("linearization"))?);
    }
    Ok(out)
}

pub fn spacetime_suite(cfg: &RunConfig) -> Result<Vec<Check>> {
    let mut out = poisson::check_spacetime(cfg.order.max(poisson::SPACETIME_EXPANSION_ORDER))?;
    out.extend(poisson::check_ambient_exact(cfg.order.max(6))?);
    for eta in cfg.etas() {
        let e = PoissonEvaluator::new(cfg.z, cfg.theta, eta);
        out.extend(poisson::ambient_quadratic(&e, cfg.seed, 50, cfg.tol("ambient")));
    }
    Ok(out)
}

/// Identifiers understood by [`expand`], with a placeholder for the variable part.
pub const FORMULA_IDS: [&str; 12] = [
    "dual.<a><b>",
    "cocommutator.<G>",
    "schouten.full",
    "twist.F",
    "twist.F-inverse",
    "coproduct.<untwisted|twisted>.<basis>.<G>",
    "commutator.<basis>.<A>,<B>",
    "casimir.<basis>.<C|W>",
    "spacetime.x0x1",
    "spacetime.x0x2",
    "qword:<letters>",
    "sl2.coproduct.<G>",
];

fn split_pair<'a>(s: &'a str, names: &[&str]) -> Option<(&'a str, &'a str)> {
    names.iter().find_map(|a| {
        let rest = s.strip_prefix(a)?;
        names.contains(&rest).then_some((&s[..a.len()], rest))
    })
}

fn unknown(id: &str) -> Error {
    Error::UnknownFormula(id.to_string())
}

fn gen_of(name: &str, id: &str) -> Result<usize> {
    KIN_NAMES.iter().position(|n| *n == name).ok_or_else(|| unknown(id))
}

/// Canonical text of a catalogued formula at truncation order `order`.
pub fn expand(id: &str, order: i32) -> Result<String> {
    if order < 1 {
        return Err(Error::Config("order must be at least 1".into()));
    }
    if let Some(w) = id.strip_prefix("qword:") {
        return qgroup::expand(w);
    }
    let parts: Vec<&str> = id.split('.').collect();
    let kin = kin_names();
    match parts.as_slice() {
        ["dual", pair] => {
            let dual = dual_algebra()?;
            let (a, b) = split_pair(pair, &DUAL_NAMES).ok_or_else(|| unknown(id))?;
            Ok(dual.display_element(&dual.bracket_named(a, b)))
        }
        ["cocommutator", g] => {
            let d = cocommutator(&build_ads_omega(), &two_param_r());
            let t = &d[gen_of(g, id)?];
            Ok(if t.is_zero() { "0".into() } else { t.display(&kin) })
        }
        ["schouten", "full"] => Ok(schouten(&build_ads_omega(), &two_param_r())?.display(&kin)),
        ["twist", which @ ("F" | "F-inverse")] => {
            let h = HopfData::build(Basis::Symmetrical, Family::AdS, order)?;
            let tw = hopf::build_twist(&h)?;
            Ok(if *which == "F" { tw.f } else { tw.f_inv }.display(&kin))
        }
        ["coproduct", kind @ ("untwisted" | "twisted"), basis, g] => {
            let basis = Basis::from_name(basis).ok_or_else(|| unknown(id))?;
            let h = HopfData::build(basis, Family::AdS, order)?;
            let g = gen_of(g, id)?;
            let t = if *kind == "untwisted" {
                h.delta.images[g].clone()
            } else {
                let tw = hopf::build_twist(&h)?;
                hopf::twist_conjugate(&h.delta, &tw, &h.alg)?.images[g].clone()
            };
            Ok(t.display(&kin))
        }
        ["commutator", basis, pair] => {
            let basis = Basis::from_name(basis).ok_or_else(|| unknown(id))?;
            let (a, b) = pair.split_once(',').ok_or_else(|| unknown(id))?;
            let h = HopfData::build(basis, Family::AdS, order)?;
            let (a, b) = (gen_of(a, id)?, gen_of(b, id)?);
            let p = h.alg.commutator(&crate::pbw::Poly::gen(a), &crate::pbw::Poly::gen(b))?;
            Ok(p.display(&kin))
        }
        ["casimir", basis, which @ ("C" | "W")] => {
            let basis = Basis::from_name(basis).ok_or_else(|| unknown(id))?;
            let h = HopfData::build(basis, Family::AdS, order)?;
            let (c, w) = h.casimirs()?;
            Ok(if *which == "C" { c } else { w }.display(&kin))
        }
        ["spacetime", pair @ ("x0x1" | "x0x2")] => {
            let st = poisson::build_spacetime(order)?;
            let k = if *pair == "x0x1" { 0 } else { 1 };
            Ok(st.rhs[k].display(&st.names()))
        }
        ["sl2", "coproduct", g] => {
            let h = qgroup::TwistedSl2::build(order)?;
            let i = qgroup::SL2_PAIR_NAMES.iter().position(|n| n == g).ok_or_else(|| unknown(id))?;
            Ok(h.delta.images[i].display(&h.names()))
        }
        _ => Err(unknown(id)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    VectorFields,
    PlBrackets,
    Ambient,
}

impl TableKind {
    pub fn from_name(s: &str) -> Option<TableKind> {
        match s {
            "vector-fields" => Some(TableKind::VectorFields),
            "pl-brackets" => Some(TableKind::PlBrackets),
            "ambient" => Some(TableKind::Ambient),
            _ => None,
        }
    }
}

/// Numeric rows of a table as JSON, one array per value of `eta` of the regime.
pub fn table(kind: TableKind, seed: u64, count: usize, cfg: &RunConfig) -> Result<serde_json::Value> {
    cfg.validate()?;
    let mut out = Vec::new();
    for eta in cfg.etas() {
        let rows = match kind {
            TableKind::VectorFields => serde_json::to_value(geom::vector_field_table(eta, seed, count, geom::FD_STEP)?),
            TableKind::PlBrackets => {
                serde_json::to_value(poisson::pl_table(&PoissonEvaluator::new(cfg.z, cfg.theta, eta), seed, count))
            }
            TableKind::Ambient => serde_json::to_value(geom::ambient_table(eta, seed, count)),
        }
        .map_err(|e| Error::Internal(e.to_string()))?;
        out.push(serde_json::json!({ "eta": [eta.re, eta.im], "rows": rows }));
    }
    Ok(serde_json::Value::Array(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("nope"), None);
    }

    #[test]
    fn config_validation() {
        let mut cfg = RunConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.regime = Regime::Minkowski;
        cfg.eta = Some(0.5);
        assert!(cfg.validate().is_err());
        cfg.eta = None;
        assert!(cfg.validate().is_ok());
        assert_eq!(cfg.etas(), vec![C::new(0.0, 0.0)]);
        cfg.order = 0;
        assert!(cfg.validate().is_err());
        let mut cfg = RunConfig::default();
        assert!(cfg.set_tol("pl=1e-9").is_ok());
        assert_eq!(cfg.tol("pl"), 1e-9);
        cfg.set_tol("bogus=1").unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn expand_catalogue() {
        assert_eq!(expand("dual.x0x1", 1).unwrap(), "-z*x1 - theta*x2");
        assert_eq!(expand("cocommutator.P0", 1).unwrap(), "0");
        assert!(matches!(expand("nope.x", 1), Err(Error::UnknownFormula(_))));
        assert_eq!(expand("qword:b1 a1", 1).unwrap(), "qa*a1*b1");
    }
}

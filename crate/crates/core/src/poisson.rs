//! Sklyanin brackets on the group chart, the closed-form Poisson-Lie tables,
//! the noncommutative spacetime relations and the ambient quadratic algebra.

use serde::Serialize;

use crate::drinfeld::{cocommutator, dual_lie_brackets, two_param_r, DUAL_NAMES};
use crate::error::Result;
use crate::geom::{
    derivative, eta_label, sample_points, sinh_eta, tanh_eta, vector_field, ChartPoint, Side, C, CHART_NAMES,
    CHART_RADIUS,
};
use crate::liealg::build_ads_omega;
use crate::pbw::{eval_poly, Algebra, Mono, Poly, PolyCtx};
use crate::report::Check;
use crate::scalars::{Assignment, Var};
use crate::{expr, Series};

/// Generator (in `J, P0, P1, P2, K1, K2` order) dual to each chart coordinate.
const CHART_TO_GEN: [usize; 6] = [1, 2, 3, 4, 5, 0];

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

/// Numeric Sklyanin bracket for `r = z (K1^P1 + K2^P2) + theta J^P0`.
#[derive(Clone, Debug)]
pub struct PoissonEvaluator {
    /// `r^{ij}` over `J, P0, P1, P2, K1, K2`.
    pub r: [[C; 6]; 6],
    pub z: f64,
    pub theta: f64,
    pub eta: C,
}

impl PoissonEvaluator {
    pub fn new(z: f64, theta: f64, eta: C) -> Self {
        let rm = two_param_r();
        let a = Assignment::real(z, theta, 0.0);
        let r = std::array::from_fn(|i| std::array::from_fn(|j| rm.get(i, j).evaluate(&a)));
        PoissonEvaluator { r, z, theta, eta }
    }

    /// `{chart_a, chart_b}` for all coordinate pairs at `p`.
    pub fn coordinate_brackets(&self, p: &ChartPoint) -> [[C; 6]; 6] {
        let l: Vec<[C; 6]> = (0..6).map(|g| vector_field(Side::Left, g, p, self.eta)).collect();
        let rr: Vec<[C; 6]> = (0..6).map(|g| vector_field(Side::Right, g, p, self.eta)).collect();
        let mut out = [[C::new(0.0, 0.0); 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                let k = self.r[i][j];
                if k.norm() == 0.0 {
                    continue;
                }
                for a in 0..6 {
                    for b in 0..6 {
                        out[a][b] += k * (l[i][a] * l[j][b] - rr[i][a] * rr[j][b]);
                    }
                }
            }
        }
        out
    }

    /// `{f, g}` from the gradients of `f` and `g` in chart coordinates.
    pub fn sklyanin(&self, df: &[C; 6], dg: &[C; 6], p: &ChartPoint) -> C {
        let b = self.coordinate_brackets(p);
        let mut acc = C::new(0.0, 0.0);
        for a in 0..6 {
            for bb in 0..6 {
                acc += df[a] * dg[bb] * b[a][bb];
            }
        }
        acc
    }
}

/// The chart functions `A`, `B`, `C` entering the crossed brackets.
#[derive(Clone, Copy, Debug)]
pub struct AuxFunctions {
    pub a: C,
    pub b: C,
    pub c: C,
}

impl AuxFunctions {
    pub fn at(p: &ChartPoint, eta: C) -> Self {
        let [_, x1, x2, xi1, xi2, _] = p.0;
        let (ch1, sh1, t1) = ((eta * x1).cosh(), (eta * x1).sinh(), (eta * x1).tanh());
        let (ch2, sh2, t2) = ((eta * x2).cosh(), (eta * x2).sinh(), (eta * x2).tanh());
        let _ = t1;
        let (cx1, sx1, cx2, sx2) = (xi1.cosh(), xi1.sinh(), xi2.cosh(), xi2.sinh());
        AuxFunctions {
            a: (sh1 * sh2 + ch1 * sx1 * xi2.tanh()) / ch2,
            b: (sh1 * t2 * cx1 + sx1 * sx2) / (ch2 * cx2),
            c: (sh1 * t2 * sx1 + cx1 * sx2) / (ch1 * ch2),
        }
    }
}

/// Identifiers of the fifteen closed-form brackets with their chart indices.
pub const PL_IDS: [(&str, usize, usize); 15] = [
    ("x0x1", 0, 1),
    ("x0x2", 0, 2),
    ("x1x2", 1, 2),
    ("x1xi1", 1, 3),
    ("x1xi2", 1, 4),
    ("x2xi2", 2, 4),
    ("x2xi1", 2, 3),
    ("xi1xi2", 3, 4),
    ("x0theta", 0, 5),
    ("x0xi1", 0, 3),
    ("x0xi2", 0, 4),
    ("thetax1", 5, 1),
    ("thetax2", 5, 2),
    ("thetaxi1", 5, 3),
    ("thetaxi2", 5, 4),
];

/// The closed form of bracket `k` of `PL_IDS`.
pub fn pl_golden(k: usize, p: &ChartPoint, z: f64, theta: f64, eta: C) -> C {
    let [_, x1, x2, xi1, xi2, _] = p.0;
    let (ch1, sh1, t1) = ((eta * x1).cosh(), (eta * x1).sinh(), (eta * x1).tanh());
    let (ch2, sh2, t2) = ((eta * x2).cosh(), (eta * x2).sinh(), (eta * x2).tanh());
    let (cx1, sx1, cx2, sx2, tx2) = (xi1.cosh(), xi1.sinh(), xi2.cosh(), xi2.sinh(), xi2.tanh());
    let aux = AuxFunctions::at(p, eta);
    let (a, b, cf) = (aux.a, aux.b, aux.c);
    let (z, th) = (c(z), c(theta));
    match k {
        0 => -z * tanh_eta(x1, eta) / (ch2 * ch2) - th * ch1 * tanh_eta(x2, eta),
        1 => -z * tanh_eta(x2, eta) + th * sinh_eta(x1, eta),
        2 => C::new(0.0, 0.0),
        3 => z / ch2 * (ch2 / ch1 - cx1 / cx2 + t1 * sh2 * a),
        4 => -z * cx2 * b,
        5 => z * (ch1 / ch2 * cx1 - cx2),
        6 => -z * a,
        7 => z * eta * sh1 * (cf - tx2 / (ch2 * ch2)),
        8 => {
            -z * b / ch1
                + th / 2.0 * cx1 * ((eta * x1 * 2.0).cosh() - (xi2 * 2.0).cosh()) / (ch1 * ch2 * cx2)
        }
        9 => z * (sx2 / ch1 * b - sx1 * cx2 / (ch1 * ch2)) - th * ch1 * cx1 * tx2 / ch2,
        10 => -z * cf + th * ch1 * sx1 / ch2,
        11 => z * ch1 / cx2 * cf + th * sx1 * cx2 / ch2,
        12 => -z * ch1 * sx1 / (ch2 * cx2) + th * sx2,
        13 => -z * eta * (t2 + t1 * b) - th * eta * t1 * cx1 * cx2 / ch2,
        _ => z * eta * sh1 / (ch2 * ch2 * cx2) - th * eta * t2 * cx2,
    }
}

/// `|a - b| / max(|b|, 1)`: relative where the golden value is large, absolute near zero.
pub fn rel_error(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// One row of the bracket table.
#[derive(Clone, Debug, Serialize)]
pub struct PlRow {
    pub point: usize,
    pub bracket: String,
    pub engine: [f64; 2],
    pub golden: [f64; 2],
    pub abs_error: f64,
    pub rel_error: f64,
}

pub fn pl_table(e: &PoissonEvaluator, seed: u64, count: usize) -> Vec<PlRow> {
    let mut rows = Vec::new();
    for (n, p) in sample_points(seed, count, CHART_RADIUS).iter().enumerate() {
        let br = e.coordinate_brackets(p);
        for (k, (id, i, j)) in PL_IDS.iter().enumerate() {
            let (x, y) = (br[*i][*j], pl_golden(k, p, e.z, e.theta, e.eta));
            rows.push(PlRow {
                point: n,
                bracket: id.to_string(),
                engine: [x.re, x.im],
                golden: [y.re, y.im],
                abs_error: (x - y).norm(),
                rel_error: rel_error(x, y),
            });
        }
    }
    rows
}

/// All fifteen closed-form brackets against the Sklyanin evaluator.
pub fn verify_pl_tables(e: &PoissonEvaluator, seed: u64, count: usize, tol: f64) -> Vec<Check> {
    let rows = pl_table(e, seed, count);
    let label = eta_label(e.eta);
    PL_IDS
        .iter()
        .map(|(id, _, _)| {
            let worst = rows.iter().filter(|r| r.bracket == *id).map(|r| r.rel_error).fold(0.0, f64::max);
            Check::bound(
                format!("pl.eta={}.theta={}.{}", label, e.theta, id),
                "Poisson-Lie brackets on the group chart",
                worst,
                tol,
            )
        })
        .collect()
}

/// Antisymmetry and the Poisson-Jacobi identity for every coordinate triple,
/// differentiating the bracket fields by central differences.
pub fn jacobi_numeric(e: &PoissonEvaluator, seed: u64, count: usize, tol: f64) -> Result<Vec<Check>> {
    let label = eta_label(e.eta);
    let mut worst_j: f64 = 0.0;
    let mut worst_a: f64 = 0.0;
    for p in sample_points(seed, count, CHART_RADIUS * 0.8) {
        let b = e.coordinate_brackets(&p);
        // grad[m][a][b] = d_m {a, b}
        let mut grad = [[[C::new(0.0, 0.0); 6]; 6]; 6];
        for m in 0..6 {
            let d = derivative(
                |t| {
                    let mut q = p;
                    q.0[m] += t;
                    let bq = e.coordinate_brackets(&q);
                    Ok(bq.concat())
                },
                1e-4,
            )?;
            for a in 0..6 {
                for bb in 0..6 {
                    grad[m][a][bb] = d[a * 6 + bb];
                }
            }
        }
        for a in 0..6 {
            for bb in 0..6 {
                worst_a = worst_a.max((b[a][bb] + b[bb][a]).norm());
            }
        }
        for a in 0..6 {
            for bb in a + 1..6 {
                for cc in bb + 1..6 {
                    let mut s = C::new(0.0, 0.0);
                    for m in 0..6 {
                        s += b[a][m] * grad[m][bb][cc] + b[bb][m] * grad[m][cc][a] + b[cc][m] * grad[m][a][bb];
                    }
                    worst_j = worst_j.max(s.norm());
                }
            }
        }
    }
    let anchor = "Sklyanin bracket defines a Poisson structure";
    Ok(vec![
        Check::bound(format!("pl.eta={}.antisymmetry", label), anchor, worst_a, 1e-12),
        Check::bound(format!("pl.eta={}.jacobi", label), anchor, worst_j, tol),
    ])
}

/// Numeric Jacobian of the bracket fields at the identity, per chart pair:
/// `lin[a][b][m] = d_m {a, b}(0)`.
pub fn linearize_at_identity(e: &PoissonEvaluator) -> Result<[[[C; 6]; 6]; 6]> {
    let mut lin = [[[C::new(0.0, 0.0); 6]; 6]; 6];
    for m in 0..6 {
        let d = derivative(
            |t| {
                let mut q = ChartPoint::zero();
                q.0[m] += t;
                Ok(e.coordinate_brackets(&q).concat())
            },
            1e-4,
        )?;
        for a in 0..6 {
            for b in 0..6 {
                lin[a][b][m] = d[a * 6 + b];
            }
        }
    }
    Ok(lin)
}

/// The linearised brackets against the dual Lie algebra of the cocommutator.
pub fn check_linearization(e: &PoissonEvaluator, tol: f64) -> Result<Vec<Check>> {
    let l = build_ads_omega();
    let dual = dual_lie_brackets(&cocommutator(&l, &two_param_r()), &DUAL_NAMES)?;
    let s = e.eta.sqrt();
    let asg = Assignment::new(c(e.z), c(e.theta), s);
    let lin = linearize_at_identity(e)?;
    let mut worst: f64 = 0.0;
    for a in 0..6 {
        for b in 0..6 {
            for m in 0..6 {
                let k = dual.c(CHART_TO_GEN[a], CHART_TO_GEN[b], CHART_TO_GEN[m]).evaluate(&asg);
                worst = worst.max((lin[a][b][m] - k).norm());
            }
        }
    }
    Ok(vec![Check::bound(
        format!("pl.eta={}.linearization", eta_label(e.eta)),
        "Poisson-Lie brackets reduce to the dual Lie algebra at first order",
        worst,
        tol,
    )])
}

/// Ambient coordinates `(s3, s0, s1, s2)` and their gradients in `(x0, x1, x2)`.
fn ambient_with_gradient(p: &ChartPoint, eta: C) -> ([C; 4], [[C; 6]; 4]) {
    let [x0, x1, x2, ..] = p.0;
    let (co, si) = ((eta * x0).cos(), (eta * x0).sin());
    let se = crate::geom::sin_eta(x0, eta);
    let (ch1, sh1, ch2, sh2) = ((eta * x1).cosh(), (eta * x1).sinh(), (eta * x2).cosh(), (eta * x2).sinh());
    let (s1e, s2e) = (sinh_eta(x1, eta), sinh_eta(x2, eta));
    let z = C::new(0.0, 0.0);
    let s = [co * ch1 * ch2, se * ch1 * ch2, s1e * ch2, s2e];
    let g = [
        [-eta * si * ch1 * ch2, co * eta * sh1 * ch2, co * ch1 * eta * sh2, z, z, z],
        [co * ch1 * ch2, se * eta * sh1 * ch2, se * ch1 * eta * sh2, z, z, z],
        [z, ch1 * ch2, s1e * eta * sh2, z, z, z],
        [z, z, ch2, z, z, z],
    ];
    (s, g)
}

/// Closed-form quadratic brackets between ambient coordinates.
pub const AMBIENT_NAMES: [&str; 4] = ["s3", "s0", "s1", "s2"];

pub fn ambient_golden(a: usize, b: usize, s: &[C; 4], z: f64, theta: f64, eta: C) -> C {
    let (z, th, w) = (c(z), c(theta), eta * eta);
    let [s3, s0, s1, s2] = *s;
    let m = |i: usize| if i == 2 { z * s1 + th * s2 } else { z * s2 - th * s1 };
    let raw = |a: usize, b: usize| -> Option<C> {
        match (a, b) {
            (1, i @ (2 | 3)) => Some(-s3 * m(i)),
            (2, 3) => Some(C::new(0.0, 0.0)),
            (0, 1) => Some(z * w * (s1 * s1 + s2 * s2)),
            (0, i @ (2 | 3)) => Some(w * s0 * m(i)),
            _ => None,
        }
    };
    if a == b {
        C::new(0.0, 0.0)
    } else {
        raw(a, b).unwrap_or_else(|| -raw(b, a).expect("every pair is covered"))
    }
}

/// Ambient brackets by the chain rule from the chart brackets.
pub fn ambient_quadratic(e: &PoissonEvaluator, seed: u64, count: usize, tol: f64) -> Vec<Check> {
    let mut worst = [[0.0f64; 4]; 4];
    for p in sample_points(seed, count, CHART_RADIUS) {
        let (s, g) = ambient_with_gradient(&p, e.eta);
        for a in 0..4 {
            for b in a + 1..4 {
                let x = e.sklyanin(&g[a], &g[b], &p);
                let y = ambient_golden(a, b, &s, e.z, e.theta, e.eta);
                worst[a][b] = worst[a][b].max(rel_error(x, y));
            }
        }
    }
    let label = eta_label(e.eta);
    let mut out = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            out.push(Check::bound(
                format!("ambient.eta={}.{{{},{}}}", label, AMBIENT_NAMES[a], AMBIENT_NAMES[b]),
                "quadratic Poisson algebra in ambient coordinates",
                worst[a][b],
                tol,
            ));
        }
    }
    out
}

/// Exact quadratic bracket table on `Q[s3, s0, s1, s2]` with series coefficients.
pub struct AmbientAlgebra {
    pub ring: Algebra<Series>,
    /// `{s_a, s_b}` over the index order `s3, s0, s1, s2`.
    pub table: Vec<Vec<Poly<Series>>>,
}

impl AmbientAlgebra {
    pub fn new(order: i32) -> Result<Self> {
        let mut ring = Algebra::new(&AMBIENT_NAMES, Some(order));
        for i in 0..4 {
            for j in i + 1..4 {
                ring.set_commutator(i, j, Poly::zero())?;
            }
        }
        let src = |a: usize, b: usize| -> Option<&'static str> {
            match (a, b) {
                (1, 2) => Some("-s3*(z*s1 + theta*s2)"),
                (1, 3) => Some("-s3*(z*s2 - theta*s1)"),
                (2, 3) => Some("0"),
                (0, 1) => Some("z*omega*(s1^2 + s2^2)"),
                (0, 2) => Some("omega*s0*(z*s1 + theta*s2)"),
                (0, 3) => Some("omega*s0*(z*s2 - theta*s1)"),
                _ => None,
            }
        };
        let mut table = vec![vec![Poly::zero(); 4]; 4];
        for a in 0..4 {
            for b in a + 1..4 {
                let v = eval_poly(&ring, src(a, b).expect("upper triangle"), order)?;
                table[b][a] = v.neg();
                table[a][b] = v;
            }
        }
        Ok(AmbientAlgebra { ring, table })
    }

    pub fn names(&self) -> Vec<String> {
        self.ring.names().to_vec()
    }

    /// `{F, G} = sum d_a F d_b G {s_a, s_b}`.
    pub fn bracket(&self, f: &Poly<Series>, g: &Poly<Series>) -> Result<Poly<Series>> {
        let mut acc = Poly::zero();
        for a in 0..4 {
            let fa = partial(f, a);
            if fa.is_zero() {
                continue;
            }
            for b in 0..4 {
                let gb = partial(g, b);
                if gb.is_zero() || self.table[a][b].is_zero() {
                    continue;
                }
                acc = acc.add(&self.ring.mul(&self.ring.mul(&fa, &gb)?, &self.table[a][b])?);
            }
        }
        Ok(acc)
    }
}

/// Partial derivative in a commutative polynomial ring.
pub fn partial(p: &Poly<Series>, k: usize) -> Poly<Series> {
    let mut out = Poly::zero();
    for (m, coef) in p.nonzero_terms() {
        if m[k] == 0 {
            continue;
        }
        let mut m2: Mono = *m;
        m2[k] -= 1;
        out.add_term(m2, &coef.scale_rat(&num_rational::BigRational::from_integer((m[k] as i64).into())));
    }
    out
}

/// Casimir-function identity for the pseudosphere, Jacobi of the quadratic table, and the flat limit.
pub fn check_ambient_exact(order: i32) -> Result<Vec<Check>> {
    let alg = AmbientAlgebra::new(order)?;
    let names = alg.names();
    let sigma = eval_poly(&alg.ring, "s3^2 + omega*(s0^2 - s1^2 - s2^2)", order)?;
    let anchor = "quadratic Poisson algebra in ambient coordinates";
    let mut out = Vec::new();
    for b in 0..4 {
        let v = alg.bracket(&sigma, &Poly::gen(b))?;
        out.push(Check::exact(
            format!("ambient.casimir.{}", names[b]),
            anchor,
            if v.is_zero() { None } else { Some(v.display(&names)) },
        ));
    }
    let mut jac = Poly::zero();
    for a in 0..4 {
        for b in a + 1..4 {
            for cc in b + 1..4 {
                let (x, y, w) = (Poly::gen(a), Poly::gen(b), Poly::gen(cc));
                let t1 = alg.bracket(&x, &alg.bracket(&y, &w)?)?;
                let t2 = alg.bracket(&y, &alg.bracket(&w, &x)?)?;
                let t3 = alg.bracket(&w, &alg.bracket(&x, &y)?)?;
                jac = jac.add(&t1.add(&t2).add(&t3));
            }
        }
    }
    out.push(Check::exact(
        "ambient.jacobi",
        anchor,
        if jac.is_zero() { None } else { Some(jac.display(&names)) },
    ));
    // omega -> 0 with s3 -> 1 gives the linear brackets
    let b = expr::bindings(&[])?;
    let mut bad = Vec::new();
    for (i, lin) in [(2, "-(z*s1 + theta*s2)"), (3, "-(z*s2 - theta*s1)")] {
        let limit = substitute_s3_one(&alg.table[1][i].try_map_coeffs(|c| c.set_zero(Var::S))?);
        let want = expr::eval_str(lin, &PolyCtx::new(&alg.ring), &b, order)?;
        if !limit.sub(&want).is_zero() {
            bad.push(limit.sub(&want).display(&names));
        }
    }
    out.push(Check::exact("ambient.flat-limit", anchor, if bad.is_empty() { None } else { Some(bad.join("; ")) }));
    Ok(out)
}

fn substitute_s3_one(p: &Poly<Series>) -> Poly<Series> {
    let mut out = Poly::zero();
    for (m, coef) in p.nonzero_terms() {
        let mut m2 = *m;
        m2[0] = 0;
        out.add_term(m2, coef);
    }
    out
}

/// The noncommutative spacetime: `x0` leftmost, `[x1, x2] = 0`.
pub struct SpacetimeAlgebra {
    pub alg: Algebra<Series>,
    /// `[x0, x1]` and `[x0, x2]`.
    pub rhs: [Poly<Series>; 2],
    pub order: i32,
}

pub const SPACETIME_NAMES: [&str; 3] = ["x0", "x1", "x2"];

pub const SPACETIME_CLOSED: [&str; 2] = [
    "-z*tanh(eta*x1)/(eta*cosh(eta*x2)^2) - theta*cosh(eta*x1)*tanh(eta*x2)/eta",
    "-z*tanh(eta*x2)/eta + theta*sinh(eta*x1)/eta",
];

pub const SPACETIME_EXPANDED: [&str; 2] = [
    "-z*(x1 - omega/3*x1^3 - omega*x1*x2^2) - theta*(x2 + omega/2*x1^2*x2 - omega/3*x2^3)",
    "-z*(x2 - omega/3*x2^3) + theta*(x1 + omega/6*x1^3)",
];

/// The reference expansions drop `z omega^2` and `theta omega^2`, of weight 9.
pub const SPACETIME_EXPANSION_ORDER: i32 = 8;

/// Build the relations from the closed forms, with `z` and `theta` formal.
pub fn build_spacetime(order: i32) -> Result<SpacetimeAlgebra> {
    let mut alg = Algebra::new(&SPACETIME_NAMES, Some(order));
    alg.set_commutator(1, 2, Poly::zero())?;
    let rhs = [eval_poly(&alg, SPACETIME_CLOSED[0], order)?, eval_poly(&alg, SPACETIME_CLOSED[1], order)?];
    alg.set_commutator(0, 1, rhs[0].clone())?;
    alg.set_commutator(0, 2, rhs[1].clone())?;
    Ok(SpacetimeAlgebra { alg, rhs, order })
}

impl SpacetimeAlgebra {
    pub fn names(&self) -> Vec<String> {
        SPACETIME_NAMES.iter().map(|s| s.to_string()).collect()
    }

    pub fn eval(&self, src: &str) -> Result<Poly<Series>> {
        eval_poly(&self.alg, src, self.order)
    }
}

fn diff(a: &Poly<Series>, b: &Poly<Series>, names: &[String]) -> Option<String> {
    let d = a.sub(b);
    if d.is_zero() {
        None
    } else {
        Some(d.display(names))
    }
}

fn specialize(p: &Poly<Series>, v: Var) -> Result<Poly<Series>> {
    p.try_map_coeffs(|c| c.set_zero(v))
}

/// Expansion, specialisations, structure and Jacobi of the spacetime relations.
pub fn check_spacetime(order: i32) -> Result<Vec<Check>> {
    let st = build_spacetime(order)?;
    let names = st.names();
    let anchor = "noncommutative twisted spacetime";
    let mut out = Vec::new();
    let labels = ["x0x1", "x0x2"];
    let low = order.min(SPACETIME_EXPANSION_ORDER);
    for k in 0..2 {
        let expanded = eval_poly(&st.alg, SPACETIME_EXPANDED[k], low)?;
        out.push(Check::exact(
            format!("spacetime.{}.expansion", labels[k]),
            anchor,
            diff(&st.rhs[k].truncate(low), &expanded, &names),
        ));
        let flat = specialize(&st.rhs[k], Var::S)?;
        let linear = st.eval(["-z*x1 - theta*x2", "-z*x2 + theta*x1"][k])?;
        out.push(Check::exact(format!("spacetime.{}.flat", labels[k]), anchor, diff(&flat, &linear, &names)));
        let untwisted = specialize(&st.rhs[k], Var::Theta)?;
        let want = st.eval(["-z*tanh(eta*x1)/(eta*cosh(eta*x2)^2)", "-z*tanh(eta*x2)/eta"][k])?;
        out.push(Check::exact(format!("spacetime.{}.untwisted", labels[k]), anchor, diff(&untwisted, &want, &names)));
        let pure = specialize(&st.rhs[k], Var::Z)?;
        let want = st.eval(["-theta*cosh(eta*x1)*tanh(eta*x2)/eta", "theta*sinh(eta*x1)/eta"][k])?;
        out.push(Check::exact(format!("spacetime.{}.pure-twist", labels[k]), anchor, diff(&pure, &want, &names)));
        let has_x0 = st.rhs[k].nonzero_terms().any(|(m, _)| m[0] != 0);
        out.push(Check::exact(
            format!("spacetime.{}.no-x0", labels[k]),
            anchor,
            if has_x0 { Some(st.rhs[k].display(&names)) } else { None },
        ));
    }
    let (x0, x1, x2) = (Poly::gen(0), Poly::gen(1), Poly::gen(2));
    let a = &st.alg;
    let j = a
        .commutator(&x0, &a.commutator(&x1, &x2)?)?
        .add(&a.commutator(&x1, &a.commutator(&x2, &x0)?)?)
        .add(&a.commutator(&x2, &a.commutator(&x0, &x1)?)?);
    out.push(Check::exact("spacetime.jacobi", anchor, if j.is_zero() { None } else { Some(j.display(&names)) }));
    let w = [2usize, 1, 0];
    let lhs = a.word(&w)?;
    let rhs = a.word_by_strategy(&w, |n| n - 1)?;
    out.push(Check::exact("spacetime.overlap.x2x1x0", anchor, diff(&lhs, &rhs, &names)));
    Ok(out)
}

/// Default numeric deformation parameters for the Poisson layer.
pub const DEFAULT_Z: f64 = 0.5;
pub const DEFAULT_THETA: f64 = 0.3;

/// Chart names, for table headers.
pub fn chart_names() -> [&'static str; 6] {
    CHART_NAMES
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spatial_coordinates_commute() {
        let e = PoissonEvaluator::new(0.7, 0.2, c(1.0));
        let p = ChartPoint::real([0.1, 0.2, -0.3, 0.1, 0.05, -0.2]);
        assert!(e.coordinate_brackets(&p)[1][2].norm() < 1e-14);
    }

    #[test]
    fn zero_r_gives_zero_brackets() {
        let e = PoissonEvaluator::new(0.0, 0.0, c(1.0));
        let p = ChartPoint::real([0.1, 0.2, -0.3, 0.1, 0.05, -0.2]);
        assert!(e.coordinate_brackets(&p).iter().flatten().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn x0_x2_bracket() {
        let (z, th, eta) = (0.7, 0.2, c(1.0));
        let e = PoissonEvaluator::new(z, th, eta);
        let p = ChartPoint::real([0.1, 0.2, -0.3, 0.1, 0.05, -0.2]);
        let want = -z * (-0.3f64).tanh() + th * 0.2f64.sinh();
        assert!((e.coordinate_brackets(&p)[0][2] - want).norm() < 1e-12);
    }

    #[test]
    fn partial_derivative() {
        let alg = AmbientAlgebra::new(4).unwrap();
        let p = eval_poly(&alg.ring, "s1^3*s2 + 2*s1", 4).unwrap();
        let d = eval_poly(&alg.ring, "3*s1^2*s2 + 2", 4).unwrap();
        assert_eq!(partial(&p, 2), d);
    }
}

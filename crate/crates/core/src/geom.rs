//! The 4x4 vector representation of the AdS/dS/Poincare groups, the
//! six-coordinate chart, ambient coordinates and the invariant vector fields.
//!
//! Everything is complex so that de Sitter is reached by taking `eta`
//! imaginary; `eta = 0` gives the Poincare group through series fallbacks.

use nalgebra::Matrix4;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::KIN_NAMES;
use crate::report::Check;

pub type C = Complex64;
pub type Mat4 = Matrix4<C>;

pub const J: usize = 0;
pub const P0: usize = 1;
pub const P1: usize = 2;
pub const P2: usize = 3;
pub const K1: usize = 4;
pub const K2: usize = 5;

/// Chart coordinate names, in the order `(x0, x1, x2, xi1, xi2, theta)`.
pub const CHART_NAMES: [&str; 6] = ["x0", "x1", "x2", "xi1", "xi2", "theta"];

pub const CHART_RADIUS: f64 = 0.5;
pub const FD_STEP: f64 = 1e-5;

const SMALL: f64 = 1e-6;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

/// `sin(eta x)/eta`, finite at `eta = 0`.
pub fn sin_eta(x: C, eta: C) -> C {
    let u = eta * x;
    if u.norm() < SMALL {
        x * (c(1.0) - u * u / 6.0)
    } else {
        u.sin() / eta
    }
}

/// `sinh(eta x)/eta`.
pub fn sinh_eta(x: C, eta: C) -> C {
    let u = eta * x;
    if u.norm() < SMALL {
        x * (c(1.0) + u * u / 6.0)
    } else {
        u.sinh() / eta
    }
}

/// `tanh(eta x)/eta`.
pub fn tanh_eta(x: C, eta: C) -> C {
    let u = eta * x;
    if u.norm() < SMALL {
        x * (c(1.0) - u * u / 3.0)
    } else {
        u.tanh() / eta
    }
}

/// `tan(eta x)/eta`.
pub fn tan_eta(x: C, eta: C) -> C {
    let u = eta * x;
    if u.norm() < SMALL {
        x * (c(1.0) + u * u / 3.0)
    } else {
        u.tan() / eta
    }
}

/// `asinh(eta y)/eta`.
pub fn asinh_eta(y: C, eta: C) -> C {
    let u = eta * y;
    if u.norm() < SMALL {
        y * (c(1.0) - u * u / 6.0)
    } else {
        u.asinh() / eta
    }
}

/// `atan(eta y)/eta`.
pub fn atan_eta(y: C, eta: C) -> C {
    let u = eta * y;
    if u.norm() < SMALL {
        y * (c(1.0) - u * u / 3.0)
    } else {
        u.atan() / eta
    }
}

/// The generator matrices in the order `J, P0, P1, P2, K1, K2`, with `omega = eta^2`.
pub fn generator_matrices(eta: C) -> [Mat4; 6] {
    let w = eta * eta;
    let mut m = [Mat4::zeros(); 6];
    let (o, one) = (C::new(0.0, 0.0), c(1.0));
    let set = |m: &mut Mat4, i: usize, j: usize, v: C| m[(i, j)] = v;
    set(&mut m[P0], 0, 1, -w);
    set(&mut m[P0], 1, 0, one);
    set(&mut m[P1], 0, 2, w);
    set(&mut m[P1], 2, 0, one);
    set(&mut m[P2], 0, 3, w);
    set(&mut m[P2], 3, 0, one);
    set(&mut m[J], 2, 3, -one);
    set(&mut m[J], 3, 2, one);
    set(&mut m[K1], 1, 2, one);
    set(&mut m[K1], 2, 1, one);
    set(&mut m[K2], 1, 3, one);
    set(&mut m[K2], 3, 1, one);
    let _ = o;
    m
}

/// `I_omega = diag(1, omega, -omega, -omega)`.
pub fn bilinear_form(eta: C) -> Mat4 {
    let w = eta * eta;
    Mat4::from_diagonal(&nalgebra::Vector4::new(c(1.0), w, -w, -w))
}

/// Coordinates of an algebra matrix on the generator basis, read from the
/// entries that only one generator touches.
pub fn decompose(m: &Mat4) -> [C; 6] {
    let mut out = [C::new(0.0, 0.0); 6];
    out[P0] = m[(1, 0)];
    out[P1] = m[(2, 0)];
    out[P2] = m[(3, 0)];
    out[J] = m[(3, 2)];
    out[K1] = m[(2, 1)];
    out[K2] = m[(3, 1)];
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub m: Mat4,
    pub eta: C,
}

impl GroupElement {
    pub fn identity(eta: C) -> Self {
        GroupElement { m: Mat4::identity(), eta }
    }

    pub fn mul(&self, o: &GroupElement) -> GroupElement {
        GroupElement { m: self.m * o.m, eta: self.eta }
    }

    /// Largest entry of `G^T I G - I`.
    pub fn isometry_defect(&self) -> f64 {
        let i = bilinear_form(self.eta);
        max_abs(&(self.m.transpose() * i * self.m - i))
    }
}

pub fn max_abs(m: &Mat4) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// The closed-form exponential `exp(t X)` of a generator.
pub fn one_param_subgroup(g: usize, t: C, eta: C) -> GroupElement {
    let mut m = Mat4::identity();
    let one = c(1.0);
    match g {
        P0 => {
            let (co, si) = ((eta * t).cos(), sin_eta(t, eta));
            m[(0, 0)] = co;
            m[(0, 1)] = -eta * eta * si;
            m[(1, 0)] = si;
            m[(1, 1)] = co;
        }
        P1 | P2 => {
            let k = if g == P1 { 2 } else { 3 };
            let (ch, sh) = ((eta * t).cosh(), sinh_eta(t, eta));
            m[(0, 0)] = ch;
            m[(0, k)] = eta * eta * sh;
            m[(k, 0)] = sh;
            m[(k, k)] = ch;
        }
        K1 | K2 => {
            let k = if g == K1 { 2 } else { 3 };
            m[(1, 1)] = t.cosh();
            m[(1, k)] = t.sinh();
            m[(k, 1)] = t.sinh();
            m[(k, k)] = t.cosh();
        }
        _ => {
            m[(2, 2)] = t.cos();
            m[(2, 3)] = -t.sin();
            m[(3, 2)] = t.sin();
            m[(3, 3)] = t.cos();
        }
    }
    let _ = one;
    GroupElement { m, eta }
}

/// Matrix exponential of `t X` computed numerically.
pub fn expm_generator(g: usize, t: C, eta: C) -> Mat4 {
    (generator_matrices(eta)[g] * t).exp()
}

/// A point `(x0, x1, x2, xi1, xi2, theta)` of the group chart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChartPoint(pub [C; 6]);

impl ChartPoint {
    pub fn zero() -> Self {
        ChartPoint([C::new(0.0, 0.0); 6])
    }

    pub fn real(v: [f64; 6]) -> Self {
        ChartPoint(v.map(c))
    }

    pub fn max_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn shifted(&self, k: usize, h: f64) -> ChartPoint {
        let mut p = *self;
        p.0[k] += h;
        p
    }
}

/// The order in which the chart multiplies one-parameter subgroups.
const CHART_GENERATORS: [usize; 6] = [P0, P1, P2, K1, K2, J];

/// `T = exp(x0 P0) exp(x1 P1) exp(x2 P2) exp(xi1 K1) exp(xi2 K2) exp(theta J)`.
pub fn group_element(p: &ChartPoint, eta: C) -> GroupElement {
    CHART_GENERATORS
        .iter()
        .zip(p.0.iter())
        .fold(GroupElement::identity(eta), |acc, (g, t)| acc.mul(&one_param_subgroup(*g, *t, eta)))
}

/// Invert `group_element` by reading the spacetime coordinates off the
/// first column and the Lorentz angles off the remaining block.
pub fn chart_coords(g: &GroupElement) -> Result<ChartPoint> {
    let eta = g.eta;
    let m = &g.m;
    let (s3, s0, s1, s2) = (m[(0, 0)], m[(1, 0)], m[(2, 0)], m[(3, 0)]);
    if s3.norm() < 1e-8 {
        return Err(Error::Domain("group element outside the chart (s3 = 0)".into()));
    }
    let x2 = asinh_eta(s2, eta);
    let x1 = asinh_eta(s1 / (eta * x2).cosh(), eta);
    let x0 = atan_eta(s0 / s3, eta);
    let strip = [P2, P1, P0]
        .iter()
        .zip([x2, x1, x0])
        .fold(GroupElement::identity(eta), |acc, (gen, t)| acc.mul(&one_param_subgroup(*gen, -t, eta)));
    let l = strip.mul(g).m;
    let xi2 = l[(3, 1)].asinh();
    let ch2 = xi2.cosh();
    let xi1 = (l[(2, 1)] / ch2).asinh();
    let rest = one_param_subgroup(K2, -xi2, eta).mul(&one_param_subgroup(K1, -xi1, eta));
    let r = (rest.m * l).map(|z| z);
    let theta = (r[(3, 2)] / r[(2, 2)]).atan();
    let p = ChartPoint([x0, x1, x2, xi1, xi2, theta]);
    if p.0.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) || r[(2, 2)].re <= 0.0 {
        return Err(Error::Domain("group element outside the chart".into()));
    }
    Ok(p)
}

/// Ambient coordinates `(s3, s0, s1, s2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmbientPoint(pub [C; 4]);

impl AmbientPoint {
    /// `s3^2 + omega (s0^2 - s1^2 - s2^2) - 1`.
    pub fn pseudosphere_defect(&self, eta: C) -> C {
        let [s3, s0, s1, s2] = self.0;
        s3 * s3 + eta * eta * (s0 * s0 - s1 * s1 - s2 * s2) - 1.0
    }
}

/// Geodesic parallel coordinates to ambient coordinates.
pub fn ambient_coords(x0: C, x1: C, x2: C, eta: C) -> AmbientPoint {
    let (ch1, ch2) = ((eta * x1).cosh(), (eta * x2).cosh());
    AmbientPoint([
        (eta * x0).cos() * ch1 * ch2,
        sin_eta(x0, eta) * ch1 * ch2,
        sinh_eta(x1, eta) * ch2,
        sinh_eta(x2, eta),
    ])
}

/// Central difference with one Richardson step.
pub fn derivative<F: Fn(f64) -> Result<V>, V: Into<Vec<C>>>(f: F, h: f64) -> Result<Vec<C>> {
    let d = |h: f64| -> Result<Vec<C>> {
        let (a, b): (Vec<C>, Vec<C>) = (f(h)?.into(), f(-h)?.into());
        Ok(a.iter().zip(&b).map(|(x, y)| (x - y) / (2.0 * h)).collect())
    };
    let (d1, d2) = (d(h)?, d(h / 2.0)?);
    Ok(d1.iter().zip(&d2).map(|(a, b)| (4.0 * b - a) / 3.0).collect())
}

/// Metric pulled back from the ambient form, minus the closed form, as a max-entry residual.
pub fn metric_residual(x: [f64; 3], eta: C, h: f64) -> Result<f64> {
    let amb = |v: [f64; 3]| ambient_coords(c(v[0]), c(v[1]), c(v[2]), eta);
    let mut jac = [[C::new(0.0, 0.0); 3]; 4];
    for a in 0..3 {
        let col = derivative(
            |t| {
                let mut v = x;
                v[a] += t;
                Ok(amb(v).0)
            },
            h,
        )?;
        for (r, z) in col.into_iter().enumerate() {
            jac[r][a] = z;
        }
    }
    let p = amb(x).0;
    let w = eta * eta;
    let den = c(1.0) - w * (p[1] * p[1] - p[2] * p[2] - p[3] * p[3]);
    let u: Vec<C> = (0..3).map(|a| p[1] * jac[1][a] - p[2] * jac[2][a] - p[3] * jac[3][a]).collect();
    let (ch1, ch2) = ((eta * x[1]).cosh(), (eta * x[2]).cosh());
    let expected = [ch1 * ch1 * ch2 * ch2, -ch2 * ch2, c(-1.0)];
    let mut worst: f64 = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            let g = jac[1][a] * jac[1][b] - jac[2][a] * jac[2][b] - jac[3][a] * jac[3][b] + w * u[a] * u[b] / den;
            let e = if a == b { expected[a] } else { C::new(0.0, 0.0) };
            worst = worst.max((g - e).norm());
        }
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "L",
            Side::Right => "R",
        }
    }
}

/// Closed-form invariant vector field of generator `g` at `p`, as
/// coefficients of `(d_x0, d_x1, d_x2, d_xi1, d_xi2, d_theta)`.
pub fn vector_field(side: Side, g: usize, p: &ChartPoint, eta: C) -> [C; 6] {
    let [x0, x1, x2, xi1, xi2, th] = p.0;
    let z = C::new(0.0, 0.0);
    let mut v = [z; 6];
    let (ch1, sh1, ch2) = ((eta * x1).cosh(), (eta * x1).sinh(), (eta * x2).cosh());
    let (cx1, sx1, cx2, sx2) = (xi1.cosh(), xi1.sinh(), xi2.cosh(), xi2.sinh());
    let (ct, st) = (th.cos(), th.sin());
    // eta * tanh(eta x2), finite at eta = 0
    let et2 = eta * eta * tanh_eta(x2, eta);
    match side {
        Side::Left => match g {
            P0 | P1 | P2 => {
                let (a, dx1, dx2) = match g {
                    P0 => (cx1 * cx2, sx1 * cx2 / ch2, sx2),
                    P1 => ((sx1 * ct + cx1 * sx2 * st), (cx1 * ct + sx1 * sx2 * st) / ch2, cx2 * st),
                    _ => ((cx1 * sx2 * ct - sx1 * st), (sx1 * sx2 * ct - cx1 * st) / ch2, cx2 * ct),
                };
                let a = a / (ch1 * ch2);
                v[0] = a;
                v[3] = -a * eta * sh1;
                v[1] = dx1;
                v[2] = dx2;
                match g {
                    P0 => v[4] = -et2 * cx2,
                    P1 => {
                        v[3] -= et2 * xi2.tanh() * ct;
                        v[4] -= et2 * sx2 * st;
                        v[5] += et2 * ct / cx2;
                    }
                    _ => {
                        v[3] += et2 * xi2.tanh() * st;
                        v[4] -= et2 * sx2 * ct;
                        v[5] -= et2 * st / cx2;
                    }
                }
            }
            K1 => {
                v[3] = ct / cx2;
                v[4] = st;
                v[5] = xi2.tanh() * ct;
            }
            K2 => {
                v[3] = -st / cx2;
                v[4] = ct;
                v[5] = -xi2.tanh() * st;
            }
            _ => v[5] = c(1.0),
        },
        Side::Right => {
            let (co, si) = ((eta * x0).cos(), (eta * x0).sin());
            let si_e = sin_eta(x0, eta);
            let th1 = (eta * x1).tanh();
            match g {
                P0 => v[0] = c(1.0),
                P1 => {
                    v[0] = -si * th1;
                    v[1] = co;
                    v[3] = -eta * si / ch1;
                }
                P2 => {
                    let th2 = (eta * x2).tanh();
                    let b = -si * th2 / ch1;
                    v[0] = b;
                    v[3] = -b * eta * sh1;
                    v[1] = -co * sh1 * th2;
                    v[2] = co * ch1;
                    v[4] = eta * (co * sh1 * sx1 - si * cx1) / ch2;
                    let d = eta * (co * sh1 * cx1 - si * sx1) / (ch2 * cx2);
                    v[5] += d;
                    v[3] -= d * sx2;
                }
                K1 => {
                    v[0] = co * tanh_eta(x1, eta);
                    v[1] = si_e;
                    v[3] = co / ch1;
                }
                K2 => {
                    let b = co * tanh_eta(x2, eta) / ch1;
                    v[0] = b;
                    v[3] = -b * eta * sh1;
                    v[1] = -si_e * sh1 * (eta * x2).tanh();
                    v[2] = si_e * ch1;
                    v[4] = (si * sh1 * sx1 + co * cx1) / ch2;
                    let d = (si * sh1 * cx1 + co * sx1) / (ch2 * cx2);
                    v[5] += d;
                    v[3] -= d * sx2;
                }
                _ => {
                    v[1] = -ch1 * tanh_eta(x2, eta);
                    v[2] = sinh_eta(x1, eta);
                    let f = -ch1 / ch2;
                    v[3] = f * cx1 * xi2.tanh();
                    v[4] = -f * sx1;
                    v[5] = -f * cx1 / cx2;
                }
            }
        }
    }
    v
}

/// `d/dt chart(G exp(tX))` (left) or `d/dt chart(exp(tX) G)` (right) at `t = 0`.
pub fn vf_oracle(side: Side, g: usize, p: &ChartPoint, eta: C, h: f64) -> Result<[C; 6]> {
    let base = group_element(p, eta);
    let d = derivative(
        |t| {
            let e = one_param_subgroup(g, c(t), eta);
            let moved = match side {
                Side::Left => base.mul(&e),
                Side::Right => e.mul(&base),
            };
            Ok(chart_coords(&moved)?.0)
        },
        h,
    )?;
    let mut out = [C::new(0.0, 0.0); 6];
    out.copy_from_slice(&d);
    Ok(out)
}

/// Uniform points in the chart ball.
pub fn sample_points(seed: u64, count: usize, radius: f64) -> Vec<ChartPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| ChartPoint::real(std::array::from_fn(|_| rng.gen_range(-radius..radius))))
        .collect()
}

/// Commutator of two vector fields at `p` by central differences of their closed forms.
pub fn field_bracket<F, G>(f: F, g: G, p: &ChartPoint, h: f64) -> Result<[C; 6]>
where
    F: Fn(&ChartPoint) -> [C; 6],
    G: Fn(&ChartPoint) -> [C; 6],
{
    let (fp, gp) = (f(p), g(p));
    let mut out = [C::new(0.0, 0.0); 6];
    for j in 0..6 {
        let dg = derivative(|t| Ok(g(&p.shifted(j, t))), h)?;
        let df = derivative(|t| Ok(f(&p.shifted(j, t))), h)?;
        for k in 0..6 {
            out[k] += fp[j] * dg[k] - gp[j] * df[k];
        }
    }
    Ok(out)
}

fn vec_err(a: &[C; 6], b: &[C; 6]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn eta_label(eta: C) -> String {
    if eta.norm() == 0.0 {
        "0".into()
    } else if eta.im == 0.0 {
        format!("{}", eta.re)
    } else if eta.re == 0.0 {
        format!("{}i", eta.im)
    } else {
        format!("{}", eta)
    }
}

/// One row of the vector-field table.
#[derive(Clone, Debug, Serialize)]
pub struct FieldRow {
    pub point: usize,
    pub side: Side,
    pub generator: String,
    pub closed_form: [[f64; 2]; 6],
    pub oracle: [[f64; 2]; 6],
    pub max_abs_error: f64,
}

fn pairs(v: &[C; 6]) -> [[f64; 2]; 6] {
    v.map(|z| [z.re, z.im])
}

pub fn vector_field_table(eta: C, seed: u64, count: usize, h: f64) -> Result<Vec<FieldRow>> {
    let mut rows = Vec::new();
    for (k, p) in sample_points(seed, count, CHART_RADIUS).iter().enumerate() {
        for side in [Side::Left, Side::Right] {
            for g in 0..6 {
                let a = vector_field(side, g, p, eta);
                let b = vf_oracle(side, g, p, eta, h)?;
                rows.push(FieldRow {
                    point: k,
                    side,
                    generator: KIN_NAMES[g].to_string(),
                    closed_form: pairs(&a),
                    oracle: pairs(&b),
                    max_abs_error: vec_err(&a, &b),
                });
            }
        }
    }
    Ok(rows)
}

/// Closed-form fields against the definitional oracle, plus reality for imaginary `eta`.
pub fn check_vector_fields(eta: C, seed: u64, count: usize, tol: f64) -> Result<Vec<Check>> {
    let label = eta_label(eta);
    let rows = vector_field_table(eta, seed, count, FD_STEP)?;
    let anchor = "left- and right-invariant vector fields";
    let mut out = Vec::new();
    for side in [Side::Left, Side::Right] {
        for g in 0..6 {
            let worst = rows
                .iter()
                .filter(|r| r.side == side && r.generator == KIN_NAMES[g])
                .map(|r| r.max_abs_error)
                .fold(0.0, f64::max);
            out.push(Check::bound(format!("vf.eta={}.{}.{}", label, side.name(), KIN_NAMES[g]), anchor, worst, tol));
        }
    }
    if eta.re == 0.0 && eta.im != 0.0 {
        let worst = rows
            .iter()
            .flat_map(|r| r.closed_form.iter().map(|z| z[1].abs()))
            .fold(0.0, f64::max);
        out.push(Check::bound(format!("vf.eta={}.reality", label), anchor, worst, 1e-10));
    }
    Ok(out)
}

/// `[Y_X, Y_Z] = sign * Y_[X,Z]` on each side, and left fields commute with right ones.
pub fn check_field_algebra(eta: C, seed: u64, count: usize, tol: f64) -> Result<Vec<Check>> {
    let gens = generator_matrices(eta);
    let label = eta_label(eta);
    let pts = sample_points(seed, count, CHART_RADIUS);
    let anchor = "invariant vector fields represent the Lie algebra";
    let mut out = Vec::new();
    for (side, sign) in [(Side::Left, 1.0), (Side::Right, -1.0)] {
        let mut worst: f64 = 0.0;
        for p in &pts {
            for a in 0..6 {
                for b in a + 1..6 {
                    let br = field_bracket(|q| vector_field(side, a, q, eta), |q| vector_field(side, b, q, eta), p, 1e-4)?;
                    let coeffs = decompose(&(gens[a] * gens[b] - gens[b] * gens[a]));
                    let mut expect = [C::new(0.0, 0.0); 6];
                    for (g, k) in coeffs.iter().enumerate() {
                        let y = vector_field(side, g, p, eta);
                        for i in 0..6 {
                            expect[i] += y[i] * k * sign;
                        }
                    }
                    worst = worst.max(vec_err(&br, &expect));
                }
            }
        }
        out.push(Check::bound(format!("vf.eta={}.{}.brackets", label, side.name()), anchor, worst, tol));
    }
    let mut worst: f64 = 0.0;
    for p in &pts {
        for a in 0..6 {
            for b in 0..6 {
                let br = field_bracket(|q| vector_field(Side::Left, a, q, eta), |q| vector_field(Side::Right, b, q, eta), p, 1e-4)?;
                worst = worst.max(br.iter().map(|z| z.norm()).fold(0.0, f64::max));
            }
        }
    }
    out.push(Check::bound(format!("vf.eta={}.left-right-commute", label), anchor, worst, tol));
    Ok(out)
}

/// Matrix-level checks: algebra condition, brackets, subgroups vs `expm`, chart round trip,
/// ambient coordinates and metric.
pub fn check_group(eta: C, seed: u64, count: usize, tol: f64) -> Result<Vec<Check>> {
    let label = eta_label(eta);
    let gens = generator_matrices(eta);
    let form = bilinear_form(eta);
    let mut out = Vec::new();
    let worst = gens.iter().map(|y| max_abs(&(y.transpose() * form + form * y))).fold(0.0, f64::max);
    out.push(Check::bound(format!("geom.eta={}.algebra-condition", label), "vector representation", worst, 1e-14));
    let br = decompose(&(gens[P0] * gens[K1] - gens[K1] * gens[P0]));
    let mut expect = [C::new(0.0, 0.0); 6];
    expect[P1] = c(-1.0);
    out.push(Check::bound(format!("geom.eta={}.[P0,K1]", label), "vector representation", vec_err(&br, &expect), 1e-14));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let t = c(rng.gen_range(-1.0..1.0));
        for g in 0..6 {
            worst = worst.max(max_abs(&(one_param_subgroup(g, t, eta).m - expm_generator(g, t, eta))));
        }
    }
    out.push(Check::bound(format!("geom.eta={}.subgroups-vs-expm", label), "one-parameter subgroups", worst, 1e-10));

    let pts = sample_points(seed, count, CHART_RADIUS);
    let (mut round, mut iso, mut sphere, mut amb, mut metric) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for p in &pts {
        let g = group_element(p, eta);
        iso = iso.max(g.isometry_defect());
        let q = chart_coords(&g)?;
        round = round.max(p.0.iter().zip(&q.0).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max));
        let [x0, x1, x2, ..] = p.0;
        let a = ambient_coords(x0, x1, x2, eta);
        sphere = sphere.max(a.pseudosphere_defect(eta).norm());
        let col = [g.m[(0, 0)], g.m[(1, 0)], g.m[(2, 0)], g.m[(3, 0)]];
        amb = amb.max(col.iter().zip(&a.0).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max));
        metric = metric.max(metric_residual([x0.re, x1.re, x2.re], eta, FD_STEP)?);
    }
    let chart = "group chart from one-parameter subgroups";
    out.push(Check::bound(format!("geom.eta={}.isometry", label), chart, iso, 1e-10));
    out.push(Check::bound(format!("geom.eta={}.chart-round-trip", label), chart, round, 1e-9));
    let anchor = "ambient and geodesic parallel coordinates";
    out.push(Check::bound(format!("geom.eta={}.pseudosphere", label), anchor, sphere, 1e-12));
    out.push(Check::bound(format!("geom.eta={}.ambient-is-orbit", label), anchor, amb, 1e-12));
    out.push(Check::bound(format!("geom.eta={}.metric", label), "metric in geodesic parallel coordinates", metric, tol.max(1e-8)));
    Ok(out)
}

/// The default `eta` values of the geometric suite: AdS, a smaller AdS curvature, dS and flat.
pub fn default_etas() -> [C; 4] {
    [c(1.0), c(0.4), C::new(0.0, 0.3), c(0.0)]
}

/// One row of the ambient-coordinate table.
#[derive(Clone, Debug, Serialize)]
pub struct AmbientRow {
    pub point: usize,
    pub x: [f64; 3],
    pub s: [[f64; 2]; 4],
    pub pseudosphere_defect: f64,
}

pub fn ambient_table(eta: C, seed: u64, count: usize) -> Vec<AmbientRow> {
    sample_points(seed, count, CHART_RADIUS)
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let a = ambient_coords(p.0[0], p.0[1], p.0[2], eta);
            AmbientRow {
                point: k,
                x: [p.0[0].re, p.0[1].re, p.0[2].re],
                s: a.0.map(|z| [z.re, z.im]),
                pseudosphere_defect: a.pseudosphere_defect(eta).norm(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn time_translation_subgroup_entries() {
        let eta = c(0.7);
        let x = c(0.3);
        let g = one_param_subgroup(P0, x, eta);
        assert!((g.m[(0, 0)] - (eta * x).cos()).norm() < 1e-15);
        assert!((g.m[(0, 1)] + eta * (eta * x).sin()).norm() < 1e-15);
        assert!((g.m[(1, 0)] - (eta * x).sin() / eta).norm() < 1e-15);
        assert_eq!(one_param_subgroup(P1, c(0.0), eta).m, Mat4::identity());
    }

    #[test]
    fn rotation_acts_on_space_block() {
        let m = generator_matrices(c(1.0))[J];
        assert_eq!(m[(3, 2)], c(1.0));
        assert_eq!(m[(2, 3)], c(-1.0));
        assert_eq!(m.iter().filter(|z| z.norm() > 0.0).count(), 2);
    }

    #[test]
    fn flat_metric_is_minkowski() {
        assert!(metric_residual([0.2, -0.1, 0.3], c(0.0), FD_STEP).unwrap() < 1e-9);
        assert!(metric_residual([0.2, -0.1, 0.3], C::new(0.0, 1.0), FD_STEP).unwrap() < 1e-8);
    }

    #[test]
    fn trivial_fields() {
        let p = ChartPoint::real([0.1, -0.2, 0.3, 0.05, -0.15, 0.4]);
        let mut e = [C::new(0.0, 0.0); 6];
        e[0] = c(1.0);
        assert_eq!(vector_field(Side::Right, P0, &p, c(1.0)), e);
        let mut e = [C::new(0.0, 0.0); 6];
        e[5] = c(1.0);
        assert_eq!(vector_field(Side::Left, J, &p, c(1.0)), e);
    }

    #[test]
    fn ambient_origin() {
        let a = ambient_coords(c(0.0), c(0.0), c(0.0), c(1.0));
        assert_eq!(a.0, [c(1.0), c(0.0), c(0.0), c(0.0)]);
        let a = ambient_coords(c(0.1), c(0.2), c(0.3), c(0.8));
        assert!((a.0[3] - (c(0.8) * 0.3).sinh() / 0.8).norm() < 1e-15);
    }
}

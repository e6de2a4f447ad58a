//! From `L_A` to the limit point.
//!
//! The characteristic polynomial is formed in the polygon's own scalar type
//! and converted to `f64` once. Its real roots come from the closed form on
//! the depressed cubic and are then polished by Newton steps. Each simple
//! real root yields an eigenvector by row reduction, and the limit is the
//! candidate whose projection lies in the convex hull of the polygon.
//!
//! The largest root is not assumed to be the right one. Whether the selected
//! root happens to be the largest is recorded in the result for reference.

use std::f64::consts::TAU;
use std::fmt;

use crate::collineation::{charpoly, Collineation, CubicPoly};
use crate::error::{Error, Result};
use crate::geom::{HomoVec, Mat3, Point2, Polygon, Scalar};
use crate::pentagram::{limit_by_iteration, IterationConfig};

/// Pivots below `PIVOT_REL_TOL · ‖M‖∞` count as zero in row reduction.
pub const PIVOT_REL_TOL: f64 = 1e-8;

const NEWTON_STEPS: usize = 2;

/// Real roots of a monic cubic, ascending and repeated by multiplicity.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicRoots {
    pub real: Vec<f64>,
    /// Set when two of the three roots are a complex-conjugate pair.
    pub complex_pair: bool,
}

impl CubicRoots {
    /// Roots with repeats removed.
    pub fn distinct(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for &r in &self.real {
            if out.last().is_none_or(|&l| !roots_coincide(l, r)) {
                out.push(r);
            }
        }
        out
    }
}

fn roots_coincide(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

fn newton_polish(p: &CubicPoly<f64>, mut x: f64) -> f64 {
    for _ in 0..NEWTON_STEPS {
        let d = p.derivative_at(x);
        let f = p.eval(&x);
        if d.abs() <= f64::EPSILON * (1.0 + x.abs()).powi(2) {
            break;
        }
        let next = x - f / d;
        // keep the closed-form value if the step makes things worse
        if p.eval(&next).abs() <= f.abs() {
            x = next;
        } else {
            break;
        }
    }
    x
}

/// All real roots of `λ³ + c2 λ² + c1 λ + c0`.
///
/// Substituting `λ = t − c2/3` gives `t³ + p t + q`. Three real roots use the
/// trigonometric form, one real root the hyperbolic (Cardano) form, and a
/// vanishing discriminant the double-root formulas. Every root is then
/// polished with Newton steps on the original cubic.
pub fn solve_cubic(poly: &CubicPoly<f64>) -> CubicRoots {
    let (a, b, c) = (poly.c2, poly.c1, poly.c0);
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

    let scale = p.abs().sqrt().max(q.abs().cbrt());
    let mut complex_pair = false;
    let ts: Vec<f64> = if scale <= 1e-12 * (1.0 + shift.abs()) {
        vec![0.0; 3]
    } else {
        let (pn, qn) = (p / (scale * scale), q / (scale * scale * scale));
        let disc = -(4.0 * pn * pn * pn + 27.0 * qn * qn);
        if disc.abs() <= 1e-12 {
            // double root; pn < 0 here
            let simple = 3.0 * qn / pn;
            let double = -1.5 * qn / pn;
            vec![simple * scale, double * scale, double * scale]
        } else if disc > 0.0 {
            let m = 2.0 * (-pn / 3.0).sqrt();
            let arg = (3.0 * qn / (pn * m)).clamp(-1.0, 1.0);
            let theta = arg.acos() / 3.0;
            (0..3).map(|k| m * (theta - TAU * k as f64 / 3.0).cos() * scale).collect()
        } else {
            complex_pair = true;
            let t = if pn < 0.0 {
                let m = (-pn / 3.0).sqrt();
                let arg = (-1.5 * qn.abs() / pn) / m;
                -2.0 * qn.signum() * m * (arg.acosh() / 3.0).cosh()
            } else if pn > 0.0 {
                let m = (pn / 3.0).sqrt();
                let arg = (1.5 * qn / pn) / m;
                -2.0 * m * (arg.asinh() / 3.0).sinh()
            } else {
                (-qn).cbrt()
            };
            vec![t * scale]
        }
    };

    let mut real: Vec<f64> = ts.into_iter().map(|t| newton_polish(poly, t - shift)).collect();
    real.sort_by(f64::total_cmp);
    CubicRoots { real, complex_pair }
}

/// Kernel vector of `M − λI` by Gaussian elimination with partial pivoting,
/// scaled to third coordinate 1.
pub fn eigenvector_for(m: &Mat3<f64>, lambda: f64) -> Result<HomoVec<f64>> {
    let tol = PIVOT_REL_TOL * m.norm_inf().max(f64::MIN_POSITIVE);
    let mut rows = m.sub(&Mat3::scalar(lambda)).rows;
    let mut pivots: Vec<usize> = Vec::new();
    let mut free: Vec<usize> = Vec::new();
    let mut smallest = f64::INFINITY;
    for col in 0..3 {
        let r = pivots.len();
        if r == 3 {
            break;
        }
        let best = (r..3)
            .max_by(|&i, &j| rows[i][col].abs().total_cmp(&rows[j][col].abs()))
            .expect("non-empty range");
        let piv = rows[best][col].abs();
        if piv <= tol {
            free.push(col);
            continue;
        }
        smallest = smallest.min(piv);
        rows.swap(r, best);
        for i in r + 1..3 {
            let f = rows[i][col] / rows[r][col];
            for k in col..3 {
                rows[i][k] -= f * rows[r][k];
            }
        }
        pivots.push(col);
    }
    match free.len() {
        0 => return Err(Error::NotAnEigenvalue { lambda, pivot: smallest }),
        1 => {}
        _ => return Err(Error::NonSimpleEigenvalue { lambda }),
    }
    let mut v = [0.0; 3];
    v[free[0]] = 1.0;
    for (r, &col) in pivots.iter().enumerate().rev() {
        let s: f64 = (col + 1..3).map(|k| rows[r][k] * v[k]).sum();
        v[col] = -s / rows[r][col];
    }
    let norm = v.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    if v[2].abs() <= 1e-12 * norm {
        return Err(Error::EigenvectorAtInfinity { lambda });
    }
    Ok(HomoVec::point(v[0] / v[2], v[1] / v[2], 1.0))
}

/// `‖M v − λ v‖∞`.
pub fn eigen_residual(m: &Mat3<f64>, lambda: f64, v: &HomoVec<f64>) -> f64 {
    m.mul_vec(v).sub(&v.scale(&lambda)).norm_inf()
}

/// `(X, Y)` as rational functions of the eigenvalue, obtained by solving the
/// first two rows of `(M − λI) [X Y 1]ᵀ = 0` with Cramer's rule:
///
/// ```text
/// X = (x1 λ + x0) / (λ² + d1 λ + d0),   Y = (y1 λ + y0) / (λ² + d1 λ + d0)
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm<S> {
    /// `[x1, x0]`.
    pub x_num: [S; 2],
    /// `[y1, y0]`.
    pub y_num: [S; 2],
    /// `[d1, d0]` of the monic quadratic denominator.
    pub den: [S; 2],
}

impl<S: Scalar> ClosedForm<S> {
    pub fn from_matrix(m: &Mat3<S>) -> Self {
        let f = |i: usize, j: usize| m.get(i, j).clone();
        Self {
            x_num: [f(0, 2), f(0, 1) * f(1, 2) - f(0, 2) * f(1, 1)],
            y_num: [f(1, 2), f(0, 2) * f(1, 0) - f(0, 0) * f(1, 2)],
            den: [-(f(0, 0) + f(1, 1)), f(0, 0) * f(1, 1) - f(0, 1) * f(1, 0)],
        }
    }

    /// Evaluates at `lambda`; `None` when the denominator vanishes.
    pub fn eval(&self, lambda: f64) -> Option<Point2<f64>> {
        let lin = |c: &[S; 2]| c[0].to_f64() * lambda + c[1].to_f64();
        let d = lambda * lambda + self.den[0].to_f64() * lambda + self.den[1].to_f64();
        if d == 0.0 {
            return None;
        }
        Some(Point2::new(lin(&self.x_num) / d, lin(&self.y_num) / d))
    }
}

impl<S: Scalar> fmt::Display for ClosedForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signed = |c: &S| {
            let sign = if c.is_negative() { '-' } else { '+' };
            format!("{sign} {}", c.abs())
        };
        let den = format!("λ^2 {}λ {}", signed(&self.den[0]), signed(&self.den[1]));
        let lin = |c: &[S; 2]| format!("({}λ {})", c[0], signed(&c[1]));
        write!(f, "X = {}/({den}), Y = {}/({den})", lin(&self.x_num), lin(&self.y_num))
    }
}

/// One eigenvalue considered during selection.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub eigenvalue: f64,
    pub eigenvector: Option<HomoVec<f64>>,
    pub point: Option<Point2<f64>>,
    pub residual: Option<f64>,
    pub in_hull: bool,
    /// Why no eigenvector was produced, if none was.
    pub failure: Option<Error>,
}

/// Cross-check against direct iteration of the map.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationCheck {
    pub point: Point2<f64>,
    /// Max-norm distance to the eigenvector limit.
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitResult<S> {
    pub limit: Point2<f64>,
    pub eigenvalue: f64,
    /// Real roots of the characteristic polynomial, ascending.
    pub eigenvalues: Vec<f64>,
    pub complex_pair: bool,
    pub matrix: Mat3<S>,
    pub charpoly: CubicPoly<S>,
    /// `|p(λ)|` evaluated in the polygon's scalar type at the selected root.
    pub charpoly_residual: f64,
    /// `‖L v − λ v‖∞` for the selected eigenvector scaled to `v.z = 1`.
    pub residual: f64,
    pub candidates: Vec<Candidate>,
    pub largest_root: bool,
    pub closed_form: ClosedForm<S>,
    pub iteration: Option<IterationCheck>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct LimitConfig {
    /// Run [`limit_by_iteration`] and report its distance from the result;
    /// also used to break ties between several in-hull candidates.
    pub cross_check: bool,
    pub iteration: IterationConfig,
}

/// `|p(λ)|` with the polynomial evaluated in `S` at the exact value of `λ`.
fn exact_residual<S: Scalar>(p: &CubicPoly<S>, lambda: f64) -> f64 {
    match S::from_f64_exact(lambda) {
        Some(x) => p.eval(&x).to_f64().abs(),
        None => f64::INFINITY,
    }
}

/// Limit point of the pentagram map on a convex polygon, via the eigenvectors
/// of `L_A`.
pub fn limit_point<S: Scalar>(a: &Polygon<S>, cfg: &LimitConfig) -> Result<LimitResult<S>> {
    if a.len() < 5 {
        return Err(Error::TooFewVertices { n: a.len(), min: 5 });
    }
    if !a.is_convex() {
        return Err(Error::NotConvex);
    }
    let l = Collineation::build(a)?;
    let poly = charpoly(&l.matrix);
    let roots = solve_cubic(&poly.to_f64());
    let m = l.matrix.to_f64();
    let hull = a.to_f64();

    let candidates: Vec<Candidate> = roots
        .distinct()
        .into_iter()
        .map(|lambda| match eigenvector_for(&m, lambda) {
            Ok(v) => {
                let point = Point2::new(v.a, v.b);
                let in_hull = hull.contains(&point).unwrap_or(false);
                Candidate {
                    eigenvalue: lambda,
                    residual: Some(eigen_residual(&m, lambda, &v)),
                    eigenvector: Some(v),
                    point: Some(point),
                    in_hull,
                    failure: None,
                }
            }
            Err(e) => Candidate {
                eigenvalue: lambda,
                eigenvector: None,
                point: None,
                residual: None,
                in_hull: false,
                failure: Some(e),
            },
        })
        .collect();

    let inside: Vec<&Candidate> = candidates.iter().filter(|c| c.in_hull).collect();
    let iterated = if cfg.cross_check {
        Some(limit_by_iteration(a, cfg.iteration)?)
    } else {
        None
    };
    let chosen = match (inside.len(), &iterated) {
        (0, _) => return Err(Error::NoCandidateInHull),
        (1, _) => inside[0],
        (count, None) => return Err(Error::AmbiguousSelection { count }),
        (_, Some(it)) => inside
            .iter()
            .min_by(|x, y| {
                let dx = x.point.as_ref().map_or(f64::INFINITY, |p| p.dist(it));
                let dy = y.point.as_ref().map_or(f64::INFINITY, |p| p.dist(it));
                dx.total_cmp(&dy)
            })
            .copied()
            .expect("at least two candidates"),
    };

    let limit = chosen.point.clone().expect("in-hull candidate has a point");
    let lambda = chosen.eigenvalue;
    let largest = roots.real.last().copied().unwrap_or(lambda);
    let iteration = iterated.map(|p| IterationCheck {
        deviation: (p.x - limit.x).abs().max((p.y - limit.y).abs()),
        point: p,
    });
    Ok(LimitResult {
        limit,
        eigenvalue: lambda,
        eigenvalues: roots.real.clone(),
        complex_pair: roots.complex_pair,
        charpoly_residual: exact_residual(&poly, lambda),
        residual: chosen.residual.unwrap_or(f64::INFINITY),
        largest_root: roots_coincide(lambda, largest),
        closed_form: ClosedForm::from_matrix(&l.matrix),
        matrix: l.matrix,
        charpoly: poly,
        candidates,
        iteration,
    })
}

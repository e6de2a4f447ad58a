//! The conserved linear map `L_A` of a polygon.
//!
//! For lifts `u_1, …, u_n` of the vertices,
//!
//! ```text
//! L_A(v) = n v - Σ_j |u_{j-1}, v, u_{j+1}| / |u_{j-1}, u_j, u_{j+1}| · u_j
//! ```
//!
//! The value does not depend on how each `u_j` is scaled, so every builder
//! here accepts arbitrary homogeneous triples (points or lines) rather than
//! only `(x, y, 1)` lifts.
//!
//! Three evaluation routes are kept side by side and cross-checked in tests:
//! [`la_from_lifts`] assembles entries column by column from the basis
//! vectors, [`apply_direct`] evaluates the defining sum, and
//! [`apply_cramer`] evaluates the rearranged two-neighbour form.

use std::fmt;

use crate::error::{Error, Result};
use crate::geom::scalar::from_usize;
use crate::geom::{det3, lift, project_eps, HomoVec, Mat3, Point2, Polygon, Role, Scalar};
use crate::pentagram::{alpha1, alpha2, iterate, pentagram};

/// `L_A` together with the size of the polygon it came from.
#[derive(Clone, Debug, PartialEq)]
pub struct Collineation<S> {
    pub matrix: Mat3<S>,
    pub n: usize,
}

/// Monic cubic `λ³ + c2 λ² + c1 λ + c0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicPoly<S> {
    pub c2: S,
    pub c1: S,
    pub c0: S,
}

impl<S: Scalar> CubicPoly<S> {
    pub fn new(c2: S, c1: S, c0: S) -> Self {
        Self { c2, c1, c0 }
    }

    pub fn from_ints(c2: i64, c1: i64, c0: i64) -> Self {
        Self::new(S::from_i64(c2), S::from_i64(c1), S::from_i64(c0))
    }

    /// `[c2, c1, c0]`.
    pub fn coefficients(&self) -> [S; 3] {
        [self.c2.clone(), self.c1.clone(), self.c0.clone()]
    }

    pub fn eval(&self, x: &S) -> S {
        ((x.clone() + self.c2.clone()) * x.clone() + self.c1.clone()) * x.clone() + self.c0.clone()
    }

    pub fn to_f64(&self) -> CubicPoly<f64> {
        CubicPoly::new(self.c2.to_f64(), self.c1.to_f64(), self.c0.to_f64())
    }
}

impl CubicPoly<f64> {
    pub fn derivative_at(&self, x: f64) -> f64 {
        (3.0 * x + 2.0 * self.c2) * x + self.c1
    }
}

impl<S: Scalar> fmt::Display for CubicPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ^3")?;
        for (c, mono) in [(&self.c2, "λ^2"), (&self.c1, "λ"), (&self.c0, "")] {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, " {sign} {}{mono}", c.abs())?;
        }
        Ok(())
    }
}

fn wrap(j: isize, n: usize) -> usize {
    j.rem_euclid(n as isize) as usize
}

/// `|u_{j-1}, u_j, u_{j+1}|` for every `j`, failing on the first that vanishes.
fn triple_dets<S: Scalar>(u: &[HomoVec<S>], eps: f64) -> Result<Vec<S>> {
    let n = u.len();
    if n < 3 {
        return Err(Error::TooFewVertices { n, min: 3 });
    }
    (0..n)
        .map(|j| {
            let d = det3(&u[wrap(j as isize - 1, n)], &u[j], &u[(j + 1) % n]);
            if d.is_negligible(eps) {
                Err(Error::DegenerateTriple { index: j })
            } else {
                Ok(d)
            }
        })
        .collect()
}

/// Matrix of `L` for arbitrary lifts, entry by entry:
///
/// ```text
/// φ_ij = n δ_ij - Σ_k (a_{j-1,k-1} a_{j+1,k+1} - a_{j-1,k+1} a_{j+1,k-1}) a_{i,k} / D_k
/// ```
///
/// where `a_{i,k}` is coordinate `i` of `u_k` (row index taken mod 3) and
/// `D_k = |u_{k-1}, u_k, u_{k+1}|`. The numerator is `|u_{k-1}, e_j, u_{k+1}|`.
pub fn la_from_lifts<S: Scalar>(u: &[HomoVec<S>], eps: f64) -> Result<Mat3<S>> {
    let n = u.len();
    let dets = triple_dets(u, eps)?;
    let a = |i: usize, k: usize| u[k].component(i % 3).clone();
    let nn: S = from_usize(n);
    let mut m = Mat3::scalar(nn);
    for k in 0..n {
        let prev = wrap(k as isize - 1, n);
        let next = (k + 1) % n;
        for j in 0..3 {
            let (jm, jp) = ((j + 2) % 3, (j + 1) % 3);
            let minor = a(jm, prev) * a(jp, next) - a(jm, next) * a(jp, prev);
            let w = minor / dets[k].clone();
            for i in 0..3 {
                m.rows[i][j] = m.rows[i][j].clone() - w.clone() * a(i, k);
            }
        }
    }
    Ok(m)
}

/// Evaluates the defining sum at `v` without forming a matrix.
pub fn apply_direct<S: Scalar>(u: &[HomoVec<S>], v: &HomoVec<S>, eps: f64) -> Result<HomoVec<S>> {
    let n = u.len();
    let dets = triple_dets(u, eps)?;
    let mut out = v.scale(&from_usize(n));
    for j in 0..n {
        let prev = &u[wrap(j as isize - 1, n)];
        let next = &u[(j + 1) % n];
        let w = det3(prev, v, next) / dets[j].clone();
        out = out.sub(&u[j].scale(&w));
    }
    Ok(out)
}

/// Evaluates the rearranged form
///
/// ```text
/// L(v) = Σ_j ( |v, u_j, u_{j+1}| u_{j-1} + |u_{j-1}, u_j, v| u_{j+1} ) / |u_{j-1}, u_j, u_{j+1}|
/// ```
///
/// obtained by eliminating `n v` with Cramer's rule.
pub fn apply_cramer<S: Scalar>(u: &[HomoVec<S>], v: &HomoVec<S>, eps: f64) -> Result<HomoVec<S>> {
    let n = u.len();
    let dets = triple_dets(u, eps)?;
    let zero = S::zero();
    let mut out = HomoVec::new(zero.clone(), zero.clone(), zero, v.role);
    for j in 0..n {
        let prev = &u[wrap(j as isize - 1, n)];
        let next = &u[(j + 1) % n];
        let a = det3(v, &u[j], next) / dets[j].clone();
        let b = det3(prev, &u[j], v) / dets[j].clone();
        out = out.add(&prev.scale(&a)).add(&next.scale(&b));
    }
    Ok(out)
}

/// Coefficients `w_j` with `L(v) = Σ_j w_j u_j`, grouped per vertex:
///
/// ```text
/// w_j = |u_{j-2}, u_{j-1}, v| / |u_{j-2}, u_{j-1}, u_j| + |v, u_{j+1}, u_{j+2}| / |u_j, u_{j+1}, u_{j+2}|
/// ```
///
/// For a convex polygon, lifts on `z = 1` and `v` over a point of the hull,
/// every `w_j` is strictly positive.
pub fn vertex_weights<S: Scalar>(u: &[HomoVec<S>], v: &HomoVec<S>, eps: f64) -> Result<Vec<S>> {
    let n = u.len();
    let dets = triple_dets(u, eps)?;
    let at = |j: isize| &u[wrap(j, n)];
    Ok((0..n as isize)
        .map(|j| {
            let left = det3(at(j - 2), at(j - 1), v) / dets[wrap(j - 1, n)].clone();
            let right = det3(v, at(j + 1), at(j + 2)) / dets[wrap(j + 1, n)].clone();
            left + right
        })
        .collect())
}

impl<S: Scalar> Collineation<S> {
    /// `L_A` for a polygon, using lifts `(x, y, 1)`.
    pub fn build(a: &Polygon<S>) -> Result<Self> {
        Self::from_lifts(&a.lifts(), a.epsilon())
    }

    pub fn from_lifts(u: &[HomoVec<S>], eps: f64) -> Result<Self> {
        Ok(Self { matrix: la_from_lifts(u, eps)?, n: u.len() })
    }

    pub fn apply(&self, v: &HomoVec<S>) -> HomoVec<S> {
        self.matrix.mul_vec(v)
    }

    pub fn trace(&self) -> S {
        self.matrix.trace()
    }

    /// `det(λI − M)`.
    pub fn charpoly(&self) -> CubicPoly<S> {
        charpoly(&self.matrix)
    }

    /// `ψ M ψ⁻¹`; for `L = L_A` this is `L_{ψ(A)}`.
    pub fn conjugate(&self, psi: &Mat3<S>, eps: f64) -> Result<Self> {
        let inv = psi.inverse(eps)?;
        Ok(Self { matrix: psi.mul(&self.matrix).mul(&inv), n: self.n })
    }

    /// `M − 3I`.
    pub fn shifted_by_three(&self) -> Mat3<S> {
        self.matrix.sub(&Mat3::scalar(S::from_i64(3)))
    }

    pub fn to_f64(&self) -> Collineation<f64> {
        Collineation { matrix: self.matrix.to_f64(), n: self.n }
    }
}

/// `det(λI − M) = λ³ − tr(M) λ² + (Σ principal 2×2 minors) λ − det(M)`.
pub fn charpoly<S: Scalar>(m: &Mat3<S>) -> CubicPoly<S> {
    CubicPoly::new(-m.trace(), m.principal_minor_sum(), -m.det())
}

/// `L_A` and `L_{T(A)}` side by side.
#[derive(Clone, Debug, PartialEq)]
pub struct ConservationReport<S> {
    pub before: Mat3<S>,
    pub after: Mat3<S>,
    pub max_deviation: f64,
    /// Exact equality for rationals; deviation within the polygon's
    /// tolerance for floats.
    pub holds: bool,
}

impl<S: Scalar> ConservationReport<S> {
    pub fn from_matrices(before: Mat3<S>, after: Mat3<S>, eps: f64) -> Self {
        let max_deviation = before.max_abs_diff(&after);
        let holds = if S::is_exact() { before == after } else { max_deviation < eps };
        Self { before, after, max_deviation, holds }
    }
}

/// Builds `L_A` and `L_{T(A)}` independently and compares them.
pub fn verify_conservation<S: Scalar>(a: &Polygon<S>) -> Result<ConservationReport<S>> {
    let before = Collineation::build(a)?.matrix;
    let image = pentagram(a)?;
    let after = Collineation::build(&image)?.matrix;
    Ok(ConservationReport::from_matrices(before, after, a.epsilon()))
}

/// Outcome of comparing `(L_A − 3I)(A)` with `T(A)` (pentagons) or
/// `T²(A)` (hexagons) as point sets.
#[derive(Clone, Debug, PartialEq)]
pub struct SmallNReport<S> {
    /// Number of pentagram steps the target is away from `A`.
    pub steps: usize,
    /// Projected images of the vertices of `A` under `L_A − 3I`.
    pub images: Vec<Point2<S>>,
    pub target: Polygon<S>,
    /// `correspondence[i] = k` when image `i` equals target vertex `k`.
    pub correspondence: Vec<Option<usize>>,
    /// Constant `s` with `correspondence[i] = i + s (mod n)`, when one exists.
    pub shift: Option<usize>,
    pub matched: bool,
}

/// Checks that `L_A − 3I` carries the vertex set of a pentagon onto that of
/// `T(A)`, or of a hexagon onto that of `T²(A)`.
///
/// No index correspondence is assumed; the matching found is reported.
pub fn verify_small_n<S: Scalar>(a: &Polygon<S>) -> Result<SmallNReport<S>> {
    let n = a.len();
    let steps = match n {
        5 => 1,
        6 => 2,
        _ => return Err(Error::UnsupportedSize { n, expected: "a pentagon or hexagon" }),
    };
    let eps = a.epsilon();
    let l = Collineation::build(a)?;
    let m = l.shifted_by_three();
    let images = a
        .lifts()
        .iter()
        .map(|u| project_eps(&m.mul_vec(u), eps))
        .collect::<Result<Vec<_>>>()?;
    let target = iterate(a, steps)?;
    let correspondence: Vec<Option<usize>> = images
        .iter()
        .map(|p| target.vertices().iter().position(|q| p.coincides(q, eps)))
        .collect();
    let mut hit = vec![false; n];
    for k in correspondence.iter().flatten() {
        hit[*k] = true;
    }
    let matched = hit.iter().all(|&h| h) && correspondence.iter().all(Option::is_some);
    let shift = if matched {
        let s = (correspondence[0].unwrap() + n) % n;
        (0..n).all(|i| correspondence[i] == Some((i + s) % n)).then_some(s)
    } else {
        None
    };
    Ok(SmallNReport { steps, images, target, correspondence, shift, matched })
}

/// Transposition check of `L` for the two dual sequences.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityReport<S> {
    pub la: Mat3<S>,
    /// `L` of the line sequence `alpha1(A)`.
    pub alpha1: Mat3<S>,
    /// `L` of the line sequence `alpha2(A)`.
    pub alpha2: Mat3<S>,
    pub alpha1_deviation: f64,
    pub alpha2_deviation: f64,
    pub holds: bool,
}

/// Builds `L` for `alpha1(A)` and `alpha2(A)`, treating each line's
/// coefficient triple as a vector with the standard determinant, and compares
/// both with the transpose of `L_A`.
pub fn verify_duality<S: Scalar>(a: &Polygon<S>) -> Result<DualityReport<S>> {
    let eps = a.epsilon();
    let u = a.lifts();
    let la = la_from_lifts(&u, eps)?;
    let lt = la.transpose();
    let l1 = la_from_lifts(&alpha1(&u, eps)?, eps)?;
    let l2 = la_from_lifts(&alpha2(&u, eps)?, eps)?;
    let (d1, d2) = (l1.max_abs_diff(&lt), l2.max_abs_diff(&lt));
    let holds = if S::is_exact() { l1 == lt && l2 == lt } else { d1 < eps && d2 < eps };
    Ok(DualityReport { la, alpha1: l1, alpha2: l2, alpha1_deviation: d1, alpha2_deviation: d2, holds })
}

/// Result of pushing one hull point through `L_A`.
#[derive(Clone, Debug, PartialEq)]
pub struct HullImage<S> {
    pub point: Point2<S>,
    pub weights: Vec<S>,
    pub image: Point2<S>,
    /// All weights strictly positive.
    pub positive: bool,
    /// `Σ w_j u_j` agrees with `L_A(v)`.
    pub consistent: bool,
    pub image_in_hull: bool,
}

/// Maps a point of `conv(A)` through `L_A` and reports the vertex weights of
/// the image together with its hull membership.
pub fn hull_image<S: Scalar>(a: &Polygon<S>, l: &Collineation<S>, q: &Point2<S>) -> Result<HullImage<S>> {
    let eps = a.epsilon();
    let u = a.lifts();
    let v = lift(q);
    let weights = vertex_weights(&u, &v, eps)?;
    let positive = weights.iter().all(|w| w.sign(eps) > 0);
    let zero = S::zero();
    let combo = weights
        .iter()
        .zip(&u)
        .fold(HomoVec::new(zero.clone(), zero.clone(), zero, Role::Point), |acc, (w, uj)| {
            acc.add(&uj.scale(w))
        });
    let lv = l.apply(&v);
    let consistent = combo.sub(&lv).is_zero_within(eps);
    let image = project_eps(&lv, eps)?;
    let image_in_hull = a.contains(&image)?;
    Ok(HullImage { point: q.clone(), weights, image, positive, consistent, image_in_hull })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{ratio, Rational};
    use num_traits::Zero;

    type Q = Rational;

    fn heptagon() -> Polygon<Q> {
        Polygon::sample_heptagon()
    }

    fn sample_hexagon() -> Polygon<Q> {
        Polygon::from_ints(&[(0, 0), (0, 2), (3, 2), (3, 3), (5, 3), (5, 0)]).unwrap()
    }

    fn hv(a: i64, b: i64, c: i64) -> HomoVec<Q> {
        HomoVec::point(Q::from_i64(a), Q::from_i64(b), Q::from_i64(c))
    }

    #[test]
    fn heptagon_matrix_matches_worked_example() {
        let l = Collineation::build(&heptagon()).unwrap();
        assert_eq!(l.matrix, Mat3::from_ints([[-6, -4, 49], [-1, -7, 51], [-1, -3, 27]]));
        assert_eq!(l.n, 7);
        assert_eq!(l.trace(), Q::from_i64(14));
    }

    #[test]
    fn axis_aligned_hexagon_matrix() {
        let l = Collineation::build(&sample_hexagon()).unwrap();
        assert_eq!(l.matrix, Mat3::from_ints([[3, 0, 8], [0, 3, 5], [0, 0, 6]]));
        assert_eq!(l.trace(), Q::from_i64(12));
    }

    #[test]
    fn translation_conjugates() {
        let h = heptagon();
        let psi = Mat3::<Q>::from_ints([[1, 0, 1], [0, 1, 0], [0, 0, 1]]);
        let moved = h.transform(&psi).unwrap();
        let direct = Collineation::build(&moved).unwrap();
        let conj = Collineation::build(&h).unwrap().conjugate(&psi, 0.0).unwrap();
        assert_eq!(direct, conj);
    }

    #[test]
    fn apply_examples() {
        let h = heptagon();
        let l = Collineation::build(&h).unwrap();
        assert_eq!(l.apply(&hv(0, 0, 1)), hv(49, 51, 27));
        assert_eq!(l.apply(&hv(0, 0, 0)), hv(0, 0, 0));
        let u = h.lifts();
        for v in [hv(0, 0, 1), hv(2, -3, 5), hv(7, 1, 0)] {
            assert_eq!(apply_direct(&u, &v, 0.0).unwrap(), l.apply(&v));
            assert_eq!(apply_cramer(&u, &v, 0.0).unwrap(), l.apply(&v));
        }
        let lf = l.to_f64();
        let p = HomoVec::point(1.609, 1.838, 1.0);
        let img = lf.apply(&p);
        let k = img.c;
        assert!((img.a / k - p.a).abs() < 1e-2 && (img.b / k - p.b).abs() < 1e-2);
    }

    #[test]
    fn charpoly_examples() {
        let l = Collineation::build(&heptagon()).unwrap();
        assert_eq!(l.charpoly(), CubicPoly::from_ints(-14, -111, -116));
        assert_eq!(l.charpoly().to_string(), "λ^3 - 14λ^2 - 111λ - 116");
        assert_eq!(charpoly(&Mat3::<Q>::identity()), CubicPoly::from_ints(-3, 3, -1));
        // (λ-3)²(λ-6) = λ³ - 12λ² + 45λ - 54
        let tri = Mat3::<Q>::from_ints([[3, 0, 8], [0, 3, 5], [0, 0, 6]]);
        assert_eq!(charpoly(&tri), CubicPoly::from_ints(-12, 45, -54));
    }

    #[test]
    fn charpoly_vanishes_at_eigenvalues_of_triangular() {
        let tri = Mat3::<Q>::from_ints([[3, 0, 8], [0, 3, 5], [0, 0, 6]]);
        let p = charpoly(&tri);
        for r in [3, 6] {
            assert!(p.eval(&Q::from_i64(r)).is_zero());
        }
    }

    #[test]
    fn conjugate_by_identity_and_singular() {
        let l = Collineation::build(&heptagon()).unwrap();
        assert_eq!(l.conjugate(&Mat3::identity(), 0.0).unwrap(), l);
        let sing = Mat3::<Q>::from_ints([[1, 2, 3], [2, 4, 6], [1, 1, 1]]);
        assert_eq!(l.conjugate(&sing, 0.0), Err(Error::SingularTransform));
    }

    #[test]
    fn degenerate_triple_named() {
        let p = Polygon::<Q>::from_ints(&[(0, 0), (1, 0), (2, 0), (2, 2), (0, 3)]).unwrap();
        assert_eq!(Collineation::build(&p), Err(Error::DegenerateTriple { index: 1 }));
    }

    #[test]
    fn conservation_on_heptagon() {
        let r = verify_conservation(&heptagon()).unwrap();
        assert!(r.holds);
        assert_eq!(r.max_deviation, 0.0);
        assert_eq!(r.before, r.after);
    }

    #[test]
    fn conservation_float_mode() {
        let pts = [(1.0, 0.1), (0.4, 1.1), (-0.9, 0.6), (-0.8, -0.7), (0.5, -1.0)];
        let p = Polygon::from_f64(&pts).unwrap();
        let r = verify_conservation(&p).unwrap();
        assert!(r.holds && r.max_deviation < 1e-9, "{}", r.max_deviation);
    }

    #[test]
    fn small_n_regular_pentagon() {
        let pts: Vec<(f64, f64)> = (0..5)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / 5.0;
                (t.cos(), t.sin())
            })
            .collect();
        let r = verify_small_n(&Polygon::from_f64(&pts).unwrap()).unwrap();
        assert!(r.matched, "{r:?}");
        assert_eq!(r.steps, 1);
        assert!(r.shift.is_some());
    }

    #[test]
    fn small_n_exact_pentagon_and_hexagon() {
        let p = Polygon::<Q>::from_ints(&[(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)]).unwrap();
        let r = verify_small_n(&p).unwrap();
        assert!(r.matched, "{r:?}");
        let hx = Polygon::<Q>::from_ints(&[(0, 0), (4, -1), (7, 2), (6, 6), (2, 7), (-1, 3)]).unwrap();
        let r = verify_small_n(&hx).unwrap();
        assert!(r.matched, "{r:?}");
        assert_eq!(r.steps, 2);
        assert!(matches!(verify_small_n(&heptagon()), Err(Error::UnsupportedSize { n: 7, .. })));
    }

    #[test]
    fn duality_transposes() {
        let r = verify_duality(&heptagon()).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.alpha2, r.la.transpose());
    }

    #[test]
    fn hull_weights_positive_inside() {
        let h = heptagon();
        let l = Collineation::build(&h).unwrap();
        for q in [
            Point2::new(ratio(3, 2), ratio(3, 2)),
            Point2::from_ints(2, 0),
            Point2::new(ratio(5, 2), ratio(1, 2)),
        ] {
            let r = hull_image(&h, &l, &q).unwrap();
            assert!(r.positive && r.consistent && r.image_in_hull, "{r:?}");
        }
    }

    #[test]
    fn lift_scaling_is_irrelevant() {
        let h = heptagon();
        let scaled: Vec<_> = h
            .lifts()
            .iter()
            .enumerate()
            .map(|(k, u)| u.scale(&ratio(k as i64 * 3 - 7, 2 + k as i64)))
            .collect();
        assert_eq!(la_from_lifts(&scaled, 0.0).unwrap(), Collineation::build(&h).unwrap().matrix);
    }
}

//! The pentagram map, its two duality factors, its inverse, and iteration.
//!
//! Labeling convention: for a polygon `A`, the image `B = T(A)` has
//!
//! ```text
//! B_i = (A_{i-1} A_{i+1}) ∩ (A_i A_{i+2})
//! ```
//!
//! With the factors indexed as in [`alpha1`] and [`alpha2`], `alpha1 ∘ alpha2`
//! reproduces this labeling with no shift. The other compositions relabel:
//! `alpha1 ∘ alpha1` advances indices by [`ALPHA1_SQUARED_SHIFT`],
//! `alpha2 ∘ alpha2` is the identity, and `alpha2 ∘ alpha1` equals the inverse
//! map advanced by [`INVERSE_SHIFT`]. [`pentagram_inverse`] undoes that shift,
//! so `pentagram_inverse(pentagram(A)) == A` label for label.

use crate::error::{Error, Result};
use crate::geom::{join_eps, lift, meet_eps, project_eps, HomoVec, Point2, Polygon, Role, Scalar};

/// `alpha1(alpha1(A))[i]` is `A[i + ALPHA1_SQUARED_SHIFT]`.
pub const ALPHA1_SQUARED_SHIFT: usize = 1;

/// `alpha2(alpha1(B))[i]` is `T⁻¹(B)[i + INVERSE_SHIFT]`.
pub const INVERSE_SHIFT: usize = 1;

/// Join for point sequences, meet for line sequences.
fn connect<S: Scalar>(p: &HomoVec<S>, q: &HomoVec<S>, eps: f64) -> Result<HomoVec<S>> {
    match p.role {
        Role::Point => join_eps(p, q, eps),
        Role::Line => meet_eps(p, q, eps),
    }
}

/// `(A_0 A_1, A_1 A_2, …, A_{n-1} A_0)`; applied to lines it intersects
/// consecutive entries instead.
pub fn alpha1<S: Scalar>(seq: &[HomoVec<S>], eps: f64) -> Result<Vec<HomoVec<S>>> {
    let n = seq.len();
    if n < 3 {
        return Err(Error::TooFewVertices { n, min: 3 });
    }
    (0..n).map(|j| connect(&seq[j], &seq[(j + 1) % n], eps)).collect()
}

/// `(A_{n-1} A_1, A_0 A_2, …, A_{n-2} A_0)`: entry `j` connects the two
/// neighbours of entry `j`.
pub fn alpha2<S: Scalar>(seq: &[HomoVec<S>], eps: f64) -> Result<Vec<HomoVec<S>>> {
    let n = seq.len();
    if n < 4 {
        // for a triangle the second neighbours are first neighbours
        return Err(Error::TooFewVertices { n, min: 4 });
    }
    (0..n).map(|j| connect(&seq[(j + n - 1) % n], &seq[(j + 1) % n], eps)).collect()
}

fn to_polygon<S: Scalar>(points: &[HomoVec<S>], eps: f64) -> Result<Polygon<S>> {
    let vertices = points
        .iter()
        .map(|p| project_eps(p, eps))
        .collect::<Result<Vec<Point2<S>>>>()?;
    Polygon::with_epsilon(vertices, eps).map_err(|e| match e {
        Error::CoincidentVertices { index } => Error::DegenerateOutput { index },
        e => e,
    })
}

fn check_input<S: Scalar>(a: &Polygon<S>) -> Result<()> {
    if a.len() < 4 {
        return Err(Error::TooFewVertices { n: a.len(), min: 4 });
    }
    if let Some(index) = a.first_degenerate_triple() {
        return Err(Error::DegenerateTriple { index });
    }
    Ok(())
}

/// One step of the pentagram map.
///
/// A quadrilateral is accepted but always fails with
/// [`Error::DegenerateOutput`], since its two shortest diagonals are its two
/// diagonals and all four image vertices coincide.
pub fn pentagram<S: Scalar>(a: &Polygon<S>) -> Result<Polygon<S>> {
    check_input(a)?;
    let eps = a.epsilon();
    let diagonals = alpha2(&a.lifts(), eps)?;
    let image = alpha1(&diagonals, eps)?;
    to_polygon(&image, eps)
}

/// Inverse of [`pentagram`] with matching labels.
pub fn pentagram_inverse<S: Scalar>(b: &Polygon<S>) -> Result<Polygon<S>> {
    check_input(b)?;
    let eps = b.epsilon();
    let sides = alpha1(&b.lifts(), eps)?;
    let shifted = alpha2(&sides, eps)?;
    let n = shifted.len();
    let image: Vec<_> = (0..n).map(|i| shifted[(i + n - INVERSE_SHIFT) % n].clone()).collect();
    to_polygon(&image, eps)
}

/// `T^k(A)`; `k = 0` returns a copy of `A`.
pub fn iterate<S: Scalar>(a: &Polygon<S>, k: usize) -> Result<Polygon<S>> {
    let mut cur = a.clone();
    for step in 1..=k {
        cur = pentagram(&cur).map_err(|e| e.at_step(step))?;
    }
    Ok(cur)
}

/// `[A, T(A), …, T^k(A)]`.
pub fn orbit<S: Scalar>(a: &Polygon<S>, k: usize) -> Result<Vec<Polygon<S>>> {
    let mut out = Vec::with_capacity(k + 1);
    out.push(a.clone());
    for step in 1..=k {
        let next = pentagram(&out[step - 1]).map_err(|e| e.at_step(step))?;
        out.push(next);
    }
    Ok(out)
}

/// Settings for [`limit_by_iteration`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterationConfig {
    /// Stop once the vertex set has diameter below this.
    pub tol: f64,
    pub max_steps: usize,
    /// Steps taken in the input's own scalar type before switching to `f64`.
    pub exact_steps: usize,
}

impl Default for IterationConfig {
    fn default() -> Self {
        Self { tol: 1e-9, max_steps: 10_000, exact_steps: 0 }
    }
}

impl IterationConfig {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }
}

/// Limit point by brute-force iteration of the map.
///
/// Iterates until the vertex set has diameter below `cfg.tol` and returns the
/// vertex centroid of the last iterate. The limit lies in the hull of every
/// iterate, so the answer is within `tol` of it.
///
/// Float iterates are renormalized after every step by an affine map that
/// sends the vertex centroid to the origin and the vertex covariance to the
/// identity; the accumulated affine map is tracked separately. The map
/// commutes with affine maps, so this only changes rounding. A similarity
/// would not be enough: near the limit the iterates flatten along one
/// direction and would trip the absolute degeneracy tolerance.
pub fn limit_by_iteration<S: Scalar>(a: &Polygon<S>, cfg: IterationConfig) -> Result<Point2<f64>> {
    if a.len() < 5 {
        return Err(Error::TooFewVertices { n: a.len(), min: 5 });
    }
    if !a.is_convex() {
        return Err(Error::NotConvex);
    }
    let mut step = 0;
    let mut exact = a.clone();
    while step < cfg.exact_steps.min(cfg.max_steps) {
        if exact.diameter() < cfg.tol {
            return Ok(exact.centroid().to_f64());
        }
        step += 1;
        exact = pentagram(&exact).map_err(|e| e.at_step(step))?;
    }

    let mut poly = exact.to_f64();
    // true coordinates are `frame * (x, y, 1)`
    let mut frame = Affine::IDENTITY;
    loop {
        let actual: Vec<Point2<f64>> = poly.vertices().iter().map(|p| frame.apply(p)).collect();
        if diameter(&actual) < cfg.tol {
            let n = actual.len() as f64;
            let (x, y) = actual.iter().fold((0.0, 0.0), |(x, y), p| (x + p.x, y + p.y));
            return Ok(Point2::new(x / n, y / n));
        }
        if step >= cfg.max_steps {
            return Err(Error::IterationLimitExceeded { steps: step });
        }
        let whiten = Affine::whitening(poly.vertices()).ok_or_else(|| {
            let index = poly.first_degenerate_triple().unwrap_or(0);
            Error::DegenerateTriple { index }.at_step(step)
        })?;
        let unit = Polygon::with_epsilon(
            poly.vertices().iter().map(|p| whiten.forward(p)).collect(),
            poly.epsilon(),
        )?;
        frame = frame.compose(&whiten.inverse);
        step += 1;
        poly = pentagram(&unit).map_err(|e| e.at_step(step))?;
    }
}

fn diameter(points: &[Point2<f64>]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            d = d.max(p.dist(q));
        }
    }
    d
}

/// `p ↦ (m00 x + m01 y + tx, m10 x + m11 y + ty)`.
#[derive(Clone, Copy, Debug)]
struct Affine {
    m: [[f64; 2]; 2],
    t: [f64; 2],
}

/// A whitening map together with its inverse.
struct Whitening {
    forward: Affine,
    inverse: Affine,
}

impl Whitening {
    fn forward(&self, p: &Point2<f64>) -> Point2<f64> {
        self.forward.apply(p)
    }
}

impl Affine {
    const IDENTITY: Self = Self { m: [[1.0, 0.0], [0.0, 1.0]], t: [0.0, 0.0] };

    fn apply(&self, p: &Point2<f64>) -> Point2<f64> {
        let [[a, b], [c, d]] = self.m;
        Point2::new(a * p.x + b * p.y + self.t[0], c * p.x + d * p.y + self.t[1])
    }

    /// `self ∘ other`.
    fn compose(&self, other: &Self) -> Self {
        let [[a, b], [c, d]] = self.m;
        let [[e, f], [g, h]] = other.m;
        let t = self.apply(&Point2::new(other.t[0], other.t[1]));
        Self { m: [[a * e + b * g, a * f + b * h], [c * e + d * g, c * f + d * h]], t: [t.x, t.y] }
    }

    /// Cholesky factor `L` of the vertex covariance: `inverse(v) = L v + c`
    /// and `forward = inverse⁻¹`. `None` if the vertices are (numerically)
    /// collinear.
    fn whitening(vertices: &[Point2<f64>]) -> Option<Whitening> {
        let n = vertices.len() as f64;
        let (cx, cy) = vertices.iter().fold((0.0, 0.0), |(x, y), p| (x + p.x, y + p.y));
        let (cx, cy) = (cx / n, cy / n);
        let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
        for p in vertices {
            let (dx, dy) = (p.x - cx, p.y - cy);
            sxx += dx * dx;
            sxy += dx * dy;
            syy += dy * dy;
        }
        let (sxx, sxy, syy) = (sxx / n, sxy / n, syy / n);
        let l00 = sxx.sqrt();
        if l00.is_nan() || l00 <= 0.0 {
            return None;
        }
        let l10 = sxy / l00;
        let rest = syy - l10 * l10;
        if rest.is_nan() || rest <= f64::EPSILON * syy.max(sxx) {
            return None;
        }
        let l11 = rest.sqrt();
        let inverse = Affine { m: [[l00, 0.0], [l10, l11]], t: [cx, cy] };
        let inv = [[1.0 / l00, 0.0], [-l10 / (l00 * l11), 1.0 / l11]];
        let forward = Affine {
            m: inv,
            t: [-(inv[0][0] * cx), -(inv[1][0] * cx + inv[1][1] * cy)],
        };
        Some(Whitening { forward, inverse })
    }
}

/// `true` when both polygons have the same vertices in the same cyclic order,
/// allowing any rotation of the labels.
pub fn same_cyclic_vertices<S: Scalar>(a: &Polygon<S>, b: &Polygon<S>, eps: f64) -> bool {
    a.cyclic_shift_to(b, eps).is_some()
}

/// Checks that every vertex of a polygon and of its pentagram image satisfy
/// `B_i ∈ A_{i-1}A_{i+1} ∩ A_iA_{i+2}`; used by tests of the labeling.
pub fn is_pentagram_image<S: Scalar>(a: &Polygon<S>, b: &Polygon<S>, eps: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len() as isize;
    (0..n).all(|i| {
        let p = lift(b.vertex(i));
        let on = |x: isize, y: isize| {
            crate::geom::det3(&lift(a.vertex(x)), &lift(a.vertex(y)), &p).is_negligible(eps)
        };
        on(i - 1, i + 1) && on(i, i + 2)
    })
}

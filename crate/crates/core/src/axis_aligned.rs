//! Polygons whose edges alternate between vertical and horizontal.
//!
//! In normalized labels `v_0, …, v_{2m-1}` such a polygon reads
//!
//! ```text
//! v_{2i}   = (x_i, y_{i-1})
//! v_{2i+1} = (x_i, y_i)
//! ```
//!
//! so `v_{2i} v_{2i+1}` is vertical and `v_{2i+1} v_{2i+2}` horizontal. For
//! these polygons `L_A` has a closed form, the pentagram map collapses the
//! vertices after `m − 2` steps, and the collapse point is the vertex
//! centroid.

use crate::collineation::Collineation;
use crate::error::{Error, Result};
use crate::geom::scalar::from_usize;
use crate::geom::{det3, join_eps, meet_eps, project_eps, HomoVec, Mat3, Point2, Polygon, Scalar};
use crate::pentagram::iterate;

/// Largest `m` [`verify_incidence`] accepts by default; coordinates of exact
/// iterates grow quickly with the number of steps.
pub const DEFAULT_MAX_M: usize = 6;

/// Orientation of the edge leaving vertex 0 of the input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    VerticalFirst,
    HorizontalFirst,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxisAlignedShape<S> {
    pub m: usize,
    /// x-coordinates of the vertical edges, `x_0 … x_{m-1}`.
    pub xs: Vec<S>,
    /// y-coordinates of the horizontal edges, `y_0 … y_{m-1}`.
    pub ys: Vec<S>,
    pub phase: Phase,
    /// Input vertex that became `v_0`.
    pub offset: usize,
    pub epsilon: f64,
}

fn not_aligned<T>(reason: impl Into<String>) -> Result<T> {
    Err(Error::NotAxisAligned(reason.into()))
}

/// Recognizes an axis-aligned `2m`-gon, whatever vertex it starts at.
pub fn detect<S: Scalar>(a: &Polygon<S>) -> Result<AxisAlignedShape<S>> {
    let n = a.len();
    if n % 2 == 1 {
        return not_aligned(format!("odd vertex count {n}"));
    }
    if n < 4 {
        return not_aligned(format!("{n} vertices"));
    }
    let eps = a.epsilon();
    let vertical = |k: usize| {
        let (p, q) = (a.vertex(k as isize), a.vertex(k as isize + 1));
        (p.x.clone() - q.x.clone()).is_negligible(eps)
    };
    let horizontal = |k: usize| {
        let (p, q) = (a.vertex(k as isize), a.vertex(k as isize + 1));
        (p.y.clone() - q.y.clone()).is_negligible(eps)
    };
    let phase = if vertical(0) { Phase::VerticalFirst } else { Phase::HorizontalFirst };
    let offset = usize::from(phase == Phase::HorizontalFirst);
    for k in 0..n {
        let e = (k + offset) % n;
        let ok = if k % 2 == 0 { vertical(e) } else { horizontal(e) };
        if !ok {
            return not_aligned(format!("edge {e} breaks the vertical/horizontal alternation"));
        }
    }
    let v = |k: usize| a.vertex((k + offset) as isize);
    let m = n / 2;
    Ok(AxisAlignedShape {
        m,
        xs: (0..m).map(|i| v(2 * i).x.clone()).collect(),
        ys: (0..m).map(|i| v(2 * i + 1).y.clone()).collect(),
        phase,
        offset,
        epsilon: eps,
    })
}

impl<S: Scalar> AxisAlignedShape<S> {
    /// Vertices in the input's labeling.
    pub fn vertices(&self) -> Vec<Point2<S>> {
        let (m, n) = (self.m, 2 * self.m);
        let normalized = |k: usize| {
            let i = k / 2;
            let y = if k % 2 == 0 { &self.ys[(i + m - 1) % m] } else { &self.ys[i] };
            Point2::new(self.xs[i].clone(), y.clone())
        };
        (0..n).map(|j| normalized((j + n - self.offset) % n)).collect()
    }

    pub fn polygon(&self) -> Result<Polygon<S>> {
        Polygon::with_epsilon(self.vertices(), self.epsilon)
    }

    pub fn sum_x(&self) -> S {
        self.xs.iter().cloned().fold(S::zero(), |a, b| a + b)
    }

    pub fn sum_y(&self) -> S {
        self.ys.iter().cloned().fold(S::zero(), |a, b| a + b)
    }
}

/// `[[m, 0, Σx], [0, m, Σy], [0, 0, 2m]]`.
pub fn la_closed_form<S: Scalar>(s: &AxisAlignedShape<S>) -> Collineation<S> {
    let m: S = from_usize(s.m);
    let z = S::zero;
    let matrix = Mat3::new([
        [m.clone(), z(), s.sum_x()],
        [z(), m.clone(), s.sum_y()],
        [z(), z(), m.clone() + m],
    ]);
    Collineation { matrix, n: 2 * s.m }
}

/// Vertex centroid `(Σx / m, Σy / m)`, where the vertices collapse.
pub fn collapse_point<S: Scalar>(s: &AxisAlignedShape<S>) -> Point2<S> {
    let m: S = from_usize(s.m);
    Point2::new(s.sum_x() / m.clone(), s.sum_y() / m)
}

/// Action of `L_A` on the plane: the midpoint of `p` and the collapse point.
pub fn midpoint_map<S: Scalar>(s: &AxisAlignedShape<S>, p: &Point2<S>) -> Point2<S> {
    let two = S::from_i64(2);
    let c = collapse_point(s);
    Point2::new((p.x.clone() + c.x) / two.clone(), (p.y.clone() + c.y) / two)
}

#[derive(Clone, Debug, PartialEq)]
pub struct IncidenceReport<S> {
    pub steps: usize,
    /// `T^{m-2}(A)`.
    pub iterate: Polygon<S>,
    /// Largest `|det|` over triples within one parity class.
    pub max_deviation: f64,
    pub even_collinear: bool,
    pub odd_collinear: bool,
    pub meet: Point2<S>,
    pub collapse: Point2<S>,
    pub meet_matches: bool,
    pub holds: bool,
}

/// [`verify_incidence_with`] with `max_m = DEFAULT_MAX_M`.
pub fn verify_incidence<S: Scalar>(s: &AxisAlignedShape<S>) -> Result<IncidenceReport<S>> {
    verify_incidence_with(s, DEFAULT_MAX_M)
}

/// Iterates `m − 2` times, then checks that each parity class of vertices is
/// collinear and that the two lines meet at the vertex centroid.
pub fn verify_incidence_with<S: Scalar>(s: &AxisAlignedShape<S>, max_m: usize) -> Result<IncidenceReport<S>> {
    if s.m > max_m {
        return Err(Error::UnsupportedSize { n: 2 * s.m, expected: "at most 2·max_m vertices" });
    }
    let eps = s.epsilon;
    let steps = s.m - 2;
    let b = iterate(&s.polygon()?, steps)?;
    let u = b.lifts();
    let class = |parity: usize| -> Vec<_> { u.iter().skip(parity).step_by(2).cloned().collect() };
    let (even, odd) = (class(0), class(1));

    let mut max_deviation: f64 = 0.0;
    let mut collinear = |c: &[HomoVec<S>]| {
        let mut ok = true;
        for k in 2..c.len() {
            let d = det3(&c[0], &c[1], &c[k]);
            max_deviation = max_deviation.max(d.to_f64().abs());
            ok &= d.is_negligible(eps);
        }
        ok
    };
    let even_collinear = collinear(&even);
    let odd_collinear = collinear(&odd);

    let l1 = join_eps(&even[0], &even[1], eps)?;
    let l2 = join_eps(&odd[0], &odd[1], eps)?;
    let meet = project_eps(&meet_eps(&l1, &l2, eps)?, eps)?;
    let collapse = collapse_point(s);
    let meet_matches = meet.coincides(&collapse, eps);
    Ok(IncidenceReport {
        steps,
        iterate: b,
        max_deviation,
        even_collinear,
        odd_collinear,
        holds: even_collinear && odd_collinear && meet_matches,
        meet,
        collapse,
        meet_matches,
    })
}

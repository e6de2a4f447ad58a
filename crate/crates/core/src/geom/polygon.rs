//! Cyclically labeled polygons and the predicates the rest of the crate
//! relies on: convexity, general position, and hull containment.

use crate::error::{Error, Result};
use crate::geom::homog::{det3, lift, project_eps, HomoVec, Point2};
use crate::geom::mat3::Mat3;
use crate::geom::scalar::{Rational, Scalar, DEFAULT_EPSILON};

/// Which vertex triples [`Polygon::is_generic`] inspects.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Genericity {
    /// Only `(A_{j-1}, A_j, A_{j+1})`, the triples whose determinants divide
    /// in the definition of the collineation.
    #[default]
    Consecutive,
    /// Every triple of vertices.
    Strict,
}

/// Closed polygon with `n >= 3` vertices; indices wrap modulo `n`.
///
/// The float tolerance travels with the polygon so that derived polygons
/// (iterates, transforms) use the same degeneracy threshold.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon<S> {
    vertices: Vec<Point2<S>>,
    epsilon: f64,
}

impl<S: Scalar> Polygon<S> {
    pub fn new(vertices: Vec<Point2<S>>) -> Result<Self> {
        Self::with_epsilon(vertices, DEFAULT_EPSILON)
    }

    /// Rejects fewer than three vertices and consecutive coincident vertices.
    pub fn with_epsilon(vertices: Vec<Point2<S>>, epsilon: f64) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::TooFewVertices { n, min: 3 });
        }
        for i in 0..n {
            if vertices[i].coincides(&vertices[(i + 1) % n], epsilon) {
                return Err(Error::CoincidentVertices { index: i });
            }
        }
        Ok(Self { vertices, epsilon })
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point2::from_ints(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn set_epsilon(&mut self, epsilon: f64) {
        self.epsilon = epsilon;
    }

    pub fn vertices(&self) -> &[Point2<S>] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point2<S>> {
        self.vertices
    }

    /// Vertex `i` with `i` taken modulo `n` (negative indices allowed).
    pub fn vertex(&self, i: isize) -> &Point2<S> {
        let n = self.vertices.len() as isize;
        &self.vertices[i.rem_euclid(n) as usize]
    }

    /// Homogeneous lifts `(x_j, y_j, 1)`.
    pub fn lifts(&self) -> Vec<HomoVec<S>> {
        self.vertices.iter().map(lift).collect()
    }

    pub fn to_f64(&self) -> Polygon<f64> {
        Polygon {
            vertices: self.vertices.iter().map(Point2::to_f64).collect(),
            epsilon: self.epsilon,
        }
    }

    /// Relabels so that the old vertex `k` becomes vertex 0.
    pub fn rotated(&self, k: usize) -> Self {
        let n = self.len();
        let vertices = (0..n).map(|i| self.vertices[(i + k) % n].clone()).collect();
        Self { vertices, epsilon: self.epsilon }
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self { vertices, epsilon: self.epsilon }
    }

    /// Applies a projective transformation vertex by vertex.
    pub fn transform(&self, psi: &Mat3<S>) -> Result<Self> {
        let vertices = self
            .vertices
            .iter()
            .map(|p| project_eps(&psi.mul_vec(&lift(p)), self.epsilon))
            .collect::<Result<Vec<_>>>()?;
        Self::with_epsilon(vertices, self.epsilon)
    }

    pub fn translated(&self, dx: &S, dy: &S) -> Self {
        let d = Point2::new(dx.clone(), dy.clone());
        Self {
            vertices: self.vertices.iter().map(|p| p.add(&d)).collect(),
            epsilon: self.epsilon,
        }
    }

    pub fn centroid(&self) -> Point2<S> {
        let n = crate::geom::scalar::from_usize::<S>(self.len());
        let (sx, sy) = self.vertices.iter().fold((S::zero(), S::zero()), |(sx, sy), p| {
            (sx + p.x.clone(), sy + p.y.clone())
        });
        Point2::new(sx / n.clone(), sy / n)
    }

    /// Cross products of consecutive edge vectors, `(A_j - A_{j-1}) × (A_{j+1} - A_j)`.
    pub fn turns(&self) -> Vec<S> {
        let n = self.len() as isize;
        (0..n)
            .map(|j| {
                let e0 = self.vertex(j).sub(self.vertex(j - 1));
                let e1 = self.vertex(j + 1).sub(self.vertex(j));
                e0.cross(&e1)
            })
            .collect()
    }

    /// `+1` for counterclockwise, `-1` for clockwise, `None` if not convex.
    ///
    /// Every turn must have the same strict sign, and every vertex must lie
    /// strictly on the inner side of every edge line it does not belong to.
    /// The second condition rejects star polygons whose turns all agree.
    pub fn convex_orientation(&self) -> Option<i8> {
        let eps = self.epsilon;
        let turns = self.turns();
        let s = turns[0].sign(eps);
        if s == 0 || turns.iter().any(|t| t.sign(eps) != s) {
            return None;
        }
        let n = self.len();
        for i in 0..n {
            let a = &self.vertices[i];
            let edge = self.vertices[(i + 1) % n].sub(a);
            for k in 0..n {
                if k == i || k == (i + 1) % n {
                    continue;
                }
                if edge.cross(&self.vertices[k].sub(a)).sign(eps) != s {
                    return None;
                }
            }
        }
        Some(s)
    }

    pub fn is_convex(&self) -> bool {
        self.convex_orientation().is_some()
    }

    pub fn is_generic(&self, mode: Genericity) -> bool {
        match mode {
            Genericity::Consecutive => self.first_degenerate_triple().is_none(),
            Genericity::Strict => {
                let u = self.lifts();
                let n = u.len();
                for i in 0..n {
                    for j in i + 1..n {
                        for k in j + 1..n {
                            if det3(&u[i], &u[j], &u[k]).is_negligible(self.epsilon) {
                                return false;
                            }
                        }
                    }
                }
                true
            }
        }
    }

    /// Index `j` of the first vanishing `|u_{j-1}, u_j, u_{j+1}|`.
    pub fn first_degenerate_triple(&self) -> Option<usize> {
        let n = self.len() as isize;
        (0..n)
            .find(|&j| {
                det3(
                    &lift(self.vertex(j - 1)),
                    &lift(self.vertex(j)),
                    &lift(self.vertex(j + 1)),
                )
                .is_negligible(self.epsilon)
            })
            .map(|j| j as usize)
    }

    /// Weak containment in the convex hull: `p` may lie on an edge or vertex.
    pub fn contains(&self, p: &Point2<S>) -> Result<bool> {
        let s = self.convex_orientation().ok_or(Error::NotConvex)?;
        let n = self.len();
        Ok((0..n).all(|i| {
            let a = &self.vertices[i];
            let edge = self.vertices[(i + 1) % n].sub(a);
            let side = edge.cross(&p.sub(a)).sign(self.epsilon);
            side == 0 || side == s
        }))
    }

    /// Largest distance between two vertices, in floating point.
    pub fn diameter(&self) -> f64 {
        let v: Vec<Point2<f64>> = self.vertices.iter().map(Point2::to_f64).collect();
        let mut d: f64 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                d = d.max(v[i].dist(&v[j]));
            }
        }
        d
    }

    /// Same cyclic vertex sequence up to a rotation of labels; returns the
    /// shift `s` with `self[i] == other[i + s]`.
    pub fn cyclic_shift_to(&self, other: &Self, eps: f64) -> Option<usize> {
        let n = self.len();
        if other.len() != n {
            return None;
        }
        (0..n).find(|&s| {
            (0..n).all(|i| self.vertices[i].coincides(&other.vertices[(i + s) % n], eps))
        })
    }
}

impl Polygon<f64> {
    pub fn from_f64(coords: &[(f64, f64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point2::new(x, y)).collect())
    }
}

impl Polygon<Rational> {
    /// The convex heptagon `(2,0), (3,1), (3,2), (2,3), (1,3), (0,2), (0,1)`
    /// used throughout the tests and the CLI examples.
    pub fn sample_heptagon() -> Self {
        Self::from_ints(&[(2, 0), (3, 1), (3, 2), (2, 3), (1, 3), (0, 2), (0, 1)])
            .expect("sample heptagon is well formed")
    }
}

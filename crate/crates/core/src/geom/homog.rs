//! Plane points, homogeneous triples, and the join/meet duality.

use std::fmt;

use crate::error::{Error, Result};
use crate::geom::scalar::{Scalar, DEFAULT_EPSILON};

/// Affine point of the plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point2<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point2<S> {
    pub fn new(x: S, y: S) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(S::from_i64(x), S::from_i64(y))
    }

    pub fn to_f64(&self) -> Point2<f64> {
        Point2::new(self.x.to_f64(), self.y.to_f64())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.x.clone() - other.x.clone(), self.y.clone() - other.y.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.x.clone() + other.x.clone(), self.y.clone() + other.y.clone())
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::new(self.x.clone() * k.clone(), self.y.clone() * k.clone())
    }

    /// z-component of the cross product of two plane vectors.
    pub fn cross(&self, other: &Self) -> S {
        self.x.clone() * other.y.clone() - self.y.clone() * other.x.clone()
    }

    /// Coordinate-wise equality up to the float tolerance (exact for rationals).
    pub fn coincides(&self, other: &Self, eps: f64) -> bool {
        (self.x.clone() - other.x.clone()).is_negligible(eps)
            && (self.y.clone() - other.y.clone()).is_negligible(eps)
    }
}

impl Point2<f64> {
    pub fn dist(&self, other: &Self) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl<S: fmt::Display> fmt::Display for Point2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Whether a homogeneous triple names a point of the plane or a line
/// (a point of the dual plane, stored as its coefficient triple).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Point,
    Line,
}

impl Role {
    pub fn dual(self) -> Self {
        match self {
            Role::Point => Role::Line,
            Role::Line => Role::Point,
        }
    }
}

/// Homogeneous coordinate triple `(a, b, c)`.
///
/// Triples are never normalized; two triples name the same projective
/// element when they are proportional (see [`HomoVec::proportional`]). The
/// zero triple is representable because linear maps can produce it, but it
/// names no projective element and every projective operation rejects it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomoVec<S> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub role: Role,
}

impl<S: Scalar> HomoVec<S> {
    pub fn new(a: S, b: S, c: S, role: Role) -> Self {
        Self { a, b, c, role }
    }

    pub fn point(a: S, b: S, c: S) -> Self {
        Self::new(a, b, c, Role::Point)
    }

    pub fn line(a: S, b: S, c: S) -> Self {
        Self::new(a, b, c, Role::Line)
    }

    pub fn from_array(v: [S; 3], role: Role) -> Self {
        let [a, b, c] = v;
        Self::new(a, b, c, role)
    }

    pub fn to_array(&self) -> [S; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }

    pub fn component(&self, i: usize) -> &S {
        match i {
            0 => &self.a,
            1 => &self.b,
            2 => &self.c,
            _ => panic!("homogeneous component index {i} out of range"),
        }
    }

    pub fn with_role(mut self, role: Role) -> Self {
        self.role = role;
        self
    }

    pub fn to_f64(&self) -> HomoVec<f64> {
        HomoVec::new(self.a.to_f64(), self.b.to_f64(), self.c.to_f64(), self.role)
    }

    pub fn is_zero_within(&self, eps: f64) -> bool {
        self.a.is_negligible(eps) && self.b.is_negligible(eps) && self.c.is_negligible(eps)
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::new(
            self.a.clone() * k.clone(),
            self.b.clone() * k.clone(),
            self.c.clone() * k.clone(),
            self.role,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.a.clone() + other.a.clone(),
            self.b.clone() + other.b.clone(),
            self.c.clone() + other.c.clone(),
            self.role,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.a.clone() - other.a.clone(),
            self.b.clone() - other.b.clone(),
            self.c.clone() - other.c.clone(),
            self.role,
        )
    }

    /// Pairing of a line with a point (or any two triples): `a·a' + b·b' + c·c'`.
    pub fn dot(&self, other: &Self) -> S {
        self.a.clone() * other.a.clone()
            + self.b.clone() * other.b.clone()
            + self.c.clone() * other.c.clone()
    }

    /// Cross product; the role of the result is the dual of `self`'s.
    pub fn cross(&self, other: &Self) -> Self {
        Self::new(
            self.b.clone() * other.c.clone() - self.c.clone() * other.b.clone(),
            self.c.clone() * other.a.clone() - self.a.clone() * other.c.clone(),
            self.a.clone() * other.b.clone() - self.b.clone() * other.a.clone(),
            self.role.dual(),
        )
    }

    /// Same projective element: the cross product vanishes.
    pub fn proportional(&self, other: &Self, eps: f64) -> bool {
        self.cross(other).is_zero_within(eps)
    }

    /// Max-norm.
    pub fn norm_inf(&self) -> f64 {
        self.a.to_f64().abs().max(self.b.to_f64().abs()).max(self.c.to_f64().abs())
    }
}

/// Determinant of the matrix whose columns are `u`, `v`, `w`.
pub fn det3<S: Scalar>(u: &HomoVec<S>, v: &HomoVec<S>, w: &HomoVec<S>) -> S {
    u.dot(&v.cross(w))
}

/// `(x, y) ↦ (x, y, 1)`.
pub fn lift<S: Scalar>(p: &Point2<S>) -> HomoVec<S> {
    HomoVec::point(p.x.clone(), p.y.clone(), S::one())
}

/// Inverse of [`lift`] up to scale, with the default float tolerance.
pub fn project<S: Scalar>(v: &HomoVec<S>) -> Result<Point2<S>> {
    project_eps(v, DEFAULT_EPSILON)
}

pub fn project_eps<S: Scalar>(v: &HomoVec<S>, eps: f64) -> Result<Point2<S>> {
    if v.c.is_negligible(eps) {
        return Err(Error::PointAtInfinity);
    }
    Ok(Point2::new(v.a.clone() / v.c.clone(), v.b.clone() / v.c.clone()))
}

/// Line through two points, with the default float tolerance.
pub fn join<S: Scalar>(p: &HomoVec<S>, q: &HomoVec<S>) -> Result<HomoVec<S>> {
    join_eps(p, q, DEFAULT_EPSILON)
}

pub fn join_eps<S: Scalar>(p: &HomoVec<S>, q: &HomoVec<S>, eps: f64) -> Result<HomoVec<S>> {
    let l = p.cross(q);
    if l.is_zero_within(eps) {
        return Err(Error::DegenerateJoin);
    }
    Ok(l.with_role(Role::Line))
}

/// Intersection point of two lines, with the default float tolerance.
pub fn meet<S: Scalar>(l1: &HomoVec<S>, l2: &HomoVec<S>) -> Result<HomoVec<S>> {
    meet_eps(l1, l2, DEFAULT_EPSILON)
}

pub fn meet_eps<S: Scalar>(l1: &HomoVec<S>, l2: &HomoVec<S>, eps: f64) -> Result<HomoVec<S>> {
    let p = l1.cross(l2);
    if p.is_zero_within(eps) {
        return Err(Error::DegenerateMeet);
    }
    Ok(p.with_role(Role::Point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::scalar::{ratio, Rational};
    use num_traits::Zero;

    fn hp(a: i64, b: i64, c: i64) -> HomoVec<Rational> {
        HomoVec::point(Rational::from_i64(a), Rational::from_i64(b), Rational::from_i64(c))
    }

    fn hl(a: i64, b: i64, c: i64) -> HomoVec<Rational> {
        hp(a, b, c).with_role(Role::Line)
    }

    fn pt(x: i64, y: i64) -> Point2<Rational> {
        Point2::from_ints(x, y)
    }

    #[test]
    fn det3_examples() {
        assert_eq!(det3(&hp(1, 0, 0), &hp(0, 1, 0), &hp(0, 0, 1)), Rational::from_i64(1));
        let u = hp(4, -2, 7);
        assert_eq!(det3(&u, &u, &hp(1, 5, 3)), Rational::from_i64(0));
        // cofactor expansion of [[2,3,3],[0,1,2],[1,1,1]] along the bottom row:
        // 1*(3*2-3*1) - 1*(2*2-3*0) + 1*(2*1-3*0) = 3 - 4 + 2 = 1
        let d = det3(&lift(&pt(2, 0)), &lift(&pt(3, 1)), &lift(&pt(3, 2)));
        assert_eq!(d, Rational::from_i64(1));
    }

    #[test]
    fn lift_and_project() {
        assert_eq!(lift(&pt(2, 0)), hp(2, 0, 1));
        assert_eq!(lift(&pt(0, 0)), hp(0, 0, 1));
        let p = Point2::new(ratio(-1, 2), ratio(3, 4));
        assert_eq!(lift(&p), HomoVec::point(ratio(-1, 2), ratio(3, 4), ratio(1, 1)));
        assert_eq!(project(&hp(2, 0, 1)).unwrap(), pt(2, 0));
        assert_eq!(project(&hp(4, 6, 2)).unwrap(), pt(2, 3));
        assert_eq!(project(&hp(1, 1, 0)), Err(Error::PointAtInfinity));
        let tiny = HomoVec::point(1.0, 1.0, 1e-12);
        assert_eq!(project(&tiny), Err(Error::PointAtInfinity));
    }

    #[test]
    fn join_examples() {
        let l = join(&hp(0, 0, 1), &hp(1, 0, 1)).unwrap();
        assert!(l.proportional(&hl(0, 1, 0), 0.0));
        assert_eq!(l.role, Role::Line);
        let l = join(&hp(1, 0, 1), &hp(1, 1, 1)).unwrap();
        assert!(l.proportional(&hl(1, 0, -1), 0.0));
        let (p, q) = (lift(&pt(0, 1)), lift(&pt(3, 1)));
        let l = join(&p, &q).unwrap();
        assert!(l.dot(&p).is_zero() && l.dot(&q).is_zero());
        assert!(l.proportional(&hl(0, 1, -1), 0.0));
        assert_eq!(join(&hp(1, 2, 3), &hp(2, 4, 6)), Err(Error::DegenerateJoin));
    }

    #[test]
    fn meet_examples() {
        let o = meet(&hl(0, 1, 0), &hl(1, 0, 0)).unwrap();
        assert_eq!(project(&o).unwrap(), pt(0, 0));
        let p = meet(&hl(0, 1, -1), &hl(1, 1, -2)).unwrap();
        assert_eq!(project(&p).unwrap(), pt(1, 1));
        let inf = meet(&hl(0, 1, 0), &hl(0, 1, -1)).unwrap();
        assert!(inf.c.is_zero());
        assert_eq!(project(&inf), Err(Error::PointAtInfinity));
        assert_eq!(meet(&hl(1, 1, 1), &hl(-2, -2, -2)), Err(Error::DegenerateMeet));
    }
}

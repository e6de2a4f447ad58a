//! Seeded random inputs for property checks and the CLI's verify command.
//!
//! Everything here produces exact rationals so that identities can be
//! checked with `==`.

use std::f64::consts::TAU;

use rand::Rng;

use crate::geom::{ratio, Genericity, Mat3, Point2, Polygon, Rational, Scalar};

/// Denominator used when rounding sampled coordinates to rationals.
pub const GRID: i64 = 1000;

fn on_grid(v: f64) -> Rational {
    ratio((v * GRID as f64).round() as i64, GRID)
}

/// Convex `n`-gon with vertices at sorted random angles on a circle whose
/// radius is perturbed by up to 10% per vertex, then randomly scaled and
/// translated. Coordinates are multiples of `1/GRID`; draws that come out
/// non-convex or with three collinear vertices are rejected.
pub fn random_convex_polygon<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Polygon<Rational> {
    assert!(n >= 3, "need at least three vertices");
    loop {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let scale = rng.random_range(0.5..4.0);
        let (cx, cy) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let vertices = angles
            .iter()
            .map(|t| {
                let r = scale * rng.random_range(0.9..1.1);
                Point2::new(on_grid(cx + r * t.cos()), on_grid(cy + r * t.sin()))
            })
            .collect();
        let Ok(p) = Polygon::new(vertices) else { continue };
        if p.is_convex() && p.is_generic(Genericity::Strict) {
            return p;
        }
    }
}

/// Axis-aligned `2m`-gon with integer coordinates in `[-range, range]`,
/// consecutive vertical-edge x's distinct and consecutive horizontal-edge
/// y's distinct.
pub fn random_axis_aligned<R: Rng + ?Sized>(rng: &mut R, m: usize, range: i64) -> Polygon<Rational> {
    assert!(m >= 2, "need at least four vertices");
    let cyclic_distinct = |rng: &mut R| loop {
        let v: Vec<i64> = (0..m).map(|_| rng.random_range(-range..=range)).collect();
        if (0..m).all(|i| v[i] != v[(i + 1) % m]) {
            return v;
        }
    };
    let xs = cyclic_distinct(rng);
    let ys = cyclic_distinct(rng);
    let vertices = (0..2 * m)
        .map(|k| {
            let i = k / 2;
            let y = if k % 2 == 0 { ys[(i + m - 1) % m] } else { ys[i] };
            Point2::from_ints(xs[i], y)
        })
        .collect();
    Polygon::new(vertices).expect("alternating edges never repeat a vertex")
}

/// Integer matrix with determinant ±1: a product of random elementary row
/// operations and a random sign.
pub fn random_unimodular<R: Rng + ?Sized>(rng: &mut R) -> Mat3<Rational> {
    let mut m = Mat3::<Rational>::identity();
    for _ in 0..6 {
        let i = rng.random_range(0..3);
        let j = (i + rng.random_range(1..3)) % 3;
        let k = Rational::from_i64(rng.random_range(-3..=3));
        for c in 0..3 {
            let add = m.rows[j][c].clone() * k.clone();
            m.rows[i][c] = m.rows[i][c].clone() + add;
        }
    }
    if rng.random_bool(0.5) {
        m.rows.swap(0, 1);
    }
    m
}

/// Random point of the convex hull: a convex combination of the vertices
/// with integer weights in `0..=10`, so boundary points occur too.
pub fn random_hull_point<R: Rng + ?Sized, S: Scalar>(rng: &mut R, a: &Polygon<S>) -> Point2<S> {
    loop {
        let w: Vec<i64> = (0..a.len()).map(|_| rng.random_range(0..=10)).collect();
        let total: i64 = w.iter().sum();
        if total == 0 {
            continue;
        }
        let (mut x, mut y) = (S::zero(), S::zero());
        for (p, &wi) in a.vertices().iter().zip(&w) {
            x = x + p.x.clone() * S::from_i64(wi);
            y = y + p.y.clone() * S::from_i64(wi);
        }
        let t = S::from_i64(total);
        return Point2::new(x / t.clone(), y / t);
    }
}

/// Rotation by `angle`, uniform scale and translation, as a float matrix.
pub fn similarity(angle: f64, scale: f64, dx: f64, dy: f64) -> Mat3<f64> {
    let (s, c) = angle.sin_cos();
    Mat3::new([
        [scale * c, -scale * s, dx],
        [scale * s, scale * c, dy],
        [0.0, 0.0, 1.0],
    ])
}

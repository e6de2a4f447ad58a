#![allow(dead_code)]

use pentagram_core::{Point2, Polygon, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Iterates 1 through 5 of the sample heptagon, as printed to four decimals.
pub const HEPTAGON_ITERATES: [[(f64, f64); 7]; 5] = [
    [(1.0000, 1.0000), (2.5000, 1.0000), (2.7500, 1.5000), (2.3333, 2.3333), (1.5000, 2.7500), (0.6667, 2.3333), (0.3333, 1.6667)],
    [(1.7778, 1.2222), (2.4483, 1.4138), (2.3929, 1.8571), (1.9167, 2.3333), (1.0513, 2.3333), (0.7391, 2.0435), (0.8750, 1.5000)],
    [(1.4675, 1.4675), (1.9878, 1.4390), (2.2670, 1.7273), (2.1401, 1.9469), (1.4057, 2.2075), (1.0037, 2.1086), (0.9540, 1.8736)],
    [(1.7227, 1.5504), (2.0534, 1.6579), (2.1019, 1.8194), (1.7817, 1.9979), (1.2286, 2.0766), (1.0972, 1.9794), (1.2698, 1.7408)],
    [(1.4771, 1.7189), (1.8975, 1.6744), (1.9886, 1.7390), (1.8697, 1.8878), (1.5198, 1.9908), (1.2401, 1.9833), (1.2537, 1.8721)],
];

pub const HEPTAGON_LIMIT: (f64, f64) = (1.609, 1.838);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn heptagon() -> Polygon<Rational> {
    Polygon::sample_heptagon()
}

pub fn axis_hexagon() -> Polygon<Rational> {
    Polygon::from_ints(&[(0, 0), (0, 2), (3, 2), (3, 3), (5, 3), (5, 0)]).unwrap()
}

pub fn square() -> Polygon<Rational> {
    Polygon::from_ints(&[(0, 0), (0, 1), (1, 1), (1, 0)]).unwrap()
}

pub fn max_dist(p: &Point2<f64>, q: &Point2<f64>) -> f64 {
    (p.x - q.x).abs().max((p.y - q.y).abs())
}

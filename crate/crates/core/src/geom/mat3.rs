//! Dense 3×3 matrices over a [`Scalar`].

use std::fmt;

use crate::error::{Error, Result};
use crate::geom::homog::HomoVec;
use crate::geom::scalar::Scalar;

/// Row-major 3×3 matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat3<S> {
    pub rows: [[S; 3]; 3],
}

impl<S: Scalar> Mat3<S> {
    pub fn new(rows: [[S; 3]; 3]) -> Self {
        Self { rows }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> S) -> Self {
        Self::new(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn from_ints(rows: [[i64; 3]; 3]) -> Self {
        Self::from_fn(|i, j| S::from_i64(rows[i][j]))
    }

    /// Matrix whose columns are the given triples.
    pub fn from_columns(cols: &[HomoVec<S>; 3]) -> Self {
        Self::from_fn(|i, j| cols[j].component(i).clone())
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| S::zero())
    }

    pub fn identity() -> Self {
        Self::scalar(S::one())
    }

    pub fn scalar(k: S) -> Self {
        Self::from_fn(|i, j| if i == j { k.clone() } else { S::zero() })
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> [S; 3] {
        std::array::from_fn(|i| self.rows[i][j].clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i].clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j].clone() + other.rows[i][j].clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| self.rows[i][j].clone() - other.rows[i][j].clone())
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::from_fn(|i, j| self.rows[i][j].clone() * k.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| {
            (0..3).fold(S::zero(), |acc, k| {
                acc + self.rows[i][k].clone() * other.rows[k][j].clone()
            })
        })
    }

    /// `M v`; the result keeps the role of `v`.
    pub fn mul_vec(&self, v: &HomoVec<S>) -> HomoVec<S> {
        let x = v.to_array();
        let r: [S; 3] = std::array::from_fn(|i| {
            (0..3).fold(S::zero(), |acc, k| acc + self.rows[i][k].clone() * x[k].clone())
        });
        HomoVec::from_array(r, v.role)
    }

    pub fn trace(&self) -> S {
        self.rows[0][0].clone() + self.rows[1][1].clone() + self.rows[2][2].clone()
    }

    pub fn det(&self) -> S {
        let m = &self.rows;
        m[0][0].clone() * self.minor(0, 0) - m[0][1].clone() * self.minor(0, 1)
            + m[0][2].clone() * self.minor(0, 2)
    }

    /// Determinant of the 2×2 block left after deleting row `i` and column `j`.
    pub fn minor(&self, i: usize, j: usize) -> S {
        let r: Vec<usize> = (0..3).filter(|&k| k != i).collect();
        let c: Vec<usize> = (0..3).filter(|&k| k != j).collect();
        let m = &self.rows;
        m[r[0]][c[0]].clone() * m[r[1]][c[1]].clone() - m[r[0]][c[1]].clone() * m[r[1]][c[0]].clone()
    }

    /// Sum of the three principal 2×2 minors.
    pub fn principal_minor_sum(&self) -> S {
        self.minor(0, 0) + self.minor(1, 1) + self.minor(2, 2)
    }

    pub fn adjugate(&self) -> Self {
        Self::from_fn(|i, j| {
            let c = self.minor(j, i);
            if (i + j) % 2 == 0 {
                c
            } else {
                -c
            }
        })
    }

    /// Inverse via the adjugate. Exact for rationals; for floats the
    /// determinant is compared against `eps`.
    pub fn inverse(&self, eps: f64) -> Result<Self> {
        let d = self.det();
        if d.is_negligible(eps) {
            return Err(Error::SingularTransform);
        }
        let inv_d = S::one() / d;
        Ok(self.adjugate().scale(&inv_d))
    }

    pub fn to_f64(&self) -> Mat3<f64> {
        Mat3::from_fn(|i, j| self.rows[i][j].to_f64())
    }

    /// Max absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_f64().abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise difference, in floating point.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| (self.rows[i][j].clone() - other.rows[i][j].clone()).to_f64().abs())
            .fold(0.0, f64::max)
    }
}

impl<S: fmt::Display> fmt::Display for Mat3<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[{}, {}, {}]", row[0], row[1], row[2])?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::scalar::Rational;

    type M = Mat3<Rational>;

    #[test]
    fn det_and_inverse() {
        let m = M::from_ints([[2, 3, 3], [0, 1, 2], [1, 1, 1]]);
        assert_eq!(m.det(), Rational::from_i64(1));
        let inv = m.inverse(0.0).unwrap();
        assert_eq!(m.mul(&inv), M::identity());
        assert_eq!(inv.mul(&m), M::identity());
    }

    #[test]
    fn singular_inverse_fails() {
        let m = M::from_ints([[1, 2, 3], [2, 4, 6], [0, 1, 1]]);
        assert_eq!(m.inverse(0.0), Err(Error::SingularTransform));
    }

    #[test]
    fn minors_and_trace() {
        let m = M::from_ints([[-6, -4, 49], [-1, -7, 51], [-1, -3, 27]]);
        assert_eq!(m.trace(), Rational::from_i64(14));
        // 42-4 + (-162+49) + (-189+153) = 38 - 113 - 36
        assert_eq!(m.principal_minor_sum(), Rational::from_i64(-111));
        assert_eq!(m.det(), Rational::from_i64(116));
    }

    #[test]
    fn transpose_of_product() {
        let a = M::from_ints([[1, 2, 0], [0, 1, 5], [3, 0, 1]]);
        let b = M::from_ints([[2, 0, 1], [1, 1, 0], [0, 4, 1]]);
        assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
    }
}

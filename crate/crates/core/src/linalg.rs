//! Small dense integer and rational matrices.
//!
//! Everything here is exact. Matrices act on column vectors, so column `j`
//! of a morphism's matrix is the image of the `j`-th basis vector.

use std::fmt;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

/// An integer vector in `Z^I`.
pub type IntVector = Vec<i64>;

/// A square integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows; `None` unless the rows form a square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(IntMatrix { n, data: rows.concat() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.data[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        self.data[row * self.n + col] = value;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }

    pub fn column(&self, col: usize) -> IntVector {
        (0..self.n).map(|r| self.get(r, col)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[i64]) -> IntVector {
        assert_eq!(self.n, v.len(), "dimension mismatch");
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// The principal submatrix on the given rows/columns.
    pub fn submatrix(&self, indices: &[usize]) -> IntMatrix {
        let rows: Vec<Vec<i64>> = indices
            .iter()
            .map(|&r| indices.iter().map(|&c| self.get(r, c)).collect())
            .collect();
        IntMatrix::from_rows(&rows).expect("square by construction")
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            n: self.n,
            data: self.data.iter().map(|&x| Rational64::from_integer(x)).collect(),
        }
    }

    pub fn determinant(&self) -> i64 {
        let d = self.to_rational().determinant();
        assert!(d.is_integer(), "integer matrix with non-integer determinant");
        d.to_integer()
    }

    /// Inverse over the integers; `None` unless the determinant is `±1`.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        let inv = self.to_rational().inverse()?;
        if inv.data.iter().any(|x| !x.is_integer()) {
            return None;
        }
        Some(IntMatrix {
            n: self.n,
            data: inv.data.iter().map(|x| x.to_integer()).collect(),
        })
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

/// A square rational matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    n: usize,
    data: Vec<Rational64>,
}

impl RatMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![Rational64::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Rational64::one();
        }
        RatMatrix { n, data }
    }

    pub fn get(&self, row: usize, col: usize) -> Rational64 {
        self.data[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> Vec<Rational64> {
        self.data[row * self.n..(row + 1) * self.n].to_vec()
    }

    pub fn determinant(&self) -> Rational64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = Rational64::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Rational64::zero();
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for r in col + 1..n {
                let factor = a[r * n + col] / p;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= factor * v;
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; `None` for singular matrices.
    pub fn inverse(&self) -> Option<RatMatrix> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = RatMatrix::identity(n).data;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a[col * n + col];
            for j in 0..n {
                a[col * n + j] /= p;
                inv[col * n + j] /= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let (av, iv) = (a[col * n + j], inv[col * n + j]);
                    a[r * n + j] -= factor * av;
                    inv[r * n + j] -= factor * iv;
                }
            }
        }
        Some(RatMatrix { n, data: inv })
    }
}

/// Rank of a list of integer vectors (all of the same length).
pub fn rank_of(vectors: &[IntVector]) -> usize {
    let Some(width) = vectors.first().map(Vec::len) else {
        return 0;
    };
    let mut rows: Vec<Vec<Rational64>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| Rational64::from_integer(x)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col];
        for r in rank + 1..rows.len() {
            let factor = rows[r][col] / p;
            if factor.is_zero() {
                continue;
            }
            for j in col..width {
                let v = rows[rank][j];
                rows[r][j] -= factor * v;
            }
        }
        rank += 1;
    }
    rank
}

/// Dot product of a rational vector with an integer vector.
pub fn dot(lhs: &[Rational64], rhs: &[i64]) -> Rational64 {
    lhs.iter()
        .zip(rhs)
        .map(|(a, &b)| *a * Rational64::from_integer(b))
        .sum()
}

/// Sign of a rational number as -1, 0 or 1.
pub fn signum(x: Rational64) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_inverse() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![0, -1]]).unwrap();
        assert_eq!(m.determinant(), -1);
        let inv = m.inverse_unimodular().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.apply(&[1, 1]), vec![3, -1]);
        assert_eq!(m.column(1), vec![2, -1]);
    }

    #[test]
    fn non_unimodular_has_no_integer_inverse() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(m.determinant(), 2);
        assert!(m.inverse_unimodular().is_none());
        assert!(IntMatrix::from_rows(&[vec![1, 2, 3], vec![1, 2]]).is_none());
    }

    #[test]
    fn rank_detects_dependence() {
        assert_eq!(rank_of(&[vec![1, 0, 1], vec![2, 0, 2], vec![0, 1, 0]]), 2);
        assert_eq!(rank_of(&[vec![0, 0]]), 0);
        assert_eq!(rank_of(&[]), 0);
    }

    #[test]
    fn singular_rational_matrix() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(m.to_rational().inverse().is_none());
        assert_eq!(m.determinant(), 0);
    }
}

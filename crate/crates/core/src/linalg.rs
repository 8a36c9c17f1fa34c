//! Dense matrices over exact fields and their kernels.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Num;

/// A field with exact arithmetic. Implemented only for rational types, so
/// equality tests on results are meaningful.
pub trait ExactField: Num + Clone + Debug + Neg<Output = Self> {}

impl ExactField for Ratio<BigInt> {}
impl ExactField for Ratio<i64> {}
impl ExactField for Ratio<i128> {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: ExactField> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let data = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .map(|(r, c)| f(r, c))
            .collect();
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = T::one() / m.get(row, col).clone();
            for c in col..m.cols {
                let idx = row * m.cols + c;
                m.data[idx] = m.data[idx].clone() * inv.clone();
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let sub = factor.clone() * m.get(row, c).clone();
                    let idx = r * m.cols + c;
                    m.data[idx] = m.data[idx].clone() - sub;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Kernel basis read off the reduced row echelon form: one vector per free
    /// column `f`, with a 1 at `f`, zeros at the other free columns and the
    /// negated reduced entries at the pivot columns.
    pub fn nullspace(&self) -> Nullspace<T> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let vectors = free
            .iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f).clone();
                }
                v
            })
            .collect();
        Nullspace {
            dim: self.cols,
            vectors,
            pivots,
            free,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }
}

/// A basis of a matrix kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nullspace<T> {
    dim: usize,
    vectors: Vec<Vec<T>>,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl<T: ExactField> Nullspace<T> {
    /// A basis given directly. Linear independence is the caller's concern.
    pub fn from_vectors(dim: usize, vectors: Vec<Vec<T>>) -> Self {
        assert!(
            vectors.iter().all(|v| v.len() == dim),
            "basis vectors must have length {dim}"
        );
        Self {
            dim,
            vectors,
            pivots: Vec::new(),
            free: Vec::new(),
        }
    }

    pub fn vectors(&self) -> &[Vec<T>] {
        &self.vectors
    }

    /// Nullity.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Length of each basis vector.
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Pivot columns of the echelon form the basis was derived from.
    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    /// Free columns; basis vector `k` has a 1 at `free_columns()[k]`.
    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    /// Smallest pair `i < j` with `v(i) = v(j)` for every basis vector `v`.
    pub fn first_tied_coordinates(&self) -> Option<(usize, usize)> {
        (0..self.dim)
            .flat_map(|i| (i + 1..self.dim).map(move |j| (i, j)))
            .find(|&(i, j)| self.vectors.iter().all(|v| v[i] == v[j]))
    }

    /// Returns `Σ_k coeffs[t][k] · b_k` for each row `t` of `coeffs`.
    pub fn recombine(&self, coeffs: &Matrix<T>) -> Self {
        assert_eq!(
            coeffs.cols(),
            self.len(),
            "coefficient matrix must have one column per basis vector"
        );
        let vectors = (0..coeffs.rows())
            .map(|t| {
                (0..self.dim)
                    .map(|c| {
                        self.vectors
                            .iter()
                            .enumerate()
                            .fold(T::zero(), |acc, (k, v)| acc + coeffs.get(t, k).clone() * v[c].clone())
                    })
                    .collect()
            })
            .collect();
        Self::from_vectors(self.dim, vectors)
    }
}

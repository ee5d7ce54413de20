//! Small dense matrices: reference multiply, determinants, linear solves.
//!
//! The exact backend uses fraction-free (Bareiss) elimination for
//! determinants and plain Gaussian elimination with first-nonzero pivoting
//! for solves; the float backend uses partial pivoting throughout. Sizes here
//! are desk-scale (≤ ~100), so clarity wins over blocking tricks.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<K> {
    rows: usize,
    cols: usize,
    data: Vec<K>,
}

impl<K: Scalar> DenseMatrix<K> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![K::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, K::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<K>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::DimensionMismatch {
                detail: "ragged rows".to_string(),
            });
        }
        Ok(DenseMatrix {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                detail: format!("{}x{} * {}x{}", self.rows, self.cols, rhs.rows, rhs.cols),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a.clone() * rhs.get(k, j).clone();
                    out.set(i, j, out.get(i, j).clone() + add);
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                detail: format!("{}x{} - {}x{}", self.rows, self.cols, rhs.rows, rhs.cols),
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a = a.clone() - b.clone();
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[K]) -> Result<Vec<K>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                detail: format!("{}x{} * vec{}", self.rows, self.cols, v.len()),
            });
        }
        let mut out = vec![K::zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = K::zero();
            for j in 0..self.cols {
                if !v[j].is_zero() {
                    acc = acc + self.get(i, j).clone() * v[j].clone();
                }
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn trace(&self) -> K {
        let mut acc = K::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc + self.get(i, i).clone();
        }
        acc
    }

    /// Largest entry magnitude as `f64` (diagnostics, pivot scaling).
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|v| v.approx().abs())
            .fold(0.0, f64::max)
    }

    /// Determinant. Exact backend: fraction-free Bareiss elimination (every
    /// division is exact). Float backend: LU with partial pivoting and a
    /// sign-tracked pivot product.
    pub fn det(&self) -> K {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if K::EXACT {
            self.det_bareiss()
        } else {
            self.det_lu()
        }
    }

    fn det_bareiss(&self) -> K {
        let n = self.rows;
        if n == 0 {
            return K::one();
        }
        let mut m = self.data.clone();
        let at = |d: &Vec<K>, i: usize, j: usize| d[i * n + j].clone();
        let mut sign = false;
        let mut prev = K::one();
        for k in 0..n - 1 {
            if at(&m, k, k).is_zero() {
                let swap = (k + 1..n).find(|&r| !at(&m, r, k).is_zero());
                match swap {
                    Some(r) => {
                        for j in 0..n {
                            m.swap(k * n + j, r * n + j);
                        }
                        sign = !sign;
                    }
                    None => return K::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = at(&m, i, j) * at(&m, k, k) - at(&m, i, k) * at(&m, k, j);
                    m[i * n + j] = num / prev.clone();
                }
                m[i * n + k] = K::zero();
            }
            prev = at(&m, k, k);
        }
        let d = at(&m, n - 1, n - 1);
        if sign {
            -d
        } else {
            d
        }
    }

    fn det_lu(&self) -> K {
        let n = self.rows;
        if n == 0 {
            return K::one();
        }
        let mut m = self.data.clone();
        let mut sign = false;
        let mut det = K::one();
        for k in 0..n {
            let (piv, piv_mag) = (k..n)
                .map(|r| (r, m[r * n + k].approx().abs()))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            if piv_mag == 0.0 {
                return K::zero();
            }
            if piv != k {
                for j in 0..n {
                    m.swap(k * n + j, piv * n + j);
                }
                sign = !sign;
            }
            let pivot = m[k * n + k].clone();
            det = det * pivot.clone();
            for i in k + 1..n {
                let factor = m[i * n + k].clone() / pivot.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let sub = factor.clone() * m[k * n + j].clone();
                    m[i * n + j] = m[i * n + j].clone() - sub;
                }
                m[i * n + k] = K::zero();
            }
        }
        if sign {
            -det
        } else {
            det
        }
    }

    /// Solves `self * x = rhs` by Gaussian elimination. Pivoting is
    /// first-nonzero in the exact backend and partial (max magnitude) in the
    /// float backend. A singular system yields `RankDeficient`.
    pub fn solve(&self, rhs: &[K]) -> Result<Vec<K>> {
        let n = self.rows;
        if self.cols != n || rhs.len() != n {
            return Err(Error::DimensionMismatch {
                detail: format!("solve on {}x{} with rhs{}", self.rows, self.cols, rhs.len()),
            });
        }
        let mut a = self.data.clone();
        let mut b = rhs.to_vec();
        for k in 0..n {
            let piv = if K::EXACT {
                (k..n).find(|&r| !a[r * n + k].is_zero())
            } else {
                let (r, mag) = (k..n)
                    .map(|r| (r, a[r * n + k].approx().abs()))
                    .max_by(|x, y| x.1.total_cmp(&y.1))
                    .unwrap();
                if mag == 0.0 {
                    None
                } else {
                    Some(r)
                }
            };
            let piv = piv.ok_or(Error::RankDeficient)?;
            if piv != k {
                for j in 0..n {
                    a.swap(k * n + j, piv * n + j);
                }
                b.swap(k, piv);
            }
            let pivot = a[k * n + k].clone();
            for i in k + 1..n {
                if a[i * n + k].is_zero() {
                    continue;
                }
                let factor = a[i * n + k].clone() / pivot.clone();
                for j in k..n {
                    let sub = factor.clone() * a[k * n + j].clone();
                    a[i * n + j] = a[i * n + j].clone() - sub;
                }
                let sub = factor * b[k].clone();
                b[i] = b[i].clone() - sub;
            }
        }
        let mut x = vec![K::zero(); n];
        for k in (0..n).rev() {
            let mut acc = b[k].clone();
            for j in k + 1..n {
                acc = acc - a[k * n + j].clone() * x[j].clone();
            }
            if a[k * n + k].is_zero() {
                return Err(Error::RankDeficient);
            }
            x[k] = acc / a[k * n + k].clone();
        }
        Ok(x)
    }
}

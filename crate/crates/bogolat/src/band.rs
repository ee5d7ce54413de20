//! Band matrices with dense per-diagonal storage.
//!
//! The operators in this crate live on a few diagonals: a unit
//! `upper`-th superdiagonal and a nonzero `lower`-th subdiagonal for the
//! spectral operators, plus whatever the commutator partners need. Windowed
//! truncations of semi-infinite operators carry a column guard
//! ([`BandMatrix::restrict_valid_cols`]): any matrix–vector application whose
//! input touches an untrusted column is rejected, so truncation can never
//! silently contaminate a moment computation.

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct BandMatrix<K> {
    size: usize,
    lower: usize,
    upper: usize,
    /// `diags[d][i]` is entry `(i, i + d - lower)`; slots whose column falls
    /// outside the matrix stay zero and are never read.
    diags: Vec<Vec<K>>,
    valid_cols: usize,
    guarded: bool,
}

impl<K: Scalar> BandMatrix<K> {
    pub fn new(size: usize, lower: usize, upper: usize) -> Self {
        BandMatrix {
            size,
            lower,
            upper,
            diags: vec![vec![K::zero(); size]; lower + upper + 1],
            valid_cols: size,
            guarded: false,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn lower_bandwidth(&self) -> usize {
        self.lower
    }

    pub fn upper_bandwidth(&self) -> usize {
        self.upper
    }

    /// Number of leading columns whose entries are trusted. Equal to `size`
    /// unless this matrix is a guarded truncation window.
    pub fn valid_cols(&self) -> usize {
        self.valid_cols
    }

    pub fn is_guarded(&self) -> bool {
        self.guarded
    }

    /// Marks this matrix as a truncation of a semi-infinite operator whose
    /// entries are only trusted in the first `valid_cols` columns.
    pub fn restrict_valid_cols(&mut self, valid_cols: usize) {
        self.valid_cols = valid_cols.min(self.size);
        self.guarded = true;
    }

    fn diag_of(&self, i: usize, j: usize) -> Option<usize> {
        let off = j as isize - i as isize;
        let d = off + self.lower as isize;
        if d < 0 || d > (self.lower + self.upper) as isize {
            None
        } else {
            Some(d as usize)
        }
    }

    pub fn get(&self, i: usize, j: usize) -> K {
        if i >= self.size || j >= self.size {
            return K::zero();
        }
        match self.diag_of(i, j) {
            Some(d) => self.diags[d][i].clone(),
            None => K::zero(),
        }
    }

    /// Sets an in-band entry; setting outside the band is a programming error.
    pub fn set(&mut self, i: usize, j: usize, v: K) {
        assert!(i < self.size && j < self.size, "entry outside matrix");
        let d = self
            .diag_of(i, j)
            .unwrap_or_else(|| panic!("entry ({i},{j}) outside the stored band"));
        self.diags[d][i] = v;
    }

    /// Matrix–vector product. For guarded truncations the input support must
    /// stay inside the trusted columns — both the padded tail columns and the
    /// columns whose product would spill past the bottom edge are untrusted.
    pub fn apply(&self, v: &[K]) -> Result<Vec<K>> {
        if v.len() != self.size {
            return Err(Error::DimensionMismatch {
                detail: format!("apply on size {} with vec{}", self.size, v.len()),
            });
        }
        if self.guarded {
            let cutoff = self.valid_cols.min(self.size - self.lower);
            if let Some(j) = (cutoff..self.size).find(|&j| !v[j].is_zero()) {
                return Err(Error::WindowTooSmall {
                    window: self.valid_cols,
                    detail: format!(
                        "iterate support reached untrusted column {j} (trusted < {cutoff})"
                    ),
                });
            }
        }
        let mut out = vec![K::zero(); self.size];
        for (d, diag) in self.diags.iter().enumerate() {
            let off = d as isize - self.lower as isize;
            for i in 0..self.size {
                let j = i as isize + off;
                if j < 0 || j >= self.size as isize {
                    continue;
                }
                let a = &diag[i];
                if a.is_zero() {
                    continue;
                }
                let x = &v[j as usize];
                if x.is_zero() {
                    continue;
                }
                out[i] = out[i].clone() + a.clone() * x.clone();
            }
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> DenseMatrix<K> {
        let mut m = DenseMatrix::zeros(self.size, self.size);
        for i in 0..self.size {
            let lo = i.saturating_sub(self.lower);
            let hi = (i + self.upper).min(self.size.saturating_sub(1));
            for j in lo..=hi {
                let v = self.get(i, j);
                if !v.is_zero() {
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// Max row sum of entry magnitudes — an upper bound on the operator norm,
    /// used as the resolvent-probe validity threshold.
    pub fn row_sum_bound(&self) -> f64 {
        let mut best = 0.0f64;
        for i in 0..self.size {
            let lo = i.saturating_sub(self.lower);
            let hi = (i + self.upper).min(self.size.saturating_sub(1));
            let mut acc = 0.0;
            for j in lo..=hi {
                acc += self.get(i, j).approx().abs();
            }
            best = best.max(acc);
        }
        best
    }

    /// Checks the spectral-operator shape: unit `upper`-th superdiagonal and
    /// nonzero `lower`-th subdiagonal wherever those diagonals are stored
    /// (restricted to trusted columns for guarded windows).
    pub fn check_spectral_shape(&self) -> Result<()> {
        for i in 0..self.size.saturating_sub(self.upper) {
            if i + self.upper >= self.valid_cols && self.guarded {
                continue;
            }
            if !self.get(i, i + self.upper).is_one() {
                return Err(Error::DimensionMismatch {
                    detail: format!("superdiagonal entry ({i},{}) is not 1", i + self.upper),
                });
            }
        }
        for i in 0..self.size.saturating_sub(self.lower) {
            if i >= self.valid_cols && self.guarded {
                continue;
            }
            if self.get(i + self.lower, i).is_zero() {
                return Err(Error::ZeroCoefficient { index: i });
            }
        }
        Ok(())
    }
}

//! Moment tables of the Weyl matrix of a band operator.
//!
//! For a band matrix `M` with upper bandwidth `r` and lower bandwidth `q`,
//! the moment `S_k^{m,n}` is the entry `(M^k)_{m-1,n-1}` with `1 ≤ m ≤ r`,
//! `1 ≤ n ≤ q`. These are the Laurent coefficients at infinity of the top-left
//! `r×q` block of the resolvent `(λE − M)^{-1}`, which determines the operator
//! inside the band via the structured-Hankel machinery.
//!
//! Moments are computed by iterated matrix-vector products starting from unit
//! vectors, which works unchanged on guarded truncation windows — the guard
//! in [`BandMatrix::apply`] rejects any depth for which the window is too
//! small, so every value that does come back is exactly the value the full
//! semi-infinite operator would give.

use crate::band::BandMatrix;
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::lattice::Family;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Computed from powers of an explicit matrix.
    FromMatrix,
    /// Produced by the moment-side time evolution.
    FromEvolution,
    /// Produced by a moment-level Miura-type map.
    FromMiura,
}

/// Moments `S_k^{m,n}` for `k = 0..=k_max`, `m = 1..=r`, `n = 1..=q`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable<K> {
    r: usize,
    q: usize,
    k_max: usize,
    data: Vec<K>,
    pub provenance: Provenance,
}

impl<K: Scalar> MomentTable<K> {
    pub fn zeros(r: usize, q: usize, k_max: usize, provenance: Provenance) -> Self {
        assert!(r >= 1 && q >= 1);
        MomentTable {
            r,
            q,
            k_max,
            data: vec![K::zero(); (k_max + 1) * r * q],
            provenance,
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    fn idx(&self, k: usize, m: usize, n: usize) -> usize {
        (k * self.r + (m - 1)) * self.q + (n - 1)
    }

    /// `S_k^{m,n}` with 1-based `m`, `n`.
    pub fn get(&self, k: usize, m: usize, n: usize) -> Result<K> {
        if k > self.k_max || m == 0 || m > self.r || n == 0 || n > self.q {
            return Err(Error::IndexBeyondTable {
                k,
                m,
                n,
                k_max: self.k_max,
                r: self.r,
                q: self.q,
            });
        }
        Ok(self.data[self.idx(k, m, n)].clone())
    }

    pub fn set(&mut self, k: usize, m: usize, n: usize, value: K) -> Result<()> {
        if k > self.k_max || m == 0 || m > self.r || n == 0 || n > self.q {
            return Err(Error::IndexBeyondTable {
                k,
                m,
                n,
                k_max: self.k_max,
                r: self.r,
                q: self.q,
            });
        }
        let i = self.idx(k, m, n);
        self.data[i] = value;
        Ok(())
    }

    /// Convert every entry to `f64`.
    pub fn to_f64(&self) -> MomentTable<f64> {
        MomentTable {
            r: self.r,
            q: self.q,
            k_max: self.k_max,
            data: self.data.iter().map(|v| v.approx()).collect(),
            provenance: self.provenance,
        }
    }
}

/// Moments of `band` up to `k_max` by iterated matrix-vector products.
///
/// Errors with [`Error::WindowTooSmall`] if the matrix is a guarded
/// truncation window too small to certify the requested depth.
pub fn compute_moments<K: Scalar>(band: &BandMatrix<K>, k_max: usize) -> Result<MomentTable<K>> {
    let r = band.upper_bandwidth();
    let q = band.lower_bandwidth();
    let size = band.size();
    if r == 0 || q == 0 || size < r.max(q) + 1 {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "moment tables need bandwidths >= 1 and size > max(r,q); got r={r}, q={q}, size={size}"
            ),
        });
    }
    let mut table = MomentTable::zeros(r, q, k_max, Provenance::FromMatrix);
    for n in 1..=q {
        let mut v = vec![K::zero(); size];
        v[n - 1] = K::one();
        for k in 0..=k_max {
            for m in 1..=r {
                table.set(k, m, n, v[m - 1].clone())?;
            }
            if k < k_max {
                v = band.apply(&v)?;
            }
        }
    }
    Ok(table)
}

/// Coordinates of entries violating a structural claim.
#[derive(Debug, Clone, Default)]
pub struct ViolationReport {
    /// `(k, m, n)` triples, in scan order.
    pub violations: Vec<(usize, usize, usize)>,
}

impl ViolationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the boundary normalization `S_l^{m,n} = δ_{m + l·r, n}` for all
/// `l ≥ 0` and `n > l·r`. Band operators with unit upper diagonal satisfy it
/// identically; it pins the normalization of evolved and mapped tables too.
pub fn check_normalization<K: Scalar>(table: &MomentTable<K>) -> ViolationReport {
    let mut report = ViolationReport::default();
    let (r, q) = (table.r, table.q);
    for l in 0..=table.k_max.min(q / r) {
        for m in 1..=r {
            for n in 1..=q {
                if n <= l * r {
                    continue;
                }
                let want_one = m + l * r == n;
                let v = table.get(l, m, n).expect("in range");
                let ok = if want_one { v.is_one() } else { v.is_zero() };
                if !ok {
                    report.violations.push((l, m, n));
                }
            }
        }
    }
    report
}

/// Check the congruence sparsity pattern of a moment table.
///
/// * family A tables (`q = 1`): `S_k^{m,1} = 0` unless `k ≡ m−1 (mod r+1)`;
/// * family B tables (`r = 1`): `S_k^{1,n} = 0` unless `k ≡ n−1 (mod q+1)`.
///
/// The pattern reflects that powers of the operator connect index 0 to itself
/// only through closed walks whose step counts balance; it fails for general
/// band matrices with both bandwidths above one.
pub fn check_sparsity<K: Scalar>(table: &MomentTable<K>, kind: Family) -> Result<ViolationReport> {
    match kind {
        Family::A if table.q != 1 => {
            return Err(Error::DimensionMismatch {
                detail: format!("family-A sparsity needs q = 1, table has q = {}", table.q),
            })
        }
        Family::B if table.r != 1 => {
            return Err(Error::DimensionMismatch {
                detail: format!("family-B sparsity needs r = 1, table has r = {}", table.r),
            })
        }
        _ => {}
    }
    let mut report = ViolationReport::default();
    for k in 0..=table.k_max {
        match kind {
            Family::A => {
                let modulus = table.r + 1;
                for m in 1..=table.r {
                    if k % modulus != (m - 1) % modulus
                        && !table.get(k, m, 1)?.is_zero()
                    {
                        report.violations.push((k, m, 1));
                    }
                }
            }
            Family::B => {
                let modulus = table.q + 1;
                for n in 1..=table.q {
                    if k % modulus != (n - 1) % modulus
                        && !table.get(k, 1, n)?.is_zero()
                    {
                        report.violations.push((k, 1, n));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Resolvent entry `((λE − M)^{-1})_{m-1,n-1}` by dense LU solve (1-based
/// `m`, `n`). Requires `|λ|` beyond the row-sum bound of `M` so the entry is
/// the sum of the convergent moment series; inside that disk the shift may
/// approach the spectrum and the answer would not be comparable to moments.
pub fn weyl_entry<K: Scalar>(
    band: &BandMatrix<K>,
    lambda: f64,
    m: usize,
    n: usize,
) -> Result<f64> {
    let size = band.size();
    if m == 0 || m > size || n == 0 || n > size {
        return Err(Error::DimensionMismatch {
            detail: format!("weyl_entry index ({m},{n}) outside 1..={size}"),
        });
    }
    let bound = band.row_sum_bound();
    if lambda.abs() <= bound {
        return Err(Error::LambdaInsideBound {
            lambda_abs: lambda.abs(),
            bound,
        });
    }
    let mut shifted = DenseMatrix::<f64>::zeros(size, size);
    for i in 0..size {
        for j in 0..size {
            let mut v = -band.get(i, j).approx();
            if i == j {
                v += lambda;
            }
            shifted.set(i, j, v);
        }
    }
    let mut rhs = vec![0.0; size];
    rhs[n - 1] = 1.0;
    let x = shifted.solve(&rhs).map_err(|_| Error::SingularShift)?;
    Ok(x[m - 1])
}

/// Truncated Neumann series `Σ_{k=0}^{k_terms} S_k^{m,n} λ^{-k-1}`.
pub fn neumann_partial<K: Scalar>(
    table: &MomentTable<K>,
    lambda: f64,
    m: usize,
    n: usize,
    k_terms: usize,
) -> Result<f64> {
    let mut acc = 0.0;
    let mut scale = 1.0 / lambda;
    for k in 0..=k_terms {
        acc += table.get(k, m, n)?.approx() * scale;
        scale /= lambda;
    }
    Ok(acc)
}

/// Bound on the Neumann remainder after the `λ^{-k_terms-1}` term:
/// `(‖M‖/|λ|)^{k_terms+1} / (|λ| − ‖M‖)` with `‖M‖` the row-sum bound.
pub fn neumann_tail_bound(norm_bound: f64, lambda_abs: f64, k_terms: usize) -> f64 {
    (norm_bound / lambda_abs).powi(k_terms as i32 + 1) / (lambda_abs - norm_bound)
}

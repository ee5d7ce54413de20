//! Characteristic polynomials of lattice operators.
//!
//! Monic representation: `p(λ) = λ^n + c_1 λ^{n-1} + ··· + c_n` with
//! `coeffs[v] = c_{v+1}`. Two routes that are cross-checked in tests:
//!
//! * exact backend: the Faddeev-LeVerrier recurrence, division-light and
//!   exact over the rationals;
//! * float backend: similarity reduction to upper Hessenberg form (lattice
//!   operators are Hessenberg already, possibly after a transpose, which
//!   leaves the polynomial unchanged) followed by the leading-minor
//!   recurrence, which avoids the cancellation blowup Faddeev-LeVerrier
//!   suffers in floating point.

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct CharPoly<K> {
    /// `coeffs[v]` multiplies `λ^{degree-1-v}`; the leading coefficient is 1.
    pub coeffs: Vec<K>,
}

impl<K: Scalar> CharPoly<K> {
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Horner evaluation of the monic polynomial.
    pub fn eval(&self, lambda: &K) -> K {
        let mut acc = K::one();
        for c in &self.coeffs {
            acc = acc * lambda.clone() + c.clone();
        }
        acc
    }

    pub fn to_f64(&self) -> CharPoly<f64> {
        CharPoly {
            coeffs: self.coeffs.iter().map(|c| c.approx()).collect(),
        }
    }
}

fn faddeev_leverrier<K: Scalar>(a: &DenseMatrix<K>) -> Result<CharPoly<K>> {
    let n = a.rows();
    let mut coeffs = Vec::with_capacity(n);
    let mut work = a.clone();
    for k in 1..=n {
        let c = -work.trace() / K::from_int(k as i64);
        coeffs.push(c.clone());
        if k < n {
            for i in 0..n {
                let v = work.get(i, i).clone() + c.clone();
                work.set(i, i, v);
            }
            work = a.mul(&work)?;
        }
    }
    Ok(CharPoly { coeffs })
}

fn is_upper_hessenberg(a: &DenseMatrix<f64>) -> bool {
    let n = a.rows();
    (0..n).all(|j| (j + 2..n).all(|i| *a.get(i, j) == 0.0))
}

/// In-place Householder reduction to upper Hessenberg form (similarity, so
/// the characteristic polynomial is preserved).
fn reduce_to_hessenberg(a: &mut DenseMatrix<f64>) {
    let n = a.rows();
    for col in 0..n.saturating_sub(2) {
        let mut v: Vec<f64> = (col + 1..n).map(|i| *a.get(i, col)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if v[0] >= 0.0 { -norm } else { norm };
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // A <- H A H with H = I - 2 v v^T / (v^T v) acting on rows/cols col+1..
        for j in 0..n {
            let dot: f64 = (0..v.len()).map(|i| v[i] * a.get(col + 1 + i, j)).sum();
            let s = 2.0 * dot / vnorm2;
            for i in 0..v.len() {
                let val = a.get(col + 1 + i, j) - s * v[i];
                a.set(col + 1 + i, j, val);
            }
        }
        for i in 0..n {
            let dot: f64 = (0..v.len()).map(|j| v[j] * a.get(i, col + 1 + j)).sum();
            let s = 2.0 * dot / vnorm2;
            for j in 0..v.len() {
                let val = a.get(i, col + 1 + j) - s * v[j];
                a.set(i, col + 1 + j, val);
            }
        }
    }
}

fn hessenberg_charpoly(h: &DenseMatrix<f64>) -> CharPoly<f64> {
    let n = h.rows();
    // p[k] = charpoly of the leading k x k block, lowest-degree term first
    let mut polys: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    polys.push(vec![1.0]);
    for k in 1..=n {
        // (λ - h_{k-1,k-1}) p_{k-1}(λ)
        let prev = &polys[k - 1];
        let mut next = vec![0.0; k + 1];
        for (d, c) in prev.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= h.get(k - 1, k - 1) * c;
        }
        // - Σ_m h_{m-1,k-1} (Π_{j=m..k-1} h_{j,j-1}) p_{m-1}(λ)
        let mut subprod = 1.0;
        for m in (1..k).rev() {
            subprod *= h.get(m, m - 1);
            let factor = h.get(m - 1, k - 1) * subprod;
            if factor != 0.0 {
                for (d, c) in polys[m - 1].iter().enumerate() {
                    next[d] -= factor * c;
                }
            }
        }
        polys.push(next);
    }
    let full = &polys[n];
    // convert to highest-degree-first with the monic lead dropped
    let coeffs: Vec<f64> = (0..n).map(|v| full[n - 1 - v]).collect();
    CharPoly { coeffs }
}

fn float_charpoly(a: &DenseMatrix<f64>) -> CharPoly<f64> {
    if is_upper_hessenberg(a) {
        return hessenberg_charpoly(a);
    }
    let t = a.transpose();
    if is_upper_hessenberg(&t) {
        return hessenberg_charpoly(&t);
    }
    let mut work = a.clone();
    reduce_to_hessenberg(&mut work);
    hessenberg_charpoly(&work)
}

/// Characteristic polynomial of a square matrix, by the backend-appropriate
/// route.
pub fn charpoly<K: Scalar>(a: &DenseMatrix<K>) -> Result<CharPoly<K>> {
    if a.rows() != a.cols() {
        return Err(Error::DimensionMismatch {
            detail: format!("charpoly of a {}x{} matrix", a.rows(), a.cols()),
        });
    }
    if K::EXACT {
        return faddeev_leverrier(a);
    }
    let mut f = DenseMatrix::<f64>::zeros(a.rows(), a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            f.set(i, j, a.get(i, j).approx());
        }
    }
    let p = float_charpoly(&f);
    Ok(CharPoly {
        coeffs: p.coeffs.into_iter().map(K::from_approx).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_l1, build_l2, Boundary, Family, LatticeState};
    use num::{BigRational, Zero};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64) -> BigRational {
        BigRational::from_int(n)
    }

    fn rats(vals: &[i64]) -> Vec<BigRational> {
        vals.iter().map(|&v| rat(v)).collect()
    }

    #[test]
    fn zero_matrix_gives_pure_power() {
        let a = DenseMatrix::<BigRational>::zeros(4, 4);
        let p = charpoly(&a).unwrap();
        assert_eq!(p.coeffs, vec![rat(0); 4]);
    }

    #[test]
    fn unit_lattice_operators_share_their_polynomial() {
        // order 2, all-ones data: both 6x6 operators have λ^6 - 4λ^3 + 1
        let want = rats(&[0, 0, -4, 0, 0, 1]);

        let sa = LatticeState::new(Family::A, 2, rats(&[1; 5]), Boundary::OpenEnd).unwrap();
        let pa = charpoly(&build_l1(&sa, 6).unwrap().to_dense()).unwrap();
        assert_eq!(pa.coeffs, want);

        let sb = LatticeState::new(Family::B, 2, rats(&[1; 4]), Boundary::OpenEnd).unwrap();
        let pb = charpoly(&build_l2(&sb, 6).unwrap().to_dense()).unwrap();
        assert_eq!(pb.coeffs, want);
    }

    #[test]
    fn float_route_matches_exact_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let n = rng.gen_range(2..=6);
            let mut exact = DenseMatrix::<BigRational>::zeros(n, n);
            let mut float = DenseMatrix::<f64>::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let v: i64 = rng.gen_range(-4..=4);
                    exact.set(i, j, rat(v));
                    float.set(i, j, v as f64);
                }
            }
            let pe = charpoly(&exact).unwrap();
            let pf = charpoly(&float).unwrap();
            for v in 0..n {
                let diff = (pe.coeffs[v].approx() - pf.coeffs[v]).abs();
                assert!(diff < 1e-8, "n={n} v={v}: {diff}");
            }
        }
    }

    #[test]
    fn float_route_handles_lower_hessenberg_by_transposing() {
        // sum-lattice operators have unit first superdiagonal and a deep
        // subdiagonal: their transpose is upper Hessenberg
        let sb = LatticeState::new(
            Family::B,
            2,
            vec![6.0, 15.0, 35.0, 77.0],
            Boundary::OpenEnd,
        )
        .unwrap();
        let pf = charpoly(&build_l2(&sb, 6).unwrap().to_dense()).unwrap();

        let se = LatticeState::new(Family::B, 2, rats(&[6, 15, 35, 77]), Boundary::OpenEnd)
            .unwrap();
        let pe = charpoly(&build_l2(&se, 6).unwrap().to_dense()).unwrap();
        for v in 0..6 {
            assert!((pf.coeffs[v] - pe.coeffs[v].approx()).abs() < 1e-8, "v={v}");
        }
    }

    #[test]
    fn matrix_satisfies_its_own_polynomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..5 {
            let n = rng.gen_range(2..=5);
            let mut a = DenseMatrix::<BigRational>::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    a.set(i, j, rat(rng.gen_range(-3..=3)));
                }
            }
            let p = charpoly(&a).unwrap();
            let mut acc = DenseMatrix::<BigRational>::identity(n);
            for c in &p.coeffs {
                acc = acc.mul(&a).unwrap();
                for i in 0..n {
                    let v = acc.get(i, i).clone() + c.clone();
                    acc.set(i, i, v);
                }
            }
            assert_eq!(acc.max_abs(), 0.0, "Cayley-Hamilton failed at n={n}");
        }
    }

    #[test]
    fn evaluation_matches_shifted_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..10 {
            let n = rng.gen_range(2..=5);
            let mut a = DenseMatrix::<BigRational>::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    a.set(i, j, rat(rng.gen_range(-3..=3)));
                }
            }
            let p = charpoly(&a).unwrap();
            let lambda = rat(rng.gen_range(-5..=5));
            let mut shifted = DenseMatrix::<BigRational>::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let mut v = -a.get(i, j).clone();
                    if i == j {
                        v = v + lambda.clone();
                    }
                    shifted.set(i, j, v);
                }
            }
            assert_eq!(p.eval(&lambda), shifted.det());
        }
    }

    #[test]
    fn dense_householder_path_agrees_with_exact() {
        // a matrix that is not Hessenberg either way forces the reduction
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let n = 6;
        let mut exact = DenseMatrix::<BigRational>::zeros(n, n);
        let mut float = DenseMatrix::<f64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v: i64 = rng.gen_range(-4..=4);
                exact.set(i, j, rat(v));
                float.set(i, j, v as f64);
            }
        }
        assert!(!is_upper_hessenberg(&float));
        assert!(!is_upper_hessenberg(&float.transpose()));
        let pe = charpoly(&exact).unwrap();
        let pf = charpoly(&float).unwrap();
        for v in 0..n {
            assert!((pe.coeffs[v].approx() - pf.coeffs[v]).abs() < 1e-7, "v={v}");
        }
        assert!(!pe.coeffs.iter().all(|c| c.is_zero()));
    }
}

//! Lattice states and their Lax operators.
//!
//! Two families are supported, both of order `p`:
//!
//! * family A (product lattice): `da_i/dt = a_i (a_{i+1}···a_{i+p} − a_{i-1}···a_{i-p})`
//! * family B (sum lattice):     `db_i/dt = b_i (b_{i+1}+···+b_{i+p} − b_{i-1}−···−b_{i-p})`
//!
//! with coefficients read as zero outside the stored index range (below 0
//! always; above the end for finite open-end systems, and as a truncation
//! surrogate for windowed semi-infinite ones).
//!
//! Each family has a matrix pair `(L, A)` such that the flow is equivalent to
//! `dL/dt = [L, A]`: family A uses the operator with unit `p`-th
//! superdiagonal and the coefficients on the first subdiagonal; family B the
//! operator with unit first superdiagonal and the coefficients on the `p`-th
//! subdiagonal. [`lax_residual`] verifies the equivalence entrywise.

use crate::band::BandMatrix;
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Product lattice (coefficients conventionally named `a_i`).
    A,
    /// Sum lattice (coefficients conventionally named `b_i`).
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Finite lattice: coefficients vanish outside `0..=N`.
    OpenEnd,
    /// Leading window of a semi-infinite lattice: only indices `0..W` stored.
    TruncatedSemiInfinite,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeState<K> {
    pub family: Family,
    pub p: usize,
    pub coeffs: Vec<K>,
    pub boundary: Boundary,
    pub time: K,
}

impl<K: Scalar> LatticeState<K> {
    pub fn new(family: Family, p: usize, coeffs: Vec<K>, boundary: Boundary) -> Result<Self> {
        if p == 0 {
            return Err(Error::DimensionMismatch {
                detail: "lattice order p must be positive".to_string(),
            });
        }
        if coeffs.is_empty() {
            return Err(Error::DimensionMismatch {
                detail: "a lattice needs at least one coefficient".to_string(),
            });
        }
        if let Some(i) = coeffs.iter().position(|c| c.is_zero()) {
            return Err(Error::ZeroCoefficient { index: i });
        }
        Ok(LatticeState {
            family,
            p,
            coeffs,
            boundary,
            time: K::zero(),
        })
    }

    pub fn with_time(mut self, t: K) -> Self {
        self.time = t;
        self
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient with the zero-padding convention.
    pub fn coeff(&self, l: isize) -> K {
        if l < 0 || l as usize >= self.coeffs.len() {
            K::zero()
        } else {
            self.coeffs[l as usize].clone()
        }
    }

    /// Lattice ODE right-hand side at every stored index.
    pub fn rhs(&self) -> Vec<K> {
        rhs_padded(self.family, self.p, &self.coeffs)
    }
}

/// Right-hand side of the lattice ODE over a plain coefficient slice with
/// zero padding on both sides.
pub fn rhs_padded<K: Scalar>(family: Family, p: usize, coeffs: &[K]) -> Vec<K> {
    let at = |l: isize| -> K {
        if l < 0 || l as usize >= coeffs.len() {
            K::zero()
        } else {
            coeffs[l as usize].clone()
        }
    };
    (0..coeffs.len())
        .map(|i| {
            let i = i as isize;
            let (fwd, bwd) = match family {
                Family::A => {
                    let mut f = K::one();
                    let mut b = K::one();
                    for j in 1..=p as isize {
                        f = f * at(i + j);
                        b = b * at(i - j);
                    }
                    (f, b)
                }
                Family::B => {
                    let mut f = K::zero();
                    let mut b = K::zero();
                    for j in 1..=p as isize {
                        f = f + at(i + j);
                        b = b + at(i - j);
                    }
                    (f, b)
                }
            };
            at(i) * (fwd - bwd)
        })
        .collect()
}

fn require_family<K: Scalar>(state: &LatticeState<K>, family: Family, op: &str) -> Result<()> {
    if state.family != family {
        return Err(Error::DimensionMismatch {
            detail: format!("{op} expects a family-{family:?} state"),
        });
    }
    if let Some(i) = state.coeffs.iter().position(|c| c.is_zero()) {
        return Err(Error::ZeroCoefficient { index: i });
    }
    Ok(())
}

fn expected_size<K: Scalar>(state: &LatticeState<K>) -> usize {
    match (state.family, state.boundary) {
        // finite: count = N+1, matrix is (N+2) x (N+2)
        (Family::A, Boundary::OpenEnd) => state.len() + 1,
        // finite: matrix is (N+p+1) x (N+p+1)
        (Family::B, Boundary::OpenEnd) => state.len() + state.p,
        // window of W coefficients: matrix is (W+p) x (W+p)
        (_, Boundary::TruncatedSemiInfinite) => state.len() + state.p,
    }
}

fn check_size<K: Scalar>(state: &LatticeState<K>, size: usize, op: &str) -> Result<()> {
    let want = expected_size(state);
    if size != want {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "{op} for {} coefficients needs size {want}, got {size}",
                state.len()
            ),
        });
    }
    Ok(())
}

/// Spectral operator of the product lattice: unit `p`-th superdiagonal,
/// coefficients on the first subdiagonal. For truncation windows the unknown
/// tail of the subdiagonal is padded with ones and the matrix is guarded so
/// the padding can never be read through [`BandMatrix::apply`].
pub fn build_l1<K: Scalar>(state: &LatticeState<K>, size: usize) -> Result<BandMatrix<K>> {
    require_family(state, Family::A, "build_l1")?;
    check_size(state, size, "build_l1")?;
    let p = state.p;
    let mut m = BandMatrix::new(size, 1, p);
    for i in 0..size.saturating_sub(p) {
        m.set(i, i + p, K::one());
    }
    for i in 0..size - 1 {
        let v = if i < state.len() {
            state.coeffs[i].clone()
        } else {
            // truncation padding (open-end sizes place every coefficient)
            K::one()
        };
        m.set(i + 1, i, v);
    }
    if state.boundary == Boundary::TruncatedSemiInfinite {
        m.restrict_valid_cols(state.len());
    }
    Ok(m)
}

/// Commutator partner for the product lattice: the `(p+1)`-st subdiagonal
/// carries the running products `a_i a_{i+1} ··· a_{i+p}` (zero-padded).
pub fn build_a1<K: Scalar>(state: &LatticeState<K>, size: usize) -> Result<BandMatrix<K>> {
    require_family(state, Family::A, "build_a1")?;
    check_size(state, size, "build_a1")?;
    let p = state.p;
    let mut m = BandMatrix::new(size, p + 1, 0);
    for i in 0..size.saturating_sub(p + 1) {
        let mut prod = K::one();
        for j in 0..=p as isize {
            prod = prod * state.coeff(i as isize + j);
        }
        if !prod.is_zero() {
            m.set(i + p + 1, i, prod);
        }
    }
    Ok(m)
}

/// Spectral operator of the sum lattice: unit first superdiagonal,
/// coefficients on the `p`-th subdiagonal. Truncation windows need no entry
/// padding (the unknown subdiagonal slots fall outside the matrix), but they
/// are guarded against bottom-edge support loss.
pub fn build_l2<K: Scalar>(state: &LatticeState<K>, size: usize) -> Result<BandMatrix<K>> {
    require_family(state, Family::B, "build_l2")?;
    check_size(state, size, "build_l2")?;
    let p = state.p;
    let mut m = BandMatrix::new(size, p, 1);
    for i in 0..size - 1 {
        m.set(i, i + 1, K::one());
    }
    for i in 0..size.saturating_sub(p).min(state.len()) {
        m.set(i + p, i, state.coeffs[i].clone());
    }
    if state.boundary == Boundary::TruncatedSemiInfinite {
        m.restrict_valid_cols(size);
    }
    Ok(m)
}

/// Commutator partner for the sum lattice: minus (diagonal of sliding sums
/// `b_{i-p} + ··· + b_i`, zero-padded, plus the unit `(p+1)`-st
/// superdiagonal).
pub fn build_a2<K: Scalar>(state: &LatticeState<K>, size: usize) -> Result<BandMatrix<K>> {
    require_family(state, Family::B, "build_a2")?;
    check_size(state, size, "build_a2")?;
    let p = state.p;
    let mut m = BandMatrix::new(size, 0, p + 1);
    for i in 0..size {
        let mut d = K::zero();
        for l in (i as isize - p as isize)..=(i as isize) {
            d = d + state.coeff(l);
        }
        if !d.is_zero() {
            m.set(i, i, -d);
        }
    }
    for i in 0..size.saturating_sub(p + 1) {
        m.set(i, i + p + 1, -K::one());
    }
    Ok(m)
}

/// `L·A − A·L` as a dense matrix.
pub fn commutator<K: Scalar>(l: &BandMatrix<K>, a: &BandMatrix<K>) -> Result<DenseMatrix<K>> {
    if l.size() != a.size() {
        return Err(Error::DimensionMismatch {
            detail: format!("commutator of sizes {} and {}", l.size(), a.size()),
        });
    }
    let ld = l.to_dense();
    let ad = a.to_dense();
    ld.mul(&ad)?.sub(&ad.mul(&ld)?)
}

/// Max-entry magnitude of `dL/dt − [L, A]`, where `dL/dt` places the lattice
/// ODE right-hand side on the coefficient subdiagonal. Exactly zero (in the
/// rational backend) if and only if the pair represents the flow.
///
/// Truncation windows are scored under their open-end interpretation (zero
/// coefficients beyond the window), for which the identity is exact.
pub fn lax_residual<K: Scalar>(state: &LatticeState<K>) -> Result<K> {
    let open = LatticeState {
        boundary: Boundary::OpenEnd,
        ..state.clone()
    };
    let size = expected_size(&open);
    let (l, a, sub_offset) = match open.family {
        Family::A => (build_l1(&open, size)?, build_a1(&open, size)?, 1usize),
        Family::B => (build_l2(&open, size)?, build_a2(&open, size)?, open.p),
    };
    let mut dl = DenseMatrix::zeros(size, size);
    for (i, v) in open.rhs().into_iter().enumerate() {
        dl.set(i + sub_offset, i, v);
    }
    let diff = dl.sub(&commutator(&l, &a)?)?;
    let mut worst = K::zero();
    for i in 0..size {
        for j in 0..size {
            let mag = diff.get(i, j).abs();
            if mag > worst {
                worst = mag;
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{BigRational, One, Zero};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64) -> BigRational {
        BigRational::from_int(n)
    }

    fn rats(vals: &[i64]) -> Vec<BigRational> {
        vals.iter().map(|&v| rat(v)).collect()
    }

    fn state_a(p: usize, vals: &[i64]) -> LatticeState<BigRational> {
        LatticeState::new(Family::A, p, rats(vals), Boundary::OpenEnd).unwrap()
    }

    fn state_b(p: usize, vals: &[i64]) -> LatticeState<BigRational> {
        LatticeState::new(Family::B, p, rats(vals), Boundary::OpenEnd).unwrap()
    }

    #[test]
    fn l1_structure_unit_data() {
        let s = state_a(2, &[1, 1, 1, 1, 1]);
        let m = build_l1(&s, 6).unwrap();
        for i in 0..4 {
            assert!(m.get(i, i + 2).is_one());
        }
        for i in 0..5 {
            assert!(m.get(i + 1, i).is_one());
        }
        assert!(m.get(0, 1).is_zero());
        m.check_spectral_shape().unwrap();
    }

    #[test]
    fn l1_places_coefficients_on_first_subdiagonal() {
        let s = state_a(2, &[2, 3, 5, 7, 11]);
        let m = build_l1(&s, 6).unwrap();
        let sub: Vec<i64> = (0..5).map(|i| m.get(i + 1, i).approx() as i64).collect();
        assert_eq!(sub, vec![2, 3, 5, 7, 11]);
    }

    #[test]
    fn l1_order_three_bandwidths() {
        let s = state_a(3, &[1, 2, 3, 4, 5]);
        let m = build_l1(&s, 6).unwrap();
        assert_eq!(m.lower_bandwidth(), 1);
        assert_eq!(m.upper_bandwidth(), 3);
        m.check_spectral_shape().unwrap();
    }

    #[test]
    fn a1_carries_running_products() {
        let s = state_a(2, &[2, 3, 5, 7, 11]);
        let m = build_a1(&s, 6).unwrap();
        assert_eq!(m.get(3, 0).approx(), 30.0);
        assert_eq!(m.get(4, 1).approx(), 105.0);
        assert_eq!(m.get(5, 2).approx(), 385.0);
    }

    #[test]
    fn l2_structure_and_a2_sliding_sums() {
        let s = state_b(2, &[6, 15, 35, 77]);
        let m = build_l2(&s, 6).unwrap();
        for i in 0..5 {
            assert!(m.get(i, i + 1).is_one());
        }
        let sub: Vec<i64> = (0..4).map(|i| m.get(i + 2, i).approx() as i64).collect();
        assert_eq!(sub, vec![6, 15, 35, 77]);
        m.check_spectral_shape().unwrap();

        let a2 = build_a2(&s, 6).unwrap();
        let diag: Vec<i64> = (0..6).map(|i| (-a2.get(i, i).approx()) as i64).collect();
        assert_eq!(diag, vec![6, 21, 56, 127, 112, 77]);
        assert_eq!(a2.get(0, 3).approx(), -1.0);
    }

    #[test]
    fn zero_coefficient_rejected() {
        let err = LatticeState::new(Family::B, 2, rats(&[1, 0, 3]), Boundary::OpenEnd);
        assert!(matches!(err, Err(Error::ZeroCoefficient { index: 1 })));
    }

    #[test]
    fn commutator_trivial_cases() {
        let s = state_a(2, &[2, 3, 5, 7, 11]);
        let l = build_l1(&s, 6).unwrap();
        let zero = commutator(&l, &l).unwrap();
        assert_eq!(zero.max_abs(), 0.0);

        let mut ident = BandMatrix::<BigRational>::new(6, 0, 0);
        for i in 0..6 {
            ident.set(i, i, rat(1));
        }
        assert_eq!(commutator(&ident, &l).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn commutator_first_subdiagonal_entry_matches_ode() {
        let s = state_a(2, &[2, 3, 5, 7, 11]);
        let l = build_l1(&s, 6).unwrap();
        let a = build_a1(&s, 6).unwrap();
        let c = commutator(&l, &a).unwrap();
        // da_0/dt = a_0 (a_1 a_2 - 0) = 2·15 = 30
        assert_eq!(c.get(1, 0), &rat(30));
    }

    #[test]
    fn lax_residual_vanishes_for_both_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let p = rng.gen_range(2..=3);
            let count = rng.gen_range(3..=8);
            let vals: Vec<i64> = (0..count)
                .map(|_| {
                    let v: i64 = rng.gen_range(1..=9);
                    if rng.gen_bool(0.3) {
                        -v
                    } else {
                        v
                    }
                })
                .collect();
            let a = state_a(p, &vals);
            assert!(lax_residual(&a).unwrap().is_zero());
            let b = state_b(p, &vals);
            assert!(lax_residual(&b).unwrap().is_zero());
        }
    }

    #[test]
    fn lax_residual_detects_broken_pair() {
        // perturbing one coefficient after the fact breaks the identity
        let s = state_a(2, &[1, 1, 1, 1, 1]);
        let size = 6;
        let l = build_l1(&s, size).unwrap();
        let mut a = build_a1(&s, size).unwrap();
        a.set(3, 0, rat(2));
        let mut dl = DenseMatrix::zeros(size, size);
        for (i, v) in s.rhs().into_iter().enumerate() {
            dl.set(i + 1, i, v);
        }
        let diff = dl.sub(&commutator(&l, &a).unwrap()).unwrap();
        assert!(diff.max_abs() > 0.0);
    }

    #[test]
    fn rhs_zero_padding_both_ends() {
        // family B, p=2, unit data: forward/backward sums truncate at the ends
        let s = state_b(2, &[1, 1, 1, 1]);
        let rhs: Vec<f64> = s.rhs().iter().map(|v| v.approx()).collect();
        assert_eq!(rhs, vec![2.0, 1.0, -1.0, -2.0]);
    }

    #[test]
    fn truncated_window_sizes_and_guards() {
        let w = 10;
        let coeffs: Vec<BigRational> = (0..w).map(|i| rat(i as i64 + 1)).collect();
        let sa =
            LatticeState::new(Family::A, 2, coeffs.clone(), Boundary::TruncatedSemiInfinite)
                .unwrap();
        let l1 = build_l1(&sa, w + 2).unwrap();
        assert!(l1.is_guarded());
        assert_eq!(l1.valid_cols(), w);
        // padded subdiagonal tail is ones
        assert!(l1.get(w + 1, w).is_one());

        let sb =
            LatticeState::new(Family::B, 2, coeffs, Boundary::TruncatedSemiInfinite).unwrap();
        let l2 = build_l2(&sb, w + 2).unwrap();
        assert!(l2.is_guarded());
        assert_eq!(l2.valid_cols(), w + 2);
    }
}

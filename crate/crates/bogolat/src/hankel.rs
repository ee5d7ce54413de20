//! Structured Hankel determinants and inverse reconstruction.
//!
//! The moments of a band operator with bandwidths `(r, q)` are arranged into
//! the structured Hankel array
//!
//! ```text
//! α_{i,j} = S^{(i mod r)+1, (j mod q)+1}_{⌊i/r⌋ + ⌊j/q⌋}
//! ```
//!
//! whose leading principal minors `Δ_k = det (α)_{0..=k, 0..=k}` (with
//! `Δ_{-1} = 1`) recover the coefficient subdiagonal of the operator:
//!
//! ```text
//! M_{i+q, i} = Δ_{i+q} Δ_{i-1} / (Δ_{i+q-1} Δ_i)
//! ```
//!
//! For the two lattice operator shapes the minors also have closed-form
//! product expressions in the coefficients, which gives an independent route
//! to the same numbers and is what makes determinant transport across the
//! Miura-type maps checkable.

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::lattice::{Boundary, Family, LatticeState};
use crate::moments::{check_normalization, check_sparsity, MomentTable};
use crate::scalar::Scalar;

/// Structured Hankel entry `α_{i,j}` (0-based `i`, `j`).
pub fn alpha<K: Scalar>(i: usize, j: usize, table: &MomentTable<K>) -> Result<K> {
    let r = table.r();
    let q = table.q();
    table.get(i / r + j / q, i % r + 1, j % q + 1)
}

/// Largest minor order `k` such that every entry of the `(k+1)×(k+1)` leading
/// block is present in a table of depth `k_max`.
pub fn max_minor_order(r: usize, q: usize, k_max: usize) -> usize {
    let mut k = 0usize;
    while (k + 1) / r + (k + 1) / q <= k_max {
        k += 1;
    }
    k
}

/// Moment depth needed to reconstruct `count` subdiagonal coefficients from
/// an `(r, q)` table: the deepest entry of the order-`(count-1+q)` minor.
pub fn depth_for_count(count: usize, r: usize, q: usize) -> usize {
    let k = count - 1 + q;
    k / r + k / q
}

/// Raw leading principal minor `Δ_k`; `k = -1` gives 1. No zero-detection:
/// vanishing minors are legitimate answers here (they detect finite rank).
pub fn hankel_minor<K: Scalar>(table: &MomentTable<K>, k: isize) -> Result<K> {
    if k < -1 {
        return Err(Error::DimensionMismatch {
            detail: format!("hankel minor index {k} below -1"),
        });
    }
    if k == -1 {
        return Ok(K::one());
    }
    let k = k as usize;
    let n = k + 1;
    let mut h = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            h.set(i, j, alpha(i, j, table)?);
        }
    }
    Ok(h.det())
}

/// The minors `Δ_{-1}..=Δ_{k_top}`, validated nonzero along the way.
#[derive(Debug, Clone)]
pub struct DeterminantLadder<K> {
    deltas: Vec<K>,
}

impl<K: Scalar> DeterminantLadder<K> {
    /// `Δ_i`, defined for `i >= -1`; all indices below 0 give 1.
    pub fn delta(&self, i: isize) -> K {
        if i < 0 {
            K::one()
        } else {
            self.deltas[i as usize].clone()
        }
    }

    pub fn top(&self) -> usize {
        self.deltas.len() - 1
    }
}

/// Compute `Δ_0..=Δ_{k_top}`, rejecting degenerate data: exact zeros under
/// the rational backend ([`Error::DegenerateMoments`]), and floating-point
/// breakdown via the pivot ratio `|Δ_k / Δ_{k-1}|` — successive leading
/// minors are related by exactly the k-th elimination pivot, so a ratio
/// below `1e-12 · max(1, ‖H_k‖_max)` marks a pivot at roundoff scale, under
/// which the reconstruction quotients can no longer be trusted
/// ([`Error::NearSingular`]).
pub fn delta_ladder<K: Scalar>(table: &MomentTable<K>, k_top: usize) -> Result<DeterminantLadder<K>> {
    let mut deltas = Vec::with_capacity(k_top + 1);
    let mut prev_abs = 1.0f64; // Δ_{-1} = 1
    for k in 0..=k_top {
        let d = hankel_minor(table, k as isize)?;
        if K::EXACT {
            if d.is_zero() {
                return Err(Error::DegenerateMoments {
                    detail: format!("exact Hankel minor {k} vanished"),
                });
            }
        } else {
            let mut norm: f64 = 0.0;
            for i in 0..=k {
                for j in 0..=k {
                    norm = norm.max(alpha(i, j, table)?.approx().abs());
                }
            }
            let abs = d.approx().abs();
            if abs <= 1e-12 * norm.max(1.0) * prev_abs {
                return Err(Error::NearSingular { k, value: abs });
            }
            prev_abs = abs;
        }
        deltas.push(d);
    }
    Ok(DeterminantLadder { deltas })
}

fn layered_product<K: Scalar>(coeffs: &[K], i: isize, q: usize) -> K {
    // Δ_{i+q} = Π_{v≥1} ( Π_{u=0}^{q-1} A_{i-(v-1)q-u} )^v
    // with A_j = coeffs[j] in range, 1 below 0 (empty boundary layers), and
    // 0 beyond the stored data (zero padding kills minors past the rank).
    let at = |l: isize| -> K {
        if l < 0 {
            K::one()
        } else if (l as usize) < coeffs.len() {
            coeffs[l as usize].clone()
        } else {
            K::zero()
        }
    };
    let mut acc = K::one();
    let mut v: isize = 1;
    loop {
        let base = i - (v - 1) * q as isize;
        if base < 0 {
            break; // every remaining layer multiplies by 1
        }
        let mut layer = K::one();
        for u in 0..q as isize {
            layer = layer * at(base - u);
        }
        for _ in 0..v {
            acc = acc.clone() * layer.clone();
        }
        v += 1;
    }
    acc
}

/// Closed form for the product-lattice minors:
/// `Δ_k = a_{k-1} a_{k-2}^2 ··· a_0^k` (zero-padded past the data; 1 for
/// `k <= 0`). The lattice order `p` does not enter the product — minors of
/// every order-`p` operator with the same subdiagonal agree.
pub fn delta_closed_form_l1<K: Scalar>(a: &[K], k: isize, p: usize) -> K {
    assert!(p >= 1);
    if k <= 0 {
        return K::one();
    }
    layered_product(a, k - 1, 1)
}

/// Closed form for the sum-lattice minors (`q = p`): layered products
/// `Δ_{i+q} = Π_{v≥1} (b_{i-(v-1)q} ··· b_{i-(v-1)q-q+1})^v` with the same
/// padding conventions; 1 for `k < q`.
pub fn delta_closed_form_l2<K: Scalar>(b: &[K], k: isize, q: usize) -> K {
    assert!(q >= 1);
    if k < q as isize {
        return K::one();
    }
    layered_product(b, k - q as isize, q)
}

/// Every subdiagonal coefficient the table depth supports, by minor
/// quotients: `M_{i+q,i} = Δ_{i+q} Δ_{i-1} / (Δ_{i+q-1} Δ_i)`.
pub fn reconstruct_subdiagonal<K: Scalar>(table: &MomentTable<K>) -> Result<Vec<K>> {
    let q = table.q();
    let max_k = max_minor_order(table.r(), q, table.k_max());
    if max_k < q {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "table depth {} supports no reconstruction (max minor {max_k}, need {q})",
                table.k_max()
            ),
        });
    }
    let count = max_k - q + 1;
    let ladder = delta_ladder(table, max_k)?;
    Ok((0..count)
        .map(|i| {
            let i = i as isize;
            let q = q as isize;
            ladder.delta(i + q) * ladder.delta(i - 1)
                / (ladder.delta(i + q - 1) * ladder.delta(i))
        })
        .collect())
}

/// Reconstruct a lattice state of the given family from a moment table,
/// after verifying the table has the normalization and congruence sparsity
/// of that family's spectral operator (first offending entry reported as
/// [`Error::SparsityViolated`]).
pub fn reconstruct_sparse_lattice<K: Scalar>(
    table: &MomentTable<K>,
    kind: Family,
    count: usize,
) -> Result<LatticeState<K>> {
    if count == 0 {
        return Err(Error::DimensionMismatch {
            detail: "cannot reconstruct an empty lattice".to_string(),
        });
    }
    let (r, q) = (table.r(), table.q());
    let p = match kind {
        Family::A => {
            if q != 1 {
                return Err(Error::DimensionMismatch {
                    detail: format!("family-A tables have q = 1, got q = {q}"),
                });
            }
            r
        }
        Family::B => {
            if r != 1 {
                return Err(Error::DimensionMismatch {
                    detail: format!("family-B tables have r = 1, got r = {r}"),
                });
            }
            q
        }
    };
    let norm = check_normalization(table);
    if let Some(&(k, m, n)) = norm.violations.first() {
        return Err(Error::SparsityViolated { k, m, n });
    }
    let sparse = check_sparsity(table, kind)?;
    if let Some(&(k, m, n)) = sparse.violations.first() {
        return Err(Error::SparsityViolated { k, m, n });
    }
    let needed = depth_for_count(count, r, q);
    if needed > table.k_max() {
        return Err(Error::IndexBeyondTable {
            k: needed,
            m: 1,
            n: 1,
            k_max: table.k_max(),
            r,
            q,
        });
    }
    let ladder = delta_ladder(table, count - 1 + q)?;
    let coeffs: Vec<K> = (0..count)
        .map(|i| {
            let i = i as isize;
            let q = q as isize;
            ladder.delta(i + q) * ladder.delta(i - 1)
                / (ladder.delta(i + q - 1) * ladder.delta(i))
        })
        .collect();
    LatticeState::new(kind, p, coeffs, Boundary::OpenEnd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_l1, build_l2};
    use crate::moments::{compute_moments, Provenance};
    use num::{BigRational, Zero};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64) -> BigRational {
        BigRational::from_int(n)
    }

    fn rats(vals: &[i64]) -> Vec<BigRational> {
        vals.iter().map(|&v| rat(v)).collect()
    }

    fn ratq(n: i64, d: i64) -> BigRational {
        rat(n) / rat(d)
    }

    fn l1_table(p: usize, vals: &[i64], k_max: usize) -> MomentTable<BigRational> {
        let s = LatticeState::new(Family::A, p, rats(vals), Boundary::OpenEnd).unwrap();
        let m = build_l1(&s, vals.len() + 1).unwrap();
        compute_moments(&m, k_max).unwrap()
    }

    fn l2_table(p: usize, vals: &[i64], k_max: usize) -> MomentTable<BigRational> {
        let s = LatticeState::new(Family::B, p, rats(vals), Boundary::OpenEnd).unwrap();
        let m = build_l2(&s, vals.len() + p).unwrap();
        compute_moments(&m, k_max).unwrap()
    }

    #[test]
    fn alpha_indexing_spot_checks() {
        let t = l1_table(2, &[2, 3, 5, 7, 11], 6);
        // α_{2,1} = S_2^{1,1} for r=2, q=1
        assert_eq!(alpha(2, 1, &t).unwrap(), t.get(2, 1, 1).unwrap());
        // α_{3,0} = S_1^{2,1} = a_0
        assert_eq!(alpha(3, 0, &t).unwrap(), rat(2));
    }

    #[test]
    fn product_lattice_ladder_fixture() {
        let t = l1_table(2, &[2, 3, 5], 4);
        let l = delta_ladder(&t, 2).unwrap();
        assert_eq!(l.delta(-1), rat(1));
        assert_eq!(l.delta(0), rat(1));
        assert_eq!(l.delta(1), rat(2)); // a_0
        assert_eq!(l.delta(2), rat(12)); // a_0^2 a_1
    }

    #[test]
    fn sum_lattice_ladder_fixture() {
        let t = l2_table(2, &[6, 15, 35, 77], 6);
        let l = delta_ladder(&t, 4).unwrap();
        let got: Vec<BigRational> = (0..=4).map(|i| l.delta(i)).collect();
        assert_eq!(got, vec![rat(1), rat(1), rat(6), rat(90), rat(18900)]);
    }

    #[test]
    fn closed_forms_match_ladders() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..15 {
            let p = rng.gen_range(2..=3);
            let count = rng.gen_range(4..=6);
            let vals: Vec<i64> = (0..count).map(|_| rng.gen_range(1..=9)).collect();
            let coeffs = rats(&vals);

            let k_hi = count as isize; // stays within the operator's rank
            let ta = l1_table(p, &vals, depth_for_count(count, p, 1));
            for k in 0..=k_hi.min(count as isize) {
                assert_eq!(
                    hankel_minor(&ta, k).unwrap(),
                    delta_closed_form_l1(&coeffs, k, p),
                    "l1 p={p} k={k} vals={vals:?}"
                );
            }

            let tb = l2_table(p, &vals, depth_for_count(count, 1, p));
            for k in 0..=(count as isize + p as isize - 1) {
                assert_eq!(
                    hankel_minor(&tb, k).unwrap(),
                    delta_closed_form_l2(&coeffs, k, p),
                    "l2 p={p} k={k} vals={vals:?}"
                );
            }
        }
    }

    #[test]
    fn minors_vanish_beyond_rank_like_closed_forms() {
        // finite open-end operator: minors past the matrix rank are zero and
        // the zero-padded closed form agrees
        let vals = [2, 3, 5];
        let t = l1_table(2, &vals, 10);
        let k = 4; // needs a_3, which does not exist
        assert!(hankel_minor(&t, k).unwrap().is_zero());
        assert!(delta_closed_form_l1(&rats(&vals), k, 2).is_zero());
    }

    #[test]
    fn q_one_degenerates_sum_form_to_product_form() {
        let coeffs = rats(&[3, 4, 5, 6]);
        for k in -1..=4 {
            assert_eq!(
                delta_closed_form_l2(&coeffs, k, 1),
                delta_closed_form_l1(&coeffs, k, 1)
            );
        }
    }

    #[test]
    fn roundtrip_is_exact_for_both_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..15 {
            let p = rng.gen_range(2..=3);
            let count = rng.gen_range(3..=6);
            let coeffs: Vec<BigRational> = (0..count)
                .map(|_| ratq(rng.gen_range(1..=9), rng.gen_range(1..=9)))
                .collect();

            let sa = LatticeState::new(Family::A, p, coeffs.clone(), Boundary::OpenEnd)
                .unwrap();
            let ma = build_l1(&sa, count + 1).unwrap();
            let ta = compute_moments(&ma, depth_for_count(count, p, 1)).unwrap();
            let back = reconstruct_sparse_lattice(&ta, Family::A, count).unwrap();
            assert_eq!(back.coeffs, coeffs);
            assert_eq!(back.p, p);

            let sb = LatticeState::new(Family::B, p, coeffs.clone(), Boundary::OpenEnd)
                .unwrap();
            let mb = build_l2(&sb, count + p).unwrap();
            let tb = compute_moments(&mb, depth_for_count(count, 1, p)).unwrap();
            let back = reconstruct_sparse_lattice(&tb, Family::B, count).unwrap();
            assert_eq!(back.coeffs, coeffs);
        }
    }

    #[test]
    fn reconstruct_subdiagonal_returns_all_supported() {
        let vals = [2, 3, 5, 7, 11];
        let t = l1_table(2, &vals, depth_for_count(5, 2, 1));
        let got = reconstruct_subdiagonal(&t).unwrap();
        assert_eq!(got, rats(&vals));
    }

    #[test]
    fn tampered_table_is_rejected() {
        let mut t = l1_table(2, &[2, 3, 5, 7, 11], 8);
        t.set(2, 1, 1, rat(1)).unwrap(); // structural zero slot
        let err = reconstruct_sparse_lattice(&t, Family::A, 3);
        assert!(matches!(err, Err(Error::SparsityViolated { k: 2, m: 1, n: 1 })));
    }

    #[test]
    fn degenerate_exact_table_is_rejected() {
        let t = MomentTable::<BigRational>::zeros(2, 1, 4, Provenance::FromMatrix);
        assert!(matches!(
            delta_ladder(&t, 2),
            Err(Error::DegenerateMoments { .. })
        ));
    }

    #[test]
    fn near_singular_float_table_is_rejected() {
        let s = LatticeState::new(
            Family::A,
            2,
            vec![1.0, 1e-20, 1.0],
            Boundary::OpenEnd,
        )
        .unwrap();
        let m = build_l1(&s, 4).unwrap();
        let t = compute_moments(&m, 6).unwrap();
        assert!(matches!(
            delta_ladder(&t, 2),
            Err(Error::NearSingular { k: 2, .. })
        ));
    }

    #[test]
    fn depth_formula_matches_minor_requirements() {
        // deepest entry of the order-k minor is α_{k,k}
        for (r, q) in [(2, 1), (3, 1), (1, 2), (1, 3), (2, 3)] {
            for count in 1..=8 {
                let k = count - 1 + q;
                assert_eq!(depth_for_count(count, r, q), k / r + k / q);
                assert!(max_minor_order(r, q, depth_for_count(count, r, q)) >= k);
            }
        }
    }
}

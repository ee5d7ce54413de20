//! Property tests: structural invariants that must hold on arbitrary data,
//! not just the worked examples — exact roundtrips, backend agreement,
//! structure preservation under evolution, commuting transformations, and
//! conservation along flows.

use bogolat::flow::{evolve_moments_series, rk4_integrate, solve_cauchy, SeriesOptions};
use bogolat::hankel::{delta_ladder, depth_for_count, reconstruct_sparse_lattice};
use bogolat::invariants::{compute_frc, lattice_charpoly, FrcKind};
use bogolat::lattice::{build_l1, build_l2, lax_residual, Boundary, Family, LatticeState};
use bogolat::miura::{miura_forward, miura_inverse, miura_moments_forward, MiuraSeeds};
use bogolat::moments::{
    check_normalization, check_sparsity, compute_moments, neumann_partial, neumann_tail_bound,
    weyl_entry,
};
use bogolat::Scalar;
use num::{BigRational, Zero};
use proptest::prelude::*;

fn rat(n: i64) -> BigRational {
    BigRational::from_int(n)
}

fn rationals(pairs: &[(i64, i64)], count: usize) -> Vec<BigRational> {
    pairs[..count]
        .iter()
        .map(|&(n, d)| rat(n) / rat(d))
        .collect()
}

fn table_for<K: Scalar>(
    state: &LatticeState<K>,
    depth: usize,
) -> bogolat::MomentTable<K> {
    let matrix = match state.family {
        Family::A => build_l1(state, state.len() + 1).unwrap(),
        Family::B => build_l2(state, state.len() + state.p).unwrap(),
    };
    compute_moments(&matrix, depth).unwrap()
}

fn family_of(product: bool) -> Family {
    if product {
        Family::A
    } else {
        Family::B
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn prop_lax_residual_is_exactly_zero(
        product in any::<bool>(),
        p in 2usize..=4,
        extra in 0usize..=4,
        pairs in proptest::collection::vec((1i64..=9, 1i64..=9), 12),
    ) {
        let count = p + 1 + extra;
        let state = LatticeState::new(
            family_of(product), p, rationals(&pairs, count), Boundary::OpenEnd,
        ).unwrap();
        let residual = lax_residual(&state).unwrap();
        prop_assert!(residual.is_zero(), "residual {residual}");
    }

    #[test]
    fn prop_moment_reconstruction_roundtrips_exactly(
        product in any::<bool>(),
        p in 2usize..=4,
        extra in 0usize..=4,
        pairs in proptest::collection::vec((1i64..=9, 1i64..=9), 12),
    ) {
        let count = p + 1 + extra;
        let family = family_of(product);
        let state = LatticeState::new(
            family, p, rationals(&pairs, count), Boundary::OpenEnd,
        ).unwrap();
        let (r, q) = match family {
            Family::A => (p, 1),
            Family::B => (1, p),
        };
        let table = table_for(&state, depth_for_count(count, r, q));
        let rebuilt = reconstruct_sparse_lattice(&table, family, count).unwrap();
        prop_assert_eq!(rebuilt.coeffs, state.coeffs);
    }

    #[test]
    fn prop_float_ladder_tracks_exact_ladder(
        product in any::<bool>(),
        p in 2usize..=3,
        extra in 0usize..=3,
        pairs in proptest::collection::vec((1i64..=9, 1i64..=9), 12),
    ) {
        let count = p + 1 + extra;
        let family = family_of(product);
        let exact = LatticeState::new(
            family, p, rationals(&pairs, count), Boundary::OpenEnd,
        ).unwrap();
        let float = LatticeState::new(
            family,
            p,
            exact.coeffs.iter().map(|c| c.approx()).collect(),
            Boundary::OpenEnd,
        ).unwrap();
        let k_top = count.min(6);
        let lx = delta_ladder(&table_for(&exact, 2 * k_top + 2), k_top).unwrap();
        let lf = delta_ladder(&table_for(&float, 2 * k_top + 2), k_top).unwrap();
        for k in 0..=k_top as isize {
            let x = lx.delta(k).approx();
            let f = lf.delta(k);
            prop_assert!(
                (x - f).abs() / x.abs().max(1.0) <= 1e-9,
                "minor {k}: exact {x}, float {f}"
            );
        }
    }

    #[test]
    fn prop_series_evolution_preserves_structure(
        product in any::<bool>(),
        p in 2usize..=3,
        pairs in proptest::collection::vec((1i64..=9, 1i64..=9), 8),
        t_num in 1i64..=3,
        t_den in 7i64..=13,
    ) {
        let count = p + 2;
        let family = family_of(product);
        let state = LatticeState::new(
            family, p, rationals(&pairs, count), Boundary::OpenEnd,
        ).unwrap();
        let stride = p + 1;
        let k_out = 2 * stride;
        let base = table_for(&state, k_out + 3 * stride);
        let t = rat(t_num) / rat(t_den);
        let opts = SeriesOptions { max_terms: 4, tail_tol: f64::INFINITY };
        let evolved = evolve_moments_series(&base, family, &t, k_out, &opts).unwrap();
        prop_assert!(check_normalization(&evolved).is_clean());
        prop_assert!(check_sparsity(&evolved, family).unwrap().is_clean());
    }

    #[test]
    fn prop_transform_commutes_with_moments(
        p in 2usize..=3,
        extra in 0usize..=2,
        pairs in proptest::collection::vec((1i64..=9, 1i64..=9), 12),
    ) {
        let count = 3 * p - 1 + extra;
        let a = LatticeState::new(
            Family::A, p, rationals(&pairs, count), Boundary::OpenEnd,
        ).unwrap();
        let k_top = 8;
        let mapped = miura_moments_forward(&table_for(&a, k_top)).unwrap();
        let direct = table_for(&miura_forward(&a).unwrap(), k_top);
        for k in 0..=k_top {
            for n in 1..=p {
                prop_assert_eq!(
                    mapped.get(k, 1, n).unwrap(),
                    direct.get(k, 1, n).unwrap(),
                    "k={}, n={}", k, n
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn prop_cauchy_pipeline_matches_direct_integration(
        product in any::<bool>(),
        milli in proptest::collection::vec(500u32..=1500, 4),
    ) {
        let family = family_of(product);
        let coeffs: Vec<f64> = milli.iter().map(|&m| m as f64 / 1000.0).collect();
        let state = LatticeState::new(family, 2, coeffs, Boundary::OpenEnd).unwrap();
        let got = solve_cauchy(&state, &[0.02], 4, &SeriesOptions::default()).unwrap();
        let oracle = rk4_integrate(&state, 0.02, 1e-5, false).unwrap();
        let truth = oracle.states.last().unwrap();
        for (x, y) in got[0].coeffs.iter().zip(truth) {
            prop_assert!((x - y).abs() <= 1e-7, "{x} vs {y}");
        }
    }

    #[test]
    fn prop_inverse_gauge_freedom(
        seed_milli in 200u32..=5000,
        milli in proptest::collection::vec(500u32..=1500, 5),
    ) {
        // any positive seed yields a preimage with the same forward image
        let a0_coeffs: Vec<f64> = milli.iter().map(|&m| m as f64 / 1000.0).collect();
        let a0 = LatticeState::new(Family::A, 2, a0_coeffs, Boundary::OpenEnd).unwrap();
        let b_traj = rk4_integrate(&miura_forward(&a0).unwrap(), 0.05, 1e-3, true).unwrap();
        let seeds = MiuraSeeds { a_leading: vec![seed_milli as f64 / 1000.0] };
        let inv = miura_inverse(&b_traj, &seeds).unwrap();
        let last = inv.lattice_state(inv.len() - 1).unwrap();
        let image = miura_forward(&last).unwrap();
        for (x, y) in image.coeffs.iter().zip(b_traj.states.last().unwrap()) {
            prop_assert!((x - y).abs() <= 1e-6, "{x} vs {y}");
        }
    }
}

#[test]
fn charpoly_coefficients_are_constant_along_both_flows() {
    for (family, coeffs, p) in [
        (Family::A, vec![1.0, 0.7, 1.2, 0.9, 1.1], 2usize),
        (Family::B, vec![0.8, 1.1, 0.9, 1.3], 2),
        (Family::B, vec![0.8, 1.1, 0.9, 1.3, 0.7], 3),
    ] {
        let state = LatticeState::new(family, p, coeffs, Boundary::OpenEnd).unwrap();
        let start = lattice_charpoly(&state).unwrap();
        let traj = rk4_integrate(&state, 0.3, 1e-3, false).unwrap();
        let mut worst = 0.0f64;
        for i in (0..traj.len()).step_by(50) {
            let poly = lattice_charpoly(&traj.lattice_state(i).unwrap()).unwrap();
            for (x, y) in poly.coeffs.iter().zip(&start.coeffs) {
                worst = worst.max((x - y).abs());
            }
        }
        assert!(worst <= 1e-7, "{family:?}: spectral drift {worst}");
    }
}

#[test]
fn product_side_block_recurrence_is_an_extra_integral() {
    // the D vector is conserved although it is not a charpoly coefficient
    let a0 = LatticeState::new(
        Family::A,
        2,
        vec![1.0, 0.7, 1.2, 0.9, 1.1],
        Boundary::OpenEnd,
    )
    .unwrap();
    let n_upper = a0.len() - 1;
    let traj = rk4_integrate(&a0, 0.3, 1e-3, false).unwrap();
    let frc_at = |i: usize| -> Vec<f64> {
        let state = traj.lattice_state(i).unwrap();
        let table = compute_moments(&build_l1(&state, 6).unwrap(), 16).unwrap();
        compute_frc(&table, FrcKind::D, n_upper, 2).unwrap().values
    };
    let start = frc_at(0);
    let mut worst = 0.0f64;
    for i in (0..traj.len()).step_by(50) {
        for (x, y) in frc_at(i).iter().zip(&start) {
            worst = worst.max((x - y).abs());
        }
    }
    assert!(worst <= 1e-7, "block-recurrence drift {worst}");
}

#[test]
fn resolvent_error_shrinks_with_the_neumann_tail() {
    let state = LatticeState::new(
        Family::B,
        2,
        vec![0.9, 1.2, 0.7, 1.1, 0.8],
        Boundary::OpenEnd,
    )
    .unwrap();
    let matrix = build_l2(&state, 7).unwrap();
    let bound = matrix.row_sum_bound();
    let lambda = 2.5 * bound;
    let table = compute_moments(&matrix, 40).unwrap();
    let exact = weyl_entry(&matrix, lambda, 1, 2).unwrap();
    let mut last_allowance = f64::INFINITY;
    for k_terms in [10usize, 20, 30, 40] {
        let partial = neumann_partial(&table, lambda, 1, 2, k_terms).unwrap();
        let tail = neumann_tail_bound(bound, lambda, k_terms);
        let err = (exact - partial).abs();
        assert!(err <= tail * (1.0 + 1e-6) + 1e-13, "k={k_terms}: {err} > {tail}");
        assert!(tail < last_allowance, "tail bound must shrink");
        last_allowance = tail;
    }
}

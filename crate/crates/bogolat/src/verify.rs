//! Self-verification register: twelve end-to-end checks, each scoring one
//! published claim of the library against an independent oracle (exact
//! arithmetic, direct ODE integration, closed forms, or rigorous tail
//! bounds). The register is both the acceptance gate of the test suite and
//! the engine behind the CLI `verify` subcommand.

use num::{BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::flow::{rk4_integrate, solve_cauchy, SeriesOptions};
use crate::hankel::{
    delta_closed_form_l1, delta_closed_form_l2, delta_ladder, depth_for_count,
    reconstruct_sparse_lattice,
};
use crate::invariants::{
    compute_frc, lattice_charpoly, monitor_integrals, verify_d_tilde_nonconstancy,
    verify_minimal_rank, verify_recurrence, verify_s31_identity, FrcKind, IntegralMonitor,
};
use crate::lattice::{build_l1, build_l2, lax_residual, Boundary, Family, LatticeState};
use crate::miura::{
    miura_forward, miura_inverse, miura_moments_forward, push_forward,
    verify_determinant_transport, MiuraSeeds,
};
use crate::moments::{compute_moments, neumann_partial, neumann_tail_bound, weyl_entry};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl CriterionReport {
    /// One-line pass/fail summary.
    pub fn line(&self) -> String {
        format!(
            "criterion {:2} ({}): {} — {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.details
        )
    }
}

fn finish(
    id: usize,
    name: &'static str,
    outcome: Result<(bool, String)>,
) -> CriterionReport {
    match outcome {
        Ok((passed, details)) => CriterionReport {
            id,
            name,
            passed,
            details,
        },
        Err(e) => CriterionReport {
            id,
            name,
            passed: false,
            details: format!("aborted: {e}"),
        },
    }
}

fn rng_for(seed: u64, id: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(100).wrapping_add(id))
}

fn rat(n: i64) -> BigRational {
    BigRational::from_int(n)
}

fn rats(vals: &[i64]) -> Vec<BigRational> {
    vals.iter().map(|&v| rat(v)).collect()
}

fn random_rationals(rng: &mut ChaCha8Rng, count: usize) -> Vec<BigRational> {
    (0..count)
        .map(|_| rat(rng.gen_range(1..=9)) / rat(rng.gen_range(1..=9)))
        .collect()
}

fn rational_state(
    rng: &mut ChaCha8Rng,
    family: Family,
    p: usize,
    count: usize,
) -> Result<LatticeState<BigRational>> {
    LatticeState::new(family, p, random_rationals(rng, count), Boundary::OpenEnd)
}

fn state_table<K: Scalar>(state: &LatticeState<K>, depth: usize) -> Result<crate::MomentTable<K>> {
    let matrix = match state.family {
        Family::A => build_l1(state, state.len() + 1)?,
        Family::B => build_l2(state, state.len() + state.p)?,
    };
    compute_moments(&matrix, depth)
}

/// 1 — the operator pairs reproduce the lattice equations exactly.
pub fn criterion_1(seed: u64) -> CriterionReport {
    let body = || -> Result<(bool, String)> {
        let mut rng = rng_for(seed, 1);
        let mut checked = 0usize;
        let mut worst = 0.0f64;
        for family in [Family::A, Family::B] {
            for _ in 0..50 {
                let p = rng.gen_range(2..=3);
                let count = rng.gen_range(2..=9);
                let state = rational_state(&mut rng, family, p, count)?;
                let residual = lax_residual(&state)?;
                worst = worst.max(residual.approx().abs());
                if !residual.is_zero() {
                    return Ok((
                        false,
                        format!("nonzero residual {residual} for {family:?}, p={p}, count={count}"),
                    ));
                }
                checked += 1;
            }
        }
        Ok((
            true,
            format!("{checked} random rational states, residual exactly 0 (worst |·| = {worst})"),
        ))
    };
    finish(1, "lax pair identities", body())
}

/// 2 — moments → structured Hankel → coefficients is the exact identity.
pub fn criterion_2(seed: u64) -> CriterionReport {
    let body = || -> Result<(bool, String)> {
        let mut rng = rng_for(seed, 2);
        let mut checked = 0usize;
        for family in [Family::A, Family::B] {
            for _ in 0..50 {
                let p = rng.gen_range(2..=3);
                let count = rng.gen_range(p..=8);
                let state = rational_state(&mut rng, family, p, count)?;
                let (r, q) = match family {
                    Family::A => (p, 1),
                    Family::B => (1, p),
                };
                let table = state_table(&state, depth_for_count(count, r, q))?;
                let rebuilt = reconstruct_sparse_lattice(&table, family, count)?;
                if rebuilt.coeffs != state.coeffs {
                    return Ok((
                        false,
                        format!("roundtrip mismatch for {family:?}, p={p}, count={count}"),
                    ));
                }
                checked += 1;
            }
        }
        Ok((true, format!("{checked} exact roundtrips, coefficients identical")))
    };
    finish(2, "reconstruction roundtrip", body())
}

/// 3 — determinant ladders equal their closed-form products.
pub fn criterion_3(seed: u64) -> CriterionReport {
    let body = || -> Result<(bool, String)> {
        let mut rng = rng_for(seed, 3);
        let mut checked = 0usize;
        for family in [Family::A, Family::B] {
            for _ in 0..50 {
                let p = rng.gen_range(2..=3);
                let count = rng.gen_range(3..=8);
                let state = rational_state(&mut rng, family, p, count)?;
                let k_top = count.min(8);
                let table = state_table(&state, 2 * k_top + 2)?;
                let ladder = delta_ladder(&table, k_top)?;
                for k in -1..=(k_top as isize) {
                    let closed = match family {
                        Family::A => delta_closed_form_l1(&state.coeffs, k, p),
                        Family::B => delta_closed_form_l2(&state.coeffs, k, p),
                    };
                    if ladder.delta(k) != closed {
                        return Ok((
                            false,
                            format!("ladder != closed form at k={k}, {family:?}, p={p}"),
                        ));
                    }
                    checked += 1;
                }
            }
        }
        // spot value: order 2, a = (2,3,5) has second minor 12
        let spot = LatticeState::new(Family::A, 2, rats(&[2, 3, 5]), Boundary::OpenEnd)?;
        let ladder = delta_ladder(&state_table(&spot, 8)?, 2)?;
        if ladder.delta(2) != rat(12) {
            return Ok((false, format!("spot minor: expected 12, got {}", ladder.delta(2))));
        }
        Ok((
            true,
            format!("{checked} exact minor comparisons, spot value Δ_2(2,3,5) = 12"),
        ))
    };
    finish(3, "determinant closed forms", body())
}

/// 4 — the moment tables of direct-ODE states satisfy the moment ODE
/// (central difference vs analytic right-hand side).
pub fn criterion_4(_seed: u64) -> CriterionReport {
    let body = || -> Result<(bool, String)> {
        let h = 1e-4;
        let depth = 12usize;
        let mut worst = 0.0f64;
        for (family, coeffs, p) in [
            (Family::A, vec![1.0, 0.6, 1.3, 0.8, 1.1], 2usize),
            (Family::B, vec![0.9, 0.5, 1.2, 0.7], 2usize),
            (Family::A, vec![0.8, 1.1, 0.7, 1.2, 0.9, 1.0, 0.6], 3usize),
            (Family::B, vec![1.1, 0.8, 0.6, 1.3, 0.9], 3usize),
        ] {
            let state = LatticeState::new(family, p, coeffs, Boundary::OpenEnd)?;
            let traj = rk4_integrate(&state, 6.0 * h, h, false)?;
            let stride = p + 1;
            for j in 1..=5usize {
                let t_prev = state_table(&traj.lattice_state(j - 1)?, depth)?;
                let t_mid = state_table(&traj.lattice_state(j)?, depth)?;
                let t_next = state_table(&traj.lattice_state(j + 1)?, depth)?;
                let rhs = crate::flow::moment_rhs(&t_mid, family)?;
                for k in 0..=depth - stride {
                    for m in 1..=t_mid.r() {
                        for n in 1..=t_mid.q() {
                            let cd = (t_next.get(k, m, n)? - t_prev.get(k, m, n)?) / (2.0 * h);
                            let want = rhs.get(k, m, n)?;
                            let rel = (cd - want).abs() / want.abs().max(1.0);
                            worst = worst.max(rel);
                        }
                    }
                }
            }
        }
        Ok((
            worst <= 1e-5,
            format!("worst relative defect {worst:.3e} over 5 sample times per family (tolerance 1e-5)"),
        ))
    };
    finish(4, "moment evolution ODE", body())
}

/// 5 — the inverse-spectral Cauchy pipeline matches direct integration, and
/// widening a truncation window does not change the certified answer.
pub fn criterion_5(_seed: u64) -> CriterionReport {
    let body = || -> Result<(bool, String)> {
        // finite example
        let a = LatticeState::new(
            Family::A,
            2,
            vec![2.0, 3.0, 5.0, 7.0, 11.0],
            Boundary::OpenEnd,
        )?;
        let grid = [0.05, 0.1];
        let cauchy = solve_cauchy(&a, &grid, 5, &SeriesOptions::default())?;
        let oracle = rk4_integrate(&a, 0.1, 1e-4, false)?;
        let mut worst_finite = 0.0f64;
        for (state, idx) in cauchy.iter().zip([500usize, 1000]) {
            for (x, y) in state.coeffs.iter().zip(&oracle.states[idx]) {
                worst_finite = worst_finite.max((x - y).abs());
            }
        }

        // truncation window, certified depth
        let opts = SeriesOptions {
            max_terms: 10,
            tail_tol: 1e-8,
        };
        let window = |w: usize| -> Result<Vec<f64>> {
            let state = LatticeState::new(
                Family::A,
                2,
                vec![1.0; w],
                Boundary::TruncatedSemiInfinite,
            )?;
            Ok(solve_cauchy(&state, &[0.1], 8, &opts)?[0].coeffs.clone())
        };
        let w40 = window(40)?;
        let w40_state = LatticeState::new(
            Family::A,
            2,
            vec![1.0; 40],
            Boundary::TruncatedSemiInfinite,
        )?;
        let rk_w40 = rk4_integrate(&w40_state, 0.1, 1e-4, false)?;
        let mut worst_window = 0.0f64;
        for (x, y) in w40.iter().zip(rk_w40.states.last().unwrap()) {
            worst_window = worst_window.max((x - y).abs());
        }

        let w80 = window(80)?;
        let mut doubling = 0.0f64;
        for (x, y) in w40.iter().zip(&w80) {
            doubling = doubling.max((x - y).abs());
        }

        let passed = worst_finite <= 1e-6 && worst_window <= 1e-6 && doubling < 1e-12;
        Ok((
            passed,
            format!(
                "finite vs direct ODE {worst_finite:.3e} (tol 1e-6), W=40 vs direct {worst_window:.3e} \
                 (tol 1e-6), W=40→80 doubling {doubling:.3e} (tol 1e-12)"
            ),
        ))
    };
    finish(5, "cauchy pipeline vs direct ODE", body())
}

/// 6 — the coefficient-level and moment-level transformations commute
/// exactly, and the inverse map recovers trajectories.
pub fn criterion_6(seed: u64) -> CriterionReport {
    let body = || -> Result<(bool, String)> {
        let mut rng = rng_for(seed, 6);
        let k_top = 10usize;
        for _ in 0..25 {
            let p = rng.gen_range(2..=3);
            let count = rng.gen_range(3 * p - 1..=3 * p + 2);
            let a = rational_state(&mut rng, Family::A, p, count)?;
            let mapped = miura_moments_forward(&state_table(&a, k_top)?)?;
            let direct = state_table(&miura_forward(&a)?, k_top)?;
            for k in 0..=k_top {
                for n in 1..=p {
                    if mapped.get(k, 1, n)? != direct.get(k, 1, n)? {
                        return Ok((
                            false,
                            format!("square mismatch at k={k}, n={n}, p={p}, count={count}"),
                        ));
                    }
                }
            }
        }

        // inverse along trajectories: quadrature route and co-integrated route
        let a0 = LatticeState::new(
            Family::A,
            2,
            vec![2.0, 3.0, 5.0, 7.0, 11.0],
            Boundary::OpenEnd,
        )?;
        let seeds = MiuraSeeds::from_state(&a0);
        let a_oracle = rk4_integrate(&a0, 0.2, 5e-5, false)?;

        let via_quadrature = miura_inverse(&push_forward(&a_oracle)?, &seeds)?;
        let b_direct = rk4_integrate(&miura_forward(&a0)?, 0.2, 5e-5, true)?;
        let via_aux = miura_inverse(&b_direct, &seeds)?;

        let mut worst = 0.0f64;
        for route in [&via_quadrature, &via_aux] {
            for (rec, truth) in route.states.iter().zip(&a_oracle.states) {
                for (x, y) in rec.iter().zip(truth) {
                    worst = worst.max((x - y).abs());
                }
            }
        }
        Ok((
            worst <= 1e-7,
            format!(
                "25 exact commuting squares (depth {k_top}); inverse roundtrip worst error \
                 {worst:.3e} over both quadrature routes (tol 1e-7)"
            ),
        ))
    };
    finish(6, "miura commuting square and inverse", body())
}

/// 7 — Hankel minors of the transformed table equal the layered products of
/// the transformed coefficients.
pub fn criterion_7(seed: u64) -> CriterionReport {
    let body = || -> Result<(bool, String)> {
        let mut rng = rng_for(seed, 7);
        let instance = LatticeState::new(Family::A, 2, rats(&[2, 3, 5, 7, 11]), Boundary::OpenEnd)?;
        let report = verify_determinant_transport(&instance, 8)?;
        if !report.is_clean() {
            return Ok((false, format!("instance mismatches at {:?}", report.mismatches)));
        }
        let mut checked = report.k_checked;
        for _ in 0..20 {
            let p = rng.gen_range(2..=3);
            let count = rng.gen_range(3 * p - 1..=3 * p + 2);
            let a = rational_state(&mut rng, Family::A, p, count)?;
            let report = verify_determinant_transport(&a, 8)?;
            if !report.is_clean() {
                return Ok((
                    false,
                    format!("mismatch at orders {:?} for p={p}, count={count}", report.mismatches),
                ));
            }
            checked += report.k_checked;
        }
        Ok((true, format!("{checked} minor orders transported exactly (k ≤ 8)")))
    };
    finish(7, "determinant transport", body())
}

/// 8 — the order-2 worked example: recurrence vectors and characteristic
/// polynomials with unit initial data.
pub fn criterion_8(_seed: u64) -> CriterionReport {
    let body = || -> Result<(bool, String)> {
        let a = LatticeState::new(Family::A, 2, rats(&[1; 5]), Boundary::OpenEnd)?;
        let b = LatticeState::new(Family::B, 2, rats(&[1; 4]), Boundary::OpenEnd)?;
        let ta = state_table(&a, 12)?;
        let tb = state_table(&b, 12)?;

        let cases: [(FrcKind, &LatticeState<BigRational>, [i64; 6]); 4] = [
            (FrcKind::C, &a, [0, 0, 4, 0, 0, -1]),
            (FrcKind::D, &a, [0, 0, 2, 0, 0, -1]),
            (FrcKind::CTilde, &b, [0, 0, 4, 0, 0, -1]),
            (FrcKind::DTilde, &b, [0, 0, 2, 0, 0, -1]),
        ];
        for (kind, state, expected) in cases {
            let table = if kind.is_product_side() { &ta } else { &tb };
            let frc = compute_frc(table, kind, state.len() - 1, 2)?;
            if frc.values != rats(&expected) {
                return Ok((false, format!("{kind:?} = {:?}, expected {expected:?}", frc.values)));
            }
        }

        let pa = lattice_charpoly(&a)?;
        let pb = lattice_charpoly(&b)?;
        let expected = rats(&[0, 0, -4, 0, 0, 1]); // λ⁶ − 4λ³ + 1
        if pa.coeffs != expected || pb.coeffs != expected {
            return Ok((
                false,
                format!("charpolys {:?} / {:?}, expected {expected:?}", pa.coeffs, pb.coeffs),
            ));
        }
        Ok((
            true,
            "all four recurrence vectors and both characteristic polynomials (λ⁶−4λ³+1) exact"
                .to_string(),
        ))
    };
    finish(8, "worked example", body())
}

/// 9 — first integrals are conserved under direct integration with
/// fourth-order step-halving behaviour, and the non-conserved sum-side slot
/// visibly moves.
pub fn criterion_9(_seed: u64) -> CriterionReport {
    let body = || -> Result<(bool, String)> {
        let drifts = |coeffs: &[f64], dt: f64| -> Result<Vec<f64>> {
            let b0 = LatticeState::new(Family::B, 2, coeffs.to_vec(), Boundary::OpenEnd)?;
            let traj = rk4_integrate(&b0, 1.0, dt, true)?;
            let reports = monitor_integrals(
                &traj,
                &[
                    IntegralMonitor::CoefficientSum,
                    IntegralMonitor::EndpointProductNeg,
                    IntegralMonitor::CrossRatioNeg,
                    IntegralMonitor::GaugeRatio { a0_initial: 1.0 },
                ],
            )?;
            Ok(reports.iter().map(|r| r.drift).collect())
        };

        let mut lines = Vec::new();
        let mut passed = true;
        for coeffs in [[1.0, 1.0, 1.0, 1.0], [1.0, 2.0, 3.0, 4.0]] {
            let coarse = drifts(&coeffs, 1e-3)?;
            let fine = drifts(&coeffs, 5e-4)?;
            // the linear integral is conserved identically by the integrator,
            // so its drift sits at the roundoff floor at every step size
            passed &= coarse[0] <= 1e-12 && fine[0] <= 1e-12;
            // the nonlinear integrals drift at the integrator's order and
            // must shrink at least tenfold under step halving — unless the
            // drift already sits at the roundoff floor, where order scaling
            // is unobservable (and conservation is beyond question)
            let tols = [1e-8, 1e-8, 1e-7];
            for (j, tol) in tols.iter().enumerate() {
                let (c, f) = (coarse[j + 1], fine[j + 1]);
                passed &= c <= *tol && (c <= 1e-12 || c / f >= 10.0);
            }
            lines.push(format!(
                "b(0)={coeffs:?}: drifts {:.1e}/{:.1e}/{:.1e}/{:.1e}, halving ratios {:.1}/{:.1}/{:.1}",
                coarse[0], coarse[1], coarse[2], coarse[3],
                coarse[1] / fine[1], coarse[2] / fine[2], coarse[3] / fine[3],
            ));
        }

        // non-conservation witness
        let witness = |dt: f64| -> Result<(f64, f64)> {
            let b0 =
                LatticeState::new(Family::B, 2, vec![1.0, 2.0, 3.0, 4.0], Boundary::OpenEnd)?;
            let traj = rk4_integrate(&b0, 1.0, dt, false)?;
            let rep = verify_d_tilde_nonconstancy(&traj)?;
            Ok((rep.moving_slot_drift, rep.conserved_slot_drift))
        };
        let (move_coarse, cons_coarse) = witness(1e-3)?;
        let (move_fine, cons_fine) = witness(5e-4)?;
        let ratio = move_coarse / move_fine;
        passed &= move_coarse > 1e-4
            && move_fine > 1e-4
            && (0.9..=1.1).contains(&ratio)
            && cons_coarse <= 1e-8
            && cons_fine <= 1e-8;
        lines.push(format!(
            "witness slot drift {move_coarse:.3} (dt-halving ratio {ratio:.6}, a real motion), \
             conserved slot {cons_coarse:.1e}"
        ));

        Ok((passed, lines.join("; ")))
    };
    finish(9, "first-integral conservation", body())
}

/// 10 — the k-direction recurrence vectors negate the characteristic
/// polynomial, extend past their solve window, and sit at minimal rank.
pub fn criterion_10(seed: u64) -> CriterionReport {
    let body = || -> Result<(bool, String)> {
        let mut rng = rng_for(seed, 10);
        let mut checked = 0usize;
        for family in [Family::A, Family::B] {
            for _ in 0..25 {
                let p = rng.gen_range(2..=3);
                let count = rng.gen_range(3..=6);
                let state = rational_state(&mut rng, family, p, count)?;
                let kind = match family {
                    Family::A => FrcKind::C,
                    Family::B => FrcKind::CTilde,
                };
                let m_sys = kind.system_size(count - 1, p);
                let table = state_table(&state, m_sys + m_sys / p + 1)?;
                let frc = compute_frc(&table, kind, count - 1, p)?;
                let poly = lattice_charpoly(&state)?;
                for v in 0..poly.degree() {
                    if frc.values[v] != -poly.coeffs[v].clone() {
                        return Ok((
                            false,
                            format!("{kind:?}[{v}] != -charpoly[{v}] for {family:?}, p={p}"),
                        ));
                    }
                }
                checked += 1;
            }
        }

        // overdetermination and minimal rank on the running examples
        let a = LatticeState::new(Family::A, 2, rats(&[2, 3, 5, 7, 11]), Boundary::OpenEnd)?;
        let b = LatticeState::new(Family::B, 2, rats(&[1, 2, 3, 4]), Boundary::OpenEnd)?;
        let ta = state_table(&a, 28)?;
        let tb = state_table(&b, 28)?;
        for (kind, table, n_upper) in [
            (FrcKind::C, &ta, 4usize),
            (FrcKind::D, &ta, 4),
            (FrcKind::CTilde, &tb, 3),
            (FrcKind::DTilde, &tb, 3),
        ] {
            let frc = compute_frc(table, kind, n_upper, 2)?;
            let violations = verify_recurrence(table, &frc, 10)?;
            if !violations.is_empty() {
                return Ok((
                    false,
                    format!("{kind:?} recurrence broke past the window at {violations:?}"),
                ));
            }
        }
        if !verify_minimal_rank(&ta, 6)? || !verify_minimal_rank(&tb, 6)? {
            return Ok((false, "rank of a moment array is not minimal".to_string()));
        }
        Ok((
            true,
            format!(
                "{checked} exact charpoly negations; all four recurrences hold 10 indices past \
                 the solve window; ranks minimal"
            ),
        ))
    };
    finish(10, "finite-rank recurrences", body())
}

/// 11 — the explicit third-moment identity.
pub fn criterion_11(seed: u64) -> CriterionReport {
    let body = || -> Result<(bool, String)> {
        let mut rng = rng_for(seed, 11);
        let instance = LatticeState::new(Family::A, 2, rats(&[2, 3, 5, 7, 11]), Boundary::OpenEnd)?;
        if !verify_s31_identity(&instance)? {
            return Ok((false, "identity failed on a=(2,3,5,7,11)".to_string()));
        }
        for _ in 0..25 {
            let a = rational_state(&mut rng, Family::A, 2, 5)?;
            if !verify_s31_identity(&a)? {
                return Ok((false, format!("identity failed on {:?}", a.coeffs)));
            }
        }
        Ok((
            true,
            "25 random rational lattices + instance (6 = 20 − 14), exact both at moment \
             and transformed-moment level"
                .to_string(),
        ))
    };
    finish(11, "third-moment identity", body())
}

/// 12 — resolvent entries agree with truncated moment series within the
/// geometric tail bound.
pub fn criterion_12(seed: u64) -> CriterionReport {
    let body = || -> Result<(bool, String)> {
        let mut rng = rng_for(seed, 12);
        let k_terms = 30usize;
        let mut worst_margin = f64::INFINITY;
        for case in 0..50 {
            let family = if case % 2 == 0 { Family::A } else { Family::B };
            let p = rng.gen_range(2..=3);
            let count = rng.gen_range(5..=10);
            let coeffs: Vec<f64> = (0..count).map(|_| rng.gen_range(0.3..1.7)).collect();
            let state = LatticeState::new(family, p, coeffs, Boundary::OpenEnd)?;
            let matrix = match family {
                Family::A => build_l1(&state, count + 1)?,
                Family::B => build_l2(&state, count + p)?,
            };
            let bound = matrix.row_sum_bound();
            let lambda = (2.0 * bound + rng.gen_range(0.0..2.0))
                * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let (m, n) = match family {
                Family::A => (rng.gen_range(1..=p), 1),
                Family::B => (1, rng.gen_range(1..=p)),
            };
            let table = compute_moments(&matrix, k_terms)?;
            let exact = weyl_entry(&matrix, lambda, m, n)?;
            let partial = neumann_partial(&table, lambda, m, n, k_terms)?;
            let tail = neumann_tail_bound(bound, lambda.abs(), k_terms);
            let err = (exact - partial).abs();
            let allowance = tail * (1.0 + 1e-6) + 1e-13;
            worst_margin = worst_margin.min(allowance - err);
            if err > allowance {
                return Ok((
                    false,
                    format!(
                        "entry ({m},{n}) at λ={lambda:.3}: error {err:.3e} above tail bound {tail:.3e}"
                    ),
                ));
            }
        }
        Ok((
            true,
            format!("50 random (operator, λ) pairs within the geometric tail bound \
                     (worst margin {worst_margin:.3e})"),
        ))
    };
    finish(12, "resolvent vs moment series", body())
}

/// Run the full register. `seed` fixes every random draw, so a given seed is
/// exactly reproducible.
pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    vec![
        criterion_1(seed),
        criterion_2(seed),
        criterion_3(seed),
        criterion_4(seed),
        criterion_5(seed),
        criterion_6(seed),
        criterion_7(seed),
        criterion_8(seed),
        criterion_9(seed),
        criterion_10(seed),
        criterion_11(seed),
        criterion_12(seed),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_are_deterministic_per_seed() {
        let a = criterion_1(7);
        let b = criterion_1(7);
        assert_eq!(a.details, b.details);
        assert_eq!(a.passed, b.passed);
    }

    #[test]
    fn line_format_is_stable() {
        let r = CriterionReport {
            id: 3,
            name: "determinant closed forms",
            passed: true,
            details: "ok".to_string(),
        };
        assert_eq!(r.line(), "criterion  3 (determinant closed forms): PASS — ok");
    }
}

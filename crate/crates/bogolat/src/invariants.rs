//! First integrals of the finite lattices via finite-rank coefficients.
//!
//! A finite lattice's structured Hankel array has finite rank `M` (`N+2` for
//! the product lattice, `N+p+1` for the sum lattice, `N` the top coefficient
//! index). Rank-`M` data satisfies linear recurrences across the array
//! boundary; their coefficient vectors are the *finite-rank coefficients*:
//!
//! * `C` (product side) and `C̃` (sum side) extend the array in its
//!   k-direction. These are Cayley-Hamilton relations of the operator, so
//!   they hold for **every** line of the array past the boundary, and
//!   `C_v = −c_{v+1}` with `c` the characteristic polynomial coefficients.
//! * `D` (product side) and `D̃` (sum side) extend the array in the block
//!   direction. These hold **only along the boundary chain** — a genuinely
//!   different set of identities, not a reindexing of `C`.
//!
//! Along a lattice trajectory the `C`, `D`, `C̃` vectors are conserved; the
//! `D̃` vector is not — one of its slots moves while another coincides with a
//! true integral, which [`verify_d_tilde_nonconstancy`] demonstrates on the
//! standard order-2, four-coefficient witness.

use crate::charpoly::{charpoly, CharPoly};
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::flow::Trajectory;
use crate::hankel::{alpha, hankel_minor};
use crate::lattice::{build_l1, build_l2, Boundary, Family, LatticeState};
use crate::miura::cumulative_integral;
use crate::moments::{compute_moments, MomentTable};
use crate::scalar::Scalar;

pub use crate::charpoly::CharPoly as CharacteristicPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrcKind {
    /// k-direction recurrence of a product-lattice table.
    C,
    /// block-direction recurrence of a product-lattice table.
    D,
    /// k-direction recurrence of a sum-lattice table.
    CTilde,
    /// block-direction recurrence of a sum-lattice table.
    DTilde,
}

impl FrcKind {
    pub fn is_product_side(self) -> bool {
        matches!(self, FrcKind::C | FrcKind::D)
    }

    pub fn is_k_direction(self) -> bool {
        matches!(self, FrcKind::C | FrcKind::CTilde)
    }

    /// Linear system size for a lattice whose top coefficient index is `N`.
    pub fn system_size(self, n_upper: usize, p: usize) -> usize {
        if self.is_product_side() {
            n_upper + 2
        } else {
            n_upper + p + 1
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            FrcKind::C => "c",
            FrcKind::D => "d",
            FrcKind::CTilde => "c_tilde",
            FrcKind::DTilde => "d_tilde",
        }
    }
}

/// A solved finite-rank coefficient vector, with the worst defect of its
/// defining equations (exactly zero in rational arithmetic).
#[derive(Debug, Clone)]
pub struct FrcSet<K> {
    pub kind: FrcKind,
    pub values: Vec<K>,
    pub residual: f64,
}

/// Hankel entry addressed by (k-direction position, block position): the
/// product-side array runs its k-direction along columns, the sum-side along
/// rows.
fn alpha_oriented<K: Scalar>(
    table: &MomentTable<K>,
    product_side: bool,
    kdir: usize,
    block: usize,
) -> Result<K> {
    if product_side {
        alpha(block, kdir, table)
    } else {
        alpha(kdir, block, table)
    }
}

fn check_table_side<K: Scalar>(table: &MomentTable<K>, kind: FrcKind, p: usize) -> Result<()> {
    let ok = if kind.is_product_side() {
        table.r() == p && table.q() == 1
    } else {
        table.r() == 1 && table.q() == p
    };
    if !ok {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "frc kind {:?} needs a {} table of order {p}, got r={}, q={}",
                kind,
                if kind.is_product_side() { "product-side" } else { "sum-side" },
                table.r(),
                table.q()
            ),
        });
    }
    Ok(())
}

/// Solve the boundary recurrence system for the finite-rank coefficients of
/// a lattice with top index `n_upper` and order `p`.
pub fn compute_frc<K: Scalar>(
    table: &MomentTable<K>,
    kind: FrcKind,
    n_upper: usize,
    p: usize,
) -> Result<FrcSet<K>> {
    check_table_side(table, kind, p)?;
    let m_sys = kind.system_size(n_upper, p);
    let side = kind.is_product_side();
    let mut mat = DenseMatrix::zeros(m_sys, m_sys);
    let mut rhs = Vec::with_capacity(m_sys);
    for eq in 0..m_sys {
        if kind.is_k_direction() {
            // block line `eq`: entry at kdir = M from kdir = M-1-v
            for v in 0..m_sys {
                mat.set(eq, v, alpha_oriented(table, side, m_sys - 1 - v, eq)?);
            }
            rhs.push(alpha_oriented(table, side, m_sys, eq)?);
        } else {
            // k-direction line `eq`: entry at block = M from block = M-1-v
            for v in 0..m_sys {
                mat.set(eq, v, alpha_oriented(table, side, eq, m_sys - 1 - v)?);
            }
            rhs.push(alpha_oriented(table, side, eq, m_sys)?);
        }
    }
    let values = mat.solve(&rhs)?;
    let mut residual: f64 = 0.0;
    for eq in 0..m_sys {
        let mut acc = -rhs[eq].clone();
        for v in 0..m_sys {
            acc = acc + mat.get(eq, v).clone() * values[v].clone();
        }
        residual = residual.max(acc.approx().abs());
    }
    Ok(FrcSet {
        kind,
        values,
        residual,
    })
}

/// Check the recurrence beyond its defining window.
///
/// k-direction kinds are checked on **every** block line `0..=M` at the next
/// `extra` k-positions (they are Cayley-Hamilton identities, valid
/// everywhere past the boundary); block-direction kinds only along their
/// boundary chain (`extra` more k-positions at block `M` — off the chain
/// they genuinely fail). Returns the `(row, col)` array coordinates of any
/// violations.
pub fn verify_recurrence<K: Scalar>(
    table: &MomentTable<K>,
    frc: &FrcSet<K>,
    extra: usize,
) -> Result<Vec<(usize, usize)>> {
    let m_sys = frc.values.len();
    let side = frc.kind.is_product_side();
    let coords = |kdir: usize, block: usize| -> (usize, usize) {
        if side {
            (block, kdir)
        } else {
            (kdir, block)
        }
    };
    let mut violations = Vec::new();
    if frc.kind.is_k_direction() {
        for block in 0..=m_sys {
            for kdir in m_sys..m_sys + extra {
                let mut acc = -alpha_oriented(table, side, kdir, block)?;
                for (v, x) in frc.values.iter().enumerate() {
                    acc = acc
                        + x.clone() * alpha_oriented(table, side, kdir - 1 - v, block)?;
                }
                if !acc.is_zero() {
                    violations.push(coords(kdir, block));
                }
            }
        }
    } else {
        for kdir in m_sys..m_sys + extra {
            let mut acc = -alpha_oriented(table, side, kdir, m_sys)?;
            for (v, x) in frc.values.iter().enumerate() {
                acc = acc + x.clone() * alpha_oriented(table, side, kdir, m_sys - 1 - v)?;
            }
            if !acc.is_zero() {
                violations.push(coords(kdir, m_sys));
            }
        }
    }
    Ok(violations)
}

/// Confirm the structured Hankel array of `table` has rank exactly `m_sys`:
/// the order-`(m_sys-1)` minor must be nonzero and the order-`m_sys` minor
/// exactly zero (raw minors — a vanishing determinant is the datum here).
pub fn verify_minimal_rank<K: Scalar>(table: &MomentTable<K>, m_sys: usize) -> Result<bool> {
    let below = hankel_minor(table, m_sys as isize - 1)?;
    let at = hankel_minor(table, m_sys as isize)?;
    Ok(!below.is_zero() && at.is_zero())
}

/// Quantities tracked along a trajectory.
#[derive(Debug, Clone)]
pub enum IntegralMonitor {
    /// `Σ_i coeff_i` — linear integral of the sum lattice.
    CoefficientSum,
    /// `−coeff_first · coeff_last` (order 2, four coefficients).
    EndpointProductNeg,
    /// `−b_0 b_2 / b_1` (order 2, four coefficients).
    CrossRatioNeg,
    /// `b_0 (b_1 + b_2) / (b_1 · a_0(0) · exp ∫_0^t b_1 dτ)` — the gauge-dressed
    /// integral of the sum lattice (order 2, four coefficients).
    GaugeRatio { a0_initial: f64 },
    /// Every slot of a finite-rank coefficient vector, recomputed per state.
    AllFrc(FrcKind),
    /// One slot of a finite-rank coefficient vector.
    FrcSlot(FrcKind, usize),
}

#[derive(Debug, Clone)]
pub struct MonitorReport {
    pub name: String,
    pub values: Vec<f64>,
    /// `max_t |v(t) − v(0)|`.
    pub drift: f64,
}

fn drift_of(values: &[f64]) -> f64 {
    let v0 = values[0];
    values
        .iter()
        .map(|v| (v - v0).abs())
        .fold(0.0f64, f64::max)
}

fn report(name: String, values: Vec<f64>) -> MonitorReport {
    let drift = drift_of(&values);
    MonitorReport {
        name,
        values,
        drift,
    }
}

fn frc_table_for_state(state: &LatticeState<f64>, kind: FrcKind) -> Result<MomentTable<f64>> {
    let p = state.p;
    let n_upper = state.len() - 1;
    let m_sys = kind.system_size(n_upper, p);
    let depth = m_sys + m_sys / p + 1;
    let matrix = match state.family {
        Family::A => build_l1(state, state.len() + 1)?,
        Family::B => build_l2(state, state.len() + p)?,
    };
    compute_moments(&matrix, depth)
}

fn frc_series(
    traj: &Trajectory<f64>,
    kind: FrcKind,
) -> Result<Vec<Vec<f64>>> {
    let expect_product = kind.is_product_side();
    let is_product = traj.family == Family::A;
    if expect_product != is_product {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "frc kind {:?} applies to {} trajectories",
                kind,
                if expect_product { "product-lattice" } else { "sum-lattice" }
            ),
        });
    }
    let n_upper = traj.states[0].len() - 1;
    let mut per_time = Vec::with_capacity(traj.len());
    for i in 0..traj.len() {
        let state = traj.lattice_state(i)?;
        let table = frc_table_for_state(&state, kind)?;
        let frc = compute_frc(&table, kind, n_upper, traj.p)?;
        per_time.push(frc.values);
    }
    Ok(per_time)
}

fn integral_of_coeff(traj: &Trajectory<f64>, idx: usize) -> Vec<f64> {
    if let Some(aux) = &traj.aux_integrals {
        return aux.iter().map(|a| a[idx]).collect();
    }
    let samples: Vec<f64> = traj.states.iter().map(|s| s[idx]).collect();
    cumulative_integral(&traj.times, &samples)
}

/// Evaluate the requested monitors at every recorded time.
pub fn monitor_integrals(
    traj: &Trajectory<f64>,
    monitors: &[IntegralMonitor],
) -> Result<Vec<MonitorReport>> {
    if traj.is_empty() {
        return Err(Error::MissingHistory {
            detail: "empty trajectory".to_string(),
        });
    }
    let count = traj.states[0].len();
    let mut out = Vec::new();
    for monitor in monitors {
        match monitor {
            IntegralMonitor::CoefficientSum => {
                let vals = traj
                    .states
                    .iter()
                    .map(|s| s.iter().sum::<f64>())
                    .collect();
                out.push(report("coefficient_sum".to_string(), vals));
            }
            IntegralMonitor::EndpointProductNeg => {
                let vals = traj
                    .states
                    .iter()
                    .map(|s| -s[0] * s[count - 1])
                    .collect();
                out.push(report("endpoint_product_neg".to_string(), vals));
            }
            IntegralMonitor::CrossRatioNeg => {
                if count < 3 {
                    return Err(Error::DimensionMismatch {
                        detail: "cross-ratio monitor needs at least 3 coefficients".to_string(),
                    });
                }
                let vals = traj
                    .states
                    .iter()
                    .map(|s| -s[0] * s[2] / s[1])
                    .collect();
                out.push(report("cross_ratio_neg".to_string(), vals));
            }
            IntegralMonitor::GaugeRatio { a0_initial } => {
                if traj.family != Family::B || count < 3 {
                    return Err(Error::DimensionMismatch {
                        detail: "gauge-ratio monitor needs a sum-lattice trajectory with \
                                 at least 3 coefficients"
                            .to_string(),
                    });
                }
                let int_b1 = integral_of_coeff(traj, 1);
                let vals = traj
                    .states
                    .iter()
                    .zip(&int_b1)
                    .map(|(s, ib)| s[0] * (s[1] + s[2]) / (s[1] * a0_initial * ib.exp()))
                    .collect();
                out.push(report("gauge_ratio".to_string(), vals));
            }
            IntegralMonitor::AllFrc(kind) => {
                let series = frc_series(traj, *kind)?;
                let m_sys = series[0].len();
                for v in 0..m_sys {
                    let vals: Vec<f64> = series.iter().map(|s| s[v]).collect();
                    out.push(report(format!("frc_{}[{v}]", kind.label()), vals));
                }
            }
            IntegralMonitor::FrcSlot(kind, v) => {
                let series = frc_series(traj, *kind)?;
                if *v >= series[0].len() {
                    return Err(Error::DimensionMismatch {
                        detail: format!(
                            "frc slot {v} outside 0..{}",
                            series[0].len()
                        ),
                    });
                }
                let vals: Vec<f64> = series.iter().map(|s| s[*v]).collect();
                out.push(report(format!("frc_{}[{v}]", kind.label()), vals));
            }
        }
    }
    Ok(out)
}

/// Drifts of the two active sum-side block-recurrence slots along an order-2,
/// four-coefficient trajectory, from their closed forms:
/// slot 2 is `b_0 + b_0 b_2 / b_1` (not conserved), slot 5 is
/// `−b_0 b_2 / b_1` (a true integral).
#[derive(Debug, Clone)]
pub struct NonConstancyReport {
    pub moving_slot_drift: f64,
    pub conserved_slot_drift: f64,
}

pub fn verify_d_tilde_nonconstancy(traj: &Trajectory<f64>) -> Result<NonConstancyReport> {
    if traj.family != Family::B || traj.p != 2 || traj.states[0].len() != 4 {
        return Err(Error::DimensionMismatch {
            detail: "the block-recurrence witness is the order-2 sum lattice \
                     with 4 coefficients"
                .to_string(),
        });
    }
    let d2: Vec<f64> = traj
        .states
        .iter()
        .map(|b| b[0] + b[0] * b[2] / b[1])
        .collect();
    let d5: Vec<f64> = traj.states.iter().map(|b| -b[0] * b[2] / b[1]).collect();
    Ok(NonConstancyReport {
        moving_slot_drift: drift_of(&d2),
        conserved_slot_drift: drift_of(&d5),
    })
}

/// The explicit third-moment identity of an order-2, five-coefficient
/// product lattice: `S_3^{1,1} = (a_1+a_3) S_1^{2,1} − a_0 a_3 S_0^{1,1}`,
/// together with its image under the moment-level map,
/// `S̃_3^{1,1} = D̃_2 S̃_1^{1,2} + D̃_5 S̃_0^{1,1}` with
/// `D̃_2 = a_0(a_1+a_3)`, `D̃_5 = −a_0 a_3`. Both must hold exactly.
pub fn verify_s31_identity<K: Scalar>(a: &LatticeState<K>) -> Result<bool> {
    if a.family != Family::A || a.p != 2 || a.len() != 5 {
        return Err(Error::DimensionMismatch {
            detail: "the third-moment identity is stated for the order-2 \
                     product lattice with 5 coefficients"
                .to_string(),
        });
    }
    let table = compute_moments(&build_l1(a, 6)?, 3)?;
    let (a0, a1, a3) = (
        a.coeffs[0].clone(),
        a.coeffs[1].clone(),
        a.coeffs[3].clone(),
    );
    let lhs = table.get(3, 1, 1)?;
    let rhs = (a1.clone() + a3.clone()) * table.get(1, 2, 1)?
        - a0.clone() * a3.clone() * table.get(0, 1, 1)?;
    if lhs != rhs {
        return Ok(false);
    }

    let mapped = crate::miura::miura_moments_forward(&table)?;
    let d2 = a0.clone() * (a1 + a3.clone());
    let d5 = -(a0 * a3);
    let lhs2 = mapped.get(3, 1, 1)?;
    let rhs2 = d2 * mapped.get(1, 1, 2)? + d5 * mapped.get(0, 1, 1)?;
    Ok(lhs2 == rhs2)
}

/// Characteristic polynomial of the lattice's spectral operator (open-end
/// sizes), the quantity the k-direction coefficients negate.
pub fn lattice_charpoly<K: Scalar>(state: &LatticeState<K>) -> Result<CharPoly<K>> {
    if state.boundary != Boundary::OpenEnd {
        return Err(Error::DimensionMismatch {
            detail: "characteristic polynomials are for finite open-end lattices".to_string(),
        });
    }
    let dense = match state.family {
        Family::A => build_l1(state, state.len() + 1)?.to_dense(),
        Family::B => build_l2(state, state.len() + state.p)?.to_dense(),
    };
    charpoly(&dense)
}

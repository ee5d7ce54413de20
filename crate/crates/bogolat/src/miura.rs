//! Miura-type transformations between the product lattice (family A) and the
//! sum lattice (family B) of the same order `p`.
//!
//! Coefficient level: `b_i = a_i a_{i+1} ··· a_{i+p-1}` intertwines the two
//! flows. The map forgets a gauge: the leading values `a_0, …, a_{p-2}`
//! cannot be recovered from `b` alone, but each evolves by a pure gauge
//! factor, `a_i(t) = a_i(0) · exp(∫_0^t b_{i+1} dτ)` for `i ≤ p-2` (its
//! backward product vanishes by zero padding), after which the remaining
//! coefficients follow algebraically from `a_i = b_{i-p+1}/(a_{i-p+1} ··· a_{i-1})`.
//!
//! Moment level: the same map acts by entrywise division,
//! `S̃_k^{1,l} = S_k^{l,1} / S_{l-1}^{l,1}`, sending family-A tables to
//! family-B tables; its inverse multiplies back the gauge,
//! `S_k^{l,1} = a_0(0)···a_{l-2}(0) · exp(∫_0^t (S̃_{l+p}^{1,l} − S̃_{p+1}^{1,1}) dτ) · S̃_k^{1,l}`.
//!
//! Because open-end lattices are exactly their zero-padded semi-infinite
//! counterparts at every moment depth, the square "map then take moments"
//! versus "take moments then map" commutes exactly in rational arithmetic,
//! and the family-B Hankel minors of a mapped table equal closed-form
//! products of the image coefficients ([`verify_determinant_transport`]).

use crate::error::{Error, Result};
use crate::flow::Trajectory;
use crate::hankel::{delta_closed_form_l2, hankel_minor};
use crate::lattice::{build_l1, Boundary, Family, LatticeState};
use crate::moments::{compute_moments, MomentTable, Provenance};
use crate::scalar::Scalar;

/// Initial leading coefficients `a_0(0), …, a_{p-2}(0)` — the gauge data the
/// forward map forgets.
#[derive(Debug, Clone, PartialEq)]
pub struct MiuraSeeds<K> {
    pub a_leading: Vec<K>,
}

impl<K: Scalar> MiuraSeeds<K> {
    pub fn from_state(a: &LatticeState<K>) -> Self {
        MiuraSeeds {
            a_leading: a.coeffs[..a.p - 1].to_vec(),
        }
    }

    pub fn to_f64(&self) -> MiuraSeeds<f64> {
        MiuraSeeds {
            a_leading: self.a_leading.iter().map(|v| v.approx()).collect(),
        }
    }
}

fn check_forward_length(count_a: usize, p: usize, boundary: Boundary) -> Result<()> {
    let min = if boundary == Boundary::OpenEnd {
        3 * p - 1 // short open lattices leave the image dynamics underdetermined
    } else {
        p
    };
    if count_a < min {
        return Err(Error::WindowTooSmall {
            window: count_a,
            detail: format!("order-{p} forward map needs at least {min} coefficients"),
        });
    }
    Ok(())
}

fn forward_products<K: Scalar>(coeffs: &[K], p: usize) -> Vec<K> {
    (0..coeffs.len() + 1 - p)
        .map(|i| {
            let mut prod = K::one();
            for c in &coeffs[i..i + p] {
                prod = prod * c.clone();
            }
            prod
        })
        .collect()
}

/// `b_i = a_i ··· a_{i+p-1}`, producing a family-B state of the same order
/// with `count_a − p + 1` coefficients.
pub fn miura_forward<K: Scalar>(a: &LatticeState<K>) -> Result<LatticeState<K>> {
    if a.family != Family::A {
        return Err(Error::DimensionMismatch {
            detail: "miura_forward expects a family-A state".to_string(),
        });
    }
    check_forward_length(a.len(), a.p, a.boundary)?;
    let b = forward_products(&a.coeffs, a.p);
    let s = LatticeState::new(Family::B, a.p, b, a.boundary)?;
    Ok(s.with_time(a.time.clone()))
}

/// Map every state of a family-A trajectory through the forward map.
pub fn push_forward<K: Scalar>(a_traj: &Trajectory<K>) -> Result<Trajectory<K>> {
    if a_traj.family != Family::A {
        return Err(Error::DimensionMismatch {
            detail: "push_forward expects a family-A trajectory".to_string(),
        });
    }
    let p = a_traj.p;
    for (i, s) in a_traj.states.iter().enumerate() {
        check_forward_length(s.len(), p, a_traj.boundary)?;
        if let Some(j) = s.iter().position(|c| c.is_zero()) {
            let _ = i;
            return Err(Error::ZeroCoefficient { index: j });
        }
    }
    Ok(Trajectory {
        family: Family::B,
        p,
        boundary: a_traj.boundary,
        times: a_traj.times.clone(),
        states: a_traj
            .states
            .iter()
            .map(|s| forward_products(s, p))
            .collect(),
        aux_integrals: None,
        step_error_estimates: a_traj.step_error_estimates.clone(),
        method: "miura_forward",
    })
}

/// Integral of the local interpolating parabola over `[xa, xb]`.
fn parabola_segment(x: [f64; 3], y: [f64; 3], xa: f64, xb: f64) -> f64 {
    let mut total = 0.0;
    for i in 0..3 {
        let (u, v) = match i {
            0 => (x[1], x[2]),
            1 => (x[0], x[2]),
            _ => (x[0], x[1]),
        };
        let denom = (x[i] - u) * (x[i] - v);
        let anti = |z: f64| z * z * z / 3.0 - (u + v) * z * z / 2.0 + u * v * z;
        total += y[i] * (anti(xb) - anti(xa)) / denom;
    }
    total
}

/// Cumulative integral `∫_0^{t_j} f dτ` from samples, one value per sample.
/// Each segment is integrated under the parabola through its two endpoints
/// and the nearest third sample (plain cumulative Simpson on uniform grids);
/// two samples fall back to the trapezoid.
pub fn cumulative_integral(times: &[f64], values: &[f64]) -> Vec<f64> {
    let n = times.len();
    assert_eq!(n, values.len());
    let mut out = Vec::with_capacity(n);
    out.push(0.0);
    if n == 1 {
        return out;
    }
    if n == 2 {
        out.push(0.5 * (values[0] + values[1]) * (times[1] - times[0]));
        return out;
    }
    let mut acc = 0.0;
    for j in 1..n {
        let base = if j + 1 < n { j - 1 } else { j - 2 };
        let x = [times[base], times[base + 1], times[base + 2]];
        let y = [values[base], values[base + 1], values[base + 2]];
        acc += parabola_segment(x, y, times[j - 1], times[j]);
        out.push(acc);
    }
    out
}

fn running_integrals(b_traj: &Trajectory<f64>) -> Result<Vec<Vec<f64>>> {
    if b_traj.is_empty() {
        return Err(Error::MissingHistory {
            detail: "empty trajectory".to_string(),
        });
    }
    if b_traj.times[0] != 0.0 {
        return Err(Error::MissingHistory {
            detail: format!(
                "gauge integrals start at t = 0, trajectory starts at {}",
                b_traj.times[0]
            ),
        });
    }
    if let Some(aux) = &b_traj.aux_integrals {
        return Ok(aux.clone());
    }
    // fall back to quadrature over the recorded samples
    let count = b_traj.states[0].len();
    let per_coeff: Vec<Vec<f64>> = (0..count)
        .map(|i| {
            let samples: Vec<f64> = b_traj.states.iter().map(|s| s[i]).collect();
            cumulative_integral(&b_traj.times, &samples)
        })
        .collect();
    Ok((0..b_traj.len())
        .map(|j| (0..count).map(|i| per_coeff[i][j]).collect())
        .collect())
}

/// Invert the forward map along a family-B trajectory: leading coefficients
/// from the gauge exponentials (co-integrated accumulators when present,
/// otherwise cumulative-Simpson quadrature of the recorded samples), the
/// rest from the algebraic chain.
pub fn miura_inverse(
    b_traj: &Trajectory<f64>,
    seeds: &MiuraSeeds<f64>,
) -> Result<Trajectory<f64>> {
    if b_traj.family != Family::B {
        return Err(Error::DimensionMismatch {
            detail: "miura_inverse expects a family-B trajectory".to_string(),
        });
    }
    let p = b_traj.p;
    if seeds.a_leading.len() != p - 1 {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "order-{p} inverse needs {} seed values, got {}",
                p - 1,
                seeds.a_leading.len()
            ),
        });
    }
    let integrals = running_integrals(b_traj)?;
    let count_b = b_traj.states[0].len();
    let count_a = count_b + p - 1;
    let mut states = Vec::with_capacity(b_traj.len());
    for (j, b) in b_traj.states.iter().enumerate() {
        let mut a = Vec::with_capacity(count_a);
        for i in 0..count_a {
            if i + 1 < p {
                a.push(seeds.a_leading[i] * integrals[j][i + 1].exp());
            } else {
                let mut denom = 1.0;
                for v in &a[i + 1 - p..i] {
                    denom *= v;
                }
                let b_val = b[i + 1 - p];
                if b_val == 0.0 || denom == 0.0 {
                    return Err(Error::ZeroCoefficient { index: i + 1 - p });
                }
                a.push(b_val / denom);
            }
        }
        states.push(a);
    }
    Ok(Trajectory {
        family: Family::A,
        p,
        boundary: b_traj.boundary,
        times: b_traj.times.clone(),
        states,
        aux_integrals: None,
        step_error_estimates: b_traj.step_error_estimates.clone(),
        method: "miura_inverse",
    })
}

/// Moment-level forward map: `S̃_k^{1,l} = S_k^{l,1} / S_{l-1}^{l,1}`,
/// family-A table in (`q = 1`), family-B table out (`r = 1`, `q = p`).
pub fn miura_moments_forward<K: Scalar>(table: &MomentTable<K>) -> Result<MomentTable<K>> {
    if table.q() != 1 {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "moment-level forward map expects a family-A table (q = 1), got q = {}",
                table.q()
            ),
        });
    }
    let p = table.r();
    let k_max = table.k_max();
    let mut out = MomentTable::zeros(1, p, k_max, Provenance::FromMiura);
    for l in 1..=p {
        let gauge = table.get(l - 1, l, 1)?;
        if gauge.is_zero() {
            return Err(Error::DegenerateMoments {
                detail: format!("gauge moment S_{}^{{{l},1}} vanished", l - 1),
            });
        }
        for k in 0..=k_max {
            let v = table.get(k, l, 1)? / gauge.clone();
            out.set(k, 1, l, v)?;
        }
    }
    Ok(out)
}

/// Moment-level inverse map at the final time of a recorded history of
/// family-B tables. The gauge exponent integrates
/// `S̃_{l+p}^{1,l} − S̃_{p+1}^{1,1}` (the moment image of `b_1 + ... + b_{l-1}`)
/// along the history by cumulative Simpson; the seed products
/// `a_0(0)···a_{l-2}(0)` restore the forgotten normalization.
pub fn miura_moments_inverse(
    times: &[f64],
    history: &[MomentTable<f64>],
    seeds: &MiuraSeeds<f64>,
) -> Result<MomentTable<f64>> {
    if times.len() != history.len() || history.is_empty() {
        return Err(Error::MissingHistory {
            detail: format!(
                "need matching nonempty history, got {} times and {} tables",
                times.len(),
                history.len()
            ),
        });
    }
    if times[0] != 0.0 {
        return Err(Error::MissingHistory {
            detail: format!("gauge integrals start at t = 0, history starts at {}", times[0]),
        });
    }
    let last = &history[history.len() - 1];
    let p = last.q();
    if seeds.a_leading.len() + 1 != p {
        return Err(Error::DimensionMismatch {
            detail: format!(
                "order-{p} inverse needs {} seed values, got {}",
                p - 1,
                seeds.a_leading.len()
            ),
        });
    }
    let k_max = last.k_max();
    for table in history {
        if table.r() != 1 || table.q() != p || table.k_max() != k_max {
            return Err(Error::DimensionMismatch {
                detail: "inconsistent table shapes along the history".to_string(),
            });
        }
    }
    if k_max < 2 * p {
        return Err(Error::IndexBeyondTable {
            k: 2 * p,
            m: 1,
            n: p,
            k_max,
            r: 1,
            q: p,
        });
    }
    let mut out = MomentTable::zeros(p, 1, k_max, Provenance::FromMiura);
    for l in 1..=p {
        let samples: Vec<f64> = history
            .iter()
            .map(|tbl| {
                Ok(tbl.get(l + p, 1, l)? - tbl.get(p + 1, 1, 1)?)
            })
            .collect::<Result<_>>()?;
        let integral = *cumulative_integral(times, &samples).last().unwrap();
        let mut prefactor = integral.exp();
        for s in &seeds.a_leading[..l - 1] {
            prefactor *= s;
        }
        for k in 0..=k_max {
            out.set(k, l, 1, prefactor * last.get(k, 1, l)?)?;
        }
    }
    Ok(out)
}

/// Outcome of a determinant-transport check.
#[derive(Debug, Clone)]
pub struct TransportReport {
    pub k_checked: usize,
    pub mismatches: Vec<isize>,
}

impl TransportReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Verify that the family-B Hankel minors of the moment-level image of `a`
/// equal the closed-form products of the coefficient-level image
/// `b = forward(a)` (zero-padded), for every minor order up to `k_hi`.
pub fn verify_determinant_transport<K: Scalar>(
    a: &LatticeState<K>,
    k_hi: usize,
) -> Result<TransportReport> {
    let b = miura_forward(a)?;
    let p = a.p;
    let depth = k_hi + k_hi / p;
    let size = match a.boundary {
        Boundary::OpenEnd => a.len() + 1,
        Boundary::TruncatedSemiInfinite => a.len() + p,
    };
    let matrix = build_l1(a, size)?;
    let table = compute_moments(&matrix, depth)?;
    let mapped = miura_moments_forward(&table)?;
    let mut mismatches = Vec::new();
    for k in -1..=(k_hi as isize) {
        let minor = hankel_minor(&mapped, k)?;
        let closed = delta_closed_form_l2(&b.coeffs, k, p);
        if minor != closed {
            mismatches.push(k);
        }
    }
    Ok(TransportReport {
        k_checked: k_hi,
        mismatches,
    })
}

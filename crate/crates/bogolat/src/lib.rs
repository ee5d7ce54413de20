//! Integrable lattice toolkit: band Lax operators for the product
//! (Volterra-type) and sum (Toda-type) lattice hierarchies of order `p`,
//! moment tables of the associated Weyl matrix, structured-Hankel
//! reconstruction, moment-side flows, Miura-type maps between the two
//! families, and first-integral extraction for the finite systems.
//!
//! Everything numeric is generic over [`scalar::Scalar`], instantiated either
//! with `f64` or with exact rationals (`num::BigRational`).

pub mod band;
pub mod charpoly;
pub mod dense;
pub mod error;
pub mod flow;
pub mod hankel;
pub mod invariants;
pub mod lattice;
pub mod miura;
pub mod moments;
pub mod scalar;
pub mod verify;

pub use band::BandMatrix;
pub use charpoly::{charpoly, CharPoly};
pub use dense::DenseMatrix;
pub use error::{Error, Result};
pub use flow::{
    certified_depth, evolve_moments_series, moment_rhs, rk4_integrate, solve_cauchy,
    SeriesOptions, Trajectory,
};
pub use hankel::{
    alpha, delta_closed_form_l1, delta_closed_form_l2, delta_ladder, depth_for_count,
    hankel_minor, max_minor_order, reconstruct_sparse_lattice, reconstruct_subdiagonal,
    DeterminantLadder,
};
pub use invariants::{
    compute_frc, lattice_charpoly, monitor_integrals, verify_d_tilde_nonconstancy,
    verify_minimal_rank, verify_recurrence, verify_s31_identity, FrcKind, FrcSet,
    IntegralMonitor, MonitorReport, NonConstancyReport,
};
pub use lattice::{
    build_a1, build_a2, build_l1, build_l2, commutator, lax_residual, Boundary, Family,
    LatticeState,
};
pub use miura::{
    cumulative_integral, miura_forward, miura_inverse, miura_moments_forward,
    miura_moments_inverse, push_forward, verify_determinant_transport, MiuraSeeds,
    TransportReport,
};
pub use moments::{
    check_normalization, check_sparsity, compute_moments, neumann_partial, neumann_tail_bound,
    weyl_entry, MomentTable, Provenance, ViolationReport,
};
pub use scalar::Scalar;
pub use verify::{run_all, CriterionReport};

pub use num::BigRational;

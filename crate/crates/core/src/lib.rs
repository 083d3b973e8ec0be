//! Moment-problem diagnostics for eigenvalue data.
//!
//! The crate answers one question for a double-indexed family of eigenvalues
//! `{λ_{i,n}}`: do the normalized power traces converge to the moments of a
//! measure, and if so, what is that measure? Real spectra go through the
//! Hausdorff route (complete monotonicity on `[0, 1]` after an affine
//! rescale, then reconstruction and a monotone quantile symbol). Spectra of
//! constant modulus go through the trigonometric route (Toeplitz positive
//! semidefiniteness and a Fejér-summed angular density).
//!
//! The [`weil`] module carries the exact-arithmetic side: point-count-like
//! numbers `N_m`, their Möbius inverses `B_m`, three independent expansions
//! of `P(t)`, and limits over families of growing genus.
//!
//! Everything here is `no_std` with `alloc`; file formats and the command
//! line live in the companion `msk` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod circle;
mod error;
pub mod moments;
mod numeric;
pub mod reconstruct;
pub mod sequences;
pub mod weil;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use circle::{
    ergodic_check, fejer_density, laurent_adjoint, laurent_functional, summability_diagnostic,
    toeplitz_moment_matrix, toeplitz_psd_test, AngleSample, CircleMoments, DensityGrid,
    ErgodicReport, LaurentPoly, PsdVerdict, Summability, SummabilityReport, Summation,
};
pub use moments::{
    default_tolerance, difference_table, exact_difference_table, is_completely_monotonic,
    rescale_from_unit_interval, rescale_to_unit_interval, DifferenceTable, Domain,
    ExactDifferenceTable, MomentSequence, MonotonicityVerdict,
};
pub use reconstruct::{
    bernstein_reconstruct, bernstein_reconstruct_exact, bernstein_weights_exact,
    legendre_reconstruct, moments_of, quantile_symbol, reconstruct, symbol_ergodic_average, Atom,
    DiscreteMeasure, QuantileSymbol, Reconstruction,
};
pub use sequences::{
    convergence_report, estimate_circle_symbol, estimate_symbol, hermitian_traces_from_matrices,
    normalized_power_traces, two_sided_power_traces, CircleEstimate, CircleOptions, ConvergenceReport, EigenvalueFamily,
    FamilyKind, FamilyMember, HermitianTraces, OrderConvergence, SymbolEstimate, SymbolOptions,
    TraceTable,
};
pub use weil::{
    bound_check, compute_b, compute_n, family_limits, family_limits_from_counts, mobius,
    power_sums, synthesize_example, validate_weil, zeta_consistency, zeta_numbers, BoundCheck,
    BoundVerdict, FamilyLimits, PowerSums, QuadElem, WeilExample, WeilMember, WeilRoots,
    ZetaConsistency, ZetaNumbers,
};

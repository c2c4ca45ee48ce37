//! Error type shared by the computation modules.
//!
//! Only conditions that a correct caller can actually encounter at runtime
//! are modelled as errors; violated function preconditions (out-of-range
//! variable indices, non-homogeneous input where homogeneous is required)
//! panic instead.

use thiserror::Error;

/// Failures surfaced by the section-space and cone-side computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The quadric generators failed one of the runtime generation checks:
    /// their span does not match the degree-2 ideal piece, or their degree-1
    /// multiples do not span the degree-3 ideal piece. A presentation of the
    /// differentials built from these generators would be wrong, so the
    /// computation aborts.
    #[error("generation-assumption violated: {check} has dimension {found}, expected {expected}")]
    GenerationCheck {
        check: &'static str,
        found: usize,
        expected: usize,
    },

    /// The four-term section sequence produced a negative h¹, which is
    /// impossible; some earlier dimension must be wrong.
    #[error("internal inconsistency: h1(I^2({m}H)) = {value} is negative")]
    NegativeH1 { m: usize, value: i64 },

    /// A relation of the differential-module presentation did not map to zero
    /// under contraction with the Euler vector field.
    #[error("internal inconsistency: relation {index} has nonzero contraction in degree {m}")]
    ContractionNotWellDefined { index: usize, m: usize },

    /// The saturation loop ran out of window or degree budget before two
    /// consecutive multiplication kernels agreed. This is an inconclusive
    /// outcome, never silently reported as a dimension.
    #[error(
        "saturation inconclusive in internal degree {m}: no stabilization within window {window} and max degree {max_degree}"
    )]
    SaturationInconclusive {
        m: usize,
        window: usize,
        max_degree: usize,
    },
}

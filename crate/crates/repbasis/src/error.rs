//! Crate-wide error type.

use std::collections::BTreeMap;

use crate::augment::RejectionCase;
use crate::builder::Construction;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports. Validation failures are distinct
/// variants so callers can react to each one separately.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A form coefficient is zero (index is 1-based).
    #[error("coefficient u{0} must be nonzero")]
    ZeroCoefficient(usize),

    /// Form coefficients share a common factor.
    #[error("coefficients are not relatively prime (gcd = {gcd})")]
    NotCoprime { gcd: u64 },

    /// u1*u2 is 1, -1 or -2: no construction exists for these products.
    #[error("coefficient product u1*u2 = {0} is excluded (must avoid 1, -1, -2)")]
    ExcludedProduct(i64),

    /// An exact integer result does not fit in 64 bits.
    #[error("exact result overflows 64-bit integer arithmetic")]
    Range,

    /// gcd(0, 0) has no positive value.
    #[error("gcd(0, 0) is undefined")]
    BothZero,

    /// A target-function description violates its own consistency rules.
    #[error("invalid target spec: {0}")]
    InvalidSpec(String),

    /// A parameter is outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    /// Brute-force enumeration would exceed the caller's explicit cap.
    #[error("work cap exceeded: enumeration needs {required} tuples, cap is {cap}")]
    WorkCapExceeded { required: u128, cap: u64 },

    /// The zero set W intersects F(A') ∪ {b}; no augmentation can avoid it.
    #[error("zero-set hypothesis violated: {witness} lies both in W and in F(A') ∪ {{b}}")]
    HypothesisViolated { witness: i64 },

    /// Every candidate t within the scan radius was rejected.
    #[error(
        "no admissible t with |t| <= {max_radius} ({})",
        summarize_histogram(histogram)
    )]
    SearchExhausted {
        max_radius: i64,
        histogram: BTreeMap<RejectionCase, u64>,
    },

    /// A build step failed; `partial` holds the construction up to that step.
    #[error("build step {step} (target {target}) failed: {source}")]
    StepFailed {
        step: usize,
        target: i64,
        #[source]
        source: Box<Error>,
        partial: Box<Construction>,
    },

    /// A set or spec file could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn summarize_histogram(histogram: &BTreeMap<RejectionCase, u64>) -> String {
    if histogram.is_empty() {
        return "no candidates scanned".to_string();
    }
    histogram
        .iter()
        .map(|(case, n)| format!("{case}: {n}"))
        .collect::<Vec<_>>()
        .join(", ")
}

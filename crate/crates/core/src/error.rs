//! Crate-wide error type.

use thiserror::Error;

use crate::series::Order;

/// Errors raised by series, arc, blowup, HNE, ideal, and harness operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("composition requires positive order, inner series is a unit")]
    CompositionNeedsPositiveOrder,

    #[error("no compositional inverse at order {0}")]
    NoCompositionalInverse(Order),

    #[error("not a unit: order {0}")]
    NotAUnit(Order),

    #[error("{value} has no {r}-th root in the base field")]
    NoScalarRoot { value: String, r: u32 },

    #[error("cannot take a {r}-th root in characteristic {p}")]
    RootDividesCharacteristic { p: u64, r: u32 },

    #[error("binomial series needs 1/{i}, which does not exist in characteristic {p}")]
    NonInvertibleIndex { p: u64, i: usize },

    #[error("polynomial in {found} variables applied to an arc in {expected}")]
    VariableCountMismatch { expected: usize, found: usize },

    #[error("ideal order requires a nonempty generating set")]
    EmptyGeneratingSet,

    #[error("the trivial arc has no order data to work with")]
    TrivialArc,

    #[error("cannot select a blowup pivot: all components vanish to precision {precision}")]
    PivotUndetermined { precision: usize },

    #[error("precision exhausted after {depth} blowups (residual precision {residual})")]
    PrecisionExhausted { depth: usize, residual: usize },

    #[error("arc is not normalized: witnessed order gcd is {d}, expected 1")]
    NotNormalized { d: usize },

    #[error("arc is not nonsingular: no coordinate has order 1")]
    NotNonsingular,

    #[error("coefficient table holds indices up to {available}, needed {needed}")]
    InsufficientCoefficients { needed: usize, available: usize },

    #[error("jet point assigns degrees below {available}, generator uses degree {needed}")]
    MissingJetAssignment { needed: usize, available: usize },

    #[error("enumeration of {count} arcs exceeds the cap of {cap}; reduce the coefficient set or degree bound")]
    EnumerationTooLarge { count: u128, cap: u128 },

    #[error("degree bound {degree} must be below the precision {precision}")]
    DegreeAbovePrecision { degree: usize, precision: usize },

    #[error("arc needs dimension at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("arc components must share a precision: found {0} and {1}")]
    MixedPrecision(usize, usize),

    #[error("arc component {index} has a nonzero constant term; arcs are centered at the chart origin")]
    NonzeroConstantTerm { index: usize },

    #[error("precision must be positive")]
    ZeroPrecision,
}

pub type Result<T> = std::result::Result<T, Error>;

use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

/// Failures of the numerical routines. Variants that correspond to a failed
/// hypothesis carry the measured quantity that violated it.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not Hermitian (relative defect {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPsd { eigenvalue: f64 },
    #[error("matrix is singular (condition number {condition:e})")]
    Singular { condition: f64 },
    #[error("not a frame (frame bounds {lower:e}, {upper:e})")]
    NotAFrame { lower: f64, upper: f64 },
    #[error("not a Riesz basis")]
    NotRieszBasis,
    #[error("contract violated: {condition} (measured {measured:e})")]
    ContractViolation {
        condition: &'static str,
        measured: f64,
    },
    #[error("pair is not approximately dual (rate {rate:e})")]
    NotApproxDual { rate: f64 },
    #[error("pair is not g-dual (mixed operator is singular)")]
    NotGdual,
    #[error("pair is not a dual pair (residual {residual:e})")]
    NotDualPair { residual: f64 },
    #[error("annihilator does not annihilate (relative residual {residual:e})")]
    NotAnAnnihilator { residual: f64 },
    #[error("perturbation too large: sqrt(M_diff)*|Theta|*|A^-1| = {product:e} must be < 1")]
    SmallnessViolated { product: f64 },
    #[error("frames are not equivalent (residual {residual:e})")]
    NotEquivalent { residual: f64 },
    #[error("off grid: {what} = {value}")]
    OffGrid { what: &'static str, value: String },
    #[error("support of B_{order} does not fit in period {period}")]
    SupportOverflow { order: usize, period: usize },
    #[error("lattice does not fit grid: {0}")]
    LatticeMismatch(String),
    #[error("hypothesis violated: {hypothesis} (measured {measured:e})")]
    HypothesisViolated {
        hypothesis: &'static str,
        measured: f64,
    },
    #[error("bad coefficient a_{index}: {detail}")]
    BadCoefficients { index: i64, detail: String },
    #[error("operator does not commute with the lattice generators (residual {residual:e})")]
    NotCommuting { residual: f64 },
}

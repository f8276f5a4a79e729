//! Truncated Fourier-Jacobi style expansions in `q1, q2` with Laurent
//! coefficients in `r`, vector-valued over `Sym^j`.

mod elliptic;
mod expansion;
mod series;

use thiserror::Error;

pub use elliptic::{elliptic_form, tensor_proportionality, EllipticExpansion, EllipticName};
pub use expansion::{coefficient_rows, render_laurent, FourierExpansion, Weight};
pub use series::{graded_cells, Cell, Series2, EXACT};

use crate::arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QexpError {
    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: Weight, right: Weight },
    #[error("not divisible at cell {cell:?}")]
    NotDivisible { cell: Cell },
    #[error("r-exponent {exponent} outside the support bound at cell {cell:?}")]
    SupportViolation { cell: Cell, exponent: i64 },
    #[error("operation undefined for a form with character")]
    CharacterForm,
    #[error("boundary coefficient of coordinate {coordinate} at {cell:?} is nonzero")]
    BoundaryNonzero { coordinate: usize, cell: Cell },
    #[error("insufficient precision")]
    InsufficientPrecision,
    #[error("divisor has no leading cell at its valuation")]
    DivisorLeadingCell,
    #[error("coefficient below the declared valuation at {cell:?}")]
    ValuationViolation { cell: Cell },
    #[error("expected {expected} coordinates, found {found}")]
    CoordinateCount { expected: usize, found: usize },
    #[error("elliptic weights differ: {0} vs {1}")]
    EllipticWeightMismatch(i64, i64),
    #[error("unknown form {0:?}")]
    UnknownName(String),
    #[error("malformed expansion: {0}")]
    Format(String),
    #[error("seed form unavailable: {0}")]
    Seed(String),
}

/// Divides `f` by `chi_10`, computed to the truncation of `f`.
pub fn exact_div_chi10(f: &FourierExpansion<Rational>) -> Result<FourierExpansion<Rational>, QexpError> {
    if f.truncation() == EXACT {
        return Err(QexpError::InsufficientPrecision);
    }
    let bound = f.truncation().max(1);
    let chi10 = crate::theta::chi_10(bound).map_err(|e| QexpError::Seed(e.to_string()))?;
    f.exact_div_scalar(chi10.coord(0), 10, false)
}

//! Exact sparse multivariate polynomials over Q and the linear algebra built on them.

mod bivariate;
mod linalg;
mod matrix;
mod monomial;
mod parse;
mod polynomial;
mod resultant;

pub use bivariate::{gcd_bivariate, is_squarefree_bivariate, squarefree_part_bivariate};
pub use linalg::RatMatrix;
pub use matrix::PolyMatrix;
pub use monomial::{cmp_grevlex, cmp_lex, Monomial};
pub use num_rational::BigRational;
pub use parse::parse_polynomial;
pub use polynomial::{integer, rational, Ambient, Polynomial};
pub use resultant::{coefficients_in, resultant, sylvester_matrix};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at column {}: {message}", position + 1)]
    Parse { position: usize, message: String },
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("'{0}' is not a valid variable name")]
    InvalidVariableName(String),
    #[error("variable '{0}' declared twice")]
    DuplicateVariable(String),
    #[error("no value assigned to '{0}'")]
    MissingAssignment(String),
    #[error("operands live over different variable lists {left:?} and {right:?}")]
    AmbientMismatch { left: Vec<String>, right: Vec<String> },
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero polynomial has no order at the origin")]
    ZeroHasNoOrder,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("polynomial has degree zero in '{0}'")]
    ZeroDegree(String),
    #[error("{found} variables occur; at most 2 are supported")]
    UnsupportedArity { found: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division leaves a nonzero remainder")]
    InexactDivision,
}

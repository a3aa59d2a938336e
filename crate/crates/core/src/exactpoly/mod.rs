//! Sparse multivariate polynomials with exact coefficients.

mod coeff;
mod monomial;
mod poly;
mod table;
mod text;

pub use coeff::{is_prime, Coeff, CoefficientRing, MAX_PRIME};
pub use monomial::{BlockSpec, Monomial, MonomialOrder};
pub use poly::{product, sum, ArithOp, PolyRing, Polynomial, Ring, Weight};
pub use table::{Role, VarInfo, VariableTable};
pub use text::{format as format_poly, parse as parse_poly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("parse error: {0}")]
    Parse(String),
}

//! Tricomplex arithmetic, conjugation and idempotent structure. Complex and
//! bicomplex numbers are handled as embedded special cases.

mod idempotent;
mod parse;
mod tricomplex;
mod unit;

use thiserror::Error;

pub use idempotent::{
    gamma, gamma2_decompose, gamma3_decompose, gamma_bar, idem4_compose, idem4_decompose,
    idempotent_elements, primitive_idempotents, Idem4,
};
pub use parse::{format_tc, parse_tc, ParseError, ParseErrorKind};
pub use tricomplex::{Bicomplex, Complex, Tricomplex};
pub use unit::{unit_mul, BasisUnit, SignedUnit};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum AlgebraError {
    #[error("conjugate index {0} out of range 1..=7")]
    InvalidConjugate(u8),
    #[error("zero divisor (conjugate product {conj_product:e})")]
    NonInvertible { conj_product: f64 },
}

/// Free-function form of [`Tricomplex::conjugate`].
pub fn conjugate(a: &Tricomplex, k: u8) -> Result<Tricomplex, AlgebraError> {
    a.conjugate(k)
}

pub fn conj_product(a: &Tricomplex) -> f64 {
    a.conj_product()
}

pub fn inverse(a: &Tricomplex) -> Result<Tricomplex, AlgebraError> {
    a.inverse()
}

//! Arbitrary-precision real arithmetic with rigorous error brackets.
//!
//! [`BigReal`] is an exact dyadic number with rounded operations;
//! [`Bracket`] pairs a `BigReal` midpoint with an upward-rounded radius.

mod bigreal;
mod bracket;
mod elementary;
mod sum;

pub use bigreal::{BigReal, Round};
pub use bracket::{certified_digits, Bracket, RAD_PREC};
pub use elementary::{
    cosh, exp, generalized_binomial, ln, ln2, pi, pi_pow, power_real, two_pi_pow,
};
pub use sum::{bracket_sum, indexed_sum, SUM_CHUNK};

pub(crate) use elementary::small_integer;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealError {
    #[error("division by an interval containing zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("exponent overflow")]
    Overflow,
}

/// Working precision for a target number of decimal digits:
/// `4·digits + 64` guard bits.
pub fn precision_for_digits(digits: u32) -> u32 {
    digits * 4 + 64
}

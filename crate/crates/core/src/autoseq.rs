//! Thue–Morse and paperfolding sequences and the exact Dirichlet coefficient
//! streams built from them.
//!
//! Both sequences are 2-automatic, so each term is read straight off the
//! binary expansion of the index. The recursive definitions are kept alongside
//! as the reference the bit tricks are tested against.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeqError {
    #[error("b_0 is undefined: the paperfolding sequence is indexed from n = 1")]
    PaperfoldingZero,
    #[error("coefficient streams are indexed from n = 1")]
    StreamIndexZero,
    #[error("stream parameter k must be at least 1")]
    InvalidK,
}

/// A single binary digit of an automatic sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bit(u8);

impl Bit {
    pub const ZERO: Bit = Bit(0);
    pub const ONE: Bit = Bit(1);

    pub fn new(value: u8) -> Option<Bit> {
        (value <= 1).then_some(Bit(value))
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn flip(self) -> Bit {
        Bit(1 - self.0)
    }

    /// `(-1)^bit`, i.e. `1 - 2·bit`.
    pub fn signed(self) -> i8 {
        1 - 2 * self.0 as i8
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Bit {
        Bit(b as u8)
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Thue–Morse term `t_n`: parity of the number of ones in `n`.
pub fn thue_morse(n: u64) -> Bit {
    Bit((n.count_ones() & 1) as u8)
}

/// `t_n` from `t_0 = 0`, `t_{2n} = t_n`, `t_{2n+1} = 1 - t_n`.
pub fn thue_morse_by_recurrence(n: u64) -> Bit {
    if n == 0 {
        Bit::ZERO
    } else if n.is_multiple_of(2) {
        thue_morse_by_recurrence(n / 2)
    } else {
        thue_morse_by_recurrence(n / 2).flip()
    }
}

/// Paperfolding term `b_n` for `n ≥ 1`.
///
/// Strip the trailing zeros of `n` to reach the odd part `m`; then `b_n` is
/// 0 when `m ≡ 1 (mod 4)` and 1 when `m ≡ 3 (mod 4)`.
pub fn paperfolding(n: u64) -> Result<Bit, SeqError> {
    if n == 0 {
        return Err(SeqError::PaperfoldingZero);
    }
    let odd = n >> n.trailing_zeros();
    Ok(Bit(((odd >> 1) & 1) as u8))
}

/// `b_n` from `b_{2n} = b_n`, `b_{4n+1} = 0`, `b_{4n+3} = 1`.
pub fn paperfolding_by_recurrence(n: u64) -> Result<Bit, SeqError> {
    match n {
        0 => Err(SeqError::PaperfoldingZero),
        n if n % 2 == 0 => paperfolding_by_recurrence(n / 2),
        n if n % 4 == 1 => Ok(Bit::ZERO),
        _ => Ok(Bit::ONE),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignedKind {
    /// `ε_n = (-1)^{t_n}`, defined for `n ≥ 0`.
    Epsilon,
    /// `β_n = (-1)^{b_n}`, defined for `n ≥ 1`.
    Beta,
}

pub fn signed_value(kind: SignedKind, n: u64) -> Result<i8, SeqError> {
    match kind {
        SignedKind::Epsilon => Ok(thue_morse(n).signed()),
        SignedKind::Beta => Ok(paperfolding(n)?.signed()),
    }
}

/// Which coefficient sequence a [`CoefficientStream`] produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StreamKind {
    /// `2 b_n - 1`
    PmPaperfolding,
    /// `b_n`
    PaperfoldingRaw,
    /// `β_n = (-1)^{b_n} = 1 - 2 b_n`
    PaperfoldingSigned,
    /// `ε_n`
    TmSigned,
    /// `ε_{n-1}`
    TmSignedShifted,
    /// `(2^{2k+1}+1) t_{n-1} + (2^{2k+1}-1) t_n`
    TmCombo { k: u32 },
    /// `N(n;k) = (2^{4k+1} - 2^{2k})(2 b_n - 1) + 2^{-(2k+1)} · TmCombo(k)`
    Theorem1 { k: u32 },
}

impl fmt::Display for StreamKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StreamKind::PmPaperfolding => f.write_str("pm_paperfolding"),
            StreamKind::PaperfoldingRaw => f.write_str("paperfolding_raw"),
            StreamKind::PaperfoldingSigned => f.write_str("paperfolding_signed"),
            StreamKind::TmSigned => f.write_str("tm_signed"),
            StreamKind::TmSignedShifted => f.write_str("tm_signed_shifted"),
            StreamKind::TmCombo { k } => write!(f, "tm_combo({k})"),
            StreamKind::Theorem1 { k } => write!(f, "theorem1_N({k})"),
        }
    }
}

/// Deterministic, index-addressed generator of exact Dirichlet coefficients
/// `a_1, a_2, ...` together with a uniform bound on `|a_n|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientStream {
    kind: StreamKind,
    bound: Rational,
}

impl CoefficientStream {
    pub fn new(kind: StreamKind) -> Result<Self, SeqError> {
        let bound = match kind {
            StreamKind::PmPaperfolding
            | StreamKind::PaperfoldingRaw
            | StreamKind::PaperfoldingSigned
            | StreamKind::TmSigned
            | StreamKind::TmSignedShifted => Rational::one(),
            StreamKind::TmCombo { k } => {
                check_k(k)?;
                Rational::from(pow2(2 * k + 2))
            }
            StreamKind::Theorem1 { k } => {
                check_k(k)?;
                // |tm part| / 2^{2k+1} <= 2^{2k+2} / 2^{2k+1} = 2
                Rational::from(pow2(4 * k + 1) - pow2(2 * k) + 2)
            }
        };
        Ok(CoefficientStream { kind, bound })
    }

    pub fn kind(&self) -> StreamKind {
        self.kind
    }

    /// Uniform bound on `|a_n|` over all `n ≥ 1`.
    pub fn bound(&self) -> &Rational {
        &self.bound
    }

    /// Exact coefficient `a_n`.
    pub fn coefficient(&self, n: u64) -> Result<Rational, SeqError> {
        let (num, den) = self.coefficient_parts(n)?;
        Ok(Rational::new(num, den))
    }

    /// `a_n` as an unreduced `(numerator, denominator)` pair with a
    /// power-of-two denominator. Cheaper than [`coefficient`](Self::coefficient)
    /// inside hot summation loops.
    pub fn coefficient_parts(&self, n: u64) -> Result<(BigInt, BigInt), SeqError> {
        if n == 0 {
            return Err(SeqError::StreamIndexZero);
        }
        let one = BigInt::one();
        let int = |v: i64| (BigInt::from(v), BigInt::one());
        Ok(match self.kind {
            StreamKind::PmPaperfolding => int(2 * paperfolding(n)?.value() as i64 - 1),
            StreamKind::PaperfoldingRaw => int(paperfolding(n)?.value() as i64),
            StreamKind::PaperfoldingSigned => int(paperfolding(n)?.signed() as i64),
            StreamKind::TmSigned => int(thue_morse(n).signed() as i64),
            StreamKind::TmSignedShifted => int(thue_morse(n - 1).signed() as i64),
            StreamKind::TmCombo { k } => (tm_combo(k, n), one),
            StreamKind::Theorem1 { k } => {
                let lemma = pow2(4 * k + 1) - pow2(2 * k);
                let pm = 2 * paperfolding(n)?.value() as i64 - 1;
                let den = pow2(2 * k + 1);
                (lemma * pm * &den + tm_combo(k, n), den)
            }
        })
    }
}

fn check_k(k: u32) -> Result<(), SeqError> {
    if k == 0 {
        Err(SeqError::InvalidK)
    } else {
        Ok(())
    }
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e as usize
}

fn tm_combo(k: u32, n: u64) -> BigInt {
    let p = pow2(2 * k + 1);
    let mut acc = BigInt::zero();
    if thue_morse(n - 1) == Bit::ONE {
        acc += &p + 1;
    }
    if thue_morse(n) == Bit::ONE {
        acc += &p - 1;
    }
    acc
}

/// True iff `|a_n| ≤ bound` for every `n` in `1..=upto`.
pub fn bound_holds(stream: &CoefficientStream, upto: u64) -> bool {
    (1..=upto).all(|n| {
        stream
            .coefficient(n)
            .map(|c| c.abs() <= *stream.bound())
            .unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn listings_match() {
        let t: Vec<u8> = (0..8).map(|n| thue_morse(n).value()).collect();
        assert_eq!(t, [0, 1, 1, 0, 1, 0, 0, 1]);
        let b: Vec<u8> = (1..=8).map(|n| paperfolding(n).unwrap().value()).collect();
        assert_eq!(b, [0, 0, 1, 0, 0, 1, 1, 0]);
    }

    #[test]
    fn thue_morse_examples() {
        assert_eq!(thue_morse(0), Bit::ZERO);
        assert_eq!(thue_morse(7), Bit::ONE);
        assert_eq!(thue_morse(1 << 40), Bit::ONE);
    }

    #[test]
    fn paperfolding_examples() {
        assert_eq!(paperfolding(3), Ok(Bit::ONE));
        assert_eq!(paperfolding(8), Ok(Bit::ZERO));
        assert_eq!(paperfolding(12), Ok(Bit::ONE));
        assert_eq!(paperfolding(0), Err(SeqError::PaperfoldingZero));
        assert_eq!(
            paperfolding_by_recurrence(0),
            Err(SeqError::PaperfoldingZero)
        );
    }

    #[test]
    fn signed_examples() {
        assert_eq!(signed_value(SignedKind::Epsilon, 0), Ok(1));
        assert_eq!(signed_value(SignedKind::Beta, 3), Ok(-1));
        assert_eq!(signed_value(SignedKind::Epsilon, 5), Ok(1));
        assert!(signed_value(SignedKind::Beta, 0).is_err());
    }

    #[test]
    fn stream_examples() {
        let pm = CoefficientStream::new(StreamKind::PmPaperfolding).unwrap();
        assert_eq!(pm.coefficient(1).unwrap(), rat(-1, 1));
        let n1 = CoefficientStream::new(StreamKind::Theorem1 { k: 1 }).unwrap();
        assert_eq!(n1.coefficient(1).unwrap(), rat(-217, 8));
        let combo = CoefficientStream::new(StreamKind::TmCombo { k: 1 }).unwrap();
        assert_eq!(combo.coefficient(2).unwrap(), rat(16, 1));
        assert_eq!(pm.coefficient(0), Err(SeqError::StreamIndexZero));
        assert_eq!(
            CoefficientStream::new(StreamKind::Theorem1 { k: 0 }),
            Err(SeqError::InvalidK)
        );
    }

    #[test]
    fn declared_bounds() {
        let b = |kind| CoefficientStream::new(kind).unwrap().bound().clone();
        assert_eq!(b(StreamKind::PmPaperfolding), rat(1, 1));
        assert_eq!(b(StreamKind::TmCombo { k: 1 }), rat(16, 1));
        assert_eq!(b(StreamKind::Theorem1 { k: 1 }), rat(30, 1));
        assert_eq!(b(StreamKind::Theorem1 { k: 2 }), rat(498, 1));
    }

    #[test]
    fn shifted_stream_starts_at_epsilon_zero() {
        let s = CoefficientStream::new(StreamKind::TmSignedShifted).unwrap();
        let got: Vec<Rational> = (1..=4).map(|n| s.coefficient(n).unwrap()).collect();
        assert_eq!(got, [rat(1, 1), rat(-1, 1), rat(-1, 1), rat(1, 1)]);
    }
}

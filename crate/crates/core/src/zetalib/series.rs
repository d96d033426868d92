use num_bigint::BigInt;
use num_traits::Zero;

use super::powers::InversePowers;
use super::{check_s, hurwitz_zeta, Method, SeriesValue, ZetaError};
use crate::autoseq::{signed_value, CoefficientStream, SignedKind};
use crate::exactnum::Rational;
use crate::realkernel::{indexed_sum, power_real, BigReal, Bracket};

/// A Dirichlet coefficient: exact `num/den`, or a real enclosure when it
/// depends on a non-integer `s`.
#[derive(Debug, Clone)]
pub enum Coefficient {
    Exact(BigInt, BigInt),
    Real(Bracket),
}

impl Coefficient {
    fn is_zero(&self) -> bool {
        match self {
            Coefficient::Exact(n, _) => n.is_zero(),
            Coefficient::Real(b) => b.is_exact() && b.mid().is_zero(),
        }
    }
}

/// Rigorous upper bound on `|Σ_{n>N} a_n n^{-s}|` for `|a_n| ≤ bound`:
/// `bound · N^{1-s} / (s-1)` by comparison with `∫_N^∞ x^{-s} dx`.
pub fn integral_tail_bound(
    bound: &Bracket,
    s: &BigReal,
    n_terms: u64,
    prec: u32,
) -> Result<BigReal, ZetaError> {
    let one = BigReal::one();
    let exponent = one.sub_exact(s);
    let n_pow = power_real(&Bracket::from_int(n_terms, prec), &exponent)?;
    let denom = Bracket::exact(s.sub_exact(&one), prec);
    let tail = n_pow.mul(&bound.abs()).div(&denom)?;
    Ok(tail.abs_upper())
}

fn guard_prec(prec: u32, n_terms: u64) -> u32 {
    prec + 16 + (64 - n_terms.leading_zeros())
}

/// `Σ_{n=1}^{N} a_n n^{-s}` plus the integral tail bound, for coefficients
/// given by `coeff(n)` with `|a_n| ≤ bound`.
pub fn dirichlet_series_real<F>(
    coeff: F,
    bound: &Bracket,
    s: &BigReal,
    n_terms: u64,
    prec: u32,
) -> Result<SeriesValue, ZetaError>
where
    F: Fn(u64) -> Coefficient + Sync,
{
    check_s(s)?;
    if n_terms == 0 {
        return Err(ZetaError::NoTerms);
    }
    let sum = partial_sum(coeff, s, n_terms, prec)?;
    let tail = integral_tail_bound(bound, s, n_terms, prec)?;
    Ok(SeriesValue {
        value: sum.add_error(&tail).with_prec(prec),
        terms_used: n_terms,
        tail_bound: tail,
        method: Method::DirectPartialSum,
        target_met: true,
    })
}

fn partial_sum<F>(coeff: F, s: &BigReal, n_terms: u64, prec: u32) -> Result<Bracket, ZetaError>
where
    F: Fn(u64) -> Coefficient + Sync,
{
    let wp = guard_prec(prec, n_terms);
    let powers = InversePowers::new(s, n_terms, wp)?;
    Ok(indexed_sum(1, n_terms, wp, |n| {
        let c = coeff(n);
        (!c.is_zero()).then(|| powers.scaled(&c, n))
    }))
}

/// Block length used by [`signed_thue_morse_series`].
pub const TM_BLOCK: u64 = 8;

/// Bound on `|Σ_{m≥N} ε_m (m+1)^{-s}|` for `N` a multiple of 8.
///
/// For `B ≡ 0 (mod 8)` the block `ε_B, ..., ε_{B+7}` is `±(ε_0, ..., ε_7)`,
/// and `Σ_{i<8} ε_i g(x+i) = (1-E)(1-E²)(1-E⁴) g(x)` with `E` the unit shift.
/// Its size is at most `8 · max |g'''|`, which for `g(x) = (x+1)^{-s}` gives
/// `8 s(s+1)(s+2) (B+1)^{-s-3}`. Summing over blocks against an integral:
/// `8 (s)_3 X^{-s-3} (1 + X/(8(s+2)))` with `X = N + 1`.
pub fn thue_morse_block_tail(s: &BigReal, n_terms: u64, prec: u32) -> Result<BigReal, ZetaError> {
    check_s(s)?;
    if n_terms == 0 || !n_terms.is_multiple_of(TM_BLOCK) {
        return Err(ZetaError::NoTerms);
    }
    let sb = Bracket::exact(s.clone(), prec);
    let rising = sb
        .mul(&sb.add(&Bracket::one(prec)))
        .mul(&sb.add(&Bracket::from_int(2, prec)));
    let x = Bracket::from_int(n_terms + 1, prec);
    let sigma = s.add_exact(&BigReal::from_int(3));
    let x_pow = power_real(&x, &sigma.neg())?;
    let integral = x.div(&sb.add(&Bracket::from_int(2, prec)).mul_int(8))?;
    let bound = rising
        .mul(&x_pow)
        .mul(&Bracket::one(prec).add(&integral))
        .mul_int(8);
    Ok(bound.abs_upper())
}

/// `Σ_{n≥1} ε_{n-1} n^{-s}` summed to `N` rounded up to a multiple of 8,
/// with the block-cancellation tail bound of [`thue_morse_block_tail`]
/// in place of the generic integral bound.
pub fn signed_thue_morse_series(
    s: &BigReal,
    n_terms: u64,
    prec: u32,
) -> Result<SeriesValue, ZetaError> {
    check_s(s)?;
    if n_terms == 0 {
        return Err(ZetaError::NoTerms);
    }
    let n_terms = n_terms.div_ceil(TM_BLOCK) * TM_BLOCK;
    let sum = partial_sum(
        |n| {
            Coefficient::Exact(
                BigInt::from(signed_value(SignedKind::Epsilon, n - 1).expect("n >= 1")),
                BigInt::from(1),
            )
        },
        s,
        n_terms,
        prec,
    )?;
    let tail = thue_morse_block_tail(s, n_terms, prec)?;
    Ok(SeriesValue {
        value: sum.add_error(&tail).with_prec(prec),
        terms_used: n_terms,
        tail_bound: tail,
        method: Method::DirectPartialSum,
        target_met: true,
    })
}

/// Truncated evaluation of `Σ_{n≥1} a_n n^{-s}` for an exact coefficient stream.
///
/// Each term is formed from the exact rational coefficient; the omitted tail
/// is bounded by `A · N^{1-s}/(s-1)` with `A` the stream's declared bound.
pub fn dirichlet_series(
    stream: &CoefficientStream,
    s: &BigReal,
    n_terms: u64,
    prec: u32,
) -> Result<SeriesValue, ZetaError> {
    let bound = Bracket::from_rational(stream.bound(), prec);
    dirichlet_series_real(
        |n| {
            let (num, den) = stream.coefficient_parts(n).expect("n >= 1");
            Coefficient::Exact(num, den)
        },
        &bound,
        s,
        n_terms,
        prec,
    )
}

/// `δ(s) = 4^{-s} ζ(s, 3/4) / (1 - 2^{-s})`.
pub fn delta_via_functional_equation(
    s: &BigReal,
    prec: u32,
    target_eps: &BigReal,
) -> Result<SeriesValue, ZetaError> {
    check_s(s)?;
    let wp = prec + 16;
    let h = hurwitz_zeta(
        s,
        &Rational::new(BigInt::from(3), BigInt::from(4)),
        wp,
        target_eps,
    )?;
    let neg_s = s.neg();
    let four_pow = power_real(&Bracket::from_int(4, wp), &neg_s)?;
    let two_pow = power_real(&Bracket::from_int(2, wp), &neg_s)?;
    let denom = Bracket::one(wp).sub(&two_pow);
    let value = four_pow.mul(&h.value).div(&denom)?.with_prec(prec);
    Ok(SeriesValue {
        value,
        terms_used: h.terms_used,
        tail_bound: h.tail_bound,
        method: Method::FunctionalEquation,
        target_met: h.target_met,
    })
}

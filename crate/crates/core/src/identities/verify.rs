use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::report::{format_s, params, VerificationReport};
use super::IdentityError;
use crate::autoseq::{
    paperfolding, signed_value, thue_morse, Bit, CoefficientStream, SignedKind, StreamKind,
};
use crate::exactnum::{
    corollary_denominator, euler_number_abs, hurwitz34_zeta_coefficient, lemma4_coefficient,
    pi_coefficient, zeta_even_coefficient, ExactError, Rational,
};
use crate::realkernel::{
    exp, generalized_binomial, pi, pi_pow, power_real, BigReal, Bracket, Round,
};
use crate::zetalib::{
    default_target_eps, dirichlet_series, dirichlet_series_real, hurwitz_zeta, polygamma_34,
    polygamma_from_hurwitz, riemann_zeta, signed_thue_morse_series, tight_target_eps, Coefficient,
    SeriesValue, ZetaError, TM_BLOCK,
};

fn require_k(k: u32) -> Result<(), IdentityError> {
    if k == 0 {
        Err(ExactError::InvalidK(k).into())
    } else {
        Ok(())
    }
}

fn odd(k: u32) -> u64 {
    2 * k as u64 + 1
}

fn quarter(n: i64) -> Rational {
    Rational::new(n.into(), 4.into())
}

fn stream(kind: StreamKind) -> CoefficientStream {
    CoefficientStream::new(kind).expect("k checked by caller")
}

fn series(kind: StreamKind, s: u64, n_terms: u64, prec: u32) -> Result<SeriesValue, ZetaError> {
    dirichlet_series(&stream(kind), &BigReal::from_int(s), n_terms, prec)
}

/// `2^x` for real `x`.
fn two_pow(x: &BigReal, prec: u32) -> Result<Bracket, IdentityError> {
    Ok(power_real(&Bracket::from_int(2, prec), x)?)
}

/// `ζ(2k+1, 3/4) = 2^{2k}(2^{2k+1}-1) ζ(2k+1) - (2^{2k-1}|E_{2k}|/(2k)!) π^{2k+1}`.
pub fn verify_lemma1(k: u32, prec: u32) -> Result<VerificationReport, IdentityError> {
    let started = Instant::now();
    require_k(k)?;
    let s = BigReal::from_int(odd(k));
    let lhs = hurwitz_zeta(&s, &quarter(3), prec, &tight_target_eps(prec))?;
    // the zeta multiple is about 2^{4k+1}; carry that many extra bits
    let wp = prec + 4 * k + 8;
    let zeta = riemann_zeta(&s, wp, &tight_target_eps(wp))?;
    let rhs = zeta
        .value
        .mul_int(hurwitz34_zeta_coefficient(k)?)
        .sub(&pi_pow(odd(k) as i64, wp).mul_rational(&pi_coefficient(k)?))
        .with_prec(prec);
    Ok(VerificationReport::new(
        "lemma1",
        params([("k", k.to_string()), ("prec_bits", prec.to_string())]),
        lhs.value,
        rhs,
        lhs.terms_used + zeta.terms_used,
        started,
    ))
}

/// `(1 - 2^{-s}) δ(s) = 4^{-s} ζ(s, 3/4)` with `δ` summed directly.
pub fn verify_delta_relation(
    s: &BigReal,
    n_terms: u64,
    prec: u32,
) -> Result<VerificationReport, IdentityError> {
    let started = Instant::now();
    let wp = prec + 16;
    let delta = dirichlet_series(&stream(StreamKind::PaperfoldingRaw), s, n_terms, wp)?;
    let factor = Bracket::one(wp).sub(&two_pow(&s.neg(), wp)?);
    let lhs = factor.mul(&delta.value).with_prec(prec);
    let h = hurwitz_zeta(s, &quarter(3), wp, &tight_target_eps(wp))?;
    let rhs = power_real(&Bracket::from_int(4, wp), &s.neg())?
        .mul(&h.value)
        .with_prec(prec);
    Ok(VerificationReport::new(
        "delta",
        params([
            ("s", format_s(s)),
            ("N", n_terms.to_string()),
            ("prec_bits", prec.to_string()),
        ]),
        lhs,
        rhs,
        delta.terms_used + h.terms_used,
        started,
    ))
}

/// Sum of exact fractions by pairwise halving, which keeps the operands of
/// each addition balanced in size.
fn tree_sum(mut terms: Vec<Rational>) -> Rational {
    if terms.is_empty() {
        return Rational::zero();
    }
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len().div_ceil(2));
        let mut it = terms.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a + b),
                None => next.push(a),
            }
        }
        terms = next;
    }
    terms.pop().expect("nonempty")
}

fn inverse_power(n: u64, s: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(n).pow(s))
}

fn paperfolding_partial(s: u32, upto: u64) -> Rational {
    tree_sum(
        (1..=upto)
            .filter(|&n| paperfolding(n).expect("n >= 1") == Bit::ONE)
            .map(|n| inverse_power(n, s))
            .collect(),
    )
}

/// Finite splitting of `δ` over residues, checked in exact arithmetic:
/// `Σ_{n≤4N} b_n n^{-s} = 2^{-s} Σ_{n≤2N} b_n n^{-s} + Σ_{m<N} (4m+3)^{-s}`.
///
/// Both sides are converted to brackets at a precision large enough that
/// unequal rationals give disjoint brackets; equal ones give identical
/// brackets and a residual of exactly zero.
pub fn verify_split_exact(s: u32, n: u64) -> Result<VerificationReport, IdentityError> {
    let started = Instant::now();
    if s < 2 {
        return Err(IdentityError::InvalidParameter(format!(
            "exact splitting needs an integer s >= 2, got {s}"
        )));
    }
    if n == 0 {
        return Err(ZetaError::NoTerms.into());
    }
    let lhs = paperfolding_partial(s, 4 * n);
    let head = paperfolding_partial(s, 2 * n) * inverse_power(2, s);
    let odd_tail = tree_sum((0..n).map(|m| inverse_power(4 * m + 3, s)).collect());
    let rhs = head + odd_tail;

    // |lhs - rhs| ≥ 1/(den_l den_r) when they differ; both values are below 2
    let prec = (lhs.denom().bits() + rhs.denom().bits() + 8) as u32;
    Ok(VerificationReport::new(
        "split_exact",
        params([
            ("s", s.to_string()),
            ("N", n.to_string()),
            ("prec_bits", prec.to_string()),
        ]),
        Bracket::from_rational(&lhs, prec),
        Bracket::from_rational(&rhs, prec),
        7 * n,
        started,
    ))
}

/// `(2^{4k+1} - 2^{2k}) Σ (2b_n - 1) n^{-2k-1} = -(2^{2k-1}|E_{2k}|/(2k)!) π^{2k+1}`.
pub fn verify_lemma4(k: u32, n_terms: u64, prec: u32) -> Result<VerificationReport, IdentityError> {
    let started = Instant::now();
    require_k(k)?;
    let wp = prec + 4 * k + 8;
    let sum = series(StreamKind::PmPaperfolding, odd(k), n_terms, wp)?;
    let lhs = sum.value.mul_int(lemma4_coefficient(k)?).with_prec(prec);
    let rhs = pi_pow(odd(k) as i64, wp)
        .mul_rational(&pi_coefficient(k)?)
        .neg()
        .with_prec(prec);
    Ok(VerificationReport::new(
        "lemma4",
        params([
            ("k", k.to_string()),
            ("N", n_terms.to_string()),
            ("prec_bits", prec.to_string()),
        ]),
        lhs,
        rhs,
        sum.terms_used,
        started,
    ))
}

fn corollary_rhs(k: u32, prec: u32) -> Result<Bracket, IdentityError> {
    let r = Rational::new(euler_number_abs(k as usize), corollary_denominator(k)?);
    Ok(pi_pow(odd(k) as i64, prec + 8)
        .mul_rational(&r)
        .with_prec(prec))
}

/// `Σ_{n≥1} β_n n^{-2k-1} = π^{2k+1}|E_{2k}| / ((2^{2k+2}-2)(2k)!)`.
pub fn verify_corollary(
    k: u32,
    n_terms: u64,
    prec: u32,
) -> Result<VerificationReport, IdentityError> {
    let started = Instant::now();
    require_k(k)?;
    let sum = series(StreamKind::PaperfoldingSigned, odd(k), n_terms, prec)?;
    Ok(VerificationReport::new(
        "corollary",
        params([
            ("k", k.to_string()),
            ("N", n_terms.to_string()),
            ("prec_bits", prec.to_string()),
        ]),
        sum.value,
        corollary_rhs(k, prec)?,
        sum.terms_used,
        started,
    ))
}

/// Negative control: the same closed form against `Σ_{n≥0} β_n (n+1)^{-2k-1}`,
/// with `b_0` supplied by the caller since the sequence leaves it undefined.
/// Expected to fail for either choice.
pub fn verify_corollary_literal(
    k: u32,
    b0: Bit,
    n_terms: u64,
    prec: u32,
) -> Result<VerificationReport, IdentityError> {
    let started = Instant::now();
    require_k(k)?;
    let coeff = |n: u64| {
        let beta = if n == 1 {
            b0.signed()
        } else {
            signed_value(SignedKind::Beta, n - 1).expect("n - 1 >= 1")
        };
        Coefficient::Exact(BigInt::from(beta), BigInt::one())
    };
    let sum = dirichlet_series_real(
        coeff,
        &Bracket::one(prec),
        &BigReal::from_int(odd(k)),
        n_terms,
        prec,
    )?;
    Ok(VerificationReport::new(
        "corollary_literal",
        params([
            ("k", k.to_string()),
            ("b0", b0.value().to_string()),
            ("N", n_terms.to_string()),
            ("prec_bits", prec.to_string()),
        ]),
        sum.value,
        corollary_rhs(k, prec)?,
        sum.terms_used,
        started,
    ))
}

/// `Σ ((2^s+1) t_{n-1} + (2^s-1) t_n) n^{-s} = 2^s ζ(s)`, coefficients formed
/// from an enclosure of `2^s` with uniform bound `2·2^s`.
pub fn verify_toth(
    s: &BigReal,
    n_terms: u64,
    prec: u32,
) -> Result<VerificationReport, IdentityError> {
    let started = Instant::now();
    let wp = prec + 48;
    let two_s = two_pow(s, wp)?;
    let one = Bracket::one(wp);
    let prev_only = two_s.add(&one);
    let cur_only = two_s.sub(&one);
    let both = two_s.mul_2exp(1);
    let coeff = |n: u64| match (thue_morse(n - 1), thue_morse(n)) {
        (Bit::ZERO, Bit::ZERO) => Coefficient::Exact(BigInt::zero(), BigInt::one()),
        (Bit::ONE, Bit::ZERO) => Coefficient::Real(prev_only.clone()),
        (Bit::ZERO, Bit::ONE) => Coefficient::Real(cur_only.clone()),
        _ => Coefficient::Real(both.clone()),
    };
    let sum = dirichlet_series_real(coeff, &both, s, n_terms, prec)?;
    let zeta = riemann_zeta(s, wp, &tight_target_eps(wp))?;
    let rhs = two_s.mul(&zeta.value).with_prec(prec);
    Ok(VerificationReport::new(
        "toth",
        params([
            ("s", format_s(s)),
            ("N", n_terms.to_string()),
            ("prec_bits", prec.to_string()),
        ]),
        sum.value,
        rhs,
        sum.terms_used + zeta.terms_used,
        started,
    ))
}

/// `ζ(2k+1) - (2^{2k-1}|E_{2k}|/(2k)!) π^{2k+1} = Σ N(n;k) n^{-2k-1}`.
pub fn verify_theorem1(
    k: u32,
    n_terms: u64,
    prec: u32,
) -> Result<VerificationReport, IdentityError> {
    let started = Instant::now();
    require_k(k)?;
    let wp = prec + 8;
    let s = BigReal::from_int(odd(k));
    let zeta = riemann_zeta(&s, wp, &tight_target_eps(wp))?;
    let lhs = zeta
        .value
        .sub(&pi_pow(odd(k) as i64, wp).mul_rational(&pi_coefficient(k)?))
        .with_prec(prec);
    let sum = series(StreamKind::Theorem1 { k }, odd(k), n_terms, prec)?;
    Ok(VerificationReport::new(
        "theorem1",
        params([
            ("k", k.to_string()),
            ("N", n_terms.to_string()),
            ("prec_bits", prec.to_string()),
        ]),
        lhs,
        sum.value,
        zeta.terms_used + sum.terms_used,
        started,
    ))
}

/// `Σ_{n≥1} ε_{n-1} n^{-s} = ((1 - 2^s)/(1 + 2^s)) Σ_{n≥1} ε_n n^{-s}`.
pub fn verify_allouche_cohen_ratio(
    s: &BigReal,
    n_terms: u64,
    prec: u32,
) -> Result<VerificationReport, IdentityError> {
    let started = Instant::now();
    let wp = prec + 16;
    let shifted = dirichlet_series(&stream(StreamKind::TmSignedShifted), s, n_terms, prec)?;
    let plain = dirichlet_series(&stream(StreamKind::TmSigned), s, n_terms, wp)?;
    let two_s = two_pow(s, wp)?;
    let one = Bracket::one(wp);
    let ratio = one.sub(&two_s).div(&one.add(&two_s))?;
    let rhs = ratio.mul(&plain.value).with_prec(prec);
    Ok(VerificationReport::new(
        "ac_ratio",
        params([
            ("s", format_s(s)),
            ("N", n_terms.to_string()),
            ("prec_bits", prec.to_string()),
        ]),
        shifted.value,
        rhs,
        shifted.terms_used + plain.terms_used,
        started,
    ))
}

/// Terms for the inner sum at exponent `sigma`: the smallest power-of-two
/// multiple of the block length whose block tail estimate is below
/// `2^{-prec}`, capped at `cap`.
fn inner_terms(sigma: f64, prec: u32, cap: u64) -> u64 {
    let goal = -(prec as f64);
    let estimate = |n: u64| {
        let x = (n + 1) as f64;
        3.0 + (sigma * (sigma + 1.0) * (sigma + 2.0)).log2() - (sigma + 3.0) * x.log2()
            + (1.0 + x / (8.0 * (sigma + 2.0))).log2()
    };
    let cap = cap.max(TM_BLOCK);
    let mut n = 64u64;
    while n < cap && estimate(n) > goal {
        n *= 2;
    }
    n.min(cap).div_ceil(TM_BLOCK) * TM_BLOCK
}

/// `Σ_{n≥0} ε_n (n+1)^{-s} = Σ_{k≥1} 2^{-s-k} C(s+k-1, k) Σ_{n≥0} ε_n (n+1)^{-s-k}`,
/// with the outer sum cut at `k = K`.
///
/// Every inner sum is a rigorous enclosure. The omitted outer terms are not
/// bounded rigorously; instead the allowance `2^{-s-K} C(s+K, K) ζ(s+K)` is
/// added to the right-hand radius and recorded in the report parameters.
pub fn verify_allouche_cohen_recursion(
    s: &BigReal,
    depth: u32,
    n_terms: u64,
    prec: u32,
) -> Result<VerificationReport, IdentityError> {
    let started = Instant::now();
    let wp = prec + 16;
    let lhs = signed_thue_morse_series(s, n_terms, prec)?;
    let mut terms_used = lhs.terms_used;
    let mut outer = Bracket::zero(wp);
    for k in 1..=depth as u64 {
        let sigma = s.add_exact(&BigReal::from_int(k));
        let inner_n = inner_terms(sigma.to_f64(), wp, n_terms);
        let inner = signed_thue_morse_series(&sigma, inner_n, wp)?;
        terms_used += inner.terms_used;
        let weight = two_pow(&sigma.neg(), wp)?.mul(&generalized_binomial(s, k, wp));
        outer = outer.add(&weight.mul(&inner.value));
    }
    let sigma = s.add_exact(&BigReal::from_int(depth));
    let zeta = riemann_zeta(&sigma, 64, &default_target_eps(64))?;
    let allowance = two_pow(&sigma.neg(), 64)?
        .mul(&generalized_binomial(
            &s.add_exact(&BigReal::one()),
            depth as u64,
            64,
        ))
        .mul(&zeta.value)
        .abs_upper();
    let rhs = outer.with_prec(prec).add_error(&allowance);
    Ok(VerificationReport::new(
        "ac_recursion",
        params([
            ("s", format_s(s)),
            ("K", depth.to_string()),
            ("N", lhs.terms_used.to_string()),
            ("prec_bits", prec.to_string()),
            ("allowance", allowance.to_scientific(4, Round::Ceil)),
        ]),
        lhs.value,
        rhs,
        terms_used,
        started,
    ))
}

/// `ζ(2k) = (-1)^{k+1} B_{2k} (2π)^{2k} / (2 (2k)!)`.
pub fn verify_euler_even(k: u32, prec: u32) -> Result<VerificationReport, IdentityError> {
    let started = Instant::now();
    require_k(k)?;
    let zeta = riemann_zeta(
        &BigReal::from_int(2 * k as u64),
        prec,
        &tight_target_eps(prec),
    )?;
    let rhs = pi_pow(2 * k as i64, prec + 8)
        .mul_rational(&zeta_even_coefficient(k)?)
        .with_prec(prec);
    Ok(VerificationReport::new(
        "euler_even",
        params([("k", k.to_string()), ("prec_bits", prec.to_string())]),
        zeta.value,
        rhs,
        zeta.terms_used,
        started,
    ))
}

/// Largest number of terms the exponentially convergent sums may use.
pub const LAMBERT_MAX_TERMS: u64 = 100;

/// `c π^m - 2 Σ_{j≥1} 1/(j^m (e^{2πj} - 1))`.
///
/// Summation stops once the tail bound drops below `2^{-prec-4}` or after
/// `max_terms` terms. With `include_tail` false the tail bound is left out of
/// the radius, which makes an under-truncated sum visibly wrong.
fn lambert_form(
    m: u32,
    c: &Rational,
    prec: u32,
    max_terms: u64,
    include_tail: bool,
) -> Result<(Bracket, u64), IdentityError> {
    let wp = prec + 32;
    let e2pi = exp(&pi(wp).mul_2exp(1))?;
    let one = Bracket::one(wp);
    let goal = BigReal::pow2(-(prec as i64) - 4);
    let mut power = one.clone();
    let mut sum = Bracket::zero(wp);
    let mut used = 0;
    let mut tail = BigReal::zero();
    for j in 1..=max_terms {
        power = power.mul(&e2pi);
        let denom = power.sub(&one).mul_int(BigInt::from(j).pow(m));
        sum = sum.add(&denom.recip()?);
        used = j;
        // Σ_{i>j} 1/(i^m (e^{2πi}-1)) ≤ e^{-2π(j+1)} / ((j+1)^m (1-e^{-2π})²) ≤ 2/(e^{2π(j+1)} (j+1)^m)
        let next = power.mul(&e2pi).mul_int(BigInt::from(j + 1).pow(m));
        tail = Bracket::from_int(2, wp).div(&next)?.abs_upper();
        if tail <= goal {
            break;
        }
    }
    if include_tail {
        sum = sum.add_error(&tail);
    }
    let value = pi_pow(m as i64, wp).mul_rational(c).sub(&sum.mul_2exp(1));
    Ok((value.with_prec(prec), used))
}

fn lambert_report(
    id: &str,
    m: u32,
    c: Rational,
    prec: u32,
    max_terms: u64,
    include_tail: bool,
) -> Result<VerificationReport, IdentityError> {
    let started = Instant::now();
    let zeta = riemann_zeta(&BigReal::from_int(m), prec, &tight_target_eps(prec))?;
    let (rhs, used) = lambert_form(m, &c, prec, max_terms, include_tail)?;
    Ok(VerificationReport::new(
        id,
        params([
            ("terms", used.to_string()),
            ("coefficient", crate::exactnum::format_rational(&c)),
            ("prec_bits", prec.to_string()),
        ]),
        zeta.value,
        rhs,
        zeta.terms_used + used,
        started,
    ))
}

/// `ζ(3) = (7/180) π³ - 2 Σ 1/(j³ (e^{2πj} - 1))`, an oracle for odd zeta
/// values that does not go through Euler–Maclaurin.
pub fn verify_ramanujan_zeta3(prec: u32) -> Result<VerificationReport, IdentityError> {
    lambert_report(
        "ramanujan_zeta3",
        3,
        Rational::new(7.into(), 180.into()),
        prec,
        LAMBERT_MAX_TERMS,
        true,
    )
}

/// Negative control: the `ζ(3)` formula cut after `terms` terms with the
/// tail ignored.
pub fn verify_ramanujan_truncated(
    terms: u64,
    prec: u32,
) -> Result<VerificationReport, IdentityError> {
    lambert_report(
        "ramanujan_truncated",
        3,
        Rational::new(7.into(), 180.into()),
        prec,
        terms.max(1),
        false,
    )
}

/// `ζ(7) = (19/56700) π⁷ - 2 Σ 1/(j⁷ (e^{2πj} - 1))`.
pub fn verify_plouffe_zeta7(prec: u32) -> Result<VerificationReport, IdentityError> {
    lambert_report(
        "plouffe_zeta7",
        7,
        Rational::new(19.into(), 56700.into()),
        prec,
        LAMBERT_MAX_TERMS,
        true,
    )
}

/// Negative control: the `ζ(7)` formula with the leading coefficient
/// misprinted as `19/57600`.
pub fn verify_plouffe_zeta7_alt(prec: u32) -> Result<VerificationReport, IdentityError> {
    lambert_report(
        "plouffe_zeta7_alt",
        7,
        Rational::new(19.into(), 57600.into()),
        prec,
        LAMBERT_MAX_TERMS,
        true,
    )
}

/// Catalan's constant two ways: `(π² - ζ(2, 3/4))/8` against
/// `(ζ(2, 1/4) - ζ(2, 3/4))/16`.
pub fn verify_catalan(prec: u32) -> Result<VerificationReport, IdentityError> {
    let started = Instant::now();
    let wp = prec + 8;
    let two = BigReal::from_int(2);
    let eps = tight_target_eps(wp);
    let h3 = hurwitz_zeta(&two, &quarter(3), wp, &eps)?;
    let h1 = hurwitz_zeta(&two, &quarter(1), wp, &eps)?;
    let c1 = pi(wp).sqr().sub(&h3.value).mul_2exp(-3).with_prec(prec);
    let c2 = h1.value.sub(&h3.value).mul_2exp(-4).with_prec(prec);
    Ok(VerificationReport::new(
        "catalan",
        params([("prec_bits", prec.to_string())]),
        c1,
        c2,
        h1.terms_used + h3.terms_used,
        started,
    ))
}

/// `ψ^{(2k)}(3/4)` in closed form against `-(2k)! ζ(2k+1, 3/4)`.
pub fn verify_polygamma(k: u32, prec: u32) -> Result<VerificationReport, IdentityError> {
    let started = Instant::now();
    require_k(k)?;
    let closed = polygamma_34(k, prec)?;
    let via_hurwitz = polygamma_from_hurwitz(2 * k, &quarter(3), prec)?;
    Ok(VerificationReport::new(
        "polygamma",
        params([("k", k.to_string()), ("prec_bits", prec.to_string())]),
        closed,
        via_hurwitz,
        0,
        started,
    ))
}

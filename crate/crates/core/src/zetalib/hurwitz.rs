//! Hurwitz zeta by Euler–Maclaurin summation.
//!
//! For `f(x) = (x + a)^{-s}`:
//!
//! ```text
//! ζ(s, a) = Σ_{n<N} f(n) + (N+a)^{1-s}/(s-1) + f(N)/2
//!         + Σ_{j=1}^{J} B_{2j}/(2j)! · s(s+1)···(s+2j-2) · (N+a)^{-s-2j+1} + R_J
//! ```
//!
//! `f` is completely monotone on `[0, ∞)`, so `R_J` has the sign of the
//! first omitted correction `T_{J+1}` and `|R_J| ≤ |T_{J+1}|`. The radius
//! uses `|T_{J+1}| · (s+2J+1)/(s+2J)` as the remainder bound.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{check_s, Method, SeriesValue, ZetaError};
use crate::exactnum::{bernoulli, factorial, Rational};
use crate::realkernel::{indexed_sum, power_real, BigReal, Bracket, Round, RAD_PREC};

/// Largest `N` the parameter search will consider.
const MAX_TERMS: u64 = 5_000_000;
/// Largest number of correction terms.
const MAX_CORRECTIONS: u64 = 4_000;

/// `2^{-P/2}`.
pub fn default_target_eps(prec: u32) -> BigReal {
    BigReal::pow2(-(prec as i64) / 2)
}

/// `2^{-(P-8)}`: truncation error a few bits below the working precision.
pub fn tight_target_eps(prec: u32) -> BigReal {
    BigReal::pow2(-(prec as i64 - 8))
}

/// Estimated `log2 |T_j|` for each `j ≥ 1` until the terms stop decreasing.
fn correction_log2_estimates(s: f64, x: f64, max_j: u64) -> Vec<f64> {
    let log2_two_pi = (2.0 * std::f64::consts::PI).log2();
    let lx = x.log2();
    // |B_{2j}|/(2j)! = 2 ζ(2j)/(2π)^{2j} ≤ 2·(π²/6)/(2π)^{2j}
    let lead = (2.0 * std::f64::consts::PI.powi(2) / 6.0).log2();
    let mut rising = s.log2(); // log2 of s(s+1)···(s+2j-2)
    let mut out = Vec::new();
    for j in 1..=max_j {
        let jf = j as f64;
        let est = lead - 2.0 * jf * log2_two_pi + rising - (s + 2.0 * jf - 1.0) * lx;
        if let Some(&prev) = out.last() {
            if est > prev {
                break;
            }
        }
        out.push(est);
        rising += (s + 2.0 * jf - 1.0).log2() + (s + 2.0 * jf).log2();
    }
    out
}

/// Choose `(N, J)` so that the estimated remainder is below `target_eps`.
///
/// Returns `(N, J, reachable)`; when unreachable within the caps, the pair
/// with the smallest estimated remainder is returned.
pub fn em_parameters(s: f64, a: f64, target_eps: &BigReal) -> (u64, u64, bool) {
    let goal = target_eps.log2_approx() - 4.0;
    let mut n = (s.ceil() as u64).max(10);
    let mut best = (n, 1, f64::INFINITY);
    loop {
        let est = correction_log2_estimates(s, n as f64 + a, MAX_CORRECTIONS + 1);
        // est[j-1] estimates T_j; including J terms leaves T_{J+1} as remainder
        if let Some(idx) = est.iter().position(|&e| e <= goal) {
            return (n, (idx as u64).max(1), true);
        }
        if let Some((idx, &e)) = est.iter().enumerate().min_by(|x, y| x.1.total_cmp(y.1)) {
            if e < best.2 {
                best = (n, (idx as u64).max(1), e);
            }
        }
        if n >= MAX_TERMS {
            return (best.0, best.1, false);
        }
        n = (n + n / 2).min(MAX_TERMS);
    }
}

fn shift_bracket(num: &BigInt, den: &BigInt, prec: u32) -> Bracket {
    Bracket::from_ratio(num, den, prec)
}

/// Euler–Maclaurin evaluation of `ζ(s, a) = Σ_{n≥0} (n+a)^{-s}`.
pub fn hurwitz_zeta(
    s: &BigReal,
    a: &Rational,
    prec: u32,
    target_eps: &BigReal,
) -> Result<SeriesValue, ZetaError> {
    check_s(s)?;
    if !a.is_positive() || *a > Rational::one() {
        return Err(ZetaError::ShiftOutOfRange);
    }
    let s_f = s.to_f64();
    let a_f = BigReal::from_rational(a, 64, Round::Trunc).0.to_f64();
    let (n_terms, mut corrections, _) = em_parameters(s_f, a_f, target_eps);
    let mut n_terms = n_terms;

    loop {
        let value = hurwitz_zeta_fixed(s, a, prec, n_terms, corrections)?;
        let met = value.tail_bound <= *target_eps;
        if met || n_terms >= MAX_TERMS {
            return Ok(SeriesValue {
                target_met: met,
                ..value
            });
        }
        // the f64 estimate was optimistic; enlarge both knobs and retry
        n_terms = (n_terms * 2).min(MAX_TERMS);
        corrections = (corrections + corrections / 2 + 1).min(MAX_CORRECTIONS);
    }
}

/// One Euler–Maclaurin evaluation with explicit `N` head terms and `J`
/// corrections; the remainder bound is folded into the radius either way.
pub fn hurwitz_zeta_fixed(
    s: &BigReal,
    a: &Rational,
    prec: u32,
    n_terms: u64,
    corrections: u64,
) -> Result<SeriesValue, ZetaError> {
    check_s(s)?;
    if !a.is_positive() || *a > Rational::one() {
        return Err(ZetaError::ShiftOutOfRange);
    }
    if n_terms == 0 {
        return Err(ZetaError::NoTerms);
    }
    let wp = prec + 24 + (64 - n_terms.leading_zeros());
    let neg_s = s.neg();
    let (p, q) = (a.numer().clone(), a.denom().clone());

    let head = indexed_sum(0, n_terms - 1, wp, |n| {
        let x = shift_bracket(&(&q * n + &p), &q, wp);
        Some(power_real(&x, &neg_s).expect("n + a > 0"))
    });

    let x = shift_bracket(&(&q * n_terms + &p), &q, wp);
    let f_n = power_real(&x, &neg_s)?;
    let s_b = Bracket::exact(s.clone(), wp);
    let one = Bracket::one(wp);
    let integral = x.mul(&f_n).div(&s_b.sub(&one))?;
    let half = f_n.mul_2exp(-1);

    let inv_x = x.recip()?;
    let inv_x2 = inv_x.sqr();
    let mut rising = s_b.clone();
    let mut power = f_n.mul(&inv_x);
    let mut corr_sum = Bracket::zero(wp);
    let mut next_term = Bracket::zero(wp);
    for j in 1..=corrections + 1 {
        let b = bernoulli(2 * j as usize);
        let coeff = Bracket::from_ratio(b.numer(), &(b.denom() * factorial(2 * j)), wp);
        let term = coeff.mul(&rising).mul(&power);
        if j <= corrections {
            corr_sum = corr_sum.add(&term);
        } else {
            next_term = term;
        }
        let k1 = Bracket::from_int(2 * j - 1, wp);
        let k2 = Bracket::from_int(2 * j, wp);
        rising = rising.mul(&s_b.add(&k1)).mul(&s_b.add(&k2));
        power = power.mul(&inv_x2);
    }

    // |R_J| ≤ |T_{J+1}| · (s + 2J + 1) / (s + 2J)
    let jj = BigInt::from(2 * corrections);
    let factor_num = s.add_exact(&BigReal::from_int(&jj + 1));
    let factor_den = s.add_exact(&BigReal::from_int(jj));
    let factor = factor_num.div(&factor_den, RAD_PREC, Round::Ceil).0;
    let remainder = next_term.abs_upper().mul(&factor, RAD_PREC, Round::Ceil).0;

    let total = head.add(&integral).add(&half).add(&corr_sum);
    let value = total.add_error(&remainder).with_prec(prec);
    Ok(SeriesValue {
        value,
        terms_used: n_terms,
        tail_bound: remainder,
        method: Method::EulerMaclaurin,
        target_met: true,
    })
}

/// `ζ(s) = ζ(s, 1)`.
pub fn riemann_zeta(
    s: &BigReal,
    prec: u32,
    target_eps: &BigReal,
) -> Result<SeriesValue, ZetaError> {
    hurwitz_zeta(s, &Rational::one(), prec, target_eps)
}

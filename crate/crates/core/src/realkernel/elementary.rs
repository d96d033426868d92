//! Constants and elementary functions on brackets.
//!
//! Each function is evaluated at a raised internal precision from a truncated
//! series whose omitted tail is bounded explicitly and folded into the radius.
//! Everything else (argument reduction, squaring, square roots) goes through
//! ordinary [`Bracket`] arithmetic, so the enclosures need no separate error
//! analysis.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::One;

use super::bigreal::{BigReal, Round};
use super::bracket::{up_div, up_mul, Bracket, RAD_PREC};
use super::RealError;
use crate::exactnum::factorial;

const GUARD_BITS: u32 = 40;

static PI_CACHE: Mutex<Option<HashMap<u32, Bracket>>> = Mutex::new(None);
static LN2_CACHE: Mutex<Option<HashMap<u32, Bracket>>> = Mutex::new(None);

fn cached(
    cache: &Mutex<Option<HashMap<u32, Bracket>>>,
    prec: u32,
    compute: impl FnOnce() -> Bracket,
) -> Bracket {
    if let Some(v) = cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get_or_insert_with(HashMap::new)
        .get(&prec)
    {
        return v.clone();
    }
    let v = compute();
    cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get_or_insert_with(HashMap::new)
        .insert(prec, v.clone());
    v
}

/// `Σ_{j≥0} (-1)^j / ((2j+1) x^{2j+1})`: arctangent of `1/x` for an integer `x ≥ 2`.
fn atan_inv(x: u32, wp: u32) -> Bracket {
    let x2 = BigInt::from(x) * x;
    let mut pow = BigInt::from(x);
    let mut sum = Bracket::zero(wp);
    let eps = BigReal::pow2(-(wp as i64) - 4);
    let mut j: u64 = 0;
    loop {
        let den = &pow * (2 * j + 1);
        let term = Bracket::from_ratio(&BigInt::one(), &den, wp);
        if term.abs_upper() < eps {
            // alternating with decreasing magnitude: the tail is below this term
            return sum.add_error(&term.abs_upper());
        }
        sum = if j.is_multiple_of(2) {
            sum.add(&term)
        } else {
            sum.sub(&term)
        };
        pow *= &x2;
        j += 1;
    }
}

/// Enclosure of π with radius within a few ulps at `prec` bits
/// (Machin: `π = 16 atan(1/5) - 4 atan(1/239)`).
pub fn pi(prec: u32) -> Bracket {
    cached(&PI_CACHE, prec, || {
        let wp = prec + GUARD_BITS;
        let a = atan_inv(5, wp).mul_2exp(4);
        let b = atan_inv(239, wp).mul_2exp(2);
        a.sub(&b).with_prec(prec)
    })
}

/// `ln 2 = 2 atanh(1/3) = 2 Σ 1/((2j+1) 3^{2j+1})`.
pub fn ln2(prec: u32) -> Bracket {
    cached(&LN2_CACHE, prec, || {
        let wp = prec + GUARD_BITS;
        let mut pow = BigInt::from(3);
        let mut sum = Bracket::zero(wp);
        let eps = BigReal::pow2(-(wp as i64) - 4);
        let mut j: u64 = 0;
        loop {
            let term = Bracket::from_ratio(&BigInt::one(), &(&pow * (2 * j + 1)), wp);
            if term.abs_upper() < eps {
                // remaining terms shrink by at least 1/9 each: tail ≤ term · 9/8
                let tail = up_mul(&term.abs_upper(), &BigReal::from_int(2));
                return sum.add_error(&tail).mul_2exp(1).with_prec(prec);
            }
            sum = sum.add(&term);
            pow *= 9;
            j += 1;
        }
    })
}

fn exp_point(x: &BigReal, prec: u32) -> Result<Bracket, RealError> {
    if x.is_zero() {
        return Ok(Bracket::one(prec));
    }
    if x.msb().unwrap_or(0) > 40 {
        return Err(RealError::Overflow);
    }
    let k = (x.to_f64() / std::f64::consts::LN_2).round() as i64;
    let halvings = ((prec as f64).sqrt() / 2.0).max(4.0) as i64;
    let wp = prec + GUARD_BITS + halvings as u32 + 64 - k.unsigned_abs().leading_zeros();

    // x = k ln2 + r with |r| ≲ ln2/2, then r' = r / 2^halvings
    let r = Bracket::exact(x.clone(), wp).sub(&ln2(wp).mul_int(k));
    let r = r.mul_2exp(-halvings);
    let r_abs = r.abs_upper();
    let eps = BigReal::pow2(-(wp as i64) - 4);

    let mut sum = Bracket::one(wp);
    let mut term = Bracket::one(wp);
    let mut j: u64 = 1;
    loop {
        term = term.mul(&r).div_int(j)?;
        sum = sum.add(&term);
        if term.abs_upper() < eps {
            break;
        }
        j += 1;
    }
    // Σ_{i>j} |r|^i/i! ≤ |T_j| · |r|/(j+1) · 1/(1 - |r|) ≤ 2 |T_j| |r| / (j+1)
    let tail = up_div(
        &up_mul(&up_mul(&term.abs_upper(), &r_abs), &BigReal::from_int(2)),
        &BigReal::from_int(j + 1),
    );
    let mut y = sum.add_error(&tail);
    for _ in 0..halvings {
        y = y.sqr();
    }
    Ok(y.mul_2exp(k).with_prec(prec))
}

/// Enclosure of `e^x`.
pub fn exp(x: &Bracket) -> Result<Bracket, RealError> {
    let prec = x.prec();
    if x.is_exact() {
        return exp_point(x.mid(), prec);
    }
    if x.rad() <= &BigReal::pow2(-8) {
        // |e^t - e^m| ≤ e^m (e^r - 1) ≤ 2 r e^m for r ≤ 1/2
        let y = exp_point(x.mid(), prec)?;
        let err = up_mul(&up_mul(&y.abs_upper(), x.rad()), &BigReal::from_int(2));
        return Ok(y.add_error(&err));
    }
    let lo = exp_point(&x.lower(), prec)?;
    let hi = exp_point(&x.upper(), prec)?;
    Ok(lo.hull(&hi))
}

fn ln_point(x: &BigReal, prec: u32) -> Result<Bracket, RealError> {
    if !x.is_positive() {
        return Err(RealError::Domain("ln of a non-positive number"));
    }
    let q = x.msb().unwrap_or(0);
    let v = x.mul_2exp(-q);
    let log2_part = ln2(prec + GUARD_BITS + 64).mul_int(q);
    if v == BigReal::one() {
        return Ok(log2_part.with_prec(prec));
    }
    const ROOTS: i64 = 8;
    let wp = prec + GUARD_BITS + ROOTS as u32;
    // v ∈ (1, 2); v^{1/256} - 1 < 0.003
    let mut w = Bracket::exact(v, wp);
    for _ in 0..ROOTS {
        w = w.sqrt()?;
    }
    let one = Bracket::one(wp);
    let z = w.sub(&one).div(&w.add(&one))?;
    let z2 = z.sqr();
    let z_abs = z.abs_upper();
    let eps = BigReal::pow2(-(wp as i64) - 4);

    let mut pow = z.clone();
    let mut sum = z.clone();
    let mut j: u64 = 1;
    loop {
        pow = pow.mul(&z2);
        let term = pow.div_int(2 * j + 1)?;
        sum = sum.add(&term);
        if term.abs_upper() < eps {
            break;
        }
        j += 1;
    }
    // Σ_{i>j} |z|^{2i+1}/(2i+1) ≤ |z|^{2j+3}/(1 - z²) ≤ 2 |pow| z²
    let tail = up_mul(
        &up_mul(&pow.abs_upper(), &up_mul(&z_abs, &z_abs)),
        &BigReal::from_int(2),
    );
    let ln_v = sum.add_error(&tail).mul_2exp(ROOTS + 1);
    Ok(log2_part.add(&ln_v).with_prec(prec))
}

/// Enclosure of `ln x` for a bracket lying strictly above zero.
pub fn ln(x: &Bracket) -> Result<Bracket, RealError> {
    if !x.is_positive() {
        return Err(RealError::Domain(
            "ln of an interval reaching zero or below",
        ));
    }
    let y = ln_point(x.mid(), x.prec())?;
    if x.is_exact() {
        return Ok(y);
    }
    // |ln t - ln m| ≤ |t - m| / min(t, m) ≤ r / lower
    let lo = x.lower().round(RAD_PREC, Round::Floor).0;
    Ok(y.add_error(&up_div(x.rad(), &lo)))
}

pub fn cosh(x: &Bracket) -> Result<Bracket, RealError> {
    let y = exp(x)?;
    Ok(y.add(&y.recip()?).mul_2exp(-1))
}

/// `x^s` for `x > 0`, evaluated as `exp(s ln x)`.
///
/// Integer exponents use binary powering and half-integer exponents a
/// square root; both give the same value as the general route with far
/// less work.
pub fn power_real(x: &Bracket, s: &BigReal) -> Result<Bracket, RealError> {
    if !x.is_positive() {
        return Err(RealError::Domain(
            "power of an interval reaching zero or below",
        ));
    }
    if let Some(n) = small_integer(s) {
        return x.powi(n);
    }
    let twice = s.mul_2exp(1);
    if let Some(m) = small_integer(&twice) {
        // s = (m - 1)/2 + 1/2 with m odd
        let whole = (m - 1).div_euclid(2);
        return Ok(x.powi(whole)?.mul(&x.sqrt()?));
    }
    let prec = x.prec();
    let ln_x = ln(x)?;
    exp(&ln_x
        .mul(&Bracket::exact(s.clone(), prec + GUARD_BITS))
        .with_prec(prec + GUARD_BITS))
    .map(|y| y.with_prec(prec))
}

pub(crate) fn small_integer(s: &BigReal) -> Option<i64> {
    if !s.is_integer() {
        return None;
    }
    let v = s.to_bigint()?;
    i64::try_from(v).ok().filter(|n| n.unsigned_abs() < 1 << 20)
}

/// `C(s+k-1, k) = s(s+1)···(s+k-1)/k!` for real `s`.
pub fn generalized_binomial(s: &BigReal, k: u64, prec: u32) -> Bracket {
    let s = Bracket::exact(s.clone(), prec);
    let mut acc = Bracket::one(prec);
    for j in 0..k {
        acc = acc.mul(&s.add(&Bracket::from_int(j, prec)));
    }
    acc.div(&Bracket::from_int(factorial(k), prec))
        .expect("k! is nonzero")
}

/// `(2π)` raised to `n`, handy for the even zeta values.
pub fn two_pi_pow(n: i64, prec: u32) -> Bracket {
    pi(prec + GUARD_BITS)
        .mul_2exp(1)
        .powi(n)
        .expect("2π is nonzero")
        .with_prec(prec)
}

/// `π^n`.
pub fn pi_pow(n: i64, prec: u32) -> Bracket {
    pi(prec + GUARD_BITS)
        .powi(n)
        .expect("π is nonzero")
        .with_prec(prec)
}

use num_bigint::BigInt;

use super::{hurwitz_zeta, riemann_zeta, tight_target_eps, ZetaError};
use crate::exactnum::{euler_number_abs, factorial, pow2, Rational};
use crate::realkernel::{pi_pow, BigReal, Bracket};

/// `ψ^{(2k)}(3/4) = 2^{2k-1} (π^{2k+1} |E_{2k}| - 2 (2k)! (2^{2k+1} - 1) ζ(2k+1))`.
pub fn polygamma_34(k: u32, prec: u32) -> Result<Bracket, ZetaError> {
    if k == 0 {
        return Err(crate::exactnum::ExactError::InvalidK(k).into());
    }
    let wp = prec + 16;
    let k64 = k as u64;
    let zeta = riemann_zeta(&BigReal::from_int(2 * k64 + 1), wp, &tight_target_eps(wp))?.value;
    let pi_part = pi_pow(2 * k as i64 + 1, wp).mul_int(euler_number_abs(k as usize));
    let zeta_coeff: BigInt = 2 * factorial(2 * k64) * (pow2(2 * k64 + 1) - 1);
    let inner = pi_part.sub(&zeta.mul_int(zeta_coeff));
    Ok(inner.mul_2exp(2 * k as i64 - 1).with_prec(prec))
}

/// `ψ^{(m)}(a) = (-1)^{m+1} m! ζ(m+1, a)` for order `m ≥ 1`.
pub fn polygamma_from_hurwitz(order: u32, a: &Rational, prec: u32) -> Result<Bracket, ZetaError> {
    if order == 0 {
        return Err(crate::exactnum::ExactError::InvalidK(order).into());
    }
    let wp = prec + 16;
    let s = BigReal::from_int(order as u64 + 1);
    let h = hurwitz_zeta(&s, a, wp, &tight_target_eps(wp))?.value;
    let scaled = h.mul_int(factorial(order as u64));
    let signed = if order % 2 == 1 { scaled } else { scaled.neg() };
    Ok(signed.with_prec(prec))
}

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bigreal::{BigReal, Round};
use super::RealError;
use crate::exactnum::Rational;

/// Mantissa width used for radii. Radii are always rounded upward.
pub const RAD_PREC: u32 = 30;

pub(crate) fn up_add(a: &BigReal, b: &BigReal) -> BigReal {
    a.add(b, RAD_PREC, Round::Ceil).0
}

pub(crate) fn up_mul(a: &BigReal, b: &BigReal) -> BigReal {
    a.mul(b, RAD_PREC, Round::Ceil).0
}

pub(crate) fn up_div(a: &BigReal, b: &BigReal) -> BigReal {
    a.div(b, RAD_PREC, Round::Ceil).0
}

pub(crate) fn up_abs(a: &BigReal) -> BigReal {
    a.abs().round(RAD_PREC, Round::Ceil).0
}

pub(crate) fn down_abs(a: &BigReal) -> BigReal {
    a.abs().round(RAD_PREC, Round::Floor).0
}

/// A midpoint–radius enclosure `[mid - rad, mid + rad]`.
///
/// Every operation returns a bracket containing the exact result for all
/// points of the operand brackets. Midpoints are computed at the bracket's
/// working precision with truncation; whenever that loses bits, one ulp of
/// the midpoint is added to the radius.
#[derive(Clone, PartialEq, Eq)]
pub struct Bracket {
    mid: BigReal,
    rad: BigReal,
    prec: u32,
}

impl fmt::Debug for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} ± {}]@{}",
            self.mid.to_scientific(25, Round::Trunc),
            self.rad.to_scientific(3, Round::Ceil),
            self.prec
        )
    }
}

impl Bracket {
    /// Build from an already-rounded midpoint, adding one ulp when `inexact`.
    fn rounded(mid: (BigReal, bool), rad: BigReal, prec: u32) -> Bracket {
        let (mid, inexact) = mid;
        let rad = if inexact {
            up_add(&rad, &mid.ulp(prec))
        } else {
            rad.round(RAD_PREC, Round::Ceil).0
        };
        Bracket { mid, rad, prec }
    }

    pub fn new(mid: BigReal, rad: BigReal, prec: u32) -> Bracket {
        assert!(!rad.is_negative(), "bracket radius must be nonnegative");
        Bracket::rounded(mid.round(prec, Round::Trunc), rad, prec)
    }

    pub fn zero(prec: u32) -> Bracket {
        Bracket {
            mid: BigReal::zero(),
            rad: BigReal::zero(),
            prec,
        }
    }

    pub fn one(prec: u32) -> Bracket {
        Bracket::from_int(1, prec)
    }

    pub fn exact(x: BigReal, prec: u32) -> Bracket {
        Bracket::new(x, BigReal::zero(), prec)
    }

    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Bracket {
        Bracket::exact(BigReal::from_int(v), prec)
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Bracket {
        assert!(!den.is_zero(), "zero denominator");
        let mid =
            BigReal::from_int(num.clone()).div(&BigReal::from_int(den.clone()), prec, Round::Trunc);
        Bracket::rounded(mid, BigReal::zero(), prec)
    }

    pub fn from_rational(r: &Rational, prec: u32) -> Bracket {
        Bracket::from_ratio(r.numer(), r.denom(), prec)
    }

    /// `[lo, hi]` as a bracket (requires `lo ≤ hi`).
    pub fn from_endpoints(lo: &BigReal, hi: &BigReal, prec: u32) -> Bracket {
        assert!(lo <= hi, "inverted endpoints");
        let mid_exact = lo.add_exact(hi).mul_2exp(-1);
        let half = hi.sub_exact(lo).mul_2exp(-1);
        let (mid, _) = mid_exact.round(prec, Round::Trunc);
        // |point - mid| ≤ half + |mid_exact - mid|
        let slack = mid_exact.sub_exact(&mid);
        let rad = up_add(&up_abs(&half), &up_abs(&slack));
        Bracket { mid, rad, prec }
    }

    pub fn mid(&self) -> &BigReal {
        &self.mid
    }

    pub fn rad(&self) -> &BigReal {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn lower(&self) -> BigReal {
        self.mid.sub_exact(&self.rad)
    }

    pub fn upper(&self) -> BigReal {
        self.mid.add_exact(&self.rad)
    }

    /// Upper bound on `|x|` over the bracket.
    pub fn abs_upper(&self) -> BigReal {
        up_add(&up_abs(&self.mid), &self.rad)
    }

    /// Lower bound on `|x|` over the bracket (zero if it straddles 0).
    pub fn abs_lower(&self) -> BigReal {
        let m = down_abs(&self.mid);
        if m <= self.rad {
            BigReal::zero()
        } else {
            m.sub(&self.rad, RAD_PREC, Round::Floor).0
        }
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.lower().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.upper().is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    pub fn contains(&self, x: &BigReal) -> bool {
        self.lower() <= *x && *x <= self.upper()
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        let lo = self.lower().to_rational();
        let hi = self.upper().to_rational();
        lo <= *r && *r <= hi
    }

    /// True iff `other ⊆ self`.
    pub fn contains_bracket(&self, other: &Bracket) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn intersects(&self, other: &Bracket) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// Re-round the midpoint to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Bracket {
        Bracket::rounded(self.mid.round(prec, Round::Trunc), self.rad.clone(), prec)
    }

    /// Widen the radius by `|err|`.
    pub fn add_error(&self, err: &BigReal) -> Bracket {
        Bracket {
            mid: self.mid.clone(),
            rad: up_add(&self.rad, &up_abs(err)),
            prec: self.prec,
        }
    }

    /// Smallest bracket containing both operands.
    pub fn hull(&self, other: &Bracket) -> Bracket {
        let lo = self.lower().min(other.lower());
        let hi = self.upper().max(other.upper());
        Bracket::from_endpoints(&lo, &hi, self.prec.max(other.prec))
    }

    pub fn neg(&self) -> Bracket {
        Bracket {
            mid: self.mid.neg(),
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Bracket {
        if self.mid.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn mul_2exp(&self, e: i64) -> Bracket {
        Bracket {
            mid: self.mid.mul_2exp(e),
            rad: self.rad.mul_2exp(e),
            prec: self.prec,
        }
    }

    pub fn add(&self, other: &Bracket) -> Bracket {
        let prec = self.prec.max(other.prec);
        let mid = self.mid.add(&other.mid, prec, Round::Trunc);
        Bracket::rounded(mid, up_add(&self.rad, &other.rad), prec)
    }

    pub fn sub(&self, other: &Bracket) -> Bracket {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Bracket) -> Bracket {
        let prec = self.prec.max(other.prec);
        let mid = self.mid.mul(&other.mid, prec, Round::Trunc);
        // |xy - mx·my| ≤ |mx| ry + |my| rx + rx ry
        let rad = if self.rad.is_zero() && other.rad.is_zero() {
            BigReal::zero()
        } else {
            let a = up_mul(&up_abs(&self.mid), &other.rad);
            let b = up_mul(&up_abs(&other.mid), &self.rad);
            let c = up_mul(&self.rad, &other.rad);
            up_add(&up_add(&a, &b), &c)
        };
        Bracket::rounded(mid, rad, prec)
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> Bracket {
        self.mul(&Bracket::from_int(k, self.prec))
    }

    pub fn mul_rational(&self, r: &Rational) -> Bracket {
        if r.denom().is_one() {
            self.mul(&Bracket::from_int(r.numer().clone(), self.prec))
        } else {
            self.mul(&Bracket::from_rational(r, self.prec))
        }
    }

    pub fn sqr(&self) -> Bracket {
        self.mul(self)
    }

    pub fn div(&self, other: &Bracket) -> Result<Bracket, RealError> {
        if other.contains_zero() {
            return Err(RealError::DivisionByZero);
        }
        let prec = self.prec.max(other.prec);
        let mid = self.mid.div(&other.mid, prec, Round::Trunc);
        // |x/y - mx/my| ≤ (|mx| ry + |my| rx) / (|my| (|my| - ry))
        let rad = if self.rad.is_zero() && other.rad.is_zero() {
            BigReal::zero()
        } else {
            let my = down_abs(&other.mid);
            let num = up_add(
                &up_mul(&up_abs(&self.mid), &other.rad),
                &up_mul(&up_abs(&other.mid), &self.rad),
            );
            let gap = my.sub(&other.rad, RAD_PREC, Round::Floor).0;
            let den = my.mul(&gap, RAD_PREC, Round::Floor).0;
            up_div(&num, &den)
        };
        Ok(Bracket::rounded(mid, rad, prec))
    }

    pub fn div_int(&self, k: impl Into<BigInt>) -> Result<Bracket, RealError> {
        self.div(&Bracket::from_int(k, self.prec))
    }

    pub fn recip(&self) -> Result<Bracket, RealError> {
        Bracket::one(self.prec).div(self)
    }

    pub fn sqrt(&self) -> Result<Bracket, RealError> {
        if self.rad.is_zero() {
            let r = self
                .mid
                .sqrt(self.prec, Round::Trunc)
                .ok_or(RealError::Domain("sqrt of a negative number"))?;
            return Ok(Bracket::rounded(r, BigReal::zero(), self.prec));
        }
        let lo = self.lower();
        if !lo.is_positive() {
            return Err(RealError::Domain(
                "sqrt of an interval reaching zero or below",
            ));
        }
        let r = self
            .mid
            .sqrt(self.prec, Round::Trunc)
            .expect("positive midpoint");
        // |√x - √m| = |x - m| / (√x + √m) ≤ r / √lo
        let lo_root = lo.sqrt(RAD_PREC, Round::Floor).expect("positive").0;
        Ok(Bracket::rounded(r, up_div(&self.rad, &lo_root), self.prec))
    }

    /// `x^n` by binary powering; negative `n` takes a reciprocal.
    pub fn powi(&self, n: i64) -> Result<Bracket, RealError> {
        let mut base = self.clone();
        let mut e = n.unsigned_abs();
        let mut acc = Bracket::one(self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            Ok(acc)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Decimal midpoint truncated to the digits the radius certifies.
    pub fn to_decimal(&self) -> String {
        let digits = certified_digits(&self.rad, self.prec);
        self.mid.to_decimal_fixed(digits, Round::Trunc)
    }
}

/// Number of fractional decimal digits whose place value is at least `rad`.
pub fn certified_digits(rad: &BigReal, prec: u32) -> usize {
    let cap = (prec as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
    if rad.is_zero() {
        return cap;
    }
    let d = -(rad.log2_approx() * std::f64::consts::LOG10_2).ceil();
    if d <= 0.0 {
        0
    } else {
        (d as usize).min(cap)
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ± {}",
            self.to_decimal(),
            self.rad.to_scientific(2, Round::Ceil)
        )
    }
}

impl Add for &Bracket {
    type Output = Bracket;
    fn add(self, rhs: &Bracket) -> Bracket {
        Bracket::add(self, rhs)
    }
}

impl Sub for &Bracket {
    type Output = Bracket;
    fn sub(self, rhs: &Bracket) -> Bracket {
        Bracket::sub(self, rhs)
    }
}

impl Mul for &Bracket {
    type Output = Bracket;
    fn mul(self, rhs: &Bracket) -> Bracket {
        Bracket::mul(self, rhs)
    }
}

impl Neg for &Bracket {
    type Output = Bracket;
    fn neg(self) -> Bracket {
        Bracket::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> Bracket {
        Bracket::from_int(v, 64)
    }

    #[test]
    fn exact_integer_arithmetic_has_zero_radius() {
        let x = &b(3) + &b(4);
        assert!(x.is_exact());
        assert_eq!(x.mid(), &BigReal::from_int(7));
        let y = &b(-6) * &b(7);
        assert!(y.is_exact());
        assert_eq!(y.mid(), &BigReal::from_int(-42));
    }

    #[test]
    fn division_encloses_third() {
        let third = b(1).div(&b(3)).unwrap();
        assert!(!third.is_exact());
        assert!(third.contains_rational(&Rational::new(1.into(), 3.into())));
        assert!(b(1).div(&Bracket::zero(64)).is_err());
    }

    #[test]
    fn radius_propagates_through_mul() {
        let x = Bracket::new(BigReal::from_int(2), BigReal::pow2(-10), 64);
        let y = x.sqr();
        assert!(y.contains(&BigReal::from_int(4)));
        let hi = BigReal::from_int(2).add_exact(&BigReal::pow2(-10));
        assert!(y.contains(&hi.mul_exact(&hi)));
    }

    #[test]
    fn sqrt_two() {
        let s = b(2).sqrt().unwrap();
        let sq = s.sqr();
        assert!(sq.contains(&BigReal::from_int(2)));
        assert!(s.rad() <= &BigReal::pow2(-62));
        assert!(Bracket::new(BigReal::zero(), BigReal::one(), 64)
            .sqrt()
            .is_err());
    }

    #[test]
    fn powi_matches_exact_power() {
        let x = b(3).powi(5).unwrap();
        assert_eq!(x.mid(), &BigReal::from_int(243));
        let y = b(2).powi(-3).unwrap();
        assert_eq!(y.mid(), &BigReal::pow2(-3));
        assert!(y.is_exact());
    }

    #[test]
    fn hull_and_intersection() {
        let a = Bracket::new(BigReal::from_int(1), BigReal::pow2(-1), 32);
        let c = Bracket::new(BigReal::from_int(2), BigReal::pow2(-1), 32);
        let d = Bracket::new(BigReal::from_int(3), BigReal::pow2(-2), 32);
        assert!(a.intersects(&c));
        assert!(!a.intersects(&d));
        let h = a.hull(&d);
        assert!(h.contains_bracket(&a) && h.contains_bracket(&d));
    }

    #[test]
    fn decimal_respects_radius() {
        let third = Bracket::from_ratio(&BigInt::from(1), &BigInt::from(3), 64);
        let wide = third.add_error(&BigReal::from_f64(1e-5).unwrap());
        assert_eq!(wide.to_decimal(), "0.3333");
    }
}

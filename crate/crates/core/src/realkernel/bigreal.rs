use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactnum::Rational;

/// Rounding direction applied when a result is cut down to a given precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    /// Toward zero. Faithful: the error is below one ulp.
    Trunc,
    /// Toward negative infinity.
    Floor,
    /// Toward positive infinity.
    Ceil,
}

/// A dyadic number `mant · 2^exp`.
///
/// Values are kept normalized (odd mantissa, or zero with `exp = 0`), so two
/// `BigReal`s are equal exactly when their fields are equal. Arithmetic comes
/// in an exact flavour and a rounded flavour that takes a precision in bits and
/// a [`Round`] mode and reports whether anything was discarded.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BigReal {
    mant: BigInt,
    exp: i64,
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BigReal({}·2^{} ≈ {:e})",
            self.mant,
            self.exp,
            self.to_f64()
        )
    }
}

impl Default for BigReal {
    fn default() -> Self {
        BigReal::zero()
    }
}

impl BigReal {
    pub fn zero() -> Self {
        BigReal {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        BigReal::from_int(1)
    }

    pub fn from_parts(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return BigReal::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            BigReal { mant, exp }
        } else {
            BigReal {
                mant: mant >> tz as usize,
                exp: exp + tz as i64,
            }
        }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        BigReal::from_parts(v.into(), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        BigReal {
            mant: BigInt::one(),
            exp: e,
        }
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(BigReal::zero());
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Some(BigReal::from_parts(BigInt::from(m) * sign, e))
    }

    pub fn from_rational(r: &Rational, prec: u32, mode: Round) -> (Self, bool) {
        let num = BigReal::from_int(r.numer().clone());
        let den = BigReal::from_int(r.denom().clone());
        num.div(&den, prec, mode)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Position of the leading one bit: `2^msb ≤ |x| < 2^{msb+1}`.
    pub fn msb(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.mant.bits() as i64 - 1)
        }
    }

    pub fn is_integer(&self) -> bool {
        self.exp >= 0
    }

    pub fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer()
            .then(|| self.mant.clone() << self.exp as usize)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from(self.mant.clone() << self.exp as usize)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn neg(&self) -> Self {
        BigReal {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        BigReal {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn mul_2exp(&self, e: i64) -> Self {
        if self.is_zero() {
            return BigReal::zero();
        }
        BigReal {
            mant: self.mant.clone(),
            exp: self.exp + e,
        }
    }

    /// `2^{msb - prec + 1}`: one unit in the last place of a `prec`-bit number
    /// with the same leading bit.
    pub fn ulp(&self, prec: u32) -> Self {
        match self.msb() {
            None => BigReal::zero(),
            Some(m) => BigReal::pow2(m - prec as i64 + 1),
        }
    }

    pub fn round(&self, prec: u32, mode: Round) -> (Self, bool) {
        round_parts(self.mant.clone(), self.exp, prec, mode)
    }

    pub fn add_exact(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        BigReal::from_parts(a + b, e)
    }

    pub fn sub_exact(&self, other: &Self) -> Self {
        self.add_exact(&other.neg())
    }

    pub fn mul_exact(&self, other: &Self) -> Self {
        BigReal::from_parts(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn add(&self, other: &Self, prec: u32, mode: Round) -> (Self, bool) {
        let (big, small) = match (self.msb(), other.msb()) {
            (None, _) => return other.round(prec, mode),
            (_, None) => return self.round(prec, mode),
            (Some(a), Some(b)) if a >= b => (self, other),
            _ => (other, self),
        };
        let big_msb = big.msb().unwrap_or(0);
        // Every candidate rounding point is a multiple of 2^{threshold + 2}.
        // Replacing an operand that sits entirely below 2^threshold by a sticky
        // bit of the same sign leaves the rounded result unchanged.
        let threshold = big.exp.min(big_msb - prec as i64) - 2;
        let small_msb = small.msb().unwrap_or(0);
        if small_msb < threshold {
            let sticky = BigReal {
                mant: BigInt::from(small.signum()),
                exp: threshold - 1,
            };
            let (r, _) = big.add_exact(&sticky).round(prec, mode);
            return (r, true);
        }
        big.add_exact(small).round(prec, mode)
    }

    pub fn sub(&self, other: &Self, prec: u32, mode: Round) -> (Self, bool) {
        self.add(&other.neg(), prec, mode)
    }

    pub fn mul(&self, other: &Self, prec: u32, mode: Round) -> (Self, bool) {
        round_parts(&self.mant * &other.mant, self.exp + other.exp, prec, mode)
    }

    /// Rounded quotient. Panics on division by zero; callers guard the divisor.
    pub fn div(&self, other: &Self, prec: u32, mode: Round) -> (Self, bool) {
        assert!(!other.is_zero(), "BigReal division by zero");
        if self.is_zero() {
            return (BigReal::zero(), false);
        }
        let shift = (prec as i64 + 2 + other.bits() as i64 - self.bits() as i64).max(0);
        let num = self.mant.magnitude() << shift as usize;
        let (mut q, r) = num.div_rem(other.mant.magnitude());
        let mut exp = self.exp - shift - other.exp;
        let inexact = !r.is_zero();
        if inexact {
            // sticky bit below the rounding position
            q = (q << 1usize) + 1u32;
            exp -= 1;
        }
        let sign = if self.is_negative() != other.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        };
        let (v, rounded) = round_parts(BigInt::from_biguint(sign, q), exp, prec, mode);
        (v, inexact || rounded)
    }

    /// Rounded square root of a nonnegative value; `None` for negative input.
    pub fn sqrt(&self, prec: u32, mode: Round) -> Option<(Self, bool)> {
        if self.is_negative() {
            return None;
        }
        if self.is_zero() {
            return Some((BigReal::zero(), false));
        }
        let mut shift = (2 * prec as i64 + 4 - self.bits() as i64).max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m: BigUint = self.mant.magnitude() << shift as usize;
        let e = (self.exp - shift) / 2;
        let r = m.sqrt();
        let exact = &r * &r == m;
        let (r, e) = if exact {
            (r, e)
        } else {
            ((r << 1usize) + 1u32, e - 1)
        };
        let (v, rounded) = round_parts(BigInt::from_biguint(Sign::Plus, r), e, prec, mode);
        Some((v, !exact || rounded))
    }

    /// Nearest `f64` (approximate; saturates to infinity on overflow).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits();
        let drop = bits.saturating_sub(64);
        let top = (self.mant.magnitude() >> drop as usize)
            .to_u64()
            .unwrap_or(u64::MAX);
        let e = self.exp + drop as i64;
        let mut v = top as f64;
        let mut e = e;
        // scale in steps to avoid intermediate overflow/underflow
        while e > 1000 {
            v *= 2f64.powi(1000);
            e -= 1000;
        }
        while e < -1000 {
            v *= 2f64.powi(-1000);
            e += 1000;
        }
        v *= 2f64.powi(e as i32);
        if self.is_negative() {
            -v
        } else {
            v
        }
    }

    /// Approximate `log2 |x|` (for step-size heuristics only).
    pub fn log2_approx(&self) -> f64 {
        match self.msb() {
            None => f64::NEG_INFINITY,
            Some(m) => {
                let bits = self.bits();
                let drop = bits.saturating_sub(53);
                let top = (self.mant.magnitude() >> drop as usize)
                    .to_f64()
                    .unwrap_or(1.0);
                let top_bits = bits - drop;
                m as f64 + (top / 2f64.powi(top_bits as i32 - 1)).log2()
            }
        }
    }

    /// `|x| · 10^digits` rounded to an integer in the given direction
    /// (directions apply to the signed value).
    fn scaled_decimal(&self, digits: i64, mode: Round) -> BigInt {
        let mut num = self.mant.clone();
        let mut den = BigInt::one();
        if digits >= 0 {
            num *= BigInt::from(10u32).pow(digits as u32);
        } else {
            den *= BigInt::from(10u32).pow((-digits) as u32);
        }
        if self.exp >= 0 {
            num <<= self.exp as usize;
        } else {
            den <<= (-self.exp) as usize;
        }
        match mode {
            Round::Floor => num.div_floor(&den),
            Round::Ceil => -((-num).div_floor(&den)),
            Round::Trunc => &num / &den,
        }
    }

    /// Fixed-point decimal with `digits` fractional digits.
    pub fn to_decimal_fixed(&self, digits: usize, mode: Round) -> String {
        let q = self.scaled_decimal(digits as i64, mode);
        let neg = q.is_negative() || (q.is_zero() && self.is_negative());
        let s = q.abs().to_string();
        let s = if s.len() <= digits {
            format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
        } else {
            s
        };
        let (int, frac) = s.split_at(s.len() - digits);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }

    /// Scientific notation with `sig` significant digits, e.g. `3.25e-12`.
    pub fn to_scientific(&self, sig: usize, mode: Round) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let sig = sig.max(1);
        let mut e10 = (self.log2_approx() * std::f64::consts::LOG10_2).floor() as i64;
        loop {
            let q = self.scaled_decimal(sig as i64 - 1 - e10, mode);
            let len = q.abs().to_string().len();
            if len > sig {
                e10 += 1;
                // a carry to exactly 10^sig is a legitimate rounding result
                if len == sig + 1 {
                    let q2 = self.scaled_decimal(sig as i64 - 1 - e10, mode);
                    if q2.abs().to_string().len() == sig {
                        return format_sci(&q2, sig, e10);
                    }
                }
            } else if len < sig {
                e10 -= 1;
            } else {
                return format_sci(&q, sig, e10);
            }
        }
    }
}

fn format_sci(q: &BigInt, sig: usize, e10: i64) -> String {
    let s = q.abs().to_string();
    let sign = if q.is_negative() { "-" } else { "" };
    let body = if sig == 1 {
        s
    } else {
        format!("{}.{}", &s[..1], &s[1..])
    };
    format!("{sign}{body}e{e10}")
}

fn round_parts(mant: BigInt, exp: i64, prec: u32, mode: Round) -> (BigReal, bool) {
    let bits = mant.bits();
    if bits <= prec as u64 {
        return (BigReal::from_parts(mant, exp), false);
    }
    let shift = bits - prec as u64;
    let neg = mant.is_negative();
    let mag = mant.magnitude();
    let inexact = mag.trailing_zeros().unwrap_or(0) < shift;
    let mut q = mag >> shift as usize;
    let away = inexact
        && match mode {
            Round::Trunc => false,
            Round::Floor => neg,
            Round::Ceil => !neg,
        };
    if away {
        q += 1u32;
    }
    let sign = if neg { Sign::Minus } else { Sign::Plus };
    (
        BigReal::from_parts(BigInt::from_biguint(sign, q), exp + shift as i64),
        inexact,
    )
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigReal {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb || sa == 0 {
            return sa.cmp(&sb);
        }
        let (ma, mb) = (self.msb().unwrap_or(0), other.msb().unwrap_or(0));
        let by_magnitude = if ma != mb {
            ma.cmp(&mb)
        } else {
            let e = self.exp.min(other.exp);
            let a = self.mant.magnitude() << (self.exp - e) as usize;
            let b = other.mant.magnitude() << (other.exp - e) as usize;
            a.cmp(&b)
        };
        if sa > 0 {
            by_magnitude
        } else {
            by_magnitude.reverse()
        }
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(20);
        f.write_str(&self.to_scientific(sig, Round::Trunc))
    }
}

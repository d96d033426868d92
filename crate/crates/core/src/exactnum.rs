//! Exact integer and rational engines: binomials, Euler and Bernoulli numbers,
//! and the closed-form coefficients of the zeta identities.
//!
//! Tables are computed by their classical convolution recurrences and cached
//! process-wide. A cache only ever grows, and a stored entry never changes, so
//! concurrent readers always observe the same values.

use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact fraction in lowest terms with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("parameter k must be at least 1, got {0}")]
    InvalidK(u32),
}

fn require_k(k: u32) -> Result<(), ExactError> {
    if k == 0 {
        Err(ExactError::InvalidK(k))
    } else {
        Ok(())
    }
}

pub fn pow2(e: u64) -> BigInt {
    BigInt::one() << e as usize
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Exact `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc = C(n, i) here, so the division is exact
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Row `C(n, 0..=n)` of Pascal's triangle.
fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for i in 0..n {
        c = c * (n - i) / (i + 1);
        row.push(c.clone());
    }
    row
}

struct GrowOnly<T> {
    values: LazyLock<RwLock<Arc<Vec<T>>>>,
}

impl<T: Clone> GrowOnly<T> {
    const fn new() -> Self {
        GrowOnly {
            values: LazyLock::new(|| RwLock::new(Arc::new(Vec::new()))),
        }
    }

    /// Snapshot holding at least `len` entries, extending with `extend` when short.
    fn at_least(&self, len: usize, extend: impl Fn(&mut Vec<T>, usize)) -> Arc<Vec<T>> {
        {
            let cur = self.values.read().unwrap_or_else(|e| e.into_inner());
            if cur.len() >= len {
                return Arc::clone(&cur);
            }
        }
        let mut guard = self.values.write().unwrap_or_else(|e| e.into_inner());
        if guard.len() < len {
            let mut next = Vec::clone(&guard);
            extend(&mut next, len);
            *guard = Arc::new(next);
        }
        Arc::clone(&guard)
    }
}

static EULER: GrowOnly<BigInt> = GrowOnly::new();
static BERNOULLI: GrowOnly<Rational> = GrowOnly::new();

/// Even-index Euler numbers `E_0, E_2, ..., E_{2·max_k}`; odd-index ones vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerTable {
    values: Arc<Vec<BigInt>>,
    max_k: usize,
}

impl EulerTable {
    /// `E_{2k}`, or `None` beyond the table bound.
    pub fn get(&self, k: usize) -> Option<&BigInt> {
        (k <= self.max_k).then(|| &self.values[k])
    }

    pub fn max_k(&self) -> usize {
        self.max_k
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigInt> {
        self.values[..=self.max_k].iter()
    }
}

/// Euler numbers from `Σ_{i=0}^{n} C(2n, 2i) E_{2i} = 0`, `E_0 = 1`
/// (the Taylor coefficients of `1/cosh`).
pub fn euler_numbers(max_k: usize) -> EulerTable {
    let values = EULER.at_least(max_k + 1, |v, len| {
        for n in v.len()..len {
            if n == 0 {
                v.push(BigInt::one());
                continue;
            }
            let row = binomial_row(2 * n as u64);
            let s: BigInt = (0..n).map(|i| &row[2 * i] * &v[i]).sum();
            v.push(-s);
        }
    });
    EulerTable { values, max_k }
}

pub fn euler_number_abs(k: usize) -> BigInt {
    euler_numbers(k).values[k].abs()
}

/// `B_0..=B_max_n` from `Σ_{j=0}^{m} C(m+1, j) B_j = 0`, with `B_1 = -1/2`.
pub fn bernoulli_numbers(max_n: usize) -> Vec<Rational> {
    bernoulli_table(max_n)[..=max_n].to_vec()
}

pub fn bernoulli(n: usize) -> Rational {
    bernoulli_table(n)[n].clone()
}

fn bernoulli_table(max_n: usize) -> Arc<Vec<Rational>> {
    BERNOULLI.at_least(max_n + 1, |v, len| {
        for m in v.len()..len {
            if m == 0 {
                v.push(Rational::one());
                continue;
            }
            if m > 1 && m % 2 == 1 {
                v.push(Rational::zero());
                continue;
            }
            let row = binomial_row(m as u64 + 1);
            let mut acc = Rational::zero();
            for (j, b) in v.iter().enumerate().take(m) {
                if !b.is_zero() {
                    acc += b * Rational::from(row[j].clone());
                }
            }
            v.push(-acc / Rational::from(BigInt::from(m + 1)));
        }
    })
}

/// `2^{2k-1} |E_{2k}| / (2k)!`, the coefficient of `π^{2k+1}` subtracted
/// from `ζ(2k+1)`.
pub fn pi_coefficient(k: u32) -> Result<Rational, ExactError> {
    require_k(k)?;
    let num = pow2(2 * k as u64 - 1) * euler_number_abs(k as usize);
    Ok(Rational::new(num, factorial(2 * k as u64)))
}

/// `2^{4k+1} - 2^{2k}`.
pub fn lemma4_coefficient(k: u32) -> Result<BigInt, ExactError> {
    require_k(k)?;
    Ok(pow2(4 * k as u64 + 1) - pow2(2 * k as u64))
}

/// `(2^{2k+2} - 2)·(2k)!`.
pub fn corollary_denominator(k: u32) -> Result<BigInt, ExactError> {
    require_k(k)?;
    Ok((pow2(2 * k as u64 + 2) - 2) * factorial(2 * k as u64))
}

/// `2^{2k}(2^{2k+1} - 1)`, the multiple of `ζ(2k+1)` in `ζ(2k+1, 3/4)`.
pub fn hurwitz34_zeta_coefficient(k: u32) -> Result<BigInt, ExactError> {
    require_k(k)?;
    Ok(pow2(2 * k as u64) * (pow2(2 * k as u64 + 1) - 1))
}

/// `(-1)^{k+1} B_{2k} 2^{2k} / (2·(2k)!)`, so that `ζ(2k) = coeff · π^{2k}`.
pub fn zeta_even_coefficient(k: u32) -> Result<Rational, ExactError> {
    require_k(k)?;
    let b = bernoulli(2 * k as usize);
    let scale = Rational::new(pow2(2 * k as u64), 2 * factorial(2 * k as u64));
    let v = b * scale;
    Ok(if k % 2 == 1 { v } else { -v })
}

/// `Σ_{i=0}^{n} C(2n, 2i) E_{2i}`, which vanishes for every `n ≥ 1`.
pub fn euler_convolution(table: &EulerTable, n: usize) -> BigInt {
    let row = binomial_row(2 * n as u64);
    (0..=n).map(|i| &row[2 * i] * &table.values[i]).sum()
}

/// `Σ_{j=0}^{m} C(m+1, j) B_j`, which vanishes for every `m ≥ 1`.
pub fn bernoulli_convolution(table: &[Rational], m: usize) -> Rational {
    let row = binomial_row(m as u64 + 1);
    (0..=m).fold(Rational::zero(), |acc, j| {
        acc + &table[j] * Rational::from(row[j].clone())
    })
}

/// Render a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn pascal(n: usize) -> Vec<Vec<BigInt>> {
        let mut rows = vec![vec![BigInt::one()]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![BigInt::one(); i + 1];
            for j in 1..i {
                row[j] = &prev[j - 1] + &prev[j];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn binomial_matches_pascal() {
        let tri = pascal(60);
        for (n, row) in tri.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                assert_eq!(&binomial(n as u64, k as u64), c, "C({n},{k})");
            }
            assert!(binomial(n as u64, n as u64 + 1).is_zero());
        }
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(52, 5), BigInt::from(2_598_960));
    }

    #[test]
    fn euler_values() {
        let t = euler_numbers(8);
        let got: Vec<i64> = t.iter().map(|e| e.try_into().unwrap()).collect();
        assert_eq!(
            got,
            [
                1,
                -1,
                5,
                -61,
                1385,
                -50521,
                2702765,
                -199360981,
                19391512145
            ]
        );
        assert_eq!(t.get(9), None);
    }

    #[test]
    fn euler_recurrence_to_index_40() {
        let t = euler_numbers(20);
        for n in 1..=20 {
            assert!(euler_convolution(&t, n).is_zero(), "n = {n}");
        }
        for k in 0..20 {
            assert!(t.get(k).unwrap().sign() != t.get(k + 1).unwrap().sign());
        }
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[0], rat(1, 1));
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[12], rat(-691, 2730));
        assert!(b[3].is_zero() && b[11].is_zero());
    }

    #[test]
    fn bernoulli_recurrence_to_index_40() {
        let b = bernoulli_numbers(40);
        for m in 1..=40 {
            assert!(bernoulli_convolution(&b, m).is_zero(), "m = {m}");
        }
    }

    #[test]
    fn zeta_even_coefficients_positive() {
        assert_eq!(zeta_even_coefficient(1).unwrap(), rat(1, 6));
        assert_eq!(zeta_even_coefficient(2).unwrap(), rat(1, 90));
        assert_eq!(zeta_even_coefficient(6).unwrap(), rat(691, 638512875));
        for k in 1..=20 {
            assert!(zeta_even_coefficient(k).unwrap().is_positive());
        }
    }

    #[test]
    fn closed_form_coefficients() {
        assert_eq!(pi_coefficient(1).unwrap(), rat(1, 1));
        assert_eq!(pi_coefficient(2).unwrap(), rat(5, 3));
        assert_eq!(pi_coefficient(3).unwrap(), rat(122, 45));
        let l4: Vec<BigInt> = (1..=4).map(|k| lemma4_coefficient(k).unwrap()).collect();
        assert_eq!(l4, [28, 496, 8128, 130816].map(BigInt::from));
        let cd: Vec<BigInt> = (1..=3).map(|k| corollary_denominator(k).unwrap()).collect();
        assert_eq!(cd, [28, 1488, 182880].map(BigInt::from));
        assert_eq!(hurwitz34_zeta_coefficient(1).unwrap(), BigInt::from(28));
        assert_eq!(hurwitz34_zeta_coefficient(2).unwrap(), BigInt::from(496));
        assert_eq!(pi_coefficient(0), Err(ExactError::InvalidK(0)));
    }

    #[test]
    fn lemma4_and_corollary_consistent() {
        for k in 1..=20u32 {
            let half = Rational::new(pow2(2 * k as u64 - 1), factorial(2 * k as u64));
            let via_lemma = half / Rational::from(lemma4_coefficient(k).unwrap());
            let via_corollary = Rational::new(BigInt::one(), corollary_denominator(k).unwrap());
            assert_eq!(via_lemma, via_corollary, "k = {k}");

            let ratio = pi_coefficient(k).unwrap() / Rational::from(lemma4_coefficient(k).unwrap());
            let expected = Rational::new(
                pow2(2 * k as u64 - 1) * euler_number_abs(k as usize),
                factorial(2 * k as u64) * lemma4_coefficient(k).unwrap(),
            );
            assert_eq!(ratio, expected);
        }
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational(&rat(122, 45)), "122/45");
        assert_eq!(format_rational(&rat(-28, 1)), "-28");
    }
}

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::series::Coefficient;
use crate::realkernel::{power_real, small_integer, BigReal, Bracket, RealError};

#[derive(Debug, Clone)]
enum Kind {
    Integer(u32),
    /// `s = whole + 1/2`
    HalfInteger(u32),
    /// `n^{-s}` assembled multiplicatively from prime powers.
    Multiplicative {
        smallest_factor: Vec<u32>,
        prime_powers: HashMap<u32, Bracket>,
    },
}

/// Enclosures of `n^{-s}` for `1 ≤ n ≤ N` at a fixed real `s > 0`.
///
/// Integer and half-integer `s` are evaluated term by term with one division
/// (plus one square root). Any other `s` uses complete multiplicativity:
/// `p^{-s}` is computed through `exp(-s ln p)` for each prime `p ≤ N` and
/// composite indices multiply their prime factors in ascending order.
#[derive(Debug, Clone)]
pub struct InversePowers {
    kind: Kind,
    prec: u32,
}

impl InversePowers {
    pub fn new(s: &BigReal, max_n: u64, prec: u32) -> Result<Self, RealError> {
        if !s.is_positive() {
            return Err(RealError::Domain("inverse powers need s > 0"));
        }
        if let Some(m) = small_integer(s) {
            return Ok(InversePowers {
                kind: Kind::Integer(m as u32),
                prec,
            });
        }
        if let Some(m) = small_integer(&s.mul_2exp(1)) {
            return Ok(InversePowers {
                kind: Kind::HalfInteger(((m - 1) / 2) as u32),
                prec,
            });
        }
        let max_n = u32::try_from(max_n).map_err(|_| RealError::Overflow)?;
        let smallest_factor = smallest_factor_sieve(max_n);
        let primes: Vec<u32> = (2..=max_n)
            .filter(|&p| smallest_factor[p as usize] == p)
            .collect();
        let neg_s = s.neg();
        let prime_powers = primes
            .par_iter()
            .map(|&p| power_real(&Bracket::from_int(p, prec), &neg_s).map(|v| (p, v)))
            .collect::<Result<HashMap<_, _>, _>>()?;
        Ok(InversePowers {
            kind: Kind::Multiplicative {
                smallest_factor,
                prime_powers,
            },
            prec,
        })
    }

    /// Enclosure of `n^{-s}`.
    pub fn get(&self, n: u64) -> Bracket {
        let prec = self.prec;
        match &self.kind {
            Kind::Integer(m) => {
                Bracket::from_ratio(&BigInt::from(1), &BigInt::from(n).pow(*m), prec)
            }
            Kind::HalfInteger(m) => {
                let root = Bracket::from_int(n, prec).sqrt().expect("n >= 1");
                root.div_int(BigInt::from(n).pow(*m + 1)).expect("n >= 1")
            }
            Kind::Multiplicative {
                smallest_factor,
                prime_powers,
            } => {
                let mut rest = n as u32;
                let mut acc: Option<Bracket> = None;
                while rest > 1 {
                    let p = smallest_factor[rest as usize];
                    let f = &prime_powers[&p];
                    acc = Some(match acc {
                        None => f.clone(),
                        Some(a) => a.mul(f),
                    });
                    rest /= p;
                }
                acc.unwrap_or_else(|| Bracket::one(prec))
            }
        }
    }

    /// Enclosure of `c · n^{-s}`.
    pub fn scaled(&self, c: &Coefficient, n: u64) -> Bracket {
        match (c, &self.kind) {
            (Coefficient::Exact(num, den), Kind::Integer(m)) => {
                Bracket::from_ratio(num, &(den * BigInt::from(n).pow(*m)), self.prec)
            }
            (Coefficient::Exact(num, den), Kind::HalfInteger(m)) => {
                let root = Bracket::from_int(n, self.prec).sqrt().expect("n >= 1");
                root.mul_int(num.clone())
                    .div_int(den * BigInt::from(n).pow(*m + 1))
                    .expect("n >= 1")
            }
            (Coefficient::Exact(num, den), _) => {
                self.get(n).mul(&Bracket::from_ratio(num, den, self.prec))
            }
            (Coefficient::Real(c), _) => self.get(n).mul(c),
        }
    }
}

fn smallest_factor_sieve(max_n: u32) -> Vec<u32> {
    let mut spf: Vec<u32> = (0..=max_n).collect();
    let mut i = 2u64;
    while i * i <= max_n as u64 {
        if spf[i as usize] == i as u32 {
            let mut j = i * i;
            while j <= max_n as u64 {
                if spf[j as usize] == j as u32 {
                    spf[j as usize] = i as u32;
                }
                j += i;
            }
        }
        i += 1;
    }
    spf
}

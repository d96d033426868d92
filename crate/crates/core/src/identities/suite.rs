use std::collections::BTreeSet;

use super::verify::*;
use super::{IdentityError, VerificationReport};
use crate::autoseq::Bit;
use crate::realkernel::BigReal;

/// Identities run by the `all` selection, in report order.
pub const ALL_IDENTITIES: &[&str] = &[
    "ac_ratio",
    "ac_recursion",
    "catalan",
    "corollary",
    "delta",
    "euler_even",
    "lemma1",
    "lemma4",
    "plouffe_zeta7",
    "polygamma",
    "ramanujan_zeta3",
    "split_exact",
    "theorem1",
    "toth",
];

/// Deliberately wrong variants; each is expected to fail. Selectable by
/// name, never part of `all`.
pub const CONTROL_IDENTITIES: &[&str] = &[
    "ac_recursion_k0",
    "corollary_literal",
    "plouffe_zeta7_alt",
    "ramanujan_truncated",
];

/// `N` values for the exact splitting check.
pub const SPLIT_SIZES: &[u64] = &[4, 64, 1024];

/// Parameter grid shared by the verifiers of a suite run.
#[derive(Debug, Clone)]
pub struct Grid {
    pub ks: Vec<u32>,
    pub ss: Vec<BigReal>,
    /// Fixed term count for direct sums; `None` picks `10^6` for `s < 3`
    /// and `10^5` otherwise.
    pub terms: Option<u64>,
    pub prec: u32,
    /// Outer truncation `K` of the Allouche–Cohen recursion.
    pub depth: u32,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            ks: (1..=4).collect(),
            ss: [1.5, 2.0, 2.5, 3.0, 5.0, 7.0]
                .iter()
                .map(|&v| BigReal::from_f64(v).expect("finite"))
                .collect(),
            terms: None,
            prec: 256,
            depth: 40,
        }
    }
}

impl Grid {
    pub fn terms_for(&self, s: &BigReal) -> u64 {
        self.terms.unwrap_or(if *s < BigReal::from_int(3) {
            1_000_000
        } else {
            100_000
        })
    }

    fn terms_for_k(&self, k: u32) -> u64 {
        self.terms_for(&BigReal::from_int(2 * k as u64 + 1))
    }

    /// Grid values of `s` that are integers `≥ 2`.
    fn integer_ss(&self) -> Vec<u32> {
        self.ss
            .iter()
            .filter(|s| s.is_integer() && **s >= BigReal::from_int(2))
            .filter_map(|s| s.to_bigint().and_then(|v| u32::try_from(v).ok()))
            .collect()
    }
}

fn run_one(id: &str, grid: &Grid) -> Result<Vec<VerificationReport>, IdentityError> {
    let p = grid.prec;
    let per_k = |f: &dyn Fn(u32) -> Result<VerificationReport, IdentityError>| {
        grid.ks.iter().map(|&k| f(k)).collect::<Result<Vec<_>, _>>()
    };
    let per_s = |f: &dyn Fn(&BigReal) -> Result<VerificationReport, IdentityError>| {
        grid.ss.iter().map(f).collect::<Result<Vec<_>, _>>()
    };
    match id {
        "lemma1" => per_k(&|k| verify_lemma1(k, p)),
        "lemma4" => per_k(&|k| verify_lemma4(k, grid.terms_for_k(k), p)),
        "corollary" => per_k(&|k| verify_corollary(k, grid.terms_for_k(k), p)),
        "theorem1" => per_k(&|k| verify_theorem1(k, grid.terms_for_k(k), p)),
        "euler_even" => per_k(&|k| verify_euler_even(k, p)),
        "polygamma" => per_k(&|k| verify_polygamma(k, p)),
        "delta" => per_s(&|s| verify_delta_relation(s, grid.terms_for(s), p)),
        "toth" => per_s(&|s| verify_toth(s, grid.terms_for(s), p)),
        "ac_ratio" => per_s(&|s| verify_allouche_cohen_ratio(s, grid.terms_for(s), p)),
        "ac_recursion" => {
            per_s(&|s| verify_allouche_cohen_recursion(s, grid.depth, grid.terms_for(s), p))
        }
        "ac_recursion_k0" => {
            per_s(&|s| verify_allouche_cohen_recursion(s, 0, grid.terms_for(s), p))
        }
        "split_exact" => {
            let mut out = Vec::new();
            for s in grid.integer_ss() {
                for &n in SPLIT_SIZES {
                    out.push(verify_split_exact(s, n)?);
                }
            }
            Ok(out)
        }
        "corollary_literal" => {
            let mut out = Vec::new();
            for &k in &grid.ks {
                for b0 in [Bit::ZERO, Bit::ONE] {
                    out.push(verify_corollary_literal(k, b0, grid.terms_for_k(k), p)?);
                }
            }
            Ok(out)
        }
        "ramanujan_zeta3" => Ok(vec![verify_ramanujan_zeta3(p)?]),
        "ramanujan_truncated" => Ok(vec![verify_ramanujan_truncated(1, p)?]),
        "plouffe_zeta7" => Ok(vec![verify_plouffe_zeta7(p)?]),
        "plouffe_zeta7_alt" => Ok(vec![verify_plouffe_zeta7_alt(p)?]),
        "catalan" => Ok(vec![verify_catalan(p)?]),
        other => Err(IdentityError::UnknownIdentity(other.to_string())),
    }
}

/// Expand `all`, reject unknown names, and return the selection sorted by id.
fn resolve(selection: &[String]) -> Result<Vec<&'static str>, IdentityError> {
    let mut chosen = BTreeSet::new();
    for name in selection {
        let name = name.trim();
        if name == "all" {
            chosen.extend(ALL_IDENTITIES.iter().copied());
            continue;
        }
        let id = ALL_IDENTITIES
            .iter()
            .chain(CONTROL_IDENTITIES)
            .find(|id| **id == name)
            .ok_or_else(|| IdentityError::UnknownIdentity(name.to_string()))?;
        chosen.insert(*id);
    }
    if chosen.is_empty() {
        return Err(IdentityError::EmptySelection);
    }
    Ok(chosen.into_iter().collect())
}

/// Run every selected verifier over the grid.
///
/// Reports are ordered by identity id, then by grid position (ascending `k`
/// or `s`). The selection is validated before anything is computed.
pub fn run_suite(
    selection: &[String],
    grid: &Grid,
) -> Result<Vec<VerificationReport>, IdentityError> {
    let ids = resolve(selection)?;
    let mut reports = Vec::new();
    for id in ids {
        reports.extend(run_one(id, grid)?);
    }
    Ok(reports)
}

//! Deterministic reduction of long bracket sums.
//!
//! Terms are grouped into fixed chunks of [`SUM_CHUNK`] consecutive indices.
//! Each chunk is summed left to right, possibly on its own thread, and the
//! chunk totals are then added left to right. Because the grouping depends
//! only on the indices, the resulting bits do not depend on the thread count.

use rayon::prelude::*;

use super::Bracket;

pub const SUM_CHUNK: usize = 4096;

fn fold_in_order<'a>(start: Bracket, terms: impl Iterator<Item = &'a Bracket>) -> Bracket {
    terms.fold(start, |acc, t| acc.add(t))
}

/// Enclosure of `Σ terms + tail`.
pub fn bracket_sum(terms: &[Bracket], tail: &Bracket) -> Bracket {
    let prec = terms.iter().map(Bracket::prec).max().unwrap_or(tail.prec());
    let partials: Vec<Bracket> = terms
        .par_chunks(SUM_CHUNK)
        .map(|c| fold_in_order(Bracket::zero(prec), c.iter()))
        .collect();
    fold_in_order(Bracket::zero(prec), partials.iter()).add(tail)
}

/// Enclosure of `Σ_{n=first}^{last} term(n)`; `None` marks a zero term.
pub fn indexed_sum<F>(first: u64, last: u64, prec: u32, term: F) -> Bracket
where
    F: Fn(u64) -> Option<Bracket> + Sync,
{
    if last < first {
        return Bracket::zero(prec);
    }
    let chunk = SUM_CHUNK as u64;
    let first_chunk = first / chunk;
    let last_chunk = last / chunk;
    let partials: Vec<Bracket> = (first_chunk..=last_chunk)
        .into_par_iter()
        .map(|c| {
            let lo = (c * chunk).max(first);
            let hi = (c * chunk + chunk - 1).min(last);
            (lo..=hi)
                .filter_map(&term)
                .fold(Bracket::zero(prec), |acc, t| acc.add(&t))
        })
        .collect();
    fold_in_order(Bracket::zero(prec), partials.iter())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realkernel::BigReal;
    use num_bigint::BigInt;

    #[test]
    fn empty_sum_is_tail() {
        let s = bracket_sum(&[], &Bracket::zero(64));
        assert!(s.is_exact());
        assert!(s.mid().is_zero());
    }

    #[test]
    fn small_exact_sum() {
        let s = bracket_sum(
            &[Bracket::from_int(1, 64), Bracket::from_int(2, 64)],
            &Bracket::zero(64),
        );
        assert_eq!(s.mid(), &BigReal::from_int(3));
        assert!(s.is_exact());
    }

    #[test]
    fn slice_and_indexed_sums_agree_bitwise() {
        let term = |n: u64| Bracket::from_ratio(&BigInt::from(1), &BigInt::from(n * n), 128);
        let terms: Vec<Bracket> = (1..=10_000).map(term).collect();
        let a = bracket_sum(&terms, &Bracket::zero(128));
        // the slice chunks start at index 1, the indexed chunks at index 0, so
        // compare against a slice aligned the same way
        let b = indexed_sum(0, 9_999, 128, |n| Some(term(n + 1)));
        assert_eq!(a, b);
    }
}

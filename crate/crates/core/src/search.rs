//! Exhaustive search for reduced pairs `0 < a < b < bound` whose normalized
//! Dedekind sum equals a target.
//!
//! Work is split into contiguous blocks of denominators that run in
//! parallel; blocks are merged in order, so the output never depends on the
//! number of workers.

use std::ops::Range;

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::dedekind::{scaled_sum_u64, CoprimePair};
use crate::error::{Error, Result};
use crate::numeric::{Integer, Rational};

/// Largest accepted bound; keeps `b * S(a, b)` comfortably inside `i128`.
pub const MAX_BOUND: u64 = 1 << 40;

const BLOCK: u64 = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Skip denominators where `b * target` is not an even integer.
    pub prune: bool,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            prune: true,
            jobs: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub target: Rational,
    /// Exclusive upper bound on `b`.
    pub bound: u64,
    /// Sorted by `b`, then `a`.
    pub hits: Vec<CoprimePair>,
    /// Coprime pairs actually evaluated.
    pub pairs_scanned: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSummary {
    pub target: Rational,
    pub bound: u64,
    pub hit_count: u64,
    pub pairs_scanned: u64,
}

/// Target `num / den` in machine words, or `None` when no pair below
/// [`MAX_BOUND`] can reach it.
#[derive(Clone, Copy, Debug)]
struct Target {
    num: i128,
    den: u64,
}

impl Target {
    fn new(r: &Rational) -> Option<Self> {
        Some(Target {
            num: r.numer().to_i128()?,
            den: r.denom().to_u64()?,
        })
    }

    /// `b * target` when it is an integer.
    fn scaled(&self, b: u64) -> Option<i128> {
        if !b.is_multiple_of(self.den) {
            return None;
        }
        self.num.checked_mul((b / self.den) as i128)
    }
}

#[derive(Default)]
struct Slice {
    hits: Vec<(u64, u64)>,
    scanned: u64,
}

fn scan_denominator(b: u64, target: Option<Target>, prune: bool, out: &mut Slice) {
    let wanted = target.and_then(|t| t.scaled(b));
    if prune && !matches!(wanted, Some(w) if w % 2 == 0) {
        return;
    }
    for a in 1..b {
        let Some(scaled) = scaled_sum_u64(a, b) else {
            continue;
        };
        out.scanned += 1;
        if Some(scaled) == wanted {
            out.hits.push((a, b));
        }
    }
}

fn scan_block(range: Range<u64>, target: Option<Target>, prune: bool) -> Slice {
    let mut out = Slice::default();
    for b in range {
        scan_denominator(b, target, prune, &mut out);
    }
    out
}

fn validate(bound: u64) -> Result<()> {
    if bound < 2 {
        return Err(Error::InvalidParameter {
            name: "bound",
            reason: format!("{bound} < 2"),
        });
    }
    if bound > MAX_BOUND {
        return Err(Error::InvalidParameter {
            name: "bound",
            reason: format!("{bound} exceeds {MAX_BOUND}"),
        });
    }
    Ok(())
}

/// Runs the sweep, calling `emit` for every hit in `(b, a)` order as soon as
/// the block containing it and all earlier blocks are finished.
pub fn search_stream<F>(
    target: &Rational,
    bound: u64,
    options: &SearchOptions,
    mut emit: F,
) -> Result<SearchSummary>
where
    F: FnMut(&CoprimePair),
{
    validate(bound)?;
    let machine_target = Target::new(target);
    let blocks: Vec<Range<u64>> = (2..bound)
        .step_by(BLOCK as usize)
        .map(|lo| lo..(lo + BLOCK).min(bound))
        .collect();

    let pool = match options.jobs {
        Some(n) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Internal(format!("thread pool: {e}")))?,
        ),
        None => None,
    };
    let workers = pool
        .as_ref()
        .map_or_else(rayon::current_num_threads, |p| p.current_num_threads());
    let batch = (workers * 4).max(1);

    let mut summary = SearchSummary {
        target: target.clone(),
        bound,
        hit_count: 0,
        pairs_scanned: 0,
    };
    for chunk in blocks.chunks(batch) {
        let run = || -> Vec<Slice> {
            chunk
                .par_iter()
                .map(|r| scan_block(r.clone(), machine_target, options.prune))
                .collect()
        };
        let slices = match &pool {
            Some(p) => p.install(run),
            None => run(),
        };
        for slice in slices {
            summary.pairs_scanned += slice.scanned;
            for (a, b) in slice.hits {
                summary.hit_count += 1;
                emit(&CoprimePair::new_unchecked(
                    Integer::from(a),
                    Integer::from(b),
                ));
            }
        }
    }
    Ok(summary)
}

pub fn search_value_with(
    target: &Rational,
    bound: u64,
    options: &SearchOptions,
) -> Result<SearchResult> {
    let mut hits = Vec::new();
    let summary = search_stream(target, bound, options, |p| hits.push(p.clone()))?;
    Ok(SearchResult {
        target: summary.target,
        bound,
        hits,
        pairs_scanned: summary.pairs_scanned,
    })
}

pub fn search_value(target: &Rational, bound: u64) -> Result<SearchResult> {
    search_value_with(target, bound, &SearchOptions::default())
}

/// Whether any pair with denominator `b` could attain `target`: `b * target`
/// must be an even integer.
pub fn denominator_admissible(target: &Rational, b: &Integer) -> bool {
    let scaled = target.clone() * Rational::from(b.clone());
    scaled.is_integer() && (scaled.numer() % 2u32).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dedekind::{normalized_sum, Method};
    use crate::numeric::int;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(int(n), int(d)).unwrap()
    }

    fn as_tuples(hits: &[CoprimePair]) -> Vec<(i64, i64)> {
        hits.iter()
            .map(|p| (p.a().try_into().unwrap(), p.b().try_into().unwrap()))
            .collect()
    }

    fn brute_force(target: &Rational, bound: i64) -> Vec<(i64, i64)> {
        let mut out = vec![];
        for b in 2..bound {
            for a in 1..b {
                if num_integer::gcd(a, b) == 1
                    && normalized_sum(&CoprimePair::new(a, b).unwrap(), Method::Naive) == *target
                {
                    out.push((a, b));
                }
            }
        }
        out
    }

    #[test]
    fn small_zero_target() {
        let expected = brute_force(&Rational::zero(), 6);
        assert_eq!(expected, vec![(1, 2), (2, 5), (3, 5)]);
        // Second oracle: S(a, b) = 0 iff a^2 = -1 (mod b).
        let classical: Vec<_> = (2..6i64)
            .flat_map(|b| (1..b).map(move |a| (a, b)))
            .filter(|&(a, b)| (a * a + 1) % b == 0)
            .collect();
        assert_eq!(classical, expected);
        let got = search_value(&Rational::zero(), 6).unwrap();
        assert_eq!(as_tuples(&got.hits), expected);
    }

    #[test]
    fn integer_target_never_hit() {
        let got = search_value(&r(1, 1), 10).unwrap();
        assert!(got.hits.is_empty());
        let got = search_value_with(
            &r(1, 1),
            10,
            &SearchOptions {
                prune: false,
                jobs: Some(1),
            },
        )
        .unwrap();
        assert!(got.hits.is_empty());
        assert!(got.pairs_scanned > 0);
    }

    #[test]
    fn stream_examples() {
        let mut seen = vec![];
        let s = search_stream(&r(18, 7), 100, &SearchOptions::default(), |p| {
            seen.push(p.clone())
        })
        .unwrap();
        // Inverses mod b share the value: 3 * 5 = 1 (mod 14), 13 * 27 = 1 (mod 70).
        let expected = brute_force(&r(18, 7), 100);
        assert_eq!(expected, vec![(3, 14), (5, 14), (13, 70), (27, 70)]);
        assert_eq!(as_tuples(&seen), expected);
        let full = search_value(&r(18, 7), 100).unwrap();
        assert_eq!(s.hit_count, 4);
        assert_eq!(s.pairs_scanned, full.pairs_scanned);

        let mut seen = vec![];
        search_stream(&r(18, 7), 14, &SearchOptions::default(), |p| {
            seen.push(p.clone())
        })
        .unwrap();
        assert!(seen.is_empty());

        let mut seen = vec![];
        search_stream(&Rational::zero(), 3, &SearchOptions::default(), |p| {
            seen.push(p.clone())
        })
        .unwrap();
        assert_eq!(as_tuples(&seen), vec![(1, 2)]);
    }

    #[test]
    fn bound_validation() {
        for bad in [0, 1, MAX_BOUND + 1] {
            assert!(matches!(
                search_value(&r(1, 2), bad),
                Err(Error::InvalidParameter { name: "bound", .. })
            ));
        }
    }

    #[test]
    fn huge_target_scans_without_hits() {
        let huge = Rational::new(Integer::from(10u32).pow(60u32), int(7)).unwrap();
        let pruned = search_value(&huge, 50).unwrap();
        assert!(pruned.hits.is_empty());
        assert_eq!(pruned.pairs_scanned, 0);
        let exact = search_value_with(
            &huge,
            50,
            &SearchOptions {
                prune: false,
                jobs: None,
            },
        )
        .unwrap();
        assert!(exact.hits.is_empty());
    }

    #[test]
    fn pruning_counts_only_admissible_denominators() {
        let target = r(18, 7);
        let pruned = search_value(&target, 200).unwrap();
        let exact = search_value_with(
            &target,
            200,
            &SearchOptions {
                prune: false,
                jobs: None,
            },
        )
        .unwrap();
        assert_eq!(pruned.hits, exact.hits);
        let admissible: u64 = (2..200u64)
            .filter(|&b| denominator_admissible(&target, &Integer::from(b)))
            .map(|b| (1..b).filter(|&a| num_integer::gcd(a, b) == 1).count() as u64)
            .sum();
        assert_eq!(pruned.pairs_scanned, admissible);
        assert!(exact.pairs_scanned > pruned.pairs_scanned);
    }
}

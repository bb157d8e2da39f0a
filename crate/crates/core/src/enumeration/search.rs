//! Depth-first enumeration of index multisets with `sum (r - 1/r) <= budget`.
//!
//! Multisets are generated in run-length form over strictly increasing
//! distinct indices, so each one is produced exactly once. A branch stops
//! when the remaining budget is below `3/2` (the weight of an index-2
//! point) or when the next index alone no longer fits; `r - 1/r` is
//! increasing in `r`, so every later index is out of reach too.
//!
//! For parallel runs the top level is split by the smallest index and its
//! multiplicity. Workers share nothing; the caller sorts the merged output.

use rayon::prelude::*;

use crate::rational::{frac, Rational};
use crate::reid_rr::{c1c2_from_indices, index_weight, IndexMultiset};

use super::query::{EnumerationError, EnumerationQuery, Filter};
use super::record::ChernRecord;

/// One top-level branch: multisets whose smallest index is `r` with
/// multiplicity exactly `count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Branch {
    r: u32,
    count: u32,
}

fn min_addable() -> Rational {
    frac(3, 2)
}

fn top_level_branches(budget: &Rational) -> Vec<Branch> {
    let mut out = Vec::new();
    let mut r = 2;
    loop {
        let w = index_weight(r);
        if &w > budget {
            break;
        }
        let mut count = 1;
        let mut total = w.clone();
        while &total <= budget {
            out.push(Branch { r, count });
            count += 1;
            total += &w;
        }
        r += 1;
    }
    out
}

fn extend(
    start: u32,
    remaining: &Rational,
    prefix: &mut Vec<(u32, u32)>,
    out: &mut Vec<IndexMultiset>,
) {
    if remaining < &min_addable() {
        return;
    }
    let mut r = start;
    loop {
        let w = index_weight(r);
        if &w > remaining {
            break;
        }
        let mut count = 1;
        let mut total = w.clone();
        while &total <= remaining {
            prefix.push((r, count));
            out.push(IndexMultiset::from_sorted_runs(prefix.clone()));
            extend(r + 1, &(remaining - &total), prefix, out);
            prefix.pop();
            count += 1;
            total += &w;
        }
        r += 1;
    }
}

fn run_branch(branch: Branch, budget: &Rational) -> Vec<IndexMultiset> {
    let used = index_weight(branch.r) * Rational::from_integer(branch.count.into());
    let mut prefix = vec![(branch.r, branch.count)];
    let mut out = vec![IndexMultiset::from_sorted_runs(prefix.clone())];
    extend(branch.r + 1, &(budget - used), &mut prefix, &mut out);
    out
}

/// Every non-empty index multiset of weight at most `budget`, unordered.
pub fn multisets_within(budget: &Rational) -> Vec<IndexMultiset> {
    top_level_branches(budget)
        .into_iter()
        .flat_map(|b| run_branch(b, budget))
        .collect()
}

fn with_pool<T: Send>(
    jobs: usize,
    work: impl FnOnce() -> T + Send,
) -> Result<T, EnumerationError> {
    if jobs <= 1 {
        return Ok(work());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| EnumerationError::ThreadPool(e.to_string()))?;
    Ok(pool.install(work))
}

fn passes_cheap_filter(filter: &Filter, c1c2: &Rational) -> bool {
    match filter {
        Filter::All | Filter::IntegralBasket => true,
        Filter::C1c2Zero => c1c2 == &Rational::from_integer(0.into()),
        Filter::C1c2InRange(lo, hi) => lo <= c1c2 && c1c2 <= hi,
    }
}

fn record_for(m: IndexMultiset, q: &EnumerationQuery) -> Option<ChernRecord> {
    let c1c2 = c1c2_from_indices(&m, q.chi0);
    if !passes_cheap_filter(&q.filter, &c1c2) {
        return None;
    }
    let rec = ChernRecord::compute(m, q.chi0, q.integrality_depth)?;
    match q.filter {
        Filter::IntegralBasket if !rec.has_integral_basket() => None,
        _ => Some(rec),
    }
}

/// Runs `q` with `jobs` worker threads (`<= 1` means the calling thread).
/// Output is in canonical order and independent of `jobs`.
pub fn enumerate_index_multisets_with_jobs(
    q: &EnumerationQuery,
    jobs: usize,
) -> Result<Vec<ChernRecord>, EnumerationError> {
    q.validate()?;
    let budget = Rational::from_integer((24 * q.chi0).into());
    let branches = top_level_branches(&budget);
    let mut records = with_pool(jobs, || {
        let mut records: Vec<ChernRecord> = if jobs <= 1 {
            branches
                .iter()
                .flat_map(|&b| run_branch(b, &budget))
                .filter_map(|m| record_for(m, q))
                .collect()
        } else {
            branches
                .par_iter()
                .flat_map_iter(|&b| run_branch(b, &budget))
                .filter_map(|m| record_for(m, q))
                .collect()
        };
        if q.include_empty {
            records.extend(record_for(IndexMultiset::empty(), q));
        }
        records
    })?;
    records.sort_by(ChernRecord::canonical_cmp);
    Ok(records)
}

/// Single-threaded [`enumerate_index_multisets_with_jobs`].
pub fn enumerate_index_multisets(q: &EnumerationQuery) -> Result<Vec<ChernRecord>, EnumerationError> {
    enumerate_index_multisets_with_jobs(q, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn budget_below_three_halves_is_empty() {
        assert!(multisets_within(&int(0)).is_empty());
        assert!(multisets_within(&frac(149, 100)).is_empty());
        let m = multisets_within(&frac(3, 2));
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].to_string(), "2");
    }

    #[test]
    fn small_budget_by_hand() {
        // weights: 2 -> 3/2, 3 -> 8/3, 4 -> 15/4, 5 -> 24/5
        let mut got: Vec<String> = multisets_within(&int(5)).iter().map(|m| m.to_string()).collect();
        got.sort();
        let mut want = vec!["2", "2^2", "2^3", "3", "4", "5", "2,3"];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn chi_zero_only_has_the_empty_multiset() {
        let q = EnumerationQuery::new(0).include_empty(true);
        let recs = enumerate_index_multisets(&q).unwrap();
        assert_eq!(recs.len(), 1);
        assert!(recs[0].indices().is_empty());
        assert_eq!(recs[0].cartier_index(), 1);
        assert_eq!(recs[0].c1c2(), &int(0));
        assert!(enumerate_index_multisets(&EnumerationQuery::new(0)).unwrap().is_empty());
    }

    #[test]
    fn rejects_chi_outside_domain() {
        assert_eq!(
            enumerate_index_multisets(&EnumerationQuery::new(3)).unwrap_err(),
            EnumerationError::ChiOutOfDomain(3)
        );
    }

    #[test]
    fn canonical_order() {
        let recs = enumerate_index_multisets(&EnumerationQuery::new(1)).unwrap();
        assert_eq!(recs.len(), 2151);
        assert_eq!(recs[0].indices().to_string(), "2");
        assert!(recs
            .windows(2)
            .all(|w| w[0].canonical_cmp(&w[1]) == std::cmp::Ordering::Less));
    }

    #[test]
    fn parallel_matches_serial() {
        let q = EnumerationQuery::new(1).include_empty(true);
        let a = enumerate_index_multisets_with_jobs(&q, 1).unwrap();
        let b = enumerate_index_multisets_with_jobs(&q, 4).unwrap();
        assert_eq!(a, b);
    }
}

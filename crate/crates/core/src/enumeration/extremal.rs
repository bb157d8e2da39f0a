//! Extremal values, candidate counts and the effective-bound constant.

use crate::rational::{int, Rational};
use crate::reid_rr::IndexMultiset;

use super::query::{EnumerationError, EnumerationQuery, Filter};
use super::search::enumerate_index_multisets_with_jobs;

/// Smallest positive `c1c2` at `chi0`, with every multiset attaining it in
/// canonical order. With `require_integral`, only multisets admitting a
/// basket with `l(2)` integral are considered.
pub fn min_positive_c1c2(
    chi0: i64,
    require_integral: bool,
    jobs: usize,
) -> Result<(Rational, Vec<IndexMultiset>), EnumerationError> {
    let filter = if require_integral {
        Filter::IntegralBasket
    } else {
        Filter::All
    };
    let records = enumerate_index_multisets_with_jobs(&EnumerationQuery::new(chi0).filter(filter), jobs)?;
    let zero = int(0);
    let min = records
        .iter()
        .map(|r| r.c1c2())
        .filter(|c| *c > &zero)
        .min()
        .cloned()
        .ok_or(EnumerationError::NoPositiveValue(chi0))?;
    let attaining = records
        .iter()
        .filter(|r| r.c1c2() == &min)
        .map(|r| r.indices().clone())
        .collect();
    Ok((min, attaining))
}

pub fn count_candidates(q: &EnumerationQuery, jobs: usize) -> Result<usize, EnumerationError> {
    Ok(enumerate_index_multisets_with_jobs(q, jobs)?.len())
}

/// Candidate counts at one `chi`, with and without the integrality filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Census {
    pub chi0: i64,
    pub unfiltered: usize,
    pub integral: usize,
}

/// Non-empty multisets at `chi0`, counted twice: unfiltered and under the
/// depth-2 integral-basket filter.
pub fn census(chi0: i64, jobs: usize) -> Result<Census, EnumerationError> {
    let records = enumerate_index_multisets_with_jobs(&EnumerationQuery::new(chi0), jobs)?;
    Ok(Census {
        chi0,
        unfiltered: records.len(),
        integral: records.iter().filter(|r| r.has_integral_basket()).count(),
    })
}

/// Upper bound on (-K)^3 used for the effective constant.
pub fn default_max_cube() -> Rational {
    int(324)
}

/// `max_cube / min_positive`: the constant `b` with `c1^3 <= b · c1c2`.
pub fn effective_bound(max_cube: &Rational, min_positive: &Rational) -> Result<Rational, EnumerationError> {
    if min_positive <= &int(0) {
        return Err(EnumerationError::NonPositiveDivisor(min_positive.clone()));
    }
    Ok(max_cube / min_positive)
}

//! Exhaustive search over index multisets allowed by `c1c2 >= 0`, the
//! integral-basket filter, and the `chi = 1` tables built on top of them.

mod extremal;
mod integrality;
mod query;
mod record;
mod search;
mod tables;

pub use extremal::{
    census, count_candidates, default_max_cube, effective_bound, min_positive_c1c2, Census,
};
pub use integrality::exists_integral_basket;
pub use query::{EnumerationError, EnumerationQuery, Filter, CHI_DOMAIN};
pub use record::{ChernRecord, RecordError};
pub use search::{enumerate_index_multisets, enumerate_index_multisets_with_jobs, multisets_within};
pub use tables::{
    compare_rows, parse_fixture, render_fixture, reproduce_table, verify_table, FixtureError,
    FixtureRow, TableCheckError, SMOOTH_INVARIANTS, TableDiff, TableId, TABLE1_FIXTURE, TABLE2_FIXTURE,
};

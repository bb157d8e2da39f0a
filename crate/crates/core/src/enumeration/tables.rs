//! The two `chi = 1` classification tables: embedded fixtures, their text
//! format, and set comparison against a fresh enumeration.
//!
//! Fixture format is CSV with header `multiset,r_X,c1c2`, one record per
//! line, the multiset always quoted, rows in canonical enumeration order.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::rational::{parse_rational, Rational};
use crate::reid_rr::{c1c2_from_indices, IndexMultiset};

use super::query::{EnumerationError, EnumerationQuery, Filter};
use super::record::ChernRecord;
use super::search::enumerate_index_multisets_with_jobs;

pub const TABLE1_FIXTURE: &str = include_str!("../../fixtures/table1.csv");
pub const TABLE2_FIXTURE: &str = include_str!("../../fixtures/table2.csv");

const HEADER: [&str; 3] = ["multiset", "r_X", "c1c2"];

/// Smooth cases: `(case, chi(O_X), c1c2)`. With no singular points the
/// Euler identity reads `c1c2 = 24 chi`.
pub const SMOOTH_INVARIANTS: [(&str, i64, i64); 6] = [
    ("abelian-surface base", 0, 0),
    ("bielliptic base", 0, 0),
    ("elliptic-curve base", 0, 0),
    ("K3 base", 2, 48),
    ("Enriques base", 1, 24),
    ("rationally connected", 1, 24),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    /// `chi = 1`, `c1c2 = 0`.
    CalabiYauLike,
    /// `chi = 1`, some basket with `l(2)` integral.
    NotBig,
}

impl TableId {
    pub fn from_number(n: u32) -> Option<Self> {
        match n {
            1 => Some(Self::CalabiYauLike),
            2 => Some(Self::NotBig),
            _ => None,
        }
    }

    pub fn number(self) -> u32 {
        match self {
            Self::CalabiYauLike => 1,
            Self::NotBig => 2,
        }
    }

    pub fn query(self) -> EnumerationQuery {
        let filter = match self {
            Self::CalabiYauLike => Filter::C1c2Zero,
            Self::NotBig => Filter::IntegralBasket,
        };
        EnumerationQuery::new(1).filter(filter).depth(2)
    }

    pub fn embedded_fixture(self) -> &'static str {
        match self {
            Self::CalabiYauLike => TABLE1_FIXTURE,
            Self::NotBig => TABLE2_FIXTURE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FixtureRow {
    pub indices: IndexMultiset,
    pub cartier_index: u64,
    pub c1c2: Rational,
}

impl From<&ChernRecord> for FixtureRow {
    fn from(rec: &ChernRecord) -> Self {
        Self {
            indices: rec.indices().clone(),
            cartier_index: rec.cartier_index(),
            c1c2: rec.c1c2().clone(),
        }
    }
}

impl fmt::Display for FixtureRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\",{},{}", self.indices, self.cartier_index, self.c1c2)
    }
}

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("fixture line {line}: {message}")]
    Row { line: u64, message: String },
    #[error("fixture header must be `{expected}`, found `{found}`")]
    Header { expected: String, found: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub fn parse_fixture(text: &str) -> Result<Vec<FixtureRow>, FixtureError> {
    let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header = reader.headers()?.clone();
    if header.iter().collect::<Vec<_>>() != HEADER {
        return Err(FixtureError::Header {
            expected: HEADER.join(","),
            found: header.iter().collect::<Vec<_>>().join(","),
        });
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let err = |message: String| FixtureError::Row { line, message };
        if record.len() != 3 {
            return Err(err(format!("expected 3 columns, found {}", record.len())));
        }
        let indices: IndexMultiset = record[0].parse().map_err(|e| err(format!("{e}")))?;
        let cartier_index: u64 = record[1]
            .trim()
            .parse()
            .map_err(|_| err(format!("bad r_X `{}`", &record[1])))?;
        let c1c2 = parse_rational(&record[2]).map_err(|e| err(e.to_string()))?;
        rows.push(FixtureRow {
            indices,
            cartier_index,
            c1c2,
        });
    }
    Ok(rows)
}

/// Renders rows in the fixture format; rows are written in the order given.
pub fn render_fixture<'a>(rows: impl IntoIterator<Item = &'a FixtureRow>) -> String {
    let mut out = HEADER.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}

/// Result of comparing a reproduced table with its fixture, as sets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TableDiff {
    /// In the fixture, not produced by the enumeration.
    pub missing: Vec<FixtureRow>,
    /// Produced by the enumeration, not in the fixture.
    pub extra: Vec<FixtureRow>,
    /// Fixture rows whose own columns disagree with the Euler identity or
    /// the lcm (these also show up in `missing`).
    pub inconsistent: Vec<(FixtureRow, String)>,
}

impl TableDiff {
    pub fn is_match(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.inconsistent.is_empty()
    }
}

impl fmt::Display for TableDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_match() {
            return f.write_str("match");
        }
        for row in &self.missing {
            writeln!(f, "  missing from enumeration: {row}")?;
        }
        for row in &self.extra {
            writeln!(f, "  missing from fixture:     {row}")?;
        }
        for (row, why) in &self.inconsistent {
            writeln!(f, "  inconsistent fixture row: {row} ({why})")?;
        }
        Ok(())
    }
}

pub fn compare_rows(produced: &[FixtureRow], fixture: &[FixtureRow], chi0: i64) -> TableDiff {
    let produced_set: BTreeSet<&FixtureRow> = produced.iter().collect();
    let fixture_set: BTreeSet<&FixtureRow> = fixture.iter().collect();
    let inconsistent = fixture
        .iter()
        .filter_map(|row| {
            let c = c1c2_from_indices(&row.indices, chi0);
            let r = row.indices.cartier_index();
            if c != row.c1c2 {
                Some((row.clone(), format!("c1c2 should be {c}")))
            } else if r != row.cartier_index {
                Some((row.clone(), format!("r_X should be {r}")))
            } else {
                None
            }
        })
        .collect();
    TableDiff {
        missing: fixture_set
            .difference(&produced_set)
            .map(|r| (*r).clone())
            .collect(),
        extra: produced_set
            .difference(&fixture_set)
            .map(|r| (*r).clone())
            .collect(),
        inconsistent,
    }
}

/// Enumerates the records behind table `id` (empty multiset excluded).
pub fn reproduce_table(id: TableId, jobs: usize) -> Result<Vec<ChernRecord>, EnumerationError> {
    enumerate_index_multisets_with_jobs(&id.query(), jobs)
}

/// Reproduces table `id` and compares it with the given fixture text.
pub fn verify_table(
    id: TableId,
    fixture_text: &str,
    jobs: usize,
) -> Result<TableDiff, TableCheckError> {
    let fixture = parse_fixture(fixture_text)?;
    let produced: Vec<FixtureRow> = reproduce_table(id, jobs)?.iter().map(FixtureRow::from).collect();
    Ok(compare_rows(&produced, &fixture, 1))
}

#[derive(Debug, Error)]
pub enum TableCheckError {
    #[error(transparent)]
    Fixture(#[from] FixtureError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

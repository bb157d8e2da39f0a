//! Baskets of virtual orbifold points and their index multisets.
//!
//! Both containers are run-length encoded: a sorted list of
//! `(value, multiplicity)` pairs with no duplicate keys and multiplicities
//! at least one. Every constructor restores that canonical form.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::integer::Integer;
use thiserror::Error;

use crate::rational::{checked_lcm, Rational};

/// Printed for an empty multiset or basket; accepted (as is the empty
/// string) when parsing.
pub const EMPTY_SYMBOL: &str = "∅";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasketError {
    #[error("index r = {0} must be at least 2")]
    IndexTooSmall(u32),
    #[error("b = {b} is not coprime to r = {r}")]
    NotCoprime { b: u32, r: u32 },
    #[error("b = {b} is outside 0 < 2b <= r for r = {r}")]
    NotNormalized { b: u32, r: u32 },
    #[error("zero multiplicity")]
    ZeroMultiplicity,
    #[error("cannot parse `{term}`: {reason}")]
    Syntax { term: String, reason: String },
}

fn syntax(term: &str, reason: impl Into<String>) -> BasketError {
    BasketError::Syntax {
        term: term.to_string(),
        reason: reason.into(),
    }
}

/// An orbifold point of type `1/r (1, -1, b)`, normalized so that
/// `gcd(b, r) = 1` and `0 < 2b <= r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasketPoint {
    b: u32,
    r: u32,
}

impl BasketPoint {
    /// Rejects pairs that are not already normalized.
    pub fn new(b: u32, r: u32) -> Result<Self, BasketError> {
        if r < 2 {
            return Err(BasketError::IndexTooSmall(r));
        }
        if b == 0 || 2 * u64::from(b) > u64::from(r) {
            return Err(BasketError::NotNormalized { b, r });
        }
        if b.gcd(&r) != 1 {
            return Err(BasketError::NotCoprime { b, r });
        }
        Ok(Self { b, r })
    }

    /// Accepts any `b` coprime to `r`: reduces it mod `r` and folds
    /// `b -> r - b` when `2b > r`.
    pub fn normalized(b: i64, r: u32) -> Result<Self, BasketError> {
        if r < 2 {
            return Err(BasketError::IndexTooSmall(r));
        }
        let mut b = b.rem_euclid(i64::from(r)) as u32;
        if 2 * b > r {
            b = r - b;
        }
        if b == 0 || b.gcd(&r) != 1 {
            return Err(BasketError::NotCoprime { b, r });
        }
        Ok(Self { b, r })
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Every admissible `b` for index `r`, ascending.
    pub fn admissible_b(r: u32) -> impl Iterator<Item = u32> {
        (1..=r / 2).filter(move |b| b.gcd(&r) == 1)
    }
}

impl PartialOrd for BasketPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BasketPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.r, self.b).cmp(&(other.r, other.b))
    }
}

impl fmt::Display for BasketPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.b, self.r)
    }
}

/// A multiset of [`BasketPoint`]s in ascending `(r, b)` order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Basket {
    points: Vec<(BasketPoint, u32)>,
}

impl Basket {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_counts(
        pairs: impl IntoIterator<Item = (BasketPoint, u32)>,
    ) -> Result<Self, BasketError> {
        let mut map = BTreeMap::new();
        for (p, k) in pairs {
            if k == 0 {
                return Err(BasketError::ZeroMultiplicity);
            }
            *map.entry(p).or_insert(0u32) += k;
        }
        Ok(Self {
            points: map.into_iter().collect(),
        })
    }

    pub fn from_points(points: impl IntoIterator<Item = BasketPoint>) -> Self {
        Self::from_counts(points.into_iter().map(|p| (p, 1)))
            .expect("unit multiplicities are never zero")
    }

    /// `(point, multiplicity)` pairs in canonical order.
    pub fn entries(&self) -> &[(BasketPoint, u32)] {
        &self.points
    }

    /// Points expanded by multiplicity, in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = BasketPoint> + '_ {
        self.points
            .iter()
            .flat_map(|&(p, k)| std::iter::repeat(p).take(k as usize))
    }

    pub fn len(&self) -> usize {
        self.points.iter().map(|&(_, k)| k as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Forgets the `b` values.
    pub fn indices(&self) -> IndexMultiset {
        IndexMultiset::from_counts(self.points.iter().map(|&(p, k)| (p.r, k)))
            .expect("basket indices are >= 2 with positive multiplicity")
    }
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.points.is_empty() {
            return f.write_str(EMPTY_SYMBOL);
        }
        for (i, (p, k)) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            if *k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Basket {
    type Err = BasketError;

    /// Grammar: comma-separated `(b,r)` or `(b,r)^k`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == EMPTY_SYMBOL {
            return Ok(Self::empty());
        }
        let mut pairs = Vec::new();
        let mut rest = s;
        loop {
            rest = rest.trim_start();
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| syntax(rest, "expected `(`"))?;
            let close = open
                .find(')')
                .ok_or_else(|| syntax(rest, "missing `)`"))?;
            let inner = &open[..close];
            let (b, r) = inner
                .split_once(',')
                .ok_or_else(|| syntax(inner, "expected `b,r`"))?;
            let b: u32 = b
                .trim()
                .parse()
                .map_err(|_| syntax(inner, "b is not a positive integer"))?;
            let r: u32 = r
                .trim()
                .parse()
                .map_err(|_| syntax(inner, "r is not a positive integer"))?;
            let point = BasketPoint::new(b, r)?;
            rest = open[close + 1..].trim_start();
            let mut k = 1;
            if let Some(exp) = rest.strip_prefix('^') {
                let end = exp.find(',').unwrap_or(exp.len());
                k = parse_exponent(&exp[..end])?;
                rest = &exp[end..];
            }
            pairs.push((point, k));
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            rest = rest
                .strip_prefix(',')
                .ok_or_else(|| syntax(rest, "expected `,` between points"))?;
        }
        Self::from_counts(pairs)
    }
}

fn parse_exponent(text: &str) -> Result<u32, BasketError> {
    let k: u32 = text
        .trim()
        .parse()
        .map_err(|_| syntax(text, "exponent is not a positive integer"))?;
    if k == 0 {
        return Err(BasketError::ZeroMultiplicity);
    }
    Ok(k)
}

/// A multiset of local indices `r >= 2`, stored as ascending
/// `(r, multiplicity)` pairs.
///
/// The derived order on the run-length form is not meaningful; [`Ord`] is
/// implemented by hand as lexicographic order on the expanded ascending
/// sequence, so `{2^3,4,7,9} < {2^3,5^2,10}` and a proper prefix sorts
/// first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IndexMultiset {
    entries: Vec<(u32, u32)>,
}

impl IndexMultiset {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_counts(pairs: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, BasketError> {
        let mut map = BTreeMap::new();
        for (r, k) in pairs {
            if r < 2 {
                return Err(BasketError::IndexTooSmall(r));
            }
            if k == 0 {
                return Err(BasketError::ZeroMultiplicity);
            }
            *map.entry(r).or_insert(0u32) += k;
        }
        Ok(Self {
            entries: map.into_iter().collect(),
        })
    }

    pub fn from_indices(indices: impl IntoIterator<Item = u32>) -> Result<Self, BasketError> {
        Self::from_counts(indices.into_iter().map(|r| (r, 1)))
    }

    /// Caller guarantees ascending distinct `r >= 2` and positive counts.
    pub(crate) fn from_sorted_runs(entries: Vec<(u32, u32)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|&(r, k)| r >= 2 && k >= 1));
        Self { entries }
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    /// Indices expanded by multiplicity, ascending.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries
            .iter()
            .flat_map(|&(r, k)| std::iter::repeat(r).take(k as usize))
    }

    pub fn len(&self) -> usize {
        self.entries.iter().map(|&(_, k)| k as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, r: u32) -> u32 {
        self.entries
            .iter()
            .find(|&&(x, _)| x == r)
            .map_or(0, |&(_, k)| k)
    }

    /// `sum (r - 1/r)` over the multiset, exactly.
    pub fn weight(&self) -> Rational {
        self.entries
            .iter()
            .map(|&(r, k)| index_weight(r) * Rational::from_integer(k.into()))
            .sum()
    }

    /// Least common multiple of the indices; `1` when empty.
    pub fn cartier_index(&self) -> u64 {
        self.entries.iter().fold(1u64, |acc, &(r, _)| {
            checked_lcm(acc, u64::from(r)).expect("Cartier index overflows u64")
        })
    }

    /// Adds `k` copies of `r`.
    pub fn with(&self, r: u32, k: u32) -> Result<Self, BasketError> {
        Self::from_counts(self.entries.iter().copied().chain([(r, k)]))
    }

    /// Divides every multiplicity by two, or `None` if one is odd.
    pub fn halved(&self) -> Option<Self> {
        self.entries
            .iter()
            .map(|&(r, k)| (k % 2 == 0).then_some((r, k / 2)))
            .collect::<Option<Vec<_>>>()
            .map(Self::from_sorted_runs)
    }
}

/// Weight `r - 1/r` of a single point of index `r`.
pub fn index_weight(r: u32) -> Rational {
    let r = i64::from(r);
    Rational::new((r * r - 1).into(), r.into())
}

impl PartialOrd for IndexMultiset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IndexMultiset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Display for IndexMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str(EMPTY_SYMBOL);
        }
        for (i, (r, k)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
            if *k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for IndexMultiset {
    type Err = BasketError;

    /// Grammar: comma-separated `r` or `r^k`, e.g. `2^3,4,7,9`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == EMPTY_SYMBOL {
            return Ok(Self::empty());
        }
        let mut pairs = Vec::new();
        for term in s.split(',') {
            let term = term.trim();
            let (r, k) = match term.split_once('^') {
                Some((r, k)) => (r, parse_exponent(k)?),
                None => (term, 1),
            };
            let r: u32 = r
                .trim()
                .parse()
                .map_err(|_| syntax(term, "index is not a positive integer"))?;
            pairs.push((r, k));
        }
        Self::from_counts(pairs)
    }
}

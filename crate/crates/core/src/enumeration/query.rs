use std::fmt;

use thiserror::Error;

use crate::rational::Rational;

/// `chi(O_X)` values allowed without the exploration override.
pub const CHI_DOMAIN: [i64; 3] = [0, 1, 2];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("chi = {0} is outside {{0, 1, 2}}; pass the exploration override to allow it")]
    ChiOutOfDomain(i64),
    #[error("chi = {0} is negative")]
    NegativeChi(i64),
    #[error("empty range: lo = {lo} > hi = {hi}")]
    EmptyRange { lo: Rational, hi: Rational },
    #[error("integrality depth must be at least 2, got {0}")]
    DepthTooSmall(u32),
    #[error("no positive value of c1c2 exists for chi = {0}")]
    NoPositiveValue(i64),
    #[error("divisor must be positive, got {0}")]
    NonPositiveDivisor(Rational),
    #[error("could not build a worker pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Filter {
    All,
    C1c2Zero,
    /// Some basket over the multiset makes `l(m)` integral for
    /// `2 <= m <= integrality_depth`.
    IntegralBasket,
    /// `lo <= c1c2 <= hi`.
    C1c2InRange(Rational, Rational),
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filter::All => f.write_str("all"),
            Filter::C1c2Zero => f.write_str("c1c2-zero"),
            Filter::IntegralBasket => f.write_str("l2-integral"),
            Filter::C1c2InRange(lo, hi) => write!(f, "c1c2-range[{lo},{hi}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationQuery {
    pub chi0: i64,
    pub include_empty: bool,
    pub filter: Filter,
    pub integrality_depth: u32,
    /// Lifts the `{0, 1, 2}` restriction on `chi0`.
    pub allow_any_chi: bool,
}

impl EnumerationQuery {
    pub fn new(chi0: i64) -> Self {
        Self {
            chi0,
            include_empty: false,
            filter: Filter::All,
            integrality_depth: 2,
            allow_any_chi: false,
        }
    }

    pub fn filter(mut self, filter: Filter) -> Self {
        self.filter = filter;
        self
    }

    pub fn include_empty(mut self, yes: bool) -> Self {
        self.include_empty = yes;
        self
    }

    pub fn depth(mut self, depth: u32) -> Self {
        self.integrality_depth = depth;
        self
    }

    pub fn allow_any_chi(mut self, yes: bool) -> Self {
        self.allow_any_chi = yes;
        self
    }

    pub fn validate(&self) -> Result<(), EnumerationError> {
        if self.chi0 < 0 {
            return Err(EnumerationError::NegativeChi(self.chi0));
        }
        if !self.allow_any_chi && !CHI_DOMAIN.contains(&self.chi0) {
            return Err(EnumerationError::ChiOutOfDomain(self.chi0));
        }
        if self.integrality_depth < 2 {
            return Err(EnumerationError::DepthTooSmall(self.integrality_depth));
        }
        if let Filter::C1c2InRange(lo, hi) = &self.filter {
            if lo > hi {
                return Err(EnumerationError::EmptyRange {
                    lo: lo.clone(),
                    hi: hi.clone(),
                });
            }
        }
        Ok(())
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::reid_rr::{IndexMultiset, EMPTY_SYMBOL};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("cannot parse Du Val term `{0}` (expected `kA_n` or `A_n`)")]
    Syntax(String),
    #[error("A_n needs n >= 1, got `{0}`")]
    BadRank(String),
    #[error("zero multiplicity in `{0}`")]
    ZeroMultiplicity(String),
}

/// Du Val singularities of type `A_n` on a surface, as ascending
/// `(n, multiplicity)` pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingularityProfile {
    entries: Vec<(u32, u32)>,
}

impl SingularityProfile {
    pub fn from_counts(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (n, k) in pairs {
            assert!(n >= 1 && k >= 1, "A_n needs n >= 1 and positive multiplicity");
            *map.entry(n).or_insert(0u32) += k;
        }
        Self {
            entries: map.into_iter().collect(),
        }
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of singular points, with multiplicity.
    pub fn len(&self) -> usize {
        self.entries.iter().map(|&(_, k)| k as usize).sum()
    }

    /// Each multiplicity halved; `None` if some singularity is not in couples.
    pub fn halved(&self) -> Option<Self> {
        self.entries
            .iter()
            .map(|&(n, k)| (k % 2 == 0).then_some((n, k / 2)))
            .collect::<Option<Vec<_>>>()
            .map(|entries| Self { entries })
    }
}

/// Each `A_n` point of the quotient surface contributes two cyclic quotient
/// points of index `n + 1` on the 3-fold.
pub fn indices_from_profile(profile: &SingularityProfile) -> IndexMultiset {
    IndexMultiset::from_counts(profile.entries.iter().map(|&(n, k)| (n + 1, 2 * k)))
        .expect("n + 1 >= 2 and 2k >= 2")
}

impl fmt::Display for SingularityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str(EMPTY_SYMBOL);
        }
        for (i, (n, k)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if *k > 1 {
                write!(f, "{k}")?;
            }
            write!(f, "A_{n}")?;
        }
        Ok(())
    }
}

impl FromStr for SingularityProfile {
    type Err = ProfileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == EMPTY_SYMBOL {
            return Ok(Self::default());
        }
        let mut pairs = Vec::new();
        for term in s.split(',') {
            let term = term.trim();
            let (k, n) = term
                .split_once("A_")
                .ok_or_else(|| ProfileError::Syntax(term.to_string()))?;
            let k: u32 = if k.is_empty() {
                1
            } else {
                k.parse().map_err(|_| ProfileError::Syntax(term.to_string()))?
            };
            if k == 0 {
                return Err(ProfileError::ZeroMultiplicity(term.to_string()));
            }
            let n: u32 = n.parse().map_err(|_| ProfileError::Syntax(term.to_string()))?;
            if n == 0 {
                return Err(ProfileError::BadRank(term.to_string()));
            }
            pairs.push((n, k));
        }
        Ok(Self::from_counts(pairs))
    }
}

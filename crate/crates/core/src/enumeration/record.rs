use std::cmp::Ordering;

use crate::rational::{int, Rational};
use crate::reid_rr::{c1c2_from_indices, l_value, Basket, IndexMultiset};

use super::integrality::exists_integral_basket;

/// One enumerated configuration: a row of the classification tables plus
/// the integral-basket witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernRecord {
    indices: IndexMultiset,
    chi0: i64,
    c1c2: Rational,
    weight: Rational,
    cartier_index: u64,
    witness: Option<Basket>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecordError {
    #[error("c1c2 = {0} is negative")]
    NegativeC1c2(Rational),
    #[error("c1c2 mismatch: stated {stated}, recomputed {computed}")]
    C1c2Mismatch { stated: Rational, computed: Rational },
    #[error("Cartier index mismatch: stated {stated}, recomputed {computed}")]
    CartierMismatch { stated: u64, computed: u64 },
    #[error("witness {0} does not project onto the record's multiset")]
    WitnessProjection(Basket),
    #[error("witness {witness} has non-integral l({m})")]
    WitnessNotIntegral { witness: Basket, m: u64 },
}

impl ChernRecord {
    /// Builds the record for `indices` at `chi0`, deciding integrality up to
    /// `depth`. `None` when `c1c2 < 0`.
    pub fn compute(indices: IndexMultiset, chi0: i64, depth: u32) -> Option<Self> {
        let c1c2 = c1c2_from_indices(&indices, chi0);
        if c1c2 < int(0) {
            return None;
        }
        let witness = exists_integral_basket(&indices, depth);
        Some(Self::assemble(indices, chi0, c1c2, witness))
    }

    fn assemble(indices: IndexMultiset, chi0: i64, c1c2: Rational, witness: Option<Basket>) -> Self {
        let weight = indices.weight();
        let cartier_index = indices.cartier_index();
        Self {
            indices,
            chi0,
            c1c2,
            weight,
            cartier_index,
            witness,
        }
    }

    /// Rebuilds a record from stated columns, checking every invariant
    /// against a fresh computation.
    pub fn from_parts(
        indices: IndexMultiset,
        chi0: i64,
        c1c2: Rational,
        cartier_index: u64,
        witness: Option<Basket>,
        depth: u32,
    ) -> Result<Self, RecordError> {
        let computed = c1c2_from_indices(&indices, chi0);
        if computed != c1c2 {
            return Err(RecordError::C1c2Mismatch {
                stated: c1c2,
                computed,
            });
        }
        if c1c2 < int(0) {
            return Err(RecordError::NegativeC1c2(c1c2));
        }
        let record = Self::assemble(indices, chi0, c1c2, witness);
        if record.cartier_index != cartier_index {
            return Err(RecordError::CartierMismatch {
                stated: cartier_index,
                computed: record.cartier_index,
            });
        }
        record.verify(depth)?;
        Ok(record)
    }

    /// Re-checks the witness from scratch through the Riemann–Roch formulas.
    pub fn verify(&self, depth: u32) -> Result<(), RecordError> {
        if let Some(w) = &self.witness {
            if w.indices() != self.indices {
                return Err(RecordError::WitnessProjection(w.clone()));
            }
            for m in 2..=u64::from(depth) {
                if !l_value(w, m).is_integer() {
                    return Err(RecordError::WitnessNotIntegral {
                        witness: w.clone(),
                        m,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn indices(&self) -> &IndexMultiset {
        &self.indices
    }

    pub fn chi0(&self) -> i64 {
        self.chi0
    }

    pub fn c1c2(&self) -> &Rational {
        &self.c1c2
    }

    /// `sum (r - 1/r)`.
    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    pub fn cartier_index(&self) -> u64 {
        self.cartier_index
    }

    pub fn has_integral_basket(&self) -> bool {
        self.witness.is_some()
    }

    pub fn witness(&self) -> Option<&Basket> {
        self.witness.as_ref()
    }

    /// Weight ascending, then lexicographic on the index sequence.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then_with(|| self.indices.cmp(&other.indices))
    }
}

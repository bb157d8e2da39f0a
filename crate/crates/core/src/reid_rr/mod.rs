//! Exact arithmetic core: baskets, index multisets, Reid's correction terms
//! and the Euler-characteristic identity.

mod basket;
mod formula;

pub use basket::{index_weight, Basket, BasketError, BasketPoint, IndexMultiset, EMPTY_SYMBOL};
pub use formula::{
    c1c2_from_indices, cartier_index, chi_minus_nk, correction_term, l_value, point_correction,
    residue, ChernContext,
};

pub(crate) use formula::correction_numerator;

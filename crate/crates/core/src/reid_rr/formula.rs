//! Riemann–Roch for multiples of `-K` on a terminal 3-fold, plus the
//! Euler-characteristic identity relating `chi(O_X)`, `c1·c2` and the
//! index multiset.
//!
//! For a basket `B = {(b_i, r_i)}` and `n >= 0`,
//!
//! ```text
//! chi(-nK) = n(n+1)(2n+1)/12 · (-K)^3 + (2n+1)·chi(O_X) - l(n+1)
//! l(m)     = sum_i sum_{j=1}^{m-1} jb_i~ (r_i - jb_i~) / (2 r_i)
//! ```
//!
//! where `jb~` is the least non-negative residue of `jb` mod `r`, and
//!
//! ```text
//! 24·chi(O_X) = c1·c2 + sum_{r in R} (r - 1/r).
//! ```

use num::bigint::BigInt;

use super::basket::{Basket, BasketPoint, IndexMultiset};
use crate::rational::{int, Rational};

/// The global data Riemann–Roch needs beyond the basket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernContext {
    /// `chi(O_X)`.
    pub chi0: i64,
    /// `(-K_X)^3`. Not checked against the Cartier index.
    pub anticanonical_cube: Rational,
}

impl ChernContext {
    pub fn new(chi0: i64, anticanonical_cube: Rational) -> Self {
        Self {
            chi0,
            anticanonical_cube,
        }
    }

    /// `(-K)^3 = 0`, the not-big case.
    pub fn not_big(chi0: i64) -> Self {
        Self::new(chi0, int(0))
    }
}

/// Least non-negative residue of `j·b` modulo `r`.
pub fn residue(j: u64, b: u64, r: u64) -> u64 {
    ((u128::from(j) * u128::from(b)) % u128::from(r)) as u64
}

/// The single summand `jb~ (r - jb~) / (2r)`. `b` need not be normalized.
pub fn correction_term(j: u64, b: u64, r: u64) -> Rational {
    let x = residue(j, b, r);
    Rational::new(BigInt::from(x * (r - x)), BigInt::from(2 * r))
}

/// Numerator over the denominator `2r` of `sum_{j=1}^{m-1} jb~ (r - jb~)`.
///
/// The summand is periodic in `j` with period `r`, and since `b` is a unit
/// mod `r` one full period sums to `r (r^2 - 1) / 6`.
pub(crate) fn correction_numerator(b: u32, r: u32, m: u64) -> u128 {
    let terms = m.saturating_sub(1);
    let r64 = u64::from(r);
    let periods = u128::from(terms / r64);
    let tail = terms % r64;
    let r128 = u128::from(r);
    let full = r128 * (r128 * r128 - 1) / 6;
    let partial: u128 = (1..=tail)
        .map(|j| {
            let x = u128::from(residue(j, u64::from(b), r64));
            x * (r128 - x)
        })
        .sum();
    periods * full + partial
}

/// Contribution of one basket point to `l(m)`. Zero for `m = 1`.
pub fn point_correction(point: BasketPoint, m: u64) -> Rational {
    assert!(m >= 1, "l(m) is defined for m >= 1");
    let numer = correction_numerator(point.b(), point.r(), m);
    Rational::new(BigInt::from(numer), BigInt::from(2 * u64::from(point.r())))
}

/// `l(m)` of a basket; `l(1) = 0`.
pub fn l_value(basket: &Basket, m: u64) -> Rational {
    basket
        .entries()
        .iter()
        .map(|&(p, k)| point_correction(p, m) * int(k.into()))
        .sum()
}

/// `chi(-nK_X)`; equals `chi(O_X)` at `n = 0`.
pub fn chi_minus_nk(basket: &Basket, ctx: &ChernContext, n: u64) -> Rational {
    let n_big = BigInt::from(n);
    let poly = &n_big * (&n_big + 1) * (2 * &n_big + 1);
    let cube_part = Rational::new(poly, BigInt::from(12)) * &ctx.anticanonical_cube;
    let chi_part = Rational::from_integer((2 * &n_big + 1) * BigInt::from(ctx.chi0));
    cube_part + chi_part - l_value(basket, n + 1)
}

/// `c1·c2 = 24·chi(O_X) - sum (r - 1/r)`. May be negative; callers filter.
pub fn c1c2_from_indices(indices: &IndexMultiset, chi0: i64) -> Rational {
    int(24) * int(chi0) - indices.weight()
}

/// Cartier index of `K_X`: the lcm of the local indices.
pub fn cartier_index(indices: &IndexMultiset) -> u64 {
    indices.cartier_index()
}

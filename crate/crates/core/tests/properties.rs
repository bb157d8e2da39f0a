mod common;

use num::integer::Integer;
use num::{One, Signed, Zero};
use proptest::prelude::*;

use orbifold_rr::enumeration::{
    enumerate_index_multisets, exists_integral_basket, ChernRecord, EnumerationQuery, Filter,
};
use orbifold_rr::quotient::{indices_from_profile, table4, table5, SingularityProfile};
use orbifold_rr::rational::{frac, int};
use orbifold_rr::reid_rr::{
    c1c2_from_indices, chi_minus_nk, correction_term, index_weight, l_value, ChernContext,
};
use orbifold_rr::Rational;

use common::{basket, indices};

fn reduced(x: &Rational) -> bool {
    x.denom().is_positive() && x.numer().gcd(x.denom()).is_one()
        && (!x.numer().is_zero() || x.denom().is_one())
}

proptest! {
    #[test]
    fn rationals_are_reduced(b in basket(), m in indices(), chi in 0i64..=2, n in 0u64..20) {
        let ctx = ChernContext::new(chi, frac(n as i64 + 1, 7));
        prop_assert!(reduced(&l_value(&b, n + 1)));
        prop_assert!(reduced(&chi_minus_nk(&b, &ctx, n)));
        prop_assert!(reduced(&c1c2_from_indices(&m, chi)));
        prop_assert!(reduced(&m.weight()));
    }

    #[test]
    fn first_term_symmetric(r in 2u64..200, b in 1u64..200) {
        let b = b % r;
        prop_assume!(b != 0 && b.gcd(&r) == 1);
        prop_assert_eq!(correction_term(1, b, r), correction_term(1, r - b, r));
        prop_assert_eq!(correction_term(1, b, r), frac((b * (r - b)) as i64, (2 * r) as i64));
    }

    #[test]
    fn appending_an_index_decreases_c1c2(m in indices(), r in 2u32..60, chi in 0i64..=2) {
        let drop = c1c2_from_indices(&m, chi) - c1c2_from_indices(&m.with(r, 1).unwrap(), chi);
        prop_assert_eq!(&drop, &(int(r.into()) - frac(1, r.into())));
        prop_assert!(drop >= frac(3, 2));
        prop_assert_eq!(drop, index_weight(r));
    }

    #[test]
    fn euler_roundtrip(m in indices(), chi in -3i64..=3) {
        prop_assert_eq!((c1c2_from_indices(&m, chi) + m.weight()) / int(24), int(chi));
    }

    #[test]
    fn chi_identity_when_not_big(b in basket(), chi in -3i64..=3, n in 0u64..40) {
        let ctx = ChernContext::not_big(chi);
        let lhs = int((2 * n as i64 + 1) * chi) - chi_minus_nk(&b, &ctx, n);
        prop_assert_eq!(lhs, l_value(&b, n + 1));
    }

    #[test]
    fn l2_bounds(b in basket()) {
        let l2 = l_value(&b, 2);
        let ceiling: u32 = b.iter().map(|p| p.r()).sum();
        prop_assert!(l2 >= int(0));
        prop_assert!(l2 <= frac(ceiling.into(), 8));
    }

    #[test]
    fn witnesses_reverify(m in indices(), depth in 2u32..=3) {
        if let Some(w) = exists_integral_basket(&m, depth) {
            prop_assert_eq!(w.indices(), m.clone());
            for k in 2..=depth {
                prop_assert!(l_value(&w, k.into()).is_integer());
            }
        }
        if let Some(rec) = ChernRecord::compute(m, 1, depth) {
            prop_assert!(rec.verify(depth).is_ok());
        }
    }

    #[test]
    fn deeper_filter_is_stricter(m in indices()) {
        if exists_integral_basket(&m, 3).is_some() {
            prop_assert!(exists_integral_basket(&m, 2).is_some());
        }
    }

    #[test]
    fn profiles_give_even_multiplicities(pairs in prop::collection::vec((1u32..10, 1u32..5), 0..5)) {
        let profile = SingularityProfile::from_counts(pairs);
        let m = indices_from_profile(&profile);
        prop_assert!(m.entries().iter().all(|&(_, k)| k % 2 == 0));
        prop_assert_eq!(m.len(), 2 * profile.len());
        prop_assert!(m.halved().is_some());
    }
}

#[test]
fn filter_monotonicity_at_chi_one() {
    let all = enumerate_index_multisets(&EnumerationQuery::new(1)).unwrap();
    let ids = |recs: &[ChernRecord]| -> Vec<String> {
        recs.iter().map(|r| r.indices().to_string()).collect()
    };
    let all_ids = ids(&all);
    let mut prev = all_ids.clone();
    for depth in 2..=4 {
        let q = EnumerationQuery::new(1).filter(Filter::IntegralBasket).depth(depth);
        let cur = ids(&enumerate_index_multisets(&q).unwrap());
        assert!(cur.iter().all(|m| prev.contains(m)), "depth {depth}");
        prev = cur;
    }
    assert!(all.iter().all(|r| r.c1c2() >= &int(0)));
}

#[test]
fn indices_never_exceed_the_budget() {
    for chi in 0..=2 {
        let recs = enumerate_index_multisets(&EnumerationQuery::new(chi).include_empty(true)).unwrap();
        for r in &recs {
            if let Some(max) = r.indices().iter().max() {
                assert!(index_weight(max) <= int(24 * chi));
            }
            assert!(r.indices().weight() <= int(24 * chi));
        }
        if chi > 0 {
            let top = (2u32..).take_while(|&r| index_weight(r) <= int(24 * chi)).last().unwrap();
            assert!(recs.iter().any(|r| r.indices().iter().eq([top])), "chi {chi}");
        }
    }
}

#[test]
fn quotient_index_weight_fits_k3_budget() {
    for row in table4().iter().chain(&table5()) {
        assert!(row.expected_indices.weight() <= int(48), "#{}", row.number);
        assert_eq!(indices_from_profile(&row.profile), row.expected_indices, "#{}", row.number);
    }
}

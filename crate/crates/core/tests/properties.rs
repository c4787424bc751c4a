use kappa_ads::hopf::{Basis, Family, HopfData};
use kappa_ads::pbw::Poly;
use kappa_ads::qgroup;
use kappa_ads::scalars::Var;
use kappa_ads::Series;
use proptest::prelude::*;

const ORDER: i32 = 4;

/// A truncated series from `(coefficient, z, theta, s)` terms.
fn series(terms: &[(i64, u8, u8, u8)]) -> Series {
    let mut out = Series::from_int(0).truncate(ORDER);
    for &(c, a, b, s) in terms {
        let mut t = Series::from_int(c);
        for (v, k) in [(Var::Z, a), (Var::Theta, b), (Var::S, s)] {
            for _ in 0..k {
                t = t.mul_ref(&Series::var(v));
            }
        }
        out = out.add_ref(&t.truncate(ORDER));
    }
    out
}

fn arb_series() -> impl Strategy<Value = Series> {
    prop::collection::vec((-5i64..=5, 0u8..3, 0u8..3, 0u8..3), 0..5).prop_map(|t| series(&t))
}

proptest! {
    #[test]
    fn series_addition_is_an_abelian_group(a in arb_series(), b in arb_series(), c in arb_series()) {
        prop_assert_eq!(a.add_ref(&b).add_ref(&c), a.add_ref(&b.add_ref(&c)));
        prop_assert_eq!(a.add_ref(&b), b.add_ref(&a));
        prop_assert!(a.sub_ref(&a).is_zero());
    }

    #[test]
    fn series_multiplication_is_commutative_associative_distributive(
        a in arb_series(), b in arb_series(), c in arb_series()
    ) {
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&Series::from_int(1)), a.clone());
    }

    #[test]
    fn truncation_is_a_ring_map(a in arb_series(), b in arb_series()) {
        let t = |x: &Series| x.truncate(2);
        prop_assert_eq!(t(&a.mul_ref(&b)), t(&t(&a).mul_ref(&t(&b))));
        prop_assert_eq!(t(&a.add_ref(&b)), t(&a).add_ref(&t(&b)));
    }
}

fn bicross() -> &'static HopfData {
    use std::sync::OnceLock;
    static H: OnceLock<HopfData> = OnceLock::new();
    H.get_or_init(|| HopfData::build(Basis::Bicross, Family::AdS, 3).expect("bicross data"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pbw_normal_form_is_independent_of_rewriting_order(
        w in prop::collection::vec(0usize..6, 0..5),
        picks in prop::collection::vec(any::<usize>(), 64),
    ) {
        let alg = &bicross().alg;
        let memo = alg.word(&w).unwrap();
        let mut k = 0;
        let naive = alg.word_by_strategy(&w, |_| { k += 1; picks[k % picks.len()] }).unwrap();
        prop_assert!(memo.sub(&naive).is_zero(), "{:?} vs {:?}", memo, naive);
    }

    #[test]
    fn pbw_product_is_associative(
        u in prop::collection::vec(0usize..6, 1..3),
        v in prop::collection::vec(0usize..6, 1..3),
        w in prop::collection::vec(0usize..6, 1..3),
    ) {
        let alg = &bicross().alg;
        let (pu, pv, pw) = (alg.word(&u).unwrap(), alg.word(&v).unwrap(), alg.word(&w).unwrap());
        let left = alg.mul(&alg.mul(&pu, &pv).unwrap(), &pw).unwrap();
        let right = alg.mul(&pu, &alg.mul(&pv, &pw).unwrap()).unwrap();
        prop_assert!(left.sub(&right).is_zero());
        let mut uvw = u.clone();
        uvw.extend(&v);
        uvw.extend(&w);
        prop_assert!(alg.word(&uvw).unwrap().sub(&right).is_zero());
    }

    #[test]
    fn quantum_words_reorder_confluently(
        w in prop::collection::vec(0usize..8, 0..7),
        picks in prop::collection::vec(any::<usize>(), 64),
    ) {
        let alg = qgroup::two_copy().unwrap();
        let mut k = 0;
        let naive = alg.word_by_strategy(&w, |_| { k += 1; picks[k % picks.len()] }).unwrap();
        prop_assert_eq!(alg.word(&w).unwrap(), naive);
    }

    #[test]
    fn generators_commute_with_the_unit(g in 0usize..6) {
        let alg = &bicross().alg;
        let x = Poly::gen(g);
        prop_assert!(alg.commutator(&x, &Poly::one()).unwrap().is_zero());
    }
}

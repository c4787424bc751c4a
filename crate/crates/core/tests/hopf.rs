use kappa_ads::hopf::{
    build_twist, check_casimirs, check_cocycle, check_hopf, check_twisted_coproduct, poincare_limit, twist_conjugate,
    twist_from, verify_qa, Basis, Family, HopfData,
};
use kappa_ads::report::{all_pass, failures};

#[test]
fn twisted_coproducts_match_closed_forms_at_order_four() {
    for basis in Basis::ALL {
        let h = HopfData::build(basis, Family::AdS, 4).unwrap();
        let checks = check_twisted_coproduct(&h).unwrap();
        assert!(all_pass(&checks), "{}", failures(&checks));
    }
}

#[test]
fn hopf_axioms_at_order_four() {
    for basis in Basis::ALL {
        let h = HopfData::build(basis, Family::AdS, 4).unwrap();
        let checks = check_hopf(&h, &h.delta, 3).unwrap();
        assert!(all_pass(&checks), "{}", failures(&checks));
        let tw = build_twist(&h).unwrap();
        let twisted = twist_conjugate(&h.delta, &tw, &h.alg).unwrap();
        let checks = check_hopf(&h, &twisted, 3).unwrap();
        assert!(all_pass(&checks), "{}", failures(&checks));
    }
}

#[test]
fn broken_coproduct_is_detected() {
    let h = HopfData::build(Basis::Symmetrical, Family::AdS, 3).unwrap();
    let mut bad = h.delta.clone();
    bad.images[4] = h
        .eval_tensor("exp(-z/2*P0)*cosh(z/2*eta*J)@K1 + K1@exp(z/2*P0)*cosh(z/2*eta*J) + exp(-z/2*P0)*sinh(z/2*eta*J)/eta@P2 + P2@exp(z/2*P0)*sinh(z/2*eta*J)/eta")
        .unwrap();
    let checks = check_hopf(&h, &bad, 3).unwrap();
    assert!(!all_pass(&checks));
}

#[test]
fn twist_satisfies_cocycle_condition() {
    for basis in Basis::ALL {
        let h = HopfData::build(basis, Family::AdS, 3).unwrap();
        let checks = check_cocycle(&h, &build_twist(&h).unwrap()).unwrap();
        assert!(all_pass(&checks), "{}", failures(&checks));
    }
    let h = HopfData::build(Basis::Symmetrical, Family::AdS, 3).unwrap();
    let bad = twist_from(&h, "exp(-theta*K1@P0)", "exp(theta*K1@P0)").unwrap();
    assert!(!all_pass(&check_cocycle(&h, &bad).unwrap()));
}

#[test]
fn casimirs_are_central() {
    for basis in Basis::ALL {
        for family in [Family::AdS, Family::Poincare] {
            let h = HopfData::build(basis, family, 4).unwrap();
            let checks = check_casimirs(&h).unwrap();
            assert!(all_pass(&checks), "{}", failures(&checks));
        }
    }
}

#[test]
fn nonlinear_map_intertwines_bases() {
    let sym = HopfData::build(Basis::Symmetrical, Family::AdS, 3).unwrap();
    let bic = HopfData::build(Basis::Bicross, Family::AdS, 3).unwrap();
    let checks = verify_qa(&sym, &bic).unwrap();
    assert!(all_pass(&checks), "{}", failures(&checks));
}

#[test]
fn flat_limit_matches_poincare_data() {
    for basis in Basis::ALL {
        let ads = HopfData::build(basis, Family::AdS, 3).unwrap();
        let flat = HopfData::build(basis, Family::Poincare, 3).unwrap();
        let checks = poincare_limit(&ads, &flat).unwrap();
        assert!(all_pass(&checks), "{}", failures(&checks));
        let checks = check_twisted_coproduct(&flat).unwrap();
        assert!(all_pass(&checks), "{}", failures(&checks));
    }
    let sym = HopfData::build(Basis::Symmetrical, Family::Poincare, 3).unwrap();
    let bic = HopfData::build(Basis::Bicross, Family::Poincare, 3).unwrap();
    let checks = verify_qa(&sym, &bic).unwrap();
    assert!(all_pass(&checks), "{}", failures(&checks));
}

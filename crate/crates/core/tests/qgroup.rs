use kappa_ads::qgroup::{
    check_det, check_matrix_coproduct, check_twisted_sl2, confluence_random, diamonds, expand, one_copy,
    one_copy_table, semiclassical, sl2_fields_and_sklyanin, two_copy, two_copy_sklyanin, two_copy_table, two_copy_with,
    twisted_sl2_hopf_check, TwistedSl2, CROSSED, TWISTED_SL2_COPRODUCT,
};
use kappa_ads::report::{all_pass, failures};

#[test]
fn rewriting_is_confluent() {
    let one = one_copy().unwrap();
    let two = two_copy().unwrap();
    let checks = vec![
        confluence_random(&one, 1, 200, 6).unwrap(),
        confluence_random(&two, 2, 200, 6).unwrap(),
        diamonds(&one).unwrap(),
        diamonds(&two).unwrap(),
    ];
    assert!(all_pass(&checks), "{}", failures(&checks));
}

#[test]
fn known_reorderings() {
    assert_eq!(expand("b a").unwrap(), "q*a*b");
    assert_eq!(expand("a2 b1").unwrap(), "qd*b1*a2");
    assert_eq!(expand("a2 c1").unwrap(), "qd^-1*c1*a2");
    assert_eq!(expand("b1 a1 d2^2").unwrap(), "qa*a1*b1*d2^2");
}

#[test]
fn inconsistent_crossed_relation_breaks_confluence() {
    let mut bad = CROSSED;
    // a2 b1 -> b1 a2 with no q-factor, against the copy relations.
    bad[1].2 = 0;
    let alg = two_copy_with(&bad).unwrap();
    let det = check_det(&alg).unwrap();
    let hom = check_matrix_coproduct(&alg).unwrap();
    assert!(!all_pass(&det));
    assert!(!all_pass(&hom));
    assert!(!diamonds(&alg).unwrap().passed());
}

#[test]
fn quantum_determinant_is_central() {
    for checks in [check_det(&one_copy().unwrap()).unwrap(), check_det(&two_copy().unwrap()).unwrap()] {
        assert!(all_pass(&checks), "{}", failures(&checks));
    }
}

#[test]
fn matrix_coproduct_is_an_algebra_map() {
    let one = check_matrix_coproduct(&one_copy().unwrap()).unwrap();
    let two = check_matrix_coproduct(&two_copy().unwrap()).unwrap();
    assert!(all_pass(&one), "{}", failures(&one));
    assert!(all_pass(&two), "{}", failures(&two));
}

#[test]
fn semiclassical_limit_matches_pl_tables() {
    let one = semiclassical(&one_copy().unwrap(), &one_copy_table()).unwrap();
    let two = semiclassical(&two_copy().unwrap(), &two_copy_table()).unwrap();
    assert_eq!(one.len(), 6);
    assert_eq!(two.len(), 28);
    assert!(all_pass(&one), "{}", failures(&one));
    assert!(all_pass(&two), "{}", failures(&two));
}

#[test]
fn semiclassical_detects_a_sign_error() {
    let mut table = two_copy_table();
    let e = table.iter_mut().find(|e| e.u == "a1" && e.v == "b2").unwrap();
    e.coef = -e.coef;
    let checks = semiclassical(&two_copy().unwrap(), &table).unwrap();
    assert!(!all_pass(&checks));
}

#[test]
fn sklyanin_tables() {
    let one = sl2_fields_and_sklyanin(0.7, 11, 100).unwrap();
    let two = two_copy_sklyanin(0.3, -0.45, 0.2, 12, 100).unwrap();
    assert!(all_pass(&one), "{}", failures(&one));
    assert!(all_pass(&two), "{}", failures(&two));
    assert_eq!(two.iter().filter(|c| c.id.starts_with("bracket.")).count(), 28);
}

#[test]
fn twisted_sl2_coproduct() {
    let checks = twisted_sl2_hopf_check(3).unwrap();
    assert!(all_pass(&checks), "{}", failures(&checks));
}

#[test]
fn wrong_twist_sign_is_detected() {
    let mut cop = TWISTED_SL2_COPRODUCT;
    cop[1] = "Jm1@exp((alpha*H1 - delta*H2)/2) + exp(-(alpha*H1 - delta*H2)/2)@Jm1";
    let checks = check_twisted_sl2(&TwistedSl2::build_with(2, &cop).unwrap()).unwrap();
    assert!(checks.iter().any(|c| c.id == "homomorphism.[Jp1,Jm1]" && !c.passed()));
}

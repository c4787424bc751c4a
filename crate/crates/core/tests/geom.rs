use kappa_ads::geom::{check_field_algebra, check_group, check_vector_fields, default_etas};
use kappa_ads::report::{all_pass, failures};

#[test]
fn vector_fields_match_oracle() {
    for eta in default_etas() {
        let checks = check_vector_fields(eta, 7, 100, 1e-6).unwrap();
        assert!(all_pass(&checks), "{}", failures(&checks));
    }
}

#[test]
fn group_layer() {
    for eta in default_etas() {
        let checks = check_group(eta, 11, 100, 1e-8).unwrap();
        assert!(all_pass(&checks), "{}", failures(&checks));
    }
}

#[test]
fn fields_represent_the_algebra() {
    for eta in default_etas() {
        let checks = check_field_algebra(eta, 3, 20, 1e-4).unwrap();
        assert!(all_pass(&checks), "{}", failures(&checks));
    }
}

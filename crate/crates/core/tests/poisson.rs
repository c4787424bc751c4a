use kappa_ads::geom::{default_etas, sample_points};
use kappa_ads::poisson::{
    ambient_quadratic, check_ambient_exact, check_linearization, check_spacetime, jacobi_numeric, pl_golden, rel_error, verify_pl_tables, PL_IDS,
    PoissonEvaluator, DEFAULT_THETA, DEFAULT_Z,
};
use kappa_ads::report::{all_pass, failures};

#[test]
fn closed_form_pl_brackets_match_sklyanin() {
    for eta in default_etas() {
        for theta in [DEFAULT_THETA, 0.0] {
            let e = PoissonEvaluator::new(DEFAULT_Z, theta, eta);
            let checks = verify_pl_tables(&e, 5, 100, 1e-8);
            assert_eq!(checks.len(), 15);
            assert!(all_pass(&checks), "eta={} theta={}\n{}", eta, theta, failures(&checks));
        }
    }
}

#[test]
fn poisson_jacobi_by_nested_differences() {
    for eta in default_etas() {
        let e = PoissonEvaluator::new(DEFAULT_Z, DEFAULT_THETA, eta);
        let checks = jacobi_numeric(&e, 9, 10, 1e-4).unwrap();
        assert!(all_pass(&checks), "{}", failures(&checks));
    }
}

#[test]
fn linearization_gives_dual_structure_constants() {
    for eta in default_etas() {
        let e = PoissonEvaluator::new(DEFAULT_Z, DEFAULT_THETA, eta);
        let checks = check_linearization(&e, 1e-6).unwrap();
        assert!(all_pass(&checks), "{}", failures(&checks));
    }
}

#[test]
fn ambient_brackets() {
    for eta in default_etas() {
        let e = PoissonEvaluator::new(DEFAULT_Z, DEFAULT_THETA, eta);
        let checks = ambient_quadratic(&e, 13, 50, 1e-8);
        assert!(all_pass(&checks), "{}", failures(&checks));
    }
    let checks = check_ambient_exact(6).unwrap();
    assert!(all_pass(&checks), "{}", failures(&checks));
}

#[test]
fn spacetime_algebra() {
    let checks = check_spacetime(10).unwrap();
    assert!(all_pass(&checks), "{}", failures(&checks));
}

#[test]
fn golden_table_is_sensitive_to_z() {
    let eta = default_etas()[0];
    let e = PoissonEvaluator::new(DEFAULT_Z, DEFAULT_THETA, eta);
    let p = sample_points(5, 1, 0.5)[0];
    let br = e.coordinate_brackets(&p);
    let worst = PL_IDS
        .iter()
        .enumerate()
        .map(|(k, (_, i, j))| rel_error(br[*i][*j], pl_golden(k, &p, DEFAULT_Z * 1.01, DEFAULT_THETA, eta)))
        .fold(0.0, f64::max);
    assert!(worst > 1e-4, "{}", worst);
}

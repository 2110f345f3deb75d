use subshift::lubin::{self, LubinFamily};
use subshift::numerics::{int, inv_pow2, rat};
use subshift::shift1d::{
    agler_sums_1d, backward_extension_1d, moments_from_weights, restrict, weights_from_measure,
    WeightSequence1D,
};
use subshift::shift2d::{
    commutativity_check, joint_hyponormality_window, path_independence_check, WeightDiagram,
    Window,
};
use subshift::{AtomicMeasure1D, Rational};

#[test]
fn one_variable_weights_and_moments() {
    let a = lubin::weights_a();
    let c = lubin::weights_c();
    assert_eq!(moments_from_weights(&a, 0), int(1));
    assert_eq!(moments_from_weights(&c, 1), rat(3, 8));
    for l in 1..20 {
        let expected = rat(2, 11) * inv_pow2(2 * l) + rat(1, 22) * inv_pow2(l) + rat(1, 44);
        assert_eq!(moments_from_weights(&a, l), expected);
    }
    let xi_a = lubin::xi_a();
    let got: Vec<Rational> = (0..3).map(|n| weights_from_measure(&xi_a, n).unwrap()).collect();
    assert_eq!(got, [rat(1, 11), rat(1, 2), rat(11, 16)]);
    for n in 0..20u32 {
        let p = 1i64 << n;
        assert_eq!(weights_from_measure(&lubin::xi_c(), n as u64).unwrap(), rat(2 * p + 1, 4 * p + 4));
        assert_eq!(weights_from_measure(&AtomicMeasure1D::dirac(int(1)), n as u64).unwrap(), int(1));
    }
    assert!(weights_from_measure(&AtomicMeasure1D::dirac(int(0)), 1).is_err());
}

#[test]
fn restriction_examples() {
    let c1 = restrict(&lubin::weights_c(), 1);
    assert_eq!(c1.squared_prefix(2), vec![rat(5, 12), rat(9, 20)]);
    let c = lubin::weights_c();
    assert_eq!(restrict(&c, 0).squared_prefix(10), c.squared_prefix(10));

    let xi_b = lubin::xi_b(&rat(1, 5)).unwrap();
    let shifted = WeightSequence1D::from_measure(&xi_b).unwrap().restrict(1);
    let direct = WeightSequence1D::from_measure(&xi_b.restrict_density(1).unwrap()).unwrap();
    assert_eq!(shifted.squared_prefix(15), direct.squared_prefix(15));
}

#[test]
fn unilateral_shift_has_zero_agler_sums() {
    let cert = agler_sums_1d(&WeightSequence1D::constant(int(1)), 15, 8);
    assert!(cert.passed());
}

#[test]
fn one_variable_backward_extension() {
    for m in 0..=50 {
        let xi = lubin::xi_c().restrict_density(m).unwrap();
        assert!(backward_extension_1d(&lubin::alpha_sq_column0(m), &xi).passed(), "m = {m}");
    }
    let cert = backward_extension_1d(&rat(1, 3), &AtomicMeasure1D::dirac(int(0)));
    assert!(!cert.passed());
    assert_eq!(cert.value("reciprocal_norm"), Some("inf"));
}

#[test]
fn lubin_diagram_is_consistent() {
    for x in [rat(1, 10), rat(2, 11), rat(1, 4)] {
        let family = LubinFamily::new(x.clone()).unwrap();
        let d = family.diagram();
        assert!(commutativity_check(&d, Window::square(12)).passed());
        for (k1, k2) in Window::square(12).points() {
            assert_eq!(d.moment(k1, k2), lubin::moment2d(k1, k2, &x), "({k1},{k2}) at x = {x}");
        }
    }
    let d = LubinFamily::new(rat(1, 5)).unwrap().diagram();
    for k in [(0, 0), (3, 3), (2, 5)] {
        assert!(path_independence_check(&d, k).passed(), "{k:?}");
    }
}

#[test]
fn column_thresholds_increase() {
    let cols: Vec<Rational> = (0..=64).map(lubin::column_threshold).collect();
    assert!(cols.windows(2).all(|w| w[0] < w[1]));
    assert!(cols.iter().all(|c| *c > lubin::threshold_t2() || *c == rat(8, 33)));
    assert_eq!(lubin::xi_b(&rat(1, 7)).unwrap().restrict_density(1).unwrap(), lubin::xi_b_l1());
}

#[test]
fn joint_hyponormality() {
    let sub = LubinFamily::new(rat(1, 10)).unwrap().diagram();
    let cert = joint_hyponormality_window(&sub, Window::square(6), 1e-9);
    assert!(cert.passed(), "{}", cert.to_json());

    let big = LubinFamily::new(rat(1, 2)).unwrap().diagram();
    assert!(!joint_hyponormality_window(&big, Window::square(8), 1e-9).passed());

    let c = lubin::weights_c();
    let a = lubin::weights_a();
    let tensor = WeightDiagram::tensor(move |k| c.squared_weight(k), move |k| a.squared_weight(k));
    assert!(joint_hyponormality_window(&tensor, Window::square(6), 1e-9).passed());
}

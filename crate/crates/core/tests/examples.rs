//! Published values for the registry families beyond the acceptance battery.

use ghsd::analysis::{lpm_order, sum_rule_order};
use ghsd::construct::bspline_mask;
use ghsd::jets::Jet;
use ghsd::polysub::{basis_samples, eigenpoly_check, pmu, poly_interp_check};
use ghsd::rational::{q, qi};
use ghsd::registry::find;
use ghsd::smoothness::{sm2, SmoothnessOptions};
use ghsd::splines::registry_spline;
use ghsd::{HermiteType, Mask, MultiIndex, Q};

fn instance(id: &str, params: &[(&str, Q)]) -> (Mask, HermiteType) {
    let ov: Vec<(String, Q)> = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    let i = find(id).unwrap().instantiate(&ov).unwrap();
    (i.mask, i.htype)
}

fn birkhoff(t: [Q; 4]) -> (Mask, HermiteType) {
    let [t1, t2, t3, t4] = t;
    instance("ex6.2a", &[("t1", t1), ("t2", t2), ("t3", t3), ("t4", t4)])
}

fn lagrange(t1: Q, t2: Q, t3: Q) -> (Mask, HermiteType) {
    instance("ex6.4a", &[("t1", t1), ("t2", t2), ("t3", t3)])
}

fn assert_sm2(mask: &Mask, want: f64, tol: f64) {
    let r = sm2(mask, &SmoothnessOptions::default()).unwrap();
    assert!(r.converged, "estimator did not settle: {r:?}");
    assert!((r.sm2 - want).abs() <= tol, "sm2 = {}, expected {want} ± {tol}", r.sm2);
}

fn sr_ten_point() -> (Mask, HermiteType) {
    birkhoff([q(91, 1024), q(-15, 64), q(-17, 512), q(-9, 64)])
}

#[test]
fn birkhoff_order_ten_point_smoothness() {
    let (mask, _) = sr_ten_point();
    assert_sm2(&mask, 2.53079, 0.01);
}

#[test]
fn birkhoff_order_ten_point_eigenpolynomials() {
    let (mask, _) = sr_ten_point();
    let filter = sum_rule_order(&mask, 12).unwrap().filter.unwrap();
    for deg in 0..=9 {
        let v = eigenpoly_check(&mask, &filter, &MultiIndex(vec![deg])).unwrap();
        assert!(v.ok, "degree {deg}: {:?}", v.witness);
    }
}

#[test]
fn interpolatory_birkhoff_order_eight_point() {
    let (mask, _) = instance("ex6.2c", &[("t1", q(-27, 256)), ("t2", q(33, 128)), ("t3", qi(0)), ("t4", qi(0))]);
    assert_eq!(sum_rule_order(&mask, 12).unwrap().order, 8);
    // Out-of-family values must leave the order below eight.
    let (other, _) = instance("ex6.2c", &[("t1", q(-27, 256)), ("t2", q(1, 4)), ("t3", qi(0)), ("t4", qi(0))]);
    assert!(sum_rule_order(&other, 12).unwrap().order < 8);
}

#[test]
fn interpolatory_birkhoff_order_eight_point_smoothness() {
    let (mask, _) = instance("ex6.2c", &[("t1", q(-27, 256)), ("t2", q(33, 128)), ("t3", qi(0)), ("t4", qi(0))]);
    assert_sm2(&mask, 0.02797, 0.01);
}

/// `t2 = (96 t1 − 3)/64`, `t3 = (32 t1 − 9)/(2048 t1 + 192)`.
fn lagrange_sr6(t1: Q) -> (Mask, HermiteType) {
    let t2 = (qi(96) * &t1 - qi(3)) / qi(64);
    let t3 = (qi(32) * &t1 - qi(9)) / (qi(2048) * &t1 + qi(192));
    lagrange(t1, t2, t3)
}

#[test]
fn lagrange_order_six_curve() {
    for t1 in [q(-3, 256), q(1, 7), q(5, 3), q(-1, 64)] {
        let (mask, _) = lagrange_sr6(t1.clone());
        let sr = sum_rule_order(&mask, 12).unwrap();
        assert!(sr.order >= 6, "t1 = {t1}: sr = {}", sr.order);
        let den = qi(2880) + qi(15360) * &t1;
        let printed = Jet::row_from_components(&[
            Jet::from_ixi(1, 5, &[(MultiIndex(vec![0]), qi(1)), (MultiIndex(vec![4]), (qi(9) - qi(32) * &t1) / (qi(5760) + qi(30720) * &t1))]),
            Jet::from_ixi(
                1,
                5,
                &[
                    (MultiIndex(vec![0]), qi(1)),
                    (MultiIndex(vec![1]), (qi(1440) + qi(7680) * &t1) / &den),
                    (MultiIndex(vec![2]), (qi(360) + qi(1920) * &t1) / &den),
                    (MultiIndex(vec![3]), (qi(60) + qi(320) * &t1) / &den),
                    (MultiIndex(vec![4]), (qi(12) - qi(96) * &t1) / &den),
                    (MultiIndex(vec![5]), (qi(3) - qi(64) * &t1) / &den),
                ],
            ),
        ]);
        assert!(sr.filter.unwrap().agrees_to(&printed, 5), "t1 = {t1}");
    }
}

#[test]
fn lagrange_order_six_point_smoothness() {
    let (mask, _) = lagrange(q(-3, 256), q(-33, 512), q(-25, 448));
    assert_eq!(sum_rule_order(&mask, 12).unwrap().order, 6);
    assert_sm2(&mask, 5.06179, 0.01);
}

#[test]
fn lagrange_order_seven_rational_point() {
    let (mask, _) = lagrange_sr6(q(-15, 32));
    assert_eq!(sum_rule_order(&mask, 12).unwrap().order, 7);
    assert_sm2(&mask, 1.66635, 0.01);
}

#[test]
fn lagrange_moments_at_least_four() {
    for t1 in [q(-3, 128), q(3, 64), q(1, 5)] {
        let (mask, htype) = lagrange(t1.clone(), qi(0), qi(0));
        assert!(lpm_order(&mask, &htype, 10).unwrap() >= 4, "t1 = {t1}");
    }
}

#[test]
fn polynomial_interpolation_stops_at_lpm() {
    // sr = 10 leaves room past lpm = 6.
    let (mask, htype) = sr_ten_point();
    assert_eq!(lpm_order(&mask, &htype, 12).unwrap(), 6);
    let filter = sum_rule_order(&mask, 12).unwrap().filter.unwrap();
    assert!(poly_interp_check(&mask, &htype, &filter, 5, 2).unwrap().ok);
    assert!(!poly_interp_check(&mask, &htype, &filter, 6, 2).unwrap().ok);
}

#[test]
fn bspline_sum_rules() {
    for n in 1..=6 {
        let mask = bspline_mask(n).unwrap();
        assert_eq!(sum_rule_order(&mask, 10).unwrap().order, n, "B_{n}");
    }
}

#[test]
fn birkhoff_spline_cascade_matches_closed_form() {
    let i = find("ex6.2b").unwrap().instantiate(&[]).unwrap();
    let phi = registry_spline("ex6.2b", &i.params).unwrap();
    // Scale the closed form so that the shifts reproduce constants.
    let filter = sum_rule_order(&i.mask, 12).unwrap().filter.unwrap();
    let p0 = pmu(&MultiIndex(vec![0]), &filter).unwrap();
    let mut c = qi(0);
    for k in -4i64..=4 {
        for (a, b) in p0.eval_int(&[k]).iter().zip(phi.eval(&[qi(-k)])) {
            c += a * b;
        }
    }
    let level = 8;
    let bs = basis_samples(&i.mask, &i.htype, level).unwrap();
    let to_f = |x: &Q| ghsd::rational::to_f64(x);
    let mut worst = 0f64;
    for (l, nu) in i.htype.lambda.iter().enumerate() {
        let dphi = phi.derivative(nu);
        for k in -(2 << level)..=(2 << level) {
            let x = vec![q(k, 1 << level)];
            let got = bs.at(l, &x).map(|v| v.to_vec()).unwrap_or_else(|| vec![qi(0); 2]);
            for (g, e) in got.iter().zip(dphi.eval(&x)) {
                worst = worst.max((to_f(g) - to_f(&(e / &c))).abs());
            }
        }
    }
    assert!(worst < 1e-3, "max deviation {worst:.3e}");
}

//! Randomized invariants over small exact inputs.

use ghsd::analysis::{matching_filter, sum_rule_order};
use ghsd::construct::{bspline_mask, hermite_convert, interpolant_to_mask, vectorize_mask};
use ghsd::io::{parse_mask, serialize_mask};
use ghsd::jets::{sequence_jet, Jet};
use ghsd::lattice::{cosets, up_to_degree};
use ghsd::normalform::build_normalizer;
use ghsd::poly::Poly;
use ghsd::polysub::{interpolation_relation, pmu, refine, subdivide_poly_at, VectorPolynomial};
use ghsd::rational::{pow2, q, qi};
use ghsd::registry::find;
use ghsd::seq::MatSeq;
use ghsd::smoothness::{autocorrelation, cascade_power, sq_norm, trace_sequence_exact, transfer_apply_exact};
use ghsd::splines::{bspline, example12_interpolant, refinement_residual};
use ghsd::analysis::interpolatory_check;
use ghsd::symmetry::symmetry_complete;
use ghsd::{HermiteType, Mask, MultiIndex, QMatrix, Q};
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(entry(), rows * cols).prop_map(move |v| QMatrix::from_fn(rows, cols, |i, j| v[i * cols + j].clone()))
}

/// Sequence with up to `len` terms in `[-2, 2]^dim`.
fn seq(dim: usize, rows: usize, cols: usize, len: usize) -> impl Strategy<Value = MatSeq> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, dim), matrix(rows, cols)), 1..=len)
        .prop_map(move |terms| MatSeq::from_entries(dim, rows, cols, terms))
}

fn nonzero_seq(dim: usize, rows: usize, cols: usize, len: usize) -> impl Strategy<Value = MatSeq> {
    seq(dim, rows, cols, len).prop_filter("non-empty", |s| !s.is_empty())
}

fn scalar(v: Q) -> QMatrix {
    QMatrix::from_rows(vec![vec![v]])
}

fn inst(id: &str) -> (Mask, HermiteType) {
    let i = find(id).unwrap().instantiate(&[]).unwrap();
    (i.mask, i.htype)
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn rational_reciprocal_is_exact(n in 1i64..10_000, d in 1i64..10_000, neg: bool) {
        let x = if neg { q(-n, d) } else { q(n, d) };
        prop_assert_eq!(&x * (qi(1) / &x), qi(1));
    }

    #[test]
    fn coset_supports_partition_the_mask(s in nonzero_seq(2, 1, 1, 10)) {
        let total: usize = cosets(2).iter().map(|g| s.coset(g).unwrap().len()).sum();
        prop_assert_eq!(total, s.len());
    }

    #[test]
    fn mask_json_round_trip(s in nonzero_seq(2, 2, 2, 6), t in (-4i64..=4, -4i64..=4)) {
        let mask = Mask::new(s).unwrap();
        let htype = HermiteType::new(
            vec![MultiIndex(vec![0, 0]), MultiIndex(vec![1, 0])],
            Some(vec![vec![qi(0), qi(0)], vec![q(t.0, 8), q(t.1, 8)]]),
        ).unwrap();
        let back = parse_mask(&serialize_mask(&mask, &htype)).unwrap();
        prop_assert_eq!(back.mask, mask);
        prop_assert_eq!(back.htype, htype);
    }

    #[test]
    fn jet_of_convolution_is_germ_product(
        u in seq(2, 2, 2, 4),
        v in seq(2, 2, 1, 4),
        order in 0u32..=4,
    ) {
        let lhs = sequence_jet(&u.convolve(&v), order, None);
        let rhs = sequence_jet(&u, order, None).product(&sequence_jet(&v, order, None)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn germ_product_is_associative_with_unit(
        a in seq(1, 2, 2, 4),
        b in seq(1, 2, 2, 4),
        c in seq(1, 2, 2, 4),
        order in 0u32..=4,
    ) {
        let (ja, jb, jc) = (sequence_jet(&a, order, None), sequence_jet(&b, order, None), sequence_jet(&c, order, None));
        let left = ja.product(&jb).unwrap().product(&jc).unwrap();
        let right = ja.product(&jb.product(&jc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let unit = Jet::dirac(1, order, 2);
        prop_assert_eq!(unit.product(&ja).unwrap(), ja.clone());
        prop_assert_eq!(ja.product(&unit).unwrap(), ja);
    }

    #[test]
    fn reciprocal_is_two_sided(s in seq(2, 1, 1, 5), order in 0u32..=4) {
        let j = sequence_jet(&s, order, None);
        prop_assume!(j.scalar(&MultiIndex::zero(2)) != qi(0));
        let inv = j.reciprocal(order).unwrap();
        let unit = Jet::dirac(2, order, 1);
        prop_assert_eq!(j.product(&inv).unwrap(), unit.clone());
        prop_assert_eq!(inv.product(&j).unwrap(), unit);
    }

    #[test]
    fn upsampling_scales_moments(s in seq(2, 1, 2, 5), order in 0u32..=4) {
        let up = sequence_jet(&s.upsample(2), order, None);
        let base = sequence_jet(&s, order, None);
        for mu in up_to_degree(2, order) {
            prop_assert_eq!(up.get(&mu).clone(), base.get(&mu).scale(&pow2(mu.abs() as i64)));
        }
    }

    #[test]
    fn registry_coset_form_of_sum_rules(idx in 0usize..16) {
        let rec = &ghsd::registry::examples()[idx];
        let (mask, _) = inst(rec.id);
        let sr = sum_rule_order(&mask, 6).unwrap();
        let s = sr.order.min(6);
        prop_assume!(s > 0);
        let filter = sr.filter.unwrap().truncate(s - 1);
        let d = mask.dim();
        // υ(2ξ) e^{-iγ·ξ} â^[γ](2ξ) = 2^{-d} υ(ξ) for every coset γ.
        let target = filter.scale(&pow2(-(d as i64)));
        for g in cosets(d) {
            let placed = mask.coset(&g).unwrap().upsample(2).shift(&g);
            let lhs = filter.dilate_pow2(1).product(&sequence_jet(&placed, s - 1, None)).unwrap();
            prop_assert!(lhs.agrees_to(&target, s - 1), "{} coset {:?}", rec.id, g);
        }
    }

    #[test]
    fn matching_filter_independent_of_cap(idx in 0usize..16, lo in 1u32..4) {
        let rec = &ghsd::registry::examples()[idx];
        let (mask, _) = inst(rec.id);
        let s = sum_rule_order(&mask, 6).unwrap().order.min(6);
        prop_assume!(s > lo);
        // Resonant masks have no unique filter past the resonance.
        let (Ok(a), Ok(b)) = (matching_filter(&mask, lo), matching_filter(&mask, s - 1)) else {
            return Ok(());
        };
        prop_assert!(a.agrees_to(&b, lo));
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn refinement_is_linear(
        u in seq(1, 1, 2, 4),
        v in seq(1, 1, 2, 4),
        alpha in entry(),
        beta in entry(),
    ) {
        let (mask, htype) = inst("ex6.2a");
        let combo = u.scale(&alpha).add(&v.scale(&beta));
        let ru = refine(&mask, &htype, &u, 3).unwrap();
        let rv = refine(&mask, &htype, &v, 3).unwrap();
        let rc = refine(&mask, &htype, &combo, 3).unwrap();
        for n in 0..=3 {
            prop_assert_eq!(rc[n].clone(), ru[n].scale(&alpha).add(&rv[n].scale(&beta)));
        }
    }

    #[test]
    fn interpolatory_relation_every_level(w0 in seq(1, 2, 2, 5), id in prop::sample::select(vec!["ex6.2c", "ex6.4a", "ex6.4b"])) {
        let (mask, htype) = inst(id);
        let levels = refine(&mask, &htype, &w0, 3).unwrap();
        for n in 1..=3 {
            prop_assert_eq!(interpolation_relation(&htype, &levels[n - 1], &levels[n]).unwrap(), None);
        }
    }

    #[test]
    fn subdivision_commutes_with_shifts(
        coeffs in prop::collection::vec(entry(), 6),
        t in (-3i64..=3, -3i64..=3),
        j in (-4i64..=4, -4i64..=4),
    ) {
        let (mask, _) = inst("ex6.5a");
        let r = mask.r();
        let monos = up_to_degree(2, 2);
        let comps = (0..r)
            .map(|l| {
                let mut p = Poly::zero(2);
                for (mu, c) in monos.iter().zip(coeffs.iter().cycle().skip(l)) {
                    p.add_term(mu.clone(), c.clone());
                }
                p
            })
            .collect();
        let p = VectorPolynomial::new(2, comps);
        let tt = [t.0, t.1];
        let jj = [j.0, j.1];
        let lhs = subdivide_poly_at(&mask, &p.translate(&tt), &jj);
        let rhs = subdivide_poly_at(&mask, &p, &[j.0 - 2 * t.0, j.1 - 2 * t.1]);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normalizer_inverts_and_normalizes(s in seq(1, 1, 3, 4), c0 in (1i64..=5, 1i64..=5), m in 1u32..=3) {
        let mut u = s;
        u.add_at(vec![0], &QMatrix::from_rows(vec![vec![q(c0.0, c0.1), qi(0), qi(0)]]));
        let j = sequence_jet(&u, m, None);
        prop_assume!(j.get(&MultiIndex::zero(1))[(0, 0)] != qi(0));
        let big = build_normalizer(&j, m).unwrap();
        prop_assert!(big.is_strongly_invertible());
        let prod = j.product(&sequence_jet(&big.u, m, None)).unwrap();
        prop_assert!(!prod.entry(0, 0).vanishes_to(0));
        for l in 1..3 {
            prop_assert!(prod.entry(0, l).vanishes_to(m));
        }
    }

    #[test]
    fn spline_reproduces_polynomials(xn in -64i64..=64, pick in 0usize..6) {
        let cases: [(&str, Option<u32>); 6] =
            [("ex6.2b", None), ("ex6.3b", None), ("ex6.4c", None), ("ex6.4d", None), ("", Some(3)), ("", Some(5))];
        let (id, n) = cases[pick];
        let (phi, mask) = match n {
            Some(n) => (ghsd::splines::SplineVector::univariate(vec![bspline(n)]), bspline_mask(n).unwrap()),
            None => {
                let i = find(id).unwrap().instantiate(&[]).unwrap();
                (ghsd::splines::registry_spline(id, &i.params).unwrap(), i.mask)
            }
        };
        let sr = sum_rule_order(&mask, 8).unwrap();
        let filter = sr.filter.unwrap();
        // Splines are refinable up to scale; fix it by the degree-zero sum.
        let sum = |x: &Q, deg: u32| {
            let p = pmu(&MultiIndex(vec![deg]), &filter).unwrap();
            let mut acc = qi(0);
            for k in -12i64..=12 {
                let vals = phi.eval(&[x - qi(k)]);
                for (a, b) in p.eval_int(&[k]).iter().zip(vals.iter()) {
                    acc += a * b;
                }
            }
            acc
        };
        let x = q(xn, 16);
        let c = sum(&qi(0), 0);
        prop_assert!(c != qi(0));
        for deg in 0..sr.order.min(8) {
            let expect = ghsd::rational::powi(&x, deg as i64) / MultiIndex(vec![deg]).factorial();
            prop_assert_eq!(sum(&x, deg) / &c, expect, "{} degree {}", if id.is_empty() { "bspline" } else { id }, deg);
        }
    }

    #[test]
    fn transfer_trace_matches_direct_norm(coeffs in prop::collection::vec(1i64..=6, 2..=4), gap in 1usize..=2) {
        // Positive scalar mask summing to one and a difference operator.
        let total: i64 = coeffs.iter().sum();
        let mask = Mask::from_entries(1, 1, coeffs.iter().enumerate().map(|(k, c)| (vec![k as i64], scalar(q(*c, total))))).unwrap();
        let mut u = MatSeq::new(1, 1, 1);
        u.insert(vec![0], scalar(qi(1)));
        u.insert(vec![gap as i64], scalar(qi(-1)));
        let traces = trace_sequence_exact(&mask, &u, 4);
        for (n, t) in (1..=4u32).zip(traces) {
            let direct = sq_norm(&cascade_power(&mask, n).convolve(&u));
            prop_assert_eq!(t * pow2(-(n as i64)), direct, "level {}", n);
        }
    }
}

#[test]
fn transfer_support_box_is_invariant() {
    for id in ["ex6.2a", "ex6.3a", "ex6.4a", "ex6.5a", "ex6.6b"] {
        let (mask, _) = inst(id);
        let (lo, hi) = mask.bounds().unwrap();
        let w = (0..mask.dim()).map(|i| hi[i] - lo[i]).max().unwrap();
        let inside = |f: &MatSeq| f.support().all(|k| k.iter().all(|x| x.abs() <= w));
        let mut f = autocorrelation(&MatSeq::delta(mask.dim(), mask.r()));
        let mut boxes = Vec::new();
        for _ in 0..8 {
            f = transfer_apply_exact(&mask, &f);
            assert!(inside(&f), "{id}");
            boxes.push(f.bounds().unwrap());
        }
        // Support radius grows as L -> floor((L + w) / 2) and settles at w - 1.
        let settle = (1..).find(|&n| (w - 1) >> n == 0).unwrap() + 1;
        assert!(boxes[settle..].windows(2).all(|p| p[0] == p[1]), "{id}: {boxes:?}");
    }
}

#[test]
fn lpm_never_exceeds_sum_rules() {
    for rec in ghsd::registry::examples() {
        let (mask, htype) = inst(rec.id);
        let sr = sum_rule_order(&mask, 10).unwrap().order;
        let lpm = ghsd::analysis::lpm_order(&mask, &htype, 10).unwrap();
        assert!(lpm <= sr, "{}: lpm {lpm} > sr {sr}", rec.id);
    }
}

#[test]
fn interpolatory_registry_masks_are_hermite() {
    for rec in ghsd::registry::examples() {
        let (mask, htype) = inst(rec.id);
        // Types without an admissible coset map are never interpolatory.
        if !interpolatory_check(&mask, &htype).unwrap_or(false) {
            continue;
        }
        let sr = sum_rule_order(&mask, 10).unwrap().order;
        if sr > htype.max_order() {
            let v = ghsd::analysis::is_generalized_hermite(&mask, &htype, 10).unwrap();
            assert!(v.ok, "{}", rec.id);
        }
    }
}

#[test]
fn symmetry_completion_of_representatives_is_identity() {
    for rec in ghsd::registry::examples() {
        let i = rec.instantiate(&[]).unwrap();
        let Some(sym) = &i.symmetry else { continue };
        let reps = i.mask.restrict(|k| {
            sym.elements.iter().all(|(e, _)| sym.image(e, k).map(|img| &img >= k).unwrap_or(false))
        });
        assert_eq!(symmetry_complete(&reps, sym).unwrap(), i.mask, "{}", rec.id);
    }
}

#[test]
fn transform_and_vectorize_preserve_sum_rules() {
    for n in 2..=4 {
        let a = bspline_mask(n).unwrap();
        let sr = sum_rule_order(&a, 10).unwrap().order;
        let nm = QMatrix::from_rows(vec![vec![qi(2)]]);
        let v = vectorize_mask(&a, &nm).unwrap();
        assert_eq!(sum_rule_order(&v.mask, 10).unwrap().order, sr, "vectorized B_{n}");
        let h = hermite_convert(&a, &HermiteType::scalar(1)).unwrap();
        assert_eq!(sum_rule_order(&h, 10).unwrap().order, sr);
    }
}

#[test]
fn spline_interpolants_become_interpolatory_masks() {
    for (m, n) in [(1, 1), (2, 1), (1, 2)] {
        let (phi, htype) = example12_interpolant(m, n);
        let mask = interpolant_to_mask(&phi, &htype).unwrap();
        assert!(interpolatory_check(&mask, &htype).unwrap(), "m={m} n={n}");
        assert!(refinement_residual(&phi, &mask).unwrap().is_zero(), "m={m} n={n}");
    }
}

#[test]
fn bspline_refinement_residual_vanishes() {
    for n in 1..=6 {
        let phi = ghsd::splines::SplineVector::univariate(vec![bspline(n)]);
        let res = refinement_residual(&phi, &bspline_mask(n).unwrap()).unwrap();
        assert!(res.is_zero(), "B_{n}: {}", res.max_abs);
    }
}

#[test]
fn bivariate_existence_mask_has_its_type() {
    let htype = HermiteType::zero_shift(&[&[0, 0], &[1, 0], &[0, 1]]);
    let mask = ghsd::construct::existence_pipeline(&htype).unwrap();
    let v = ghsd::analysis::is_generalized_hermite(&mask, &htype, 6).unwrap();
    assert!(v.ok);
    assert_eq!(v.sr_order, 3);
}

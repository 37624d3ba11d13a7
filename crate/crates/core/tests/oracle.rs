mod common;

use std::sync::Arc;

use common::Raw;
use gunc::deciders::{check_witness, decide, Property};
use gunc::ideal::jacobson_radical;
use gunc::spec::{load, Builder, ElemRef, RingExpr, RingSpecDocument};
use gunc::{Caps, GradedRing};
use proptest::prelude::*;

fn zmod(n: usize) -> RingExpr {
    RingExpr::Zmod { n }
}

fn cyclic(k: usize) -> Option<gunc::spec::GroupSpec> {
    Some(gunc::spec::GroupSpec::Cyclic { order: k })
}

fn build(doc: RingSpecDocument) -> Arc<GradedRing> {
    Builder::new(Caps::default()).build(&doc).unwrap()
}

/// `M_n` or `T_n` over `Z_m`, graded over `C_k` by the given degrees.
fn matrix_doc(m: usize, k: usize, sigma: &[usize], full: bool) -> RingSpecDocument {
    let over = zmod(m).boxed();
    let sigma = Some(sigma.iter().map(|&d| ElemRef::Index(d)).collect());
    let ring = if full { RingExpr::Matrix { over, n: None, sigma } } else { RingExpr::Triangular { over, n: None, sigma } };
    RingSpecDocument::new(cyclic(k), ring)
}

fn small_graded_ring() -> impl Strategy<Value = RingSpecDocument> {
    let two = (2usize..=4, 2usize..=3, prop::collection::vec(0usize..3, 2), any::<bool>())
        .prop_map(|(m, k, s, full)| matrix_doc(m, k, &s.iter().map(|d| d % k).collect::<Vec<_>>(), full));
    let three = (prop::collection::vec(0usize..2, 3),).prop_map(|(s,)| matrix_doc(2, 2, &s, false));
    let group_ring = (2usize..=6, 2usize..=3).prop_map(|(n, k)| {
        RingSpecDocument::new(cyclic(k), RingExpr::Groupring { over: zmod(n).boxed() })
    });
    prop_oneof![two, three, group_ring]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tables_satisfy_the_ring_axioms(doc in small_graded_ring()) {
        let r = Raw::new(&build(doc));
        let n = r.n;
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(r.add[a][b], r.add[b][a]);
                for c in (0..n).step_by(1 + n / 16) {
                    prop_assert_eq!(r.mul[r.mul[a][b]][c], r.mul[a][r.mul[b][c]]);
                    prop_assert_eq!(r.mul[a][r.add[b][c]], r.add[r.mul[a][b]][r.mul[a][c]]);
                    prop_assert_eq!(r.mul[r.add[a][b]][c], r.add[r.mul[a][c]][r.mul[b][c]]);
                }
            }
        }
    }

    #[test]
    fn components_multiply_by_degree(doc in small_graded_ring()) {
        let g = build(doc);
        let r = Raw::new(&g);
        let group = g.group();
        for a in group.elements() {
            for b in group.elements() {
                for &x in &r.comps[a] {
                    for &y in &r.comps[b] {
                        prop_assert!(r.in_comp(group.mul(a, b), r.mul[x][y]));
                    }
                }
            }
        }
    }

    #[test]
    fn deciders_agree_with_the_definitions(doc in small_graded_ring()) {
        let g = build(doc);
        let r = Raw::new(&g);
        let unc = decide(&g, Property::GradedUNilClean, false);
        prop_assert_eq!(unc.holds, r.is_graded_unc());
        prop_assert_eq!(unc.counterexample, r.unc_failure());
        let nil_good = decide(&g, Property::GradedNilGood, false);
        let oracle = r.homogeneous().into_iter().find(|&x| !r.is_nil_good_element(x));
        prop_assert_eq!(nil_good.counterexample, oracle);
        for w in unc.witnesses.iter().chain(&nil_good.witnesses) {
            prop_assert_eq!(w.degree, r.degree(w.x));
        }
    }

    #[test]
    fn witnesses_survive_revalidation(doc in small_graded_ring()) {
        let g = build(doc);
        for p in [Property::GradedUNilClean, Property::GradedNilGood, Property::UNilClean] {
            let v = decide(&g, p, false);
            let view = if p.is_graded() { (*g).clone() } else { GradedRing::trivial(g.ring_arc().clone(), gunc::FiniteGroup::trivial()) };
            for w in &v.witnesses {
                prop_assert!(check_witness(&view, p, false, w).is_ok());
            }
        }
    }

    #[test]
    fn radical_by_quasi_regularity(doc in small_graded_ring()) {
        let g = build(doc);
        let lib: Vec<usize> = jacobson_radical(g.ring()).iter().collect();
        prop_assert_eq!(lib, Raw::new(&g).ungraded().jacobson());
    }

    #[test]
    fn every_finite_ring_is_u_nil_clean(n in 2usize..=12, k in 1usize..=3) {
        let doc = RingSpecDocument::new(cyclic(k), RingExpr::Groupring { over: zmod(n).boxed() });
        let g = build(doc);
        let r = Raw::new(&g).ungraded();
        prop_assume!(r.n <= 1728);
        prop_assert!(r.is_graded_unc());
        prop_assert!(decide(&g, Property::UNilClean, false).holds);
    }
}

#[test]
fn product_with_mixed_units_is_not_graded_u_nil_clean() {
    let doc = r#"{"group": {"kind": "cyclic", "order": 2}, "ring": {"kind": "product", "factors": [
        {"kind": "groupring", "over": {"kind": "zmod", "n": 2}}, {"kind": "zmod", "n": 2}]}}"#;
    let caps = Caps::default();
    let r = load(doc, &caps).unwrap();
    let a = load(r#"{"group": {"kind": "cyclic", "order": 2}, "ring": {"kind": "groupring", "over": {"kind": "zmod", "n": 2}}}"#, &caps).unwrap();
    let b = load(r#"{"group": {"kind": "cyclic", "order": 2}, "ring": {"kind": "zmod", "n": 2}}"#, &caps).unwrap();
    assert!(Raw::new(&a).is_graded_unc());
    assert!(Raw::new(&b).is_graded_unc());
    let raw = Raw::new(&r);
    let bad = raw.unc_failure().expect("the product fails");
    // (g, 0): degree g, and the second factor has nothing of degree g but 0
    assert_eq!(raw.degree(bad), Some(1));
    assert!(!decide(&r, Property::GradedUNilClean, false).holds);
}

#[test]
fn three_by_three_matrices_with_one_odd_degree() {
    let doc = matrix_doc(2, 2, &[0, 0, 1], true);
    let g = build(doc);
    let raw = Raw::new(&g);
    assert_eq!(raw.n, 512);
    assert!(!raw.is_graded_unc());
    assert_eq!(decide(&g, Property::GradedUNilClean, false).counterexample, raw.unc_failure());
}

#[test]
fn two_by_two_matrices_over_z4_are_graded_u_nil_clean_for_every_sigma() {
    for sigma in [[0, 0], [0, 1], [1, 0], [1, 1]] {
        let g = build(matrix_doc(4, 2, &sigma, true));
        assert!(Raw::new(&g).is_graded_unc(), "sigma {sigma:?}");
        assert!(decide(&g, Property::GradedUNilClean, false).holds);
    }
}

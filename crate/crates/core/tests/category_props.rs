mod common;

use std::collections::BTreeSet;

use hmcoh::category::{fixtures, FinLinCategory, Partition};
use hmcoh::linalg::Field;
use proptest::prelude::*;

/// Composition table in local coordinates, independent of global numbering.
fn local_table(c: &FinLinCategory) -> BTreeSet<String> {
    c.composition_table()
        .into_iter()
        .map(|(g, f, v)| {
            let (mg, mf) = (c.morphism(g), c.morphism(f));
            format!("{}:{}:{} {}:{}:{} {:?}", mg.src, mg.tgt, mg.local, mf.src, mf.tgt, mf.local, v)
        })
        .collect()
}

fn convex_subsets(c: &FinLinCategory) -> Vec<Vec<usize>> {
    common::subsets(c.num_objects()).filter(|s| c.is_convex(s).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructions_stay_valid(
        (c, d) in (common::field(), common::incidence(4), common::incidence(3)).prop_map(|(f, a, b)| (a.build(f), b.build(f)))
    ) {
        prop_assert!(c.validate().is_valid());
        prop_assert!(c.opposite().validate().is_valid());
        prop_assert!(c.enveloping().validate().is_valid());
        prop_assert!(c.box_tensor(&d).unwrap().validate().is_valid());
    }

    #[test]
    fn enveloping_hom_dimensions(c in common::category(3)) {
        let e = c.enveloping();
        let n = c.num_objects();
        for (a, b, a2, b2) in itertools::iproduct!(0..n, 0..n, 0..n, 0..n) {
            prop_assert_eq!(e.hom_dim(a * n + b, a2 * n + b2), c.hom_dim(a, a2) * c.hom_dim(b2, b));
        }
    }

    #[test]
    fn contraction_along_singletons_is_the_identity_on_bases(c in common::category(4)) {
        let d = c.contract(&Partition::singletons(&c)).unwrap();
        prop_assert!(d.validate().is_valid());
        let n = c.num_objects();
        for (x, y) in itertools::iproduct!(0..n, 0..n) {
            prop_assert_eq!(d.hom_dim(x, y), c.hom_dim(x, y));
        }
        prop_assert_eq!(local_table(&d), local_table(&c));
    }

    #[test]
    fn random_contractions_validate(c in common::category(4), seed in prop::collection::vec(0usize..3, 4)) {
        let n = c.num_objects();
        let mut classes: Vec<(String, Vec<usize>)> = Vec::new();
        for x in 0..n {
            let k = seed[x] % (x + 1);
            match classes.get_mut(k) {
                Some((_, xs)) => xs.push(x),
                None => classes.push((format!("e{}", classes.len()), vec![x])),
            }
        }
        let e = Partition::from_indices(&c, classes).unwrap();
        let d = c.contract(&e).unwrap();
        prop_assert!(d.validate().is_valid());
        prop_assert_eq!(d.total_hom_dim(), c.total_hom_dim());
    }

    #[test]
    fn convexity_agrees_with_the_opposite(c in common::category(4)) {
        let op = c.opposite();
        for s in common::subsets(c.num_objects()) {
            prop_assert_eq!(c.is_convex(&s).unwrap(), op.is_convex(&s).unwrap(), "subset {:?}", s);
        }
    }

    #[test]
    fn products_of_convex_subsets_are_convex(
        (c, d) in (common::field(), common::incidence(3), common::incidence(3)).prop_map(|(f, a, b)| (a.build(f), b.build(f)))
    ) {
        let t = c.box_tensor(&d).unwrap();
        let nd = d.num_objects();
        for s in convex_subsets(&c) {
            for u in convex_subsets(&d) {
                let prod: Vec<usize> = itertools::iproduct!(&s, &u).map(|(x, y)| x * nd + y).collect();
                prop_assert!(t.is_convex(&prod).unwrap(), "{:?} × {:?}", s, u);
            }
        }
    }
}

#[test]
fn fixture_convexity() {
    let a3 = fixtures::a3();
    assert!(!a3.is_convex(&[0, 2]).unwrap());
    assert!(a3.is_convex(&[0, 1]).unwrap());
    let zero = fixtures::a3_zero_relation();
    // The only composite through the middle object vanishes.
    assert!(zero.is_convex(&[0, 2]).unwrap());
    assert_eq!(common::path_gaps(&zero, &[0, 2]), vec![1]);
}

#[test]
fn tensor_with_a_different_field_is_rejected() {
    let a = fixtures::a2();
    let b = fixtures::one_over(Field::Prime(5));
    assert!(a.box_tensor(&b).is_err());
}

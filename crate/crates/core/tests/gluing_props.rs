mod common;

use std::sync::Arc;

use hmcoh::category::FinLinCategory;
use hmcoh::gluing::{ext_dims_tilde, glue, happel_les, lemma41_report, les_check, one_point_extension};
use hmcoh::hochschild::ext_dims_bar_bimodule;
use hmcoh::linalg::Mat;
use hmcoh::module::{BimoduleRep, ModuleRep};
use proptest::prelude::*;

/// `L ⊠ R` for a left `C₁`-module `L` and a right `C₂`-module `R`, with basis
/// `l ⊗ r` at `l·dim R_b + r`.
fn external(l: &ModuleRep, r: &ModuleRep) -> BimoduleRep {
    let f = l.field();
    let (c1, c2) = (l.base().clone(), r.base().clone());
    let dims = (0..c1.num_objects()).map(|a| (0..c2.num_objects()).map(|b| l.dim(a) * r.dim(b)).collect()).collect();
    BimoduleRep::from_fn(
        c1,
        c2,
        dims,
        |g, b| l.action(g).kron(&Mat::identity(f, r.dim(b))),
        |h, a| Mat::identity(f, l.dim(a)).kron(r.action(h)),
    )
}

fn two_categories() -> impl Strategy<Value = (Arc<FinLinCategory>, Arc<FinLinCategory>)> {
    (common::field(), common::incidence(2), common::incidence(2))
        .prop_map(|(f, a, b)| (Arc::new(a.build(f)), Arc::new(b.build(f))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn glued_sequences_are_exact((c1, c2) in two_categories(), x in 0usize..2, y in 0usize..2) {
        let l = ModuleRep::representable_left(c1.clone(), x % c1.num_objects());
        let r = ModuleRep::representable_right(c2.clone(), y % c2.num_objects());
        let m = external(&l, &r);
        prop_assert!(m.validate().is_valid());
        let g = glue(&m).unwrap();
        prop_assert!(g.category().validate().is_valid());
        let report = les_check(&g, &g.regular(), 2).unwrap();
        prop_assert!(report.exact, "{:?}", report.verdicts);
        let n = g.regular();
        let tilde = ext_dims_tilde(&g, &n, 2).unwrap();
        prop_assert_eq!(tilde, ext_dims_bar_bimodule(g.m(), &g.r12(&n).unwrap(), 2).unwrap());
    }

    #[test]
    fn one_point_extensions_satisfy_the_happel_sequence(c in common::category(3), x in 0usize..3) {
        let m = ModuleRep::representable_right(c.clone(), x % c.num_objects());
        let happel = happel_les(&m, 2).unwrap();
        prop_assert!(happel.exact, "{:?}", happel.verdicts);
        let g = one_point_extension(&m).unwrap();
        prop_assert!(les_check(&g, &g.regular(), 2).unwrap().exact);
        let lemma = lemma41_report(&m, 2).unwrap();
        prop_assert!(lemma.holds(), "{:?}", lemma);
    }
}

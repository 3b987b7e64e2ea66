mod common;

use std::sync::Arc;

use hmcoh::category::{fixtures, FinLinCategory};
use hmcoh::gluing::one_point_extension;
use hmcoh::hochschild::ext_dims_bar;
use hmcoh::module::{
    adjunction_theta, adjunction_zeta, extend, left_multiplication, nat_hom, restrict, right_multiplication,
    tensor_over_cat, BimoduleRep, ModuleError, ModuleRep, Variance,
};
use proptest::prelude::*;

/// Representables and the simples that are modules.
fn test_modules(c: &Arc<FinLinCategory>) -> Vec<ModuleRep> {
    let mut out: Vec<ModuleRep> = (0..c.num_objects()).map(|x| ModuleRep::representable_right(c.clone(), x)).collect();
    out.extend(
        (0..c.num_objects())
            .filter_map(|x| ModuleRep::simple(Variance::Right, c.clone(), x).ok())
            .filter(|m| m.validate().is_valid()),
    );
    out
}

/// No non-zero morphism leaves `sub`.
fn closed_under_successors(c: &FinLinCategory, sub: &[usize]) -> bool {
    sub.iter().all(|x| (0..c.num_objects()).filter(|y| !sub.contains(y)).all(|y| c.hom_dim(*x, y) == 0))
}

/// Checks ζ∘θ = id and θ∘ζ = id on bases of both Hom spaces.
fn adjunction_round_trips(c: &Arc<FinLinCategory>, sub: &[usize]) -> Result<usize, ModuleError> {
    let d = Arc::new(c.full_subcategory(sub).unwrap().0);
    let mut count = 0;
    for x in test_modules(c) {
        let rx = restrict(&x, sub)?;
        for n in test_modules(&d) {
            let i_n = extend(&n, c.clone(), sub)?;
            for t in nat_hom(&rx, &n)? {
                assert_eq!(adjunction_zeta(sub, &adjunction_theta(&x, &n, sub, &t)?), t);
                count += 1;
            }
            for s in nat_hom(&x, &i_n)? {
                assert_eq!(adjunction_theta(&x, &n, sub, &adjunction_zeta(sub, &s))?, s);
                count += 1;
            }
        }
    }
    Ok(count)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn regular_bimodule_is_a_tensor_unit(c in common::category(3)) {
        let r = BimoduleRep::regular(c.clone());
        let t = tensor_over_cat(&r, &r).unwrap();
        prop_assert!(t.bimodule().validate().is_valid());
        prop_assert!(t.check_induced(&r, left_multiplication(&r)).unwrap().is_iso());
        prop_assert!(t.check_induced(&r, right_multiplication(&r)).unwrap().is_iso());
        for m in test_modules(&c) {
            let b = m.as_bimodule();
            let t = tensor_over_cat(&b, &r).unwrap();
            prop_assert!(t.bimodule().validate().is_valid());
            prop_assert!(t.check_induced(&b, right_multiplication(&b)).unwrap().is_iso());
        }
    }

    #[test]
    fn adjunction_holds_when_nothing_leaves_the_subcategory(c in common::category(4)) {
        for sub in common::subsets(c.num_objects()) {
            if c.is_convex(&sub).unwrap() && closed_under_successors(&c, &sub) {
                prop_assert!(adjunction_round_trips(&c, &sub).is_ok(), "subset {:?}", sub);
            }
        }
    }

    #[test]
    fn ext_is_preserved_by_extension_from_path_closed_subcategories(c in common::category(3)) {
        for sub in common::subsets(c.num_objects()) {
            if !common::path_gaps(&c, &sub).is_empty() {
                continue;
            }
            let d = Arc::new(c.full_subcategory(&sub).unwrap().0);
            for m in test_modules(&d) {
                for n in test_modules(&d) {
                    let over_d = ext_dims_bar(&m, &n, 2).unwrap();
                    let (im, i_n) = (extend(&m, c.clone(), &sub).unwrap(), extend(&n, c.clone(), &sub).unwrap());
                    prop_assert_eq!(over_d, ext_dims_bar(&im, &i_n, 2).unwrap(), "subset {:?}", sub);
                }
            }
        }
    }
}

#[test]
fn extension_by_zero_is_not_right_adjoint_when_arrows_leave_the_subcategory() {
    // In A₂ the arrow 1 → 2 leaves D = {1}. The identity of P₂|_D = k does not
    // extend to a natural map P₂ → i(k), because i(k) vanishes at 2.
    let a2 = Arc::new(fixtures::a2());
    let sub = [0];
    let d = Arc::new(a2.full_subcategory(&sub).unwrap().0);
    let x = ModuleRep::representable_right(a2.clone(), 1);
    let n = ModuleRep::representable_right(d, 0);
    let rx = restrict(&x, &sub).unwrap();
    let basis = nat_hom(&rx, &n).unwrap();
    assert_eq!(basis.len(), 1);
    assert!(matches!(adjunction_theta(&x, &n, &sub, &basis[0]), Err(ModuleError::NotNatural(_))));
    assert!(adjunction_round_trips(&a2, &[1]).is_ok());
}

#[test]
fn weakly_convex_subcategory_can_change_ext() {
    // {1, 3} in A₃ with b∘a = 0 is convex, because the only composite through 2
    // vanishes, but it is not closed under paths. Over the discrete
    // subcategory every Ext² is zero, while over A₃/(ba) the relation
    // produces Ext² between the extended simples.
    let c = Arc::new(fixtures::a3_zero_relation());
    let sub = [0, 2];
    assert!(c.is_convex(&sub).unwrap());
    let d = Arc::new(c.full_subcategory(&sub).unwrap().0);
    let simples: Vec<ModuleRep> = (0..2).map(|y| ModuleRep::simple(Variance::Right, d.clone(), y).unwrap()).collect();
    let mut jumps = Vec::new();
    for (a, m) in simples.iter().enumerate() {
        for (b, n) in simples.iter().enumerate() {
            let over_d = ext_dims_bar(m, n, 2).unwrap();
            let over_c = ext_dims_bar(&extend(m, c.clone(), &sub).unwrap(), &extend(n, c.clone(), &sub).unwrap(), 2).unwrap();
            assert_eq!(over_d[2], 0);
            if over_c != over_d {
                jumps.push((a, b, over_c[2]));
            }
        }
    }
    assert_eq!(jumps.len(), 1, "{jumps:?}");
    assert_eq!(jumps[0].2, 1);
}

#[test]
fn one_point_extension_computes_ext_into_the_module() {
    // Ext_{C[M]}(i(X), M̄) = Ext_C(X, M), and Hom_{C[M]}(M̄, i(X)) = 0.
    for c in [fixtures::one(), fixtures::a2(), fixtures::a3(), fixtures::kronecker(), fixtures::a3_zero_relation()] {
        let c = Arc::new(c);
        let sub: Vec<usize> = (0..c.num_objects()).collect();
        for m in test_modules(&c) {
            let g = one_point_extension(&m).unwrap();
            let cm = g.category().clone();
            for x in test_modules(&c) {
                let ix = extend(&x, cm.clone(), &sub).unwrap();
                assert_eq!(ext_dims_bar(&ix, &g.mbar(), 3).unwrap(), ext_dims_bar(&x, &m, 3).unwrap());
                assert!(nat_hom(&g.mbar(), &ix).unwrap().is_empty());
            }
        }
    }
}

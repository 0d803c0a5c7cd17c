mod common;

use coverkit::base::{Dim, NSClass, NumericalBase};
use coverkit::cover::CoverData;
use coverkit::deformations::{cstar_weights, predict_generic_automorphisms, tangent_table, InvariantDims};
use coverkit::group::FinAbGroup;
use num_traits::Zero;
use proptest::prelude::*;

fn known_dims() -> InvariantDims {
    InvariantDims { h1: Dim::Known(0), h2: Dim::Known(0) }
}

#[test]
fn galois_only_configurations_predict_the_whole_group() {
    // Each nontrivial character restricts to the top power on every inertia
    // group, so no summand deforms it.
    for m in [2, 3, 5] {
        let g = FinAbGroup::cyclic(m).unwrap();
        let datum = g.inertia_from(&[1]).unwrap();
        let cd = CoverData::new(g.clone(), vec![datum], NumericalBase::p2(), vec![NSClass(vec![m * 2])]);
        let Ok(cd) = cd else { continue };
        let report = tangent_table(&cd, known_dims());
        let moving: Vec<_> = report.rows.iter().filter(|r| !r.character.is_trivial() && r.tangent != Dim::Known(0)).collect();
        if moving.is_empty() {
            let p = predict_generic_automorphisms(&cd, &report).unwrap();
            assert_eq!(p.subgroup.order() as u64, g.order());
        }
    }
    let g = FinAbGroup::cyclic(2).unwrap();
    let datum = g.inertia_from(&[1]).unwrap();
    let cd = CoverData::new(g, vec![datum], NumericalBase::p2(), vec![NSClass(vec![6])]).unwrap();
    let report = tangent_table(&cd, known_dims());
    assert!(report.rows.iter().all(|r| r.character.is_trivial() || r.tangent == Dim::Known(0)));
    assert_eq!(predict_generic_automorphisms(&cd, &report).unwrap().subgroup.order(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn prediction_contains_the_brute_force_kernel(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let cd = common::random_cover(&mut rng, 36);
        let report = tangent_table(&cd, known_dims());
        let g = cd.group();
        match predict_generic_automorphisms(&cd, &report) {
            Ok(p) => {
                let moving: Vec<_> = report
                    .rows
                    .iter()
                    .filter(|r| !r.character.is_trivial() && matches!(r.tangent, Dim::Known(t) if t > 0))
                    .map(|r| r.character.clone())
                    .collect();
                for x in g.elements() {
                    if moving.iter().all(|c| g.pairing(c, &x).is_zero()) {
                        prop_assert!(p.subgroup.elements.contains(&x));
                    }
                }
                if moving.is_empty() {
                    prop_assert_eq!(p.subgroup.order() as u64, g.order());
                }
            }
            Err(_) => prop_assert!(!report.unknown_characters.is_empty()),
        }
    }

    #[test]
    fn branch_deforming_sections_have_diagonal_weights(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let cd = common::random_cover(&mut rng, 36);
        let w = cstar_weights(&cd);
        let k = cd.inertia().len();
        let trivial: Vec<_> = w.rows.iter().filter(|r| r.chi.is_trivial()).collect();
        prop_assert_eq!(trivial.len(), k);
        for r in trivial {
            for (l, e) in r.exponents.iter().enumerate() {
                let expected = if l == r.j { cd.inertia()[l].order } else { 0 };
                prop_assert_eq!(*e, expected);
            }
        }
    }
}

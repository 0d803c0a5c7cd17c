mod common;

use coverkit::emitter::{Flavor, RelationSystem};
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn relation_counts_and_grading_up_to_sixteen() {
    for g in common::groups_up_to(16) {
        let all = g.enumerate_ig();
        for galois in [true, false] {
            let sys = RelationSystem::new(&g, &all, galois);
            assert_eq!(sys.relations.len() as u64, RelationSystem::expected_relation_count(g.order()), "{g}");
            assert!(sys.is_multihomogeneous(), "{g}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn emission_is_byte_deterministic(seed in any::<u64>(), galois in any::<bool>()) {
        let mut rng = common::rng(seed);
        let cd = common::random_cover(&mut rng, 16);
        for flavor in [Flavor::Plain, Flavor::Singular, Flavor::Macaulay2] {
            let a = RelationSystem::from_cover(&cd, galois).emit(flavor);
            let b = RelationSystem::from_cover(&cd, galois).emit(flavor);
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn random_covers_are_graded(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let cd = common::random_cover(&mut rng, 8);
        let sys = RelationSystem::from_cover(&cd, false);
        prop_assert!(sys.is_multihomogeneous());
        if cd.inertia().len() <= 3 {
            prop_assert!(sys.is_multihomogeneous_expanded());
        }
    }

    #[test]
    fn galois_specialization_is_the_zero_setting(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let cd = common::random_cover(&mut rng, 8);
        let full = RelationSystem::from_cover(&cd, false);
        let galois = RelationSystem::from_cover(&cd, true);
        let nz = full.variables.len();
        let keep: Vec<bool> = full.parameters.iter().map(|s| s.chi.is_trivial()).collect();
        let mut subst = vec![None; nz];
        subst.extend(keep.iter().map(|&k| if k { None } else { Some(BigRational::zero()) }));
        for (rf, rg) in full.relations.iter().zip(&galois.relations) {
            let specialized = full.polynomial(rf).substitute(&subst, galois.nvars());
            prop_assert_eq!(specialized, galois.polynomial(rg));
        }
    }
}

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use howe_core::character::{
    c_twist, delta_char, preservation_sum_general, random_character, sgn_twist, Components, GeneralCharacter,
    SampleKind, SpTargets,
};
use howe_core::partition::{beta_set_of, partition_of_beta, two_core, Bipartition, Partition};
use howe_core::symbol::{defect_floor, partition_from_symbol, symbol_from_partition, SeriesFamily, Sign, Symbol};
use howe_core::theta::{theta_zero, theta_zero_orth, theta_zero_sp, SeriesCache};

fn partition(max_parts: usize, max_part: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=max_part, 0..=max_parts).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("sorted")
    })
}

fn bipartition() -> impl Strategy<Value = Bipartition> {
    (partition(4, 4), partition(4, 4)).prop_map(|(a, b)| Bipartition::new(a, b))
}

fn beta_rows() -> impl Strategy<Value = (Vec<u32>, Vec<u32>)> {
    (prop::collection::btree_set(0u32..12, 0..6), prop::collection::btree_set(0u32..12, 0..6))
        .prop_map(|(a, b)| (a.into_iter().collect(), b.into_iter().collect()))
}

fn symbol() -> impl Strategy<Value = Symbol> {
    beta_rows().prop_map(|(a, b)| Symbol::from_rows(&a, &b))
}

fn series_symbol(family: SeriesFamily) -> impl Strategy<Value = Symbol> {
    let residue = family.defect_residue().expect("even group series");
    (bipartition(), -3i32..=3).prop_map(move |(u, j)| Symbol::with_upsilon(&u, 4 * j + residue))
}

fn character(kind: SampleKind) -> impl Strategy<Value = GeneralCharacter> {
    any::<u64>().prop_map(move |seed| {
        let cache = SeriesCache::new();
        random_character(&cache, &mut ChaCha8Rng::seed_from_u64(seed), kind, 10)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalize_is_idempotent_and_shift_invariant(s in symbol()) {
        let n = s.normalize();
        prop_assert!(n.is_normalized());
        prop_assert_eq!(n.normalize(), n.clone());
        prop_assert_eq!(s.shifted_up().normalize(), n);
        let t = s.shifted_up();
        prop_assert_eq!((t.rank(), t.defect(), t.delta(), t.upsilon()), (s.rank(), s.defect(), s.delta(), s.upsilon()));
    }

    #[test]
    fn rank_splits_into_upsilon_and_defect(s in symbol()) {
        prop_assert_eq!(s.rank(), s.upsilon().size() + defect_floor(s.defect()));
        prop_assert_eq!(s.is_cuspidal(), s.upsilon().is_empty());
        prop_assert_eq!(s.is_cuspidal(), s.delta() == 0);
    }

    #[test]
    fn upsilon_and_defect_determine_the_class(s in symbol()) {
        prop_assert_eq!(Symbol::with_upsilon(&s.upsilon(), s.defect()), s.normalize());
    }

    #[test]
    fn transpose_negates_defect(s in symbol()) {
        let t = s.transpose();
        prop_assert_eq!(t.defect(), -s.defect());
        prop_assert_eq!(t.rank(), s.rank());
        prop_assert_eq!(t.transpose(), s);
    }

    #[test]
    fn symbol_text_round_trips(s in symbol()) {
        prop_assert_eq!(s.to_string().parse::<Symbol>().unwrap(), s);
    }

    #[test]
    fn beta_sets_round_trip(lambda in partition(6, 8), extra in 0usize..4) {
        let beta = beta_set_of(&lambda, lambda.len() + extra).unwrap();
        prop_assert_eq!(beta.len(), lambda.len() + extra);
        prop_assert_eq!(partition_of_beta(&beta), lambda);
    }

    #[test]
    fn two_core_is_a_staircase_of_matching_parity(lambda in partition(6, 8)) {
        let core = two_core(&lambda);
        prop_assert!(core.staircase_index().is_some());
        prop_assert_eq!((lambda.size() - core.size()) % 2, 0);
        prop_assert_eq!(two_core(&core), core);
    }

    #[test]
    fn unitary_symbols_invert(lambda in partition(6, 8)) {
        let s = symbol_from_partition(&lambda);
        prop_assert_eq!(s.defect() % 2, 0);
        prop_assert_eq!(partition_from_symbol(&s), Some(lambda.clone()));
        prop_assert_eq!(lambda.size(), two_core(&lambda).size() + 2 * s.upsilon().size());
    }

    #[test]
    fn symplectic_theta_zero_lands_in_the_right_series(s in series_symbol(SeriesFamily::Sp)) {
        let mut sum = 0;
        for eps in Sign::both() {
            let t = theta_zero_sp(&s, eps).unwrap();
            prop_assert_eq!(SeriesFamily::of_defect(t.defect()), Some(SeriesFamily::orthogonal(eps)));
            prop_assert_eq!(t.defect(), eps.value() - s.defect());
            sum += t.rank();
        }
        prop_assert_eq!(sum + s.delta(), 2 * s.rank() + 1);
    }

    #[test]
    fn orthogonal_theta_zero_rank_sum(s in series_symbol(SeriesFamily::OEvenPlus)) {
        let a = theta_zero_orth(&s).unwrap();
        let b = theta_zero_orth(&s.transpose()).unwrap();
        prop_assert_eq!(SeriesFamily::of_defect(a.defect()), Some(SeriesFamily::Sp));
        prop_assert_eq!(a.rank() + b.rank() + s.delta(), 2 * s.rank());
    }

    #[test]
    fn minus_series_theta_zero_rank_sum(s in series_symbol(SeriesFamily::OEvenMinus)) {
        let a = theta_zero(&s, Sign::Plus);
        let b = theta_zero(&s.transpose(), Sign::Plus);
        prop_assert_eq!(a.rank() + b.rank() + s.delta(), 2 * s.rank());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn unitary_preservation_holds(rho in character(SampleKind::Unitary)) {
        let p = preservation_sum_general(&rho, SpTargets::Even).unwrap();
        prop_assert_eq!(p.lhs, p.rhs);
    }

    #[test]
    fn orthogonal_preservation_holds(rho in character(SampleKind::OEven), odd in character(SampleKind::OOdd)) {
        for r in [rho, odd] {
            let p = preservation_sum_general(&r, SpTargets::Even).unwrap();
            prop_assert_eq!(p.lhs, p.rhs, "{}", r);
            prop_assert_eq!(delta_char(&sgn_twist(&r).unwrap(), SpTargets::Even), delta_char(&r, SpTargets::Even));
            prop_assert_eq!(sgn_twist(&sgn_twist(&r).unwrap()).unwrap(), r);
        }
    }

    #[test]
    fn symplectic_preservation_holds(rho in character(SampleKind::Sp)) {
        for targets in [SpTargets::Even, SpTargets::Odd] {
            let p = preservation_sum_general(&rho, targets).unwrap();
            prop_assert_eq!(p.lhs, p.rhs, "{} {:?}", rho, targets);
            prop_assert_eq!(delta_char(&c_twist(&rho).unwrap(), targets), delta_char(&rho, targets));
        }
        prop_assert_eq!(c_twist(&c_twist(&rho).unwrap()).unwrap(), rho.clone());
        let is_sp = matches!(rho.components(), Components::Sp { .. });
        prop_assert!(is_sp);
    }
}

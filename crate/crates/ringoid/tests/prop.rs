//! Property tests over randomized inputs, complementing the exhaustive
//! corpus checks with unstructured fuzzing of the small building blocks.

use proptest::prelude::*;
use ringoid::quasi::{instances, validate_quasi_ideal};
use ringoid::{pair_index, unpair_index, Budget};

proptest! {
    #[test]
    fn pairing_roundtrips(i in 0usize..100, j in 0usize..100, extra in 1usize..100) {
        let jsize = j + extra;
        let k = pair_index(i, j, jsize);
        prop_assert_eq!(unpair_index(k, jsize), (i, j));
    }

    #[test]
    fn budget_strings_parse_back(carrier in 1usize..10_000, search in 1u64..1_000_000) {
        let full = Budget::parse(&format!("{carrier},{search}")).unwrap();
        prop_assert_eq!(full.max_carrier, carrier);
        prop_assert_eq!(full.max_search, search);
        let short = Budget::parse(&format!("{search}")).unwrap();
        prop_assert_eq!(short.max_search, search);
        prop_assert_eq!(short.max_carrier, Budget::default().max_carrier);
    }

    #[test]
    fn budget_rejects_garbage(text in "[a-z ,]{0,12}") {
        prop_assert!(Budget::parse(&text).is_err());
    }

    /// An arbitrary self-map of Z/4 either is rejected by the validator or
    /// satisfies all three defining laws when checked directly.
    #[test]
    fn random_differentials_are_judged_by_the_laws(d in proptest::collection::vec(0usize..4, 4)) {
        let module = instances::z4_double().module().clone();
        let ring = module.base().clone();
        let verdict = validate_quasi_ideal(&module, &d).unwrap().ok();
        let additive = (0..4).all(|x| (0..4).all(|y| d[module.add(x, y)] == ring.add(d[x], d[y])));
        let linear = (0..4).all(|c| (0..4).all(|x| d[module.act(c, x)] == ring.mul(c, d[x])));
        let symmetric =
            (0..4).all(|x| (0..4).all(|y| module.act(d[x], y) == module.act(d[y], x)));
        prop_assert_eq!(verdict, additive && linear && symmetric);
    }
}

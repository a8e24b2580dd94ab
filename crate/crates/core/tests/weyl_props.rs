mod common;

use std::collections::HashSet;

use common::*;
use kmf::fixtures;
use kmf::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn finite_orbits_have_group_order() {
    for (cm, order) in [(fixtures::a1(), 2), (fixtures::a2(), 6), (fixtures::a3(), 24), (fixtures::b2(), 8), (fixtures::g2(), 12)] {
        let pv = PvIndex::uniform(cm.all_nodes(), 1);
        let terms = orbit_terms(&cm, pv.nodes(), &pv.pairings().iter().map(|(&i, &v)| (i, v as i64)).collect(), 60).unwrap();
        assert_eq!(terms.len(), order, "{:?}", cm.entries());
    }
}

#[test]
fn u_of_rank_one_blocks_is_a_binomial() {
    let cm = fixtures::g2();
    for m in 0..4 {
        let pv = PvIndex::uniform(NodeSet::from_indices([1]), m);
        let u: QSeries = numerator_u(&cm, &pv, 10).unwrap();
        let mut want = QSeries::one(2, 10);
        want.add_term(Exponent::new(vec![0, m + 1]), q(-1));
        assert_eq!(u, want);
    }
}

fn orbit_invariants(cm: &CartanMatrix, pv: &PvIndex, cap: u32) -> std::result::Result<(), TestCaseError> {
    let lam = pv.pairings().iter().map(|(&i, &v)| (i, v as i64)).collect();
    let terms = orbit_terms(cm, pv.nodes(), &lam, cap).unwrap();
    prop_assert_eq!(terms.iter().filter(|t| t.exponent.is_zero()).count(), 1);
    let start = &terms[0];
    prop_assert!(start.exponent.is_zero() && start.sign == 1);
    prop_assert_eq!(&start.pairings, &pv.pairings().values().map(|&v| v as i64 + 1).collect::<Vec<_>>());
    let mut seen_pairings = HashSet::new();
    let mut seen_exponents = HashSet::new();
    for t in &terms {
        prop_assert!(t.exponent.degree() <= cap);
        prop_assert!(t.exponent.support().iter().all(|&i| pv.nodes().contains(i)));
        prop_assert_eq!(t.sign as i64, if t.length % 2 == 0 { 1 } else { -1 });
        prop_assert!(seen_pairings.insert(t.pairings.clone()), "repeated pairing vector");
        prop_assert!(seen_exponents.insert(t.exponent.clone()), "repeated exponent");
    }
    // BFS order: length, hence degree along each edge, never decreases
    for w in terms.windows(2) {
        prop_assert!(w[0].length <= w[1].length);
    }
    for t in &terms {
        if t.length > 0 {
            let parent = terms.iter().any(|p| {
                p.length + 1 == t.length
                    && p.exponent.degree() < t.exponent.degree()
                    && p.exponent.le_componentwise(&t.exponent)
            });
            prop_assert!(parent, "no parent of smaller degree");
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_orbits_are_well_formed(seed in any::<u64>(), cap in 2u32..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cm = random_gcm(&mut rng, 4);
        let nodes = random_connected_set(&mut rng, &cm);
        let pv = random_pv(&mut rng, nodes, 3);
        orbit_invariants(&cm, &pv, cap)?;
    }

    #[test]
    fn numerator_depends_only_on_pairings(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cm = random_gcm(&mut rng, 4);
        let nodes = random_connected_set(&mut rng, &cm);
        let a = random_pv(&mut rng, nodes, 2);
        let b = PvIndex::new(a.nodes().clone(), a.pairings().iter().map(|(&i, &v)| (i, v as i64))).unwrap();
        prop_assert!(approx(&a, &b));
        prop_assert_eq!(numerator_u::<Rational>(&cm, &a, 8).unwrap(), numerator_u::<Rational>(&cm, &b, 8).unwrap());
        prop_assert_eq!(beta(&cm, &a), beta(&cm, &b));
    }
}

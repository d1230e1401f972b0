mod common;

use std::collections::BTreeSet;

use common::{decomposition_matches_box, koszul_betti, ring, taylor_k_polynomial};
use monideal::budget::{Budget, Search};
use monideal::classify::{is_cm, is_scm};
use monideal::decomposition::{associated_primes, irreducible_decomposition, minimal_primes};
use monideal::document::{parse_document, render_document, render_json, Body, IdealDocument};
use monideal::filtrations::{filtration_from_shelling, find_prime_filtration, FiltrationMode};
use monideal::resolutions::{
    betti_table, has_linear_quotients, hochster_betti, is_componentwise_linear, is_linear_quotient_order, polarize,
};
use monideal::shelling::{is_shelling_order, shellability, Shellability, ShellingOptions};
use monideal::simplicial::{alexander_dual_ideal, complex_of_ideal, ideal_of_complex, SimplicialComplex};
use monideal::{is_generic, Monomial, MonomialIdeal, VarSet};
use proptest::prelude::*;

fn squarefree_ideal(max_n: usize, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(1u64..(1 << n), 1..=max_gens).prop_map(move |sets| {
            MonomialIdeal::new(ring(n), sets.into_iter().map(|s| Monomial::from_varset(n, VarSet(s)))).unwrap()
        })
    })
}

fn monomial_ideal(max_n: usize, max_exp: u32, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::vec(0..=max_exp, n), 1..=max_gens).prop_map(move |gens| {
            let gens = gens.into_iter().map(|mut e| {
                if e.iter().all(|&a| a == 0) {
                    e[0] = 1;
                }
                Monomial::new(e)
            });
            MonomialIdeal::new(ring(n), gens).unwrap()
        })
    })
}

fn complex(max_n: usize, max_facets: usize) -> impl Strategy<Value = SimplicialComplex> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(1u64..(1 << n), 1..=max_facets)
            .prop_map(move |f| SimplicialComplex::from_facets(n, f.into_iter().map(VarSet)).unwrap())
    })
}

fn exhaustive() -> ShellingOptions {
    ShellingOptions {
        homological_prefilter: false,
        budget: Budget::unlimited(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn decomposition_matches_membership_oracle(i in monomial_ideal(4, 3, 5)) {
        let dec = irreducible_decomposition(&i).unwrap();
        prop_assert_eq!(decomposition_matches_box(&i, &dec), Ok(()));
        prop_assert_eq!(dec.intersection(), i.clone());
    }

    #[test]
    fn squarefree_ideals_have_no_embedded_primes(i in squarefree_ideal(6, 6)) {
        prop_assert_eq!(associated_primes(&i).unwrap(), minimal_primes(&i).unwrap());
        prop_assert_eq!(i.radical(), i);
    }

    #[test]
    fn hochster_matches_taylor_k_polynomial(i in squarefree_ideal(6, 6)) {
        let table = hochster_betti(&i).unwrap();
        prop_assert_eq!(table.alternating_sum(), taylor_k_polynomial(&i));
        for (&(k, j), &b) in table.entries() {
            if k == 0 {
                let count = i.gens().iter().filter(|g| g.degree() as usize == j).count() as u64;
                prop_assert_eq!(b, count);
            }
        }
    }

    #[test]
    fn hochster_matches_upper_koszul(i in squarefree_ideal(5, 5)) {
        prop_assert_eq!(hochster_betti(&i).unwrap().entries().clone(), koszul_betti(&i));
    }

    #[test]
    fn polarization_preserves_betti_numbers(i in monomial_ideal(3, 3, 4)) {
        let pol = polarize(&i).unwrap();
        prop_assert!(pol.ideal.is_squarefree());
        prop_assert_eq!(pol.ideal.gens().len(), i.gens().len());
        let expected_vars: u32 = i.lcm_of_gens().exps().iter().sum();
        prop_assert_eq!(pol.ideal.nvars() as u32, expected_vars);
        let table = betti_table(&i).unwrap();
        prop_assert_eq!(table.entries().clone(), koszul_betti(&i));
        prop_assert_eq!(table.alternating_sum(), taylor_k_polynomial(&i));
    }

    #[test]
    fn alexander_duality_is_an_involution(i in squarefree_ideal(6, 6)) {
        let dual = alexander_dual_ideal(&i).unwrap();
        prop_assert_eq!(alexander_dual_ideal(&dual).unwrap(), i.clone());
        let delta = complex_of_ideal(&i).unwrap();
        prop_assert_eq!(ideal_of_complex(&delta.alexander_dual(), i.ring()).unwrap(), dual);
        prop_assert_eq!(ideal_of_complex(&delta, i.ring()).unwrap(), i);
    }

    #[test]
    fn linear_quotients_imply_componentwise_linear(i in squarefree_ideal(6, 6)) {
        if let Search::Found(order) = has_linear_quotients(&i, &Budget::unlimited()).unwrap() {
            prop_assert!(is_linear_quotient_order(&i, &order));
            prop_assert!(is_componentwise_linear(&i).unwrap());
        }
    }

    #[test]
    fn shellable_iff_dual_has_linear_quotients(delta in complex(6, 6)) {
        prop_assume!(delta.facets().len() > 1 || delta.facets()[0].len() < delta.nvertices());
        let n = delta.nvertices();
        let dual_ideal = ideal_of_complex(&delta.alexander_dual(), &ring(n)).unwrap();
        let lq = has_linear_quotients(&dual_ideal, &Budget::unlimited()).unwrap().is_found();
        let s = shellability(&delta, &exhaustive()).unwrap();
        prop_assert_eq!(s.as_bool(), Some(lq));
        let fast = shellability(&delta, &ShellingOptions::default()).unwrap();
        prop_assert_eq!(fast.as_bool(), Some(lq));
        if let Shellability::Shellable(order) = s {
            prop_assert!(is_shelling_order(&delta, &order));
            let i = ideal_of_complex(&delta, &ring(n)).unwrap();
            let f = filtration_from_shelling(&i, &order).unwrap();
            let min: BTreeSet<_> = minimal_primes(&i).unwrap().into_iter().collect();
            prop_assert_eq!(f.support(), min);
        }
    }

    #[test]
    fn eagon_reiner_and_duval_routes_agree(delta in complex(6, 6), p in prop::sample::select(vec![0u32, 2, 3])) {
        prop_assume!(delta.facets().len() > 1 || delta.facets()[0].len() < delta.nvertices());
        let n = delta.nvertices();
        let r = std::sync::Arc::new(ring(n).with_characteristic(p).unwrap());
        let i = ideal_of_complex(&delta, &r).unwrap();
        let cm = is_cm(&i).unwrap();
        let scm = is_scm(&i).unwrap();
        prop_assert!(cm.as_bool().is_some() && scm.as_bool().is_some());
        if cm.is_true() {
            prop_assert!(scm.is_true());
        }
        if shellability(&delta, &ShellingOptions::default()).unwrap().as_bool() == Some(true) {
            prop_assert!(scm.is_true());
        }
    }

    #[test]
    fn euler_characteristic_matches_homology(delta in complex(7, 6), p in prop::sample::select(vec![0u32, 2, 5])) {
        let h = delta.reduced_homology(p).unwrap();
        prop_assert_eq!(h.euler_characteristic(), delta.reduced_euler_characteristic());
    }

    #[test]
    fn documents_round_trip(i in monomial_ideal(5, 4, 6)) {
        let doc = IdealDocument {
            label: Some("sample".into()),
            ring: i.ring().clone(),
            body: Body::Ideal(i.clone()),
            expect: Default::default(),
            expect_dual: None,
            expect_radical: None,
            extended: false,
        };
        prop_assert_eq!(parse_document(&render_document(&doc)).unwrap(), doc.clone());
        prop_assert_eq!(parse_document(&render_json(&doc)).unwrap(), doc);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn found_filtrations_replay(i in monomial_ideal(3, 2, 4), mode in prop::sample::select(vec![
        FiltrationMode::Any, FiltrationMode::Clean, FiltrationMode::Pretty, FiltrationMode::Almost,
    ])) {
        let budget = Budget::from_secs_f64(5.0);
        if let Search::Found(f) = find_prime_filtration(&i, mode, None, &budget).unwrap() {
            prop_assert!(f.replay().is_ok());
            prop_assert!(f.satisfies(mode).unwrap());
            let ass: BTreeSet<_> = associated_primes(&i).unwrap().into_iter().collect();
            prop_assert!(ass.is_subset(&f.support()));
            // every step prime contains a minimal prime
            let min = minimal_primes(&i).unwrap();
            for p in f.support() {
                prop_assert!(min.iter().any(|q| q.vars().is_subset(p.vars())));
            }
            if is_generic(&i).unwrap() {
                prop_assert_eq!(f.support(), ass);
            }
        }
    }

    #[test]
    fn generic_ideals_are_almost_clean(i in monomial_ideal(4, 3, 4)) {
        prop_assume!(is_generic(&i).unwrap());
        let found = find_prime_filtration(&i, FiltrationMode::Any, None, &Budget::from_secs_f64(5.0)).unwrap();
        if let Search::Found(f) = found {
            let ass: BTreeSet<_> = associated_primes(&i).unwrap().into_iter().collect();
            prop_assert_eq!(f.support(), ass);
        }
    }
}

#[test]
fn betti_examples_match_oracles() {
    let cases = [
        (common::squarefree(2, &[&[1], &[2]]), vec![((0, 1), 2), ((1, 2), 1)]),
        (common::squarefree(4, &[&[1, 3], &[2, 4]]), vec![((0, 2), 2), ((1, 4), 1)]),
        (common::squarefree(3, &[&[1, 2], &[1, 3]]), vec![((0, 2), 2), ((1, 3), 1)]),
    ];
    for (i, expected) in cases {
        let table = hochster_betti(&i).unwrap();
        let got: Vec<((usize, usize), u64)> = table.entries().iter().map(|(&k, &v)| (k, v)).collect();
        assert_eq!(got, expected);
        assert_eq!(table.entries().clone(), koszul_betti(&i));
        assert_eq!(table.alternating_sum(), taylor_k_polynomial(&i));
    }
}

#[test]
fn squarefree_component_example_by_enumeration() {
    let i = common::squarefree(3, &[&[1, 2], &[3]]);
    let expected: Vec<Monomial> = VarSet::full(3)
        .subsets()
        .filter(|s| s.len() == 2)
        .map(|s| Monomial::from_varset(3, s))
        .filter(|m| i.contains(m))
        .collect();
    let comp = monideal::resolutions::squarefree_component(&i, 2).unwrap();
    let mut sorted = expected;
    sorted.sort();
    assert_eq!(comp.gens(), sorted.as_slice());
    assert_eq!(comp.gens_string(), "x1*x2, x1*x3, x2*x3");
}

#[test]
fn polarization_example_betti_numbers() {
    let i = common::ideal(2, &[&[2, 0], &[1, 1]]);
    let pol = polarize(&i).unwrap();
    assert_eq!(pol.ideal.gens_string(), "x1_1*x1_2, x1_1*x2_1");
    assert_eq!(hochster_betti(&pol.ideal).unwrap().entries().clone(), koszul_betti(&i));
}

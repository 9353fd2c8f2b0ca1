mod common;

use std::sync::Arc;
use std::thread;

use asyprime::field_poly::{parse_polynomial, FreeElement, Ring};
use asyprime::graded_ring::{
    gr_piece, quotient_mod_power, quotient_mod_power_raw, verify_regular_sequence, ModulePresentation,
    RingPresentation,
};
use asyprime::harness::FixtureFile;
use asyprime::AlgebraError;
use common::*;

fn standard(fx: &asyprime::harness::Fixture) -> bool {
    fx.ring.ring().weights().iter().all(|&w| w == 1)
}

#[test]
fn short_exact_sequence_of_powers() {
    for fx in shipped() {
        let cache = fx.powers().unwrap();
        let lo = fx.n.degrees().iter().copied().min().unwrap_or(0);
        let top = lo + 8;
        for n in 0..=3 {
            let upper = quotient_mod_power(&fx.n, &cache, n + 1);
            let lower = quotient_mod_power(&fx.n, &cache, n);
            let gr = gr_piece(&fx.n, &cache, n);
            for d in lo..=top {
                assert_eq!(
                    upper.hilbert_function(d),
                    lower.hilbert_function(d) + gr.presentation.hilbert_function(d),
                    "{} n = {n}, d = {d}",
                    fx.name
                );
            }
            // the generators of I^n N / I^{n+1} N die in N / I^n N and live in N / I^{n+1} N
            let raw_lower = quotient_mod_power_raw(&fx.n, &cache, n);
            let raw_upper = quotient_mod_power_raw(&fx.n, &cache, n + 1);
            for g in &gr.generators {
                assert!(raw_lower.relations_basis().contains(g), "{} n = {n}", fx.name);
                assert!(!raw_upper.relations_basis().contains(g), "{} n = {n}", fx.name);
            }
        }
    }
}

#[test]
fn quotient_hilbert_functions_match_slices() {
    for fx in shipped().into_iter().filter(standard) {
        let cache = fx.powers().unwrap();
        for n in 0..=3 {
            let raw = quotient_mod_power_raw(&fx.n, &cache, n);
            let pruned = quotient_mod_power(&fx.n, &cache, n);
            let lo = fx.n.degrees().iter().copied().min().unwrap_or(0);
            let oracle = TruncatedModule::new(&raw, lo, lo + 6);
            for d in lo..=lo + 6 {
                assert_eq!(raw.hilbert_function(d), oracle.dim(d), "{} n = {n}, d = {d}", fx.name);
                assert_eq!(pruned.hilbert_function(d), oracle.dim(d), "{} n = {n}, d = {d}", fx.name);
            }
        }
    }
}

#[test]
fn powers_descend() {
    for fx in shipped() {
        let cache = fx.powers().unwrap();
        let zero = cache.power(0);
        assert!(zero.basis.is_whole_module(), "{}: I^0 = (1)", fx.name);
        for n in 0..4 {
            let lo = cache.power(n);
            let hi = cache.power(n + 1);
            assert!(hi.generators.iter().all(|g| lo.basis.contains_poly(g)), "{} n = {n}", fx.name);
        }
    }
}

#[test]
fn power_cache_is_shared_memoization() {
    let fx = fixture("cone");
    let reference = fx.powers().unwrap();
    let expected: Vec<Vec<String>> = (0..=5)
        .map(|n| {
            reference.power(n).generators.iter().map(|g| g.display(fx.ring.ring())).collect()
        })
        .collect();
    let shared = Arc::new(fx.powers().unwrap());
    let handles: Vec<_> = (0..8)
        .map(|t| {
            let cache = shared.clone();
            thread::spawn(move || {
                let order: Vec<usize> = if t % 2 == 0 { (0..=5).collect() } else { (0..=5).rev().collect() };
                order
                    .into_iter()
                    .map(|n| (n, cache.power(n).generators.clone()))
                    .collect::<Vec<_>>()
            })
        })
        .collect();
    for h in handles {
        for (n, gens) in h.join().unwrap() {
            let shown: Vec<String> = gens.iter().map(|g| g.display(fx.ring.ring())).collect();
            assert_eq!(shown, expected[n]);
        }
    }
}

#[test]
fn regular_sequences() {
    let q = Arc::new(Ring::new(2, &["x", "y", "z"]).unwrap());
    let p = |s: &str| parse_polynomial(s, &q).unwrap();
    let cert = verify_regular_sequence(&q, &[p("x^2"), p("y^2")]).unwrap();
    assert_eq!(cert.dimensions, vec![3, 2, 1]);
    assert!(matches!(
        verify_regular_sequence(&q, &[p("x^2"), p("x*y")]),
        Err(AlgebraError::NotRegular(_))
    ));
    // regularity is enforced where fixtures are loaded
    let text = r#"{"name": "bad", "prime": 2, "variables": ["x", "y", "z"], "f": ["x*y", "x*z"],
        "M": {"shifts": [0], "relations": []}, "N": {"shifts": [0], "relations": []},
        "I": ["x"], "window": {}}"#;
    let err = FixtureFile::from_json(text).unwrap().build().unwrap_err();
    assert!(matches!(err, AlgebraError::NotRegular(_)), "{err:?}");
    assert!(RingPresentation::from_arc(q.clone(), vec![p("x^2 + y")]).is_err());
}

#[test]
fn module_relations_must_be_homogeneous() {
    let q = Arc::new(Ring::new(2, &["x", "y"]).unwrap());
    let p = |s: &str| parse_polynomial(s, &q).unwrap();
    let ring = Arc::new(RingPresentation::from_arc(q.clone(), vec![p("x^2")]).unwrap());
    let bad = FreeElement::from_column(&[p("x"), p("y^2")], q.field());
    assert!(ModulePresentation::new(ring.clone(), vec![0, 0], vec![bad]).is_err());
    let good = FreeElement::from_column(&[p("x"), p("y^2")], q.field());
    let m = ModulePresentation::new(ring, vec![0, -1], vec![good]).unwrap();
    // relations over A include f e_i
    assert!(m.relations_basis().contains(&FreeElement::from_poly(1, &p("x^2"))));
}

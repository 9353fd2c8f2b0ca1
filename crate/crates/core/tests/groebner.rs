mod common;

use std::sync::Arc;

use asyprime::field_poly::{parse_polynomial, FreeElement, Polynomial, Ring};
use asyprime::groebner::{
    buchberger, generator_map, ideal_basis, ideal_quotient, krull_dimension, syzygy_module, GroebnerBasis,
};
use asyprime::AlgebraError;
use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring_for(p: u64, nvars: usize) -> Arc<Ring> {
    let names: Vec<String> = (0..nvars).map(|v| format!("x{v}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Arc::new(Ring::new(p, &refs).unwrap())
}

fn engine_ideal(ideal: &RandomIdeal) -> (Arc<Ring>, Vec<Polynomial>, GroebnerBasis) {
    let q = ring_for(ideal.p, ideal.nvars);
    let gens: Vec<Polynomial> = ideal.gens.iter().map(|g| from_opoly(&q, g)).collect();
    let gb = ideal_basis(&q, &gens).unwrap();
    (q, gens, gb)
}

fn random_poly(rng: &mut ChaCha8Rng, q: &Ring, d: i32) -> Polynomial {
    let pool = monomials(q.nvars(), d);
    let p = q.field().p();
    Polynomial::from_terms(
        (0..4).map(|_| (rng.gen_range(1..p), q.monomial(&pool[rng.gen_range(0..pool.len())]))),
        q.field(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_invariants(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 7, 32003]), nvars in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideal = random_ideal(&mut rng, p, nvars);
        let (q, gens, gb) = engine_ideal(&ideal);
        let k = q.field();
        prop_assert!(gb.s_pairs_reduce_to_zero());
        prop_assert!(gens.iter().all(|g| gb.contains_poly(g)));
        prop_assert!(gb.is_reduced());
        for (n, g) in gb.elements().iter().enumerate() {
            let lead = g.leading().unwrap();
            prop_assert_eq!(lead.coeff, 1);
            // no term of g is divisible by another lead
            for (m, h) in gb.elements().iter().enumerate() {
                if m != n {
                    let hl = &h.leading().unwrap().mono;
                    prop_assert!(g.terms().iter().all(|t| !hl.divides(&t.mono)));
                }
            }
        }
        for d in 0..=5 {
            let slice = IdealSlice::new(p, nvars, &ideal.gens, d);
            let f = random_poly(&mut rng, &q, d);
            let nf = gb.normal_form_poly(&f);
            prop_assert_eq!(gb.normal_form_poly(&nf), nf.clone());
            prop_assert!(slice.contains(&to_opoly(&f.sub(&nf, k))));
            prop_assert_eq!(nf.is_zero(), slice.contains(&to_opoly(&f)));
        }
        // generator order does not matter
        let mut rev = gens.clone();
        rev.reverse();
        let other = ideal_basis(&q, &rev).unwrap();
        prop_assert_eq!(other.polynomials(), gb.polynomials());
    }

    #[test]
    fn monomial_membership_matches_slices(seed in any::<u64>(), nvars in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideal = random_ideal(&mut rng, 5, nvars);
        let (q, _, gb) = engine_ideal(&ideal);
        for d in 0..=6 {
            let slice = IdealSlice::new(5, nvars, &ideal.gens, d);
            for m in monomials(nvars, d) {
                let mono = OPoly::from([(m, 1)]);
                prop_assert_eq!(gb.contains_poly(&from_opoly(&q, &mono)), slice.contains(&mono));
            }
        }
    }

    #[test]
    fn syzygies_compose_to_zero(seed in any::<u64>(), nvars in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideal = random_ideal(&mut rng, 7, nvars);
        let (q, _, gb) = engine_ideal(&ideal);
        let syz = syzygy_module(&gb);
        let comp = generator_map(&gb).compose(&syz, q.field());
        prop_assert!(comp.is_zero());
    }

    #[test]
    fn quotient_times_divisor_lands_inside(seed in any::<u64>(), nvars in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = random_ideal(&mut rng, 3, nvars);
        let j = random_ideal(&mut rng, 3, nvars);
        let (q, _, gi) = engine_ideal(&i);
        let js: Vec<Polynomial> = j.gens.iter().map(|g| from_opoly(&q, g)).collect();
        let quot = ideal_quotient(&gi, &js);
        let k = q.field();
        for a in quot.polynomials() {
            for b in &js {
                prop_assert!(gi.contains_poly(&a.mul(b, k)));
            }
        }
        // I ⊆ (I : J)
        prop_assert!(gi.polynomials().iter().all(|g| quot.contains_poly(g)));
    }

    #[test]
    fn krull_dimension_matches_hilbert_growth(seed in any::<u64>(), nvars in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideal = random_ideal(&mut rng, 7, nvars);
        let (_, _, gb) = engine_ideal(&ideal);
        prop_assert_eq!(krull_dimension(&gb), hilbert_dimension(7, nvars, &ideal.gens));
    }
}

/// Dimension from the growth of the Hilbert function in high degree:
/// the least `e` whose `e`-th finite difference vanishes on the tail.
fn hilbert_dimension(p: u64, nvars: usize, gens: &[OPoly]) -> i32 {
    let hf: Vec<i64> = (10..=18)
        .map(|d| {
            let s = IdealSlice::new(p, nvars, gens, d);
            (s.monos.len() - s.span.rank()) as i64
        })
        .collect();
    if hf.iter().all(|&v| v == 0) {
        // zero-dimensional, unless the ideal is the unit ideal
        let s0 = IdealSlice::new(p, nvars, gens, 0);
        return if s0.span.rank() == 1 { -1 } else { 0 };
    }
    let mut diff = hf;
    let mut e = 0;
    while diff.iter().any(|&v| v != 0) {
        diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
        e += 1;
    }
    e
}

/// Exhaustive independent sets of a monomial ideal in up to four variables.
fn independent_set_dimension(nvars: usize, gens: &[Vec<u16>]) -> i32 {
    let mut best = -1;
    for s in 0u32..(1 << nvars) {
        // S independent: no generator is supported inside S
        let ok = gens
            .iter()
            .all(|g| g.iter().enumerate().any(|(v, &e)| e > 0 && s & (1 << v) == 0));
        if ok {
            best = best.max(s.count_ones() as i32);
        }
    }
    best
}

#[test]
fn krull_dimension_of_monomial_ideals_in_four_variables() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let q = ring_for(2, 4);
    for _ in 0..40 {
        let n = rng.gen_range(1..=4);
        let gens: Vec<Vec<u16>> = (0..n)
            .map(|_| (0..4).map(|_| rng.gen_range(0..3)).collect())
            .collect();
        let polys: Vec<Polynomial> = gens.iter().map(|e| Polynomial::term(1, q.monomial(e))).collect();
        let gb = ideal_basis(&q, &polys).unwrap();
        assert_eq!(krull_dimension(&gb), independent_set_dimension(4, &gens), "{gens:?}");
    }
}

#[test]
fn classical_colon() {
    let q = Arc::new(Ring::new(2, &["x", "y"]).unwrap());
    let p = |s: &str| parse_polynomial(s, &q).unwrap();
    let i = ideal_basis(&q, &[p("x^2"), p("x*y")]).unwrap();
    let quot = ideal_quotient(&i, &[p("x")]);
    let expected = ideal_basis(&q, &[p("x"), p("y")]).unwrap();
    assert!(quot.same_submodule(&expected));
    let quot_y = ideal_quotient(&i, &[p("y")]);
    assert!(quot_y.same_submodule(&ideal_basis(&q, &[p("x")]).unwrap()));
}

#[test]
fn fixture_ideals_match_slices() {
    for fx in shipped() {
        let q = fx.ring.ring();
        if q.nvars() > 3 || q.weights().iter().any(|&w| w != 1) {
            continue;
        }
        let p = q.field().p() as u64;
        let mut gens: Vec<Polynomial> = fx.ring.f().to_vec();
        gens.extend(fx.ideal.iter().cloned());
        let gb = ideal_basis(q, &gens).unwrap();
        let ogens: Vec<OPoly> = gens.iter().map(to_opoly).collect();
        for d in 0..=6 {
            let slice = IdealSlice::new(p, q.nvars(), &ogens, d);
            for m in monomials(q.nvars(), d) {
                let mono = OPoly::from([(m, 1)]);
                assert_eq!(gb.contains_poly(&from_opoly(q, &mono)), slice.contains(&mono), "{}", fx.name);
            }
        }
    }
}

#[test]
fn module_basis_over_two_components() {
    let q = Arc::new(Ring::new(32003, &["x", "y", "z"]).unwrap());
    let p = |s: &str| parse_polynomial(s, &q).unwrap();
    let k = q.field();
    let gens = vec![
        FreeElement::from_column(&[p("x"), p("y")], k),
        FreeElement::from_column(&[p("y^2"), p("z^2")], k),
        FreeElement::from_column(&[p("x*z"), p("0")], k),
    ];
    let gb = buchberger(&q, &[0, 0], &gens).unwrap();
    assert!(gb.s_pairs_reduce_to_zero());
    assert!(gens.iter().all(|g| gb.contains(g)));
    let syz = syzygy_module(&gb);
    assert!(generator_map(&gb).compose(&syz, k).is_zero());
}

#[test]
fn inhomogeneous_generators_are_rejected() {
    let q = Arc::new(Ring::new(7, &["x", "y"]).unwrap());
    let f = parse_polynomial("x^2 + y", &q).unwrap();
    assert!(matches!(ideal_basis(&q, &[f]), Err(AlgebraError::Inhomogeneous { .. })));
}

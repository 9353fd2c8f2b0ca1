use std::sync::Arc;

use crate::field_poly::{FreeElement, Polynomial, Ring};
use crate::groebner::basis::{divide_with_quotients, GroebnerBasis};
use crate::groebner::map::ModuleMap;
use crate::groebner::subquotient::minimal_subset;

/// Schreyer syzygies of the elements of `g`, one per S-pair, before trimming.
pub fn schreyer_syzygies(g: &GroebnerBasis) -> Vec<FreeElement> {
    let ring: &Arc<Ring> = g.ring();
    let k = ring.field();
    let elems = g.elements();
    let mut out = Vec::new();
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            let a = elems[i].leading().unwrap();
            let b = elems[j].leading().unwrap();
            if a.idx != b.idx {
                continue;
            }
            let lcm = a.mono.lcm(&b.mono, ring.weights());
            let qa = a.mono.quotient_of(&lcm).unwrap();
            let qb = b.mono.quotient_of(&lcm).unwrap();
            let ca = k.inv(a.coeff);
            let cb = k.inv(b.coeff);
            let s = elems[i].mul_term(ca, &qa, k).sub_mul_term(&elems[j], cb, &qb, k);
            let (quots, rem) = divide_with_quotients(ring, &s, elems);
            debug_assert!(rem.is_zero(), "input is not a Gröbner basis");
            let mut syz = FreeElement::from_poly(i, &Polynomial::term(ca, qa))
                .sub(&FreeElement::from_poly(j, &Polynomial::term(cb, qb)), k);
            for (n, q) in quots.iter().enumerate() {
                syz = syz.sub(&FreeElement::from_poly(n, q), k);
            }
            out.push(syz);
        }
    }
    out
}

/// First syzygy module of the generators of `g`, minimally generated.
///
/// Columns live in `Q^s` (`s = |g|`) with generator degrees equal to the
/// degrees of the basis elements; composing with the generator matrix of `g`
/// gives zero.
pub fn syzygy_module(g: &GroebnerBasis) -> ModuleMap {
    let degrees: Vec<i32> = g
        .elements()
        .iter()
        .map(|e| e.degree(g.shifts()).unwrap())
        .collect();
    let syz = schreyer_syzygies(g);
    let keep = minimal_subset(g.ring(), &degrees, &syz, &[]);
    let cols: Vec<FreeElement> = keep.into_iter().map(|n| syz[n].clone()).collect();
    let src: Vec<i32> = cols.iter().map(|c| c.degree(&degrees).unwrap()).collect();
    ModuleMap::new(src, degrees, 0, cols)
}

/// The generator matrix of `g` as a map `Q^s -> Q^r`.
pub fn generator_map(g: &GroebnerBasis) -> ModuleMap {
    let degrees: Vec<i32> = g
        .elements()
        .iter()
        .map(|e| e.degree(g.shifts()).unwrap())
        .collect();
    ModuleMap::new(degrees, g.shifts().to_vec(), 0, g.elements().to_vec())
}

use std::sync::Arc;

use crate::field_poly::{FreeElement, Polynomial, Ring};
use crate::groebner::basis::GroebnerBasis;
use crate::groebner::kernel::kernel_unchecked;
use crate::groebner::map::ModuleMap;

/// `(I : J) = {a : a*J ⊆ I}`.
pub fn ideal_quotient(i: &GroebnerBasis, j: &[Polynomial]) -> GroebnerBasis {
    let ring: &Arc<Ring> = i.ring();
    let k = ring.field();
    let js: Vec<&Polynomial> = j.iter().filter(|p| !p.is_zero()).collect();
    if js.is_empty() {
        return GroebnerBasis::compute(ring, &[0], &[FreeElement::unit(0, ring)]);
    }
    let target: Vec<i32> = js.iter().map(|p| -(p.degree().unwrap() as i32)).collect();
    let col = FreeElement::from_components(js.iter().enumerate().map(|(n, p)| (n, (*p).clone())), k);
    let phi = ModuleMap::new(vec![0], target, 0, vec![col]);
    let rels: Vec<FreeElement> = (0..js.len())
        .flat_map(|n| i.elements().iter().map(move |g| g.reindex(|_| n)))
        .collect();
    let ker = kernel_unchecked(ring, &phi, &rels);
    GroebnerBasis::compute(ring, &[0], &ker)
}

/// `dim Q/I`, the largest set of variables no leading monomial of `I` lives on.
/// Returns -1 for the unit ideal.
pub fn krull_dimension(i: &GroebnerBasis) -> i32 {
    let n = i.ring().nvars();
    let leads: Vec<u64> = i
        .leading_monomials()
        .into_iter()
        .map(|(_, m)| m.support().fold(0u64, |acc, v| acc | (1 << v)))
        .collect();
    if leads.contains(&0) {
        return -1;
    }
    let mut best = 0;
    for s in 0u64..(1 << n) {
        let size = s.count_ones() as i32;
        if size > best && leads.iter().all(|&l| l & !s != 0) {
            best = size;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_poly::parse_polynomial;
    use crate::groebner::basis::ideal_basis;

    fn gb(r: &Arc<Ring>, s: &[&str]) -> GroebnerBasis {
        let ps: Vec<_> = s.iter().map(|x| parse_polynomial(x, r).unwrap()).collect();
        ideal_basis(r, &ps).unwrap()
    }

    fn ps(r: &Arc<Ring>, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|x| parse_polynomial(x, r).unwrap()).collect()
    }

    #[test]
    fn quotient_examples() {
        let r = Arc::new(Ring::new(5, &["x", "y"]).unwrap());
        let q = ideal_quotient(&gb(&r, &["x^2", "x*y"]), &ps(&r, &["x"]));
        assert!(q.same_submodule(&gb(&r, &["x", "y"])));
        let i = gb(&r, &["x^2", "x*y"]);
        assert!(ideal_quotient(&i, &ps(&r, &["1"])).same_submodule(&i));
        let q2 = ideal_quotient(&gb(&r, &["x"]), &ps(&r, &["y"]));
        assert!(q2.same_submodule(&gb(&r, &["x"])));
    }

    #[test]
    fn quotient_times_j_inside_i() {
        let r = Arc::new(Ring::new(7, &["x", "y", "z"]).unwrap());
        let k = r.field();
        let i = gb(&r, &["x^2*y", "y^2*z", "x*z^2"]);
        let j = ps(&r, &["x*y", "z"]);
        let q = ideal_quotient(&i, &j);
        for a in q.polynomials() {
            for b in &j {
                assert!(i.contains_poly(&a.mul(b, k)));
            }
        }
    }

    #[test]
    fn dimensions() {
        let r = Arc::new(Ring::new(5, &["x", "y"]).unwrap());
        assert_eq!(krull_dimension(&gb(&r, &[])), 2);
        assert_eq!(krull_dimension(&gb(&r, &["x^2", "y^3"])), 0);
        assert_eq!(krull_dimension(&gb(&r, &["x*y"])), 1);
        assert_eq!(krull_dimension(&gb(&r, &["1"])), -1);
    }
}

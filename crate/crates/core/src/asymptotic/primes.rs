use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field_poly::{FreeElement, Polynomial};
use crate::graded_ring::{ModulePresentation, RingPresentation};
use crate::groebner::basis::GroebnerBasis;
use crate::groebner::kernel::kernel_unchecked;
use crate::groebner::map::ModuleMap;

/// Why a candidate ideal is known to be prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimeCertificate {
    /// Generated by variables and containing `(f)`.
    MonomialPrime,
    /// Declared prime by the fixture author.
    FixtureAsserted,
    Uncertified,
}

/// A homogeneous prime of `A`, given by generators in `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdeal {
    pub generators: Vec<Polynomial>,
    pub label: String,
    pub certificate: PrimeCertificate,
}

impl PrimeIdeal {
    /// The prime generated by the variables with indices in `vars`.
    pub fn monomial(ring: &RingPresentation, vars: &[usize]) -> Self {
        let q = ring.ring();
        let label = if vars.is_empty() {
            "(0)".to_string()
        } else {
            let names: Vec<&str> = vars.iter().map(|&v| q.vars()[v].as_str()).collect();
            format!("({})", names.join(","))
        };
        PrimeIdeal {
            generators: vars.iter().map(|&v| Polynomial::var(q, v)).collect(),
            label,
            certificate: PrimeCertificate::MonomialPrime,
        }
    }
}

/// Every prime `(S)` generated by a set of variables that contains `(f)`.
///
/// `f ∈ (S)` iff every term of every `f_j` involves a variable of `S`; the
/// subsets failing this are not ideals of `A` (for `S = ∅`, `(0)` is not prime
/// when `f ≠ 0`). Ordered by size, then lexicographically.
pub fn monomial_prime_candidates(ring: &RingPresentation) -> Vec<PrimeIdeal> {
    let n = ring.ring().nvars();
    let term_masks: Vec<u64> = ring
        .f()
        .iter()
        .flat_map(|p| p.terms().iter().map(|t| t.mono.support().fold(0u64, |a, v| a | (1 << v))))
        .collect();
    let mut subsets: Vec<Vec<usize>> = (0u64..(1 << n))
        .filter(|s| term_masks.iter().all(|m| m & s != 0))
        .map(|s| (0..n).filter(|v| s & (1 << v) != 0).collect())
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subsets.iter().map(|s| PrimeIdeal::monomial(ring, s)).collect()
}

/// Generators of `(0 :_E J)` as elements of the ambient free module of `E`.
pub fn colon_submodule(e: &ModulePresentation, j: &[Polynomial]) -> Vec<FreeElement> {
    let q = e.ring().ring();
    let k = q.field();
    let g = e.rank();
    let js: Vec<&Polynomial> = j.iter().filter(|p| !p.is_zero()).collect();
    if js.is_empty() {
        return (0..g).map(|i| FreeElement::unit(i, q)).collect();
    }
    let target: Vec<i32> = js
        .iter()
        .flat_map(|p| e.degrees().iter().map(move |d| d + p.degree().unwrap() as i32))
        .collect();
    let columns = (0..g)
        .map(|i| FreeElement::from_components(js.iter().enumerate().map(|(b, p)| (b * g + i, (*p).clone())), k))
        .collect();
    let phi = ModuleMap::new(e.degrees().to_vec(), target, 0, columns);
    let rels: Vec<FreeElement> = (0..js.len())
        .flat_map(|b| e.relations().iter().map(move |r| r.reindex(|i| b * g + i)))
        .collect();
    kernel_unchecked(q, &phi, &rels)
}

/// Generators of `ann_A(span(elems))` inside `E`, as polynomials of `Q`.
pub fn annihilator(e: &ModulePresentation, elems: &[FreeElement]) -> Vec<Polynomial> {
    let q = e.ring().ring();
    let k = q.field();
    let g = e.rank();
    let elems: Vec<&FreeElement> = elems.iter().filter(|v| !v.is_zero()).collect();
    if elems.is_empty() {
        return vec![Polynomial::one(q)];
    }
    let target: Vec<i32> = elems
        .iter()
        .flat_map(|v| {
            let dv = v.degree(e.degrees()).unwrap();
            e.degrees().iter().map(move |d| d - dv)
        })
        .collect();
    let mut col = FreeElement::zero();
    for (s, v) in elems.iter().enumerate() {
        col = col.add(&v.reindex(|i| s * g + i), k);
    }
    let phi = ModuleMap::new(vec![0], target, 0, vec![col]);
    let rels: Vec<FreeElement> = (0..elems.len())
        .flat_map(|s| e.relations().iter().map(move |r| r.reindex(|i| s * g + i)))
        .collect();
    kernel_unchecked(q, &phi, &rels)
        .into_iter()
        .map(|v| v.component(0))
        .collect()
}

/// `p ∈ Ass(E)` iff `ann(0 :_E p) ⊆ p`.
pub fn is_associated_prime(p: &PrimeIdeal, e: &ModulePresentation) -> Result<bool> {
    if p.certificate == PrimeCertificate::Uncertified {
        return Err(AlgebraError::UncertifiedPrime(p.label.clone()));
    }
    if e.is_zero() {
        return Ok(false);
    }
    let ring = e.ring();
    let q = ring.ring();
    let h = colon_submodule(e, &p.generators);
    let ann = annihilator(e, &h);
    let mut pf: Vec<FreeElement> = p.generators.iter().map(|g| FreeElement::from_poly(0, g)).collect();
    pf.extend(ring.f_multiples(1));
    let gb = GroebnerBasis::compute(q, &[0], &pf);
    if gb.is_whole_module() {
        return Err(AlgebraError::Validation(format!("candidate {} is not proper", p.label)));
    }
    Ok(ann.iter().all(|a| gb.contains_poly(a)))
}

/// `Ass(E) ∩ candidates`, in candidate order.
pub fn associated_primes(e: &ModulePresentation, candidates: &[PrimeIdeal]) -> Result<Vec<PrimeIdeal>> {
    let mut out = Vec::new();
    for p in candidates {
        if is_associated_prime(p, e)? {
            out.push(p.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_poly::{parse_polynomial, Ring};
    use std::sync::Arc;

    fn ring(p: u64, vars: &[&str], f: &[&str]) -> Arc<RingPresentation> {
        let r = Arc::new(Ring::new(p, vars).unwrap());
        let f = f.iter().map(|s| parse_polynomial(s, &r).unwrap()).collect();
        Arc::new(RingPresentation::from_arc(r, f).unwrap())
    }

    fn labels(ps: &[PrimeIdeal]) -> Vec<&str> {
        ps.iter().map(|p| p.label.as_str()).collect()
    }

    #[test]
    fn candidate_universes() {
        assert_eq!(
            labels(&monomial_prime_candidates(&ring(5, &["x", "y"], &[]))),
            vec!["(0)", "(x)", "(y)", "(x,y)"]
        );
        assert_eq!(labels(&monomial_prime_candidates(&ring(2, &["x"], &[]))), vec!["(0)", "(x)"]);
        assert_eq!(labels(&monomial_prime_candidates(&ring(5, &["x"], &["x^2"]))), vec!["(x)"]);
    }

    #[test]
    fn classical_embedded_prime() {
        let a = ring(5, &["x", "y"], &[]);
        let q = a.ring().clone();
        let e = ModulePresentation::cyclic(
            a.clone(),
            &[parse_polynomial("x^2", &q).unwrap(), parse_polynomial("x*y", &q).unwrap()],
        )
        .unwrap();
        let cands = monomial_prime_candidates(&a);
        assert!(is_associated_prime(&cands[1], &e).unwrap());
        assert!(!is_associated_prime(&cands[2], &e).unwrap());
        assert_eq!(labels(&associated_primes(&e, &cands).unwrap()), vec!["(x)", "(x,y)"]);
    }

    #[test]
    fn trivial_cases() {
        let a = ring(5, &["x", "y"], &[]);
        let q = a.ring().clone();
        let cands = monomial_prime_candidates(&a);
        let k = ModulePresentation::residue_field(a.clone());
        assert_eq!(labels(&associated_primes(&k, &cands).unwrap()), vec!["(x,y)"]);
        let free = ModulePresentation::free(a.clone(), vec![0, 1]);
        assert_eq!(labels(&associated_primes(&free, &cands).unwrap()), vec!["(0)"]);
        let zero = ModulePresentation::cyclic(a, &[Polynomial::one(&q)]).unwrap();
        assert!(associated_primes(&zero, &cands).unwrap().is_empty());
    }

    #[test]
    fn uncertified_rejected() {
        let a = ring(5, &["x", "y"], &[]);
        let mut p = PrimeIdeal::monomial(&a, &[0]);
        p.certificate = PrimeCertificate::Uncertified;
        let k = ModulePresentation::residue_field(a);
        assert!(matches!(
            is_associated_prime(&p, &k),
            Err(AlgebraError::UncertifiedPrime(_))
        ));
    }
}

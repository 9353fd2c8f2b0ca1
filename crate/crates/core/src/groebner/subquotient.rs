use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field_poly::{FreeElement, Monomial, Ring};
use crate::graded_ring::{ModulePresentation, RingPresentation};
use crate::groebner::basis::{check_homogeneous, reduce_full, Builder};
use crate::groebner::kernel::kernel_unchecked;
use crate::groebner::map::ModuleMap;

/// Kills every term of `v` matching a pivot lead; pivots have distinct leads.
fn reduce_linear(ring: &Ring, mut v: FreeElement, pivots: &[FreeElement], index: &HashMap<(u32, Monomial), usize>) -> FreeElement {
    let k = ring.field();
    loop {
        let hit = v
            .terms()
            .iter()
            .find_map(|t| index.get(&(t.idx, t.mono.clone())).map(|&n| (n, t.coeff)));
        match hit {
            Some((n, c)) => v = v.sub(&pivots[n].scale(c, k), k),
            None => return v,
        }
    }
}

/// Indices of a minimal generating subset of `(span(gens) + span(base)) / span(base)`.
///
/// Graded Nakayama: generators are visited by increasing degree, and one is
/// kept iff it is independent modulo the base plus everything kept before it.
/// Returned indices are ascending.
pub fn minimal_subset(ring: &Arc<Ring>, shifts: &[i32], gens: &[FreeElement], base: &[FreeElement]) -> Vec<usize> {
    let mut order: Vec<(i32, usize)> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(n, g)| (g.degree(shifts).unwrap(), n))
        .collect();
    order.sort();
    let mut b = Builder::new(ring, shifts);
    for g in base {
        b.add(g);
    }
    b.run();
    let mut kept = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let deg = order[start].0;
        let mut end = start;
        while end < order.len() && order[end].0 == deg {
            end += 1;
        }
        let mut pivots: Vec<FreeElement> = Vec::new();
        let mut index: HashMap<(u32, Monomial), usize> = HashMap::new();
        let mut new_here = Vec::new();
        for &(_, n) in &order[start..end] {
            let v = reduce_full(ring, &gens[n], b.basis());
            let v = reduce_linear(ring, v, &pivots, &index);
            if !v.is_zero() {
                let v = v.monic(ring.field());
                let lt = v.leading().unwrap();
                index.insert((lt.idx, lt.mono.clone()), pivots.len());
                pivots.push(v);
                new_here.push(n);
            }
        }
        for &n in &new_here {
            b.add(&gens[n]);
        }
        b.run();
        kept.extend(new_here);
        start = end;
    }
    kept.sort();
    kept
}

/// Removes generators killed by unit entries of the relation matrix.
///
/// Returns the surviving generator indices and the relations rewritten on them.
pub fn prune_presentation(ring: &Ring, degrees: &[i32], relations: &[FreeElement]) -> (Vec<usize>, Vec<FreeElement>) {
    let k = ring.field();
    let mut rels: Vec<FreeElement> = relations.iter().filter(|r| !r.is_zero()).cloned().collect();
    let mut alive = vec![true; degrees.len()];
    loop {
        let pivot = rels.iter().enumerate().find_map(|(c, r)| {
            r.terms()
                .iter()
                .filter(|t| t.mono.is_one())
                .map(|t| (t.idx as usize, t.coeff))
                .min()
                .map(|(i, u)| (c, i, u))
        });
        let Some((c, i, u)) = pivot else { break };
        let r = rels.remove(c);
        let uinv = k.inv(u);
        rels = rels
            .into_iter()
            .map(|s| {
                let si = s.component(i);
                if si.is_zero() {
                    s
                } else {
                    s.sub(&r.mul_poly(&si.scale(uinv, k), k), k)
                }
            })
            .filter(|s| !s.is_zero())
            .collect();
        alive[i] = false;
    }
    let kept: Vec<usize> = (0..degrees.len()).filter(|&i| alive[i]).collect();
    let mut new_index = vec![usize::MAX; degrees.len()];
    for (n, &i) in kept.iter().enumerate() {
        new_index[i] = n;
    }
    let rels = rels.into_iter().map(|r| r.reindex(|i| new_index[i])).collect();
    (kept, rels)
}

/// `ker / (im + ambient relations)` together with its embedding data.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub presentation: ModulePresentation,
    pub ambient_degrees: Vec<i32>,
    /// Minimal generators, as elements of the ambient free module.
    pub generators: Vec<FreeElement>,
    /// Spanning set of `im + ambient relations`.
    pub denominator: Vec<FreeElement>,
}

impl Subquotient {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Presentation of `span(ker) / (span(im) + span(ambient_relations))` over `A`.
///
/// The ambient relations are closed under multiplication by `f` first, so the
/// result is an `A`-module. Generators are trimmed to a minimal set.
pub fn subquotient_presentation(
    ring: &Arc<RingPresentation>,
    ambient_degrees: &[i32],
    ker_gens: &[FreeElement],
    im_gens: &[FreeElement],
    ambient_relations: &[FreeElement],
) -> Result<Subquotient> {
    let q = ring.ring();
    check_homogeneous("subquotient_presentation", q, ambient_degrees, ker_gens)?;
    check_homogeneous("subquotient_presentation", q, ambient_degrees, im_gens)?;
    check_homogeneous("subquotient_presentation", q, ambient_degrees, ambient_relations)?;
    let mut rels: Vec<FreeElement> = ambient_relations.to_vec();
    rels.extend(ring.f_multiples(ambient_degrees.len()));
    let mut span = Builder::new(q, ambient_degrees);
    for g in ker_gens.iter().chain(&rels) {
        span.add(g);
    }
    span.run();
    for v in im_gens {
        if !reduce_full(q, v, span.basis()).is_zero() {
            return Err(AlgebraError::ContainmentViolated {
                operation: "subquotient_presentation",
                element: v.display(q),
                degree: v.degree(ambient_degrees).unwrap_or(0),
            });
        }
    }
    Ok(subquotient_unchecked(ring, ambient_degrees, ker_gens, im_gens, &rels))
}

/// As [`subquotient_presentation`], trusting that `ambient_relations` already
/// contains the `f`-multiples and that `im ⊆ ker + relations`.
pub(crate) fn subquotient_unchecked(
    ring: &Arc<RingPresentation>,
    ambient_degrees: &[i32],
    ker_gens: &[FreeElement],
    im_gens: &[FreeElement],
    ambient_relations: &[FreeElement],
) -> Subquotient {
    let q = ring.ring();
    let mut denominator: Vec<FreeElement> = im_gens.iter().filter(|v| !v.is_zero()).cloned().collect();
    denominator.extend(ambient_relations.iter().filter(|v| !v.is_zero()).cloned());
    let keep = minimal_subset(q, ambient_degrees, ker_gens, &denominator);
    let generators: Vec<FreeElement> = keep.iter().map(|&n| ker_gens[n].clone()).collect();
    let degrees: Vec<i32> = generators
        .iter()
        .map(|g| g.degree(ambient_degrees).unwrap())
        .collect();
    let relations = if generators.is_empty() {
        Vec::new()
    } else {
        let phi = ModuleMap::new(degrees.clone(), ambient_degrees.to_vec(), 0, generators.clone());
        let rel = kernel_unchecked(q, &phi, &denominator);
        let keep = minimal_subset(q, &degrees, &rel, &[]);
        keep.into_iter().map(|n| rel[n].clone()).collect()
    };
    Subquotient {
        presentation: ModulePresentation::from_parts(ring.clone(), degrees, relations),
        ambient_degrees: ambient_degrees.to_vec(),
        generators,
        denominator,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_poly::parse_polynomial;

    fn a_mod_x2() -> Arc<RingPresentation> {
        let r = Ring::new(5, &["x"]).unwrap();
        let f = parse_polynomial("x^2", &r).unwrap();
        Arc::new(RingPresentation::new(r, vec![f]).unwrap())
    }

    #[test]
    fn ker_equals_im_gives_zero() {
        let a = a_mod_x2();
        let x = FreeElement::from_poly(0, &parse_polynomial("x", a.ring()).unwrap());
        let s = subquotient_presentation(&a, &[0], &[x.clone()], &[x], &[]).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.presentation.minimal_generator_count(), 0);
    }

    #[test]
    fn ideal_x_is_residue_field_shifted() {
        let a = a_mod_x2();
        let x = FreeElement::from_poly(0, &parse_polynomial("x", a.ring()).unwrap());
        let s = subquotient_presentation(&a, &[0], &[x], &[], &[]).unwrap();
        assert_eq!(s.presentation.degrees(), &[1]);
        assert_eq!(s.presentation.hilbert_function(1), 1);
        assert_eq!(s.presentation.hilbert_function(2), 0);
        assert_eq!(s.presentation.hilbert_function(0), 0);
    }

    #[test]
    fn cyclic_quotient() {
        let r = Ring::new(5, &["x", "y"]).unwrap();
        let a = Arc::new(RingPresentation::new(r, vec![]).unwrap());
        let q = a.ring();
        let e = FreeElement::unit(0, q);
        let xe = FreeElement::from_poly(0, &parse_polynomial("x", q).unwrap());
        let s = subquotient_presentation(&a, &[0], &[e], &[xe], &[]).unwrap();
        // A/(x): one generator in degree 0, Hilbert function 1 in every degree
        assert_eq!(s.presentation.degrees(), &[0]);
        for d in 0..5 {
            assert_eq!(s.presentation.hilbert_function(d), 1);
        }
    }

    #[test]
    fn containment_violation_reported() {
        let a = a_mod_x2();
        let q = a.ring();
        let x = FreeElement::from_poly(0, &parse_polynomial("x", q).unwrap());
        let one = FreeElement::unit(0, q);
        let err = subquotient_presentation(&a, &[0], &[x], &[one], &[]).unwrap_err();
        assert!(matches!(err, AlgebraError::ContainmentViolated { .. }));
    }

    #[test]
    fn pruning_removes_unit_relations() {
        let r = Ring::new(5, &["x", "y"]).unwrap();
        let k = r.field();
        // <e0, e1 | e0 - x*e1 (deg 0?), ...>: use degrees (1, 0) so e0 - x e1 is homogeneous
        let rel = FreeElement::from_column(
            &[parse_polynomial("1", &r).unwrap(), parse_polynomial("-x", &r).unwrap()],
            k,
        );
        let rel2 = FreeElement::from_poly(1, &parse_polynomial("y^2", &r).unwrap());
        let (kept, rels) = prune_presentation(&r, &[1, 0], &[rel, rel2.clone()]);
        assert_eq!(kept, vec![1]);
        assert_eq!(rels, vec![rel2.reindex(|_| 0)]);
    }
}

use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field_poly::{FreeElement, Polynomial, Ring};
use crate::groebner::basis::{check_homogeneous, GroebnerBasis};
use crate::groebner::map::ModuleMap;

/// Generators of `{v : phi(v) ∈ span(relations_target)}`.
///
/// Computed from an elimination basis of the graph module
/// `{(phi(e_c), e_c)} ∪ {(r, 0)}` in position-over-term order: the basis
/// elements with vanishing target block generate the kernel.
pub fn kernel_of_map(ring: &Arc<Ring>, phi: &ModuleMap, relations_target: &[FreeElement]) -> Result<Vec<FreeElement>> {
    phi.validate("kernel_of_map", ring)?;
    check_homogeneous("kernel_of_map", ring, &phi.target_degrees, relations_target)?;
    Ok(kernel_unchecked(ring, phi, relations_target))
}

pub(crate) fn kernel_unchecked(ring: &Arc<Ring>, phi: &ModuleMap, relations_target: &[FreeElement]) -> Vec<FreeElement> {
    let m = phi.target_rank();
    let mut shifts = phi.target_degrees.clone();
    shifts.extend((0..phi.source_rank()).map(|c| phi.column_degree(c)));
    let mut gens = Vec::with_capacity(phi.source_rank() + relations_target.len());
    for (c, col) in phi.columns.iter().enumerate() {
        gens.push(col.add(&FreeElement::unit(m + c, ring), ring.field()));
    }
    gens.extend(relations_target.iter().filter(|r| !r.is_zero()).cloned());
    let gb = GroebnerBasis::compute(ring, &shifts, &gens);
    gb.elements()
        .iter()
        .filter(|g| g.leading().unwrap().idx as usize >= m)
        .map(|g| g.slice(m, m + phi.source_rank()))
        .collect()
}

/// Expresses elements of `span(gens) + span(extra)` through `gens`.
pub struct Lifter {
    ring: Arc<Ring>,
    target_rank: usize,
    ngens: usize,
    gb: GroebnerBasis,
}

impl Lifter {
    pub fn new(ring: &Arc<Ring>, target_degrees: &[i32], gens: &[FreeElement], extra: &[FreeElement]) -> Result<Self> {
        check_homogeneous("lift", ring, target_degrees, gens)?;
        check_homogeneous("lift", ring, target_degrees, extra)?;
        Ok(Self::new_unchecked(ring, target_degrees, gens, extra))
    }

    pub(crate) fn new_unchecked(
        ring: &Arc<Ring>,
        target_degrees: &[i32],
        gens: &[FreeElement],
        extra: &[FreeElement],
    ) -> Self {
        let m = target_degrees.len();
        let mut shifts = target_degrees.to_vec();
        shifts.extend(gens.iter().map(|g| g.degree(target_degrees).unwrap_or(0)));
        let mut aug: Vec<FreeElement> = gens
            .iter()
            .enumerate()
            .map(|(c, g)| g.add(&FreeElement::unit(m + c, ring), ring.field()))
            .collect();
        aug.extend(extra.iter().filter(|e| !e.is_zero()).cloned());
        Lifter {
            ring: ring.clone(),
            target_rank: m,
            ngens: gens.len(),
            gb: GroebnerBasis::compute(ring, &shifts, &aug),
        }
    }

    /// Coefficients `a` with `w - sum a_c gens[c] ∈ span(extra)`, or `None`
    /// when `w` is outside the span.
    pub fn lift(&self, w: &FreeElement) -> Option<Vec<Polynomial>> {
        let k = self.ring.field();
        let r = self.gb.normal_form(w);
        if r.terms().iter().any(|t| (t.idx as usize) < self.target_rank) {
            return None;
        }
        let coeffs = r.neg(k);
        Some(
            (0..self.ngens)
                .map(|c| coeffs.component(self.target_rank + c))
                .collect(),
        )
    }

    pub fn lift_or_err(&self, w: &FreeElement, operation: &'static str) -> Result<Vec<Polynomial>> {
        self.lift(w).ok_or_else(|| AlgebraError::ContainmentViolated {
            operation,
            element: w.display(&self.ring),
            degree: w.leading().map(|t| t.mono.weight() as i32).unwrap_or(0),
        })
    }
}

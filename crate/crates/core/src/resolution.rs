//! Truncated minimal graded free resolutions over `A = Q/(f)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field_poly::FreeElement;
use crate::graded_ring::{ModulePresentation, RingPresentation};
use crate::groebner::basis::{reduce_full, Builder};
use crate::groebner::kernel::kernel_unchecked;
use crate::groebner::map::{MatrixDump, ModuleMap};
use crate::groebner::subquotient::minimal_subset;

/// `F_L -> ... -> F_1 -> F_0 -> M`, entries stored as normal forms modulo `(f)`.
#[derive(Clone, Debug)]
pub struct Resolution {
    module: ModulePresentation,
    degrees: Vec<Vec<i32>>,
    differentials: Vec<ModuleMap>,
}

/// Default truncation length `2c + 6`.
pub fn default_length(codim: usize) -> usize {
    2 * codim + 6
}

fn reduce_map(ring: &RingPresentation, cols: Vec<FreeElement>) -> Vec<FreeElement> {
    cols.iter().map(|c| ring.reduce_element(c)).collect()
}

/// Minimal graded free resolution of `M`, truncated at homological degree `length`.
pub fn resolve(module: &ModulePresentation, length: usize) -> Result<Resolution> {
    if length == 0 {
        return Err(AlgebraError::Validation("resolution length must be at least 1".into()));
    }
    let ring = module.ring().clone();
    let q = ring.ring().clone();
    let (m, _) = module.pruned();
    let mut degrees = vec![m.degrees().to_vec()];
    let mut differentials = Vec::with_capacity(length);

    // d_1: minimal generators of the relations modulo f Q^{b_0}
    let base = ring.f_multiples(degrees[0].len());
    let keep = minimal_subset(&q, &degrees[0], m.relations(), &base);
    let cols: Vec<FreeElement> = keep.iter().map(|&n| m.relations()[n].clone()).collect();
    let src: Vec<i32> = cols.iter().map(|c| c.degree(&degrees[0]).unwrap()).collect();
    differentials.push(ModuleMap::new(src.clone(), degrees[0].clone(), 0, reduce_map(&ring, cols)));
    degrees.push(src);

    for i in 1..length {
        let d = &differentials[i - 1];
        let target_f = ring.f_multiples(d.target_rank());
        let z = kernel_unchecked(&q, d, &target_f);
        let base = ring.f_multiples(d.source_rank());
        let keep = minimal_subset(&q, &degrees[i], &z, &base);
        let cols: Vec<FreeElement> = keep.iter().map(|&n| z[n].clone()).collect();
        let src: Vec<i32> = cols.iter().map(|c| c.degree(&degrees[i]).unwrap()).collect();
        differentials.push(ModuleMap::new(src.clone(), degrees[i].clone(), 0, reduce_map(&ring, cols)));
        degrees.push(src);
    }
    Ok(Resolution {
        module: m,
        degrees,
        differentials,
    })
}

impl Resolution {
    /// Hand-assembled complex; `differentials[i-1]` is `d_i : F_i -> F_{i-1}`.
    pub fn from_parts(module: ModulePresentation, differentials: Vec<ModuleMap>) -> Result<Self> {
        if differentials.is_empty() {
            return Err(AlgebraError::Validation("a complex needs at least one differential".into()));
        }
        let q = module.ring().ring().clone();
        let mut degrees = vec![differentials[0].target_degrees.clone()];
        for (n, d) in differentials.iter().enumerate() {
            d.validate("Resolution::from_parts", &q)?;
            if d.target_degrees != degrees[n] {
                return Err(AlgebraError::ShapeMismatch {
                    operation: "Resolution::from_parts",
                    detail: format!("d_{} does not land in F_{n}", n + 1),
                });
            }
            degrees.push(d.source_degrees.clone());
        }
        Ok(Resolution {
            module,
            degrees,
            differentials,
        })
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        self.module.ring()
    }

    /// The (pruned) module being resolved.
    pub fn module(&self) -> &ModulePresentation {
        &self.module
    }

    pub fn length(&self) -> usize {
        self.differentials.len()
    }

    /// `b_0, ..., b_L`.
    pub fn ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    /// Generator degrees of `F_i`.
    pub fn degrees(&self, i: usize) -> &[i32] {
        &self.degrees[i]
    }

    /// `d_i : F_i -> F_{i-1}` for `1 <= i <= L`.
    pub fn differential(&self, i: usize) -> &ModuleMap {
        &self.differentials[i - 1]
    }

    pub fn differentials(&self) -> &[ModuleMap] {
        &self.differentials
    }

    pub fn dump(&self) -> ResolutionDump {
        let q = self.ring().ring();
        ResolutionDump {
            ranks: self.ranks(),
            shifts: self.degrees.clone(),
            differentials: self.differentials.iter().map(|d| d.dump(q)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionDump {
    pub ranks: Vec<usize>,
    pub shifts: Vec<Vec<i32>>,
    pub differentials: Vec<MatrixDump>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComplexCheck {
    /// `d_i ∘ d_{i+1} ≠ 0`.
    Composition,
    /// Kernel and image disagree at a spot.
    Exactness,
    /// A unit entry in a differential.
    Minimality,
}

/// One failed check. `spot` is the homological index; `column` indexes the
/// offending column (of `d_{spot+1}`, or of the kernel generators for a
/// kernel-not-in-image failure).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexViolation {
    pub check: ComplexCheck,
    pub spot: usize,
    pub column: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexReport {
    pub violations: Vec<ComplexViolation>,
}

impl ComplexReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, check: ComplexCheck) -> bool {
        self.violations.iter().any(|v| v.check == check)
    }
}

/// Certifies `d² = 0`, exactness at spots `1..L-1`, and minimality.
pub fn verify_complex(r: &Resolution) -> ComplexReport {
    let ring = r.ring();
    let q = ring.ring();
    let k = q.field();
    let mut violations = Vec::new();
    for (n, d) in r.differentials.iter().enumerate() {
        for (c, col) in d.columns.iter().enumerate() {
            if col.terms().iter().any(|t| t.mono.is_one()) {
                violations.push(ComplexViolation {
                    check: ComplexCheck::Minimality,
                    spot: n + 1,
                    column: c,
                });
            }
        }
    }
    for i in 1..r.length() {
        let di = r.differential(i);
        let dn = r.differential(i + 1);
        let comp = di.compose(dn, k);
        for (c, col) in comp.columns.iter().enumerate() {
            if !ring.reduce_element(col).is_zero() {
                violations.push(ComplexViolation {
                    check: ComplexCheck::Composition,
                    spot: i,
                    column: c,
                });
            }
        }
        let kernel = kernel_unchecked(q, di, &ring.f_multiples(di.target_rank()));
        let mut ker_span = Builder::new(q, r.degrees(i));
        for v in &kernel {
            ker_span.add(v);
        }
        ker_span.run();
        let mut im_span = Builder::new(q, r.degrees(i));
        for v in dn.columns.iter().chain(&ring.f_multiples(di.source_rank())) {
            im_span.add(v);
        }
        im_span.run();
        for (c, col) in dn.columns.iter().enumerate() {
            if !reduce_full(q, col, ker_span.basis()).is_zero() {
                violations.push(ComplexViolation {
                    check: ComplexCheck::Exactness,
                    spot: i,
                    column: c,
                });
            }
        }
        for (c, v) in kernel.iter().enumerate() {
            if !reduce_full(q, v, im_span.basis()).is_zero() {
                violations.push(ComplexViolation {
                    check: ComplexCheck::Exactness,
                    spot: i,
                    column: c,
                });
            }
        }
    }
    ComplexReport { violations }
}

/// `mu(E) = dim_k E/mE`.
pub fn minimal_generator_count(e: &ModulePresentation) -> usize {
    e.minimal_generator_count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_poly::{parse_polynomial, Polynomial, Ring};

    fn ring(p: u64, vars: &[&str], f: &[&str]) -> Arc<RingPresentation> {
        let r = Arc::new(Ring::new(p, vars).unwrap());
        let f = f.iter().map(|s| parse_polynomial(s, &r).unwrap()).collect();
        Arc::new(RingPresentation::from_arc(r, f).unwrap())
    }

    #[test]
    fn hypersurface_residue_field() {
        let a = ring(5, &["x"], &["x^2"]);
        let k = ModulePresentation::residue_field(a.clone());
        let r = resolve(&k, 4).unwrap();
        assert_eq!(r.ranks(), vec![1; 5]);
        let x = parse_polynomial("x", a.ring()).unwrap();
        for i in 1..=4 {
            let d = r.differential(i);
            let e = d.entry(0, 0);
            assert_eq!(e.monic(a.ring().field()), x);
        }
        assert!(verify_complex(&r).is_ok());
    }

    #[test]
    fn free_module_resolution_stops() {
        let a = ring(5, &["x"], &["x^2"]);
        let m = ModulePresentation::free(a, vec![0]);
        let r = resolve(&m, 3).unwrap();
        assert_eq!(r.ranks(), vec![1, 0, 0, 0]);
        assert!(verify_complex(&r).is_ok());
    }

    #[test]
    fn two_variable_hypersurface() {
        let a = ring(2, &["x", "y"], &["x^2"]);
        let k = ModulePresentation::residue_field(a);
        let r = resolve(&k, 4).unwrap();
        assert_eq!(r.ranks(), vec![1, 2, 2, 2, 2]);
        assert!(verify_complex(&r).is_ok());
    }

    #[test]
    fn polynomial_ring_koszul_terminates() {
        let a = ring(7, &["x", "y", "z"], &[]);
        let k = ModulePresentation::residue_field(a);
        let r = resolve(&k, 5).unwrap();
        assert_eq!(r.ranks(), vec![1, 3, 3, 1, 0, 0]);
        assert!(verify_complex(&r).is_ok());
    }

    #[test]
    fn negative_controls() {
        let a = ring(5, &["x"], &["x^2"]);
        let q = a.ring().clone();
        let k = ModulePresentation::residue_field(a.clone());
        let x = FreeElement::from_poly(0, &parse_polynomial("x", &q).unwrap());
        let one = FreeElement::from_poly(0, &Polynomial::one(&q));
        // d_2 = [1] is not inside ker d_1 = (x), and is a unit
        let d1 = ModuleMap::new(vec![1], vec![0], 0, vec![x.clone()]);
        let d2 = ModuleMap::new(vec![1], vec![1], 0, vec![one]);
        let bad = Resolution::from_parts(k.clone(), vec![d1.clone(), d2]).unwrap();
        let rep = verify_complex(&bad);
        assert!(rep.has(ComplexCheck::Exactness));
        assert!(rep.has(ComplexCheck::Composition));
        assert!(rep.has(ComplexCheck::Minimality));
        // d_2 = 0 is a complex but not exact
        let d2 = ModuleMap::zero(vec![2], vec![1]);
        let rep = verify_complex(&Resolution::from_parts(k, vec![d1, d2]).unwrap());
        assert!(rep.has(ComplexCheck::Exactness));
        assert!(!rep.has(ComplexCheck::Composition));
    }

    #[test]
    fn generator_counts() {
        let a = ring(5, &["x", "y"], &[]);
        let q = a.ring().clone();
        let k = ModulePresentation::residue_field(a.clone());
        assert_eq!(minimal_generator_count(&k), 1);
        let zero = ModulePresentation::cyclic(a.clone(), &[Polynomial::one(&q)]).unwrap();
        assert_eq!(minimal_generator_count(&zero), 0);
        // (x, y) presented by its Koszul relation
        let rel = FreeElement::from_column(
            &[parse_polynomial("y", &q).unwrap(), parse_polynomial("-x", &q).unwrap()],
            q.field(),
        );
        let m = ModulePresentation::new(a, vec![1, 1], vec![rel]).unwrap();
        assert_eq!(minimal_generator_count(&m), 2);
    }
}

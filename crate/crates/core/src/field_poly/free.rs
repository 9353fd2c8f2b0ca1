use std::cmp::Ordering;

use crate::field_poly::field::PrimeField;
use crate::field_poly::monomial::Monomial;
use crate::field_poly::poly::{Polynomial, Term};
use crate::field_poly::ring::Ring;

/// One term `coeff * mono * e_idx` of a free-module element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModTerm {
    pub idx: u32,
    pub coeff: u32,
    pub mono: Monomial,
}

/// Position-over-term comparison: lower basis index dominates, then degrevlex.
#[inline]
pub fn cmp_pot(a_idx: u32, a: &Monomial, b_idx: u32, b: &Monomial) -> Ordering {
    match b_idx.cmp(&a_idx) {
        Ordering::Equal => a.cmp_degrevlex(b),
        o => o,
    }
}

/// Element of a graded free module `Q^r`, stored as a flat term list sorted
/// descending in position-over-term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FreeElement {
    terms: Vec<ModTerm>,
}

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement { terms: Vec::new() }
    }

    pub fn unit(idx: usize, ring: &Ring) -> Self {
        FreeElement {
            terms: vec![ModTerm {
                idx: idx as u32,
                coeff: 1,
                mono: ring.one(),
            }],
        }
    }

    /// `p * e_idx`.
    pub fn from_poly(idx: usize, p: &Polynomial) -> Self {
        FreeElement {
            terms: p
                .terms()
                .iter()
                .map(|t| ModTerm {
                    idx: idx as u32,
                    coeff: t.coeff,
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    /// Sum of `p_i * e_i`, components in any order (repeated indices add).
    pub fn from_components(comps: impl IntoIterator<Item = (usize, Polynomial)>, k: PrimeField) -> Self {
        let mut acc = FreeElement::zero();
        for (i, p) in comps {
            acc = acc.add(&FreeElement::from_poly(i, &p), k);
        }
        acc
    }

    /// From a dense column of polynomials.
    pub fn from_column(col: &[Polynomial], k: PrimeField) -> Self {
        Self::from_components(col.iter().cloned().enumerate(), k)
    }

    /// Wraps terms already sorted descending in position-over-term order.
    pub(crate) fn from_mod_terms(terms: Vec<ModTerm>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| cmp_pot(w[0].idx, &w[0].mono, w[1].idx, &w[1].mono) == Ordering::Greater));
        FreeElement { terms }
    }

    pub(crate) fn drop_leading(&mut self) -> Option<ModTerm> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn terms(&self) -> &[ModTerm] {
        &self.terms
    }

    #[inline]
    pub fn leading(&self) -> Option<&ModTerm> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn component(&self, idx: usize) -> Polynomial {
        Polynomial::from_sorted(
            self.terms
                .iter()
                .filter(|t| t.idx as usize == idx)
                .map(|t| Term {
                    coeff: t.coeff,
                    mono: t.mono.clone(),
                })
                .collect(),
        )
    }

    /// Nonzero components in ascending index order.
    pub fn components(&self) -> Vec<(usize, Polynomial)> {
        let mut out: Vec<(usize, Polynomial)> = Vec::new();
        let mut start = 0;
        while start < self.terms.len() {
            let idx = self.terms[start].idx;
            let mut end = start;
            while end < self.terms.len() && self.terms[end].idx == idx {
                end += 1;
            }
            out.push((
                idx as usize,
                Polynomial::from_sorted(
                    self.terms[start..end]
                        .iter()
                        .map(|t| Term {
                            coeff: t.coeff,
                            mono: t.mono.clone(),
                        })
                        .collect(),
                ),
            ));
            start = end;
        }
        out
    }

    pub fn to_column(&self, rank: usize) -> Vec<Polynomial> {
        let mut col = vec![Polynomial::zero(); rank];
        for (i, p) in self.components() {
            col[i] = p;
        }
        col
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms.last().map(|t| t.idx as usize)
    }

    /// Degree of the leading term under the given generator degrees.
    pub fn degree(&self, shifts: &[i32]) -> Option<i32> {
        self.leading()
            .map(|t| t.mono.weight() as i32 + shifts[t.idx as usize])
    }

    pub fn is_homogeneous(&self, shifts: &[i32]) -> bool {
        match self.degree(shifts) {
            None => true,
            Some(d) => self
                .terms
                .iter()
                .all(|t| t.mono.weight() as i32 + shifts[t.idx as usize] == d),
        }
    }

    fn merge_with(&self, other: &FreeElement, k: PrimeField, coeff: u32, mono: Option<&Monomial>) -> FreeElement {
        // self + coeff * mono * other
        let a = &self.terms;
        let b = &other.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let scaled = |t: &ModTerm| ModTerm {
            idx: t.idx,
            coeff: k.mul(t.coeff, coeff),
            mono: match mono {
                Some(m) => t.mono.mul(m),
                None => t.mono.clone(),
            },
        };
        let (mut i, mut j) = (0, 0);
        let mut pending: Option<ModTerm> = b.first().map(scaled);
        while i < a.len() {
            let Some(bt) = pending.as_ref() else { break };
            match cmp_pot(a[i].idx, &a[i].mono, bt.idx, &bt.mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending.take().unwrap());
                    j += 1;
                    pending = b.get(j).map(scaled);
                }
                Ordering::Equal => {
                    let c = k.add(a[i].coeff, bt.coeff);
                    if c != 0 {
                        out.push(ModTerm {
                            idx: a[i].idx,
                            coeff: c,
                            mono: a[i].mono.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                    pending = b.get(j).map(scaled);
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        if let Some(t) = pending {
            out.push(t);
            out.extend(b[j + 1..].iter().map(scaled));
        }
        FreeElement { terms: out }
    }

    pub fn add(&self, other: &FreeElement, k: PrimeField) -> FreeElement {
        self.merge_with(other, k, 1, None)
    }

    pub fn sub(&self, other: &FreeElement, k: PrimeField) -> FreeElement {
        self.merge_with(other, k, k.neg(1), None)
    }

    /// `self - c * m * other`.
    pub fn sub_mul_term(&self, other: &FreeElement, c: u32, m: &Monomial, k: PrimeField) -> FreeElement {
        if c == 0 {
            return self.clone();
        }
        self.merge_with(other, k, k.neg(c), Some(m))
    }

    /// `self + p * other`.
    pub fn add_mul_poly(&self, other: &FreeElement, p: &Polynomial, k: PrimeField) -> FreeElement {
        let mut acc = self.clone();
        for t in p.terms() {
            acc = acc.merge_with(other, k, t.coeff, Some(&t.mono));
        }
        acc
    }

    pub fn scale(&self, c: u32, k: PrimeField) -> FreeElement {
        if c == 0 {
            return FreeElement::zero();
        }
        FreeElement {
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm {
                    idx: t.idx,
                    coeff: k.mul(t.coeff, c),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    pub fn mul_term(&self, c: u32, m: &Monomial, k: PrimeField) -> FreeElement {
        if c == 0 {
            return FreeElement::zero();
        }
        FreeElement {
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm {
                    idx: t.idx,
                    coeff: k.mul(t.coeff, c),
                    mono: t.mono.mul(m),
                })
                .collect(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial, k: PrimeField) -> FreeElement {
        FreeElement::zero().add_mul_poly(self, p, k)
    }

    pub fn neg(&self, k: PrimeField) -> FreeElement {
        self.scale(k.neg(1), k)
    }

    pub fn monic(&self, k: PrimeField) -> FreeElement {
        match self.leading() {
            None => FreeElement::zero(),
            Some(t) => self.scale(k.inv(t.coeff), k),
        }
    }

    /// Re-indexes every component through `f`; `f` must be strictly increasing
    /// on the indices present.
    pub fn reindex(&self, f: impl Fn(usize) -> usize) -> FreeElement {
        FreeElement {
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm {
                    idx: f(t.idx as usize) as u32,
                    coeff: t.coeff,
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    /// Keeps components with index in `lo..hi`, shifted down by `lo`.
    pub fn slice(&self, lo: usize, hi: usize) -> FreeElement {
        FreeElement {
            terms: self
                .terms
                .iter()
                .filter(|t| (t.idx as usize) >= lo && (t.idx as usize) < hi)
                .map(|t| ModTerm {
                    idx: t.idx - lo as u32,
                    coeff: t.coeff,
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    pub fn display(&self, ring: &Ring) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .components()
            .into_iter()
            .map(|(i, p)| format!("({})*e{}", p.display(ring), i))
            .collect();
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_poly::parse::parse_polynomial;

    #[test]
    fn components_roundtrip_and_order() {
        let r = Ring::new(5, &["x", "y"]).unwrap();
        let k = r.field();
        let a = parse_polynomial("x^2 + y", &r).unwrap();
        let b = parse_polynomial("3*x", &r).unwrap();
        let v = FreeElement::from_components(vec![(2, a.clone()), (0, b.clone())], k);
        assert_eq!(v.leading().unwrap().idx, 0);
        assert_eq!(v.component(2), a);
        assert_eq!(v.to_column(3), vec![b, Polynomial::zero(), a]);
    }

    #[test]
    fn sub_mul_term_cancels() {
        let r = Ring::new(5, &["x", "y"]).unwrap();
        let k = r.field();
        let g = FreeElement::from_column(&[parse_polynomial("x", &r).unwrap(), parse_polynomial("y", &r).unwrap()], k);
        let f = g.mul_term(2, &r.var_monomial(1), k);
        assert!(f.sub_mul_term(&g, 2, &r.var_monomial(1), k).is_zero());
    }
}

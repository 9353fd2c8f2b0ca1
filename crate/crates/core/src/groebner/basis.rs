use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field_poly::{FreeElement, ModTerm, Monomial, Polynomial, Ring};

/// A Gröbner basis of a submodule of a graded free module `Q^r`
/// (an ideal when `r = 1`) in position-over-term order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    shifts: Vec<i32>,
    elems: Vec<FreeElement>,
    reduced: bool,
}

fn find_divisor<'a>(lt: &ModTerm, elems: &'a [FreeElement]) -> Option<(&'a FreeElement, Monomial)> {
    elems.iter().find_map(|g| {
        let gl = g.leading()?;
        if gl.idx != lt.idx {
            return None;
        }
        gl.mono.quotient_of(&lt.mono).map(|q| (g, q))
    })
}

/// Full reduction of `f` by monic `elems`; returns the remainder.
pub(crate) fn reduce_full(ring: &Ring, f: &FreeElement, elems: &[FreeElement]) -> FreeElement {
    let k = ring.field();
    let mut p = f.clone();
    let mut rem: Vec<ModTerm> = Vec::new();
    loop {
        let Some(lt) = p.leading().cloned() else { break };
        match find_divisor(&lt, elems) {
            Some((g, q)) => {
                let c = k.div(lt.coeff, g.leading().unwrap().coeff);
                p = p.sub_mul_term(g, c, &q, k);
            }
            None => {
                p.drop_leading();
                rem.push(lt);
            }
        }
    }
    FreeElement::from_mod_terms(rem)
}

/// Division with quotients; returns `(q, r)` with `f = sum q_k * elems[k] + r`.
pub(crate) fn divide_with_quotients(
    ring: &Ring,
    f: &FreeElement,
    elems: &[FreeElement],
) -> (Vec<Polynomial>, FreeElement) {
    let k = ring.field();
    let mut quots: Vec<Vec<(u32, Monomial)>> = vec![Vec::new(); elems.len()];
    let mut p = f.clone();
    let mut rem: Vec<ModTerm> = Vec::new();
    'outer: loop {
        let Some(lt) = p.leading().cloned() else { break };
        for (n, g) in elems.iter().enumerate() {
            let Some(gl) = g.leading() else { continue };
            if gl.idx != lt.idx {
                continue;
            }
            if let Some(q) = gl.mono.quotient_of(&lt.mono) {
                let c = k.div(lt.coeff, gl.coeff);
                p = p.sub_mul_term(g, c, &q, k);
                quots[n].push((c, q));
                continue 'outer;
            }
        }
        p.drop_leading();
        rem.push(lt);
    }
    (
        quots.into_iter().map(|t| Polynomial::from_terms(t, k)).collect(),
        FreeElement::from_mod_terms(rem),
    )
}

/// Incremental Buchberger run with the normal selection strategy.
pub(crate) struct Builder<'r> {
    ring: &'r Ring,
    shifts: Vec<i32>,
    basis: Vec<FreeElement>,
    pairs: BinaryHeap<Reverse<(i32, usize, usize)>>,
    pending: HashSet<(usize, usize)>,
    ideal_case: bool,
}

impl<'r> Builder<'r> {
    pub(crate) fn new(ring: &'r Ring, shifts: &[i32]) -> Self {
        Builder {
            ring,
            shifts: shifts.to_vec(),
            basis: Vec::new(),
            pairs: BinaryHeap::new(),
            pending: HashSet::new(),
            ideal_case: shifts.len() == 1,
        }
    }

    pub(crate) fn basis(&self) -> &[FreeElement] {
        &self.basis
    }

    fn pair_degree(&self, i: usize, j: usize) -> i32 {
        let a = self.basis[i].leading().unwrap();
        let b = self.basis[j].leading().unwrap();
        a.mono.lcm(&b.mono, self.ring.weights()).weight() as i32 + self.shifts[a.idx as usize]
    }

    fn push_elem(&mut self, h: FreeElement) {
        let h = h.monic(self.ring.field());
        let new = self.basis.len();
        let hl = h.leading().unwrap().clone();
        self.basis.push(h);
        for i in 0..new {
            let gl = self.basis[i].leading().unwrap();
            if gl.idx != hl.idx {
                continue;
            }
            if self.ideal_case && gl.mono.is_coprime(&hl.mono) {
                continue;
            }
            let d = self.pair_degree(i, new);
            self.pairs.push(Reverse((d, i, new)));
            self.pending.insert((i, new));
        }
    }

    pub(crate) fn add(&mut self, g: &FreeElement) {
        let h = reduce_full(self.ring, g, &self.basis);
        if !h.is_zero() {
            self.push_elem(h);
        }
    }

    fn chain_criterion(&self, i: usize, j: usize) -> bool {
        let a = self.basis[i].leading().unwrap();
        let b = self.basis[j].leading().unwrap();
        let lcm = a.mono.lcm(&b.mono, self.ring.weights());
        self.basis.iter().enumerate().any(|(k, g)| {
            if k == i || k == j {
                return false;
            }
            let gl = g.leading().unwrap();
            gl.idx == a.idx
                && gl.mono.divides(&lcm)
                && !self.pending.contains(&(i.min(k), i.max(k)))
                && !self.pending.contains(&(j.min(k), j.max(k)))
        })
    }

    pub(crate) fn run(&mut self) {
        let k = self.ring.field();
        while let Some(Reverse((_, i, j))) = self.pairs.pop() {
            self.pending.remove(&(i, j));
            if self.chain_criterion(i, j) {
                continue;
            }
            let a = self.basis[i].leading().unwrap();
            let b = self.basis[j].leading().unwrap();
            let lcm = a.mono.lcm(&b.mono, self.ring.weights());
            let qa = a.mono.quotient_of(&lcm).unwrap();
            let qb = b.mono.quotient_of(&lcm).unwrap();
            let s = self.basis[i]
                .mul_term(1, &qa, k)
                .sub_mul_term(&self.basis[j], 1, &qb, k);
            let h = reduce_full(self.ring, &s, &self.basis);
            if !h.is_zero() {
                self.push_elem(h);
            }
        }
    }

    /// Minimal, interreduced, monic, sorted.
    pub(crate) fn finish(self) -> Vec<FreeElement> {
        let k = self.ring.field();
        let mut keep: Vec<FreeElement> = Vec::new();
        for (n, g) in self.basis.iter().enumerate() {
            let gl = g.leading().unwrap();
            let redundant = self.basis.iter().enumerate().any(|(m, h)| {
                if m == n {
                    return false;
                }
                let hl = h.leading().unwrap();
                hl.idx == gl.idx && hl.mono.divides(&gl.mono) && (hl.mono != gl.mono || m < n)
            });
            if !redundant {
                keep.push(g.clone());
            }
        }
        let mut out = Vec::with_capacity(keep.len());
        for n in 0..keep.len() {
            let g = &keep[n];
            let lt = FreeElement::from_mod_terms(vec![g.leading().unwrap().clone()]);
            let tail = g.sub(&lt, k);
            let others: Vec<FreeElement> = keep
                .iter()
                .enumerate()
                .filter(|(m, _)| *m != n)
                .map(|(_, h)| h.clone())
                .collect();
            out.push(lt.add(&reduce_full(self.ring, &tail, &others), k).monic(k));
        }
        out.sort_by(|a, b| {
            let (la, lb) = (a.leading().unwrap(), b.leading().unwrap());
            crate::field_poly::free::cmp_pot(lb.idx, &lb.mono, la.idx, &la.mono)
        });
        out
    }
}

pub(crate) fn check_homogeneous(
    operation: &'static str,
    ring: &Ring,
    shifts: &[i32],
    gens: &[FreeElement],
) -> Result<()> {
    for g in gens {
        if let Some(mi) = g.max_index() {
            if mi >= shifts.len() {
                return Err(AlgebraError::ShapeMismatch {
                    operation,
                    detail: format!("component {mi} outside free module of rank {}", shifts.len()),
                });
            }
        }
        if !g.is_homogeneous(shifts) {
            return Err(AlgebraError::Inhomogeneous {
                operation,
                element: g.display(ring),
            });
        }
    }
    Ok(())
}

impl GroebnerBasis {
    /// Unchecked construction used internally once homogeneity is known.
    pub(crate) fn compute(ring: &Arc<Ring>, shifts: &[i32], gens: &[FreeElement]) -> GroebnerBasis {
        let mut b = Builder::new(ring, shifts);
        for g in gens {
            b.add(g);
        }
        b.run();
        GroebnerBasis {
            ring: ring.clone(),
            shifts: shifts.to_vec(),
            elems: b.finish(),
            reduced: true,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn shifts(&self) -> &[i32] {
        &self.shifts
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn elements(&self) -> &[FreeElement] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Elements as polynomials (meaningful for ideals).
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.elems.iter().map(|g| g.component(0)).collect()
    }

    pub fn normal_form(&self, f: &FreeElement) -> FreeElement {
        reduce_full(&self.ring, f, &self.elems)
    }

    pub fn normal_form_poly(&self, f: &Polynomial) -> Polynomial {
        self.normal_form(&FreeElement::from_poly(0, f)).component(0)
    }

    pub fn contains(&self, v: &FreeElement) -> bool {
        self.normal_form(v).is_zero()
    }

    pub fn contains_poly(&self, f: &Polynomial) -> bool {
        self.contains(&FreeElement::from_poly(0, f))
    }

    /// True when the basis contains a unit vector's multiple in every component,
    /// i.e. the submodule is the whole free module.
    pub fn is_whole_module(&self) -> bool {
        (0..self.rank()).all(|i| {
            self.elems
                .iter()
                .any(|g| g.leading().is_some_and(|t| t.idx as usize == i && t.mono.is_one()))
        })
    }

    pub fn leading_monomials(&self) -> Vec<(usize, Monomial)> {
        self.elems
            .iter()
            .map(|g| {
                let t = g.leading().unwrap();
                (t.idx as usize, t.mono.clone())
            })
            .collect()
    }

    /// Every S-pair reduces to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let k = self.ring.field();
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                let a = self.elems[i].leading().unwrap();
                let b = self.elems[j].leading().unwrap();
                if a.idx != b.idx {
                    continue;
                }
                let lcm = a.mono.lcm(&b.mono, self.ring.weights());
                let s = self.elems[i]
                    .mul_term(k.inv(a.coeff), &a.mono.quotient_of(&lcm).unwrap(), k)
                    .sub_mul_term(&self.elems[j], k.inv(b.coeff), &b.mono.quotient_of(&lcm).unwrap(), k);
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Same submodule (reduced bases compare elementwise).
    pub fn same_submodule(&self, other: &GroebnerBasis) -> bool {
        self.elems.iter().all(|g| other.contains(g)) && other.elems.iter().all(|g| self.contains(g))
    }
}

/// Reduced Gröbner basis of the submodule spanned by `gens` in the free module
/// with generator degrees `shifts`. Inhomogeneous input is rejected.
pub fn buchberger(ring: &Arc<Ring>, shifts: &[i32], gens: &[FreeElement]) -> Result<GroebnerBasis> {
    check_homogeneous("buchberger", ring, shifts, gens)?;
    Ok(GroebnerBasis::compute(ring, shifts, gens))
}

/// Reduced Gröbner basis of an ideal.
pub fn ideal_basis(ring: &Arc<Ring>, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    let elems: Vec<FreeElement> = gens.iter().map(|p| FreeElement::from_poly(0, p)).collect();
    buchberger(ring, &[0], &elems)
}

pub fn normal_form(f: &FreeElement, g: &GroebnerBasis) -> FreeElement {
    g.normal_form(f)
}

pub fn submodule_membership(v: &FreeElement, g: &GroebnerBasis) -> bool {
    g.contains(v)
}

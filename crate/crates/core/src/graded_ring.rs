//! Complete intersections `A = Q/(f)` and finitely presented graded `A`-modules.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{AlgebraError, Result};
use crate::field_poly::{FreeElement, Polynomial, Ring};
use crate::groebner::basis::{check_homogeneous, GroebnerBasis};
use crate::groebner::subquotient::{minimal_subset, prune_presentation, subquotient_unchecked, Subquotient};
use crate::groebner::krull_dimension;

/// `A = Q/(f_1..f_c)` with `Q` a weighted polynomial ring over `F_p`.
#[derive(Debug)]
pub struct RingPresentation {
    ring: Arc<Ring>,
    f: Vec<Polynomial>,
    f_gb: GroebnerBasis,
}

/// Dimensions `dim Q/(f_1..f_j)` for `j = 0..=c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityCertificate {
    pub dimensions: Vec<i32>,
}

/// Checks that homogeneous `f` is a regular sequence, via `dim Q/(f_1..f_j) = n - j`.
pub fn verify_regular_sequence(ring: &Arc<Ring>, f: &[Polynomial]) -> Result<RegularityCertificate> {
    let n = ring.nvars() as i32;
    let mut dimensions = vec![n];
    for j in 1..=f.len() {
        let gens: Vec<FreeElement> = f[..j].iter().map(|p| FreeElement::from_poly(0, p)).collect();
        let gb = GroebnerBasis::compute(ring, &[0], &gens);
        let d = krull_dimension(&gb);
        dimensions.push(d);
        if d != n - j as i32 {
            return Err(AlgebraError::NotRegular(format!(
                "dim Q/(f_1..f_{j}) = {d}, expected {}",
                n - j as i32
            )));
        }
    }
    Ok(RegularityCertificate { dimensions })
}

impl RingPresentation {
    /// Validates homogeneity only; call [`verify_regular_sequence`] for regularity.
    pub fn new(ring: Ring, f: Vec<Polynomial>) -> Result<Self> {
        Self::from_arc(Arc::new(ring), f)
    }

    pub fn from_arc(ring: Arc<Ring>, f: Vec<Polynomial>) -> Result<Self> {
        for p in &f {
            p.check_ring(&ring)?;
            if p.is_zero() {
                return Err(AlgebraError::Validation("zero defining equation".into()));
            }
            if !p.is_homogeneous() || p.degree() == Some(0) {
                return Err(AlgebraError::Inhomogeneous {
                    operation: "RingPresentation::new",
                    element: p.display(&ring),
                });
            }
        }
        let gens: Vec<FreeElement> = f.iter().map(|p| FreeElement::from_poly(0, p)).collect();
        let f_gb = GroebnerBasis::compute(&ring, &[0], &gens);
        Ok(RingPresentation { ring, f, f_gb })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn f(&self) -> &[Polynomial] {
        &self.f
    }

    pub fn codim(&self) -> usize {
        self.f.len()
    }

    pub fn f_basis(&self) -> &GroebnerBasis {
        &self.f_gb
    }

    pub fn f_degrees(&self) -> Vec<i32> {
        self.f.iter().map(|p| p.degree().unwrap() as i32).collect()
    }

    /// Normal form modulo `(f)`.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        self.f_gb.normal_form_poly(p)
    }

    /// Componentwise normal form modulo `(f)`.
    pub fn reduce_element(&self, v: &FreeElement) -> FreeElement {
        let k = self.ring.field();
        FreeElement::from_components(v.components().into_iter().map(|(i, p)| (i, self.reduce(&p))), k)
    }

    /// `f_j e_i` for every generator `e_i` of a free module of the given rank.
    pub fn f_multiples(&self, rank: usize) -> Vec<FreeElement> {
        (0..rank)
            .flat_map(|i| self.f.iter().map(move |p| FreeElement::from_poly(i, p)))
            .collect()
    }
}

/// `coker(Q^relations -> Q^degrees)`, always closed under multiplication by `f`.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    ring: Arc<RingPresentation>,
    degrees: Vec<i32>,
    relations: Vec<FreeElement>,
    basis: OnceLock<GroebnerBasis>,
}

impl ModulePresentation {
    /// Validated construction; appends `f_j e_i` to the relations.
    pub fn new(ring: Arc<RingPresentation>, degrees: Vec<i32>, relations: Vec<FreeElement>) -> Result<Self> {
        check_homogeneous("ModulePresentation::new", ring.ring(), &degrees, &relations)?;
        let mut relations: Vec<FreeElement> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        relations.extend(ring.f_multiples(degrees.len()));
        Ok(Self::from_parts(ring, degrees, relations))
    }

    /// Trusted construction: the caller guarantees homogeneity and `f`-closure.
    pub(crate) fn from_parts(ring: Arc<RingPresentation>, degrees: Vec<i32>, relations: Vec<FreeElement>) -> Self {
        ModulePresentation {
            ring,
            degrees,
            relations,
            basis: OnceLock::new(),
        }
    }

    /// `A(-d_1) ⊕ ... ⊕ A(-d_b)`.
    pub fn free(ring: Arc<RingPresentation>, degrees: Vec<i32>) -> Self {
        let relations = ring.f_multiples(degrees.len());
        Self::from_parts(ring, degrees, relations)
    }

    /// The residue field `k = A/m`.
    pub fn residue_field(ring: Arc<RingPresentation>) -> Self {
        let q = ring.ring().clone();
        let relations = (0..q.nvars())
            .map(|v| FreeElement::from_poly(0, &Polynomial::var(&q, v)))
            .collect();
        Self::new(ring, vec![0], relations).expect("variables are homogeneous")
    }

    /// `A/J` for homogeneous `J`.
    pub fn cyclic(ring: Arc<RingPresentation>, ideal: &[Polynomial]) -> Result<Self> {
        let relations = ideal.iter().map(|p| FreeElement::from_poly(0, p)).collect();
        Self::new(ring, vec![0], relations)
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn relations(&self) -> &[FreeElement] {
        &self.relations
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// Gröbner basis of the relation module inside `Q^rank`.
    pub fn relations_basis(&self) -> &GroebnerBasis {
        self.basis
            .get_or_init(|| GroebnerBasis::compute(self.ring.ring(), &self.degrees, &self.relations))
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0 || self.relations_basis().is_whole_module()
    }

    /// `dim_k M_d`.
    pub fn hilbert_function(&self, d: i32) -> usize {
        let q = self.ring.ring();
        let leads = self.relations_basis().leading_monomials();
        let mut by_idx: HashMap<usize, Vec<_>> = HashMap::new();
        for (i, m) in leads {
            by_idx.entry(i).or_default().push(m);
        }
        let empty = Vec::new();
        (0..self.rank())
            .map(|i| {
                let ls = by_idx.get(&i).unwrap_or(&empty);
                q.monomials_of_degree(d - self.degrees[i])
                    .iter()
                    .filter(|m| !ls.iter().any(|l| l.divides(m)))
                    .count()
            })
            .sum()
    }

    /// Equivalent presentation with no unit entries; also returns the kept generators.
    pub fn pruned(&self) -> (ModulePresentation, Vec<usize>) {
        let (kept, relations) = prune_presentation(self.ring.ring(), &self.degrees, &self.relations);
        let degrees = kept.iter().map(|&i| self.degrees[i]).collect();
        (Self::from_parts(self.ring.clone(), degrees, relations), kept)
    }

    /// `mu(M) = dim_k M/mM`.
    pub fn minimal_generator_count(&self) -> usize {
        self.pruned().0.rank()
    }

    /// `M^{⊕b}`, blocks in order.
    pub fn direct_sum_power(&self, b: usize) -> ModulePresentation {
        let g = self.rank();
        let degrees = (0..b).flat_map(|_| self.degrees.iter().copied()).collect();
        let relations = (0..b)
            .flat_map(|blk| self.relations.iter().map(move |r| r.reindex(|i| blk * g + i)))
            .collect();
        Self::from_parts(self.ring.clone(), degrees, relations)
    }

    /// Same generators with extra relations.
    pub fn quotient_by(&self, extra: &[FreeElement]) -> Result<ModulePresentation> {
        check_homogeneous("quotient_by", self.ring.ring(), &self.degrees, extra)?;
        let mut relations = self.relations.clone();
        relations.extend(extra.iter().filter(|r| !r.is_zero()).cloned());
        Ok(Self::from_parts(self.ring.clone(), self.degrees.clone(), relations))
    }
}

/// Minimal generators of `I^n` (modulo `f`) together with a Gröbner basis of `I^n + (f)`.
#[derive(Debug)]
pub struct IdealPower {
    pub generators: Vec<Polynomial>,
    pub basis: GroebnerBasis,
}

/// Powers of a fixed ideal of `A`, computed incrementally and shared across threads.
#[derive(Debug)]
pub struct IdealPowerCache {
    ring: Arc<RingPresentation>,
    gens: Vec<Polynomial>,
    powers: Mutex<Vec<Arc<IdealPower>>>,
}

impl IdealPowerCache {
    pub fn new(ring: Arc<RingPresentation>, gens: Vec<Polynomial>) -> Result<Self> {
        for p in &gens {
            p.check_ring(ring.ring())?;
            if !p.is_homogeneous() {
                return Err(AlgebraError::Inhomogeneous {
                    operation: "IdealPowerCache::new",
                    element: p.display(ring.ring()),
                });
            }
        }
        Ok(IdealPowerCache {
            ring,
            gens,
            powers: Mutex::new(Vec::new()),
        })
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    /// Number of generators of `I` as given.
    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    fn make(&self, generators: Vec<Polynomial>) -> IdealPower {
        let q = self.ring.ring();
        let elems: Vec<FreeElement> = generators.iter().map(|p| FreeElement::from_poly(0, p)).collect();
        let base = self.ring.f_multiples(1);
        let keep = minimal_subset(q, &[0], &elems, &base);
        let generators: Vec<Polynomial> = keep.into_iter().map(|n| generators[n].clone()).collect();
        let mut all: Vec<FreeElement> = generators.iter().map(|p| FreeElement::from_poly(0, p)).collect();
        all.extend(base);
        IdealPower {
            basis: GroebnerBasis::compute(q, &[0], &all),
            generators,
        }
    }

    /// `I^n`; `I^0 = A`.
    pub fn power(&self, n: usize) -> Arc<IdealPower> {
        let mut powers = self.powers.lock().unwrap();
        let q = self.ring.ring();
        let k = q.field();
        if powers.is_empty() {
            powers.push(Arc::new(self.make(vec![Polynomial::one(q)])));
        }
        while powers.len() <= n {
            let last = powers.last().unwrap().clone();
            let mut prods = Vec::new();
            for a in &last.generators {
                for b in &self.gens {
                    let p = self.ring.reduce(&a.mul(b, k));
                    if !p.is_zero() {
                        prods.push(p);
                    }
                }
            }
            powers.push(Arc::new(self.make(prods)));
        }
        powers[n].clone()
    }
}

/// `N / I^n N` with its presentation pruned.
pub fn quotient_mod_power(module: &ModulePresentation, cache: &IdealPowerCache, n: usize) -> ModulePresentation {
    quotient_mod_power_raw(module, cache, n).pruned().0
}

/// `N / I^n N` on the original generators of `N`.
pub fn quotient_mod_power_raw(module: &ModulePresentation, cache: &IdealPowerCache, n: usize) -> ModulePresentation {
    let pw = cache.power(n);
    let mut relations = module.relations().to_vec();
    for i in 0..module.rank() {
        relations.extend(pw.generators.iter().map(|g| FreeElement::from_poly(i, g)));
    }
    ModulePresentation::from_parts(module.ring().clone(), module.degrees().to_vec(), relations)
}

/// `I^n N / I^{n+1} N`.
pub fn gr_piece(module: &ModulePresentation, cache: &IdealPowerCache, n: usize) -> Subquotient {
    let lo = cache.power(n);
    let hi = cache.power(n + 1);
    let span = |gens: &[Polynomial]| -> Vec<FreeElement> {
        (0..module.rank())
            .flat_map(|i| gens.iter().map(move |g| FreeElement::from_poly(i, g)))
            .collect()
    };
    subquotient_unchecked(
        module.ring(),
        module.degrees(),
        &span(&lo.generators),
        &span(&hi.generators),
        module.relations(),
    )
}

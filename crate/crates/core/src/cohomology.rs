//! Eisenbud operators and `Ext_A(M, D)` computed from `Hom_A(F, D)`.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field_poly::{FreeElement, Polynomial};
use crate::graded_ring::{ModulePresentation, RingPresentation};
use crate::groebner::basis::{reduce_full, Builder};
use crate::groebner::kernel::{kernel_unchecked, Lifter};
use crate::groebner::map::{MatrixDump, ModuleMap};
use crate::groebner::subquotient::{minimal_subset, subquotient_unchecked, Subquotient};
use crate::resolution::Resolution;

/// Lifts `d~_1..d~_L` of the differentials to `Q`, as normal forms modulo `(f)`.
#[derive(Clone, Debug)]
pub struct LiftedDifferential {
    pub matrices: Vec<ModuleMap>,
}

pub fn lift_differential(r: &Resolution) -> LiftedDifferential {
    let ring = r.ring();
    let k = ring.ring().field();
    LiftedDifferential {
        matrices: r
            .differentials()
            .iter()
            .map(|d| d.map_entries(|p| ring.reduce(p), k))
            .collect(),
    }
}

impl LiftedDifferential {
    /// `d~_i`, `1 <= i <= L`.
    pub fn get(&self, i: usize) -> &ModuleMap {
        &self.matrices[i - 1]
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }
}

/// `t_j : F_{i+2} -> F_i` for `0 <= i <= L-2` and `1 <= j <= c`.
#[derive(Clone, Debug)]
pub struct EisenbudOperators {
    ring: Arc<RingPresentation>,
    /// `lifts[i][j]` is `t~_j` at spot `i`, over `Q`.
    lifts: Vec<Vec<ModuleMap>>,
    /// `ops[i][j]`, reduced modulo `(f)`.
    ops: Vec<Vec<ModuleMap>>,
}

/// Extracts operators from `d~_{i+1} d~_{i+2} = sum_j f_j t~_j`.
///
/// Each column of the composite is lifted through a Gröbner basis of the
/// submodule `sum_j f_j Q^{b_i}`, then the identity is rechecked exactly.
pub fn eisenbud_operators(ld: &LiftedDifferential, ring: &Arc<RingPresentation>) -> Result<EisenbudOperators> {
    let q = ring.ring();
    let k = q.field();
    let f = ring.f();
    let c = f.len();
    let fdeg = ring.f_degrees();
    let mut lifts = Vec::new();
    let mut ops = Vec::new();
    for i in 0..ld.len().saturating_sub(1) {
        let upper = ld.get(i + 1);
        let lower = ld.get(i + 2);
        let comp = upper.compose(lower, k);
        let b = upper.target_rank();
        let target = upper.target_degrees.clone();
        let src = lower.source_degrees.clone();
        let mut cols: Vec<Vec<FreeElement>> = vec![vec![FreeElement::zero(); src.len()]; c];
        if c > 0 && b > 0 {
            let gens: Vec<FreeElement> = (0..c)
                .flat_map(|j| (0..b).map(move |r| FreeElement::from_poly(r, &f[j])))
                .collect();
            let lifter = Lifter::new_unchecked(q, &target, &gens, &[]);
            for (col_idx, col) in comp.columns.iter().enumerate() {
                let a = lifter.lift(col).ok_or_else(|| {
                    AlgebraError::LiftFailure(format!(
                        "column {col_idx} of d~_{} d~_{} is not in (f)",
                        i + 1,
                        i + 2
                    ))
                })?;
                for j in 0..c {
                    cols[j][col_idx] =
                        FreeElement::from_components((0..b).map(|r| (r, a[j * b + r].clone())), k);
                }
            }
        } else if !comp.is_zero() {
            return Err(AlgebraError::LiftFailure(format!(
                "d~_{} d~_{} is nonzero with no defining equations",
                i + 1,
                i + 2
            )));
        }
        let lifted: Vec<ModuleMap> = cols
            .into_iter()
            .enumerate()
            .map(|(j, cs)| ModuleMap::new(src.clone(), target.clone(), -fdeg[j], cs))
            .collect();
        // exact identity over Q
        for (col_idx, col) in comp.columns.iter().enumerate() {
            let mut acc = FreeElement::zero();
            for (j, t) in lifted.iter().enumerate() {
                acc = acc.add(&t.columns[col_idx].mul_poly(&f[j], k), k);
            }
            if &acc != col {
                return Err(AlgebraError::LiftFailure(format!(
                    "identity fails at spot {i}, column {col_idx}"
                )));
            }
        }
        ops.push(lifted.iter().map(|t| t.map_entries(|p| ring.reduce(p), k)).collect());
        lifts.push(lifted);
    }
    Ok(EisenbudOperators {
        ring: ring.clone(),
        lifts,
        ops,
    })
}

impl EisenbudOperators {
    pub fn codim(&self) -> usize {
        self.ring.codim()
    }

    /// Number of spots `i` with operators, `L - 1`.
    pub fn spots(&self) -> usize {
        self.ops.len()
    }

    /// `t_j : F_{i+2} -> F_i` over `A`, `j` zero-based.
    pub fn operator(&self, i: usize, j: usize) -> &ModuleMap {
        &self.ops[i][j]
    }

    /// The chosen lift `t~_j` over `Q`.
    pub fn lift(&self, i: usize, j: usize) -> &ModuleMap {
        &self.lifts[i][j]
    }

    /// Rechecks `sum_j f_j t~_j = d~_{i+1} d~_{i+2}` for every spot.
    pub fn verify_identity(&self, ld: &LiftedDifferential) -> bool {
        let k = self.ring.ring().field();
        let f = self.ring.f();
        (0..self.spots()).all(|i| {
            let comp = ld.get(i + 1).compose(ld.get(i + 2), k);
            comp.columns.iter().enumerate().all(|(c, col)| {
                let mut acc = FreeElement::zero();
                for (j, t) in self.lifts[i].iter().enumerate() {
                    acc = acc.add(&t.columns[c].mul_poly(&f[j], k), k);
                }
                &acc == col
            })
        })
    }

    /// `d_i t_j^{(i-1)} = t_j^{(i-2)} d_{i+2}` over `A` wherever both sides exist.
    pub fn verify_chain_maps(&self, r: &Resolution) -> bool {
        let k = self.ring.ring().field();
        (1..self.spots()).all(|i| {
            (0..self.codim()).all(|j| {
                let lhs = r.differential(i).compose(&self.ops[i][j], k);
                let rhs = self.ops[i - 1][j].compose(r.differential(i + 2), k);
                lhs.columns
                    .iter()
                    .zip(&rhs.columns)
                    .all(|(a, b)| self.ring.reduce_element(&a.sub(b, k)).is_zero())
            })
        })
    }

    pub fn dump(&self) -> Vec<Vec<MatrixDump>> {
        let q = self.ring.ring();
        self.ops
            .iter()
            .map(|spot| spot.iter().map(|t| t.dump(q)).collect())
            .collect()
    }
}

/// Generator degrees of `Hom_A(F, D) = D^{rank F}`: entry `(k, l)` sits at
/// index `k * g + l` with degree `deg_D(l) - a_k`.
pub fn hom_degrees(free_degrees: &[i32], d: &ModulePresentation) -> Vec<i32> {
    free_degrees
        .iter()
        .flat_map(|a| d.degrees().iter().map(move |e| e - a))
        .collect()
}

/// The map `Hom(F_b, D) -> Hom(F_a, D)`, `phi -> phi ∘ m`, for `m : F_a -> F_b`.
pub fn cochain_map(m: &ModuleMap, d: &ModulePresentation) -> ModuleMap {
    let k = d.ring().ring().field();
    let g = d.rank();
    let mut rows: Vec<Vec<(usize, Polynomial)>> = vec![Vec::new(); m.target_rank()];
    for (c, col) in m.columns.iter().enumerate() {
        for (r, p) in col.components() {
            rows[r].push((c, p));
        }
    }
    let mut columns = Vec::with_capacity(m.target_rank() * g);
    for row in &rows {
        for l in 0..g {
            columns.push(FreeElement::from_components(
                row.iter().map(|(c, p)| (c * g + l, p.clone())),
                k,
            ));
        }
    }
    ModuleMap::new(
        hom_degrees(&m.target_degrees, d),
        hom_degrees(&m.source_degrees, d),
        -m.degree,
        columns,
    )
}

/// `Ext^i_A(M, D)` as a subquotient of `Hom(F_i, D)`.
#[derive(Clone, Debug)]
pub struct ExtModule {
    index: usize,
    sub: Subquotient,
    /// Relations of `Hom(F_{i+1}, D)`, kept for kernel checks.
    next_relations: Vec<FreeElement>,
    next_map: ModuleMap,
    socle: OnceLock<usize>,
}

/// `Ext^i(M, D)` from the cohomology of `Hom(F_{i-1}, D) -> Hom(F_i, D) -> Hom(F_{i+1}, D)`.
pub fn ext_module(r: &Resolution, d: &ModulePresentation, i: usize) -> Result<ExtModule> {
    if i + 1 > r.length() {
        return Err(AlgebraError::WindowExceeded {
            operation: "ext_module",
            index: i,
            max: r.length().saturating_sub(1),
        });
    }
    let ring = r.ring();
    let q = ring.ring();
    let delta = cochain_map(r.differential(i + 1), d);
    let rel_next = d.direct_sum_power(r.ranks()[i + 1]).relations().to_vec();
    let rel_here = d.direct_sum_power(r.ranks()[i]).relations().to_vec();
    let ker = kernel_unchecked(q, &delta, &rel_next);
    let im: Vec<FreeElement> = if i == 0 {
        Vec::new()
    } else {
        cochain_map(r.differential(i), d).columns
    };
    let ambient = hom_degrees(r.degrees(i), d);
    let sub = subquotient_unchecked(ring, &ambient, &ker, &im, &rel_here);
    Ok(ExtModule {
        index: i,
        sub,
        next_relations: rel_next,
        next_map: delta,
        socle: OnceLock::new(),
    })
}

impl ExtModule {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn presentation(&self) -> &ModulePresentation {
        &self.sub.presentation
    }

    pub fn subquotient(&self) -> &Subquotient {
        &self.sub
    }

    /// Minimal generators as cocycles in `Hom(F_i, D)`.
    pub fn generators(&self) -> &[FreeElement] {
        &self.sub.generators
    }

    pub fn is_zero(&self) -> bool {
        self.sub.is_zero()
    }

    pub fn mu(&self) -> usize {
        self.sub.generators.len()
    }

    pub fn socle_dimension(&self) -> usize {
        *self.socle.get_or_init(|| socle_dimension(self.presentation()))
    }

    pub fn hilbert_function(&self, deg: i32) -> usize {
        self.presentation().hilbert_function(deg)
    }

    /// Whether `v ∈ Hom(F_i, D)` is a cocycle.
    pub fn is_cocycle(&self, v: &FreeElement) -> bool {
        let q = self.sub.presentation.ring().ring();
        let w = self.next_map.apply(v, q.field());
        let mut b = Builder::new(q, &self.next_map.target_degrees);
        for r in &self.next_relations {
            b.add(r);
        }
        b.run();
        reduce_full(q, &w, b.basis()).is_zero()
    }

    /// Coordinates of a cocycle on the minimal generators, modulo coboundaries.
    pub fn coordinates(&self, lifter: &Lifter, v: &FreeElement) -> Result<FreeElement> {
        let q = self.sub.presentation.ring().ring();
        let a = lifter.lift_or_err(v, "ext coordinates")?;
        Ok(FreeElement::from_components(a.into_iter().enumerate(), q.field()))
    }

    pub fn lifter(&self) -> Lifter {
        let q = self.sub.presentation.ring().ring();
        Lifter::new_unchecked(q, &self.sub.ambient_degrees, &self.sub.generators, &self.sub.denominator)
    }

    /// Whether an element of the free module on the generators is zero in `Ext`.
    pub fn is_zero_class(&self, v: &FreeElement) -> bool {
        let p = self.presentation();
        p.relations_basis().contains(v)
    }
}

/// `dim_k (0 :_E m)`.
pub fn socle_dimension(e: &ModulePresentation) -> usize {
    let q = e.ring().ring();
    let g = e.rank();
    let nv = q.nvars();
    if g == 0 {
        return 0;
    }
    let k = q.field();
    let target: Vec<i32> = (0..nv)
        .flat_map(|v| e.degrees().iter().map(move |d| d + q.weights()[v] as i32))
        .collect();
    let columns = (0..g)
        .map(|i| {
            FreeElement::from_components((0..nv).map(|v| (v * g + i, Polynomial::var(q, v))), k)
        })
        .collect();
    let phi = ModuleMap::new(e.degrees().to_vec(), target.clone(), 0, columns);
    let rels: Vec<FreeElement> = (0..nv)
        .flat_map(|v| e.relations().iter().map(move |r| r.reindex(|i| v * g + i)))
        .collect();
    let s = kernel_unchecked(q, &phi, &rels);
    minimal_subset(q, e.degrees(), &s, e.relations()).len()
}

/// Well-definedness evidence for an induced map on `Ext`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionCertificate {
    /// Cocycles go to cocycles.
    pub cocycles_preserved: bool,
    /// Coboundaries and relations go into the target denominator.
    pub denominator_preserved: bool,
}

impl ActionCertificate {
    pub fn is_ok(&self) -> bool {
        self.cocycles_preserved && self.denominator_preserved
    }
}

/// An induced map `Ext^a -> Ext^b` on minimal generators.
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub map: ModuleMap,
    pub certificate: ActionCertificate,
}

fn induced_map(cochain: &ModuleMap, source: &ExtModule, target: &ExtModule) -> Result<InducedMap> {
    let q = source.presentation().ring().ring().clone();
    let k = q.field();
    let lifter = target.lifter();
    let mut columns = Vec::with_capacity(source.mu());
    let mut cocycles_preserved = true;
    for z in source.generators() {
        let w = cochain.apply(z, k);
        cocycles_preserved &= target.is_cocycle(&w);
        columns.push(target.coordinates(&lifter, &w)?);
    }
    let mut den = Builder::new(&q, &target.sub.ambient_degrees);
    for v in &target.sub.denominator {
        den.add(v);
    }
    den.run();
    let denominator_preserved = source
        .sub
        .denominator
        .iter()
        .all(|v| reduce_full(&q, &cochain.apply(v, k), den.basis()).is_zero());
    Ok(InducedMap {
        map: ModuleMap::new(
            source.presentation().degrees().to_vec(),
            target.presentation().degrees().to_vec(),
            cochain.degree,
            columns,
        ),
        certificate: ActionCertificate {
            cocycles_preserved,
            denominator_preserved,
        },
    })
}

/// `t_j : Ext^i(M, D) -> Ext^{i+2}(M, D)` on the given presentations.
pub fn ext_operator_action(
    ops: &EisenbudOperators,
    d: &ModulePresentation,
    source: &ExtModule,
    target: &ExtModule,
    j: usize,
) -> Result<InducedMap> {
    let i = source.index();
    if target.index() != i + 2 || i >= ops.spots() {
        return Err(AlgebraError::WindowExceeded {
            operation: "ext_operator_action",
            index: i + 2,
            max: ops.spots() + 1,
        });
    }
    if j >= ops.codim() {
        return Err(AlgebraError::ShapeMismatch {
            operation: "ext_operator_action",
            detail: format!("operator {j} requested, codimension {}", ops.codim()),
        });
    }
    induced_map(&cochain_map(ops.operator(i, j), d), source, target)
}

/// Whether `g ∘ f` and `h` agree as maps into the presentation `target`.
fn maps_agree(a: &ModuleMap, b: &ModuleMap, target: &ExtModule) -> bool {
    let k = target.presentation().ring().ring().field();
    a.columns
        .iter()
        .zip(&b.columns)
        .all(|(x, y)| target.is_zero_class(&x.sub(y, k)))
}

/// Outcome of comparing `t_j t_l` and `t_l t_j` on one `Ext^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutationCheck {
    pub i: usize,
    pub j: usize,
    pub l: usize,
    /// Agreement of the composed presentation matrices.
    pub on_presentations: bool,
    /// `(t_j t_l - t_l t_j)^* z` lies in the coboundaries for every generator `z`.
    pub on_cochains: bool,
}

/// Checks `t_j t_l = t_l t_j : Ext^i -> Ext^{i+4}` for all pairs `j < l`.
pub fn commutation_check(
    ops: &EisenbudOperators,
    d: &ModulePresentation,
    exts: [&ExtModule; 3],
) -> Result<Vec<CommutationCheck>> {
    let [e0, e2, e4] = exts;
    let i = e0.index();
    let k = d.ring().ring().field();
    let q = d.ring().ring().clone();
    let c = ops.codim();
    let mut den = Builder::new(&q, &e4.sub.ambient_degrees);
    for v in &e4.sub.denominator {
        den.add(v);
    }
    den.run();
    let mut out = Vec::new();
    for j in 0..c {
        for l in j + 1..c {
            let tj0 = ext_operator_action(ops, d, e0, e2, j)?.map;
            let tl0 = ext_operator_action(ops, d, e0, e2, l)?.map;
            let tj2 = ext_operator_action(ops, d, e2, e4, j)?.map;
            let tl2 = ext_operator_action(ops, d, e2, e4, l)?.map;
            let on_presentations = maps_agree(&tl2.compose(&tj0, k), &tj2.compose(&tl0, k), e4);
            let cj = |s: usize| cochain_map(ops.operator(s, j), d);
            let cl = |s: usize| cochain_map(ops.operator(s, l), d);
            let on_cochains = e0.generators().iter().all(|z| {
                let a = cl(i + 2).apply(&cj(i).apply(z, k), k);
                let b = cj(i + 2).apply(&cl(i).apply(z, k), k);
                reduce_full(&q, &a.sub(&b, k), den.basis()).is_zero()
            });
            out.push(CommutationCheck {
                i,
                j,
                l,
                on_presentations,
                on_cochains,
            });
        }
    }
    Ok(out)
}

/// Whether a presentation map between two `Ext` modules is bijective.
pub fn is_isomorphism(map: &ModuleMap, source: &ExtModule, target: &ExtModule) -> bool {
    let q = target.presentation().ring().ring().clone();
    let tp = target.presentation();
    let sp = source.presentation();
    // surjective: images plus target relations span the generators
    let mut span = Builder::new(&q, tp.degrees());
    for v in map.columns.iter().chain(tp.relations()) {
        span.add(v);
    }
    span.run();
    let onto = (0..tp.rank()).all(|i| reduce_full(&q, &FreeElement::unit(i, &q), span.basis()).is_zero());
    if !onto {
        return false;
    }
    let ker = kernel_unchecked(&q, map, tp.relations());
    ker.iter().all(|v| sp.relations_basis().contains(v))
}

/// The map `Ext^i(M, D_a) -> Ext^i(M, D_b)` induced by `u : D_a -> D_b`,
/// where both coefficient modules share generators and `u` is a scalar.
pub fn multiplication_map(u: &Polynomial, source: &ExtModule, target: &ExtModule) -> Result<InducedMap> {
    let deg = u.degree().map(|x| x as i32).unwrap_or(0);
    let amb = &source.sub.ambient_degrees;
    let columns = (0..amb.len()).map(|c| FreeElement::from_poly(c, u)).collect();
    let m = ModuleMap::new(amb.clone(), target.sub.ambient_degrees.clone(), deg, columns);
    induced_map(&m, source, target)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaturalityReport {
    pub i: usize,
    pub n: usize,
    pub s: usize,
    /// Per operator, whether `t_j ∘ u = u ∘ t_j` on presentations.
    pub commutes: Vec<bool>,
    pub certificates_ok: bool,
}

impl NaturalityReport {
    pub fn is_ok(&self) -> bool {
        self.certificates_ok && self.commutes.iter().all(|&b| b)
    }
}

/// Checks the square `Ext^i(M, D_n) -> Ext^{i+2}(M, D_{n+s})` formed by `u·` and `t_j`.
///
/// `d_lo` and `d_hi` must be presented on the same generators (as the raw
/// quotients `N/I^n N` are), with `u ∈ I^s`.
pub fn naturality_check(
    r: &Resolution,
    ops: &EisenbudOperators,
    u: &Polynomial,
    d_lo: &ModulePresentation,
    d_hi: &ModulePresentation,
    (n, s): (usize, usize),
    i: usize,
) -> Result<NaturalityReport> {
    if d_lo.degrees() != d_hi.degrees() {
        return Err(AlgebraError::ShapeMismatch {
            operation: "naturality_check",
            detail: "coefficient modules are not presented on common generators".into(),
        });
    }
    let k = d_lo.ring().ring().field();
    let lo_i = ext_module(r, d_lo, i)?;
    let lo_i2 = ext_module(r, d_lo, i + 2)?;
    let hi_i = ext_module(r, d_hi, i)?;
    let hi_i2 = ext_module(r, d_hi, i + 2)?;
    let u_i = multiplication_map(u, &lo_i, &hi_i)?;
    let u_i2 = multiplication_map(u, &lo_i2, &hi_i2)?;
    let mut certificates_ok = u_i.certificate.is_ok() && u_i2.certificate.is_ok();
    let mut commutes = Vec::new();
    for j in 0..ops.codim() {
        let t_lo = ext_operator_action(ops, d_lo, &lo_i, &lo_i2, j)?;
        let t_hi = ext_operator_action(ops, d_hi, &hi_i, &hi_i2, j)?;
        certificates_ok &= t_lo.certificate.is_ok() && t_hi.certificate.is_ok();
        let a = t_hi.map.compose(&u_i.map, k);
        let b = u_i2.map.compose(&t_lo.map, k);
        commutes.push(maps_agree(&a, &b, &hi_i2));
    }
    Ok(NaturalityReport {
        i,
        n,
        s,
        commutes,
        certificates_ok,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtDump {
    pub index: usize,
    pub generator_degrees: Vec<i32>,
    pub relations: Vec<Vec<String>>,
    pub mu: usize,
    pub socle_dim: usize,
}

impl ExtModule {
    pub fn dump(&self) -> ExtDump {
        let p = self.presentation();
        let q = p.ring().ring();
        ExtDump {
            index: self.index,
            generator_degrees: p.degrees().to_vec(),
            relations: p
                .relations()
                .iter()
                .map(|r| r.to_column(p.rank()).iter().map(|x| x.display(q)).collect())
                .collect(),
            mu: self.mu(),
            socle_dim: self.socle_dimension(),
        }
    }
}

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use asyprime::field_poly::{FreeElement, Polynomial, Ring};
use asyprime::graded_ring::ModulePresentation;
use asyprime::harness::{fixture_paths, load_fixture, Fixture};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn shipped() -> Vec<Fixture> {
    fixture_paths(&fixtures_dir())
        .unwrap()
        .iter()
        .map(|p| load_fixture(p).unwrap())
        .collect()
}

pub fn fixture(name: &str) -> Fixture {
    load_fixture(&fixtures_dir().join(format!("{name}.json"))).unwrap()
}

// ---------------------------------------------------------------------------
// Dense row reduction over F_p.

#[derive(Clone, Debug)]
pub struct Echelon {
    p: u64,
    ncols: usize,
    /// Fully reduced rows, each monic at its pivot.
    rows: Vec<(usize, Vec<u64>)>,
}

fn inv(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl Echelon {
    pub fn new(p: u64, ncols: usize) -> Self {
        Echelon { p, ncols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut v: Vec<u64> = v.iter().map(|x| x % p).collect();
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a = (*a + p - c * b % p) % p;
                }
            }
        }
        v
    }

    /// Adds `v` to the span; true if it was independent.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let p = self.p;
        let mut v = self.reduce(v);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv(v[piv], p);
        v.iter_mut().for_each(|x| *x = *x * s % p);
        for (_, row) in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (a, b) in row.iter_mut().zip(&v) {
                    *a = (*a + p - c * b % p) % p;
                }
            }
        }
        self.rows.push((piv, v));
        true
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }
}

// ---------------------------------------------------------------------------
// Polynomials as exponent maps, independent of the engine's representation.

pub type Exps = Vec<u16>;
pub type OPoly = BTreeMap<Exps, u64>;

pub fn to_opoly(f: &Polynomial) -> OPoly {
    f.terms()
        .iter()
        .map(|t| (t.mono.exps().to_vec(), t.coeff as u64))
        .collect()
}

pub fn from_opoly(ring: &Ring, f: &OPoly) -> Polynomial {
    Polynomial::from_terms(
        f.iter().map(|(e, c)| (*c as u32, ring.monomial(e))),
        ring.field(),
    )
}

pub fn total(e: &[u16]) -> i32 {
    e.iter().map(|&x| x as i32).sum()
}

/// All exponent vectors of total degree `d`, lexicographically.
pub fn monomials(nvars: usize, d: i32) -> Vec<Exps> {
    if d < 0 {
        return Vec::new();
    }
    if nvars == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in monomials(nvars - 1, d - a) {
            rest.insert(0, a as u16);
            out.push(rest);
        }
    }
    out
}

fn add_exps(a: &[u16], b: &[u16]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn opoly_degree(f: &OPoly) -> Option<i32> {
    f.keys().next().map(|e| total(e))
}

/// `(I)_d` for homogeneous generators, as a span in the monomial basis of degree `d`.
pub struct IdealSlice {
    pub monos: Vec<Exps>,
    pub index: HashMap<Exps, usize>,
    pub span: Echelon,
}

impl IdealSlice {
    pub fn new(p: u64, nvars: usize, gens: &[OPoly], d: i32) -> Self {
        let monos = monomials(nvars, d);
        let index: HashMap<Exps, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut span = Echelon::new(p, monos.len());
        for g in gens {
            let Some(e) = opoly_degree(g) else { continue };
            for m in monomials(nvars, d - e) {
                let mut v = vec![0; monos.len()];
                for (exps, c) in g {
                    v[index[&add_exps(exps, &m)]] = (v[index[&add_exps(exps, &m)]] + c) % p;
                }
                span.insert(&v);
            }
        }
        IdealSlice { monos, index, span }
    }

    pub fn contains(&self, f: &OPoly) -> bool {
        let mut v = vec![0; self.monos.len()];
        for (e, c) in f {
            v[self.index[e]] = *c;
        }
        self.span.contains(&v)
    }
}

/// A homogeneous random ideal for the membership oracle.
pub struct RandomIdeal {
    pub p: u64,
    pub nvars: usize,
    pub gens: Vec<OPoly>,
}

pub fn random_ideal(rng: &mut ChaCha8Rng, p: u64, nvars: usize) -> RandomIdeal {
    let ngens = rng.gen_range(2..=4);
    let mut gens = Vec::new();
    while gens.len() < ngens {
        let d = rng.gen_range(1..=3);
        let pool = monomials(nvars, d);
        let nterms = rng.gen_range(1..=pool.len().min(4));
        let mut g = OPoly::new();
        for _ in 0..nterms {
            let m = pool[rng.gen_range(0..pool.len())].clone();
            let c = rng.gen_range(1..p);
            let e = g.entry(m).or_insert(0);
            *e = (*e + c) % p;
        }
        g.retain(|_, c| *c != 0);
        if !g.is_empty() {
            gens.push(g);
        }
    }
    RandomIdeal { p, nvars, gens }
}

// ---------------------------------------------------------------------------
// Degree slices of a finitely presented graded module `Q^b / R`.

/// Coordinates `(generator, exponents)` of `(Q^b)_d` modulo the span of `R` in degree `d`.
pub struct ModuleSlice {
    pub coords: Vec<(usize, Exps)>,
    pub index: HashMap<(usize, Exps), usize>,
    pub relations: Echelon,
    /// Coordinates not hit by a pivot: a basis of `E_d`.
    pub free_coords: Vec<usize>,
}

impl ModuleSlice {
    pub fn dim(&self) -> usize {
        self.free_coords.len()
    }
}

pub struct TruncatedModule {
    pub p: u64,
    pub nvars: usize,
    pub degrees: Vec<i32>,
    pub slices: BTreeMap<i32, ModuleSlice>,
}

/// Element of `Q^b` as `(generator, exponents) -> coefficient`.
pub type OVec = BTreeMap<(usize, Exps), u64>;

fn to_ovec(v: &FreeElement) -> OVec {
    v.components()
        .into_iter()
        .flat_map(|(i, f)| to_opoly(&f).into_iter().map(move |(e, c)| ((i, e), c)))
        .collect()
}

fn ovec_degree(v: &OVec, degrees: &[i32]) -> Option<i32> {
    v.keys().next().map(|(i, e)| degrees[*i] + total(e))
}

impl TruncatedModule {
    /// Slices of `E` in degrees `lo..=hi`; relations are taken from the
    /// presentation together with `f_j e_i`.
    pub fn new(e: &ModulePresentation, lo: i32, hi: i32) -> Self {
        let ring = e.ring();
        let q = ring.ring();
        assert!(q.weights().iter().all(|&w| w == 1), "standard grading only");
        let p = q.field().p() as u64;
        let nvars = q.nvars();
        let degrees = e.degrees().to_vec();
        let mut rels: Vec<OVec> = e.relations().iter().map(to_ovec).collect();
        for f in ring.f() {
            for i in 0..degrees.len() {
                rels.push(to_opoly(f).into_iter().map(|(ex, c)| ((i, ex), c)).collect());
            }
        }
        let mut slices = BTreeMap::new();
        for d in lo..=hi {
            let coords: Vec<(usize, Exps)> = degrees
                .iter()
                .enumerate()
                .flat_map(|(i, &s)| monomials(nvars, d - s).into_iter().map(move |m| (i, m)))
                .collect();
            let index: HashMap<(usize, Exps), usize> =
                coords.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
            let mut span = Echelon::new(p, coords.len());
            for r in &rels {
                let Some(rd) = ovec_degree(r, &degrees) else { continue };
                for m in monomials(nvars, d - rd) {
                    let mut v = vec![0; coords.len()];
                    for ((i, ex), c) in r {
                        let k = index[&(*i, add_exps(ex, &m))];
                        v[k] = (v[k] + c) % p;
                    }
                    span.insert(&v);
                }
            }
            let pivots = span.pivots();
            let free_coords = (0..coords.len()).filter(|k| !pivots.contains(k)).collect();
            slices.insert(
                d,
                ModuleSlice {
                    coords,
                    index,
                    relations: span,
                    free_coords,
                },
            );
        }
        TruncatedModule {
            p,
            nvars,
            degrees,
            slices,
        }
    }

    pub fn dim(&self, d: i32) -> usize {
        self.slices.get(&d).map_or(0, ModuleSlice::dim)
    }

    /// `u * v` for `v` in degree `d` (a coordinate vector), reduced in degree `d + deg u`.
    pub fn multiply(&self, d: i32, v: &[u64], u: &[u16]) -> Option<Vec<u64>> {
        let src = &self.slices[&d];
        let tgt = self.slices.get(&(d + total(u)))?;
        let mut w = vec![0; tgt.coords.len()];
        for (k, &c) in v.iter().enumerate() {
            if c != 0 {
                let (i, ex) = &src.coords[k];
                let t = tgt.index[&(*i, add_exps(ex, u))];
                w[t] = (w[t] + c) % self.p;
            }
        }
        Some(tgt.relations.reduce(&w))
    }

    /// Every nonzero element of `E_d`, in reduced coordinates. Needs `p^dim` small.
    pub fn elements(&self, d: i32) -> Vec<Vec<u64>> {
        let s = &self.slices[&d];
        let dim = s.dim() as u32;
        let total_count = self.p.pow(dim);
        assert!(total_count <= 1 << 12, "slice too large to enumerate");
        (1..total_count)
            .map(|mut code| {
                let mut v = vec![0; s.coords.len()];
                for &k in &s.free_coords {
                    v[k] = code % self.p;
                    code /= self.p;
                }
                v
            })
            .collect()
    }

    /// `ann(m) = (x_S)` for `m` in degree `d`: the variables of `S` kill `m`
    /// and `k[x_T] -> E, g -> g m` is injective through degree `hi` of the truncation.
    pub fn annihilator_is(&self, d: i32, m: &[u64], s: &[usize]) -> bool {
        let unit = |v: usize| -> Exps { (0..self.nvars).map(|w| (w == v) as u16).collect() };
        let kills = s
            .iter()
            .all(|&v| self.multiply(d, m, &unit(v)).is_none_or(|w| w.iter().all(|&x| x == 0)));
        if !kills {
            return false;
        }
        let t: Vec<usize> = (0..self.nvars).filter(|v| !s.contains(v)).collect();
        let hi = *self.slices.keys().last().unwrap();
        for e in 0..=(hi - d) {
            let mut span = Echelon::new(self.p, self.slices[&(d + e)].coords.len());
            for sub in monomials(t.len(), e) {
                let mut u = vec![0u16; self.nvars];
                for (k, &v) in t.iter().enumerate() {
                    u[v] = sub[k];
                }
                let w = self.multiply(d, m, &u).unwrap();
                if !span.insert(&w) {
                    return false;
                }
            }
        }
        true
    }

    /// Brute-force associated-prime test for `(x_S)`: some homogeneous element
    /// of degree `<= elem_hi` has annihilator exactly `(x_S)`.
    pub fn is_associated(&self, s: &[usize], elem_hi: i32) -> bool {
        self.slices
            .keys()
            .filter(|&&d| d <= elem_hi)
            .any(|&d| self.elements(d).iter().any(|m| self.annihilator_is(d, m, s)))
    }
}

/// Variable-index subsets behind candidate labels like `(x,y)`.
pub fn label_vars(ring: &Ring, label: &str) -> Vec<usize> {
    let inner = label.trim_start_matches('(').trim_end_matches(')');
    if inner == "0" {
        return Vec::new();
    }
    inner.split(',').map(|v| ring.var_index(v).unwrap()).collect()
}

// ---------------------------------------------------------------------------
// Hand-derived Ext values.

/// `dim Ext^i(k, F_2[x]/(x^min(n,2)))` over `F_2[x]/(x^2)`. The resolution of
/// `k` is periodic with every differential `x`, so `Ext^0 = ker x` and
/// `Ext^i = ker x / im x` for `i >= 1`; both are computed on `k[x]/(x^m)`.
pub fn f1_ext_dim(i: usize, n: usize) -> usize {
    let m = n.min(2);
    // x acts on the basis 1, x, ..., x^{m-1} by shifting.
    let mut xmat = vec![vec![0u64; m]; m];
    for c in 0..m.saturating_sub(1) {
        xmat[c + 1][c] = 1;
    }
    let mut img = Echelon::new(2, m);
    for c in 0..m {
        let col: Vec<u64> = (0..m).map(|r| xmat[r][c]).collect();
        img.insert(&col);
    }
    let rank = img.rank();
    let ker = m - rank;
    if i == 0 {
        ker
    } else {
        ker - rank
    }
}

/// `dim Ext^i(k, A/y^n A)` over `A = F_2[x,y]/(x^2)`. `y^n` is regular on `A`
/// and kills `Ext(k, -)`, so `0 -> Ext^i(k,A) -> Ext^i(k,A/y^n) -> Ext^{i+1}(k,A) -> 0`;
/// with `Ext^i(k, A) = k` for `i = 1` only (`A` is Gorenstein of depth 1), this is
/// `k` for `i in {0, 1}` and zero otherwise.
pub fn f2_ext_dim(i: usize, n: usize) -> usize {
    usize::from(n >= 1 && i <= 1)
}

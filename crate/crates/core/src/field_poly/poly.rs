use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field_poly::field::PrimeField;
use crate::field_poly::monomial::Monomial;
use crate::field_poly::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: u32,
    pub mono: Monomial,
}

/// Sparse polynomial; terms strictly descending in degrevlex, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<Term>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    /// Multiply the left operand by the constant term of the right operand.
    Scale,
}

/// Checked binary arithmetic: both operands must live in `ring`.
pub fn poly_arithmetic(ring: &Ring, a: &Polynomial, b: &Polynomial, op: PolyOp) -> Result<Polynomial> {
    a.check_ring(ring)?;
    b.check_ring(ring)?;
    Ok(match op {
        PolyOp::Add => a.add(b, ring.field()),
        PolyOp::Sub => a.sub(b, ring.field()),
        PolyOp::Mul => a.mul(b, ring.field()),
        PolyOp::Scale => a.scale(b.constant_coeff(), ring.field()),
    })
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(c: i64, ring: &Ring) -> Self {
        Self::term(ring.field().from_i64(c), ring.one())
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(1, ring)
    }

    pub fn term(coeff: u32, mono: Monomial) -> Self {
        if coeff == 0 {
            return Self::zero();
        }
        Polynomial {
            terms: vec![Term { coeff, mono }],
        }
    }

    pub fn var(ring: &Ring, v: usize) -> Self {
        Self::term(1, ring.var_monomial(v))
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, Monomial)>, k: PrimeField) -> Self {
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (c, m) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = k.add(*e, c % k.p());
        }
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(mono, coeff)| Term { coeff, mono })
            .collect();
        terms.sort_by(|a, b| b.mono.cmp_degrevlex(&a.mono));
        Polynomial { terms }
    }

    pub(crate) fn from_sorted(terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].mono.cmp_degrevlex(&w[1].mono) == Ordering::Greater));
        Polynomial { terms }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    #[inline]
    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_coeff(&self) -> u32 {
        match self.terms.last() {
            Some(t) if t.mono.is_one() => t.coeff,
            _ => 0,
        }
    }

    /// Weighted degree of the leading term.
    pub fn degree(&self) -> Option<u32> {
        self.leading().map(|t| t.mono.weight())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.leading() {
            None => true,
            Some(lt) => self.terms.iter().all(|t| t.mono.weight() == lt.mono.weight()),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|t| t.coeff == 1)
    }

    pub(crate) fn check_ring(&self, ring: &Ring) -> Result<()> {
        for t in &self.terms {
            if t.mono.nvars() != ring.nvars() {
                return Err(crate::error::AlgebraError::DimensionMismatch {
                    expected: ring.nvars(),
                    found: t.mono.nvars(),
                });
            }
            if t.coeff >= ring.field().p() {
                return Err(crate::error::AlgebraError::RingMismatch(format!(
                    "coefficient {} not reduced modulo {}",
                    t.coeff,
                    ring.field().p()
                )));
            }
        }
        Ok(())
    }

    fn merge(&self, other: &Polynomial, k: PrimeField, sign: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let conv = |c: u32| if sign { c } else { k.neg(c) };
        while i < a.len() && j < b.len() {
            match a[i].mono.cmp_degrevlex(&b[j].mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        coeff: conv(b[j].coeff),
                        mono: b[j].mono.clone(),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = k.add(a[i].coeff, conv(b[j].coeff));
                    if c != 0 {
                        out.push(Term {
                            coeff: c,
                            mono: a[i].mono.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| Term {
            coeff: conv(t.coeff),
            mono: t.mono.clone(),
        }));
        Polynomial { terms: out }
    }

    pub fn add(&self, other: &Polynomial, k: PrimeField) -> Polynomial {
        self.merge(other, k, true)
    }

    pub fn sub(&self, other: &Polynomial, k: PrimeField) -> Polynomial {
        self.merge(other, k, false)
    }

    pub fn neg(&self, k: PrimeField) -> Polynomial {
        self.scale(k.neg(1), k)
    }

    pub fn scale(&self, c: u32, k: PrimeField) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: k.mul(t.coeff, c),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    pub fn mul_term(&self, c: u32, m: &Monomial, k: PrimeField) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: k.mul(t.coeff, c),
                    mono: t.mono.mul(m),
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial, k: PrimeField) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        if other.terms.len() == 1 {
            return self.mul_term(other.terms[0].coeff, &other.terms[0].mono, k);
        }
        if self.terms.len() == 1 {
            return other.mul_term(self.terms[0].coeff, &self.terms[0].mono, k);
        }
        Polynomial::from_terms(
            self.terms.iter().flat_map(|a| {
                other
                    .terms
                    .iter()
                    .map(move |b| (k.mul(a.coeff, b.coeff), a.mono.mul(&b.mono)))
            }),
            k,
        )
    }

    pub fn monic(&self, k: PrimeField) -> Polynomial {
        match self.leading() {
            None => Polynomial::zero(),
            Some(t) => self.scale(k.inv(t.coeff), k),
        }
    }

    pub fn pow(&self, e: u32, k: PrimeField, ring: &Ring) -> Polynomial {
        let mut acc = Polynomial::one(ring);
        for _ in 0..e {
            acc = acc.mul(self, k);
        }
        acc
    }

    /// Renders in the fixture syntax `c*x^a*y^b + ...`.
    pub fn display(&self, ring: &Ring) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let k = ring.field();
        let mut s = String::new();
        for (n, t) in self.terms.iter().enumerate() {
            let c = k.signed(t.coeff);
            let (neg, mag) = if c < 0 { (true, -c) } else { (false, c) };
            if n == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != 1 || t.mono.is_one() {
                factors.push(mag.to_string());
            }
            for (v, &e) in t.mono.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(ring.vars()[v].clone()),
                    _ => factors.push(format!("{}^{}", ring.vars()[v], e)),
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

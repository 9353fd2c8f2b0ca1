use crate::error::{AlgebraError, Result};
use crate::field_poly::field::PrimeField;
use crate::field_poly::monomial::Monomial;

/// A graded polynomial ring F_p[x_1, ..., x_v] with positive variable weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    field: PrimeField,
    vars: Vec<String>,
    weights: Vec<u32>,
}

impl Ring {
    pub fn new(p: u64, vars: &[&str]) -> Result<Self> {
        Self::with_weights(p, vars.iter().map(|v| v.to_string()).collect(), vec![1; vars.len()])
    }

    pub fn with_weights(p: u64, vars: Vec<String>, weights: Vec<u32>) -> Result<Self> {
        if vars.len() != weights.len() {
            return Err(AlgebraError::DimensionMismatch {
                expected: vars.len(),
                found: weights.len(),
            });
        }
        if weights.contains(&0) {
            return Err(AlgebraError::Validation("variable weights must be positive".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(AlgebraError::Validation(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(AlgebraError::Validation(format!("duplicate variable {v}")));
            }
        }
        Ok(Ring {
            field: PrimeField::new(p)?,
            vars,
            weights,
        })
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    #[inline]
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn monomial(&self, exps: &[u16]) -> Monomial {
        Monomial::new(exps, &self.weights)
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn var_monomial(&self, v: usize) -> Monomial {
        Monomial::var(self.nvars(), v, &self.weights)
    }

    /// All monomials of weighted degree exactly `d`, in descending degrevlex order.
    pub fn monomials_of_degree(&self, d: i32) -> Vec<Monomial> {
        let mut out = Vec::new();
        if d < 0 {
            return out;
        }
        let mut exps = vec![0u16; self.nvars()];
        self.enum_rec(0, d as u32, &mut exps, &mut out);
        out.sort_by(|a, b| b.cmp_degrevlex(a));
        out
    }

    fn enum_rec(&self, v: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if v == self.nvars() {
            if left == 0 {
                out.push(self.monomial(exps));
            }
            return;
        }
        let w = self.weights[v];
        let mut e = 0u32;
        while e * w <= left {
            exps[v] = e as u16;
            self.enum_rec(v + 1, left - e * w, exps, out);
            e += 1;
        }
        exps[v] = 0;
    }

    pub fn check_same(&self, other: &Ring) -> Result<()> {
        if self != other {
            return Err(AlgebraError::RingMismatch(format!(
                "F_{}[{}] vs F_{}[{}]",
                self.field.p(),
                self.vars.join(","),
                other.field.p(),
                other.vars.join(",")
            )));
        }
        Ok(())
    }
}

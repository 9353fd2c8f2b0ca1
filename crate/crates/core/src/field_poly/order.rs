use std::cmp::Ordering;

use crate::error::{AlgebraError, Result};
use crate::field_poly::free::cmp_pot;
use crate::field_poly::monomial::Monomial;

/// Term orders used by the engine.
///
/// Ring monomials are always compared in (weighted) degrevlex. Free-module
/// terms use position-over-term, or the order induced by a list of leading
/// terms when running Schreyer syzygy computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermOrder {
    DegRevLex,
    PositionOverTerm,
    /// `m*e_i > n*e_j` iff `m*lead(g_i) > n*lead(g_j)` in POT, ties broken
    /// by the smaller index winning.
    Schreyer { leads: Vec<(usize, Monomial)> },
}

impl TermOrder {
    pub fn schreyer(leads: Vec<(usize, Monomial)>) -> Self {
        TermOrder::Schreyer { leads }
    }
}

/// A monomial, optionally tagged with a free-module basis index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedMonomial<'a> {
    pub mono: &'a Monomial,
    pub idx: usize,
}

pub fn term_compare(order: &TermOrder, a: IndexedMonomial<'_>, b: IndexedMonomial<'_>) -> Result<Ordering> {
    if a.mono.nvars() != b.mono.nvars() {
        return Err(AlgebraError::DimensionMismatch {
            expected: a.mono.nvars(),
            found: b.mono.nvars(),
        });
    }
    Ok(match order {
        TermOrder::DegRevLex => a.mono.cmp_degrevlex(b.mono),
        TermOrder::PositionOverTerm => cmp_pot(a.idx as u32, a.mono, b.idx as u32, b.mono),
        TermOrder::Schreyer { leads } => {
            let la = leads.get(a.idx).ok_or(AlgebraError::ShapeMismatch {
                operation: "term_compare",
                detail: format!("index {} outside Schreyer frame of size {}", a.idx, leads.len()),
            })?;
            let lb = leads.get(b.idx).ok_or(AlgebraError::ShapeMismatch {
                operation: "term_compare",
                detail: format!("index {} outside Schreyer frame of size {}", b.idx, leads.len()),
            })?;
            if la.1.nvars() != a.mono.nvars() {
                return Err(AlgebraError::DimensionMismatch {
                    expected: la.1.nvars(),
                    found: a.mono.nvars(),
                });
            }
            let ma = a.mono.mul(&la.1);
            let mb = b.mono.mul(&lb.1);
            match cmp_pot(la.0 as u32, &ma, lb.0 as u32, &mb) {
                Ordering::Equal => b.idx.cmp(&a.idx),
                o => o,
            }
        }
    })
}

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field_poly::{FreeElement, Polynomial, PrimeField, Ring};

/// A homogeneous map between graded free modules, stored by columns.
///
/// `source_degrees[c]` and `target_degrees[r]` are generator degrees; column
/// `c` is homogeneous of degree `source_degrees[c] + degree`, so a nonzero
/// entry `(r, c)` has degree `source_degrees[c] + degree - target_degrees[r]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub source_degrees: Vec<i32>,
    pub target_degrees: Vec<i32>,
    pub degree: i32,
    pub columns: Vec<FreeElement>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixDump {
    pub source_degrees: Vec<i32>,
    pub target_degrees: Vec<i32>,
    pub degree: i32,
    /// Row-major entries as polynomial strings.
    pub rows: Vec<Vec<String>>,
}

impl ModuleMap {
    pub fn new(source_degrees: Vec<i32>, target_degrees: Vec<i32>, degree: i32, columns: Vec<FreeElement>) -> Self {
        ModuleMap {
            source_degrees,
            target_degrees,
            degree,
            columns,
        }
    }

    pub fn zero(source_degrees: Vec<i32>, target_degrees: Vec<i32>) -> Self {
        let n = source_degrees.len();
        ModuleMap::new(source_degrees, target_degrees, 0, vec![FreeElement::zero(); n])
    }

    pub fn identity(ring: &Ring, degrees: Vec<i32>) -> Self {
        let cols = (0..degrees.len()).map(|i| FreeElement::unit(i, ring)).collect();
        ModuleMap::new(degrees.clone(), degrees, 0, cols)
    }

    pub fn source_rank(&self) -> usize {
        self.source_degrees.len()
    }

    pub fn target_rank(&self) -> usize {
        self.target_degrees.len()
    }

    pub fn column_degree(&self, c: usize) -> i32 {
        self.source_degrees[c] + self.degree
    }

    pub fn entry(&self, r: usize, c: usize) -> Polynomial {
        self.columns[c].component(r)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    /// Shape and homogeneity check.
    pub fn validate(&self, operation: &'static str, ring: &Ring) -> Result<()> {
        if self.columns.len() != self.source_rank() {
            return Err(AlgebraError::ShapeMismatch {
                operation,
                detail: format!("{} columns for source rank {}", self.columns.len(), self.source_rank()),
            });
        }
        for (c, col) in self.columns.iter().enumerate() {
            if let Some(mi) = col.max_index() {
                if mi >= self.target_rank() {
                    return Err(AlgebraError::ShapeMismatch {
                        operation,
                        detail: format!("column {c} reaches row {mi}, target rank {}", self.target_rank()),
                    });
                }
            }
            if let Some(d) = col.degree(&self.target_degrees) {
                if d != self.column_degree(c) || !col.is_homogeneous(&self.target_degrees) {
                    return Err(AlgebraError::Inhomogeneous {
                        operation,
                        element: col.display(ring),
                    });
                }
            }
        }
        Ok(())
    }

    /// Image of an element of the source free module.
    pub fn apply(&self, v: &FreeElement, k: PrimeField) -> FreeElement {
        let mut acc = FreeElement::zero();
        for (c, p) in v.components() {
            acc = acc.add_mul_poly(&self.columns[c], &p, k);
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap, k: PrimeField) -> ModuleMap {
        ModuleMap {
            source_degrees: other.source_degrees.clone(),
            target_degrees: self.target_degrees.clone(),
            degree: self.degree + other.degree,
            columns: other.columns.iter().map(|col| self.apply(col, k)).collect(),
        }
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial) -> Polynomial, k: PrimeField) -> ModuleMap {
        ModuleMap {
            columns: self
                .columns
                .iter()
                .map(|col| FreeElement::from_components(col.components().into_iter().map(|(i, p)| (i, f(&p))), k))
                .collect(),
            ..self.clone()
        }
    }

    pub fn dump(&self, ring: &Ring) -> MatrixDump {
        let rows = (0..self.target_rank())
            .map(|r| {
                (0..self.source_rank())
                    .map(|c| self.entry(r, c).display(ring))
                    .collect()
            })
            .collect();
        MatrixDump {
            source_degrees: self.source_degrees.clone(),
            target_degrees: self.target_degrees.clone(),
            degree: self.degree,
            rows,
        }
    }
}

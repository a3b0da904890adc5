//! Exact linear algebra over the rationals and prime fields.
//!
//! Everything downstream (chain complexes, algebras, Hochschild complexes) is
//! expressed through [`ExactMatrix`]. Arithmetic never rounds: rationals are
//! arbitrary precision, residues are reduced modulo a prime below 2^32.
//!
//! Elimination picks as pivot the first nonzero column of each reduced row, in
//! row order, so bases returned by [`ExactMatrix::kernel_basis`] and
//! [`ExactMatrix::pivot_columns`] are reproducible run to run.

mod field;
mod matrix;

pub use field::{parse_rational, rational_string, Field, FieldElement};
pub use matrix::ExactMatrix;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("modulus {0} is not a prime below 2^32")]
    BadModulus(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("matrix is {0}x{1}, not square")]
    NotSquare(usize, usize),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// A quotient `k^d / U` with a fixed basis: the complement is spanned by the
/// standard vectors not absorbed by `U`, chosen greedily in index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    ambient: usize,
    /// Standard basis indices whose images form the quotient basis.
    complement: Vec<usize>,
    /// `dim(quotient) x ambient`; sends a vector to its quotient coordinates.
    projection: ExactMatrix,
}

impl Quotient {
    /// Quotient of `k^rows` by the column span of `sub`.
    pub fn new(sub: &ExactMatrix) -> Quotient {
        let field = sub.field();
        let d = sub.rows();
        let id = ExactMatrix::identity(field, d);
        let joint = sub.hstack(&id);
        let pivots = joint.pivot_columns();
        let span: Vec<usize> = pivots.iter().copied().filter(|&p| p < sub.cols()).collect();
        let complement: Vec<usize> = pivots
            .iter()
            .filter(|&&p| p >= sub.cols())
            .map(|p| p - sub.cols())
            .collect();
        let mut ordered = span.clone();
        ordered.extend(complement.iter().map(|c| c + sub.cols()));
        let basis = joint.select_columns(&ordered);
        let inv = basis.inverse().expect("pivot columns form a basis");
        let rows: Vec<usize> = (span.len()..d).collect();
        Quotient {
            ambient: d,
            complement,
            projection: inv.select_rows(&rows),
        }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn coordinates(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        self.projection.mul_vec(v)
    }

    pub fn projection(&self) -> &ExactMatrix {
        &self.projection
    }

    /// Canonical representative of the `j`-th quotient basis vector.
    pub fn lift(&self, coords: &[FieldElement]) -> Vec<FieldElement> {
        let field = self.projection.field();
        let mut v = vec![field.zero(); self.ambient];
        for (c, &idx) in coords.iter().zip(&self.complement) {
            v[idx] = c.clone();
        }
        v
    }

    pub fn complement_indices(&self) -> &[usize] {
        &self.complement
    }
}

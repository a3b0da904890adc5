//! JSON descriptions of algebras and bimodules.
//!
//! An algebra is either
//! `{"structure_constants": c, "basis": [labels], "field": "Q" | "Fp:<p>"}`
//! with `c[i][j][k]` the coefficient of `x_k` in `x_i x_j`, or
//! `{"quiver": {"vertices": n, "arrows": [[src, dst, label], ...], "relations": [[label, ...], ...]}}`.
//! Scalars are integers or strings such as `"-3/4"`. Structure-constant
//! algebras may list `"idempotents"` (coordinate vectors) and a
//! `"radical"` basis; both are validated.
//!
//! A bimodule over a single algebra is either
//! `{"bimodule": {"dim": d, "left": [matrices], "right": [matrices], "presentation": {...}}}`
//! with one `d x d` matrix per basis vector, or `{"twist": "<name>"}`.
//! A presentation is `{"idempotent": M, "left": [M, ...]}` where `M` is a
//! square matrix of algebra elements (coordinate vectors).

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{
    algebra_from_quiver, AMatrix, Algebra, AlgebraError, AlgebraRef, Bimodule, BimodulePresentation,
    Quiver,
};
use crate::exactalg::{parse_rational, ExactMatrix, Field, FieldElement};

/// Path-length cap used when reading quivers from files.
pub const QUIVER_PATH_CAP: usize = 32;

/// A scalar as written in a file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    pub fn to_field(&self, field: Field) -> Result<FieldElement, AlgebraError> {
        match self {
            Scalar::Int(n) => Ok(field.from_i64(*n)),
            Scalar::Text(s) => {
                let r = parse_rational(s)?;
                Ok(field.from_rational(&r)?)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    Quiver {
        quiver: Quiver,
        #[serde(default)]
        field: Option<String>,
    },
    Constants {
        structure_constants: Vec<Vec<Vec<Scalar>>>,
        basis: Vec<String>,
        #[serde(default)]
        field: Option<String>,
        #[serde(default)]
        idempotents: Option<Vec<Vec<Scalar>>>,
        #[serde(default)]
        radical: Option<Vec<Vec<Scalar>>>,
    },
}

fn field_of(tag: &Option<String>, default: Field) -> Result<Field, AlgebraError> {
    match tag {
        None => Ok(default),
        Some(s) => s.parse().map_err(AlgebraError::from),
    }
}

fn vector(field: Field, v: &[Scalar]) -> Result<Vec<FieldElement>, AlgebraError> {
    v.iter().map(|s| s.to_field(field)).collect()
}

impl AlgebraSpec {
    /// Builds the algebra. `default_field` applies when the file names none;
    /// `override_field` (if given) replaces whatever the file says.
    pub fn build(&self, default_field: Field, override_field: Option<Field>) -> Result<Algebra, AlgebraError> {
        match self {
            AlgebraSpec::Quiver { quiver, field } => {
                let f = override_field.map_or_else(|| field_of(field, default_field), Ok)?;
                algebra_from_quiver(f, quiver, QUIVER_PATH_CAP)
            }
            AlgebraSpec::Constants {
                structure_constants,
                basis,
                field,
                idempotents,
                radical,
            } => {
                let f = override_field.map_or_else(|| field_of(field, default_field), Ok)?;
                let d = basis.len();
                let shape_ok = structure_constants.len() == d
                    && structure_constants
                        .iter()
                        .all(|row| row.len() == d && row.iter().all(|c| c.len() == d));
                if !shape_ok {
                    return Err(AlgebraError::BadConstants(format!(
                        "expected a {d}x{d}x{d} array of structure constants"
                    )));
                }
                let mut constants = Vec::with_capacity(d * d * d);
                for row in structure_constants {
                    for c in row {
                        constants.extend(vector(f, c)?);
                    }
                }
                let mut alg = Algebra::new(f, basis.clone(), constants)?;
                if let Some(idem) = idempotents {
                    let idem = idem.iter().map(|v| vector(f, v)).collect::<Result<_, _>>()?;
                    alg = alg.with_idempotents(idem)?;
                }
                if let Some(rad) = radical {
                    let cols: Vec<_> = rad.iter().map(|v| vector(f, v)).collect::<Result<_, _>>()?;
                    alg = alg.with_radical(ExactMatrix::from_columns(f, d, &cols))?;
                }
                Ok(alg)
            }
        }
    }

    pub fn from_json(text: &str) -> Result<AlgebraSpec, AlgebraError> {
        serde_json::from_str(text).map_err(|e| AlgebraError::BadConstants(format!("algebra JSON: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationSpec {
    pub idempotent: Vec<Vec<Vec<Scalar>>>,
    pub left: Vec<Vec<Vec<Vec<Scalar>>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitBimodule {
    pub dim: usize,
    pub left: Vec<Vec<Vec<Scalar>>>,
    pub right: Vec<Vec<Vec<Scalar>>>,
    #[serde(default)]
    pub presentation: Option<PresentationSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BimoduleSpec {
    Explicit { bimodule: ExplicitBimodule },
    Twist { twist: String },
}

fn matrix(field: Field, dim: usize, rows: &[Vec<Scalar>]) -> Result<ExactMatrix, AlgebraError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(AlgebraError::InvalidModule(format!("expected a {dim}x{dim} matrix")));
    }
    let mut entries = Vec::with_capacity(dim * dim);
    for r in rows {
        entries.extend(vector(field, r)?);
    }
    Ok(ExactMatrix::from_entries(field, dim, dim, entries)?)
}

fn amatrix(a: &Algebra, rows: &[Vec<Vec<Scalar>>]) -> Result<AMatrix, AlgebraError> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::InvalidModule("presentation matrices must be square".into()));
    }
    let mut entries = Vec::with_capacity(n * n);
    for r in rows {
        for e in r {
            if e.len() != a.dim() {
                return Err(AlgebraError::InvalidModule(format!(
                    "algebra element with {} coordinates, expected {}",
                    e.len(),
                    a.dim()
                )));
            }
            entries.push(vector(a.field(), e)?);
        }
    }
    Ok(AMatrix::from_entries(n, n, entries))
}

impl BimoduleSpec {
    /// Builds the bimodule over `a`; `twist` resolves automorphism names to
    /// matrices (columns are images of basis vectors).
    pub fn build(
        &self,
        a: &AlgebraRef,
        twist: impl Fn(&str) -> Option<ExactMatrix>,
    ) -> Result<Bimodule, AlgebraError> {
        match self {
            BimoduleSpec::Twist { twist: name } => {
                let sigma = twist(name)
                    .ok_or_else(|| AlgebraError::NotAutomorphism(format!("unknown automorphism {name}")))?;
                Bimodule::twisted(a.clone(), &sigma)
            }
            BimoduleSpec::Explicit { bimodule } => {
                let f = a.field();
                let left = bimodule
                    .left
                    .iter()
                    .map(|m| matrix(f, bimodule.dim, m))
                    .collect::<Result<_, _>>()?;
                let right = bimodule
                    .right
                    .iter()
                    .map(|m| matrix(f, bimodule.dim, m))
                    .collect::<Result<_, _>>()?;
                let m = Bimodule::new(a.clone(), a.clone(), bimodule.dim, left, right)?;
                match &bimodule.presentation {
                    None => Ok(m),
                    Some(p) => {
                        let pres = BimodulePresentation {
                            idempotent: amatrix(a, &p.idempotent)?,
                            left: p.left.iter().map(|l| amatrix(a, l)).collect::<Result<_, _>>()?,
                        };
                        m.with_presentation(pres)
                    }
                }
            }
        }
    }

    pub fn from_value(v: &Value) -> Result<BimoduleSpec, AlgebraError> {
        serde_json::from_value(v.clone()).map_err(|e| AlgebraError::InvalidModule(format!("bimodule JSON: {e}")))
    }
}

/// Shorthand for building a shared algebra from JSON text over `Q` by default.
pub fn algebra_from_json(text: &str) -> Result<AlgebraRef, AlgebraError> {
    Ok(Arc::new(AlgebraSpec::from_json(text)?.build(Field::Rationals, None)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_structure_constants() {
        // k×k with basis 1, e
        let text = r#"{
            "structure_constants": [[[1,0],[0,1]],[[0,1],[0,1]]],
            "basis": ["1", "e"],
            "field": "Q",
            "idempotents": [[0, 1], [1, -1]]
        }"#;
        let a = algebra_from_json(text).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.idempotents().len(), 2);
    }

    #[test]
    fn reads_quiver_over_prime_field() {
        let text = r#"{"quiver": {"vertices": 2, "arrows": [[1, 2, "a"]], "relations": []}, "field": "Fp:5"}"#;
        let a = AlgebraSpec::from_json(text).unwrap().build(Field::Rationals, None).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.field(), Field::prime(5).unwrap());
    }

    #[test]
    fn rejects_bad_shape_and_non_associative() {
        let short = r#"{"structure_constants": [[[1]]], "basis": ["1", "x"]}"#;
        assert!(algebra_from_json(short).is_err());
        // x·x = 1 but (x·x)·x ≠ x·(x·x) is impossible here; break the unit instead
        let no_unit = r#"{"structure_constants": [[[0,1],[0,1]],[[0,1],[0,1]]], "basis": ["1", "x"]}"#;
        assert!(algebra_from_json(no_unit).is_err());
    }

    #[test]
    fn explicit_bimodule_is_validated() {
        let a = algebra_from_json(r#"{"structure_constants": [[[1]]], "basis": ["1"]}"#).unwrap();
        let ok: Value = serde_json::json!({"bimodule": {"dim": 2, "left": [[[1,0],[0,1]]], "right": [[[1,0],[0,1]]]}});
        let m = BimoduleSpec::from_value(&ok).unwrap().build(&a, |_| None).unwrap();
        assert_eq!(m.dim(), 2);
        let bad: Value = serde_json::json!({"bimodule": {"dim": 2, "left": [[[1,1],[0,1]]], "right": [[[1,0],[0,1]]]}});
        assert!(BimoduleSpec::from_value(&bad).unwrap().build(&a, |_| None).is_err());
        let twist: Value = serde_json::json!({"twist": "nope"});
        assert!(BimoduleSpec::from_value(&twist).unwrap().build(&a, |_| None).is_err());
    }
}

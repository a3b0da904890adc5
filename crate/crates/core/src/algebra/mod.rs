//! Finite-dimensional unital associative algebras given by structure constants,
//! their modules, bimodules and projective resolutions.
//!
//! Conventions:
//! * the first basis vector is the unit;
//! * modules are right modules, vectors are columns and a right action is a
//!   matrix `ρ(a)` with `m·a = ρ(a) m`, so `ρ(ab) = ρ(b) ρ(a)`;
//! * in path algebras an arrow `α: i -> j` satisfies `α = e_j α e_i`, hence
//!   `Hom(e_i A, e_j A) ≅ e_j A e_i`.

mod amatrix;
pub mod format;
mod module;
mod projective;
mod quiver;

pub use amatrix::AMatrix;
pub use module::{Bimodule, BimodulePresentation, LeftModule, RightModule};
pub use projective::{
    euler_form, euler_form_projectives, ext_dims, hom_complex, hom_dim_projectives,
    projective_resolution,
    PerfectComplex, PerfectObject, ProjectivePresentation, DEFAULT_MAX_LENGTH,
};
pub use quiver::{algebra_from_quiver, Quiver};

use std::sync::Arc;

use thiserror::Error;

use crate::exactalg::{AlgError, ExactMatrix, Field, FieldElement};

/// Coordinates of an algebra (or module) element in the chosen basis.
pub type Element = Vec<FieldElement>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("first basis vector is not a two-sided unit")]
    NoUnit,
    #[error("structure constants have the wrong length: {0}")]
    BadConstants(String),
    #[error("not an algebra automorphism: {0}")]
    NotAutomorphism(String),
    #[error("quotient is not finite-dimensional within path length cap {0}")]
    InfiniteDimensional(usize),
    #[error("projective dimension exceeds cap {0}")]
    ProjectiveDimensionExceedsCap(usize),
    #[error("Jacobson radical unavailable: {0}")]
    RadicalUnavailable(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid idempotent data: {0}")]
    InvalidIdempotents(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

pub(crate) type Sparse = Vec<(usize, FieldElement)>;

/// Finite-dimensional associative unital algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    labels: Vec<String>,
    /// `table[i * dim + j]` holds the nonzero coordinates of `x_i x_j`.
    table: Vec<Sparse>,
    /// Complete family of orthogonal idempotents summing to 1.
    idempotents: Vec<Element>,
    /// Basis of the Jacobson radical (columns), when known structurally.
    radical: Option<ExactMatrix>,
}

fn sparse_of(v: &[FieldElement]) -> Sparse {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

impl Algebra {
    /// Builds an algebra from structure constants `c[(i * d + j) * d + k]`, the
    /// coefficient of `x_k` in `x_i x_j`. Checks the unit axiom for `x_0` and
    /// associativity on all basis triples.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        constants: Vec<FieldElement>,
    ) -> Result<Algebra, AlgebraError> {
        let d = labels.len();
        if constants.len() != d * d * d {
            return Err(AlgebraError::BadConstants(format!(
                "{} constants for dimension {d}",
                constants.len()
            )));
        }
        if let Some(bad) = constants.iter().find(|c| c.field() != field) {
            return Err(AlgError::FieldMismatch(field, bad.field()).into());
        }
        let table = (0..d * d)
            .map(|ij| sparse_of(&constants[ij * d..(ij + 1) * d]))
            .collect();
        Self::from_table(field, labels, table)
    }

    pub(crate) fn from_table(
        field: Field,
        labels: Vec<String>,
        table: Vec<Sparse>,
    ) -> Result<Algebra, AlgebraError> {
        let d = labels.len();
        if d == 0 {
            return Err(AlgebraError::NoUnit);
        }
        let mut unit = vec![field.zero(); d];
        unit[0] = field.one();
        let alg = Algebra {
            field,
            labels,
            table,
            idempotents: vec![unit],
            radical: None,
        };
        alg.check_unit()?;
        alg.check_associative()?;
        Ok(alg)
    }

    /// Builds an algebra from a multiplication table in a basis where the unit
    /// is `unit` (not necessarily a basis vector). The basis is changed so the
    /// unit comes first: it replaces the first basis vector on which it has a
    /// nonzero coordinate.
    pub(crate) fn rebased_on_unit(
        field: Field,
        labels: Vec<String>,
        table: Vec<Sparse>,
        unit: &[FieldElement],
    ) -> Result<(Algebra, ExactMatrix), AlgebraError> {
        let d = labels.len();
        let pivot = unit
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(AlgebraError::NoUnit)?;
        let mut order: Vec<usize> = vec![pivot];
        order.extend((0..d).filter(|&i| i != pivot));
        // columns of `change` are the new basis vectors in old coordinates
        let change = ExactMatrix::from_fn(field, d, d, |r, c| {
            if c == 0 {
                unit[r].clone()
            } else if r == order[c] {
                field.one()
            } else {
                field.zero()
            }
        });
        let inv = change
            .inverse()
            .ok_or(AlgebraError::NoUnit)?;
        let old_mul = |a: &[FieldElement], b: &[FieldElement]| -> Element {
            let mut out = vec![field.zero(); d];
            for (i, ai) in a.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                for (j, bj) in b.iter().enumerate() {
                    if bj.is_zero() {
                        continue;
                    }
                    let s = ai * bj;
                    for (k, c) in &table[i * d + j] {
                        out[*k] += &(&s * c);
                    }
                }
            }
            out
        };
        let cols = change.columns();
        let mut new_table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let prod = old_mul(&cols[i], &cols[j]);
                new_table.push(sparse_of(&inv.mul_vec(&prod)));
            }
        }
        let mut new_labels = vec!["1".to_string()];
        new_labels.extend(order[1..].iter().map(|&i| labels[i].clone()));
        Ok((Self::from_table(field, new_labels, new_table)?, inv))
    }

    fn check_unit(&self) -> Result<(), AlgebraError> {
        let d = self.dim();
        for j in 0..d {
            let want: Sparse = vec![(j, self.field.one())];
            if self.table[j] != want || self.table[j * d] != want {
                return Err(AlgebraError::NoUnit);
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<(), AlgebraError> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut left = self.zero();
                    for (l, c) in &self.table[i * d + j] {
                        for (m, c2) in &self.table[l * d + k] {
                            left[*m] += &(c * c2);
                        }
                    }
                    let mut right = self.zero();
                    for (l, c) in &self.table[j * d + k] {
                        for (m, c2) in &self.table[i * d + l] {
                            right[*m] += &(c * c2);
                        }
                    }
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn zero(&self) -> Element {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn unit(&self) -> Element {
        self.basis_element(0)
    }

    /// Coefficient of `x_k` in `x_i x_j`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> FieldElement {
        self.table[i * self.dim() + j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or(self.field.zero(), |(_, c)| c.clone())
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Element {
        let mut out = self.zero();
        for (k, c) in &self.table[i * self.dim() + j] {
            out[*k] = c.clone();
        }
        out
    }

    pub fn mul(&self, a: &[FieldElement], b: &[FieldElement]) -> Element {
        let d = self.dim();
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let s = ai * bj;
                for (k, c) in &self.table[i * d + j] {
                    out[k.to_owned()] += &(&s * c);
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[FieldElement], b: &[FieldElement]) -> Element {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[FieldElement], b: &[FieldElement]) -> Element {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(&self, s: &FieldElement, a: &[FieldElement]) -> Element {
        a.iter().map(|x| x * s).collect()
    }

    /// Matrix of `z ↦ a z`.
    pub fn left_mult(&self, a: &[FieldElement]) -> ExactMatrix {
        let cols: Vec<Element> = (0..self.dim())
            .map(|j| self.mul(a, &self.basis_element(j)))
            .collect();
        ExactMatrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Matrix of `z ↦ z b`.
    pub fn right_mult(&self, b: &[FieldElement]) -> ExactMatrix {
        let cols: Vec<Element> = (0..self.dim())
            .map(|j| self.mul(&self.basis_element(j), b))
            .collect();
        ExactMatrix::from_columns(self.field, self.dim(), &cols)
    }

    /// Columns spanning `[A, A]`, one per basis pair `i < j`.
    pub fn commutators(&self) -> ExactMatrix {
        let d = self.dim();
        let mut cols = vec![];
        for i in 0..d {
            for j in i + 1..d {
                let c = self.sub(&self.mul_basis(i, j), &self.mul_basis(j, i));
                if c.iter().any(|x| !x.is_zero()) {
                    cols.push(c);
                }
            }
        }
        ExactMatrix::from_columns(self.field, d, &cols)
    }

    pub fn idempotents(&self) -> &[Element] {
        &self.idempotents
    }

    /// Replaces the idempotent family. The elements must be nonzero, pairwise
    /// orthogonal idempotents summing to the unit.
    pub fn with_idempotents(mut self, idempotents: Vec<Element>) -> Result<Algebra, AlgebraError> {
        let bad = |msg: String| Err(AlgebraError::InvalidIdempotents(msg));
        if idempotents.is_empty() {
            return bad("empty family".into());
        }
        let mut sum = self.zero();
        for (s, e) in idempotents.iter().enumerate() {
            if e.len() != self.dim() {
                return bad(format!("idempotent {s} has the wrong length"));
            }
            if e.iter().all(FieldElement::is_zero) {
                return bad(format!("idempotent {s} is zero"));
            }
            for (t, f) in idempotents.iter().enumerate() {
                let p = self.mul(e, f);
                let want = if s == t { e.clone() } else { self.zero() };
                if p != want {
                    return bad(format!("e_{s} e_{t} has the wrong value"));
                }
            }
            sum = self.add(&sum, e);
        }
        if sum != self.unit() {
            return bad("idempotents do not sum to 1".into());
        }
        self.idempotents = idempotents;
        Ok(self)
    }

    /// Records a known basis of the Jacobson radical (columns). The span must
    /// be a two-sided ideal of nilpotent elements; the ideal property is checked.
    pub fn with_radical(mut self, radical: ExactMatrix) -> Result<Algebra, AlgebraError> {
        if radical.rows() != self.dim() {
            return Err(AlgebraError::Mismatch("radical basis has wrong length".into()));
        }
        let basis = radical.select_columns(&radical.pivot_columns());
        for r in basis.columns() {
            for i in 0..self.dim() {
                let x = self.basis_element(i);
                for p in [self.mul(&x, &r), self.mul(&r, &x)] {
                    if !in_span(&basis, &p) {
                        return Err(AlgebraError::Mismatch(
                            "declared radical is not an ideal".into(),
                        ));
                    }
                }
            }
        }
        self.radical = Some(basis);
        Ok(self)
    }

    /// Basis of the Jacobson radical. Uses the recorded structural basis when
    /// present; in characteristic 0 falls back to the radical of the trace form
    /// `{x : tr(L_{xy}) = 0 for all y}`.
    pub fn radical(&self) -> Result<ExactMatrix, AlgebraError> {
        if let Some(r) = &self.radical {
            return Ok(r.clone());
        }
        if self.field.characteristic() != 0 {
            return Err(AlgebraError::RadicalUnavailable(
                "no structural radical recorded and the trace form criterion needs characteristic 0"
                    .into(),
            ));
        }
        let d = self.dim();
        let traces: Vec<FieldElement> = (0..d * d)
            .map(|ij| {
                let (i, j) = (ij / d, ij % d);
                self.left_mult(&self.mul_basis(i, j)).trace().expect("square")
            })
            .collect();
        let gram = ExactMatrix::from_fn(self.field, d, d, |i, j| traces[i * d + j].clone());
        Ok(gram.kernel_basis())
    }

    pub fn has_structural_radical(&self) -> bool {
        self.radical.is_some()
    }

    /// The opposite algebra: same basis, `x_i ∘ x_j = x_j x_i`.
    pub fn opposite(&self) -> Algebra {
        let d = self.dim();
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                table.push(self.table[j * d + i].clone());
            }
        }
        Algebra {
            field: self.field,
            labels: self.labels.clone(),
            table,
            idempotents: self.idempotents.clone(),
            radical: self.radical.clone(),
        }
    }

    /// `A ⊗ B` with basis pairs `x_i ⊗ y_j` at index `i * dim B + j`.
    pub fn tensor(&self, other: &Algebra) -> Result<Algebra, AlgebraError> {
        if self.field != other.field {
            return Err(AlgError::FieldMismatch(self.field, other.field).into());
        }
        let (da, db) = (self.dim(), other.dim());
        let d = da * db;
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let (ia, ib) = (i / db, i % db);
                let (ja, jb) = (j / db, j % db);
                let mut out = vec![];
                for (ka, ca) in &self.table[ia * da + ja] {
                    for (kb, cb) in &other.table[ib * db + jb] {
                        out.push((ka * db + kb, ca * cb));
                    }
                }
                out.sort_by_key(|e| e.0);
                table.push(out);
            }
        }
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| tensor_label(a, b)))
            .collect();
        let alg = Self::from_table(self.field, labels, table)?;
        let field = self.field;
        let pair = |a: &Element, b: &Element| -> Element {
            let mut v = vec![field.zero(); d];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    v[i * db + j] = x * y;
                }
            }
            v
        };
        let idem = self
            .idempotents
            .iter()
            .flat_map(|e| other.idempotents.iter().map(|f| pair(e, f)))
            .collect();
        let mut alg = alg.with_idempotents(idem)?;
        if let (Some(ra), Some(rb)) = (&self.radical, &other.radical) {
            let mut cols = vec![];
            for r in ra.columns() {
                for j in 0..db {
                    cols.push(pair(&r, &other.basis_element(j)));
                }
            }
            for r in rb.columns() {
                for i in 0..da {
                    cols.push(pair(&self.basis_element(i), &r));
                }
            }
            alg = alg.with_radical(ExactMatrix::from_columns(self.field, d, &cols))?;
        }
        Ok(alg)
    }

    /// `A × B` with basis `(x_i, 0)` then `(0, y_j)`, rebased so `(1, 1)` comes first.
    pub fn product(&self, other: &Algebra) -> Result<Algebra, AlgebraError> {
        if self.field != other.field {
            return Err(AlgError::FieldMismatch(self.field, other.field).into());
        }
        let (da, db) = (self.dim(), other.dim());
        let d = da + db;
        let mut table = vec![vec![]; d * d];
        for i in 0..da {
            for j in 0..da {
                table[i * d + j] = self.table[i * da + j].clone();
            }
        }
        for i in 0..db {
            for j in 0..db {
                table[(da + i) * d + da + j] = other.table[i * db + j]
                    .iter()
                    .map(|(k, c)| (da + k, c.clone()))
                    .collect();
            }
        }
        let labels: Vec<String> = self
            .labels
            .iter()
            .map(|l| format!("({l},0)"))
            .chain(other.labels.iter().map(|l| format!("(0,{l})")))
            .collect();
        let mut unit = vec![self.field.zero(); d];
        unit[0] = self.field.one();
        unit[da] = self.field.one();
        let (alg, to_new) = Self::rebased_on_unit(self.field, labels, table, &unit)?;
        let embed_a = |a: &Element| -> Element {
            let mut v = vec![self.field.zero(); d];
            v[..da].clone_from_slice(a);
            to_new.mul_vec(&v)
        };
        let embed_b = |b: &Element| -> Element {
            let mut v = vec![self.field.zero(); d];
            v[da..].clone_from_slice(b);
            to_new.mul_vec(&v)
        };
        let idem = self
            .idempotents
            .iter()
            .map(embed_a)
            .chain(other.idempotents.iter().map(embed_b))
            .collect();
        let mut alg = alg.with_idempotents(idem)?;
        if let (Some(ra), Some(rb)) = (&self.radical, &other.radical) {
            let cols: Vec<Element> = ra
                .columns()
                .iter()
                .map(embed_a)
                .chain(rb.columns().iter().map(embed_b))
                .collect();
            alg = alg.with_radical(ExactMatrix::from_columns(self.field, d, &cols))?;
        }
        Ok(alg)
    }

    /// `M_n(A)` with basis `E_pq ⊗ x_k` at `(p * n + q) * dim A + k`, rebased on the unit.
    pub fn matrix_algebra(&self, n: usize) -> Result<Algebra, AlgebraError> {
        self.matrix_algebra_with_basis(n).map(|(a, _)| a)
    }

    /// `M_n(A)` together with the matrix taking new coordinates to the
    /// `E_pq ⊗ x_k` coordinates.
    fn matrix_algebra_with_basis(&self, n: usize) -> Result<(Algebra, ExactMatrix), AlgebraError> {
        let da = self.dim();
        let d = n * n * da;
        let idx = |p: usize, q: usize, k: usize| (p * n + q) * da + k;
        let mut table = vec![vec![]; d * d];
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for i in 0..da {
                        for j in 0..da {
                            table[idx(p, q, i) * d + idx(q, r, j)] = self.table[i * da + j]
                                .iter()
                                .map(|(k, c)| (idx(p, r, *k), c.clone()))
                                .collect();
                        }
                    }
                }
            }
        }
        let mut labels = vec![];
        for p in 0..n {
            for q in 0..n {
                for l in &self.labels {
                    labels.push(format!("E{}{}{}", p + 1, q + 1, suffix(l)));
                }
            }
        }
        let mut unit = vec![self.field.zero(); d];
        for p in 0..n {
            unit[idx(p, p, 0)] = self.field.one();
        }
        let (alg, to_new) = Self::rebased_on_unit(self.field, labels, table, &unit)?;
        let place = |p: usize, q: usize, a: &Element| -> Element {
            let mut v = vec![self.field.zero(); d];
            for (k, c) in a.iter().enumerate() {
                v[idx(p, q, k)] = c.clone();
            }
            to_new.mul_vec(&v)
        };
        let idem = (0..n)
            .flat_map(|p| self.idempotents.iter().map(move |e| (p, e)))
            .map(|(p, e)| place(p, p, e))
            .collect();
        let mut alg = alg.with_idempotents(idem)?;
        if let Some(ra) = &self.radical {
            let mut cols = vec![];
            for p in 0..n {
                for q in 0..n {
                    for r in ra.columns() {
                        cols.push(place(p, q, &r));
                    }
                }
            }
            alg = alg.with_radical(ExactMatrix::from_columns(self.field, d, &cols))?;
        }
        let from_new = to_new.inverse().expect("change of basis is invertible");
        Ok((alg, from_new))
    }

    /// Group algebra of the permutation group generated by `generators`
    /// (each a permutation of `0..m` in one-line notation). The identity comes
    /// first, remaining elements in breadth-first order over the generators.
    /// Products compose as functions: `(gh)(x) = g(h(x))`.
    pub fn group_algebra(field: Field, generators: &[Vec<usize>]) -> Result<Algebra, AlgebraError> {
        let m = generators.first().map_or(0, Vec::len);
        for g in generators {
            let mut seen = vec![false; m];
            if g.len() != m || g.iter().any(|&x| x >= m || std::mem::replace(&mut seen[x], true)) {
                return Err(AlgebraError::BadConstants(format!("{g:?} is not a permutation")));
            }
        }
        let compose = |g: &[usize], h: &[usize]| -> Vec<usize> { h.iter().map(|&x| g[x]).collect() };
        let mut elements: Vec<Vec<usize>> = vec![(0..m).collect()];
        let mut i = 0;
        while i < elements.len() {
            for g in generators {
                let e = compose(g, &elements[i]);
                if !elements.contains(&e) {
                    elements.push(e);
                }
            }
            i += 1;
        }
        let d = elements.len();
        let mut table = Vec::with_capacity(d * d);
        for a in &elements {
            for b in &elements {
                let c = compose(a, b);
                let k = elements.iter().position(|e| *e == c).expect("closed");
                table.push(vec![(k, field.one())]);
            }
        }
        let labels = elements
            .iter()
            .enumerate()
            .map(|(i, _)| if i == 0 { "1".to_string() } else { format!("g{i}") })
            .collect();
        let alg = Self::from_table(field, labels, table)?;
        let p = field.characteristic();
        if p == 0 || !(d as u64).is_multiple_of(p) {
            // Maschke: semisimple
            let r = ExactMatrix::zeros(field, d, 0);
            return alg.with_radical(r);
        }
        Ok(alg)
    }

    /// Checks that `sigma` (columns = images of basis vectors) is a unital
    /// algebra automorphism.
    pub fn check_automorphism(&self, sigma: &ExactMatrix) -> Result<(), AlgebraError> {
        let d = self.dim();
        if sigma.rows() != d || sigma.cols() != d {
            return Err(AlgebraError::NotAutomorphism(format!(
                "{}x{} matrix for a {d}-dimensional algebra",
                sigma.rows(),
                sigma.cols()
            )));
        }
        if sigma.rank() != d {
            return Err(AlgebraError::NotAutomorphism("not invertible".into()));
        }
        if sigma.column(0) != self.unit() {
            return Err(AlgebraError::NotAutomorphism("does not fix the unit".into()));
        }
        let cols = sigma.columns();
        for i in 0..d {
            for j in 0..d {
                let lhs = sigma.mul_vec(&self.mul_basis(i, j));
                let rhs = self.mul(&cols[i], &cols[j]);
                if lhs != rhs {
                    return Err(AlgebraError::NotAutomorphism(format!(
                        "σ({a}·{b}) ≠ σ({a})·σ({b})",
                        a = self.labels[i],
                        b = self.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Index of a basis vector by label.
    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

fn tensor_label(a: &str, b: &str) -> String {
    match (a, b) {
        ("1", "1") => "1".into(),
        ("1", _) => b.into(),
        (_, "1") => a.into(),
        _ => format!("{a}⊗{b}"),
    }
}

fn suffix(label: &str) -> String {
    if label == "1" {
        String::new()
    } else {
        format!("⊗{label}")
    }
}

pub(crate) fn in_span(basis: &ExactMatrix, v: &[FieldElement]) -> bool {
    if basis.cols() == 0 {
        return v.iter().all(FieldElement::is_zero);
    }
    let rhs = ExactMatrix::from_columns(basis.field(), v.len(), &[v.to_vec()]);
    basis.solve(&rhs).expect("shapes agree").is_some()
}

/// Shared handle; algebras are immutable once built.
pub type AlgebraRef = Arc<Algebra>;

/// `M_n(A)` remembering how its basis sits over `E_pq ⊗ x_k`.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    pub algebra: AlgebraRef,
    pub base: AlgebraRef,
    pub n: usize,
    /// Column `b` holds basis vector `b` of `M_n(A)` in `E_pq ⊗ x_k` coordinates.
    pub(crate) from_new: ExactMatrix,
}

impl MatrixAlgebra {
    pub fn new(base: AlgebraRef, n: usize) -> Result<MatrixAlgebra, AlgebraError> {
        let (alg, from_new) = base.matrix_algebra_with_basis(n)?;
        Ok(MatrixAlgebra {
            algebra: Arc::new(alg),
            base,
            n,
            from_new,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    pub(crate) fn field_k() -> Algebra {
        Algebra::new(q(), vec!["1".into()], vec![q().one()]).unwrap()
    }

    #[test]
    fn rejects_non_associative() {
        // x x = y, x y = x, y x = 0: (x x) x = 0 but x (x x) = x
        let f = q();
        let d = 3;
        let mut c = vec![f.zero(); d * d * d];
        let set = |c: &mut Vec<FieldElement>, i: usize, j: usize, k: usize| {
            c[(i * d + j) * d + k] = f.one();
        };
        for j in 0..d {
            set(&mut c, 0, j, j);
            set(&mut c, j, 0, j);
        }
        set(&mut c, 1, 1, 2); // x x = y
        set(&mut c, 1, 2, 1); // x y = x
        let err = Algebra::new(f, vec!["1".into(), "x".into(), "y".into()], c).unwrap_err();
        assert!(matches!(err, AlgebraError::NotAssociative(..)));
    }

    #[test]
    fn rejects_missing_unit() {
        let f = q();
        let err = Algebra::new(f, vec!["a".into()], vec![f.zero()]).unwrap_err();
        assert_eq!(err, AlgebraError::NoUnit);
    }

    #[test]
    fn opposite_is_involution() {
        let m2 = field_k().matrix_algebra(2).unwrap();
        assert_eq!(m2.opposite().opposite(), m2);
        assert_eq!(field_k().opposite(), field_k());
    }

    #[test]
    fn tensor_dims_and_unit() {
        let k = field_k();
        let kk = k.product(&k).unwrap();
        let t = k.tensor(&kk).unwrap();
        assert_eq!(t.dim(), 2);
        assert_eq!(t.labels(), kk.labels());
        let t4 = kk.tensor(&kk).unwrap();
        assert_eq!(t4.dim(), 4);
        // k^4 is commutative with 4 orthogonal idempotents
        assert_eq!(t4.commutators().rank(), 0);
        assert_eq!(t4.idempotents().len(), 4);
    }

    #[test]
    fn matrix_algebra_of_field() {
        let m2 = field_k().matrix_algebra(2).unwrap();
        assert_eq!(m2.dim(), 4);
        assert_eq!(m2.labels()[0], "1");
        assert_eq!(m2.commutators().rank(), 3);
        assert_eq!(m2.radical().unwrap().cols(), 0);
    }

    #[test]
    fn group_algebra_of_z2() {
        let a = Algebra::group_algebra(q(), &[vec![1, 0]]).unwrap();
        assert_eq!(a.dim(), 2);
        // g² = 1
        assert_eq!(a.mul_basis(1, 1), a.unit());
    }

    #[test]
    fn product_has_orthogonal_idempotents() {
        let k = field_k();
        let kk = k.product(&k).unwrap();
        assert_eq!(kk.dim(), 2);
        let e = kk.idempotents();
        assert_eq!(e.len(), 2);
        assert!(kk.mul(&e[0], &e[1]).iter().all(FieldElement::is_zero));
        assert_eq!(kk.add(&e[0], &e[1]), kk.unit());
    }

    #[test]
    fn dickson_radical_of_dual_numbers() {
        // k[x]/x² by structure constants, no structural radical recorded
        let f = q();
        let mut c = vec![f.zero(); 8];
        c[0] = f.one(); // 1·1 = 1
        c[3] = f.one(); // 1·x = x
        c[5] = f.one(); // x·1 = x
        let a = Algebra::new(f, vec!["1".into(), "x".into()], c).unwrap();
        let r = a.radical().unwrap();
        assert_eq!(r.cols(), 1);
        assert!(r[(0, 0)].is_zero());
    }

    #[test]
    fn radical_needs_char_zero_without_structure() {
        let f = Field::prime(3).unwrap();
        let a = Algebra::new(f, vec!["1".into()], vec![f.one()]).unwrap();
        assert!(matches!(a.radical(), Err(AlgebraError::RadicalUnavailable(_))));
    }

    #[test]
    fn automorphism_check_names_the_product() {
        let k = field_k();
        let kk = k.product(&k).unwrap();
        // swap is fine
        let swap_ok = {
            let e = kk.idempotents();
            let cols: Vec<Element> = (0..2)
                .map(|i| {
                    // image of basis vector i under e0 <-> e1
                    let x = kk.basis_element(i);
                    let c0 = crate::exactalg::ExactMatrix::from_columns(q(), 2, e);
                    let coords = c0.solve(&ExactMatrix::from_columns(q(), 2, &[x])).unwrap().unwrap();
                    kk.add(&kk.scale(&coords[(0, 0)], &e[1]), &kk.scale(&coords[(1, 0)], &e[0]))
                })
                .collect();
            ExactMatrix::from_columns(q(), 2, &cols)
        };
        kk.check_automorphism(&swap_ok).unwrap();
        let scale = ExactMatrix::from_i64_rows(q(), &[vec![1, 0], vec![0, 2]]);
        let err = kk.check_automorphism(&scale).unwrap_err();
        assert!(matches!(err, AlgebraError::NotAutomorphism(msg) if msg.contains('σ')));
    }
}

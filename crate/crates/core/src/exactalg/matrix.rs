use std::fmt;

use super::{AlgError, Field, FieldElement};

/// Dense matrix over an exact field, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<FieldElement>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = FieldElement;

    fn index(&self, (r, c): (usize, usize)) -> &FieldElement {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut FieldElement {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        &mut self.entries[r * self.cols + c]
    }
}

type SparseRow = Vec<(usize, FieldElement)>;

/// Reduced row echelon form of a matrix, kept sparse.
struct Rref {
    /// Pivot rows sorted by pivot column; each row's leading entry is 1 and
    /// every other pivot column is zero in it.
    rows: Vec<SparseRow>,
    pivots: Vec<usize>,
}

fn leading(row: &SparseRow) -> Option<usize> {
    row.first().map(|(c, _)| *c)
}

/// `target -= factor * source`, both sorted by column.
fn axpy(target: &SparseRow, factor: &FieldElement, source: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let ci = target.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = source.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push(target[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -&(factor * &source[j].1)));
            j += 1;
        } else {
            let v = &target[i].1 - &(factor * &source[j].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn normalize(row: &mut SparseRow) {
    let inv = row[0].1.inv().expect("leading entry is nonzero");
    for (_, v) in row.iter_mut() {
        *v = &*v * &inv;
    }
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c);
                assert_eq!(v.field(), field, "entry from a different field");
                entries.push(v);
            }
        }
        ExactMatrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    /// Builds a matrix from row-major entries; all must lie in `field`.
    pub fn from_entries(
        field: Field,
        rows: usize,
        cols: usize,
        entries: Vec<FieldElement>,
    ) -> Result<Self, AlgError> {
        if entries.len() != rows * cols {
            return Err(AlgError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.field() != field) {
            return Err(AlgError::FieldMismatch(field, bad.field()));
        }
        Ok(ExactMatrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    /// Integer matrix given by rows. Panics on ragged input.
    pub fn from_i64_rows(field: Field, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(field, rows.len(), cols, |r, c| field.from_i64(rows[r][c]))
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<FieldElement>]) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows), "column length mismatch");
        Self::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_zero)
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn column(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<FieldElement>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        ExactMatrix {
            entries: self.entries.iter().map(|e| e * s).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &ExactMatrix) -> Self {
        self.check_same_shape(other);
        ExactMatrix {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &ExactMatrix) -> Self {
        self.check_same_shape(other);
        ExactMatrix {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
            ..self.clone()
        }
    }

    fn check_same_shape(&self, other: &ExactMatrix) {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(r, c)] += &t;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Kronecker product: block (i, j) is `self[i, j] * other`.
    pub fn kronecker(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.field, other.field, "field mismatch");
        let (r2, c2) = (other.rows, other.cols);
        Self::from_fn(self.field, self.rows * r2, self.cols * c2, |r, c| {
            &self[(r / r2, c / c2)] * &other[(r % r2, c % c2)]
        })
    }

    pub fn hstack(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        Self::from_fn(self.field, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        Self::from_fn(self.field, self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self[(r, c)].clone()
            } else {
                other[(r - self.rows, c)].clone()
            }
        })
    }

    /// Sub-matrix made of the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.field, self.rows, cols.len(), |r, c| self[(r, cols[c])].clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(self.field, rows.len(), self.cols, |r, c| self[(rows[r], c)].clone())
    }

    fn sparse_rows(&self) -> Vec<SparseRow> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect()
    }

    /// Gauss-Jordan elimination. Rows are inserted in order and reduced against
    /// the pivots found so far; a pivot is the first nonzero column of a reduced row.
    fn rref(&self) -> Rref {
        // pivot column -> row with that leading column
        let mut by_pivot: std::collections::BTreeMap<usize, SparseRow> = Default::default();
        for mut row in self.sparse_rows() {
            while let Some(c) = leading(&row) {
                match by_pivot.get(&c) {
                    Some(p) => {
                        let f = row[0].1.clone();
                        row = axpy(&row, &f, p);
                    }
                    None => break,
                }
            }
            if leading(&row).is_some() {
                normalize(&mut row);
                let c = row[0].0;
                by_pivot.insert(c, row);
            }
        }
        // Back-substitution: clear every pivot column from the other rows.
        let pivots: Vec<usize> = by_pivot.keys().copied().collect();
        let mut rows: Vec<SparseRow> = by_pivot.into_values().collect();
        for i in (0..rows.len()).rev() {
            let pc = pivots[i];
            let (head, tail) = rows.split_at_mut(i);
            let pivot_row = &tail[0];
            for row in head.iter_mut() {
                if let Ok(pos) = row.binary_search_by_key(&pc, |e| e.0) {
                    let f = row[pos].1.clone();
                    *row = axpy(row, &f, pivot_row);
                }
            }
        }
        Rref { rows, pivots }
    }

    /// Rank as a linear map.
    pub fn rank(&self) -> usize {
        // Forward elimination is enough for the rank.
        let mut by_pivot: std::collections::HashMap<usize, SparseRow> = Default::default();
        let (rows, transpose);
        if self.rows > self.cols {
            transpose = self.transpose();
            rows = transpose.sparse_rows();
        } else {
            rows = self.sparse_rows();
        }
        for mut row in rows {
            while let Some(c) = leading(&row) {
                match by_pivot.get(&c) {
                    Some(p) => {
                        let f = row[0].1.clone();
                        row = axpy(&row, &f, p);
                    }
                    None => break,
                }
            }
            if leading(&row).is_some() {
                normalize(&mut row);
                by_pivot.insert(row[0].0, row);
            }
        }
        by_pivot.len()
    }

    /// Indices of the first maximal linearly independent set of columns
    /// (the pivot columns of the row echelon form).
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }

    /// Basis of the kernel, as the columns of the returned `cols x nullity` matrix.
    /// One vector per free column, with a 1 in that column.
    pub fn kernel_basis(&self) -> ExactMatrix {
        let rref = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &rref.pivots {
                v[p] = true;
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = ExactMatrix::zeros(self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out[(f, k)] = self.field.one();
            for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
                if let Ok(pos) = row.binary_search_by_key(&f, |e| e.0) {
                    out[(p, k)] = -&row[pos].1;
                }
            }
        }
        out
    }

    /// Sum of the diagonal.
    pub fn trace(&self) -> Result<FieldElement, AlgError> {
        if !self.is_square() {
            return Err(AlgError::NotSquare(self.rows, self.cols));
        }
        let mut acc = self.field.zero();
        for i in 0..self.rows {
            acc += &self[(i, i)];
        }
        Ok(acc)
    }

    /// Some `x` with `self * x = rhs`, or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &ExactMatrix) -> Result<Option<ExactMatrix>, AlgError> {
        if rhs.rows != self.rows {
            return Err(AlgError::Shape(format!(
                "right-hand side has {} rows, matrix has {}",
                rhs.rows, self.rows
            )));
        }
        if rhs.field != self.field {
            return Err(AlgError::FieldMismatch(self.field, rhs.field));
        }
        let aug = self.hstack(rhs);
        let rref = aug.rref();
        if rref.pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = ExactMatrix::zeros(self.field, self.cols, rhs.cols);
        for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
            for (c, v) in row {
                if *c >= self.cols {
                    x[(p, c - self.cols)] = v.clone();
                }
            }
        }
        Ok(Some(x))
    }

    /// Two-sided inverse of a square matrix.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        if !self.is_square() {
            return None;
        }
        let id = ExactMatrix::identity(self.field, self.rows);
        let x = self.solve(&id).ok()??;
        if self.rank() == self.rows {
            Some(x)
        } else {
            None
        }
    }
}

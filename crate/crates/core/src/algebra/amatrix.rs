use super::{Algebra, Element};
use crate::exactalg::{ExactMatrix, FieldElement};

/// Matrix with entries in an algebra. Acts on column vectors in `A^cols`
/// from the left, which commutes with the right `A`-action on columns.
///
/// A column vector in `A^n` is flattened to `k^{n·dim A}` with slot `i`,
/// coordinate `k` at index `i * dim A + k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Element>,
}

impl AMatrix {
    pub fn zeros(a: &Algebra, rows: usize, cols: usize) -> AMatrix {
        AMatrix {
            rows,
            cols,
            entries: vec![a.zero(); rows * cols],
        }
    }

    pub fn identity(a: &Algebra, n: usize) -> AMatrix {
        let mut m = Self::zeros(a, n, n);
        for i in 0..n {
            m.entries[i * n + i] = a.unit();
        }
        m
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(a: &Algebra, diag: &[Element]) -> AMatrix {
        let n = diag.len();
        let mut m = Self::zeros(a, n, n);
        for (i, e) in diag.iter().enumerate() {
            m.entries[i * n + i] = e.clone();
        }
        m
    }

    /// Entries `m[(i, j)] · 1_A`.
    pub fn from_scalars(a: &Algebra, m: &ExactMatrix) -> AMatrix {
        let entries = m
            .entries()
            .iter()
            .map(|c| a.scale(c, &a.unit()))
            .collect();
        AMatrix {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Element>) -> AMatrix {
        assert_eq!(entries.len(), rows * cols, "entry count");
        AMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Element {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Element) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.iter().all(FieldElement::is_zero))
    }

    pub fn mul(&self, a: &Algebra, other: &AMatrix) -> AMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Self::zeros(a, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = a.zero();
                for k in 0..self.cols {
                    let x = self.get(r, k);
                    let y = other.get(k, c);
                    if x.iter().all(FieldElement::is_zero) || y.iter().all(FieldElement::is_zero) {
                        continue;
                    }
                    acc = a.add(&acc, &a.mul(x, y));
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn add(&self, a: &Algebra, other: &AMatrix) -> AMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        AMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| a.add(x, y))
                .collect(),
        }
    }

    pub fn scale(&self, a: &Algebra, s: &FieldElement) -> AMatrix {
        AMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| a.scale(s, x)).collect(),
        }
    }

    /// Positions transposed, entries unchanged. Over the opposite algebra
    /// this is compatible with multiplication: `(MN)ᵗ = Nᵗ ∘ Mᵗ`.
    pub fn transpose(&self) -> AMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        AMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Sum of the diagonal entries, an element of `A`.
    pub fn trace(&self, a: &Algebra) -> Element {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        (0..self.rows).fold(a.zero(), |acc, i| a.add(&acc, self.get(i, i)))
    }

    /// The `k`-linear map `A^cols -> A^rows`, `v ↦ M v`, in flattened coordinates.
    pub fn left_action(&self, a: &Algebra) -> ExactMatrix {
        let d = a.dim();
        let field = a.field();
        let mut out = ExactMatrix::zeros(field, self.rows * d, self.cols * d);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if e.iter().all(FieldElement::is_zero) {
                    continue;
                }
                let l = a.left_mult(e);
                for r in 0..d {
                    for c in 0..d {
                        let v = &l[(r, c)];
                        if !v.is_zero() {
                            out[(i * d + r, j * d + c)] = v.clone();
                        }
                    }
                }
            }
        }
        out
    }

    /// Applies the matrix to a flattened column vector.
    pub fn apply(&self, a: &Algebra, v: &[FieldElement]) -> Vec<FieldElement> {
        let d = a.dim();
        assert_eq!(v.len(), self.cols * d, "vector length");
        let mut out = vec![a.field().zero(); self.rows * d];
        for i in 0..self.rows {
            let mut acc = a.zero();
            for j in 0..self.cols {
                let prod = a.mul(self.get(i, j), &v[j * d..(j + 1) * d]);
                acc = a.add(&acc, &prod);
            }
            out[i * d..(i + 1) * d].clone_from_slice(&acc);
        }
        out
    }
}

/// Right multiplication by `b` on flattened `A^n`, slot by slot.
pub(crate) fn right_action_on_free(a: &Algebra, n: usize, b: &[FieldElement]) -> ExactMatrix {
    let r = a.right_mult(b);
    ExactMatrix::identity(a.field(), n).kronecker(&r)
}

//! Bounded chain complexes of finite-dimensional vector spaces.
//!
//! Indexing is homological: `d_n : C_n -> C_{n-1}`. Cohomological degrees
//! are handled by negation. Tensor products use the Koszul rule
//! `d(x ⊗ y) = dx ⊗ y + (-1)^p x ⊗ dy` for `x` in degree `p`.

use thiserror::Error;

use crate::exactalg::{AlgError, ExactMatrix, Field, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("d_{} ∘ d_{} is not zero", .0 - 1, .0)]
    NotADifferential(i64),
    #[error("differential in degree {degree} has shape {got:?}, expected {expected:?}")]
    BadShape {
        degree: i64,
        got: (usize, usize),
        expected: (usize, usize),
    },
    #[error("map does not commute with the differentials in degree {0}")]
    NotAChainMap(i64),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// A complex supported in degrees `lo ..= lo + dims.len() - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    field: Field,
    lo: i64,
    dims: Vec<usize>,
    /// `diffs[i]` is `d_{lo+i} : C_{lo+i} -> C_{lo+i-1}`.
    diffs: Vec<ExactMatrix>,
}

impl ChainComplex {
    /// Builds a complex from its terms and differentials, checking shapes and `d² = 0`.
    /// `diffs[i]` must be the matrix of `d_{lo+i}`; `diffs[0]` maps into the zero space.
    pub fn new(
        field: Field,
        lo: i64,
        dims: Vec<usize>,
        diffs: Vec<ExactMatrix>,
    ) -> Result<ChainComplex, ComplexError> {
        if diffs.len() != dims.len() {
            return Err(AlgError::Shape(format!(
                "{} terms but {} differentials",
                dims.len(),
                diffs.len()
            ))
            .into());
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.field() != field {
                return Err(AlgError::FieldMismatch(field, d.field()).into());
            }
            let expected = (if i == 0 { 0 } else { dims[i - 1] }, dims[i]);
            if (d.rows(), d.cols()) != expected {
                return Err(ComplexError::BadShape {
                    degree: lo + i as i64,
                    got: (d.rows(), d.cols()),
                    expected,
                });
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i - 1].mul(&diffs[i]).is_zero() {
                return Err(ComplexError::NotADifferential(lo + i as i64));
            }
        }
        Ok(ChainComplex {
            field,
            lo,
            dims,
            diffs,
        })
    }

    /// Complex with zero differentials.
    pub fn with_zero_differentials(field: Field, lo: i64, dims: Vec<usize>) -> ChainComplex {
        let diffs = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| ExactMatrix::zeros(field, if i == 0 { 0 } else { dims[i - 1] }, d))
            .collect();
        ChainComplex {
            field,
            lo,
            dims,
            diffs,
        }
    }

    /// `k^n` concentrated in one degree.
    pub fn concentrated(field: Field, degree: i64, n: usize) -> ChainComplex {
        Self::with_zero_differentials(field, degree, vec![n])
    }

    pub fn zero(field: Field) -> ChainComplex {
        Self::with_zero_differentials(field, 0, vec![])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Inclusive support `[lo, hi]`; `None` for the empty complex.
    pub fn support(&self) -> Option<(i64, i64)> {
        if self.dims.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.dims.len() as i64 - 1))
        }
    }

    fn index(&self, n: i64) -> Option<usize> {
        let i = n - self.lo;
        (i >= 0 && (i as usize) < self.dims.len()).then_some(i as usize)
    }

    pub fn dim(&self, n: i64) -> usize {
        self.index(n).map_or(0, |i| self.dims[i])
    }

    /// `d_n : C_n -> C_{n-1}`, zero outside the support.
    pub fn differential(&self, n: i64) -> ExactMatrix {
        match self.index(n) {
            Some(i) if i > 0 => self.diffs[i].clone(),
            _ => ExactMatrix::zeros(self.field, self.dim(n - 1), self.dim(n)),
        }
    }

    fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.dims.len()).map(move |i| self.lo + i as i64)
    }

    fn rank_of(&self, n: i64) -> usize {
        match self.index(n) {
            Some(i) if i > 0 => self.diffs[i].rank(),
            _ => 0,
        }
    }

    /// `dim ker d_n - rank d_{n+1}`.
    pub fn homology_dim(&self, n: i64) -> usize {
        self.dim(n) - self.rank_of(n) - self.rank_of(n + 1)
    }

    pub fn homology_dims(&self) -> Vec<(i64, usize)> {
        self.degrees().map(|n| (n, self.homology_dim(n))).collect()
    }

    /// Alternating sum of term dimensions.
    pub fn chain_euler_char(&self) -> i64 {
        self.degrees()
            .map(|n| sign(n) * self.dim(n) as i64)
            .sum()
    }

    /// Alternating sum of homology dimensions.
    pub fn homology_euler_char(&self) -> i64 {
        self.degrees()
            .map(|n| sign(n) * self.homology_dim(n) as i64)
            .sum()
    }

    /// Euler characteristic; both the chain-level and homology-level sums are
    /// computed and must agree.
    pub fn euler_char(&self) -> i64 {
        let chains = self.chain_euler_char();
        let homology = self.homology_euler_char();
        assert_eq!(chains, homology, "Euler characteristic mismatch");
        chains
    }

    /// Cycle representatives of a homology basis in degree `n`.
    pub fn homology_basis(&self, n: i64) -> HomologyBasis {
        let cycles = self.differential(n).kernel_basis();
        let boundaries = self.differential(n + 1);
        // Complete a basis of B_n by cycles, greedily.
        let joint = boundaries.hstack(&cycles);
        let pivots = joint.pivot_columns();
        let bnd: Vec<usize> = pivots.iter().copied().filter(|&p| p < boundaries.cols()).collect();
        let reps: Vec<usize> = pivots.iter().copied().filter(|&p| p >= boundaries.cols()).collect();
        HomologyBasis {
            boundaries: joint.select_columns(&bnd),
            representatives: joint.select_columns(&reps),
        }
    }

    /// Suspension: `shift(c, k)_n = c_{n-k}`, differential multiplied by `(-1)^k`.
    pub fn shift(&self, k: i64) -> ChainComplex {
        let s = self.field.from_i64(sign(k));
        ChainComplex {
            field: self.field,
            lo: self.lo + k,
            dims: self.dims.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&s)).collect(),
        }
    }

    /// Total complex of the tensor product with Koszul signs. In each total
    /// degree the summands `C_p ⊗ D_q` are ordered by increasing `p`, and
    /// `x_i ⊗ y_j` sits at offset `i * dim D_q + j` inside its summand.
    pub fn tensor(&self, other: &ChainComplex) -> Result<ChainComplex, ComplexError> {
        if self.field != other.field {
            return Err(AlgError::FieldMismatch(self.field, other.field).into());
        }
        let field = self.field;
        let (Some((a0, a1)), Some((b0, b1))) = (self.support(), other.support()) else {
            return Ok(ChainComplex::zero(field));
        };
        let lo = a0 + b0;
        let hi = a1 + b1;
        let blocks = |n: i64| -> Vec<(i64, i64, usize)> {
            // (p, q, offset)
            let mut off = 0;
            let mut out = vec![];
            for p in a0..=a1 {
                let q = n - p;
                let size = self.dim(p) * other.dim(q);
                if size > 0 {
                    out.push((p, q, off));
                    off += size;
                }
            }
            out
        };
        let total = |n: i64| -> usize {
            (a0..=a1).map(|p| self.dim(p) * other.dim(n - p)).sum()
        };
        let mut dims = vec![];
        let mut diffs = vec![];
        for n in lo..=hi {
            dims.push(total(n));
            let mut d = ExactMatrix::zeros(field, if n == lo { 0 } else { total(n - 1) }, total(n));
            if n > lo {
                let target = blocks(n - 1);
                let find = |p: i64| target.iter().find(|b| b.0 == p).map(|b| b.2);
                for (p, q, off) in blocks(n) {
                    let dq = other.dim(q);
                    let dp = self.dim(p);
                    // d_C ⊗ id into (p-1, q)
                    if let Some(toff) = find(p - 1) {
                        let dc = self.differential(p);
                        for i in 0..dp {
                            for r in 0..self.dim(p - 1) {
                                let c = &dc[(r, i)];
                                if c.is_zero() {
                                    continue;
                                }
                                for j in 0..dq {
                                    d[(toff + r * dq + j, off + i * dq + j)] += c;
                                }
                            }
                        }
                    }
                    // (-1)^p id ⊗ d_D into (p, q-1)
                    if let Some(toff) = find(p) {
                        let dd = other.differential(q);
                        let s = field.from_i64(sign(p));
                        let dq1 = other.dim(q - 1);
                        for i in 0..dp {
                            for j in 0..dq {
                                for r in 0..dq1 {
                                    let c = &dd[(r, j)];
                                    if !c.is_zero() {
                                        d[(toff + i * dq1 + r, off + i * dq + j)] += &(c * &s);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            diffs.push(d);
        }
        ChainComplex::new(field, lo, dims, diffs)
    }

    /// `Hom(c, d)_n = ⊕_p Hom(C_p, D_{p+n})`, differential `f ↦ d_D f - (-1)^n f d_C`.
    /// A map `C_p -> D_q` is stored row-major (`dim D_q x dim C_p`), summands by increasing `p`.
    pub fn hom_complex(&self, other: &ChainComplex) -> Result<ChainComplex, ComplexError> {
        if self.field != other.field {
            return Err(AlgError::FieldMismatch(self.field, other.field).into());
        }
        let field = self.field;
        let (Some((a0, a1)), Some((b0, b1))) = (self.support(), other.support()) else {
            return Ok(ChainComplex::zero(field));
        };
        let lo = b0 - a1;
        let hi = b1 - a0;
        let blocks = |n: i64| -> Vec<(i64, usize)> {
            let mut off = 0;
            let mut out = vec![];
            for p in a0..=a1 {
                let size = self.dim(p) * other.dim(p + n);
                if size > 0 {
                    out.push((p, off));
                    off += size;
                }
            }
            out
        };
        let total = |n: i64| -> usize { (a0..=a1).map(|p| self.dim(p) * other.dim(p + n)).sum() };
        let mut dims = vec![];
        let mut diffs = vec![];
        for n in lo..=hi {
            dims.push(total(n));
            let mut d = ExactMatrix::zeros(field, if n == lo { 0 } else { total(n - 1) }, total(n));
            if n > lo {
                let target = blocks(n - 1);
                let find = |p: i64| target.iter().find(|b| b.0 == p).map(|b| b.1);
                let minus_sign = field.from_i64(-sign(n));
                for (p, off) in blocks(n) {
                    let q = p + n;
                    let (cp, dq) = (self.dim(p), other.dim(q));
                    // f ↦ d_D ∘ f  lands in Hom(C_p, D_{q-1})
                    if let Some(toff) = find(p) {
                        let dd = other.differential(q);
                        let dq1 = other.dim(q - 1);
                        for r in 0..dq {
                            for s in 0..cp {
                                for t in 0..dq1 {
                                    let c = &dd[(t, r)];
                                    if !c.is_zero() {
                                        d[(toff + t * cp + s, off + r * cp + s)] += c;
                                    }
                                }
                            }
                        }
                    }
                    // f ↦ -(-1)^n f ∘ d_C  lands in Hom(C_{p+1}, D_q)
                    if let Some(toff) = find(p + 1) {
                        let dc = self.differential(p + 1);
                        let cp1 = self.dim(p + 1);
                        for r in 0..dq {
                            for s in 0..cp {
                                for t in 0..cp1 {
                                    let c = &dc[(s, t)];
                                    if !c.is_zero() {
                                        d[(toff + r * cp1 + t, off + r * cp + s)] +=
                                            &(c * &minus_sign);
                                    }
                                }
                            }
                        }
                    }
                }
            }
            diffs.push(d);
        }
        ChainComplex::new(field, lo, dims, diffs)
    }

    /// `Hom(c, k[0])`: the dual complex, degrees negated.
    pub fn dual(&self) -> ChainComplex {
        self.hom_complex(&ChainComplex::concentrated(self.field, 0, 1))
            .expect("same field")
    }
}

fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A basis of `H_n` by cycle representatives, plus a basis of the boundaries.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    boundaries: ExactMatrix,
    representatives: ExactMatrix,
}

impl HomologyBasis {
    pub fn dim(&self) -> usize {
        self.representatives.cols()
    }

    pub fn representatives(&self) -> &ExactMatrix {
        &self.representatives
    }

    /// Coordinates of the class of cycle `z` in the representative basis.
    pub fn coordinates(&self, z: &[FieldElement]) -> Vec<FieldElement> {
        let field = self.representatives.field();
        let joint = self.boundaries.hstack(&self.representatives);
        let rhs = ExactMatrix::from_columns(field, z.len(), &[z.to_vec()]);
        let x = joint
            .solve(&rhs)
            .expect("shapes agree")
            .expect("vector is a cycle");
        (self.boundaries.cols()..joint.cols())
            .map(|i| x[(i, 0)].clone())
            .collect()
    }
}

/// Degree-preserving map of complexes commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    /// `components[i]` acts in degree `lo + i`.
    lo: i64,
    components: Vec<ExactMatrix>,
}

impl ChainMap {
    /// `components[i]` is the map in degree `lo + i`; degrees not covered are zero.
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        lo: i64,
        components: Vec<ExactMatrix>,
    ) -> Result<ChainMap, ComplexError> {
        let map = ChainMap {
            source,
            target,
            lo,
            components,
        };
        for (i, f) in map.components.iter().enumerate() {
            let n = lo + i as i64;
            if (f.rows(), f.cols()) != (map.target.dim(n), map.source.dim(n)) {
                return Err(ComplexError::BadShape {
                    degree: n,
                    got: (f.rows(), f.cols()),
                    expected: (map.target.dim(n), map.source.dim(n)),
                });
            }
        }
        let (lo_s, hi_s) = map.degree_range();
        for n in lo_s..=hi_s + 1 {
            let left = map.target.differential(n).mul(&map.component(n));
            let right = map.component(n - 1).mul(&map.source.differential(n));
            if left != right {
                return Err(ComplexError::NotAChainMap(n));
            }
        }
        Ok(map)
    }

    fn degree_range(&self) -> (i64, i64) {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for c in [&self.source, &self.target] {
            if let Some((a, b)) = c.support() {
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
        if lo > hi {
            (0, -1)
        } else {
            (lo, hi)
        }
    }

    pub fn component(&self, n: i64) -> ExactMatrix {
        let i = n - self.lo;
        if i >= 0 && (i as usize) < self.components.len() {
            self.components[i as usize].clone()
        } else {
            ExactMatrix::zeros(self.source.field(), self.target.dim(n), self.source.dim(n))
        }
    }

    /// Matrix of the induced map `H_n(source) -> H_n(target)` in the
    /// representative bases of [`ChainComplex::homology_basis`].
    pub fn induced_on_homology(&self, n: i64) -> ExactMatrix {
        let hs = self.source.homology_basis(n);
        let ht = self.target.homology_basis(n);
        let f = self.component(n);
        let cols: Vec<Vec<FieldElement>> = hs
            .representatives()
            .columns()
            .iter()
            .map(|z| ht.coordinates(&f.mul_vec(z)))
            .collect();
        ExactMatrix::from_columns(self.source.field(), ht.dim(), &cols)
    }

    /// `Σ (-1)^n tr(f_n)` over the chain groups (endomorphisms only).
    pub fn chain_lefschetz(&self) -> FieldElement {
        let field = self.source.field();
        let (lo, hi) = self.degree_range();
        let mut acc = field.zero();
        for n in lo..=hi {
            let t = self.component(n).trace().expect("endomorphism");
            acc += &(&t * &field.from_i64(sign(n)));
        }
        acc
    }

    /// `Σ (-1)^n tr(H_n(f))` (endomorphisms only).
    pub fn homology_lefschetz(&self) -> FieldElement {
        let field = self.source.field();
        let (lo, hi) = self.degree_range();
        let mut acc = field.zero();
        for n in lo..=hi {
            let t = self.induced_on_homology(n).trace().expect("endomorphism");
            acc += &(&t * &field.from_i64(sign(n)));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn m(rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_i64_rows(q(), rows)
    }

    /// k --id--> k in degrees 1, 0.
    fn cone_of_identity() -> ChainComplex {
        ChainComplex::new(
            q(),
            0,
            vec![1, 1],
            vec![ExactMatrix::zeros(q(), 0, 1), m(&[vec![1]])],
        )
        .unwrap()
    }

    #[test]
    fn zero_differential_homology() {
        let c = ChainComplex::with_zero_differentials(q(), -1, vec![2, 0, 3]);
        for n in -1..=1 {
            assert_eq!(c.homology_dim(n), c.dim(n));
        }
        assert_eq!(c.homology_dim(5), 0);
    }

    #[test]
    fn acyclic_cone() {
        let c = cone_of_identity();
        assert_eq!(c.homology_dim(0), 0);
        assert_eq!(c.homology_dim(1), 0);
        assert_eq!(c.euler_char(), 0);
    }

    #[test]
    fn rank_one_differential() {
        let c = ChainComplex::new(
            q(),
            0,
            vec![2, 2],
            vec![ExactMatrix::zeros(q(), 0, 2), m(&[vec![1, 0], vec![0, 0]])],
        )
        .unwrap();
        assert_eq!(c.homology_dim(1), 1);
        assert_eq!(c.homology_dim(0), 1);
    }

    #[test]
    fn euler_examples() {
        assert_eq!(ChainComplex::concentrated(q(), 0, 1).euler_char(), 1);
        let c = ChainComplex::with_zero_differentials(q(), 0, vec![2, 1]);
        assert_eq!(c.euler_char(), 1);
    }

    #[test]
    fn rejects_nonzero_square() {
        let d2 = m(&[vec![1]]);
        let d1 = m(&[vec![1]]);
        let err = ChainComplex::new(
            q(),
            0,
            vec![1, 1, 1],
            vec![ExactMatrix::zeros(q(), 0, 1), d1, d2],
        )
        .unwrap_err();
        assert_eq!(err, ComplexError::NotADifferential(2));
    }

    #[test]
    fn tensor_with_unit() {
        let c = cone_of_identity();
        let unit = ChainComplex::concentrated(q(), 0, 1);
        assert_eq!(c.tensor(&unit).unwrap(), c);
    }

    #[test]
    fn tensor_degrees_add() {
        let a = ChainComplex::concentrated(q(), 1, 1);
        let t = a.tensor(&a).unwrap();
        assert_eq!(t.support(), Some((2, 2)));
        assert_eq!(t.dim(2), 1);
    }

    #[test]
    fn tensor_euler_is_multiplicative() {
        // k in degree 1, k^3 in degree 0: χ = 2
        let c = ChainComplex::new(
            q(),
            0,
            vec![3, 1],
            vec![ExactMatrix::zeros(q(), 0, 3), m(&[vec![1], vec![0], vec![0]])],
        )
        .unwrap();
        // k^2 in degree 1, k in degree 0: χ = -1
        let d = ChainComplex::new(
            q(),
            0,
            vec![1, 2],
            vec![ExactMatrix::zeros(q(), 0, 1), m(&[vec![1, 1]])],
        )
        .unwrap();
        assert_eq!(c.euler_char(), 2);
        assert_eq!(d.euler_char(), -1);
        assert_eq!(c.tensor(&d).unwrap().euler_char(), -2);
    }

    #[test]
    fn hom_from_unit() {
        let d = cone_of_identity();
        let h = ChainComplex::concentrated(q(), 0, 1).hom_complex(&d).unwrap();
        assert_eq!(h.support(), d.support());
        assert_eq!(h.homology_dims(), d.homology_dims());
        assert_eq!(h.dim(0), 1);
        assert_eq!(h.dim(1), 1);
    }

    #[test]
    fn hom_into_unit_is_dual() {
        let c = ChainComplex::with_zero_differentials(q(), 0, vec![2, 0, 1]);
        let dual = c.dual();
        assert_eq!(dual.support(), Some((-2, 0)));
        assert_eq!(dual.dim(0), 2);
        assert_eq!(dual.dim(-2), 1);
        assert_eq!(dual.euler_char(), c.euler_char());
    }

    #[test]
    fn shift_examples() {
        let c = ChainComplex::with_zero_differentials(q(), 0, vec![2, 1]);
        assert_eq!(c.shift(0), c);
        assert_eq!(c.shift(1).euler_char(), -c.euler_char());
        assert_eq!(c.shift(1).shift(-1), c);
        let cone = cone_of_identity();
        assert_eq!(cone.shift(3).shift(-3), cone);
    }

    #[test]
    fn induced_trace_on_cone() {
        let c = cone_of_identity();
        let f = ChainMap::new(c.clone(), c.clone(), 0, vec![m(&[vec![2]]), m(&[vec![2]])]).unwrap();
        assert!(f.chain_lefschetz().is_zero());
        assert!(f.homology_lefschetz().is_zero());
    }

    #[test]
    fn chain_map_must_commute() {
        let c = cone_of_identity();
        let err = ChainMap::new(c.clone(), c, 0, vec![m(&[vec![1]]), m(&[vec![2]])]).unwrap_err();
        assert!(matches!(err, ComplexError::NotAChainMap(_)));
    }
}

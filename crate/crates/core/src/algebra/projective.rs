use std::sync::Arc;

use super::{AMatrix, AlgebraError, AlgebraRef, Element, RightModule};
use crate::complexes::ChainComplex;
use crate::exactalg::{ExactMatrix, FieldElement};

/// Default bound on the length of projective resolutions.
pub const DEFAULT_MAX_LENGTH: usize = 16;

fn same_algebra(a: &AlgebraRef, b: &AlgebraRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Projective right module `E·A^n` for an idempotent `E ∈ M_n(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePresentation {
    algebra: AlgebraRef,
    idempotent: AMatrix,
}

impl ProjectivePresentation {
    pub fn new(algebra: AlgebraRef, idempotent: AMatrix) -> Result<Self, AlgebraError> {
        if idempotent.rows() != idempotent.cols() {
            return Err(AlgebraError::InvalidIdempotents("idempotent matrix is not square".into()));
        }
        if idempotent.mul(&algebra, &idempotent) != idempotent {
            return Err(AlgebraError::InvalidIdempotents("E² ≠ E".into()));
        }
        Ok(ProjectivePresentation {
            algebra,
            idempotent,
        })
    }

    pub fn free(algebra: AlgebraRef, n: usize) -> Self {
        let idempotent = AMatrix::identity(&algebra, n);
        ProjectivePresentation {
            algebra,
            idempotent,
        }
    }

    /// `e_s A` for the `s`-th idempotent of the algebra.
    pub fn vertex(algebra: AlgebraRef, s: usize) -> Self {
        Self::from_vertices(algebra, &[s])
    }

    /// `⊕ e_{s_i} A`.
    pub fn from_vertices(algebra: AlgebraRef, vertices: &[usize]) -> Self {
        let diag: Vec<Element> = vertices
            .iter()
            .map(|&s| algebra.idempotents()[s].clone())
            .collect();
        let idempotent = AMatrix::diagonal(&algebra, &diag);
        ProjectivePresentation {
            algebra,
            idempotent,
        }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn idempotent(&self) -> &AMatrix {
        &self.idempotent
    }

    pub fn rank(&self) -> usize {
        self.idempotent.rows()
    }

    /// Columns spanning `E·A^n` inside flattened `A^n`.
    pub fn basis(&self) -> ExactMatrix {
        let e = self.idempotent.left_action(&self.algebra);
        e.select_columns(&e.pivot_columns())
    }

    pub fn dim(&self) -> usize {
        self.idempotent.left_action(&self.algebra).rank()
    }

    /// The module itself, in the coordinates of [`Self::basis`].
    pub fn to_module(&self) -> RightModule {
        let basis = self.basis();
        let free = RightModule::free(self.algebra.clone(), self.rank());
        free.submodule(&basis).expect("E·A^n is a submodule")
    }

    /// `Hom_A(E·A^n, A)`, the left module of rows `w` with `wE = w`, viewed as
    /// the right `A^op`-module `Eᵗ·(A^op)^n`.
    pub fn dual(&self) -> ProjectivePresentation {
        ProjectivePresentation {
            algebra: Arc::new(self.algebra.opposite()),
            idempotent: self.idempotent.transpose(),
        }
    }

    pub fn direct_sum(&self, other: &ProjectivePresentation) -> ProjectivePresentation {
        assert!(same_algebra(&self.algebra, &other.algebra));
        let a = &self.algebra;
        let (n, m) = (self.rank(), other.rank());
        let mut e = AMatrix::zeros(a, n + m, n + m);
        for r in 0..n {
            for c in 0..n {
                e.set(r, c, self.idempotent.get(r, c).clone());
            }
        }
        for r in 0..m {
            for c in 0..m {
                e.set(n + r, n + c, other.idempotent.get(r, c).clone());
            }
        }
        ProjectivePresentation {
            algebra: a.clone(),
            idempotent: e,
        }
    }
}

/// Bounded complex of projectives. Term `i` sits in degree `lo + i`;
/// `diffs[i - 1]` is `d_{lo+i}: P_{lo+i} -> P_{lo+i-1}`, an `A`-matrix of
/// shape `rank P_{lo+i-1} x rank P_{lo+i}` acting on columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectComplex {
    algebra: AlgebraRef,
    lo: i64,
    terms: Vec<ProjectivePresentation>,
    diffs: Vec<AMatrix>,
}

impl PerfectComplex {
    pub fn new(
        algebra: AlgebraRef,
        lo: i64,
        terms: Vec<ProjectivePresentation>,
        diffs: Vec<AMatrix>,
    ) -> Result<PerfectComplex, AlgebraError> {
        let bad = |m: String| Err(AlgebraError::InvalidModule(m));
        if diffs.len() + 1 != terms.len().max(1) {
            return bad(format!("{} terms need {} differentials", terms.len(), terms.len().saturating_sub(1)));
        }
        if terms.iter().any(|t| !same_algebra(t.algebra(), &algebra)) {
            return Err(AlgebraError::Mismatch("terms over different algebras".into()));
        }
        for (i, d) in diffs.iter().enumerate() {
            let (src, tgt) = (&terms[i + 1], &terms[i]);
            if d.rows() != tgt.rank() || d.cols() != src.rank() {
                return bad(format!("differential {} has the wrong shape", lo + i as i64 + 1));
            }
            let sandwiched = tgt.idempotent().mul(&algebra, d).mul(&algebra, src.idempotent());
            if sandwiched != *d {
                return bad(format!(
                    "differential {} does not respect the idempotents",
                    lo + i as i64 + 1
                ));
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i - 1].mul(&algebra, &diffs[i]).is_zero() {
                return bad(format!("d² ≠ 0 in degree {}", lo + i as i64 + 1));
            }
        }
        Ok(PerfectComplex {
            algebra,
            lo,
            terms,
            diffs,
        })
    }

    /// A single projective in degree 0.
    pub fn concentrated(p: ProjectivePresentation) -> PerfectComplex {
        PerfectComplex {
            algebra: p.algebra().clone(),
            lo: 0,
            terms: vec![p],
            diffs: vec![],
        }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn terms(&self) -> &[ProjectivePresentation] {
        &self.terms
    }

    /// `(degree, term)` pairs.
    pub fn graded_terms(&self) -> impl Iterator<Item = (i64, &ProjectivePresentation)> {
        self.terms
            .iter()
            .enumerate()
            .map(move |(i, t)| (self.lo + i as i64, t))
    }

    pub fn differentials(&self) -> &[AMatrix] {
        &self.diffs
    }

    /// Length of the complex (number of differentials).
    pub fn length(&self) -> usize {
        self.diffs.len()
    }

    /// `Hom_A(-, A)` termwise over `A^op`: degrees negated, differentials transposed.
    pub fn dual(&self) -> PerfectComplex {
        let n = self.terms.len();
        let terms: Vec<ProjectivePresentation> = self.terms.iter().rev().map(|t| t.dual()).collect();
        let algebra = terms
            .first()
            .map(|t| t.algebra().clone())
            .unwrap_or_else(|| Arc::new(self.algebra.opposite()));
        let terms = terms
            .into_iter()
            .map(|t| ProjectivePresentation {
                algebra: algebra.clone(),
                idempotent: t.idempotent,
            })
            .collect();
        let diffs = self.diffs.iter().rev().map(AMatrix::transpose).collect();
        let hi = self.lo + n as i64 - 1;
        PerfectComplex {
            algebra,
            lo: if n == 0 { 0 } else { -hi },
            terms,
            diffs,
        }
    }

    /// Underlying complex of vector spaces.
    pub fn underlying(&self) -> ChainComplex {
        let field = self.algebra.field();
        let bases: Vec<ExactMatrix> = self.terms.iter().map(ProjectivePresentation::basis).collect();
        let dims: Vec<usize> = bases.iter().map(ExactMatrix::cols).collect();
        let mut diffs = vec![ExactMatrix::zeros(field, 0, dims.first().copied().unwrap_or(0))];
        for (i, d) in self.diffs.iter().enumerate() {
            let image = d.left_action(&self.algebra).mul(&bases[i + 1]);
            let coords = bases[i]
                .solve(&image)
                .expect("shapes agree")
                .expect("differential lands in the target");
            diffs.push(coords);
        }
        if dims.is_empty() {
            return ChainComplex::zero(field);
        }
        ChainComplex::new(field, self.lo, dims, diffs).expect("d² = 0 already checked")
    }
}

/// A perfect module given either as a module (to be resolved) or as a complex.
#[derive(Clone, Debug)]
pub enum PerfectObject {
    Module(RightModule),
    Complex(PerfectComplex),
}

impl PerfectObject {
    pub fn algebra(&self) -> &AlgebraRef {
        match self {
            PerfectObject::Module(m) => m.algebra(),
            PerfectObject::Complex(c) => c.algebra(),
        }
    }

    /// A projective resolution (or the complex itself).
    pub fn resolve(&self, max_length: usize) -> Result<PerfectComplex, AlgebraError> {
        match self {
            PerfectObject::Module(m) => projective_resolution(m, max_length),
            PerfectObject::Complex(c) => Ok(c.clone()),
        }
    }

    /// Terms as modules, with their degrees.
    pub fn graded_modules(&self) -> Vec<(i64, RightModule)> {
        let mc = self.module_complex();
        mc.terms
            .into_iter()
            .enumerate()
            .map(|(i, t)| (mc.lo + i as i64, t))
            .collect()
    }

    fn module_complex(&self) -> ModuleComplex {
        match self {
            PerfectObject::Module(m) => ModuleComplex {
                lo: 0,
                terms: vec![m.clone()],
                diffs: vec![],
            },
            PerfectObject::Complex(c) => {
                let terms = c.terms.iter().map(ProjectivePresentation::to_module).collect();
                let under = c.underlying();
                let diffs = (1..c.terms.len())
                    .map(|i| under.differential(c.lo + i as i64))
                    .collect();
                ModuleComplex {
                    lo: c.lo,
                    terms,
                    diffs,
                }
            }
        }
    }
}

impl From<RightModule> for PerfectObject {
    fn from(m: RightModule) -> Self {
        PerfectObject::Module(m)
    }
}

impl From<PerfectComplex> for PerfectObject {
    fn from(c: PerfectComplex) -> Self {
        PerfectObject::Complex(c)
    }
}

impl From<ProjectivePresentation> for PerfectObject {
    fn from(p: ProjectivePresentation) -> Self {
        PerfectObject::Complex(PerfectComplex::concentrated(p))
    }
}

/// Complex of right modules, `diffs[i - 1] = d_{lo+i}` in module coordinates.
struct ModuleComplex {
    lo: i64,
    terms: Vec<RightModule>,
    diffs: Vec<ExactMatrix>,
}

/// A minimal set of generators `(vertex, m)` with `m ∈ M·e_vertex`, obtained by
/// lifting a basis of the top `M/MJ`.
fn projective_cover(m: &RightModule) -> Result<Vec<(usize, Vec<FieldElement>)>, AlgebraError> {
    let alg = m.algebra().clone();
    let field = alg.field();
    let mut span = m.radical_part()?;
    let top_dim = m.dim() - span.cols();
    let ops: Vec<ExactMatrix> = (0..alg.dim()).map(|k| m.act(&alg.basis_element(k))).collect();
    let mut gens = vec![];
    for (s, e) in alg.idempotents().iter().enumerate() {
        let proj = m.act(e);
        for cand in proj.columns() {
            if span.cols() == m.dim() {
                break;
            }
            if super::in_span(&span, &cand) {
                continue;
            }
            let mut cols = span.columns();
            cols.extend(ops.iter().map(|op| op.mul_vec(&cand)));
            let all = ExactMatrix::from_columns(field, m.dim(), &cols);
            span = all.select_columns(&all.pivot_columns());
            gens.push((s, cand));
        }
    }
    if span.cols() != m.dim() {
        return Err(AlgebraError::InvalidIdempotents(
            "idempotents do not generate the module".into(),
        ));
    }
    // minimality: the generators must map onto a basis of the top
    let covered: usize = gens
        .iter()
        .map(|(s, _)| {
            let p = ProjectivePresentation::vertex(alg.clone(), *s).to_module();
            p.top().map(|t| t.dim())
        })
        .sum::<Result<usize, _>>()?;
    if covered != top_dim {
        return Err(AlgebraError::InvalidIdempotents(
            "projective cover is not minimal; idempotents are not primitive".into(),
        ));
    }
    Ok(gens)
}

/// Minimal projective resolution `… -> P_1 -> P_0`, `P_i` in degree `i`.
/// Fails when a nonzero syzygy remains after `max_length` steps.
pub fn projective_resolution(m: &RightModule, max_length: usize) -> Result<PerfectComplex, AlgebraError> {
    let alg = m.algebra().clone();
    let d = alg.dim();
    let mut terms: Vec<ProjectivePresentation> = vec![];
    let mut diffs: Vec<AMatrix> = vec![];
    let mut current = m.clone();
    // basis of `current` inside the flattened previous term
    let mut embedding: Option<ExactMatrix> = None;
    let mut step = 0;
    while current.dim() > 0 {
        if step > max_length {
            return Err(AlgebraError::ProjectiveDimensionExceedsCap(max_length));
        }
        let gens = projective_cover(&current)?;
        let vertices: Vec<usize> = gens.iter().map(|(s, _)| *s).collect();
        let p = ProjectivePresentation::from_vertices(alg.clone(), &vertices);
        let n = vertices.len();
        if let Some(emb) = &embedding {
            let prev_rank = emb.rows() / d;
            let mut dm = AMatrix::zeros(&alg, prev_rank, n);
            for (j, (_, g)) in gens.iter().enumerate() {
                let v = emb.mul_vec(g);
                for i in 0..prev_rank {
                    dm.set(i, j, v[i * d..(i + 1) * d].to_vec());
                }
            }
            diffs.push(dm);
        }
        let mut cols = Vec::with_capacity(n * d);
        for (_, g) in &gens {
            for k in 0..d {
                cols.push(current.act(&alg.basis_element(k)).mul_vec(g));
            }
        }
        let phi = ExactMatrix::from_columns(alg.field(), current.dim(), &cols);
        let basis = p.basis();
        let kernel = phi.mul(&basis).kernel_basis();
        let syzygy = basis.mul(&kernel);
        let free = RightModule::free(alg.clone(), n);
        current = free.submodule(&syzygy)?;
        embedding = Some(syzygy);
        terms.push(p);
        step += 1;
    }
    Ok(PerfectComplex {
        algebra: alg,
        lo: 0,
        terms,
        diffs,
    })
}

/// `Hom_A(E·A^r, N)` as the image of `v ↦ vE` on `N^r`; columns in flattened
/// `N^r` (slot `l`, coordinate `k` at `l * dim N + k`).
fn hom_basis(p: &ProjectivePresentation, n: &RightModule) -> ExactMatrix {
    let op = precompose(p.idempotent(), n);
    op.select_columns(&op.pivot_columns())
}

/// `v ↦ vF` from `N^{rows F}` to `N^{cols F}`: `(vF)_j = Σ_l v_l · F_lj`.
fn precompose(f: &AMatrix, n: &RightModule) -> ExactMatrix {
    let dn = n.dim();
    let field = n.algebra().field();
    let mut out = ExactMatrix::zeros(field, f.cols() * dn, f.rows() * dn);
    for l in 0..f.rows() {
        for j in 0..f.cols() {
            let e = f.get(l, j);
            if e.iter().all(FieldElement::is_zero) {
                continue;
            }
            let blk = n.act(e);
            for r in 0..dn {
                for c in 0..dn {
                    if !blk[(r, c)].is_zero() {
                        out[(j * dn + r, l * dn + c)] = blk[(r, c)].clone();
                    }
                }
            }
        }
    }
    out
}

/// `Hom_A(P, Q)` for a complex of projectives `P` and a complex of modules `Q`,
/// with the sign rule of [`ChainComplex::hom_complex`].
fn hom_into(p: &PerfectComplex, q: &ModuleComplex) -> Result<ChainComplex, AlgebraError> {
    let field = p.algebra.field();
    let (np, nq) = (p.terms.len(), q.terms.len());
    if np == 0 || nq == 0 {
        return Ok(ChainComplex::zero(field));
    }
    let (a0, a1) = (p.lo, p.lo + np as i64 - 1);
    let (b0, b1) = (q.lo, q.lo + nq as i64 - 1);
    let pt = |i: i64| &p.terms[(i - a0) as usize];
    let qt = |j: i64| &q.terms[(j - b0) as usize];
    // bases[(p, q)] of Hom(P_p, Q_q)
    let mut bases = std::collections::HashMap::new();
    for i in a0..=a1 {
        for j in b0..=b1 {
            bases.insert((i, j), hom_basis(pt(i), qt(j)));
        }
    }
    let summands = |n: i64| -> Vec<(i64, usize)> {
        let mut off = 0;
        let mut out = vec![];
        for i in a0..=a1 {
            let j = i + n;
            if j < b0 || j > b1 {
                continue;
            }
            out.push((i, off));
            off += bases[&(i, j)].cols();
        }
        out
    };
    let total = |n: i64| -> usize {
        summands(n)
            .iter()
            .map(|&(i, _)| bases[&(i, i + n)].cols())
            .sum()
    };
    let (lo, hi) = (b0 - a1, b1 - a0);
    let dims: Vec<usize> = (lo..=hi).map(total).collect();
    let mut diffs = vec![ExactMatrix::zeros(field, 0, dims[0])];
    for n in lo + 1..=hi {
        let mut dm = ExactMatrix::zeros(field, total(n - 1), total(n));
        let tgt = summands(n - 1);
        let offset_of = |i: i64| tgt.iter().find(|(t, _)| *t == i).map(|(_, o)| *o);
        let sgn = if n.rem_euclid(2) == 0 { field.one() } else { -field.one() };
        for (i, src_off) in summands(n) {
            let j = i + n;
            let src = &bases[&(i, j)];
            if src.cols() == 0 {
                continue;
            }
            // d_Q ∘ f into Hom(P_i, Q_{j-1})
            if j > b0 {
                if let Some(off) = offset_of(i) {
                    let dq = &q.diffs[(j - b0 - 1) as usize];
                    let slotwise = ExactMatrix::identity(field, pt(i).rank()).kronecker(dq);
                    let image = slotwise.mul(src);
                    let coords = bases[&(i, j - 1)]
                        .solve(&image)?
                        .expect("Hom is preserved by d_Q");
                    place(&mut dm, &coords, off, src_off, &field.one());
                }
            }
            // -(-1)^n f ∘ d_P into Hom(P_{i+1}, Q_j)
            if i < a1 {
                if let Some(off) = offset_of(i + 1) {
                    let dp = &p.diffs[(i - a0) as usize];
                    let image = precompose(dp, qt(j)).mul(src);
                    let coords = bases[&(i + 1, j)]
                        .solve(&image)?
                        .expect("Hom is preserved by d_P");
                    place(&mut dm, &coords, off, src_off, &(-sgn.clone()));
                }
            }
        }
        diffs.push(dm);
    }
    ChainComplex::new(field, lo, dims, diffs)
        .map_err(|e| AlgebraError::InvalidModule(format!("Hom complex: {e}")))
}

fn place(dst: &mut ExactMatrix, blk: &ExactMatrix, r0: usize, c0: usize, s: &FieldElement) {
    for r in 0..blk.rows() {
        for c in 0..blk.cols() {
            if !blk[(r, c)].is_zero() {
                let v = &blk[(r, c)] * s;
                dst[(r0 + r, c0 + c)] += &v;
            }
        }
    }
}

/// `RHom_A(m, n)` computed from a projective resolution of `m`.
pub fn hom_complex(
    m: &PerfectObject,
    n: &PerfectObject,
    max_length: usize,
) -> Result<ChainComplex, AlgebraError> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(AlgebraError::Mismatch("objects over different algebras".into()));
    }
    let p = m.resolve(max_length)?;
    hom_into(&p, &n.module_complex())
}

/// `χ(m, n) = Σ (-1)^i dim Ext^i(m, n)`.
pub fn euler_form(m: &PerfectObject, n: &PerfectObject, max_length: usize) -> Result<i64, AlgebraError> {
    Ok(hom_complex(m, n, max_length)?.euler_char())
}

/// `dim Ext^i(m, n)` for `i = 0..=` the last nonzero degree.
pub fn ext_dims(m: &RightModule, n: &RightModule, max_length: usize) -> Result<Vec<usize>, AlgebraError> {
    let c = hom_complex(&m.clone().into(), &n.clone().into(), max_length)?;
    let Some((lo, _)) = c.support() else {
        return Ok(vec![]);
    };
    let mut out: Vec<usize> = (0..=-lo).map(|i| c.homology_dim(-i)).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    Ok(out)
}

/// `dim Hom_A(P, Q) = dim F·M_{m×n}(A)·E`, straight from the idempotents.
pub fn hom_dim_projectives(p: &ProjectivePresentation, q: &ProjectivePresentation) -> usize {
    let a = p.algebra();
    let (e, f) = (p.idempotent(), q.idempotent());
    let (n, m) = (e.rows(), f.rows());
    let d = a.dim();
    let mut cols = vec![];
    for i in 0..m {
        for j in 0..n {
            for k in 0..d {
                let mut x = AMatrix::zeros(a, m, n);
                x.set(i, j, a.basis_element(k));
                let y = f.mul(a, &x).mul(a, e);
                let mut flat = Vec::with_capacity(m * n * d);
                for r in 0..m {
                    for c in 0..n {
                        flat.extend(y.get(r, c).iter().cloned());
                    }
                }
                cols.push(flat);
            }
        }
    }
    if cols.is_empty() {
        return 0;
    }
    ExactMatrix::from_columns(a.field(), m * n * d, &cols).rank()
}

/// `χ(P, Q) = Σ (-1)^{i-j} dim Hom(P_i, Q_j)` for perfect complexes, without resolutions.
pub fn euler_form_projectives(p: &PerfectComplex, q: &PerfectComplex) -> i64 {
    let mut chi = 0i64;
    for (i, pi) in p.graded_terms() {
        for (j, qj) in q.graded_terms() {
            let h = hom_dim_projectives(pi, qj) as i64;
            chi += if (j - i).rem_euclid(2) == 0 { h } else { -h };
        }
    }
    chi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{algebra_from_quiver, Algebra, MatrixAlgebra, Quiver};
    use crate::exactalg::Field;

    fn q() -> Field {
        Field::Rationals
    }

    fn a2() -> AlgebraRef {
        let quiver = Quiver {
            vertices: 2,
            arrows: vec![(1, 2, "a".into())],
            relations: vec![],
        };
        Arc::new(algebra_from_quiver(q(), &quiver, 10).unwrap())
    }

    fn dual_numbers() -> AlgebraRef {
        let quiver = Quiver {
            vertices: 1,
            arrows: vec![(1, 1, "x".into())],
            relations: vec![vec!["x".into(), "x".into()]],
        };
        Arc::new(algebra_from_quiver(q(), &quiver, 10).unwrap())
    }

    fn simple(a: &AlgebraRef, s: usize) -> RightModule {
        let p = ProjectivePresentation::vertex(a.clone(), s).to_module();
        p.top().unwrap()
    }

    #[test]
    fn projective_has_trivial_resolution() {
        let a = a2();
        let p = ProjectivePresentation::vertex(a.clone(), 0).to_module();
        let res = projective_resolution(&p, 4).unwrap();
        assert_eq!(res.length(), 0);
        assert_eq!(res.terms().len(), 1);
    }

    #[test]
    fn simple_over_a2_has_length_one() {
        let a = a2();
        // a = e2 a e1, so e1 A = span{e1} is simple and e2 A = span{e2, a}
        assert_eq!(ProjectivePresentation::vertex(a.clone(), 0).dim(), 1);
        assert_eq!(ProjectivePresentation::vertex(a.clone(), 1).dim(), 2);
        let s1 = simple(&a, 0);
        assert_eq!(projective_resolution(&s1, 4).unwrap().length(), 0);
        let s2 = simple(&a, 1);
        assert_eq!(s2.dim(), 1);
        let res = projective_resolution(&s2, 4).unwrap();
        assert_eq!(res.length(), 1);
        let dims: Vec<usize> = res.terms().iter().map(ProjectivePresentation::dim).collect();
        assert_eq!(dims, vec![2, 1]);
        assert_eq!(res.underlying().homology_dims(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn dual_numbers_simple_exceeds_cap() {
        let a = dual_numbers();
        let s = simple(&a, 0);
        assert_eq!(
            projective_resolution(&s, 5).unwrap_err(),
            AlgebraError::ProjectiveDimensionExceedsCap(5)
        );
    }

    #[test]
    fn euler_form_examples() {
        let k = Arc::new(Algebra::new(q(), vec!["1".into()], vec![q().one()]).unwrap());
        let m = PerfectObject::from(RightModule::regular(k));
        assert_eq!(euler_form(&m, &m, 4).unwrap(), 1);

        let a = a2();
        let p1: PerfectObject = ProjectivePresentation::vertex(a.clone(), 0).into();
        let p2: PerfectObject = ProjectivePresentation::vertex(a.clone(), 1).into();
        assert_eq!(euler_form(&p1, &p2, 4).unwrap(), 1);
        assert_eq!(euler_form(&p2, &p1, 4).unwrap(), 0);

        let d = dual_numbers();
        let free = PerfectObject::from(RightModule::regular(d));
        assert_eq!(euler_form(&free, &free, 4).unwrap(), 2);
    }

    #[test]
    fn ext_between_simples_of_a2() {
        let a = a2();
        let (s1, s2) = (simple(&a, 0), simple(&a, 1));
        assert_eq!(ext_dims(&s2, &s1, 4).unwrap(), vec![0, 1]);
        assert_eq!(ext_dims(&s1, &s2, 4).unwrap(), Vec::<usize>::new());
        assert_eq!(ext_dims(&s2, &s2, 4).unwrap(), vec![1]);
    }

    #[test]
    fn projective_paths_agree() {
        let a = a2();
        for s in 0..2 {
            for t in 0..2 {
                let p = ProjectivePresentation::vertex(a.clone(), s);
                let q = ProjectivePresentation::vertex(a.clone(), t);
                let direct = euler_form_projectives(
                    &PerfectComplex::concentrated(p.clone()),
                    &PerfectComplex::concentrated(q.clone()),
                );
                let resolved = euler_form(&p.into(), &q.into(), 4).unwrap();
                assert_eq!(direct, resolved);
            }
        }
    }

    #[test]
    fn dual_of_projective_over_opposite() {
        let a = a2();
        let p = ProjectivePresentation::vertex(a.clone(), 0);
        let dp = p.dual();
        // Hom(e1 A, A) = A e1 = span{e1, a}
        assert_eq!(dp.dim(), 2);
        assert_eq!(**dp.algebra(), a.opposite());
        assert_eq!(dp.dual().idempotent(), p.idempotent());
    }

    #[test]
    fn morita_transport_preserves_euler_form() {
        let a = a2();
        let m2 = MatrixAlgebra::new(a.clone(), 2).unwrap();
        let (s1, s2) = (simple(&a, 0), simple(&a, 1));
        let before = euler_form(&s2.clone().into(), &s1.clone().into(), 4).unwrap();
        let t1 = s1.morita_transport(&m2).unwrap();
        let t2 = s2.morita_transport(&m2).unwrap();
        let after = euler_form(&t2.into(), &t1.into(), 4).unwrap();
        assert_eq!(before, after);
        assert_eq!(before, -1);
    }
}

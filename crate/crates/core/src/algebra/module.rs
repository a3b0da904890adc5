use super::amatrix::right_action_on_free;
use super::{AMatrix, Algebra, AlgebraError, AlgebraRef, MatrixAlgebra};
use crate::exactalg::{ExactMatrix, FieldElement, Quotient};

fn act_by(actions: &[ExactMatrix], a: &[FieldElement], dim: usize) -> ExactMatrix {
    let field = actions
        .first()
        .map(ExactMatrix::field)
        .expect("algebras are nonzero");
    let mut out = ExactMatrix::zeros(field, dim, dim);
    for (c, m) in a.iter().zip(actions) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    out
}

/// Checks `act(x_i x_j) = act(x_i) act(x_j)` (or the reversed order for right
/// actions) and that the unit acts as the identity.
fn check_action(
    alg: &Algebra,
    actions: &[ExactMatrix],
    dim: usize,
    right: bool,
    what: &str,
) -> Result<(), AlgebraError> {
    if actions.len() != alg.dim() {
        return Err(AlgebraError::InvalidModule(format!(
            "{what}: {} action matrices for a {}-dimensional algebra",
            actions.len(),
            alg.dim()
        )));
    }
    for (i, m) in actions.iter().enumerate() {
        if m.rows() != dim || m.cols() != dim || m.field() != alg.field() {
            return Err(AlgebraError::InvalidModule(format!(
                "{what}: action matrix {i} has the wrong shape or field"
            )));
        }
    }
    if actions[0] != ExactMatrix::identity(alg.field(), dim) {
        return Err(AlgebraError::InvalidModule(format!("{what}: unit does not act as identity")));
    }
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let prod = act_by(actions, &alg.mul_basis(i, j), dim);
            let composed = if right {
                actions[j].mul(&actions[i])
            } else {
                actions[i].mul(&actions[j])
            };
            if prod != composed {
                return Err(AlgebraError::InvalidModule(format!(
                    "{what}: action of {}·{} is not the composite",
                    alg.labels()[i],
                    alg.labels()[j]
                )));
            }
        }
    }
    Ok(())
}

/// Restricts operators to an invariant subspace with basis `basis` (columns).
fn restrict(ops: &[ExactMatrix], basis: &ExactMatrix) -> Result<Vec<ExactMatrix>, AlgebraError> {
    ops.iter()
        .map(|op| {
            basis
                .solve(&op.mul(basis))?
                .ok_or_else(|| AlgebraError::InvalidModule("subspace is not invariant".into()))
        })
        .collect()
}

/// Induced operators on the quotient by an invariant subspace.
fn on_quotient(ops: &[ExactMatrix], quo: &Quotient) -> Vec<ExactMatrix> {
    let field = quo.projection().field();
    ops.iter()
        .map(|op| {
            let cols: Vec<Vec<FieldElement>> = (0..quo.dim())
                .map(|j| {
                    let mut e = vec![field.zero(); quo.dim()];
                    e[j] = field.one();
                    quo.coordinates(&op.mul_vec(&quo.lift(&e)))
                })
                .collect();
            ExactMatrix::from_columns(field, quo.dim(), &cols)
        })
        .collect()
}

/// Right module: `m·x_i = action[i] · m` on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightModule {
    algebra: AlgebraRef,
    dim: usize,
    action: Vec<ExactMatrix>,
}

impl RightModule {
    pub fn new(
        algebra: AlgebraRef,
        dim: usize,
        action: Vec<ExactMatrix>,
    ) -> Result<RightModule, AlgebraError> {
        check_action(&algebra, &action, dim, true, "right module")?;
        Ok(RightModule {
            algebra,
            dim,
            action,
        })
    }

    pub(crate) fn new_unchecked(algebra: AlgebraRef, dim: usize, action: Vec<ExactMatrix>) -> Self {
        RightModule {
            algebra,
            dim,
            action,
        }
    }

    /// `A` acting on itself by right multiplication.
    pub fn regular(algebra: AlgebraRef) -> RightModule {
        let action = (0..algebra.dim())
            .map(|i| algebra.right_mult(&algebra.basis_element(i)))
            .collect();
        RightModule::new_unchecked(algebra.clone(), algebra.dim(), action)
    }

    /// Free module `A^n`.
    pub fn free(algebra: AlgebraRef, n: usize) -> RightModule {
        let action = (0..algebra.dim())
            .map(|i| right_action_on_free(&algebra, n, &algebra.basis_element(i)))
            .collect();
        RightModule::new_unchecked(algebra.clone(), n * algebra.dim(), action)
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action_matrices(&self) -> &[ExactMatrix] {
        &self.action
    }

    /// Matrix of `m ↦ m·a`.
    pub fn act(&self, a: &[FieldElement]) -> ExactMatrix {
        if self.dim == 0 {
            return ExactMatrix::zeros(self.algebra.field(), 0, 0);
        }
        act_by(&self.action, a, self.dim)
    }

    /// Submodule spanned by the columns of `basis` (must be invariant and independent).
    pub fn submodule(&self, basis: &ExactMatrix) -> Result<RightModule, AlgebraError> {
        let action = restrict(&self.action, basis)?;
        Ok(RightModule::new_unchecked(self.algebra.clone(), basis.cols(), action))
    }

    /// Quotient by the invariant subspace spanned by the columns of `sub`.
    pub fn quotient(&self, sub: &ExactMatrix) -> RightModule {
        let quo = Quotient::new(sub);
        let action = on_quotient(&self.action, &quo);
        RightModule::new_unchecked(self.algebra.clone(), quo.dim(), action)
    }

    /// Columns spanning `M·J` for the Jacobson radical `J`.
    pub fn radical_part(&self) -> Result<ExactMatrix, AlgebraError> {
        let rad = self.algebra.radical()?;
        let field = self.algebra.field();
        let mut cols = vec![];
        for r in rad.columns() {
            let op = self.act(&r);
            cols.extend(op.columns());
        }
        let span = ExactMatrix::from_columns(field, self.dim, &cols);
        Ok(span.select_columns(&span.pivot_columns()))
    }

    /// Semisimple top `M / MJ`.
    pub fn top(&self) -> Result<RightModule, AlgebraError> {
        Ok(self.quotient(&self.radical_part()?))
    }

    pub fn direct_sum(&self, other: &RightModule) -> RightModule {
        assert_eq!(self.algebra, other.algebra, "modules over different algebras");
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| block_diag(a, b))
            .collect();
        RightModule::new_unchecked(self.algebra.clone(), self.dim + other.dim, action)
    }

    /// Morita transport `M ↦ M ⊗_A A^{1×n}`, the row space `M^n` as a right
    /// `M_n(A)`-module: `(m_1..m_n)·(E_pq ⊗ a)` puts `m_p·a` in slot `q`.
    pub fn morita_transport(&self, target: &MatrixAlgebra) -> Result<RightModule, AlgebraError> {
        if *target.base != *self.algebra {
            return Err(AlgebraError::Mismatch("matrix algebra over a different base".into()));
        }
        let n = target.n;
        let da = self.algebra.dim();
        let field = self.algebra.field();
        let dim = n * self.dim;
        let action = (0..target.algebra.dim())
            .map(|b| {
                let old = target.from_new.column(b);
                let mut op = ExactMatrix::zeros(field, dim, dim);
                for p in 0..n {
                    for q in 0..n {
                        let a: Vec<FieldElement> =
                            (0..da).map(|k| old[(p * n + q) * da + k].clone()).collect();
                        if a.iter().all(FieldElement::is_zero) {
                            continue;
                        }
                        let m = self.act(&a);
                        for r in 0..self.dim {
                            for c in 0..self.dim {
                                if !m[(r, c)].is_zero() {
                                    op[(q * self.dim + r, p * self.dim + c)] += &m[(r, c)];
                                }
                            }
                        }
                    }
                }
                op
            })
            .collect();
        RightModule::new(target.algebra.clone(), dim, action)
    }
}

fn block_diag(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let field = a.field();
    let n = a.rows() + b.rows();
    ExactMatrix::from_fn(field, n, n, |r, c| {
        if r < a.rows() && c < a.cols() {
            a[(r, c)].clone()
        } else if r >= a.rows() && c >= a.cols() {
            b[(r - a.rows(), c - a.cols())].clone()
        } else {
            field.zero()
        }
    })
}

/// Left module: `x_i·m = action[i] · m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftModule {
    algebra: AlgebraRef,
    dim: usize,
    action: Vec<ExactMatrix>,
}

impl LeftModule {
    pub fn new(algebra: AlgebraRef, dim: usize, action: Vec<ExactMatrix>) -> Result<Self, AlgebraError> {
        check_action(&algebra, &action, dim, false, "left module")?;
        Ok(LeftModule {
            algebra,
            dim,
            action,
        })
    }

    pub(crate) fn new_unchecked(algebra: AlgebraRef, dim: usize, action: Vec<ExactMatrix>) -> Self {
        LeftModule {
            algebra,
            dim,
            action,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn act(&self, a: &[FieldElement]) -> ExactMatrix {
        if self.dim == 0 {
            return ExactMatrix::zeros(self.algebra.field(), 0, 0);
        }
        act_by(&self.action, a, self.dim)
    }
}

/// Right `A`-module structure of a bimodule given as the image of an
/// idempotent `E ∈ M_n(A)` on `A^n`, with the left action `a ↦ λ(a) ∈ E M_n(A) E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimodulePresentation {
    pub idempotent: AMatrix,
    /// `left[i] = λ(x_i)`.
    pub left: Vec<AMatrix>,
}

impl BimodulePresentation {
    pub fn rank(&self) -> usize {
        self.idempotent.rows()
    }

    /// `λ(a) = Σ a_i λ(x_i)`.
    pub fn lambda(&self, alg: &Algebra, a: &[FieldElement]) -> AMatrix {
        let n = self.rank();
        let mut out = AMatrix::zeros(alg, n, n);
        for (c, m) in a.iter().zip(&self.left) {
            if !c.is_zero() {
                out = out.add(alg, &m.scale(alg, c));
            }
        }
        out
    }

    /// Checks `E² = E`, `λ(1) = E`, `E λ(a) E = λ(a)`, and `λ(x_i x_j) = λ(x_i) λ(x_j)`.
    pub fn validate(&self, alg: &Algebra) -> Result<(), AlgebraError> {
        let bad = |m: String| Err(AlgebraError::InvalidModule(m));
        let e = &self.idempotent;
        if e.rows() != e.cols() {
            return bad("idempotent is not square".into());
        }
        if e.mul(alg, e) != *e {
            return bad("E² ≠ E".into());
        }
        if self.left.len() != alg.dim() {
            return bad("one λ matrix per basis vector required".into());
        }
        if self.left.iter().any(|l| l.rows() != e.rows() || l.cols() != e.cols()) {
            return bad("λ matrices have the wrong size".into());
        }
        if self.left[0] != *e {
            return bad("λ(1) ≠ E".into());
        }
        for (i, l) in self.left.iter().enumerate() {
            if e.mul(alg, l).mul(alg, e) != *l {
                return bad(format!("λ({}) is not in E·M_n(A)·E", alg.labels()[i]));
            }
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = self.lambda(alg, &alg.mul_basis(i, j));
                let rhs = self.left[i].mul(alg, &self.left[j]);
                if lhs != rhs {
                    return bad(format!(
                        "λ is not multiplicative on ({}, {})",
                        alg.labels()[i],
                        alg.labels()[j]
                    ));
                }
            }
        }
        Ok(())
    }
}

/// `(A, B)`-bimodule: `a·m·b = λ(a) ρ(b) m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    left_algebra: AlgebraRef,
    right_algebra: AlgebraRef,
    dim: usize,
    left: Vec<ExactMatrix>,
    right: Vec<ExactMatrix>,
    presentation: Option<BimodulePresentation>,
}

impl Bimodule {
    pub fn new(
        left_algebra: AlgebraRef,
        right_algebra: AlgebraRef,
        dim: usize,
        left: Vec<ExactMatrix>,
        right: Vec<ExactMatrix>,
    ) -> Result<Bimodule, AlgebraError> {
        if left_algebra.field() != right_algebra.field() {
            return Err(AlgebraError::Mismatch("algebras over different fields".into()));
        }
        check_action(&left_algebra, &left, dim, false, "bimodule left action")?;
        check_action(&right_algebra, &right, dim, true, "bimodule right action")?;
        for (i, l) in left.iter().enumerate() {
            for (j, r) in right.iter().enumerate() {
                if l.mul(r) != r.mul(l) {
                    return Err(AlgebraError::InvalidModule(format!(
                        "left action of {} does not commute with right action of {}",
                        left_algebra.labels()[i],
                        right_algebra.labels()[j]
                    )));
                }
            }
        }
        Ok(Bimodule {
            left_algebra,
            right_algebra,
            dim,
            left,
            right,
            presentation: None,
        })
    }

    fn new_unchecked(
        left_algebra: AlgebraRef,
        right_algebra: AlgebraRef,
        dim: usize,
        left: Vec<ExactMatrix>,
        right: Vec<ExactMatrix>,
    ) -> Bimodule {
        Bimodule {
            left_algebra,
            right_algebra,
            dim,
            left,
            right,
            presentation: None,
        }
    }

    /// The diagonal bimodule `A`.
    pub fn diagonal(a: AlgebraRef) -> Bimodule {
        let d = a.dim();
        Self::twisted(a.clone(), &ExactMatrix::identity(a.field(), d)).expect("identity is an automorphism")
    }

    /// `A_σ`: underlying space `A`, left action regular, right action
    /// `m·b = m σ(b)`. As a right module `A_σ ≅ A` via `x ↦ σ(x)`, which
    /// gives the presentation `E = (1)`, `λ(a) = (σ⁻¹(a))`.
    pub fn twisted(a: AlgebraRef, sigma: &ExactMatrix) -> Result<Bimodule, AlgebraError> {
        a.check_automorphism(sigma)?;
        let inv = sigma.inverse().expect("automorphisms are invertible");
        let d = a.dim();
        let left = (0..d).map(|i| a.left_mult(&a.basis_element(i))).collect();
        let right = (0..d).map(|i| a.right_mult(&sigma.column(i))).collect();
        let pres = BimodulePresentation {
            idempotent: AMatrix::identity(&a, 1),
            left: (0..d)
                .map(|i| AMatrix::from_entries(1, 1, vec![inv.column(i)]))
                .collect(),
        };
        let mut m = Self::new_unchecked(a.clone(), a, d, left, right);
        m.presentation = Some(pres);
        Ok(m)
    }

    /// `A ⊗ A` with `a·(u ⊗ v)·b = au ⊗ vb`. Free of rank `dim A` as a right
    /// module on generators `x_i ⊗ 1`; `λ(x)` is the left regular
    /// representation of `x` with scalar entries.
    pub fn outer(a: AlgebraRef) -> Bimodule {
        let d = a.dim();
        let field = a.field();
        let id = ExactMatrix::identity(field, d);
        let left = (0..d)
            .map(|i| a.left_mult(&a.basis_element(i)).kronecker(&id))
            .collect();
        let right = (0..d)
            .map(|i| id.kronecker(&a.right_mult(&a.basis_element(i))))
            .collect();
        let pres = BimodulePresentation {
            idempotent: AMatrix::identity(&a, d),
            left: (0..d)
                .map(|i| AMatrix::from_scalars(&a, &a.left_mult(&a.basis_element(i))))
                .collect(),
        };
        let mut m = Self::new_unchecked(a.clone(), a, d * d, left, right);
        m.presentation = Some(pres);
        m
    }

    /// The bimodule `E·A^n` described by a presentation: right action slotwise,
    /// left action through `λ`.
    pub fn from_presentation(a: AlgebraRef, pres: BimodulePresentation) -> Result<Bimodule, AlgebraError> {
        pres.validate(&a)?;
        let n = pres.rank();
        let basis = {
            let e = pres.idempotent.left_action(&a);
            e.select_columns(&e.pivot_columns())
        };
        let dim = basis.cols();
        let left_ops: Vec<ExactMatrix> = pres.left.iter().map(|l| l.left_action(&a)).collect();
        let right_ops: Vec<ExactMatrix> = (0..a.dim())
            .map(|i| right_action_on_free(&a, n, &a.basis_element(i)))
            .collect();
        let left = restrict(&left_ops, &basis)?;
        let right = restrict(&right_ops, &basis)?;
        let mut m = Self::new_unchecked(a.clone(), a, dim, left, right);
        m.presentation = Some(pres);
        Ok(m)
    }

    /// `N ⊗_k L` for a right module `N` and a left module `L` over the same
    /// algebra, with left action through `L` and right action through `N`.
    /// Basis `n_i ⊗ l_j` at index `i * dim L + j`.
    pub fn from_right_and_left(n: &RightModule, l: &LeftModule) -> Result<Bimodule, AlgebraError> {
        if n.algebra() != l.algebra() {
            return Err(AlgebraError::Mismatch("modules over different algebras".into()));
        }
        let a = n.algebra().clone();
        let field = a.field();
        let id_n = ExactMatrix::identity(field, n.dim());
        let id_l = ExactMatrix::identity(field, l.dim());
        let left = (0..a.dim())
            .map(|i| id_n.kronecker(&l.act(&a.basis_element(i))))
            .collect();
        let right = (0..a.dim())
            .map(|i| n.act(&a.basis_element(i)).kronecker(&id_l))
            .collect();
        Ok(Self::new_unchecked(a.clone(), a, n.dim() * l.dim(), left, right))
    }

    pub fn with_presentation(mut self, pres: BimodulePresentation) -> Result<Bimodule, AlgebraError> {
        pres.validate(&self.left_algebra)?;
        self.presentation = Some(pres);
        Ok(self)
    }

    pub fn left_algebra(&self) -> &AlgebraRef {
        &self.left_algebra
    }

    pub fn right_algebra(&self) -> &AlgebraRef {
        &self.right_algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn presentation(&self) -> Option<&BimodulePresentation> {
        self.presentation.as_ref()
    }

    /// Matrix of `m ↦ a·m`.
    pub fn act_left(&self, a: &[FieldElement]) -> ExactMatrix {
        if self.dim == 0 {
            return ExactMatrix::zeros(self.left_algebra.field(), 0, 0);
        }
        act_by(&self.left, a, self.dim)
    }

    /// Matrix of `m ↦ m·b`.
    pub fn act_right(&self, b: &[FieldElement]) -> ExactMatrix {
        if self.dim == 0 {
            return ExactMatrix::zeros(self.right_algebra.field(), 0, 0);
        }
        act_by(&self.right, b, self.dim)
    }

    pub fn left_matrices(&self) -> &[ExactMatrix] {
        &self.left
    }

    pub fn right_matrices(&self) -> &[ExactMatrix] {
        &self.right
    }

    pub fn direct_sum(&self, other: &Bimodule) -> Bimodule {
        assert_eq!(self.left_algebra, other.left_algebra);
        assert_eq!(self.right_algebra, other.right_algebra);
        let left = self
            .left
            .iter()
            .zip(&other.left)
            .map(|(a, b)| block_diag(a, b))
            .collect();
        let right = self
            .right
            .iter()
            .zip(&other.right)
            .map(|(a, b)| block_diag(a, b))
            .collect();
        let mut m = Self::new_unchecked(
            self.left_algebra.clone(),
            self.right_algebra.clone(),
            self.dim + other.dim,
            left,
            right,
        );
        if let (Some(p), Some(q)) = (&self.presentation, &other.presentation) {
            let alg = &self.left_algebra;
            let blk = |x: &AMatrix, y: &AMatrix| -> AMatrix {
                let n = x.rows() + y.rows();
                let mut out = AMatrix::zeros(alg, n, n);
                for r in 0..x.rows() {
                    for c in 0..x.cols() {
                        out.set(r, c, x.get(r, c).clone());
                    }
                }
                for r in 0..y.rows() {
                    for c in 0..y.cols() {
                        out.set(x.rows() + r, x.cols() + c, y.get(r, c).clone());
                    }
                }
                out
            };
            m.presentation = Some(BimodulePresentation {
                idempotent: blk(&p.idempotent, &q.idempotent),
                left: p.left.iter().zip(&q.left).map(|(x, y)| blk(x, y)).collect(),
            });
        }
        m
    }

    /// The underlying right module.
    pub fn as_right_module(&self) -> RightModule {
        RightModule::new_unchecked(self.right_algebra.clone(), self.dim, self.right.clone())
    }
}

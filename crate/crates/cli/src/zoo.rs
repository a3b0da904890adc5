//! The example zoo: named algebras, bimodules, module pairs and kernels.
//!
//! A zoo file is `{"entries": [entry, ...]}`. Each entry has a `name`, a
//! `kind` and the fields that kind needs:
//!
//! * `algebra`: `algebra` (a built-in name or an algebra JSON object), optional `smooth`, `proper`
//! * `bimodule`: `algebra`, `bimodule` (`"diagonal"`, `"outer"`, `{"twist": name}` or an explicit bimodule), `vanish_bound`, optional `twists`
//! * `module-pair`: `algebra`, `m`, `n`, each `{"free": r}`, `{"projective": [v, ...]}`, `{"simple": v}` or `{"module": {"dim", "action"}}`
//! * `variety-kernel`: `kernel` (`{"variety": [n, ...], "kernel": ...}`)
//!
//! Vertices are numbered from 1. `twists` maps names to square matrices whose
//! columns are the images of the basis vectors. Any entry may carry
//! `expected: {"value", "provenance", "note"?}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use nctrace::algebra::format::{AlgebraSpec, BimoduleSpec, Scalar, QUIVER_PATH_CAP};
use nctrace::algebra::{
    algebra_from_quiver, Algebra, AlgebraError, AlgebraRef, Bimodule, PerfectObject, ProjectivePresentation,
    Quiver, RightModule,
};
use nctrace::chow::{chi_projective, KernelBody, KernelSpec, KernelTerm, Variety};
use nctrace::exactalg::{parse_rational, ExactMatrix, Field, FieldElement};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ZooError {
    #[error("cannot read zoo file {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("bad zoo file: {0}")]
    Parse(String),
    #[error("entry {entry}: {message}")]
    Entry { entry: String, message: String },
    #[error("no zoo entry named {0:?}")]
    Unknown(String),
}

fn entry_error(entry: &str, message: impl fmt::Display) -> ZooError {
    ZooError::Entry {
        entry: entry.to_string(),
        message: message.to_string(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Algebra,
    Bimodule,
    ModulePair,
    VarietyKernel,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Algebra => "algebra",
            Kind::Bimodule => "bimodule",
            Kind::ModulePair => "module-pair",
            Kind::VarietyKernel => "variety-kernel",
        })
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Immediate from the definitions.
    Trivial,
    /// Computed by an independent formula.
    DerivedOracle,
    /// Agreement of the engine's two pipelines, recorded.
    CrossChecked,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub value: String,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSource {
    Named(String),
    Spec(Box<AlgebraSpec>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BimoduleSource {
    /// `"diagonal"` or `"outer"`.
    Named(String),
    Spec(BimoduleSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleSource {
    Free(usize),
    Projective(Vec<usize>),
    Simple(usize),
    Module { dim: usize, action: Vec<Vec<Vec<Scalar>>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZooEntry {
    pub name: String,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSource>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub twists: BTreeMap<String, Vec<Vec<Scalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bimodule: Option<BimoduleSource>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<ModuleSource>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<ModuleSource>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smooth: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proper: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vanish_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Zoo {
    pub entries: Vec<ZooEntry>,
}

const BUILTIN: &str = include_str!("builtin_zoo.json");

/// Built-in algebra names.
pub const BUILTIN_ALGEBRAS: [&str; 8] = ["k", "kxk", "kxkxk", "M2k", "kZ2", "A2", "A3", "dual_numbers"];

impl Zoo {
    /// The built-in zoo.
    pub fn builtin() -> Zoo {
        let mut zoo = Zoo::from_json(BUILTIN).expect("built-in zoo is valid");
        zoo.entries.extend(kernel_entries());
        zoo.validate().expect("built-in zoo is valid");
        zoo
    }

    pub fn from_json(text: &str) -> Result<Zoo, ZooError> {
        let zoo: Zoo = serde_json::from_str(text).map_err(|e| ZooError::Parse(e.to_string()))?;
        zoo.validate()?;
        Ok(zoo)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Zoo, ZooError> {
        let text = std::fs::read_to_string(path).map_err(|source| ZooError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Zoo::from_json(&text)
    }

    /// Names are unique and every kind has the fields it needs.
    pub fn validate(&self) -> Result<(), ZooError> {
        let mut seen = std::collections::HashSet::new();
        for e in &self.entries {
            if !seen.insert(e.name.as_str()) {
                return Err(entry_error(&e.name, "duplicate name"));
            }
            let need = |present: bool, field: &str| {
                if present {
                    Ok(())
                } else {
                    Err(entry_error(&e.name, format!("{} entry needs `{field}`", e.kind)))
                }
            };
            match e.kind {
                Kind::Algebra => need(e.algebra.is_some(), "algebra")?,
                Kind::Bimodule => {
                    need(e.algebra.is_some(), "algebra")?;
                    need(e.bimodule.is_some(), "bimodule")?;
                }
                Kind::ModulePair => {
                    need(e.algebra.is_some(), "algebra")?;
                    need(e.m.is_some(), "m")?;
                    need(e.n.is_some(), "n")?;
                }
                Kind::VarietyKernel => need(e.kernel.is_some(), "kernel")?,
            }
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&ZooEntry, ZooError> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| ZooError::Unknown(name.to_string()))
    }

    pub fn of_kind(&self, kind: Kind) -> impl Iterator<Item = &ZooEntry> {
        self.entries.iter().filter(move |e| e.kind == kind)
    }

    /// Distinct varieties of the kernel entries, in order of first appearance.
    pub fn varieties(&self) -> Vec<Variety> {
        let mut out: Vec<Variety> = vec![];
        for e in self.of_kind(Kind::VarietyKernel) {
            let x = e.kernel.as_ref().expect("validated").variety();
            if !out.contains(&x) {
                out.push(x);
            }
        }
        out
    }
}

fn kernel_entry(name: String, variety: &Variety, kernel: KernelBody, expected: Option<Expected>) -> ZooEntry {
    ZooEntry {
        name,
        kind: Kind::VarietyKernel,
        description: None,
        algebra: None,
        twists: BTreeMap::new(),
        bimodule: None,
        m: None,
        n: None,
        kernel: Some(KernelSpec {
            variety: variety.factors().to_vec(),
            kernel,
        }),
        smooth: None,
        proper: None,
        vanish_bound: None,
        expected,
    }
}

/// Diagonals, `O(a) ⊠ O(b)` for `-2 ≤ a, b ≤ 2` and twisted diagonals
/// `O_Δ · O(a) ⊠ O(b)` for `-1 ≤ a, b ≤ 1`, on pt, P1, P2 and P1xP1.
fn kernel_entries() -> Vec<ZooEntry> {
    let varieties = [
        Variety::point(),
        Variety::projective(1),
        Variety::projective(2),
        Variety::new(vec![1, 1]),
    ];
    let mut out = vec![];
    for x in &varieties {
        out.push(kernel_entry(
            format!("{x}_diag"),
            x,
            KernelBody::Named("diag".into()),
            Some(Expected {
                value: x.basis_len().to_string(),
                provenance: Provenance::DerivedOracle,
                note: Some("topological Euler characteristic".into()),
            }),
        ));
    }
    for x in &varieties[1..] {
        let r = x.factors().len();
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                let chi: BigInt = x
                    .factors()
                    .iter()
                    .map(|&n| chi_projective(n, a + b))
                    .product();
                out.push(kernel_entry(
                    format!("{x}_O({a})xO({b})"),
                    x,
                    KernelBody::Terms(vec![KernelTerm {
                        coef: 1,
                        degrees: [vec![a; r], vec![b; r]],
                        diag: false,
                    }]),
                    Some(Expected {
                        value: chi.to_string(),
                        provenance: Provenance::DerivedOracle,
                        note: Some(format!("chi(X, O({})) by Riemann-Roch", a + b)),
                    }),
                ));
            }
        }
        for a in -1i64..=1 {
            for b in -1i64..=1 {
                out.push(kernel_entry(
                    format!("{x}_diag_O({a})xO({b})"),
                    x,
                    KernelBody::Terms(vec![KernelTerm {
                        coef: 1,
                        degrees: [vec![a; r], vec![b; r]],
                        diag: true,
                    }]),
                    None,
                ));
            }
        }
    }
    out
}

fn k(field: Field) -> Algebra {
    Algebra::new(field, vec!["1".into()], vec![field.one()]).expect("the base field is an algebra")
}

fn quiver(field: Field, vertices: usize, arrows: &[(usize, usize, &str)], relations: &[&[&str]]) -> Result<Algebra, AlgebraError> {
    let q = Quiver {
        vertices,
        arrows: arrows.iter().map(|&(s, t, l)| (s, t, l.to_string())).collect(),
        relations: relations.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
    };
    algebra_from_quiver(field, &q, QUIVER_PATH_CAP)
}

fn builtin_algebra(name: &str, field: Field) -> Result<Algebra, AlgebraError> {
    match name {
        "k" => Ok(k(field)),
        "kxk" => k(field).product(&k(field)),
        "kxkxk" => k(field).product(&k(field))?.product(&k(field)),
        "M2k" => k(field).matrix_algebra(2),
        "kZ2" => {
            let a = Algebra::group_algebra(field, &[vec![1, 0]])?;
            let half = field.from_rational(&parse_rational("1/2")?)?;
            let plus = vec![half.clone(), half.clone()];
            let minus = vec![half.clone(), -half];
            a.with_idempotents(vec![plus, minus])
        }
        "A2" => quiver(field, 2, &[(1, 2, "a")], &[]),
        "A3" => quiver(field, 3, &[(1, 2, "a"), (2, 3, "b")], &[]),
        "dual_numbers" => quiver(field, 1, &[(1, 1, "x")], &[&["x", "x"]]),
        _ => Err(AlgebraError::BadConstants(format!(
            "unknown built-in algebra {name:?} (known: {})",
            BUILTIN_ALGEBRAS.join(", ")
        ))),
    }
}

/// The automorphism sending the `i`-th primitive idempotent to the `perm[i]`-th.
fn permute_idempotents(a: &Algebra, perm: &[usize]) -> ExactMatrix {
    let e = a.idempotents();
    let p = ExactMatrix::from_columns(a.field(), a.dim(), e);
    let image: Vec<Vec<FieldElement>> = perm.iter().map(|&j| e[j].clone()).collect();
    ExactMatrix::from_columns(a.field(), a.dim(), &image).mul(&p.inverse().expect("idempotents form a basis"))
}

/// Scales each arrow; paths scale by the product.
fn scale_arrows(a: &Algebra, factors: &[(&str, i64)]) -> ExactMatrix {
    let field = a.field();
    let mut sigma = ExactMatrix::identity(field, a.dim());
    for (i, label) in a.labels().iter().enumerate() {
        let s: i64 = label
            .split('.')
            .map(|arrow| factors.iter().find(|(l, _)| *l == arrow).map_or(1, |(_, s)| *s))
            .product();
        sigma[(i, i)] = field.from_i64(s);
    }
    sigma
}

fn builtin_twist(algebra: &str, twist: &str, a: &Algebra) -> Option<ExactMatrix> {
    let field = a.field();
    match (algebra, twist) {
        (_, "id") => Some(ExactMatrix::identity(field, a.dim())),
        ("kxk", "swap") => Some(permute_idempotents(a, &[1, 0])),
        ("kxkxk", "cycle") => Some(permute_idempotents(a, &[1, 2, 0])),
        ("kxkxk", "transposition") => Some(permute_idempotents(a, &[1, 0, 2])),
        ("kZ2", "sign") => {
            let mut s = ExactMatrix::identity(field, 2);
            s[(1, 1)] = field.from_i64(-1);
            Some(s)
        }
        ("A2", "scale") => Some(scale_arrows(a, &[("a", 2)])),
        ("A3", "scale") => Some(scale_arrows(a, &[("a", 2), ("b", 3)])),
        _ => None,
    }
}

fn scalar_matrix(field: Field, rows: &[Vec<Scalar>]) -> Result<ExactMatrix, AlgebraError> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::InvalidModule("twist matrices must be square".into()));
    }
    let entries = rows
        .iter()
        .flatten()
        .map(|s| s.to_field(field))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ExactMatrix::from_entries(field, n, n, entries)?)
}

impl ZooEntry {
    /// The entry's algebra over `field`; a field named in an algebra file is
    /// overridden.
    pub fn build_algebra(&self, field: Field) -> Result<AlgebraRef, ZooError> {
        let alg = match self.algebra.as_ref() {
            None => return Err(entry_error(&self.name, "no algebra")),
            Some(AlgebraSource::Named(n)) => builtin_algebra(n, field),
            Some(AlgebraSource::Spec(spec)) => spec.build(field, Some(field)),
        };
        alg.map(Arc::new).map_err(|e| entry_error(&self.name, e))
    }

    pub fn build_bimodule(&self, a: &AlgebraRef) -> Result<Bimodule, ZooError> {
        let src = self
            .bimodule
            .as_ref()
            .ok_or_else(|| entry_error(&self.name, "no bimodule"))?;
        let algebra_name = match &self.algebra {
            Some(AlgebraSource::Named(n)) => n.as_str(),
            _ => "",
        };
        let resolve = |name: &str| -> Option<ExactMatrix> {
            match self.twists.get(name) {
                Some(rows) => scalar_matrix(a.field(), rows).ok(),
                None => builtin_twist(algebra_name, name, a),
            }
        };
        let built = match src {
            BimoduleSource::Named(n) if n == "diagonal" => Ok(Bimodule::diagonal(a.clone())),
            BimoduleSource::Named(n) if n == "outer" => Ok(Bimodule::outer(a.clone())),
            BimoduleSource::Named(n) => Err(AlgebraError::InvalidModule(format!(
                "unknown bimodule {n:?} (use \"diagonal\", \"outer\", a twist or an explicit bimodule)"
            ))),
            BimoduleSource::Spec(spec) => spec.build(a, resolve),
        };
        built.map_err(|e| entry_error(&self.name, e))
    }

    fn build_module(&self, a: &AlgebraRef, src: &ModuleSource) -> Result<PerfectObject, ZooError> {
        let vertex = |v: usize| -> Result<usize, ZooError> {
            if v == 0 || v > a.idempotents().len() {
                Err(entry_error(
                    &self.name,
                    format!("vertex {v} out of range 1..={}", a.idempotents().len()),
                ))
            } else {
                Ok(v - 1)
            }
        };
        Ok(match src {
            ModuleSource::Free(r) => ProjectivePresentation::free(a.clone(), *r).into(),
            ModuleSource::Projective(vs) => {
                let vs = vs.iter().map(|&v| vertex(v)).collect::<Result<Vec<_>, _>>()?;
                ProjectivePresentation::from_vertices(a.clone(), &vs).into()
            }
            ModuleSource::Simple(v) => {
                let p = ProjectivePresentation::vertex(a.clone(), vertex(*v)?);
                p.to_module().top().map_err(|e| entry_error(&self.name, e))?.into()
            }
            ModuleSource::Module { dim, action } => {
                let mats = action
                    .iter()
                    .map(|m| {
                        if m.len() != *dim {
                            return Err(AlgebraError::InvalidModule(format!("expected {dim}x{dim} action matrices")));
                        }
                        scalar_matrix(a.field(), m)
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| entry_error(&self.name, e))?;
                RightModule::new(a.clone(), *dim, mats)
                    .map_err(|e| entry_error(&self.name, e))?
                    .into()
            }
        })
    }

    pub fn build_pair(&self, a: &AlgebraRef) -> Result<(PerfectObject, PerfectObject), ZooError> {
        let m = self.m.as_ref().ok_or_else(|| entry_error(&self.name, "no m"))?;
        let n = self.n.as_ref().ok_or_else(|| entry_error(&self.name, "no n"))?;
        Ok((self.build_module(a, m)?, self.build_module(a, n)?))
    }

    /// Declared smooth and proper (both default to true for algebras).
    pub fn smooth_proper(&self) -> bool {
        self.smooth.unwrap_or(true) && self.proper.unwrap_or(true)
    }
}

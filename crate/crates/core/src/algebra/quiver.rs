use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Algebra, AlgebraError, Sparse};
use crate::exactalg::{ExactMatrix, Field};

/// A finite quiver with monomial relations. Vertices are numbered `1..=vertices`;
/// a relation is a path listed by arrow labels in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize, String)>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

#[derive(Clone, Debug)]
struct Path {
    src: usize,
    tgt: usize,
    arrows: Vec<usize>,
}

/// Path algebra modulo monomial relations.
///
/// The basis is the vertex idempotents followed by the surviving nontrivial
/// paths, shortest first; after rebasing the unit `Σ e_v` replaces `e_1`.
/// A path is labelled by its arrows in traversal order joined with `.`.
/// Multiplication is composition: `p · q` is "q then p", nonzero when
/// `q` ends where `p` starts. Fails if paths longer than `cap` survive.
pub fn algebra_from_quiver(field: Field, quiver: &Quiver, cap: usize) -> Result<Algebra, AlgebraError> {
    let n = quiver.vertices;
    if n == 0 {
        return Err(AlgebraError::BadConstants("quiver without vertices".into()));
    }
    for (s, t, l) in &quiver.arrows {
        if *s == 0 || *s > n || *t == 0 || *t > n {
            return Err(AlgebraError::BadConstants(format!(
                "arrow {l} has an endpoint outside 1..={n}"
            )));
        }
    }
    let arrow_index: HashMap<&str, usize> = quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(i, (_, _, l))| (l.as_str(), i))
        .collect();
    if arrow_index.len() != quiver.arrows.len() {
        return Err(AlgebraError::BadConstants("duplicate arrow labels".into()));
    }
    let mut relations: Vec<Vec<usize>> = vec![];
    for rel in &quiver.relations {
        let idx: Vec<usize> = rel
            .iter()
            .map(|l| {
                arrow_index
                    .get(l.as_str())
                    .copied()
                    .ok_or_else(|| AlgebraError::BadConstants(format!("unknown arrow {l}")))
            })
            .collect::<Result<_, _>>()?;
        if idx.len() < 2 {
            return Err(AlgebraError::BadConstants(format!(
                "relation {rel:?} is not in the square of the arrow ideal"
            )));
        }
        for w in idx.windows(2) {
            if quiver.arrows[w[0]].1 != quiver.arrows[w[1]].0 {
                return Err(AlgebraError::BadConstants(format!("relation {rel:?} is not a path")));
            }
        }
        relations.push(idx);
    }
    let killed = |arrows: &[usize]| relations.iter().any(|r| arrows.ends_with(r));

    let mut paths: Vec<Path> = (1..=n)
        .map(|v| Path {
            src: v,
            tgt: v,
            arrows: vec![],
        })
        .collect();
    let mut level: Vec<Path> = vec![];
    for (i, (s, t, _)) in quiver.arrows.iter().enumerate() {
        level.push(Path {
            src: *s,
            tgt: *t,
            arrows: vec![i],
        });
    }
    let mut length = 1;
    while !level.is_empty() {
        if length > cap {
            return Err(AlgebraError::InfiniteDimensional(cap));
        }
        paths.extend(level.iter().cloned());
        let mut next = vec![];
        for p in &level {
            for (i, (s, t, _)) in quiver.arrows.iter().enumerate() {
                if *s != p.tgt {
                    continue;
                }
                let mut arrows = p.arrows.clone();
                arrows.push(i);
                if !killed(&arrows) {
                    next.push(Path {
                        src: p.src,
                        tgt: *t,
                        arrows,
                    });
                }
            }
        }
        level = next;
        length += 1;
    }

    let d = paths.len();
    let index: HashMap<Vec<usize>, usize> = paths
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.arrows.is_empty())
        .map(|(i, p)| (p.arrows.clone(), i))
        .collect();
    let mut table: Vec<Sparse> = Vec::with_capacity(d * d);
    for p in &paths {
        for q in &paths {
            // p · q = q then p
            let entry = if q.tgt != p.src {
                None
            } else if p.arrows.is_empty() {
                Some(index_of(&index, q))
            } else if q.arrows.is_empty() {
                Some(index_of(&index, p))
            } else {
                let mut arrows = q.arrows.clone();
                arrows.extend(&p.arrows);
                index.get(&arrows).copied()
            };
            table.push(entry.map_or(vec![], |k| vec![(k, field.one())]));
        }
    }
    let labels: Vec<String> = paths
        .iter()
        .map(|p| {
            if p.arrows.is_empty() {
                format!("e{}", p.src)
            } else {
                p.arrows
                    .iter()
                    .map(|&a| quiver.arrows[a].2.as_str())
                    .collect::<Vec<_>>()
                    .join(".")
            }
        })
        .collect();
    let mut unit = vec![field.zero(); d];
    for u in unit.iter_mut().take(n) {
        *u = field.one();
    }
    let (alg, to_new) = Algebra::rebased_on_unit(field, labels, table, &unit)?;
    let old_basis = |i: usize| {
        let mut v = vec![field.zero(); d];
        v[i] = field.one();
        to_new.mul_vec(&v)
    };
    let idem = (0..n).map(old_basis).collect();
    let rad: Vec<_> = (n..d).map(old_basis).collect();
    alg.with_idempotents(idem)?
        .with_radical(ExactMatrix::from_columns(field, d, &rad))
}

fn index_of(index: &HashMap<Vec<usize>, usize>, p: &Path) -> usize {
    if p.arrows.is_empty() {
        p.src - 1
    } else {
        index[&p.arrows]
    }
}

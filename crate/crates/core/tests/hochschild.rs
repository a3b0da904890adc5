use std::sync::Arc;

use nctrace::algebra::{algebra_from_quiver, Algebra, AlgebraRef, Bimodule, MatrixAlgebra, Quiver};
use nctrace::exactalg::{ExactMatrix, Field};
use nctrace::hochschild::{hh_dims, lefschetz_check, pairing_gram, pairing_kills_commutators};
use nctrace::verify::Verdict;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn q() -> Field {
    Field::Rationals
}

fn k() -> Algebra {
    Algebra::new(q(), vec!["1".into()], vec![q().one()]).unwrap()
}

fn k_power(n: usize) -> AlgebraRef {
    let mut a = k();
    for _ in 1..n {
        a = a.product(&k()).unwrap();
    }
    Arc::new(a)
}

fn quiver(vertices: usize, arrows: &[(usize, usize, &str)], relations: &[&[&str]]) -> AlgebraRef {
    let quiver = Quiver {
        vertices,
        arrows: arrows.iter().map(|&(s, t, l)| (s, t, l.to_string())).collect(),
        relations: relations.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
    };
    Arc::new(algebra_from_quiver(q(), &quiver, 16).unwrap())
}

/// The automorphism permuting the primitive idempotents.
fn permutation_automorphism(a: &Algebra, perm: &[usize]) -> ExactMatrix {
    let e = a.idempotents();
    let p = ExactMatrix::from_columns(q(), a.dim(), e);
    let image: Vec<_> = perm.iter().map(|&j| e[j].clone()).collect();
    ExactMatrix::from_columns(q(), a.dim(), &image).mul(&p.inverse().unwrap())
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, rng_seed: RngSeed::Fixed(0x1ef5), ..ProptestConfig::default() })]

    #[test]
    fn permutation_twists_count_fixed_points(perm in (1usize..=4).prop_flat_map(permutation)) {
        let a = k_power(perm.len());
        let sigma = permutation_automorphism(&a, &perm);
        let m = Bimodule::twisted(a.clone(), &sigma).unwrap();
        let case = lefschetz_check("perm", &a, &m, 1);
        prop_assert_eq!(case.verdict, Verdict::Pass);
        let fixed = perm.iter().enumerate().filter(|&(i, &j)| i == j).count();
        prop_assert_eq!(case.lhs, Some(fixed.to_string()));
    }
}

fn zoo() -> Vec<AlgebraRef> {
    vec![
        k_power(1),
        k_power(2),
        quiver(2, &[(1, 2, "a")], &[]),
        quiver(3, &[(1, 2, "a"), (2, 3, "b")], &[]),
        quiver(1, &[(1, 1, "x")], &[&["x", "x"]]),
    ]
}

#[test]
fn morita_invariance() {
    for a in zoo() {
        let m2 = MatrixAlgebra::new(a.clone(), 2).unwrap();
        let b = m2.algebra.clone();
        let lhs = hh_dims(&a, &Bimodule::diagonal(a.clone()), 2).unwrap();
        let rhs = hh_dims(&b, &Bimodule::diagonal(b.clone()), 2).unwrap();
        assert_eq!(lhs, rhs, "{:?}", a.labels());
    }
}

#[test]
fn kunneth_in_degree_zero() {
    let algebras = zoo();
    for a in &algebras {
        for b in &algebras {
            let ab = Arc::new(a.tensor(b).unwrap());
            let dim = |x: &AlgebraRef| hh_dims(x, &Bimodule::diagonal(x.clone()), 0).unwrap()[0];
            assert_eq!(dim(&ab), dim(a) * dim(b), "{:?} ⊗ {:?}", a.labels(), b.labels());
        }
    }
}

#[test]
fn pairing_is_well_defined_and_nondegenerate_on_smooth_algebras() {
    let algebras = zoo();
    for a in &algebras {
        assert!(pairing_kills_commutators(a).is_ok());
    }
    let gram = |a: &AlgebraRef| pairing_gram(a);
    for a in &algebras[..4] {
        let g = gram(a);
        assert_eq!(g.rank(), g.rows(), "{:?}", a.labels());
    }
    let g = gram(&algebras[4]);
    assert!(g.rank() < g.rows());
}

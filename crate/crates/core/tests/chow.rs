use nctrace::chow::{
    compose_correspondences, k_diagonal, k_identity, chow_identity, mukai, series_sqrt, sqrt_todd, todd_class,
    todd_series, ChowClass, Correspondence, KClass, Variety,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn varieties() -> Vec<Variety> {
    vec![
        Variety::point(),
        Variety::projective(1),
        Variety::projective(2),
        Variety::projective(3),
        Variety::new(vec![1, 1]),
        Variety::new(vec![2, 1]),
    ]
}

/// Number of degree-`d` monomials in `n + 1` variables, by enumeration.
fn count_monomials(vars: usize, d: i64) -> i64 {
    if vars == 0 {
        return i64::from(d == 0);
    }
    (0..=d).map(|k| count_monomials(vars - 1, d - k)).sum()
}

/// `χ(P^n, O(d))`: sections for `d ≥ 0`, Serre duality below.
fn chi_oracle(n: usize, d: i64) -> i64 {
    if d >= 0 {
        count_monomials(n + 1, d)
    } else if d > -(n as i64) - 1 {
        0
    } else {
        let s = if n.is_multiple_of(2) { 1 } else { -1 };
        s * count_monomials(n + 1, -(n as i64) - 1 - d)
    }
}

#[test]
fn sqrt_todd_squares_to_todd() {
    for order in 0..=6 {
        let td = todd_series(order);
        let root = series_sqrt(&td).unwrap();
        assert_eq!(root.mul(&root), td, "order {order}");
    }
    for x in varieties() {
        let r = sqrt_todd(&x);
        assert_eq!(r.mul(&r), todd_class(&x), "{x}");
    }
}

#[test]
fn riemann_roch_for_line_bundles() {
    for x in varieties() {
        let n = x.factors().len();
        for mono in x.monomials() {
            for shift in [-3i64, 0, 2] {
                let degrees: Vec<i64> = mono.iter().map(|&e| e as i64 + shift).collect();
                let l = KClass::line_bundle(&x, &degrees);
                let chow_side = l.chern_character().mul(&todd_class(&x)).integrate();
                let k_side = l.euler_characteristic();
                assert_eq!(chow_side, BigRational::from_integer(k_side.clone()), "{x} O{degrees:?}");
                let oracle: i64 = (0..n).map(|i| chi_oracle(x.factors()[i], degrees[i])).product();
                assert_eq!(k_side, BigInt::from(oracle), "{x} O{degrees:?}");
            }
        }
    }
}

fn random_chow(rng: &mut ChaCha8Rng, x: &Variety) -> ChowClass {
    let mut out = ChowClass::zero(x);
    for mono in x.monomials() {
        let c = BigRational::new(rng.gen_range(-4..=4).into(), rng.gen_range(1..=3).into());
        out = out.add(&ChowClass::monomial(x, &mono, c));
    }
    out
}

fn random_k(rng: &mut ChaCha8Rng, x: &Variety) -> KClass {
    let mut out = KClass::zero(x);
    for _ in 0..3 {
        let degrees: Vec<i64> = x.factors().iter().map(|_| rng.gen_range(-2..=2)).collect();
        out = out.add(&KClass::line_bundle(x, &degrees).scale(&BigInt::from(rng.gen_range(-2..=2))));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, rng_seed: RngSeed::Fixed(0xc4a0), ..ProptestConfig::default() })]

    /// `π_*(α · π^*β) = π_*(α) · β` for the projection to the first factors.
    #[test]
    fn projection_formula(seed in any::<u64>(), which in 0usize..3) {
        let (x, keep) = [
            (Variety::new(vec![1, 2]), vec![0]),
            (Variety::new(vec![2, 1]), vec![0]),
            (Variety::new(vec![1, 1, 1]), vec![0, 2]),
        ][which].clone();
        let y = Variety::new(keep.iter().map(|&i| x.factors()[i]).collect());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alpha = random_chow(&mut rng, &x);
        let beta = random_chow(&mut rng, &y);
        let lhs = alpha.mul(&beta.pullback(&x, &keep)).pushforward(&keep);
        prop_assert_eq!(lhs, alpha.pushforward(&keep).mul(&beta));

        let a = random_k(&mut rng, &x);
        let b = random_k(&mut rng, &y);
        let lhs = a.mul(&b.pullback(&x, &keep)).pushforward(&keep);
        prop_assert_eq!(lhs, a.pushforward(&keep).mul(&b));
    }

    /// Pushforward commutes with `ch · Td` (GRR for projections).
    #[test]
    fn grr_for_projections(seed in any::<u64>()) {
        let x = Variety::new(vec![1, 2]);
        let keep = vec![1];
        let y = Variety::projective(2);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_k(&mut rng, &x);
        let chow = e.chern_character().mul(&todd_class(&x)).pushforward(&keep);
        let k = e.pushforward(&keep).chern_character().mul(&todd_class(&y));
        prop_assert_eq!(chow, k);
    }
}

#[test]
fn diagonal_composes_to_identity() {
    for x in varieties() {
        let id_k = k_identity(&x);
        let id_chow = chow_identity(&x);
        assert_eq!(mukai(&id_k).class, id_chow.class, "{x}");
        for mono in x.monomials() {
            let degrees: Vec<i64> = mono.iter().map(|&e| e as i64).collect();
            let pt = Variety::point();
            let f = Correspondence::new(pt.clone(), x.clone(), KClass::line_bundle(&x, &degrees).pullback(&pt.product(&x), &(0..x.factors().len()).collect::<Vec<_>>())).unwrap();
            assert_eq!(compose_correspondences(&f, &id_k).unwrap().class, f.class);
        }
        let diag = k_diagonal(&x);
        assert_eq!(diag.euler_characteristic(), BigInt::from(1));
        // self-intersection of the diagonal: the topological Euler characteristic
        assert_eq!(diag.mul(&diag).euler_characteristic(), BigInt::from(x.basis_len() as i64));
    }
}

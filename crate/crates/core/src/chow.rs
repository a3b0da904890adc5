//! Intersection theory and K-theory of products of projective spaces.
//!
//! `CH*(P^{n_1} × … × P^{n_r}) = Q[h_1..h_r]/(h_i^{n_i+1})` and
//! `K_0 = Z[x_1..x_r]/((x_i - 1)^{n_i+1})` with `x_i = [O(e_i)]`, written in
//! the basis `O(d_1..d_r)`, `0 ≤ d_i ≤ n_i`. A correspondence `X -> Y` is a
//! class on `X × Y` acting by `v ↦ π_Y*(π_X* v · c)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::rational_string;
use crate::verify::VerificationCase;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("series must have constant term 1")]
    NotUnitConstant,
    #[error("series with zero constant term has no inverse")]
    NotInvertible,
    #[error("exp needs a series with zero constant term")]
    NotNilpotent,
    #[error("variety mismatch: {0}")]
    Mismatch(String),
    #[error("bad kernel: {0}")]
    BadKernel(String),
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `P^{n_1} × … × P^{n_r}`; the empty product is the point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Variety {
    factors: Vec<usize>,
}

impl Variety {
    pub fn new(factors: Vec<usize>) -> Variety {
        Variety { factors }
    }

    pub fn point() -> Variety {
        Variety { factors: vec![] }
    }

    pub fn projective(n: usize) -> Variety {
        Variety { factors: vec![n] }
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn product(&self, other: &Variety) -> Variety {
        let mut factors = self.factors.clone();
        factors.extend(&other.factors);
        Variety { factors }
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().sum()
    }

    /// Number of monomials `h^a`, `0 ≤ a_i ≤ n_i` (also the rank of `K_0`).
    pub fn basis_len(&self) -> usize {
        self.factors.iter().map(|n| n + 1).product()
    }

    fn strides(&self) -> Vec<usize> {
        let mut s = vec![1; self.factors.len()];
        for i in (0..self.factors.len().saturating_sub(1)).rev() {
            s[i] = s[i + 1] * (self.factors[i + 1] + 1);
        }
        s
    }

    fn index(&self, exps: &[usize]) -> usize {
        self.strides().iter().zip(exps).map(|(s, e)| s * e).sum()
    }

    fn exponents(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            let b = self.factors[i] + 1;
            out[i] = idx % b;
            idx /= b;
        }
        out
    }

    /// All exponent vectors in index order.
    pub fn monomials(&self) -> Vec<Vec<usize>> {
        (0..self.basis_len()).map(|i| self.exponents(i)).collect()
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("pt");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("P{n}")).collect();
        f.write_str(&parts.join("x"))
    }
}

/// Class in `CH*(X)_Q`, dense in the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowClass {
    variety: Variety,
    coeffs: Vec<BigRational>,
}

impl ChowClass {
    pub fn zero(x: &Variety) -> ChowClass {
        ChowClass {
            variety: x.clone(),
            coeffs: vec![BigRational::zero(); x.basis_len()],
        }
    }

    pub fn one(x: &Variety) -> ChowClass {
        Self::monomial(x, &vec![0; x.factors.len()], BigRational::one())
    }

    pub fn monomial(x: &Variety, exps: &[usize], c: BigRational) -> ChowClass {
        let mut out = Self::zero(x);
        if exps.iter().zip(&x.factors).all(|(e, n)| e <= n) {
            out.coeffs[x.index(exps)] = c;
        }
        out
    }

    /// `h_i`.
    pub fn hyperplane(x: &Variety, i: usize) -> ChowClass {
        let mut exps = vec![0; x.factors.len()];
        exps[i] = 1;
        Self::monomial(x, &exps, BigRational::one())
    }

    pub fn variety(&self) -> &Variety {
        &self.variety
    }

    pub fn coeff(&self, exps: &[usize]) -> &BigRational {
        &self.coeffs[self.variety.index(exps)]
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &ChowClass) -> ChowClass {
        assert_eq!(self.variety, other.variety, "classes on different varieties");
        ChowClass {
            variety: self.variety.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &ChowClass) -> ChowClass {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, s: &BigRational) -> ChowClass {
        ChowClass {
            variety: self.variety.clone(),
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, other: &ChowClass) -> ChowClass {
        assert_eq!(self.variety, other.variety, "classes on different varieties");
        let x = &self.variety;
        let mut out = Self::zero(x);
        let nz: Vec<(Vec<usize>, &BigRational)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (x.exponents(j), c))
            .collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ei = x.exponents(i);
            'next: for (ej, b) in &nz {
                let mut e = Vec::with_capacity(ei.len());
                for ((p, q), n) in ei.iter().zip(ej).zip(&x.factors) {
                    if p + q > *n {
                        continue 'next;
                    }
                    e.push(p + q);
                }
                let k = x.index(&e);
                out.coeffs[k] += a * *b;
            }
        }
        out
    }

    /// Degree of the top-dimensional part.
    pub fn integrate(&self) -> BigRational {
        let top: Vec<usize> = self.variety.factors.clone();
        self.coeff(&top).clone()
    }

    /// Pullback along the projection `target -> self.variety` sending factor `i`
    /// of `self.variety` to factor `positions[i]` of `target`.
    pub fn pullback(&self, target: &Variety, positions: &[usize]) -> ChowClass {
        check_positions(&self.variety, target, positions);
        let mut out = Self::zero(target);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut e = vec![0; target.factors.len()];
            for (k, x) in self.variety.exponents(i).into_iter().enumerate() {
                e[positions[k]] = x;
            }
            out.coeffs[target.index(&e)] = c.clone();
        }
        out
    }

    /// Pushforward to the product of the factors listed in `keep`.
    pub fn pushforward(&self, keep: &[usize]) -> ChowClass {
        let x = &self.variety;
        let target = Variety::new(keep.iter().map(|&i| x.factors[i]).collect());
        let mut out = Self::zero(&target);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = x.exponents(i);
            let top_elsewhere = (0..e.len())
                .filter(|k| !keep.contains(k))
                .all(|k| e[k] == x.factors[k]);
            if top_elsewhere {
                let kept: Vec<usize> = keep.iter().map(|&k| e[k]).collect();
                out.coeffs[target.index(&kept)] += c;
            }
        }
        out
    }
}

fn check_positions(source: &Variety, target: &Variety, positions: &[usize]) {
    assert_eq!(positions.len(), source.factors.len(), "one position per factor");
    for (i, &p) in positions.iter().enumerate() {
        assert_eq!(target.factors[p], source.factors[i], "factor dimension mismatch");
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = vec![];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono: Vec<String> = self
                .variety
                .exponents(i)
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(k, e)| if *e == 1 { format!("h{}", k + 1) } else { format!("h{}^{e}", k + 1) })
                .collect();
            let term = if mono.is_empty() {
                rational_string(c)
            } else if c.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", rational_string(c), mono.join("*"))
            };
            terms.push(term);
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// One-variable power series truncated after `t^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Coefficients `a_0..a_order`; missing ones are zero, extra ones dropped.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> TruncatedSeries {
        coeffs.resize(order + 1, BigRational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn one(order: usize) -> TruncatedSeries {
        Self::new(vec![BigRational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs: out }
    }

    pub fn scale(&self, s: &BigRational) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn inverse(&self) -> Result<TruncatedSeries, ChowError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(ChowError::NotInvertible);
        }
        let n = self.order();
        let mut b = vec![BigRational::zero(); n + 1];
        b[0] = a0.recip();
        for k in 1..=n {
            let mut s = BigRational::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &b[k - j];
            }
            b[k] = -s * &b[0];
        }
        Ok(TruncatedSeries { coeffs: b })
    }

    /// `exp(a)` for `a_0 = 0`: `k b_k = Σ_{j=1}^k j a_j b_{k-j}`.
    pub fn exp(&self) -> Result<TruncatedSeries, ChowError> {
        if !self.coeffs[0].is_zero() {
            return Err(ChowError::NotNilpotent);
        }
        let n = self.order();
        let mut b = vec![BigRational::zero(); n + 1];
        b[0] = BigRational::one();
        for k in 1..=n {
            let mut s = BigRational::zero();
            for j in 1..=k {
                s += q(j as i64) * &self.coeffs[j] * &b[k - j];
            }
            b[k] = s / q(k as i64);
        }
        Ok(TruncatedSeries { coeffs: b })
    }

    /// `log(a)` for `a_0 = 1`: `k b_k = k a_k - Σ_{j=1}^{k-1} j b_j a_{k-j}`.
    pub fn log(&self) -> Result<TruncatedSeries, ChowError> {
        if !self.coeffs[0].is_one() {
            return Err(ChowError::NotUnitConstant);
        }
        let n = self.order();
        let mut b = vec![BigRational::zero(); n + 1];
        for k in 1..=n {
            let mut s = q(k as i64) * &self.coeffs[k];
            for j in 1..k {
                s -= q(j as i64) * &b[j] * &self.coeffs[k - j];
            }
            b[k] = s / q(k as i64);
        }
        Ok(TruncatedSeries { coeffs: b })
    }

    /// `exp(½ log a)`.
    pub fn sqrt(&self) -> Result<TruncatedSeries, ChowError> {
        self.log()?.scale(&BigRational::new(1.into(), 2.into())).exp()
    }

    pub fn pow(&self, k: i64) -> Result<TruncatedSeries, ChowError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut out = Self::one(self.order());
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// `Σ a_k x^k` in the Chow ring of `x`'s variety.
    pub fn evaluate(&self, x: &ChowClass) -> ChowClass {
        let var = x.variety();
        let mut out = ChowClass::zero(var);
        for a in self.coeffs.iter().rev() {
            out = out.mul(x).add(&ChowClass::one(var).scale(a));
        }
        out
    }
}

/// `√φ = exp(½ log φ)`.
pub fn series_sqrt(phi: &TruncatedSeries) -> Result<TruncatedSeries, ChowError> {
    phi.sqrt()
}

/// `t / (1 - e^{-t})` through `t^order`.
pub fn todd_series(order: usize) -> TruncatedSeries {
    // (1 - e^{-t}) / t = Σ (-1)^k t^k / (k+1)!
    let mut coeffs = vec![];
    let mut fact = BigInt::one();
    for k in 0..=order {
        fact *= BigInt::from(k + 1);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        coeffs.push(BigRational::new(BigInt::from(sign), fact.clone()));
    }
    TruncatedSeries::new(coeffs, order)
        .inverse()
        .expect("constant term 1")
}

/// `Td(X) = Π_i (h_i / (1 - e^{-h_i}))^{n_i+1}` (Euler sequence).
pub fn todd_class(x: &Variety) -> ChowClass {
    per_factor_series(x, |n| todd_series(n).pow(n as i64 + 1).expect("positive power"))
}

/// `√Td(X)`.
pub fn sqrt_todd(x: &Variety) -> ChowClass {
    per_factor_series(x, |n| {
        let td = todd_series(n).pow(n as i64 + 1).expect("positive power");
        series_sqrt(&td).expect("constant term 1")
    })
}

fn per_factor_series(x: &Variety, series: impl Fn(usize) -> TruncatedSeries) -> ChowClass {
    let mut out = ChowClass::one(x);
    for (i, &n) in x.factors.iter().enumerate() {
        let s = series(n);
        out = out.mul(&s.evaluate(&ChowClass::hyperplane(x, i)));
    }
    out
}

/// `binom(d, k)` for any integer `d`.
fn gen_binom(d: i64, k: usize) -> BigRational {
    let mut out = BigRational::one();
    for j in 0..k as i64 {
        out *= q(d - j);
        out /= q(j + 1);
    }
    out
}

fn to_int(r: &BigRational) -> BigInt {
    assert!(r.is_integer(), "expected an integer, got {r}");
    r.to_integer()
}

/// `χ(P^n, O(d)) = binom(d + n, n)` as a polynomial in `d`.
pub fn chi_projective(n: usize, d: i64) -> BigInt {
    let mut out = BigRational::one();
    for j in 1..=n as i64 {
        out *= q(d + j);
        out /= q(j);
    }
    to_int(&out)
}

/// Coefficients of `x^d` in the basis `x^0..x^n` of `Z[x]/(x-1)^{n+1}`.
fn reduce_power(n: usize, d: i64) -> Vec<BigInt> {
    // x^d = Σ_k binom(d,k) u^k with u = x - 1, then u^k = Σ_j binom(k,j) (-1)^{k-j} x^j
    let mut out = vec![BigRational::zero(); n + 1];
    for k in 0..=n {
        let c = gen_binom(d, k);
        if c.is_zero() {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate().take(k + 1) {
            let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
            *o += &c * gen_binom(k as i64, j) * q(sign);
        }
    }
    out.iter().map(to_int).collect()
}

/// Class in `K_0(X)`, normal form in the basis `O(d)`, `0 ≤ d_i ≤ n_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KClass {
    variety: Variety,
    coeffs: BTreeMap<Vec<i64>, BigInt>,
}

impl KClass {
    pub fn zero(x: &Variety) -> KClass {
        KClass {
            variety: x.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn structure_sheaf(x: &Variety) -> KClass {
        Self::line_bundle(x, &vec![0; x.factors.len()])
    }

    /// `[O(d_1, …, d_r)]`, reduced.
    pub fn line_bundle(x: &Variety, degrees: &[i64]) -> KClass {
        assert_eq!(degrees.len(), x.factors.len(), "one degree per factor");
        let mut terms: Vec<(Vec<i64>, BigInt)> = vec![(vec![], BigInt::one())];
        for (&n, &d) in x.factors.iter().zip(degrees) {
            let red = reduce_power(n, d);
            let mut next = vec![];
            for (key, c) in &terms {
                for (j, r) in red.iter().enumerate() {
                    if r.is_zero() {
                        continue;
                    }
                    let mut k = key.clone();
                    k.push(j as i64);
                    next.push((k, c * r));
                }
            }
            terms = next;
        }
        let mut out = Self::zero(x);
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, key: Vec<i64>, c: BigInt) {
        let e = self.coeffs.entry(key).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    /// The `i`-th element of the basis, in the order of [`Variety::monomials`].
    pub fn basis_element(x: &Variety, i: usize) -> KClass {
        let degrees: Vec<i64> = x.exponents(i).into_iter().map(|e| e as i64).collect();
        Self::line_bundle(x, &degrees)
    }

    pub fn variety(&self) -> &Variety {
        &self.variety
    }

    /// Nonzero `(degrees, coefficient)` pairs of the normal form.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &KClass) -> KClass {
        assert_eq!(self.variety, other.variety, "classes on different varieties");
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &BigInt) -> KClass {
        let mut out = Self::zero(&self.variety);
        if s.is_zero() {
            return out;
        }
        out.coeffs = self.coeffs.iter().map(|(k, c)| (k.clone(), c * s)).collect();
        out
    }

    pub fn mul(&self, other: &KClass) -> KClass {
        assert_eq!(self.variety, other.variety, "classes on different varieties");
        let mut out = Self::zero(&self.variety);
        for (a, c) in &self.coeffs {
            for (b, e) in &other.coeffs {
                let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let lb = Self::line_bundle(&self.variety, &sum);
                out = out.add(&lb.scale(&(c * e)));
            }
        }
        out
    }

    /// `ch = Σ c · exp(Σ d_i h_i)`.
    pub fn chern_character(&self) -> ChowClass {
        let x = &self.variety;
        let order = x.dim();
        let mut out = ChowClass::zero(x);
        for (degrees, c) in &self.coeffs {
            let mut term = ChowClass::one(x);
            for (i, &d) in degrees.iter().enumerate() {
                let lin = TruncatedSeries::new(vec![BigRational::zero(), q(d)], order)
                    .exp()
                    .expect("zero constant term");
                term = term.mul(&lin.evaluate(&ChowClass::hyperplane(x, i)));
            }
            out = out.add(&term.scale(&BigRational::from_integer(c.clone())));
        }
        out
    }

    /// Pushforward to the factors listed in `keep`, weighting dropped factors by `χ`.
    pub fn pushforward(&self, keep: &[usize]) -> KClass {
        let x = &self.variety;
        let target = Variety::new(keep.iter().map(|&i| x.factors[i]).collect());
        let mut out = Self::zero(&target);
        for (degrees, c) in &self.coeffs {
            let mut w = c.clone();
            for (k, &d) in degrees.iter().enumerate() {
                if !keep.contains(&k) {
                    w *= chi_projective(x.factors[k], d);
                }
            }
            if !w.is_zero() {
                out.add_term(keep.iter().map(|&k| degrees[k]).collect(), w);
            }
        }
        out
    }

    /// Pullback along a projection, as for [`ChowClass::pullback`].
    pub fn pullback(&self, target: &Variety, positions: &[usize]) -> KClass {
        check_positions(&self.variety, target, positions);
        let mut out = Self::zero(target);
        for (degrees, c) in &self.coeffs {
            let mut key = vec![0; target.factors.len()];
            for (k, &d) in degrees.iter().enumerate() {
                key[positions[k]] = d;
            }
            out.add_term(key, c.clone());
        }
        out
    }

    /// `χ(X, -)`.
    pub fn euler_characteristic(&self) -> BigInt {
        self.pushforward(&[])
            .coeffs
            .get(&vec![])
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let degs: Vec<String> = k.iter().map(i64::to_string).collect();
                format!("{c}*O({})", degs.join(","))
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Class of a correspondence.
pub trait CorrespondenceClass: Clone + PartialEq + fmt::Display {
    fn on(&self) -> &Variety;
    fn times(&self, other: &Self) -> Self;
    fn pull(&self, target: &Variety, positions: &[usize]) -> Self;
    fn push(&self, keep: &[usize]) -> Self;
}

impl CorrespondenceClass for ChowClass {
    fn on(&self) -> &Variety {
        &self.variety
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn pull(&self, target: &Variety, positions: &[usize]) -> Self {
        self.pullback(target, positions)
    }
    fn push(&self, keep: &[usize]) -> Self {
        self.pushforward(keep)
    }
}

impl CorrespondenceClass for KClass {
    fn on(&self) -> &Variety {
        &self.variety
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn pull(&self, target: &Variety, positions: &[usize]) -> Self {
        self.pullback(target, positions)
    }
    fn push(&self, keep: &[usize]) -> Self {
        self.pushforward(keep)
    }
}

/// A class on `source × target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correspondence<C> {
    pub source: Variety,
    pub target: Variety,
    pub class: C,
}

impl<C: CorrespondenceClass> Correspondence<C> {
    pub fn new(source: Variety, target: Variety, class: C) -> Result<Self, ChowError> {
        if *class.on() != source.product(&target) {
            return Err(ChowError::Mismatch(format!(
                "class on {} for a correspondence {source} -> {target}",
                class.on()
            )));
        }
        Ok(Correspondence {
            source,
            target,
            class,
        })
    }
}

fn range(start: usize, len: usize) -> Vec<usize> {
    (start..start + len).collect()
}

/// `g ∘ f = π_XZ*(π_XY* f · π_YZ* g)`.
pub fn compose_correspondences<C: CorrespondenceClass>(
    f: &Correspondence<C>,
    g: &Correspondence<C>,
) -> Result<Correspondence<C>, ChowError> {
    if f.target != g.source {
        return Err(ChowError::Mismatch(format!(
            "cannot compose {} -> {} with {} -> {}",
            f.source, f.target, g.source, g.target
        )));
    }
    let (rx, ry, rz) = (f.source.factors.len(), f.target.factors.len(), g.target.factors.len());
    let xyz = f.source.product(&f.target).product(&g.target);
    let pf = f.class.pull(&xyz, &range(0, rx + ry));
    let pg = g.class.pull(&xyz, &range(rx, ry + rz));
    let mut keep = range(0, rx);
    keep.extend(range(rx + ry, rz));
    let class = pf.times(&pg).push(&keep);
    Ok(Correspondence {
        source: f.source.clone(),
        target: g.target.clone(),
        class,
    })
}

/// `[O_Δ]` on `X × X` from the Koszul resolution
/// `Σ_i (-1)^i [O(-i) ⊠ Λ^i Ω(1)]` on each factor, with
/// `[Λ^i Ω(1)] = Σ_j (-1)^j binom(n+1, i-j) [O(j)]`.
pub fn k_diagonal(x: &Variety) -> KClass {
    let r = x.factors.len();
    let xx = x.product(x);
    let mut out = KClass::structure_sheaf(&xx);
    for (f, &n) in x.factors.iter().enumerate() {
        let pp = Variety::new(vec![n, n]);
        let mut cls = KClass::zero(&pp);
        for i in 0..=n {
            for j in 0..=i {
                let c = to_int(&gen_binom(n as i64 + 1, i - j));
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                let lb = KClass::line_bundle(&pp, &[-(i as i64), j as i64]);
                cls = cls.add(&lb.scale(&(c * sign)));
            }
        }
        out = out.mul(&cls.pullback(&xx, &[f, r + f]));
    }
    out
}

/// `[Δ] = Π_i Σ_k h_i^k h_{r+i}^{n_i-k}` on `X × X`.
pub fn chow_diagonal(x: &Variety) -> ChowClass {
    let r = x.factors.len();
    let xx = x.product(x);
    let mut out = ChowClass::one(&xx);
    for (f, &n) in x.factors.iter().enumerate() {
        let mut cls = ChowClass::zero(&xx);
        for k in 0..=n {
            let mut e = vec![0; 2 * r];
            e[f] = k;
            e[r + f] = n - k;
            cls = cls.add(&ChowClass::monomial(&xx, &e, BigRational::one()));
        }
        out = out.mul(&cls);
    }
    out
}

pub fn k_identity(x: &Variety) -> Correspondence<KClass> {
    Correspondence {
        source: x.clone(),
        target: x.clone(),
        class: k_diagonal(x),
    }
}

pub fn chow_identity(x: &Variety) -> Correspondence<ChowClass> {
    Correspondence {
        source: x.clone(),
        target: x.clone(),
        class: chow_diagonal(x),
    }
}

/// `Φ_E = ch(E) · √Td(X × Y)`.
pub fn mukai(f: &Correspondence<KClass>) -> Correspondence<ChowClass> {
    let xy = f.source.product(&f.target);
    Correspondence {
        source: f.source.clone(),
        target: f.target.clone(),
        class: f.class.chern_character().mul(&sqrt_todd(&xy)),
    }
}

/// Matrix of `v ↦ π_Y*(π_X* v · c)` on monomial bases; column `j` is the
/// image of the `j`-th monomial of the source.
pub fn action_matrix(f: &Correspondence<ChowClass>) -> Vec<Vec<BigRational>> {
    let xy = f.source.product(&f.target);
    let rx = f.source.factors.len();
    let ry = f.target.factors.len();
    f.source
        .monomials()
        .iter()
        .map(|e| {
            let v = ChowClass::monomial(&f.source, e, BigRational::one());
            let pulled = v.pullback(&xy, &range(0, rx));
            pulled.mul(&f.class).pushforward(&range(rx, ry)).coeffs
        })
        .collect()
}

/// `(Tr H^even, Tr H^odd)` of an endomorphism correspondence; all cohomology
/// of a product of projective spaces is even.
pub fn even_odd_trace(f: &Correspondence<ChowClass>) -> Result<(BigRational, BigRational), ChowError> {
    if f.source != f.target {
        return Err(ChowError::Mismatch("trace needs an endomorphism".into()));
    }
    let m = action_matrix(f);
    let tr = m
        .iter()
        .enumerate()
        .fold(BigRational::zero(), |acc, (j, col)| acc + &col[j]);
    Ok((tr, BigRational::zero()))
}

/// `ch(g ∘ f) · √Td(X × Z) = Φ_g ∘ Φ_f`.
pub fn iota_functor_check(
    name: &str,
    f: &Correspondence<KClass>,
    g: &Correspondence<KClass>,
) -> VerificationCase {
    let k_first = match compose_correspondences(f, g) {
        Ok(c) => mukai(&c),
        Err(e) => return VerificationCase::error(name, e),
    };
    let chow_first = match compose_correspondences(&mukai(f), &mukai(g)) {
        Ok(c) => c,
        Err(e) => return VerificationCase::error(name, e),
    };
    VerificationCase::compare(name, &k_first.class, &chow_first.class)
}

/// `∫ ch(E) ch(O_Δ) Td(X × X) = Tr H^even(Φ_E) - Tr H^odd(Φ_E)`.
pub fn eq12_check(name: &str, x: &Variety, e: &KClass) -> VerificationCase {
    let xx = x.product(x);
    if *e.variety() != xx {
        return VerificationCase::error(name, ChowError::Mismatch(format!("kernel on {} for {x}", e.variety())));
    }
    let lhs = e
        .chern_character()
        .mul(&k_diagonal(x).chern_character())
        .mul(&todd_class(&xx))
        .integrate();
    let corr = Correspondence {
        source: x.clone(),
        target: x.clone(),
        class: e.clone(),
    };
    match even_odd_trace(&mukai(&corr)) {
        Ok((ev, odd)) => VerificationCase::compare(name, rational_string(&lhs), rational_string(&(ev - odd))),
        Err(err) => VerificationCase::error(name, err),
    }
}

/// One summand `coef · O(degrees[0]) ⊠ O(degrees[1])`, optionally times `[O_Δ]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelTerm {
    pub coef: i64,
    pub degrees: [Vec<i64>; 2],
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub diag: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KernelBody {
    /// `"diag"`.
    Named(String),
    Terms(Vec<KernelTerm>),
}

/// `{"variety": [n, …], "kernel": "diag" | [{"coef", "degrees", "diag"?}, …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub variety: Vec<usize>,
    pub kernel: KernelBody,
}

impl KernelSpec {
    pub fn from_json(text: &str) -> Result<KernelSpec, ChowError> {
        serde_json::from_str(text).map_err(|e| ChowError::BadKernel(e.to_string()))
    }

    pub fn variety(&self) -> Variety {
        Variety::new(self.variety.clone())
    }

    /// The kernel as a class on `X × X`.
    pub fn build(&self) -> Result<KClass, ChowError> {
        let x = self.variety();
        let xx = x.product(&x);
        match &self.kernel {
            KernelBody::Named(s) if s == "diag" => Ok(k_diagonal(&x)),
            KernelBody::Named(s) => Err(ChowError::BadKernel(format!("unknown kernel {s:?}"))),
            KernelBody::Terms(terms) => {
                let mut out = KClass::zero(&xx);
                for t in terms {
                    let r = x.factors.len();
                    if t.degrees[0].len() != r || t.degrees[1].len() != r {
                        return Err(ChowError::BadKernel(format!(
                            "degrees {:?} do not match variety {x}",
                            t.degrees
                        )));
                    }
                    let mut degs = t.degrees[0].clone();
                    degs.extend(&t.degrees[1]);
                    let mut cls = KClass::line_bundle(&xx, &degs);
                    if t.diag {
                        cls = cls.mul(&k_diagonal(&x));
                    }
                    out = out.add(&cls.scale(&BigInt::from(t.coef)));
                }
                Ok(out)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt_of_one_plus_t() {
        let s = TruncatedSeries::new(vec![q(1), q(1)], 4);
        let root = series_sqrt(&s).unwrap();
        assert_eq!(root.coefficients(), &[q(1), r(1, 2), r(-1, 8), r(1, 16), r(-5, 128)]);
        assert_eq!(root.mul(&root), s);
        assert_eq!(
            series_sqrt(&TruncatedSeries::new(vec![q(2)], 3)).unwrap_err(),
            ChowError::NotUnitConstant
        );
    }

    #[test]
    fn todd_classes() {
        assert_eq!(todd_class(&Variety::point()), ChowClass::one(&Variety::point()));
        let p1 = Variety::projective(1);
        let expected = ChowClass::one(&p1).add(&ChowClass::hyperplane(&p1, 0));
        assert_eq!(todd_class(&p1), expected);
        let p2 = Variety::projective(2);
        // Td(P^2) = 1 + 3/2 h + h^2
        assert_eq!(todd_class(&p2).coefficients(), &[q(1), r(3, 2), q(1)]);
        let s = sqrt_todd(&p2);
        assert_eq!(s.mul(&s), todd_class(&p2));
    }

    #[test]
    fn chern_character_of_o1_on_p2() {
        let p2 = Variety::projective(2);
        let ch = KClass::line_bundle(&p2, &[1]).chern_character();
        assert_eq!(ch.coefficients(), &[q(1), q(1), r(1, 2)]);
    }

    #[test]
    fn integrals() {
        let p1 = Variety::projective(1);
        assert_eq!(ChowClass::hyperplane(&p1, 0).integrate(), q(1));
        let p2 = Variety::projective(2);
        assert_eq!(ChowClass::hyperplane(&p2, 0).integrate(), q(0));
        let pp = Variety::new(vec![1, 1]);
        let s = ChowClass::hyperplane(&pp, 0).add(&ChowClass::hyperplane(&pp, 1));
        assert_eq!(s.mul(&s).integrate(), q(2));
    }

    #[test]
    fn k_reduction_and_chi() {
        // on P^1: O(-1) = 2 O - O(1)
        let p1 = Variety::projective(1);
        let expected = KClass::structure_sheaf(&p1)
            .scale(&2.into())
            .add(&KClass::line_bundle(&p1, &[1]).scale(&(-1).into()));
        assert_eq!(KClass::line_bundle(&p1, &[-1]), expected);
        for d in -4..5 {
            assert_eq!(KClass::line_bundle(&p1, &[d]).euler_characteristic(), BigInt::from(d + 1));
            let p2 = Variety::projective(2);
            let chi = (d + 1) * (d + 2) / 2;
            assert_eq!(KClass::line_bundle(&p2, &[d]).euler_characteristic(), BigInt::from(chi));
        }
    }

    #[test]
    fn pushforward_examples() {
        let pp = Variety::new(vec![1, 1]);
        for a in -2..3 {
            let push = KClass::line_bundle(&pp, &[a, 0]).pushforward(&[0]);
            assert_eq!(push, KClass::line_bundle(&Variety::projective(1), &[a]));
            let push = KClass::line_bundle(&pp, &[a, 1]).pushforward(&[0]);
            assert_eq!(push, KClass::line_bundle(&Variety::projective(1), &[a]).scale(&2.into()));
        }
    }

    #[test]
    fn diagonals_are_identities() {
        for x in [Variety::point(), Variety::projective(1), Variety::projective(2), Variety::new(vec![1, 1])] {
            let xx = x.product(&x);
            for i in 0..xx.basis_len() {
                let f = Correspondence::new(x.clone(), x.clone(), KClass::basis_element(&xx, i)).unwrap();
                assert_eq!(compose_correspondences(&f, &k_identity(&x)).unwrap(), f);
                assert_eq!(compose_correspondences(&k_identity(&x), &f).unwrap(), f);
                let c = Correspondence::new(x.clone(), x.clone(), ChowClass::monomial(&xx, &xx.exponents(i), q(1))).unwrap();
                assert_eq!(compose_correspondences(&c, &chow_identity(&x)).unwrap(), c);
                assert_eq!(compose_correspondences(&chow_identity(&x), &c).unwrap(), c);
            }
        }
    }

    #[test]
    fn p1_diagonal_class() {
        // [O_Δ] = [O ⊠ O] - [O(-1) ⊠ O(-1)]
        let p1 = Variety::projective(1);
        let xx = p1.product(&p1);
        let expected = KClass::structure_sheaf(&xx).add(&KClass::line_bundle(&xx, &[-1, -1]).scale(&(-1).into()));
        assert_eq!(k_diagonal(&p1), expected);
    }

    #[test]
    fn traces_of_identity() {
        for (x, n) in [(Variety::projective(2), 3), (Variety::new(vec![1, 1]), 4)] {
            let (ev, odd) = even_odd_trace(&chow_identity(&x)).unwrap();
            assert_eq!((ev, odd), (q(n), q(0)));
        }
        let p1 = Variety::projective(1);
        let zero = Correspondence::new(p1.clone(), p1.clone(), ChowClass::zero(&p1.product(&p1))).unwrap();
        assert_eq!(even_odd_trace(&zero).unwrap(), (q(0), q(0)));
    }

    #[test]
    fn eq12_on_p1() {
        let p1 = Variety::projective(1);
        let case = eq12_check("diag", &p1, &k_diagonal(&p1));
        assert!(case.passed(), "{case:?}");
        assert_eq!(case.lhs.as_deref(), Some("2"));
        let xx = p1.product(&p1);
        let case = eq12_check("o(1,2)", &p1, &KClass::line_bundle(&xx, &[1, 2]));
        assert!(case.passed(), "{case:?}");
        assert_eq!(case.lhs.as_deref(), Some("4"));
    }

    #[test]
    fn iota_on_point_and_p1() {
        let pt = Variety::point();
        let p1 = Variety::projective(1);
        let f = Correspondence::new(pt.clone(), p1.clone(), KClass::structure_sheaf(&p1)).unwrap();
        let g = Correspondence::new(p1.clone(), pt.clone(), KClass::line_bundle(&p1, &[-1])).unwrap();
        let case = iota_functor_check("pt-P1-pt", &f, &g);
        assert!(case.passed(), "{case:?}");
        // χ(P^1, O(-1)) = 0
        assert_eq!(case.lhs.as_deref(), Some("0"));
    }

    #[test]
    fn kernel_json() {
        let spec = KernelSpec::from_json(r#"{"variety": [1], "kernel": "diag"}"#).unwrap();
        assert_eq!(spec.build().unwrap(), k_diagonal(&Variety::projective(1)));
        let spec = KernelSpec::from_json(
            r#"{"variety": [1], "kernel": [{"coef": 1, "degrees": [[1], [0]], "diag": true}]}"#,
        )
        .unwrap();
        assert!(!spec.build().unwrap().is_zero());
        assert!(KernelSpec::from_json(r#"{"variety": [1], "kernel": "nope"}"#).unwrap().build().is_err());
    }
}

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::AlgError;

/// The base field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Prime field of characteristic `p`. Moduli are kept below 2^32 so products fit in u64.
    pub fn prime(p: u64) -> Result<Field, AlgError> {
        if !(2..(1 << 32)).contains(&p) || !is_prime(p) {
            return Err(AlgError::BadModulus(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> FieldElement {
        match self {
            Field::Rationals => FieldElement::Rational(BigRational::zero()),
            Field::Prime(p) => FieldElement::Modular { value: 0, p },
        }
    }

    pub fn one(self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> FieldElement {
        match self {
            Field::Rationals => FieldElement::Rational(BigRational::from_integer(n.into())),
            Field::Prime(p) => FieldElement::Modular {
                value: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> FieldElement {
        match self {
            Field::Rationals => FieldElement::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = ((n % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                FieldElement::Modular {
                    value: r.to_u64().unwrap_or(0),
                    p,
                }
            }
        }
    }

    /// Embeds a rational number. Fails in characteristic p when p divides the denominator.
    pub fn from_rational(self, q: &BigRational) -> Result<FieldElement, AlgError> {
        match self {
            Field::Rationals => Ok(FieldElement::Rational(q.clone())),
            Field::Prime(_) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                let inv = den.inv().ok_or_else(|| {
                    AlgError::Parse(format!("{q} has a denominator divisible by the characteristic"))
                })?;
                Ok(&num * &inv)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = AlgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rationals);
        }
        if let Some(p) = s.strip_prefix("Fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| AlgError::Parse(format!("bad field tag {s:?}")))?;
            return Field::prime(p);
        }
        Err(AlgError::Parse(format!("bad field tag {s:?}; expected Q or Fp:<p>")))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact scalar. Rationals are kept in lowest terms with positive denominator
/// (guaranteed by `BigRational`); residues are kept in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Modular { value: u64, p: u64 },
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rationals,
            FieldElement::Modular { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Modular { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElement::Rational(q) => FieldElement::Rational(q.recip()),
            FieldElement::Modular { value, p } => FieldElement::Modular {
                value: pow_mod(*value, p - 2, *p),
                p: *p,
            },
        })
    }

    /// The integer this element represents, if it is a rational integer.
    /// Residues are reported by their representative in `0..p`.
    pub fn to_integer(&self) -> Option<BigInt> {
        match self {
            FieldElement::Rational(q) if q.is_integer() => Some(q.to_integer()),
            FieldElement::Rational(_) => None,
            FieldElement::Modular { value, .. } => Some(BigInt::from(*value)),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            FieldElement::Modular { .. } => None,
        }
    }

    /// Whether this element equals the image of the integer `n` in its field.
    pub fn equals_integer(&self, n: &BigInt) -> bool {
        *self == self.field().from_bigint(n)
    }

    fn check_same(&self, other: &FieldElement) {
        assert_eq!(
            self.field(),
            other.field(),
            "arithmetic between elements of different fields"
        );
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => write!(f, "{q}"),
            FieldElement::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Modular { value: a, p }, FieldElement::Modular { value: b, .. }) => {
                FieldElement::Modular {
                    value: (a + b) % p,
                    p: *p,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a - b),
            (FieldElement::Modular { value: a, p }, FieldElement::Modular { value: b, .. }) => {
                FieldElement::Modular {
                    value: (a + p - b) % p,
                    p: *p,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Modular { value: a, p }, FieldElement::Modular { value: b, .. }) => {
                FieldElement::Modular {
                    value: a * b % p,
                    p: *p,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Modular { value, p } => FieldElement::Modular {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}

impl Add for FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: FieldElement) -> FieldElement {
        &self + &rhs
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: FieldElement) -> FieldElement {
        &self - &rhs
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: FieldElement) -> FieldElement {
        &self * &rhs
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => *a += b,
            (FieldElement::Modular { value: a, p }, FieldElement::Modular { value: b, p: q }) => {
                assert_eq!(p, q, "arithmetic between elements of different fields");
                *a = (*a + b) % *p;
            }
            _ => panic!("arithmetic between elements of different fields"),
        }
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => *a -= b,
            (FieldElement::Modular { value: a, p }, FieldElement::Modular { value: b, p: q }) => {
                assert_eq!(p, q, "arithmetic between elements of different fields");
                *a = (*a + *p - b) % *p;
            }
            _ => panic!("arithmetic between elements of different fields"),
        }
    }
}

/// Formats a rational as a JSON-friendly string (`"3"`, `"-1/2"`).
pub fn rational_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else if q.is_negative() {
        format!("-{}/{}", q.numer().abs(), q.denom())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"3"`, `"-1/2"` or a plain integer into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational, AlgError> {
    let s = s.trim();
    let bad = || AlgError::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rationals;
        let a = q.from_rational(&BigRational::new(2.into(), (-4).into())).unwrap();
        assert_eq!(a.to_string(), "-1/2");
        let b = &a * &q.from_i64(-2);
        assert!(b.is_one());
    }

    #[test]
    fn modular_inverse() {
        let f = Field::prime(7).unwrap();
        for n in 1..7 {
            let x = f.from_i64(n);
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert!(f.zero().inv().is_none());
        assert_eq!(f.from_i64(-1).to_string(), "6");
    }

    #[test]
    fn field_tags_parse() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("Fp:5".parse::<Field>().unwrap(), Field::Prime(5));
        assert!("Fp:6".parse::<Field>().is_err());
        assert!("R".parse::<Field>().is_err());
    }

    #[test]
    fn rational_in_prime_field() {
        let f = Field::prime(5).unwrap();
        let half = f.from_rational(&BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(half, f.from_i64(3));
        assert!(f
            .from_rational(&BigRational::new(1.into(), 5.into()))
            .is_err());
    }

    #[test]
    fn rational_strings_round_trip() {
        for s in ["0", "3", "-1/2", "7/3"] {
            assert_eq!(rational_string(&parse_rational(s).unwrap()), s);
        }
    }
}

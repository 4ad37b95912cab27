//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Scalar`], an exact field. Two
//! families are provided: arbitrary precision rationals ([`Rational`]) and
//! prime fields ([`Fp`]) whose modulus is a const parameter.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Arbitrary precision rationals, always kept in lowest terms.
pub type Rational = BigRational;

/// Which field an analysis runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Rational,
    Prime { p: u64 },
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Prime { p })
        } else {
            Err(Error::InvalidField(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime { p } => *p,
        }
    }

    /// Whether the field has finitely many elements.
    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime { .. })
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "GF({p})"),
        }
    }
}

pub const fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn field_spec() -> FieldSpec;

    fn from_i64(v: i64) -> Self;

    /// Parses the canonical string form (`"a/b"`, `"a"`, or a residue).
    fn parse(s: &str) -> Result<Self>;

    fn inverse(&self) -> Option<Self>;

    /// All elements, for finite fields.
    fn elements() -> Option<Vec<Self>> {
        None
    }

    /// A random element. Over `Q` this is a small integer.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Rank of a matrix. The default row-reduces over the field.
    fn rank(m: &Matrix<Self>) -> usize {
        m.rref().pivots.len()
    }

    fn characteristic() -> u64 {
        Self::field_spec().characteristic()
    }
}

impl Scalar for Rational {
    fn field_spec() -> FieldSpec {
        FieldSpec::Rational
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        match t.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
        }
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_i64(rng.gen_range(-3..=3))
    }

    fn rank(m: &Matrix<Self>) -> usize {
        bareiss_rank(m)
    }
}

/// Fraction-free rank: clear denominators row by row, then run Bareiss
/// elimination over the integers.
fn bareiss_rank(m: &Matrix<Rational>) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Residues modulo the prime `P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    const MODULUS_IS_PRIME: () = assert!(is_prime(P), "Fp modulus must be prime");

    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let () = Self::MODULUS_IS_PRIME;
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::new(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in prime field")
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Self::new(1)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn field_spec() -> FieldSpec {
        FieldSpec::Prime { p: P }
    }

    fn from_i64(v: i64) -> Self {
        Self::new(v.rem_euclid(P as i64) as u64)
    }

    fn parse(s: &str) -> Result<Self> {
        // Rationals are accepted and mapped into the field when the
        // denominator is invertible.
        let q = Rational::parse(s)?;
        let reduce = |x: &BigInt| -> Self {
            let r = x.mod_floor(&BigInt::from(P));
            Self::new(r.to_u64().unwrap_or(0))
        };
        let den = reduce(q.denom());
        let inv = den
            .inverse()
            .ok_or_else(|| Error::Parse(format!("{s:?} has a denominator divisible by {P}")))?;
        Ok(reduce(q.numer()) * inv)
    }

    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn elements() -> Option<Vec<Self>> {
        Some((0..P).map(Self::new).collect())
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::new(rng.gen_range(0..P))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn rational_parse_and_print_lowest_terms() {
        let q = Rational::parse("4/-6").unwrap();
        assert_eq!(q.to_string(), "-2/3");
        assert_eq!(Rational::parse("5").unwrap().to_string(), "5");
        assert!(Rational::parse("1/0").is_err());
        assert!(Rational::parse("x").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let a = F7::from_i64(-1);
        assert_eq!(a.value(), 6);
        assert_eq!((a * a).value(), 1);
        assert_eq!(F7::from_i64(3).inverse().unwrap().value(), 5);
        assert_eq!(F7::parse("1/2").unwrap().value(), 4);
        assert!(Fp::<7>::parse("1/7").is_err());
        assert_eq!(F7::elements().unwrap().len(), 7);
    }

    #[test]
    fn bareiss_matches_field_rank() {
        let m = Matrix::from_rows(vec![
            vec![Rational::from_i64(1), Rational::from_i64(2), Rational::from_i64(3)],
            vec![
                Rational::parse("1/2").unwrap(),
                Rational::from_i64(1),
                Rational::parse("3/2").unwrap(),
            ],
            vec![Rational::from_i64(0), Rational::from_i64(1), Rational::from_i64(1)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rref().pivots.len(), 2);
    }

    #[test]
    fn field_spec_rejects_composites() {
        assert!(FieldSpec::prime(9).is_err());
        assert_eq!(FieldSpec::prime(5).unwrap().characteristic(), 5);
        assert_eq!(FieldSpec::Rational.to_string(), "Q");
    }
}

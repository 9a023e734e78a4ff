//! Exact scalars: rationals in lowest terms or residues modulo a prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// The Mersenne prime 2^31 - 1, the default sampling field.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Coefficient field of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Smallest field containing both. Rationals embed into any prime field.
    pub fn join(self, other: Field) -> Field {
        match (self, other) {
            (Field::Rational, f) | (f, Field::Rational) => f,
            (Field::Prime(p), Field::Prime(q)) => {
                assert_eq!(p, q, "cannot mix coefficients modulo {p} and {q}");
                Field::Prime(p)
            }
        }
    }

    pub fn prime(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
        }
    }

    pub fn zero(self) -> Coefficient {
        Coefficient::from_i64(0).into_field(self)
    }

    pub fn one(self) -> Coefficient {
        Coefficient::from_i64(1).into_field(self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact scalar.
///
/// Rationals are always in lowest terms (guaranteed by `BigRational`); residues
/// lie in `[0, p)`. Arithmetic between a rational and a residue reduces the
/// rational modulo `p` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Rational(BigRational),
    Modular { value: u64, prime: u64 },
}

impl Coefficient {
    pub fn from_i64(n: i64) -> Self {
        Coefficient::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Coefficient::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn modular(value: u64, prime: u64) -> Self {
        Coefficient::Modular { value: value % prime, prime }
    }

    pub fn field(&self) -> Field {
        match self {
            Coefficient::Rational(_) => Field::Rational,
            Coefficient::Modular { prime, .. } => Field::Prime(*prime),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_zero(),
            Coefficient::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_one(),
            Coefficient::Modular { value, .. } => *value == 1,
        }
    }

    /// Maps the scalar into `field`. Panics if a rational has a denominator
    /// divisible by the target prime.
    pub fn into_field(self, field: Field) -> Coefficient {
        match (self, field) {
            (c, Field::Rational) => {
                if let Coefficient::Modular { .. } = c {
                    panic!("cannot lift a modular residue to Q");
                }
                c
            }
            (Coefficient::Rational(r), Field::Prime(p)) => {
                let num = mod_bigint(r.numer(), p);
                let den = mod_bigint(r.denom(), p);
                assert!(den != 0, "denominator {} vanishes modulo {p}", r.denom());
                Coefficient::Modular { value: mul_mod(num, inv_mod(den, p), p), prime: p }
            }
            (Coefficient::Modular { value, prime }, Field::Prime(p)) => {
                assert_eq!(prime, p, "cannot mix coefficients modulo {prime} and {p}");
                Coefficient::Modular { value, prime }
            }
        }
    }

    fn joined(a: &Coefficient, b: &Coefficient) -> (Coefficient, Coefficient) {
        let f = a.field().join(b.field());
        (a.clone().into_field(f), b.clone().into_field(f))
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Coefficient {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Coefficient::Rational(r) => Coefficient::Rational(r.recip()),
            Coefficient::Modular { value, prime } => {
                Coefficient::Modular { value: inv_mod(*value, *prime), prime: *prime }
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Coefficient {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coefficient::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self {
            Coefficient::Modular { value, .. } => Some(*value),
            _ => None,
        }
    }

    /// Small integer value, if this is an integral rational that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Coefficient::Rational(r) if r.is_integer() => r.numer().to_i64(),
            _ => None,
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Coefficient::Rational(r) if r.is_negative())
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Coefficient::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        match Coefficient::joined(self, rhs) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a + b),
            (Coefficient::Modular { value: a, prime }, Coefficient::Modular { value: b, .. }) => {
                Coefficient::Modular { value: (a + b) % prime, prime }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        self + &(-rhs)
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        match Coefficient::joined(self, rhs) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a * b),
            (Coefficient::Modular { value: a, prime }, Coefficient::Modular { value: b, .. }) => {
                Coefficient::Modular { value: mul_mod(a, b, prime), prime }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        match self {
            Coefficient::Rational(r) => Coefficient::Rational(-r),
            Coefficient::Modular { value, prime } => {
                Coefficient::Modular { value: (prime - value) % prime, prime: *prime }
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Coefficient {
            type Output = Coefficient;
            fn $m(self, rhs: Coefficient) -> Coefficient {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let e = (a as i128 % p as i128).extended_gcd(&(p as i128));
    assert_eq!(e.gcd, 1, "{a} is not invertible modulo {p}");
    e.x.rem_euclid(p as i128) as u64
}

fn mod_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_reduce() {
        let c = Coefficient::from_ratio(6, -4);
        assert_eq!(c.to_string(), "-3/2");
    }

    #[test]
    fn mixed_arithmetic_promotes_to_prime_field() {
        let a = Coefficient::from_ratio(1, 2);
        let b = Coefficient::modular(3, 7);
        let s = &a + &b;
        // 1/2 = 4 mod 7
        assert_eq!(s, Coefficient::modular(0, 7));
        assert_eq!((&b * &b.inv()).residue(), Some(1));
    }

    #[test]
    fn modular_power() {
        let c = Coefficient::modular(3, DEFAULT_PRIME);
        assert!(c.pow(DEFAULT_PRIME - 1).is_one());
    }
}

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Coefficient field for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum FieldSpec {
    /// `GF(2)`.
    #[default]
    Gf2,
    /// `GF(p)` for an odd prime `p < 2^32`.
    Prime(u64),
    Rational,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(if p == 2 {
            FieldSpec::Gf2
        } else {
            FieldSpec::Prime(p)
        })
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Gf2 => write!(f, "gf2"),
            FieldSpec::Prime(p) => write!(f, "gf:{p}"),
            FieldSpec::Rational => write!(f, "rational"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gf2" => Ok(FieldSpec::Gf2),
            "rational" | "q" => Ok(FieldSpec::Rational),
            _ => {
                let p = s
                    .strip_prefix("gf:")
                    .and_then(|t| t.parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown field `{s}`")))?;
                FieldSpec::prime(p)
            }
        }
    }
}

/// Exact arithmetic needed by column reduction.
pub(crate) trait FieldOps {
    type Elem: Clone;

    fn sign(&self, s: i8) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    /// `x - f * y`
    fn sub_mul(&self, x: &Self::Elem, f: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn div(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
}

pub(crate) struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub(crate) fn new(p: u64) -> Self {
        PrimeField { p }
    }

    fn inv(&self, x: u64) -> u64 {
        // Fermat: x^(p-2)
        let (mut base, mut exp, mut acc) = (x % self.p, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl FieldOps for PrimeField {
    type Elem = u64;

    fn sign(&self, s: i8) -> u64 {
        if s >= 0 {
            s as u64 % self.p
        } else {
            self.p - (s.unsigned_abs() as u64 % self.p)
        }
    }

    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }

    fn sub_mul(&self, x: &u64, f: &u64, y: &u64) -> u64 {
        (x + self.p - f * y % self.p) % self.p
    }

    fn div(&self, x: &u64, y: &u64) -> u64 {
        x * self.inv(*y) % self.p
    }
}

pub(crate) struct Rationals;

impl FieldOps for Rationals {
    type Elem = BigRational;

    fn sign(&self, s: i8) -> BigRational {
        BigRational::from_integer(BigInt::from(s))
    }

    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }

    fn sub_mul(&self, x: &BigRational, f: &BigRational, y: &BigRational) -> BigRational {
        x - f * y
    }

    fn div(&self, x: &BigRational, y: &BigRational) -> BigRational {
        debug_assert!(!y.is_zero());
        x / y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fields() {
        assert_eq!("gf2".parse::<FieldSpec>().unwrap(), FieldSpec::Gf2);
        assert_eq!("gf:2".parse::<FieldSpec>().unwrap(), FieldSpec::Gf2);
        assert_eq!("gf:3".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert_eq!(
            "rational".parse::<FieldSpec>().unwrap(),
            FieldSpec::Rational
        );
        assert_eq!("gf:9".parse::<FieldSpec>(), Err(Error::NotPrime(9)));
        assert!("gf:x".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(7).to_string(), "gf:7");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7);
        assert_eq!(f.sign(-1), 6);
        for x in 1..7 {
            assert_eq!(f.div(&x, &x), 1);
        }
        assert_eq!(f.sub_mul(&3, &2, &5), (3 + 7 * 7 - 10) % 7);
    }
}

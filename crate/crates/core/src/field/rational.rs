use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::{Embedding, Field, FieldSpec};
use crate::error::Result;

/// The field of rational numbers with arbitrary-precision fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::rationals()
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn size(&self) -> Option<u64> {
        None
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn random_generic<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-(1i64 << 15)..=(1i64 << 15)))
    }

    fn as_small_integer(&self, a: &BigRational) -> Option<BigInt> {
        a.is_integer().then(|| a.to_integer())
    }

    fn display(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.to_integer().to_string()
        } else if a.is_negative() {
            format!("(-{}/{})", a.numer().abs(), a.denom())
        } else {
            format!("({}/{})", a.numer(), a.denom())
        }
    }

    fn sampling_extension(&self, _min_size: u64, _seed: u64) -> Result<(Self, Embedding<Self>)> {
        Ok((Rationals, Embedding::identity()))
    }
}

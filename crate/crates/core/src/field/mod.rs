//! Exact coefficient fields: the rationals and finite fields GF(p^e).

mod galois;
pub(crate) mod gfpoly;
mod rational;

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub use galois::{Gf, ZECH_LIMIT};
pub use rational::Rationals;

/// Smallest field size used when drawing "generic" coefficients.
pub const GENERIC_FIELD_SIZE: u64 = 1 << 16;

/// A field with exact arithmetic. Elements are plain values; all operations
/// go through the field object, which may carry lookup tables.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` for infinite fields.
    fn size(&self) -> Option<u64>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
    fn pow(&self, a: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    /// A coefficient for a generic linear combination. Finite fields draw
    /// uniformly; the rationals draw integers in `[-2^15, 2^15]`.
    fn random_generic<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// `Some(k)` when the element is the image of the integer `k`, with `k`
    /// the representative of smallest absolute value.
    fn as_small_integer(&self, a: &Self::Elem) -> Option<BigInt>;
    /// Human-readable form, parenthesized when it is not a plain integer.
    fn display(&self, a: &Self::Elem) -> String;

    /// Named field constants accepted by the polynomial parser.
    fn named_constant(&self, _name: &str) -> Option<Self::Elem> {
        None
    }

    /// A field containing `self` with at least `min_size` elements (or
    /// `self` when it is already large enough or infinite), together with
    /// the inclusion map.
    fn sampling_extension(&self, min_size: u64, seed: u64) -> Result<(Self, Embedding<Self>)>;
}

/// A field homomorphism between two instances of the same field type.
#[derive(Clone)]
pub struct Embedding<F: Field>(Arc<dyn Fn(&F::Elem) -> F::Elem + Send + Sync>);

impl<F: Field> Embedding<F> {
    pub fn new(map: impl Fn(&F::Elem) -> F::Elem + Send + Sync + 'static) -> Self {
        Embedding(Arc::new(map))
    }

    pub fn identity() -> Self {
        Embedding::new(|a: &F::Elem| a.clone())
    }

    pub fn apply(&self, a: &F::Elem) -> F::Elem {
        (self.0)(a)
    }
}

impl<F: Field> fmt::Debug for Embedding<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Embedding")
    }
}

/// Description of a coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FieldSpec {
    /// 0 or a prime.
    pub characteristic: u64,
    /// Degree over the prime field; 1 for prime fields and the rationals.
    pub extension_degree: u32,
    /// Monic irreducible defining polynomial, little-endian, when `e > 1`.
    pub modulus: Option<Vec<u64>>,
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0, extension_degree: 1, modulus: None }
    }

    pub fn prime(p: u64) -> Result<Self> {
        field_make(p, 1, 0)
    }

    pub fn size(&self) -> Option<u128> {
        if self.characteristic == 0 {
            None
        } else {
            Some((self.characteristic as u128).pow(self.extension_degree))
        }
    }

    /// Checks the characteristic and, when present, the modulus.
    pub fn validate(&self) -> Result<()> {
        let p = self.characteristic;
        if p != 0 && !gfpoly::is_prime(p) {
            return Err(Error::InvalidField(format!("characteristic {p} is not prime")));
        }
        if self.extension_degree == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        if p == 0 && self.extension_degree != 1 {
            return Err(Error::InvalidField("the rationals admit no finite extension here".into()));
        }
        match &self.modulus {
            None if self.extension_degree > 1 => {
                Err(Error::InvalidField("extension field without modulus".into()))
            }
            None => Ok(()),
            Some(m) => {
                if self.extension_degree == 1 {
                    return Err(Error::InvalidField("prime field carries no modulus".into()));
                }
                if m.len() != self.extension_degree as usize + 1 || m.last() != Some(&1) {
                    return Err(Error::InvalidField("modulus must be monic of degree e".into()));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidField("modulus coefficients must lie in [0, p)".into()));
                }
                if !gfpoly::is_irreducible(m, p) {
                    return Err(Error::InvalidField("modulus is reducible".into()));
                }
                Ok(())
            }
        }
    }

    /// Parses `0`, `p` or `p:e` (the `--field` syntax).
    pub fn parse(text: &str, seed: u64) -> Result<Self> {
        let text = text.trim();
        let (p, e) = match text.split_once(':') {
            Some((p, e)) => (p.trim(), e.trim()),
            None => (text, "1"),
        };
        let p: u64 = p
            .parse()
            .map_err(|_| Error::InvalidField(format!("bad characteristic `{p}`")))?;
        let e: u32 = e
            .parse()
            .map_err(|_| Error::InvalidField(format!("bad extension degree `{e}`")))?;
        field_make(p, e, seed)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.characteristic, self.extension_degree) {
            (0, _) => write!(f, "QQ"),
            (p, 1) => write!(f, "GF({p})"),
            (p, e) => write!(f, "GF({p}^{e})"),
        }
    }
}

/// Builds a field description. For `e > 1` the modulus is drawn by a seeded
/// random search over monic degree-`e` polynomials.
pub fn field_make(characteristic: u64, extension_degree: u32, seed: u64) -> Result<FieldSpec> {
    let spec = FieldSpec { characteristic, extension_degree, modulus: None };
    if characteristic == 0 || extension_degree <= 1 {
        spec.validate()?;
        return Ok(spec);
    }
    if !gfpoly::is_prime(characteristic) {
        return Err(Error::InvalidField(format!("characteristic {characteristic} is not prime")));
    }
    let modulus = galois::search_modulus(characteristic, extension_degree, seed)?;
    Ok(FieldSpec { modulus: Some(modulus), ..spec })
}

/// A runtime-selected field, for callers that only know the field at runtime.
#[derive(Clone, Debug)]
pub enum AnyField {
    Rational(Rationals),
    Finite(Gf),
}

impl AnyField {
    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        spec.validate()?;
        if spec.characteristic == 0 {
            Ok(AnyField::Rational(Rationals))
        } else {
            Ok(AnyField::Finite(Gf::from_spec(spec)?))
        }
    }
}

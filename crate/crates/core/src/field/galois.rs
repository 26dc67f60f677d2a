//! Finite fields GF(p^e).
//!
//! Prime fields use plain modular arithmetic. Extension fields are stored as
//! GF(p)[t]/(m) but computed through Zech logarithm tables built once
//! per field: an element is `0` for zero and `k + 1` for `g^k`, `g` a
//! primitive element. Dense residue vectors remain the exchange format.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gfpoly::{self, DensePoly};
use super::{Embedding, Field, FieldSpec};
use crate::error::{Error, Result};

/// Largest extension field for which lookup tables are built.
pub const ZECH_LIMIT: u64 = 1 << 22;

const NONE: u32 = u32::MAX;

#[derive(Clone)]
pub struct Gf {
    inner: Arc<GfInner>,
}

struct GfInner {
    p: u64,
    e: u32,
    q: u64,
    modulus: Option<Vec<u64>>,
    tables: Option<Tables>,
}

struct Tables {
    /// `exp[k]` = base-p encoding of the residue vector of `g^k`.
    exp: Vec<u32>,
    /// Inverse of `exp`; `log[0]` is unused.
    log: Vec<u32>,
    /// `zech[k]` = log of `1 + g^k`, or `NONE` when that sum is zero.
    zech: Vec<u32>,
    order: u32,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec())
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.e == other.inner.e
                && self.inner.modulus == other.inner.modulus)
    }
}

pub(super) fn search_modulus(p: u64, e: u32, seed: u64) -> Result<Vec<u64>> {
    let q = (p as u128).checked_pow(e).ok_or_else(|| Error::InvalidField("field too large".into()))?;
    let want_primitive = q <= ZECH_LIMIT as u128;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d6f_6475_6c75_73);
    for _ in 0..200_000 {
        let mut m: DensePoly = (0..e).map(|_| rng.gen_range(0..p)).collect();
        m.push(1);
        if m[0] == 0 || !gfpoly::is_irreducible(&m, p) {
            continue;
        }
        if want_primitive && !gfpoly::t_is_primitive(&m, p) {
            continue;
        }
        return Ok(m);
    }
    Err(Error::InvalidField(format!("no modulus found for GF({p}^{e})")))
}

impl Gf {
    /// GF(p^e) with a modulus drawn from `seed`.
    pub fn new(p: u64, e: u32, seed: u64) -> Result<Self> {
        Gf::from_spec(&super::field_make(p, e, seed)?)
    }

    pub fn prime(p: u64) -> Result<Self> {
        Gf::new(p, 1, 0)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self> {
        spec.validate()?;
        let p = spec.characteristic;
        if p == 0 {
            return Err(Error::InvalidField("the rationals are not a finite field".into()));
        }
        if p > u32::MAX as u64 {
            return Err(Error::InvalidField(format!("characteristic {p} exceeds 32 bits")));
        }
        let e = spec.extension_degree;
        if e == 1 {
            return Ok(Gf { inner: Arc::new(GfInner { p, e, q: p, modulus: None, tables: None }) });
        }
        let q = (p as u128).pow(e);
        if q > ZECH_LIMIT as u128 {
            return Err(Error::InvalidField(format!(
                "GF({p}^{e}) exceeds the table limit of {ZECH_LIMIT} elements"
            )));
        }
        let modulus = spec.modulus.clone().expect("validated");
        let tables = build_tables(p, &modulus, q as u64);
        Ok(Gf {
            inner: Arc::new(GfInner { p, e, q: q as u64, modulus: Some(modulus), tables: Some(tables) }),
        })
    }

    pub fn order(&self) -> u64 {
        self.inner.q
    }

    /// All elements, zero first.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.inner.q as u32
    }

    pub fn extension_degree(&self) -> u32 {
        self.inner.e
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.inner.modulus.as_deref()
    }

    /// The element with residue vector `r` in the basis `1, t, ..., t^(e-1)`.
    pub fn from_residues(&self, r: &[u64]) -> u32 {
        let p = self.inner.p;
        match &self.inner.tables {
            None => (r.first().copied().unwrap_or(0) % p) as u32,
            Some(t) => {
                let mut enc: u64 = 0;
                for &c in r.iter().take(self.inner.e as usize).rev() {
                    enc = enc * p + c % p;
                }
                if enc == 0 {
                    0
                } else {
                    t.log[enc as usize] + 1
                }
            }
        }
    }

    /// Residue vector of `a`, always of length `e`.
    pub fn residues(&self, a: u32) -> Vec<u64> {
        let p = self.inner.p;
        let e = self.inner.e as usize;
        match &self.inner.tables {
            None => vec![a as u64],
            Some(t) => {
                let mut enc = if a == 0 { 0u64 } else { t.exp[(a - 1) as usize] as u64 };
                let mut out = vec![0u64; e];
                for slot in out.iter_mut() {
                    *slot = enc % p;
                    enc /= p;
                }
                out
            }
        }
    }

    /// The class of `t` (the residue of a primitive element for prime fields).
    pub fn generator(&self) -> u32 {
        match &self.inner.tables {
            Some(_) => self.from_residues(&[0, 1]),
            None => {
                let p = self.inner.p;
                let order = (p - 1) as u128;
                let factors = gfpoly::prime_factors(order);
                (1..p)
                    .find(|&g| {
                        p == 2
                            || factors
                                .iter()
                                .all(|&r| gfpoly::pow_mod(g, (order / r) as u64, p) != 1)
                    })
                    .expect("prime fields are cyclic") as u32
            }
        }
    }

    /// A fixed generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        match &self.inner.tables {
            // g^k is stored as k + 1
            Some(_) => 2,
            None => self.generator(),
        }
    }

    /// Inverse computed on residue vectors by the extended Euclidean
    /// algorithm, independent of the lookup tables.
    pub fn inverse_by_euclid(&self, a: u32) -> Option<u32> {
        let p = self.inner.p;
        match &self.inner.modulus {
            None => (a != 0).then(|| gfpoly::inv_mod(a as u64, p) as u32),
            Some(m) => {
                let mut r = self.residues(a);
                gfpoly::trim(&mut r);
                gfpoly::inv_poly_mod(&r, m, p).map(|v| self.from_residues(&v))
            }
        }
    }

    /// Generator of the multiplicative group of the subfield of size `p^k`.
    pub fn subfield_generator(&self, k: u32) -> Option<u32> {
        if k == 0 || self.inner.e % k != 0 {
            return None;
        }
        let sub = self.inner.p.pow(k) - 1;
        let g = self.primitive_element();
        Some(self.pow(&g, (self.inner.q - 1) / sub))
    }
}

fn encode(r: &[u64], p: u64) -> u32 {
    r.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
}

fn build_tables(p: u64, m: &[u64], q: u64) -> Tables {
    let e = m.len() - 1;
    let order = q - 1;
    let mut exp = vec![0u32; order as usize];
    let mut log = vec![NONE; q as usize];
    let shift_ok = gfpoly::t_is_primitive(&m.to_vec(), p);
    let generator: DensePoly = if shift_ok {
        vec![0, 1]
    } else {
        let m: DensePoly = m.to_vec();
        (2..q)
            .map(|enc| {
                let mut v: DensePoly = (0..e).map(|i| enc / p.pow(i as u32) % p).collect();
                gfpoly::trim(&mut v);
                v
            })
            .find(|v| gfpoly::is_primitive_element(v, &m, p, order as u128))
            .expect("finite fields are cyclic")
    };
    let mut cur = vec![0u64; e];
    cur[0] = 1;
    for k in 0..order as usize {
        let enc = encode(&cur, p);
        exp[k] = enc;
        log[enc as usize] = k as u32;
        if shift_ok {
            let carry = cur[e - 1];
            for i in (1..e).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if carry != 0 {
                for i in 0..e {
                    cur[i] = (cur[i] + p - carry * m[i] % p) % p;
                }
            }
        } else {
            let mut c: DensePoly = cur.clone();
            gfpoly::trim(&mut c);
            let next = gfpoly::mul_mod(&c, &generator, &m.to_vec(), p);
            cur = vec![0u64; e];
            cur[..next.len()].copy_from_slice(&next);
        }
    }
    let zech = (0..order as usize)
        .map(|k| {
            let enc = exp[k] as u64;
            let d0 = enc % p;
            let bumped = enc - d0 + (d0 + 1) % p;
            if bumped == 0 {
                NONE
            } else {
                log[bumped as usize]
            }
        })
        .collect();
    Tables { exp, log, zech, order: order as u32 }
}

impl Field for Gf {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec {
            characteristic: self.inner.p,
            extension_degree: self.inner.e,
            modulus: self.inner.modulus.clone(),
        }
    }

    fn characteristic(&self) -> u64 {
        self.inner.p
    }

    fn size(&self) -> Option<u64> {
        Some(self.inner.q)
    }

    #[inline]
    fn zero(&self) -> u32 {
        0
    }

    #[inline]
    fn one(&self) -> u32 {
        1
    }

    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let (a, b) = (*a, *b);
        match &self.inner.tables {
            None => ((a as u64 + b as u64) % self.inner.p) as u32,
            Some(t) => {
                if a == 0 {
                    return b;
                }
                if b == 0 {
                    return a;
                }
                let (i, j) = (a - 1, b - 1);
                let d = if j >= i { j - i } else { j + t.order - i };
                let z = t.zech[d as usize];
                if z == NONE {
                    0
                } else {
                    let s = i + z;
                    (if s >= t.order { s - t.order } else { s }) + 1
                }
            }
        }
    }

    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        let a = *a;
        if a == 0 {
            return 0;
        }
        match &self.inner.tables {
            None => (self.inner.p - a as u64) as u32,
            Some(t) => {
                if self.inner.p == 2 {
                    a
                } else {
                    let s = a - 1 + t.order / 2;
                    (if s >= t.order { s - t.order } else { s }) + 1
                }
            }
        }
    }

    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }

    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        let (a, b) = (*a, *b);
        match &self.inner.tables {
            None => ((a as u64 * b as u64) % self.inner.p) as u32,
            Some(t) => {
                if a == 0 || b == 0 {
                    return 0;
                }
                let s = (a - 1) + (b - 1);
                (if s >= t.order { s - t.order } else { s }) + 1
            }
        }
    }

    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        match &self.inner.tables {
            None => gfpoly::inv_mod(*a as u64, self.inner.p) as u32,
            Some(t) => {
                let k = *a - 1;
                (if k == 0 { 0 } else { t.order - k }) + 1
            }
        }
    }

    fn from_i64(&self, n: i64) -> u32 {
        let r = n.rem_euclid(self.inner.p as i64) as u64;
        self.from_residues(&[r])
    }

    fn from_bigint(&self, n: &BigInt) -> u32 {
        let r = n.mod_floor(&BigInt::from(self.inner.p)).to_u64().expect("reduced");
        self.from_residues(&[r])
    }

    fn random_generic<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        match &self.inner.tables {
            None => rng.gen_range(0..self.inner.p) as u32,
            Some(_) => rng.gen_range(0..self.inner.q) as u32,
        }
    }

    fn as_small_integer(&self, a: &u32) -> Option<BigInt> {
        let r = self.residues(*a);
        if r.iter().skip(1).any(|&c| c != 0) {
            return None;
        }
        let p = self.inner.p as i64;
        let c = r[0] as i64;
        Some(BigInt::from(if c > p / 2 { c - p } else { c }))
    }

    fn display(&self, a: &u32) -> String {
        if let Some(k) = self.as_small_integer(a) {
            return k.to_string();
        }
        let r = self.residues(*a);
        let mut parts = Vec::new();
        for (i, &c) in r.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            let sep = if coeff.is_empty() || i == 0 { "" } else { "*" };
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            parts.push(format!("{coeff}{sep}{mono}"));
        }
        format!("({})", parts.join("+"))
    }

    fn named_constant(&self, name: &str) -> Option<u32> {
        (name == "t" && self.inner.e > 1).then(|| self.generator())
    }

    fn sampling_extension(&self, min_size: u64, seed: u64) -> Result<(Self, Embedding<Self>)> {
        let (p, e) = (self.inner.p, self.inner.e);
        if self.inner.q >= min_size {
            return Ok((self.clone(), Embedding::identity()));
        }
        let size = |k: u32| (p as u128).pow(k);
        let mut big_e = e;
        while size(big_e) < min_size as u128 {
            big_e += e;
        }
        while size(big_e) > ZECH_LIMIT as u128 && big_e > e {
            big_e -= e;
        }
        if big_e == e {
            return Ok((self.clone(), Embedding::identity()));
        }
        let big = Gf::new(p, big_e, seed)?;
        let base = self.clone();
        if e == 1 {
            let target = big.clone();
            return Ok((big, Embedding::new(move |a: &u32| target.from_i64(*a as i64))));
        }
        let m = self.inner.modulus.clone().expect("extension has modulus");
        let step = (big.inner.q - 1) / (self.inner.q - 1);
        let g = big.primitive_element();
        let root = (0..self.inner.q - 1)
            .map(|k| big.pow(&g, k * step))
            .find(|&x| {
                let v = m.iter().rev().fold(0u32, |acc, &c| {
                    big.add(&big.mul(&acc, &x), &big.from_i64(c as i64))
                });
                v == 0
            })
            .ok_or_else(|| Error::InvalidField("no root of the base modulus in the extension".into()))?;
        let powers: Vec<u32> = (0..e).map(|i| big.pow(&root, i as u64)).collect();
        let target = big.clone();
        let map = move |a: &u32| {
            let r = base.residues(*a);
            r.iter().zip(&powers).fold(0u32, |acc, (&c, pw)| {
                target.add(&acc, &target.mul(&target.from_i64(c as i64), pw))
            })
        };
        Ok((big, Embedding::new(map)))
    }
}

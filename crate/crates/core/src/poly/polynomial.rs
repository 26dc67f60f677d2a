use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::monomial::Monomial;
use super::ring::PolyRing;
use crate::error::{Error, Result};
use crate::field::Field;

/// Sparse distributed polynomial. Terms are kept sorted in decreasing order
/// under the ring's monomial order, with no zero coefficients.
#[derive(Clone)]
pub struct Poly<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<F: Field> Poly<F> {
    pub fn zero(ring: &Arc<PolyRing<F>>) -> Self {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(ring: &Arc<PolyRing<F>>, mut terms: Vec<(Monomial, F::Elem)>) -> Self {
        let field = ring.field();
        let order = ring.order();
        let w = ring.weights();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0, w));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some((lm, lc)) = out.last_mut() {
                if *lm == m {
                    *lc = field.add(lc, &c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Poly { ring: ring.clone(), terms: out }
    }

    /// Trusts that `terms` are already sorted, merged and nonzero.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing<F>>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().compare(&w[0].0, &w[1].0, ring.weights()) == Ordering::Greater));
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Total (unweighted) degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn weighted_degree(&self) -> Option<u32> {
        let w = self.ring.weights();
        self.terms.iter().map(|(m, _)| m.weighted_degree(w)).max()
    }

    /// Coefficient of `m` (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    /// All terms share one total degree (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Homogeneous separately in each variable block (bit masks).
    pub fn is_multihomogeneous(&self, blocks: &[u16]) -> bool {
        blocks.iter().all(|&mask| {
            let mut it = self.terms.iter().map(|(m, _)| m.masked_degree(mask));
            match it.next() {
                None => true,
                Some(d) => it.all(|e| e == d),
            }
        })
    }

    fn check_ring(&self, other: &Self) {
        assert!(self.ring.same(&other.ring), "polynomials from different rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ring(other);
        let one = self.field().one();
        self.add_scaled(&one, &Monomial::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_ring(other);
        let m1 = self.field().neg(&self.field().one());
        self.add_scaled(&m1, &Monomial::one(), other)
    }

    pub fn neg(&self) -> Self {
        let f = self.field();
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect() }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return Poly::zero(&self.ring);
        }
        Poly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, a)| (*m, f.mul(a, c))).collect() }
    }

    pub fn mul_term(&self, c: &F::Elem, mono: &Monomial) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), f.mul(a, c))).collect(),
        }
    }

    /// `self + c * mono * g`, by a single merge pass.
    pub fn add_scaled(&self, c: &F::Elem, mono: &Monomial, g: &Self) -> Self {
        let field = self.field();
        let order = self.ring.order();
        let w = self.ring.weights();
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(m, x)| (m.mul(mono), x)).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some((ma, _)), Some((mb, _))) => order.compare(ma, mb, w),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => {
                    let (m, x) = b.next().unwrap();
                    let v = field.mul(x, c);
                    if !field.is_zero(&v) {
                        out.push((m, v));
                    }
                }
                Ordering::Equal => {
                    let (m, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let v = field.add(x, &field.mul(y, c));
                    if !field.is_zero(&v) {
                        out.push((*m, v));
                    }
                }
            }
        }
        Poly { ring: self.ring.clone(), terms: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        let field = self.field();
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.is_zero() {
            return Poly::zero(&self.ring);
        }
        let mut terms = Vec::with_capacity(small.len() * big.len());
        for (m, c) in &small.terms {
            for (n, d) in &big.terms {
                terms.push((m.mul(n), field.mul(c, d)));
            }
        }
        Poly::from_terms(&self.ring, terms)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient `self / g`, failing with `NotDivisible` on a nonzero remainder.
    pub fn exact_div(&self, g: &Self) -> Result<Self> {
        self.check_ring(g);
        let field = self.field();
        let (gm, gc) = match g.terms.first() {
            Some((m, c)) => (*m, c.clone()),
            None => return Err(Error::NotDivisible),
        };
        let gc_inv = field.inv(&gc);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            let t = gm.quotient_of(&rm).ok_or(Error::NotDivisible)?;
            let c = field.mul(&rc, &gc_inv);
            rem = rem.add_scaled(&field.neg(&c), &t, g);
            quot.push((t, c));
        }
        Ok(Poly::from_sorted(&self.ring, quot))
    }

    /// Formal partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let field = self.field();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let v = field.mul(c, &field.from_i64(e as i64));
            if field.is_zero(&v) {
                continue;
            }
            let mut nm = *m;
            nm.0[i] -= 1;
            terms.push((nm, v));
        }
        Poly::from_terms(&self.ring, terms)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if self.field().is_one(c) => self.clone(),
            Some(c) => self.scale(&self.field().inv(c)),
        }
    }

    /// Re-sorts the terms for a ring with the same variables and field.
    pub fn to_ring(&self, ring: &Arc<PolyRing<F>>) -> Self {
        debug_assert_eq!(ring.nvars(), self.ring.nvars());
        Poly::from_terms(ring, self.terms.clone())
    }

    /// Moves variable `i` of `self` to variable `map[i]` of `ring`.
    pub fn map_vars(&self, ring: &Arc<PolyRing<F>>, map: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut nm = Monomial::one();
                for (i, &j) in map.iter().enumerate() {
                    nm.0[j] += m.0[i];
                }
                (nm, c.clone())
            })
            .collect();
        Poly::from_terms(ring, terms)
    }

    /// Applies a coefficient map into a ring over another field instance.
    pub fn map_coeffs(&self, ring: &Arc<PolyRing<F>>, f: impl Fn(&F::Elem) -> F::Elem) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (*m, f(c))).collect();
        Poly::from_terms(ring, terms)
    }

    /// Substitutes `images[i]` (polynomials in `ring`) for variable `i`.
    pub fn substitute(&self, ring: &Arc<PolyRing<F>>, images: &[Poly<F>]) -> Self {
        assert_eq!(images.len(), self.ring.nvars());
        let mut powers: Vec<Vec<Poly<F>>> = images.iter().map(|g| vec![ring.one(), g.clone()]).collect();
        let mut acc = Poly::zero(ring);
        for (m, c) in &self.terms {
            let mut t = ring.constant(c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(&images[i]);
                    pw.push(next);
                }
                if e > 0 {
                    t = t.mul(&pw[e]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Evaluates at a point of the field.
    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        let field = self.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    v = field.mul(&v, &field.pow(x, e as u64));
                }
            }
            acc = field.add(&acc, &v);
        }
        acc
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = self.field();
        let names = self.ring.names();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono = format_monomial(m, names);
            let (negative, body) = match field.as_small_integer(c) {
                Some(n) => {
                    let neg = n < num_bigint::BigInt::from(0);
                    let abs = if neg { -n } else { n };
                    let s = abs.to_string();
                    (neg, if mono.is_empty() { s } else if s == "1" { mono } else { format!("{s}*{mono}") })
                }
                None => {
                    let s = field.display(c);
                    (false, if mono.is_empty() { s } else { format!("{s}*{mono}") })
                }
            };
            match (k, negative) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, "+{body}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, name) in names.iter().enumerate() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(name.clone()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

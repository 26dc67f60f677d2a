//! Groebner bases and the ideal operations built on them.

mod buchberger;
mod dimension;
mod ops;

use std::sync::Arc;

use crate::field::Field;
use crate::poly::{Monomial, Poly, PolyRing};

pub use buchberger::{GbStats, Truncation};
pub use dimension::{degree_zero_dim, hilbert_function, krull_dimension_of, DegreeMode, SchemeMeasure};
pub use ops::{
    eliminate, ideal_quotient, intersect, irrelevant_ideal, quotient_by_element, saturate,
    saturate_by_element, SaturationMethod,
};

/// An ideal given by generators in a fixed ring.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    ring: Arc<PolyRing<F>>,
    gens: Vec<Poly<F>>,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<PolyRing<F>>, gens: impl IntoIterator<Item = Poly<F>>) -> Self {
        let gens = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| {
                assert!(g.ring().same(ring), "generator from a different ring");
                g
            })
            .collect();
        Ideal { ring: ring.clone(), gens }
    }

    pub fn unit(ring: &Arc<PolyRing<F>>) -> Self {
        Ideal::new(ring, [ring.one()])
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Poly::is_homogeneous)
    }

    pub fn groebner(&self) -> GroebnerBasis<F> {
        self.groebner_truncated(None)
    }

    pub fn groebner_truncated(&self, trunc: Option<Truncation>) -> GroebnerBasis<F> {
        let out = buchberger::buchberger(&self.ring, &self.gens, trunc, false);
        GroebnerBasis { ring: self.ring.clone(), elements: out.elements, stats: out.stats }
    }

    /// The basis together with cofactors: row `k` expresses element `k` as a
    /// combination of the generators of `self`.
    pub fn groebner_with_cofactors(&self) -> (GroebnerBasis<F>, Vec<Vec<Poly<F>>>) {
        let out = buchberger::buchberger(&self.ring, &self.gens, None, true);
        let cof = out.cofactors.expect("tracked");
        (GroebnerBasis { ring: self.ring.clone(), elements: out.elements, stats: out.stats }, cof)
    }

    /// The same generators re-sorted for another order on the same variables.
    pub fn to_ring(&self, ring: &Arc<PolyRing<F>>) -> Ideal<F> {
        Ideal::new(ring, self.gens.iter().map(|g| g.to_ring(ring)))
    }

    pub fn sum(&self, other: &Ideal<F>) -> Ideal<F> {
        Ideal::new(&self.ring, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn product(&self, other: &Ideal<F>) -> Ideal<F> {
        let mut gens = Vec::new();
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.mul(g));
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn contains(&self, f: &Poly<F>) -> bool {
        self.groebner().contains(f)
    }

    /// Equality of ideals, by comparing reduced bases.
    pub fn same_ideal(&self, other: &Ideal<F>) -> bool {
        self.groebner() == other.groebner()
    }
}

/// A reduced, monic Groebner basis, elements sorted increasingly by leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<PolyRing<F>>,
    elements: Vec<Poly<F>>,
    stats: GbStats,
}

impl<F: Field> PartialEq for GroebnerBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same(&other.ring) && self.elements == other.elements
    }
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn elements(&self) -> &[Poly<F>] {
        &self.elements
    }

    pub fn stats(&self) -> GbStats {
        self.stats
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(Poly::is_constant)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().map(|g| *g.leading_monomial().unwrap()).collect()
    }

    pub fn normal_form(&self, f: &Poly<F>) -> Poly<F> {
        assert!(f.ring().same(&self.ring), "polynomial from a different ring");
        buchberger::normal_form(&self.ring, &self.elements, f)
    }

    /// Quotients `q` and remainder `r` with `f = sum q_k g_k + r`.
    pub fn divide(&self, f: &Poly<F>) -> (Vec<Poly<F>>, Poly<F>) {
        assert!(f.ring().same(&self.ring), "polynomial from a different ring");
        buchberger::divide(&self.ring, &self.elements, f)
    }

    pub fn contains(&self, f: &Poly<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> bool {
        other.gens().iter().all(|g| self.contains(g))
    }

    pub fn to_ideal(&self) -> Ideal<F> {
        Ideal::new(&self.ring, self.elements.iter().cloned())
    }

    /// Affine Krull dimension of the ideal; -1 for the unit ideal.
    pub fn krull_dimension(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        krull_dimension_of(&self.leading_monomials(), self.ring.nvars())
    }

    /// S-polynomial `lcm/lm(a) * a - lcm/lm(b) * b` of two elements.
    pub fn s_polynomial(&self, i: usize, j: usize) -> Poly<F> {
        let (a, b) = (&self.elements[i], &self.elements[j]);
        let (ma, mb) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
        let l = ma.lcm(mb);
        let one = self.ring.field().one();
        a.mul_term(&one, &ma.quotient_of(&l).unwrap())
            .sub(&b.mul_term(&one, &mb.quotient_of(&l).unwrap()))
    }

    /// Every S-polynomial reduces to zero (the Buchberger criterion, checked directly).
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        (0..self.len()).all(|i| (i + 1..self.len()).all(|j| self.normal_form(&self.s_polynomial(i, j)).is_zero()))
    }
}

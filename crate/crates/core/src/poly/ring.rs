use std::sync::Arc;

use super::monomial::{MonomialOrder, MAX_VARS};
use super::Poly;
use crate::error::{Error, Result};
use crate::field::Field;

/// A polynomial ring over `F` with a fixed set of named variables, per-variable
/// weights, and the monomial order in which polynomials store their terms.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    field: F,
    names: Vec<String>,
    weights: [u32; MAX_VARS],
    order: MonomialOrder,
}

impl<F: Field> PartialEq for PolyRing<F> {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.weights == other.weights
            && self.order == other.order
            && self.field.spec() == other.field.spec()
    }
}

impl<F: Field> PolyRing<F> {
    /// A degrevlex ring with unit weights.
    pub fn new<S: AsRef<str>>(field: F, names: &[S]) -> Result<Arc<Self>> {
        let weights = vec![1; names.len()];
        PolyRing::with_weights(field, names, &weights, MonomialOrder::DegRevLex)
    }

    pub fn with_weights<S: AsRef<str>>(
        field: F,
        names: &[S],
        weights: &[u32],
        order: MonomialOrder,
    ) -> Result<Arc<Self>> {
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVariables(names.len()));
        }
        assert_eq!(names.len(), weights.len());
        let mut w = [0u32; MAX_VARS];
        w[..weights.len()].copy_from_slice(weights);
        Ok(Arc::new(PolyRing {
            field,
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            weights: w,
            order,
        }))
    }

    /// `k[x0, x1, x2]`.
    pub fn plane(field: F) -> Arc<Self> {
        PolyRing::new(field, &["x0", "x1", "x2"]).expect("three variables")
    }

    /// `k[x0, x1, x2, y0, y1, y2]`, the coordinate ring of the product of two planes.
    pub fn product_plane(field: F) -> Arc<Self> {
        PolyRing::new(field, &["x0", "x1", "x2", "y0", "y1", "y2"]).expect("six variables")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same variables and field, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing { order, ..self.clone() })
    }

    /// Same field, different variables (unit weights, degrevlex).
    pub fn with_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Arc<Self>> {
        PolyRing::new(self.field.clone(), names)
    }

    /// Appends variables with the given weights; the order is kept.
    pub fn extended<S: AsRef<str>>(&self, names: &[S], weights: &[u32]) -> Result<Arc<Self>> {
        let mut all: Vec<String> = self.names.clone();
        all.extend(names.iter().map(|s| s.as_ref().to_string()));
        let mut w: Vec<u32> = self.weights[..self.nvars()].to_vec();
        w.extend_from_slice(weights);
        PolyRing::with_weights(self.field.clone(), &all, &w, self.order.clone())
    }

    /// Same variables over another field.
    pub fn over<G: Field>(&self, field: G) -> Arc<PolyRing<G>> {
        Arc::new(PolyRing {
            field,
            names: self.names.clone(),
            weights: self.weights,
            order: self.order.clone(),
        })
    }

    pub fn zero(self: &Arc<Self>) -> Poly<F> {
        Poly::zero(self)
    }

    pub fn one(self: &Arc<Self>) -> Poly<F> {
        self.constant(self.field.one())
    }

    pub fn constant(self: &Arc<Self>, c: F::Elem) -> Poly<F> {
        Poly::from_terms(self, vec![(super::Monomial::one(), c)])
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Poly<F> {
        assert!(i < self.nvars(), "variable index out of range");
        Poly::from_terms(self, vec![(super::Monomial::var(i, 1), self.field.one())])
    }

    /// `sum c_i * x_{vars[i]}`.
    pub fn linear_form(self: &Arc<Self>, vars: &[usize], coeffs: &[F::Elem]) -> Poly<F> {
        let terms = vars
            .iter()
            .zip(coeffs)
            .map(|(&i, c)| (super::Monomial::var(i, 1), c.clone()))
            .collect();
        Poly::from_terms(self, terms)
    }

    pub fn same(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

#![allow(dead_code)]

pub mod checks;
pub mod oracle;

use std::sync::Arc;

use homaloidal::field::{Field, Gf, Rationals};
use homaloidal::poly::{Monomial, Poly, PolyRing};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small finite fields plus a couple of extensions, indexed for proptest.
pub fn finite_field(i: usize) -> Gf {
    match i % 8 {
        0 => Gf::prime(2).unwrap(),
        1 => Gf::prime(3).unwrap(),
        2 => Gf::prime(5).unwrap(),
        3 => Gf::prime(7).unwrap(),
        4 => Gf::prime(101).unwrap(),
        5 => Gf::new(2, 3, 0).unwrap(),
        6 => Gf::new(3, 2, 0).unwrap(),
        _ => Gf::new(5, 2, 0).unwrap(),
    }
}

/// A field element; over QQ a quotient of small integers.
pub fn element<F: Field>(field: &F, rng: &mut ChaCha8Rng) -> F::Elem {
    match field.size() {
        Some(_) => field.random_generic(rng),
        None => {
            let num = field.from_i64(rng.gen_range(-20..=20));
            let den = field.from_i64(rng.gen_range(1..=9));
            field.div(&num, &den)
        }
    }
}

/// Small coefficients; over QQ integers in [-3, 3].
pub fn small_element<F: Field>(field: &F, rng: &mut ChaCha8Rng) -> F::Elem {
    match field.size() {
        Some(_) => field.random_generic(rng),
        None => field.from_i64(rng.gen_range(-3..=3)),
    }
}

/// Homogeneous form of degree `d` in the first three variables with about `terms` terms.
pub fn random_form<F: Field>(ring: &Arc<PolyRing<F>>, d: u32, terms: usize, rng: &mut ChaCha8Rng) -> Poly<F> {
    let field = ring.field().clone();
    let mut out = Vec::new();
    for _ in 0..terms {
        let a = rng.gen_range(0..=d);
        let b = rng.gen_range(0..=d - a);
        out.push((Monomial::from_exponents(&[a, b, d - a - b]), small_element(&field, rng)));
    }
    Poly::from_terms(ring, out)
}

pub fn nonzero_form<F: Field>(ring: &Arc<PolyRing<F>>, d: u32, terms: usize, rng: &mut ChaCha8Rng) -> Poly<F> {
    loop {
        let f = random_form(ring, d, terms, rng);
        if !f.is_zero() {
            return f;
        }
    }
}

/// An invertible linear change of the plane coordinates, as the images of x0, x1, x2.
pub fn random_coordinate_change<F: Field>(ring: &Arc<PolyRing<F>>, rng: &mut ChaCha8Rng) -> Vec<Poly<F>> {
    let field = ring.field().clone();
    loop {
        let m: Vec<Vec<F::Elem>> = (0..3).map(|_| (0..3).map(|_| small_element(&field, rng)).collect()).collect();
        let det = {
            let t = |a: &F::Elem, b: &F::Elem| field.mul(a, b);
            let c0 = field.sub(&t(&m[1][1], &m[2][2]), &t(&m[1][2], &m[2][1]));
            let c1 = field.sub(&t(&m[1][0], &m[2][2]), &t(&m[1][2], &m[2][0]));
            let c2 = field.sub(&t(&m[1][0], &m[2][1]), &t(&m[1][1], &m[2][0]));
            field.add(&field.sub(&t(&m[0][0], &c0), &t(&m[0][1], &c1)), &t(&m[0][2], &c2))
        };
        if !field.is_zero(&det) {
            return m.iter().map(|row| ring.linear_form(&[0, 1, 2], row)).collect();
        }
    }
}

pub fn qq_plane() -> Arc<PolyRing<Rationals>> {
    PolyRing::plane(Rationals)
}

/// All lines of the projective plane over a finite field, in sweep order.
pub fn plane_lines(field: &Gf) -> Vec<[u32; 3]> {
    let (zero, one) = (field.zero(), field.one());
    let mut out = Vec::new();
    for b in field.elements() {
        for c in field.elements() {
            out.push([one, b, c]);
        }
    }
    out.extend(field.elements().map(|c| [zero, one, c]));
    out.push([zero, zero, one]);
    out
}

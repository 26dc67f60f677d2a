//! Linear-algebra oracles that share no code with the Groebner pipeline.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use homaloidal::field::{Field, Rationals};
use homaloidal::poly::{Monomial, Poly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::{random_coordinate_change, rng};

pub const RAMPHOID: &str = "x2*(x1^4-2*x0*x1^2*x2+x0^2*x2^2-x1*x2^3)";
/// Frozen after the resultant oracle reproduced it; see golden/ramphoid_qq_d0.log.
pub const RAMPHOID_QQ_D0: u64 = 3;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Univariate polynomials over QQ, lowest coefficient first, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct U(Vec<Q>);

impl U {
    fn trim(mut v: Vec<Q>) -> U {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        U(v)
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn rem(&self, b: &U) -> U {
        let mut r = self.0.clone();
        let db = b.degree().expect("nonzero divisor");
        let lb = b.0[db].clone();
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1 - db;
            let c = r.last().unwrap().clone() / &lb;
            for (i, bc) in b.0.iter().enumerate() {
                r[k + i] -= &c * bc;
            }
            r = U::trim(r).0;
        }
        U(r)
    }

    fn gcd(a: &U, b: &U) -> U {
        let (mut a, mut b) = (a.clone(), b.clone());
        while b.degree().is_some() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Lagrange interpolation through `(xs[i], ys[i])`.
    fn interpolate(xs: &[Q], ys: &[Q]) -> U {
        let mut out = vec![Q::zero(); xs.len()];
        for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
            let mut basis = vec![Q::one()];
            let mut denom = Q::one();
            for (j, xj) in xs.iter().enumerate() {
                if j == i {
                    continue;
                }
                let mut next = vec![Q::zero(); basis.len() + 1];
                for (k, c) in basis.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c * xj;
                }
                basis = next;
                denom *= xi - xj;
            }
            let scale = yi / denom;
            for (k, c) in basis.iter().enumerate() {
                out[k] += c * &scale;
            }
        }
        U::trim(out)
    }
}

pub fn determinant(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let t = &f * &m[c][k];
                m[r][k] -= t;
            }
        }
    }
    det
}

/// Sylvester resultant of two univariate polynomials given by coefficients
/// (lowest first) of exact degrees `a.len()-1`, `b.len()-1`.
pub fn sylvester(a: &[Q], b: &[Q]) -> Q {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Q::zero(); size];
        for (k, c) in a.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Q::zero(); size];
        for (k, c) in b.iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    determinant(rows)
}

/// Affine chart `x2 = 1` of a plane form, as `x1`-coefficients after fixing `x0 = s`.
fn specialize(f: &Poly<Rationals>, s: &Q) -> Vec<Q> {
    let mut by_x1: BTreeMap<u32, Q> = BTreeMap::new();
    for (m, c) in f.terms() {
        let v = c * num_traits::pow(s.clone(), m.exp(0) as usize);
        *by_x1.entry(m.exp(1)).or_insert_with(Q::zero) += v;
    }
    let top = *by_x1.keys().max().unwrap();
    (0..=top).map(|e| by_x1.get(&e).cloned().unwrap_or_else(Q::zero)).collect()
}

/// Resultant in `x1` of two plane curves in the chart `x2 = 1`, as a polynomial in `x0`.
fn resultant(c1: &Poly<Rationals>, c2: &Poly<Rationals>, bound: usize) -> U {
    let lead = |f: &Poly<Rationals>| {
        let d = f.degree().unwrap();
        let top = f.coeff(&Monomial::from_exponents(&[0, d, 0]));
        assert!(!top.is_zero(), "chart is not generic: {f}");
        d as usize
    };
    let (d1, d2) = (lead(c1), lead(c2));
    let xs: Vec<Q> = (0..=bound as i64).map(|k| q(3 * k - 7)).collect();
    let ys: Vec<Q> = xs
        .iter()
        .map(|s| {
            let (a, b) = (specialize(c1, s), specialize(c2, s));
            assert_eq!((a.len() - 1, b.len() - 1), (d1, d2));
            sylvester(&a, &b)
        })
        .collect();
    U::interpolate(&xs, &ys)
}

/// Length of the generic fiber of the polar map of `f` over QQ: the members
/// `y1 f0 - y0 f1`, `y2 f0 - y0 f2` meet in the fiber over `y` and the base
/// points; the base-point part is the common factor of the resultants for
/// several `y`.
pub fn fiber_length_by_resultants(f: &Poly<Rationals>, seed: u64, log: &mut String) -> u64 {
    let ring = f.ring().clone();
    let mut r = rng(seed);
    let change = random_coordinate_change(&ring, &mut r);
    let g = f.substitute(&ring, &change);
    let partials: Vec<Poly<Rationals>> = (0..3).map(|i| g.derivative(i)).collect();
    let e = partials[0].degree().unwrap() as usize;
    let bound = e * e;
    writeln!(log, "polynomial: {f}").unwrap();
    writeln!(log, "coordinate change: {}", change.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")).unwrap();
    let mut resultants = Vec::new();
    for _ in 0..3 {
        let y: Vec<Q> = (0..3).map(|_| q(r.gen_range(-50..=50))).collect();
        let c1 = partials[0].scale(&y[1]).sub(&partials[1].scale(&y[0]));
        let c2 = partials[0].scale(&y[2]).sub(&partials[2].scale(&y[0]));
        let res = resultant(&c1, &c2, bound);
        writeln!(log, "y = ({}, {}, {}): deg R = {}", y[0], y[1], y[2], res.degree().unwrap()).unwrap();
        resultants.push(res);
    }
    let common = resultants[1..].iter().fold(resultants[0].clone(), |acc, r| U::gcd(&acc, r));
    let base = common.degree().unwrap() as u64;
    let total = resultants[0].degree().unwrap() as u64;
    writeln!(log, "deg gcd (base points) = {base}").unwrap();
    writeln!(log, "d0 = {}", total - base).unwrap();
    total - base
}

/// Dimension of the degree-`t` part of an ideal from the span of monomial
/// multiples of its generators (a Macaulay matrix), compared with the count of
/// non-standard monomials of the computed basis.
pub fn macaulay_rank<F: Field>(gens: &[Poly<F>], t: u32) -> usize {
    let field = gens[0].field().clone();
    let monos = |deg: u32| -> Vec<Monomial> {
        (0..=deg).flat_map(|a| (0..=deg - a).map(move |b| Monomial::from_exponents(&[a, b, deg - a - b]))).collect()
    };
    let cols = monos(t);
    let mut rows = Vec::new();
    for g in gens {
        let dg = g.degree().unwrap();
        if dg > t {
            continue;
        }
        for m in monos(t - dg) {
            rows.push(cols.iter().map(|c| match m.quotient_of(c) {
                Some(rest) => g.coeff(&rest),
                None => field.zero(),
            }).collect());
        }
    }
    if rows.is_empty() {
        return 0;
    }
    homaloidal::linalg::rank(&field, &homaloidal::linalg::Matrix::from_rows(rows, cols.len()))
}


use std::cmp::Ordering;
use std::sync::Arc;

use crate::field::Field;
use crate::poly::{Monomial, Poly, PolyRing};

type Terms<E> = Vec<(Monomial, E)>;

/// Drop S-pairs whose lcm has degree above `bound` in the variables of `mask`.
/// Sound for ideals generated by elements homogeneous in that partial grading:
/// the result is then a Groebner basis up to that degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub mask: u16,
    pub bound: u32,
}

/// Counters from one Buchberger run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs_created: usize,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub pairs_pruned: usize,
    pub basis_size: usize,
}

/// `ca * qa * a + cb * qb * b`, where `None` stands for 1. Inputs are sorted
/// decreasingly under the ring's order.
fn combine<F: Field>(
    ring: &PolyRing<F>,
    a: &[(Monomial, F::Elem)],
    qa: Option<&Monomial>,
    ca: Option<&F::Elem>,
    b: &[(Monomial, F::Elem)],
    qb: &Monomial,
    cb: &F::Elem,
) -> Terms<F::Elem> {
    let field = ring.field();
    let order = ring.order();
    let w = ring.weights();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let ma = |k: usize| match qa {
        Some(q) => a[k].0.mul(q),
        None => a[k].0,
    };
    let va = |k: usize| match ca {
        Some(c) => field.mul(&a[k].1, c),
        None => a[k].1.clone(),
    };
    let mut next_a = if a.is_empty() { None } else { Some(ma(0)) };
    let mut next_b = if b.is_empty() { None } else { Some(b[0].0.mul(qb)) };
    loop {
        let ord = match (&next_a, &next_b) {
            (None, None) => break,
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some(x), Some(y)) => order.compare(x, y, w),
        };
        match ord {
            Ordering::Greater => {
                out.push((next_a.unwrap(), va(i)));
                i += 1;
                next_a = (i < a.len()).then(|| ma(i));
            }
            Ordering::Less => {
                let v = field.mul(&b[j].1, cb);
                if !field.is_zero(&v) {
                    out.push((next_b.unwrap(), v));
                }
                j += 1;
                next_b = (j < b.len()).then(|| b[j].0.mul(qb));
            }
            Ordering::Equal => {
                let v = field.add(&va(i), &field.mul(&b[j].1, cb));
                if !field.is_zero(&v) {
                    out.push((next_a.unwrap(), v));
                }
                i += 1;
                j += 1;
                next_a = (i < a.len()).then(|| ma(i));
                next_b = (j < b.len()).then(|| b[j].0.mul(qb));
            }
        }
    }
    out
}

struct Entry<F: Field> {
    poly: Poly<F>,
    lm: Monomial,
    support: u16,
    cof: Option<Vec<Poly<F>>>,
}

/// Reduction data: a list of monic polynomials with cached leading monomials.
pub(crate) struct Reducer<'a, F: Field> {
    ring: &'a Arc<PolyRing<F>>,
    entries: Vec<&'a Entry<F>>,
}

impl<'a, F: Field> Reducer<'a, F> {
    fn find(&self, m: &Monomial) -> Option<&'a Entry<F>> {
        let s = m.support();
        self.entries.iter().copied().find(|e| e.support & !s == 0 && e.lm.divides(m))
    }

    /// Full reduction. Each step `w -= c*q*g` is mirrored on `cof` as
    /// `cof -= c*q*cof(g)`.
    fn reduce(&self, f: Terms<F::Elem>, mut cof: Option<&mut Vec<Poly<F>>>) -> (Terms<F::Elem>, usize) {
        let field = self.ring.field();
        let mut work = f;
        let mut pos = 0;
        let mut out: Terms<F::Elem> = Vec::new();
        let mut steps = 0;
        while pos < work.len() {
            let (m, c) = &work[pos];
            match self.find(m) {
                None => {
                    out.push(work[pos].clone());
                    pos += 1;
                }
                Some(e) => {
                    steps += 1;
                    let q = e.lm.quotient_of(m).expect("divisor");
                    let neg = field.neg(c);
                    if let (Some(acc), Some(ec)) = (cof.as_deref_mut(), e.cof.as_ref()) {
                        for (a, b) in acc.iter_mut().zip(ec) {
                            *a = a.add_scaled(&neg, &q, b);
                        }
                    }
                    work = combine(self.ring, &work[pos + 1..], None, None, &e.poly.terms()[1..], &q, &neg);
                    pos = 0;
                }
            }
        }
        (out, steps)
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

pub(crate) struct GbOutput<F: Field> {
    pub elements: Vec<Poly<F>>,
    pub cofactors: Option<Vec<Vec<Poly<F>>>>,
    pub stats: GbStats,
}

/// Reduced Groebner basis of the nonzero polynomials among `gens`, under the
/// order of `ring`. With `track`, each basis element carries cofactors
/// expressing it in terms of `gens`.
pub(crate) fn buchberger<F: Field>(
    ring: &Arc<PolyRing<F>>,
    gens: &[Poly<F>],
    trunc: Option<Truncation>,
    track: bool,
) -> GbOutput<F> {
    let field = ring.field().clone();
    let order = ring.order().clone();
    let w = ring.weights().to_vec();
    let mut stats = GbStats::default();
    let mut entries: Vec<Entry<F>> = Vec::new();
    let mut live: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let ngens = gens.len();

    let within = |m: &Monomial| trunc.is_none_or(|t| m.masked_degree(t.mask) <= t.bound);

    let mut inputs: Vec<(usize, &Poly<F>)> = gens.iter().enumerate().filter(|(_, g)| !g.is_zero()).collect();
    inputs.sort_by(|a, b| order.compare(a.1.leading_monomial().unwrap(), b.1.leading_monomial().unwrap(), &w));

    let mut queue: Vec<(Terms<F::Elem>, Option<Vec<Poly<F>>>)> = inputs
        .into_iter()
        .map(|(k, g)| {
            let cof = track.then(|| {
                (0..ngens).map(|i| if i == k { ring.one() } else { ring.zero() }).collect::<Vec<_>>()
            });
            (g.terms().to_vec(), cof)
        })
        .collect();
    queue.reverse();

    loop {
        let (terms, mut cof) = if let Some(item) = queue.pop() {
            item
        } else if !pairs.is_empty() {
            let mut best = 0;
            for k in 1..pairs.len() {
                let c = order.compare(&pairs[k].lcm, &pairs[best].lcm, &w);
                if c == Ordering::Less || (c == Ordering::Equal && (pairs[k].j, pairs[k].i) < (pairs[best].j, pairs[best].i)) {
                    best = k;
                }
            }
            let p = pairs.swap_remove(best);
            stats.pairs_reduced += 1;
            let (a, b) = (&entries[p.i], &entries[p.j]);
            let qa = a.lm.quotient_of(&p.lcm).unwrap();
            let qb = b.lm.quotient_of(&p.lcm).unwrap();
            let m1 = field.neg(&field.one());
            let s = combine(ring, &a.poly.terms()[1..], Some(&qa), None, &b.poly.terms()[1..], &qb, &m1);
            let cof = match (&a.cof, &b.cof) {
                (Some(ca), Some(cb)) => Some(
                    ca.iter()
                        .zip(cb)
                        .map(|(x, y)| x.mul_term(&field.one(), &qa).add_scaled(&m1, &qb, y))
                        .collect(),
                ),
                _ => None,
            };
            (s, cof)
        } else {
            break;
        };

        let reducer = Reducer { ring, entries: live.iter().map(|&k| &entries[k]).collect() };
        let (rem, _) = reducer.reduce(terms, cof.as_mut());
        if rem.is_empty() {
            stats.zero_reductions += 1;
            continue;
        }
        let lc_inv = field.inv(&rem[0].1);
        let h = Poly::from_sorted(ring, rem).scale(&lc_inv);
        let cof = cof.map(|v| v.into_iter().map(|c| c.scale(&lc_inv)).collect());
        let lm = *h.leading_monomial().unwrap();
        let hidx = entries.len();
        entries.push(Entry { support: lm.support(), poly: h, lm, cof });

        // Gebauer-Moeller update.
        let mut cands: Vec<Pair> = live
            .iter()
            .map(|&g| Pair { i: g, j: hidx, lcm: entries[g].lm.lcm(&lm) })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        for k in 0..cands.len() {
            let p = &cands[k];
            let coprime = entries[p.i].lm.is_coprime(&lm);
            let dominated = |q: &Pair| q.lcm.divides(&p.lcm);
            if coprime
                || (!cands[k + 1..].iter().any(dominated) && !kept.iter().any(dominated))
            {
                kept.push(p.clone());
            } else {
                stats.pairs_pruned += 1;
            }
        }
        cands.clear();
        let before = pairs.len();
        pairs.retain(|p| {
            !(lm.divides(&p.lcm)
                && entries[p.i].lm.lcm(&lm) != p.lcm
                && entries[p.j].lm.lcm(&lm) != p.lcm)
        });
        stats.pairs_pruned += before - pairs.len();
        for p in kept {
            if entries[p.i].lm.is_coprime(&lm) {
                stats.pairs_pruned += 1;
            } else if !within(&p.lcm) {
                stats.pairs_pruned += 1;
            } else {
                stats.pairs_created += 1;
                pairs.push(p);
            }
        }
        live.retain(|&g| !lm.divides(&entries[g].lm));
        live.push(hidx);
        if lm.is_one() {
            pairs.clear();
            queue.clear();
            live = vec![hidx];
        }
    }

    // Reduced basis: sort ascending, tail-reduce each element by the others.
    let mut basis: Vec<usize> = live;
    basis.sort_by(|&a, &b| order.compare(&entries[a].lm, &entries[b].lm, &w));
    let mut elements = Vec::with_capacity(basis.len());
    let mut cofactors: Vec<Vec<Poly<F>>> = Vec::new();
    for (k, &idx) in basis.iter().enumerate() {
        let others: Vec<&Entry<F>> =
            basis.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, &i)| &entries[i]).collect();
        let reducer = Reducer { ring, entries: others };
        let e = &entries[idx];
        let mut cof = e.cof.clone();
        let head = e.poly.terms()[0].clone();
        let (mut tail, _) = reducer.reduce(e.poly.terms()[1..].to_vec(), cof.as_mut());
        tail.insert(0, head);
        elements.push(Poly::from_sorted(ring, tail));
        if let Some(c) = cof {
            cofactors.push(c);
        }
    }
    stats.basis_size = elements.len();
    log::debug!(
        "buchberger: {} vars, {} gens -> {} elements; {} pairs reduced ({} to zero), {} pruned",
        ring.nvars(),
        ngens,
        stats.basis_size,
        stats.pairs_reduced,
        stats.zero_reductions,
        stats.pairs_pruned
    );
    GbOutput { elements, cofactors: track.then_some(cofactors), stats }
}

/// Normal form of `f` against a monic basis, with the quotients.
pub(crate) fn divide<F: Field>(
    ring: &Arc<PolyRing<F>>,
    basis: &[Poly<F>],
    f: &Poly<F>,
) -> (Vec<Poly<F>>, Poly<F>) {
    let entries: Vec<Entry<F>> = basis
        .iter()
        .enumerate()
        .map(|(k, g)| {
            let lm = *g.leading_monomial().expect("nonzero basis element");
            let cof = (0..basis.len()).map(|i| if i == k { ring.one() } else { ring.zero() }).collect();
            Entry { poly: g.clone(), lm, support: lm.support(), cof: Some(cof) }
        })
        .collect();
    let reducer = Reducer { ring, entries: entries.iter().collect() };
    let mut quot: Vec<Poly<F>> = vec![ring.zero(); basis.len()];
    let (rem, _) = reducer.reduce(f.terms().to_vec(), Some(&mut quot));
    (quot.iter().map(Poly::neg).collect(), Poly::from_sorted(ring, rem))
}

/// Normal form of `f` against a monic basis.
pub(crate) fn normal_form<F: Field>(ring: &Arc<PolyRing<F>>, basis: &[Poly<F>], f: &Poly<F>) -> Poly<F> {
    let entries: Vec<Entry<F>> = basis
        .iter()
        .map(|g| {
            let lm = *g.leading_monomial().expect("nonzero basis element");
            Entry { poly: g.clone(), lm, support: lm.support(), cof: None }
        })
        .collect();
    let reducer = Reducer { ring, entries: entries.iter().collect() };
    let (rem, _) = reducer.reduce(f.terms().to_vec(), None);
    Poly::from_sorted(ring, rem)
}

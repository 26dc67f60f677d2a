use std::sync::Arc;

use super::Ideal;
use crate::error::Result;
use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder, Poly, PolyRing};

/// How single-element saturations are computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SaturationMethod {
    /// Repeated colon `I : f` until the reduced basis stops changing.
    #[default]
    IteratedColon,
    /// Adjoin `t`, add `t*f - 1`, eliminate `t`.
    Rabinowitsch,
}

fn variable_mask(vars: &[usize]) -> u16 {
    vars.iter().fold(0u16, |m, &i| m | 1 << i)
}

/// `I ∩ k[variables not in vars]`, via a block elimination order.
pub fn eliminate<F: Field>(ideal: &Ideal<F>, vars: &[usize]) -> Ideal<F> {
    if vars.is_empty() {
        return ideal.clone();
    }
    let ring = ideal.ring();
    let mask = variable_mask(vars);
    let elim = ring.with_order(MonomialOrder::Elimination(mask));
    let gb = ideal.to_ring(&elim).groebner();
    Ideal::new(
        ring,
        gb.elements()
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.support() & mask == 0))
            .map(|g| g.to_ring(ring)),
    )
}

/// `ring` with one extra variable `t` in slot `ring.nvars()`, ordered to eliminate it.
fn with_tag<F: Field>(ring: &Arc<PolyRing<F>>, weight: u32) -> Result<(Arc<PolyRing<F>>, usize)> {
    let t = ring.nvars();
    let ext = ring.extended(&["_t"], &[weight])?.with_order(MonomialOrder::Elimination(1 << t));
    Ok((ext, t))
}

fn lift<F: Field>(f: &Poly<F>, ring: &Arc<PolyRing<F>>) -> Poly<F> {
    Poly::from_terms(ring, f.terms().to_vec())
}

/// Generators of the elements of an ideal in `ext` that avoid the tag variable, in `ring`.
fn drop_tag<F: Field>(ext_gens: &[Poly<F>], t: usize, ring: &Arc<PolyRing<F>>) -> Ideal<F> {
    Ideal::new(
        ring,
        ext_gens
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exp(t) == 0))
            .map(|g| Poly::from_terms(ring, g.terms().to_vec())),
    )
}

/// `I ∩ J` as the elimination of `t` from `t*I + (1 - t)*J`.
pub fn intersect<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    let ring = i.ring();
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::new(ring, []));
    }
    let (ext, t) = with_tag(ring, 0)?;
    let tv = ext.var(t);
    let one_minus_t = ext.one().sub(&tv);
    let gens = i
        .gens()
        .iter()
        .map(|g| tv.mul(&lift(g, &ext)))
        .chain(j.gens().iter().map(|g| one_minus_t.mul(&lift(g, &ext))));
    let gb = Ideal::new(&ext, gens).groebner();
    Ok(drop_tag(gb.elements(), t, ring))
}

/// `I : f = (I ∩ (f)) / f`.
pub fn quotient_by_element<F: Field>(ideal: &Ideal<F>, f: &Poly<F>) -> Result<Ideal<F>> {
    assert!(!f.is_zero(), "colon by zero");
    let ring = ideal.ring();
    if f.is_constant() {
        return Ok(ideal.clone());
    }
    let principal = Ideal::new(ring, [f.clone()]);
    let meet = intersect(ideal, &principal)?;
    let gens = meet.gens().iter().map(|g| g.exact_div(f)).collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(ring, gens))
}

/// `I : J = ∩_g (I : g)` over the generators of `J`.
pub fn ideal_quotient<F: Field>(ideal: &Ideal<F>, by: &Ideal<F>) -> Result<Ideal<F>> {
    let mut acc: Option<Ideal<F>> = None;
    for g in by.gens() {
        let q = quotient_by_element(ideal, g)?;
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(&a, &q)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal::unit(ideal.ring())))
}

/// `I : f^∞`.
pub fn saturate_by_element<F: Field>(ideal: &Ideal<F>, f: &Poly<F>, method: SaturationMethod) -> Result<Ideal<F>> {
    assert!(!f.is_zero(), "saturation by zero");
    let ring = ideal.ring();
    if f.is_constant() {
        return Ok(ideal.clone());
    }
    match method {
        SaturationMethod::IteratedColon => {
            let mut gb = ideal.groebner();
            loop {
                if gb.is_unit() {
                    return Ok(gb.to_ideal());
                }
                let next = quotient_by_element(&gb.to_ideal(), f)?.groebner();
                if next == gb {
                    return Ok(gb.to_ideal());
                }
                gb = next;
            }
        }
        SaturationMethod::Rabinowitsch => {
            let (ext, t) = with_tag(ring, 1)?;
            let tf = ext.var(t).mul(&lift(f, &ext)).sub(&ext.one());
            let gens = ideal.gens().iter().map(|g| lift(g, &ext)).chain([tf]);
            let gb = Ideal::new(&ext, gens).groebner();
            Ok(Ideal::new(ring, drop_tag(gb.elements(), t, ring).groebner().elements().iter().cloned()))
        }
    }
}

/// `I : J^∞ = ∩_g (I : g^∞)` over the generators of `J`.
pub fn saturate<F: Field>(ideal: &Ideal<F>, by: &Ideal<F>, method: SaturationMethod) -> Result<Ideal<F>> {
    let mut acc: Option<Ideal<F>> = None;
    for g in by.gens() {
        let s = saturate_by_element(ideal, g, method)?;
        acc = Some(match acc {
            None => s,
            Some(a) => intersect(&a, &s)?,
        });
    }
    let out = acc.unwrap_or_else(|| Ideal::unit(ideal.ring()));
    Ok(out.groebner().to_ideal())
}

/// The ideal of the variables in `mask`.
pub fn irrelevant_ideal<F: Field>(ring: &Arc<PolyRing<F>>, mask: u16) -> Ideal<F> {
    Ideal::new(
        ring,
        (0..ring.nvars())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| Poly::from_terms(ring, vec![(Monomial::var(i, 1), ring.field().one())])),
    )
}

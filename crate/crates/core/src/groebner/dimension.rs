use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ops::{irrelevant_ideal, saturate, SaturationMethod};
use super::Ideal;
use crate::error::{Error, Result};
use crate::field::{Field, GENERIC_FIELD_SIZE};
use crate::poly::{Monomial, Poly};

/// Dimension and length of a (multi)projective scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SchemeMeasure {
    /// Affine Krull dimension of the defining ideal; -1 for the unit ideal.
    pub krull_dimension: i64,
    /// Length, present exactly when the scheme is nonempty and zero-dimensional.
    pub degree: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeMode {
    /// Standard monomials of a random affine chart.
    Chart,
    /// Stable value of the Hilbert function of the saturated ideal.
    Hilbert,
    /// Both, required to agree.
    #[default]
    Both,
}

/// Largest set of variables containing the support of no leading monomial.
pub fn krull_dimension_of(leading: &[Monomial], nvars: usize) -> i64 {
    if leading.iter().any(Monomial::is_one) {
        return -1;
    }
    let supports: Vec<u16> = leading.iter().map(Monomial::support).collect();
    let mut best = 0;
    for set in 0u32..(1 << nvars) {
        let set = set as u16;
        let size = set.count_ones();
        if size > best && supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    best as i64
}

fn monomials_of_degree(vars: &[usize], t: u32, prefix: Monomial, out: &mut Vec<Monomial>) {
    match vars {
        [] => {
            if t == 0 {
                out.push(prefix)
            }
        }
        [last] => out.push(prefix.mul(&Monomial::var(*last, t))),
        [first, rest @ ..] => {
            for e in 0..=t {
                monomials_of_degree(rest, t - e, prefix.mul(&Monomial::var(*first, e)), out);
            }
        }
    }
}

fn block_vars(mask: u16) -> Vec<usize> {
    (0..16).filter(|i| mask >> i & 1 == 1).collect()
}

/// Number of monomials of degree `t` in every block that no leading monomial divides.
pub fn hilbert_function(leading: &[Monomial], blocks: &[u16], t: u32) -> u64 {
    let mut cands = vec![Monomial::one()];
    for &b in blocks {
        let mut part = Vec::new();
        monomials_of_degree(&block_vars(b), t, Monomial::one(), &mut part);
        cands = cands.iter().flat_map(|c| part.iter().map(move |m| c.mul(m))).collect();
    }
    cands.iter().filter(|m| !leading.iter().any(|l| l.divides(m))).count() as u64
}

/// Number of standard monomials of a zero-dimensional affine ideal.
fn count_standard(leading: &[Monomial], nvars: usize) -> u64 {
    fn rec(leading: &[Monomial], nvars: usize, i: usize, m: Monomial) -> u64 {
        if i == nvars {
            return 1;
        }
        let mut total = 0;
        let mut cur = m;
        while !leading.iter().any(|l| l.divides(&cur)) {
            total += rec(leading, nvars, i + 1, cur);
            cur = cur.mul(&Monomial::var(i, 1));
        }
        total
    }
    rec(leading, nvars, 0, Monomial::one())
}

fn hilbert_degree<F: Field>(ideal: &Ideal<F>, blocks: &[u16]) -> Result<SchemeMeasure> {
    let ring = ideal.ring();
    let mut sat = ideal.clone();
    for &b in blocks {
        sat = saturate(&sat, &irrelevant_ideal(ring, b), SaturationMethod::IteratedColon)?;
    }
    let gb = sat.groebner();
    let krull = gb.krull_dimension();
    if krull < 0 {
        return Ok(SchemeMeasure { krull_dimension: -1, degree: None });
    }
    let proj = krull - blocks.len() as i64;
    if proj > 0 {
        return Err(Error::NotZeroDimensional(proj));
    }
    if proj < 0 {
        return Ok(SchemeMeasure { krull_dimension: krull, degree: None });
    }
    let leading = gb.leading_monomials();
    let max_lead = leading
        .iter()
        .map(|l| blocks.iter().map(|&b| l.masked_degree(b)).max().unwrap_or(0))
        .max()
        .unwrap_or(0);
    let max_gen = ideal.gens().iter().filter_map(Poly::degree).max().unwrap_or(1);
    let max_gb = gb.elements().iter().filter_map(Poly::degree).max().unwrap_or(1);
    let bound = (2 * max_gb).max(4 * max_gen).max(max_lead + 2);
    let mut history: Vec<u64> = Vec::new();
    for t in 0..=bound {
        let h = hilbert_function(&leading, blocks, t);
        history.push(h);
        let n = history.len();
        if t >= max_lead + 2 && n >= 3 && history[n - 1] == history[n - 2] && history[n - 2] == history[n - 3] {
            return Ok(SchemeMeasure { krull_dimension: krull, degree: Some(h) });
        }
    }
    Err(Error::HilbertNotStabilized(bound))
}

fn chart_degree<F: Field>(ideal: &Ideal<F>, blocks: &[u16], seed: u64) -> Result<u64> {
    let ring = ideal.ring();
    let (big, emb) = ring.field().sampling_extension(GENERIC_FIELD_SIZE, seed)?;
    let ext = ring.over(big.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens: Vec<Poly<F>> =
        ideal.gens().iter().map(|g| g.map_coeffs(&ext, |c| emb.apply(c))).collect();
    for &b in blocks {
        let vars = block_vars(b);
        let coeffs: Vec<F::Elem> = vars.iter().map(|_| big.random_generic(&mut rng)).collect();
        gens.push(ext.linear_form(&vars, &coeffs).sub(&ext.one()));
    }
    let gb = Ideal::new(&ext, gens).groebner();
    let krull = gb.krull_dimension();
    if krull < 0 {
        return Ok(0);
    }
    if krull > 0 {
        return Err(Error::NotZeroDimensional(krull));
    }
    Ok(count_standard(&gb.leading_monomials(), ring.nvars()))
}

/// Length of the zero-dimensional scheme cut out by `ideal` in the product of
/// projective spaces whose coordinates are the variable blocks `blocks`.
pub fn degree_zero_dim<F: Field>(ideal: &Ideal<F>, blocks: &[u16], mode: DegreeMode, seed: u64) -> Result<SchemeMeasure> {
    const CHART_ATTEMPTS: u64 = 3;
    let nblocks = blocks.len() as i64;
    let from_chart = |d: u64| SchemeMeasure {
        krull_dimension: if d == 0 { -1 } else { nblocks },
        degree: (d > 0).then_some(d),
    };
    match mode {
        DegreeMode::Chart => {
            let mut last = Err(Error::NotZeroDimensional(1));
            for k in 0..CHART_ATTEMPTS {
                last = chart_degree(ideal, blocks, seed.wrapping_add(k));
                if last.is_ok() {
                    break;
                }
            }
            last.map(from_chart)
        }
        DegreeMode::Hilbert => hilbert_degree(ideal, blocks),
        DegreeMode::Both => {
            let h = hilbert_degree(ideal, blocks)?;
            let target = h.degree.unwrap_or(0);
            let mut chart = 0;
            for k in 0..CHART_ATTEMPTS {
                match chart_degree(ideal, blocks, seed.wrapping_add(k)) {
                    Ok(c) if c == target => return Ok(h),
                    Ok(c) => chart = c,
                    Err(Error::NotZeroDimensional(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            Err(Error::DegreeModeMismatch { chart, hilbert: target })
        }
    }
}

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{trial_seed, working_field, PolarMap};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::groebner::{degree_zero_dim, saturate, DegreeMode, Ideal, SaturationMethod};
use crate::poly::Poly;

/// Attempts per trial before a degenerate draw is reported.
pub(crate) const ATTEMPTS: u64 = 3;

/// One random fiber of the polar map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TrialRecord {
    pub seed: u64,
    /// Coefficients of the two combinations of the partials, row by row.
    pub section_coefficients: Vec<String>,
    /// Length of the residual scheme after saturating by the base ideal.
    pub saturation_degree: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TopologicalDegree {
    pub d0: u64,
    pub unanimous: bool,
    pub working_field: FieldSpec,
    pub trials: Vec<TrialRecord>,
}

/// The value shared by a strict majority of the trials, or the most frequent
/// value when it is unique and seen at least twice.
pub(crate) fn modal_value(values: &[u64], what: &str) -> Result<(u64, bool)> {
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for &v in values {
        *counts.entry(v).or_default() += 1;
    }
    let best = counts.values().copied().max().unwrap_or(0);
    let modes: Vec<u64> = counts.iter().filter(|(_, &c)| c == best).map(|(&v, _)| v).collect();
    if modes.len() != 1 || (values.len() > 1 && best < 2) {
        return Err(Error::Inconclusive(format!("{what}: trial values {values:?}")));
    }
    Ok((modes[0], counts.len() == 1))
}

/// Runs `attempt(seed)` with fresh seeds while the draw is degenerate.
pub(crate) fn with_retries<T>(seed: u64, mut attempt: impl FnMut(u64) -> Result<T>) -> Result<(u64, T)> {
    let mut last = None;
    for a in 0..ATTEMPTS {
        let s = if a == 0 { seed } else { trial_seed(seed, 1000 + a) };
        match attempt(s) {
            Ok(v) => return Ok((s, v)),
            Err(e @ Error::NotZeroDimensional(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.unwrap())
}

fn one_fiber<F: Field>(base: &Ideal<F>, partials: &[Poly<F>], seed: u64) -> Result<TrialRecord> {
    let ring = base.ring();
    let field = ring.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<Vec<F::Elem>> =
        (0..2).map(|_| (0..3).map(|_| field.random_generic(&mut rng)).collect()).collect();
    let combos = coeffs.iter().map(|row| {
        row.iter().zip(partials).fold(ring.zero(), |acc, (c, p)| acc.add(&p.scale(c)))
    });
    let fiber = saturate(&Ideal::new(ring, combos), base, SaturationMethod::IteratedColon)?;
    let degree = if fiber.groebner().is_unit() {
        0
    } else {
        degree_zero_dim(&fiber, &[0b111], DegreeMode::Both, seed)?.degree.unwrap_or(0)
    };
    Ok(TrialRecord {
        seed,
        section_coefficients: coeffs.iter().flatten().map(|c| field.display(c)).collect(),
        saturation_degree: degree,
    })
}

/// Number of points of a generic fiber of the polar map, counted with
/// multiplicity: the residual of two generic combinations of the partials
/// after removing the base scheme. Coefficients are drawn from a field with
/// at least `GENERIC_FIELD_SIZE` elements.
pub fn topological_degree<F: Field>(pm: &PolarMap<F>, trials: usize, seed: u64) -> Result<TopologicalDegree> {
    let (big, emb) = working_field(pm.f().field())?;
    let ring = pm.ring().over(big.clone());
    let partials: Vec<Poly<F>> = pm.partials().iter().map(|p| p.map_coeffs(&ring, |c| emb.apply(c))).collect();
    let base = Ideal::new(&ring, partials.iter().cloned());
    let mut records = Vec::new();
    for k in 0..trials.max(1) as u64 {
        let (_, rec) = with_retries(trial_seed(seed, k), |s| one_fiber(&base, &partials, s))?;
        log::debug!("fiber trial {k}: seed {} degree {}", rec.seed, rec.saturation_degree);
        records.push(rec);
    }
    let values: Vec<u64> = records.iter().map(|r| r.saturation_degree).collect();
    let (d0, unanimous) = modal_value(&values, "topological degree")?;
    Ok(TopologicalDegree { d0, unanimous, working_field: big.spec(), trials: records })
}

use std::collections::BTreeMap;
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{algebraic_d0, classify_profile, near_pencil_test, singularity_profile, Classification, LineArrangement};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Gf};
use crate::poly::PolyRing;
use crate::polar::trial_seed;

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub d_min: usize,
    pub d_max: usize,
    /// Subsets per `d` checked against the algebraic topological degree.
    pub sample_algebraic: usize,
    pub seed: u64,
    pub trials: usize,
    /// Largest number of subsets enumerated in one sweep.
    pub budget: u128,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { d_min: 4, d_max: 4, sample_algebraic: 0, seed: 0, trials: 2, budget: 1_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepRow {
    pub d: usize,
    /// Indices into the line list of the plane.
    pub subset: Vec<usize>,
    pub t: String,
    pub near_pencil: bool,
    pub classification: Classification,
    pub d0: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SampleCheck {
    pub subset: Vec<usize>,
    pub combinatorial: Option<i64>,
    pub algebraic: u64,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProfileBucket {
    pub t: String,
    pub classification: Classification,
    pub d0: Option<i64>,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepSummary {
    pub d: usize,
    pub subsets: usize,
    pub homaloidal: usize,
    pub near_pencils: usize,
    /// Every subset classified homaloidal has `d0 = 1` and conversely.
    pub classification_matches_d0: bool,
    pub homaloidal_subsets: Vec<Vec<usize>>,
    pub buckets: Vec<ProfileBucket>,
    pub samples: Vec<SampleCheck>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepReport {
    pub field: FieldSpec,
    pub plane_lines: Vec<String>,
    pub seed: u64,
    pub summaries: Vec<SweepSummary>,
    #[serde(skip)]
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn all_samples_agree(&self) -> bool {
        self.summaries.iter().all(|s| s.samples.iter().all(|c| c.agree))
    }
}

/// Lines of `PG(2, q)` as coefficient vectors with first nonzero entry 1.
fn plane_lines(field: &Gf) -> Vec<[u32; 3]> {
    let (zero, one) = (field.zero(), field.one());
    let mut out = Vec::new();
    for b in field.elements() {
        for c in field.elements() {
            out.push([one, b, c]);
        }
    }
    for c in field.elements() {
        out.push([zero, one, c]);
    }
    out.push([zero, zero, one]);
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut c: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Classifies every `d`-subset of the lines of the finite plane over `field`
/// and cross-checks a seeded sample against the algebraic pipeline.
pub fn sweep_projective_plane(field: &Gf, opts: &SweepOptions) -> Result<SweepReport> {
    let ring = PolyRing::plane(field.clone());
    let lines = plane_lines(field);
    let n = lines.len();
    if opts.d_min < 3 || opts.d_min > opts.d_max || opts.d_max > n {
        return Err(Error::InvalidArrangement(format!(
            "line counts {}..={} outside 3..={n}",
            opts.d_min, opts.d_max
        )));
    }
    let count: u128 = (opts.d_min..=opts.d_max).map(|d| binomial(n, d)).sum();
    if count > opts.budget {
        return Err(Error::BudgetExceeded { count, limit: opts.budget });
    }
    let p = field.characteristic();
    let arrangement = |subset: &[usize]| {
        LineArrangement::new(&ring, subset.iter().map(|&i| lines[i]).collect()).expect("plane lines are distinct")
    };
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for d in opts.d_min..=opts.d_max {
        let subsets = combinations(n, d);
        let batch: Vec<SweepRow> = subsets
            .par_iter()
            .map(|s| {
                let profile = singularity_profile(&arrangement(s));
                let (classification, d0) = classify_profile(&profile, p);
                SweepRow {
                    d,
                    subset: s.clone(),
                    t: profile.t_string(),
                    near_pencil: near_pencil_test(&profile).near_pencil,
                    classification,
                    d0,
                }
            })
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(opts.seed, d as u64));
        let picks = rand::seq::index::sample(&mut rng, batch.len(), opts.sample_algebraic.min(batch.len())).into_vec();
        let samples: Vec<SampleCheck> = picks
            .par_iter()
            .map(|&i| {
                let row = &batch[i];
                let algebraic = algebraic_d0(&arrangement(&row.subset), opts.trials, trial_seed(opts.seed, i as u64))?;
                Ok(SampleCheck {
                    subset: row.subset.clone(),
                    combinatorial: row.d0,
                    algebraic,
                    agree: algebraic as i64 == row.d0.unwrap_or(0),
                })
            })
            .collect::<Result<_>>()?;
        let mut buckets: BTreeMap<(String, Classification, Option<i64>), usize> = BTreeMap::new();
        for r in &batch {
            *buckets.entry((r.t.clone(), r.classification, r.d0)).or_default() += 1;
        }
        let homaloidal_subsets: Vec<Vec<usize>> =
            batch.iter().filter(|r| r.classification.is_homaloidal()).map(|r| r.subset.clone()).collect();
        summaries.push(SweepSummary {
            d,
            subsets: batch.len(),
            homaloidal: homaloidal_subsets.len(),
            near_pencils: batch.iter().filter(|r| r.near_pencil).count(),
            classification_matches_d0: batch.iter().all(|r| r.classification.is_homaloidal() == (r.d0 == Some(1))),
            homaloidal_subsets,
            buckets: buckets
                .into_iter()
                .map(|((t, classification, d0), count)| ProfileBucket { t, classification, d0, count })
                .collect(),
            samples,
        });
        rows.extend(batch);
    }
    Ok(SweepReport {
        field: field.spec(),
        plane_lines: lines.iter().map(|l| ring.linear_form(&[0, 1, 2], l).to_string()).collect(),
        seed: opts.seed,
        summaries,
        rows,
    })
}

#[derive(Serialize)]
struct CsvRow<'a> {
    d: usize,
    subset: String,
    t: &'a str,
    near_pencil: bool,
    classification: String,
    d0: Option<i64>,
}

/// One line per subset: `d,subset,t,near_pencil,classification,d0`.
pub fn write_sweep_csv<W: Write>(report: &SweepReport, out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in &report.rows {
        w.serialize(CsvRow {
            d: r.d,
            subset: r.subset.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "),
            t: &r.t,
            near_pencil: r.near_pencil,
            classification: r.classification.to_string(),
            d0: r.d0,
        })?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_line_counts() {
        assert_eq!(plane_lines(&Gf::prime(3).unwrap()).len(), 13);
        assert_eq!(plane_lines(&Gf::new(2, 2, 0).unwrap()).len(), 21);
        assert_eq!(combinations(13, 4).len(), 715);
        assert_eq!(binomial(13, 5), 1287);
    }

    #[test]
    fn fano_plane() {
        let opts = SweepOptions { d_min: 7, d_max: 7, ..Default::default() };
        let r = sweep_projective_plane(&Gf::prime(2).unwrap(), &opts).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0].t, "t3=7");
        assert_eq!(r.rows[0].d0, Some(8));
        assert_eq!(r.rows[0].classification, Classification::NotHomaloidal);
    }

    #[test]
    fn gf3_four_lines() {
        let opts = SweepOptions { d_min: 4, d_max: 4, sample_algebraic: 3, seed: 9, ..Default::default() };
        let r = sweep_projective_plane(&Gf::prime(3).unwrap(), &opts).unwrap();
        let s = &r.summaries[0];
        assert_eq!(s.subsets, 715);
        assert_eq!(s.homaloidal, s.near_pencils);
        assert!(s.classification_matches_d0);
        assert!(r.all_samples_agree());
        let mut csv = Vec::new();
        write_sweep_csv(&r, &mut csv).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap().lines().count(), 716);
    }

    #[test]
    fn budget_is_enforced() {
        let opts = SweepOptions { d_min: 5, d_max: 6, budget: 1000, ..Default::default() };
        assert!(matches!(
            sweep_projective_plane(&Gf::prime(3).unwrap(), &opts),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}

//! Line arrangements: singular points, the multiplicity formula for the
//! topological degree, near-pencils and the homaloidal classification.

mod sweep;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{parse_poly, Monomial, Poly, PolyRing};
use crate::polar::{polar_map, topological_degree};

pub use sweep::{sweep_projective_plane, write_sweep_csv, SampleCheck, SweepOptions, SweepReport, SweepRow, SweepSummary};

/// `d >= 3` pairwise distinct lines of the plane.
#[derive(Clone, Debug)]
pub struct LineArrangement<F: Field> {
    ring: Arc<PolyRing<F>>,
    lines: Vec<[F::Elem; 3]>,
}

fn cross<F: Field>(field: &F, a: &[F::Elem; 3], b: &[F::Elem; 3]) -> [F::Elem; 3] {
    let m = |i: usize, j: usize| field.sub(&field.mul(&a[i], &b[j]), &field.mul(&a[j], &b[i]));
    [m(1, 2), m(2, 0), m(0, 1)]
}

/// Scales so that the first nonzero coordinate is 1; `None` for the zero vector.
fn normalize<F: Field>(field: &F, v: [F::Elem; 3]) -> Option<[F::Elem; 3]> {
    let lead = v.iter().find(|c| !field.is_zero(c))?;
    let inv = field.inv(lead);
    Some([field.mul(&v[0], &inv), field.mul(&v[1], &inv), field.mul(&v[2], &inv)])
}

fn dot<F: Field>(field: &F, a: &[F::Elem; 3], b: &[F::Elem; 3]) -> F::Elem {
    (0..3).fold(field.zero(), |acc, i| field.add(&acc, &field.mul(&a[i], &b[i])))
}

impl<F: Field> LineArrangement<F> {
    /// Lines given by coefficient vectors `(a0, a1, a2)` of `a0 x0 + a1 x1 + a2 x2`.
    pub fn new(ring: &Arc<PolyRing<F>>, lines: Vec<[F::Elem; 3]>) -> Result<Self> {
        if ring.nvars() != 3 {
            return Err(Error::InvalidArrangement("lines live in a ring with three variables".into()));
        }
        if lines.len() < 3 {
            return Err(Error::InvalidArrangement(format!("need at least 3 lines, got {}", lines.len())));
        }
        let field = ring.field();
        let mut lines_n = Vec::with_capacity(lines.len());
        for l in lines {
            lines_n.push(normalize(field, l).ok_or_else(|| Error::InvalidArrangement("zero linear form".into()))?);
        }
        for i in 0..lines_n.len() {
            for j in 0..i {
                if lines_n[i] == lines_n[j] {
                    return Err(Error::InvalidArrangement(format!("lines {j} and {i} coincide")));
                }
            }
        }
        Ok(LineArrangement { ring: ring.clone(), lines: lines_n })
    }

    pub fn from_polys(polys: &[Poly<F>]) -> Result<Self> {
        let ring = polys.first().ok_or_else(|| Error::InvalidArrangement("no lines".into()))?.ring().clone();
        let mut lines = Vec::new();
        for p in polys {
            if p.degree() != Some(1) || !p.is_homogeneous() {
                return Err(Error::InvalidArrangement(format!("`{p}` is not a linear form")));
            }
            lines.push([0, 1, 2].map(|i| p.coeff(&Monomial::var(i, 1))));
        }
        Self::new(&ring, lines)
    }

    /// Parses `"x0; x1; x0+x1; x2"`.
    pub fn parse(ring: &Arc<PolyRing<F>>, text: &str) -> Result<Self> {
        let polys = text
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| parse_poly(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Self::from_polys(&polys)
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn d(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[[F::Elem; 3]] {
        &self.lines
    }

    pub fn line_polys(&self) -> Vec<Poly<F>> {
        self.lines.iter().map(|l| self.ring.linear_form(&[0, 1, 2], l)).collect()
    }

    /// The product of the lines.
    pub fn polynomial(&self) -> Poly<F> {
        self.line_polys().iter().fold(self.ring.one(), |acc, l| acc.mul(l))
    }
}

/// Singular points with their fold numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityProfile {
    /// Points as strings `(a:b:c)` with the first nonzero coordinate 1, and fold numbers.
    pub points: Vec<(String, usize)>,
    /// `r -> t_r`.
    pub t: BTreeMap<usize, usize>,
    pub d: usize,
    pub concurrent: bool,
}

impl SingularityProfile {
    pub fn t(&self, r: usize) -> usize {
        self.t.get(&r).copied().unwrap_or(0)
    }

    pub fn sum_tr(&self) -> usize {
        self.t.values().sum()
    }

    /// `t_2, ..., t_d` as `t2=..;t3=..`, omitting zeros.
    pub fn t_string(&self) -> String {
        self.t.iter().map(|(r, c)| format!("t{r}={c}")).collect::<Vec<_>>().join(";")
    }
}

/// Points of intersection of the lines.
pub fn singularity_profile<F: Field>(arr: &LineArrangement<F>) -> SingularityProfile {
    let field = arr.ring.field();
    let lines = &arr.lines;
    let mut points: Vec<[F::Elem; 3]> = Vec::new();
    for i in 0..lines.len() {
        for j in 0..i {
            let z = normalize(field, cross(field, &lines[i], &lines[j])).expect("distinct lines meet in a point");
            if !points.contains(&z) {
                points.push(z);
            }
        }
    }
    let folds: Vec<usize> =
        points.iter().map(|z| lines.iter().filter(|l| field.is_zero(&dot(field, l, z))).count()).collect();
    let mut t = BTreeMap::new();
    for &r in &folds {
        *t.entry(r).or_insert(0) += 1;
    }
    let d = lines.len();
    let pairs: usize = t.iter().map(|(r, c)| c * r * (r - 1) / 2).sum();
    assert_eq!(pairs, d * (d - 1) / 2, "every pair of lines meets exactly once");
    SingularityProfile {
        points: points
            .iter()
            .zip(&folds)
            .map(|(z, &r)| (format!("({})", z.iter().map(|c| field.display(c)).collect::<Vec<_>>().join(":")), r))
            .collect(),
        concurrent: t.get(&d) == Some(&1),
        t,
        d,
    }
}

/// Multiplicity of the base scheme of the polar map at an `r`-fold point.
pub fn multiplicity_mz(r: usize, p: u64) -> u64 {
    assert!(r >= 2);
    let r = r as u64;
    if p > 0 && r % p == 0 {
        (r - 1).pow(2) + (r - 2)
    } else {
        (r - 1).pow(2)
    }
}

/// True when `p | d`: the Euler relation is then a linear syzygy of the
/// partials, and the base locus may contain points off the arrangement.
pub fn euler_syzygy(d: usize, p: u64) -> bool {
    p > 0 && d as u64 % p == 0
}

/// Topological degree from the singularity profile: `(d - 1)^2 - sum of m_z`
/// over the singular points, except when `p | d`. In that case the partials
/// have the linear syzygy `(x0, x1, x2)`, the syzygy module is free with
/// column degrees `(1, d - 2)` and the map is of linear type, so `d0 = d - 2`.
pub fn combinatorial_d0(profile: &SingularityProfile, p: u64) -> Result<i64> {
    if profile.concurrent {
        return Err(Error::ConcurrentArrangement);
    }
    let d = profile.d as i64;
    if euler_syzygy(profile.d, p) {
        return Ok(d - 2);
    }
    let total: i64 = profile.t.iter().map(|(&r, &c)| c as i64 * multiplicity_mz(r, p) as i64).sum();
    let d0 = (d - 1).pow(2) - total;
    if profile.t.keys().all(|&r| r == 2 || (p > 0 && r as u64 % p == 0)) {
        let alt = 1 + profile.sum_tr() as i64 - d;
        assert_eq!(d0, alt, "multiplicity sum disagrees with the t_r count");
    }
    Ok(d0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NearPencilTest {
    pub near_pencil: bool,
    pub sum_tr: usize,
    pub sum_tr_equals_d: bool,
}

/// `t_{d-1} = 1` and `t_2 = d - 1` with nothing else; for `d = 3`, `t_2 = 3`.
pub fn near_pencil_test(profile: &SingularityProfile) -> NearPencilTest {
    let d = profile.d;
    let near_pencil = if d == 3 {
        profile.t(2) == 3 && profile.t.len() == 1
    } else {
        profile.t(d - 1) == 1 && profile.t(2) == d - 1 && profile.t.len() == 2
    };
    let sum_tr = profile.sum_tr();
    NearPencilTest { near_pencil, sum_tr, sum_tr_equals_d: sum_tr == d }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Triangle,
    NearPencilHomaloidal,
    NotHomaloidal,
    NotDominant,
}

impl Classification {
    pub fn is_homaloidal(self) -> bool {
        matches!(self, Classification::Triangle | Classification::NearPencilHomaloidal)
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::Triangle => "triangle",
            Classification::NearPencilHomaloidal => "near-pencil-homaloidal",
            Classification::NotHomaloidal => "not-homaloidal",
            Classification::NotDominant => "not-dominant",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CombinatorialVerdict {
    pub d0_combinatorial: Option<i64>,
    pub near_pencil: bool,
    pub sum_tr: usize,
    /// `p | d`, so `d0 = d - 2` by the Euler syzygy.
    pub euler_syzygy: bool,
    pub classification: Classification,
    pub profile: SingularityProfile,
    /// Topological degree of the polar map of the product of the lines, when cross-checked.
    pub d0_algebraic: Option<u64>,
}

/// Homaloidal line arrangements are the triangle and the near-pencils of
/// `n + 1` lines with `p | n`.
pub fn classify_profile(profile: &SingularityProfile, p: u64) -> (Classification, Option<i64>) {
    if profile.concurrent {
        return (Classification::NotDominant, None);
    }
    let d0 = combinatorial_d0(profile, p).expect("not concurrent");
    let class = if profile.d == 3 {
        Classification::Triangle
    } else if near_pencil_test(profile).near_pencil && p > 0 && (profile.d as u64 - 1) % p == 0 {
        Classification::NearPencilHomaloidal
    } else {
        Classification::NotHomaloidal
    };
    (class, Some(d0))
}

/// Algebraic topological degree of the polar map of the arrangement, 0 when not dominant.
pub fn algebraic_d0<F: Field>(arr: &LineArrangement<F>, trials: usize, seed: u64) -> Result<u64> {
    let pm = polar_map(&arr.polynomial())?;
    Ok(topological_degree(&pm, trials, seed)?.d0)
}

/// Classification of the arrangement over its field. With `cross_check =
/// Some((trials, seed))` the algebraic topological degree must agree with the
/// combinatorial one (0 for concurrent arrangements).
pub fn classify_arrangement<F: Field>(arr: &LineArrangement<F>, cross_check: Option<(usize, u64)>) -> Result<CombinatorialVerdict> {
    let p = arr.ring.field().characteristic();
    let profile = singularity_profile(arr);
    let (classification, d0) = classify_profile(&profile, p);
    let np = near_pencil_test(&profile);
    let mut d0_algebraic = None;
    if let Some((trials, seed)) = cross_check {
        let alg = algebraic_d0(arr, trials, seed)?;
        if alg as i64 != d0.unwrap_or(0) {
            return Err(Error::CrossCheckMismatch(format!(
                "arrangement {}: combinatorial d0 {:?}, algebraic d0 {alg}",
                arr.polynomial(),
                d0
            )));
        }
        d0_algebraic = Some(alg);
    }
    Ok(CombinatorialVerdict {
        d0_combinatorial: d0,
        near_pencil: np.near_pencil,
        sum_tr: np.sum_tr,
        euler_syzygy: euler_syzygy(profile.d, p),
        classification,
        profile,
        d0_algebraic,
    })
}

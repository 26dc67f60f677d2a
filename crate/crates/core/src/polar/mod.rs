//! Polar maps: base locus, topological degree, projective degrees of the graph.

mod graph;
mod topological;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, GENERIC_FIELD_SIZE};
use crate::groebner::Ideal;
use crate::poly::{Poly, PolyRing};
use crate::syzygy::{minimal_presentation, NaiveDegrees, PresentationMatrix};

pub use graph::{graph_multidegree_via_sections, GraphDegrees, SectionTrial};
pub use topological::{topological_degree, TopologicalDegree, TrialRecord};

/// Default number of independent generic trials.
pub const DEFAULT_TRIALS: usize = 3;

/// Seed of trial `k` derived from a base seed.
pub fn trial_seed(seed: u64, k: u64) -> u64 {
    let mut z = seed ^ k.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The rational map of the plane given by the partial derivatives of `f`.
#[derive(Clone, Debug)]
pub struct PolarMap<F: Field> {
    f: Poly<F>,
    partials: Vec<Poly<F>>,
}

/// Builds the polar map of a form of degree at least 2 in three variables.
pub fn polar_map<F: Field>(f: &Poly<F>) -> Result<PolarMap<F>> {
    if f.ring().nvars() != 3 {
        return Err(Error::TooManyVariables(f.ring().nvars()));
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if f.degree().unwrap_or(0) < 2 {
        return Err(Error::DegreeTooSmall);
    }
    let partials: Vec<Poly<F>> = (0..3).map(|i| f.derivative(i)).collect();
    if partials.iter().all(Poly::is_zero) {
        return Err(Error::UndefinedMap);
    }
    Ok(PolarMap { f: f.clone(), partials })
}

impl<F: Field> PolarMap<F> {
    pub fn f(&self) -> &Poly<F> {
        &self.f
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        self.f.ring()
    }

    pub fn partials(&self) -> &[Poly<F>] {
        &self.partials
    }

    pub fn degree(&self) -> u32 {
        self.f.degree().unwrap()
    }

    /// The base ideal generated by the partials.
    pub fn base_ideal(&self) -> Ideal<F> {
        Ideal::new(self.ring(), self.partials.iter().cloned())
    }

    /// The base locus has no curve component, i.e. the partials have no common factor.
    pub fn fixed_component_free(&self) -> bool {
        self.base_ideal().groebner().krull_dimension() <= 1
    }

    pub fn presentation(&self) -> Result<PresentationMatrix<F>> {
        minimal_presentation(&self.partials)
    }

    /// `(d0, deg f - 1, [d0 >= 1])` from the topological degree.
    pub fn projective_degrees(&self, trials: usize, seed: u64) -> Result<(MultiDegree, TopologicalDegree)> {
        let top = topological_degree(self, trials, seed)?;
        let d0 = top.d0;
        let md = MultiDegree {
            d0,
            d1: self.degree() as u64 - 1,
            d2: u64::from(d0 >= 1),
            trials: top.trials.len(),
            unanimous: top.unanimous,
        };
        Ok((md, top))
    }
}

/// Projective degrees of a codimension-2 subscheme of the product of two planes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MultiDegree {
    pub d0: u64,
    pub d1: u64,
    pub d2: u64,
    /// Number of random trials behind `d0`.
    pub trials: usize,
    pub unanimous: bool,
}

impl MultiDegree {
    pub fn triple(&self) -> (u64, u64, u64) {
        (self.d0, self.d1, self.d2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Homaloidal,
    NotDominant,
    FixedComponent,
    DegreeGtOne,
    UndefinedMap,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Homaloidal => "homaloidal",
            Verdict::NotDominant => "not-dominant",
            Verdict::FixedComponent => "fixed-component",
            Verdict::DegreeGtOne => "degree-gt-one",
            Verdict::UndefinedMap => "undefined-map",
        })
    }
}

/// Triple of integers as reported for naive, graph and torsion degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeTriple {
    pub d0: i64,
    pub d1: i64,
    pub d2: i64,
}

impl From<NaiveDegrees> for DegreeTriple {
    fn from(n: NaiveDegrees) -> Self {
        DegreeTriple { d0: n.d0, d1: n.d1, d2: n.d2 }
    }
}

impl DegreeTriple {
    pub fn new(d0: i64, d1: i64, d2: i64) -> Self {
        DegreeTriple { d0, d1, d2 }
    }

    pub fn tuple(&self) -> (i64, i64, i64) {
        (self.d0, self.d1, self.d2)
    }
}

/// Certificate of the homaloidal test.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HomaloidalVerdict {
    pub field: FieldSpec,
    pub f: String,
    pub partials: Vec<String>,
    pub fixed_component_free: bool,
    pub dominant: bool,
    pub multidegree: Option<MultiDegree>,
    pub naive: Option<DegreeTriple>,
    pub graph: Option<DegreeTriple>,
    pub torsion: Option<DegreeTriple>,
    /// Field the generic coefficients were drawn from.
    pub working_field: Option<FieldSpec>,
    pub trials: Vec<TrialRecord>,
    pub verdict: Verdict,
}

impl HomaloidalVerdict {
    fn early<F: Field>(field: &F, f: &Poly<F>, partials: Vec<String>, verdict: Verdict) -> Self {
        HomaloidalVerdict {
            field: field.spec(),
            f: f.to_string(),
            partials,
            fixed_component_free: false,
            dominant: false,
            multidegree: None,
            naive: None,
            graph: None,
            torsion: None,
            working_field: None,
            trials: Vec::new(),
            verdict,
        }
    }
}

/// Full pipeline: polar map, fixed components, projective degrees, verdict.
/// When the partials admit a 3x2 presentation, the graph degrees from linear
/// sections are computed as well and must agree with the fiber computation.
pub fn is_homaloidal<F: Field>(f: &Poly<F>, trials: usize, seed: u64) -> Result<HomaloidalVerdict> {
    let field = f.field().clone();
    let pm = match polar_map(f) {
        Err(Error::UndefinedMap) => {
            let partials = (0..3).map(|i| f.derivative(i).to_string()).collect();
            return Ok(HomaloidalVerdict::early(&field, f, partials, Verdict::UndefinedMap));
        }
        other => other?,
    };
    let partials: Vec<String> = pm.partials().iter().map(|p| p.to_string()).collect();
    if !pm.fixed_component_free() {
        return Ok(HomaloidalVerdict::early(&field, f, partials, Verdict::FixedComponent));
    }
    let (md, top) = pm.projective_degrees(trials, seed)?;
    let presentation = pm.presentation()?;
    let mut out = HomaloidalVerdict {
        field: field.spec(),
        f: f.to_string(),
        partials,
        fixed_component_free: true,
        dominant: md.d0 >= 1,
        multidegree: Some(md),
        naive: None,
        graph: None,
        torsion: None,
        working_field: Some(top.working_field.clone()),
        trials: top.trials.clone(),
        verdict: match md.d0 {
            0 => Verdict::NotDominant,
            1 => Verdict::Homaloidal,
            _ => Verdict::DegreeGtOne,
        },
    };
    if presentation.ncols() == 2 && presentation.column_degrees().iter().all(|&d| d >= 1) {
        let g = graph_multidegree_via_sections(&presentation, trials, seed)?;
        cross_check(&md, &g)?;
        out.naive = Some(g.naive);
        out.graph = Some(g.graph);
        out.torsion = Some(g.torsion);
    }
    Ok(out)
}

/// The fiber computation and the graph sections must give the same `d0`, `d1`.
pub fn cross_check(md: &MultiDegree, g: &GraphDegrees) -> Result<()> {
    if g.graph.d0 != md.d0 as i64 || g.graph.d1 != md.d1 as i64 {
        return Err(Error::CrossCheckMismatch(format!(
            "fiber saturation gives ({}, {}, {}), graph sections give ({}, {}, {})",
            md.d0, md.d1, md.d2, g.graph.d0, g.graph.d1, g.graph.d2
        )));
    }
    Ok(())
}

/// A field with at least `GENERIC_FIELD_SIZE` elements containing `field`.
pub(crate) fn working_field<F: Field>(field: &F) -> Result<(F, crate::field::Embedding<F>)> {
    field.sampling_extension(GENERIC_FIELD_SIZE, 0)
}

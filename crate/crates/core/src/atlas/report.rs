use std::fmt;
use std::time::Instant;

use serde::Serialize;

use super::{AnyPoly, FamilySpec};
use crate::error::Error;
use crate::field::{Field, FieldSpec};
use crate::polar::{is_homaloidal, polar_map, HomaloidalVerdict, Verdict, DEFAULT_TRIALS};
use crate::poly::Poly;
use crate::syzygy::{minimal_presentation, torsion_hypotheses, FittingPattern, PresentationSummary, TorsionHypotheses};

/// Bumped whenever the report layout changes.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    pub trials: usize,
    pub seed: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { trials: DEFAULT_TRIALS, seed: 0 }
    }
}

/// A failure together with the pipeline stage that raised it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageError {
    pub stage: &'static str,
    pub error: Error,
}

impl fmt::Display for StageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.stage, self.error)
    }
}

impl std::error::Error for StageError {}

fn at(stage: &'static str) -> impl Fn(Error) -> StageError {
    move |error| StageError { stage, error }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub schema_version: &'static str,
    pub family: Option<FamilySpec>,
    pub field: FieldSpec,
    pub polynomial: String,
    pub seed: u64,
    pub trials: usize,
    pub presentation: Option<PresentationSummary>,
    pub fitting: Option<FittingPattern>,
    pub torsion_hypotheses: Option<TorsionHypotheses>,
    pub certificate: HomaloidalVerdict,
    pub verdict: Verdict,
    /// Wall-clock time; the only field that varies between identical runs.
    pub timing_ms: u64,
}

impl AnalysisReport {
    /// The report as JSON with the timing field removed.
    pub fn stable_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().unwrap().remove("timingMs");
        v
    }
}

/// Polar map, fixed components, presentation, torsion hypotheses, projective
/// degrees, graph-section cross-check and verdict for one form.
pub fn analyze<F: Field>(f: &Poly<F>, family: Option<FamilySpec>, opts: AnalyzeOptions) -> Result<AnalysisReport, StageError> {
    let start = Instant::now();
    let defined = match polar_map(f) {
        Ok(_) => true,
        Err(Error::UndefinedMap) => false,
        Err(e) => return Err(at("polar-map")(e)),
    };
    let mut presentation = None;
    let mut fitting = None;
    let mut hypotheses = None;
    if defined {
        let partials: Vec<Poly<F>> = (0..3).map(|i| f.derivative(i)).collect();
        let m = minimal_presentation(&partials).map_err(at("presentation"))?;
        if m.ncols() == 2 {
            fitting = Some(m.fitting_ideal().pattern);
            hypotheses = Some(torsion_hypotheses(&m, None).map_err(at("torsion-hypotheses"))?);
        }
        presentation = Some(m.summary());
    }
    let certificate = is_homaloidal(f, opts.trials, opts.seed).map_err(at("projective-degrees"))?;
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        family,
        field: f.field().spec(),
        polynomial: f.to_string(),
        seed: opts.seed,
        trials: opts.trials,
        presentation,
        fitting,
        torsion_hypotheses: hypotheses,
        verdict: certificate.verdict,
        certificate,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn analyze_any(f: &AnyPoly, family: Option<FamilySpec>, opts: AnalyzeOptions) -> Result<AnalysisReport, StageError> {
    match f {
        AnyPoly::Rational(p) => analyze(p, family, opts),
        AnyPoly::Finite(p) => analyze(p, family, opts),
    }
}

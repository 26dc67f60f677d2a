use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use homaloidal::arrangements::{classify_arrangement, sweep_projective_plane, write_sweep_csv, LineArrangement, SweepOptions};
use homaloidal::atlas::{analyze_any, family_make, AnalysisReport, AnalyzeOptions, AnyPoly, FamilyName, FamilySpec, StageError};
use homaloidal::field::{AnyField, Field, FieldSpec};
use homaloidal::poly::{parse_poly, PolyRing};
use homaloidal::syzygy::{minimal_presentation, torsion_hypotheses};
use homaloidal::Error;

#[derive(Parser)]
#[command(name = "homaloidal", version, about = "Polar maps of plane curves: projective degrees, torsion, homaloidal test")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Coefficient field: 0 for QQ, p, or p:e for GF(p^e)
    #[arg(long, global = true, default_value = "0")]
    field: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Independent generic trials per degree
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,
    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to a file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Trace the computation on stderr
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis of a ternary form
    Analyze {
        #[arg(long)]
        poly: String,
    },
    /// Build and analyze a named family member
    Family {
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: Option<u32>,
        /// Fail instead of moving to an extension field
        #[arg(long)]
        no_extend: bool,
    },
    /// Classify a line arrangement
    Arrangement {
        /// Linear forms separated by `;`
        #[arg(long)]
        lines: String,
        /// Compare with the algebraic topological degree
        #[arg(long)]
        cross_check: bool,
    },
    /// Classify all d-subsets of the lines of a finite plane
    Sweep {
        /// Line count d, or a range such as 4..5
        #[arg(long)]
        lines: String,
        /// Subsets per d checked algebraically
        #[arg(long, default_value_t = 0)]
        sample: usize,
        /// Write one CSV row per subset
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u128,
    },
    /// Minimal presentation of the partials
    Syzygy {
        #[arg(long)]
        poly: String,
    },
}

enum Failure {
    Math(String, bool),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let inconsistent = e.is_inconsistency();
        Failure::Math(e.to_string(), inconsistent)
    }
}

impl From<StageError> for Failure {
    fn from(e: StageError) -> Self {
        let inconsistent = e.error.is_inconsistency();
        Failure::Math(e.to_string(), inconsistent)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit(global: &Global, text: String) -> Result<(), Failure> {
    match &global.out {
        Some(path) => File::create(path)?.write_all(text.as_bytes())?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn triple(t: &Option<impl Serialize>) -> String {
    match t {
        Some(v) => {
            let v = serde_json::to_value(v).unwrap();
            format!("({}, {}, {})", v["d0"], v["d1"], v["d2"])
        }
        None => "-".to_string(),
    }
}

fn matrix_text(entries: &[Vec<String>]) -> String {
    let cols = entries.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols).map(|c| entries.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
    entries
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            format!("  [ {} ]\n", cells.join("  "))
        })
        .collect()
}

fn report_text(r: &AnalysisReport) -> String {
    let c = &r.certificate;
    let mut s = format!("field: {}\nf = {}\n", r.field, r.polynomial);
    if let Some(fam) = &r.family {
        s += &format!("family: {}{}\n", fam.name, fam.n.map(|n| format!(" n={n}")).unwrap_or_default());
    }
    if let Some(p) = &r.presentation {
        s += "presentation:\n";
        s += &matrix_text(&p.entries);
        s += &format!("column degrees: {:?}\n", p.column_degrees);
    }
    if let Some(f) = &r.fitting {
        s += &format!("Fitting ideal: radical {}\n", f.radical.as_deref().unwrap_or("-"));
    }
    if let Some(t) = &r.torsion_hypotheses {
        s += &format!("torsion hypotheses on {:?}: {}\n", t.pair, if t.passes() { "pass" } else { "fail" });
    }
    s += &format!("fixed-component free: {}\n", c.fixed_component_free);
    s += &format!("multidegree: {}\n", triple(&c.multidegree));
    s += &format!("naive: {}  graph: {}  torsion: {}\n", triple(&c.naive), triple(&c.graph), triple(&c.torsion));
    s += &format!("verdict: {}\n", r.verdict);
    s
}

fn options(g: &Global) -> AnalyzeOptions {
    AnalyzeOptions { trials: g.trials, seed: g.seed }
}

fn field_of(g: &Global) -> Result<FieldSpec, Failure> {
    FieldSpec::parse(&g.field, g.seed).map_err(|e| Failure::Usage(e.to_string()))
}

fn analyze_cmd(g: &Global, poly: &str) -> Result<(), Failure> {
    let f = AnyPoly::parse(&field_of(g)?, poly).map_err(|e| Failure::Usage(e.to_string()))?;
    let r = analyze_any(&f, None, options(g))?;
    emit(g, if g.json { json(&r) } else { report_text(&r) })
}

fn family_cmd(g: &Global, name: &str, n: Option<u32>, no_extend: bool) -> Result<(), Failure> {
    let name: FamilyName = name.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let mut spec = FamilySpec::new(name, n, field_of(g)?);
    spec.seed = g.seed;
    spec.extend = !no_extend;
    let fam = family_make(&spec)?;
    if fam.extended {
        log::info!("moved to {} for enough slopes", fam.field);
    }
    let r = analyze_any(&fam.poly, Some(fam.spec), options(g))?;
    emit(g, if g.json { json(&r) } else { report_text(&r) })
}

fn arrangement_run<F: Field>(g: &Global, field: F, lines: &str, cross: bool) -> Result<(), Failure> {
    let ring = PolyRing::plane(field);
    let arr = LineArrangement::parse(&ring, lines).map_err(|e| Failure::Usage(e.to_string()))?;
    let v = classify_arrangement(&arr, cross.then_some((g.trials, g.seed)))?;
    if g.json {
        return emit(g, json(&v));
    }
    let mut s = format!("f = {}\nd = {}\n", arr.polynomial(), arr.d());
    for (z, r) in &v.profile.points {
        s += &format!("  {z} on {r} lines\n");
    }
    s += &format!("t: {}\nsum t_r = {}\nnear-pencil: {}\n", v.profile.t_string(), v.sum_tr, v.near_pencil);
    s += &format!("d0 (combinatorial): {}\n", v.d0_combinatorial.map_or("-".into(), |d| d.to_string()));
    if let Some(a) = v.d0_algebraic {
        s += &format!("d0 (algebraic): {a}\n");
    }
    s += &format!("classification: {}\n", v.classification);
    emit(g, s)
}

fn parse_range(text: &str) -> Option<(usize, usize)> {
    let text = text.trim();
    let (a, b) = text.split_once("..").or_else(|| text.split_once('-')).unwrap_or((text, text));
    let b = b.trim_start_matches('=');
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

fn sweep_cmd(g: &Global, lines: &str, sample: usize, csv: Option<&PathBuf>, budget: u128) -> Result<(), Failure> {
    let AnyField::Finite(field) = AnyField::from_spec(&field_of(g)?).map_err(|e| Failure::Usage(e.to_string()))? else {
        return Err(Failure::Usage("sweep needs a finite field".into()));
    };
    let (d_min, d_max) = parse_range(lines).ok_or_else(|| Failure::Usage(format!("bad line count `{lines}`")))?;
    let opts = SweepOptions { d_min, d_max, sample_algebraic: sample, seed: g.seed, trials: g.trials, budget };
    let report = sweep_projective_plane(&field, &opts)?;
    if let Some(path) = csv {
        write_sweep_csv(&report, File::create(path)?)?;
    }
    if !report.all_samples_agree() {
        let bad: Vec<_> = report.summaries.iter().flat_map(|s| &s.samples).filter(|c| !c.agree).collect();
        return Err(Error::CrossCheckMismatch(format!("sampled subsets disagree: {bad:?}")).into());
    }
    if g.json {
        return emit(g, json(&report));
    }
    let mut s = format!("plane over {} with {} lines\n", report.field, report.plane_lines.len());
    for sm in &report.summaries {
        s += &format!(
            "d = {}: {} subsets, {} homaloidal, {} near-pencils, {} sampled checks agree\n",
            sm.d,
            sm.subsets,
            sm.homaloidal,
            sm.near_pencils,
            sm.samples.len()
        );
        for b in &sm.buckets {
            let d0 = b.d0.map_or("-".into(), |d| d.to_string());
            s += &format!("  {:<20} {:<24} d0={d0:<4} x{}\n", b.t, b.classification.to_string(), b.count);
        }
    }
    emit(g, s)
}

fn syzygy_run<F: Field>(g: &Global, field: F, poly: &str) -> Result<(), Failure> {
    let ring = PolyRing::plane(field);
    let f = parse_poly(&ring, poly).map_err(|e| Failure::Usage(e.to_string()))?;
    let partials: Vec<_> = (0..3).map(|i| f.derivative(i)).collect();
    let m = minimal_presentation(&partials)?;
    let hyp = if m.ncols() == 2 { Some(torsion_hypotheses(&m, None)?) } else { None };
    let fitting = (m.ncols() == 2).then(|| m.fitting_ideal().pattern);
    let naive = m.naive_degrees().ok();
    if g.json {
        #[derive(Serialize)]
        #[serde(rename_all = "camelCase")]
        struct Out<A, B, C, D> {
            presentation: A,
            naive: Option<B>,
            fitting: Option<C>,
            torsion_hypotheses: Option<D>,
        }
        return emit(g, json(&Out { presentation: m.summary(), naive, fitting, torsion_hypotheses: hyp }));
    }
    let mut s = format!("f = {f}\npresentation:\n{m}column degrees: {:?}\n", m.column_degrees());
    if let Some(n) = naive {
        s += &format!("naive degrees: ({}, {}, {})\n", n.d0, n.d1, n.d2);
    }
    if let Some(hb) = m.summary().hilbert_burch {
        s += &format!("Hilbert-Burch: {}\n", if hb.holds { "holds" } else { "fails" });
    }
    if let Some(fp) = fitting {
        s += &format!("Fitting ideal contained in {:?}, radical {:?}\n", fp.contained_in, fp.radical);
    }
    if let Some(h) = hyp {
        s += &format!("torsion hypotheses on {:?}: {}\n", h.pair, if h.passes() { "pass" } else { "fail" });
    }
    emit(g, s)
}

fn dispatch(cli: &Cli) -> Result<(), Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Analyze { poly } => analyze_cmd(g, poly),
        Command::Family { name, n, no_extend } => family_cmd(g, name, *n, *no_extend),
        Command::Arrangement { lines, cross_check } => {
            match AnyField::from_spec(&field_of(g)?).map_err(|e| Failure::Usage(e.to_string()))? {
                AnyField::Rational(q) => arrangement_run(g, q, lines, *cross_check),
                AnyField::Finite(f) => arrangement_run(g, f, lines, *cross_check),
            }
        }
        Command::Sweep { lines, sample, csv, budget } => sweep_cmd(g, lines, *sample, csv.as_ref(), *budget),
        Command::Syzygy { poly } => match AnyField::from_spec(&field_of(g)?).map_err(|e| Failure::Usage(e.to_string()))? {
            AnyField::Rational(q) => syzygy_run(g, q, poly),
            AnyField::Finite(f) => syzygy_run(g, f, poly),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new()
        .filter_level(if cli.global.verbose { log::LevelFilter::Debug } else { log::LevelFilter::Warn })
        .format_timestamp(None)
        .init();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg, inconsistent)) => {
            eprintln!("error: {msg}");
            ExitCode::from(if inconsistent { 1 } else { 2 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

//! Named curve families and the end-to-end analysis report.

mod report;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{field_make, AnyField, Field, FieldSpec, Gf, Rationals};
use crate::poly::{parse_poly, Poly, PolyRing};

pub use report::{analyze, analyze_any, AnalysisReport, AnalyzeOptions, StageError, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    NearPencil,
    Gn,
    IntroQuintic,
    Q5Quintic,
    Ramphoid,
}

impl FamilyName {
    pub const ALL: [FamilyName; 5] =
        [FamilyName::NearPencil, FamilyName::Gn, FamilyName::IntroQuintic, FamilyName::Q5Quintic, FamilyName::Ramphoid];

    pub fn takes_n(self) -> bool {
        matches!(self, FamilyName::NearPencil | FamilyName::Gn)
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyName::NearPencil => "near-pencil",
            FamilyName::Gn => "gn",
            FamilyName::IntroQuintic => "intro-quintic",
            FamilyName::Q5Quintic => "q5-quintic",
            FamilyName::Ramphoid => "ramphoid",
        })
    }
}

impl std::str::FromStr for FamilyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyName::ALL
            .into_iter()
            .find(|n| n.to_string() == s)
            .ok_or_else(|| Error::InvalidFamily(format!("unknown family `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilySpec {
    pub name: FamilyName,
    pub n: Option<u32>,
    pub field: FieldSpec,
    /// Offset of the first near-pencil slope.
    pub seed: u64,
    /// Allow a near-pencil to move to an extension field with enough slopes.
    pub extend: bool,
}

impl FamilySpec {
    pub fn new(name: FamilyName, n: Option<u32>, field: FieldSpec) -> Self {
        FamilySpec { name, n, field, seed: 0, extend: true }
    }
}

/// A polynomial over a field chosen at runtime.
#[derive(Clone, Debug)]
pub enum AnyPoly {
    Rational(Poly<Rationals>),
    Finite(Poly<Gf>),
}

impl AnyPoly {
    pub fn parse(field: &FieldSpec, text: &str) -> Result<Self> {
        Ok(match AnyField::from_spec(field)? {
            AnyField::Rational(q) => AnyPoly::Rational(parse_poly(&PolyRing::plane(q), text)?),
            AnyField::Finite(g) => AnyPoly::Finite(parse_poly(&PolyRing::plane(g), text)?),
        })
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            AnyPoly::Rational(f) => f.field().spec(),
            AnyPoly::Finite(f) => f.field().spec(),
        }
    }
}

impl fmt::Display for AnyPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyPoly::Rational(p) => p.fmt(f),
            AnyPoly::Finite(p) => p.fmt(f),
        }
    }
}

/// Output of `family_make`: the polynomial and the field it was built over,
/// which differs from the requested one when a near-pencil needed more slopes.
#[derive(Clone, Debug)]
pub struct Family {
    pub spec: FamilySpec,
    pub poly: AnyPoly,
    pub field: FieldSpec,
    pub extended: bool,
}

fn require_n(spec: &FamilySpec) -> Result<u32> {
    let n = spec.n.ok_or_else(|| Error::InvalidFamily(format!("{} needs a parameter n", spec.name)))?;
    if n < 2 {
        return Err(Error::InvalidFamily(format!("{} needs n >= 2, got {n}", spec.name)));
    }
    Ok(n)
}

/// `x0 x1 (x0 + c x1)... x2` with `n - 2` distinct nonzero slopes: consecutive
/// powers of the primitive element over a finite field, `1, 2, 3, ...` over QQ.
fn near_pencil_text<F: Field>(field: &F, n: u32, seed: u64, slopes: impl Fn(u64) -> F::Elem) -> String {
    let mut factors = vec!["x0".to_string(), "x1".to_string()];
    for k in 0..(n - 2) as u64 {
        factors.push(format!("(x0+{}*x1)", field.display(&slopes(seed + k))));
    }
    factors.push("x2".to_string());
    factors.join("*")
}

/// Text of the family member; the field must be large enough.
fn family_text(spec: &FamilySpec, field: &AnyField) -> Result<String> {
    Ok(match spec.name {
        FamilyName::NearPencil => {
            let n = require_n(spec)?;
            match field {
                AnyField::Rational(q) => near_pencil_text(q, n, spec.seed, |k| q.from_i64(k as i64 + 1)),
                AnyField::Finite(g) => {
                    let units = g.order() - 1;
                    if units < (n - 2) as u64 {
                        return Err(Error::FieldTooSmall(format!(
                            "{} has {units} nonzero slopes, a near-pencil with n = {n} needs {}",
                            g.spec(),
                            n - 2
                        )));
                    }
                    let prim = g.primitive_element();
                    near_pencil_text(g, n, spec.seed % units, |k| g.pow(&prim, k % units))
                }
            }
        }
        FamilyName::Gn => {
            let n = require_n(spec)?;
            let x0 = match n - 2 {
                0 => String::new(),
                1 => "x0*".to_string(),
                k => format!("x0^{k}*"),
            };
            format!("x0*x1*(x1^{}+{x0}x2)", n - 1)
        }
        FamilyName::IntroQuintic => "x0*(x1^2+x0*x2)*(2*x1^2+x0*x2)".to_string(),
        FamilyName::Q5Quintic => "x0*(x1^2+x0*x2)*(x1^2+x0*x2+x0^2)".to_string(),
        FamilyName::Ramphoid => "x2*(x1^4-2*x0*x1^2*x2+x0^2*x2^2-x1*x2^3)".to_string(),
    })
}

/// Builds the named polynomial. A near-pencil over `GF(p^e)` with fewer than
/// `n - 2` nonzero elements moves to the smallest `GF(p^(ek))` that has
/// enough, unless `extend` is off.
pub fn family_make(spec: &FamilySpec) -> Result<Family> {
    spec.field.validate()?;
    let mut field = spec.field.clone();
    let mut extended = false;
    if spec.name == FamilyName::NearPencil && field.characteristic > 0 {
        let n = require_n(spec)? as u128;
        let q = field.size().unwrap();
        if q - 1 < n - 2 {
            if !spec.extend {
                return Err(Error::FieldTooSmall(format!("{field} has {} nonzero slopes, need {}", q - 1, n - 2)));
            }
            let mut k = 2;
            while q.pow(k) - 1 < n - 2 {
                k += 1;
            }
            field = field_make(field.characteristic, field.extension_degree * k, 0)?;
            extended = true;
        }
    }
    let any = AnyField::from_spec(&field)?;
    let text = family_text(spec, &any)?;
    Ok(Family { spec: spec.clone(), poly: AnyPoly::parse(&field, &text)?, field, extended })
}

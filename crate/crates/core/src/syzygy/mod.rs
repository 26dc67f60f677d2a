//! Syzygies of the partial derivatives, minimal presentations, Fitting ideals.

mod torsion;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{saturate, Ideal, SaturationMethod, Truncation};
use crate::poly::{Monomial, MonomialOrder, Poly, PolyRing};

pub use torsion::{torsion_hypotheses, TorsionHypotheses};

/// Degree of a syzygy column: the common degree of its nonzero entries.
fn column_degree<F: Field>(col: &[Poly<F>]) -> i64 {
    col.iter().filter_map(Poly::degree).max().map_or(-1, i64::from)
}

/// `k[x..., e_0.., e_{m-1}]` with tag weights, plus the tag mask.
fn module_ring<F: Field>(ring: &Arc<PolyRing<F>>, degrees: &[u32], extra: &[(&str, u32)]) -> Result<(Arc<PolyRing<F>>, u16)> {
    let names: Vec<String> = (0..degrees.len()).map(|i| format!("_e{i}")).chain(extra.iter().map(|(n, _)| n.to_string())).collect();
    let weights: Vec<u32> = degrees.iter().copied().chain(extra.iter().map(|&(_, w)| w)).collect();
    let ext = ring.extended(&names, &weights)?;
    let n = ring.nvars();
    let mask = (0..degrees.len()).fold(0u16, |m, i| m | 1 << (n + i));
    Ok((ext, mask))
}

fn lift<F: Field>(f: &Poly<F>, ring: &Arc<PolyRing<F>>) -> Poly<F> {
    Poly::from_terms(ring, f.terms().to_vec())
}

fn encode<F: Field>(col: &[Poly<F>], ext: &Arc<PolyRing<F>>, base: usize) -> Poly<F> {
    let one = ext.field().one();
    col.iter()
        .enumerate()
        .fold(ext.zero(), |acc, (i, c)| acc.add(&lift(c, ext).mul_term(&one, &Monomial::var(base + i, 1))))
}

fn decode<F: Field>(v: &Poly<F>, ring: &Arc<PolyRing<F>>, base: usize, m: usize) -> Vec<Poly<F>> {
    let mut parts: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); m];
    for (mono, c) in v.terms() {
        let i = (0..m).find(|&i| mono.exp(base + i) == 1).expect("e-linear");
        let mut x = *mono;
        x.0[base + i] = 0;
        parts[i].push((x, c.clone()));
    }
    parts.into_iter().map(|t| Poly::from_terms(ring, t)).collect()
}

/// Generators of the syzygy module of `gens` (homogeneous, not all zero),
/// each certified by a vanishing dot product.
pub fn syzygies<F: Field>(gens: &[Poly<F>]) -> Result<Vec<Vec<Poly<F>>>> {
    let ring = gens.first().expect("generators").ring().clone();
    if gens.iter().all(Poly::is_zero) {
        return Err(Error::UndefinedMap);
    }
    if !gens.iter().all(Poly::is_homogeneous) {
        return Err(Error::NotHomogeneous);
    }
    let m = gens.len();
    let n = ring.nvars();
    let degs: Vec<u32> = gens.iter().map(|g| g.degree().unwrap_or(0)).collect();
    let (ext, emask) = module_ring(&ring, &degs, &[("_t", 0)])?;
    let t = n + m;
    let ext = ext.with_order(MonomialOrder::Elimination(1 << t));
    let tv = ext.var(t);
    let tagged: Vec<Poly<F>> = gens.iter().enumerate().map(|(i, g)| tv.mul(&lift(g, &ext)).add(&ext.var(n + i))).collect();
    let gb = Ideal::new(&ext, tagged).groebner_truncated(Some(Truncation { mask: emask | 1 << t, bound: 1 }));
    let mut out = Vec::new();
    for g in gb.elements() {
        let lin = g.terms().iter().all(|(mono, _)| mono.exp(t) == 0 && mono.masked_degree(emask) == 1);
        if !lin {
            continue;
        }
        let col = decode(g, &ring, n, m);
        let dot = col.iter().zip(gens).fold(ring.zero(), |acc, (c, g)| acc.add(&c.mul(g)));
        assert!(dot.is_zero(), "syzygy certificate failed");
        out.push(col);
    }
    Ok(out)
}

/// Module membership and reduction for submodules of `R^m`.
struct Submodule<F: Field> {
    ring: Arc<PolyRing<F>>,
    ext: Arc<PolyRing<F>>,
    base: usize,
    m: usize,
    gens: Vec<Poly<F>>,
}

impl<F: Field> Submodule<F> {
    fn new(ring: &Arc<PolyRing<F>>, degrees: &[u32]) -> Result<Self> {
        let (ext, _) = module_ring(ring, degrees, &[])?;
        Ok(Submodule { ring: ring.clone(), ext, base: ring.nvars(), m: degrees.len(), gens: Vec::new() })
    }

    fn push(&mut self, col: &[Poly<F>]) {
        self.gens.push(encode(col, &self.ext, self.base));
    }

    /// Normal form of `col` modulo the submodule.
    fn reduce(&self, col: &[Poly<F>]) -> Vec<Poly<F>> {
        let v = encode(col, &self.ext, self.base);
        if self.gens.is_empty() {
            return col.to_vec();
        }
        let mask = (0..self.m).fold(0u16, |acc, i| acc | 1 << (self.base + i));
        let gb = Ideal::new(&self.ext, self.gens.clone()).groebner_truncated(Some(Truncation { mask, bound: 1 }));
        decode(&gb.normal_form(&v), &self.ring, self.base, self.m)
    }
}

/// A presentation matrix of an ideal given by homogeneous generators:
/// columns are syzygies, sorted by degree.
#[derive(Clone, Debug)]
pub struct PresentationMatrix<F: Field> {
    generators: Vec<Poly<F>>,
    columns: Vec<Vec<Poly<F>>>,
    column_degrees: Vec<i64>,
}

/// Minimal homogeneous generating set of the syzygies of `gens`, by
/// degree-ascending pruning; later columns are reduced modulo earlier ones.
pub fn minimal_presentation<F: Field>(gens: &[Poly<F>]) -> Result<PresentationMatrix<F>> {
    let ring = gens[0].ring().clone();
    let mut cols = syzygies(gens)?;
    cols.sort_by_key(|c| column_degree(c));
    let degs: Vec<u32> = gens.iter().map(|g| g.degree().unwrap_or(0)).collect();
    let mut sub = Submodule::new(&ring, &degs)?;
    let mut kept: Vec<Vec<Poly<F>>> = Vec::new();
    for c in cols {
        let r = sub.reduce(&c);
        if r.iter().all(Poly::is_zero) {
            continue;
        }
        let r = normalize_column(&r);
        sub.push(&r);
        kept.push(r);
    }
    let column_degrees = kept.iter().map(|c| column_degree(c)).collect();
    Ok(PresentationMatrix { generators: gens.to_vec(), columns: kept, column_degrees })
}

/// Scales so that the first nonzero entry has leading coefficient 1.
fn normalize_column<F: Field>(col: &[Poly<F>]) -> Vec<Poly<F>> {
    match col.iter().find(|c| !c.is_zero()) {
        None => col.to_vec(),
        Some(c) => {
            let inv = c.field().inv(c.leading_coeff().unwrap());
            col.iter().map(|e| e.scale(&inv)).collect()
        }
    }
}

impl<F: Field> PresentationMatrix<F> {
    /// Builds a matrix from explicit columns (rows indexed by generators).
    pub fn from_columns(generators: Vec<Poly<F>>, columns: Vec<Vec<Poly<F>>>) -> Self {
        let column_degrees = columns.iter().map(|c| column_degree(c)).collect();
        PresentationMatrix { generators, columns, column_degrees }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        self.generators[0].ring()
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.generators
    }

    pub fn columns(&self) -> &[Vec<Poly<F>>] {
        &self.columns
    }

    pub fn column_degrees(&self) -> &[i64] {
        &self.column_degrees
    }

    pub fn entry(&self, row: usize, col: usize) -> &Poly<F> {
        &self.columns[col][row]
    }

    pub fn nrows(&self) -> usize {
        self.generators.len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    /// Every column is a syzygy of the generators.
    pub fn columns_are_syzygies(&self) -> bool {
        let ring = self.ring();
        self.columns.iter().all(|c| {
            c.iter().zip(&self.generators).fold(ring.zero(), |acc, (a, g)| acc.add(&a.mul(g))).is_zero()
        })
    }

    /// `M_j`: `(-1)^j` times the minor leaving out row `j` (rows counted from 1).
    pub fn signed_minors(&self) -> Result<Vec<Poly<F>>> {
        if self.ncols() != 2 || self.nrows() != 3 {
            return Err(Error::NotDeterminantal(self.ncols()));
        }
        let e = |r: usize, c: usize| &self.columns[c][r];
        let minor = |a: usize, b: usize| e(a, 0).mul(e(b, 1)).sub(&e(b, 0).mul(e(a, 1)));
        Ok(vec![minor(1, 2).neg(), minor(0, 2), minor(0, 1).neg()])
    }

    /// The scalar `c` with `M_j = c * g_j` for all `j`, when it exists.
    pub fn hilbert_burch_scalar(&self) -> Result<Option<F::Elem>> {
        let minors = self.signed_minors()?;
        let field = self.ring().field();
        let mut scalar: Option<F::Elem> = None;
        for (m, g) in minors.iter().zip(&self.generators) {
            if g.is_zero() {
                if !m.is_zero() {
                    return Ok(None);
                }
                continue;
            }
            let c = match m.terms().first() {
                Some((mono, c)) if mono == g.leading_monomial().unwrap() => field.div(c, g.leading_coeff().unwrap()),
                _ => return Ok(None),
            };
            if m != &g.scale(&c) {
                return Ok(None);
            }
            match &scalar {
                None => scalar = Some(c),
                Some(s) if *s == c => {}
                Some(_) => return Ok(None),
            }
        }
        Ok(scalar.filter(|s| !field.is_zero(s)))
    }

    pub fn naive_degrees(&self) -> Result<NaiveDegrees> {
        if self.ncols() != 2 {
            return Err(Error::NotDeterminantal(self.ncols()));
        }
        let (a, b) = (self.column_degrees[0], self.column_degrees[1]);
        Ok(NaiveDegrees { d0: a * b, d1: a + b, d2: 1 })
    }

    /// The ideal of all entries.
    pub fn fitting_ideal(&self) -> FittingIdeal<F> {
        let ideal = Ideal::new(self.ring(), self.columns.iter().flatten().cloned());
        FittingIdeal::new(ideal)
    }

    /// Rows of entry strings.
    pub fn entry_strings(&self) -> Vec<Vec<String>> {
        (0..self.nrows()).map(|r| self.columns.iter().map(|c| c[r].to_string()).collect()).collect()
    }

    pub fn summary(&self) -> PresentationSummary {
        let hb = self.hilbert_burch_scalar().ok().flatten();
        PresentationSummary {
            entries: self.entry_strings(),
            column_degrees: self.column_degrees.clone(),
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
            hilbert_burch: (self.ncols() == 2).then(|| HilbertBurch {
                holds: hb.is_some(),
                scalar: hb.map(|s| self.ring().field().display(&s)),
            }),
        }
    }
}

impl<F: Field> fmt::Display for PresentationMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.entry_strings();
        let widths: Vec<usize> =
            (0..self.ncols()).map(|c| cells.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
        for row in &cells {
            let padded: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            writeln!(f, "[ {} ]", padded.join("  "))?;
        }
        Ok(())
    }
}

/// Naive projective degrees `(ab, a + b, 1)` from column degrees `(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NaiveDegrees {
    pub d0: i64,
    pub d1: i64,
    pub d2: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HilbertBurch {
    pub holds: bool,
    pub scalar: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PresentationSummary {
    pub generators: Vec<String>,
    pub entries: Vec<Vec<String>>,
    pub column_degrees: Vec<i64>,
    pub hilbert_burch: Option<HilbertBurch>,
}

/// The coordinate primes tested against the Fitting ideal, as variable masks.
pub const COORDINATE_PRIMES: [(&str, u16); 4] =
    [("(x0,x1)", 0b011), ("(x1,x2)", 0b110), ("(x0,x2)", 0b101), ("(x0,x1,x2)", 0b111)];

/// The ideal of entries of a presentation matrix, with its position relative
/// to the coordinate primes.
#[derive(Clone, Debug)]
pub struct FittingIdeal<F: Field> {
    pub ideal: Ideal<F>,
    pub pattern: FittingPattern,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FittingPattern {
    pub unit: bool,
    /// Coordinate primes containing the ideal.
    pub contained_in: Vec<String>,
    /// The coordinate prime equal to the radical, if any.
    pub radical: Option<String>,
    /// The coordinate prime equal to the ideal itself, if any.
    pub equals: Option<String>,
}

impl<F: Field> FittingIdeal<F> {
    fn new(ideal: Ideal<F>) -> Self {
        let ring = ideal.ring().clone();
        let gb = ideal.groebner();
        let unit = gb.is_unit();
        let mut contained_in = Vec::new();
        let mut radical = None;
        let mut equals = None;
        for (name, mask) in COORDINATE_PRIMES {
            let inside = ideal.gens().iter().all(|g| g.terms().iter().all(|(m, _)| m.support() & mask != 0));
            if !inside {
                continue;
            }
            contained_in.push(name.to_string());
            let prime = crate::groebner::irrelevant_ideal(&ring, mask);
            if prime.groebner() == gb {
                equals = Some(name.to_string());
            }
            let in_radical = prime.gens().iter().all(|x| {
                crate::groebner::saturate_by_element(&ideal, x, SaturationMethod::IteratedColon)
                    .map(|s| s.groebner().is_unit())
                    .unwrap_or(false)
            });
            if in_radical && radical.is_none() {
                radical = Some(name.to_string());
            }
        }
        FittingIdeal { ideal, pattern: FittingPattern { unit, contained_in, radical, equals } }
    }

    /// Saturation with respect to the irrelevant ideal.
    pub fn saturated(&self) -> Result<Ideal<F>> {
        let ring = self.ideal.ring();
        let m = crate::groebner::irrelevant_ideal(ring, (1u16 << ring.nvars()) - 1);
        saturate(&self.ideal, &m, SaturationMethod::IteratedColon)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf, Rationals};
    use crate::poly::parse_poly;

    fn partials<F: Field>(ring: &Arc<PolyRing<F>>, f: &str) -> Vec<Poly<F>> {
        let f = parse_poly(ring, f).unwrap();
        (0..3).map(|i| f.derivative(i)).collect()
    }

    #[test]
    fn triangle_has_two_linear_syzygies() {
        let ring = PolyRing::plane(Rationals);
        let m = minimal_presentation(&partials(&ring, "x0*x1*x2")).unwrap();
        assert_eq!(m.column_degrees(), &[1, 1]);
        assert!(m.columns_are_syzygies());
        assert!(m.hilbert_burch_scalar().unwrap().is_some());
        assert_eq!(m.naive_degrees().unwrap(), NaiveDegrees { d0: 1, d1: 2, d2: 1 });
    }

    #[test]
    fn near_pencil_columns_have_degrees_one_and_n_minus_one() {
        let ring = PolyRing::plane(Rationals);
        let m = minimal_presentation(&partials(&ring, "x0*x1*(x0+x1)*(x0+2*x1)*x2")).unwrap();
        assert_eq!(m.column_degrees(), &[1, 3]);
        assert_eq!(m.naive_degrees().unwrap(), NaiveDegrees { d0: 3, d1: 4, d2: 1 });
        assert!(m.hilbert_burch_scalar().unwrap().is_some());
        assert_eq!(m.fitting_ideal().pattern.equals.as_deref(), Some("(x0,x1,x2)"));
    }

    #[test]
    fn g3_over_gf5_first_column() {
        let ring = PolyRing::plane(Gf::prime(5).unwrap());
        let gens = partials(&ring, "x0*x1*(x1^2+x0*x2)");
        let m = minimal_presentation(&gens).unwrap();
        assert_eq!(m.column_degrees(), &[1, 2]);
        // proportional to (3x0, -x1, 0)
        let expect = [parse_poly(&ring, "3*x0").unwrap(), parse_poly(&ring, "-x1").unwrap(), ring.zero()];
        let c = &m.columns()[0];
        let s = ring.field().div(expect[0].leading_coeff().unwrap(), c[0].leading_coeff().unwrap());
        for (a, b) in c.iter().zip(&expect) {
            assert_eq!(&a.scale(&s), b);
        }
        assert!(m.hilbert_burch_scalar().unwrap().is_some());
    }

    #[test]
    fn ramphoid_in_char_three() {
        let ring = PolyRing::plane(Gf::prime(3).unwrap());
        let m = minimal_presentation(&partials(&ring, "x2*(x1^4-2*x0*x1^2*x2+x0^2*x2^2-x1*x2^3)")).unwrap();
        assert_eq!(m.column_degrees(), &[1, 3]);
        let fit = m.fitting_ideal();
        assert_eq!(fit.pattern.radical.as_deref(), Some("(x1,x2)"));
    }

    #[test]
    fn ramphoid_in_char_zero() {
        let ring = PolyRing::plane(Rationals);
        let m = minimal_presentation(&partials(&ring, "x2*(x1^4-2*x0*x1^2*x2+x0^2*x2^2-x1*x2^3)")).unwrap();
        assert_eq!(m.column_degrees(), &[2, 2]);
        assert_eq!(m.naive_degrees().unwrap(), NaiveDegrees { d0: 4, d1: 4, d2: 1 });
    }

    #[test]
    fn non_determinantal_is_reported() {
        let ring = PolyRing::plane(Rationals);
        let gens = vec![ring.var(0).pow(2), ring.var(1).pow(2), ring.var(0).mul(&ring.var(1))];
        let m = minimal_presentation(&gens).unwrap();
        assert_eq!(m.ncols(), 2);
        let gens = vec![ring.var(0).pow(2), ring.var(1).pow(2), ring.var(2).pow(2)];
        let m = minimal_presentation(&gens).unwrap();
        assert_eq!(m.ncols(), 3);
        assert_eq!(m.naive_degrees(), Err(Error::NotDeterminantal(3)));
    }
}

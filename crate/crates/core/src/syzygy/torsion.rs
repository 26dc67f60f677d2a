use serde::Serialize;

use super::PresentationMatrix;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::linalg::{solve, Matrix};
use crate::poly::{Monomial, Poly};

/// Outcome of checking the matrix conditions under which the torsion of the
/// naive graph is concentrated at one point and the map is birational:
/// a linear first column in `(u, v)`, a second column in `(u, v)^(n-2)` of
/// degree `n - 1` (after subtracting a multiple of the first column) with an
/// entry outside `(u, v)^(n-1)`, and minors of height 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TorsionHypotheses {
    /// Indices of the coordinates `u`, `v`.
    pub pair: [usize; 2],
    pub n: i64,
    /// Which column of the matrix plays the linear column.
    pub first_column: usize,
    pub linear_first_column: bool,
    pub second_column_in_power: bool,
    pub second_column_not_in_higher_power: bool,
    pub height_two: bool,
    /// The second column after the column operation, when one was found.
    pub adjusted_second_column: Option<Vec<String>>,
}

impl TorsionHypotheses {
    pub fn passes(&self) -> bool {
        self.linear_first_column && self.second_column_in_power && self.second_column_not_in_higher_power && self.height_two
    }

    fn score(&self) -> usize {
        [self.linear_first_column, self.second_column_in_power, self.second_column_not_in_higher_power, self.height_two]
            .iter()
            .filter(|&&b| b)
            .count()
    }
}

const PAIRS: [[usize; 2]; 3] = [[0, 1], [1, 2], [0, 2]];

fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left;
            out.push(Monomial::from_exponents(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
    }
    rec(0, d, &mut exps, &mut out);
    out
}

/// Checks the conditions for every coordinate pair (or only `pair`) and both
/// column roles when the column degrees coincide; returns a passing report if
/// one exists, otherwise the report satisfying the most conditions.
pub fn torsion_hypotheses<F: Field>(m: &PresentationMatrix<F>, pair: Option<[usize; 2]>) -> Result<TorsionHypotheses> {
    if m.ncols() != 2 || m.nrows() != 3 {
        return Err(Error::NotDeterminantal(m.ncols()));
    }
    let degs = m.column_degrees();
    let firsts: Vec<usize> = if degs[0] == degs[1] { vec![0, 1] } else { vec![0] };
    let pairs: Vec<[usize; 2]> = pair.map_or(PAIRS.to_vec(), |p| vec![p]);
    let minors = Ideal::new(m.ring(), m.signed_minors()?);
    let height_two = minors.groebner().krull_dimension() <= 1;
    let mut best: Option<TorsionHypotheses> = None;
    for p in &pairs {
        for &first in &firsts {
            let report = check(m, *p, first, height_two);
            if report.passes() {
                return Ok(report);
            }
            if best.as_ref().is_none_or(|b| report.score() > b.score()) {
                best = Some(report);
            }
        }
    }
    Ok(best.expect("at least one candidate"))
}

fn check<F: Field>(m: &PresentationMatrix<F>, pair: [usize; 2], first: usize, height_two: bool) -> TorsionHypotheses {
    let ring = m.ring();
    let field = ring.field();
    let mask = (1u16 << pair[0]) | (1u16 << pair[1]);
    let col1 = &m.columns()[first];
    let col2 = &m.columns()[1 - first];
    let (a, b) = (m.column_degrees()[first], m.column_degrees()[1 - first]);
    let n = b + 1;
    let linear_first_column = a == 1
        && col1.iter().all(|e| e.terms().iter().all(|(mono, _)| mono.degree() == 1 && mono.support() & !mask == 0));
    let mut report = TorsionHypotheses {
        pair,
        n,
        first_column: first,
        linear_first_column,
        second_column_in_power: false,
        second_column_not_in_higher_power: false,
        height_two,
        adjusted_second_column: None,
    };
    if b < a || a < 0 {
        return report;
    }
    let low = (n - 2).max(0) as u32;
    // unknown q of degree b - a; equations: coefficients of low-order monomials vanish
    let qmons = monomials_of_degree(ring.nvars(), (b - a) as u32);
    let bad: Vec<Monomial> =
        monomials_of_degree(ring.nvars(), b as u32).into_iter().filter(|mo| mo.masked_degree(mask) < low).collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..3 {
        for mu in &bad {
            let row: Vec<F::Elem> = qmons
                .iter()
                .map(|nu| match nu.quotient_of(mu) {
                    Some(rest) => col1[j].coeff(&rest),
                    None => field.zero(),
                })
                .collect();
            rows.push(row);
            rhs.push(col2[j].coeff(mu));
        }
    }
    let adjusted = |q: &[F::Elem]| -> Vec<Poly<F>> {
        let qpoly = Poly::from_terms(ring, qmons.iter().cloned().zip(q.iter().cloned()).collect());
        col2.iter().zip(col1).map(|(c2, c1)| c2.sub(&qpoly.mul(c1))).collect()
    };
    let (q0, kernel) = if rows.is_empty() {
        (vec![field.zero(); qmons.len()], Vec::new())
    } else {
        match solve(field, &Matrix::from_rows(rows, qmons.len()), &rhs) {
            Some(s) => s,
            None => return report,
        }
    };
    report.second_column_in_power = true;
    let mut candidates = vec![q0.clone()];
    for k in &kernel {
        candidates.push(q0.iter().zip(k).map(|(x, y)| field.add(x, y)).collect());
    }
    let outside = |col: &[Poly<F>]| {
        col.iter().any(|e| e.terms().iter().any(|(mo, _)| mo.masked_degree(mask) < (n - 1).max(0) as u32))
    };
    let mut chosen = adjusted(&q0);
    for q in &candidates {
        let col = adjusted(q);
        if outside(&col) {
            report.second_column_not_in_higher_power = true;
            chosen = col;
            break;
        }
    }
    report.adjusted_second_column = Some(chosen.iter().map(|p| p.to_string()).collect());
    report
}

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::topological::{modal_value, with_retries};
use super::{trial_seed, working_field, DegreeTriple};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::groebner::{degree_zero_dim, saturate, DegreeMode, Ideal, SaturationMethod};
use crate::poly::{Poly, PolyRing};
use crate::syzygy::PresentationMatrix;

/// Degrees of the graph and of the naive graph, cut by linear sections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphDegrees {
    pub naive: DegreeTriple,
    pub graph: DegreeTriple,
    pub torsion: DegreeTriple,
    pub unanimous: bool,
    /// The entries generate an ideal primary to `(x0,x1,x2)`, so the torsion
    /// has empty support and the graph is the naive graph.
    pub linear_type: bool,
    pub working_field: FieldSpec,
    pub trials: Vec<SectionTrial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SectionTrial {
    /// Index `i` of the section: an `(2-i)`-plane in `x` times an `i`-plane in `y`.
    pub index: usize,
    pub seed: u64,
    pub naive: u64,
    pub graph: u64,
}

/// A random linear parametrization `x = A s` of a `k`-dimensional subspace,
/// as `3` linear forms in the variables `offset..offset+k` of `ring`, or
/// constants when `k = 1`.
fn parametrize<F: Field>(ring: &Arc<PolyRing<F>>, offset: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<Poly<F>> {
    let field = ring.field();
    (0..3)
        .map(|_| {
            let coeffs: Vec<F::Elem> = (0..k).map(|_| field.random_generic(rng)).collect();
            if k == 1 {
                ring.constant(coeffs[0].clone())
            } else {
                let vars: Vec<usize> = (offset..offset + k).collect();
                ring.linear_form(&vars, &coeffs)
            }
        })
        .collect()
}

fn section_ring<F: Field>(field: F, sx: usize, sy: usize) -> Result<(Arc<PolyRing<F>>, Vec<u16>)> {
    let mut names: Vec<String> = Vec::new();
    let mut blocks = Vec::new();
    if sx > 1 {
        names.extend((0..sx).map(|j| format!("s{j}")));
        blocks.push(((1u16 << sx) - 1) as u16);
    }
    let off = names.len();
    if sy > 1 {
        names.extend((0..sy).map(|j| format!("u{j}")));
        blocks.push((((1u16 << sy) - 1) << off) as u16);
    }
    Ok((PolyRing::new(field, &names)?, blocks))
}

fn degree_of<F: Field>(ideal: &Ideal<F>, blocks: &[u16], seed: u64) -> Result<u64> {
    if ideal.groebner().is_unit() {
        return Ok(0);
    }
    Ok(degree_zero_dim(ideal, blocks, DegreeMode::Both, seed)?.degree.unwrap_or(0))
}

/// `(naive, graph)` lengths of the `i`-th section.
fn one_section<F: Field>(columns: &[Vec<Poly<F>>], field: &F, i: usize, linear_type: bool, seed: u64) -> Result<(u64, u64)> {
    let (sx, sy) = (3 - i, 1 + i);
    let (ring, blocks) = section_ring(field.clone(), sx, sy)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = parametrize(&ring, 0, sx, &mut rng);
    let y = parametrize(&ring, if sx > 1 { sx } else { 0 }, sy, &mut rng);
    let mut entries = Vec::new();
    let mut gens = Vec::new();
    for col in columns {
        let restricted: Vec<Poly<F>> = col.iter().map(|c| c.substitute(&ring, &x)).collect();
        gens.push(restricted.iter().zip(&y).fold(ring.zero(), |acc, (c, yj)| acc.add(&c.mul(yj))));
        entries.extend(restricted);
    }
    let naive_ideal = Ideal::new(&ring, gens);
    let naive = degree_of(&naive_ideal, &blocks, seed)?;
    let graph = if linear_type || entries.iter().any(|e| !e.is_zero() && e.is_constant()) {
        naive
    } else {
        let fitting = Ideal::new(&ring, entries);
        degree_of(&saturate(&naive_ideal, &fitting, SaturationMethod::IteratedColon)?, &blocks, seed)?
    };
    Ok((naive, graph))
}

/// Projective degrees of the graph and of the naive graph of a map whose base
/// ideal has the 3x2 presentation `m`, by generic linear sections of the
/// product of planes. The graph is the naive graph saturated by the ideal of
/// entries of `m`.
pub fn graph_multidegree_via_sections<F: Field>(m: &PresentationMatrix<F>, trials: usize, seed: u64) -> Result<GraphDegrees> {
    if m.ncols() != 2 {
        return Err(Error::NotDeterminantal(m.ncols()));
    }
    let linear_type = m.fitting_ideal().saturated()?.groebner().is_unit();
    let (big, emb) = working_field(m.ring().field())?;
    let ring = m.ring().over(big.clone());
    let columns: Vec<Vec<Poly<F>>> = m
        .columns()
        .iter()
        .map(|c| c.iter().map(|e| e.map_coeffs(&ring, |a| emb.apply(a))).collect())
        .collect();
    let mut records = Vec::new();
    let mut naive = [0i64; 3];
    let mut graph = [0i64; 3];
    let mut unanimous = true;
    for i in 0..3 {
        let mut naive_vals = Vec::new();
        let mut graph_vals = Vec::new();
        for k in 0..trials.max(1) as u64 {
            let s = trial_seed(seed, 100 * (i as u64 + 1) + k);
            let (s, (n, g)) = with_retries(s, |s| one_section(&columns, &big, i, linear_type, s))?;
            log::debug!("section {i} trial {k}: seed {s} naive {n} graph {g}");
            records.push(SectionTrial { index: i, seed: s, naive: n, graph: g });
            naive_vals.push(n);
            graph_vals.push(g);
        }
        let (n, un) = modal_value(&naive_vals, &format!("naive section {i}"))?;
        let (g, ug) = modal_value(&graph_vals, &format!("graph section {i}"))?;
        unanimous &= un && ug;
        naive[i] = n as i64;
        graph[i] = g as i64;
    }
    let triple = |a: [i64; 3]| DegreeTriple::new(a[0], a[1], a[2]);
    Ok(GraphDegrees {
        naive: triple(naive),
        graph: triple(graph),
        torsion: triple([naive[0] - graph[0], naive[1] - graph[1], naive[2] - graph[2]]),
        unanimous,
        linear_type,
        working_field: big.spec(),
        trials: records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf, Rationals};
    use crate::poly::parse_poly;
    use crate::polar::polar_map;

    fn degrees<F: Field>(field: F, f: &str) -> GraphDegrees {
        let ring = PolyRing::plane(field);
        let pm = polar_map(&parse_poly(&ring, f).unwrap()).unwrap();
        graph_multidegree_via_sections(&pm.presentation().unwrap(), 2, 5).unwrap()
    }

    #[test]
    fn near_pencil_of_four_lines_is_linear_type_over_q() {
        let g = degrees(Rationals, "x0*x1*(x0+x1)*(x0+2*x1)*x2");
        assert_eq!(g.graph.tuple(), (3, 4, 1));
        assert_eq!(g.naive.tuple(), (3, 4, 1));
        assert_eq!(g.torsion.tuple(), (0, 0, 0));
        assert!(g.linear_type);
    }

    #[test]
    fn skipping_the_saturation_is_exact_for_linear_type() {
        for f in ["x0*x1*(x0+x1)*x2", "x0*x1*(x0+x1)*(x0+2*x1)*x2"] {
            let ring = PolyRing::plane(Rationals);
            let m = polar_map(&parse_poly(&ring, f).unwrap()).unwrap().presentation().unwrap();
            for i in 0..3 {
                let full = one_section(m.columns(), &Rationals, i, false, 40 + i as u64).unwrap();
                let short = one_section(m.columns(), &Rationals, i, true, 40 + i as u64).unwrap();
                assert_eq!(full, short, "{f} section {i}");
            }
        }
    }

    #[test]
    fn near_pencil_with_torsion() {
        let g = degrees(Gf::prime(5).unwrap(), "x0*x1*(x0+x1)*(x0+2*x1)*(x0+3*x1)*x2");
        assert_eq!(g.graph.tuple(), (1, 5, 1));
        assert_eq!(g.torsion.tuple(), (3, 0, 0));
        assert!(!g.linear_type);
    }

    #[test]
    fn ramphoid_quintic_mod_3() {
        let g = degrees(Gf::prime(3).unwrap(), "x2*(x1^4-2*x0*x1^2*x2+x0^2*x2^2-x1*x2^3)");
        assert_eq!(g.naive.tuple(), (3, 4, 1));
        assert_eq!(g.graph.tuple(), (1, 4, 1));
        assert_eq!(g.torsion.tuple(), (2, 0, 0));
    }
}

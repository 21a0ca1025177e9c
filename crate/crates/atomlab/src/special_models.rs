//! Named models recovered from the general entropy machinery: bipartite and
//! clique configuration models, the degree-corrected SBM family, link
//! communities and multilayer couplings.
//!
//! Each closed form here is paired with a labelled-atom construction
//! ([`build_labelled_atoms`]) whose general-machinery evaluation reproduces
//! it; the test suites check those reductions numerically.

use crate::atoms::{Atom, Motif, OrbitRef};
use crate::error::{Error, Result};
use crate::microcanonical::{DegreeGroup, MicroDegreeSpec};
use crate::numeric::ln_factorial;

/// Vertex-to-block assignment for block models. Blocks are `0..n_blocks`.
#[derive(Debug, Clone)]
pub struct BlockAssignment {
    block_of: Vec<usize>,
    n_blocks: usize,
}

impl BlockAssignment {
    /// Validates that every vertex is assigned a block below `n_blocks`.
    pub fn new(block_of: Vec<usize>, n_blocks: usize) -> Result<Self> {
        if n_blocks == 0 {
            return Err(Error::Spec("at least one block required".into()));
        }
        if let Some(&b) = block_of.iter().find(|&&b| b >= n_blocks) {
            return Err(Error::Spec(format!(
                "block label {b} outside 0..{n_blocks}"
            )));
        }
        Ok(BlockAssignment { block_of, n_blocks })
    }

    /// Number of blocks.
    pub fn n_blocks(&self) -> usize {
        self.n_blocks
    }

    /// Number of vertices.
    pub fn n_vertices(&self) -> usize {
        self.block_of.len()
    }

    /// Block of a vertex.
    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    /// Vertices of each block.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_blocks];
        for (v, &b) in self.block_of.iter().enumerate() {
            out[b].push(v);
        }
        out
    }
}

/// Degrees of a bipartite graph: one sequence per partition, with
/// `sum d_t = sum d_b = n_e`.
#[derive(Debug, Clone)]
pub struct BipartiteDegrees {
    /// Degrees of the top partition.
    pub top: Vec<u64>,
    /// Degrees of the bottom partition.
    pub bottom: Vec<u64>,
}

impl BipartiteDegrees {
    /// Validates the shared edge count.
    pub fn new(top: Vec<u64>, bottom: Vec<u64>) -> Result<Self> {
        let nt: u64 = top.iter().sum();
        let nb: u64 = bottom.iter().sum();
        if nt != nb {
            return Err(Error::NotGraphical(format!(
                "top degrees sum to {nt} but bottom degrees sum to {nb}"
            )));
        }
        Ok(BipartiteDegrees { top, bottom })
    }

    /// Number of edges.
    pub fn edge_count(&self) -> u64 {
        self.top.iter().sum()
    }
}

fn excess(seq: impl Iterator<Item = u64> + Clone) -> f64 {
    let total: u64 = seq.clone().sum();
    if total == 0 {
        return 0.0;
    }
    let dd1: u64 = seq.map(|d| d * (d - d.min(1))).sum();
    dd1 as f64 / total as f64
}

/// Entropy of the classical edge configuration model at the given degrees,
/// the single-atom specialization every block-model formula reduces to.
pub fn entropy_edge_configuration_model(degrees: &[u64]) -> Result<f64> {
    let total: u64 = degrees.iter().sum();
    if !total.is_multiple_of(2) {
        return Err(Error::NotGraphical(format!("odd stub total {total}")));
    }
    let n = total / 2;
    if n == 0 {
        return Ok(0.0);
    }
    let mut s = ln_factorial(total) - n as f64 * 2f64.ln() - ln_factorial(n);
    for &d in degrees {
        s -= ln_factorial(d);
    }
    let x = excess(degrees.iter().copied());
    s -= x / 2.0;
    if n >= 2 {
        s -= x * x / 4.0;
    }
    Ok(s)
}

/// Microcanonical entropy of the bipartite model with both partition degree
/// sequences conserved.
pub fn entropy_bipartite(degrees: &BipartiteDegrees) -> f64 {
    let n_e = degrees.edge_count();
    let mut s = ln_factorial(n_e);
    for &d in &degrees.top {
        s -= ln_factorial(d);
    }
    for &d in &degrees.bottom {
        s -= ln_factorial(d);
    }
    if n_e >= 2 {
        s -= 0.5 * excess(degrees.top.iter().copied()) * excess(degrees.bottom.iter().copied());
    }
    s
}

/// Microcanonical entropy of the clique formulation of the bipartite model:
/// one clique per publication, with only the total vertex degree conserved.
///
/// With `distinguishable = false` cliques of equal size are interchangeable,
/// which subtracts `sum_sizes ln(count!)`.
pub fn entropy_bipartite_cliques(
    clique_sizes: &[u64],
    degrees: &[u64],
    distinguishable: bool,
) -> Result<f64> {
    let stub_total: u64 = clique_sizes.iter().sum();
    let degree_total: u64 = degrees.iter().sum();
    if stub_total != degree_total {
        return Err(Error::NotGraphical(format!(
            "clique sizes sum to {stub_total} but degrees sum to {degree_total}"
        )));
    }
    if stub_total == 0 {
        return Ok(0.0);
    }
    let mut s = ln_factorial(stub_total);
    for &d in degrees {
        s -= ln_factorial(d);
    }
    let x = excess(degrees.iter().copied());
    for &size in clique_sizes {
        s -= ln_factorial(size);
        s -= 0.5 * (size * size - size) as f64 / stub_total as f64 * x;
    }
    if !distinguishable {
        let mut sizes = clique_sizes.to_vec();
        sizes.sort_unstable();
        let mut run = 1u64;
        for w in 1..=sizes.len() {
            if w < sizes.len() && sizes[w] == sizes[w - 1] {
                run += 1;
            } else {
                s -= ln_factorial(run);
                run = 1;
            }
        }
    }
    Ok(s)
}

/// Which degrees a DC-SBM conserves.
#[derive(Debug, Clone)]
pub enum SbmDegrees<'a> {
    /// Total degree per vertex (the standard degree-corrected SBM).
    Total(&'a [u64]),
    /// In-community and out-community degrees conserved separately; the
    /// entropy is the sum of a within-block and a between-block model.
    InOut {
        /// Degree towards the own block.
        within: &'a [u64],
        /// Degree towards other blocks.
        between: &'a [u64],
    },
}

/// Microcanonical entropy of the degree-corrected SBM given block
/// assignments, symmetric between-block edge counts `counts[r][s]` and the
/// conserved degrees.
pub fn entropy_dcsbm(
    assignment: &BlockAssignment,
    counts: &[Vec<u64>],
    degrees: &SbmDegrees,
) -> Result<f64> {
    let b = assignment.n_blocks();
    if counts.len() != b || counts.iter().any(|row| row.len() != b) {
        return Err(Error::Spec(format!("edge count matrix must be {b} x {b}")));
    }
    for (r, row) in counts.iter().enumerate() {
        for (s, &value) in row.iter().take(r).enumerate() {
            if value != counts[s][r] {
                return Err(Error::Spec("edge count matrix must be symmetric".into()));
            }
        }
    }
    match degrees {
        SbmDegrees::Total(d) => dcsbm_total(assignment, counts, d),
        SbmDegrees::InOut { within, between } => {
            let mut diag = vec![vec![0u64; b]; b];
            let mut off = vec![vec![0u64; b]; b];
            for r in 0..b {
                for s in 0..b {
                    if r == s {
                        diag[r][s] = counts[r][s];
                    } else {
                        off[r][s] = counts[r][s];
                    }
                }
            }
            Ok(dcsbm_total(assignment, &diag, within)? + dcsbm_total(assignment, &off, between)?)
        }
    }
}

fn dcsbm_total(assignment: &BlockAssignment, counts: &[Vec<u64>], degrees: &[u64]) -> Result<f64> {
    let b = assignment.n_blocks();
    if degrees.len() != assignment.n_vertices() {
        return Err(Error::Spec("one degree per vertex required".into()));
    }
    let members = assignment.members();

    // stubs with vertex label r
    let mut half_edges = vec![0u64; b];
    for r in 0..b {
        half_edges[r] = 2 * counts[r][r]
            + (0..b)
                .filter(|&s| s != r)
                .map(|s| counts[r][s])
                .sum::<u64>();
    }
    for r in 0..b {
        let sum: u64 = members[r].iter().map(|&v| degrees[v]).sum();
        if sum != half_edges[r] {
            return Err(Error::NotGraphical(format!(
                "block {r}: degrees sum to {sum} but the edge counts require {}",
                half_edges[r]
            )));
        }
    }

    let block_excess: Vec<f64> = (0..b)
        .map(|r| excess(members[r].iter().map(|&v| degrees[v])))
        .collect();

    let mut s = 0.0;
    for r in 0..b {
        for t in r..b {
            let n = counts[r][t];
            let aut: f64 = if r == t { 2.0 } else { 1.0 };
            s -= ln_factorial(n) + n as f64 * aut.ln();
            // duplicate-placement correction, zero below two copies
            if n >= 2 {
                let nf = n as f64;
                let term = if r == t {
                    aut * nf * nf / 2.0 * (block_excess[r] / half_edges[r] as f64).powi(2)
                } else {
                    aut * nf * nf / 2.0
                        * (block_excess[r] / half_edges[r] as f64)
                        * (block_excess[t] / half_edges[t] as f64)
                };
                s -= term;
            }
        }
    }
    for r in 0..b {
        if half_edges[r] == 0 {
            continue;
        }
        s += ln_factorial(half_edges[r]);
        for &v in &members[r] {
            s -= ln_factorial(degrees[v]);
        }
        // self-match correction: only within-block edges can self-match
        s -= counts[r][r] as f64 / half_edges[r] as f64 * block_excess[r];
    }
    Ok(s)
}

/// Microcanonical entropy of vertex-coupled multilayer graphs: an edge
/// configuration model at the aggregated degrees plus the log multinomial
/// assigning edges to layers.
pub fn entropy_multilayer_vertex_coupled(
    layer_counts: &[u64],
    aggregate_degrees: &[u64],
) -> Result<f64> {
    let n_total: u64 = layer_counts.iter().sum();
    let stub_total: u64 = aggregate_degrees.iter().sum();
    if stub_total != 2 * n_total {
        return Err(Error::NotGraphical(format!(
            "aggregate degrees sum to {stub_total}, layer counts require {}",
            2 * n_total
        )));
    }
    let mut s = entropy_edge_configuration_model(aggregate_degrees)?;
    s += ln_factorial(n_total);
    for &n in layer_counts {
        s -= ln_factorial(n);
    }
    Ok(s)
}

/// Entropy of uncoupled layers: the sum of independent per-layer edge
/// configuration models.
pub fn entropy_multilayer_uncoupled(per_layer_degrees: &[Vec<u64>]) -> Result<f64> {
    per_layer_degrees
        .iter()
        .map(|d| entropy_edge_configuration_model(d))
        .sum()
}

/// Parameters of the labelled-atom constructions understood by
/// [`build_labelled_atoms`].
#[derive(Debug, Clone)]
pub enum NamedModel {
    /// Two-label single-edge atom conserving both partition degree
    /// sequences. Top vertices come first in the ambient vertex order.
    Bipartite(BipartiteDegrees),
    /// Vertex-labelled edge atoms with per-block orbit aggregation.
    Sbm {
        /// Block assignment.
        assignment: BlockAssignment,
        /// Symmetric between-block edge counts.
        counts: Vec<Vec<u64>>,
        /// Total degree per vertex.
        degrees: Vec<u64>,
    },
    /// Two directed atoms per label pair; in- and out-degrees conserved
    /// separately per block.
    DirectedSbm {
        /// Block assignment.
        assignment: BlockAssignment,
        /// Ordered edge counts `counts[r][s]` from block `r` to block `s`.
        counts: Vec<Vec<u64>>,
        /// Out-degree per vertex.
        out_degrees: Vec<u64>,
        /// In-degree per vertex.
        in_degrees: Vec<u64>,
    },
    /// One edge-labelled single-edge atom per layer, independent layers.
    LinkCommunity {
        /// Per-layer degree sequences over the common vertex set.
        layer_degrees: Vec<Vec<u64>>,
    },
    /// One multi-edge atom per layer-label pattern; the entropy is the sum
    /// of the per-pattern configuration models.
    MultilayerEdgePattern {
        /// Each pattern is a set of layer labels carried by one atom.
        patterns: Vec<Vec<String>>,
        /// Per-pattern degree sequences over the common vertex set.
        pattern_degrees: Vec<Vec<u64>>,
    },
}

/// Builds the labelled atoms and the degree spec realising a named model in
/// the general machinery. Feeding the result to
/// [`crate::microcanonical::entropy_combinatorial`] reproduces the model's
/// closed-form entropy.
pub fn build_labelled_atoms(model: &NamedModel) -> Result<MicroDegreeSpec> {
    match model {
        NamedModel::Bipartite(degrees) => {
            let atom = Atom::with_labels(
                2,
                false,
                &[(0, 1, None)],
                Some(vec![Some("t".into()), Some("b".into())]),
            )?
            .named("bipartite-edge");
            let motif = Motif::new(atom)?;
            let n = degrees.top.len() + degrees.bottom.len();
            let mut top = vec![0u64; n];
            let mut bottom = vec![0u64; n];
            top[..degrees.top.len()].copy_from_slice(&degrees.top);
            bottom[degrees.top.len()..].copy_from_slice(&degrees.bottom);
            MicroDegreeSpec::from_orbit_degrees(vec![motif], n, vec![vec![top, bottom]])
        }
        NamedModel::Sbm {
            assignment,
            counts,
            degrees,
        } => {
            let b = assignment.n_blocks();
            let n = assignment.n_vertices();
            let mut motifs = Vec::new();
            let mut motif_counts = Vec::new();
            // orbit carrying label r within atom (r, s): index into groups
            let mut label_orbits: Vec<Vec<OrbitRef>> = vec![Vec::new(); b];
            for r in 0..b {
                for s in r..b {
                    let atom = Atom::with_labels(
                        2,
                        false,
                        &[(0, 1, None)],
                        Some(vec![Some(r.to_string()), Some(s.to_string())]),
                    )?
                    .named(&format!("e-{r}-{s}"));
                    let motif = Motif::new(atom)?;
                    let idx = motifs.len();
                    if r == s {
                        label_orbits[r].push(OrbitRef {
                            motif: idx,
                            orbit: 0,
                        });
                    } else {
                        label_orbits[r].push(OrbitRef {
                            motif: idx,
                            orbit: 0,
                        });
                        label_orbits[s].push(OrbitRef {
                            motif: idx,
                            orbit: 1,
                        });
                    }
                    motifs.push(motif);
                    motif_counts.push(counts[r][s]);
                }
            }
            let groups = (0..b)
                .map(|r| DegreeGroup {
                    members: label_orbits[r].clone(),
                    degrees: (0..n)
                        .map(|v| {
                            if assignment.block_of(v) == r {
                                degrees[v]
                            } else {
                                0
                            }
                        })
                        .collect(),
                })
                .collect();
            MicroDegreeSpec::with_groups(motifs, n, motif_counts, groups)
        }
        NamedModel::DirectedSbm {
            assignment,
            counts,
            out_degrees,
            in_degrees,
        } => {
            let b = assignment.n_blocks();
            let n = assignment.n_vertices();
            let mut motifs = Vec::new();
            let mut motif_counts = Vec::new();
            let mut out_orbits: Vec<Vec<OrbitRef>> = vec![Vec::new(); b];
            let mut in_orbits: Vec<Vec<OrbitRef>> = vec![Vec::new(); b];
            for r in 0..b {
                for s in 0..b {
                    let atom = Atom::with_labels(
                        2,
                        true,
                        &[(0, 1, None)],
                        Some(vec![Some(r.to_string()), Some(s.to_string())]),
                    )?
                    .named(&format!("e-{r}-to-{s}"));
                    let motif = Motif::new(atom)?;
                    let idx = motifs.len();
                    out_orbits[r].push(OrbitRef {
                        motif: idx,
                        orbit: 0,
                    });
                    in_orbits[s].push(OrbitRef {
                        motif: idx,
                        orbit: 1,
                    });
                    motifs.push(motif);
                    motif_counts.push(counts[r][s]);
                }
            }
            let mut groups = Vec::new();
            for r in 0..b {
                groups.push(DegreeGroup {
                    members: out_orbits[r].clone(),
                    degrees: (0..n)
                        .map(|v| {
                            if assignment.block_of(v) == r {
                                out_degrees[v]
                            } else {
                                0
                            }
                        })
                        .collect(),
                });
                groups.push(DegreeGroup {
                    members: in_orbits[r].clone(),
                    degrees: (0..n)
                        .map(|v| {
                            if assignment.block_of(v) == r {
                                in_degrees[v]
                            } else {
                                0
                            }
                        })
                        .collect(),
                });
            }
            MicroDegreeSpec::with_groups(motifs, n, motif_counts, groups)
        }
        NamedModel::LinkCommunity { layer_degrees } => {
            let n = layer_degrees
                .first()
                .map(Vec::len)
                .ok_or_else(|| Error::Spec("at least one layer required".into()))?;
            let mut motifs = Vec::new();
            let mut degrees = Vec::new();
            for (l, seq) in layer_degrees.iter().enumerate() {
                let atom =
                    Atom::with_labels(2, false, &[(0, 1, Some(format!("layer-{l}")))], None)?
                        .named(&format!("edge-layer-{l}"));
                motifs.push(Motif::new(atom)?);
                degrees.push(vec![seq.clone()]);
            }
            MicroDegreeSpec::from_orbit_degrees(motifs, n, degrees)
        }
        NamedModel::MultilayerEdgePattern {
            patterns,
            pattern_degrees,
        } => {
            if patterns.len() != pattern_degrees.len() {
                return Err(Error::Spec(
                    "one degree sequence per pattern required".into(),
                ));
            }
            let n = pattern_degrees
                .first()
                .map(Vec::len)
                .ok_or_else(|| Error::Spec("at least one pattern required".into()))?;
            let mut motifs = Vec::new();
            let mut degrees = Vec::new();
            for (pattern, seq) in patterns.iter().zip(pattern_degrees) {
                let edges: Vec<(usize, usize, Option<String>)> =
                    pattern.iter().map(|l| (0, 1, Some(l.clone()))).collect();
                let atom = Atom::with_labels(2, false, &edges, None)?
                    .named(&format!("pattern-{}", pattern.join("+")));
                motifs.push(Motif::new(atom)?);
                degrees.push(vec![seq.clone()]);
            }
            MicroDegreeSpec::from_orbit_degrees(motifs, n, degrees)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::microcanonical::entropy_combinatorial;

    #[test]
    fn bipartite_closed_form_values() {
        // unique matching
        let unique = BipartiteDegrees::new(vec![1], vec![1]).unwrap();
        assert_eq!(entropy_bipartite(&unique), 0.0);
        // two perfect matchings of a 2x2 system
        let two = BipartiteDegrees::new(vec![1, 1], vec![1, 1]).unwrap();
        assert!((entropy_bipartite(&two) - 2f64.ln()).abs() < 1e-12);

        assert!(BipartiteDegrees::new(vec![2], vec![1]).is_err());
    }

    #[test]
    fn bipartite_equals_general_machinery() {
        let degrees = BipartiteDegrees::new(vec![3, 2, 2, 1], vec![2, 2, 2, 1, 1]).unwrap();
        let spec = build_labelled_atoms(&NamedModel::Bipartite(degrees.clone())).unwrap();
        let general = entropy_combinatorial(&spec).unwrap();
        let closed = entropy_bipartite(&degrees);
        assert!((general - closed).abs() < 1e-9 * (1.0 + closed.abs()));
    }

    #[test]
    fn clique_formulation_matches_bipartite() {
        // d_t = d, clique sizes = d_b
        let top = vec![3u64, 2, 2, 1];
        let bottom = vec![2u64, 2, 2, 1, 1];
        let bipartite =
            entropy_bipartite(&BipartiteDegrees::new(top.clone(), bottom.clone()).unwrap());
        let cliques = entropy_bipartite_cliques(&bottom, &top, true).unwrap();
        assert!((bipartite - cliques).abs() < 1e-12);

        // one 2-clique with unit degrees: a single configuration
        assert_eq!(entropy_bipartite_cliques(&[2], &[1, 1], true).unwrap(), 0.0);

        // indistinguishable mode subtracts the size multiplicities
        let distinct = entropy_bipartite_cliques(&bottom, &top, true).unwrap();
        let merged = entropy_bipartite_cliques(&bottom, &top, false).unwrap();
        // sizes 2,2,2,1,1 -> subtract ln(3!) + ln(2!)
        assert!((distinct - merged - ln_factorial(3) - ln_factorial(2)).abs() < 1e-12);
    }

    #[test]
    fn dcsbm_single_block_is_the_configuration_model() {
        let degrees = vec![3u64, 2, 2, 1, 4, 2];
        let e: u64 = degrees.iter().sum::<u64>() / 2;
        let assignment = BlockAssignment::new(vec![0; 6], 1).unwrap();
        let sbm = entropy_dcsbm(&assignment, &[vec![e]], &SbmDegrees::Total(&degrees)).unwrap();
        let cm = entropy_edge_configuration_model(&degrees).unwrap();
        assert!((sbm - cm).abs() < 1e-9 * (1.0 + cm.abs()));
    }

    #[test]
    fn dcsbm_two_blocks_with_unit_degrees_is_bipartite() {
        // only inter-block edges, all degrees one
        let assignment = BlockAssignment::new(vec![0, 0, 0, 1, 1, 1], 2).unwrap();
        let counts = vec![vec![0, 3], vec![3, 0]];
        let degrees = vec![1u64; 6];
        let sbm = entropy_dcsbm(&assignment, &counts, &SbmDegrees::Total(&degrees)).unwrap();
        let bip = entropy_bipartite(&BipartiteDegrees::new(vec![1, 1, 1], vec![1, 1, 1]).unwrap());
        assert!((sbm - bip).abs() < 1e-12);
    }

    #[test]
    fn dcsbm_equals_general_machinery() {
        let assignment = BlockAssignment::new(vec![0, 0, 0, 0, 1, 1, 1, 1], 2).unwrap();
        let counts = vec![vec![3, 2], vec![2, 2]];
        // block sums: 2*3 + 2 = 8 and 2*2 + 2 = 6
        let degrees = vec![3u64, 2, 2, 1, 2, 2, 1, 1];
        let closed = entropy_dcsbm(&assignment, &counts, &SbmDegrees::Total(&degrees)).unwrap();
        let spec = build_labelled_atoms(&NamedModel::Sbm {
            assignment,
            counts,
            degrees,
        })
        .unwrap();
        let general = entropy_combinatorial(&spec).unwrap();
        assert!((general - closed).abs() < 1e-9 * (1.0 + closed.abs()));
    }

    #[test]
    fn dcsbm_is_invariant_under_block_relabelling() {
        let assignment = BlockAssignment::new(vec![0, 0, 1, 1, 1, 0], 2).unwrap();
        let counts = vec![vec![2, 1], vec![1, 3]];
        let degrees = vec![2u64, 2, 3, 2, 2, 1];
        let direct = entropy_dcsbm(&assignment, &counts, &SbmDegrees::Total(&degrees)).unwrap();

        let swapped_assignment = BlockAssignment::new(vec![1, 1, 0, 0, 0, 1], 2).unwrap();
        let swapped_counts = vec![vec![3, 1], vec![1, 2]];
        let swapped = entropy_dcsbm(
            &swapped_assignment,
            &swapped_counts,
            &SbmDegrees::Total(&degrees),
        )
        .unwrap();
        assert!((direct - swapped).abs() < 1e-12);
    }

    #[test]
    fn dcsbm_in_out_mode_sums_two_copies() {
        let assignment = BlockAssignment::new(vec![0, 0, 0, 1, 1, 1], 2).unwrap();
        let counts = vec![vec![2, 2], vec![2, 1]];
        let within = vec![2u64, 1, 1, 1, 1, 0];
        let between = vec![1u64, 1, 0, 0, 1, 1];
        let value = entropy_dcsbm(
            &assignment,
            &counts,
            &SbmDegrees::InOut {
                within: &within,
                between: &between,
            },
        )
        .unwrap();
        let diag = vec![vec![2, 0], vec![0, 1]];
        let off = vec![vec![0, 2], vec![2, 0]];
        let expect = entropy_dcsbm(&assignment, &diag, &SbmDegrees::Total(&within)).unwrap()
            + entropy_dcsbm(&assignment, &off, &SbmDegrees::Total(&between)).unwrap();
        assert!((value - expect).abs() < 1e-12);
    }

    #[test]
    fn directed_sbm_reduces_to_directed_configuration_model_at_one_block() {
        let out_degrees = vec![2u64, 1, 1, 0];
        let in_degrees = vec![0u64, 1, 1, 2];
        let assignment = BlockAssignment::new(vec![0; 4], 1).unwrap();
        let spec = build_labelled_atoms(&NamedModel::DirectedSbm {
            assignment,
            counts: vec![vec![4]],
            out_degrees: out_degrees.clone(),
            in_degrees: in_degrees.clone(),
        })
        .unwrap();
        let general = entropy_combinatorial(&spec).unwrap();

        let plain = MicroDegreeSpec::from_orbit_degrees(
            vec![Motif::from_catalogue("directed-edge").unwrap()],
            4,
            vec![vec![out_degrees, in_degrees]],
        )
        .unwrap();
        let direct = entropy_combinatorial(&plain).unwrap();
        assert!((general - direct).abs() < 1e-9 * (1.0 + direct.abs()));
    }

    #[test]
    fn directed_sbm_atoms_have_trivial_symmetry() {
        let assignment = BlockAssignment::new(vec![0, 0, 1, 1], 2).unwrap();
        let spec = build_labelled_atoms(&NamedModel::DirectedSbm {
            assignment,
            counts: vec![vec![1, 1], vec![1, 1]],
            out_degrees: vec![1, 1, 1, 1],
            in_degrees: vec![1, 1, 1, 1],
        })
        .unwrap();
        assert_eq!(spec.motifs().len(), 4);
        for motif in spec.motifs() {
            assert_eq!(motif.aut_size(), 1);
            assert_eq!(motif.symmetry().orbit_count(), 2);
        }
    }

    #[test]
    fn sbm_atoms_have_the_stated_symmetries() {
        let assignment = BlockAssignment::new(vec![0, 0, 1, 1], 2).unwrap();
        let spec = build_labelled_atoms(&NamedModel::Sbm {
            assignment,
            counts: vec![vec![1, 1], vec![1, 1]],
            degrees: vec![2, 1, 2, 1],
        })
        .unwrap();
        // atoms e-0-0, e-0-1, e-1-1
        assert_eq!(spec.motifs().len(), 3);
        assert_eq!(spec.motifs()[0].aut_size(), 2);
        assert_eq!(spec.motifs()[0].symmetry().orbit_count(), 1);
        assert_eq!(spec.motifs()[1].aut_size(), 1);
        assert_eq!(spec.motifs()[1].symmetry().orbit_count(), 2);
        assert_eq!(spec.motifs()[2].aut_size(), 2);
    }

    #[test]
    fn link_communities_are_independent_layers() {
        let layers = vec![vec![2u64, 1, 1, 2], vec![1u64, 1, 1, 1]];
        let spec = build_labelled_atoms(&NamedModel::LinkCommunity {
            layer_degrees: layers.clone(),
        })
        .unwrap();
        let general = entropy_combinatorial(&spec).unwrap();
        let sum: f64 = layers
            .iter()
            .map(|d| entropy_edge_configuration_model(d).unwrap())
            .sum();
        assert!((general - sum).abs() < 1e-9 * (1.0 + sum.abs()));
    }

    #[test]
    fn edge_patterns_sum_per_pattern_models() {
        let patterns = vec![
            vec!["a".to_string()],
            vec!["a".to_string(), "b".to_string()],
            vec!["b".to_string(), "c".to_string()],
        ];
        let degrees = vec![
            vec![2u64, 1, 1, 2],
            vec![1u64, 1, 1, 1],
            vec![2u64, 2, 1, 1],
        ];
        let spec = build_labelled_atoms(&NamedModel::MultilayerEdgePattern {
            patterns,
            pattern_degrees: degrees.clone(),
        })
        .unwrap();
        for motif in spec.motifs() {
            assert_eq!(motif.aut_size(), 2);
            assert_eq!(motif.symmetry().orbit_count(), 1);
        }
        let general = entropy_combinatorial(&spec).unwrap();
        let sum: f64 = degrees
            .iter()
            .map(|d| entropy_edge_configuration_model(d).unwrap())
            .sum();
        assert!((general - sum).abs() < 1e-9 * (1.0 + sum.abs()));
    }

    #[test]
    fn multilayer_vertex_coupling_adds_the_assignment_multinomial() {
        let degrees = vec![2u64, 2, 1, 1, 1, 1];
        // one layer: plain configuration model
        let single = entropy_multilayer_vertex_coupled(&[4], &degrees).unwrap();
        let cm = entropy_edge_configuration_model(&degrees).unwrap();
        assert!((single - cm).abs() < 1e-12);

        // two equal layers: plus ln C(2n, n)
        let double = entropy_multilayer_vertex_coupled(&[2, 2], &degrees).unwrap();
        let binom = ln_factorial(4) - 2.0 * ln_factorial(2);
        assert!((double - cm - binom).abs() < 1e-12);

        assert!(entropy_multilayer_vertex_coupled(&[3], &degrees).is_err());
    }

    #[test]
    fn uncoupled_layers_sum_their_entropies() {
        let layers = vec![vec![2u64, 1, 1], vec![1u64, 1, 0]];
        let total = entropy_multilayer_uncoupled(&layers).unwrap();
        let sum: f64 = layers
            .iter()
            .map(|d| entropy_edge_configuration_model(d).unwrap())
            .sum();
        assert!((total - sum).abs() < 1e-12);
    }
}

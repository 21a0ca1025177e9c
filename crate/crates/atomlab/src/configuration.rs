//! Subgraph configurations on a finite vertex set.
//!
//! A [`Placement`] is one copy of an atom on concrete vertices, stored in a
//! canonical form so that tuples related by an atom automorphism compare
//! equal. A [`Configuration`] is a set of placements (single occupancy); it
//! projects to a [`Graph`] by taking the union of placement edge sets.

use std::collections::{BTreeMap, BTreeSet};

use crate::atoms::Motif;
use crate::error::{Error, Result};

/// One `m`-subgraph of the complete graph: a motif index into the caller's
/// motif list plus a canonical vertex tuple (entry `v` is the image of atom
/// vertex `v`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Placement {
    motif: usize,
    vertices: Vec<u32>,
}

impl Placement {
    /// Canonicalizes and validates a vertex tuple for the given motif.
    pub fn new(motif_idx: usize, motif: &Motif, vertices: &[u32]) -> Result<Self> {
        if vertices.len() != motif.order() {
            return Err(Error::Spec(format!(
                "placement tuple has length {} but atom order is {}",
                vertices.len(),
                motif.order()
            )));
        }
        let mut seen = BTreeSet::new();
        for &v in vertices {
            if !seen.insert(v) {
                return Err(Error::Spec(format!("placement repeats vertex {v}")));
            }
        }
        Ok(Placement {
            motif: motif_idx,
            vertices: motif.symmetry().canonical_tuple(vertices),
        })
    }

    /// Index of the motif in the catalogue this placement refers to.
    pub fn motif(&self) -> usize {
        self.motif
    }

    /// Canonical vertex tuple.
    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    /// The edges this placement contributes, as normalized
    /// `(u, v, label)` triples.
    pub fn edges(&self, motif: &Motif) -> Vec<(u32, u32, Option<String>)> {
        motif
            .atom()
            .edges()
            .iter()
            .map(|e| {
                let (mut a, mut b) = (self.vertices[e.source], self.vertices[e.target]);
                if !motif.atom().directed() && a > b {
                    std::mem::swap(&mut a, &mut b);
                }
                (a, b, e.label.clone())
            })
            .collect()
    }
}

/// A set of placements on `n_vertices` vertices; the latent state from which
/// a network is produced. Single occupancy is enforced by set semantics.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Configuration {
    n_vertices: usize,
    placements: BTreeSet<Placement>,
}

impl Configuration {
    /// An empty configuration.
    pub fn new(n_vertices: usize) -> Self {
        Configuration {
            n_vertices,
            placements: BTreeSet::new(),
        }
    }

    /// Number of ambient vertices.
    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Inserts a placement; returns false if it was already present.
    pub fn insert(&mut self, placement: Placement) -> Result<bool> {
        if let Some(&max) = placement.vertices.iter().max() {
            if max as usize >= self.n_vertices {
                return Err(Error::Spec(format!(
                    "placement vertex {max} outside 0..{}",
                    self.n_vertices
                )));
            }
        }
        Ok(self.placements.insert(placement))
    }

    /// Placements in deterministic order.
    pub fn placements(&self) -> impl Iterator<Item = &Placement> {
        self.placements.iter()
    }

    /// Number of placements.
    pub fn len(&self) -> usize {
        self.placements.len()
    }

    /// True when no placement is present.
    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    /// Membership test on canonical form.
    pub fn contains(&self, placement: &Placement) -> bool {
        self.placements.contains(placement)
    }
}

/// Enumerates every `m`-subgraph of the complete graph on `n_vertices`
/// vertices exactly once, in deterministic order (ascending vertex subsets,
/// canonical tuples within a subset).
pub fn enumerate_placements(n_vertices: usize, motif_idx: usize, motif: &Motif) -> Vec<Placement> {
    let k = motif.order();
    let mut out = Vec::new();
    if k > n_vertices {
        return out;
    }
    let mut subset: Vec<u32> = (0..k as u32).collect();
    loop {
        out.extend(placements_on_subset(motif_idx, motif, &subset));
        // next k-subset in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if subset[i] < (n_vertices - k + i) as u32 {
                subset[i] += 1;
                for j in i + 1..k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Distinct placements of a motif on one fixed vertex subset, sorted.
fn placements_on_subset(motif_idx: usize, motif: &Motif, subset: &[u32]) -> Vec<Placement> {
    let mut distinct: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut perm: Vec<usize> = (0..subset.len()).collect();
    permute(&mut perm, 0, &mut |p| {
        let tuple: Vec<u32> = p.iter().map(|&i| subset[i]).collect();
        distinct.insert(motif.symmetry().canonical_tuple(&tuple));
    });
    distinct
        .into_iter()
        .map(|vertices| Placement {
            motif: motif_idx,
            vertices,
        })
        .collect()
}

fn permute<F: FnMut(&[usize])>(items: &mut Vec<usize>, k: usize, f: &mut F) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Per-motif placement counts of a configuration; index `m` counts the
/// placements referring to motif `m`, so absent motifs report zero.
pub fn atom_counts(motifs: &[Motif], config: &Configuration) -> Vec<u64> {
    let mut counts = vec![0u64; motifs.len()];
    for p in config.placements() {
        counts[p.motif()] += 1;
    }
    counts
}

/// Per-motif placement counts keyed by canonical key, the portable form of
/// [`atom_counts`].
pub fn atom_counts_by_key(motifs: &[Motif], config: &Configuration) -> BTreeMap<Vec<u8>, u64> {
    atom_counts(motifs, config)
        .into_iter()
        .enumerate()
        .map(|(m, c)| (motifs[m].symmetry().canonical_key().to_vec(), c))
        .collect()
}

/// Orbit degree table of a configuration: `degrees[m][i][v]` counts the
/// placements of motif `m` in which vertex `v` occupies orbit `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDegreeTable {
    /// `[motif][orbit][vertex]`.
    pub degrees: Vec<Vec<Vec<u64>>>,
}

/// Computes the orbit degree table of a configuration.
pub fn orbit_degrees(motifs: &[Motif], config: &Configuration) -> OrbitDegreeTable {
    let n = config.n_vertices();
    let mut degrees: Vec<Vec<Vec<u64>>> = motifs
        .iter()
        .map(|m| vec![vec![0u64; n]; m.symmetry().orbit_count()])
        .collect();
    for p in config.placements() {
        let sym = motifs[p.motif()].symmetry();
        for (atom_vertex, &graph_vertex) in p.vertices().iter().enumerate() {
            let orbit = sym.orbit_of(atom_vertex);
            degrees[p.motif()][orbit][graph_vertex as usize] += 1;
        }
    }
    OrbitDegreeTable { degrees }
}

/// Result of the graphicality check: the per-motif counts implied by the
/// orbit degree sums, or the reasons the sequence is not graphical.
#[derive(Debug, Clone)]
pub struct GraphicalityReport {
    /// True when every orbit sum divides evenly and motif counts agree.
    pub graphical: bool,
    /// Implied `n_m` per motif (present only when consistent for that motif).
    pub counts: Vec<Option<u64>>,
    /// Human-readable reasons for failure; empty when graphical.
    pub reasons: Vec<String>,
}

/// Checks whether an orbit degree table contains orbits in the right
/// proportions: for every motif the sums `sum_v d_{m,i}(v) / |O_{m,i}|` must
/// be a single integer `n_m` across all orbits `i`.
pub fn check_graphicality(motifs: &[Motif], table: &OrbitDegreeTable) -> GraphicalityReport {
    let mut counts = Vec::with_capacity(motifs.len());
    let mut reasons = Vec::new();
    for (m, motif) in motifs.iter().enumerate() {
        let mut implied: Option<u64> = None;
        let mut consistent = true;
        for (i, seq) in table.degrees[m].iter().enumerate() {
            let total: u64 = seq.iter().sum();
            let orbit_size = motif.symmetry().orbit_size(i) as u64;
            if !total.is_multiple_of(orbit_size) {
                reasons.push(format!(
                    "motif {m} orbit {i}: degree sum {total} is not divisible by orbit size {orbit_size}"
                ));
                consistent = false;
                continue;
            }
            let n = total / orbit_size;
            match implied {
                None => implied = Some(n),
                Some(prev) if prev != n => {
                    reasons.push(format!(
                        "motif {m}: orbit {i} implies {n} copies but an earlier orbit implies {prev}"
                    ));
                    consistent = false;
                }
                _ => {}
            }
        }
        counts.push(if consistent { implied } else { None });
    }
    GraphicalityReport {
        graphical: reasons.is_empty(),
        counts,
        reasons,
    }
}

/// A simple graph, optionally directed, with optional edge labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n_vertices: usize,
    directed: bool,
    allows_self_loops: bool,
    edges: BTreeSet<(u32, u32, Option<String>)>,
}

impl Graph {
    /// An empty graph.
    pub fn new(n_vertices: usize, directed: bool) -> Self {
        Graph {
            n_vertices,
            directed,
            allows_self_loops: false,
            edges: BTreeSet::new(),
        }
    }

    /// Enables self-loop edges (used when projecting loop atoms).
    pub fn with_self_loops(mut self) -> Self {
        self.allows_self_loops = true;
        self
    }

    /// Number of vertices.
    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Whether edges are directed.
    pub fn directed(&self) -> bool {
        self.directed
    }

    /// Inserts an edge; returns false when the (pair, label) entry already
    /// exists.
    pub fn add_edge(&mut self, u: u32, v: u32, label: Option<String>) -> Result<bool> {
        if u as usize >= self.n_vertices || v as usize >= self.n_vertices {
            return Err(Error::Spec(format!(
                "edge ({u}, {v}) outside 0..{}",
                self.n_vertices
            )));
        }
        if u == v && !self.allows_self_loops {
            return Err(Error::Spec(format!(
                "self-loop on vertex {u} is not enabled"
            )));
        }
        let (a, b) = if self.directed || u <= v {
            (u, v)
        } else {
            (v, u)
        };
        Ok(self.edges.insert((a, b, label)))
    }

    /// Edges in deterministic order.
    pub fn edges(&self) -> impl Iterator<Item = &(u32, u32, Option<String>)> {
        self.edges.iter()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Membership test with normalized endpoints.
    pub fn has_edge(&self, u: u32, v: u32, label: &Option<String>) -> bool {
        let (a, b) = if self.directed || u <= v {
            (u, v)
        } else {
            (v, u)
        };
        self.edges.contains(&(a, b, label.clone()))
    }

    /// True when any edge carries a label.
    pub fn has_labels(&self) -> bool {
        self.edges.iter().any(|(_, _, l)| l.is_some())
    }
}

/// How configuration edges are merged into a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionMode {
    /// Union of edge pairs; edge labels are dropped and parallel edges
    /// collapse regardless of label.
    Simple,
    /// Union per (pair, label): parallel edges in different layers survive.
    LabelPreserving,
}

/// A projected graph plus the number of parallel edges that collapsed.
#[derive(Debug, Clone)]
pub struct Projection {
    /// The projected graph.
    pub graph: Graph,
    /// How many placement edges were dropped as duplicates of an existing
    /// (pair, label) entry.
    pub collapsed_parallel_edges: u64,
}

/// Projects a configuration to a graph by taking the union of the placement
/// edge sets.
pub fn project(
    motifs: &[Motif],
    config: &Configuration,
    mode: ProjectionMode,
) -> Result<Projection> {
    let mut directed: Option<bool> = None;
    let mut needs_loops = false;
    for p in config.placements() {
        let motif = &motifs[p.motif()];
        match directed {
            None => directed = Some(motif.atom().directed()),
            Some(d) if d != motif.atom().directed() => {
                return Err(Error::Spec(
                    "cannot project a configuration mixing directed and undirected atoms".into(),
                ))
            }
            _ => {}
        }
        if motif.atom().edges().iter().any(|e| e.source == e.target) {
            needs_loops = true;
        }
    }
    let mut graph = Graph::new(config.n_vertices(), directed.unwrap_or(false));
    if needs_loops {
        graph = graph.with_self_loops();
    }
    let mut collapsed = 0u64;
    for p in config.placements() {
        for (u, v, label) in p.edges(&motifs[p.motif()]) {
            let label = match mode {
                ProjectionMode::Simple => None,
                ProjectionMode::LabelPreserving => label,
            };
            if !graph.add_edge(u, v, label)? {
                collapsed += 1;
            }
        }
    }
    Ok(Projection {
        graph,
        collapsed_parallel_edges: collapsed,
    })
}

/// Tests whether the projection of `config` equals `graph` exactly.
///
/// The projection preserves labels when the reference graph carries any.
pub fn covers(motifs: &[Motif], config: &Configuration, graph: &Graph) -> Result<bool> {
    if config.n_vertices() != graph.n_vertices() {
        return Err(Error::VertexCountMismatch {
            left: config.n_vertices(),
            right: graph.n_vertices(),
        });
    }
    let mode = if graph.has_labels() {
        ProjectionMode::LabelPreserving
    } else {
        ProjectionMode::Simple
    };
    let projected = project(motifs, config, mode)?.graph;
    Ok(projected.edges == graph.edges
        && projected.directed == graph.directed
        && projected.n_vertices == graph.n_vertices)
}

/// Order cap for motif counting in graphs.
pub const MAX_COUNT_ORDER: usize = 5;

/// Counts the `m`-subgraphs of a graph (distinct subgraphs, not embeddings).
///
/// Unlabelled undirected edges and triangles use closed-form and
/// neighbourhood-merge counting; other motifs fall back to subset
/// enumeration over non-isolated vertices.
pub fn count_motif_in_graph(graph: &Graph, motif: &Motif) -> Result<u64> {
    if motif.order() > MAX_COUNT_ORDER {
        return Err(Error::OracleRefusal(format!(
            "motif counting is capped at order {MAX_COUNT_ORDER}, got {}",
            motif.order()
        )));
    }
    let atom = motif.atom();
    let plain_graph = !graph.has_labels() && !graph.directed;
    let plain_atom = !atom.directed()
        && !atom.has_vertex_labels()
        && atom.edges().iter().all(|e| e.label.is_none());
    if plain_graph && plain_atom {
        let key = motif.symmetry().canonical_key();
        let edge_key = Motif::from_catalogue("edge")?
            .symmetry()
            .canonical_key()
            .to_vec();
        let tri_key = Motif::from_catalogue("triangle")?
            .symmetry()
            .canonical_key()
            .to_vec();
        if key == edge_key {
            return Ok(graph.edge_count() as u64);
        }
        if key == tri_key {
            return Ok(count_triangles(graph));
        }
    }
    count_motif_generic(graph, motif)
}

fn count_triangles(graph: &Graph) -> u64 {
    let n = graph.n_vertices();
    let mut adj: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n];
    for &(u, v, _) in graph.edges() {
        if u != v {
            adj[u as usize].insert(v);
            adj[v as usize].insert(u);
        }
    }
    let mut total = 0u64;
    for &(u, v, _) in graph.edges() {
        if u == v {
            continue;
        }
        total += adj[u as usize].intersection(&adj[v as usize]).count() as u64;
    }
    total / 3
}

fn count_motif_generic(graph: &Graph, motif: &Motif) -> Result<u64> {
    let k = motif.order();
    let mut active: Vec<u32> = Vec::new();
    let mut seen = vec![false; graph.n_vertices()];
    for &(u, v, _) in graph.edges() {
        for w in [u, v] {
            if !seen[w as usize] {
                seen[w as usize] = true;
                active.push(w);
            }
        }
    }
    active.sort_unstable();
    if k > active.len() {
        return Ok(0);
    }
    let mut log_combos = 0.0f64;
    for j in 0..k {
        log_combos += ((active.len() - j) as f64).ln();
    }
    if log_combos > (5e7f64).ln() {
        return Err(Error::OracleRefusal(format!(
            "subset enumeration over {} candidate vertices is too large",
            active.len()
        )));
    }
    let mut count = 0u64;
    let mut subset_idx: Vec<usize> = (0..k).collect();
    loop {
        let subset: Vec<u32> = subset_idx.iter().map(|&i| active[i]).collect();
        for placement in placements_on_subset(0, motif, &subset) {
            let present = placement
                .edges(motif)
                .iter()
                .all(|(u, v, l)| graph.has_edge(*u, *v, l));
            if present {
                count += 1;
            }
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(count);
            }
            i -= 1;
            if subset_idx[i] < active.len() - k + i {
                subset_idx[i] += 1;
                for j in i + 1..k {
                    subset_idx[j] = subset_idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::count_placements;

    fn motifs(names: &[&str]) -> Vec<Motif> {
        names
            .iter()
            .map(|n| Motif::from_catalogue(n).unwrap())
            .collect()
    }

    #[test]
    fn enumeration_matches_closed_form_counts() {
        for name in [
            "edge",
            "directed-edge",
            "path-3",
            "triangle",
            "4-cycle",
            "4-clique",
        ] {
            let motif = Motif::from_catalogue(name).unwrap();
            for n in motif.order()..=7 {
                let listed = enumerate_placements(n, 0, &motif);
                let expected = count_placements(n, motif.symmetry());
                assert_eq!(
                    num_bigint::BigUint::from(listed.len() as u64),
                    expected,
                    "{name} at N={n}"
                );
                let distinct: BTreeSet<_> = listed.iter().collect();
                assert_eq!(distinct.len(), listed.len(), "{name} duplicates at N={n}");
            }
        }
    }

    #[test]
    fn single_triangle_placement_on_three_vertices() {
        let motif = Motif::from_catalogue("triangle").unwrap();
        let listed = enumerate_placements(3, 0, &motif);
        assert_eq!(listed.len(), 1);
        assert_eq!(listed[0].vertices(), &[0, 1, 2]);
    }

    #[test]
    fn four_cycles_on_four_vertices_are_distinct() {
        let motif = Motif::from_catalogue("4-cycle").unwrap();
        let listed = enumerate_placements(4, 0, &motif);
        assert_eq!(listed.len(), 3);
        let set: BTreeSet<_> = listed.into_iter().collect();
        assert_eq!(set.len(), 3);
    }

    #[test]
    fn automorphic_tuples_compare_equal() {
        let ms = motifs(&["path-3"]);
        let a = Placement::new(0, &ms[0], &[5, 1, 3]).unwrap();
        let b = Placement::new(0, &ms[0], &[3, 1, 5]).unwrap();
        assert_eq!(a, b);
        let mut config = Configuration::new(6);
        assert!(config.insert(a).unwrap());
        assert!(!config.insert(b).unwrap());
        assert_eq!(config.len(), 1);
    }

    #[test]
    fn counts_and_single_occupancy() {
        let ms = motifs(&["triangle"]);
        let mut config = Configuration::new(5);
        let p1 = Placement::new(0, &ms[0], &[0, 1, 2]).unwrap();
        let p2 = Placement::new(0, &ms[0], &[1, 2, 3]).unwrap();
        assert!(config.insert(p1.clone()).unwrap());
        assert!(config.insert(p2).unwrap());
        assert!(!config.insert(p1).unwrap());
        assert_eq!(atom_counts(&ms, &config), vec![2]);
        let empty = Configuration::new(5);
        assert_eq!(atom_counts(&ms, &empty), vec![0]);
    }

    #[test]
    fn orbit_degrees_of_small_configurations() {
        let ms = motifs(&["triangle"]);
        let mut config = Configuration::new(4);
        config
            .insert(Placement::new(0, &ms[0], &[0, 1, 2]).unwrap())
            .unwrap();
        let table = orbit_degrees(&ms, &config);
        assert_eq!(table.degrees[0][0], vec![1, 1, 1, 0]);

        let ms = motifs(&["path-3"]);
        let mut config = Configuration::new(3);
        config
            .insert(Placement::new(0, &ms[0], &[0, 1, 2]).unwrap())
            .unwrap();
        let table = orbit_degrees(&ms, &config);
        // orbit 0 is the pair of ends, orbit 1 the center
        assert_eq!(table.degrees[0][0], vec![1, 0, 1]);
        assert_eq!(table.degrees[0][1], vec![0, 1, 0]);

        let ms = motifs(&["edge"]);
        let mut config = Configuration::new(3);
        config
            .insert(Placement::new(0, &ms[0], &[0, 1]).unwrap())
            .unwrap();
        config
            .insert(Placement::new(0, &ms[0], &[0, 2]).unwrap())
            .unwrap();
        let table = orbit_degrees(&ms, &config);
        assert_eq!(table.degrees[0][0], vec![2, 1, 1]);
    }

    #[test]
    fn graphicality_checks() {
        let ms = motifs(&["triangle"]);
        let good = OrbitDegreeTable {
            degrees: vec![vec![vec![1, 1, 1, 0]]],
        };
        let report = check_graphicality(&ms, &good);
        assert!(report.graphical);
        assert_eq!(report.counts, vec![Some(1)]);

        let bad = OrbitDegreeTable {
            degrees: vec![vec![vec![1, 1, 0, 0]]],
        };
        let report = check_graphicality(&ms, &bad);
        assert!(!report.graphical);

        let ms = motifs(&["path-3"]);
        // ends sum 4, center sum 2 -> two paths
        let table = OrbitDegreeTable {
            degrees: vec![vec![vec![2, 1, 1, 0], vec![0, 1, 1, 0]]],
        };
        let report = check_graphicality(&ms, &table);
        assert!(report.graphical);
        assert_eq!(report.counts, vec![Some(2)]);
    }

    #[test]
    fn projection_merges_shared_edges() {
        let ms = motifs(&["triangle"]);
        let mut config = Configuration::new(4);
        config
            .insert(Placement::new(0, &ms[0], &[0, 1, 2]).unwrap())
            .unwrap();
        config
            .insert(Placement::new(0, &ms[0], &[0, 1, 3]).unwrap())
            .unwrap();
        let projection = project(&ms, &config, ProjectionMode::Simple).unwrap();
        assert_eq!(projection.graph.edge_count(), 5);
        assert_eq!(projection.collapsed_parallel_edges, 1);
    }

    #[test]
    fn projection_of_mixed_motifs_collapses_duplicates() {
        let ms = motifs(&["edge", "triangle"]);
        let mut config = Configuration::new(3);
        config
            .insert(Placement::new(0, &ms[0], &[0, 1]).unwrap())
            .unwrap();
        config
            .insert(Placement::new(1, &ms[1], &[0, 1, 2]).unwrap())
            .unwrap();
        let projection = project(&ms, &config, ProjectionMode::Simple).unwrap();
        assert_eq!(projection.graph.edge_count(), 3);

        let empty = Configuration::new(3);
        let projection = project(&ms, &empty, ProjectionMode::Simple).unwrap();
        assert_eq!(projection.graph.edge_count(), 0);
    }

    #[test]
    fn cover_detection() {
        let ms = motifs(&["edge"]);
        let mut graph = Graph::new(3, false);
        graph.add_edge(0, 1, None).unwrap();
        graph.add_edge(1, 2, None).unwrap();

        // the edge list of a graph is a cover
        let mut config = Configuration::new(3);
        config
            .insert(Placement::new(0, &ms[0], &[0, 1]).unwrap())
            .unwrap();
        config
            .insert(Placement::new(0, &ms[0], &[1, 2]).unwrap())
            .unwrap();
        assert!(covers(&ms, &config, &graph).unwrap());

        // missing an edge
        let mut partial = Configuration::new(3);
        partial
            .insert(Placement::new(0, &ms[0], &[0, 1]).unwrap())
            .unwrap();
        assert!(!covers(&ms, &partial, &graph).unwrap());

        // extra edge outside E(G)
        let mut extra = config.clone();
        extra
            .insert(Placement::new(0, &ms[0], &[0, 2]).unwrap())
            .unwrap();
        assert!(!covers(&ms, &extra, &graph).unwrap());

        let other = Graph::new(4, false);
        assert!(covers(&ms, &config, &other).is_err());
    }

    #[test]
    fn motif_counting_in_k4() {
        let mut k4 = Graph::new(4, false);
        for u in 0..4u32 {
            for v in (u + 1)..4 {
                k4.add_edge(u, v, None).unwrap();
            }
        }
        let triangle = Motif::from_catalogue("triangle").unwrap();
        let edge = Motif::from_catalogue("edge").unwrap();
        let cycle = Motif::from_catalogue("4-cycle").unwrap();
        assert_eq!(count_motif_in_graph(&k4, &triangle).unwrap(), 4);
        assert_eq!(count_motif_in_graph(&k4, &edge).unwrap(), 6);
        assert_eq!(count_motif_in_graph(&k4, &cycle).unwrap(), 3);
    }

    #[test]
    fn fast_and_generic_triangle_counts_agree() {
        let triangle = Motif::from_catalogue("triangle").unwrap();
        let mut graph = Graph::new(7, false);
        for (u, v) in [
            (0, 1),
            (1, 2),
            (0, 2),
            (2, 3),
            (3, 4),
            (2, 4),
            (4, 5),
            (5, 6),
        ] {
            graph.add_edge(u, v, None).unwrap();
        }
        let fast = count_motif_in_graph(&graph, &triangle).unwrap();
        let generic = count_motif_generic(&graph, &triangle).unwrap();
        assert_eq!(fast, generic);
        assert_eq!(fast, 2);
    }
}

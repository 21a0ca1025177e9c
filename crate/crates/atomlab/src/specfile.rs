//! External file formats: atom specifications, ensemble specifications,
//! configuration JSONL and graph edge lists.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::atoms::{Atom, Motif};
use crate::canonical::{CanonicalCountSpec, CanonicalDegreeSpec, CanonicalGroup};
use crate::configuration::{Configuration, Graph, Placement};
use crate::error::{Error, Result};
use crate::microcanonical::{DegreeGroup, MicroDegreeSpec};
use crate::special_models::{BipartiteDegrees, BlockAssignment, NamedModel};

/// An atom reference in a spec file: either a catalogue name or an inline
/// description.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AtomSpec {
    /// Catalogue name such as `"triangle"`.
    Name(String),
    /// Full inline description.
    Inline(InlineAtom),
}

/// Inline atom description:
/// `{name, directed, order, edges: [[u, v], ...], vertex_labels?, edge_labels?}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineAtom {
    /// Display name; also the handle degree tables refer to.
    pub name: String,
    /// Directed edges if true.
    #[serde(default)]
    pub directed: bool,
    /// Number of vertices.
    pub order: usize,
    /// Edge list.
    pub edges: Vec<(usize, usize)>,
    /// Vertex labels keyed by vertex index rendered as a string.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_labels: Option<BTreeMap<String, String>>,
    /// Edge labels keyed by edge index rendered as a string.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_labels: Option<BTreeMap<String, String>>,
}

impl AtomSpec {
    /// Resolves to a validated atom.
    pub fn to_atom(&self) -> Result<Atom> {
        match self {
            AtomSpec::Name(name) => Atom::catalogue(name)
                .ok_or_else(|| Error::Spec(format!("unknown catalogue atom `{name}`"))),
            AtomSpec::Inline(inline) => {
                let mut vertex_labels = vec![None; inline.order];
                if let Some(map) = &inline.vertex_labels {
                    for (key, label) in map {
                        let v: usize = key
                            .parse()
                            .map_err(|_| Error::Spec(format!("bad vertex index `{key}`")))?;
                        if v >= inline.order {
                            return Err(Error::Spec(format!(
                                "vertex label index {v} out of range"
                            )));
                        }
                        vertex_labels[v] = Some(label.clone());
                    }
                }
                let mut edges: Vec<(usize, usize, Option<String>)> =
                    inline.edges.iter().map(|&(u, v)| (u, v, None)).collect();
                if let Some(map) = &inline.edge_labels {
                    for (key, label) in map {
                        let e: usize = key
                            .parse()
                            .map_err(|_| Error::Spec(format!("bad edge index `{key}`")))?;
                        if e >= edges.len() {
                            return Err(Error::Spec(format!("edge label index {e} out of range")));
                        }
                        edges[e].2 = Some(label.clone());
                    }
                }
                let has_vertex_labels = vertex_labels.iter().any(Option::is_some);
                Ok(Atom::with_labels(
                    inline.order,
                    inline.directed,
                    &edges,
                    has_vertex_labels.then_some(vertex_labels),
                )?
                .named(&inline.name))
            }
        }
    }

    /// The handle this atom is referred to by elsewhere in the file.
    pub fn handle(&self) -> &str {
        match self {
            AtomSpec::Name(name) => name,
            AtomSpec::Inline(inline) => &inline.name,
        }
    }
}

/// One per-orbit degree entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitDegreesEntry<T> {
    /// Atom handle.
    pub atom: String,
    /// Orbit index (orbits are ordered by their smallest vertex).
    pub orbit: usize,
    /// Per-vertex values.
    pub values: Vec<T>,
}

/// One aggregation group entry: the listed `(atom, orbit)` members share the
/// pooled sequence.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupEntry<T> {
    /// `(atom handle, orbit index)` members.
    pub members: Vec<(String, usize)>,
    /// Pooled per-vertex values.
    pub values: Vec<T>,
}

/// Named-model parameters accepted under `mode: "named-model"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NamedModelFile {
    /// Bipartite model conserving both partition degree sequences.
    Bipartite {
        /// Top-partition degrees.
        top: Vec<u64>,
        /// Bottom-partition degrees.
        bottom: Vec<u64>,
    },
    /// Clique formulation of the bipartite model.
    BipartiteCliques {
        /// One clique size per publication.
        clique_sizes: Vec<u64>,
        /// Vertex degrees.
        degrees: Vec<u64>,
        /// Whether equal-size cliques are distinguishable.
        #[serde(default = "default_true")]
        distinguishable: bool,
    },
    /// Degree-corrected SBM with total degrees.
    Sbm {
        /// Block of each vertex.
        blocks: Vec<usize>,
        /// Number of blocks.
        n_blocks: usize,
        /// Symmetric between-block edge counts.
        counts: Vec<Vec<u64>>,
        /// Total degree per vertex.
        degrees: Vec<u64>,
    },
    /// Directed SBM with separate in- and out-degrees.
    DirectedSbm {
        /// Block of each vertex.
        blocks: Vec<usize>,
        /// Number of blocks.
        n_blocks: usize,
        /// Ordered between-block edge counts.
        counts: Vec<Vec<u64>>,
        /// Out-degree per vertex.
        out_degrees: Vec<u64>,
        /// In-degree per vertex.
        in_degrees: Vec<u64>,
    },
    /// Independent edge-labelled layers.
    LinkCommunity {
        /// Per-layer degree sequences.
        layer_degrees: Vec<Vec<u64>>,
    },
    /// Multilayer model with one atom per layer-label pattern.
    MultilayerEdgePattern {
        /// Layer-label sets.
        patterns: Vec<Vec<String>>,
        /// Per-pattern degree sequences.
        pattern_degrees: Vec<Vec<u64>>,
    },
    /// Layers coupled through aggregated vertex degrees.
    MultilayerVertexCoupled {
        /// Edges per layer.
        layer_counts: Vec<u64>,
        /// Aggregated degree per vertex.
        aggregate_degrees: Vec<u64>,
    },
}

fn default_true() -> bool {
    true
}

/// Top-level ensemble specification file, dispatched on `mode`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum EnsembleSpecFile {
    /// Canonical ensemble with expected motif counts.
    CanonicalCounts {
        /// Ambient vertex count.
        n_vertices: usize,
        /// Motif list.
        atoms: Vec<AtomSpec>,
        /// Expected count per atom handle.
        counts: BTreeMap<String, f64>,
    },
    /// Canonical ensemble with expected orbit degrees.
    CanonicalDegrees {
        /// Ambient vertex count.
        n_vertices: usize,
        /// Motif list.
        atoms: Vec<AtomSpec>,
        /// Per-orbit expected degrees (omit orbits covered by groups).
        #[serde(default)]
        degrees: Vec<OrbitDegreesEntry<f64>>,
        /// Pooled degree constraints.
        #[serde(default)]
        aggregation_groups: Vec<GroupEntry<f64>>,
        /// Expected totals per atom handle; required with groups.
        #[serde(default)]
        expected_totals: BTreeMap<String, f64>,
    },
    /// Microcanonical ensemble with hard motif counts.
    MicroCounts {
        /// Ambient vertex count.
        n_vertices: usize,
        /// Motif list.
        atoms: Vec<AtomSpec>,
        /// Hard count per atom handle.
        counts: BTreeMap<String, u64>,
    },
    /// Microcanonical ensemble with hard orbit degrees.
    MicroDegrees {
        /// Ambient vertex count.
        n_vertices: usize,
        /// Motif list.
        atoms: Vec<AtomSpec>,
        /// Per-orbit degrees (omit orbits covered by groups).
        #[serde(default)]
        degrees: Vec<OrbitDegreesEntry<u64>>,
        /// Pooled degree constraints.
        #[serde(default)]
        aggregation_groups: Vec<GroupEntry<u64>>,
        /// Hard counts per atom handle; required with groups.
        #[serde(default)]
        counts: BTreeMap<String, u64>,
    },
    /// Per-atom degrees only (orbit distinction removed).
    MicroAtomDegrees {
        /// Ambient vertex count.
        n_vertices: usize,
        /// Motif list.
        atoms: Vec<AtomSpec>,
        /// Per-atom degree sequences.
        degrees: Vec<OrbitDegreesEntry<u64>>,
        /// Hard counts per atom handle.
        counts: BTreeMap<String, u64>,
    },
    /// Only the total number of atoms per vertex conserved.
    MicroTotalDegree {
        /// Ambient vertex count.
        n_vertices: usize,
        /// Motif list.
        atoms: Vec<AtomSpec>,
        /// Total degree per vertex.
        values: Vec<u64>,
        /// Hard counts per atom handle.
        counts: BTreeMap<String, u64>,
    },
    /// A named specialization.
    NamedModel {
        /// Model parameters.
        model: NamedModelFile,
    },
}

/// A parsed and validated ensemble, ready for entropy evaluation or
/// sampling.
#[derive(Debug, Clone)]
pub enum Ensemble {
    /// Canonical, expected counts.
    CanonicalCounts {
        /// The constraint spec.
        spec: CanonicalCountSpec,
        /// Ambient vertex count.
        n_vertices: usize,
    },
    /// Canonical, expected degrees.
    CanonicalDegrees(CanonicalDegreeSpec),
    /// Microcanonical, fixed counts.
    MicroCounts {
        /// Motif list.
        motifs: Vec<Motif>,
        /// Hard counts.
        counts: Vec<u64>,
        /// Ambient vertex count.
        n_vertices: usize,
    },
    /// Microcanonical, fixed orbit degrees (possibly aggregated).
    MicroDegrees(MicroDegreeSpec),
    /// Microcanonical, per-atom degrees.
    MicroAtomDegrees {
        /// Motif list.
        motifs: Vec<Motif>,
        /// Hard counts.
        counts: Vec<u64>,
        /// Per-atom degree sequences.
        degrees: Vec<Vec<u64>>,
    },
    /// Microcanonical, total degree only.
    MicroTotalDegree {
        /// Motif list.
        motifs: Vec<Motif>,
        /// Hard counts.
        counts: Vec<u64>,
        /// Total degrees.
        values: Vec<u64>,
    },
    /// A named specialization.
    Named(NamedEnsemble),
}

/// Resolved named models: the general-machinery constructions carry their
/// labelled-atom spec, the closed-form-only models carry their parameters.
#[derive(Debug, Clone)]
pub enum NamedEnsemble {
    /// Bipartite model (closed form plus labelled-atom reduction).
    Bipartite(BipartiteDegrees),
    /// Clique formulation (closed form only).
    BipartiteCliques {
        /// Clique sizes.
        clique_sizes: Vec<u64>,
        /// Vertex degrees.
        degrees: Vec<u64>,
        /// Distinguishable cliques.
        distinguishable: bool,
    },
    /// DC-SBM (closed form plus labelled-atom reduction).
    Sbm {
        /// Block assignment.
        assignment: BlockAssignment,
        /// Symmetric edge counts.
        counts: Vec<Vec<u64>>,
        /// Total degrees.
        degrees: Vec<u64>,
    },
    /// Directed SBM (labelled-atom reduction).
    DirectedSbm {
        /// Block assignment.
        assignment: BlockAssignment,
        /// Ordered edge counts.
        counts: Vec<Vec<u64>>,
        /// Out-degrees.
        out_degrees: Vec<u64>,
        /// In-degrees.
        in_degrees: Vec<u64>,
    },
    /// Independent layers.
    LinkCommunity {
        /// Per-layer degrees.
        layer_degrees: Vec<Vec<u64>>,
    },
    /// Edge-pattern coupled layers.
    MultilayerEdgePattern {
        /// Patterns.
        patterns: Vec<Vec<String>>,
        /// Per-pattern degrees.
        pattern_degrees: Vec<Vec<u64>>,
    },
    /// Vertex-coupled layers (closed form only).
    MultilayerVertexCoupled {
        /// Edges per layer.
        layer_counts: Vec<u64>,
        /// Aggregated degrees.
        aggregate_degrees: Vec<u64>,
    },
}

impl NamedEnsemble {
    /// The labelled-atom construction for models the general machinery
    /// reproduces; `None` for closed-form-only models.
    pub fn to_named_model(&self) -> Option<NamedModel> {
        match self {
            NamedEnsemble::Bipartite(degrees) => Some(NamedModel::Bipartite(degrees.clone())),
            NamedEnsemble::Sbm {
                assignment,
                counts,
                degrees,
            } => Some(NamedModel::Sbm {
                assignment: assignment.clone(),
                counts: counts.clone(),
                degrees: degrees.clone(),
            }),
            NamedEnsemble::DirectedSbm {
                assignment,
                counts,
                out_degrees,
                in_degrees,
            } => Some(NamedModel::DirectedSbm {
                assignment: assignment.clone(),
                counts: counts.clone(),
                out_degrees: out_degrees.clone(),
                in_degrees: in_degrees.clone(),
            }),
            NamedEnsemble::LinkCommunity { layer_degrees } => Some(NamedModel::LinkCommunity {
                layer_degrees: layer_degrees.clone(),
            }),
            NamedEnsemble::MultilayerEdgePattern {
                patterns,
                pattern_degrees,
            } => Some(NamedModel::MultilayerEdgePattern {
                patterns: patterns.clone(),
                pattern_degrees: pattern_degrees.clone(),
            }),
            NamedEnsemble::BipartiteCliques { .. }
            | NamedEnsemble::MultilayerVertexCoupled { .. } => None,
        }
    }
}

fn resolve_motifs(atoms: &[AtomSpec]) -> Result<(Vec<Motif>, BTreeMap<String, usize>)> {
    let mut motifs = Vec::with_capacity(atoms.len());
    let mut index = BTreeMap::new();
    for (i, spec) in atoms.iter().enumerate() {
        let handle = spec.handle().to_string();
        if index.insert(handle.clone(), i).is_some() {
            return Err(Error::Spec(format!("duplicate atom handle `{handle}`")));
        }
        motifs.push(Motif::new(spec.to_atom()?)?);
    }
    Ok((motifs, index))
}

fn counts_by_handle<T: Copy + Default>(
    index: &BTreeMap<String, usize>,
    map: &BTreeMap<String, T>,
    len: usize,
) -> Result<Vec<T>> {
    let mut out = vec![T::default(); len];
    for (handle, &value) in map {
        let &i = index
            .get(handle)
            .ok_or_else(|| Error::Spec(format!("counts refer to unknown atom `{handle}`")))?;
        out[i] = value;
    }
    Ok(out)
}

impl EnsembleSpecFile {
    /// Parses a spec file from JSON text.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Serializes with stable field order.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Validates and resolves into an [`Ensemble`].
    pub fn resolve(&self) -> Result<Ensemble> {
        match self {
            EnsembleSpecFile::CanonicalCounts {
                n_vertices,
                atoms,
                counts,
            } => {
                let (motifs, index) = resolve_motifs(atoms)?;
                let values = counts_by_handle(&index, counts, motifs.len())?;
                Ok(Ensemble::CanonicalCounts {
                    spec: CanonicalCountSpec::new(motifs, values)?,
                    n_vertices: *n_vertices,
                })
            }
            EnsembleSpecFile::CanonicalDegrees {
                n_vertices,
                atoms,
                degrees,
                aggregation_groups,
                expected_totals,
            } => {
                let (motifs, index) = resolve_motifs(atoms)?;
                if aggregation_groups.is_empty() {
                    let tables = orbit_tables(&motifs, &index, degrees, *n_vertices)?;
                    Ok(Ensemble::CanonicalDegrees(
                        CanonicalDegreeSpec::from_orbit_degrees(motifs, *n_vertices, tables)?,
                    ))
                } else {
                    let totals = counts_by_handle(&index, expected_totals, motifs.len())?;
                    let mut groups: Vec<CanonicalGroup> = Vec::new();
                    for entry in aggregation_groups {
                        groups.push(CanonicalGroup {
                            members: resolve_members(&index, &entry.members)?,
                            degrees: entry.values.clone(),
                        });
                    }
                    for entry in degrees {
                        groups.push(CanonicalGroup {
                            members: resolve_members(&index, &[(entry.atom.clone(), entry.orbit)])?,
                            degrees: entry.values.clone(),
                        });
                    }
                    Ok(Ensemble::CanonicalDegrees(
                        CanonicalDegreeSpec::with_groups(motifs, *n_vertices, totals, groups)?,
                    ))
                }
            }
            EnsembleSpecFile::MicroCounts {
                n_vertices,
                atoms,
                counts,
            } => {
                let (motifs, index) = resolve_motifs(atoms)?;
                let values = counts_by_handle(&index, counts, motifs.len())?;
                Ok(Ensemble::MicroCounts {
                    motifs,
                    counts: values,
                    n_vertices: *n_vertices,
                })
            }
            EnsembleSpecFile::MicroDegrees {
                n_vertices,
                atoms,
                degrees,
                aggregation_groups,
                counts,
            } => {
                let (motifs, index) = resolve_motifs(atoms)?;
                if aggregation_groups.is_empty() {
                    let tables = orbit_tables(&motifs, &index, degrees, *n_vertices)?;
                    Ok(Ensemble::MicroDegrees(MicroDegreeSpec::from_orbit_degrees(
                        motifs,
                        *n_vertices,
                        tables,
                    )?))
                } else {
                    let values = counts_by_handle(&index, counts, motifs.len())?;
                    let mut groups: Vec<DegreeGroup> = Vec::new();
                    for entry in aggregation_groups {
                        groups.push(DegreeGroup {
                            members: resolve_members(&index, &entry.members)?,
                            degrees: entry.values.clone(),
                        });
                    }
                    for entry in degrees {
                        groups.push(DegreeGroup {
                            members: resolve_members(&index, &[(entry.atom.clone(), entry.orbit)])?,
                            degrees: entry.values.clone(),
                        });
                    }
                    Ok(Ensemble::MicroDegrees(MicroDegreeSpec::with_groups(
                        motifs,
                        *n_vertices,
                        values,
                        groups,
                    )?))
                }
            }
            EnsembleSpecFile::MicroAtomDegrees {
                n_vertices,
                atoms,
                degrees,
                counts,
            } => {
                let (motifs, index) = resolve_motifs(atoms)?;
                let values = counts_by_handle(&index, counts, motifs.len())?;
                let mut tables = vec![Vec::new(); motifs.len()];
                for entry in degrees {
                    let &i = index.get(&entry.atom).ok_or_else(|| {
                        Error::Spec(format!("degrees refer to unknown atom `{}`", entry.atom))
                    })?;
                    if entry.values.len() != *n_vertices {
                        return Err(Error::Spec("degree sequence length mismatch".into()));
                    }
                    tables[i] = entry.values.clone();
                }
                if tables.iter().any(Vec::is_empty) {
                    return Err(Error::Spec("every atom needs a degree sequence".into()));
                }
                Ok(Ensemble::MicroAtomDegrees {
                    motifs,
                    counts: values,
                    degrees: tables,
                })
            }
            EnsembleSpecFile::MicroTotalDegree {
                n_vertices,
                atoms,
                values,
                counts,
            } => {
                let (motifs, index) = resolve_motifs(atoms)?;
                let count_values = counts_by_handle(&index, counts, motifs.len())?;
                if values.len() != *n_vertices {
                    return Err(Error::Spec("degree sequence length mismatch".into()));
                }
                Ok(Ensemble::MicroTotalDegree {
                    motifs,
                    counts: count_values,
                    values: values.clone(),
                })
            }
            EnsembleSpecFile::NamedModel { model } => Ok(Ensemble::Named(match model {
                NamedModelFile::Bipartite { top, bottom } => {
                    NamedEnsemble::Bipartite(BipartiteDegrees::new(top.clone(), bottom.clone())?)
                }
                NamedModelFile::BipartiteCliques {
                    clique_sizes,
                    degrees,
                    distinguishable,
                } => NamedEnsemble::BipartiteCliques {
                    clique_sizes: clique_sizes.clone(),
                    degrees: degrees.clone(),
                    distinguishable: *distinguishable,
                },
                NamedModelFile::Sbm {
                    blocks,
                    n_blocks,
                    counts,
                    degrees,
                } => NamedEnsemble::Sbm {
                    assignment: BlockAssignment::new(blocks.clone(), *n_blocks)?,
                    counts: counts.clone(),
                    degrees: degrees.clone(),
                },
                NamedModelFile::DirectedSbm {
                    blocks,
                    n_blocks,
                    counts,
                    out_degrees,
                    in_degrees,
                } => NamedEnsemble::DirectedSbm {
                    assignment: BlockAssignment::new(blocks.clone(), *n_blocks)?,
                    counts: counts.clone(),
                    out_degrees: out_degrees.clone(),
                    in_degrees: in_degrees.clone(),
                },
                NamedModelFile::LinkCommunity { layer_degrees } => NamedEnsemble::LinkCommunity {
                    layer_degrees: layer_degrees.clone(),
                },
                NamedModelFile::MultilayerEdgePattern {
                    patterns,
                    pattern_degrees,
                } => NamedEnsemble::MultilayerEdgePattern {
                    patterns: patterns.clone(),
                    pattern_degrees: pattern_degrees.clone(),
                },
                NamedModelFile::MultilayerVertexCoupled {
                    layer_counts,
                    aggregate_degrees,
                } => NamedEnsemble::MultilayerVertexCoupled {
                    layer_counts: layer_counts.clone(),
                    aggregate_degrees: aggregate_degrees.clone(),
                },
            })),
        }
    }
}

fn orbit_tables<T: Copy + Default>(
    motifs: &[Motif],
    index: &BTreeMap<String, usize>,
    degrees: &[OrbitDegreesEntry<T>],
    n_vertices: usize,
) -> Result<Vec<Vec<Vec<T>>>> {
    let mut tables: Vec<Vec<Vec<T>>> = motifs
        .iter()
        .map(|m| vec![Vec::new(); m.symmetry().orbit_count()])
        .collect();
    for entry in degrees {
        let &i = index.get(&entry.atom).ok_or_else(|| {
            Error::Spec(format!("degrees refer to unknown atom `{}`", entry.atom))
        })?;
        if entry.orbit >= tables[i].len() {
            return Err(Error::Spec(format!(
                "atom `{}` has no orbit {}",
                entry.atom, entry.orbit
            )));
        }
        if entry.values.len() != n_vertices {
            return Err(Error::Spec(format!(
                "degree sequence for `{}` orbit {} has length {}, expected {n_vertices}",
                entry.atom,
                entry.orbit,
                entry.values.len()
            )));
        }
        tables[i][entry.orbit] = entry.values.clone();
    }
    for (i, motif_tables) in tables.iter_mut().enumerate() {
        for (orbit, seq) in motif_tables.iter_mut().enumerate() {
            if seq.is_empty() {
                return Err(Error::Spec(format!(
                    "missing degrees for motif {i} orbit {orbit}"
                )));
            }
        }
    }
    Ok(tables)
}

fn key_hex(key: &[u8]) -> String {
    key.iter().map(|b| format!("{b:02x}")).collect()
}

fn resolve_members(
    index: &BTreeMap<String, usize>,
    members: &[(String, usize)],
) -> Result<Vec<crate::atoms::OrbitRef>> {
    members
        .iter()
        .map(|(handle, orbit)| {
            let &motif = index
                .get(handle)
                .ok_or_else(|| Error::Spec(format!("group refers to unknown atom `{handle}`")))?;
            Ok(crate::atoms::OrbitRef {
                motif,
                orbit: *orbit,
            })
        })
        .collect()
}

/// Writes a configuration as JSONL: one `{"atom": ..., "vertices": [...]}`
/// object per placement.
pub fn write_configuration_jsonl<W: Write>(
    writer: &mut W,
    motifs: &[Motif],
    config: &Configuration,
) -> Result<()> {
    #[derive(Serialize)]
    struct Line<'a> {
        atom: &'a str,
        vertices: &'a [u32],
    }
    for placement in config.placements() {
        let name = motifs[placement.motif()].display_name();
        let line = Line {
            atom: &name,
            vertices: placement.vertices(),
        };
        serde_json::to_writer(&mut *writer, &line)?;
        writeln!(writer)?;
    }
    Ok(())
}

/// Reads a JSONL configuration, resolving atoms by handle against the motif
/// list (display name, falling back to the canonical key rendered as hex).
pub fn read_configuration_jsonl<R: BufRead>(
    reader: R,
    motifs: &[Motif],
    n_vertices: usize,
) -> Result<Configuration> {
    #[derive(Deserialize)]
    struct Line {
        atom: String,
        vertices: Vec<u32>,
    }
    let mut config = Configuration::new(n_vertices);
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed: Line = serde_json::from_str(&line)
            .map_err(|e| Error::Spec(format!("line {}: {e}", lineno + 1)))?;
        // handles resolve by display name or by canonical key rendered as hex
        let motif_idx = motifs
            .iter()
            .position(|m| {
                m.display_name() == parsed.atom
                    || key_hex(m.symmetry().canonical_key()) == parsed.atom
            })
            .ok_or_else(|| {
                Error::Spec(format!(
                    "line {}: unknown atom `{}`",
                    lineno + 1,
                    parsed.atom
                ))
            })?;
        let placement = Placement::new(motif_idx, &motifs[motif_idx], &parsed.vertices)?;
        config.insert(placement)?;
    }
    Ok(config)
}

/// Writes a graph as a whitespace-separated edge list with the header line
/// `# n_vertices=N directed=0|1`; the optional third column is the label.
pub fn write_graph_edge_list<W: Write>(writer: &mut W, graph: &Graph) -> Result<()> {
    writeln!(
        writer,
        "# n_vertices={} directed={}",
        graph.n_vertices(),
        u8::from(graph.directed())
    )?;
    for (u, v, label) in graph.edges() {
        match label {
            Some(l) => writeln!(writer, "{u} {v} {l}")?,
            None => writeln!(writer, "{u} {v}")?,
        }
    }
    Ok(())
}

/// Reads the edge-list format written by [`write_graph_edge_list`].
pub fn read_graph_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Spec("empty graph file".into()))??;
    let header = header
        .strip_prefix('#')
        .ok_or_else(|| Error::Spec("missing `# n_vertices=N directed=0|1` header".into()))?;
    let mut n_vertices = None;
    let mut directed = None;
    for token in header.split_whitespace() {
        if let Some(value) = token.strip_prefix("n_vertices=") {
            n_vertices = Some(
                value
                    .parse::<usize>()
                    .map_err(|_| Error::Spec(format!("bad n_vertices `{value}`")))?,
            );
        }
        if let Some(value) = token.strip_prefix("directed=") {
            directed = Some(value == "1");
        }
    }
    let n_vertices = n_vertices.ok_or_else(|| Error::Spec("header lacks n_vertices".into()))?;
    let directed = directed.ok_or_else(|| Error::Spec("header lacks directed flag".into()))?;
    let mut graph = Graph::new(n_vertices, directed).with_self_loops();
    for (lineno, line) in lines.enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let parse = |field: Option<&str>| -> Result<u32> {
            field
                .ok_or_else(|| Error::Spec(format!("line {}: missing endpoint", lineno + 2)))?
                .parse()
                .map_err(|_| Error::Spec(format!("line {}: bad vertex id", lineno + 2)))
        };
        let u = parse(fields.next())?;
        let v = parse(fields.next())?;
        let label = fields.next().map(str::to_string);
        graph.add_edge(u, v, label)?;
    }
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_micro_counts_spec() {
        let text = r#"{
            "mode": "micro-counts",
            "n_vertices": 3,
            "atoms": ["edge"],
            "counts": {"edge": 2}
        }"#;
        let file = EnsembleSpecFile::from_json(text).unwrap();
        match file.resolve().unwrap() {
            Ensemble::MicroCounts {
                counts, n_vertices, ..
            } => {
                assert_eq!(counts, vec![2]);
                assert_eq!(n_vertices, 3);
            }
            other => panic!("unexpected ensemble {other:?}"),
        }
    }

    #[test]
    fn parse_inline_atom_with_labels() {
        let text = r#"{
            "mode": "micro-degrees",
            "n_vertices": 4,
            "atoms": [{
                "name": "tagged-edge",
                "order": 2,
                "edges": [[0, 1]],
                "vertex_labels": {"0": "t", "1": "b"}
            }],
            "degrees": [
                {"atom": "tagged-edge", "orbit": 0, "values": [1, 1, 0, 0]},
                {"atom": "tagged-edge", "orbit": 1, "values": [0, 0, 1, 1]}
            ]
        }"#;
        let file = EnsembleSpecFile::from_json(text).unwrap();
        match file.resolve().unwrap() {
            Ensemble::MicroDegrees(spec) => {
                assert_eq!(spec.motifs()[0].aut_size(), 1);
                assert_eq!(spec.counts(), &[2]);
            }
            other => panic!("unexpected ensemble {other:?}"),
        }
    }

    #[test]
    fn parse_micro_degrees_with_groups() {
        let text = r#"{
            "mode": "micro-degrees",
            "n_vertices": 6,
            "atoms": ["edge", "path-3"],
            "counts": {"edge": 4, "path-3": 3},
            "aggregation_groups": [
                {"members": [["edge", 0], ["path-3", 0]], "values": [3, 3, 2, 2, 2, 2]}
            ],
            "degrees": [
                {"atom": "path-3", "orbit": 1, "values": [1, 1, 1, 0, 0, 0]}
            ]
        }"#;
        let file = EnsembleSpecFile::from_json(text).unwrap();
        match file.resolve().unwrap() {
            Ensemble::MicroDegrees(spec) => {
                assert!(!spec.is_unaggregated());
                assert_eq!(spec.counts(), &[4, 3]);
                assert_eq!(spec.groups().len(), 2);
            }
            other => panic!("unexpected ensemble {other:?}"),
        }
    }

    #[test]
    fn configuration_reader_accepts_key_handles() {
        let motifs = vec![Motif::from_catalogue("edge").unwrap()];
        let key: String = motifs[0]
            .symmetry()
            .canonical_key()
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect();
        let line = format!("{{\"atom\": \"{key}\", \"vertices\": [0, 2]}}\n");
        let parsed = read_configuration_jsonl(line.as_bytes(), &motifs, 3).unwrap();
        assert_eq!(parsed.len(), 1);
    }

    #[test]
    fn parse_named_model() {
        let text = r#"{
            "mode": "named-model",
            "model": {"kind": "bipartite", "top": [2, 1], "bottom": [1, 1, 1]}
        }"#;
        let file = EnsembleSpecFile::from_json(text).unwrap();
        assert!(matches!(
            file.resolve().unwrap(),
            Ensemble::Named(NamedEnsemble::Bipartite(_))
        ));
    }

    #[test]
    fn bad_specs_are_rejected() {
        let missing =
            r#"{"mode": "micro-counts", "n_vertices": 3, "atoms": ["nope"], "counts": {}}"#;
        assert!(EnsembleSpecFile::from_json(missing)
            .unwrap()
            .resolve()
            .is_err());

        let bad_json = "{mode: oops}";
        assert!(EnsembleSpecFile::from_json(bad_json).is_err());
    }

    #[test]
    fn configuration_jsonl_round_trips() {
        let motifs = vec![
            Motif::from_catalogue("edge").unwrap(),
            Motif::from_catalogue("triangle").unwrap(),
        ];
        let mut config = Configuration::new(5);
        config
            .insert(Placement::new(0, &motifs[0], &[0, 3]).unwrap())
            .unwrap();
        config
            .insert(Placement::new(1, &motifs[1], &[1, 2, 4]).unwrap())
            .unwrap();
        let mut buffer = Vec::new();
        write_configuration_jsonl(&mut buffer, &motifs, &config).unwrap();
        let parsed = read_configuration_jsonl(buffer.as_slice(), &motifs, 5).unwrap();
        assert_eq!(parsed, config);
    }

    #[test]
    fn graph_edge_list_round_trips() {
        let mut graph = Graph::new(4, false);
        graph.add_edge(0, 1, None).unwrap();
        graph.add_edge(2, 3, Some("a".into())).unwrap();
        let mut buffer = Vec::new();
        write_graph_edge_list(&mut buffer, &graph).unwrap();
        let text = String::from_utf8(buffer.clone()).unwrap();
        assert!(text.starts_with("# n_vertices=4 directed=0"));
        let parsed = read_graph_edge_list(buffer.as_slice()).unwrap();
        assert_eq!(parsed.edge_count(), graph.edge_count());
    }
}

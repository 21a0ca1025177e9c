//! Maximum-entropy ensembles of subgraph configurations.
//!
//! Networks are built from copies of small atomic subgraphs (motifs) placed
//! on a vertex set. This crate provides the symmetry machinery for atoms
//! (automorphism groups, vertex orbits, canonical keys), configurations and
//! their projection to graphs, entropy formulas for canonical and
//! microcanonical ensembles under count and degree constraints, orbit
//! aggregation for coarser models, generative samplers, and brute-force
//! oracles that validate every analytic expression at desk scale.
//!
//! The named specializations in [`special_models`] (bipartite and clique
//! configuration models, the degree-corrected SBM family, link communities,
//! multilayer couplings) are all recovered from the same general entropy
//! expression evaluated on labelled atoms.
//!
//! ```
//! use atomlab::{Motif, MicroDegreeSpec, entropy_combinatorial};
//!
//! // entropy of the ensemble of graphs with four degree-one vertices
//! let edge = Motif::from_catalogue("edge")?;
//! let spec = MicroDegreeSpec::from_orbit_degrees(vec![edge], 4, vec![vec![vec![1, 1, 1, 1]]])?;
//! let entropy = entropy_combinatorial(&spec)?;
//! assert!((entropy - 3f64.ln()).abs() < 1e-12); // three perfect matchings
//! # Ok::<(), atomlab::Error>(())
//! ```
//!
//! Runnable walkthroughs live in the `examples/` directory; the `atomlab`
//! binary exposes the same functionality as subcommands (`atoms`, `entropy`,
//! `sample`, `validate`).

pub mod atoms;
pub mod canonical;
pub mod cli;
pub mod configuration;
mod error;
pub mod microcanonical;
pub mod numeric;
pub mod oracle;
pub mod sampler;
pub mod specfile;
pub mod special_models;
pub mod validation;

pub use atoms::{
    compute_symmetry, count_placements, count_placements_log, Atom, AtomEdge, AtomSymmetry, Motif,
    OrbitRef,
};
pub use canonical::{
    aggregate_orbits_canonical, entropy_degree_corrected, entropy_homogeneous,
    placement_probability_homogeneous, placement_probability_sparse, solve_multipliers_exact,
    CanonicalCountSpec, CanonicalDegreeSpec, CanonicalGroup,
};
pub use configuration::{
    atom_counts, atom_counts_by_key, check_graphicality, count_motif_in_graph, covers,
    enumerate_placements, orbit_degrees, project, Configuration, Graph, GraphicalityReport,
    OrbitDegreeTable, Placement, Projection, ProjectionMode,
};
pub use error::{Error, Result};
pub use microcanonical::{
    entropy_analytic, entropy_breakdown, entropy_combinatorial, entropy_per_atom_degrees,
    entropy_total_degree, log_count_fixed_counts, log_multi_subgraph_correction,
    log_self_match_correction, log_stub_matchings, DegreeGroup, MicroDegreeSpec,
};
pub use sampler::{
    predicted_acceptance, sample_and_project_counts, sample_and_project_micro,
    sample_canonical_counts, sample_canonical_degrees, sample_micro_counts, sample_microcanonical,
    CanonicalProbabilities, MicroSample, ProjectedSample, RandomSource,
};
pub use specfile::{Ensemble, EnsembleSpecFile, NamedEnsemble};
pub use special_models::{
    build_labelled_atoms, entropy_bipartite, entropy_bipartite_cliques, entropy_dcsbm,
    entropy_edge_configuration_model, entropy_multilayer_uncoupled,
    entropy_multilayer_vertex_coupled, BipartiteDegrees, BlockAssignment, NamedModel, SbmDegrees,
};

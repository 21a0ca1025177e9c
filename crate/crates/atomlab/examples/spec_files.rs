//! The file formats behind the CLI: ensemble spec JSON, configuration JSONL
//! and graph edge lists.
//!
//! ```bash
//! cargo run --example spec_files
//! ```

use atomlab::specfile::{
    read_configuration_jsonl, read_graph_edge_list, write_configuration_jsonl,
    write_graph_edge_list, EnsembleSpecFile,
};
use atomlab::{
    entropy_combinatorial, project, sample_microcanonical, Ensemble, ProjectionMode, RandomSource,
    Result,
};

fn main() -> Result<()> {
    let text = r#"{
        "mode": "micro-degrees",
        "n_vertices": 8,
        "atoms": ["edge", "triangle"],
        "degrees": [
            {"atom": "edge", "orbit": 0, "values": [2, 1, 1, 2, 1, 1, 2, 2]},
            {"atom": "triangle", "orbit": 0, "values": [1, 1, 1, 0, 1, 1, 1, 0]}
        ]
    }"#;
    let file = EnsembleSpecFile::from_json(text)?;
    let Ensemble::MicroDegrees(spec) = file.resolve()? else {
        unreachable!("the file says micro-degrees");
    };
    println!("parsed spec: counts = {:?}", spec.counts());
    println!("entropy = {:.4} nats", entropy_combinatorial(&spec)?);

    // sample, then round-trip the configuration through JSONL
    let sample = sample_microcanonical(&spec, &mut RandomSource::new(12).rng(), 100_000)?;
    let mut jsonl = Vec::new();
    write_configuration_jsonl(&mut jsonl, spec.motifs(), &sample.configuration)?;
    print!("{}", String::from_utf8_lossy(&jsonl));
    let parsed = read_configuration_jsonl(jsonl.as_slice(), spec.motifs(), 8)?;
    assert_eq!(parsed, sample.configuration);

    // and the projected graph through the edge-list format
    let projection = project(spec.motifs(), &sample.configuration, ProjectionMode::Simple)?;
    let mut edges = Vec::new();
    write_graph_edge_list(&mut edges, &projection.graph)?;
    print!("{}", String::from_utf8_lossy(&edges));
    let graph = read_graph_edge_list(edges.as_slice())?;
    assert_eq!(graph.edge_count(), projection.graph.edge_count());
    println!("round trips hold");
    Ok(())
}

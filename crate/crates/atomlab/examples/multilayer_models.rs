//! Multilayer ensembles: independent link communities, edge-pattern
//! couplings and vertex couplings through aggregated degrees.
//!
//! ```bash
//! cargo run --example multilayer_models
//! ```

use atomlab::{
    build_labelled_atoms, entropy_combinatorial, entropy_edge_configuration_model,
    entropy_multilayer_uncoupled, entropy_multilayer_vertex_coupled, NamedModel, Result,
};

fn main() -> Result<()> {
    let layer_a = vec![2u64, 1, 1, 2, 1, 1];
    let layer_b = vec![1u64, 1, 1, 1, 0, 0];

    // independent layers: the entropy is the sum of per-layer models
    let spec = build_labelled_atoms(&NamedModel::LinkCommunity {
        layer_degrees: vec![layer_a.clone(), layer_b.clone()],
    })?;
    let general = entropy_combinatorial(&spec)?;
    let uncoupled = entropy_multilayer_uncoupled(&[layer_a.clone(), layer_b.clone()])?;
    println!("link communities: general {general:.9} = sum of layers {uncoupled:.9}");

    // edge patterns: one atom carries parallel edges from several layers
    let spec = build_labelled_atoms(&NamedModel::MultilayerEdgePattern {
        patterns: vec![vec!["a".into()], vec!["a".into(), "b".into()]],
        pattern_degrees: vec![layer_a.clone(), layer_b.clone()],
    })?;
    for motif in spec.motifs() {
        println!(
            "pattern atom {}: |Aut| = {}, edges = {}",
            motif.display_name(),
            motif.aut_size(),
            motif.atom().edges().len()
        );
    }
    println!(
        "edge-pattern entropy = {:.9}",
        entropy_combinatorial(&spec)?
    );

    // vertex coupling: aggregate degrees plus a layer-assignment multinomial
    let aggregate = vec![2u64, 2, 1, 1, 1, 1];
    let coupled = entropy_multilayer_vertex_coupled(&[2, 2], &aggregate)?;
    let single_layer = entropy_edge_configuration_model(&aggregate)?;
    println!("\nvertex-coupled two-layer entropy = {coupled:.6} (single layer {single_layer:.6})");
    Ok(())
}

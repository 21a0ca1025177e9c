//! Configurations: placements in canonical form, orbit degrees,
//! graphicality, projection to a graph and cover testing.
//!
//! ```bash
//! cargo run --example placements_and_projection
//! ```

use atomlab::{
    atom_counts, check_graphicality, count_motif_in_graph, covers, enumerate_placements,
    orbit_degrees, project, Configuration, Motif, Placement, ProjectionMode, Result,
};

fn main() -> Result<()> {
    let motifs = vec![
        Motif::from_catalogue("edge")?,
        Motif::from_catalogue("triangle")?,
    ];

    // all 3 four-cycles of K4 are distinct placements
    let cycle = Motif::from_catalogue("4-cycle")?;
    for p in enumerate_placements(4, 0, &cycle) {
        println!("4-cycle placement: {:?}", p.vertices());
    }

    // two triangles sharing the edge {0, 1}, plus that edge as an atom
    let mut config = Configuration::new(5);
    config.insert(Placement::new(1, &motifs[1], &[0, 1, 2])?)?;
    config.insert(Placement::new(1, &motifs[1], &[1, 0, 3])?)?; // canonical form dedupes ordering
    config.insert(Placement::new(0, &motifs[0], &[0, 1])?)?;
    println!("\nconfiguration has {} placements", config.len());
    println!("atom counts = {:?}", atom_counts(&motifs, &config));

    let degrees = orbit_degrees(&motifs, &config);
    println!("edge degrees     = {:?}", degrees.degrees[0][0]);
    println!("triangle degrees = {:?}", degrees.degrees[1][0]);
    let report = check_graphicality(&motifs, &degrees);
    println!(
        "graphical = {}, implied counts = {:?}",
        report.graphical, report.counts
    );

    let projection = project(&motifs, &config, ProjectionMode::Simple)?;
    println!(
        "projected graph: {} edges ({} parallel edges collapsed)",
        projection.graph.edge_count(),
        projection.collapsed_parallel_edges
    );
    let triangle_count = count_motif_in_graph(&projection.graph, &motifs[1])?;
    println!("triangles in the projection: {triangle_count}");

    // the configuration covers its own projection
    assert!(covers(&motifs, &config, &projection.graph)?);
    println!("the configuration covers its projection");
    Ok(())
}

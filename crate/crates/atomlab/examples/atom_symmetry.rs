//! Atoms and their symmetry data: automorphism groups, vertex orbits,
//! canonical keys and placement counts.
//!
//! ```bash
//! cargo run --example atom_symmetry
//! ```

use atomlab::{count_placements, Atom, Motif, Result};

fn main() -> Result<()> {
    for name in [
        "edge",
        "directed-edge",
        "path-3",
        "triangle",
        "4-cycle",
        "4-clique",
    ] {
        let motif = Motif::from_catalogue(name)?;
        let sym = motif.symmetry();
        println!("{name}:");
        println!("  |Aut| = {}", sym.aut_size());
        println!("  orbits = {:?}", sym.orbits());
        println!(
            "  assemblies per orbit choice (mu) = {}",
            sym.assembly_count()
        );
        for n in motif.order()..=6 {
            println!("  placements on K_{n} = {}", count_placements(n, sym));
        }
    }

    // two drawings of the same motif share one canonical key
    let tri_a = Motif::new(Atom::new(3, false, &[(0, 1), (1, 2), (0, 2)])?)?;
    let tri_b = Motif::new(Atom::new(3, false, &[(2, 0), (1, 0), (2, 1)])?)?;
    assert_eq!(
        tri_a.symmetry().canonical_key(),
        tri_b.symmetry().canonical_key()
    );
    println!("\nrelabelled triangles share the canonical key");

    // vertex labels break symmetry: the two-label edge has a trivial group
    let bipartite_edge = Motif::new(Atom::with_labels(
        2,
        false,
        &[(0, 1, None)],
        Some(vec![Some("t".into()), Some("b".into())]),
    )?)?;
    println!(
        "two-label edge: |Aut| = {}, {} orbits",
        bipartite_edge.aut_size(),
        bipartite_edge.symmetry().orbit_count()
    );
    Ok(())
}

//! Property tests for the structural invariants: canonical keys are
//! relabelling-invariant, placements are automorphism-invariant, orbit
//! degrees are graphical by construction, and projections dominate the
//! configured motif counts.

use proptest::prelude::*;

use atomlab::{
    atom_counts, check_graphicality, count_motif_in_graph, enumerate_placements, orbit_degrees,
    project, Atom, Configuration, Motif, Placement, ProjectionMode,
};

/// Builds a connected atom from a spanning-tree parent list plus an extra
/// edge mask over all vertex pairs.
fn build_atom(order: usize, parents: &[usize], extra_mask: u32, directed: bool) -> Atom {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for v in 1..order {
        let p = parents[v - 1] % v;
        edges.push(if directed && v % 2 == 0 {
            (v, p)
        } else {
            (p, v)
        });
    }
    let mut bit = 0;
    for u in 0..order {
        for v in (u + 1)..order {
            if extra_mask & (1 << bit) != 0 && !edges.contains(&(u, v)) && !edges.contains(&(v, u))
            {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Atom::new(order, directed, &edges).expect("constructed atoms are valid")
}

fn arb_atom() -> impl Strategy<Value = Atom> {
    (
        2usize..=6,
        proptest::collection::vec(any::<usize>(), 5),
        any::<u32>(),
        any::<bool>(),
    )
        .prop_map(|(order, parents, mask, directed)| build_atom(order, &parents, mask, directed))
}

fn permutation(order: usize, keys: &[u64]) -> Vec<usize> {
    let mut indexed: Vec<(u64, usize)> = keys.iter().take(order).copied().zip(0..order).collect();
    indexed.sort();
    let mut perm = vec![0usize; order];
    for (rank, (_, v)) in indexed.into_iter().enumerate() {
        perm[v] = rank;
    }
    perm
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_key_is_relabelling_invariant(
        atom in arb_atom(),
        keys in proptest::collection::vec(any::<u64>(), 6),
    ) {
        let perm = permutation(atom.order(), &keys);
        let relabelled_edges: Vec<(usize, usize)> = atom
            .edges()
            .iter()
            .map(|e| (perm[e.source], perm[e.target]))
            .collect();
        let relabelled = Atom::new(atom.order(), atom.directed(), &relabelled_edges).unwrap();
        let original = Motif::new(atom).unwrap();
        let image = Motif::new(relabelled).unwrap();
        prop_assert_eq!(
            original.symmetry().canonical_key(),
            image.symmetry().canonical_key()
        );
        prop_assert_eq!(original.aut_size(), image.aut_size());
    }

    #[test]
    fn assembly_count_times_aut_is_orbit_factorials(atom in arb_atom()) {
        let motif = Motif::new(atom).unwrap();
        let sym = motif.symmetry();
        let product: u64 = sym
            .orbits()
            .iter()
            .map(|o| (1..=o.len() as u64).product::<u64>())
            .product();
        prop_assert_eq!(sym.assembly_count() * sym.aut_size(), product);
    }

    #[test]
    fn placements_are_automorphism_invariant(
        atom in arb_atom(),
        tuple_keys in proptest::collection::vec(any::<u64>(), 6),
        beta_index in any::<prop::sample::Index>(),
    ) {
        let motif = Motif::new(atom).unwrap();
        let order = motif.order();
        let n = order + 2;
        // distinct vertices from the ranking of the key vector
        let vertices: Vec<u32> = permutation(order, &tuple_keys)
            .into_iter()
            .map(|r| r as u32)
            .collect();
        let beta = {
            let autos = motif.symmetry().automorphisms();
            autos[beta_index.index(autos.len())].clone()
        };
        let image: Vec<u32> = beta.iter().map(|&b| vertices[b]).collect();
        let direct = Placement::new(0, &motif, &vertices).unwrap();
        let via_beta = Placement::new(0, &motif, &image).unwrap();
        prop_assert_eq!(&direct, &via_beta);

        let mut with_direct = Configuration::new(n);
        with_direct.insert(direct).unwrap();
        let mut with_image = Configuration::new(n);
        with_image.insert(via_beta).unwrap();
        prop_assert_eq!(with_direct, with_image);
    }
}

fn arb_configuration() -> impl Strategy<Value = (Vec<Motif>, Configuration)> {
    let motifs = || -> Vec<Motif> {
        ["edge", "triangle", "path-3", "4-cycle"]
            .iter()
            .map(|n| Motif::from_catalogue(n).unwrap())
            .collect()
    };
    (
        5usize..=7,
        proptest::collection::vec((0usize..4, any::<prop::sample::Index>()), 0..10),
    )
        .prop_map(move |(n, picks)| {
            let motifs = motifs();
            let mut config = Configuration::new(n);
            for (m, pick) in picks {
                let pool = enumerate_placements(n, m, &motifs[m]);
                if !pool.is_empty() {
                    let placement = pool[pick.index(pool.len())].clone();
                    config.insert(placement).unwrap();
                }
            }
            (motifs, config)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orbit_degrees_of_configurations_are_graphical((motifs, config) in arb_configuration()) {
        let table = orbit_degrees(&motifs, &config);
        let report = check_graphicality(&motifs, &table);
        prop_assert!(report.graphical, "{:?}", report.reasons);
        let counts = atom_counts(&motifs, &config);
        for (m, count) in counts.iter().enumerate() {
            prop_assert_eq!(report.counts[m], Some(*count));
        }
    }

    #[test]
    fn projection_dominates_configured_counts((motifs, config) in arb_configuration()) {
        let projection = project(&motifs, &config, ProjectionMode::Simple).unwrap();
        let counts = atom_counts(&motifs, &config);
        for (m, motif) in motifs.iter().enumerate() {
            let in_graph = count_motif_in_graph(&projection.graph, motif).unwrap();
            prop_assert!(
                in_graph >= counts[m],
                "motif {} appears {} times but {} were placed",
                m,
                in_graph,
                counts[m]
            );
        }
        // every placement edge survives into the projection
        for placement in config.placements() {
            for (u, v, _) in placement.edges(&motifs[placement.motif()]) {
                prop_assert!(projection.graph.has_edge(u, v, &None));
            }
        }
    }

    #[test]
    fn entropy_is_permutation_equivariant(
        keys in proptest::collection::vec(any::<u64>(), 8),
        raw in proptest::collection::vec(0u64..4, 8),
    ) {
        use atomlab::{entropy_combinatorial, MicroDegreeSpec};
        // make the sums divisible: pad the first vertex
        let mut edge_degrees = raw.clone();
        while edge_degrees.iter().sum::<u64>() % 2 != 0 {
            edge_degrees[0] += 1;
        }
        let perm = permutation(8, &keys);
        let permuted: Vec<u64> = {
            let mut out = vec![0u64; 8];
            for (v, &d) in edge_degrees.iter().enumerate() {
                out[perm[v]] = d;
            }
            out
        };
        let motifs = vec![Motif::from_catalogue("edge").unwrap()];
        let direct = MicroDegreeSpec::from_orbit_degrees(motifs.clone(), 8, vec![vec![edge_degrees]]).unwrap();
        let relabelled = MicroDegreeSpec::from_orbit_degrees(motifs, 8, vec![vec![permuted]]).unwrap();
        let a = entropy_combinatorial(&direct).unwrap();
        let b = entropy_combinatorial(&relabelled).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
    }
}

//! Atomic subgraphs (motifs) and their symmetry data.
//!
//! An [`Atom`] is a small connected graph pattern, optionally directed and
//! optionally carrying vertex and edge labels. Its automorphism group is
//! computed by brute force over all `order!` vertex permutations, which also
//! yields the vertex orbits, a portable canonical key for isomorphism
//! testing, and the placement-count normalisations used by every ensemble
//! formula in the crate.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::numeric::ln_factorial;

/// Brute-force cap on atom order: symmetry is computed over all `order!`
/// permutations, so 10 keeps the sweep under a few million candidates.
pub const MAX_ATOM_ORDER: usize = 10;

/// One edge of an atom. For undirected atoms the endpoints are stored with
/// `source <= target`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomEdge {
    /// First endpoint (tail for directed atoms).
    pub source: usize,
    /// Second endpoint (head for directed atoms).
    pub target: usize,
    /// Optional edge label (layer tag in multilayer models).
    pub label: Option<String>,
}

impl AtomEdge {
    fn normalized(directed: bool, u: usize, v: usize, label: Option<String>) -> Self {
        if directed || u <= v {
            AtomEdge {
                source: u,
                target: v,
                label,
            }
        } else {
            AtomEdge {
                source: v,
                target: u,
                label,
            }
        }
    }
}

/// A small connected graph pattern used as a building block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    name: Option<String>,
    order: usize,
    directed: bool,
    edges: Vec<AtomEdge>,
    vertex_labels: Vec<Option<String>>,
}

impl Atom {
    /// Builds an unlabelled atom from its vertex count and edge list.
    pub fn new(order: usize, directed: bool, edges: &[(usize, usize)]) -> Result<Self> {
        let labelled: Vec<(usize, usize, Option<String>)> =
            edges.iter().map(|&(u, v)| (u, v, None)).collect();
        Self::with_labels(order, directed, &labelled, None)
    }

    /// Builds an atom with optional edge labels and vertex labels.
    pub fn with_labels(
        order: usize,
        directed: bool,
        edges: &[(usize, usize, Option<String>)],
        vertex_labels: Option<Vec<Option<String>>>,
    ) -> Result<Self> {
        let vertex_labels = match vertex_labels {
            Some(labels) => {
                if labels.len() != order {
                    return Err(Error::InvalidAtom(format!(
                        "vertex label list has length {} but order is {order}",
                        labels.len()
                    )));
                }
                labels
            }
            None => vec![None; order],
        };
        let edges: Vec<AtomEdge> = edges
            .iter()
            .map(|(u, v, l)| AtomEdge::normalized(directed, *u, *v, l.clone()))
            .collect();
        let atom = Atom {
            name: None,
            order,
            directed,
            edges,
            vertex_labels,
        };
        atom.validate()?;
        Ok(atom)
    }

    /// Attaches a display name.
    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    fn validate(&self) -> Result<()> {
        if self.order == 0 {
            return Err(Error::InvalidAtom("order must be at least 1".into()));
        }
        let mut seen = BTreeSet::new();
        for e in &self.edges {
            if e.source >= self.order || e.target >= self.order {
                return Err(Error::InvalidAtom(format!(
                    "edge ({}, {}) has an endpoint outside 0..{}",
                    e.source, e.target, self.order
                )));
            }
            if e.source == e.target && self.order != 1 {
                return Err(Error::InvalidAtom(
                    "self-loop edges are only admitted on the single-vertex loop atom".into(),
                ));
            }
            if !seen.insert((e.source, e.target, e.label.clone())) {
                return Err(Error::InvalidAtom(format!(
                    "duplicate edge ({}, {})",
                    e.source, e.target
                )));
            }
        }
        // connectivity (ignoring directions)
        if self.order > 1 {
            let mut parent: Vec<usize> = (0..self.order).collect();
            fn find(parent: &mut [usize], mut x: usize) -> usize {
                while parent[x] != x {
                    parent[x] = parent[parent[x]];
                    x = parent[x];
                }
                x
            }
            for e in &self.edges {
                let (a, b) = (find(&mut parent, e.source), find(&mut parent, e.target));
                if a != b {
                    parent[a] = b;
                }
            }
            let root = find(&mut parent, 0);
            for v in 1..self.order {
                if find(&mut parent, v) != root {
                    return Err(Error::InvalidAtom("atom must be connected".into()));
                }
            }
        }
        Ok(())
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Whether edges are directed.
    pub fn directed(&self) -> bool {
        self.directed
    }

    /// Edge list (normalized endpoints).
    pub fn edges(&self) -> &[AtomEdge] {
        &self.edges
    }

    /// Per-vertex labels; `None` for unlabelled vertices.
    pub fn vertex_labels(&self) -> &[Option<String>] {
        &self.vertex_labels
    }

    /// Display name if one was attached.
    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// True if any vertex carries a label.
    pub fn has_vertex_labels(&self) -> bool {
        self.vertex_labels.iter().any(|l| l.is_some())
    }

    /// Looks up a built-in atom by catalogue name.
    ///
    /// Recognised names: `edge`, `directed-edge`, `path-3`, `triangle`,
    /// `4-cycle`, `4-clique`, `self-loop` and `star-K` for `K >= 2` leaves.
    pub fn catalogue(name: &str) -> Option<Atom> {
        let atom = match name {
            "edge" => Atom::new(2, false, &[(0, 1)]),
            "directed-edge" | "directed edge" => Atom::new(2, true, &[(0, 1)]),
            "path-3" => Atom::new(3, false, &[(0, 1), (1, 2)]),
            "triangle" => Atom::new(3, false, &[(0, 1), (1, 2), (0, 2)]),
            "4-cycle" => Atom::new(4, false, &[(0, 1), (1, 2), (2, 3), (0, 3)]),
            "4-clique" => Atom::new(4, false, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
            "self-loop" => Atom::new(1, false, &[(0, 0)]),
            _ => {
                let leaves: usize = name.strip_prefix("star-")?.parse().ok()?;
                if !(2..MAX_ATOM_ORDER).contains(&leaves) {
                    return None;
                }
                let edges: Vec<(usize, usize)> = (1..=leaves).map(|v| (0, v)).collect();
                Atom::new(leaves + 1, false, &edges)
            }
        };
        Some(atom.expect("catalogue atoms are valid").named(name))
    }

    /// Names of the fixed built-in catalogue, used by validation sweeps.
    pub fn catalogue_names() -> &'static [&'static str] {
        &[
            "edge",
            "directed-edge",
            "path-3",
            "triangle",
            "4-cycle",
            "4-clique",
            "star-3",
            "star-4",
            "self-loop",
        ]
    }
}

/// Symmetry data of an atom: automorphism group, orbit partition and a
/// portable canonical key identifying its isomorphism class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomSymmetry {
    order: usize,
    automorphisms: Vec<Vec<usize>>,
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    canonical_key: Vec<u8>,
}

impl AtomSymmetry {
    /// Number of vertices of the underlying atom.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `|Aut(m)|`.
    pub fn aut_size(&self) -> u64 {
        self.automorphisms.len() as u64
    }

    /// The full automorphism list, each permutation given as `v -> p[v]`.
    pub fn automorphisms(&self) -> &[Vec<usize>] {
        &self.automorphisms
    }

    /// Vertex orbits, each sorted ascending, ordered by smallest member.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// Number of orbits.
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    /// Orbit index of a vertex.
    pub fn orbit_of(&self, vertex: usize) -> usize {
        self.orbit_of[vertex]
    }

    /// Size of orbit `i`.
    pub fn orbit_size(&self, i: usize) -> usize {
        self.orbits[i].len()
    }

    /// Byte string identifying the isomorphism class: equal keys if and only
    /// if a label- and direction-preserving isomorphism exists.
    pub fn canonical_key(&self) -> &[u8] {
        &self.canonical_key
    }

    /// Number of distinct placements compatible with a fixed assignment of
    /// vertices to orbits: `prod_i |O_i|! / |Aut(m)|`.
    pub fn assembly_count(&self) -> u64 {
        let mut prod: u64 = 1;
        for orbit in &self.orbits {
            prod *= factorial_u64(orbit.len());
        }
        prod / self.aut_size()
    }

    /// Canonicalizes a placement tuple: the lexicographically smallest image
    /// of `tuple` under the automorphism group, where entry `v` of the tuple
    /// is the target of atom vertex `v`.
    pub fn canonical_tuple(&self, tuple: &[u32]) -> Vec<u32> {
        debug_assert_eq!(tuple.len(), self.order);
        let mut best: Option<Vec<u32>> = None;
        for beta in &self.automorphisms {
            let image: Vec<u32> = beta.iter().map(|&b| tuple[b]).collect();
            if best.as_ref().is_none_or(|b| image < *b) {
                best = Some(image);
            }
        }
        best.expect("automorphism list contains at least the identity")
    }

    /// Enumerates the distinct assemblies compatible with one ordered slot
    /// set (slots are grouped orbit-major). Each assembly maps atom vertex
    /// `v` to slot `assembly[v]`; there are exactly `assembly_count()` of
    /// them.
    pub fn assembly_variants(&self) -> Vec<Vec<usize>> {
        // global slot index ranges per orbit
        let mut orbit_slot_start = Vec::with_capacity(self.orbits.len());
        let mut next = 0usize;
        for orbit in &self.orbits {
            orbit_slot_start.push(next);
            next += orbit.len();
        }
        let mut variants: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut assignment = vec![usize::MAX; self.order];
        self.enumerate_orbit_bijections(0, &orbit_slot_start, &mut assignment, &mut variants);
        let variants: Vec<Vec<usize>> = variants.into_iter().collect();
        debug_assert_eq!(variants.len() as u64, self.assembly_count());
        variants
    }

    fn enumerate_orbit_bijections(
        &self,
        orbit_idx: usize,
        starts: &[usize],
        assignment: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        if orbit_idx == self.orbits.len() {
            // canonicalize modulo Aut: min over beta of assignment composed with beta
            let canon = self
                .automorphisms
                .iter()
                .map(|beta| {
                    let composed: Vec<usize> = beta.iter().map(|&b| assignment[b]).collect();
                    composed
                })
                .min()
                .expect("non-empty automorphism list");
            out.insert(canon);
            return;
        }
        let members = &self.orbits[orbit_idx];
        let start = starts[orbit_idx];
        let mut perm: Vec<usize> = (0..members.len()).collect();
        permute_in_place(&mut perm, 0, &mut |p| {
            for (k, &slot_offset) in p.iter().enumerate() {
                assignment[members[k]] = start + slot_offset;
            }
            self.enumerate_orbit_bijections(orbit_idx + 1, starts, assignment, out);
        });
    }
}

fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product::<u64>().max(1)
}

fn permute_in_place<F: FnMut(&[usize])>(items: &mut Vec<usize>, k: usize, f: &mut F) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_in_place(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Computes the full symmetry data of an atom by sweeping all `order!`
/// vertex permutations.
///
/// Fails with [`Error::AtomTooLarge`] above [`MAX_ATOM_ORDER`]; there is no
/// silent truncation.
pub fn compute_symmetry(atom: &Atom) -> Result<AtomSymmetry> {
    if atom.order() > MAX_ATOM_ORDER {
        return Err(Error::AtomTooLarge {
            order: atom.order(),
            cap: MAX_ATOM_ORDER,
        });
    }
    let n = atom.order();
    let reference = edge_code(atom, &identity(n));
    let ref_labels = label_code(atom, &identity(n));

    type KeyParts = (Vec<u16>, Vec<(u8, u8, u16)>);
    let mut automorphisms = Vec::new();
    let mut best_key: Option<KeyParts> = None;

    let mut perm: Vec<usize> = (0..n).collect();
    permute_in_place(&mut perm, 0, &mut |p| {
        let labels = label_code(atom, p);
        let edges = edge_code(atom, p);
        if labels == ref_labels && edges == reference {
            automorphisms.push(p.to_vec());
        }
        let candidate = (labels, edges);
        if best_key.as_ref().is_none_or(|b| candidate < *b) {
            best_key = Some(candidate);
        }
    });

    let orbits = orbits_from_automorphisms(n, &automorphisms);
    let mut orbit_of = vec![0usize; n];
    for (i, orbit) in orbits.iter().enumerate() {
        for &v in orbit {
            orbit_of[v] = i;
        }
    }

    let (min_labels, min_edges) = best_key.expect("at least the identity permutation");
    let canonical_key = serialize_key(atom, &min_labels, &min_edges);

    Ok(AtomSymmetry {
        order: n,
        automorphisms,
        orbits,
        orbit_of,
        canonical_key,
    })
}

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Vertex-label ranks in permuted position order. Rank 0 means unlabelled;
/// ranks follow the lexicographic order of the distinct label strings, so
/// they are comparable across atoms with equal label sets.
fn label_code(atom: &Atom, perm: &[usize]) -> Vec<u16> {
    let table = sorted_label_table(atom.vertex_labels().iter());
    let mut out = vec![0u16; atom.order()];
    for (v, label) in atom.vertex_labels().iter().enumerate() {
        out[perm[v]] = rank_in(&table, label);
    }
    out
}

/// Sorted edge codes under a permutation: `(u, v, edge label rank)`.
fn edge_code(atom: &Atom, perm: &[usize]) -> Vec<(u8, u8, u16)> {
    let table = sorted_label_table(atom.edges().iter().map(|e| &e.label));
    let mut out: Vec<(u8, u8, u16)> = atom
        .edges()
        .iter()
        .map(|e| {
            let (mut a, mut b) = (perm[e.source] as u8, perm[e.target] as u8);
            if !atom.directed() && a > b {
                std::mem::swap(&mut a, &mut b);
            }
            (a, b, rank_in(&table, &e.label))
        })
        .collect();
    out.sort_unstable();
    out
}

fn sorted_label_table<'a>(labels: impl Iterator<Item = &'a Option<String>>) -> Vec<&'a str> {
    let mut table: Vec<&str> = labels.flatten().map(String::as_str).collect();
    table.sort_unstable();
    table.dedup();
    table
}

fn rank_in(table: &[&str], label: &Option<String>) -> u16 {
    match label {
        None => 0,
        Some(l) => {
            let idx = table.binary_search(&l.as_str()).expect("label in table");
            (idx + 1) as u16
        }
    }
}

fn serialize_key(atom: &Atom, labels: &[u16], edges: &[(u8, u8, u16)]) -> Vec<u8> {
    let mut key = Vec::new();
    key.push(atom.order() as u8);
    key.push(u8::from(atom.directed()));
    let vtable = sorted_label_table(atom.vertex_labels().iter());
    let etable = sorted_label_table(atom.edges().iter().map(|e| &e.label));
    for table in [&vtable, &etable] {
        key.push(table.len() as u8);
        for s in table.iter() {
            key.extend_from_slice(&(s.len() as u16).to_le_bytes());
            key.extend_from_slice(s.as_bytes());
        }
    }
    for &rank in labels {
        key.extend_from_slice(&rank.to_le_bytes());
    }
    for &(a, b, rank) in edges {
        key.push(a);
        key.push(b);
        key.extend_from_slice(&rank.to_le_bytes());
    }
    key
}

fn orbits_from_automorphisms(n: usize, automorphisms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for p in automorphisms {
        for (v, &image) in p.iter().enumerate() {
            let (a, b) = (find(&mut parent, v), find(&mut parent, image));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_to_group: Vec<Option<usize>> = vec![None; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        match root_to_group[r] {
            Some(g) => groups[g].push(v),
            None => {
                root_to_group[r] = Some(groups.len());
                groups.push(vec![v]);
            }
        }
    }
    groups
}

/// Identifies one orbit of one motif within a motif list: the unit that
/// degree constraints and aggregation groups refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitRef {
    /// Index of the motif in the ambient motif list.
    pub motif: usize,
    /// Orbit index within that motif.
    pub orbit: usize,
}

/// An atom bundled with its computed symmetry data; the unit the ensemble
/// modules work with.
#[derive(Debug, Clone)]
pub struct Motif {
    atom: Atom,
    symmetry: AtomSymmetry,
}

impl Motif {
    /// Validates the atom and computes its symmetry.
    pub fn new(atom: Atom) -> Result<Self> {
        let symmetry = compute_symmetry(&atom)?;
        Ok(Motif { atom, symmetry })
    }

    /// Looks up a catalogue atom by name.
    pub fn from_catalogue(name: &str) -> Result<Self> {
        let atom = Atom::catalogue(name)
            .ok_or_else(|| Error::Spec(format!("unknown catalogue atom `{name}`")))?;
        Motif::new(atom)
    }

    /// The underlying atom.
    pub fn atom(&self) -> &Atom {
        &self.atom
    }

    /// The symmetry data.
    pub fn symmetry(&self) -> &AtomSymmetry {
        &self.symmetry
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.atom.order()
    }

    /// `|Aut(m)|`.
    pub fn aut_size(&self) -> u64 {
        self.symmetry.aut_size()
    }

    /// Display name, falling back to the canonical key rendered as hex.
    pub fn display_name(&self) -> String {
        match self.atom.name() {
            Some(n) => n.to_string(),
            None => {
                let key = self.symmetry.canonical_key();
                key.iter().map(|b| format!("{b:02x}")).collect()
            }
        }
    }
}

/// Number of distinct `m`-subgraphs of the complete graph on `n_vertices`
/// vertices: `N! / ((N - |m|)! |Aut(m)|)`, as an exact big integer.
///
/// Returns zero when `n_vertices < |m|`.
pub fn count_placements(n_vertices: usize, symmetry: &AtomSymmetry) -> BigUint {
    let order = symmetry.order();
    if n_vertices < order {
        return BigUint::from(0u32);
    }
    let mut product = BigUint::from(1u32);
    for j in 0..order {
        product *= BigUint::from((n_vertices - j) as u64);
    }
    let aut = BigUint::from(symmetry.aut_size());
    debug_assert!((&product % &aut) == BigUint::from(0u32));
    product / aut
}

/// Natural log of [`count_placements`], usable far beyond big-integer
/// comfort. Returns negative infinity when the count is zero.
pub fn count_placements_log(n_vertices: usize, symmetry: &AtomSymmetry) -> f64 {
    let order = symmetry.order();
    if n_vertices < order {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n_vertices as u64)
        - ln_factorial((n_vertices - order) as u64)
        - (symmetry.aut_size() as f64).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn symmetry_of(name: &str) -> AtomSymmetry {
        compute_symmetry(&Atom::catalogue(name).unwrap()).unwrap()
    }

    #[test]
    fn symmetry_table() {
        // (name, aut size, orbit sizes)
        let table: &[(&str, u64, &[usize])] = &[
            ("edge", 2, &[2]),
            ("directed-edge", 1, &[1, 1]),
            ("path-3", 2, &[2, 1]),
            ("triangle", 6, &[3]),
            ("4-cycle", 8, &[4]),
            ("4-clique", 24, &[4]),
            ("self-loop", 1, &[1]),
        ];
        for (name, aut, orbit_sizes) in table {
            let sym = symmetry_of(name);
            assert_eq!(sym.aut_size(), *aut, "{name}");
            let mut sizes: Vec<usize> = sym.orbits().iter().map(Vec::len).collect();
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            let mut expect = orbit_sizes.to_vec();
            expect.sort_unstable_by(|a, b| b.cmp(a));
            assert_eq!(sizes, expect, "{name}");
        }
    }

    #[test]
    fn path_orbits_are_ends_and_center() {
        let sym = symmetry_of("path-3");
        let mut orbits = sym.orbits().to_vec();
        orbits.sort();
        assert_eq!(orbits, vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn assembly_counts() {
        assert_eq!(symmetry_of("triangle").assembly_count(), 1);
        assert_eq!(symmetry_of("4-cycle").assembly_count(), 3);
        assert_eq!(symmetry_of("path-3").assembly_count(), 1);
        assert_eq!(symmetry_of("edge").assembly_count(), 1);
        assert_eq!(symmetry_of("4-clique").assembly_count(), 1);
    }

    #[test]
    fn assembly_count_times_aut_is_orbit_factorial_product() {
        for name in Atom::catalogue_names() {
            let sym = symmetry_of(name);
            let product: u64 = sym
                .orbits()
                .iter()
                .map(|o| factorial_u64(o.len()))
                .product();
            assert_eq!(sym.assembly_count() * sym.aut_size(), product, "{name}");
        }
    }

    #[test]
    fn placement_counts() {
        assert_eq!(
            count_placements(4, &symmetry_of("edge")),
            BigUint::from(6u32)
        );
        assert_eq!(
            count_placements(4, &symmetry_of("4-cycle")),
            BigUint::from(3u32)
        );
        assert_eq!(
            count_placements(3, &symmetry_of("triangle")),
            BigUint::from(1u32)
        );
        assert_eq!(
            count_placements(4, &symmetry_of("directed-edge")),
            BigUint::from(12u32)
        );
        // below the atom order the count is zero, not an error
        assert_eq!(
            count_placements(2, &symmetry_of("triangle")),
            BigUint::from(0u32)
        );
        assert_eq!(
            count_placements_log(2, &symmetry_of("triangle")),
            f64::NEG_INFINITY
        );
    }

    #[test]
    fn canonical_key_identifies_isomorphism_class() {
        let tri_a = Motif::new(Atom::new(3, false, &[(0, 1), (1, 2), (0, 2)]).unwrap()).unwrap();
        let tri_b = Motif::new(Atom::new(3, false, &[(2, 1), (0, 2), (1, 0)]).unwrap()).unwrap();
        assert_eq!(
            tri_a.symmetry().canonical_key(),
            tri_b.symmetry().canonical_key()
        );

        let path = Motif::from_catalogue("path-3").unwrap();
        assert_ne!(
            tri_a.symmetry().canonical_key(),
            path.symmetry().canonical_key()
        );

        let fwd = Motif::new(Atom::new(2, true, &[(0, 1)]).unwrap()).unwrap();
        let bwd = Motif::new(Atom::new(2, true, &[(1, 0)]).unwrap()).unwrap();
        assert_eq!(
            fwd.symmetry().canonical_key(),
            bwd.symmetry().canonical_key()
        );

        let undirected = Motif::from_catalogue("edge").unwrap();
        assert_ne!(
            fwd.symmetry().canonical_key(),
            undirected.symmetry().canonical_key()
        );
    }

    #[test]
    fn labels_break_symmetry() {
        let plain = Motif::from_catalogue("edge").unwrap();
        let bipartite = Motif::new(
            Atom::with_labels(
                2,
                false,
                &[(0, 1, None)],
                Some(vec![Some("t".into()), Some("b".into())]),
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(plain.aut_size(), 2);
        assert_eq!(bipartite.aut_size(), 1);
        assert_eq!(bipartite.symmetry().orbit_count(), 2);
        assert_ne!(
            plain.symmetry().canonical_key(),
            bipartite.symmetry().canonical_key()
        );
        // equal labels keep the swap symmetry
        let same = Motif::new(
            Atom::with_labels(
                2,
                false,
                &[(0, 1, None)],
                Some(vec![Some("r".into()), Some("r".into())]),
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(same.aut_size(), 2);
    }

    #[test]
    fn oversized_atom_is_rejected() {
        let n = MAX_ATOM_ORDER + 1;
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (0, v)).collect();
        let atom = Atom::new(n, false, &edges).unwrap();
        assert!(matches!(
            compute_symmetry(&atom),
            Err(Error::AtomTooLarge { .. })
        ));
    }

    #[test]
    fn invalid_atoms_are_rejected() {
        assert!(Atom::new(3, false, &[(0, 1)]).is_err()); // disconnected
        assert!(Atom::new(2, false, &[(0, 1), (1, 0)]).is_err()); // duplicate edge
        assert!(Atom::new(2, false, &[(0, 2)]).is_err()); // endpoint out of range
        assert!(Atom::new(2, false, &[(0, 0), (0, 1)]).is_err()); // loop on order 2
        assert!(Atom::new(0, false, &[]).is_err());
    }

    #[test]
    fn orbit_partition_matches_automorphism_reachability() {
        for name in Atom::catalogue_names() {
            let sym = symmetry_of(name);
            for u in 0..sym.order() {
                for v in 0..sym.order() {
                    let mapped = sym.automorphisms().iter().any(|p| p[u] == v);
                    let same_orbit = sym.orbit_of(u) == sym.orbit_of(v);
                    assert_eq!(mapped, same_orbit, "{name}: {u} -> {v}");
                }
            }
        }
    }

    #[test]
    fn assembly_variants_match_count() {
        for name in [
            "edge", "path-3", "triangle", "4-cycle", "4-clique", "star-3",
        ] {
            let sym = symmetry_of(name);
            let variants = sym.assembly_variants();
            assert_eq!(variants.len() as u64, sym.assembly_count(), "{name}");
        }
        // 4-cycle: three distinct pairings of 4 slots
        let sym = symmetry_of("4-cycle");
        assert_eq!(sym.assembly_variants().len(), 3);
    }
}

//! Brute-force ground truth at desk scale.
//!
//! Everything here is intentionally naive: exhaustive subset enumeration,
//! exhaustive stub-matching recursion and a coordinate-bisection solve of the
//! canonical dual. Hard input-size caps refuse anything that is not tiny, so
//! that each oracle's correctness is self-evident; the fast implementations
//! are validated against these routines.

use num_bigint::BigUint;

use crate::atoms::Motif;
use crate::canonical::CanonicalDegreeSpec;
use crate::configuration::{enumerate_placements, Configuration, Placement};
use crate::error::{Error, Result};
use crate::microcanonical::MicroDegreeSpec;
use crate::numeric::{binary_entropy, ln_factorial};

/// Constraint handed to [`enumerate_configurations`].
#[derive(Debug, Clone)]
pub enum ConfigurationConstraint<'a> {
    /// No constraint: every subset of the placement space.
    None,
    /// Exactly `counts[m]` placements per motif.
    ExactCounts(&'a [u64]),
    /// Exactly the orbit degrees of the given (unaggregated) spec.
    ExactOrbitDegrees(&'a MicroDegreeSpec),
}

const MAX_FREE_PLACEMENTS: usize = 24;
const MAX_ENUMERATED: u128 = 4_000_000;

/// Enumerates every configuration satisfying the constraint, exactly once.
///
/// Refuses with [`Error::OracleRefusal`] when the search space is not tiny.
pub fn enumerate_configurations(
    n_vertices: usize,
    motifs: &[Motif],
    constraint: &ConfigurationConstraint,
) -> Result<Vec<Configuration>> {
    let placements: Vec<Vec<Placement>> = motifs
        .iter()
        .enumerate()
        .map(|(m, motif)| enumerate_placements(n_vertices, m, motif))
        .collect();

    match constraint {
        ConfigurationConstraint::None => {
            let total: usize = placements.iter().map(Vec::len).sum();
            if total > MAX_FREE_PLACEMENTS {
                return Err(Error::OracleRefusal(format!(
                    "{total} placements means 2^{total} subsets; the cap is 2^{MAX_FREE_PLACEMENTS}"
                )));
            }
            let flat: Vec<&Placement> = placements.iter().flatten().collect();
            let mut out = Vec::with_capacity(1usize << total);
            for mask in 0u64..(1u64 << total) {
                let mut config = Configuration::new(n_vertices);
                for (bit, placement) in flat.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        config.insert((*placement).clone())?;
                    }
                }
                out.push(config);
            }
            Ok(out)
        }
        ConfigurationConstraint::ExactCounts(counts) => {
            if counts.len() != motifs.len() {
                return Err(Error::Spec("one count per motif required".into()));
            }
            let mut per_motif: Vec<Vec<Vec<&Placement>>> = Vec::new();
            for (m, pool) in placements.iter().enumerate() {
                let n = counts[m] as usize;
                if n > pool.len() {
                    return Err(Error::Infeasible(format!(
                        "motif {m}: {n} copies requested but only {} placements exist",
                        pool.len()
                    )));
                }
                guard_combination_count(pool.len(), n)?;
                per_motif.push(combinations(pool, n));
            }
            cartesian_configurations(n_vertices, &per_motif)
        }
        ConfigurationConstraint::ExactOrbitDegrees(spec) => {
            if !spec.is_unaggregated() {
                return Err(Error::Spec(
                    "exact-degree enumeration needs per-orbit degrees".into(),
                ));
            }
            let mut per_motif: Vec<Vec<Vec<&Placement>>> = Vec::new();
            for (m, pool) in placements.iter().enumerate() {
                let n = spec.counts()[m] as usize;
                guard_combination_count(pool.len(), n)?;
                per_motif.push(subsets_with_degrees(spec, m, pool, n));
            }
            cartesian_configurations(n_vertices, &per_motif)
        }
    }
}

fn guard_combination_count(pool: usize, take: usize) -> Result<()> {
    let mut combos: u128 = 1;
    for j in 0..take.min(pool - take) {
        combos = combos.saturating_mul((pool - j) as u128) / (j as u128 + 1);
        if combos > MAX_ENUMERATED {
            return Err(Error::OracleRefusal(format!(
                "C({pool}, {take}) exceeds the enumeration cap"
            )));
        }
    }
    Ok(())
}

fn combinations(pool: &[Placement], take: usize) -> Vec<Vec<&Placement>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(take);
    fn recur<'a>(
        pool: &'a [Placement],
        take: usize,
        start: usize,
        current: &mut Vec<&'a Placement>,
        out: &mut Vec<Vec<&'a Placement>>,
    ) {
        if current.len() == take {
            out.push(current.clone());
            return;
        }
        let needed = take - current.len();
        for idx in start..=pool.len().saturating_sub(needed) {
            current.push(&pool[idx]);
            recur(pool, take, idx + 1, current, out);
            current.pop();
        }
    }
    recur(pool, take, 0, &mut current, &mut out);
    out
}

/// Subsets of `pool` of size `take` whose orbit degrees match motif `m` of
/// the spec exactly, via budget-pruned recursion.
fn subsets_with_degrees<'a>(
    spec: &MicroDegreeSpec,
    m: usize,
    pool: &'a [Placement],
    take: usize,
) -> Vec<Vec<&'a Placement>> {
    let motif = &spec.motifs()[m];
    let sym = motif.symmetry();
    let mut budget: Vec<Vec<u64>> = (0..sym.orbit_count())
        .map(|i| {
            (0..spec.n_vertices())
                .map(|v| {
                    spec.orbit_degree(crate::atoms::OrbitRef { motif: m, orbit: i }, v)
                        .expect("unaggregated spec")
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut current: Vec<&Placement> = Vec::with_capacity(take);

    fn recur<'a>(
        sym: &crate::atoms::AtomSymmetry,
        pool: &'a [Placement],
        take: usize,
        start: usize,
        budget: &mut Vec<Vec<u64>>,
        current: &mut Vec<&'a Placement>,
        out: &mut Vec<Vec<&'a Placement>>,
    ) {
        if current.len() == take {
            if budget.iter().flatten().all(|&b| b == 0) {
                out.push(current.clone());
            }
            return;
        }
        let needed = take - current.len();
        for idx in start..=pool.len().saturating_sub(needed) {
            let placement = &pool[idx];
            let fits = placement
                .vertices()
                .iter()
                .enumerate()
                .all(|(atom_vertex, &v)| budget[sym.orbit_of(atom_vertex)][v as usize] > 0);
            if fits {
                for (atom_vertex, &v) in placement.vertices().iter().enumerate() {
                    budget[sym.orbit_of(atom_vertex)][v as usize] -= 1;
                }
                current.push(placement);
                recur(sym, pool, take, idx + 1, budget, current, out);
                current.pop();
                for (atom_vertex, &v) in placement.vertices().iter().enumerate() {
                    budget[sym.orbit_of(atom_vertex)][v as usize] += 1;
                }
            }
        }
    }
    recur(sym, pool, take, 0, &mut budget, &mut current, &mut out);
    out
}

fn cartesian_configurations(
    n_vertices: usize,
    per_motif: &[Vec<Vec<&Placement>>],
) -> Result<Vec<Configuration>> {
    let mut total: u128 = 1;
    for options in per_motif {
        total = total.saturating_mul(options.len() as u128);
        if total > MAX_ENUMERATED {
            return Err(Error::OracleRefusal(
                "cross product of per-motif selections exceeds the enumeration cap".into(),
            ));
        }
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut indices = vec![0usize; per_motif.len()];
    if per_motif.iter().any(|options| options.is_empty()) {
        return Ok(Vec::new());
    }
    loop {
        let mut config = Configuration::new(n_vertices);
        for (m, &i) in indices.iter().enumerate() {
            for placement in &per_motif[m][i] {
                config.insert((*placement).clone())?;
            }
        }
        out.push(config);
        let mut m = per_motif.len();
        loop {
            if m == 0 {
                return Ok(out);
            }
            m -= 1;
            indices[m] += 1;
            if indices[m] < per_motif[m].len() {
                break;
            }
            indices[m] = 0;
        }
    }
}

const MAX_ORACLE_STUBS: u64 = 12;

/// Exhaustively counts the stub matchings of an unaggregated spec with
/// distinguishable stubs, including degenerate matchings (self-matches and
/// duplicates). An exact big integer.
pub fn exact_matching_count(spec: &MicroDegreeSpec) -> Result<BigUint> {
    if !spec.is_unaggregated() {
        return Err(Error::Spec(
            "matching oracle needs per-orbit degrees".into(),
        ));
    }
    let mut total = BigUint::from(1u32);
    for (m, motif) in spec.motifs().iter().enumerate() {
        let stub_count: u64 = (0..motif.symmetry().orbit_count())
            .map(|i| motif.symmetry().orbit_size(i) as u64 * spec.counts()[m])
            .sum();
        if stub_count > MAX_ORACLE_STUBS {
            return Err(Error::OracleRefusal(format!(
                "motif {m} has {stub_count} stubs; the matching oracle is capped at {MAX_ORACLE_STUBS}"
            )));
        }
        total *= matchings_for_motif(spec, m);
    }
    Ok(total)
}

/// Log of [`exact_matching_count`] translated to the convention of the
/// stub-matching formula, which treats stubs at one vertex in one orbit as
/// interchangeable: subtracts `sum ln d!`.
pub fn log_matching_count_orbit_convention(spec: &MicroDegreeSpec) -> Result<f64> {
    let count = exact_matching_count(spec)?;
    let digits = count.to_string();
    let mut log = digits
        .parse::<f64>()
        .map(|v| v.ln())
        .unwrap_or(f64::NEG_INFINITY);
    for group in spec.groups() {
        for &d in &group.degrees {
            log -= ln_factorial(d);
        }
    }
    Ok(log)
}

fn matchings_for_motif(spec: &MicroDegreeSpec, m: usize) -> BigUint {
    let motif = &spec.motifs()[m];
    let sym = motif.symmetry();
    // distinguishable stubs per orbit, tagged with their vertex
    let mut stubs: Vec<Vec<u32>> = Vec::with_capacity(sym.orbit_count());
    for i in 0..sym.orbit_count() {
        let mut list = Vec::new();
        for v in 0..spec.n_vertices() {
            let d = spec
                .orbit_degree(crate::atoms::OrbitRef { motif: m, orbit: i }, v)
                .expect("unaggregated spec");
            for _ in 0..d {
                list.push(v as u32);
            }
        }
        stubs.push(list);
    }
    let variants = sym.assembly_variants().len() as u64;
    let orbit_sizes: Vec<usize> = (0..sym.orbit_count()).map(|i| sym.orbit_size(i)).collect();
    let mut used: Vec<Vec<bool>> = stubs.iter().map(|s| vec![false; s.len()]).collect();
    count_matchings(&orbit_sizes, &mut used, variants)
}

/// Recursive enumeration: each atom is anchored at the lowest unused stub of
/// the first orbit, the remaining slots range over unused stub subsets, and
/// every assembly variant is a separate branch.
fn count_matchings(orbit_sizes: &[usize], used: &mut Vec<Vec<bool>>, variants: u64) -> BigUint {
    let anchor = match used[0].iter().position(|&u| !u) {
        Some(a) => a,
        None => return BigUint::from(1u32), // all stubs consumed: one complete matching
    };
    used[0][anchor] = true;
    let mut total = BigUint::from(0u32);
    for combo0 in unused_subsets(&used[0], orbit_sizes[0] - 1) {
        for &s in &combo0 {
            used[0][s] = true;
        }
        total += extend_orbits(1, orbit_sizes, used, variants);
        for &s in &combo0 {
            used[0][s] = false;
        }
    }
    used[0][anchor] = false;
    total
}

fn extend_orbits(
    orbit: usize,
    orbit_sizes: &[usize],
    used: &mut Vec<Vec<bool>>,
    variants: u64,
) -> BigUint {
    if orbit == orbit_sizes.len() {
        // one atom formed; each assembly variant is a distinct matching
        return BigUint::from(variants) * count_matchings(orbit_sizes, used, variants);
    }
    let mut total = BigUint::from(0u32);
    for combo in unused_subsets(&used[orbit], orbit_sizes[orbit]) {
        for &s in &combo {
            used[orbit][s] = true;
        }
        total += extend_orbits(orbit + 1, orbit_sizes, used, variants);
        for &s in &combo {
            used[orbit][s] = false;
        }
    }
    total
}

fn unused_subsets(used: &[bool], take: usize) -> Vec<Vec<usize>> {
    let free: Vec<usize> = used
        .iter()
        .enumerate()
        .filter_map(|(i, &u)| (!u).then_some(i))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(take);
    fn recur(
        free: &[usize],
        take: usize,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == take {
            out.push(current.clone());
            return;
        }
        let needed = take - current.len();
        for i in start..=free.len().saturating_sub(needed) {
            current.push(free[i]);
            recur(free, take, i + 1, current, out);
            current.pop();
        }
    }
    recur(&free, take, 0, &mut current, &mut out);
    out
}

/// Maximum-entropy solution found by an algorithm independent of the main
/// solver: cyclic coordinate descent on the dual with exact one-dimensional
/// bisection.
#[derive(Debug, Clone)]
pub struct OracleCanonicalSolution {
    /// Placements with their solved probabilities.
    pub probabilities: Vec<(Placement, f64)>,
    /// Entropy of the solved ensemble in nats.
    pub entropy: f64,
    /// Largest constraint residual at termination.
    pub residual: f64,
}

const MAX_ORACLE_PLACEMENTS: usize = 10_000;
const BISECTION_RANGE: f64 = 60.0;

/// Placement plus its (group, vertex) slot incidence and motif index.
type TaggedPlacement = (Placement, Vec<(usize, u32)>, usize);

/// Solves the exact canonical degree system by coordinate bisection.
pub fn exact_canonical_solution(spec: &CanonicalDegreeSpec) -> Result<OracleCanonicalSolution> {
    let n = spec.n_vertices();
    let n_groups = spec.groups().len();

    let mut placements: Vec<TaggedPlacement> = Vec::new();
    for (m, motif) in spec.motifs().iter().enumerate() {
        for p in enumerate_placements(n, m, motif) {
            let slots: Vec<(usize, u32)> = p
                .vertices()
                .iter()
                .enumerate()
                .map(|(atom_vertex, &v)| {
                    let orbit = motif.symmetry().orbit_of(atom_vertex);
                    (spec.group_of(crate::atoms::OrbitRef { motif: m, orbit }), v)
                })
                .collect();
            placements.push((p, slots, m));
        }
    }
    if placements.len() > MAX_ORACLE_PLACEMENTS {
        return Err(Error::OracleRefusal(format!(
            "{} placements exceed the oracle cap of {MAX_ORACLE_PLACEMENTS}",
            placements.len()
        )));
    }

    let excluded: Vec<bool> = placements
        .iter()
        .map(|(_, slots, _)| {
            slots
                .iter()
                .any(|&(g, v)| spec.groups()[g].degrees[v as usize] == 0.0)
        })
        .collect();

    // incidence lists per (group, vertex) coordinate and per motif
    let coord = |g: usize, v: u32| -> usize { g * n + v as usize };
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n_groups * n];
    let mut motif_incident: Vec<Vec<usize>> = vec![Vec::new(); spec.motifs().len()];
    for (idx, (_, slots, m)) in placements.iter().enumerate() {
        if excluded[idx] {
            continue;
        }
        for &(g, v) in slots {
            incident[coord(g, v)].push(idx);
        }
        motif_incident[*m].push(idx);
    }

    let count_constrained: Vec<bool> = (0..spec.motifs().len())
        .map(|m| {
            (0..spec.motifs()[m].symmetry().orbit_count()).any(|i| {
                spec.groups()[spec.group_of(crate::atoms::OrbitRef { motif: m, orbit: i })]
                    .members
                    .len()
                    > 1
            })
        })
        .collect();

    let mut lambda = vec![0.0f64; n_groups * n];
    let mut lambda_motif = vec![0.0f64; spec.motifs().len()];

    let exponent =
        |idx: usize, lambda: &[f64], lambda_motif: &[f64], placements: &[TaggedPlacement]| -> f64 {
            let (_, slots, m) = &placements[idx];
            let mut e = if count_constrained[*m] {
                lambda_motif[*m]
            } else {
                0.0
            };
            for &(g, v) in slots {
                e += lambda[coord(g, v)];
            }
            e
        };

    let max_sweeps = 4000;
    let tolerance = 1e-10;
    let mut residual = f64::INFINITY;
    for _ in 0..max_sweeps {
        // one cyclic sweep of exact bisections
        for g in 0..n_groups {
            for v in 0..n as u32 {
                let k = spec.groups()[g].degrees[v as usize];
                let c = coord(g, v);
                if k == 0.0 || incident[c].is_empty() {
                    continue;
                }
                // count slot multiplicity per incident placement
                let expectation = |lv: f64, lambda: &mut [f64], lambda_motif: &[f64]| -> f64 {
                    let old = lambda[c];
                    lambda[c] = lv;
                    let mut e = 0.0;
                    for &idx in &incident[c] {
                        let mult = placements[idx]
                            .1
                            .iter()
                            .filter(|&&(gg, vv)| coord(gg, vv) == c)
                            .count() as f64;
                        let ex = exponent(idx, lambda, lambda_motif, &placements);
                        e += mult / (1.0 + ex.exp());
                    }
                    lambda[c] = old;
                    e
                };
                let mut lo = -BISECTION_RANGE;
                let mut hi = BISECTION_RANGE;
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    if expectation(mid, &mut lambda, &lambda_motif) > k {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lambda[c] = 0.5 * (lo + hi);
            }
        }
        for m in 0..spec.motifs().len() {
            if !count_constrained[m] || motif_incident[m].is_empty() {
                continue;
            }
            let target = spec.expected_totals()[m];
            if target <= 0.0 {
                continue;
            }
            let mut lo = -BISECTION_RANGE;
            let mut hi = BISECTION_RANGE;
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                let old = lambda_motif[m];
                lambda_motif[m] = mid;
                let e: f64 = motif_incident[m]
                    .iter()
                    .map(|&idx| {
                        1.0 / (1.0 + exponent(idx, &lambda, &lambda_motif, &placements).exp())
                    })
                    .sum();
                lambda_motif[m] = old;
                if e > target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lambda_motif[m] = 0.5 * (lo + hi);
        }

        // residual over all constraints
        residual = 0.0;
        let mut expected = vec![0.0f64; n_groups * n];
        let mut expected_counts = vec![0.0f64; spec.motifs().len()];
        for (idx, (_, slots, m)) in placements.iter().enumerate() {
            if excluded[idx] {
                continue;
            }
            let p = 1.0 / (1.0 + exponent(idx, &lambda, &lambda_motif, &placements).exp());
            expected_counts[*m] += p;
            for &(g, v) in slots {
                expected[coord(g, v)] += p;
            }
        }
        for g in 0..n_groups {
            for v in 0..n {
                let k = spec.groups()[g].degrees[v];
                if k > 0.0 {
                    residual = residual.max((expected[coord(g, v as u32)] - k).abs());
                }
            }
        }
        for m in 0..spec.motifs().len() {
            if count_constrained[m] {
                residual = residual.max((expected_counts[m] - spec.expected_totals()[m]).abs());
            }
        }
        if residual < tolerance {
            break;
        }
    }

    if !residual.is_finite() || residual > 1e-6 {
        return Err(Error::NonConvergent {
            iterations: max_sweeps,
            residual,
        });
    }

    let mut probabilities = Vec::with_capacity(placements.len());
    let mut entropy = 0.0;
    for (idx, (p, _, _)) in placements.iter().enumerate() {
        let prob = if excluded[idx] {
            0.0
        } else {
            1.0 / (1.0 + exponent(idx, &lambda, &lambda_motif, &placements).exp())
        };
        entropy += binary_entropy(prob);
        probabilities.push((p.clone(), prob));
    }
    Ok(OracleCanonicalSolution {
        probabilities,
        entropy,
        residual,
    })
}

/// Reference distribution of the microcanonical sampler: uniform over the
/// configurations realising the spec's degrees. The support may be empty
/// when the divisibility conditions hold but no placement set realises the
/// degrees.
pub fn exact_sampler_distribution(spec: &MicroDegreeSpec) -> Result<Vec<(Configuration, f64)>> {
    let configs = enumerate_configurations(
        spec.n_vertices(),
        spec.motifs(),
        &ConfigurationConstraint::ExactOrbitDegrees(spec),
    )?;
    let p = 1.0 / configs.len().max(1) as f64;
    Ok(configs.into_iter().map(|c| (c, p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::microcanonical::log_stub_matchings;

    fn motif(name: &str) -> Motif {
        Motif::from_catalogue(name).unwrap()
    }

    fn edge_spec(degrees: Vec<u64>) -> MicroDegreeSpec {
        let n = degrees.len();
        MicroDegreeSpec::from_orbit_degrees(vec![motif("edge")], n, vec![vec![degrees]]).unwrap()
    }

    #[test]
    fn unconstrained_enumeration_counts_subsets() {
        let configs =
            enumerate_configurations(3, &[motif("edge")], &ConfigurationConstraint::None).unwrap();
        assert_eq!(configs.len(), 8);
    }

    #[test]
    fn fixed_count_enumeration() {
        let configs = enumerate_configurations(
            3,
            &[motif("edge")],
            &ConfigurationConstraint::ExactCounts(&[2]),
        )
        .unwrap();
        assert_eq!(configs.len(), 3);

        // the four triangles of K4, then the pairs
        let configs = enumerate_configurations(
            4,
            &[motif("triangle")],
            &ConfigurationConstraint::ExactCounts(&[1]),
        )
        .unwrap();
        assert_eq!(configs.len(), 4);
        let configs = enumerate_configurations(
            4,
            &[motif("triangle")],
            &ConfigurationConstraint::ExactCounts(&[2]),
        )
        .unwrap();
        assert_eq!(configs.len(), 6);
    }

    #[test]
    fn degree_constrained_enumeration() {
        // the 4 triangles of K4, one at a time
        let spec = MicroDegreeSpec::from_orbit_degrees(
            vec![motif("triangle")],
            4,
            vec![vec![vec![1, 1, 1, 0]]],
        )
        .unwrap();
        let configs = enumerate_configurations(
            4,
            spec.motifs(),
            &ConfigurationConstraint::ExactOrbitDegrees(&spec),
        )
        .unwrap();
        assert_eq!(configs.len(), 1);

        let spec = edge_spec(vec![1, 1, 1, 1]);
        let configs = enumerate_configurations(
            4,
            spec.motifs(),
            &ConfigurationConstraint::ExactOrbitDegrees(&spec),
        )
        .unwrap();
        assert_eq!(configs.len(), 3);
    }

    #[test]
    fn matching_counts() {
        assert_eq!(
            exact_matching_count(&edge_spec(vec![1, 1, 1, 1])).unwrap(),
            BigUint::from(3u32)
        );
        // single vertex of degree two: the one self-match
        assert_eq!(
            exact_matching_count(&edge_spec(vec![2])).unwrap(),
            BigUint::from(1u32)
        );
        let tri = MicroDegreeSpec::from_orbit_degrees(
            vec![motif("triangle")],
            3,
            vec![vec![vec![1, 1, 1]]],
        )
        .unwrap();
        assert_eq!(exact_matching_count(&tri).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn matching_count_equals_stub_formula() {
        for degrees in [
            vec![1u64, 1, 1, 1],
            vec![2, 2],
            vec![2, 1, 1],
            vec![3, 1, 2, 2],
        ] {
            let spec = edge_spec(degrees.clone());
            let oracle = log_matching_count_orbit_convention(&spec).unwrap();
            let formula = log_stub_matchings(&spec);
            assert!(
                (oracle - formula).abs() < 1e-9,
                "degrees {degrees:?}: oracle {oracle} vs formula {formula}"
            );
        }
    }

    #[test]
    fn oracle_canonical_matches_symmetric_closed_form() {
        let spec = CanonicalDegreeSpec::from_orbit_degrees(
            vec![motif("edge")],
            4,
            vec![vec![vec![2.0; 4]]],
        )
        .unwrap();
        let solution = exact_canonical_solution(&spec).unwrap();
        for (_, p) in &solution.probabilities {
            assert!((p - 2.0 / 3.0).abs() < 1e-7);
        }
        let expect = 6.0 * binary_entropy(2.0 / 3.0);
        assert!((solution.entropy - expect).abs() < 1e-7);
    }

    #[test]
    fn oracle_solution_maximizes_entropy() {
        // perturbing the solved probabilities along a direction that keeps
        // every degree constraint (raise one perfect matching, lower the
        // other) must lose entropy
        let spec = CanonicalDegreeSpec::from_orbit_degrees(
            vec![motif("edge")],
            4,
            vec![vec![vec![2.0; 4]]],
        )
        .unwrap();
        let solution = exact_canonical_solution(&spec).unwrap();
        for epsilon in [0.05f64, 0.15, 0.25] {
            let mut perturbed_entropy = 0.0;
            for (placement, p) in &solution.probabilities {
                let pair = (placement.vertices()[0], placement.vertices()[1]);
                let shifted = match pair {
                    (0, 1) | (2, 3) => p + epsilon,
                    (0, 2) | (1, 3) => p - epsilon,
                    _ => *p,
                };
                perturbed_entropy += binary_entropy(shifted);
            }
            assert!(
                perturbed_entropy < solution.entropy,
                "epsilon {epsilon}: {perturbed_entropy} >= {}",
                solution.entropy
            );
        }
    }

    #[test]
    fn unique_configuration_has_probability_one() {
        let spec = MicroDegreeSpec::from_orbit_degrees(
            vec![motif("triangle")],
            4,
            vec![vec![vec![1, 1, 1, 0]]],
        )
        .unwrap();
        let dist = exact_sampler_distribution(&spec).unwrap();
        assert_eq!(dist.len(), 1);
        assert_eq!(dist[0].1, 1.0);
    }

    #[test]
    fn boundary_targets_force_full_inclusion() {
        // every vertex demands all three incident edges
        let spec = CanonicalDegreeSpec::from_orbit_degrees(
            vec![motif("edge")],
            4,
            vec![vec![vec![3.0; 4]]],
        )
        .unwrap();
        let solution = exact_canonical_solution(&spec).unwrap();
        for (_, p) in &solution.probabilities {
            assert!(*p > 1.0 - 1e-9);
        }
    }

    #[test]
    fn sampler_distribution_is_uniform_or_empty() {
        let spec = edge_spec(vec![1, 1, 1, 1]);
        let dist = exact_sampler_distribution(&spec).unwrap();
        assert_eq!(dist.len(), 3);
        for (_, p) in &dist {
            assert!((p - 1.0 / 3.0).abs() < 1e-12);
        }

        // divisible but unrealisable: a single edge cannot give one vertex
        // degree two
        let spec = edge_spec(vec![2, 0, 0]);
        let dist = exact_sampler_distribution(&spec).unwrap();
        assert!(dist.is_empty());
    }

    #[test]
    fn refusals_fire_above_the_caps() {
        let big = enumerate_configurations(8, &[motif("edge")], &ConfigurationConstraint::None);
        assert!(matches!(big, Err(Error::OracleRefusal(_))));
        let spec = edge_spec(vec![4; 4]);
        assert!(matches!(
            exact_matching_count(&spec),
            Err(Error::OracleRefusal(_))
        ));
    }
}

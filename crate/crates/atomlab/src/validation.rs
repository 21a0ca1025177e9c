//! Oracle-equivalence battery: every analytic expression in the crate is
//! checked against brute force at desk scale. The `acceptance` list pins the
//! release criteria with their tolerances; the `small` suite is a fast
//! subset for `atomlab validate`.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha12Rng;

use crate::atoms::{count_placements, Atom, Motif};
use crate::canonical::{solve_multipliers_exact, CanonicalDegreeSpec, SOLVER_MAX_ITERATIONS};
use crate::configuration::{
    atom_counts, count_motif_in_graph, enumerate_placements, orbit_degrees,
};
use crate::error::Result;
use crate::microcanonical::{
    entropy_analytic, entropy_breakdown, entropy_combinatorial, log_count_fixed_counts,
    log_stub_matchings, MicroDegreeSpec,
};
use crate::numeric::{binary_entropy, chi_square_cdf, ln_factorial};
use crate::oracle::{
    enumerate_configurations, exact_canonical_solution, log_matching_count_orbit_convention,
    ConfigurationConstraint,
};
use crate::sampler::{
    canonical_placement_probabilities, predicted_acceptance, sample_and_project_micro,
    sample_microcanonical, CanonicalProbabilities, RandomSource,
};
use crate::special_models::{
    build_labelled_atoms, entropy_bipartite, entropy_bipartite_cliques, entropy_dcsbm,
    entropy_edge_configuration_model, BipartiteDegrees, BlockAssignment, NamedModel, SbmDegrees,
};
use crate::ProjectionMode;

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    /// Check identifier.
    pub name: String,
    /// Whether the check passed.
    pub passed: bool,
    /// Measured values or failure reason.
    pub detail: String,
}

impl CheckResult {
    fn ok(name: &str, detail: String) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: true,
            detail,
        }
    }

    fn fail(name: &str, detail: String) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: false,
            detail,
        }
    }
}

fn check(name: &str, body: impl FnOnce() -> std::result::Result<String, String>) -> CheckResult {
    let started = Instant::now();
    match body() {
        Ok(detail) => CheckResult::ok(
            name,
            format!("{detail} [{:.2}s]", started.elapsed().as_secs_f64()),
        ),
        Err(reason) => CheckResult::fail(name, reason),
    }
}

fn motif(name: &str) -> Motif {
    Motif::from_catalogue(name).expect("catalogue atom")
}

/// Samples a Poisson variate by Knuth's product method.
pub fn poisson(rng: &mut ChaCha12Rng, mean: f64) -> u64 {
    let limit = (-mean).exp();
    let mut k = 0u64;
    let mut p = 1.0f64;
    loop {
        p *= rng.gen::<f64>();
        if p <= limit {
            return k;
        }
        k += 1;
    }
}

/// An i.i.d. Poisson degree sequence adjusted so its sum is divisible by
/// `modulus` (single increments on rotating vertices).
pub fn poisson_degrees(rng: &mut ChaCha12Rng, n: usize, mean: f64, modulus: u64) -> Vec<u64> {
    let mut degrees: Vec<u64> = (0..n).map(|_| poisson(rng, mean)).collect();
    let mut idx = 0usize;
    while degrees.iter().sum::<u64>() % modulus != 0 {
        degrees[idx % n] += 1;
        idx += 1;
    }
    degrees
}

/// Distinct-subgraph count by raw tuple enumeration and edge-set dedup, the
/// independent route for the placement-count identity.
fn brute_force_subgraph_count(n_vertices: usize, atom: &Atom) -> u64 {
    let k = atom.order();
    if k > n_vertices {
        return 0;
    }
    let mut edge_sets: BTreeSet<Vec<(u32, u32, Option<String>)>> = BTreeSet::new();
    let mut tuple: Vec<u32> = Vec::with_capacity(k);
    fn recurse(
        n: usize,
        atom: &Atom,
        tuple: &mut Vec<u32>,
        out: &mut BTreeSet<Vec<(u32, u32, Option<String>)>>,
    ) {
        if tuple.len() == atom.order() {
            let mut edges: Vec<(u32, u32, Option<String>)> = atom
                .edges()
                .iter()
                .map(|e| {
                    let (mut a, mut b) = (tuple[e.source], tuple[e.target]);
                    if !atom.directed() && a > b {
                        std::mem::swap(&mut a, &mut b);
                    }
                    (a, b, e.label.clone())
                })
                .collect();
            edges.sort();
            out.insert(edges);
            return;
        }
        for v in 0..n as u32 {
            if !tuple.contains(&v) {
                tuple.push(v);
                recurse(n, atom, tuple, out);
                tuple.pop();
            }
        }
    }
    recurse(n_vertices, atom, &mut tuple, &mut edge_sets);
    edge_sets.len() as u64
}

fn edge_spec(degrees: Vec<u64>) -> Result<MicroDegreeSpec> {
    let n = degrees.len();
    MicroDegreeSpec::from_orbit_degrees(vec![motif("edge")], n, vec![vec![degrees]])
}

/// Degree sequences with positive entries and the given stub total.
fn positive_sequences(total: u64, max_len: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn recurse(remaining: u64, max_len: usize, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if remaining == 0 {
            if !current.is_empty() {
                out.push(current.clone());
            }
            return;
        }
        if current.len() == max_len {
            return;
        }
        for d in 1..=remaining {
            current.push(d);
            recurse(remaining - d, max_len, current, out);
            current.pop();
        }
    }
    recurse(total, max_len, &mut current, &mut out);
    out
}

// ---------------------------------------------------------------------------
// acceptance criteria
// ---------------------------------------------------------------------------

fn criterion_placement_counts(
    max_order: usize,
    max_n: usize,
) -> std::result::Result<String, String> {
    let mut checked = 0;
    for name in Atom::catalogue_names() {
        let m = motif(name);
        if m.order() > max_order {
            continue;
        }
        for n in 1..=max_n {
            let closed = count_placements(n, m.symmetry());
            let brute = brute_force_subgraph_count(n, m.atom());
            if closed != num_bigint::BigUint::from(brute) {
                return Err(format!("{name} at N={n}: closed {closed} vs brute {brute}"));
            }
            let listed = enumerate_placements(n, 0, &m).len() as u64;
            if listed != brute {
                return Err(format!(
                    "{name} at N={n}: enumeration {listed} vs brute {brute}"
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (atom, N) pairs"))
}

fn criterion_symmetry_table() -> std::result::Result<String, String> {
    let table: &[(&str, u64, usize)] = &[
        ("edge", 2, 1),
        ("directed-edge", 1, 2),
        ("path-3", 2, 2),
        ("triangle", 6, 1),
        ("4-cycle", 8, 1),
        ("4-clique", 24, 1),
    ];
    for &(name, aut, orbits) in table {
        let m = motif(name);
        if m.aut_size() != aut || m.symmetry().orbit_count() != orbits {
            return Err(format!(
                "{name}: got |Aut|={}, {} orbits; expected {aut}, {orbits}",
                m.aut_size(),
                m.symmetry().orbit_count()
            ));
        }
    }
    if motif("triangle").symmetry().assembly_count() != 1 {
        return Err("triangle assembly count is not 1".into());
    }
    if motif("4-cycle").symmetry().assembly_count() != 3 {
        return Err("4-cycle assembly count is not 3".into());
    }
    Ok("6 atoms, both assembly counts".into())
}

fn criterion_matching_identity(
    edge_stub_cap: u64,
    triangle_stub_cap: u64,
) -> std::result::Result<String, String> {
    let mut checked = 0;
    for total in (2..=edge_stub_cap).step_by(2) {
        for degrees in positive_sequences(total, total as usize) {
            let spec = edge_spec(degrees.clone()).map_err(|e| e.to_string())?;
            let oracle = log_matching_count_orbit_convention(&spec).map_err(|e| e.to_string())?;
            let formula = log_stub_matchings(&spec);
            if (oracle - formula).abs() > 1e-9 {
                return Err(format!(
                    "edge degrees {degrees:?}: oracle {oracle:.12} vs formula {formula:.12}"
                ));
            }
            checked += 1;
        }
    }
    for total in (3..=triangle_stub_cap).step_by(3) {
        for degrees in positive_sequences(total, total as usize) {
            let n = degrees.len();
            let spec = MicroDegreeSpec::from_orbit_degrees(
                vec![motif("triangle")],
                n,
                vec![vec![degrees.clone()]],
            )
            .map_err(|e| e.to_string())?;
            let oracle = log_matching_count_orbit_convention(&spec).map_err(|e| e.to_string())?;
            let formula = log_stub_matchings(&spec);
            if (oracle - formula).abs() > 1e-9 {
                return Err(format!(
                    "triangle degrees {degrees:?}: oracle {oracle:.12} vs formula {formula:.12}"
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} degree sequences"))
}

fn criterion_fixed_count_identity(max_n: usize) -> std::result::Result<String, String> {
    let mut checked = 0;
    for n in 2..=max_n {
        let sets: Vec<Vec<Motif>> = vec![
            vec![motif("edge")],
            vec![motif("triangle")],
            vec![motif("edge"), motif("triangle")],
        ];
        for motifs in sets {
            let spaces: Vec<u64> = motifs
                .iter()
                .map(|m| u64::try_from(&count_placements(n, m.symmetry())).expect("small space"))
                .collect();
            let ranges: Vec<Vec<u64>> = spaces.iter().map(|&h| (0..=h.min(3)).collect()).collect();
            let mut counts = vec![0u64; motifs.len()];
            let mut stack = vec![0usize; motifs.len()];
            'grid: loop {
                for (i, &j) in stack.iter().enumerate() {
                    counts[i] = ranges[i][j];
                }
                let configs = enumerate_configurations(
                    n,
                    &motifs,
                    &ConfigurationConstraint::ExactCounts(&counts),
                )
                .map_err(|e| e.to_string())?;
                let formula =
                    log_count_fixed_counts(n, &motifs, &counts).map_err(|e| e.to_string())?;
                let actual = (configs.len() as f64).ln();
                if (formula - actual).abs() > 1e-9 {
                    return Err(format!(
                        "N={n} counts {counts:?}: formula {formula:.12} vs enumeration {actual:.12}"
                    ));
                }
                checked += 1;
                let mut dim = stack.len();
                loop {
                    if dim == 0 {
                        break 'grid;
                    }
                    dim -= 1;
                    stack[dim] += 1;
                    if stack[dim] < ranges[dim].len() {
                        break;
                    }
                    stack[dim] = 0;
                }
            }
        }
    }
    Ok(format!("{checked} count vectors"))
}

fn criterion_classical_reduction(
    instances: usize,
    n: usize,
) -> std::result::Result<String, String> {
    let mut rng = RandomSource::new(0x5eed_c1a5).rng();
    for trial in 0..instances {
        let mean = 1.0 + rng.gen::<f64>() * 2.0; // mean degree <= 6 overall
        let degrees = poisson_degrees(&mut rng, n, mean, 2);
        let spec = edge_spec(degrees.clone()).map_err(|e| e.to_string())?;
        let breakdown = entropy_breakdown(&spec).map_err(|e| e.to_string())?;

        let e: u64 = degrees.iter().sum::<u64>() / 2;
        let matching = ln_factorial(2 * e)
            - e as f64 * 2f64.ln()
            - ln_factorial(e)
            - degrees.iter().map(|&d| ln_factorial(d)).sum::<f64>();
        let sum: u64 = degrees.iter().sum();
        let x = degrees.iter().map(|&d| d * (d - d.min(1))).sum::<u64>() as f64 / sum as f64;
        let terms = [
            ("matching", breakdown.matching, matching),
            ("self-match", breakdown.self_match, -x / 2.0),
            (
                "multi-subgraph",
                breakdown.multi_subgraph.value,
                -x * x / 4.0,
            ),
        ];
        for (label, got, expect) in terms {
            let tol = 1e-9 * (1.0 + expect.abs());
            if (got - expect).abs() > tol {
                return Err(format!(
                    "trial {trial} {label}: got {got:.12}, classical {expect:.12}"
                ));
            }
        }
    }
    Ok(format!("{instances} random degree sequences at N={n}"))
}

fn random_bipartite(rng: &mut ChaCha12Rng) -> BipartiteDegrees {
    let n_bottom = 3 + (rng.gen::<u64>() % 4) as usize;
    let bottom: Vec<u64> = (0..n_bottom).map(|_| 1 + rng.gen::<u64>() % 4).collect();
    let total: u64 = bottom.iter().sum();
    let n_top = 3 + (rng.gen::<u64>() % 4) as usize;
    let mut top = vec![0u64; n_top];
    for _ in 0..total {
        let i = rng.gen_range(0..n_top);
        top[i] += 1;
    }
    BipartiteDegrees::new(top, bottom).expect("consistent totals")
}

fn relative_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

fn criterion_unified_reductions(instances: usize) -> std::result::Result<String, String> {
    let mut rng = RandomSource::new(0xb10c_5eed).rng();
    let mut checked = 0;

    for trial in 0..instances {
        // bipartite closed form vs clique formulation vs general machinery
        let degrees = random_bipartite(&mut rng);
        let closed = entropy_bipartite(&degrees);
        let cliques = entropy_bipartite_cliques(&degrees.bottom, &degrees.top, true)
            .map_err(|e| e.to_string())?;
        if !relative_close(closed, cliques, 1e-9) {
            return Err(format!(
                "trial {trial}: bipartite {closed:.12} vs cliques {cliques:.12}"
            ));
        }
        let spec = build_labelled_atoms(&NamedModel::Bipartite(degrees.clone()))
            .map_err(|e| e.to_string())?;
        let general = entropy_combinatorial(&spec).map_err(|e| e.to_string())?;
        if !relative_close(closed, general, 1e-9) {
            return Err(format!(
                "trial {trial}: bipartite {closed:.12} vs general {general:.12}"
            ));
        }

        // DC-SBM at B=1 equals the configuration model
        let n = 6 + (rng.gen::<u64>() % 4) as usize;
        let degrees = poisson_degrees(&mut rng, n, 2.0, 2);
        let e: u64 = degrees.iter().sum::<u64>() / 2;
        let assignment = BlockAssignment::new(vec![0; n], 1).map_err(|e| e.to_string())?;
        let sbm = entropy_dcsbm(&assignment, &[vec![e]], &SbmDegrees::Total(&degrees))
            .map_err(|e| e.to_string())?;
        let cm = entropy_edge_configuration_model(&degrees).map_err(|e| e.to_string())?;
        if !relative_close(sbm, cm, 1e-9) {
            return Err(format!("trial {trial}: B=1 SBM {sbm:.12} vs CM {cm:.12}"));
        }

        // DC-SBM at B=2 equals the general machinery on labelled atoms
        let half = n / 2;
        let blocks: Vec<usize> = (0..n).map(|v| usize::from(v >= half)).collect();
        let assignment = BlockAssignment::new(blocks, 2).map_err(|e| e.to_string())?;
        let members = assignment.members();
        let n01 = 2 + rng.gen::<u64>() % 3;
        let mut counts = vec![vec![0u64; 2], vec![0u64; 2]];
        counts[0][1] = n01;
        counts[1][0] = n01;
        counts[0][0] = 2 + rng.gen::<u64>() % 3;
        counts[1][1] = 2 + rng.gen::<u64>() % 3;
        let mut deg = vec![0u64; n];
        for r in 0..2 {
            let need = 2 * counts[r][r] + n01;
            for _ in 0..need {
                let v = members[r][rng.gen_range(0..members[r].len())];
                deg[v] += 1;
            }
        }
        let closed = entropy_dcsbm(&assignment, &counts, &SbmDegrees::Total(&deg))
            .map_err(|e| e.to_string())?;
        let spec = build_labelled_atoms(&NamedModel::Sbm {
            assignment,
            counts,
            degrees: deg,
        })
        .map_err(|e| e.to_string())?;
        let general = entropy_combinatorial(&spec).map_err(|e| e.to_string())?;
        if !relative_close(closed, general, 1e-9) {
            return Err(format!(
                "trial {trial}: SBM {closed:.12} vs general {general:.12}"
            ));
        }

        // link communities and edge patterns are sums of layer models
        let layers: Vec<Vec<u64>> = (0..2)
            .map(|_| poisson_degrees(&mut rng, n, 1.5, 2))
            .collect();
        let spec = build_labelled_atoms(&NamedModel::LinkCommunity {
            layer_degrees: layers.clone(),
        })
        .map_err(|e| e.to_string())?;
        let general = entropy_combinatorial(&spec).map_err(|e| e.to_string())?;
        let sum: f64 = layers
            .iter()
            .map(|d| entropy_edge_configuration_model(d).unwrap())
            .sum();
        if !relative_close(sum, general, 1e-9) {
            return Err(format!(
                "trial {trial}: link-community {sum:.12} vs general {general:.12}"
            ));
        }

        let patterns = vec![
            vec!["a".to_string()],
            vec!["a".to_string(), "b".to_string()],
        ];
        let spec = build_labelled_atoms(&NamedModel::MultilayerEdgePattern {
            patterns,
            pattern_degrees: layers.clone(),
        })
        .map_err(|e| e.to_string())?;
        let general = entropy_combinatorial(&spec).map_err(|e| e.to_string())?;
        if !relative_close(sum, general, 1e-9) {
            return Err(format!(
                "trial {trial}: edge-pattern {sum:.12} vs general {general:.12}"
            ));
        }

        checked += 5;
    }
    Ok(format!("{checked} reduction identities"))
}

fn criterion_analytic_consistency() -> std::result::Result<String, String> {
    let mut gaps = Vec::new();
    for &n in &[100usize, 400, 1600] {
        let mut rng = RandomSource::new(0x0a11_a11c + n as u64).rng();
        let edge_degrees = poisson_degrees(&mut rng, n, 3.0, 2);
        let tri_degrees = poisson_degrees(&mut rng, n, 3.0, 3);
        let spec = MicroDegreeSpec::from_orbit_degrees(
            vec![motif("edge"), motif("triangle")],
            n,
            vec![vec![edge_degrees], vec![tri_degrees]],
        )
        .map_err(|e| e.to_string())?;
        let combinatorial = entropy_combinatorial(&spec).map_err(|e| e.to_string())?;
        let analytic = entropy_analytic(&spec, 10).map_err(|e| e.to_string())?;
        gaps.push((analytic.value - combinatorial).abs() / n as f64);
    }
    if !(gaps[0] > gaps[1] && gaps[1] > gaps[2]) {
        return Err(format!("per-vertex gaps not decreasing: {gaps:?}"));
    }
    Ok(format!(
        "per-vertex gaps {:.4} > {:.4} > {:.4}",
        gaps[0], gaps[1], gaps[2]
    ))
}

fn criterion_canonical_sampler_moments(samples: usize) -> std::result::Result<String, String> {
    let n = 50usize;
    let edge_target = 2.0f64;
    let tri_target = 0.6f64;
    let spec = CanonicalDegreeSpec::from_orbit_degrees(
        vec![motif("edge"), motif("triangle")],
        n,
        vec![vec![vec![edge_target; n]], vec![vec![tri_target; n]]],
    )
    .map_err(|e| e.to_string())?;
    let pairs =
        canonical_placement_probabilities(&spec, CanonicalProbabilities::Exact { tolerance: 1e-8 })
            .map_err(|e| e.to_string())?;

    let mut rng = RandomSource::new(0xca40_0ca1).rng();
    let mut count_sums = [0f64; 2];
    let mut degree_sums = vec![vec![0f64; n]; 2];
    for _ in 0..samples {
        for (placement, p) in &pairs {
            if rng.gen::<f64>() < *p {
                count_sums[placement.motif()] += 1.0;
                for &v in placement.vertices() {
                    degree_sums[placement.motif()][v as usize] += 1.0;
                }
            }
        }
    }

    // binomial variances from the solved probabilities
    let mut count_var = [0f64; 2];
    let mut degree_var = vec![vec![0f64; n]; 2];
    let mut count_mean = [0f64; 2];
    let mut degree_mean = vec![vec![0f64; n]; 2];
    for (placement, p) in &pairs {
        let m = placement.motif();
        count_mean[m] += p;
        count_var[m] += p * (1.0 - p);
        for &v in placement.vertices() {
            degree_mean[m][v as usize] += p;
            degree_var[m][v as usize] += p * (1.0 - p);
        }
    }
    let s = samples as f64;
    for m in 0..2 {
        let sigma = (count_var[m] / s).sqrt();
        let observed = count_sums[m] / s;
        if (observed - count_mean[m]).abs() > 4.0 * sigma {
            return Err(format!(
                "motif {m} count: observed {observed:.3} vs target {:.3} (4 sigma {:.3})",
                count_mean[m],
                4.0 * sigma
            ));
        }
        for v in 0..n {
            let sigma = (degree_var[m][v] / s).sqrt();
            let observed = degree_sums[m][v] / s;
            let target = if m == 0 { edge_target } else { tri_target };
            if (observed - target).abs() > 4.0 * sigma.max(1e-6) {
                return Err(format!(
                    "motif {m} degree at {v}: observed {observed:.3} vs {target:.3}"
                ));
            }
        }
    }
    Ok(format!(
        "{samples} samples, counts and {n} vertex degrees within 4 sigma"
    ))
}

fn uniformity_case(
    name: &str,
    spec: &MicroDegreeSpec,
    samples: usize,
    seed: u64,
) -> std::result::Result<String, String> {
    let support = crate::oracle::exact_sampler_distribution(spec).map_err(|e| e.to_string())?;
    if support.is_empty() || support.len() > 50 {
        return Err(format!("{name}: support size {} unusable", support.len()));
    }
    let mut frequencies = vec![0u64; support.len()];
    let mut rng = RandomSource::new(seed).rng();
    for _ in 0..samples {
        let sample = sample_microcanonical(spec, &mut rng, 1_000_000).map_err(|e| e.to_string())?;
        let idx = support
            .iter()
            .position(|(config, _)| *config == sample.configuration)
            .ok_or_else(|| format!("{name}: sample outside enumerated support"))?;
        frequencies[idx] += 1;
    }
    let expected = samples as f64 / support.len() as f64;
    let statistic: f64 = frequencies
        .iter()
        .map(|&f| {
            let diff = f as f64 - expected;
            diff * diff / expected
        })
        .sum();
    let dof = support.len() - 1;
    let p_value = 1.0 - chi_square_cdf(statistic, dof);
    if p_value < 1e-3 {
        return Err(format!(
            "{name}: chi-square {statistic:.2} on {dof} dof has p = {p_value:.2e} < 1e-3"
        ));
    }
    Ok(format!(
        "{name}: {} configs, chi2 {statistic:.2}, p {p_value:.3}",
        support.len()
    ))
}

fn criterion_microcanonical_uniformity(samples: usize) -> std::result::Result<String, String> {
    let mut details = Vec::new();

    let spec = edge_spec(vec![1, 1, 1, 1]).map_err(|e| e.to_string())?;
    details.push(uniformity_case("edge 1-regular", &spec, samples, 11)?);

    let spec = edge_spec(vec![2, 2, 2, 2]).map_err(|e| e.to_string())?;
    details.push(uniformity_case("edge 2-regular", &spec, samples, 13)?);

    let spec = MicroDegreeSpec::from_orbit_degrees(
        vec![motif("triangle")],
        5,
        vec![vec![vec![1, 1, 1, 1, 2]]],
    )
    .map_err(|e| e.to_string())?;
    details.push(uniformity_case("triangle pair", &spec, samples, 17)?);

    let spec = MicroDegreeSpec::from_orbit_degrees(
        vec![motif("edge"), motif("triangle")],
        5,
        vec![vec![vec![1, 1, 1, 1, 0]], vec![vec![1, 1, 1, 0, 0]]],
    )
    .map_err(|e| e.to_string())?;
    details.push(uniformity_case("edge+triangle", &spec, samples, 19)?);

    let spec = MicroDegreeSpec::from_orbit_degrees(
        vec![motif("path-3")],
        4,
        vec![vec![vec![1, 1, 1, 1], vec![1, 1, 0, 0]]],
    )
    .map_err(|e| e.to_string())?;
    details.push(uniformity_case("two paths", &spec, samples, 31)?);

    Ok(details.join("; "))
}

fn criterion_acceptance_rate(attempts: usize) -> std::result::Result<String, String> {
    let n = 500usize;
    let mut rng = RandomSource::new(0xacce_97ed).rng();
    let degrees = poisson_degrees(&mut rng, n, 3.0, 2);
    let spec = edge_spec(degrees).map_err(|e| e.to_string())?;
    let predicted = predicted_acceptance(&spec).map_err(|e| e.to_string())?;

    let mut accepted = 0usize;
    let mut sample_rng = RandomSource::new(0x00b5_e6ed).rng();
    for _ in 0..attempts {
        if sample_microcanonical(&spec, &mut sample_rng, 1).is_ok() {
            accepted += 1;
        }
    }
    let observed = accepted as f64 / attempts as f64;
    let relative = (observed - predicted).abs() / predicted;
    if relative > 0.10 {
        return Err(format!(
            "observed {observed:.5} vs predicted {predicted:.5} ({:.1}% off)",
            relative * 100.0
        ));
    }
    Ok(format!(
        "observed {observed:.5} vs predicted {predicted:.5} ({:.1}% off)",
        relative * 100.0
    ))
}

fn criterion_projection_monotonicity(samples: usize) -> std::result::Result<String, String> {
    let n = 1000usize;
    let mut rng = RandomSource::new(0x9e0_3e7).rng();
    let edge_degrees = poisson_degrees(&mut rng, n, 3.0, 2);
    let tri_degrees = poisson_degrees(&mut rng, n, 1.0, 3);
    let spec = MicroDegreeSpec::from_orbit_degrees(
        vec![motif("edge"), motif("triangle")],
        n,
        vec![vec![edge_degrees], vec![tri_degrees]],
    )
    .map_err(|e| e.to_string())?;
    let triangle = motif("triangle");
    let configured = spec.counts()[1];
    let mut min_margin = i64::MAX;
    let mut sample_rng = RandomSource::new(0x0940_73c7).rng();
    for trial in 0..samples {
        let sample =
            sample_and_project_micro(&spec, &mut sample_rng, 10_000_000, ProjectionMode::Simple)
                .map_err(|e| e.to_string())?;
        let projected =
            count_motif_in_graph(&sample.graph, &triangle).map_err(|e| e.to_string())?;
        if projected < configured {
            return Err(format!(
                "sample {trial}: projected {projected} triangles < configured {configured}"
            ));
        }
        min_margin = min_margin.min(projected as i64 - configured as i64);
    }
    Ok(format!(
        "{samples} samples, configured {configured}, smallest excess {min_margin}"
    ))
}

fn criterion_exact_solver() -> std::result::Result<String, String> {
    let spec =
        CanonicalDegreeSpec::from_orbit_degrees(vec![motif("edge")], 4, vec![vec![vec![2.0; 4]]])
            .map_err(|e| e.to_string())?;
    let solution =
        solve_multipliers_exact(&spec, 1e-10, SOLVER_MAX_ITERATIONS).map_err(|e| e.to_string())?;
    for (placement, p) in &solution.probabilities {
        if (p - 2.0 / 3.0).abs() > 1e-6 {
            return Err(format!(
                "placement {:?}: p = {p:.9} != 2/3",
                placement.vertices()
            ));
        }
    }
    let expected_entropy = 6.0 * binary_entropy(2.0 / 3.0);
    if (solution.entropy - expected_entropy).abs() > 1e-6 {
        return Err(format!(
            "solver entropy {:.9} vs 6 h(2/3) = {expected_entropy:.9}",
            solution.entropy
        ));
    }
    let oracle = exact_canonical_solution(&spec).map_err(|e| e.to_string())?;
    if (solution.entropy - oracle.entropy).abs() > 1e-6 {
        return Err(format!(
            "solver entropy {:.9} vs oracle {:.9}",
            solution.entropy, oracle.entropy
        ));
    }
    Ok(format!(
        "p = 2/3 uniformly, S = {:.9} (oracle {:.9})",
        solution.entropy, oracle.entropy
    ))
}

/// The twelve release criteria with their stated tolerances.
pub fn acceptance_criteria() -> Vec<CheckResult> {
    vec![
        check("01-placement-count-identity", || {
            criterion_placement_counts(5, 8)
        }),
        check("02-symmetry-table", criterion_symmetry_table),
        check("03-matching-count-identity", || {
            criterion_matching_identity(8, 9)
        }),
        check("04-fixed-count-identity", || {
            criterion_fixed_count_identity(5)
        }),
        check("05-single-edge-reduction", || {
            criterion_classical_reduction(100, 200)
        }),
        check("06-unified-expression-reductions", || {
            criterion_unified_reductions(50)
        }),
        check(
            "07-analytic-combinatorial-consistency",
            criterion_analytic_consistency,
        ),
        check("08-canonical-sampler-moments", || {
            criterion_canonical_sampler_moments(10_000)
        }),
        check("09-microcanonical-uniformity", || {
            criterion_microcanonical_uniformity(100_000)
        }),
        check("10-acceptance-rate-prediction", || {
            criterion_acceptance_rate(10_000)
        }),
        check("11-projection-monotonicity", || {
            criterion_projection_monotonicity(100)
        }),
        check("12-exact-canonical-solver", criterion_exact_solver),
    ]
}

/// Fast subset of the battery for `atomlab validate --suite small`.
pub fn small_suite() -> Vec<CheckResult> {
    vec![
        check("placement-count-identity", || {
            criterion_placement_counts(4, 7)
        }),
        check("symmetry-table", criterion_symmetry_table),
        check("matching-count-identity", || {
            criterion_matching_identity(6, 6)
        }),
        check("fixed-count-identity", || criterion_fixed_count_identity(4)),
        check("single-edge-reduction", || {
            criterion_classical_reduction(5, 100)
        }),
        check("unified-expression-reductions", || {
            criterion_unified_reductions(5)
        }),
        check("microcanonical-uniformity", || {
            let spec = edge_spec(vec![1, 1, 1, 1]).map_err(|e| e.to_string())?;
            uniformity_case("edge 1-regular", &spec, 20_000, 29)
        }),
        check("exact-canonical-solver", criterion_exact_solver),
        check("sampler-degree-exactness", || {
            let degrees = vec![2u64, 2, 1, 1, 2, 2, 1, 1];
            let spec = edge_spec(degrees.clone()).map_err(|e| e.to_string())?;
            for seed in 0..20 {
                let sample =
                    sample_microcanonical(&spec, &mut RandomSource::new(seed).rng(), 100_000)
                        .map_err(|e| e.to_string())?;
                let table = orbit_degrees(spec.motifs(), &sample.configuration);
                if table.degrees[0][0] != degrees {
                    return Err(format!("seed {seed}: sampled degrees differ"));
                }
                let counts = atom_counts(spec.motifs(), &sample.configuration);
                if counts[0] != spec.counts()[0] {
                    return Err(format!("seed {seed}: sampled count differs"));
                }
            }
            Ok("20 seeds, exact degrees".into())
        }),
    ]
}

/// The full validation battery: the acceptance criteria.
pub fn full_suite() -> Vec<CheckResult> {
    acceptance_criteria()
}

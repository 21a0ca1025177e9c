//! Generative samplers: independent placements for canonical ensembles and
//! uniform stub matching with full-restart rejection for microcanonical
//! ensembles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::atoms::{count_placements, Motif};
use crate::canonical::{
    placement_probability_homogeneous, solve_multipliers_exact, sparse_feasibility,
    sparse_probability_from, CanonicalCountSpec, CanonicalDegreeSpec, SOLVER_MAX_ITERATIONS,
};
use crate::configuration::{
    enumerate_placements, project, Configuration, Graph, Placement, ProjectionMode,
};
use crate::error::{Error, Result};
use crate::microcanonical::{
    log_multi_subgraph_correction, log_self_match_correction, MicroDegreeSpec,
};
use crate::numeric::splitmix64;

/// A reproducible random stream: a 64-bit seed feeding a counter-based
/// generator whose algorithm identifier is recorded in outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSource {
    seed: u64,
}

impl RandomSource {
    /// Identifier of the underlying generator, recorded for reproducibility.
    pub const ALGORITHM: &'static str = "chacha12";

    /// A stream from the given seed.
    pub fn new(seed: u64) -> Self {
        RandomSource { seed }
    }

    /// The seed.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Instantiates the generator.
    pub fn rng(&self) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(self.seed)
    }

    /// Derives an independent stream for a sample index, so that parallel
    /// workers produce identical output regardless of scheduling.
    pub fn derive(&self, index: u64) -> RandomSource {
        RandomSource {
            seed: splitmix64(self.seed ^ splitmix64(index.wrapping_add(1))),
        }
    }
}

/// Above this placement-space size the homogeneous sampler switches from a
/// Bernoulli sweep to the two-stage shortcut (binomial count, then uniform
/// distinct placements).
const SWEEP_LIMIT: u64 = 200_000;

/// Samples the homogeneous canonical ensemble: every placement of motif `m`
/// is included independently with probability `c_m / |H|`.
pub fn sample_canonical_counts(
    spec: &CanonicalCountSpec,
    n_vertices: usize,
    rng: &mut ChaCha12Rng,
) -> Result<Configuration> {
    let mut config = Configuration::new(n_vertices);
    for (m, motif) in spec.motifs().iter().enumerate() {
        let p = placement_probability_homogeneous(spec, n_vertices, m)?;
        if p == 0.0 {
            continue;
        }
        let space = count_placements(n_vertices, motif.symmetry());
        let space_small: Option<u64> = u64::try_from(&space).ok().filter(|&h| h <= SWEEP_LIMIT);
        match space_small {
            Some(_) => {
                for placement in enumerate_placements(n_vertices, m, motif) {
                    if rng.gen::<f64>() < p {
                        config.insert(placement)?;
                    }
                }
            }
            None => {
                // two-stage shortcut: binomial count, then distinct uniform
                // placements (each canonical placement has |Aut| tuple
                // preimages, so uniform tuples give uniform placements)
                let h: f64 = space.to_string().parse().unwrap_or(f64::MAX);
                let count = sample_binomial(rng, h, p);
                let mut placed = 0u64;
                while placed < count {
                    let mut tuple = Vec::with_capacity(motif.order());
                    while tuple.len() < motif.order() {
                        let v = rng.gen_range(0..n_vertices as u32);
                        if !tuple.contains(&v) {
                            tuple.push(v);
                        }
                    }
                    let placement = Placement::new(m, motif, &tuple)?;
                    if config.insert(placement)? {
                        placed += 1;
                    }
                }
            }
        }
    }
    Ok(config)
}

/// Exact binomial sampling by inverse transform, walking outward from the
/// mode with the probability-mass recurrences.
fn sample_binomial(rng: &mut ChaCha12Rng, n: f64, p: f64) -> u64 {
    if p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n as u64;
    }
    let mode = (n * p).floor();
    let ln_pmf_mode =
        libm::lgamma(n + 1.0) - libm::lgamma(mode + 1.0) - libm::lgamma(n - mode + 1.0)
            + mode * p.ln()
            + (n - mode) * (1.0 - p).ln();
    let target: f64 = rng.gen();
    let mut cumulative = ln_pmf_mode.exp();
    let (mut lo, mut hi) = (mode, mode);
    let (mut pmf_lo, mut pmf_hi) = (cumulative, cumulative);
    if cumulative >= target {
        return mode as u64;
    }
    let odds = p / (1.0 - p);
    loop {
        // zigzag expansion around the mode defines the outcome order
        if hi < n {
            pmf_hi *= (n - hi) / (hi + 1.0) * odds;
            hi += 1.0;
            cumulative += pmf_hi;
            if cumulative >= target {
                return hi as u64;
            }
        }
        if lo > 0.0 {
            pmf_lo *= lo / (n - lo + 1.0) / odds;
            lo -= 1.0;
            cumulative += pmf_lo;
            if cumulative >= target {
                return lo as u64;
            }
        }
        if lo <= 0.0 && hi >= n {
            return mode as u64; // rounding tail: return the mode
        }
    }
}

/// Placement-probability source for degree-corrected canonical sampling.
#[derive(Debug, Clone, Copy)]
pub enum CanonicalProbabilities {
    /// Sparse closed form (valid under the sparse condition).
    Sparse,
    /// Exact probabilities from the multiplier solver at this tolerance.
    Exact {
        /// Solver tolerance on `max |E(d) - k|`.
        tolerance: f64,
    },
}

/// Samples the degree-corrected canonical ensemble by enumerating all
/// placements and including each independently with its model probability.
pub fn sample_canonical_degrees(
    spec: &CanonicalDegreeSpec,
    probabilities: CanonicalProbabilities,
    rng: &mut ChaCha12Rng,
) -> Result<Configuration> {
    let pairs = canonical_placement_probabilities(spec, probabilities)?;
    let mut config = Configuration::new(spec.n_vertices());
    for (placement, p) in pairs {
        if rng.gen::<f64>() < p {
            config.insert(placement)?;
        }
    }
    Ok(config)
}

/// The per-placement probabilities a degree-corrected sampling run uses.
pub fn canonical_placement_probabilities(
    spec: &CanonicalDegreeSpec,
    probabilities: CanonicalProbabilities,
) -> Result<Vec<(Placement, f64)>> {
    match probabilities {
        CanonicalProbabilities::Exact { tolerance } => {
            let solution = solve_multipliers_exact(spec, tolerance, SOLVER_MAX_ITERATIONS)?;
            Ok(solution.probabilities)
        }
        CanonicalProbabilities::Sparse => {
            let feasibility = sparse_feasibility(spec)?;
            if !feasibility.ok() {
                return Err(Error::Infeasible(format!(
                    "sparse condition max_k <= sqrt(<k> N) violated (ratio {:.3})",
                    feasibility.worst_ratio
                )));
            }
            let degrees = spec.effective_degrees()?;
            let mut out = Vec::new();
            for (m, motif) in spec.motifs().iter().enumerate() {
                let total = spec.expected_totals()[m];
                for placement in enumerate_placements(spec.n_vertices(), m, motif) {
                    let p =
                        sparse_probability_from(motif, total, &degrees[m], placement.vertices())
                            .min(1.0);
                    out.push((placement, p));
                }
            }
            Ok(out)
        }
    }
}

/// Samples the fixed-count microcanonical ensemble: a uniform set of
/// exactly `counts[m]` distinct placements per motif.
pub fn sample_micro_counts(
    motifs: &[Motif],
    counts: &[u64],
    n_vertices: usize,
    rng: &mut ChaCha12Rng,
) -> Result<Configuration> {
    let mut config = Configuration::new(n_vertices);
    for (m, motif) in motifs.iter().enumerate() {
        let n = counts[m];
        if n == 0 {
            continue;
        }
        let space = count_placements(n_vertices, motif.symmetry());
        if num_bigint::BigUint::from(n) > space {
            return Err(Error::Infeasible(format!(
                "motif {m}: {n} copies requested but only {space} placements exist"
            )));
        }
        let space_small: Option<u64> = u64::try_from(&space).ok().filter(|&h| h <= SWEEP_LIMIT);
        match space_small {
            Some(h) => {
                // partial Fisher-Yates over the enumerated placement list
                let mut pool = enumerate_placements(n_vertices, m, motif);
                for i in 0..n as usize {
                    let j = rng.gen_range(i..h as usize);
                    pool.swap(i, j);
                    config.insert(pool[i].clone())?;
                }
            }
            None => {
                // uniform distinct placements by rejection
                let mut placed = 0u64;
                while placed < n {
                    let mut tuple = Vec::with_capacity(motif.order());
                    while tuple.len() < motif.order() {
                        let v = rng.gen_range(0..n_vertices as u32);
                        if !tuple.contains(&v) {
                            tuple.push(v);
                        }
                    }
                    if config.insert(Placement::new(m, motif, &tuple)?)? {
                        placed += 1;
                    }
                }
            }
        }
    }
    Ok(config)
}

/// Result of one accepted stub-matching run.
#[derive(Debug, Clone)]
pub struct MicroSample {
    /// The sampled configuration.
    pub configuration: Configuration,
    /// Full restarts consumed before acceptance.
    pub restarts: u64,
}

/// Default restart budget of the stub-matching sampler.
pub const DEFAULT_MAX_RESTARTS: u64 = 1_000_000;

/// Samples uniformly from the configurations realising the spec's degrees:
/// orbit stubs are matched uniformly at random, atoms are assembled by a
/// uniform choice among the compatible distinct placements, and the whole
/// process restarts whenever a completed matching contains a self-match
/// (two stubs of one atom on the same vertex) or a duplicate placement.
pub fn sample_microcanonical(
    spec: &MicroDegreeSpec,
    rng: &mut ChaCha12Rng,
    max_restarts: u64,
) -> Result<MicroSample> {
    // per-group stub pools: vertex ids with degree multiplicity
    let base_pools: Vec<Vec<u32>> = spec
        .groups()
        .iter()
        .map(|g| {
            let mut pool = Vec::with_capacity(g.degrees.iter().sum::<u64>() as usize);
            for (v, &d) in g.degrees.iter().enumerate() {
                for _ in 0..d {
                    pool.push(v as u32);
                }
            }
            pool
        })
        .collect();

    // per-motif slot plan: orbit-major slot list with its group, plus the
    // assembly variants mapping atom vertices to slots
    struct MotifPlan {
        slot_group: Vec<usize>,
        orbit_slot_counts: Vec<usize>,
        variants: Vec<Vec<usize>>,
    }
    let plans: Vec<MotifPlan> = spec
        .motifs()
        .iter()
        .enumerate()
        .map(|(m, motif)| {
            let sym = motif.symmetry();
            let mut slot_group = Vec::with_capacity(motif.order());
            let mut orbit_slot_counts = Vec::with_capacity(sym.orbit_count());
            for i in 0..sym.orbit_count() {
                let g = spec.group_index(crate::atoms::OrbitRef { motif: m, orbit: i });
                for _ in 0..sym.orbit_size(i) {
                    slot_group.push(g);
                }
                orbit_slot_counts.push(sym.orbit_size(i));
            }
            MotifPlan {
                slot_group,
                orbit_slot_counts,
                variants: sym.assembly_variants(),
            }
        })
        .collect();

    let mut restarts = 0u64;
    loop {
        let mut pools = base_pools.clone();
        let mut config = Configuration::new(spec.n_vertices());
        let mut violated = false;

        for (m, motif) in spec.motifs().iter().enumerate() {
            let plan = &plans[m];
            for _ in 0..spec.counts()[m] {
                // draw stubs orbit by orbit, uniformly without replacement
                let mut slot_vertices: Vec<u32> = Vec::with_capacity(motif.order());
                let mut slot = 0usize;
                for &count in &plan.orbit_slot_counts {
                    let g = plan.slot_group[slot];
                    let pool = &mut pools[g];
                    let mut drawn = Vec::with_capacity(count);
                    for _ in 0..count {
                        let idx = rng.gen_range(0..pool.len());
                        drawn.push(pool.swap_remove(idx));
                    }
                    drawn.sort_unstable();
                    slot_vertices.extend(drawn);
                    slot += count;
                }
                // self-match: two stubs of this atom on one vertex
                let mut sorted = slot_vertices.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    violated = true;
                    continue; // complete the matching before restarting
                }
                // assemble: uniform choice among the compatible placements
                let variant = &plan.variants[rng.gen_range(0..plan.variants.len())];
                let tuple: Vec<u32> = variant
                    .iter()
                    .map(|&slot_idx| slot_vertices[slot_idx])
                    .collect();
                let placement = Placement::new(m, motif, &tuple)?;
                if !config.insert(placement)? {
                    violated = true; // duplicate placement
                }
            }
        }

        if !violated {
            return Ok(MicroSample {
                configuration: config,
                restarts,
            });
        }
        restarts += 1;
        if restarts >= max_restarts {
            return Err(Error::SamplerExhausted {
                restarts,
                acceptance: 1.0 / (max_restarts as f64 + 1.0),
            });
        }
    }
}

/// Predicted acceptance probability of the stub-matching process:
/// `exp(ln P_c + ln P_ml)`, clamped into `(0, 1]`.
pub fn predicted_acceptance(spec: &MicroDegreeSpec) -> Result<f64> {
    let log_p = log_self_match_correction(spec)? + log_multi_subgraph_correction(spec).value;
    Ok(log_p.exp().clamp(f64::MIN_POSITIVE, 1.0))
}

/// A sampled configuration together with its projection.
#[derive(Debug, Clone)]
pub struct ProjectedSample {
    /// The projected simple graph.
    pub graph: Graph,
    /// The generating configuration.
    pub configuration: Configuration,
    /// Restarts consumed (zero for canonical samples).
    pub restarts: u64,
}

/// Samples a microcanonical configuration and projects it.
pub fn sample_and_project_micro(
    spec: &MicroDegreeSpec,
    rng: &mut ChaCha12Rng,
    max_restarts: u64,
    mode: ProjectionMode,
) -> Result<ProjectedSample> {
    let sample = sample_microcanonical(spec, rng, max_restarts)?;
    let projection = project(spec.motifs(), &sample.configuration, mode)?;
    Ok(ProjectedSample {
        graph: projection.graph,
        configuration: sample.configuration,
        restarts: sample.restarts,
    })
}

/// Samples a homogeneous canonical configuration and projects it.
pub fn sample_and_project_counts(
    spec: &CanonicalCountSpec,
    n_vertices: usize,
    rng: &mut ChaCha12Rng,
    mode: ProjectionMode,
) -> Result<ProjectedSample> {
    let configuration = sample_canonical_counts(spec, n_vertices, rng)?;
    let projection = project(spec.motifs(), &configuration, mode)?;
    Ok(ProjectedSample {
        graph: projection.graph,
        configuration,
        restarts: 0,
    })
}

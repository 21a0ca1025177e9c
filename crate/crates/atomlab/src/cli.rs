//! Command-line surface: inspect atoms, evaluate entropies, sample
//! configurations and run the validation battery.
//!
//! Exit codes: 0 success, 2 spec error, 3 infeasible constraints, 4 sampler
//! exhaustion, 5 validation failure.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::atoms::{count_placements, Atom, Motif};
use crate::canonical::{entropy_homogeneous, solve_multipliers_exact, SOLVER_MAX_ITERATIONS};
use crate::configuration::ProjectionMode;
use crate::error::{Error, Result};
use crate::microcanonical::{
    entropy_analytic, entropy_breakdown, entropy_per_atom_degrees, entropy_total_degree,
    log_count_fixed_counts,
};
use crate::numeric::fnv1a64;
use crate::sampler::{
    predicted_acceptance, sample_canonical_counts, sample_canonical_degrees, sample_microcanonical,
    CanonicalProbabilities, MicroSample, RandomSource,
};
use crate::specfile::{
    write_configuration_jsonl, write_graph_edge_list, AtomSpec, Ensemble, EnsembleSpecFile,
    NamedEnsemble,
};
use crate::special_models::{
    build_labelled_atoms, entropy_bipartite, entropy_bipartite_cliques, entropy_dcsbm,
    entropy_edge_configuration_model, entropy_multilayer_vertex_coupled, SbmDegrees,
};
use crate::validation::{full_suite, small_suite, CheckResult};
use crate::{microcanonical, project};

/// Maximum-entropy ensembles of subgraph configurations.
#[derive(Debug, Parser)]
#[command(name = "atomlab", version, about)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect an atom: order, automorphisms, orbits, assembly count, key.
    Atoms(AtomsArgs),
    /// Evaluate the entropy of an ensemble spec file.
    Entropy(EntropyArgs),
    /// Sample configurations (and optionally projected graphs) from a spec.
    Sample(SampleArgs),
    /// Run the oracle-equivalence validation battery.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
struct AtomsArgs {
    /// Catalogue name (edge, directed-edge, path-3, triangle, 4-cycle,
    /// 4-clique, star-K, self-loop).
    #[arg(long, conflicts_with = "file")]
    name: Option<String>,
    /// JSON atom specification file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Placement-count table horizon.
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

/// Entropy evaluation route for degree-constrained microcanonical specs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EntropyMode {
    /// Stub-matching count with both corrections.
    Combinatorial,
    /// Conjugate canonical entropy minus the Poisson masses.
    Analytic,
}

#[derive(Debug, Args)]
struct EntropyArgs {
    /// Ensemble spec file (JSON).
    #[arg(long)]
    spec: PathBuf,
    /// Evaluation route for micro-degree specs.
    #[arg(long, value_enum, default_value_t = EntropyMode::Combinatorial)]
    mode: EntropyMode,
    /// Series truncation for the expansion terms.
    #[arg(long, default_value_t = 10)]
    l_max: usize,
    /// Solve the exact multipliers instead of the sparse closed form
    /// (canonical degree specs).
    #[arg(long)]
    exact: bool,
    /// Report in bits instead of nats.
    #[arg(long)]
    bits: bool,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SampleArgs {
    /// Ensemble spec file (JSON).
    #[arg(long)]
    spec: PathBuf,
    /// Random seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of samples.
    #[arg(long, default_value_t = 1)]
    samples: u64,
    /// Also write the projected graph per sample.
    #[arg(long)]
    project: bool,
    /// Output directory; samples go to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Restart budget per microcanonical sample.
    #[arg(long, default_value_t = crate::sampler::DEFAULT_MAX_RESTARTS)]
    max_restarts: u64,
    /// Use exact multipliers for canonical degree specs.
    #[arg(long)]
    exact: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Small,
    Full,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    /// Which battery to run.
    #[arg(long, value_enum, default_value_t = Suite::Small)]
    suite: Suite,
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with success exits
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Atoms(args) => cmd_atoms(args),
        Command::Entropy(args) => cmd_entropy(args),
        Command::Sample(args) => cmd_sample(args),
        Command::Validate(args) => cmd_validate(args),
    }
}

fn cmd_atoms(args: AtomsArgs) -> Result<i32> {
    let atom = match (&args.name, &args.file) {
        (Some(name), None) => Atom::catalogue(name)
            .ok_or_else(|| Error::Spec(format!("unknown catalogue atom `{name}`")))?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            let spec: AtomSpec = serde_json::from_str(&text)?;
            spec.to_atom()?
        }
        _ => return Err(Error::Spec("pass exactly one of --name or --file".into())),
    };
    let motif = Motif::new(atom)?;
    let sym = motif.symmetry();
    let key_hex: String = sym
        .canonical_key()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    let orbit_sizes: Vec<usize> = sym.orbits().iter().map(Vec::len).collect();

    if args.json {
        #[derive(Serialize)]
        struct Report<'a> {
            name: String,
            order: usize,
            directed: bool,
            aut: u64,
            orbits: &'a [Vec<usize>],
            orbit_sizes: Vec<usize>,
            mu: u64,
            canonical_key: String,
            placements: BTreeMap<usize, String>,
        }
        let placements: BTreeMap<usize, String> = (motif.order()..=args.max_n)
            .map(|n| (n, count_placements(n, sym).to_string()))
            .collect();
        let report = Report {
            name: motif.display_name(),
            order: motif.order(),
            directed: motif.atom().directed(),
            aut: sym.aut_size(),
            orbits: sym.orbits(),
            orbit_sizes,
            mu: sym.assembly_count(),
            canonical_key: key_hex,
            placements,
        };
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("atom {}", motif.display_name());
        println!("order = {}", motif.order());
        println!("directed = {}", motif.atom().directed());
        println!("aut = {}", sym.aut_size());
        println!("orbits = {:?} (sizes {:?})", sym.orbits(), orbit_sizes);
        println!("mu = {}", sym.assembly_count());
        println!("canonical_key = {key_hex}");
        for n in motif.order()..=args.max_n {
            println!("placements(N={n}) = {}", count_placements(n, sym));
        }
    }
    Ok(0)
}

#[derive(Debug, Serialize)]
struct EntropyReport {
    entropy: f64,
    unit: &'static str,
    mode: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    components: BTreeMap<&'static str, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    series_tail: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cross_check: Option<f64>,
}

fn cmd_entropy(args: EntropyArgs) -> Result<i32> {
    let text = fs::read_to_string(&args.spec)?;
    let file = EnsembleSpecFile::from_json(&text)?;
    let ensemble = file.resolve()?;
    let mut report = EntropyReport {
        entropy: 0.0,
        unit: "nats",
        mode: String::new(),
        components: BTreeMap::new(),
        series_tail: None,
        cross_check: None,
    };

    match &ensemble {
        Ensemble::CanonicalCounts { spec, n_vertices } => {
            let s = entropy_homogeneous(spec, *n_vertices)?;
            report.mode = "canonical-counts".into();
            report.entropy = s.exact;
            report.components.insert("sparse_approximation", s.sparse);
        }
        Ensemble::CanonicalDegrees(spec) => {
            report.mode = "canonical-degrees".into();
            if args.exact {
                let solution = solve_multipliers_exact(spec, 1e-8, SOLVER_MAX_ITERATIONS)?;
                report.entropy = solution.entropy;
                report.components.insert("residual", solution.residual);
                report
                    .components
                    .insert("iterations", solution.iterations as f64);
            } else {
                let s = crate::canonical::entropy_degree_corrected(spec, args.l_max)?;
                report.entropy = s.value;
                report.series_tail = Some(s.last_term);
            }
        }
        Ensemble::MicroCounts {
            motifs,
            counts,
            n_vertices,
        } => {
            report.mode = "micro-counts".into();
            report.entropy = log_count_fixed_counts(*n_vertices, motifs, counts)?;
        }
        Ensemble::MicroDegrees(spec) => match args.mode {
            EntropyMode::Combinatorial => {
                let breakdown = entropy_breakdown(spec)?;
                report.mode = "micro-degrees/combinatorial".into();
                report.entropy = breakdown.total();
                report
                    .components
                    .insert("matching_term", breakdown.matching);
                report
                    .components
                    .insert("self_match_correction", breakdown.self_match);
                report
                    .components
                    .insert("multi_subgraph_correction", breakdown.multi_subgraph.value);
            }
            EntropyMode::Analytic => {
                let s = entropy_analytic(spec, args.l_max)?;
                report.mode = "micro-degrees/analytic".into();
                report.entropy = s.value;
                report.series_tail = Some(s.last_term);
            }
        },
        Ensemble::MicroAtomDegrees {
            motifs,
            counts,
            degrees,
        } => {
            report.mode = "micro-atom-degrees".into();
            report.entropy = entropy_per_atom_degrees(motifs, counts, degrees)?;
        }
        Ensemble::MicroTotalDegree {
            motifs,
            counts,
            values,
        } => {
            report.mode = "micro-total-degree".into();
            report.entropy = entropy_total_degree(motifs, counts, values)?;
        }
        Ensemble::Named(named) => {
            report.mode = "named-model".into();
            report.entropy = named_model_entropy(named)?;
            if let Some(model) = named.to_named_model() {
                let spec = build_labelled_atoms(&model)?;
                report
                    .cross_check
                    .replace(microcanonical::entropy_combinatorial(&spec)?);
            }
        }
    }

    if args.bits {
        report.unit = "bits";
        report.entropy /= std::f64::consts::LN_2;
        for value in report.components.values_mut() {
            *value /= std::f64::consts::LN_2;
        }
        if let Some(tail) = report.series_tail.as_mut() {
            *tail /= std::f64::consts::LN_2;
        }
        if let Some(cross) = report.cross_check.as_mut() {
            *cross /= std::f64::consts::LN_2;
        }
    }

    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!("mode = {}", report.mode);
        println!("entropy = {:.12} {}", report.entropy, report.unit);
        for (name, value) in &report.components {
            println!("{name} = {value:.12}");
        }
        if let Some(tail) = report.series_tail {
            println!("series_tail = {tail:.3e}");
        }
        if let Some(cross) = report.cross_check {
            println!("general_machinery = {cross:.12}");
        }
    }
    Ok(0)
}

fn named_model_entropy(named: &NamedEnsemble) -> Result<f64> {
    match named {
        NamedEnsemble::Bipartite(degrees) => Ok(entropy_bipartite(degrees)),
        NamedEnsemble::BipartiteCliques {
            clique_sizes,
            degrees,
            distinguishable,
        } => entropy_bipartite_cliques(clique_sizes, degrees, *distinguishable),
        NamedEnsemble::Sbm {
            assignment,
            counts,
            degrees,
        } => entropy_dcsbm(assignment, counts, &SbmDegrees::Total(degrees)),
        NamedEnsemble::DirectedSbm { .. } => {
            let model = named.to_named_model().expect("directed SBM builds atoms");
            let spec = build_labelled_atoms(&model)?;
            microcanonical::entropy_combinatorial(&spec)
        }
        NamedEnsemble::LinkCommunity { layer_degrees } => layer_degrees
            .iter()
            .map(|d| entropy_edge_configuration_model(d))
            .sum(),
        NamedEnsemble::MultilayerEdgePattern {
            pattern_degrees, ..
        } => pattern_degrees
            .iter()
            .map(|d| entropy_edge_configuration_model(d))
            .sum(),
        NamedEnsemble::MultilayerVertexCoupled {
            layer_counts,
            aggregate_degrees,
        } => entropy_multilayer_vertex_coupled(layer_counts, aggregate_degrees),
    }
}

#[derive(Debug, Serialize)]
struct SampleMetadata {
    seed: u64,
    algorithm: &'static str,
    spec_hash: String,
    samples: u64,
    restarts_total: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    predicted_acceptance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    observed_acceptance: Option<f64>,
    outputs: Vec<String>,
}

fn thread_budget() -> usize {
    std::env::var("ATOMLAB_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or(1)
}

fn cmd_sample(args: SampleArgs) -> Result<i32> {
    let text = fs::read_to_string(&args.spec)?;
    let file = EnsembleSpecFile::from_json(&text)?;
    let ensemble = file.resolve()?;
    let source = RandomSource::new(args.seed);
    let spec_hash = format!("{:016x}", fnv1a64(text.as_bytes()));

    let (motifs, samples): (Vec<Motif>, Vec<MicroSample>) = match &ensemble {
        Ensemble::CanonicalCounts { spec, n_vertices } => {
            let configs = run_samples(args.samples, &source, |rng| {
                sample_canonical_counts(spec, *n_vertices, rng)
                    .map(|configuration| MicroSample { configuration, restarts: 0 })
            })?;
            (spec.motifs().to_vec(), configs)
        }
        Ensemble::CanonicalDegrees(spec) => {
            let probabilities = if args.exact {
                CanonicalProbabilities::Exact { tolerance: 1e-8 }
            } else {
                CanonicalProbabilities::Sparse
            };
            let configs = run_samples(args.samples, &source, |rng| {
                sample_canonical_degrees(spec, probabilities, rng)
                    .map(|configuration| MicroSample { configuration, restarts: 0 })
            })?;
            (spec.motifs().to_vec(), configs)
        }
        Ensemble::MicroCounts { motifs, counts, n_vertices } => {
            let configs = run_samples(args.samples, &source, |rng| {
                crate::sampler::sample_micro_counts(motifs, counts, *n_vertices, rng)
                    .map(|configuration| MicroSample { configuration, restarts: 0 })
            })?;
            (motifs.clone(), configs)
        }
        Ensemble::MicroDegrees(spec) => {
            let configs = run_samples(args.samples, &source, |rng| {
                sample_microcanonical(spec, rng, args.max_restarts)
            })?;
            (spec.motifs().to_vec(), configs)
        }
        Ensemble::MicroAtomDegrees { .. }
        | Ensemble::MicroTotalDegree { .. }
        | Ensemble::Named(_) => {
            return Err(Error::Spec(
                "sampling is defined for canonical-counts, canonical-degrees, micro-counts and micro-degrees specs".into(),
            ))
        }
    };

    let restarts_total: u64 = samples.iter().map(|s| s.restarts).sum();
    let accepted = samples.len() as u64;
    let predicted = match &ensemble {
        Ensemble::MicroDegrees(spec) => Some(predicted_acceptance(spec)?),
        _ => None,
    };
    let observed = predicted
        .is_some()
        .then(|| accepted as f64 / (accepted + restarts_total) as f64);

    let mut outputs = Vec::new();
    match &args.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for (i, sample) in samples.iter().enumerate() {
                let config_path = dir.join(format!("sample_{i:05}.jsonl"));
                let mut file = fs::File::create(&config_path)?;
                write_configuration_jsonl(&mut file, &motifs, &sample.configuration)?;
                outputs.push(config_path.display().to_string());
                if args.project {
                    let projection = project(
                        &motifs,
                        &sample.configuration,
                        ProjectionMode::LabelPreserving,
                    )?;
                    let graph_path = dir.join(format!("sample_{i:05}.edges"));
                    let mut file = fs::File::create(&graph_path)?;
                    write_graph_edge_list(&mut file, &projection.graph)?;
                    outputs.push(graph_path.display().to_string());
                }
            }
        }
        None => {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            for (i, sample) in samples.iter().enumerate() {
                writeln!(out, "# sample {i}")?;
                write_configuration_jsonl(&mut out, &motifs, &sample.configuration)?;
                if args.project {
                    let projection = project(
                        &motifs,
                        &sample.configuration,
                        ProjectionMode::LabelPreserving,
                    )?;
                    write_graph_edge_list(&mut out, &projection.graph)?;
                }
            }
        }
    }

    let metadata = SampleMetadata {
        seed: args.seed,
        algorithm: RandomSource::ALGORITHM,
        spec_hash,
        samples: accepted,
        restarts_total,
        predicted_acceptance: predicted,
        observed_acceptance: observed,
        outputs,
    };
    let rendered = serde_json::to_string_pretty(&metadata)?;
    match &args.out {
        Some(dir) => fs::write(dir.join("metadata.json"), rendered + "\n")?,
        None => println!("{rendered}"),
    }
    Ok(0)
}

/// Runs `samples` draws with per-index derived seeds, optionally fanning out
/// over `ATOMLAB_THREADS` workers; output order is index order either way.
fn run_samples<F>(samples: u64, source: &RandomSource, sample_one: F) -> Result<Vec<MicroSample>>
where
    F: Fn(&mut rand_chacha::ChaCha12Rng) -> Result<MicroSample> + Sync,
{
    let threads = thread_budget().min(samples.max(1) as usize);
    if threads <= 1 {
        let mut out = Vec::with_capacity(samples as usize);
        for i in 0..samples {
            let mut rng = source.derive(i).rng();
            out.push(sample_one(&mut rng)?);
        }
        return Ok(out);
    }
    let mut slots: Vec<Option<Result<MicroSample>>> = Vec::new();
    slots.resize_with(samples as usize, || None);
    let next = std::sync::atomic::AtomicU64::new(0);
    let slots_ref = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if i >= samples {
                    break;
                }
                let mut rng = source.derive(i).rng();
                let result = sample_one(&mut rng);
                let mut guard = slots_ref.lock().expect("worker panicked");
                guard[i as usize] = Some(result);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.expect("all indices filled"))
        .collect()
}

fn cmd_validate(args: ValidateArgs) -> Result<i32> {
    let results: Vec<CheckResult> = match args.suite {
        Suite::Small => small_suite(),
        Suite::Full => full_suite(),
    };
    let mut failures = 0;
    for result in &results {
        if result.passed {
            println!("ok   {} - {}", result.name, result.detail);
        } else {
            failures += 1;
            println!("FAIL {} - {}", result.name, result.detail);
        }
    }
    if failures > 0 {
        println!("{failures} of {} checks failed", results.len());
        Ok(5)
    } else {
        println!("all {} checks passed", results.len());
        Ok(0)
    }
}

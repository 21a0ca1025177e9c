//! The brute-force oracles: exhaustive configuration enumeration, exact
//! matching counts and the independently solved canonical system.
//!
//! ```bash
//! cargo run --example oracle_checks
//! ```

use atomlab::oracle::{
    enumerate_configurations, exact_canonical_solution, exact_matching_count,
    exact_sampler_distribution, log_matching_count_orbit_convention, ConfigurationConstraint,
};
use atomlab::{
    log_count_fixed_counts, log_stub_matchings, solve_multipliers_exact, CanonicalDegreeSpec,
    MicroDegreeSpec, Motif, Result,
};

fn main() -> Result<()> {
    let edge = Motif::from_catalogue("edge")?;
    let triangle = Motif::from_catalogue("triangle")?;

    // every subset of the 3 edges of K3
    let all = enumerate_configurations(
        3,
        std::slice::from_ref(&edge),
        &ConfigurationConstraint::None,
    )?;
    println!("K3 edge subsets: {}", all.len());

    // fixed counts agree with the log-binomial formula
    let fixed = enumerate_configurations(
        4,
        std::slice::from_ref(&triangle),
        &ConfigurationConstraint::ExactCounts(&[2]),
    )?;
    let formula = log_count_fixed_counts(4, std::slice::from_ref(&triangle), &[2])?;
    println!(
        "2 triangles on K4: enumerated {} vs exp(formula) {:.1}",
        fixed.len(),
        formula.exp()
    );

    // matching counts, including a degenerate self-match
    let spec =
        MicroDegreeSpec::from_orbit_degrees(vec![edge.clone()], 4, vec![vec![vec![1, 1, 1, 1]]])?;
    println!(
        "matchings of four degree-1 stubs: {}",
        exact_matching_count(&spec)?
    );
    let loopy = MicroDegreeSpec::from_orbit_degrees(vec![edge.clone()], 1, vec![vec![vec![2]]])?;
    println!(
        "matchings of two stubs on one vertex: {}",
        exact_matching_count(&loopy)?
    );

    // the oracle count reproduces the stub-matching formula exactly
    let spec =
        MicroDegreeSpec::from_orbit_degrees(vec![edge.clone()], 4, vec![vec![vec![3, 1, 2, 2]]])?;
    println!(
        "ln matchings: oracle {:.9} vs formula {:.9}",
        log_matching_count_orbit_convention(&spec)?,
        log_stub_matchings(&spec)
    );

    // the sampler's reference distribution is uniform over the support
    let spec =
        MicroDegreeSpec::from_orbit_degrees(vec![edge.clone()], 4, vec![vec![vec![1, 1, 1, 1]]])?;
    let support = exact_sampler_distribution(&spec)?;
    println!(
        "uniform support: {} configurations at p = {:.4}",
        support.len(),
        support[0].1
    );

    // two independent routes to the exact canonical solution
    let canonical = CanonicalDegreeSpec::from_orbit_degrees(
        vec![edge],
        4,
        vec![vec![vec![2.0, 1.5, 1.0, 1.5]]],
    )?;
    let fixed_point = solve_multipliers_exact(&canonical, 1e-10, 10_000)?;
    let bisection = exact_canonical_solution(&canonical)?;
    println!(
        "exact canonical entropy: fixed point {:.9} vs coordinate bisection {:.9}",
        fixed_point.entropy, bisection.entropy
    );
    Ok(())
}

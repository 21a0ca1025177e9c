//! Homogeneous canonical ensembles: expected motif counts, placement
//! probabilities, entropy, and sampling.
//!
//! ```bash
//! cargo run --example homogeneous_ensemble
//! ```

use atomlab::{
    atom_counts, entropy_homogeneous, placement_probability_homogeneous, sample_canonical_counts,
    CanonicalCountSpec, Motif, RandomSource, Result,
};

fn main() -> Result<()> {
    let n = 40;
    let motifs = vec![
        Motif::from_catalogue("edge")?,
        Motif::from_catalogue("triangle")?,
    ];
    let spec = CanonicalCountSpec::new(motifs, vec![60.0, 12.0])?;

    for m in 0..2 {
        let p = placement_probability_homogeneous(&spec, n, m)?;
        println!("motif {m}: each placement occurs with p = {p:.6}");
    }
    let entropy = entropy_homogeneous(&spec, n)?;
    println!(
        "entropy = {:.4} nats (sparse approximation {:.4})",
        entropy.exact, entropy.sparse
    );

    // with only single edges this is exactly G(N, p)
    let h = (n * (n - 1) / 2) as f64;
    let gnp = CanonicalCountSpec::new(vec![Motif::from_catalogue("edge")?], vec![0.1 * h])?;
    println!(
        "G(N, 0.1) recovered: p = {:.3}",
        placement_probability_homogeneous(&gnp, n, 0)?
    );

    // sampled counts concentrate on the expected values
    let samples = 2000;
    let mut rng = RandomSource::new(7).rng();
    let mut totals = [0u64; 2];
    for _ in 0..samples {
        let config = sample_canonical_counts(&spec, n, &mut rng)?;
        let counts = atom_counts(spec.motifs(), &config);
        totals[0] += counts[0];
        totals[1] += counts[1];
    }
    println!(
        "mean sampled counts over {samples} draws: edges {:.2}, triangles {:.2}",
        totals[0] as f64 / samples as f64,
        totals[1] as f64 / samples as f64
    );
    Ok(())
}

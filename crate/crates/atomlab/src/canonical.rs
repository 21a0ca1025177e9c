//! Canonical (soft-constraint) ensembles: placements occur independently and
//! constraints hold in expectation.
//!
//! Two constraint families are supported. Homogeneous specs fix the expected
//! placement count per motif; degree-corrected specs fix the expected orbit
//! degree of every vertex, optionally pooled across aggregation groups. The
//! sparse closed form gives per-placement probabilities and an entropy
//! series; the exact solver recovers the multipliers by damped fixed-point
//! iteration whenever the placement set is enumerable.

use crate::atoms::{count_placements_log, Motif, OrbitRef};
use crate::configuration::{enumerate_placements, Placement};
use crate::error::{Error, Result};
use crate::numeric::binary_entropy;

/// Expected-count constraints: `E(n_m) = c_m` per motif.
#[derive(Debug, Clone)]
pub struct CanonicalCountSpec {
    motifs: Vec<Motif>,
    expected_counts: Vec<f64>,
}

impl CanonicalCountSpec {
    /// Validates non-negative expected counts, one per motif.
    pub fn new(motifs: Vec<Motif>, expected_counts: Vec<f64>) -> Result<Self> {
        if motifs.len() != expected_counts.len() {
            return Err(Error::Spec(format!(
                "{} motifs but {} expected counts",
                motifs.len(),
                expected_counts.len()
            )));
        }
        if let Some(c) = expected_counts.iter().find(|c| !c.is_finite() || **c < 0.0) {
            return Err(Error::Spec(format!(
                "expected count {c} is not a non-negative real"
            )));
        }
        Ok(CanonicalCountSpec {
            motifs,
            expected_counts,
        })
    }

    /// The motif list.
    pub fn motifs(&self) -> &[Motif] {
        &self.motifs
    }

    /// Expected counts per motif.
    pub fn expected_counts(&self) -> &[f64] {
        &self.expected_counts
    }
}

/// Per-placement probability in the homogeneous ensemble:
/// `p_m = c_m / |H_{N,m}|`.
pub fn placement_probability_homogeneous(
    spec: &CanonicalCountSpec,
    n_vertices: usize,
    motif_idx: usize,
) -> Result<f64> {
    let c = spec.expected_counts[motif_idx];
    let log_h = count_placements_log(n_vertices, spec.motifs[motif_idx].symmetry());
    if c == 0.0 {
        return Ok(0.0);
    }
    if c.ln() > log_h + 1e-12 {
        return Err(Error::Infeasible(format!(
            "expected count {c} exceeds the {:.6e} available placements",
            log_h.exp()
        )));
    }
    Ok((c.ln() - log_h).exp().min(1.0))
}

/// Entropy of the homogeneous ensemble: the exact binary-entropy sum and the
/// sparse approximation, both in nats.
#[derive(Debug, Clone, Copy)]
pub struct HomogeneousEntropy {
    /// `sum_m |H| h(c_m / |H|)`.
    pub exact: f64,
    /// `sum_m (c_m - c_m ln(c_m / |H|))`.
    pub sparse: f64,
}

/// Evaluates both entropy forms of the homogeneous ensemble.
pub fn entropy_homogeneous(
    spec: &CanonicalCountSpec,
    n_vertices: usize,
) -> Result<HomogeneousEntropy> {
    let mut exact = 0.0;
    let mut sparse = 0.0;
    for m in 0..spec.motifs.len() {
        let c = spec.expected_counts[m];
        let p = placement_probability_homogeneous(spec, n_vertices, m)?;
        if c == 0.0 {
            continue;
        }
        let log_h = count_placements_log(n_vertices, spec.motifs[m].symmetry());
        // |H| h(p) overflows double precision only when the binary entropy
        // sum and its sparse form already agree to machine precision
        if log_h < 700.0 {
            exact += log_h.exp() * binary_entropy(p);
        } else {
            exact += c - c * (c.ln() - log_h);
        }
        sparse += c - c * (c.ln() - log_h);
    }
    Ok(HomogeneousEntropy { exact, sparse })
}

/// One pooled degree constraint: the orbits in `members` share the single
/// expected degree sequence `degrees`.
#[derive(Debug, Clone)]
pub struct CanonicalGroup {
    /// Orbits pooled into this constraint.
    pub members: Vec<OrbitRef>,
    /// Shared expected degree sequence, one entry per vertex.
    pub degrees: Vec<f64>,
}

/// Expected-degree constraints `E(d_{m,i}(v)) = k_{m,i}(v)`, with optional
/// orbit aggregation.
#[derive(Debug, Clone)]
pub struct CanonicalDegreeSpec {
    motifs: Vec<Motif>,
    n_vertices: usize,
    expected_totals: Vec<f64>,
    groups: Vec<CanonicalGroup>,
    group_of: Vec<Vec<usize>>,
}

impl CanonicalDegreeSpec {
    /// Builds an unaggregated spec from per-orbit expected degree sequences
    /// (`degrees[m][i][v]`). Expected totals are derived from the sums and
    /// must agree across the orbits of each motif.
    pub fn from_orbit_degrees(
        motifs: Vec<Motif>,
        n_vertices: usize,
        degrees: Vec<Vec<Vec<f64>>>,
    ) -> Result<Self> {
        if degrees.len() != motifs.len() {
            return Err(Error::Spec("one degree table per motif required".into()));
        }
        let mut totals = Vec::with_capacity(motifs.len());
        let mut groups = Vec::new();
        for (m, motif) in motifs.iter().enumerate() {
            if degrees[m].len() != motif.symmetry().orbit_count() {
                return Err(Error::Spec(format!(
                    "motif {m}: expected {} orbit sequences, got {}",
                    motif.symmetry().orbit_count(),
                    degrees[m].len()
                )));
            }
            let mut implied: Option<f64> = None;
            for (i, seq) in degrees[m].iter().enumerate() {
                validate_sequence(seq, n_vertices)?;
                let total: f64 = seq.iter().sum::<f64>() / motif.symmetry().orbit_size(i) as f64;
                match implied {
                    None => implied = Some(total),
                    Some(prev) => {
                        if (prev - total).abs() > 1e-9 * (1.0 + prev.abs()) {
                            return Err(Error::Spec(format!(
                                "motif {m}: orbit {i} implies expected total {total} but an earlier orbit implies {prev}"
                            )));
                        }
                    }
                }
                groups.push(CanonicalGroup {
                    members: vec![OrbitRef { motif: m, orbit: i }],
                    degrees: seq.clone(),
                });
            }
            totals.push(implied.unwrap_or(0.0));
        }
        Self::assemble(motifs, n_vertices, totals, groups)
    }

    /// Builds a spec with explicit aggregation groups and expected totals.
    /// Groups must partition the orbits of the motif list.
    pub fn with_groups(
        motifs: Vec<Motif>,
        n_vertices: usize,
        expected_totals: Vec<f64>,
        groups: Vec<CanonicalGroup>,
    ) -> Result<Self> {
        if expected_totals.len() != motifs.len() {
            return Err(Error::Spec("one expected total per motif required".into()));
        }
        for seq in groups.iter().map(|g| &g.degrees) {
            validate_sequence(seq, n_vertices)?;
        }
        Self::assemble(motifs, n_vertices, expected_totals, groups)
    }

    fn assemble(
        motifs: Vec<Motif>,
        n_vertices: usize,
        expected_totals: Vec<f64>,
        groups: Vec<CanonicalGroup>,
    ) -> Result<Self> {
        let mut group_of: Vec<Vec<usize>> = motifs
            .iter()
            .map(|m| vec![usize::MAX; m.symmetry().orbit_count()])
            .collect();
        for (g, group) in groups.iter().enumerate() {
            for member in &group.members {
                let slot = group_of
                    .get_mut(member.motif)
                    .and_then(|v| v.get_mut(member.orbit))
                    .ok_or_else(|| {
                        Error::Spec(format!(
                            "group member ({}, {}) does not exist",
                            member.motif, member.orbit
                        ))
                    })?;
                if *slot != usize::MAX {
                    return Err(Error::Spec(format!(
                        "orbit ({}, {}) appears in two aggregation groups",
                        member.motif, member.orbit
                    )));
                }
                *slot = g;
            }
        }
        if group_of.iter().flatten().any(|&g| g == usize::MAX) {
            return Err(Error::Spec(
                "aggregation groups must cover every orbit".into(),
            ));
        }
        // every group's degree sum must match the pooled expected stub count
        for (g, group) in groups.iter().enumerate() {
            let pooled: f64 = group
                .members
                .iter()
                .map(|r| {
                    motifs[r.motif].symmetry().orbit_size(r.orbit) as f64 * expected_totals[r.motif]
                })
                .sum();
            let sum: f64 = group.degrees.iter().sum();
            if (pooled - sum).abs() > 1e-6 * (1.0 + pooled.abs()) {
                return Err(Error::Spec(format!(
                    "group {g}: degree sum {sum} does not match pooled expected stubs {pooled}"
                )));
            }
        }
        Ok(CanonicalDegreeSpec {
            motifs,
            n_vertices,
            expected_totals,
            groups,
            group_of,
        })
    }

    /// The motif list.
    pub fn motifs(&self) -> &[Motif] {
        &self.motifs
    }

    /// Ambient vertex count.
    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Expected totals per motif.
    pub fn expected_totals(&self) -> &[f64] {
        &self.expected_totals
    }

    /// The aggregation groups (singletons for unaggregated specs).
    pub fn groups(&self) -> &[CanonicalGroup] {
        &self.groups
    }

    /// Group index of an orbit.
    pub fn group_of(&self, orbit: OrbitRef) -> usize {
        self.group_of[orbit.motif][orbit.orbit]
    }

    /// True when every group is a single orbit.
    pub fn is_unaggregated(&self) -> bool {
        self.groups.iter().all(|g| g.members.len() == 1)
    }

    /// Effective per-orbit expected degrees (`degrees[m][i][v]`), obtained
    /// by splitting each pooled sequence proportionally to `|O| n` over the
    /// group members.
    pub fn effective_degrees(&self) -> Result<Vec<Vec<Vec<f64>>>> {
        let mut out: Vec<Vec<Vec<f64>>> = self
            .motifs
            .iter()
            .map(|m| vec![Vec::new(); m.symmetry().orbit_count()])
            .collect();
        for group in &self.groups {
            let shares = aggregate_orbits_canonical(
                &group
                    .members
                    .iter()
                    .map(|r| {
                        (
                            self.motifs[r.motif].symmetry().orbit_size(r.orbit),
                            self.expected_totals[r.motif],
                        )
                    })
                    .collect::<Vec<_>>(),
                &group.degrees,
            )?;
            for (member, seq) in group.members.iter().zip(shares) {
                out[member.motif][member.orbit] = seq;
            }
        }
        Ok(out)
    }
}

fn validate_sequence(seq: &[f64], n_vertices: usize) -> Result<()> {
    if seq.len() != n_vertices {
        return Err(Error::Spec(format!(
            "degree sequence has length {} but the vertex set has {n_vertices}",
            seq.len()
        )));
    }
    if let Some(k) = seq.iter().find(|k| !k.is_finite() || **k < 0.0) {
        return Err(Error::Spec(format!(
            "degree {k} is not a non-negative real"
        )));
    }
    Ok(())
}

/// Splits a shared degree sequence over the orbits of one aggregation group:
/// member `(|O|, n)` receives the share `k(v) |O| n / sum(|O'| n')`. The
/// shares of every vertex sum back to `k(v)`.
pub fn aggregate_orbits_canonical(
    members: &[(usize, f64)],
    shared: &[f64],
) -> Result<Vec<Vec<f64>>> {
    let denom: f64 = members.iter().map(|&(o, n)| o as f64 * n).sum();
    if denom <= 0.0 {
        if shared.iter().all(|&k| k == 0.0) {
            return Ok(members.iter().map(|_| vec![0.0; shared.len()]).collect());
        }
        return Err(Error::Infeasible(
            "aggregation group has zero pooled expected stubs but nonzero degrees".into(),
        ));
    }
    Ok(members
        .iter()
        .map(|&(o, n)| {
            let share = o as f64 * n / denom;
            shared.iter().map(|&k| k * share).collect()
        })
        .collect())
}

/// Sufficient sparse-regime condition per orbit: `max_v k(v) <<
/// sqrt(<k> N)`. `worst_ratio` is the largest `max_k / sqrt(<k> N)`; the
/// spec is accepted when it does not exceed one.
#[derive(Debug, Clone, Copy)]
pub struct SparseFeasibility {
    /// Largest `max_k / sqrt(<k> N)` over all orbits.
    pub worst_ratio: f64,
}

impl SparseFeasibility {
    /// Whether the sufficient condition holds.
    pub fn ok(&self) -> bool {
        self.worst_ratio <= 1.0
    }
}

/// Evaluates the sufficient sparse-regime condition for every orbit.
pub fn sparse_feasibility(spec: &CanonicalDegreeSpec) -> Result<SparseFeasibility> {
    let degrees = spec.effective_degrees()?;
    let mut worst: f64 = 0.0;
    for per_motif in &degrees {
        for seq in per_motif {
            let total: f64 = seq.iter().sum();
            if total == 0.0 {
                continue;
            }
            let max = seq.iter().cloned().fold(0.0, f64::max);
            // <k> N = total, so the bound reads max_k <= sqrt(total)
            worst = worst.max(max / total.sqrt());
        }
    }
    Ok(SparseFeasibility { worst_ratio: worst })
}

/// Sparse-limit probability of one placement (degree-corrected model):
/// `p_s = n |Aut(m)| prod_slots k_i(v) / (|O_i| n)`.
///
/// The sufficient sparse condition is checked first; pass
/// `strict = true` to additionally verify `p_s <= 1` for this placement and
/// fail naming it.
pub fn placement_probability_sparse(
    spec: &CanonicalDegreeSpec,
    placement: &Placement,
    strict: bool,
) -> Result<f64> {
    let feasibility = sparse_feasibility(spec)?;
    if !feasibility.ok() {
        return Err(Error::Infeasible(format!(
            "sparse condition max_k <= sqrt(<k> N) violated (ratio {:.3})",
            feasibility.worst_ratio
        )));
    }
    let degrees = spec.effective_degrees()?;
    let p = sparse_probability_from(
        &spec.motifs[placement.motif()],
        spec.expected_totals[placement.motif()],
        &degrees[placement.motif()],
        placement.vertices(),
    );
    if strict && p > 1.0 {
        return Err(Error::Infeasible(format!(
            "placement {:?} of motif {} has sparse probability {p:.3} > 1",
            placement.vertices(),
            placement.motif()
        )));
    }
    Ok(p.min(1.0))
}

pub(crate) fn sparse_probability_from(
    motif: &Motif,
    total: f64,
    orbit_degrees: &[Vec<f64>],
    vertices: &[u32],
) -> f64 {
    if total <= 0.0 {
        return 0.0;
    }
    let sym = motif.symmetry();
    let mut p = total * sym.aut_size() as f64;
    for (atom_vertex, &v) in vertices.iter().enumerate() {
        let orbit = sym.orbit_of(atom_vertex);
        let k = orbit_degrees[orbit][v as usize];
        p *= k / (sym.orbit_size(orbit) as f64 * total);
    }
    p
}

/// A truncated-series entropy value plus the magnitude of the last included
/// term, reported because the expansion has no stated truncation rule.
#[derive(Debug, Clone, Copy)]
pub struct SeriesEntropy {
    /// Entropy in nats.
    pub value: f64,
    /// Magnitude of the last series term that was added.
    pub last_term: f64,
}

/// Degree-corrected canonical entropy in the sparse limit, with the
/// correction series truncated at `l_max`.
pub fn entropy_degree_corrected(spec: &CanonicalDegreeSpec, l_max: usize) -> Result<SeriesEntropy> {
    let feasibility = sparse_feasibility(spec)?;
    if !feasibility.ok() {
        return Err(Error::Infeasible(format!(
            "sparse condition max_k <= sqrt(<k> N) violated (ratio {:.3})",
            feasibility.worst_ratio
        )));
    }
    let degrees = spec.effective_degrees()?;
    let mut value = 0.0;
    let mut last_term: f64 = 0.0;
    for (m, motif) in spec.motifs.iter().enumerate() {
        let contribution =
            motif_series_entropy(motif, spec.expected_totals[m], &degrees[m], l_max)?;
        value += contribution.value;
        last_term = last_term.max(contribution.last_term);
    }
    Ok(SeriesEntropy { value, last_term })
}

/// Per-motif sparse entropy: the closed terms plus the `l`-series. Shared by
/// the canonical formula and the analytic microcanonical formula.
pub(crate) fn motif_series_entropy(
    motif: &Motif,
    total: f64,
    orbit_degrees: &[Vec<f64>],
    l_max: usize,
) -> Result<SeriesEntropy> {
    if total <= 0.0 {
        if orbit_degrees.iter().flatten().any(|&k| k > 0.0) {
            return Err(Error::Infeasible(
                "motif has zero expected total but nonzero degrees".into(),
            ));
        }
        return Ok(SeriesEntropy {
            value: 0.0,
            last_term: 0.0,
        });
    }
    let sym = motif.symmetry();
    let aut = sym.aut_size() as f64;
    let mut value = total - total * (aut * total).ln();
    for (i, degrees) in orbit_degrees.iter().enumerate() {
        let o = sym.orbit_size(i) as f64;
        value += total * o * (total * o).ln();
        for &k in degrees {
            if k > 0.0 {
                value -= k * k.ln();
            }
        }
    }

    // series: sum_l aut^l / (l(l+1)) * n^{l+1} / (prod_j (o_j n)^{o_j})^l
    //         * prod_i (<k^{l+1}> / <k>)^{o_i}
    let mut log_denom_base = 0.0;
    for i in 0..sym.orbit_count() {
        let o = sym.orbit_size(i) as f64;
        log_denom_base += o * (o * total).ln();
    }
    let mut last_term: f64 = 0.0;
    let mut previous: Option<f64> = None;
    for l in 1..=l_max {
        let lf = l as f64;
        let mut log_term =
            lf * aut.ln() - (lf * (lf + 1.0)).ln() + (lf + 1.0) * total.ln() - lf * log_denom_base;
        for (i, degrees) in orbit_degrees.iter().enumerate() {
            let sum_k: f64 = degrees.iter().sum();
            let sum_pow: f64 = degrees.iter().map(|&k| k.powi(l as i32 + 1)).sum();
            let o = sym.orbit_size(i) as f64;
            log_term += o * (sum_pow.ln() - sum_k.ln());
        }
        let term = log_term.exp();
        if let Some(prev) = previous {
            if term > prev {
                return Err(Error::SeriesDiverged { last_term: term });
            }
        }
        previous = Some(term);
        value -= term;
        last_term = term;
    }
    Ok(SeriesEntropy { value, last_term })
}

/// Exact maximum-entropy solution of a degree-corrected spec: multipliers,
/// per-placement probabilities and the entropy `sum_s h(p_s)`.
#[derive(Debug, Clone)]
pub struct ExactSolution {
    /// All placements paired with their probability, grouped by motif in
    /// enumeration order.
    pub probabilities: Vec<(Placement, f64)>,
    /// Entropy of the solved ensemble in nats.
    pub entropy: f64,
    /// Largest absolute constraint residual at termination.
    pub residual: f64,
    /// Fixed-point iterations performed.
    pub iterations: usize,
}

/// Default fixed-point damping.
pub const SOLVER_DAMPING: f64 = 0.5;
/// Default iteration cap.
pub const SOLVER_MAX_ITERATIONS: usize = 10_000;
/// Default convergence tolerance on `max |E(d) - k|`.
pub const SOLVER_TOLERANCE: f64 = 1e-8;
/// Multipliers are clamped to this magnitude; probabilities then sit within
/// `1e-26` of the boundary, far below any usable tolerance.
const MULTIPLIER_CLAMP: f64 = 60.0;

/// Solves the exact multiplier system by damped fixed-point iteration
/// (`lambda += eta ln(E/k)`), enumerating every placement.
///
/// Pooled groups get one shared multiplier sequence; motifs touched by a
/// pooled group get an extra count multiplier enforcing `E(n_m) = n_m`.
/// Zero-degree targets are handled as exclusions.
pub fn solve_multipliers_exact(
    spec: &CanonicalDegreeSpec,
    tolerance: f64,
    max_iterations: usize,
) -> Result<ExactSolution> {
    let n = spec.n_vertices;
    let n_groups = spec.groups.len();

    // placements per motif with their per-group slot incidence
    let mut placements: Vec<(Placement, Vec<(usize, u32)>)> = Vec::new();
    let mut motif_range = Vec::with_capacity(spec.motifs.len());
    for (m, motif) in spec.motifs.iter().enumerate() {
        let start = placements.len();
        for p in enumerate_placements(n, m, motif) {
            let slots: Vec<(usize, u32)> = p
                .vertices()
                .iter()
                .enumerate()
                .map(|(atom_vertex, &v)| {
                    let orbit = motif.symmetry().orbit_of(atom_vertex);
                    (spec.group_of[m][orbit], v)
                })
                .collect();
            placements.push((p, slots));
        }
        motif_range.push(start..placements.len());
        if placements.len() > 2_000_000 {
            return Err(Error::OracleRefusal(
                "too many placements to enumerate for the exact solver".into(),
            ));
        }
    }

    // exclusions: zero targets force p = 0 on incident placements
    let excluded_slot = |g: usize, v: u32| -> bool { spec.groups[g].degrees[v as usize] == 0.0 };
    let active: Vec<bool> = placements
        .iter()
        .map(|(_, slots)| !slots.iter().any(|&(g, v)| excluded_slot(g, v)))
        .collect();

    // feasibility: each positive target needs at least as many active
    // incident placements as its value
    let mut incident = vec![vec![0.0f64; n]; n_groups];
    for ((_, slots), &live) in placements.iter().zip(&active) {
        if live {
            for &(g, v) in slots {
                incident[g][v as usize] += 1.0;
            }
        }
    }
    for (g, group) in spec.groups.iter().enumerate() {
        for (v, &k) in group.degrees.iter().enumerate() {
            if k > incident[g][v] + 1e-12 {
                return Err(Error::Infeasible(format!(
                    "target {k} for vertex {v} in group {g} exceeds its {} incident placements",
                    incident[g][v]
                )));
            }
        }
    }

    // motifs with any pooled orbit also carry a count multiplier
    let count_constrained: Vec<bool> = (0..spec.motifs.len())
        .map(|m| {
            spec.group_of[m]
                .iter()
                .any(|&g| spec.groups[g].members.len() > 1)
        })
        .collect();

    let mut lambda_group = vec![vec![0.0f64; n]; n_groups];
    let mut lambda_count = vec![0.0f64; spec.motifs.len()];
    let mut expected = vec![vec![0.0f64; n]; n_groups];
    let mut expected_counts = vec![0.0f64; spec.motifs.len()];
    let mut probabilities = vec![0.0f64; placements.len()];

    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    for iter in 0..max_iterations {
        iterations = iter + 1;
        for row in &mut expected {
            row.fill(0.0);
        }
        expected_counts.fill(0.0);
        for (m, range) in motif_range.iter().enumerate() {
            for idx in range.clone() {
                if !active[idx] {
                    probabilities[idx] = 0.0;
                    continue;
                }
                let (_, slots) = &placements[idx];
                let mut exponent = if count_constrained[m] {
                    lambda_count[m]
                } else {
                    0.0
                };
                for &(g, v) in slots {
                    exponent += lambda_group[g][v as usize];
                }
                let p = 1.0 / (1.0 + exponent.exp());
                probabilities[idx] = p;
                expected_counts[m] += p;
                for &(g, v) in slots {
                    expected[g][v as usize] += p;
                }
            }
        }

        residual = 0.0f64;
        for (g, group) in spec.groups.iter().enumerate() {
            for (v, &k) in group.degrees.iter().enumerate() {
                if k > 0.0 {
                    residual = residual.max((expected[g][v] - k).abs());
                }
            }
        }
        for (m, &constrained) in count_constrained.iter().enumerate() {
            if constrained {
                residual = residual.max((expected_counts[m] - spec.expected_totals[m]).abs());
            }
        }
        if residual < tolerance {
            break;
        }

        for (g, group) in spec.groups.iter().enumerate() {
            for (v, &k) in group.degrees.iter().enumerate() {
                if k > 0.0 && expected[g][v] > 0.0 {
                    lambda_group[g][v] = (lambda_group[g][v]
                        + SOLVER_DAMPING * (expected[g][v] / k).ln())
                    .clamp(-MULTIPLIER_CLAMP, MULTIPLIER_CLAMP);
                }
            }
        }
        for (m, &constrained) in count_constrained.iter().enumerate() {
            let target = spec.expected_totals[m];
            if constrained && target > 0.0 && expected_counts[m] > 0.0 {
                lambda_count[m] = (lambda_count[m]
                    + SOLVER_DAMPING * (expected_counts[m] / target).ln())
                .clamp(-MULTIPLIER_CLAMP, MULTIPLIER_CLAMP);
            }
        }
    }

    if residual >= tolerance {
        return Err(Error::NonConvergent {
            iterations,
            residual,
        });
    }

    let entropy = probabilities.iter().map(|&p| binary_entropy(p)).sum();
    Ok(ExactSolution {
        probabilities: placements
            .into_iter()
            .map(|(p, _)| p)
            .zip(probabilities.iter().copied())
            .collect(),
        entropy,
        residual,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn motif(name: &str) -> Motif {
        Motif::from_catalogue(name).unwrap()
    }

    #[test]
    fn homogeneous_probability_and_entropy() {
        let spec = CanonicalCountSpec::new(vec![motif("edge")], vec![1.5]).unwrap();
        let p = placement_probability_homogeneous(&spec, 3, 0).unwrap();
        assert!((p - 0.5).abs() < 1e-12);
        let s = entropy_homogeneous(&spec, 3).unwrap();
        assert!((s.exact - 3.0 * std::f64::consts::LN_2).abs() < 1e-12);

        let zero = CanonicalCountSpec::new(vec![motif("edge")], vec![0.0]).unwrap();
        assert_eq!(placement_probability_homogeneous(&zero, 3, 0).unwrap(), 0.0);
        assert_eq!(entropy_homogeneous(&zero, 3).unwrap().exact, 0.0);

        let tri = CanonicalCountSpec::new(vec![motif("triangle")], vec![1.0]).unwrap();
        assert!((placement_probability_homogeneous(&tri, 3, 0).unwrap() - 1.0).abs() < 1e-12);
        assert!(entropy_homogeneous(&tri, 3).unwrap().exact.abs() < 1e-12);

        // full configuration is deterministic as well
        let full = CanonicalCountSpec::new(vec![motif("edge")], vec![3.0]).unwrap();
        assert!(entropy_homogeneous(&full, 3).unwrap().exact.abs() < 1e-12);

        let infeasible = CanonicalCountSpec::new(vec![motif("edge")], vec![4.0]).unwrap();
        assert!(matches!(
            placement_probability_homogeneous(&infeasible, 3, 0),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn reproduces_gnp_for_single_edges() {
        let n = 20usize;
        let h = (n * (n - 1) / 2) as f64;
        let p = 0.37;
        let spec = CanonicalCountSpec::new(vec![motif("edge")], vec![p * h]).unwrap();
        let got = placement_probability_homogeneous(&spec, n, 0).unwrap();
        assert!((got - p).abs() < 1e-12);
    }

    #[test]
    fn sparse_probability_closed_forms() {
        // edge atom: p = k(u) k(v) / (2 n)
        let n_vertices = 6;
        let k = vec![1.0, 2.0, 0.5, 1.5, 1.0, 2.0];
        let total: f64 = k.iter().sum::<f64>() / 2.0;
        let spec = CanonicalDegreeSpec::from_orbit_degrees(
            vec![motif("edge")],
            n_vertices,
            vec![vec![k.clone()]],
        )
        .unwrap();
        let motif_edge = motif("edge");
        let placement = Placement::new(0, &motif_edge, &[1, 3]).unwrap();
        let p = placement_probability_sparse(&spec, &placement, true).unwrap();
        assert!((p - k[1] * k[3] / (2.0 * total)).abs() < 1e-12);

        // triangle atom with uniform degrees: p = 6 n (k / (3 n))^3
        let k = 0.9f64;
        let n_vertices = 5;
        let seq = vec![k; n_vertices];
        let total = seq.iter().sum::<f64>() / 3.0;
        let spec = CanonicalDegreeSpec::from_orbit_degrees(
            vec![motif("triangle")],
            n_vertices,
            vec![vec![seq]],
        )
        .unwrap();
        let tri = motif("triangle");
        let placement = Placement::new(0, &tri, &[0, 2, 4]).unwrap();
        let p = placement_probability_sparse(&spec, &placement, true).unwrap();
        assert!((p - 6.0 * total * (k / (3.0 * total)).powi(3)).abs() < 1e-12);
    }

    #[test]
    fn sparse_condition_violation_is_an_error() {
        // one hub vertex with nearly all the degree mass
        let mut k = vec![0.1; 10];
        k[0] = 9.0;
        let spec = CanonicalDegreeSpec::from_orbit_degrees(vec![motif("edge")], 10, vec![vec![k]])
            .unwrap();
        let edge = motif("edge");
        let placement = Placement::new(0, &edge, &[0, 1]).unwrap();
        assert!(matches!(
            placement_probability_sparse(&spec, &placement, false),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn orbit_shares_split_degrees() {
        // edge orbit (|O|=2, n=3) with triangle orbit (|O|=3, n=2), k = 4
        let shares = aggregate_orbits_canonical(&[(2, 3.0), (3, 2.0)], &[4.0]).unwrap();
        assert!((shares[0][0] - 2.0).abs() < 1e-12);
        assert!((shares[1][0] - 2.0).abs() < 1e-12);

        // symmetric split
        let shares = aggregate_orbits_canonical(&[(2, 1.0), (2, 1.0)], &[3.0]).unwrap();
        assert!((shares[0][0] - 1.5).abs() < 1e-12);

        // single-member group is the identity
        let shares = aggregate_orbits_canonical(&[(2, 5.0)], &[2.5, 1.5]).unwrap();
        assert_eq!(shares[0], vec![2.5, 1.5]);

        assert!(aggregate_orbits_canonical(&[(2, 0.0)], &[1.0]).is_err());
    }

    #[test]
    fn aggregation_is_commutative() {
        let members = [(2usize, 3.0f64), (3, 2.0), (1, 4.0)];
        let shared = vec![4.0, 1.0, 0.0];
        let forward = aggregate_orbits_canonical(&members, &shared).unwrap();
        let mut reordered = members;
        reordered.reverse();
        let backward = aggregate_orbits_canonical(&reordered, &shared).unwrap();
        for (i, seq) in forward.iter().enumerate() {
            let j = members.len() - 1 - i;
            for (a, b) in seq.iter().zip(&backward[j]) {
                assert!((a - b).abs() < 1e-12);
            }
        }
        // shares of every vertex sum back to the pooled degree
        for v in 0..shared.len() {
            let sum: f64 = forward.iter().map(|seq| seq[v]).sum();
            assert!((sum - shared[v]).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_solver_recovers_symmetric_targets() {
        let spec = CanonicalDegreeSpec::from_orbit_degrees(
            vec![motif("edge")],
            4,
            vec![vec![vec![2.0; 4]]],
        )
        .unwrap();
        let solution = solve_multipliers_exact(&spec, 1e-10, SOLVER_MAX_ITERATIONS).unwrap();
        for (_, p) in &solution.probabilities {
            assert!((p - 2.0 / 3.0).abs() < 1e-8);
        }
        let expect = 6.0 * binary_entropy(2.0 / 3.0);
        assert!((solution.entropy - expect).abs() < 1e-8);
    }

    #[test]
    fn exact_solver_excludes_zero_targets() {
        let spec = CanonicalDegreeSpec::from_orbit_degrees(
            vec![motif("edge")],
            4,
            vec![vec![vec![0.0, 1.0, 1.0, 1.0]]],
        )
        .unwrap();
        let solution = solve_multipliers_exact(&spec, 1e-9, SOLVER_MAX_ITERATIONS).unwrap();
        for (placement, p) in &solution.probabilities {
            if placement.vertices().contains(&0) {
                assert_eq!(*p, 0.0);
            } else {
                assert!(*p > 0.0);
            }
        }
    }

    #[test]
    fn series_entropy_matches_single_edge_specialization() {
        let n_vertices = 60;
        let k: Vec<f64> = (0..n_vertices)
            .map(|v| 1.0 + 0.02 * (v % 5) as f64)
            .collect();
        let total: f64 = k.iter().sum::<f64>() / 2.0;
        let spec = CanonicalDegreeSpec::from_orbit_degrees(
            vec![motif("edge")],
            n_vertices,
            vec![vec![k.clone()]],
        )
        .unwrap();
        let l_max = 12;
        let got = entropy_degree_corrected(&spec, l_max).unwrap();

        // hand-written single-edge form of the same expansion
        let sum_k: f64 = k.iter().sum();
        let mut expect = total + total * (2.0 * total).ln();
        for &kv in &k {
            expect -= kv * kv.ln();
        }
        for l in 1..=l_max {
            let lf = l as f64;
            let ratio: f64 = k.iter().map(|&kv| kv.powi(l as i32 + 1)).sum::<f64>() / sum_k;
            expect -= total.powf(1.0 - lf) / 2f64.powf(lf) * ratio * ratio / (lf * (lf + 1.0));
        }
        assert!((got.value - expect).abs() < 1e-9 * expect.abs());
        assert!(got.last_term >= 0.0);
    }

    #[test]
    fn zero_degrees_have_zero_entropy() {
        let spec = CanonicalDegreeSpec::from_orbit_degrees(
            vec![motif("edge")],
            5,
            vec![vec![vec![0.0; 5]]],
        )
        .unwrap();
        assert_eq!(entropy_degree_corrected(&spec, 10).unwrap().value, 0.0);
    }

    #[test]
    fn series_tracks_exact_solver_at_small_degrees() {
        let spec = CanonicalDegreeSpec::from_orbit_degrees(
            vec![motif("edge")],
            4,
            vec![vec![vec![0.02; 4]]],
        )
        .unwrap();
        let series = entropy_degree_corrected(&spec, 12).unwrap();
        let exact = solve_multipliers_exact(&spec, 1e-10, SOLVER_MAX_ITERATIONS).unwrap();
        let relative = (series.value - exact.entropy).abs() / exact.entropy;
        assert!(relative < 0.05, "relative gap {relative:.4}");
    }

    #[test]
    fn sparse_sums_approach_targets_with_size() {
        let mut errors = Vec::new();
        for n in [100usize, 400] {
            let degrees: Vec<f64> = (0..n).map(|v| 2.0 + (v % 3) as f64).collect();
            let spec = CanonicalDegreeSpec::from_orbit_degrees(
                vec![motif("edge")],
                n,
                vec![vec![degrees.clone()]],
            )
            .unwrap();
            let effective = spec.effective_degrees().unwrap();
            let total = spec.expected_totals()[0];
            let mut count_sum = 0.0;
            let mut per_vertex = vec![0.0f64; n];
            for placement in enumerate_placements(n, 0, &spec.motifs()[0]) {
                let p = sparse_probability_from(
                    &spec.motifs()[0],
                    total,
                    &effective[0],
                    placement.vertices(),
                );
                count_sum += p;
                for &v in placement.vertices() {
                    per_vertex[v as usize] += p;
                }
            }
            let count_err = (count_sum - total).abs() / total;
            let degree_err = per_vertex
                .iter()
                .zip(&degrees)
                .map(|(got, want)| (got - want).abs() / want)
                .fold(0.0f64, f64::max);
            // O(1/N) accuracy: a generous absolute ceiling at each size
            assert!(
                count_err < 4.0 / n as f64,
                "count error {count_err} at N={n}"
            );
            assert!(
                degree_err < 8.0 / n as f64,
                "degree error {degree_err} at N={n}"
            );
            errors.push((count_err, degree_err));
        }
        assert!(
            errors[1].0 < errors[0].0,
            "count error did not shrink: {errors:?}"
        );
        assert!(
            errors[1].1 < errors[0].1,
            "degree error did not shrink: {errors:?}"
        );
    }
}

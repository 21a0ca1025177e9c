//! Microcanonical (hard-constraint) ensembles: exact configuration counts,
//! stub-matching combinatorics with self-match and duplicate corrections,
//! the analytic entropy via the conjugate canonical ensemble, and relaxed
//! variants obtained by pooling orbit degrees.

use crate::atoms::{count_placements_log, Motif, OrbitRef};
use crate::canonical::{motif_series_entropy, SeriesEntropy};
use crate::configuration::Placement;
use crate::error::{Error, Result};
use crate::numeric::{ln_factorial, ln_poisson_at_mean};

/// One hard degree constraint: the orbits in `members` share the pooled
/// integer degree sequence `degrees`.
#[derive(Debug, Clone)]
pub struct DegreeGroup {
    /// Orbits whose stubs are treated as a single type.
    pub members: Vec<OrbitRef>,
    /// Pooled degree sequence, one entry per vertex.
    pub degrees: Vec<u64>,
}

impl DegreeGroup {
    fn stub_total(&self) -> u64 {
        self.degrees.iter().sum()
    }

    /// `sum_v d(v)(d(v)-1)`, the numerator of the excess-degree factor.
    fn sum_dd1(&self) -> u64 {
        self.degrees.iter().map(|&d| d * (d - d.min(1))).sum()
    }

    /// `<d^2>/<d> - 1`, or zero for an empty group.
    fn excess_factor(&self) -> f64 {
        let total = self.stub_total();
        if total == 0 {
            0.0
        } else {
            self.sum_dd1() as f64 / total as f64
        }
    }
}

/// Hard orbit-degree constraints for a motif set, with optional aggregation
/// groups; the ensemble is uniform over the configurations realising them.
#[derive(Debug, Clone)]
pub struct MicroDegreeSpec {
    motifs: Vec<Motif>,
    n_vertices: usize,
    counts: Vec<u64>,
    groups: Vec<DegreeGroup>,
    group_of: Vec<Vec<usize>>,
}

impl MicroDegreeSpec {
    /// Builds an unaggregated spec from per-orbit degree sequences
    /// (`degrees[m][i][v]`). Motif counts are implied by graphicality and
    /// the construction fails when the sums do not divide evenly.
    pub fn from_orbit_degrees(
        motifs: Vec<Motif>,
        n_vertices: usize,
        degrees: Vec<Vec<Vec<u64>>>,
    ) -> Result<Self> {
        if degrees.len() != motifs.len() {
            return Err(Error::Spec("one degree table per motif required".into()));
        }
        let mut counts = Vec::with_capacity(motifs.len());
        let mut groups = Vec::new();
        for (m, motif) in motifs.iter().enumerate() {
            if degrees[m].len() != motif.symmetry().orbit_count() {
                return Err(Error::Spec(format!(
                    "motif {m}: expected {} orbit sequences, got {}",
                    motif.symmetry().orbit_count(),
                    degrees[m].len()
                )));
            }
            let mut implied: Option<u64> = None;
            for (i, seq) in degrees[m].iter().enumerate() {
                if seq.len() != n_vertices {
                    return Err(Error::Spec(format!(
                        "motif {m} orbit {i}: sequence length {} != {n_vertices}",
                        seq.len()
                    )));
                }
                let total: u64 = seq.iter().sum();
                let orbit_size = motif.symmetry().orbit_size(i) as u64;
                if !total.is_multiple_of(orbit_size) {
                    return Err(Error::NotGraphical(format!(
                        "motif {m} orbit {i}: stub total {total} not divisible by orbit size {orbit_size}"
                    )));
                }
                let n = total / orbit_size;
                match implied {
                    None => implied = Some(n),
                    Some(prev) if prev != n => {
                        return Err(Error::NotGraphical(format!(
                            "motif {m}: orbit {i} implies {n} copies, earlier orbits imply {prev}"
                        )));
                    }
                    _ => {}
                }
                groups.push(DegreeGroup {
                    members: vec![OrbitRef { motif: m, orbit: i }],
                    degrees: seq.clone(),
                });
            }
            counts.push(implied.unwrap_or(0));
        }
        Self::assemble(motifs, n_vertices, counts, groups)
    }

    /// Builds a spec with explicit counts and aggregation groups. Groups must
    /// partition the orbits and each pooled degree sum must equal the pooled
    /// stub count `sum_members |O| n_m`.
    pub fn with_groups(
        motifs: Vec<Motif>,
        n_vertices: usize,
        counts: Vec<u64>,
        groups: Vec<DegreeGroup>,
    ) -> Result<Self> {
        if counts.len() != motifs.len() {
            return Err(Error::Spec("one count per motif required".into()));
        }
        for group in &groups {
            if group.degrees.len() != n_vertices {
                return Err(Error::Spec(format!(
                    "group sequence length {} != {n_vertices}",
                    group.degrees.len()
                )));
            }
        }
        Self::assemble(motifs, n_vertices, counts, groups)
    }

    fn assemble(
        motifs: Vec<Motif>,
        n_vertices: usize,
        counts: Vec<u64>,
        groups: Vec<DegreeGroup>,
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
        for (g, group) in groups.iter().enumerate() {
            let pooled: u64 = group
                .members
                .iter()
                .map(|r| motifs[r.motif].symmetry().orbit_size(r.orbit) as u64 * counts[r.motif])
                .sum();
            if pooled != group.stub_total() {
                return Err(Error::NotGraphical(format!(
                    "group {g}: degree sum {} does not match pooled stub count {pooled}",
                    group.stub_total()
                )));
            }
        }
        Ok(MicroDegreeSpec {
            motifs,
            n_vertices,
            counts,
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

    /// Hard motif counts `n_m`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// The degree groups (singletons for unaggregated specs).
    pub fn groups(&self) -> &[DegreeGroup] {
        &self.groups
    }

    /// Group index holding a given orbit.
    pub fn group_index(&self, orbit: OrbitRef) -> usize {
        self.group_of[orbit.motif][orbit.orbit]
    }

    /// True when every group is a single orbit.
    pub fn is_unaggregated(&self) -> bool {
        self.groups.iter().all(|g| g.members.len() == 1)
    }

    /// Per-orbit degree table for unaggregated specs.
    pub fn orbit_degree(&self, orbit: OrbitRef, vertex: usize) -> Option<u64> {
        let g = self.group_index(orbit);
        if self.groups[g].members.len() == 1 {
            Some(self.groups[g].degrees[vertex])
        } else {
            None
        }
    }

    /// Share of a group's stubs belonging to one member orbit:
    /// `|O| n_m / sum_members |O'| n_m'`.
    pub fn orbit_share(&self, orbit: OrbitRef) -> f64 {
        let g = self.group_index(orbit);
        let pooled = self.groups[g].stub_total();
        if pooled == 0 {
            return 0.0;
        }
        let own = self.motifs[orbit.motif].symmetry().orbit_size(orbit.orbit) as u64
            * self.counts[orbit.motif];
        own as f64 / pooled as f64
    }
}

/// Log number of configurations with fixed motif counts:
/// `ln prod_m C(|H_m|, n_m)`.
pub fn log_count_fixed_counts(n_vertices: usize, motifs: &[Motif], counts: &[u64]) -> Result<f64> {
    if motifs.len() != counts.len() {
        return Err(Error::Spec("one count per motif required".into()));
    }
    let mut total = 0.0;
    for (motif, &n) in motifs.iter().zip(counts) {
        if n == 0 {
            continue;
        }
        let log_h = count_placements_log(n_vertices, motif.symmetry());
        let nf = n as f64;
        // ln C(H, n) with H given in log space
        if log_h == f64::NEG_INFINITY || nf.ln() > log_h + 1e-9 {
            return Err(Error::Infeasible(format!(
                "count {n} exceeds the available placements of a motif"
            )));
        }
        let h = log_h.exp();
        if h <= 9e15 {
            // H fits an exact double: use the lgamma identity directly
            total += libm::lgamma(h + 1.0) - ln_factorial(n) - libm::lgamma(h - nf + 1.0);
        } else {
            // beyond exact-double range the falling factorial is n ln H to
            // double precision
            total += nf * log_h - ln_factorial(n);
        }
    }
    Ok(total)
}

/// Log number of stub matchings for the spec's degree constraints. Pooled
/// groups contribute one stub-arrangement factor each.
pub fn log_stub_matchings(spec: &MicroDegreeSpec) -> f64 {
    let mut total = 0.0;
    for (m, motif) in spec.motifs.iter().enumerate() {
        let n = spec.counts[m];
        total -= ln_factorial(n);
        total -= n as f64 * (motif.aut_size() as f64).ln();
    }
    for group in &spec.groups {
        total += ln_factorial(group.stub_total());
        for &d in &group.degrees {
            total -= ln_factorial(d);
        }
    }
    total
}

/// The moment model used by the corrections under aggregation: conditional
/// on its pooled group degree, each orbit receives a multinomial share, so
/// `<d_{m,i}> = p <d_g>` and `<d_{m,i}(d_{m,i}-1)> = p^2 <d_g(d_g-1)>`, with
/// independent allocations across groups.
fn motif_group_shares(spec: &MicroDegreeSpec, m: usize) -> Vec<(usize, f64)> {
    // (group index, total share q of that group's stubs taken by motif m)
    let mut shares: Vec<(usize, f64)> = Vec::new();
    for i in 0..spec.motifs[m].symmetry().orbit_count() {
        let orbit = OrbitRef { motif: m, orbit: i };
        let g = spec.group_index(orbit);
        let q = spec.orbit_share(orbit);
        match shares.iter_mut().find(|(gi, _)| *gi == g) {
            Some((_, acc)) => *acc += q,
            None => shares.push((g, q)),
        }
    }
    shares
}

/// Log of the probability that no two stubs of one atom land on the same
/// vertex, aggregated over all vertices (the self-match correction).
pub fn log_self_match_correction(spec: &MicroDegreeSpec) -> Result<f64> {
    let mut total = 0.0;
    for (m, motif) in spec.motifs.iter().enumerate() {
        let n = spec.counts[m];
        if n == 0 {
            continue;
        }
        let order = motif.order() as f64;
        let shares = motif_group_shares(spec, m);

        // <T(T-1)> and <T> of the motif's total atomic degree under the
        // multinomial split, with per-vertex cross products between groups
        let mut t_mean = 0.0;
        let mut t_tt1 = 0.0;
        for &(g, q) in &shares {
            let group = &spec.groups[g];
            let stub_total = group.stub_total() as f64;
            if stub_total == 0.0 {
                return Err(Error::Infeasible(format!(
                    "motif {m} has {n} copies but a zero-degree group"
                )));
            }
            t_mean += q * stub_total;
            t_tt1 += q * q * group.sum_dd1() as f64;
        }
        for (a, &(ga, qa)) in shares.iter().enumerate() {
            for &(gb, qb) in shares.iter().skip(a + 1) {
                let cross: u64 = spec.groups[ga]
                    .degrees
                    .iter()
                    .zip(&spec.groups[gb].degrees)
                    .map(|(&x, &y)| x * y)
                    .sum();
                t_tt1 += 2.0 * qa * qb * cross as f64;
            }
        }
        let ratio_total = t_tt1 / t_mean;

        let mut per_orbit = 0.0;
        for i in 0..motif.symmetry().orbit_count() {
            let orbit = OrbitRef { motif: m, orbit: i };
            let g = spec.group_index(orbit);
            per_orbit += spec.orbit_share(orbit) * spec.groups[g].excess_factor();
        }

        total -= 0.5 * (order * ratio_total - per_orbit);
    }
    Ok(total)
}

/// Per-motif value and negligibility flag of the duplicate-placement
/// correction.
#[derive(Debug, Clone)]
pub struct MultiSubgraphCorrection {
    /// Total `ln P_ml` over all motifs.
    pub value: f64,
    /// Per-motif contributions.
    pub per_motif: Vec<f64>,
    /// True for motifs of order above two, whose contribution decays as
    /// `1 / N^{|m|-2}`.
    pub negligible: Vec<bool>,
}

/// Log of the probability that no placement is created twice by the
/// matching process. Motifs with fewer than two copies cannot collide and
/// contribute zero.
pub fn log_multi_subgraph_correction(spec: &MicroDegreeSpec) -> MultiSubgraphCorrection {
    let mut per_motif = Vec::with_capacity(spec.motifs.len());
    let mut negligible = Vec::with_capacity(spec.motifs.len());
    let mut value = 0.0;
    for (m, motif) in spec.motifs.iter().enumerate() {
        let n = spec.counts[m];
        negligible.push(motif.order() > 2);
        if n < 2 {
            per_motif.push(0.0);
            continue;
        }
        let nf = n as f64;
        let mut term = motif.aut_size() as f64 * nf * nf / 2.0;
        for i in 0..motif.symmetry().orbit_count() {
            let orbit = OrbitRef { motif: m, orbit: i };
            let g = spec.group_index(orbit);
            let group = &spec.groups[g];
            let stub_total = group.stub_total() as f64;
            let factor = if stub_total == 0.0 {
                0.0
            } else {
                group.excess_factor() / stub_total
            };
            term *= factor.powi(motif.symmetry().orbit_size(i) as i32);
        }
        per_motif.push(-term);
        value -= term;
    }
    MultiSubgraphCorrection {
        value,
        per_motif,
        negligible,
    }
}

/// The three additive parts of the combinatorial microcanonical entropy.
#[derive(Debug, Clone)]
pub struct MicroEntropyBreakdown {
    /// Log stub-matching count.
    pub matching: f64,
    /// Self-match correction `ln P_c`.
    pub self_match: f64,
    /// Duplicate-placement correction `ln P_ml`.
    pub multi_subgraph: MultiSubgraphCorrection,
}

impl MicroEntropyBreakdown {
    /// The entropy in nats.
    pub fn total(&self) -> f64 {
        self.matching + self.self_match + self.multi_subgraph.value
    }
}

/// Combinatorial microcanonical entropy: matching count plus both
/// corrections, with the per-term breakdown.
pub fn entropy_breakdown(spec: &MicroDegreeSpec) -> Result<MicroEntropyBreakdown> {
    Ok(MicroEntropyBreakdown {
        matching: log_stub_matchings(spec),
        self_match: log_self_match_correction(spec)?,
        multi_subgraph: log_multi_subgraph_correction(spec),
    })
}

/// Combinatorial microcanonical entropy in nats.
pub fn entropy_combinatorial(spec: &MicroDegreeSpec) -> Result<f64> {
    Ok(entropy_breakdown(spec)?.total())
}

/// Analytic microcanonical entropy: the conjugate canonical entropy at the
/// integer degrees minus the log Poisson masses of the constrained degrees,
/// with the correction series truncated at `l_max`.
pub fn entropy_analytic(spec: &MicroDegreeSpec, l_max: usize) -> Result<SeriesEntropy> {
    // effective real-valued degrees per orbit (proportional split of pooled
    // sequences), feeding the canonical series
    let mut value = 0.0;
    let mut last_term: f64 = 0.0;
    for (m, motif) in spec.motifs.iter().enumerate() {
        let mut orbit_degrees: Vec<Vec<f64>> = Vec::with_capacity(motif.symmetry().orbit_count());
        for i in 0..motif.symmetry().orbit_count() {
            let orbit = OrbitRef { motif: m, orbit: i };
            let g = spec.group_index(orbit);
            let share = spec.orbit_share(orbit);
            orbit_degrees.push(
                spec.groups[g]
                    .degrees
                    .iter()
                    .map(|&d| d as f64 * share)
                    .collect(),
            );
        }
        let series = motif_series_entropy(motif, spec.counts[m] as f64, &orbit_degrees, l_max)?;
        value += series.value;
        last_term = last_term.max(series.last_term);
    }
    for group in &spec.groups {
        for &d in &group.degrees {
            value += ln_poisson_at_mean(d);
        }
    }
    Ok(SeriesEntropy { value, last_term })
}

/// Entropy when only per-atom degrees `d_m(v) = sum_i d_{m,i}(v)` are
/// conserved, which removes the distinction between orbits of one atom.
pub fn entropy_per_atom_degrees(
    motifs: &[Motif],
    counts: &[u64],
    degrees: &[Vec<u64>],
) -> Result<f64> {
    if motifs.len() != counts.len() || motifs.len() != degrees.len() {
        return Err(Error::Spec(
            "counts and degree sequences must match the motif list".into(),
        ));
    }
    let mut total = 0.0;
    for ((motif, &n), seq) in motifs.iter().zip(counts).zip(degrees) {
        let order = motif.order() as u64;
        let stub_total: u64 = seq.iter().sum();
        if stub_total != order * n {
            return Err(Error::NotGraphical(format!(
                "degree sum {stub_total} does not equal |m| n = {}",
                order * n
            )));
        }
        if n == 0 {
            continue;
        }
        let nf = n as f64;
        let aut = motif.aut_size() as f64;
        total -= ln_factorial(n) + nf * aut.ln();
        total += ln_factorial(order * n);
        for &d in seq {
            total -= ln_factorial(d);
        }
        let excess =
            seq.iter().map(|&d| d * (d - d.min(1))).sum::<u64>() as f64 / stub_total as f64;
        if n >= 2 {
            total -= aut * nf * nf / 2.0 * (excess / stub_total as f64).powi(order as i32);
        }
        total -= (order as f64 - 1.0) / 2.0 * excess;
    }
    Ok(total)
}

/// Entropy when only the total number of atoms attached to each vertex is
/// conserved: a single degree sequence over all motifs.
pub fn entropy_total_degree(motifs: &[Motif], counts: &[u64], degrees: &[u64]) -> Result<f64> {
    if motifs.len() != counts.len() {
        return Err(Error::Spec("one count per motif required".into()));
    }
    let pooled: u64 = motifs
        .iter()
        .zip(counts)
        .map(|(m, &n)| m.order() as u64 * n)
        .sum();
    let stub_total: u64 = degrees.iter().sum();
    if stub_total != pooled {
        return Err(Error::NotGraphical(format!(
            "degree sum {stub_total} does not equal sum_m |m| n_m = {pooled}"
        )));
    }
    if pooled == 0 {
        return Ok(0.0);
    }
    let mut total = ln_factorial(pooled);
    for &d in degrees {
        total -= ln_factorial(d);
    }
    let excess = degrees.iter().map(|&d| d * (d - d.min(1))).sum::<u64>() as f64 / pooled as f64;
    for (motif, &n) in motifs.iter().zip(counts) {
        if n == 0 {
            continue;
        }
        let nf = n as f64;
        let aut = motif.aut_size() as f64;
        let order = motif.order() as f64;
        total -= ln_factorial(n) + nf * aut.ln();
        if n >= 2 {
            total -= aut * nf * nf / 2.0 * (excess / pooled as f64).powf(order);
        }
        total -= (order - 1.0) / 2.0 * (order * nf / pooled as f64) * excess;
    }
    Ok(total)
}

/// Exact per-vertex no-self-match probability (log) for one motif, given the
/// vertex's orbit degrees. Used for acceptance-rate diagnostics.
pub fn log_no_self_match_at_vertex(motif: &Motif, n: u64, vertex_degrees: &[u64]) -> f64 {
    let sym = motif.symmetry();
    debug_assert_eq!(vertex_degrees.len(), sym.orbit_count());
    let d_total: u64 = vertex_degrees.iter().sum();
    if d_total == 0 {
        return 0.0;
    }
    if d_total > n {
        return f64::NEG_INFINITY;
    }
    let mut log_p = ln_factorial(n) - ln_factorial(n - d_total);
    for (i, &d) in vertex_degrees.iter().enumerate() {
        let o = sym.orbit_size(i) as u64;
        log_p += ln_factorial(o * n - d) + d as f64 * (o as f64).ln() - ln_factorial(o * n);
    }
    log_p
}

/// Exact probability that one given placement is created at least twice by
/// the matching process, from the degrees of its vertices.
pub fn duplicate_probability(spec: &MicroDegreeSpec, placement: &Placement) -> Result<f64> {
    let m = placement.motif();
    let motif = &spec.motifs[m];
    let sym = motif.symmetry();
    let n = spec.counts[m];
    if n < 2 {
        return Ok(0.0);
    }
    let mut p = (sym.aut_size() as f64).powi(2) / 2.0;
    p *= (n * (n - 1)) as f64;
    for j in 0..sym.orbit_count() {
        let o = sym.orbit_size(j) as u64;
        p *= (ln_factorial(o * (n - 2)) - ln_factorial(o * n)).exp();
    }
    for (atom_vertex, &v) in placement.vertices().iter().enumerate() {
        let orbit = OrbitRef {
            motif: m,
            orbit: sym.orbit_of(atom_vertex),
        };
        let d = spec
            .orbit_degree(orbit, v as usize)
            .ok_or_else(|| Error::Spec("duplicate probability needs per-orbit degrees".into()))?;
        if d < 2 {
            return Ok(0.0);
        }
        p *= (d * (d - 1)) as f64;
    }
    Ok(p)
}

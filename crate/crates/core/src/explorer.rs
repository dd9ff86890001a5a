//! Exhaustive and randomized sweeps over seeds and win conditions on
//! small graphs, plus the named seed constructors the theorems run from.
//!
//! Sweeps enumerate every bit pattern as a seed, evolve it, and fold the
//! outcomes into a report. Seed ranges are processed in parallel and merged
//! by an order-independent reduction, so reports are identical across
//! worker counts.

use std::collections::BTreeMap;
use std::io::Write;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamics::{evolve, Configuration, DynamicsError, Semantics, Strategy};
use crate::graph::{Graph, VertexLabel};
use crate::rational::{ratio, Rational};

/// Exhaustive sweeps enumerate `2^|V|` seeds; beyond this the state space
/// is no longer desk-scale.
pub const SWEEP_VERTEX_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplorerError {
    #[error("graph has {0} vertices; exhaustive sweeps are capped at {SWEEP_VERTEX_CAP}")]
    TooLarge(usize),
    #[error("graph carries no {0} labels")]
    MissingLabels(&'static str),
    #[error("density {0} outside [0, 1]")]
    BadDensity(Rational),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

/// Which strategy seeds the smallest clique of a clique chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainSeedFlavor {
    /// Collaborators in the smallest clique, defectors elsewhere.
    CollaboratorCore,
    /// Defectors in the smallest clique, collaborators elsewhere.
    DefectorCore,
}

/// Seeds a clique chain: the level-0 clique takes the flavor strategy and
/// every other vertex the opposite one.
pub fn gjn_seed(g: &Graph, flavor: ChainSeedFlavor) -> Result<Configuration, ExplorerError> {
    let mut any = false;
    let core = match flavor {
        ChainSeedFlavor::CollaboratorCore => Strategy::Collaborator,
        ChainSeedFlavor::DefectorCore => Strategy::Defector,
    };
    let mut c = Configuration::all_defectors(g.vertex_count());
    for v in 0..g.vertex_count() {
        let Some(VertexLabel::CliqueLevel { level }) = g.label(v) else {
            return Err(ExplorerError::MissingLabels("clique-level"));
        };
        any = true;
        c.set(v, if *level == 0 { core } else { core.opposite() });
    }
    if !any {
        return Err(ExplorerError::MissingLabels("clique-level"));
    }
    Ok(c)
}

/// Seeds a clique prism: layer 0 collaborates, layers 1..=3 defect.
pub fn layered_seed(g: &Graph) -> Result<Configuration, ExplorerError> {
    let mut any = false;
    let mut c = Configuration::all_defectors(g.vertex_count());
    for v in 0..g.vertex_count() {
        let Some(VertexLabel::Layer { layer }) = g.label(v) else {
            return Err(ExplorerError::MissingLabels("layer"));
        };
        any = true;
        if *layer == 0 {
            c.set(v, Strategy::Collaborator);
        }
    }
    if !any {
        return Err(ExplorerError::MissingLabels("layer"));
    }
    Ok(c)
}

/// Fraction of collaborators in a configuration.
pub fn seed_density(c: &Configuration) -> Rational {
    ratio(c.collaborator_count() as i64, c.len() as i64)
}

/// Reproducible random configuration with exact collaborator probability
/// `density` per vertex.
pub fn random_configuration(
    g: &Graph,
    density: Rational,
    rng_seed: u64,
) -> Result<Configuration, ExplorerError> {
    if density < ratio(0, 1) || density > ratio(1, 1) {
        return Err(ExplorerError::BadDensity(density));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut c = Configuration::all_defectors(g.vertex_count());
    let (numer, denom) = (*density.numer() as u64, *density.denom() as u64);
    for v in 0..g.vertex_count() {
        // exact Bernoulli(density): uniform draw below numer/denom
        if rng.gen_range(0..denom) < numer {
            c.set(v, Strategy::Collaborator);
        }
    }
    Ok(c)
}

/// Seeded random connected graph on `n` vertices with edge probability `p`,
/// found by redrawing until connected.
pub fn random_connected_graph(n: usize, edge_prob: f64, rng_seed: u64) -> Graph {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(edge_prob) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges).expect("generated edges are simple");
        if g.is_connected() {
            return g;
        }
    }
}

/// Outcome statistics of one exhaustive sweep at a fixed win condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepStats {
    pub w: Rational,
    pub seed_count: u64,
    pub stable: u64,
    pub periodic: u64,
    /// Period -> number of seeds, periods greater than 1 only, so the
    /// histogram mass equals `periodic`.
    pub histogram: BTreeMap<usize, u64>,
    pub max_transient: usize,
    /// Seed attaining `max_transient` (smallest such seed index).
    pub transient_witness: String,
    /// Seed attaining the largest period, if any seed is periodic.
    pub period_witness: Option<String>,
    /// Seeds whose runs exhausted the step budget.
    pub inconclusive: Vec<String>,
}

#[derive(Default)]
struct PartialStats {
    stable: u64,
    periodic: u64,
    histogram: BTreeMap<usize, u64>,
    // (transient, seed index), largest transient with smallest seed
    max_transient: Option<(usize, u64)>,
    // (period, seed index), largest period with smallest seed
    max_period: Option<(usize, u64)>,
    inconclusive: Vec<u64>,
}

impl PartialStats {
    fn absorb_run(&mut self, seed: u64, transient: usize, period: usize) {
        if period == 1 {
            self.stable += 1;
        } else {
            self.periodic += 1;
            *self.histogram.entry(period).or_insert(0) += 1;
            self.max_period = merge_extremum(self.max_period, Some((period, seed)));
        }
        self.max_transient = merge_extremum(self.max_transient, Some((transient, seed)));
    }

    fn merge(mut self, other: PartialStats) -> PartialStats {
        self.stable += other.stable;
        self.periodic += other.periodic;
        for (period, count) in other.histogram {
            *self.histogram.entry(period).or_insert(0) += count;
        }
        self.max_transient = merge_extremum(self.max_transient, other.max_transient);
        self.max_period = merge_extremum(self.max_period, other.max_period);
        self.inconclusive.extend(other.inconclusive);
        self
    }
}

// Larger value wins; ties go to the smaller seed index so merges commute.
fn merge_extremum(a: Option<(usize, u64)>, b: Option<(usize, u64)>) -> Option<(usize, u64)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some((va, sa)), Some((vb, sb))) => {
            if vb > va || (vb == va && sb < sa) {
                Some((vb, sb))
            } else {
                Some((va, sa))
            }
        }
    }
}

/// Evolves every one of the `2^|V|` seeds of `g` under win condition `w`
/// and folds the outcomes into sweep statistics.
///
/// Seeds run in parallel over disjoint ranges; the merge is commutative
/// and associative, so the report does not depend on worker count.
pub fn enumerate_all(
    g: &Graph,
    w: Rational,
    sem: Semantics,
    budget: usize,
) -> Result<SweepStats, ExplorerError> {
    let n = g.vertex_count();
    if n > SWEEP_VERTEX_CAP {
        return Err(ExplorerError::TooLarge(n));
    }
    crate::dynamics::validate_win_condition(w)?;
    let seed_count = 1u64 << n;
    let partial = (0..seed_count)
        .into_par_iter()
        .try_fold(PartialStats::default, |mut acc, seed| {
            let c0 = Configuration::from_bits(n, seed);
            match evolve(g, &c0, w, sem, budget) {
                Ok(report) => acc.absorb_run(seed, report.transient, report.period),
                Err(DynamicsError::BudgetExhausted { .. }) => acc.inconclusive.push(seed),
                Err(other) => return Err(ExplorerError::from(other)),
            }
            Ok(acc)
        })
        .try_reduce(PartialStats::default, |a, b| Ok(a.merge(b)))?;

    let seed_string = |seed: u64| Configuration::from_bits(n, seed).to_string();
    let mut inconclusive: Vec<u64> = partial.inconclusive;
    inconclusive.sort_unstable();
    Ok(SweepStats {
        w,
        seed_count,
        stable: partial.stable,
        periodic: partial.periodic,
        histogram: partial.histogram,
        max_transient: partial.max_transient.map_or(0, |(t, _)| t),
        transient_witness: partial
            .max_transient
            .map_or_else(String::new, |(_, s)| seed_string(s)),
        period_witness: partial.max_period.map(|(_, s)| seed_string(s)),
        inconclusive: inconclusive.into_iter().map(seed_string).collect(),
    })
}

/// Sweep of one graph across several win conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub graph_id: String,
    pub semantics: Semantics,
    pub runs: Vec<SweepStats>,
}

/// Runs `enumerate_all` for every listed win condition.
pub fn sweep(
    g: &Graph,
    graph_id: &str,
    ws: &[Rational],
    sem: Semantics,
    budget: usize,
) -> Result<SweepReport, ExplorerError> {
    let runs = ws
        .iter()
        .map(|&w| enumerate_all(g, w, sem, budget))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SweepReport {
        graph_id: graph_id.to_string(),
        semantics: sem,
        runs,
    })
}

/// Writes one `seed,transient,period` row per seed, in seed order.
/// Inconclusive seeds get empty transient/period fields.
pub fn sweep_csv(
    g: &Graph,
    w: Rational,
    sem: Semantics,
    budget: usize,
    out: &mut impl Write,
) -> Result<(), std::io::Error> {
    let n = g.vertex_count();
    assert!(n <= SWEEP_VERTEX_CAP);
    writeln!(out, "seed,transient,period")?;
    for seed in 0..1u64 << n {
        let c0 = Configuration::from_bits(n, seed);
        match evolve(g, &c0, w, sem, budget) {
            Ok(report) => writeln!(out, "{c0},{},{}", report.transient, report.period)?,
            Err(_) => writeln!(out, "{c0},,")?,
        }
    }
    Ok(())
}

/// Sweep report rendered the way reports are written.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepReportJson {
    pub graph_id: String,
    pub semantics: String,
    pub runs: Vec<SweepStatsJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepStatsJson {
    pub w: String,
    pub seed_count: u64,
    pub stable: u64,
    pub periodic: u64,
    pub histogram: BTreeMap<usize, u64>,
    pub max_transient: usize,
    pub transient_witness: String,
    pub period_witness: Option<String>,
    pub inconclusive: Vec<String>,
}

impl SweepReportJson {
    pub fn new(report: &SweepReport) -> Self {
        SweepReportJson {
            graph_id: report.graph_id.clone(),
            semantics: report.semantics.to_string(),
            runs: report
                .runs
                .iter()
                .map(|r| SweepStatsJson {
                    w: r.w.to_string(),
                    seed_count: r.seed_count,
                    stable: r.stable,
                    periodic: r.periodic,
                    histogram: r.histogram.clone(),
                    max_transient: r.max_transient,
                    transient_witness: r.transient_witness.clone(),
                    period_witness: r.period_witness.clone(),
                    inconclusive: r.inconclusive.clone(),
                })
                .collect(),
        }
    }
}

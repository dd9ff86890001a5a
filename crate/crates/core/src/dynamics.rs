//! The power-index process: exact vertex powers, the synchronous update,
//! trajectory evolution with cycle detection, and dominance classification.
//!
//! A configuration assigns every vertex one of two strategies. Each round,
//! every vertex looks at the closed neighbourhood `N[v]`, finds the maximum
//! power there, and adopts the strategy of the maximising vertices; if both
//! strategies attain the maximum, the vertex keeps its own. Powers are exact
//! rationals: a collaborator holds `1/|N_C[v]|` exactly when its side clears
//! the win condition `w`, a defector holds `1/|N_D[v]|` exactly when the
//! collaborator share does not, and losers hold zero.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::rational::{ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("win condition {0} outside [1/2, 1)")]
    InvalidWinCondition(Rational),
    #[error("configuration has {config} strategies but the graph has {graph} vertices")]
    LengthMismatch { config: usize, graph: usize },
    #[error("invalid vertex {0}")]
    InvalidVertex(usize),
    #[error("bad strategy character `{0}`; expected C or D")]
    BadStrategyChar(char),
    #[error("step budget of {budget} exhausted before the orbit repeated")]
    BudgetExhausted { budget: usize },
    #[error("voter count {0} outside the brute-force range 2..=10")]
    VoterCountOutOfRange(usize),
    #[error("quota {quota} outside 1..={voters}")]
    QuotaOutOfRange { quota: usize, voters: usize },
}

/// One of the two strategies a vertex may hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Collaborator,
    Defector,
}

impl Strategy {
    pub fn opposite(self) -> Self {
        match self {
            Strategy::Collaborator => Strategy::Defector,
            Strategy::Defector => Strategy::Collaborator,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Strategy::Collaborator => 'C',
            Strategy::Defector => 'D',
        }
    }
}

/// Threshold behaviour when a collaborator share lands exactly on `w`.
///
/// Strict mode follows the formal rule (collaborators need a share
/// strictly above `w`); inclusive mode lets collaborators win at equality
/// while defectors keep their `<= w` test, so at the boundary both sides
/// can hold power, though never at the same vertex.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    #[default]
    Strict,
    Inclusive,
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Strict => "strict",
            Semantics::Inclusive => "inclusive",
        })
    }
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(Semantics::Strict),
            "inclusive" => Ok(Semantics::Inclusive),
            other => Err(format!("unknown semantics `{other}`; use strict or inclusive")),
        }
    }
}

/// Total strategy assignment, bit-packed; bit set means collaborator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    len: usize,
    words: Vec<u64>,
}

impl Configuration {
    pub fn all_defectors(len: usize) -> Self {
        Configuration {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn all_collaborators(len: usize) -> Self {
        let mut c = Self::all_defectors(len);
        for v in 0..len {
            c.set(v, Strategy::Collaborator);
        }
        c
    }

    /// Builds a configuration from the low `len` bits of `bits`
    /// (bit `v` set means vertex `v` collaborates). Only meaningful for
    /// `len <= 64`; exhaustive sweeps enumerate seeds this way.
    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= 64, "bit seeds cover at most 64 vertices");
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        Configuration {
            len,
            words: vec![bits & mask],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, v: usize) -> Strategy {
        if self.is_collaborator(v) {
            Strategy::Collaborator
        } else {
            Strategy::Defector
        }
    }

    pub fn is_collaborator(&self, v: usize) -> bool {
        debug_assert!(v < self.len);
        self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn set(&mut self, v: usize, s: Strategy) {
        debug_assert!(v < self.len);
        let bit = 1u64 << (v % 64);
        match s {
            Strategy::Collaborator => self.words[v / 64] |= bit,
            Strategy::Defector => self.words[v / 64] &= !bit,
        }
    }

    /// Swaps every strategy.
    pub fn complement(&self) -> Self {
        let mut out = self.clone();
        for w in &mut out.words {
            *w = !*w;
        }
        out.mask_tail();
        out
    }

    pub fn collaborator_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn strategies(&self) -> impl Iterator<Item = Strategy> + '_ {
        (0..self.len).map(|v| self.get(v))
    }

    pub fn is_all(&self, s: Strategy) -> bool {
        match s {
            Strategy::Collaborator => self.collaborator_count() == self.len,
            Strategy::Defector => self.collaborator_count() == 0,
        }
    }

    /// Vertices whose strategy differs from `other`.
    pub fn diff(&self, other: &Self) -> Vec<usize> {
        assert_eq!(self.len, other.len);
        (0..self.len).filter(|&v| self.get(v) != other.get(v)).collect()
    }

    // Bits past `len` must stay clear or Eq/Hash would tell equal
    // configurations apart.
    fn mask_tail(&mut self) {
        let used = self.len % 64;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.strategies() {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration({self})")
    }
}

impl FromStr for Configuration {
    type Err = DynamicsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut c = Configuration::all_defectors(s.chars().count());
        for (v, ch) in s.chars().enumerate() {
            match ch {
                'C' => c.set(v, Strategy::Collaborator),
                'D' => {}
                other => return Err(DynamicsError::BadStrategyChar(other)),
            }
        }
        Ok(c)
    }
}

/// `w` must lie in `[1/2, 1)`.
pub fn validate_win_condition(w: Rational) -> Result<(), DynamicsError> {
    if w < ratio(1, 2) || w >= ratio(1, 1) {
        return Err(DynamicsError::InvalidWinCondition(w));
    }
    Ok(())
}

fn validate_pair(g: &Graph, c: &Configuration) -> Result<(), DynamicsError> {
    if c.len() != g.vertex_count() {
        return Err(DynamicsError::LengthMismatch {
            config: c.len(),
            graph: g.vertex_count(),
        });
    }
    Ok(())
}

/// `|N_C[v]|` for every vertex: collaborators in the closed neighbourhood.
pub fn collaborator_counts(g: &Graph, c: &Configuration) -> Vec<usize> {
    (0..g.vertex_count())
        .map(|v| {
            let own = usize::from(c.is_collaborator(v));
            own + g.neighbors(v).iter().filter(|&&u| c.is_collaborator(u)).count()
        })
        .collect()
}

fn power_from_counts(
    closed: usize,
    collaborators: usize,
    own: Strategy,
    w: Rational,
    sem: Semantics,
) -> Rational {
    // Integer cross-multiplication keeps the comparison exact and cheap:
    // share > w  <=>  collaborators * denom > numer * closed.
    let lhs = collaborators as i64 * w.denom();
    let rhs = w.numer() * closed as i64;
    match own {
        Strategy::Collaborator => {
            let wins = match sem {
                Semantics::Strict => lhs > rhs,
                Semantics::Inclusive => lhs >= rhs,
            };
            if wins {
                ratio(1, collaborators as i64)
            } else {
                ratio(0, 1)
            }
        }
        Strategy::Defector => {
            if lhs <= rhs {
                ratio(1, (closed - collaborators) as i64)
            } else {
                ratio(0, 1)
            }
        }
    }
}

/// Power of a single vertex under configuration `c` and win condition `w`.
pub fn power(
    g: &Graph,
    c: &Configuration,
    w: Rational,
    v: usize,
    sem: Semantics,
) -> Result<Rational, DynamicsError> {
    validate_win_condition(w)?;
    validate_pair(g, c)?;
    if v >= g.vertex_count() {
        return Err(DynamicsError::InvalidVertex(v));
    }
    let own = usize::from(c.is_collaborator(v));
    let collaborators =
        own + g.neighbors(v).iter().filter(|&&u| c.is_collaborator(u)).count();
    Ok(power_from_counts(g.closed_size(v), collaborators, c.get(v), w, sem))
}

/// Powers of every vertex in one pass over the adjacency lists.
pub fn power_all(
    g: &Graph,
    c: &Configuration,
    w: Rational,
    sem: Semantics,
) -> Result<Vec<Rational>, DynamicsError> {
    validate_win_condition(w)?;
    validate_pair(g, c)?;
    let counts = collaborator_counts(g, c);
    Ok((0..g.vertex_count())
        .map(|v| power_from_counts(g.closed_size(v), counts[v], c.get(v), w, sem))
        .collect())
}

/// One synchronous round: every vertex adopts the strategy of the
/// maximum-power vertices in its closed neighbourhood, keeping its own
/// when both strategies attain the maximum.
pub fn step(
    g: &Graph,
    c: &Configuration,
    w: Rational,
    sem: Semantics,
) -> Result<Configuration, DynamicsError> {
    let powers = power_all(g, c, w, sem)?;
    let mut next = c.clone();
    for v in 0..g.vertex_count() {
        let mut best = powers[v];
        let mut best_c = c.is_collaborator(v);
        let mut best_d = !best_c;
        for &u in g.neighbors(v) {
            let p = powers[u];
            if p > best {
                best = p;
                best_c = c.is_collaborator(u);
                best_d = !best_c;
            } else if p == best {
                if c.is_collaborator(u) {
                    best_c = true;
                } else {
                    best_d = true;
                }
            }
        }
        if best_c != best_d {
            next.set(
                v,
                if best_c {
                    Strategy::Collaborator
                } else {
                    Strategy::Defector
                },
            );
        }
        // both strategies at the maximum: v retains its strategy
    }
    Ok(next)
}

/// Full record of one run: every configuration up to and including the
/// first repeat, plus where the orbit closes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectoryReport {
    /// `configs[t]` is the configuration after `t` rounds; the final entry
    /// repeats `configs[transient]`.
    pub configs: Vec<Configuration>,
    /// Least index on the cycle.
    pub transient: usize,
    /// Minimal period; 1 means the orbit reached a fixed point.
    pub period: usize,
    pub w: Rational,
    pub semantics: Semantics,
}

impl TrajectoryReport {
    pub fn is_stable(&self) -> bool {
        self.period == 1
    }

    /// The configuration the orbit settles into (first point on the cycle).
    pub fn settled(&self) -> &Configuration {
        &self.configs[self.transient]
    }
}

/// Iterates `step` until a configuration repeats, keyed by full state.
///
/// The first repeat pins both the transient and the minimal period, since
/// every earlier configuration is pairwise distinct. Exceeding `max_steps`
/// is reported as an explicit error, never as a silently truncated orbit.
pub fn evolve(
    g: &Graph,
    c0: &Configuration,
    w: Rational,
    sem: Semantics,
    max_steps: usize,
) -> Result<TrajectoryReport, DynamicsError> {
    validate_win_condition(w)?;
    validate_pair(g, c0)?;
    let mut configs = vec![c0.clone()];
    let mut seen: HashMap<Configuration, usize> = HashMap::new();
    seen.insert(c0.clone(), 0);
    for t in 1..=max_steps {
        let next = step(g, configs.last().unwrap(), w, sem)?;
        if let Some(&first) = seen.get(&next) {
            configs.push(next);
            return Ok(TrajectoryReport {
                configs,
                transient: first,
                period: t - first,
                w,
                semantics: sem,
            });
        }
        seen.insert(next.clone(), t);
        configs.push(next);
    }
    Err(DynamicsError::BudgetExhausted { budget: max_steps })
}

/// `2^n` capped at `usize::MAX`: an upper bound on distinct configurations,
/// hence on any transient-plus-period.
pub fn state_space_bound(vertex_count: usize) -> usize {
    if vertex_count >= usize::BITS as usize - 1 {
        usize::MAX
    } else {
        1usize << vertex_count
    }
}

/// Outcome class of a completed run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    CollaboratorDominant,
    DefectorDominant,
    MixedStable,
    Periodic,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::CollaboratorDominant => "collaborator_dominant",
            Classification::DefectorDominant => "defector_dominant",
            Classification::MixedStable => "mixed_stable",
            Classification::Periodic => "periodic",
        })
    }
}

/// Classifies a completed run: periodic, consensus on either strategy,
/// or a mixed fixed point.
pub fn classify_dominance(g: &Graph, report: &TrajectoryReport) -> Classification {
    debug_assert_eq!(report.settled().len(), g.vertex_count());
    if report.period > 1 {
        return Classification::Periodic;
    }
    let fixed = report.settled();
    if fixed.is_all(Strategy::Collaborator) {
        Classification::CollaboratorDominant
    } else if fixed.is_all(Strategy::Defector) {
        Classification::DefectorDominant
    } else {
        Classification::MixedStable
    }
}

/// Classic pivotal-voter index for `n` voters of weight one and a quota:
/// enumerates all `n!` orderings and counts, per voter, the orderings in
/// which their vote carries the running total to the quota.
pub fn shapley_shubik_uniform(
    n_voters: usize,
    quota: usize,
) -> Result<Vec<Rational>, DynamicsError> {
    if !(2..=10).contains(&n_voters) {
        return Err(DynamicsError::VoterCountOutOfRange(n_voters));
    }
    if quota == 0 || quota > n_voters {
        return Err(DynamicsError::QuotaOutOfRange {
            quota,
            voters: n_voters,
        });
    }
    let mut pivotal = vec![0u64; n_voters];
    let mut orderings = 0u64;
    for perm in (0..n_voters).permutations(n_voters) {
        orderings += 1;
        let mut total = 0usize;
        for &voter in &perm {
            total += 1;
            if total >= quota {
                pivotal[voter] += 1;
                break;
            }
        }
    }
    Ok(pivotal
        .into_iter()
        .map(|count| ratio(count as i64, orderings as i64))
        .collect())
}

/// One line of a run trace: the configuration at time `t`, the powers it
/// induces, and which vertices changed relative to time `t - 1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceRecord {
    pub t: usize,
    pub config: String,
    pub powers: Vec<String>,
    pub changed: Vec<usize>,
}

/// Replays a report into trace records.
pub fn trace_records(g: &Graph, report: &TrajectoryReport) -> Result<Vec<TraceRecord>, DynamicsError> {
    let mut records = Vec::with_capacity(report.configs.len());
    for (t, config) in report.configs.iter().enumerate() {
        let powers = power_all(g, config, report.w, report.semantics)?;
        records.push(TraceRecord {
            t,
            config: config.to_string(),
            powers: powers.iter().map(|p| p.to_string()).collect(),
            changed: if t == 0 {
                Vec::new()
            } else {
                config.diff(&report.configs[t - 1])
            },
        });
    }
    Ok(records)
}

/// Run summary in the shape reports are written in.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub semantics: String,
    pub w: String,
    pub transient: usize,
    pub period: usize,
    pub classification: String,
}

impl RunReport {
    pub fn new(g: &Graph, report: &TrajectoryReport) -> Self {
        RunReport {
            semantics: report.semantics.to_string(),
            w: report.w.to_string(),
            transient: report.transient,
            period: report.period,
            classification: classify_dominance(g, report).to_string(),
        }
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::{bowtie, config, tadpole};
    use super::*;
    use super::Strategy;
    use crate::graph::{make_complete, make_cycle, make_path};
    use proptest::prelude::*;

    fn half() -> Rational {
        ratio(1, 2)
    }

    #[test]
    fn configuration_round_trip_and_errors() {
        let c = config("CCDDDD");
        assert_eq!(c.to_string(), "CCDDDD");
        assert_eq!(c.collaborator_count(), 2);
        assert!(matches!(
            "CXD".parse::<Configuration>(),
            Err(DynamicsError::BadStrategyChar('X'))
        ));
    }

    #[test]
    fn complement_is_involutive_and_total() {
        let c = config("CCDDDD");
        assert_eq!(c.complement().to_string(), "DDCCCC");
        assert_eq!(c.complement().complement(), c);
        assert!(Configuration::all_collaborators(5)
            .complement()
            .is_all(Strategy::Defector));
    }

    #[test]
    fn tail_and_square_powers() {
        let g = tadpole();
        let c = config("CCDDDD");
        let powers = power_all(&g, &c, half(), Semantics::Strict).unwrap();
        let expected: Vec<Rational> = [(1, 2), (1, 2), (1, 3), (1, 3), (1, 3), (1, 3)]
            .iter()
            .map(|&(n, d)| ratio(n, d))
            .collect();
        assert_eq!(powers, expected);
        assert_eq!(
            power(&g, &c, half(), 0, Semantics::Strict).unwrap(),
            ratio(1, 2)
        );
    }

    #[test]
    fn single_collaborator_holds_full_power() {
        let g = make_complete(1).unwrap();
        let c = config("C");
        for w in [half(), ratio(3, 4), ratio(9, 10)] {
            assert_eq!(power(&g, &c, w, 0, Semantics::Strict).unwrap(), ratio(1, 1));
        }
    }

    #[test]
    fn unanimous_clique_splits_power() {
        let g = make_complete(4).unwrap();
        let c = Configuration::all_collaborators(4);
        let powers = power_all(&g, &c, half(), Semantics::Strict).unwrap();
        assert!(powers.iter().all(|&p| p == ratio(1, 4)));
    }

    #[test]
    fn chain_clique_entry_power() {
        // second-level vertex of a doubling clique chain with j = 3:
        // one collaborator among 2j + 3 closed neighbours, so the defector
        // side shares power 2j + 2 ways.
        let g = crate::graph::make_gjn(3, 2).unwrap();
        let mut c = Configuration::all_defectors(21);
        for v in 0..3 {
            c.set(v, Strategy::Collaborator);
        }
        assert_eq!(
            power(&g, &c, half(), 3, Semantics::Strict).unwrap(),
            ratio(1, 8)
        );
    }

    #[test]
    fn bowtie_power_vector() {
        let g = bowtie();
        let c = config("DDDCC");
        let powers = power_all(&g, &c, half(), Semantics::Strict).unwrap();
        let expected: Vec<Rational> = [(1, 3), (1, 3), (1, 3), (1, 2), (1, 2)]
            .iter()
            .map(|&(n, d)| ratio(n, d))
            .collect();
        assert_eq!(powers, expected);
    }

    #[test]
    fn step_examples() {
        let g = tadpole();
        let c1 = step(&g, &config("CCDDDD"), half(), Semantics::Strict).unwrap();
        assert_eq!(c1.to_string(), "CCCDDD");

        let all_d = Configuration::all_defectors(6);
        assert_eq!(step(&g, &all_d, half(), Semantics::Strict).unwrap(), all_d);

        let b = bowtie();
        let c1 = step(&b, &config("DDDCC"), half(), Semantics::Strict).unwrap();
        assert_eq!(c1.to_string(), "DDCCC");
    }

    #[test]
    fn mode_split_at_the_boundary() {
        // After one step the tail example puts a collaborator share exactly
        // at w = 1/2; the two threshold modes then disagree.
        let g = tadpole();
        let strict = evolve(&g, &config("CCDDDD"), half(), Semantics::Strict, 1 << 6).unwrap();
        assert_eq!((strict.transient, strict.period), (0, 2));
        assert_eq!(strict.configs[2], config("CCDDDD"));

        let inclusive =
            evolve(&g, &config("CCDDDD"), half(), Semantics::Inclusive, 1 << 6).unwrap();
        assert_eq!((inclusive.transient, inclusive.period), (1, 1));
        assert_eq!(inclusive.settled(), &config("CCCDDD"));
    }

    #[test]
    fn bowtie_orbit_and_classification() {
        let g = bowtie();
        let report = evolve(&g, &config("DDDCC"), half(), Semantics::Strict, 1 << 5).unwrap();
        assert_eq!((report.transient, report.period), (0, 2));
        assert_eq!(classify_dominance(&g, &report), Classification::Periodic);

        let all_c = evolve(
            &g,
            &Configuration::all_collaborators(5),
            half(),
            Semantics::Strict,
            8,
        )
        .unwrap();
        assert_eq!((all_c.transient, all_c.period), (0, 1));
        assert_eq!(
            classify_dominance(&g, &all_c),
            Classification::CollaboratorDominant
        );

        let all_d = evolve(&g, &Configuration::all_defectors(5), half(), Semantics::Strict, 8)
            .unwrap();
        assert_eq!(classify_dominance(&g, &all_d), Classification::DefectorDominant);
    }

    #[test]
    fn budget_exhaustion_is_loud() {
        let g = bowtie();
        let err = evolve(&g, &config("DDDCC"), half(), Semantics::Strict, 1).unwrap_err();
        assert_eq!(err, DynamicsError::BudgetExhausted { budget: 1 });
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = bowtie();
        assert!(matches!(
            power_all(&g, &config("DDDCC"), ratio(1, 3), Semantics::Strict),
            Err(DynamicsError::InvalidWinCondition(_))
        ));
        assert!(matches!(
            power_all(&g, &config("DD"), half(), Semantics::Strict),
            Err(DynamicsError::LengthMismatch { .. })
        ));
        assert!(matches!(
            power(&g, &config("DDDCC"), half(), 9, Semantics::Strict),
            Err(DynamicsError::InvalidVertex(9))
        ));
    }

    #[test]
    fn pivotal_index_is_uniform() {
        assert_eq!(
            shapley_shubik_uniform(3, 2).unwrap(),
            vec![ratio(1, 3); 3]
        );
        assert_eq!(
            shapley_shubik_uniform(4, 3).unwrap(),
            vec![ratio(1, 4); 4]
        );
        for quota in 1..=5 {
            let powers = shapley_shubik_uniform(5, quota).unwrap();
            let total: Rational = powers.iter().copied().sum();
            assert_eq!(total, ratio(1, 1));
        }
        assert!(matches!(
            shapley_shubik_uniform(1, 1),
            Err(DynamicsError::VoterCountOutOfRange(1))
        ));
        assert!(matches!(
            shapley_shubik_uniform(4, 5),
            Err(DynamicsError::QuotaOutOfRange { .. })
        ));
    }

    #[test]
    fn trace_records_follow_the_orbit() {
        let g = bowtie();
        let report = evolve(&g, &config("DDDCC"), half(), Semantics::Strict, 16).unwrap();
        let records = trace_records(&g, &report).unwrap();
        assert_eq!(records.len(), report.configs.len());
        assert_eq!(records[0].changed, Vec::<usize>::new());
        assert_eq!(records[0].powers[3], "1/2");
        assert_eq!(records[1].config, "DDCCC");
        assert_eq!(records[1].changed, vec![2]);
    }

    proptest! {
        #[test]
        fn determinism(seed in 0u64..200) {
            let g = make_cycle(7).unwrap();
            let c = Configuration::from_bits(7, seed % 128);
            let a = evolve(&g, &c, half(), Semantics::Strict, 1 << 7).unwrap();
            let b = evolve(&g, &c, half(), Semantics::Strict, 1 << 7).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn locality_within_distance_two(bits in 0u64..1024) {
            // flipping a strategy at distance >= 3 cannot affect a vertex
            // in one step
            let g = make_path(10).unwrap();
            let c = Configuration::from_bits(10, bits);
            let after = step(&g, &c, half(), Semantics::Strict).unwrap();
            for far in 0..10usize {
                let mut mutated = c.clone();
                mutated.set(far, c.get(far).opposite());
                let after_mutated = step(&g, &mutated, half(), Semantics::Strict).unwrap();
                let dist = g.bfs_distances(far);
                for v in 0..10 {
                    if dist[v].unwrap() >= 3 {
                        prop_assert_eq!(after.get(v), after_mutated.get(v));
                    }
                }
            }
        }

        #[test]
        fn parity_symmetry_on_odd_closed_neighbourhoods(bits in 0u64..512, n in 3usize..8) {
            // every cycle vertex has |N[v]| = 3; at w = 1/2 the update
            // commutes with swapping the two strategies
            let g = make_cycle(n).unwrap();
            let c = Configuration::from_bits(n, bits & ((1 << n) - 1));
            let stepped = step(&g, &c, half(), Semantics::Strict).unwrap();
            let swapped = step(&g, &c.complement(), half(), Semantics::Strict).unwrap();
            prop_assert_eq!(stepped.complement(), swapped);
        }

        #[test]
        fn powers_are_unit_fractions_of_winning_sides(bits in 0u64..2048) {
            let g = make_cycle(11).unwrap();
            let c = Configuration::from_bits(11, bits & 0x7ff);
            let powers = power_all(&g, &c, half(), Semantics::Strict).unwrap();
            for (v, p) in powers.iter().enumerate() {
                let closed = g.closed_size(v) as i64;
                prop_assert!(
                    *p == ratio(0, 1)
                        || (*p.numer() == 1 && *p.denom() >= 1 && *p.denom() <= closed)
                );
            }
        }
    }
}

//! The win partition: the finitely many intervals of `[1/2, 1)` on which
//! the process evolves identically, with representatives and a lockstep
//! equivalence checker.
//!
//! Per vertex, the possible winning shares are `i / |N[v]|` for
//! `ceil(|N[v]| / 2) <= i <= |N[v]|`. Collecting those over the graph and
//! cutting `[1/2, 1)` at every value strictly inside the interval yields
//! half-open parts; any two win conditions in the same part make every
//! threshold test come out the same, so the trajectories agree.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamics::{step, Configuration, DynamicsError, Semantics};
use crate::graph::Graph;
use crate::rational::{ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("win condition {0} outside [1/2, 1)")]
    OutOfRange(Rational),
    #[error("part boundaries are half-open on the left; inclusive semantics does not respect them")]
    InclusiveModeUnsupported,
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

/// Possible winning shares at vertex `v`: `{ i/|N[v]| : |N[v]|/2 <= i <= |N[v]| }`.
pub fn winning_shares(g: &Graph, v: usize) -> BTreeSet<Rational> {
    let closed = g.closed_size(v) as i64;
    ((closed + 1) / 2..=closed).map(|i| ratio(i, closed)).collect()
}

/// Ordered partition of `[1/2, 1)` into half-open parts `[lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WinPartition {
    /// Cut points, strictly between 1/2 and 1, ascending.
    breakpoints: Vec<Rational>,
}

impl WinPartition {
    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn part_count(&self) -> usize {
        self.breakpoints.len() + 1
    }

    /// The half-open parts `[lo, hi)` in order; the last part ends at 1.
    pub fn parts(&self) -> Vec<(Rational, Rational)> {
        let mut cuts = vec![ratio(1, 2)];
        cuts.extend_from_slice(&self.breakpoints);
        cuts.push(ratio(1, 1));
        cuts.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Included lower bound of every part.
    pub fn representatives(&self) -> Vec<Rational> {
        let mut reps = vec![ratio(1, 2)];
        reps.extend_from_slice(&self.breakpoints);
        reps
    }

    /// Representatives of the last two parts (one, if the partition is a
    /// single part).
    pub fn last_two_representatives(&self) -> Vec<Rational> {
        let reps = self.representatives();
        let start = reps.len().saturating_sub(2);
        reps[start..].to_vec()
    }

    /// Index of the part containing `w`.
    pub fn part_of(&self, w: Rational) -> Result<usize, PartitionError> {
        if w < ratio(1, 2) || w >= ratio(1, 1) {
            return Err(PartitionError::OutOfRange(w));
        }
        Ok(self.breakpoints.partition_point(|&b| b <= w))
    }
}

/// Computes the win partition of `g`.
///
/// The endpoints 1/2 and 1 never become cut points even when some vertex
/// admits them as winning shares; keeping them out is what makes every
/// part nonempty and the first part start at 1/2.
pub fn win_partition(g: &Graph) -> WinPartition {
    let mut shares: BTreeSet<Rational> = BTreeSet::new();
    for v in 0..g.vertex_count() {
        shares.extend(winning_shares(g, v));
    }
    let breakpoints = shares
        .into_iter()
        .filter(|&s| s > ratio(1, 2) && s < ratio(1, 1))
        .collect();
    WinPartition { breakpoints }
}

/// Verdict of a lockstep comparison of two win conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceVerdict {
    Equal,
    Diverged { step: usize },
}

/// Runs the process under `w1` and `w2` from the same seed and compares
/// configurations step by step.
///
/// Returns `Equal` once the shared orbit closes on itself (both runs are
/// then locked together forever) or after `horizon` steps without a
/// difference; with `horizon >= 2^|V|` the orbit always closes first, so
/// the verdict is definitive. Only strict semantics is accepted: parts are
/// half-open on the left precisely because the strict tests are constant
/// on them.
pub fn verify_partition_equivalence(
    g: &Graph,
    c0: &Configuration,
    w1: Rational,
    w2: Rational,
    sem: Semantics,
    horizon: usize,
) -> Result<EquivalenceVerdict, PartitionError> {
    if sem == Semantics::Inclusive {
        return Err(PartitionError::InclusiveModeUnsupported);
    }
    let mut seen: HashSet<Configuration> = HashSet::new();
    let mut current = c0.clone();
    for t in 1..=horizon {
        if !seen.insert(current.clone()) {
            return Ok(EquivalenceVerdict::Equal);
        }
        let a = step(g, &current, w1, sem)?;
        let b = step(g, &current, w2, sem)?;
        if a != b {
            return Ok(EquivalenceVerdict::Diverged { step: t });
        }
        current = a;
    }
    Ok(EquivalenceVerdict::Equal)
}

/// Partition rendered the way reports expect it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionReport {
    pub breakpoints: Vec<String>,
    pub parts: Vec<PartReport>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartReport {
    pub lo: String,
    pub hi: String,
    pub representative: String,
}

impl PartitionReport {
    pub fn new(partition: &WinPartition) -> Self {
        PartitionReport {
            breakpoints: partition.breakpoints().iter().map(|b| b.to_string()).collect(),
            parts: partition
                .parts()
                .into_iter()
                .map(|(lo, hi)| PartReport {
                    lo: lo.to_string(),
                    hi: hi.to_string(),
                    representative: lo.to_string(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::fixtures::{bowtie, config};
    use crate::graph::{make_complete, make_cycle, make_path, make_petersen};

    #[test]
    fn winning_shares_by_degree() {
        let c5 = make_cycle(5).unwrap();
        assert_eq!(
            winning_shares(&c5, 0).into_iter().collect::<Vec<_>>(),
            vec![ratio(2, 3), ratio(1, 1)]
        );

        let petersen = make_petersen();
        assert_eq!(
            winning_shares(&petersen, 0).into_iter().collect::<Vec<_>>(),
            vec![ratio(1, 2), ratio(3, 4), ratio(1, 1)]
        );

        let isolated = crate::graph::Graph::from_edges(1, []).unwrap();
        assert_eq!(
            winning_shares(&isolated, 0).into_iter().collect::<Vec<_>>(),
            vec![ratio(1, 1)]
        );
    }

    #[test]
    fn partitions_of_small_graphs() {
        let c5 = win_partition(&make_cycle(5).unwrap());
        assert_eq!(c5.breakpoints(), &[ratio(2, 3)]);
        assert_eq!(
            c5.parts(),
            vec![(ratio(1, 2), ratio(2, 3)), (ratio(2, 3), ratio(1, 1))]
        );

        let petersen = win_partition(&make_petersen());
        assert_eq!(petersen.breakpoints(), &[ratio(3, 4)]);

        // K_2 only admits shares 1/2 and 1, neither of which cuts.
        let k2 = win_partition(&make_complete(2).unwrap());
        assert_eq!(k2.part_count(), 1);
        assert_eq!(k2.parts(), vec![(ratio(1, 2), ratio(1, 1))]);
    }

    #[test]
    fn regular_partition_size_formula() {
        for (k, graph) in [
            (2usize, make_cycle(6).unwrap()),
            (3, make_petersen()),
            (4, make_complete(5).unwrap()),
        ] {
            let closed = (k + 1) as i64;
            let interior = ((closed + 1) / 2..closed)
                .map(|i| ratio(i, closed))
                .filter(|&s| s > ratio(1, 2) && s < ratio(1, 1))
                .count();
            assert_eq!(win_partition(&graph).part_count(), interior + 1);
        }
    }

    #[test]
    fn part_lookup() {
        let p = win_partition(&make_cycle(5).unwrap());
        assert_eq!(p.part_of(ratio(3, 5)).unwrap(), 0);
        assert_eq!(p.part_of(ratio(2, 3)).unwrap(), 1);
        assert_eq!(p.part_of(ratio(1, 2)).unwrap(), 0);
        assert!(matches!(
            p.part_of(ratio(1, 1)),
            Err(PartitionError::OutOfRange(_))
        ));
        assert_eq!(p.last_two_representatives(), vec![ratio(1, 2), ratio(2, 3)]);
    }

    #[test]
    fn lockstep_equivalence_examples() {
        let g = bowtie();
        let seed = config("DDDCC");
        // 1/2 and 3/5 land in different parts of the bowtie partition, yet
        // this orbit happens to evolve identically
        assert_eq!(
            verify_partition_equivalence(&g, &seed, ratio(1, 2), ratio(3, 5), Semantics::Strict, 64)
                .unwrap(),
            EquivalenceVerdict::Equal
        );
        assert_eq!(
            verify_partition_equivalence(&g, &seed, ratio(1, 2), ratio(1, 2), Semantics::Strict, 8)
                .unwrap(),
            EquivalenceVerdict::Equal
        );

        let p4 = make_path(4).unwrap();
        assert_eq!(
            verify_partition_equivalence(
                &p4,
                &config("CDCD"),
                ratio(1, 2),
                ratio(3, 5),
                Semantics::Strict,
                16,
            )
            .unwrap(),
            EquivalenceVerdict::Equal
        );

        assert!(matches!(
            verify_partition_equivalence(
                &g,
                &seed,
                ratio(1, 2),
                ratio(3, 5),
                Semantics::Inclusive,
                8
            ),
            Err(PartitionError::InclusiveModeUnsupported)
        ));
    }

    #[test]
    fn some_boundary_separates_trajectories() {
        // crossing a cut point must be observable somewhere: on C_5 the
        // parts [1/2, 2/3) and [2/3, 1) behave differently for some seed
        let g = make_cycle(5).unwrap();
        let mut witnessed = false;
        for bits in 0u64..32 {
            let seed = Configuration::from_bits(5, bits);
            if verify_partition_equivalence(&g, &seed, ratio(1, 2), ratio(2, 3), Semantics::Strict, 64)
                .unwrap()
                != EquivalenceVerdict::Equal
            {
                witnessed = true;
                break;
            }
        }
        assert!(witnessed, "2/3 should change some C_5 trajectory");
    }

    #[test]
    fn report_shape() {
        let report = PartitionReport::new(&win_partition(&make_cycle(5).unwrap()));
        assert_eq!(report.breakpoints, vec!["2/3".to_string()]);
        assert_eq!(report.parts.len(), 2);
        assert_eq!(report.parts[0].lo, "1/2");
        assert_eq!(report.parts[0].hi, "2/3");
        assert_eq!(report.parts[0].representative, "1/2");
        assert_eq!(report.parts[1].hi, "1");
    }
}

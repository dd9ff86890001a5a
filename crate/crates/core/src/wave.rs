//! Wave configurations on the ring-of-cliques graphs, their interrupter
//! bookkeeping, and the cylindrical Rule 90 automaton they track.
//!
//! The half-and-half configuration (one ring row all collaborators, the
//! other all defectors, pendant cliques matching their row) is a fixed
//! point at `w = 1/2`. Flipping ring vertices of one row at columns of a
//! common parity produces a wave configuration; each step flips the
//! interrupters back, spawns new ones in the other row at columns holding
//! exactly one old interrupter among their two ring neighbours, and leaves
//! every clique vertex untouched. That column rule is Rule 90 (XOR of the
//! two ring neighbours), which is what the equivalence checker verifies
//! column for column.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::BitXor;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamics::{step, Configuration, DynamicsError, Semantics, Strategy};
use crate::graph::{make_hnl, Graph, GraphError, HnlRole, VertexLabel};
use crate::rational::ratio;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WaveError {
    #[error("ring length must be even and at least 4, got {0}")]
    BadRingLength(usize),
    #[error("row must be 1 or 2, got {0}")]
    BadRow(u8),
    #[error("interrupter column {column} outside ring of length {n}")]
    ColumnOutOfRange { column: usize, n: usize },
    #[error("interrupter columns must share a parity")]
    ParityViolation,
    #[error("descriptor ring length {descriptor} does not match requested length {requested}")]
    RingLengthMismatch { descriptor: usize, requested: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

/// State of the cylindrical automaton: one bit per ring cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CaState {
    cells: Vec<bool>,
}

impl CaState {
    pub fn dead(n: usize) -> Self {
        CaState {
            cells: vec![false; n],
        }
    }

    /// All cells dead except cell 0.
    pub fn single_seed(n: usize) -> Self {
        let mut s = Self::dead(n);
        s.cells[0] = true;
        s
    }

    pub fn from_live_columns(n: usize, live: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::dead(n);
        for i in live {
            s.cells[i] = true;
        }
        s
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_live(&self, i: usize) -> bool {
        self.cells[i]
    }

    pub fn live_count(&self) -> usize {
        self.cells.iter().filter(|&&b| b).count()
    }

    pub fn live_columns(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.cells[i]).collect()
    }
}

impl fmt::Display for CaState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.cells {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl FromStr for CaState {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("bad cell character `{other}`; expected 0 or 1")),
            })
            .collect::<Result<Vec<bool>, _>>()
            .map(|cells| CaState { cells })
    }
}

impl BitXor for &CaState {
    type Output = CaState;

    fn bitxor(self, rhs: &CaState) -> CaState {
        assert_eq!(self.len(), rhs.len());
        CaState {
            cells: self
                .cells
                .iter()
                .zip(&rhs.cells)
                .map(|(&a, &b)| a ^ b)
                .collect(),
        }
    }
}

/// One Rule 90 step on the ring: cell `i` becomes live iff exactly one of
/// `i - 1`, `i + 1` (mod `n`) was live.
pub fn rule90_step(s: &CaState) -> CaState {
    let n = s.len();
    assert!(n >= 3, "ring needs at least 3 cells");
    CaState {
        cells: (0..n)
            .map(|i| s.cells[(i + n - 1) % n] ^ s.cells[(i + 1) % n])
            .collect(),
    }
}

/// The seed followed by `steps` iterated states.
pub fn rule90_evolve(seed: &CaState, steps: usize) -> Vec<CaState> {
    let mut states = Vec::with_capacity(steps + 1);
    states.push(seed.clone());
    for _ in 0..steps {
        states.push(rule90_step(states.last().unwrap()));
    }
    states
}

/// Transient and minimal period of the single-seed orbit on a ring of
/// length `n`.
pub fn rule90_period(n: usize) -> (usize, usize) {
    let mut seen: HashMap<CaState, usize> = HashMap::new();
    let mut current = CaState::single_seed(n);
    let mut t = 0;
    loop {
        if let Some(&first) = seen.get(&current) {
            return (first, t - first);
        }
        seen.insert(current.clone(), t);
        current = rule90_step(&current);
        t += 1;
    }
}

/// Which strategy the interrupters of a wave hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WaveFlavor {
    CWave,
    DWave,
}

impl WaveFlavor {
    pub fn opposite(self) -> Self {
        match self {
            WaveFlavor::CWave => WaveFlavor::DWave,
            WaveFlavor::DWave => WaveFlavor::CWave,
        }
    }
}

/// A wave configuration, reduced to its bookkeeping: ring length, the row
/// whose ring vertices are flipped, the flipped columns (all of one
/// parity), and the strategy those interrupters hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaveDescriptor {
    n: usize,
    row: u8,
    columns: BTreeSet<usize>,
    flavor: WaveFlavor,
}

impl WaveDescriptor {
    pub fn new(
        n: usize,
        row: u8,
        columns: impl IntoIterator<Item = usize>,
        flavor: WaveFlavor,
    ) -> Result<Self, WaveError> {
        if n < 4 || n % 2 != 0 {
            return Err(WaveError::BadRingLength(n));
        }
        if row != 1 && row != 2 {
            return Err(WaveError::BadRow(row));
        }
        let columns: BTreeSet<usize> = columns.into_iter().collect();
        if let Some(&column) = columns.iter().find(|&&c| c >= n) {
            return Err(WaveError::ColumnOutOfRange { column, n });
        }
        if columns.iter().any(|&c| c % 2 != columns.iter().next().unwrap() % 2) {
            return Err(WaveError::ParityViolation);
        }
        Ok(WaveDescriptor {
            n,
            row,
            columns,
            flavor,
        })
    }

    /// Descriptor for a wave over the half-and-half base with collaborators
    /// on row 1: flipping row 2 makes collaborator interrupters, flipping
    /// row 1 makes defector interrupters.
    pub fn standard(
        n: usize,
        row: u8,
        columns: impl IntoIterator<Item = usize>,
    ) -> Result<Self, WaveError> {
        let flavor = match row {
            2 => WaveFlavor::CWave,
            1 => WaveFlavor::DWave,
            other => return Err(WaveError::BadRow(other)),
        };
        Self::new(n, row, columns, flavor)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self) -> u8 {
        self.row
    }

    pub fn columns(&self) -> &BTreeSet<usize> {
        &self.columns
    }

    pub fn column_vec(&self) -> Vec<usize> {
        self.columns.iter().copied().collect()
    }

    pub fn flavor(&self) -> WaveFlavor {
        self.flavor
    }

    /// True when the underlying fixed point has collaborators on row 1.
    pub fn over_standard_base(&self) -> bool {
        matches!(
            (self.row, self.flavor),
            (2, WaveFlavor::CWave) | (1, WaveFlavor::DWave)
        )
    }
}

fn row_strategy(base_row1: Strategy, row: u8) -> Strategy {
    if row == 1 {
        base_row1
    } else {
        base_row1.opposite()
    }
}

/// The half-and-half fixed point: row 1 (ring vertex and its clique) all
/// collaborators, row 2 all defectors.
pub fn base_wave(n: usize, ell: usize) -> Result<Configuration, WaveError> {
    let g = make_hnl(n, ell)?;
    let mut c = Configuration::all_defectors(g.vertex_count());
    for (&v, label) in g.labels() {
        if let VertexLabel::Hnl { row: 1, .. } = label {
            c.set(v, Strategy::Collaborator);
        }
    }
    Ok(c)
}

/// Builds the wave configuration a descriptor denotes.
pub fn wave_from_interrupters(
    n: usize,
    ell: usize,
    descriptor: &WaveDescriptor,
) -> Result<Configuration, WaveError> {
    if descriptor.n != n {
        return Err(WaveError::RingLengthMismatch {
            descriptor: descriptor.n,
            requested: n,
        });
    }
    let g = make_hnl(n, ell)?;
    let base_row1 = if descriptor.over_standard_base() {
        Strategy::Collaborator
    } else {
        Strategy::Defector
    };
    let mut c = Configuration::all_defectors(g.vertex_count());
    for (&v, label) in g.labels() {
        let VertexLabel::Hnl { col, row, role } = label else {
            continue;
        };
        let mut s = row_strategy(base_row1, *row);
        if *role == HnlRole::Cycle && *row == descriptor.row && descriptor.columns.contains(col) {
            s = s.opposite();
        }
        c.set(v, s);
    }
    Ok(c)
}

/// Reads a configuration back into a wave descriptor, or `None` when it is
/// not a wave: some clique vertex deviates from the fixed point, flipped
/// ring vertices appear in both rows, or the flipped columns mix parities.
///
/// Only vertices carrying ring labels are examined, so graphs with extra
/// attachments are checked on their labelled part.
pub fn detect_interrupters(g: &Graph, c: &Configuration) -> Option<WaveDescriptor> {
    assert_eq!(c.len(), g.vertex_count(), "configuration/graph mismatch");
    let mut n = 0usize;
    let mut labelled = Vec::new();
    for (&v, label) in g.labels() {
        if let VertexLabel::Hnl { col, row, role } = label {
            n = n.max(col + 1);
            labelled.push((v, *col, *row, *role));
        }
    }
    if labelled.is_empty() || n < 4 || n % 2 != 0 {
        return None;
    }

    for base_row1 in [Strategy::Collaborator, Strategy::Defector] {
        let mut cliques_match = true;
        let mut flips: Vec<(usize, u8)> = Vec::new();
        for &(v, col, row, role) in &labelled {
            let expected = row_strategy(base_row1, row);
            if c.get(v) == expected {
                continue;
            }
            if role == HnlRole::Cycle {
                flips.push((col, row));
            } else {
                cliques_match = false;
                break;
            }
        }
        if !cliques_match {
            continue;
        }
        let standard = base_row1 == Strategy::Collaborator;
        if flips.is_empty() {
            let flavor = if standard {
                WaveFlavor::CWave
            } else {
                WaveFlavor::DWave
            };
            return WaveDescriptor::new(n, 2, [], flavor).ok();
        }
        let row = flips[0].1;
        if flips.iter().any(|&(_, r)| r != row) {
            return None;
        }
        let interrupter = row_strategy(base_row1, row).opposite();
        let flavor = match interrupter {
            Strategy::Collaborator => WaveFlavor::CWave,
            Strategy::Defector => WaveFlavor::DWave,
        };
        return WaveDescriptor::new(n, row, flips.into_iter().map(|(col, _)| col), flavor).ok();
    }
    None
}

/// Outcome of the side-by-side comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WaveEquivalence {
    Equal,
    Diverged {
        t: usize,
        /// Interrupter columns of the process, or `None` when the
        /// configuration left the wave family.
        process_columns: Option<Vec<usize>>,
        ca_columns: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub n: usize,
    pub steps: usize,
    pub outcome: WaveEquivalence,
}

impl EquivalenceReport {
    pub fn is_equal(&self) -> bool {
        self.outcome == WaveEquivalence::Equal
    }
}

/// Runs the process at `w = 1/2` from the single-interrupter wave (column
/// 0, row 2, collaborator interrupter) next to Rule 90 from a single live
/// cell, comparing interrupter columns with live cells at every step and
/// requiring the wave flavor to alternate.
pub fn verify_rule90_equivalence(
    n: usize,
    ell: usize,
    steps: usize,
    sem: Semantics,
) -> Result<EquivalenceReport, WaveError> {
    let g = make_hnl(n, ell)?;
    let seed = WaveDescriptor::new(n, 2, [0], WaveFlavor::CWave)?;
    let mut process = wave_from_interrupters(n, ell, &seed)?;
    let mut ca = CaState::single_seed(n);

    for t in 0..=steps {
        let ca_columns = ca.live_columns();
        let diverged = |process_columns| {
            Ok(EquivalenceReport {
                n,
                steps,
                outcome: WaveEquivalence::Diverged {
                    t,
                    process_columns,
                    ca_columns: ca_columns.clone(),
                },
            })
        };
        let Some(descriptor) = detect_interrupters(&g, &process) else {
            return diverged(None);
        };
        let expected_flavor = if t % 2 == 0 {
            WaveFlavor::CWave
        } else {
            WaveFlavor::DWave
        };
        if !descriptor.columns().is_empty()
            && (descriptor.flavor() != expected_flavor || !descriptor.over_standard_base())
        {
            return diverged(None);
        }
        if descriptor.column_vec() != ca_columns {
            return diverged(Some(descriptor.column_vec()));
        }
        if t < steps {
            process = step(&g, &process, ratio(1, 2), sem)?;
            ca = rule90_step(&ca);
        }
    }
    Ok(EquivalenceReport {
        n,
        steps,
        outcome: WaveEquivalence::Equal,
    })
}

/// Equivalence report rendered the way reports are written.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquivalenceReportJson {
    pub n: usize,
    pub steps: usize,
    pub verdict: String,
    pub divergence: Option<DivergenceJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivergenceJson {
    pub t: usize,
    pub process_columns: Option<Vec<usize>>,
    pub ca_columns: Vec<usize>,
}

impl EquivalenceReportJson {
    pub fn new(report: &EquivalenceReport) -> Self {
        match &report.outcome {
            WaveEquivalence::Equal => EquivalenceReportJson {
                n: report.n,
                steps: report.steps,
                verdict: "equal".into(),
                divergence: None,
            },
            WaveEquivalence::Diverged {
                t,
                process_columns,
                ca_columns,
            } => EquivalenceReportJson {
                n: report.n,
                steps: report.steps,
                verdict: "diverged".into(),
                divergence: Some(DivergenceJson {
                    t: *t,
                    process_columns: process_columns.clone(),
                    ca_columns: ca_columns.clone(),
                }),
            },
        }
    }
}

/// One line of an orbit dump.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaTraceRecord {
    pub t: usize,
    pub cells: String,
    pub live_count: usize,
}

pub fn ca_trace(states: &[CaState]) -> Vec<CaTraceRecord> {
    states
        .iter()
        .enumerate()
        .map(|(t, s)| CaTraceRecord {
            t,
            cells: s.to_string(),
            live_count: s.live_count(),
        })
        .collect()
}

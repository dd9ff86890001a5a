//! Exact simulator and verifier for a power-index voter dynamic on graphs.
//!
//! Every vertex of a graph holds one of two strategies, collaborator or
//! defector. A win condition `w` in `[1/2, 1)` fixes a local vote in each
//! closed neighbourhood: the side clearing it splits one unit of power,
//! the losing side gets none. Each round every vertex simultaneously
//! adopts the strategy of the most powerful vertex it can see, keeping its
//! own on mixed ties. The process is deterministic, so every run lands in
//! a fixed point or a cycle.
//!
//! The crate provides:
//!
//! - [`graph`]: simple graphs, the generator family the dynamic is studied
//!   on (clique chains, clique prisms, rings with pendant cliques), graph
//!   products and attachment;
//! - [`dynamics`]: exact rational powers, the synchronous update, orbit
//!   evolution with cycle detection, dominance classification, and a
//!   brute-force pivotal-voter index;
//! - [`partition`]: the win partition of `[1/2, 1)` into intervals on
//!   which trajectories are invariant, with a lockstep equivalence
//!   checker;
//! - [`wave`]: wave configurations on the pendant-clique rings, their
//!   correspondence with the Rule 90 cellular automaton, and the
//!   column-for-column equivalence verifier;
//! - [`explorer`]: exhaustive seed sweeps and the named seed constructors;
//! - [`io`]: canonical graph JSON, edge-list text, and DOT export.

pub mod dynamics;
pub mod explorer;
pub mod graph;
pub mod io;
pub mod partition;
pub mod rational;
pub mod wave;

pub use dynamics::{
    classify_dominance, evolve, power, power_all, shapley_shubik_uniform, step, Classification,
    Configuration, DynamicsError, Semantics, Strategy, TrajectoryReport,
};
pub use explorer::{
    enumerate_all, gjn_seed, layered_seed, random_configuration, seed_density, sweep,
    ChainSeedFlavor, ExplorerError, SweepReport, SweepStats,
};
pub use graph::{
    attach_graph, cartesian_product, make_complete, make_complete_bipartite, make_cycle, make_gjn,
    make_gjn_shuffled, make_hnl, make_path, make_petersen, make_prism, Graph, GraphError,
    HnlRole, VertexLabel,
};
pub use partition::{
    verify_partition_equivalence, win_partition, EquivalenceVerdict, PartitionError, WinPartition,
};
pub use rational::{parse_rational, ratio, Rational};
pub use wave::{
    base_wave, detect_interrupters, rule90_evolve, rule90_period, rule90_step,
    verify_rule90_equivalence, wave_from_interrupters, CaState, EquivalenceReport, WaveDescriptor,
    WaveError, WaveFlavor,
};

//! Command-line front end: graph generation, process runs, win-partition
//! reports, exhaustive sweeps, the ring-automaton comparison, and the
//! brute-force voter index.
//!
//! Exit codes: 0 on a conclusive result, 2 on usage errors, 3 when a step
//! budget runs out before an orbit closes, 4 when a verification run
//! observes a divergence.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use power_index::dynamics::{
    evolve, shapley_shubik_uniform, state_space_bound, trace_records, validate_win_condition,
    Configuration, DynamicsError, RunReport, Semantics,
};
use power_index::explorer::{
    gjn_seed, layered_seed, random_configuration, sweep, sweep_csv, ChainSeedFlavor,
    SweepReportJson, SWEEP_VERTEX_CAP,
};
use power_index::graph::{
    make_complete, make_cycle, make_gjn, make_hnl, make_path, make_petersen, make_prism, Graph,
    VertexLabel,
};
use power_index::io::{from_json, parse_edge_list, to_dot, to_json};
use power_index::partition::{win_partition, PartitionReport};
use power_index::rational::{parse_rational, Rational};
use power_index::wave::{
    base_wave, ca_trace, rule90_evolve, rule90_period, verify_rule90_equivalence, CaState,
    EquivalenceReportJson,
};

#[derive(Parser)]
#[command(
    name = "power-index",
    version,
    about = "Simulate, sweep, and verify the power-index voter process on graphs"
)]
struct Cli {
    /// Threshold behaviour when a collaborator share equals w exactly.
    #[arg(long, global = true, value_enum, default_value_t = SemanticsArg::Strict)]
    semantics: SemanticsArg,
    /// Cap on evolution steps before a run is declared inconclusive.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: usize,
    /// Write the primary report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write a DOT rendering (final configuration coloured, where one
    /// exists).
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SemanticsArg {
    Strict,
    Inclusive,
}

impl From<SemanticsArg> for Semantics {
    fn from(arg: SemanticsArg) -> Semantics {
        match arg {
            SemanticsArg::Strict => Semantics::Strict,
            SemanticsArg::Inclusive => Semantics::Inclusive,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as canonical JSON.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Evolve one configuration and report transient, period, and class.
    Run {
        #[command(flatten)]
        graph: GraphSource,
        #[command(flatten)]
        seed: SeedSource,
        /// Win condition as an exact fraction in [1/2, 1), e.g. 1/2 or 3/5.
        #[arg(long)]
        w: String,
        /// Write the step-by-step trace (JSON lines) here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Report the win partition of a graph.
    Partition {
        #[command(flatten)]
        graph: GraphSource,
    },
    /// Exhaustively evolve every seed at the given win conditions.
    Sweep {
        #[command(flatten)]
        graph: GraphSource,
        /// Win condition to sweep (repeatable).
        #[arg(long = "w")]
        w: Vec<String>,
        /// Sweep every representative of the win partition instead.
        #[arg(long)]
        all_w: bool,
        /// Graph id to put in the report.
        #[arg(long)]
        id: Option<String>,
        /// Also write per-seed rows (seed, transient, period) as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Compare the single-interrupter wave with the ring automaton.
    WaveCheck {
        /// Ring length (even, at least 4).
        #[arg(long)]
        n: usize,
        /// Pendant clique size.
        #[arg(long, default_value_t = 3)]
        ell: usize,
        #[arg(long)]
        steps: usize,
    },
    /// Evolve the ring automaton and dump its orbit, or report its period.
    Rule90 {
        /// Ring length (at least 3).
        #[arg(long)]
        n: usize,
        /// Steps to dump; without this only the period report is written.
        #[arg(long)]
        steps: Option<usize>,
        /// Seed as a bitstring like 00100; defaults to a single live cell.
        #[arg(long)]
        seed: Option<String>,
    },
    /// Brute-force pivotal-voter powers for a uniform-weight vote.
    Shapley {
        #[arg(long)]
        voters: usize,
        #[arg(long)]
        quota: usize,
    },
}

#[derive(Subcommand)]
enum GenerateKind {
    Path {
        #[arg(long)]
        n: usize,
    },
    Cycle {
        #[arg(long)]
        n: usize,
    },
    Complete {
        #[arg(long)]
        n: usize,
    },
    Petersen,
    /// Chain of doubling cliques j, 2j, ..., j*2^n.
    Gjn {
        #[arg(long)]
        j: usize,
        #[arg(long)]
        n: usize,
    },
    /// Clique prism K_{j-1} x C_4.
    Prism {
        #[arg(long)]
        j: usize,
    },
    /// Double ring of length n with a pendant K_ell per ring vertex.
    Hn {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        ell: usize,
    },
}

/// Exactly one graph source must be given.
#[derive(Args)]
struct GraphSource {
    /// Graph file (.json, or edge-list text for any other extension).
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    path: Option<usize>,
    #[arg(long)]
    cycle: Option<usize>,
    #[arg(long)]
    complete: Option<usize>,
    #[arg(long)]
    petersen: bool,
    /// Clique chain parameters: --gjn J N.
    #[arg(long, num_args = 2, value_names = ["J", "N"])]
    gjn: Option<Vec<usize>>,
    #[arg(long)]
    prism: Option<usize>,
    /// Double-ring length; combine with --ell for larger pendant cliques.
    #[arg(long)]
    hn: Option<usize>,
    #[arg(long, default_value_t = 3)]
    ell: usize,
}

/// Exactly one seed source must be given.
#[derive(Args)]
struct SeedSource {
    /// Literal configuration, e.g. CCDDDD.
    #[arg(long)]
    seed: Option<String>,
    /// Named seed: all-c, all-d, gjn-c, gjn-d, layered, base-wave.
    #[arg(long)]
    seed_op: Option<String>,
    /// Random seed with this collaborator density (exact fraction).
    #[arg(long)]
    random: Option<String>,
    /// RNG seed for --random.
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
}

enum Failure {
    Usage(String),
    Inconclusive(String),
    Verification(String),
    Runtime(String),
}

impl Failure {
    fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Failure::Runtime(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Inconclusive(_) => 3,
            Failure::Verification(_) => 4,
        })
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m)
            | Failure::Inconclusive(m)
            | Failure::Verification(m)
            | Failure::Runtime(m) => m,
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            failure.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(), Failure> {
    let sem: Semantics = cli.semantics.into();
    match &cli.command {
        Command::Generate { kind } => cmd_generate(cli, kind),
        Command::Run {
            graph,
            seed,
            w,
            trace,
        } => cmd_run(cli, graph, seed, w, trace.as_deref(), sem),
        Command::Partition { graph } => {
            let (g, _) = graph.load()?;
            write_report(cli, &PartitionReport::new(&win_partition(&g)))
        }
        Command::Sweep {
            graph,
            w,
            all_w,
            id,
            csv,
        } => cmd_sweep(cli, graph, w, *all_w, id.as_deref(), csv.as_deref(), sem),
        Command::WaveCheck { n, ell, steps } => {
            let report = verify_rule90_equivalence(*n, *ell, *steps, sem).map_err(usage)?;
            write_report(cli, &EquivalenceReportJson::new(&report))?;
            if report.is_equal() {
                Ok(())
            } else {
                Err(Failure::Verification(format!(
                    "wave and ring automaton diverged: {:?}",
                    report.outcome
                )))
            }
        }
        Command::Rule90 { n, steps, seed } => cmd_rule90(cli, *n, *steps, seed.as_deref()),
        Command::Shapley { voters, quota } => {
            let powers = shapley_shubik_uniform(*voters, *quota).map_err(usage)?;
            let report = serde_json::json!({
                "voters": voters,
                "quota": quota,
                "powers": powers.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            });
            write_output(cli.out.as_deref(), &(report.to_string() + "\n"))
        }
    }
}

fn cmd_generate(cli: &Cli, kind: &GenerateKind) -> Result<(), Failure> {
    let g = match kind {
        GenerateKind::Path { n } => make_path(*n),
        GenerateKind::Cycle { n } => make_cycle(*n),
        GenerateKind::Complete { n } => make_complete(*n),
        GenerateKind::Petersen => Ok(make_petersen()),
        GenerateKind::Gjn { j, n } => make_gjn(*j, *n),
        GenerateKind::Prism { j } => make_prism(*j),
        GenerateKind::Hn { n, ell } => make_hnl(*n, *ell),
    }
    .map_err(usage)?;
    write_output(cli.out.as_deref(), &to_json(&g))?;
    if let Some(dot_path) = &cli.dot {
        fs::write(dot_path, to_dot(&g, None))?;
    }
    Ok(())
}

fn cmd_run(
    cli: &Cli,
    graph: &GraphSource,
    seed: &SeedSource,
    w: &str,
    trace: Option<&Path>,
    sem: Semantics,
) -> Result<(), Failure> {
    let (g, _) = graph.load()?;
    let c0 = seed.build(&g)?;
    let w = parse_win_condition(w)?;
    let max_steps = state_space_bound(g.vertex_count()).min(cli.budget);
    let report = match evolve(&g, &c0, w, sem, max_steps) {
        Ok(report) => report,
        Err(DynamicsError::BudgetExhausted { budget }) => {
            let note = serde_json::json!({
                "semantics": sem.to_string(),
                "w": w.to_string(),
                "inconclusive": true,
                "budget": budget,
            });
            write_output(cli.out.as_deref(), &(note.to_string() + "\n"))?;
            return Err(Failure::Inconclusive(format!(
                "no repeat within {budget} steps"
            )));
        }
        Err(other) => return Err(usage(other)),
    };
    if let Some(trace_path) = trace {
        let records = trace_records(&g, &report).map_err(usage)?;
        let mut text = String::new();
        for record in records {
            text.push_str(&serde_json::to_string(&record).expect("trace serializes"));
            text.push('\n');
        }
        fs::write(trace_path, text)?;
    }
    if let Some(dot_path) = &cli.dot {
        fs::write(dot_path, to_dot(&g, Some(report.settled())))?;
    }
    write_report(cli, &RunReport::new(&g, &report))
}

fn cmd_sweep(
    cli: &Cli,
    graph: &GraphSource,
    w_args: &[String],
    all_w: bool,
    id: Option<&str>,
    csv: Option<&Path>,
    sem: Semantics,
) -> Result<(), Failure> {
    let (g, default_id) = graph.load()?;
    if g.vertex_count() > SWEEP_VERTEX_CAP {
        return Err(Failure::Usage(format!(
            "sweeps are capped at {SWEEP_VERTEX_CAP} vertices; this graph has {}",
            g.vertex_count()
        )));
    }
    let ws: Vec<Rational> = if all_w {
        if !w_args.is_empty() {
            return Err(Failure::Usage("--all-w conflicts with --w".into()));
        }
        win_partition(&g).representatives()
    } else if w_args.is_empty() {
        return Err(Failure::Usage("give --w at least once, or --all-w".into()));
    } else {
        w_args
            .iter()
            .map(|s| parse_win_condition(s))
            .collect::<Result<_, _>>()?
    };
    let budget = state_space_bound(g.vertex_count()).min(cli.budget);
    let report = sweep(&g, id.unwrap_or(&default_id), &ws, sem, budget).map_err(usage)?;
    if let Some(csv_path) = csv {
        let mut file = fs::File::create(csv_path)?;
        for &w in &ws {
            sweep_csv(&g, w, sem, budget, &mut file)?;
        }
    }
    let inconclusive: usize = report.runs.iter().map(|r| r.inconclusive.len()).sum();
    write_report(cli, &SweepReportJson::new(&report))?;
    if inconclusive > 0 {
        return Err(Failure::Inconclusive(format!(
            "{inconclusive} seeds exhausted the step budget"
        )));
    }
    Ok(())
}

fn cmd_rule90(
    cli: &Cli,
    n: usize,
    steps: Option<usize>,
    seed: Option<&str>,
) -> Result<(), Failure> {
    if n < 3 {
        return Err(Failure::Usage("ring needs at least 3 cells".into()));
    }
    let seed_state = match seed {
        Some(text) => {
            let s: CaState = text.parse().map_err(Failure::Usage)?;
            if s.len() != n {
                return Err(Failure::Usage(format!(
                    "seed has {} cells but the ring has {n}",
                    s.len()
                )));
            }
            s
        }
        None => CaState::single_seed(n),
    };
    match steps {
        Some(steps) => {
            let states = rule90_evolve(&seed_state, steps);
            let mut text = String::new();
            for record in ca_trace(&states) {
                text.push_str(&serde_json::to_string(&record).expect("trace serializes"));
                text.push('\n');
            }
            write_output(cli.out.as_deref(), &text)
        }
        None => {
            let (transient, period) = rule90_period(n);
            let report = serde_json::json!({
                "n": n,
                "transient": transient,
                "period": period,
            });
            write_output(cli.out.as_deref(), &(report.to_string() + "\n"))
        }
    }
}

impl GraphSource {
    fn load(&self) -> Result<(Graph, String), Failure> {
        let mut picks: Vec<(Graph, String)> = Vec::new();
        if let Some(path) = &self.graph {
            let text = fs::read_to_string(path)?;
            let g = if path.extension().is_some_and(|e| e == "json") {
                from_json(&text)
            } else {
                parse_edge_list(&text)
            }
            .map_err(usage)?;
            let id = path
                .file_stem()
                .map_or_else(|| "graph".into(), |s| s.to_string_lossy().into_owned());
            picks.push((g, id));
        }
        if let Some(n) = self.path {
            picks.push((make_path(n).map_err(usage)?, format!("path-{n}")));
        }
        if let Some(n) = self.cycle {
            picks.push((make_cycle(n).map_err(usage)?, format!("cycle-{n}")));
        }
        if let Some(n) = self.complete {
            picks.push((make_complete(n).map_err(usage)?, format!("complete-{n}")));
        }
        if self.petersen {
            picks.push((make_petersen(), "petersen".into()));
        }
        if let Some(params) = &self.gjn {
            let (j, n) = (params[0], params[1]);
            picks.push((make_gjn(j, n).map_err(usage)?, format!("gjn-{j}-{n}")));
        }
        if let Some(j) = self.prism {
            picks.push((make_prism(j).map_err(usage)?, format!("prism-{j}")));
        }
        if let Some(n) = self.hn {
            picks.push((
                make_hnl(n, self.ell).map_err(usage)?,
                format!("hn-{n}-{}", self.ell),
            ));
        }
        match picks.len() {
            1 => Ok(picks.pop().unwrap()),
            0 => Err(Failure::Usage(
                "give exactly one graph source (--graph, --path, --cycle, --complete, \
                 --petersen, --gjn, --prism, or --hn)"
                    .into(),
            )),
            _ => Err(Failure::Usage("give exactly one graph source".into())),
        }
    }
}

impl SeedSource {
    fn build(&self, g: &Graph) -> Result<Configuration, Failure> {
        let given = usize::from(self.seed.is_some())
            + usize::from(self.seed_op.is_some())
            + usize::from(self.random.is_some());
        if given != 1 {
            return Err(Failure::Usage(
                "give exactly one seed source (--seed, --seed-op, or --random)".into(),
            ));
        }
        if let Some(text) = &self.seed {
            let c: Configuration = text.parse().map_err(usage)?;
            if c.len() != g.vertex_count() {
                return Err(Failure::Usage(format!(
                    "seed has {} strategies but the graph has {} vertices",
                    c.len(),
                    g.vertex_count()
                )));
            }
            return Ok(c);
        }
        if let Some(op) = &self.seed_op {
            return match op.as_str() {
                "all-c" => Ok(Configuration::all_collaborators(g.vertex_count())),
                "all-d" => Ok(Configuration::all_defectors(g.vertex_count())),
                "gjn-c" => gjn_seed(g, ChainSeedFlavor::CollaboratorCore).map_err(usage),
                "gjn-d" => gjn_seed(g, ChainSeedFlavor::DefectorCore).map_err(usage),
                "layered" => layered_seed(g).map_err(usage),
                "base-wave" => base_wave_for(g),
                other => Err(Failure::Usage(format!(
                    "unknown seed op `{other}`; use all-c, all-d, gjn-c, gjn-d, layered, \
                     or base-wave"
                ))),
            };
        }
        let density = parse_rational(self.random.as_ref().unwrap()).map_err(usage)?;
        random_configuration(g, density, self.rng_seed).map_err(usage)
    }
}

/// The half-and-half fixed point of a generated double-ring graph,
/// recovered from its labels.
fn base_wave_for(g: &Graph) -> Result<Configuration, Failure> {
    let n = g
        .labels()
        .values()
        .filter_map(|label| match label {
            VertexLabel::Hnl { col, .. } => Some(col + 1),
            _ => None,
        })
        .max()
        .ok_or_else(|| Failure::Usage("base-wave needs a graph generated by hn".into()))?;
    let ell = g.vertex_count() / (2 * n) - 1;
    base_wave(n, ell).map_err(usage)
}

fn parse_win_condition(text: &str) -> Result<Rational, Failure> {
    let w = parse_rational(text).map_err(usage)?;
    validate_win_condition(w).map_err(usage)?;
    Ok(w)
}

fn write_report<T: serde::Serialize>(cli: &Cli, report: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string(report).expect("report serializes");
    text.push('\n');
    write_output(cli.out.as_deref(), &text)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

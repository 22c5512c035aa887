mod commands;
mod run_all;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pathmetric::{Error, Graph, PartialPathSystem, PathSystem};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Consistent path systems: consistency, metrizability, certificates,
/// enumeration and graph screening.
#[derive(Parser)]
#[command(name = "pathmetric", version)]
pub struct Cli {
    #[command(subcommand)]
    cmd: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Write the machine-readable result to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Format of the --out file.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for enumerate and decide-graph.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Lp,
    Outerplanar,
    Cycle,
}

#[derive(Args)]
pub struct SystemArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// A full path system file.
    #[arg(long, conflicts_with = "partial")]
    pub system: Option<PathBuf>,
    /// A partial path system file.
    #[arg(long)]
    pub partial: Option<PathBuf>,
}

pub enum Loaded {
    Full(PathSystem),
    Partial(PartialPathSystem),
}

#[derive(Subcommand)]
enum Command {
    /// Check that a path system is consistent.
    CheckSystem(SystemArgs),
    /// Decide (strict) metrizability: inducing weights or a certificate.
    Metrize {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        strict: bool,
        /// Also apply K random bumps within the perturbation radius and
        /// re-verify (strict weights only).
        #[arg(long, value_name = "K")]
        perturb: Option<usize>,
        /// `lp` decides any system; `outerplanar` and `cycle` build
        /// weights directly on those graph classes.
        #[arg(long, value_enum, default_value_t = Method::Lp)]
        method: Method,
    },
    /// Persistent edges and the system with them contracted.
    Quotient {
        #[command(flatten)]
        sys: SystemArgs,
        /// Edges to contract as "u v, u v"; all persistent edges by default.
        #[arg(long)]
        edges: Option<String>,
        /// Also write the quotient graph to FILE.
        #[arg(long, value_name = "FILE")]
        graph_out: Option<PathBuf>,
    },
    /// Check an infeasibility certificate against a system.
    VerifyCert {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        cert: PathBuf,
    },
    /// Check that weights induce a system.
    VerifyWeights {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        strict: bool,
    },
    /// Enumerate all consistent path systems of a graph.
    Enumerate {
        #[arg(long)]
        graph: PathBuf,
        /// Stop after N systems.
        #[arg(long)]
        limit: Option<usize>,
        /// Print every system, not just the count.
        #[arg(long)]
        show: bool,
        /// Raise the vertex bound for enumeration.
        #[arg(long, default_value_t = pathmetric::enumerate::MAX_VERTICES)]
        max_vertices: usize,
    },
    /// Decide whether every consistent system of a graph is induced.
    DecideGraph {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        strict: bool,
        /// Largest number of systems decided before giving up.
        #[arg(long, default_value_t = 1_000_000)]
        budget_systems: u64,
        /// Print the witness behind the verdict.
        #[arg(long)]
        explain: bool,
        /// Enumerate every block instead of trusting the size,
        /// outerplanarity and screening shortcuts.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Run the structural and catalog screens on every block.
    Screen {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Crossing function and structure of a system on a cycle.
    CycleClassify {
        #[command(flatten)]
        sys: SystemArgs,
    },
    /// Build weights for a system from its pieces around a suspended path.
    SuspendedLift {
        #[command(flatten)]
        sys: SystemArgs,
        /// The suspended path x .. y whose ends are joined by an edge,
        /// e.g. "0 5 6 3".
        #[arg(long)]
        path: String,
    },
    /// Check a sampled circle map (and a density) numerically.
    CircleCheck {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        density: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
    /// Bundled example data.
    Fixtures {
        #[command(subcommand)]
        cmd: FixturesCmd,
    },
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// Re-derive every published example and print a pass/fail table.
    RunAll,
    /// List bundled graphs.
    List,
    /// Write the bundled graph, system and circle files into DIR.
    Export { dir: PathBuf },
}

/// Exit status of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Negative,
    Unknown,
}

fn main() -> ExitCode {
    // die quietly when stdout is closed early (`| head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let res = match cli.cmd {
        Command::CheckSystem(sys) => commands::check_system(&cli.common, &sys),
        Command::Metrize { sys, strict, perturb, method } => commands::metrize(&cli.common, &sys, strict, perturb, method),
        Command::Quotient { sys, edges, graph_out } => commands::quotient(&cli.common, &sys, edges.as_deref(), graph_out.as_deref()),
        Command::VerifyCert { sys, cert } => commands::verify_cert(&cli.common, &sys, &cert),
        Command::VerifyWeights { sys, weights, strict } => commands::verify_weights_cmd(&cli.common, &sys, &weights, strict),
        Command::Enumerate { graph, limit, show, max_vertices } => {
            commands::enumerate(&cli.common, &graph, limit, show, max_vertices)
        }
        Command::DecideGraph { graph, strict, budget_systems, explain, exhaustive } => {
            commands::decide_graph(&cli.common, &graph, strict, budget_systems, explain, exhaustive)
        }
        Command::Screen { graph } => commands::screen(&cli.common, &graph),
        Command::CycleClassify { sys } => commands::cycle_classify(&cli.common, &sys),
        Command::SuspendedLift { sys, path } => commands::suspended_lift(&cli.common, &sys, &path),
        Command::CircleCheck { map, density, tol } => commands::circle_check(&cli.common, &map, density.as_deref(), tol),
        Command::Fixtures { cmd: FixturesCmd::RunAll } => run_all::run_all(),
        Command::Fixtures { cmd: FixturesCmd::List } => commands::fixtures_list(),
        Command::Fixtures { cmd: FixturesCmd::Export { dir } } => commands::fixtures_export(&dir),
    };
    match res {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(1),
        Ok(Status::Unknown) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Input/output failures and library errors, all reported as exit 2.
#[derive(Debug)]
pub enum CliError {
    Io(PathBuf, std::io::Error),
    Lib(Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))
}

pub fn load_graph(path: &Path) -> CliResult<Graph> {
    Ok(Graph::parse(&read(path)?)?)
}

impl SystemArgs {
    pub fn load(&self) -> CliResult<Loaded> {
        let g = load_graph(&self.graph)?;
        match (&self.system, &self.partial) {
            (Some(p), _) => Ok(Loaded::Full(PathSystem::parse(&read(p)?, g)?)),
            (None, Some(p)) => Ok(Loaded::Partial(PartialPathSystem::parse(&read(p)?, g)?)),
            (None, None) => Err(CliError::Usage("one of --system or --partial is required".into())),
        }
    }

    pub fn load_full(&self) -> CliResult<PathSystem> {
        match self.load()? {
            Loaded::Full(ps) => Ok(ps),
            Loaded::Partial(_) => Err(CliError::Usage("this command needs a full --system".into())),
        }
    }
}

/// Write `text` or `json` to `--out`, if given.
pub fn emit(common: &Common, text: impl FnOnce() -> String, json: impl FnOnce() -> serde_json::Value) -> CliResult<()> {
    let Some(path) = &common.out else { return Ok(()) };
    let body = match common.format {
        Format::Text => text(),
        Format::Json => serde_json::to_string_pretty(&json()).expect("json") + "\n",
    };
    std::fs::write(path, body).map_err(|e| CliError::Io(path.clone(), e))
}

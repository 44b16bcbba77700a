//! Command-line front end: argument parsing, exit codes and the acceptance suite.

pub mod acceptance;
pub mod commands;
pub mod render;

use clap::{Parser, Subcommand};
use commands::{exit, CliError, HstAction, Method, ModeArg, SpaceArg, WidthAction};
use normalhst::Limits;
use render::{render_all, Format};
use serde_json::Value;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "normalhst", version, about = "Normal surfaces, HST complexity and thin position")]
pub struct Cli {
    /// Output format. Tables are rendered from the JSON.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Coordinate-sum bound for enumeration.
    #[arg(long, global = true)]
    pub bound: Option<u64>,
    /// State budget for searches.
    #[arg(long, global = true, default_value_t = 10_000)]
    pub budget: u64,
    /// Run both enumeration methods and compare.
    #[arg(long, global = true)]
    pub cross_check: bool,
    /// Seed for the randomised parts of the self-test.
    #[arg(long, global = true, default_value_t = acceptance::DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a triangulation, compute its skeleton and check it is a manifold.
    Validate {
        /// Face-pairing file (.tri).
        triangulation: PathBuf,
    },
    /// Classify a surface vector, summarise it and check its boundary loops.
    Surface {
        /// Face-pairing file (.tri).
        triangulation: PathBuf,
        /// Surface vector as JSON.
        vector: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        mode: ModeArg,
    },
    /// Enumerate vertex, bounded or single-octagon surfaces as JSON lines.
    Enumerate {
        /// Face-pairing file (.tri).
        triangulation: PathBuf,
        #[arg(long, value_enum, default_value = "vertex")]
        method: Method,
    },
    /// Complexity, underlying splitting or minimal-complexity search.
    Hst {
        /// Abstract splitting as JSON: levels of [closed_chi, punctures] components.
        splitting: PathBuf,
        #[arg(long, value_enum, default_value = "complexity")]
        action: HstAction,
        /// Count punctures in the complexity and allow relative compressions.
        #[arg(long)]
        relative: bool,
    },
    /// Width profile, induced splitting or thin position search.
    Width {
        /// Morse presentation, one `B i` or `D i` event per line.
        presentation: PathBuf,
        #[arg(long, value_enum, default_value = "width")]
        action: WidthAction,
        /// Moves the search may use.
        #[arg(long, value_enum, default_value = "all")]
        space: SpaceArg,
        /// Only accept presentations that never drop to zero strands.
        #[arg(long)]
        single_component: bool,
    },
    /// Normal loops on the boundary of one tetrahedron.
    Curve {
        #[command(subcommand)]
        action: CurveAction,
    },
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Debug, Subcommand)]
pub enum CurveAction {
    /// Decompose 12 arc counts (face-major) into loops.
    Decompose {
        #[arg(num_args = 12, required = true)]
        counts: Vec<u64>,
    },
    /// Every loop class up to a length.
    Loops {
        #[arg(long, default_value_t = 12)]
        max_length: usize,
    },
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn execute(cli: &Cli, limits: &Limits) -> Result<(Vec<Value>, i32), CliError> {
    let report = match &cli.command {
        Command::Validate { triangulation } => commands::validate(&read(triangulation)?)?,
        Command::Surface { triangulation, vector, mode } => {
            commands::surface(&read(triangulation)?, &read(vector)?, *mode, limits)?
        }
        Command::Enumerate { triangulation, method } => {
            commands::enumerate(&read(triangulation)?, *method, cli.bound, cli.cross_check, limits)?
        }
        Command::Hst { splitting, action, relative } => {
            commands::hst(&read(splitting)?, *action, *relative, cli.budget, limits)?
        }
        Command::Width { presentation, action, space, single_component } => {
            commands::width_cmd(&read(presentation)?, *action, *space, *single_component, cli.budget, limits)?
        }
        Command::Curve { action: CurveAction::Decompose { counts } } => commands::curve_decompose(counts)?,
        Command::Curve { action: CurveAction::Loops { max_length } } => commands::curve_loops(*max_length, limits)?,
        Command::Selftest => {
            let results = acceptance::run_all(cli.seed);
            let code = if results.iter().all(|c| c.pass) { exit::OK } else { exit::FAILED };
            let records = results.iter().map(|c| serde_json::to_value(c).unwrap()).collect();
            commands::Report { records, code }
        }
    };
    Ok((report.records, report.code))
}

/// Runs one invocation. `ceiling` is the value of `NORMALHST_CEILING`, if set.
pub fn run<I, T>(args: I, ceiling: Option<&str>) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { stdout: String::new(), stderr: text, code: exit::INPUT }
            } else {
                Output { stdout: text, stderr: String::new(), code: exit::OK }
            };
        }
    };
    let limits = match ceiling.map(commands::parse_ceiling).transpose() {
        Ok(l) => l.unwrap_or_default(),
        Err(e) => return Output { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.code },
    };
    match execute(&cli, &limits) {
        Ok((records, code)) => {
            // The self-test reads best as one line per criterion.
            let stdout = if matches!(cli.command, Command::Selftest) && cli.format == Format::Table {
                records.iter().map(|r| format!("{}\n", acceptance::line_of(r))).collect()
            } else {
                render_all(&records, cli.format)
            };
            Output { stdout, stderr: String::new(), code }
        }
        Err(e) => Output { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.code },
    }
}

use clap::{Args, Parser, Subcommand, ValueEnum};
use ehvac_cli::config::{Scenario, ScenarioParams};
use ehvac_cli::output::{render_stdout, write_datasets, Format};
use ehvac_cli::verify::{run_suite, GoldenFile, Suite};
use ehvac_cli::{scenarios, CliError, CliResult};
use std::path::PathBuf;
use std::process::ExitCode;

/// Effective optical geometries of Euler-Heisenberg electrodynamics.
#[derive(Parser)]
#[command(name = "ehvac", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Plus,
    Minus,
    Averaged,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Full,
    Asymptotic,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Fast,
}

#[derive(Args)]
struct RunArgs {
    /// TOML file of scenario parameters.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory; datasets go to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Polarization mode, overriding the config file.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Velocity law for the cylindrical scenario, overriding the config file.
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
}

#[derive(Subcommand)]
enum Command {
    /// Refraction profiles, wavefronts and clock delays of a circular plane wave.
    PlaneWave(RunArgs),
    /// Radial velocities, horizons and geodesics of a cylindrical Bessel wave.
    Cylindrical(RunArgs),
    /// Exact static solution: branches, metric, velocities, horizon.
    Static(RunArgs),
    /// Heuristic collapse velocities for spherical and cylindrical focusing.
    Gedanken(RunArgs),
    /// Run the invariant suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Golden file of pinned reference values.
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Write a reference golden file (alpha = 1) and exit.
        #[arg(long)]
        write_golden: Option<PathBuf>,
        /// Report file; the report goes to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
}

fn init_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("EHVAC_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| CliError::config(format!("EHVAC_THREADS must be a positive integer, got '{v}'")))?;
    if n == 0 {
        return Err(CliError::config("EHVAC_THREADS must be >= 1"));
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::config(format!("thread pool: {e}")))
}

fn format_of(f: FormatArg) -> Format {
    match f {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    }
}

fn run_scenario(scenario: Scenario, args: RunArgs) -> CliResult<()> {
    let mut params = match &args.config {
        Some(p) => ScenarioParams::load(p)?,
        None => ScenarioParams::default(),
    };
    if let Some(m) = args.mode {
        params.mode = Some(
            match m {
                ModeArg::Plus => "plus",
                ModeArg::Minus => "minus",
                ModeArg::Averaged => "averaged",
            }
            .into(),
        );
    }
    if let Some(m) = args.model {
        params.model = Some(
            match m {
                ModelArg::Full => "full",
                ModelArg::Asymptotic => "asymptotic",
            }
            .into(),
        );
    }
    let datasets = scenarios::run(scenario, &params)?;
    let format = format_of(args.format);
    match &args.out {
        Some(dir) => {
            for p in write_datasets(dir, scenario, &params, &datasets, format)? {
                eprintln!("wrote {}", p.display());
            }
        }
        None => print!("{}", render_stdout(scenario, &params, &datasets, format)),
    }
    Ok(())
}

fn run() -> CliResult<ExitCode> {
    let cli = Cli::parse();
    init_threads()?;
    let scenario = match cli.command {
        Command::PlaneWave(a) => (Scenario::PlaneWave, a),
        Command::Cylindrical(a) => (Scenario::Cylindrical, a),
        Command::Static(a) => (Scenario::Static, a),
        Command::Gedanken(a) => (Scenario::Gedanken, a),
        Command::Verify { suite, golden, write_golden, out, format } => {
            if let Some(path) = write_golden {
                let g = GoldenFile::reference(1.0)?;
                std::fs::write(&path, g.to_toml()).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
                eprintln!("wrote {}", path.display());
                return Ok(ExitCode::SUCCESS);
            }
            let suite = match suite {
                SuiteArg::All => Suite::All,
                SuiteArg::Fast => Suite::Fast,
            };
            let report = run_suite(suite, golden.as_deref())?;
            let body = match format_of(format) {
                Format::Csv => report.to_text(),
                Format::Json => serde_json::to_string_pretty(&report.to_json()).expect("report JSON is serializable") + "\n",
            };
            match out {
                Some(path) => std::fs::write(&path, &body).map_err(|source| CliError::Io { path: path.display().to_string(), source })?,
                None => print!("{body}"),
            }
            if !report.passed() {
                for c in report.failures() {
                    eprintln!("failed: {} (measured {:e}, tolerance {:e})", c.name, c.measured, c.tolerance);
                }
                return Ok(ExitCode::from(1));
            }
            return Ok(ExitCode::SUCCESS);
        }
    };
    run_scenario(scenario.0, scenario.1)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

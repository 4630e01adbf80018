use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches, Parser, Subcommand};
use drgame::{parse_config, ConfigSpec, RevelationProfile};
use drgame_cli::commands::{load_config_file, read_text, write_text};
use drgame_cli::figures::Figure;
use drgame_cli::regions::{region_map, region_table, Axis, RegionSpec};
use drgame_cli::{render_svg, run_sweep, run_verify, solve, solve_summary, solve_table, sweep_table};
use drgame_cli::{CliError, PlotSpec, SweepSpec, SweepVariable, Table};

#[derive(Debug, Parser)]
#[command(
    name = "drgame",
    version,
    about = "Equilibria of the two-member digital representative game"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one configuration and compare it with manual participation.
    Solve {
        #[arg(long)]
        config: PathBuf,
        /// Also write a one-row CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep one parameter and write a CSV row per grid point.
    Sweep {
        /// Base configuration; defaults to theta_A = 3, beta = 1.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Swept quantity: d_B, d_A, beta or C.
        #[arg(long = "var", default_value = "d_B")]
        variable: SweepVariable,
        /// Inclusive range LO,HI.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, default_value = "-5,5")]
        range: (f64, f64),
        #[arg(long, default_value_t = 401)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Classify the equilibrium kind over a (d_A, d_B) grid.
    Regions {
        /// Base configuration for the function pair; defaults to beta = 1.
        #[arg(long)]
        config: Option<PathBuf>,
        /// d_A range LO,HI (also used for d_B unless --b-range is given).
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, default_value = "-5,5")]
        range: (f64, f64),
        #[arg(long = "b-range", value_parser = parse_pair, allow_hyphen_values = true)]
        b_range: Option<(f64, f64)>,
        /// Points per axis.
        #[arg(long, default_value_t = 201)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Emit the data behind one of the standard figures.
    Reproduce {
        figure: Figure,
        /// Points per sweep (per axis for heatmaps).
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Cross-check the solver against the brute-force grid oracle.
    Verify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Check this profile A,B instead of the solved one.
        #[arg(long = "assert-profile", value_parser = parse_pair)]
        assert_profile: Option<(f64, f64)>,
    },
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two comma-separated numbers, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok((parse(a)?, parse(b)?))
}

fn figure_help() -> String {
    let mut s = String::from("Figures:\n");
    for fig in Figure::ALL {
        s.push_str(&format!("  {}  {}\n", fig.id(), fig.description()));
    }
    s
}

fn base_spec(config: Option<&Path>, default: ConfigSpec) -> Result<ConfigSpec, CliError> {
    let Some(path) = config else {
        return Ok(default);
    };
    let parsed = parse_config(&read_text(path)?).map_err(|source| CliError::Config {
        path: path.to_path_buf(),
        source,
    })?;
    warn(path, &parsed.warnings);
    Ok(parsed.spec)
}

fn warn(path: &Path, warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
}

fn emit(table: &Table, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => write_text(path, &table.to_csv_string()),
        None => {
            let mut stdout = std::io::stdout().lock();
            table
                .write_csv(&mut stdout)
                .and_then(|_| stdout.flush().map_err(csv::Error::from))
                .map_err(|e| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source: std::io::Error::other(e.to_string()),
                })
        }
    }
}

fn emit_plot(table: &Table, spec: &PlotSpec, title: &str, path: Option<&Path>) -> Result<(), CliError> {
    let Some(path) = path else {
        return Ok(());
    };
    let svg = render_svg(table, spec, title).map_err(|e| CliError::Usage(format!("--plot: {e}")))?;
    write_text(path, &svg)
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Solve { config, out } => {
            let (game, parsed) = load_config_file(&config)?;
            warn(&config, &parsed.warnings);
            let report = solve(&game)?;
            print!("{}", solve_summary(&parsed.spec, &game, &report));
            if let Some(out) = out {
                write_text(&out, &solve_table(&parsed.spec, &report).to_csv_string())?;
            }
            Ok(())
        }
        Command::Sweep {
            config,
            variable,
            range,
            points,
            out,
            plot,
        } => {
            let default = ConfigSpec {
                theta_a: 3.0,
                ..ConfigSpec::default()
            };
            let base = base_spec(config.as_deref(), default)?;
            let spec =
                SweepSpec::new(variable, range.0, range.1, points, base).map_err(|e| CliError::Usage(e.to_string()))?;
            let rows = run_sweep(&spec);
            for row in &rows {
                if let Err(e) = &row.outcome {
                    eprintln!("warning: {} = {}: {e}", variable, row.x);
                }
            }
            let table = sweep_table(variable, &rows);
            emit(&table, out.as_deref())?;
            let view = PlotSpec::Lines {
                x: variable.name().to_string(),
                ys: vec!["alpha_A*".into(), "alpha_B*".into()],
                group: None,
                y_label: "revelation level".into(),
            };
            emit_plot(
                &table,
                &view,
                &format!("Equilibrium revelation over {variable}"),
                plot.as_deref(),
            )
        }
        Command::Regions {
            config,
            range,
            b_range,
            points,
            out,
            plot,
        } => {
            let base = base_spec(config.as_deref(), ConfigSpec::default())?;
            let b = b_range.unwrap_or(range);
            let spec = RegionSpec::new(Axis::new(range.0, range.1, points), Axis::new(b.0, b.1, points), base)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let cells = region_map(&spec).map_err(|e| CliError::Usage(e.to_string()))?;
            let table = region_table(&cells);
            emit(&table, out.as_deref())?;
            let view = PlotSpec::Heatmap {
                x: "d_A".into(),
                y: "d_B".into(),
                value: "kind".into(),
            };
            emit_plot(&table, &view, "Equilibrium regions", plot.as_deref())
        }
        Command::Reproduce {
            figure,
            points,
            out,
            plot,
        } => {
            let data =
                drgame_cli::generate(figure, points.unwrap_or(figure.default_points())).map_err(|e| match e {
                    drgame_cli::sweep::SweepError::Game(g) => CliError::Solver(g.to_string()),
                    other => CliError::Usage(other.to_string()),
                })?;
            emit(&data.table, out.as_deref())?;
            emit_plot(&data.table, &data.plot, figure.title(), plot.as_deref())
        }
        Command::Verify {
            config,
            step,
            assert_profile,
        } => {
            let (game, parsed) = load_config_file(&config)?;
            warn(&config, &parsed.warnings);
            let asserted = assert_profile.map(|(a, b)| RevelationProfile::new(a, b));
            let report = run_verify(&game, step, asserted)?;
            print!("{}", report.render());
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Mismatch("solver and oracle disagree".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let command = Cli::command().mut_subcommand("reproduce", |c| c.after_help(figure_help()));
    let cli = match command.try_get_matches().and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

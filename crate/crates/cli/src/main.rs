use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use darkplex::sweep::{
    execute, ldos_table, load_config, modes_table, observable_columns, preset, run_preset, Axis, Evaluator, Format,
    Model, QuantumSolver, RunConfig, RunOptions, RunReport, SweepError, SweepSpec, PRESETS,
};

/// Bright/dark plasmon strong-coupling simulator.
///
/// All subcommands read an optional TOML configuration (every key is
/// optional; missing keys take the built-in defaults) and accept repeated
/// `--set section.key=value` overrides.
#[derive(Debug, Parser)]
#[command(name = "darkplex", version = darkplex::sweep::version_string(), about)]
struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Override one configuration value, e.g. `--set cmt.g_d=0`.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "DARKPLEX_THREADS")]
    threads: Option<usize>,

    /// Output format of data files.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classical scattering spectrum |s-|^2 over the [grid] frequencies.
    Spectrum {
        #[arg(long, default_value = "spectrum.csv")]
        out: PathBuf,
    },
    /// Classical scattering map over [map] detunings x [grid] frequencies.
    Map {
        #[arg(long, default_value = "map.csv")]
        out: PathBuf,
    },
    /// Plasmon mode ladder of the sphere, plus its LDOS over [grid] in
    /// `<out stem>_ldos`.
    Modes {
        #[arg(long, default_value = "modes.csv")]
        out: PathBuf,
    },
    /// Quantum scattering intensity and g2(0) versus drive frequency over [grid].
    Quantum {
        #[arg(long, default_value = "quantum.csv")]
        out: PathBuf,
    },
    /// Quantum observables at the configured drive frequency.
    G2 {
        /// Also solve the full master equation.
        #[arg(long)]
        lindblad: bool,
    },
    /// Run a figure preset (data files, sidecars and a plotting script).
    Preset {
        /// Preset name; see --list.
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// List presets and exit.
        #[arg(long)]
        list: bool,
        /// Print the preset's sweep specifications instead of running them.
        #[arg(long)]
        print_spec: bool,
    },
    /// Run a sweep specification file.
    Sweep {
        spec: PathBuf,
        /// Overrides the spec's output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the resolved configuration as TOML.
    Config,
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, SweepError> {
    let mut config = match &cli.config {
        Some(path) => load_config(path)?,
        None => RunConfig::default(),
    };
    for assignment in &cli.set {
        config.apply_override(assignment)?;
    }
    Ok(config)
}

fn report(r: &RunReport) {
    for p in &r.outputs {
        eprintln!("wrote {}", p.display());
    }
}

fn run_spec(spec: &SweepSpec, config: &RunConfig, options: RunOptions) -> Result<(), SweepError> {
    let r = execute(spec, config, None, options)?;
    report(&r);
    r.into_result().map(|_| ())
}

fn with_suffix(path: &Path, suffix: &str, format: Format) -> PathBuf {
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    path.with_file_name(format!("{stem}{suffix}.{}", format.extension()))
}

fn run(cli: Cli) -> Result<(), SweepError> {
    let config = resolve_config(&cli)?;
    let format = match cli.format {
        OutputFormat::Csv => Format::Csv,
        OutputFormat::Json => Format::Json,
    };
    let options = RunOptions {
        threads: cli.threads.filter(|&n| n > 0),
        format,
    };
    let grid = config.grid;
    match cli.command {
        Command::Spectrum { out } => {
            let axis = Axis::new("probe.omega", grid.omega_min, grid.omega_max, grid.points);
            run_spec(&SweepSpec::new(Model::Cmt, out, axis), &config, options)
        }
        Command::Map { out } => {
            let w = config.cmt.omega_b;
            let m = config.map;
            let spec = SweepSpec::new(
                Model::Cmt,
                out,
                Axis::new("cmt.omega_e", w + m.delta_min, w + m.delta_max, m.points),
            )
            .with_axis2(Axis::new("probe.omega", grid.omega_min, grid.omega_max, grid.points));
            run_spec(&spec, &config, options)
        }
        Command::Quantum { out } => {
            let axis = Axis::new("quantum.omega_l", grid.omega_min, grid.omega_max, grid.points);
            run_spec(&SweepSpec::new(Model::Quantum, out, axis), &config, options)
        }
        Command::Modes { out } => {
            let modes = modes_table(&config.nanosphere)?;
            let ldos = ldos_table(&config.nanosphere, &grid.values())?;
            let modes_path = out.with_extension(format.extension());
            let ldos_path = with_suffix(&out, "_ldos", format);
            modes.write(&modes_path, format)?;
            ldos.write(&ldos_path, format)?;
            eprintln!("wrote {}\nwrote {}", modes_path.display(), ldos_path.display());
            Ok(())
        }
        Command::G2 { lindblad } => {
            let evaluator = Evaluator::new();
            let mut solvers = vec![("weak_pump", QuantumSolver::WeakPump)];
            if lindblad {
                solvers.push(("lindblad", QuantumSolver::Lindblad));
            }
            let mut failed = 0;
            for (label, solver) in solvers {
                let mut c = config.clone();
                c.quantum.solver = solver;
                let r = evaluator.evaluate(Model::Quantum, &c);
                println!("[{label}]");
                for ((name, unit), v) in observable_columns(Model::Quantum).iter().zip(&r.values) {
                    println!("{name} = {} # {unit}", darkplex::sweep::format_number(*v));
                }
                if let Some(e) = r.error {
                    println!("error = {e:?}");
                    failed += 1;
                }
            }
            if failed > 0 {
                return Err(SweepError::Partial { failed, total: 1 + lindblad as usize });
            }
            Ok(())
        }
        Command::Preset {
            name,
            out,
            list,
            print_spec,
        } => {
            if list {
                for (n, d) in PRESETS {
                    println!("{n:7} {d}");
                }
                return Ok(());
            }
            let name = name.expect("clap enforces a name");
            if print_spec {
                for spec in preset(&name, &config)?.sweeps() {
                    println!("{}", spec.to_toml_string());
                }
                return Ok(());
            }
            let r = run_preset(&name, &config, &out, options)?;
            report(&r);
            r.into_result().map(|_| ())
        }
        Command::Sweep { spec, out } => {
            let mut spec = SweepSpec::load(&spec)?;
            if let Some(out) = out {
                spec.output = out;
            }
            run_spec(&spec, &config, options)
        }
        Command::Config => {
            print!("{}", config.to_toml_string());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use fockent::TailPolicy;
use fockent_cli::{
    emit_csv, run, write_csv, CliError, Command, Herald, ParamRange, Scheme, SweepConfig,
};

/// Sweeps over entangled squeezed vacuum diagnostics; one CSV row per grid
/// point.
#[derive(Parser, Debug)]
#[command(name = "fockent", version)]
struct Cli {
    command: Command,

    /// Sweep axes: `name=value` or `name=min..max:steps` (`pi` allowed)
    params: Vec<String>,

    /// Fock cutoff per mode (default depends on the command)
    #[arg(long)]
    cutoff: Option<usize>,

    /// Fail instead of warning when a truncation tail is too heavy
    #[arg(long)]
    strict: bool,

    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Generation scheme
    #[arg(long, value_enum, default_value = "a")]
    scheme: Scheme,

    /// Heralding outcome for `generate`
    #[arg(long, value_enum, default_value = "plus")]
    outcome: Herald,

    /// Cross-Kerr phase for scheme b (`pi` allowed)
    #[arg(long, default_value = "pi")]
    gamma: String,

    /// Probe times searched by `ent-power-opt`: [0, tau-max]
    #[arg(long, default_value_t = 10.0)]
    tau_max: f64,

    #[arg(long, default_value_t = 101)]
    tau_steps: usize,

    /// Log progress to stderr (repeat for more)
    #[arg(short, long, action = clap::ArgAction::Count)]
    verbose: u8,
}

fn config(cli: &Cli) -> Result<SweepConfig, CliError> {
    let ranges = cli
        .params
        .iter()
        .map(|p| p.parse::<ParamRange>())
        .collect::<Result<_, _>>()?;
    let mut cfg = SweepConfig::new(cli.command, ranges);
    if cli.cutoff == Some(0) {
        return Err(CliError::Usage("cutoff must be positive".into()));
    }
    if cli.tau_steps == 0 || !(cli.tau_max >= 0.0 && cli.tau_max.is_finite()) {
        return Err(CliError::Usage(
            "tau grid needs tau-max ≥ 0 and tau-steps ≥ 1".into(),
        ));
    }
    cfg.options.cutoff = cli.cutoff;
    cfg.options.policy = if cli.strict {
        TailPolicy::Strict
    } else {
        TailPolicy::Warn
    };
    cfg.options.scheme = cli.scheme;
    cfg.options.outcome = cli.outcome;
    cfg.options.gamma = fockent_cli::params::parse_number(&cli.gamma)?;
    cfg.options.tau_max = cli.tau_max;
    cfg.options.tau_steps = cli.tau_steps;
    Ok(cfg)
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let result = run(&config(cli)?)?;
    match &cli.out {
        Some(path) => emit_csv(&result, path),
        None => write_csv(&result, std::io::stdout().lock()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).init();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string().replace(['\n', ','], ";");
            eprintln!("error,{},{}", e.kind(), msg);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

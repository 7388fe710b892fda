use std::path::PathBuf;
use std::process::ExitCode;

use d2d_offload::analytics::{aggregate_offload_ratio, SystemParams};
use d2d_offload::caching::zipf_demand;
use d2d_offload::montecarlo::estimate_offload_ratio;
use d2d_offload_cli::config::{load_config, ExperimentConfig};
use d2d_offload_cli::sweep::{
    base_network, draw_placement, emit_csv, render_csv, sig6, sweep_speed, sweep_users, RunError,
    SweepRow,
};

const USAGE: &str = "\
Usage: d2d-offload <COMMAND> [OPTIONS]

Commands:
  analytic       Closed-form data offloading ratio for one configuration
  simulate       Monte Carlo estimate of the data offloading ratio
  sweep-users    Analytic + Monte Carlo ratios over a grid of user counts
  sweep-speed    Analytic + Monte Carlo ratios over a grid of speed factors

Options:
  --config PATH          Configuration file (defaults apply when omitted)
  --trials N             Override [run] trials
  --seed S               Override [run] seed (required somewhere for all commands)
  --out PATH             Write sweep CSV here instead of stdout
  --speed-factors LIST   Comma-separated speed factors (default 1,2,4,8,16)
  --user-counts LIST     Comma-separated user counts (default 5,10,15,20,25,30)
  --help                 Show this help
";

enum Command {
    Analytic,
    Simulate,
    SweepUsers,
    SweepSpeed,
}

struct CliArgs {
    command: Command,
    config: Option<PathBuf>,
    trials: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    speed_factors: Vec<f64>,
    user_counts: Vec<usize>,
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--help" || a == "-h") {
        print!("{USAGE}");
        return ExitCode::SUCCESS;
    }
    let parsed = match parse_args(&args) {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("error[usage]: {msg}");
            eprint!("{USAGE}");
            return ExitCode::from(2);
        }
    };
    match run(parsed) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Config(msg)) => {
            eprintln!("error[config]: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Io(msg)) => {
            eprintln!("error[io]: {msg}");
            ExitCode::FAILURE
        }
        Err(AppError::Runtime(msg)) => {
            eprintln!("error[runtime]: {msg}");
            ExitCode::FAILURE
        }
    }
}

enum AppError {
    Config(String),
    Io(String),
    Runtime(String),
}

impl From<RunError> for AppError {
    fn from(e: RunError) -> Self {
        match e {
            RunError::SeedRequired => AppError::Config(e.to_string()),
            RunError::Config(inner) => AppError::Config(inner.to_string()),
            RunError::Io { .. } => AppError::Io(e.to_string()),
            RunError::Analytics(inner) => AppError::Runtime(inner.to_string()),
        }
    }
}

fn parse_args(args: &[String]) -> Result<CliArgs, String> {
    let mut iter = args.iter();
    let command = match iter.next().map(String::as_str) {
        Some("analytic") => Command::Analytic,
        Some("simulate") => Command::Simulate,
        Some("sweep-users") => Command::SweepUsers,
        Some("sweep-speed") => Command::SweepSpeed,
        Some(other) => return Err(format!("unknown command `{other}`")),
        None => return Err("missing command".to_string()),
    };
    let mut cli = CliArgs {
        command,
        config: None,
        trials: None,
        seed: None,
        out: None,
        speed_factors: vec![1.0, 2.0, 4.0, 8.0, 16.0],
        user_counts: vec![5, 10, 15, 20, 25, 30],
    };
    while let Some(flag) = iter.next() {
        let mut value = |name: &str| {
            iter.next()
                .cloned()
                .ok_or(format!("flag {name} needs a value"))
        };
        match flag.as_str() {
            "--config" => cli.config = Some(PathBuf::from(value("--config")?)),
            "--out" => cli.out = Some(PathBuf::from(value("--out")?)),
            "--trials" => {
                cli.trials = Some(
                    value("--trials")?
                        .parse()
                        .map_err(|_| "cannot parse --trials".to_string())?,
                )
            }
            "--seed" => {
                cli.seed = Some(
                    value("--seed")?
                        .parse()
                        .map_err(|_| "cannot parse --seed".to_string())?,
                )
            }
            "--speed-factors" => {
                cli.speed_factors = value("--speed-factors")?
                    .split(',')
                    .map(|s| s.trim().parse())
                    .collect::<Result<_, _>>()
                    .map_err(|_| "cannot parse --speed-factors".to_string())?;
            }
            "--user-counts" => {
                cli.user_counts = value("--user-counts")?
                    .split(',')
                    .map(|s| s.trim().parse())
                    .collect::<Result<_, _>>()
                    .map_err(|_| "cannot parse --user-counts".to_string())?;
            }
            other => return Err(format!("unknown flag `{other}`")),
        }
    }
    Ok(cli)
}

fn load_effective_config(cli: &CliArgs) -> Result<ExperimentConfig, AppError> {
    let mut cfg = match &cli.config {
        Some(path) => load_config(path).map_err(|e| AppError::Config(e.to_string()))?,
        None => ExperimentConfig::default(),
    };
    if let Some(trials) = cli.trials {
        cfg.trials = trials;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = Some(seed);
    }
    cfg.validate()
        .map_err(|e| AppError::Config(e.to_string()))?;
    if cfg.seed.is_none() {
        return Err(AppError::Config(RunError::SeedRequired.to_string()));
    }
    Ok(cfg)
}

/// One-line record of the effective configuration, on stderr so CSV output
/// stays clean; mobility parameters are echoed verbatim.
fn log_effective_config(cfg: &ExperimentConfig) {
    let mobility = match cfg.mobility_mode {
        d2d_offload_cli::config::MobilityMode::Homogeneous => format!(
            "mode=homogeneous lambda_c={} lambda_i={}",
            cfg.lambda_c, cfg.lambda_i
        ),
        d2d_offload_cli::config::MobilityMode::GammaHeterogeneous => format!(
            "mode=gamma_heterogeneous gamma_shape_i={} gamma_scale_i={} contact_rate_multiplier={}",
            cfg.gamma_shape_i, cfg.gamma_scale_i, cfg.contact_rate_multiplier
        ),
    };
    eprintln!(
        "config: n_users={} n_files={} cache_capacity={} zipf_gamma={} deadline_s={} \
         file_size_bits={} rate_bps={} {mobility} speed_factor={} trials={} seed={}",
        cfg.n_users,
        cfg.n_files,
        cfg.cache_capacity,
        cfg.zipf_gamma,
        cfg.deadline_s,
        cfg.file_size_bits,
        cfg.rate_bps,
        cfg.speed_factor,
        cfg.trials,
        cfg.seed.expect("validated"),
    );
}

fn run(cli: CliArgs) -> Result<(), AppError> {
    let cfg = load_effective_config(&cli)?;
    let seed = cfg.seed.expect("checked by load_effective_config");
    log_effective_config(&cfg);
    match cli.command {
        Command::Analytic => {
            let demand = zipf_demand(cfg.n_files, cfg.zipf_gamma, cfg.n_users);
            let net = base_network(&cfg, seed, 0).scale_speed(cfg.speed_factor);
            let placement = draw_placement(&cfg, &demand, seed, 0);
            let sys = SystemParams::new(cfg.file_size_bits, cfg.rate_bps, cfg.deadline_s);
            let ratio = aggregate_offload_ratio(&net, &placement, &demand, &sys)
                .map_err(|e| AppError::Runtime(e.to_string()))?;
            println!("analytic_ratio = {}", sig6(ratio));
            Ok(())
        }
        Command::Simulate => {
            let demand = zipf_demand(cfg.n_files, cfg.zipf_gamma, cfg.n_users);
            let net = base_network(&cfg, seed, 0).scale_speed(cfg.speed_factor);
            let placement = draw_placement(&cfg, &demand, seed, 0);
            let sys = SystemParams::new(cfg.file_size_bits, cfg.rate_bps, cfg.deadline_s);
            let est = estimate_offload_ratio(&net, &placement, &demand, &sys, cfg.trials, seed);
            println!("mc_ratio = {}", sig6(est.mean));
            println!("std_error = {}", sig6(est.std_error));
            println!(
                "ci95 = [{}, {}]",
                sig6((est.mean - 1.96 * est.std_error).max(0.0)),
                sig6((est.mean + 1.96 * est.std_error).min(1.0))
            );
            println!("trials = {}", est.trials);
            println!("seed = {}", est.seed);
            Ok(())
        }
        Command::SweepUsers => {
            let rows = sweep_users(&cfg, &cli.user_counts)?;
            write_rows(&rows, cli.out.as_deref())
        }
        Command::SweepSpeed => {
            let rows = sweep_speed(&cfg, &cli.speed_factors)?;
            write_rows(&rows, cli.out.as_deref())
        }
    }
}

fn write_rows(rows: &[SweepRow], out: Option<&std::path::Path>) -> Result<(), AppError> {
    match out {
        Some(path) => {
            emit_csv(rows, path)?;
            Ok(())
        }
        None => {
            print!("{}", render_csv(rows));
            Ok(())
        }
    }
}

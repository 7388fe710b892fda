//! Experiment sweeps and CSV emission.
//!
//! Per sweep point: build (or rescale) the pair rates, draw a fresh random
//! placement where the sweep calls for one, evaluate the analytic offload
//! ratio, and estimate it by Monte Carlo. All randomness derives from the
//! config seed through fixed tags, so a sweep is a pure function of
//! `(config, seed)`.

use crate::config::{ConfigError, ExperimentConfig, MobilityMode};
use crate::hetero::draw_heterogeneous_params;
use d2d_offload::analytics::{aggregate_offload_ratio, AnalyticsError, SystemParams};
use d2d_offload::caching::{random_caching, zipf_demand, Placement, RequestModel};
use d2d_offload::mobility::{NetworkMobility, PairParams};
use d2d_offload::montecarlo::estimate_offload_ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::fs;
use std::path::Path;

/// One evaluated sweep point. Confidence bounds are the normal-approximation
/// 95% interval `mean ± 1.96·SE`, clipped to [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub sweep_name: &'static str,
    pub sweep_value: f64,
    pub analytic_ratio: f64,
    pub mc_ratio: f64,
    pub mc_ci_low: f64,
    pub mc_ci_high: f64,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug)]
pub enum RunError {
    SeedRequired,
    Config(ConfigError),
    Analytics(AnalyticsError),
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::SeedRequired => {
                write!(f, "a seed is required: pass --seed or set [run] seed")
            }
            RunError::Config(e) => write!(f, "{e}"),
            RunError::Analytics(e) => write!(f, "{e}"),
            RunError::Io { path, source } => write!(f, "cannot write {path}: {source}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<AnalyticsError> for RunError {
    fn from(e: AnalyticsError) -> Self {
        RunError::Analytics(e)
    }
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

// Tags separating the seed streams of the three random stages.
const TAG_MOBILITY: u64 = 1;
const TAG_PLACEMENT: u64 = 2;
const TAG_TRIALS: u64 = 3;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn sub_seed(seed: u64, tag: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(tag.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index)))
}

/// Pair rates for a sweep point, before speed scaling.
pub fn base_network(cfg: &ExperimentConfig, seed: u64, point: u64) -> NetworkMobility {
    match cfg.mobility_mode {
        MobilityMode::Homogeneous => {
            NetworkMobility::homogeneous(cfg.n_users, PairParams::new(cfg.lambda_c, cfg.lambda_i))
        }
        MobilityMode::GammaHeterogeneous => {
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, TAG_MOBILITY, point));
            draw_heterogeneous_params(cfg, &mut rng)
        }
    }
}

/// Fresh weighted random placement for a sweep point.
pub fn draw_placement(
    cfg: &ExperimentConfig,
    demand: &RequestModel,
    seed: u64,
    point: u64,
) -> Placement {
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, TAG_PLACEMENT, point));
    random_caching(
        cfg.n_users,
        cfg.n_files,
        cfg.cache_capacity,
        demand.row(0),
        &mut rng,
    )
}

#[allow(clippy::too_many_arguments)]
fn evaluate_point(
    cfg: &ExperimentConfig,
    net_scaled: &NetworkMobility,
    placement: &Placement,
    demand: &RequestModel,
    sweep_name: &'static str,
    sweep_value: f64,
    seed: u64,
    point: u64,
) -> Result<SweepRow, RunError> {
    let sys = SystemParams::new(cfg.file_size_bits, cfg.rate_bps, cfg.deadline_s);
    let analytic_ratio = aggregate_offload_ratio(net_scaled, placement, demand, &sys)?;
    let mc = estimate_offload_ratio(
        net_scaled,
        placement,
        demand,
        &sys,
        cfg.trials,
        sub_seed(seed, TAG_TRIALS, point),
    );
    Ok(SweepRow {
        sweep_name,
        sweep_value,
        analytic_ratio,
        mc_ratio: mc.mean,
        mc_ci_low: (mc.mean - 1.96 * mc.std_error).max(0.0),
        mc_ci_high: (mc.mean + 1.96 * mc.std_error).min(1.0),
        trials: cfg.trials,
        seed,
    })
}

/// One row per user count: fresh pair rates and a fresh random placement at
/// each count, analytic and Monte Carlo ratios side by side.
pub fn sweep_users(
    cfg: &ExperimentConfig,
    user_counts: &[usize],
) -> Result<Vec<SweepRow>, RunError> {
    assert!(!user_counts.is_empty(), "user_counts must be nonempty");
    assert!(
        user_counts.iter().all(|&n| n >= 2),
        "user sweeps need at least 2 users per point"
    );
    let seed = cfg.seed.ok_or(RunError::SeedRequired)?;
    let mut rows = Vec::with_capacity(user_counts.len());
    for (idx, &n_users) in user_counts.iter().enumerate() {
        let point = idx as u64;
        let mut point_cfg = cfg.clone();
        point_cfg.n_users = n_users;
        point_cfg.validate()?;
        let demand = zipf_demand(point_cfg.n_files, point_cfg.zipf_gamma, n_users);
        let net = base_network(&point_cfg, seed, point).scale_speed(point_cfg.speed_factor);
        let placement = draw_placement(&point_cfg, &demand, seed, point);
        rows.push(evaluate_point(
            &point_cfg,
            &net,
            &placement,
            &demand,
            "n_users",
            n_users as f64,
            seed,
            point,
        )?);
    }
    Ok(rows)
}

/// One row per speed factor, sharing a single base network and placement so
/// only the rates scale between rows.
pub fn sweep_speed(
    cfg: &ExperimentConfig,
    speed_factors: &[f64],
) -> Result<Vec<SweepRow>, RunError> {
    let seed = cfg.seed.ok_or(RunError::SeedRequired)?;
    let demand = zipf_demand(cfg.n_files, cfg.zipf_gamma, cfg.n_users);
    let net = base_network(cfg, seed, 0);
    let placement = draw_placement(cfg, &demand, seed, 0);
    sweep_speed_with_placement(cfg, speed_factors, &net, &placement, &demand)
}

/// [`sweep_speed`] over a caller-supplied base network and placement.
pub fn sweep_speed_with_placement(
    cfg: &ExperimentConfig,
    speed_factors: &[f64],
    net: &NetworkMobility,
    placement: &Placement,
    demand: &RequestModel,
) -> Result<Vec<SweepRow>, RunError> {
    assert!(!speed_factors.is_empty(), "speed_factors must be nonempty");
    assert!(
        speed_factors.iter().all(|&s| s > 0.0 && s.is_finite()),
        "speed factors must be positive"
    );
    let seed = cfg.seed.ok_or(RunError::SeedRequired)?;
    let mut rows = Vec::with_capacity(speed_factors.len());
    for (idx, &s) in speed_factors.iter().enumerate() {
        let scaled = net.scale_speed(s);
        rows.push(evaluate_point(
            cfg,
            &scaled,
            placement,
            demand,
            "speed_factor",
            s,
            seed,
            idx as u64,
        )?);
    }
    Ok(rows)
}

/// Renders rows as CSV: fixed header, decimals at 6 significant digits,
/// `\n` line endings.
pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(
        "sweep_name,sweep_value,analytic_ratio,mc_ratio,mc_ci_low,mc_ci_high,trials,seed\n",
    );
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.sweep_name,
            sig6(r.sweep_value),
            sig6(r.analytic_ratio),
            sig6(r.mc_ratio),
            sig6(r.mc_ci_low),
            sig6(r.mc_ci_high),
            r.trials,
            r.seed
        ));
    }
    out
}

pub fn emit_csv(rows: &[SweepRow], path: &Path) -> Result<(), RunError> {
    fs::write(path, render_csv(rows)).map_err(|source| RunError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Shortest decimal form of `x` rounded to 6 significant digits.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(5 - magnitude);
    let rounded = (x * scale).round() / scale;
    format!("{rounded}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_cfg() -> ExperimentConfig {
        ExperimentConfig {
            n_users: 6,
            n_files: 12,
            cache_capacity: 3,
            trials: 400,
            seed: Some(31),
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn sig6_formats() {
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(15.0), "15");
        assert_eq!(sig6(0.4192734567), "0.419273");
        assert_eq!(sig6(0.0002), "0.0002");
        assert_eq!(sig6(123456789.0), "123457000");
        assert_eq!(sig6(-0.123456789), "-0.123457");
    }

    #[test]
    fn empty_rows_render_header_only() {
        let csv = render_csv(&[]);
        assert_eq!(
            csv,
            "sweep_name,sweep_value,analytic_ratio,mc_ratio,mc_ci_low,mc_ci_high,trials,seed\n"
        );
    }

    #[test]
    fn one_row_round_trips_through_a_csv_reader() {
        let row = SweepRow {
            sweep_name: "speed_factor",
            sweep_value: 2.0,
            analytic_ratio: 0.3612345678,
            mc_ratio: 0.3598765432,
            mc_ci_low: 0.3512345678,
            mc_ci_high: 0.3687654321,
            trials: 1000,
            seed: 42,
        };
        let csv = render_csv(std::slice::from_ref(&row));
        let mut lines = csv.lines();
        let header: Vec<&str> = lines.next().unwrap().split(',').collect();
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(header.len(), 8);
        assert_eq!(fields[0], "speed_factor");
        assert_eq!(fields[1].parse::<f64>().unwrap(), 2.0);
        assert_eq!(fields[2].parse::<f64>().unwrap(), 0.361235);
        assert_eq!(fields[3].parse::<f64>().unwrap(), 0.359877);
        assert_eq!(fields[6].parse::<usize>().unwrap(), row.trials);
        assert_eq!(fields[7].parse::<u64>().unwrap(), row.seed);
    }

    #[test]
    fn missing_seed_is_an_error() {
        let mut cfg = quick_cfg();
        cfg.seed = None;
        assert!(matches!(
            sweep_users(&cfg, &[4, 6]),
            Err(RunError::SeedRequired)
        ));
        assert!(matches!(
            sweep_speed(&cfg, &[1.0, 2.0]),
            Err(RunError::SeedRequired)
        ));
    }

    #[test]
    fn single_count_gives_single_row() {
        let rows = sweep_users(&quick_cfg(), &[5]).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].sweep_value, 5.0);
        assert!(rows[0].mc_ci_low <= rows[0].mc_ratio && rows[0].mc_ratio <= rows[0].mc_ci_high);
        assert!((0.0..=1.0).contains(&rows[0].analytic_ratio));
    }

    #[test]
    fn sweeps_are_deterministic_for_a_fixed_seed() {
        let cfg = quick_cfg();
        let a = render_csv(&sweep_users(&cfg, &[4, 6]).unwrap());
        let b = render_csv(&sweep_users(&cfg, &[4, 6]).unwrap());
        assert_eq!(a, b);
        let c = render_csv(&sweep_speed(&cfg, &[1.0, 2.0, 4.0]).unwrap());
        let d = render_csv(&sweep_speed(&cfg, &[1.0, 2.0, 4.0]).unwrap());
        assert_eq!(c, d);
    }

    #[test]
    fn speed_rows_increase_analytically_and_match_mc() {
        let mut cfg = quick_cfg();
        cfg.trials = 2_000;
        let rows = sweep_speed(&cfg, &[1.0, 2.0, 4.0, 8.0]).unwrap();
        for pair in rows.windows(2) {
            assert!(pair[1].analytic_ratio > pair[0].analytic_ratio);
        }
        for row in &rows {
            let se = (row.mc_ci_high - row.mc_ratio) / 1.96;
            let tol = (3.0 * se).max(0.02);
            assert!(
                (row.analytic_ratio - row.mc_ratio).abs() <= tol,
                "row {row:?} disagrees with its MC estimate"
            );
        }
    }

    #[test]
    fn all_same_cache_placement_is_flat_in_speed() {
        let cfg = quick_cfg();
        let demand = zipf_demand(cfg.n_files, cfg.zipf_gamma, cfg.n_users);
        let placement = d2d_offload::caching::uniform_all_same_placement(
            cfg.n_users,
            cfg.n_files,
            cfg.cache_capacity,
        );
        let net = base_network(&cfg, cfg.seed.unwrap(), 0);
        let rows =
            sweep_speed_with_placement(&cfg, &[1.0, 2.0, 4.0, 8.0], &net, &placement, &demand)
                .unwrap();
        for row in &rows[1..] {
            assert_eq!(
                row.analytic_ratio.to_bits(),
                rows[0].analytic_ratio.to_bits()
            );
        }
    }

    #[test]
    fn user_sweep_trend_is_nondecreasing_across_seeds() {
        // Statistical trend: averaged over placement seeds, more users mean
        // a higher analytic offload ratio.
        let counts = [5usize, 10, 15, 20, 25, 30];
        let mut sums = vec![0.0; counts.len()];
        for seed in 0..10u64 {
            let cfg = ExperimentConfig {
                trials: 1, // analytic trend only; keep MC negligible
                seed: Some(seed),
                ..ExperimentConfig::default()
            };
            let rows = sweep_users(&cfg, &counts).unwrap();
            for (k, row) in rows.iter().enumerate() {
                sums[k] += row.analytic_ratio;
            }
        }
        for pair in sums.windows(2) {
            assert!(
                pair[1] >= pair[0],
                "averaged analytic ratios not nondecreasing: {sums:?}"
            );
        }
    }
}

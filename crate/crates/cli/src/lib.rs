//! Experiment harness for the d2d-offload library: configuration files,
//! heterogeneous rate generation, analytic/Monte-Carlo sweeps, and CSV
//! output. The `d2d-offload` binary is a thin shell over this crate.

pub mod config;
pub mod hetero;
pub mod sweep;

pub use config::{load_config, parse_config, ConfigError, ExperimentConfig, MobilityMode};
pub use hetero::draw_heterogeneous_params;
pub use sweep::{
    emit_csv, render_csv, sweep_speed, sweep_speed_with_placement, sweep_users, RunError, SweepRow,
};

//! Experiment configuration: flat `key = value` text with `[section]`
//! headers, strict about unknown keys so typos fail loudly.
//!
//! ```text
//! [system]
//! n_users = 15
//! n_files = 100
//! cache_capacity = 5
//! zipf_gamma = 0.6
//! deadline_s = 300
//! file_size_bits = 1.5e8
//! rate_bps = 1e6
//!
//! [mobility]
//! mode = homogeneous          # or gamma_heterogeneous
//! lambda_c = 0.001
//! lambda_i = 0.0002
//! gamma_shape_i = 4.43
//! gamma_scale_i = 9.191176470588235e-4
//! contact_rate_multiplier = 5
//! speed_factor = 1
//!
//! [run]
//! trials = 10000
//! seed = 42
//! ```
//!
//! Every key is optional; omitted keys take the defaults above (seed has no
//! default). With the defaults, one file needs half the deadline to download
//! (`C/R = 150 s` against `deadline_s = 300`).

use std::fmt;
use std::fs;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MobilityMode {
    /// All pairs share `lambda_c` / `lambda_i`.
    Homogeneous,
    /// Per-pair rates drawn from gamma distributions: inter-contact rates
    /// from Gamma(`gamma_shape_i`, `gamma_scale_i`), contact rates from
    /// Gamma(`gamma_shape_i · m²`, `gamma_scale_i / m`) with
    /// `m = contact_rate_multiplier`, so mean contact rates are `m` times
    /// mean inter-contact rates.
    GammaHeterogeneous,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n_users: usize,
    pub n_files: usize,
    pub cache_capacity: usize,
    pub zipf_gamma: f64,
    pub deadline_s: f64,
    pub file_size_bits: f64,
    pub rate_bps: f64,
    pub mobility_mode: MobilityMode,
    pub lambda_c: f64,
    pub lambda_i: f64,
    pub gamma_shape_i: f64,
    pub gamma_scale_i: f64,
    pub contact_rate_multiplier: f64,
    pub speed_factor: f64,
    pub trials: usize,
    pub seed: Option<u64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n_users: 15,
            n_files: 100,
            cache_capacity: 5,
            zipf_gamma: 0.6,
            deadline_s: 300.0,
            file_size_bits: 1.5e8,
            rate_bps: 1e6,
            mobility_mode: MobilityMode::Homogeneous,
            lambda_c: 0.001,
            lambda_i: 0.0002,
            gamma_shape_i: 4.43,
            gamma_scale_i: 1.0 / 1088.0,
            contact_rate_multiplier: 5.0,
            speed_factor: 1.0,
            trials: 10_000,
            seed: None,
        }
    }
}

impl ExperimentConfig {
    /// Checks every invariant, naming the violated one.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let fail = |message: String| Err(ConfigError::Validation { message });
        if self.n_users < 1 {
            return fail("n_users must be at least 1".into());
        }
        if self.n_files < 1 {
            return fail("n_files must be at least 1".into());
        }
        if self.cache_capacity > self.n_files {
            return fail(format!(
                "cache_capacity ({}) cannot exceed n_files ({})",
                self.cache_capacity, self.n_files
            ));
        }
        if !(self.zipf_gamma >= 0.0 && self.zipf_gamma.is_finite()) {
            return fail("zipf_gamma must be nonnegative".into());
        }
        for (name, value) in [
            ("deadline_s", self.deadline_s),
            ("file_size_bits", self.file_size_bits),
            ("rate_bps", self.rate_bps),
            ("lambda_c", self.lambda_c),
            ("lambda_i", self.lambda_i),
            ("gamma_shape_i", self.gamma_shape_i),
            ("gamma_scale_i", self.gamma_scale_i),
            ("contact_rate_multiplier", self.contact_rate_multiplier),
            ("speed_factor", self.speed_factor),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return fail(format!(
                    "{name} must be a positive finite number, got {value}"
                ));
            }
        }
        let download_time = self.file_size_bits / self.rate_bps;
        if self.deadline_s <= download_time {
            return fail(format!(
                "deadline_s ({}) must exceed the single-file download time \
                 file_size_bits/rate_bps ({download_time} s)",
                self.deadline_s
            ));
        }
        if self.trials < 1 {
            return fail("trials must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug)]
pub enum ConfigError {
    Io {
        path: String,
        source: std::io::Error,
    },
    Parse {
        line: usize,
        message: String,
    },
    Validation {
        message: String,
    },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io { path, source } => write!(f, "cannot read {path}: {source}"),
            ConfigError::Parse { line, message } => write!(f, "line {line}: {message}"),
            ConfigError::Validation { message } => write!(f, "{message}"),
        }
    }
}

impl std::error::Error for ConfigError {}

pub fn load_config(path: &Path) -> Result<ExperimentConfig, ConfigError> {
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let mut cfg = ExperimentConfig::default();
    let mut section = String::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name.strip_suffix(']').ok_or(ConfigError::Parse {
                line: line_no,
                message: format!("unterminated section header `{line}`"),
            })?;
            section = name.trim().to_string();
            if !matches!(section.as_str(), "system" | "mobility" | "run") {
                return Err(ConfigError::Parse {
                    line: line_no,
                    message: format!("unknown section `[{section}]`"),
                });
            }
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(ConfigError::Parse {
            line: line_no,
            message: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = key.trim();
        let value = value.trim();
        apply_key(&mut cfg, &section, key, value, line_no)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn apply_key(
    cfg: &mut ExperimentConfig,
    section: &str,
    key: &str,
    value: &str,
    line: usize,
) -> Result<(), ConfigError> {
    fn num<T: std::str::FromStr>(value: &str, key: &str, line: usize) -> Result<T, ConfigError> {
        value.parse().map_err(|_| ConfigError::Parse {
            line,
            message: format!("cannot parse `{value}` as a value for {key}"),
        })
    }
    match (section, key) {
        ("system", "n_users") => cfg.n_users = num(value, key, line)?,
        ("system", "n_files") => cfg.n_files = num(value, key, line)?,
        ("system", "cache_capacity") => cfg.cache_capacity = num(value, key, line)?,
        ("system", "zipf_gamma") => cfg.zipf_gamma = num(value, key, line)?,
        ("system", "deadline_s") => cfg.deadline_s = num(value, key, line)?,
        ("system", "file_size_bits") => cfg.file_size_bits = num(value, key, line)?,
        ("system", "rate_bps") => cfg.rate_bps = num(value, key, line)?,
        ("mobility", "mode") => {
            cfg.mobility_mode = match value {
                "homogeneous" => MobilityMode::Homogeneous,
                "gamma_heterogeneous" => MobilityMode::GammaHeterogeneous,
                other => {
                    return Err(ConfigError::Parse {
                        line,
                        message: format!(
                            "mode must be `homogeneous` or `gamma_heterogeneous`, got `{other}`"
                        ),
                    })
                }
            }
        }
        ("mobility", "lambda_c") => cfg.lambda_c = num(value, key, line)?,
        ("mobility", "lambda_i") => cfg.lambda_i = num(value, key, line)?,
        ("mobility", "gamma_shape_i") => cfg.gamma_shape_i = num(value, key, line)?,
        ("mobility", "gamma_scale_i") => cfg.gamma_scale_i = num(value, key, line)?,
        ("mobility", "contact_rate_multiplier") => {
            cfg.contact_rate_multiplier = num(value, key, line)?
        }
        ("mobility", "speed_factor") => cfg.speed_factor = num(value, key, line)?,
        ("run", "trials") => cfg.trials = num(value, key, line)?,
        ("run", "seed") => cfg.seed = Some(num(value, key, line)?),
        _ => {
            let place = if section.is_empty() {
                "outside any section".to_string()
            } else {
                format!("in section [{section}]")
            };
            return Err(ConfigError::Parse {
                line,
                message: format!("unknown key `{key}` {place}"),
            });
        }
    }
    Ok(())
}

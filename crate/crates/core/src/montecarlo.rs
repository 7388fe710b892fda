//! Trial-based estimation of the data offloading ratio and of
//! communication-time moments; the simulation ground truth the analytics
//! are validated against.
//!
//! Reproducibility: every trial owns a ChaCha stream derived from the master
//! seed and the trial index, and trial results are reduced in index order,
//! so estimates are bit-identical for a given `(seed, trials)` regardless of
//! how the trials are scheduled across threads.

use crate::analytics::SystemParams;
use crate::caching::{Placement, RequestModel};
use crate::mobility::{union_communication_time, ContactTimeline, NetworkMobility, PairParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// A Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: usize,
    pub seed: u64,
}

/// Sample mean and unbiased sample variance of the communication time, each
/// with a standard error (the variance SE uses the fourth central moment).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McMoments {
    pub mean: f64,
    pub mean_std_error: f64,
    pub variance: f64,
    pub variance_std_error: f64,
    pub trials: usize,
    pub seed: u64,
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Fraction of one requested file delivered over D2D links within the
/// deadline: 1 if the requester caches the file itself, 0 with no holders,
/// otherwise `min(R·T_c, C)/C` where `T_c` is the union contact time with
/// the holders over stationary-start timelines.
pub fn simulate_request<R: Rng + ?Sized>(
    net: &NetworkMobility,
    placement: &Placement,
    requester: usize,
    file: usize,
    sys: &SystemParams,
    rng: &mut R,
) -> f64 {
    if placement.caches(requester, file) {
        return 1.0;
    }
    let deadline = sys.deadline_s();
    let timelines: Vec<ContactTimeline> = placement
        .holders_excluding(file, requester)
        .map(|j| net.pair(requester, j).sample_timeline(deadline, rng))
        .collect();
    if timelines.is_empty() {
        return 0.0;
    }
    let comm_time = union_communication_time(&timelines, deadline);
    (sys.rate_bps() * comm_time / sys.file_size_bits()).min(1.0)
}

/// Estimates the network-wide data offloading ratio: each trial draws a
/// requester uniformly, a file from that user's request pmf, and simulates
/// the request.
pub fn estimate_offload_ratio(
    net: &NetworkMobility,
    placement: &Placement,
    demand: &RequestModel,
    sys: &SystemParams,
    trials: usize,
    seed: u64,
) -> McEstimate {
    assert!(trials >= 1);
    let n_users = net.n_users();
    assert_eq!(placement.n_users(), n_users, "dimension mismatch");
    assert_eq!(demand.n_users(), n_users, "dimension mismatch");
    assert_eq!(placement.n_files(), demand.n_files(), "dimension mismatch");
    let row_cdfs: Vec<Vec<f64>> = (0..n_users)
        .map(|u| {
            let mut acc = 0.0;
            demand
                .row(u)
                .iter()
                .map(|p| {
                    acc += p;
                    acc
                })
                .collect()
        })
        .collect();
    let values: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let user = rng.gen_range(0..n_users);
            let file = sample_from_cdf(&row_cdfs[user], demand.row(user), rng.gen::<f64>());
            simulate_request(net, placement, user, file, sys, &mut rng)
        })
        .collect();
    let (mean, std_error) = mean_and_se(&values);
    McEstimate {
        mean,
        std_error,
        trials,
        seed,
    }
}

/// Sample moments of the communication time for a fixed holder set over
/// stationary-start trials. Zero holders give identically zero moments.
pub fn estimate_comm_time_moments(
    holders: &[PairParams],
    deadline: f64,
    trials: usize,
    seed: u64,
) -> McMoments {
    assert!(trials >= 2);
    assert!(deadline > 0.0);
    let values: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            if holders.is_empty() {
                return 0.0;
            }
            let mut rng = trial_rng(seed, trial as u64);
            let timelines: Vec<ContactTimeline> = holders
                .iter()
                .map(|p| p.sample_timeline(deadline, &mut rng))
                .collect();
            union_communication_time(&timelines, deadline)
        })
        .collect();
    let n = trials as f64;
    let mean = values.iter().sum::<f64>() / n;
    let mut m2 = 0.0;
    let mut m4 = 0.0;
    for v in &values {
        let d = v - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    let variance = m2 / (n - 1.0);
    m4 /= n;
    // Var(S²) ≈ (μ₄ − σ⁴(n−3)/(n−1)) / n.
    let var_of_variance = (m4 - variance * variance * (n - 3.0) / (n - 1.0)).max(0.0) / n;
    McMoments {
        mean,
        mean_std_error: (variance / n).sqrt(),
        variance,
        variance_std_error: var_of_variance.sqrt(),
        trials,
        seed,
    }
}

/// First index whose cumulative probability exceeds `u`, skipping
/// zero-probability files if rounding pushes `u` past the final cumsum.
fn sample_from_cdf(cdf: &[f64], probs: &[f64], u: f64) -> usize {
    let idx = cdf.partition_point(|&c| c <= u);
    if idx < cdf.len() {
        return idx;
    }
    probs
        .iter()
        .rposition(|&p| p > 0.0)
        .expect("request pmf must have positive mass")
}

fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

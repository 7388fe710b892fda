//! Communication-time moments, beta moment matching, and the data
//! offloading ratio.
//!
//! For a requester and a set of holders, the *communication time* is the
//! total time within the delivery deadline during which at least one holder
//! is in contact. Its mean has a closed form; its variance is a
//! one-dimensional integral of the joint-contact probability at lag `u`.
//! The communication time is then approximated by a deadline-scaled beta
//! random variable fitted to those two moments, which turns the expected
//! delivered fraction into incomplete-beta evaluations.

use crate::caching::{Placement, RequestModel};
use crate::mobility::{NetworkMobility, PairParams};
use crate::specfun::{self, SpecfunError};
use std::fmt;

/// Relative quadrature tolerance for the variance integral, scaled by the
/// natural magnitude `deadline²`.
const VARIANCE_QUAD_REL_TOL: f64 = 1e-10;

/// Below this fraction of the maximal variance `mean·(deadline−mean)`, the
/// beta fit is ill-conditioned and the distribution is treated as
/// concentrated at its mean.
const DEGENERATE_VARIANCE_FRACTION: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticsError {
    /// Moments outside the region where a beta distribution can match them;
    /// signals a modeling breakdown rather than a numerical failure.
    MomentsOutOfRange {
        mean: f64,
        variance: f64,
        deadline: f64,
    },
    /// A special-function or quadrature evaluation failed.
    Specfun(SpecfunError),
}

impl fmt::Display for AnalyticsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyticsError::MomentsOutOfRange {
                mean,
                variance,
                deadline,
            } => write!(
                f,
                "no beta distribution matches mean {mean}, variance {variance} \
                 on [0, {deadline}]"
            ),
            AnalyticsError::Specfun(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for AnalyticsError {}

impl From<SpecfunError> for AnalyticsError {
    fn from(e: SpecfunError) -> Self {
        AnalyticsError::Specfun(e)
    }
}

/// Link and delivery parameters: file size `C` (bits), D2D rate `R`
/// (bits/s), delivery deadline (seconds).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    file_size_bits: f64,
    rate_bps: f64,
    deadline_s: f64,
}

impl SystemParams {
    /// Panics unless all values are positive and the deadline exceeds the
    /// single-file download time `C/R`.
    pub fn new(file_size_bits: f64, rate_bps: f64, deadline_s: f64) -> Self {
        assert!(file_size_bits > 0.0 && file_size_bits.is_finite());
        assert!(rate_bps > 0.0 && rate_bps.is_finite());
        assert!(deadline_s > 0.0 && deadline_s.is_finite());
        assert!(
            deadline_s > file_size_bits / rate_bps,
            "deadline must exceed the file download time C/R"
        );
        Self {
            file_size_bits,
            rate_bps,
            deadline_s,
        }
    }

    pub fn file_size_bits(&self) -> f64 {
        self.file_size_bits
    }

    pub fn rate_bps(&self) -> f64 {
        self.rate_bps
    }

    pub fn deadline_s(&self) -> f64 {
        self.deadline_s
    }

    /// Fraction of the deadline needed to download one full file:
    /// `(C/R) / deadline ∈ (0, 1)`.
    pub fn download_time_ratio(&self) -> f64 {
        self.file_size_bits / (self.rate_bps * self.deadline_s)
    }
}

/// First two moments of the communication time over a given deadline.
///
/// As the total occupancy of a set within `[0, deadline]`, the communication
/// time satisfies `0 ≤ mean ≤ deadline` and, as a bounded variable,
/// `variance ≤ mean·(deadline − mean)`; the sharp bound is enforced where a
/// beta fit is required, so noisy sample moments remain representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommTimeMoments {
    mean: f64,
    variance: f64,
    deadline: f64,
}

impl CommTimeMoments {
    pub fn new(mean: f64, variance: f64, deadline: f64) -> Self {
        assert!(deadline > 0.0 && deadline.is_finite());
        assert!(
            (0.0..=deadline).contains(&mean),
            "mean must lie in [0, deadline]"
        );
        assert!(variance >= 0.0 && variance.is_finite());
        Self {
            mean,
            variance,
            deadline,
        }
    }

    /// Moments of `deadline · Y` for `Y ~ Beta(alpha, beta)`: the exact
    /// inverse of [`beta_match`].
    pub fn from_beta(params: &BetaParams, deadline: f64) -> Self {
        let mean = deadline * params.mean();
        let variance = deadline * deadline * params.variance();
        Self::new(mean, variance, deadline)
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn deadline(&self) -> f64 {
        self.deadline
    }
}

/// Shape parameters of a beta distribution on [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaParams {
    alpha: f64,
    beta: f64,
}

impl BetaParams {
    pub fn new(alpha: f64, beta: f64) -> Self {
        assert!(alpha > 0.0 && alpha.is_finite(), "alpha must be positive");
        assert!(beta > 0.0 && beta.is_finite(), "beta must be positive");
        Self { alpha, beta }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn mean(&self) -> f64 {
        self.alpha / (self.alpha + self.beta)
    }

    pub fn variance(&self) -> f64 {
        let s = self.alpha + self.beta;
        self.alpha * self.beta / (s * s * (s + 1.0))
    }
}

/// Mean communication time: `deadline · (1 − ∏_j idle_j)` where `idle_j` is
/// holder `j`'s stationary idle probability. Empty holders give 0.
pub fn comm_time_mean(holders: &[PairParams], deadline: f64) -> f64 {
    assert!(deadline > 0.0);
    let all_idle: f64 = holders.iter().map(|p| p.stationary_idle_prob()).product();
    deadline * (1.0 - all_idle)
}

/// Variance of the communication time, by quadrature of
///
/// ```text
/// Var = 2 ∫₀^T (T−u) ∏_j q_j (q_j + p_j e^{−s_j u}) du − T² ∏_j q_j²
/// ```
///
/// with `q_j`/`p_j` the stationary idle/contact probabilities and
/// `s_j = λ_c + λ_i` of holder `j`. Since the u-independent part of the
/// kernel integrates to exactly `T² ∏ q_j²`, that term is folded into the
/// integrand, which removes the cancellation between the two halves.
pub fn comm_time_variance(holders: &[PairParams], deadline: f64) -> Result<f64, AnalyticsError> {
    assert!(deadline > 0.0);
    if holders.is_empty() {
        return Ok(0.0);
    }
    let joint: Vec<(f64, f64, f64)> = holders
        .iter()
        .map(|p| {
            (
                p.stationary_idle_prob(),
                p.stationary_contact_prob(),
                p.lambda_c() + p.lambda_i(),
            )
        })
        .collect();
    let all_idle_sq: f64 = joint.iter().map(|(q, _, _)| q * q).product();
    let integrand = |u: f64| {
        let mut g = 1.0;
        for &(q, p, s) in &joint {
            g *= q * (q + p * (-s * u).exp());
        }
        2.0 * (deadline - u) * (g - all_idle_sq)
    };
    let tol = VARIANCE_QUAD_REL_TOL * deadline * deadline;
    let result = specfun::integrate(integrand, 0.0, deadline, tol)?;
    Ok(result.value.max(0.0))
}

/// Closed-form moments when all `n_f` holders share the same rates.
///
/// The variance expands the product kernel binomially; each exponential term
/// integrates over the symmetric double-time region to
/// `2∫₀^T (T−u) e^{−au} du = 2[T/a − 1/a² + e^{−aT}/a²]` with
/// `a = l(λ_c + λ_i)`, so every term carries that leading factor of two.
/// The test suite cross-validates this form against the general quadrature
/// and against Monte Carlo sample variances.
pub fn comm_time_moments_hom(pair: &PairParams, n_f: usize, deadline: f64) -> CommTimeMoments {
    assert!(n_f >= 1, "homogeneous moments need at least one holder");
    assert!(deadline > 0.0);
    let q = pair.stationary_idle_prob();
    let p = pair.stationary_contact_prob();
    let s = pair.lambda_c() + pair.lambda_i();
    let mean = deadline * (1.0 - q.powi(n_f as i32));
    let mut variance = 0.0;
    let mut binom = 1.0;
    for l in 1..=n_f {
        binom *= (n_f - l + 1) as f64 / l as f64;
        let x = l as f64 * s * deadline;
        variance += binom
            * q.powi((2 * n_f - l) as i32)
            * p.powi(l as i32)
            * 2.0
            * deadline
            * deadline
            * exp_remainder(x);
    }
    CommTimeMoments::new(mean.min(deadline), variance.max(0.0), deadline)
}

/// `(e^{−x} − 1 + x) / x²`, the double-time integral of `e^{−xt}` over the
/// unit triangle; series below 1e-2 to avoid cancellation.
fn exp_remainder(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 1e-2 {
        0.5 - x / 6.0 + x * x / 24.0 - x * x * x / 120.0 + x * x * x * x / 720.0
    } else {
        (x + (-x).exp_m1()) / (x * x)
    }
}

/// Matches a beta distribution on `[0, deadline]` to the given moments:
///
/// ```text
/// alpha = mean²(T − mean)/(variance·T) − mean/T,
/// beta  = alpha (T − mean)/mean.
/// ```
///
/// Errors when `variance ≥ mean·(deadline − mean)` (or the mean is not
/// interior), where no beta distribution has these moments.
pub fn beta_match(moments: &CommTimeMoments) -> Result<BetaParams, AnalyticsError> {
    let (mean, variance, t) = (moments.mean(), moments.variance(), moments.deadline());
    if !(mean > 0.0 && mean < t && variance > 0.0 && variance < mean * (t - mean)) {
        return Err(AnalyticsError::MomentsOutOfRange {
            mean,
            variance,
            deadline: t,
        });
    }
    let alpha = mean * mean * (t - mean) / (variance * t) - mean / t;
    let beta = alpha * (t - mean) / mean;
    Ok(BetaParams::new(alpha, beta))
}

/// Expected fraction of one file delivered over D2D before the deadline,
/// under the beta approximation of the communication time:
///
/// ```text
/// P = 1 − I_r(α, β) + (mean·R/C) · I_r(α+1, β),   r = C/(T·R),
/// ```
///
/// which equals `E[min(R·T·Y, C)]/C` exactly for `Y ~ Beta(α, β)`. When the
/// variance is degenerate relative to its upper bound the distribution is
/// collapsed to its mean and the result is `min(mean·R, C)/C`.
pub fn per_request_offload_ratio(
    moments: &CommTimeMoments,
    sys: &SystemParams,
) -> Result<f64, AnalyticsError> {
    assert!(
        (moments.deadline() - sys.deadline_s()).abs() <= 1e-9 * sys.deadline_s(),
        "moments and system parameters disagree on the deadline"
    );
    let mean = moments.mean();
    if mean == 0.0 {
        return Ok(0.0);
    }
    // mean·R/C, the delivered fraction per unit of (capped) communication time.
    let mean_fraction = mean * sys.rate_bps() / sys.file_size_bits();
    let spread_bound = mean * (moments.deadline() - mean);
    if moments.variance() <= DEGENERATE_VARIANCE_FRACTION * spread_bound {
        return Ok(mean_fraction.min(1.0));
    }
    let params = beta_match(moments)?;
    let r = sys.download_time_ratio();
    let p = 1.0 - specfun::reg_inc_beta(r, params.alpha(), params.beta())?
        + mean_fraction * specfun::reg_inc_beta(r, params.alpha() + 1.0, params.beta())?;
    Ok(p.clamp(0.0, 1.0))
}

/// Network-wide data offloading ratio:
///
/// ```text
/// P = (1/N_u) Σ_i Σ_f p_{i,f} [ x_{i,f} + (1 − x_{i,f}) P_{i,f} ]
/// ```
///
/// where `P_{i,f}` is [`per_request_offload_ratio`] over the holders of `f`
/// other than `i`, and 0 when there are none.
pub fn aggregate_offload_ratio(
    net: &NetworkMobility,
    placement: &Placement,
    demand: &RequestModel,
    sys: &SystemParams,
) -> Result<f64, AnalyticsError> {
    let n_users = net.n_users();
    assert_eq!(placement.n_users(), n_users, "dimension mismatch");
    assert_eq!(demand.n_users(), n_users, "dimension mismatch");
    assert_eq!(placement.n_files(), demand.n_files(), "dimension mismatch");
    let deadline = sys.deadline_s();
    let mut total = 0.0;
    let mut holders: Vec<PairParams> = Vec::new();
    for user in 0..n_users {
        for file in 0..demand.n_files() {
            let p_req = demand.prob(user, file);
            if p_req == 0.0 {
                continue;
            }
            if placement.caches(user, file) {
                total += p_req;
                continue;
            }
            holders.clear();
            holders.extend(
                placement
                    .holders_excluding(file, user)
                    .map(|j| *net.pair(user, j)),
            );
            if holders.is_empty() {
                continue;
            }
            let mean = comm_time_mean(&holders, deadline);
            let variance = comm_time_variance(&holders, deadline)?;
            let moments = CommTimeMoments::new(mean, variance, deadline);
            total += p_req * per_request_offload_ratio(&moments, sys)?;
        }
    }
    Ok((total / n_users as f64).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caching::{uniform_all_same_placement, zipf_demand, Placement};
    use proptest::{prop_assert, proptest};

    fn reference_pair() -> PairParams {
        PairParams::new(0.001, 0.0002)
    }

    fn reference_sys() -> SystemParams {
        SystemParams::new(1.5e8, 1e6, 300.0)
    }

    #[test]
    fn mean_examples() {
        assert_eq!(comm_time_mean(&[], 300.0), 0.0);
        let one = comm_time_mean(&[reference_pair()], 300.0);
        assert!((one - 50.0).abs() <= 1e-12, "one holder: {one}");
        let two = comm_time_mean(&[reference_pair(), reference_pair()], 300.0);
        assert!(
            (two - 300.0 * 11.0 / 36.0).abs() <= 1e-12,
            "two holders: {two}"
        );
    }

    #[test]
    fn mean_is_bounded_and_monotone_in_holders() {
        let mut holders = Vec::new();
        let mut last = 0.0;
        for k in 1..=6 {
            holders.push(PairParams::new(0.001 * k as f64, 0.0004));
            let m = comm_time_mean(&holders, 300.0);
            assert!(m >= last && m <= 300.0);
            last = m;
        }
    }

    #[test]
    fn mean_is_exactly_speed_invariant() {
        let holders = [reference_pair(), PairParams::new(0.004, 0.0007)];
        let base = comm_time_mean(&holders, 300.0);
        for &s in &[0.5, 2.0, 4.0, 8.0, 16.0] {
            let scaled: Vec<PairParams> = holders.iter().map(|p| p.scale_speed(s)).collect();
            assert_eq!(comm_time_mean(&scaled, 300.0).to_bits(), base.to_bits());
        }
    }

    #[test]
    fn moments_vanish_when_contacts_never_happen() {
        // Inter-contact durations ~ 1/lambda_i: as lambda_i -> 0 the pair is
        // effectively never in contact within the deadline, and both moments
        // shrink proportionally (the variance stays under mean·deadline).
        let mut last_mean = f64::INFINITY;
        let mut last_var = f64::INFINITY;
        for &lambda_i in &[1e-9, 1e-10, 1e-11] {
            let holders = [PairParams::new(0.001, lambda_i)];
            let mean = comm_time_mean(&holders, 300.0);
            let var = comm_time_variance(&holders, 300.0).unwrap();
            assert!(mean < 1e-3, "mean {mean}");
            assert!(var <= mean * 300.0, "variance {var} above the bound");
            assert!(mean < last_mean && var < last_var);
            last_mean = mean;
            last_var = var;
        }
    }

    #[test]
    fn variance_matches_homogeneous_closed_form() {
        let deadline = 300.0;
        for n in 1..=4usize {
            let holders = vec![reference_pair(); n];
            let quad = comm_time_variance(&holders, deadline).unwrap();
            let hom = comm_time_moments_hom(&reference_pair(), n, deadline);
            assert!(
                (quad - hom.variance()).abs() <= 1e-6 * hom.variance(),
                "n = {n}: quadrature {quad}, closed form {}",
                hom.variance()
            );
        }
    }

    #[test]
    fn heterogeneous_variance_matches_direct_two_term_evaluation() {
        // Independent route: evaluate the unfolded form, subtracting the
        // squared-mean term from the raw double integral.
        let holders = [reference_pair(), PairParams::new(0.002, 0.0004)];
        let deadline = 300.0;
        let joint: Vec<(f64, f64, f64)> = holders
            .iter()
            .map(|p| {
                (
                    p.stationary_idle_prob(),
                    p.stationary_contact_prob(),
                    p.lambda_c() + p.lambda_i(),
                )
            })
            .collect();
        let raw = specfun::integrate(
            |u| {
                let mut g = 1.0;
                for &(q, p, s) in &joint {
                    g *= q * (q + p * (-s * u).exp());
                }
                2.0 * (deadline - u) * g
            },
            0.0,
            deadline,
            1e-7,
        )
        .unwrap()
        .value;
        let all_idle_sq: f64 = joint.iter().map(|(q, _, _)| q * q).product();
        let expected = raw - deadline * deadline * all_idle_sq;
        let got = comm_time_variance(&holders, deadline).unwrap();
        assert!(
            (got - expected).abs() <= 1e-5,
            "folded {got}, direct {expected}"
        );
    }

    #[test]
    fn homogeneous_single_holder_matches_general_mean() {
        let hom = comm_time_moments_hom(&reference_pair(), 1, 300.0);
        assert!((hom.mean() - 50.0).abs() <= 1e-12);
        assert_eq!(
            hom.mean().to_bits(),
            comm_time_mean(&[reference_pair()], 300.0).to_bits()
        );
    }

    #[test]
    fn homogeneous_mean_is_speed_invariant_and_variance_decreases() {
        for n in 1..=3usize {
            let base_mean = comm_time_moments_hom(&reference_pair(), n, 300.0).mean();
            let mut last_var = f64::INFINITY;
            for &s in &[0.5, 1.0, 2.0, 4.0, 8.0] {
                let m = comm_time_moments_hom(&reference_pair().scale_speed(s), n, 300.0);
                assert_eq!(m.mean().to_bits(), base_mean.to_bits());
                assert!(
                    m.variance() < last_var,
                    "variance not decreasing at s = {s}, n = {n}"
                );
                last_var = m.variance();
            }
        }
    }

    #[test]
    fn matched_alpha_increases_with_speed() {
        let mut last_alpha = 0.0;
        for &s in &[0.5, 1.0, 2.0, 4.0, 8.0] {
            let m = comm_time_moments_hom(&reference_pair().scale_speed(s), 2, 300.0);
            let bp = beta_match(&m).unwrap();
            assert!(bp.alpha() > last_alpha, "alpha not increasing at s = {s}");
            last_alpha = bp.alpha();
        }
    }

    #[test]
    fn beta_match_symmetric_case() {
        let t = 300.0;
        let m = CommTimeMoments::new(t / 2.0, t * t / 20.0, t);
        let bp = beta_match(&m).unwrap();
        assert!((bp.alpha() - 2.0).abs() <= 1e-12);
        assert!((bp.beta() - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn beta_match_positivity_on_reference_configuration() {
        let var = comm_time_variance(&[reference_pair()], 300.0).unwrap();
        let m = CommTimeMoments::new(50.0, var, 300.0);
        let bp = beta_match(&m).unwrap();
        assert!(bp.alpha() > 0.0 && bp.beta() > 0.0);
    }

    #[test]
    fn beta_match_rejects_overdispersed_moments() {
        let m = CommTimeMoments::new(100.0, 100.0 * 200.0, 300.0);
        assert!(matches!(
            beta_match(&m),
            Err(AnalyticsError::MomentsOutOfRange { .. })
        ));
    }

    #[test]
    fn uniform_beta_offload_ratio() {
        // alpha = beta = 1 (uniform on [0, T]) and r = 1/2:
        // E[min(2Y, 1)] = 3/4.
        let t = 300.0;
        let m = CommTimeMoments::from_beta(&BetaParams::new(1.0, 1.0), t);
        let got = per_request_offload_ratio(&m, &reference_sys()).unwrap();
        assert!((got - 0.75).abs() <= 1e-10, "got {got}");
    }

    #[test]
    fn zero_mean_has_zero_offload() {
        let m = CommTimeMoments::new(0.0, 0.0, 300.0);
        assert_eq!(
            per_request_offload_ratio(&m, &reference_sys()).unwrap(),
            0.0
        );
    }

    #[test]
    fn degenerate_variance_collapses_to_capped_mean() {
        let sys = reference_sys();
        for &mean in &[40.0, 150.0, 299.0] {
            let m = CommTimeMoments::new(mean, 1e-16, 300.0);
            let got = per_request_offload_ratio(&m, &sys).unwrap();
            let expected = (mean * sys.rate_bps() / sys.file_size_bits()).min(1.0);
            assert!((got - expected).abs() <= 1e-12);
        }
    }

    #[test]
    fn offload_ratio_increases_with_alpha_at_fixed_mean() {
        let t = 300.0;
        let sys = reference_sys();
        let r = sys.download_time_ratio();
        for &mean_fraction in &[0.1, 0.5, 0.9] {
            check_alpha_monotonicity(mean_fraction, r, t, &sys);
        }
    }

    /// Strict increase in alpha is checked while the beta mass still reaches
    /// across the cap point `r` (increments above f64 resolution); past that
    /// the curve is asserted nondecreasing.
    fn check_alpha_monotonicity(mean_fraction: f64, r: f64, t: f64, sys: &SystemParams) {
        let strict_alpha_max = if (mean_fraction - r).abs() < 1e-12 {
            50.0
        } else {
            let z = 6.0f64;
            (mean_fraction
                * (z * z * mean_fraction * (1.0 - mean_fraction) / (mean_fraction - r).powi(2)
                    - 1.0))
                .clamp(0.2, 50.0)
        };
        let mean = mean_fraction * t;
        let tie = (t - mean) / mean;
        let mut last = -1.0;
        let mut alpha = 0.05;
        while alpha <= 50.0 {
            let bp = BetaParams::new(alpha, alpha * tie);
            let m = CommTimeMoments::from_beta(&bp, t);
            let p = per_request_offload_ratio(&m, sys).unwrap();
            if alpha <= strict_alpha_max {
                assert!(
                    p > last,
                    "not strictly increasing at alpha {alpha}, mean fraction {mean_fraction}, r {r}"
                );
            } else {
                assert!(
                    p >= last - 1e-12,
                    "decreasing at alpha {alpha}, mean fraction {mean_fraction}, r {r}"
                );
            }
            last = p;
            alpha *= 1.35;
        }
    }

    #[test]
    fn aggregate_everything_self_cached_is_one() {
        let net = NetworkMobility::homogeneous(3, reference_pair());
        let demand = zipf_demand(4, 0.6, 3);
        let placement = Placement::new(3, 4, 4, vec![true; 12]);
        let got = aggregate_offload_ratio(&net, &placement, &demand, &reference_sys()).unwrap();
        assert_eq!(got, 1.0);
    }

    #[test]
    fn aggregate_empty_placement_is_zero() {
        let net = NetworkMobility::homogeneous(3, reference_pair());
        let demand = zipf_demand(4, 0.6, 3);
        let placement = Placement::new(3, 4, 0, vec![false; 12]);
        let got = aggregate_offload_ratio(&net, &placement, &demand, &reference_sys()).unwrap();
        assert_eq!(got, 0.0);
    }

    #[test]
    fn aggregate_identical_caches_is_constant_in_speed() {
        let demand = zipf_demand(10, 0.6, 4);
        let placement = uniform_all_same_placement(4, 10, 3);
        let sys = reference_sys();
        let net = NetworkMobility::homogeneous(4, reference_pair());
        let base = aggregate_offload_ratio(&net, &placement, &demand, &sys).unwrap();
        for &s in &[2.0, 4.0, 8.0, 16.0] {
            let scaled = net.scale_speed(s);
            let got = aggregate_offload_ratio(&scaled, &placement, &demand, &sys).unwrap();
            assert_eq!(got.to_bits(), base.to_bits());
        }
    }

    proptest! {
        #[test]
        fn beta_match_round_trips(
            mean_fraction in 0.01..0.99f64,
            spread in 0.01..0.99f64,
        ) {
            let t = 300.0;
            let mean = mean_fraction * t;
            let variance = spread * mean * (t - mean);
            let m = CommTimeMoments::new(mean, variance, t);
            let bp = beta_match(&m).unwrap();
            let back = CommTimeMoments::from_beta(&bp, t);
            prop_assert!((back.mean() - mean).abs() <= 1e-12 * mean);
            prop_assert!((back.variance() - variance).abs() <= 1e-12 * variance);
        }
    }
}

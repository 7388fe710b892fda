//! Pairwise alternating-renewal contact processes.
//!
//! Each user pair alternates between contact and inter-contact periods whose
//! durations are independent exponentials with rates `lambda_c` and
//! `lambda_i` respectively. Pair timelines are mutually independent. Because
//! exponential residual lives are again exponential, a stationary timeline
//! can be sampled without burn-in: draw the initial state from the long-run
//! occupancy law and generate full sojourns from there.

use rand::Rng;

/// Exponential rates of one user pair's contact process: contact durations
/// have mean `1/lambda_c` seconds, inter-contact durations `1/lambda_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairParams {
    lambda_c: f64,
    lambda_i: f64,
}

impl PairParams {
    /// Panics unless both rates are finite and strictly positive.
    pub fn new(lambda_c: f64, lambda_i: f64) -> Self {
        assert!(
            lambda_c > 0.0 && lambda_c.is_finite(),
            "contact rate must be a positive finite number"
        );
        assert!(
            lambda_i > 0.0 && lambda_i.is_finite(),
            "inter-contact rate must be a positive finite number"
        );
        Self { lambda_c, lambda_i }
    }

    pub fn lambda_c(&self) -> f64 {
        self.lambda_c
    }

    pub fn lambda_i(&self) -> f64 {
        self.lambda_i
    }

    /// Long-run probability that the pair is in contact:
    /// `lambda_i / (lambda_c + lambda_i)`.
    pub fn stationary_contact_prob(&self) -> f64 {
        self.lambda_i / (self.lambda_c + self.lambda_i)
    }

    /// Long-run probability that the pair is idle:
    /// `lambda_c / (lambda_c + lambda_i)`.
    pub fn stationary_idle_prob(&self) -> f64 {
        self.lambda_c / (self.lambda_c + self.lambda_i)
    }

    /// Probability the pair is idle `dt` seconds after an instant at which
    /// it was idle, under stationarity. Equals 1 at `dt = 0` and decays to
    /// the stationary idle probability as `dt → ∞`.
    pub fn conditional_idle_prob(&self, dt: f64) -> f64 {
        assert!(dt >= 0.0, "dt must be nonnegative");
        let s = self.lambda_c + self.lambda_i;
        (self.lambda_c + self.lambda_i * (-s * dt).exp()) / s
    }

    /// Rescales both rates by the speed factor `s`: moving `s` times faster
    /// shortens every contact and inter-contact duration by `1/s`.
    pub fn scale_speed(&self, s: f64) -> PairParams {
        assert!(s > 0.0 && s.is_finite(), "speed factor must be positive");
        PairParams::new(self.lambda_c * s, self.lambda_i * s)
    }

    /// Samples a stationary-start timeline covering at least `horizon`
    /// seconds: the initial state is Bernoulli(stationary contact
    /// probability) and every stored duration is a full exponential sojourn.
    pub fn sample_timeline<R: Rng + ?Sized>(&self, horizon: f64, rng: &mut R) -> ContactTimeline {
        assert!(horizon > 0.0, "horizon must be positive");
        let initially_in_contact = rng.gen::<f64>() < self.stationary_contact_prob();
        let mut durations = Vec::new();
        let mut covered = 0.0;
        let mut in_contact = initially_in_contact;
        while covered < horizon {
            let rate = if in_contact {
                self.lambda_c
            } else {
                self.lambda_i
            };
            let d = sample_exp(rate, rng);
            covered += d;
            durations.push(d);
            in_contact = !in_contact;
        }
        ContactTimeline::new(initially_in_contact, durations, horizon)
    }
}

fn sample_exp<R: Rng + ?Sized>(rate: f64, rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.gen();
        if u > 0.0 {
            return -u.ln() / rate;
        }
    }
}

/// One pair's alternating contact record over a finite horizon: strictly
/// positive interval lengths whose states alternate starting from
/// `initially_in_contact`. Durations are stored instead of timestamps;
/// positions are rebuilt by compensated summation where needed.
#[derive(Debug, Clone, PartialEq)]
pub struct ContactTimeline {
    initially_in_contact: bool,
    durations: Vec<f64>,
    horizon: f64,
}

impl ContactTimeline {
    /// Panics unless every duration is positive and the durations cover the
    /// (positive) horizon.
    pub fn new(initially_in_contact: bool, durations: Vec<f64>, horizon: f64) -> Self {
        assert!(horizon > 0.0, "horizon must be positive");
        assert!(
            !durations.is_empty(),
            "timeline needs at least one interval"
        );
        assert!(
            durations.iter().all(|&d| d > 0.0),
            "interval lengths must be strictly positive"
        );
        let mut total = KahanSum::new();
        for &d in &durations {
            total.add(d);
        }
        assert!(
            total.value() >= horizon,
            "intervals must cover the horizon ({} < {horizon})",
            total.value()
        );
        Self {
            initially_in_contact,
            durations,
            horizon,
        }
    }

    pub fn initially_in_contact(&self) -> bool {
        self.initially_in_contact
    }

    pub fn durations(&self) -> &[f64] {
        &self.durations
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    /// State at time `t ∈ [0, horizon]`.
    pub fn in_contact_at(&self, t: f64) -> bool {
        assert!(
            (0.0..=self.horizon).contains(&t),
            "query time outside the covered horizon"
        );
        let mut in_contact = self.initially_in_contact;
        let mut elapsed = KahanSum::new();
        for &d in &self.durations {
            elapsed.add(d);
            if t < elapsed.value() {
                return in_contact;
            }
            in_contact = !in_contact;
        }
        // t lands exactly on the final boundary.
        !in_contact
    }

    /// Contact intervals clipped to `[0, upto]`, in increasing order.
    pub fn contact_intervals(&self, upto: f64) -> Vec<(f64, f64)> {
        assert!(
            upto <= self.horizon,
            "clip window must lie within the horizon"
        );
        let mut out = Vec::new();
        let mut in_contact = self.initially_in_contact;
        let mut elapsed = KahanSum::new();
        for &d in &self.durations {
            let start = elapsed.value();
            elapsed.add(d);
            let end = elapsed.value();
            if start >= upto {
                break;
            }
            if in_contact {
                out.push((start, end.min(upto)));
            }
            in_contact = !in_contact;
        }
        out
    }

    /// Total contact time within `[0, window]`.
    pub fn contact_time_within(&self, window: f64) -> f64 {
        self.contact_intervals(window)
            .iter()
            .map(|(s, e)| e - s)
            .sum()
    }
}

/// Lebesgue measure of `{t ∈ [0, window] : some timeline is in contact}`.
/// Returns 0 for an empty list; every timeline must cover the window.
pub fn union_communication_time(timelines: &[ContactTimeline], window: f64) -> f64 {
    assert!(window > 0.0, "window must be positive");
    let mut intervals: Vec<(f64, f64)> = Vec::new();
    for tl in timelines {
        assert!(
            tl.horizon() >= window,
            "every timeline must cover the window"
        );
        intervals.extend(tl.contact_intervals(window));
    }
    if intervals.is_empty() {
        return 0.0;
    }
    intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut total = 0.0;
    let (mut cur_start, mut cur_end) = intervals[0];
    for &(start, end) in &intervals[1..] {
        if start <= cur_end {
            cur_end = cur_end.max(end);
        } else {
            total += cur_end - cur_start;
            cur_start = start;
            cur_end = end;
        }
    }
    total += cur_end - cur_start;
    total.min(window)
}

/// Symmetric per-pair contact parameters for a network of `n_users` users,
/// stored packed over unordered pairs with canonical `(min, max)` access.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkMobility {
    n_users: usize,
    pairs: Vec<PairParams>,
}

impl NetworkMobility {
    /// Builds parameters for every unordered pair `(i, j)`, `i < j`, from the
    /// supplied function.
    pub fn from_fn(n_users: usize, mut params: impl FnMut(usize, usize) -> PairParams) -> Self {
        assert!(n_users >= 1, "network needs at least one user");
        let mut pairs = Vec::with_capacity(n_users * (n_users - 1) / 2);
        for i in 0..n_users {
            for j in (i + 1)..n_users {
                pairs.push(params(i, j));
            }
        }
        Self { n_users, pairs }
    }

    /// All pairs share the same rates.
    pub fn homogeneous(n_users: usize, params: PairParams) -> Self {
        Self::from_fn(n_users, |_, _| params)
    }

    pub fn n_users(&self) -> usize {
        self.n_users
    }

    /// Parameters of the unordered pair `{i, j}`.
    pub fn pair(&self, i: usize, j: usize) -> &PairParams {
        assert!(i != j, "a user has no pair process with itself");
        assert!(i < self.n_users && j < self.n_users, "user id out of range");
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        let index = lo * self.n_users - lo * (lo + 1) / 2 + (hi - lo - 1);
        &self.pairs[index]
    }

    /// Rescales every pair's rates by the speed factor `s`.
    pub fn scale_speed(&self, s: f64) -> NetworkMobility {
        NetworkMobility {
            n_users: self.n_users,
            pairs: self.pairs.iter().map(|p| p.scale_speed(s)).collect(),
        }
    }
}

/// Compensated (Kahan) accumulator for long duration sums.
#[derive(Debug, Clone, Copy)]
struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    fn new() -> Self {
        Self {
            sum: 0.0,
            comp: 0.0,
        }
    }

    fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

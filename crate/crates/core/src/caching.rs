//! Content demand and cache placement.

use rand::Rng;

/// Per-user file request probabilities; each row is a pmf over files.
#[derive(Debug, Clone, PartialEq)]
pub struct RequestModel {
    n_users: usize,
    n_files: usize,
    probs: Vec<f64>,
}

impl RequestModel {
    /// Row-major probabilities. Panics unless every row sums to 1 (within
    /// 1e-12) with nonnegative entries.
    pub fn new(n_users: usize, n_files: usize, probs: Vec<f64>) -> Self {
        assert!(n_users >= 1 && n_files >= 1);
        assert_eq!(probs.len(), n_users * n_files);
        for (u, row) in probs.chunks(n_files).enumerate() {
            assert!(
                row.iter().all(|&p| p >= 0.0),
                "request probabilities must be nonnegative (user {u})"
            );
            let sum: f64 = row.iter().sum();
            assert!(
                (sum - 1.0).abs() <= 1e-12,
                "request probabilities of user {u} sum to {sum}, not 1"
            );
        }
        Self {
            n_users,
            n_files,
            probs,
        }
    }

    pub fn n_users(&self) -> usize {
        self.n_users
    }

    pub fn n_files(&self) -> usize {
        self.n_files
    }

    pub fn prob(&self, user: usize, file: usize) -> f64 {
        self.probs[user * self.n_files + file]
    }

    pub fn row(&self, user: usize) -> &[f64] {
        &self.probs[user * self.n_files..(user + 1) * self.n_files]
    }
}

/// Zipf demand with exponent `gamma_r`, shared by all users: the k-th most
/// popular file is requested with probability proportional to `k^-gamma_r`.
pub fn zipf_demand(n_files: usize, gamma_r: f64, n_users: usize) -> RequestModel {
    assert!(n_files >= 1 && n_users >= 1);
    assert!(gamma_r >= 0.0 && gamma_r.is_finite());
    let mut row: Vec<f64> = (1..=n_files)
        .map(|rank| (rank as f64).powf(-gamma_r))
        .collect();
    let norm: f64 = row.iter().sum();
    for p in &mut row {
        *p /= norm;
    }
    let mut probs = Vec::with_capacity(n_users * n_files);
    for _ in 0..n_users {
        probs.extend_from_slice(&row);
    }
    RequestModel::new(n_users, n_files, probs)
}

/// Binary cache placement with a fixed per-user capacity.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    n_users: usize,
    n_files: usize,
    capacity: usize,
    cached: Vec<bool>,
}

impl Placement {
    /// Row-major cache flags. Panics if any user exceeds the capacity.
    pub fn new(n_users: usize, n_files: usize, capacity: usize, cached: Vec<bool>) -> Self {
        assert!(n_users >= 1 && n_files >= 1);
        assert!(
            capacity <= n_files,
            "capacity cannot exceed the library size"
        );
        assert_eq!(cached.len(), n_users * n_files);
        for (u, row) in cached.chunks(n_files).enumerate() {
            let used = row.iter().filter(|&&c| c).count();
            assert!(
                used <= capacity,
                "user {u} caches {used} files, over capacity {capacity}"
            );
        }
        Self {
            n_users,
            n_files,
            capacity,
            cached,
        }
    }

    pub fn n_users(&self) -> usize {
        self.n_users
    }

    pub fn n_files(&self) -> usize {
        self.n_files
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn caches(&self, user: usize, file: usize) -> bool {
        self.cached[user * self.n_files + file]
    }

    pub fn cached_count(&self, user: usize) -> usize {
        self.cached[user * self.n_files..(user + 1) * self.n_files]
            .iter()
            .filter(|&&c| c)
            .count()
    }

    /// Users other than `requester` that cache `file`.
    pub fn holders_excluding(
        &self,
        file: usize,
        requester: usize,
    ) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_users).filter(move |&j| j != requester && self.caches(j, file))
    }
}

/// Each user independently fills its cache by successive weighted draws
/// without replacement, so inclusion tendency is proportional to `weights`
/// and every user ends up with exactly `capacity` distinct files.
pub fn random_caching<R: Rng + ?Sized>(
    n_users: usize,
    n_files: usize,
    capacity: usize,
    weights: &[f64],
    rng: &mut R,
) -> Placement {
    assert_eq!(weights.len(), n_files);
    assert!(capacity <= n_files);
    assert!(
        weights.iter().all(|&w| w > 0.0 && w.is_finite()),
        "weights must be strictly positive"
    );
    let mut cached = vec![false; n_users * n_files];
    let mut remaining = vec![0.0f64; n_files];
    for user in 0..n_users {
        remaining.copy_from_slice(weights);
        for _ in 0..capacity {
            let total: f64 = remaining.iter().sum();
            let mut target = rng.gen::<f64>() * total;
            let mut pick = None;
            let mut last_positive = 0;
            for (idx, &w) in remaining.iter().enumerate() {
                if w <= 0.0 {
                    continue;
                }
                last_positive = idx;
                if target < w {
                    pick = Some(idx);
                    break;
                }
                target -= w;
            }
            // Rounding can exhaust the scan; fall back to the last candidate.
            let pick = pick.unwrap_or(last_positive);
            cached[user * n_files + pick] = true;
            remaining[pick] = 0.0;
        }
    }
    Placement::new(n_users, n_files, capacity, cached)
}

/// Every user caches files `0..capacity`: the degenerate placement in which
/// D2D transfers can never help an uncached request.
pub fn uniform_all_same_placement(n_users: usize, n_files: usize, capacity: usize) -> Placement {
    assert!(capacity <= n_files);
    let mut cached = vec![false; n_users * n_files];
    for user in 0..n_users {
        for file in 0..capacity {
            cached[user * n_files + file] = true;
        }
    }
    Placement::new(n_users, n_files, capacity, cached)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::{prop_assert, proptest};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zipf_zero_exponent_is_uniform() {
        let demand = zipf_demand(8, 0.0, 2);
        for f in 0..8 {
            assert!((demand.prob(0, f) - 1.0 / 8.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn zipf_two_files_unit_exponent() {
        let demand = zipf_demand(2, 1.0, 1);
        assert!((demand.prob(0, 0) - 2.0 / 3.0).abs() <= 1e-15);
        assert!((demand.prob(0, 1) - 1.0 / 3.0).abs() <= 1e-15);
    }

    #[test]
    fn zipf_head_to_tail_ratio() {
        let demand = zipf_demand(100, 0.6, 1);
        let ratio = demand.prob(0, 0) / demand.prob(0, 99);
        let expected = 100f64.powf(0.6);
        assert!(
            (ratio / expected - 1.0).abs() <= 1e-12,
            "p1/p100 = {ratio}, expected {expected}"
        );
    }

    #[test]
    fn zipf_rows_are_identical_and_decreasing() {
        let demand = zipf_demand(20, 0.6, 4);
        for u in 1..4 {
            assert_eq!(demand.row(u), demand.row(0));
        }
        for f in 1..20 {
            assert!(demand.prob(0, f) < demand.prob(0, f - 1));
        }
    }

    #[test]
    fn full_capacity_caches_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let weights = vec![1.0; 6];
        let placement = random_caching(3, 6, 6, &weights, &mut rng);
        for u in 0..3 {
            for f in 0..6 {
                assert!(placement.caches(u, f));
            }
        }
    }

    #[test]
    fn single_slot_inclusion_frequency_tracks_weights() {
        let weights = [2.0 / 3.0, 1.0 / 3.0];
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let draws = 60_000;
        let mut first = 0u64;
        for _ in 0..draws {
            let placement = random_caching(1, 2, 1, &weights, &mut rng);
            if placement.caches(0, 0) {
                first += 1;
            }
        }
        let freq = first as f64 / draws as f64;
        let p = 2.0 / 3.0;
        let se = (p * (1.0 - p) / draws as f64).sqrt();
        assert!(
            (freq - p).abs() <= 3.0 * se,
            "file 0 frequency {freq}, expected {p}"
        );
    }

    #[test]
    fn rows_always_hold_exactly_capacity_distinct_files() {
        let weights: Vec<f64> = (1..=10).map(|k| 1.0 / k as f64).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25_000 {
            let placement = random_caching(4, 10, 3, &weights, &mut rng);
            for u in 0..4 {
                assert_eq!(placement.cached_count(u), 3);
            }
        }
    }

    #[test]
    fn inclusion_frequencies_are_monotone_in_weights() {
        let weights = [0.4, 0.25, 0.2, 0.1, 0.05];
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut counts = [0u64; 5];
        let draws = 40_000;
        for _ in 0..draws {
            let placement = random_caching(1, 5, 2, &weights, &mut rng);
            for (f, c) in counts.iter_mut().enumerate() {
                if placement.caches(0, f) {
                    *c += 1;
                }
            }
        }
        for f in 1..5 {
            assert!(
                counts[f] < counts[f - 1],
                "inclusion counts not ordered: {counts:?}"
            );
        }
    }

    #[test]
    fn all_same_placement_rows_are_identical() {
        let placement = uniform_all_same_placement(4, 9, 3);
        for u in 0..4 {
            for f in 0..9 {
                assert_eq!(placement.caches(u, f), f < 3);
            }
            assert_eq!(placement.cached_count(u), 3);
        }
        // No user is a holder for another user's uncached files.
        for u in 0..4 {
            for f in 3..9 {
                assert_eq!(placement.holders_excluding(f, u).count(), 0);
            }
        }
    }

    #[test]
    #[should_panic(expected = "capacity")]
    fn rejects_over_capacity_rows() {
        let _ = Placement::new(1, 3, 1, vec![true, true, false]);
    }

    proptest! {
        #[test]
        fn zipf_rows_are_valid_pmfs(
            n_files in 1usize..200,
            gamma in 0.0..3.0f64,
        ) {
            let demand = zipf_demand(n_files, gamma, 2);
            let sum: f64 = demand.row(1).iter().sum();
            prop_assert!((sum - 1.0).abs() <= 1e-12);
            prop_assert!(demand.row(1).iter().all(|&p| p >= 0.0));
        }
    }
}

//! Heterogeneous per-pair rate generation.

use crate::config::ExperimentConfig;
use d2d_offload::mobility::{NetworkMobility, PairParams};
use rand::Rng;
use rand_distr::{Distribution, Gamma};

/// Draws independent per-pair rates: inter-contact rates from
/// Gamma(shape, scale) and contact rates from Gamma(shape·m², scale/m),
/// which puts the mean contact rate at `m` times the mean inter-contact
/// rate while keeping the same variance.
pub fn draw_heterogeneous_params<R: Rng + ?Sized>(
    cfg: &ExperimentConfig,
    rng: &mut R,
) -> NetworkMobility {
    let m = cfg.contact_rate_multiplier;
    let inter =
        Gamma::new(cfg.gamma_shape_i, cfg.gamma_scale_i).expect("validated gamma parameters");
    let contact = Gamma::new(cfg.gamma_shape_i * m * m, cfg.gamma_scale_i / m)
        .expect("validated gamma parameters");
    NetworkMobility::from_fn(cfg.n_users, |_, _| {
        let lambda_i = inter.sample(rng);
        let lambda_c = contact.sample(rng);
        PairParams::new(lambda_c, lambda_i)
    })
}

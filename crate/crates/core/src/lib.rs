//! Analytic and Monte Carlo evaluation of device-to-device (D2D) data
//! offloading under an alternating-renewal contact mobility model.
//!
//! A network of users meets pairwise according to independent on/off
//! processes with exponentially distributed contact and inter-contact
//! durations. Users cache files and serve them over D2D links while in
//! contact; whatever a requester cannot download before its deadline comes
//! from the base station instead. The *data offloading ratio* is the
//! expected fraction of requested bytes delivered over D2D links.
//!
//! The crate computes that ratio two ways, which are kept in agreement by
//! the test suite:
//!
//! * [`analytics`] evaluates it in closed form: exact first and second
//!   moments of the per-request communication time, a beta fit of its
//!   distribution by moment matching, and the offload ratio via the
//!   regularized incomplete beta function.
//! * [`montecarlo`] estimates it by simulating stationary contact timelines
//!   with reproducible, parallel trials.
//!
//! [`mobility`] holds the pairwise contact processes, [`caching`] the Zipf
//! demand and placement strategies, and [`specfun`] the numerical kernels.

pub mod analytics;
pub mod caching;
pub mod mobility;
pub mod montecarlo;
pub mod specfun;

pub use analytics::{AnalyticsError, BetaParams, CommTimeMoments, SystemParams};
pub use caching::{Placement, RequestModel};
pub use mobility::{ContactTimeline, NetworkMobility, PairParams};
pub use montecarlo::{McEstimate, McMoments};
pub use specfun::SpecfunError;

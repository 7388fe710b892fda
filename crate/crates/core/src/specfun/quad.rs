//! Adaptive quadrature: bisection with a 7-point Gauss / 15-point Kronrod
//! pair per panel.

use super::SpecfunError;

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Absolute error estimate (sum of per-panel Kronrod−Gauss differences).
    pub error_estimate: f64,
    /// Number of integrand evaluations performed.
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// Absolute tolerance on the whole integral.
    pub abs_tol: f64,
    /// Evaluation budget before giving up.
    pub max_evals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            max_evals: 200_000,
        }
    }
}

// 15-point Kronrod extension of 7-point Gauss on [-1, 1]; odd-indexed
// abscissae (plus the midpoint) are the Gauss nodes.
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// Integrates `f` over `[lo, hi]` to the requested absolute tolerance with
/// the default evaluation budget.
pub fn integrate(
    f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    abs_tol: f64,
) -> Result<QuadratureResult, SpecfunError> {
    integrate_with(
        f,
        lo,
        hi,
        QuadOptions {
            abs_tol,
            ..QuadOptions::default()
        },
    )
}

pub fn integrate_with(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    opts: QuadOptions,
) -> Result<QuadratureResult, SpecfunError> {
    if !lo.is_finite() || !hi.is_finite() {
        return Err(SpecfunError::Domain("integrate requires finite bounds"));
    }
    if lo > hi {
        return Err(SpecfunError::Domain("integrate requires lo <= hi"));
    }
    if opts.abs_tol.is_nan() || opts.abs_tol <= 0.0 {
        return Err(SpecfunError::Domain("integrate requires abs_tol > 0"));
    }

    let span = hi - lo;
    let mut evaluations = 0usize;
    let mut value = 0.0;
    let mut error = 0.0;

    struct Panel {
        a: f64,
        b: f64,
        value: f64,
        err: f64,
    }

    let (v0, e0) = gauss_kronrod_15(&mut f, lo, hi);
    evaluations += 15;
    if !v0.is_finite() {
        return Err(SpecfunError::Domain(
            "integrand produced a non-finite value",
        ));
    }
    let mut pending = vec![Panel {
        a: lo,
        b: hi,
        value: v0,
        err: e0,
    }];

    while let Some(p) = pending.pop() {
        let width = p.b - p.a;
        let local_tol = if span > 0.0 {
            opts.abs_tol * (width / span)
        } else {
            opts.abs_tol
        };
        let unsplittable = width <= 4.0 * f64::EPSILON * p.a.abs().max(p.b.abs()).max(1.0);
        if p.err <= local_tol || unsplittable {
            value += p.value;
            error += p.err;
            continue;
        }
        if evaluations + 30 > opts.max_evals {
            // Report the best composite estimate, accepted plus pending.
            let mut best = value + p.value;
            let mut best_err = error + p.err;
            for q in &pending {
                best += q.value;
                best_err += q.err;
            }
            return Err(SpecfunError::NoConvergence {
                what: "adaptive quadrature",
                evaluations,
                value: best,
                error_estimate: best_err,
            });
        }
        let mid = 0.5 * (p.a + p.b);
        let (vl, el) = gauss_kronrod_15(&mut f, p.a, mid);
        let (vr, er) = gauss_kronrod_15(&mut f, mid, p.b);
        evaluations += 30;
        if !vl.is_finite() || !vr.is_finite() {
            return Err(SpecfunError::Domain(
                "integrand produced a non-finite value",
            ));
        }
        pending.push(Panel {
            a: p.a,
            b: mid,
            value: vl,
            err: el,
        });
        pending.push(Panel {
            a: mid,
            b: p.b,
            value: vr,
            err: er,
        });
    }

    Ok(QuadratureResult {
        value,
        error_estimate: error,
        evaluations,
    })
}

fn gauss_kronrod_15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += WGK[i] * (f1 + f2);
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f1 + f2);
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

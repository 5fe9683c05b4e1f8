//! Bonferroni lower bounds for the normalized overshoot of the maximum of
//! independent variables with exact exponential tails, and the sandwich
//! check of lower bound, exact law and upper bound.
//!
//! The admissible window is governed by the curvature of the exponent: with
//! `2R_n = sup |nu''|` over the window, `eps_n = R_n w_n^2` and
//! `Theta_n = gamma_n / sqrt(eps_n)`, the bound
//! `P(rho_n > u) >= e^{-gamma_n^2} e^{-u} - e^{-2u}` holds on
//! `1 <= u <= Theta_n`.

use crate::error::{Error, Result};
use crate::max_bounds::{norming_homogeneous, MaxNorming};
use crate::sim_harness::{max_tail_exact, ExactTailDistribution};
use crate::tail_calculus::YoungFunction;

/// Curvature window for the lower bound at a given `n`.
#[derive(Debug, Clone, Copy)]
pub struct LowerBoundWindow {
    pub n: u64,
    pub gamma: f64,
    /// Half the curvature supremum `R_n`.
    pub big_r: f64,
    /// `eps_n = R_n w_n^2`.
    pub eps: f64,
    /// Upper end of the valid `u` interval, `gamma / sqrt(eps_n)`.
    pub theta: f64,
}

/// Default window schedule `gamma_n = (ln n)^{-1/4}`; it vanishes while the
/// induced `Theta_n` still grows for the power families.
pub fn gamma_schedule(n: u64) -> f64 {
    (n as f64).ln().powf(-0.25)
}

/// Solve the circular system `R = sup |nu''| over [0, Theta]`,
/// `eps = R w^2`, `Theta = gamma / sqrt(eps)` by fixed-point iteration.
///
/// Iteration starts from the curvature at the location `q` and stops when
/// `Theta` is stable to 1e-8 relative; a vanishing curvature yields the
/// `Theta = +inf` sentinel (the window is unbounded).
pub fn theta_system(
    nu: &YoungFunction,
    norming: &MaxNorming,
    gamma: f64,
) -> Result<LowerBoundWindow> {
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "gamma must lie in (0, 1], got {gamma}"
        )));
    }
    if !nu.has_deriv2() {
        return Err(Error::MissingCapability(
            "lower-bound window needs nu''".into(),
        ));
    }
    let (q, w) = (norming.q, norming.w);

    let sup_scan = |theta: f64| -> Result<f64> {
        sup_abs_deriv2(nu, q, w, theta)
    };

    let d2q = nu.deriv2(q)?.abs();
    let mut theta = if d2q > 0.0 {
        gamma / (w * (d2q / 2.0).sqrt())
    } else {
        // flat at q: probe a wide window before declaring the sentinel
        let probe = sup_scan(128.0)?;
        if probe == 0.0 {
            return Ok(LowerBoundWindow {
                n: norming.n,
                gamma,
                big_r: 0.0,
                eps: 0.0,
                theta: f64::INFINITY,
            });
        }
        gamma / (w * (probe / 2.0).sqrt())
    };

    for _ in 0..100 {
        let r = 0.5 * sup_scan(theta)?;
        if r == 0.0 {
            return Ok(LowerBoundWindow {
                n: norming.n,
                gamma,
                big_r: 0.0,
                eps: 0.0,
                theta: f64::INFINITY,
            });
        }
        let eps = r * w * w;
        let next = gamma / eps.sqrt();
        if (next - theta).abs() <= 1e-8 * next {
            return Ok(LowerBoundWindow {
                n: norming.n,
                gamma,
                big_r: r,
                eps,
                theta: next,
            });
        }
        theta = next;
    }
    Err(Error::Divergence(
        "curvature window fixed point did not converge in 100 iterations".into(),
    ))
}

/// Grid supremum of `|nu''(q + u w)|` over `u in [0, theta]` with successive
/// 3x refinement around the best cell.
fn sup_abs_deriv2(nu: &YoungFunction, q: f64, w: f64, theta: f64) -> Result<f64> {
    const POINTS: usize = 1024;
    let mut lo = 0.0f64;
    let mut hi = theta;
    let mut best = 0.0f64;
    let mut points = POINTS;
    for _round in 0..4 {
        let mut best_i = 0;
        for i in 0..=points {
            let u = lo + (hi - lo) * i as f64 / points as f64;
            let v = nu.deriv2(q + u * w)?.abs();
            if v > best {
                best = v;
                best_i = i;
            }
        }
        let cell = (hi - lo) / points as f64;
        let c = lo + cell * best_i as f64;
        lo = (c - cell).max(0.0);
        hi = (c + cell).min(theta);
        points = 3 * POINTS / 2;
        if hi - lo <= 0.0 {
            break;
        }
    }
    Ok(best)
}

/// The Bonferroni lower bound `max(0, e^{-gamma^2} e^{-u} - e^{-2u})`,
/// asserted on `u in [1, Theta_n]` for independent exact-tail sequences.
pub fn rho_lower_bound(u: f64, window: &LowerBoundWindow) -> Result<f64> {
    if !(u >= 1.0 && u <= window.theta) {
        return Err(Error::Domain(format!(
            "lower bound asserted only on [1, {}], got u = {u}",
            window.theta
        )));
    }
    let v = (-window.gamma * window.gamma - u).exp() - (-2.0 * u).exp();
    Ok(v.max(0.0))
}

/// One row of the lower/exact/upper sandwich.
#[derive(Debug, Clone, Copy)]
pub struct SandwichRow {
    pub u: f64,
    pub lower: f64,
    pub exact: f64,
    pub upper: f64,
    pub pass: bool,
}

/// Sandwich the exact overshoot law between the Bonferroni lower bound and
/// the uniform `e^{-u}` upper bound for an independent sequence with tails
/// exactly `exp(-nu(x))`.
///
/// Fails with a violation error carrying the offending row if the ordering
/// `lower <= exact <= upper` breaks anywhere on the grid.
pub fn sandwich(
    nu: &YoungFunction,
    n: u64,
    gamma: f64,
    u_grid: &[f64],
) -> Result<Vec<SandwichRow>> {
    let norming = norming_homogeneous(nu, n)?;
    let window = theta_system(nu, &norming, gamma)?;
    let dist = ExactTailDistribution::exponential(nu.clone())?;
    let mut rows = Vec::with_capacity(u_grid.len());
    for &u in u_grid {
        let lower = rho_lower_bound(u, &window)?;
        let exact = max_tail_exact(&dist, n, norming.q + u * norming.w);
        let upper = (-u).exp();
        let pass = lower <= exact + 1e-12 && exact <= upper + 1e-12;
        if !pass {
            return Err(Error::BoundViolation {
                u,
                lower,
                exact,
                upper,
            });
        }
        rows.push(SandwichRow {
            u,
            lower,
            exact,
            upper,
            pass,
        });
    }
    Ok(rows)
}

//! Shared derivative-free numerical kernels: golden-section extremum search,
//! bracketed bisection and adaptive Simpson quadrature. Deterministic.

use crate::error::{Error, Result};

const INVPHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization of a unimodal objective on `[lo, hi]`.
///
/// Returns `(argmax, max)`. The objective may return `-inf` (treated as an
/// excluded point); it must not return NaN.
pub(crate) fn golden_max(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, rel_tol: f64) -> (f64, f64) {
    let mut a = lo;
    let mut b = hi;
    let mut c = b - INVPHI * (b - a);
    let mut d = a + INVPHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..256 {
        if (b - a).abs() <= rel_tol * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INVPHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INVPHI * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    let mut best = (mid, f(mid));
    for (x, v) in [(c, fc), (d, fd), (lo, f(lo)), (hi, f(hi))] {
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}

/// Golden-section minimization on `[lo, hi]` via negation.
pub(crate) fn golden_min(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, rel_tol: f64) -> (f64, f64) {
    let neg = |x: f64| -f(x);
    let (x, v) = golden_max(&neg, lo, hi, rel_tol);
    (x, -v)
}

/// Coarse scan on a grid followed by golden-section refinement between the
/// neighbors of the best grid point. Used when unimodality is expected but
/// not guaranteed by construction.
pub(crate) fn scan_then_golden_min(
    f: &dyn Fn(f64) -> f64,
    grid: &[f64],
    rel_tol: f64,
) -> (f64, f64) {
    debug_assert!(grid.len() >= 3);
    let mut best_i = 0;
    let mut best_v = f64::INFINITY;
    for (i, &x) in grid.iter().enumerate() {
        let v = f(x);
        if v < best_v {
            best_v = v;
            best_i = i;
        }
    }
    let lo = grid[best_i.saturating_sub(1)];
    let hi = grid[(best_i + 1).min(grid.len() - 1)];
    let (x, v) = golden_min(f, lo, hi, rel_tol);
    if v <= best_v {
        (x, v)
    } else {
        (grid[best_i], best_v)
    }
}

/// Bisection for `f(x) = y` on `[lo, hi]` with `f(lo) <= y <= f(hi)`,
/// `f` nondecreasing. Converges on the interval, then checks the residual.
pub(crate) fn bisect_increasing(
    f: &dyn Fn(f64) -> f64,
    y: f64,
    mut lo: f64,
    mut hi: f64,
    residual_tol: f64,
) -> Result<f64> {
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v.is_nan() {
            return Err(Error::Domain(format!("NaN while bisecting at x={mid}")));
        }
        if v < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let best = [lo, mid, hi]
        .into_iter()
        .min_by(|&a, &b| {
            let ra = (f(a) - y).abs();
            let rb = (f(b) - y).abs();
            ra.partial_cmp(&rb).unwrap()
        })
        .unwrap();
    if (f(best) - y).abs() <= residual_tol {
        Ok(best)
    } else {
        Err(Error::Divergence(format!(
            "bisection residual {} above tolerance {residual_tol}",
            (f(best) - y).abs()
        )))
    }
}

/// Adaptive Simpson on `[a, b]` with an absolute tolerance.
///
/// The range is assumed moderate; callers split large ranges into
/// logarithmic segments first.
pub(crate) fn adaptive_simpson(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    abs_tol: f64,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    if fa.is_nan() || fm.is_nan() || fb.is_nan() {
        return Err(Error::Domain("NaN integrand".into()));
    }
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // the width floor stops the recursion at jump discontinuities, where
    // halving the interval and the tolerance together would never terminate
    let min_width = 1e-13 * (b - a);
    simpson_step(f, a, m, b, fa, fm, fb, whole, abs_tol, 52, min_width)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    m: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    min_width: f64,
) -> Result<f64> {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol || (b - a) <= min_width {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::Divergence(
            "quadrature did not converge at maximum refinement depth".into(),
        ));
    }
    let l = simpson_step(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1, min_width)?;
    let r = simpson_step(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1, min_width)?;
    Ok(l + r)
}

/// Log-spaced grid over `[lo, hi]`, `lo > 0`, inclusive at both ends.
pub(crate) fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    debug_assert!(lo > 0.0 && hi > lo && points >= 2);
    let (la, lb) = (lo.ln(), hi.ln());
    (0..points)
        .map(|i| (la + (lb - la) * i as f64 / (points - 1) as f64).exp())
        .collect()
}

//! Monotone inversion by bracket-doubling and bisection.

use crate::error::{Error, Result};
use crate::numeric::bisect_increasing;

/// Invert a strictly increasing continuous `f` on `[0, inf)`:
/// returns `x` with `|f(x) - y| <= 1e-12 * max(1, |y|)`.
pub fn inverse_monotone<F: Fn(f64) -> f64>(f: F, y: f64) -> Result<f64> {
    inverse_monotone_from(f, y, 0.0)
}

/// Same as [`inverse_monotone`] but with an explicit left end of the domain,
/// for maps that are only increasing from `lo` on.
pub fn inverse_monotone_from<F: Fn(f64) -> f64>(f: F, y: f64, lo: f64) -> Result<f64> {
    let tol = 1e-12 * y.abs().max(1.0);
    let f_lo = f(lo);
    if y < f_lo - tol {
        return Err(Error::Domain(format!(
            "target {y} below f({lo}) = {f_lo}"
        )));
    }
    if (f_lo - y).abs() <= tol {
        return Ok(lo);
    }

    let mut step = lo.abs().max(1.0);
    let mut hi = lo + step;
    let mut found = false;
    for _ in 0..200 {
        if f(hi) >= y {
            found = true;
            break;
        }
        step *= 2.0;
        hi = lo + step;
        if !hi.is_finite() {
            break;
        }
    }
    if !found {
        return Err(Error::Divergence(format!(
            "no bracket for target {y} within 200 doublings"
        )));
    }
    bisect_increasing(&|x| f(x), y, lo, hi, tol)
}

//! Young-Fenchel (Legendre) transform `g*(u) = sup_y (y u - g(y))`.
//!
//! For convex `g` the map `y -> y u - g(y)` is concave, so the supremum is
//! located by bracket-doubling followed by golden-section search. Finite
//! domain endpoints are clamped and the boundary value is compared against
//! the interior optimum, since the supremum may sit on the boundary.

use crate::error::{Error, Result};
use crate::numeric::golden_max;

/// Young-Fenchel conjugate of `g` at `u >= 0`, with `g` finite on
/// `[0, domain_hi)` (or the closed interval when `g(domain_hi)` is finite).
///
/// Returns `+inf` when the supremum is unbounded (e.g. `g` of linear growth
/// and `u` beyond its slope). Relative tolerance 1e-10.
pub fn legendre<G: Fn(f64) -> f64>(g: G, u: f64, domain_hi: f64) -> Result<f64> {
    if u < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "conjugate evaluated at negative u={u}"
        )));
    }
    if !(domain_hi > 0.0) {
        return Err(Error::InvalidArgument(
            "empty conjugation domain".into(),
        ));
    }
    conjugate_on_interval(&|y| g(y), u, 0.0, domain_hi).map(|(_, v)| v)
}

/// Maximize `y u - g(y)` over `[lo, hi]`, returning `(argmax, value)`.
///
/// `hi` may be infinite. Infinite `g` values are treated as excluded points;
/// NaN at a probe point is a domain error.
pub(crate) fn conjugate_on_interval(
    g: &dyn Fn(f64) -> f64,
    u: f64,
    lo: f64,
    hi: f64,
) -> Result<(f64, f64)> {
    let objective = |y: f64| {
        let gy = g(y);
        if gy == f64::INFINITY {
            f64::NEG_INFINITY
        } else {
            y * u - gy
        }
    };

    // probe for NaN misuse before searching
    let probe_hi = if hi.is_finite() { hi } else { lo.max(1.0) * 8.0 };
    for t in [lo, 0.5 * (lo + probe_hi), probe_hi] {
        if objective(t).is_nan() {
            return Err(Error::Domain(format!(
                "exponent function returned NaN at y={t}"
            )));
        }
    }

    let hi_eff = if hi.is_finite() {
        hi
    } else {
        // double until the concave objective decreases
        let mut prev = lo.max(1.0);
        let mut cur = 2.0 * prev;
        let mut found = None;
        for _ in 0..1100 {
            if objective(cur) < objective(prev) {
                found = Some(cur);
                break;
            }
            prev = cur;
            cur *= 2.0;
            if !cur.is_finite() {
                break;
            }
        }
        match found {
            Some(b) => b,
            // objective still growing at overflow scale: the sup is infinite
            None => return Ok((f64::INFINITY, f64::INFINITY)),
        }
    };

    let (mut arg, mut val) = golden_max(&objective, lo, hi_eff, 1e-12);
    for (y, v) in [(lo, objective(lo)), (hi_eff, objective(hi_eff))] {
        if v > val {
            arg = y;
            val = v;
        }
    }
    Ok((arg, val))
}

//! Moments from a tail curve: `||xi||_p = (p int_0^inf x^{p-1} T(x) dx)^{1/p}`.

use crate::error::{Error, Result};
use crate::numeric::adaptive_simpson;
use crate::tail_calculus::TailCurve;

const TAIL_CUT: f64 = 1e-16;

/// Compute the `L_p` norm induced by a tail curve, `p >= 1`.
///
/// Quadrature runs adaptively on logarithmic segments of `[0, x_cut]` where
/// `x_cut` is the first doubling point with `T < 1e-16`; beyond the cut the
/// remaining mass is added by a power-law extrapolation of the local decay
/// (exact for polynomial tails, negligible for exponential ones).
pub fn moments_from_tail(tail: &TailCurve, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "moment order must satisfy p >= 1, got {p}"
        )));
    }
    let mut x_cut = 1.0f64;
    for _ in 0..1060 {
        if tail.eval(x_cut) < TAIL_CUT {
            break;
        }
        x_cut *= 2.0;
    }
    if tail.eval(x_cut) >= TAIL_CUT {
        return Err(Error::Divergence(
            "tail does not decay below the cut threshold".into(),
        ));
    }

    let integrand = |x: f64| p * x.powf(p - 1.0) * tail.eval(x);

    // logarithmic segmentation keeps the adaptive recursion shallow on the
    // potentially huge range [0, x_cut]
    let mut edges = vec![0.0, 1.0f64.min(x_cut)];
    let mut e = 1.0f64;
    while e < x_cut {
        e = (2.0 * e).min(x_cut);
        edges.push(e);
    }
    let crude: f64 = edges
        .windows(2)
        .map(|w| composite_simpson(&integrand, w[0], w[1], 32))
        .sum();
    let scale = crude.abs().max(1e-300);
    let tol_per_segment = 1e-9 * scale / edges.len() as f64;

    let mut integral = 0.0;
    for w in edges.windows(2) {
        integral += adaptive_simpson(&integrand, w[0], w[1], tol_per_segment)?;
    }

    let t1 = tail.eval(x_cut);
    if t1 > 0.0 {
        let t2 = tail.eval(2.0 * x_cut);
        if t2 > 0.0 {
            let slope = (t1 / t2).ln() / std::f64::consts::LN_2;
            if slope <= p + 0.05 {
                return Err(Error::Divergence(format!(
                    "tail decay exponent {slope} too shallow for moment order {p}"
                )));
            }
            if slope < 1e3 {
                integral += p * x_cut.powf(p) * t1 / (slope - p);
            }
        }
    }

    Ok(integral.powf(1.0 / p))
}

fn composite_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    if h <= 0.0 {
        return 0.0;
    }
    let mut s = f(a) + f(b);
    for i in 1..n {
        let x = a + i as f64 * h;
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    s * h / 3.0
}

//! Tail and norm estimates through generating functions: the exponential
//! tail bound `exp(-h*(ln(y/norm)))` and the grid estimate of the
//! `sup_p ||xi||_p / psi(p)` norm.

use crate::error::{Error, Result};
use crate::tail_calculus::GeneratingPsi;

/// `h_psi(p) = p ln psi(p)`.
pub fn h_psi(psi: &GeneratingPsi, p: f64) -> Result<f64> {
    psi.h(p)
}

/// Exponential tail bound for a variable of norm `norm` in the space
/// generated by `psi`: `exp(-h*(ln(y/norm)))`, asserted for `y >= e * norm`.
pub fn gls_tail_bound(psi: &GeneratingPsi, norm: f64, y: f64) -> Result<f64> {
    gls_tail_bound_argmax(psi, norm, y).map(|(_, b)| b)
}

/// Same bound together with the maximizing exponent `p*`, useful as a
/// diagnostic of where the moment bound is tight.
pub fn gls_tail_bound_argmax(psi: &GeneratingPsi, norm: f64, y: f64) -> Result<(f64, f64)> {
    if !(norm > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "norm must be positive, got {norm}"
        )));
    }
    let v = (y / norm).ln();
    if !(v >= 1.0) {
        return Err(Error::Domain(format!(
            "tail bound asserted only for y >= e * norm, got y/norm = {}",
            y / norm
        )));
    }
    let (p_star, h_star) = psi.h_star(v)?;
    Ok((p_star, (-h_star).exp().min(1.0)))
}

/// Lower estimate of the generated norm `sup_p ||xi||_p / psi(p)` over a
/// finite grid of exponents.
pub fn gls_norm_from_moments(
    moment_map: impl Fn(f64) -> f64,
    psi: &GeneratingPsi,
    p_grid: &[f64],
) -> Result<f64> {
    if p_grid.is_empty() {
        return Err(Error::InvalidArgument("empty exponent grid".into()));
    }
    let mut best = f64::NEG_INFINITY;
    for &p in p_grid {
        let ratio = moment_map(p) / psi.eval(p)?;
        if ratio > best {
            best = ratio;
        }
    }
    Ok(best)
}

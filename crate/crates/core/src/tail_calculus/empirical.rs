//! Empirical natural exponent: the log moment generating function of a
//! sample, symmetrized over the sign of the argument.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::tail_calculus::PhiFunction;

/// Build the empirical exponent `phi(l) = max over signs of
/// ln(mean exp(+-l x_i))` from a sample.
///
/// The grid must be symmetric about zero; it is used to probe finiteness of
/// the empirical exponent up front (an overflowing average maps to `+inf`).
/// The returned function evaluates at arbitrary arguments, not only grid
/// points.
pub fn natural_phi_empirical(samples: &[f64], lambda_grid: &[f64]) -> Result<PhiFunction> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("empty sample".into()));
    }
    if samples.iter().any(|x| x.is_nan()) {
        return Err(Error::InvalidArgument("sample contains NaN".into()));
    }
    let mut sorted = lambda_grid.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (lo, hi) in sorted.iter().zip(sorted.iter().rev()) {
        if (lo + hi).abs() > 1e-12 * (1.0 + hi.abs()) {
            return Err(Error::InvalidArgument(
                "lambda grid must be symmetric about 0".into(),
            ));
        }
    }
    let phi = PhiFunction::empirical(Arc::new(samples.to_vec()));
    // probing the grid surfaces overflow-to-infinity early
    for &l in &sorted {
        let _ = phi.eval(l);
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_sample_is_zero() {
        let phi = natural_phi_empirical(&[0.0; 8], &[-1.0, 0.0, 1.0]).unwrap();
        assert_eq!(phi.eval(0.7), 0.0);
        assert_eq!(phi.eval(-3.0), 0.0);
    }

    #[test]
    fn rademacher_sample_gives_ln_cosh() {
        let phi = natural_phi_empirical(&[1.0, -1.0], &[-2.0, -1.0, 1.0, 2.0]).unwrap();
        let expect = 1.0f64.cosh().ln(); // 0.43378...
        assert!((phi.eval(1.0) - expect).abs() < 1e-12);
        assert!((expect - 0.433_780_830_483_7).abs() < 1e-10);
    }

    #[test]
    fn asymmetric_grid_rejected() {
        assert!(natural_phi_empirical(&[1.0], &[-1.0, 2.0]).is_err());
    }

    #[test]
    fn empty_sample_rejected() {
        assert!(natural_phi_empirical(&[], &[-1.0, 1.0]).is_err());
    }
}

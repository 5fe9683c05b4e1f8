//! Norming sequences and uniform exponential tail bounds for maxima of
//! sequences of random variables with exponentially decaying tails.
//!
//! For a tail exponent `nu` the maximum of the first `n` variables
//! concentrates at `q_n = nu^{-1}(ln n)` with scale `w_n = 1/nu'(q_n)`; the
//! normalized overshoot `rho_n = (max - q_n)/w_n` has the uniform bound
//! `P(rho_n > u) <= e^{-u}`. The decay rate `z_n = q_n/w_n` drives the
//! almost-sure bound `limsup max/q_n <= 1 + K` through Borel-Cantelli
//! summation, where `K` is the convergence exponent of `sum exp(-c z_n)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::tail_calculus::YoungFunction;

/// Location, scale and decay rate for the maximum of `n` variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxNorming {
    pub n: u64,
    /// Location `q_n`.
    pub q: f64,
    /// Scale `w_n`.
    pub w: f64,
    /// Decay rate `z_n = q_n / w_n`.
    pub z: f64,
}

impl MaxNorming {
    pub fn new(n: u64, q: f64, w: f64) -> Self {
        Self { n, q, w, z: q / w }
    }
}

/// Per-index tail exponents of a not necessarily identically distributed
/// sequence: `P(xi_i > x) <= exp(-nu_i(x))`.
#[derive(Debug, Clone)]
pub struct HeteroTailFamily {
    nus: Vec<YoungFunction>,
}

impl HeteroTailFamily {
    pub fn new(nus: Vec<YoungFunction>) -> Result<Self> {
        if nus.is_empty() {
            return Err(Error::InvalidArgument("empty tail family".into()));
        }
        Ok(Self { nus })
    }

    pub fn len(&self) -> usize {
        self.nus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nus.is_empty()
    }
}

/// Norming values at a real-valued log count; the workhorse behind
/// [`norming_homogeneous`], split out so closed-form checks can evaluate at
/// exact log counts like `ln n = 2`.
pub fn norming_parts(nu: &YoungFunction, ln_n: f64) -> Result<(f64, f64, f64)> {
    let q = nu.inverse(ln_n)?;
    let d = nu.deriv(q);
    if !(d > 0.0) {
        return Err(Error::Divergence(format!(
            "nu'({q}) = {d} is not positive; scale undefined"
        )));
    }
    Ok((q, 1.0 / d, q * d))
}

/// Norming sequence for identically bounded tails: `q_n = nu^{-1}(ln n)`,
/// `w_n = 1/nu'(q_n)`, `z_n = q_n nu'(q_n)`. Requires `n >= 3` so that
/// `ln n > 1`.
pub fn norming_homogeneous(nu: &YoungFunction, n: u64) -> Result<MaxNorming> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "homogeneous norming needs n >= 3, got {n}"
        )));
    }
    let (q, w, _) = norming_parts(nu, (n as f64).ln())?;
    Ok(MaxNorming::new(n, q, w))
}

/// Norming sequence for heterogeneous tails.
///
/// The location `q_n` is the unique positive root of
/// `sum_{i<=n} exp(-nu_i(q)) = 1` (residual at most 1e-12). The scale is
/// `w_n = 1/min_i nu_i'(q_n)`: the smallest per-index slope is the one that
/// makes the union bound close to `e^{-u}`, and it coincides with the
/// homogeneous scale when all entries are equal.
pub fn norming_heterogeneous(family: &HeteroTailFamily, n: usize) -> Result<MaxNorming> {
    if n < 1 || n > family.len() {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= n <= {} tail exponents, got n={n}",
            family.len()
        )));
    }
    let nus = &family.nus[..n];
    let total = |q: f64| -> f64 { nus.iter().map(|nu| (-nu.eval(q)).exp()).sum() };

    let q = if (total(0.0) - 1.0).abs() <= 1e-12 {
        0.0
    } else {
        let mut hi = 1.0f64;
        let mut ok = false;
        for _ in 0..200 {
            if total(hi) < 1.0 {
                ok = true;
                break;
            }
            hi *= 2.0;
        }
        if !ok {
            return Err(Error::Divergence(
                "could not bracket the root of the norming equation".into(),
            ));
        }
        // total is strictly decreasing in q
        crate::numeric::bisect_increasing(&|q: f64| -total(q), -1.0, 0.0, hi, 1e-12)?
    };

    let d_min = nus
        .iter()
        .map(|nu| nu.deriv(q))
        .fold(f64::INFINITY, f64::min);
    Ok(MaxNorming::new(n as u64, q, 1.0 / d_min))
}

/// The uniform overshoot bound `P(rho_n > u) <= e^{-u}`, valid for all
/// `n >= 3` and `u >= 0`.
pub fn rho_upper_bound(u: f64) -> f64 {
    debug_assert!(u >= 0.0);
    (-u).exp()
}

/// The three preliminary tail bounds for normalized sequences, in both
/// clamped probability form and raw log form.
#[derive(Debug, Clone, Copy)]
pub struct PreliminaryBounds {
    /// `exp(-n nu(u))`.
    pub p_n: f64,
    /// `(1 - 1/e)^{-1} exp(-k1 nu(u))`.
    pub p_bar: f64,
    /// `exp(-nu(u))`.
    pub p_plus: f64,
    pub ln_p_n: f64,
    pub ln_p_bar: f64,
    pub ln_p_plus: f64,
}

/// Smallest positive integer at least `nu(u1)`.
pub fn k_one(nu: &YoungFunction, u1: f64) -> u64 {
    let v = nu.eval(u1);
    if v <= 1.0 {
        1
    } else {
        v.ceil() as u64
    }
}

/// Preliminary bounds under the supermultiplicativity threshold `u1`
/// (caller-verified through [`supermult_check`]).
///
/// All three bounds are returned for `u` strictly above
/// `u2 = max(nu^{-1}(1), u1)` and `n >= k1`; the strictest of the individual
/// validity ranges applies since one record carries all three.
pub fn preliminary_bounds(
    nu: &YoungFunction,
    u1: f64,
    n: u64,
    u: f64,
) -> Result<PreliminaryBounds> {
    let u2 = nu.inverse(1.0)?.max(u1);
    if !(u > u2) {
        return Err(Error::Domain(format!(
            "bounds asserted only for u > u2 = {u2}, got u = {u}"
        )));
    }
    let k1 = k_one(nu, u1);
    if n < k1 {
        return Err(Error::Domain(format!(
            "bounds asserted only for n >= k1 = {k1}, got n = {n}"
        )));
    }
    let nv = nu.eval(u);
    let c = 1.0 / (1.0 - (-1.0f64).exp()); // (1 - 1/e)^{-1}
    let ln_p_n = -(n as f64) * nv;
    let ln_p_bar = c.ln() - (k1 as f64) * nv;
    let ln_p_plus = -nv;
    Ok(PreliminaryBounds {
        p_n: ln_p_n.exp().min(1.0),
        p_bar: ln_p_bar.exp().min(1.0),
        p_plus: ln_p_plus.exp().min(1.0),
        ln_p_n,
        ln_p_bar,
        ln_p_plus,
    })
}

/// Outcome of the supermultiplicativity scan.
#[derive(Debug, Clone, Copy)]
pub struct SupermultReport {
    pub holds: bool,
    /// Smallest grid point above which no violation of
    /// `nu(ab) >= nu(a) nu(b)` was observed; 0 when none was observed at all.
    pub u1_estimate: f64,
}

/// Scan all grid pairs `(a, b)` for violations of
/// `nu(ab) >= nu(a) nu(b)`.
///
/// This is a falsifier, not a prover: a clean scan is evidence, not proof.
/// `holds` is false when violations persist into the top decade of the grid.
pub fn supermult_check(nu: &YoungFunction, grid: &[f64]) -> SupermultReport {
    debug_assert!(grid.windows(2).all(|w| w[0] < w[1]));
    debug_assert!(grid.first().map_or(true, |&g| g > 0.0));
    let mut worst: Option<usize> = None; // max over violating pairs of min(i, j)
    for (i, &a) in grid.iter().enumerate() {
        for &b in &grid[i..] {
            let product = nu.eval(a) * nu.eval(b);
            // relative slack absorbs rounding in x.powf at large arguments
            if nu.eval(a * b) < product - 1e-9 * product.abs().max(1e-300) {
                worst = Some(worst.map_or(i, |w| w.max(i)));
            }
        }
    }
    match worst {
        None => SupermultReport {
            holds: true,
            u1_estimate: 0.0,
        },
        Some(w) => {
            let top_decade = grid.last().copied().unwrap_or(f64::INFINITY) / 10.0;
            if w + 1 < grid.len() && grid[w] < top_decade {
                SupermultReport {
                    holds: true,
                    u1_estimate: grid[w + 1],
                }
            } else {
                SupermultReport {
                    holds: false,
                    u1_estimate: f64::INFINITY,
                }
            }
        }
    }
}

/// A deterministic decay-rate sequence `n -> z_n`.
#[derive(Clone)]
pub enum ZSequence {
    /// `z_n = m ln n`, the closed form with exact convergence exponent `1/m`.
    LogLinear { m: f64 },
    Custom(Arc<dyn Fn(u64) -> f64 + Send + Sync>),
}

impl ZSequence {
    pub fn custom(f: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        ZSequence::Custom(Arc::new(f))
    }

    pub fn at(&self, n: u64) -> f64 {
        match self {
            ZSequence::LogLinear { m } => m * (n as f64).ln(),
            ZSequence::Custom(f) => f(n),
        }
    }
}

/// Convergence exponent of `sum_n exp(-c z_n)`: the smallest `Y` such that
/// the series converges for every `c > Y`, numerically the limit superior of
/// `(ln n)/z_n`.
///
/// Window suprema over doubling ranges up to `n_max` are accelerated by one
/// Aitken step; a steadily increasing window sequence (bounded `z_n`) yields
/// the `+inf` sentinel. Family-tagged sequences return their exact exponent.
pub fn k_constant(z: &ZSequence, n_max: u64) -> f64 {
    if let ZSequence::LogLinear { m } = z {
        return 1.0 / m;
    }
    let n_max = n_max.max(16);
    let mut sups: Vec<f64> = Vec::new();
    let mut lo = 2u64;
    // full doubling windows only; a clipped final window would distort the
    // extrapolation below
    while 2 * lo <= n_max + 1 {
        let hi = 2 * lo;
        let mut s = f64::NEG_INFINITY;
        for n in lo..hi {
            let zn = z.at(n);
            debug_assert!(zn > 0.0, "z_{n} = {zn} must be positive");
            s = s.max((n as f64).ln() / zn);
        }
        sups.push(s);
        lo = hi;
    }
    let l = sups.len();
    if l >= 3 {
        let d1 = sups[l - 1] - sups[l - 2];
        let d2 = sups[l - 2] - sups[l - 3];
        if d1 > 1e-9 && d2 > 0.0 && d1 >= 0.9 * d2 {
            return f64::INFINITY; // windows keep climbing: z_n too slow
        }
        let denom = d1 - d2;
        if denom.abs() > 1e-14 {
            let acc = sups[l - 1] - d1 * d1 / denom;
            if acc.is_finite() && (acc - sups[l - 1]).abs() <= sups[l - 1].abs() + 1.0 {
                return acc.max(0.0);
            }
        }
    }
    sups.last().copied().unwrap_or(f64::INFINITY).max(0.0)
}

/// The almost-sure bound `limsup max/q_n <= 1 + K` reported to users.
pub fn limsup_bound(k: f64) -> f64 {
    1.0 + k
}

/// Outcome of the lower-limit condition scan.
#[derive(Debug, Clone, Copy)]
pub struct LiminfReport {
    pub holds: bool,
    /// The binding margin: smallest over the epsilon grid of the largest
    /// admissible `eps1`.
    pub eps1_estimate: f64,
}

/// Check, in the form the proof actually uses, the condition under which
/// independent exact-tail sequences satisfy `limsup max/q_n >= 1`:
/// for every `eps` there is `eps1 > 0` with
/// `nu(A (1 - eps)) <= (1 - eps1) nu(A)` for all large `A`.
///
/// Falsifier semantics: grids, not proofs.
pub fn liminf_condition_check(
    nu: &YoungFunction,
    eps_grid: &[f64],
    a_grid: &[f64],
) -> LiminfReport {
    debug_assert!(eps_grid.iter().all(|&e| e > 0.0 && e < 1.0));
    debug_assert!(a_grid.iter().all(|&a| a > 1.0));
    let mut overall = f64::INFINITY;
    for &eps in eps_grid {
        let mut eps1 = f64::INFINITY;
        for &a in a_grid {
            let denom = nu.eval(a);
            if denom <= 0.0 {
                continue;
            }
            eps1 = eps1.min(1.0 - nu.eval(a * (1.0 - eps)) / denom);
        }
        overall = overall.min(eps1);
    }
    LiminfReport {
        holds: overall.is_finite() && overall > 0.0,
        eps1_estimate: overall,
    }
}

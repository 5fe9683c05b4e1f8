//! Bounds for polynomially decaying tails: the Pisier-type maximum bound
//! with its Bonferroni lower counterpart, regular variation through the
//! envelope `M_L`, the norming roots `U(n)`, sum normings `d(n)`, generating
//! functions for power tails, the majorant characteristic of a maximum, and
//! the Rosenthal-shaped sum tail.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numeric::{log_grid, scan_then_golden_min};
use crate::tail_calculus::GeneratingPsi;

/// A positive slowly varying function on `x >= 1`: `L(tx)/L(x) -> 1`.
#[derive(Clone)]
pub struct SlowlyVaryingL {
    repr: LRepr,
}

#[derive(Clone)]
enum LRepr {
    Constant { value: f64 },
    /// `ln^r(e x)`, `r > 0`.
    LogPower { r: f64 },
    Custom {
        eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl SlowlyVaryingL {
    pub fn constant(value: f64) -> Result<Self> {
        if !(value > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "slowly varying functions are positive, got {value}"
            )));
        }
        Ok(Self {
            repr: LRepr::Constant { value },
        })
    }

    pub fn one() -> Self {
        Self {
            repr: LRepr::Constant { value: 1.0 },
        }
    }

    pub fn log_power(r: f64) -> Result<Self> {
        if !(r > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "log-power family needs r > 0, got {r}"
            )));
        }
        Ok(Self {
            repr: LRepr::LogPower { r },
        })
    }

    pub fn custom(eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            repr: LRepr::Custom {
                eval: Arc::new(eval),
            },
        }
    }

    /// Evaluate at `x`; arguments below 1 are clamped to 1 (the function is
    /// a tail-side object).
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.max(1.0);
        match &self.repr {
            LRepr::Constant { value } => *value,
            LRepr::LogPower { r } => (1.0 + x.ln()).powf(*r),
            LRepr::Custom { eval } => eval(x),
        }
    }

    /// Exact scaling envelope for the closed-form families: constants give
    /// 1, and for `ln^r(e x)` the ratio `L(xz)/L(z)` is maximal at `z = 1`,
    /// so the envelope equals `L` itself.
    fn exact_envelope(&self, x: f64) -> Option<f64> {
        match &self.repr {
            LRepr::Constant { .. } => Some(1.0),
            LRepr::LogPower { .. } => Some(self.eval(x)),
            LRepr::Custom { .. } => None,
        }
    }

    /// Doubling-grid falsifier of slow variation: `L(2x)/L(x)` must come
    /// within `tol` of 1 by `x = 2^40`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        let mut x = 1.0f64;
        for _ in 0..=40 {
            x *= 2.0;
        }
        let ratio = self.eval(2.0 * x) / self.eval(x);
        if (ratio - 1.0).abs() > tol {
            return Err(Error::InvalidArgument(format!(
                "L(2x)/L(x) = {ratio} at x = 2^40, not slowly varying"
            )));
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        match &self.repr {
            LRepr::Constant { value } => format!("constant({value})"),
            LRepr::LogPower { r } => format!("log-power(r={r})"),
            LRepr::Custom { .. } => "custom".into(),
        }
    }
}

impl std::fmt::Debug for SlowlyVaryingL {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SlowlyVaryingL({})", self.describe())
    }
}

/// A polynomial tail profile `x^{-beta} (ln x)^gamma L(ln x)`.
#[derive(Debug, Clone)]
pub struct HeavyTailSpec {
    /// Tail exponent (`alpha` for maxima, `beta > 2` for sum bounds).
    pub exponent: f64,
    pub gamma: f64,
    pub l: SlowlyVaryingL,
}

impl HeavyTailSpec {
    pub fn new(exponent: f64, gamma: f64, l: SlowlyVaryingL) -> Result<Self> {
        if !(exponent > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tail exponent must be positive, got {exponent}"
            )));
        }
        Ok(Self { exponent, gamma, l })
    }
}

/// Uniform Pisier-type bound: for arrays in the unit ball of the weak-`L_p`
/// tail condition, `P(n^{-1/p} max > u) <= u^{-p}` for all `n`, `u >= 1`.
pub fn pisier_bound(p: f64, u: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(Error::InvalidArgument(format!("need p > 0, got {p}")));
    }
    if !(u >= 1.0) {
        return Err(Error::Domain(format!(
            "bound asserted only for u >= 1, got {u}"
        )));
    }
    Ok(u.powf(-p))
}

/// Bonferroni lower counterpart for exact unit Pareto tails:
/// `u^{-p} - u^{-2p}(1 - 1/n)/2`, asserted for `u >= 2`.
pub fn pisier_lower(p: f64, n: u64, u: f64) -> Result<f64> {
    if !(p > 0.0) || n < 1 {
        return Err(Error::InvalidArgument(format!(
            "need p > 0 and n >= 1, got p={p}, n={n}"
        )));
    }
    if !(u >= 2.0) {
        return Err(Error::Domain(format!(
            "lower bound asserted only for u >= 2, got {u}"
        )));
    }
    Ok(u.powf(-p) - 0.5 * u.powf(-2.0 * p) * (1.0 - 1.0 / n as f64))
}

/// Scaling envelope `M_L(x) = sup_{z >= 1} L(xz)/L(z)` over a finite grid.
///
/// A grid supremum is a lower estimate of the true envelope; family tags
/// override it with the exact value.
pub fn m_envelope(l: &SlowlyVaryingL, x: f64, z_grid: &[f64]) -> f64 {
    if let Some(exact) = l.exact_envelope(x) {
        return exact;
    }
    z_grid
        .iter()
        .map(|&z| l.eval(x * z) / l.eval(z))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// [`m_envelope`] on the default grid: 4096 log-spaced points over
/// `[1, 2^64]`.
pub fn m_envelope_default(l: &SlowlyVaryingL, x: f64) -> f64 {
    if let Some(exact) = l.exact_envelope(x) {
        return exact;
    }
    let grid = log_grid(1.0, 2.0f64.powi(64), 4096);
    m_envelope(l, x, &grid)
}

/// Norming root `U(n)`: the solution of `U^alpha / L(U) = n`, with
/// `U(1) = 1` by convention.
pub fn u_n(alpha: f64, l: &SlowlyVaryingL, n: u64) -> Result<f64> {
    if !(alpha > 0.0) || n < 1 {
        return Err(Error::InvalidArgument(format!(
            "need alpha > 0 and n >= 1, got alpha={alpha}, n={n}"
        )));
    }
    if n == 1 {
        return Ok(1.0);
    }
    let target = n as f64;
    let f = |u: f64| u.powf(alpha) / l.eval(u);
    let mut hi = 2.0f64;
    let mut ok = false;
    for _ in 0..1060 {
        if f(hi) >= target {
            ok = true;
            break;
        }
        hi *= 2.0;
    }
    if !ok {
        return Err(Error::Divergence(format!(
            "could not bracket the norming root for n = {n}"
        )));
    }
    // the map must be increasing where we bisect
    if f(hi) < f(hi / 2.0) {
        return Err(Error::Divergence(
            "norming map is not increasing on the bracket".into(),
        ));
    }
    let root = crate::numeric::bisect_increasing(&f, target, 1.0, hi, 1e-10 * target)?;
    Ok(root)
}

/// Uniform bound for the normalized maximum under a polynomial tail profile:
/// `sup_n P(max / U(n) > x) <= x^{-alpha} M_L(x)`, `x >= 1`.
pub fn heavy_max_bound(alpha: f64, l: &SlowlyVaryingL, x: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need alpha > 0, got {alpha}"
        )));
    }
    if !(x >= 1.0) {
        return Err(Error::Domain(format!(
            "bound asserted only for x >= 1, got {x}"
        )));
    }
    Ok(x.powf(-alpha) * m_envelope_default(l, x))
}

/// Norming `d(n) = n^{1/beta} (ln n)^delta` for sums with polynomial tails,
/// requiring `delta > (2 + gamma)/beta` so the Borel-Cantelli series
/// converges. `d(1) = 1` by convention.
pub fn norming_d(beta: f64, gamma: f64, delta: f64, n: u64) -> Result<f64> {
    if !(beta > 2.0) {
        return Err(Error::InvalidArgument(format!(
            "sum norming needs beta > 2, got {beta}"
        )));
    }
    if !(delta > (2.0 + gamma) / beta) {
        return Err(Error::Domain(format!(
            "delta must exceed (2 + gamma)/beta = {}, got {delta}",
            (2.0 + gamma) / beta
        )));
    }
    if n < 2 {
        return Ok(1.0);
    }
    let nf = n as f64;
    Ok(nf.powf(1.0 / beta) * nf.ln().powf(delta))
}

/// Diagnostics of the heuristic series test.
#[derive(Debug, Clone)]
pub struct SeriesDiagnostics {
    /// Partial sums over doubling windows `[2^k, 2^{k+1})`.
    pub window_sums: Vec<f64>,
    /// Least-squares slope of `ln(window sum)` against `ln k` over the tail
    /// windows; window sums behaving like `k^{-s}` with `s > 1` signal a
    /// convergent series.
    pub window_slope: f64,
    /// Median local slope `ln(a_{2n}/a_n)/ln 2` over the tail windows.
    pub term_slope: f64,
}

/// Heuristic convergence verdict for a positive series.
#[derive(Debug, Clone)]
pub struct SeriesReport {
    /// Heuristic verdict; a falsifier, never a proof.
    pub converges_estimate: bool,
    pub diagnostics: SeriesDiagnostics,
}

/// Numerical surrogate for "the series converges": partial sums over
/// doubling windows plus log-log slope tests with margin 0.05.
///
/// Terms must decay faster than `n^{-1.05}` locally, and the window sums
/// must decay faster than `k^{-1.05}` in the window index; the second test
/// is what separates `1/(n ln n)` (divergent, window sums like `1/k`) from
/// `n^{-1} (ln n)^{-1.3}` (convergent, window sums like `k^{-1.3}`).
pub fn series_convergence_check(terms: impl Fn(u64) -> f64, n_max: u64) -> SeriesReport {
    const MARGIN: f64 = 1.05;
    let n_max = n_max.max(64);
    let mut window_sums = Vec::new();
    let mut lo = 2u64;
    // full doubling windows only, so the slope fit sees equal-width cells
    while 2 * lo <= n_max + 1 {
        let hi = 2 * lo;
        let mut s = 0.0;
        for n in lo..hi {
            let a = terms(n);
            debug_assert!(a >= 0.0, "series terms must be nonnegative");
            s += a;
        }
        window_sums.push(s);
        lo = hi;
    }

    let k_total = window_sums.len();
    let tail_start = k_total / 2;
    let tail: Vec<(f64, f64)> = window_sums
        .iter()
        .enumerate()
        .skip(tail_start)
        .filter(|(_, s)| **s > 0.0)
        .map(|(k, s)| (((k + 1) as f64).ln(), s.ln()))
        .collect();

    let window_slope = if tail.len() < 2 {
        f64::NEG_INFINITY // all-zero tail: trivially summable
    } else {
        least_squares_slope(&tail)
    };

    let mut local = Vec::new();
    let mut n = 2u64 << tail_start;
    while 2 * n <= n_max {
        let a = terms(n);
        let b = terms(2 * n);
        if a > 0.0 && b > 0.0 {
            local.push((b / a).ln() / std::f64::consts::LN_2);
        }
        n *= 2;
    }
    local.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let term_slope = if local.is_empty() {
        f64::NEG_INFINITY
    } else {
        local[local.len() / 2]
    };

    let increasing_tail = window_sums
        .iter()
        .skip(tail_start)
        .collect::<Vec<_>>()
        .windows(2)
        .any(|w| *w[1] > *w[0] * 1.01);

    let converges_estimate =
        !increasing_tail && window_slope <= -MARGIN && term_slope <= -MARGIN;
    SeriesReport {
        converges_estimate,
        diagnostics: SeriesDiagnostics {
            window_sums,
            window_slope,
            term_slope,
        },
    }
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in points {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

/// Generating function for a polynomial tail profile:
/// `psi(p) = (beta - p)^{-(gamma+1)/beta} L(1/(beta-p))^{1/beta}` on
/// `[1, beta)`.
pub fn psi_beta_gamma_l(beta: f64, gamma: f64, l: &SlowlyVaryingL, p: f64) -> Result<f64> {
    if !(beta > 1.0) {
        return Err(Error::InvalidArgument(format!(
            "need beta > 1, got {beta}"
        )));
    }
    if !(p >= 1.0 && p < beta) {
        return Err(Error::Domain(format!(
            "p must lie in [1, beta) = [1, {beta}), got {p}"
        )));
    }
    let gap = beta - p;
    Ok(gap.powf(-(gamma + 1.0) / beta) * l.eval(1.0 / gap).powf(1.0 / beta))
}

/// The full generating function of the profile as a reusable object with
/// domain endpoint `b = beta`.
pub fn psi_from_heavy_tail(spec: &HeavyTailSpec) -> Result<GeneratingPsi> {
    let beta = spec.exponent;
    if !(beta > 1.0) {
        return Err(Error::InvalidArgument(format!(
            "generating function needs beta > 1, got {beta}"
        )));
    }
    let gamma = spec.gamma;
    let l = spec.l.clone();
    GeneratingPsi::custom(
        move |p| {
            let gap = beta - p;
            gap.powf(-(gamma + 1.0) / beta) * l.eval(1.0 / gap).powf(1.0 / beta)
        },
        beta,
        false,
    )
}

/// Majorant characteristic bound for the norm of a maximum of `n` unit-norm
/// variables: `exp(g_*(ln n))` with
/// `g_*(x) = inf_{y in (1/b, 1)} (x y + ln psi(1/y))`.
///
/// The multiplicative constant in front is not computable from first
/// principles here and is reported as 1.
pub fn majorant_bound(psi: &GeneratingPsi, n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "majorant bound defined for n >= 2, got {n}"
        )));
    }
    let x = (n as f64).ln();
    let b = psi.b();
    let objective = |y: f64| {
        let p = 1.0 / y;
        match psi.eval(p) {
            Ok(v) if v > 0.0 => x * y + v.ln(),
            _ => f64::INFINITY,
        }
    };
    let lo_open = if b.is_finite() { 1.0 / b } else { 1e-12 };
    let mut grid: Vec<f64> = (0..1024)
        .map(|i| lo_open + (1.0 - lo_open) * (i as f64 + 0.5) / 1024.0)
        .collect();
    // boundary exponents join the search when evaluable
    if psi.in_domain(1.0) {
        grid.push(1.0);
    }
    if b.is_finite() && psi.in_domain(b) {
        grid.insert(0, 1.0 / b);
    }
    let (_, val) = scan_then_golden_min(&objective, &grid, 1e-13);
    if !val.is_finite() {
        return Err(Error::Divergence(
            "majorant minimization failed on the whole interval".into(),
        ));
    }
    Ok(val.exp())
}

/// Rosenthal-shaped tail for normalized sums under a polynomial profile:
/// `C x^{-beta} (ln x)^{gamma+1} L(ln x)`, `x >= e`. The constant is
/// caller-supplied; only the shape is asserted here.
pub fn rosenthal_sum_tail(spec: &HeavyTailSpec, c: f64, x: f64) -> Result<f64> {
    if !(spec.exponent > 2.0) {
        return Err(Error::InvalidArgument(format!(
            "sum tail shape needs beta > 2, got {}",
            spec.exponent
        )));
    }
    if !(c > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "constant must be positive, got {c}"
        )));
    }
    if !(x >= std::f64::consts::E) {
        return Err(Error::Domain(format!(
            "shape asserted only for x >= e, got {x}"
        )));
    }
    let lx = x.ln();
    Ok(c * x.powf(-spec.exponent) * lx.powf(spec.gamma + 1.0) * spec.l.eval(lx))
}

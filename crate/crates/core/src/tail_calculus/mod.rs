//! Young-Orlicz function algebra: evaluation, differentiation, monotone
//! inversion, Young-Fenchel conjugation, generating functions of Grand
//! Lebesgue type, and tail/moment conversions.
//!
//! Exponent functions come in two flavors. Closed-form families carry exact
//! derivatives and inverses; black-box callables fall back to central
//! differences and bracketed bisection. Both satisfy the same contracts, so
//! the rest of the crate does not care which one it holds.

mod conjugate;
mod curve;
mod empirical;
mod gls;
mod inverse;
mod moments;
mod psi;

pub use conjugate::legendre;
pub use curve::TailCurve;
pub use empirical::natural_phi_empirical;
pub use gls::{gls_norm_from_moments, gls_tail_bound, gls_tail_bound_argmax, h_psi};
pub use inverse::{inverse_monotone, inverse_monotone_from};
pub use moments::moments_from_tail;
pub use psi::GeneratingPsi;

pub(crate) use conjugate::conjugate_on_interval;

use std::sync::Arc;

use crate::error::{Error, Result};

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A strictly increasing convex exponent `nu` on `[0, inf)` with
/// `nu(0) = 0`, used as a tail exponent through `P(xi > x) <= exp(-nu(x))`.
#[derive(Clone)]
pub struct YoungFunction {
    repr: NuRepr,
}

#[derive(Clone)]
enum NuRepr {
    /// `x^m / m`, `m >= 1`.
    Power { m: f64 },
    /// `x^m (ln x)^r` for `x >= e`, continued as `x^m` below `e` where the
    /// logarithmic factor is frozen at 1.
    PowerLog { m: f64, r: f64 },
    /// `exp(c x^s) - 1`.
    Exponential { c: f64, s: f64 },
    Custom {
        eval: ScalarFn,
        deriv: Option<ScalarFn>,
        deriv2: Option<ScalarFn>,
    },
}

impl YoungFunction {
    /// The power family `x^m / m`.
    pub fn power(m: f64) -> Result<Self> {
        if !(m >= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "power family requires m >= 1, got {m}"
            )));
        }
        Ok(Self {
            repr: NuRepr::Power { m },
        })
    }

    /// The power-log family `x^m (ln x)^r` (log factor frozen at 1 below `e`).
    ///
    /// For `r < 0` the continuation has a concave kink at `e`; convexity then
    /// holds only piecewise, which `validate` will flag on grids straddling
    /// `e`.
    pub fn power_log(m: f64, r: f64) -> Result<Self> {
        if !(m >= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "power-log family requires m >= 1, got {m}"
            )));
        }
        Ok(Self {
            repr: NuRepr::PowerLog { m, r },
        })
    }

    /// The exponential family `exp(c x^s) - 1`.
    pub fn exponential(c: f64, s: f64) -> Result<Self> {
        if !(c > 0.0 && s > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "exponential family requires c, s > 0, got c={c}, s={s}"
            )));
        }
        Ok(Self {
            repr: NuRepr::Exponential { c, s },
        })
    }

    /// A black-box exponent. Derivative closures are optional; numeric
    /// fallbacks (central differences) are used where they are absent.
    pub fn custom(
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        deriv: Option<ScalarFn>,
        deriv2: Option<ScalarFn>,
    ) -> Self {
        Self {
            repr: NuRepr::Custom {
                eval: Arc::new(eval),
                deriv,
                deriv2,
            },
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let x = x.max(0.0);
        match &self.repr {
            NuRepr::Power { m } => x.powf(*m) / m,
            NuRepr::PowerLog { m, r } => {
                if x <= std::f64::consts::E {
                    x.powf(*m)
                } else {
                    x.powf(*m) * x.ln().powf(*r)
                }
            }
            NuRepr::Exponential { c, s } => (c * x.powf(*s)).exp_m1(),
            NuRepr::Custom { eval, .. } => eval(x),
        }
    }

    /// First derivative; exact for families, central difference otherwise.
    pub fn deriv(&self, x: f64) -> f64 {
        let x = x.max(0.0);
        match &self.repr {
            NuRepr::Power { m } => x.powf(m - 1.0),
            NuRepr::PowerLog { m, r } => {
                if x <= std::f64::consts::E {
                    m * x.powf(m - 1.0)
                } else {
                    let l = x.ln();
                    x.powf(m - 1.0) * l.powf(r - 1.0) * (m * l + r)
                }
            }
            NuRepr::Exponential { c, s } => c * s * x.powf(s - 1.0) * (c * x.powf(*s)).exp(),
            NuRepr::Custom {
                deriv: Some(d), ..
            } => d(x),
            NuRepr::Custom { eval, .. } => central_difference(eval.as_ref(), x),
        }
    }

    /// Second derivative where available.
    pub fn deriv2(&self, x: f64) -> Result<f64> {
        let x = x.max(0.0);
        match &self.repr {
            NuRepr::Power { m } => Ok((m - 1.0) * x.powf(m - 2.0)),
            NuRepr::PowerLog { m, r } => {
                if x <= std::f64::consts::E {
                    Ok(m * (m - 1.0) * x.powf(m - 2.0))
                } else {
                    let l = x.ln();
                    let v = (m - 1.0) * l.powf(r - 1.0) * (m * l + r)
                        + (r - 1.0) * l.powf(r - 2.0) * (m * l + r)
                        + m * l.powf(r - 1.0);
                    Ok(x.powf(m - 2.0) * v)
                }
            }
            NuRepr::Exponential { c, s } => {
                let e = (c * x.powf(*s)).exp();
                Ok(c * s * e * x.powf(s - 2.0) * ((s - 1.0) + c * s * x.powf(*s)))
            }
            NuRepr::Custom {
                deriv2: Some(d2), ..
            } => Ok(d2(x)),
            NuRepr::Custom { .. } => Err(Error::MissingCapability(
                "second derivative not supplied for custom exponent".into(),
            )),
        }
    }

    /// Whether `deriv2` can be evaluated.
    pub fn has_deriv2(&self) -> bool {
        !matches!(&self.repr, NuRepr::Custom { deriv2: None, .. })
    }

    /// Inverse on `[0, inf)`; exact for families, bracketed bisection
    /// otherwise. Requires `y >= 0`.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        if y < 0.0 {
            return Err(Error::Domain(format!("inverse needs y >= 0, got {y}")));
        }
        match &self.repr {
            NuRepr::Power { m } => Ok((m * y).powf(1.0 / m)),
            NuRepr::PowerLog { m, r: _ } => {
                let at_e = std::f64::consts::E.powf(*m);
                if y <= at_e {
                    Ok(y.powf(1.0 / m))
                } else {
                    inverse::inverse_monotone_from(|x| self.eval(x), y, std::f64::consts::E)
                }
            }
            NuRepr::Exponential { c, s } => Ok((y.ln_1p() / c).powf(1.0 / s)),
            NuRepr::Custom { .. } => inverse::inverse_monotone(|x| self.eval(x), y),
        }
    }

    /// Compact description used in report headers.
    pub fn describe(&self) -> String {
        match &self.repr {
            NuRepr::Power { m } => format!("power(m={m})"),
            NuRepr::PowerLog { m, r } => format!("power-log(m={m},r={r})"),
            NuRepr::Exponential { c, s } => format!("exponential(c={c},s={s})"),
            NuRepr::Custom { .. } => "custom".into(),
        }
    }

    /// Grid falsifier for the type invariants: `nu(0) = 0`, strict increase,
    /// midpoint convexity, and unbounded growth of `nu` and `nu'` (checked on
    /// a doubling grid until both exceed `growth_threshold`).
    pub fn validate(&self, growth_threshold: f64) -> Result<()> {
        if self.eval(0.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "nu(0) = {} is not 0",
                self.eval(0.0)
            )));
        }
        // grid values that overflow to +inf count as growth, not violations
        let grid = crate::numeric::log_grid(1e-3, 1e3, 121);
        for w in grid.windows(2) {
            let (a, b) = (self.eval(w[0]), self.eval(w[1]));
            if a.is_finite() && b.is_finite() && b <= a {
                return Err(Error::InvalidArgument(format!(
                    "nu not strictly increasing near x={}",
                    w[0]
                )));
            }
        }
        for w in grid.windows(3) {
            let mid = 0.5 * (w[0] + w[2]);
            let lhs = self.eval(mid);
            let rhs = 0.5 * (self.eval(w[0]) + self.eval(w[2]));
            if !lhs.is_finite() || !rhs.is_finite() {
                continue;
            }
            if lhs > rhs + 1e-9 * (1.0 + rhs.abs()) {
                return Err(Error::InvalidArgument(format!(
                    "midpoint convexity fails near x={mid}"
                )));
            }
        }
        let mut x = 1.0;
        for _ in 0..200 {
            if self.eval(x) > growth_threshold && self.deriv(x) > growth_threshold {
                return Ok(());
            }
            x *= 2.0;
            if !x.is_finite() {
                break;
            }
        }
        Err(Error::InvalidArgument(
            "nu or nu' does not grow beyond the configured threshold".into(),
        ))
    }
}

impl std::fmt::Debug for YoungFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "YoungFunction({})", self.describe())
    }
}

fn central_difference(f: &(dyn Fn(f64) -> f64 + Send + Sync), x: f64) -> f64 {
    let h = 1e-6 * x.abs().max(1.0);
    if x - h < 0.0 {
        // one-sided near the left end of the support
        return (f(x + h) - f(x)) / h;
    }
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// An even convex exponent of a moment generating function:
/// `phi(0) = 0`, `phi'(0) = 0`, `phi''(0)` finite and positive, defined on
/// `(-lambda0, lambda0)` and `+inf` outside.
#[derive(Clone)]
pub struct PhiFunction {
    repr: PhiRepr,
    lambda0: f64,
}

#[derive(Clone)]
enum PhiRepr {
    /// `beta^2 lambda^2 / 2`: the subgaussian exponent with norm `beta`.
    Subgaussian { beta: f64 },
    /// `|lambda|^a / a`, `a > 1`.
    Power { a: f64 },
    Custom { eval: ScalarFn },
    /// Empirical log-MGF of a fixed sample, symmetrized over the sign.
    Empirical { samples: Arc<Vec<f64>> },
}

impl PhiFunction {
    pub fn subgaussian(beta: f64) -> Result<Self> {
        if !(beta > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "subgaussian exponent needs beta > 0, got {beta}"
            )));
        }
        Ok(Self {
            repr: PhiRepr::Subgaussian { beta },
            lambda0: f64::INFINITY,
        })
    }

    pub fn power(a: f64) -> Result<Self> {
        if !(a > 1.0) {
            return Err(Error::InvalidArgument(format!(
                "power exponent needs a > 1, got {a}"
            )));
        }
        Ok(Self {
            repr: PhiRepr::Power { a },
            lambda0: f64::INFINITY,
        })
    }

    /// Black-box even convex exponent on `(-lambda0, lambda0)`.
    pub fn custom(eval: impl Fn(f64) -> f64 + Send + Sync + 'static, lambda0: f64) -> Result<Self> {
        if !(lambda0 > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "domain radius must be positive, got {lambda0}"
            )));
        }
        Ok(Self {
            repr: PhiRepr::Custom {
                eval: Arc::new(eval),
            },
            lambda0,
        })
    }

    pub(crate) fn empirical(samples: Arc<Vec<f64>>) -> Self {
        Self {
            repr: PhiRepr::Empirical { samples },
            lambda0: f64::INFINITY,
        }
    }

    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }

    /// Evaluate at `lambda`; even by construction, `+inf` outside the domain
    /// (the convention for an infinite moment generating function).
    pub fn eval(&self, lambda: f64) -> f64 {
        let l = lambda.abs();
        if l >= self.lambda0 {
            return f64::INFINITY;
        }
        match &self.repr {
            PhiRepr::Subgaussian { beta } => 0.5 * (beta * l) * (beta * l),
            PhiRepr::Power { a } => l.powf(*a) / a,
            PhiRepr::Custom { eval } => eval(l),
            PhiRepr::Empirical { samples } => {
                let plus = log_mean_exp(samples, l);
                let minus = log_mean_exp(samples, -l);
                plus.max(minus)
            }
        }
    }

    /// Young-Fenchel conjugate at `u >= 0`, the induced tail exponent.
    pub fn conjugate(&self, u: f64) -> Result<f64> {
        conjugate::legendre(|l| self.eval(l), u, self.lambda0)
    }

    /// Finite-difference falsifier for the exponent invariants.
    pub fn validate(&self) -> Result<()> {
        let h = 1e-5 * self.lambda0.min(1.0);
        let f0 = self.eval(0.0);
        if f0.abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!("phi(0) = {f0} is not 0")));
        }
        let d0 = (self.eval(h) - self.eval(-h)) / (2.0 * h);
        if d0.abs() > 1e-4 {
            return Err(Error::InvalidArgument(format!(
                "phi'(0) = {d0} is not 0"
            )));
        }
        let d2 = (self.eval(h) - 2.0 * f0 + self.eval(-h)) / (h * h);
        if !(d2.is_finite() && d2 > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "phi''(0) = {d2} is not in (0, inf)"
            )));
        }
        let hi = if self.lambda0.is_finite() {
            0.99 * self.lambda0
        } else {
            8.0
        };
        let grid: Vec<f64> = (0..41).map(|i| hi * (i as f64 / 40.0)).collect();
        for w in grid.windows(3) {
            let mid = 0.5 * (w[0] + w[2]);
            if self.eval(mid) > 0.5 * (self.eval(w[0]) + self.eval(w[2])) + 1e-9 {
                return Err(Error::InvalidArgument(format!(
                    "phi midpoint convexity fails near lambda={mid}"
                )));
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for PhiFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.repr {
            PhiRepr::Subgaussian { beta } => write!(f, "PhiFunction(subgaussian beta={beta})"),
            PhiRepr::Power { a } => write!(f, "PhiFunction(power a={a})"),
            PhiRepr::Custom { .. } => write!(f, "PhiFunction(custom)"),
            PhiRepr::Empirical { samples } => {
                write!(f, "PhiFunction(empirical n={})", samples.len())
            }
        }
    }
}

/// `ln(mean exp(t x_i))` via a log-sum-exp that cannot overflow.
fn log_mean_exp(samples: &[f64], t: f64) -> f64 {
    debug_assert!(!samples.is_empty());
    if t == 0.0 {
        return 0.0;
    }
    let m = samples
        .iter()
        .map(|&x| t * x)
        .fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return f64::INFINITY;
    }
    let sum: f64 = samples.iter().map(|&x| (t * x - m).exp()).sum();
    m + (sum / samples.len() as f64).ln()
}

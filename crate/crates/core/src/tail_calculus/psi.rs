//! Generating functions `psi(p)` of Grand Lebesgue type on `Dom = [1, b)`
//! or `[1, b]`, together with the auxiliary exponent `h(p) = p ln psi(p)`
//! and its conjugate.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::tail_calculus::conjugate::conjugate_on_interval;

/// A continuous generating function with `inf psi > 0` on its domain.
///
/// The domain is `[1, b)` by default; `closed_at_b` extends it to `[1, b]`
/// (only meaningful for finite `b`). Values above `b` are `+inf` by
/// convention.
#[derive(Clone)]
pub struct GeneratingPsi {
    repr: PsiRepr,
    b: f64,
    closed_at_b: bool,
}

#[derive(Clone)]
enum PsiRepr {
    /// `p^{1/m}` on `[1, inf)`.
    PowerRoot { m: f64 },
    /// Constant value, typically on a closed `[1, b]`.
    Constant { value: f64 },
    Custom {
        eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl GeneratingPsi {
    /// `psi_m(p) = p^{1/m}` with unbounded domain.
    pub fn power_root(m: f64) -> Result<Self> {
        if !(m > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "power-root generating function needs m > 0, got {m}"
            )));
        }
        Ok(Self {
            repr: PsiRepr::PowerRoot { m },
            b: f64::INFINITY,
            closed_at_b: false,
        })
    }

    /// Constant `value` on `[1, b]` (closed); the norm it generates is the
    /// plain `L_b` norm.
    pub fn constant(value: f64, b: f64) -> Result<Self> {
        if !(value > 0.0) || !(b > 1.0) || !b.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "constant generating function needs value > 0 and finite b > 1, got {value}, {b}"
            )));
        }
        Ok(Self {
            repr: PsiRepr::Constant { value },
            b,
            closed_at_b: true,
        })
    }

    /// Black-box generating function on `[1, b)` or `[1, b]`.
    pub fn custom(
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
        b: f64,
        closed_at_b: bool,
    ) -> Result<Self> {
        if !(b > 1.0) {
            return Err(Error::InvalidArgument(format!(
                "domain endpoint must exceed 1, got {b}"
            )));
        }
        if closed_at_b && !b.is_finite() {
            return Err(Error::InvalidArgument(
                "a domain closed at b requires finite b".into(),
            ));
        }
        Ok(Self {
            repr: PsiRepr::Custom {
                eval: Arc::new(eval),
            },
            b,
            closed_at_b,
        })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn closed_at_b(&self) -> bool {
        self.closed_at_b
    }

    pub fn in_domain(&self, p: f64) -> bool {
        p >= 1.0 && (p < self.b || (self.closed_at_b && p == self.b))
    }

    pub fn eval(&self, p: f64) -> Result<f64> {
        if !self.in_domain(p) {
            return Err(Error::Domain(format!(
                "p={p} outside Dom[psi] = [1, {}{}",
                self.b,
                if self.closed_at_b { "]" } else { ")" }
            )));
        }
        Ok(self.eval_unchecked(p))
    }

    fn eval_unchecked(&self, p: f64) -> f64 {
        match &self.repr {
            PsiRepr::PowerRoot { m } => p.powf(1.0 / m),
            PsiRepr::Constant { value } => *value,
            PsiRepr::Custom { eval } => eval(p),
        }
    }

    /// `h(p) = p ln psi(p)` on the same domain.
    pub fn h(&self, p: f64) -> Result<f64> {
        Ok(p * self.eval(p)?.ln())
    }

    /// Conjugate `h*(v) = sup_{p in Dom} (p v - h(p))` with its maximizer.
    ///
    /// The supremum over a half-open domain is approached by clamping just
    /// inside `b`; on a closed domain the endpoint competes directly.
    pub fn h_star(&self, v: f64) -> Result<(f64, f64)> {
        let g = |p: f64| {
            let psi = self.eval_unchecked(p);
            if psi.is_finite() && psi > 0.0 {
                p * psi.ln()
            } else {
                f64::INFINITY
            }
        };
        let hi = if self.b.is_finite() && !self.closed_at_b {
            self.b * (1.0 - 1e-13)
        } else {
            self.b
        };
        conjugate_on_interval(&g, v, 1.0, hi)
    }

    /// Grid falsifier: positivity bounded away from zero and continuity
    /// (no jumps beyond interpolation tolerance) on a sampling grid.
    pub fn validate(&self) -> Result<()> {
        let hi = if self.b.is_finite() {
            self.b - 1e-9 * (self.b - 1.0)
        } else {
            64.0
        };
        let n = 257;
        let vals: Vec<f64> = (0..n)
            .map(|i| self.eval_unchecked(1.0 + (hi - 1.0) * i as f64 / (n - 1) as f64))
            .collect();
        if vals.iter().any(|v| !(*v > 0.0) || v.is_nan()) {
            return Err(Error::InvalidArgument(
                "generating function must be positive on its domain".into(),
            ));
        }
        for w in vals.windows(3) {
            let interp = 0.5 * (w[0] + w[2]);
            if (w[1] - interp).abs() > 0.25 * (w[0].abs() + w[2].abs()) + 1e-9 {
                return Err(Error::InvalidArgument(
                    "generating function jumps beyond interpolation tolerance".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        match &self.repr {
            PsiRepr::PowerRoot { m } => format!("power-root(m={m})"),
            PsiRepr::Constant { value } => format!(
                "constant(value={value},b={}{})",
                self.b,
                if self.closed_at_b { ",closed" } else { "" }
            ),
            PsiRepr::Custom { .. } => format!("custom(b={})", self.b),
        }
    }
}

impl std::fmt::Debug for GeneratingPsi {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GeneratingPsi({})", self.describe())
    }
}

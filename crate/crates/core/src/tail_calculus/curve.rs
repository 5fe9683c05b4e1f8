//! Tail curves: nonincreasing maps `u -> P(xi > u)` in `[0, 1]`.

use std::sync::Arc;

/// A tail function, used uniformly for analytic bounds, exact laws and
/// empirical estimates. Values are clamped into `[0, 1]`.
#[derive(Clone)]
pub struct TailCurve {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    support_lo: f64,
}

impl TailCurve {
    /// Wrap a closure; `support_lo` is the smallest `u` where the curve is
    /// declared valid.
    pub fn new(support_lo: f64, eval: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(eval),
            support_lo,
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        (self.eval)(u).clamp(0.0, 1.0)
    }

    pub fn support_lo(&self) -> f64 {
        self.support_lo
    }

    /// Pointwise scaling, handy for falsification self-tests.
    pub fn scaled(&self, factor: f64) -> TailCurve {
        let inner = self.eval.clone();
        TailCurve {
            eval: Arc::new(move |u| factor * inner(u)),
            support_lo: self.support_lo,
        }
    }
}

impl std::fmt::Debug for TailCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TailCurve(support_lo={})", self.support_lo)
    }
}

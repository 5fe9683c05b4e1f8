//! Partial sums of triangular arrays: the aggregated exponent
//! `chi_n(lambda) = sum_i phi[n,i](lambda)`, its conjugate `kappa_n`, the
//! induced tail and norming, the subgaussian specialization, and the
//! Monte-Carlo certification band that is uniform in the sample size.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::max_bounds::{k_constant, ZSequence};
use crate::tail_calculus::{conjugate_on_interval, inverse_monotone, PhiFunction};

/// Per-entry exponent functions of a triangular array,
/// `E exp(+-lambda xi_{n,i}) <= exp(phi[n,i](lambda))`.
///
/// The subgaussian family tag carries per-entry norms `beta_{n,i}` and keeps
/// every downstream quantity in closed form; the general form builds entries
/// on demand.
#[derive(Clone)]
pub enum ArrayModel {
    Subgaussian(SubgaussianArray),
    General(GeneralArray),
}

#[derive(Clone)]
pub struct SubgaussianArray {
    betas: Arc<dyn Fn(u64, u64) -> f64 + Send + Sync>,
}

#[derive(Clone)]
pub struct GeneralArray {
    entries: Arc<dyn Fn(u64, u64) -> PhiFunction + Send + Sync>,
}

impl ArrayModel {
    /// All entries subgaussian with the same norm `beta`.
    pub fn subgaussian_iid(beta: f64) -> Result<Self> {
        if !(beta > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "subgaussian norm must be positive, got {beta}"
            )));
        }
        Ok(Self::Subgaussian(SubgaussianArray {
            betas: Arc::new(move |_, _| beta),
        }))
    }

    /// Subgaussian entries with norms `beta(n, i)`, `1 <= i <= n`.
    pub fn subgaussian_with(betas: impl Fn(u64, u64) -> f64 + Send + Sync + 'static) -> Self {
        Self::Subgaussian(SubgaussianArray {
            betas: Arc::new(betas),
        })
    }

    /// Arbitrary exponent entries `phi[n,i]`.
    pub fn general(entries: impl Fn(u64, u64) -> PhiFunction + Send + Sync + 'static) -> Self {
        Self::General(GeneralArray {
            entries: Arc::new(entries),
        })
    }

    /// Sum of squared subgaussian norms over row `n`, when tagged.
    fn beta_sq_sum(&self, n: u64) -> Option<f64> {
        match self {
            ArrayModel::Subgaussian(a) => {
                let mut s = 0.0;
                for i in 1..=n {
                    let b = (a.betas)(n, i);
                    s += b * b;
                }
                Some(s)
            }
            ArrayModel::General(_) => None,
        }
    }

    fn phi(&self, n: u64, i: u64) -> PhiFunction {
        match self {
            ArrayModel::Subgaussian(a) => {
                PhiFunction::subgaussian((a.betas)(n, i)).expect("positive beta")
            }
            ArrayModel::General(g) => (g.entries)(n, i),
        }
    }
}

/// Aggregated exponent `chi_n(lambda)`; `+inf` as soon as one entry is
/// infinite, 0 for the empty row.
pub fn chi_n(model: &ArrayModel, n: u64, lambda: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if let Some(bsq) = model.beta_sq_sum(n) {
        return 0.5 * bsq * lambda * lambda;
    }
    let mut s = 0.0;
    for i in 1..=n {
        let v = model.phi(n, i).eval(lambda);
        if v == f64::INFINITY {
            return f64::INFINITY;
        }
        s += v;
    }
    s
}

/// Conjugate exponent `kappa_n(u) = sup_lambda (lambda u - chi_n(lambda))`,
/// the tail exponent of the row sum. Exact `u^2 / (2 sum beta^2)` for the
/// subgaussian tag.
pub fn kappa_n(model: &ArrayModel, n: u64, u: f64) -> Result<f64> {
    if u < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "conjugate evaluated at negative u={u}"
        )));
    }
    if let Some(bsq) = model.beta_sq_sum(n) {
        if n == 0 {
            return Ok(if u > 0.0 { f64::INFINITY } else { 0.0 });
        }
        return Ok(u * u / (2.0 * bsq));
    }
    if n == 0 {
        return Ok(if u > 0.0 { f64::INFINITY } else { 0.0 });
    }
    let lambda_hi = (1..=n)
        .map(|i| model.phi(n, i).lambda0())
        .fold(f64::INFINITY, f64::min);
    let g = |l: f64| chi_n(model, n, l);
    conjugate_on_interval(&g, u, 0.0, lambda_hi).map(|(_, v)| v)
}

/// Tail bound for the row sum: `min(1, exp(-kappa_n(u)))`.
pub fn sum_tail_bound(model: &ArrayModel, n: u64, u: f64) -> Result<f64> {
    Ok((-kappa_n(model, n, u)?).exp().min(1.0))
}

/// Location, scale and rate for the running maximum of row sums.
#[derive(Debug, Clone, Copy)]
pub struct ArrayNorming {
    /// `kappa_n^{-1}(ln n)`.
    pub location: f64,
    /// `1 / kappa_n'(location)`.
    pub scale: f64,
    /// `location / scale`.
    pub y_n: f64,
}

/// Norming for the maximum of the first `n` row sums, `n >= 3`.
///
/// The derivative of the conjugate is taken by central difference
/// (`h = 1e-6 max(1, u)`) unless the family tag provides it exactly.
pub fn array_norming(model: &ArrayModel, n: u64) -> Result<ArrayNorming> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "array norming needs n >= 3, got {n}"
        )));
    }
    let ln_n = (n as f64).ln();
    if let Some(bsq) = model.beta_sq_sum(n) {
        let b = bsq.sqrt();
        let location = b * (2.0 * ln_n).sqrt();
        let scale = b / (2.0 * ln_n).sqrt();
        return Ok(ArrayNorming {
            location,
            scale,
            y_n: 2.0 * ln_n,
        });
    }
    let kappa = |u: f64| kappa_n(model, n, u).unwrap_or(f64::INFINITY);
    let location = inverse_monotone(kappa, ln_n)?;
    let h = 1e-6 * location.abs().max(1.0);
    let lo = (location - h).max(0.0);
    let d = (kappa(location + h) - kappa(lo)) / (location + h - lo);
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::Divergence(format!(
            "kappa_n'({location}) = {d} is unusable"
        )));
    }
    Ok(ArrayNorming {
        location,
        scale: 1.0 / d,
        y_n: location * d,
    })
}

/// Convergence exponent of `sum exp(-c y(n))` for the array rate sequence,
/// the array analogue of the maximum's `K`.
pub fn array_rate_exponent(y: &ZSequence, n_max: u64) -> f64 {
    k_constant(y, n_max)
}

/// The almost-sure bound `limsup max-of-sums / kappa_n^{-1}(ln n) <= 1 + L`.
pub fn array_limsup_bound(l: f64) -> f64 {
    1.0 + l
}

/// Uniform deviation bound for subgaussian arrays:
/// `P(sup_n sum / (beta_n sqrt(2 ln n)) >= 1 + z) <= 2^{1-2z}`.
///
/// The geometric majorant of `sum_{n>=2} n^{-2z}` fails below `z = 3/2`
/// (at `z = 1` the series is about 0.645 while the majorant is 0.5), so the
/// argument is rejected there; `z >= 3/2` is exactly the range induced by
/// certification levels `delta < 1/2`.
pub fn y_uniform_bound(z: f64) -> Result<f64> {
    if !(z >= 1.5) {
        return Err(Error::Domain(format!(
            "uniform bound valid only for z >= 3/2 (the stated z >= 1 fails: \
             sum n^-2 = 0.645 > 0.5), got z = {z}"
        )));
    }
    Ok(2.0f64.powf(1.0 - 2.0 * z))
}

/// Solve `2^{2 - 2 z} = delta` for the certification quantile `z(delta)`.
pub fn z_o_of(delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::Domain(format!(
            "certification level must lie in (0, 1/2), got {delta}"
        )));
    }
    Ok(1.0 - delta.log2() / 2.0)
}

/// Confidence band, uniform over all sample sizes `n >= 2`: with probability
/// at least `1 - delta`, `|theta_n - theta| <= radius(n)` for every `n`.
#[derive(Debug, Clone, Copy)]
pub struct CertBand {
    pub beta: f64,
    pub delta: f64,
    pub z_o: f64,
}

impl CertBand {
    pub fn new(beta: f64, delta: f64) -> Result<Self> {
        if !(beta > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "band needs a positive subgaussian norm, got {beta}"
            )));
        }
        Ok(Self {
            beta,
            delta,
            z_o: z_o_of(delta)?,
        })
    }

    /// `beta sqrt(2 ln n)/sqrt(n) (1 + z_o)`, meaningful for `n >= 2`.
    pub fn radius(&self, n: f64) -> f64 {
        self.beta * (2.0 * n.ln()).sqrt() / n.sqrt() * (1.0 + self.z_o)
    }
}

/// One certified step of the running mean.
#[derive(Debug, Clone, Copy)]
pub struct CertRow {
    pub n: u64,
    pub theta_n: f64,
    pub radius: f64,
}

/// Online single-pass accumulator for the certified running mean; streams
/// need not be stored.
#[derive(Debug, Clone)]
pub struct RunningMeanCertifier {
    band: CertBand,
    count: u64,
    mean: f64,
}

impl RunningMeanCertifier {
    pub fn new(band: CertBand) -> Self {
        Self {
            band,
            count: 0,
            mean: 0.0,
        }
    }

    /// Absorb one observation and return the current `(n, theta_n)`.
    pub fn push(&mut self, x: f64) -> (u64, f64) {
        self.count += 1;
        self.mean += (x - self.mean) / self.count as f64;
        (self.count, self.mean)
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn band(&self) -> &CertBand {
        &self.band
    }

    /// The certified row at the current count; the band starts at `n = 2`.
    pub fn row(&self) -> Option<CertRow> {
        (self.count >= 2).then(|| CertRow {
            n: self.count,
            theta_n: self.mean,
            radius: self.band.radius(self.count as f64),
        })
    }
}

/// Certify a stream: the running mean paired with the uniform band radius
/// at every `n >= 2`.
pub fn mc_certify(
    samples: impl IntoIterator<Item = f64>,
    beta: f64,
    delta: f64,
) -> Result<(CertBand, Vec<CertRow>)> {
    let band = CertBand::new(beta, delta)?;
    let mut acc = RunningMeanCertifier::new(band);
    let mut rows = Vec::new();
    for x in samples {
        acc.push(x);
        if let Some(row) = acc.row() {
            rows.push(row);
        }
    }
    Ok((band, rows))
}

/// Norm of a sum of independent subgaussian variables:
/// the Euclidean norm of the per-entry norms.
pub fn subgaussian_norm_sum(betas: &[f64]) -> f64 {
    debug_assert!(betas.iter().all(|b| *b >= 0.0));
    betas.iter().map(|b| b * b).sum::<f64>().sqrt()
}

/// The classical ordinary-logarithm scale `sqrt(2 s^2 ln s^2)` for a row
/// variance `s^2 > 1`. Exposed as an alternative norming for reports only;
/// no bound in this crate is stated against it.
pub fn lol_scale(s_sq: f64) -> Result<f64> {
    if !(s_sq > 1.0) {
        return Err(Error::Domain(format!(
            "scale defined for s^2 > 1, got {s_sq}"
        )));
    }
    Ok((2.0 * s_sq * s_sq.ln()).sqrt())
}

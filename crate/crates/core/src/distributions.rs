//! Poisson and zero-truncated Poisson distributions.
//!
//! The zero-truncated Poisson law with rate `a` is Poisson(`a`) conditioned
//! on being at least one. Its mean is `f(a) = a / (1 - e^-a)`, a strictly
//! increasing bijection from `(0, inf)` onto `(1, inf)`; [`solve_parameter`]
//! inverts it.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Above this index (or rate) pmf values are evaluated in log-space.
const DIRECT_PMF_LIMIT: u64 = 30;

/// Rates above this are sampled by rejection from the untruncated law.
const INVERSE_CDF_RATE_LIMIT: f64 = 30.0;

/// Mean of the zero-truncated Poisson law with rate `a`.
pub fn truncated_mean(a: f64) -> f64 {
    if a == 0.0 {
        return 1.0;
    }
    a / -(-a).exp_m1()
}

/// `1 + a - f(a)`, computed without cancellation for small `a`.
fn one_plus_a_minus_mean(a: f64) -> f64 {
    if a < 1e-4 {
        a / 2.0 - a * a / 12.0 + a.powi(4) / 720.0
    } else {
        1.0 - a / a.exp_m1()
    }
}

/// Derivative of [`truncated_mean`].
fn truncated_mean_derivative(a: f64) -> f64 {
    let q = -(-a).exp_m1();
    (q - a * (-a).exp()) / (q * q)
}

/// Rate, mean and variance of a zero-truncated Poisson distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncPoissonParams {
    a: f64,
    mean: f64,
    sigma2: f64,
}

impl TruncPoissonParams {
    /// Builds the parameters for rate `a > 0`.
    pub fn from_rate(a: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::input(format!("rate must be finite, got {a}")));
        }
        if a <= 0.0 {
            return Err(Error::domain(format!("rate must be positive, got {a}")));
        }
        let mean = truncated_mean(a);
        Ok(Self {
            a,
            mean,
            sigma2: mean * one_plus_a_minus_mean(a),
        })
    }

    /// Poisson rate.
    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Variance of the truncated law.
    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn sigma(&self) -> f64 {
        self.sigma2.sqrt()
    }

    /// `P(Z >= 1)` for the untruncated Poisson, i.e. `1 - e^-a`.
    pub fn survival(&self) -> f64 {
        -(-self.a).exp_m1()
    }
}

/// Finds the rate `a` whose truncated Poisson law has the given mean.
///
/// Bisection on `[1e-12, max(50, 2 mean)]` followed by three guarded Newton
/// steps.
pub fn solve_parameter(mean: f64) -> Result<TruncPoissonParams> {
    if !mean.is_finite() {
        return Err(Error::input(format!("mean must be finite, got {mean}")));
    }
    if mean <= 1.0 {
        return Err(Error::domain(format!(
            "no solution for mean {mean}: f(a) > 1 for all a > 0"
        )));
    }
    let mut lo = 1e-12_f64;
    let mut hi = f64::max(50.0, 2.0 * mean);
    if truncated_mean(lo) >= mean {
        // f(a) = 1 + a/2 + a^2/12 + O(a^4) near zero.
        return TruncPoissonParams::from_rate(2.0 * (mean - 1.0));
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if truncated_mean(mid) < mean {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut a = 0.5 * (lo + hi);
    for _ in 0..3 {
        let residual = truncated_mean(a) - mean;
        let step = residual / truncated_mean_derivative(a);
        let next = a - step;
        if next.is_finite() && next > 0.0 && (truncated_mean(next) - mean).abs() < residual.abs() {
            a = next;
        }
    }
    TruncPoissonParams::from_rate(a)
}

/// `P(X = k)` for `X ~ Poisson(rate)`.
pub fn poisson_pmf(rate: f64, k: u64) -> f64 {
    if rate == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if k <= DIRECT_PMF_LIMIT && rate <= INVERSE_CDF_RATE_LIMIT {
        let mut p = (-rate).exp();
        for j in 1..=k {
            p *= rate / j as f64;
        }
        p
    } else {
        (-rate + k as f64 * rate.ln() - ln_gamma(k as f64 + 1.0)).exp()
    }
}

/// `P(Z = k)` for `Z` zero-truncated Poisson.
pub fn trunc_pmf(params: &TruncPoissonParams, k: u64) -> f64 {
    if k == 0 {
        0.0
    } else {
        poisson_pmf(params.a, k) / params.survival()
    }
}

/// `P(Z <= k)` for `Z` zero-truncated Poisson.
pub fn trunc_cdf(params: &TruncPoissonParams, k: u64) -> f64 {
    (1..=k).map(|j| trunc_pmf(params, j)).sum::<f64>().min(1.0)
}

/// Size-biased and shifted law `(k + 1) P(Z = k + 1) / E Z`.
///
/// For the truncated Poisson this is exactly Poisson(`a`), which is what
/// this returns.
pub fn size_biased_pmf(params: &TruncPoissonParams, k: u64) -> f64 {
    poisson_pmf(params.a, k)
}

/// `P(Z <= lambda / 2) <= exp(-0.15 lambda)` for `Z` truncated Poisson
/// with rate `lambda`.
pub fn lower_tail_bound(lambda: f64) -> Result<f64> {
    if lambda.is_nan() || lambda <= 0.0 || lambda.is_infinite() {
        return Err(Error::domain(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    Ok((-0.15 * lambda).exp())
}

/// `P(Z >= L lambda) <= exp(lambda - L lambda ln 2) / (1 - e^-lambda)`,
/// valid for `L > 1 / ln 2`.
pub fn upper_tail_bound(lambda: f64, l: f64) -> Result<f64> {
    if lambda.is_nan() || lambda <= 0.0 || lambda.is_infinite() {
        return Err(Error::domain(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    if l.is_nan() || l <= 1.0 / std::f64::consts::LN_2 {
        return Err(Error::domain(format!(
            "upper tail bound needs L > 1/ln 2, got {l}"
        )));
    }
    Ok((lambda - l * lambda * std::f64::consts::LN_2).exp() / -(-lambda).exp_m1())
}

/// Both tail bounds as `(lower, upper)`.
pub fn tail_bounds(lambda: f64, l: f64) -> Result<(f64, f64)> {
    Ok((lower_tail_bound(lambda)?, upper_tail_bound(lambda, l)?))
}

/// Draws `Poisson(rate)`.
pub fn sample_poisson<R: Rng + ?Sized>(rate: f64, rng: &mut R) -> u64 {
    if rate <= 0.0 {
        return 0;
    }
    if rate <= INVERSE_CDF_RATE_LIMIT {
        let u: f64 = rng.random();
        let mut k = 0u64;
        let mut p = (-rate).exp();
        let mut cum = p;
        while u >= cum {
            k += 1;
            p *= rate / k as f64;
            if p == 0.0 {
                break;
            }
            cum += p;
        }
        k
    } else {
        Poisson::new(rate)
            .expect("positive finite rate")
            .sample(rng) as u64
    }
}

/// Draws one zero-truncated Poisson variate.
///
/// Builds a [`TruncPoissonSampler`]; prefer the sampler when drawing many.
pub fn sample_trunc<R: Rng + ?Sized>(params: &TruncPoissonParams, rng: &mut R) -> u64 {
    TruncPoissonSampler::new(*params).sample(rng)
}

/// Repeated sampling from one truncated Poisson law.
///
/// Rates up to 30 use inversion of a tabulated CDF with a guide table;
/// larger rates reject zeros from Poisson(`a`).
#[derive(Debug, Clone)]
pub struct TruncPoissonSampler {
    params: TruncPoissonParams,
    cdf: Vec<f64>,
    guide: Vec<u32>,
    pmf_max: f64,
    poisson: Option<Poisson<f64>>,
}

impl TruncPoissonSampler {
    pub fn new(params: TruncPoissonParams) -> Self {
        let a = params.a;
        let pmf_max = {
            let mode = (a.floor() as u64).max(1);
            trunc_pmf(&params, mode).max(trunc_pmf(&params, mode + 1))
        };
        if a > INVERSE_CDF_RATE_LIMIT {
            return Self {
                params,
                cdf: Vec::new(),
                guide: Vec::new(),
                pmf_max,
                poisson: Some(Poisson::new(a).expect("positive finite rate")),
            };
        }
        let mut cdf = Vec::new();
        let mut cum = 0.0;
        let mut k = 1u64;
        loop {
            cum += trunc_pmf(&params, k);
            cdf.push(cum);
            if (1.0 - cum < 1e-17 && k as f64 > a) || k > 400 {
                break;
            }
            k += 1;
        }
        let slots = cdf.len().max(16);
        let mut guide = Vec::with_capacity(slots);
        let mut idx = 0usize;
        for g in 0..slots {
            let threshold = g as f64 / slots as f64;
            while idx + 1 < cdf.len() && cdf[idx] <= threshold {
                idx += 1;
            }
            guide.push(idx as u32);
        }
        Self {
            params,
            cdf,
            guide,
            pmf_max,
            poisson: None,
        }
    }

    pub fn params(&self) -> &TruncPoissonParams {
        &self.params
    }

    /// Largest point mass of the truncated law.
    pub fn pmf_max(&self) -> f64 {
        self.pmf_max
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        if let Some(poisson) = &self.poisson {
            loop {
                let k = poisson.sample(rng) as u64;
                if k > 0 {
                    return k;
                }
            }
        }
        let u: f64 = rng.random();
        let mut idx =
            self.guide[((u * self.guide.len() as f64) as usize).min(self.guide.len() - 1)] as usize;
        while idx < self.cdf.len() && u >= self.cdf[idx] {
            idx += 1;
        }
        if idx < self.cdf.len() {
            return idx as u64 + 1;
        }
        // Beyond the table: continue the sequential summation.
        let mut k = self.cdf.len() as u64;
        let mut cum = self.cdf[self.cdf.len() - 1];
        loop {
            k += 1;
            let p = trunc_pmf(&self.params, k);
            cum += p;
            if u < cum || p == 0.0 {
                return k;
            }
        }
    }
}

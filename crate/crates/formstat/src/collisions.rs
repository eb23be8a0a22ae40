//! Same-level collision statistics under the Poisson model: expected counts
//! E[S_{a,b}(k)], Le Cam error bounds and extremeness probabilities.

use crate::arith::poisson::{ln_pmf, ln_rho};
use crate::arith::primes::catalog_primes;
use crate::dataset::{disc_counts, Catalog};
use crate::error::{Error, Result};
use crate::fitmodels::{poisson_mle, FitResult, FitStatus, PoissonData};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Rows are extended this far past the largest observed k.
pub const TRAILING_ROWS: usize = 2;

fn pmf(a: f64, b: f64, p: u64, k: u64) -> f64 {
    let lambda = a * (p as f64).powf(b);
    if lambda == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    ln_pmf(lambda, k).exp()
}

/// E[S_{a,b}(k)] = sum over `primes` of Prob(Pois(a p^b) = k), in ascending
/// order.
pub fn expected_s(primes: &[u64], a: f64, b: f64, k: u64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::arg("a must be positive"));
    }
    Ok(primes.iter().map(|&p| pmf(a, b, p, k)).sum())
}

/// R_{a,b}(k) = 2 min(1, 1/E) sum_p Prob(Pois(a p^b) = k)^2.
pub fn lecam_bound(primes: &[u64], a: f64, b: f64, k: u64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::arg("a must be positive"));
    }
    let (mut e, mut sq) = (0.0, 0.0);
    for &p in primes {
        let q = pmf(a, b, p, k);
        e += q;
        sq += q * q;
    }
    let m = if e > 1.0 { 1.0 / e } else { 1.0 };
    Ok(2.0 * m * sq)
}

/// An extremeness probability, kept in log10 so tiny values survive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rho {
    pub log10: f64,
}

impl Rho {
    /// The value itself, or None below 1e-300.
    pub fn value(&self) -> Option<f64> {
        (self.log10 >= -300.0).then(|| 10f64.powf(self.log10))
    }
}

impl std::fmt::Display for Rho {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v:.3e}"),
            None => write!(f, "10^{:.2}", self.log10),
        }
    }
}

/// rho(lambda, x): F(x) if x <= lambda, else 1 - F(x - 1).
pub fn rho(lambda: f64, x: u64) -> Result<Rho> {
    Ok(Rho { log10: ln_rho(lambda, x)? / std::f64::consts::LN_10 })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollisionRow {
    pub disc: u64,
    pub k: u64,
    pub observed: u64,
    pub expected: f64,
    pub rho: Rho,
    pub lecam: f64,
}

/// Rows k = 0 .. max observed + TRAILING_ROWS for counts aligned with
/// `primes`, under the supplied fit.
pub fn collision_rows(disc: u64, primes: &[u64], counts: &[u32], fit: &FitResult) -> Result<Vec<CollisionRow>> {
    if fit.status == FitStatus::NoForms {
        return Err(Error::Degenerate(format!("no forms of discriminant {disc}: empty model")));
    }
    let max = counts.iter().copied().max().unwrap_or(0) as usize;
    let mut q = vec![0u64; max + 1 + TRAILING_ROWS];
    for &c in counts {
        q[c as usize] += 1;
    }
    let mut rows = Vec::with_capacity(q.len());
    for (k, &observed) in q.iter().enumerate() {
        let k = k as u64;
        let expected = expected_s(primes, fit.a, fit.b, k)?;
        let rho = if expected > 0.0 { rho(expected, observed)? } else { Rho { log10: 0.0 } };
        let lecam = lecam_bound(primes, fit.a, fit.b, k)?;
        rows.push(CollisionRow { disc, k, observed, expected, rho, lecam });
    }
    Ok(rows)
}

/// The full pipeline for one discriminant: per-prime counts over the
/// statistics range, Poisson MLE, then one row per k.
pub fn collision_report(catalog: &Catalog, disc: u64) -> Result<(FitResult, Vec<CollisionRow>)> {
    let primes = catalog_primes().stats_range();
    let counts = disc_counts(catalog, disc);
    let data = PoissonData::new(primes, &counts)?;
    let fit = poisson_mle(&data);
    let rows = collision_rows(disc, primes, &counts, &fit)?;
    Ok((fit, rows))
}

/// Distribution of a sum of independent Bernoulli(q_i), by dynamic
/// programming.
pub fn bernoulli_sum_pmf(q: &[f64]) -> Vec<f64> {
    let mut d = vec![1.0];
    for &p in q {
        let mut next = vec![0.0; d.len() + 1];
        for (s, &w) in d.iter().enumerate() {
            next[s] += w * (1.0 - p);
            next[s + 1] += w * p;
        }
        d = next;
    }
    d
}

/// Total-variation distance between a distribution on 0..len and Pois(mean).
fn tv_to_poisson(dist: &[f64], mean: f64) -> f64 {
    let mut covered = 0.0;
    let mut diff = 0.0;
    for (s, &w) in dist.iter().enumerate() {
        let p = if mean > 0.0 { ln_pmf(mean, s as u64).exp() } else if s == 0 { 1.0 } else { 0.0 };
        covered += p;
        diff += (w - p).abs();
    }
    // Poisson mass beyond the support of dist
    0.5 * (diff + (1.0 - covered).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LeCamCheck {
    pub expected: f64,
    pub bound: f64,
    /// TV distance from the exact distribution of S_{a,b}(k).
    pub tv_exact: f64,
    /// TV distance from the empirical distribution of simulated S_{a,b}(k).
    pub tv_simulated: f64,
}

/// Simulate S_{a,b}(k) = #{p : Pois(a p^b) = k} `trials` times and compare
/// with Pois(E[S]) in total variation, alongside the exact distance.
pub fn lecam_monte_carlo(primes: &[u64], a: f64, b: f64, k: u64, trials: usize, seed: u64) -> Result<LeCamCheck> {
    if trials == 0 {
        return Err(Error::arg("need at least one trial"));
    }
    let q: Vec<f64> = primes.iter().map(|&p| pmf(a, b, p, k)).collect();
    let expected: f64 = q.iter().sum();
    let bound = lecam_bound(primes, a, b, k)?;
    let exact = bernoulli_sum_pmf(&q);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hist = vec![0u64; primes.len() + 1];
    for _ in 0..trials {
        let s = q.iter().filter(|&&p| rng.random::<f64>() < p).count();
        hist[s] += 1;
    }
    let emp: Vec<f64> = hist.iter().map(|&c| c as f64 / trials as f64).collect();
    Ok(LeCamCheck {
        expected,
        bound,
        tv_exact: tv_to_poisson(&exact, expected),
        tv_simulated: tv_to_poisson(&emp, expected),
    })
}

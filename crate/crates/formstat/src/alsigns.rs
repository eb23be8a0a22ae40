//! Atkin–Lehner sign statistics: the Z_beta model, where a form of level p
//! has sign +1 with probability d+^beta / (d+^beta + d-^beta) for
//! d+- = dim S_2^+-(p), its likelihood on catalog data, and moments of the
//! log-likelihood.

use crate::arith::dims::{dim_split, DimTable};
use crate::arith::{DimMode, DimSplit};
use crate::dataset::{Catalog, Filter, NewformRecord, Sign};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashSet;

/// Where eigenspace dimensions come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DimPolicy {
    Exact,
    Approximate,
    /// Exact at levels up to the bound, p/24 -+ sqrt(p)/2 above it.
    Hybrid { exact_up_to: u64 },
}

/// Dimension lookups backed by a batch class-number table when exact values
/// are needed.
#[derive(Debug)]
pub struct DimProvider {
    policy: DimPolicy,
    table: Option<DimTable>,
}

impl DimProvider {
    /// Build for levels up to `max_p`.
    pub fn new(policy: DimPolicy, max_p: u64) -> Self {
        let exact_max = match policy {
            DimPolicy::Exact => max_p,
            DimPolicy::Approximate => 0,
            DimPolicy::Hybrid { exact_up_to } => exact_up_to.min(max_p),
        };
        let table = (exact_max > 0).then(|| DimTable::new(exact_max));
        DimProvider { policy, table }
    }

    pub fn approximate() -> Self {
        DimProvider { policy: DimPolicy::Approximate, table: None }
    }

    pub fn policy(&self) -> DimPolicy {
        self.policy
    }

    pub fn get(&self, p: u64) -> Result<DimSplit> {
        let exact = match self.policy {
            DimPolicy::Exact => true,
            DimPolicy::Approximate => false,
            DimPolicy::Hybrid { exact_up_to } => p <= exact_up_to,
        };
        if !exact {
            return dim_split(p, DimMode::Approximate);
        }
        match &self.table {
            Some(t) if p <= t.max_p() => t.get(p, DimMode::Exact),
            _ => dim_split(p, DimMode::Exact),
        }
    }

    /// ln(d- / d+), the only quantity the sign model depends on.
    pub fn log_ratio(&self, p: u64) -> Result<f64> {
        let s = self.get(p)?;
        if !(s.dim_plus > 0.0 && s.dim_minus > 0.0) {
            return Err(Error::Domain(format!("level {p} has an empty eigenspace: {:?}", (s.dim_plus, s.dim_minus))));
        }
        Ok((s.dim_minus / s.dim_plus).ln())
    }
}

/// ln(1 + e^x) without overflow.
fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// ln Prob(Z_beta = sign) from r = ln(d-/d+).
fn ln_prob(beta: f64, r: f64, sign: Sign) -> f64 {
    if beta == 0.0 {
        return -std::f64::consts::LN_2;
    }
    match sign {
        Sign::Plus => -softplus(beta * r),
        Sign::Minus => -softplus(-beta * r),
    }
}

/// Prob(Z_beta(f) = +1) for a form of level p.
pub fn sign_prob(beta: f64, split: &DimSplit) -> Result<f64> {
    if !(split.dim_plus > 0.0 && split.dim_minus > 0.0) {
        return Err(Error::Domain(format!("level {} has an empty eigenspace", split.p)));
    }
    if beta == 0.0 {
        return Ok(0.5);
    }
    Ok(ln_prob(beta, (split.dim_minus / split.dim_plus).ln(), Sign::Plus).exp())
}

/// Setzer–Neumann level: p = u^2 + 64.
pub fn detect_sn(p: u64) -> bool {
    if p <= 64 {
        return false;
    }
    let u = (p - 64).isqrt();
    u * u == p - 64
}

/// Degree-d forms F(d) of level in (10^4, 2 10^6), as (level, sign) with
/// r = ln(d-/d+) precomputed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignData {
    pub levels: Vec<u64>,
    pub signs: Vec<Sign>,
    pub ratios: Vec<f64>,
}

impl SignData {
    pub fn new(levels: Vec<u64>, signs: Vec<Sign>, dims: &DimProvider) -> Result<Self> {
        if levels.len() != signs.len() {
            return Err(Error::arg("levels and signs must align"));
        }
        let ratios = levels.iter().map(|&p| dims.log_ratio(p)).collect::<Result<_>>()?;
        Ok(SignData { levels, signs, ratios })
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

/// Keys of the records treated as Setzer–Neumann forms: at each SN level, the
/// first degree-1 orbit with sign -1.
pub fn sn_keys(catalog: &Catalog) -> HashSet<(u64, u32)> {
    let mut out = HashSet::new();
    let mut last = 0;
    for r in catalog.query(&Filter::default().degree(1)) {
        if r.level != last && detect_sn(r.level) && r.al_sign == Sign::Minus {
            out.insert(r.key());
            last = r.level;
        }
    }
    out
}

pub fn sign_data(catalog: &Catalog, d: usize, exclude_sn: bool, dims: &DimProvider) -> Result<SignData> {
    let skip = if exclude_sn { sn_keys(catalog) } else { HashSet::new() };
    let f = Filter::default().degree(d).above(crate::RANGE_LO).below(crate::RANGE_HI);
    let recs: Vec<&NewformRecord> = catalog.query(&f).filter(|r| !skip.contains(&r.key())).collect();
    SignData::new(recs.iter().map(|r| r.level).collect(), recs.iter().map(|r| r.al_sign).collect(), dims)
}

/// ln(Prob(data | beta) 2^#F), the normalised log-likelihood.
pub fn log_likelihood(data: &SignData, beta: f64) -> f64 {
    data.ratios.iter().zip(&data.signs).map(|(&r, &s)| std::f64::consts::LN_2 + ln_prob(beta, r, s)).sum()
}

/// Prob(data_d | beta) 2^#F(d) for degree-d forms in the catalog.
pub fn data_likelihood(catalog: &Catalog, d: usize, beta: f64, exclude_sn: bool, dims: &DimProvider) -> Result<f64> {
    Ok(log_likelihood(&sign_data(catalog, d, exclude_sn, dims)?, beta).exp())
}

/// The plotting grid: [-5, 15] in steps of 0.05.
pub fn beta_grid() -> Vec<f64> {
    (0..=400).map(|i| -5.0 + 0.05 * i as f64).collect()
}

/// (beta, normalised log-likelihood) over the grid.
pub fn likelihood_curve(data: &SignData, grid: &[f64]) -> Vec<(f64, f64)> {
    grid.iter().map(|&b| (b, log_likelihood(data, b))).collect()
}

/// Maximum-likelihood beta by golden-section search on [lo, hi]; the
/// log-likelihood is concave in beta.
pub fn mle_beta(data: &SignData, lo: f64, hi: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (log_likelihood(data, c), log_likelihood(data, d));
    while b - a > 1e-10 {
        if fc > fd {
            b = d;
            (d, fd) = (c, fc);
            c = b - g * (b - a);
            fc = log_likelihood(data, c);
        } else {
            a = c;
            (c, fc) = (d, fd);
            d = a + g * (b - a);
            fd = log_likelihood(data, d);
        }
    }
    let x = 0.5 * (a + b);
    (x, log_likelihood(data, x))
}

/// Sum over forms of (dim- - dim+)^2 / N^2.
pub fn dim_sum(levels: &[u64], dims: &DimProvider) -> Result<f64> {
    let mut s = 0.0;
    for &p in levels {
        let d = dims.get(p)?.delta();
        s += d * d / (p as f64 * p as f64);
    }
    Ok(s)
}

/// Leading-order mean of log Prob(Z_alpha | beta) (unnormalised):
/// sum_f (144 alpha beta - 72 beta^2) delta_f^2 / N_f^2 - log 2.
pub fn expected_loglik(levels: &[u64], dims: &DimProvider, alpha: f64, beta: f64) -> Result<f64> {
    let s = dim_sum(levels, dims)?;
    Ok((144.0 * alpha * beta - 72.0 * beta * beta) * s - levels.len() as f64 * std::f64::consts::LN_2)
}

/// Leading-order variance: sum_f 144 beta^2 delta_f^2 / N_f^2.
pub fn var_loglik(levels: &[u64], dims: &DimProvider, beta: f64) -> Result<f64> {
    Ok(144.0 * beta * beta * dim_sum(levels, dims)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SnCensus {
    /// (level, orbit, sign) of every degree-1 record at an SN level.
    pub forms: Vec<(u64, u32, i64)>,
    pub levels: usize,
    pub all_minus: bool,
}

/// Degree-1 records at levels p = u^2 + 64 above `min_level`.
pub fn sn_census(catalog: &Catalog, min_level: u64) -> SnCensus {
    let forms: Vec<(u64, u32, i64)> = catalog
        .query(&Filter::default().degree(1).above(min_level))
        .filter(|r| detect_sn(r.level))
        .map(|r| (r.level, r.orbit, r.al_sign.as_i64()))
        .collect();
    let mut lv: Vec<u64> = forms.iter().map(|f| f.0).collect();
    lv.dedup();
    let all_minus = forms.iter().all(|f| f.2 == -1);
    SnCensus { levels: lv.len(), forms, all_minus }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub trials: usize,
    pub mean: f64,
    pub variance: f64,
    pub std_error: f64,
}

/// Monte Carlo moments of log Prob(Z_alpha | beta) with signs drawn from the
/// alpha-model at the levels in `data`.
pub fn empirical_loglik_distribution(data: &SignData, alpha: f64, beta: f64, trials: usize, seed: u64) -> Result<Moments> {
    if trials < 1000 {
        return Err(Error::arg("need at least 1000 trials"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p_plus: Vec<f64> = data.ratios.iter().map(|&r| ln_prob(alpha, r, Sign::Plus).exp()).collect();
    let lp: Vec<(f64, f64)> = data.ratios.iter().map(|&r| (ln_prob(beta, r, Sign::Plus), ln_prob(beta, r, Sign::Minus))).collect();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut first = None;
    let mut constant = true;
    for _ in 0..trials {
        let mut ll = 0.0;
        for (q, (lplus, lminus)) in p_plus.iter().zip(&lp) {
            ll += if rng.random::<f64>() < *q { lplus } else { lminus };
        }
        match first {
            None => first = Some(ll),
            Some(f) => constant &= f == ll,
        }
        sum += ll;
        sum_sq += ll * ll;
    }
    let n = trials as f64;
    let mean = if constant { first.unwrap_or(0.0) } else { sum / n };
    let variance = if constant { 0.0 } else { ((sum_sq - sum * sum / n) / (n - 1.0)).max(0.0) };
    Ok(Moments { trials, mean, variance, std_error: (variance / n).sqrt() })
}

/// Sum of (dim- - dim+)^2 / p^2 and the mean of (dim- - dim+)/sqrt(p) over
/// the given primes.
pub fn dim_difference_stats(primes: &[u64], dims: &DimProvider) -> Result<(f64, f64)> {
    let (mut s2, mut s1) = (0.0, 0.0);
    for &p in primes {
        let d = dims.get(p)?.delta();
        s2 += d * d / (p as f64 * p as f64);
        s1 += d / (p as f64).sqrt();
    }
    Ok((s2, s1 / primes.len().max(1) as f64))
}

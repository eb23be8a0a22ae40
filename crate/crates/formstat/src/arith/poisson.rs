//! Poisson probabilities in log space.

use crate::error::{Error, Result};
use std::sync::OnceLock;

const TABLE_LEN: usize = 1025;

fn ln_fact_table() -> &'static [f64] {
    static T: OnceLock<Vec<f64>> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = vec![0.0; TABLE_LEN];
        for k in 1..TABLE_LEN {
            t[k] = t[k - 1] + (k as f64).ln();
        }
        t
    })
}

/// ln(k!), tabulated up to 1024 and Stirling's series beyond.
pub fn ln_factorial(k: u64) -> f64 {
    if (k as usize) < TABLE_LEN {
        return ln_fact_table()[k as usize];
    }
    let n = k as f64;
    let inv = 1.0 / n;
    let inv2 = inv * inv;
    n * n.ln() - n + 0.5 * (2.0 * std::f64::consts::PI * n).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

#[inline]
pub fn ln_pmf(lambda: f64, k: u64) -> f64 {
    k as f64 * lambda.ln() - lambda - ln_factorial(k)
}

fn check(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::arg(format!("Poisson mean must be positive, got {lambda}")))
    }
}

pub fn poisson_pmf(lambda: f64, k: u64) -> Result<f64> {
    check(lambda)?;
    Ok(ln_pmf(lambda, k).exp())
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// ln P(X <= x), summing downward from x.
pub fn ln_cdf(lambda: f64, x: u64) -> f64 {
    if x as f64 >= lambda {
        let sf = ln_sf(lambda, x + 1);
        return (-sf.exp()).ln_1p();
    }
    let mut acc = f64::NEG_INFINITY;
    let mut k = x;
    loop {
        let t = ln_pmf(lambda, k);
        acc = log_add(acc, t);
        if t < acc - 40.0 || k == 0 {
            break;
        }
        k -= 1;
    }
    acc
}

/// ln P(X >= x), summing upward from x.
pub fn ln_sf(lambda: f64, x: u64) -> f64 {
    if x == 0 {
        return 0.0;
    }
    if (x as f64) <= lambda {
        let c = ln_cdf(lambda, x - 1);
        return (-c.exp()).ln_1p();
    }
    let mut acc = f64::NEG_INFINITY;
    let mut k = x;
    loop {
        let t = ln_pmf(lambda, k);
        acc = log_add(acc, t);
        if t < acc - 40.0 {
            break;
        }
        k += 1;
    }
    acc
}

pub fn poisson_cdf(lambda: f64, x: u64) -> Result<f64> {
    check(lambda)?;
    Ok(ln_cdf(lambda, x).exp())
}

/// Natural log of the two-sided extremeness probability: F(x) when x <= lambda,
/// otherwise 1 - F(x - 1).
pub fn ln_rho(lambda: f64, x: u64) -> Result<f64> {
    check(lambda)?;
    Ok(if x as f64 <= lambda { ln_cdf(lambda, x) } else { ln_sf(lambda, x) })
}

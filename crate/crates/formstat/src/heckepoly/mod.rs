//! Random Hecke polynomial model: h(n) = number of monic integer polynomials
//! of degree n with every root of absolute value at most R = 2 p^{k - 1/2}.

pub mod roottest;

use crate::arith::intpoly::IntPoly;
use crate::arith::primality::is_prime_u64;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub const MAX_EXACT_DEGREE: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HnSpec {
    pub n: usize,
    pub p: u64,
    pub k: u32,
}

/// Where the roots are required to lie.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum RootDomain {
    /// Closed complex disk |z| <= R.
    #[default]
    Disk,
    /// Real roots in [-R, R].
    TotallyReal,
}

impl HnSpec {
    pub fn new(n: usize, p: u64, k: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::arg("degree must be at least 1"));
        }
        if k == 0 {
            return Err(Error::arg("weight parameter k must be at least 1"));
        }
        if !is_prime_u64(p) {
            return Err(Error::arg(format!("{p} is not prime")));
        }
        Ok(HnSpec { n, p, k })
    }

    /// R^2 = 4 p^{2k-1}.
    pub fn r_squared(&self) -> BigInt {
        BigInt::from(4) * num_traits::pow(BigInt::from(self.p), 2 * self.k as usize - 1)
    }

    pub fn r(&self) -> f64 {
        self.r_squared().to_f64().unwrap_or(f64::INFINITY).sqrt()
    }
}

fn binom(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// floor(C(n, m) R^m) for R^2 = s.
fn coeff_bound(n: usize, m: usize, s: &BigInt) -> i64 {
    let c = BigUint::from(binom(n, m));
    let sq = num_traits::pow(s.magnitude().clone(), m);
    (&c * &c * sq).sqrt().to_i64().expect("bound fits in i64")
}

/// Coefficients (ascending) of the degree-m polynomial proportional to the
/// (n - m)-th derivative of x^n - e1 x^{n-1} + e2 x^{n-2} - ...
fn derivative_level(n: usize, e: &[i64]) -> IntPoly {
    let m = e.len();
    let mut c = vec![BigInt::from(0); m + 1];
    c[m] = BigInt::from(binom(n, m));
    for (i, &ei) in e.iter().enumerate() {
        let i = i + 1;
        let v = BigInt::from(ei) * BigInt::from(binom(n - i, m - i));
        c[m - i] = if i % 2 == 1 { -v } else { v };
    }
    IntPoly::new(c)
}

fn admissible(g: &IntPoly, s: &BigInt, domain: RootDomain) -> bool {
    match domain {
        RootDomain::Disk => roottest::in_disk(g, s),
        RootDomain::TotallyReal => roottest::in_real_interval(g, s),
    }
}

/// Enumerate H_n in lexicographic order of (e1, ..., en), where the
/// polynomial is x^n - e1 x^{n-1} + ... + (-1)^n en. Every level m is pruned by
/// the (n - m)-th derivative, whose roots lie in the hull of the roots.
pub fn enumerate_hn(spec: HnSpec, domain: RootDomain, mut visit: impl FnMut(&[i64])) -> Result<u64> {
    if spec.n > MAX_EXACT_DEGREE {
        return Err(Error::CostGuard(format!("exact enumeration limited to n <= {MAX_EXACT_DEGREE}")));
    }
    let s = spec.r_squared();
    let bounds: Vec<i64> = (1..=spec.n).map(|m| coeff_bound(spec.n, m, &s)).collect();
    let mut e = Vec::with_capacity(spec.n);
    let mut count = 0;
    descend(spec.n, &s, domain, &bounds, &mut e, &mut count, &mut visit);
    Ok(count)
}

fn descend(
    n: usize,
    s: &BigInt,
    domain: RootDomain,
    bounds: &[i64],
    e: &mut Vec<i64>,
    count: &mut u64,
    visit: &mut impl FnMut(&[i64]),
) {
    let m = e.len();
    if m == n {
        *count += 1;
        visit(e);
        return;
    }
    let b = bounds[m];
    for v in -b..=b {
        e.push(v);
        if admissible(&derivative_level(n, e), s, domain) {
            descend(n, s, domain, bounds, e, count, visit);
        }
        e.pop();
    }
}

/// h(n).
pub fn count_hn(spec: HnSpec, domain: RootDomain) -> Result<u64> {
    enumerate_hn(spec, domain, |_| {})
}

/// The polynomial x^n - e1 x^{n-1} + ... as an IntPoly.
pub fn poly_from_elementary(e: &[i64]) -> IntPoly {
    derivative_level(e.len(), e)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FactorEstimates {
    /// h(d) h(n - d) / h(n)
    pub direct: f64,
    /// (h(n - 1) / h(n))^d
    pub chained: f64,
}

/// Heuristic probability that a random member of H_n has a degree-d factor.
pub fn factor_probability_from(h: &[u64], n: usize, d: usize) -> Result<FactorEstimates> {
    if !(1 <= d && d < n && n < h.len()) {
        return Err(Error::arg(format!("need 1 <= d < n with h known up to n; got d={d}, n={n}")));
    }
    if h[n] == 0 {
        return Err(Error::Degenerate("h(n) = 0".into()));
    }
    let hn = h[n] as f64;
    Ok(FactorEstimates {
        direct: h[d] as f64 * h[n - d] as f64 / hn,
        chained: (h[n - 1] as f64 / hn).powi(d as i32),
    })
}

/// [h(0), h(1), ..., h(n)] with h(0) = 1.
pub fn h_values(n: usize, p: u64, k: u32, domain: RootDomain) -> Result<Vec<u64>> {
    let mut h = vec![1];
    for m in 1..=n {
        h.push(count_hn(HnSpec::new(m, p, k)?, domain)?);
    }
    Ok(h)
}

pub fn factor_probability(n: usize, d: usize, p: u64, k: u32, domain: RootDomain) -> Result<FactorEstimates> {
    if !(1 <= d && d < n && n <= MAX_EXACT_DEGREE) {
        return Err(Error::arg(format!("need 1 <= d < n <= {MAX_EXACT_DEGREE}")));
    }
    factor_probability_from(&h_values(n, p, k, domain)?, n, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentPrediction {
    pub exponent: f64,
    /// Negative exponent: finitely many forms predicted.
    pub finite: bool,
}

/// 1 - alpha d.
pub fn heuristic_exponent(alpha: f64, d: u32) -> Result<ExponentPrediction> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::arg(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let exponent = 1.0 - alpha * d as f64;
    Ok(ExponentPrediction { exponent, finite: exponent < 0.0 })
}

/// The alpha = 1/6 case, 1 - d/6.
pub fn conjectured_exponent(d: u32) -> ExponentPrediction {
    let exponent = 1.0 - d as f64 / 6.0;
    ExponentPrediction { exponent, finite: exponent < 0.0 }
}

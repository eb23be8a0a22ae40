//! Two-parameter model fits: li growth curves in two coordinate systems,
//! Poisson maximum likelihood over per-prime counts with likelihood regions,
//! and the Gaussian fit to sign-likelihood curves.

pub mod optim;

use crate::arith::li::li_unchecked;
use crate::arith::poisson::ln_factorial;
use crate::error::{Error, Result};
use optim::{grid_then_simplex, Minimum};
use serde::Serialize;

/// Which objective produced a fit; reports always carry it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Coordinates {
    /// RSS of log C(X) against log(a li(X^b)).
    LogLog,
    /// RSS of C(X) against a li(X^b).
    Direct,
    /// Poisson log-likelihood of per-prime counts with mean a p^b.
    PoissonLikelihood,
    /// Least squares of log L(beta) against -a beta^2 + b beta.
    LogGaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FitStatus {
    Converged,
    IterationLimit,
    /// Every count was zero: the likelihood increases without bound as
    /// b -> -inf, reported as a = 0, b = -inf, log-likelihood 0.
    NoForms,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitResult {
    pub a: f64,
    pub b: f64,
    /// RSS for least-squares fits, log-likelihood for Poisson fits.
    pub objective: f64,
    pub iterations: usize,
    pub status: FitStatus,
    pub coordinates: Coordinates,
}

impl FitResult {
    pub fn converged(&self) -> bool {
        self.status == FitStatus::Converged
    }

    fn from_min(m: Minimum, objective: f64, coordinates: Coordinates) -> Self {
        FitResult {
            a: m.x[0].exp(),
            b: m.x[1],
            objective,
            iterations: m.iterations,
            status: if m.converged { FitStatus::Converged } else { FitStatus::IterationLimit },
            coordinates,
        }
    }
}

/// Cumulative counts: point i is (level of the i-th record, i + 1).
pub fn cumulative_series(levels: impl IntoIterator<Item = u64>) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (i, l) in levels.into_iter().enumerate() {
        let c = (i + 1) as f64;
        match out.last_mut() {
            Some(last) if last.0 == l as f64 => last.1 = c,
            _ => out.push((l as f64, c)),
        }
    }
    out
}

fn check_series(series: &[(f64, f64)]) -> Result<()> {
    if series.is_empty() {
        return Err(Error::Degenerate("empty series".into()));
    }
    if series.iter().all(|p| p.1 == 0.0) {
        return Err(Error::Degenerate("all counts are zero".into()));
    }
    if series.iter().any(|p| !(p.0 > 1.0) || !p.1.is_finite()) {
        return Err(Error::arg("series points need X > 1 and finite counts"));
    }
    Ok(())
}

/// ln li(X^b) from ln X, or NaN outside the domain X^b > 1.
fn ln_li_pow(ln_x: f64, b: f64) -> f64 {
    let l = b * ln_x;
    if !(l > 0.0) {
        return f64::NAN;
    }
    let v = li_unchecked(l);
    if v > 0.0 {
        v.ln()
    } else {
        f64::NAN
    }
}

fn li_pow(ln_x: f64, b: f64) -> f64 {
    let l = b * ln_x;
    if !(l > 0.0) {
        return f64::NAN;
    }
    li_unchecked(l)
}

const LN_A_BOX: [f64; 2] = [-4.605_170_185_988_091, 4.605_170_185_988_091];
const LI_B_BOX: [f64; 2] = [0.05, 1.25];
const STARTS: usize = 4;

/// Least squares of y = log(a li(e^{x b})) over the points (log X, log C(X)).
pub fn fit_li_loglog(series: &[(f64, f64)]) -> Result<FitResult> {
    check_series(series)?;
    if series.iter().any(|p| p.1 < 1.0) {
        return Err(Error::arg("log-log fit needs C(X) >= 1 at every point"));
    }
    let pts: Vec<(f64, f64)> = series.iter().map(|&(x, c)| (x.ln(), c.ln())).collect();
    let rss = |p: [f64; 2]| pts.iter().map(|&(lx, y)| (y - p[0] - ln_li_pow(lx, p[1])).powi(2)).sum::<f64>();
    let m = grid_then_simplex(&rss, [LN_A_BOX[0], LI_B_BOX[0]], [LN_A_BOX[1], LI_B_BOX[1]], STARTS);
    Ok(FitResult::from_min(m, m.value, Coordinates::LogLog))
}

/// Least squares of C(X) against a li(X^b) in the original coordinates.
pub fn fit_li_direct(series: &[(f64, f64)]) -> Result<FitResult> {
    check_series(series)?;
    let pts: Vec<(f64, f64)> = series.iter().map(|&(x, c)| (x.ln(), c)).collect();
    let rss = |p: [f64; 2]| {
        let a = p[0].exp();
        pts.iter().map(|&(lx, c)| (c - a * li_pow(lx, p[1])).powi(2)).sum::<f64>()
    };
    let m = grid_then_simplex(&rss, [LN_A_BOX[0], LI_B_BOX[0]], [LN_A_BOX[1], LI_B_BOX[1]], STARTS);
    Ok(FitResult::from_min(m, m.value, Coordinates::Direct))
}

/// Per-prime counts k_p with sufficient statistics for the Poisson model
/// Z(p) ~ Pois(a p^b).
#[derive(Debug, Clone)]
pub struct PoissonData {
    ln_p: Vec<f64>,
    counts: Vec<u32>,
    total: f64,
    weighted: f64,
    const_term: f64,
}

impl PoissonData {
    pub fn new(primes: &[u64], counts: &[u32]) -> Result<Self> {
        if primes.len() != counts.len() || primes.is_empty() {
            return Err(Error::arg("primes and counts must be nonempty and aligned"));
        }
        let ln_p: Vec<f64> = primes.iter().map(|&p| (p as f64).ln()).collect();
        let total = counts.iter().map(|&k| k as f64).sum();
        let weighted = ln_p.iter().zip(counts).map(|(l, &k)| l * k as f64).sum();
        let const_term = counts.iter().map(|&k| ln_factorial(k as u64)).sum();
        Ok(PoissonData { ln_p, counts: counts.to_vec(), total, weighted, const_term })
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// (sum p^b, sum p^b ln p, sum p^b ln^2 p), in ascending-prime order.
    fn power_sums(&self, b: f64) -> (f64, f64, f64) {
        let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
        for &l in &self.ln_p {
            let w = (b * l).exp();
            s0 += w;
            s1 += w * l;
            s2 += w * l * l;
        }
        (s0, s1, s2)
    }

    /// Log-likelihood at (ln a, b).
    pub fn loglik_ln(&self, ln_a: f64, b: f64) -> f64 {
        let s0: f64 = self.ln_p.iter().map(|&l| (b * l).exp()).sum();
        self.total * ln_a + b * self.weighted - ln_a.exp() * s0 - self.const_term
    }

    pub fn loglik(&self, a: f64, b: f64) -> f64 {
        self.loglik_ln(a.ln(), b)
    }

    /// Hessian of the log-likelihood in (ln a, b).
    fn hessian(&self, ln_a: f64, b: f64) -> [[f64; 2]; 2] {
        let (s0, s1, s2) = self.power_sums(b);
        let a = ln_a.exp();
        [[-a * s0, -a * s1], [-a * s1, -a * s2]]
    }
}

const POISSON_B_BOX: [f64; 2] = [-2.0, 1.0];
const POISSON_LN_A_BOX: [f64; 2] = [-6.907_755_278_982_137, 6.907_755_278_982_137];

/// Maximum-likelihood (a, b) for Pois(a p^b) counts. All-zero data returns
/// the NoForms sentinel.
pub fn poisson_mle(data: &PoissonData) -> FitResult {
    if data.total == 0.0 {
        return FitResult {
            a: 0.0,
            b: f64::NEG_INFINITY,
            objective: 0.0,
            iterations: 0,
            status: FitStatus::NoForms,
            coordinates: Coordinates::PoissonLikelihood,
        };
    }
    let neg = |p: [f64; 2]| -data.loglik_ln(p[0], p[1]);
    let m = grid_then_simplex(
        &neg,
        [POISSON_LN_A_BOX[0], POISSON_B_BOX[0]],
        [POISSON_LN_A_BOX[1], POISSON_B_BOX[1]],
        STARTS,
    );
    FitResult::from_min(m, -m.value, Coordinates::PoissonLikelihood)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LikelihoodRegion {
    pub k: u32,
    pub mle: (f64, f64),
    /// Closed polyline of (a, b) points where the likelihood ratio is 10^-k.
    pub boundary: Vec<(f64, f64)>,
}

impl LikelihoodRegion {
    /// Point-in-polygon test in (ln a, b) coordinates.
    pub fn contains(&self, a: f64, b: f64) -> bool {
        let (x, y) = (a.ln(), b);
        let pts: Vec<(f64, f64)> = self.boundary.iter().map(|&(a, b)| (a.ln(), b)).collect();
        let mut inside = false;
        let n = pts.len();
        for i in 0..n {
            let (xi, yi) = pts[i];
            let (xj, yj) = pts[(i + n - 1) % n];
            if (yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi {
                inside = !inside;
            }
        }
        inside
    }
}

pub const REGION_RAYS: usize = 128;

/// Boundary of {(a, b) : L(a, b) / L(mle) > 10^-k}. The log-likelihood is
/// concave in (ln a, b), so the region is star-shaped about the MLE and each
/// ray from it crosses the boundary once; rays are spread evenly after
/// whitening by the Hessian.
pub fn likelihood_region(data: &PoissonData, mle: &FitResult, k: u32) -> Result<LikelihoodRegion> {
    if mle.status == FitStatus::NoForms {
        return Err(Error::Degenerate("no forms: likelihood has no maximum".into()));
    }
    if !(1..=3).contains(&k) {
        return Err(Error::arg("region index k must be 1, 2 or 3"));
    }
    let (la, b) = (mle.a.ln(), mle.b);
    let top = data.loglik_ln(la, b);
    let drop = k as f64 * std::f64::consts::LN_10;
    let h = data.hessian(la, b);
    // covariance = (-H)^-1, Cholesky factor maps the unit circle onto the
    // quadratic approximation of the level set
    let (p, q, r) = (-h[0][0], -h[0][1], -h[1][1]);
    let det = p * r - q * q;
    if !(p > 0.0 && det > 0.0) || !det.is_finite() {
        return Err(Error::Degenerate("likelihood is flat at the maximum".into()));
    }
    let (c00, c01, c11) = (r / det, -q / det, p / det);
    let l00 = c00.sqrt();
    let l10 = c01 / l00;
    let l11 = (c11 - l10 * l10).max(0.0).sqrt();
    let target = top - drop;
    let f = |t: f64, d: (f64, f64)| data.loglik_ln(la + t * d.0, b + t * d.1) - target;
    let mut boundary = Vec::with_capacity(REGION_RAYS);
    for j in 0..REGION_RAYS {
        let th = 2.0 * std::f64::consts::PI * j as f64 / REGION_RAYS as f64;
        let (u, v) = (th.cos(), th.sin());
        let d = (l00 * u, l10 * u + l11 * v);
        let mut hi = (2.0 * drop).sqrt();
        let mut lo = 0.0;
        let mut f_lo = drop;
        let mut f_hi = f(hi, d);
        let mut expand = 0;
        while f_hi > 0.0 {
            (lo, f_lo) = (hi, f_hi);
            hi *= 2.0;
            f_hi = f(hi, d);
            expand += 1;
            if expand > 60 {
                return Err(Error::Degenerate("likelihood region is unbounded".into()));
            }
        }
        // Illinois variant of regula falsi on the bracket [lo, hi]
        let mut side = 0;
        for _ in 0..100 {
            if hi - lo < 1e-12 * hi.max(1.0) {
                break;
            }
            let mid = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
            let fm = f(mid, d);
            if fm == 0.0 {
                (lo, hi) = (mid, mid);
                break;
            }
            if fm > 0.0 {
                (lo, f_lo) = (mid, fm);
                if side == 1 {
                    f_hi *= 0.5;
                }
                side = 1;
            } else {
                (hi, f_hi) = (mid, fm);
                if side == -1 {
                    f_lo *= 0.5;
                }
                side = -1;
            }
            if (f_lo - f_hi).abs() < 1e-13 * drop {
                break;
            }
        }
        let t = 0.5 * (lo + hi);
        boundary.push(((la + t * d.0).exp(), b + t * d.1));
    }
    Ok(LikelihoodRegion { k, mle: (mle.a, mle.b), boundary })
}

/// Whether L(a, b) / L(mle) > 10^-k, evaluated directly.
pub fn in_region(data: &PoissonData, mle: &FitResult, k: u32, a: f64, b: f64) -> bool {
    data.loglik(a, b) - mle.objective > -(k as f64) * std::f64::consts::LN_10
}

/// Least squares of log L against -a beta^2 + b beta, from the normal
/// equations. Takes (beta, log L) pairs.
pub fn fit_gaussian_logcurve(curve: &[(f64, f64)]) -> Result<FitResult> {
    if curve.len() < 3 {
        return Err(Error::Degenerate(format!("{} points cannot determine a Gaussian fit", curve.len())));
    }
    // columns u = -beta^2, v = beta
    let (mut suu, mut suv, mut svv, mut suy, mut svy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for &(beta, y) in curve {
        if !y.is_finite() {
            return Err(Error::arg("log-likelihood values must be finite"));
        }
        let u = -beta * beta;
        suu += u * u;
        suv += u * beta;
        svv += beta * beta;
        suy += u * y;
        svy += beta * y;
    }
    let det = suu * svv - suv * suv;
    if det.abs() <= 1e-12 * suu * svv {
        return Err(Error::Degenerate("beta values do not determine a parabola".into()));
    }
    let a = (suy * svv - svy * suv) / det;
    let b = (suu * svy - suv * suy) / det;
    let rss = curve.iter().map(|&(x, y)| (y - (-a * x * x + b * x)).powi(2)).sum();
    Ok(FitResult { a, b, objective: rss, iterations: 0, status: FitStatus::Converged, coordinates: Coordinates::LogGaussian })
}

/// As [`fit_gaussian_logcurve`], for positive likelihood values.
pub fn fit_gaussian_loglik(curve: &[(f64, f64)]) -> Result<FitResult> {
    if curve.iter().any(|p| !(p.1 > 0.0)) {
        return Err(Error::arg("likelihood values must be positive"));
    }
    let logs: Vec<(f64, f64)> = curve.iter().map(|&(x, y)| (x, y.ln())).collect();
    fit_gaussian_logcurve(&logs)
}

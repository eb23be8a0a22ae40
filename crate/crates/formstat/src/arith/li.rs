//! Logarithmic integral.
//!
//! li(x) = gamma + ln ln x + int_0^{ln x} (e^u - 1)/u du. The remaining
//! integrand is entire, so the principal value at t = 1 is absorbed by the
//! closed-form terms and the integral is done with 16-point Gauss–Legendre on
//! equal panels of width at most 8 in u.

use crate::error::{Error, Result};
use std::sync::OnceLock;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
pub const GL_NODES: usize = 16;
const PANEL_WIDTH: f64 = 8.0;

fn gauss_legendre() -> &'static [(f64, f64); GL_NODES] {
    static RULE: OnceLock<[(f64, f64); GL_NODES]> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_NODES;
        let mut out = [(0.0, 0.0); GL_NODES];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            *slot = (x, 2.0 / ((1.0 - x * x) * dp * dp));
        }
        out
    })
}

fn ein_integral(l: f64) -> f64 {
    let panels = (l / PANEL_WIDTH).ceil().max(1.0) as usize;
    let h = l / panels as f64;
    let rule = gauss_legendre();
    let mut total = 0.0;
    for k in 0..panels {
        let mid = (k as f64 + 0.5) * h;
        let mut s = 0.0;
        for &(x, w) in rule.iter() {
            let u = mid + 0.5 * h * x;
            s += w * u.exp_m1() / u;
        }
        total += 0.5 * h * s;
    }
    total
}

/// Principal-value li(x) for x > 1.
pub fn log_integral(x: f64) -> Result<f64> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::Domain(format!("li undefined at {x}")));
    }
    Ok(li_unchecked(x.ln()))
}

/// li(e^l) for l > 0, skipping validation; used in fitting loops.
pub(crate) fn li_unchecked(l: f64) -> f64 {
    EULER_GAMMA + l.ln() + ein_integral(l)
}

/// li(e^l) for l > 0.
pub fn li_of_exp(l: f64) -> Result<f64> {
    if !(l > 0.0) || !l.is_finite() {
        return Err(Error::Domain(format!("li undefined at exp({l})")));
    }
    Ok(li_unchecked(l))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials() {
        let rule = gauss_legendre();
        let w: f64 = rule.iter().map(|r| r.1).sum();
        assert!((w - 2.0).abs() < 1e-14);
        let m30: f64 = rule.iter().map(|&(x, w)| w * x.powi(30)).sum();
        assert!((m30 - 2.0 / 31.0).abs() < 1e-14);
    }

    #[test]
    fn reference_values() {
        assert!((log_integral(2.0).unwrap() - 1.045_163_780_117_492_8).abs() < 1e-13);
        assert!((log_integral(std::f64::consts::E).unwrap() - 1.895_117_816_355_936_8).abs() < 1e-13);
        // li(10^6) = 78627.5491594622...
        assert!((log_integral(1e6).unwrap() / 78_627.549_159_462_18 - 1.0).abs() < 1e-13);
        assert!(log_integral(1.0).is_err());
        assert!(log_integral(0.5).is_err());
        assert!(log_integral(f64::NAN).is_err());
    }

    #[test]
    fn soldner_root() {
        // li vanishes at the Ramanujan–Soldner constant
        assert!(log_integral(1.451_369_234_883_381).unwrap().abs() < 1e-14);
    }
}

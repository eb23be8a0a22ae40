//! Algebraic integers of a totally real field inside the Weil box
//! |sigma(a)| <= 2 sqrt(p) for every real embedding sigma.

use crate::arith::intpoly::IntPoly;
use crate::arith::roots::aberth;
use crate::error::{Error, Result};
use crate::heckepoly::roottest::in_real_interval;
use crate::numfield::{det_bareiss, Elem, NumberField};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

pub const MAX_WEIL_DEGREE: usize = 6;

/// A Z-basis of the ring of integers. Row i is den * omega_i in power-basis
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralBasis {
    pub denominator: BigInt,
    pub rows: Vec<Vec<BigInt>>,
}

impl IntegralBasis {
    /// 1, theta, ..., theta^(n-1); correct exactly when Z[theta] is maximal.
    pub fn power(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        IntegralBasis { denominator: BigInt::one(), rows }
    }

    fn validate(&self, field: &NumberField) -> Result<()> {
        let n = field.degree();
        if self.rows.len() != n || self.rows.iter().any(|r| r.len() != n) {
            return Err(Error::Config(format!("integral basis must be {n}x{n}")));
        }
        if !self.denominator.is_positive() {
            return Err(Error::Config("integral basis denominator must be positive".into()));
        }
        if det_bareiss(self.rows.clone()).is_zero() {
            return Err(Error::Config("integral basis is singular".into()));
        }
        // each omega must be integral: den*omega has charpoly coefficients
        // c_{n-i} divisible by den^i
        for (r, row) in self.rows.iter().enumerate() {
            let cp = field.charpoly(row);
            for i in 1..=n {
                if !(cp.coeff(n - i) % num_traits::pow(self.denominator.clone(), i)).is_zero() {
                    return Err(Error::Config(format!("integral basis element {r} is not an algebraic integer")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeilCount {
    pub p: u64,
    pub total: u64,
    /// Count by the degree of the field each element generates.
    pub by_degree: BTreeMap<usize, u64>,
    /// Galois orbits, i.e. distinct minimal polynomials.
    pub orbits: u64,
    pub orbits_by_degree: BTreeMap<usize, u64>,
    /// The elements themselves, as den * a in power-basis coordinates.
    #[serde(skip)]
    pub elements: Vec<Elem>,
}

/// Real roots of a totally real field polynomial, ascending.
fn real_embeddings(poly: &IntPoly) -> Result<Vec<f64>> {
    let c: Vec<f64> = poly.coeffs().iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    if c.iter().any(|x| !x.is_finite()) {
        return Err(Error::arg("field polynomial coefficients out of range"));
    }
    let z = aberth(&c);
    let scale = z.iter().map(|r| r.norm()).fold(1.0, f64::max);
    if z.iter().any(|r| r.im.abs() > 1e-7 * scale) {
        return Err(Error::Domain(format!("field {poly} is not totally real")));
    }
    let mut re: Vec<f64> = z.iter().map(|r| r.re).collect();
    re.sort_by(f64::total_cmp);
    Ok(re)
}

/// Fincke–Pohst enumeration of all integer x with x^T G x <= bound.
fn enumerate_ellipsoid(g: &[Vec<f64>], bound: f64, mut visit: impl FnMut(&[i64])) -> Result<()> {
    let n = g.len();
    // q[i][i] = r_ii^2, q[i][j] = r_ij / r_ii for j > i, with G = R^T R
    let mut q = g.to_vec();
    for i in 0..n {
        if !(q[i][i] > 0.0) {
            return Err(Error::Domain("embedding Gram matrix is not positive definite".into()));
        }
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let mut x = vec![0i64; n];
    fn rec(i: usize, rem: f64, q: &[Vec<f64>], x: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64])) {
        let n = x.len();
        let c: f64 = -(i + 1..n).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
        let w = (rem.max(0.0) / q[i][i]).sqrt();
        // widen a little so rounding can only add candidates
        let slack = 1e-9 * (1.0 + w + c.abs());
        let lo = (c - w - slack).ceil() as i64;
        let hi = (c + w + slack).floor() as i64;
        for v in lo..=hi {
            x[i] = v;
            let t = v as f64 - c;
            let r = rem - q[i][i] * t * t;
            if i == 0 {
                visit(x);
            } else {
                rec(i - 1, r.max(0.0), q, x, visit);
            }
        }
        x[i] = 0;
    }
    if n > 0 {
        rec(n - 1, bound, &q, &mut x, &mut visit);
    }
    Ok(())
}

/// Count the algebraic integers of the totally real field defined by `poly`
/// with every conjugate in [-2 sqrt(p), 2 sqrt(p)], both individually and up
/// to Galois conjugacy.
pub fn weil_box_count(poly: &IntPoly, basis: Option<&IntegralBasis>, p: u64) -> Result<WeilCount> {
    if p < 2 {
        return Err(Error::arg("p must be at least 2"));
    }
    let field = NumberField::new(poly.clone())?;
    let n = field.degree();
    if n > MAX_WEIL_DEGREE {
        return Err(Error::arg(format!("field degree {n} exceeds {MAX_WEIL_DEGREE}")));
    }
    let basis = basis.ok_or_else(|| Error::Config(format!("no integral basis supplied for {poly}")))?;
    basis.validate(&field)?;
    let den_f = basis.denominator.to_f64().unwrap_or(f64::NAN);
    let theta = real_embeddings(poly)?;
    // m[j][i] = sigma_j(omega_i)
    let m: Vec<Vec<f64>> = theta
        .iter()
        .map(|&t| {
            basis
                .rows
                .iter()
                .map(|row| {
                    let v: f64 = row.iter().rev().fold(0.0, |acc, c| acc * t + c.to_f64().unwrap_or(f64::NAN));
                    v / den_f
                })
                .collect()
        })
        .collect();
    if m.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::arg("integral basis entries out of floating range"));
    }
    let gram: Vec<Vec<f64>> =
        (0..n).map(|i| (0..n).map(|k| (0..n).map(|j| m[j][i] * m[j][k]).sum()).collect()).collect();
    let b = 2.0 * (p as f64).sqrt();
    let bound = n as f64 * b * b * (1.0 + 1e-9) + 1e-9;
    let s = BigInt::from(4 * p) * &basis.denominator * &basis.denominator;
    let mut out = WeilCount {
        p,
        total: 0,
        by_degree: BTreeMap::new(),
        orbits: 0,
        orbits_by_degree: BTreeMap::new(),
        elements: Vec::new(),
    };
    let mut minpolys = BTreeSet::new();
    let mut err = None;
    enumerate_ellipsoid(&gram, bound, |x| {
        if err.is_some() {
            return;
        }
        let outside = (0..n).any(|j| {
            let v: f64 = (0..n).map(|i| m[j][i] * x[i] as f64).sum();
            v.abs() > b * (1.0 + 1e-9) + 1e-9
        });
        if outside {
            return;
        }
        let mut e = vec![BigInt::zero(); n];
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0 {
                let xi = BigInt::from(xi);
                for (ek, rk) in e.iter_mut().zip(&basis.rows[i]) {
                    *ek += &xi * rk;
                }
            }
        }
        if !in_real_interval(&field.charpoly(&e), &s) {
            return;
        }
        let mp = field.minpoly(&e);
        let d = mp.degree().unwrap_or(0);
        if d == 0 {
            err = Some(Error::Domain("degenerate minimal polynomial".into()));
            return;
        }
        out.total += 1;
        *out.by_degree.entry(d).or_insert(0) += 1;
        if minpolys.insert(mp.coeffs().to_vec()) {
            out.orbits += 1;
            *out.orbits_by_degree.entry(d).or_insert(0) += 1;
        }
        out.elements.push(e);
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    out.elements.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        let c = weil_box_count(&IntPoly::from_i64(&[0, 1]), Some(&IntegralBasis::power(1)), 2).unwrap();
        assert_eq!(c.total, 5);
    }

    #[test]
    fn sqrt5_power_basis_is_not_maximal() {
        // Z[sqrt 5] misses (1 + sqrt 5)/2, so the half-integral basis finds more
        let f = IntPoly::from_i64(&[-5, 0, 1]);
        let small = weil_box_count(&f, Some(&IntegralBasis::power(2)), 3).unwrap();
        let basis = IntegralBasis {
            denominator: BigInt::from(2),
            rows: vec![vec![BigInt::from(2), BigInt::zero()], vec![BigInt::one(), BigInt::one()]],
        };
        let full = weil_box_count(&f, Some(&basis), 3).unwrap();
        assert!(full.total > small.total);
    }

    #[test]
    fn missing_basis() {
        assert!(matches!(weil_box_count(&IntPoly::from_i64(&[0, 1]), None, 2), Err(Error::Config(_))));
    }
}

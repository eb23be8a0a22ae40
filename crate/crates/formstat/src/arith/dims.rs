//! Dimensions of the Atkin–Lehner eigenspaces of S_2(Gamma_0(p)).
//!
//! For a prime p > 3 the genus of X_0(p) is (p + 1 - 3 nu_2 - 4 nu_3) / 12 and
//! the Fricke involution has nu fixed points, nu being the number of reduced
//! forms (primitive or not) of discriminant -4p. The plus space is the space
//! of differentials on X_0(p)/w_p, of dimension (g + 1)/2 - nu/4.

use super::classno::ClassNumberTable;
use super::primality::is_prime_u64;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum DimMode {
    #[default]
    Exact,
    Approximate,
}

/// (dim S_2^+(p), dim S_2^-(p)). Exact values are stored as integral floats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimSplit {
    pub p: u64,
    pub dim_plus: f64,
    pub dim_minus: f64,
    pub mode: DimMode,
}

impl DimSplit {
    pub fn delta(&self) -> f64 {
        self.dim_minus - self.dim_plus
    }

    pub fn exact_pair(&self) -> Option<(u64, u64)> {
        (self.mode == DimMode::Exact).then(|| (self.dim_plus as u64, self.dim_minus as u64))
    }
}

fn legendre_minus1(p: u64) -> i64 {
    if p % 4 == 1 {
        1
    } else {
        -1
    }
}

fn legendre_minus3(p: u64) -> i64 {
    if p % 3 == 1 {
        1
    } else {
        -1
    }
}

/// Genus of X_0(p) for p > 3 prime.
pub fn genus_x0(p: u64) -> u64 {
    let nu2 = 1 + legendre_minus1(p);
    let nu3 = 1 + legendre_minus3(p);
    let num = p as i64 + 1 - 3 * nu2 - 4 * nu3;
    debug_assert_eq!(num % 12, 0);
    (num / 12) as u64
}

/// Genus of X_0(p) by the general formula including cusps, valid for p = 2, 3 too.
pub fn genus_x0_general(p: u64) -> i64 {
    let (nu2, nu3) = match p {
        2 => (1, 0),
        3 => (0, 1),
        _ => (1 + legendre_minus1(p), 1 + legendre_minus3(p)),
    };
    // 1 + (p+1)/12 - nu2/4 - nu3/3 - 2/2, scaled by 12
    let num = 12 + (p as i64 + 1) - 3 * nu2 - 4 * nu3 - 12;
    num / 12
}

fn forms_minus_4p(p: u64) -> u64 {
    // ax^2 + 2bxy + cy^2 with ac - b^2 = p, reduced
    let n = p as i64;
    let mut count = 0;
    let mut a = 1i64;
    while 3 * a * a <= 4 * n {
        let mut b = -(a / 2);
        while 2 * b <= a {
            if 2 * b > -a {
                let num = n + b * b;
                if num % a == 0 {
                    let c = num / a;
                    if c >= a && !(c == a && b < 0) {
                        count += 1;
                    }
                }
            }
            b += 1;
        }
        a += 1;
    }
    count
}

fn exact_from_nu(p: u64, nu: u64) -> DimSplit {
    let g = genus_x0(p);
    let four_plus = 2 * g + 2 - nu;
    debug_assert_eq!(four_plus % 4, 0, "p={p} g={g} nu={nu}");
    let plus = four_plus / 4;
    DimSplit { p, dim_plus: plus as f64, dim_minus: (g - plus) as f64, mode: DimMode::Exact }
}

fn approximate(p: u64) -> DimSplit {
    let base = p as f64 / 24.0;
    let half = (p as f64).sqrt() / 2.0;
    DimSplit { p, dim_plus: base - half, dim_minus: base + half, mode: DimMode::Approximate }
}

pub fn dim_split(p: u64, mode: DimMode) -> Result<DimSplit> {
    if !is_prime_u64(p) {
        return Err(Error::arg(format!("{p} is not prime")));
    }
    match mode {
        DimMode::Approximate => Ok(approximate(p)),
        DimMode::Exact => {
            if p <= 3 {
                return Err(Error::arg(format!("exact split needs p > 3, got {p}")));
            }
            Ok(exact_from_nu(p, forms_minus_4p(p)))
        }
    }
}

/// Exact splits for every prime up to a bound, backed by one batch class
/// number table over discriminants -4n.
#[derive(Debug, Clone)]
pub struct DimTable {
    max_p: u64,
    forms: ClassNumberTable,
}

impl DimTable {
    pub fn new(max_p: u64) -> Self {
        DimTable { max_p, forms: ClassNumberTable::build_even(4 * max_p) }
    }

    pub fn max_p(&self) -> u64 {
        self.max_p
    }

    pub fn get(&self, p: u64, mode: DimMode) -> Result<DimSplit> {
        match mode {
            DimMode::Approximate => dim_split(p, mode),
            DimMode::Exact => {
                if p > self.max_p {
                    return Err(Error::arg(format!("{p} beyond table bound {}", self.max_p)));
                }
                if p <= 3 || !is_prime_u64(p) {
                    return Err(Error::arg(format!("exact split needs a prime p > 3, got {p}")));
                }
                let nu = self.forms.forms(-4 * p as i64)?;
                Ok(exact_from_nu(p, nu))
            }
        }
    }
}

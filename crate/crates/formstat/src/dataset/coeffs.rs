//! Fourier coefficient tables a_f(n), stored as power-basis coordinates.

use crate::arith::factor::factor_u64;
use crate::error::{Error, Result};
use crate::numfield::{Elem, NumberField};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::BufRead;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientTable {
    pub level: u64,
    pub orbit: u32,
    pub degree: usize,
    rows: BTreeMap<u64, Elem>,
}

impl CoefficientTable {
    pub fn new(level: u64, orbit: u32, degree: usize) -> Self {
        CoefficientTable { level, orbit, degree, rows: BTreeMap::new() }
    }

    pub fn insert(&mut self, n: u64, v: Elem) -> Result<()> {
        if v.len() != self.degree {
            return Err(Error::Validation(format!("a({n}) has {} coordinates, expected {}", v.len(), self.degree)));
        }
        self.rows.insert(n, v);
        Ok(())
    }

    pub fn get(&self, n: u64) -> Option<&Elem> {
        self.rows.get(&n)
    }

    pub fn rows(&self) -> impl Iterator<Item = (u64, &Elem)> {
        self.rows.iter().map(|(n, v)| (*n, v))
    }

    pub fn max_n(&self) -> u64 {
        self.rows.keys().next_back().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Parse lines `n v0 ... v(d-1)`, strictly increasing in n.
    pub fn parse(level: u64, orbit: u32, degree: usize, r: impl BufRead) -> Result<Self> {
        let mut t = CoefficientTable::new(level, orbit, degree);
        let mut last = 0u64;
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: i + 1, msg };
            let mut it = line.split_ascii_whitespace();
            let n: u64 = it.next().unwrap_or("").parse().map_err(|e| perr(format!("index: {e}")))?;
            if n <= last {
                return Err(perr(format!("index {n} not increasing")));
            }
            last = n;
            let v: Elem = it
                .map(|s| s.parse::<BigInt>().map_err(|e| perr(format!("coordinate {s:?}: {e}"))))
                .collect::<Result<_>>()?;
            if v.len() != degree {
                return Err(perr(format!("expected {degree} coordinates, found {}", v.len())));
            }
            t.rows.insert(n, v);
        }
        Ok(t)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (n, v) in &self.rows {
            write!(s, "{n}").unwrap();
            for x in v {
                write!(s, " {x}").unwrap();
            }
            s.push('\n');
        }
        s
    }

    /// Check a(1) = 1, multiplicativity on coprime factorizations, the Hecke
    /// recursion at good primes, and a(N)^r = a(N^r) with a(N) = -w_N.
    pub fn validate(&self, field: &NumberField, al_sign: i64) -> Result<()> {
        let fail = |msg: String| Err(Error::Validation(format!("coefficients of {}.{}: {msg}", self.level, self.orbit)));
        if let Some(a1) = self.get(1) {
            if *a1 != field.one() {
                return fail("a(1) is not 1".into());
            }
        }
        if let Some(an) = self.get(self.level) {
            if *an != field.from_int(-al_sign) {
                return fail(format!("a({}) disagrees with the Atkin–Lehner sign", self.level));
            }
        }
        for (&n, v) in &self.rows {
            if n == 1 {
                continue;
            }
            let fac = factor_u64(n);
            if fac.len() > 1 {
                let parts: Option<Vec<&Elem>> = fac.iter().map(|(p, e)| self.get(p.pow(*e))).collect();
                if let Some(parts) = parts {
                    let prod = parts.iter().fold(field.one(), |acc, x| field.mul(&acc, x));
                    if prod != *v {
                        return fail(format!("a({n}) is not the product over its prime powers"));
                    }
                }
                continue;
            }
            let (p, e) = fac[0];
            if e < 2 {
                continue;
            }
            let (Some(ap), Some(prev)) = (self.get(p), self.get(p.pow(e - 1))) else { continue };
            let expect = if p == self.level {
                field.mul(ap, prev)
            } else {
                let Some(prev2) = self.get(p.pow(e - 2)).cloned().or_else(|| (e == 2).then(|| field.one())) else {
                    continue;
                };
                field.sub(&field.mul(ap, prev), &field.scale(&prev2, &BigInt::from(p)))
            };
            if expect != *v {
                return fail(format!("Hecke recursion fails at {p}^{e}"));
            }
        }
        Ok(())
    }
}

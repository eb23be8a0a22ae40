//! Sparse multivariate polynomials over Z in at most four variables.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub const MAX_VARS: usize = 4;

type Exps = [u32; MAX_VARS];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigPoly {
    nvars: usize,
    terms: BTreeMap<Exps, BigInt>,
}

impl BigPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        BigPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term([0; MAX_VARS], c.into());
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, BigInt::one());
        p
    }

    /// Linear form sum c_i x_i.
    pub fn linear(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        coeffs.iter().enumerate().fold(Self::zero(n), |acc, (i, &c)| acc.add(&Self::var(n, i).scale(c)))
    }

    /// Build from (coefficient, exponents) monomials.
    pub fn from_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            let mut x = [0; MAX_VARS];
            x[..e.len()].copy_from_slice(e);
            p.add_term(x, BigInt::from(*c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(move |(e, c)| (&e[..self.nvars], c))
    }

    fn add_term(&mut self, e: Exps, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.nvars = self.nvars.max(o.nvars);
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        BigPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        let mut r = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            r.add_term(*e, c * &k);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.nvars.max(o.nvars));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let mut e = [0; MAX_VARS];
                for i in 0..MAX_VARS {
                    e[i] = e1[i] + e2[i];
                }
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::constant(self.nvars, 1);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    /// Exact evaluation.
    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        assert!(x.len() >= self.nvars, "too few coordinates");
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..self.nvars {
                if e[i] > 0 {
                    t *= num_traits::pow(x[i].clone(), e[i] as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_i64(&self, x: &[i64]) -> BigInt {
        let v: Vec<BigInt> = x.iter().map(|&a| BigInt::from(a)).collect();
        self.eval(&v)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Some(d) when every monomial has total degree d.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    /// Degree in variable i.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Parse `coef e_1 ... e_n` lines; blank lines and `#` comments skipped.
    pub fn parse_monomials(nvars: usize, text: &str) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != nvars + 1 {
                return Err(Error::Parse { line: ln + 1, msg: format!("expected {} fields", nvars + 1) });
            }
            let c: BigInt = parts[0]
                .parse()
                .map_err(|_| Error::Parse { line: ln + 1, msg: format!("bad coefficient {}", parts[0]) })?;
            let mut e = [0; MAX_VARS];
            for i in 0..nvars {
                e[i] = parts[i + 1]
                    .parse()
                    .map_err(|_| Error::Parse { line: ln + 1, msg: format!("bad exponent {}", parts[i + 1]) })?;
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn to_monomial_lines(&self) -> String {
        let mut s = String::new();
        for (e, c) in self.terms() {
            s.push_str(&c.to_string());
            for x in e {
                s.push(' ');
                s.push_str(&x.to_string());
            }
            s.push('\n');
        }
        s
    }
}

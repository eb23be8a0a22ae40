//! Dense univariate polynomials over Z (and Q where division is needed).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Coefficients in increasing degree, trailing zeros stripped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        IntPoly(c)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as None.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn lead(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        let mut acc = 0.0;
        for c in self.0.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::constant(BigInt::one());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// f(g(x)).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(g).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// f(x + k).
    pub fn shift(&self, k: i64) -> Self {
        self.compose(&Self::from_i64(&[k, 1]))
    }

    /// x^d f(1/x) with d = deg f.
    pub fn reversed(&self) -> Self {
        let mut c = self.0.clone();
        c.reverse();
        Self::new(c)
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide by the content, with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        Self::new(self.0.iter().map(|c| c / &g).collect())
    }

    pub fn to_rational(&self) -> QPoly {
        QPoly::new(self.0.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// Exact division, panicking when not exact.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.to_rational().div_rem(&d.to_rational());
        assert!(r.is_zero(), "inexact polynomial division");
        q.to_int().expect("integral quotient")
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let g = self.to_rational().gcd(&o.to_rational());
        g.clear_denominators().primitive()
    }

    /// Squarefree part, primitive.
    pub fn squarefree(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.primitive();
        }
        self.primitive().div_exact(&g).primitive()
    }

    pub fn resultant(&self, o: &Self) -> BigInt {
        let r = resultant_q(&self.to_rational(), &o.to_rational());
        debug_assert!(r.is_integer());
        r.to_integer()
    }

    /// Discriminant of f viewed as a polynomial of its actual degree.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree().unwrap_or(0);
        if n == 0 {
            return BigInt::zero();
        }
        if n == 1 {
            return BigInt::one();
        }
        let r = self.resultant(&self.derivative());
        let s = if (n * (n - 1) / 2) % 2 == 1 { -r } else { r };
        s / self.lead()
    }

    /// Discriminant of f as a binary form of formal degree n >= deg f.
    pub fn discriminant_formal(&self, n: usize) -> BigInt {
        let d = self.degree().unwrap_or(0);
        assert!(n >= d);
        match n - d {
            0 => self.discriminant(),
            1 => self.discriminant() * self.lead() * self.lead(),
            _ => BigInt::zero(),
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

/// Dense univariate polynomial over Q.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QPoly(Vec<BigRational>);

impl QPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Self::default(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        let lc = d.lead();
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lc;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        Self::new(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn neg(&self) -> Self {
        Self::new(self.0.iter().map(|c| -c).collect())
    }

    pub fn clear_denominators(&self) -> IntPoly {
        let l = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPoly::new(self.0.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect())
    }

    pub fn to_int(&self) -> Option<IntPoly> {
        self.0.iter().all(|c| c.is_integer()).then(|| IntPoly::new(self.0.iter().map(|c| c.to_integer()).collect()))
    }
}

/// Resultant by the Euclidean recurrence over Q.
pub fn resultant_q(f: &QPoly, g: &QPoly) -> BigRational {
    if f.is_zero() || g.is_zero() {
        return BigRational::zero();
    }
    let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
    if n == 0 {
        return num_traits::pow(g.lead(), m);
    }
    if m < n {
        let r = resultant_q(g, f);
        return if (m * n) % 2 == 1 { -r } else { r };
    }
    // Res(f, g) = (-1)^{mn} lc(g)^{m - deg r} Res(g, r), r = f mod g
    let (_, r) = f.div_rem(g);
    if r.is_zero() {
        return BigRational::zero();
    }
    let k = r.degree().unwrap();
    let sign = if (m * n) % 2 == 1 { -BigRational::one() } else { BigRational::one() };
    sign * num_traits::pow(g.lead(), m - k) * resultant_q(g, &r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn discriminants() {
        assert_eq!(p(&[1, 0, 0, 0, 0, 1]).discriminant(), BigInt::from(3125));
        assert_eq!(p(&[-2, 0, 1]).discriminant(), BigInt::from(8));
        assert_eq!(p(&[1, 1, 1]).discriminant(), BigInt::from(-3));
        // cubic x^3 - x - 1
        assert_eq!(p(&[-1, -1, 0, 1]).discriminant(), BigInt::from(-23));
        assert_eq!(p(&[1, 2, 1]).discriminant(), BigInt::zero());
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(x - 2, x^2 - 3) = (2^2 - 3)
        assert_eq!(p(&[-2, 1]).resultant(&p(&[-3, 0, 1])), BigInt::from(1));
        assert_eq!(p(&[-3, 0, 1]).resultant(&p(&[-2, 1])), BigInt::from(1));
        assert_eq!(p(&[0, 0, 1]).resultant(&p(&[5])), BigInt::from(25));
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = p(&[-1, 1]).mul(&p(&[2, 1])).mul(&p(&[2, 1]));
        assert_eq!(a.gcd(&a.derivative()), p(&[2, 1]));
        assert_eq!(a.squarefree(), p(&[-2, 1, 1]));
        assert_eq!(p(&[1, 1]).shift(1), p(&[2, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, 0, 2]).to_string(), "2*x^3 - x + 1");
        assert_eq!(p(&[0, 1]).to_string(), "x");
    }
}

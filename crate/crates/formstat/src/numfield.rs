//! Arithmetic in Q[x]/(f) for monic integral f, with elements as integer
//! coordinate vectors in the power basis.

use crate::arith::intpoly::IntPoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Elem = Vec<BigInt>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    poly: IntPoly,
    degree: usize,
}

impl NumberField {
    pub fn new(poly: IntPoly) -> Result<Self> {
        let d = poly.degree().ok_or_else(|| Error::arg("zero defining polynomial"))?;
        if d == 0 || !poly.lead().is_one() {
            return Err(Error::arg(format!("defining polynomial {poly} must be monic of positive degree")));
        }
        Ok(NumberField { poly, degree: d })
    }

    pub fn rationals() -> Self {
        NumberField { poly: IntPoly::from_i64(&[0, 1]), degree: 1 }
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn one(&self) -> Elem {
        let mut e = vec![BigInt::zero(); self.degree];
        e[0] = BigInt::one();
        e
    }

    pub fn from_int(&self, n: i64) -> Elem {
        let mut e = vec![BigInt::zero(); self.degree];
        e[0] = BigInt::from(n);
        e
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Elem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(&self, a: &[BigInt], k: &BigInt) -> Elem {
        a.iter().map(|x| x * k).collect()
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Elem {
        let d = self.degree;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        let f = self.poly.coeffs();
        for k in (d..2 * d - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            // x^k = x^{k-d} * x^d and x^d = -sum f_i x^i
            for i in 0..d {
                prod[k - d + i] -= &c * &f[i];
            }
        }
        prod.truncate(d);
        prod
    }

    pub fn pow(&self, a: &[BigInt], e: u32) -> Elem {
        let mut r = self.one();
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        r
    }

    /// Matrix of multiplication by a; column j holds a * x^j.
    pub fn mul_matrix(&self, a: &[BigInt]) -> Vec<Vec<BigInt>> {
        let d = self.degree;
        let mut m = vec![vec![BigInt::zero(); d]; d];
        let mut basis = self.one();
        let mut x = vec![BigInt::zero(); d];
        if d > 1 {
            x[1] = BigInt::one();
        } else {
            x[0] = -self.poly.coeff(0);
        }
        for j in 0..d {
            let col = self.mul(a, &basis);
            for i in 0..d {
                m[i][j] = col[i].clone();
            }
            basis = self.mul(&basis, &x);
        }
        m
    }

    pub fn trace(&self, a: &[BigInt]) -> BigInt {
        let m = self.mul_matrix(a);
        (0..self.degree).map(|i| m[i][i].clone()).sum()
    }

    pub fn norm(&self, a: &[BigInt]) -> BigInt {
        det_bareiss(self.mul_matrix(a))
    }

    /// Characteristic polynomial of multiplication by a (monic, degree d).
    pub fn charpoly(&self, a: &[BigInt]) -> IntPoly {
        let d = self.degree;
        let m = self.mul_matrix(a);
        // power sums via traces of M^k, then Newton's identities
        let mut pk = Vec::with_capacity(d);
        let mut acc = m.clone();
        for k in 1..=d {
            pk.push((0..d).map(|i| acc[i][i].clone()).sum::<BigInt>());
            if k < d {
                acc = mat_mul(&acc, &m);
            }
        }
        let mut e = vec![BigRational::one()];
        for k in 1..=d {
            let mut s = BigRational::zero();
            for i in 1..=k {
                let term = &e[k - i] * BigRational::from_integer(pk[i - 1].clone());
                if i % 2 == 1 {
                    s += term;
                } else {
                    s -= term;
                }
            }
            e.push(s / BigRational::from_integer(BigInt::from(k)));
        }
        let mut c = vec![BigInt::zero(); d + 1];
        for (k, ek) in e.iter().enumerate() {
            debug_assert!(ek.is_integer());
            let v = ek.to_integer();
            c[d - k] = if k % 2 == 1 { -v } else { v };
        }
        IntPoly::new(c)
    }

    /// Minimal polynomial: squarefree part of the characteristic polynomial.
    pub fn minpoly(&self, a: &[BigInt]) -> IntPoly {
        self.charpoly(a).squarefree()
    }

    pub fn is_rational(a: &[BigInt]) -> bool {
        a.iter().skip(1).all(|x| x.is_zero())
    }

    /// Degree of Q(a), from the minimal polynomial.
    pub fn generated_degree(&self, a: &[BigInt]) -> usize {
        if Self::is_rational(a) {
            return 1;
        }
        self.minpoly(a).degree().unwrap_or(0)
    }
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

/// Fraction-free Gaussian elimination.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Rank of a rational matrix given as rows.
pub fn rank_q(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let piv = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &piv;
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Absolute values of the coordinates, for quick size checks.
pub fn max_abs(a: &[BigInt]) -> BigInt {
    a.iter().map(|x| x.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[i64]) -> Elem {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn golden_ratio_field() {
        let k = NumberField::new(IntPoly::from_i64(&[-1, -1, 1])).unwrap();
        let phi = e(&[0, 1]);
        assert_eq!(k.mul(&phi, &phi), e(&[1, 1]));
        assert_eq!(k.norm(&phi), BigInt::from(-1));
        assert_eq!(k.trace(&phi), BigInt::from(1));
        assert_eq!(k.charpoly(&phi), IntPoly::from_i64(&[-1, -1, 1]));
        assert_eq!(k.charpoly(&e(&[3, 0])), IntPoly::from_i64(&[9, -6, 1]));
        assert_eq!(k.generated_degree(&e(&[3, 0])), 1);
        assert_eq!(k.generated_degree(&phi), 2);
    }

    #[test]
    fn cubic_norms() {
        let k = NumberField::new(IntPoly::from_i64(&[-2, 0, 0, 1])).unwrap();
        let a = e(&[1, 1, 0]);
        // N(1 + 2^{1/3}) = 1 + 2 = 3
        assert_eq!(k.norm(&a), BigInt::from(3));
        assert_eq!(det_bareiss(k.mul_matrix(&a)), k.charpoly(&a).coeff(0) * BigInt::from(-1));
        assert!(NumberField::new(IntPoly::from_i64(&[1, 2])).is_err());
    }
}

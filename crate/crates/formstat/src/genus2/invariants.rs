use crate::arith::intpoly::IntPoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

/// Binary form sum c_i x^{n-i} y^i.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryForm {
    c: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

fn binom(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

impl BinaryForm {
    /// Homogenise a univariate polynomial to formal degree n.
    pub fn from_poly(p: &IntPoly, n: usize) -> Self {
        let c = (0..=n).map(|i| BigRational::from_integer(p.coeff(n - i))).collect();
        BinaryForm { c }
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    fn dx(&self) -> Self {
        let n = self.degree();
        if n == 0 {
            return BinaryForm { c: vec![BigRational::zero()] };
        }
        BinaryForm { c: (0..n).map(|i| &self.c[i] * q((n - i) as i64)).collect() }
    }

    fn dy(&self) -> Self {
        let n = self.degree();
        if n == 0 {
            return BinaryForm { c: vec![BigRational::zero()] };
        }
        BinaryForm { c: (0..n).map(|i| &self.c[i + 1] * q((i + 1) as i64)).collect() }
    }

    fn mul(&self, o: &Self) -> Self {
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        BinaryForm { c }
    }

    fn add_assign_scaled(&mut self, o: &Self, k: &BigRational) {
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a += b * k;
        }
    }

    fn derivs(&self, i: usize, j: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..i {
            f = f.dx();
        }
        for _ in 0..j {
            f = f.dy();
        }
        f
    }

    /// Value of a degree-0 form.
    pub fn scalar(&self) -> BigRational {
        assert_eq!(self.degree(), 0);
        self.c[0].clone()
    }
}

/// Transvectant (f, g)_k with the normalisation (m-k)!(n-k)!/(m! n!).
pub fn transvectant(f: &BinaryForm, g: &BinaryForm, k: usize) -> BinaryForm {
    let (m, n) = (f.degree(), g.degree());
    assert!(k <= m && k <= n);
    let mut out = BinaryForm { c: vec![BigRational::zero(); m + n - 2 * k + 1] };
    for j in 0..=k {
        let term = f.derivs(k - j, j).mul(&g.derivs(j, k - j));
        let mut coef = BigRational::from_integer(binom(k, j));
        if j % 2 == 1 {
            coef = -coef;
        }
        out.add_assign_scaled(&term, &coef);
    }
    let norm = BigRational::new(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n));
    BinaryForm { c: out.c.into_iter().map(|x| x * &norm).collect() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IgusaClebsch {
    #[serde(serialize_with = "ser_big")]
    pub i2: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub i4: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub i6: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub i10: BigInt,
}

fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl IgusaClebsch {
    pub fn as_array(&self) -> [BigInt; 4] {
        [self.i2.clone(), self.i4.clone(), self.i6.clone(), self.i10.clone()]
    }

    /// (u^2 I2, u^4 I4, u^6 I6, u^10 I10), the effect of scaling h by u.
    pub fn scaled(&self, u: &BigInt) -> Self {
        let u2 = u * u;
        IgusaClebsch {
            i2: &self.i2 * &u2,
            i4: &self.i4 * num_traits::pow(u2.clone(), 2),
            i6: &self.i6 * num_traits::pow(u2.clone(), 3),
            i10: &self.i10 * num_traits::pow(u2, 5),
        }
    }
}

/// Igusa–Clebsch invariants of y^2 = h(x), deg h in {5, 6}.
///
/// Computed from Clebsch's transvectant invariants A, B, C, D of the sextic
/// form; the integer linear combinations below reproduce the root formulas
/// I2 = a^2 sum (12)^2(34)^2(56)^2 (15 terms), I4 (10 terms), I6 (60 terms)
/// and I10 = disc of h as a sextic.
pub fn igusa_clebsch(h: &IntPoly) -> Result<IgusaClebsch> {
    let deg = h.degree().unwrap_or(0);
    if !(5..=6).contains(&deg) {
        return Err(Error::arg(format!("need a quintic or sextic, got degree {deg}")));
    }
    if h.discriminant().is_zero() {
        return Err(Error::Singular(format!("{h} has a repeated root")));
    }
    let f = BinaryForm::from_poly(h, 6);
    let i = transvectant(&f, &f, 4);
    let delta = transvectant(&i, &i, 2);
    let y1 = transvectant(&f, &i, 4);
    let y2 = transvectant(&i, &y1, 2);
    let y3 = transvectant(&i, &y2, 2);
    let a = transvectant(&f, &f, 6).scalar();
    let b = transvectant(&i, &i, 4).scalar();
    let c = transvectant(&i, &delta, 4).scalar();
    let d = transvectant(&y3, &y1, 2).scalar();

    let a2 = &a * &a;
    let a3 = &a2 * &a;
    let i2 = q(-120) * &a;
    let i4 = q(-720) * &a2 + q(6750) * &b;
    let i6 = q(8640) * &a3 - q(108_000) * &a * &b + q(202_500) * &c;
    let i10 = q(-62_208) * &a3 * &a2 + q(972_000) * &a3 * &b + q(1_620_000) * &a2 * &c
        - q(3_037_500) * &a * &b * &b
        - q(6_075_000) * &b * &c
        - q(4_556_250) * &d;
    let to_int = |x: BigRational, name: &str| -> Result<BigInt> {
        if x.is_integer() {
            Ok(x.to_integer())
        } else {
            Err(Error::Domain(format!("{name} is not integral: {x}")))
        }
    };
    let out = IgusaClebsch {
        i2: to_int(i2, "I2")?,
        i4: to_int(i4, "I4")?,
        i6: to_int(i6, "I6")?,
        i10: to_int(i10, "I10")?,
    };
    debug_assert_eq!(out.i10, h.discriminant_formal(6));
    Ok(out)
}

/// (cx + d)^6 h((ax + b)/(cx + d)) for the sextic form of h.
pub fn gl2_substitute(h: &IntPoly, m: [[i64; 2]; 2]) -> IntPoly {
    let num = IntPoly::from_i64(&[m[0][1], m[0][0]]);
    let den = IntPoly::from_i64(&[m[1][1], m[1][0]]);
    let mut out = IntPoly::zero();
    for j in 0..=6 {
        let c = h.coeff(j);
        if c.is_zero() {
            continue;
        }
        let t = num.pow(j as u32).mul(&den.pow(6 - j as u32)).scale(&c);
        out = out.add(&t);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quintic_x5_plus_1() {
        let h = IntPoly::from_i64(&[1, 0, 0, 0, 0, 1]);
        let ic = igusa_clebsch(&h).unwrap();
        assert_eq!(ic.i10, BigInt::from(3125));
        assert_eq!(ic.i2, BigInt::zero());
    }

    #[test]
    fn singular_rejected() {
        let h = IntPoly::from_i64(&[1, 2, 1]).mul(&IntPoly::from_i64(&[1, 0, 0, 0, 1]));
        assert!(matches!(igusa_clebsch(&h), Err(Error::Singular(_))));
        assert!(igusa_clebsch(&IntPoly::from_i64(&[1, 0, 1])).is_err());
    }
}

//! Newform orbit records and their invariants.

use crate::arith::intpoly::IntPoly;
use crate::arith::primality::is_prime_u64;
use crate::error::{Error, Result};
use crate::numfield::{rank_q, NumberField};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Degree of the Hecke field, or the marker for the residual large orbit of
/// an Atkin–Lehner eigenspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    Finite(u8),
    Large,
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::Finite(d) => Some(d as usize),
            Degree::Large => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(d) => write!(f, "{d}"),
            Degree::Large => write!(f, "large"),
        }
    }
}

/// Atkin–Lehner eigenvalue w_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(s: i64) -> Option<Sign> {
        match s {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Field discriminants that occur above level 10^4, by degree.
pub const DISCRIMINANTS: [(usize, &[u64]); 6] = [
    (1, &[1]),
    (2, &[5, 8, 12, 13, 17, 21]),
    (3, &[49, 229, 148, 81, 257, 169, 321]),
    (4, &[725, 1957, 2777, 8768]),
    (5, &[70601, 14641]),
    (6, &[371293]),
];

/// Degree implied by a listed discriminant.
pub fn degree_of_disc(disc: u64) -> Option<usize> {
    DISCRIMINANTS.iter().find(|(_, l)| l.contains(&disc)).map(|(d, _)| *d)
}

pub fn disc_allowed(degree: usize, disc: u64) -> bool {
    DISCRIMINANTS.iter().any(|(d, l)| *d == degree && l.contains(&disc))
}

/// A proper subfield M = Q(beta) of K_f. Row i of `rows` holds the
/// coordinates of beta^i in the power basis of K_f, scaled by `denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subfield {
    pub poly: IntPoly,
    pub rows: Vec<Vec<BigInt>>,
    pub denominator: BigInt,
}

impl Subfield {
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// Check that beta satisfies `poly` in K_f and the rows are its powers.
    pub fn validate(&self, field: &NumberField) -> Result<()> {
        let e = self.degree();
        let n = field.degree();
        if e == 0 || n % e != 0 || e >= n {
            return Err(Error::Validation(format!("subfield degree {e} does not properly divide {n}")));
        }
        if self.rows.len() != e || self.rows.iter().any(|r| r.len() != n) {
            return Err(Error::Validation(format!("embedding must be {e}x{n}")));
        }
        if !self.denominator.is_positive() {
            return Err(Error::Validation("embedding denominator must be positive".into()));
        }
        let den = &self.denominator;
        let mut expect0 = vec![BigInt::zero(); n];
        expect0[0] = den.clone();
        if self.rows[0] != expect0 {
            return Err(Error::Validation("first embedding row must be the identity".into()));
        }
        let q: Vec<Vec<BigRational>> =
            self.rows.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
        if rank_q(&q) != e {
            return Err(Error::Validation("embedding is not injective".into()));
        }
        if e == 1 {
            return Ok(());
        }
        // rows[i] * den^(i-1) == rows[1]^i, and sum c_i den^(e-i) rows[1]^i == 0
        let g = &self.rows[1];
        let mut pow = field.one();
        let mut acc = vec![BigInt::zero(); n];
        for i in 0..=e {
            if (2..e).contains(&i) {
                let lhs = field.scale(&self.rows[i], &num_traits::pow(den.clone(), i - 1));
                if lhs != pow {
                    return Err(Error::Validation(format!("embedding row {i} is not a power of row 1")));
                }
            }
            let c = self.poly.coeff(i) * num_traits::pow(den.clone(), e - i);
            acc = field.add(&acc, &field.scale(&pow, &c));
            pow = field.mul(&pow, g);
        }
        if acc.iter().any(|x| !x.is_zero()) {
            return Err(Error::Validation(format!("embedded generator is not a root of {}", self.poly)));
        }
        Ok(())
    }

    /// Whether x (K_f coordinates) lies in the image of M, decided by exact
    /// rank comparison.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        let mut q: Vec<Vec<BigRational>> =
            self.rows.iter().map(|r| r.iter().map(|v| BigRational::from_integer(v.clone())).collect()).collect();
        let base = rank_q(&q);
        q.push(x.iter().map(|v| BigRational::from_integer(v.clone())).collect());
        rank_q(&q) == base
    }
}

/// One Galois orbit of newforms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewformRecord {
    pub level: u64,
    pub orbit: u32,
    pub degree: Degree,
    /// Absolute discriminant of K_f; absent for large orbits.
    pub disc: Option<u64>,
    pub al_sign: Sign,
    /// Defining polynomial of K_f; absent for large orbits.
    pub field_poly: Option<IntPoly>,
    pub subfields: Vec<Subfield>,
}

impl NewformRecord {
    pub fn key(&self) -> (u64, u32) {
        (self.level, self.orbit)
    }

    pub fn is_large(&self) -> bool {
        self.degree == Degree::Large
    }

    pub fn field(&self) -> Result<NumberField> {
        let poly = self.field_poly.clone().ok_or_else(|| Error::arg(format!("record {:?} has no field", self.key())))?;
        NumberField::new(poly)
    }

    /// Root number of the associated abelian variety.
    pub fn root_number(&self) -> i64 {
        -self.al_sign.as_i64()
    }

    pub fn validate(&self) -> Result<()> {
        let who = || format!("level {} orbit {}", self.level, self.orbit);
        if !is_prime_u64(self.level) {
            return Err(Error::Validation(format!("{}: level is not prime", who())));
        }
        match self.degree {
            Degree::Large => {
                if self.disc.is_some() || self.field_poly.is_some() || !self.subfields.is_empty() {
                    return Err(Error::Validation(format!("{}: large orbit carries field data", who())));
                }
                Ok(())
            }
            Degree::Finite(d) => {
                let d = d as usize;
                if !(1..=6).contains(&d) {
                    return Err(Error::Validation(format!("{}: degree {d} outside 1..6", who())));
                }
                let poly = self
                    .field_poly
                    .as_ref()
                    .ok_or_else(|| Error::Validation(format!("{}: missing field polynomial", who())))?;
                if poly.degree() != Some(d) || !poly.lead().is_one() {
                    return Err(Error::Validation(format!("{}: field polynomial {poly} is not monic of degree {d}", who())));
                }
                let disc = self.disc.ok_or_else(|| Error::Validation(format!("{}: missing discriminant", who())))?;
                if self.level > crate::RANGE_LO && !disc_allowed(d, disc) {
                    return Err(Error::Validation(format!("{}: discriminant {disc} not listed for degree {d}", who())));
                }
                if d > 1 {
                    // poly discriminant = field discriminant * index^2
                    let pd = poly.discriminant().abs();
                    let fd = BigInt::from(disc);
                    if (&pd % &fd) != BigInt::zero() || !is_square(&(&pd / &fd)) {
                        return Err(Error::Validation(format!(
                            "{}: polynomial discriminant {pd} is not {disc} times a square",
                            who()
                        )));
                    }
                } else if disc != 1 {
                    return Err(Error::Validation(format!("{}: degree 1 with discriminant {disc}", who())));
                }
                let field = NumberField::new(poly.clone())?;
                for s in &self.subfields {
                    s.validate(&field).map_err(|e| Error::Validation(format!("{}: {e}", who())))?;
                }
                Ok(())
            }
        }
    }
}

fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

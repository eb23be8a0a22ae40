use super::{HyperellipticModel, IgusaClebsch};
use crate::arith::intpoly::IntPoly;
use crate::arith::primality::is_prime_abs;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

/// Power of two separating I10 of the Brumer sextic from the model
/// discriminant, fixed at d = 0 where I10 = 2^12 * 103^2.
pub const BRUMER_DISC_TWO_POWER: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Brumer,
    Mestre,
}

/// y^2 + (x^3 + x + 1) y = -d x^3 + x^2 + x.
pub fn brumer_curve(d: i64) -> HyperellipticModel {
    HyperellipticModel::new(IntPoly::from_i64(&[1, 1, 0, 1]), IntPoly::from_i64(&[0, 1, 1, -d]))
        .expect("the Brumer family is smooth at every integer")
}

/// 27d^3 - 81d^2 - 34d - 103.
pub fn brumer_core(d: i64) -> BigInt {
    let d = BigInt::from(d);
    BigInt::from(27) * &d * &d * &d - BigInt::from(81) * &d * &d - BigInt::from(34) * &d - BigInt::from(103)
}

/// Model discriminant I10(Q^2 + 4P) / 2^12.
pub fn brumer_disc(d: i64) -> BigInt {
    let i10 = brumer_curve(d).sextic().discriminant_formal(6);
    let two = BigInt::one() << BRUMER_DISC_TWO_POWER;
    debug_assert!((&i10 % &two).is_zero());
    i10 / two
}

/// y^2 = 7500x^5 + (-75b + 3400)x^4 + (-34b + 2283)x^3 + (-3b + 1111)x^2 + 177x + 9.
pub fn mestre_curve(b: i64) -> Result<HyperellipticModel> {
    if b == -88 || b == 112 {
        return Err(Error::Singular(format!("Mestre curve at b = {b} is singular")));
    }
    let p = IntPoly::from_i64(&[9, 177, -3 * b + 1111, -34 * b + 2283, -75 * b + 3400, 7500]);
    HyperellipticModel::new(IntPoly::zero(), p)
}

/// Discriminant of the Mestre quintic (as a quintic), a polynomial of degree 7 in b.
pub fn mestre_disc(b: i64) -> BigInt {
    IntPoly::from_i64(&[9, 177, -3 * b + 1111, -34 * b + 2283, -75 * b + 3400, 7500]).discriminant()
}

/// Congruence certificate for a nonsplit Jacobian: d = 1 mod 5 with model
/// discriminant prime to 5 (Brumer), or b = 1 mod 7 (Mestre).
pub fn nonsplit_certificate(family: Family, param: i64) -> bool {
    match family {
        Family::Brumer => param.rem_euclid(5) == 1 && !(brumer_disc(param) % 5u32).is_zero(),
        Family::Mestre => param.rem_euclid(7) == 1 && param != -88 && param != 112,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub bound: u64,
    pub params: Vec<i64>,
    pub count: usize,
    /// count / (X / log X); undefined for X = 1
    pub density_ratio: Option<f64>,
}

/// All 1 <= d <= X with d = 1 mod 5 and |27d^3 - 81d^2 - 34d - 103| prime.
pub fn prime_disc_search(x: u64) -> Result<SearchReport> {
    if x < 1 {
        return Err(Error::arg("search bound must be at least 1"));
    }
    let params: Vec<i64> = (1..=x as i64).step_by(5).filter(|&d| is_prime_abs(&brumer_core(d))).collect();
    let count = params.len();
    let density_ratio = (x > 1).then(|| count as f64 / (x as f64 / (x as f64).ln()));
    Ok(SearchReport { bound: x, params, count, density_ratio })
}

/// F = (I2')^2 I4 - I2^2 I4'; nonzero certifies non-isomorphic curves.
pub fn isomorphism_obstruction(c1: &IgusaClebsch, c2: &IgusaClebsch) -> BigInt {
    &c2.i2 * &c2.i2 * &c1.i4 - &c1.i2 * &c1.i2 * &c2.i4
}

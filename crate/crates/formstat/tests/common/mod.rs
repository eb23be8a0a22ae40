#![allow(dead_code)]

use formstat::arith::intpoly::IntPoly;
use formstat::dataset::{CoefficientTable, Degree, NewformRecord, Sign};
use formstat::numfield::{Elem, NumberField};
use num_bigint::BigInt;

/// Defining polynomials for the quadratic discriminants of the catalog.
pub fn quadratic_poly(disc: u64) -> IntPoly {
    let c: &[i64] = match disc {
        5 => &[-1, -1, 1],
        8 => &[-2, 0, 1],
        12 => &[-3, 0, 1],
        13 => &[-3, -1, 1],
        17 => &[-4, -1, 1],
        21 => &[-5, -1, 1],
        _ => panic!("no polynomial for {disc}"),
    };
    IntPoly::from_i64(c)
}

pub fn rational(level: u64, orbit: u32, sign: Sign) -> NewformRecord {
    NewformRecord {
        level,
        orbit,
        degree: Degree::Finite(1),
        disc: Some(1),
        al_sign: sign,
        field_poly: Some(IntPoly::x()),
        subfields: Vec::new(),
    }
}

pub fn quadratic(level: u64, orbit: u32, sign: Sign, disc: u64) -> NewformRecord {
    NewformRecord {
        level,
        orbit,
        degree: Degree::Finite(2),
        disc: Some(disc),
        al_sign: sign,
        field_poly: Some(quadratic_poly(disc)),
        subfields: Vec::new(),
    }
}

pub fn large(level: u64, orbit: u32, sign: Sign) -> NewformRecord {
    NewformRecord { level, orbit, degree: Degree::Large, disc: None, al_sign: sign, field_poly: None, subfields: Vec::new() }
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
}

fn legendre(a: i64, p: i64) -> i64 {
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    let (mut r, mut b, mut e) = (1i64, a, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// a_p = p + 1 - #E(F_p) for y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6,
/// by direct point counting.
pub fn curve_ap(ainv: [i64; 5], p: u64) -> i64 {
    let [a1, a2, a3, a4, a6] = ainv;
    let p = p as i64;
    if p == 2 {
        let mut affine = 0;
        for x in 0..2i64 {
            for y in 0..2i64 {
                let lhs = y * y + a1 * x * y + a3 * y;
                let rhs = x * x * x + a2 * x * x + a4 * x + a6;
                if (lhs - rhs).rem_euclid(2) == 0 {
                    affine += 1;
                }
            }
        }
        return p + 1 - (affine + 1);
    }
    // (2y + a1 x + a3)^2 = 4(x^3 + a2 x^2 + a4 x + a6) + (a1 x + a3)^2
    let mut s = 0;
    for x in 0..p {
        let cubic = ((x * x % p * x) + a2 * x % p * x + a4 * x + a6).rem_euclid(p);
        let lin = (a1 * x + a3).rem_euclid(p);
        s += legendre(4 * cubic + lin * lin, p);
    }
    -s
}

/// Coefficient table of a newform with the given prime coefficients, extended
/// by the Hecke recursion, a(N^e) = (-w)^e and multiplicativity.
pub fn table_from_ap(
    field: &NumberField,
    level: u64,
    orbit: u32,
    al_sign: i64,
    max_n: u64,
    ap: impl Fn(u64) -> Elem,
) -> CoefficientTable {
    let n = max_n as usize;
    let mut a: Vec<Option<Elem>> = vec![None; n + 1];
    a[1] = Some(field.one());
    for p in primes_up_to(max_n) {
        let app = if p == level { field.from_int(-al_sign) } else { ap(p) };
        let mut prev2 = field.one();
        let mut prev = app.clone();
        let mut q = p;
        loop {
            a[q as usize] = Some(prev.clone());
            let Some(next) = q.checked_mul(p).filter(|&v| v <= max_n) else { break };
            let cur = if p == level {
                field.mul(&app, &prev)
            } else {
                let pp = field.scale(&prev2, &BigInt::from(p));
                field.sub(&field.mul(&app, &prev), &pp)
            };
            prev2 = prev;
            prev = cur;
            q = next;
        }
    }
    for m in 2..=n {
        if a[m].is_some() {
            continue;
        }
        // split off the full power of the smallest prime factor
        let mut p = 2;
        while m % p != 0 {
            p += 1;
        }
        let mut q = p;
        while m % (q * p) == 0 {
            q *= p;
        }
        let v = field.mul(a[q].as_ref().unwrap(), a[m / q].as_ref().unwrap());
        a[m] = Some(v);
    }
    let mut t = CoefficientTable::new(level, orbit, field.degree());
    for (k, v) in a.into_iter().enumerate().skip(1) {
        t.insert(k as u64, v.unwrap()).unwrap();
    }
    t
}

/// 11a: y^2 + y = x^3 - x^2 - 10x - 20, w = -1.
pub const CURVE_11A: [i64; 5] = [0, -1, 1, -10, -20];
/// 37a: y^2 + y = x^3 - x, w = +1.
pub const CURVE_37A: [i64; 5] = [0, 0, 1, -1, 0];

pub fn curve_table(level: u64, ainv: [i64; 5], al_sign: i64, max_n: u64) -> CoefficientTable {
    let q = NumberField::rationals();
    table_from_ap(&q, level, 1, al_sign, max_n, |p| vec![BigInt::from(curve_ap(ainv, p))])
}

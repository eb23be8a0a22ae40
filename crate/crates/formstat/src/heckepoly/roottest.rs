//! Exact and certified tests for "all roots in |z| <= sqrt(S)" and
//! "all roots real in [-sqrt(S), sqrt(S)]" for integer polynomials.

use crate::arith::intpoly::{IntPoly, QPoly};
use crate::arith::roots::{aberth, inclusion_radii};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Inside,
    Outside,
    Unknown,
}

/// Floating-point filter. Inside means every root is certified in the open
/// disk; Outside means one isolated root is certified beyond the circle.
pub fn numeric_disk(c: &[f64], s: f64) -> Verdict {
    let r = s.sqrt();
    let z = aberth(c);
    let Some(rad) = inclusion_radii(c, &z) else { return Verdict::Unknown };
    let tol = 1e-9 * r.max(1.0);
    if z.iter().zip(&rad).all(|(w, e)| w.norm() + e < r - tol) {
        return Verdict::Inside;
    }
    for i in 0..z.len() {
        if z[i].norm() - rad[i] > r + tol {
            let isolated = (0..z.len()).all(|j| j == i || (z[i] - z[j]).norm() > rad[i] + rad[j]);
            if isolated {
                return Verdict::Outside;
            }
        }
    }
    Verdict::Unknown
}

/// Floating-point filter for "all roots real in [-r, r]". A disk recentred on
/// the real axis that is disjoint from the others holds one root, which is
/// then real by conjugate symmetry.
pub fn numeric_real(c: &[f64], s: f64) -> Verdict {
    let r = s.sqrt();
    let z = aberth(c);
    let Some(rad) = inclusion_radii(c, &z) else { return Verdict::Unknown };
    let n = z.len();
    let tol = 1e-9 * r.max(1.0);
    let disjoint = |i: usize| (0..n).all(|j| j == i || (z[i] - z[j]).norm() > rad[i] + rad[j]);
    for i in 0..n {
        if (z[i].im.abs() > rad[i] && disjoint(i)) || (z[i].re.abs() - rad[i] > r + tol && disjoint(i)) {
            return Verdict::Outside;
        }
    }
    let wide: Vec<f64> = (0..n).map(|i| rad[i] + z[i].im.abs()).collect();
    let separated = (0..n).all(|i| (0..i).all(|j| (z[i].re - z[j].re).abs() > wide[i] + wide[j]));
    if separated && (0..n).all(|i| z[i].re.abs() + wide[i] < r - tol) {
        return Verdict::Inside;
    }
    Verdict::Unknown
}

/// g(x) g(-x) as a polynomial in w = x^2, up to sign; its roots are the
/// squares of the roots of g.
fn square_roots_poly(g: &IntPoly) -> IntPoly {
    let m = g.degree().unwrap_or(0);
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for i in 0..=m {
        if i % 2 == 0 {
            even.push(g.coeff(i));
        } else {
            odd.push(g.coeff(i));
        }
    }
    let e = IntPoly::new(even);
    let o = IntPoly::new(odd);
    e.mul(&e).sub(&IntPoly::x().mul(&o).mul(&o))
}

/// Schur–Cohn: every root strictly inside the unit circle.
pub fn schur_strict(p: &IntPoly) -> bool {
    let mut c: Vec<BigRational> = p.coeffs().iter().map(|x| BigRational::from_integer(x.clone())).collect();
    while c.len() > 1 {
        let d = c.len() - 1;
        let (a0, ad) = (c[0].clone(), c[d].clone());
        if a0.abs() >= ad.abs() {
            return false;
        }
        // (a_d p(z) - a_0 p*(z)) / z
        let next: Vec<BigRational> = (1..=d).map(|i| &ad * &c[i] - &a0 * &c[d - i]).collect();
        c = next;
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        if c.len() != d {
            return false;
        }
    }
    true
}

/// Every root in the closed unit disk, decided exactly.
pub fn closed_unit_disk(p: &IntPoly) -> bool {
    let Some(deg) = p.degree() else { return true };
    if deg == 0 {
        return true;
    }
    let f = p.squarefree();
    let g = f.gcd(&f.reversed());
    let h = f.div_exact(&g);
    if h.degree().unwrap_or(0) > 0 && !schur_strict(&h) {
        return false;
    }
    if g.degree().unwrap_or(0) == 0 {
        return true;
    }
    // g is self-inversive: all its roots lie on the circle iff g' has all roots
    // in the closed disk (Cohn).
    closed_unit_disk(&g.derivative())
}

/// Every complex root z of g satisfies |z|^2 <= s.
pub fn exact_disk(g: &IntPoly, s: &BigInt) -> bool {
    let l = square_roots_poly(g);
    // L(s w)
    let mut pow = BigInt::from(1);
    let mut scaled = Vec::with_capacity(l.coeffs().len());
    for c in l.coeffs() {
        scaled.push(c * &pow);
        pow *= s;
    }
    closed_unit_disk(&IntPoly::new(scaled))
}

pub fn in_disk(g: &IntPoly, s: &BigInt) -> bool {
    let deg = g.degree().unwrap_or(0);
    if deg == 0 {
        return true;
    }
    if deg == 1 {
        // root -c0/c1
        let (c0, c1) = (g.coeff(0), g.coeff(1));
        return &c0 * &c0 <= s * &c1 * &c1;
    }
    let cf: Vec<f64> = g.coeffs().iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    if cf.iter().all(|x| x.is_finite() && x.abs() < 1e15) {
        match numeric_disk(&cf, s.to_f64().unwrap_or(f64::NAN)) {
            Verdict::Inside => return true,
            Verdict::Outside => return false,
            Verdict::Unknown => {}
        }
    }
    exact_disk(g, s)
}

/// Sign of A + B sqrt(s) for s > 0 not a perfect square.
fn sign_surd(a: &BigInt, b: &BigInt, s: &BigInt) -> Ordering {
    let sa = a.sign();
    let sb = b.sign();
    use num_bigint::Sign::*;
    match (sa, sb) {
        (NoSign, NoSign) => Ordering::Equal,
        (NoSign, Plus) | (Plus, NoSign) | (Plus, Plus) => Ordering::Greater,
        (NoSign, Minus) | (Minus, NoSign) | (Minus, Minus) => Ordering::Less,
        (Plus, Minus) => (a * a).cmp(&(b * b * s)),
        (Minus, Plus) => (b * b * s).cmp(&(a * a)),
    }
}

/// Value of p at sgn * sqrt(s) as A + B sqrt(s).
fn eval_surd(p: &IntPoly, s: &BigInt, negative: bool) -> (BigInt, BigInt) {
    let mut a = BigInt::zero();
    let mut b = BigInt::zero();
    let mut spow = BigInt::from(1);
    for (i, c) in p.coeffs().iter().enumerate() {
        if i % 2 == 0 {
            a += c * &spow;
        } else {
            let t = c * &spow;
            if negative {
                b -= t;
            } else {
                b += t;
            }
            spow *= s;
        }
    }
    (a, b)
}

fn sturm_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].to_rational().div_rem(&chain[n - 1].to_rational());
        if r.is_zero() {
            break;
        }
        let r: QPoly = r.neg();
        chain.push(r.clear_denominators());
    }
    chain
}

fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut v = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// All roots of g real and in [-sqrt(s), sqrt(s)], for s not a square.
pub fn in_real_interval(g: &IntPoly, s: &BigInt) -> bool {
    let Some(deg) = g.degree() else { return true };
    if deg == 0 {
        return true;
    }
    let cf: Vec<f64> = g.coeffs().iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    if deg > 1 && cf.iter().all(|x| x.is_finite() && x.abs() < 1e15) {
        match numeric_real(&cf, s.to_f64().unwrap_or(f64::NAN)) {
            Verdict::Inside => return true,
            Verdict::Outside => return false,
            Verdict::Unknown => {}
        }
    }
    let mut f = g.squarefree();
    let quad = IntPoly::new(vec![-s.clone(), BigInt::zero(), BigInt::from(1)]);
    loop {
        let (q, r) = f.to_rational().div_rem(&quad.to_rational());
        if !r.is_zero() {
            break;
        }
        f = q.clear_denominators();
    }
    let d = f.degree().unwrap_or(0);
    if d == 0 {
        return true;
    }
    let chain = sturm_chain(&f);
    let at = |neg: bool| {
        variations(chain.iter().map(|p| {
            let (a, b) = eval_surd(p, s, neg);
            sign_surd(&a, &b, s)
        }))
    };
    let count = at(true) - at(false);
    count == d
}

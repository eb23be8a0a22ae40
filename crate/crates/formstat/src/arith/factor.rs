//! Integer factorisation by trial division and Pollard–Brent rho.

use super::primality::{is_prime_big, is_prime_u64};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

const TRIAL_BOUND: u64 = 10_000;

/// Prime factorisation of n > 0 as (prime, exponent) pairs in increasing order.
pub fn factor_big(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut out: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut m = n.clone();
    let mut d = 2u64;
    while d <= TRIAL_BOUND {
        if (&m % d).is_zero() {
            let e = out.entry(BigUint::from(d)).or_insert(0);
            while (&m % d).is_zero() {
                m /= d;
                *e += 1;
            }
        }
        if BigUint::from(d * d) > m {
            break;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![m];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime_big(&m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let f = find_factor(&m);
        let g = &m / &f;
        stack.push(f);
        stack.push(g);
    }
    out.into_iter().collect()
}

pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    factor_big(&BigUint::from(n))
        .into_iter()
        .map(|(p, e)| (p.to_u64().expect("factor of a u64"), e))
        .collect()
}

fn find_factor(n: &BigUint) -> BigUint {
    if let Some(v) = n.to_u64() {
        return BigUint::from(rho_u64(v));
    }
    let mut c = 1u64;
    loop {
        if let Some(f) = rho_big(n, &BigUint::from(c)) {
            return f;
        }
        c += 1;
    }
}

fn rho_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    debug_assert!(!is_prime_u64(n));
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    for c in 1u64.. {
        let f = |x: u64| (mul(x, x) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        while g == 1 {
            x = f(x);
            y = f(f(y));
            g = x.abs_diff(y).gcd(&n);
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn rho_big(n: &BigUint, c: &BigUint) -> Option<BigUint> {
    let f = |x: &BigUint| (x * x + c) % n;
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let m = 128u64;
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

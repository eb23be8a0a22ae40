//! Class numbers of imaginary quadratic orders via reduced binary forms.

use crate::error::{Error, Result};
use num_integer::Integer;

fn check_disc(d: i64) -> Result<()> {
    if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::arg(format!("{d} is not a negative discriminant")));
    }
    Ok(())
}

/// Number of reduced primitive positive definite forms of discriminant `d`.
pub fn class_number(d: i64) -> Result<u64> {
    check_disc(d)?;
    let n = -d;
    let mut h = 0;
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in (-a + 1)..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    Ok(h)
}

fn forms_brute(d: i64) -> u64 {
    let n = -d;
    let mut count = 0;
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in (-a + 1)..=a {
            let num = b * b - d;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                if c > a || (c == a && b >= 0) {
                    count += 1;
                }
            }
        }
        a += 1;
    }
    count
}

/// Counts of all reduced forms (primitive or not) for |D| up to a limit,
/// filled in one enumeration pass over (a, b, c).
#[derive(Debug, Clone)]
pub struct ClassNumberTable {
    limit: u64,
    even_only: bool,
    all: Vec<u32>,
}

impl ClassNumberTable {
    /// Every discriminant with |D| <= limit.
    pub fn build(limit: u64) -> Self {
        Self::fill(limit, false)
    }

    /// Only discriminants D = -4n with |D| <= limit; about half the work.
    pub fn build_even(limit: u64) -> Self {
        Self::fill(limit, true)
    }

    fn fill(limit: u64, even_only: bool) -> Self {
        // even tables are indexed by |D|/4 and step b by 2
        let scale = if even_only { 4 } else { 1 };
        let lim = limit as usize;
        let mut all = vec![0u32; lim / scale + 1];
        let step = if even_only { 2 } else { 1 };
        let mut a = 1usize;
        while 3 * a * a <= lim {
            let stride = 4 * a / scale;
            let mut b = 0usize;
            while b <= a {
                let start = 4 * a * a - b * b;
                if start > lim {
                    b += step;
                    continue;
                }
                // c = a
                all[start / scale] += 1;
                let w = if b == 0 || b == a { 1 } else { 2 };
                let end = lim / scale;
                let mut n = start / scale + stride;
                while n <= end {
                    all[n] += w;
                    n += stride;
                }
                b += step;
            }
            a += 1;
        }
        ClassNumberTable { limit, even_only, all }
    }

    fn entry(&self, n: u64) -> u64 {
        if self.even_only {
            u64::from(self.all[(n / 4) as usize])
        } else {
            u64::from(self.all[n as usize])
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    fn lookup(&self, d: i64) -> Result<u32> {
        check_disc(d)?;
        let n = d.unsigned_abs();
        if n > self.limit {
            return Err(Error::arg(format!("|{d}| exceeds table limit {}", self.limit)));
        }
        if self.even_only && n % 4 != 0 {
            return Err(Error::arg(format!("{d} is odd but the table holds even discriminants only")));
        }
        Ok(self.entry(n) as u32)
    }

    /// Number of reduced forms of discriminant d, primitive or not.
    pub fn forms(&self, d: i64) -> Result<u64> {
        self.lookup(d).map(u64::from)
    }

    /// Class number h(d), recovered from the all-forms counts by Möbius inversion
    /// over square divisors f^2 with d/f^2 still a discriminant.
    pub fn h(&self, d: i64) -> Result<u64> {
        self.lookup(d)?;
        let n = d.unsigned_abs();
        let mut total: i64 = 0;
        let mut f = 1u64;
        while f * f <= n {
            if n % (f * f) == 0 {
                let m = n / (f * f);
                let dd = -(m as i64);
                if matches!(dd.rem_euclid(4), 0 | 1) {
                    let mu = mobius(f);
                    if mu != 0 {
                        let cnt = if self.even_only && m % 4 != 0 {
                            forms_brute(dd)
                        } else {
                            self.entry(m)
                        };
                        total += mu * cnt as i64;
                    }
                }
            }
            f += 1;
        }
        Ok(total as u64)
    }
}

fn mobius(mut n: u64) -> i64 {
    let mut r = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}

use crate::error::{Error, Result};

/// All primes up to and including `limit`, in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

/// Sieve of Eratosthenes over odd numbers.
pub fn sieve(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::arg(format!("sieve limit {limit} is below 2")));
    }
    let n = limit as usize;
    // composite[i] refers to the odd number 2i+1
    let half = n / 2 + 1;
    let mut composite = vec![false; half];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= n {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = Vec::with_capacity(if n > 10 { (1.3 * n as f64 / (n as f64).ln()) as usize } else { 4 });
    primes.push(2);
    for (i, &c) in composite.iter().enumerate().skip(1) {
        let v = 2 * i + 1;
        if v > n {
            break;
        }
        if !c {
            primes.push(v as u64);
        }
    }
    Ok(PrimeTable { limit, primes })
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Number of primes p with p < x.
    pub fn count_below(&self, x: u64) -> usize {
        self.primes.partition_point(|&p| p < x)
    }

    /// Primes in the open interval (lo, hi).
    pub fn open_range(&self, lo: u64, hi: u64) -> &[u64] {
        let s = self.primes.partition_point(|&p| p <= lo);
        let e = self.primes.partition_point(|&p| p < hi);
        if s >= e {
            &[]
        } else {
            &self.primes[s..e]
        }
    }

    /// Membership test; values above the limit are rejected.
    pub fn contains(&self, n: u64) -> bool {
        n <= self.limit && self.primes.binary_search(&n).is_ok()
    }

    /// Primes in the statistics range (10^4, 2*10^6).
    pub fn stats_range(&self) -> &[u64] {
        self.open_range(crate::RANGE_LO, crate::RANGE_HI)
    }
}

/// Shared table covering the full catalog range.
pub fn catalog_primes() -> &'static PrimeTable {
    static TABLE: std::sync::OnceLock<PrimeTable> = std::sync::OnceLock::new();
    TABLE.get_or_init(|| sieve(crate::RANGE_HI).expect("limit is valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small() {
        assert_eq!(sieve(10).unwrap().primes(), &[2, 3, 5, 7]);
        assert_eq!(sieve(2).unwrap().primes(), &[2]);
        assert_eq!(sieve(3).unwrap().primes(), &[2, 3]);
        assert!(sieve(1).is_err());
        assert!(sieve(0).is_err());
    }

    #[test]
    fn counting_helpers() {
        let t = sieve(100).unwrap();
        assert_eq!(t.count_below(2), 0);
        assert_eq!(t.count_below(3), 1);
        assert_eq!(t.count_below(100), 25);
        assert_eq!(t.open_range(7, 13), &[11]);
        assert!(t.contains(97) && !t.contains(91) && !t.contains(101));
    }
}

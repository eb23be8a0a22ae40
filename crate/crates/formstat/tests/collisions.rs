use formstat::arith::primes::{catalog_primes, sieve};
use formstat::collisions::*;
use formstat::dataset::Catalog;
use formstat::fitmodels::{poisson_mle, PoissonData};
use formstat::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

fn primes_above(lo: u64, n: usize) -> Vec<u64> {
    sieve(lo + 50 * n as u64 + 1000).unwrap().primes().iter().copied().filter(|&p| p > lo).take(n).collect()
}

#[test]
fn expectations_sum_to_prime_count() {
    let primes = primes_above(10_000, 2000);
    for (a, b) in [(0.01, 0.5), (1.0, 0.0), (2.0, 0.1)] {
        let total: f64 = (0..200).map(|k| expected_s(&primes, a, b, k).unwrap()).sum();
        assert!((total - primes.len() as f64).abs() < 1e-8, "a={a} b={b}: {total}");
    }
    assert!(expected_s(&primes, 0.0, 0.5, 1).is_err());
}

#[test]
fn single_prime_bound() {
    for (a, k) in [(0.5, 0), (1.0, 1), (3.0, 2), (10.0, 10)] {
        let q = (-a as f64).exp() * (a as f64).powi(k as i32) / (1..=k).map(|i| i as f64).product::<f64>();
        let r = lecam_bound(&[17], a, 0.0, k).unwrap();
        let expect = 2.0 * (1.0f64).min(1.0 / q) * q * q;
        assert!((r - expect).abs() < 1e-14, "a={a} k={k}");
    }
}

#[test]
fn bound_uses_min_factor() {
    // many primes with E > 1: the bound is 2 sum q^2 / E
    let primes = primes_above(10_000, 100);
    let q = (-1f64).exp();
    let r = lecam_bound(&primes, 1.0, 0.0, 0).unwrap();
    assert!((r - 2.0 * q).abs() < 1e-12);
}

#[test]
fn rho_reference_values() {
    assert!((rho(1.0, 0).unwrap().value().unwrap() - (-1f64).exp()).abs() < 1e-15);
    let cases = [(13708.9, 11922, 3.3e-55), (0.61, 3, 2.4e-2), (34.3, 54, 1.1e-3)];
    for (lambda, x, expect) in cases {
        let v = rho(lambda, x).unwrap().value().unwrap();
        assert!((v / expect - 1.0).abs() < 0.05, "rho({lambda}, {x}) = {v:e}");
    }
    let tiny = rho(1.0, 400).unwrap();
    assert!(tiny.value().is_none());
    assert!(tiny.to_string().starts_with("10^"));
}

/// e^-lambda times an exact partial sum of lambda^k / k!.
fn exact_rho(num: i64, den: i64, x: u64) -> f64 {
    let lambda = BigRational::new(BigInt::from(num), BigInt::from(den));
    let lf = num as f64 / den as f64;
    let (lo, hi) = if lf >= x as f64 { (0, x) } else { (x, 120) };
    let mut t = BigRational::one();
    let mut s = BigRational::zero();
    for k in 0..=hi {
        if k > 0 {
            t = t * &lambda / BigRational::from_integer(BigInt::from(k));
        }
        if k >= lo {
            s += &t;
        }
    }
    (-lf).exp() * s.to_f64().unwrap()
}

#[test]
fn rho_matches_exact_rational_sums() {
    for num in 1..=20 {
        let lambda = num as f64 / 4.0;
        for x in 0..=20 {
            let v = rho(lambda, x).unwrap().value().unwrap();
            let e = exact_rho(num, 4, x);
            assert!((v / e - 1.0).abs() < 1e-11, "lambda={lambda} x={x}: {v:e} vs {e:e}");
        }
    }
}

#[test]
fn bernoulli_sum_small_case() {
    let d = bernoulli_sum_pmf(&[0.5, 0.25]);
    assert_eq!(d, vec![0.375, 0.5, 0.125]);
    assert_eq!(bernoulli_sum_pmf(&[]), vec![1.0]);
}

#[test]
fn lecam_monte_carlo_respects_bound() {
    let primes = primes_above(10_000, 500);
    for (a, b, k) in [(0.02, 0.3, 0), (0.02, 0.3, 1), (0.02, 0.3, 3), (0.5, 0.0, 1), (0.001, 0.7, 2)] {
        let c = lecam_monte_carlo(&primes, a, b, k, 20_000, 42).unwrap();
        assert!(c.tv_exact <= c.bound + 1e-12, "{c:?}");
        assert!(c.tv_simulated <= c.bound + 0.05, "{c:?}");
        assert!((c.tv_simulated - c.tv_exact).abs() < 0.05, "{c:?}");
    }
    assert!(lecam_monte_carlo(&primes, 0.02, 0.3, 1, 0, 1).is_err());
    let a = lecam_monte_carlo(&primes, 0.02, 0.3, 1, 1000, 9).unwrap();
    let b = lecam_monte_carlo(&primes, 0.02, 0.3, 1, 1000, 9).unwrap();
    assert_eq!(a, b);
}

#[test]
fn rows_extend_past_observed() {
    let primes = primes_above(10_000, 300);
    let counts: Vec<u32> = (0..300).map(|i| (i % 7 == 0) as u32 + (i % 50 == 0) as u32).collect();
    let data = PoissonData::new(&primes, &counts).unwrap();
    let fit = poisson_mle(&data);
    let rows = collision_rows(5, &primes, &counts, &fit).unwrap();
    assert_eq!(rows.len(), 3 + TRAILING_ROWS);
    assert_eq!(rows.iter().map(|r| r.observed).sum::<u64>(), 300);
    assert_eq!(rows[4].observed, 0);
    let total: f64 = rows.iter().map(|r| r.expected).sum();
    assert!(total <= 300.0 + 1e-9 && total > 299.0);
}

#[test]
fn empty_catalog_is_degenerate() {
    assert!(matches!(collision_report(&Catalog::empty(), 5), Err(Error::Degenerate(_))));
    assert_eq!(catalog_primes().stats_range().len(), 147_704);
}

proptest! {
    #[test]
    fn bernoulli_sum_is_a_distribution(q in prop::collection::vec(0.0f64..1.0, 0..40)) {
        let d = bernoulli_sum_pmf(&q);
        prop_assert_eq!(d.len(), q.len() + 1);
        prop_assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let mean: f64 = d.iter().enumerate().map(|(s, w)| s as f64 * w).sum();
        prop_assert!((mean - q.iter().sum::<f64>()).abs() < 1e-10);
    }

    #[test]
    fn rho_at_most_one(lambda in 0.01f64..500.0, x in 0u64..1000) {
        let r = rho(lambda, x).unwrap();
        prop_assert!(r.log10 <= 1e-12);
    }
}

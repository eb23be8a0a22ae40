use formstat::heckepoly::*;
use formstat::Error;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use std::collections::HashSet;

fn spec(n: usize, p: u64, k: u32) -> HnSpec {
    HnSpec::new(n, p, k).unwrap()
}

fn isqrt(s: i128) -> i128 {
    let mut r = (s as f64).sqrt() as i128;
    while r * r > s {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= s {
        r += 1;
    }
    r
}

/// Quadratics x^2 - e1 x + e2 with both roots in |z| <= sqrt(s), decided with
/// integer arithmetic over a box wider than the library's.
fn quadratic_oracle(s: i128, real_only: bool) -> u64 {
    let r = isqrt(s) + 3;
    let mut n = 0;
    for e1 in -2 * r..=2 * r {
        for e2 in -(s + 10)..=(s + 10) {
            let disc = e1 * e1 - 4 * e2;
            let ok = if disc < 0 {
                !real_only && e2 <= s
            } else {
                // |e1| + sqrt(disc) <= 2 sqrt(s)
                let rhs = 4 * s - e1 * e1 - disc;
                rhs >= 0 && 4 * e1 * e1 * disc <= rhs * rhs
            };
            n += ok as u64;
        }
    }
    n
}

fn durand_kerner(monic: &[f64]) -> Vec<Complex64> {
    let n = monic.len() - 1;
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let seed = Complex64::new(0.4, 0.9);
    let mut r: Vec<Complex64> = (0..n).map(|i| seed.powu(i as u32 + 1)).collect();
    for _ in 0..5000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= r[i] - r[j];
                }
            }
            let step = eval(r[i]) / den;
            r[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    r
}

#[test]
fn linear_closed_form() {
    for p in [2, 3, 5, 7, 11] {
        for k in [1, 2] {
            let s = spec(1, p, k);
            let r = isqrt(s.r_squared().to_i128().unwrap()) as u64;
            assert_eq!(count_hn(s, RootDomain::Disk).unwrap(), 2 * r + 1, "p={p} k={k}");
            assert_eq!(count_hn(s, RootDomain::TotallyReal).unwrap(), 2 * r + 1);
        }
    }
    assert_eq!(count_hn(spec(1, 2, 1), RootDomain::Disk).unwrap(), 5);
}

#[test]
fn quadratics_match_exact_oracle() {
    for (p, k) in [(2, 1), (3, 1), (5, 1), (2, 2)] {
        let s = spec(2, p, k);
        let sq = s.r_squared().to_i128().unwrap();
        assert_eq!(count_hn(s, RootDomain::Disk).unwrap(), quadratic_oracle(sq, false), "p={p} k={k}");
        assert_eq!(count_hn(s, RootDomain::TotallyReal).unwrap(), quadratic_oracle(sq, true), "p={p} k={k}");
    }
}

#[test]
fn cubics_match_numeric_roots() {
    let s = spec(3, 2, 1);
    let r = s.r();
    let mut oracle = 0;
    let b = [0.0, 3.0 * r, 3.0 * r * r, r * r * r].map(|x: f64| x.floor() as i64);
    for e1 in -b[1]..=b[1] {
        for e2 in -b[2]..=b[2] {
            for e3 in -b[3]..=b[3] {
                let roots = durand_kerner(&[-(e3 as f64), e2 as f64, -(e1 as f64), 1.0]);
                if roots.iter().all(|z| z.norm() <= r * (1.0 + 1e-9)) {
                    oracle += 1;
                }
            }
        }
    }
    assert_eq!(count_hn(s, RootDomain::Disk).unwrap(), oracle);
}

#[test]
fn enumeration_symmetric_under_negation() {
    for n in 2..=3 {
        let mut seen = HashSet::new();
        enumerate_hn(spec(n, 2, 1), RootDomain::Disk, |e| {
            seen.insert(e.to_vec());
        })
        .unwrap();
        for e in &seen {
            let flipped: Vec<i64> = e.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { -x } else { x }).collect();
            assert!(seen.contains(&flipped), "n={n}: {e:?}");
        }
    }
}

#[test]
fn visited_polynomials_have_small_roots() {
    let s = spec(3, 3, 1);
    let r = s.r();
    enumerate_hn(s, RootDomain::TotallyReal, |e| {
        let p = poly_from_elementary(e);
        let c: Vec<f64> = p.coeffs().iter().map(|x| x.to_f64().unwrap()).collect();
        for z in durand_kerner(&c) {
            // repeated roots converge slowly, hence the loose tolerances
            assert!(z.norm() <= r * (1.0 + 1e-4), "{e:?}");
            assert!(z.im.abs() < 1e-3, "{e:?}");
        }
    })
    .unwrap();
}

#[test]
fn monotone_in_radius() {
    for n in 1..=3 {
        let mut last = 0;
        for p in [2, 3, 5, 7] {
            let h = count_hn(spec(n, p, 1), RootDomain::Disk).unwrap();
            assert!(h >= last, "n={n} p={p}");
            last = h;
        }
        assert!(count_hn(spec(n, 2, 2), RootDomain::Disk).unwrap() >= count_hn(spec(n, 2, 1), RootDomain::Disk).unwrap());
        assert!(count_hn(spec(n, 5, 1), RootDomain::TotallyReal).unwrap() <= count_hn(spec(n, 5, 1), RootDomain::Disk).unwrap());
    }
}

#[test]
fn guards() {
    assert!(matches!(count_hn(spec(7, 2, 1), RootDomain::Disk), Err(Error::CostGuard(_))));
    assert!(HnSpec::new(2, 4, 1).is_err());
    assert!(HnSpec::new(0, 2, 1).is_err());
    assert!(HnSpec::new(2, 2, 0).is_err());
}

#[test]
fn factor_estimates() {
    let est = factor_probability(4, 1, 2, 1, RootDomain::Disk).unwrap();
    assert!(est.direct > 0.0 && est.chained > 0.0);
    // for d = 1 the two estimates differ by exactly h(1)
    let h1 = count_hn(spec(1, 2, 1), RootDomain::Disk).unwrap() as f64;
    assert!((est.direct / est.chained - h1).abs() < 1e-9 * h1, "{est:?}");
    // constructed h with h(d) h(n - d) = h(n)
    let e = factor_probability_from(&[1, 3, 7, 21], 3, 1).unwrap();
    assert_eq!(e.direct, 1.0);
    assert!(matches!(factor_probability_from(&[1, 3, 0], 2, 1), Err(Error::Degenerate(_))));
    assert!(factor_probability(3, 3, 2, 1, RootDomain::Disk).is_err());
    let direct: Vec<f64> =
        [2, 3, 5].iter().map(|&p| factor_probability(3, 1, p, 1, RootDomain::Disk).unwrap().direct).collect();
    assert!(direct.windows(2).all(|w| w[1] < w[0]), "{direct:?}");
}

#[test]
fn exponents() {
    assert_eq!(conjectured_exponent(6).exponent, 0.0);
    assert!(!conjectured_exponent(6).finite);
    let seven = heuristic_exponent(1.0 / 6.0, 7).unwrap();
    assert!((seven.exponent + 1.0 / 6.0).abs() < 1e-15 && seven.finite);
    assert!((heuristic_exponent(1.0 / 6.0, 1).unwrap().exponent - 5.0 / 6.0).abs() < 1e-15);
    assert!(heuristic_exponent(0.0, 1).is_err());
    assert!(heuristic_exponent(1.0, 1).is_err());
}

//! Complex roots of real polynomials by Aberth–Ehrlich iteration, with
//! Weierstrass inclusion radii.

use num_complex::Complex64;

/// Approximate roots of sum c_i x^i (real coefficients, c_n != 0).
pub fn aberth(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let monic: Vec<f64> = c.iter().map(|x| x / lead).collect();
    // Cauchy bound for the initial circle
    let bound = 1.0 + monic[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let rad = bound.min(
        2.0 * monic[..n]
            .iter()
            .enumerate()
            .map(|(i, x)| x.abs().powf(1.0 / (n - i) as f64))
            .fold(0.0f64, f64::max),
    );
    let rad = if rad > 0.0 { rad } else { 1.0 };
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(rad, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64)).collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(&monic, z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn eval_with_derivative(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &ci in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ci;
    }
    (p, dp)
}

/// Radii r_i such that every root lies in the union of the disks D(z_i, r_i);
/// a disk disjoint from the others holds exactly one root. Rounding error in
/// evaluating the polynomial is included. None when approximations collide.
pub fn inclusion_radii(c: &[f64], z: &[Complex64]) -> Option<Vec<f64>> {
    let n = z.len();
    let lead = c[n];
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut p = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        let zn = z[i].norm();
        for &ci in c.iter().rev() {
            p = p * z[i] + ci;
            mag = mag * zn + ci.abs();
        }
        let err = 4.0 * (n as f64 + 2.0) * f64::EPSILON * mag;
        let mut den = Complex64::new(lead, 0.0);
        for j in 0..n {
            if j != i {
                den *= z[i] - z[j];
            }
        }
        let dn = den.norm();
        if dn == 0.0 || !dn.is_finite() {
            return None;
        }
        let r = n as f64 * (p.norm() + err) / dn;
        out.push(r * (1.0 + 1e-9) + 1e-300);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic() {
        // (x - 1)(x - 2)(x + 3) = x^3 - 7x + 6
        let c = [6.0, -7.0, 0.0, 1.0];
        let mut r: Vec<f64> = aberth(&c).iter().map(|z| z.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in r.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        let z = aberth(&c);
        let rad = inclusion_radii(&c, &z).unwrap();
        assert!(rad.iter().all(|&x| x < 1e-10));
    }

    #[test]
    fn complex_pair() {
        let z = aberth(&[1.0, 0.0, 1.0]);
        assert!(z.iter().all(|w| (w.norm() - 1.0).abs() < 1e-14 && w.re.abs() < 1e-14));
    }
}

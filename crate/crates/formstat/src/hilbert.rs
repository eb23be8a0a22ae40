//! Integral points on the Hilbert modular surfaces Y_-(D) for D in
//! {5, 8, 12, 13, 17}, through their I10 polynomials in P^2 coordinates (a:b:c).

use crate::arith::bigpoly::BigPoly;
use crate::arith::factor::factor_big;
use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub const DISCRIMINANTS: [u32; 5] = [5, 8, 12, 13, 17];

/// Lower-bound exponents r_D for #Z_D(T), in the order of [`DISCRIMINANTS`].
pub const R_D: [f64; 5] = [3.0, 1.5, 2.0, 1.0, 1.0];

const WEIGHTS: [u32; 4] = [1, 2, 3, 5];

type Mono = (i64, [u32; 3]);

/// A factor of I10 with its exponent, plus an i128 copy for fast zero tests.
#[derive(Debug, Clone)]
struct Factor {
    poly: BigPoly,
    small: Vec<Mono>,
    exp: u32,
}

impl Factor {
    fn new(terms: &[Mono], exp: u32) -> Self {
        let t: Vec<(i64, &[u32])> = terms.iter().map(|(c, e)| (*c, &e[..])).collect();
        Factor { poly: BigPoly::from_terms(3, &t), small: terms.to_vec(), exp }
    }

    /// None when i128 arithmetic overflows.
    fn eval_i128(&self, x: [i64; 3]) -> Option<i128> {
        let mut acc: i128 = 0;
        for (c, e) in &self.small {
            let mut t = *c as i128;
            for i in 0..3 {
                for _ in 0..e[i] {
                    t = t.checked_mul(x[i] as i128)?;
                }
            }
            acc = acc.checked_add(t)?;
        }
        Some(acc)
    }

    fn is_zero_at(&self, x: [i64; 3]) -> bool {
        match self.eval_i128(x) {
            Some(v) => v == 0,
            None => self.poly.eval_i64(&x).is_zero(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SurfaceModel {
    pub d: u32,
    constant: BigInt,
    factors: Vec<Factor>,
    i10: BigPoly,
    /// Optional I2, I4, I6 loaded from data files.
    pub others: Option<[BigPoly; 3]>,
}

const A: [u32; 3] = [1, 0, 0];

fn m(c: i64, a: u32, b: u32, cc: u32) -> Mono {
    (c, [a, b, cc])
}

impl SurfaceModel {
    /// The built-in I10 polynomial for D.
    pub fn new(d: u32) -> Result<Self> {
        let (constant, factors): (BigInt, Vec<Factor>) = match d {
            5 => (
                BigInt::from(8),
                vec![Factor::new(
                    &[
                        m(1, 5, 0, 0),
                        m(-10, 3, 2, 0),
                        m(25, 1, 4, 0),
                        m(5, 4, 0, 1),
                        m(-50, 2, 2, 1),
                        m(125, 0, 4, 1),
                        m(-5, 3, 0, 2),
                        m(25, 1, 2, 2),
                        m(-45, 2, 0, 3),
                        m(225, 0, 2, 3),
                        m(108, 0, 0, 5),
                    ],
                    2,
                )],
            ),
            8 => (
                BigInt::from(8),
                vec![
                    Factor::new(&[m(1, 0, 0, 1)], 3),
                    Factor::new(&[(1, A), m(-1, 0, 0, 1)], 3),
                    Factor::new(&[(1, A), m(1, 0, 0, 1)], 6),
                    Factor::new(
                        &[
                            m(-16, 2, 2, 0),
                            m(32, 0, 4, 0),
                            m(1, 3, 0, 1),
                            m(-56, 1, 2, 1),
                            m(9, 2, 0, 2),
                            m(-72, 0, 2, 2),
                            m(27, 1, 0, 3),
                            m(27, 0, 0, 4),
                        ],
                        2,
                    ),
                ],
            ),
            12 => (
                BigInt::one(),
                vec![
                    Factor::new(&[(1, A), m(1, 0, 0, 1)], 3),
                    Factor::new(&[(1, A), m(-1, 0, 0, 1)], 9),
                    Factor::new(&[m(-27, 2, 0, 0), m(1, 0, 2, 0), m(27, 0, 0, 2)], 2),
                    Factor::new(&[m(1, 2, 1, 0), m(9, 2, 0, 1), m(-8, 0, 0, 3)], 3),
                ],
            ),
            13 => (
                BigInt::from(8) * num_traits::pow(BigInt::from(3), 11),
                vec![
                    Factor::new(
                        &[
                            m(-267, 3, 0, 0),
                            m(72, 2, 1, 0),
                            m(-1, 1, 2, 0),
                            m(-3552, 2, 0, 1),
                            m(1440, 1, 1, 1),
                            m(-128, 0, 2, 1),
                            m(768, 1, 0, 2),
                        ],
                        2,
                    ),
                    Factor::new(&[m(-12, 3, 0, 0), m(3, 2, 0, 1), m(1, 0, 2, 1)], 4),
                    Factor::new(
                        &[
                            m(-1, 3, 0, 0),
                            m(-150, 2, 0, 1),
                            m(6, 1, 1, 1),
                            m(-264, 1, 0, 2),
                            m(120, 0, 1, 2),
                            m(64, 0, 0, 3),
                        ],
                        4,
                    ),
                ],
            ),
            17 => (
                (BigInt::one() << 15u32) * num_traits::pow(BigInt::from(3), 11),
                vec![
                    Factor::new(&[m(-132, 1, 0, 0), m(1, 0, 1, 0), m(3, 0, 0, 1)], 3),
                    Factor::new(
                        &[
                            m(-256, 3, 0, 0),
                            m(-1200, 2, 0, 1),
                            m(18, 1, 1, 1),
                            m(-6006, 1, 0, 2),
                            m(99, 0, 1, 2),
                            m(41, 0, 0, 3),
                        ],
                        5,
                    ),
                    Factor::new(&[m(456, 2, 0, 0), m(1, 1, 1, 0), m(723, 1, 0, 1), m(-8, 0, 1, 1), m(24, 0, 0, 2)], 3),
                    Factor::new(&[m(4608, 3, 0, 0), m(-1728, 2, 0, 1), m(1, 0, 2, 1), m(216, 1, 0, 2), m(-9, 0, 0, 3)], 2),
                ],
            ),
            _ => return Err(Error::arg(format!("no surface model for D = {d}"))),
        };
        let i10 = factors
            .iter()
            .fold(BigPoly::constant(3, constant.clone()), |acc, f| acc.mul(&f.poly.pow(f.exp)));
        let model = SurfaceModel { d, constant, factors, i10, others: None };
        let deg = model.i10.homogeneous_degree();
        if deg != Some(model.expected_degree()) {
            return Err(Error::Validation(format!("I10 for D = {d} has degree {deg:?}")));
        }
        Ok(model)
    }

    /// Homogeneous degree of every I_{2j} scaled to weight 10: 10, 20, 25, 30, 30.
    pub fn expected_degree(&self) -> u32 {
        match self.d {
            5 => 10,
            8 => 20,
            12 => 25,
            _ => 30,
        }
    }

    pub fn i10(&self) -> &BigPoly {
        &self.i10
    }

    /// Attach I2, I4, I6; each must be homogeneous of degree (j/5) deg I10.
    pub fn with_others(mut self, i2: BigPoly, i4: BigPoly, i6: BigPoly) -> Result<Self> {
        for (j, p) in [(1u32, &i2), (2, &i4), (3, &i6)] {
            let want = j * self.expected_degree() / 5;
            let got = p.homogeneous_degree();
            if self.expected_degree() * j % 5 != 0 || got != Some(want) {
                return Err(Error::Validation(format!(
                    "I{} for D = {} has degree {got:?}, expected {want}",
                    2 * j,
                    self.d
                )));
            }
        }
        self.others = Some([i2, i4, i6]);
        Ok(self)
    }

    pub fn eval_i10(&self, x: [i64; 3]) -> BigInt {
        let mut v = self.constant.clone();
        for f in &self.factors {
            v *= num_traits::pow(f.poly.eval_i64(&x), f.exp as usize);
        }
        v
    }

    /// c = 0 or some visible factor of I10 vanishes.
    pub fn excluded(&self, x: [i64; 3]) -> bool {
        x[2] == 0 || self.factors.iter().any(|f| f.is_zero_at(x))
    }

    fn raw_invariants(&self, x: [i64; 3]) -> Option<[BigInt; 4]> {
        let o = self.others.as_ref()?;
        Some([o[0].eval_i64(&x), o[1].eval_i64(&x), o[2].eval_i64(&x), self.eval_i10(x)])
    }
}

/// Evaluate the Table I10 polynomial for D at (a, b, c).
pub fn eval_i10(d: u32, a: i64, b: i64, c: i64) -> Result<BigInt> {
    Ok(SurfaceModel::new(d)?.eval_i10([a, b, c]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScaledInvariants {
    #[serde(serialize_with = "ser_arr")]
    pub raw: [BigInt; 4],
    #[serde(serialize_with = "ser_arr")]
    pub minimal: [BigInt; 4],
    #[serde(serialize_with = "ser_one")]
    pub u: BigInt,
}

fn ser_arr<S: serde::Serializer>(v: &[BigInt; 4], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(4))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

fn ser_one<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn valuation(n: &BigInt, p: &BigUint) -> u32 {
    let mut m = n.magnitude().clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Divide (I2, I4, I6, I10) by (u, u^2, u^3, u^5) for the largest u > 0.
pub fn minimal_scale(raw: &[BigInt; 4]) -> Result<ScaledInvariants> {
    if raw[3].is_zero() {
        return Err(Error::Degenerate("I10 = 0".into()));
    }
    let g = raw.iter().filter(|x| !x.is_zero()).fold(BigInt::zero(), |g, x| g.gcd(x));
    let mut u = BigInt::one();
    for (p, _) in factor_big(g.magnitude()) {
        let e = raw
            .iter()
            .zip(WEIGHTS)
            .filter(|(x, _)| !x.is_zero())
            .map(|(x, w)| valuation(x, &p) / w)
            .min()
            .unwrap_or(0);
        if e > 0 {
            u *= num_traits::pow(BigInt::from(p), e as usize);
        }
    }
    let minimal = [0, 1, 2, 3].map(|i| &raw[i] / num_traits::pow(u.clone(), WEIGHTS[i] as usize));
    Ok(ScaledInvariants { raw: raw.clone(), minimal, u })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Coprime points with |a|, |b|, |c| <= T^{10/deg I10} and I10 != 0.
    I10Box,
    /// Coprime points in a search box of the given radius whose invariants
    /// satisfy |I_{2j}| < T^{2j}; `minimal` selects I^min over the raw values.
    FullInvariants { radius: u64, minimal: bool },
}

/// Largest integer B >= 0 with B^deg <= T^10.
pub fn box_radius(t: u64, deg: u32) -> u64 {
    let target = num_traits::pow(BigUint::from(t), 10);
    let mut lo = 0u64;
    let mut hi = t.max(1) * 2 + 1;
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if num_traits::pow(BigUint::from(mid), deg as usize) <= target {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    a.gcd(&b).gcd(&c)
}

/// Enumerate Z_D(T) under the chosen strategy, streaming points in
/// lexicographic order of (a, b, c). Returns the count.
pub fn enumerate_zd(model: &SurfaceModel, t: u64, strategy: Strategy, mut visit: impl FnMut([i64; 3])) -> Result<u64> {
    if t < 1 {
        return Err(Error::arg("T must be at least 1"));
    }
    let (r, check_full) = match strategy {
        Strategy::I10Box => (box_radius(t, model.expected_degree()) as i64, None),
        Strategy::FullInvariants { radius, minimal } => {
            if model.others.is_none() {
                return Err(Error::Config("full-invariant strategy needs I2, I4, I6 data".into()));
            }
            (radius as i64, Some(minimal))
        }
    };
    let bounds: Vec<BigInt> = WEIGHTS.iter().map(|w| num_traits::pow(BigInt::from(t), 2 * *w as usize)).collect();
    let mut count = 0;
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                let x = [a, b, c];
                if c == 0 || gcd3(a, b, c) != 1 || model.excluded(x) {
                    continue;
                }
                if let Some(minimal) = check_full {
                    let raw = model.raw_invariants(x).expect("checked above");
                    let vals = if minimal { minimal_scale(&raw)?.minimal } else { raw };
                    if vals.iter().zip(&bounds).any(|(v, bd)| v.abs() >= *bd) {
                        continue;
                    }
                }
                count += 1;
                visit(x);
            }
        }
    }
    Ok(count)
}

/// Points on the line a = 0 of Y_-(12) with 1 <= |c| <= c_max and
/// |I10(0, b, c)| < T^10. On this line |I10| grows with |b|.
pub fn enumerate_d12_line(model: &SurfaceModel, t: u64, c_max: i64, mut visit: impl FnMut([i64; 3])) -> Result<u64> {
    if model.d != 12 {
        return Err(Error::arg("the a = 0 line is specific to D = 12"));
    }
    let bound = num_traits::pow(BigInt::from(t), 10);
    let mut count = 0;
    for c in (-c_max..=c_max).filter(|&c| c != 0) {
        let mut pts = Vec::new();
        let mut b = 0i64;
        loop {
            let x = [0, b, c];
            if model.eval_i10(x).abs() >= bound {
                break;
            }
            if b.gcd(&c) == 1 && !model.excluded(x) {
                pts.push(b);
            }
            b += 1;
        }
        let mut all: Vec<i64> = pts.iter().filter(|&&b| b != 0).map(|b| -b).collect();
        all.reverse();
        all.extend(pts);
        for b in all {
            count += 1;
            visit([0, b, c]);
        }
    }
    Ok(count)
}

#[derive(Debug, Clone, Serialize)]
pub struct ExponentReport {
    pub d: u32,
    pub ts: Vec<u64>,
    pub counts: Vec<u64>,
    pub slope: f64,
    pub r_d: f64,
}

/// Least-squares slope of log y against log x.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

pub fn r_d(d: u32) -> Option<f64> {
    DISCRIMINANTS.iter().position(|&x| x == d).map(|i| R_D[i])
}

pub fn exponent_report_from_counts(d: u32, ts: &[u64], counts: &[u64]) -> Result<ExponentReport> {
    if ts.len() < 3 || ts.len() != counts.len() {
        return Err(Error::arg("need at least three values of T"));
    }
    if counts.contains(&0) {
        return Err(Error::Degenerate("zero counts; extend the T range".into()));
    }
    let xs: Vec<f64> = ts.iter().map(|&t| t as f64).collect();
    let ys: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    Ok(ExponentReport {
        d,
        ts: ts.to_vec(),
        counts: counts.to_vec(),
        slope: loglog_slope(&xs, &ys),
        r_d: r_d(d).unwrap_or(f64::NAN),
    })
}

pub fn exponent_report(d: u32, ts: &[u64]) -> Result<ExponentReport> {
    let model = SurfaceModel::new(d)?;
    let counts = ts
        .iter()
        .map(|&t| enumerate_zd(&model, t, Strategy::I10Box, |_| {}))
        .collect::<Result<Vec<_>>>()?;
    exponent_report_from_counts(d, ts, &counts)
}

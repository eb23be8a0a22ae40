//! Coefficient statistics at primes: how often a_f(p) takes a fixed value or
//! lies in a fixed subfield, coefficient collisions, Eisenstein congruences,
//! mod-2 residue patterns and Weil-box integer counts.

pub mod weil;

pub use weil::{weil_box_count, IntegralBasis, WeilCount};

use crate::arith::intpoly::IntPoly;
use crate::arith::poisson::ln_pmf;
use crate::arith::primality::is_prime_u64;
use crate::dataset::{Catalog, CoefficientTable, NewformRecord, Subfield};
use crate::error::{Error, Result};
use crate::numfield::{Elem, NumberField};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// Lower bound of the coefficient range computed for every form.
pub const X_FLOOR: f64 = 8196.0;

/// X_f = max(8196, 30 sqrt(N), (N + 1)/6).
pub fn x_f(level: u64) -> f64 {
    let n = level as f64;
    X_FLOOR.max(30.0 * n.sqrt()).max((n + 1.0) / 6.0)
}

/// An exact Fourier coefficient value, compared and hashed by coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FourierValue {
    #[serde(serialize_with = "ser_elem")]
    pub coords: Elem,
}

impl From<Elem> for FourierValue {
    fn from(coords: Elem) -> Self {
        FourierValue { coords }
    }
}

/// Prime-indexed coefficients a(p) for p < x, failing if any prime below x
/// is missing from the table.
fn prime_coefficients(t: &CoefficientTable, x: u64) -> Result<Vec<(u64, &Elem)>> {
    let mut out = Vec::new();
    for p in 2..x {
        if !is_prime_u64(p) {
            continue;
        }
        match t.get(p) {
            Some(v) => out.push((p, v)),
            None => {
                return Err(Error::Incomplete(format!(
                    "form {}.{}: coefficient a({p}) missing (stored up to n = {})",
                    t.level,
                    t.orbit,
                    t.max_n()
                )))
            }
        }
    }
    Ok(out)
}

/// Exclusive bound covering every stored coefficient.
pub fn stored_bound(t: &CoefficientTable) -> u64 {
    t.max_n() + 1
}

/// pi_{f,a}(x) = #{p < x prime : a_f(p) = a}.
pub fn pi_f_a(t: &CoefficientTable, a: &FourierValue, x: u64) -> Result<u64> {
    Ok(prime_coefficients(t, x)?.iter().filter(|(_, v)| **v == a.coords).count() as u64)
}

/// C_f(x; k) = number of distinct values taken by a_f(p), p < x, exactly k
/// times. Only k >= 1 appears.
pub fn c_f_histogram(t: &CoefficientTable, x: u64) -> Result<BTreeMap<u64, u64>> {
    let mut mult: HashMap<&Elem, u64> = HashMap::new();
    for (_, v) in prime_coefficients(t, x)? {
        *mult.entry(v).or_insert(0) += 1;
    }
    let mut hist = BTreeMap::new();
    for k in mult.into_values() {
        *hist.entry(k).or_insert(0) += 1;
    }
    Ok(hist)
}

/// max_a pi_{f,a}(x).
pub fn max_pi(t: &CoefficientTable, x: u64) -> Result<u64> {
    Ok(c_f_histogram(t, x)?.keys().next_back().copied().unwrap_or(0))
}

/// Forms grouped by field degree, then by max_a pi_{f,a} over all stored
/// primes.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct MaxPiTable {
    pub counts: BTreeMap<usize, BTreeMap<u64, u64>>,
    /// Forms without a coefficient file.
    pub missing: Vec<(u64, u32)>,
}

pub fn max_pi_table(catalog: &Catalog) -> Result<MaxPiTable> {
    let mut table = MaxPiTable::default();
    for r in catalog.records() {
        let Some(d) = r.degree.finite() else { continue };
        let t = match catalog.coefficients(r.level, r.orbit) {
            Ok(t) => t,
            Err(Error::Incomplete(_)) => {
                table.missing.push(r.key());
                continue;
            }
            Err(e) => return Err(e),
        };
        let k = max_pi(&t, stored_bound(&t))?;
        *table.counts.entry(d).or_default().entry(k).or_insert(0) += 1;
    }
    Ok(table)
}

/// Whether x lies in the row span of `rows`, by a floating-point projection.
/// Some(false) only when x is clearly outside; None when undecided.
pub fn span_prefilter(rows: &[Vec<BigInt>], x: &[BigInt]) -> Option<bool> {
    let to_f = |v: &[BigInt]| v.iter().map(|c| c.to_f64().filter(|f| f.is_finite())).collect::<Option<Vec<f64>>>();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for r in rows {
        let mut v = to_f(r)?;
        for b in &basis {
            let d: f64 = v.iter().zip(b).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(b).for_each(|(a, b)| *a -= d * b);
        }
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return None;
        }
        basis.push(v.into_iter().map(|a| a / norm).collect());
    }
    let mut v = to_f(x)?;
    let scale = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    for b in &basis {
        let d: f64 = v.iter().zip(b).map(|(a, b)| a * b).sum();
        v.iter_mut().zip(b).for_each(|(a, b)| *a -= d * b);
    }
    let resid = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    (resid > 1e-6 * scale.max(1.0)).then_some(false)
}

/// Subfield membership: the float filter rejects clear outsiders, exact
/// rational rank decides the rest.
pub fn in_subfield(m: &Subfield, x: &[BigInt]) -> bool {
    match span_prefilter(&m.rows, x) {
        Some(false) => false,
        _ => m.contains(x),
    }
}

/// Which field the coefficients are tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldRef<'a> {
    Rationals,
    Full,
    Sub(&'a Subfield),
}

/// Resolve a subfield by its defining polynomial: x (or any linear
/// polynomial) is Q, the record's own polynomial is K_f, anything else must
/// be registered on the record.
pub fn resolve_field<'a>(r: &'a NewformRecord, poly: &IntPoly) -> Result<FieldRef<'a>> {
    match poly.degree() {
        Some(1) => return Ok(FieldRef::Rationals),
        None | Some(0) => return Err(Error::arg("subfield polynomial must have positive degree")),
        _ => {}
    }
    if r.field_poly.as_ref() == Some(poly) {
        return Ok(FieldRef::Full);
    }
    r.subfields
        .iter()
        .find(|s| &s.poly == poly)
        .map(FieldRef::Sub)
        .ok_or_else(|| Error::arg(format!("unknown subfield {poly} for form {}.{}", r.level, r.orbit)))
}

fn in_field(m: FieldRef<'_>, x: &[BigInt]) -> bool {
    match m {
        FieldRef::Rationals => NumberField::is_rational(x),
        FieldRef::Full => true,
        FieldRef::Sub(s) => in_subfield(s, x),
    }
}

/// Primes p < x with a_f(p) in M.
pub fn pi_f_m(t: &CoefficientTable, m: FieldRef<'_>, x: u64) -> Result<Vec<u64>> {
    Ok(prime_coefficients(t, x)?.into_iter().filter(|(_, v)| in_field(m, v)).map(|(p, _)| p).collect())
}

/// All n < x (composite included) with a_f(n) in M.
pub fn field_hits_all(t: &CoefficientTable, m: FieldRef<'_>, x: u64) -> Vec<u64> {
    t.rows().take_while(|(n, _)| *n < x).filter(|(_, v)| in_field(m, v)).map(|(n, _)| n).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubfieldHits {
    pub degree: usize,
    pub poly: String,
    pub primes: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LtReport {
    pub level: u64,
    pub orbit: u32,
    pub degree: usize,
    pub x: u64,
    pub max_k: u64,
    pub histogram: BTreeMap<u64, u64>,
    /// Q first, then the registered proper subfields.
    pub subfield_hits: Vec<SubfieldHits>,
}

/// Report over every stored prime of one form.
pub fn lt_report(r: &NewformRecord, t: &CoefficientTable) -> Result<LtReport> {
    let degree = r.degree.finite().ok_or_else(|| Error::arg("large orbits carry no coefficients"))?;
    let x = stored_bound(t);
    let histogram = c_f_histogram(t, x)?;
    let max_k = histogram.keys().next_back().copied().unwrap_or(0);
    let mut subfield_hits = Vec::new();
    if degree > 1 {
        subfield_hits.push(SubfieldHits { degree: 1, poly: "x".into(), primes: pi_f_m(t, FieldRef::Rationals, x)? });
    }
    for s in &r.subfields {
        if s.degree() > 1 {
            subfield_hits.push(SubfieldHits {
                degree: s.degree(),
                poly: s.poly.to_string(),
                primes: pi_f_m(t, FieldRef::Sub(s), x)?,
            });
        }
    }
    Ok(LtReport { level: r.level, orbit: r.orbit, degree, x, max_k, histogram, subfield_hits })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollisionPair {
    pub n: u64,
    pub m: u64,
    #[serde(serialize_with = "ser_elem")]
    pub value: Elem,
    #[serde(serialize_with = "ser_big")]
    pub norm: BigInt,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValueClass {
    #[serde(serialize_with = "ser_elem")]
    pub value: Elem,
    pub indices: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollisionReport {
    pub pairs: Vec<CollisionPair>,
    /// Indices sharing the value 0 or 1, when those are split off.
    pub classes: Vec<ValueClass>,
}

fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_elem<S: serde::Serializer>(v: &Elem, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut d = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            d.push(i);
            if i * i != n {
                d.push(n / i);
            }
        }
        i += 1;
    }
    d.sort_unstable();
    d
}

/// Implied by multiplicativity: some r > 1 dividing both, coprime to the
/// cofactors, with a(n/r) = a(m/r).
fn implied(t: &CoefficientTable, n: u64, m: u64) -> bool {
    divisors(n.gcd(&m)).into_iter().skip(1).any(|r| {
        let (n1, m1) = (n / r, m / r);
        r.gcd(&n1) == 1 && r.gcd(&m1) == 1 && matches!((t.get(n1), t.get(m1)), (Some(a), Some(b)) if a == b)
    })
}

/// All pairs n < m < x with a_f(n) = a_f(m). With `filter_trivial`, pairs
/// implied by multiplicativity are dropped and the values 0 and 1 are
/// reported as classes instead of pairs.
pub fn collision_report(field: &NumberField, t: &CoefficientTable, x: u64, filter_trivial: bool) -> Result<CollisionReport> {
    if x > stored_bound(t) {
        return Err(Error::Incomplete(format!(
            "form {}.{}: coefficients stored only up to n = {}",
            t.level,
            t.orbit,
            t.max_n()
        )));
    }
    let mut groups: BTreeMap<&Elem, Vec<u64>> = BTreeMap::new();
    for (n, v) in t.rows().take_while(|(n, _)| *n < x) {
        groups.entry(v).or_default().push(n);
    }
    let (zero, one) = (field.from_int(0), field.one());
    let mut pairs = Vec::new();
    let mut classes = Vec::new();
    for (v, ns) in groups {
        if ns.len() < 2 {
            continue;
        }
        if filter_trivial && (*v == zero || *v == one) {
            classes.push(ValueClass { value: v.clone(), indices: ns });
            continue;
        }
        let norm = field.norm(v);
        for (i, &n) in ns.iter().enumerate() {
            for &m in &ns[i + 1..] {
                if filter_trivial && implied(t, n, m) {
                    continue;
                }
                pairs.push(CollisionPair { n, m, value: v.clone(), norm: norm.clone() });
            }
        }
    }
    pairs.sort_by_key(|p| (p.n, p.m));
    Ok(CollisionReport { pairs, classes })
}

/// Primes l <= ell_max with N(p + 1 - a_p) divisible by l at every stored
/// prime p != N. For quadratic fields N(p + 1 - a_p) is
/// (p+1)^2 - (p+1) Tr(a_p) + N(a_p).
pub fn eisenstein_scan(field: &NumberField, t: &CoefficientTable, ell_max: u64) -> Vec<u64> {
    let mut g = BigInt::zero();
    for (p, v) in t.rows() {
        if p == t.level || !is_prime_u64(p) {
            continue;
        }
        let shifted = field.sub(&field.from_int(p as i64 + 1), v);
        g = g.gcd(&field.norm(&shifted));
        if g.is_one() {
            return Vec::new();
        }
    }
    if g.is_zero() {
        // no evidence at all
        return Vec::new();
    }
    (2..=ell_max).filter(|&l| is_prime_u64(l) && (&g % BigInt::from(l)).is_zero()).collect()
}

/// x is in 2 O_K iff x/2 is integral, i.e. the characteristic polynomial of
/// x has c_{n-i} divisible by 2^i.
pub fn divisible_by_two(field: &NumberField, x: &[BigInt]) -> bool {
    let n = field.degree();
    let cp = field.charpoly(x);
    (1..=n).all(|i| (cp.coeff(n - i) % (BigInt::one() << i)).is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mod2Pattern {
    /// Primes p != N with a_p = 1 in O_K/(2).
    pub ones: Vec<u64>,
    /// Number of primes p != N with a_p = 0 in O_K/(2).
    pub zeros: u64,
    pub others: u64,
    /// a_p = 1 mod 2 exactly when p = 2.
    pub flagged: bool,
}

pub fn mod2_pattern(field: &NumberField, t: &CoefficientTable) -> Mod2Pattern {
    let one = field.one();
    let (mut ones, mut zeros, mut others) = (Vec::new(), 0, 0);
    for (p, v) in t.rows() {
        if p == t.level || !is_prime_u64(p) {
            continue;
        }
        if divisible_by_two(field, &field.sub(v, &one)) {
            ones.push(p);
        } else if divisible_by_two(field, v) {
            zeros += 1;
        } else {
            others += 1;
        }
    }
    let flagged = ones == [2];
    Mod2Pattern { ones, zeros, others, flagged }
}

/// Branches of the conjectural growth rates for forms without CM.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MurtyCase {
    /// pi_{f,a} for a fixed value a, in a field of the given degree.
    FixedValue { field_degree: usize },
    /// pi_{f,M} for a subfield M of K_f.
    Subfield { field_degree: usize, subfield_degree: usize },
}

/// Reference growth value at x for the given case.
pub fn murty_reference(case: MurtyCase, x: f64) -> Result<f64> {
    if !(x > std::f64::consts::E) {
        return Err(Error::arg("x must exceed e"));
    }
    let sqrt_log = x.sqrt() / x.ln();
    let loglog = x.ln().ln();
    Ok(match case {
        MurtyCase::FixedValue { field_degree: 0 } => return Err(Error::arg("field degree must be positive")),
        MurtyCase::FixedValue { field_degree: 1 } => sqrt_log,
        MurtyCase::FixedValue { field_degree: 2 } => loglog,
        MurtyCase::FixedValue { .. } => 1.0,
        MurtyCase::Subfield { field_degree: k, subfield_degree: m } => {
            if k == 0 || m == 0 || k % m != 0 {
                return Err(Error::arg(format!("no subfield of degree {m} in a field of degree {k}")));
            }
            match (k, m) {
                _ if k == m => x / x.ln(),
                (2, 1) => sqrt_log,
                (3, 1) | (4, 2) => loglog,
                _ => 1.0,
            }
        }
    })
}

/// forms * Prob(Pois(mean) = k) for k = 0..=k_max.
pub fn poisson_expected_histogram(mean: f64, forms: u64, k_max: u64) -> Result<Vec<f64>> {
    if !(mean >= 0.0) || !mean.is_finite() {
        return Err(Error::arg("mean must be finite and non-negative"));
    }
    Ok((0..=k_max)
        .map(|k| {
            let p = if mean == 0.0 { if k == 0 { 1.0 } else { 0.0 } } else { ln_pmf(mean, k).exp() };
            forms as f64 * p
        })
        .collect())
}

/// Norm of a value, for display.
pub fn value_norm(field: &NumberField, v: &FourierValue) -> BigInt {
    field.norm(&v.coords)
}

/// Sum over k of k * C_f(x; k); equals the number of primes below x.
pub fn histogram_mass(h: &BTreeMap<u64, u64>) -> u64 {
    h.iter().map(|(k, c)| k * c).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_f_branches() {
        assert_eq!(x_f(10169), 8196.0);
        assert!((x_f(63607) - 63608.0 / 6.0).abs() < 1e-9);
        assert_eq!(x_f(2), 8196.0);
    }

    #[test]
    fn murty_fixed_rational() {
        let v = murty_reference(MurtyCase::FixedValue { field_degree: 1 }, 1e4).unwrap();
        assert!((v - 10.857).abs() < 1e-3);
    }
}

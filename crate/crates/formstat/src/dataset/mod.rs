//! Newform catalogs: loading, validation, queries and the raw counting
//! statistics the analyses consume.

mod coeffs;
mod io;
mod record;
mod remote;

pub use coeffs::CoefficientTable;
pub use io::{
    convert_adhoc, format_poly, parse_curves, parse_forms, parse_poly, parse_subfields, write_forms, write_subfields,
    CurveEntry, FORMS_HEADER, SUBFIELDS_HEADER,
};
pub use record::{degree_of_disc, disc_allowed, Degree, NewformRecord, Sign, Subfield, DISCRIMINANTS};
pub use remote::{fetch_remote, RemoteConfig};

use crate::arith::primes::catalog_primes;
use crate::error::{Error, Result};
use crate::numfield::Elem;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

/// An immutable, ordered collection of records with a lazily loaded
/// coefficient store.
#[derive(Debug)]
pub struct Catalog {
    records: Vec<NewformRecord>,
    index: HashMap<(u64, u32), usize>,
    provenance: String,
    coeff_dir: Option<PathBuf>,
    coeff_cache: Mutex<HashMap<(u64, u32), Arc<CoefficientTable>>>,
}

impl Catalog {
    /// Build from records; sorts by (level, orbit) and rejects duplicates.
    pub fn from_records(mut records: Vec<NewformRecord>, provenance: impl Into<String>) -> Result<Self> {
        records.sort_by_key(|r| r.key());
        let mut index = HashMap::with_capacity(records.len());
        for (i, r) in records.iter().enumerate() {
            if index.insert(r.key(), i).is_some() {
                return Err(Error::Validation(format!("duplicate record level {} orbit {}", r.level, r.orbit)));
            }
        }
        Ok(Catalog {
            records,
            index,
            provenance: provenance.into(),
            coeff_dir: None,
            coeff_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn empty() -> Self {
        Self::from_records(Vec::new(), "empty").expect("no duplicates")
    }

    /// Directory holding one coefficient file per orbit, named
    /// `{level}.{orbit}.txt`.
    pub fn with_coefficient_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.coeff_dir = Some(dir.into());
        self
    }

    /// Attach subfield sidecar entries, validating each embedding.
    pub fn attach_subfields(&mut self, entries: Vec<((u64, u32), Subfield)>) -> Result<()> {
        for (key, sf) in entries {
            let i = *self
                .index
                .get(&key)
                .ok_or_else(|| Error::Validation(format!("subfield for unknown record {key:?}")))?;
            let rec = &mut self.records[i];
            let field = rec.field()?;
            sf.validate(&field).map_err(|e| Error::Validation(format!("record {key:?}: {e}")))?;
            rec.subfields.push(sf);
        }
        Ok(())
    }

    /// Insert a coefficient table directly (validated against the record).
    pub fn insert_coefficients(&self, table: CoefficientTable) -> Result<()> {
        let key = (table.level, table.orbit);
        let rec = self.get(key.0, key.1).ok_or_else(|| Error::Validation(format!("no record {key:?}")))?;
        table.validate(&rec.field()?, rec.al_sign.as_i64())?;
        self.coeff_cache.lock().expect("coefficient cache poisoned").insert(key, Arc::new(table));
        Ok(())
    }

    pub fn records(&self) -> &[NewformRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn get(&self, level: u64, orbit: u32) -> Option<&NewformRecord> {
        self.index.get(&(level, orbit)).map(|&i| &self.records[i])
    }

    pub fn at_level(&self, level: u64) -> impl Iterator<Item = &NewformRecord> {
        let start = self.records.partition_point(|r| r.level < level);
        self.records[start..].iter().take_while(move |r| r.level == level)
    }

    /// Records matching the filter, in (level, orbit) order.
    pub fn query<'a>(&'a self, f: &'a Filter) -> impl Iterator<Item = &'a NewformRecord> + 'a {
        self.records.iter().filter(move |r| f.matches(r))
    }

    /// Coefficient table for an orbit, loaded on first use.
    pub fn coefficients(&self, level: u64, orbit: u32) -> Result<Arc<CoefficientTable>> {
        let key = (level, orbit);
        if let Some(t) = self.coeff_cache.lock().expect("coefficient cache poisoned").get(&key) {
            return Ok(t.clone());
        }
        let rec = self.get(level, orbit).ok_or_else(|| Error::arg(format!("no record {key:?}")))?;
        let deg = rec.degree.finite().ok_or_else(|| Error::arg("large orbits carry no coefficients"))?;
        let dir = self.coeff_dir.as_ref().ok_or_else(|| Error::Config("no coefficient directory configured".into()))?;
        let path = coefficient_path(dir, level, orbit);
        let file = std::fs::File::open(&path)
            .map_err(|e| Error::Incomplete(format!("coefficients for {level}.{orbit} ({}): {e}", path.display())))?;
        let table = CoefficientTable::parse(level, orbit, deg, std::io::BufReader::new(file))?;
        table.validate(&rec.field()?, rec.al_sign.as_i64())?;
        let table = Arc::new(table);
        self.coeff_cache.lock().expect("coefficient cache poisoned").insert(key, table.clone());
        Ok(table)
    }

    /// Canonical CSV of the forms catalog.
    pub fn to_csv(&self) -> String {
        write_forms(&self.records)
    }

    /// Canonical subfield sidecar for every record carrying subfields.
    pub fn subfields_csv(&self) -> String {
        let entries: Vec<_> = self.records.iter().flat_map(|r| r.subfields.iter().map(move |s| (r.key(), s))).collect();
        write_subfields(&entries)
    }
}

pub fn coefficient_path(dir: &Path, level: u64, orbit: u32) -> PathBuf {
    dir.join(format!("{level}.{orbit}.txt"))
}

/// Load a canonical forms file, plus the `subfields.csv` sidecar and
/// `coeffs/` directory when they sit next to it.
pub fn parse_catalog(path: impl AsRef<Path>) -> Result<Catalog> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)?;
    let records = parse_forms(std::io::BufReader::new(file))?;
    let mut cat = Catalog::from_records(records, path.display().to_string())?;
    if let Some(dir) = path.parent() {
        let side = dir.join("subfields.csv");
        if side.exists() {
            cat.attach_subfields(parse_subfields(std::fs::File::open(side)?)?)?;
        }
        let coeffs = dir.join("coeffs");
        if coeffs.is_dir() {
            cat = cat.with_coefficient_dir(coeffs);
        }
    }
    Ok(cat)
}

/// Record filter for C_{d,disc,w}(X). Absent fields match everything; large
/// orbits are excluded unless requested.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Filter {
    pub degree: Option<usize>,
    pub disc: Option<u64>,
    pub sign: Option<Sign>,
    /// Exclusive lower level bound.
    pub min_level: Option<u64>,
    /// Exclusive upper level bound.
    pub max_level: Option<u64>,
    pub include_large: bool,
}

impl Filter {
    pub fn degree(mut self, d: usize) -> Self {
        self.degree = Some(d);
        self
    }

    pub fn disc(mut self, d: u64) -> Self {
        self.disc = Some(d);
        self
    }

    pub fn sign(mut self, s: Sign) -> Self {
        self.sign = Some(s);
        self
    }

    pub fn above(mut self, x: u64) -> Self {
        self.min_level = Some(x);
        self
    }

    pub fn below(mut self, x: u64) -> Self {
        self.max_level = Some(x);
        self
    }

    pub fn matches(&self, r: &NewformRecord) -> bool {
        if r.is_large() && !self.include_large {
            return false;
        }
        self.degree.is_none_or(|d| r.degree.finite() == Some(d))
            && self.disc.is_none_or(|d| r.disc == Some(d))
            && self.sign.is_none_or(|s| r.al_sign == s)
            && self.min_level.is_none_or(|m| r.level > m)
            && self.max_level.is_none_or(|m| r.level < m)
    }
}

/// C_{d,disc,w}(X): records with level < X matching the filter.
pub fn count(catalog: &Catalog, filter: &Filter, x: u64) -> Result<u64> {
    if x < 2 {
        return Err(Error::arg("level bound X must be at least 2"));
    }
    let f = Filter { max_level: Some(filter.max_level.map_or(x, |m| m.min(x))), ..filter.clone() };
    Ok(catalog.query(&f).count() as u64)
}

/// Number of orbits of discriminant `disc` at each prime of the statistics
/// range, aligned with `catalog_primes().stats_range()`.
pub fn disc_counts(catalog: &Catalog, disc: u64) -> Vec<u32> {
    let primes = catalog_primes().stats_range();
    let mut counts = vec![0u32; primes.len()];
    let f = Filter::default().disc(disc).above(crate::RANGE_LO).below(crate::RANGE_HI);
    for r in catalog.query(&f) {
        if let Ok(i) = primes.binary_search(&r.level) {
            counts[i] += 1;
        }
    }
    counts
}

/// Q(disc, k) for k = 0, 1, ..., max observed.
pub fn q_table(catalog: &Catalog, disc: u64) -> Result<Vec<u64>> {
    if degree_of_disc(disc).is_none() {
        return Err(Error::arg(format!("discriminant {disc} is not a listed field discriminant")));
    }
    let mut q = Vec::new();
    for c in disc_counts(catalog, disc) {
        let c = c as usize;
        if q.len() <= c {
            q.resize(c + 1, 0);
        }
        q[c] += 1;
    }
    Ok(q)
}

/// Q(disc, k): primes of the statistics range with exactly k orbits of
/// discriminant `disc`.
pub fn q_count(catalog: &Catalog, disc: u64, k: usize) -> Result<u64> {
    Ok(q_table(catalog, disc)?.get(k).copied().unwrap_or(0))
}

/// Delta_d(X) = C_{d,+}(X) - C_{d,-}(X).
pub fn sign_imbalance(catalog: &Catalog, d: usize, x: u64) -> Result<i64> {
    if !(1..=6).contains(&d) {
        return Err(Error::arg(format!("degree {d} outside 1..6")));
    }
    let plus = count(catalog, &Filter::default().degree(d).sign(Sign::Plus), x)? as i64;
    let minus = count(catalog, &Filter::default().degree(d).sign(Sign::Minus), x)? as i64;
    Ok(plus - minus)
}

/// Running values of Delta_d(X) - Delta_d(10^4), one point per level above
/// 10^4 carrying a degree-d form not rejected by `skip`.
pub fn sign_imbalance_series(
    catalog: &Catalog,
    d: usize,
    skip: impl Fn(&NewformRecord) -> bool,
) -> Vec<(u64, i64)> {
    let mut out: Vec<(u64, i64)> = Vec::new();
    let mut acc = 0i64;
    for r in catalog.query(&Filter::default().degree(d).above(crate::RANGE_LO)) {
        if skip(r) {
            continue;
        }
        acc += r.al_sign.as_i64();
        match out.last_mut() {
            Some(last) if last.0 == r.level => last.1 = acc,
            _ => out.push((r.level, acc)),
        }
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Reconciliation {
    /// Prime conductors whose curve has no degree-1 form with matching sign.
    pub curves_without_form: Vec<u64>,
    /// Degree-1 forms with no curve of that conductor.
    pub forms_without_curve: Vec<(u64, u32)>,
    /// Levels where a curve and a form are present but the signs disagree.
    pub sign_mismatches: Vec<u64>,
    /// Curves skipped for composite conductor or level outside the catalog.
    pub skipped: usize,
}

impl Reconciliation {
    pub fn is_clean(&self) -> bool {
        self.curves_without_form.is_empty() && self.forms_without_curve.is_empty() && self.sign_mismatches.is_empty()
    }
}

/// Match isogeny classes of prime conductor against degree-1 records, with
/// root number = -w_p. Only conductors below `x` are considered.
pub fn reconcile_curves(catalog: &Catalog, curves: &[CurveEntry], x: u64) -> Reconciliation {
    let mut by_level: BTreeMap<u64, (Vec<i64>, Vec<(u32, i64)>)> = BTreeMap::new();
    let mut rep = Reconciliation::default();
    for c in curves {
        if c.conductor >= x || !crate::arith::primality::is_prime_u64(c.conductor) {
            rep.skipped += 1;
            continue;
        }
        by_level.entry(c.conductor).or_default().0.push(c.root_number);
    }
    for r in catalog.query(&Filter::default().degree(1).below(x)) {
        by_level.entry(r.level).or_default().1.push((r.orbit, r.root_number()));
    }
    for (level, (mut curves, mut forms)) in by_level {
        // pair equal root numbers first
        curves.sort();
        forms.sort_by_key(|f| f.1);
        let mut unmatched_forms = Vec::new();
        for f in forms.drain(..) {
            if let Some(i) = curves.iter().position(|&c| c == f.1) {
                curves.remove(i);
            } else {
                unmatched_forms.push(f);
            }
        }
        let paired = curves.len().min(unmatched_forms.len());
        for _ in 0..paired {
            rep.sign_mismatches.push(level);
        }
        for _ in paired..curves.len() {
            rep.curves_without_form.push(level);
        }
        for f in unmatched_forms.into_iter().skip(paired) {
            rep.forms_without_curve.push((level, f.0));
        }
    }
    rep
}

/// Renumber orbits within each level by ascending coefficient vectors
/// a(2), a(3), ... (coordinates compared lexicographically); records without
/// a key keep their relative order after keyed ones.
pub fn assign_orbits(records: &mut [NewformRecord], keys: &HashMap<(u64, u32), Vec<Elem>>) {
    records.sort_by(|a, b| {
        a.level.cmp(&b.level).then_with(|| match (keys.get(&a.key()), keys.get(&b.key())) {
            (Some(x), Some(y)) => x.cmp(y),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => a.orbit.cmp(&b.orbit),
        })
    });
    let mut level = 0;
    let mut next = 0;
    for r in records.iter_mut() {
        if r.level != level {
            level = r.level;
            next = 0;
        }
        next += 1;
        r.orbit = next;
    }
}

//! Canonical on-disk formats: the forms catalog, the subfields sidecar, the
//! elliptic-curve list, and a converter for loosely formatted CSVs.

use super::record::{Degree, NewformRecord, Sign, Subfield};
use crate::arith::intpoly::IntPoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::HashMap;
use std::io::Read;

pub const FORMS_HEADER: &str = "level,orbit,degree,disc,al_sign,field_poly";
pub const SUBFIELDS_HEADER: &str = "level,orbit,subfield_poly,embedding";

pub fn parse_poly(s: &str) -> std::result::Result<IntPoly, String> {
    let c: std::result::Result<Vec<BigInt>, _> = s.split(';').map(|t| t.trim().parse::<BigInt>()).collect();
    let c = c.map_err(|e| format!("polynomial {s:?}: {e}"))?;
    Ok(IntPoly::new(c))
}

pub fn format_poly(p: &IntPoly) -> String {
    p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(";")
}

fn reader(r: impl Read) -> csv::Reader<impl Read> {
    csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(r)
}

fn check_header(rdr: &mut csv::Reader<impl Read>, expected: &str) -> Result<()> {
    let h = rdr.headers().map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?;
    let got = h.iter().collect::<Vec<_>>().join(",");
    if got != expected {
        return Err(Error::Parse { line: 1, msg: format!("header {got:?}, expected {expected:?}") });
    }
    Ok(())
}

fn line_of(rec: &csv::StringRecord) -> usize {
    rec.position().map(|p| p.line() as usize).unwrap_or(0)
}

/// Parse the forms catalog. Records are validated individually; an empty
/// input yields no records.
pub fn parse_forms(r: impl Read) -> Result<Vec<NewformRecord>> {
    let mut buf = String::new();
    let mut r = r;
    r.read_to_string(&mut buf)?;
    if buf.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut rdr = reader(buf.as_bytes());
    check_header(&mut rdr, FORMS_HEADER)?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse {
            line: e.position().map(|p| p.line() as usize).unwrap_or(0),
            msg: e.to_string(),
        })?;
        let line = line_of(&rec);
        let perr = |msg: String| Error::Parse { line, msg };
        if rec.len() != 6 {
            return Err(perr(format!("expected 6 fields, found {}", rec.len())));
        }
        let level: u64 = rec[0].parse().map_err(|e| perr(format!("level: {e}")))?;
        let orbit: u32 = rec[1].parse().map_err(|e| perr(format!("orbit: {e}")))?;
        let degree = match &rec[2] {
            "large" => Degree::Large,
            s => Degree::Finite(s.parse().map_err(|e| perr(format!("degree: {e}")))?),
        };
        let disc = match &rec[3] {
            "" => None,
            s => Some(s.parse().map_err(|e| perr(format!("disc: {e}")))?),
        };
        let sign: i64 = rec[4].parse().map_err(|e| perr(format!("al_sign: {e}")))?;
        let al_sign = Sign::from_i64(sign).ok_or_else(|| perr(format!("al_sign must be 1 or -1, got {sign}")))?;
        let field_poly = match &rec[5] {
            "" => None,
            s => Some(parse_poly(s).map_err(perr)?),
        };
        let r = NewformRecord { level, orbit, degree, disc, al_sign, field_poly, subfields: Vec::new() };
        r.validate()?;
        out.push(r);
    }
    Ok(out)
}

/// Canonical serialization: header, then one line per record in the given
/// order, LF line endings.
pub fn write_forms(records: &[NewformRecord]) -> String {
    let mut s = String::with_capacity(32 * records.len() + 64);
    s.push_str(FORMS_HEADER);
    s.push('\n');
    for r in records {
        let disc = r.disc.map(|d| d.to_string()).unwrap_or_default();
        let poly = r.field_poly.as_ref().map(format_poly).unwrap_or_default();
        s.push_str(&format!("{},{},{},{},{},{}\n", r.level, r.orbit, r.degree, disc, r.al_sign.as_i64(), poly));
    }
    s
}

/// Subfield sidecar row: embedding is `den:m00;m01;...` (row-major, one row
/// per power of the subfield generator), or without `den:` for denominator 1.
pub fn parse_subfields(r: impl Read) -> Result<Vec<((u64, u32), Subfield)>> {
    let mut rdr = reader(r);
    check_header(&mut rdr, SUBFIELDS_HEADER)?;
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
        let line = line_of(&rec);
        let perr = |msg: String| Error::Parse { line, msg };
        if rec.len() != 4 {
            return Err(perr(format!("expected 4 fields, found {}", rec.len())));
        }
        let level: u64 = rec[0].parse().map_err(|e| perr(format!("level: {e}")))?;
        let orbit: u32 = rec[1].parse().map_err(|e| perr(format!("orbit: {e}")))?;
        let poly = parse_poly(&rec[2]).map_err(perr)?;
        let (den, body) = match rec[3].split_once(':') {
            Some((d, b)) => (d.trim().parse::<BigInt>().map_err(|e| perr(format!("denominator: {e}")))?, b),
            None => (BigInt::one(), &rec[3]),
        };
        let flat: Vec<BigInt> = body
            .split(';')
            .map(|t| t.trim().parse::<BigInt>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| perr(format!("embedding: {e}")))?;
        let e = poly.degree().unwrap_or(0);
        if e == 0 || flat.len() % e != 0 {
            return Err(perr(format!("embedding has {} entries, not a multiple of {e}", flat.len())));
        }
        let n = flat.len() / e;
        let rows = flat.chunks(n).map(|c| c.to_vec()).collect();
        out.push(((level, orbit), Subfield { poly, rows, denominator: den }));
    }
    Ok(out)
}

pub fn write_subfields(entries: &[((u64, u32), &Subfield)]) -> String {
    let mut s = String::from(SUBFIELDS_HEADER);
    s.push('\n');
    for ((level, orbit), sf) in entries {
        let flat: Vec<String> = sf.rows.iter().flatten().map(|x| x.to_string()).collect();
        let emb = if sf.denominator.is_one() {
            flat.join(";")
        } else {
            format!("{}:{}", sf.denominator, flat.join(";"))
        };
        s.push_str(&format!("{level},{orbit},{},{emb}\n", format_poly(&sf.poly)));
    }
    s
}

/// One line of a curves list. `index` distinguishes isogeny classes sharing a
/// conductor when the source provides it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveEntry {
    pub conductor: u64,
    pub root_number: i64,
    pub index: Option<u32>,
}

/// Parse `conductor,root_number[,index]`.
pub fn parse_curves(r: impl Read) -> Result<Vec<CurveEntry>> {
    let mut rdr = reader(r);
    let h = rdr.headers().map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?.clone();
    let cols: Vec<&str> = h.iter().collect();
    if cols.len() < 2 || cols[0] != "conductor" || cols[1] != "root_number" || (cols.len() == 3 && cols[2] != "index") || cols.len() > 3 {
        return Err(Error::Parse { line: 1, msg: format!("unexpected curves header {cols:?}") });
    }
    let mut out = Vec::new();
    let mut seen = HashMap::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
        let line = line_of(&rec);
        let perr = |msg: String| Error::Parse { line, msg };
        let conductor: u64 = rec[0].parse().map_err(|e| perr(format!("conductor: {e}")))?;
        let root_number: i64 = rec[1].parse().map_err(|e| perr(format!("root_number: {e}")))?;
        if root_number.abs() != 1 {
            return Err(perr(format!("root number {root_number}")));
        }
        let index = match rec.get(2) {
            Some(s) if !s.is_empty() => Some(s.parse().map_err(|e| perr(format!("index: {e}")))?),
            _ => None,
        };
        if let Some(i) = index {
            if let Some(prev) = seen.insert((conductor, i), line) {
                return Err(Error::Validation(format!(
                    "curve {conductor} index {i} listed on lines {prev} and {line}"
                )));
            }
        }
        out.push(CurveEntry { conductor, root_number, index });
    }
    Ok(out)
}

/// Convert a loosely formatted forms CSV into records. Recognised column
/// names (case-insensitive): level/label, degree/dim, disc/field_disc,
/// al_sign/fricke/sign, field_poly/poly. Polynomials may be written `c0;c1`,
/// `[c0,c1]` or `c0,c1` inside quotes. Orbits are numbered per level in
/// input order; use [`super::assign_orbits`] to renumber by coefficients.
pub fn convert_adhoc(r: impl Read) -> Result<Vec<NewformRecord>> {
    let mut rdr = reader(r);
    let h = rdr.headers().map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?.clone();
    let find = |names: &[&str]| h.iter().position(|c| names.iter().any(|n| c.eq_ignore_ascii_case(n)));
    let need = |names: &[&str]| {
        find(names).ok_or_else(|| Error::Parse { line: 1, msg: format!("no column named any of {names:?}") })
    };
    let c_level = need(&["level", "label", "N"])?;
    let c_deg = need(&["degree", "dim", "deg"])?;
    let c_disc = find(&["disc", "field_disc", "discriminant"]);
    let c_sign = need(&["al_sign", "fricke", "sign", "fricke_eigenval"])?;
    let c_poly = find(&["field_poly", "poly", "hecke_poly"]);
    let mut out: Vec<NewformRecord> = Vec::new();
    let mut next_orbit: HashMap<u64, u32> = HashMap::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse { line: 0, msg: e.to_string() })?;
        let line = line_of(&rec);
        let perr = |msg: String| Error::Parse { line, msg };
        let level_s = rec[c_level].split('.').next().unwrap_or("");
        let level: u64 = level_s.parse().map_err(|e| perr(format!("level {level_s:?}: {e}")))?;
        let deg_s = &rec[c_deg];
        let degree = if deg_s.eq_ignore_ascii_case("large") {
            Degree::Large
        } else {
            Degree::Finite(deg_s.parse().map_err(|e| perr(format!("degree: {e}")))?)
        };
        let disc = match c_disc.map(|c| rec[c].trim_start_matches('-')) {
            None | Some("") => None,
            Some(s) => Some(s.parse().map_err(|e| perr(format!("disc: {e}")))?),
        };
        let sign: i64 = rec[c_sign].trim_start_matches('+').parse().map_err(|e| perr(format!("sign: {e}")))?;
        let al_sign = Sign::from_i64(sign).ok_or_else(|| perr(format!("sign {sign}")))?;
        let field_poly = match c_poly.map(|c| rec[c].trim_matches(|ch| ch == '[' || ch == ']').replace(',', ";")) {
            None => None,
            Some(s) if s.is_empty() => None,
            Some(s) => Some(parse_poly(&s).map_err(perr)?),
        };
        let disc = match (degree, disc) {
            (Degree::Finite(1), None) => Some(1),
            (_, d) => d,
        };
        let field_poly = match (degree, field_poly) {
            (Degree::Finite(1), None) => Some(IntPoly::x()),
            (_, p) => p,
        };
        let o = next_orbit.entry(level).or_insert(0);
        *o += 1;
        let r = NewformRecord { level, orbit: *o, degree, disc, al_sign, field_poly, subfields: Vec::new() };
        r.validate()?;
        out.push(r);
    }
    Ok(out)
}

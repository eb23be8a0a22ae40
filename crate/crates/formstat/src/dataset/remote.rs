//! Client for an HTTP endpoint serving catalog records as JSON, with a local
//! cache of canonical CSV files.

use super::io::{parse_forms, parse_poly, write_forms};
use super::record::{Degree, NewformRecord, Sign};
use super::Catalog;
use crate::error::{Error, Result};
use serde::Deserialize;
use std::path::PathBuf;
use std::time::Duration;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "FORMSTAT_CACHE_DIR";

#[derive(Debug, Clone)]
pub struct RemoteConfig {
    pub base_url: String,
    pub cache_dir: Option<PathBuf>,
    pub offline: bool,
    /// Attempts after the first one, for retryable failures.
    pub retries: u32,
    pub timeout: Duration,
    pub backoff: Duration,
}

impl RemoteConfig {
    pub fn new(base_url: impl Into<String>) -> Self {
        RemoteConfig {
            base_url: base_url.into(),
            cache_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
            offline: false,
            retries: 3,
            timeout: Duration::from_secs(30),
            backoff: Duration::from_millis(200),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum JsonDegree {
    Num(u8),
    Text(String),
}

#[derive(Debug, Deserialize)]
struct JsonRecord {
    level: u64,
    orbit: u32,
    degree: JsonDegree,
    disc: Option<u64>,
    al_sign: i64,
    field_poly: Option<String>,
}

impl JsonRecord {
    fn into_record(self) -> Result<NewformRecord> {
        let bad = |m: String| Error::Validation(format!("remote record {}.{}: {m}", self.level, self.orbit));
        let degree = match &self.degree {
            JsonDegree::Num(d) => Degree::Finite(*d),
            JsonDegree::Text(s) if s == "large" => Degree::Large,
            JsonDegree::Text(s) => return Err(bad(format!("degree {s:?}"))),
        };
        let al_sign = Sign::from_i64(self.al_sign).ok_or_else(|| bad(format!("al_sign {}", self.al_sign)))?;
        let field_poly = match self.field_poly.as_deref() {
            None | Some("") => None,
            Some(s) => Some(parse_poly(s).map_err(bad)?),
        };
        let r = NewformRecord {
            level: self.level,
            orbit: self.orbit,
            degree,
            disc: self.disc,
            al_sign,
            field_poly,
            subfields: Vec::new(),
        };
        r.validate()?;
        Ok(r)
    }
}

fn cache_path(cfg: &RemoteConfig, lo: u64, hi: u64) -> Option<PathBuf> {
    cfg.cache_dir.as_ref().map(|d| d.join(format!("forms_{lo}_{hi}.csv")))
}

fn get_with_retries(cfg: &RemoteConfig, url: &str) -> Result<String> {
    let agent: ureq::Agent = ureq::Agent::config_builder().timeout_global(Some(cfg.timeout)).build().into();
    let mut last = String::new();
    for attempt in 0..=cfg.retries {
        if attempt > 0 {
            std::thread::sleep(cfg.backoff * 2u32.saturating_pow(attempt - 1));
        }
        match agent.get(url).call() {
            Ok(mut resp) => {
                return resp.body_mut().read_to_string().map_err(|e| Error::Transport(format!("{url}: {e}")));
            }
            Err(ureq::Error::StatusCode(code)) if code < 500 => {
                return Err(Error::Transport(format!("{url}: http status {code}")));
            }
            Err(e) => last = e.to_string(),
        }
    }
    Err(Error::Transport(format!("{url}: giving up after {} attempts: {last}", cfg.retries + 1)))
}

/// Fetch records with min_level <= level <= max_level. Results are cached as
/// canonical CSV; in offline mode only the cache is consulted.
pub fn fetch_remote(cfg: &RemoteConfig, min_level: u64, max_level: u64) -> Result<Catalog> {
    if min_level > max_level {
        return Ok(Catalog::empty());
    }
    let cached = cache_path(cfg, min_level, max_level);
    if cfg.offline {
        return match cached {
            Some(p) if p.exists() => {
                let recs = parse_forms(std::fs::File::open(&p)?)?;
                Catalog::from_records(recs, format!("cache:{}", p.display()))
            }
            _ => Err(Error::Transport("offline and no cached copy of the requested range".into())),
        };
    }
    let url = format!("{}/forms?min_level={min_level}&max_level={max_level}", cfg.base_url.trim_end_matches('/'));
    let body = get_with_retries(cfg, &url)?;
    let raw: Vec<JsonRecord> =
        serde_json::from_str(&body).map_err(|e| Error::Validation(format!("unexpected response schema: {e}")))?;
    let records = raw.into_iter().map(JsonRecord::into_record).collect::<Result<Vec<_>>>()?;
    let cat = Catalog::from_records(records, url)?;
    if let Some(p) = cached {
        if let Some(dir) = p.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(&p, write_forms(cat.records()))?;
    }
    Ok(cat)
}

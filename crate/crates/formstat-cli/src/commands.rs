use crate::artifacts::Artifacts;
use crate::{CliError, DimMode, RunConfig};
use clap::{Args, Subcommand, ValueEnum};
use formstat::alsigns::{self, DimPolicy, DimProvider};
use formstat::arith::intpoly::IntPoly;
use formstat::arith::primes::catalog_primes;
use formstat::collisions;
use formstat::dataset::{
    self, convert_adhoc, count, disc_counts, fetch_remote, parse_catalog, parse_curves, parse_poly, reconcile_curves,
    write_forms, Catalog, Degree, Filter, RemoteConfig, Sign, DISCRIMINANTS,
};
use formstat::fitmodels::{self, PoissonData};
use formstat::genus2;
use formstat::heckepoly::{self, RootDomain};
use formstat::hilbert;
use formstat::langtrotter as lt;
use formstat::numfield::NumberField;
use formstat::{Error, RANGE_HI, RANGE_LO};
use num_bigint::BigInt;
use serde::Serialize;
use std::path::{Path, PathBuf};

type Result<T> = std::result::Result<T, CliError>;

fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

fn bad_arg(m: String) -> CliError {
    CliError::Lib(Error::InvalidArgument(m))
}

fn parse_int_poly(s: &str) -> Result<IntPoly> {
    parse_poly(s).map_err(|e| bad_arg(format!("polynomial {s:?}: {e}")))
}

fn load_catalog(cfg: &RunConfig, art: &mut Artifacts) -> Result<Catalog> {
    if let Some(p) = &cfg.catalog {
        art.input(p);
        if let Some(dir) = p.parent() {
            art.input(dir.join("subfields.csv"));
        }
        return Ok(parse_catalog(p)?);
    }
    if cfg.remote.is_some() || cfg.offline {
        let rc = remote_config(cfg);
        return Ok(fetch_remote(&rc, 2, RANGE_HI - 1)?);
    }
    Err(usage("no catalog given: pass --catalog or --remote"))
}

fn remote_config(cfg: &RunConfig) -> RemoteConfig {
    let mut rc = RemoteConfig::new(cfg.remote.clone().unwrap_or_default());
    rc.offline = cfg.offline;
    if let Some(d) = &cfg.cache_dir {
        rc.cache_dir = Some(d.clone());
    }
    rc
}

fn dims(cfg: &RunConfig) -> DimProvider {
    match cfg.dim_mode {
        DimMode::Exact => DimProvider::new(DimPolicy::Exact, RANGE_HI),
        DimMode::Approximate => DimProvider::approximate(),
    }
}

fn gnuplot(title: &str, data: &str, using: &str, log: bool) -> String {
    let mut s = format!("set datafile separator ','\nset key off\nset title '{title}'\n");
    if log {
        s.push_str("set logscale xy\n");
    }
    s.push_str(&format!("plot '{data}' every ::1 using {using} with lines\n"));
    s
}

pub fn dispatch(cmd: &crate::Command, cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    use crate::Command as C;
    match cmd {
        C::Ingest(a) => ingest(a, cfg, art),
        C::Validate(a) => validate(a, cfg, art),
        C::Counts(a) => counts(a, cfg, art),
        C::Fit(a) => fit(a, cfg, art),
        C::Collisions(a) => collisions_cmd(a, cfg, art),
        C::Alsigns(a) => alsigns_cmd(a, cfg, art),
        C::Genus2(a) => genus2_cmd(a, art),
        C::Hilbert(a) => hilbert_cmd(a, art),
        C::Heckepoly(a) => heckepoly_cmd(a, art),
        C::Lt(a) => lt_cmd(a, cfg, art),
        C::Report(a) => report(a, cfg, art),
    }
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// Loosely formatted forms CSV to convert.
    #[arg(long, conflicts_with = "from_remote")]
    pub adhoc: Option<PathBuf>,
    /// Download the level range from --remote instead.
    #[arg(long)]
    pub from_remote: bool,
    #[arg(long, default_value_t = 2)]
    pub min_level: u64,
    #[arg(long, default_value_t = RANGE_HI - 1)]
    pub max_level: u64,
}

fn ingest(a: &IngestArgs, cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let cat = if let Some(p) = &a.adhoc {
        art.input(p);
        let recs = convert_adhoc(std::fs::File::open(p)?)?;
        Catalog::from_records(recs, p.display().to_string())?
    } else if a.from_remote {
        fetch_remote(&remote_config(cfg), a.min_level, a.max_level)?
    } else {
        return Err(usage("ingest needs --adhoc FILE or --from-remote"));
    };
    art.text("forms.csv", &write_forms(cat.records()))?;
    let side = cat.subfields_csv();
    if side.lines().count() > 1 {
        art.text("subfields.csv", &side)?;
    }
    println!("{} records written to {}", cat.len(), cfg.out.join("forms.csv").display());
    Ok(())
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Also validate every coefficient table found next to the catalog.
    #[arg(long)]
    pub coefficients: bool,
    /// Isogeny-class CSV (conductor,root_number[,index]) to reconcile.
    #[arg(long)]
    pub curves: Option<PathBuf>,
    /// Conductor bound for the reconciliation.
    #[arg(long = "x", default_value_t = RANGE_HI)]
    pub x: u64,
}

#[derive(Serialize)]
struct ValidationSummary {
    records: usize,
    coefficient_tables: usize,
    coefficient_tables_missing: usize,
    reconciliation: Option<dataset::Reconciliation>,
}

fn validate(a: &ValidateArgs, cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let cat = load_catalog(cfg, art)?;
    let (mut checked, mut missing) = (0, 0);
    if a.coefficients {
        for r in cat.records().iter().filter(|r| !r.is_large()) {
            match cat.coefficients(r.level, r.orbit) {
                Ok(_) => checked += 1,
                Err(Error::Incomplete(_)) => missing += 1,
                Err(e) => return Err(e.into()),
            }
        }
    }
    let reconciliation = match &a.curves {
        Some(p) => {
            art.input(p);
            let curves = parse_curves(std::fs::File::open(p)?)?;
            Some(reconcile_curves(&cat, &curves, a.x))
        }
        None => None,
    };
    let clean = reconciliation.as_ref().is_none_or(|r| r.is_clean());
    let summary = ValidationSummary {
        records: cat.len(),
        coefficient_tables: checked,
        coefficient_tables_missing: missing,
        reconciliation,
    };
    art.json("validation.json", &summary)?;
    println!("{} records valid; {checked} coefficient tables checked", cat.len());
    if !clean {
        return Err(Error::Validation("curve reconciliation found mismatches (see validation.json)".into()).into());
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CountBy {
    Degree,
    Disc,
    Sign,
}

#[derive(Debug, Args)]
pub struct CountsArgs {
    #[arg(long, value_enum, default_value_t = CountBy::Degree)]
    pub by: CountBy,
    /// Count levels below X.
    #[arg(long = "x", default_value_t = RANGE_HI)]
    pub x: u64,
}

fn count_rows(cat: &Catalog, by: CountBy, x: u64) -> Result<(Vec<&'static str>, Vec<Vec<String>>)> {
    let mut rows = Vec::new();
    let header = match by {
        CountBy::Degree => {
            for d in 1..=6 {
                rows.push(vec![d.to_string(), count(cat, &Filter::default().degree(d), x)?.to_string()]);
            }
            let large = cat.records().iter().filter(|r| r.is_large() && r.level < x).count();
            rows.push(vec![Degree::Large.to_string(), large.to_string()]);
            vec!["degree", "orbits"]
        }
        CountBy::Disc => {
            for (d, discs) in DISCRIMINANTS {
                for &disc in discs {
                    let n = count(cat, &Filter::default().degree(d).disc(disc), x)?;
                    rows.push(vec![d.to_string(), disc.to_string(), n.to_string()]);
                }
            }
            vec!["degree", "disc", "orbits"]
        }
        CountBy::Sign => {
            for d in 1..=6 {
                let p = count(cat, &Filter::default().degree(d).sign(Sign::Plus), x)?;
                let m = count(cat, &Filter::default().degree(d).sign(Sign::Minus), x)?;
                rows.push(vec![d.to_string(), p.to_string(), m.to_string(), (p as i64 - m as i64).to_string()]);
            }
            vec!["degree", "plus", "minus", "delta"]
        }
    };
    Ok((header, rows))
}

fn counts(a: &CountsArgs, cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let cat = load_catalog(cfg, art)?;
    let (header, rows) = count_rows(&cat, a.by, a.x)?;
    let name = format!("counts_{}.csv", format!("{:?}", a.by).to_lowercase());
    art.csv(&name, &header, &rows)?;
    for r in &rows {
        println!("{}", r.join("\t"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum FitCoords {
    Loglog,
    Direct,
    Poisson,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long, conflicts_with = "disc")]
    pub degree: Option<usize>,
    #[arg(long)]
    pub disc: Option<u64>,
    #[arg(long, value_enum, default_value_t = FitCoords::Loglog)]
    pub coords: FitCoords,
    /// With --coords poisson, also trace the 10^-k likelihood region.
    #[arg(long)]
    pub region: Option<u32>,
}

fn fit(a: &FitArgs, cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let cat = load_catalog(cfg, art)?;
    let filter = match (a.degree, a.disc) {
        (Some(d), None) => Filter::default().degree(d),
        (None, Some(disc)) => Filter::default().disc(disc),
        _ => return Err(usage("fit needs exactly one of --degree or --disc")),
    };
    if a.coords == FitCoords::Poisson {
        let disc = a.disc.ok_or_else(|| usage("--coords poisson needs --disc"))?;
        let primes = catalog_primes().stats_range();
        let data = PoissonData::new(primes, &disc_counts(&cat, disc))?;
        let res = fitmodels::poisson_mle(&data);
        art.json(&format!("fit_poisson_disc{disc}.json"), &res)?;
        if let Some(k) = a.region {
            let reg = fitmodels::likelihood_region(&data, &res, k)?;
            let rows: Vec<Vec<String>> = reg.boundary.iter().map(|(x, y)| vec![x.to_string(), y.to_string()]).collect();
            art.csv(&format!("region_disc{disc}_k{k}.csv"), &["a", "b"], &rows)?;
        }
        println!("a = {:.6}, b = {:.6}, loglik = {:.4}", res.a, res.b, res.objective);
        return Ok(());
    }
    let series = fitmodels::cumulative_series(cat.query(&filter.below(RANGE_HI)).map(|r| r.level));
    let res = match a.coords {
        FitCoords::Loglog => fitmodels::fit_li_loglog(&series)?,
        _ => fitmodels::fit_li_direct(&series)?,
    };
    let tag = match (a.degree, a.disc) {
        (Some(d), _) => format!("degree{d}"),
        (_, Some(d)) => format!("disc{d}"),
        _ => unreachable!(),
    };
    let rows: Vec<Vec<String>> = series
        .iter()
        .map(|&(x, c)| {
            let model = res.a * formstat::arith::log_integral(x.powf(res.b)).unwrap_or(f64::NAN);
            vec![x.to_string(), c.to_string(), format!("{model:.6}")]
        })
        .collect();
    art.csv(&format!("series_{tag}.csv"), &["x", "count", "model"], &rows)?;
    art.text(&format!("series_{tag}.gp"), &gnuplot(&tag, &format!("series_{tag}.csv"), "1:2", true))?;
    art.json(&format!("fit_{tag}.json"), &res)?;
    println!("a = {:.6}, b = {:.6}, rss = {:.6e}", res.a, res.b, res.objective);
    Ok(())
}

#[derive(Debug, Args)]
pub struct CollisionsArgs {
    #[arg(long)]
    pub disc: u64,
}

#[derive(Serialize)]
struct CollisionOut {
    disc: u64,
    fit: fitmodels::FitResult,
    rows: Vec<collisions::CollisionRow>,
}

fn collision_csv(rows: &[collisions::CollisionRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            vec![
                r.disc.to_string(),
                r.k.to_string(),
                r.observed.to_string(),
                format!("{:.4}", r.expected),
                r.rho.to_string(),
                format!("{:.4e}", r.lecam),
            ]
        })
        .collect()
}

const COLLISION_HEADER: [&str; 6] = ["disc", "k", "observed", "expected", "rho", "lecam"];

fn collisions_cmd(a: &CollisionsArgs, cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let cat = load_catalog(cfg, art)?;
    let (fit, rows) = collisions::collision_report(&cat, a.disc)?;
    art.csv(&format!("collisions_disc{}.csv", a.disc), &COLLISION_HEADER, &collision_csv(&rows))?;
    art.json(&format!("collisions_disc{}.json", a.disc), &CollisionOut { disc: a.disc, fit, rows: rows.clone() })?;
    for r in &rows {
        println!("k={} Q={} E={:.2} rho={} R={:.3e}", r.k, r.observed, r.expected, r.rho, r.lecam);
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct AlsignsArgs {
    #[arg(long)]
    pub degree: usize,
    /// Drop the degree-1 forms forced to sign -1 at levels u^2 + 64.
    #[arg(long)]
    pub exclude_sn: bool,
    /// Monte Carlo trials for the log-likelihood distribution (0 to skip).
    #[arg(long, default_value_t = 0)]
    pub trials: usize,
}

#[derive(Serialize)]
struct AlsignsOut {
    degree: usize,
    forms: usize,
    exclude_sn: bool,
    beta_mle: f64,
    loglik_at_mle: f64,
    gaussian: Option<fitmodels::FitResult>,
    sn: alsigns::SnCensus,
    monte_carlo: Option<alsigns::Moments>,
}

fn alsigns_cmd(a: &AlsignsArgs, cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let cat = load_catalog(cfg, art)?;
    let out = alsigns_run(&cat, a.degree, a.exclude_sn, a.trials, cfg, art)?;
    println!("degree {}: {} forms, beta = {:.4}", out.degree, out.forms, out.beta_mle);
    art.json(&format!("alsigns_degree{}.json", a.degree), &out)?;
    Ok(())
}

fn alsigns_run(
    cat: &Catalog,
    d: usize,
    exclude_sn: bool,
    trials: usize,
    cfg: &RunConfig,
    art: &mut Artifacts,
) -> Result<AlsignsOut> {
    let dims = dims(cfg);
    let data = alsigns::sign_data(cat, d, exclude_sn, &dims)?;
    let (beta_mle, loglik_at_mle) = alsigns::mle_beta(&data, -5.0, 15.0);
    let curve = alsigns::likelihood_curve(&data, &alsigns::beta_grid());
    let rows: Vec<Vec<String>> = curve.iter().map(|(b, l)| vec![format!("{b:.2}"), format!("{l:.8}")]).collect();
    let name = format!("alsigns_curve_degree{d}.csv");
    art.csv(&name, &["beta", "loglik"], &rows)?;
    art.text(&format!("alsigns_curve_degree{d}.gp"), &gnuplot(&format!("degree {d}"), &name, "1:2", false))?;
    let gaussian = fitmodels::fit_gaussian_logcurve(&curve).ok();
    let monte_carlo = if trials > 0 {
        Some(alsigns::empirical_loglik_distribution(&data, 0.0, beta_mle, trials, cfg.seed)?)
    } else {
        None
    };
    Ok(AlsignsOut {
        degree: d,
        forms: data.len(),
        exclude_sn,
        beta_mle,
        loglik_at_mle,
        gaussian,
        sn: alsigns::sn_census(cat, RANGE_LO),
        monte_carlo,
    })
}

#[derive(Debug, Subcommand)]
pub enum Genus2Command {
    /// Igusa–Clebsch invariants of y^2 = h(x), h given as "c0;c1;...".
    Invariants {
        #[arg(long)]
        sextic: String,
    },
    /// The Brumer model at parameter d.
    Brumer {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
    /// The Mestre model at parameter b.
    Mestre {
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Parameters 1 <= d <= X with d = 1 mod 5 and prime discriminant core.
    Search {
        #[arg(long = "x")]
        x: u64,
    },
}

#[derive(Serialize)]
struct CurveOut {
    family: &'static str,
    param: i64,
    model: genus2::HyperellipticModel,
    invariants: genus2::IgusaClebsch,
    disc: String,
    nonsplit_certificate: bool,
}

fn genus2_cmd(c: &Genus2Command, art: &mut Artifacts) -> Result<()> {
    match c {
        Genus2Command::Invariants { sextic } => {
            let ic = genus2::igusa_clebsch(&parse_int_poly(sextic)?)?;
            println!("I2 = {}\nI4 = {}\nI6 = {}\nI10 = {}", ic.i2, ic.i4, ic.i6, ic.i10);
            art.json("invariants.json", &ic)?;
        }
        Genus2Command::Brumer { d } => {
            let model = genus2::brumer_curve(*d);
            let out = CurveOut {
                family: "brumer",
                param: *d,
                invariants: model.invariants()?,
                model,
                disc: genus2::brumer_disc(*d).to_string(),
                nonsplit_certificate: genus2::nonsplit_certificate(genus2::Family::Brumer, *d),
            };
            println!("disc = {}", out.disc);
            art.json(&format!("brumer_{d}.json"), &out)?;
        }
        Genus2Command::Mestre { b } => {
            let model = genus2::mestre_curve(*b)?;
            let out = CurveOut {
                family: "mestre",
                param: *b,
                invariants: model.invariants()?,
                model,
                disc: genus2::mestre_disc(*b).to_string(),
                nonsplit_certificate: genus2::nonsplit_certificate(genus2::Family::Mestre, *b),
            };
            println!("disc = {}", out.disc);
            art.json(&format!("mestre_{b}.json"), &out)?;
        }
        Genus2Command::Search { x } => {
            let rep = genus2::prime_disc_search(*x)?;
            println!("{} parameters up to {x}", rep.count);
            art.json(&format!("brumer_search_{x}.json"), &rep)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HilbertStrategy {
    I10Box,
    Full,
}

#[derive(Debug, Args)]
pub struct HilbertArgs {
    #[arg(long)]
    pub d: u32,
    /// Height bounds, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = vec![8, 16, 32, 64])]
    pub t: Vec<u64>,
    #[arg(long, value_enum, default_value_t = HilbertStrategy::I10Box)]
    pub strategy: HilbertStrategy,
    /// Directory with i2.txt, i4.txt, i6.txt (lines `coef exp_a exp_b exp_c`),
    /// required by the full strategy.
    #[arg(long)]
    pub invariants: Option<PathBuf>,
    /// Search radius for the full strategy.
    #[arg(long, default_value_t = 20)]
    pub radius: u64,
    /// Compare raw rather than minimally scaled invariants.
    #[arg(long)]
    pub raw: bool,
    /// D = 12 only: count the a = 0 line with 1 <= |c| <= this bound instead.
    #[arg(long)]
    pub line: Option<i64>,
}

fn load_invariants(model: hilbert::SurfaceModel, dir: &Path, art: &mut Artifacts) -> Result<hilbert::SurfaceModel> {
    let mut polys = Vec::new();
    for name in ["i2.txt", "i4.txt", "i6.txt"] {
        let path = dir.join(name);
        let text = std::fs::read_to_string(&path)?;
        art.input(&path);
        polys.push(formstat::arith::BigPoly::parse_monomials(3, &text)?);
    }
    let [i2, i4, i6]: [_; 3] = polys.try_into().expect("three files");
    Ok(model.with_others(i2, i4, i6)?)
}

fn hilbert_cmd(a: &HilbertArgs, art: &mut Artifacts) -> Result<()> {
    let mut model = hilbert::SurfaceModel::new(a.d)?;
    let strategy = match a.strategy {
        HilbertStrategy::I10Box => hilbert::Strategy::I10Box,
        HilbertStrategy::Full => {
            let dir = a.invariants.as_ref().ok_or_else(|| usage("the full strategy needs --invariants DIR"))?;
            model = load_invariants(model, dir, art)?;
            hilbert::Strategy::FullInvariants { radius: a.radius, minimal: !a.raw }
        }
    };
    let mut counts = Vec::with_capacity(a.t.len());
    for &t in &a.t {
        let n = match a.line {
            Some(c_max) => hilbert::enumerate_d12_line(&model, t, c_max, |_| {})?,
            None => hilbert::enumerate_zd(&model, t, strategy, |_| {})?,
        };
        counts.push(n);
    }
    let rep = hilbert::exponent_report_from_counts(a.d, &a.t, &counts)?;
    println!("D = {}: slope {:.3} (r_D = {})", rep.d, rep.slope, rep.r_d);
    let rows: Vec<Vec<String>> = rep.ts.iter().zip(&rep.counts).map(|(t, c)| vec![t.to_string(), c.to_string()]).collect();
    let stem = if a.line.is_some() { format!("zd_{}_line", a.d) } else { format!("zd_{}", a.d) };
    let name = format!("{stem}.csv");
    art.csv(&name, &["t", "count"], &rows)?;
    art.text(&format!("{stem}.gp"), &gnuplot(&format!("D = {}", a.d), &name, "1:2", true))?;
    art.json(&format!("{stem}.json"), &rep)?;
    Ok(())
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Domain {
    Disk,
    TotallyReal,
}

#[derive(Debug, Args)]
pub struct HeckepolyArgs {
    /// Largest degree.
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, value_enum, default_value_t = Domain::Disk)]
    pub domain: Domain,
}

#[derive(Serialize)]
struct HeckepolyOut {
    p: u64,
    k: u32,
    domain: RootDomain,
    h: Vec<u64>,
    factor_estimates: Vec<(usize, heckepoly::FactorEstimates)>,
}

fn heckepoly_cmd(a: &HeckepolyArgs, art: &mut Artifacts) -> Result<()> {
    let domain = match a.domain {
        Domain::Disk => RootDomain::Disk,
        Domain::TotallyReal => RootDomain::TotallyReal,
    };
    let h = heckepoly::h_values(a.n, a.p, a.k, domain)?;
    let factor_estimates = (1..a.n)
        .map(|d| heckepoly::factor_probability_from(&h, a.n, d).map(|f| (d, f)))
        .collect::<formstat::Result<Vec<_>>>()?;
    for (n, v) in h.iter().enumerate().skip(1) {
        println!("h({n}) = {v}");
    }
    let out = HeckepolyOut { p: a.p, k: a.k, domain, h, factor_estimates };
    art.json(&format!("heckepoly_p{}_k{}_n{}.json", a.p, a.k, a.n), &out)?;
    Ok(())
}

#[derive(Debug, Args)]
pub struct FormArgs {
    #[arg(long)]
    pub level: u64,
    #[arg(long, default_value_t = 1)]
    pub orbit: u32,
    /// Exclusive bound on n; defaults to every stored coefficient.
    #[arg(long = "x")]
    pub x: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum LtCommand {
    /// pi_{f,a}(X) for a value given as power-basis coordinates "c0;c1;...".
    Pia {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, allow_hyphen_values = true)]
        value: String,
    },
    /// Primes with a_f(p) in a subfield given by its polynomial ("0;1" is Q).
    Pim {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, allow_hyphen_values = true)]
        subfield: String,
    },
    /// C_f(X; k) and the per-form report.
    Hist {
        #[command(flatten)]
        form: FormArgs,
    },
    /// Equal coefficient pairs a_f(n) = a_f(m).
    Collisions {
        #[command(flatten)]
        form: FormArgs,
        /// Keep pairs implied by multiplicativity and the values 0 and 1.
        #[arg(long)]
        no_filter: bool,
    },
    /// Primes l with an Eisenstein congruence.
    Eisenstein {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, default_value_t = 50)]
        ell_max: u64,
    },
    /// Residues of a_p modulo 2.
    Mod2 {
        #[command(flatten)]
        form: FormArgs,
    },
    /// max_a pi_{f,a} over all forms with coefficients, by degree.
    Table,
    /// Algebraic integers of a totally real field inside the Weil box at p.
    Weilbox {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        p: u64,
        /// Assert that the power basis is an integral basis.
        #[arg(long, conflicts_with = "basis")]
        power_basis: bool,
        /// Integral basis "den:r0|r1|..." with each row "c0;c1;..." holding
        /// den * omega_i.
        #[arg(long, allow_hyphen_values = true)]
        basis: Option<String>,
    },
}

fn parse_value(s: &str, n: usize) -> Result<Vec<BigInt>> {
    let p = parse_int_poly(s)?;
    let mut v = p.coeffs().to_vec();
    if v.len() > n {
        return Err(bad_arg(format!("value {s:?} has more than {n} coordinates")));
    }
    v.resize_with(n, Default::default);
    Ok(v)
}

fn parse_basis(s: &str, n: usize) -> Result<lt::IntegralBasis> {
    let (den, rows) = s.split_once(':').ok_or_else(|| bad_arg("basis must look like den:r0|r1|...".into()))?;
    let den: BigInt =
        den.trim().parse().map_err(|_| bad_arg(format!("basis denominator {den:?}")))?;
    let rows = rows.split('|').map(|r| parse_value(r, n)).collect::<Result<Vec<_>>>()?;
    Ok(lt::IntegralBasis { denominator: den, rows })
}

struct Form {
    record: dataset::NewformRecord,
    field: NumberField,
    table: std::sync::Arc<dataset::CoefficientTable>,
    x: u64,
}

fn load_form(cat: &Catalog, f: &FormArgs) -> Result<Form> {
    let record = cat
        .get(f.level, f.orbit)
        .ok_or_else(|| bad_arg(format!("no form {}.{} in the catalog", f.level, f.orbit)))?
        .clone();
    let field = record.field()?;
    let table = cat.coefficients(f.level, f.orbit)?;
    let x = f.x.unwrap_or_else(|| lt::stored_bound(&table));
    Ok(Form { record, field, table, x })
}

#[derive(Serialize)]
struct Tagged<T: Serialize> {
    level: u64,
    orbit: u32,
    x: u64,
    #[serde(flatten)]
    body: T,
}

fn tagged<T: Serialize>(f: &Form, body: T) -> Tagged<T> {
    Tagged { level: f.record.level, orbit: f.record.orbit, x: f.x, body }
}

fn lt_cmd(c: &LtCommand, cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    if let LtCommand::Weilbox { poly, p, power_basis, basis } = c {
        let f = parse_int_poly(poly)?;
        let n = f.degree().unwrap_or(0);
        let b = match (power_basis, basis) {
            (true, _) => Some(lt::IntegralBasis::power(n)),
            (false, Some(s)) => Some(parse_basis(s, n)?),
            (false, None) => None,
        };
        let w = lt::weil_box_count(&f, b.as_ref(), *p)?;
        println!("{} integers, {} Galois orbits {:?}", w.total, w.orbits, w.orbits_by_degree);
        art.json(&format!("weilbox_p{p}.json"), &w)?;
        return Ok(());
    }
    let cat = load_catalog(cfg, art)?;
    if let LtCommand::Table = c {
        let t = lt::max_pi_table(&cat)?;
        let rows: Vec<Vec<String>> = t
            .counts
            .iter()
            .flat_map(|(d, m)| m.iter().map(move |(k, n)| vec![d.to_string(), k.to_string(), n.to_string()]))
            .collect();
        art.csv("lt_maxpi.csv", &["degree", "max_k", "forms"], &rows)?;
        art.json("lt_maxpi.json", &t)?;
        for r in &rows {
            println!("{}", r.join("\t"));
        }
        return Ok(());
    }
    let form_args = match c {
        LtCommand::Pia { form, .. }
        | LtCommand::Pim { form, .. }
        | LtCommand::Hist { form }
        | LtCommand::Collisions { form, .. }
        | LtCommand::Eisenstein { form, .. }
        | LtCommand::Mod2 { form } => form,
        LtCommand::Table | LtCommand::Weilbox { .. } => unreachable!(),
    };
    let f = load_form(&cat, form_args)?;
    let tag = format!("{}.{}", f.record.level, f.record.orbit);
    match c {
        LtCommand::Pia { value, .. } => {
            let v = lt::FourierValue::from(parse_value(value, f.field.degree())?);
            let n = lt::pi_f_a(&f.table, &v, f.x)?;
            println!("pi = {n}");
            #[derive(Serialize)]
            struct Pia {
                value: lt::FourierValue,
                count: u64,
            }
            art.json(&format!("lt_pia_{tag}.json"), &tagged(&f, Pia { value: v, count: n }))?;
        }
        LtCommand::Pim { subfield, .. } => {
            let m = lt::resolve_field(&f.record, &parse_int_poly(subfield)?)?;
            let primes = lt::pi_f_m(&f.table, m, f.x)?;
            let all = lt::field_hits_all(&f.table, m, f.x);
            println!("{} primes: {:?}", primes.len(), primes);
            #[derive(Serialize)]
            struct Pim {
                subfield: String,
                primes: Vec<u64>,
                all_n: Vec<u64>,
            }
            art.json(&format!("lt_pim_{tag}.json"), &tagged(&f, Pim { subfield: subfield.clone(), primes, all_n: all }))?;
        }
        LtCommand::Hist { .. } => {
            let mut rep = lt::lt_report(&f.record, &f.table)?;
            if f.x != rep.x {
                rep.histogram = lt::c_f_histogram(&f.table, f.x)?;
                rep.max_k = rep.histogram.keys().next_back().copied().unwrap_or(0);
                rep.x = f.x;
            }
            let rows: Vec<Vec<String>> = rep.histogram.iter().map(|(k, c)| vec![k.to_string(), c.to_string()]).collect();
            art.csv(&format!("lt_hist_{tag}.csv"), &["k", "values"], &rows)?;
            art.json(&format!("lt_report_{tag}.json"), &rep)?;
            println!("max_k = {}; histogram {:?}", rep.max_k, rep.histogram);
        }
        LtCommand::Collisions { no_filter, .. } => {
            let rep = lt::collision_report(&f.field, &f.table, f.x, !no_filter)?;
            let rows: Vec<Vec<String>> = rep
                .pairs
                .iter()
                .map(|p| {
                    let v: Vec<String> = p.value.iter().map(|c| c.to_string()).collect();
                    vec![p.n.to_string(), p.m.to_string(), p.norm.to_string(), v.join(";")]
                })
                .collect();
            art.csv(&format!("lt_collisions_{tag}.csv"), &["n", "m", "norm", "value"], &rows)?;
            art.json(&format!("lt_collisions_{tag}.json"), &tagged(&f, &rep))?;
            println!("{} pairs, {} value classes", rep.pairs.len(), rep.classes.len());
        }
        LtCommand::Eisenstein { ell_max, .. } => {
            let ls = lt::eisenstein_scan(&f.field, &f.table, *ell_max);
            println!("{ls:?}");
            art.json(&format!("lt_eisenstein_{tag}.json"), &tagged(&f, ls))?;
        }
        LtCommand::Mod2 { .. } => {
            let m = lt::mod2_pattern(&f.field, &f.table);
            println!("flagged = {}", m.flagged);
            art.json(&format!("lt_mod2_{tag}.json"), &tagged(&f, m))?;
        }
        LtCommand::Table | LtCommand::Weilbox { .. } => unreachable!(),
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Skip the Atkin–Lehner analysis (it builds the exact dimension table).
    #[arg(long)]
    pub skip_alsigns: bool,
}

#[derive(Serialize)]
struct Report {
    provenance: String,
    records: usize,
    fits: Vec<(String, fitmodels::FitResult)>,
    collisions: Vec<CollisionOut>,
    alsigns: Vec<AlsignsOut>,
    lang_trotter: Option<lt::MaxPiTable>,
    skipped: Vec<String>,
}

fn report(a: &ReportArgs, cfg: &RunConfig, art: &mut Artifacts) -> Result<()> {
    let cat = load_catalog(cfg, art)?;
    let mut skipped = Vec::new();
    for by in [CountBy::Degree, CountBy::Disc, CountBy::Sign] {
        let (header, rows) = count_rows(&cat, by, RANGE_HI)?;
        art.csv(&format!("counts_{}.csv", format!("{by:?}").to_lowercase()), &header, &rows)?;
    }
    let mut fits = Vec::new();
    for d in 1..=6 {
        let series = fitmodels::cumulative_series(cat.query(&Filter::default().degree(d)).map(|r| r.level));
        for (name, r) in [("loglog", fitmodels::fit_li_loglog(&series)), ("direct", fitmodels::fit_li_direct(&series))] {
            match r {
                Ok(f) => fits.push((format!("degree{d}_{name}"), f)),
                Err(e) => skipped.push(format!("fit degree {d} {name}: {e}")),
            }
        }
    }
    let mut coll = Vec::new();
    let mut all_rows = Vec::new();
    for &disc in DISCRIMINANTS.iter().skip(1).flat_map(|d| d.1.iter()) {
        match collisions::collision_report(&cat, disc) {
            Ok((fit, rows)) => {
                all_rows.extend(collision_csv(&rows));
                coll.push(CollisionOut { disc, fit, rows });
            }
            Err(e) => skipped.push(format!("collisions disc {disc}: {e}")),
        }
    }
    art.csv("collisions.csv", &COLLISION_HEADER, &all_rows)?;
    let mut al = Vec::new();
    if !a.skip_alsigns {
        for d in 1..=4 {
            match alsigns_run(&cat, d, d == 1, 0, cfg, art) {
                Ok(o) => al.push(o),
                Err(e) => skipped.push(format!("alsigns degree {d}: {e}")),
            }
        }
    }
    let lang_trotter = match lt::max_pi_table(&cat) {
        Ok(t) if !t.counts.is_empty() => Some(t),
        Ok(_) => {
            skipped.push("lang-trotter: no coefficient tables".into());
            None
        }
        Err(e) => {
            skipped.push(format!("lang-trotter: {e}"));
            None
        }
    };
    let rep = Report {
        provenance: cat.provenance().to_string(),
        records: cat.len(),
        fits,
        collisions: coll,
        alsigns: al,
        lang_trotter,
        skipped,
    };
    art.json("report.json", &rep)?;
    for s in &rep.skipped {
        eprintln!("skipped: {s}");
    }
    println!("report for {} records written to {}", rep.records, Path::new(&cfg.out).display());
    Ok(())
}

//! Command-line interface: evaluate expressions, estimate norms, run the
//! verification suites, and dump plot-ready sample grids.
//!
//! Exit codes: 0 success, 1 failed verification check, 2 parse error,
//! 3 evaluation error, 4 map validation error, 5 internal error,
//! 6 I/O error.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::catalog::catalog;
use crate::error::{Error, Result};
use crate::expr::{differentiate, Expr};
use crate::maps::{power_construct, LogharmonicMap};
use crate::norm::{
    bloch_seminorm_analytic, hyperbolic_sup, logharmonic_bloch_norm, pre_schwarzian_norm,
    sample_grid, schwarzian_norm, NormEstimate, NormTarget, SchwarzianTarget, SupConfig,
};
use crate::parser::parse;
use crate::suite::{run_suite, summarize, SuiteKind, SuiteOptions};
use crate::theorems::{profile_e, CheckReport};

/// Everything recorded alongside a machine-readable report so a run can be
/// reproduced: the subcommand, the flags as given, the engine configuration,
/// and the tool version. `wall_ms` is informational and excluded from
/// byte-identity comparisons.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: &'static str,
    pub flags: BTreeMap<&'static str, String>,
    pub sup: SupConfig,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub wall_ms: u128,
}

#[derive(Debug, Parser)]
#[command(
    name = "disknorm",
    version,
    about = "Weighted norms of analytic, harmonic, and logharmonic disk mappings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression at a point of the disk.
    Eval(EvalArgs),
    /// Estimate a weighted supremum norm of a map.
    Norm(NormArgs),
    /// Run the verification suites and report pass/fail per check.
    Verify(VerifyArgs),
    /// Dump a weighted objective over a polar grid as CSV.
    Dump(DumpArgs),
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// Expression in z, e.g. "1/(1-z)" or "exp(-z)/(1-z)".
    #[arg(long)]
    expr: String,
    /// Point to evaluate at: a constant expression like 0.5, -0.3+0.2i, or i/2.
    #[arg(long)]
    at: String,
}

/// How a map is specified on the command line. Exactly one of the shapes is
/// accepted: a catalog name; an analytic `--h` optionally paired with `--g`
/// or `--omega`; a bare `--omega` (for dilatation-only quantities); or
/// `--lambda1/--lambda2` power exponents applied to the `--h`/`--g` bases.
#[derive(Debug, Args)]
struct MapArgs {
    /// Catalog entry, e.g. thm31_ex1, thm36_family(0.6), koebe_power(1,0.5).
    #[arg(long)]
    catalog: Option<String>,
    /// Analytic factor h (or the function itself for analytic quantities).
    #[arg(long)]
    h: Option<String>,
    /// Coanalytic factor g; omitted g means a purely analytic map.
    #[arg(long)]
    g: Option<String>,
    /// Dilatation omega; with --h it determines g up to normalization.
    #[arg(long)]
    omega: Option<String>,
    /// Exponent on the derivative of the --h base; requires --lambda2.
    #[arg(long)]
    lambda1: Option<f64>,
    /// Exponent on the derivative of the --g base (defaults to the --h base).
    #[arg(long)]
    lambda2: Option<f64>,
}

#[derive(Debug, Args)]
struct EngineFlags {
    /// Largest radius the norm engine ever samples.
    #[arg(long)]
    rmax: Option<f64>,
    /// Engine grid density as RxA (radial levels x base angle count).
    #[arg(long, value_parser = parse_grid)]
    grid: Option<(usize, usize)>,
}

#[derive(Debug, Args)]
struct NormArgs {
    /// Which norm to estimate.
    #[arg(long, value_enum, default_value_t = KindArg::PreSchwarzian)]
    kind: KindArg,
    #[command(flatten)]
    map: MapArgs,
    #[command(flatten)]
    engine: EngineFlags,
    /// Convergence threshold between consecutive radial levels.
    #[arg(long)]
    tol: Option<f64>,
    /// Write the estimate (with a run manifest) as JSON to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Which suite to run: paper (value regressions), properties, or all.
    #[arg(long, default_value = "all")]
    suite: SuiteKind,
    /// Tolerance for exact-value regressions.
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    /// Seed for the randomized property groups.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    engine: EngineFlags,
    /// Write the check reports (with a run manifest) as JSON to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DumpArgs {
    /// Which weighted objective to sample.
    #[arg(long, value_enum, default_value_t = KindArg::PreSchwarzian)]
    kind: KindArg,
    #[command(flatten)]
    map: MapArgs,
    /// Dump the radial profile of the extremal-family objective at this
    /// parameter t instead of sampling a map.
    #[arg(long, value_name = "T")]
    profile_e: Option<f64>,
    /// Sample grid as RxA (radii x angles).
    #[arg(long, value_parser = parse_grid, default_value = "24x128")]
    grid: (usize, usize),
    /// Largest radius in the grid.
    #[arg(long, default_value_t = 0.999)]
    rmax: f64,
    /// Write CSV here (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum KindArg {
    /// sup (1-|z|^2) |P(z)| with P the pre-Schwarzian of the map.
    PreSchwarzian,
    /// sup (1-|z|^2)^2 |S(z)| with S the Schwarzian.
    Schwarzian,
    /// Bloch seminorm: sup (1-|z|^2) |u'| (analytic) or
    /// sup (1-|z|^2)(|h'/h| + |g'/g|) (logharmonic).
    Bloch,
    /// sup of the hyperbolic derivative of the dilatation.
    Hyperbolic,
}

impl KindArg {
    fn name(self) -> &'static str {
        match self {
            KindArg::PreSchwarzian => "pre-schwarzian",
            KindArg::Schwarzian => "schwarzian",
            KindArg::Bloch => "bloch",
            KindArg::Hyperbolic => "hyperbolic",
        }
    }
}

fn parse_grid(s: &str) -> std::result::Result<(usize, usize), String> {
    let lowered = s.to_ascii_lowercase();
    let (r, a) = lowered
        .split_once('x')
        .ok_or_else(|| format!("expected RxA, e.g. 24x128, got `{s}`"))?;
    let radii: usize = r
        .trim()
        .parse()
        .map_err(|e| format!("bad radial count `{r}`: {e}"))?;
    let angles: usize = a
        .trim()
        .parse()
        .map_err(|e| format!("bad angle count `{a}`: {e}"))?;
    if radii == 0 || angles == 0 {
        return Err("grid counts must be positive".into());
    }
    Ok((radii, angles))
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval(args) => cmd_eval(&args),
        Command::Norm(args) => cmd_norm(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Dump(args) => cmd_dump(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 2,
        Error::Eval(_) => 3,
        Error::NotAnalyticAtZero { .. }
        | Error::DegenerateFunction { .. }
        | Error::NotSensePreserving { .. }
        | Error::InvalidExponent { .. }
        | Error::NormalizationViolated { .. }
        | Error::UnknownCatalogName { .. }
        | Error::DomainError { .. } => 4,
        Error::NoFiniteSamples => 5,
        Error::Io(_) => 6,
    }
}

fn cmd_eval(args: &EvalArgs) -> Result<i32> {
    let e = parse(&args.expr)?;
    let at = parse_point(&args.at)?;
    let v = e.eval(at)?;
    println!("{}", format_complex(v));
    Ok(0)
}

fn cmd_norm(args: &NormArgs) -> Result<i32> {
    let started = Instant::now();
    let mut cfg = SupConfig::default();
    apply_engine(&mut cfg, &args.engine);
    if let Some(tol) = args.tol {
        cfg.abs_tol = tol;
    }

    let target = resolve_map(&args.map)?;
    let (estimate, bloch_norm) = match (args.kind, &target) {
        (KindArg::PreSchwarzian, Target::Analytic(h)) => {
            (pre_schwarzian_norm(NormTarget::Analytic(h), &cfg)?, None)
        }
        (KindArg::PreSchwarzian, Target::Logharmonic(f)) => {
            (pre_schwarzian_norm(NormTarget::Logharmonic(f), &cfg)?, None)
        }
        (KindArg::Schwarzian, Target::Analytic(h)) => {
            (schwarzian_norm(SchwarzianTarget::Analytic(h), &cfg)?, None)
        }
        (KindArg::Schwarzian, Target::Logharmonic(f)) => {
            let m = f.log_map()?;
            (schwarzian_norm(SchwarzianTarget::Harmonic(&m), &cfg)?, None)
        }
        (KindArg::Bloch, Target::Analytic(h)) => (bloch_seminorm_analytic(h, &cfg)?, None),
        (KindArg::Bloch, Target::Logharmonic(f)) => {
            let (est, norm) = logharmonic_bloch_norm(f, &cfg)?;
            (est, Some(norm))
        }
        (KindArg::Hyperbolic, Target::Logharmonic(f)) => {
            (hyperbolic_sup(f.omega_expr(), &cfg)?, None)
        }
        (KindArg::Hyperbolic, Target::Omega(w)) => (hyperbolic_sup(w, &cfg)?, None),
        (kind, Target::Omega(_)) => {
            return Err(Error::DomainError {
                detail: format!(
                    "--omega alone only supports --kind hyperbolic, not {}",
                    kind.name()
                ),
            })
        }
        (KindArg::Hyperbolic, Target::Analytic(_)) => {
            return Err(Error::DomainError {
                detail: "--kind hyperbolic needs a dilatation: pass --omega or --g".into(),
            })
        }
    };

    println!("value     {:.15}", estimate.value);
    println!("r         {}", estimate.r);
    println!("theta     {}", estimate.theta);
    println!("converged {}", estimate.converged);
    if let Some(norm) = bloch_norm {
        println!("norm      {:.15}", norm);
    }

    if let Some(path) = &args.out {
        let manifest = RunManifest {
            command: "norm",
            flags: norm_flags(args),
            sup: cfg,
            version: env!("CARGO_PKG_VERSION"),
            seed: None,
            wall_ms: started.elapsed().as_millis(),
        };
        let doc = NormDocument {
            manifest,
            estimate: &estimate,
            bloch_norm,
        };
        write_atomic(path, &to_json(&doc)?)?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct NormDocument<'a> {
    manifest: RunManifest,
    estimate: &'a NormEstimate,
    #[serde(skip_serializing_if = "Option::is_none")]
    bloch_norm: Option<f64>,
}

#[derive(Serialize)]
struct VerifyDocument<'a> {
    manifest: RunManifest,
    checks: &'a [CheckReport],
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let started = Instant::now();
    let mut cfg = SupConfig::default();
    apply_engine(&mut cfg, &args.engine);
    let opts = SuiteOptions {
        tol: args.tol,
        seed: args.seed,
        sup: cfg,
    };
    let reports = match run_suite(args.suite, &opts) {
        Ok(reports) => reports,
        Err(Error::Io(e)) => return Err(Error::Io(e)),
        Err(e) => {
            eprintln!("internal error: {e}");
            return Ok(5);
        }
    };
    print!("{}", summarize(&reports));

    if let Some(path) = &args.out {
        let manifest = RunManifest {
            command: "verify",
            flags: verify_flags(args),
            sup: cfg,
            version: env!("CARGO_PKG_VERSION"),
            seed: Some(args.seed),
            wall_ms: started.elapsed().as_millis(),
        };
        let doc = VerifyDocument {
            manifest,
            checks: &reports,
        };
        write_atomic(path, &to_json(&doc)?)?;
    }
    Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 })
}

fn cmd_dump(args: &DumpArgs) -> Result<i32> {
    let (radii, angles) = args.grid;
    let rows = if let Some(t) = args.profile_e {
        let mut rows = Vec::with_capacity(radii);
        for k in 0..radii {
            let r = if radii == 1 {
                0.0
            } else {
                args.rmax * k as f64 / (radii - 1) as f64
            };
            rows.push((r, 0.0, profile_e(r, t)?));
        }
        rows
    } else {
        let target = resolve_map(&args.map)?;
        dump_rows(args.kind, &target, radii, angles, args.rmax)?
    };

    let mut csv = String::from("r,theta,value\n");
    for (r, theta, value) in &rows {
        csv.push_str(&format!("{r},{theta},{value}\n"));
    }
    match &args.out {
        Some(path) => write_atomic(path, &csv)?,
        None => {
            std::io::stdout().write_all(csv.as_bytes())?;
        }
    }
    Ok(0)
}

fn dump_rows(
    kind: KindArg,
    target: &Target,
    radii: usize,
    angles: usize,
    r_max: f64,
) -> Result<Vec<(f64, f64, f64)>> {
    let rows = match (kind, target) {
        (KindArg::PreSchwarzian, Target::Analytic(h)) => {
            let p = crate::maps::pre_schwarzian_analytic(h)?;
            sample_grid(|z| Ok(p.eval(z)?.norm()), 1, radii, angles, r_max)
        }
        (KindArg::PreSchwarzian, Target::Logharmonic(f)) => {
            sample_grid(|z| Ok(f.pre_schwarzian(z)?.norm()), 1, radii, angles, r_max)
        }
        (KindArg::Schwarzian, Target::Analytic(h)) => {
            let s = crate::maps::schwarzian_analytic(h)?;
            sample_grid(|z| Ok(s.eval(z)?.norm()), 2, radii, angles, r_max)
        }
        (KindArg::Schwarzian, Target::Logharmonic(f)) => {
            let m = f.log_map()?;
            sample_grid(|z| Ok(m.schwarzian(z)?.norm()), 2, radii, angles, r_max)
        }
        (KindArg::Bloch, Target::Analytic(h)) => {
            let du = differentiate(h);
            sample_grid(|z| Ok(du.eval(z)?.norm()), 1, radii, angles, r_max)
        }
        (KindArg::Bloch, Target::Logharmonic(f)) => sample_grid(
            |z| Ok(f.h().log_derivative(z)?.norm() + f.g().log_derivative(z)?.norm()),
            1,
            radii,
            angles,
            r_max,
        ),
        (KindArg::Hyperbolic, Target::Logharmonic(f)) => {
            hyperbolic_rows(f.omega_expr(), radii, angles, r_max)
        }
        (KindArg::Hyperbolic, Target::Omega(w)) => hyperbolic_rows(w, radii, angles, r_max),
        (kind, Target::Omega(_)) => {
            return Err(Error::DomainError {
                detail: format!(
                    "--omega alone only supports --kind hyperbolic, not {}",
                    kind.name()
                ),
            })
        }
        (KindArg::Hyperbolic, Target::Analytic(_)) => {
            return Err(Error::DomainError {
                detail: "--kind hyperbolic needs a dilatation: pass --omega or --g".into(),
            })
        }
    };
    Ok(rows)
}

fn hyperbolic_rows(omega: &Expr, radii: usize, angles: usize, r_max: f64) -> Vec<(f64, f64, f64)> {
    let wd = differentiate(omega);
    sample_grid(
        |z| {
            let w = omega.eval(z)?;
            let rz = z.norm();
            let rw = w.norm();
            Ok(wd.eval(z)?.norm() * ((1.0 - rz) * (1.0 + rz)) / ((1.0 - rw) * (1.0 + rw)))
        },
        0,
        radii,
        angles,
        r_max,
    )
}

/// Map flags resolved into something norms can be taken of.
enum Target {
    Analytic(Expr),
    Logharmonic(Box<LogharmonicMap>),
    Omega(Expr),
}

fn resolve_map(args: &MapArgs) -> Result<Target> {
    if let Some(name) = &args.catalog {
        if args.h.is_some()
            || args.g.is_some()
            || args.omega.is_some()
            || args.lambda1.is_some()
            || args.lambda2.is_some()
        {
            return Err(Error::DomainError {
                detail: "--catalog cannot be combined with --h/--g/--omega/--lambda*".into(),
            });
        }
        return Ok(Target::Logharmonic(Box::new(catalog(name)?.map)));
    }
    if args.lambda1.is_some() || args.lambda2.is_some() {
        let (Some(l1), Some(l2)) = (args.lambda1, args.lambda2) else {
            return Err(Error::DomainError {
                detail: "--lambda1 and --lambda2 must be given together".into(),
            });
        };
        let Some(h_text) = &args.h else {
            return Err(Error::DomainError {
                detail: "power construction needs an --h base".into(),
            });
        };
        let h_base = parse(h_text)?;
        let g_base = match &args.g {
            Some(g_text) => parse(g_text)?,
            None => h_base.clone(),
        };
        return Ok(Target::Logharmonic(Box::new(power_construct(
            &h_base, &g_base, l1, l2,
        )?)));
    }
    match (&args.h, &args.g, &args.omega) {
        (Some(h), Some(g), Some(w)) => Ok(Target::Logharmonic(Box::new(
            LogharmonicMap::from_parts_with_omega(parse(h)?, parse(g)?, parse(w)?)?,
        ))),
        (Some(h), Some(g), None) => Ok(Target::Logharmonic(Box::new(LogharmonicMap::from_parts(
            parse(h)?,
            parse(g)?,
        )))),
        (Some(h), None, Some(w)) => Ok(Target::Logharmonic(Box::new(LogharmonicMap::from_dilatation(
            parse(h)?,
            parse(w)?,
        )?))),
        (Some(h), None, None) => Ok(Target::Analytic(parse(h)?)),
        (None, None, Some(w)) => Ok(Target::Omega(parse(w)?)),
        _ => Err(Error::DomainError {
            detail: "specify a map: --catalog NAME, --h EXPR [--g|--omega EXPR], or --omega EXPR"
                .into(),
        }),
    }
}

fn parse_point(text: &str) -> Result<Complex64> {
    let e = parse(text)?;
    if e.contains_z() {
        return Err(Error::DomainError {
            detail: format!("--at must be a constant expression, got `{text}`"),
        });
    }
    Ok(e.eval(Complex64::ZERO)?)
}

fn format_complex(v: Complex64) -> String {
    if v.im == 0.0 {
        format!("{:.15}", v.re)
    } else {
        format!("{:.15}{:+.15}i", v.re, v.im)
    }
}

fn apply_engine(cfg: &mut SupConfig, flags: &EngineFlags) {
    if let Some(rmax) = flags.rmax {
        cfg.r_max = rmax;
    }
    if let Some((radii, angles)) = flags.grid {
        cfg.radial_levels = radii;
        cfg.angular_base = angles;
    }
}

fn norm_flags(args: &NormArgs) -> BTreeMap<&'static str, String> {
    let mut flags = BTreeMap::new();
    flags.insert("kind", args.kind.name().to_string());
    map_flags(&mut flags, &args.map);
    engine_flags(&mut flags, &args.engine);
    if let Some(tol) = args.tol {
        flags.insert("tol", tol.to_string());
    }
    flags
}

fn verify_flags(args: &VerifyArgs) -> BTreeMap<&'static str, String> {
    let mut flags = BTreeMap::new();
    flags.insert("suite", format!("{:?}", args.suite).to_lowercase());
    flags.insert("tol", args.tol.to_string());
    flags.insert("seed", args.seed.to_string());
    engine_flags(&mut flags, &args.engine);
    flags
}

fn map_flags(flags: &mut BTreeMap<&'static str, String>, args: &MapArgs) {
    if let Some(v) = &args.catalog {
        flags.insert("catalog", v.clone());
    }
    if let Some(v) = &args.h {
        flags.insert("h", v.clone());
    }
    if let Some(v) = &args.g {
        flags.insert("g", v.clone());
    }
    if let Some(v) = &args.omega {
        flags.insert("omega", v.clone());
    }
    if let Some(v) = args.lambda1 {
        flags.insert("lambda1", v.to_string());
    }
    if let Some(v) = args.lambda2 {
        flags.insert("lambda2", v.to_string());
    }
}

fn engine_flags(flags: &mut BTreeMap<&'static str, String>, engine: &EngineFlags) {
    if let Some(v) = engine.rmax {
        flags.insert("rmax", v.to_string());
    }
    if let Some((r, a)) = engine.grid {
        flags.insert("grid", format!("{r}x{a}"));
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::DomainError {
        detail: format!("serialization failed: {e}"),
    })
}

/// Write via a sibling temp file and rename, so a failed run never leaves a
/// partial report behind.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spec_parses() {
        assert_eq!(parse_grid("24x128").unwrap(), (24, 128));
        assert_eq!(parse_grid("1X1").unwrap(), (1, 1));
        assert!(parse_grid("24").is_err());
        assert!(parse_grid("0x4").is_err());
    }

    #[test]
    fn point_parsing_accepts_constants_only() {
        assert_eq!(parse_point("0.5").unwrap(), Complex64::new(0.5, 0.0));
        let p = parse_point("-0.3+0.2i").unwrap();
        assert!((p - Complex64::new(-0.3, 0.2)).norm() < 1e-15);
        assert!(parse_point("z/2").is_err());
    }

    #[test]
    fn complex_formatting_matches_contract() {
        assert_eq!(format_complex(Complex64::new(2.0, 0.0)), "2.000000000000000");
        assert_eq!(
            format_complex(Complex64::new(1.0, -0.5)),
            "1.000000000000000-0.500000000000000i"
        );
    }

    #[test]
    fn error_exit_codes_cover_the_contract() {
        assert_eq!(exit_code(&parse("1/(1-z").unwrap_err().into()), 2);
        assert_eq!(
            exit_code(&Error::Eval(crate::error::EvalError::PoleEncountered {
                at: Complex64::ONE,
            })),
            3
        );
        assert_eq!(
            exit_code(&Error::UnknownCatalogName { name: "x".into() }),
            4
        );
        assert_eq!(exit_code(&Error::NoFiniteSamples), 5);
        assert_eq!(
            exit_code(&Error::Io(std::io::Error::other("disk full"))),
            6
        );
    }

    #[test]
    fn map_resolution_shapes() {
        let args = MapArgs {
            catalog: None,
            h: Some("1/(1-z)".into()),
            g: None,
            omega: Some("z".into()),
            lambda1: None,
            lambda2: None,
        };
        assert!(matches!(
            resolve_map(&args).unwrap(),
            Target::Logharmonic(_)
        ));
        let args = MapArgs {
            catalog: None,
            h: Some("1/(1-z)".into()),
            g: None,
            omega: None,
            lambda1: None,
            lambda2: None,
        };
        assert!(matches!(resolve_map(&args).unwrap(), Target::Analytic(_)));
        let args = MapArgs {
            catalog: Some("thm31_ex1".into()),
            h: Some("z".into()),
            g: None,
            omega: None,
            lambda1: None,
            lambda2: None,
        };
        assert!(resolve_map(&args).is_err());
    }
}

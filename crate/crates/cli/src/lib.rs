use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use propmap_core::ballmap::{properness_certificate, BallMapError, MonomialBallMap, Signature};
use propmap_core::catalog::{self, CatalogError};
use propmap_core::classify::{brute_force_search, classify_degree2_r2, lemma_harness, HarnessBounds, Lemma, SearchLimits};
use propmap_core::exactnum::{parse_rational, Rational};
use propmap_core::induce::{solve_induced, SolveStatus, SymbolicMatrixMap};
use propmap_core::numverify::{verify_boundary_behavior, verify_fiber_preservation, verify_map_into_domain};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "propmap", version, about = "Proper monomial ball maps and the maps they induce")]
struct Cli {
    /// Human-readable text instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Properness certificate for a map.
    Check {
        map: PathBuf,
        #[arg(long, default_value_t = 2000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Degree-2 classification of (2,2) -> (3,3).
    Classify {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        degree: u32,
    },
    /// Solve for the induced matrix map.
    Induce {
        map: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Numeric checks of f against g.
    Verify {
        f: PathBuf,
        #[arg(long)]
        against: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        steps: u32,
    },
    Catalog(CatalogArgs),
    /// Seeded lemma harnesses.
    Lemmas {
        /// 3.1, 3.2, 3.3 or 3.5; all when omitted.
        #[arg(long)]
        which: Option<String>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Brute-force oracle over a coefficient grid.
    Search {
        #[arg(long, num_args = 4, value_names = ["R", "S", "RP", "SP"])]
        sig: Vec<usize>,
        #[arg(long)]
        degree: u32,
        #[arg(long, value_delimiter = ',')]
        grid: Vec<String>,
    },
}

/// Named maps; with no subcommand lists names, or dumps everything with
/// `--json` / `--markdown`.
#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
struct CatalogArgs {
    #[command(subcommand)]
    command: Option<CatalogCommand>,
    #[arg(long, conflicts_with = "markdown")]
    json: bool,
    #[arg(long)]
    markdown: bool,
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    List,
    Show {
        name: String,
        #[arg(long)]
        t: Option<String>,
    },
    Verify {
        name: String,
        #[arg(long)]
        t: Option<String>,
    },
}

/// Result of a subcommand: the payload and whether the mathematics failed.
struct Report {
    json: Value,
    text: String,
    failed: bool,
}

impl Report {
    fn new(json: Value, text: String, failed: bool) -> Self {
        Report { json, text, failed }
    }
}

/// Input problems that map to the usage exit code.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_map(path: &Path) -> anyhow::Result<MonomialBallMap> {
    MonomialBallMap::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_matrix_map(path: &Path) -> anyhow::Result<SymbolicMatrixMap> {
    SymbolicMatrixMap::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_t(name: &str, t: &Option<String>) -> anyhow::Result<Option<Rational>> {
    t.as_deref()
        .map(|text| catalog::parse_t(name, text).map_err(|e| usage(e.to_string())))
        .transpose()
}

fn catalog_error(e: CatalogError) -> anyhow::Error {
    match e {
        CatalogError::NotFound(_) | CatalogError::ParamError { .. } => usage(e.to_string()),
        other => other.into(),
    }
}

fn check(map: &Path, trials: usize, seed: u64) -> anyhow::Result<Report> {
    let g = read_map(map)?;
    match properness_certificate(&g, trials, seed) {
        Ok(cert) => {
            let text = format!(
                "{}: {} (m = {}, Q_P = {}, seed {seed})",
                g,
                if cert.is_proper() { "proper" } else { "NotProper" },
                cert.m,
                cert.q_p,
            ) + &format!("\n  positivity: {}", cert.verdict_name());
            Ok(Report::new(cert.to_json_value(), text, !cert.is_proper()))
        }
        Err(BallMapError::NotProper(why)) => {
            let json = json!({"proper": false, "reason": why.to_string()});
            Ok(Report::new(json, format!("{g}: NotProper ({why})"), true))
        }
        Err(e) => Err(e.into()),
    }
}

fn classify(r: usize, degree: u32) -> anyhow::Result<Report> {
    if (r, degree) != (2, 2) {
        bail!(usage(format!("only --r 2 --degree 2 is classified, got --r {r} --degree {degree}")));
    }
    let report = classify_degree2_r2();
    Ok(Report::new(report.to_json_value(), report.to_text(), false))
}

fn induce(map: &Path, output: Option<&Path>) -> anyhow::Result<Report> {
    let g = read_map(map)?;
    let out = solve_induced(&g)?;
    if let Some(path) = output {
        std::fs::write(path, out.particular.to_json() + "\n").with_context(|| path.display().to_string())?;
    }
    let mut text = format!("{}: {}", g, out.status.name());
    if !out.free_entries.is_empty() {
        let free: Vec<String> = out.free_entries.iter().map(|(i, j)| format!("({},{})", i + 1, j + 1)).collect();
        text += &format!("\n  free entries: {}", free.join(" "));
    }
    text += &format!("\n{}", out.particular);
    Ok(Report::new(out.to_json_value(), text, out.status == SolveStatus::Inconsistent))
}

fn verify(f: &Path, against: &Path, trials: usize, seed: u64, steps: u32) -> anyhow::Result<Report> {
    let f = read_matrix_map(f)?;
    let g = read_map(against)?;
    let sig = g.signature();
    let reports = [
        verify_map_into_domain(&f, sig.r, sig.s, trials, seed),
        verify_boundary_behavior(&f, sig.r, sig.s, seed, steps),
        verify_fiber_preservation(&f, &g, trials, seed),
    ]
    .into_iter()
    .collect::<Result<Vec<_>, _>>()
    .map_err(|e| usage(e.to_string()))?;
    let failed = reports.iter().any(|r| !r.verdict.is_pass());
    let json = json!({
        "seed": seed,
        "trials": trials,
        "pass": !failed,
        "reports": reports.iter().map(|r| r.to_json_value()).collect::<Vec<_>>(),
    });
    let text = reports.iter().map(|r| r.to_text()).collect::<Vec<_>>().join("\n");
    Ok(Report::new(json, text, failed))
}

fn catalog_cmd(args: &CatalogArgs) -> anyhow::Result<Report> {
    if args.markdown {
        let md = catalog::catalog_markdown();
        return Ok(Report::new(Value::String(md.clone()), md, false));
    }
    if args.json {
        let all = catalog::catalog_json();
        let text = serde_json::to_string_pretty(&all)?;
        return Ok(Report::new(all, text, false));
    }
    match args.command.as_ref().unwrap_or(&CatalogCommand::List) {
        CatalogCommand::List => {
            let names = catalog::list();
            Ok(Report::new(json!(names), names.join("\n"), false))
        }
        CatalogCommand::Show { name, t } => {
            let t = parse_t(name, t)?;
            let entry = catalog::get_at(name, t.as_ref()).map_err(catalog_error)?;
            let json = catalog::entry_json(&entry);
            let mut text = format!("{}\n  g = {}\n  Q_P = {}\n{}", entry.label(), entry.g, entry.q_p, entry.f_expected);
            for note in &entry.notes {
                text += &format!("\n  note: {note}");
            }
            Ok(Report::new(json, text, false))
        }
        CatalogCommand::Verify { name, t } => {
            let t = parse_t(name, t)?;
            let report = catalog::verify_entry(name, t.as_ref()).map_err(catalog_error)?;
            let mut text = report.to_text();
            if report.matches() {
                text += "\nmatch, residual zero";
            }
            Ok(Report::new(report.to_json_value(), text, !report.solver_residual_zero))
        }
    }
}

fn lemmas(which: Option<&str>, trials: usize, seed: u64) -> anyhow::Result<Report> {
    let selected: Vec<Lemma> = match which {
        None => Lemma::all().to_vec(),
        Some(name) => vec![Lemma::from_name(name).ok_or_else(|| usage(format!("unknown lemma {name:?}; expected 3.1, 3.2, 3.3 or 3.5")))?],
    };
    let bounds = HarnessBounds::default();
    let reports: Vec<_> = selected.iter().map(|&l| lemma_harness(l, trials, seed, &bounds)).collect();
    let failed = reports.iter().any(|r| !r.violations.is_empty());
    let json = json!({"seed": seed, "trials": trials, "reports": reports.iter().map(|r| r.to_json_value()).collect::<Vec<_>>()});
    let text = reports.iter().map(|r| r.to_text()).collect::<Vec<_>>().join("\n");
    Ok(Report::new(json, text, failed))
}

fn search(sig: &[usize], degree: u32, grid: &[String]) -> anyhow::Result<Report> {
    let sig = Signature::new(sig[0], sig[1], sig[2], sig[3]).map_err(|e| usage(e.to_string()))?;
    let grid = grid
        .iter()
        .map(|g| parse_rational(g.trim()).map_err(|e| usage(format!("grid value {g:?}: {e}"))))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let limits = SearchLimits::default();
    let maps = brute_force_search(sig, degree, &grid, &limits).map_err(|e| usage(e.to_string()))?;
    let json = json!({
        "signature": [sig.r, sig.s, sig.rp, sig.sp],
        "degree": degree,
        "grid": grid.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        "seed": limits.seed,
        "maps": maps.iter().map(|g| g.to_json_value()).collect::<Vec<_>>(),
    });
    let mut text = format!("{} maps", maps.len());
    for g in &maps {
        text += &format!("\n  {g}");
    }
    Ok(Report::new(json, text, false))
}

fn dispatch(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Check { map, trials, seed } => check(map, *trials, *seed),
        Command::Classify { r, degree } => classify(*r, *degree),
        Command::Induce { map, output } => induce(map, output.as_deref()),
        Command::Verify { f, against, trials, seed, steps } => verify(f, against, *trials, *seed, *steps),
        Command::Catalog(args) => catalog_cmd(args),
        Command::Lemmas { which, trials, seed } => lemmas(which.as_deref(), *trials, *seed),
        Command::Search { sig, degree, grid } => search(sig, *degree, grid),
    }
}

/// Runs one command line; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let body = if cli.text {
                report.text
            } else {
                match &report.json {
                    Value::String(s) => s.trim_end().to_string(),
                    v => serde_json::to_string_pretty(v).expect("serializable"),
                }
            };
            let _ = writeln!(out, "{body}");
            if report.failed {
                EXIT_FAIL
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                EXIT_USAGE
            } else {
                EXIT_FAIL
            }
        }
    }
}

//! Command-line front end for `corona-walk`.

pub mod dsl;
pub mod json;
pub mod manifest;
pub mod reproduce;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use corona_walk::number_theory::{recognize_quadratic, QuadraticValue, DEFAULT_MAX_COEFF, DEFAULT_N_MAX, DEFAULT_RECOGNITION_TOL};
use corona_walk::spectral::{eigenvalue_support, quotient, strongly_cospectral, DEFAULT_SUPPORT_TOL};
use corona_walk::state_transfer::{
    corona_vertex_periodicity, periodicity_verdict, pgst_construct_time, pgst_grid_search, pst_certify, ConstructionOptions, PgstFamily,
    Tolerances,
};
use corona_walk::{eigendecompose, Graph};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use dsl::{parse_graph_expr, GraphExpr, ParseError};
use json::{fmt_g17, to_json};
use manifest::RunManifest;

#[derive(Debug, Parser)]
#[command(name = "corona-walk", version, about = "Quantum walks on corona products of graphs")]
pub struct Cli {
    /// Report errors on stderr as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the run manifest to this file instead of stderr.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SUPPORT_TOL)]
    pub support_tol: f64,
    #[arg(long, global = true, default_value_t = DEFAULT_RECOGNITION_TOL)]
    pub recognition_tol: f64,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_COEFF)]
    pub max_coeff: i64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues, multiplicities and recognized exact forms.
    Spectrum { graph: String },
    /// Eigenvalue support of a vertex.
    Support {
        graph: String,
        #[arg(long)]
        vertex: String,
    },
    /// Strong cospectrality sign vector of two vertices.
    Cospectral {
        graph: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Perfect state transfer certificate or the reason there is none.
    CertifyPst {
        graph: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Periodicity verdict of a vertex.
    CheckPeriodic {
        graph: String,
        #[arg(long)]
        vertex: String,
        /// Skip the closed-form corona route.
        #[arg(long)]
        dense: bool,
    },
    /// Best fidelity on [0, tmax] by grid search and refinement.
    SearchPgst {
        graph: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        tmax: f64,
        #[arg(long, default_value_t = 100_000)]
        steps: usize,
    },
    /// Pretty good state transfer time for a theorem-backed family.
    ConstructPgst {
        /// barbell, selfloop-clique, bunkbed, thorny-pst, thorny-zero or cocktail-thorn.
        #[arg(long)]
        family: String,
        /// `key=value` pairs, comma separated or repeated.
        #[arg(long)]
        params: Vec<String>,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        n_floor: i64,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: i64,
    },
    /// CSV trace of the fidelity on a uniform time grid.
    FidelityTrace {
        graph: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        tmax: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Quotient of an equitable partition, cells separated by `;`.
    Quotient {
        graph: String,
        #[arg(long)]
        partition: String,
    },
    /// Run a reproduction scenario by name or number, or `all`.
    Reproduce {
        family: String,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Spectrum { .. } => "spectrum",
            Command::Support { .. } => "support",
            Command::Cospectral { .. } => "cospectral",
            Command::CertifyPst { .. } => "certify-pst",
            Command::CheckPeriodic { .. } => "check-periodic",
            Command::SearchPgst { .. } => "search-pgst",
            Command::ConstructPgst { .. } => "construct-pgst",
            Command::FidelityTrace { .. } => "fidelity-trace",
            Command::Quotient { .. } => "quotient",
            Command::Reproduce { .. } => "reproduce",
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(ParseError),
    Engine(corona_walk::Error),
    Threshold(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Threshold(_) | CliError::Engine(corona_walk::Error::KroneckerExhausted { .. }) => 1,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse(_) => "parse",
            CliError::Engine(_) => "engine",
            CliError::Threshold(_) => "threshold",
            CliError::Io(_) => "io",
        }
    }

    fn to_value(&self) -> Value {
        let mut v = json!({"kind": self.kind(), "message": self.to_string(), "exit_code": self.exit_code()});
        if let CliError::Parse(p) = self {
            v["position"] = json!(p.position);
        }
        json!({ "error": v })
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Threshold(m) | CliError::Io(m) => f.write_str(m),
            CliError::Parse(p) => write!(f, "{p}"),
            CliError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl From<corona_walk::Error> for CliError {
    fn from(e: corona_walk::Error) -> Self {
        CliError::Engine(e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

struct Output {
    stdout: String,
    files: Vec<String>,
    failure: Option<String>,
}

impl Output {
    fn json<T: Serialize + ?Sized>(v: &T) -> Self {
        Output { stdout: to_json(v) + "\n", files: Vec::new(), failure: None }
    }
}

/// Applies `CORONA_WALK_THREADS` to the global thread pool, once.
pub fn configure_threads() {
    if let Some(n) = std::env::var("CORONA_WALK_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    configure_threads();
    let start = Instant::now();
    let args: Vec<String> = argv.into_iter().map(Into::into).collect();
    let json_errors = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = write!(stdout, "{e}");
                return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 };
            }
            let err = CliError::Usage(e.to_string().trim_end().to_string());
            report_error(&err, json_errors, stderr);
            let mut m = RunManifest::new("", args.iter().skip(1).cloned().collect(), Tolerances::default());
            m.exit_code = 2;
            m.wall_clock_seconds = start.elapsed().as_secs_f64();
            let _ = writeln!(stderr, "{}", serde_json::to_string(&json!({ "manifest": m })).unwrap());
            return 2;
        }
    };
    let tols = Tolerances { support: cli.support_tol, recognition: cli.recognition_tol, max_coeff: cli.max_coeff };
    let mut manifest = RunManifest::new(cli.command.name(), args.iter().skip(1).cloned().collect(), tols);
    let result = check_tolerances(&tols).and_then(|_| execute(&cli.command, &tols));
    let code = match result {
        Ok(out) => {
            let _ = stdout.write_all(out.stdout.as_bytes());
            manifest.outputs = out.files;
            match out.failure {
                Some(msg) => {
                    let err = CliError::Threshold(msg);
                    report_error(&err, cli.json, stderr);
                    err.exit_code()
                }
                None => 0,
            }
        }
        Err(e) => {
            report_error(&e, cli.json, stderr);
            e.exit_code()
        }
    };
    manifest.exit_code = code;
    manifest.wall_clock_seconds = start.elapsed().as_secs_f64();
    emit_manifest(&manifest, cli.manifest.as_deref(), stderr);
    code
}

fn report_error(e: &CliError, json: bool, stderr: &mut dyn Write) {
    let _ = if json {
        writeln!(stderr, "{}", serde_json::to_string(&e.to_value()).unwrap())
    } else {
        writeln!(stderr, "error: {e}")
    };
}

fn emit_manifest(m: &RunManifest, path: Option<&Path>, stderr: &mut dyn Write) {
    match path {
        Some(p) => {
            if let Err(e) = fs::write(p, to_json(m) + "\n") {
                let _ = writeln!(stderr, "error: cannot write manifest {}: {e}", p.display());
            }
        }
        None => {
            let _ = writeln!(stderr, "{}", serde_json::to_string(&json!({ "manifest": m })).unwrap());
        }
    }
}

fn check_tolerances(t: &Tolerances) -> CliResult<()> {
    if !(t.support > 0.0 && t.recognition > 0.0 && t.max_coeff > 0) {
        return Err(CliError::Usage("tolerances and --max-coeff must be positive".into()));
    }
    Ok(())
}

fn load(text: &str) -> CliResult<(GraphExpr, Graph)> {
    let e = parse_graph_expr(text)?;
    let g = e.build()?;
    Ok((e, g))
}

fn vertex(g: &Graph, name: &str) -> CliResult<usize> {
    g.find_vertex(name).ok_or_else(|| CliError::Usage(format!("unknown vertex `{name}` (graph has {} vertices)", g.n())))
}

fn vertex_set(g: &Graph, names: &str) -> CliResult<Vec<usize>> {
    let mut out: Vec<usize> = names.split(',').map(|s| vertex(g, s)).collect::<CliResult<_>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn labels(g: &Graph, vs: &[usize]) -> String {
    vs.iter().map(|&v| g.label(v)).collect::<Vec<_>>().join(",")
}

#[derive(Serialize)]
struct ExactForm {
    a: i64,
    b: i64,
    delta: u64,
    text: String,
}

fn exact_form(q: QuadraticValue) -> ExactForm {
    let text = if q.b == 0 {
        if q.a % 2 == 0 {
            format!("{}", q.a / 2)
        } else {
            format!("{}/2", q.a)
        }
    } else if q.a % 2 == 0 && q.b % 2 == 0 {
        let (a, b) = (q.a / 2, q.b / 2);
        let root = match b {
            1 => format!("sqrt({})", q.delta),
            -1 => format!("-sqrt({})", q.delta),
            _ => format!("{b}*sqrt({})", q.delta),
        };
        match a {
            0 => root,
            _ if b > 0 => format!("{a} + {root}"),
            _ => format!("{a} - {}", root.trim_start_matches('-')),
        }
    } else {
        format!("({} {} {}*sqrt({}))/2", q.a, if q.b < 0 { '-' } else { '+' }, q.b.abs(), q.delta)
    };
    ExactForm { a: q.a, b: q.b, delta: q.delta, text }
}

fn exact_forms(xs: &[f64], tols: &Tolerances) -> Vec<Option<ExactForm>> {
    xs.iter().map(|&x| recognize_quadratic(x, tols.max_coeff, tols.recognition).map(exact_form)).collect()
}

fn execute(cmd: &Command, tols: &Tolerances) -> CliResult<Output> {
    match cmd {
        Command::Spectrum { graph } => {
            let (e, g) = load(graph)?;
            let dec = eigendecompose(&g, None)?;
            Ok(Output::json(&json!({
                "graph": e.to_string(),
                "vertices": g.n(),
                "eigenvalues": dec.eigenvalues(),
                "multiplicities": dec.multiplicities(),
                "exact": exact_forms(dec.eigenvalues(), tols),
            })))
        }
        Command::Support { graph, vertex: name } => {
            let (e, g) = load(graph)?;
            let v = vertex(&g, name)?;
            let dec = eigendecompose(&g, None)?;
            let support = eigenvalue_support(&dec, v, tols.support)?;
            Ok(Output::json(&json!({
                "graph": e.to_string(),
                "vertex": g.label(v),
                "support": support,
                "exact": exact_forms(&support, tols),
            })))
        }
        Command::Cospectral { graph, u, v } => {
            let (e, g) = load(graph)?;
            let (u, v) = (vertex(&g, u)?, vertex(&g, v)?);
            let dec = eigendecompose(&g, None)?;
            let body = match strongly_cospectral(&dec, u, v, tols.support)? {
                Some(signs) => json!({"strongly_cospectral": true, "eigenvalues": signs.eigenvalues, "signs": signs.signs}),
                None => json!({"strongly_cospectral": false, "message": "not strongly cospectral"}),
            };
            Ok(Output::json(&json!({"graph": e.to_string(), "u": g.label(u), "v": g.label(v), "result": body})))
        }
        Command::CertifyPst { graph, u, v } => {
            let (e, g) = load(graph)?;
            let (u, v) = (vertex(&g, u)?, vertex(&g, v)?);
            let dec = eigendecompose(&g, None)?;
            let outcome = pst_certify(&dec, u, v, tols)?;
            Ok(Output::json(&json!({"graph": e.to_string(), "u": g.label(u), "v": g.label(v), "result": outcome})))
        }
        Command::CheckPeriodic { graph, vertex: name, dense } => check_periodic(graph, name, *dense, tols),
        Command::SearchPgst { graph, u, v, tmax, steps } => {
            let (e, g) = load(graph)?;
            let (us, vs) = (vertex_set(&g, u)?, vertex_set(&g, v)?);
            let dec = eigendecompose(&g, None)?;
            let mut w = pgst_grid_search(&dec, &us, &vs, *tmax, *steps)?;
            w.u = labels(&g, &us);
            w.v = labels(&g, &vs);
            Ok(Output::json(&json!({"graph": e.to_string(), "witness": w})))
        }
        Command::ConstructPgst { family, params, eps, n_floor, n_max } => {
            let fam = parse_family(family, params)?;
            let opts = ConstructionOptions { n_floor: *n_floor, n_max: *n_max, tols: *tols };
            let w = pgst_construct_time(&fam, *eps, &opts)?;
            Ok(Output::json(&json!({"family": family, "witness": w})))
        }
        Command::FidelityTrace { graph, u, v, tmax, steps, out } => fidelity_trace(graph, u, v, *tmax, *steps, out),
        Command::Quotient { graph, partition } => {
            let (e, g) = load(graph)?;
            let cells: Vec<Vec<usize>> = partition.split(';').map(|c| vertex_set(&g, c)).collect::<CliResult<_>>()?;
            let body = match quotient(&g, &cells)? {
                Some(q) => json!({"equitable": true, "weights": q.weights().to_rows()}),
                None => json!({"equitable": false, "message": "not equitable"}),
            };
            let named: Vec<Vec<&str>> = cells.iter().map(|c| c.iter().map(|&v| g.label(v)).collect()).collect();
            Ok(Output::json(&json!({"graph": e.to_string(), "cells": named, "result": body})))
        }
        Command::Reproduce { family, out_dir } => reproduce_cmd(family, out_dir, tols),
    }
}

fn check_periodic(graph: &str, name: &str, dense: bool, tols: &Tolerances) -> CliResult<Output> {
    let (e, g) = load(graph)?;
    let v = vertex(&g, name)?;
    let mut note = None;
    if let (false, Some((gn, hn))) = (dense, e.corona_parts()) {
        let (base, h) = (gn.build()?, hn.build()?);
        let m = h.n();
        if v % (m + 1) == 0 {
            match corona_vertex_periodicity(&base, &h, v / (m + 1), tols) {
                Ok(verdict) => {
                    return Ok(Output::json(&json!({
                        "graph": e.to_string(),
                        "vertex": g.label(v),
                        "method": "corona-closed-form",
                        "verdict": verdict,
                    })))
                }
                Err(err @ (corona_walk::Error::NotRegular | corona_walk::Error::NotApplicable(_))) => {
                    note = Some(format!("closed-form route unavailable: {err}"));
                }
                Err(err) => return Err(err.into()),
            }
        } else {
            note = Some("pendant vertex: closed-form route covers base vertices only".to_string());
        }
    }
    let dec = eigendecompose(&g, None)?;
    let verdict = periodicity_verdict(&dec, v, tols)?;
    let mut body = json!({"graph": e.to_string(), "vertex": g.label(v), "method": "dense", "verdict": verdict});
    if let Some(n) = note {
        body["note"] = json!(n);
    }
    Ok(Output::json(&body))
}

/// Splits on commas outside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_family(family: &str, params: &[String]) -> CliResult<PgstFamily> {
    let mut kv = std::collections::BTreeMap::new();
    for p in params.iter().flat_map(|p| split_top_level(p)) {
        let p = p.trim();
        if p.is_empty() {
            continue;
        }
        let (k, v) = p.split_once('=').ok_or_else(|| CliError::Usage(format!("parameter `{p}` is not key=value")))?;
        kv.insert(k.trim().to_string(), v.trim().to_string());
    }
    let allowed: &[&str] = match family {
        "barbell" => &["m"],
        "selfloop-clique" | "bunkbed" | "cocktail-thorn" => &["n"],
        "thorny-pst" | "thorny-zero" => &["base", "u", "v"],
        other => return Err(CliError::Engine(corona_walk::Error::UnknownFamily(other.into()))),
    };
    if let Some(k) = kv.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(CliError::Usage(format!("{family} does not take parameter `{k}` (expects {})", allowed.join(", "))));
    }
    let get = |k: &str| kv.get(k).ok_or_else(|| CliError::Usage(format!("{family} needs parameter `{k}`")));
    let int = |k: &str| -> CliResult<usize> {
        let s = get(k)?;
        s.parse().map_err(|_| CliError::Usage(format!("parameter {k} = `{s}` is not a non-negative integer")))
    };
    Ok(match family {
        "barbell" => PgstFamily::Barbell { m: int("m")? },
        "selfloop-clique" => PgstFamily::SelfloopClique { n: int("n")? },
        "bunkbed" => PgstFamily::Bunkbed { n: int("n")? },
        "cocktail-thorn" => PgstFamily::CocktailThorn { n: int("n")? },
        _ => {
            let (_, base) = load(get("base")?)?;
            let (u, v) = (vertex(&base, get("u")?)?, vertex(&base, get("v")?)?);
            if family == "thorny-pst" {
                PgstFamily::ThornyPst { base, u, v }
            } else {
                PgstFamily::ThornyZero { base, u, v }
            }
        }
    })
}

fn fidelity_trace(graph: &str, u: &str, v: &str, tmax: f64, steps: usize, out: &Path) -> CliResult<Output> {
    if !(tmax > 0.0 && tmax.is_finite()) {
        return Err(CliError::Usage("--tmax must be positive".into()));
    }
    if steps == 0 {
        return Err(CliError::Usage("--steps must be positive".into()));
    }
    let (e, g) = load(graph)?;
    let (us, vs) = (vertex_set(&g, u)?, vertex_set(&g, v)?);
    let dec = eigendecompose(&g, None)?;
    let series = dec.amplitude_series(&us, &vs)?;
    let rows: Vec<(f64, f64)> = (0..=steps)
        .into_par_iter()
        .map(|i| {
            let t = tmax * i as f64 / steps as f64;
            (t, series.fidelity(t))
        })
        .collect();
    let mut w = BufWriter::new(fs::File::create(out).map_err(|err| CliError::Io(format!("cannot create {}: {err}", out.display())))?);
    writeln!(w, "t,fidelity")?;
    for (t, f) in &rows {
        writeln!(w, "{},{}", fmt_g17(*t), fmt_g17(*f))?;
    }
    w.flush()?;
    let (t_best, f_best) = rows.iter().fold((0.0, f64::NEG_INFINITY), |acc, &(t, f)| if f > acc.1 { (t, f) } else { acc });
    let mut o = Output::json(&json!({
        "graph": e.to_string(),
        "u": labels(&g, &us),
        "v": labels(&g, &vs),
        "out": out.display().to_string(),
        "rows": rows.len(),
        "max_fidelity": f_best,
        "t_at_max": t_best,
    }));
    o.files.push(out.display().to_string());
    Ok(o)
}

fn reproduce_cmd(family: &str, out_dir: &Path, tols: &Tolerances) -> CliResult<Output> {
    let chosen: Vec<&reproduce::Scenario> = if family == "all" {
        reproduce::SCENARIOS.iter().collect()
    } else {
        let names: Vec<&str> = reproduce::SCENARIOS.iter().map(|s| s.name).collect();
        vec![reproduce::find_scenario(family).ok_or_else(|| CliError::Usage(format!("unknown scenario `{family}`; expected one of {} or all", names.join(", "))))?]
    };
    fs::create_dir_all(out_dir)?;
    let start = Instant::now();
    let reports: Vec<reproduce::ScenarioReport> = chosen.iter().map(|s| s.run()).collect();
    let mut stdout = String::new();
    for r in &reports {
        stdout.push_str(&format!("{} {:>2} {}: {}\n", if r.passed { "PASS" } else { "FAIL" }, r.id, r.name, r.description));
        for c in r.checks.iter().filter(|c| !c.passed) {
            stdout.push_str(&format!("     failed: {} ({} {} {})\n", c.name, fmt_g17(c.value), c.relation, fmt_g17(c.threshold)));
        }
    }
    let results = out_dir.join(format!("reproduce-{family}.json"));
    fs::write(&results, to_json(&json!({"scenario": family, "tolerances": tols, "reports": reports})) + "\n")?;
    let mut m = RunManifest::new("reproduce", vec![family.to_string()], *tols);
    m.outputs = vec![results.display().to_string()];
    m.wall_clock_seconds = start.elapsed().as_secs_f64();
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed).map(|r| r.name.to_string()).collect();
    m.exit_code = if failed.is_empty() { 0 } else { 1 };
    let manifest_path = out_dir.join(format!("manifest-{family}.json"));
    fs::write(&manifest_path, to_json(&m) + "\n")?;
    Ok(Output {
        stdout,
        files: vec![results.display().to_string(), manifest_path.display().to_string()],
        failure: (!failed.is_empty()).then(|| format!("thresholds not met: {}", failed.join(", "))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("corona-walk").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exact_form_text() {
        assert_eq!(exact_form(QuadraticValue::new(0, 4, 2)).text, "2*sqrt(2)");
        assert_eq!(exact_form(QuadraticValue::new(2, -2, 5)).text, "1 - sqrt(5)");
        assert_eq!(exact_form(QuadraticValue::new(1, 1, 5)).text, "(1 + 1*sqrt(5))/2");
        assert_eq!(exact_form(QuadraticValue::rational(-3)).text, "-3/2");
    }

    #[test]
    fn top_level_split() {
        assert_eq!(split_top_level("base=corona(path(3),empty(2)),u=0.0"), vec!["base=corona(path(3),empty(2))", "u=0.0"]);
    }

    #[test]
    fn certify_digon_double_star() {
        let (code, out, _) = run_capture(&["certify-pst", "corona(digon,empty(15))", "--u", "0.0", "--v", "1.0"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["outcome"], "certified");
        assert!((v["result"]["t0"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_capture(&["spectrum", "corona(path(3)"]).0, 2);
        assert_eq!(run_capture(&["support", "path(3)", "--vertex", "9"]).0, 2);
        assert_eq!(run_capture(&["construct-pgst", "--family", "bunkbed", "--params", "n=3", "--eps", "0.01"]).0, 2);
        assert_eq!(run_capture(&["construct-pgst", "--family", "barbell", "--params", "m=3", "--eps", "1e-4", "--n-max", "2"]).0, 1);
        let (code, _, err) = run_capture(&["--json", "spectrum", "cube(x)"]);
        assert_eq!(code, 2);
        let first: Value = serde_json::from_str(err.lines().next().unwrap()).unwrap();
        assert_eq!(first["error"]["kind"], "parse");
        assert_eq!(first["error"]["position"], 5);
    }
}

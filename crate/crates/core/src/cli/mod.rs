//! Command-line front end. Every command prints one JSON run manifest on
//! stdout; `density` and `density-sweep` can also write CSV.

mod verify;

use std::collections::HashMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::asymptotics::{density_sweep, rho_3_with, rho_d_x, DensityOptions, DensityReport};
use crate::closed_form::{kasteleyn_2d_dimers_log, z3_grid, zd_grid, FormulaResult};
use crate::error::{Error, Result};
use crate::graph::{is_pfaffian, pfaffian_orientation, PlaneGraph};
use crate::model::{build_K, ModelGraph};
use crate::poly::{det_fraction_free, det_numeric, nth_root_poly, MPoly};
use crate::product::{boustrophedon_grid, GridSpec};

pub use verify::{CheckResult, Suite};

/// Largest graph `pf --exact` expands symbolically.
pub const MAX_EXACT_VERTICES: usize = 20;
/// Largest graph `pf --numeric` evaluates.
pub const MAX_NUMERIC_VERTICES: usize = 1200;

pub const EXIT_FAILED_CHECK: u8 = 1;
pub const EXIT_BAD_INPUT: u8 = 2;
pub const EXIT_SIZE_CAP: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "monodimer", version, about = "Monopole-dimer partition functions and densities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Partition function of a plane graph or a grid.
    Pf(PfArgs),
    /// Cross-check the independent computation routes.
    Verify(VerifyArgs),
    /// Closed-form partition function of a grid.
    ClosedForm(ClosedFormArgs),
    /// Free energy and densities of the infinite grid.
    Density(DensityArgs),
    /// Monopole density at unit weights over a range of dimensions.
    DensitySweep(SweepArgs),
}

#[derive(Args, Debug, Serialize)]
#[command(group(ArgGroup::new("source").required(true).args(["graph", "dims", "spec"])))]
pub struct PfArgs {
    /// Graph JSON file.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// Grid side lengths, e.g. 2,2,2.
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,
    /// Grid JSON file.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Edge weight symbols of a grid, one per dimension.
    #[arg(long, value_delimiter = ',', conflicts_with = "graph")]
    pub edge_weights: Option<Vec<String>>,
    #[arg(long, default_value = "x")]
    pub vertex_weight: String,
    /// Expand the determinant symbolically. Without `--exact` or
    /// `--numeric`, graphs within the exact cap are expanded and larger ones
    /// evaluated.
    #[arg(long, conflicts_with = "numeric")]
    pub exact: bool,
    /// Evaluate the determinant at a point.
    #[arg(long)]
    pub numeric: bool,
    /// Values for the weight symbols, e.g. x=1,a=2; missing symbols are 1.
    #[arg(long)]
    pub at: Option<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Option<Suite>,
    /// Restrict the grid suite to one grid.
    #[arg(long, value_delimiter = ',')]
    pub dims: Option<Vec<usize>>,
    #[arg(long, default_value_t = 3)]
    pub max_dim: usize,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct ClosedFormArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub dims: Vec<usize>,
    /// Edge weights, one per dimension; all 1 when omitted.
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1.0)]
    pub x: f64,
    /// Report in log space.
    #[arg(long)]
    pub log: bool,
    /// Count two-dimensional dimer coverings (ignores `--x`).
    #[arg(long)]
    pub dimers: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct QuadratureArgs {
    /// Gauss-Legendre nodes per axis.
    #[arg(long, default_value_t = 64)]
    pub nodes: usize,
    /// Kronecker samples per shift, used above four tensor axes.
    #[arg(long, default_value_t = 1 << 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl QuadratureArgs {
    fn options(&self) -> DensityOptions {
        DensityOptions {
            nodes: self.nodes,
            samples: self.samples,
            seed: self.seed,
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct DensityArgs {
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    /// Edge weights, one per dimension; all 1 when omitted.
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1.0)]
    pub x: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub quadrature: QuadratureArgs,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct SweepArgs {
    /// Dimensions as `lo..hi` (inclusive) or a list.
    #[arg(long, default_value = "3..11")]
    pub dims: String,
    #[arg(long, default_value_t = 1.0)]
    pub x: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub quadrature: QuadratureArgs,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Record of one invocation. Everything except `timing` is a function of
/// the arguments.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    pub version: String,
    pub seed: Option<u64>,
    pub outputs: Value,
    pub status: String,
    pub timing: Timing,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// Rounds to the printed precision of twelve significant digits.
pub fn sig12(v: f64) -> f64 {
    if v.is_finite() && v != 0.0 {
        format!("{v:.11e}").parse().unwrap_or(v)
    } else {
        v
    }
}

/// CSV cell for a float, in the same notation as the JSON output.
fn cell(v: f64) -> String {
    json!(sig12(v)).to_string()
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(f) = n.as_f64() {
                *v = json!(sig12(f));
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(o) => o.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("CLI values serialise")
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

/// Parses `name=value,name=value`.
pub fn parse_assignments(text: &str) -> Result<HashMap<String, f64>> {
    let mut out = HashMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected name=value, got {part:?}")))?;
        let v: f64 = value
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not a number: {value:?}")))?;
        if out.insert(name.trim().to_string(), v).is_some() {
            return Err(Error::Parse(format!("{name} assigned twice")));
        }
    }
    Ok(out)
}

/// Parses `lo..hi` (inclusive) or `d1,d2,...`.
pub fn parse_dims_range(text: &str) -> Result<Vec<usize>> {
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("not a dimension: {s:?}")))
    };
    if let Some((lo, hi)) = text.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
        if lo > hi {
            return Err(Error::Parse(format!("empty range {text:?}")));
        }
        Ok((lo..=hi).collect())
    } else {
        text.split(',').map(num).collect()
    }
}

fn cap(what: &'static str, actual: usize, limit: usize, hint: &'static str) -> Result<()> {
    if actual > limit {
        return Err(Error::SizeCap {
            what,
            actual,
            limit,
            hint,
        });
    }
    Ok(())
}

fn point_for(universe: &[String], at: &HashMap<String, f64>) -> Result<HashMap<String, f64>> {
    if let Some(unknown) = at.keys().find(|k| !universe.contains(k)) {
        return Err(Error::InvalidInput(format!(
            "--at names {unknown}, which is not a weight symbol (known: {})",
            universe.join(", ")
        )));
    }
    Ok(universe
        .iter()
        .map(|v| (v.clone(), at.get(v).copied().unwrap_or(1.0)))
        .collect())
}

fn cmd_pf(args: &PfArgs) -> Result<Value> {
    let at = args.at.as_deref().map(parse_assignments).transpose()?;
    let mut out = serde_json::Map::new();
    let mut even_grid_dims = None;
    let g = if let Some(path) = &args.graph {
        let (pg, given) = PlaneGraph::from_json(&read(path)?)?;
        let (o, source) = match given {
            Some(o) => (o, "file"),
            None => (pfaffian_orientation(&pg)?, "computed"),
        };
        out.insert("orientation".into(), json!(source));
        out.insert("pfaffian".into(), json!(is_pfaffian(&pg, &o)));
        ModelGraph::from_plane(&pg, &o, &MPoly::var(&args.vertex_weight))?
    } else {
        let spec = match (&args.spec, &args.dims) {
            (Some(path), _) => GridSpec::from_json(&read(path)?)?,
            (None, Some(dims)) => {
                let spec = GridSpec::new(dims.clone())?;
                let edges = args.edge_weights.clone().unwrap_or_else(|| spec.edge_weights.clone());
                spec.with_weights(&args.vertex_weight, edges)?
            }
            (None, None) => unreachable!("clap requires a source"),
        };
        if spec.dims.iter().all(|m| m % 2 == 0) && spec.d() >= 2 {
            even_grid_dims = Some(spec.d());
        }
        out.insert("dims".into(), json!(spec.dims));
        out.insert("edge_weights".into(), json!(spec.edge_weights));
        ModelGraph::from_grid(&boustrophedon_grid(&spec)?, &spec)?
    };
    out.insert("vertices".into(), json!(g.n()));
    out.insert("edges".into(), json!(g.edges().len()));
    let universe = g.universe();
    let exact = args.exact || (!args.numeric && at.is_none() && g.n() <= MAX_EXACT_VERTICES);
    if exact {
        cap("vertex count", g.n(), MAX_EXACT_VERTICES, "use --numeric with --at")?;
        let z = det_fraction_free(&build_K(&g));
        out.insert("mode".into(), json!("exact"));
        out.insert("polynomial".into(), json!(z.to_string()));
        out.insert("num_terms".into(), json!(z.num_terms()));
        out.insert("terms".into(), z.to_json());
        if let Some(d) = even_grid_dims {
            let r = 1u32 << (d - 1);
            if let Some(root) = nth_root_poly(&z, r) {
                out.insert("root".into(), json!({ "r": r, "base": root.to_string() }));
            }
        }
        if let Some(at) = &at {
            out.insert("value".into(), json!(z.eval_f64(&point_for(&universe, at)?)?));
        }
    } else {
        cap("vertex count", g.n(), MAX_NUMERIC_VERTICES, "use closed-form for grids")?;
        let point = point_for(&universe, at.as_ref().unwrap_or(&HashMap::new()))?;
        out.insert("mode".into(), json!("numeric"));
        let sorted: std::collections::BTreeMap<_, _> = point.iter().collect();
        out.insert("point".into(), json!(sorted));
        out.insert("value".into(), json!(det_numeric(&build_K(&g), &point)?));
    }
    Ok(Value::Object(out))
}

fn unit_or(weights: &Option<Vec<f64>>, d: usize) -> Result<Vec<f64>> {
    match weights {
        None => Ok(vec![1.0; d]),
        Some(w) if w.len() == d => Ok(w.clone()),
        Some(w) => Err(Error::InvalidInput(format!("{} weights for {d} dimensions", w.len()))),
    }
}

fn formula_json(r: &FormulaResult, log: bool) -> Value {
    let log_space = log || !r.is_representable();
    json!({
        "value": if log_space { Value::Null } else { json!(r.value) },
        "log_value": r.log_value,
        "sign": r.sign,
        "parity_case": r.parity_case,
        "log_space": log_space,
    })
}

fn cmd_closed_form(args: &ClosedFormArgs) -> Result<Value> {
    let w = unit_or(&args.weights, args.dims.len())?;
    let r = if args.dimers {
        if args.dims.len() != 2 {
            return Err(Error::InvalidInput("--dimers needs two dimensions".into()));
        }
        kasteleyn_2d_dimers_log(args.dims[0], args.dims[1], w[0], w[1])?
    } else if let [l, m, n] = args.dims[..] {
        z3_grid(l, m, n, w[0], w[1], w[2], args.x)?
    } else {
        zd_grid(&args.dims, &w, args.x)?
    };
    Ok(formula_json(&r, args.log))
}

fn density_csv(reports: &[DensityReport], full: bool) -> String {
    let mut s = String::new();
    if full {
        let d = reports.first().map_or(0, |r| r.rho_edges.len());
        let cols: Vec<String> = (1..=d).map(|i| format!("rho_a{i}")).collect();
        let _ = writeln!(s, "d,rho_x,{},phi,est_error", cols.join(","));
        for r in reports {
            let edges: Vec<String> = r.rho_edges.iter().map(|e| cell(*e)).collect();
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                r.d,
                cell(r.rho_x),
                edges.join(","),
                cell(r.phi),
                cell(r.est_error)
            );
        }
    } else {
        s.push_str("d,rho_x,est_error\n");
        for r in reports {
            let _ = writeln!(s, "{},{},{}", r.d, cell(r.rho_x), cell(r.est_error));
        }
    }
    s
}

fn cmd_density(args: &DensityArgs) -> Result<Value> {
    let w = unit_or(&args.weights, args.dim)?;
    let opts = args.quadrature.options();
    let r = if args.dim == 3 {
        rho_3_with(w[0], w[1], w[2], args.x, &opts)?
    } else {
        rho_d_x(args.dim, &w, args.x, &opts)?
    };
    if let Some(path) = &args.csv {
        write(path, &density_csv(std::slice::from_ref(&r), true))?;
    }
    let mut v = to_value(&r);
    v["sum_rule_residual"] = json!(r.sum_rule_residual());
    Ok(v)
}

fn cmd_density_sweep(args: &SweepArgs) -> Result<Value> {
    let dims = parse_dims_range(&args.dims)?;
    let reports = density_sweep(dims, args.x, &args.quadrature.options())?;
    if let Some(path) = &args.csv {
        write(path, &density_csv(&reports, false))?;
    }
    let decreasing = reports.windows(2).all(|p| p[1].rho_x < p[0].rho_x);
    Ok(json!({
        "rows": reports
            .iter()
            .map(|r| json!({ "d": r.d, "rho_x": r.rho_x, "est_error": r.est_error, "method": r.method }))
            .collect::<Vec<_>>(),
        "strictly_decreasing": decreasing,
    }))
}

/// Runs a parsed command, returning the manifest and the exit code.
pub fn run(cli: &Cli) -> Result<(RunManifest, u8)> {
    let start = Instant::now();
    let (name, parameters, seed, outputs, code) = match &cli.command {
        Command::Pf(a) => ("pf", to_value(a), None, cmd_pf(a)?, 0),
        Command::ClosedForm(a) => ("closed-form", to_value(a), None, cmd_closed_form(a)?, 0),
        Command::Density(a) => ("density", to_value(a), Some(a.quadrature.seed), cmd_density(a)?, 0),
        Command::DensitySweep(a) => (
            "density-sweep",
            to_value(a),
            Some(a.quadrature.seed),
            cmd_density_sweep(a)?,
            0,
        ),
        Command::Verify(a) => {
            let checks = verify::run(a)?;
            let ok = checks.iter().all(CheckResult::passed);
            let code = if ok { 0 } else { EXIT_FAILED_CHECK };
            ("verify", to_value(a), Some(a.seed), to_value(&checks), code)
        }
    };
    let mut manifest = RunManifest {
        command: name.to_string(),
        parameters,
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed,
        outputs,
        status: if code == 0 { "ok" } else { "failed" }.to_string(),
        timing: Timing {
            elapsed_ms: (start.elapsed().as_secs_f64() * 1e6).round() / 1e3,
        },
    };
    round_floats(&mut manifest.outputs);
    round_floats(&mut manifest.parameters);
    Ok((manifest, code))
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SizeCap { .. } => EXIT_SIZE_CAP,
        _ => EXIT_BAD_INPUT,
    }
}

/// Parses `args` (program name first), runs the command and prints the
/// manifest.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code().clamp(0, 255) as u8);
        }
    };
    match run(&cli) {
        Ok((manifest, code)) => {
            let text = serde_json::to_string_pretty(&manifest).expect("manifest serialises");
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}").and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_BAD_INPUT)
                }
                _ => ExitCode::from(code),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

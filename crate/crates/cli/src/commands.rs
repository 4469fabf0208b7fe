//! Subcommand grammar and handlers.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use logfront_core::exactalg::{poly_from_str, poly_parse, AlgebraError, SparsePoly, Var, VarSet};
use logfront_core::invariants::{
    classical_klein_check, curve_invariants, generic_degree_report, klein_generic, klein_sum, logfront_invariants,
    CoincidenceList, CurveInvariants, InvariantsError, RealSplit, SingularityProfile,
};
use logfront_core::lattice::{edge_marking, LatticeError, MarkedPolygon};
use logfront_core::logfront::{
    compute_logfront, elimination_order_check, validate_with_profiles, EliminationOrder, LogfrontError, PipelineOptions,
};
use logfront_core::numerics::{
    alga_sample, amoeba_area_estimate, amoeba_sample, cusp_detect, default_window, harnack_fiber_test, points_to_csv,
    points_to_svg, trace_real_locus, trace_to_csv, trace_to_svg, univariate_roots, FiberSolver, FloatPoly,
    NumericsConfig, NumericsError, SampleReport, TraceSet, Window, DEFAULT_CUSP_ANGLE,
};

use crate::json::render;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: AlgebraError },
    #[error("{path}: invalid singularity profile: {source}")]
    Profile { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Logfront(#[from] LogfrontError),
    #[error(transparent)]
    Invariants(#[from] InvariantsError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Read { .. } => "cli.read",
            CliError::Write { .. } => "cli.write",
            CliError::Parse { source, .. } => source.code(),
            CliError::Profile { .. } => "cli.profile",
            CliError::Logfront(e) => e.code(),
            CliError::Invariants(e) => e.code(),
            CliError::Lattice(e) => e.code(),
            CliError::Numerics(e) => e.code(),
            CliError::Usage(_) => "cli.usage",
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "logfront",
    version,
    about = "Log-fronts of plane curves: exact elimination, predictions, numerics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here instead of stdout. For `plot` this is the
    /// plot file (`.csv` or `.svg`) and the report goes to stdout.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eliminate, extract R and validate its Newton polygon.
    Compute(ComputeArgs),
    /// `compute` with P = z + w + 1.
    Dual(DualArgs),
    /// Lattice and invariant predictions without elimination.
    Predict(PairArgs),
    /// Invariants of a single curve.
    Invariants(CurveArgs),
    /// Harnack-curve formula, generic count and classical residual.
    Klein(PairArgs),
    /// Tangency residuals at sample points of a given R.
    Verify(VerifyArgs),
    /// Trace or sample a curve to CSV or SVG.
    Plot(PlotArgs),
    /// Fibre and area tests for the Harnack property.
    Harnack(HarnackArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OrderArg {
    WThenZ,
    ZThenW,
}

#[derive(Debug, Args)]
pub struct EliminationArgs {
    /// Bound on the total degree of the intermediate resultants.
    #[arg(long, default_value_t = 64)]
    pub degree_bound: u32,
    #[arg(long, value_enum, default_value = "w-then-z")]
    pub order: OrderArg,
    /// Also run the other elimination order and compare.
    #[arg(long)]
    pub check_order: bool,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long)]
    pub p: PathBuf,
    #[arg(long)]
    pub q: PathBuf,
    #[arg(long)]
    pub profile_p: Option<PathBuf>,
    #[arg(long)]
    pub profile_q: Option<PathBuf>,
    #[command(flatten)]
    pub elim: EliminationArgs,
}

#[derive(Debug, Args)]
pub struct DualArgs {
    #[arg(long)]
    pub q: PathBuf,
    #[arg(long)]
    pub profile_q: Option<PathBuf>,
    #[command(flatten)]
    pub elim: EliminationArgs,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub p: PathBuf,
    #[arg(long)]
    pub q: PathBuf,
    #[arg(long)]
    pub profile_p: Option<PathBuf>,
    #[arg(long)]
    pub profile_q: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long)]
    pub curve: PathBuf,
    #[arg(long)]
    pub profile: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub p: PathBuf,
    #[arg(long)]
    pub q: PathBuf,
    #[arg(long)]
    pub r: PathBuf,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PlotMode {
    /// Real zero set of R(a, b).
    Logfront,
    /// Real zero set of R(e^x, e^y).
    Frozen,
    /// (log|z|, log|w|) samples of P(z, w).
    Amoeba,
    /// (arg z, arg w) mod pi samples of P(z, w).
    Alga,
}

fn parse_window(s: &str) -> std::result::Result<Window, String> {
    Window::parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long)]
    pub expr: PathBuf,
    #[arg(long, value_enum)]
    pub mode: PlotMode,
    /// `x0,x1,y0,y1`; for amoeba and alga the x range is the range of log|z|.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
    pub window: Window,
    #[arg(long, default_value_t = 256, value_parser = clap::value_parser!(u32).range(8..=4096))]
    pub res: u32,
    #[arg(long, default_value_t = DEFAULT_CUSP_ANGLE)]
    pub cusp_angle: f64,
}

#[derive(Debug, Args)]
pub struct HarnackArgs {
    #[arg(long)]
    pub p: PathBuf,
    /// Grid points per axis for the fibre test.
    #[arg(long, default_value_t = 48)]
    pub grid: usize,
    #[arg(long, default_value_t = 1024)]
    pub theta_steps: usize,
    /// Monte Carlo samples for the area test.
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
    pub window: Option<Window>,
}

pub fn provenance() -> Value {
    json!({ "tool": "logfront", "version": env!("CARGO_PKG_VERSION") })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn read_poly(path: &Path) -> Result<SparsePoly> {
    poly_from_str(read(path)?.trim()).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn read_poly_in(path: &Path, vars: &[Var]) -> Result<SparsePoly> {
    let p = read_poly(path)?;
    if !p.used_vars().is_subset_of(VarSet::of(vars)) {
        let names: String = vars.iter().map(|v| v.name()).collect();
        return Err(CliError::Usage(format!(
            "{}: expected a polynomial in {names}, got {p}",
            path.display()
        )));
    }
    Ok(p)
}

fn read_profile(path: Option<&PathBuf>) -> Result<SingularityProfile> {
    match path {
        None => Ok(SingularityProfile::smooth()),
        Some(p) => serde_json::from_str(&read(p)?).map_err(|source| CliError::Profile {
            path: p.clone(),
            source,
        }),
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn emit(cli: &Cli, doc: Value) -> Result<()> {
    let text = render(&doc);
    let target = if matches!(cli.command, Command::Plot(_)) {
        None
    } else {
        cli.output.as_ref()
    };
    match target {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs the parsed command; returns the exit status.
pub fn run(cli: &Cli) -> Result<u8> {
    let (command, body, status) = match &cli.command {
        Command::Compute(a) => {
            let p = read_poly(&a.p)?;
            let q = read_poly(&a.q)?;
            let (body, status) = compute(&p, &q, a.profile_p.as_ref(), a.profile_q.as_ref(), &a.elim)?;
            ("compute", body, status)
        }
        Command::Dual(a) => {
            let p = poly_parse("z + w + 1").expect("literal line");
            let q = read_poly(&a.q)?;
            let (body, status) = compute(&p, &q, None, a.profile_q.as_ref(), &a.elim)?;
            ("dual", body, status)
        }
        Command::Predict(a) => ("predict", predict(a)?, 0),
        Command::Invariants(a) => ("invariants", invariants(a)?, 0),
        Command::Klein(a) => ("klein", klein(a)?, 0),
        Command::Verify(a) => ("verify", verify(a)?, 0),
        Command::Plot(a) => {
            let out = cli
                .output
                .as_ref()
                .ok_or_else(|| CliError::Usage("plot needs -o out.csv or -o out.svg".into()))?;
            ("plot", plot(a, out)?, 0)
        }
        Command::Harnack(a) => ("harnack", harnack(a)?, 0),
    };
    let doc = json!({ "command": command, "report": body, "provenance": provenance() });
    emit(cli, doc)?;
    Ok(status)
}

fn compute(
    p: &SparsePoly,
    q: &SparsePoly,
    profile_p: Option<&PathBuf>,
    profile_q: Option<&PathBuf>,
    elim: &EliminationArgs,
) -> Result<(Value, u8)> {
    let pp = read_profile(profile_p)?;
    let pq = read_profile(profile_q)?;
    let opts = PipelineOptions {
        order: match elim.order {
            OrderArg::WThenZ => EliminationOrder::WThenZ,
            OrderArg::ZThenW => EliminationOrder::ZThenW,
        },
        degree_bound: elim.degree_bound,
        ..PipelineOptions::default()
    };
    let mut result = compute_logfront(p, q, &pp, &pq, &opts)?;
    let validation = validate_with_profiles(&mut result, p, q, &pp, &pq)?;
    let order_check = if elim.check_order {
        let c = elimination_order_check(p, q, &pp, &pq, &opts)?;
        Some(json!({ "agree": c.agree }))
    } else {
        None
    };
    let status = if validation.matched { 0 } else { 2 };
    let body = json!({
        "p": p.to_string(),
        "q": q.to_string(),
        "logfront": to_value(&result.to_json()),
        "validation": to_value(&validation),
        "order_check": order_check,
    });
    Ok((body, status))
}

struct Curve {
    poly: SparsePoly,
    polygon: MarkedPolygon,
    invariants: CurveInvariants,
}

impl Curve {
    fn load(path: &Path, profile: Option<&PathBuf>) -> Result<Curve> {
        let poly = read_poly_in(path, &[Var::Z, Var::W])?;
        let polygon = edge_marking(&poly)?;
        let invariants = curve_invariants(&polygon, &read_profile(profile)?)?;
        Ok(Curve {
            poly,
            polygon,
            invariants,
        })
    }

    fn to_json(&self) -> Value {
        json!({
            "poly": self.poly.to_string(),
            "polygon": to_value(&self.polygon.to_json()),
            "metrics": to_value(&self.polygon.polygon.metrics()),
            "invariants": to_value(&self.invariants),
        })
    }
}

fn predict(a: &PairArgs) -> Result<Value> {
    let p = Curve::load(&a.p, a.profile_p.as_ref())?;
    let q = Curve::load(&a.q, a.profile_q.as_ref())?;
    let lf = logfront_invariants(
        &p.polygon,
        &p.invariants,
        &q.polygon,
        &q.invariants,
        &CoincidenceList::new(vec![])?,
    )?;
    let predicted = lf.polygon.as_ref().map(|m| to_value(&m.to_json()));
    let generic = generic_degree_report(i64::from(p.poly.total_degree()), i64::from(q.poly.total_degree()))
        .ok()
        .map(|g| to_value(&g));
    Ok(json!({
        "p": p.to_json(),
        "q": q.to_json(),
        "logfront": to_value(&lf),
        "polygon_predicted": predicted,
        "generic_closed_forms": generic,
    }))
}

fn invariants(a: &CurveArgs) -> Result<Value> {
    Ok(Curve::load(&a.curve, a.profile.as_ref())?.to_json())
}

fn klein(a: &PairArgs) -> Result<Value> {
    let p = Curve::load(&a.p, a.profile_p.as_ref())?;
    let q = Curve::load(&a.q, a.profile_q.as_ref())?;
    let report = klein_sum(&p.polygon, &p.invariants, &q.polygon, &q.invariants)?;
    let (dp, dq) = (i64::from(p.poly.total_degree()), i64::from(q.poly.total_degree()));
    let generic = klein_generic(dp, dq).ok();
    // With P a line, R is the dual curve and the classical identity applies.
    let classical = if dp == 1 {
        let lf = logfront_invariants(
            &p.polygon,
            &p.invariants,
            &q.polygon,
            &q.invariants,
            &CoincidenceList::new(vec![])?,
        )?;
        let d_star = lf.polygon.as_ref().map(|m| m.polygon.total_degree()).unwrap_or(0);
        let qs = RealSplit {
            b_re_plus: q.invariants.numbers.b_re_plus,
            c_re: q.invariants.numbers.c_re,
        };
        // Only 2 b+ + c of R enters the residual.
        let rs = RealSplit {
            b_re_plus: 0,
            c_re: report.value,
        };
        Some(json!({
            "d": dq,
            "d_star": d_star,
            "residual": classical_klein_check(dq, d_star, qs, rs),
        }))
    } else {
        None
    };
    Ok(json!({
        "p": p.to_json(),
        "q": q.to_json(),
        "klein": to_value(&report),
        "generic": generic,
        "classical": classical,
    }))
}

fn verify(a: &VerifyArgs) -> Result<Value> {
    let p = read_poly_in(&a.p, &[Var::Z, Var::W])?;
    let q = read_poly_in(&a.q, &[Var::Z, Var::W])?;
    let r = read_poly_in(&a.r, &[Var::A, Var::B])?;
    if r.degree(Var::B) == 0 {
        return Err(CliError::Usage("R must depend on b".into()));
    }
    let solver = FiberSolver::new(&p, &q)?;
    let fr = FloatPoly::ab(&r);
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut points = Vec::with_capacity(a.samples);
    let mut attempts = 0;
    while points.len() < a.samples {
        attempts += 1;
        if attempts > 20 * a.samples.max(1) {
            return Err(CliError::Usage(format!("could not sample {} points of R", a.samples)));
        }
        let av = Complex64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..std::f64::consts::TAU));
        let Ok(roots) = univariate_roots(&fr.coeffs_in_y(av)) else {
            continue;
        };
        let roots: Vec<Complex64> = roots.into_iter().map(|c| c.value).filter(|b| b.norm() > 1e-8).collect();
        if roots.is_empty() {
            continue;
        }
        let bv = roots[rng.random_range(0..roots.len())];
        let residual = solver.residual(av, bv).unwrap_or(f64::INFINITY);
        points.push((av, bv, residual));
    }
    let report = SampleReport::from_residuals(&points, a.tol);
    Ok(json!({ "samples": to_value(&report), "tolerance": a.tol, "seed": a.seed }))
}

fn summarize_trace(t: &TraceSet, cusp_angle: f64) -> (Value, Vec<logfront_core::numerics::DetectedCusp>) {
    let cusps = cusp_detect(t, cusp_angle);
    let v = json!({
        "polylines": t.polylines.len(),
        "points": t.num_points(),
        "max_residual": t.max_residual(),
        "tolerance": t.tolerance,
        "dropped": t.dropped,
        "cusps": to_value(&cusps),
    });
    (v, cusps.cusps)
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1).max(1) as f64).collect()
}

fn plot(a: &PlotArgs, out: &Path) -> Result<Value> {
    let ext = out
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or("")
        .to_ascii_lowercase();
    if ext != "csv" && ext != "svg" {
        return Err(CliError::Usage(format!(
            "{}: plot file must end in .csv or .svg",
            out.display()
        )));
    }
    let res = a.res as usize;
    let (text, summary) = match a.mode {
        PlotMode::Logfront | PlotMode::Frozen => {
            let r = read_poly_in(&a.expr, &[Var::A, Var::B])?;
            let fr = FloatPoly::ab(&r);
            let t = if a.mode == PlotMode::Logfront {
                trace_real_locus(|x, y| fr.eval_real(x, y), a.window, res, &r.to_string())?
            } else {
                trace_real_locus(|x, y| fr.eval_real(x.exp(), y.exp()), a.window, res, &r.to_string())?
            };
            let (summary, cusps) = summarize_trace(&t, a.cusp_angle);
            let text = if ext == "csv" {
                trace_to_csv(&t)
            } else {
                trace_to_svg(&t, &cusps)
            };
            (text, summary)
        }
        PlotMode::Amoeba | PlotMode::Alga => {
            let p = read_poly_in(&a.expr, &[Var::Z, Var::W])?;
            let xs = linspace(a.window.x0, a.window.x1, res);
            let (pts, view) = if a.mode == PlotMode::Amoeba {
                let pts: Vec<[f64; 2]> = amoeba_sample(&p, &xs, res)?
                    .into_iter()
                    .filter(|q| a.window.contains(*q))
                    .collect();
                (pts, a.window)
            } else {
                let pi = std::f64::consts::PI;
                (
                    alga_sample(&p, &xs, res)?,
                    Window {
                        x0: 0.0,
                        x1: pi,
                        y0: 0.0,
                        y1: pi,
                    },
                )
            };
            let text = if ext == "csv" {
                points_to_csv(&pts)
            } else {
                points_to_svg(&pts, &view)
            };
            (text, json!({ "points": pts.len() }))
        }
    };
    std::fs::write(out, text).map_err(|source| CliError::Write {
        path: out.to_path_buf(),
        source,
    })?;
    Ok(json!({
        "mode": to_value(&a.mode),
        "window": to_value(&a.window),
        "resolution": res,
        "plot": out.display().to_string(),
        "summary": summary,
    }))
}

fn harnack(a: &HarnackArgs) -> Result<Value> {
    let p = read_poly_in(&a.p, &[Var::Z, Var::W])?;
    if p.degree(Var::W) == 0 {
        return Err(CliError::Usage("P must depend on w".into()));
    }
    let window = a.window.unwrap_or_else(|| default_window(&p));
    let fiber = harnack_fiber_test(&p, window, a.grid, a.theta_steps, &NumericsConfig::default())?;
    let area = amoeba_area_estimate(&p, window, a.samples, a.seed)?;
    Ok(json!({
        "p": p.to_string(),
        "fiber": to_value(&fiber),
        "area": to_value(&area),
        "harnack": fiber.pass && area.harnack_area_verdict,
    }))
}

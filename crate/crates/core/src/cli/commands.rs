use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::Deserialize;

use super::{read_text, with_output, Failure, NumericArgs, SolveArgs, SolveKind, SpinorArgs, TransformArgs};
use crate::algebra::{Biquaternion, Complex};
use crate::diffops::{BqField, GridHeader, SpatialField};
use crate::physics::{OmegaSpinor, XiSpinor};
use crate::quadrature::QuadratureSpec;
use crate::source::{parse_sign, SourceSpec};
use crate::transforms::TransformConfig;
use crate::waves::{
    biwave_residual, biwave_solve, harmonic_md_solve, harmonic_residual, kirchhoff_maxwell, maxwell_solution_residual,
    md_residual, md_solve, DerivativeRoute, SolveOptions,
};
use crate::{Error, Result, SpacetimePoint};

const FIELD_COLUMNS: [&str; 12] =
    ["tau", "x1", "x2", "x3", "s_re", "s_im", "v1_re", "v1_im", "v2_re", "v2_im", "v3_re", "v3_im"];

/// Shortest round-trip text, switching to exponent form for tiny or huge values.
fn num(v: f64) -> String {
    format!("{v:?}")
}

fn field_cells(p: &SpacetimePoint, b: &Biquaternion) -> Vec<String> {
    let mut cells: Vec<String> = p.coords().iter().map(|v| num(*v)).collect();
    for c in b.components() {
        cells.push(num(c.re));
        cells.push(num(c.im));
    }
    cells
}

fn csv_error(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

fn write_csv(w: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(header).map_err(csv_error)?;
    for r in rows {
        wtr.write_record(r).map_err(csv_error)?;
    }
    wtr.flush()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointRecord {
    tau: f64,
    x: [f64; 3],
}

pub(super) fn transform(args: &TransformArgs, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let config: TransformConfig = serde_json::from_str(&read_text(&args.config)?)
        .map_err(|e| Error::Parse { line: e.line(), message: format!("{}: {e}", args.config.display()) })?;
    let map = config.to_map()?;
    let reader: Box<dyn BufRead> = match &args.input {
        Some(p) => Box::new(BufReader::new(std::fs::File::open(p).map_err(|e| super::io_failure(p, e))?)),
        None => Box::new(BufReader::new(io::stdin())),
    };
    let mut rows = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Parse { line: i + 1, message: e.to_string() })?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: PointRecord =
            serde_json::from_str(&line).map_err(|e| Error::Parse { line: i + 1, message: e.to_string() })?;
        let z = SpacetimePoint::new(rec.tau, rec.x);
        if !z.is_finite() {
            return Err(Error::Parse { line: i + 1, message: "non-finite coordinate".into() }.into());
        }
        let w = map.apply(&z);
        let (before, after) = (z.to_bq().pseudonorm(), w.to_bq().pseudonorm());
        let mut cells: Vec<String> = w.coords().iter().map(|v| num(*v)).collect();
        cells.extend([before.re, before.im, after.re, after.im].map(num));
        rows.push(cells);
    }
    let header = [
        "tau",
        "x1",
        "x2",
        "x3",
        "pseudonorm_before_re",
        "pseudonorm_before_im",
        "pseudonorm_after_re",
        "pseudonorm_after_im",
    ];
    with_output(args.out.as_deref(), out, |w| write_csv(w, &header, &rows))
}

fn default_sign() -> String {
    "+".into()
}

fn unit_weight() -> [f64; 2] {
    [1.0, 0.0]
}

/// `solve --config` file.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveConfig {
    /// `G` (biwave), `Θ` (maxwell) or `F` (md, harmonic, static).
    pub source: SourceSpec,
    /// Cauchy data at `τ = 0` for biwave and maxwell.
    #[serde(default)]
    pub initial: Option<SourceSpec>,
    #[serde(default = "default_sign")]
    pub sign: String,
    /// `[re, im]`.
    #[serde(default)]
    pub mass: [f64; 2],
    #[serde(default)]
    pub omega: f64,
    #[serde(default)]
    pub rho: f64,
    /// Outgoing-wave weight of the harmonic kernel, `[re, im]`.
    #[serde(default = "unit_weight")]
    pub weight: [f64; 2],
    #[serde(default)]
    pub route: DerivativeRoute,
    pub grid: GridHeader,
}

fn parse_config<T: for<'de> Deserialize<'de>>(path: &Path) -> std::result::Result<T, Failure> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| Error::Parse { line: e.line(), message: format!("{}: {e}", path.display()) }.into())
}

fn options(n: &NumericArgs, route: DerivativeRoute) -> Result<SolveOptions> {
    let mut quad = QuadratureSpec::default();
    if let Some(r) = n.quad_r {
        quad.n_r = r;
    }
    if let Some(s) = n.quad_s {
        quad.n_s = s;
    }
    quad.validate()?;
    if !(n.fd_step.is_finite() && n.fd_step > 0.0) {
        return Err(Error::invalid(format!("--fd-step must be positive, got {}", n.fd_step)));
    }
    if let Some(t) = n.tol {
        if t.is_nan() || t < 0.0 {
            return Err(Error::invalid(format!("--tol must be a non-negative number, got {t}")));
        }
    }
    Ok(SolveOptions { quad, fd_step: n.fd_step, route })
}

type PointResult = Result<(Biquaternion, Option<f64>)>;

/// Evaluates `eval` over the grid in parallel, returning rows in grid order.
/// The first failing point (in grid order) becomes the error.
fn sample_grid(
    grid: &GridHeader,
    pool: &rayon::ThreadPool,
    eval: &(dyn Fn(&SpacetimePoint) -> PointResult + Sync),
) -> std::result::Result<Vec<(SpacetimePoint, Biquaternion, Option<f64>)>, Failure> {
    grid.validate()?;
    let points: Vec<SpacetimePoint> = grid.indices().map(|i| grid.point(i)).collect();
    let results: Vec<PointResult> = pool.install(|| points.par_iter().map(eval).collect());
    points
        .into_iter()
        .zip(results)
        .map(|(p, r)| {
            r.map(|(b, res)| (p, b, res))
                .map_err(|e| Failure::Input(format!("at point (tau={}, x={:?}): {e}", num(p.tau), p.x.map(num))))
        })
        .collect()
}

fn emit(
    rows: &[(SpacetimePoint, Biquaternion, Option<f64>)],
    extra: impl Fn(&Biquaternion) -> Vec<f64>,
    extra_header: &[&str],
    residual: bool,
    numeric: &NumericArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    let mut header: Vec<&str> = FIELD_COLUMNS.to_vec();
    header.extend_from_slice(extra_header);
    if residual {
        header.push("residual");
    }
    let mut max_res: f64 = 0.0;
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|(p, b, r)| {
            let mut c = field_cells(p, b);
            c.extend(extra(b).into_iter().map(num));
            if let Some(r) = r {
                max_res = if r.is_nan() { f64::NAN } else { max_res.max(*r) };
                c.push(num(*r));
            }
            c
        })
        .collect();
    with_output(numeric.out.as_deref(), out, |w| write_csv(w, &header, &cells))?;
    if residual {
        let _ = writeln!(err, "max_residual={max_res:e}");
        if let Some(t) = numeric.tol {
            if max_res.is_nan() || max_res > t {
                return Err(Failure::Verify(format!("max residual {max_res:e} exceeds tolerance {t:e}")));
            }
        }
    }
    Ok(())
}

pub(super) fn solve(
    args: &SolveArgs,
    pool: &rayon::ThreadPool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    let cfg: SolveConfig = parse_config(&args.config)?;
    let base = args.config.parent().unwrap_or(Path::new("."));
    let opts = options(&args.numeric, cfg.route)?;
    let sign = parse_sign(&cfg.sign)?;
    let h = opts.fd_step;
    let want_res = args.residual;
    let rows = match args.kind {
        SolveKind::Biwave | SolveKind::Maxwell | SolveKind::Md => {
            let src = cfg.source.to_field(base)?;
            let initial = cfg.initial.as_ref().map(|s| s.to_field(base)).transpose()?;
            let k0: Option<&dyn BqField> = initial.as_deref();
            let mass = Complex::new(cfg.mass[0], cfg.mass[1]);
            if args.kind == SolveKind::Md && k0.is_some() {
                return Err(Failure::Input("md kind takes no initial data".into()));
            }
            let kind = args.kind;
            let src = src.as_ref();
            sample_grid(&cfg.grid, pool, &|p| {
                let (value, res) = match kind {
                    SolveKind::Biwave => (
                        biwave_solve(sign, src, k0, p, &opts)?,
                        want_res.then(|| biwave_residual(sign, src, k0, p, &opts, h)).transpose()?,
                    ),
                    SolveKind::Maxwell => (
                        kirchhoff_maxwell(src, k0, p, &opts)?,
                        want_res.then(|| maxwell_solution_residual(src, k0, p, &opts, h)).transpose()?,
                    ),
                    _ => (
                        md_solve(mass, sign, src, p, &opts)?,
                        want_res.then(|| md_residual(mass, sign, src, p, &opts, h)).transpose()?,
                    ),
                };
                Ok((value, res.map(|r| r.norm())))
            })?
        }
        SolveKind::Harmonic | SolveKind::Static => {
            if cfg.initial.is_some() {
                return Err(Failure::Input("time-harmonic kinds take no initial data".into()));
            }
            let omega = if args.kind == SolveKind::Static { 0.0 } else { cfg.omega };
            let rho = cfg.rho;
            if omega + rho == 0.0 {
                return Err(Error::ZeroWaveNumber.into());
            }
            let f = cfg.source.to_spatial_field()?;
            let f: &dyn SpatialField = f.as_ref();
            let weight = Complex::new(cfg.weight[0], cfg.weight[1]);
            sample_grid(&cfg.grid, pool, &|p| {
                let value = harmonic_md_solve(omega, rho, sign, f, p.x, weight, &opts)?;
                let res = want_res.then(|| harmonic_residual(omega, rho, sign, f, p.x, weight, &opts, h)).transpose()?;
                Ok((value, res.map(|r| r.norm())))
            })?
        }
    };
    emit(&rows, |_| Vec::new(), &[], want_res, &args.numeric, out, err)
}

/// `spinor --config` file: either `{xi, rho, sign}` or `{omega, rho, e}`, plus `grid`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum SpinorConfig {
    Xi(XiConfig),
    Omega(OmegaConfig),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XiConfig {
    pub xi: [f64; 3],
    #[serde(default)]
    pub rho: f64,
    #[serde(default = "default_sign")]
    pub sign: String,
    pub grid: GridHeader,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaConfig {
    pub omega: f64,
    #[serde(default)]
    pub rho: f64,
    pub e: [f64; 3],
    pub grid: GridHeader,
}

pub(super) fn spinor(
    args: &SpinorArgs,
    pool: &rayon::ThreadPool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::result::Result<(), Failure> {
    let cfg: SpinorConfig = parse_config(&args.config)?;
    let h = options(&args.numeric, DerivativeRoute::default())?.fd_step;
    let want = args.dirac_residual;
    let rows = match &cfg {
        SpinorConfig::Xi(c) => {
            let sp = XiSpinor::new(c.xi, c.rho, parse_sign(&c.sign)?)?;
            sample_grid(&c.grid, pool, &|p| {
                let res = want.then(|| sp.dirac_residual(p, h)).transpose()?;
                Ok((sp.eval(p)?, res.map(|r| r.norm())))
            })?
        }
        SpinorConfig::Omega(c) => {
            let sp = OmegaSpinor::new(c.omega, c.rho, c.e)?;
            sample_grid(&c.grid, pool, &|p| {
                let res = want.then(|| sp.gradiental_residual(p.x, h)).transpose()?;
                Ok((SpatialField::eval(&sp, p.x)?, res.map(|r| r.norm())))
            })?
        }
    };
    let extra = |b: &Biquaternion| vec![b.norm(), b.pseudonorm_sqr()];
    emit(&rows, extra, &["norm", "pseudonorm_sqr"], want, &args.numeric, out, err)
}

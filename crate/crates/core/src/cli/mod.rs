//! The `squaretile` command line.
//!
//! All logic lives in [`run`], which takes explicit streams so that it can
//! be driven from tests. Exit codes: `0` success, `1` invalid input or
//! failed processing, `2` usage error. Failures print one line of the form
//! `error[<code>]: <message>` on standard error.

pub mod document;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use crate::belyi::{
    barycentric_subdivide, barycentric_subdivide_triangulation, passport, riemann_hurwitz_genus,
};
use crate::cartography::Dessin;
use crate::csmap::{CsMap, CsMapSpec, QuadratureConfig, TriangleToSquare};
use crate::metric::face_closure_residual;
use crate::tiling::{
    corner_bipartition, diagonal_subdivision, refine_2x2, validate_tricoloring, TilingError,
};
use crate::CellIndex;

pub use document::{DessinDocument, DocumentError};

#[derive(Debug, Parser)]
#[command(
    name = "squaretile",
    version,
    about = "Dessins, square tilings and their coordinate maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Io {
    /// Input document, or `-` for standard input.
    #[arg(default_value = "-")]
    input: PathBuf,
    /// Output file (standard output if omitted).
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a document and report every violated invariant.
    Validate {
        #[arg(default_value = "-")]
        input: PathBuf,
    },
    /// Print cell counts, genus and the face-degree histogram.
    Info {
        #[arg(default_value = "-")]
        input: PathBuf,
    },
    /// Replace every square by a 2x2 block of squares.
    Refine(Io),
    /// Cut a square tiling along its diagonals into a tricolored dessin.
    Subdivide(Io),
    /// Barycentric subdivision of a triangulation.
    Barycentric(Io),
    /// Print the passport and the Riemann-Hurwitz genus of a tricolored dessin.
    Passport {
        #[arg(default_value = "-")]
        input: PathBuf,
    },
    /// Sample a coordinate map on a rectangular grid of t values.
    MapEval {
        /// One of square_cell, triangle_coord, square_coord.
        #[arg(long)]
        spec: String,
        /// Points per axis.
        #[arg(long, default_value_t = 11)]
        grid: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        re_min: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        re_max: f64,
        #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
        im_min: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        im_max: f64,
        /// Gauss-Jacobi nodes per path piece.
        #[arg(long, default_value_t = 32)]
        nodes: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Apply the triangle to square transform to `x,y` rows of a CSV file.
    Transform(Io),
}

/// A failure with a stable machine-readable code.
#[derive(Debug)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    fn new(code: &'static str, message: impl ToString) -> Self {
        CliError {
            code,
            message: message.to_string(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

struct Streams<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Streams<'_> {
    fn read_input(&mut self, path: &Path) -> CliResult<String> {
        let mut text = String::new();
        if path.as_os_str() == "-" {
            self.stdin
                .read_to_string(&mut text)
                .map_err(|e| CliError::new("io", format!("reading standard input: {e}")))?;
        } else {
            text = fs::read_to_string(path)
                .map_err(|e| CliError::new("io", format!("reading {}: {e}", path.display())))?;
        }
        Ok(text)
    }

    fn emit(&mut self, out: Option<&Path>, text: &str) -> CliResult<()> {
        match out {
            Some(path) => fs::write(path, text)
                .map_err(|e| CliError::new("io", format!("writing {}: {e}", path.display()))),
            None => self
                .stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::new("io", format!("writing standard output: {e}"))),
        }
    }

    fn notice(&mut self, msg: &str) {
        let _ = writeln!(self.stderr, "notice: {msg}");
    }
}

fn load(streams: &mut Streams, path: &Path) -> CliResult<(DessinDocument, Dessin)> {
    let text = streams.read_input(path)?;
    let doc = DessinDocument::parse(&text).map_err(|e| CliError::new("parse", e))?;
    let d = doc
        .dessin()
        .map_err(|e| CliError::new("invalid-dessin", e))?;
    Ok((doc, d))
}

/// Formats `x` with 12 significant digits in the style of C's `%.12g`,
/// printing negative zero as `0`.
pub fn format_sig12(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = trim(&format!("{x:.decimals$}"));
        if fixed == "-0" {
            "0".into()
        } else {
            fixed
        }
    } else {
        format!("{}e{}", trim(mantissa), exp)
    }
}

fn validate(streams: &mut Streams, path: &Path) -> CliResult<()> {
    let text = streams.read_input(path)?;
    let doc = DessinDocument::parse(&text).map_err(|e| CliError::new("parse", e))?;
    let violations = crate::cartography::validate(&doc.rho0, &doc.rho1)
        .map_err(|e| CliError::new("parse", e))?;
    let mut problems: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
    if problems.is_empty() {
        let d = doc
            .dessin()
            .map_err(|e| CliError::new("invalid-dessin", e))?;
        match doc.metric_data(&d) {
            Some(Err(e)) => problems.push(format!("metric: {e}")),
            Some(Ok(m)) => {
                for f in 0..d.faces().count() {
                    let (pos, heading) = face_closure_residual(&d, &m, CellIndex::face(f))
                        .map_err(|e| CliError::new("invalid-metric", e))?;
                    let tol = crate::metric::CLOSURE_TOLERANCE;
                    if pos.norm() > tol || heading.abs() > tol {
                        problems.push(format!(
                            "metric: face {f} does not close (position {:e}, heading {:e})",
                            pos.norm(),
                            heading
                        ));
                    }
                }
            }
            None => {}
        }
        match doc.tricolored(&d) {
            Some(Err(e)) => problems.push(format!("colors: {e}")),
            Some(Ok(t)) => problems.extend(
                validate_tricoloring(&t)
                    .iter()
                    .map(|v| format!("colors: {v}")),
            ),
            None => {}
        }
    }
    let mut report = String::new();
    for p in &problems {
        report.push_str(&format!("violation: {p}\n"));
    }
    if problems.is_empty() {
        report.push_str("valid\n");
    }
    streams.emit(None, &report)?;
    if problems.is_empty() {
        Ok(())
    } else {
        Err(CliError::new(
            "invalid",
            format!("{} violation(s)", problems.len()),
        ))
    }
}

fn info(streams: &mut Streams, path: &Path) -> CliResult<()> {
    let (_, d) = load(streams, path)?;
    let (v, e, f) = d.cell_counts();
    let mut histogram = BTreeMap::new();
    for size in d.faces().sizes() {
        *histogram.entry(size).or_insert(0usize) += 1;
    }
    let mut out = format!("V={v} E={e} F={f} genus={}\n", d.genus());
    out.push_str("face degrees:");
    for (size, count) in histogram {
        out.push_str(&format!(" {size}x{count}"));
    }
    out.push('\n');
    streams.emit(None, &out)
}

fn tiling_error(e: TilingError) -> CliError {
    match e {
        TilingError::NotSquareTiling { .. } => CliError::new("not-square-tiling", e),
        _ => CliError::new("tiling", e),
    }
}

fn refine(streams: &mut Streams, io: &Io) -> CliResult<()> {
    let (_, d) = load(streams, &io.input)?;
    let r = refine_2x2(&d).map_err(tiling_error)?;
    streams.emit(
        io.out.as_deref(),
        &DessinDocument::from_dessin(&r).to_canonical_string(),
    )
}

fn subdivide(streams: &mut Streams, io: &Io) -> CliResult<()> {
    let (_, d) = load(streams, &io.input)?;
    let (tiling, labels) = match corner_bipartition(&d) {
        Ok(labels) => (d, labels),
        Err(TilingError::NonBipartite { .. }) => {
            let r = refine_2x2(&d).map_err(tiling_error)?;
            streams.notice("auto-refined 2x2");
            let labels = corner_bipartition(&r).map_err(tiling_error)?;
            (r, labels)
        }
        Err(e) => return Err(tiling_error(e)),
    };
    let t = diagonal_subdivision(&tiling, &labels).map_err(tiling_error)?;
    streams.emit(
        io.out.as_deref(),
        &DessinDocument::from_tricolored(&t).to_canonical_string(),
    )
}

fn barycentric(streams: &mut Streams, io: &Io) -> CliResult<()> {
    let (doc, d) = load(streams, &io.input)?;
    let result = match doc.tricolored(&d) {
        Some(t) => {
            let t = t.map_err(|e| CliError::new("invalid-colors", e))?;
            barycentric_subdivide(&t)
        }
        None => barycentric_subdivide_triangulation(&d),
    }
    .map_err(|e| CliError::new("barycentric", e))?;
    streams.emit(
        io.out.as_deref(),
        &DessinDocument::from_tricolored(&result).to_canonical_string(),
    )
}

fn passport_cmd(streams: &mut Streams, path: &Path) -> CliResult<()> {
    let (doc, d) = load(streams, path)?;
    let t = doc
        .tricolored(&d)
        .ok_or_else(|| CliError::new("missing-colors", "passport needs a [colors] block"))?
        .map_err(|e| CliError::new("invalid-colors", e))?;
    let p = passport(&t).map_err(|e| CliError::new("passport", e))?;
    let g = riemann_hurwitz_genus(&p).map_err(|e| CliError::new("passport", e))?;
    streams.emit(None, &format!("{p}\ngenus={g}\n"))
}

fn grid_axis(min: f64, max: f64, n: usize, k: usize) -> f64 {
    if n == 1 {
        min
    } else if k + 1 == n {
        max
    } else {
        min + (max - min) * k as f64 / (n - 1) as f64
    }
}

#[allow(clippy::too_many_arguments)]
fn map_eval(
    streams: &mut Streams,
    spec: &str,
    grid: usize,
    re: (f64, f64),
    im: (f64, f64),
    nodes: usize,
    out: Option<&Path>,
) -> CliResult<()> {
    let spec = CsMapSpec::by_name(spec).map_err(|e| CliError::new("unknown-spec", e))?;
    if grid == 0 {
        return Err(CliError::new("bad-grid", "--grid must be at least 1"));
    }
    if ![re.0, re.1, im.0, im.1].iter().all(|v| v.is_finite()) {
        return Err(CliError::new("bad-grid", "grid bounds must be finite"));
    }
    let cfg = QuadratureConfig {
        node_count: nodes,
        ..Default::default()
    };
    let map = CsMap::new(spec, cfg).map_err(|e| CliError::new("numeric", e))?;

    // rows from the top edge (im_max) down, re increasing within a row
    let points: Vec<Complex64> = (0..grid)
        .flat_map(|j| {
            let y = grid_axis(im.1, im.0, grid, j);
            (0..grid).map(move |k| Complex64::new(grid_axis(re.0, re.1, grid, k), y))
        })
        .collect();
    let values = evaluate_parallel(&points, |t| map.eval(t).ok());

    let mut csv = String::from("t_re,t_im,z_re,z_im\n");
    let mut failed = 0;
    for (t, z) in points.iter().zip(&values) {
        let z = z.unwrap_or_else(|| {
            failed += 1;
            Complex64::new(f64::NAN, f64::NAN)
        });
        csv.push_str(&format!(
            "{},{},{},{}\n",
            format_sig12(t.re),
            format_sig12(t.im),
            format_sig12(z.re),
            format_sig12(z.im)
        ));
    }
    if failed > 0 {
        streams.notice(&format!("{failed} point(s) could not be evaluated"));
    }
    streams.emit(out, &csv)
}

/// Evaluates `f` on every point, spreading the work over the available
/// cores. The result order matches `points`.
fn evaluate_parallel<F>(points: &[Complex64], f: F) -> Vec<Option<Complex64>>
where
    F: Fn(Complex64) -> Option<Complex64> + Sync,
{
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(points.len().max(1));
    let chunk = points.len().div_ceil(workers).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> = points
            .chunks(chunk)
            .map(|part| {
                let f = &f;
                s.spawn(move || part.iter().map(|&t| f(t)).collect::<Vec<_>>())
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("evaluation thread panicked"))
            .collect()
    })
}

fn parse_csv_points(text: &str) -> CliResult<Vec<Complex64>> {
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed = match fields.as_slice() {
            [x, y] => x.parse::<f64>().ok().zip(y.parse::<f64>().ok()),
            _ => None,
        };
        match parsed {
            Some((x, y)) => points.push(Complex64::new(x, y)),
            // a header line is allowed before the first data row
            None if points.is_empty() && fields.len() == 2 && i == 0 => continue,
            None => {
                return Err(CliError::new(
                    "parse",
                    format!("line {}: expected two numbers \"x,y\", got {line:?}", i + 1),
                ))
            }
        }
    }
    Ok(points)
}

fn transform(streams: &mut Streams, io: &Io) -> CliResult<()> {
    let text = streams.read_input(&io.input)?;
    let points = parse_csv_points(&text)?;
    let tts = TriangleToSquare::new(QuadratureConfig::default())
        .map_err(|e| CliError::new("numeric", e))?;
    let values = evaluate_parallel(&points, |z| tts.apply(z).ok());
    let mut csv = String::from("x,y,X,Y\n");
    let mut failed = 0;
    for (z, w) in points.iter().zip(&values) {
        let w = w.unwrap_or_else(|| {
            failed += 1;
            Complex64::new(f64::NAN, f64::NAN)
        });
        csv.push_str(&format!(
            "{},{},{},{}\n",
            format_sig12(z.re),
            format_sig12(z.im),
            format_sig12(w.re),
            format_sig12(w.im)
        ));
    }
    if failed > 0 {
        streams.notice(&format!(
            "{failed} point(s) outside the triangle or not invertible"
        ));
    }
    streams.emit(io.out.as_deref(), &csv)
}

fn dispatch(streams: &mut Streams, cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Validate { input } => validate(streams, &input),
        Command::Info { input } => info(streams, &input),
        Command::Refine(io) => refine(streams, &io),
        Command::Subdivide(io) => subdivide(streams, &io),
        Command::Barycentric(io) => barycentric(streams, &io),
        Command::Passport { input } => passport_cmd(streams, &input),
        Command::MapEval {
            spec,
            grid,
            re_min,
            re_max,
            im_min,
            im_max,
            nodes,
            out,
        } => map_eval(
            streams,
            &spec,
            grid,
            (re_min, re_max),
            (im_min, im_max),
            nodes,
            out.as_deref(),
        ),
        Command::Transform(io) => transform(streams, &io),
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let mut streams = Streams {
        stdin,
        stdout,
        stderr,
    };
    match dispatch(&mut streams, cli) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(streams.stderr, "error[{}]: {}", e.code, e.message);
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_formatting() {
        assert_eq!(format_sig12(0.0), "0");
        assert_eq!(format_sig12(-0.0), "0");
        assert_eq!(format_sig12(1.0), "1");
        assert_eq!(format_sig12(-0.5), "-0.5");
        assert_eq!(format_sig12(std::f64::consts::PI), "3.14159265359");
        assert_eq!(format_sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig12(123456789012345.0), "1.23456789012e14");
        assert_eq!(format_sig12(1.5e-7), "1.5e-7");
        assert_eq!(format_sig12(0.0001234), "0.0001234");
        assert_eq!(format_sig12(-1e-20), "-1e-20");
        assert_eq!(format_sig12(999999999999.5), "1e12");
        assert_eq!(format_sig12(f64::NAN), "nan");
    }

    #[test]
    fn grid_axis_hits_endpoints() {
        assert_eq!(grid_axis(0.0, -1.0, 3, 0), 0.0);
        assert_eq!(grid_axis(0.0, -1.0, 3, 1), -0.5);
        assert_eq!(grid_axis(0.0, -1.0, 3, 2), -1.0);
        assert_eq!(grid_axis(2.0, 5.0, 1, 0), 2.0);
    }

    #[test]
    fn csv_header_is_optional() {
        assert_eq!(
            parse_csv_points("x,y\n0.5,-0.25\n").unwrap(),
            vec![Complex64::new(0.5, -0.25)]
        );
        assert_eq!(parse_csv_points("0.5, -0.25\n\n1,0\n").unwrap().len(), 2);
        assert!(parse_csv_points("0.5,-0.25\nfoo,bar\n").is_err());
        assert!(parse_csv_points("1,2,3\n").is_err());
    }
}

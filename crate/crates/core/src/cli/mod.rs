//! Command-line front end behind the `poncelet` binary.
//!
//! Every subcommand prints JSON by default (floats as 17 significant digits);
//! some also emit CSV or SVG. Errors go to stderr as one JSON object, with
//! exit code 2 for bad input and 3 for numerical failures.

pub mod output;
pub mod parse;
pub mod svg;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::{billiard_closure, closure_eccentricity, critical_feasibility_with_tol, ConvexBody, Ellipse};
use crate::ggt::{contraction_to_verblunsky, ggt_build, DEFAULT_CONTRACTION_TOL};
use crate::matrix::CMatrix;
use crate::numrange::{
    boundary_distance, boundary_sweep, frame_tangent_points, frames, kippenhahn_chords, polygon_contains,
    SupportInterpolant,
};
use crate::opuc::{second_kind, szego_forward, verblunsky_from_phi, VerblunskyWord};
use crate::poly::{roots, MonicPoly, DEFAULT_ROOT_TOL};
use crate::popuc::{
    christoffel_weights, popuc_zeros, resolvent_m_function, weights_from_blaschke_derivative,
    weights_from_eigenvectors, PonceletFrame,
};
use crate::wendroff::{reconstruct_from_two_popuc, reconstruct_second_kind, CircularConfiguration};
use output::{coeffs, cxs, nums, Cx, FrameJson, Num, WordJson};
use parse::{parse_complex, parse_complex_list, parse_matrix};

pub const DEFAULT_FIGURE_EIGS: &str = "0.7i,0.8e34i,0.57e4i";
const BILLIARD_TOL: f64 = 1e-8;
const FIGURE_CURVE_LAMBDAS: usize = 512;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot access {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if !e.is_input_error() => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.kind(),
            CliError::Usage(_) => "UsageError",
            CliError::Io { .. } => "IoError",
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Parser)]
#[command(name = "poncelet", version, about = "OPUC, paraorthogonal zeros, numerical ranges and Poncelet polygons")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Override the command's acceptance tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

/// Exactly one source for the Verblunsky word.
#[derive(Debug, Clone, Args)]
pub struct WordArgs {
    /// Verblunsky coefficients, e.g. `0.5,i/3` style literals `0.5,0.3333i`.
    #[arg(long, allow_hyphen_values = true)]
    pub alphas: Option<String>,
    /// Eigenvalues (zeros of Φ_n) instead of coefficients.
    #[arg(long, allow_hyphen_values = true)]
    pub eigs: Option<String>,
    /// JSON file `{"alphas": [[re, im], ...], "lambda": [re, im]}`.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Szegő recursion: Φ_k, Φ_n*, Ψ_n and norms.
    Opuc {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Zeros, weights and tangent points of Φ_{n+1}(·; λ).
    PopucZeros {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// The three weight formulas side by side.
    Weights {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// M-function by partial fractions, rational form and resolvent.
    Mfunction {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Evaluation points inside the disk.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
    },
    /// Boundary of the numerical range by the tangent-point sweep.
    Numrange {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value_t = 256)]
        lambdas: usize,
    },
    /// Outer polygons for equally spaced λ.
    Polygons {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value_t = 16)]
        lambdas: usize,
    },
    /// Complete graphs on the POPUC zeros.
    Chords {
        #[command(flatten)]
        word: WordArgs,
        #[arg(long, default_value_t = 16)]
        lambdas: usize,
    },
    /// Recover (α, λ, μ) from two POPUC zero sets.
    Wendroff2 {
        #[arg(long, allow_hyphen_values = true)]
        first: String,
        #[arg(long, allow_hyphen_values = true)]
        second: String,
    },
    /// Recover (α, λ) from first- and second-kind POPUC zeros.
    WendroffSecondKind {
        #[arg(long, allow_hyphen_values = true)]
        first: String,
        #[arg(long, allow_hyphen_values = true)]
        second: String,
    },
    /// Verblunsky coefficients of a defect-one contraction.
    ContractionInvert {
        /// Rows separated by `;`, entries by `,`.
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
        /// File holding a matrix in the same text form.
        #[arg(long)]
        matrix_file: Option<PathBuf>,
    },
    /// Are these points the critical points of a polynomial with unimodular zeros?
    Critical {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    /// Tangent-chord billiard around an ellipse or a numerical range.
    Billiard {
        /// Two foci of an ellipse.
        #[arg(long, allow_hyphen_values = true)]
        foci: Option<String>,
        #[arg(long)]
        semimajor: Option<f64>,
        /// Pick the semimajor axis for which the orbit closes after `steps`.
        #[arg(long)]
        close: bool,
        #[command(flatten)]
        word: WordArgs,
        /// Start angle in radians.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        start: f64,
        #[arg(long, default_value_t = 3)]
        steps: usize,
        /// λ samples for a swept body.
        #[arg(long, default_value_t = 256)]
        lambdas: usize,
    },
    /// Outer polygons and complete graphs with the numerical range, as two SVG files.
    Figure {
        #[arg(long, default_value = DEFAULT_FIGURE_EIGS, allow_hyphen_values = true)]
        eigs: String,
        #[arg(long, default_value_t = 64)]
        lambdas: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Debug, Serialize)]
pub struct MValueJson {
    z: Cx,
    partial_fractions: Cx,
    rational: Cx,
    resolvent: Cx,
}

#[derive(Debug, Serialize)]
pub struct ChordSetJson {
    lambda: Cx,
    chords: Vec<[Cx; 2]>,
}

#[derive(Debug, Serialize)]
pub struct FigureChecks {
    weight_deviation: Num,
    weight_sum_deviation: Num,
    ratio_law: Num,
    boundary_distance: Num,
    polygons_contain_curve: bool,
}

#[derive(Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Report {
    Opuc {
        word: WordJson,
        phi: Vec<Vec<Cx>>,
        phistar: Vec<Cx>,
        psi: Vec<Cx>,
        norms: Vec<Num>,
        #[serde(skip_serializing_if = "Option::is_none")]
        paraorthogonal: Option<Vec<Cx>>,
    },
    PopucZeros {
        word: WordJson,
        frame: FrameJson,
    },
    Weights {
        word: WordJson,
        lambda: Cx,
        zeros: Vec<Cx>,
        kernel: Vec<Num>,
        eigenvector: Vec<Num>,
        blaschke: Vec<Num>,
        christoffel: Vec<Num>,
        max_deviation: Num,
        sum_deviation: Num,
    },
    Mfunction {
        word: WordJson,
        lambda: Cx,
        values: Vec<MValueJson>,
        max_deviation: Num,
    },
    Numrange {
        word: WordJson,
        eigenvalues: Vec<Cx>,
        samples: Vec<Cx>,
        normals: Vec<Num>,
        oracle_distance: Num,
    },
    Polygons {
        word: WordJson,
        eigenvalues: Vec<Cx>,
        frames: Vec<FrameJson>,
    },
    Chords {
        word: WordJson,
        eigenvalues: Vec<Cx>,
        chord_sets: Vec<ChordSetJson>,
    },
    Wendroff2 {
        word: WordJson,
        lambda: Cx,
        mu: Cx,
    },
    WendroffSecondKind {
        word: WordJson,
        lambda: Cx,
        weights: Vec<Num>,
    },
    ContractionInvert {
        word: WordJson,
        eigenvalues: Vec<Cx>,
    },
    Critical {
        points: Vec<Cx>,
        symmetric: Vec<Cx>,
        lambda: Cx,
        residuals: Vec<Cx>,
        max_residual: Num,
        feasible: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<Vec<Cx>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness_zeros: Option<Vec<Cx>>,
    },
    Billiard {
        body: &'static str,
        #[serde(skip_serializing_if = "Option::is_none")]
        foci: Option<[Cx; 2]>,
        #[serde(skip_serializing_if = "Option::is_none")]
        semimajor: Option<Num>,
        orbit: Vec<Cx>,
        argsum: Num,
        defect: Num,
        closed: bool,
    },
    Figure {
        eigenvalues: Vec<Cx>,
        word: WordJson,
        lambdas: usize,
        files: Vec<String>,
        checks: FigureChecks,
    },
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

struct Artifact {
    report: Report,
    table: Option<Table>,
    svg: Option<String>,
}

impl Artifact {
    fn json(report: Report) -> Self {
        Self { report, table: None, svg: None }
    }
}

fn f(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Deserialize)]
struct WordFile {
    alphas: Vec<[f64; 2]>,
    lambda: Option<[f64; 2]>,
}

fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn resolve_word(w: &WordArgs) -> CliResult<(VerblunskyWord, Option<Complex64>)> {
    let given = [w.alphas.is_some(), w.eigs.is_some(), w.input.is_some()].iter().filter(|b| **b).count();
    if given != 1 {
        return Err(CliError::Usage("give exactly one of --alphas, --eigs, --input".into()));
    }
    if let Some(a) = &w.alphas {
        return Ok((VerblunskyWord::interior_only(parse_complex_list(a)?)?, None));
    }
    if let Some(e) = &w.eigs {
        let phi = MonicPoly::from_roots(&parse_complex_list(e)?);
        return Ok((verblunsky_from_phi(&phi)?, None));
    }
    let path = w.input.as_ref().expect("checked above");
    let file: WordFile = serde_json::from_str(&read_text(path)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let alphas = file.alphas.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
    Ok((VerblunskyWord::interior_only(alphas)?, file.lambda.map(|[re, im]| Complex64::new(re, im))))
}

fn resolve_lambda(flag: &Option<String>, from_file: Option<Complex64>) -> CliResult<Complex64> {
    match (flag, from_file) {
        (Some(s), _) => Ok(parse_complex(s)?),
        (None, Some(l)) => Ok(l),
        (None, None) => Err(CliError::Usage("--lambda is required".into())),
    }
}

fn eigenvalues(word: &VerblunskyWord) -> CliResult<Vec<Complex64>> {
    let seq = szego_forward(&word.without_terminal());
    Ok(roots(seq.phi_n().as_poly(), DEFAULT_ROOT_TOL)?)
}

fn tolerance(cli: &Cli, default: f64) -> CliResult<f64> {
    match cli.tol {
        Some(t) if !(t.is_finite() && t > 0.0) => Err(CliError::Usage("--tol must be positive".into())),
        Some(t) => Ok(t),
        None => Ok(default),
    }
}

fn frame_json(frame: &PonceletFrame) -> CliResult<FrameJson> {
    let tangent: Vec<Complex64> = if frame.degree() == 0 {
        Vec::new()
    } else {
        frame_tangent_points(frame)?.into_iter().map(|(z, _)| z).collect()
    };
    Ok(FrameJson::new(frame, &tangent))
}

fn frame_rows(k: usize, frame: &PonceletFrame) -> Vec<Vec<String>> {
    frame
        .zeros()
        .iter()
        .enumerate()
        .map(|(j, z)| {
            vec![
                k.to_string(),
                j.to_string(),
                f(z.re),
                f(z.im),
                f(frame.weights()[j]),
                f(frame.christoffel()[j]),
            ]
        })
        .collect()
}

const FRAME_HEADER: [&str; 6] = ["frame", "j", "re", "im", "weight", "christoffel"];

fn draw_range(canvas: &mut svg::Canvas, curve: &[Complex64], eig: &[Complex64]) {
    canvas.polygon("boundary", curve, "#c0392b", 2.0);
    for z in eig {
        canvas.dot("eigenvalue", *z, 5.0, "black");
    }
}

fn cmd_opuc(word: &WordArgs, lambda: &Option<String>) -> CliResult<Artifact> {
    let (w, file_lambda) = resolve_word(word)?;
    let lambda = match (lambda, file_lambda) {
        (None, None) => None,
        (l, fl) => Some(resolve_lambda(l, fl)?),
    };
    let full = match lambda {
        Some(l) => w.with_terminal(l)?,
        None => w.clone(),
    };
    let seq = szego_forward(&full);
    let n = w.len();
    let psi = second_kind(&w);
    let phi: Vec<Vec<Cx>> = (0..=n).map(|k| coeffs(seq.phi(k).as_poly())).collect();
    let mut rows = Vec::new();
    for k in 0..=n {
        for (p, c) in seq.phi(k).coeffs().iter().enumerate() {
            rows.push(vec![k.to_string(), p.to_string(), f(c.re), f(c.im)]);
        }
    }
    let report = Report::Opuc {
        word: WordJson::from(&full),
        phi,
        phistar: coeffs(seq.phistar(n)),
        psi: coeffs(psi.phi_n().as_poly()),
        norms: nums(&seq.norms()[..=n]),
        paraorthogonal: seq.paraorthogonal().map(|p| coeffs(p.as_poly())),
    };
    Ok(Artifact { report, table: Some(Table { header: vec!["degree", "power", "re", "im"], rows }), svg: None })
}

fn cmd_popuc(word: &WordArgs, lambda: &Option<String>) -> CliResult<Artifact> {
    let (w, fl) = resolve_word(word)?;
    let frame = popuc_zeros(&w, resolve_lambda(lambda, fl)?)?;
    let table = Table { header: FRAME_HEADER.to_vec(), rows: frame_rows(0, &frame) };
    let report = Report::PopucZeros { word: WordJson::from(&w), frame: frame_json(&frame)? };
    Ok(Artifact { report, table: Some(table), svg: None })
}

fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn cmd_weights(word: &WordArgs, lambda: &Option<String>) -> CliResult<Artifact> {
    let (w, fl) = resolve_word(word)?;
    let lambda = resolve_lambda(lambda, fl)?;
    let frame = popuc_zeros(&w, lambda)?;
    let (q, kernel) = christoffel_weights(&w, frame.zeros())?;
    let eig = weights_from_eigenvectors(&w, lambda, frame.zeros())?;
    let blaschke = weights_from_blaschke_derivative(&w, frame.zeros())?;
    let dev = max_dev(&kernel, &eig.weights).max(max_dev(&kernel, &blaschke)).max(max_dev(&eig.weights, &blaschke));
    let rows = (0..kernel.len())
        .map(|j| vec![j.to_string(), f(kernel[j]), f(eig.weights[j]), f(blaschke[j]), f(q[j])])
        .collect();
    let report = Report::Weights {
        word: WordJson::from(&w),
        lambda: Cx(lambda),
        zeros: cxs(frame.zeros()),
        kernel: nums(&kernel),
        eigenvector: nums(&eig.weights),
        blaschke: nums(&blaschke),
        christoffel: nums(&q),
        max_deviation: Num(dev),
        sum_deviation: Num((kernel.iter().sum::<f64>() - 1.0).abs()),
    };
    let header = vec!["j", "kernel", "eigenvector", "blaschke", "christoffel"];
    Ok(Artifact { report, table: Some(Table { header, rows }), svg: None })
}

fn cmd_mfunction(word: &WordArgs, lambda: &Option<String>, z: &str) -> CliResult<Artifact> {
    let (w, fl) = resolve_word(word)?;
    let lambda = resolve_lambda(lambda, fl)?;
    let frame = popuc_zeros(&w, lambda)?;
    let mut values = Vec::new();
    let mut rows = Vec::new();
    let mut dev: f64 = 0.0;
    for p in parse_complex_list(z)? {
        let m = frame.m_function(p)?;
        let r = resolvent_m_function(&w, lambda, p)?;
        dev = dev.max((m.partial_fractions - m.rational).norm()).max((m.partial_fractions - r).norm());
        rows.push(vec![
            f(p.re),
            f(p.im),
            f(m.partial_fractions.re),
            f(m.partial_fractions.im),
            f(m.rational.re),
            f(m.rational.im),
            f(r.re),
            f(r.im),
        ]);
        values.push(MValueJson { z: Cx(p), partial_fractions: Cx(m.partial_fractions), rational: Cx(m.rational), resolvent: Cx(r) });
    }
    let header = vec!["z_re", "z_im", "partial_re", "partial_im", "rational_re", "rational_im", "resolvent_re", "resolvent_im"];
    let report = Report::Mfunction { word: WordJson::from(&w), lambda: Cx(lambda), values, max_deviation: Num(dev) };
    Ok(Artifact { report, table: Some(Table { header, rows }), svg: None })
}

fn cmd_numrange(word: &WordArgs, lambdas: usize) -> CliResult<Artifact> {
    let (w, _) = resolve_word(word)?;
    let curve = boundary_sweep(&w, lambdas)?;
    let eig = eigenvalues(&w)?;
    let dist = boundary_distance(&curve, ggt_build(&w).entries(), 256)?;
    let normals: Vec<f64> = curve.sources().iter().map(|s| s.normal()).collect();
    let rows = curve
        .samples()
        .iter()
        .zip(&normals)
        .enumerate()
        .map(|(k, (z, n))| vec![k.to_string(), f(z.re), f(z.im), f(*n)])
        .collect();
    let mut canvas = svg::Canvas::new();
    canvas.unit_circle();
    draw_range(&mut canvas, curve.samples(), &eig);
    let report = Report::Numrange {
        word: WordJson::from(&w),
        eigenvalues: cxs(&eig),
        samples: cxs(curve.samples()),
        normals: nums(&normals),
        oracle_distance: Num(dist),
    };
    Ok(Artifact {
        report,
        table: Some(Table { header: vec!["k", "re", "im", "normal"], rows }),
        svg: Some(canvas.finish()),
    })
}

fn cmd_polygons(word: &WordArgs, lambdas: usize) -> CliResult<Artifact> {
    let (w, _) = resolve_word(word)?;
    let fr = frames(&w, lambdas)?;
    let eig = eigenvalues(&w)?;
    let mut canvas = svg::Canvas::new();
    canvas.unit_circle();
    for frame in &fr {
        canvas.polygon("outer", frame.zeros(), "#1f4e9c", 0.6);
    }
    if lambdas >= crate::numrange::MIN_SWEEP {
        draw_range(&mut canvas, boundary_sweep(&w, lambdas.max(256))?.samples(), &eig);
    }
    let rows = fr.iter().enumerate().flat_map(|(k, frame)| frame_rows(k, frame)).collect();
    let report = Report::Polygons {
        word: WordJson::from(&w),
        eigenvalues: cxs(&eig),
        frames: fr.iter().map(frame_json).collect::<CliResult<_>>()?,
    };
    Ok(Artifact { report, table: Some(Table { header: FRAME_HEADER.to_vec(), rows }), svg: Some(canvas.finish()) })
}

fn cmd_chords(word: &WordArgs, lambdas: usize) -> CliResult<Artifact> {
    let (w, _) = resolve_word(word)?;
    let sets = kippenhahn_chords(&w, lambdas)?;
    let eig = eigenvalues(&w)?;
    let mut canvas = svg::Canvas::new();
    canvas.unit_circle();
    let mut rows = Vec::new();
    for (k, set) in sets.iter().enumerate() {
        for (a, b) in &set.chords {
            canvas.line("chord", *a, *b, "#555555", 0.4);
            rows.push(vec![k.to_string(), f(a.re), f(a.im), f(b.re), f(b.im)]);
        }
    }
    if lambdas >= crate::numrange::MIN_SWEEP {
        draw_range(&mut canvas, boundary_sweep(&w, lambdas.max(256))?.samples(), &eig);
    }
    let report = Report::Chords {
        word: WordJson::from(&w),
        eigenvalues: cxs(&eig),
        chord_sets: sets
            .iter()
            .map(|s| ChordSetJson { lambda: Cx(s.lambda), chords: s.chords.iter().map(|(a, b)| [Cx(*a), Cx(*b)]).collect() })
            .collect(),
    };
    let header = vec!["frame", "a_re", "a_im", "b_re", "b_im"];
    Ok(Artifact { report, table: Some(Table { header, rows }), svg: Some(canvas.finish()) })
}

fn configuration(first: &str, second: &str) -> CliResult<CircularConfiguration> {
    Ok(CircularConfiguration::new(parse_complex_list(first)?, parse_complex_list(second)?)?)
}

fn word_rows(w: &VerblunskyWord) -> Table {
    let rows = w.interior().iter().enumerate().map(|(k, a)| vec![k.to_string(), f(a.re), f(a.im)]).collect();
    Table { header: vec!["k", "re", "im"], rows }
}

fn cmd_wendroff2(first: &str, second: &str) -> CliResult<Artifact> {
    let rec = reconstruct_from_two_popuc(&configuration(first, second)?)?;
    let table = word_rows(&rec.word);
    let report = Report::Wendroff2 { word: WordJson::from(&rec.word), lambda: Cx(rec.lambda), mu: Cx(rec.mu) };
    Ok(Artifact { report, table: Some(table), svg: None })
}

fn cmd_wendroff_second(first: &str, second: &str) -> CliResult<Artifact> {
    let rec = reconstruct_second_kind(&configuration(first, second)?)?;
    let table = word_rows(&rec.word);
    let report =
        Report::WendroffSecondKind { word: WordJson::from(&rec.word), lambda: Cx(rec.lambda), weights: nums(&rec.weights) };
    Ok(Artifact { report, table: Some(table), svg: None })
}

fn cmd_contraction(cli: &Cli, matrix: &Option<String>, file: &Option<PathBuf>) -> CliResult<Artifact> {
    let text = match (matrix, file) {
        (Some(m), None) => m.clone(),
        (None, Some(p)) => read_text(p)?,
        _ => return Err(CliError::Usage("give exactly one of --matrix, --matrix-file".into())),
    };
    let a = CMatrix::from_rows(&parse_matrix(&text)?)?;
    let w = contraction_to_verblunsky(&a, tolerance(cli, DEFAULT_CONTRACTION_TOL)?)?;
    let eig = eigenvalues(&w)?;
    let table = word_rows(&w);
    Ok(Artifact { report: Report::ContractionInvert { word: WordJson::from(&w), eigenvalues: cxs(&eig) }, table: Some(table), svg: None })
}

fn cmd_critical(cli: &Cli, points: &str) -> CliResult<Artifact> {
    let a = parse_complex_list(points)?;
    let rep = critical_feasibility_with_tol(&a, tolerance(cli, crate::geometry::FEASIBLE_TOL)?)?;
    let witness_zeros = match &rep.witness {
        Some(p) => Some(cxs(&roots(p.as_poly(), DEFAULT_ROOT_TOL)?)),
        None => None,
    };
    let rows = rep
        .residuals
        .iter()
        .enumerate()
        .map(|(j, r)| vec![j.to_string(), f(r.re), f(r.im)])
        .collect();
    let report = Report::Critical {
        points: cxs(&a),
        symmetric: cxs(&rep.symmetric),
        lambda: Cx(rep.lambda),
        residuals: cxs(&rep.residuals),
        max_residual: Num(rep.max_residual),
        feasible: rep.feasible,
        witness: rep.witness.as_ref().map(|p| coeffs(p.as_poly())),
        witness_zeros,
    };
    Ok(Artifact { report, table: Some(Table { header: vec!["j", "re", "im"], rows }), svg: None })
}

#[allow(clippy::too_many_arguments)]
fn cmd_billiard(
    cli: &Cli,
    foci: &Option<String>,
    semimajor: Option<f64>,
    close: bool,
    word: &WordArgs,
    start: f64,
    steps: usize,
    lambdas: usize,
) -> CliResult<Artifact> {
    if !start.is_finite() {
        return Err(CliError::Usage("--start must be finite".into()));
    }
    let w0 = Complex64::from_polar(1.0, start);
    let tol = tolerance(cli, BILLIARD_TOL)?;
    let mut canvas = svg::Canvas::new();
    canvas.unit_circle();
    let (body_name, foci_out, axis, rep) = if let Some(fs) = foci {
        let pts = parse_complex_list(fs)?;
        if pts.len() != 2 {
            return Err(CliError::Usage("--foci needs exactly two points".into()));
        }
        let ellipse = match (close, semimajor) {
            (true, None) => closure_eccentricity(pts[0], pts[1], steps)?,
            (false, Some(a)) => Ellipse::new(pts[0], pts[1], a)?,
            _ => return Err(CliError::Usage("with --foci give exactly one of --semimajor, --close".into())),
        };
        canvas.polygon("body", &ellipse.boundary(512), "#c0392b", 2.0);
        let rep = billiard_closure(&ellipse as &dyn ConvexBody, w0, steps)?;
        ("ellipse", Some([Cx(pts[0]), Cx(pts[1])]), Some(Num(ellipse.semimajor())), rep)
    } else {
        if close || semimajor.is_some() {
            return Err(CliError::Usage("--close and --semimajor need --foci".into()));
        }
        let (w, _) = resolve_word(word)?;
        let curve = boundary_sweep(&w, lambdas)?;
        canvas.polygon("body", curve.samples(), "#c0392b", 2.0);
        let body = SupportInterpolant::new(&curve)?;
        ("numerical-range", None, None, billiard_closure(&body, w0, steps)?)
    };
    canvas.polygon("orbit", &rep.orbit[..rep.orbit.len() - 1], "#1f4e9c", 1.0);
    let rows = rep.orbit.iter().enumerate().map(|(k, z)| vec![k.to_string(), f(z.re), f(z.im)]).collect();
    let report = Report::Billiard {
        body: body_name,
        foci: foci_out,
        semimajor: axis,
        orbit: cxs(&rep.orbit),
        argsum: Num(rep.argsum),
        defect: Num(rep.defect),
        closed: rep.defect < tol,
    };
    Ok(Artifact { report, table: Some(Table { header: vec!["k", "re", "im"], rows }), svg: Some(canvas.finish()) })
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn cmd_figure(cli: &Cli, eigs: &str, lambdas: usize, out_dir: &Path) -> CliResult<Artifact> {
    if cli.format != Format::Json {
        return Err(CliError::Usage("figure writes SVG files and reports in JSON".into()));
    }
    let eig = parse_complex_list(eigs)?;
    let w = verblunsky_from_phi(&MonicPoly::from_roots(&eig))?;
    let fr = frames(&w, lambdas)?;
    let curve = boundary_sweep(&w, lambdas.max(FIGURE_CURVE_LAMBDAS))?;

    let mut weight_dev: f64 = 0.0;
    let mut sum_dev: f64 = 0.0;
    let mut ratio: f64 = 0.0;
    let mut inside = true;
    for frame in &fr {
        let eigw = weights_from_eigenvectors(&w, frame.lambda(), frame.zeros())?;
        let bl = weights_from_blaschke_derivative(&w, frame.zeros())?;
        let m = frame.weights();
        weight_dev = weight_dev.max(max_dev(m, &eigw.weights)).max(max_dev(m, &bl)).max(max_dev(&eigw.weights, &bl));
        sum_dev = sum_dev.max((m.iter().sum::<f64>() - 1.0).abs());
        let z = frame.zeros();
        let k = z.len();
        for (j, (zeta, _)) in frame_tangent_points(frame)?.into_iter().enumerate() {
            let want = m[j] / m[(j + 1) % k];
            let got = (zeta - z[j]).norm() / (zeta - z[(j + 1) % k]).norm();
            ratio = ratio.max((got - want).abs() / want.max(1.0));
        }
        inside &= curve.samples().iter().all(|p| polygon_contains(z, *p, 1e-8));
    }
    let dist = boundary_distance(&curve, ggt_build(&w).entries(), 256)?;

    let mut one = svg::Canvas::new();
    one.unit_circle();
    for frame in &fr {
        one.polygon("outer", frame.zeros(), "#1f4e9c", 0.6);
    }
    draw_range(&mut one, curve.samples(), &eig);
    let mut two = svg::Canvas::new();
    two.unit_circle();
    for set in kippenhahn_chords(&w, lambdas)? {
        for (a, b) in set.chords {
            two.line("chord", a, b, "#555555", 0.4);
        }
    }
    draw_range(&mut two, curve.samples(), &eig);

    std::fs::create_dir_all(out_dir)
        .map_err(|source| CliError::Io { path: out_dir.display().to_string(), source })?;
    let p1 = out_dir.join("figure1.svg");
    let p2 = out_dir.join("figure2.svg");
    write_file(&p1, &one.finish())?;
    write_file(&p2, &two.finish())?;
    Ok(Artifact::json(Report::Figure {
        eigenvalues: cxs(&eig),
        word: WordJson::from(&w),
        lambdas,
        files: vec![p1.display().to_string(), p2.display().to_string()],
        checks: FigureChecks {
            weight_deviation: Num(weight_dev),
            weight_sum_deviation: Num(sum_dev),
            ratio_law: Num(ratio),
            boundary_distance: Num(dist),
            polygons_contain_curve: inside,
        },
    }))
}

fn execute(cli: &Cli) -> CliResult<Artifact> {
    tolerance(cli, 1.0)?;
    match &cli.command {
        Command::Opuc { word, lambda } => cmd_opuc(word, lambda),
        Command::PopucZeros { word, lambda } => cmd_popuc(word, lambda),
        Command::Weights { word, lambda } => cmd_weights(word, lambda),
        Command::Mfunction { word, lambda, z } => cmd_mfunction(word, lambda, z),
        Command::Numrange { word, lambdas } => cmd_numrange(word, *lambdas),
        Command::Polygons { word, lambdas } => cmd_polygons(word, *lambdas),
        Command::Chords { word, lambdas } => cmd_chords(word, *lambdas),
        Command::Wendroff2 { first, second } => cmd_wendroff2(first, second),
        Command::WendroffSecondKind { first, second } => cmd_wendroff_second(first, second),
        Command::ContractionInvert { matrix, matrix_file } => cmd_contraction(cli, matrix, matrix_file),
        Command::Critical { points } => cmd_critical(cli, points),
        Command::Billiard { foci, semimajor, close, word, start, steps, lambdas } => {
            cmd_billiard(cli, foci, *semimajor, *close, word, *start, *steps, *lambdas)
        }
        Command::Figure { eigs, lambdas, out_dir } => cmd_figure(cli, eigs, *lambdas, out_dir),
    }
}

fn render(cli: &Cli, artifact: Artifact) -> CliResult<String> {
    match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&artifact.report)
                .map_err(|e| Error::consistency(format!("serializing report: {e}"), 1.0, 0.0))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let table = artifact.table.ok_or_else(|| CliError::Usage("csv output is not available here".into()))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Io { path: "<csv>".into(), source: e.into() };
            w.write_record(&table.header).map_err(io)?;
            for row in &table.rows {
                w.write_record(row).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io { path: "<csv>".into(), source: e.into_error() })?;
            Ok(String::from_utf8(bytes).expect("csv output is ascii"))
        }
        Format::Svg => artifact.svg.ok_or_else(|| CliError::Usage("svg output is not available here".into())),
    }
}

fn emit(cli: &Cli, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match &cli.output {
        Some(path) => write_file(path, text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
    exit_code: i32,
}

fn report_error(stderr: &mut dyn Write, e: &CliError) -> i32 {
    let code = e.exit_code();
    let body = serde_json::json!({ "error": ErrorBody { kind: e.kind(), message: e.to_string(), exit_code: code } });
    let _ = writeln!(stderr, "{body}");
    code
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            return report_error(stderr, &CliError::Usage(e.render().to_string().trim_end().to_string()));
        }
    };
    match execute(&cli).and_then(|a| render(&cli, a)).and_then(|text| emit(&cli, &text, stdout)) {
        Ok(()) => 0,
        Err(e) => report_error(stderr, &e),
    }
}

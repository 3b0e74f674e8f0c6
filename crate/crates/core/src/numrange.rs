//! Boundary of the numerical range of a GGT contraction.
//!
//! The primary route collects, for many unimodular `λ`, the points where the
//! edges of the polygon spanned by the POPUC zeros touch the range. An
//! independent route maximizes `Re(e^{-iφ}⟨v, Av⟩)` through a Hermitian
//! eigenproblem for each direction `φ`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{ensure_close, Error, Result};
use crate::ggt::ggt_build;
use crate::matrix::CMatrix;
use crate::opuc::VerblunskyWord;
use crate::popuc::{arg_2pi, popuc_zeros, PonceletFrame};

pub const CONVEXITY_TOL: f64 = 1e-9;
pub const RATIO_TOL: f64 = 1e-10;
pub const CONTAINS_ANGLES: usize = 128;
pub const MIN_SWEEP: usize = 8;

/// Where a boundary sample came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SampleSource {
    /// Tangent point of edge `edge` (zeros `edge`, `edge + 1` cyclically) of the
    /// polygon for `lambda`; `normal` is the outward normal angle of that edge.
    Tangent { lambda: Complex64, edge: usize, normal: f64 },
    /// Support point for direction `angle`.
    Support { angle: f64 },
}

impl SampleSource {
    /// Outward normal angle at the sample.
    pub fn normal(&self) -> f64 {
        match *self {
            SampleSource::Tangent { normal, .. } => normal,
            SampleSource::Support { angle } => angle,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCurve {
    samples: Vec<Complex64>,
    sources: Vec<SampleSource>,
}

impl BoundaryCurve {
    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn sources(&self) -> &[SampleSource] {
        &self.sources
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn centroid(&self) -> Complex64 {
        centroid(&self.samples)
    }

    /// Support function of the sample set: `max Re(e^{-iφ} p)`.
    pub fn support(&self, phi: f64) -> f64 {
        support_of_points(&self.samples, phi)
    }

    /// Largest gap between consecutive samples, closing edge included.
    pub fn max_spacing(&self) -> f64 {
        let n = self.samples.len();
        (0..n).map(|i| (self.samples[(i + 1) % n] - self.samples[i]).norm()).fold(0.0, f64::max)
    }

    /// Smallest cross product of consecutive edge vectors. Non-negative (up to
    /// rounding) for a counterclockwise convex curve.
    pub fn min_turn(&self) -> f64 {
        min_turn(&self.samples)
    }
}

/// Smooth support function of a sampled boundary: cubic Hermite interpolation
/// of `h(φ)` using `h` and `h' = Im(e^{-iφ} p)` at each sample's normal.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportInterpolant {
    normals: Vec<f64>,
    h: Vec<f64>,
    dh: Vec<f64>,
}

impl SupportInterpolant {
    pub fn new(curve: &BoundaryCurve) -> Result<Self> {
        let mut nodes: Vec<(f64, f64, f64)> = curve
            .samples
            .iter()
            .zip(&curve.sources)
            .map(|(p, s)| {
                let phi = s.normal().rem_euclid(TAU);
                let q = p * Complex64::from_polar(1.0, -phi);
                (phi, q.re, q.im)
            })
            .collect();
        nodes.sort_by(|a, b| a.0.total_cmp(&b.0));
        nodes.dedup_by(|b, a| b.0 - a.0 < 1e-13);
        if nodes.len() < 3 {
            return Err(Error::InvalidInput("support interpolation needs at least three normals".into()));
        }
        Ok(Self {
            normals: nodes.iter().map(|n| n.0).collect(),
            h: nodes.iter().map(|n| n.1).collect(),
            dh: nodes.iter().map(|n| n.2).collect(),
        })
    }

    pub fn eval(&self, phi: f64) -> f64 {
        let k = self.normals.len();
        let phi = phi.rem_euclid(TAU);
        let upper = self.normals.partition_point(|&x| x <= phi);
        let (i, j) = if upper == 0 || upper == k { (k - 1, 0) } else { (upper - 1, upper) };
        let start = self.normals[i];
        let mut width = self.normals[j] - start;
        if width <= 0.0 {
            width += TAU;
        }
        let mut t = phi - start;
        if t < 0.0 {
            t += TAU;
        }
        let s = t / width;
        let (s2, s3) = (s * s, s * s * s);
        (2.0 * s3 - 3.0 * s2 + 1.0) * self.h[i]
            + (s3 - 2.0 * s2 + s) * width * self.dh[i]
            + (-2.0 * s3 + 3.0 * s2) * self.h[j]
            + (s3 - s2) * width * self.dh[j]
    }
}

fn centroid(points: &[Complex64]) -> Complex64 {
    if points.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    points.iter().sum::<Complex64>() / points.len() as f64
}

pub fn support_of_points(points: &[Complex64], phi: f64) -> f64 {
    let dir = Complex64::from_polar(1.0, -phi);
    points.iter().map(|p| (p * dir).re).fold(f64::NEG_INFINITY, f64::max)
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

fn min_turn(points: &[Complex64]) -> f64 {
    let n = points.len();
    if n < 3 {
        return 0.0;
    }
    let mut worst = f64::INFINITY;
    for i in 0..n {
        let e1 = points[(i + 1) % n] - points[i];
        let e2 = points[(i + 2) % n] - points[(i + 1) % n];
        worst = worst.min(cross(e1, e2));
    }
    worst
}

/// Angle-sort about the centroid, ties broken by coordinates for determinism.
fn sort_about_centroid(samples: Vec<Complex64>, sources: Vec<SampleSource>) -> BoundaryCurve {
    let c = centroid(&samples);
    let mut idx: Vec<(f64, usize)> = samples.iter().enumerate().map(|(i, p)| (arg_2pi(p - c), i)).collect();
    idx.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then_with(|| samples[a.1].re.total_cmp(&samples[b.1].re))
            .then_with(|| samples[a.1].im.total_cmp(&samples[b.1].im))
    });
    BoundaryCurve {
        samples: idx.iter().map(|&(_, i)| samples[i]).collect(),
        sources: idx.iter().map(|&(_, i)| sources[i]).collect(),
    }
}

fn check_convex(curve: &BoundaryCurve) -> Result<()> {
    let c = curve.centroid();
    let spread = curve.samples.iter().map(|p| (p - c).norm()).fold(0.0, f64::max);
    if spread < 1e-12 {
        return Ok(());
    }
    let turn = curve.min_turn();
    if turn < -CONVEXITY_TOL {
        return Err(Error::Solver(format!("boundary samples are not convex (turn {turn:.3e})")));
    }
    Ok(())
}

fn require_interior(word: &VerblunskyWord) -> Result<()> {
    if word.terminal().is_some() {
        return Err(Error::InvalidInput("numerical range needs an interior word".into()));
    }
    if word.is_empty() {
        return Err(Error::InvalidInput("numerical range needs at least one coefficient".into()));
    }
    Ok(())
}

/// Tangent points of the polygon edges for a given frame.
pub fn frame_tangent_points(frame: &PonceletFrame) -> Result<Vec<(Complex64, f64)>> {
    let w = frame.zeros();
    let m = frame.weights();
    let k = w.len();
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        let (wa, wb) = (w[j], w[(j + 1) % k]);
        let (ma, mb) = (m[j], m[(j + 1) % k]);
        let zeta = (wb * ma + wa * mb) / (ma + mb);
        let da = (zeta - wa).norm();
        let db = (zeta - wb).norm();
        if db > 0.0 {
            ensure_close("tangent point ratio law", (da / db - ma / mb).abs() / (ma / mb).max(1.0), RATIO_TOL)?;
        }
        let ta = arg_2pi(wa);
        let mut tb = arg_2pi(wb);
        if tb <= ta {
            tb += TAU;
        }
        out.push((zeta, (0.5 * (ta + tb)).rem_euclid(TAU)));
    }
    Ok(out)
}

/// Points where the edges of the degree-(n+1) POPUC polygon touch the numerical range.
pub fn tangent_points(word: &VerblunskyWord, lambda: Complex64) -> Result<Vec<Complex64>> {
    require_interior(word)?;
    let frame = popuc_zeros(word, lambda)?;
    Ok(frame_tangent_points(&frame)?.into_iter().map(|(z, _)| z).collect())
}

/// `λ_k = e^{2πik/count}`.
pub fn lambda_grid(count: usize) -> Vec<Complex64> {
    (0..count).map(|k| Complex64::from_polar(1.0, TAU * k as f64 / count as f64)).collect()
}

/// POPUC frames for `num_lambda` equally spaced parameters, computed in parallel.
pub fn frames(word: &VerblunskyWord, num_lambda: usize) -> Result<Vec<PonceletFrame>> {
    require_interior(word)?;
    lambda_grid(num_lambda).into_par_iter().map(|l| popuc_zeros(word, l)).collect()
}

pub fn boundary_sweep(word: &VerblunskyWord, num_lambda: usize) -> Result<BoundaryCurve> {
    if num_lambda < MIN_SWEEP {
        return Err(Error::InvalidInput(format!("num_lambda must be at least {MIN_SWEEP}")));
    }
    let frames = frames(word, num_lambda)?;
    let per_frame: Vec<Vec<(Complex64, SampleSource)>> = frames
        .par_iter()
        .map(|f| {
            let pts = frame_tangent_points(f)?;
            Ok(pts
                .into_iter()
                .enumerate()
                .map(|(edge, (z, normal))| (z, SampleSource::Tangent { lambda: f.lambda(), edge, normal }))
                .collect())
        })
        .collect::<Result<_>>()?;
    let (samples, sources) = per_frame.into_iter().flatten().unzip();
    let curve = sort_about_centroid(samples, sources);
    check_convex(&curve)?;
    Ok(curve)
}

fn support_hermitian(a: &CMatrix, phi: f64) -> CMatrix {
    let e = Complex64::from_polar(1.0, -phi);
    let ah = a.adjoint();
    CMatrix::from_fn(a.rows(), a.cols(), |i, j| (a[(i, j)] * e + ah[(i, j)] * e.conj()) * 0.5)
}

fn require_square(a: &CMatrix) -> Result<()> {
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::InvalidInput("expected a non-empty square matrix".into()));
    }
    if !a.is_finite() {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    Ok(())
}

/// Exact support function of the numerical range: the top eigenvalue of
/// `(e^{-iφ}A + e^{iφ}A*)/2`.
pub fn support_value(a: &CMatrix, phi: f64) -> Result<f64> {
    require_square(a)?;
    let (vals, _) = support_hermitian(a, phi).hermitian_eigen()?;
    Ok(vals[0])
}

fn support_point(a: &CMatrix, phi: f64) -> Result<Complex64> {
    let (_, vecs) = support_hermitian(a, phi).hermitian_eigen()?;
    let v = vecs.column(0);
    let av = a.mul_vec(&v);
    Ok(v.iter().zip(&av).map(|(x, y)| x.conj() * y).sum())
}

/// Boundary points of `N(A)` for the given support directions.
pub fn support_oracle(a: &CMatrix, angles: &[f64]) -> Result<BoundaryCurve> {
    require_square(a)?;
    let samples = angles.par_iter().map(|&phi| support_point(a, phi)).collect::<Result<Vec<_>>>()?;
    let sources = angles.iter().map(|&angle| SampleSource::Support { angle }).collect();
    Ok(sort_about_centroid(samples, sources))
}

pub fn uniform_angles(count: usize) -> Vec<f64> {
    (0..count).map(|k| TAU * k as f64 / count as f64).collect()
}

/// Two-sided distance between a sampled curve and `∂N(A)` measured through
/// support functions. Each sample is compared with the supporting line in its
/// recorded normal direction, and the sample set's support function is
/// compared with the exact one on `extra_angles` uniform directions.
pub fn boundary_distance(curve: &BoundaryCurve, a: &CMatrix, extra_angles: usize) -> Result<f64> {
    require_square(a)?;
    let on_curve = curve
        .samples
        .par_iter()
        .zip(curve.sources.par_iter())
        .map(|(p, s)| {
            let phi = s.normal();
            let h = support_value(a, phi)?;
            Ok((h - (p * Complex64::from_polar(1.0, -phi)).re).abs())
        })
        .collect::<Result<Vec<f64>>>()?;
    let coverage = uniform_angles(extra_angles)
        .into_par_iter()
        .map(|phi| Ok((support_value(a, phi)? - curve.support(phi)).abs()))
        .collect::<Result<Vec<f64>>>()?;
    Ok(on_curve.into_iter().chain(coverage).fold(0.0, f64::max))
}

/// Distance between two sampled curves through their support functions on
/// every recorded normal direction.
pub fn support_distance(a: &BoundaryCurve, b: &BoundaryCurve) -> f64 {
    a.sources
        .iter()
        .chain(b.sources.iter())
        .map(|s| (a.support(s.normal()) - b.support(s.normal())).abs())
        .fold(0.0, f64::max)
}

/// Membership in `N(A)` up to `slack`, via half-planes on [`CONTAINS_ANGLES`] directions.
pub fn contains(a: &CMatrix, point: Complex64, slack: f64) -> Result<bool> {
    require_square(a)?;
    for phi in uniform_angles(CONTAINS_ANGLES) {
        if (point * Complex64::from_polar(1.0, -phi)).re > support_value(a, phi)? + slack {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn contains_word(word: &VerblunskyWord, point: Complex64, slack: f64) -> Result<bool> {
    require_interior(word)?;
    contains(ggt_build(word).entries(), point, slack)
}

/// Half-plane test against a convex polygon given by counterclockwise vertices.
pub fn polygon_contains(vertices: &[Complex64], point: Complex64, slack: f64) -> bool {
    let n = vertices.len();
    (0..n).all(|i| {
        let a = vertices[i];
        let e = vertices[(i + 1) % n] - a;
        let len = e.norm();
        len == 0.0 || cross(e, point - a) / len >= -slack
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChordSet {
    pub lambda: Complex64,
    pub chords: Vec<(Complex64, Complex64)>,
}

/// Complete graph on the POPUC zeros for each sampled `λ`.
pub fn kippenhahn_chords(word: &VerblunskyWord, num_lambda: usize) -> Result<Vec<ChordSet>> {
    let frames = frames(word, num_lambda)?;
    Ok(frames
        .iter()
        .map(|f| {
            let w = f.zeros();
            let chords = (0..w.len())
                .flat_map(|i| ((i + 1)..w.len()).map(move |j| (w[i], w[j])))
                .collect();
            ChordSet { lambda: f.lambda(), chords }
        })
        .collect())
}

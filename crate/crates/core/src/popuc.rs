//! Paraorthogonal polynomials `Φ_{n+1}(z; λ) = zΦ_n(z) - conj(λ) Φ_n*(z)`:
//! their unimodular zeros, the weights of the associated spectral measures
//! and M-functions.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{ensure_close, Error, Result};
use crate::ggt::ggt_build;
use crate::matrix::CMatrix;
use crate::opuc::{szego_forward, unimodular, verblunsky_from_measure, OpucSequence, UnitCircleMeasure, VerblunskyWord};
use crate::poly::{roots, Poly, DEFAULT_ROOT_TOL};

const MAX_GRID_DOUBLINGS: usize = 12;

/// Zeros of one paraorthogonal polynomial with their weights.
#[derive(Clone, Debug, PartialEq)]
pub struct PonceletFrame {
    word: VerblunskyWord,
    lambda: Complex64,
    zeros: Vec<Complex64>,
    weights: Vec<f64>,
    christoffel: Vec<f64>,
}

impl PonceletFrame {
    /// Interior coefficients the frame was built from.
    pub fn word(&self) -> &VerblunskyWord {
        &self.word
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    /// Zeros `w_1 .. w_{n+1}`, arguments increasing in `[0, 2π)`.
    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    /// `m_j`, the masses of the spectral measure of `φ_n`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `q_j`, the masses of the spectral measure of `φ_0 = 1`.
    pub fn christoffel(&self) -> &[f64] {
        &self.christoffel
    }

    pub fn degree(&self) -> usize {
        self.word.len()
    }

    /// `Σ m_j δ_{w_j}`
    pub fn spectral_measure(&self) -> Result<UnitCircleMeasure> {
        UnitCircleMeasure::with_sum_tol(self.zeros.clone(), self.weights.clone(), 1e-9)
    }

    /// `Σ q_j δ_{w_j}`
    pub fn christoffel_measure(&self) -> Result<UnitCircleMeasure> {
        UnitCircleMeasure::with_sum_tol(self.zeros.clone(), self.christoffel.clone(), 1e-9)
    }

    /// Partial-fraction M-function of the frame together with the rational
    /// form `Φ_n(z) / Φ_{n+1}(z; λ)`; the two are required to agree.
    pub fn m_function(&self, z: Complex64) -> Result<MFunctionValue> {
        let partial_fractions = m_function(&self.spectral_measure()?, z)?;
        let s = szego_forward(&self.word.with_terminal(self.lambda)?);
        let rational = s.phi_n().eval(z) / s.paraorthogonal().unwrap().eval(z);
        ensure_close(
            "partial fractions match the polynomial ratio",
            (partial_fractions - rational).norm(),
            1e-9 * (1.0 + partial_fractions.norm()),
        )?;
        Ok(MFunctionValue {
            partial_fractions,
            rational,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MFunctionValue {
    pub partial_fractions: Complex64,
    pub rational: Complex64,
}

/// Phase of `e^{iθ} Φ_n(e^{iθ}) / Φ_n*(e^{iθ})`.
struct Phase<'a> {
    phi: &'a Poly,
    phistar: &'a Poly,
}

impl Phase<'_> {
    fn value(&self, theta: f64) -> Complex64 {
        let z = Complex64::from_polar(1.0, theta);
        z * self.phi.eval(z) / self.phistar.eval(z)
    }

    /// `d/dθ arg`, equal to `1 + Σ (1 - |z_k|²) / |e^{iθ} - z_k|²` over the
    /// zeros of `Φ_n`.
    fn derivative(&self, theta: f64) -> f64 {
        let z = Complex64::from_polar(1.0, theta);
        let (p, dp) = self.phi.eval_with_deriv(z);
        let (s, ds) = self.phistar.eval_with_deriv(z);
        (Complex64::new(1.0, 0.0) + z * dp / p - z * ds / s).re
    }
}

/// Unwrapped phase samples on a uniform grid of `samples` points, with
/// the sample values of the phase.
fn track_phase(phase: &Phase, samples: usize) -> (Vec<f64>, Vec<f64>) {
    let mut cumulative = Vec::with_capacity(samples + 1);
    let mut steps = Vec::with_capacity(samples);
    let first = phase.value(0.0);
    let mut prev = first;
    let mut acc = first.arg();
    cumulative.push(acc);
    for m in 1..=samples {
        let cur = if m == samples {
            first
        } else {
            phase.value(TAU * m as f64 / samples as f64)
        };
        let step = (cur / prev).arg();
        steps.push(step);
        acc += step;
        cumulative.push(acc);
        prev = cur;
    }
    (cumulative, steps)
}

/// Total increase of `arg(e^{iθ} B_n(e^{iθ}))` over one turn, measured on
/// the first grid (from `64 (n + 1)` points, doubling) on which every step
/// is positive.
pub fn total_phase_increase(word: &VerblunskyWord) -> Result<f64> {
    let s = szego_forward(&word.without_terminal());
    let phase = Phase {
        phi: s.phi_n(),
        phistar: s.phistar_n(),
    };
    let (cumulative, samples) = resolve_phase(&phase, word.len(), false)?;
    Ok(cumulative[samples] - cumulative[0])
}

/// Doubles the grid until every phase step is positive (and, if
/// `check_total`, the total is `2π (n + 1)`).
fn resolve_phase(phase: &Phase, n: usize, check_total: bool) -> Result<(Vec<f64>, usize)> {
    let expected = TAU * (n + 1) as f64;
    let mut samples = 64 * (n + 1);
    for _ in 0..=MAX_GRID_DOUBLINGS {
        let (cumulative, steps) = track_phase(phase, samples);
        let total = cumulative[samples] - cumulative[0];
        if steps.iter().all(|&s| s > 0.0) && (!check_total || (total - expected).abs() < 1e-8) {
            return Ok((cumulative, samples));
        }
        samples *= 2;
    }
    Err(Error::Solver(format!("phase winding did not resolve to {} turns", n + 1)))
}

/// The `n + 1` zeros of `Φ_{n+1}(z; λ)` and their weights.
///
/// The zeros are the points where the strictly increasing phase of
/// `e^{iθ} Φ_n / Φ_n*` crosses `arg conj(λ)`; crossings are bracketed on an
/// adaptive grid and refined by safeguarded Newton in `θ`.
pub fn popuc_zeros(word: &VerblunskyWord, lambda: Complex64) -> Result<PonceletFrame> {
    let word = word.without_terminal();
    let lambda = unimodular(lambda, "lambda")?;
    let n = word.len();
    let seq = szego_forward(&word);
    let phase = Phase {
        phi: seq.phi_n(),
        phistar: seq.phistar_n(),
    };
    let (cumulative, samples) = resolve_phase(&phase, n, true)?;

    let target0 = lambda.conj().arg();
    let start = cumulative[0];
    // first target >= start
    let mut target = target0 + TAU * ((start - target0) / TAU).ceil();
    let mut thetas = Vec::with_capacity(n + 1);
    let mut idx = 0;
    while thetas.len() < n + 1 {
        while idx < samples && cumulative[idx + 1] < target {
            idx += 1;
        }
        if idx >= samples {
            // a crossing sitting on θ = 0 can land just past the last sample
            if target - cumulative[samples] > 1e-9 {
                return Err(Error::Solver("lost track of a phase crossing".into()));
            }
            idx = samples - 1;
        }
        let lo = TAU * idx as f64 / samples as f64;
        let hi = TAU * (idx + 1) as f64 / samples as f64;
        thetas.push(solve_crossing(&phase, lo, hi, cumulative[idx], target));
        target += TAU;
    }

    let mut zeros: Vec<Complex64> = thetas
        .iter()
        .map(|&t| Complex64::from_polar(1.0, t.rem_euclid(TAU)))
        .collect();
    zeros.sort_by(|a, b| arg_2pi(*a).partial_cmp(&arg_2pi(*b)).unwrap());

    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let prod: Complex64 = zeros.iter().map(|w| w.conj()).product::<Complex64>() * sign;
    ensure_close("lambda equals the signed product of conjugated zeros", (prod - lambda).norm(), 1e-10)?;

    let (christoffel, weights) = christoffel_weights(&word, &zeros)?;
    let eig = weights_from_eigenvectors(&word, lambda, &zeros)?;
    let dev = weights
        .iter()
        .zip(&eig.weights)
        .chain(christoffel.iter().zip(&eig.christoffel))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    ensure_close("kernel and eigenvector weights agree", dev, 1e-9)?;
    let total: f64 = weights.iter().sum();
    ensure_close("weights sum to one", (total - 1.0).abs(), 1e-11)?;

    Ok(PonceletFrame {
        word,
        lambda,
        zeros,
        weights,
        christoffel,
    })
}

/// Argument in `[0, 2π)`.
pub fn arg_2pi(z: Complex64) -> f64 {
    let a = z.arg();
    if a >= 0.0 {
        a
    } else if a + TAU < TAU {
        a + TAU
    } else {
        0.0
    }
}

/// Solves `phase(θ) = target` on `[lo, hi]` where the unwrapped phase at `lo`
/// is `base` and the crossing is known to be inside.
fn solve_crossing(phase: &Phase, lo: f64, hi: f64, base: f64, target: f64) -> f64 {
    let anchor = phase.value(lo);
    let unwrapped = |t: f64| base + (phase.value(t) / anchor).arg();
    let (mut a, mut b) = (lo, hi);
    let mut t = 0.5 * (a + b);
    for _ in 0..200 {
        let f = unwrapped(t) - target;
        if f == 0.0 {
            return t;
        }
        if f < 0.0 {
            a = t;
        } else {
            b = t;
        }
        let d = phase.derivative(t);
        let mut next = t - f / d;
        if !(next > a && next < b) {
            next = 0.5 * (a + b);
        }
        if (next - t).abs() <= 1e-16 * (1.0 + t.abs()) || b - a <= 1e-16 * (1.0 + t.abs()) {
            return next;
        }
        t = next;
    }
    t
}

/// Christoffel numbers `q_j = 1 / Σ_{k=0}^{n} |φ_k(w_j)|²` and the weights
/// `m_j = q_j |φ_n(w_j)|²`.
pub fn christoffel_weights(word: &VerblunskyWord, zeros: &[Complex64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let word = word.without_terminal();
    let n = word.len();
    if zeros.len() != n + 1 {
        return Err(Error::InvalidInput(format!("expected {} zeros, got {}", n + 1, zeros.len())));
    }
    let seq = szego_forward(&word);
    let mut q = Vec::with_capacity(n + 1);
    let mut m = Vec::with_capacity(n + 1);
    for &w in zeros {
        let kernel = kernel_diagonal(&seq, n, w);
        let qj = 1.0 / kernel;
        q.push(qj);
        m.push(qj * seq.orthonormal_eval(n, w).norm_sqr());
    }
    Ok((q, m))
}

fn kernel_diagonal(seq: &OpucSequence, n: usize, w: Complex64) -> f64 {
    (0..=n).map(|k| seq.orthonormal_eval(k, w).norm_sqr()).sum()
}

/// Weights computed from the eigenvectors of the GGT unitary.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvectorWeights {
    /// `|⟨η_j, φ_n⟩|²`
    pub weights: Vec<f64>,
    /// `|⟨η_j, φ_0⟩|²`
    pub christoffel: Vec<f64>,
}

/// Builds each eigenvector of the GGT unitary for eigenvalue `w_j` by
/// back-substitution through its subdiagonal and reads off the squared
/// first and last components.
pub fn weights_from_eigenvectors(word: &VerblunskyWord, lambda: Complex64, zeros: &[Complex64]) -> Result<EigenvectorWeights> {
    let u = ggt_build(&word.without_terminal().with_terminal(lambda)?);
    let h = u.entries();
    let n = word.len();
    let mut weights = Vec::with_capacity(zeros.len());
    let mut christoffel = Vec::with_capacity(zeros.len());
    for &w in zeros {
        let mut v = vec![Complex64::new(0.0, 0.0); n + 1];
        v[n] = Complex64::new(1.0, 0.0);
        for i in (1..=n).rev() {
            let s: Complex64 = (i..=n)
                .map(|k| {
                    let hik = if i == k { h[(i, k)] - w } else { h[(i, k)] };
                    hik * v[k]
                })
                .sum();
            v[i - 1] = -s / h[(i, i - 1)];
        }
        let norm2: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        let residual: Complex64 = (0..=n)
            .map(|k| {
                let h0k = if k == 0 { h[(0, 0)] - w } else { h[(0, k)] };
                h0k * v[k]
            })
            .sum();
        ensure_close("eigenvector residual", residual.norm() / norm2.sqrt(), 1e-9)?;
        weights.push(1.0 / norm2);
        christoffel.push(v[0].norm_sqr() / norm2);
    }
    Ok(EigenvectorWeights { weights, christoffel })
}

/// `m_j = [1 + Σ_k (1 - |z_k|²) / |w_j - z_k|²]^{-1}` over the zeros `z_k`
/// of `Φ_n`.
pub fn weights_from_blaschke_derivative(word: &VerblunskyWord, zeros: &[Complex64]) -> Result<Vec<f64>> {
    let word = word.without_terminal();
    let phi_zeros = if word.is_empty() {
        Vec::new()
    } else {
        roots(szego_forward(&word).phi_n(), DEFAULT_ROOT_TOL)?
    };
    Ok(zeros
        .iter()
        .map(|&w| {
            let s: f64 = phi_zeros
                .iter()
                .map(|z| (1.0 - z.norm_sqr()) / (w - z).norm_sqr())
                .sum();
            1.0 / (1.0 + s)
        })
        .collect())
}

/// `Σ_j μ_j / (z - x_j)`
pub fn m_function(mu: &UnitCircleMeasure, z: Complex64) -> Result<Complex64> {
    let mut s = Complex64::new(0.0, 0.0);
    for (&x, &w) in mu.nodes().iter().zip(mu.weights()) {
        let d = z - x;
        if d.norm() <= 1e-14 {
            return Err(Error::Pole(z));
        }
        s += w / d;
    }
    Ok(s)
}

/// `⟨φ_n, (z - U_λ)^{-1} φ_n⟩`, the last diagonal entry of the resolvent of
/// the GGT unitary, by a dense linear solve.
pub fn resolvent_m_function(word: &VerblunskyWord, lambda: Complex64, z: Complex64) -> Result<Complex64> {
    let u = ggt_build(&word.without_terminal().with_terminal(lambda)?);
    let m = u.dim();
    let shifted = &CMatrix::diag(&vec![z; m]) - u.entries();
    let mut e = vec![Complex64::new(0.0, 0.0); m];
    e[m - 1] = Complex64::new(1.0, 0.0);
    let x = shifted.solve(&e).map_err(|_| Error::Pole(z))?;
    Ok(x[m - 1])
}

/// Verblunsky word of `Σ m_j δ_{w_j}`: `(-λ conj(α_{n-1-j}))_j` with terminal
/// `λ`, confirmed against Gram–Schmidt on the measure.
pub fn nu_verblunsky(frame: &PonceletFrame) -> Result<VerblunskyWord> {
    let a = frame.word.interior();
    let n = a.len();
    let l = frame.lambda;
    let closed = VerblunskyWord::new((0..n).map(|j| -l * a[n - 1 - j].conj()).collect(), Some(l))?;
    let measured = verblunsky_from_measure(&frame.spectral_measure()?)?;
    ensure_close("measure coefficients match the closed form", measured.distance(&closed), 1e-8)?;
    Ok(closed)
}

//! Inverse problems for paraorthogonal zeros: recover the Verblunsky word from
//! two interlacing zero sets.

use num_complex::Complex64;

use crate::error::{ensure_close, Error, Result};
use crate::opuc::{verblunsky_from_measure, verblunsky_from_phi, UnitCircleMeasure, VerblunskyWord};
use crate::poly::{MonicPoly, Poly};
use crate::popuc::{arg_2pi, popuc_zeros};

pub const UNIMODULAR_TOL: f64 = 1e-11;
/// Minimum separation between points of the two lists (and within a list).
pub const SEPARATION: f64 = 1e-9;
pub const PRODUCT_TOL: f64 = 1e-9;
pub const ROUND_TRIP_TOL: f64 = 1e-8;
pub const FIT_TOL: f64 = 1e-10;

/// Two lists of unimodular points, each sorted by increasing argument.
#[derive(Debug, Clone, PartialEq)]
pub struct CircularConfiguration {
    first: Vec<Complex64>,
    second: Vec<Complex64>,
}

fn sort_by_arg(mut v: Vec<Complex64>) -> Vec<Complex64> {
    v.sort_by(|a, b| arg_2pi(*a).total_cmp(&arg_2pi(*b)));
    v
}

pub(crate) fn validate_list(points: &[Complex64], name: &str) -> Result<()> {
    for (i, z) in points.iter().enumerate() {
        if !(z.re.is_finite() && z.im.is_finite()) || (z.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(Error::InvalidInput(format!("{name}[{i}] = {z} is not unimodular")));
        }
        for w in &points[..i] {
            if (z - w).norm() < SEPARATION {
                return Err(Error::InvalidInput(format!("{name} has a repeated point near {z}")));
            }
        }
    }
    Ok(())
}

impl CircularConfiguration {
    pub fn new(first: Vec<Complex64>, second: Vec<Complex64>) -> Result<Self> {
        if first.is_empty() || first.len() != second.len() {
            return Err(Error::InvalidInput(format!(
                "lists must be non-empty and of equal length (got {} and {})",
                first.len(),
                second.len()
            )));
        }
        validate_list(&first, "first")?;
        validate_list(&second, "second")?;
        Ok(Self { first: sort_by_arg(first), second: sort_by_arg(second) })
    }

    pub fn first(&self) -> &[Complex64] {
        &self.first
    }

    pub fn second(&self) -> &[Complex64] {
        &self.second
    }

    /// Number of points per list, `n + 1`.
    pub fn len(&self) -> usize {
        self.first.len()
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_empty()
    }
}

/// Strict interlacing: each arc between consecutive `first` points holds exactly
/// one `second` point, and no pair is closer than [`SEPARATION`].
pub fn interlace_check(cfg: &CircularConfiguration) -> bool {
    let close = cfg.first.iter().any(|a| cfg.second.iter().any(|b| (a - b).norm() < SEPARATION));
    if close {
        return false;
    }
    let mut merged: Vec<(f64, bool)> = cfg
        .first
        .iter()
        .map(|z| (arg_2pi(*z), true))
        .chain(cfg.second.iter().map(|z| (arg_2pi(*z), false)))
        .collect();
    merged.sort_by(|a, b| a.0.total_cmp(&b.0));
    let k = merged.len();
    (0..k).all(|i| merged[i].1 != merged[(i + 1) % k].1)
}

/// `-Π(-conj z_j)`, the parameter whose POPUC vanishes on `zeros`.
pub fn popuc_parameter(zeros: &[Complex64]) -> Complex64 {
    -zeros.iter().map(|z| -z.conj()).product::<Complex64>()
}

/// Worst nearest-neighbour distance between two point sets of equal size.
pub fn set_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let one_way = |x: &[Complex64], y: &[Complex64]| {
        x.iter()
            .map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

/// Polynomials built from two POPUC zero sets.
#[derive(Debug, Clone, PartialEq)]
pub struct PairPolynomials {
    /// `Π(z - first_j)`
    pub q: MonicPoly,
    /// `Π(z - second_j)`
    pub r: MonicPoly,
    pub lambda: Complex64,
    pub mu: Complex64,
    /// `(λQ - μR) / ((λ - μ) z)`
    pub p: MonicPoly,
}

pub fn pair_polynomials(cfg: &CircularConfiguration) -> Result<PairPolynomials> {
    let q = MonicPoly::from_roots(&cfg.first);
    let r = MonicPoly::from_roots(&cfg.second);
    let lambda = popuc_parameter(&cfg.first);
    let mu = popuc_parameter(&cfg.second);
    if (lambda - mu).norm() < SEPARATION {
        return Err(Error::DegenerateParameters(lambda));
    }
    let num = &q.as_poly().scale(lambda) - &r.as_poly().scale(mu);
    let scale = Complex64::new(1.0, 0.0) / (lambda - mu);
    ensure_close("numerator vanishes at 0", num.coeff(0).norm(), 1e-12)?;
    let p = MonicPoly::pin_leading(num.div_z().scale(scale));
    Ok(PairPolynomials { q, r, lambda, mu, p })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoPopucReconstruction {
    pub word: VerblunskyWord,
    pub lambda: Complex64,
    pub mu: Complex64,
}

/// Recover `(α, λ, μ)` from the zeros of `Φ_{n+1}(·; λ)` (first) and
/// `Φ_{n+1}(·; μ)` (second).
pub fn reconstruct_from_two_popuc(cfg: &CircularConfiguration) -> Result<TwoPopucReconstruction> {
    let polys = pair_polynomials(cfg)?;
    if !interlace_check(cfg) {
        return Err(Error::NotRealizable("zero sets do not strictly interlace".into()));
    }
    let word = verblunsky_from_phi(&polys.p).map_err(|e| match e {
        Error::NotSchurStable { root } => {
            Error::NotRealizable(format!("reconstructed polynomial has a zero at {root} outside the disk"))
        }
        Error::Inversion { degree, modulus } => {
            Error::NotRealizable(format!("inverse recursion hit |alpha| = {modulus} at degree {degree}"))
        }
        other => other,
    })?;
    for (lambda, target) in [(polys.lambda, &cfg.first), (polys.mu, &cfg.second)] {
        let frame = popuc_zeros(&word, lambda)?;
        ensure_close("round-trip zeros", set_distance(frame.zeros(), target), ROUND_TRIP_TOL)?;
    }
    Ok(TwoPopucReconstruction { word, lambda: polys.lambda, mu: polys.mu })
}

/// `Π(1 - conj(y_j) z) / Π(1 - conj(w_j) z)` for first `w` and second `y`.
pub fn quasi_caratheodory(cfg: &CircularConfiguration, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let num: Complex64 = cfg.second.iter().map(|y| one - y.conj() * z).product();
    let den: Complex64 = cfg.first.iter().map(|w| one - w.conj() * z).product();
    num / den
}

fn herglotz_kernel(w: Complex64, z: Complex64) -> Complex64 {
    (w + z) / (w - z)
}

/// Coefficients `c_j` with `f(z) = Σ c_j (w_j + z)/(w_j - z)`, fitted at interior
/// sample points and validated at a second set of points.
pub fn partial_fraction_weights(cfg: &CircularConfiguration) -> Result<Vec<Complex64>> {
    let n1 = cfg.len();
    let fit_points: Vec<Complex64> = (0..n1)
        .map(|k| Complex64::from_polar(0.5, 0.3 + std::f64::consts::TAU * k as f64 / n1 as f64))
        .collect();
    let rows: Vec<Vec<Complex64>> =
        fit_points.iter().map(|&s| cfg.first.iter().map(|&w| herglotz_kernel(w, s)).collect()).collect();
    let rhs: Vec<Complex64> = fit_points.iter().map(|&s| quasi_caratheodory(cfg, s)).collect();
    let c = crate::matrix::CMatrix::from_rows(&rows)?.solve(&rhs)?;
    let mut residual: f64 = 0.0;
    for k in 0..2 * n1 {
        let s = Complex64::from_polar(0.3 + 0.4 * (k % 2) as f64, 1.1 + std::f64::consts::TAU * k as f64 / (2 * n1) as f64);
        let f = quasi_caratheodory(cfg, s);
        let fit: Complex64 = cfg.first.iter().zip(&c).map(|(&w, &cj)| cj * herglotz_kernel(w, s)).sum();
        residual = residual.max((fit - f).norm() / (1.0 + f.norm()));
    }
    ensure_close("partial fraction fit", residual, FIT_TOL)?;
    Ok(c)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SecondKindReconstruction {
    /// Interior Verblunsky coefficients.
    pub word: VerblunskyWord,
    pub lambda: Complex64,
    /// Point masses at the first-kind zeros.
    pub weights: Vec<f64>,
}

/// Recover `(α, λ)` from first-kind zeros (first) and second-kind zeros (second).
pub fn reconstruct_second_kind(cfg: &CircularConfiguration) -> Result<SecondKindReconstruction> {
    let prod_second: Complex64 = cfg.second.iter().product();
    let neg_prod_first: Complex64 = -cfg.first.iter().product::<Complex64>();
    if (prod_second - neg_prod_first).norm() > PRODUCT_TOL {
        return Err(Error::ProductCondition { prod_second, neg_prod_first });
    }
    if !interlace_check(cfg) {
        return Err(Error::NotRealizable("zero sets do not strictly interlace".into()));
    }
    let c = partial_fraction_weights(cfg)?;
    let imag = c.iter().map(|x| x.im.abs()).fold(0.0, f64::max);
    ensure_close("partial fraction weights are real", imag, FIT_TOL)?;
    let weights: Vec<f64> = c.iter().map(|x| x.re).collect();
    if let Some((j, w)) = weights.iter().enumerate().find(|(_, w)| **w <= 0.0) {
        return Err(Error::NotRealizable(format!("weight {j} is {w:.3e}, not positive")));
    }
    ensure_close("weights sum to one", (weights.iter().sum::<f64>() - 1.0).abs(), FIT_TOL)?;
    let mu = UnitCircleMeasure::with_sum_tol(cfg.first.clone(), weights.clone(), FIT_TOL)?;
    let full = verblunsky_from_measure(&mu)?;
    let lambda = full
        .terminal()
        .ok_or_else(|| Error::consistency("measure word lacks a terminal coefficient", 1.0, 0.0))?;
    let word = full.without_terminal();
    let first = popuc_zeros(&word, lambda)?;
    ensure_close("first-kind zeros", set_distance(first.zeros(), &cfg.first), ROUND_TRIP_TOL)?;
    let second = popuc_zeros(&word.negated(), -lambda)?;
    ensure_close("second-kind zeros", set_distance(second.zeros(), &cfg.second), ROUND_TRIP_TOL)?;
    Ok(SecondKindReconstruction { word, lambda, weights })
}

/// Zeros of the second-kind POPUC `Ψ_{n+1}(·; λ)`.
pub fn second_kind_zeros(word: &VerblunskyWord, lambda: Complex64) -> Result<Vec<Complex64>> {
    Ok(popuc_zeros(&word.negated(), -lambda)?.zeros().to_vec())
}

/// `z^{deg} conj(p(1/conj z))` at order `deg`, used by the symmetry checks.
pub fn reversed(p: &Poly, deg: usize) -> Result<Poly> {
    p.star(deg)
}

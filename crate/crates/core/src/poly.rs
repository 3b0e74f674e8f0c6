//! Dense complex polynomials in ascending coefficient order.
//!
//! `coeffs[k]` is the coefficient of `z^k`. The reversal map `star(p, n)`
//! is then a conjugated reversal of the first `n + 1` slots.

use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative residual accepted by [`roots`] when the caller has no preference.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

const ROOT_MAX_ITER: usize = 600;
/// Phase offset of the initial guesses (radians); irrational so that no guess
/// lands on a symmetry axis of a real or unimodular-root polynomial.
const INITIAL_PHASE: f64 = 0.618_033_988_749_894_9;

#[derive(Clone, PartialEq, Default)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    /// Builds a polynomial, dropping exact-zero high-order coefficients.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Poly { coeffs };
        p.strip_exact_zeros();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Poly {
            coeffs: vec![Complex64::new(0.0, 0.0)],
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(Complex64::new(1.0, 0.0))
    }

    /// `z^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = Complex64::new(1.0, 0.0);
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Index of the highest stored coefficient; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm_sqr() == 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_deriv(&self, z: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let mut p = zero;
        let mut dp = zero;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `sum |c_k| |z|^k`, the natural scale of rounding errors in `eval(z)`.
    pub fn eval_scale(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    pub fn deriv(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// `tau_n(p)(z) = z^n conj(p(1/conj z))`: reverse the first `n + 1`
    /// coefficients and conjugate them.
    pub fn star(&self, n: usize) -> Result<Poly> {
        if self.degree() > n {
            return Err(Error::Degree {
                degree: self.degree(),
                order: n,
            });
        }
        Ok(Poly::new(
            (0..=n).map(|k| self.coeff(n - k).conj()).collect(),
        ))
    }

    pub fn scale(&self, s: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Multiplication by `z`.
    pub fn mul_z(&self) -> Poly {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs);
        Poly::new(coeffs)
    }

    /// Division by `z` where the constant term is known to vanish; the
    /// (rounding-level) constant coefficient is discarded.
    pub fn div_z(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(self.coeffs[1..].to_vec())
    }

    /// Drops high-order coefficients with modulus at most `rel_tol` times the
    /// largest coefficient.
    pub fn trim(&self, rel_tol: f64) -> Poly {
        let cutoff = rel_tol * self.max_abs_coeff();
        let mut coeffs = self.coeffs.clone();
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() <= cutoff) {
            coeffs.pop();
        }
        Poly::new(coeffs)
    }

    /// `prod (z - r)`, leading coefficient exactly one.
    pub fn from_roots(roots: &[Complex64]) -> Poly {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            coeffs.push(Complex64::new(0.0, 0.0));
            for k in (1..coeffs.len()).rev() {
                coeffs[k] = coeffs[k - 1] - r * coeffs[k];
            }
            coeffs[0] = -r * coeffs[0];
        }
        Poly { coeffs }
    }

    /// Largest coefficientwise deviation from `other`.
    pub fn max_coeff_diff(&self, other: &Poly) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.coeff(k) - other.coeff(k)).norm())
            .fold(0.0, f64::max)
    }

    fn strip_exact_zeros(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(|c| c.norm_sqr() == 0.0) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(Complex64::new(0.0, 0.0));
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poly").field(&self.coeffs).finish()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// A polynomial whose leading coefficient is exactly `1`.
#[derive(Clone, PartialEq)]
pub struct MonicPoly(Poly);

impl MonicPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::try_from_poly(Poly::new(coeffs))
    }

    pub fn try_from_poly(p: Poly) -> Result<Self> {
        if p.leading() != Complex64::new(1.0, 0.0) {
            return Err(Error::InvalidInput(format!(
                "leading coefficient {} is not exactly 1",
                p.leading()
            )));
        }
        Ok(MonicPoly(p))
    }

    /// Divides by the leading coefficient and pins it to exactly one.
    pub fn normalize(p: &Poly) -> Result<Self> {
        let lead = p.leading();
        if lead.norm() == 0.0 {
            return Err(Error::InvalidInput("zero polynomial is not monic".into()));
        }
        let inv = lead.inv();
        let mut coeffs: Vec<Complex64> = p.coeffs().iter().map(|&c| c * inv).collect();
        *coeffs.last_mut().unwrap() = Complex64::new(1.0, 0.0);
        Ok(MonicPoly(Poly { coeffs }))
    }

    /// Forces the leading coefficient of a polynomial that is monic up to
    /// rounding to exactly one.
    pub(crate) fn pin_leading(mut p: Poly) -> Self {
        let d = p.degree();
        p.coeffs[d] = Complex64::new(1.0, 0.0);
        MonicPoly(p)
    }

    pub fn from_roots(roots: &[Complex64]) -> Self {
        MonicPoly(Poly::from_roots(roots))
    }

    pub fn one() -> Self {
        MonicPoly(Poly::one())
    }

    pub fn as_poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }
}

impl Deref for MonicPoly {
    type Target = Poly;
    fn deref(&self) -> &Poly {
        &self.0
    }
}

impl fmt::Debug for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("MonicPoly").field(&self.0.coeffs).finish()
    }
}

pub fn star(p: &Poly, n: usize) -> Result<Poly> {
    p.star(n)
}

pub fn eval(p: &Poly, z: Complex64) -> Complex64 {
    p.eval(z)
}

pub fn deriv(p: &Poly) -> Poly {
    p.deriv()
}

/// All roots of `p` with multiplicity.
///
/// Aberth–Ehrlich simultaneous iteration from scaled roots of unity, then a
/// Newton polish. Each returned root satisfies
/// `|p(r)| <= tol * sum |c_k| |r|^k`.
pub fn roots(p: &Poly, tol: f64) -> Result<Vec<Complex64>> {
    if !p.is_finite() {
        return Err(Error::InvalidInput("polynomial has non-finite coefficients".into()));
    }
    if p.degree() == 0 {
        return Err(Error::InvalidInput("root finding needs degree >= 1".into()));
    }
    let lead = p.leading();
    let mut coeffs: Vec<Complex64> = p.coeffs().iter().map(|&c| c / lead).collect();

    let mut found = Vec::with_capacity(p.degree());
    // exact zero roots
    while coeffs.len() > 1 && coeffs[0].norm_sqr() == 0.0 {
        coeffs.remove(0);
        found.push(Complex64::new(0.0, 0.0));
    }
    let q = Poly::new(coeffs);
    let d = q.degree();
    if d == 0 {
        return Ok(found);
    }
    if d == 1 {
        found.push(-q.coeff(0));
        return Ok(found);
    }

    let radius = (1..=d)
        .map(|k| q.coeff(d - k).norm().powf(1.0 / k as f64))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            Complex64::from_polar(
                radius,
                2.0 * std::f64::consts::PI * k as f64 / d as f64 + INITIAL_PHASE,
            )
        })
        .collect();
    let mut done = vec![false; d];

    let mut iterations = 0;
    while iterations < ROOT_MAX_ITER && done.iter().any(|f| !f) {
        iterations += 1;
        for k in 0..d {
            if done[k] {
                continue;
            }
            let (pv, dpv) = q.eval_with_deriv(z[k]);
            if pv.norm() <= 4.0 * f64::EPSILON * q.eval_scale(z[k]) {
                done[k] = true;
                continue;
            }
            let ratio = pv / dpv;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[k] -= step;
            if step.norm() <= 2.0 * f64::EPSILON * z[k].norm() {
                done[k] = true;
            }
        }
    }

    for r in z.iter_mut() {
        polish_newton(&q, r);
    }

    let residuals: Vec<f64> = z
        .iter()
        .map(|&r| q.eval(r).norm() / q.eval_scale(r).max(f64::MIN_POSITIVE))
        .collect();
    let worst = residuals.iter().cloned().fold(0.0, f64::max);
    if !(worst <= tol) {
        return Err(Error::Convergence {
            iterations,
            max_residual: worst,
            residuals,
        });
    }
    found.extend(z);
    Ok(found)
}

fn polish_newton(q: &Poly, r: &mut Complex64) {
    let mut best = q.eval(*r).norm();
    for _ in 0..4 {
        let (pv, dpv) = q.eval_with_deriv(*r);
        if dpv.norm_sqr() == 0.0 || best == 0.0 {
            return;
        }
        let cand = *r - pv / dpv;
        let val = q.eval(cand).norm();
        if val < best {
            *r = cand;
            best = val;
        } else {
            return;
        }
    }
}

/// A group of numerically coincident roots.
#[derive(Clone, Debug, PartialEq)]
pub struct RootCluster {
    pub center: Complex64,
    pub multiplicity: usize,
}

/// Groups roots lying within `radius` of each other (single linkage) and
/// reports their centroids with a multiplicity hint.
pub fn cluster_roots(roots: &[Complex64], radius: f64) -> Vec<RootCluster> {
    let n = roots.len();
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if (roots[i] - roots[j]).norm() <= radius {
                let (a, b) = (label[i], label[j]);
                if a != b {
                    for l in label.iter_mut() {
                        if *l == b {
                            *l = a;
                        }
                    }
                }
            }
        }
    }
    let mut seen: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for i in 0..n {
        if seen.contains(&label[i]) {
            continue;
        }
        seen.push(label[i]);
        let members: Vec<Complex64> = (0..n).filter(|&j| label[j] == label[i]).map(|j| roots[j]).collect();
        let center = members.iter().sum::<Complex64>() / members.len() as f64;
        out.push(RootCluster {
            center,
            multiplicity: members.len(),
        });
    }
    out
}

//! Schur functions, the Schur algorithm and Carathéodory functions.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::opuc::{second_kind, szego_forward, UnitCircleMeasure, VerblunskyWord};
use crate::poly::{roots, Poly, DEFAULT_ROOT_TOL};

const SAMPLE_COUNT: usize = 512;
const TRIM_TOL: f64 = 1e-10;
const DEGREE_CAP: usize = 64;
/// `|γ|` within this of one ends the Schur algorithm.
pub const UNIMODULAR_TOL: f64 = 1e-10;
/// `|γ|` above `1 + NOT_SCHUR_TOL` is an error.
pub const NOT_SCHUR_TOL: f64 = 1e-8;

/// A rational Schur function `num / den`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalSchurFn {
    num: Poly,
    den: Poly,
}

impl RationalSchurFn {
    /// Checks that `den` has no zeros in the closed disk and that
    /// `|f| <= 1 + 1e-10` on 512 points of the circle.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if !num.is_finite() || !den.is_finite() || den.is_zero() {
            return Err(Error::InvalidInput("numerator or denominator is invalid".into()));
        }
        if den.degree() > 0 {
            for r in roots(&den, DEFAULT_ROOT_TOL)? {
                if r.norm() <= 1.0 {
                    return Err(Error::NotSchur(format!("pole at {r} in the closed disk")));
                }
            }
        }
        let f = RationalSchurFn { num, den };
        for k in 0..SAMPLE_COUNT {
            let z = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / SAMPLE_COUNT as f64);
            let v = f.eval(z).norm();
            if !(v <= 1.0 + 1e-10) {
                return Err(Error::NotSchur(format!("|f| = {v} on the circle")));
            }
        }
        Ok(f)
    }

    /// `c · Φ_n / Φ_n*` for the interior of `word`, with `c` the terminal
    /// coefficient when present and `1` otherwise.
    pub fn blaschke(word: &VerblunskyWord) -> Self {
        let s = szego_forward(&word.without_terminal());
        let c = word.terminal().unwrap_or(Complex64::new(1.0, 0.0));
        RationalSchurFn {
            num: s.phi_n().scale(c),
            den: s.phistar_n().clone(),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.num.eval(z) / self.den.eval(z)
    }
}

/// Schur parameters `γ_0, γ_1, ...` of `f`, at most `steps` of them; fewer if
/// some `|γ_k| = 1`.
///
/// Iterates are kept as polynomial pairs, the step
/// `f ↦ (f - γ) / (z (1 - conj(γ) f))` becomes
/// `(num, den) ↦ ((num - γ den) / z, den - conj(γ) num)` with the vanishing
/// constant term dropped.
pub fn schur_algorithm(f: &RationalSchurFn, steps: usize) -> Result<Vec<Complex64>> {
    let mut num = f.num.clone();
    let mut den = f.den.clone();
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let d0 = den.coeff(0);
        if d0.norm() == 0.0 {
            return Err(Error::NotSchur("iterate has a pole at the origin".into()));
        }
        let gamma = num.coeff(0) / d0;
        if gamma.norm() > 1.0 + NOT_SCHUR_TOL {
            return Err(Error::NotSchur(format!("Schur parameter {gamma} outside the disk")));
        }
        out.push(gamma);
        if (gamma.norm() - 1.0).abs() <= UNIMODULAR_TOL {
            break;
        }
        let next_num = (&num - &den.scale(gamma)).div_z();
        let next_den = &den - &num.scale(gamma.conj());
        let scale = next_num.max_abs_coeff().max(next_den.max_abs_coeff());
        if scale == 0.0 {
            return Err(Error::NotSchur("iterate vanished identically".into()));
        }
        num = trim_against(&next_num, scale).scale(Complex64::new(1.0 / scale, 0.0));
        den = trim_against(&next_den, scale).scale(Complex64::new(1.0 / scale, 0.0));
        if num.degree() > DEGREE_CAP || den.degree() > DEGREE_CAP {
            num = truncate(&num, DEGREE_CAP);
            den = truncate(&den, DEGREE_CAP);
        }
    }
    Ok(out)
}

fn trim_against(p: &Poly, scale: f64) -> Poly {
    let mut c = p.coeffs().to_vec();
    while c.len() > 1 && c.last().is_some_and(|x| x.norm() <= TRIM_TOL * scale) {
        c.pop();
    }
    Poly::new(c)
}

fn truncate(p: &Poly, deg: usize) -> Poly {
    Poly::new(p.coeffs().iter().take(deg + 1).copied().collect())
}

/// Schur parameters of `λ Φ_n / Φ_n*` in closed form:
/// `(-λ conj(α_{n-1}), ..., -λ conj(α_0), λ)`.
pub fn schur_params_closed_form(word: &VerblunskyWord) -> Result<Vec<Complex64>> {
    let lambda = word
        .terminal()
        .ok_or_else(|| Error::InvalidInput("closed form needs a terminal coefficient".into()))?;
    let mut out: Vec<Complex64> = word.interior().iter().rev().map(|a| -lambda * a.conj()).collect();
    out.push(lambda);
    Ok(out)
}

/// Schur algorithm on a truncated Taylor series. Each step consumes one
/// coefficient, so at most `coeffs.len()` parameters are produced.
pub fn schur_algorithm_series(coeffs: &[Complex64], steps: usize) -> Result<Vec<Complex64>> {
    let mut f = coeffs.to_vec();
    let mut out = Vec::new();
    while out.len() < steps && !f.is_empty() {
        let gamma = f[0];
        if gamma.norm() > 1.0 + NOT_SCHUR_TOL {
            return Err(Error::NotSchur(format!("Schur parameter {gamma} outside the disk")));
        }
        out.push(gamma);
        if (gamma.norm() - 1.0).abs() <= UNIMODULAR_TOL {
            break;
        }
        // (f - γ) / z
        let top: Vec<Complex64> = f[1..].to_vec();
        // 1 - conj(γ) f, truncated to the same length
        let mut bottom: Vec<Complex64> = f[..top.len()].iter().map(|c| -gamma.conj() * c).collect();
        if let Some(b) = bottom.first_mut() {
            *b += 1.0;
        }
        f = series_div(&top, &bottom);
    }
    Ok(out)
}

/// Taylor coefficients of `a / b`, truncated to `a.len()` terms.
fn series_div(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut q = Vec::with_capacity(a.len());
    for k in 0..a.len() {
        let s: Complex64 = (1..=k).filter(|&j| j < b.len()).map(|j| b[j] * q[k - j]).sum();
        q.push((a[k] - s) / b[0]);
    }
    q
}

/// Taylor coefficients of the Schur function `f = (F - 1) / (z (F + 1))` of a
/// measure with moments `c_0 = 1, c_1, ..., c_K`, using
/// `F(z) = 1 + 2 Σ_{k>=1} c_k z^k`. Returns `K` coefficients.
pub fn schur_series_from_moments(moments: &[Complex64]) -> Vec<Complex64> {
    let k = moments.len().saturating_sub(1);
    let top: Vec<Complex64> = (0..k).map(|j| moments[j + 1] * 2.0).collect();
    let bottom: Vec<Complex64> = (0..k)
        .map(|j| if j == 0 { Complex64::new(2.0, 0.0) } else { moments[j] * 2.0 })
        .collect();
    series_div(&top, &bottom)
}

/// Objects with a Carathéodory function `F`.
pub trait Caratheodory {
    fn caratheodory(&self, z: Complex64) -> Result<Complex64>;
}

impl Caratheodory for RationalSchurFn {
    /// `(1 + z f(z)) / (1 - z f(z))` for `|z| < 1`.
    fn caratheodory(&self, z: Complex64) -> Result<Complex64> {
        if !(z.norm() < 1.0) {
            return Err(Error::InvalidInput(format!("{z} is not inside the unit disk")));
        }
        let zf = z * self.eval(z);
        let d = Complex64::new(1.0, 0.0) - zf;
        if d.norm() <= 1e-15 {
            return Err(Error::Pole(z));
        }
        Ok((Complex64::new(1.0, 0.0) + zf) / d)
    }
}

impl Caratheodory for UnitCircleMeasure {
    /// `Σ w_j (x_j + z) / (x_j - z)`
    fn caratheodory(&self, z: Complex64) -> Result<Complex64> {
        let mut s = Complex64::new(0.0, 0.0);
        for (&x, &w) in self.nodes().iter().zip(self.weights()) {
            let d = x - z;
            if d.norm() <= 1e-15 {
                return Err(Error::Pole(z));
            }
            s += w * (x + z) / d;
        }
        Ok(s)
    }
}

pub fn caratheodory<C: Caratheodory + ?Sized>(x: &C, z: Complex64) -> Result<Complex64> {
    x.caratheodory(z)
}

/// `F_n(z) = Ψ_n*(z) / Φ_n*(z)`, the Carathéodory function of the measure
/// whose coefficients are those of `word` followed by zeros.
pub fn caratheodory_fn(word: &VerblunskyWord, z: Complex64) -> Result<Complex64> {
    if word.terminal().is_some() {
        return Err(Error::InvalidInput("expected a word without terminal coefficient".into()));
    }
    if !(z.norm() < 1.0) {
        return Err(Error::InvalidInput(format!("{z} is not inside the unit disk")));
    }
    let phi = szego_forward(word);
    let psi = second_kind(word);
    Ok(psi.phistar_n().eval(z) / phi.phistar_n().eval(z))
}

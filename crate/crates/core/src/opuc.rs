//! Szegő recursion and the maps between Verblunsky coefficients, monic
//! orthogonal polynomials and finitely supported measures.
//!
//! Moment convention: `c_k = ∫ z^{-k} dμ`, so the Gram matrix of
//! `1, z, ..., z^m` in `L²(dμ)` is the Hermitian Toeplitz matrix `[c_{j-k}]`.
//! Inner products are conjugate-linear in the first slot.

use num_complex::Complex64;

use crate::error::{ensure_close, Error, Result};
use crate::matrix::{cholesky_upper, gram_schmidt_r, CMatrix};
use crate::poly::{roots, MonicPoly, Poly, DEFAULT_ROOT_TOL};

/// Interior coefficients must satisfy `|α| <= 1 - INTERIOR_MARGIN`.
pub const INTERIOR_MARGIN: f64 = 1e-14;
/// Accepted deviation of a terminal coefficient from unit modulus.
pub const TERMINAL_TOL: f64 = 1e-12;

/// `α_0 .. α_{n-1}` in the open disk, optionally followed by a unimodular
/// terminal coefficient `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct VerblunskyWord {
    interior: Vec<Complex64>,
    terminal: Option<Complex64>,
}

impl VerblunskyWord {
    pub fn new(interior: Vec<Complex64>, terminal: Option<Complex64>) -> Result<Self> {
        for (j, a) in interior.iter().enumerate() {
            if !is_finite(*a) {
                return Err(Error::InvalidInput(format!("alpha_{j} is not finite")));
            }
            if a.norm() > 1.0 - INTERIOR_MARGIN {
                return Err(Error::InvalidInput(format!(
                    "alpha_{j} = {a} is not inside the unit disk"
                )));
            }
        }
        let terminal = match terminal {
            Some(l) => Some(unimodular(l, "terminal coefficient")?),
            None => None,
        };
        Ok(VerblunskyWord { interior, terminal })
    }

    pub fn interior_only(interior: Vec<Complex64>) -> Result<Self> {
        Self::new(interior, None)
    }

    pub fn interior(&self) -> &[Complex64] {
        &self.interior
    }

    pub fn terminal(&self) -> Option<Complex64> {
        self.terminal
    }

    /// Number of interior coefficients.
    pub fn len(&self) -> usize {
        self.interior.len()
    }

    pub fn is_empty(&self) -> bool {
        self.interior.is_empty()
    }

    /// `ρ_j = sqrt(1 - |α_j|²)`
    pub fn rho(&self, j: usize) -> f64 {
        rho(self.interior[j])
    }

    pub fn with_terminal(&self, lambda: Complex64) -> Result<Self> {
        Self::new(self.interior.clone(), Some(lambda))
    }

    pub fn without_terminal(&self) -> Self {
        VerblunskyWord {
            interior: self.interior.clone(),
            terminal: None,
        }
    }

    /// Every coefficient, terminal included, multiplied by `-1`.
    pub fn negated(&self) -> Self {
        VerblunskyWord {
            interior: self.interior.iter().map(|a| -a).collect(),
            terminal: self.terminal.map(|l| -l),
        }
    }

    /// Largest coefficientwise distance to `other`; infinite if the shapes differ.
    pub fn distance(&self, other: &VerblunskyWord) -> f64 {
        if self.len() != other.len() || self.terminal.is_some() != other.terminal.is_some() {
            return f64::INFINITY;
        }
        let mut d = self
            .interior
            .iter()
            .zip(&other.interior)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if let (Some(a), Some(b)) = (self.terminal, other.terminal) {
            d = d.max((a - b).norm());
        }
        d
    }
}

pub(crate) fn rho(a: Complex64) -> f64 {
    let m = a.norm();
    ((1.0 - m) * (1.0 + m)).max(0.0).sqrt()
}

pub(crate) fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Checks `|z| = 1` to [`TERMINAL_TOL`] and rescales to exact unit modulus.
pub(crate) fn unimodular(z: Complex64, what: &str) -> Result<Complex64> {
    if !is_finite(z) || (z.norm() - 1.0).abs() > TERMINAL_TOL {
        return Err(Error::InvalidInput(format!("{what} {z} is not unimodular")));
    }
    Ok(z / z.norm())
}

/// `Φ_0 .. Φ_n`, their reversals and norms. When the generating word has a
/// terminal `λ`, one more entry holds the paraorthogonal `Φ_{n+1}(z; λ)` with
/// norm recorded as `0`.
#[derive(Clone, Debug, PartialEq)]
pub struct OpucSequence {
    phis: Vec<MonicPoly>,
    phistars: Vec<Poly>,
    norms: Vec<f64>,
    paraorthogonal: bool,
}

impl OpucSequence {
    pub fn phis(&self) -> &[MonicPoly] {
        &self.phis
    }

    pub fn phistars(&self) -> &[Poly] {
        &self.phistars
    }

    pub fn norms(&self) -> &[f64] {
        &self.norms
    }

    /// `true` if the last entry is paraorthogonal.
    pub fn has_paraorthogonal(&self) -> bool {
        self.paraorthogonal
    }

    /// Degree of the last orthogonal (not paraorthogonal) polynomial.
    pub fn degree(&self) -> usize {
        self.phis.len() - 1 - usize::from(self.paraorthogonal)
    }

    pub fn phi(&self, k: usize) -> &MonicPoly {
        &self.phis[k]
    }

    pub fn phistar(&self, k: usize) -> &Poly {
        &self.phistars[k]
    }

    /// `Φ_n`, the last orthogonal polynomial.
    pub fn phi_n(&self) -> &MonicPoly {
        &self.phis[self.degree()]
    }

    pub fn phistar_n(&self) -> &Poly {
        &self.phistars[self.degree()]
    }

    /// `Φ_{n+1}(z; λ)` if present.
    pub fn paraorthogonal(&self) -> Option<&MonicPoly> {
        if self.paraorthogonal {
            self.phis.last()
        } else {
            None
        }
    }

    /// Orthonormal `φ_k(z) = Φ_k(z) / ‖Φ_k‖` for `k <= degree()`.
    pub fn orthonormal_eval(&self, k: usize, z: Complex64) -> Complex64 {
        self.phis[k].eval(z) / self.norms[k]
    }
}

/// Forward Szegő recursion `Φ_{k+1} = zΦ_k - conj(α_k) Φ_k*`.
pub fn szego_forward(word: &VerblunskyWord) -> OpucSequence {
    let n = word.len();
    let mut phis = Vec::with_capacity(n + 2);
    let mut phistars = Vec::with_capacity(n + 2);
    let mut norms = Vec::with_capacity(n + 2);
    let mut phi = Poly::one();
    let mut phistar = Poly::one();
    let mut norm = 1.0;
    for k in 0..=n {
        phis.push(MonicPoly::pin_leading(phi.clone()));
        phistars.push(phistar.clone());
        norms.push(norm);
        if k == n {
            break;
        }
        let a = word.interior()[k];
        let zphi = phi.mul_z();
        let next = &zphi - &phistar.scale(a.conj());
        let next_star = &phistar - &zphi.scale(a);
        phi = next;
        phistar = next_star;
        norm *= rho(a);
    }
    let paraorthogonal = if let Some(l) = word.terminal() {
        let phi_n = phis[n].as_poly();
        let p = &phi_n.mul_z() - &phistars[n].scale(l.conj());
        let p = MonicPoly::pin_leading(p);
        let ps = p.star(n + 1).expect("degree n + 1");
        phis.push(p);
        phistars.push(ps);
        norms.push(0.0);
        true
    } else {
        false
    };
    OpucSequence {
        phis,
        phistars,
        norms,
        paraorthogonal,
    }
}

/// Second-kind polynomials: the sequence of the sign-flipped word, terminal
/// included, so `Ψ_{n+1}(z; λ) = zΨ_n + conj(λ) Ψ_n*`.
pub fn second_kind(word: &VerblunskyWord) -> OpucSequence {
    szego_forward(&word.negated())
}

/// Recovers `α_0 .. α_{n-1}` from `Φ_n` by inverse Szegő recursion.
pub fn verblunsky_from_phi(phi_n: &MonicPoly) -> Result<VerblunskyWord> {
    if !phi_n.is_finite() {
        return Err(Error::InvalidInput("polynomial has non-finite coefficients".into()));
    }
    let n = phi_n.degree();
    if n == 0 {
        return VerblunskyWord::interior_only(Vec::new());
    }
    for r in roots(phi_n, DEFAULT_ROOT_TOL)? {
        if r.norm() >= 1.0 - 1e-10 {
            return Err(Error::NotSchurStable { root: r });
        }
    }
    let mut alphas = vec![Complex64::new(0.0, 0.0); n];
    let mut phi = phi_n.as_poly().clone();
    for k in (1..=n).rev() {
        let a = -phi.coeff(0).conj();
        if a.norm() >= 1.0 {
            return Err(Error::Inversion {
                degree: k,
                modulus: a.norm(),
            });
        }
        alphas[k - 1] = a;
        let star = phi.star(k)?;
        let r2 = (1.0 - a.norm()) * (1.0 + a.norm());
        let zprev = (&phi + &star.scale(a.conj())).scale(Complex64::new(1.0 / r2, 0.0));
        phi = MonicPoly::pin_leading(zprev.div_z()).into_poly();
    }
    let word = VerblunskyWord::interior_only(alphas).map_err(|_| Error::Inversion {
        degree: n,
        modulus: 1.0,
    })?;
    let back = szego_forward(&word);
    let dev = back.phi_n().max_coeff_diff(phi_n);
    ensure_close("forward recursion reproduces the input polynomial", dev, 1e-10 * phi_n.max_abs_coeff().max(1.0))?;
    Ok(word)
}

/// Finitely many unimodular nodes with positive weights summing to one.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitCircleMeasure {
    nodes: Vec<Complex64>,
    weights: Vec<f64>,
}

impl UnitCircleMeasure {
    /// Validates the data; nodes are rescaled to exact unit modulus and
    /// weights to an exact unit sum.
    pub fn new(nodes: Vec<Complex64>, weights: Vec<f64>) -> Result<Self> {
        Self::with_sum_tol(nodes, weights, 1e-12)
    }

    pub(crate) fn with_sum_tol(nodes: Vec<Complex64>, weights: Vec<f64>, sum_tol: f64) -> Result<Self> {
        if nodes.is_empty() || nodes.len() != weights.len() {
            return Err(Error::InvalidInput(
                "a measure needs as many weights as nodes, and at least one node".into(),
            ));
        }
        let nodes = nodes
            .into_iter()
            .map(|z| unimodular(z, "node"))
            .collect::<Result<Vec<_>>>()?;
        if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidInput("weights must be positive".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > sum_tol {
            return Err(Error::InvalidInput(format!("weights sum to {total}, not 1")));
        }
        for i in 0..nodes.len() {
            for j in (i + 1)..nodes.len() {
                if (nodes[i] - nodes[j]).norm() <= 1e-10 {
                    return Err(Error::DegenerateMeasure(format!(
                        "nodes {i} and {j} coincide"
                    )));
                }
            }
        }
        let weights = weights.iter().map(|w| w / total).collect();
        Ok(UnitCircleMeasure { nodes, weights })
    }

    /// Point mass at a single unimodular node.
    pub fn dirac(node: Complex64) -> Result<Self> {
        Self::new(vec![node], vec![1.0])
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `c_k = ∫ z^{-k} dμ`
    pub fn moment(&self, k: i64) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(z, w)| z.powi(-k as i32) * *w)
            .sum()
    }
}

/// Verblunsky word of an `N`-point measure: `N - 1` interior coefficients and
/// a unimodular terminal one, by Gram–Schmidt on `1, z, ..., z^N`.
pub fn verblunsky_from_measure(mu: &UnitCircleMeasure) -> Result<VerblunskyWord> {
    let n = mu.len();
    let sqrt_w: Vec<f64> = mu.weights().iter().map(|w| w.sqrt()).collect();
    let vectors: Vec<Vec<Complex64>> = (0..=n)
        .map(|k| {
            mu.nodes()
                .iter()
                .zip(&sqrt_w)
                .map(|(z, s)| z.powu(k as u32) * *s)
                .collect()
        })
        .collect();
    word_from_krylov(&vectors)
}

/// Verblunsky word of the spectral measure of `(U, x)` for a unitary `U` with
/// cyclic unit vector `x`; the Gram matrix of `x, Ux, ..., U^n x` is the
/// moment matrix of that measure.
pub(crate) fn verblunsky_from_cyclic_pair(u: &CMatrix, x: &[Complex64]) -> Result<VerblunskyWord> {
    let n = x.len();
    let mut vectors = Vec::with_capacity(n + 1);
    let mut v = x.to_vec();
    for _ in 0..=n {
        let next = u.mul_vec(&v);
        vectors.push(v);
        v = next;
    }
    word_from_krylov(&vectors)
}

/// `vectors[k]` plays the role of `z^k`; there must be one more vector than
/// the dimension so that the last one is dependent.
fn word_from_krylov(vectors: &[Vec<Complex64>]) -> Result<VerblunskyWord> {
    let n = vectors.len() - 1;
    let r = gram_schmidt_r(vectors);
    let scale = r[0][0].re.max(f64::MIN_POSITIVE);
    for k in 0..n {
        if !(r[k][k].re > 1e-12 * scale) {
            return Err(Error::DegenerateMeasure(format!(
                "moment matrix is singular at degree {k}"
            )));
        }
    }
    let alphas = alphas_from_cholesky(&r, n);
    let (interior, last) = alphas.split_at(n - 1);
    for (j, a) in interior.iter().enumerate() {
        if a.norm() > 1.0 - INTERIOR_MARGIN {
            return Err(Error::DegenerateMeasure(format!(
                "alpha_{j} has modulus {} (support too small)",
                a.norm()
            )));
        }
    }
    let lambda = last[0];
    ensure_close("terminal coefficient is unimodular", (lambda.norm() - 1.0).abs(), 1e-6)?;
    VerblunskyWord::new(interior.to_vec(), Some(lambda / lambda.norm()))
}

/// `α_{k-1} = -conj(Φ_k(0))` for `k = 1..=count`, where the coefficients of
/// `Φ_k` below degree `k` solve `R_k b = -r_k`.
fn alphas_from_cholesky(r: &[Vec<Complex64>], count: usize) -> Vec<Complex64> {
    (1..=count)
        .map(|k| {
            let mut b = vec![Complex64::new(0.0, 0.0); k];
            for i in (0..k).rev() {
                let s: Complex64 = ((i + 1)..k).map(|j| r[i][j] * b[j]).sum();
                b[i] = (-r[i][k] - s) / r[i][i];
            }
            -b[0].conj()
        })
        .collect()
}

/// First `moments.len() - 1` Verblunsky coefficients of the measure with
/// moments `c_0, c_1, ...` (normalized so that `c_0 = 1`).
pub fn verblunsky_from_moments(moments: &[Complex64]) -> Result<Vec<Complex64>> {
    if moments.is_empty() {
        return Err(Error::InvalidInput("no moments".into()));
    }
    let m = moments.len();
    let toeplitz = CMatrix::from_fn(m, m, |j, k| {
        if j >= k {
            moments[j - k]
        } else {
            moments[k - j].conj()
        }
    });
    let r = cholesky_upper(&toeplitz);
    for k in 0..m - 1 {
        if !(r[k][k].re > 0.0) {
            return Err(Error::DegenerateMeasure(format!(
                "Toeplitz matrix is not positive definite at order {k}"
            )));
        }
    }
    Ok(alphas_from_cholesky(&r, m - 1))
}

/// Moments `c_0 .. c_K` of `dθ / |Φ_n(e^{iθ})|²` normalized to a probability
/// measure, by the trapezoid rule on `max(4096, 64 (n + K))` points.
pub fn bernstein_szego_moments(phi_n: &MonicPoly, k_max: usize) -> Result<Vec<Complex64>> {
    let n = phi_n.degree();
    if n > 0 {
        for r in roots(phi_n, DEFAULT_ROOT_TOL)? {
            if r.norm() >= 1.0 + 1e-6 {
                return Err(Error::NotSchurStable { root: r });
            }
            if r.norm() > 1.0 - 1e-6 {
                return Err(Error::IllConditioned(format!(
                    "zero {r} lies within 1e-6 of the unit circle"
                )));
            }
        }
    }
    let grid = 4096usize.max(64 * (n + k_max));
    let mut moments = vec![Complex64::new(0.0, 0.0); k_max + 1];
    let mut total = 0.0;
    for m in 0..grid {
        let theta = std::f64::consts::TAU * m as f64 / grid as f64;
        let z = Complex64::from_polar(1.0, theta);
        let w = 1.0 / phi_n.eval(z).norm_sqr();
        total += w;
        let zinv = z.conj();
        let mut p = Complex64::new(w, 0.0);
        for c in moments.iter_mut() {
            *c += p;
            p *= zinv;
        }
    }
    for c in moments.iter_mut() {
        *c /= total;
    }
    moments[0] = Complex64::new(1.0, 0.0);
    Ok(moments)
}

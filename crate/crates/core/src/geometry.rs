//! Critical points of polynomials with unimodular zeros, Steiner ellipses and
//! the Poncelet billiard map.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{ensure_close, Error, Result};
use crate::numrange::{tangent_points, SupportInterpolant};
use crate::opuc::{verblunsky_from_phi, VerblunskyWord};
use crate::poly::MonicPoly;
use crate::wendroff::{popuc_parameter, set_distance, validate_list};

pub const FEASIBLE_TOL: f64 = 1e-8;
pub const LAMBDA_GRID: usize = 4096;
pub const CLOSURE_TOL: f64 = 1e-6;
const DISK_SAMPLES: usize = 256;

/// A convex body described by its support function `h(φ) = max Re(e^{-iφ} x)`.
pub trait ConvexBody {
    fn support(&self, phi: f64) -> f64;
}

impl ConvexBody for SupportInterpolant {
    fn support(&self, phi: f64) -> f64 {
        self.eval(phi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    foci: [Complex64; 2],
    semimajor: f64,
}

impl Ellipse {
    pub fn new(f1: Complex64, f2: Complex64, semimajor: f64) -> Result<Self> {
        let half = (f2 - f1).norm() / 2.0;
        if !(semimajor.is_finite() && semimajor > half) || !(f1.re.is_finite() && f1.im.is_finite() && f2.re.is_finite() && f2.im.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "semimajor axis {semimajor} must exceed half the focal distance {half}"
            )));
        }
        Ok(Self { foci: [f1, f2], semimajor })
    }

    pub fn circle(centre: Complex64, radius: f64) -> Result<Self> {
        Self::new(centre, centre, radius)
    }

    pub fn foci(&self) -> [Complex64; 2] {
        self.foci
    }

    pub fn semimajor(&self) -> f64 {
        self.semimajor
    }

    pub fn centre(&self) -> Complex64 {
        (self.foci[0] + self.foci[1]) / 2.0
    }

    pub fn semiminor(&self) -> f64 {
        let c = (self.foci[1] - self.foci[0]).norm() / 2.0;
        (self.semimajor * self.semimajor - c * c).max(0.0).sqrt()
    }

    fn axis_angle(&self) -> f64 {
        let d = self.foci[1] - self.foci[0];
        if d.norm() == 0.0 {
            0.0
        } else {
            d.arg()
        }
    }

    /// Point at parameter `t` on the boundary.
    pub fn point(&self, t: f64) -> Complex64 {
        let local = Complex64::new(self.semimajor * t.cos(), self.semiminor() * t.sin());
        self.centre() + local * Complex64::from_polar(1.0, self.axis_angle())
    }

    pub fn boundary(&self, count: usize) -> Vec<Complex64> {
        (0..count).map(|k| self.point(TAU * k as f64 / count as f64)).collect()
    }

    /// `|z - f1| + |z - f2| - 2a`: zero on the boundary.
    pub fn focal_residual(&self, z: Complex64) -> f64 {
        (z - self.foci[0]).norm() + (z - self.foci[1]).norm() - 2.0 * self.semimajor
    }

    pub fn in_unit_disk(&self) -> bool {
        max_support(self) < 1.0
    }
}

impl ConvexBody for Ellipse {
    fn support(&self, phi: f64) -> f64 {
        let t = phi - self.axis_angle();
        let (a, b) = (self.semimajor, self.semiminor());
        (self.centre() * Complex64::from_polar(1.0, -phi)).re + (a * a * t.cos().powi(2) + b * b * t.sin().powi(2)).sqrt()
    }
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Foci of the ellipse inscribed in the triangle at its edge midpoints.
pub fn steiner_foci(z1: Complex64, z2: Complex64, z3: Complex64) -> Result<(Complex64, Complex64)> {
    let scale = (z2 - z1).norm().max((z3 - z1).norm()).max((z3 - z2).norm());
    if scale == 0.0 || cross(z2 - z1, z3 - z1).abs() <= 1e-12 * scale * scale {
        return Err(Error::DegenerateTriangle);
    }
    let m = (z1 + z2 + z3) / 3.0;
    let e2 = (z1 * z2 + z1 * z3 + z2 * z3) / 3.0;
    let root = (m * m - e2).sqrt();
    Ok((m + root, m - root))
}

/// The word whose numerical range touches the polygon on `ws` at its edge
/// midpoints: `Φ_n = P'/(n+1)` with `P = Π(z - w_j)`.
pub fn midpoint_word(ws: &[Complex64]) -> Result<VerblunskyWord> {
    if ws.len() < 2 {
        return Err(Error::InvalidInput("midpoint_word needs at least two points".into()));
    }
    validate_list(ws, "polygon")?;
    let n = ws.len() - 1;
    let p = MonicPoly::from_roots(ws);
    let phi = MonicPoly::pin_leading(p.deriv().scale(Complex64::new(1.0 / (n + 1) as f64, 0.0)));
    let word = verblunsky_from_phi(&phi)?;
    let lambda = popuc_parameter(ws);
    let zeta = tangent_points(&word, lambda)?;
    let k = ws.len();
    let mut sorted = ws.to_vec();
    sorted.sort_by(|a, b| crate::popuc::arg_2pi(*a).total_cmp(&crate::popuc::arg_2pi(*b)));
    let midpoints: Vec<Complex64> = (0..k).map(|j| (sorted[j] + sorted[(j + 1) % k]) / 2.0).collect();
    ensure_close("tangent points are edge midpoints", set_distance(&zeta, &midpoints), 1e-8)?;
    Ok(word)
}

/// Outcome of the critical-point feasibility test.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport {
    /// Elementary symmetric functions `s_1..s_n`.
    pub symmetric: Vec<Complex64>,
    /// Best parameter found (exact for odd `n` when available).
    pub lambda: Complex64,
    pub residuals: Vec<Complex64>,
    pub max_residual: f64,
    pub feasible: bool,
    /// `Φ_{n+1}(·; λ)`, whose derivative is `(n+1) Φ_n`, when feasible.
    pub witness: Option<MonicPoly>,
}

/// `s_k` for `k = 1..n`.
pub fn elementary_symmetric(a: &[Complex64]) -> Vec<Complex64> {
    let p = MonicPoly::from_roots(a);
    let n = a.len();
    (1..=n)
        .map(|k| {
            let c = p.coeff(n - k);
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

/// `(n-j) s_{n-j} + (-1)^{n-1} conj(λ) (j+1) conj(s_{j+1})` for `j = 0..n`.
pub fn critical_residuals(s: &[Complex64], lambda: Complex64) -> Vec<Complex64> {
    let n = s.len();
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    (0..n)
        .map(|j| (n - j) as f64 * s[n - j - 1] + lambda.conj() * sign * (j + 1) as f64 * s[j].conj())
        .collect()
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn scan_lambda(s: &[Complex64]) -> Complex64 {
    let cost = |t: f64| max_norm(&critical_residuals(s, Complex64::from_polar(1.0, t)));
    let step = TAU / LAMBDA_GRID as f64;
    let best = (0..LAMBDA_GRID)
        .map(|k| k as f64 * step)
        .min_by(|a, b| cost(*a).total_cmp(&cost(*b)))
        .unwrap_or(0.0);
    // golden-section refinement around the best grid point
    let (mut lo, mut hi) = (best - step, best + step);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (cost(x1), cost(x2));
    for _ in 0..80 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = cost(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = cost(x2);
        }
    }
    let t = if f1 <= f2 { x1 } else { x2 };
    if cost(t) <= cost(best) {
        Complex64::from_polar(1.0, t)
    } else {
        Complex64::from_polar(1.0, best)
    }
}

/// Decides whether `a` are the critical points of a polynomial whose zeros
/// all lie on the unit circle.
pub fn critical_feasibility(a: &[Complex64]) -> Result<FeasibilityReport> {
    critical_feasibility_with_tol(a, FEASIBLE_TOL)
}

/// [`critical_feasibility`] with a custom residual threshold.
pub fn critical_feasibility_with_tol(a: &[Complex64], tol: f64) -> Result<FeasibilityReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    if a.is_empty() {
        return Err(Error::InvalidInput("need at least one point".into()));
    }
    if let Some(z) = a.iter().find(|z| !(z.norm() < 1.0)) {
        return Err(Error::InvalidInput(format!("{z} is not in the open unit disk")));
    }
    let n = a.len();
    let s = elementary_symmetric(a);
    let lambda = if n % 2 == 1 && s[n / 2].norm() > 1e-12 {
        let sk = s[n / 2];
        -sk.conj() / sk
    } else {
        scan_lambda(&s)
    };
    let residuals = critical_residuals(&s, lambda);
    let max_residual = max_norm(&residuals);
    let feasible = max_residual < tol;
    let witness = feasible.then(|| {
        let phi = MonicPoly::from_roots(a);
        let star = phi.star(n).expect("degree equals n");
        MonicPoly::pin_leading(&phi.mul_z() - &star.scale(lambda.conj()))
    });
    Ok(FeasibilityReport { symmetric: s, lambda, residuals, max_residual, feasible, witness })
}

/// `|a1 + a2| - 2 |a1 a2|`; zero exactly for feasible pairs.
pub fn two_point_defect(a1: Complex64, a2: Complex64) -> f64 {
    (a1 + a2).norm() - 2.0 * (a1 * a2).norm()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BilliardReport {
    /// `w0, B(w0), …, B^steps(w0)`.
    pub orbit: Vec<Complex64>,
    /// Sum of the counterclockwise arc increments.
    pub argsum: f64,
    /// `|B^steps(w0) - w0|`.
    pub defect: f64,
}

/// Largest support value: grid scan, then golden-section search around the best sample.
pub fn max_support(body: &dyn ConvexBody) -> f64 {
    let step = TAU / DISK_SAMPLES as f64;
    let (best, h_best) = (0..DISK_SAMPLES)
        .map(|k| {
            let phi = k as f64 * step;
            (phi, body.support(phi))
        })
        .fold((0.0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 || x.1.is_nan() { x } else { acc });
    if !h_best.is_finite() {
        return h_best;
    }
    let (mut lo, mut hi) = (best - step, best + step);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (body.support(x1), body.support(x2));
    for _ in 0..60 {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = body.support(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = body.support(x2);
        }
    }
    h_best.max(f1).max(f2)
}

fn check_inside(body: &dyn ConvexBody) -> Result<()> {
    let h = max_support(body);
    if !(h < 1.0 - 1e-12) {
        return Err(Error::Geometry("body is not strictly inside the unit disk".into()));
    }
    Ok(())
}

/// Counterclockwise arc `δ` from `e^{iθ}` to the next point of the tangent chord:
/// the root of `h(θ + δ/2) = cos(δ/2)`.
fn tangent_step(body: &dyn ConvexBody, theta: f64) -> Result<f64> {
    let g = |d: f64| body.support(theta + d / 2.0) - (d / 2.0).cos();
    let (mut lo, mut hi) = (0.0, TAU);
    if !(g(lo) < 0.0 && g(hi) > 0.0) {
        return Err(Error::Geometry("no tangent chord from this point".into()));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn orbit(body: &dyn ConvexBody, theta0: f64, steps: usize) -> Result<BilliardReport> {
    let mut theta = theta0;
    let mut points = vec![Complex64::from_polar(1.0, theta0)];
    let mut argsum = 0.0;
    for _ in 0..steps {
        let d = tangent_step(body, theta)?;
        argsum += d;
        theta += d;
        points.push(Complex64::from_polar(1.0, theta));
    }
    let defect = (points[steps] - points[0]).norm();
    Ok(BilliardReport { orbit: points, argsum, defect })
}

/// Iterates the tangent-chord map from `w0`.
pub fn billiard_closure(body: &dyn ConvexBody, w0: Complex64, steps: usize) -> Result<BilliardReport> {
    if !((w0.norm() - 1.0).abs() < 1e-11) {
        return Err(Error::InvalidInput(format!("start point {w0} is not unimodular")));
    }
    check_inside(body)?;
    orbit(body, w0.arg(), steps)
}

fn ellipse_inside(f1: Complex64, f2: Complex64, a: f64) -> bool {
    Ellipse::new(f1, f2, a).map(|e| check_inside(&e).is_ok()).unwrap_or(false)
}

/// Semimajor axis (with fixed foci) at which the billiard map closes an
/// `n_gon`-gon, verified from five start points.
pub fn closure_eccentricity(f1: Complex64, f2: Complex64, n_gon: usize) -> Result<Ellipse> {
    if n_gon < 3 {
        return Err(Error::InvalidInput("closure needs at least a triangle".into()));
    }
    if !(f1.norm() < 1.0 && f2.norm() < 1.0) {
        return Err(Error::InvalidInput("foci must lie in the open unit disk".into()));
    }
    let half = (f2 - f1).norm() / 2.0;
    let a_min = half * (1.0 + 1e-12) + 1e-300;
    if !ellipse_inside(f1, f2, a_min) {
        return Err(Error::Geometry("foci too close to the circle".into()));
    }
    // largest admissible axis
    let (mut lo, mut hi) = (a_min, 1.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if ellipse_inside(f1, f2, mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a_max = lo;
    let argsum = |a: f64| -> Result<f64> {
        let e = Ellipse::new(f1, f2, a)?;
        Ok(orbit(&e, 0.0, n_gon)?.argsum)
    };
    let target = TAU;
    let (mut lo, mut hi) = (a_min, a_max);
    let (mut s_lo, mut s_hi) = (argsum(lo)?, argsum(hi)?);
    if !(s_lo > target && s_hi < target) {
        return Err(Error::Geometry(format!(
            "closure not bracketed: argsum ranges over [{s_hi:.6}, {s_lo:.6}]"
        )));
    }
    for _ in 0..200 {
        if s_lo < s_hi {
            return Err(Error::Geometry("argsum is not monotone in the semimajor axis".into()));
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = argsum(mid)?;
        if s > target {
            lo = mid;
            s_lo = s;
        } else {
            hi = mid;
            s_hi = s;
        }
    }
    let ellipse = Ellipse::new(f1, f2, 0.5 * (lo + hi))?;
    for k in 0..5 {
        let start = 0.9 + TAU * k as f64 / 5.0;
        let r = orbit(&ellipse, start, n_gon)?;
        ensure_close("billiard closes from every start point", r.defect, CLOSURE_TOL)?;
    }
    Ok(ellipse)
}

/// Arc swept by one tangent chord of the centred circle of radius `r`.
pub fn circle_chord_arc(r: f64) -> f64 {
    2.0 * r.acos()
}

/// Radius of the centred circle on which the billiard closes an `k`-gon.
pub fn closing_radius(k: usize) -> f64 {
    (PI / k as f64).cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ggt::ggt_build;
    use crate::numrange::boundary_sweep;
    use crate::popuc::popuc_zeros;
    use crate::testutil::{random_in_disk, random_unimodular, rng};
    use proptest::prelude::*;
    use rand::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_polygon(r: &mut rand_chacha::ChaCha8Rng, k: usize) -> Vec<Complex64> {
        loop {
            let ws: Vec<Complex64> = (0..k).map(|_| random_unimodular(r)).collect();
            let mut args: Vec<f64> = ws.iter().map(|w| crate::popuc::arg_2pi(*w)).collect();
            args.sort_by(|a, b| a.total_cmp(b));
            let gap = (0..k).map(|i| (args[(i + 1) % k] - args[i]).rem_euclid(TAU)).fold(TAU, f64::min);
            if gap > 0.05 {
                return ws;
            }
        }
    }

    #[test]
    fn steiner_examples() {
        let w = Complex64::from_polar(1.0, TAU / 3.0);
        let (a, b) = steiner_foci(c(1.0, 0.0), w, w * w).unwrap();
        assert!(a.norm() < 1e-7 && b.norm() < 1e-7);
        let (a, b) = steiner_foci(c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0)).unwrap();
        let expected = [c(2f64.sqrt() / 3.0, 1.0 / 3.0), c(-(2f64.sqrt()) / 3.0, 1.0 / 3.0)];
        assert!(set_distance(&[a, b], &expected) < 1e-15);
        assert_eq!(steiner_foci(c(0.0, 0.0), c(1.0, 1.0), c(2.0, 2.0)), Err(Error::DegenerateTriangle));
    }

    #[test]
    fn steiner_matches_derivative_roots() {
        let mut r = rng(91);
        for _ in 0..50 {
            let z: Vec<Complex64> = (0..3).map(|_| random_unimodular(&mut r)).collect();
            let (a, b) = steiner_foci(z[0], z[1], z[2]).unwrap();
            let roots = crate::poly::roots(&crate::poly::Poly::from_roots(&z).deriv(), 1e-14).unwrap();
            assert!(set_distance(&[a, b], &roots) < 1e-10);
        }
    }

    #[test]
    fn midpoint_examples() {
        let cube: Vec<Complex64> = (0..3).map(|k| Complex64::from_polar(1.0, TAU * k as f64 / 3.0)).collect();
        let word = midpoint_word(&cube).unwrap();
        assert!(word.interior().iter().all(|a| a.norm() < 1e-14));
        let tri = [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0)];
        let word = midpoint_word(&tri).unwrap();
        let eig = crate::poly::roots(ggt_build(&word).char_poly().as_poly(), 1e-14).unwrap();
        let (a, b) = steiner_foci(tri[0], tri[1], tri[2]).unwrap();
        assert!(set_distance(&eig, &[a, b]) < 1e-10);
    }

    #[test]
    fn midpoint_weights_equal() {
        let mut r = rng(92);
        for k in 3..=8 {
            let ws = random_polygon(&mut r, k);
            let word = midpoint_word(&ws).unwrap();
            let frame = popuc_zeros(&word, popuc_parameter(&ws)).unwrap();
            for m in frame.weights() {
                assert!((m - 1.0 / k as f64).abs() < 1e-9);
            }
            assert!(set_distance(frame.zeros(), &ws) < 1e-9);
        }
    }

    #[test]
    fn feasibility_examples() {
        let rep = critical_feasibility(&[c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(rep.feasible && rep.max_residual == 0.0);
        let p = rep.witness.unwrap();
        assert!(p.coeff(1).norm() == 0.0 && p.coeff(2).norm() == 0.0 && (p.coeff(0).norm() - 1.0).abs() < 1e-15);
        let rep = critical_feasibility(&[c(0.5, 0.0), c(-0.5, 0.0)]).unwrap();
        assert!(!rep.feasible);
        assert!(two_point_defect(c(0.5, 0.0), c(-0.5, 0.0)) < -0.1);
        assert!(critical_feasibility(&[c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn feasibility_round_trip() {
        let mut r = rng(93);
        for k in 2..=8 {
            let ws = random_polygon(&mut r, k);
            let a = crate::poly::roots(&crate::poly::Poly::from_roots(&ws).deriv(), 1e-14).unwrap();
            let rep = critical_feasibility(&a).unwrap();
            assert!(rep.feasible && rep.max_residual < 1e-9, "k={k} res={}", rep.max_residual);
            let p = rep.witness.unwrap();
            let pz = crate::poly::roots(p.as_poly(), 1e-14).unwrap();
            assert!(set_distance(&pz, &ws) < 1e-7, "k={k}");
            let dp = p.deriv();
            let phi = MonicPoly::from_roots(&a);
            assert!(dp.max_coeff_diff(&phi.as_poly().scale(c(k as f64, 0.0))) < 1e-9);
        }
    }

    #[test]
    fn residual_symmetry() {
        let mut r = rng(94);
        for n in 1..7 {
            let a: Vec<Complex64> = (0..n).map(|_| random_in_disk(&mut r, 0.9)).collect();
            let s = elementary_symmetric(&a);
            let l = random_unimodular(&mut r);
            let res = critical_residuals(&s, l);
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            for j in 0..n {
                let twisted = l.conj() * sign * res[n - 1 - j].conj();
                assert!((res[j] - twisted).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn two_point_condition_matches_scan() {
        let mut r = rng(95);
        for i in 0..40 {
            let a = if i % 2 == 0 {
                let ws = random_polygon(&mut r, 3);
                crate::poly::roots(&crate::poly::Poly::from_roots(&ws).deriv(), 1e-14).unwrap()
            } else {
                vec![random_in_disk(&mut r, 0.9), random_in_disk(&mut r, 0.9)]
            };
            let rep = critical_feasibility(&a).unwrap();
            assert_eq!(two_point_defect(a[0], a[1]).abs() < 1e-9, rep.feasible);
        }
    }

    #[test]
    fn closure_with_a_near_tangent_bracket() {
        let (f1, f2) = (c(0.5895598146910012, 0.14713868907745314), c(0.1699983706992753, -0.18346989222857335));
        let e = closure_eccentricity(f1, f2, 3).unwrap();
        assert!(e.in_unit_disk() && max_support(&e) < 1.0);
        let r = billiard_closure(&e, c(0.3, 0.4) / 0.5, 3).unwrap();
        assert!(r.defect < 1e-8);
    }

    #[test]
    fn circle_billiards() {
        for k in 3..=5 {
            let body = Ellipse::circle(c(0.0, 0.0), closing_radius(k)).unwrap();
            let rep = billiard_closure(&body, Complex64::from_polar(1.0, 0.3), k).unwrap();
            assert!(rep.defect < 1e-8);
            assert!((rep.argsum - TAU).abs() < 1e-8);
        }
        let body = Ellipse::circle(c(0.0, 0.0), 0.6).unwrap();
        let rep = billiard_closure(&body, c(1.0, 0.0), 3).unwrap();
        assert!((rep.argsum - 3.0 * circle_chord_arc(0.6)).abs() < 1e-12);
        assert!(rep.argsum < TAU);
        let big = Ellipse::circle(c(0.0, 0.0), 1.0).unwrap();
        assert!(matches!(billiard_closure(&big, c(1.0, 0.0), 3), Err(Error::Geometry(_))));
    }

    #[test]
    fn billiard_on_swept_ellipse() {
        let mut r = rng(96);
        let word = VerblunskyWord::interior_only(vec![random_in_disk(&mut r, 0.6), random_in_disk(&mut r, 0.6)]).unwrap();
        let body = SupportInterpolant::new(&boundary_sweep(&word, 128).unwrap()).unwrap();
        for k in 0..8 {
            let w0 = Complex64::from_polar(1.0, 0.2 + TAU * k as f64 / 8.0);
            let rep = billiard_closure(&body, w0, 3).unwrap();
            assert!(rep.defect < 1e-6, "{}", rep.defect);
        }
    }

    #[test]
    fn eccentricity_examples() {
        let e = closure_eccentricity(c(0.0, 0.0), c(0.0, 0.0), 3).unwrap();
        assert!((e.semimajor() - 0.5).abs() < 1e-10);
        let e = closure_eccentricity(c(0.0, 0.0), c(0.0, 0.0), 4).unwrap();
        assert!((e.semimajor() - (PI / 4.0).cos()).abs() < 1e-10);
    }

    #[test]
    fn eccentricity_matches_numerical_range() {
        let mut r = rng(97);
        for _ in 0..4 {
            let a = [random_in_disk(&mut r, 0.6), random_in_disk(&mut r, 0.6)];
            let word = verblunsky_from_phi(&MonicPoly::from_roots(&a)).unwrap();
            let e = closure_eccentricity(a[0], a[1], 3).unwrap();
            let curve = boundary_sweep(&word, 64).unwrap();
            let dev = curve.samples().iter().map(|z| e.focal_residual(*z).abs()).fold(0.0, f64::max);
            assert!(dev < 1e-5, "{dev}");
        }
    }

    #[test]
    fn ellipse_support_matches_boundary() {
        let e = Ellipse::new(c(0.1, 0.2), c(-0.2, 0.0), 0.4).unwrap();
        let pts = e.boundary(4096);
        for k in 0..16 {
            let phi = 0.4 * k as f64;
            let direct = crate::numrange::support_of_points(&pts, phi);
            assert!((direct - e.support(phi)).abs() < 1e-6);
        }
        for z in &pts {
            assert!(e.focal_residual(*z).abs() < 1e-12);
        }
        assert!(e.in_unit_disk());
        assert!(Ellipse::new(c(0.0, 0.0), c(1.0, 0.0), 0.4).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn argsum_decreases_with_axis(seed in 0u64..1000) {
            let mut r = rng(seed);
            let f1 = random_in_disk(&mut r, 0.4);
            let f2 = random_in_disk(&mut r, 0.4);
            let half = (f2 - f1).norm() / 2.0;
            let a1 = half + r.gen_range(0.01..0.2);
            let a2 = a1 + r.gen_range(0.01..0.1);
            let e1 = Ellipse::new(f1, f2, a1).unwrap();
            let e2 = Ellipse::new(f1, f2, a2).unwrap();
            prop_assume!(e2.in_unit_disk());
            let s1 = billiard_closure(&e1, c(1.0, 0.0), 3).unwrap().argsum;
            let s2 = billiard_closure(&e2, c(1.0, 0.0), 3).unwrap().argsum;
            prop_assert!(s1 > s2);
        }
    }
}

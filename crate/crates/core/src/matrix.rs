//! Small dense complex matrices and the handful of factorizations the rest of
//! the crate needs: LU, Householder reduction to Hessenberg form, cyclic
//! Jacobi for Hermitian matrices, one-sided Jacobi SVD and Gram–Schmidt QR.

use std::fmt;
use std::ops::{Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{MonicPoly, Poly};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub const JACOBI_THRESHOLD: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 40;

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("matrix rows have unequal lengths".into()));
        }
        Ok(CMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.cols.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Leading `k × k` block.
    pub fn leading(&self, k: usize) -> Self {
        Self::from_fn(k, k, |i, j| self[(i, j)])
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `J M J` with `J` the index-reversal permutation.
    pub fn reverse_both(&self) -> Self {
        let (r, c) = (self.rows, self.cols);
        Self::from_fn(r, c, |i, j| self[(r - 1 - i, c - 1 - j)])
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> Complex64 {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = ONE;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[(i, k)].norm().partial_cmp(&a[(j, k)].norm()).unwrap())
                .unwrap();
            if a[(p, k)].norm_sqr() == 0.0 {
                return ZERO;
            }
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            let pivot = a[(k, k)];
            det *= pivot;
            for i in (k + 1)..n {
                let f = a[(i, k)] / pivot;
                for j in (k + 1)..n {
                    let v = a[(k, j)];
                    a[(i, j)] -= f * v;
                }
            }
        }
        det
    }

    /// Solves `self · x = b` by LU with partial pivoting.
    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut x = b.to_vec();
        let scale = self.frobenius().max(f64::MIN_POSITIVE);
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[(i, k)].norm().partial_cmp(&a[(j, k)].norm()).unwrap())
                .unwrap();
            if a[(p, k)].norm() <= 1e-300 * scale {
                return Err(Error::Solver("singular linear system".into()));
            }
            if p != k {
                a.swap_rows(p, k);
                x.swap(p, k);
            }
            let pivot = a[(k, k)];
            for i in (k + 1)..n {
                let f = a[(i, k)] / pivot;
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for j in (k + 1)..n {
                    let v = a[(k, j)];
                    a[(i, j)] -= f * v;
                }
                let xk = x[k];
                x[i] -= f * xk;
            }
        }
        for k in (0..n).rev() {
            let s: Complex64 = ((k + 1)..n).map(|j| a[(k, j)] * x[j]).sum();
            x[k] = (x[k] - s) / a[(k, k)];
        }
        if x.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Solver("linear solve produced non-finite values".into()));
        }
        Ok(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Unitarily similar upper Hessenberg matrix (Householder reflections).
    pub fn hessenberg(&self) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        for k in 0..n.saturating_sub(2) {
            let x: Vec<Complex64> = ((k + 1)..n).map(|i| a[(i, k)]).collect();
            let norm = x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 {
                continue;
            }
            let phase = if x[0].norm() == 0.0 { ONE } else { x[0] / x[0].norm() };
            let mut v = x.clone();
            v[0] += phase * norm;
            let vn = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            for c in v.iter_mut() {
                *c /= vn;
            }
            // A <- (I - 2vv^H) A
            for j in 0..n {
                let s: Complex64 = v.iter().enumerate().map(|(t, vi)| vi.conj() * a[(k + 1 + t, j)]).sum();
                for (t, vi) in v.iter().enumerate() {
                    a[(k + 1 + t, j)] -= 2.0 * vi * s;
                }
            }
            // A <- A (I - 2vv^H)
            for i in 0..n {
                let s: Complex64 = v.iter().enumerate().map(|(t, vi)| a[(i, k + 1 + t)] * vi).sum();
                for (t, vi) in v.iter().enumerate() {
                    a[(i, k + 1 + t)] -= 2.0 * s * vi.conj();
                }
            }
            for i in (k + 2)..n {
                a[(i, k)] = ZERO;
            }
        }
        a
    }

    /// `det(z - H)` for an upper Hessenberg `H`, by the leading-minor recurrence.
    /// Entries below the subdiagonal are ignored.
    pub fn hessenberg_char_poly(&self) -> MonicPoly {
        assert!(self.is_square());
        let n = self.rows;
        let mut p: Vec<Poly> = vec![Poly::one()];
        for k in 0..n {
            // p_{k+1} = (z - h_kk) p_k - sum_{i<k} h_ik (h_{i+1,i} ... h_{k,k-1}) p_i
            let mut next = &p[k].mul_z() - &p[k].scale(self[(k, k)]);
            let mut sub = ONE;
            for i in (0..k).rev() {
                sub *= self[(i + 1, i)];
                let coef = self[(i, k)] * sub;
                if coef.norm_sqr() != 0.0 {
                    next = &next - &p[i].scale(coef);
                }
            }
            p.push(next);
        }
        MonicPoly::pin_leading(p.pop().unwrap())
    }

    /// `det(z - A)` for a general square matrix.
    pub fn char_poly(&self) -> MonicPoly {
        self.hessenberg().hessenberg_char_poly()
    }

    /// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
    /// Returns eigenvalues in decreasing order and the matching unit
    /// eigenvectors as the columns of the second component.
    pub fn hermitian_eigen(&self) -> Result<(Vec<f64>, CMatrix)> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut v = CMatrix::identity(n);
        let total = a.frobenius().max(f64::MIN_POSITIVE);
        let off = |a: &CMatrix| -> f64 {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        s += a[(i, j)].norm_sqr();
                    }
                }
            }
            s.sqrt()
        };
        let mut sweeps = 0;
        while off(&a) > JACOBI_THRESHOLD * total {
            if sweeps == JACOBI_MAX_SWEEPS {
                return Err(Error::Convergence {
                    iterations: sweeps,
                    max_residual: off(&a) / total,
                    residuals: vec![off(&a) / total],
                });
            }
            sweeps += 1;
            for p in 0..n {
                for q in (p + 1)..n {
                    let g = a[(p, q)];
                    let gn = g.norm();
                    if gn <= f64::MIN_POSITIVE {
                        continue;
                    }
                    let e = g / gn;
                    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * gn);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // J = [[c, s], [-s conj(e), c conj(e)]] on (p, q)
                    let jpp = Complex64::new(c, 0.0);
                    let jpq = Complex64::new(s, 0.0);
                    let jqp = -e.conj() * s;
                    let jqq = e.conj() * c;
                    for i in 0..n {
                        let (aip, aiq) = (a[(i, p)], a[(i, q)]);
                        a[(i, p)] = aip * jpp + aiq * jqp;
                        a[(i, q)] = aip * jpq + aiq * jqq;
                        let (vip, viq) = (v[(i, p)], v[(i, q)]);
                        v[(i, p)] = vip * jpp + viq * jqp;
                        v[(i, q)] = vip * jpq + viq * jqq;
                    }
                    for j in 0..n {
                        let (apj, aqj) = (a[(p, j)], a[(q, j)]);
                        a[(p, j)] = jpp.conj() * apj + jqp.conj() * aqj;
                        a[(q, j)] = jpq.conj() * apj + jqq.conj() * aqj;
                    }
                    a[(p, q)] = ZERO;
                    a[(q, p)] = ZERO;
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap());
        let values = order.iter().map(|&i| a[(i, i)].re).collect();
        let vectors = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
        Ok((values, vectors))
    }

    /// Singular value decomposition `A = U Σ V^H` by one-sided (Hestenes)
    /// Jacobi. Singular values are returned in decreasing order; `U` is
    /// completed to a unitary when some singular values vanish.
    pub fn svd(&self) -> Result<Svd> {
        assert!(self.is_square());
        let n = self.rows;
        let mut w = self.clone();
        let mut v = CMatrix::identity(n);
        let mut sweeps = 0;
        loop {
            let mut rotated = false;
            for p in 0..n {
                for q in (p + 1)..n {
                    let mut alpha = 0.0;
                    let mut beta = 0.0;
                    let mut gamma = ZERO;
                    for i in 0..n {
                        alpha += w[(i, p)].norm_sqr();
                        beta += w[(i, q)].norm_sqr();
                        gamma += w[(i, p)].conj() * w[(i, q)];
                    }
                    let gn = gamma.norm();
                    if gn <= 1e-15 * (alpha * beta).sqrt() || gn <= f64::MIN_POSITIVE {
                        continue;
                    }
                    rotated = true;
                    let e = (gamma / gn).conj();
                    let zeta = (beta - alpha) / (2.0 * gn);
                    let t = if zeta >= 0.0 {
                        1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                    } else {
                        -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    for m in [&mut w, &mut v] {
                        for i in 0..n {
                            let xp = m[(i, p)];
                            let xq = m[(i, q)] * e;
                            m[(i, p)] = xp * c - xq * s;
                            m[(i, q)] = xp * s + xq * c;
                        }
                    }
                }
            }
            if !rotated {
                break;
            }
            sweeps += 1;
            if sweeps > 60 {
                return Err(Error::Convergence {
                    iterations: sweeps,
                    max_residual: f64::NAN,
                    residuals: Vec::new(),
                });
            }
        }
        let mut sigma: Vec<f64> = (0..n)
            .map(|j| (0..n).map(|i| w[(i, j)].norm_sqr()).sum::<f64>().sqrt())
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap());
        let smax = sigma.iter().cloned().fold(0.0, f64::max);
        let mut u_cols: Vec<Vec<Complex64>> = Vec::new();
        let mut v_cols: Vec<Vec<Complex64>> = Vec::new();
        let mut sorted_sigma = Vec::new();
        let mut deficient = Vec::new();
        for &j in &order {
            v_cols.push(v.column(j));
            sorted_sigma.push(sigma[j]);
            if sigma[j] > 1e-14 * smax.max(f64::MIN_POSITIVE) {
                u_cols.push(w.column(j).iter().map(|&x| x / sigma[j]).collect());
            } else {
                deficient.push(u_cols.len());
                u_cols.push(vec![ZERO; n]);
            }
        }
        // complete U with an orthonormal basis of the remaining directions
        for &slot in &deficient {
            let mut filled = false;
            for basis in 0..n {
                let mut cand = vec![ZERO; n];
                cand[basis] = ONE;
                for _ in 0..2 {
                    for (k, col) in u_cols.iter().enumerate() {
                        if k == slot || (deficient.contains(&k) && col.iter().all(|c| c.norm_sqr() == 0.0)) {
                            continue;
                        }
                        let proj: Complex64 = col.iter().zip(&cand).map(|(a, b)| a.conj() * b).sum();
                        for (c, a) in cand.iter_mut().zip(col) {
                            *c -= proj * a;
                        }
                    }
                }
                let nrm = cand.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
                if nrm > 0.5 {
                    u_cols[slot] = cand.iter().map(|&c| c / nrm).collect();
                    filled = true;
                    break;
                }
            }
            if !filled {
                return Err(Error::Solver("could not complete singular basis".into()));
            }
        }
        for s in sigma.iter_mut() {
            *s = s.max(0.0);
        }
        Ok(Svd {
            u: CMatrix::from_fn(n, n, |i, j| u_cols[j][i]),
            sigma: sorted_sigma,
            v: CMatrix::from_fn(n, n, |i, j| v_cols[j][i]),
        })
    }
}

/// Output of [`CMatrix::svd`].
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: CMatrix,
    pub sigma: Vec<f64>,
    pub v: CMatrix,
}

/// Modified Gram–Schmidt with one reorthogonalization pass on the columns
/// `vectors[k]`. Returns the upper triangular factor `R` (`(m) × (m)` for `m`
/// vectors); `R[k][k]` is the norm of the part of vector `k` orthogonal to the
/// earlier ones and may be zero for a dependent final vector.
pub fn gram_schmidt_r(vectors: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let m = vectors.len();
    let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    let mut r = vec![vec![ZERO; m]; m];
    for k in 0..m {
        let mut v = vectors[k].clone();
        for _pass in 0..2 {
            for (j, qj) in q.iter().enumerate() {
                if qj.is_empty() {
                    continue;
                }
                let proj: Complex64 = qj.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                r[j][k] += proj;
                for (x, a) in v.iter_mut().zip(qj) {
                    *x -= proj * a;
                }
            }
        }
        let nrm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        r[k][k] = Complex64::new(nrm, 0.0);
        if nrm > 0.0 {
            q.push(v.iter().map(|&x| x / nrm).collect());
        } else {
            q.push(Vec::new());
        }
    }
    r
}

/// Cholesky factor `R` (upper triangular, positive diagonal) of a Hermitian
/// positive semidefinite matrix, `M = R^H R`. A non-positive pivot ends the
/// factorization: that row and all later ones are left zero.
pub fn cholesky_upper(m: &CMatrix) -> Vec<Vec<Complex64>> {
    let n = m.rows();
    let mut r = vec![vec![ZERO; n]; n];
    for k in 0..n {
        let d = m[(k, k)].re - (0..k).map(|i| r[i][k].norm_sqr()).sum::<f64>();
        if !(d > 0.0) {
            break;
        }
        let rkk = d.sqrt();
        r[k][k] = Complex64::new(rkk, 0.0);
        for j in (k + 1)..n {
            let s: Complex64 = (0..k).map(|i| r[i][k].conj() * r[i][j]).sum();
            r[k][j] = (m[(k, j)] - s) / rkk;
        }
    }
    r
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows);
        CMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| self[(i, k)] * rhs[(k, j)]).sum()
        })
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_rows() {
            writeln!(f, "  {:?}", row)?;
        }
        write!(f, "]")
    }
}

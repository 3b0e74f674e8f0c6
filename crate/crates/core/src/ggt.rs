//! GGT matrices: multiplication by `z` in the orthonormal polynomial basis.

use num_complex::Complex64;

use crate::error::{ensure_close, Error, Result};
use crate::matrix::CMatrix;
use crate::opuc::{rho, verblunsky_from_cyclic_pair, VerblunskyWord};
use crate::poly::{roots, MonicPoly, DEFAULT_ROOT_TOL};

/// Default tolerance of [`contraction_to_verblunsky`].
pub const DEFAULT_CONTRACTION_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GgtKind {
    /// `n × n` compression built from `α_0 .. α_{n-1}`.
    Contraction,
    /// `(n+1) × (n+1)` unitary whose last coefficient is the terminal `λ`.
    Unitary,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GgtMatrix {
    kind: GgtKind,
    entries: CMatrix,
}

impl GgtMatrix {
    pub fn kind(&self) -> GgtKind {
        self.kind
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn char_poly(&self) -> MonicPoly {
        char_poly(self)
    }
}

/// `G_{kℓ} = -conj(a_ℓ) a_{k-1} ρ_k ⋯ ρ_{ℓ-1}` for `k <= ℓ`, `ρ_ℓ` on the
/// subdiagonal, with `a_{-1} = -1`.
pub(crate) fn ggt_entries(coeffs: &[Complex64]) -> CMatrix {
    let m = coeffs.len();
    let rhos: Vec<f64> = coeffs.iter().map(|&a| rho(a)).collect();
    let mut g = CMatrix::zeros(m, m);
    for l in 0..m {
        let mut prod = 1.0;
        for k in (0..=l).rev() {
            if k < l {
                prod *= rhos[k];
            }
            let prev = if k == 0 { Complex64::new(-1.0, 0.0) } else { coeffs[k - 1] };
            g[(k, l)] = -coeffs[l].conj() * prev * prod;
        }
        if l + 1 < m {
            g[(l + 1, l)] = Complex64::new(rhos[l], 0.0);
        }
    }
    g
}

fn all_coeffs(word: &VerblunskyWord) -> Vec<Complex64> {
    let mut c = word.interior().to_vec();
    if let Some(l) = word.terminal() {
        c.push(l);
    }
    c
}

/// GGT contraction of the interior, or the GGT unitary when a terminal is
/// present.
pub fn ggt_build(word: &VerblunskyWord) -> GgtMatrix {
    let kind = if word.terminal().is_some() {
        GgtKind::Unitary
    } else {
        GgtKind::Contraction
    };
    GgtMatrix {
        kind,
        entries: ggt_entries(&all_coeffs(word)),
    }
}

/// `det(z - G)` by the Hessenberg minor recurrence.
pub fn char_poly(g: &GgtMatrix) -> MonicPoly {
    g.entries.hessenberg_char_poly()
}

/// Coefficients of the same unitary seen from the other end of its basis:
/// `β_j = -α_{n-1} conj(α_{n-2-j})`, `β_{n-1} = α_{n-1}`, where `α_{n-1}` is
/// the terminal. Verifies `J G(α)ᵀ J = G(β)`.
pub fn head_flip(word: &VerblunskyWord) -> Result<VerblunskyWord> {
    let t = word
        .terminal()
        .ok_or_else(|| Error::InvalidInput("head flip needs a terminal coefficient".into()))?;
    let a = word.interior();
    let m = a.len();
    let beta: Vec<Complex64> = (0..m).map(|j| -t * a[m - 1 - j].conj()).collect();
    let flipped = VerblunskyWord::new(beta, Some(t))?;
    let lhs = ggt_build(word).entries.transpose().reverse_both();
    let rhs = ggt_build(&flipped).entries;
    ensure_close("reversed transpose equals the flipped GGT matrix", lhs.max_abs_diff(&rhs), 1e-12)?;
    Ok(flipped)
}

/// Verblunsky coefficients of the GGT contraction unitarily equivalent to a
/// completely non-unitary contraction with one-dimensional defect.
pub fn contraction_to_verblunsky(a: &CMatrix, tol: f64) -> Result<VerblunskyWord> {
    if !a.is_square() || a.rows() == 0 {
        return Err(Error::InvalidInput("expected a non-empty square matrix".into()));
    }
    if !a.is_finite() {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let n = a.rows();
    let svd = a.svd()?;
    if svd.sigma[0] > 1.0 + tol {
        return Err(Error::NotContraction { norm: svd.sigma[0] });
    }
    let rank = svd.sigma.iter().filter(|&&s| 1.0 - s * s > tol).count();
    if rank != 1 {
        return Err(Error::NotDefectOne { rank });
    }
    let char_a = a.char_poly();
    for z in roots(&char_a, DEFAULT_ROOT_TOL)? {
        if z.norm() >= 1.0 - tol {
            return Err(Error::NotCompletelyNonUnitary { eigenvalue: z });
        }
    }
    let x = svd.v.column(n - 1);
    let scale = svd.sigma[n - 1].min(1.0);
    let polar = &svd.u * &svd.v.adjoint();
    let spectral = verblunsky_from_cyclic_pair(&polar, &x)?;
    let flipped = head_flip(&spectral)?;
    let mut gamma = flipped.interior().to_vec();
    gamma.push(flipped.terminal().unwrap() * scale);
    let word = VerblunskyWord::interior_only(gamma)?;
    let dev = char_poly(&ggt_build(&word)).max_coeff_diff(&char_a);
    ensure_close("characteristic polynomials agree", dev, 1e-8)?;
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::tests::random_unitary;
    use crate::opuc::szego_forward;
    use crate::testutil::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dense_char(a: &CMatrix, z: Complex64) -> Complex64 {
        let n = a.rows();
        (&CMatrix::diag(&vec![z; n]) - a).det()
    }

    #[test]
    fn build_examples() {
        let g = ggt_build(&VerblunskyWord::interior_only(vec![c(0.5, 0.0)]).unwrap());
        assert_eq!(g.entries().to_rows(), vec![vec![c(0.5, 0.0)]]);
        let g = ggt_build(&VerblunskyWord::interior_only(vec![c(0.0, 0.0); 2]).unwrap());
        assert_eq!(g.entries().to_rows(), vec![vec![c(0.0, 0.0), c(0.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]);
        assert_eq!(g.char_poly().as_poly(), &crate::poly::Poly::monomial(2));

        let (a0, l) = (c(0.3, 0.4), Complex64::from_polar(1.0, 0.7));
        let r0 = (1.0 - a0.norm_sqr()).sqrt();
        let g = ggt_build(&VerblunskyWord::new(vec![a0], Some(l)).unwrap());
        let expected = [[a0.conj(), l.conj() * r0], [c(r0, 0.0), -l.conj() * a0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((g.entries()[(i, j)] - expected[i][j]).norm() < 1e-15);
            }
        }
        assert!((g.entries().det() + l.conj()).norm() < 1e-15);
        assert_eq!(g.kind(), GgtKind::Unitary);
    }

    #[test]
    fn unitary_of_zero_word() {
        let g = ggt_build(&VerblunskyWord::new(vec![c(0.0, 0.0); 2], Some(c(1.0, 0.0))).unwrap());
        let p = g.char_poly();
        assert!(p.max_coeff_diff(&crate::poly::Poly::from_real(&[-1.0, 0.0, 0.0, 1.0])) < 1e-15);
    }

    #[test]
    fn char_poly_matches_szego_and_dense_det() {
        let mut rng = rng(31);
        for _ in 0..10 {
            let w = random_word(&mut rng, 5, 0.9);
            let g = ggt_build(&w);
            let p = g.char_poly();
            assert!(p.max_coeff_diff(szego_forward(&w).phi_n()) < 1e-10);
            for k in 0..8 {
                let z = Complex64::from_polar(1.5, k as f64);
                let d = dense_char(g.entries(), z);
                assert!((p.eval(z) - d).norm() < 1e-9 * d.norm().max(1.0));
            }
        }
    }

    #[test]
    fn head_flip_examples() {
        let w = VerblunskyWord::new(vec![c(0.5, 0.0)], Some(c(-1.0, 0.0))).unwrap();
        assert!(head_flip(&w).unwrap().distance(&w) < 1e-16);
        let w = VerblunskyWord::new(vec![c(0.0, 1.0 / 3.0)], Some(c(-1.0, 0.0))).unwrap();
        let b = head_flip(&w).unwrap();
        assert!((b.interior()[0] - c(0.0, -1.0 / 3.0)).norm() < 1e-16);
        assert!(head_flip(&VerblunskyWord::interior_only(vec![]).unwrap()).is_err());
    }

    #[test]
    fn contraction_examples() {
        let shift = CMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]).unwrap();
        let w = contraction_to_verblunsky(&shift, DEFAULT_CONTRACTION_TOL).unwrap();
        assert!(w.interior().iter().all(|a| a.norm() < 1e-14));
        let d = CMatrix::diag(&[c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(
            contraction_to_verblunsky(&d, DEFAULT_CONTRACTION_TOL),
            Err(Error::NotCompletelyNonUnitary { .. })
        ));
        let big = CMatrix::diag(&[c(2.0, 0.0)]);
        assert!(matches!(contraction_to_verblunsky(&big, DEFAULT_CONTRACTION_TOL), Err(Error::NotContraction { .. })));
        let two_defects = CMatrix::diag(&[c(0.5, 0.0), c(0.5, 0.0)]);
        assert!(matches!(
            contraction_to_verblunsky(&two_defects, DEFAULT_CONTRACTION_TOL),
            Err(Error::NotDefectOne { rank: 2 })
        ));
    }

    #[test]
    fn contraction_round_trip() {
        let mut rng = rng(32);
        for n in 1..=6 {
            let w = random_word(&mut rng, n, 0.85);
            let q = random_unitary(&mut rng, n);
            let a = &(&q * ggt_build(&w).entries()) * &q.adjoint();
            let back = contraction_to_verblunsky(&a, DEFAULT_CONTRACTION_TOL).unwrap();
            assert!(back.distance(&w) < 1e-7, "n={n}: {}", back.distance(&w));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn structure_and_determinants(w in word_strategy(1..8, 0.9), l in unimodular_strategy()) {
            let n = w.len();
            let g = ggt_build(&w);
            let e = g.entries();
            for k in 0..n {
                for j in 0..n {
                    if k >= j + 2 {
                        prop_assert_eq!(e[(k, j)], c(0.0, 0.0));
                    }
                }
            }
            let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
            prop_assert!((e.det() - w.interior()[n - 1].conj() * sign).norm() < 1e-12);

            let wu = w.with_terminal(l).unwrap();
            let u = ggt_build(&wu);
            let ue = u.entries();
            prop_assert!((&ue.adjoint() * ue).max_abs_diff(&CMatrix::identity(n + 1)) < 1e-11);
            let sign_u = if n % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((ue.det() - l.conj() * sign_u).norm() < 1e-12);
            prop_assert_eq!(&ue.leading(n), e);
            for z in roots(&u.char_poly(), DEFAULT_ROOT_TOL).unwrap() {
                prop_assert!((z.norm() - 1.0).abs() < 1e-10);
            }
            for z in roots(&g.char_poly(), DEFAULT_ROOT_TOL).unwrap() {
                prop_assert!(z.norm() < 1.0);
            }
        }

        #[test]
        fn head_flip_preserves_spectrum(w in word_strategy(1..7, 0.9), l in unimodular_strategy()) {
            let wu = w.with_terminal(l).unwrap();
            let b = head_flip(&wu).unwrap();
            let p = char_poly(&ggt_build(&wu));
            let q = char_poly(&ggt_build(&b));
            prop_assert!(p.max_coeff_diff(&q) < 1e-10);
        }
    }
}

use poncelet::ggt::{contraction_to_verblunsky, ggt_build, head_flip, DEFAULT_CONTRACTION_TOL};
use poncelet::{CMatrix, Complex64, Result, VerblunskyWord};

/// Gram–Schmidt on the columns of a fixed nonsingular matrix.
fn unitary(n: usize) -> CMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    for j in 0..n {
        let mut v: Vec<Complex64> = (0..n).map(|i| Complex64::new(((i * n + j) as f64).sin(), (i + 2 * j) as f64 * 0.1)).collect();
        for u in &cols {
            let p: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            v.iter_mut().zip(u).for_each(|(x, y)| *x -= p * y);
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|x| x / norm).collect());
    }
    CMatrix::from_fn(n, n, |i, j| cols[j][i])
}

fn main() -> Result<()> {
    let word = VerblunskyWord::interior_only(vec![
        Complex64::new(0.4, 0.1),
        Complex64::new(-0.3, 0.5),
        Complex64::new(0.0, -0.6),
    ])?;
    let q = unitary(3);
    let a = &(&q * ggt_build(&word).entries()) * &q.adjoint();
    let back = contraction_to_verblunsky(&a, DEFAULT_CONTRACTION_TOL)?;
    println!("recovered {:?}", back.interior());
    println!("error {:.2e}", back.distance(&word));

    let flipped = head_flip(&word.with_terminal(Complex64::from_polar(1.0, 1.1))?)?;
    println!("flipped word {:?} terminal {:?}", flipped.interior(), flipped.terminal());

    let not_cnu = CMatrix::diag(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
    println!("diag(1, 0): {}", contraction_to_verblunsky(&not_cnu, DEFAULT_CONTRACTION_TOL).unwrap_err());
    Ok(())
}

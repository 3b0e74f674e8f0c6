//! Forward and inverse Szegő recursion, and the GGT matrix whose
//! characteristic polynomial is Φ_n.

use poncelet::ggt::ggt_build;
use poncelet::opuc::{szego_forward, verblunsky_from_phi};
use poncelet::{Complex64, Result, VerblunskyWord};

fn main() -> Result<()> {
    let i = Complex64::i();
    let word = VerblunskyWord::interior_only(vec![Complex64::new(0.5, 0.0), i / 3.0, Complex64::new(-0.2, 0.1)])?;
    let seq = szego_forward(&word);
    for k in 0..=word.len() {
        println!("Phi_{k} = {:?}   ||Phi_{k}|| = {:.6}", seq.phi(k).coeffs(), seq.norms()[k]);
    }

    let back = verblunsky_from_phi(seq.phi_n())?;
    println!("inverse recursion error: {:.2e}", back.distance(&word));

    let g = ggt_build(&word);
    let diff = g.char_poly().as_poly().max_coeff_diff(seq.phi_n().as_poly());
    println!("det(z - G) vs Phi_n: {diff:.2e}");

    // with a unimodular last coefficient the matrix becomes unitary
    let unitary = ggt_build(&word.with_terminal(i)?);
    let e = unitary.entries();
    let gram = &e.adjoint() * e;
    let dev = gram.max_abs_diff(&poncelet::CMatrix::identity(unitary.dim()));
    println!("{:?} of size {}: |G*G - I| = {dev:.2e}", unitary.kind(), unitary.dim());
    Ok(())
}

//! Zeros of a paraorthogonal polynomial, the three weight formulas and the
//! M-function of the resulting point-mass measure.

use poncelet::popuc::{
    christoffel_weights, popuc_zeros, resolvent_m_function, weights_from_blaschke_derivative,
    weights_from_eigenvectors,
};
use poncelet::{Complex64, Result, VerblunskyWord};

fn main() -> Result<()> {
    let word = VerblunskyWord::interior_only(vec![Complex64::new(0.5, 0.0), Complex64::new(0.0, 1.0 / 3.0)])?;
    let lambda = Complex64::new(0.0, 1.0);
    let frame = popuc_zeros(&word, lambda)?;

    let (_, kernel) = christoffel_weights(&word, frame.zeros())?;
    let eig = weights_from_eigenvectors(&word, lambda, frame.zeros())?;
    let blaschke = weights_from_blaschke_derivative(&word, frame.zeros())?;
    println!("{:>28} {:>12} {:>12} {:>12}", "zero", "kernel", "eigvec", "blaschke");
    for j in 0..frame.zeros().len() {
        let z = frame.zeros()[j];
        println!(
            "{:>12.8} {:>+12.8}i  arg {:>6.3} {:>12.9} {:>12.9} {:>12.9}",
            z.re,
            z.im,
            z.arg(),
            kernel[j],
            eig.weights[j],
            blaschke[j]
        );
    }
    println!("sum of weights: {:.15}", frame.weights().iter().sum::<f64>());

    for z in [Complex64::new(0.0, 0.0), Complex64::new(0.3, -0.4), Complex64::new(-0.7, 0.1)] {
        let m = frame.m_function(z)?;
        let r = resolvent_m_function(&word, lambda, z)?;
        println!("M({z}) = {:.10}  |rational - sum| = {:.1e}  |resolvent - sum| = {:.1e}",
            m.partial_fractions, (m.rational - m.partial_fractions).norm(), (r - m.partial_fractions).norm());
    }
    Ok(())
}

use poncelet::popuc::{nu_verblunsky, popuc_zeros};
use poncelet::schur::{schur_algorithm, schur_params_closed_form};
use poncelet::{Complex64, RationalSchurFn, Result, VerblunskyWord};

fn main() -> Result<()> {
    let i = Complex64::i();
    let word = VerblunskyWord::new(vec![Complex64::new(0.5, 0.0), i / 3.0], Some(i))?;

    let b = RationalSchurFn::blaschke(&word);
    let algorithmic = schur_algorithm(&b, 3)?;
    let closed = schur_params_closed_form(&word)?;
    for (a, c) in algorithmic.iter().zip(&closed) {
        println!("{a:>24.12}   {c:>24.12}");
    }

    // the same numbers are the Verblunsky coefficients of the spectral measure
    let frame = popuc_zeros(&word.without_terminal(), i)?;
    let nu = nu_verblunsky(&frame)?;
    println!("measure word: {:?} terminal {:?}", nu.interior(), nu.terminal());
    Ok(())
}

//! Recovering a Verblunsky word from interlacing zero sets on the circle.

use poncelet::popuc::popuc_zeros;
use poncelet::wendroff::{
    interlace_check, reconstruct_from_two_popuc, reconstruct_second_kind, second_kind_zeros, CircularConfiguration,
};
use poncelet::{Complex64, Error, Result, VerblunskyWord};

fn main() -> Result<()> {
    let word = VerblunskyWord::interior_only(vec![
        Complex64::new(0.3, -0.2),
        Complex64::new(-0.1, 0.6),
        Complex64::new(0.25, 0.25),
    ])?;
    let (l, mu) = (Complex64::new(1.0, 0.0), Complex64::from_polar(1.0, 2.0));

    let first = popuc_zeros(&word, l)?.zeros().to_vec();
    let second = popuc_zeros(&word, mu)?.zeros().to_vec();
    let cfg = CircularConfiguration::new(first.clone(), second)?;
    println!("interlacing: {}", interlace_check(&cfg));
    let rec = reconstruct_from_two_popuc(&cfg)?;
    println!("two zero sets  -> error {:.2e}, lambda {:.6}, mu {:.6}", rec.word.distance(&word), rec.lambda, rec.mu);

    let cfg = CircularConfiguration::new(first.clone(), second_kind_zeros(&word, l)?)?;
    let rec = reconstruct_second_kind(&cfg)?;
    println!("second kind    -> error {:.2e}, weights {:?}", rec.word.distance(&word), rec.weights);

    // rotating one zero breaks the product condition
    let mut bad = second_kind_zeros(&word, l)?;
    bad[0] *= Complex64::from_polar(1.0, 0.01);
    match reconstruct_second_kind(&CircularConfiguration::new(first, bad)?) {
        Err(e @ Error::ProductCondition { .. }) => println!("rejected: {e}"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}

//! Boundary of the numerical range of a truncated GGT matrix, traced by the
//! tangent points of Poncelet polygons and compared with the eigenvalue oracle.

use poncelet::ggt::ggt_build;
use poncelet::numrange::{boundary_distance, boundary_sweep, frames, polygon_contains, tangent_points};
use poncelet::opuc::verblunsky_from_phi;
use poncelet::{Complex64, MonicPoly, Result};

fn main() -> Result<()> {
    let eig = [
        Complex64::new(0.0, 0.7),
        Complex64::from_polar(0.8, 34.0),
        Complex64::from_polar(0.57, 4.0),
    ];
    let word = verblunsky_from_phi(&MonicPoly::from_roots(&eig))?;
    println!("alphas: {:?}", word.interior());

    for n in [64, 256, 1024] {
        let curve = boundary_sweep(&word, n)?;
        let d = boundary_distance(&curve, ggt_build(&word).entries(), 256)?;
        println!("{n:>5} parameters: {:>5} samples, distance to exact boundary {d:.2e}", curve.len());
    }

    let curve = boundary_sweep(&word, 256)?;
    let inside = frames(&word, 32)?
        .iter()
        .all(|f| curve.samples().iter().all(|p| polygon_contains(f.zeros(), *p, 1e-9)));
    println!("every polygon circumscribes the range: {inside}");

    for z in tangent_points(&word, Complex64::new(1.0, 0.0))? {
        println!("tangent point {z:.6}");
    }
    Ok(())
}

//! Steiner inellipse foci, the midpoint word of an inscribed polygon, and the
//! question of which point sets are critical points of circle-rooted polynomials.

use poncelet::geometry::{critical_feasibility, midpoint_word, steiner_foci, two_point_defect};
use poncelet::numrange::tangent_points;
use poncelet::{Complex64, MonicPoly, Result};

fn main() -> Result<()> {
    let tri = [Complex64::from_polar(1.0, 0.2), Complex64::from_polar(1.0, 2.5), Complex64::from_polar(1.0, 4.1)];
    let (f1, f2) = steiner_foci(tri[0], tri[1], tri[2])?;
    println!("foci {f1:.6} {f2:.6}");

    let word = midpoint_word(&tri)?;
    let lambda = -MonicPoly::from_roots(&tri).coeff(0).conj();
    for z in tangent_points(&word, lambda)? {
        println!("tangent point {z:.6}");
    }

    for a in [vec![f1, f2], vec![Complex64::new(0.3, 0.0), Complex64::new(-0.3, 0.0)]] {
        let rep = critical_feasibility(&a)?;
        println!(
            "{a:.4?}: feasible {} residual {:.2e} two-point defect {:.2e}",
            rep.feasible,
            rep.max_residual,
            two_point_defect(a[0], a[1])
        );
    }
    Ok(())
}

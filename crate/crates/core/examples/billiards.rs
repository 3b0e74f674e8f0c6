//! Tangent-chord billiards around convex bodies in the unit disk.

use std::f64::consts::PI;

use poncelet::geometry::{billiard_closure, closing_radius, closure_eccentricity, Ellipse};
use poncelet::numrange::{boundary_sweep, SupportInterpolant};
use poncelet::opuc::verblunsky_from_phi;
use poncelet::{Complex64, MonicPoly, Result};

fn main() -> Result<()> {
    for k in 3..=6 {
        let circle = Ellipse::circle(Complex64::new(0.0, 0.0), closing_radius(k))?;
        let rep = billiard_closure(&circle, Complex64::from_polar(1.0, 0.4), k)?;
        println!("circle r = cos(pi/{k}) = {:.6}: defect {:.1e}", (PI / k as f64).cos(), rep.defect);
    }

    let (f1, f2) = (Complex64::new(0.2, 0.3), Complex64::new(-0.4, 0.1));
    let e = closure_eccentricity(f1, f2, 3)?;
    println!("closing ellipse: semimajor {:.8}, semiminor {:.8}", e.semimajor(), e.semiminor());
    for t in [0.0, 1.0, 2.0, 3.0] {
        let rep = billiard_closure(&e, Complex64::from_polar(1.0, t), 3)?;
        println!("  start {t}: argsum {:.10} defect {:.1e}", rep.argsum, rep.defect);
    }

    // the numerical range of a 3x3 truncated GGT matrix closes quadrilaterals
    let eig = [Complex64::new(0.0, 0.5), Complex64::new(0.3, -0.2), Complex64::new(-0.4, 0.0)];
    let word = verblunsky_from_phi(&MonicPoly::from_roots(&eig))?;
    let body = SupportInterpolant::new(&boundary_sweep(&word, 256)?)?;
    let rep = billiard_closure(&body, Complex64::from_polar(1.0, 0.9), 4)?;
    println!("swept range: argsum / 2pi = {:.8}, defect {:.1e}", rep.argsum / (2.0 * PI), rep.defect);
    Ok(())
}

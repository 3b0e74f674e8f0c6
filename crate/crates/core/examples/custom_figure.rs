//! Draws outer polygons and the range boundary with the SVG canvas used by the CLI.

use poncelet::cli::svg::Canvas;
use poncelet::numrange::{boundary_sweep, frames};
use poncelet::{Complex64, Result, VerblunskyWord};

fn main() -> Result<()> {
    let word = VerblunskyWord::interior_only(vec![Complex64::new(0.4, 0.2), Complex64::new(-0.5, 0.1)])?;
    let mut canvas = Canvas::new();
    canvas.unit_circle();
    for f in frames(&word, 24)? {
        canvas.polygon("outer", f.zeros(), "#3060a0", 0.5);
    }
    canvas.polygon("boundary", boundary_sweep(&word, 512)?.samples(), "crimson", 2.0);
    let path = std::env::temp_dir().join("poncelet_custom.svg");
    std::fs::write(&path, canvas.finish()).expect("write svg");
    println!("wrote {}", path.display());
    Ok(())
}

//! Minimal SVG canvas: 800×800 viewport, unit circle of radius 350px at the centre.

use std::fmt::Write;

use num_complex::Complex64;

pub const SIZE: f64 = 800.0;
pub const RADIUS: f64 = 350.0;

pub fn to_px(z: Complex64) -> (f64, f64) {
    (SIZE / 2.0 + RADIUS * z.re, SIZE / 2.0 - RADIUS * z.im)
}

fn points_attr(points: &[Complex64]) -> String {
    let mut s = String::new();
    for (k, z) in points.iter().enumerate() {
        let (x, y) = to_px(*z);
        if k > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{x:.3},{y:.3}");
    }
    s
}

pub struct Canvas {
    body: String,
}

impl Default for Canvas {
    fn default() -> Self {
        Self::new()
    }
}

impl Canvas {
    pub fn new() -> Self {
        let mut body = String::new();
        let _ = writeln!(
            body,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        let _ = writeln!(body, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
        Self { body }
    }

    pub fn unit_circle(&mut self) {
        let c = SIZE / 2.0;
        let _ = writeln!(
            self.body,
            r#"<circle class="unit-circle" cx="{c}" cy="{c}" r="{RADIUS}" fill="none" stroke="black" stroke-width="1.5"/>"#
        );
    }

    pub fn polygon(&mut self, class: &str, points: &[Complex64], stroke: &str, width: f64) {
        let _ = writeln!(
            self.body,
            r#"<polygon class="{class}" points="{}" fill="none" stroke="{stroke}" stroke-width="{width}"/>"#,
            points_attr(points)
        );
    }

    pub fn line(&mut self, class: &str, a: Complex64, b: Complex64, stroke: &str, width: f64) {
        let (x1, y1) = to_px(a);
        let (x2, y2) = to_px(b);
        let _ = writeln!(
            self.body,
            r#"<line class="{class}" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{stroke}" stroke-width="{width}"/>"#
        );
    }

    pub fn dot(&mut self, class: &str, z: Complex64, r: f64, fill: &str) {
        let (x, y) = to_px(z);
        let _ = writeln!(self.body, r#"<circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="{r}" fill="{fill}"/>"#);
    }

    pub fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

/// Vertex lists of every `<polygon class="{class}">` element, mapped back to the plane.
pub fn read_polygons(svg: &str, class: &str) -> Vec<Vec<Complex64>> {
    let tag = format!(r#"<polygon class="{class}" points=""#);
    svg.lines()
        .filter_map(|l| l.strip_prefix(&tag))
        .map(|rest| {
            let pts = rest.split('"').next().unwrap_or("");
            pts.split(' ')
                .filter_map(|p| {
                    let (x, y) = p.split_once(',')?;
                    let (x, y): (f64, f64) = (x.parse().ok()?, y.parse().ok()?);
                    Some(Complex64::new((x - SIZE / 2.0) / RADIUS, (SIZE / 2.0 - y) / RADIUS))
                })
                .collect()
        })
        .collect()
}

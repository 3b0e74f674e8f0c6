//! JSON value types with fixed 17-significant-digit floats.

use num_complex::Complex64;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::opuc::VerblunskyWord;
use crate::poly::Poly;
use crate::popuc::PonceletFrame;

/// A float written as `{:.16e}`; non-finite values become `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
            raw.serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

/// `[re, im]`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cx(pub Complex64);

impl Serialize for Cx {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [Num(self.0.re), Num(self.0.im)].serialize(s)
    }
}

pub fn nums(v: &[f64]) -> Vec<Num> {
    v.iter().copied().map(Num).collect()
}

pub fn cxs(v: &[Complex64]) -> Vec<Cx> {
    v.iter().copied().map(Cx).collect()
}

pub fn coeffs(p: &Poly) -> Vec<Cx> {
    cxs(p.coeffs())
}

#[derive(Debug, Clone, Serialize)]
pub struct WordJson {
    pub alphas: Vec<Cx>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Cx>,
}

impl From<&VerblunskyWord> for WordJson {
    fn from(w: &VerblunskyWord) -> Self {
        Self { alphas: cxs(w.interior()), lambda: w.terminal().map(Cx) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameJson {
    pub lambda: Cx,
    pub zeros: Vec<Cx>,
    pub weights: Vec<Num>,
    pub christoffel: Vec<Num>,
    pub tangent_points: Vec<Cx>,
}

impl FrameJson {
    pub fn new(f: &PonceletFrame, tangent: &[Complex64]) -> Self {
        Self {
            lambda: Cx(f.lambda()),
            zeros: cxs(f.zeros()),
            weights: nums(f.weights()),
            christoffel: nums(f.christoffel()),
            tangent_points: cxs(tangent),
        }
    }
}

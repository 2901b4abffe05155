use std::io::{self, Write};

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter};

use crate::orbit::OrbitKind;
use crate::slice::SliceTopology;
use crate::stabilizer::StabilizerFamily;

/// Writes every float with 17 significant digits in exponent form, so
/// output is byte-stable and round-trips exactly.
struct Digits17<F>(F);

impl<F: Formatter> Formatter for Digits17<F> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Compact single-line JSON.
pub fn to_compact<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17(CompactFormatter));
    value.serialize(&mut ser).expect("report values serialize");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// Indented JSON.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("report values serialize");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CanonicalOut {
    pub r: f64,
    pub phi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassOut {
    pub kind: OrbitKind,
    pub r0: f64,
    pub epsilon: Option<i8>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RepresentativeOut {
    /// `c` coefficients of `r0 (ω12 + ε ω34)` as computed.
    pub bivector: Option<[f64; 6]>,
    /// Row-major witness `W` with `T̃_W(Ω) = bivector`.
    pub witness: Option<[f64; 16]>,
    /// Row-major adapted basis of the canonical form (columns `e'1..e'4`).
    pub basis_witness: [f64; 16],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SliceOut {
    pub r_queried: f64,
    pub topology: SliceTopology,
    pub boundary: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empirical_min: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilizerSampleOut {
    pub family: StabilizerFamily,
    pub parameter: f64,
    pub residual: f64,
    pub matrix: [f64; 16],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilizerOut {
    pub families: Vec<StabilizerFamily>,
    pub max_residual: f64,
    pub samples: Vec<StabilizerSampleOut>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    /// `max |reconstruct − Ω| / r`.
    pub reconstruction_residual: Option<f64>,
    /// Distance of the computed representative from `r0 (ω12 + ε ω34)`.
    pub normal_form_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

/// One output record. Field order is the serialization order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRecord {
    pub index: u64,
    pub id: Option<String>,
    pub in_light_cone: bool,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub pfaffian: f64,
    pub canonical: Option<CanonicalOut>,
    pub class: Option<ClassOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representative: Option<RepresentativeOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slice: Option<SliceOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilizer: Option<StabilizerOut>,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRecord {
    pub index: u64,
    pub id: Option<String>,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Output {
    Report(Box<ReportRecord>),
    Error(ErrorRecord),
}

pub const TABLE_HEADER: &str = "index  id                cone   kind          r                        phi                      r0";

fn num(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.16e}"))
}

pub fn table_row(out: &Output) -> String {
    match out {
        Output::Report(r) => {
            let kind = r.class.map_or("-".to_string(), |c| format!("{:?}", c.kind));
            format!(
                "{:<6} {:<17} {:<6} {:<13} {:<24} {:<24} {}",
                r.index,
                r.id.as_deref().unwrap_or("-"),
                r.in_light_cone,
                kind,
                num(r.canonical.map(|c| c.r)),
                num(r.canonical.map(|c| c.phi)),
                num(r.class.map(|c| c.r0)),
            )
        }
        Output::Error(e) => format!("{:<6} {:<17} error: {}", e.index, e.id.as_deref().unwrap_or("-"), e.error),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_17_digits() {
        assert_eq!(to_compact(&[0.1_f64, 1.0, -2.5e-300]), "[1.0000000000000001e-1,1.0000000000000000e0,-2.5000000000000000e-300]");
        let s = to_compact(&std::f64::consts::PI);
        assert_eq!(s.parse::<f64>().unwrap(), std::f64::consts::PI);
        assert_eq!(to_compact(&f64::NAN), "null");
    }

    #[test]
    fn key_order_is_stable() {
        let e = Output::Error(ErrorRecord {
            index: 3,
            id: None,
            error: "x".into(),
        });
        assert_eq!(to_compact(&e), r#"{"index":3,"id":null,"error":"x"}"#);
    }
}

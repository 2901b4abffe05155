use serde::Deserialize;

use crate::minkowski::Vec4;
use crate::wedge::{wedge, Bivector};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    #[serde(default)]
    id: Option<String>,
    #[serde(default)]
    c: Option<Vec<f64>>,
    #[serde(default)]
    x: Option<Vec<f64>>,
    #[serde(default)]
    y: Option<Vec<f64>>,
}

/// A parsed input record: either explicit coefficients or a wedged pair.
#[derive(Debug, Clone, PartialEq)]
pub struct InputRecord {
    pub id: Option<String>,
    pub bivector: Bivector,
}

fn fixed<const N: usize>(name: &str, v: Vec<f64>) -> Result<[f64; N], String> {
    let arr: [f64; N] = v
        .try_into()
        .map_err(|v: Vec<f64>| format!("\"{name}\" must have {N} entries, got {}", v.len()))?;
    if arr.iter().any(|x| !x.is_finite()) {
        return Err(format!("\"{name}\" has non-finite entries"));
    }
    Ok(arr)
}

/// Parses one JSON record. Errors carry a human-readable message and, when
/// it could be recovered, the record id.
pub fn parse_record(line: &str) -> Result<InputRecord, (Option<String>, String)> {
    let raw: RawRecord = serde_json::from_str(line).map_err(|e| (None, format!("malformed record: {e}")))?;
    let id = raw.id.clone();
    let fail = |msg: String| (id.clone(), msg);
    let bivector = match (raw.c, raw.x, raw.y) {
        (Some(c), None, None) => Bivector(fixed::<6>("c", c).map_err(fail)?),
        (None, Some(x), Some(y)) => {
            let x = Vec4::from(fixed::<4>("x", x).map_err(fail)?);
            let y = Vec4::from(fixed::<4>("y", y).map_err(fail)?);
            wedge(&x, &y)
        }
        _ => return Err(fail("expected exactly one of \"c\" or the pair \"x\", \"y\"".into())),
    };
    Ok(InputRecord { id, bivector })
}

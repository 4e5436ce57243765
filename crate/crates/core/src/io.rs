//! JSON loading with field paths in errors, canonical output, and the
//! pipeline input document.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::dinv::DTable;
use crate::error::{Error, Result};
use crate::obstruct::LinkFamilySpec;
use crate::parse::{parse_alexander, parse_knot, parse_poly_set};
use crate::polyalg::laurent::{AlexanderPoly, LaurentPoly, PolySet};
use crate::seifert::SeifertMatrix;

/// Largest JSON document accepted, in bytes.
pub const MAX_JSON: usize = 16 << 20;

/// Deserializes `s`, reporting failures with the path of the offending field.
pub fn from_json_str<T: DeserializeOwned>(s: &str) -> Result<T> {
    if s.len() > MAX_JSON {
        return Err(Error::schema("$", format!("document larger than {MAX_JSON} bytes")));
    }
    let de = &mut serde_json::Deserializer::from_str(s);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { "$".to_string() } else { format!("$.{path}") };
        Error::schema(path, e.into_inner().to_string())
    })
}

/// Compact JSON with object keys sorted, followed by no newline. Identical
/// values give identical bytes.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("values serialize");
    serde_json::to_string(&v).expect("values serialize")
}

pub fn canonical_json_pretty<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("values serialize");
    serde_json::to_string_pretty(&v).expect("values serialize")
}

#[derive(Deserialize)]
#[serde(untagged)]
enum KnotField {
    Expr(String),
    Matrix(SeifertMatrix),
    Rows(serde_json::Value),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolyField {
    Expr(String),
    Poly(LaurentPoly),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SetField {
    Expr(String),
    List(Vec<PolyField>),
    Set(PolySet),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PipelineWire {
    m: u64,
    #[serde(rename = "J")]
    j: KnotField,
    #[serde(rename = "J0_alexander", default)]
    j0: Option<PolyField>,
    #[serde(rename = "D", default)]
    d_set: Option<SetField>,
    #[serde(default)]
    dbar: Option<DTable>,
    #[serde(default)]
    d: Option<u64>,
}

/// `{"m", "J", "J0_alexander", "D", "dbar", "d"}`. `J` and the polynomials may
/// be given as expressions; `D` defaults to `{1}` and `J0` to the first
/// element of `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineInput {
    pub spec: LinkFamilySpec,
    pub set: PolySet,
    pub dbar: Option<DTable>,
    pub d: u64,
}

fn poly_field(f: PolyField, path: &str) -> Result<AlexanderPoly> {
    match f {
        PolyField::Expr(s) => parse_alexander(&s),
        PolyField::Poly(p) => AlexanderPoly::new(p.centered()),
    }
    .map_err(|e| Error::schema(path, e.to_string()))
}

impl PipelineInput {
    pub fn from_json(s: &str) -> Result<Self> {
        let w: PipelineWire = from_json_str(s)?;
        Self::from_wire(w)
    }

    pub fn from_value(v: serde_json::Value) -> Result<Self> {
        Self::from_json(&v.to_string())
    }

    fn from_wire(w: PipelineWire) -> Result<Self> {
        let j = match w.j {
            KnotField::Expr(s) => parse_knot(&s).map_err(|e| Error::schema("$.J", e.to_string()))?,
            KnotField::Matrix(m) => m,
            KnotField::Rows(v) => parse_knot(&v.to_string()).map_err(|e| Error::schema("$.J", e.to_string()))?,
        };
        let set = match w.d_set {
            None => PolySet::unit(),
            Some(SetField::Expr(s)) => parse_poly_set(&s).map_err(|e| Error::schema("$.D", e.to_string()))?,
            Some(SetField::Set(s)) => s,
            Some(SetField::List(l)) => {
                let polys = l
                    .into_iter()
                    .enumerate()
                    .map(|(i, p)| poly_field(p, &format!("$.D[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                PolySet::new(polys).map_err(|e| Error::schema("$.D", e.to_string()))?
            }
        };
        let j0 = match w.j0 {
            Some(f) => poly_field(f, "$.J0_alexander")?,
            None => set.polys()[0].clone(),
        };
        let spec = LinkFamilySpec::new(w.m, j, j0).map_err(|e| Error::schema("$.m", e.to_string()))?;
        Ok(PipelineInput {
            spec,
            set,
            dbar: w.dbar,
            d: w.d.unwrap_or(2),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use std::collections::BTreeMap;

    #[test]
    fn schema_errors_carry_paths() {
        let e = from_json_str::<DTable>(r#"{"group":{"invariant_factors":[4,6]},"values":{}}"#).unwrap_err();
        match e {
            Error::Schema { path, .. } => assert_eq!(path, "$.group"),
            other => panic!("{other:?}"),
        }
        let e = PipelineInput::from_json(r#"{"m": 1, "J": "trefoil", "D": ["t^2-3t+1", "t^2+1"]}"#).unwrap_err();
        assert!(matches!(e, Error::Schema { ref path, .. } if path == "$.D[1]"), "{e:?}");
        let e = PipelineInput::from_json(r#"{"m": "x", "J": "trefoil"}"#).unwrap_err();
        assert!(matches!(e, Error::Schema { ref path, .. } if path == "$.m"), "{e:?}");
        assert!(PipelineInput::from_json(r#"{"m": 1, "J": "trefoil", "extra": 0}"#).is_err());
        assert!(PipelineInput::from_json("not json").is_err());
    }

    #[test]
    fn pipeline_input_forms() {
        let a = PipelineInput::from_json(r#"{"m": 1, "J": "trefoil"}"#).unwrap();
        assert_eq!(a.set, PolySet::unit());
        assert_eq!(a.spec.j0_alexander, AlexanderPoly::unknot());
        assert_eq!(a.d, 2);
        let b = PipelineInput::from_json(
            r#"{"m": 1, "J": {"matrix": [[-1,1],[0,-1]]}, "D": {"polys": [{"coeffs": [[0,1]]}]}, "J0_alexander": "1"}"#,
        )
        .unwrap();
        assert_eq!(b.spec.j.entries(), a.spec.j.entries());
        assert_eq!(b.set, a.set);
        let c = PipelineInput::from_json(r#"{"m": 1, "J": "trefoil", "D": "t^2-3t+1"}"#).unwrap();
        assert!(c.spec.j0_alexander.same_up_to_units(&parse_alexander("figure-eight").unwrap()));
    }

    #[test]
    fn canonical_output_is_sorted() {
        let m: BTreeMap<&str, i32> = BTreeMap::from([("b", 1), ("a", 2)]);
        assert_eq!(canonical_json(&m), r#"{"a":2,"b":1}"#);
        let t = crate::dinv::d_lens_table(2, 1, Default::default()).unwrap();
        let s = canonical_json(&t);
        let back: DTable = from_json_str(&s).unwrap();
        assert_eq!(canonical_json(&back), s);
        assert_eq!(back.values[&vec![1]], -q(1) / q(4));
    }
}

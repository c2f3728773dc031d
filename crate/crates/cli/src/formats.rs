//! JSON shapes read and written by the command line, and the coefficient
//! rings a Witt vector or an assignment may live in.

use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use gwitt_core::bispan::{BispanJson, VirtualBispan, VirtualBispanJson};
use gwitt_core::error::{Error, Result};
use gwitt_core::gset::{GSet, GSetJson};
use gwitt_core::poly::{IntPoly, PolyJson};
use gwitt_core::ring::{GRing, Integers, IntegersMod, PolyRing, Ring};
use gwitt_core::subgroups::SubgroupTable;
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn check_group(table: &SubgroupTable, spec: &str) -> Result<()> {
    if spec != table.group().spec() {
        return Err(Error::ObjectMismatch(format!("input is over `{spec}` but --group is `{}`", table.group().spec())));
    }
    Ok(())
}

/// Coefficient rings: `Z`, `Z/n` and polynomials `Z[x]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingSpec {
    Z,
    ZMod(u64),
    Poly,
}

impl FromStr for RingSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "Z" => Ok(RingSpec::Z),
            "Z[x]" | "Z[X]" => Ok(RingSpec::Poly),
            _ => {
                let n = s
                    .strip_prefix("Z/")
                    .and_then(|n| n.parse::<u64>().ok())
                    .filter(|&n| n >= 2)
                    .ok_or_else(|| Error::Parse(format!("unknown ring `{s}` (expected Z, Z/<n> or Z[x])")))?;
                Ok(RingSpec::ZMod(n))
            }
        }
    }
}

impl std::fmt::Display for RingSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RingSpec::Z => write!(f, "Z"),
            RingSpec::ZMod(n) => write!(f, "Z/{n}"),
            RingSpec::Poly => write!(f, "Z[x]"),
        }
    }
}

fn default_ring() -> String {
    "Z".into()
}

/// Reading and writing ring elements as JSON values.
pub trait JsonRing: Ring {
    fn parse(&self, v: &Value) -> Result<Self::Elem>;
    fn emit(&self, e: &Self::Elem) -> Value;
    fn show(&self, e: &Self::Elem) -> String;
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("bad integer `{s}`"))),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().expect("integral JSON number")),
        _ => Err(Error::Parse(format!("expected an integer, found {v}"))),
    }
}

impl JsonRing for Integers {
    fn parse(&self, v: &Value) -> Result<BigInt> {
        parse_int(v)
    }
    fn emit(&self, e: &BigInt) -> Value {
        Value::String(e.to_string())
    }
    fn show(&self, e: &BigInt) -> String {
        e.to_string()
    }
}

impl JsonRing for IntegersMod {
    fn parse(&self, v: &Value) -> Result<BigInt> {
        Ok(self.from_int(&parse_int(v)?))
    }
    fn emit(&self, e: &BigInt) -> Value {
        Value::String(e.to_string())
    }
    fn show(&self, e: &BigInt) -> String {
        e.to_string()
    }
}

impl JsonRing for PolyRing {
    fn parse(&self, v: &Value) -> Result<IntPoly> {
        match v {
            Value::Array(_) => {
                let j: PolyJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
                IntPoly::try_from(&j)
            }
            _ => Ok(IntPoly::constant(parse_int(v)?)),
        }
    }
    fn emit(&self, e: &IntPoly) -> Value {
        serde_json::to_value(PolyJson::from(e)).expect("polynomials serialize")
    }
    fn show(&self, e: &IntPoly) -> String {
        e.to_string()
    }
}

/// A Witt vector: one coordinate per subgroup class, in class order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WittVectorJson {
    pub group_spec: String,
    #[serde(default = "default_ring")]
    pub ring: String,
    pub coords: Vec<Value>,
}

/// Ghost components, one per subgroup class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GhostJson {
    pub group_spec: String,
    pub ring: String,
    pub ghost: Vec<Value>,
}

/// Values of an equivariant map `X → R` or of a bispan evaluated on one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssignmentJson {
    #[serde(default = "default_ring")]
    pub ring: String,
    pub values: Vec<Value>,
}

/// A list of polynomials in `ℤ[X]`, variable `i` being the point `i` of `X`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TeichmullerJson {
    pub group_spec: String,
    pub x: GSetJson,
    pub coords: Vec<PolyJson>,
}

/// Either a combination of canonical classes or a single representative.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum BispanInput {
    Virtual(VirtualBispanJson),
    Single(BispanJson),
}

pub fn load_bispan(path: &Path, table: &Arc<SubgroupTable>) -> Result<VirtualBispan> {
    match read_json::<BispanInput>(path)? {
        BispanInput::Virtual(v) => {
            check_group(table, &v.group_spec)?;
            VirtualBispan::from_json(&v, table.clone())
        }
        BispanInput::Single(s) => {
            check_group(table, &s.X.group_spec)?;
            let x = Arc::new(GSet::from_json(&s.X, table)?);
            let y = Arc::new(GSet::from_json(&s.Y, table)?);
            let rep = gwitt_core::bispan::Bispan::from_json(&s, table, &x, &y)?;
            let mut out = VirtualBispan::zero(table.clone(), x, y);
            out.add_bispan(&rep, &BigInt::from(1))?;
            Ok(out)
        }
    }
}

pub fn parse_all<R: JsonRing>(ring: &R, vals: &[Value]) -> Result<Vec<R::Elem>> {
    vals.iter().map(|v| ring.parse(v)).collect()
}

pub fn emit_all<R: JsonRing>(ring: &R, vals: &[R::Elem]) -> Vec<Value> {
    vals.iter().map(|v| ring.emit(v)).collect()
}

/// Marker so generic code can require both traits at once.
pub trait JsonGRing: JsonRing + GRing {}
impl<T: JsonRing + GRing> JsonGRing for T {}

//! JSON forms: a bispan is four G-sets (as orbit types) and three point
//! arrays in the numbering those orbit types realize.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gset::{gset_iso, GMap, GSet, GSetJson};
use crate::subgroups::SubgroupTable;

use super::{Bispan, VirtualBispan};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct BispanJson {
    pub X: GSetJson,
    pub A: GSetJson,
    pub B: GSetJson,
    pub Y: GSetJson,
    pub d: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualTermJson {
    pub bispan: BispanJson,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualBispanJson {
    pub group_spec: String,
    pub source: GSetJson,
    pub target: GSetJson,
    pub terms: Vec<VirtualTermJson>,
}

/// The G-set described by `set`'s JSON, and a bijection from `set` onto it.
fn standard_form(set: &GSet, table: &SubgroupTable) -> Result<(GSetJson, Vec<usize>)> {
    let json = set.to_json(table);
    let std = GSet::from_json(&json, table)?;
    let iso = gset_iso(set, &std).ok_or_else(|| Error::InvalidGSet("no standard numbering".into()))?;
    Ok((json, iso))
}

impl Bispan {
    pub fn to_json(&self, table: &SubgroupTable) -> Result<BispanJson> {
        let (xj, xm) = standard_form(self.source(), table)?;
        let (aj, am) = standard_form(self.a_set(), table)?;
        let (bj, bm) = standard_form(self.b_set(), table)?;
        let (yj, ym) = standard_form(self.target(), table)?;
        let relabel = |f: &GMap, src: &[usize], dst: &[usize]| -> Vec<usize> {
            let mut out = vec![0; src.len()];
            for (p, &q) in src.iter().enumerate() {
                out[q] = dst[f.apply(p)];
            }
            out
        };
        Ok(BispanJson {
            d: relabel(self.d(), &am, &xm),
            b: relabel(self.b(), &am, &bm),
            c: relabel(self.c(), &bm, &ym),
            X: xj,
            A: aj,
            B: bj,
            Y: yj,
        })
    }

    /// Rebuilds a bispan over `x` and `y`, which must realize the JSON's `X`, `Y`.
    pub fn from_json(json: &BispanJson, table: &SubgroupTable, x: &Arc<GSet>, y: &Arc<GSet>) -> Result<Bispan> {
        let a = Arc::new(GSet::from_json(&json.A, table)?);
        let b = Arc::new(GSet::from_json(&json.B, table)?);
        if x.to_json(table) != json.X || y.to_json(table) != json.Y {
            return Err(Error::ObjectMismatch("bispan endpoints disagree with the enclosing hom-set".into()));
        }
        let d = GMap::new(a.clone(), x.clone(), json.d.clone())?;
        let bm = GMap::new(a, b.clone(), json.b.clone())?;
        let c = GMap::new(b, y.clone(), json.c.clone())?;
        Bispan::new(d, bm, c)
    }
}

impl VirtualBispan {
    /// Serializes with `source` and `target` renumbered to their standard form.
    pub fn to_json(&self) -> Result<VirtualBispanJson> {
        let table = self.table();
        let mut terms = Vec::new();
        for (k, c) in self.terms() {
            terms.push(VirtualTermJson { bispan: self.realize(k)?.to_json(table)?, coeff: c.to_string() });
        }
        Ok(VirtualBispanJson {
            group_spec: table.group().spec().to_string(),
            source: self.source().to_json(table),
            target: self.target().to_json(table),
            terms,
        })
    }

    pub fn from_json(json: &VirtualBispanJson, table: Arc<SubgroupTable>) -> Result<VirtualBispan> {
        if json.group_spec != table.group().spec() {
            return Err(Error::ObjectMismatch(format!(
                "bispan over {} given for group {}",
                json.group_spec,
                table.group().spec()
            )));
        }
        let x = Arc::new(GSet::from_json(&json.source, &table)?);
        let y = Arc::new(GSet::from_json(&json.target, &table)?);
        let mut out = VirtualBispan::zero(table.clone(), x.clone(), y.clone());
        for t in &json.terms {
            let c: BigInt = t.coeff.parse().map_err(|_| Error::Parse(format!("bad coefficient {:?}", t.coeff)))?;
            let s = Bispan::from_json(&t.bispan, &table, &x, &y)?;
            out.add_bispan(&s, &c)?;
        }
        Ok(out)
    }
}

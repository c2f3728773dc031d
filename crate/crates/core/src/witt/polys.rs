//! Universal Witt polynomials by ghost inversion over `ℤ[a_V, b_V]`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{IntPoly, PolyJson};
use crate::ring::{PolyRing, Ring};
use crate::subgroups::SubgroupTable;

use super::{ghost, ghost_invert};

/// `s_U`, `p_U` in `ℤ[a_0..a_{k-1}, b_0..b_{k-1}]` (variable `i` is `a_i`,
/// variable `k + i` is `b_i`) and `m_U` in `ℤ[a_0..a_{k-1}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittPolySet {
    pub num_classes: usize,
    pub s: Vec<IntPoly>,
    pub p: Vec<IntPoly>,
    pub m: Vec<IntPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittPolySetJson {
    pub group_spec: String,
    pub labels: Vec<String>,
    pub s: Vec<PolyJson>,
    pub p: Vec<PolyJson>,
    pub m: Vec<PolyJson>,
}

impl WittPolySet {
    /// Variable names `a_<label>` and `b_<label>`.
    pub fn variable_name(table: &SubgroupTable, i: usize) -> String {
        let k = table.num_classes();
        if i < k {
            format!("a_{}", table.label(i))
        } else {
            format!("b_{}", table.label(i - k))
        }
    }

    pub fn to_json(&self, table: &SubgroupTable) -> WittPolySetJson {
        let conv = |v: &[IntPoly]| v.iter().map(PolyJson::from).collect();
        WittPolySetJson {
            group_spec: table.group().spec().to_string(),
            labels: table.labels().to_vec(),
            s: conv(&self.s),
            p: conv(&self.p),
            m: conv(&self.m),
        }
    }

    pub fn from_json(json: &WittPolySetJson, table: &SubgroupTable) -> Result<Self> {
        let k = table.num_classes();
        if json.s.len() != k || json.p.len() != k || json.m.len() != k {
            return Err(Error::Parse("polynomial families do not match the class count".into()));
        }
        let conv = |v: &[PolyJson]| v.iter().map(IntPoly::try_from).collect::<Result<Vec<_>>>();
        Ok(WittPolySet { num_classes: k, s: conv(&json.s)?, p: conv(&json.p)?, m: conv(&json.m)? })
    }
}

/// Computes the polynomials without touching the cache.
pub fn universal_polys_uncached(table: &SubgroupTable) -> Result<WittPolySet> {
    let k = table.num_classes();
    let ring = PolyRing::new();
    let a: Vec<IntPoly> = (0..k).map(IntPoly::var).collect();
    let b: Vec<IntPoly> = (k..2 * k).map(IntPoly::var).collect();
    let ga = ghost(table, &ring, &a);
    let gb = ghost(table, &ring, &b);
    let sum: Vec<IntPoly> = ga.iter().zip(&gb).map(|(x, y)| ring.add(x, y)).collect();
    let prod: Vec<IntPoly> = ga.iter().zip(&gb).map(|(x, y)| ring.mul(x, y)).collect();
    let neg: Vec<IntPoly> = ga.iter().map(|x| ring.neg(x)).collect();
    Ok(WittPolySet {
        num_classes: k,
        s: ghost_invert(table, &ring, &sum)?,
        p: ghost_invert(table, &ring, &prod)?,
        m: ghost_invert(table, &ring, &neg)?,
    })
}

type Cache = Mutex<HashMap<Vec<Vec<usize>>, Arc<WittPolySet>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The Witt polynomials of the table's group, computed once per group.
pub fn universal_polys(table: &SubgroupTable) -> Result<Arc<WittPolySet>> {
    let key = table.group().table();
    if let Some(hit) = cache().lock().expect("cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let polys = Arc::new(universal_polys_uncached(table)?);
    cache().lock().expect("cache lock").entry(key).or_insert(polys.clone());
    Ok(polys)
}

/// Seeds or clears the in-memory cache; the CLI uses this to load a disk cache.
pub fn clear_poly_cache() {
    cache().lock().expect("cache lock").clear();
}

pub(crate) fn insert_cached(table: &SubgroupTable, polys: WittPolySet) -> Arc<WittPolySet> {
    let polys = Arc::new(polys);
    cache().lock().expect("cache lock").entry(table.group().table()).or_insert(polys).clone()
}

impl WittPolySet {
    /// Installs externally loaded polynomials (e.g. from a disk cache) for `table`.
    pub fn install(self, table: &SubgroupTable) -> Arc<WittPolySet> {
        insert_cached(table, self)
    }
}

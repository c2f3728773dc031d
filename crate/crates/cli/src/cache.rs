//! On-disk cache of the universal polynomials, one JSON file per group,
//! enabled by setting `WITT_CACHE_DIR`.

use std::path::PathBuf;
use std::sync::Arc;

use gwitt_core::error::{Error, Result};
use gwitt_core::subgroups::SubgroupTable;
use gwitt_core::witt::{universal_polys, WittPolySet, WittPolySetJson};

pub const CACHE_ENV: &str = "WITT_CACHE_DIR";

fn cache_file(dir: &str, spec: &str) -> PathBuf {
    let name: String = spec.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    PathBuf::from(dir).join(format!("{name}.json"))
}

fn load(path: &PathBuf, table: &SubgroupTable) -> Option<WittPolySet> {
    let text = std::fs::read_to_string(path).ok()?;
    let json: WittPolySetJson = serde_json::from_str(&text).ok()?;
    // different specs can share a file name; only trust an exact match
    if json.group_spec != table.group().spec() || json.labels != table.labels() {
        return None;
    }
    WittPolySet::from_json(&json, table).ok()
}

fn store(path: &PathBuf, table: &SubgroupTable, polys: &WittPolySet) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(io)?;
    }
    let text = serde_json::to_string(&polys.to_json(table)).expect("polynomials serialize");
    // write then rename so concurrent readers never see a partial file
    let tmp = path.with_extension(format!("json.{}.tmp", std::process::id()));
    std::fs::write(&tmp, text).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

/// The universal polynomials for `table`, going through the disk cache when
/// one is configured.
pub fn polys(table: &SubgroupTable) -> Result<Arc<WittPolySet>> {
    let dir = match std::env::var(CACHE_ENV) {
        Ok(d) if !d.is_empty() => d,
        _ => return universal_polys(table),
    };
    let path = cache_file(&dir, table.group().spec());
    if let Some(hit) = load(&path, table) {
        return Ok(hit.install(table));
    }
    let polys = universal_polys(table)?;
    store(&path, table, &polys)?;
    Ok(polys)
}

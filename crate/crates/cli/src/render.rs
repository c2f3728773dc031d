//! Human-readable output. Classes are named by orbit, e.g. `S3/C2`.

use gwitt_core::bispan::VirtualBispan;
use gwitt_core::gset::GSet;
use gwitt_core::subgroups::SubgroupTable;
use gwitt_core::witt::WittPolySet;

pub fn orbit_label(table: &SubgroupTable, class: usize) -> String {
    format!("{}/{}", table.group().spec(), table.label(class))
}

fn width(items: impl Iterator<Item = usize>) -> usize {
    items.max().unwrap_or(0)
}

pub fn marks(table: &SubgroupTable) -> String {
    let k = table.num_classes();
    let names: Vec<String> = (0..k).map(|c| orbit_label(table, c)).collect();
    let w = width(names.iter().map(String::len)).max(4);
    let mut out = format!("{:w$}", "");
    for u in 0..k {
        out.push_str(&format!(" {:>w$}", table.label(u)));
    }
    out.push('\n');
    for (v, name) in names.iter().enumerate() {
        out.push_str(&format!("{name:w$}"));
        for u in 0..k {
            out.push_str(&format!(" {:>w$}", table.mark(v, u)));
        }
        out.push('\n');
    }
    out
}

pub fn subgroups(table: &SubgroupTable) -> String {
    let mut out = String::from("class label order conjugates normalizer_index representative\n");
    for c in 0..table.num_classes() {
        out.push_str(&format!(
            "{c} {} {} {} {} {:?}\n",
            table.label(c),
            table.class_order(c),
            table.class_members(c).len(),
            table.normalizer_index(c),
            table.rep(c).elements()
        ));
    }
    out
}

pub fn witt_polys(table: &SubgroupTable, polys: &WittPolySet) -> String {
    let name = |i: usize| WittPolySet::variable_name(table, i);
    let mut out = String::new();
    for (family, list) in [("s", &polys.s), ("p", &polys.p), ("m", &polys.m)] {
        for (u, poly) in list.iter().enumerate() {
            out.push_str(&format!("{family}[{}] = {}\n", orbit_label(table, u), poly.render(&name)));
        }
    }
    out
}

pub fn labelled(table: &SubgroupTable, values: &[String]) -> String {
    let names: Vec<String> = (0..values.len()).map(|c| orbit_label(table, c)).collect();
    let w = width(names.iter().map(String::len));
    names.iter().zip(values).map(|(n, v)| format!("{n:w$}  {v}\n")).collect()
}

pub fn gset(table: &SubgroupTable, x: &GSet) -> String {
    let parts: Vec<String> = x.orbit_type(table).iter().map(|&c| orbit_label(table, c)).collect();
    if parts.is_empty() {
        "∅".into()
    } else {
        parts.join(" ⊔ ")
    }
}

pub fn bispan(u: &VirtualBispan) -> String {
    let table = u.table();
    let mut out = format!("U({}, {})\n", gset(table, u.source()), gset(table, u.target()));
    if u.num_terms() == 0 {
        out.push_str("0\n");
    }
    for (k, c) in u.terms() {
        let fibre: Vec<String> = k
            .fiber
            .iter()
            .map(|(s, x)| {
                let v = table.class_of(*s).map(|v| table.label(v).to_string()).unwrap_or_else(|_| format!("{s:?}"));
                format!("{}/{v}→{x}", table.label(k.class))
            })
            .collect();
        out.push_str(&format!(
            "{c} · [B = {}, c(b) = {}, fibre {{{}}}]\n",
            orbit_label(table, k.class),
            k.target_point,
            fibre.join(", ")
        ));
    }
    out
}

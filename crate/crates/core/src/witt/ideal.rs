//! Generators of the ideal `I_G(R)` of twisted product differences.

use crate::error::{Error, Result};
use crate::ring::GRing;
use crate::subgroups::SubgroupTable;

/// Data for one class `K`: elements `g_1..g_n` of `N_G(K)` lying in one coset
/// `g_1 K`, and factors `a_1..a_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealEntry<E> {
    pub elements: Vec<usize>,
    pub factors: Vec<E>,
}

/// One [`IdealEntry`] per conjugacy class, in class order.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealWitness<E> {
    pub entries: Vec<IdealEntry<E>>,
}

/// `(a, b)` with `a_K = a_1⋯a_n` and `b_K = (g_1 a_1)⋯(g_n a_n)`.
pub fn ideal_generator<R: GRing>(
    table: &SubgroupTable,
    ring: &R,
    witness: &IdealWitness<R::Elem>,
) -> Result<(Vec<R::Elem>, Vec<R::Elem>)> {
    let group = table.group();
    if witness.entries.len() != table.num_classes() {
        return Err(Error::Witness(format!("{} entries for {} classes", witness.entries.len(), table.num_classes())));
    }
    let mut a = Vec::with_capacity(table.num_classes());
    let mut b = Vec::with_capacity(table.num_classes());
    for (class, entry) in witness.entries.iter().enumerate() {
        let k = table.rep(class);
        let n = entry.elements.len();
        if n == 0 || entry.factors.len() != n {
            return Err(Error::Witness(format!("class {}: need n >= 1 elements and n factors", table.label(class))));
        }
        let normalizer = group.normalizer(k);
        let g1_inv = group.inv(entry.elements[0]);
        for &g in &entry.elements {
            if g >= group.order() || !normalizer.contains(g) {
                return Err(Error::Witness(format!("element {g} does not normalize {}", table.label(class))));
            }
            if !k.contains(group.mul(g1_inv, g)) {
                return Err(Error::Witness(format!("elements for {} lie in different cosets", table.label(class))));
            }
        }
        let mut ak = ring.one();
        let mut bk = ring.one();
        for (&g, f) in entry.elements.iter().zip(&entry.factors) {
            ak = ring.mul(&ak, f);
            bk = ring.mul(&bk, &ring.act(g, f));
        }
        a.push(ak);
        b.push(bk);
    }
    Ok((a, b))
}

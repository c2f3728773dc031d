//! Witt vectors `W_G(R)`: ghost components, universal Witt polynomials and
//! ring operations over arbitrary coefficient rings.
//!
//! Coordinates are indexed by conjugacy classes of subgroups in the order of
//! the [`SubgroupTable`], so `G` comes first and `e` last.

mod checks;
mod ideal;
mod polys;
mod xi;

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{ExactDivision, Ring};
use crate::subgroups::SubgroupTable;

pub use checks::{lemma43_holds, lemma45_holds, lemma47_holds};
pub use ideal::{ideal_generator, IdealEntry, IdealWitness};
pub use polys::{clear_poly_cache, universal_polys, universal_polys_uncached, WittPolySet, WittPolySetJson};
pub use xi::{m_polys_via_xi, p_polys_via_orbits, s_polys_via_xi, xi_polys, xi_reduce, XiTerm};

/// `φ_U(a) = Σ_{U ⪯ V} |(G/V)^U| · a_V^{(V:U)}` for every class `U`.
pub fn ghost<R: Ring>(table: &SubgroupTable, ring: &R, coords: &[R::Elem]) -> Vec<R::Elem> {
    let k = table.num_classes();
    assert_eq!(coords.len(), k, "one coordinate per class");
    (0..k)
        .map(|u| {
            let mut acc = ring.zero();
            for v in 0..k {
                if let Some(idx) = table.rel_index(v, u) {
                    let term = ring.pow(&coords[v], idx as u64);
                    acc = ring.add(&acc, &ring.scale_int(&BigInt::from(table.mark(v, u)), &term));
                }
            }
            acc
        })
        .collect()
}

/// Solves `ghost(x) = targets` by descending through the class order.
pub fn ghost_invert<R: ExactDivision>(table: &SubgroupTable, ring: &R, targets: &[R::Elem]) -> Result<Vec<R::Elem>> {
    let k = table.num_classes();
    if targets.len() != k {
        return Err(Error::ObjectMismatch(format!("{} ghost components for {k} classes", targets.len())));
    }
    let mut x: Vec<R::Elem> = Vec::with_capacity(k);
    for u in 0..k {
        let mut rest = targets[u].clone();
        for (v, xv) in x.iter().enumerate() {
            if let Some(idx) = table.rel_index(v, u) {
                let term = ring.scale_int(&BigInt::from(table.mark(v, u)), &ring.pow(xv, idx as u64));
                rest = ring.sub(&rest, &term);
            }
        }
        let diag = BigInt::from(table.mark(u, u));
        let xu = ring.div_int(&rest, &diag).ok_or_else(|| {
            Error::Divisibility(format!("ghost component at {} is not divisible by {diag}", table.label(u)))
        })?;
        x.push(xu);
    }
    Ok(x)
}

/// A Witt vector: one coordinate per conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct WittVector<E> {
    table: Arc<SubgroupTable>,
    coords: Vec<E>,
}

impl<E: PartialEq> PartialEq for WittVector<E> {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.table.group() == other.table.group()
    }
}

impl<E: Clone + PartialEq + std::fmt::Debug> WittVector<E> {
    pub fn new(table: Arc<SubgroupTable>, coords: Vec<E>) -> Result<Self> {
        if coords.len() != table.num_classes() {
            return Err(Error::ObjectMismatch(format!(
                "{} coordinates for {} classes",
                coords.len(),
                table.num_classes()
            )));
        }
        Ok(WittVector { table, coords })
    }

    pub fn zero<R: Ring<Elem = E>>(table: Arc<SubgroupTable>, ring: &R) -> Self {
        let coords = vec![ring.zero(); table.num_classes()];
        WittVector { table, coords }
    }

    /// The unit: `1` at `G`, `0` elsewhere (all ghost components are `1`).
    pub fn one<R: Ring<Elem = E>>(table: Arc<SubgroupTable>, ring: &R) -> Self {
        let mut coords = vec![ring.zero(); table.num_classes()];
        coords[0] = ring.one();
        WittVector { table, coords }
    }

    /// The vector with `1` at class `u` and `0` elsewhere.
    pub fn indicator<R: Ring<Elem = E>>(table: Arc<SubgroupTable>, ring: &R, u: usize) -> Self {
        let mut coords = vec![ring.zero(); table.num_classes()];
        coords[u] = ring.one();
        WittVector { table, coords }
    }

    pub fn table(&self) -> &Arc<SubgroupTable> {
        &self.table
    }

    pub fn coords(&self) -> &[E] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<E> {
        self.coords
    }

    fn check_same_group(&self, other: &Self) -> Result<()> {
        if self.table.group() != other.table.group() {
            return Err(Error::ObjectMismatch("Witt vectors over different groups".into()));
        }
        Ok(())
    }

    pub fn ghost<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<E> {
        ghost(&self.table, ring, &self.coords)
    }

    pub fn from_ghost<R: ExactDivision<Elem = E>>(table: Arc<SubgroupTable>, ring: &R, targets: &[E]) -> Result<Self> {
        let coords = ghost_invert(&table, ring, targets)?;
        Ok(WittVector { table, coords })
    }

    fn binary<R: Ring<Elem = E>>(&self, other: &Self, ring: &R, polys: &[crate::poly::IntPoly]) -> Result<Self> {
        self.check_same_group(other)?;
        let mut values = self.coords.clone();
        values.extend(other.coords.iter().cloned());
        let coords = polys.iter().map(|p| ring.eval_poly(p, &values)).collect();
        Ok(WittVector { table: self.table.clone(), coords })
    }

    /// `a ⊞ b`, coordinatewise through the universal `s` polynomials.
    pub fn add<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Result<Self> {
        let polys = universal_polys(&self.table)?;
        self.binary(other, ring, &polys.s)
    }

    /// `a ⊠ b` through the universal `p` polynomials.
    pub fn mul<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Result<Self> {
        let polys = universal_polys(&self.table)?;
        self.binary(other, ring, &polys.p)
    }

    /// `⊟ a` through the universal `m` polynomials.
    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Result<Self> {
        let polys = universal_polys(&self.table)?;
        let coords = polys.m.iter().map(|p| ring.eval_poly(p, &self.coords)).collect();
        Ok(WittVector { table: self.table.clone(), coords })
    }

    pub fn sub<R: Ring<Elem = E>>(&self, other: &Self, ring: &R) -> Result<Self> {
        self.add(&other.neg(ring)?, ring)
    }

    /// `W(h)`: applies a coefficient map coordinatewise.
    pub fn map<F, T>(&self, f: F) -> WittVector<T>
    where
        F: Fn(&E) -> T,
    {
        WittVector { table: self.table.clone(), coords: self.coords.iter().map(f).collect() }
    }
}

/// `restr`: the map `W_G(R) → W_{G'}(R)` along a surjection `γ: G → G'`,
/// `b_V = a_{γ⁻¹(V)}`. `gamma[g]` is the image of `g`.
pub fn restr_surjection<E: Clone>(
    source: &SubgroupTable,
    target: &SubgroupTable,
    gamma: &[usize],
    coords: &[E],
) -> Result<Vec<E>> {
    let g = source.group();
    let h = target.group();
    if gamma.len() != g.order() || !g.is_homomorphism(h, gamma) {
        return Err(Error::Homomorphism("element map is not a homomorphism".into()));
    }
    let mut hit = vec![false; h.order()];
    for &y in gamma {
        hit[y] = true;
    }
    if hit.iter().any(|&b| !b) {
        return Err(Error::Homomorphism("homomorphism is not surjective".into()));
    }
    if coords.len() != source.num_classes() {
        return Err(Error::ObjectMismatch("coordinate count does not match the source group".into()));
    }
    (0..target.num_classes())
        .map(|v| {
            let rep = target.rep(v);
            let pre = crate::group::Subgroup::from_elements(g.elements().filter(|&x| rep.contains(gamma[x])));
            Ok(coords[source.class_of(pre)?].clone())
        })
        .collect()
}

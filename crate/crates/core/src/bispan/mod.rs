//! Bispans `X ← A → B → Y` and Tambara's category built from them.
//!
//! [`Bispan`] is a concrete representative. Equivalence classes with
//! transitive `B` are [`CanonicalBispan`] keys, and [`VirtualBispan`] holds
//! integer combinations of those keys, i.e. elements of the group completion.

mod canonical;
mod eval;
mod json;
mod virtual_bispan;

use std::sync::Arc;

pub use canonical::{bispans_equivalent, CanonicalBispan};
pub use eval::{evaluate, evaluate_bispan};
pub use json::{BispanJson, VirtualBispanJson, VirtualTermJson};
pub use virtual_bispan::{compose, gen_n, gen_r, gen_t, VirtualBispan};

use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::gset::{coset_numbering, dependent_product, pullback, DependentProduct, GMap, GSet};

pub(crate) fn same_gset(a: &Arc<GSet>, b: &Arc<GSet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Fibres of `A → B` and each point's position in its fibre.
pub(crate) struct MiddleIndex {
    fibers: Vec<Vec<usize>>,
    pos: Vec<usize>,
}

impl MiddleIndex {
    pub(crate) fn new(s: &Bispan) -> Self {
        let fibers = s.b.fibers();
        let mut pos = vec![0; s.a_set().size()];
        for fib in &fibers {
            for (i, &a) in fib.iter().enumerate() {
                pos[a] = i;
            }
        }
        MiddleIndex { fibers, pos }
    }
}

/// A representative `X ←d A →b B →c Y`.
#[derive(Clone, Debug)]
pub struct Bispan {
    d: GMap,
    b: GMap,
    c: GMap,
}

impl Bispan {
    pub fn new(d: GMap, b: GMap, c: GMap) -> Result<Self> {
        if !same_gset(d.source(), b.source()) {
            return Err(Error::ObjectMismatch("d and b must share their source A".into()));
        }
        if !same_gset(b.target(), c.source()) {
            return Err(Error::ObjectMismatch("b must land in the source of c".into()));
        }
        if d.source().group() != c.target().group() || d.target().group() != d.source().group() {
            return Err(Error::ObjectMismatch("bispan legs over different groups".into()));
        }
        Ok(Bispan { d, b, c })
    }

    pub(crate) fn new_unchecked(d: GMap, b: GMap, c: GMap) -> Self {
        Bispan { d, b, c }
    }

    pub fn source(&self) -> &Arc<GSet> {
        self.d.target()
    }

    pub fn target(&self) -> &Arc<GSet> {
        self.c.target()
    }

    pub fn a_set(&self) -> &Arc<GSet> {
        self.d.source()
    }

    pub fn b_set(&self) -> &Arc<GSet> {
        self.c.source()
    }

    pub fn d(&self) -> &GMap {
        &self.d
    }

    pub fn b(&self) -> &GMap {
        &self.b
    }

    pub fn c(&self) -> &GMap {
        &self.c
    }

    pub fn identity(x: Arc<GSet>) -> Self {
        let id = GMap::identity(x);
        Bispan { d: id.clone(), b: id.clone(), c: id }
    }

    /// `[X ← ∅ → ∅ → Y]`.
    pub fn zero(x: Arc<GSet>, y: Arc<GSet>) -> Self {
        let e = Arc::new(GSet::empty(x.group().clone()));
        Bispan {
            d: GMap::new_unchecked(e.clone(), x, vec![]),
            b: GMap::identity(e.clone()),
            c: GMap::new_unchecked(e, y, vec![]),
        }
    }

    /// `[X ← ∅ → Y → Y]`.
    pub fn unit(x: Arc<GSet>, y: Arc<GSet>) -> Self {
        let e = Arc::new(GSet::empty(x.group().clone()));
        Bispan {
            d: GMap::new_unchecked(e.clone(), x, vec![]),
            b: GMap::new_unchecked(e, y.clone(), vec![]),
            c: GMap::identity(y),
        }
    }

    /// `R_f = [Y ←f X = X = X]`.
    pub fn restriction(f: &GMap) -> Self {
        let id = GMap::identity(f.source().clone());
        Bispan { d: f.clone(), b: id.clone(), c: id }
    }

    /// `T_f = [X = X = X →f Y]`.
    pub fn transfer(f: &GMap) -> Self {
        let id = GMap::identity(f.source().clone());
        Bispan { d: id.clone(), b: id, c: f.clone() }
    }

    /// `N_f = [X = X →f Y = Y]`.
    pub fn norm(f: &GMap) -> Self {
        Bispan { d: GMap::identity(f.source().clone()), b: f.clone(), c: GMap::identity(f.target().clone()) }
    }

    /// Disjoint union of representatives with common source and target.
    pub fn sum(parts: &[&Bispan]) -> Result<Bispan> {
        let first = parts.first().ok_or_else(|| Error::ObjectMismatch("empty sum".into()))?;
        let x = first.source().clone();
        let y = first.target().clone();
        for p in parts {
            if !same_gset(p.source(), &x) || !same_gset(p.target(), &y) {
                return Err(Error::ObjectMismatch("summands have different endpoints".into()));
            }
        }
        let group = x.group().clone();
        let a_parts: Vec<&GSet> = parts.iter().map(|p| p.a_set().as_ref()).collect();
        let b_parts: Vec<&GSet> = parts.iter().map(|p| p.b_set().as_ref()).collect();
        let (a, a_off) = GSet::coproduct(group.clone(), &a_parts);
        let (b, b_off) = GSet::coproduct(group, &b_parts);
        let (a, b) = (Arc::new(a), Arc::new(b));
        let mut d = Vec::with_capacity(a.size());
        let mut bm = Vec::with_capacity(a.size());
        let mut c = Vec::with_capacity(b.size());
        for (i, p) in parts.iter().enumerate() {
            d.extend_from_slice(p.d.map());
            bm.extend(p.b.map().iter().map(|&v| v + b_off[i]));
            c.extend_from_slice(p.c.map());
            debug_assert_eq!(d.len(), a_off.get(i + 1).copied().unwrap_or(a.size()));
        }
        Ok(Bispan {
            d: GMap::new_unchecked(a.clone(), x, d),
            b: GMap::new_unchecked(a, b.clone(), bm),
            c: GMap::new_unchecked(b, y, c),
        })
    }

    /// `[X ← B×_Y A' ⊔ A×_Y B' → B×_Y B' → Y]`.
    pub fn product(&self, other: &Bispan) -> Result<Bispan> {
        if !same_gset(self.source(), other.source()) || !same_gset(self.target(), other.target()) {
            return Err(Error::ObjectMismatch("factors have different endpoints".into()));
        }
        let bb = pullback(&self.c, &other.c)?;
        let left = pullback(&self.b, &bb.to_left)?;
        let right = pullback(&other.b, &bb.to_right)?;
        let group = self.source().group().clone();
        let (a, _) = GSet::coproduct(group, &[&right.set, &left.set]);
        let a = Arc::new(a);
        let mut d: Vec<usize> = right.pairs.iter().map(|&(a2, _)| other.d.apply(a2)).collect();
        d.extend(left.pairs.iter().map(|&(a1, _)| self.d.apply(a1)));
        let mut bm: Vec<usize> = right.pairs.iter().map(|&(_, q)| q).collect();
        bm.extend(left.pairs.iter().map(|&(_, q)| q));
        let c: Vec<usize> = bb.pairs.iter().map(|&(b1, _)| self.c.apply(b1)).collect();
        Ok(Bispan {
            d: GMap::new_unchecked(a.clone(), self.source().clone(), d),
            b: GMap::new_unchecked(a, bb.set.clone(), bm),
            c: GMap::new_unchecked(bb.set, self.target().clone(), c),
        })
    }

    /// `R_h ∘ self` for `h: Y' → Y`.
    pub fn restrict_target(&self, h: &GMap) -> Result<Bispan> {
        let b1 = pullback(&self.c, h)?;
        let a1 = pullback(&self.b, &b1.to_left)?;
        let d = a1.to_left.map().iter().map(|&a| self.d.apply(a)).collect();
        Ok(Bispan { d: GMap::new_unchecked(a1.set.clone(), self.source().clone(), d), b: a1.to_right, c: b1.to_right })
    }

    /// `T_f ∘ self` for `f: Y → Z`.
    pub fn transfer_target(&self, f: &GMap) -> Result<Bispan> {
        Ok(Bispan { d: self.d.clone(), b: self.b.clone(), c: f.after(&self.c)? })
    }

    /// `N_f ∘ self` for `f: Y → Z`, via the exponential diagram of `c` along `f`.
    pub fn norm_target(&self, f: &GMap) -> Result<Bispan> {
        Ok(self.norm_parts(f)?.0)
    }

    pub(crate) fn norm_parts(&self, f: &GMap) -> Result<(Bispan, DependentProduct)> {
        let dp = dependent_product(&self.c, f)?;
        let a2 = pullback(&self.b, &dp.eval)?;
        let d = a2.to_left.map().iter().map(|&a| self.d.apply(a)).collect();
        let b = a2.to_right.map().iter().map(|&q| dp.proj.apply(q)).collect();
        let bispan = Bispan {
            d: GMap::new_unchecked(a2.set.clone(), self.source().clone(), d),
            b: GMap::new_unchecked(a2.set, dp.pi.clone(), b),
            c: dp.pi_map.clone(),
        };
        Ok((bispan, dp))
    }

    /// Replaces `B` by `B''` along `h: B'' → B`, pulling `A` back.
    pub fn pull_back_middle(&self, h: &GMap) -> Result<Bispan> {
        let a1 = pullback(&self.b, h)?;
        let d = a1.to_left.map().iter().map(|&a| self.d.apply(a)).collect();
        Ok(Bispan {
            d: GMap::new_unchecked(a1.set.clone(), self.source().clone(), d),
            b: a1.to_right,
            c: self.c.after(h)?,
        })
    }

    /// Pulls the middle back along `G/sub → B`, `gL ↦ g·b0`, for `sub ⊆ Stab(b0)`.
    pub fn orbit_piece(&self, b0: usize, sub: Subgroup) -> Result<Bispan> {
        self.orbit_piece_indexed(&MiddleIndex::new(self), b0, sub)
    }

    /// Same as [`Bispan::orbit_piece`], touching only the fibres over the orbit of `b0`.
    pub(crate) fn orbit_piece_indexed(&self, idx: &MiddleIndex, b0: usize, sub: Subgroup) -> Result<Bispan> {
        if !sub.is_subset_of(&self.b_set().stabilizer(b0)) {
            return Err(Error::NotSubgroup(format!("{sub:?} does not fix the chosen point")));
        }
        let group = self.b_set().group().clone();
        let (_, reps) = coset_numbering(&group, sub);
        let gl = Arc::new(GSet::coset_space(group.clone(), sub)?);
        let bs: Vec<usize> = reps.iter().map(|&g| self.b_set().act(g, b0)).collect();
        let mut offset = Vec::with_capacity(bs.len());
        let mut points = Vec::new();
        for (i, &b) in bs.iter().enumerate() {
            offset.push(points.len());
            points.extend(idx.fibers[b].iter().map(|&a| (i, a)));
        }
        let size = points.len();
        let a_set = self.a_set();
        let mut act = Vec::with_capacity(group.order() * size);
        for g in group.elements() {
            for &(i, a) in &points {
                let j = gl.act(g, i);
                act.push((offset[j] + idx.pos[a_set.act(g, a)]) as u32);
            }
        }
        let a2 = Arc::new(GSet::from_table_unchecked(group, size, act));
        let d = points.iter().map(|&(_, a)| self.d.apply(a)).collect();
        let b = points.iter().map(|&(i, _)| i).collect();
        let c = bs.iter().map(|&b| self.c.apply(b)).collect();
        Ok(Bispan {
            d: GMap::new_unchecked(a2.clone(), self.source().clone(), d),
            b: GMap::new_unchecked(a2, gl.clone(), b),
            c: GMap::new_unchecked(gl, self.target().clone(), c),
        })
    }

    /// Tambara composition `t ∘ self` of representatives.
    pub fn then(&self, t: &Bispan) -> Result<Bispan> {
        if !same_gset(self.target(), t.source()) {
            return Err(Error::ObjectMismatch("middle objects differ".into()));
        }
        self.restrict_target(&t.d)?.norm_target(&t.b)?.transfer_target(&t.c)
    }

    /// Checks that all three legs are equivariant and composable.
    pub fn validate(&self) -> Result<()> {
        GMap::new(self.a_set().clone(), self.source().clone(), self.d.map().to_vec())?;
        GMap::new(self.a_set().clone(), self.b_set().clone(), self.b.map().to_vec())?;
        GMap::new(self.b_set().clone(), self.target().clone(), self.c.map().to_vec())?;
        Ok(())
    }
}

//! Integer combinations of canonical bispan classes: the group completion
//! `U^G(X, Y)`, with its ring structure and composition.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::gset::{GMap, GSet};
use crate::subgroups::SubgroupTable;

use super::{same_gset, Bispan, CanonicalBispan, MiddleIndex};

/// An element of `U^G(X, Y)`.
#[derive(Clone)]
pub struct VirtualBispan {
    table: Arc<SubgroupTable>,
    source: Arc<GSet>,
    target: Arc<GSet>,
    coeffs: BTreeMap<CanonicalBispan, BigInt>,
}

impl PartialEq for VirtualBispan {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_gset(&self.source, &other.source) && same_gset(&self.target, &other.target)
    }
}

impl Eq for VirtualBispan {}

impl fmt::Debug for VirtualBispan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let fib: Vec<String> = k.fiber.iter().map(|(s, x)| format!("{s:?}->{x}")).collect();
                format!("{c}*[{}; y={}; {}]", self.table.label(k.class), k.target_point, fib.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl VirtualBispan {
    pub fn zero(table: Arc<SubgroupTable>, source: Arc<GSet>, target: Arc<GSet>) -> Self {
        VirtualBispan { table, source, target, coeffs: BTreeMap::new() }
    }

    /// The class of a representative (nonnegative coefficients).
    pub fn from_bispan(table: Arc<SubgroupTable>, s: &Bispan) -> Result<Self> {
        let mut v = VirtualBispan::zero(table, s.source().clone(), s.target().clone());
        v.add_bispan(s, &BigInt::one())?;
        Ok(v)
    }

    pub fn identity(table: Arc<SubgroupTable>, x: Arc<GSet>) -> Result<Self> {
        VirtualBispan::from_bispan(table, &Bispan::identity(x))
    }

    /// `1 = [X ← ∅ → Y → Y]`.
    pub fn one(table: Arc<SubgroupTable>, source: Arc<GSet>, target: Arc<GSet>) -> Result<Self> {
        VirtualBispan::from_bispan(table, &Bispan::unit(source, target))
    }

    pub fn table(&self) -> &Arc<SubgroupTable> {
        &self.table
    }

    pub fn source(&self) -> &Arc<GSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GSet> {
        &self.target
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalBispan, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, key: &CanonicalBispan) -> BigInt {
        self.coeffs.get(key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// True when every summand has a free `A`.
    pub fn has_free_a(&self) -> bool {
        self.coeffs.keys().all(|k| k.has_free_a())
    }

    pub fn add_term(&mut self, key: CanonicalBispan, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `c` times the class of a representative with matching endpoints.
    pub fn add_bispan(&mut self, s: &Bispan, c: &BigInt) -> Result<()> {
        if !same_gset(s.source(), &self.source) || !same_gset(s.target(), &self.target) {
            return Err(Error::ObjectMismatch("representative has different endpoints".into()));
        }
        for key in CanonicalBispan::decompose(&self.table, s)? {
            self.add_term(key, c);
        }
        Ok(())
    }

    pub fn realize(&self, key: &CanonicalBispan) -> Result<Bispan> {
        key.realize(&self.table, &self.source, &self.target)
    }

    /// A single representative, when all coefficients are nonnegative.
    pub fn representative(&self) -> Result<Option<Bispan>> {
        if !self.is_nonnegative() {
            return Ok(None);
        }
        let mut parts = Vec::new();
        for (k, c) in &self.coeffs {
            let r = self.realize(k)?;
            let n = usize::try_from(c).map_err(|_| Error::SizeCap("coefficient too large to realize".into()))?;
            parts.extend(std::iter::repeat_n(r, n));
        }
        if parts.is_empty() {
            return Ok(Some(Bispan::zero(self.source.clone(), self.target.clone())));
        }
        let refs: Vec<&Bispan> = parts.iter().collect();
        Bispan::sum(&refs).map(Some)
    }

    fn check_same_endpoints(&self, other: &VirtualBispan) -> Result<()> {
        if !same_gset(&self.source, &other.source) || !same_gset(&self.target, &other.target) {
            return Err(Error::ObjectMismatch("operands live in different hom-sets".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &VirtualBispan) -> Result<VirtualBispan> {
        self.check_same_endpoints(other)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> VirtualBispan {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &VirtualBispan) -> Result<VirtualBispan> {
        self.add(&other.neg())
    }

    pub fn scale(&self, n: &BigInt) -> VirtualBispan {
        let mut out = VirtualBispan::zero(self.table.clone(), self.source.clone(), self.target.clone());
        for (k, c) in &self.coeffs {
            out.add_term(k.clone(), &(c * n));
        }
        out
    }

    /// Bilinear extension of the product of representatives.
    pub fn mul(&self, other: &VirtualBispan) -> Result<VirtualBispan> {
        self.check_same_endpoints(other)?;
        let mut out = VirtualBispan::zero(self.table.clone(), self.source.clone(), self.target.clone());
        let right: Vec<(Bispan, &BigInt)> =
            other.coeffs.iter().map(|(k, c)| Ok((other.realize(k)?, c))).collect::<Result<_>>()?;
        for (k1, c1) in &self.coeffs {
            let r1 = self.realize(k1)?;
            for (r2, c2) in &right {
                out.add_bispan(&r1.product(r2)?, &(c1 * *c2))?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<VirtualBispan> {
        let mut acc = VirtualBispan::one(self.table.clone(), self.source.clone(), self.target.clone())?;
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `R_h ∘ self`, linear in `self`.
    pub fn restrict_target(&self, h: &GMap) -> Result<VirtualBispan> {
        let mut out = VirtualBispan::zero(self.table.clone(), self.source.clone(), h.source().clone());
        for (k, c) in &self.coeffs {
            out.add_bispan(&self.realize(k)?.restrict_target(h)?, c)?;
        }
        Ok(out)
    }

    /// `T_f ∘ self`, linear in `self`.
    pub fn transfer_target(&self, f: &GMap) -> Result<VirtualBispan> {
        let mut out = VirtualBispan::zero(self.table.clone(), self.source.clone(), f.target().clone());
        for (k, c) in &self.coeffs {
            out.add_bispan(&self.realize(k)?.transfer_target(f)?, c)?;
        }
        Ok(out)
    }

    /// `N_f ∘ self`. Polynomial rather than linear in `self`; negative
    /// coefficients are handled orbitwise through Burnside-ring weights.
    pub fn norm_target(&self, f: &GMap) -> Result<VirtualBispan> {
        let mut out = VirtualBispan::zero(self.table.clone(), self.source.clone(), f.target().clone());
        self.norm_into(f, None, &BigInt::one(), &mut out)?;
        Ok(out)
    }

    /// Adds `scale · T_post N_f (self)` to `out`.
    fn norm_into(&self, f: &GMap, post: Option<&GMap>, scale: &BigInt, out: &mut VirtualBispan) -> Result<()> {
        if !same_gset(f.source(), &self.target) {
            return Err(Error::ObjectMismatch("norm along a map out of a different object".into()));
        }
        let mut parts = Vec::with_capacity(self.coeffs.len());
        let mut part_weights = Vec::with_capacity(self.coeffs.len());
        for (k, c) in &self.coeffs {
            parts.push(self.realize(k)?);
            part_weights.push(c.clone());
        }
        let combined = if parts.is_empty() {
            Bispan::zero(self.source.clone(), self.target.clone())
        } else {
            let refs: Vec<&Bispan> = parts.iter().collect();
            Bispan::sum(&refs)?
        };
        let mut weights = Vec::with_capacity(combined.b_set().size());
        for (p, w) in parts.iter().zip(&part_weights) {
            weights.extend(std::iter::repeat_n(w.clone(), p.b_set().size()));
        }
        let (normed, dp) = combined.norm_parts(f)?;
        let finish = |piece: &Bispan| -> Result<Bispan> {
            match post {
                Some(p) => piece.transfer_target(p),
                None => Ok(piece.clone()),
            }
        };
        if weights.iter().all(|w| w.is_one()) {
            return out.add_bispan(&finish(&normed)?, scale);
        }
        let group = self.table.group().clone();
        let pi = normed.b_set().clone();
        let f_fibers = f.fibers();
        let idx = MiddleIndex::new(&normed);
        for orbit in pi.orbits() {
            let p = orbit[0];
            let fiber = &f_fibers[dp.pi_map.apply(p)];
            let section = &dp.sections[p];
            let h = pi.stabilizer(p);
            let beta = if section.iter().all(|&v| weights[v].is_one()) {
                vec![(h, BigInt::one())]
            } else {
                let fiber_set = f.source();
                burnside_weight(&group, self.table.all_subgroups(), h, |l| {
                    // product over L-orbits of the fibre of the section's weights
                    let l_el = l.elements();
                    let mut seen = vec![false; fiber.len()];
                    let mut prod = BigInt::one();
                    for i in 0..fiber.len() {
                        if seen[i] {
                            continue;
                        }
                        for &g in &l_el {
                            let j = fiber.binary_search(&fiber_set.act(g, fiber[i])).expect("L fixes the fibre");
                            seen[j] = true;
                        }
                        prod *= &weights[section[i]];
                    }
                    prod
                })?
            };
            for (l, coeff) in beta {
                let piece = normed.orbit_piece_indexed(&idx, p, l)?;
                out.add_bispan(&finish(&piece)?, &(coeff * scale))?;
            }
        }
        Ok(())
    }
}

/// Solves for `β ∈ A(H)` from its ghost coordinates `φ_L(β)`, returned as
/// `(L, β_L)` over representatives of subgroups of `H` up to `H`-conjugacy.
fn burnside_weight(
    group: &FiniteGroup,
    all_subgroups: &[Subgroup],
    h: Subgroup,
    ghost: impl Fn(Subgroup) -> BigInt,
) -> Result<Vec<(Subgroup, BigInt)>> {
    let h_el = h.elements();
    let mut reps: Vec<Subgroup> = Vec::new();
    let mut subs: Vec<Subgroup> = all_subgroups.iter().copied().filter(|s| s.is_subset_of(&h)).collect();
    subs.sort_by_key(|s| (std::cmp::Reverse(s.order()), *s));
    for s in subs {
        if !reps.iter().any(|r| r.order() == s.order() && h_el.iter().any(|&g| group.conjugate(s, g) == *r)) {
            reps.push(s);
        }
    }
    // mark_H(L', L) = #{h : h⁻¹ L h ⊆ L'} / |L'|
    let mark = |lp: Subgroup, l: Subgroup| -> BigInt {
        let n = h_el.iter().filter(|&&g| group.conjugate(l, group.inv(g)).is_subset_of(&lp)).count();
        BigInt::from(n / lp.order())
    };
    let mut out: Vec<(Subgroup, BigInt)> = Vec::with_capacity(reps.len());
    for &l in &reps {
        let mut rest = ghost(l);
        for (lp, b) in &out {
            if !b.is_zero() {
                rest -= b * mark(*lp, l);
            }
        }
        let (q, r) = rest.div_rem(&mark(l, l));
        if !r.is_zero() {
            return Err(Error::Divisibility(format!("norm weight not integral at subgroup {l:?}")));
        }
        out.push((l, q));
    }
    out.retain(|(_, b)| !b.is_zero());
    Ok(out)
}

/// `t ∘ s`: linear in `t`, polynomial in `s`.
pub fn compose(t: &VirtualBispan, s: &VirtualBispan) -> Result<VirtualBispan> {
    if !same_gset(&t.source, &s.target) {
        return Err(Error::ObjectMismatch("middle objects differ".into()));
    }
    let mut out = VirtualBispan::zero(s.table.clone(), s.source.clone(), t.target.clone());
    for (k, c) in &t.coeffs {
        let r = t.realize(k)?;
        let restricted = s.restrict_target(r.d())?;
        restricted.norm_into(r.b(), Some(r.c()), c, &mut out)?;
    }
    Ok(out)
}

impl VirtualBispan {
    /// `t ∘ self`.
    pub fn then(&self, t: &VirtualBispan) -> Result<VirtualBispan> {
        compose(t, self)
    }
}

pub fn gen_r(table: Arc<SubgroupTable>, f: &GMap) -> Result<VirtualBispan> {
    VirtualBispan::from_bispan(table, &Bispan::restriction(f))
}

pub fn gen_t(table: Arc<SubgroupTable>, f: &GMap) -> Result<VirtualBispan> {
    VirtualBispan::from_bispan(table, &Bispan::transfer(f))
}

pub fn gen_n(table: Arc<SubgroupTable>, f: &GMap) -> Result<VirtualBispan> {
    VirtualBispan::from_bispan(table, &Bispan::norm(f))
}

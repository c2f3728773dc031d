//! The free Tambara functor on a G-set `X`, the identification
//! `U^G(X, G/e) ≅ ℤ[X]`, the Teichmüller map `t` and its inverse `ρ`.
//!
//! Polynomial variable `i` is the point `i` of `X`; `g` acts by `x_i ↦ x_{g i}`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bispan::{compose, evaluate, gen_n, gen_t, Bispan, VirtualBispan, VirtualBispanJson};
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::gset::{coset_numbering, GMap, GSet};
use crate::poly::{IntPoly, Monomial, PolyJson};
use crate::ring::PolyRing;
use crate::subgroups::{double_cosets, subset_orbits, SubgroupTable};
use crate::witt::{ideal_generator, IdealWitness, WittVector};

/// `G/e`.
pub fn regular(table: &SubgroupTable) -> Arc<GSet> {
    Arc::new(GSet::regular(table.group().clone()))
}

/// `G/G`.
pub fn point(table: &SubgroupTable) -> Arc<GSet> {
    Arc::new(GSet::trivial(table.group().clone(), 1))
}

/// `π: G/e → G/U`.
fn project_from_regular(table: &SubgroupTable, reg: &Arc<GSet>, u: Subgroup) -> Result<GMap> {
    let (coset_of, _) = coset_numbering(table.group(), u);
    let target = Arc::new(GSet::coset_space(table.group().clone(), u)?);
    Ok(GMap::new_unchecked(reg.clone(), target, coset_of))
}

fn is_regular(y: &GSet) -> bool {
    let group = y.group();
    y.size() == group.order() && group.elements().all(|g| y.act(g, 0) == g)
}

/// `[X ← G/e × {1..k} → G/e = G/e]` with `(g, j) ↦ g·x_{v_j}`.
fn monomial_bispan(table: &SubgroupTable, x: &Arc<GSet>, reg: &Arc<GSet>, m: &Monomial) -> Bispan {
    let group = table.group();
    let n = group.order();
    let vars: Vec<usize> = m.support().flat_map(|(i, e)| std::iter::repeat_n(i, e as usize)).collect();
    let copies: Vec<&GSet> = vars.iter().map(|_| reg.as_ref()).collect();
    let a = Arc::new(GSet::coproduct(group.clone(), &copies).0);
    let mut d = Vec::with_capacity(a.size());
    let mut b = Vec::with_capacity(a.size());
    for &v in &vars {
        for g in 0..n {
            d.push(x.act(g, v));
            b.push(g);
        }
    }
    Bispan::new_unchecked(
        GMap::new_unchecked(a.clone(), x.clone(), d),
        GMap::new_unchecked(a, reg.clone(), b),
        GMap::identity(reg.clone()),
    )
}

/// The element of `U^G(X, G/e)` corresponding to `p ∈ ℤ[X]`.
pub fn poly_to_bispan(table: &Arc<SubgroupTable>, x: &Arc<GSet>, p: &IntPoly) -> Result<VirtualBispan> {
    if let Some(&v) = p.variables().iter().find(|&&v| v >= x.size()) {
        return Err(Error::ObjectMismatch(format!("variable {v} is not a point of X")));
    }
    let reg = regular(table);
    let mut out = VirtualBispan::zero(table.clone(), x.clone(), reg.clone());
    for (m, c) in p.terms() {
        out.add_bispan(&monomial_bispan(table, x, &reg, m), c)?;
    }
    Ok(out)
}

/// Inverse of [`poly_to_bispan`]: the value at `e` of the generic assignment.
pub fn bispan_to_poly(u: &VirtualBispan) -> Result<IntPoly> {
    if !is_regular(u.target()) {
        return Err(Error::ObjectMismatch("target is not G/e".into()));
    }
    if !u.has_free_a() {
        return Err(Error::NotFree("a summand has non-free A".into()));
    }
    let x = u.source().clone();
    let ring = PolyRing::over_gset(x.clone());
    let phi: Vec<IntPoly> = (0..x.size()).map(IntPoly::var).collect();
    Ok(evaluate(u, &ring, &phi)?.swap_remove(0))
}

fn check_coords(table: &SubgroupTable, x: &GSet, coords: &[IntPoly]) -> Result<()> {
    if coords.len() != table.num_classes() {
        return Err(Error::ObjectMismatch(format!("{} coordinates for {} classes", coords.len(), table.num_classes())));
    }
    if coords.iter().flat_map(|p| p.variables()).any(|v| v >= x.size()) {
        return Err(Error::ObjectMismatch("coordinate uses a variable outside X".into()));
    }
    Ok(())
}

/// `T(π^G_U) N(π^U_e)(p)` for an arbitrary subgroup `U`, by composing generators.
pub fn transferred_norm(table: &Arc<SubgroupTable>, x: &Arc<GSet>, u: Subgroup, p: &IntPoly) -> Result<VirtualBispan> {
    let reg = regular(table);
    let down = project_from_regular(table, &reg, u)?;
    let up = GMap::to_point(down.target().clone());
    let s = poly_to_bispan(table, x, p)?;
    let normed = compose(&gen_n(table.clone(), &down)?, &s)?;
    compose(&gen_t(table.clone(), &up)?, &normed)
}

/// `t(x) = Σ_U T(π^G_U) N(π^U_e)(x_U)`, one composition per class.
pub fn teichmuller_t_direct(table: &Arc<SubgroupTable>, x: &Arc<GSet>, coords: &[IntPoly]) -> Result<VirtualBispan> {
    check_coords(table, x, coords)?;
    let mut out = VirtualBispan::zero(table.clone(), x.clone(), point(table));
    for (class, p) in coords.iter().enumerate() {
        if !p.is_zero() {
            out = out.add(&transferred_norm(table, x, table.rep(class), p)?)?;
        }
    }
    Ok(out)
}

/// `t(x)` as one composite: the coordinates form an element of
/// `U^G(X, ⊔_U G/e)`, which is pushed through
/// `[⊔ G/e = ⊔ G/e → ⊔ G/U → G/G]`.
pub fn teichmuller_t(table: &Arc<SubgroupTable>, x: &Arc<GSet>, coords: &[IntPoly]) -> Result<VirtualBispan> {
    check_coords(table, x, coords)?;
    let group = table.group();
    let k = table.num_classes();
    let reg = regular(table);
    let regs: Vec<&GSet> = (0..k).map(|_| reg.as_ref()).collect();
    let (blocks, offsets) = GSet::coproduct(group.clone(), &regs);
    let blocks = Arc::new(blocks);
    let orbits: Vec<GSet> = (0..k).map(|c| GSet::coset_space(group.clone(), table.rep(c))).collect::<Result<_>>()?;
    let orbit_refs: Vec<&GSet> = orbits.iter().collect();
    let (quotients, q_offsets) = GSet::coproduct(group.clone(), &orbit_refs);
    let quotients = Arc::new(quotients);

    let mut packed = VirtualBispan::zero(table.clone(), x.clone(), blocks.clone());
    let mut pi = Vec::with_capacity(blocks.size());
    for (c, p) in coords.iter().enumerate() {
        let inc = GMap::new_unchecked(reg.clone(), blocks.clone(), (0..reg.size()).map(|g| offsets[c] + g).collect());
        packed = packed.add(&poly_to_bispan(table, x, p)?.transfer_target(&inc)?)?;
        let (coset_of, _) = coset_numbering(group, table.rep(c));
        pi.extend(coset_of.iter().map(|&j| q_offsets[c] + j));
    }
    let block = Bispan::new_unchecked(
        GMap::identity(blocks.clone()),
        GMap::new_unchecked(blocks, quotients.clone(), pi),
        GMap::to_point(quotients),
    );
    let block = VirtualBispan::from_bispan(table.clone(), &block)?;
    compose(&block, &packed)
}

/// `ρ`: the coordinates are read off class by class from the largest
/// subgroup down. A summand `[X ← G×_U F → G/U → G/G]` with free fibre `F`
/// contributes `Π_j x_{d(f_j)}` over a choice of `U`-orbit representatives
/// `f_j`; subtracting `t` of what has been read so far leaves only summands
/// on strictly smaller subgroups.
pub fn rho(u: &VirtualBispan) -> Result<Vec<IntPoly>> {
    let table = u.table().clone();
    let x = u.source().clone();
    if u.target().size() != 1 {
        return Err(Error::ObjectMismatch("target is not G/G".into()));
    }
    if !u.has_free_a() {
        return Err(Error::NotFree("a summand has non-free A".into()));
    }
    let k = table.num_classes();
    let mut coords = vec![IntPoly::zero(); k];
    let mut rest = u.clone();
    for class in 0..k {
        let mut p = IntPoly::zero();
        for (key, c) in rest.terms().filter(|(key, _)| key.class == class) {
            let m = key.fiber.iter().fold(Monomial::one(), |m, &(_, xi)| m.mul(&Monomial::var(xi)));
            p.add_term(m, c.clone());
        }
        if p.is_zero() {
            continue;
        }
        rest = rest.sub(&transferred_norm(&table, &x, table.rep(class), &p)?)?;
        debug_assert!(rest.terms().all(|(key, _)| key.class > class));
        coords[class] = p;
    }
    if !rest.is_zero() {
        return Err(Error::NotFree("normal form extraction left a remainder".into()));
    }
    Ok(coords)
}

/// Which identity [`witt_law_check`] compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Law {
    Add,
    Mul,
    Neg,
    Ideal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawInputs {
    pub x: Vec<PolyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<PolyJson>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: Law,
    pub inputs: LawInputs,
    pub verdict: bool,
    /// Left side (through bispan arithmetic) and right side (through Witt arithmetic).
    pub canonical_forms: [VirtualBispanJson; 2],
}

fn to_json_list(v: &[IntPoly]) -> Vec<PolyJson> {
    v.iter().map(PolyJson::from).collect()
}

fn report(law: Law, x: &[IntPoly], y: Option<&[IntPoly]>, lhs: VirtualBispan, rhs: VirtualBispan) -> Result<LawReport> {
    Ok(LawReport {
        law,
        inputs: LawInputs { x: to_json_list(x), y: y.map(to_json_list) },
        verdict: lhs == rhs,
        canonical_forms: [lhs.to_json()?, rhs.to_json()?],
    })
}

/// Compares `t(x) ⊕ t(y)` computed with bispans against `t` of the Witt
/// operation applied to `x, y` over `ℤ[X]`. `y` is ignored for [`Law::Neg`].
pub fn witt_law_check(
    table: &Arc<SubgroupTable>,
    x_set: &Arc<GSet>,
    law: Law,
    x: &[IntPoly],
    y: &[IntPoly],
) -> Result<LawReport> {
    let ring = PolyRing::over_gset(x_set.clone());
    let a = WittVector::new(table.clone(), x.to_vec())?;
    let tx = teichmuller_t(table, x_set, x)?;
    let (lhs, witt, second) = match law {
        Law::Add | Law::Mul => {
            let b = WittVector::new(table.clone(), y.to_vec())?;
            let ty = teichmuller_t(table, x_set, y)?;
            if law == Law::Add {
                (tx.add(&ty)?, a.add(&b, &ring)?, Some(y))
            } else {
                (tx.mul(&ty)?, a.mul(&b, &ring)?, Some(y))
            }
        }
        Law::Neg => (tx.neg(), a.neg(&ring)?, None),
        Law::Ideal => return Err(Error::Witness("use ideal_check for the ideal law".into())),
    };
    let rhs = teichmuller_t(table, x_set, witt.coords())?;
    report(law, x, second, lhs, rhs)
}

/// Checks `t(a) = t(b)` for the generator `a - b` built from `witness`.
pub fn ideal_check(
    table: &Arc<SubgroupTable>,
    x_set: &Arc<GSet>,
    witness: &IdealWitness<IntPoly>,
) -> Result<LawReport> {
    let ring = PolyRing::over_gset(x_set.clone());
    let (a, b) = ideal_generator(table, &ring, witness)?;
    let lhs = teichmuller_t(table, x_set, &a)?;
    let rhs = teichmuller_t(table, x_set, &b)?;
    report(Law::Ideal, &a, Some(&b), lhs, rhs)
}

/// How monomials are formed in the orbit expansions below.
///
/// `Twisted` works on `X = G/e ⊔ G/e` with `s = x_(1,e)`, `t = x_(2,e)` and
/// keeps track of which translate of `s` or `t` each factor is. `Literal`
/// uses plain powers `s^i t^j` and works on a two-point trivial `X`, where
/// translates coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    Twisted,
    Literal,
}

/// `(X, s, t)` for the given form.
fn generic_pair(table: &SubgroupTable, form: Form) -> (Arc<GSet>, usize, usize) {
    let group = table.group().clone();
    match form {
        Form::Twisted => {
            let reg = GSet::regular(group.clone());
            let (x, off) = GSet::coproduct(group, &[&reg, &reg]);
            (Arc::new(x), off[0], off[1])
        }
        Form::Literal => (Arc::new(GSet::trivial(group, 2)), 0, 1),
    }
}

/// Right cosets `K g` of `k` inside `set` (a union of such cosets), one representative each.
fn right_coset_reps(table: &SubgroupTable, k: Subgroup, set: &[usize]) -> Vec<usize> {
    let group = table.group();
    let mut seen = 0u128;
    let mut reps = Vec::new();
    for &g in set {
        if seen >> g & 1 == 1 {
            continue;
        }
        for h in k.elements() {
            seen |= 1 << group.mul(h, g);
        }
        reps.push(g);
    }
    reps
}

/// Both sides of the expansion of `N(π^G_e)(s + t)` over orbits of subsets
/// `A ⊆ G`: `Σ_{GA} T(π^G_{U_A}) N(π^{U_A}_e)(m_A)`.
pub fn norm_of_sum_identity(table: &Arc<SubgroupTable>, form: Form) -> Result<(VirtualBispan, VirtualBispan)> {
    let group = table.group();
    let (x, s, t) = generic_pair(table, form);
    let sum = IntPoly::var(s) + IntPoly::var(t);
    let lhs = poly_to_bispan(table, &x, &sum)?.norm_target(&GMap::to_point(regular(table)))?;
    let all: Vec<usize> = group.elements().collect();
    let mut rhs = VirtualBispan::zero(table.clone(), x.clone(), point(table));
    for d in subset_orbits(group, group.whole())? {
        let u = d.stabilizer;
        let m = match form {
            Form::Literal => IntPoly::var(s).pow(d.i_a as u32) * IntPoly::var(t).pow(d.i_complement as u32),
            Form::Twisted => {
                let mut m = IntPoly::one();
                for g in right_coset_reps(table, u, &all) {
                    let in_a_inv = d.subset.contains(&group.inv(g));
                    let base = if in_a_inv { s } else { t };
                    m = m * IntPoly::var(x.act(g, base));
                }
                m
            }
        };
        rhs = rhs.add(&transferred_norm(table, &x, u, &m)?)?;
    }
    Ok((lhs, rhs))
}

/// Both sides of the Mackey-type product formula
/// `T N_V(s) · T N_W(t) = Σ_{VgW} T N_K(m_g)` with `K = V ∩ gWg⁻¹`.
pub fn mackey_product_identity(
    table: &Arc<SubgroupTable>,
    v: Subgroup,
    w: Subgroup,
    form: Form,
) -> Result<(VirtualBispan, VirtualBispan)> {
    let group = table.group();
    let (x, s, t) = generic_pair(table, form);
    let lhs =
        transferred_norm(table, &x, v, &IntPoly::var(s))?.mul(&transferred_norm(table, &x, w, &IntPoly::var(t))?)?;
    let mut rhs = VirtualBispan::zero(table.clone(), x.clone(), point(table));
    for (g, k) in double_cosets(group, v, w) {
        let m = match form {
            Form::Literal => {
                let other = group.conjugate(v, group.inv(g)).intersect(&w);
                IntPoly::var(s).pow((v.order() / k.order()) as u32)
                    * IntPoly::var(t).pow((w.order() / other.order()) as u32)
            }
            Form::Twisted => {
                let mut m = IntPoly::one();
                for r in right_coset_reps(table, k, &v.elements()) {
                    m = m * IntPoly::var(x.act(r, s));
                }
                let gw: Vec<usize> = w.elements().into_iter().map(|h| group.mul(g, h)).collect();
                for r in right_coset_reps(table, k, &gw) {
                    m = m * IntPoly::var(x.act(r, t));
                }
                m
            }
        };
        rhs = rhs.add(&transferred_norm(table, &x, k, &m)?)?;
    }
    Ok((lhs, rhs))
}

/// `t` on the Burnside case `X = ∅`: integer coordinates.
pub fn burnside_t(table: &Arc<SubgroupTable>, coords: &[BigInt]) -> Result<VirtualBispan> {
    let empty = Arc::new(GSet::empty(table.group().clone()));
    let polys: Vec<IntPoly> = coords.iter().map(|c| IntPoly::constant(c.clone())).collect();
    teichmuller_t(table, &empty, &polys)
}

/// `ρ` on the Burnside case, as integers.
pub fn burnside_rho(u: &VirtualBispan) -> Result<Vec<BigInt>> {
    if u.source().size() != 0 {
        return Err(Error::ObjectMismatch("source is not empty".into()));
    }
    Ok(rho(u)?.iter().map(|p| p.coeff(&Monomial::one())).collect())
}

/// Coefficient of the orbit `[G/U]` in a Burnside element.
pub fn orbit_coefficients(u: &VirtualBispan) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); u.table().num_classes()];
    for (key, c) in u.terms() {
        out[key.class] += c;
    }
    out
}

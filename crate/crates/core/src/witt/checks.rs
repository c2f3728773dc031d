//! Integer identities behind the Witt polynomials, checked numerically.

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::error::Result;
use crate::group::Subgroup;
use crate::subgroups::{double_cosets, mark, subset_orbits, SubgroupTable};

use super::xi_polys;

/// `(K:H)` as an exponent, when `|H|` divides `|K|`.
fn index(k: Subgroup, h: Subgroup) -> Option<u32> {
    k.order().is_multiple_of(h.order()).then(|| (k.order() / h.order()) as u32)
}

/// `(s+t)^{(G:U)} = Σ_{GA} |(G/U_A)^U| (s^{i_A} t^{i_{G-A}})^{(U_A:U)}` for every subgroup `U`.
pub fn lemma43_holds(table: &SubgroupTable, s: &BigInt, t: &BigInt) -> Result<bool> {
    let group = table.group();
    let whole = group.whole();
    let orbits = subset_orbits(group, whole)?;
    for &u in table.all_subgroups() {
        let lhs: BigInt = Pow::pow(s + t, (group.order() / u.order()) as u32);
        let mut rhs = BigInt::from(0);
        for d in &orbits {
            let m = mark(group, d.stabilizer, u);
            if m == 0 {
                continue;
            }
            let e = index(d.stabilizer, u).expect("U is subconjugate to U_A");
            let base = Pow::pow(s, d.i_a as u32) * Pow::pow(t, d.i_complement as u32);
            rhs += BigInt::from(m) * Pow::pow(base, e);
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ ε_i |(G/V_i)^H| s_i^{(V_i:H)} = Σ_U |(G/U)^H| ξ_U(s)^{(U:H)}` for every class `H`.
pub fn lemma45_holds(table: &SubgroupTable, v_list: &[usize], negative: &[bool], values: &[BigInt]) -> Result<bool> {
    let xi = xi_polys(table, v_list, negative)?;
    let xi_vals: Vec<BigInt> = xi.iter().map(|p| p.eval_int(values)).collect();
    for h in 0..table.num_classes() {
        let mut lhs = BigInt::from(0);
        for (i, (&v, &neg)) in v_list.iter().zip(negative).enumerate() {
            if let Some(e) = table.rel_index(v, h) {
                let term = BigInt::from(table.mark(v, h)) * Pow::pow(&values[i], e as u32);
                if neg {
                    lhs -= term;
                } else {
                    lhs += term;
                }
            }
        }
        let mut rhs = BigInt::from(0);
        for (u, x) in xi_vals.iter().enumerate() {
            if let Some(e) = table.rel_index(u, h) {
                rhs += BigInt::from(table.mark(u, h)) * Pow::pow(x, e as u32);
            }
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `|(G/V)^H| s^{(V:H)} |(G/W)^H| t^{(W:H)} =
///  Σ_{VgW} |(G/K)^H| (s^{(V:K)} t^{(W:g⁻¹Vg∩W)})^{(K:H)}` with `K = V ∩ gWg⁻¹`.
pub fn lemma47_holds(table: &SubgroupTable, v: Subgroup, w: Subgroup, h: Subgroup, s: &BigInt, t: &BigInt) -> bool {
    let group = table.group();
    let side = |k: Subgroup, x: &BigInt| -> BigInt {
        let m = mark(group, k, h);
        if m == 0 {
            return BigInt::from(0);
        }
        BigInt::from(m) * Pow::pow(x, index(k, h).expect("H is subconjugate"))
    };
    let lhs = side(v, s) * side(w, t);
    let mut rhs = BigInt::from(0);
    for (g, k) in double_cosets(group, v, w) {
        let other = group.conjugate(v, group.inv(g)).intersect(&w);
        let mut base = BigInt::one();
        base *= Pow::pow(s, (v.order() / k.order()) as u32);
        base *= Pow::pow(t, (w.order() / other.order()) as u32);
        rhs += side(k, &base);
    }
    lhs == rhs
}

//! The ξ-recursion: rewriting a signed sum `Σ ε_i T_{V_i} N_{V_i}(s_i)` into
//! one positive term per conjugacy class.
//!
//! A term is bad if its sign is negative or its class occurs more than once.
//! The largest bad term is rewritten through the subset-orbit expansion of
//! `N(s + t)` over that subgroup; every new term lives on a strictly smaller
//! subgroup, so the loop terminates.

use std::collections::HashMap;

use crate::error::Result;
use crate::poly::{IntPoly, Monomial};
use crate::subgroups::{double_cosets, subset_orbits, SubgroupTable, SubsetOrbitDatum};

use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiTerm {
    pub class: usize,
    pub negative: bool,
    pub poly: IntPoly,
}

impl XiTerm {
    pub fn new(class: usize, negative: bool, poly: IntPoly) -> Self {
        XiTerm { class, negative, poly }
    }
}

struct Orbits<'a> {
    table: &'a SubgroupTable,
    cache: HashMap<usize, Vec<(usize, SubsetOrbitDatum)>>,
}

impl Orbits<'_> {
    /// Non-special subset orbits of the class representative, with the class of `U_A`.
    fn nonspecial(&mut self, class: usize) -> Result<&[(usize, SubsetOrbitDatum)]> {
        if !self.cache.contains_key(&class) {
            let group = self.table.group();
            let data = subset_orbits(group, self.table.rep(class))?
                .into_iter()
                .filter(|d| d.special.is_none())
                .map(|d| Ok((self.table.class_of(d.stabilizer)?, d)))
                .collect::<Result<Vec<_>>>()?;
            self.cache.insert(class, data);
        }
        Ok(&self.cache[&class])
    }
}

/// Reduces a list of signed terms to one polynomial per class.
pub fn xi_reduce(table: &SubgroupTable, mut terms: Vec<XiTerm>) -> Result<Vec<IntPoly>> {
    let mut orbits = Orbits { table, cache: HashMap::new() };
    loop {
        terms.retain(|t| !t.poly.is_zero());
        let mut count = vec![0usize; table.num_classes()];
        for t in &terms {
            count[t.class] += 1;
        }
        // largest bad term; class order is by decreasing subgroup order
        let bad = (0..terms.len())
            .filter(|&i| terms[i].negative || count[terms[i].class] > 1)
            .min_by_key(|&i| (terms[i].class, !terms[i].negative));
        let Some(i) = bad else { break };
        let term = terms.swap_remove(i);
        let v = term.class;
        let order_v = table.class_order(v);
        if term.negative {
            // -N(s) = N(-s) + Σ_{A ∈ U₀} T N((-1)^{i_A} s^{(V:U_A)})
            for (u, d) in orbits.nonspecial(v)? {
                let sign = if d.i_a % 2 == 1 { -1 } else { 1 };
                let exp = (order_v / d.stabilizer.order()) as u32;
                terms.push(XiTerm::new(*u, false, term.poly.pow(exp).scale(&BigInt::from(sign))));
            }
            terms.push(XiTerm::new(v, false, -term.poly));
        } else {
            // N(s) + N(t) = N(s + t) - Σ_{A ∈ U₀} T N(s^{i_A} t^{i_{V-A}})
            let j = terms
                .iter()
                .position(|t| t.class == v && !t.negative)
                .expect("a repeated positive class has a partner");
            let other = terms.swap_remove(j);
            for (u, d) in orbits.nonspecial(v)? {
                let p = term.poly.pow(d.i_a as u32).mul_ref(&other.poly.pow(d.i_complement as u32));
                terms.push(XiTerm::new(*u, true, p));
            }
            terms.push(XiTerm::new(v, false, term.poly + other.poly));
        }
    }
    let mut out = vec![IntPoly::zero(); table.num_classes()];
    for t in terms {
        out[t.class] = t.poly;
    }
    Ok(out)
}

/// `ξ_U` for classes `v_list` with signs `negative`, in variables `x_0..x_{k-1}`.
pub fn xi_polys(table: &SubgroupTable, v_list: &[usize], negative: &[bool]) -> Result<Vec<IntPoly>> {
    assert_eq!(v_list.len(), negative.len());
    let terms =
        v_list.iter().zip(negative).enumerate().map(|(i, (&v, &neg))| XiTerm::new(v, neg, IntPoly::var(i))).collect();
    xi_reduce(table, terms)
}

/// `s_U = ξ(V_1, V_1, ..., V_k, V_k; +...+)(a_1, b_1, ...)`.
pub fn s_polys_via_xi(table: &SubgroupTable) -> Result<Vec<IntPoly>> {
    let k = table.num_classes();
    let terms = (0..k)
        .flat_map(|i| [XiTerm::new(i, false, IntPoly::var(i)), XiTerm::new(i, false, IntPoly::var(k + i))])
        .collect();
    xi_reduce(table, terms)
}

/// `m_U = ξ(V_1, ..., V_k; -...-)(a_1, ..., a_k)`.
pub fn m_polys_via_xi(table: &SubgroupTable) -> Result<Vec<IntPoly>> {
    let k = table.num_classes();
    xi_reduce(table, (0..k).map(|i| XiTerm::new(i, true, IntPoly::var(i))).collect())
}

/// `p_U` from the orbits of `⊔_{i,j} G/V_i × G/V_j`: the orbit through
/// `(V_i, gV_j)` has stabilizer `W = V_i ∩ gV_jg⁻¹` and contributes
/// `a_i^{(V_i:W)} b_j^{(V_j:W)}`.
pub fn p_polys_via_orbits(table: &SubgroupTable) -> Result<Vec<IntPoly>> {
    let k = table.num_classes();
    let group = table.group();
    let mut terms = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let (vi, vj) = (table.rep(i), table.rep(j));
            for (_, w) in double_cosets(group, vi, vj) {
                let ea = (vi.order() / w.order()) as u32;
                let eb = (vj.order() / w.order()) as u32;
                let m = Monomial::var_pow(i, ea).mul(&Monomial::var_pow(k + j, eb));
                terms.push(XiTerm::new(table.class_of(w)?, false, IntPoly::term(BigInt::from(1), m)));
            }
        }
    }
    xi_reduce(table, terms)
}

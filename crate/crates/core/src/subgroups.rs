//! Subgroup lattices up to conjugacy, tables of marks, double cosets and the
//! orbits of a group on its own power set.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, DEFAULT_ORDER_CAP};

/// All subgroups of a group, grouped into conjugacy classes.
///
/// Classes are sorted by decreasing order, ties broken by the sorted element
/// list of the representative, and each representative is the
/// lexicographically smallest member of its class. Class `0` is always the
/// whole group and the last class is the trivial subgroup.
#[derive(Clone, Debug)]
pub struct SubgroupTable {
    group: Arc<FiniteGroup>,
    all_subgroups: Vec<Subgroup>,
    class_reps: Vec<Subgroup>,
    class_members: Vec<Vec<Subgroup>>,
    class_of: HashMap<Subgroup, usize>,
    marks: Vec<Vec<u64>>,
    normalizer_index: Vec<usize>,
    labels: Vec<String>,
}

/// JSON export of a table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupTableJson {
    pub order: usize,
    pub class_reps: Vec<Vec<usize>>,
    pub marks: Vec<Vec<u64>>,
    pub rel_index: Vec<Vec<Option<usize>>>,
    pub normalizer_index: Vec<usize>,
}

fn lex_key(s: &Subgroup) -> (std::cmp::Reverse<usize>, Vec<usize>) {
    (std::cmp::Reverse(s.order()), s.elements())
}

/// Number of cosets `gV` fixed by every element of `h`.
pub fn mark(group: &FiniteGroup, v: Subgroup, h: Subgroup) -> u64 {
    let hs = h.elements();
    let count = group
        .elements()
        .filter(|&g| {
            let gi = group.inv(g);
            hs.iter().all(|&x| v.contains(group.conj(gi, x)))
        })
        .count();
    (count / v.order()) as u64
}

/// One representative per double coset `V g W`, with `V ∩ gWg^-1`.
pub fn double_cosets(group: &FiniteGroup, v: Subgroup, w: Subgroup) -> Vec<(usize, Subgroup)> {
    let mut seen = 0u128;
    let ve = v.elements();
    let we = w.elements();
    let mut out = Vec::new();
    for g in group.elements() {
        if seen >> g & 1 == 1 {
            continue;
        }
        for &a in &ve {
            for &b in &we {
                seen |= 1 << group.mul(group.mul(a, g), b);
            }
        }
        out.push((g, v.intersect(&group.conjugate(w, g))));
    }
    out
}

/// Which special summand an orbit of subsets is, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialSubset {
    Empty,
    Whole,
}

/// An orbit of subsets `A ⊆ H` under `(h, A) ↦ A h^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetOrbitDatum {
    /// Representative subset, as group elements.
    pub subset: Vec<usize>,
    /// `{ h | A h = A }`.
    pub stabilizer: Subgroup,
    /// Number of `stabilizer`-cosets in `A`.
    pub i_a: usize,
    /// Number of `stabilizer`-cosets in `H - A`.
    pub i_complement: usize,
    pub special: Option<SpecialSubset>,
}

/// Largest `|H|` for which the power set of `H` is enumerated.
pub const SUBSET_ORBIT_CAP: usize = 16;

/// Orbits of the power set of the subgroup `h` under right translation.
pub fn subset_orbits(group: &FiniteGroup, h: Subgroup) -> Result<Vec<SubsetOrbitDatum>> {
    let el = h.elements();
    let m = el.len();
    if m > SUBSET_ORBIT_CAP {
        return Err(Error::SizeCap(format!("subset orbits need |H| <= {SUBSET_ORBIT_CAP}, got {m}")));
    }
    let pos: HashMap<usize, usize> = el.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    // right_mul[k][i] = position of el[i] * el[k]
    let right_mul: Vec<Vec<usize>> = el.iter().map(|&x| el.iter().map(|&a| pos[&group.mul(a, x)]).collect()).collect();
    let translate = |mask: u32, k: usize| -> u32 {
        let mut out = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            out |= 1 << right_mul[k][i];
            rest &= rest - 1;
        }
        out
    };
    let full: u32 = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
    let mut visited = vec![false; 1usize << m];
    let mut out = Vec::new();
    for mask in 0..=full {
        if visited[mask as usize] {
            continue;
        }
        let mut stab = Vec::new();
        for k in 0..m {
            let t = translate(mask, k);
            visited[t as usize] = true;
            if t == mask {
                stab.push(el[k]);
            }
        }
        let stabilizer = Subgroup::from_elements(stab);
        let size = mask.count_ones() as usize;
        let so = stabilizer.order();
        out.push(SubsetOrbitDatum {
            subset: (0..m).filter(|i| mask >> i & 1 == 1).map(|i| el[i]).collect(),
            stabilizer,
            i_a: size / so,
            i_complement: (m - size) / so,
            special: if mask == 0 {
                Some(SpecialSubset::Empty)
            } else if mask == full {
                Some(SpecialSubset::Whole)
            } else {
                None
            },
        });
    }
    Ok(out)
}

impl SubgroupTable {
    pub fn new(group: Arc<FiniteGroup>) -> Result<Self> {
        Self::with_cap(group, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(group: Arc<FiniteGroup>, cap: usize) -> Result<Self> {
        let n = group.order();
        if n > cap || n > 128 {
            return Err(Error::OrderCap { order: n, cap });
        }
        let mut cyclic: BTreeSet<Subgroup> = BTreeSet::new();
        for g in group.elements() {
            cyclic.insert(group.closure(Subgroup::from_elements([g])));
        }
        let cyclic: Vec<Subgroup> = cyclic.into_iter().collect();
        let mut found: BTreeSet<Subgroup> = cyclic.iter().copied().collect();
        let mut work: Vec<Subgroup> = cyclic.clone();
        while let Some(h) = work.pop() {
            for c in &cyclic {
                if c.is_subset_of(&h) {
                    continue;
                }
                let j = group.closure(Subgroup(h.0 | c.0));
                if found.insert(j) {
                    work.push(j);
                }
            }
        }
        let mut all_subgroups: Vec<Subgroup> = found.into_iter().collect();
        all_subgroups.sort_by_key(lex_key);

        let mut class_of_tmp: HashMap<Subgroup, usize> = HashMap::new();
        let mut class_members: Vec<Vec<Subgroup>> = Vec::new();
        for &s in &all_subgroups {
            if class_of_tmp.contains_key(&s) {
                continue;
            }
            let idx = class_members.len();
            let conj: BTreeSet<Subgroup> = group.elements().map(|g| group.conjugate(s, g)).collect();
            let mut members: Vec<Subgroup> = conj.into_iter().collect();
            members.sort_by_key(lex_key);
            for &m in &members {
                class_of_tmp.insert(m, idx);
            }
            class_members.push(members);
        }
        // sorting all_subgroups first means the first member met is the
        // smallest of its class and classes already come out in key order
        let class_reps: Vec<Subgroup> = class_members.iter().map(|m| m[0]).collect();
        let k = class_reps.len();
        let marks: Vec<Vec<u64>> =
            (0..k).map(|v| (0..k).map(|u| mark(&group, class_reps[v], class_reps[u])).collect()).collect();
        let normalizer_index = (0..k).map(|u| marks[u][u] as usize).collect();
        let labels = make_labels(&group, &class_reps);
        Ok(SubgroupTable {
            group,
            all_subgroups,
            class_reps,
            class_members,
            class_of: class_of_tmp,
            marks,
            normalizer_index,
            labels,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn num_classes(&self) -> usize {
        self.class_reps.len()
    }

    pub fn all_subgroups(&self) -> &[Subgroup] {
        &self.all_subgroups
    }

    pub fn class_reps(&self) -> &[Subgroup] {
        &self.class_reps
    }

    pub fn rep(&self, class: usize) -> Subgroup {
        self.class_reps[class]
    }

    pub fn class_members(&self, class: usize) -> &[Subgroup] {
        &self.class_members[class]
    }

    /// Class index of any subgroup.
    pub fn class_of(&self, s: Subgroup) -> Result<usize> {
        self.class_of.get(&s).copied().ok_or_else(|| Error::NotSubgroup(format!("{s:?}")))
    }

    pub fn class_order(&self, class: usize) -> usize {
        self.class_reps[class].order()
    }

    /// `|(G/V)^U|` for class indices.
    pub fn mark(&self, v: usize, u: usize) -> u64 {
        self.marks[v][u]
    }

    pub fn marks(&self) -> &[Vec<u64>] {
        &self.marks
    }

    /// `U ⪯ V`.
    pub fn subconj(&self, u: usize, v: usize) -> bool {
        self.marks[v][u] != 0
    }

    /// `(V:U)`, defined when `U ⪯ V`.
    pub fn rel_index(&self, v: usize, u: usize) -> Option<usize> {
        self.subconj(u, v).then(|| self.class_order(v) / self.class_order(u))
    }

    pub fn normalizer_index(&self, u: usize) -> usize {
        self.normalizer_index[u]
    }

    pub fn label(&self, class: usize) -> &str {
        &self.labels[class]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Some `g` with `g S g^-1` equal to the representative of its class.
    pub fn conjugator_to_rep(&self, s: Subgroup) -> Result<(usize, usize)> {
        let class = self.class_of(s)?;
        let rep = self.class_reps[class];
        let g = self
            .group
            .elements()
            .find(|&g| self.group.conjugate(s, g) == rep)
            .expect("class members are conjugate to the representative");
        Ok((class, g))
    }

    pub fn to_json(&self) -> SubgroupTableJson {
        let k = self.num_classes();
        SubgroupTableJson {
            order: self.group.order(),
            class_reps: self.class_reps.iter().map(|s| s.elements()).collect(),
            marks: self.marks.clone(),
            rel_index: (0..k).map(|v| (0..k).map(|u| self.rel_index(v, u)).collect()).collect(),
            normalizer_index: self.normalizer_index.clone(),
        }
    }
}

fn make_labels(group: &FiniteGroup, reps: &[Subgroup]) -> Vec<String> {
    let n = group.order();
    let base: Vec<String> = reps
        .iter()
        .map(|s| {
            let o = s.order();
            if o == n {
                group.spec().to_string()
            } else if o == 1 {
                "e".to_string()
            } else if s.elements().iter().any(|&g| group.element_order(g) == o) {
                format!("C{o}")
            } else {
                format!("H{o}")
            }
        })
        .collect();
    let mut out = Vec::with_capacity(base.len());
    for (i, b) in base.iter().enumerate() {
        let same: Vec<usize> = (0..base.len()).filter(|&j| &base[j] == b).collect();
        if same.len() > 1 {
            let pos = same.iter().position(|&j| j == i).unwrap();
            out.push(format!("{b}#{}", pos + 1));
        } else {
            out.push(b.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    fn brute_subgroups(g: &FiniteGroup) -> usize {
        let n = g.order();
        (0u128..(1u128 << n)).filter(|&m| g.is_subgroup(Subgroup(m))).count()
    }

    #[test]
    fn counts_match_brute_force() {
        for (spec, subs, classes) in [("C2", 2, 2), ("S3", 6, 4), ("C2 x C2", 5, 5), ("C4", 3, 3)] {
            let g = make_group(spec).unwrap();
            let t = SubgroupTable::new(g.clone()).unwrap();
            assert_eq!(t.all_subgroups().len(), subs, "{spec}");
            assert_eq!(brute_subgroups(&g), subs, "{spec}");
            assert_eq!(t.num_classes(), classes, "{spec}");
        }
    }

    #[test]
    fn s4_has_eleven_classes() {
        let t = SubgroupTable::new(make_group("S4").unwrap()).unwrap();
        assert_eq!(t.all_subgroups().len(), 30);
        assert_eq!(t.num_classes(), 11);
    }

    #[test]
    fn s3_marks() {
        let g = make_group("S3").unwrap();
        let t = SubgroupTable::new(g.clone()).unwrap();
        let orders: Vec<usize> = (0..4).map(|c| t.class_order(c)).collect();
        assert_eq!(orders, vec![6, 3, 2, 1]);
        // rows V, columns U
        assert_eq!(t.marks()[0], vec![1, 1, 1, 1]);
        assert_eq!(t.marks()[1], vec![0, 2, 0, 2]);
        assert_eq!(t.marks()[2], vec![0, 0, 1, 3]);
        assert_eq!(t.marks()[3], vec![0, 0, 0, 6]);
        assert_eq!(mark(&g, t.rep(1), t.rep(2)), 0);
        assert_eq!(t.label(2), "C2");
        assert_eq!(t.rel_index(0, 3), Some(6));
        assert_eq!(t.rel_index(1, 2), None);
    }

    #[test]
    fn marks_small_cases() {
        let s3 = make_group("S3").unwrap();
        for h in SubgroupTable::new(s3.clone()).unwrap().all_subgroups() {
            assert_eq!(mark(&s3, s3.whole(), *h), 1);
        }
        let c2 = make_group("C2").unwrap();
        assert_eq!(mark(&c2, Subgroup(1), Subgroup(1)), 2);
    }

    #[test]
    fn double_coset_examples() {
        let s3 = make_group("S3").unwrap();
        assert_eq!(double_cosets(&s3, s3.whole(), s3.whole()).len(), 1);
        let c2 = make_group("C2").unwrap();
        assert_eq!(double_cosets(&c2, Subgroup(1), Subgroup(1)).len(), 2);
        let t = SubgroupTable::new(s3.clone()).unwrap();
        let c2s = t.rep(2);
        let dc = double_cosets(&s3, c2s, c2s);
        assert_eq!(dc.len(), 2);
        let total: usize = dc.iter().map(|(_, k)| c2s.order() * c2s.order() / k.order()).sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn subset_orbits_c2() {
        let g = make_group("C2").unwrap();
        let orbits = subset_orbits(&g, g.whole()).unwrap();
        assert_eq!(orbits.len(), 3);
        let empty = orbits.iter().find(|o| o.special == Some(SpecialSubset::Empty)).unwrap();
        assert_eq!(empty.i_a, 0);
        let whole = orbits.iter().find(|o| o.special == Some(SpecialSubset::Whole)).unwrap();
        assert_eq!((whole.stabilizer, whole.i_a), (g.whole(), 1));
        let single = orbits.iter().find(|o| o.special.is_none()).unwrap();
        assert_eq!((single.stabilizer, single.i_a, single.i_complement), (Subgroup(1), 1, 1));
    }

    #[test]
    fn subset_orbit_cap() {
        let g = make_group("S4").unwrap();
        assert!(matches!(subset_orbits(&g, g.whole()), Err(Error::SizeCap(_))));
    }

    #[test]
    fn json_export_shape() {
        let t = SubgroupTable::new(make_group("C2").unwrap()).unwrap();
        let j = t.to_json();
        assert_eq!(j.class_reps, vec![vec![0, 1], vec![0]]);
        assert_eq!(j.marks, vec![vec![1, 1], vec![0, 2]]);
        assert_eq!(j.rel_index, vec![vec![Some(1), Some(2)], vec![None, Some(1)]]);
        assert_eq!(j.normalizer_index, vec![1, 2]);
    }
}

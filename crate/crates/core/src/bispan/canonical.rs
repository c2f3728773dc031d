//! Canonical keys for bispans with transitive `B`.
//!
//! Pick a base point `b'` of `B` whose stabilizer is the class
//! representative `U`. The fibre `F = b⁻¹(b')` is a `U`-set over `X`, and the
//! bispan is determined by `c(b')` together with the multiset of `U`-orbits
//! of `F`, each recorded as (stabilizer, label) up to `U`-conjugacy. The
//! remaining freedom is the choice of `b'`, i.e. an element of `N_G(U)`,
//! which is removed by taking the lexicographically least key.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::group::{FiniteGroup, Subgroup};
use crate::gset::{coset_numbering, GMap, GSet};
use crate::subgroups::SubgroupTable;

use super::Bispan;

/// Equivalence class of a bispan whose `B` is a single orbit `G/U`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalBispan {
    /// Conjugacy class of the stabilizer of `B`.
    pub class: usize,
    /// `c(b')` for the base point `b'`.
    pub target_point: usize,
    /// `U`-orbits of the fibre over `b'`, as (stabilizer, image in `X`), sorted.
    pub fiber: Vec<(Subgroup, usize)>,
}

fn orbit_key(group: &FiniteGroup, u: &[usize], s: Subgroup, x: usize, xset: &GSet) -> (Subgroup, usize) {
    u.iter().map(|&g| (group.conjugate(s, g), xset.act(g, x))).min().expect("U is nonempty")
}

impl CanonicalBispan {
    /// Key from raw fibre data at a base point with stabilizer `rep(class)`.
    pub(crate) fn from_fiber(
        table: &SubgroupTable,
        class: usize,
        y0: usize,
        raw: &[(Subgroup, usize)],
        xset: &GSet,
        yset: &GSet,
    ) -> Self {
        let group = table.group();
        let u = table.rep(class);
        let u_el = u.elements();
        let norm = group.normalizer(u);
        // one element per coset nU suffices
        let (_, reps) = coset_numbering(group, u);
        let mut best: Option<CanonicalBispan> = None;
        for n in reps.into_iter().filter(|&g| norm.contains(g)) {
            let mut fiber: Vec<(Subgroup, usize)> = raw
                .iter()
                .map(|&(s, x)| orbit_key(group, &u_el, group.conjugate(s, n), xset.act(n, x), xset))
                .collect();
            fiber.sort();
            let cand = CanonicalBispan { class, target_point: yset.act(n, y0), fiber };
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        best.expect("the identity normalizes U")
    }

    /// Keys of the `B`-orbits of `s`, one per orbit.
    pub fn decompose(table: &SubgroupTable, s: &Bispan) -> Result<Vec<CanonicalBispan>> {
        let group = table.group();
        let bset = s.b_set();
        let aset = s.a_set();
        let fibers = s.b().fibers();
        let mut seen = vec![false; aset.size()];
        let mut keys = Vec::new();
        for orbit in bset.orbits() {
            let b0 = orbit[0];
            let (class, g) = table.conjugator_to_rep(bset.stabilizer(b0))?;
            let base = bset.act(g, b0);
            let u = table.rep(class);
            let u_el = u.elements();
            let mut raw = Vec::new();
            for &a in &fibers[base] {
                if seen[a] {
                    continue;
                }
                for &h in &u_el {
                    seen[aset.act(h, a)] = true;
                }
                let stab = Subgroup::from_elements(u_el.iter().copied().filter(|&h| aset.act(h, a) == a));
                raw.push((stab, s.d().apply(a)));
            }
            keys.push(CanonicalBispan::from_fiber(table, class, s.c().apply(base), &raw, s.source(), s.target()));
            debug_assert!(group.order() > 0);
        }
        Ok(keys)
    }

    /// `[X ← ⊔ G/S_i → G/U → Y]` with `gS_i ↦ g·x_i`, `gU ↦ g·y_0`.
    pub fn realize(&self, table: &SubgroupTable, x: &Arc<GSet>, y: &Arc<GSet>) -> Result<Bispan> {
        let group = table.group().clone();
        let u = table.rep(self.class);
        let (u_coset, u_reps) = coset_numbering(&group, u);
        let b = Arc::new(GSet::coset_space(group.clone(), u)?);
        let parts: Vec<GSet> =
            self.fiber.iter().map(|&(s, _)| GSet::coset_space(group.clone(), s)).collect::<Result<_>>()?;
        let refs: Vec<&GSet> = parts.iter().collect();
        let (a, _) = GSet::coproduct(group.clone(), &refs);
        let a = Arc::new(a);
        let mut d = Vec::with_capacity(a.size());
        let mut bm = Vec::with_capacity(a.size());
        for &(s, xi) in &self.fiber {
            let (_, reps) = coset_numbering(&group, s);
            for g in reps {
                d.push(x.act(g, xi));
                bm.push(u_coset[g]);
            }
        }
        let c = u_reps.iter().map(|&g| y.act(g, self.target_point)).collect();
        Ok(Bispan::new_unchecked(
            GMap::new_unchecked(a.clone(), x.clone(), d),
            GMap::new_unchecked(a, b.clone(), bm),
            GMap::new_unchecked(b, y.clone(), c),
        ))
    }

    /// True when every point of `A` has trivial stabilizer.
    pub fn has_free_a(&self) -> bool {
        self.fiber.iter().all(|(s, _)| s.order() == 1)
    }

    /// Number of `A`-points over the base point.
    pub fn fiber_size(&self, table: &SubgroupTable) -> usize {
        let u = table.class_order(self.class);
        self.fiber.iter().map(|(s, _)| u / s.order()).sum()
    }
}

/// Decides equivalence of two representatives by exhaustive search for
/// G-bijections `A → A'`, `B → B'` commuting with the legs. Exponential in
/// the worst case; meant for cross-checking canonical keys.
pub fn bispans_equivalent(s: &Bispan, t: &Bispan) -> bool {
    if s.a_set().size() != t.a_set().size()
        || s.b_set().size() != t.b_set().size()
        || s.source().size() != t.source().size()
        || s.target().size() != t.target().size()
    {
        return false;
    }
    let s_orbits = s.b_set().orbits();
    let t_orbits = t.b_set().orbits();
    let s_fib = s.b().fibers();
    let t_fib = t.b().fibers();
    let compat: Vec<Vec<bool>> = s_orbits
        .iter()
        .map(|so| t_orbits.iter().map(|to| orbit_pieces_match(s, t, &s_fib, &t_fib, so[0], to)).collect())
        .collect();
    perfect_matching(&compat)
}

fn orbit_pieces_match(
    s: &Bispan,
    t: &Bispan,
    s_fib: &[Vec<usize>],
    t_fib: &[Vec<usize>],
    b0: usize,
    t_orbit: &[usize],
) -> bool {
    let bs = s.b_set();
    let bt = t.b_set();
    let stab = bs.stabilizer(b0);
    let u = stab.elements();
    t_orbit.iter().any(|&b1| {
        bt.stabilizer(b1) == stab
            && s.c().apply(b0) == t.c().apply(b1)
            && s_fib[b0].len() == t_fib[b1].len()
            && fibers_match(s, t, &u, &s_fib[b0], &t_fib[b1])
    })
}

fn fibers_match(s: &Bispan, t: &Bispan, u: &[usize], fs: &[usize], ft: &[usize]) -> bool {
    let orbits = |set: &GSet, fib: &[usize]| -> Vec<Vec<usize>> {
        let mut seen = HashMap::new();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for &a in fib {
            if seen.contains_key(&a) {
                continue;
            }
            let mut o: Vec<usize> = u.iter().map(|&h| set.act(h, a)).collect();
            o.sort();
            o.dedup();
            for &p in &o {
                seen.insert(p, out.len());
            }
            out.push(o);
        }
        out
    };
    let os = orbits(s.a_set(), fs);
    let ot = orbits(t.a_set(), ft);
    if os.len() != ot.len() {
        return false;
    }
    let mut used = vec![false; ot.len()];
    search_fiber(s, t, u, &os, &ot, 0, &mut used)
}

fn search_fiber(
    s: &Bispan,
    t: &Bispan,
    u: &[usize],
    os: &[Vec<usize>],
    ot: &[Vec<usize>],
    i: usize,
    used: &mut [bool],
) -> bool {
    if i == os.len() {
        return true;
    }
    let a = os[i][0];
    let sa = s.a_set();
    let ta = t.a_set();
    let stab: Vec<usize> = u.iter().copied().filter(|&h| sa.act(h, a) == a).collect();
    for j in 0..ot.len() {
        if used[j] || ot[j].len() != os[i].len() {
            continue;
        }
        // candidate images of a: same stabilizer in U and same label
        let ok = ot[j].iter().any(|&a1| {
            t.d().apply(a1) == s.d().apply(a)
                && stab.iter().all(|&h| ta.act(h, a1) == a1)
                && u.iter().filter(|&&h| ta.act(h, a1) == a1).count() == stab.len()
        });
        if ok {
            used[j] = true;
            if search_fiber(s, t, u, os, ot, i + 1, used) {
                return true;
            }
            used[j] = false;
        }
    }
    false
}

fn perfect_matching(compat: &[Vec<bool>]) -> bool {
    let n = compat.len();
    if compat.iter().any(|row| row.len() != n) {
        return false;
    }
    let mut match_of: Vec<Option<usize>> = vec![None; n];
    fn augment(i: usize, compat: &[Vec<bool>], seen: &mut [bool], match_of: &mut [Option<usize>]) -> bool {
        for j in 0..compat[i].len() {
            if compat[i][j] && !seen[j] {
                seen[j] = true;
                if match_of[j].is_none_or(|k| augment(k, compat, seen, match_of)) {
                    match_of[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    (0..n).all(|i| {
        let mut seen = vec![false; n];
        augment(i, compat, &mut seen, &mut match_of)
    })
}

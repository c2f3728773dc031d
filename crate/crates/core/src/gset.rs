//! Finite G-sets, equivariant maps, pullbacks and dependent products.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::subgroups::SubgroupTable;

/// Upper bound on the number of points any construction may produce.
pub const POINT_CAP: usize = 1_000_000;

/// A finite left G-set stored as an action table.
#[derive(Clone, PartialEq, Eq)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    size: usize,
    // act[g * size + x] = g·x
    act: Vec<u32>,
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GSet({} points over {})", self.size, self.group.spec())
    }
}

impl GSet {
    /// Builds a G-set from `act(g, x)`, checking the action axioms.
    pub fn from_fn(group: Arc<FiniteGroup>, size: usize, act: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = group.order();
        if size > POINT_CAP {
            return Err(Error::SizeCap(format!("G-set with {size} points exceeds {POINT_CAP}")));
        }
        let mut table = Vec::with_capacity(n * size);
        for g in 0..n {
            for x in 0..size {
                let y = act(g, x);
                if y >= size {
                    return Err(Error::InvalidGSet(format!("{g}·{x} = {y} out of range")));
                }
                table.push(y as u32);
            }
        }
        let set = GSet { group, size, act: table };
        set.check_axioms()?;
        Ok(set)
    }

    /// Builds without checking the axioms; callers guarantee them.
    pub(crate) fn from_table_unchecked(group: Arc<FiniteGroup>, size: usize, act: Vec<u32>) -> Self {
        debug_assert_eq!(act.len(), group.order() * size);
        GSet { group, size, act }
    }

    fn check_axioms(&self) -> Result<()> {
        let g = &self.group;
        for x in 0..self.size {
            if self.act(0, x) != x {
                return Err(Error::InvalidGSet(format!("identity moves {x}")));
            }
        }
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.mul(a, b);
                for x in 0..self.size {
                    if self.act(a, self.act(b, x)) != self.act(ab, x) {
                        return Err(Error::InvalidGSet(format!("action not compatible at ({a},{b},{x})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty(group: Arc<FiniteGroup>) -> Self {
        GSet { group, size: 0, act: Vec::new() }
    }

    /// `n` fixed points.
    pub fn trivial(group: Arc<FiniteGroup>, n: usize) -> Self {
        let act = (0..group.order()).flat_map(|_| 0..n as u32).collect();
        GSet { group, size: n, act }
    }

    /// Left cosets `G/H`, numbered by first appearance of `gH` for `g = 0, 1, ...`;
    /// point 0 is `H` itself.
    pub fn coset_space(group: Arc<FiniteGroup>, h: Subgroup) -> Result<Self> {
        if !group.is_subgroup(h) {
            return Err(Error::NotSubgroup(format!("{h:?} in {}", group.spec())));
        }
        let (coset_of, reps) = coset_numbering(&group, h);
        let n = group.order();
        let size = reps.len();
        let mut act = Vec::with_capacity(n * size);
        for g in 0..n {
            for &r in &reps {
                act.push(coset_of[group.mul(g, r)] as u32);
            }
        }
        Ok(GSet { group, size, act })
    }

    /// `G/e`, with point `g` equal to the group element `g`.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let act = (0..n).flat_map(|g| (0..n).map(move |x| (g, x))).map(|(g, x)| group.mul(g, x) as u32).collect();
        GSet { group, size: n, act }
    }

    /// `⊔ G/H_i`.
    pub fn from_orbits(group: Arc<FiniteGroup>, stabilizers: &[Subgroup]) -> Result<Self> {
        let parts: Vec<GSet> =
            stabilizers.iter().map(|&h| GSet::coset_space(group.clone(), h)).collect::<Result<_>>()?;
        let refs: Vec<&GSet> = parts.iter().collect();
        Ok(GSet::coproduct(group, &refs).0)
    }

    /// Disjoint union with the offset of each summand.
    pub fn coproduct(group: Arc<FiniteGroup>, parts: &[&GSet]) -> (GSet, Vec<usize>) {
        let mut offsets = Vec::with_capacity(parts.len());
        let mut size = 0;
        for p in parts {
            offsets.push(size);
            size += p.size;
        }
        let n = group.order();
        let mut act = Vec::with_capacity(n * size);
        for g in 0..n {
            for (p, &off) in parts.iter().zip(&offsets) {
                act.extend((0..p.size).map(|x| (p.act(g, x) + off) as u32));
            }
        }
        (GSet { group, size, act }, offsets)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g * self.size + x] as usize
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        Subgroup::from_elements(self.group.elements().filter(|&g| self.act(g, x) == x))
    }

    /// `|X^H|`.
    pub fn fixed_points(&self, h: Subgroup) -> usize {
        let hs = h.elements();
        (0..self.size).filter(|&x| hs.iter().all(|&g| self.act(g, x) == x)).count()
    }

    /// The orbit of `x`, sorted.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.group.elements().map(|g| self.act(g, x)).collect();
        o.sort();
        o.dedup();
        o
    }

    /// Orbits as sorted point lists, ordered by their smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for x in 0..self.size {
            if !seen[x] {
                let o = self.orbit(x);
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn orbit_decomposition(&self, table: &SubgroupTable) -> OrbitDecomposition {
        let orbits = self
            .orbits()
            .into_iter()
            .map(|points| {
                let base = points[0];
                let stabilizer = self.stabilizer(base);
                let class = table.class_of(stabilizer).expect("stabilizers are subgroups");
                OrbitInfo { base, stabilizer, class, points }
            })
            .collect();
        OrbitDecomposition { orbits }
    }

    /// Sorted class indices of orbit stabilizers.
    pub fn orbit_type(&self, table: &SubgroupTable) -> Vec<usize> {
        let mut v: Vec<usize> = self.orbit_decomposition(table).orbits.iter().map(|o| o.class).collect();
        v.sort();
        v
    }

    pub fn to_json(&self, table: &SubgroupTable) -> GSetJson {
        let dec = self.orbit_decomposition(table);
        GSetJson {
            group_spec: self.group.spec().to_string(),
            orbit_stabilizer_classes: dec.orbits.iter().map(|o| o.class).collect(),
        }
    }

    /// `⊔ G/U_i` over the class representatives listed in `json`.
    pub fn from_json(json: &GSetJson, table: &SubgroupTable) -> Result<Self> {
        let reps: Vec<Subgroup> = json
            .orbit_stabilizer_classes
            .iter()
            .map(|&c| {
                if c < table.num_classes() {
                    Ok(table.rep(c))
                } else {
                    Err(Error::Parse(format!("class index {c} out of range")))
                }
            })
            .collect::<Result<_>>()?;
        GSet::from_orbits(table.group().clone(), &reps)
    }
}

/// Left coset numbering: `coset_of[g]` and one representative per coset.
pub(crate) fn coset_numbering(group: &FiniteGroup, h: Subgroup) -> (Vec<usize>, Vec<usize>) {
    let mut coset_of = vec![usize::MAX; group.order()];
    let mut reps = Vec::new();
    let hs = h.elements();
    for g in group.elements() {
        if coset_of[g] == usize::MAX {
            for &x in &hs {
                coset_of[group.mul(g, x)] = reps.len();
            }
            reps.push(g);
        }
    }
    (coset_of, reps)
}

/// JSON form of a G-set: orbit types over class representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSetJson {
    pub group_spec: String,
    pub orbit_stabilizer_classes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitInfo {
    pub base: usize,
    pub stabilizer: Subgroup,
    pub class: usize,
    pub points: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub orbits: Vec<OrbitInfo>,
}

/// An equivariant map between G-sets.
#[derive(Clone, PartialEq, Eq)]
pub struct GMap {
    source: Arc<GSet>,
    target: Arc<GSet>,
    map: Vec<usize>,
}

impl fmt::Debug for GMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GMap{:?}", self.map)
    }
}

impl GMap {
    pub fn new(source: Arc<GSet>, target: Arc<GSet>, map: Vec<usize>) -> Result<Self> {
        if !Arc::ptr_eq(source.group(), target.group()) && source.group() != target.group() {
            return Err(Error::ObjectMismatch("G-sets over different groups".into()));
        }
        if map.len() != source.size() || map.iter().any(|&y| y >= target.size()) {
            return Err(Error::InvalidGSet("map has wrong length or leaves the target".into()));
        }
        for g in source.group().elements() {
            for x in 0..source.size() {
                if map[source.act(g, x)] != target.act(g, map[x]) {
                    return Err(Error::NotEquivariant(format!("fails at g={g}, x={x}")));
                }
            }
        }
        Ok(GMap { source, target, map })
    }

    pub(crate) fn new_unchecked(source: Arc<GSet>, target: Arc<GSet>, map: Vec<usize>) -> Self {
        GMap { source, target, map }
    }

    pub fn identity(x: Arc<GSet>) -> Self {
        let map = (0..x.size()).collect();
        GMap { source: x.clone(), target: x, map }
    }

    /// The unique map to the one-point G-set.
    pub fn to_point(x: Arc<GSet>) -> Self {
        let pt = Arc::new(GSet::trivial(x.group().clone(), 1));
        GMap { map: vec![0; x.size()], source: x, target: pt }
    }

    pub fn source(&self) -> &Arc<GSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GSet> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GMap) -> Result<GMap> {
        if first.target.size() != self.source.size() {
            return Err(Error::ObjectMismatch("maps are not composable".into()));
        }
        Ok(GMap {
            source: first.source.clone(),
            target: self.target.clone(),
            map: first.map.iter().map(|&x| self.map[x]).collect(),
        })
    }

    /// Preimage lists indexed by target point.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut f = vec![Vec::new(); self.target.size()];
        for (x, &y) in self.map.iter().enumerate() {
            f[y].push(x);
        }
        f
    }
}

/// `X ×_Z Y` with its two projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub set: Arc<GSet>,
    pub to_left: GMap,
    pub to_right: GMap,
    /// `(x, y)` for each point, ordered by `x` then `y`.
    pub pairs: Vec<(usize, usize)>,
}

/// Fibre product of `f: X → Z` and `g: Y → Z`.
pub fn pullback(f: &GMap, g: &GMap) -> Result<Pullback> {
    if f.target.size() != g.target.size() {
        return Err(Error::ObjectMismatch("pullback of maps with different targets".into()));
    }
    let x = &f.source;
    let y = &g.source;
    let g_fibers = g.fibers();
    let mut pos_in_fiber = vec![0usize; y.size()];
    for fib in &g_fibers {
        for (i, &p) in fib.iter().enumerate() {
            pos_in_fiber[p] = i;
        }
    }
    let mut offset = Vec::with_capacity(x.size());
    let mut pairs = Vec::new();
    for a in 0..x.size() {
        offset.push(pairs.len());
        for &b in &g_fibers[f.map[a]] {
            pairs.push((a, b));
        }
        if pairs.len() > POINT_CAP {
            return Err(Error::SizeCap(format!("pullback exceeds {POINT_CAP} points")));
        }
    }
    let size = pairs.len();
    let group = x.group().clone();
    let mut act = Vec::with_capacity(group.order() * size);
    for h in group.elements() {
        for &(a, b) in &pairs {
            act.push((offset[x.act(h, a)] + pos_in_fiber[y.act(h, b)]) as u32);
        }
    }
    let set = Arc::new(GSet::from_table_unchecked(group, size, act));
    let to_left = GMap::new_unchecked(set.clone(), x.clone(), pairs.iter().map(|p| p.0).collect());
    let to_right = GMap::new_unchecked(set.clone(), y.clone(), pairs.iter().map(|p| p.1).collect());
    Ok(Pullback { set, to_left, to_right, pairs })
}

/// The exponential diagram of `p: A → X` along `f: X → Y`:
///
/// ```text
/// X <-p- A <-eval- X ×_Y Π_f A
/// |f                  |proj
/// Y <-pi_map-  Π_f A ==
/// ```
#[derive(Clone, Debug)]
pub struct DependentProduct {
    /// `Π_f A`; a point over `y` is a section of `p` over `f^-1(y)`.
    pub pi: Arc<GSet>,
    pub pi_map: GMap,
    /// `X ×_Y Π_f A`.
    pub pullback: Arc<GSet>,
    pub eval: GMap,
    pub proj: GMap,
    /// Section values: point `s` of `pi` sends the `i`-th point of
    /// `f^-1(pi_map(s))` (ascending) to `sections[s][i]`.
    pub sections: Vec<Vec<usize>>,
}

pub fn dependent_product(p: &GMap, f: &GMap) -> Result<DependentProduct> {
    if p.target.size() != f.source.size() {
        return Err(Error::ObjectMismatch("p and f are not composable".into()));
    }
    let group = f.source.group().clone();
    let x_set = &f.source;
    let y_set = &f.target;
    let a_set = &p.source;
    let f_fib = f.fibers();
    let p_fib = p.fibers();
    let mut pos_in_pfib = vec![0usize; a_set.size()];
    for fib in &p_fib {
        for (i, &a) in fib.iter().enumerate() {
            pos_in_pfib[a] = i;
        }
    }
    let mut pos_in_ffib = vec![0usize; x_set.size()];
    for fib in &f_fib {
        for (i, &x) in fib.iter().enumerate() {
            pos_in_ffib[x] = i;
        }
    }
    // sections over y, mixed radix with the first fiber point most significant
    let mut y_offset = Vec::with_capacity(y_set.size());
    let mut total: usize = 0;
    for fib in &f_fib {
        y_offset.push(total);
        let mut count: usize = 1;
        for &x in fib {
            count = count
                .checked_mul(p_fib[x].len())
                .filter(|&c| c <= POINT_CAP)
                .ok_or_else(|| Error::SizeCap(format!("dependent product exceeds {POINT_CAP} points")))?;
        }
        total += count;
        if total > POINT_CAP {
            return Err(Error::SizeCap(format!("dependent product exceeds {POINT_CAP} points")));
        }
    }
    let mut sections = Vec::with_capacity(total);
    let mut pi_map = Vec::with_capacity(total);
    for (y, fib) in f_fib.iter().enumerate() {
        let radices: Vec<usize> = fib.iter().map(|&x| p_fib[x].len()).collect();
        if radices.contains(&0) {
            continue;
        }
        let mut digits = vec![0usize; fib.len()];
        loop {
            sections.push(fib.iter().zip(&digits).map(|(&x, &d)| p_fib[x][d]).collect::<Vec<_>>());
            pi_map.push(y);
            // increment, least significant digit last
            let mut i = fib.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < radices[i] {
                    break;
                }
                digits[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX || fib.is_empty() {
                break;
            }
        }
    }
    debug_assert_eq!(sections.len(), total);
    let index_of = |y: usize, values: &[usize]| -> usize {
        let fib = &f_fib[y];
        let mut idx = 0;
        for (k, &a) in values.iter().enumerate() {
            idx = idx * p_fib[fib[k]].len() + pos_in_pfib[a];
        }
        y_offset[y] + idx
    };
    let n = group.order();
    let mut act = Vec::with_capacity(n * total);
    let mut buf = Vec::new();
    for g in 0..n {
        let gi = group.inv(g);
        for (s, vals) in sections.iter().enumerate() {
            let y = pi_map[s];
            let gy = y_set.act(g, y);
            let src_fib = &f_fib[y];
            buf.clear();
            // (g·s)(x') = g·s(g^-1 x')
            for &xp in &f_fib[gy] {
                let x = x_set.act(gi, xp);
                let a = vals[pos_in_ffib[x]];
                debug_assert_eq!(src_fib[pos_in_ffib[x]], x);
                buf.push(a_set.act(g, a));
            }
            act.push(index_of(gy, &buf) as u32);
        }
    }
    let pi = Arc::new(GSet::from_table_unchecked(group.clone(), total, act));
    let pi_map = GMap::new_unchecked(pi.clone(), y_set.clone(), pi_map);
    let pb = pullback(f, &pi_map)?;
    let eval_map: Vec<usize> = pb.pairs.iter().map(|&(x, s)| sections[s][pos_in_ffib[x]]).collect();
    let eval = GMap::new_unchecked(pb.set.clone(), a_set.clone(), eval_map);
    Ok(DependentProduct { pi, pi_map, pullback: pb.set, eval, proj: pb.to_right, sections })
}

/// An equivariant bijection `X → Y` if one exists.
pub fn gset_iso(x: &GSet, y: &GSet) -> Option<Vec<usize>> {
    if x.size() != y.size() || x.group() != y.group() {
        return None;
    }
    let group = x.group();
    let y_orbits = y.orbits();
    let mut used = vec![false; y_orbits.len()];
    let mut map = vec![usize::MAX; x.size()];
    for ox in x.orbits() {
        let x0 = ox[0];
        let s = x.stabilizer(x0);
        let mut matched = false;
        for (j, oy) in y_orbits.iter().enumerate() {
            if used[j] || oy.len() != ox.len() {
                continue;
            }
            // a point of the orbit with stabilizer exactly s
            let Some(&y1) = oy.iter().find(|&&p| y.stabilizer(p) == s) else { continue };
            used[j] = true;
            for h in group.elements() {
                map[x.act(h, x0)] = y.act(h, y1);
            }
            matched = true;
            break;
        }
        if !matched {
            return None;
        }
    }
    Some(map)
}

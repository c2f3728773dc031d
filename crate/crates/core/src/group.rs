//! Finite groups given by full multiplication tables.
//!
//! Elements are numbered `0..order` with the identity always at `0`. Groups
//! are built from a small spec language (`C4`, `D3`, `S3`, `C2 x C2`,
//! `perm:(1 2 3),(1 2)`, `cayley:<path>`); the numbering produced for a given
//! spec is deterministic.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group order the library accepts.
pub const DEFAULT_ORDER_CAP: usize = 96;

/// A subgroup (or any subset) of a group of order at most 128, as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subgroup(pub u128);

impl Subgroup {
    pub fn from_elements<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        Subgroup(elems.into_iter().fold(0u128, |m, g| m | (1u128 << g)))
    }

    pub fn order(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(&self, g: usize) -> bool {
        self.0 >> g & 1 == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup(self.0 & other.0)
    }

    /// Sorted element indices.
    pub fn elements(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.order());
        let mut m = self.0;
        while m != 0 {
            let g = m.trailing_zeros() as usize;
            out.push(g);
            m &= m - 1;
        }
        out
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.elements())
    }
}

/// A finite group with a validated multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    spec: String,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.spec, self.order)
    }
}

#[derive(Serialize, Deserialize)]
struct CayleyJson {
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Builds a group from a Cayley table `table[a][b] = a * b`, checking the
    /// group axioms. If the identity is not element 0 it is swapped there.
    pub fn from_table(table: Vec<Vec<usize>>, spec: impl Into<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::GroupAxioms("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::GroupAxioms("table is not an n x n table over 0..n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::GroupAxioms("no two-sided identity".into()))?;
        // relabel so that the identity is 0
        let relabel = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[relabel(a) * n + relabel(b)] = relabel(table[a][b]);
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] == 0 {
                    if mul[b * n + a] != 0 {
                        return Err(Error::GroupAxioms(format!("{b} is only a one-sided inverse of {a}")));
                    }
                    inv[a] = b;
                    break;
                }
            }
            if inv[a] == usize::MAX {
                return Err(Error::GroupAxioms(format!("element {a} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b];
                for c in 0..n {
                    if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(Error::GroupAxioms(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { order: n, mul, inv, spec: spec.into() })
    }

    /// The group generated by permutations of `0..degree`, elements sorted
    /// lexicographically by their image lists (so the identity comes first).
    pub fn from_permutations(gens: &[Vec<usize>], cap: usize, spec: impl Into<String>) -> Result<Self> {
        let spec = spec.into();
        let degree = gens.iter().map(|p| p.len()).max().unwrap_or(0);
        let gens: Vec<Vec<usize>> = gens
            .iter()
            .map(|p| {
                let mut q = p.clone();
                q.extend(p.len()..degree);
                q
            })
            .collect();
        for p in &gens {
            let set: BTreeSet<_> = p.iter().copied().collect();
            if set.len() != degree || set.iter().any(|&x| x >= degree) {
                return Err(Error::GroupSpec(spec, "generator is not a permutation".into()));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for s in &gens {
                let q: Vec<usize> = p.iter().map(|&i| s[i]).collect();
                if seen.insert(q.clone()) {
                    if seen.len() > cap {
                        return Err(Error::OrderCap { order: seen.len(), cap });
                    }
                    queue.push_back(q);
                }
            }
        }
        let elems: Vec<Vec<usize>> = seen.into_iter().collect();
        let index: HashMap<&Vec<usize>, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        // (a * b)(i) = a(b(i)): apply b first
        let table = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| {
                        let ab: Vec<usize> = b.iter().map(|&i| a[i]).collect();
                        index[&ab]
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table, spec)
    }

    pub fn trivial() -> Self {
        FiniteGroup { order: 1, mul: vec![0], inv: vec![0], spec: "C1".into() }
    }

    /// Cyclic group; element `k` is the `k`-th power of the generator.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::GroupSpec("C0".into(), "order must be positive".into()));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(table, format!("C{n}"))
    }

    /// Dihedral group of order `2n` (symmetries of the `n`-gon).
    pub fn dihedral(n: usize, cap: usize) -> Result<Self> {
        let spec = format!("D{n}");
        if n < 2 {
            return Err(Error::GroupSpec(spec, "D<n> needs n >= 2".into()));
        }
        if 2 * n > cap {
            return Err(Error::OrderCap { order: 2 * n, cap });
        }
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        if n == 2 {
            // D2 is the Klein four group; realize it on 4 points
            return FiniteGroup::from_permutations(&[vec![1, 0, 3, 2], vec![2, 3, 0, 1]], cap, spec);
        }
        FiniteGroup::from_permutations(&[rot, refl], cap, spec)
    }

    pub fn symmetric(n: usize, cap: usize) -> Result<Self> {
        let spec = format!("S{n}");
        if n == 0 {
            return Err(Error::GroupSpec(spec, "S<n> needs n >= 1".into()));
        }
        let order: usize = (1..=n).product();
        if order > cap {
            return Err(Error::OrderCap { order, cap });
        }
        if n == 1 {
            return Ok(FiniteGroup { spec, ..FiniteGroup::trivial() });
        }
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        FiniteGroup::from_permutations(&[swap, cycle], cap, spec)
    }

    /// Direct product; the pair `(a, b)` is numbered `a * |B| + b`.
    pub fn product(a: &FiniteGroup, b: &FiniteGroup, cap: usize) -> Result<Self> {
        let n = a.order * b.order;
        if n > cap {
            return Err(Error::OrderCap { order: n, cap });
        }
        let m = b.order;
        let table = (0..n).map(|x| (0..n).map(|y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m)).collect()).collect();
        FiniteGroup::from_table(table, format!("{} x {}", a.spec, b.spec))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g h g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv[g])
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_elements(self.elements())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup(1)
    }

    /// Smallest subgroup containing every element of `gens`.
    pub fn closure(&self, gens: Subgroup) -> Subgroup {
        let mut mask = gens.0 | 1;
        let mut frontier = Subgroup(mask).elements();
        let gen_list = gens.elements();
        while let Some(x) = frontier.pop() {
            for &s in &gen_list {
                let y = self.mul(x, s);
                if mask >> y & 1 == 0 {
                    mask |= 1 << y;
                    frontier.push(y);
                }
            }
        }
        Subgroup(mask)
    }

    pub fn is_subgroup(&self, s: Subgroup) -> bool {
        if !s.contains(0) || s.0 >> self.order != 0 {
            return false;
        }
        let el = s.elements();
        el.iter().all(|&a| el.iter().all(|&b| s.contains(self.mul(a, b))))
    }

    /// `g S g^-1`.
    pub fn conjugate(&self, s: Subgroup, g: usize) -> Subgroup {
        Subgroup::from_elements(s.elements().into_iter().map(|h| self.conj(g, h)))
    }

    pub fn normalizer(&self, s: Subgroup) -> Subgroup {
        Subgroup::from_elements(self.elements().filter(|&g| self.conjugate(s, g) == s))
    }

    pub fn is_normal(&self, s: Subgroup) -> bool {
        self.elements().all(|g| self.conjugate(s, g) == s)
    }

    /// Is `f` (given as an element map into `target`) a homomorphism?
    pub fn is_homomorphism(&self, target: &FiniteGroup, f: &[usize]) -> bool {
        f.len() == self.order
            && f.iter().all(|&x| x < target.order)
            && self.elements().all(|a| self.elements().all(|b| f[self.mul(a, b)] == target.mul(f[a], f[b])))
    }

    /// Quotient by a normal subgroup together with the projection map.
    /// Cosets are numbered by their smallest element.
    pub fn quotient(&self, normal: Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(normal) || !self.is_normal(normal) {
            return Err(Error::NotSubgroup(format!("{normal:?} is not a normal subgroup")));
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset_of[g] == usize::MAX {
                for h in normal.elements() {
                    coset_of[self.mul(g, h)] = reps.len();
                }
                reps.push(g);
            }
        }
        let table = reps.iter().map(|&a| reps.iter().map(|&b| coset_of[self.mul(a, b)]).collect()).collect();
        let q = FiniteGroup::from_table(table, format!("{} / {:?}", self.spec, normal))?;
        Ok((q, coset_of))
    }

    /// Full Cayley table as nested rows.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }
}

/// Parses a group spec with the default order cap.
pub fn make_group(spec: &str) -> Result<Arc<FiniteGroup>> {
    make_group_with_cap(spec, DEFAULT_ORDER_CAP).map(Arc::new)
}

pub fn make_group_with_cap(spec: &str, cap: usize) -> Result<FiniteGroup> {
    let trimmed = spec.trim();
    let bad = |why: &str| Error::GroupSpec(trimmed.to_string(), why.to_string());
    if let Some(rest) = trimmed.strip_prefix("perm:") {
        let gens = parse_cycle_generators(rest).map_err(|e| bad(&e))?;
        let g = FiniteGroup::from_permutations(&gens, cap, trimmed)?;
        return Ok(g);
    }
    if let Some(path) = trimmed.strip_prefix("cayley:") {
        let text = std::fs::read_to_string(path.trim()).map_err(|e| Error::Io(format!("{path}: {e}")))?;
        let parsed: CayleyJson = serde_json::from_str(&text).map_err(|e| bad(&e.to_string()))?;
        let g = FiniteGroup::from_table(parsed.table, trimmed)?;
        if g.order > cap {
            return Err(Error::OrderCap { order: g.order, cap });
        }
        return Ok(g);
    }
    let factors: Vec<&str> = trimmed.split(" x ").map(str::trim).collect();
    if factors.len() > 1 {
        let mut acc = make_group_with_cap(factors[0], cap)?;
        for f in &factors[1..] {
            let next = make_group_with_cap(f, cap)?;
            acc = FiniteGroup::product(&acc, &next, cap)?;
        }
        acc.spec = trimmed.to_string();
        return Ok(acc);
    }
    let (kind, num) = trimmed.split_at(trimmed.chars().next().map_or(0, |c| c.len_utf8()));
    let n: usize = num.parse().map_err(|_| bad("expected C<n>, D<n>, S<n>, a product, perm: or cayley:"))?;
    let g = match kind {
        "C" => {
            if n > cap {
                return Err(Error::OrderCap { order: n, cap });
            }
            FiniteGroup::cyclic(n)?
        }
        "D" => FiniteGroup::dihedral(n, cap)?,
        "S" => FiniteGroup::symmetric(n, cap)?,
        _ => return Err(bad("unknown group family")),
    };
    Ok(g)
}

/// Parses `(1 2 3)(4 5),(1 2)`: generators separated by commas, each a
/// product of disjoint or overlapping cycles (applied right to left).
fn parse_cycle_generators(text: &str) -> std::result::Result<Vec<Vec<usize>>, String> {
    let mut cycles_per_gen: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut degree = 0;
    for gen in text.split(',') {
        let gen = gen.trim();
        if gen.is_empty() {
            return Err("empty generator".into());
        }
        let mut cycles = Vec::new();
        let mut rest = gen;
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or("expected `(`")?;
            let close = open.find(')').ok_or("unclosed cycle")?;
            let pts: Vec<usize> = open[..close]
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| format!("bad point `{t}`")))
                .collect::<std::result::Result<_, _>>()?;
            let uniq: BTreeSet<_> = pts.iter().collect();
            if uniq.len() != pts.len() {
                return Err("repeated point in a cycle".into());
            }
            degree = degree.max(pts.iter().map(|&p| p + 1).max().unwrap_or(0));
            cycles.push(pts);
            rest = open[close + 1..].trim_start();
        }
        cycles_per_gen.push(cycles);
    }
    Ok(cycles_per_gen
        .into_iter()
        .map(|cycles| {
            let mut perm: Vec<usize> = (0..degree).collect();
            for cyc in cycles.iter().rev() {
                let mut step: Vec<usize> = (0..degree).collect();
                for (i, &p) in cyc.iter().enumerate() {
                    step[p] = cyc[(i + 1) % cyc.len()];
                }
                perm = perm.iter().map(|&x| step[x]).collect();
            }
            perm
        })
        .collect())
}

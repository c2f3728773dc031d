//! Named property suites, seeded and exact. The CLI's `verify` command and
//! the acceptance tests both run these.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bispan::{compose, VirtualBispan};
use crate::error::{Error, Result};
use crate::group::{make_group, FiniteGroup};
use crate::gset::{dependent_product, pullback, GMap, GSet};
use crate::poly::IntPoly;
use crate::random::{
    random_gmap, random_ideal_witness, random_ints, random_nonempty_gset, random_poly, random_virtual, rng_from_seed,
};
use crate::ring::{Integers, IntegersMod, PolyRing, Ring};
use crate::subgroups::SubgroupTable;
use crate::teichmuller::{
    burnside_t, ideal_check, mackey_product_identity, norm_of_sum_identity, orbit_coefficients, point, regular, rho,
    teichmuller_t, witt_law_check, Form, Law,
};
use crate::witt::{
    lemma43_holds, lemma45_holds, lemma47_holds, m_polys_via_xi, p_polys_via_orbits, restr_surjection, s_polys_via_xi,
    universal_polys, universal_polys_uncached, WittVector,
};

/// Suite names accepted by [`run_suite`].
pub const SUITES: &[&str] = &[
    "ghost-hom",
    "integrality",
    "classical",
    "cross-route",
    "witt-laws",
    "bispan-laws",
    "lemmas",
    "main-theorem",
    "burnside",
    "ideal",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool) -> Self {
        Check { name: name.into(), passed, detail: None }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        if !self.passed {
            self.detail = Some(detail.into());
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.detail {
                Some(d) => writeln!(f, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, d)?,
                None => writeln!(f, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name)?,
            }
        }
        write!(f, "{} {} (seed {})", self.suite, if self.passed { "passed" } else { "FAILED" }, self.seed)
    }
}

/// Sample counts; the defaults match the acceptance criteria.
#[derive(Clone, Debug)]
pub struct SuiteSizes {
    pub ghost_pairs: usize,
    pub ring_triples: usize,
    pub compose_triples: usize,
    pub semiring_samples: usize,
    pub adjunction_instances: usize,
    pub integer_substitutions: usize,
    pub law_pairs: usize,
    pub burnside_pairs: usize,
    pub ideal_witnesses: usize,
    pub restr_samples: usize,
}

impl Default for SuiteSizes {
    fn default() -> Self {
        SuiteSizes {
            ghost_pairs: 200,
            ring_triples: 20,
            compose_triples: 100,
            semiring_samples: 100,
            adjunction_instances: 25,
            integer_substitutions: 100,
            law_pairs: 50,
            burnside_pairs: 100,
            ideal_witnesses: 50,
            restr_samples: 100,
        }
    }
}

fn default_groups(suite: &str) -> &'static [&'static str] {
    match suite {
        "ghost-hom" | "integrality" | "witt-laws" => &["C2", "C3", "C4", "C2 x C2", "S3"],
        "classical" => &["C2", "C4", "C3", "C9"],
        "cross-route" => &["C2", "C3", "C4"],
        "bispan-laws" | "main-theorem" | "ideal" => &["C2", "S3"],
        "lemmas" => &["C2", "C3", "C4", "S3"],
        "burnside" => &["S3"],
        _ => &[],
    }
}

fn load_table(spec: &str) -> Result<Arc<SubgroupTable>> {
    Ok(Arc::new(SubgroupTable::new(make_group(spec)?)?))
}

/// Runs `suite` on the given group (or on the suite's default groups).
pub fn run_suite(suite: &str, group: Option<&str>, seed: u64) -> Result<SuiteReport> {
    run_suite_with(suite, group, seed, &SuiteSizes::default())
}

pub fn run_suite_with(suite: &str, group: Option<&str>, seed: u64, sizes: &SuiteSizes) -> Result<SuiteReport> {
    if !SUITES.contains(&suite) {
        return Err(Error::Parse(format!("unknown suite '{suite}'; expected one of {}", SUITES.join(", "))));
    }
    let specs: Vec<&str> = match group {
        Some(g) => vec![g],
        None => default_groups(suite).to_vec(),
    };
    let mut rng = rng_from_seed(seed);
    let mut checks = Vec::new();
    for spec in &specs {
        let table = load_table(spec)?;
        let label = table.group().spec().to_string();
        let found = match suite {
            "ghost-hom" => ghost_hom(&table, &mut rng, sizes.ghost_pairs),
            "integrality" => integrality(&table),
            "classical" => classical(&table),
            "cross-route" => cross_route(&table),
            "witt-laws" => witt_laws(&table, &mut rng, sizes.ring_triples),
            "bispan-laws" => bispan_laws(&table, &mut rng, sizes),
            "lemmas" => lemmas(&table, &mut rng, sizes.integer_substitutions, group.is_some()),
            "main-theorem" => main_theorem(&table, &mut rng, sizes.law_pairs),
            "burnside" => burnside(&table, &mut rng, sizes.burnside_pairs),
            "ideal" => ideal(&table, &mut rng, sizes),
            _ => unreachable!(),
        }?;
        checks.extend(found.into_iter().map(|mut c| {
            c.name = format!("{label}: {}", c.name);
            c
        }));
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(SuiteReport { suite: suite.to_string(), seed, passed, checks })
}

fn witt(table: &Arc<SubgroupTable>, coords: Vec<BigInt>) -> WittVector<BigInt> {
    WittVector::new(table.clone(), coords).expect("coordinate count matches")
}

fn ghost_hom(table: &Arc<SubgroupTable>, rng: &mut ChaCha8Rng, pairs: usize) -> Result<Vec<Check>> {
    let k = table.num_classes();
    let (mut add_ok, mut mul_ok) = (true, true);
    for _ in 0..pairs {
        let a = witt(table, random_ints(rng, k, -9, 9));
        let b = witt(table, random_ints(rng, k, -9, 9));
        let (ga, gb) = (a.ghost(&Integers), b.ghost(&Integers));
        let sum: Vec<BigInt> = ga.iter().zip(&gb).map(|(x, y)| x + y).collect();
        let prod: Vec<BigInt> = ga.iter().zip(&gb).map(|(x, y)| x * y).collect();
        add_ok &= a.add(&b, &Integers)?.ghost(&Integers) == sum;
        mul_ok &= a.mul(&b, &Integers)?.ghost(&Integers) == prod;
    }
    Ok(vec![
        Check::new(format!("ghost of sums ({pairs} pairs)"), add_ok),
        Check::new(format!("ghost of products ({pairs} pairs)"), mul_ok),
    ])
}

fn integrality(table: &Arc<SubgroupTable>) -> Result<Vec<Check>> {
    let check = match universal_polys_uncached(table) {
        Ok(_) => Check::new("universal polynomials are integral", true),
        Err(e @ Error::Divisibility(_)) => {
            Check::new("universal polynomials are integral", false).with_detail(e.to_string())
        }
        Err(e) => return Err(e),
    };
    Ok(vec![check])
}

/// `(p, n)` when the group is cyclic of order `p^(n-1)`.
fn cyclic_prime_power(group: &FiniteGroup) -> Option<(u32, usize)> {
    let order = group.order();
    if order < 2 || !group.elements().any(|g| group.element_order(g) == order) {
        return None;
    }
    let p = (2..=order).find(|d| order.is_multiple_of(*d))?;
    let mut m = order;
    let mut n = 1;
    while m.is_multiple_of(p) {
        m /= p;
        n += 1;
    }
    (m == 1).then_some((p as u32, n))
}

/// Classical `p`-typical Witt polynomials of length `n` for sum, product and
/// negation, by inverting `w_i = Σ_{j ≤ i} p^j x_j^{p^{i-j}}` over ℚ.
pub fn classical_witt_polys(p: u32, n: usize) -> Result<(Vec<IntPoly>, Vec<IntPoly>, Vec<IntPoly>)> {
    let pw = |j: usize| BigInt::from(p).pow(j as u32);
    let ghost = |xs: &[IntPoly], i: usize| -> IntPoly {
        (0..=i).fold(IntPoly::zero(), |w, j| w + xs[j].pow(p.pow((i - j) as u32)).scale(&pw(j)))
    };
    let solve = |targets: Vec<IntPoly>| -> Result<Vec<IntPoly>> {
        let mut out: Vec<IntPoly> = Vec::with_capacity(n);
        for (i, target) in targets.into_iter().enumerate() {
            let mut rest = target;
            for (j, xj) in out.iter().enumerate() {
                rest = rest - xj.pow(p.pow((i - j) as u32)).scale(&pw(j));
            }
            let q = rest.to_rational().scale(&BigRational::new(BigInt::from(1), pw(i)));
            out.push(q.to_integer().ok_or_else(|| Error::Divisibility(format!("classical coordinate {i}")))?);
        }
        Ok(out)
    };
    let a: Vec<IntPoly> = (0..n).map(IntPoly::var).collect();
    let b: Vec<IntPoly> = (n..2 * n).map(IntPoly::var).collect();
    let s = solve((0..n).map(|i| ghost(&a, i) + ghost(&b, i)).collect())?;
    let pr = solve((0..n).map(|i| ghost(&a, i) * ghost(&b, i)).collect())?;
    let m = solve((0..n).map(|i| -ghost(&a, i)).collect())?;
    Ok((s, pr, m))
}

fn classical(table: &Arc<SubgroupTable>) -> Result<Vec<Check>> {
    let (p, n) = cyclic_prime_power(table.group())
        .ok_or_else(|| Error::GroupSpec(table.group().spec().to_string(), "not a nontrivial cyclic p-group".into()))?;
    let indexing =
        table.num_classes() == n && (0..n).all(|i| table.class_order(i) == (p as usize).pow((n - 1 - i) as u32));
    let w = universal_polys(table)?;
    let (s, pr, m) = classical_witt_polys(p, n)?;
    Ok(vec![
        Check::new("classes are the subgroups of index p^i", indexing),
        Check::new("sum polynomials are classical", w.s == s),
        Check::new("product polynomials are classical", w.p == pr),
        Check::new("negation polynomials are classical", w.m == m),
    ])
}

fn cross_route(table: &Arc<SubgroupTable>) -> Result<Vec<Check>> {
    let w = universal_polys(table)?;
    Ok(vec![
        Check::new("negation: xi-recursion = ghost inversion", m_polys_via_xi(table)? == w.m),
        Check::new("product: orbit expansion = ghost inversion", p_polys_via_orbits(table)? == w.p),
        Check::new("sum: xi-recursion = ghost inversion", s_polys_via_xi(table)? == w.s),
    ])
}

fn ring_axioms<R: Ring>(table: &Arc<SubgroupTable>, ring: &R, v: [Vec<R::Elem>; 3]) -> Result<bool> {
    let [a, b, c] = v.map(|coords| WittVector::new(table.clone(), coords).expect("coordinate count matches"));
    let zero = WittVector::zero(table.clone(), ring);
    let one = WittVector::one(table.clone(), ring);
    let ab = a.add(&b, ring)?;
    Ok(ab == b.add(&a, ring)?
        && a.mul(&b, ring)? == b.mul(&a, ring)?
        && ab.add(&c, ring)? == a.add(&b.add(&c, ring)?, ring)?
        && a.mul(&b, ring)?.mul(&c, ring)? == a.mul(&b.mul(&c, ring)?, ring)?
        && a.mul(&b.add(&c, ring)?, ring)? == a.mul(&b, ring)?.add(&a.mul(&c, ring)?, ring)?
        && a.add(&zero, ring)? == a
        && a.mul(&one, ring)? == a
        && a.add(&a.neg(ring)?, ring)? == zero)
}

fn witt_laws(table: &Arc<SubgroupTable>, rng: &mut ChaCha8Rng, triples: usize) -> Result<Vec<Check>> {
    let k = table.num_classes();
    let mut z = true;
    for _ in 0..triples {
        z &= ring_axioms(table, &Integers, [0, 1, 2].map(|_| random_ints(rng, k, -9, 9)))?;
    }
    let z6 = IntegersMod::new(6);
    let mut zn = true;
    for _ in 0..triples {
        zn &= ring_axioms(table, &z6, [0, 1, 2].map(|_| random_ints(rng, k, 0, 5)))?;
    }
    let zx = PolyRing::new();
    let mut poly = true;
    for _ in 0..triples.div_ceil(10) {
        poly &= ring_axioms(table, &zx, [0, 1, 2].map(|_| (0..k).map(|_| random_poly(rng, 1, 1, 2, 2)).collect()))?;
    }
    Ok(vec![
        Check::new("ring axioms over Z", z),
        Check::new("ring axioms over Z/6", zn),
        Check::new("ring axioms over Z[x]", poly),
    ])
}

/// All equivariant maps `source → target` satisfying `allowed` pointwise.
/// Each orbit representative may only go to a point whose stabilizer
/// contains its own.
fn equivariant_maps(source: &GSet, target: &GSet, allowed: &dyn Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let group = source.group();
    let orbits = source.orbits();
    let candidates: Vec<Vec<usize>> = orbits
        .iter()
        .map(|o| {
            let stab = source.stabilizer(o[0]);
            (0..target.size()).filter(|&t| stab.is_subset_of(&target.stabilizer(t)) && allowed(o[0], t)).collect()
        })
        .collect();
    let mut out = vec![vec![usize::MAX; source.size()]];
    for (orbit, cands) in orbits.iter().zip(&candidates) {
        let mut next = Vec::with_capacity(out.len() * cands.len());
        for partial in &out {
            for &t in cands {
                let mut map = partial.clone();
                for g in group.elements() {
                    map[source.act(g, orbit[0])] = target.act(g, t);
                }
                if orbit.iter().all(|&x| allowed(x, map[x])) {
                    next.push(map);
                }
            }
        }
        out = next;
    }
    out
}

/// For `f: X → Y`, `p: A → X`, `q: C → Y`, checks that
/// `u ↦ ((x, c) ↦ u(c)(x))` is a bijection from maps `C → Π_f A` over `Y`
/// to maps `X ×_Y C → A` over `X`, by enumerating both sides. Both sides
/// split over the orbits of `C`, so each orbit is checked on its own.
pub fn adjunction_is_bijective(f: &GMap, p: &GMap, q: &GMap) -> Result<bool> {
    let group = q.source().group().clone();
    for orbit in q.source().orbits() {
        let r = orbit[0];
        let stab = q.source().stabilizer(r);
        let part = Arc::new(GSet::coset_space(group.clone(), stab)?);
        let (_, reps) = crate::gset::coset_numbering(&group, stab);
        let q_part =
            GMap::new(part, q.target().clone(), reps.iter().map(|&g| q.apply(q.source().act(g, r))).collect())?;
        if !adjunction_on(f, p, &q_part)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn adjunction_on(f: &GMap, p: &GMap, q: &GMap) -> Result<bool> {
    let dp = dependent_product(p, f)?;
    let fibers = f.fibers();
    let mut pos = vec![0usize; f.source().size()];
    for fib in &fibers {
        for (i, &x) in fib.iter().enumerate() {
            pos[x] = i;
        }
    }
    let pb = pullback(f, q)?;
    let left = equivariant_maps(q.source(), &dp.pi, &|c, s| dp.pi_map.apply(s) == q.apply(c));
    let mut right = equivariant_maps(&pb.set, p.source(), &|z, a| p.apply(a) == pb.to_left.apply(z));
    right.sort();
    let mut images: Vec<Vec<usize>> = Vec::with_capacity(left.len());
    for u in &left {
        let v: Vec<usize> = pb.pairs.iter().map(|&(x, c)| dp.sections[u[c]][pos[x]]).collect();
        if right.binary_search(&v).is_err() {
            return Ok(false);
        }
        images.push(v);
    }
    images.sort();
    images.dedup();
    Ok(images.len() == left.len() && left.len() == right.len())
}

fn bispan_laws(table: &Arc<SubgroupTable>, rng: &mut ChaCha8Rng, sizes: &SuiteSizes) -> Result<Vec<Check>> {
    let obj = |rng: &mut ChaCha8Rng| Arc::new(random_nonempty_gset(table, rng, 6));
    let (mut assoc, mut ident) = (true, true);
    let mut redrawn = 0;
    let mut done = 0;
    while done < sizes.compose_triples {
        let (w, x, y, z) = (obj(rng), obj(rng), obj(rng), obj(rng));
        let s = random_virtual(table, rng, &w, &x, 6, 3, true)?;
        let u = random_virtual(table, rng, &x, &y, 6, 3, true)?;
        let v = random_virtual(table, rng, &y, &z, 6, 3, true)?;
        let sides = compose(&u, &s)
            .and_then(|us| compose(&v, &us))
            .and_then(|left| Ok((left, compose(&compose(&v, &u)?, &s)?)));
        let (left, right) = match sides {
            Ok(pair) => pair,
            // an intermediate dependent product over the point cap
            Err(Error::SizeCap(_)) => {
                redrawn += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        assoc &= left == right;
        let (iw, ix) = (VirtualBispan::identity(table.clone(), w)?, VirtualBispan::identity(table.clone(), x)?);
        ident &= compose(&s, &iw)? == s && compose(&ix, &s)? == s;
        done += 1;
    }
    let mut semiring = true;
    for _ in 0..sizes.semiring_samples {
        let (x, y) = (obj(rng), obj(rng));
        let [a, b, c] = [0, 1, 2].map(|_| random_virtual(table, rng, &x, &y, 6, 3, false).expect("objects match"));
        let one = VirtualBispan::one(table.clone(), x.clone(), y.clone())?;
        let zero = VirtualBispan::zero(table.clone(), x, y);
        let ab = a.mul(&b)?;
        semiring &= ab == b.mul(&a)?
            && ab.mul(&c)? == a.mul(&b.mul(&c)?)?
            && a.mul(&b.add(&c)?)? == ab.add(&a.mul(&c)?)?
            && a.add(&b)?.add(&c)? == a.add(&b.add(&c)?)?
            && a.add(&b)? == b.add(&a)?
            && a.mul(&one)? == a
            && a.add(&zero)? == a
            && a.mul(&zero)?.is_zero();
    }
    let mut adjunction = true;
    let mut done = 0;
    while done < sizes.adjunction_instances {
        let small = |rng: &mut ChaCha8Rng| Arc::new(random_nonempty_gset(table, rng, 4));
        let (x, y, a, c) = (small(rng), small(rng), small(rng), small(rng));
        let (Some(f), Some(p), Some(q)) =
            (random_gmap(rng, &x, &y), random_gmap(rng, &a, &x), random_gmap(rng, &c, &y))
        else {
            continue;
        };
        adjunction &= adjunction_is_bijective(&f, &p, &q)?;
        done += 1;
    }
    Ok(vec![
        Check::new(
            format!(
                "composition is associative ({} triples, {redrawn} redrawn over the size cap)",
                sizes.compose_triples
            ),
            assoc,
        ),
        Check::new("identities are units for composition", ident),
        Check::new(format!("semiring laws ({} samples)", sizes.semiring_samples), semiring),
        Check::new(
            format!(
                "pullback/dependent product adjunction ({} instances, bases <= 4 points)",
                sizes.adjunction_instances
            ),
            adjunction,
        ),
    ])
}

fn lemmas(table: &Arc<SubgroupTable>, rng: &mut ChaCha8Rng, samples: usize, forced: bool) -> Result<Vec<Check>> {
    let group = table.group();
    let mut out = Vec::new();
    // the defaults split the bispan identities: norm of a sum on the cyclic
    // groups, the product formula on S3
    let cyclic = group.elements().any(|g| group.element_order(g) == group.order());
    if forced || cyclic {
        for (form, name) in [(Form::Twisted, "twisted"), (Form::Literal, "literal, trivial X")] {
            let (lhs, rhs) = norm_of_sum_identity(table, form)?;
            out.push(Check::new(format!("norm of a sum expands over subset orbits ({name})"), lhs == rhs));
        }
    }
    if forced || !cyclic {
        for (form, name) in [(Form::Twisted, "twisted"), (Form::Literal, "literal, trivial X")] {
            let mut ok = true;
            for &v in table.all_subgroups() {
                for &w in table.all_subgroups() {
                    let (lhs, rhs) = mackey_product_identity(table, v, w, form)?;
                    ok &= lhs == rhs;
                }
            }
            out.push(Check::new(format!("product formula for all subgroup pairs ({name})"), ok));
        }
    }
    let subs = table.all_subgroups().to_vec();
    let (mut l43, mut l45, mut l47) = (true, true, true);
    for _ in 0..samples {
        let (s, t) = (BigInt::from(rng.gen_range(-6..=6)), BigInt::from(rng.gen_range(-6..=6)));
        l43 &= lemma43_holds(table, &s, &t)?;
        let (v, w, h) = (*subs.choose(rng).unwrap(), *subs.choose(rng).unwrap(), *subs.choose(rng).unwrap());
        l47 &= lemma47_holds(table, v, w, h, &s, &t);
        let len = rng.gen_range(1..=3);
        let classes: Vec<usize> = (0..len).map(|_| rng.gen_range(0..table.num_classes())).collect();
        let signs: Vec<bool> = (0..len).map(|_| rng.gen_bool(0.5)).collect();
        l45 &= lemma45_holds(table, &classes, &signs, &random_ints(rng, len, -4, 4))?;
    }
    out.push(Check::new(format!("power of a sum over subset orbits ({samples} substitutions)"), l43));
    out.push(Check::new(format!("ghost form of the xi-recursion ({samples} substitutions)"), l45));
    out.push(Check::new(format!("mark-weighted product formula ({samples} substitutions)"), l47));
    Ok(out)
}

/// Every Witt vector over `ℤ[x]` whose coordinates are `a + b x` with `a, b ∈ {-1, 0, 1}`.
fn linear_box(k: usize) -> Vec<Vec<IntPoly>> {
    let choices: Vec<IntPoly> = (-1..=1)
        .flat_map(|a| {
            (-1..=1).map(move |b| IntPoly::constant(BigInt::from(a)) + IntPoly::var(0).scale(&BigInt::from(b)))
        })
        .collect();
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                choices.iter().map(move |c| {
                    let mut w = v.clone();
                    w.push(c.clone());
                    w
                })
            })
            .collect();
    }
    out
}

fn main_theorem(table: &Arc<SubgroupTable>, rng: &mut ChaCha8Rng, pairs: usize) -> Result<Vec<Check>> {
    let k = table.num_classes();
    let x = Arc::new(GSet::trivial(table.group().clone(), 1));
    let mut inverse = true;
    let mut images = Vec::new();
    for v in linear_box(k) {
        let u = teichmuller_t(table, &x, &v)?;
        inverse &= rho(&u)? == v;
        images.push(u);
    }
    // the other direction on every combination of the free orbit classes of
    // fibre size at most one orbit, with coefficients in {-1, 0, 1}
    let mut other = true;
    let basis: Vec<VirtualBispan> = (0..k)
        .flat_map(|c| {
            let mut e = vec![IntPoly::zero(); k];
            let mut ex = vec![IntPoly::zero(); k];
            e[c] = IntPoly::one();
            ex[c] = IntPoly::var(0);
            [e, ex]
        })
        .map(|v| teichmuller_t(table, &x, &v))
        .collect::<Result<_>>()?;
    debug_assert!(basis.iter().all(|b| b.num_terms() == 1));
    let mut combos = vec![VirtualBispan::zero(table.clone(), x.clone(), point(table))];
    for b in &basis {
        let mut next = Vec::with_capacity(combos.len() * 3);
        for c in &combos {
            next.push(c.sub(b)?);
            next.push(c.clone());
            next.push(c.add(b)?);
        }
        combos = next;
    }
    for u in &combos {
        other &= teichmuller_t(table, &x, &rho(u)?)? == *u;
    }
    let mut laws = true;
    let mut failed = None;
    for _ in 0..pairs {
        let a: Vec<IntPoly> = (0..k).map(|_| random_poly(rng, 1, 1, 2, 1)).collect();
        let b: Vec<IntPoly> = (0..k).map(|_| random_poly(rng, 1, 1, 2, 1)).collect();
        for law in [Law::Add, Law::Mul, Law::Neg] {
            let r = witt_law_check(table, &x, law, &a, &b)?;
            if !r.verdict && failed.is_none() {
                failed = Some(format!("{law:?} on {a:?}, {b:?}"));
            }
            laws &= r.verdict;
        }
    }
    Ok(vec![
        Check::new(format!("rho(t(x)) = x on all {} vectors of the box", images.len()), inverse),
        Check::new(format!("t(rho(u)) = u on all {} combinations of orbit classes", combos.len()), other),
        Check::new(format!("t respects +, *, - ({pairs} pairs)"), laws).with_detail(failed.unwrap_or_default()),
    ])
}

fn burnside(table: &Arc<SubgroupTable>, rng: &mut ChaCha8Rng, pairs: usize) -> Result<Vec<Check>> {
    let group = table.group().clone();
    let k = table.num_classes();
    let indicator = |c: usize| -> Vec<BigInt> { (0..k).map(|i| BigInt::from((i == c) as i64)).collect() };
    let mut orbits = true;
    for c in 0..k {
        let u = burnside_t(table, &indicator(c))?;
        orbits &= u.num_terms() == 1 && orbit_coefficients(&u) == indicator(c);
    }
    let mut hom = true;
    for _ in 0..pairs {
        let a = witt(table, random_ints(rng, k, -3, 3));
        let b = witt(table, random_ints(rng, k, -3, 3));
        let (ta, tb) = (burnside_t(table, a.coords())?, burnside_t(table, b.coords())?);
        hom &= burnside_t(table, a.add(&b, &Integers)?.coords())? == ta.add(&tb)?
            && burnside_t(table, a.mul(&b, &Integers)?.coords())? == ta.mul(&tb)?;
    }
    let mut products = true;
    for i in 0..k {
        for j in 0..k {
            let prod = burnside_t(table, &indicator(i))?.mul(&burnside_t(table, &indicator(j))?)?;
            let a = GSet::coset_space(group.clone(), table.rep(i))?;
            let b = GSet::coset_space(group.clone(), table.rep(j))?;
            let nb = b.size();
            let pair = GSet::from_fn(group.clone(), a.size() * nb, |g, p| a.act(g, p / nb) * nb + b.act(g, p % nb))?;
            let mut expected = vec![BigInt::from(0); k];
            for c in pair.orbit_type(table) {
                expected[c] += 1;
            }
            products &= orbit_coefficients(&prod) == expected;
        }
    }
    Ok(vec![
        Check::new("indicators map to orbit classes", orbits),
        Check::new(format!("t is a ring homomorphism on W(Z) ({pairs} pairs)"), hom),
        Check::new("orbit multiplication table matches products of G-sets", products),
    ])
}

fn ideal(table: &Arc<SubgroupTable>, rng: &mut ChaCha8Rng, sizes: &SuiteSizes) -> Result<Vec<Check>> {
    let x = regular(table);
    let mut killed = true;
    for _ in 0..sizes.ideal_witnesses {
        let w = random_ideal_witness(table, rng, x.size(), 1);
        killed &= ideal_check(table, &x, &w)?.verdict;
    }
    let mut out = vec![Check::new(format!("t(a) = t(b) for {} ideal generators", sizes.ideal_witnesses), killed)];
    // restriction to the quotient by the largest proper normal subgroup
    let group = table.group();
    let normal = table
        .all_subgroups()
        .iter()
        .filter(|&&n| n.order() < group.order() && group.is_normal(n))
        .max_by_key(|n| n.order())
        .copied();
    if let Some(n) = normal {
        let (quotient, gamma) = group.quotient(n)?;
        let target = Arc::new(SubgroupTable::new(Arc::new(quotient))?);
        let restr = |v: &WittVector<BigInt>| -> Result<WittVector<BigInt>> {
            WittVector::new(target.clone(), restr_surjection(table, &target, &gamma, v.coords())?)
        };
        let mut hom = true;
        let k = table.num_classes();
        for _ in 0..sizes.restr_samples {
            let a = witt(table, random_ints(rng, k, -9, 9));
            let b = witt(table, random_ints(rng, k, -9, 9));
            let (ra, rb) = (restr(&a)?, restr(&b)?);
            hom &= restr(&a.add(&b, &Integers)?)? == ra.add(&rb, &Integers)?
                && restr(&a.mul(&b, &Integers)?)? == ra.mul(&rb, &Integers)?;
        }
        out.push(Check::new(
            format!("restriction to a quotient of order {} is a ring homomorphism", group.order() / n.order()),
            hom,
        ));
    }
    Ok(out)
}

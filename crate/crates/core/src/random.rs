//! Seeded random generation of G-sets, maps, bispans and polynomials for the
//! property suites.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bispan::{Bispan, VirtualBispan};
use crate::error::Result;
use crate::group::Subgroup;
use crate::gset::{coset_numbering, GMap, GSet};
use crate::poly::{IntPoly, Monomial};
use crate::subgroups::SubgroupTable;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A G-set with at most `max_size` points made of random orbits.
pub fn random_gset<R: Rng>(table: &SubgroupTable, rng: &mut R, max_size: usize) -> GSet {
    let group = table.group().clone();
    let mut stabs = Vec::new();
    let mut size = 0;
    let orbit_count = rng.gen_range(0..=3);
    for _ in 0..orbit_count {
        let c = rng.gen_range(0..table.num_classes());
        let len = group.order() / table.class_order(c);
        if size + len <= max_size {
            size += len;
            stabs.push(table.rep(c));
        }
    }
    GSet::from_orbits(group, &stabs).expect("class representatives are subgroups")
}

/// A nonempty G-set with at most `max_size` points.
pub fn random_nonempty_gset<R: Rng>(table: &SubgroupTable, rng: &mut R, max_size: usize) -> GSet {
    loop {
        let x = random_gset(table, rng, max_size);
        if !x.is_empty() {
            return x;
        }
    }
}

/// A random equivariant map, or `None` if some orbit of `x` has nowhere to go.
pub fn random_gmap<R: Rng>(rng: &mut R, x: &Arc<GSet>, y: &Arc<GSet>) -> Option<GMap> {
    let group = x.group().clone();
    let mut map = vec![usize::MAX; x.size()];
    for orbit in x.orbits() {
        let x0 = orbit[0];
        let s = x.stabilizer(x0);
        let targets: Vec<usize> = (0..y.size()).filter(|&p| s.is_subset_of(&y.stabilizer(p))).collect();
        let &y0 = targets.choose(rng)?;
        for g in group.elements() {
            map[x.act(g, x0)] = y.act(g, y0);
        }
    }
    GMap::new(x.clone(), y.clone(), map).ok()
}

/// A random representative `x ← A → B → y` with `|A|, |B| ≤ max_size`.
pub fn random_bispan<R: Rng>(
    table: &SubgroupTable,
    rng: &mut R,
    x: &Arc<GSet>,
    y: &Arc<GSet>,
    max_size: usize,
) -> Bispan {
    loop {
        let b = Arc::new(random_gset(table, rng, max_size));
        let Some(c) = random_gmap(rng, &b, y) else { continue };
        // build A orbit by orbit over points of B so that b: A → B exists
        let group = table.group().clone();
        let mut stabs: Vec<Subgroup> = Vec::new();
        let mut base_images = Vec::new();
        let mut size = 0;
        if !b.is_empty() {
            for _ in 0..rng.gen_range(0..=3) {
                let beta = rng.gen_range(0..b.size());
                let bstab = b.stabilizer(beta);
                let subs: Vec<Subgroup> =
                    table.all_subgroups().iter().copied().filter(|s| s.is_subset_of(&bstab)).collect();
                let s = *subs.choose(rng).expect("e is a subgroup");
                if size + group.order() / s.order() > max_size {
                    continue;
                }
                size += group.order() / s.order();
                stabs.push(s);
                base_images.push(beta);
            }
        }
        let a = Arc::new(GSet::from_orbits(group.clone(), &stabs).expect("subgroups"));
        let mut bmap = Vec::with_capacity(a.size());
        for (&s, &beta) in stabs.iter().zip(&base_images) {
            let (_, reps) = coset_numbering(&group, s);
            bmap.extend(reps.iter().map(|&g| b.act(g, beta)));
        }
        let bm = GMap::new(a.clone(), b.clone(), bmap).expect("stabilizers are compatible");
        let Some(d) = random_gmap(rng, &a, x) else { continue };
        return Bispan::new(d, bm, c).expect("legs compose");
    }
}

/// A combination of up to `terms` random classes with coefficients in `-2..=2`.
pub fn random_virtual<R: Rng>(
    table: &Arc<SubgroupTable>,
    rng: &mut R,
    x: &Arc<GSet>,
    y: &Arc<GSet>,
    max_size: usize,
    terms: usize,
    allow_negative: bool,
) -> Result<VirtualBispan> {
    let mut v = VirtualBispan::zero(table.clone(), x.clone(), y.clone());
    for _ in 0..terms {
        let s = random_bispan(table, rng, x, y, max_size);
        let c = if allow_negative { rng.gen_range(-2..=2) } else { rng.gen_range(0..=2) };
        v.add_bispan(&s, &BigInt::from(c))?;
    }
    Ok(v)
}

/// A polynomial in `vars` variables with total degree at most `max_degree`,
/// up to `max_terms` terms and coefficients in `-bound..=bound`.
pub fn random_poly<R: Rng>(rng: &mut R, vars: usize, max_degree: u32, max_terms: usize, bound: i64) -> IntPoly {
    let mut p = IntPoly::zero();
    for _ in 0..rng.gen_range(0..=max_terms) {
        let deg = rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; vars];
        if vars > 0 {
            for _ in 0..deg {
                exps[rng.gen_range(0..vars)] += 1;
            }
        }
        p.add_term(Monomial::from_exponents(exps), BigInt::from(rng.gen_range(-bound..=bound)));
    }
    p
}

pub fn random_ints<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> Vec<BigInt> {
    (0..n).map(|_| BigInt::from(rng.gen_range(lo..=hi))).collect()
}

/// Ideal-generator data: per class `K`, one to three elements of a single
/// coset `gK` with `g ∈ N_G(K)`, each with a random factor in `vars` variables.
pub fn random_ideal_witness<R: Rng>(
    table: &SubgroupTable,
    rng: &mut R,
    vars: usize,
    max_degree: u32,
) -> crate::witt::IdealWitness<IntPoly> {
    let group = table.group();
    let entries = (0..table.num_classes())
        .map(|class| {
            let k = table.rep(class).elements();
            let norm = group.normalizer(table.rep(class)).elements();
            let g = *norm.choose(rng).expect("normalizer is nonempty");
            let n = rng.gen_range(1..=3);
            let elements = (0..n).map(|_| group.mul(g, *k.choose(rng).expect("K is nonempty"))).collect();
            let factors = (0..n).map(|_| random_poly(rng, vars, max_degree, 2, 2)).collect();
            crate::witt::IdealEntry { elements, factors }
        })
        .collect();
    crate::witt::IdealWitness { entries }
}

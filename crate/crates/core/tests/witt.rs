use std::sync::Arc;

use gwitt_core::error::Error;
use gwitt_core::group::make_group;
use gwitt_core::gset::GSet;
use gwitt_core::poly::IntPoly;
use gwitt_core::random::{random_ints, random_poly, rng_from_seed};
use gwitt_core::ring::{Integers, IntegersMod, PolyRing, Ring};
use gwitt_core::subgroups::SubgroupTable;
use gwitt_core::witt::{
    ghost, ghost_invert, ideal_generator, lemma43_holds, lemma45_holds, lemma47_holds, m_polys_via_xi,
    p_polys_via_orbits, restr_surjection, s_polys_via_xi, universal_polys, xi_polys, IdealEntry, IdealWitness,
    WittVector,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

fn table(spec: &str) -> Arc<SubgroupTable> {
    Arc::new(SubgroupTable::new(make_group(spec).unwrap()).unwrap())
}

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&n| int(n)).collect()
}

fn x(i: usize) -> IntPoly {
    IntPoly::var(i)
}

fn c(n: i64) -> IntPoly {
    IntPoly::constant(int(n))
}

#[test]
fn c2_ghost_by_hand() {
    let t = table("C2");
    // φ_G = a_G, φ_e = a_G² + 2 a_e
    assert_eq!(ghost(&t, &Integers, &ints(&[3, 5])), ints(&[3, 19]));
    assert_eq!(ghost(&t, &Integers, &ints(&[0, 0])), ints(&[0, 0]));
}

#[test]
fn s3_ghost_diagonal_is_normalizer_index() {
    let t = table("S3");
    // e_U picks out the column of marks, whose diagonal entry is |N(U):U|
    for u in 0..4 {
        let mut a = vec![int(0); 4];
        a[u] = int(1);
        let g = ghost(&t, &Integers, &a);
        assert_eq!(g[u], int(t.normalizer_index(u) as i64));
        assert_eq!(g[0], if u == 0 { int(1) } else { int(0) });
    }
    assert_eq!(ghost(&t, &Integers, &ints(&[7, 0, 0, 0])), ints(&[7, 49, 343, 7i64.pow(6)]));
}

#[test]
fn ghost_inversion_examples() {
    let t = table("C2");
    assert_eq!(ghost_invert(&t, &Integers, &ints(&[1, 1])).unwrap(), ints(&[1, 0]));
    assert!(matches!(ghost_invert(&t, &Integers, &ints(&[0, 1])), Err(Error::Divisibility(_))));
    let mut rng = rng_from_seed(1);
    for spec in ["C2", "S3", "C2 x C2", "C4"] {
        let t = table(spec);
        for _ in 0..50 {
            let a = random_ints(&mut rng, t.num_classes(), -9, 9);
            assert_eq!(ghost_invert(&t, &Integers, &ghost(&t, &Integers, &a)).unwrap(), a);
        }
    }
}

#[test]
fn c2_witt_polynomials_by_hand() {
    // a_G = x0, a_e = x1, b_G = x2, b_e = x3
    let t = table("C2");
    let w = universal_polys(&t).unwrap();
    assert_eq!(w.s[0], x(0) + x(2));
    assert_eq!(w.s[1], x(1) + x(3) - x(0) * x(2));
    assert_eq!(w.p[0], x(0) * x(2));
    assert_eq!(w.p[1], x(0).pow(2) * x(3) + x(2).pow(2) * x(1) + c(2) * x(1) * x(3));
    assert_eq!(w.m[0], -x(0));
    assert_eq!(w.m[1], -x(1) - x(0).pow(2));
}

#[test]
fn witt_polynomials_only_use_larger_classes() {
    for spec in ["C2", "C3", "C4", "C2 x C2", "S3"] {
        let t = table(spec);
        let w = universal_polys(&t).unwrap();
        let k = t.num_classes();
        for u in 0..k {
            for p in [&w.s[u], &w.p[u], &w.m[u]] {
                for var in p.variables() {
                    assert!(t.subconj(u, var % k), "{spec}: class {u} uses {var}");
                }
            }
        }
    }
}

#[test]
fn z4_addition_example() {
    let t = table("C2");
    let r = IntegersMod::new(4);
    let a = WittVector::new(t.clone(), ints(&[1, 1])).unwrap();
    assert_eq!(a.add(&a, &r).unwrap().coords(), &ints(&[2, 1])[..]);
}

#[test]
fn trivial_group_product() {
    let t = table("C1");
    assert_eq!(p_polys_via_orbits(&t).unwrap(), vec![x(0) * x(1)]);
}

/// Classical p-typical ghost: `w_i = Σ_{j ≤ i} p^j x_j^{p^{i-j}}`, inverted
/// over ℚ one coordinate at a time.
fn classical_polys(p: u32, n: usize) -> (Vec<IntPoly>, Vec<IntPoly>) {
    let ghost = |xs: &[IntPoly], i: usize| -> IntPoly {
        let mut w = IntPoly::zero();
        for (j, xj) in xs.iter().enumerate().take(i + 1) {
            w = w + xj.pow(p.pow((i - j) as u32)).scale(&BigInt::from(p).pow(j as u32));
        }
        w
    };
    let solve = |targets: Vec<IntPoly>| -> Vec<IntPoly> {
        let mut out: Vec<IntPoly> = Vec::new();
        for i in 0..n {
            let mut rest = targets[i].clone();
            for (j, xj) in out.iter().enumerate() {
                rest = rest - xj.pow(p.pow((i - j) as u32)).scale(&BigInt::from(p).pow(j as u32));
            }
            let q = rest.to_rational().scale(&BigRational::new(int(1), BigInt::from(p).pow(i as u32)));
            out.push(q.to_integer().expect("classical Witt polynomials are integral"));
        }
        out
    };
    let a: Vec<IntPoly> = (0..n).map(x).collect();
    let b: Vec<IntPoly> = (n..2 * n).map(x).collect();
    let sums = (0..n).map(|i| ghost(&a, i) + ghost(&b, i)).collect();
    let prods = (0..n).map(|i| ghost(&a, i) * ghost(&b, i)).collect();
    (solve(sums), solve(prods))
}

#[test]
fn cyclic_p_groups_recover_classical_witt_vectors() {
    for (spec, p, n) in [("C2", 2u32, 2usize), ("C4", 2, 3), ("C3", 3, 2), ("C9", 3, 3), ("C8", 2, 4)] {
        let t = table(spec);
        assert_eq!(t.num_classes(), n);
        for i in 0..n {
            assert_eq!(t.class_order(i), p.pow((n - 1 - i) as u32) as usize);
        }
        let w = universal_polys(&t).unwrap();
        let (s, pr) = classical_polys(p, n);
        assert_eq!(w.s, s, "{spec}");
        assert_eq!(w.p, pr, "{spec}");
    }
    // S_1 = x_1 + y_1 - Σ_{0<k<p} (C(p,k)/p) x_0^k y_0^{p-k} for p = 3
    let t = table("C3");
    let w = universal_polys(&t).unwrap();
    assert_eq!(w.s[1], x(1) + x(3) - x(0).pow(2) * x(2) - x(0) * x(2).pow(2));
}

#[test]
fn xi_examples() {
    let t = table("C2");
    assert_eq!(xi_polys(&t, &[0], &[true]).unwrap(), vec![-x(0), -x(0).pow(2)]);
    assert_eq!(xi_polys(&t, &[0, 0], &[false, false]).unwrap(), vec![x(0) + x(1), -x(0) * x(1)]);
    let t = table("S3");
    assert_eq!(xi_polys(&t, &[1, 3], &[false, false]).unwrap(), vec![c(0), x(0), c(0), x(1)]);
}

#[test]
fn xi_routes_match_ghost_inversion() {
    for spec in ["C1", "C2", "C3", "C4", "S3", "C2 x C2"] {
        let t = table(spec);
        let w = universal_polys(&t).unwrap();
        assert_eq!(m_polys_via_xi(&t).unwrap(), w.m, "{spec} m");
        assert_eq!(p_polys_via_orbits(&t).unwrap(), w.p, "{spec} p");
        assert_eq!(s_polys_via_xi(&t).unwrap(), w.s, "{spec} s");
    }
}

#[test]
fn ghost_is_a_ring_homomorphism() {
    let mut rng = rng_from_seed(2);
    for spec in ["C2", "C3", "C4", "C2 x C2", "S3"] {
        let t = table(spec);
        for _ in 0..100 {
            let a = WittVector::new(t.clone(), random_ints(&mut rng, t.num_classes(), -9, 9)).unwrap();
            let b = WittVector::new(t.clone(), random_ints(&mut rng, t.num_classes(), -9, 9)).unwrap();
            let (ga, gb) = (a.ghost(&Integers), b.ghost(&Integers));
            let sum: Vec<BigInt> = ga.iter().zip(&gb).map(|(x, y)| x + y).collect();
            let prod: Vec<BigInt> = ga.iter().zip(&gb).map(|(x, y)| x * y).collect();
            let neg: Vec<BigInt> = ga.iter().map(|x| -x).collect();
            assert_eq!(a.add(&b, &Integers).unwrap().ghost(&Integers), sum);
            assert_eq!(a.mul(&b, &Integers).unwrap().ghost(&Integers), prod);
            assert_eq!(a.neg(&Integers).unwrap().ghost(&Integers), neg);
        }
    }
}

fn ring_axioms<R: Ring>(t: &Arc<SubgroupTable>, ring: &R, sample: &mut dyn FnMut() -> Vec<R::Elem>) {
    let a = WittVector::new(t.clone(), sample()).unwrap();
    let b = WittVector::new(t.clone(), sample()).unwrap();
    let c = WittVector::new(t.clone(), sample()).unwrap();
    let zero = WittVector::zero(t.clone(), ring);
    let one = WittVector::one(t.clone(), ring);
    let add = |x: &WittVector<R::Elem>, y: &WittVector<R::Elem>| x.add(y, ring).unwrap();
    let mul = |x: &WittVector<R::Elem>, y: &WittVector<R::Elem>| x.mul(y, ring).unwrap();
    assert_eq!(add(&a, &b), add(&b, &a));
    assert_eq!(mul(&a, &b), mul(&b, &a));
    assert_eq!(add(&add(&a, &b), &c), add(&a, &add(&b, &c)));
    assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
    assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
    assert_eq!(add(&a, &zero), a);
    assert_eq!(mul(&a, &one), a);
    assert_eq!(add(&a, &a.neg(ring).unwrap()), zero);
}

#[test]
fn witt_ring_axioms() {
    let mut rng = rng_from_seed(3);
    for spec in ["C2", "C3", "C4", "C2 x C2", "S3"] {
        let t = table(spec);
        let k = t.num_classes();
        for _ in 0..10 {
            ring_axioms(&t, &Integers, &mut || random_ints(&mut rng, k, -9, 9));
        }
        let z6 = IntegersMod::new(6);
        for _ in 0..10 {
            ring_axioms(&t, &z6, &mut || random_ints(&mut rng, k, 0, 5));
        }
        let zx = PolyRing::new();
        for _ in 0..2 {
            ring_axioms(&t, &zx, &mut || (0..k).map(|_| random_poly(&mut rng, 1, 1, 2, 2)).collect());
        }
    }
}

#[test]
fn ghost_commutes_with_coefficient_maps() {
    // reduction ℤ → ℤ/6 is a ring map
    let mut rng = rng_from_seed(4);
    let z6 = IntegersMod::new(6);
    for spec in ["C2", "S3"] {
        let t = table(spec);
        for _ in 0..20 {
            let a = WittVector::new(t.clone(), random_ints(&mut rng, t.num_classes(), -9, 9)).unwrap();
            let reduced = a.map(|v| z6.from_int(v));
            let lhs = reduced.ghost(&z6);
            let rhs: Vec<BigInt> = a.ghost(&Integers).iter().map(|v| z6.from_int(v)).collect();
            assert_eq!(lhs, rhs);
            // evaluation ℤ[x] → ℤ at x = 3
            let p =
                WittVector::new(t.clone(), (0..t.num_classes()).map(|_| random_poly(&mut rng, 1, 2, 3, 3)).collect())
                    .unwrap();
            let at3 = |q: &IntPoly| q.eval_int(&[int(3)]);
            let lhs = p.map(at3).ghost(&Integers);
            let rhs: Vec<BigInt> = p.ghost(&PolyRing::new()).iter().map(at3).collect();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn lemma_identities() {
    let mut rng = rng_from_seed(5);
    for spec in ["C2", "C3", "C4", "S3"] {
        let t = table(spec);
        for _ in 0..25 {
            let s = int(rng.gen_range(-5..=5));
            let u = int(rng.gen_range(-5..=5));
            assert!(lemma43_holds(&t, &s, &u).unwrap(), "{spec}");
        }
    }
    for spec in ["C2", "S3"] {
        let t = table(spec);
        for _ in 0..25 {
            let len = rng.gen_range(1..=4);
            let vs: Vec<usize> = (0..len).map(|_| rng.gen_range(0..t.num_classes())).collect();
            let neg: Vec<bool> = (0..len).map(|_| rng.gen_bool(0.5)).collect();
            let vals = random_ints(&mut rng, len, -4, 4);
            assert!(lemma45_holds(&t, &vs, &neg, &vals).unwrap(), "{spec} {vs:?} {neg:?}");
        }
        let subs = t.all_subgroups().to_vec();
        for _ in 0..25 {
            let pick = |rng: &mut rand_chacha::ChaCha8Rng| subs[rng.gen_range(0..subs.len())];
            let (v, w, h) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            assert!(lemma47_holds(&t, v, w, h, &int(rng.gen_range(-4..=4)), &int(rng.gen_range(-4..=4))));
        }
    }
}

#[test]
fn restriction_along_surjections() {
    let c4 = table("C4");
    let c2 = table("C2");
    // r^k ↦ r^(k mod 2)
    let gamma = vec![0, 1, 0, 1];
    let a = ints(&[5, 6, 7]);
    assert_eq!(restr_surjection(&c4, &c2, &gamma, &a).unwrap(), ints(&[5, 6]));
    let id: Vec<usize> = (0..4).collect();
    assert_eq!(restr_surjection(&c4, &c4, &id, &a).unwrap(), a);
    assert!(restr_surjection(&c4, &c2, &[0, 1, 1, 0], &a).is_err());
    assert!(restr_surjection(&c4, &c2, &[0, 0, 0, 0], &a).is_err());
    let mut rng = rng_from_seed(6);
    for _ in 0..30 {
        let a = WittVector::new(c4.clone(), random_ints(&mut rng, 3, -9, 9)).unwrap();
        let b = WittVector::new(c4.clone(), random_ints(&mut rng, 3, -9, 9)).unwrap();
        let r = |v: &WittVector<BigInt>| {
            WittVector::new(c2.clone(), restr_surjection(&c4, &c2, &gamma, v.coords()).unwrap()).unwrap()
        };
        assert_eq!(r(&a.add(&b, &Integers).unwrap()), r(&a).add(&r(&b), &Integers).unwrap());
        assert_eq!(r(&a.mul(&b, &Integers).unwrap()), r(&a).mul(&r(&b), &Integers).unwrap());
    }
}

#[test]
fn ideal_generator_examples() {
    let t = table("C2");
    let x = Arc::new(GSet::regular(t.group().clone()));
    let ring = PolyRing::over_gset(x);
    // K = e, g = the nontrivial element, a_1 = u
    let w = IdealWitness {
        entries: vec![
            IdealEntry { elements: vec![0], factors: vec![IntPoly::one()] },
            IdealEntry { elements: vec![1], factors: vec![IntPoly::var(0)] },
        ],
    };
    let (a, b) = ideal_generator(&t, &ring, &w).unwrap();
    assert_eq!(a, vec![IntPoly::one(), IntPoly::var(0)]);
    assert_eq!(b, vec![IntPoly::one(), IntPoly::var(1)]);
    // identity elements give a = b
    let w = IdealWitness {
        entries: vec![
            IdealEntry { elements: vec![0, 0], factors: vec![IntPoly::var(0), IntPoly::var(1)] },
            IdealEntry { elements: vec![0], factors: vec![IntPoly::var(1)] },
        ],
    };
    let (a, b) = ideal_generator(&t, &ring, &w).unwrap();
    assert_eq!(a, b);
    // g_1 = g_2 = g
    let w = IdealWitness {
        entries: vec![
            IdealEntry { elements: vec![0], factors: vec![IntPoly::one()] },
            IdealEntry { elements: vec![1, 1], factors: vec![IntPoly::var(0), IntPoly::var(0)] },
        ],
    };
    let (a, b) = ideal_generator(&t, &ring, &w).unwrap();
    assert_eq!(a[1], IntPoly::var(0).pow(2));
    assert_eq!(b[1], IntPoly::var(1).pow(2));
    // elements in different cosets of K = e
    let bad = IdealWitness {
        entries: vec![
            IdealEntry { elements: vec![0], factors: vec![IntPoly::one()] },
            IdealEntry { elements: vec![0, 1], factors: vec![IntPoly::var(0), IntPoly::var(0)] },
        ],
    };
    assert!(matches!(ideal_generator(&t, &ring, &bad), Err(Error::Witness(_))));
}

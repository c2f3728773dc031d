use std::sync::Arc;

use gwitt_core::bispan::{gen_r, VirtualBispan};
use gwitt_core::group::make_group;
use gwitt_core::gset::{GMap, GSet};
use gwitt_core::poly::IntPoly;
use gwitt_core::random::{random_poly, rng_from_seed};
use gwitt_core::subgroups::SubgroupTable;
use gwitt_core::teichmuller::{
    bispan_to_poly, burnside_rho, burnside_t, ideal_check, mackey_product_identity, norm_of_sum_identity,
    orbit_coefficients, point, poly_to_bispan, regular, rho, teichmuller_t, teichmuller_t_direct, transferred_norm,
    witt_law_check, Form, Law,
};
use gwitt_core::witt::{IdealEntry, IdealWitness};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn table(spec: &str) -> Arc<SubgroupTable> {
    Arc::new(SubgroupTable::new(make_group(spec).unwrap()).unwrap())
}

fn x(i: usize) -> IntPoly {
    IntPoly::var(i)
}

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

fn trivial_x(t: &SubgroupTable, n: usize) -> Arc<GSet> {
    Arc::new(GSet::trivial(t.group().clone(), n))
}

fn random_coords(rng: &mut ChaCha8Rng, t: &SubgroupTable, vars: usize, degree: u32) -> Vec<IntPoly> {
    (0..t.num_classes()).map(|_| random_poly(rng, vars, degree, 2, 2)).collect()
}

#[test]
fn polynomial_identification_examples() {
    let t = table("C2");
    let xs = regular(&t);
    let one = poly_to_bispan(&t, &xs, &IntPoly::one()).unwrap();
    assert_eq!(one, VirtualBispan::one(t.clone(), xs.clone(), regular(&t)).unwrap());
    let single = poly_to_bispan(&t, &xs, &x(1)).unwrap();
    assert_eq!(single.num_terms(), 1);
    let (key, c) = single.terms().next().unwrap();
    assert_eq!(*c, int(1));
    assert_eq!(key.fiber_size(&t), 1);

    let (a, b) = (poly_to_bispan(&t, &xs, &x(0)).unwrap(), poly_to_bispan(&t, &xs, &x(1)).unwrap());
    let square = a.add(&b).unwrap().pow(2).unwrap();
    let expanded = poly_to_bispan(&t, &xs, &(x(0).pow(2) + x(0) * x(1).scale(&int(2)) + x(1).pow(2))).unwrap();
    assert_eq!(square, expanded);
}

#[test]
fn identification_is_a_ring_isomorphism() {
    let mut rng = rng_from_seed(10);
    for spec in ["C2", "C3", "S3"] {
        let t = table(spec);
        for xs in [regular(&t), trivial_x(&t, 2)] {
            let vars = xs.size().min(3);
            for _ in 0..15 {
                let p = random_poly(&mut rng, vars, 2, 3, 3);
                let q = random_poly(&mut rng, vars, 2, 3, 3);
                let (bp, bq) = (poly_to_bispan(&t, &xs, &p).unwrap(), poly_to_bispan(&t, &xs, &q).unwrap());
                assert_eq!(bispan_to_poly(&bp).unwrap(), p);
                assert_eq!(bp.add(&bq).unwrap(), poly_to_bispan(&t, &xs, &(p.clone() + q.clone())).unwrap());
                assert_eq!(bp.mul(&bq).unwrap(), poly_to_bispan(&t, &xs, &(p * q)).unwrap());
            }
        }
    }
}

#[test]
fn group_action_permutes_variables() {
    let mut rng = rng_from_seed(11);
    for spec in ["C2", "S3"] {
        let t = table(spec);
        let group = t.group().clone();
        let xs = regular(&t);
        let reg = regular(&t);
        for _ in 0..10 {
            let p = random_poly(&mut rng, xs.size(), 2, 3, 3);
            let u = poly_to_bispan(&t, &xs, &p).unwrap();
            for g in group.elements() {
                // right multiplication h ↦ hg is an automorphism of G/e
                let c =
                    GMap::new(reg.clone(), reg.clone(), group.elements().map(|h| group.mul(h, g)).collect()).unwrap();
                let moved =
                    bispan_to_poly(&gwitt_core::bispan::compose(&gen_r(t.clone(), &c).unwrap(), &u).unwrap()).unwrap();
                assert_eq!(moved, p.map_vars(|i| xs.act(g, i)));
            }
        }
    }
}

#[test]
fn bispan_to_poly_rejects_bad_input() {
    let t = table("C2");
    let xs = trivial_x(&t, 1);
    let u = teichmuller_t(&t, &xs, &[x(0), IntPoly::zero()]).unwrap();
    assert!(bispan_to_poly(&u).is_err());
    let fixed = VirtualBispan::identity(t.clone(), xs.clone()).unwrap();
    assert!(rho(&fixed).is_err());
}

#[test]
fn teichmuller_examples() {
    // trivial group: t is the identification itself
    let t = table("C1");
    let xs = trivial_x(&t, 2);
    let p = x(0) * x(1) - x(1).scale(&int(3));
    assert_eq!(bispan_to_poly(&teichmuller_t(&t, &xs, std::slice::from_ref(&p)).unwrap()).unwrap(), p);

    let t = table("C2");
    let xs = regular(&t);
    let unit = teichmuller_t(&t, &xs, &[IntPoly::one(), IntPoly::zero()]).unwrap();
    assert_eq!(unit, VirtualBispan::one(t.clone(), xs.clone(), point(&t)).unwrap());

    for spec in ["C2", "S3", "C4"] {
        let t = table(spec);
        for class in 0..t.num_classes() {
            let mut e = vec![int(0); t.num_classes()];
            e[class] = int(1);
            let orbit = burnside_t(&t, &e).unwrap();
            assert_eq!(orbit.num_terms(), 1);
            assert_eq!(orbit_coefficients(&orbit), e);
            assert_eq!(burnside_rho(&orbit).unwrap(), e);
        }
    }
}

#[test]
fn block_construction_matches_direct_sum() {
    let mut rng = rng_from_seed(12);
    for spec in ["C2", "C3", "S3"] {
        let t = table(spec);
        for xs in [trivial_x(&t, 1), regular(&t)] {
            for _ in 0..4 {
                let c = random_coords(&mut rng, &t, xs.size().min(2), 2);
                assert_eq!(teichmuller_t(&t, &xs, &c).unwrap(), teichmuller_t_direct(&t, &xs, &c).unwrap(), "{spec}");
            }
        }
    }
}

#[test]
fn rho_inverts_t_for_trivial_actions() {
    let mut rng = rng_from_seed(13);
    for spec in ["C2", "C3", "S3"] {
        let t = table(spec);
        let xs = trivial_x(&t, 1);
        let unit = VirtualBispan::one(t.clone(), xs.clone(), point(&t)).unwrap();
        let mut e = vec![IntPoly::zero(); t.num_classes()];
        e[0] = IntPoly::one();
        assert_eq!(rho(&unit).unwrap(), e);
        for _ in 0..8 {
            let c = random_coords(&mut rng, &t, 1, 2);
            let u = teichmuller_t(&t, &xs, &c).unwrap();
            assert_eq!(rho(&u).unwrap(), c);
            assert_eq!(teichmuller_t(&t, &xs, &rho(&u).unwrap()).unwrap(), u);
        }
    }
}

#[test]
fn t_after_rho_is_identity_for_free_actions() {
    let mut rng = rng_from_seed(14);
    for spec in ["C2", "S3"] {
        let t = table(spec);
        let xs = regular(&t);
        for _ in 0..4 {
            let c = random_coords(&mut rng, &t, 2, 2);
            let u = teichmuller_t(&t, &xs, &c).unwrap();
            assert_eq!(teichmuller_t(&t, &xs, &rho(&u).unwrap()).unwrap(), u);
        }
    }
}

#[test]
fn witt_laws_hold_on_trivial_actions() {
    let mut rng = rng_from_seed(15);
    for spec in ["C2", "C3", "S3"] {
        let t = table(spec);
        for n in [1, 2] {
            let xs = trivial_x(&t, n);
            let zero = vec![IntPoly::zero(); t.num_classes()];
            assert!(witt_law_check(&t, &xs, Law::Add, &zero, &zero).unwrap().verdict);
            for _ in 0..3 {
                let a = random_coords(&mut rng, &t, n, 2);
                let b = random_coords(&mut rng, &t, n, 2);
                for law in [Law::Add, Law::Mul, Law::Neg] {
                    let r = witt_law_check(&t, &xs, law, &a, &b).unwrap();
                    assert!(r.verdict, "{spec} {law:?} {a:?} {b:?}");
                }
            }
        }
    }
}

#[test]
fn addition_fails_to_commute_with_t_for_a_free_action() {
    // x = y = (x_e, 0) over X = G/e for G = C2:
    // t(x ⊞ y) - t(x) - t(y) = T(x_e x_g) - T(x_e²) ≠ 0
    let t = table("C2");
    let xs = regular(&t);
    let a = vec![x(0), IntPoly::zero()];
    let r = witt_law_check(&t, &xs, Law::Add, &a, &a).unwrap();
    assert!(!r.verdict);
    let e = t.group().trivial_subgroup();
    let lhs = teichmuller_t(&t, &xs, &a).unwrap().add(&teichmuller_t(&t, &xs, &a).unwrap()).unwrap();
    let twisted = lhs
        .add(&transferred_norm(&t, &xs, e, &(x(0) * x(1))).unwrap())
        .unwrap()
        .sub(&transferred_norm(&t, &xs, e, &x(0).pow(2)).unwrap())
        .unwrap();
    let rhs = teichmuller_t(&t, &xs, &[x(0).scale(&int(2)), -x(0).pow(2)]).unwrap();
    assert_eq!(twisted, rhs);
}

#[test]
fn report_serializes() {
    let t = table("C2");
    let xs = trivial_x(&t, 1);
    let r = witt_law_check(&t, &xs, Law::Mul, &[x(0), IntPoly::one()], &[IntPoly::one(), x(0)]).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["law"], "mul");
    assert_eq!(v["verdict"], true);
    assert_eq!(v["canonical_forms"].as_array().unwrap().len(), 2);
}

fn random_witness(rng: &mut ChaCha8Rng, t: &SubgroupTable, vars: usize) -> IdealWitness<IntPoly> {
    let group = t.group();
    let mut entries = Vec::new();
    for class in 0..t.num_classes() {
        let k = t.rep(class);
        let norm: Vec<usize> = group.normalizer(k).elements();
        let kel = k.elements();
        let g1 = norm[rng.gen_range(0..norm.len())];
        let n = rng.gen_range(1..=2);
        let elements = (0..n).map(|_| group.mul(g1, kel[rng.gen_range(0..kel.len())])).collect();
        let factors = (0..n).map(|_| random_poly(rng, vars, 1, 2, 2)).collect();
        entries.push(IdealEntry { elements, factors });
    }
    IdealWitness { entries }
}

#[test]
fn ideal_generators_are_killed() {
    let mut rng = rng_from_seed(16);
    for spec in ["C2", "S3"] {
        let t = table(spec);
        let xs = regular(&t);
        for _ in 0..5 {
            let w = random_witness(&mut rng, &t, xs.size());
            let r = ideal_check(&t, &xs, &w).unwrap();
            assert!(r.verdict, "{spec}");
        }
    }
}

#[test]
fn norm_of_sum_expansion() {
    for spec in ["C2", "C3", "C4"] {
        let t = table(spec);
        for form in [Form::Twisted, Form::Literal] {
            let (lhs, rhs) = norm_of_sum_identity(&t, form).unwrap();
            assert_eq!(lhs, rhs, "{spec} {form:?}");
        }
    }
}

#[test]
fn literal_norm_of_sum_fails_for_free_action() {
    // N(s + t) ≠ N(s) + N(t) + T(st) for C2 and generic s, t
    let t = table("C2");
    let group = t.group().clone();
    let reg = GSet::regular(group.clone());
    let xs = Arc::new(GSet::coproduct(group, &[&reg, &reg]).0);
    let (g, e) = (t.group().whole(), t.group().trivial_subgroup());
    let lhs = poly_to_bispan(&t, &xs, &(x(0) + x(2))).unwrap().norm_target(&GMap::to_point(regular(&t))).unwrap();
    let n = |p: IntPoly| transferred_norm(&t, &xs, g, &p).unwrap();
    let literal = n(x(0)).add(&n(x(2))).unwrap().add(&transferred_norm(&t, &xs, e, &(x(0) * x(2))).unwrap()).unwrap();
    assert_ne!(lhs, literal);
    let twisted = n(x(0)).add(&n(x(2))).unwrap().add(&transferred_norm(&t, &xs, e, &(x(0) * x(3))).unwrap()).unwrap();
    assert_eq!(lhs, twisted);
}

#[test]
fn mackey_product_formula() {
    for spec in ["S3", "C4"] {
        let t = table(spec);
        for &v in t.all_subgroups() {
            for &w in t.all_subgroups() {
                for form in [Form::Twisted, Form::Literal] {
                    let (lhs, rhs) = mackey_product_identity(&t, v, w, form).unwrap();
                    assert_eq!(lhs, rhs, "{spec} {v:?} {w:?} {form:?}");
                }
            }
        }
    }
}

#[test]
fn burnside_multiplication_matches_products_of_gsets() {
    let t = table("S3");
    let group = t.group().clone();
    let k = t.num_classes();
    for i in 0..k {
        for j in 0..k {
            let mut ei = vec![int(0); k];
            ei[i] = int(1);
            let mut ej = vec![int(0); k];
            ej[j] = int(1);
            let prod = burnside_t(&t, &ei).unwrap().mul(&burnside_t(&t, &ej).unwrap()).unwrap();
            // brute force: orbit types of G/V_i × G/V_j
            let a = GSet::coset_space(group.clone(), t.rep(i)).unwrap();
            let b = GSet::coset_space(group.clone(), t.rep(j)).unwrap();
            let nb = b.size();
            let pair =
                GSet::from_fn(group.clone(), a.size() * nb, |g, p| a.act(g, p / nb) * nb + b.act(g, p % nb)).unwrap();
            let mut expected = vec![int(0); k];
            for c in pair.orbit_type(&t) {
                expected[c] += 1;
            }
            assert_eq!(orbit_coefficients(&prod), expected, "{i} x {j}");
        }
    }
}

mod common;

use std::collections::HashSet;
use std::sync::Arc;

use netbundle::cech::{circle_map, to_cech, to_net};
use netbundle::cohomology::{
    brute_force_classes, classify_cocycles, cochains_equivalent, curvature, gamma, reconstruct_bundle, upsilon,
    Holonomy,
};
use netbundle::groups::enumerate_homomorphisms;
use netbundle::sample::Sampler;
use netbundle::{fixtures, Cochain1, Complex, Elem, Execution, Group, GroupElement, Poset, Presentation};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

/// Elements `e0 < … < e(n-1)` in index order; `mask` picks which pairs
/// `i < j` are covers, so the relation is acyclic by construction.
fn random_poset() -> impl Strategy<Value = Poset> {
    (1usize..=6, any::<u32>()).prop_map(|(n, mask)| {
        let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let mut covers = Vec::new();
        let mut bit = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if mask >> (bit % 32) & 1 == 1 {
                    covers.push((names[i].clone(), names[j].clone()));
                }
                bit += 1;
            }
        }
        Poset::new("random", &names, &covers).unwrap()
    })
}

fn fixture_complexes() -> Vec<Arc<Complex>> {
    fixtures::all().into_iter().flat_map(|p| [shared(p.dual()), shared(p)]).collect()
}

/// A sampler over one fixture (or its dual) and one small test group.
fn case() -> impl Strategy<Value = (Sampler, ChaCha8Rng)> {
    (0usize..8, 0usize..5, any::<u64>()).prop_map(|(c, g, seed)| {
        let complex = fixture_complexes().swap_remove(c);
        let s = Sampler::new(complex, group(specs()[g]), BUDGET).unwrap();
        (s, ChaCha8Rng::seed_from_u64(seed))
    })
}

fn components_oracle(p: &Poset) -> Vec<usize> {
    let n = p.len();
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for a in p.elements() {
            for b in p.elements() {
                if p.comparable(a, b) && label[b.index()] < label[a.index()] {
                    label[a.index()] = label[b.index()];
                    changed = true;
                }
            }
        }
        if !changed {
            return label;
        }
    }
}

proptest! {
    #[test]
    fn down_sets_are_monotone(p in random_poset()) {
        for a in p.elements() {
            let down = p.down_set(a).unwrap();
            prop_assert!(down.contains(a));
            for b in p.elements().filter(|&b| p.leq(b, a)) {
                let smaller = p.down_set(b).unwrap();
                prop_assert!(p.elements().all(|x| !smaller.contains(x) || down.contains(x)));
            }
        }
    }

    #[test]
    fn dual_is_an_involution(p in random_poset()) {
        let d = p.dual();
        let dd = d.dual();
        for a in p.elements() {
            for b in p.elements() {
                prop_assert_eq!(p.leq(a, b), d.leq(b, a));
                prop_assert_eq!(p.leq(a, b), dd.leq(a, b));
            }
        }
        prop_assert_eq!(p.is_upward_directed(), d.is_downward_directed());
        prop_assert_eq!(p.is_downward_directed(), d.is_upward_directed());
    }

    #[test]
    fn local_constancy_means_constant_on_components(p in random_poset(), colours in prop::collection::vec(0u8..2, 6)) {
        let f = |a: Elem| colours[a.index()];
        let all: Vec<Elem> = p.elements().collect();
        let labels = components_oracle(&p);
        let expected = p.elements().all(|a| p.elements().all(|b| labels[a.index()] != labels[b.index()] || f(a) == f(b)));
        prop_assert_eq!(p.is_locally_constant(f, &all).unwrap(), expected);
        prop_assert_eq!(p.is_connected(), p.elements().all(|a| labels[a.index()] == 0));
    }

    #[test]
    fn triangle_faces_are_edges_below_the_support(p in random_poset()) {
        let c = Complex::new(p);
        for t in c.simplices(2).unwrap() {
            for i in 0..3 {
                let face = t.face(i).unwrap();
                prop_assert!(c.index_of(&face).is_ok());
                prop_assert!(c.poset().leq(face.support(), t.support()));
            }
        }
    }

    #[test]
    fn nerve_edges_are_the_support_equals_face0_edges(p in random_poset()) {
        let c = Complex::new(p);
        let direct: HashSet<_> = c.simplices(1).unwrap().into_iter().filter(|b| b.support() == b.face0()).collect();
        let included: HashSet<_> = c.nerve_simplices(1).unwrap().iter().map(|s| s.include()).collect();
        prop_assert_eq!(direct, included);
    }

    #[test]
    fn subgroup_generation_is_idempotent_and_monotone(g in 0usize..5, picks in prop::collection::vec(0usize..6, 0..4), extra in 0usize..6) {
        let g = group(specs()[g]);
        let gens: Vec<GroupElement> = picks.iter().map(|&i| GroupElement::from_index(i % g.order())).collect();
        let h = g.subgroup_generated(&gens).unwrap();
        prop_assert_eq!(g.subgroup_generated(h.members()).unwrap(), h.clone());
        let mut more = gens.clone();
        more.push(GroupElement::from_index(extra % g.order()));
        prop_assert!(h.is_subset_of(&g.subgroup_generated(&more).unwrap()));
        let n = g.normal_closure(&gens, &g.whole()).unwrap();
        for x in g.elements() {
            for &y in n.members() {
                prop_assert!(n.contains(g.conj(x, y)));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn flatness_three_ways((s, mut rng) in case()) {
        let u = s.random_connection(&mut rng);
        let flat = curvature(&u).unwrap().is_flat();
        prop_assert_eq!(flat, u.is_cocycle());
        prop_assert_eq!(flat, u.induced_cocycle().unwrap() == u);
        prop_assert_eq!(flat, is_cocycle_oracle(&u));
        prop_assert_eq!(bianchi_oracle(&u), 0);
    }

    #[test]
    fn induced_cocycle_is_a_fixed_point((s, mut rng) in case()) {
        let u = s.random_connection(&mut rng);
        let z = u.induced_cocycle().unwrap();
        prop_assert!(z.is_cocycle());
        prop_assert_eq!(z.induced_cocycle().unwrap(), z);
    }

    #[test]
    fn cocycles_are_homotopy_invariant((s, mut rng) in case(), len in 1usize..6, steps in 1usize..6) {
        let z = s.random_cocycle(&mut rng);
        let start = Elem::new(0);
        let p = s.random_path(&mut rng, start, len);
        let want = z.evaluate_path(&p).unwrap();
        for q in s.random_homotopy(&mut rng, &p, steps) {
            prop_assert_eq!(z.evaluate_path(&q).unwrap(), want);
        }
    }

    #[test]
    fn gauge_moves_holonomy_by_conjugation((s, mut rng) in case()) {
        let u = s.random_connection(&mut rng);
        let f = s.random_morphism0(&mut rng);
        let v = u.gauge(&f).unwrap();
        prop_assert!(morphism_oracle(f.values(), &v, &u));
        let g = s.group();
        let base = Elem::new(0);
        let (hu, hv) = (Holonomy::compute(&u, base).unwrap(), Holonomy::compute(&v, base).unwrap());
        prop_assert!(g.subgroups_conjugate(&hu.full, &hv.full).is_some());
        prop_assert!(g.subgroups_conjugate(&hu.restricted, &hv.restricted).is_some());
        let back = cochains_equivalent(&u, &v).unwrap().unwrap();
        prop_assert!(morphism_oracle(back.values(), &v, &u));
    }

    #[test]
    fn gamma_inverts_upsilon((s, mut rng) in case()) {
        let u = s.random_connection(&mut rng);
        let z = u.induced_cocycle().unwrap();
        let rebuilt = reconstruct_bundle(&z).unwrap();
        prop_assert_eq!(rebuilt.cocycle().unwrap(), z);
        let theta = &rebuilt.trivialization;
        let connection = upsilon(theta, &u).unwrap();
        prop_assert!(connection.validate(rebuilt.bundle.bundle(), Some(&rebuilt.bundle)).is_empty());
        prop_assert_eq!(gamma(theta, &connection).unwrap(), u);
    }

    #[test]
    fn trivial_iff_global_section((s, mut rng) in case()) {
        let z = s.random_cocycle(&mut rng);
        let rebuilt = reconstruct_bundle(&z).unwrap();
        let trivial = Cochain1::trivial(z.complex().clone(), z.group().clone());
        let has_section = rebuilt.bundle.bundle().global_section().unwrap().is_some();
        prop_assert_eq!(has_section, cochains_equivalent(&trivial, &z).unwrap().is_some());
        let theta = &rebuilt.trivialization;
        prop_assert!(theta.check());
        prop_assert!(theta.transition_functions().is_valid());
    }

    #[test]
    fn cech_maps_preserve_cocycles((s, mut rng) in case()) {
        let z = s.random_cocycle(&mut rng);
        let xi = to_cech(&z).unwrap();
        prop_assert!(xi.violations().is_empty());
        prop_assert!(is_cocycle_oracle(&to_net(&xi).unwrap()));
        prop_assert_eq!(circle_map(&circle_map(&z).unwrap()).unwrap(), z);
    }
}

fn groups() -> Vec<Arc<Group>> {
    specs().iter().map(|s| group(s)).collect()
}

#[test]
fn group_axioms_hold_exhaustively() {
    for g in groups() {
        let e = g.identity();
        for a in g.elements() {
            assert_eq!(g.mul(a, e), a);
            assert_eq!(g.mul(e, a), a);
            assert_eq!(g.mul(a, g.inv(a)), e);
            for b in g.elements() {
                for c in g.elements() {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)), "{}", g.descriptor());
                }
            }
        }
    }
}

#[test]
fn class_counts_agree_with_the_dual() {
    for p in fixtures::all() {
        for g in groups() {
            let k = classify_cocycles(&shared(p.clone()), &g, BUDGET, Execution::default()).unwrap();
            let d = classify_cocycles(&shared(p.dual()), &g, BUDGET, Execution::default()).unwrap();
            assert_eq!(k.classes.len(), d.classes.len(), "{} {}", p.name(), g.descriptor());
        }
    }
}

#[test]
fn parallel_matches_sequential() {
    for c in fixture_complexes() {
        let pres = Presentation::new(&c, Elem::new(0)).unwrap();
        for g in groups() {
            let run = |exec| enumerate_homomorphisms(pres.generators().len(), pres.relators(), &g, BUDGET, exec).unwrap();
            assert_eq!(run(Execution::Parallel), run(Execution::Sequential));
            let classes = |exec| {
                classify_cocycles(&c, &g, BUDGET, exec)
                    .unwrap()
                    .classes
                    .into_iter()
                    .map(|k| (k.hom, k.size, k.cocycle))
                    .collect::<Vec<_>>()
            };
            assert_eq!(classes(Execution::Parallel), classes(Execution::Sequential));
        }
    }
    let circ = shared(fixtures::circ4());
    let z2 = group("Z2");
    let par = brute_force_classes(&circ, &z2, Execution::Parallel).unwrap();
    let seq = brute_force_classes(&circ, &z2, Execution::Sequential).unwrap();
    assert_eq!(par.cocycle_count, seq.cocycle_count);
    assert_eq!(par.representatives, seq.representatives);
}

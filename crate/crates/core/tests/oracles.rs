//! Library decisions checked against brute-force oracles.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::*;
use grpd::corpus::{self, Bounds};
use grpd::{
    are_homotopic, are_morita_equivalent, are_morita_homotopy_equivalent, build, cgeo, cocylinder,
    enumerate_functors, homotopy_pullback, is_essential_equivalence, is_transitive, orbits,
    relative_cgeo, skeleton_equal, skeletonize, tensor, validate_groupoid, Cospan, ExtNat,
    FinGroup, FinGroupoid, Obj, StrictArrow, Subgroupoid,
};

const TINY: Bounds = Bounds {
    max_objects: 3,
    max_isotropy: 3,
};

#[test]
fn validator_agrees_with_axiom_oracle() {
    let mut rng = corpus::rng(101);
    let mut verdicts = [0usize; 2];
    for (i, g) in corpus::groupoid_corpus(
        102,
        300,
        Bounds {
            max_objects: 4,
            max_isotropy: 4,
        },
        "g",
    )
    .iter()
    .enumerate()
    {
        let raw = corpus::perturbed_raw(&mut rng, g);
        let expected = raw_is_groupoid(&raw);
        let got = validate_groupoid(&raw);
        assert_eq!(got.is_ok(), expected, "instance {i}: {got:?}");
        if let Ok(v) = got {
            assert_eq!(v.to_raw(), raw);
        }
        verdicts[expected as usize] += 1;
    }
    // Both verdicts must actually occur.
    assert!(verdicts[0] > 50 && verdicts[1] > 50, "{verdicts:?}");
}

#[test]
fn functor_counts_of_small_examples() {
    let interval = Arc::new(build::interval());
    let pair2 = Arc::new(build::pair(2));
    let point = Arc::new(build::trivial());
    let z2 = Arc::new(build::point(&FinGroup::cyclic(2)));
    let z3 = Arc::new(build::point(&FinGroup::cyclic(3)));
    // 𝕀 and Pair(2) are isomorphic, and a strict functor out of 𝕀 is fixed
    // by where its connecting arrow goes: any of the 4 arrows of Pair(2).
    assert_eq!(brute_functor_count(&interval, &pair2), 4);
    assert_eq!(enumerate_functors(&interval, &pair2).count(), 4);
    assert_eq!(enumerate_functors(&point, &z2).count(), 1);
    assert_eq!(enumerate_functors(&z2, &z3).count(), 1);
    assert_eq!(enumerate_functors(&z2, &z2).count(), 2);
}

#[test]
fn enumeration_matches_brute_force() {
    let pool = corpus(103, 14, TINY);
    for h in &pool {
        for g in &pool {
            let all: Vec<StrictArrow> = enumerate_functors(h, g).collect();
            assert_eq!(
                all.len(),
                brute_functor_count(h, g),
                "{} -> {}",
                h.name(),
                g.name()
            );
            let distinct: BTreeSet<(Vec<Obj>, Vec<grpd::Arr>)> = all
                .iter()
                .map(|f| (f.obj_map().to_vec(), f.arr_map().to_vec()))
                .collect();
            assert_eq!(distinct.len(), all.len());
            for f in &all {
                f.validate().unwrap();
            }
            let keys: Vec<_> = all
                .iter()
                .map(|f| (f.obj_map().to_vec(), f.arr_map().to_vec()))
                .collect();
            assert!(keys.windows(2).all(|w| w[0] < w[1]), "lexicographic order");
        }
    }
}

#[test]
fn essential_equivalence_matches_definition() {
    let pool = corpus(104, 10, TINY);
    for h in &pool {
        for g in &pool {
            for f in enumerate_functors(h, g).take(40) {
                assert_eq!(
                    is_essential_equivalence(&f),
                    brute_essential_equivalence(&f)
                );
            }
        }
    }
}

#[test]
fn natural_transformations_match_exhaustive_search() {
    let pool = corpus(105, 8, TINY);
    for h in &pool {
        for g in &pool {
            let fs: Vec<StrictArrow> = enumerate_functors(h, g).take(12).collect();
            for f in &fs {
                for k in &fs {
                    let found = are_homotopic(f, k).unwrap();
                    assert_eq!(found.is_some(), brute_homotopic(f, k));
                    if let Some(t) = found {
                        t.validate().unwrap();
                    }
                }
            }
        }
    }
}

#[test]
fn orbits_and_transitivity_match_relaxation() {
    for g in corpus(106, 150, Bounds::default()) {
        let expected = naive_orbits(&g);
        let part = orbits(&g);
        let got: BTreeSet<BTreeSet<String>> = part
            .blocks
            .iter()
            .map(|b| b.iter().map(|&x| g.object_name(x).to_string()).collect())
            .collect();
        assert_eq!(got, expected);
        assert_eq!(is_transitive(&g), expected.len() == 1);
    }
}

#[test]
fn cgeo_matches_exhaustive_cover() {
    for g in corpus(107, 150, Bounds::default()) {
        let all: Vec<Obj> = g.objects().collect();
        let r = cgeo(&g);
        assert_eq!(
            r.cgeo,
            ExtNat::Finite(oracle_cover_number(&g, &all)),
            "{}",
            g.name()
        );
        let covered: BTreeSet<Obj> = r.cover.iter().flatten().copied().collect();
        assert_eq!(covered.len(), g.num_objects());
        for set in &r.cover {
            assert!(oracle_invariant(&g, set) && oracle_weak_point(&g, set));
        }
    }
}

#[test]
fn relative_cgeo_matches_exhaustive_cover() {
    for g in corpus(108, 60, Bounds::default()) {
        let blocks = orbits(&g).blocks;
        for mask in 0u32..1 << blocks.len() {
            let objs: Vec<Obj> = (0..blocks.len())
                .filter(|i| mask >> i & 1 == 1)
                .flat_map(|i| blocks[i].iter().copied())
                .collect();
            let h = Subgroupoid::invariant(&g, &objs).unwrap();
            let r = relative_cgeo(&h, &g).unwrap();
            assert_eq!(r.cgeo, ExtNat::Finite(oracle_cover_number(&g, &objs)));
        }
    }
}

#[test]
fn morita_decisions_match_orbit_oracle() {
    let mut rng = corpus::rng(109);
    let mut pool = corpus(
        110,
        30,
        Bounds {
            max_objects: 4,
            max_isotropy: 6,
        },
    );
    let extra: Vec<Arc<FinGroupoid>> = pool
        .iter()
        .map(|g| Arc::new(random_inflation(&mut rng, g, 2)))
        .collect();
    pool.extend(extra);
    let mut positives = 0;
    for a in &pool {
        let sa = skeletonize(a).unwrap();
        for b in &pool {
            let expected = oracle_equivalent(a, b);
            positives += expected as usize;
            assert_eq!(skeleton_equal(&sa, &skeletonize(b).unwrap()), expected);
            assert_eq!(
                are_morita_homotopy_equivalent(a, b).unwrap().is_some(),
                expected
            );
            let m = are_morita_equivalent(a, b).unwrap();
            assert_eq!(m.is_some(), expected, "{} vs {}", a.name(), b.name());
            if let Some(z) = m {
                assert!(z.is_equivalence());
            }
        }
    }
    assert!(positives > pool.len());
}

#[test]
fn cocylinder_arrows_are_the_commuting_squares() {
    for g in corpus(
        111,
        60,
        Bounds {
            max_objects: 4,
            max_isotropy: 4,
        },
    ) {
        let c = cocylinder(&g);
        assert_eq!(c.path.num_objects(), g.num_arrows());
        assert_eq!(c.path.num_arrows(), brute_cocylinder_arrows(&g));
    }
}

#[test]
fn pullback_sizes_match_definition() {
    let mut rng = corpus::rng(112);
    let pool = corpus(113, 12, TINY);
    for _ in 0..40 {
        let k = &pool[random_index(&mut rng, pool.len())];
        let j = &pool[random_index(&mut rng, pool.len())];
        let g = &pool[random_index(&mut rng, pool.len())];
        let phi = random_functor(&mut rng, k, g);
        let psi = random_functor(&mut rng, j, g);
        let expected = brute_pullback_size(&phi, &psi);
        let p = homotopy_pullback(&Cospan::new(phi, psi).unwrap(), 1).unwrap();
        p.groupoid.validate().unwrap();
        assert_eq!(
            (p.groupoid.num_objects(), p.groupoid.num_arrows()),
            expected
        );
    }
    let z2 = Arc::new(build::point(&FinGroup::cyclic(2)));
    let p = homotopy_pullback(&Cospan::identity(z2), 1).unwrap();
    assert_eq!((p.groupoid.num_objects(), p.groupoid.num_arrows()), (2, 8));
}

#[test]
fn tensor_carriers_match_orbit_enumeration() {
    let mut rng = corpus::rng(114);
    let pool = corpus(
        115,
        12,
        Bounds {
            max_objects: 4,
            max_isotropy: 4,
        },
    );
    for _ in 0..60 {
        let a = &pool[random_index(&mut rng, pool.len())];
        let b = &pool[random_index(&mut rng, pool.len())];
        let c = &pool[random_index(&mut rng, pool.len())];
        let z1 = grpd::functor_to_bibundle(&random_functor(&mut rng, a, b));
        let z2 = grpd::functor_to_bibundle(&random_functor(&mut rng, b, c));
        let t = tensor(&z1, &z2).unwrap();
        assert_eq!(t.len(), brute_tensor_size(&z1, &z2));
        assert!(t.is_right_principal());
    }
}

#[test]
fn random_functors_are_valid() {
    let mut rng = corpus::rng(116);
    let pool = corpus(117, 20, Bounds::default());
    for _ in 0..200 {
        let h = &pool[random_index(&mut rng, pool.len())];
        let g = &pool[random_index(&mut rng, pool.len())];
        random_functor(&mut rng, h, g).validate().unwrap();
    }
}

#[test]
fn points_have_one_weak_point_cover() {
    for (_, k) in grpd::group::small_groups_up_to_12() {
        let g = Arc::new(build::point(&k));
        assert_eq!(cgeo(&g).cgeo, ExtNat::Finite(1));
    }
    let names: Vec<String> = (0..5).map(|i| format!("d{i}")).collect();
    let d = Arc::new(build::discrete(&names));
    assert_eq!(oracle_cover_number(&d, &d.objects().collect::<Vec<_>>()), 5);
    assert_eq!(cgeo(&d).cgeo, ExtNat::Finite(5));
}

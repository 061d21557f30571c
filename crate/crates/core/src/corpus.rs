//! Seeded random instances: groupoids, bundles, covers and descent data.
//!
//! Every generator takes an explicit `ChaCha8Rng`, so a seed fixes the
//! whole corpus.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::descent::{descend, Bundle, Cover, DescentDatum, Piece, Transition};
use crate::group::{small_groups_up_to_12, FinGroup};
use crate::groupoid::{build, FinGroupoid, RawGroupoid};

/// Size bounds for random groupoids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_objects: usize,
    pub max_isotropy: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_objects: 6,
            max_isotropy: 6,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_groups(max_order: usize) -> Vec<FinGroup> {
    small_groups_up_to_12()
        .into_iter()
        .map(|(_, g)| g)
        .filter(|g| g.order() <= max_order)
        .collect()
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// A permutation group on `degree` points of order at most `max_order`,
/// generated by one or two random permutations; falls back to the cyclic
/// group of a single generator, then to the trivial group.
fn random_permutation_group(
    rng: &mut ChaCha8Rng,
    degree: usize,
    max_order: usize,
) -> (FinGroup, Vec<Vec<usize>>) {
    for _ in 0..8 {
        let gens: Vec<Vec<usize>> = (0..rng.gen_range(1..=2))
            .map(|_| random_permutation(rng, degree))
            .collect();
        let (g, elems) = FinGroup::permutation_closure(degree, &gens);
        if g.order() <= max_order {
            return (g, elems);
        }
    }
    FinGroup::permutation_closure(degree, &[])
}

/// One connected-or-not component: `Pair(n) × •^K` or an action groupoid.
fn random_component(
    rng: &mut ChaCha8Rng,
    objects: usize,
    bounds: Bounds,
    tag: usize,
) -> FinGroupoid {
    let names: Vec<String> = (0..objects).map(|i| format!("c{tag}x{i}")).collect();
    if rng.gen_bool(0.5) {
        let groups = small_groups(bounds.max_isotropy);
        let k = groups.choose(rng).expect("trivial group fits");
        build::product_with_group(&names, k)
    } else {
        let (k, perms) = random_permutation_group(rng, objects, bounds.max_isotropy);
        build::action(&names, &k, &perms)
    }
}

/// Randomly permutes object and arrow indices, keeping ids.
pub fn shuffle_indices(rng: &mut ChaCha8Rng, g: &FinGroupoid) -> FinGroupoid {
    let op = random_permutation(rng, g.num_objects());
    let ap = random_permutation(rng, g.num_arrows());
    build::reindex(g, &op, &ap)
}

/// A disjoint union of random components with at most `bounds.max_objects`
/// objects in total and isotropy of order at most `bounds.max_isotropy`,
/// randomly reindexed.
pub fn random_groupoid(rng: &mut ChaCha8Rng, bounds: Bounds, name: &str) -> FinGroupoid {
    let total = rng.gen_range(1..=bounds.max_objects.max(1));
    let mut sizes = Vec::new();
    let mut left = total;
    while left > 0 {
        let s = rng.gen_range(1..=left);
        sizes.push(s);
        left -= s;
    }
    let parts: Vec<FinGroupoid> = sizes
        .iter()
        .enumerate()
        .map(|(tag, &s)| random_component(rng, s, bounds, tag))
        .collect();
    let refs: Vec<&FinGroupoid> = parts.iter().collect();
    let union = build::disjoint_union(&refs);
    shuffle_indices(rng, &union).with_name(name)
}

/// `count` groupoids named `{prefix}{i}`.
pub fn groupoid_corpus(seed: u64, count: usize, bounds: Bounds, prefix: &str) -> Vec<FinGroupoid> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| random_groupoid(&mut r, bounds, &format!("{prefix}{i}")))
        .collect()
}

/// Copy counts in `1..=max_copies` for every object.
pub fn random_copies(rng: &mut ChaCha8Rng, g: &FinGroupoid, max_copies: usize) -> Vec<usize> {
    g.objects().map(|_| rng.gen_range(1..=max_copies)).collect()
}

/// Raw groupoid data that is valid or carries one random defect: a changed
/// composite, inverse or unit, or a dropped line.
pub fn perturbed_raw(rng: &mut ChaCha8Rng, g: &FinGroupoid) -> RawGroupoid {
    let mut raw = g.to_raw();
    let arrows: Vec<String> = raw.arrows.iter().map(|a| a.0.clone()).collect();
    match rng.gen_range(0..6) {
        0 if !raw.comps.is_empty() => {
            let i = rng.gen_range(0..raw.comps.len());
            raw.comps[i].2 = arrows.choose(rng).expect("nonempty").clone();
        }
        1 if !raw.inverses.is_empty() => {
            let i = rng.gen_range(0..raw.inverses.len());
            raw.inverses[i].1 = arrows.choose(rng).expect("nonempty").clone();
        }
        2 if !raw.units.is_empty() => {
            let i = rng.gen_range(0..raw.units.len());
            raw.units[i].1 = arrows.choose(rng).expect("nonempty").clone();
        }
        3 if !raw.comps.is_empty() => {
            let i = rng.gen_range(0..raw.comps.len());
            raw.comps.remove(i);
        }
        _ => {}
    }
    raw
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// A bundle over a base of `1..=max_base` points with fibers of size
/// `0..=max_fiber`.
pub fn random_bundle(rng: &mut ChaCha8Rng, max_base: usize, max_fiber: usize) -> Bundle {
    let base = names("x", rng.gen_range(1..=max_base));
    let mut total = Vec::new();
    let mut proj = Vec::new();
    for x in 0..base.len() {
        for _ in 0..rng.gen_range(0..=max_fiber) {
            total.push(format!("e{}", total.len()));
            proj.push(x);
        }
    }
    Bundle { base, total, proj }
}

/// A jointly surjective family of `1..=max_pieces` maps into `base`, each
/// piece having at most `max_points` points. More pieces are used when
/// `max_pieces` of them cannot hold the base.
pub fn random_cover(
    rng: &mut ChaCha8Rng,
    base: &[String],
    max_pieces: usize,
    max_points: usize,
) -> Cover {
    let max_points = max_points.max(1);
    let least = base.len().div_ceil(max_points).max(1);
    let n = rng.gen_range(least..=max_pieces.max(least));
    let mut maps: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut order: Vec<usize> = (0..base.len()).collect();
    order.shuffle(rng);
    // Distribute every base point first so the family is surjective.
    for x in order {
        let open: Vec<usize> = (0..n).filter(|&i| maps[i].len() < max_points).collect();
        let i = *open.choose(rng).expect("enough room");
        maps[i].push(x);
    }
    for m in maps.iter_mut() {
        let extra = rng.gen_range(0..=max_points.saturating_sub(m.len()).min(2));
        for _ in 0..extra {
            m.push(rng.gen_range(0..base.len()));
        }
        m.shuffle(rng);
    }
    let pieces = maps
        .into_iter()
        .enumerate()
        .map(|(i, map)| Piece {
            name: format!("U{i}"),
            points: names(&format!("u{i}."), map.len()),
            map,
        })
        .collect();
    Cover::new(base.to_vec(), pieces).expect("surjective by construction")
}

/// A valid descent datum that is not literally a pulled-back one: the
/// descent of a random bundle, relabelled by a random fiber-preserving
/// permutation on every piece.
pub fn random_datum(rng: &mut ChaCha8Rng, a: &Bundle, c: &Cover) -> DescentDatum {
    let d = descend(a, c);
    let perms: Vec<Vec<usize>> = d
        .fibers
        .iter()
        .map(|f| {
            let mut p: Vec<usize> = (0..f.total.len()).collect();
            for u in 0..f.base.len() {
                let fiber = f.fiber(u);
                let mut image = fiber.clone();
                image.shuffle(rng);
                for (src, dst) in fiber.into_iter().zip(image) {
                    p[src] = dst;
                }
            }
            p
        })
        .collect();
    let fibers = d
        .fibers
        .iter()
        .zip(&perms)
        .map(|(f, p)| {
            let mut proj = vec![0; f.total.len()];
            for (a, &u) in f.proj.iter().enumerate() {
                proj[p[a]] = u;
            }
            Bundle {
                base: f.base.clone(),
                total: names("a", f.total.len()),
                proj,
            }
        })
        .collect();
    let transitions: BTreeMap<(usize, usize), Transition> = d
        .transitions
        .iter()
        .map(|(&(i, j), t)| {
            let t2 = t
                .iter()
                .map(|(&(a, v), &b)| ((perms[i][a], v), perms[j][b]))
                .collect();
            ((i, j), t2)
        })
        .collect();
    DescentDatum::new(d.cover.clone(), fibers, transitions).expect("relabelled datum")
}

//! Brute-force oracles shared by the integration tests. They work from
//! definitions, without the indexed tables or searches of the library.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use grpd::corpus::{self, Bounds};
use grpd::{build, Arr, Bibundle, FinGroupoid, Obj, RawGroupoid, StrictArrow};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Checks the groupoid axioms on raw string data by direct lookup.
pub fn raw_is_groupoid(raw: &RawGroupoid) -> bool {
    let objects: HashSet<&str> = raw.objects.iter().map(String::as_str).collect();
    if objects.len() != raw.objects.len() {
        return false;
    }
    let mut ends: HashMap<&str, (&str, &str)> = HashMap::new();
    for (a, s, t) in &raw.arrows {
        if !objects.contains(s.as_str()) || !objects.contains(t.as_str()) {
            return false;
        }
        if ends.insert(a, (s, t)).is_some() {
            return false;
        }
    }
    let mut unit: HashMap<&str, &str> = HashMap::new();
    for (o, a) in &raw.units {
        if !objects.contains(o.as_str()) || !ends.contains_key(a.as_str()) {
            return false;
        }
        if unit.insert(o, a).is_some_and(|prev| prev != a) {
            return false;
        }
    }
    let mut inv: HashMap<&str, &str> = HashMap::new();
    for (a, b) in &raw.inverses {
        if !ends.contains_key(a.as_str()) || !ends.contains_key(b.as_str()) {
            return false;
        }
        if inv.insert(a, b).is_some_and(|prev| prev != b) {
            return false;
        }
    }
    let mut comp: HashMap<(&str, &str), &str> = HashMap::new();
    for (g, f, h) in &raw.comps {
        for x in [g, f, h] {
            if !ends.contains_key(x.as_str()) {
                return false;
            }
        }
        if comp.insert((g, f), h).is_some_and(|prev| prev != h) {
            return false;
        }
    }
    if unit.len() != objects.len() || inv.len() != ends.len() {
        return false;
    }
    for (&o, &u) in &unit {
        if ends[u] != (o, o) {
            return false;
        }
    }
    // Composites are defined exactly on composable pairs, with the right type.
    for (&(g, f), &h) in &comp {
        if ends[g].0 != ends[f].1 || ends[h] != (ends[f].0, ends[g].1) {
            return false;
        }
    }
    for (&g, &(gs, _)) in &ends {
        for (&f, &(_, ft)) in &ends {
            if ft == gs && !comp.contains_key(&(g, f)) {
                return false;
            }
        }
    }
    for (&a, &(s, t)) in &ends {
        if comp[&(a, unit[s])] != a || comp[&(unit[t], a)] != a {
            return false;
        }
        let b = inv[a];
        if ends[b] != (t, s) || comp[&(b, a)] != unit[s] || comp[&(a, b)] != unit[t] {
            return false;
        }
    }
    for (&(g, f), &gf) in &comp {
        for (&h, &(hs, _)) in &ends {
            if hs == ends[g].1 && comp[&(h, gf)] != comp[&(comp[&(h, g)], f)] {
                return false;
            }
        }
    }
    true
}

/// Orbits as sets of object names, by repeated relaxation over arrows.
pub fn naive_orbits(g: &FinGroupoid) -> BTreeSet<BTreeSet<String>> {
    let raw = g.to_raw();
    let mut label: HashMap<String, String> =
        raw.objects.iter().map(|o| (o.clone(), o.clone())).collect();
    loop {
        let mut changed = false;
        for (_, s, t) in &raw.arrows {
            let (ls, lt) = (label[s].clone(), label[t].clone());
            if ls != lt {
                let low = ls.clone().min(lt.clone());
                for l in label.values_mut() {
                    if *l == ls || *l == lt {
                        *l = low.clone();
                    }
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut blocks: HashMap<String, BTreeSet<String>> = HashMap::new();
    for (o, l) in label {
        blocks.entry(l).or_default().insert(o);
    }
    blocks.into_values().collect()
}

/// A group as a multiplication table on `0..n`.
#[derive(Debug, Clone)]
pub struct Table {
    pub n: usize,
    pub mul: Vec<Vec<usize>>,
}

/// The isotropy group at `x`, numbered by the order of `hom(x, x)`.
pub fn isotropy_table(g: &FinGroupoid, x: Obj) -> Table {
    let loops = g.hom(x, x);
    let pos = |a: Arr| loops.iter().position(|&b| b == a).unwrap();
    Table {
        n: loops.len(),
        mul: loops
            .iter()
            .map(|&a| loops.iter().map(|&b| pos(g.compose(a, b))).collect())
            .collect(),
    }
}

/// Tries every bijection, extending partial maps only while they respect
/// all products already determined.
pub fn brute_isomorphic(a: &Table, b: &Table) -> bool {
    fn extend(a: &Table, b: &Table, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = map.len();
        if i == a.n {
            return true;
        }
        for j in 0..b.n {
            if used[j] {
                continue;
            }
            map.push(j);
            let ok = (0..=i).all(|x| {
                (0..=i).all(|y| {
                    let xy = a.mul[x][y];
                    xy > i || b.mul[map[x]][map[y]] == map[xy]
                })
            });
            if ok {
                used[j] = true;
                if extend(a, b, map, used) {
                    return true;
                }
                used[j] = false;
            }
            map.pop();
        }
        false
    }
    a.n == b.n && extend(a, b, &mut Vec::new(), &mut vec![false; b.n])
}

fn orbit_groups(g: &FinGroupoid) -> Vec<Table> {
    naive_orbits(g)
        .iter()
        .map(|block| {
            let x = g.object_by_name(block.iter().next().unwrap()).unwrap();
            isotropy_table(g, x)
        })
        .collect()
}

/// Two finite groupoids are equivalent iff their orbits match up with
/// isomorphic isotropy groups; decided by backtracking over matchings.
pub fn oracle_equivalent(g: &FinGroupoid, h: &FinGroupoid) -> bool {
    fn matching(a: &[Table], b: &[Table], used: &mut [bool]) -> bool {
        let Some((first, rest)) = a.split_first() else {
            return true;
        };
        for j in 0..b.len() {
            if !used[j] && brute_isomorphic(first, &b[j]) {
                used[j] = true;
                if matching(rest, b, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    let (a, b) = (orbit_groups(g), orbit_groups(h));
    a.len() == b.len() && matching(&a, &b, &mut vec![false; b.len()])
}

/// Whether the subset can be moved into a single object by arrows, which is
/// what a natural isomorphism from its inclusion to a map through a point
/// groupoid amounts to.
pub fn oracle_weak_point(g: &FinGroupoid, subset: &[Obj]) -> bool {
    subset.is_empty()
        || g.objects()
            .any(|x0| subset.iter().all(|&u| !g.hom(u, x0).is_empty()))
}

/// Whether the subset is closed under arrows.
pub fn oracle_invariant(g: &FinGroupoid, subset: &[Obj]) -> bool {
    g.arrows()
        .all(|a| subset.contains(&g.src(a)) == subset.contains(&g.tgt(a)))
}

/// Least number of invariant weak point subsets covering `target`, by trying
/// every family of every size over all object subsets.
pub fn oracle_cover_number(g: &FinGroupoid, target: &[Obj]) -> usize {
    let n = g.num_objects();
    assert!(n <= 12, "exhaustive oracle is for small groupoids");
    let candidates: Vec<u32> = (1u32..1 << n)
        .filter(|&m| {
            let s: Vec<Obj> = (0..n).filter(|i| m >> i & 1 == 1).map(Obj).collect();
            oracle_invariant(g, &s) && oracle_weak_point(g, &s)
        })
        .collect();
    let need: u32 = target.iter().map(|x| 1u32 << x.0).sum();
    fn search(cands: &[u32], k: usize, start: usize, acc: u32, need: u32) -> bool {
        if acc & need == need {
            return true;
        }
        k > 0 && (start..cands.len()).any(|i| search(cands, k - 1, i + 1, acc | cands[i], need))
    }
    (0..=candidates.len())
        .find(|&k| search(&candidates, k, 0, 0, need))
        .expect("singleton orbits always cover")
}

/// Counts strict functors by trying every object map and every arrow map,
/// pruning on already assigned composable pairs.
pub fn brute_functor_count(h: &FinGroupoid, g: &FinGroupoid) -> usize {
    fn arrows(h: &FinGroupoid, g: &FinGroupoid, objs: &[Obj], map: &mut Vec<Arr>) -> usize {
        let i = map.len();
        if i == h.num_arrows() {
            return 1;
        }
        let a = Arr(i);
        let mut total = 0;
        for &b in g.hom(objs[h.src(a).0], objs[h.tgt(a).0]) {
            map.push(b);
            let ok = (0..=i).all(|x| {
                (0..=i).all(|y| match h.try_compose(Arr(x), Arr(y)) {
                    Some(xy) if xy.0 <= i => g.compose(map[x], map[y]) == map[xy.0],
                    _ => true,
                })
            });
            if ok {
                total += arrows(h, g, objs, map);
            }
            map.pop();
        }
        total
    }
    let (m, n) = (h.num_objects(), g.num_objects());
    let mut total = 0;
    let mut objs = vec![Obj(0); m];
    for code in 0..n.pow(m as u32) {
        let mut c = code;
        for o in objs.iter_mut() {
            *o = Obj(c % n);
            c /= n;
        }
        total += arrows(h, g, &objs, &mut Vec::new());
    }
    total
}

/// Searches every component assignment for a natural transformation.
pub fn brute_homotopic(f: &StrictArrow, g: &StrictArrow) -> bool {
    let (h, c) = (f.dom(), f.cod());
    let choices: Vec<&[Arr]> = h.objects().map(|x| c.hom(f.obj(x), g.obj(x))).collect();
    if choices.iter().any(|s| s.is_empty()) {
        return false;
    }
    let mut idx = vec![0; choices.len()];
    loop {
        let t: Vec<Arr> = idx.iter().zip(&choices).map(|(&i, s)| s[i]).collect();
        let natural = h
            .arrows()
            .all(|a| c.compose(g.arr(a), t[h.src(a).0]) == c.compose(t[h.tgt(a).0], f.arr(a)));
        if natural {
            return true;
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return false;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Essentially surjective and bijective on every hom-set.
pub fn brute_essential_equivalence(f: &StrictArrow) -> bool {
    let (h, g) = (f.dom(), f.cod());
    let surjective = g
        .objects()
        .all(|y| h.objects().any(|x| !g.hom(f.obj(x), y).is_empty()));
    let faithful_full = h.objects().all(|x| {
        h.objects().all(|y| {
            let image: BTreeSet<Arr> = h.hom(x, y).iter().map(|&a| f.arr(a)).collect();
            image.len() == h.hom(x, y).len() && image.len() == g.hom(f.obj(x), f.obj(y)).len()
        })
    });
    surjective && faithful_full
}

/// Size of `(Z1 ∗ Z2)/G`, by exploring the diagonal action orbit by orbit.
pub fn brute_tensor_size(z1: &Bibundle, z2: &Bibundle) -> usize {
    let g = z1.target();
    let pairs: Vec<(usize, usize)> = (0..z1.len())
        .flat_map(|z| (0..z2.len()).map(move |w| (z, w)))
        .filter(|&(z, w)| z1.q(z) == z2.p(w))
        .collect();
    let mut seen = HashSet::new();
    let mut classes = 0;
    for &start in &pairs {
        if !seen.insert(start) {
            continue;
        }
        classes += 1;
        let mut stack = vec![start];
        while let Some((z, w)) = stack.pop() {
            for gamma in g.arrows().filter(|&a| g.tgt(a) == z1.q(z)) {
                let next = (
                    z1.right().act(z, gamma).unwrap(),
                    z2.left().act(w, g.inv(gamma)).unwrap(),
                );
                if seen.insert(next) {
                    stack.push(next);
                }
            }
        }
    }
    classes
}

/// Objects and arrows of the first homotopy pullback of `φ: K -> G <- J: ψ`,
/// counted from the defining conditions.
pub fn brute_pullback_size(phi: &StrictArrow, psi: &StrictArrow) -> (usize, usize) {
    let (k, g, j) = (phi.dom(), phi.cod(), psi.dom());
    let mut objects = Vec::new();
    for x in k.objects() {
        for y in j.objects() {
            for &s in g.hom(phi.obj(x), psi.obj(y)) {
                objects.push((x, s, y));
            }
        }
    }
    let mut arrows = 0;
    for &(x, s, y) in &objects {
        for &(x2, s2, y2) in &objects {
            for &kappa in k.hom(x, x2) {
                for &iota in j.hom(y, y2) {
                    if g.compose(s2, phi.arr(kappa)) == g.compose(psi.arr(iota), s) {
                        arrows += 1;
                    }
                }
            }
        }
    }
    (objects.len(), arrows)
}

/// Arrow count of `G^𝕀` from its definition: commuting squares between
/// pairs of arrows.
pub fn brute_cocylinder_arrows(g: &FinGroupoid) -> usize {
    let mut n = 0;
    for a in g.arrows() {
        for b in g.arrows() {
            for &u in g.hom(g.src(a), g.src(b)) {
                for &v in g.hom(g.tgt(a), g.tgt(b)) {
                    if g.compose(v, a) == g.compose(b, u) {
                        n += 1;
                    }
                }
            }
        }
    }
    n
}

/// A random homomorphism between isotropy groups, by backtracking over
/// shuffled candidate images.
fn random_hom(rng: &mut ChaCha8Rng, a: &Table, b: &Table) -> Vec<usize> {
    fn extend(rng: &mut ChaCha8Rng, a: &Table, b: &Table, map: &mut Vec<usize>) -> bool {
        let i = map.len();
        if i == a.n {
            return true;
        }
        let mut cands: Vec<usize> = (0..b.n).collect();
        cands.shuffle(rng);
        for j in cands {
            map.push(j);
            let ok = (0..=i).all(|x| {
                (0..=i).all(|y| {
                    let xy = a.mul[x][y];
                    xy > i || b.mul[map[x]][map[y]] == map[xy]
                })
            });
            if ok && extend(rng, a, b, map) {
                return true;
            }
            map.pop();
        }
        false
    }
    let mut map = Vec::new();
    assert!(
        extend(rng, a, b, &mut map),
        "the trivial homomorphism exists"
    );
    map
}

type Hom = (Vec<Arr>, Vec<Arr>, Vec<usize>);

/// A random strict functor: each orbit of `h` goes to a random orbit of `g`,
/// objects to random members, spanning arrows to random connecting arrows
/// and isotropy through a random homomorphism.
pub fn random_functor(
    rng: &mut ChaCha8Rng,
    h: &Arc<FinGroupoid>,
    g: &Arc<FinGroupoid>,
) -> StrictArrow {
    let g_orbits: Vec<Vec<Obj>> = naive_orbits(g)
        .iter()
        .map(|b| b.iter().map(|n| g.object_by_name(n).unwrap()).collect())
        .collect();
    let mut obj_map = vec![Obj(0); h.num_objects()];
    // `span[x]`: an arrow base -> x inside the orbit of x, and its image.
    let mut span: Vec<Option<(Obj, Arr, Arr)>> = vec![None; h.num_objects()];
    // Per base: loops of `h`, loops of `g` and the chosen homomorphism.
    let mut homs: HashMap<Obj, Hom> = HashMap::new();
    for block in naive_orbits(h) {
        let members: Vec<Obj> = block.iter().map(|n| h.object_by_name(n).unwrap()).collect();
        let base = members[0];
        let target = g_orbits.choose(rng).unwrap();
        let gbase = *target.choose(rng).unwrap();
        for &x in &members {
            let y = *target.choose(rng).unwrap();
            obj_map[x.0] = y;
            let (to_x, image) = if x == base {
                (h.unit(base), g.unit(gbase))
            } else {
                (h.hom(base, x)[0], *g.hom(gbase, y).choose(rng).unwrap())
            };
            span[x.0] = Some((base, to_x, image));
        }
        obj_map[base.0] = gbase;
        let hl = h.hom(base, base).to_vec();
        let gl = g.hom(gbase, gbase).to_vec();
        let phi = random_hom(rng, &isotropy_table(h, base), &isotropy_table(g, gbase));
        homs.insert(base, (hl, gl, phi));
    }
    let arr_map = h
        .arrows()
        .map(|a| {
            let (base, tx, ix) = span[h.src(a).0].unwrap();
            let (_, ty, iy) = span[h.tgt(a).0].unwrap();
            let loop_ = h.compose(h.compose(h.inv(ty), a), tx);
            let (hl, gl, phi) = &homs[&base];
            let l = gl[phi[hl.iter().position(|&b| b == loop_).unwrap()]];
            g.compose(g.compose(iy, l), g.inv(ix))
        })
        .collect();
    StrictArrow::new(h.clone(), g.clone(), obj_map, arr_map).expect("random functor")
}

/// Random groupoids, each wrapped for sharing.
pub fn corpus(seed: u64, count: usize, bounds: Bounds) -> Vec<Arc<FinGroupoid>> {
    corpus::groupoid_corpus(seed, count, bounds, "g")
        .into_iter()
        .map(Arc::new)
        .collect()
}

/// Random inflation with at most `max_copies` copies per object.
pub fn random_inflation(rng: &mut ChaCha8Rng, g: &FinGroupoid, max_copies: usize) -> FinGroupoid {
    let copies = corpus::random_copies(rng, g, max_copies);
    let inflated = build::inflate(g, &copies);
    corpus::shuffle_indices(rng, &inflated).with_name(format!("{}+", g.name()))
}

pub fn random_index(rng: &mut ChaCha8Rng, n: usize) -> usize {
    rng.gen_range(0..n)
}

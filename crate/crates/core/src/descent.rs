//! Set-valued descent along finite covers.
//!
//! A bundle over a finite set is a total set with a projection. A descent
//! datum over a cover `{φ_i: U_i -> X}` has a bundle `A_i` over each `U_i`
//! and, for each ordered pair `(i, j)` and each overlap point
//! `(u, v) ∈ U_i ×_X U_j`, a map from the fiber of `A_i` over `u` to the
//! fiber of `A_j` over `v`. It is stored as `f_ij(a, v)` for `a ∈ A_i`.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescentError {
    #[error("point `{0}` of the base is not covered")]
    NotSurjective(String),
    #[error("map `{0}` sends an element out of range")]
    OutOfRange(String),
    #[error("transition {i}->{j} is missing a value at element {a} over overlap point {v}")]
    MissingTransition {
        i: usize,
        j: usize,
        a: usize,
        v: usize,
    },
    #[error("transition {i}->{j} sends element {a} outside the fiber over {v}")]
    MisplacedTransition {
        i: usize,
        j: usize,
        a: usize,
        v: usize,
    },
    #[error("datum has {found} fibers for {expected} pieces")]
    FiberCount { expected: usize, found: usize },
    #[error("cocycle condition fails: {0}")]
    CocycleViolation(CocycleFailure),
}

/// A finite set with a map to a base set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bundle {
    pub base: Vec<String>,
    pub total: Vec<String>,
    pub proj: Vec<usize>,
}

impl Bundle {
    pub fn new(
        base: Vec<String>,
        total: Vec<String>,
        proj: Vec<usize>,
    ) -> Result<Self, DescentError> {
        if proj.len() != total.len() || proj.iter().any(|&x| x >= base.len()) {
            return Err(DescentError::OutOfRange("projection".into()));
        }
        Ok(Bundle { base, total, proj })
    }

    /// Elements over `x`, in order.
    pub fn fiber(&self, x: usize) -> Vec<usize> {
        (0..self.total.len())
            .filter(|&e| self.proj[e] == x)
            .collect()
    }

    /// `X × F` with elements named `(x,f)`.
    pub fn product(base: &[String], fiber: &[String]) -> Self {
        let mut total = Vec::new();
        let mut proj = Vec::new();
        for (x, xn) in base.iter().enumerate() {
            for f in fiber {
                total.push(format!("({xn},{f})"));
                proj.push(x);
            }
        }
        Bundle {
            base: base.to_vec(),
            total,
            proj,
        }
    }
}

/// One member `φ: U -> X` of a cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub name: String,
    pub points: Vec<String>,
    pub map: Vec<usize>,
}

/// A jointly surjective family of maps into `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub base: Vec<String>,
    pub pieces: Vec<Piece>,
}

impl Cover {
    pub fn new(base: Vec<String>, pieces: Vec<Piece>) -> Result<Self, DescentError> {
        let mut hit = vec![false; base.len()];
        for p in &pieces {
            if p.map.len() != p.points.len() || p.map.iter().any(|&x| x >= base.len()) {
                return Err(DescentError::OutOfRange(p.name.clone()));
            }
            for &x in &p.map {
                hit[x] = true;
            }
        }
        if let Some(x) = hit.iter().position(|h| !h) {
            return Err(DescentError::NotSurjective(base[x].clone()));
        }
        Ok(Cover { base, pieces })
    }

    /// The cover consisting of the identity map alone.
    pub fn identity(base: Vec<String>) -> Self {
        let piece = Piece {
            name: "id".into(),
            points: base.clone(),
            map: (0..base.len()).collect(),
        };
        Cover {
            base,
            pieces: vec![piece],
        }
    }

    /// Points of `U_j` over the image of `u ∈ U_i`.
    fn over(&self, i: usize, u: usize, j: usize) -> impl Iterator<Item = usize> + '_ {
        let x = self.pieces[i].map[u];
        let pj = &self.pieces[j];
        (0..pj.points.len()).filter(move |&v| pj.map[v] == x)
    }
}

/// Transition maps `f_ij`, keyed by `(a, v)` with `a ∈ A_i`, `v ∈ U_j`.
pub type Transition = BTreeMap<(usize, usize), usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentDatum {
    pub cover: Cover,
    /// `A_i` over `U_i`.
    pub fibers: Vec<Bundle>,
    /// `transitions[(i, j)]`; pairs of pieces that do not overlap have no
    /// entry, so equal data compare equal.
    pub transitions: BTreeMap<(usize, usize), Transition>,
}

impl DescentDatum {
    /// Checks that every transition is total and respects fibers.
    pub fn new(
        cover: Cover,
        fibers: Vec<Bundle>,
        transitions: BTreeMap<(usize, usize), Transition>,
    ) -> Result<Self, DescentError> {
        let n = cover.pieces.len();
        if fibers.len() != n {
            return Err(DescentError::FiberCount {
                expected: n,
                found: fibers.len(),
            });
        }
        for (i, f) in fibers.iter().enumerate() {
            if f.base.len() != cover.pieces[i].points.len() {
                return Err(DescentError::OutOfRange(cover.pieces[i].name.clone()));
            }
        }
        let transitions = transitions
            .into_iter()
            .filter(|(_, t)| !t.is_empty())
            .collect();
        let d = DescentDatum {
            cover,
            fibers,
            transitions,
        };
        for i in 0..n {
            for j in 0..n {
                for a in 0..d.fibers[i].total.len() {
                    let u = d.fibers[i].proj[a];
                    for v in d.cover.over(i, u, j) {
                        match d.transition(i, j, a, v) {
                            None => return Err(DescentError::MissingTransition { i, j, a, v }),
                            Some(b) if b >= d.fibers[j].total.len() || d.fibers[j].proj[b] != v => {
                                return Err(DescentError::MisplacedTransition { i, j, a, v })
                            }
                            Some(_) => {}
                        }
                    }
                }
            }
        }
        Ok(d)
    }

    pub fn transition(&self, i: usize, j: usize, a: usize, v: usize) -> Option<usize> {
        self.transitions.get(&(i, j))?.get(&(a, v)).copied()
    }

    /// Constant datum: fiber `F` over every piece, identity transitions.
    pub fn constant(cover: Cover, fiber: &[String]) -> Self {
        let fibers: Vec<Bundle> = cover
            .pieces
            .iter()
            .map(|p| Bundle::product(&p.points, fiber))
            .collect();
        let k = fiber.len();
        let mut transitions = BTreeMap::new();
        for i in 0..fibers.len() {
            for j in 0..fibers.len() {
                let mut t = Transition::new();
                for a in 0..fibers[i].total.len() {
                    for v in cover.over(i, fibers[i].proj[a], j) {
                        t.insert((a, v), v * k + a % k);
                    }
                }
                if !t.is_empty() {
                    transitions.insert((i, j), t);
                }
            }
        }
        DescentDatum {
            cover,
            fibers,
            transitions,
        }
    }
}

/// The first point at which a datum fails to be a cocycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocycleFailure {
    /// `f_ij` over `(u, v)` is not a bijection of fibers.
    NotBijective {
        i: usize,
        j: usize,
        u: usize,
        v: usize,
    },
    /// `f_ii(a, u) ≠ a` on the diagonal.
    Diagonal { i: usize, a: usize },
    /// `f_jk(f_ij(a, v), w) ≠ f_ik(a, w)`.
    Triple {
        i: usize,
        j: usize,
        k: usize,
        a: usize,
        v: usize,
        w: usize,
    },
}

impl std::fmt::Display for CocycleFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CocycleFailure::NotBijective { i, j, u, v } => {
                write!(f, "transition {i}->{j} over ({u},{v}) is not a bijection")
            }
            CocycleFailure::Diagonal { i, a } => {
                write!(f, "transition {i}->{i} moves element {a} on the diagonal")
            }
            CocycleFailure::Triple { i, j, k, a, v, w } => write!(
                f,
                "transitions {i}->{j}->{k} and {i}->{k} disagree at element {a} via ({v},{w})"
            ),
        }
    }
}

/// Checks bijectivity, the diagonal condition and the triple-overlap
/// condition pointwise, in that order.
pub fn check_cocycle(d: &DescentDatum) -> Result<(), CocycleFailure> {
    let n = d.cover.pieces.len();
    for i in 0..n {
        for j in 0..n {
            for u in 0..d.cover.pieces[i].points.len() {
                let src = d.fibers[i].fiber(u);
                for v in d.cover.over(i, u, j) {
                    let dst = d.fibers[j].fiber(v);
                    let mut img: Vec<usize> = src
                        .iter()
                        .map(|&a| d.transition(i, j, a, v).unwrap())
                        .collect();
                    img.sort_unstable();
                    img.dedup();
                    if img.len() != src.len() || src.len() != dst.len() {
                        return Err(CocycleFailure::NotBijective { i, j, u, v });
                    }
                }
            }
        }
    }
    for i in 0..n {
        for a in 0..d.fibers[i].total.len() {
            if d.transition(i, i, a, d.fibers[i].proj[a]) != Some(a) {
                return Err(CocycleFailure::Diagonal { i, a });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for a in 0..d.fibers[i].total.len() {
                    let u = d.fibers[i].proj[a];
                    for v in d.cover.over(i, u, j) {
                        let b = d.transition(i, j, a, v).unwrap();
                        for w in d.cover.over(i, u, k) {
                            if d.transition(j, k, b, w) != d.transition(i, k, a, w) {
                                return Err(CocycleFailure::Triple { i, j, k, a, v, w });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// A glued bundle with the class of each local element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Glued {
    pub bundle: Bundle,
    /// `classes[i][a]` is the glued element represented by `a ∈ A_i`.
    pub classes: Vec<Vec<usize>>,
}

impl Glued {
    /// The isomorphism `A_i -> φ_i^*(A)`, `a ↦ (p(a), [a])`, as indices into
    /// [`pull_back`] of the glued bundle along piece `i`.
    pub fn restriction(&self, d: &DescentDatum, i: usize) -> Vec<usize> {
        let index = pullback_index(&self.bundle, &d.cover.pieces[i]);
        self.classes[i]
            .iter()
            .enumerate()
            .map(|(a, &e)| index[&(d.fibers[i].proj[a], e)])
            .collect()
    }
}

/// Quotient of `⊔ A_i` by `a ~ f_ij(a, v)`.
pub fn glue(d: &DescentDatum) -> Result<Glued, DescentError> {
    check_cocycle(d).map_err(DescentError::CocycleViolation)?;
    let mut offsets = Vec::with_capacity(d.fibers.len());
    let mut total = 0;
    for f in &d.fibers {
        offsets.push(total);
        total += f.total.len();
    }
    let mut uf = UnionFind::<usize>::new(total);
    for (&(i, j), t) in &d.transitions {
        for (&(a, _), &b) in t {
            uf.union(offsets[i] + a, offsets[j] + b);
        }
    }
    let mut class_of_root = BTreeMap::new();
    let mut names = Vec::new();
    let mut proj = Vec::new();
    let mut classes = Vec::with_capacity(d.fibers.len());
    for (i, f) in d.fibers.iter().enumerate() {
        let mut row = Vec::with_capacity(f.total.len());
        for a in 0..f.total.len() {
            let r = uf.find_mut(offsets[i] + a);
            let c = *class_of_root.entry(r).or_insert_with(|| {
                names.push(format!("{}:{}", d.cover.pieces[i].name, f.total[a]));
                proj.push(d.cover.pieces[i].map[f.proj[a]]);
                names.len() - 1
            });
            row.push(c);
        }
        classes.push(row);
    }
    Ok(Glued {
        bundle: Bundle {
            base: d.cover.base.clone(),
            total: names,
            proj,
        },
        classes,
    })
}

fn pullback_index(a: &Bundle, piece: &Piece) -> BTreeMap<(usize, usize), usize> {
    let mut index = BTreeMap::new();
    for u in 0..piece.points.len() {
        for e in a.fiber(piece.map[u]) {
            let n = index.len();
            index.insert((u, e), n);
        }
    }
    index
}

/// `φ^*(A) = U ×_X A`, elements `(u, e)` ordered by `u`, then `e`.
pub fn pull_back(a: &Bundle, piece: &Piece) -> Bundle {
    let mut total = Vec::new();
    let mut proj = Vec::new();
    for u in 0..piece.points.len() {
        for e in a.fiber(piece.map[u]) {
            total.push(format!("({},{})", piece.points[u], a.total[e]));
            proj.push(u);
        }
    }
    Bundle {
        base: piece.points.clone(),
        total,
        proj,
    }
}

/// Pulls `a` back along every piece, with transitions `(u, e) ↦ (v, e)`.
pub fn descend(a: &Bundle, c: &Cover) -> DescentDatum {
    let indices: Vec<_> = c.pieces.iter().map(|p| pullback_index(a, p)).collect();
    let fibers: Vec<Bundle> = c.pieces.iter().map(|p| pull_back(a, p)).collect();
    let mut transitions = BTreeMap::new();
    for i in 0..c.pieces.len() {
        for j in 0..c.pieces.len() {
            let mut t = Transition::new();
            for (&(u, e), &idx) in &indices[i] {
                for v in c.over(i, u, j) {
                    t.insert((idx, v), indices[j][&(v, e)]);
                }
            }
            if !t.is_empty() {
                transitions.insert((i, j), t);
            }
        }
    }
    DescentDatum {
        cover: c.clone(),
        fibers,
        transitions,
    }
}

/// Whether `map: A -> B` is a bijection over a common base.
pub fn is_bundle_isomorphism(a: &Bundle, b: &Bundle, map: &[usize]) -> bool {
    if a.base.len() != b.base.len() || map.len() != a.total.len() || a.total.len() != b.total.len()
    {
        return false;
    }
    let mut hit = vec![false; b.total.len()];
    for (e, &f) in map.iter().enumerate() {
        if f >= hit.len() || hit[f] || a.proj[e] != b.proj[f] {
            return false;
        }
        hit[f] = true;
    }
    true
}

/// Whether per-piece maps `A_i -> B_i` form an isomorphism of data: each is
/// a bundle isomorphism and all of them commute with the transitions.
pub fn is_datum_isomorphism(d1: &DescentDatum, d2: &DescentDatum, maps: &[Vec<usize>]) -> bool {
    let n = d1.cover.pieces.len();
    if d2.cover.pieces.len() != n || maps.len() != n {
        return false;
    }
    if (0..n).any(|i| !is_bundle_isomorphism(&d1.fibers[i], &d2.fibers[i], &maps[i])) {
        return false;
    }
    d1.transitions.iter().all(|(&(i, j), t)| {
        t.iter()
            .all(|(&(a, v), &b)| d2.transition(i, j, maps[i][a], v) == Some(maps[j][b]))
    })
}

/// The canonical map `glue(descend(A)) -> A`, `[(u, e)] ↦ e`, when it is
/// well defined.
pub fn glue_descend_counit(
    a: &Bundle,
    descended: &DescentDatum,
    glued: &Glued,
) -> Option<Vec<usize>> {
    let mut map = vec![None; glued.bundle.total.len()];
    for (i, piece) in descended.cover.pieces.iter().enumerate() {
        let index = pullback_index(a, piece);
        for (&(_, e), &idx) in &index {
            let c = glued.classes[i][idx];
            match map[c] {
                None => map[c] = Some(e),
                Some(prev) if prev != e => return None,
                Some(_) => {}
            }
        }
    }
    map.into_iter().collect()
}

/// The coequalizer of the kernel pair of `f: U -> X` and its comparison
/// map to `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coequalizer {
    /// Classes of `U` under the relation generated by the kernel pair.
    pub classes: Vec<Vec<usize>>,
    /// `comparison[c] = f(u)` for any `u` in class `c`.
    pub comparison: Vec<usize>,
    /// Whether the comparison map is a bijection onto `X`.
    pub is_iso: bool,
}

/// Verifies that `X` is the coequalizer of `U ×_X U ⇉ U`.
pub fn check_subcanonical(base: &[String], map: &[usize]) -> Result<Coequalizer, DescentError> {
    let mut hit = vec![false; base.len()];
    for &x in map {
        if x >= base.len() {
            return Err(DescentError::OutOfRange("map".into()));
        }
        hit[x] = true;
    }
    if let Some(x) = hit.iter().position(|h| !h) {
        return Err(DescentError::NotSurjective(base[x].clone()));
    }
    let n = map.len();
    let mut uf = UnionFind::<usize>::new(n);
    for u in 0..n {
        for w in 0..n {
            if map[u] == map[w] {
                uf.union(u, w);
            }
        }
    }
    let classes = crate::bibundle::blocks(uf, n);
    let comparison: Vec<usize> = classes.iter().map(|c| map[c[0]]).collect();
    let mut seen = vec![false; base.len()];
    let injective = comparison
        .iter()
        .all(|&x| !std::mem::replace(&mut seen[x], true));
    Ok(Coequalizer {
        is_iso: injective && comparison.len() == base.len(),
        classes,
        comparison,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn piece(name: &str, points: &[&str], map: &[usize]) -> Piece {
        Piece {
            name: name.into(),
            points: names(points),
            map: map.to_vec(),
        }
    }

    /// Cover `{a, b} -> {*}` with fiber `{0, 1}` on each piece and the given
    /// maps `f_12`, `f_21` (as permutations of the fiber).
    fn two_point_datum(f12: [usize; 2], f21: [usize; 2]) -> DescentDatum {
        let cover = Cover::new(
            names(&["*"]),
            vec![piece("a", &["a"], &[0]), piece("b", &["b"], &[0])],
        )
        .unwrap();
        let fiber = |p: &str| Bundle::new(names(&[p]), names(&["0", "1"]), vec![0, 0]).unwrap();
        let perm = |f: [usize; 2]| (0..2).map(|a| ((a, 0), f[a])).collect::<Transition>();
        let mut t = BTreeMap::new();
        t.insert((0, 0), perm([0, 1]));
        t.insert((1, 1), perm([0, 1]));
        t.insert((0, 1), perm(f12));
        t.insert((1, 0), perm(f21));
        DescentDatum::new(cover, vec![fiber("a"), fiber("b")], t).unwrap()
    }

    #[test]
    fn subcanonical_examples() {
        let c = check_subcanonical(&names(&["1", "2"]), &[0, 0, 1]).unwrap();
        assert!(c.is_iso);
        assert_eq!(c.classes, vec![vec![0, 1], vec![2]]);
        assert!(
            check_subcanonical(&names(&["1", "2", "3"]), &[2, 0, 1])
                .unwrap()
                .is_iso
        );
        assert_eq!(
            check_subcanonical(&names(&["1", "2"]), &[0]),
            Err(DescentError::NotSurjective("2".into()))
        );
    }

    #[test]
    fn cocycle_examples() {
        let cover = Cover::new(
            names(&["1", "2", "3"]),
            vec![
                piece("U", &["1", "2"], &[0, 1]),
                piece("V", &["2", "3"], &[1, 2]),
            ],
        )
        .unwrap();
        let d = DescentDatum::constant(cover, &names(&["p", "q"]));
        assert_eq!(check_cocycle(&d), Ok(()));
        assert_eq!(check_cocycle(&two_point_datum([1, 0], [1, 0])), Ok(()));
        let bad = two_point_datum([1, 0], [0, 1]);
        assert!(matches!(
            check_cocycle(&bad),
            Err(CocycleFailure::Triple { .. })
        ));
        assert!(matches!(glue(&bad), Err(DescentError::CocycleViolation(_))));
    }

    #[test]
    fn glue_examples() {
        let base = names(&["1", "2", "3"]);
        let cover = Cover::new(
            base.clone(),
            vec![
                piece("U", &["1", "2"], &[0, 1]),
                piece("V", &["2", "3"], &[1, 2]),
            ],
        )
        .unwrap();
        let fiber = names(&["p", "q"]);
        let d = DescentDatum::constant(cover, &fiber);
        let g = glue(&d).unwrap();
        assert!((0..3).all(|x| g.bundle.fiber(x).len() == 2));
        let g = glue(&two_point_datum([1, 0], [1, 0])).unwrap();
        assert_eq!(g.bundle.total.len(), 2);
        let single = DescentDatum::constant(Cover::identity(base.clone()), &fiber);
        let g = glue(&single).unwrap();
        assert!(is_bundle_isomorphism(
            &single.fibers[0],
            &g.bundle,
            &g.classes[0]
        ));
    }

    #[test]
    fn round_trip() {
        let base = names(&["x", "y", "z"]);
        let a = Bundle::new(
            base.clone(),
            names(&["e0", "e1", "e2", "e3"]),
            vec![0, 0, 2, 1],
        )
        .unwrap();
        let cover = Cover::new(
            base.clone(),
            vec![
                piece("U", &["u0", "u1", "u2"], &[0, 1, 1]),
                piece("V", &["v0", "v1"], &[2, 0]),
            ],
        )
        .unwrap();
        let d = descend(&a, &cover);
        assert_eq!(check_cocycle(&d), Ok(()));
        let g = glue(&d).unwrap();
        let counit = glue_descend_counit(&a, &d, &g).unwrap();
        assert!(is_bundle_isomorphism(&g.bundle, &a, &counit));
        let again = descend(&g.bundle, &cover);
        let maps: Vec<Vec<usize>> = (0..2).map(|i| g.restriction(&d, i)).collect();
        assert!(is_datum_isomorphism(&d, &again, &maps));
        let id = descend(&a, &Cover::identity(base));
        assert!(id.transitions[&(0, 0)].iter().all(|(&(e, _), &f)| e == f));
    }

    #[test]
    fn malformed_data_is_rejected() {
        assert_eq!(
            Cover::new(names(&["1", "2"]), vec![piece("U", &["1"], &[0])]),
            Err(DescentError::NotSurjective("2".into()))
        );
        let cover = Cover::identity(names(&["1"]));
        let fiber = Bundle::new(names(&["1"]), names(&["p"]), vec![0]).unwrap();
        assert_eq!(
            DescentDatum::new(cover, vec![fiber], BTreeMap::new()),
            Err(DescentError::MissingTransition {
                i: 0,
                j: 0,
                a: 0,
                v: 0
            })
        );
    }
}

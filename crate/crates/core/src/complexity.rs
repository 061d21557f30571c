//! Orbits, weak point subgroupoids, geometric complexity and deformations.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::bibundle::{Bibundle, GroupoidAction, Side};
use crate::functor::{compose_functors, same, StrictArrow};
use crate::group::{FinGroup, GroupError};
use crate::groupoid::{build, Arr, FinGroupoid, Obj};
use crate::homotopy::{orbit_data, HomotopyError};
use crate::nat::NatTrans;
use crate::setcover::min_set_cover;
use crate::skeleton::skeletonize_with_cap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexityError {
    #[error("object set is not a union of orbits (orbit of `{0}` is cut)")]
    NotInvariant(String),
    #[error("object index {0} is out of range")]
    UnknownObject(usize),
    #[error("subgroupoid does not live in the given groupoid")]
    WrongAmbient,
    #[error("invalid group table: {0}")]
    InvalidGroupTable(#[from] GroupError),
}

/// Partition of the objects into orbits, blocks ordered by least object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub blocks: Vec<Vec<Obj>>,
    label: Vec<usize>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `x`.
    pub fn orbit_of(&self, x: Obj) -> usize {
        self.label[x.0]
    }

    /// First object whose orbit is only partly inside `objs`.
    pub fn cut_by(&self, objs: &[Obj]) -> Option<Obj> {
        let mut inside = vec![false; self.label.len()];
        for &x in objs {
            inside[x.0] = true;
        }
        objs.iter()
            .flat_map(|&x| self.blocks[self.label[x.0]].iter())
            .find(|y| !inside[y.0])
            .copied()
    }
}

pub fn orbits(g: &FinGroupoid) -> OrbitPartition {
    let mut uf = petgraph::unionfind::UnionFind::<usize>::new(g.num_objects());
    for a in g.arrows() {
        uf.union(g.src(a).0, g.tgt(a).0);
    }
    let mut blocks: Vec<Vec<Obj>> = Vec::new();
    let mut root_block = std::collections::HashMap::new();
    let mut label = vec![0; g.num_objects()];
    for x in g.objects() {
        let r = uf.find_mut(x.0);
        let b = *root_block.entry(r).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[b].push(x);
        label[x.0] = b;
    }
    OrbitPartition { blocks, label }
}

/// Whether `(src, tgt): G_1 -> G_0 × G_0` is onto a nonempty `G_0`.
pub fn is_transitive(g: &FinGroupoid) -> bool {
    g.num_objects() > 0
        && g.objects()
            .all(|x| g.objects().all(|y| !g.hom(x, y).is_empty()))
}

/// The point groupoid `•^K` of a group given by its multiplication table.
pub fn point_groupoid(order: usize, table: Vec<usize>) -> Result<FinGroupoid, ComplexityError> {
    Ok(build::point(&FinGroup::from_table(order, table)?))
}

/// Result of [`morita_point_check`].
#[derive(Debug, Clone)]
pub enum PointCheck {
    /// `G ↺ {a : src a = base} ↻ •^K` with `K` the isotropy at `base`.
    Point {
        base: Obj,
        point: Arc<FinGroupoid>,
        bibundle: Bibundle,
    },
    /// Two objects with no arrow between them.
    NotTransitive { witness: (Obj, Obj) },
    /// The groupoid has no objects.
    Empty,
}

impl PointCheck {
    pub fn bibundle(&self) -> Option<&Bibundle> {
        match self {
            PointCheck::Point { bibundle, .. } => Some(bibundle),
            _ => None,
        }
    }
}

/// Builds the bibundle equivalence between a transitive groupoid and the
/// point groupoid of its isotropy at the least object.
pub fn morita_point_check(g: &Arc<FinGroupoid>) -> PointCheck {
    let Some(x0) = g.objects().next() else {
        return PointCheck::Empty;
    };
    if let Some(y) = g.objects().find(|&y| g.hom(x0, y).is_empty()) {
        return PointCheck::NotTransitive { witness: (x0, y) };
    }
    let loops = g.hom(x0, x0).to_vec();
    let point = Arc::new(build::point(&g.isotropy(x0)).with_name(format!(
        "{}@{}",
        g.name(),
        g.object_name(x0)
    )));
    let carrier: Vec<Arr> = g.outgoing(x0).to_vec();
    let position = |a: Arr| carrier.iter().position(|&c| c == a);
    let left = GroupoidAction::from_fn(
        g.clone(),
        Side::Left,
        carrier.iter().map(|&a| g.tgt(a)).collect(),
        |z, eta| position(g.compose(eta, carrier[z])),
    )
    .expect("left translation on arrows out of the base point");
    let right = GroupoidAction::from_fn(
        point.clone(),
        Side::Right,
        vec![Obj(0); carrier.len()],
        |z, k| position(g.compose(carrier[z], loops[k.0])),
    )
    .expect("right translation by the isotropy group");
    let names = carrier
        .iter()
        .map(|&a| g.arrow_name(a).to_string())
        .collect();
    let bibundle =
        Bibundle::new(format!("{}~point", g.name()), names, left, right).expect("point bibundle");
    PointCheck::Point {
        base: x0,
        point,
        bibundle,
    }
}

/// A full subgroupoid `G|_U` with its inclusion.
#[derive(Debug, Clone)]
pub struct Subgroupoid {
    /// Sorted, distinct objects of the ambient groupoid.
    pub objects: Vec<Obj>,
    pub groupoid: Arc<FinGroupoid>,
    pub inclusion: StrictArrow,
}

impl Subgroupoid {
    /// The full subgroupoid on `objs`.
    pub fn full(g: &Arc<FinGroupoid>, objs: &[Obj]) -> Result<Self, ComplexityError> {
        let mut objects = objs.to_vec();
        objects.sort();
        objects.dedup();
        if let Some(x) = objects.iter().find(|x| x.0 >= g.num_objects()) {
            return Err(ComplexityError::UnknownObject(x.0));
        }
        let (sub, old) = build::full_subgroupoid(g, &objects);
        let sub = Arc::new(sub.with_name(format!("{}|{}", g.name(), objects.len())));
        let inclusion =
            StrictArrow::new(sub.clone(), g.clone(), objects.clone(), old).expect("inclusion");
        Ok(Subgroupoid {
            objects,
            groupoid: sub,
            inclusion,
        })
    }

    /// The full subgroupoid on `objs`, which must be a union of orbits.
    pub fn invariant(g: &Arc<FinGroupoid>, objs: &[Obj]) -> Result<Self, ComplexityError> {
        let s = Self::full(g, objs)?;
        if let Some(x) = orbits(g).cut_by(&s.objects) {
            return Err(ComplexityError::NotInvariant(g.object_name(x).to_string()));
        }
        Ok(s)
    }

    pub fn ambient(&self) -> &Arc<FinGroupoid> {
        self.inclusion.cod()
    }

    pub fn is_invariant(&self) -> bool {
        orbits(self.ambient()).cut_by(&self.objects).is_none()
    }
}

/// The diagram exhibiting `i_U` as Morita homotopic to a map through a
/// point groupoid. The span legs `u`, `v` and the map `ε` are identities
/// on `U`, so the first 2-cell `n` is the identity.
#[derive(Debug, Clone)]
pub struct WeakPointWitness {
    /// Base point `x0` of the single orbit, as an object of the ambient groupoid.
    pub base: Obj,
    /// `G|_{x0} = •^K`.
    pub point: Arc<FinGroupoid>,
    /// `U -> •^K`, conjugating every arrow back to `x0`.
    pub retraction: StrictArrow,
    /// `U -> •^K -> G`.
    pub c: StrictArrow,
    pub n: NatTrans,
    /// `i_U ⇒ c`.
    pub n_prime: NatTrans,
}

#[derive(Debug, Clone)]
pub enum WeakPoint {
    /// `U` is empty.
    Vacuous,
    Witnessed(Box<WeakPointWitness>),
    /// Objects of `U` in different orbits; no map through a point can be
    /// naturally isomorphic to the inclusion.
    Refuted {
        a: Obj,
        b: Obj,
    },
}

impl WeakPoint {
    pub fn holds(&self) -> bool {
        !matches!(self, WeakPoint::Refuted { .. })
    }
}

/// Decides whether the invariant subgroupoid `u` of `g` is a weak point
/// subgroupoid, with the witnessing diagram.
pub fn is_weak_point_subgroupoid(
    u: &Subgroupoid,
    g: &Arc<FinGroupoid>,
) -> Result<WeakPoint, ComplexityError> {
    if !same(u.ambient(), g) {
        return Err(ComplexityError::WrongAmbient);
    }
    let part = orbits(g);
    if let Some(x) = part.cut_by(&u.objects) {
        return Err(ComplexityError::NotInvariant(g.object_name(x).to_string()));
    }
    let Some(&first) = u.objects.first() else {
        return Ok(WeakPoint::Vacuous);
    };
    if let Some(&other) = u
        .objects
        .iter()
        .find(|&&y| part.orbit_of(y) != part.orbit_of(first))
    {
        return Ok(WeakPoint::Refuted { a: first, b: other });
    }
    let (data, spanning) = orbit_data(g);
    let x0 = data[part.orbit_of(first)].base;
    let (point, loops) = build::full_subgroupoid(g, &[x0]);
    let point = Arc::new(point.with_name(format!("{}@{}", g.name(), g.object_name(x0))));
    let ug = &u.groupoid;
    let retraction = StrictArrow::new(
        ug.clone(),
        point.clone(),
        vec![Obj(0); ug.num_objects()],
        ug.arrows()
            .map(|a| {
                let ga = u.inclusion.arr(a);
                let t_src = spanning[g.src(ga).0];
                let t_tgt = spanning[g.tgt(ga).0];
                let l = g.compose(g.compose(g.inv(t_tgt), ga), t_src);
                Arr(loops.iter().position(|&e| e == l).unwrap())
            })
            .collect(),
    )
    .expect("retraction onto the base point");
    let point_incl =
        StrictArrow::new(point.clone(), g.clone(), vec![x0], loops).expect("point inclusion");
    let c = compose_functors(&point_incl, &retraction).expect("constant map");
    let n = NatTrans::identity(&StrictArrow::identity(ug.clone()));
    let n_prime = NatTrans::new(
        u.inclusion.clone(),
        c.clone(),
        u.objects.iter().map(|&x| g.inv(spanning[x.0])).collect(),
    )
    .expect("transport to the base point");
    Ok(WeakPoint::Witnessed(Box::new(WeakPointWitness {
        base: x0,
        point,
        retraction,
        c,
        n,
        n_prime,
    })))
}

/// `ℕ ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(usize),
    Infinite,
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Infinite => write!(f, "inf"),
        }
    }
}

/// A minimum cover by weak point subgroupoids.
#[derive(Debug, Clone)]
pub struct CgeoReport {
    pub cgeo: ExtNat,
    /// Object sets of the covering subgroupoids.
    pub cover: Vec<Vec<Obj>>,
    pub certificates: Vec<WeakPoint>,
}

/// Weak point invariant subgroupoids, as sets of orbit indices.
///
/// Enumerated level by level over orbit subsets: a set is tested only if
/// every subset one orbit smaller is already weak point.
fn weak_point_orbit_sets(g: &Arc<FinGroupoid>, part: &OrbitPartition) -> Vec<FixedBitSet> {
    let k = part.len();
    let objects_of = |s: &FixedBitSet| -> Vec<Obj> {
        s.ones()
            .flat_map(|o| part.blocks[o].iter().copied())
            .collect()
    };
    let is_weak = |s: &FixedBitSet| {
        let sub = Subgroupoid::full(g, &objects_of(s)).expect("orbit union");
        is_weak_point_subgroupoid(&sub, g)
            .expect("invariant by construction")
            .holds()
    };
    let mut found = Vec::new();
    let mut level: Vec<FixedBitSet> = (0..k)
        .map(|o| {
            let mut s = FixedBitSet::with_capacity(k);
            s.insert(o);
            s
        })
        .filter(|s| is_weak(s))
        .collect();
    while !level.is_empty() {
        found.extend(level.iter().cloned());
        let mut next: Vec<FixedBitSet> = Vec::new();
        for s in &level {
            let top = s.ones().next_back().unwrap();
            for o in top + 1..k {
                let mut t = s.clone();
                t.insert(o);
                let closed = t.ones().all(|drop| {
                    let mut sub = t.clone();
                    sub.set(drop, false);
                    level.contains(&sub)
                });
                if closed && is_weak(&t) {
                    next.push(t);
                }
            }
        }
        level = next;
    }
    found
}

fn cover_report(g: &Arc<FinGroupoid>, part: &OrbitPartition, target: &FixedBitSet) -> CgeoReport {
    let candidates = weak_point_orbit_sets(g, part);
    let Some(picked) = min_set_cover(target, &candidates) else {
        return CgeoReport {
            cgeo: ExtNat::Infinite,
            cover: Vec::new(),
            certificates: Vec::new(),
        };
    };
    let cover: Vec<Vec<Obj>> = picked
        .iter()
        .map(|&i| {
            let mut objs: Vec<Obj> = candidates[i]
                .ones()
                .flat_map(|o| part.blocks[o].iter().copied())
                .collect();
            objs.sort();
            objs
        })
        .collect();
    let certificates = cover
        .iter()
        .map(|objs| {
            let sub = Subgroupoid::full(g, objs).expect("orbit union");
            is_weak_point_subgroupoid(&sub, g).expect("invariant by construction")
        })
        .collect();
    CgeoReport {
        cgeo: ExtNat::Finite(cover.len()),
        cover,
        certificates,
    }
}

/// The least number of weak point subgroupoids covering `g`.
pub fn cgeo(g: &Arc<FinGroupoid>) -> CgeoReport {
    let part = orbits(g);
    let mut all = FixedBitSet::with_capacity(part.len());
    all.insert_range(..);
    cover_report(g, &part, &all)
}

/// The least number of weak point subgroupoids of `g` covering `h`.
pub fn relative_cgeo(h: &Subgroupoid, g: &Arc<FinGroupoid>) -> Result<CgeoReport, ComplexityError> {
    if !same(h.ambient(), g) {
        return Err(ComplexityError::WrongAmbient);
    }
    let part = orbits(g);
    if let Some(x) = part.cut_by(&h.objects) {
        return Err(ComplexityError::NotInvariant(g.object_name(x).to_string()));
    }
    let mut target = FixedBitSet::with_capacity(part.len());
    for &x in &h.objects {
        target.insert(part.orbit_of(x));
    }
    Ok(cover_report(g, &part, &target))
}

/// A deformation of `H` into `K` inside `G`.
///
/// The span `H <-u- L -v-> H̃` and `ε: H̃ -> H` are identities on `H`;
/// `φ: H -> K` sends each object to a partner in `K` in the same orbit and
/// conjugates arrows by the chosen transport arrows `τ_x: x -> φ(x)`.
#[derive(Debug, Clone)]
pub struct Deformation {
    pub l: Arc<FinGroupoid>,
    pub phi: StrictArrow,
    /// `H -> K -> G`.
    pub phi_ambient: StrictArrow,
    pub n: NatTrans,
    /// `i_H ⇒ i_K∘φ`, with components `τ_x`.
    pub n_prime: NatTrans,
}

/// Searches for a deformation of the full subgroupoid `h` into `k`.
pub fn exists_deformation(
    h: &Subgroupoid,
    k: &Subgroupoid,
    g: &Arc<FinGroupoid>,
) -> Result<Option<Deformation>, ComplexityError> {
    if !same(h.ambient(), g) || !same(k.ambient(), g) {
        return Err(ComplexityError::WrongAmbient);
    }
    let mut partner = Vec::with_capacity(h.objects.len());
    for &x in &h.objects {
        let found = if let Ok(i) = k.objects.binary_search(&x) {
            Some((i, g.unit(x)))
        } else {
            k.objects
                .iter()
                .enumerate()
                .find_map(|(i, &y)| g.hom(x, y).first().map(|&t| (i, t)))
        };
        match found {
            Some(p) => partner.push(p),
            None => return Ok(None),
        }
    }
    let (hg, kg) = (&h.groupoid, &k.groupoid);
    let phi = StrictArrow::new(
        hg.clone(),
        kg.clone(),
        partner.iter().map(|&(i, _)| Obj(i)).collect(),
        hg.arrows()
            .map(|a| {
                let (si, st) = partner[hg.src(a).0];
                let (ti, tt) = partner[hg.tgt(a).0];
                let ga = g.compose(g.compose(tt, h.inclusion.arr(a)), g.inv(st));
                let target = kg
                    .hom(Obj(si), Obj(ti))
                    .iter()
                    .copied()
                    .find(|&b| k.inclusion.arr(b) == ga)
                    .expect("full subgroupoid");
                target
            })
            .collect(),
    )
    .expect("deformation functor");
    let phi_ambient = compose_functors(&k.inclusion, &phi).expect("composable");
    let n = NatTrans::identity(&StrictArrow::identity(hg.clone()));
    let n_prime = NatTrans::new(
        h.inclusion.clone(),
        phi_ambient.clone(),
        partner.iter().map(|&(_, t)| t).collect(),
    )
    .expect("transport cell");
    Ok(Some(Deformation {
        l: hg.clone(),
        phi,
        phi_ambient,
        n,
        n_prime,
    }))
}

/// Canonical key of the locus of `g`.
///
/// Transitive groupoids give `POINT`. Otherwise the key lists `c_geo` and
/// the sorted canonical isotropy tables, which is invariant under Morita
/// homotopy equivalence.
pub fn locus_key(g: &Arc<FinGroupoid>, cap: usize) -> Result<String, HomotopyError> {
    let skeleton = skeletonize_with_cap(g, cap)?;
    if is_transitive(g) {
        return Ok("POINT".to_string());
    }
    let mut key = format!("LOCUS cgeo={}", cgeo(g).cgeo);
    for k in skeleton.group_keys() {
        key.push_str(" | ");
        key.push_str(k);
    }
    Ok(key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homotopy::DEFAULT_ISOTROPY_CAP;

    fn arc(g: FinGroupoid) -> Arc<FinGroupoid> {
        Arc::new(g)
    }

    fn z(n: usize) -> FinGroup {
        FinGroup::cyclic(n)
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbits(&build::pair(3)).len(), 1);
        let d = orbits(&build::discrete(&["a", "b"]));
        assert_eq!(d.blocks, vec![vec![Obj(0)], vec![Obj(1)]]);
        let u = build::disjoint_union(&[&build::pair(2), &build::point(&z(2))]);
        assert_eq!(orbits(&u).blocks, vec![vec![Obj(0), Obj(1)], vec![Obj(2)]]);
    }

    #[test]
    fn transitivity() {
        assert!(is_transitive(&build::pair(5)));
        assert!(is_transitive(&build::point(&z(3))));
        assert!(!is_transitive(&build::discrete(&["a", "b"])));
    }

    #[test]
    fn point_groupoids() {
        let g = point_groupoid(2, vec![0, 1, 1, 0]).unwrap();
        assert_eq!((g.num_objects(), g.num_arrows()), (1, 2));
        let s3 = FinGroup::symmetric(3);
        let g = point_groupoid(6, s3.table().to_vec()).unwrap();
        assert_eq!(g.num_arrows(), 6);
        assert!(matches!(
            point_groupoid(2, vec![0, 0, 0, 0]),
            Err(ComplexityError::InvalidGroupTable(_))
        ));
    }

    #[test]
    fn point_check() {
        let p2 = arc(build::pair(2));
        let b = morita_point_check(&p2);
        let b = b.bibundle().unwrap();
        assert_eq!(b.carrier(), &["(1,1)".to_string(), "(1,2)".to_string()]);
        assert!(b.is_equivalence());
        let z2 = arc(build::point(&z(2)));
        assert!(morita_point_check(&z2).bibundle().unwrap().is_equivalence());
        let d = arc(build::discrete(&["a", "b"]));
        assert!(matches!(
            morita_point_check(&d),
            PointCheck::NotTransitive {
                witness: (Obj(0), Obj(1))
            }
        ));
    }

    #[test]
    fn weak_points() {
        let g = arc(build::disjoint_union(&[
            &build::pair(3),
            &build::point(&FinGroup::symmetric(3)),
        ]));
        let one = Subgroupoid::invariant(&g, &[Obj(0), Obj(1), Obj(2)]).unwrap();
        assert!(is_weak_point_subgroupoid(&one, &g).unwrap().holds());
        let d = arc(build::discrete(&["a", "b"]));
        let both = Subgroupoid::invariant(&d, &[Obj(0), Obj(1)]).unwrap();
        assert!(!is_weak_point_subgroupoid(&both, &d).unwrap().holds());
        let empty = Subgroupoid::invariant(&d, &[]).unwrap();
        assert!(matches!(
            is_weak_point_subgroupoid(&empty, &d).unwrap(),
            WeakPoint::Vacuous
        ));
        assert!(matches!(
            Subgroupoid::invariant(&g, &[Obj(0)]),
            Err(ComplexityError::NotInvariant(_))
        ));
    }

    #[test]
    fn cgeo_examples() {
        assert_eq!(cgeo(&arc(build::pair(7))).cgeo, ExtNat::Finite(1));
        for n in 1..6 {
            let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            assert_eq!(cgeo(&arc(build::discrete(&names))).cgeo, ExtNat::Finite(n));
        }
        assert_eq!(
            cgeo(&arc(build::point(&FinGroup::symmetric(3)))).cgeo,
            ExtNat::Finite(1)
        );
        let empty = arc(build::discrete::<&str>(&[]));
        assert_eq!(cgeo(&empty).cgeo, ExtNat::Finite(0));
    }

    #[test]
    fn relative_examples() {
        let d = arc(build::discrete(&["a", "b", "c"]));
        let one = Subgroupoid::invariant(&d, &[Obj(1)]).unwrap();
        assert_eq!(relative_cgeo(&one, &d).unwrap().cgeo, ExtNat::Finite(1));
        let two = Subgroupoid::invariant(&d, &[Obj(0), Obj(2)]).unwrap();
        assert_eq!(relative_cgeo(&two, &d).unwrap().cgeo, ExtNat::Finite(2));
        let all = Subgroupoid::invariant(&d, &[Obj(0), Obj(1), Obj(2)]).unwrap();
        assert_eq!(relative_cgeo(&all, &d).unwrap().cgeo, cgeo(&d).cgeo);
    }

    #[test]
    fn deformations() {
        let p2 = arc(build::pair_on(&["a", "b"]));
        let a = Subgroupoid::full(&p2, &[Obj(0)]).unwrap();
        let b = Subgroupoid::full(&p2, &[Obj(1)]).unwrap();
        let d = exists_deformation(&a, &b, &p2).unwrap().unwrap();
        assert_eq!(p2.arrow_name(d.n_prime.component(Obj(0))), "(a,b)");
        let same_ = exists_deformation(&a, &a, &p2).unwrap().unwrap();
        assert!(p2.is_unit(same_.n_prime.component(Obj(0))));
        let disc = arc(build::discrete(&["a", "b"]));
        let a = Subgroupoid::full(&disc, &[Obj(0)]).unwrap();
        let b = Subgroupoid::full(&disc, &[Obj(1)]).unwrap();
        assert!(exists_deformation(&a, &b, &disc).unwrap().is_none());
    }

    #[test]
    fn locus_keys() {
        let cap = DEFAULT_ISOTROPY_CAP;
        assert_eq!(locus_key(&arc(build::point(&z(2))), cap).unwrap(), "POINT");
        assert_eq!(locus_key(&arc(build::point(&z(3))), cap).unwrap(), "POINT");
        let z2 = build::point(&z(2));
        let a = locus_key(&arc(build::disjoint_union(&[&build::pair(2), &z2])), cap).unwrap();
        let b = locus_key(&arc(build::disjoint_union(&[&build::pair(5), &z2])), cap).unwrap();
        assert_ne!(a, "POINT");
        assert_eq!(a, b);
        assert!(a.starts_with("LOCUS cgeo=2 | "));
    }
}

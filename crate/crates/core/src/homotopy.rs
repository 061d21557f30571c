//! Homotopy pullbacks, essential (homotopy) equivalences and Morita
//! homotopy equivalence.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::functor::{compose_functors, same, StrictArrow};
use crate::group::FinGroup;
use crate::groupoid::{build, Arr, FinGroupoid, Obj};
use crate::nat::{are_homotopic, NatTrans};

/// Default bound on isotropy orders for group isomorphism searches.
pub const DEFAULT_ISOTROPY_CAP: usize = 24;

/// Largest arrow count for which the pullback factorization candidate is built.
const PULLBACK_CANDIDATE_LIMIT: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error("legs of the cospan do not share a codomain")]
    InvalidCospan,
    #[error("homotopy pullback order must be at least 1")]
    ZeroOrder,
    #[error("isotropy group of order {order} exceeds the limit {limit}")]
    IsotropyTooLarge { limit: usize, order: usize },
}

/// A cospan `K -φ-> G <-ψ- J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cospan {
    left: StrictArrow,
    right: StrictArrow,
}

impl Cospan {
    pub fn new(left: StrictArrow, right: StrictArrow) -> Result<Self, HomotopyError> {
        if !same(left.cod(), right.cod()) {
            return Err(HomotopyError::InvalidCospan);
        }
        Ok(Cospan { left, right })
    }

    /// The cospan `G = G = G`.
    pub fn identity(g: Arc<FinGroupoid>) -> Self {
        let id = StrictArrow::identity(g);
        Cospan {
            left: id.clone(),
            right: id,
        }
    }

    pub fn left(&self) -> &StrictArrow {
        &self.left
    }

    pub fn right(&self) -> &StrictArrow {
        &self.right
    }
}

/// `P_n` with its projections and the 2-cell `φ∘pr1 ⇒ ψ∘pr2`.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub cospan: Cospan,
    pub order: usize,
    pub groupoid: Arc<FinGroupoid>,
    pub pr1: StrictArrow,
    pub pr2: StrictArrow,
    pub cell: NatTrans,
}

/// The `n`-th homotopy pullback of a cospan.
///
/// Objects of `P_1` are triples `(x, σ, y)` with `σ: φx -> ψy`. An arrow
/// `(κ, σ, ι)` carries the diagonal `σ: φ(src κ) -> ψ(tgt ι)` of its
/// commuting square; it runs from `(src κ, ψ(ι)⁻¹σ, src ι)` to
/// `(tgt κ, σφ(κ)⁻¹, tgt ι)`. `P_n` inserts `n - 1` intermediate objects of
/// `G`, giving chains `φx -> g_1 -> ... -> ψy`.
pub fn homotopy_pullback(c: &Cospan, n: usize) -> Result<Pullback, HomotopyError> {
    if n == 0 {
        return Err(HomotopyError::ZeroOrder);
    }
    if n == 1 {
        return Ok(first_pullback(c));
    }
    let g = c.left.cod().clone();
    let inner = homotopy_pullback(
        &Cospan::new(c.left.clone(), StrictArrow::identity(g))?,
        n - 1,
    )?;
    let outer = first_pullback(&Cospan::new(inner.pr2.clone(), c.right.clone())?);
    let pr1 = compose_functors(&inner.pr1, &outer.pr1).expect("projection");
    let cod = c.left.cod();
    let components = outer
        .groupoid
        .objects()
        .map(|p| {
            cod.compose(
                outer.cell.component(p),
                inner.cell.component(outer.pr1.obj(p)),
            )
        })
        .collect();
    let source = compose_functors(&c.left, &pr1).expect("left leg");
    let target = compose_functors(&c.right, &outer.pr2).expect("right leg");
    let cell = NatTrans::new(source, target, components).expect("chained 2-cell");
    Ok(Pullback {
        cospan: c.clone(),
        order: n,
        groupoid: outer.groupoid,
        pr1,
        pr2: outer.pr2,
        cell,
    })
}

fn first_pullback(c: &Cospan) -> Pullback {
    let (phi, psi) = (&c.left, &c.right);
    let (k, j, g) = (phi.dom(), psi.dom(), phi.cod());
    let mut objects = Vec::new();
    let mut obj_key = Vec::new();
    let mut obj_index = HashMap::new();
    for x in k.objects() {
        for y in j.objects() {
            for &s in g.hom(phi.obj(x), psi.obj(y)) {
                obj_index.insert((x, s, y), Obj(objects.len()));
                obj_key.push((x, s, y));
                objects.push(format!(
                    "({},{},{})",
                    k.object_name(x),
                    g.arrow_name(s),
                    j.object_name(y)
                ));
            }
        }
    }
    let mut arrows = Vec::new();
    let mut arr_key = Vec::new();
    let mut arr_index = HashMap::new();
    for kappa in k.arrows() {
        for iota in j.arrows() {
            for &s in g.hom(phi.obj(k.src(kappa)), psi.obj(j.tgt(iota))) {
                let from = (
                    k.src(kappa),
                    g.compose(g.inv(psi.arr(iota)), s),
                    j.src(iota),
                );
                let to = (
                    k.tgt(kappa),
                    g.compose(s, g.inv(phi.arr(kappa))),
                    j.tgt(iota),
                );
                arr_index.insert((kappa, s, iota), Arr(arrows.len()));
                arr_key.push((kappa, s, iota));
                arrows.push((
                    format!(
                        "({},{},{})",
                        k.arrow_name(kappa),
                        g.arrow_name(s),
                        j.arrow_name(iota)
                    ),
                    obj_index[&from],
                    obj_index[&to],
                ));
            }
        }
    }
    let unit = obj_key
        .iter()
        .map(|&(x, s, y)| arr_index[&(k.unit(x), s, j.unit(y))])
        .collect();
    let inv = arr_key
        .iter()
        .map(|&(kappa, s, iota)| {
            let s_inv = g.compose(g.compose(g.inv(psi.arr(iota)), s), g.inv(phi.arr(kappa)));
            arr_index[&(k.inv(kappa), s_inv, j.inv(iota))]
        })
        .collect();
    let p = FinGroupoid::from_parts(
        format!("P1({},{})", k.name(), j.name()),
        objects,
        arrows,
        unit,
        inv,
        |b, a| {
            let (k2, _, i2) = arr_key[b.0];
            let (k1, s1, i1) = arr_key[a.0];
            arr_index[&(
                k.compose(k2, k1),
                g.compose(psi.arr(i2), s1),
                j.compose(i2, i1),
            )]
        },
        false,
    )
    .expect("homotopy pullback");
    let p = Arc::new(p);
    let pr1 = StrictArrow::new_unchecked(
        p.clone(),
        k.clone(),
        obj_key.iter().map(|&(x, _, _)| x).collect(),
        arr_key.iter().map(|&(a, _, _)| a).collect(),
    );
    let pr2 = StrictArrow::new_unchecked(
        p.clone(),
        j.clone(),
        obj_key.iter().map(|&(_, _, y)| y).collect(),
        arr_key.iter().map(|&(_, _, b)| b).collect(),
    );
    let source = compose_functors(phi, &pr1).expect("left leg");
    let target = compose_functors(psi, &pr2).expect("right leg");
    let cell = NatTrans::new(source, target, obj_key.iter().map(|&(_, s, _)| s).collect())
        .expect("pullback 2-cell");
    Pullback {
        cospan: c.clone(),
        order: 1,
        groupoid: p,
        pr1,
        pr2,
        cell,
    }
}

/// Strict fiber product `A ×_C B` of `f: A -> C` and `g: B -> C`, with its
/// two projections.
pub fn strict_pullback(
    f: &StrictArrow,
    g: &StrictArrow,
) -> Result<(Arc<FinGroupoid>, StrictArrow, StrictArrow), HomotopyError> {
    if !same(f.cod(), g.cod()) {
        return Err(HomotopyError::InvalidCospan);
    }
    let (a, b) = (f.dom(), g.dom());
    let mut objects = Vec::new();
    let mut obj_key = Vec::new();
    let mut obj_index = HashMap::new();
    for x in a.objects() {
        for y in b.objects() {
            if f.obj(x) == g.obj(y) {
                obj_index.insert((x, y), Obj(objects.len()));
                obj_key.push((x, y));
                objects.push(format!("({},{})", a.object_name(x), b.object_name(y)));
            }
        }
    }
    let mut arrows = Vec::new();
    let mut arr_key = Vec::new();
    let mut arr_index = HashMap::new();
    for s in a.arrows() {
        for t in b.arrows() {
            if f.arr(s) == g.arr(t) {
                arr_index.insert((s, t), Arr(arrows.len()));
                arr_key.push((s, t));
                arrows.push((
                    format!("({},{})", a.arrow_name(s), b.arrow_name(t)),
                    obj_index[&(a.src(s), b.src(t))],
                    obj_index[&(a.tgt(s), b.tgt(t))],
                ));
            }
        }
    }
    let unit = obj_key
        .iter()
        .map(|&(x, y)| arr_index[&(a.unit(x), b.unit(y))])
        .collect();
    let inv = arr_key
        .iter()
        .map(|&(s, t)| arr_index[&(a.inv(s), b.inv(t))])
        .collect();
    let p = FinGroupoid::from_parts(
        format!("{}x{}", a.name(), b.name()),
        objects,
        arrows,
        unit,
        inv,
        |u, v| {
            let (s2, t2) = arr_key[u.0];
            let (s1, t1) = arr_key[v.0];
            arr_index[&(a.compose(s2, s1), b.compose(t2, t1))]
        },
        false,
    )
    .expect("strict pullback");
    let p = Arc::new(p);
    let p1 = StrictArrow::new_unchecked(
        p.clone(),
        a.clone(),
        obj_key.iter().map(|&(x, _)| x).collect(),
        arr_key.iter().map(|&(s, _)| s).collect(),
    );
    let p2 = StrictArrow::new_unchecked(
        p.clone(),
        b.clone(),
        obj_key.iter().map(|&(_, y)| y).collect(),
        arr_key.iter().map(|&(_, t)| t).collect(),
    );
    Ok((p, p1, p2))
}

/// Vertical composite `P ⊡ Q` of pullbacks over `K -> G <- J` and
/// `J -> G <- L` sharing the middle leg: the strict fiber product over `J`.
pub fn vertical_composite(p: &Pullback, q: &Pullback) -> Result<Pullback, HomotopyError> {
    if p.cospan.right != q.cospan.left {
        return Err(HomotopyError::InvalidCospan);
    }
    let (groupoid, a, b) = strict_pullback(&p.pr2, &q.pr1)?;
    let pr1 = compose_functors(&p.pr1, &a).expect("left projection");
    let pr2 = compose_functors(&q.pr2, &b).expect("right projection");
    let cod = p.cospan.left.cod();
    let components = groupoid
        .objects()
        .map(|z| cod.compose(q.cell.component(b.obj(z)), p.cell.component(a.obj(z))))
        .collect();
    let cospan = Cospan::new(p.cospan.left.clone(), q.cospan.right.clone())?;
    let source = compose_functors(&cospan.left, &pr1).expect("left leg");
    let target = compose_functors(&cospan.right, &pr2).expect("right leg");
    let cell = NatTrans::new(source, target, components).expect("composite 2-cell");
    Ok(Pullback {
        cospan,
        order: p.order + q.order,
        groupoid,
        pr1,
        pr2,
        cell,
    })
}

/// Outcome of checking the two essential-equivalence conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialCheck {
    /// An object of the codomain not isomorphic to any image object.
    pub not_reached: Option<Obj>,
    /// Domain objects `(x, y)` on which `H(x, y) -> G(fx, fy)` is not bijective.
    pub not_full_faithful: Option<(Obj, Obj)>,
}

impl EssentialCheck {
    pub fn holds(&self) -> bool {
        self.not_reached.is_none() && self.not_full_faithful.is_none()
    }
}

/// Checks essential surjectivity and full faithfulness of `f`.
pub fn essential_equivalence_check(f: &StrictArrow) -> EssentialCheck {
    let (h, g) = (f.dom(), f.cod());
    let mut reached = vec![false; g.num_objects()];
    for x in h.objects() {
        for &a in g.outgoing(f.obj(x)) {
            reached[g.tgt(a).0] = true;
        }
    }
    let not_reached = reached.iter().position(|r| !r).map(Obj);
    let mut not_full_faithful = None;
    'pairs: for x in h.objects() {
        for y in h.objects() {
            let src = h.hom(x, y);
            let dst = g.hom(f.obj(x), f.obj(y));
            let mut images: Vec<Arr> = src.iter().map(|&a| f.arr(a)).collect();
            images.sort();
            images.dedup();
            if images.len() != src.len() || src.len() != dst.len() {
                not_full_faithful = Some((x, y));
                break 'pairs;
            }
        }
    }
    EssentialCheck {
        not_reached,
        not_full_faithful,
    }
}

pub fn is_essential_equivalence(f: &StrictArrow) -> bool {
    essential_equivalence_check(f).holds()
}

/// A homotopy inverse `g` of `f` with `id ⇒ g∘f` and `f∘g ⇒ id`.
#[derive(Debug, Clone)]
pub struct HomotopyInverse {
    pub inverse: StrictArrow,
    pub unit: NatTrans,
    pub counit: NatTrans,
}

/// Constructs a homotopy inverse of `f`, which exists exactly when `f` is
/// an essential equivalence.
pub fn homotopy_inverse(f: &StrictArrow) -> Option<HomotopyInverse> {
    if !is_essential_equivalence(f) {
        return None;
    }
    let (k, g) = (f.dom(), f.cod());
    // For each y choose x and τ_y: y -> f(x), preferring f(x) = y with a unit.
    let mut choice: Vec<Option<(Obj, Arr)>> = vec![None; g.num_objects()];
    for x in k.objects() {
        let y = f.obj(x);
        if choice[y.0].is_none_or(|(_, t)| !g.is_unit(t)) {
            choice[y.0] = Some((x, g.unit(y)));
        }
    }
    for y in g.objects() {
        if choice[y.0].is_none() {
            choice[y.0] = k
                .objects()
                .find_map(|x| g.hom(y, f.obj(x)).first().map(|&t| (x, t)));
        }
    }
    let choice: Vec<(Obj, Arr)> = choice
        .into_iter()
        .map(|c| c.expect("essentially surjective"))
        .collect();
    let lift = |x: Obj, x2: Obj, target: Arr| -> Arr {
        *k.hom(x, x2)
            .iter()
            .find(|&&a| f.arr(a) == target)
            .expect("fully faithful")
    };
    let arr_map = g
        .arrows()
        .map(|b| {
            let (x, t) = choice[g.src(b).0];
            let (x2, t2) = choice[g.tgt(b).0];
            lift(x, x2, g.compose(g.compose(t2, b), g.inv(t)))
        })
        .collect();
    let inverse = StrictArrow::new(
        g.clone(),
        k.clone(),
        choice.iter().map(|&(x, _)| x).collect(),
        arr_map,
    )
    .ok()?;
    let gf = compose_functors(&inverse, f).ok()?;
    let fg = compose_functors(f, &inverse).ok()?;
    let unit_components = k
        .objects()
        .map(|x| {
            let (x2, t) = choice[f.obj(x).0];
            lift(x, x2, t)
        })
        .collect();
    let unit = NatTrans::new(StrictArrow::identity(k.clone()), gf, unit_components).ok()?;
    let counit_components = g.objects().map(|y| g.inv(choice[y.0].1)).collect();
    let counit = NatTrans::new(fg, StrictArrow::identity(g.clone()), counit_components).ok()?;
    Some(HomotopyInverse {
        inverse,
        unit,
        counit,
    })
}

/// Which mediating groupoid a factorization was found through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mediator {
    Domain,
    Codomain,
    Image,
    Pullback,
}

/// `f ≃ ε∘h` with `h` a strong homotopy equivalence and `ε` an essential
/// equivalence.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub mediator: Mediator,
    pub l: Arc<FinGroupoid>,
    pub h: StrictArrow,
    pub h_inverse: HomotopyInverse,
    pub epsilon: StrictArrow,
    /// `ε∘h ⇒ f`.
    pub cell: NatTrans,
}

/// Searches for a factorization of `f` through one of the candidate
/// mediators: the domain, the codomain, the full image and `P_1(f, id)`.
pub fn is_essential_homotopy_equivalence(f: &StrictArrow) -> Option<Factorization> {
    let (k, g) = (f.dom(), f.cod());
    let mut candidates: Vec<(Mediator, StrictArrow, StrictArrow)> = vec![
        (
            Mediator::Domain,
            StrictArrow::identity(k.clone()),
            f.clone(),
        ),
        (
            Mediator::Codomain,
            f.clone(),
            StrictArrow::identity(g.clone()),
        ),
    ];
    let mut image: Vec<Obj> = k.objects().map(|x| f.obj(x)).collect();
    image.sort();
    image.dedup();
    let (sub, old) = build::full_subgroupoid(g, &image);
    let sub = Arc::new(sub);
    let new_of: HashMap<Arr, Arr> = old.iter().enumerate().map(|(i, &a)| (a, Arr(i))).collect();
    let corestriction = StrictArrow::new(
        k.clone(),
        sub.clone(),
        k.objects()
            .map(|x| Obj(image.binary_search(&f.obj(x)).unwrap()))
            .collect(),
        k.arrows().map(|a| new_of[&f.arr(a)]).collect(),
    )
    .expect("corestriction");
    let inclusion =
        StrictArrow::new(sub.clone(), g.clone(), image.clone(), old).expect("inclusion");
    candidates.push((Mediator::Image, corestriction, inclusion));
    if k.num_arrows() * g.num_arrows() * g.num_arrows() <= PULLBACK_CANDIDATE_LIMIT {
        let p = first_pullback(&Cospan::new(f.clone(), StrictArrow::identity(g.clone())).unwrap());
        let pg = &p.groupoid;
        let section = StrictArrow::new(
            k.clone(),
            pg.clone(),
            k.objects()
                .map(|x| {
                    let key = format!(
                        "({},{},{})",
                        k.object_name(x),
                        g.arrow_name(g.unit(f.obj(x))),
                        g.object_name(f.obj(x))
                    );
                    pg.object_by_name(&key).expect("section object")
                })
                .collect(),
            k.arrows()
                .map(|a| {
                    // The square (a, f(a)) has diagonal f(a).
                    let key = format!(
                        "({},{},{})",
                        k.arrow_name(a),
                        g.arrow_name(f.arr(a)),
                        g.arrow_name(f.arr(a))
                    );
                    pg.arrow_by_name(&key).expect("section arrow")
                })
                .collect(),
        );
        if let Ok(section) = section {
            candidates.push((Mediator::Pullback, section, p.pr2.clone()));
        }
    }
    for (mediator, h, epsilon) in candidates {
        if !is_essential_equivalence(&epsilon) {
            continue;
        }
        let Some(h_inverse) = homotopy_inverse(&h) else {
            continue;
        };
        let composite = compose_functors(&epsilon, &h).expect("composable factorization");
        if let Ok(Some(cell)) = are_homotopic(&composite, f) {
            return Some(Factorization {
                mediator,
                l: h.cod().clone(),
                h,
                h_inverse,
                epsilon,
                cell,
            });
        }
    }
    None
}

/// A span `K <-η- L -ν-> G` of essential homotopy equivalences.
#[derive(Debug, Clone)]
pub struct MoritaSpan {
    pub l: Arc<FinGroupoid>,
    pub eta: StrictArrow,
    pub nu: StrictArrow,
}

/// Per-orbit data: base point, members and spanning arrows `base -> x`.
#[derive(Debug, Clone)]
pub(crate) struct OrbitData {
    pub base: Obj,
    pub members: Vec<Obj>,
    pub group: FinGroup,
}

/// Orbits ordered by least object, with `spanning[x]: base(x) -> x`.
pub(crate) fn orbit_data(g: &FinGroupoid) -> (Vec<OrbitData>, Vec<Arr>) {
    let mut spanning: Vec<Option<Arr>> = vec![None; g.num_objects()];
    let mut orbits = Vec::new();
    for base in g.objects() {
        if spanning[base.0].is_some() {
            continue;
        }
        spanning[base.0] = Some(g.unit(base));
        let mut members = vec![base];
        let mut queue = VecDeque::from([base]);
        while let Some(x) = queue.pop_front() {
            let to_x = spanning[x.0].unwrap();
            for &a in g.outgoing(x) {
                let y = g.tgt(a);
                if spanning[y.0].is_none() {
                    spanning[y.0] = Some(g.compose(a, to_x));
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort();
        orbits.push(OrbitData {
            base,
            members,
            group: g.isotropy(base),
        });
    }
    (orbits, spanning.into_iter().map(Option::unwrap).collect())
}

pub(crate) fn check_cap(g: &FinGroupoid, cap: usize) -> Result<(), HomotopyError> {
    match g.objects().map(|x| g.isotropy_order(x)).max() {
        Some(order) if order > cap => Err(HomotopyError::IsotropyTooLarge { limit: cap, order }),
        _ => Ok(()),
    }
}

/// An essential equivalence `K -> G` built by matching orbits with
/// isomorphic isotropy groups, or `None` when no matching exists.
///
/// Each orbit of `K` is sent to the base point `y0` of its partner orbit,
/// and `κ: x' -> x''` to `φ(t_{x''}⁻¹ κ t_{x'})` for spanning arrows `t` and
/// a group isomorphism `φ`.
pub fn orbit_matching_functor(
    k: &Arc<FinGroupoid>,
    g: &Arc<FinGroupoid>,
    cap: usize,
) -> Result<Option<StrictArrow>, HomotopyError> {
    check_cap(k, cap)?;
    check_cap(g, cap)?;
    let (ko, kt) = orbit_data(k);
    let (go, _) = orbit_data(g);
    if ko.len() != go.len() {
        return Ok(None);
    }
    let mut used = vec![false; go.len()];
    let mut partner = Vec::with_capacity(ko.len());
    for o in &ko {
        let found = go.iter().enumerate().find_map(|(i, p)| {
            if used[i] || p.group.order() != o.group.order() {
                return None;
            }
            o.group.find_isomorphism(&p.group).map(|phi| (i, phi))
        });
        let Some((i, phi)) = found else {
            return Ok(None);
        };
        used[i] = true;
        partner.push((i, phi));
    }
    let mut orbit_of = vec![0; k.num_objects()];
    for (i, o) in ko.iter().enumerate() {
        for &x in &o.members {
            orbit_of[x.0] = i;
        }
    }
    let obj_map = k
        .objects()
        .map(|x| go[partner[orbit_of[x.0]].0].base)
        .collect();
    let arr_map = k
        .arrows()
        .map(|a| {
            let o = orbit_of[k.src(a).0];
            let base = ko[o].base;
            let loop_ = k.compose(k.compose(k.inv(kt[k.tgt(a).0]), a), kt[k.src(a).0]);
            let idx = k.hom(base, base).iter().position(|&e| e == loop_).unwrap();
            let (gi, phi) = &partner[o];
            let y0 = go[*gi].base;
            g.hom(y0, y0)[phi[idx]]
        })
        .collect();
    let nu =
        StrictArrow::new(k.clone(), g.clone(), obj_map, arr_map).expect("orbit matching functor");
    debug_assert!(is_essential_equivalence(&nu));
    Ok(Some(nu))
}

/// Decides Morita homotopy equivalence and returns a span of essential
/// homotopy equivalences when one exists.
pub fn are_morita_homotopy_equivalent(
    k: &Arc<FinGroupoid>,
    g: &Arc<FinGroupoid>,
) -> Result<Option<MoritaSpan>, HomotopyError> {
    are_morita_homotopy_equivalent_with_cap(k, g, DEFAULT_ISOTROPY_CAP)
}

pub fn are_morita_homotopy_equivalent_with_cap(
    k: &Arc<FinGroupoid>,
    g: &Arc<FinGroupoid>,
    cap: usize,
) -> Result<Option<MoritaSpan>, HomotopyError> {
    check_cap(k, cap)?;
    check_cap(g, cap)?;
    if same(k, g) {
        let id = StrictArrow::identity(k.clone());
        let nu = StrictArrow::new_unchecked(
            k.clone(),
            g.clone(),
            id.obj_map().to_vec(),
            id.arr_map().to_vec(),
        );
        return Ok(Some(MoritaSpan {
            l: k.clone(),
            eta: id,
            nu,
        }));
    }
    Ok(orbit_matching_functor(k, g, cap)?.map(|nu| MoritaSpan {
        l: k.clone(),
        eta: StrictArrow::identity(k.clone()),
        nu,
    }))
}

//! Finite groupoids with explicit structure tables.
//!
//! Composition follows the convention `comp(g, f)` = "f then g", defined
//! exactly when `src(g) == tgt(f)`. Objects and arrows carry opaque string
//! ids; internally everything is addressed by dense indices.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::group::FinGroup;

/// Index of an object in a [`FinGroupoid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj(pub usize);

/// Index of an arrow in a [`FinGroupoid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arr(pub usize);

impl Obj {
    pub fn index(self) -> usize {
        self.0
    }
}

impl Arr {
    pub fn index(self) -> usize {
        self.0
    }
}

/// First violated axiom found while validating groupoid data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error("unknown id `{0}`")]
    DanglingId(String),
    #[error("id `{0}` declared twice")]
    DuplicateId(String),
    #[error("conflicting entries for `{0}`")]
    DuplicateEntry(String),
    #[error("unit law fails at object `{0}`")]
    BadUnit(String),
    #[error("inverse law fails for arrow `{0}`")]
    BadInverse(String),
    #[error("composite of `{0}` after `{1}` is missing")]
    PartialComposition(String, String),
    #[error("composite entry `{0}` after `{1}` has the wrong type")]
    IllTypedComposition(String, String),
    #[error("composition is not associative on (`{0}`, `{1}`, `{2}`)")]
    NonAssociative(String, String, String),
}

/// Unvalidated groupoid data, as read from a file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawGroupoid {
    pub name: String,
    pub objects: Vec<String>,
    /// `(id, src, tgt)`
    pub arrows: Vec<(String, String, String)>,
    /// `(object, unit arrow)`
    pub units: Vec<(String, String)>,
    /// `(arrow, inverse)`
    pub inverses: Vec<(String, String)>,
    /// `(g, f, g∘f)`
    pub comps: Vec<(String, String, String)>,
}

/// Composition law: a dense table, or an O(1) rule for constructions whose
/// composable pairs are too many to tabulate.
#[derive(Clone)]
enum Composition {
    /// `table[g][in_pos[f]] = g∘f` for every `f` with `tgt(f) == src(g)`.
    Table(Vec<Vec<Arr>>),
    Rule(Arc<dyn Fn(Arr, Arr) -> Arr + Send + Sync>),
}

#[derive(Clone)]
pub struct FinGroupoid {
    name: String,
    objects: Vec<String>,
    arrows: Vec<String>,
    src: Vec<Obj>,
    tgt: Vec<Obj>,
    unit: Vec<Arr>,
    inv: Vec<Arr>,
    /// Arrows with a given target, in index order.
    incoming: Vec<Vec<Arr>>,
    /// Arrows with a given source, in index order.
    outgoing: Vec<Vec<Arr>>,
    in_pos: Vec<usize>,
    out_pos: Vec<usize>,
    comp: Composition,
    homs: HashMap<(Obj, Obj), Vec<Arr>>,
    obj_index: HashMap<String, Obj>,
    arr_index: HashMap<String, Arr>,
}

impl PartialEq for FinGroupoid {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.arrows == other.arrows
            && self.src == other.src
            && self.tgt == other.tgt
            && self.unit == other.unit
            && self.inv == other.inv
            && self.arrows().all(|g| {
                self.incoming[self.src[g.0].0]
                    .iter()
                    .all(|&f| self.compose(g, f) == other.compose(g, f))
            })
    }
}

impl Eq for FinGroupoid {}

impl fmt::Debug for FinGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinGroupoid")
            .field("name", &self.name)
            .field("objects", &self.objects)
            .field("arrows", &self.arrows.len())
            .finish()
    }
}

/// Validates raw data against every groupoid axiom, reporting the first
/// violation with a witness.
pub fn validate_groupoid(raw: &RawGroupoid) -> Result<FinGroupoid, GroupoidError> {
    let mut obj_index = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if obj_index.insert(o.clone(), Obj(i)).is_some() {
            return Err(GroupoidError::DuplicateId(o.clone()));
        }
    }
    let obj = |s: &str| {
        obj_index
            .get(s)
            .copied()
            .ok_or_else(|| GroupoidError::DanglingId(s.to_string()))
    };
    let mut arr_index = HashMap::new();
    let mut arrows = Vec::new();
    for (i, (id, s, t)) in raw.arrows.iter().enumerate() {
        if arr_index.insert(id.clone(), Arr(i)).is_some() {
            return Err(GroupoidError::DuplicateId(id.clone()));
        }
        arrows.push((id.clone(), obj(s)?, obj(t)?));
    }
    let arr = |s: &str| {
        arr_index
            .get(s)
            .copied()
            .ok_or_else(|| GroupoidError::DanglingId(s.to_string()))
    };

    let mut unit: Vec<Option<Arr>> = vec![None; raw.objects.len()];
    for (o, a) in &raw.units {
        let (o, a) = (obj(o)?, arr(a)?);
        match unit[o.0] {
            Some(prev) if prev != a => {
                return Err(GroupoidError::DuplicateEntry(format!(
                    "id {}",
                    raw.objects[o.0]
                )))
            }
            _ => unit[o.0] = Some(a),
        }
    }
    let mut inv: Vec<Option<Arr>> = vec![None; arrows.len()];
    for (a, b) in &raw.inverses {
        let (a, b) = (arr(a)?, arr(b)?);
        match inv[a.0] {
            Some(prev) if prev != b => {
                return Err(GroupoidError::DuplicateEntry(format!(
                    "inv {}",
                    arrows[a.0].0
                )))
            }
            _ => inv[a.0] = Some(b),
        }
    }
    let mut comps = HashMap::new();
    for (g, f, h) in &raw.comps {
        let key = (arr(g)?, arr(f)?);
        let h = arr(h)?;
        if let Some(prev) = comps.insert(key, h) {
            if prev != h {
                return Err(GroupoidError::DuplicateEntry(format!("comp {g} {f}")));
            }
        }
    }

    let objects = raw.objects.clone();
    let unit = unit
        .into_iter()
        .enumerate()
        .map(|(i, u)| u.ok_or_else(|| GroupoidError::BadUnit(objects[i].clone())))
        .collect::<Result<Vec<_>, _>>()?;
    let inv = inv
        .into_iter()
        .enumerate()
        .map(|(i, u)| u.ok_or_else(|| GroupoidError::BadInverse(arrows[i].0.clone())))
        .collect::<Result<Vec<_>, _>>()?;

    let src: Vec<Obj> = arrows.iter().map(|a| a.1).collect();
    let tgt: Vec<Obj> = arrows.iter().map(|a| a.2).collect();
    let names: Vec<String> = arrows.into_iter().map(|a| a.0).collect();
    for &(g, f) in comps.keys() {
        if src[g.0] != tgt[f.0] {
            return Err(GroupoidError::IllTypedComposition(
                names[g.0].clone(),
                names[f.0].clone(),
            ));
        }
    }
    let mut missing = None;
    let g = FinGroupoid::assemble(
        raw.name.clone(),
        objects,
        names.clone(),
        src,
        tgt,
        unit,
        inv,
        Some(|g, f| match comps.get(&(g, f)) {
            Some(&h) => h,
            None => {
                if missing.is_none() {
                    missing = Some((g, f));
                }
                Arr(usize::MAX)
            }
        }),
    );
    if let Some((g, f)) = missing {
        return Err(GroupoidError::PartialComposition(
            names[g.0].clone(),
            names[f.0].clone(),
        ));
    }
    g.check_axioms(true)?;
    Ok(g)
}

impl FinGroupoid {
    /// Assembles the lookup tables. `compose`, when given, is queried once
    /// for every composable pair. No axioms are checked.
    #[allow(clippy::too_many_arguments)]
    fn assemble(
        name: String,
        objects: Vec<String>,
        arrows: Vec<String>,
        src: Vec<Obj>,
        tgt: Vec<Obj>,
        unit: Vec<Arr>,
        inv: Vec<Arr>,
        compose: Option<impl FnMut(Arr, Arr) -> Arr>,
    ) -> FinGroupoid {
        let n_obj = objects.len();
        let mut incoming = vec![Vec::new(); n_obj];
        let mut outgoing = vec![Vec::new(); n_obj];
        let mut in_pos = vec![0; arrows.len()];
        let mut out_pos = vec![0; arrows.len()];
        let mut homs: HashMap<(Obj, Obj), Vec<Arr>> = HashMap::new();
        for a in 0..arrows.len() {
            in_pos[a] = incoming[tgt[a].0].len();
            incoming[tgt[a].0].push(Arr(a));
            out_pos[a] = outgoing[src[a].0].len();
            outgoing[src[a].0].push(Arr(a));
            homs.entry((src[a], tgt[a])).or_default().push(Arr(a));
        }
        let comp = match compose {
            Some(mut compose) => Composition::Table(
                (0..arrows.len())
                    .map(|g| {
                        incoming[src[g].0]
                            .iter()
                            .map(|&f| compose(Arr(g), f))
                            .collect()
                    })
                    .collect(),
            ),
            None => Composition::Table(Vec::new()),
        };
        let obj_index = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), Obj(i)))
            .collect();
        let arr_index = arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), Arr(i)))
            .collect();
        FinGroupoid {
            name,
            objects,
            arrows,
            src,
            tgt,
            unit,
            inv,
            incoming,
            outgoing,
            in_pos,
            out_pos,
            comp,
            homs,
            obj_index,
            arr_index,
        }
    }

    /// Builds a groupoid from index-level data, checking typing, units and
    /// inverses. Associativity is checked only when `check_assoc` is set;
    /// constructions that are associative by design skip it.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        name: impl Into<String>,
        objects: Vec<String>,
        arrows: Vec<(String, Obj, Obj)>,
        unit: Vec<Arr>,
        inv: Vec<Arr>,
        compose: impl FnMut(Arr, Arr) -> Arr,
        check_assoc: bool,
    ) -> Result<FinGroupoid, GroupoidError> {
        let src = arrows.iter().map(|a| a.1).collect();
        let tgt = arrows.iter().map(|a| a.2).collect();
        let names = arrows.into_iter().map(|a| a.0).collect();
        let g = Self::assemble(
            name.into(),
            objects,
            names,
            src,
            tgt,
            unit,
            inv,
            Some(compose),
        );
        g.check_distinct_ids()?;
        g.check_axioms(check_assoc)?;
        Ok(g)
    }

    /// Like [`FinGroupoid::from_parts`], but composition is evaluated by
    /// `rule` on demand instead of being tabulated. Typing of composites is
    /// trusted; units and inverses are checked.
    pub fn from_rule(
        name: impl Into<String>,
        objects: Vec<String>,
        arrows: Vec<(String, Obj, Obj)>,
        unit: Vec<Arr>,
        inv: Vec<Arr>,
        rule: impl Fn(Arr, Arr) -> Arr + Send + Sync + 'static,
    ) -> Result<FinGroupoid, GroupoidError> {
        let src = arrows.iter().map(|a| a.1).collect();
        let tgt = arrows.iter().map(|a| a.2).collect();
        let names = arrows.into_iter().map(|a| a.0).collect();
        let mut g = Self::assemble(
            name.into(),
            objects,
            names,
            src,
            tgt,
            unit,
            inv,
            None::<fn(Arr, Arr) -> Arr>,
        );
        g.comp = Composition::Rule(Arc::new(rule));
        g.check_distinct_ids()?;
        g.check_axioms(false)?;
        Ok(g)
    }

    fn check_distinct_ids(&self) -> Result<(), GroupoidError> {
        if self.obj_index.len() != self.objects.len() {
            let mut seen = std::collections::HashSet::new();
            let dup = self.objects.iter().find(|o| !seen.insert(*o)).unwrap();
            return Err(GroupoidError::DuplicateId(dup.clone()));
        }
        if self.arr_index.len() != self.arrows.len() {
            let mut seen = std::collections::HashSet::new();
            let dup = self.arrows.iter().find(|a| !seen.insert(*a)).unwrap();
            return Err(GroupoidError::DuplicateId(dup.clone()));
        }
        Ok(())
    }

    fn check_axioms(&self, check_assoc: bool) -> Result<(), GroupoidError> {
        let n = self.arrows.len();
        let table = match &self.comp {
            Composition::Table(t) => Some(t),
            Composition::Rule(_) => None,
        };
        for g in (0..n).filter(|_| table.is_some()) {
            for (k, &f) in self.incoming[self.src[g].0].iter().enumerate() {
                let h = table.expect("dense table")[g][k];
                if h.0 >= n || self.src[h.0] != self.src[f.0] || self.tgt[h.0] != self.tgt[g] {
                    return Err(GroupoidError::IllTypedComposition(
                        self.arrows[g].clone(),
                        self.arrows[f.0].clone(),
                    ));
                }
            }
        }
        for x in 0..self.objects.len() {
            let u = self.unit[x];
            let bad = || GroupoidError::BadUnit(self.objects[x].clone());
            if u.0 >= n || self.src[u.0].0 != x || self.tgt[u.0].0 != x {
                return Err(bad());
            }
            if self.incoming[x].iter().any(|&a| self.compose(u, a) != a)
                || self.outgoing[x].iter().any(|&a| self.compose(a, u) != a)
            {
                return Err(bad());
            }
        }
        for a in 0..n {
            let i = self.inv[a];
            let bad = || GroupoidError::BadInverse(self.arrows[a].clone());
            if i.0 >= n || self.src[i.0] != self.tgt[a] || self.tgt[i.0] != self.src[a] {
                return Err(bad());
            }
            if self.compose(i, Arr(a)) != self.unit[self.src[a].0]
                || self.compose(Arr(a), i) != self.unit[self.tgt[a].0]
            {
                return Err(bad());
            }
        }
        if check_assoc {
            for f in 0..n {
                for &g in &self.outgoing[self.tgt[f].0] {
                    let gf = self.compose(g, Arr(f));
                    for &h in &self.outgoing[self.tgt[g.0].0] {
                        if self.compose(h, gf) != self.compose(self.compose(h, g), Arr(f)) {
                            return Err(GroupoidError::NonAssociative(
                                self.arrows[h.0].clone(),
                                self.arrows[g.0].clone(),
                                self.arrows[f].clone(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Re-runs the full axiom check, associativity included.
    pub fn validate(&self) -> Result<(), GroupoidError> {
        self.check_axioms(true)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = Obj> + Clone {
        (0..self.objects.len()).map(Obj)
    }

    pub fn arrows(&self) -> impl ExactSizeIterator<Item = Arr> + Clone {
        (0..self.arrows.len()).map(Arr)
    }

    pub fn object_name(&self, x: Obj) -> &str {
        &self.objects[x.0]
    }

    pub fn arrow_name(&self, a: Arr) -> &str {
        &self.arrows[a.0]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn arrow_names(&self) -> &[String] {
        &self.arrows
    }

    pub fn object_by_name(&self, name: &str) -> Option<Obj> {
        self.obj_index.get(name).copied()
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<Arr> {
        self.arr_index.get(name).copied()
    }

    pub fn src(&self, a: Arr) -> Obj {
        self.src[a.0]
    }

    pub fn tgt(&self, a: Arr) -> Obj {
        self.tgt[a.0]
    }

    pub fn unit(&self, x: Obj) -> Arr {
        self.unit[x.0]
    }

    pub fn inv(&self, a: Arr) -> Arr {
        self.inv[a.0]
    }

    pub fn is_unit(&self, a: Arr) -> bool {
        self.unit[self.src[a.0].0] == a
    }

    /// `g∘f`, or `None` when `src(g) != tgt(f)`.
    pub fn try_compose(&self, g: Arr, f: Arr) -> Option<Arr> {
        (self.src[g.0] == self.tgt[f.0]).then(|| self.compose(g, f))
    }

    /// `g∘f`. Panics when the pair is not composable.
    pub fn compose(&self, g: Arr, f: Arr) -> Arr {
        debug_assert_eq!(
            self.src[g.0], self.tgt[f.0],
            "composing non-composable arrows"
        );
        match &self.comp {
            Composition::Table(t) => t[g.0][self.in_pos[f.0]],
            Composition::Rule(r) => r(g, f),
        }
    }

    /// Arrows `x -> y` in index order.
    pub fn hom(&self, x: Obj, y: Obj) -> &[Arr] {
        self.homs.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn incoming(&self, x: Obj) -> &[Arr] {
        &self.incoming[x.0]
    }

    pub fn outgoing(&self, x: Obj) -> &[Arr] {
        &self.outgoing[x.0]
    }

    /// Position of `a` among the arrows with the same target.
    pub fn incoming_position(&self, a: Arr) -> usize {
        self.in_pos[a.0]
    }

    /// Position of `a` among the arrows with the same source.
    pub fn outgoing_position(&self, a: Arr) -> usize {
        self.out_pos[a.0]
    }

    /// The isotropy group at `x`; element `i` is `hom(x, x)[i]`.
    pub fn isotropy(&self, x: Obj) -> FinGroup {
        let elems = self.hom(x, x);
        let pos: HashMap<Arr, usize> = elems.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in elems {
            for &b in elems {
                table.push(pos[&self.compose(a, b)]);
            }
        }
        FinGroup::from_table(n, table).expect("isotropy of a valid groupoid is a group")
    }

    pub fn isotropy_order(&self, x: Obj) -> usize {
        self.hom(x, x).len()
    }

    /// Raw data listing every structure map explicitly.
    pub fn to_raw(&self) -> RawGroupoid {
        let mut comps = Vec::new();
        for g in self.arrows() {
            for &f in self.incoming(self.src(g)) {
                comps.push((
                    self.arrows[g.0].clone(),
                    self.arrows[f.0].clone(),
                    self.arrows[self.compose(g, f).0].clone(),
                ));
            }
        }
        RawGroupoid {
            name: self.name.clone(),
            objects: self.objects.clone(),
            arrows: self
                .arrows()
                .map(|a| {
                    (
                        self.arrows[a.0].clone(),
                        self.objects[self.src(a).0].clone(),
                        self.objects[self.tgt(a).0].clone(),
                    )
                })
                .collect(),
            units: self
                .objects()
                .map(|x| {
                    (
                        self.objects[x.0].clone(),
                        self.arrows[self.unit(x).0].clone(),
                    )
                })
                .collect(),
            inverses: self
                .arrows()
                .map(|a| (self.arrows[a.0].clone(), self.arrows[self.inv(a).0].clone()))
                .collect(),
            comps,
        }
    }
}

/// Standard groupoids and constructions on them.
pub mod build {
    use super::*;

    /// The terminal groupoid `•`.
    pub fn trivial() -> FinGroupoid {
        point(&FinGroup::trivial()).with_name("point")
    }

    /// The point groupoid `•^K`: one object `*`, arrows `g0 .. g(n-1)`.
    pub fn point(group: &FinGroup) -> FinGroupoid {
        let n = group.order();
        let arrows = (0..n).map(|i| (format!("g{i}"), Obj(0), Obj(0))).collect();
        FinGroupoid::from_parts(
            format!("point{n}"),
            vec!["*".to_string()],
            arrows,
            vec![Arr(group.identity())],
            (0..n).map(|i| Arr(group.inv(i))).collect(),
            |g, f| Arr(group.mul(g.0, f.0)),
            false,
        )
        .expect("point groupoid of a group")
    }

    /// Discrete groupoid: only identity arrows, named `1_x`.
    pub fn discrete<S: AsRef<str>>(names: &[S]) -> FinGroupoid {
        let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let arrows = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (format!("1_{o}"), Obj(i), Obj(i)))
            .collect();
        let n = objects.len();
        FinGroupoid::from_parts(
            "discrete",
            objects,
            arrows,
            (0..n).map(Arr).collect(),
            (0..n).map(Arr).collect(),
            |g, _| g,
            false,
        )
        .expect("discrete groupoid")
    }

    /// Pair groupoid on the given objects: one arrow `(a,b)` for each pair.
    pub fn pair_on<S: AsRef<str>>(names: &[S]) -> FinGroupoid {
        product_with_group(names, &FinGroup::trivial())
    }

    /// Pair groupoid on `1..=n`.
    pub fn pair(n: usize) -> FinGroupoid {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        pair_on(&names).with_name(format!("pair{n}"))
    }

    /// `Pair(objects) × •^K`, the general transitive groupoid.
    pub fn product_with_group<S: AsRef<str>>(names: &[S], group: &FinGroup) -> FinGroupoid {
        let objects: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let n = objects.len();
        let k = group.order();
        // arrow (a, b, g) : a -> b at index (a * n + b) * k + g
        let idx = |a: usize, b: usize, g: usize| Arr((a * n + b) * k + g);
        let mut arrows = Vec::with_capacity(n * n * k);
        for a in 0..n {
            for b in 0..n {
                for g in 0..k {
                    let name = if k == 1 {
                        format!("({},{})", objects[a], objects[b])
                    } else {
                        format!("({},{},g{g})", objects[a], objects[b])
                    };
                    arrows.push((name, Obj(a), Obj(b)));
                }
            }
        }
        let decode = |x: Arr| (x.0 / k / n, (x.0 / k) % n, x.0 % k);
        FinGroupoid::from_parts(
            "transitive",
            objects,
            arrows,
            (0..n).map(|a| idx(a, a, group.identity())).collect(),
            (0..n * n * k)
                .map(|i| {
                    let (a, b, g) = decode(Arr(i));
                    idx(b, a, group.inv(g))
                })
                .collect(),
            |g, f| {
                let (_, c, h) = decode(g);
                let (a, _, e) = decode(f);
                idx(a, c, group.mul(h, e))
            },
            false,
        )
        .expect("pair groupoid times group")
    }

    /// The interval groupoid `𝕀`: objects `0`, `1`, arrows `id0`, `id1`,
    /// `s: 0 -> 1` and `s^-1`.
    pub fn interval() -> FinGroupoid {
        let arrows = vec![
            ("id0".to_string(), Obj(0), Obj(0)),
            ("id1".to_string(), Obj(1), Obj(1)),
            ("s".to_string(), Obj(0), Obj(1)),
            ("s^-1".to_string(), Obj(1), Obj(0)),
        ];
        FinGroupoid::from_parts(
            "interval",
            vec!["0".to_string(), "1".to_string()],
            arrows,
            vec![Arr(0), Arr(1)],
            vec![Arr(0), Arr(1), Arr(3), Arr(2)],
            |g, f| match (g.0, f.0) {
                (0, x) | (1, x) => Arr(x),
                (x, 0) | (x, 1) => Arr(x),
                (2, 3) => Arr(1),
                (3, 2) => Arr(0),
                _ => unreachable!(),
            },
            false,
        )
        .expect("interval groupoid")
    }

    /// Action groupoid `X ⋊ K` of a left action given as `action[g][x] = g·x`.
    /// Arrows are `(g, x): x -> g·x`.
    pub fn action<S: AsRef<str>>(
        points: &[S],
        group: &FinGroup,
        action: &[Vec<usize>],
    ) -> FinGroupoid {
        let objects: Vec<String> = points.iter().map(|s| s.as_ref().to_string()).collect();
        let n = objects.len();
        let k = group.order();
        let idx = |g: usize, x: usize| Arr(g * n + x);
        let mut arrows = Vec::with_capacity(n * k);
        for g in 0..k {
            for x in 0..n {
                arrows.push((format!("g{g}@{}", objects[x]), Obj(x), Obj(action[g][x])));
            }
        }
        FinGroupoid::from_parts(
            "action",
            objects,
            arrows,
            (0..n).map(|x| idx(group.identity(), x)).collect(),
            (0..n * k)
                .map(|i| idx(group.inv(i / n), action[i / n][i % n]))
                .collect(),
            |g, f| idx(group.mul(g.0 / n, f.0 / n), f.0 % n),
            false,
        )
        .expect("action groupoid")
    }

    /// Disjoint union; ids are prefixed with the summand position (`0.x`, `1.y`, ...).
    pub fn disjoint_union(parts: &[&FinGroupoid]) -> FinGroupoid {
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        let mut unit = Vec::new();
        let mut inv = Vec::new();
        let mut obj_off = Vec::new();
        let mut arr_off = Vec::new();
        for (i, g) in parts.iter().enumerate() {
            let (oo, ao) = (objects.len(), arrows.len());
            obj_off.push(oo);
            arr_off.push(ao);
            objects.extend(g.objects().map(|x| format!("{i}.{}", g.object_name(x))));
            for a in g.arrows() {
                arrows.push((
                    format!("{i}.{}", g.arrow_name(a)),
                    Obj(g.src(a).0 + oo),
                    Obj(g.tgt(a).0 + oo),
                ));
                inv.push(Arr(g.inv(a).0 + ao));
            }
            unit.extend(g.objects().map(|x| Arr(g.unit(x).0 + ao)));
        }
        let part_of = |a: Arr| arr_off.iter().rposition(|&o| o <= a.0).unwrap();
        FinGroupoid::from_parts(
            "union",
            objects,
            arrows,
            unit,
            inv,
            |g, f| {
                let p = part_of(g);
                let off = arr_off[p];
                Arr(parts[p].compose(Arr(g.0 - off), Arr(f.0 - off)).0 + off)
            },
            false,
        )
        .expect("disjoint union")
    }

    /// Replaces object `x` by `copies[x] >= 1` isomorphic copies `x#i`.
    /// Arrows are `a#i#j : src(a)#i -> tgt(a)#j`.
    pub fn inflate(g: &FinGroupoid, copies: &[usize]) -> FinGroupoid {
        assert_eq!(copies.len(), g.num_objects());
        assert!(copies.iter().all(|&c| c >= 1));
        let mut obj_off = Vec::new();
        let mut objects = Vec::new();
        for x in g.objects() {
            obj_off.push(objects.len());
            for i in 0..copies[x.0] {
                objects.push(format!("{}#{i}", g.object_name(x)));
            }
        }
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        let mut decode = Vec::new();
        for a in g.arrows() {
            let (s, t) = (g.src(a), g.tgt(a));
            for i in 0..copies[s.0] {
                for j in 0..copies[t.0] {
                    index.insert((a, i, j), Arr(arrows.len()));
                    decode.push((a, i, j));
                    arrows.push((
                        format!("{}#{i}#{j}", g.arrow_name(a)),
                        Obj(obj_off[s.0] + i),
                        Obj(obj_off[t.0] + j),
                    ));
                }
            }
        }
        let unit = g
            .objects()
            .flat_map(|x| (0..copies[x.0]).map(move |i| (x, i)))
            .map(|(x, i)| index[&(g.unit(x), i, i)])
            .collect();
        let inv = decode
            .iter()
            .map(|&(a, i, j)| index[&(g.inv(a), j, i)])
            .collect();
        FinGroupoid::from_parts(
            format!("{}-inflated", g.name()),
            objects,
            arrows,
            unit,
            inv,
            |h, f| {
                let (b, _, l) = decode[h.0];
                let (a, i, _) = decode[f.0];
                index[&(g.compose(b, a), i, l)]
            },
            false,
        )
        .expect("inflation")
    }

    /// Full subgroupoid on `objs` (kept in the given order) together with
    /// the map from new arrow indices to arrows of `g`.
    pub fn full_subgroupoid(g: &FinGroupoid, objs: &[Obj]) -> (FinGroupoid, Vec<Arr>) {
        let pos: HashMap<Obj, usize> = objs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut old = Vec::new();
        let mut new_of = HashMap::new();
        let mut arrows = Vec::new();
        for a in g.arrows() {
            if let (Some(&s), Some(&t)) = (pos.get(&g.src(a)), pos.get(&g.tgt(a))) {
                new_of.insert(a, Arr(old.len()));
                old.push(a);
                arrows.push((g.arrow_name(a).to_string(), Obj(s), Obj(t)));
            }
        }
        let sub = FinGroupoid::from_parts(
            format!("{}|sub", g.name()),
            objs.iter().map(|&x| g.object_name(x).to_string()).collect(),
            arrows,
            objs.iter().map(|&x| new_of[&g.unit(x)]).collect(),
            old.iter().map(|&a| new_of[&g.inv(a)]).collect(),
            |h, f| new_of[&g.compose(old[h.0], old[f.0])],
            false,
        )
        .expect("full subgroupoid");
        (sub, old)
    }

    /// Permutes object and arrow indices (`perm[old] = new`), keeping ids.
    pub fn reindex(g: &FinGroupoid, obj_perm: &[usize], arr_perm: &[usize]) -> FinGroupoid {
        let mut obj_inv = vec![0; obj_perm.len()];
        for (o, &n) in obj_perm.iter().enumerate() {
            obj_inv[n] = o;
        }
        let mut arr_inv = vec![0; arr_perm.len()];
        for (o, &n) in arr_perm.iter().enumerate() {
            arr_inv[n] = o;
        }
        let objects = obj_inv
            .iter()
            .map(|&o| g.object_name(Obj(o)).to_string())
            .collect();
        let arrows = arr_inv
            .iter()
            .map(|&o| {
                let a = Arr(o);
                (
                    g.arrow_name(a).to_string(),
                    Obj(obj_perm[g.src(a).0]),
                    Obj(obj_perm[g.tgt(a).0]),
                )
            })
            .collect();
        FinGroupoid::from_parts(
            g.name(),
            objects,
            arrows,
            obj_inv
                .iter()
                .map(|&o| Arr(arr_perm[g.unit(Obj(o)).0]))
                .collect(),
            arr_inv
                .iter()
                .map(|&o| Arr(arr_perm[g.inv(Arr(o)).0]))
                .collect(),
            |h, f| Arr(arr_perm[g.compose(Arr(arr_inv[h.0]), Arr(arr_inv[f.0])).0]),
            false,
        )
        .expect("reindexing")
    }
}

#[cfg(test)]
mod tests {
    use super::build::*;
    use super::*;

    fn raw_pair2() -> RawGroupoid {
        pair(2).to_raw()
    }

    #[test]
    fn terminal_groupoid_is_valid() {
        let raw = RawGroupoid {
            name: "pt".into(),
            objects: vec!["x".into()],
            arrows: vec![("e".into(), "x".into(), "x".into())],
            units: vec![("x".into(), "e".into())],
            inverses: vec![("e".into(), "e".into())],
            comps: vec![("e".into(), "e".into(), "e".into())],
        };
        let g = validate_groupoid(&raw).unwrap();
        assert_eq!((g.num_objects(), g.num_arrows()), (1, 1));
    }

    #[test]
    fn pair_groupoid_on_three_objects() {
        let g = validate_groupoid(&pair(3).to_raw()).unwrap();
        assert_eq!(g.num_arrows(), 9);
        let ab = g.arrow_by_name("(1,2)").unwrap();
        let bc = g.arrow_by_name("(2,3)").unwrap();
        assert_eq!(g.arrow_name(g.compose(bc, ab)), "(1,3)");
    }

    #[test]
    fn wrong_inverse_is_reported() {
        let mut raw = raw_pair2();
        for (a, b) in raw.inverses.iter_mut() {
            if a == "(1,2)" {
                *b = "(1,2)".into();
            }
        }
        assert_eq!(
            validate_groupoid(&raw),
            Err(GroupoidError::BadInverse("(1,2)".into()))
        );
    }

    #[test]
    fn missing_and_dangling_entries() {
        let mut raw = raw_pair2();
        raw.comps.pop();
        assert!(matches!(
            validate_groupoid(&raw),
            Err(GroupoidError::PartialComposition(..))
        ));
        let mut raw = raw_pair2();
        raw.units[0].1 = "nope".into();
        assert_eq!(
            validate_groupoid(&raw),
            Err(GroupoidError::DanglingId("nope".into()))
        );
        let mut raw = raw_pair2();
        raw.comps
            .push(("(1,2)".into(), "(1,2)".into(), "(1,1)".into()));
        assert!(matches!(
            validate_groupoid(&raw),
            Err(GroupoidError::IllTypedComposition(..))
        ));
    }

    #[test]
    fn non_associative_table_is_rejected() {
        // A "group" of order 3 whose table is a Latin square with identity
        // but no associativity: the loop x*x = y, y*y = ... variants are all
        // associative at order 3, so use the unit-compatible order-5 loop.
        let t = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ];
        let mut raw = RawGroupoid {
            name: "loop".into(),
            objects: vec!["*".into()],
            ..Default::default()
        };
        for i in 0..5 {
            raw.arrows.push((format!("e{i}"), "*".into(), "*".into()));
            raw.inverses.push((format!("e{i}"), format!("e{i}")));
            for j in 0..5 {
                raw.comps
                    .push((format!("e{i}"), format!("e{j}"), format!("e{}", t[i][j])));
            }
        }
        raw.units.push(("*".into(), "e0".into()));
        assert!(matches!(
            validate_groupoid(&raw),
            Err(GroupoidError::NonAssociative(..))
        ));
    }

    #[test]
    fn constructions_are_valid() {
        let (s3, perms) = FinGroup::permutation_closure(3, &[vec![1, 0, 2], vec![1, 2, 0]]);
        let groupoids = vec![
            trivial(),
            interval(),
            pair(4),
            discrete(&["a", "b"]),
            point(&s3),
            product_with_group(&["x", "y"], &FinGroup::cyclic(3)),
            action(&["0", "1", "2"], &s3, &perms),
            disjoint_union(&[&pair(2), &point(&FinGroup::cyclic(2))]),
            inflate(&point(&FinGroup::cyclic(2)), &[3]),
        ];
        for g in &groupoids {
            g.validate().unwrap();
        }
        assert_eq!(interval().num_arrows(), 4);
        assert_eq!(action(&["0", "1", "2"], &s3, &perms).num_arrows(), 18);
        assert_eq!(inflate(&point(&FinGroup::cyclic(2)), &[3]).num_arrows(), 18);
    }

    #[test]
    fn isotropy_of_product() {
        let g = product_with_group(&["x", "y"], &FinGroup::symmetric(3));
        let iso = g.isotropy(Obj(1));
        assert!(iso.is_isomorphic(&FinGroup::symmetric(3)));
    }
}

//! Strict arrows (functors) between finite groupoids.

use std::sync::Arc;

use thiserror::Error;

use crate::groupoid::{Arr, FinGroupoid, Obj};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("codomain of the first functor is not the domain of the second")]
    DomainMismatch,
    #[error("functors do not share domain and codomain")]
    SignatureMismatch,
    #[error("map has {found} entries, expected {expected}")]
    WrongArity { expected: usize, found: usize },
    #[error("image {0} is out of range")]
    OutOfRange(usize),
    #[error("arrow `{0}` is not sent between the images of its endpoints")]
    EndpointMismatch(String),
    #[error("composite `{0}` after `{1}` is not preserved")]
    NotMultiplicative(String, String),
    #[error("unit at `{0}` is not preserved")]
    UnitNotPreserved(String),
}

/// Pointer-or-structural equality, used to compare endpoints cheaply.
pub(crate) fn same(a: &Arc<FinGroupoid>, b: &Arc<FinGroupoid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A functor between finite groupoids.
#[derive(Clone, Debug)]
pub struct StrictArrow {
    dom: Arc<FinGroupoid>,
    cod: Arc<FinGroupoid>,
    obj_map: Vec<Obj>,
    arr_map: Vec<Arr>,
}

impl PartialEq for StrictArrow {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.arr_map == other.arr_map
            && same(&self.dom, &other.dom)
            && same(&self.cod, &other.cod)
    }
}

impl Eq for StrictArrow {}

impl StrictArrow {
    /// Checks the functor laws and builds the arrow.
    pub fn new(
        dom: Arc<FinGroupoid>,
        cod: Arc<FinGroupoid>,
        obj_map: Vec<Obj>,
        arr_map: Vec<Arr>,
    ) -> Result<Self, FunctorError> {
        if obj_map.len() != dom.num_objects() {
            return Err(FunctorError::WrongArity {
                expected: dom.num_objects(),
                found: obj_map.len(),
            });
        }
        if arr_map.len() != dom.num_arrows() {
            return Err(FunctorError::WrongArity {
                expected: dom.num_arrows(),
                found: arr_map.len(),
            });
        }
        if let Some(x) = obj_map.iter().find(|x| x.0 >= cod.num_objects()) {
            return Err(FunctorError::OutOfRange(x.0));
        }
        if let Some(a) = arr_map.iter().find(|a| a.0 >= cod.num_arrows()) {
            return Err(FunctorError::OutOfRange(a.0));
        }
        for a in dom.arrows() {
            let fa = arr_map[a.0];
            if cod.src(fa) != obj_map[dom.src(a).0] || cod.tgt(fa) != obj_map[dom.tgt(a).0] {
                return Err(FunctorError::EndpointMismatch(
                    dom.arrow_name(a).to_string(),
                ));
            }
        }
        for x in dom.objects() {
            if arr_map[dom.unit(x).0] != cod.unit(obj_map[x.0]) {
                return Err(FunctorError::UnitNotPreserved(
                    dom.object_name(x).to_string(),
                ));
            }
        }
        for g in dom.arrows() {
            for &f in dom.incoming(dom.src(g)) {
                let lhs = arr_map[dom.compose(g, f).0];
                let rhs = cod.compose(arr_map[g.0], arr_map[f.0]);
                if lhs != rhs {
                    return Err(FunctorError::NotMultiplicative(
                        dom.arrow_name(g).to_string(),
                        dom.arrow_name(f).to_string(),
                    ));
                }
            }
        }
        Ok(Self::new_unchecked(dom, cod, obj_map, arr_map))
    }

    pub(crate) fn new_unchecked(
        dom: Arc<FinGroupoid>,
        cod: Arc<FinGroupoid>,
        obj_map: Vec<Obj>,
        arr_map: Vec<Arr>,
    ) -> Self {
        StrictArrow {
            dom,
            cod,
            obj_map,
            arr_map,
        }
    }

    pub fn identity(g: Arc<FinGroupoid>) -> Self {
        let obj_map = g.objects().collect();
        let arr_map = g.arrows().collect();
        Self::new_unchecked(g.clone(), g, obj_map, arr_map)
    }

    /// The unique functor to a groupoid with one object and one arrow.
    pub fn to_terminal(dom: Arc<FinGroupoid>, terminal: Arc<FinGroupoid>) -> Self {
        assert_eq!((terminal.num_objects(), terminal.num_arrows()), (1, 1));
        let obj_map = vec![Obj(0); dom.num_objects()];
        let arr_map = vec![Arr(0); dom.num_arrows()];
        Self::new_unchecked(dom, terminal, obj_map, arr_map)
    }

    pub fn dom(&self) -> &Arc<FinGroupoid> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinGroupoid> {
        &self.cod
    }

    pub fn obj(&self, x: Obj) -> Obj {
        self.obj_map[x.0]
    }

    pub fn arr(&self, a: Arr) -> Arr {
        self.arr_map[a.0]
    }

    pub fn obj_map(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn arr_map(&self) -> &[Arr] {
        &self.arr_map
    }

    pub fn is_identity(&self) -> bool {
        same(&self.dom, &self.cod)
            && self.obj_map.iter().enumerate().all(|(i, x)| x.0 == i)
            && self.arr_map.iter().enumerate().all(|(i, a)| a.0 == i)
    }

    /// Re-runs the functor-law checks.
    pub fn validate(&self) -> Result<(), FunctorError> {
        Self::new(
            self.dom.clone(),
            self.cod.clone(),
            self.obj_map.clone(),
            self.arr_map.clone(),
        )
        .map(|_| ())
    }
}

/// `g ∘ f`: apply `f`, then `g`.
pub fn compose_functors(g: &StrictArrow, f: &StrictArrow) -> Result<StrictArrow, FunctorError> {
    if !same(&g.dom, &f.cod) {
        return Err(FunctorError::DomainMismatch);
    }
    Ok(StrictArrow::new_unchecked(
        f.dom.clone(),
        g.cod.clone(),
        f.obj_map.iter().map(|&x| g.obj(x)).collect(),
        f.arr_map.iter().map(|&a| g.arr(a)).collect(),
    ))
}

/// Iterator over every functor `dom -> cod`, ordered lexicographically by
/// object map and then by arrow map.
///
/// Object maps are searched depth-first with orbit pruning: two objects
/// joined by an arrow must land in the same orbit of `cod`. For each object
/// map the arrow map is found by backtracking in arrow order, with every
/// choice propagated through inverses and composition before the next
/// branch point.
pub fn enumerate_functors(dom: &Arc<FinGroupoid>, cod: &Arc<FinGroupoid>) -> FunctorIter {
    FunctorIter::new(dom.clone(), cod.clone())
}

pub struct FunctorIter {
    dom: Arc<FinGroupoid>,
    cod: Arc<FinGroupoid>,
    cod_orbit: Vec<usize>,
    /// Object-map odometer state; `None` once exhausted.
    obj_map: Option<Vec<usize>>,
    started: bool,
    /// Pending arrow-map search for the current object map.
    arrow_search: Option<ArrowSearch>,
}

impl FunctorIter {
    fn new(dom: Arc<FinGroupoid>, cod: Arc<FinGroupoid>) -> Self {
        let cod_orbit = orbit_labels(&cod);
        let obj_map = if dom.num_objects() > 0 && cod.num_objects() == 0 {
            None
        } else {
            Some(vec![0; dom.num_objects()])
        };
        FunctorIter {
            dom,
            cod,
            cod_orbit,
            obj_map,
            started: false,
            arrow_search: None,
        }
    }

    /// Objects linked by an arrow must map into one orbit of the codomain.
    fn orbit_compatible(&self, map: &[usize], upto: usize) -> bool {
        let x = upto;
        for &a in self
            .dom
            .outgoing(Obj(x))
            .iter()
            .chain(self.dom.incoming(Obj(x)))
        {
            let other = if self.dom.src(a).0 == x {
                self.dom.tgt(a).0
            } else {
                self.dom.src(a).0
            };
            if other <= x && self.cod_orbit[map[other]] != self.cod_orbit[map[x]] {
                return false;
            }
        }
        true
    }

    /// Advances the object map to the next orbit-compatible assignment,
    /// in lexicographic order.
    fn advance_object_map(&mut self) -> bool {
        let n = self.dom.num_objects();
        let m = self.cod.num_objects();
        let Some(mut map) = self.obj_map.take() else {
            return false;
        };
        let mut i = if !self.started {
            self.started = true;
            0
        } else {
            if n == 0 {
                return false;
            }
            map[n - 1] += 1;
            n - 1
        };
        loop {
            if i == n {
                self.obj_map = Some(map);
                return true;
            }
            if map[i] >= m {
                if i == 0 {
                    return false;
                }
                map[i] = 0;
                i -= 1;
                map[i] += 1;
            } else if self.orbit_compatible(&map, i) {
                i += 1;
                if i < n {
                    map[i] = 0;
                }
            } else {
                map[i] += 1;
            }
        }
    }
}

impl Iterator for FunctorIter {
    type Item = StrictArrow;

    fn next(&mut self) -> Option<StrictArrow> {
        loop {
            if let Some(search) = self.arrow_search.as_mut() {
                if let Some(arr_map) = search.next(&self.dom, &self.cod) {
                    let obj_map = self
                        .obj_map
                        .as_ref()
                        .unwrap()
                        .iter()
                        .map(|&x| Obj(x))
                        .collect();
                    return Some(StrictArrow::new_unchecked(
                        self.dom.clone(),
                        self.cod.clone(),
                        obj_map,
                        arr_map,
                    ));
                }
                self.arrow_search = None;
            }
            if !self.advance_object_map() {
                return None;
            }
            let map: Vec<Obj> = self
                .obj_map
                .as_ref()
                .unwrap()
                .iter()
                .map(|&x| Obj(x))
                .collect();
            self.arrow_search = ArrowSearch::new(&self.dom, &self.cod, &map);
        }
    }
}

/// Orbit label of each object, by union of arrow endpoints.
pub(crate) fn orbit_labels(g: &FinGroupoid) -> Vec<usize> {
    let mut uf = petgraph::unionfind::UnionFind::<usize>::new(g.num_objects());
    for a in g.arrows() {
        uf.union(g.src(a).0, g.tgt(a).0);
    }
    uf.into_labeling()
}

/// Depth-first search for arrow maps over a fixed object map.
struct ArrowSearch {
    obj_map: Vec<Obj>,
    /// Stack of (assignment snapshot, branch arrow, next candidate index).
    stack: Vec<Frame>,
}

struct Frame {
    assign: Vec<Option<Arr>>,
    branch: usize,
    next: usize,
}

impl ArrowSearch {
    fn new(dom: &FinGroupoid, cod: &FinGroupoid, obj_map: &[Obj]) -> Option<Self> {
        let mut assign = vec![None; dom.num_arrows()];
        for x in dom.objects() {
            if !propagate(dom, cod, &mut assign, dom.unit(x), cod.unit(obj_map[x.0])) {
                return None;
            }
        }
        let mut search = ArrowSearch {
            obj_map: obj_map.to_vec(),
            stack: Vec::new(),
        };
        search.push(assign);
        Some(search)
    }

    fn push(&mut self, assign: Vec<Option<Arr>>) {
        let branch = assign
            .iter()
            .position(Option::is_none)
            .unwrap_or(assign.len());
        self.stack.push(Frame {
            assign,
            branch,
            next: 0,
        });
    }

    fn next(&mut self, dom: &FinGroupoid, cod: &FinGroupoid) -> Option<Vec<Arr>> {
        while let Some(top) = self.stack.last_mut() {
            if top.branch == top.assign.len() {
                let frame = self.stack.pop().unwrap();
                return Some(frame.assign.into_iter().map(Option::unwrap).collect());
            }
            let a = Arr(top.branch);
            let candidates = cod.hom(self.obj_map[dom.src(a).0], self.obj_map[dom.tgt(a).0]);
            if top.next >= candidates.len() {
                self.stack.pop();
                continue;
            }
            let choice = candidates[top.next];
            top.next += 1;
            let mut assign = top.assign.clone();
            if propagate(dom, cod, &mut assign, a, choice) {
                self.push(assign);
            }
        }
        None
    }
}

/// Assigns `a -> v` and closes the assignment under inverses and
/// composition with already assigned arrows. Returns `false` on conflict.
fn propagate(
    dom: &FinGroupoid,
    cod: &FinGroupoid,
    assign: &mut [Option<Arr>],
    a: Arr,
    v: Arr,
) -> bool {
    let mut work = vec![(a, v)];
    while let Some((a, v)) = work.pop() {
        match assign[a.0] {
            Some(w) if w == v => continue,
            Some(_) => return false,
            None => assign[a.0] = Some(v),
        }
        work.push((dom.inv(a), cod.inv(v)));
        for &b in dom.outgoing(dom.tgt(a)) {
            if let Some(vb) = assign[b.0] {
                work.push((dom.compose(b, a), cod.compose(vb, v)));
            }
        }
        for &b in dom.incoming(dom.src(a)) {
            if let Some(vb) = assign[b.0] {
                work.push((dom.compose(a, b), cod.compose(v, vb)));
            }
        }
    }
    true
}

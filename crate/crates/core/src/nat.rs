//! Natural transformations between functors of finite groupoids.
//!
//! Every natural transformation between groupoid-valued functors is
//! invertible, so these double as the homotopies `f ~ g`.

use std::collections::VecDeque;

use thiserror::Error;

use crate::functor::{same, StrictArrow};
use crate::groupoid::{Arr, Obj};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NatError {
    #[error("functors do not share domain and codomain")]
    SignatureMismatch,
    #[error("component at `{0}` has the wrong endpoints")]
    BadComponent(String),
    #[error("naturality fails along `{0}`")]
    NotNatural(String),
    #[error("transformations are not composable")]
    NotComposable,
}

/// `T: f ⇒ g`, one arrow `T(x): f(x) -> g(x)` per object of the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatTrans {
    source: StrictArrow,
    target: StrictArrow,
    components: Vec<Arr>,
}

fn same_signature(f: &StrictArrow, g: &StrictArrow) -> bool {
    same(f.dom(), g.dom()) && same(f.cod(), g.cod())
}

impl NatTrans {
    pub fn new(
        source: StrictArrow,
        target: StrictArrow,
        components: Vec<Arr>,
    ) -> Result<Self, NatError> {
        if !same_signature(&source, &target) {
            return Err(NatError::SignatureMismatch);
        }
        let t = NatTrans {
            source,
            target,
            components,
        };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<(), NatError> {
        let (dom, cod) = (self.source.dom(), self.source.cod());
        if self.components.len() != dom.num_objects() {
            return Err(NatError::BadComponent(String::from("<arity>")));
        }
        for x in dom.objects() {
            let c = self.components[x.0];
            if c.0 >= cod.num_arrows()
                || cod.src(c) != self.source.obj(x)
                || cod.tgt(c) != self.target.obj(x)
            {
                return Err(NatError::BadComponent(dom.object_name(x).to_string()));
            }
        }
        for a in dom.arrows() {
            // g(a)·T(x) = T(y)·f(a) for a: x -> y
            let lhs = cod.compose(self.target.arr(a), self.components[dom.src(a).0]);
            let rhs = cod.compose(self.components[dom.tgt(a).0], self.source.arr(a));
            if lhs != rhs {
                return Err(NatError::NotNatural(dom.arrow_name(a).to_string()));
            }
        }
        Ok(())
    }

    pub fn identity(f: &StrictArrow) -> Self {
        let components = f.dom().objects().map(|x| f.cod().unit(f.obj(x))).collect();
        NatTrans {
            source: f.clone(),
            target: f.clone(),
            components,
        }
    }

    pub fn source(&self) -> &StrictArrow {
        &self.source
    }

    pub fn target(&self) -> &StrictArrow {
        &self.target
    }

    pub fn component(&self, x: Obj) -> Arr {
        self.components[x.0]
    }

    pub fn components(&self) -> &[Arr] {
        &self.components
    }

    pub fn inverse(&self) -> NatTrans {
        let cod = self.source.cod();
        NatTrans {
            source: self.target.clone(),
            target: self.source.clone(),
            components: self.components.iter().map(|&c| cod.inv(c)).collect(),
        }
    }

    /// Vertical composite `other ∘ self : f ⇒ h` for `self: f ⇒ g`, `other: g ⇒ h`.
    pub fn then(&self, other: &NatTrans) -> Result<NatTrans, NatError> {
        if self.target != other.source {
            return Err(NatError::NotComposable);
        }
        let cod = self.source.cod();
        Ok(NatTrans {
            source: self.source.clone(),
            target: other.target.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(&a, &b)| cod.compose(b, a))
                .collect(),
        })
    }

    pub fn validate(&self) -> Result<(), NatError> {
        if !same_signature(&self.source, &self.target) {
            return Err(NatError::SignatureMismatch);
        }
        self.check()
    }
}

/// Searches for a natural transformation `f ⇒ g`.
///
/// On each connected component of the domain the component at the root
/// determines all others through a spanning tree, so only the arrows
/// `f(root) -> g(root)` are tried (the unit first, when there is one).
pub fn are_homotopic(f: &StrictArrow, g: &StrictArrow) -> Result<Option<NatTrans>, NatError> {
    if !same_signature(f, g) {
        return Err(NatError::SignatureMismatch);
    }
    let dom = f.dom();
    let cod = f.cod();
    let n = dom.num_objects();
    let mut components = vec![None::<Arr>; n];
    // Spanning forest: tree[x] = (root, arrow root -> x).
    let mut tree: Vec<Option<(Obj, Arr)>> = vec![None; n];
    let mut roots = Vec::new();
    for r in dom.objects() {
        if tree[r.0].is_some() {
            continue;
        }
        roots.push(r);
        tree[r.0] = Some((r, dom.unit(r)));
        let mut queue = VecDeque::from([r]);
        while let Some(x) = queue.pop_front() {
            let to_x = tree[x.0].unwrap().1;
            for &a in dom.outgoing(x) {
                let y = dom.tgt(a);
                if tree[y.0].is_none() {
                    tree[y.0] = Some((r, dom.compose(a, to_x)));
                    queue.push_back(y);
                }
            }
        }
    }
    for &r in &roots {
        let mut candidates: Vec<Arr> = cod.hom(f.obj(r), g.obj(r)).to_vec();
        if let Some(pos) = candidates.iter().position(|&c| cod.is_unit(c)) {
            let u = candidates.remove(pos);
            candidates.insert(0, u);
        }
        let members: Vec<Obj> = dom
            .objects()
            .filter(|y| tree[y.0].unwrap().0 == r)
            .collect();
        let mut found = false;
        'cand: for c in candidates {
            for &y in &members {
                // T(y) = g(t)·T(r)·f(t)^-1 for t: r -> y
                let t = tree[y.0].unwrap().1;
                let ty = cod.compose(cod.compose(g.arr(t), c), cod.inv(f.arr(t)));
                components[y.0] = Some(ty);
            }
            for &y in &members {
                for &a in dom.outgoing(y) {
                    let lhs = cod.compose(g.arr(a), components[y.0].unwrap());
                    let rhs = cod.compose(components[dom.tgt(a).0].unwrap(), f.arr(a));
                    if lhs != rhs {
                        continue 'cand;
                    }
                }
            }
            found = true;
            break;
        }
        if !found {
            return Ok(None);
        }
    }
    Ok(Some(NatTrans {
        source: f.clone(),
        target: g.clone(),
        components: components.into_iter().map(Option::unwrap).collect(),
    }))
}

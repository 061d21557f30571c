//! The functor groupoid `G^𝕀` with its endpoint and constant maps.

use std::sync::Arc;

use crate::functor::StrictArrow;
use crate::groupoid::{Arr, FinGroupoid, Obj};

/// `G^𝕀` together with `e0, e1: G^𝕀 -> G` and `t: G -> G^𝕀`.
#[derive(Debug, Clone)]
pub struct Cocylinder {
    pub path: Arc<FinGroupoid>,
    pub e0: StrictArrow,
    pub e1: StrictArrow,
    pub t: StrictArrow,
}

/// Builds `G^𝕀`: objects are the arrows of `G`; an arrow `g -> g'` is a pair
/// `(u, v)` with `u: src g -> src g'`, `v: tgt g -> tgt g'` and `v·g = g'·u`.
///
/// The arrows out of `g` are indexed arithmetically by the positions of `u`
/// and `v` among the arrows out of `src g` and `tgt g`, so composition is a
/// rule rather than a table; `G^𝕀` has `Σ |out(src g)|·|out(tgt g)|` arrows
/// and far more composable pairs.
pub fn cocylinder(g: &Arc<FinGroupoid>) -> Cocylinder {
    let objects: Vec<String> = g.arrow_names().to_vec();
    let mut offset = Vec::with_capacity(g.num_arrows());
    let mut arrows = Vec::new();
    let mut decode = Vec::new();
    for obj in g.arrows() {
        offset.push(arrows.len());
        // The square forces g' = v·g·u^-1 for each (u, v).
        for &u in g.outgoing(g.src(obj)) {
            for &v in g.outgoing(g.tgt(obj)) {
                let target = g.compose(g.compose(v, obj), g.inv(u));
                decode.push((obj, u, v));
                arrows.push((
                    format!(
                        "{}:[{},{}]",
                        g.arrow_name(obj),
                        g.arrow_name(u),
                        g.arrow_name(v)
                    ),
                    Obj(obj.0),
                    Obj(target.0),
                ));
            }
        }
    }
    let index = {
        let g = g.clone();
        let offset = offset.clone();
        move |obj: Arr, u: Arr, v: Arr| {
            let width = g.outgoing(g.tgt(obj)).len();
            Arr(offset[obj.0] + g.outgoing_position(u) * width + g.outgoing_position(v))
        }
    };
    let unit = g
        .arrows()
        .map(|obj| index(obj, g.unit(g.src(obj)), g.unit(g.tgt(obj))))
        .collect();
    let inv = decode
        .iter()
        .zip(&arrows)
        .map(|(&(_, u, v), a)| index(Arr(a.2 .0), g.inv(u), g.inv(v)))
        .collect();
    let rule = {
        let g = g.clone();
        let decode = decode.clone();
        let index = index.clone();
        move |b: Arr, a: Arr| {
            let (_, u2, v2) = decode[b.0];
            let (obj, u1, v1) = decode[a.0];
            index(obj, g.compose(u2, u1), g.compose(v2, v1))
        }
    };
    let path = FinGroupoid::from_rule(format!("{}^I", g.name()), objects, arrows, unit, inv, rule)
        .expect("functor groupoid");
    let path = Arc::new(path);

    let e0 = StrictArrow::new_unchecked(
        path.clone(),
        g.clone(),
        g.arrows().map(|a| g.src(a)).collect(),
        decode.iter().map(|&(_, u, _)| u).collect(),
    );
    let e1 = StrictArrow::new_unchecked(
        path.clone(),
        g.clone(),
        g.arrows().map(|a| g.tgt(a)).collect(),
        decode.iter().map(|&(_, _, v)| v).collect(),
    );
    let t = StrictArrow::new_unchecked(
        g.clone(),
        path.clone(),
        g.objects().map(|x| Obj(g.unit(x).0)).collect(),
        g.arrows().map(|a| index(g.unit(g.src(a)), a, a)).collect(),
    );
    Cocylinder { path, e0, e1, t }
}

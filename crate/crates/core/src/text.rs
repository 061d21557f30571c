//! Line-oriented text formats for groupoids, functors, bibundles, cospans,
//! covers, bundles and descent data.
//!
//! A document is a sequence of blocks, each opened by a header line
//! (`groupoid`, `functor`, `bibundle`, `cospan`, `cover`, `bundle`,
//! `datum`). A `#` at the start of a line or after whitespace begins a
//! comment. Composition `comp G F = H` means "F then G".

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::bibundle::{Bibundle, BibundleError, GroupoidAction, Side};
use crate::descent::{Bundle, Cover, DescentDatum, DescentError, Piece, Transition};
use crate::functor::{FunctorError, StrictArrow};
use crate::groupoid::{validate_groupoid, Arr, FinGroupoid, GroupoidError, Obj, RawGroupoid};
use crate::homotopy::{Cospan, HomotopyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: unknown {kind} `{name}`")]
    Unknown {
        line: usize,
        kind: &'static str,
        name: String,
    },
    #[error("line {line}: duplicate {kind} `{name}`")]
    Duplicate {
        line: usize,
        kind: &'static str,
        name: String,
    },
    #[error("groupoid `{name}` (line {line}): {source}")]
    Groupoid {
        line: usize,
        name: String,
        source: GroupoidError,
    },
    #[error("functor `{name}` (line {line}): {source}")]
    Functor {
        line: usize,
        name: String,
        source: FunctorError,
    },
    #[error("bibundle `{name}` (line {line}): {source}")]
    Bibundle {
        line: usize,
        name: String,
        source: BibundleError,
    },
    #[error("cospan `{name}` (line {line}): {source}")]
    Cospan {
        line: usize,
        name: String,
        source: HomotopyError,
    },
    #[error("`{name}` (line {line}): {source}")]
    Descent {
        line: usize,
        name: String,
        source: DescentError,
    },
}

#[derive(Debug, Clone)]
struct Tok<'a> {
    col: usize,
    text: &'a str,
}

#[derive(Debug, Clone)]
struct Line<'a> {
    no: usize,
    toks: Vec<Tok<'a>>,
}

impl<'a> Line<'a> {
    fn err(&self, idx: usize, message: impl Into<String>) -> TextError {
        let column = self.toks.get(idx).map(|t| t.col).unwrap_or_else(|| {
            self.toks
                .last()
                .map_or(1, |t| t.col + t.text.chars().count())
        });
        TextError::Parse {
            line: self.no,
            column,
            message: message.into(),
        }
    }

    fn word(&self, idx: usize) -> Result<&'a str, TextError> {
        self.toks
            .get(idx)
            .map(|t| t.text)
            .ok_or_else(|| self.err(idx, "unexpected end of line"))
    }

    fn expect(&self, idx: usize, lit: &str) -> Result<(), TextError> {
        match self.toks.get(idx) {
            Some(t) if t.text == lit => Ok(()),
            Some(t) => Err(self.err(idx, format!("expected `{lit}`, found `{}`", t.text))),
            None => Err(self.err(idx, format!("expected `{lit}`"))),
        }
    }

    fn arity(&self, n: usize) -> Result<(), TextError> {
        if self.toks.len() > n {
            Err(self.err(n, "unexpected trailing token"))
        } else if self.toks.len() < n {
            Err(self.err(self.toks.len(), "unexpected end of line"))
        } else {
            Ok(())
        }
    }

    fn rest(&self, from: usize) -> Vec<String> {
        self.toks[from..]
            .iter()
            .map(|t| t.text.to_string())
            .collect()
    }
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let mut toks = Vec::new();
        let mut start = None;
        for (col, (pos, ch)) in raw.char_indices().enumerate() {
            if ch.is_whitespace() {
                if let Some((c, s)) = start.take() {
                    toks.push(Tok {
                        col: c,
                        text: &raw[s..pos],
                    });
                }
            } else if start.is_none() {
                if ch == '#' {
                    break;
                }
                start = Some((col + 1, pos));
            }
        }
        if let Some((c, s)) = start {
            toks.push(Tok {
                col: c,
                text: &raw[s..],
            });
        }
        if !toks.is_empty() {
            lines.push(Line { no: i + 1, toks });
        }
    }
    lines
}

const HEADERS: [&str; 7] = [
    "groupoid", "functor", "bibundle", "cospan", "cover", "bundle", "datum",
];

struct Block<'a> {
    header: Line<'a>,
    body: Vec<Line<'a>>,
}

fn blocks(text: &str) -> Result<Vec<Block<'_>>, TextError> {
    let mut out: Vec<Block> = Vec::new();
    for line in tokenize(text) {
        if HEADERS.contains(&line.toks[0].text) {
            out.push(Block {
                header: line,
                body: Vec::new(),
            });
        } else if let Some(b) = out.last_mut() {
            b.body.push(line);
        } else {
            return Err(line.err(0, format!("expected one of {}", HEADERS.join(", "))));
        }
    }
    Ok(out)
}

/// Named structures loaded from one or more documents.
#[derive(Debug, Clone, Default)]
pub struct Library {
    pub groupoids: Vec<Arc<FinGroupoid>>,
    pub functors: Vec<(String, StrictArrow)>,
    pub bibundles: Vec<Bibundle>,
    pub cospans: Vec<(String, Cospan)>,
    pub covers: Vec<(String, Cover)>,
    pub bundles: Vec<(String, Bundle)>,
    pub data: Vec<(String, DescentDatum)>,
}

fn find<'a, T>(items: &'a [(String, T)], name: &str) -> Option<&'a T> {
    items.iter().find(|(n, _)| n == name).map(|(_, t)| t)
}

impl Library {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn groupoid(&self, name: &str) -> Option<&Arc<FinGroupoid>> {
        self.groupoids.iter().find(|g| g.name() == name)
    }

    pub fn functor(&self, name: &str) -> Option<&StrictArrow> {
        find(&self.functors, name)
    }

    pub fn bibundle(&self, name: &str) -> Option<&Bibundle> {
        self.bibundles.iter().find(|b| b.name() == name)
    }

    pub fn cospan(&self, name: &str) -> Option<&Cospan> {
        find(&self.cospans, name)
    }

    pub fn cover(&self, name: &str) -> Option<&Cover> {
        find(&self.covers, name)
    }

    pub fn bundle(&self, name: &str) -> Option<&Bundle> {
        find(&self.bundles, name)
    }

    pub fn datum(&self, name: &str) -> Option<&DescentDatum> {
        find(&self.data, name)
    }

    /// Parses a document and adds its blocks, resolving names against
    /// everything loaded so far. Nothing is added if the document fails.
    pub fn load_str(&mut self, text: &str) -> Result<(), TextError> {
        let mut next = self.clone();
        let bs = blocks(text)?;
        // Groupoids first so later blocks may refer to any of them.
        for kind in HEADERS {
            for b in bs.iter().filter(|b| b.header.toks[0].text == kind) {
                next.load_block(b)?;
            }
        }
        *self = next;
        Ok(())
    }

    fn taken(&self, kind: &str, name: &str) -> bool {
        match kind {
            "groupoid" => self.groupoid(name).is_some(),
            "functor" => self.functor(name).is_some(),
            "bibundle" => self.bibundle(name).is_some(),
            "cospan" => self.cospan(name).is_some(),
            "cover" => self.cover(name).is_some(),
            "bundle" => self.bundle(name).is_some(),
            _ => self.datum(name).is_some(),
        }
    }

    fn load_block(&mut self, b: &Block) -> Result<(), TextError> {
        let kind = HEADERS
            .iter()
            .find(|k| **k == b.header.toks[0].text)
            .copied()
            .unwrap();
        let name = b.header.word(1)?;
        if self.taken(kind, name) {
            return Err(TextError::Duplicate {
                line: b.header.no,
                kind,
                name: name.to_string(),
            });
        }
        match kind {
            "groupoid" => {
                let g = parse_groupoid(b)?;
                self.groupoids.push(Arc::new(g));
            }
            "functor" => {
                let f = self.parse_functor(b)?;
                self.functors.push((name.to_string(), f));
            }
            "bibundle" => {
                let z = self.parse_bibundle(b)?;
                self.bibundles.push(z);
            }
            "cospan" => {
                let c = self.parse_cospan(b)?;
                self.cospans.push((name.to_string(), c));
            }
            "cover" => {
                let c = parse_cover(b)?;
                self.covers.push((name.to_string(), c));
            }
            "bundle" => {
                let a = parse_bundle(b)?;
                self.bundles.push((name.to_string(), a));
            }
            _ => {
                let d = self.parse_datum(b)?;
                self.data.push((name.to_string(), d));
            }
        }
        Ok(())
    }

    fn lookup_groupoid(&self, line: &Line, idx: usize) -> Result<Arc<FinGroupoid>, TextError> {
        let name = line.word(idx)?;
        self.groupoid(name)
            .cloned()
            .ok_or_else(|| TextError::Unknown {
                line: line.no,
                kind: "groupoid",
                name: name.to_string(),
            })
    }

    fn parse_functor(&self, b: &Block) -> Result<StrictArrow, TextError> {
        let h = &b.header;
        h.arity(6)?;
        h.expect(2, ":")?;
        h.expect(4, "->")?;
        let name = h.word(1)?.to_string();
        let dom = self.lookup_groupoid(h, 3)?;
        let cod = self.lookup_groupoid(h, 5)?;
        let mut obj_map: Vec<Option<Obj>> = vec![None; dom.num_objects()];
        let mut arr_map: Vec<Option<Arr>> = vec![None; dom.num_arrows()];
        for line in &b.body {
            let kw = line.word(0)?;
            line.arity(4)?;
            line.expect(2, "->")?;
            match kw {
                "obj" => {
                    let x = object(&dom, line, 1)?;
                    let y = object(&cod, line, 3)?;
                    set_once(&mut obj_map[x.0], y, line)?;
                }
                "arr" => {
                    let a = arrow(&dom, line, 1)?;
                    let c = arrow(&cod, line, 3)?;
                    set_once(&mut arr_map[a.0], c, line)?;
                }
                _ => return Err(line.err(0, "expected `obj` or `arr`")),
            }
        }
        let fail = |source| TextError::Functor {
            line: h.no,
            name: name.clone(),
            source,
        };
        let obj_map = complete(
            obj_map,
            |i| format!("object `{}` is not mapped", dom.object_name(Obj(i))),
            h,
        )?;
        let arr_map = complete(
            arr_map,
            |i| format!("arrow `{}` is not mapped", dom.arrow_name(Arr(i))),
            h,
        )?;
        StrictArrow::new(dom, cod, obj_map, arr_map).map_err(fail)
    }

    fn parse_bibundle(&self, b: &Block) -> Result<Bibundle, TextError> {
        let h = &b.header;
        h.arity(8)?;
        h.expect(2, ":")?;
        h.expect(4, "-|")?;
        h.expect(6, "|-")?;
        let name = h.word(1)?.to_string();
        let left_g = self.lookup_groupoid(h, 3)?;
        let right_g = self.lookup_groupoid(h, 7)?;
        let mut carrier: Option<Vec<String>> = None;
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut p: Vec<Option<Obj>> = Vec::new();
        let mut q: Vec<Option<Obj>> = Vec::new();
        let mut lact: HashMap<(usize, Arr), usize> = HashMap::new();
        let mut ract: HashMap<(usize, Arr), usize> = HashMap::new();
        for line in &b.body {
            let kw = line.word(0)?;
            if kw == "carrier:" {
                if carrier.is_some() {
                    return Err(line.err(0, "carrier declared twice"));
                }
                let c = line.rest(1);
                for (i, z) in c.iter().enumerate() {
                    if index.insert(z.clone(), i).is_some() {
                        return Err(line.err(i + 1, format!("duplicate carrier element `{z}`")));
                    }
                }
                p = vec![None; c.len()];
                q = vec![None; c.len()];
                carrier = Some(c);
                continue;
            }
            if carrier.is_none() {
                return Err(line.err(0, "expected `carrier:` first"));
            }
            let elem = |idx: usize| -> Result<usize, TextError> {
                let w = line.word(idx)?;
                index
                    .get(w)
                    .copied()
                    .ok_or_else(|| line.err(idx, format!("unknown carrier element `{w}`")))
            };
            match kw {
                "p" | "q" => {
                    line.arity(4)?;
                    line.expect(2, "->")?;
                    let z = elem(1)?;
                    if kw == "p" {
                        set_once(&mut p[z], object(&left_g, line, 3)?, line)?;
                    } else {
                        set_once(&mut q[z], object(&right_g, line, 3)?, line)?;
                    }
                }
                "lact" => {
                    line.arity(5)?;
                    line.expect(3, "->")?;
                    let eta = arrow(&left_g, line, 1)?;
                    let z = elem(2)?;
                    if lact.insert((z, eta), elem(4)?).is_some() {
                        return Err(line.err(0, "duplicate entry"));
                    }
                }
                "ract" => {
                    line.arity(5)?;
                    line.expect(3, "->")?;
                    let z = elem(1)?;
                    let gamma = arrow(&right_g, line, 2)?;
                    if ract.insert((z, gamma), elem(4)?).is_some() {
                        return Err(line.err(0, "duplicate entry"));
                    }
                }
                _ => return Err(line.err(0, "expected `p`, `q`, `lact` or `ract`")),
            }
        }
        let carrier = carrier.ok_or_else(|| h.err(0, "bibundle has no `carrier:` line"))?;
        let p = complete(p, |i| format!("`p` is missing for `{}`", carrier[i]), h)?;
        let q = complete(q, |i| format!("`q` is missing for `{}`", carrier[i]), h)?;
        let fail = |source| TextError::Bibundle {
            line: h.no,
            name: name.clone(),
            source,
        };
        let left =
            GroupoidAction::from_fn(left_g, Side::Left, p, |z, a| lact.get(&(z, a)).copied())
                .map_err(fail)?;
        let right =
            GroupoidAction::from_fn(right_g, Side::Right, q, |z, a| ract.get(&(z, a)).copied())
                .map_err(fail)?;
        Bibundle::new(name.clone(), carrier, left, right).map_err(fail)
    }

    fn parse_cospan(&self, b: &Block) -> Result<Cospan, TextError> {
        let h = &b.header;
        h.arity(5)?;
        h.expect(2, ":")?;
        if let Some(line) = b.body.first() {
            return Err(line.err(0, "cospan blocks have no body"));
        }
        let leg = |idx: usize| -> Result<StrictArrow, TextError> {
            let n = h.word(idx)?;
            self.functor(n).cloned().ok_or_else(|| TextError::Unknown {
                line: h.no,
                kind: "functor",
                name: n.to_string(),
            })
        };
        Cospan::new(leg(3)?, leg(4)?).map_err(|source| TextError::Cospan {
            line: h.no,
            name: h.toks[1].text.to_string(),
            source,
        })
    }

    fn parse_datum(&self, b: &Block) -> Result<DescentDatum, TextError> {
        let h = &b.header;
        h.arity(4)?;
        h.expect(2, "over")?;
        let name = h.word(1)?.to_string();
        let cover_name = h.word(3)?;
        let cover = self
            .cover(cover_name)
            .cloned()
            .ok_or_else(|| TextError::Unknown {
                line: h.no,
                kind: "cover",
                name: cover_name.to_string(),
            })?;
        let piece_of = |line: &Line, idx: usize| -> Result<usize, TextError> {
            let w = line.word(idx)?;
            cover
                .pieces
                .iter()
                .position(|p| p.name == w)
                .ok_or_else(|| line.err(idx, format!("unknown piece `{w}`")))
        };
        let point_of = |line: &Line, piece: usize, idx: usize| -> Result<usize, TextError> {
            let w = line.word(idx)?;
            cover.pieces[piece]
                .points
                .iter()
                .position(|p| p == w)
                .ok_or_else(|| {
                    line.err(
                        idx,
                        format!(
                            "unknown point `{w}` of piece `{}`",
                            cover.pieces[piece].name
                        ),
                    )
                })
        };
        let n = cover.pieces.len();
        let mut elems: Vec<Vec<String>> = vec![Vec::new(); n];
        let mut proj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut trans: Vec<(&Line, usize, usize, String, usize, String)> = Vec::new();
        for line in &b.body {
            match line.word(0)? {
                "elem" => {
                    line.arity(5)?;
                    line.expect(3, "->")?;
                    let i = piece_of(line, 1)?;
                    let e = line.word(2)?.to_string();
                    if elems[i].contains(&e) {
                        return Err(line.err(2, format!("duplicate element `{e}`")));
                    }
                    proj[i].push(point_of(line, i, 4)?);
                    elems[i].push(e);
                }
                "trans" => {
                    line.arity(8)?;
                    line.expect(4, "@")?;
                    line.expect(6, "->")?;
                    let i = piece_of(line, 1)?;
                    let j = piece_of(line, 2)?;
                    let v = point_of(line, j, 5)?;
                    trans.push((
                        line,
                        i,
                        j,
                        line.word(3)?.to_string(),
                        v,
                        line.word(7)?.to_string(),
                    ));
                }
                _ => return Err(line.err(0, "expected `elem` or `trans`")),
            }
        }
        let mut transitions: BTreeMap<(usize, usize), Transition> = BTreeMap::new();
        for (line, i, j, a, v, b2) in trans {
            let a = elems[i]
                .iter()
                .position(|e| *e == a)
                .ok_or_else(|| line.err(3, format!("unknown element `{a}`")))?;
            let b2 = elems[j]
                .iter()
                .position(|e| *e == b2)
                .ok_or_else(|| line.err(7, format!("unknown element `{b2}`")))?;
            if transitions
                .entry((i, j))
                .or_default()
                .insert((a, v), b2)
                .is_some()
            {
                return Err(line.err(0, "duplicate transition entry"));
            }
        }
        let fibers = (0..n)
            .map(|i| Bundle {
                base: cover.pieces[i].points.clone(),
                total: elems[i].clone(),
                proj: proj[i].clone(),
            })
            .collect();
        DescentDatum::new(cover, fibers, transitions).map_err(|source| TextError::Descent {
            line: h.no,
            name,
            source,
        })
    }
}

fn object(g: &FinGroupoid, line: &Line, idx: usize) -> Result<Obj, TextError> {
    let w = line.word(idx)?;
    g.object_by_name(w)
        .ok_or_else(|| line.err(idx, format!("unknown object `{w}` of `{}`", g.name())))
}

fn arrow(g: &FinGroupoid, line: &Line, idx: usize) -> Result<Arr, TextError> {
    let w = line.word(idx)?;
    g.arrow_by_name(w)
        .ok_or_else(|| line.err(idx, format!("unknown arrow `{w}` of `{}`", g.name())))
}

fn set_once<T: Copy>(slot: &mut Option<T>, value: T, line: &Line) -> Result<(), TextError> {
    if slot.replace(value).is_some() {
        return Err(line.err(1, "duplicate entry"));
    }
    Ok(())
}

fn complete<T>(
    v: Vec<Option<T>>,
    msg: impl Fn(usize) -> String,
    header: &Line,
) -> Result<Vec<T>, TextError> {
    if let Some(i) = v.iter().position(Option::is_none) {
        return Err(header.err(0, msg(i)));
    }
    Ok(v.into_iter().map(Option::unwrap).collect())
}

fn parse_groupoid(b: &Block) -> Result<FinGroupoid, TextError> {
    let h = &b.header;
    h.arity(2)?;
    let mut raw = RawGroupoid {
        name: h.word(1)?.to_string(),
        ..RawGroupoid::default()
    };
    let mut seen_objects = false;
    for line in &b.body {
        match line.word(0)? {
            "objects:" => {
                if seen_objects {
                    return Err(line.err(0, "objects declared twice"));
                }
                seen_objects = true;
                raw.objects = line.rest(1);
            }
            "arrow" => {
                line.arity(6)?;
                line.expect(2, ":")?;
                line.expect(4, "->")?;
                raw.arrows.push((
                    line.word(1)?.into(),
                    line.word(3)?.into(),
                    line.word(5)?.into(),
                ));
            }
            "id" => {
                line.arity(4)?;
                line.expect(2, "=")?;
                raw.units.push((line.word(1)?.into(), line.word(3)?.into()));
            }
            "inv" => {
                line.arity(4)?;
                line.expect(2, "=")?;
                raw.inverses
                    .push((line.word(1)?.into(), line.word(3)?.into()));
            }
            "comp" => {
                line.arity(5)?;
                line.expect(3, "=")?;
                raw.comps.push((
                    line.word(1)?.into(),
                    line.word(2)?.into(),
                    line.word(4)?.into(),
                ));
            }
            _ => return Err(line.err(0, "expected `objects:`, `arrow`, `id`, `inv` or `comp`")),
        }
    }
    if !seen_objects {
        return Err(h.err(0, "groupoid has no `objects:` line"));
    }
    validate_groupoid(&raw).map_err(|source| TextError::Groupoid {
        line: h.no,
        name: raw.name.clone(),
        source,
    })
}

fn parse_cover(b: &Block) -> Result<Cover, TextError> {
    let h = &b.header;
    h.arity(2)?;
    let mut base: Option<Vec<String>> = None;
    let mut pieces: Vec<(Piece, Vec<Option<usize>>)> = Vec::new();
    for line in &b.body {
        match line.word(0)? {
            "base:" => {
                if base.is_some() {
                    return Err(line.err(0, "base declared twice"));
                }
                base = Some(line.rest(1));
            }
            "piece" => {
                line.expect(2, ":")?;
                let name = line.word(1)?.to_string();
                if pieces.iter().any(|(p, _)| p.name == name) {
                    return Err(line.err(1, format!("duplicate piece `{name}`")));
                }
                let points = line.rest(3);
                let n = points.len();
                pieces.push((
                    Piece {
                        name,
                        points,
                        map: Vec::new(),
                    },
                    vec![None; n],
                ));
            }
            "map" => {
                line.arity(5)?;
                line.expect(3, "->")?;
                let base = base
                    .as_ref()
                    .ok_or_else(|| line.err(0, "expected `base:` first"))?;
                let pn = line.word(1)?;
                let (piece, map) = pieces
                    .iter_mut()
                    .find(|(p, _)| p.name == pn)
                    .ok_or_else(|| line.err(1, format!("unknown piece `{pn}`")))?;
                let u = line.word(2)?;
                let ui = piece
                    .points
                    .iter()
                    .position(|p| p == u)
                    .ok_or_else(|| line.err(2, format!("unknown point `{u}`")))?;
                let x = line.word(4)?;
                let xi = base
                    .iter()
                    .position(|p| p == x)
                    .ok_or_else(|| line.err(4, format!("unknown base point `{x}`")))?;
                set_once(&mut map[ui], xi, line)?;
            }
            _ => return Err(line.err(0, "expected `base:`, `piece` or `map`")),
        }
    }
    let base = base.ok_or_else(|| h.err(0, "cover has no `base:` line"))?;
    let pieces = pieces
        .into_iter()
        .map(|(mut p, map)| {
            let name = p.name.clone();
            let points = p.points.clone();
            p.map = complete(
                map,
                |i| format!("point `{}` of piece `{name}` is not mapped", points[i]),
                h,
            )?;
            Ok(p)
        })
        .collect::<Result<Vec<_>, TextError>>()?;
    Cover::new(base, pieces).map_err(|source| TextError::Descent {
        line: h.no,
        name: h.toks[1].text.to_string(),
        source,
    })
}

fn parse_bundle(b: &Block) -> Result<Bundle, TextError> {
    let h = &b.header;
    h.arity(2)?;
    let mut base: Option<Vec<String>> = None;
    let mut total = Vec::new();
    let mut proj = Vec::new();
    for line in &b.body {
        match line.word(0)? {
            "base:" => {
                if base.is_some() {
                    return Err(line.err(0, "base declared twice"));
                }
                base = Some(line.rest(1));
            }
            "elem" => {
                line.arity(4)?;
                line.expect(2, "->")?;
                let base = base
                    .as_ref()
                    .ok_or_else(|| line.err(0, "expected `base:` first"))?;
                let e = line.word(1)?.to_string();
                if total.contains(&e) {
                    return Err(line.err(1, format!("duplicate element `{e}`")));
                }
                let x = line.word(3)?;
                proj.push(
                    base.iter()
                        .position(|p| p == x)
                        .ok_or_else(|| line.err(3, format!("unknown base point `{x}`")))?,
                );
                total.push(e);
            }
            _ => return Err(line.err(0, "expected `base:` or `elem`")),
        }
    }
    let base = base.ok_or_else(|| h.err(0, "bundle has no `base:` line"))?;
    Ok(Bundle { base, total, proj })
}

/// Parses a standalone document into a fresh library.
pub fn parse(text: &str) -> Result<Library, TextError> {
    let mut lib = Library::new();
    lib.load_str(text)?;
    Ok(lib)
}

pub fn write_groupoid(g: &FinGroupoid) -> String {
    let mut out = format!("groupoid {}\nobjects:", g.name());
    for x in g.objects() {
        let _ = write!(out, " {}", g.object_name(x));
    }
    out.push('\n');
    for a in g.arrows() {
        let _ = writeln!(
            out,
            "arrow {} : {} -> {}",
            g.arrow_name(a),
            g.object_name(g.src(a)),
            g.object_name(g.tgt(a))
        );
    }
    for x in g.objects() {
        let _ = writeln!(out, "id {} = {}", g.object_name(x), g.arrow_name(g.unit(x)));
    }
    for a in g.arrows() {
        let _ = writeln!(out, "inv {} = {}", g.arrow_name(a), g.arrow_name(g.inv(a)));
    }
    for a in g.arrows() {
        for &f in g.incoming(g.src(a)) {
            let _ = writeln!(
                out,
                "comp {} {} = {}",
                g.arrow_name(a),
                g.arrow_name(f),
                g.arrow_name(g.compose(a, f))
            );
        }
    }
    out
}

pub fn write_functor(name: &str, f: &StrictArrow) -> String {
    let (d, c) = (f.dom(), f.cod());
    let mut out = format!("functor {name} : {} -> {}\n", d.name(), c.name());
    for x in d.objects() {
        let _ = writeln!(
            out,
            "obj {} -> {}",
            d.object_name(x),
            c.object_name(f.obj(x))
        );
    }
    for a in d.arrows() {
        let _ = writeln!(out, "arr {} -> {}", d.arrow_name(a), c.arrow_name(f.arr(a)));
    }
    out
}

pub fn write_bibundle(b: &Bibundle) -> String {
    let (h, g) = (b.source(), b.target());
    let mut out = format!(
        "bibundle {} : {} -| Z |- {}\ncarrier:",
        b.name(),
        h.name(),
        g.name()
    );
    for z in b.carrier() {
        let _ = write!(out, " {z}");
    }
    out.push('\n');
    let c = b.carrier();
    for z in 0..b.len() {
        let _ = writeln!(out, "p {} -> {}", c[z], h.object_name(b.p(z)));
    }
    for z in 0..b.len() {
        let _ = writeln!(out, "q {} -> {}", c[z], g.object_name(b.q(z)));
    }
    for z in 0..b.len() {
        for &eta in b.left().arrows_at(z) {
            let w = b.left().act(z, eta).unwrap();
            let _ = writeln!(out, "lact {} {} -> {}", h.arrow_name(eta), c[z], c[w]);
        }
    }
    for z in 0..b.len() {
        for &gamma in b.right().arrows_at(z) {
            let w = b.right().act(z, gamma).unwrap();
            let _ = writeln!(out, "ract {} {} -> {}", c[z], g.arrow_name(gamma), c[w]);
        }
    }
    out
}

pub fn write_cover(name: &str, c: &Cover) -> String {
    let mut out = format!("cover {name}\nbase: {}\n", c.base.join(" "));
    for p in &c.pieces {
        let _ = writeln!(out, "piece {} : {}", p.name, p.points.join(" "));
    }
    for p in &c.pieces {
        for (u, &x) in p.map.iter().enumerate() {
            let _ = writeln!(out, "map {} {} -> {}", p.name, p.points[u], c.base[x]);
        }
    }
    out
}

pub fn write_bundle(name: &str, a: &Bundle) -> String {
    let mut out = format!("bundle {name}\nbase: {}\n", a.base.join(" "));
    for (e, &x) in a.proj.iter().enumerate() {
        let _ = writeln!(out, "elem {} -> {}", a.total[e], a.base[x]);
    }
    out
}

/// Writes a datum; the cover must be written separately under `cover_name`.
pub fn write_datum(name: &str, cover_name: &str, d: &DescentDatum) -> String {
    let mut out = format!("datum {name} over {cover_name}\n");
    let pieces = &d.cover.pieces;
    for (i, f) in d.fibers.iter().enumerate() {
        for (e, &u) in f.proj.iter().enumerate() {
            let _ = writeln!(
                out,
                "elem {} {} -> {}",
                pieces[i].name, f.total[e], pieces[i].points[u]
            );
        }
    }
    for (&(i, j), t) in &d.transitions {
        for (&(a, v), &b) in t {
            let _ = writeln!(
                out,
                "trans {} {} {} @ {} -> {}",
                pieces[i].name,
                pieces[j].name,
                d.fibers[i].total[a],
                pieces[j].points[v],
                d.fibers[j].total[b]
            );
        }
    }
    out
}

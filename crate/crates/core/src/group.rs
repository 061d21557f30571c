//! Finite groups given by explicit multiplication tables.
//!
//! Elements are indices `0..order`. `mul(a, b)` is the composite "b then a",
//! matching the groupoid composition convention used throughout the crate.
//! Isomorphism testing is brute force over generating tuples, which is
//! adequate for the small isotropy groups this crate handles.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group table has {found} entries, expected {expected}")]
    WrongSize { expected: usize, found: usize },
    #[error("table entry {0} is out of range")]
    OutOfRange(usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("the empty set is not a group")]
    Empty,
}

/// A finite group stored as a dense multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FinGroup {
    /// Validates a row-major table, `table[a * n + b] = a * b`.
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if table.len() != order * order {
            return Err(GroupError::WrongSize {
                expected: order * order,
                found: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(GroupError::OutOfRange(bad));
        }
        let m = |a: usize, b: usize| table[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| m(e, a) == a && m(a, e) == a))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| m(a, b) == identity && m(b, a) == identity)
                .ok_or(GroupError::NoInverse(a))?;
            inverse.push(inv);
        }
        for a in 0..order {
            for b in 0..order {
                let ab = m(a, b);
                for c in 0..order {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(GroupError::NonAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FinGroup {
            order,
            table,
            identity,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Z/n with element `k` standing for the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::from_table(n, table).expect("cyclic table is a group")
    }

    /// Dihedral group of order `2n`: elements `r^k s^j` at index `2k + j`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0);
        Self::semidirect_like(n, |k, j, l, m| {
            // r^k s^j r^l s^m = r^(k + (-1)^j l) s^(j+m)
            let rot = if j == 0 { k + l } else { k + n - l };
            (rot % n, (j + m) % 2)
        })
    }

    /// Dicyclic group of order `4n` (`n = 2` gives the quaternion group).
    pub fn dicyclic(n: usize) -> Self {
        assert!(n > 0);
        let m2 = 2 * n;
        Self::semidirect_like(m2, |k, j, l, m| {
            // a^k x^j a^l x^m, with x a = a^-1 x and x^2 = a^n.
            let rot = if j == 0 { k + l } else { k + m2 - l };
            let pow = j + m;
            if pow == 2 {
                ((rot + n) % m2, 0)
            } else {
                (rot % m2, pow)
            }
        })
    }

    fn semidirect_like(
        n: usize,
        mul: impl Fn(usize, usize, usize, usize) -> (usize, usize),
    ) -> Self {
        let order = 2 * n;
        let mut table = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                let (k, j) = (a / 2, a % 2);
                let (l, m) = (b / 2, b % 2);
                let (r, s) = mul(k, j, l, m);
                table[a * order + b] = 2 * r + s;
            }
        }
        Self::from_table(order, table).expect("presentation yields a group")
    }

    /// The group generated by permutations of `0..degree`, composed as
    /// functions (`(p * q)(i) = p(q(i))`). The identity is element 0.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Self {
        Self::permutation_closure(degree, generators).0
    }

    /// Like [`FinGroup::from_permutations`], also returning each element as
    /// a permutation, which doubles as a left action table on `0..degree`.
    pub fn permutation_closure(
        degree: usize,
        generators: &[Vec<usize>],
    ) -> (Self, Vec<Vec<usize>>) {
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let next: Vec<usize> = (0..degree).map(|x| g[elems[i][x]]).collect();
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(next);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = (0..degree).map(|x| elems[a][elems[b][x]]).collect();
                table[a * n + b] = index[&prod];
            }
        }
        let group = Self::from_table(n, table).expect("permutation closure is a group");
        (group, elems)
    }

    pub fn symmetric(n: usize) -> Self {
        if n < 2 {
            return Self::trivial();
        }
        let swap: Vec<usize> = (0..n).map(|i| if i < 2 { 1 - i } else { i }).collect();
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_permutations(n, &[swap, cycle])
    }

    pub fn alternating(n: usize) -> Self {
        if n < 3 {
            return Self::trivial();
        }
        let gens: Vec<Vec<usize>> = (2..n)
            .map(|k| {
                (0..n)
                    .map(|i| match i {
                        0 => 1,
                        1 => k,
                        _ if i == k => 0,
                        _ => i,
                    })
                    .collect()
            })
            .collect();
        Self::from_permutations(n, &gens)
    }

    pub fn direct_product(a: &FinGroup, b: &FinGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (x1, x2) = (x / nb, x % nb);
                let (y1, y2) = (y / nb, y % nb);
                table[x * n + y] = a.mul(x1, y1) * nb + b.mul(x2, y2);
            }
        }
        Self::from_table(n, table).expect("product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    /// Breadth-first enumeration of the subgroup generated by `gens`,
    /// together with the (parent, generator) edge that discovered each
    /// element. The enumeration commutes with isomorphisms, which is what
    /// the isomorphism search and the canonical form rely on.
    fn word_order(&self, gens: &[usize]) -> (Vec<usize>, Vec<Option<(usize, usize)>>) {
        let mut seen = vec![false; self.order];
        let mut order = vec![self.identity];
        let mut parent = vec![None];
        seen[self.identity] = true;
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            for (gi, &g) in gens.iter().enumerate() {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                    parent.push(Some((head, gi)));
                }
            }
            head += 1;
        }
        (order, parent)
    }

    fn generates(&self, gens: &[usize]) -> bool {
        self.word_order(gens).0.len() == self.order
    }

    /// The lexicographically first generating tuple of minimum length.
    pub fn minimal_generators(&self) -> Vec<usize> {
        if self.order == 1 {
            return Vec::new();
        }
        for d in 1..=self.order {
            let mut found = None;
            for_each_tuple(self.order, d, |t| {
                if self.generates(t) {
                    found = Some(t.to_vec());
                    false
                } else {
                    true
                }
            });
            if let Some(t) = found {
                return t;
            }
        }
        unreachable!("the whole group generates itself")
    }

    /// Finds an isomorphism `self -> other`, returned as the image of each
    /// element, by mapping a minimal generating tuple onto every candidate
    /// tuple of matching element orders.
    pub fn find_isomorphism(&self, other: &FinGroup) -> Option<Vec<usize>> {
        if self.order != other.order || self.order_profile() != other.order_profile() {
            return None;
        }
        let gens = self.minimal_generators();
        let gen_orders: Vec<usize> = gens.iter().map(|&g| self.element_order(g)).collect();
        let (order, parent) = self.word_order(&gens);
        let mut result = None;
        for_each_tuple(other.order, gens.len(), |images| {
            if images
                .iter()
                .zip(&gen_orders)
                .any(|(&h, &o)| other.element_order(h) != o)
            {
                return true;
            }
            let mut map = vec![usize::MAX; self.order];
            let mut img_by_pos = vec![other.identity; order.len()];
            for pos in 0..order.len() {
                let img = match parent[pos] {
                    None => other.identity,
                    Some((pp, gi)) => other.mul(img_by_pos[pp], images[gi]),
                };
                img_by_pos[pos] = img;
                map[order[pos]] = img;
            }
            if is_isomorphism(self, other, &map) {
                result = Some(map);
                false
            } else {
                true
            }
        });
        result
    }

    pub fn is_isomorphic(&self, other: &FinGroup) -> bool {
        self.find_isomorphism(other).is_some()
    }

    /// A relabelled multiplication table that is equal for two groups iff
    /// they are isomorphic: the minimum, over all minimum-length generating
    /// tuples, of the table in the induced breadth-first labelling.
    pub fn canonical_table(&self) -> Vec<usize> {
        let n = self.order;
        if n == 1 {
            return vec![0];
        }
        let d = self.minimal_generators().len();
        let mut best: Option<Vec<usize>> = None;
        let mut pos = vec![0usize; n];
        let mut candidate = vec![0usize; n * n];
        for_each_tuple(n, d, |gens| {
            let (order, _) = self.word_order(gens);
            if order.len() != n {
                return true;
            }
            for (i, &e) in order.iter().enumerate() {
                pos[e] = i;
            }
            // Build row by row and abandon as soon as we exceed the best.
            let mut less = best.is_none();
            for i in 0..n {
                for j in 0..n {
                    let v = pos[self.mul(order[i], order[j])];
                    candidate[i * n + j] = v;
                    if !less {
                        let b = best.as_ref().unwrap()[i * n + j];
                        if v > b {
                            return true;
                        }
                        if v < b {
                            less = true;
                        }
                    }
                }
            }
            if less {
                best = Some(candidate.clone());
            }
            true
        });
        best.expect("some tuple generates")
    }

    /// Canonical table rendered as text: rows separated by `;`, entries by `,`.
    pub fn canonical_string(&self) -> String {
        let n = self.order;
        let table = self.canonical_table();
        table
            .chunks(n)
            .map(|row| {
                row.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Relabels elements by `perm` (old index -> new index).
    pub fn relabel(&self, perm: &[usize]) -> FinGroup {
        let n = self.order;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        FinGroup::from_table(n, table).expect("relabelling preserves group axioms")
    }
}

fn is_isomorphism(a: &FinGroup, b: &FinGroup, map: &[usize]) -> bool {
    let mut hit = vec![false; b.order];
    for &x in map {
        if x >= b.order || hit[x] {
            return false;
        }
        hit[x] = true;
    }
    (0..a.order).all(|x| (0..a.order).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])))
}

/// Visits every tuple in `0..n` of length `d` in lexicographic order until
/// the callback returns `false`.
fn for_each_tuple(n: usize, d: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut t = vec![0usize; d];
    loop {
        if !f(&t) {
            return;
        }
        let mut i = d;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}

/// One representative of every isomorphism class of groups of order at most
/// 12, with a short label.
pub fn small_groups_up_to_12() -> Vec<(&'static str, FinGroup)> {
    let c = FinGroup::cyclic;
    let x = FinGroup::direct_product;
    vec![
        ("C1", c(1)),
        ("C2", c(2)),
        ("C3", c(3)),
        ("C4", c(4)),
        ("C2xC2", x(&c(2), &c(2))),
        ("C5", c(5)),
        ("C6", c(6)),
        ("S3", FinGroup::symmetric(3)),
        ("C7", c(7)),
        ("C8", c(8)),
        ("C4xC2", x(&c(4), &c(2))),
        ("C2xC2xC2", x(&x(&c(2), &c(2)), &c(2))),
        ("D4", FinGroup::dihedral(4)),
        ("Q8", FinGroup::dicyclic(2)),
        ("C9", c(9)),
        ("C3xC3", x(&c(3), &c(3))),
        ("C10", c(10)),
        ("D5", FinGroup::dihedral(5)),
        ("C11", c(11)),
        ("C12", c(12)),
        ("C6xC2", x(&c(6), &c(2))),
        ("A4", FinGroup::alternating(4)),
        ("D6", FinGroup::dihedral(6)),
        ("Dic3", FinGroup::dicyclic(3)),
    ]
}

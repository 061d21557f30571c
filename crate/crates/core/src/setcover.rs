//! Exact minimum set cover by branch and bound.

use fixedbitset::FixedBitSet;

/// Indices of a minimum-cardinality subfamily of `sets` covering
/// `universe`, or `None` when no subfamily covers it. Ties are broken
/// towards the lexicographically least index list found first by the
/// deterministic search order.
pub fn min_set_cover(universe: &FixedBitSet, sets: &[FixedBitSet]) -> Option<Vec<usize>> {
    let mut reachable = FixedBitSet::with_capacity(universe.len());
    for s in sets {
        reachable.union_with(s);
    }
    if !universe.is_subset(&reachable) {
        return None;
    }
    let mut best = greedy(universe, sets);
    let mut chosen = Vec::new();
    let mut uncovered = universe.clone();
    branch(&mut uncovered, sets, &mut chosen, &mut best);
    best.sort_unstable();
    Some(best)
}

fn greedy(universe: &FixedBitSet, sets: &[FixedBitSet]) -> Vec<usize> {
    let mut uncovered = universe.clone();
    let mut picked = Vec::new();
    while !uncovered.is_clear() {
        let (i, _) = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.intersection(&uncovered).count()))
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("coverable universe");
        uncovered.difference_with(&sets[i]);
        picked.push(i);
    }
    picked
}

fn branch(
    uncovered: &mut FixedBitSet,
    sets: &[FixedBitSet],
    chosen: &mut Vec<usize>,
    best: &mut Vec<usize>,
) {
    if uncovered.is_clear() {
        if chosen.len() < best.len() {
            *best = chosen.clone();
        }
        return;
    }
    let largest = sets
        .iter()
        .map(|s| s.intersection(uncovered).count())
        .max()
        .unwrap_or(0);
    if largest == 0 {
        return;
    }
    let remaining = uncovered.count_ones(..);
    let lower = chosen.len() + remaining.div_ceil(largest);
    if lower >= best.len() {
        return;
    }
    // Branch on the element with the fewest covering sets.
    let pivot = uncovered
        .ones()
        .min_by_key(|&e| sets.iter().filter(|s| s.contains(e)).count())
        .unwrap();
    let mut options: Vec<usize> = (0..sets.len())
        .filter(|&i| sets[i].contains(pivot))
        .collect();
    options.sort_by_key(|&i| std::cmp::Reverse(sets[i].intersection(uncovered).count()));
    for i in options {
        let saved = uncovered.clone();
        uncovered.difference_with(&sets[i]);
        chosen.push(i);
        branch(uncovered, sets, chosen, best);
        chosen.pop();
        *uncovered = saved;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(n: usize, ones: &[usize]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(n);
        for &i in ones {
            b.insert(i);
        }
        b
    }

    fn brute(universe: &FixedBitSet, sets: &[FixedBitSet]) -> Option<usize> {
        (0u32..1 << sets.len())
            .filter(|mask| {
                let mut u = FixedBitSet::with_capacity(universe.len());
                for (i, s) in sets.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        u.union_with(s);
                    }
                }
                universe.is_subset(&u)
            })
            .map(|m| m.count_ones() as usize)
            .min()
    }

    #[test]
    fn greedy_is_not_optimal_here() {
        // Greedy takes the 4-element middle set first and then needs 3.
        let u = bits(6, &[0, 1, 2, 3, 4, 5]);
        let sets = vec![
            bits(6, &[0, 1, 2]),
            bits(6, &[3, 4, 5]),
            bits(6, &[1, 2, 3, 4]),
            bits(6, &[0]),
            bits(6, &[5]),
        ];
        assert_eq!(greedy(&u, &sets).len(), 3);
        assert_eq!(min_set_cover(&u, &sets), Some(vec![0, 1]));
    }

    #[test]
    fn uncoverable() {
        let u = bits(3, &[0, 1, 2]);
        assert_eq!(min_set_cover(&u, &[bits(3, &[0, 1])]), None);
        assert_eq!(
            min_set_cover(&FixedBitSet::with_capacity(3), &[]),
            Some(vec![])
        );
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut state = 0x2545_f491_u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let n = 1 + (next() % 8) as usize;
            let m = (next() % 9) as usize;
            let sets: Vec<FixedBitSet> = (0..m)
                .map(|_| {
                    let mask = next();
                    bits(
                        n,
                        &(0..n).filter(|i| mask & (1 << i) != 0).collect::<Vec<_>>(),
                    )
                })
                .collect();
            let u = bits(n, &(0..n).collect::<Vec<_>>());
            let fast = min_set_cover(&u, &sets);
            assert_eq!(fast.as_ref().map(Vec::len), brute(&u, &sets));
            if let Some(cover) = fast {
                let mut got = FixedBitSet::with_capacity(n);
                for i in cover {
                    got.union_with(&sets[i]);
                }
                assert!(u.is_subset(&got));
            }
        }
    }
}

//! Skeletal canonical forms: one isotropy group per orbit.

use std::fmt;

use sha2::{Digest, Sha256};

use crate::group::FinGroup;
use crate::groupoid::{build, FinGroupoid};
use crate::homotopy::{check_cap, orbit_data, HomotopyError, DEFAULT_ISOTROPY_CAP};

/// One orbit of a skeleton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonEntry {
    /// Least object id of the orbit in string order, so that relabelling
    /// indices does not change it.
    pub base: String,
    pub orbit_size: usize,
    /// Isotropy group in canonical labelling.
    pub group: FinGroup,
    /// Canonical table string of the group.
    pub key: String,
}

impl SkeletonEntry {
    /// First 16 hex digits of the SHA-256 of the canonical table string.
    pub fn hash(&self) -> String {
        Sha256::digest(self.key.as_bytes())
            .iter()
            .take(8)
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

/// Orbit entries ordered by orbit size, then canonical group string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    pub entries: Vec<SkeletonEntry>,
}

impl Skeleton {
    /// Isotropy keys in sorted order, forgetting orbit sizes.
    pub fn group_keys(&self) -> Vec<&str> {
        let mut keys: Vec<&str> = self.entries.iter().map(|e| e.key.as_str()).collect();
        keys.sort();
        keys
    }

    /// The skeletal groupoid: a disjoint union of point groupoids.
    pub fn to_groupoid(&self) -> FinGroupoid {
        let points: Vec<FinGroupoid> = self
            .entries
            .iter()
            .map(|e| build::point(&e.group))
            .collect();
        let refs: Vec<&FinGroupoid> = points.iter().collect();
        build::disjoint_union(&refs).with_name("skeleton")
    }
}

impl fmt::Display for Skeleton {
    /// One line per orbit: `orbit <size> group <hash> <table>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "orbit {} group {} {}", e.orbit_size, e.hash(), e.key)?;
        }
        Ok(())
    }
}

pub fn skeletonize(g: &FinGroupoid) -> Result<Skeleton, HomotopyError> {
    skeletonize_with_cap(g, DEFAULT_ISOTROPY_CAP)
}

pub fn skeletonize_with_cap(g: &FinGroupoid, cap: usize) -> Result<Skeleton, HomotopyError> {
    check_cap(g, cap)?;
    let (orbits, _) = orbit_data(g);
    let mut entries: Vec<SkeletonEntry> = orbits
        .into_iter()
        .map(|o| {
            let table = o.group.canonical_table();
            let group = FinGroup::from_table(o.group.order(), table).expect("canonical table");
            SkeletonEntry {
                base: o
                    .members
                    .iter()
                    .map(|&x| g.object_name(x))
                    .min()
                    .expect("orbits are nonempty")
                    .to_string(),
                orbit_size: o.members.len(),
                key: o.group.canonical_string(),
                group,
            }
        })
        .collect();
    entries.sort_by(|a, b| (a.orbit_size, &a.key, &a.base).cmp(&(b.orbit_size, &b.key, &b.base)));
    Ok(Skeleton { entries })
}

/// Whether the isotropy groups of `a` and `b` match up to isomorphism as
/// multisets, decided by pairwise isomorphism search rather than by the
/// canonical keys.
pub fn skeleton_equal(a: &Skeleton, b: &Skeleton) -> bool {
    if a.entries.len() != b.entries.len() {
        return false;
    }
    let mut used = vec![false; b.entries.len()];
    for e in &a.entries {
        // Isomorphism is an equivalence relation, so greedy matching suffices.
        let hit = b
            .entries
            .iter()
            .enumerate()
            .position(|(i, f)| !used[i] && e.group.is_isomorphic(&f.group));
        match hit {
            Some(i) => used[i] = true,
            None => return false,
        }
    }
    true
}

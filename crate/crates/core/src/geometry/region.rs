use serde::{Deserialize, Serialize};

/// A set of qubit indices, kept sorted and free of duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct Region(Vec<usize>);

impl From<Vec<usize>> for Region {
    fn from(v: Vec<usize>) -> Self {
        Region::from_unsorted(v)
    }
}

impl From<Region> for Vec<usize> {
    fn from(r: Region) -> Self {
        r.0
    }
}

impl FromIterator<usize> for Region {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Region::from_unsorted(iter.into_iter().collect())
    }
}

impl Region {
    pub fn from_unsorted(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        v.dedup();
        Region(v)
    }

    /// Caller guarantees `v` is strictly increasing.
    pub fn from_sorted(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Region(v)
    }

    pub fn full(n: usize) -> Self {
        Region((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, q: usize) -> bool {
        self.0.binary_search(&q).is_ok()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn union(&self, other: &Region) -> Region {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Region::from_unsorted(v)
    }

    pub fn intersection(&self, other: &Region) -> Region {
        Region(self.0.iter().copied().filter(|&q| other.contains(q)).collect())
    }

    pub fn difference(&self, other: &Region) -> Region {
        Region(self.0.iter().copied().filter(|&q| !other.contains(q)).collect())
    }

    pub fn is_subset(&self, other: &Region) -> bool {
        self.0.iter().all(|&q| other.contains(q))
    }

    pub fn is_disjoint(&self, other: &Region) -> bool {
        self.0.iter().all(|&q| !other.contains(q))
    }

    /// Complement inside `0..n`.
    pub fn complement(&self, n: usize) -> Region {
        Region((0..n).filter(|&q| !self.contains(q)).collect())
    }
}

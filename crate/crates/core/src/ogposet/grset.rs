use std::fmt;

use super::El;

/// A graded set of elements: one strictly sorted position list per dimension.
/// Trailing empty strata are never stored, so the number of strata is always
/// `dim + 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrSet {
    strata: Vec<Vec<usize>>,
}

impl GrSet {
    pub fn new() -> Self {
        GrSet { strata: Vec::new() }
    }

    pub fn singleton(el: El) -> Self {
        let mut set = GrSet::new();
        set.insert(el);
        set
    }

    /// Builds a graded set from one position list per dimension. The lists
    /// are sorted and deduplicated.
    pub fn from_strata(strata: Vec<Vec<usize>>) -> Self {
        let mut strata = strata;
        for stratum in &mut strata {
            stratum.sort_unstable();
            stratum.dedup();
        }
        let mut set = GrSet { strata };
        set.trim();
        set
    }

    /// A set concentrated in a single dimension.
    pub fn from_stratum(dim: usize, positions: Vec<usize>) -> Self {
        let mut strata = vec![Vec::new(); dim + 1];
        strata[dim] = positions;
        GrSet::from_strata(strata)
    }

    fn trim(&mut self) {
        while matches!(self.strata.last(), Some(s) if s.is_empty()) {
            self.strata.pop();
        }
    }

    /// Highest non-empty dimension, or −1 for the empty set.
    pub fn dim(&self) -> isize {
        self.strata.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn len(&self) -> usize {
        self.strata.iter().map(Vec::len).sum()
    }

    pub fn stratum(&self, dim: usize) -> &[usize] {
        self.strata.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn strata(&self) -> &[Vec<usize>] {
        &self.strata
    }

    pub fn contains(&self, el: El) -> bool {
        self.stratum(el.dim).binary_search(&el.pos).is_ok()
    }

    /// Inserts an element; returns `false` if it was already present.
    pub fn insert(&mut self, el: El) -> bool {
        if self.strata.len() <= el.dim {
            self.strata.resize(el.dim + 1, Vec::new());
        }
        let stratum = &mut self.strata[el.dim];
        match stratum.binary_search(&el.pos) {
            Ok(_) => false,
            Err(i) => {
                stratum.insert(i, el.pos);
                true
            }
        }
    }

    pub fn remove(&mut self, el: El) -> bool {
        let Some(stratum) = self.strata.get_mut(el.dim) else {
            return false;
        };
        match stratum.binary_search(&el.pos) {
            Ok(i) => {
                stratum.remove(i);
                self.trim();
                true
            }
            Err(_) => false,
        }
    }

    /// Elements in ascending `(dim, pos)` order.
    pub fn iter(&self) -> impl Iterator<Item = El> + '_ {
        self.strata
            .iter()
            .enumerate()
            .flat_map(|(dim, s)| s.iter().map(move |&pos| El::new(dim, pos)))
    }

    pub fn union(&self, other: &GrSet) -> GrSet {
        self.zip_with(other, merge_union)
    }

    pub fn intersection(&self, other: &GrSet) -> GrSet {
        self.zip_with(other, merge_intersection)
    }

    pub fn difference(&self, other: &GrSet) -> GrSet {
        self.zip_with(other, merge_difference)
    }

    pub fn is_subset(&self, other: &GrSet) -> bool {
        self.strata
            .iter()
            .enumerate()
            .all(|(dim, s)| is_sorted_subset(s, other.stratum(dim)))
    }

    fn zip_with(&self, other: &GrSet, op: fn(&[usize], &[usize]) -> Vec<usize>) -> GrSet {
        let n = self.strata.len().max(other.strata.len());
        let strata = (0..n).map(|d| op(self.stratum(d), other.stratum(d))).collect();
        let mut set = GrSet { strata };
        set.trim();
        set
    }
}

impl FromIterator<El> for GrSet {
    fn from_iter<I: IntoIterator<Item = El>>(iter: I) -> Self {
        let mut strata: Vec<Vec<usize>> = Vec::new();
        for el in iter {
            if strata.len() <= el.dim {
                strata.resize(el.dim + 1, Vec::new());
            }
            strata[el.dim].push(el.pos);
        }
        GrSet::from_strata(strata)
    }
}

impl fmt::Display for GrSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, el) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{el}")?;
        }
        write!(f, "}}")
    }
}

fn merge_union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn merge_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn merge_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j >= b.len() || b[j] != x {
            out.push(x);
        }
    }
    out
}

fn is_sorted_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j >= b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_tracks_highest_stratum() {
        let mut set = GrSet::new();
        assert_eq!(set.dim(), -1);
        set.insert(El::new(2, 0));
        assert_eq!(set.dim(), 2);
        assert_eq!(set.strata().len(), 3);
        set.remove(El::new(2, 0));
        assert_eq!(set.dim(), -1);
        assert!(set.is_empty());
    }

    #[test]
    fn set_algebra() {
        let a: GrSet = [El::new(0, 0), El::new(0, 2), El::new(1, 1)].into_iter().collect();
        let b: GrSet = [El::new(0, 2), El::new(1, 1), El::new(1, 3)].into_iter().collect();
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![El::new(0, 2), El::new(1, 1)]);
        assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), vec![El::new(0, 0)]);
        assert_eq!(a.union(&b).len(), 4);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(!a.is_subset(&b));
        // difference removing the whole top stratum trims it
        let top = GrSet::singleton(El::new(3, 0));
        assert_eq!(top.difference(&top).dim(), -1);
    }

    #[test]
    fn insertion_keeps_strata_sorted() {
        let mut set = GrSet::new();
        for pos in [5, 1, 3, 1] {
            set.insert(El::new(0, pos));
        }
        assert_eq!(set.stratum(0), &[1, 3, 5]);
        assert!(set.contains(El::new(0, 3)));
        assert!(!set.contains(El::new(0, 2)));
        assert!(!set.contains(El::new(4, 0)));
    }
}

//! Permutations of strand positions.
//!
//! A [`Permutation`] of size `n` maps the starting position of a strand to its
//! final position. Composition follows the braid reading order: words are read
//! left to right and `mu(xy)` applies `mu(x)` first. This is the only place the
//! convention is fixed; [`Permutation::then`] implements it.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::BraidError;

/// A bijection of `{1, ..., n}`, stored zero-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// The order-reversing permutation `i -> n + 1 - i`, the permutation of the Garside element.
    pub fn reversal(n: usize) -> Self {
        Permutation {
            images: (0..n).rev().collect(),
        }
    }

    /// The transposition of the adjacent positions `i` and `i + 1` (one-based `i`).
    pub fn adjacent(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        p
    }

    /// Builds a permutation from one-based images.
    pub fn from_images(images: &[usize]) -> Result<Self, BraidError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(BraidError::InvalidPermutation(images.to_vec()));
            }
            seen[v - 1] = true;
            zero_based.push(v - 1);
        }
        Ok(Permutation { images: zero_based })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v)
        });
        Permutation { images }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// One-based images `[pi(1), ..., pi(n)]`.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    /// Zero-based image of a zero-based point.
    #[inline]
    pub fn apply0(&self, i: usize) -> usize {
        self.images[i]
    }

    /// One-based image of a one-based point.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// `self` followed by `other`: the permutation of the braid product `x * y`
    /// when `self = mu(x)` and `other = mu(y)`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.size(), other.size(), "permutation sizes differ");
        Permutation {
            images: self.images.iter().map(|&v| other.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Number of pairs `i < j` with `pi(i) > pi(j)`.
    pub fn inversions(&self) -> usize {
        let n = self.size();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Cycles as zero-based point lists, each starting at its smallest point,
    /// ordered by that smallest point.
    pub fn cycles0(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Cycles with one-based points.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles0()
            .into_iter()
            .map(|c| c.into_iter().map(|i| i + 1).collect())
            .collect()
    }

    /// True iff the permutation is a single cycle through all `n` points.
    pub fn is_full_cycle(&self) -> bool {
        self.size() > 0 && self.cycles0().len() == 1
    }

    /// Positions `i` (one-based) where the strands starting at `i` and `i + 1` cross
    /// in the permutation braid of `self`, i.e. the generators that left-divide it.
    pub(crate) fn starting_set(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.size().saturating_sub(1))
            .filter(move |&i| self.images[i] > self.images[i + 1])
            .map(|i| i + 1)
    }

    /// Generators (one-based) that right-divide the permutation braid of `self`.
    pub(crate) fn finishing_set(&self) -> Vec<usize> {
        let inv = self.inverse();
        inv.starting_set().collect()
    }

    /// Swap the images of positions `i` and `i + 1` after applying `self`:
    /// the permutation of `x * sigma_i` when `self = mu(x)`.
    pub(crate) fn then_adjacent(&mut self, i: usize) {
        for v in self.images.iter_mut() {
            if *v == i - 1 {
                *v = i;
            } else if *v == i {
                *v = i - 1;
            }
        }
    }

    /// The permutation of `sigma_i * x` when `self = mu(x)`.
    pub(crate) fn adjacent_then(&mut self, i: usize) {
        self.images.swap(i - 1, i);
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = BraidError;

    fn try_from(images: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::from_images(&images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "]")
    }
}

/// All permutations of `{1..n}` in lexicographic order of their images.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation {
            images: current.clone(),
        });
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Permutation::from_images(&[1, 1, 2]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(Permutation::from_images(&[1, 4, 2]).is_err());
        assert!(Permutation::from_images(&[2, 3, 1]).is_ok());
    }

    #[test]
    fn then_applies_left_factor_first() {
        // (1 2) then (2 3): 1 -> 2 -> 3
        let a = Permutation::adjacent(3, 1);
        let b = Permutation::adjacent(3, 2);
        assert_eq!(a.then(&b).images(), vec![3, 1, 2]);
        assert_eq!(b.then(&a).images(), vec![2, 3, 1]);
    }

    #[test]
    fn inversions_of_reversal() {
        for n in 1..8 {
            assert_eq!(Permutation::reversal(n).inversions(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn enumerates_factorial_many() {
        assert_eq!(all_permutations(0).len(), 1);
        assert_eq!(all_permutations(4).len(), 24);
        let all = all_permutations(5);
        assert_eq!(all.len(), 120);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 120);
    }

    #[test]
    fn cycles_partition_points() {
        let p = Permutation::from_images(&[2, 1, 4, 5, 3]).unwrap();
        assert_eq!(p.cycles(), vec![vec![1, 2], vec![3, 4, 5]]);
        assert!(!p.is_full_cycle());
        assert!(Permutation::from_images(&[2, 3, 1])
            .unwrap()
            .is_full_cycle());
    }
}

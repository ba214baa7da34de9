use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::Rational;

/// Sparse vector of rationals indexed by `usize`. Zero entries are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: BTreeMap<usize, Rational>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        let mut v = Self::new();
        v.entries.insert(i, Rational::one());
        v
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, Rational)>>(pairs: I) -> Self {
        let mut v = Self::new();
        for (i, x) in pairs {
            v.add_at(i, &x);
        }
        v
    }

    /// Builds a vector from a dense slice of integers.
    pub fn from_i64(values: &[i64]) -> Self {
        Self::from_pairs(
            values
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(i, x)| (i, super::int(*x))),
        )
    }

    pub fn get(&self, i: usize) -> Option<&Rational> {
        self.entries.get(&i)
    }

    pub fn value(&self, i: usize) -> Rational {
        self.entries.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, x: Rational) {
        if x.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, x);
        }
    }

    /// `self[i] += x`
    pub fn add_at(&mut self, i: usize, x: &Rational) {
        if x.is_zero() {
            return;
        }
        match self.entries.get_mut(&i) {
            Some(y) => {
                *y += x;
                if y.is_zero() {
                    self.entries.remove(&i);
                }
            }
            None => {
                self.entries.insert(i, x.clone());
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Rational, other: &SparseVec) {
        if c.is_zero() {
            return;
        }
        for (i, x) in &other.entries {
            self.add_at(*i, &(c * x));
        }
    }

    pub fn scale(&mut self, c: &Rational) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for x in self.entries.values_mut() {
            *x *= c;
        }
    }

    pub fn scaled(&self, c: &Rational) -> SparseVec {
        let mut v = self.clone();
        v.scale(c);
        v
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        let (small, large) = if self.nnz() <= other.nnz() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Rational::zero();
        for (i, x) in &small.entries {
            if let Some(y) = large.entries.get(i) {
                acc += x * y;
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Largest index with a nonzero entry.
    pub fn last(&self) -> Option<(usize, &Rational)> {
        self.entries.iter().next_back().map(|(i, x)| (*i, x))
    }

    /// Smallest index with a nonzero entry.
    pub fn first(&self) -> Option<(usize, &Rational)> {
        self.entries.iter().next().map(|(i, x)| (*i, x))
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (usize, &Rational)> + '_ {
        self.entries.iter().map(|(i, x)| (*i, x))
    }

    pub fn indices(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    /// Relabels indices through `f`, summing collisions; entries mapped to
    /// `None` are dropped.
    pub fn remap<F: FnMut(usize) -> Option<usize>>(&self, mut f: F) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, x) in &self.entries {
            if let Some(j) = f(*i) {
                out.add_at(j, x);
            }
        }
        out
    }

    pub fn to_dense(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(i, x)| (i, x.to_string())))
            .finish()
    }
}

impl FromIterator<(usize, Rational)> for SparseVec {
    fn from_iter<I: IntoIterator<Item = (usize, Rational)>>(iter: I) -> Self {
        Self::from_pairs(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;

    #[test]
    fn cancellation_removes_entries() {
        let mut a = SparseVec::from_i64(&[1, 2, 0, 3]);
        let b = SparseVec::from_i64(&[1, 0, 0, 3]);
        a.add_scaled(&int(-1), &b);
        assert_eq!(a, SparseVec::from_i64(&[0, 2]));
        assert_eq!(a.nnz(), 1);
        assert_eq!(a.last().map(|(i, _)| i), Some(1));
    }

    #[test]
    fn dot_product() {
        let a = SparseVec::from_i64(&[1, 2, 0, 3]);
        let b = SparseVec::from_i64(&[4, 0, 5, -1]);
        assert_eq!(a.dot(&b), int(1));
    }
}

//! Column reduction by lowest (largest-index) pivot.
//!
//! This is the workhorse behind kernels, images and homology: columns are
//! reduced left to right against previously reduced columns sharing the same
//! pivot, while a second vector records which combination of the original
//! columns produced each reduced column.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{Rational, SparseVec};

/// Result of reducing a list of columns.
#[derive(Clone, Debug)]
pub struct ColumnReduction {
    /// Reduced nonzero columns, normalised to have pivot entry 1. Their pivots
    /// are pairwise distinct, and together they span the column space.
    pub image: Vec<SparseVec>,
    /// For every reduced nonzero column, the index of the original column it
    /// came from.
    pub image_sources: Vec<usize>,
    /// Basis of the null space, as combinations of the original columns.
    /// The vector for original column `j` has its largest nonzero index at `j`.
    pub kernel: Vec<SparseVec>,
}

impl ColumnReduction {
    pub fn rank(&self) -> usize {
        self.image.len()
    }
}

/// Reduces `columns` by lowest pivots. When `track_kernel` is false the
/// combinations are not recorded and `kernel` is left empty (only its length
/// is meaningful through `columns.len() - rank`).
pub fn reduce_columns(columns: &[SparseVec], track_kernel: bool) -> ColumnReduction {
    reduce_columns_skipping(columns, track_kernel, |_| false)
}

/// As [`reduce_columns`], but columns with `skip(j)` true are left out
/// entirely: they contribute neither pivots nor kernel vectors.
pub fn reduce_columns_skipping<F: Fn(usize) -> bool>(
    columns: &[SparseVec],
    track_kernel: bool,
    skip: F,
) -> ColumnReduction {
    let mut pivots: HashMap<usize, usize> = HashMap::new();
    let mut image: Vec<SparseVec> = Vec::new();
    let mut image_sources = Vec::new();
    let mut combos: Vec<SparseVec> = Vec::new();
    let mut kernel = Vec::new();

    for (j, col) in columns.iter().enumerate() {
        if skip(j) {
            continue;
        }
        let mut r = col.clone();
        let mut v = if track_kernel {
            SparseVec::unit(j)
        } else {
            SparseVec::new()
        };
        while let Some((low, x)) = r.last() {
            let Some(&p) = pivots.get(&low) else { break };
            let c = -x.clone();
            r.add_scaled(&c, &image[p]);
            if track_kernel {
                v.add_scaled(&c, &combos[p]);
            }
        }
        match r.last() {
            None => {
                if track_kernel {
                    kernel.push(v);
                }
            }
            Some((low, x)) => {
                let inv = x.recip();
                r.scale(&inv);
                if track_kernel {
                    v.scale(&inv);
                }
                pivots.insert(low, image.len());
                image.push(r);
                image_sources.push(j);
                combos.push(v);
            }
        }
    }

    ColumnReduction {
        image,
        image_sources,
        kernel,
    }
}

/// Semi-echelon store of vectors with distinct lowest pivots, each carrying a
/// tag vector that is carried linearly through every reduction.
///
/// Used to present a quotient `Z / B`: boundaries go in with the zero tag and
/// each new cycle class goes in tagged with its coordinate unit vector. Reducing
/// any element of `Z` then reads off its class coordinates from the tags.
#[derive(Clone, Debug, Default)]
pub struct TaggedReducer {
    pivots: HashMap<usize, usize>,
    vectors: Vec<SparseVec>,
    tags: Vec<SparseVec>,
}

impl TaggedReducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Reduces `v` and returns the remainder and the accumulated tag of the
    /// vectors subtracted (so `v = remainder + Σ c_i stored_i` and the tag is
    /// `Σ c_i tag_i`).
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut r = v.clone();
        let mut tag = SparseVec::new();
        while let Some((low, x)) = r.last() {
            let Some(&p) = self.pivots.get(&low) else {
                break;
            };
            let c = x.clone();
            r.add_scaled(&-c.clone(), &self.vectors[p]);
            tag.add_scaled(&c, &self.tags[p]);
        }
        (r, tag)
    }

    /// Inserts `v` with tag `tag`. Returns false if `v` was already in the span.
    pub fn insert(&mut self, v: &SparseVec, tag: SparseVec) -> bool {
        let (mut r, acc) = self.reduce(v);
        let Some((low, x)) = r.last() else {
            return false;
        };
        let inv = x.recip();
        let mut t = tag;
        t.add_scaled(&-Rational::one(), &acc);
        r.scale(&inv);
        t.scale(&inv);
        self.pivots.insert(low, self.vectors.len());
        self.vectors.push(r);
        self.tags.push(t);
        true
    }

    /// Tag of an element of the span, or `None` if `v` is not in the span.
    pub fn tag_of(&self, v: &SparseVec) -> Option<SparseVec> {
        let (r, tag) = self.reduce(v);
        r.is_zero().then_some(tag)
    }

    /// Stored vectors with their tags, in insertion order.
    pub fn entries(&self) -> impl Iterator<Item = (&SparseVec, &SparseVec)> {
        self.vectors.iter().zip(self.tags.iter())
    }

    /// Solves for a functional supported on the pivot indices taking the value
    /// `target(tag)` on every stored vector. Because pivots are distinct and
    /// each stored vector vanishes above its pivot, back substitution in
    /// increasing pivot order determines it uniquely.
    pub fn dual_functional<F: Fn(&SparseVec) -> Rational>(&self, target: F) -> SparseVec {
        let mut order: Vec<(usize, usize)> = self.pivots.iter().map(|(l, p)| (*l, *p)).collect();
        order.sort_unstable();
        let mut phi = SparseVec::new();
        for (low, p) in order {
            let row = &self.vectors[p];
            let mut rhs = target(&self.tags[p]);
            for (i, x) in row.iter() {
                if i == low {
                    continue;
                }
                if let Some(y) = phi.get(i) {
                    rhs -= x * y;
                }
            }
            // pivot entries are normalised to 1
            debug_assert!(row.get(low).map(|x| x.is_one()).unwrap_or(false));
            if !rhs.is_zero() {
                phi.set(low, rhs);
            }
        }
        phi
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;

    #[test]
    fn kernel_of_single_row() {
        // [[1, 1]] as two columns (1) and (1)
        let cols = vec![SparseVec::from_i64(&[1]), SparseVec::from_i64(&[1])];
        let red = reduce_columns(&cols, true);
        assert_eq!(red.rank(), 1);
        assert_eq!(red.kernel, vec![SparseVec::from_i64(&[-1, 1])]);
    }

    #[test]
    fn tagged_quotient_coordinates() {
        // Z = Q^2, B = span(e0 + e1); quotient is 1-dimensional
        let mut red = TaggedReducer::new();
        assert!(red.insert(&SparseVec::from_i64(&[1, 1]), SparseVec::new()));
        assert!(red.insert(&SparseVec::from_i64(&[1, 0]), SparseVec::unit(0)));
        // e1 = (e0 + e1) - e0, so its class is -[e0]
        let t = red.tag_of(&SparseVec::from_i64(&[0, 1])).unwrap();
        assert_eq!(t, SparseVec::from_pairs([(0, int(-1))]));
        // functional vanishing on B and equal to 1 on e0
        let phi = red.dual_functional(|t| t.value(0));
        assert_eq!(phi.dot(&SparseVec::from_i64(&[1, 1])), int(0));
        assert_eq!(phi.dot(&SparseVec::from_i64(&[1, 0])), int(1));
    }
}

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{QMatrix, SparseVec};
use crate::error::{Error, Result};

/// Linear subspace of `Q^n` in canonical form.
///
/// The basis is fully reduced with respect to *largest* nonzero index: every
/// basis vector has entry 1 at its pivot (its last nonzero index), every other
/// basis vector is zero there, and vectors are sorted by pivot. Two subspaces
/// are equal iff their bases are identical, so `==` is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<SparseVec>,
}

/// Incremental builder for the canonical basis.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    fn reduce(&self, v: &mut SparseVec) {
        // Each stored row is zero at every other pivot, so one pass over the
        // pivot entries of `v` suffices.
        let hits: Vec<usize> = v.indices().filter(|i| self.rows.contains_key(i)).collect();
        for p in hits {
            if let Some(x) = v.get(p).cloned() {
                v.add_scaled(&-x, &self.rows[&p]);
            }
        }
    }

    fn insert(&mut self, mut v: SparseVec) -> bool {
        self.reduce(&mut v);
        let Some((p, x)) = v.last() else { return false };
        let inv = x.recip();
        v.scale(&inv);
        for row in self.rows.values_mut() {
            if let Some(y) = row.get(p).cloned() {
                row.add_scaled(&-y, &v);
            }
        }
        self.rows.insert(p, v);
        true
    }
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: (0..ambient_dim).map(SparseVec::unit).collect(),
        }
    }

    /// Span of arbitrary vectors. Panics if a vector has an entry outside the
    /// ambient dimension.
    pub fn span<I: IntoIterator<Item = SparseVec>>(ambient_dim: usize, vectors: I) -> Self {
        let mut ech = Echelon::default();
        for v in vectors {
            if let Some((i, _)) = v.last() {
                assert!(
                    i < ambient_dim,
                    "index {i} outside ambient dimension {ambient_dim}"
                );
            }
            ech.insert(v);
        }
        Self {
            ambient_dim,
            basis: ech.rows.into_values().collect(),
        }
    }

    /// Column span of a matrix.
    pub fn column_span(m: &QMatrix) -> Self {
        Self::span(m.rows(), m.columns().iter().cloned())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    /// Basis as the columns of an `ambient_dim × dim` matrix.
    pub fn basis_matrix(&self) -> QMatrix {
        QMatrix::from_columns(self.ambient_dim, self.basis.clone())
    }

    fn echelon(&self) -> Echelon {
        Echelon {
            rows: self
                .basis
                .iter()
                .map(|v| (v.last().expect("basis vectors are nonzero").0, v.clone()))
                .collect(),
        }
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &SparseVec) -> bool {
        let mut w = v.clone();
        self.echelon().reduce(&mut w);
        w.is_zero()
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v ∉ self`.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut coords = SparseVec::new();
        for (k, b) in self.basis.iter().enumerate() {
            let p = b.last().expect("nonzero").0;
            if let Some(x) = v.get(p) {
                coords.set(k, x.clone());
            }
        }
        let mut recon = SparseVec::new();
        for (k, x) in coords.iter() {
            recon.add_scaled(x, &self.basis[k]);
        }
        (recon == *v).then_some(coords)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut ech = self.echelon();
        for v in &other.basis {
            ech.insert(v.clone());
        }
        Ok(Subspace {
            ambient_dim: self.ambient_dim,
            basis: ech.rows.into_values().collect(),
        })
    }

    /// Intersection, computed as `Ann(Ann(a) + Ann(b))`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// `other ⊆ self`
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        let ech = self.echelon();
        Ok(other.basis.iter().all(|v| {
            let mut w = v.clone();
            ech.reduce(&mut w);
            w.is_zero()
        }))
    }

    /// Subspace of the dual space (with dual coordinates identified with the
    /// original ones) of functionals vanishing on `self`.
    pub fn annihilator(&self) -> Subspace {
        let mut pivot_rows: BTreeMap<usize, &SparseVec> = BTreeMap::new();
        for b in &self.basis {
            pivot_rows.insert(b.last().expect("nonzero").0, b);
        }
        let mut out = Vec::with_capacity(self.ambient_dim - self.basis.len());
        for f in 0..self.ambient_dim {
            if pivot_rows.contains_key(&f) {
                continue;
            }
            // φ_f = e_f* - Σ_b b[f] e_{pivot(b)}*
            let mut phi = SparseVec::unit(f);
            for (p, b) in &pivot_rows {
                if let Some(x) = b.get(f) {
                    phi.set(*p, -x.clone());
                }
            }
            out.push(phi);
        }
        Subspace::span(self.ambient_dim, out)
    }

    /// Image of this subspace under `m` (which must have `cols == ambient_dim`).
    pub fn image_under(&self, m: &QMatrix) -> Result<Subspace> {
        if m.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: m.cols(),
            });
        }
        Ok(Subspace::span(
            m.rows(),
            self.basis.iter().map(|v| m.apply(v)),
        ))
    }

    /// `{v : m·v ∈ s}`.
    pub fn preimage(m: &QMatrix, s: &Subspace) -> Result<Subspace> {
        if m.rows() != s.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: s.ambient_dim,
                found: m.rows(),
            });
        }
        // v ∈ preimage iff every functional annihilating s kills m·v
        let ann = s.annihilator();
        let constraints = ann.basis_matrix().transpose().mul(m)?;
        Ok(constraints.kernel_basis())
    }

    /// Pairing of the basis against another list of vectors, `⟨b_i, w_j⟩`.
    pub fn pairing(&self, others: &[SparseVec]) -> QMatrix {
        let mut m = QMatrix::zeros(self.basis.len(), others.len());
        for (i, b) in self.basis.iter().enumerate() {
            for (j, w) in others.iter().enumerate() {
                let x = b.dot(w);
                if !x.is_zero() {
                    m.set(i, j, x);
                }
            }
        }
        m
    }

    /// True if the basis is in canonical form. Used by tests.
    pub fn is_canonical(&self) -> bool {
        let mut last = None;
        for b in &self.basis {
            let Some((p, x)) = b.last() else { return false };
            if !x.is_one() || last.is_some_and(|l| l >= p) {
                return false;
            }
            last = Some(p);
            if self
                .basis
                .iter()
                .any(|o| !std::ptr::eq(o, b) && o.get(p).is_some())
            {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> SparseVec {
        assert!(i < n);
        SparseVec::unit(i)
    }

    #[test]
    fn sum_and_intersection_examples() {
        let a = Subspace::span(2, vec![e(2, 0)]);
        let b = Subspace::span(2, vec![e(2, 1)]);
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(2));
        let c = Subspace::span(2, vec![SparseVec::from_i64(&[1, 1])]);
        assert_eq!(a.intersection(&c).unwrap(), Subspace::zero(2));
        assert!(Subspace::full(2).contains(&c).unwrap());
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        let a = Subspace::full(2);
        let b = Subspace::full(3);
        assert!(a.sum(&b).is_err());
        assert!(a.contains(&b).is_err());
    }

    #[test]
    fn annihilator_examples() {
        assert_eq!(Subspace::full(3).annihilator(), Subspace::zero(3));
        assert_eq!(Subspace::zero(3).annihilator(), Subspace::full(3));
        let s = Subspace::span(2, vec![e(2, 0)]);
        assert_eq!(s.annihilator(), Subspace::span(2, vec![e(2, 1)]));
    }

    #[test]
    fn preimage_examples() {
        let s = Subspace::span(2, vec![SparseVec::from_i64(&[1, 3])]);
        assert_eq!(Subspace::preimage(&QMatrix::identity(2), &s).unwrap(), s);
        assert_eq!(
            Subspace::preimage(&QMatrix::zeros(2, 3), &Subspace::zero(2)).unwrap(),
            Subspace::full(3)
        );
        let m = QMatrix::from_rows_i64(&[vec![1, 0]]);
        assert_eq!(
            Subspace::preimage(&m, &Subspace::zero(1)).unwrap(),
            Subspace::span(2, vec![e(2, 1)])
        );
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = Subspace::span(
            3,
            vec![
                SparseVec::from_i64(&[1, 2, 3]),
                SparseVec::from_i64(&[0, 1, 1]),
            ],
        );
        let b = Subspace::span(
            3,
            vec![
                SparseVec::from_i64(&[1, 3, 4]),
                SparseVec::from_i64(&[2, 5, 7]),
            ],
        );
        assert_eq!(a, b);
        assert!(a.is_canonical());
    }

    #[test]
    fn coordinates_reconstruct() {
        let s = Subspace::span(3, vec![SparseVec::from_i64(&[1, 2, 3])]);
        let c = s.coordinates(&SparseVec::from_i64(&[2, 4, 6])).unwrap();
        // canonical basis vector is (1/3, 2/3, 1)
        assert_eq!(c, SparseVec::from_i64(&[6]));
        assert!(s.coordinates(&SparseVec::from_i64(&[1, 0, 0])).is_none());
    }
}

//! Rational simplicial homology and cohomology.
//!
//! A homology group is presented as a quotient `Z / B` stored in a
//! [`TaggedReducer`]: boundaries carry the zero tag, and each representative
//! cycle carries its coordinate unit vector. Reducing any cycle against the
//! store yields its coordinates.

mod cohomology;
mod mayer_vietoris;

pub use cohomology::{
    cohomology, cup_product, induced_cohomology_map, CohomologyRing, CohomologySpace,
};
pub use mayer_vietoris::{mv_connecting, mv_exactness, MvConnecting, MvNode};

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exactla::{
    reduce_columns, reduce_columns_skipping, QMatrix, Rational, SparseVec, TaggedReducer,
};
use crate::simplicial::{Chain, SimplicialComplex, SimplicialMap};

/// A computed homology group (ordinary or intersection) with a basis of
/// representative cycles.
#[derive(Clone, Debug)]
pub struct HomologySpace {
    complex: SimplicialComplex,
    degree: usize,
    representatives: Vec<SparseVec>,
    reducer: TaggedReducer,
}

impl HomologySpace {
    /// Presents `span(cycles) / span(boundaries)`. The boundaries must lie in
    /// the span of the cycles; cycles already in the span of earlier vectors
    /// are dropped.
    pub(crate) fn from_parts(
        complex: SimplicialComplex,
        degree: usize,
        boundaries: impl IntoIterator<Item = SparseVec>,
        cycles: impl IntoIterator<Item = SparseVec>,
    ) -> Self {
        let mut reducer = TaggedReducer::new();
        for b in boundaries {
            reducer.insert(&b, SparseVec::new());
        }
        let mut representatives = Vec::new();
        for z in cycles {
            if reducer.insert(&z, SparseVec::unit(representatives.len())) {
                representatives.push(z);
            }
        }
        Self {
            complex,
            degree,
            representatives,
            reducer,
        }
    }

    /// The zero group in `degree`.
    pub fn zero(complex: SimplicialComplex, degree: usize) -> Self {
        Self::from_parts(complex, degree, [], [])
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.representatives.len()
    }

    /// Representative cycles, one per basis class.
    pub fn representatives(&self) -> Vec<Chain> {
        self.representatives
            .iter()
            .map(|v| self.complex.vec_to_chain(self.degree, v))
            .collect()
    }

    /// Representatives as vectors over the `degree`-simplices.
    pub fn representative_vecs(&self) -> &[SparseVec] {
        &self.representatives
    }

    /// Coordinates of the class of a cycle.
    pub fn coordinates(&self, z: &Chain) -> Result<SparseVec> {
        if z.degree() != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: z.degree(),
            });
        }
        self.coordinates_vec(&self.complex.chain_to_vec(z)?)
    }

    /// Coordinates of the class of a cycle given as a vector.
    pub fn coordinates_vec(&self, z: &SparseVec) -> Result<SparseVec> {
        self.reducer.tag_of(z).ok_or(Error::NotACycle)
    }

    /// The cycle `Σ cᵢ zᵢ` for coordinates `c`.
    pub fn class_vec(&self, coords: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in coords.iter() {
            out.add_scaled(c, &self.representatives[i]);
        }
        out
    }

    /// Functionals `ψᵢ` on the chains, vanishing on boundaries, with
    /// `ψᵢ(zⱼ) = δᵢⱼ`. For ordinary homology these are cocycles.
    pub(crate) fn dual_functionals(&self) -> Vec<SparseVec> {
        (0..self.rank())
            .map(|i| self.reducer.dual_functional(|tag| tag.value(i)))
            .collect()
    }
}

fn check_degree(k: &SimplicialComplex, degree: usize) -> Result<()> {
    if k.is_empty() {
        return Err(Error::EmptyComplex);
    }
    if degree > k.dim() {
        return Err(Error::DegreeOutOfRange {
            degree: degree as i64,
            max: k.dim() as i64,
        });
    }
    Ok(())
}

/// `H_degree(k; Q)`; requires `0 ≤ degree ≤ dim k`.
pub fn homology(k: &SimplicialComplex, degree: usize) -> Result<HomologySpace> {
    check_degree(k, degree)?;
    Ok(homology_or_zero(k, degree))
}

/// Like [`homology`], but returns the zero group for empty complexes and
/// degrees above the dimension.
pub fn homology_or_zero(k: &SimplicialComplex, degree: usize) -> HomologySpace {
    if k.is_empty() || degree > k.dim() {
        return HomologySpace::zero(k.clone(), degree);
    }
    let boundaries = if degree < k.dim() {
        reduce_columns(&k.boundary_columns(degree + 1), false).image
    } else {
        Vec::new()
    };
    // a column that is the pivot of a boundary is paired; its kernel vector
    // would only duplicate that boundary
    let paired: HashSet<usize> = boundaries
        .iter()
        .filter_map(|b| b.last().map(|(i, _)| i))
        .collect();
    let red = reduce_columns_skipping(&k.boundary_columns(degree), true, |j| paired.contains(&j));
    HomologySpace::from_parts(k.clone(), degree, boundaries, red.kernel)
}

/// Matrix of the map `hx → hy` induced by a chain-level matrix `m` in the
/// degree of the two spaces.
pub fn induced_by_chain_matrix(
    m: &QMatrix,
    hx: &HomologySpace,
    hy: &HomologySpace,
) -> Result<QMatrix> {
    let cols = hx
        .representative_vecs()
        .iter()
        .map(|z| hy.coordinates_vec(&m.apply(z)))
        .collect::<Result<Vec<_>>>()?;
    Ok(QMatrix::from_columns(hy.rank(), cols))
}

/// Matrix of `f_* : H_degree(X) → H_degree(Y)` in the representative bases
/// of [`homology_or_zero`].
pub fn induced_map(f: &SimplicialMap, degree: usize) -> Result<QMatrix> {
    let hx = homology_or_zero(f.domain(), degree);
    let hy = homology_or_zero(f.codomain(), degree);
    induced_by_chain_matrix(&f.chain_matrix(degree), &hx, &hy)
}

/// Betti numbers `b_0, …, b_dim`.
pub fn betti_numbers(k: &SimplicialComplex) -> Vec<usize> {
    if k.is_empty() {
        return Vec::new();
    }
    (0..=k.dim())
        .map(|d| homology_or_zero(k, d).rank())
        .collect()
}

/// `Σ cᵢ vᵢ` for a coordinate vector over a list of vectors.
pub(crate) fn combine(vectors: &[SparseVec], coords: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (i, c) in coords.iter() {
        out.add_scaled(c, &vectors[i]);
    }
    out
}

pub(crate) fn pair(phi: &SparseVec, z: &SparseVec) -> Rational {
    phi.dot(z)
}

use num_traits::{One, Zero};

use super::{homology_or_zero, pair, HomologySpace};
use crate::error::{Error, Result};
use crate::exactla::{QMatrix, Rational, SparseVec};
use crate::simplicial::{Cochain, Simplex, SimplicialComplex, SimplicialMap};

/// `H^degree(k; Q)`, with representative cocycles dual to the homology basis.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    homology: HomologySpace,
    representatives: Vec<SparseVec>,
}

impl CohomologySpace {
    pub(crate) fn from_homology(homology: HomologySpace) -> Self {
        let representatives = homology.dual_functionals();
        Self {
            homology,
            representatives,
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        self.homology.complex()
    }

    pub fn degree(&self) -> usize {
        self.homology.degree()
    }

    pub fn rank(&self) -> usize {
        self.representatives.len()
    }

    /// The homology group whose basis this one is dual to.
    pub fn homology(&self) -> &HomologySpace {
        &self.homology
    }

    pub fn representatives(&self) -> Vec<Cochain> {
        self.representatives
            .iter()
            .map(|v| self.complex().vec_to_cochain(self.degree(), v))
            .collect()
    }

    pub fn representative_vecs(&self) -> &[SparseVec] {
        &self.representatives
    }

    pub fn is_cocycle_vec(&self, phi: &SparseVec) -> bool {
        let k = self.complex();
        let d = self.degree();
        if k.is_empty() || d >= k.dim() {
            return true;
        }
        (0..k.num_simplices(d + 1)).all(|j| phi.dot(&k.boundary_of(d + 1, j)).is_zero())
    }

    /// Coordinates of the class of a cocycle: its values on the homology
    /// representatives.
    pub fn coordinates(&self, phi: &Cochain) -> Result<SparseVec> {
        if phi.degree() != self.degree() {
            return Err(Error::DimensionMismatch {
                expected: self.degree(),
                found: phi.degree(),
            });
        }
        self.coordinates_vec(&self.complex().cochain_to_vec(phi)?)
    }

    pub fn coordinates_vec(&self, phi: &SparseVec) -> Result<SparseVec> {
        if !self.is_cocycle_vec(phi) {
            return Err(Error::NotACocycle);
        }
        Ok(self
            .homology
            .representative_vecs()
            .iter()
            .enumerate()
            .map(|(i, z)| (i, pair(phi, z)))
            .collect())
    }

    /// The cocycle `Σ cᵢ ψᵢ` for coordinates `c`.
    pub fn class_vec(&self, coords: &SparseVec) -> SparseVec {
        super::combine(&self.representatives, coords)
    }

    /// Matrix of the evaluation pairing `⟨ψᵢ, zⱼ⟩`.
    pub fn pairing_matrix(&self) -> QMatrix {
        let zs = self.homology.representative_vecs();
        let cols = zs
            .iter()
            .map(|z| {
                self.representatives
                    .iter()
                    .enumerate()
                    .map(|(i, psi)| (i, pair(psi, z)))
                    .collect()
            })
            .collect();
        QMatrix::from_columns(self.rank(), cols)
    }
}

/// `H^degree(k; Q)`; requires `0 ≤ degree ≤ dim k`.
pub fn cohomology(k: &SimplicialComplex, degree: usize) -> Result<CohomologySpace> {
    Ok(CohomologySpace::from_homology(super::homology(k, degree)?))
}

pub(crate) fn cohomology_or_zero(k: &SimplicialComplex, degree: usize) -> CohomologySpace {
    CohomologySpace::from_homology(homology_or_zero(k, degree))
}

/// Matrix of `f^* : H^degree(Y) → H^degree(X)`, computed by pulling back the
/// representative cocycles of `Y` and evaluating on the cycles of `X`.
pub fn induced_cohomology_map(f: &SimplicialMap, degree: usize) -> Result<QMatrix> {
    let cx = cohomology_or_zero(f.domain(), degree);
    let cy = cohomology_or_zero(f.codomain(), degree);
    let cols = cy
        .representatives()
        .iter()
        .map(|psi| cx.coordinates(&f.pull_cochain(psi)))
        .collect::<Result<Vec<_>>>()?;
    Ok(QMatrix::from_columns(cx.rank(), cols))
}

/// Alexander–Whitney cup product `(u⌣v)(σ) = u(σ[0..=p]) · v(σ[p..=p+q])`
/// in the vertex order of `k`. Both cochains must live on `k`.
pub fn cup_product(k: &SimplicialComplex, u: &Cochain, v: &Cochain) -> Result<Cochain> {
    let uv = k.cochain_to_vec(u)?;
    let vv = k.cochain_to_vec(v)?;
    let (p, q) = (u.degree(), v.degree());
    Ok(k.vec_to_cochain(p + q, &cup_vec(k, p, &uv, q, &vv)))
}

fn cup_vec(k: &SimplicialComplex, p: usize, u: &SparseVec, q: usize, v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    if k.is_empty() || p + q > k.dim() {
        return out;
    }
    for (i, s) in k.simplices(p + q).iter().enumerate() {
        let verts = s.vertices();
        let front = Simplex::new(verts[..=p].to_vec());
        let back = Simplex::new(verts[p..].to_vec());
        let (Some(fi), Some(bi)) = (k.index_of(&front), k.index_of(&back)) else {
            continue;
        };
        let (Some(a), Some(b)) = (u.get(fi), v.get(bi)) else {
            continue;
        };
        out.set(i, a * b);
    }
    out
}

/// The rational cohomology ring of a complex, in the bases of
/// [`CohomologySpace`].
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    complex: SimplicialComplex,
    spaces: Vec<CohomologySpace>,
}

impl CohomologyRing {
    pub fn new(k: &SimplicialComplex) -> Result<Self> {
        if k.is_empty() {
            return Err(Error::EmptyComplex);
        }
        Ok(Self {
            complex: k.clone(),
            spaces: (0..=k.dim()).map(|d| cohomology_or_zero(k, d)).collect(),
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// `H^d`; the zero group above the dimension.
    pub fn space(&self, d: usize) -> CohomologySpace {
        self.spaces
            .get(d)
            .cloned()
            .unwrap_or_else(|| cohomology_or_zero(&self.complex, d))
    }

    pub fn rank(&self, d: usize) -> usize {
        self.spaces.get(d).map_or(0, CohomologySpace::rank)
    }

    /// Coordinates of the unit class in `H^0`.
    pub fn unit(&self) -> SparseVec {
        let one: SparseVec = (0..self.complex.num_vertices())
            .map(|i| (i, Rational::one()))
            .collect();
        self.spaces[0]
            .coordinates_vec(&one)
            .expect("the constant 0-cochain is a cocycle")
    }

    /// Coordinates in `H^{p+q}` of the product of classes `x ∈ H^p`, `y ∈ H^q`.
    pub fn product(&self, p: usize, x: &SparseVec, q: usize, y: &SparseVec) -> Result<SparseVec> {
        if p + q > self.complex.dim() {
            return Ok(SparseVec::new());
        }
        let u = self.spaces[p].class_vec(x);
        let v = self.spaces[q].class_vec(y);
        let w = cup_vec(&self.complex, p, &u, q, &v);
        self.spaces[p + q].coordinates_vec(&w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;
    use crate::simplicial::product;

    fn circle() -> SimplicialComplex {
        SimplicialComplex::build(&[vec!["a", "b"], vec!["b", "c"], vec!["c", "a"]]).unwrap()
    }

    #[test]
    fn pairing_is_identity() {
        let t = product(&circle(), &circle());
        for d in 0..=2 {
            let c = cohomology(&t, d).unwrap();
            assert_eq!(c.pairing_matrix(), QMatrix::identity(c.rank()));
            for psi in c.representatives() {
                assert!(t.coboundary(&psi).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn torus_generators_cup_to_top_class() {
        let t = product(&circle(), &circle());
        let ring = CohomologyRing::new(&t).unwrap();
        let x = ring
            .product(1, &SparseVec::unit(0), 1, &SparseVec::unit(1))
            .unwrap();
        assert_eq!(x.nnz(), 1);
        let y = ring
            .product(1, &SparseVec::unit(1), 1, &SparseVec::unit(0))
            .unwrap();
        assert_eq!(y, x.scaled(&int(-1)));
    }

    #[test]
    fn unit_acts_as_identity() {
        let t = product(&circle(), &circle());
        let ring = CohomologyRing::new(&t).unwrap();
        let one = ring.unit();
        for d in 0..=2 {
            for i in 0..ring.rank(d) {
                let e = SparseVec::unit(i);
                assert_eq!(ring.product(0, &one, d, &e).unwrap(), e);
                assert_eq!(ring.product(d, &e, 0, &one).unwrap(), e);
            }
        }
    }

    #[test]
    fn cup_rejects_foreign_cochains() {
        let c = circle();
        let other = SimplicialComplex::build(&[vec!["x", "y", "z"]]).unwrap();
        let w = Cochain::from_values(2, [(other.simplex(&["x", "y", "z"]).unwrap(), int(1))]);
        assert!(cup_product(&c, &w, &Cochain::zero(0)).is_err());
    }
}

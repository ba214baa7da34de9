use std::collections::BTreeSet;

use super::{homology_or_zero, induced_by_chain_matrix, HomologySpace};
use crate::error::{Error, Result};
use crate::exactla::{int, QMatrix, SparseVec, Subspace};
use crate::simplicial::{Simplex, SimplicialComplex, SimplicialMap};

/// The connecting map `∂ : H_d(X) → H_{d-1}(A∩B)` of a closed cover.
#[derive(Clone, Debug)]
pub struct MvConnecting {
    pub matrix: QMatrix,
    pub source: HomologySpace,
    pub target: HomologySpace,
    pub intersection: SimplicialComplex,
}

/// One node of the Mayer–Vietoris sequence with the dimensions of the kernel
/// of the outgoing map and the image of the incoming map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvNode {
    pub group: String,
    pub degree: usize,
    pub kernel_dim: usize,
    pub image_dim: usize,
    pub exact: bool,
}

struct Cover<'a> {
    k: &'a SimplicialComplex,
    a_set: &'a BTreeSet<Simplex>,
    b_set: &'a BTreeSet<Simplex>,
    a: SimplicialComplex,
    b: SimplicialComplex,
    ab: SimplicialComplex,
}

impl<'a> Cover<'a> {
    fn new(k: &'a SimplicialComplex, a: &str, b: &str) -> Result<Self> {
        let a_set = k.subcomplex_simplices(a)?;
        let b_set = k.subcomplex_simplices(b)?;
        if let Some(m) = k
            .maximal_simplices()
            .iter()
            .find(|m| !a_set.contains(*m) && !b_set.contains(*m))
        {
            return Err(Error::InvalidCover(k.display(m)));
        }
        let ab_set: BTreeSet<Simplex> = a_set.intersection(b_set).cloned().collect();
        Ok(Self {
            k,
            a_set,
            b_set,
            a: k.subcomplex_from_set(a_set),
            b: k.subcomplex_from_set(b_set),
            ab: k.subcomplex_from_set(&ab_set),
        })
    }

    /// `∂(z restricted to the simplices selected by keep)`, as a class in
    /// `H(A∩B)`.
    fn connect<F: Fn(&Simplex) -> bool>(
        &self,
        degree: usize,
        z: &SparseVec,
        keep: F,
        target: &HomologySpace,
    ) -> Result<SparseVec> {
        let part: SparseVec = z
            .iter()
            .filter(|(i, _)| keep(&self.k.simplices(degree)[*i]))
            .map(|(i, x)| (i, x.clone()))
            .collect();
        let chain = self.k.vec_to_chain(degree, &part);
        let bd = self.k.boundary(&chain)?;
        if let Some(s) = bd
            .support()
            .find(|s| !(self.a_set.contains(*s) && self.b_set.contains(*s)))
        {
            return Err(Error::Internal(format!(
                "boundary of the A-part meets {} outside A∩B",
                self.k.display(s)
            )));
        }
        let moved = self.k.transfer_chain(&bd, &self.ab)?;
        target.coordinates(&moved)
    }
}

/// Connecting homomorphism `H_degree(K) → H_{degree-1}(A∩B)` for the closed
/// cover of `k` by its named subcomplexes `a` and `b`.
///
/// A cycle `z` is split as `z_a + z_b` with shared simplices assigned to `A`,
/// and the class of `∂z_a` is returned. The split with shared simplices
/// assigned to `B` is computed as well and must agree.
pub fn mv_connecting(
    k: &SimplicialComplex,
    a: &str,
    b: &str,
    degree: usize,
) -> Result<MvConnecting> {
    let cover = Cover::new(k, a, b)?;
    let source = super::homology(k, degree)?;
    let target = match degree.checked_sub(1) {
        Some(d) => homology_or_zero(&cover.ab, d),
        None => HomologySpace::zero(cover.ab.clone(), 0),
    };
    let mut cols = Vec::with_capacity(source.rank());
    for z in source.representative_vecs() {
        if degree == 0 {
            cols.push(SparseVec::new());
            continue;
        }
        let greedy_a = cover.connect(degree, z, |s| cover.a_set.contains(s), &target)?;
        let greedy_b = cover.connect(
            degree,
            z,
            |s| cover.a_set.contains(s) && !cover.b_set.contains(s),
            &target,
        )?;
        if greedy_a != greedy_b {
            return Err(Error::Internal(
                "connecting map depends on the splitting".into(),
            ));
        }
        cols.push(greedy_a);
    }
    Ok(MvConnecting {
        matrix: QMatrix::from_columns(target.rank(), cols),
        source,
        target,
        intersection: cover.ab,
    })
}

fn ker_equals_im(group: String, degree: usize, incoming: &QMatrix, outgoing: &QMatrix) -> MvNode {
    let n = outgoing.cols();
    let im = Subspace::span(n, incoming.columns().iter().cloned());
    let ker = outgoing.kernel_basis();
    MvNode {
        group,
        degree,
        kernel_dim: ker.dim(),
        image_dim: im.dim(),
        exact: im == ker,
    }
}

/// Checks exactness of the ordinary Mayer–Vietoris sequence
/// `… → H_d(A∩B) → H_d(A) ⊕ H_d(B) → H_d(X) → H_{d-1}(A∩B) → …`
/// at every node.
pub fn mv_exactness(k: &SimplicialComplex, a: &str, b: &str) -> Result<Vec<MvNode>> {
    let cover = Cover::new(k, a, b)?;
    let top = k.dim();
    let ab_a = SimplicialMap::inclusion(&cover.ab, &cover.a)?;
    let ab_b = SimplicialMap::inclusion(&cover.ab, &cover.b)?;
    let a_x = SimplicialMap::inclusion(&cover.a, k)?;
    let b_x = SimplicialMap::inclusion(&cover.b, k)?;

    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    let mut delta = Vec::new();
    for d in 0..=top + 1 {
        let h_ab = homology_or_zero(&cover.ab, d);
        let h_a = homology_or_zero(&cover.a, d);
        let h_b = homology_or_zero(&cover.b, d);
        let h_x = homology_or_zero(k, d);
        let ia = induced_by_chain_matrix(&ab_a.chain_matrix(d), &h_ab, &h_a)?;
        let ib = induced_by_chain_matrix(&ab_b.chain_matrix(d), &h_ab, &h_b)?;
        alpha.push(ia.vstack(&ib)?);
        let ja = induced_by_chain_matrix(&a_x.chain_matrix(d), &h_a, &h_x)?;
        let jb = induced_by_chain_matrix(&b_x.chain_matrix(d), &h_b, &h_x)?;
        beta.push(ja.hstack(&jb.scaled(&int(-1)))?);
        delta.push(if d == 0 || d > top {
            let below = d
                .checked_sub(1)
                .map_or(0, |e| homology_or_zero(&cover.ab, e).rank());
            QMatrix::zeros(below, h_x.rank())
        } else {
            mv_connecting(k, a, b, d)?.matrix
        });
    }

    let mut nodes = Vec::new();
    for d in (0..=top).rev() {
        nodes.push(ker_equals_im(format!("H_{d}(X)"), d, &beta[d], &delta[d]));
        nodes.push(ker_equals_im(
            format!("H_{d}(A)+H_{d}(B)"),
            d,
            &alpha[d],
            &beta[d],
        ));
        nodes.push(ker_equals_im(
            format!("H_{d}(A∩B)"),
            d,
            &delta[d + 1],
            &alpha[d],
        ));
    }
    Ok(nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn octahedron() -> SimplicialComplex {
        let eq = ["e0", "e1", "e2", "e3"];
        let mut tris = Vec::new();
        for i in 0..4 {
            for pole in ["n", "s"] {
                tris.push(vec![eq[i], eq[(i + 1) % 4], pole]);
            }
        }
        let k = SimplicialComplex::build(&tris).unwrap();
        let upper: Vec<Simplex> = k
            .maximal_simplices()
            .iter()
            .filter(|t| t.contains_vertex(k.vertex("n").unwrap()))
            .cloned()
            .collect();
        let lower: Vec<Simplex> = k
            .maximal_simplices()
            .iter()
            .filter(|t| t.contains_vertex(k.vertex("s").unwrap()))
            .cloned()
            .collect();
        k.with_subcomplex("A", upper)
            .unwrap()
            .with_subcomplex("B", lower)
            .unwrap()
    }

    #[test]
    fn hemispheres_send_fundamental_class_to_equator() {
        let k = octahedron();
        let c = mv_connecting(&k, "A", "B", 2).unwrap();
        assert_eq!(c.matrix.rows(), 1);
        assert_eq!(c.matrix.rank(), 1);
    }

    #[test]
    fn hemisphere_sequence_is_exact() {
        let k = octahedron();
        let nodes = mv_exactness(&k, "A", "B").unwrap();
        assert_eq!(nodes.len(), 9);
        assert!(nodes.iter().all(|n| n.exact), "{nodes:?}");
    }

    #[test]
    fn rejects_non_covers() {
        let k = octahedron();
        let t = k.maximal_simplices()[0].clone();
        let k = k.with_subcomplex("T", vec![t]).unwrap();
        assert!(matches!(
            mv_connecting(&k, "T", "T", 1),
            Err(Error::InvalidCover(_))
        ));
    }
}

use std::collections::BTreeMap;

use super::{Chain, Cochain, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exactla::{int, QMatrix, SparseVec};

/// Sign of the permutation sorting `v` (which must have distinct entries).
pub(crate) fn sort_sign(v: &mut [usize]) -> i64 {
    let mut sign = 1;
    // insertion sort, counting swaps; simplices are tiny
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}

/// Degree-wise chain map between the chain complexes of two complexes.
#[derive(Clone, Debug)]
pub struct ChainMap {
    domain: SimplicialComplex,
    codomain: SimplicialComplex,
    matrices: Vec<QMatrix>,
}

impl ChainMap {
    pub(crate) fn new(
        domain: SimplicialComplex,
        codomain: SimplicialComplex,
        matrices: Vec<QMatrix>,
    ) -> Self {
        Self {
            domain,
            codomain,
            matrices,
        }
    }

    pub fn domain(&self) -> &SimplicialComplex {
        &self.domain
    }

    pub fn codomain(&self) -> &SimplicialComplex {
        &self.codomain
    }

    /// Matrix in degree `d` (zero matrix above the domain dimension).
    pub fn matrix(&self, d: usize) -> QMatrix {
        self.matrices.get(d).cloned().unwrap_or_else(|| {
            QMatrix::zeros(self.codomain.num_simplices(d), self.domain.num_simplices(d))
        })
    }

    pub fn apply_vec(&self, d: usize, v: &SparseVec) -> SparseVec {
        match self.matrices.get(d) {
            Some(m) => m.apply(v),
            None => SparseVec::new(),
        }
    }

    pub fn apply(&self, chain: &Chain) -> Result<Chain> {
        let d = chain.degree();
        let v = self.domain.chain_to_vec(chain)?;
        Ok(self.codomain.vec_to_chain(d, &self.apply_vec(d, &v)))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap> {
        let n = self.matrices.len().min(other.matrices.len());
        let mut mats = Vec::with_capacity(n);
        for d in 0..n {
            mats.push(other.matrices[d].mul(&self.matrices[d])?);
        }
        Ok(ChainMap::new(
            self.domain.clone(),
            other.codomain.clone(),
            mats,
        ))
    }
}

/// Simplicial map given by a vertex map under which every simplex of the
/// domain lands on a simplex of the codomain.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    domain: SimplicialComplex,
    codomain: SimplicialComplex,
    vertex_map: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(
        domain: SimplicialComplex,
        codomain: SimplicialComplex,
        vertex_map: Vec<usize>,
    ) -> Result<Self> {
        if vertex_map.len() != domain.num_vertices() {
            return Err(Error::InvalidMap(format!(
                "vertex map has {} entries for {} vertices",
                vertex_map.len(),
                domain.num_vertices()
            )));
        }
        if let Some(v) = vertex_map.iter().find(|v| **v >= codomain.num_vertices()) {
            return Err(Error::InvalidMap(format!("target vertex {v} out of range")));
        }
        let f = Self {
            domain,
            codomain,
            vertex_map,
        };
        for s in f.domain.maximal_simplices() {
            let img = f.image_set(s);
            if !f.codomain.contains(&img) {
                return Err(Error::InvalidMap(format!(
                    "{} maps to {}, which is not a simplex of the codomain",
                    f.domain.display(s),
                    f.codomain.display(&img)
                )));
            }
        }
        Ok(f)
    }

    /// Map given by vertex labels.
    pub fn from_labels(
        domain: SimplicialComplex,
        codomain: SimplicialComplex,
        map: &BTreeMap<String, String>,
    ) -> Result<Self> {
        let mut vm = Vec::with_capacity(domain.num_vertices());
        for l in domain.labels() {
            let target = map
                .get(l)
                .ok_or_else(|| Error::InvalidMap(format!("vertex `{l}` is not mapped")))?;
            vm.push(
                codomain.vertex(target).ok_or_else(|| {
                    Error::InvalidMap(format!("unknown target vertex `{target}`"))
                })?,
            );
        }
        Self::new(domain, codomain, vm)
    }

    /// Inclusion of a complex whose labels all occur in `ambient`.
    pub fn inclusion(sub: &SimplicialComplex, ambient: &SimplicialComplex) -> Result<Self> {
        let map: BTreeMap<String, String> = sub
            .labels()
            .iter()
            .map(|l| (l.clone(), l.clone()))
            .collect();
        Self::from_labels(sub.clone(), ambient.clone(), &map)
    }

    pub fn identity(k: &SimplicialComplex) -> Self {
        Self {
            domain: k.clone(),
            codomain: k.clone(),
            vertex_map: (0..k.num_vertices()).collect(),
        }
    }

    pub fn domain(&self) -> &SimplicialComplex {
        &self.domain
    }

    pub fn codomain(&self) -> &SimplicialComplex {
        &self.codomain
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    /// Vertex map by labels.
    pub fn label_map(&self) -> BTreeMap<String, String> {
        self.domain
            .labels()
            .iter()
            .zip(&self.vertex_map)
            .map(|(l, v)| (l.clone(), self.codomain.label(*v).to_string()))
            .collect()
    }

    fn image_set(&self, s: &Simplex) -> Simplex {
        let mut v: Vec<usize> = s.vertices().iter().map(|x| self.vertex_map[*x]).collect();
        v.sort_unstable();
        v.dedup();
        Simplex::from_sorted(v)
    }

    /// Oriented image of a simplex: `None` if it collapses, otherwise the image
    /// simplex and the sign relating orientations.
    pub fn image(&self, s: &Simplex) -> Option<(Simplex, i64)> {
        let mut v: Vec<usize> = s.vertices().iter().map(|x| self.vertex_map[*x]).collect();
        let sign = sort_sign(&mut v);
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Simplex::from_sorted(v), sign))
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SimplicialMap) -> Result<SimplicialMap> {
        if self.codomain != g.domain {
            return Err(Error::InvalidMap("maps are not composable".into()));
        }
        Ok(SimplicialMap {
            domain: self.domain.clone(),
            codomain: g.codomain.clone(),
            vertex_map: self.vertex_map.iter().map(|v| g.vertex_map[*v]).collect(),
        })
    }

    /// Matrix of the induced chain map in degree `d`.
    pub fn chain_matrix(&self, d: usize) -> QMatrix {
        let cols = self
            .domain
            .simplices(d)
            .iter()
            .map(|s| match self.image(s) {
                None => SparseVec::new(),
                Some((t, sign)) => {
                    let j = self
                        .codomain
                        .index_of(&t)
                        .expect("validated map sends simplices to simplices");
                    SparseVec::from_pairs([(j, int(sign))])
                }
            })
            .collect();
        QMatrix::from_columns(self.codomain.num_simplices(d), cols)
    }

    pub fn chain_map(&self) -> ChainMap {
        let top = if self.domain.is_empty() {
            0
        } else {
            self.domain.dim() + 1
        };
        ChainMap::new(
            self.domain.clone(),
            self.codomain.clone(),
            (0..top).map(|d| self.chain_matrix(d)).collect(),
        )
    }

    pub fn push_chain(&self, chain: &Chain) -> Chain {
        let mut out = Chain::zero(chain.degree());
        for (s, x) in chain.iter() {
            if let Some((t, sign)) = self.image(s) {
                out.add_term(t, &(x * int(sign)));
            }
        }
        out
    }

    /// Pullback `f^#φ = φ ∘ f_#`.
    pub fn pull_cochain(&self, phi: &Cochain) -> Cochain {
        let d = phi.degree();
        Cochain::from_values(
            d,
            self.domain.simplices(d).iter().filter_map(|s| {
                let (t, sign) = self.image(s)?;
                Some((s.clone(), phi.value(&t) * int(sign)))
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(names: [&str; 3]) -> SimplicialComplex {
        let [a, b, c] = names;
        SimplicialComplex::build(&[vec![a, b], vec![b, c], vec![c, a]]).unwrap()
    }

    #[test]
    fn rejects_non_simplicial_vertex_maps() {
        let c = circle(["a", "b", "c"]);
        let seg = SimplicialComplex::build(&[vec!["x", "y"], vec!["y", "z"]]).unwrap();
        // a->x, b->y, c->z sends edge (c,a) to (x,z), not an edge
        assert!(matches!(
            SimplicialMap::new(c.clone(), seg.clone(), vec![0, 1, 2]),
            Err(Error::InvalidMap(_))
        ));
        assert!(SimplicialMap::new(c, seg, vec![0, 1, 1]).is_ok());
    }

    #[test]
    fn chain_map_commutes_with_boundary() {
        let c = circle(["a", "b", "c"]);
        let rot = SimplicialMap::new(c.clone(), c.clone(), vec![1, 2, 0]).unwrap();
        let d1 = c.boundary_matrix(1).unwrap();
        let lhs = d1.mul(&rot.chain_matrix(1)).unwrap();
        let rhs = rot.chain_matrix(0).mul(&d1).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sort_sign_parity() {
        let mut v = vec![2, 0, 1];
        assert_eq!(sort_sign(&mut v), 1);
        assert_eq!(v, vec![0, 1, 2]);
        let mut w = vec![1, 0];
        assert_eq!(sort_sign(&mut w), -1);
    }
}

use crate::error::{Error, Result};
use crate::exactla::{QMatrix, SparseVec, Subspace};
use crate::homology::{homology_or_zero, induced_by_chain_matrix, CohomologySpace, HomologySpace};
use crate::simplicial::{barycentric_subdivision, ChainMap, SimplicialComplex};
use crate::stratify::{canonical_stratification, Perversity, Stratification};

use super::{intersection_homology, irreducible_components};

/// `IM_k(X) = Σ im(ι_i)` over the irreducible components, as a subspace of
/// `H_k(X)` in the coordinates of `homology`.
#[derive(Clone, Debug)]
pub struct ImageHomology {
    pub degree: usize,
    pub homology: HomologySpace,
    pub subspace: Subspace,
    pub per_component: Vec<Subspace>,
    /// Columns: the images of the intersection homology basis of every
    /// component, in `H_k(X)` coordinates.
    pub iota_matrix: QMatrix,
    pub ih_ranks: Vec<usize>,
}

impl ImageHomology {
    pub fn rank(&self) -> usize {
        self.subspace.dim()
    }
}

/// `KER^k(X) = Ann(IM_k(X)) ⊆ H^k(X)`, in the coordinates of `cohomology`
/// (whose basis is dual to the homology basis of `image`).
#[derive(Clone, Debug)]
pub struct KernelCohomology {
    pub degree: usize,
    pub cohomology: CohomologySpace,
    pub subspace: Subspace,
    pub image: ImageHomology,
}

impl KernelCohomology {
    pub fn rank(&self) -> usize {
        self.subspace.dim()
    }

    /// `ker(ι^T)`, computed from the ι matrix rather than the subspace.
    pub fn kernel_of_transposed_iota(&self) -> Subspace {
        self.image.iota_matrix.transpose().kernel_basis()
    }
}

/// Components with their stratifications, all brought to a common number of
/// subdivisions, and the matching subdivision of the whole complex.
struct Prepared {
    complex: SimplicialComplex,
    fine: SimplicialComplex,
    sd_map: Option<ChainMap>,
    strats: Vec<Stratification>,
}

fn prepare<F>(k: &SimplicialComplex, stratify: F) -> Result<Prepared>
where
    F: Fn(&SimplicialComplex) -> Result<Stratification>,
{
    if k.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let comps = irreducible_components(k);
    let mut strats = Vec::with_capacity(comps.len());
    let mut levels = Vec::with_capacity(comps.len());
    for c in &comps {
        let s = stratify(c)?;
        levels.push(s.complex().subdivisions() - c.subdivisions());
        strats.push(s);
    }
    let level = levels.iter().copied().max().unwrap_or(0);
    for (s, l) in strats.iter_mut().zip(levels) {
        for _ in l..level {
            *s = s.subdivide()?.0;
        }
    }
    let mut fine = k.clone();
    let mut sd_map: Option<ChainMap> = None;
    for _ in 0..level {
        let sub = barycentric_subdivision(&fine);
        sd_map = Some(match sd_map {
            None => sub.chain_map,
            Some(m) => m.then(&sub.chain_map)?,
        });
        fine = sub.complex;
    }
    Ok(Prepared {
        complex: k.clone(),
        fine,
        sd_map,
        strats,
    })
}

impl Prepared {
    fn degree(&self, degree: usize) -> Result<ImageHomology> {
        let h = homology_or_zero(&self.complex, degree);
        let (hf, to_coarse) = match &self.sd_map {
            None => (h.clone(), None),
            Some(m) => {
                let hf = homology_or_zero(&self.fine, degree);
                let s = induced_by_chain_matrix(&m.matrix(degree), &h, &hf)?;
                let inv = s.inverse().ok_or_else(|| {
                    Error::Internal("subdivision does not induce an isomorphism".into())
                })?;
                (hf, Some((s, inv)))
            }
        };

        let mut per_component = Vec::with_capacity(self.strats.len());
        let mut columns: Vec<SparseVec> = Vec::new();
        let mut ih_ranks = Vec::with_capacity(self.strats.len());
        for s in &self.strats {
            let p = Perversity::middle(s.formal_dim());
            let ih = intersection_homology(s, &p, degree)?;
            ih_ranks.push(ih.rank());
            let mut fine_cols = Vec::with_capacity(ih.rank());
            for z in ih.representatives() {
                let moved = s.complex().transfer_chain(&z, &self.fine)?;
                fine_cols.push(hf.coordinates(&moved)?);
            }
            let cols: Vec<SparseVec> = match &to_coarse {
                None => fine_cols.clone(),
                Some((_, inv)) => fine_cols.iter().map(|c| inv.apply(c)).collect(),
            };
            let span_fine = Subspace::span(hf.rank(), fine_cols);
            per_component.push(match &to_coarse {
                None => span_fine,
                Some((s, _)) => Subspace::preimage(s, &span_fine)?,
            });
            columns.extend(cols);
        }
        let mut subspace = Subspace::zero(h.rank());
        for c in &per_component {
            subspace = subspace.sum(c)?;
        }
        Ok(ImageHomology {
            degree,
            iota_matrix: QMatrix::from_columns(h.rank(), columns),
            homology: h,
            subspace,
            per_component,
            ih_ranks,
        })
    }

    fn top(&self) -> usize {
        self.complex.dim()
    }
}

/// `IM_degree(k)`, using the canonical stratification and middle perversity
/// on every irreducible component. Zero above the dimension.
pub fn image_homology(k: &SimplicialComplex, degree: usize) -> Result<ImageHomology> {
    prepare(k, canonical_stratification)?.degree(degree)
}

/// `IM_d(k)` for `d = 0..=dim k`.
pub fn image_homology_all(k: &SimplicialComplex) -> Result<Vec<ImageHomology>> {
    let prep = prepare(k, canonical_stratification)?;
    (0..=prep.top()).map(|d| prep.degree(d)).collect()
}

/// `IM_d(k)` for `d = 0..=dim k`, with the stratification of each
/// irreducible component chosen by `stratify`.
pub fn image_homology_with<F>(k: &SimplicialComplex, stratify: F) -> Result<Vec<ImageHomology>>
where
    F: Fn(&SimplicialComplex) -> Result<Stratification>,
{
    let prep = prepare(k, stratify)?;
    (0..=prep.top()).map(|d| prep.degree(d)).collect()
}

fn kernel_from_image(image: ImageHomology) -> KernelCohomology {
    KernelCohomology {
        degree: image.degree,
        cohomology: CohomologySpace::from_homology(image.homology.clone()),
        subspace: image.subspace.annihilator(),
        image,
    }
}

/// `KER^degree(k) = Ann(IM_degree(k))`.
pub fn kernel_cohomology(k: &SimplicialComplex, degree: usize) -> Result<KernelCohomology> {
    Ok(kernel_from_image(image_homology(k, degree)?))
}

/// `KER^d(k)` for `d = 0..=dim k`.
pub fn kernel_cohomology_all(k: &SimplicialComplex) -> Result<Vec<KernelCohomology>> {
    Ok(image_homology_all(k)?
        .into_iter()
        .map(kernel_from_image)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{identify_vertices, product};

    fn circle() -> SimplicialComplex {
        SimplicialComplex::build(&[vec!["a", "b"], vec!["b", "c"], vec!["c", "a"]]).unwrap()
    }

    fn icosahedron() -> SimplicialComplex {
        let mut tris: Vec<Vec<String>> = Vec::new();
        let u = |i: usize| format!("u{}", i % 5);
        let l = |i: usize| format!("l{}", i % 5);
        for i in 0..5 {
            tris.push(vec!["t".into(), u(i), u(i + 1)]);
            tris.push(vec![u(i), u(i + 1), l(i)]);
            tris.push(vec![u(i + 1), l(i), l(i + 1)]);
            tris.push(vec![l(i), l(i + 1), "b".into()]);
        }
        SimplicialComplex::build(&tris).unwrap()
    }

    #[test]
    fn torus_image_is_everything() {
        let t = product(&circle(), &circle());
        let ranks: Vec<usize> = image_homology_all(&t)
            .unwrap()
            .iter()
            .map(ImageHomology::rank)
            .collect();
        assert_eq!(ranks, vec![1, 2, 1]);
        for kc in kernel_cohomology_all(&t).unwrap() {
            assert!(kc.subspace.is_zero());
        }
    }

    #[test]
    fn pinched_torus_image_and_kernel() {
        let (n, _) = identify_vertices(&icosahedron(), &[("t", "b")]).unwrap();
        let ims = image_homology_all(&n).unwrap();
        let ranks: Vec<usize> = ims.iter().map(ImageHomology::rank).collect();
        assert_eq!(ranks, vec![1, 0, 1]);
        let ker = kernel_cohomology(&n, 1).unwrap();
        assert_eq!(ker.rank(), 1);
        assert_eq!(ker.subspace, ker.kernel_of_transposed_iota());
    }

    #[test]
    fn subdivided_components_are_mapped_back() {
        // two adjacent point strata are not full, forcing a subdivision
        let k = SimplicialComplex::build(&[
            vec!["a", "b", "c"],
            vec!["a", "b", "d"],
            vec!["a", "c", "d"],
            vec!["b", "c", "d"],
        ])
        .unwrap();
        let ims = image_homology_with(&k, |c| {
            let a = c.vertex("a").unwrap();
            let b = c.vertex("b").unwrap();
            let gens = std::collections::BTreeMap::from([(
                2,
                std::collections::BTreeSet::from([
                    crate::simplicial::Simplex::vertex(a),
                    crate::simplicial::Simplex::vertex(b),
                ]),
            )]);
            Stratification::new(c, 2, &gens)
        })
        .unwrap();
        let ranks: Vec<usize> = ims.iter().map(ImageHomology::rank).collect();
        assert_eq!(ranks, vec![1, 0, 1]);
    }
}

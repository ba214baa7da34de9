//! Perversity-allowable chains, intersection homology, the map `ι` into
//! ordinary homology, image homology and kernel cohomology.

mod checks;
mod components;
mod image;

pub use checks::{
    check_ideal, check_invariance, check_ker_pullback, check_pushforward,
    fundamental_class_membership, mv_im_check, Comparison, FundamentalEntry, IdealFailure,
    IdealReport, InvarianceReport, KerPullbackReport, MvImReport, PushforwardReport,
};
pub use components::irreducible_components;
pub use image::{
    image_homology, image_homology_all, image_homology_with, kernel_cohomology,
    kernel_cohomology_all, ImageHomology, KernelCohomology,
};

use crate::error::{Error, Result};
use crate::exactla::{reduce_columns, QMatrix, SparseVec, Subspace};
use crate::homology::{homology_or_zero, HomologySpace};
use crate::simplicial::Simplex;
use crate::stratify::{Perversity, Stratification};

/// Per-vertex depth in the filtration: the largest `c` with `v ∈ X_{n-c}`,
/// or 0 for regular vertices.
fn vertex_depths(s: &Stratification) -> Vec<usize> {
    let mut depth = vec![0; s.complex().num_vertices()];
    for c in s.codims() {
        for v in s.skeleton_vertices(c) {
            depth[*v] = c;
        }
    }
    depth
}

/// `dim(σ ∩ X_{n-c}) ≤ i − c + p(c)` for every `c`, with `dim ∅ = −∞`.
/// Skeleta are full, so the intersection is the face spanned by the vertices
/// of `σ` in the skeleton.
fn allowable_with(depth: &[usize], p: &Perversity, sigma: &Simplex, i: usize) -> bool {
    let n = p.top_dim();
    (2..=n).all(|c| {
        let m = sigma.vertices().iter().filter(|v| depth[**v] >= c).count() as i64;
        m == 0 || m - 1 <= i as i64 - c as i64 + p.value(c)
    })
}

fn check_perversity(s: &Stratification, p: &Perversity) -> Result<()> {
    if p.top_dim() != s.formal_dim() {
        return Err(Error::InvalidPerversity(format!(
            "perversity is for dimension {}, stratification has dimension {}",
            p.top_dim(),
            s.formal_dim()
        )));
    }
    Ok(())
}

/// Whether the simplex `σ` is `p`-allowable in degree `i`.
pub fn allowable_test(
    s: &Stratification,
    p: &Perversity,
    sigma: &Simplex,
    i: usize,
) -> Result<bool> {
    check_perversity(s, p)?;
    if !s.complex().contains(sigma) {
        return Err(Error::UnknownSimplex(format!("{:?}", sigma.vertices())));
    }
    Ok(allowable_with(&vertex_depths(s), p, sigma, i))
}

/// The allowable `i`-chains and the subspace `IC_i` of those whose boundary
/// is allowable as well.
#[derive(Clone, Debug)]
pub struct AllowableChainGroup {
    pub degree: usize,
    /// Indices (among the `i`-simplices) of the allowable simplices.
    pub allowable: Vec<usize>,
    /// `IC_i` as a subspace of `C_i`.
    pub ic: Subspace,
}

impl AllowableChainGroup {
    pub fn allowable_simplices<'a>(&self, s: &'a Stratification) -> Vec<&'a Simplex> {
        let simplices = s.complex().simplices(self.degree);
        self.allowable.iter().map(|i| &simplices[*i]).collect()
    }
}

struct Allowability {
    depth: Vec<usize>,
}

impl Allowability {
    fn new(s: &Stratification) -> Self {
        Self {
            depth: vertex_depths(s),
        }
    }

    fn indices(&self, s: &Stratification, p: &Perversity, i: usize) -> Vec<usize> {
        s.complex()
            .simplices(i)
            .iter()
            .enumerate()
            .filter(|(_, t)| allowable_with(&self.depth, p, t, i))
            .map(|(j, _)| j)
            .collect()
    }

    /// Basis of `IC_i` as vectors in `C_i`: combinations of allowable
    /// `i`-simplices whose boundary has no non-allowable `(i-1)`-simplex.
    fn ic_basis(
        &self,
        s: &Stratification,
        p: &Perversity,
        i: usize,
    ) -> (Vec<usize>, Vec<SparseVec>) {
        let k = s.complex();
        let cols = self.indices(s, p, i);
        if i == 0 {
            let basis = cols.iter().map(|j| SparseVec::unit(*j)).collect();
            return (cols, basis);
        }
        let lower: Vec<bool> = {
            let mut ok = vec![false; k.num_simplices(i - 1)];
            for j in self.indices(s, p, i - 1) {
                ok[j] = true;
            }
            ok
        };
        let projected: Vec<SparseVec> = cols
            .iter()
            .map(|j| k.boundary_of(i, *j).remap(|r| (!lower[r]).then_some(r)))
            .collect();
        let red = reduce_columns(&projected, true);
        let basis = red
            .kernel
            .iter()
            .map(|v| v.remap(|local| Some(cols[local])))
            .collect();
        (cols, basis)
    }
}

/// Allowable chains of degree `i` and the subspace `IC_i`.
pub fn allowable_chain_group(
    s: &Stratification,
    p: &Perversity,
    i: usize,
) -> Result<AllowableChainGroup> {
    check_perversity(s, p)?;
    let k = s.complex();
    if i > k.dim() {
        return Ok(AllowableChainGroup {
            degree: i,
            allowable: Vec::new(),
            ic: Subspace::zero(0),
        });
    }
    let (allowable, basis) = Allowability::new(s).ic_basis(s, p, i);
    Ok(AllowableChainGroup {
        degree: i,
        allowable,
        ic: Subspace::span(k.num_simplices(i), basis),
    })
}

/// `IH^p_degree`: homology of the complex `IC_*` of allowable chains with
/// allowable boundary. Zero above the formal dimension.
pub fn intersection_homology(
    s: &Stratification,
    p: &Perversity,
    degree: usize,
) -> Result<HomologySpace> {
    check_perversity(s, p)?;
    let k = s.complex();
    if k.is_empty() || degree > k.dim() {
        return Ok(HomologySpace::zero(k.clone(), degree));
    }
    let al = Allowability::new(s);
    let boundaries: Vec<SparseVec> = if degree < k.dim() {
        let (_, upper) = al.ic_basis(s, p, degree + 1);
        upper
            .iter()
            .map(|v| {
                let mut out = SparseVec::new();
                for (j, x) in v.iter() {
                    out.add_scaled(x, &k.boundary_of(degree + 1, j));
                }
                out
            })
            .collect()
    } else {
        Vec::new()
    };
    // allowable cycles: the boundary of a cycle is zero, hence allowable
    let cols = al.indices(s, p, degree);
    let columns: Vec<SparseVec> = cols.iter().map(|j| k.boundary_of(degree, *j)).collect();
    let cycles: Vec<SparseVec> = reduce_columns(&columns, true)
        .kernel
        .iter()
        .map(|v| v.remap(|local| Some(cols[local])))
        .collect();
    // reduce boundaries first so the reducer sees independent vectors
    let boundaries = reduce_columns(&boundaries, false).image;
    Ok(crate::homology::HomologySpace::from_parts(
        k.clone(),
        degree,
        boundaries,
        cycles,
    ))
}

/// `ι : IH_degree → H_degree` in the representative bases.
#[derive(Clone, Debug)]
pub struct IotaMap {
    pub ih: HomologySpace,
    pub h: HomologySpace,
    pub matrix: QMatrix,
}

pub fn iota(s: &Stratification, p: &Perversity, degree: usize) -> Result<IotaMap> {
    let ih = intersection_homology(s, p, degree)?;
    let h = homology_or_zero(s.complex(), degree);
    let cols = ih
        .representative_vecs()
        .iter()
        .map(|z| h.coordinates_vec(z))
        .collect::<Result<Vec<_>>>()?;
    Ok(IotaMap {
        matrix: QMatrix::from_columns(h.rank(), cols),
        ih,
        h,
    })
}

/// `im(ι) ⊆ H_degree`, in the coordinates of the ordinary homology basis.
pub fn iota_image(s: &Stratification, p: &Perversity, degree: usize) -> Result<Subspace> {
    Ok(Subspace::column_span(&iota(s, p, degree)?.matrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{identify_vertices, product, suspension, SimplicialComplex};
    use crate::stratify::canonical_stratification;

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

    fn ih_ranks(s: &Stratification, p: &Perversity) -> Vec<usize> {
        (0..=s.formal_dim())
            .map(|d| intersection_homology(s, p, d).unwrap().rank())
            .collect()
    }

    #[test]
    fn torus_trivial_stratification() {
        let t = product(&circle(), &circle());
        let s = Stratification::trivial(&t).unwrap();
        assert_eq!(ih_ranks(&s, &Perversity::middle(2)), vec![1, 2, 1]);
    }

    #[test]
    fn pinched_torus_middle_perversity() {
        let (n, _) = identify_vertices(&icosahedron(), &[("t", "b")]).unwrap();
        let s = canonical_stratification(&n).unwrap();
        let p = Perversity::middle(2);
        assert_eq!(ih_ranks(&s, &p), vec![1, 0, 1]);
        assert!(iota_image(&s, &p, 1).unwrap().is_zero());
        assert!(iota_image(&s, &p, 2).unwrap().is_full());
    }

    #[test]
    fn suspended_torus_perversities() {
        let k = suspension(&product(&circle(), &circle()));
        let s = canonical_stratification(&k).unwrap();
        assert_eq!(ih_ranks(&s, &Perversity::middle(3)), vec![1, 2, 0, 1]);
        assert_eq!(ih_ranks(&s, &Perversity::upper_middle(3)), vec![1, 0, 2, 1]);
    }

    #[test]
    fn allowability_near_cone_points() {
        let k = suspension(&product(&circle(), &circle()));
        let s = canonical_stratification(&k).unwrap();
        let p = Perversity::middle(3);
        let north = k.vertex("north").unwrap();
        let tri = k
            .simplices(2)
            .iter()
            .find(|t| t.contains_vertex(north))
            .unwrap()
            .clone();
        assert!(!allowable_test(&s, &p, &tri, 2).unwrap());
        let tet = k
            .simplices(3)
            .iter()
            .find(|t| t.contains_vertex(north))
            .unwrap()
            .clone();
        assert!(allowable_test(&s, &p, &tet, 3).unwrap());
        let regular = k
            .simplices(1)
            .iter()
            .find(|e| !e.contains_vertex(north) && !e.contains_vertex(k.vertex("south").unwrap()))
            .unwrap()
            .clone();
        assert!(allowable_test(&s, &p, &regular, 0).unwrap());
    }

    #[test]
    fn ic_is_a_subcomplex() {
        let k = suspension(&product(&circle(), &circle()));
        let s = canonical_stratification(&k).unwrap();
        for p in [
            Perversity::middle(3),
            Perversity::upper_middle(3),
            Perversity::zero(3),
        ] {
            for i in 1..=3 {
                let hi = allowable_chain_group(&s, &p, i).unwrap();
                let lo = allowable_chain_group(&s, &p, i - 1).unwrap();
                let d = k.boundary_matrix(i).unwrap();
                let image = hi.ic.image_under(&d).unwrap();
                assert!(lo.ic.contains(&image).unwrap(), "degree {i}, {p:?}");
            }
        }
    }
}

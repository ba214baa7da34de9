use serde::Serialize;

use crate::error::Result;
use crate::exactla::{QMatrix, SparseVec, Subspace};
use crate::homology::{
    betti_numbers, homology_or_zero, induced_by_chain_matrix, mv_connecting, CohomologyRing,
};
use crate::simplicial::{barycentric_subdivision, SimplicialComplex, SimplicialMap};
use crate::stratify::{canonical_stratification, Codim, Perversity, Stratification};

use super::{
    image_homology, image_homology_all, image_homology_with, intersection_homology,
    irreducible_components, kernel_cohomology, kernel_cohomology_all, ImageHomology,
};

/// Comparison of `f_* IM_k(X)` with `IM_k(Y)`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PushforwardReport {
    pub degree: usize,
    pub source_im_rank: usize,
    pub pushed_rank: usize,
    pub target_im_rank: usize,
    pub contained: bool,
    pub equal: bool,
}

/// `f_* IM_degree(X) ⊆ IM_degree(Y)`, and whether equality holds.
pub fn check_pushforward(f: &SimplicialMap, degree: usize) -> Result<PushforwardReport> {
    let imx = image_homology(f.domain(), degree)?;
    let imy = image_homology(f.codomain(), degree)?;
    let m = induced_by_chain_matrix(&f.chain_matrix(degree), &imx.homology, &imy.homology)?;
    let pushed = imx.subspace.image_under(&m)?;
    Ok(PushforwardReport {
        degree,
        source_im_rank: imx.rank(),
        pushed_rank: pushed.dim(),
        target_im_rank: imy.rank(),
        contained: imy.subspace.contains(&pushed)?,
        equal: imy.subspace == pushed,
    })
}

/// Comparison of `f^* KER^k(Y)` with `KER^k(X)`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct KerPullbackReport {
    pub degree: usize,
    pub source_ker_rank: usize,
    pub target_ker_rank: usize,
    pub pulled_rank: usize,
    /// `f^* KER(Y) ⊆ KER(X)`.
    pub contained: bool,
    pub preimage_rank: usize,
    /// `(f^*)^{-1} KER(X) = KER(Y)`.
    pub preimage_equal: bool,
}

pub fn check_ker_pullback(f: &SimplicialMap, degree: usize) -> Result<KerPullbackReport> {
    let kx = kernel_cohomology(f.domain(), degree)?;
    let ky = kernel_cohomology(f.codomain(), degree)?;
    // f^* in the cohomology bases of the two kernels
    let cols = ky
        .cohomology
        .representatives()
        .iter()
        .map(|psi| kx.cohomology.coordinates(&f.pull_cochain(psi)))
        .collect::<Result<Vec<_>>>()?;
    let fstar = QMatrix::from_columns(kx.cohomology.rank(), cols);
    let pulled = ky.subspace.image_under(&fstar)?;
    let pre = Subspace::preimage(&fstar, &kx.subspace)?;
    Ok(KerPullbackReport {
        degree,
        source_ker_rank: kx.rank(),
        target_ker_rank: ky.rank(),
        pulled_rank: pulled.dim(),
        contained: kx.subspace.contains(&pulled)?,
        preimage_rank: pre.dim(),
        preimage_equal: pre == ky.subspace,
    })
}

/// One named comparison of rank lists.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Comparison {
    pub name: String,
    pub expected: Vec<usize>,
    pub found: Vec<usize>,
    pub pass: bool,
}

impl Comparison {
    fn ranks(name: impl Into<String>, expected: Vec<usize>, found: Vec<usize>) -> Self {
        let pass = expected == found;
        Self {
            name: name.into(),
            expected,
            found,
            pass,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InvarianceReport {
    pub comparisons: Vec<Comparison>,
}

impl InvarianceReport {
    pub fn pass(&self) -> bool {
        self.comparisons.iter().all(|c| c.pass)
    }
}

fn im_ranks(ims: &[ImageHomology]) -> Vec<usize> {
    ims.iter().map(ImageHomology::rank).collect()
}

fn ker_ranks(ims: &[ImageHomology]) -> Vec<usize> {
    ims.iter()
        .map(|im| im.subspace.annihilator().dim())
        .collect()
}

/// Canonical stratification plus one regular vertex as an extra point
/// stratum, preferring a vertex away from the singular set.
fn refined_stratification(c: &SimplicialComplex) -> Result<Stratification> {
    let s = canonical_stratification(c)?;
    let k = s.complex();
    let singular: Vec<usize> = s
        .singular_set()
        .iter()
        .filter(|t| t.len() == 1)
        .map(|t| t.vertices()[0])
        .collect();
    let adj = k.adjacency();
    let regular = |v: &usize| {
        s.codim_of_simplex(&crate::simplicial::Simplex::vertex(*v))
            .map(|c| c == Codim::Regular)
            .unwrap_or(false)
    };
    let far = (0..k.num_vertices())
        .filter(regular)
        .find(|v| adj[*v].iter().all(|w| !singular.contains(w)));
    let v = match far {
        Some(v) => v,
        None => match (0..k.num_vertices()).find(regular) {
            Some(v) => v,
            None => return Ok(s),
        },
    };
    s.with_extra_points(&[v])
}

fn ih_ranks(s: &Stratification) -> Result<Vec<usize>> {
    let p = Perversity::middle(s.formal_dim());
    (0..=s.formal_dim())
        .map(|d| intersection_homology(s, &p, d).map(|h| h.rank()))
        .collect()
}

/// Invariance of H, IM and KER under barycentric subdivision, and of IH and
/// IM under refinement of the canonical stratifications by an extra point.
pub fn check_invariance(k: &SimplicialComplex) -> Result<InvarianceReport> {
    let mut out = Vec::new();
    let ims = image_homology_all(k)?;

    let sub = barycentric_subdivision(k);
    let sd = &sub.complex;
    out.push(Comparison::ranks(
        "H ranks under subdivision",
        betti_numbers(k),
        betti_numbers(sd),
    ));
    let ims_sd = image_homology_all(sd)?;
    out.push(Comparison::ranks(
        "IM ranks under subdivision",
        im_ranks(&ims),
        im_ranks(&ims_sd),
    ));
    out.push(Comparison::ranks(
        "KER ranks under subdivision",
        ker_ranks(&ims),
        ker_ranks(&ims_sd),
    ));
    let mut pushed = Vec::new();
    let mut same = true;
    for (im, im_sd) in ims.iter().zip(&ims_sd) {
        let m = induced_by_chain_matrix(
            &sub.chain_map.matrix(im.degree),
            &im.homology,
            &im_sd.homology,
        )?;
        let image = im.subspace.image_under(&m)?;
        same &= image == im_sd.subspace;
        pushed.push(image.dim());
    }
    out.push(Comparison {
        name: "sd_* IM = IM of subdivision".into(),
        expected: im_ranks(&ims_sd),
        found: pushed,
        pass: same,
    });

    for (i, c) in irreducible_components(k).iter().enumerate() {
        let canonical = canonical_stratification(c)?;
        let refined = refined_stratification(c)?;
        out.push(Comparison::ranks(
            format!("IH ranks of component {i} under refinement"),
            ih_ranks(&canonical)?,
            ih_ranks(&refined)?,
        ));
    }
    let ims_ref = image_homology_with(k, refined_stratification)?;
    out.push(Comparison {
        name: "IM under refinement".into(),
        expected: im_ranks(&ims),
        found: im_ranks(&ims_ref),
        pass: ims
            .iter()
            .zip(&ims_ref)
            .all(|(a, b)| a.subspace == b.subspace),
    });
    out.push(Comparison::ranks(
        "KER ranks under refinement",
        ker_ranks(&ims),
        ker_ranks(&ims_ref),
    ));
    Ok(InvarianceReport { comparisons: out })
}

/// Behaviour of image homology along the Mayer–Vietoris connecting map.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MvImReport {
    pub degree: usize,
    pub connecting_rank: usize,
    pub im_source_rank: usize,
    /// `dim ∂(IM_k(X))`.
    pub boundary_of_im_rank: usize,
    /// `dim IM_{k-1}(A∩B)`.
    pub im_target_rank: usize,
    /// `∂(IM_k(X)) ⊆ IM_{k-1}(A∩B)`.
    pub contained: bool,
    /// `dim (IM_{k-1}(A∩B) ∩ ker(H(A∩B) → H(A) ⊕ H(B)))`.
    pub kernel_dim: usize,
    /// `kernel_dim − boundary_of_im_rank`; zero iff the IM sequence is exact
    /// at `IM_{k-1}(A∩B)`.
    pub defect: i64,
}

pub fn mv_im_check(k: &SimplicialComplex, a: &str, b: &str, degree: usize) -> Result<MvImReport> {
    let conn = mv_connecting(k, a, b, degree)?;
    let im = image_homology(k, degree)?;
    let pushed = im.subspace.image_under(&conn.matrix)?;
    let ab = &conn.intersection;
    let Some(lower) = degree.checked_sub(1).filter(|_| !ab.is_empty()) else {
        return Ok(MvImReport {
            degree,
            connecting_rank: conn.matrix.rank(),
            im_source_rank: im.rank(),
            boundary_of_im_rank: 0,
            im_target_rank: 0,
            contained: true,
            kernel_dim: 0,
            defect: 0,
        });
    };
    let im_ab = image_homology(ab, lower)?;
    let pa = k.subcomplex(a)?;
    let pb = k.subcomplex(b)?;
    let ja = induced_by_chain_matrix(
        &SimplicialMap::inclusion(ab, &pa)?.chain_matrix(lower),
        &im_ab.homology,
        &homology_or_zero(&pa, lower),
    )?;
    let jb = induced_by_chain_matrix(
        &SimplicialMap::inclusion(ab, &pb)?.chain_matrix(lower),
        &im_ab.homology,
        &homology_or_zero(&pb, lower),
    )?;
    let ker_j = ja.vstack(&jb)?.kernel_basis();
    let kernel_dim = im_ab.subspace.intersection(&ker_j)?.dim();
    Ok(MvImReport {
        degree,
        connecting_rank: conn.matrix.rank(),
        im_source_rank: im.rank(),
        boundary_of_im_rank: pushed.dim(),
        im_target_rank: im_ab.rank(),
        contained: im_ab.subspace.contains(&pushed)?,
        kernel_dim,
        defect: kernel_dim as i64 - pushed.dim() as i64,
    })
}

/// Whether the fundamental class of a component lies in `IM_d(X)`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FundamentalEntry {
    pub component: usize,
    pub dim: usize,
    /// `None` when the component has no fundamental class (non-orientable or
    /// with boundary), in which case it is skipped.
    pub member: Option<bool>,
}

pub fn fundamental_class_membership(k: &SimplicialComplex) -> Result<Vec<FundamentalEntry>> {
    let ims = image_homology_all(k)?;
    let mut out = Vec::new();
    for (i, c) in irreducible_components(k).iter().enumerate() {
        let d = c.dim();
        let h = homology_or_zero(c, d);
        let member = if h.rank() == 1 {
            let z = c.transfer_chain(&h.representatives()[0], k)?;
            let coords = ims[d].homology.coordinates(&z)?;
            Some(ims[d].subspace.contains_vector(&coords))
        } else {
            None
        };
        out.push(FundamentalEntry {
            component: i,
            dim: d,
            member,
        });
    }
    Ok(out)
}

/// A product `u⌣v` (or `v⌣u`) of a basis vector `u` of `KER^p` and a basis
/// class `v` of `H^q` that falls outside `KER^{p+q}`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdealFailure {
    pub ker_degree: usize,
    pub ker_index: usize,
    pub class_degree: usize,
    pub class_index: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdealReport {
    pub products_checked: usize,
    pub failures: Vec<IdealFailure>,
    pub ker0_rank: usize,
}

impl IdealReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty() && self.ker0_rank == 0
    }
}

/// Whether `KER^*` is closed under cup products with all of `H^*`, and
/// whether `KER^0 = 0`.
pub fn check_ideal(k: &SimplicialComplex) -> Result<IdealReport> {
    let kers = kernel_cohomology_all(k)?;
    let ring = CohomologyRing::new(k)?;
    let n = k.dim();
    let mut products_checked = 0;
    let mut failures = Vec::new();
    for (p, kp) in kers.iter().enumerate() {
        for (i, u) in kp.subspace.basis().iter().enumerate() {
            for q in 0..=n - p {
                for j in 0..ring.rank(q) {
                    let v = SparseVec::unit(j);
                    let target = &kers[p + q].subspace;
                    let left = ring.product(p, u, q, &v)?;
                    let right = ring.product(q, &v, p, u)?;
                    products_checked += 2;
                    if !target.contains_vector(&left) || !target.contains_vector(&right) {
                        failures.push(IdealFailure {
                            ker_degree: p,
                            ker_index: i,
                            class_degree: q,
                            class_index: j,
                        });
                    }
                }
            }
        }
    }
    Ok(IdealReport {
        products_checked,
        failures,
        ker0_rank: kers[0].rank(),
    })
}

#![allow(dead_code)]

pub mod props;

use imhom::exactla::Subspace;
use imhom::homology::induced_map;
use imhom::imcore::irreducible_components;
use imhom::simplicial::{SimplicialComplex, SimplicialMap};
use imhom::stratify::is_rational_homology_manifold;

/// Betti numbers from `b_d = n_d − rank ∂_d − rank ∂_{d+1}`, with ranks from
/// fraction-free elimination on dense boundary matrices.
pub fn betti_oracle(k: &SimplicialComplex) -> Vec<usize> {
    let rank = |d: usize| {
        if d == 0 || d > k.dim() {
            0
        } else {
            k.boundary_matrix(d).unwrap().rank()
        }
    };
    (0..=k.dim())
        .map(|d| k.num_simplices(d) - rank(d) - rank(d + 1))
        .collect()
}

/// Image ranks for a complex whose irreducible components are all rational
/// homology manifolds: there `ι` is an isomorphism, so `IM_d` is the span of
/// the images of `H_d(component) → H_d(X)`.
pub fn manifold_components_im_oracle(k: &SimplicialComplex) -> Vec<usize> {
    let comps = irreducible_components(k);
    for c in &comps {
        assert!(is_rational_homology_manifold(c).unwrap());
    }
    (0..=k.dim())
        .map(|d| {
            let mut span: Option<Subspace> = None;
            for c in &comps {
                let m = induced_map(&SimplicialMap::inclusion(c, k).unwrap(), d).unwrap();
                let s = Subspace::column_span(&m);
                span = Some(match span {
                    None => s,
                    Some(t) => t.sum(&s).unwrap(),
                });
            }
            span.map_or(0, |s| s.dim())
        })
        .collect()
}

/// Intersection homology of the suspension of a closed `m`-manifold `L`
/// with isolated singular points of codimension `n = m + 1`:
/// `IH_k = H_k(L)` for `k < n−1−p(n)`, `0` at `k = n−1−p(n)`, and
/// `H̃_{k−1}(L)` above.
pub fn suspension_ih_oracle(link_betti: &[usize], p_n: i64) -> Vec<usize> {
    let n = link_betti.len() as i64;
    let cut = n - 1 - p_n;
    (0..=n)
        .map(|k| {
            if k < cut {
                link_betti[k as usize]
            } else if k == cut {
                0
            } else {
                let b = link_betti[(k - 1) as usize];
                if k == 1 {
                    b - 1
                } else {
                    b
                }
            }
        })
        .collect()
}

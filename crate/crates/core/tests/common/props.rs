//! Property checks and generators shared by the property tests and the
//! acceptance suite.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use imhom::exactla::{int, QMatrix, SparseVec, Subspace};
use imhom::homology::mv_exactness;
use imhom::imcore::allowable_chain_group;
use imhom::simplicial::{Simplex, SimplicialComplex};
use imhom::stratify::{Perversity, Stratification};

fn entry() -> impl Strategy<Value = i64> {
    prop_oneof![3 => Just(0i64), 2 => -3i64..=3]
}

pub fn small_matrix() -> impl Strategy<Value = QMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(entry(), c), r)
            .prop_map(|rows| QMatrix::from_rows_i64(&rows))
    })
}

pub fn small_subspace() -> impl Strategy<Value = Subspace> {
    (1usize..=6).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(entry(), n), 0..=4).prop_map(
            move |vs| {
                let vecs = vs.iter().map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|(_, x)| **x != 0)
                        .map(|(i, x)| (i, int(*x)))
                        .collect::<SparseVec>()
                });
                Subspace::span(n, vecs)
            },
        )
    })
}

fn build(simplices: Vec<BTreeSet<usize>>) -> Option<SimplicialComplex> {
    let tops: Vec<Vec<String>> = simplices
        .into_iter()
        .filter(|s| s.len() >= 2)
        .map(|s| s.into_iter().map(|v| format!("v{v}")).collect())
        .collect();
    if tops.is_empty() {
        return None;
    }
    SimplicialComplex::build(&tops).ok()
}

/// Complexes on at most 7 vertices generated by a few random simplices of
/// dimension at most 3.
pub fn small_complex() -> impl Strategy<Value = SimplicialComplex> {
    proptest::collection::vec(proptest::collection::btree_set(0usize..7, 1..=4), 1..=7)
        .prop_filter_map("degenerate", build)
}

/// A complex with a closed cover `A`, `B`: every maximal simplex is put in
/// `A`, `B` or both.
pub fn covered_complex() -> impl Strategy<Value = SimplicialComplex> {
    (small_complex(), proptest::collection::vec(0u8..3, 8)).prop_map(|(k, sides)| {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (i, m) in k.maximal_simplices().iter().enumerate() {
            match sides[i % sides.len()] {
                0 => a.push(m.clone()),
                1 => b.push(m.clone()),
                _ => {
                    a.push(m.clone());
                    b.push(m.clone());
                }
            }
        }
        k.with_subcomplex("A", a)
            .unwrap()
            .with_subcomplex("B", b)
            .unwrap()
    })
}

/// A pure 3-complex with a random filtration `X_0 ⊆ X_1` given by vertices
/// and edges.
pub fn stratified_3complex() -> impl Strategy<Value = Stratification> {
    (
        proptest::collection::vec(proptest::collection::btree_set(0usize..7, 4), 1..=4),
        proptest::collection::vec(any::<bool>(), 7),
        proptest::collection::vec(any::<prop::sample::Index>(), 0..=3),
    )
        .prop_filter_map("invalid stratification", |(tets, points, edges)| {
            let k = build(tets)?;
            let x0: BTreeSet<Simplex> = k
                .simplices(0)
                .iter()
                .filter(|v| points[v.vertices()[0] % 7])
                .cloned()
                .collect();
            let mut x1 = x0.clone();
            for e in &edges {
                x1.insert(e.get(k.simplices(1)).clone());
            }
            let gens = BTreeMap::from([(2, x1), (3, x0)]);
            Stratification::new(&k, 3, &gens).ok()
        })
}

pub fn perversities3() -> Vec<Perversity> {
    vec![
        Perversity::zero(3),
        Perversity::middle(3),
        Perversity::upper_middle(3),
        Perversity::top(3),
    ]
}

pub fn boundary_squared_zero(k: &SimplicialComplex) -> Result<(), TestCaseError> {
    for d in 2..=k.dim() {
        let dd = k
            .boundary_matrix(d - 1)
            .unwrap()
            .mul(&k.boundary_matrix(d).unwrap())
            .unwrap();
        prop_assert!(dd.is_zero(), "∂∂ ≠ 0 in degree {}", d);
    }
    Ok(())
}

pub fn rank_nullity(m: &QMatrix) -> Result<(), TestCaseError> {
    let kernel = m.kernel_basis();
    prop_assert_eq!(m.rank() + kernel.dim(), m.cols());
    prop_assert_eq!(m.image_basis().dim(), m.rank());
    for v in kernel.basis() {
        prop_assert!(m.apply(v).is_zero());
    }
    Ok(())
}

pub fn annihilator_involution(v: &Subspace) -> Result<(), TestCaseError> {
    let ann = v.annihilator();
    prop_assert_eq!(ann.dim() + v.dim(), v.ambient_dim());
    prop_assert!(v.pairing(ann.basis()).is_zero());
    prop_assert_eq!(&ann.annihilator(), v);
    Ok(())
}

pub fn ic_is_subcomplex(s: &Stratification) -> Result<(), TestCaseError> {
    let k = s.complex();
    for p in perversities3() {
        for i in 1..=k.dim() {
            let hi = allowable_chain_group(s, &p, i).unwrap();
            let lo = allowable_chain_group(s, &p, i - 1).unwrap();
            let image = hi.ic.image_under(&k.boundary_matrix(i).unwrap()).unwrap();
            prop_assert!(lo.ic.contains(&image).unwrap(), "degree {} {:?}", i, p);
        }
    }
    Ok(())
}

/// `p ≤ q` implies every `p`-allowable simplex and every `p`-intersection
/// chain is one for `q` too.
pub fn perversity_monotone(s: &Stratification) -> Result<(), TestCaseError> {
    let ps = perversities3();
    for p in &ps {
        for q in ps.iter().filter(|q| p.le(q)) {
            for i in 0..=s.complex().dim() {
                let gp = allowable_chain_group(s, p, i).unwrap();
                let gq = allowable_chain_group(s, q, i).unwrap();
                let sp: BTreeSet<usize> = gp.allowable.iter().copied().collect();
                let sq: BTreeSet<usize> = gq.allowable.iter().copied().collect();
                prop_assert!(sp.is_subset(&sq));
                prop_assert!(gq.ic.contains(&gp.ic).unwrap());
            }
        }
    }
    Ok(())
}

pub fn mv_sequence_exact(k: &SimplicialComplex) -> Result<(), TestCaseError> {
    for node in mv_exactness(k, "A", "B").unwrap() {
        prop_assert!(node.exact, "{:?}", node);
    }
    Ok(())
}

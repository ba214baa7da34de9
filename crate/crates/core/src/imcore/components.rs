use std::collections::{BTreeMap, BTreeSet};

use crate::simplicial::{Simplex, SimplicialComplex};

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Irreducible components: maximal simplices of each dimension `d` are
/// grouped by adjacency across `(d-1)`-faces whose link is two points (the
/// face lies in exactly two simplices of the next dimension, both maximal),
/// and each group is closed under faces.
///
/// Components keep ambient labels and vertex order. They are listed by
/// decreasing dimension, then by their first maximal simplex.
pub fn irreducible_components(k: &SimplicialComplex) -> Vec<SimplicialComplex> {
    let maximal = k.maximal_simplices();
    let is_maximal: BTreeSet<&Simplex> = maximal.iter().collect();
    let mut parent: Vec<usize> = (0..maximal.len()).collect();
    let position: BTreeMap<&Simplex, usize> =
        maximal.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut seen_faces = BTreeSet::new();
    for m in maximal.iter().filter(|m| m.dim() > 0) {
        for i in 0..m.len() {
            let f = m.face(i);
            if !seen_faces.insert(f.clone()) {
                continue;
            }
            let cof = k.cofacets(&f);
            if cof.len() == 2 && cof.iter().all(|c| is_maximal.contains(c)) {
                let a = find(&mut parent, position[&cof[0]]);
                let b = find(&mut parent, position[&cof[1]]);
                parent[a] = b;
            }
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..maximal.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut comps: Vec<(usize, Simplex, SimplicialComplex)> = groups
        .into_values()
        .map(|members| {
            let mut set = BTreeSet::new();
            for m in &members {
                for f in maximal[*m].all_faces() {
                    set.insert(f);
                }
                set.insert(maximal[*m].clone());
            }
            set.retain(|s| !s.is_empty());
            let first = maximal[members[0]].clone();
            (first.dim(), first, k.subcomplex_from_set(&set))
        })
        .collect();
    comps.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    comps.into_iter().map(|(_, _, c)| c).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{disjoint_union, product};

    fn circle() -> SimplicialComplex {
        SimplicialComplex::build(&[vec!["a", "b"], vec!["b", "c"], vec!["c", "a"]]).unwrap()
    }

    fn tetra_boundary(p: &str) -> SimplicialComplex {
        let v: Vec<String> = ["a", "b", "c", "d"]
            .iter()
            .map(|x| format!("{p}{x}"))
            .collect();
        SimplicialComplex::build(&[
            vec![&v[0], &v[1], &v[2]],
            vec![&v[0], &v[1], &v[3]],
            vec![&v[0], &v[2], &v[3]],
            vec![&v[1], &v[2], &v[3]],
        ])
        .unwrap()
    }

    #[test]
    fn disjoint_pieces_are_separate_components() {
        let k = disjoint_union(&product(&circle(), &circle()), &tetra_boundary("s"));
        let comps = irreducible_components(&k);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].f_vector(), vec![9, 27, 18]);
        assert_eq!(comps[1].f_vector(), vec![4, 6, 4]);
    }

    #[test]
    fn spheres_sharing_a_vertex_stay_apart() {
        let mut tris = Vec::new();
        for p in ["x", "y"] {
            let t = tetra_boundary(p);
            for m in t.maximal_simplices() {
                tris.push(
                    m.vertices()
                        .iter()
                        .map(|v| {
                            let l = t.label(*v);
                            if l.ends_with('a') {
                                "shared".to_string()
                            } else {
                                l.to_string()
                            }
                        })
                        .collect::<Vec<_>>(),
                );
            }
        }
        let k = SimplicialComplex::build(&tris).unwrap();
        assert_eq!(irreducible_components(&k).len(), 2);
    }

    #[test]
    fn whiskers_form_their_own_components() {
        let k = SimplicialComplex::build(&[vec!["a", "b", "c"], vec!["c", "d"], vec!["d", "e"]])
            .unwrap();
        let comps = irreducible_components(&k);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].dim(), 2);
        assert_eq!(comps[1].f_vector(), vec![3, 2]);
    }
}

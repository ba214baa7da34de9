use std::collections::BTreeSet;

use super::{Simplex, SimplicialComplex};

fn fresh_label(taken: &BTreeSet<String>, wanted: &str) -> String {
    let mut l = wanted.to_string();
    while taken.contains(&l) {
        l.push('\'');
    }
    l
}

fn tuples(k: &SimplicialComplex) -> Vec<Vec<usize>> {
    k.maximal_simplices()
        .iter()
        .map(|s| s.vertices().to_vec())
        .collect()
}

/// Cone with apex labelled `apex` (primed until unique), ordered last.
pub fn cone(k: &SimplicialComplex, apex: &str) -> SimplicialComplex {
    let taken: BTreeSet<String> = k.labels().iter().cloned().collect();
    let mut labels = k.labels().to_vec();
    let a = labels.len();
    labels.push(fresh_label(&taken, apex));
    let tops = tuples(k)
        .into_iter()
        .map(|mut t| {
            t.push(a);
            t
        })
        .collect();
    SimplicialComplex::from_indexed(labels, tops).expect("valid cone")
}

/// Unreduced suspension with cone points `north` and `south` appended last.
pub fn suspension(k: &SimplicialComplex) -> SimplicialComplex {
    let taken: BTreeSet<String> = k.labels().iter().cloned().collect();
    let mut labels = k.labels().to_vec();
    let n = labels.len();
    labels.push(fresh_label(&taken, "north"));
    let s = labels.len();
    let south = fresh_label(&labels.iter().cloned().collect(), "south");
    labels.push(south);
    let mut tops = Vec::new();
    for t in tuples(k) {
        for apex in [n, s] {
            let mut c = t.clone();
            c.push(apex);
            tops.push(c);
        }
    }
    SimplicialComplex::from_indexed(labels, tops).expect("valid suspension")
}

/// Disjoint union; labels of `b` that clash with `a` are primed. Named
/// subcomplexes are not carried over.
pub fn disjoint_union(a: &SimplicialComplex, b: &SimplicialComplex) -> SimplicialComplex {
    let mut taken: BTreeSet<String> = a.labels().iter().cloned().collect();
    let mut labels = a.labels().to_vec();
    let off = labels.len();
    for l in b.labels() {
        let fresh = fresh_label(&taken, l);
        taken.insert(fresh.clone());
        labels.push(fresh);
    }
    let mut tops = tuples(a);
    tops.extend(
        tuples(b)
            .into_iter()
            .map(|t| t.into_iter().map(|v| v + off).collect()),
    );
    SimplicialComplex::from_indexed(labels, tops).expect("valid union")
}

/// Staircase triangulation of `|a| × |b|`.
///
/// Vertices are pairs `(u, v)`, labelled `u.v` and ordered lexicographically
/// by `(index of u, index of v)`. For maximal simplices `σ ⊂ a`, `τ ⊂ b`, every
/// monotone lattice path through `σ × τ` (in the fixed vertex orders) gives a
/// top simplex.
pub fn product(a: &SimplicialComplex, b: &SimplicialComplex) -> SimplicialComplex {
    let nb = b.num_vertices();
    let mut labels = Vec::with_capacity(a.num_vertices() * nb);
    for la in a.labels() {
        for lb in b.labels() {
            labels.push(format!("{la}.{lb}"));
        }
    }
    let mut tops: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in a.maximal_simplices() {
        for t in b.maximal_simplices() {
            for path in staircases(s, t) {
                tops.insert(path.into_iter().map(|(u, v)| u * nb + v).collect());
            }
        }
    }
    SimplicialComplex::from_indexed(labels, tops.into_iter().collect()).expect("valid product")
}

fn staircases(s: &Simplex, t: &Simplex) -> Vec<Vec<(usize, usize)>> {
    let (p, q) = (s.len() - 1, t.len() - 1);
    let mut out = Vec::new();
    // choose which of the p+q steps move in the first factor
    for mask in 0u64..(1u64 << (p + q)) {
        if mask.count_ones() as usize != p {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let mut path = vec![(s.vertices()[0], t.vertices()[0])];
        for step in 0..p + q {
            if mask & (1 << step) != 0 {
                i += 1;
            } else {
                j += 1;
            }
            path.push((s.vertices()[i], t.vertices()[j]));
        }
        out.push(path);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> SimplicialComplex {
        SimplicialComplex::build(&[vec!["a", "b"], vec!["b", "c"], vec!["c", "a"]]).unwrap()
    }

    #[test]
    fn grid_torus_counts() {
        let t = product(&circle(), &circle());
        assert_eq!(t.f_vector(), vec![9, 27, 18]);
        assert_eq!(t.euler_characteristic(), 0);
    }

    #[test]
    fn suspension_of_circle() {
        let s = suspension(&circle());
        assert_eq!(s.f_vector(), vec![5, 9, 6]);
        assert_eq!(s.euler_characteristic(), 2);
    }

    #[test]
    fn cone_is_acyclic_by_euler_characteristic() {
        let c = cone(&circle(), "apex");
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn disjoint_union_primes_clashing_labels() {
        let u = disjoint_union(&circle(), &circle());
        assert_eq!(u.num_vertices(), 6);
        assert!(u.vertex("a'").is_some());
        assert_eq!(u.euler_characteristic(), 0);
    }
}

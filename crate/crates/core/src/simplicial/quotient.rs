use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Simplex, SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};

/// Builds the image complex of `k` under the vertex map `to_new` (onto
/// `labels`), carrying named subcomplexes along as images.
fn image_complex(
    k: &SimplicialComplex,
    labels: Vec<String>,
    to_new: &[usize],
) -> Result<SimplicialComplex> {
    let image = |s: &Simplex| {
        let set: BTreeSet<usize> = s.vertices().iter().map(|v| to_new[*v]).collect();
        Simplex::from_sorted(set.into_iter().collect())
    };
    let tops: Vec<Vec<usize>> = k
        .maximal_simplices()
        .iter()
        .map(|s| image(s).vertices().to_vec())
        .collect();
    let q = SimplicialComplex::from_indexed(labels, tops)?;
    let mut subs = BTreeMap::new();
    for (name, set) in k.subcomplexes() {
        subs.insert(name.clone(), set.iter().map(image).collect());
    }
    Ok(q.rebuild_with(subs, 0))
}

/// Identifies each pair `(u, v)` of vertices (by label), keeping `u`'s label.
///
/// Each pair must be at edge distance at least 3 (or in different connected
/// components), no vertex may occur in two pairs, and no two distinct
/// simplices may become equal; together these make the quotient complex a
/// triangulation of the quotient space.
pub fn identify_vertices(
    k: &SimplicialComplex,
    pairs: &[(&str, &str)],
) -> Result<(SimplicialComplex, SimplicialMap)> {
    let mut merged: HashMap<usize, usize> = HashMap::new();
    let mut used = BTreeSet::new();
    for (a, b) in pairs {
        let pair_err =
            |msg: &str| Error::PairPrecondition(a.to_string(), b.to_string(), msg.into());
        let u = k
            .vertex(a)
            .ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
        let v = k
            .vertex(b)
            .ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
        if u == v || !used.insert(u) || !used.insert(v) {
            return Err(pair_err("vertex already identified"));
        }
        if let Some(d) = k.vertex_distance(u, v) {
            if d < 3 {
                return Err(pair_err(&format!("edge distance {d} < 3")));
            }
        }
        merged.insert(v, u);
    }

    let mut to_new = vec![usize::MAX; k.num_vertices()];
    let mut labels = Vec::new();
    for (v, slot) in to_new.iter_mut().enumerate() {
        if !merged.contains_key(&v) {
            *slot = labels.len();
            labels.push(k.label(v).to_string());
        }
    }
    for (v, u) in &merged {
        to_new[*v] = to_new[*u];
    }

    // distinct positive-dimensional simplices must stay distinct
    let mut seen: HashMap<Vec<usize>, &Simplex> = HashMap::new();
    for s in k.all_simplices().filter(|s| s.len() > 1) {
        let mut img: Vec<usize> = s.vertices().iter().map(|v| to_new[*v]).collect();
        img.sort_unstable();
        if let Some(other) = seen.insert(img, s) {
            let culprit = pairs
                .iter()
                .find(|(a, b)| {
                    let (u, v) = (k.vertex(a).unwrap(), k.vertex(b).unwrap());
                    let hits = |t: &Simplex| t.contains_vertex(u) || t.contains_vertex(v);
                    hits(s) && hits(other)
                })
                .copied()
                .unwrap_or(pairs[0]);
            return Err(Error::PairPrecondition(
                culprit.0.to_string(),
                culprit.1.to_string(),
                format!(
                    "simplices {} and {} would be identified",
                    k.display(other),
                    k.display(s)
                ),
            ));
        }
    }

    let q = image_complex(k, labels, &to_new)?;
    let f = SimplicialMap::new(k.clone(), q.clone(), to_new)?;
    Ok((q, f))
}

/// Collapses the named subcomplex to a single vertex (labelled like the
/// subcomplex's first vertex). Simplices meeting the subcomplex in two or more
/// vertices degenerate; the returned map's chain map sends them to zero.
///
/// The subcomplex must be full, connected and nonempty, and the complex must
/// have been barycentrically subdivided at least twice since construction.
pub fn collapse_subcomplex(
    k: &SimplicialComplex,
    name: &str,
) -> Result<(SimplicialComplex, SimplicialMap)> {
    let set = k.subcomplex_simplices(name)?;
    if set.is_empty() {
        return Err(Error::EmptySubcomplex(name.to_string()));
    }
    if k.subdivisions() < 2 {
        return Err(Error::NotSubdivided(k.subdivisions()));
    }
    if !k.is_full_set(set) {
        return Err(Error::NotFull(name.to_string()));
    }
    if !k.is_connected_set(set) {
        return Err(Error::NotConnected(name.to_string()));
    }
    let inside: BTreeSet<usize> = set
        .iter()
        .filter(|s| s.len() == 1)
        .map(|s| s.vertices()[0])
        .collect();
    let first = *inside.iter().next().expect("nonempty");
    let mut to_new = vec![usize::MAX; k.num_vertices()];
    let mut labels = Vec::new();
    for (v, slot) in to_new.iter_mut().enumerate() {
        if inside.contains(&v) && v != first {
            continue;
        }
        *slot = labels.len();
        labels.push(k.label(v).to_string());
    }
    for v in &inside {
        to_new[*v] = to_new[first];
    }
    let q = image_complex(k, labels, &to_new)?;
    let f = SimplicialMap::new(k.clone(), q.clone(), to_new)?;
    Ok((q, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::barycentric_subdivision;

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
    fn pinched_icosahedron() {
        let ico = icosahedron();
        assert_eq!(ico.f_vector(), vec![12, 30, 20]);
        let (q, f) = identify_vertices(&ico, &[("t", "b")]).unwrap();
        assert_eq!(q.f_vector(), vec![11, 30, 20]);
        assert_eq!(q.euler_characteristic(), 1);
        assert_eq!(f.codomain().num_vertices(), 11);
    }

    #[test]
    fn rejects_close_pairs() {
        let ico = icosahedron();
        assert!(matches!(
            identify_vertices(&ico, &[("t", "l0")]),
            Err(Error::PairPrecondition(..))
        ));
    }

    #[test]
    fn empty_pair_list_is_identity() {
        let ico = icosahedron();
        let (q, f) = identify_vertices(&ico, &[]).unwrap();
        assert_eq!(q.f_vector(), ico.f_vector());
        assert_eq!(f.vertex_map(), (0..12).collect::<Vec<_>>().as_slice());
    }

    #[test]
    fn collapse_requires_double_subdivision() {
        let t = SimplicialComplex::build(&[vec!["a", "b", "c"]]).unwrap();
        let t = t
            .with_subcomplex("e", vec![t.simplex(&["a", "b"]).unwrap()])
            .unwrap();
        assert!(matches!(
            collapse_subcomplex(&t, "e"),
            Err(Error::NotSubdivided(0))
        ));
        let sd2 = barycentric_subdivision(&barycentric_subdivision(&t).complex).complex;
        let (q, _) = collapse_subcomplex(&sd2, "e").unwrap();
        assert_eq!(q.euler_characteristic(), 1);
    }
}

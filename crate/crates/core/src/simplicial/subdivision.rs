use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{ChainMap, Simplex, SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};
use crate::exactla::{int, QMatrix, SparseVec};

/// A barycentric subdivision together with its subdivision chain map.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    pub chain_map: ChainMap,
}

/// Label of the barycenter of `s`. Vertices keep their own label, so labels
/// are compatible between a subcomplex and its ambient complex.
fn barycenter_label(k: &SimplicialComplex, s: &Simplex) -> String {
    if s.len() == 1 {
        k.label(s.vertices()[0]).to_string()
    } else {
        let names: Vec<&str> = s.vertices().iter().map(|v| k.label(*v)).collect();
        format!("[{}]", names.join(","))
    }
}

/// Barycentric subdivision: one vertex per simplex, flags of faces as
/// simplices. Vertices of the subdivision are ordered by the dimension of the
/// simplex they subdivide, then by that simplex's order, so every flag is
/// listed in increasing vertex order. Named subcomplexes are carried forward
/// (and become full).
pub fn barycentric_subdivision(k: &SimplicialComplex) -> Subdivision {
    let mut offsets = Vec::with_capacity(k.dim() + 1);
    let mut labels = Vec::new();
    for d in 0..=k.dim() {
        offsets.push(labels.len());
        for s in k.simplices(d) {
            labels.push(barycenter_label(k, s));
        }
    }
    if k.is_empty() {
        offsets.clear();
    }
    let bary = |s: &Simplex| offsets[s.dim()] + k.index_of(s).expect("simplex of k");

    let mut tops: Vec<Vec<usize>> = Vec::new();
    for m in k.maximal_simplices() {
        for flag in full_flags(m) {
            tops.push(flag.iter().map(&bary).collect());
        }
    }
    let sd = SimplicialComplex::from_indexed(labels, tops).expect("flags are valid simplices");

    // which original simplex each new vertex stands for
    let mut origin: Vec<Simplex> = Vec::with_capacity(sd.num_vertices());
    for d in 0..=k.dim() {
        origin.extend(k.simplices(d).iter().cloned());
    }

    let mut subs = BTreeMap::new();
    for (name, set) in k.subcomplexes() {
        let carried: BTreeSet<Simplex> = sd
            .all_simplices()
            .filter(|t| t.vertices().iter().all(|v| set.contains(&origin[*v])))
            .cloned()
            .collect();
        subs.insert(name.clone(), carried);
    }
    let sd = sd.rebuild_with(subs, k.subdivisions() + 1);

    let matrices = subdivision_matrices(k, &sd, &bary);
    Subdivision {
        chain_map: ChainMap::new(k.clone(), sd.clone(), matrices),
        complex: sd,
    }
}

/// `sd(f) : sd(X) → sd(Y)`, sending the barycenter of `σ` to the barycenter
/// of `f(σ)`.
pub fn subdivide_map(f: &SimplicialMap) -> Result<SimplicialMap> {
    let (x, y) = (f.domain(), f.codomain());
    let sx = barycentric_subdivision(x).complex;
    let sy = barycentric_subdivision(y).complex;
    let mut vm = vec![0; sx.num_vertices()];
    for s in x.all_simplices() {
        let img: BTreeSet<usize> = s.vertices().iter().map(|v| f.vertex_map()[*v]).collect();
        let img = Simplex::from_sorted(img.into_iter().collect());
        let src = sx
            .vertex(&barycenter_label(x, s))
            .expect("barycenter of a simplex");
        vm[src] = sy
            .vertex(&barycenter_label(y, &img))
            .ok_or_else(|| Error::Internal("image of a simplex is not a simplex".into()))?;
    }
    SimplicialMap::new(sx, sy, vm)
}

/// Every maximal chain of faces `v0 ⊂ v0v1 ⊂ … ⊂ s`, listed from the vertex up.
fn full_flags(s: &Simplex) -> Vec<Vec<Simplex>> {
    if s.len() == 1 {
        return vec![vec![s.clone()]];
    }
    let mut out = Vec::new();
    for i in 0..s.len() {
        for mut flag in full_flags(&s.face(i)) {
            flag.push(s.clone());
            out.push(flag);
        }
    }
    out
}

/// `sd(v) = v`, `sd(σ) = b_σ · sd(∂σ)`, where the cone puts the barycenter
/// first; moving it past the `d` other vertices to its sorted (last) position
/// contributes `(-1)^d`.
fn subdivision_matrices<F: Fn(&Simplex) -> usize>(
    k: &SimplicialComplex,
    sd: &SimplicialComplex,
    bary: &F,
) -> Vec<QMatrix> {
    if k.is_empty() {
        return Vec::new();
    }
    let mut images: Vec<Vec<SparseVec>> = Vec::with_capacity(k.dim() + 1);
    images.push(
        k.simplices(0)
            .iter()
            .map(|s| {
                let v = Simplex::vertex(bary(s));
                SparseVec::unit(sd.index_of(&v).expect("vertex"))
            })
            .collect(),
    );
    for d in 1..=k.dim() {
        let sign = int(if d % 2 == 0 { 1 } else { -1 });
        let mut layer = Vec::with_capacity(k.num_simplices(d));
        for (i, s) in k.simplices(d).iter().enumerate() {
            let b = bary(s);
            let mut sd_boundary = SparseVec::new();
            for (j, x) in k.boundary_of(d, i).iter() {
                sd_boundary.add_scaled(x, &images[d - 1][j]);
            }
            let mut cache: HashMap<usize, usize> = HashMap::new();
            let mut v = SparseVec::new();
            for (t, x) in sd_boundary.iter() {
                let idx = *cache.entry(t).or_insert_with(|| {
                    let mut verts = sd.simplices(d - 1)[t].vertices().to_vec();
                    verts.push(b);
                    sd.index_of(&Simplex::from_sorted(verts))
                        .expect("cone on a flag is a flag")
                });
                v.add_at(idx, &(x * &sign));
            }
            layer.push(v);
        }
        images.push(layer);
    }
    images
        .into_iter()
        .enumerate()
        .map(|(d, cols)| QMatrix::from_columns(sd.num_simplices(d), cols))
        .collect()
}

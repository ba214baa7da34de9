//! Finite abstract simplicial complexes.
//!
//! Vertices are indexed `0..n` in a fixed total order chosen at construction;
//! each vertex also carries a string label used for I/O and for matching
//! vertices between related complexes (a subcomplex and its ambient complex,
//! a subdivision of a subcomplex and the subdivision of the ambient complex).
//! Simplices are sorted vertex-index tuples, and the global vertex order
//! determines both boundary signs and the Alexander–Whitney cup product.

mod chain;
mod constructions;
mod map;
mod quotient;
mod subdivision;

pub use chain::{Chain, Cochain};
pub use constructions::{cone, disjoint_union, product, suspension};
pub use map::{ChainMap, SimplicialMap};
pub use quotient::{collapse_subcomplex, identify_vertices};
pub use subdivision::{barycentric_subdivision, subdivide_map, Subdivision};

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{int, QMatrix, SparseVec};

/// A simplex as a strictly increasing tuple of vertex indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts the vertices. Panics on a repeated vertex.
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        assert!(
            vertices.windows(2).all(|w| w[0] < w[1]),
            "repeated vertex in simplex"
        );
        Simplex(vertices)
    }

    /// Builds from vertices already strictly increasing.
    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertex(v: usize) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Dimension; panics on the empty simplex.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    /// The codimension-one face omitting position `i`.
    pub fn face(&self, i: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }

    /// All nonempty faces, including the simplex itself.
    pub fn all_faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u64..(1u64 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let set: BTreeSet<usize> = self.0.iter().chain(other.0.iter()).copied().collect();
        Simplex(set.into_iter().collect())
    }

    pub fn minus(&self, other: &Simplex) -> Simplex {
        Simplex(
            self.0
                .iter()
                .copied()
                .filter(|v| !other.contains_vertex(*v))
                .collect(),
        )
    }
}

struct Inner {
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    maximal: Vec<Simplex>,
    vertex_maximal: Vec<Vec<usize>>,
    subcomplexes: BTreeMap<String, BTreeSet<Simplex>>,
    subdivisions: u32,
}

/// Finite abstract simplicial complex with named subcomplexes.
///
/// Cheap to clone: the data is shared and immutable.
#[derive(Clone)]
pub struct SimplicialComplex {
    inner: Arc<Inner>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.labels == other.inner.labels
                && self.inner.simplices == other.inner.simplices
                && self.inner.subcomplexes == other.inner.subcomplexes)
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<usize> = self.inner.simplices.iter().map(Vec::len).collect();
        f.debug_struct("SimplicialComplex")
            .field("f_vector", &counts)
            .field(
                "subcomplexes",
                &self.inner.subcomplexes.keys().collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl SimplicialComplex {
    /// Face closure of `maximal` over the vertex set `labels` (in that order).
    /// Every declared vertex is a 0-simplex, even if it lies in no listed
    /// simplex. The empty complex is allowed here (links can be empty).
    pub fn from_indexed(labels: Vec<String>, maximal: Vec<Vec<usize>>) -> Result<Self> {
        let mut label_index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if label_index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(l.clone()));
            }
        }
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        for v in 0..labels.len() {
            all.insert(Simplex::vertex(v));
        }
        for tuple in maximal {
            let mut sorted = tuple.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                let names: Vec<&str> = tuple
                    .iter()
                    .map(|v| labels.get(*v).map_or("?", String::as_str))
                    .collect();
                return Err(Error::RepeatedVertex(format!("({})", names.join(","))));
            }
            if let Some(&bad) = sorted.iter().find(|v| **v >= labels.len()) {
                return Err(Error::UnknownVertex(bad.to_string()));
            }
            if sorted.is_empty() {
                continue;
            }
            let s = Simplex(sorted);
            if all.contains(&s) {
                continue;
            }
            all.extend(s.all_faces());
        }
        Ok(Self::from_closed_set(
            labels,
            label_index,
            all,
            BTreeMap::new(),
            0,
        ))
    }

    fn from_closed_set(
        labels: Vec<String>,
        label_index: HashMap<String, usize>,
        all: BTreeSet<Simplex>,
        subcomplexes: BTreeMap<String, BTreeSet<Simplex>>,
        subdivisions: u32,
    ) -> Self {
        let top = all.iter().map(Simplex::len).max().unwrap_or(0);
        let mut simplices: Vec<Vec<Simplex>> = vec![Vec::new(); top];
        for s in all {
            simplices[s.dim()].push(s);
        }
        for layer in &mut simplices {
            layer.sort();
        }
        let index: Vec<HashMap<Simplex, usize>> = simplices
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();
        // maximal = not a facet of any simplex one dimension up
        let mut has_coface: Vec<Vec<bool>> =
            simplices.iter().map(|l| vec![false; l.len()]).collect();
        for d in 1..simplices.len() {
            for s in &simplices[d] {
                for i in 0..s.len() {
                    let f = s.face(i);
                    has_coface[d - 1][index[d - 1][&f]] = true;
                }
            }
        }
        let mut maximal = Vec::new();
        for (d, layer) in simplices.iter().enumerate() {
            for (i, s) in layer.iter().enumerate() {
                if !has_coface[d][i] {
                    maximal.push(s.clone());
                }
            }
        }
        let mut vertex_maximal = vec![Vec::new(); labels.len()];
        for (m, s) in maximal.iter().enumerate() {
            for v in s.vertices() {
                vertex_maximal[*v].push(m);
            }
        }
        SimplicialComplex {
            inner: Arc::new(Inner {
                labels,
                label_index,
                simplices,
                index,
                maximal,
                vertex_maximal,
                subcomplexes,
                subdivisions,
            }),
        }
    }

    /// Face closure of `maximal_simplices`, given by vertex label. Vertices are
    /// ordered by first appearance.
    pub fn build<S: AsRef<str>>(maximal_simplices: &[Vec<S>]) -> Result<Self> {
        if maximal_simplices.iter().all(Vec::is_empty) {
            return Err(Error::EmptyComplex);
        }
        let mut labels: Vec<String> = Vec::new();
        let mut seen: HashMap<String, usize> = HashMap::new();
        let mut tuples = Vec::with_capacity(maximal_simplices.len());
        for t in maximal_simplices {
            let mut idx = Vec::with_capacity(t.len());
            for v in t {
                let v = v.as_ref();
                let i = *seen.entry(v.to_string()).or_insert_with(|| {
                    labels.push(v.to_string());
                    labels.len() - 1
                });
                idx.push(i);
            }
            tuples.push(idx);
        }
        Self::from_indexed(labels, tuples)
    }

    /// Face closure with an explicit vertex order.
    pub fn with_vertices<S: AsRef<str>, T: AsRef<str>>(
        vertices: &[S],
        maximal_simplices: &[Vec<T>],
    ) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let labels: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let lookup: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut tuples = Vec::with_capacity(maximal_simplices.len());
        for t in maximal_simplices {
            let mut idx = Vec::with_capacity(t.len());
            for v in t {
                let v = v.as_ref();
                idx.push(
                    *lookup
                        .get(v)
                        .ok_or_else(|| Error::UnknownVertex(v.to_string()))?,
                );
            }
            tuples.push(idx);
        }
        Self::from_indexed(labels, tuples)
    }

    pub fn is_empty(&self) -> bool {
        self.inner.simplices.is_empty()
    }

    /// Dimension (0 for the empty complex; check [`is_empty`](Self::is_empty)).
    pub fn dim(&self) -> usize {
        self.inner.simplices.len().saturating_sub(1)
    }

    pub fn num_vertices(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.inner.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.inner.label_index.get(label).copied()
    }

    /// Simplex from vertex labels.
    pub fn simplex<S: AsRef<str>>(&self, labels: &[S]) -> Result<Simplex> {
        let mut v = Vec::with_capacity(labels.len());
        for l in labels {
            v.push(
                self.vertex(l.as_ref())
                    .ok_or_else(|| Error::UnknownVertex(l.as_ref().to_string()))?,
            );
        }
        let mut sorted = v.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex(format!(
                "({})",
                labels
                    .iter()
                    .map(|l| l.as_ref())
                    .collect::<Vec<_>>()
                    .join(",")
            )));
        }
        Ok(Simplex(sorted))
    }

    pub fn display(&self, s: &Simplex) -> String {
        let names: Vec<&str> = s.vertices().iter().map(|v| self.label(*v)).collect();
        format!("({})", names.join(","))
    }

    pub fn num_simplices(&self, d: usize) -> usize {
        self.inner.simplices.get(d).map_or(0, Vec::len)
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.inner.simplices.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.inner.simplices.iter().flatten()
    }

    /// Number of simplices per dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.inner.simplices.iter().map(Vec::len).collect()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        self.inner.index.get(s.dim())?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    pub fn maximal_simplices(&self) -> &[Simplex] {
        &self.inner.maximal
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.inner.maximal.iter().all(|s| s.dim() == d)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.inner
            .simplices
            .iter()
            .enumerate()
            .map(|(d, l)| {
                if d % 2 == 0 {
                    l.len() as i64
                } else {
                    -(l.len() as i64)
                }
            })
            .sum()
    }

    /// Number of barycentric subdivisions applied since the complex was built.
    pub fn subdivisions(&self) -> u32 {
        self.inner.subdivisions
    }

    /// Boundary of the `idx`-th `d`-simplex as a vector over `(d-1)`-simplices.
    pub fn boundary_of(&self, d: usize, idx: usize) -> SparseVec {
        if d == 0 {
            return SparseVec::new();
        }
        let s = &self.inner.simplices[d][idx];
        let mut v = SparseVec::new();
        for i in 0..s.len() {
            let f = s.face(i);
            let j = self.inner.index[d - 1][&f];
            v.set(j, int(if i % 2 == 0 { 1 } else { -1 }));
        }
        v
    }

    /// Boundary columns of all `d`-simplices (empty vectors in degree 0 and
    /// above the dimension).
    pub fn boundary_columns(&self, d: usize) -> Vec<SparseVec> {
        (0..self.num_simplices(d))
            .map(|i| self.boundary_of(d, i))
            .collect()
    }

    /// Matrix of `∂_degree : C_degree → C_{degree-1}`.
    pub fn boundary_matrix(&self, degree: usize) -> Result<QMatrix> {
        if self.is_empty() || degree > self.dim() {
            return Err(Error::DegreeOutOfRange {
                degree: degree as i64,
                max: self.dim() as i64,
            });
        }
        let rows = if degree == 0 {
            0
        } else {
            self.num_simplices(degree - 1)
        };
        Ok(QMatrix::from_columns(rows, self.boundary_columns(degree)))
    }

    /// Maximal simplices that contain `s`.
    pub fn maximal_cofaces(&self, s: &Simplex) -> Vec<&Simplex> {
        let Some(&v0) = s.vertices().first() else {
            return self.inner.maximal.iter().collect();
        };
        self.inner.vertex_maximal[v0]
            .iter()
            .map(|m| &self.inner.maximal[*m])
            .filter(|m| s.is_face_of(m))
            .collect()
    }

    /// Simplices of dimension `dim(s)+1` having `s` as a face.
    pub fn cofacets(&self, s: &Simplex) -> Vec<Simplex> {
        let mut out = BTreeSet::new();
        for m in self.maximal_cofaces(s) {
            for v in m.vertices() {
                if !s.contains_vertex(*v) {
                    out.insert(s.union(&Simplex::vertex(*v)));
                }
            }
        }
        out.into_iter().collect()
    }

    /// Link of `s`: simplices disjoint from `s` whose join with `s` is in the
    /// complex. Vertex labels are inherited.
    pub fn link(&self, s: &Simplex) -> Result<SimplicialComplex> {
        if !self.contains(s) {
            return Err(Error::UnknownSimplex(format!("{:?}", s.vertices())));
        }
        let pieces: Vec<Simplex> = self
            .maximal_cofaces(s)
            .into_iter()
            .map(|m| m.minus(s))
            .filter(|t| !t.is_empty())
            .collect();
        let verts: BTreeSet<usize> = pieces.iter().flat_map(|t| t.vertices().to_vec()).collect();
        Ok(self.induced_on(&verts, pieces.into_iter().collect()))
    }

    /// Standalone complex on `verts` (in ambient order, with ambient labels)
    /// generated by `generators`, which must only use `verts`.
    fn induced_on(&self, verts: &BTreeSet<usize>, generators: Vec<Simplex>) -> SimplicialComplex {
        let local: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let labels: Vec<String> = verts.iter().map(|v| self.label(*v).to_string()).collect();
        let tuples = generators
            .into_iter()
            .map(|t| t.vertices().iter().map(|v| local[v]).collect())
            .collect();
        SimplicialComplex::from_indexed(labels, tuples).expect("generators are valid simplices")
    }

    /// Standalone complex made of a face-closed set of simplices of `self`,
    /// keeping ambient labels and vertex order.
    pub fn subcomplex_from_set(&self, set: &BTreeSet<Simplex>) -> SimplicialComplex {
        let verts: BTreeSet<usize> = set.iter().flat_map(|s| s.vertices().to_vec()).collect();
        self.induced_on(&verts, set.iter().cloned().collect())
    }

    /// Adds (or replaces) a named subcomplex generated by `simplices`.
    pub fn with_subcomplex<I: IntoIterator<Item = Simplex>>(
        &self,
        name: &str,
        simplices: I,
    ) -> Result<SimplicialComplex> {
        let mut closed = BTreeSet::new();
        for s in simplices {
            if !self.contains(&s) {
                return Err(Error::UnknownSimplex(self.display_checked(&s)));
            }
            if !closed.contains(&s) {
                closed.extend(s.all_faces());
            }
        }
        let mut subs = self.inner.subcomplexes.clone();
        subs.insert(name.to_string(), closed);
        Ok(self.rebuild_with(subs, self.inner.subdivisions))
    }

    fn display_checked(&self, s: &Simplex) -> String {
        if s.vertices().iter().all(|v| *v < self.num_vertices()) {
            self.display(s)
        } else {
            format!("{:?}", s.vertices())
        }
    }

    pub(crate) fn rebuild_with(
        &self,
        subcomplexes: BTreeMap<String, BTreeSet<Simplex>>,
        subdivisions: u32,
    ) -> SimplicialComplex {
        let inner = &self.inner;
        SimplicialComplex {
            inner: Arc::new(Inner {
                labels: inner.labels.clone(),
                label_index: inner.label_index.clone(),
                simplices: inner.simplices.clone(),
                index: inner.index.clone(),
                maximal: inner.maximal.clone(),
                vertex_maximal: inner.vertex_maximal.clone(),
                subcomplexes,
                subdivisions,
            }),
        }
    }

    /// Copy without named subcomplexes.
    pub fn without_subcomplexes(&self) -> SimplicialComplex {
        self.rebuild_with(BTreeMap::new(), self.inner.subdivisions)
    }

    pub fn subcomplex_names(&self) -> impl Iterator<Item = &str> {
        self.inner.subcomplexes.keys().map(String::as_str)
    }

    pub fn subcomplexes(&self) -> &BTreeMap<String, BTreeSet<Simplex>> {
        &self.inner.subcomplexes
    }

    pub fn subcomplex_simplices(&self, name: &str) -> Result<&BTreeSet<Simplex>> {
        self.inner
            .subcomplexes
            .get(name)
            .ok_or_else(|| Error::UnknownSubcomplex(name.to_string()))
    }

    /// Named subcomplex as a standalone complex.
    pub fn subcomplex(&self, name: &str) -> Result<SimplicialComplex> {
        Ok(self.subcomplex_from_set(self.subcomplex_simplices(name)?))
    }

    /// True iff every simplex spanned by vertices of the named subcomplex is in it.
    pub fn is_full(&self, name: &str) -> Result<bool> {
        Ok(self.is_full_set(self.subcomplex_simplices(name)?))
    }

    pub fn is_full_set(&self, set: &BTreeSet<Simplex>) -> bool {
        let verts: BTreeSet<usize> = set
            .iter()
            .filter(|s| s.len() == 1)
            .map(|s| s.vertices()[0])
            .collect();
        self.all_simplices()
            .filter(|s| s.vertices().iter().all(|v| verts.contains(v)))
            .all(|s| set.contains(s))
    }

    /// All simplices with every vertex in `verts`.
    pub fn full_span(&self, verts: &BTreeSet<usize>) -> BTreeSet<Simplex> {
        self.all_simplices()
            .filter(|s| s.vertices().iter().all(|v| verts.contains(v)))
            .cloned()
            .collect()
    }

    /// Vertex adjacency lists of the 1-skeleton.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.num_vertices()];
        for e in self.simplices(1) {
            let (a, b) = (e.vertices()[0], e.vertices()[1]);
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Edge-path distance between two vertices, `None` if disconnected.
    pub fn vertex_distance(&self, u: usize, v: usize) -> Option<usize> {
        let adj = self.adjacency();
        let mut dist = vec![usize::MAX; self.num_vertices()];
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                return Some(dist[x]);
            }
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Whether the vertices of a face-closed set form one edge-connected piece.
    pub fn is_connected_set(&self, set: &BTreeSet<Simplex>) -> bool {
        let verts: Vec<usize> = set
            .iter()
            .filter(|s| s.len() == 1)
            .map(|s| s.vertices()[0])
            .collect();
        let Some(&start) = verts.first() else {
            return false;
        };
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for s in set.iter().filter(|s| s.len() == 2) {
            let (a, b) = (s.vertices()[0], s.vertices()[1]);
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for y in adj.get(&x).into_iter().flatten() {
                if seen.insert(*y) {
                    stack.push(*y);
                }
            }
        }
        seen.len() == verts.len()
    }

    /// Converts a chain to a coordinate vector over the `degree`-simplices.
    pub fn chain_to_vec(&self, chain: &Chain) -> Result<SparseVec> {
        let d = chain.degree();
        let mut v = SparseVec::new();
        for (s, x) in chain.iter() {
            let i = self
                .inner
                .index
                .get(d)
                .and_then(|m| m.get(s))
                .ok_or_else(|| Error::UnknownSimplex(self.display_checked(s)))?;
            v.set(*i, x.clone());
        }
        Ok(v)
    }

    pub fn vec_to_chain(&self, degree: usize, v: &SparseVec) -> Chain {
        Chain::from_terms(
            degree,
            v.iter()
                .map(|(i, x)| (self.inner.simplices[degree][i].clone(), x.clone())),
        )
    }

    pub fn cochain_to_vec(&self, cochain: &Cochain) -> Result<SparseVec> {
        self.chain_to_vec(cochain.as_chain())
    }

    pub fn vec_to_cochain(&self, degree: usize, v: &SparseVec) -> Cochain {
        Cochain::from_chain(self.vec_to_chain(degree, v))
    }

    /// Re-expresses a chain of `self` as a chain of `target`, matching vertices
    /// by label. Fails if some simplex has no counterpart in `target`.
    pub fn transfer_chain(&self, chain: &Chain, target: &SimplicialComplex) -> Result<Chain> {
        let mut out = Chain::zero(chain.degree());
        for (s, x) in chain.iter() {
            let mut verts = Vec::with_capacity(s.len());
            for v in s.vertices() {
                let l = self.label(*v);
                verts.push(
                    target
                        .vertex(l)
                        .ok_or_else(|| Error::UnknownVertex(l.to_string()))?,
                );
            }
            let sign = map::sort_sign(&mut verts);
            let t = Simplex::from_sorted(verts);
            if !target.contains(&t) {
                return Err(Error::UnknownSimplex(self.display(s)));
            }
            out.add_term(t, &(x * int(sign)));
        }
        Ok(out)
    }

    /// `∂` of a chain.
    pub fn boundary(&self, chain: &Chain) -> Result<Chain> {
        let d = chain.degree();
        if d == 0 {
            return Ok(Chain::zero(0));
        }
        let v = self.chain_to_vec(chain)?;
        let mut out = SparseVec::new();
        for (i, x) in v.iter() {
            out.add_scaled(x, &self.boundary_of(d, i));
        }
        Ok(self.vec_to_chain(d - 1, &out))
    }

    /// Coboundary `δφ = φ∘∂` of a cochain.
    pub fn coboundary(&self, cochain: &Cochain) -> Result<Cochain> {
        let d = cochain.degree();
        let phi = self.cochain_to_vec(cochain)?;
        let mut out = SparseVec::new();
        for j in 0..self.num_simplices(d + 1) {
            let x = phi.dot(&self.boundary_of(d + 1, j));
            out.set(j, x);
        }
        Ok(self.vec_to_cochain(d + 1, &out))
    }
}

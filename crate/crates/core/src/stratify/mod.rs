//! Stratifications, perversities and link-based manifold detection.
//!
//! A stratification of a complex of formal dimension `n` is a descending chain
//! of closed subcomplexes `X_{n-2} ⊇ X_{n-3} ⊇ … ⊇ X_0`, indexed here by real
//! codimension `c = 2..=n`. Every skeleton is kept full in the complex, so it
//! is determined by its vertex set and `σ ∩ X_{n-c}` is the face of `σ`
//! spanned by its vertices in the skeleton.

mod perversity;

pub use perversity::Perversity;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::homology::betti_numbers;
use crate::simplicial::{barycentric_subdivision, Simplex, SimplicialComplex, Subdivision};

/// Stratum of a simplex: off the singular set, or in `X_{n-c}` for the
/// largest such `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Codim {
    Regular,
    Singular(usize),
}

/// A filtration of a complex by full closed subcomplexes.
#[derive(Clone, Debug)]
pub struct Stratification {
    complex: SimplicialComplex,
    formal_dim: usize,
    /// `skeleta[c - 2]` is the vertex set of `X_{n-c}`.
    skeleta: Vec<BTreeSet<usize>>,
    auto_subdivided: bool,
}

impl PartialEq for Stratification {
    fn eq(&self, other: &Self) -> bool {
        self.complex == other.complex
            && self.formal_dim == other.formal_dim
            && self.skeleta == other.skeleta
    }
}

impl Eq for Stratification {}

fn closure(k: &SimplicialComplex, gens: impl IntoIterator<Item = Simplex>) -> BTreeSet<Simplex> {
    let mut out = BTreeSet::new();
    for s in gens {
        if out.contains(&s) {
            continue;
        }
        for f in s.all_faces() {
            out.insert(f);
        }
        out.insert(s);
    }
    out.retain(|s| !s.is_empty() && k.contains(s));
    out
}

fn set_dim(set: &BTreeSet<Simplex>) -> Option<usize> {
    set.iter().map(Simplex::dim).max()
}

fn vertex_set(set: &BTreeSet<Simplex>) -> BTreeSet<usize> {
    set.iter()
        .filter(|s| s.len() == 1)
        .map(|s| s.vertices()[0])
        .collect()
}

const CARRY_PREFIX: &str = "\u{1}carry";

/// Subdivides `k` once, carrying the given simplex sets along (as the
/// subcomplexes spanned by barycenters of their simplices).
fn subdivide_carrying(
    k: &SimplicialComplex,
    sets: &[BTreeSet<Simplex>],
) -> Result<(Subdivision, Vec<BTreeSet<Simplex>>)> {
    let mut tagged = k.clone();
    for (i, set) in sets.iter().enumerate() {
        tagged = tagged.with_subcomplex(&format!("{CARRY_PREFIX}{i}"), set.iter().cloned())?;
    }
    let sub = barycentric_subdivision(&tagged);
    let carried = (0..sets.len())
        .map(|i| {
            sub.complex
                .subcomplex_simplices(&format!("{CARRY_PREFIX}{i}"))
                .cloned()
        })
        .collect::<Result<Vec<_>>>()?;
    let kept: BTreeMap<String, BTreeSet<Simplex>> = sub
        .complex
        .subcomplexes()
        .iter()
        .filter(|(name, _)| !name.starts_with(CARRY_PREFIX))
        .map(|(n, s)| (n.clone(), s.clone()))
        .collect();
    let complex = sub.complex.rebuild_with(kept, sub.complex.subdivisions());
    let chain_map = crate::simplicial::ChainMap::new(
        k.clone(),
        complex.clone(),
        (0..=k.dim()).map(|d| sub.chain_map.matrix(d)).collect(),
    );
    Ok((Subdivision { complex, chain_map }, carried))
}

impl Stratification {
    /// Builds a stratification from generating simplices of the skeleta,
    /// keyed by codimension `c ∈ 2..=n`. A codimension that is not listed
    /// gets the skeleton of the next larger listed codimension (empty if there
    /// is none). If some skeleton is not full the complex is subdivided once.
    pub fn new(
        complex: &SimplicialComplex,
        formal_dim: usize,
        generators: &BTreeMap<usize, BTreeSet<Simplex>>,
    ) -> Result<Self> {
        if complex.is_empty() {
            return Err(Error::EmptyComplex);
        }
        if formal_dim != complex.dim() {
            return Err(Error::InvalidStratification(format!(
                "formal dimension {formal_dim} differs from the complex dimension {}",
                complex.dim()
            )));
        }
        let n = formal_dim;
        if let Some(c) = generators.keys().find(|c| !(2..=n).contains(*c)) {
            return Err(Error::InvalidStratification(format!(
                "codimension {c} outside 2..={n}"
            )));
        }
        for s in generators.values().flatten() {
            if !complex.contains(s) {
                return Err(Error::UnknownSimplex(format!("{:?}", s.vertices())));
            }
        }

        let mut sets: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); n.saturating_sub(1)];
        for c in (2..=n).rev() {
            sets[c - 2] = match generators.get(&c) {
                Some(g) => closure(complex, g.iter().cloned()),
                None if c < n => sets[c - 1].clone(),
                None => BTreeSet::new(),
            };
        }
        for c in 2..=n {
            if let Some(d) = set_dim(&sets[c - 2]) {
                if d + c > n {
                    return Err(Error::InvalidStratification(format!(
                        "X_{} has dimension {d}",
                        n - c
                    )));
                }
            }
            if c < n && !sets[c - 1].is_subset(&sets[c - 2]) {
                return Err(Error::InvalidStratification(format!(
                    "X_{} is not contained in X_{}",
                    n - c - 1,
                    n - c
                )));
            }
        }

        let (complex, sets, auto_subdivided) = if sets.iter().all(|s| complex.is_full_set(s)) {
            (complex.clone(), sets, false)
        } else {
            let (sub, carried) = subdivide_carrying(complex, &sets)?;
            (sub.complex, carried, true)
        };
        Ok(Self {
            formal_dim: n,
            skeleta: sets.iter().map(vertex_set).collect(),
            complex,
            auto_subdivided,
        })
    }

    /// All skeleta empty.
    pub fn trivial(complex: &SimplicialComplex) -> Result<Self> {
        Self::new(complex, complex.dim(), &BTreeMap::new())
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn formal_dim(&self) -> usize {
        self.formal_dim
    }

    /// True if construction had to subdivide the input complex.
    pub fn auto_subdivided(&self) -> bool {
        self.auto_subdivided
    }

    /// Codimensions `2..=n`.
    pub fn codims(&self) -> std::ops::RangeInclusive<usize> {
        2..=self.formal_dim
    }

    /// Vertex set of `X_{n-c}`.
    pub fn skeleton_vertices(&self, c: usize) -> &BTreeSet<usize> {
        &self.skeleta[c - 2]
    }

    /// Simplices of `X_{n-c}`.
    pub fn skeleton(&self, c: usize) -> BTreeSet<Simplex> {
        self.complex.full_span(&self.skeleta[c - 2])
    }

    /// The singular set `X_{n-2}` (empty when `n < 2`).
    pub fn singular_set(&self) -> BTreeSet<Simplex> {
        if self.formal_dim < 2 {
            BTreeSet::new()
        } else {
            self.skeleton(2)
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.skeleta.iter().all(BTreeSet::is_empty)
    }

    /// Largest `c` with `σ ⊆ X_{n-c}`, or `Regular`.
    pub fn codim_of_simplex(&self, s: &Simplex) -> Result<Codim> {
        if !self.complex.contains(s) {
            return Err(Error::UnknownSimplex(format!("{:?}", s.vertices())));
        }
        for c in self.codims().rev() {
            if s.vertices().iter().all(|v| self.skeleta[c - 2].contains(v)) {
                return Ok(Codim::Singular(c));
            }
        }
        Ok(Codim::Regular)
    }

    /// Generators keyed by codimension, suitable for [`Stratification::new`].
    pub fn generators(&self) -> BTreeMap<usize, BTreeSet<Simplex>> {
        self.codims().map(|c| (c, self.skeleton(c))).collect()
    }

    /// The same filtration on the barycentric subdivision, with the
    /// subdivision chain map.
    pub fn subdivide(&self) -> Result<(Stratification, Subdivision)> {
        let sets: Vec<BTreeSet<Simplex>> = self.codims().map(|c| self.skeleton(c)).collect();
        let (sub, carried) = subdivide_carrying(&self.complex, &sets)?;
        Ok((
            Stratification {
                complex: sub.complex.clone(),
                formal_dim: self.formal_dim,
                skeleta: carried.iter().map(vertex_set).collect(),
                auto_subdivided: false,
            },
            sub,
        ))
    }

    /// Refinement adding the given vertices (as point strata) to every
    /// skeleton. May subdivide to keep the skeleta full.
    pub fn with_extra_points(&self, vertices: &[usize]) -> Result<Stratification> {
        let mut gens = self.generators();
        for set in gens.values_mut() {
            set.extend(vertices.iter().map(|v| Simplex::vertex(*v)));
        }
        Stratification::new(&self.complex, self.formal_dim, &gens)
    }
}

/// See [`Stratification::codim_of_simplex`].
pub fn codim_of_simplex(s: &Stratification, sigma: &Simplex) -> Result<Codim> {
    s.codim_of_simplex(sigma)
}

/// Whether `l` has the reduced rational homology of `S^m` (`m = -1` means
/// the empty complex).
pub fn is_homology_sphere(l: &SimplicialComplex, m: isize) -> bool {
    if m < 0 {
        return l.is_empty();
    }
    if l.is_empty() {
        return false;
    }
    let b = betti_numbers(l);
    b.iter().enumerate().all(|(j, x)| {
        let reduced = if j == 0 { x - 1 } else { *x };
        reduced == usize::from(j as isize == m)
    }) && l.dim() as isize >= m
}

/// Whether `l` is nonempty with the rational homology of a point.
pub fn is_acyclic(l: &SimplicialComplex) -> bool {
    !l.is_empty()
        && betti_numbers(l)
            .iter()
            .enumerate()
            .all(|(j, x)| *x == usize::from(j == 0))
}

fn require_pure(k: &SimplicialComplex) -> Result<()> {
    if k.is_empty() {
        return Err(Error::EmptyComplex);
    }
    if let Some(m) = k.maximal_simplices().iter().find(|m| m.dim() != k.dim()) {
        return Err(Error::NonPure(k.display(m), k.dim()));
    }
    Ok(())
}

/// Whether `σ`'s link in `k` is a homology sphere of dimension `n - dim σ - 1`.
fn has_sphere_link(k: &SimplicialComplex, n: usize, s: &Simplex) -> bool {
    let m = n as isize - s.dim() as isize - 1;
    match m {
        ..=-1 => true,
        0 => k.cofacets(s).len() == 2,
        _ => is_homology_sphere(&k.link(s).expect("simplex of k"), m),
    }
}

/// True iff every simplex's link has the reduced rational homology of a
/// sphere of the complementary dimension. Requires a pure complex.
pub fn is_rational_homology_manifold(k: &SimplicialComplex) -> Result<bool> {
    require_pure(k)?;
    let n = k.dim();
    Ok(k.all_simplices().all(|s| has_sphere_link(k, n, s)))
}

/// Checks that every `(n-1)`-simplex lies in one or two `n`-simplices and
/// returns those in exactly one (the boundary faces).
fn pseudomanifold_boundary(k: &SimplicialComplex) -> Result<Vec<Simplex>> {
    let n = k.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut boundary = Vec::new();
    for f in k.simplices(n - 1) {
        let count = k.cofacets(f).len();
        if count > 2 {
            return Err(Error::NotPseudomanifold {
                simplex: k.display(f),
                count,
            });
        }
        if count == 1 {
            boundary.push(f.clone());
        }
    }
    Ok(boundary)
}

/// Checks the pseudomanifold condition (every codimension-one simplex in at
/// most two top simplices, so boundary is allowed) on a pure complex.
pub fn check_pseudomanifold(k: &SimplicialComplex) -> Result<()> {
    require_pure(k)?;
    pseudomanifold_boundary(k).map(|_| ())
}

/// Simplices of a standalone complex `l` of dimension `d` that are not
/// interior points of its `d`-dimensional manifold part: simplices in no
/// `d`-simplex, and simplices whose link is not a homology sphere.
fn singular_simplices_of(l: &SimplicialComplex, d: usize) -> Vec<Simplex> {
    l.all_simplices()
        .filter(|s| {
            s.dim() < d
                && (l.maximal_cofaces(s).iter().all(|m| m.dim() < d) || !has_sphere_link(l, d, s))
        })
        .cloned()
        .collect()
}

fn to_ambient(k: &SimplicialComplex, l: &SimplicialComplex, s: &Simplex) -> Simplex {
    Simplex::new(
        s.vertices()
            .iter()
            .map(|v| k.vertex(l.label(*v)).expect("labels are inherited"))
            .collect(),
    )
}

/// The canonical stratification of a pure pseudomanifold (possibly with
/// boundary).
///
/// `X_{n-2}` is the closure of the simplices whose link is neither a rational
/// homology sphere nor, for simplices on the boundary, acyclic. Deeper
/// skeleta come from applying the sphere-link test to the singular set
/// itself, recursively. The result is subdivided once if a skeleton is not
/// full.
pub fn canonical_stratification(k: &SimplicialComplex) -> Result<Stratification> {
    require_pure(k)?;
    let boundary = pseudomanifold_boundary(k)?;
    let n = k.dim();
    if n < 2 {
        return Stratification::trivial(k);
    }
    let on_boundary = closure(k, boundary);

    let singular: Vec<Simplex> = k
        .all_simplices()
        .filter(|s| s.dim() + 2 <= n)
        .filter(|s| {
            if has_sphere_link(k, n, s) {
                return false;
            }
            !(on_boundary.contains(*s) && is_acyclic(&k.link(s).expect("simplex of k")))
        })
        .cloned()
        .collect();

    let mut gens = BTreeMap::new();
    let mut current = closure(k, singular);
    let mut c = 2;
    while let Some(d) = set_dim(&current) {
        for cc in c..=n - d {
            gens.insert(cc, current.clone());
        }
        c = n - d + 1;
        if c > n {
            break;
        }
        let l = k.subcomplex_from_set(&current);
        let next: Vec<Simplex> = singular_simplices_of(&l, d)
            .iter()
            .map(|s| to_ambient(k, &l, s))
            .collect();
        current = closure(k, next);
    }
    Stratification::new(k, n, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{identify_vertices, product, suspension};

    fn circle() -> SimplicialComplex {
        SimplicialComplex::build(&[vec!["a", "b"], vec!["b", "c"], vec!["c", "a"]]).unwrap()
    }

    fn tetra_boundary() -> SimplicialComplex {
        SimplicialComplex::build(&[
            vec!["a", "b", "c"],
            vec!["a", "b", "d"],
            vec!["a", "c", "d"],
            vec!["b", "c", "d"],
        ])
        .unwrap()
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
    fn manifold_detection() {
        let torus = product(&circle(), &circle());
        assert!(is_rational_homology_manifold(&torus).unwrap());
        assert!(is_rational_homology_manifold(&tetra_boundary()).unwrap());
        let (pinched, _) = identify_vertices(&icosahedron(), &[("t", "b")]).unwrap();
        assert!(!is_rational_homology_manifold(&pinched).unwrap());
    }

    #[test]
    fn non_pure_is_rejected() {
        let k = SimplicialComplex::build(&[vec!["a", "b", "c"], vec!["c", "d"]]).unwrap();
        assert!(matches!(
            is_rational_homology_manifold(&k),
            Err(Error::NonPure(..))
        ));
    }

    #[test]
    fn smooth_torus_is_trivially_stratified() {
        let s = canonical_stratification(&product(&circle(), &circle())).unwrap();
        assert!(s.is_trivial());
        assert!(!s.auto_subdivided());
    }

    #[test]
    fn pinched_torus_singular_point() {
        let (pinched, _) = identify_vertices(&icosahedron(), &[("t", "b")]).unwrap();
        let s = canonical_stratification(&pinched).unwrap();
        let t = pinched.vertex("t").unwrap();
        assert_eq!(s.skeleton_vertices(2), &BTreeSet::from([t]));
        assert_eq!(
            s.codim_of_simplex(&Simplex::vertex(t)).unwrap(),
            Codim::Singular(2)
        );
        let top = pinched.simplices(2)[0].clone();
        assert_eq!(s.codim_of_simplex(&top).unwrap(), Codim::Regular);
    }

    #[test]
    fn suspension_cone_points() {
        let k = suspension(&product(&circle(), &circle()));
        let s = canonical_stratification(&k).unwrap();
        let poles = BTreeSet::from([k.vertex("north").unwrap(), k.vertex("south").unwrap()]);
        assert_eq!(s.skeleton_vertices(2), &poles);
        assert_eq!(s.skeleton_vertices(3), &poles);
        let north = Simplex::vertex(k.vertex("north").unwrap());
        assert_eq!(s.codim_of_simplex(&north).unwrap(), Codim::Singular(3));
    }

    #[test]
    fn branching_is_not_a_pseudomanifold() {
        let k = SimplicialComplex::build(&[
            vec!["a", "b", "c"],
            vec!["a", "b", "d"],
            vec!["a", "b", "e"],
        ])
        .unwrap();
        assert!(matches!(
            canonical_stratification(&k),
            Err(Error::NotPseudomanifold { count: 3, .. })
        ));
    }

    #[test]
    fn non_full_skeleton_is_subdivided() {
        let k = tetra_boundary();
        let a = k.vertex("a").unwrap();
        let b = k.vertex("b").unwrap();
        let gens = BTreeMap::from([(2, BTreeSet::from([Simplex::vertex(a), Simplex::vertex(b)]))]);
        let s = Stratification::new(&k, 2, &gens).unwrap();
        assert!(s.auto_subdivided());
        assert_eq!(s.skeleton_vertices(2).len(), 2);
        assert!(s.complex().is_full_set(&s.skeleton(2)));
    }

    #[test]
    fn dimension_and_nesting_are_checked() {
        let k = tetra_boundary();
        let e = k.simplex(&["a", "b"]).unwrap();
        let gens = BTreeMap::from([(2, BTreeSet::from([e]))]);
        assert!(matches!(
            Stratification::new(&k, 2, &gens),
            Err(Error::InvalidStratification(_))
        ));
    }
}

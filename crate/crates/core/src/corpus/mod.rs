//! Named example spaces and maps with their expected rank tables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplicial::{
    barycentric_subdivision, collapse_subcomplex, identify_vertices, product, suspension, Simplex,
    SimplicialComplex, SimplicialMap,
};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// Stated in the literature the examples come from.
    Literature,
    /// Immediate from the definitions or a standard fact.
    ByHand,
    /// Computed by an independent route in the test suite.
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Invariant {
    Homology,
    IhMiddle,
    IhUpperMiddle,
    Image,
    Kernel,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::Homology => "H",
            Invariant::IhMiddle => "IH (middle)",
            Invariant::IhUpperMiddle => "IH (upper middle)",
            Invariant::Image => "IM",
            Invariant::Kernel => "KER",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub invariant: Invariant,
    pub ranks: Vec<usize>,
    pub source: Source,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapLabel {
    AlgebraicModel,
    NonAlgebraicModel,
    Unlabeled,
}

impl MapLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            MapLabel::AlgebraicModel => "algebraic-model",
            MapLabel::NonAlgebraicModel => "non-algebraic-model",
            MapLabel::Unlabeled => "unlabeled",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "algebraic-model" => Ok(MapLabel::AlgebraicModel),
            "non-algebraic-model" => Ok(MapLabel::NonAlgebraicModel),
            "unlabeled" => Ok(MapLabel::Unlabeled),
            _ => Err(Error::Document(format!("unknown map label `{s}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LabeledMap {
    pub name: String,
    pub label: MapLabel,
    /// Corpus names of the domain and codomain.
    pub domain_name: String,
    pub codomain_name: String,
    pub map: SimplicialMap,
}

/// A closed cover by two named subcomplexes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cover {
    pub a: String,
    pub b: String,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub complex: SimplicialComplex,
    pub expected: Vec<Expected>,
    pub maps: Vec<LabeledMap>,
    pub covers: Vec<Cover>,
}

impl CorpusEntry {
    fn space(name: &str, complex: SimplicialComplex) -> Self {
        Self {
            name: name.to_string(),
            complex,
            expected: Vec::new(),
            maps: Vec::new(),
            covers: Vec::new(),
        }
    }

    fn expect(mut self, invariant: Invariant, ranks: &[usize], source: Source) -> Self {
        self.expected.push(Expected {
            invariant,
            ranks: ranks.to_vec(),
            source,
        });
        self
    }

    fn smooth(self, ranks: &[usize], source: Source) -> Self {
        let zeros = vec![0; ranks.len()];
        self.expect(Invariant::Homology, ranks, source)
            .expect(Invariant::Image, ranks, Source::ByHand)
            .expect(Invariant::Kernel, &zeros, Source::ByHand)
    }

    pub fn expected(&self, invariant: Invariant) -> Option<&Expected> {
        self.expected.iter().find(|e| e.invariant == invariant)
    }
}

/// All entry names, spaces first.
pub const NAMES: &[&str] = &[
    "circle",
    "sphere2_tetra",
    "sphere2_octa",
    "grid_torus",
    "csaszar_torus",
    "pinched_torus_icosa",
    "pinched_torus_quotient",
    "glued_spheres",
    "susp_torus",
    "icosahedron",
    "grid_torus_sd2",
    "normalization_map",
    "torus_collapse_map",
    "mv_cover_glued_spheres",
];

/// Entries whose complex is one of the example spaces (helpers and map
/// entries excluded).
pub const SPACES: &[&str] = &[
    "circle",
    "sphere2_tetra",
    "sphere2_octa",
    "grid_torus",
    "csaszar_torus",
    "pinched_torus_icosa",
    "pinched_torus_quotient",
    "glued_spheres",
    "susp_torus",
];

pub fn build(name: &str) -> Result<CorpusEntry> {
    use Invariant::*;
    use Source::*;
    let entry = match name {
        "circle" => CorpusEntry::space(name, circle()).smooth(&[1, 1], ByHand),
        "sphere2" | "sphere2_tetra" => {
            CorpusEntry::space("sphere2_tetra", tetra_boundary()).smooth(&[1, 0, 1], ByHand)
        }
        "sphere2_octa" => {
            let mut e =
                CorpusEntry::space(name, octahedron_with_hemispheres()?).smooth(&[1, 0, 1], ByHand);
            e.covers.push(Cover {
                a: "A".into(),
                b: "B".into(),
            });
            e
        }
        "grid_torus" => CorpusEntry::space(name, grid_torus()).smooth(&[1, 2, 1], Oracle),
        "csaszar_torus" => CorpusEntry::space(name, csaszar_torus()).smooth(&[1, 2, 1], Oracle),
        "icosahedron" => CorpusEntry::space(name, icosahedron()).smooth(&[1, 0, 1], ByHand),
        "grid_torus_sd2" => CorpusEntry::space(name, grid_torus_sd2()?).smooth(&[1, 2, 1], Oracle),
        "pinched_torus_icosa" => pinched(CorpusEntry::space(name, pinched_torus_icosa()?)),
        "pinched_torus_quotient" => pinched(CorpusEntry::space(name, pinched_torus_quotient()?)),
        "glued_spheres" | "mv_cover_glued_spheres" => {
            let mut e = CorpusEntry::space(name, glued_spheres()?)
                .expect(Homology, &[1, 1, 2], Oracle)
                .expect(Image, &[1, 0, 2], Oracle)
                .expect(Kernel, &[0, 1, 0], Oracle);
            e.covers.push(Cover {
                a: "A".into(),
                b: "B".into(),
            });
            e
        }
        "susp_torus" => CorpusEntry::space(name, suspension(&grid_torus()))
            .expect(Homology, &[1, 0, 2, 1], ByHand)
            .expect(IhMiddle, &[1, 2, 0, 1], Oracle)
            .expect(IhUpperMiddle, &[1, 0, 2, 1], Oracle)
            .expect(Image, &[1, 0, 0, 1], Oracle)
            .expect(Kernel, &[0, 0, 2, 0], Oracle),
        "normalization_map" => {
            let (n, f) = identify_vertices(&icosahedron(), &[("t", "b")])?;
            let mut e = pinched(CorpusEntry::space(name, n));
            e.maps.push(LabeledMap {
                name: name.into(),
                label: MapLabel::AlgebraicModel,
                domain_name: "icosahedron".into(),
                codomain_name: "pinched_torus_icosa".into(),
                map: f,
            });
            e
        }
        "torus_collapse_map" => {
            let (n, f) = collapse_subcomplex(&grid_torus_sd2()?, "row")?;
            let mut e = pinched(CorpusEntry::space(name, n));
            e.maps.push(LabeledMap {
                name: name.into(),
                label: MapLabel::NonAlgebraicModel,
                domain_name: "grid_torus_sd2".into(),
                codomain_name: "pinched_torus_quotient".into(),
                map: f,
            });
            e
        }
        _ => return Err(Error::UnknownCorpusEntry(name.to_string())),
    };
    Ok(entry)
}

fn pinched(e: CorpusEntry) -> CorpusEntry {
    use Invariant::*;
    use Source::*;
    e.expect(Homology, &[1, 1, 1], Literature)
        .expect(IhMiddle, &[1, 0, 1], Literature)
        .expect(Image, &[1, 0, 1], Literature)
        .expect(Kernel, &[0, 1, 0], Literature)
}

pub fn circle() -> SimplicialComplex {
    SimplicialComplex::build(&[vec!["a", "b"], vec!["b", "c"], vec!["c", "a"]])
        .expect("valid circle")
}

/// Boundary of the 3-simplex.
pub fn tetra_boundary() -> SimplicialComplex {
    SimplicialComplex::build(&[
        vec!["a", "b", "c"],
        vec!["a", "b", "d"],
        vec!["a", "c", "d"],
        vec!["b", "c", "d"],
    ])
    .expect("valid tetrahedron boundary")
}

/// Octahedron with poles `n`, `s` and equator `e0..e3`.
pub fn octahedron(north: &str, south: &str, equator: [&str; 4]) -> Vec<Vec<String>> {
    let mut tris = Vec::new();
    for i in 0..4 {
        for pole in [north, south] {
            tris.push(vec![
                equator[i].to_string(),
                equator[(i + 1) % 4].to_string(),
                pole.to_string(),
            ]);
        }
    }
    tris
}

fn closed_star(k: &SimplicialComplex, v: &str) -> Vec<Simplex> {
    let v = k.vertex(v).expect("known vertex");
    k.maximal_simplices()
        .iter()
        .filter(|m| m.contains_vertex(v))
        .cloned()
        .collect()
}

/// Simplices avoiding vertex `v`: the complement of its open star.
fn star_complement(k: &SimplicialComplex, v: &str) -> Vec<Simplex> {
    let v = k.vertex(v).expect("known vertex");
    k.all_simplices()
        .filter(|s| !s.contains_vertex(v))
        .cloned()
        .collect()
}

/// Octahedron with the hemisphere cover `A = star(n)`, `B = star(s)`.
pub fn octahedron_with_hemispheres() -> Result<SimplicialComplex> {
    let k = SimplicialComplex::build(&octahedron("n", "s", ["e0", "e1", "e2", "e3"]))?;
    let a = closed_star(&k, "n");
    let b = closed_star(&k, "s");
    k.with_subcomplex("A", a)?.with_subcomplex("B", b)
}

/// `C3 × C3`, nine vertices.
pub fn grid_torus() -> SimplicialComplex {
    product(&circle(), &circle())
}

/// Seven-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn csaszar_torus() -> SimplicialComplex {
    let mut tris = Vec::new();
    for i in 0..7 {
        tris.push(vec![
            i.to_string(),
            ((i + 1) % 7).to_string(),
            ((i + 3) % 7).to_string(),
        ]);
        tris.push(vec![
            i.to_string(),
            ((i + 2) % 7).to_string(),
            ((i + 3) % 7).to_string(),
        ]);
    }
    SimplicialComplex::build(&tris).expect("valid torus")
}

/// Icosahedron with poles `t`, `b`, upper ring `u0..u4`, lower ring `l0..l4`.
pub fn icosahedron() -> SimplicialComplex {
    let mut tris: Vec<Vec<String>> = Vec::new();
    let u = |i: usize| format!("u{}", i % 5);
    let l = |i: usize| format!("l{}", i % 5);
    for i in 0..5 {
        tris.push(vec!["t".into(), u(i), u(i + 1)]);
        tris.push(vec![u(i), u(i + 1), l(i)]);
        tris.push(vec![u(i + 1), l(i), l(i + 1)]);
        tris.push(vec![l(i), l(i + 1), "b".into()]);
    }
    SimplicialComplex::build(&tris).expect("valid icosahedron")
}

/// The icosahedron with its poles identified.
pub fn pinched_torus_icosa() -> Result<SimplicialComplex> {
    Ok(identify_vertices(&icosahedron(), &[("t", "b")])?.0)
}

/// Twice subdivided grid torus carrying the circle `row = C3 × {a}`.
pub fn grid_torus_sd2() -> Result<SimplicialComplex> {
    let t = grid_torus();
    let row: Vec<Simplex> = t
        .simplices(1)
        .iter()
        .filter(|e| e.vertices().iter().all(|v| t.label(*v).ends_with(".a")))
        .cloned()
        .collect();
    let t = t.with_subcomplex("row", row)?;
    let sd = barycentric_subdivision(&t).complex;
    Ok(barycentric_subdivision(&sd).complex)
}

/// The grid torus with a circle collapsed to a point.
pub fn pinched_torus_quotient() -> Result<SimplicialComplex> {
    Ok(collapse_subcomplex(&grid_torus_sd2()?, "row")?.0)
}

/// Two octahedra sharing their poles `a` and `b`, with the cover
/// `A = X ∖ star(b)`, `B = X ∖ star(a)` by star complements.
pub fn glued_spheres() -> Result<SimplicialComplex> {
    let mut tris = octahedron("a", "b", ["p0", "p1", "p2", "p3"]);
    tris.extend(octahedron("b", "a", ["q0", "q1", "q2", "q3"]));
    let k = SimplicialComplex::build(&tris)?;
    let a = star_complement(&k, "b");
    let b = star_complement(&k, "a");
    k.with_subcomplex("A", a)?.with_subcomplex("B", b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::betti_numbers;
    use crate::stratify::is_rational_homology_manifold;

    #[test]
    fn every_name_builds() {
        for name in NAMES {
            let e = build(name).unwrap();
            assert!(!e.complex.is_empty(), "{name}");
        }
        assert!(matches!(build("nope"), Err(Error::UnknownCorpusEntry(_))));
    }

    #[test]
    fn tori_are_manifolds() {
        for k in [grid_torus(), csaszar_torus()] {
            assert!(is_rational_homology_manifold(&k).unwrap());
            assert_eq!(betti_numbers(&k), vec![1, 2, 1]);
        }
        assert_eq!(csaszar_torus().f_vector(), vec![7, 21, 14]);
    }

    #[test]
    fn glued_spheres_shape() {
        let k = glued_spheres().unwrap();
        assert_eq!(k.f_vector(), vec![10, 24, 16]);
        let a = k.subcomplex("A").unwrap();
        assert_eq!(betti_numbers(&a), vec![1, 0, 0]);
    }

    #[test]
    fn quotient_model_shape() {
        let k = pinched_torus_quotient().unwrap();
        assert_eq!(k.euler_characteristic(), 1);
    }
}

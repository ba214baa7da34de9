//! JSON documents for complexes and maps.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::corpus::{self, CorpusEntry, Expected, MapLabel};
use crate::error::{Error, Result};
use crate::imcore::irreducible_components;
use crate::simplicial::{Simplex, SimplicialComplex, SimplicialMap};
use crate::stratify::Stratification;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumDocument {
    pub codim: usize,
    pub simplices: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverDocument {
    pub a: String,
    pub b: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub name: String,
    pub vertices: Vec<String>,
    pub maximal_simplices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subcomplexes: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stratification: Option<Vec<StratumDocument>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formal_dim: Option<usize>,
    /// Reference values; not used by any computation except `check --suite expected`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expected: Vec<ExpectedDocument>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub covers: Vec<CoverDocument>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedDocument {
    pub invariant: String,
    pub ranks: Vec<usize>,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub domain: String,
    pub codomain: String,
    pub vertex_map: BTreeMap<String, String>,
    pub label: String,
}

/// A loaded complex with whatever optional data its document carried.
#[derive(Clone, Debug)]
pub struct LoadedComplex {
    pub name: String,
    pub complex: SimplicialComplex,
    pub stratification: Option<Stratification>,
    pub expected: Vec<Expected>,
}

#[derive(Clone, Debug)]
pub struct LoadedMap {
    pub label: MapLabel,
    pub map: SimplicialMap,
}

fn names_of(k: &SimplicialComplex, s: &Simplex) -> Vec<String> {
    s.vertices()
        .iter()
        .map(|v| k.label(*v).to_string())
        .collect()
}

/// Maximal simplices of a closed set of simplices.
fn maximal_of(set: &BTreeSet<Simplex>) -> Vec<&Simplex> {
    set.iter()
        .filter(|s| !set.iter().any(|t| t.len() > s.len() && s.is_face_of(t)))
        .collect()
}

impl ComplexDocument {
    pub fn from_complex(name: &str, k: &SimplicialComplex) -> Self {
        let subcomplexes = k
            .subcomplexes()
            .iter()
            .map(|(n, set)| {
                let gens = maximal_of(set)
                    .into_iter()
                    .map(|s| names_of(k, s))
                    .collect();
                (n.clone(), gens)
            })
            .collect();
        Self {
            name: name.to_string(),
            vertices: k.labels().to_vec(),
            maximal_simplices: k
                .maximal_simplices()
                .iter()
                .map(|s| names_of(k, s))
                .collect(),
            subcomplexes,
            stratification: None,
            components: None,
            formal_dim: None,
            expected: Vec::new(),
            covers: Vec::new(),
        }
    }

    pub fn from_entry(e: &CorpusEntry) -> Self {
        let mut doc = Self::from_complex(&e.name, &e.complex);
        doc.expected = e
            .expected
            .iter()
            .map(|x| ExpectedDocument {
                invariant: enum_name(&x.invariant),
                ranks: x.ranks.clone(),
                source: enum_name(&x.source),
            })
            .collect();
        doc.covers = e
            .covers
            .iter()
            .map(|c| CoverDocument {
                a: c.a.clone(),
                b: c.b.clone(),
            })
            .collect();
        doc
    }

    fn simplex(k: &SimplicialComplex, names: &[String]) -> Result<Simplex> {
        k.simplex(names)
    }

    pub fn load(&self) -> Result<LoadedComplex> {
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v) {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut k = SimplicialComplex::with_vertices(&self.vertices, &self.maximal_simplices)?;
        for (name, gens) in &self.subcomplexes {
            let simplices = gens
                .iter()
                .map(|g| Self::simplex(&k, g))
                .collect::<Result<Vec<_>>>()?;
            k = k.with_subcomplex(name, simplices)?;
        }
        if let Some(n) = self.formal_dim {
            if n != k.dim() {
                return Err(Error::Document(format!(
                    "formal_dim {n} differs from the dimension {} of the complex",
                    k.dim()
                )));
            }
        }
        if let Some(names) = &self.components {
            check_components(&k, names)?;
        }
        let stratification = match &self.stratification {
            None => None,
            Some(strata) => {
                let mut gens: BTreeMap<usize, BTreeSet<Simplex>> = BTreeMap::new();
                let mut last = 1;
                for s in strata {
                    if s.codim <= last {
                        return Err(Error::Document(
                            "stratification codims must be strictly increasing and at least 2"
                                .into(),
                        ));
                    }
                    last = s.codim;
                    let set = s
                        .simplices
                        .iter()
                        .map(|g| Self::simplex(&k, g))
                        .collect::<Result<BTreeSet<_>>>()?;
                    gens.insert(s.codim, set);
                }
                Some(Stratification::new(
                    &k,
                    self.formal_dim.unwrap_or(k.dim()),
                    &gens,
                )?)
            }
        };
        let expected = self
            .expected
            .iter()
            .map(|x| {
                Ok(Expected {
                    invariant: parse_enum(&x.invariant, "invariant")?,
                    ranks: x.ranks.clone(),
                    source: parse_enum(&x.source, "source")?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LoadedComplex {
            name: self.name.clone(),
            complex: k,
            stratification,
            expected,
        })
    }
}

fn enum_name<T: Serialize>(x: &T) -> String {
    match serde_json::to_value(x) {
        Ok(serde_json::Value::String(s)) => s,
        _ => unreachable!("unit variants serialize as strings"),
    }
}

fn parse_enum<T: for<'de> Deserialize<'de>>(s: &str, what: &str) -> Result<T> {
    serde_json::from_value(serde_json::Value::String(s.to_string()))
        .map_err(|_| Error::Document(format!("unknown {what} `{s}`")))
}

/// The listed subcomplexes must be exactly the irreducible components.
fn check_components(k: &SimplicialComplex, names: &[String]) -> Result<()> {
    let mut listed: Vec<BTreeSet<Vec<String>>> = Vec::new();
    for name in names {
        let sub = k.subcomplex(name)?;
        listed.push(
            sub.maximal_simplices()
                .iter()
                .map(|s| names_of(&sub, s))
                .collect(),
        );
    }
    let mut found: Vec<BTreeSet<Vec<String>>> = irreducible_components(k)
        .iter()
        .map(|c| {
            c.maximal_simplices()
                .iter()
                .map(|s| names_of(c, s))
                .collect()
        })
        .collect();
    listed.sort();
    found.sort();
    if listed != found {
        return Err(Error::Document(
            "components do not match the irreducible components of the complex".into(),
        ));
    }
    Ok(())
}

impl MapDocument {
    pub fn from_map(m: &corpus::LabeledMap) -> Self {
        Self {
            domain: m.domain_name.clone(),
            codomain: m.codomain_name.clone(),
            vertex_map: m.map.label_map(),
            label: m.label.as_str().to_string(),
        }
    }

    /// Domain and codomain are file paths (relative to `base`) or corpus names.
    pub fn load(&self, base: &Path) -> Result<LoadedMap> {
        let x = load_complex(&self.domain, Some(base))?.complex;
        let y = load_complex(&self.codomain, Some(base))?.complex;
        Ok(LoadedMap {
            label: MapLabel::parse(&self.label)?,
            map: SimplicialMap::from_labels(x, y, &self.vertex_map)?,
        })
    }
}

pub enum Document {
    Complex(ComplexDocument),
    Map(MapDocument),
}

/// Parses a document, telling complexes and maps apart by their keys.
pub fn parse_document(text: &str, origin: &str) -> Result<Document> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Document(format!("{origin}: {e}")))?;
    let is_map = value.get("vertex_map").is_some();
    let parsed = if is_map {
        serde_json::from_str(text).map(Document::Map)
    } else {
        serde_json::from_str(text).map(Document::Complex)
    };
    parsed.map_err(|e| Error::Document(format!("{origin}: {e}")))
}

enum Source {
    File(PathBuf),
    Corpus(String),
}

fn resolve(input: &str, base: Option<&Path>) -> Source {
    let direct = PathBuf::from(input);
    let path = match base {
        Some(b) if direct.is_relative() => b.join(&direct),
        _ => direct,
    };
    if path.is_file() {
        return Source::File(path);
    }
    let stem = input.strip_suffix(".json").unwrap_or(input);
    Source::Corpus(stem.to_string())
}

fn read(path: &Path) -> Result<(Document, PathBuf)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
    let doc = parse_document(&text, &path.display().to_string())?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Ok((doc, base))
}

/// Loads a complex from a file or corpus name. A map document stands for its
/// codomain, like the corpus entries for maps.
pub fn load_complex(input: &str, base: Option<&Path>) -> Result<LoadedComplex> {
    match resolve(input, base) {
        Source::Corpus(name) => {
            let e = corpus::build(&name)?;
            Ok(LoadedComplex {
                name: e.name,
                complex: e.complex,
                stratification: None,
                expected: e.expected,
            })
        }
        Source::File(path) => match read(&path)? {
            (Document::Complex(d), _) => d.load(),
            (Document::Map(m), base) => {
                let codomain = load_complex(&m.codomain, Some(&base))?;
                Ok(codomain)
            }
        },
    }
}

/// Loads a labelled map from a file or the name of a corpus map entry.
pub fn load_map(input: &str) -> Result<LoadedMap> {
    match resolve(input, None) {
        Source::Corpus(name) => {
            let e = corpus::build(&name)?;
            let m =
                e.maps.into_iter().next().ok_or_else(|| {
                    Error::Document(format!("corpus entry `{name}` is not a map"))
                })?;
            Ok(LoadedMap {
                label: m.label,
                map: m.map,
            })
        }
        Source::File(path) => match read(&path)? {
            (Document::Map(m), base) => m.load(&base),
            (Document::Complex(_), _) => Err(Error::Document(format!(
                "{}: expected a map document",
                path.display()
            ))),
        },
    }
}

/// The JSON document for a corpus entry: a map document for map entries, a
/// complex document otherwise.
pub fn emit_entry(e: &CorpusEntry) -> Result<String> {
    let json = match e.maps.first() {
        Some(m) => serde_json::to_string_pretty(&MapDocument::from_map(m)),
        None => serde_json::to_string_pretty(&ComplexDocument::from_entry(e)),
    };
    json.map_err(|e| Error::Internal(e.to_string()))
}

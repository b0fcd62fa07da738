//! JSON file formats and the shipped example complexes.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{LinalgError, PrimeField};
use crate::modules::{ModuleError, PersistenceModule, Presentation};
use crate::persistence::{AnyFamily, Closure, Diagram, DiagramEntry, Family, PersistenceError};
use crate::poset::{FinitePoset, GaloisConnection, PosetError};
use crate::simplicial::{SimplexSet, SimplicialComplex, SimplicialError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Persistence(#[from] PersistenceError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl IoError {
    /// Failures to read or write a file, as opposed to malformed or invalid content.
    pub fn is_io(&self) -> bool {
        matches!(self, IoError::Io { .. })
    }
}

/// A vertex id: JSON integers and strings are both accepted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexId {
    Int(i64),
    Name(String),
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Int(i) => write!(f, "{i}"),
            VertexId::Name(s) => f.write_str(s),
        }
    }
}

/// Either an inline object or a path (relative to the referencing file).
/// Complexes also accept `"builtin:<name>"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Source<T> {
    Path(String),
    Inline(T),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
}

impl PosetFile {
    pub fn build(&self) -> Result<FinitePoset, PosetError> {
        let covers: Vec<(&str, &str)> = self
            .covers
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        let elements: Vec<&str> = self.elements.iter().map(String::as_str).collect();
        FinitePoset::new(&elements, &covers)
    }

    /// Elements and Hasse covers of `p`.
    pub fn of(p: &FinitePoset) -> Self {
        let covers = p
            .covers()
            .iter()
            .map(|&(a, b)| (p.name(a).to_owned(), p.name(b).to_owned()))
            .collect();
        Self {
            elements: p.elements().to_vec(),
            covers,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<VertexId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplices: Option<Vec<Vec<VertexId>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maximal: Option<Vec<Vec<VertexId>>>,
}

impl ComplexFile {
    pub fn build(&self) -> Result<SimplicialComplex, IoError> {
        let tuples = |ts: &Vec<Vec<VertexId>>| -> Vec<Vec<String>> {
            ts.iter()
                .map(|t| t.iter().map(ToString::to_string).collect())
                .collect()
        };
        let listed = match (&self.simplices, &self.maximal) {
            (Some(s), None) => tuples(s),
            (None, Some(m)) => tuples(m),
            (None, None) => Vec::new(),
            (Some(_), Some(_)) => {
                return Err(IoError::Format(
                    "complex file has both \"simplices\" and \"maximal\"".into(),
                ))
            }
        };
        let vertices: Vec<String> = match &self.vertices {
            Some(v) => v.iter().map(ToString::to_string).collect(),
            None => {
                let mut seen = Vec::new();
                for name in listed.iter().flatten() {
                    if !seen.contains(name) {
                        seen.push(name.clone());
                    }
                }
                seen
            }
        };
        Ok(if self.maximal.is_some() {
            SimplicialComplex::from_maximal(&vertices, &listed)?
        } else {
            SimplicialComplex::new(&vertices, &listed)?
        })
    }

    /// Every simplex of `k`, listed by vertex name in canonical order.
    pub fn of(k: &SimplicialComplex) -> Self {
        Self {
            vertices: Some(k.vertices().iter().cloned().map(VertexId::Name).collect()),
            simplices: Some((0..k.len()).map(|i| names_of(k, i)).collect()),
            maximal: None,
        }
    }
}

fn names_of(k: &SimplicialComplex, i: usize) -> Vec<VertexId> {
    k.simplex_names(i).into_iter().map(VertexId::Name).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyFile {
    pub kind: String,
    pub poset: Source<PosetFile>,
    pub complex: Source<ComplexFile>,
    pub assignment: BTreeMap<String, Vec<Vec<VertexId>>>,
}

impl FamilyFile {
    pub fn of<K: Closure>(family: &Family<K>) -> Self {
        let p = family.index();
        let assignment = (0..p.len())
            .map(|a| {
                let set = family.set(a);
                (
                    p.name(a).to_owned(),
                    set.iter().map(|i| names_of(set.ambient(), i)).collect(),
                )
            })
            .collect();
        Self {
            kind: K::NAME.to_owned(),
            poset: Source::Inline(PosetFile::of(p)),
            complex: Source::Inline(ComplexFile::of(family.ambient())),
            assignment,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GaloisFile {
    pub source: Source<PosetFile>,
    pub target: Source<PosetFile>,
    pub f: BTreeMap<String, String>,
    pub g: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    pub poset: Source<PosetFile>,
    #[serde(default = "default_field")]
    pub field: u64,
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<i64>>>,
}

fn default_field() -> u64 {
    2
}

impl ModuleFile {
    pub fn of(m: &PersistenceModule) -> Self {
        let p = m.index();
        let dims = (0..p.len())
            .map(|a| (p.name(a).to_owned(), m.dim(a)))
            .collect();
        let maps = m
            .cover_maps()
            .iter()
            .filter(|(_, mat)| mat.rows() > 0 && mat.cols() > 0)
            .map(|(&(a, b), mat)| (format!("{}<{}", p.name(a), p.name(b)), mat.to_signed_rows()))
            .collect();
        Self {
            poset: Source::Inline(PosetFile::of(p)),
            field: u64::from(m.field().characteristic()),
            dims,
            maps,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub birth: String,
    pub value: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationFile {
    pub module: Source<ModuleFile>,
    pub generators: Vec<GeneratorSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramFile {
    pub kind: String,
    pub degree: usize,
    pub field: u32,
    pub entries: Vec<DiagramEntryFile>,
    pub diagonal: Vec<DiagramEntryFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramEntryFile {
    pub birth: String,
    pub death: String,
    pub multiplicity: i64,
}

impl From<DiagramEntry> for DiagramEntryFile {
    fn from(e: DiagramEntry) -> Self {
        Self {
            birth: e.birth,
            death: e.death,
            multiplicity: e.multiplicity,
        }
    }
}

impl DiagramFile {
    pub fn of(d: &Diagram) -> Self {
        Self {
            kind: d.kind.as_str().to_owned(),
            degree: d.degree,
            field: d.field.characteristic(),
            entries: d.off_diagonal().into_iter().map(Into::into).collect(),
            diagonal: d.diagonal().into_iter().map(Into::into).collect(),
        }
    }
}

const BUILTINS: &[(&str, &str)] = &[
    ("simplex1", include_str!("../data/simplex1.json")),
    ("hexagon", include_str!("../data/hexagon.json")),
    ("sphere2", include_str!("../data/sphere2.json")),
    ("torus", include_str!("../data/torus.json")),
    ("rp2", include_str!("../data/rp2.json")),
];

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTINS.iter().map(|(n, _)| *n)
}

/// One of the shipped complexes: `simplex1`, `hexagon`, `sphere2`, `torus`, `rp2`.
pub fn builtin_complex(name: &str) -> Option<SimplicialComplex> {
    let (_, text) = BUILTINS.iter().find(|(n, _)| *n == name)?;
    let file: ComplexFile = serde_json::from_str(text).expect("builtin complexes parse");
    Some(file.build().expect("builtin complexes are valid"))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| IoError::Parse {
        path: path.to_owned(),
        message: e.to_string(),
    })
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    std::fs::write(path, to_json_string(value)).map_err(|source| IoError::Io {
        path: path.to_owned(),
        source,
    })
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn resolve<T: for<'de> Deserialize<'de> + Clone>(
    src: &Source<T>,
    base: &Path,
) -> Result<(T, PathBuf), IoError> {
    match src {
        Source::Inline(t) => Ok((t.clone(), base.to_path_buf())),
        Source::Path(p) => {
            let full = base.join(p);
            Ok((read_json(&full)?, base_dir(&full)))
        }
    }
}

fn resolve_poset(src: &Source<PosetFile>, base: &Path) -> Result<Arc<FinitePoset>, IoError> {
    Ok(Arc::new(resolve(src, base)?.0.build()?))
}

fn resolve_complex(
    src: &Source<ComplexFile>,
    base: &Path,
) -> Result<Arc<SimplicialComplex>, IoError> {
    if let Source::Path(p) = src {
        if let Some(name) = p.strip_prefix("builtin:") {
            return builtin_complex(name)
                .map(Arc::new)
                .ok_or_else(|| IoError::Format(format!("unknown builtin complex {name:?}")));
        }
    }
    Ok(Arc::new(resolve(src, base)?.0.build()?))
}

pub fn load_poset(path: &Path) -> Result<FinitePoset, IoError> {
    Ok(read_json::<PosetFile>(path)?.build()?)
}

pub fn load_complex(path: &Path) -> Result<SimplicialComplex, IoError> {
    resolve_complex(
        &Source::Path(path.to_string_lossy().into_owned()),
        Path::new(""),
    )
    .map(Arc::unwrap_or_clone)
}

pub fn family_from_file(file: &FamilyFile, base: &Path) -> Result<AnyFamily, IoError> {
    let index = resolve_poset(&file.poset, base)?;
    let ambient = resolve_complex(&file.complex, base)?;
    let assignment: BTreeMap<String, Vec<Vec<String>>> = file
        .assignment
        .iter()
        .map(|(k, v)| {
            (
                k.clone(),
                v.iter()
                    .map(|t| t.iter().map(ToString::to_string).collect())
                    .collect(),
            )
        })
        .collect();
    match file.kind.as_str() {
        "filtration" => Ok(AnyFamily::Filtration(Family::from_names(
            index,
            ambient,
            &assignment,
        )?)),
        "cofiltration" => Ok(AnyFamily::Cofiltration(Family::from_names(
            index,
            ambient,
            &assignment,
        )?)),
        other => Err(IoError::Format(format!(
            "kind must be \"filtration\" or \"cofiltration\", got {other:?}"
        ))),
    }
}

pub fn load_family(path: &Path) -> Result<AnyFamily, IoError> {
    family_from_file(&read_json(path)?, &base_dir(path))
}

pub fn any_family_file(f: &AnyFamily) -> FamilyFile {
    match f {
        AnyFamily::Filtration(f) => FamilyFile::of(f),
        AnyFamily::Cofiltration(f) => FamilyFile::of(f),
    }
}

pub fn load_galois(path: &Path) -> Result<GaloisConnection, IoError> {
    let file: GaloisFile = read_json(path)?;
    let base = base_dir(path);
    let source = resolve_poset(&file.source, &base)?;
    let target = resolve_poset(&file.target, &base)?;
    Ok(GaloisConnection::from_names(
        source, target, &file.f, &file.g,
    )?)
}

pub fn galois_file(c: &GaloisConnection) -> GaloisFile {
    let (p, q) = (c.source(), c.target());
    GaloisFile {
        source: Source::Inline(PosetFile::of(p)),
        target: Source::Inline(PosetFile::of(q)),
        f: (0..p.len())
            .map(|a| (p.name(a).to_owned(), q.name(c.lower()[a]).to_owned()))
            .collect(),
        g: (0..q.len())
            .map(|x| (q.name(x).to_owned(), p.name(c.upper()[x]).to_owned()))
            .collect(),
    }
}

pub fn module_from_file(file: &ModuleFile, base: &Path) -> Result<PersistenceModule, IoError> {
    let index = resolve_poset(&file.poset, base)?;
    let field = PrimeField::new(file.field)?;
    Ok(PersistenceModule::from_names(
        index, field, &file.dims, &file.maps,
    )?)
}

pub fn load_module(path: &Path) -> Result<PersistenceModule, IoError> {
    module_from_file(&read_json(path)?, &base_dir(path))
}

pub fn load_presentation(path: &Path) -> Result<Presentation, IoError> {
    let file: PresentationFile = read_json(path)?;
    let base = base_dir(path);
    let (module_file, module_base) = resolve(&file.module, &base)?;
    let module = module_from_file(&module_file, &module_base)?;
    let field = module.field();
    let mut births = Vec::new();
    let mut values = Vec::new();
    for g in &file.generators {
        let b = module
            .index()
            .index_of(&g.birth)
            .ok_or_else(|| IoError::Poset(PosetError::UnknownElement(g.birth.clone())))?;
        if g.value.len() != module.dim(b) {
            return Err(IoError::Format(format!(
                "generator born at {} needs {} coordinates",
                g.birth,
                module.dim(b)
            )));
        }
        births.push(b);
        values.push(g.value.iter().map(|&v| field.reduce(v)).collect());
    }
    Ok(Presentation::from_generator_values(module, births, values)?)
}

/// Convenience for callers holding a single simplex set.
pub fn simplex_set_names(set: &SimplexSet) -> Vec<Vec<VertexId>> {
    set.iter().map(|i| names_of(set.ambient(), i)).collect()
}

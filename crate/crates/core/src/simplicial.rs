//! Finite simplicial complexes, sub- and supcomplexes, their (co)chain
//! complexes and barycentric subdivision.
//!
//! Simplices are stored in one canonical order: by dimension, then
//! lexicographically on vertex-index tuples. All chain groups of simplex
//! sets inside a fixed ambient complex use this order, so inclusions and
//! the coface-forgetting surjections are coordinate maps.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use thiserror::Error;

use crate::linalg::{Matrix, PrimeField, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("UnknownVertex: {0:?}")]
    UnknownVertex(String),
    #[error("DuplicateVertex: {0:?}")]
    DuplicateVertex(String),
    #[error("simplex {0} repeats a vertex")]
    RepeatedVertex(String),
    #[error("NotFaceClosed: face {face} of {simplex} is missing")]
    NotFaceClosed { simplex: String, face: String },
    #[error("vertex {0:?} has no 0-simplex")]
    MissingVertex(String),
    #[error("UnknownSimplex: {0} is not in the ambient complex")]
    UnknownSimplex(String),
    #[error("NotSubcomplex: {face} is a face of member {simplex} but is not a member")]
    NotSubcomplex { face: String, simplex: String },
    #[error("NotSupcomplex: {coface} is a coface of member {simplex} but is not a member")]
    NotSupcomplex { simplex: String, coface: String },
    #[error("expected a {expected:?} set, got a {got:?} set")]
    WrongKind { expected: SetKind, got: SetKind },
    #[error("NotNested: {0} is in the smaller set only")]
    NotNested(String),
    #[error("simplex sets live in different ambient complexes")]
    AmbientMismatch,
}

/// A finite abstract simplicial complex.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    vertex_index: HashMap<String, usize>,
    simplices: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    dim_ranges: Vec<Range<usize>>,
    faces: Vec<Vec<usize>>,
    cofaces: Vec<Vec<usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Validates a complex given by vertex names and simplices as tuples of
    /// vertex names. Tuples may be listed in any vertex order.
    pub fn new<S: AsRef<str>, T: AsRef<str>>(
        vertices: &[S],
        simplices: &[Vec<T>],
    ) -> Result<Self, SimplicialError> {
        let (vertices, vertex_index) = index_vertices(vertices)?;
        let tuples = simplices
            .iter()
            .map(|s| resolve_tuple(&vertex_index, s))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_indices(vertices, tuples)
    }

    /// Face closure of the given maximal simplices.
    pub fn from_maximal<S: AsRef<str>, T: AsRef<str>>(
        vertices: &[S],
        maximal: &[Vec<T>],
    ) -> Result<Self, SimplicialError> {
        let (vertices, vertex_index) = index_vertices(vertices)?;
        let mut all = std::collections::BTreeSet::new();
        for s in maximal {
            let t = resolve_tuple(&vertex_index, s)?;
            for mask in 1u64..(1u64 << t.len()) {
                all.insert(
                    t.iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &v)| v)
                        .collect::<Vec<_>>(),
                );
            }
        }
        for v in 0..vertices.len() {
            all.insert(vec![v]);
        }
        Self::from_indices(vertices, all.into_iter().collect())
    }

    pub(crate) fn from_indices(
        vertices: Vec<String>,
        mut tuples: Vec<Vec<usize>>,
    ) -> Result<Self, SimplicialError> {
        let vertex_index: HashMap<String, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        for t in &mut tuples {
            t.sort_unstable();
            if t.windows(2).any(|w| w[0] == w[1]) {
                return Err(SimplicialError::RepeatedVertex(format_tuple(&vertices, t)));
            }
        }
        tuples.retain(|t| !t.is_empty());
        tuples.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        tuples.dedup();
        let index: HashMap<Vec<usize>, usize> = tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let mut faces = Vec::with_capacity(tuples.len());
        for t in &tuples {
            let mut fs = Vec::new();
            if t.len() > 1 {
                for skip in 0..t.len() {
                    let face: Vec<usize> = t
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    match index.get(&face) {
                        Some(&fi) => fs.push(fi),
                        None => {
                            return Err(SimplicialError::NotFaceClosed {
                                simplex: format_tuple(&vertices, t),
                                face: format_tuple(&vertices, &face),
                            })
                        }
                    }
                }
            }
            faces.push(fs);
        }
        for (v, name) in vertices.iter().enumerate() {
            if !index.contains_key(&vec![v]) {
                return Err(SimplicialError::MissingVertex(name.clone()));
            }
        }
        let mut cofaces = vec![Vec::new(); tuples.len()];
        for (i, fs) in faces.iter().enumerate() {
            for &f in fs {
                cofaces[f].push(i);
            }
        }
        let top = tuples.last().map_or(0, |t| t.len());
        let mut dim_ranges = Vec::with_capacity(top);
        let mut start = 0;
        for d in 0..top {
            let end = start
                + tuples[start..]
                    .iter()
                    .take_while(|t| t.len() == d + 1)
                    .count();
            dim_ranges.push(start..end);
            start = end;
        }
        Ok(Self {
            vertices,
            vertex_index,
            simplices: tuples,
            index,
            dim_ranges,
            faces,
            cofaces,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_index.get(name).copied()
    }

    /// Dimension of the complex; `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.dim_ranges.len().checked_sub(1)
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn simplex(&self, i: usize) -> &[usize] {
        &self.simplices[i]
    }

    pub fn simplex_dim(&self, i: usize) -> usize {
        self.simplices[i].len() - 1
    }

    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    /// Looks up a simplex given by vertex names in any order.
    pub fn find<S: AsRef<str>>(&self, names: &[S]) -> Result<usize, SimplicialError> {
        let t = resolve_tuple(&self.vertex_index, names)?;
        self.index_of(&t)
            .ok_or_else(|| SimplicialError::UnknownSimplex(self.format_tuple(&t)))
    }

    /// Global index range of the `d`-simplices (empty above the top dimension).
    pub fn dim_range(&self, d: usize) -> Range<usize> {
        self.dim_ranges
            .get(d)
            .cloned()
            .unwrap_or(self.len()..self.len())
    }

    pub fn count(&self, d: usize) -> usize {
        self.dim_range(d).len()
    }

    pub fn counts_by_dim(&self) -> Vec<usize> {
        self.dim_ranges.iter().map(Range::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dim_ranges
            .iter()
            .enumerate()
            .map(|(d, r)| {
                if d % 2 == 0 {
                    r.len() as i64
                } else {
                    -(r.len() as i64)
                }
            })
            .sum()
    }

    /// Codimension-one faces; face `k` omits vertex `k`.
    pub fn faces(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    /// Codimension-one cofaces.
    pub fn cofaces(&self, i: usize) -> &[usize] {
        &self.cofaces[i]
    }

    pub fn is_face(&self, sigma: usize, tau: usize) -> bool {
        let (s, t) = (&self.simplices[sigma], &self.simplices[tau]);
        s.len() <= t.len() && s.iter().all(|v| t.binary_search(v).is_ok())
    }

    /// Maximal simplices, in canonical order.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.cofaces[i].is_empty())
            .collect()
    }

    /// `[v0,v1,...]` using vertex names.
    pub fn format_simplex(&self, i: usize) -> String {
        self.format_tuple(&self.simplices[i])
    }

    fn format_tuple(&self, t: &[usize]) -> String {
        format_tuple(&self.vertices, t)
    }

    /// Vertex names joined by `.`; used to name barycenters.
    pub fn simplex_label(&self, i: usize) -> String {
        self.simplices[i]
            .iter()
            .map(|&v| self.vertices[v].as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn simplex_names(&self, i: usize) -> Vec<String> {
        self.simplices[i]
            .iter()
            .map(|&v| self.vertices[v].clone())
            .collect()
    }

    /// Signed boundary `∂_d : C_d K → C_{d-1} K`, rows and columns in
    /// canonical order. `∂_0` has zero rows.
    pub fn boundary_matrix(&self, d: usize, field: PrimeField) -> Matrix {
        let cols = self.dim_range(d);
        if d == 0 {
            return Matrix::zeros(field, 0, cols.len());
        }
        let rows = self.dim_range(d - 1);
        let mut m = Matrix::zeros(field, rows.len(), cols.len());
        for (c, sigma) in cols.clone().enumerate() {
            for (k, &face) in self.faces[sigma].iter().enumerate() {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                m.set(face - rows.start, c, field.reduce(sign));
            }
        }
        m
    }
}

fn index_vertices<S: AsRef<str>>(
    vertices: &[S],
) -> Result<(Vec<String>, HashMap<String, usize>), SimplicialError> {
    let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_owned()).collect();
    let mut index = HashMap::with_capacity(names.len());
    for (i, v) in names.iter().enumerate() {
        if index.insert(v.clone(), i).is_some() {
            return Err(SimplicialError::DuplicateVertex(v.clone()));
        }
    }
    Ok((names, index))
}

fn resolve_tuple<S: AsRef<str>>(
    index: &HashMap<String, usize>,
    names: &[S],
) -> Result<Vec<usize>, SimplicialError> {
    let mut t = names
        .iter()
        .map(|n| {
            index
                .get(n.as_ref())
                .copied()
                .ok_or_else(|| SimplicialError::UnknownVertex(n.as_ref().to_owned()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    t.sort_unstable();
    Ok(t)
}

fn format_tuple(vertices: &[String], t: &[usize]) -> String {
    let names: Vec<&str> = t.iter().map(|&v| vertices[v].as_str()).collect();
    format!("[{}]", names.join(","))
}

/// Closure direction of a simplex set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SetKind {
    /// Closed under faces.
    Sub,
    /// Closed under cofaces.
    Sup,
}

/// A subcomplex or supcomplex of a fixed ambient complex.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplexSet {
    ambient: Arc<SimplicialComplex>,
    members: Vec<bool>,
    kind: SetKind,
}

impl fmt::Debug for SimplexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self
            .iter()
            .map(|i| self.ambient.format_simplex(i))
            .collect();
        write!(f, "{:?}{{{}}}", self.kind, names.join(" "))
    }
}

impl SimplexSet {
    pub fn new(
        ambient: Arc<SimplicialComplex>,
        members: Vec<bool>,
        kind: SetKind,
    ) -> Result<Self, SimplicialError> {
        assert_eq!(
            members.len(),
            ambient.len(),
            "membership vector has wrong length"
        );
        for i in 0..ambient.len() {
            if !members[i] {
                continue;
            }
            match kind {
                SetKind::Sub => {
                    if let Some(&f) = ambient.faces(i).iter().filter(|&&f| !members[f]).min() {
                        return Err(SimplicialError::NotSubcomplex {
                            face: ambient.format_simplex(f),
                            simplex: ambient.format_simplex(i),
                        });
                    }
                }
                SetKind::Sup => {
                    if let Some(&c) = ambient.cofaces(i).iter().filter(|&&c| !members[c]).min() {
                        return Err(SimplicialError::NotSupcomplex {
                            simplex: ambient.format_simplex(i),
                            coface: ambient.format_simplex(c),
                        });
                    }
                }
            }
        }
        Ok(Self {
            ambient,
            members,
            kind,
        })
    }

    pub fn from_indices(
        ambient: Arc<SimplicialComplex>,
        indices: &[usize],
        kind: SetKind,
    ) -> Result<Self, SimplicialError> {
        let mut members = vec![false; ambient.len()];
        for &i in indices {
            members[i] = true;
        }
        Self::new(ambient, members, kind)
    }

    /// Members given as tuples of vertex names.
    pub fn from_names<S: AsRef<str>>(
        ambient: Arc<SimplicialComplex>,
        simplices: &[Vec<S>],
        kind: SetKind,
    ) -> Result<Self, SimplicialError> {
        let idx = simplices
            .iter()
            .map(|s| ambient.find(s))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_indices(ambient, &idx, kind)
    }

    /// Smallest set of the given kind containing `seeds`.
    pub fn closure(
        ambient: Arc<SimplicialComplex>,
        seeds: impl IntoIterator<Item = usize>,
        kind: SetKind,
    ) -> Self {
        let mut members = vec![false; ambient.len()];
        let mut stack: Vec<usize> = seeds.into_iter().collect();
        while let Some(i) = stack.pop() {
            if members[i] {
                continue;
            }
            members[i] = true;
            let next = match kind {
                SetKind::Sub => ambient.faces(i),
                SetKind::Sup => ambient.cofaces(i),
            };
            stack.extend(next.iter().copied().filter(|&j| !members[j]));
        }
        Self {
            ambient,
            members,
            kind,
        }
    }

    pub fn empty(ambient: Arc<SimplicialComplex>, kind: SetKind) -> Self {
        let members = vec![false; ambient.len()];
        Self {
            ambient,
            members,
            kind,
        }
    }

    pub fn full(ambient: Arc<SimplicialComplex>, kind: SetKind) -> Self {
        let members = vec![true; ambient.len()];
        Self {
            ambient,
            members,
            kind,
        }
    }

    pub fn ambient(&self) -> &Arc<SimplicialComplex> {
        &self.ambient
    }

    pub fn kind(&self) -> SetKind {
        self.kind
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn membership(&self) -> &[bool] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&m| m)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.members.len()).filter(|&i| self.members[i])
    }

    pub fn is_subset(&self, other: &SimplexSet) -> bool {
        self.members
            .iter()
            .zip(&other.members)
            .all(|(&a, &b)| !a || b)
    }

    /// Members of dimension `d` as positions within the ambient `d`-simplices.
    pub fn positions(&self, d: usize) -> Vec<usize> {
        let r = self.ambient.dim_range(d);
        r.clone()
            .filter(|&i| self.members[i])
            .map(|i| i - r.start)
            .collect()
    }

    /// Simplices not in the set; a subcomplex complement is a supcomplex and vice versa.
    pub fn complement(&self) -> SimplexSet {
        let kind = match self.kind {
            SetKind::Sub => SetKind::Sup,
            SetKind::Sup => SetKind::Sub,
        };
        let members = self.members.iter().map(|&m| !m).collect();
        Self {
            ambient: Arc::clone(&self.ambient),
            members,
            kind,
        }
    }

    /// Same members, different declared kind, revalidated.
    pub fn with_kind(&self, kind: SetKind) -> Result<SimplexSet, SimplicialError> {
        Self::new(Arc::clone(&self.ambient), self.members.clone(), kind)
    }

    pub fn union(&self, other: &SimplexSet) -> SimplexSet {
        assert_eq!(self.kind, other.kind, "union of sets of different kinds");
        let members = self
            .members
            .iter()
            .zip(&other.members)
            .map(|(&a, &b)| a || b)
            .collect();
        Self {
            ambient: Arc::clone(&self.ambient),
            members,
            kind: self.kind,
        }
    }
}

/// Whether differentials lower (chains) or raise (cochains) degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Chain,
    Cochain,
}

/// The (co)chain complex of a simplex set, with bases in canonical order.
#[derive(Clone, Debug)]
pub struct GradedChainComplex {
    field: PrimeField,
    grading: Grading,
    /// `positions[d]`: members of dimension `d`, as positions among the ambient `d`-simplices.
    positions: Vec<Vec<usize>>,
    ambient_counts: Vec<usize>,
    /// Chain: `∂_d : C_d → C_{d-1}`. Cochain: `δ^d : C^d → C^{d+1}`.
    differentials: Vec<Matrix>,
}

impl GradedChainComplex {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    /// Number of degrees carried (one past the ambient top dimension).
    pub fn degrees(&self) -> usize {
        self.positions.len()
    }

    pub fn rank(&self, d: usize) -> usize {
        self.positions.get(d).map_or(0, Vec::len)
    }

    pub fn basis_positions(&self, d: usize) -> &[usize] {
        self.positions.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn differential(&self, d: usize) -> Option<&Matrix> {
        self.differentials.get(d)
    }

    fn outgoing(&self, d: usize) -> Matrix {
        match self.differentials.get(d) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.field, 0, self.rank(d)),
        }
    }

    fn incoming(&self, d: usize) -> Matrix {
        let source = match self.grading {
            Grading::Chain => self.differentials.get(d + 1),
            Grading::Cochain => d.checked_sub(1).and_then(|e| self.differentials.get(e)),
        };
        match source {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.field, self.rank(d), 0),
        }
    }

    /// (Co)cycles in degree `d`, in the complex's own basis.
    pub fn cycles(&self, d: usize) -> Subspace {
        self.outgoing(d).kernel_basis()
    }

    /// (Co)boundaries in degree `d`, in the complex's own basis.
    pub fn boundaries(&self, d: usize) -> Subspace {
        self.incoming(d).column_space()
    }

    pub fn betti(&self, d: usize) -> usize {
        self.cycles(d).dim() - self.boundaries(d).dim()
    }

    /// Expresses a subspace of degree `d` in coordinates of all ambient `d`-simplices.
    pub fn to_ambient(&self, d: usize, s: &Subspace) -> Subspace {
        s.embed(
            self.basis_positions(d),
            self.ambient_counts.get(d).copied().unwrap_or(0),
        )
    }

    pub fn squares_to_zero(&self) -> bool {
        self.differentials.windows(2).all(|w| match self.grading {
            Grading::Chain => w[0].mul(&w[1]).is_zero(),
            Grading::Cochain => w[1].mul(&w[0]).is_zero(),
        })
    }
}

/// Restricts every ambient boundary matrix to the members of `set`. For
/// a subcomplex this is its simplicial chain complex; for a supcomplex it
/// sends absent faces to zero.
fn restricted_boundaries(
    set: &SimplexSet,
    field: PrimeField,
) -> (Vec<Vec<usize>>, Vec<usize>, Vec<Matrix>) {
    let k = set.ambient();
    let top = k.dim().map_or(0, |d| d + 1);
    let positions: Vec<Vec<usize>> = (0..top).map(|d| set.positions(d)).collect();
    let counts: Vec<usize> = (0..top).map(|d| k.count(d)).collect();
    let boundaries = (0..top)
        .map(|d| {
            let full = k.boundary_matrix(d, field);
            let rows = if d == 0 {
                Vec::new()
            } else {
                positions[d - 1].clone()
            };
            full.select_rows(&rows).select_columns(&positions[d])
        })
        .collect();
    (positions, counts, boundaries)
}

/// Simplicial chain complex of a subcomplex.
pub fn chain_complex(
    set: &SimplexSet,
    field: PrimeField,
) -> Result<GradedChainComplex, SimplicialError> {
    if set.kind() != SetKind::Sub {
        return Err(SimplicialError::WrongKind {
            expected: SetKind::Sub,
            got: set.kind(),
        });
    }
    let (positions, ambient_counts, differentials) = restricted_boundaries(set, field);
    Ok(GradedChainComplex {
        field,
        grading: Grading::Chain,
        positions,
        ambient_counts,
        differentials,
    })
}

/// Compactly supported cellular cochain complex of a supcomplex: the
/// transpose of its face-dropping chain complex.
pub fn compact_cochain_complex(
    set: &SimplexSet,
    field: PrimeField,
) -> Result<GradedChainComplex, SimplicialError> {
    if set.kind() != SetKind::Sup {
        return Err(SimplicialError::WrongKind {
            expected: SetKind::Sup,
            got: set.kind(),
        });
    }
    let (positions, ambient_counts, boundaries) = restricted_boundaries(set, field);
    // δ^d = (∂_{d+1})^T
    let top = positions.len();
    let differentials = (0..top)
        .map(|d| match boundaries.get(d + 1) {
            Some(b) => b.transpose(),
            None => Matrix::zeros(field, 0, positions[d].len()),
        })
        .collect();
    Ok(GradedChainComplex {
        field,
        grading: Grading::Cochain,
        positions,
        ambient_counts,
        differentials,
    })
}

/// Chain- and cochain-level maps between nested simplex sets in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedMaps {
    /// Sub: the inclusion `C_d A → C_d B`. Sup: the surjection `i_d : C_d B → C_d A`.
    pub chain: Matrix,
    /// The transpose of `chain`. Sup: extension by zero `j^d : C^d A → C^d B`.
    pub cochain: Matrix,
}

pub fn inclusion_matrices(
    a: &SimplexSet,
    b: &SimplexSet,
    d: usize,
    field: PrimeField,
) -> Result<NestedMaps, SimplicialError> {
    if !Arc::ptr_eq(a.ambient(), b.ambient()) && a.ambient() != b.ambient() {
        return Err(SimplicialError::AmbientMismatch);
    }
    if a.kind() != b.kind() {
        return Err(SimplicialError::WrongKind {
            expected: b.kind(),
            got: a.kind(),
        });
    }
    if let Some(i) = a.iter().find(|&i| !b.contains(i)) {
        return Err(SimplicialError::NotNested(a.ambient().format_simplex(i)));
    }
    let (pa, pb) = (a.positions(d), b.positions(d));
    let inclusion = Matrix::from_fn(field, pb.len(), pa.len(), |r, c| i64::from(pb[r] == pa[c]));
    let chain = match a.kind() {
        SetKind::Sub => inclusion,
        SetKind::Sup => inclusion.transpose(),
    };
    let cochain = chain.transpose();
    Ok(NestedMaps { chain, cochain })
}

/// The order complex of the face poset: vertices are the simplices of `k`
/// (named by [`SimplicialComplex::simplex_label`], in canonical order) and
/// simplices are chains `σ_0 < ... < σ_n` under the proper-face relation.
pub fn barycentric_subdivision(k: &SimplicialComplex) -> SimplicialComplex {
    let n = k.len();
    // proper cofaces of every simplex, increasing
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in (0..n).rev() {
        let mut acc: Vec<usize> = Vec::new();
        for &c in k.cofaces(i) {
            acc.push(c);
            acc.extend_from_slice(&up[c]);
        }
        acc.sort_unstable();
        acc.dedup();
        up[i] = acc;
    }
    let mut chains = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("nonempty chain");
        for &next in &up[last] {
            let mut longer = chain.clone();
            longer.push(next);
            stack.push(longer);
        }
        chains.push(chain);
    }
    let vertices = (0..n).map(|i| k.simplex_label(i)).collect();
    SimplicialComplex::from_indices(vertices, chains)
        .expect("chains of a face poset form a simplicial complex")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn tuples(ts: &[&[&str]]) -> Vec<Vec<String>> {
        ts.iter()
            .map(|t| t.iter().map(|s| s.to_string()).collect())
            .collect()
    }

    fn edge() -> Arc<SimplicialComplex> {
        Arc::new(SimplicialComplex::from_maximal(&["0", "1"], &tuples(&[&["0", "1"]])).unwrap())
    }

    fn triangle() -> Arc<SimplicialComplex> {
        Arc::new(
            SimplicialComplex::from_maximal(&["0", "1", "2"], &tuples(&[&["0", "1", "2"]]))
                .unwrap(),
        )
    }

    #[test]
    fn full_triangle_is_valid() {
        let names = tuples(&[
            &["0"],
            &["1"],
            &["2"],
            &["0", "1"],
            &["0", "2"],
            &["1", "2"],
            &["0", "1", "2"],
        ]);
        let k = SimplicialComplex::new(&["0", "1", "2"], &names).unwrap();
        assert_eq!(k.len(), 7);
        assert_eq!(k, *triangle());
        assert_eq!(k.counts_by_dim(), vec![3, 3, 1]);
    }

    #[test]
    fn missing_face_is_rejected() {
        let err = SimplicialComplex::new(&["0", "1"], &tuples(&[&["1"], &["0", "1"]])).unwrap_err();
        assert_eq!(
            err,
            SimplicialError::NotFaceClosed {
                simplex: "[0,1]".into(),
                face: "[0]".into()
            }
        );
        let err = SimplicialComplex::new(&["0"], &tuples(&[&["7"]])).unwrap_err();
        assert_eq!(err, SimplicialError::UnknownVertex("7".into()));
    }

    #[test]
    fn simplex_set_kinds() {
        let k = edge();
        let e = k.find(&["0", "1"]).unwrap();
        assert!(SimplexSet::from_indices(Arc::clone(&k), &[e], SetKind::Sup).is_ok());
        let err = SimplexSet::from_indices(Arc::clone(&k), &[e], SetKind::Sub).unwrap_err();
        assert_eq!(
            err,
            SimplicialError::NotSubcomplex {
                face: "[0]".into(),
                simplex: "[0,1]".into()
            }
        );
        let all = SimplexSet::full(Arc::clone(&k), SetKind::Sub);
        assert!(all.with_kind(SetKind::Sup).is_ok());
    }

    #[test]
    fn triangle_boundary_rank() {
        let k = triangle();
        let all = SimplexSet::full(Arc::clone(&k), SetKind::Sub);
        let c = chain_complex(&all, gf(3)).unwrap();
        let d1 = c.differential(1).unwrap();
        assert_eq!((d1.rows(), d1.cols()), (3, 3));
        assert_eq!(d1.rank(), 2);
        assert!(c.squares_to_zero());
        assert_eq!((c.betti(0), c.betti(1), c.betti(2)), (1, 0, 0));
    }

    #[test]
    fn hollow_triangle_has_one_loop() {
        let k = triangle();
        let top = k.find(&["0", "1", "2"]).unwrap();
        let hollow: Vec<usize> = (0..k.len()).filter(|&i| i != top).collect();
        let set = SimplexSet::from_indices(k, &hollow, SetKind::Sub).unwrap();
        let c = chain_complex(&set, gf(2)).unwrap();
        assert_eq!(c.cycles(1).dim(), 1);
        assert_eq!(c.boundaries(1).dim(), 0);
    }

    #[test]
    fn empty_subcomplex_gives_zero_complex() {
        let set = SimplexSet::empty(triangle(), SetKind::Sub);
        let c = chain_complex(&set, gf(2)).unwrap();
        assert!((0..3).all(|d| c.rank(d) == 0 && c.betti(d) == 0));
    }

    #[test]
    fn open_edge_has_compact_h1() {
        let k = edge();
        let e = k.find(&["0", "1"]).unwrap();
        let open = SimplexSet::from_indices(Arc::clone(&k), &[e], SetKind::Sup).unwrap();
        let c = compact_cochain_complex(&open, gf(2)).unwrap();
        assert_eq!((c.betti(0), c.betti(1)), (0, 1));
        let closed = SimplexSet::full(k, SetKind::Sup);
        let c = compact_cochain_complex(&closed, gf(2)).unwrap();
        assert_eq!((c.betti(0), c.betti(1)), (1, 0));
    }

    #[test]
    fn full_supcomplex_coboundary_is_transpose() {
        let k = triangle();
        let c = compact_cochain_complex(&SimplexSet::full(Arc::clone(&k), SetKind::Sup), gf(5))
            .unwrap();
        assert_eq!(
            c.differential(0).unwrap(),
            &k.boundary_matrix(1, gf(5)).transpose()
        );
        assert!(c.squares_to_zero());
    }

    #[test]
    fn nested_maps_open_in_closed_edge() {
        let k = edge();
        let e = k.find(&["0", "1"]).unwrap();
        let open = SimplexSet::from_indices(Arc::clone(&k), &[e], SetKind::Sup).unwrap();
        let closed = SimplexSet::full(Arc::clone(&k), SetKind::Sup);
        let m0 = inclusion_matrices(&open, &closed, 0, gf(2)).unwrap();
        assert_eq!((m0.chain.rows(), m0.chain.cols()), (0, 2));
        assert_eq!((m0.cochain.rows(), m0.cochain.cols()), (2, 0));
        let m1 = inclusion_matrices(&open, &closed, 1, gf(2)).unwrap();
        assert_eq!(m1.chain, Matrix::identity(gf(2), 1));
        assert_eq!(m1.cochain, Matrix::identity(gf(2), 1));
        let same = inclusion_matrices(&closed, &closed, 0, gf(2)).unwrap();
        assert_eq!(same.chain, Matrix::identity(gf(2), 2));
        assert!(matches!(
            inclusion_matrices(&closed, &open, 0, gf(2)),
            Err(SimplicialError::NotNested(_))
        ));
    }

    #[test]
    fn sub_inclusion_skips_missing_edge() {
        let k = triangle();
        let missing = k.find(&["1", "2"]).unwrap();
        let top = k.find(&["0", "1", "2"]).unwrap();
        let keep: Vec<usize> = (0..k.len()).filter(|&i| i != missing && i != top).collect();
        let a = SimplexSet::from_indices(Arc::clone(&k), &keep, SetKind::Sub).unwrap();
        let b = SimplexSet::full(Arc::clone(&k), SetKind::Sub);
        let m = inclusion_matrices(&a, &b, 1, gf(2)).unwrap();
        assert_eq!(
            m.chain.to_signed_rows(),
            vec![vec![1, 0], vec![0, 1], vec![0, 0]]
        );
    }

    #[test]
    fn subdivision_of_edge_is_path() {
        let l = barycentric_subdivision(&edge());
        assert_eq!(l.counts_by_dim(), vec![3, 2]);
        assert_eq!(l.vertices(), &["0", "1", "0.1"]);
    }

    #[test]
    fn complement_swaps_kind() {
        let k = triangle();
        let v = k.find(&["0"]).unwrap();
        let sub = SimplexSet::from_indices(Arc::clone(&k), &[v], SetKind::Sub).unwrap();
        let sup = sub.complement();
        assert_eq!(sup.kind(), SetKind::Sup);
        assert!(sup.with_kind(SetKind::Sup).is_ok());
    }
}

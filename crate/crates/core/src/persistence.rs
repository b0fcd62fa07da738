//! Filtrations and cofiltrations indexed by finite posets, their
//! birth-death functions and persistence diagrams.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use thiserror::Error;

use crate::exec::{map_range, Strategy};
use crate::linalg::{PrimeField, Subspace};
use crate::poset::{
    int_of_galois, same_poset, FinitePoset, GaloisConnection, IntFunction, IntervalPoset,
};
use crate::simplicial::{
    chain_complex, compact_cochain_complex, SetKind, SimplexSet, SimplicialComplex, SimplicialError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PersistenceError {
    #[error("NotMonotone: {lo:?} <= {hi:?} but {simplex} is assigned to {lo:?} and not to {hi:?}")]
    NotMonotone {
        lo: String,
        hi: String,
        simplex: String,
    },
    #[error("assignment for {element:?}: {source}")]
    Assignment {
        element: String,
        source: SimplicialError,
    },
    #[error("no simplex set assigned to {0:?}")]
    MissingAssignment(String),
    #[error("assignment names unknown element {0:?}")]
    UnknownElement(String),
    #[error("IndexMismatch: the Galois connection's source is not the indexing poset")]
    IndexMismatch,
    #[error("simplex sets must live in the ambient complex")]
    AmbientMismatch,
}

/// Marker for families of subcomplexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subcomplexes {}

/// Marker for families of supcomplexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Supcomplexes {}

pub trait Closure: Copy + fmt::Debug + Send + Sync + 'static {
    const KIND: SetKind;
    const NAME: &'static str;
    const DIAGRAM: DiagramKind;
}

impl Closure for Subcomplexes {
    const KIND: SetKind = SetKind::Sub;
    const NAME: &'static str = "filtration";
    const DIAGRAM: DiagramKind = DiagramKind::Homology;
}

impl Closure for Supcomplexes {
    const KIND: SetKind = SetKind::Sup;
    const NAME: &'static str = "cofiltration";
    const DIAGRAM: DiagramKind = DiagramKind::Cohomology;
}

/// A monotone map from a finite poset into the sub- or supcomplexes of a
/// fixed complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family<K: Closure> {
    index: Arc<FinitePoset>,
    ambient: Arc<SimplicialComplex>,
    sets: Vec<SimplexSet>,
    _kind: PhantomData<K>,
}

/// `P → ΔK`.
pub type Filtration = Family<Subcomplexes>;
/// `P → ∇K`.
pub type Cofiltration = Family<Supcomplexes>;

impl<K: Closure> Family<K> {
    pub fn new(
        index: Arc<FinitePoset>,
        ambient: Arc<SimplicialComplex>,
        sets: Vec<SimplexSet>,
    ) -> Result<Self, PersistenceError> {
        assert_eq!(sets.len(), index.len(), "one simplex set per element");
        for (a, s) in sets.iter().enumerate() {
            if s.ambient() != &ambient {
                return Err(PersistenceError::AmbientMismatch);
            }
            if s.kind() != K::KIND {
                return Err(PersistenceError::Assignment {
                    element: index.name(a).into(),
                    source: SimplicialError::WrongKind {
                        expected: K::KIND,
                        got: s.kind(),
                    },
                });
            }
        }
        for &(a, b) in index.covers() {
            if let Some(i) = sets[a].iter().find(|&i| !sets[b].contains(i)) {
                return Err(PersistenceError::NotMonotone {
                    lo: index.name(a).into(),
                    hi: index.name(b).into(),
                    simplex: ambient.format_simplex(i),
                });
            }
        }
        Ok(Self {
            index,
            ambient,
            sets,
            _kind: PhantomData,
        })
    }

    /// Builds the family from simplex tuples (vertex names) keyed by element name.
    pub fn from_names(
        index: Arc<FinitePoset>,
        ambient: Arc<SimplicialComplex>,
        assignment: &BTreeMap<String, Vec<Vec<String>>>,
    ) -> Result<Self, PersistenceError> {
        if let Some(k) = assignment.keys().find(|k| index.index_of(k).is_none()) {
            return Err(PersistenceError::UnknownElement(k.clone()));
        }
        let sets = index
            .elements()
            .iter()
            .map(|e| {
                let simplices = assignment
                    .get(e)
                    .ok_or_else(|| PersistenceError::MissingAssignment(e.clone()))?;
                SimplexSet::from_names(Arc::clone(&ambient), simplices, K::KIND).map_err(|source| {
                    PersistenceError::Assignment {
                        element: e.clone(),
                        source,
                    }
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(index, ambient, sets)
    }

    /// The same simplex set at every element.
    pub fn constant(index: Arc<FinitePoset>, set: SimplexSet) -> Result<Self, PersistenceError> {
        let ambient = Arc::clone(set.ambient());
        let sets = vec![set; index.len()];
        Self::new(index, ambient, sets)
    }

    pub fn index(&self) -> &Arc<FinitePoset> {
        &self.index
    }

    pub fn ambient(&self) -> &Arc<SimplicialComplex> {
        &self.ambient
    }

    pub fn set(&self, a: usize) -> &SimplexSet {
        &self.sets[a]
    }

    pub fn sets(&self) -> &[SimplexSet] {
        &self.sets
    }

    /// Degrees that can carry nonzero diagrams: `0..=dim K`.
    pub fn degrees(&self) -> std::ops::RangeInclusive<usize> {
        match self.ambient.dim() {
            Some(d) => 0..=d,
            #[allow(clippy::reversed_empty_ranges)]
            None => 1..=0,
        }
    }
}

/// (Co)cycle and (co)boundary spaces at one element, in coordinates of all
/// ambient `d`-simplices.
#[derive(Clone, Debug)]
pub struct CycleBoundary {
    pub cycles: Subspace,
    pub boundaries: Subspace,
}

/// Per-element (co)cycles and (co)boundaries in degree `d`.
pub fn cycle_boundary_spaces<K: Closure>(
    family: &Family<K>,
    d: usize,
    field: PrimeField,
    strategy: Strategy,
) -> Vec<CycleBoundary> {
    let ambient_dim = family.ambient.count(d);
    map_range(strategy, family.index.len(), |a| {
        let set = &family.sets[a];
        let complex = match K::KIND {
            SetKind::Sub => chain_complex(set, field),
            SetKind::Sup => compact_cochain_complex(set, field),
        }
        .expect("family members have the family's kind");
        if d >= complex.degrees() {
            return CycleBoundary {
                cycles: Subspace::zero(field, ambient_dim),
                boundaries: Subspace::zero(field, ambient_dim),
            };
        }
        CycleBoundary {
            cycles: complex.to_ambient(d, &complex.cycles(d)),
            boundaries: complex.to_ambient(d, &complex.boundaries(d)),
        }
    })
}

/// `BD[a,b] = dim (Z(a) ∩ B(b))` over `Int P`, with `Z(a)` carried into the
/// chain group at `b` by the coordinate inclusion (filtrations) or extension
/// by zero (cofiltrations).
pub fn birth_death<K: Closure>(
    family: &Family<K>,
    d: usize,
    field: PrimeField,
    strategy: Strategy,
) -> (IntervalPoset, IntFunction) {
    let ip = IntervalPoset::new(Arc::clone(&family.index));
    let spaces = cycle_boundary_spaces(family, d, field, strategy);
    let values = map_range(strategy, ip.len(), |i| {
        let (a, b) = ip.interval(i);
        spaces[a]
            .cycles
            .intersection_dim(&spaces[b].boundaries)
            .expect("shared ambient") as i64
    });
    let bd = IntFunction::new(Arc::clone(ip.poset()), values).expect("one value per interval");
    (ip, bd)
}

/// Birth-death function of a filtration.
pub fn bd_homology(f: &Filtration, d: usize, field: PrimeField) -> IntFunction {
    birth_death(f, d, field, Strategy::default()).1
}

/// Birth-death function of a cofiltration.
pub fn bd_cohomology(f: &Cofiltration, d: usize, field: PrimeField) -> IntFunction {
    birth_death(f, d, field, Strategy::default()).1
}

/// `[a,b] ↦ dim B(a)`; its Möbius inversion vanishes off the diagonal.
pub fn boundary_function<K: Closure>(
    family: &Family<K>,
    d: usize,
    field: PrimeField,
) -> IntFunction {
    let ip = IntervalPoset::new(Arc::clone(&family.index));
    let spaces = cycle_boundary_spaces(family, d, field, Strategy::default());
    IntFunction::from_fn(Arc::clone(ip.poset()), |i| {
        spaces[ip.interval(i).0].boundaries.dim() as i64
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramKind {
    Homology,
    Cohomology,
}

impl DiagramKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagramKind::Homology => "homology",
            DiagramKind::Cohomology => "cohomology",
        }
    }
}

/// A birth-death function together with its Möbius inversion.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub intervals: IntervalPoset,
    pub bd: IntFunction,
    pub dgm: IntFunction,
    pub degree: usize,
    pub field: PrimeField,
    pub kind: DiagramKind,
}

/// One nonzero entry of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramEntry {
    pub birth: String,
    pub death: String,
    pub multiplicity: i64,
}

impl Diagram {
    /// Multiplicity at `[birth, death]`, by element name.
    pub fn multiplicity(&self, birth: &str, death: &str) -> Option<i64> {
        let p = self.intervals.parent();
        let i = self
            .intervals
            .index_of(p.index_of(birth)?, p.index_of(death)?)?;
        Some(self.dgm.get(i))
    }

    pub fn birth_death(&self, birth: &str, death: &str) -> Option<i64> {
        let p = self.intervals.parent();
        let i = self
            .intervals
            .index_of(p.index_of(birth)?, p.index_of(death)?)?;
        Some(self.bd.get(i))
    }

    fn entries(&self, diagonal: bool) -> Vec<DiagramEntry> {
        let p = self.intervals.parent();
        (0..self.intervals.len())
            .filter(|&i| self.intervals.is_diagonal(i) == diagonal && self.dgm.get(i) != 0)
            .map(|i| {
                let (a, b) = self.intervals.interval(i);
                DiagramEntry {
                    birth: p.name(a).into(),
                    death: p.name(b).into(),
                    multiplicity: self.dgm.get(i),
                }
            })
            .collect()
    }

    /// Nonzero entries on strict intervals, ordered by (birth, death) position.
    pub fn off_diagonal(&self) -> Vec<DiagramEntry> {
        self.entries(false)
    }

    /// Nonzero diagonal entries.
    pub fn diagonal(&self) -> Vec<DiagramEntry> {
        self.entries(true)
    }
}

pub fn diagram<K: Closure>(family: &Family<K>, d: usize, field: PrimeField) -> Diagram {
    diagram_with(family, d, field, Strategy::default())
}

pub fn diagram_with<K: Closure>(
    family: &Family<K>,
    d: usize,
    field: PrimeField,
    strategy: Strategy,
) -> Diagram {
    let (intervals, bd) = birth_death(family, d, field, strategy);
    let dgm = bd.mobius_inversion();
    Diagram {
        intervals,
        bd,
        dgm,
        degree: d,
        field,
        kind: K::DIAGRAM,
    }
}

/// `G = F ∘ g`, indexed by the connection's target.
pub fn pullback_filtration<K: Closure>(
    family: &Family<K>,
    c: &GaloisConnection,
) -> Result<Family<K>, PersistenceError> {
    if !same_poset(c.source(), &family.index) {
        return Err(PersistenceError::IndexMismatch);
    }
    let sets = c.upper().iter().map(|&a| family.sets[a].clone()).collect();
    Family::new(Arc::clone(c.target()), Arc::clone(&family.ambient), sets)
}

/// Which functoriality identity a witness violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Identity {
    /// `BD G = (Int g)^♯ BD F`.
    BirthDeathPullback,
    /// `∂BD G = (Int f)_♯ ∂BD F`.
    DiagramPushforward,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FunctorialityWitness {
    pub degree: usize,
    pub identity: Identity,
    pub interval: String,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FunctorialityReport {
    pub passed: bool,
    pub degrees_checked: usize,
    pub witness: Option<FunctorialityWitness>,
}

/// Pulls `family` back along `c` and checks both identities exactly, in
/// every degree.
pub fn check_functoriality<K: Closure>(
    family: &Family<K>,
    c: &GaloisConnection,
    field: PrimeField,
) -> Result<FunctorialityReport, PersistenceError> {
    let pulled = pullback_filtration(family, c)?;
    let (_, iq, int_c) = int_of_galois(c);
    let mut degrees_checked = 0;
    for d in family.degrees() {
        degrees_checked += 1;
        let (_, bd_f) = birth_death(family, d, field, Strategy::Sequential);
        let (_, bd_g) = birth_death(&pulled, d, field, Strategy::Sequential);
        let pulled_bd = int_c.pullback(&bd_f);
        let pushed_dgm = int_c.pushforward(&bd_f.mobius_inversion());
        let dgm_g = bd_g.mobius_inversion();
        let checks = [
            (Identity::BirthDeathPullback, &bd_g, &pulled_bd),
            (Identity::DiagramPushforward, &dgm_g, &pushed_dgm),
        ];
        for (identity, lhs, rhs) in checks {
            if let Some(i) = (0..iq.len()).find(|&i| lhs.get(i) != rhs.get(i)) {
                return Ok(FunctorialityReport {
                    passed: false,
                    degrees_checked,
                    witness: Some(FunctorialityWitness {
                        degree: d,
                        identity,
                        interval: iq.poset().name(i).into(),
                        lhs: lhs.get(i),
                        rhs: rhs.get(i),
                    }),
                });
            }
        }
    }
    Ok(FunctorialityReport {
        passed: true,
        degrees_checked,
        witness: None,
    })
}

/// Either kind of family, as read from a file.
#[derive(Clone, Debug)]
pub enum AnyFamily {
    Filtration(Filtration),
    Cofiltration(Cofiltration),
}

impl AnyFamily {
    pub fn index(&self) -> &Arc<FinitePoset> {
        match self {
            AnyFamily::Filtration(f) => f.index(),
            AnyFamily::Cofiltration(f) => f.index(),
        }
    }

    pub fn ambient(&self) -> &Arc<SimplicialComplex> {
        match self {
            AnyFamily::Filtration(f) => f.ambient(),
            AnyFamily::Cofiltration(f) => f.ambient(),
        }
    }

    pub fn diagram(&self, d: usize, field: PrimeField) -> Diagram {
        match self {
            AnyFamily::Filtration(f) => diagram(f, d, field),
            AnyFamily::Cofiltration(f) => diagram(f, d, field),
        }
    }
}

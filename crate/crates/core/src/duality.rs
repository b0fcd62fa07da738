//! Dual (co)filtrations on the barycentric subdivision and exact checks of
//! Poincaré duality between their persistence diagrams.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::exec::{map_range, Strategy};
use crate::linalg::PrimeField;
use crate::persistence::{diagram_with, AnyFamily, Closure, Cofiltration, Family, Filtration};
use crate::simplicial::{
    barycentric_subdivision, chain_complex, compact_cochain_complex, SetKind, SimplexSet,
    SimplicialComplex,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error("HypothesisNotMet: {0}")]
    HypothesisNotMet(ManifoldCheckReport),
}

/// Computable approximation of "closed `m`-manifold, orientable over the field".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManifoldCheckReport {
    pub dim: usize,
    pub pure: bool,
    pub closed_pseudomanifold: bool,
    pub connected: bool,
    pub orientable_over_field: bool,
}

impl ManifoldCheckReport {
    pub fn all_pass(&self) -> bool {
        self.pure && self.closed_pseudomanifold && self.connected && self.orientable_over_field
    }
}

impl std::fmt::Display for ManifoldCheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "m={} pure={} closed_pseudomanifold={} connected={} orientable_over_field={}",
            self.dim,
            self.pure,
            self.closed_pseudomanifold,
            self.connected,
            self.orientable_over_field
        )
    }
}

pub fn manifold_report(
    k: &Arc<SimplicialComplex>,
    m: usize,
    field: PrimeField,
) -> ManifoldCheckReport {
    let pure = !k.is_empty() && k.maximal().iter().all(|&s| k.simplex_dim(s) == m);
    let closed_pseudomanifold = m > 0
        && k.dim_range(m - 1).all(|s| {
            k.cofaces(s)
                .iter()
                .filter(|&&c| k.simplex_dim(c) == m)
                .count()
                == 2
        });
    let closed_pseudomanifold = closed_pseudomanifold || (m == 0 && pure);
    let orientable_over_field = k.dim() >= Some(m) && {
        let full = SimplexSet::full(Arc::clone(k), SetKind::Sub);
        chain_complex(&full, field).expect("full complex").betti(m) == 1
    };
    ManifoldCheckReport {
        dim: m,
        pure,
        closed_pseudomanifold,
        connected: is_connected(k),
        orientable_over_field,
    }
}

fn is_connected(k: &SimplicialComplex) -> bool {
    let n = k.count(0);
    if n == 0 {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in k.dim_range(1) {
        let s = k.simplex(e);
        let (a, b) = (root(&mut parent, s[0]), root(&mut parent, s[1]));
        parent[a] = b;
    }
    let r = root(&mut parent, 0);
    (0..n).all(|v| root(&mut parent, v) == r)
}

/// Chains of the face poset whose least simplex lies in `set`, as a subset
/// of `sd` (which must be the subdivision of `set`'s ambient complex).
fn chains_starting_in(set: &SimplexSet, sd: &Arc<SimplicialComplex>, kind: SetKind) -> SimplexSet {
    // vertices of sd are simplices of K in canonical order, so a chain's
    // least element is its smallest vertex index
    let members = sd
        .simplices()
        .iter()
        .map(|chain| set.contains(chain[0]))
        .collect();
    SimplexSet::new(Arc::clone(sd), members, kind)
        .expect("chains starting in a (co)face-closed set are closed the other way")
}

fn dualize<K: Closure, D: Closure>(family: &Family<K>) -> Family<D> {
    let sd = Arc::new(barycentric_subdivision(family.ambient()));
    let sets = family
        .sets()
        .iter()
        .map(|s| chains_starting_in(s, &sd, D::KIND))
        .collect();
    Family::new(Arc::clone(family.index()), sd, sets).expect("dualization preserves monotonicity")
}

/// `G(a)` = chains of the face poset starting in `F(a)`; a filtration of `sd K`.
pub fn dualize_cofiltration(f: &Cofiltration) -> Filtration {
    dualize(f)
}

/// `G(a)` = chains starting in `F(a)`; a cofiltration of `sd K`.
pub fn dualize_filtration(f: &Filtration) -> Cofiltration {
    dualize(f)
}

pub fn dualize_any(f: &AnyFamily) -> AnyFamily {
    match f {
        AnyFamily::Filtration(f) => AnyFamily::Cofiltration(dualize_filtration(f)),
        AnyFamily::Cofiltration(f) => AnyFamily::Filtration(dualize_cofiltration(f)),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DualityMode {
    #[default]
    Strict,
    Advisory,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityWitness {
    pub interval: String,
    /// Entry of the input's diagram.
    pub input: i64,
    /// Entry of the dual's diagram.
    pub dual: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeResult {
    /// Degree on the input side; the dual side uses `m - i`.
    pub i: usize,
    pub pass: bool,
    pub witness: Option<DualityWitness>,
    /// Pointwise dimensions of the two modules agreed at every element.
    pub pointwise_dims: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub hypotheses: ManifoldCheckReport,
    pub advisory: bool,
    pub degrees: Vec<DegreeResult>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|d| d.pass && d.pointwise_dims)
    }
}

/// For a cofiltration compares `∂BD^i F` with `∂BD_{m-i} G`; for a
/// filtration compares `∂BD_{m-i} F` with `∂BD^i G`. Strict intervals only.
pub fn check_duality(
    family: &AnyFamily,
    m: usize,
    field: PrimeField,
    mode: DualityMode,
) -> Result<DualityReport, DualityError> {
    check_duality_with(family, m, field, mode, Strategy::default())
}

pub fn check_duality_with(
    family: &AnyFamily,
    m: usize,
    field: PrimeField,
    mode: DualityMode,
    strategy: Strategy,
) -> Result<DualityReport, DualityError> {
    let hypotheses = manifold_report(family.ambient(), m, field);
    if mode == DualityMode::Strict && !hypotheses.all_pass() {
        return Err(DualityError::HypothesisNotMet(hypotheses));
    }
    let dual = dualize_any(family);
    let degrees = map_range(strategy, m + 1, |i| {
        let (input_degree, dual_degree) = match family {
            AnyFamily::Cofiltration(_) => (i, m - i),
            AnyFamily::Filtration(_) => (m - i, i),
        };
        let lhs = any_diagram(family, input_degree, field);
        let rhs = any_diagram(&dual, dual_degree, field);
        let witness = lhs
            .intervals
            .off_diagonal_difference(&lhs.dgm, &rhs.dgm)
            .map(|j| DualityWitness {
                interval: lhs.intervals.poset().name(j).to_owned(),
                input: lhs.dgm.get(j),
                dual: rhs.dgm.get(j),
            });
        let pointwise_dims = (0..family.index().len()).all(|a| {
            pointwise_dim(family, a, input_degree, field)
                == pointwise_dim(&dual, a, dual_degree, field)
        });
        DegreeResult {
            i,
            pass: witness.is_none(),
            witness,
            pointwise_dims,
        }
    });
    Ok(DualityReport {
        hypotheses,
        advisory: mode == DualityMode::Advisory,
        degrees,
    })
}

fn any_diagram(family: &AnyFamily, d: usize, field: PrimeField) -> crate::persistence::Diagram {
    match family {
        AnyFamily::Filtration(f) => diagram_with(f, d, field, Strategy::Sequential),
        AnyFamily::Cofiltration(f) => diagram_with(f, d, field, Strategy::Sequential),
    }
}

/// `dim H_d F(a)` or `dim H^d_c F(a)`.
fn pointwise_dim(family: &AnyFamily, a: usize, d: usize, field: PrimeField) -> usize {
    match family {
        AnyFamily::Filtration(f) => chain_complex(f.set(a), field)
            .expect("filtration sets are subcomplexes")
            .betti(d),
        AnyFamily::Cofiltration(f) => compact_cochain_complex(f.set(a), field)
            .expect("cofiltration sets are supcomplexes")
            .betti(d),
    }
}

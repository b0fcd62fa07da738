//! Persistence modules over finite posets, free presentations, and the
//! algebraic route to persistence diagrams through kernel functions and
//! presentation birth-death functions.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::exec::{map_range, Strategy};
use crate::linalg::{Matrix, PrimeField, Subspace};
use crate::persistence::{
    birth_death, boundary_function, cycle_boundary_spaces, Closure, Cofiltration, Family, Filtration,
};
use crate::poset::{
    int_of_galois, same_poset, FinitePoset, GaloisConnection, IntFunction, IntervalPoset,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("ShapeMismatch: map {lo}<{hi} should be {rows}x{cols}, got {got_rows}x{got_cols}")]
    ShapeMismatch {
        lo: String,
        hi: String,
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("ShapeMismatch: no matrix given for the cover {lo}<{hi}")]
    MissingMap { lo: String, hi: String },
    #[error("{lo}<{hi} is not a cover relation of the indexing poset")]
    NotACover { lo: String, hi: String },
    #[error("NotFunctorial: composites {lo} -> {hi} through {left} and through {right} differ")]
    NotFunctorial {
        lo: String,
        hi: String,
        left: String,
        right: String,
    },
    #[error("presentation is not natural along {lo}<{hi}")]
    NotNatural { lo: String, hi: String },
    #[error("presentation is not surjective at {0}")]
    NotSurjective(String),
    #[error("component at {element} should be {rows}x{cols}")]
    ComponentShape {
        element: String,
        rows: usize,
        cols: usize,
    },
    #[error("IndexMismatch: the Galois connection's source is not the module's index")]
    IndexMismatch,
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("malformed cover key {0:?}; expected \"a<b\"")]
    BadCoverKey(String),
    #[error("matrices over different fields")]
    FieldMismatch,
    #[error("expected {expected} dimensions, got {got}")]
    DimsLength { expected: usize, got: usize },
}

/// A functor `P → Vect` given by dimensions and matrices on cover relations.
/// All composites `M(a ≤ b)` are derived and checked path-independent on
/// construction.
#[derive(Clone, Debug)]
pub struct PersistenceModule {
    index: Arc<FinitePoset>,
    field: PrimeField,
    dims: Vec<usize>,
    cover_maps: BTreeMap<(usize, usize), Matrix>,
    structure: Vec<Option<Matrix>>,
}

impl PartialEq for PersistenceModule {
    fn eq(&self, other: &Self) -> bool {
        same_poset(&self.index, &other.index)
            && self.field == other.field
            && self.dims == other.dims
            && self.cover_maps == other.cover_maps
    }
}

impl PersistenceModule {
    pub fn new(
        index: Arc<FinitePoset>,
        field: PrimeField,
        dims: Vec<usize>,
        mut cover_maps: BTreeMap<(usize, usize), Matrix>,
    ) -> Result<Self, ModuleError> {
        let n = index.len();
        if dims.len() != n {
            return Err(ModuleError::DimsLength {
                expected: n,
                got: dims.len(),
            });
        }
        let name = |i: usize| index.name(i).to_owned();
        for &(a, b) in cover_maps.keys() {
            if !index.covers().contains(&(a, b)) {
                return Err(ModuleError::NotACover {
                    lo: name(a),
                    hi: name(b),
                });
            }
        }
        for &(a, b) in index.covers() {
            match cover_maps.get(&(a, b)) {
                Some(m) => {
                    if m.field() != field {
                        return Err(ModuleError::FieldMismatch);
                    }
                    if (m.rows(), m.cols()) != (dims[b], dims[a]) {
                        return Err(ModuleError::ShapeMismatch {
                            lo: name(a),
                            hi: name(b),
                            rows: dims[b],
                            cols: dims[a],
                            got_rows: m.rows(),
                            got_cols: m.cols(),
                        });
                    }
                }
                None if dims[a] == 0 || dims[b] == 0 => {
                    cover_maps.insert((a, b), Matrix::zeros(field, dims[b], dims[a]));
                }
                None => {
                    return Err(ModuleError::MissingMap {
                        lo: name(a),
                        hi: name(b),
                    })
                }
            }
        }
        let mut structure: Vec<Option<Matrix>> = vec![None; n * n];
        for &b in index.linear_extension() {
            structure[b * n + b] = Some(Matrix::identity(field, dims[b]));
            for a in (0..n).filter(|&a| index.lt(a, b)) {
                let mut found: Option<(usize, Matrix)> = None;
                for &(c, _) in index
                    .covers()
                    .iter()
                    .filter(|&&(c, d)| d == b && index.leq(a, c))
                {
                    let lower = structure[a * n + c]
                        .as_ref()
                        .expect("composites below b are known");
                    let composite = cover_maps[&(c, b)].mul(lower);
                    match &found {
                        None => found = Some((c, composite)),
                        Some((c0, m0)) if *m0 != composite => {
                            return Err(ModuleError::NotFunctorial {
                                lo: name(a),
                                hi: name(b),
                                left: name(*c0),
                                right: name(c),
                            });
                        }
                        Some(_) => {}
                    }
                }
                structure[a * n + b] = found.map(|(_, m)| m);
            }
        }
        Ok(Self {
            index,
            field,
            dims,
            cover_maps,
            structure,
        })
    }

    /// Builds a module from name-keyed dimensions and integer matrices keyed
    /// by `"a<b"`.
    pub fn from_names(
        index: Arc<FinitePoset>,
        field: PrimeField,
        dims: &BTreeMap<String, usize>,
        maps: &BTreeMap<String, Vec<Vec<i64>>>,
    ) -> Result<Self, ModuleError> {
        let lookup = |s: &str| {
            index
                .index_of(s)
                .ok_or_else(|| ModuleError::UnknownElement(s.to_owned()))
        };
        if let Some(k) = dims.keys().find(|k| index.index_of(k).is_none()) {
            return Err(ModuleError::UnknownElement(k.clone()));
        }
        let dim_vec: Vec<usize> = index
            .elements()
            .iter()
            .map(|e| dims.get(e).copied().unwrap_or(0))
            .collect();
        let mut cover_maps = BTreeMap::new();
        for (key, rows) in maps {
            let (lo, hi) = key
                .split_once('<')
                .ok_or_else(|| ModuleError::BadCoverKey(key.clone()))?;
            let (a, b) = (lookup(lo.trim())?, lookup(hi.trim())?);
            let cols = rows.first().map_or(dim_vec[a], Vec::len);
            let m =
                Matrix::from_rows(field, rows, cols).map_err(|_| ModuleError::ShapeMismatch {
                    lo: lo.into(),
                    hi: hi.into(),
                    rows: dim_vec[b],
                    cols: dim_vec[a],
                    got_rows: rows.len(),
                    got_cols: cols,
                })?;
            cover_maps.insert((a, b), m);
        }
        Self::new(index, field, dim_vec, cover_maps)
    }

    pub fn zero(index: Arc<FinitePoset>, field: PrimeField) -> Self {
        let dims = vec![0; index.len()];
        Self::new(index, field, dims, BTreeMap::new()).expect("zero module")
    }

    pub fn index(&self) -> &Arc<FinitePoset> {
        &self.index
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, a: usize) -> usize {
        self.dims[a]
    }

    pub fn cover_maps(&self) -> &BTreeMap<(usize, usize), Matrix> {
        &self.cover_maps
    }

    /// `M(a ≤ b)`; `None` when `a ≰ b`.
    pub fn structure_map(&self, a: usize, b: usize) -> Option<&Matrix> {
        self.structure[a * self.index.len() + b].as_ref()
    }

    /// `ker M[a,b] = dim ker M(a ≤ b)` over `Int P`.
    pub fn kernel_function(&self) -> IntFunction {
        self.kernel_function_with(Strategy::default())
    }

    pub fn kernel_function_with(&self, strategy: Strategy) -> IntFunction {
        let ip = IntervalPoset::new(Arc::clone(&self.index));
        let values = map_range(strategy, ip.len(), |i| {
            let (a, b) = ip.interval(i);
            let m = self
                .structure_map(a, b)
                .expect("interval endpoints are comparable");
            (m.cols() - m.rank()) as i64
        });
        IntFunction::new(Arc::clone(ip.poset()), values).expect("one value per interval")
    }

    /// `∂ ker M`, the canonical representative of the module's diagram.
    pub fn diagram(&self) -> IntFunction {
        self.kernel_function().mobius_inversion()
    }
}

/// `mobius_inversion(kernel_function(M))`.
pub fn module_diagram(m: &PersistenceModule) -> IntFunction {
    m.diagram()
}

/// A direct sum of modules `𝔽^{↑a}`, one summand per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    index: Arc<FinitePoset>,
    births: Vec<usize>,
}

impl FreeModule {
    pub fn new(index: Arc<FinitePoset>, births: Vec<usize>) -> Self {
        assert!(
            births.iter().all(|&b| b < index.len()),
            "birth outside the poset"
        );
        Self { index, births }
    }

    /// Generators from `(birth, multiplicity)` pairs.
    pub fn from_multiplicities(index: Arc<FinitePoset>, mults: &[(usize, usize)]) -> Self {
        let births = mults
            .iter()
            .flat_map(|&(a, k)| std::iter::repeat_n(a, k))
            .collect();
        Self::new(index, births)
    }

    pub fn index(&self) -> &Arc<FinitePoset> {
        &self.index
    }

    pub fn births(&self) -> &[usize] {
        &self.births
    }

    /// Generators alive at `b`, in generator order; the coordinates of `F(b)`.
    pub fn alive_at(&self, b: usize) -> Vec<usize> {
        (0..self.births.len())
            .filter(|&i| self.index.leq(self.births[i], b))
            .collect()
    }

    pub fn dim(&self, b: usize) -> usize {
        self.alive_at(b).len()
    }

    pub fn to_module(&self, field: PrimeField) -> PersistenceModule {
        let dims = (0..self.index.len()).map(|b| self.dim(b)).collect();
        let maps = self
            .index
            .covers()
            .iter()
            .map(|&(a, b)| {
                (
                    (a, b),
                    coordinate_inclusion(field, &self.alive_at(a), &self.alive_at(b)),
                )
            })
            .collect();
        PersistenceModule::new(Arc::clone(&self.index), field, dims, maps)
            .expect("free modules are functorial")
    }
}

fn coordinate_inclusion(field: PrimeField, small: &[usize], big: &[usize]) -> Matrix {
    Matrix::from_fn(field, big.len(), small.len(), |r, c| {
        i64::from(big[r] == small[c])
    })
}

/// A surjective natural transformation `φ : F ⇒ M` from a free module.
#[derive(Clone, Debug)]
pub struct Presentation {
    free: FreeModule,
    target: PersistenceModule,
    components: Vec<Matrix>,
}

impl Presentation {
    pub fn new(
        free: FreeModule,
        target: PersistenceModule,
        components: Vec<Matrix>,
    ) -> Result<Self, ModuleError> {
        if !same_poset(free.index(), target.index()) {
            return Err(ModuleError::IndexMismatch);
        }
        let p = Arc::clone(target.index());
        assert_eq!(components.len(), p.len(), "one component per element");
        for (a, phi) in components.iter().enumerate() {
            let (rows, cols) = (target.dim(a), free.dim(a));
            if (phi.rows(), phi.cols()) != (rows, cols) {
                return Err(ModuleError::ComponentShape {
                    element: p.name(a).into(),
                    rows,
                    cols,
                });
            }
            if phi.rank() != rows {
                return Err(ModuleError::NotSurjective(p.name(a).into()));
            }
        }
        let free_module = free.to_module(target.field());
        for &(a, b) in p.covers() {
            let left = components[b].mul(free_module.structure_map(a, b).expect("cover"));
            let right = target
                .structure_map(a, b)
                .expect("cover")
                .mul(&components[a]);
            if left != right {
                return Err(ModuleError::NotNatural {
                    lo: p.name(a).into(),
                    hi: p.name(b).into(),
                });
            }
        }
        Ok(Self {
            free,
            target,
            components,
        })
    }

    /// The presentation sending generator `i` (born at `births[i]`) to
    /// `values[i] ∈ M(births[i])`.
    pub fn from_generator_values(
        target: PersistenceModule,
        births: Vec<usize>,
        values: Vec<Vec<u32>>,
    ) -> Result<Self, ModuleError> {
        assert_eq!(births.len(), values.len());
        let free = FreeModule::new(Arc::clone(target.index()), births);
        let components = (0..target.index().len())
            .map(|b| {
                let cols = free.alive_at(b).into_iter().map(|i| {
                    let push = target
                        .structure_map(free.births[i], b)
                        .expect("generator alive at b");
                    let v = Matrix::from_columns(target.field(), push.cols(), [&values[i]]);
                    push.mul(&v).column(0)
                });
                Matrix::from_columns(target.field(), target.dim(b), cols.collect::<Vec<_>>())
            })
            .collect();
        Self::new(free, target, components)
    }

    pub fn free(&self) -> &FreeModule {
        &self.free
    }

    pub fn target(&self) -> &PersistenceModule {
        &self.target
    }

    pub fn component(&self, a: usize) -> &Matrix {
        &self.components[a]
    }

    /// Appends generators `(birth, value)`; they are redundant because the
    /// canonical generators already surject.
    pub fn with_extra_generators(&self, extra: &[(usize, Vec<u32>)]) -> Result<Self, ModuleError> {
        let mut births = self.free.births.clone();
        let mut values = self.generator_values();
        for (b, v) in extra {
            births.push(*b);
            values.push(v.clone());
        }
        Self::from_generator_values(self.target.clone(), births, values)
    }

    /// Image of each generator at its birth.
    pub fn generator_values(&self) -> Vec<Vec<u32>> {
        (0..self.free.births.len())
            .map(|i| {
                let b = self.free.births[i];
                let col = self
                    .free
                    .alive_at(b)
                    .iter()
                    .position(|&j| j == i)
                    .expect("generator alive at birth");
                self.components[b].column(col)
            })
            .collect()
    }
}

/// `F(a) = ⊕_{b ≤ a} 𝔽^{dim M(b)}`, with the block of `b` mapped by `M(b ≤ a)`.
pub fn canonical_presentation(m: &PersistenceModule) -> Presentation {
    let mut births = Vec::new();
    let mut values = Vec::new();
    for b in 0..m.index().len() {
        for k in 0..m.dim(b) {
            births.push(b);
            let mut v = vec![0u32; m.dim(b)];
            v[k] = 1;
            values.push(v);
        }
    }
    Presentation::from_generator_values(m.clone(), births, values)
        .expect("canonical presentation is valid")
}

/// `BDφ[a,b] = dim (F(a) ∩ ker φ_b)`, with `F(a)` the coordinate subspace of
/// generators born by `a` inside `F(b)`.
pub fn bd_presentation(pres: &Presentation) -> IntFunction {
    bd_presentation_with(pres, Strategy::default())
}

pub fn bd_presentation_with(pres: &Presentation, strategy: Strategy) -> IntFunction {
    let p = Arc::clone(pres.target.index());
    let ip = IntervalPoset::new(Arc::clone(&p));
    let field = pres.target.field();
    let kernels: Vec<Subspace> =
        map_range(strategy, p.len(), |b| pres.components[b].kernel_basis());
    let values = map_range(strategy, ip.len(), |i| {
        let (a, b) = ip.interval(i);
        let alive_b = pres.free.alive_at(b);
        let axes: Vec<usize> = pres
            .free
            .alive_at(a)
            .iter()
            .map(|g| alive_b.iter().position(|h| h == g).expect("F(a) ⊆ F(b)"))
            .collect();
        let fa = Subspace::coordinate(field, alive_b.len(), &axes);
        fa.intersection_dim(&kernels[b]).expect("shared ambient") as i64
    });
    IntFunction::new(Arc::clone(ip.poset()), values).expect("one value per interval")
}

/// `N = M ∘ g`, a module over the connection's target.
pub fn pushforward_module(
    m: &PersistenceModule,
    c: &GaloisConnection,
) -> Result<PersistenceModule, ModuleError> {
    if !same_poset(c.source(), m.index()) {
        return Err(ModuleError::IndexMismatch);
    }
    let q = Arc::clone(c.target());
    let g = c.upper();
    let dims = g.iter().map(|&a| m.dim(a)).collect();
    let maps = q
        .covers()
        .iter()
        .map(|&(x, y)| {
            (
                (x, y),
                m.structure_map(g[x], g[y]).expect("g is monotone").clone(),
            )
        })
        .collect();
    PersistenceModule::new(q, m.field(), dims, maps)
}

/// `ψ = φ ∘ g : F ∘ g ⇒ M ∘ g`. A generator born at `a` is born at `f(a)`
/// in `F ∘ g`, since `a ≤ g(x)` iff `f(a) ≤ x`.
pub fn restrict_presentation(
    pres: &Presentation,
    c: &GaloisConnection,
) -> Result<Presentation, ModuleError> {
    let target = pushforward_module(&pres.target, c)?;
    let births = pres.free.births.iter().map(|&a| c.lower()[a]).collect();
    let free = FreeModule::new(Arc::clone(c.target()), births);
    let components = c
        .upper()
        .iter()
        .map(|&a| pres.components[a].clone())
        .collect();
    Presentation::new(free, target, components)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ModuleEquivalenceReport {
    pub passed: bool,
    /// `BD(φ ∘ g) = (Int g)^♯ BDφ` held exactly.
    pub restriction_passed: bool,
    /// `(interval of Int Q, ∂BDψ, (Int f)_♯ ∂BDφ)` at the first strict disagreement.
    pub witness: Option<(String, i64, i64)>,
}

/// Compares `∂BDψ` with `(Int f)_♯ ∂BDφ` off the diagonal, where `φ` and
/// `ψ` are canonical presentations of `M` and `N = M ∘ g`.
pub fn check_module_equivalence(
    m: &PersistenceModule,
    c: &GaloisConnection,
) -> Result<ModuleEquivalenceReport, ModuleError> {
    let n = pushforward_module(m, c)?;
    let phi = canonical_presentation(m);
    let psi = canonical_presentation(&n);
    let (_, iq, int_c) = int_of_galois(c);
    let bd_phi = bd_presentation_with(&phi, Strategy::Sequential);
    let lhs = bd_presentation_with(&psi, Strategy::Sequential).mobius_inversion();
    let rhs = int_c.pushforward(&bd_phi.mobius_inversion());
    let witness = iq
        .off_diagonal_difference(&lhs, &rhs)
        .map(|i| (iq.poset().name(i).to_owned(), lhs.get(i), rhs.get(i)));
    let restricted = restrict_presentation(&phi, c)?;
    let restriction_passed =
        bd_presentation_with(&restricted, Strategy::Sequential) == int_c.pullback(&bd_phi);
    Ok(ModuleEquivalenceReport {
        passed: witness.is_none() && restriction_passed,
        restriction_passed,
        witness,
    })
}

/// `a ↦ top(a) / bottom(a)` for nested families of subspaces of one vector
/// space, with maps induced by the identity. Basis of each quotient: the
/// columns of `top(a)`'s basis that complete a basis of `bottom(a)`.
pub fn subquotient_module(
    index: Arc<FinitePoset>,
    field: PrimeField,
    tops: &[Subspace],
    bottoms: &[Subspace],
) -> PersistenceModule {
    let n = index.len();
    assert!(tops.len() == n && bottoms.len() == n);
    let reps: Vec<Matrix> = (0..n)
        .map(|a| tops[a].complement_of(&bottoms[a]).expect("shared ambient"))
        .collect();
    let dims: Vec<usize> = reps.iter().map(Matrix::cols).collect();
    let maps = index
        .covers()
        .iter()
        .map(|&(a, b)| {
            let frame = Subspace::span(&bottoms[b].basis().hstack(&reps[b]));
            let coords = frame.coordinates(&reps[a]).expect("top(a) ⊆ top(b)");
            let skip = bottoms[b].dim();
            let rows: Vec<usize> = (skip..skip + dims[b]).collect();
            ((a, b), coords.select_rows(&rows))
        })
        .collect();
    PersistenceModule::new(index, field, dims, maps)
        .expect("subquotients of nested families are functorial")
}

/// `a ↦ H_d F(a)` (filtrations) or `a ↦ H^d_c F(a)` (cofiltrations).
pub fn homology_module_of<K: Closure>(
    family: &Family<K>,
    d: usize,
    field: PrimeField,
) -> PersistenceModule {
    let spaces = cycle_boundary_spaces(family, d, field, Strategy::default());
    let tops: Vec<Subspace> = spaces.iter().map(|s| s.cycles.clone()).collect();
    let bottoms: Vec<Subspace> = spaces.into_iter().map(|s| s.boundaries).collect();
    subquotient_module(Arc::clone(family.index()), field, &tops, &bottoms)
}

pub fn homology_module(f: &Filtration, d: usize, field: PrimeField) -> PersistenceModule {
    homology_module_of(f, d, field)
}

pub fn cohomology_module(f: &Cofiltration, d: usize, field: PrimeField) -> PersistenceModule {
    homology_module_of(f, d, field)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct EquivalenceDegree {
    pub degree: usize,
    /// `∂BD F ∼ ∂ker H`.
    pub kernel_route: bool,
    /// `∂BD F ∼ ∂BDφ` for the canonical presentation `φ` of `H`.
    pub presentation_route: bool,
    /// `∂B F ∼ 0`.
    pub boundaries_vanish: bool,
    /// `ker H = BD F - B F` at every interval.
    pub kernel_identity: bool,
    /// `(interval, ∂BD F, ∂ker H)` at the first strict disagreement.
    pub witness: Option<(String, i64, i64)>,
}

impl EquivalenceDegree {
    pub fn passed(&self) -> bool {
        self.kernel_route && self.presentation_route && self.boundaries_vanish && self.kernel_identity
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct EquivalenceReport {
    pub degrees: Vec<EquivalenceDegree>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(EquivalenceDegree::passed)
    }
}

/// Compares the cycle/boundary diagram of a (co)filtration with the
/// diagrams of its (co)homology module in every degree.
pub fn check_equivalence<K: Closure>(family: &Family<K>, field: PrimeField) -> EquivalenceReport {
    let degrees = family
        .degrees()
        .map(|d| {
            let (ip, bd) = birth_death(family, d, field, Strategy::Sequential);
            let boundary = boundary_function(family, d, field);
            let module = homology_module_of(family, d, field);
            let ker = module.kernel_function_with(Strategy::Sequential);
            let bd_phi = bd_presentation_with(&canonical_presentation(&module), Strategy::Sequential);
            let dgm = bd.mobius_inversion();
            let ker_dgm = ker.mobius_inversion();
            let zero = IntFunction::zero(Arc::clone(ip.poset()));
            let mismatch = ip.off_diagonal_difference(&dgm, &ker_dgm);
            EquivalenceDegree {
                degree: d,
                kernel_route: mismatch.is_none(),
                presentation_route: ip
                    .off_diagonal_difference(&dgm, &bd_phi.mobius_inversion())
                    .is_none(),
                boundaries_vanish: ip
                    .off_diagonal_difference(&boundary.mobius_inversion(), &zero)
                    .is_none(),
                kernel_identity: ker == bd.sub(&boundary),
                witness: mismatch
                    .map(|i| (ip.poset().name(i).to_owned(), dgm.get(i), ker_dgm.get(i))),
            }
        })
        .collect();
    EquivalenceReport { degrees }
}

/// The module presented by generators born at `births` and relations
/// `(birth, vector)`; each relation vector is truncated to the generators
/// alive at its birth.
pub fn finitely_presented(
    index: Arc<FinitePoset>,
    field: PrimeField,
    births: &[usize],
    relations: &[(usize, Vec<u32>)],
) -> PersistenceModule {
    let g = births.len();
    let alive = |b: usize| -> Vec<usize> { (0..g).filter(|&i| index.leq(births[i], b)).collect() };
    let rel_vectors: Vec<(usize, Vec<u32>)> = relations
        .iter()
        .map(|(b, v)| {
            let live = alive(*b);
            let w = (0..g)
                .map(|i| if live.contains(&i) { v[i] } else { 0 })
                .collect();
            (*b, w)
        })
        .collect();
    let tops: Vec<Subspace> = (0..index.len())
        .map(|a| Subspace::coordinate(field, g, &alive(a)))
        .collect();
    let bottoms: Vec<Subspace> = (0..index.len())
        .map(|a| {
            let cols: Vec<&Vec<u32>> = rel_vectors
                .iter()
                .filter(|(b, _)| index.leq(*b, a))
                .map(|(_, v)| v)
                .collect();
            Subspace::span(&Matrix::from_columns(field, g, cols))
        })
        .collect();
    subquotient_module(index, field, &tops, &bottoms)
}

//! Finite posets, interval posets, Galois connections, and integer-valued
//! functions on posets together with Möbius inversion, pullback and
//! pushforward.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("DuplicateElement: {0:?}")]
    DuplicateElement(String),
    #[error("UnknownElement: {0:?}")]
    UnknownElement(String),
    #[error("CycleDetected: covers contain a cycle through {0:?}")]
    CycleDetected(String),
    #[error("NotMonotone: {map} sends {lo:?} <= {hi:?} to incomparable or reversed images")]
    NotMonotone {
        map: &'static str,
        lo: String,
        hi: String,
    },
    #[error("AdjunctionFailed: f({a:?}) <= {x:?} and {a:?} <= g({x:?}) disagree")]
    AdjunctionFailed { a: String, x: String },
    #[error("map {map} is not total: no image for {element:?}")]
    PartialMap { map: &'static str, element: String },
    #[error("function has {got} values but its domain has {expected} elements")]
    LengthMismatch { expected: usize, got: usize },
}

/// A finite partially ordered set with a dense order relation.
#[derive(Clone, Debug)]
pub struct FinitePoset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
    covers: Vec<(usize, usize)>,
    linear_extension: Vec<usize>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements && self.leq == other.leq
    }
}

impl Eq for FinitePoset {}

impl FinitePoset {
    /// Validates `elements` and `covers` and computes the order relation as
    /// the reflexive-transitive closure of the covers.
    pub fn new<S: AsRef<str>, T: AsRef<str>>(
        elements: &[S],
        covers: &[(T, T)],
    ) -> Result<Self, PosetError> {
        let elements: Vec<String> = elements.iter().map(|e| e.as_ref().to_owned()).collect();
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(e.clone()));
            }
        }
        let n = elements.len();
        let mut succ = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for (lo, hi) in covers {
            let lo_i = *index
                .get(lo.as_ref())
                .ok_or_else(|| PosetError::UnknownElement(lo.as_ref().to_owned()))?;
            let hi_i = *index
                .get(hi.as_ref())
                .ok_or_else(|| PosetError::UnknownElement(hi.as_ref().to_owned()))?;
            if lo_i == hi_i {
                return Err(PosetError::CycleDetected(elements[lo_i].clone()));
            }
            succ[lo_i].push(hi_i);
            indegree[hi_i] += 1;
        }
        // Kahn, smallest index first
        let mut order = Vec::with_capacity(n);
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&i| indegree[i] == 0).collect();
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            order.push(v);
            for &w in &succ[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        if order.len() != n {
            let stuck = (0..n)
                .find(|&i| indegree[i] > 0)
                .expect("some element left");
            return Err(PosetError::CycleDetected(elements[stuck].clone()));
        }
        let mut leq = vec![false; n * n];
        for &v in order.iter().rev() {
            leq[v * n + v] = true;
            for &w in &succ[v] {
                for u in 0..n {
                    if leq[w * n + u] {
                        leq[v * n + u] = true;
                    }
                }
            }
        }
        Ok(Self::assemble(elements, index, leq, Some(order)))
    }

    /// Builds a poset from a relation already known to be a partial order.
    pub(crate) fn from_order(elements: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Self {
        let n = elements.len();
        let mut rel = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                rel[a * n + b] = leq(a, b);
            }
        }
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Self::assemble(elements, index, rel, None)
    }

    fn assemble(
        elements: Vec<String>,
        index: HashMap<String, usize>,
        leq: Vec<bool>,
        order: Option<Vec<usize>>,
    ) -> Self {
        let n = elements.len();
        let lt = |a: usize, b: usize| a != b && leq[a * n + b];
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    covers.push((a, b));
                }
            }
        }
        let linear_extension = order.unwrap_or_else(|| {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&b| ((0..n).filter(|&a| leq[a * n + b]).count(), b));
            order
        });
        Self {
            elements,
            index,
            leq,
            covers,
            linear_extension,
        }
    }

    /// The chain `names[0] < names[1] < ...`.
    pub fn chain<S: AsRef<str>>(names: &[S]) -> Self {
        let covers: Vec<(&str, &str)> = names
            .windows(2)
            .map(|w| (w[0].as_ref(), w[1].as_ref()))
            .collect();
        let names: Vec<&str> = names.iter().map(AsRef::as_ref).collect();
        Self::new(&names, &covers).expect("chain is a valid poset")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.elements.len() + b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// Cover relations of the Hasse diagram, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn linear_extension(&self) -> &[usize] {
        &self.linear_extension
    }

    /// Elements below `b`, including `b`.
    pub fn down_set(&self, b: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&a| self.leq(a, b))
    }

    pub fn is_monotone_map(&self, target: &FinitePoset, map: &[usize]) -> Option<(usize, usize)> {
        for &(a, b) in &self.covers {
            if !target.leq(map[a], map[b]) {
                return Some((a, b));
            }
        }
        None
    }

    /// Graphviz rendering of the Hasse diagram.
    pub fn to_dot(&self, graph_name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {graph_name:?} {{");
        let _ = writeln!(out, "  rankdir=BT;");
        for e in &self.elements {
            let _ = writeln!(out, "  {e:?};");
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(out, "  {:?} -> {:?};", self.elements[a], self.elements[b]);
        }
        out.push_str("}\n");
        out
    }
}

/// `Int P` under the product order `[a,b] <= [c,d] iff a <= c and b <= d`.
#[derive(Clone, Debug)]
pub struct IntervalPoset {
    parent: Arc<FinitePoset>,
    poset: Arc<FinitePoset>,
    intervals: Vec<(usize, usize)>,
    lookup: HashMap<(usize, usize), usize>,
}

impl IntervalPoset {
    pub fn new(parent: Arc<FinitePoset>) -> Self {
        let n = parent.len();
        let intervals: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| parent.leq(a, b))
            .collect();
        let lookup = intervals
            .iter()
            .enumerate()
            .map(|(i, &iv)| (iv, i))
            .collect();
        let names = intervals
            .iter()
            .map(|&(a, b)| format!("[{},{}]", parent.name(a), parent.name(b)))
            .collect();
        let poset = FinitePoset::from_order(names, |i, j| {
            let (a, b) = intervals[i];
            let (c, d) = intervals[j];
            parent.leq(a, c) && parent.leq(b, d)
        });
        Self {
            parent,
            poset: Arc::new(poset),
            intervals,
            lookup,
        }
    }

    pub fn parent(&self) -> &Arc<FinitePoset> {
        &self.parent
    }

    /// The interval poset as a plain poset whose elements are named `[a,b]`.
    pub fn poset(&self) -> &Arc<FinitePoset> {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[(usize, usize)] {
        &self.intervals
    }

    pub fn interval(&self, i: usize) -> (usize, usize) {
        self.intervals[i]
    }

    pub fn index_of(&self, lo: usize, hi: usize) -> Option<usize> {
        self.lookup.get(&(lo, hi)).copied()
    }

    pub fn is_diagonal(&self, i: usize) -> bool {
        let (a, b) = self.intervals[i];
        a == b
    }

    pub fn diagonal(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.is_diagonal(i))
    }

    /// First strict interval on which `m` and `n` differ, i.e. a witness
    /// against equality up to the diagonal.
    pub fn off_diagonal_difference(&self, m: &IntFunction, n: &IntFunction) -> Option<usize> {
        assert_eq!(m.values.len(), self.len());
        assert_eq!(n.values.len(), self.len());
        (0..self.len()).find(|&i| !self.is_diagonal(i) && m.values[i] != n.values[i])
    }
}

/// Convenience wrapper for [`IntervalPoset::new`].
pub fn interval_poset(p: &Arc<FinitePoset>) -> IntervalPoset {
    IntervalPoset::new(Arc::clone(p))
}

/// A Galois connection `f : P ⇄ Q : g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisConnection {
    source: Arc<FinitePoset>,
    target: Arc<FinitePoset>,
    f: Vec<usize>,
    g: Vec<usize>,
}

impl GaloisConnection {
    pub fn new(
        source: Arc<FinitePoset>,
        target: Arc<FinitePoset>,
        f: Vec<usize>,
        g: Vec<usize>,
    ) -> Result<Self, PosetError> {
        if f.len() != source.len() {
            return Err(PosetError::LengthMismatch {
                expected: source.len(),
                got: f.len(),
            });
        }
        if g.len() != target.len() {
            return Err(PosetError::LengthMismatch {
                expected: target.len(),
                got: g.len(),
            });
        }
        assert!(
            f.iter().all(|&x| x < target.len()) && g.iter().all(|&a| a < source.len()),
            "map index out of range"
        );
        if let Some((a, b)) = source.is_monotone_map(&target, &f) {
            return Err(PosetError::NotMonotone {
                map: "f",
                lo: source.name(a).into(),
                hi: source.name(b).into(),
            });
        }
        if let Some((x, y)) = target.is_monotone_map(&source, &g) {
            return Err(PosetError::NotMonotone {
                map: "g",
                lo: target.name(x).into(),
                hi: target.name(y).into(),
            });
        }
        for a in 0..source.len() {
            for x in 0..target.len() {
                if target.leq(f[a], x) != source.leq(a, g[x]) {
                    return Err(PosetError::AdjunctionFailed {
                        a: source.name(a).into(),
                        x: target.name(x).into(),
                    });
                }
            }
        }
        Ok(Self {
            source,
            target,
            f,
            g,
        })
    }

    /// Builds a connection from name-keyed maps; both maps must be total.
    pub fn from_names(
        source: Arc<FinitePoset>,
        target: Arc<FinitePoset>,
        f: &BTreeMap<String, String>,
        g: &BTreeMap<String, String>,
    ) -> Result<Self, PosetError> {
        let resolve = |map: &'static str,
                       dom: &FinitePoset,
                       cod: &FinitePoset,
                       m: &BTreeMap<String, String>| {
            for k in m.keys() {
                if dom.index_of(k).is_none() {
                    return Err(PosetError::UnknownElement(k.clone()));
                }
            }
            dom.elements()
                .iter()
                .map(|e| {
                    let img = m.get(e).ok_or_else(|| PosetError::PartialMap {
                        map,
                        element: e.clone(),
                    })?;
                    cod.index_of(img)
                        .ok_or_else(|| PosetError::UnknownElement(img.clone()))
                })
                .collect::<Result<Vec<_>, _>>()
        };
        let fv = resolve("f", &source, &target, f)?;
        let gv = resolve("g", &target, &source, g)?;
        Self::new(source, target, fv, gv)
    }

    pub fn identity(p: Arc<FinitePoset>) -> Self {
        let id: Vec<usize> = (0..p.len()).collect();
        Self {
            source: Arc::clone(&p),
            target: p,
            f: id.clone(),
            g: id,
        }
    }

    /// The connection `a ↦ [a,a] : P ⇄ Int P : [a,b] ↦ a`.
    pub fn diagonal_embedding(ip: &IntervalPoset) -> Self {
        let p = ip.parent();
        let f = (0..p.len())
            .map(|a| ip.index_of(a, a).expect("diagonal interval"))
            .collect();
        let g = ip.intervals().iter().map(|&(a, _)| a).collect();
        Self::new(Arc::clone(p), Arc::clone(ip.poset()), f, g)
            .expect("diagonal embedding is a Galois connection")
    }

    pub fn source(&self) -> &Arc<FinitePoset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinitePoset> {
        &self.target
    }

    pub fn lower(&self) -> &[usize] {
        &self.f
    }

    pub fn upper(&self) -> &[usize] {
        &self.g
    }

    /// `self` followed by `next`: `(next.f ∘ self.f, self.g ∘ next.g)`.
    pub fn then(&self, next: &GaloisConnection) -> Result<Self, PosetError> {
        assert!(
            same_poset(&self.target, &next.source),
            "composition of non-composable connections"
        );
        let f = self.f.iter().map(|&x| next.f[x]).collect();
        let g = next.g.iter().map(|&x| self.g[x]).collect();
        Self::new(Arc::clone(&self.source), Arc::clone(&next.target), f, g)
    }

    /// `(n ∘ g)`, a function on the target.
    pub fn pullback(&self, m: &IntFunction) -> IntFunction {
        assert!(
            same_poset(&m.domain, &self.source),
            "pullback of a function on the wrong poset"
        );
        pullback(m, &self.g, Arc::clone(&self.target))
    }

    /// Fiberwise sums along `f`, a function on the target.
    pub fn pushforward(&self, m: &IntFunction) -> IntFunction {
        assert!(
            same_poset(&m.domain, &self.source),
            "pushforward of a function on the wrong poset"
        );
        pushforward(m, &self.f, Arc::clone(&self.target))
    }
}

pub(crate) fn same_poset(a: &Arc<FinitePoset>, b: &Arc<FinitePoset>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// The induced connection `Int f : Int P ⇄ Int Q : Int g`.
pub fn int_of_galois(c: &GaloisConnection) -> (IntervalPoset, IntervalPoset, GaloisConnection) {
    let ip = IntervalPoset::new(Arc::clone(&c.source));
    let iq = IntervalPoset::new(Arc::clone(&c.target));
    let f = ip
        .intervals()
        .iter()
        .map(|&(a, b)| {
            iq.index_of(c.f[a], c.f[b])
                .expect("monotone image of an interval")
        })
        .collect();
    let g = iq
        .intervals()
        .iter()
        .map(|&(x, y)| {
            ip.index_of(c.g[x], c.g[y])
                .expect("monotone image of an interval")
        })
        .collect();
    let conn = GaloisConnection::new(Arc::clone(ip.poset()), Arc::clone(iq.poset()), f, g)
        .unwrap_or_else(|e| panic!("Int of a Galois connection failed validation: {e}"));
    (ip, iq, conn)
}

/// An integer-valued function on a finite poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntFunction {
    domain: Arc<FinitePoset>,
    values: Vec<i64>,
}

impl IntFunction {
    pub fn new(domain: Arc<FinitePoset>, values: Vec<i64>) -> Result<Self, PosetError> {
        if values.len() != domain.len() {
            return Err(PosetError::LengthMismatch {
                expected: domain.len(),
                got: values.len(),
            });
        }
        Ok(Self { domain, values })
    }

    pub fn zero(domain: Arc<FinitePoset>) -> Self {
        let values = vec![0; domain.len()];
        Self { domain, values }
    }

    pub fn from_fn(domain: Arc<FinitePoset>, f: impl FnMut(usize) -> i64) -> Self {
        let values = (0..domain.len()).map(f).collect();
        Self { domain, values }
    }

    pub fn domain(&self) -> &Arc<FinitePoset> {
        &self.domain
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, i: usize) -> i64 {
        self.values[i]
    }

    pub fn value_of(&self, name: &str) -> Option<i64> {
        self.domain.index_of(name).map(|i| self.values[i])
    }

    pub fn total(&self) -> i64 {
        self.values
            .iter()
            .fold(0i64, |acc, &v| checked(acc.checked_add(v)))
    }

    pub fn add(&self, other: &IntFunction) -> IntFunction {
        assert!(same_poset(&self.domain, &other.domain));
        IntFunction::from_fn(Arc::clone(&self.domain), |i| {
            checked(self.values[i].checked_add(other.values[i]))
        })
    }

    pub fn sub(&self, other: &IntFunction) -> IntFunction {
        assert!(same_poset(&self.domain, &other.domain));
        IntFunction::from_fn(Arc::clone(&self.domain), |i| {
            checked(self.values[i].checked_sub(other.values[i]))
        })
    }

    pub fn scale(&self, k: i64) -> IntFunction {
        IntFunction::from_fn(Arc::clone(&self.domain), |i| {
            checked(self.values[i].checked_mul(k))
        })
    }

    /// The Möbius inversion `∂m`: the unique function with
    /// `m(b) = Σ_{a ≤ b} ∂m(a)`, computed along a linear extension.
    pub fn mobius_inversion(&self) -> IntFunction {
        let p = &self.domain;
        let mut out = vec![0i64; p.len()];
        for &b in p.linear_extension() {
            let below = (0..p.len())
                .filter(|&a| p.lt(a, b))
                .fold(0i64, |acc, a| checked(acc.checked_add(out[a])));
            out[b] = checked(self.values[b].checked_sub(below));
        }
        IntFunction {
            domain: Arc::clone(p),
            values: out,
        }
    }

    /// Down-set accumulation, the inverse of [`mobius_inversion`](Self::mobius_inversion).
    pub fn mobius_sum(&self) -> IntFunction {
        let p = &self.domain;
        IntFunction::from_fn(Arc::clone(p), |b| {
            p.down_set(b)
                .fold(0i64, |acc, a| checked(acc.checked_add(self.values[a])))
        })
    }
}

#[inline]
fn checked(v: Option<i64>) -> i64 {
    v.expect("integer overflow in incidence arithmetic")
}

/// `(g^♯ m)(x) = m(g(x))`.
pub fn pullback(m: &IntFunction, g: &[usize], target: Arc<FinitePoset>) -> IntFunction {
    assert_eq!(g.len(), target.len(), "map is not total on the target");
    IntFunction::from_fn(target, |x| m.values[g[x]])
}

/// `(f_♯ m)(x) = Σ_{f(a) = x} m(a)`; empty fibres give 0.
pub fn pushforward(m: &IntFunction, f: &[usize], target: Arc<FinitePoset>) -> IntFunction {
    assert_eq!(f.len(), m.domain.len(), "map is not total on the source");
    let mut values = vec![0i64; target.len()];
    for (a, &x) in f.iter().enumerate() {
        values[x] = checked(values[x].checked_add(m.values[a]));
    }
    IntFunction {
        domain: target,
        values,
    }
}

/// Outcome of comparing `∂(g^♯m)` against `f_♯(∂m)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RotaReport {
    pub passed: bool,
    /// `(element of Q, ∂n value, f_♯∂m value)` at the first disagreement.
    pub counterexample: Option<(String, i64, i64)>,
}

pub fn check_rota(c: &GaloisConnection, m: &IntFunction) -> RotaReport {
    let lhs = c.pullback(m).mobius_inversion();
    let rhs = c.pushforward(&m.mobius_inversion());
    let counterexample = (0..c.target.len())
        .find(|&x| lhs.values[x] != rhs.values[x])
        .map(|x| (c.target.name(x).to_owned(), lhs.values[x], rhs.values[x]));
    RotaReport {
        passed: counterexample.is_none(),
        counterexample,
    }
}

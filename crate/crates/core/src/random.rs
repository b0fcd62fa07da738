//! Seeded generators for posets, Galois connections, integer functions,
//! (co)filtrations and persistence modules. Trial `i` of a batch seeded
//! with `s` uses seed `s + i`, so any trial can be replayed alone.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::PrimeField;
use crate::modules::{finitely_presented, PersistenceModule};
use crate::persistence::{Closure, Family};
use crate::poset::{FinitePoset, GaloisConnection, IntFunction, IntervalPoset};
use crate::simplicial::{SetKind, SimplexSet, SimplicialComplex};

pub type TrialRng = ChaCha8Rng;

pub fn trial_rng(seed: u64, trial: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial))
}

/// A random poset on `1..=max_len` elements named `e0, e1, ...`. Relations
/// only go from lower to higher index; with probability 3/4 each, `e0` is
/// made a bottom and the last element a top.
pub fn random_poset(rng: &mut impl Rng, max_len: usize) -> FinitePoset {
    let n = rng.gen_range(1..=max_len.max(1));
    let density = rng.gen_range(0.2..0.7);
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let bottom = rng.gen_bool(0.75);
    let top = rng.gen_bool(0.75);
    let mut rels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if (bottom && i == 0) || (top && j == n - 1) || rng.gen_bool(density) {
                rels.push((names[i].as_str(), names[j].as_str()));
            }
        }
    }
    FinitePoset::new(&names, &rels).expect("relations respect index order")
}

/// A random totally ordered poset `t0 < t1 < ...` with `1..=max_len` elements.
pub fn random_chain(rng: &mut impl Rng, max_len: usize) -> FinitePoset {
    let n = rng.gen_range(1..=max_len.max(1));
    let names: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
    FinitePoset::chain(&names)
}

fn bottom_of(p: &FinitePoset) -> Option<usize> {
    (0..p.len()).find(|&a| (0..p.len()).all(|b| p.leq(a, b)))
}

fn top_of(p: &FinitePoset) -> Option<usize> {
    (0..p.len()).find(|&a| (0..p.len()).all(|b| p.leq(b, a)))
}

/// Tries a random monotone `f` and its candidate right adjoint
/// `g(x) = max {a : f(a) ≤ x}`; `None` when that maximum is missing somewhere
/// or the adjunction fails.
pub fn try_galois(
    rng: &mut impl Rng,
    p: &Arc<FinitePoset>,
    q: &Arc<FinitePoset>,
) -> Option<GaloisConnection> {
    let mut f = vec![usize::MAX; p.len()];
    for &a in p.linear_extension() {
        let below: Vec<usize> = p
            .covers()
            .iter()
            .filter(|&&(_, b)| b == a)
            .map(|&(c, _)| f[c])
            .collect();
        let options: Vec<usize> = (0..q.len())
            .filter(|&x| below.iter().all(|&y| q.leq(y, x)))
            .collect();
        f[a] = *options.choose(rng)?;
    }
    let mut g = Vec::with_capacity(q.len());
    for x in 0..q.len() {
        let lower: Vec<usize> = (0..p.len()).filter(|&a| q.leq(f[a], x)).collect();
        let max = lower
            .iter()
            .copied()
            .find(|&m| lower.iter().all(|&a| p.leq(a, m)))?;
        g.push(max);
    }
    GaloisConnection::new(Arc::clone(p), Arc::clone(q), f, g).ok()
}

/// A random Galois connection between random posets of size `<= max_len`.
/// After 20 rejected attempts falls back to one of: the identity, the
/// constant pair `f ≡ ⊥, g ≡ ⊤`, or the diagonal embedding into `Int P`.
pub fn random_galois(rng: &mut impl Rng, max_len: usize) -> GaloisConnection {
    let p = Arc::new(random_poset(rng, max_len));
    for _ in 0..20 {
        let q = Arc::new(random_poset(rng, max_len));
        if let Some(c) = try_galois(rng, &p, &q) {
            return c;
        }
    }
    match rng.gen_range(0..3) {
        0 => GaloisConnection::identity(p),
        1 => {
            let q = Arc::new(random_poset(rng, max_len));
            match (top_of(&p), bottom_of(&q)) {
                (Some(t), Some(b)) => GaloisConnection::new(
                    Arc::clone(&p),
                    Arc::clone(&q),
                    vec![b; p.len()],
                    vec![t; q.len()],
                )
                .expect("constant adjoint pair"),
                _ => GaloisConnection::identity(p),
            }
        }
        _ => GaloisConnection::diagonal_embedding(&IntervalPoset::new(p)),
    }
}

/// A random Galois connection out of a given poset.
pub fn random_galois_from(
    rng: &mut impl Rng,
    p: &Arc<FinitePoset>,
    max_len: usize,
) -> GaloisConnection {
    for _ in 0..20 {
        let q = Arc::new(random_poset(rng, max_len));
        if let Some(c) = try_galois(rng, p, &q) {
            return c;
        }
    }
    if rng.gen_bool(0.5) {
        GaloisConnection::diagonal_embedding(&IntervalPoset::new(Arc::clone(p)))
    } else {
        GaloisConnection::identity(Arc::clone(p))
    }
}

pub fn random_int_function(
    rng: &mut impl Rng,
    domain: Arc<FinitePoset>,
    lo: i64,
    hi: i64,
) -> IntFunction {
    IntFunction::from_fn(domain, |_| rng.gen_range(lo..=hi))
}

/// A random monotone family: along a linear extension each element takes
/// the union of its predecessors' sets plus the closure of up to three
/// random simplices, each drawn by first picking a dimension uniformly.
pub fn random_family<K: Closure>(
    rng: &mut impl Rng,
    index: Arc<FinitePoset>,
    ambient: Arc<SimplicialComplex>,
) -> Family<K> {
    let mut sets: Vec<Option<SimplexSet>> = vec![None; index.len()];
    for &a in index.linear_extension() {
        let mut seeds: Vec<usize> = Vec::new();
        for &(c, _) in index.covers().iter().filter(|&&(_, b)| b == a) {
            seeds.extend(sets[c].as_ref().expect("predecessors come first").iter());
        }
        if let Some(top) = ambient.dim() {
            for _ in 0..rng.gen_range(0..=3) {
                let range = ambient.dim_range(rng.gen_range(0..=top));
                seeds.push(rng.gen_range(range));
            }
        }
        sets[a] = Some(SimplexSet::closure(Arc::clone(&ambient), seeds, K::KIND));
    }
    Family::new(
        index,
        ambient,
        sets.into_iter()
            .map(|s| s.expect("every element visited"))
            .collect(),
    )
    .expect("unions of closures are monotone")
}

/// A filtration of `ambient` over `t0 < ... < t{steps-1}` built by adding
/// simplices in a random order compatible with faces and cutting that order
/// at random points. The last step holds every simplex.
pub fn random_simplexwise_filtration(rng: &mut impl Rng, ambient: Arc<SimplicialComplex>, steps: usize) -> Family<crate::persistence::Subcomplexes> {
    let n = ambient.len();
    let mut present = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let ready: Vec<usize> = (0..n).filter(|&i| !present[i] && ambient.faces(i).iter().all(|&f| present[f])).collect();
        let pick = *ready.choose(rng).expect("some simplex has all faces present");
        present[pick] = true;
        order.push(pick);
    }
    let steps = steps.max(1);
    let mut cuts: Vec<usize> = (0..steps - 1).map(|_| rng.gen_range(0..=n)).collect();
    cuts.push(n);
    cuts.sort_unstable();
    let names: Vec<String> = (0..steps).map(|i| format!("t{i}")).collect();
    let index = Arc::new(FinitePoset::chain(&names));
    let sets = cuts
        .iter()
        .map(|&c| SimplexSet::from_indices(Arc::clone(&ambient), &order[..c], SetKind::Sub).expect("prefixes are face-closed"))
        .collect();
    Family::new(index, ambient, sets).expect("prefixes are nested")
}

/// A random finitely presented module with at most `max_generators`
/// generators (so every dimension is at most that) and as many relations.
pub fn random_module(
    rng: &mut impl Rng,
    index: Arc<FinitePoset>,
    field: PrimeField,
    max_generators: usize,
) -> PersistenceModule {
    let n = index.len();
    let g = rng.gen_range(0..=max_generators);
    let births: Vec<usize> = (0..g).map(|_| rng.gen_range(0..n)).collect();
    let relations: Vec<(usize, Vec<u32>)> = (0..rng.gen_range(0..=max_generators))
        .map(|_| {
            (
                rng.gen_range(0..n),
                (0..g)
                    .map(|_| rng.gen_range(0..field.characteristic()))
                    .collect(),
            )
        })
        .collect();
    finitely_presented(index, field, &births, &relations)
}

/// The `dim`-skeleton of the full simplex on `n` vertices named `0..n`.
pub fn simplex_skeleton(n: usize, dim: usize) -> SimplicialComplex {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    let mut all = Vec::new();
    for _ in 0..=dim {
        let mut next = Vec::new();
        for t in &tuples {
            let start = t.last().map_or(0, |&v| v + 1);
            for v in start..n {
                let mut longer = t.clone();
                longer.push(v);
                next.push(longer);
            }
        }
        all.extend(next.iter().cloned());
        tuples = next;
    }
    let named: Vec<Vec<&str>> = all
        .iter()
        .map(|t| t.iter().map(|&v| names[v].as_str()).collect())
        .collect();
    SimplicialComplex::new(&names, &named).expect("skeleta are face-closed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::persistence::{Cofiltration, Filtration};

    #[test]
    fn trials_replay() {
        let a = random_poset(&mut trial_rng(7, 3), 6);
        let b = random_poset(&mut trial_rng(10, 0), 6);
        assert_eq!(a, b);
    }

    #[test]
    fn galois_connections_are_valid() {
        let mut rng = trial_rng(1, 0);
        for _ in 0..100 {
            let c = random_galois(&mut rng, 5);
            let (p, q) = (c.source(), c.target());
            for a in 0..p.len() {
                for x in 0..q.len() {
                    assert_eq!(q.leq(c.lower()[a], x), p.leq(a, c.upper()[x]));
                }
            }
        }
    }

    #[test]
    fn families_are_monotone() {
        let k = Arc::new(simplex_skeleton(5, 2));
        assert_eq!(k.counts_by_dim(), vec![5, 10, 10]);
        let mut rng = trial_rng(2, 0);
        for _ in 0..20 {
            let p = Arc::new(random_poset(&mut rng, 5));
            let _: Filtration = random_family(&mut rng, Arc::clone(&p), Arc::clone(&k));
            let _: Cofiltration = random_family(&mut rng, p, Arc::clone(&k));
        }
    }

    #[test]
    fn module_dims_are_bounded() {
        let mut rng = trial_rng(3, 0);
        for _ in 0..20 {
            let p = Arc::new(random_poset(&mut rng, 4));
            let m = random_module(&mut rng, p, PrimeField::new(3).unwrap(), 3);
            assert!(m.dims().iter().all(|&d| d <= 3));
        }
    }
}

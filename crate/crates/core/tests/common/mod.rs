//! Reference computations for integration tests. Nothing here calls the
//! library's linear algebra or homology code.

#![allow(dead_code)]

use gpd_core::persistence::Filtration;
use gpd_core::SimplicialComplex;

pub fn modp(x: i64, p: i64) -> i64 {
    x.rem_euclid(p)
}

fn inverse(a: i64, p: i64) -> i64 {
    // Fermat
    let mut result = 1;
    let mut base = modp(a, p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(rows: &mut [Vec<i64>], p: i64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| modp(rows[i][c], p) != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inverse(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = modp(*x * inv, p);
        }
        for i in 0..rows.len() {
            if i != r && modp(rows[i][c], p) != 0 {
                let factor = rows[i][c];
                for j in 0..ncols {
                    rows[i][j] = modp(rows[i][j] - factor * rows[r][j], p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of the matrix whose columns are `cols` (each of length `n`).
pub fn rank_of_columns(cols: &[Vec<i64>], n: usize, p: i64) -> usize {
    if cols.is_empty() || n == 0 {
        return 0;
    }
    let mut rows: Vec<Vec<i64>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    rref(&mut rows, p).len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows with `ncols` columns.
pub fn kernel(a: &[Vec<i64>], ncols: usize, p: i64) -> Vec<Vec<i64>> {
    let mut rows = a.to_vec();
    let pivots = rref(&mut rows, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; ncols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = modp(-rows[r][fc], p);
            }
            v
        })
        .collect()
}

/// Vertex sets of every simplex of `k`, grouped by dimension.
pub fn simplices_by_dim(k: &SimplicialComplex) -> Vec<Vec<Vec<usize>>> {
    let top = k.simplices().iter().map(|s| s.len()).max().unwrap_or(0);
    let mut out = vec![Vec::new(); top];
    for s in k.simplices() {
        out[s.len() - 1].push(s.clone());
    }
    out
}

/// Boundary of the `(d+1)`-simplices in `cols` written in the coordinates
/// of `rows` (all `d`-simplices), one vector per column.
pub fn boundary_columns(rows: &[Vec<usize>], cols: &[Vec<usize>], p: i64) -> Vec<Vec<i64>> {
    cols.iter()
        .map(|tau| {
            let mut v = vec![0; rows.len()];
            for k in 0..tau.len() {
                let face: Vec<usize> = tau.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect();
                let r = rows.iter().position(|s| *s == face).expect("face present");
                v[r] = modp(if k % 2 == 0 { 1 } else { -1 }, p);
            }
            v
        })
        .collect()
}

/// Off-diagonal diagram of a filtration over a chain `t0 < t1 < ...`, from
/// ranks of the maps `H_d(i) → H_d(j)`:
/// `dgm[i,j] = r(i,j-1) - r(i,j) - r(i-1,j-1) + r(i-1,j)`.
/// Returns `(i, j, multiplicity)` for every `i < j`.
pub fn classical_diagram(f: &Filtration, d: usize, p: i64) -> Vec<(usize, usize, i64)> {
    let k = f.ambient();
    let by_dim = simplices_by_dim(k);
    let empty = Vec::new();
    let d_simplices = by_dim.get(d).unwrap_or(&empty);
    let up_simplices = by_dim.get(d + 1).unwrap_or(&empty);
    let down_simplices = if d == 0 { &empty } else { &by_dim[d - 1] };
    let n = f.index().len();
    let order: Vec<usize> = f.index().linear_extension().to_vec();
    let present = |step: usize, s: &Vec<usize>| f.set(order[step]).contains(k.index_of(s).expect("simplex of K"));

    let cycles: Vec<Vec<Vec<i64>>> = (0..n)
        .map(|i| {
            let local: Vec<Vec<usize>> = d_simplices.iter().filter(|s| present(i, s)).cloned().collect();
            // ∂_d on the local d-simplices as rows-of-a-matrix
            let ker = if d == 0 {
                (0..local.len()).map(|j| (0..local.len()).map(|i| i64::from(i == j)).collect()).collect()
            } else {
                let cols = boundary_columns(down_simplices, &local, p);
                let a: Vec<Vec<i64>> = (0..down_simplices.len()).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
                kernel(&a, local.len(), p)
            };
            ker.iter()
                .map(|v| {
                    let mut full = vec![0; d_simplices.len()];
                    for (j, s) in local.iter().enumerate() {
                        full[d_simplices.iter().position(|t| t == s).unwrap()] = v[j];
                    }
                    full
                })
                .collect()
        })
        .collect();
    let boundaries: Vec<Vec<Vec<i64>>> = (0..n)
        .map(|j| {
            let local: Vec<Vec<usize>> = up_simplices.iter().filter(|s| present(j, s)).cloned().collect();
            boundary_columns(d_simplices, &local, p)
        })
        .collect();
    let dim = d_simplices.len();
    let r = |i: isize, j: usize| -> i64 {
        if i < 0 {
            return 0;
        }
        let i = i as usize;
        let mut both = cycles[i].clone();
        both.extend(boundaries[j].iter().cloned());
        (rank_of_columns(&both, dim, p) - rank_of_columns(&boundaries[j], dim, p)) as i64
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let ii = i as isize;
            let m = r(ii, j - 1) - r(ii, j) - r(ii - 1, j - 1) + r(ii - 1, j);
            out.push((order[i], order[j], m));
        }
    }
    out
}

/// Down-set sums by brute force: `Σ_{a ≤ b} m(a)`.
pub fn naive_down_sums(leq: impl Fn(usize, usize) -> bool, m: &[i64]) -> Vec<i64> {
    (0..m.len()).map(|b| (0..m.len()).filter(|&a| leq(a, b)).map(|a| m[a]).sum()).collect()
}

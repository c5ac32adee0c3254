//! Brute-force oracles and random instance generators shared by the
//! integration tests and the acceptance runner. Everything here works on
//! small `i64` data and deliberately avoids the library's own algorithms.

#![allow(dead_code)]

use std::collections::BTreeSet;

use hilbert_core::linalg::{ivec, IntVector};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;

pub fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("small entry")).collect()
}

pub fn big(rows: &[Vec<i64>]) -> Vec<IntVector> {
    rows.iter().map(|r| ivec(r)).collect()
}

pub fn small(rows: &[IntVector]) -> Vec<Vec<i64>> {
    rows.iter().map(|r| to_i64(r)).collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Determinant by cofactor expansion; fine for `n <= 5`.
pub fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        _ => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Rank by fraction-free elimination over `i128`.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            let f = a[i][c];
            let pivot = a[r][c];
            for k in 0..ncols {
                a[i][k] = a[i][k] * pivot - a[r][k] * f;
            }
            let g = a[i].iter().fold(0i128, |g, &x| {
                let (mut x, mut y) = (g.abs(), x.abs());
                while y != 0 {
                    (x, y) = (y, x % y);
                }
                x
            });
            if g > 1 {
                a[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
    }
    r
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Normal of the hyperplane through `d - 1` vectors in `R^d`, by cofactors.
fn normal(vectors: &[&Vec<i64>], d: usize) -> Vec<i64> {
    (0..d)
        .map(|j| {
            let minor: Vec<Vec<i64>> = vectors
                .iter()
                .map(|v| v.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * det(&minor)
        })
        .collect()
}

/// Facets of a full-dimensional cone by trying every `(d-1)`-subset of the
/// generators. Sorted primitive forms.
pub fn brute_facets(gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = gens[0].len();
    if d == 1 {
        let mut out: Vec<Vec<i64>> = Vec::new();
        if gens.iter().all(|g| g[0] >= 0) {
            out.push(vec![1]);
        }
        if gens.iter().all(|g| g[0] <= 0) {
            out.push(vec![-1]);
        }
        return out;
    }
    let mut out = BTreeSet::new();
    for s in subsets(gens.len(), d - 1) {
        let vs: Vec<&Vec<i64>> = s.iter().map(|&i| &gens[i]).collect();
        let n = normal(&vs, d);
        if n.iter().all(|&x| x == 0) {
            continue;
        }
        let vals: Vec<i64> = gens.iter().map(|g| dot(&n, g)).collect();
        if vals.iter().all(|&v| v >= 0) {
            out.insert(primitive(&n));
        } else if vals.iter().all(|&v| v <= 0) {
            out.insert(primitive(&n.iter().map(|x| -x).collect::<Vec<_>>()));
        }
    }
    out.into_iter().collect()
}

/// Extreme rays of a pointed full-dimensional cone: primitive generators
/// lying on `d - 1` independent facets.
pub fn brute_extreme_rays(gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = gens[0].len();
    let facets = brute_facets(gens);
    let mut out = BTreeSet::new();
    for g in gens {
        if g.iter().all(|&x| x == 0) {
            continue;
        }
        let on: Vec<Vec<i64>> = facets.iter().filter(|f| dot(f, g) == 0).cloned().collect();
        if rank(&on) + 1 == d {
            out.insert(primitive(g));
        }
    }
    out.into_iter().collect()
}

/// Hilbert basis of a full-dimensional cone contained in the nonnegative
/// orthant. All lattice points in a box that contains the parallelotopes
/// of every simplicial subcone are listed; a point is reducible iff it
/// exceeds an irreducible point of smaller degree by a point of the cone.
pub fn brute_hilbert_basis(gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = gens[0].len();
    assert!(gens.iter().flatten().all(|&x| x >= 0), "oracle expects nonnegative generators");
    let facets = brute_facets(gens);
    let inside = |x: &[i64]| facets.iter().all(|f| dot(f, x) >= 0);
    // a point of a parallelotope is below the sum of d generators in every coordinate
    let bound: Vec<i64> = (0..d)
        .map(|j| {
            let mut col: Vec<i64> = gens.iter().map(|g| g[j]).collect();
            col.sort_unstable_by(|a, b| b.cmp(a));
            col.iter().take(d).sum()
        })
        .collect();
    let mut points = Vec::new();
    let mut x = vec![0i64; d];
    loop {
        if x.iter().any(|&v| v != 0) && inside(&x) {
            points.push(x.clone());
        }
        let mut j = 0;
        while j < d && x[j] == bound[j] {
            x[j] = 0;
            j += 1;
        }
        if j == d {
            break;
        }
        x[j] += 1;
    }
    // total degree is positive on the cone and orders reductions
    let tdeg = |x: &[i64]| facets.iter().map(|f| dot(f, x)).sum::<i64>();
    points.sort_by_key(|p| (tdeg(p), p.clone()));
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for p in points {
        let reducible = basis.iter().any(|h| {
            let diff: Vec<i64> = p.iter().zip(h).map(|(a, b)| a - b).collect();
            diff.iter().any(|&v| v != 0) && inside(&diff)
        });
        if !reducible {
            basis.push(p);
        }
    }
    basis.sort();
    basis
}

/// Lattice points of `k` times the polytope whose homogenized vertices are
/// `gens` (last coordinate 1): points of the cone at height `k`.
pub fn ehrhart_count(gens: &[Vec<i64>], k: i64) -> usize {
    let d = gens[0].len();
    let facets = brute_facets(gens);
    let lo: Vec<i64> = (0..d - 1).map(|j| k * gens.iter().map(|g| g[j]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..d - 1).map(|j| k * gens.iter().map(|g| g[j]).max().unwrap()).collect();
    let mut count = 0;
    let mut x: Vec<i64> = lo.clone();
    x.push(k);
    loop {
        if facets.iter().all(|f| dot(f, &x) >= 0) {
            count += 1;
        }
        let mut j = 0;
        while j < d - 1 && x[j] == hi[j] {
            x[j] = lo[j];
            j += 1;
        }
        if j == d - 1 {
            break;
        }
        x[j] += 1;
    }
    count
}

pub fn random_vector<R: Rng>(rng: &mut R, d: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..d).map(|_| rng.gen_range(lo..=hi)).collect()
}

/// `n` random generators with entries in `[lo, hi]` spanning `R^d`.
pub fn random_full_cone<R: Rng>(rng: &mut R, d: usize, n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    loop {
        let gens: Vec<Vec<i64>> = (0..n).map(|_| random_vector(rng, d, lo, hi)).collect();
        if rank(&gens) == d {
            return gens;
        }
    }
}

/// Homogenized lattice polytope of dimension `d - 1` with `n` random
/// points (not all of them vertices) in `[0, side]^(d-1)`.
pub fn random_polytope<R: Rng>(rng: &mut R, d: usize, n: usize, side: i64) -> Vec<Vec<i64>> {
    loop {
        let mut gens: Vec<Vec<i64>> = (0..n)
            .map(|_| {
                let mut v = random_vector(rng, d - 1, 0, side);
                v.push(1);
                v
            })
            .collect();
        gens.sort();
        gens.dedup();
        if rank(&gens) == d {
            return gens;
        }
    }
}

pub fn is_pointed(gens: &[Vec<i64>]) -> bool {
    let d = gens[0].len();
    let facets = brute_facets(gens);
    rank(&facets) == d
}

//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Everything here works on `BigInt` entries: elimination is fraction-free
//! (Bareiss) where only rank or determinant is needed, and unimodular where a
//! lattice basis must be preserved (kernels, Hermite rows, diagonal form).

mod diagonal;
mod lattice;

pub use diagonal::{diagonalize, solve_integer_system, DiagonalForm};
pub use lattice::{to_full_dimensional, LatticeEmbedding, LatticeMode};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type IntVector = Vec<BigInt>;

/// Builds an `IntVector` from machine integers.
pub fn ivec(entries: &[i64]) -> IntVector {
    entries.iter().map(|&e| BigInt::from(e)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vector(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[BigInt]) -> IntVector {
    a.iter().map(|x| -x).collect()
}

pub fn scale(a: &[BigInt], k: &BigInt) -> IntVector {
    a.iter().map(|x| x * k).collect()
}

/// `a + k * b`
pub fn add_scaled(a: &[BigInt], k: &BigInt, b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x + k * y).collect()
}

/// Nonnegative gcd of the entries; zero for the zero vector.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides `v` by the gcd of its entries.
pub fn primitive_part(v: &[BigInt]) -> Result<IntVector> {
    let g = content(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Extended gcd: `(g, s, t)` with `g = s*a + t*b` and `g >= 0`.
pub fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// A rectangular matrix of arbitrary-precision integers, stored by rows.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntMatrix {
    rows: Vec<IntVector>,
    ncols: usize,
}

impl IntMatrix {
    pub fn new(rows: Vec<IntVector>, ncols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimMismatch {
                expected: ncols,
                got: bad.len(),
            });
        }
        Ok(IntMatrix { rows, ncols })
    }

    /// Panics if the rows are ragged or empty; use [`IntMatrix::new`] for
    /// untrusted input.
    pub fn from_rows(rows: Vec<IntVector>) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        IntMatrix::new(rows, ncols).expect("ragged matrix")
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(rows.iter().map(|r| ivec(r)).collect())
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix {
            rows: vec![vec![BigInt::zero(); ncols]; nrows],
            ncols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols
    }

    pub fn rows(&self) -> &[IntVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &IntVector {
        &self.rows[i]
    }

    pub fn into_rows(self) -> Vec<IntVector> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.rows[i][j] = value;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.ncols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                t.rows[j][i] = x.clone();
            }
        }
        t
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> IntVector {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, other.nrows(), "incompatible matrix product");
        let rows = self.rows.iter().map(|r| other.vec_mul(r)).collect();
        IntMatrix {
            rows,
            ncols: other.ncols,
        }
    }

    /// Row vector times matrix: `v * A`.
    pub fn vec_mul(&self, v: &[BigInt]) -> IntVector {
        assert_eq!(v.len(), self.nrows(), "incompatible vector-matrix product");
        let mut out = vec![BigInt::zero(); self.ncols];
        for (coef, row) in v.iter().zip(&self.rows) {
            if coef.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                *o += coef * x;
            }
        }
        out
    }

    /// Matrix times column vector: `A * v`.
    pub fn mul_vec(&self, v: &[BigInt]) -> IntVector {
        self.rows.iter().map(|r| dot(r, v)).collect()
    }

    pub fn select_rows(&self, indices: &[usize]) -> IntMatrix {
        IntMatrix {
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            ncols: self.ncols,
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "]")
    }
}

/// Rank over the rationals, by fraction-free elimination.
pub fn rank(a: &IntMatrix) -> usize {
    rank_of_rows(a.rows())
}

pub fn rank_of_rows(rows: &[IntVector]) -> usize {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m: Vec<IntVector> = rows.to_vec();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            for j in c + 1..ncols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Signed determinant by Bareiss elimination.
pub fn determinant(a: &IntMatrix) -> Result<BigInt> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    let n = a.nrows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = a.rows.clone();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(BigInt::zero());
        };
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

pub fn determinant_abs(a: &IntMatrix) -> Result<BigInt> {
    determinant(a).map(|d| d.abs())
}

/// Adjugate of a square matrix, so that `A * adj(A) = det(A) * I`.
pub fn adjugate(a: &IntMatrix) -> Result<(IntMatrix, BigInt)> {
    let det = determinant(a)?;
    let n = a.nrows();
    if det.is_zero() {
        // cofactor expansion is only needed for invertible cells here
        let mut adj = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                adj.rows[j][i] = cofactor(a, i, j)?;
            }
        }
        return Ok((adj, det));
    }
    // det * A^{-1} via Gauss-Jordan over the rationals
    let mut aug: Vec<Vec<BigRational>> = a
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|x| BigRational::from(x.clone())).collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !aug[i][c].is_zero()).expect("invertible");
        aug.swap(c, p);
        let piv = aug[c][c].clone();
        for x in aug[c].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..n {
            if i != c && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in 0..2 * n {
                    let v = &aug[i][j] - &f * &aug[c][j];
                    aug[i][j] = v;
                }
            }
        }
    }
    let mut adj = IntMatrix::zeros(n, n);
    let detq = BigRational::from(det.clone());
    for i in 0..n {
        for j in 0..n {
            let v = &aug[i][n + j] * &detq;
            debug_assert!(v.is_integer());
            adj.rows[i][j] = v.to_integer();
        }
    }
    Ok((adj, det))
}

fn cofactor(a: &IntMatrix, i: usize, j: usize) -> Result<BigInt> {
    let n = a.nrows();
    let minor: Vec<IntVector> = (0..n)
        .filter(|&r| r != i)
        .map(|r| {
            (0..n)
                .filter(|&c| c != j)
                .map(|c| a.rows[r][c].clone())
                .collect()
        })
        .collect();
    let m = IntMatrix {
        rows: minor,
        ncols: n - 1,
    };
    let d = determinant(&m)?;
    Ok(if (i + j) % 2 == 0 { d } else { -d })
}

/// Unimodular row reduction of `rows` to echelon form on the first
/// `reduce_cols` columns. Row operations are applied to whole rows, so any
/// trailing columns record the transformation. Returns the pivot columns.
pub(crate) fn echelon_in_place(rows: &mut [IntVector], reduce_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..reduce_cols {
        if r == rows.len() {
            break;
        }
        loop {
            // smallest nonzero entry in column c at or below r becomes pivot
            let mut best: Option<usize> = None;
            for i in r..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| rows[i][c].abs() < rows[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(i);
                let pivot_row = &head[r];
                for (x, y) in tail[0].iter_mut().zip(pivot_row) {
                    *x -= &q * y;
                }
                if !tail[0][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !rows[r][c].is_zero() {
            pivots.push(c);
            r += 1;
        }
    }
    pivots
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: positive
/// pivots, entries above each pivot reduced into `[0, pivot)`. Zero rows are
/// dropped, so the result is a basis of the row lattice.
pub fn hermite_rows(rows: &[IntVector]) -> Vec<IntVector> {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut m = rows.to_vec();
    let pivots = echelon_in_place(&mut m, ncols);
    m.truncate(pivots.len());
    for (r, &c) in pivots.iter().enumerate() {
        if m[r][c].is_negative() {
            m[r] = neg(&m[r]);
        }
        for above in 0..r {
            let q = m[above][c].div_floor(&m[r][c]);
            if !q.is_zero() {
                let reduced = add_scaled(&m[above], &-q, &m[r]);
                m[above] = reduced;
            }
        }
    }
    m
}

/// A lattice basis of `{x in Z^n : A x = 0}`.
///
/// The basis comes from a unimodular column transformation of `A`, so it
/// spans the full integer kernel rather than a finite-index sublattice. It is
/// returned in Hermite row form.
pub fn integer_kernel_basis(a: &IntMatrix) -> Vec<IntVector> {
    let n = a.ncols();
    let m = a.nrows();
    // rows of A^T augmented with the identity
    let mut rows: Vec<IntVector> = (0..n)
        .map(|j| {
            let mut r: IntVector = a.rows.iter().map(|row| row[j].clone()).collect();
            r.extend((0..n).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let pivots = echelon_in_place(&mut rows, m);
    let kernel: Vec<IntVector> = rows[pivots.len()..]
        .iter()
        .map(|r| r[m..].to_vec())
        .collect();
    debug_assert!(kernel.iter().all(|k| is_zero_vector(&a.mul_vec(k))));
    hermite_rows(&kernel)
}

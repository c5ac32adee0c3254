use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{IntMatrix, IntVector};

/// Diagonal form `U * A * W = D` with `U`, `W` unimodular.
///
/// The diagonal entries are the nonzero invariants `d_0, ..., d_{rank-1}`
/// (positive, not necessarily in divisibility order) followed by zeros.
#[derive(Clone, Debug)]
pub struct DiagonalForm {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub u: IntMatrix,
    pub w: IntMatrix,
    pub w_inv: IntMatrix,
}

struct Work {
    a: Vec<IntVector>,
    u: Vec<IntVector>,
    w: Vec<IntVector>,
    w_inv: Vec<IntVector>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.a.iter_mut().chain(self.w.iter_mut()) {
            r.swap(i, j);
        }
        self.w_inv.swap(i, j);
    }

    /// row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let src = m[t].clone();
            for (x, y) in m[i].iter_mut().zip(&src) {
                *x -= q * y;
            }
        }
    }

    /// col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.w] {
            for r in m.iter_mut() {
                let v = q * &r[t];
                r[j] -= v;
            }
        }
        // inverse operation acts on rows of W^{-1}: row_t += q * row_j
        let src = self.w_inv[j].clone();
        for (x, y) in self.w_inv[t].iter_mut().zip(&src) {
            *x += q * y;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -&*x;
            }
        }
    }
}

/// Diagonalizes `a` by unimodular row and column operations.
pub fn diagonalize(a: &IntMatrix) -> DiagonalForm {
    let m = a.nrows();
    let n = a.ncols();
    let mut wk = Work {
        a: a.rows().to_vec(),
        u: IntMatrix::identity(m).into_rows(),
        w: IntMatrix::identity(n).into_rows(),
        w_inv: IntMatrix::identity(n).into_rows(),
    };
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &wk.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < wk.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        wk.swap_rows(t, bi);
        wk.swap_cols(t, bj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if wk.a[i][t].is_zero() {
                    continue;
                }
                let q = wk.a[i][t].div_floor(&wk.a[t][t]);
                wk.row_sub(i, t, &q);
                if !wk.a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if wk.a[t][j].is_zero() {
                    continue;
                }
                let q = wk.a[t][j].div_floor(&wk.a[t][t]);
                wk.col_sub(j, t, &q);
                if !wk.a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // move the smallest remainder in row/column t to the pivot
            let mut best = (t, t);
            for i in t + 1..m {
                let x = &wk.a[i][t];
                if !x.is_zero() && x.abs() < wk.a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..n {
                let x = &wk.a[t][j];
                if !x.is_zero() && x.abs() < wk.a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                wk.swap_rows(t, best.0);
            }
            if best.1 != t {
                wk.swap_cols(t, best.1);
            }
        }
        if wk.a[t][t].is_negative() {
            wk.negate_row(t);
        }
        t += 1;
    }
    let diagonal = (0..m.min(n)).map(|i| wk.a[i][i].clone()).collect();
    DiagonalForm {
        diagonal,
        rank: t,
        u: IntMatrix::new(wk.u, m).expect("square"),
        w: IntMatrix::new(wk.w, n).expect("square"),
        w_inv: IntMatrix::new(wk.w_inv, n).expect("square"),
    }
}

/// An integral solution of `a * x = b`, if one exists.
pub fn solve_integer_system(a: &IntMatrix, b: &[BigInt]) -> Option<IntVector> {
    assert_eq!(a.nrows(), b.len());
    let form = diagonalize(a);
    let rhs = form.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.ncols()];
    for (i, value) in rhs.iter().enumerate() {
        if i < form.rank {
            let (q, r) = value.div_rem(&form.diagonal[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !value.is_zero() {
            return None;
        }
    }
    Some(form.w.mul_vec(&y))
}

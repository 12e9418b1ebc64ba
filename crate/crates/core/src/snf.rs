//! Smith normal form over ℤ with unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    /// Diagonal entries `d_1 | d_2 | …`, nonnegative; length `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    /// `left · m · right = diag`.
    pub left: IntMatrix,
    pub right: IntMatrix,
    /// Inverse of `right`.
    pub right_inv: IntMatrix,
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn int_mul(a: &IntMatrix, b: &IntMatrix, inner: usize, cols: usize) -> IntMatrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

struct State {
    m: IntMatrix,
    left: IntMatrix,
    right: IntMatrix,
    right_inv: IntMatrix,
    rows: usize,
    cols: usize,
}

impl State {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.m.swap(i, j);
        self.left.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in self.m.iter_mut().chain(self.right.iter_mut()) {
            r.swap(i, j);
        }
        self.right_inv.swap(i, j);
    }

    /// row_i += c · row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.cols {
            let v = &self.m[j][k] * c;
            self.m[i][k] += v;
        }
        for k in 0..self.rows {
            let v = &self.left[j][k] * c;
            self.left[i][k] += v;
        }
    }

    /// col_i += c · col_j; the inverse picks up row_j -= c · row_i.
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        for r in self.m.iter_mut().chain(self.right.iter_mut()) {
            let v = &r[j] * c;
            r[i] += v;
        }
        for k in 0..self.cols {
            let v = &self.right_inv[i][k] * c;
            self.right_inv[j][k] -= v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.m[i].iter_mut().chain(self.left[i].iter_mut()) {
            *x = -&*x;
        }
    }
}

pub fn smith_normal_form(m: &IntMatrix, rows: usize, cols: usize) -> Smith {
    let mut s = State {
        m: m.clone(),
        left: identity(rows),
        right: identity(cols),
        right_inv: identity(cols),
        rows,
        cols,
    };
    let n = rows.min(cols);
    for t in 0..n {
        // bring the smallest nonzero entry of the trailing block to (t, t)
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !s.m[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| s.m[i][j].abs() < s.m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            s.swap_rows(t, bi);
            s.swap_cols(t, bj);
            let p = s.m[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = s.m[i][t].div_floor(&p);
                if !q.is_zero() {
                    s.add_row(i, t, &-q);
                }
                clean &= s.m[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = s.m[t][j].div_floor(&p);
                if !q.is_zero() {
                    s.add_col(j, t, &-q);
                }
                clean &= s.m[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility of the rest of the block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !s.m[i][j].is_multiple_of(&p));
            match bad {
                Some((i, _)) => s.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if s.m[t][t].is_negative() {
            s.negate_row(t);
        }
    }
    Smith {
        diagonal: (0..n).map(|i| s.m[i][i].clone()).collect(),
        left: s.left,
        right: s.right,
        right_inv: s.right_inv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn check(m: &IntMatrix, rows: usize, cols: usize) -> Smith {
        let s = smith_normal_form(m, rows, cols);
        let d = int_mul(&int_mul(&s.left, m, rows, cols), &s.right, cols, cols);
        for i in 0..rows {
            for j in 0..cols {
                let want = if i == j { s.diagonal[i].clone() } else { BigInt::zero() };
                assert_eq!(d[i][j], want);
            }
        }
        assert_eq!(int_mul(&s.right, &s.right_inv, cols, cols), identity(cols));
        for w in s.diagonal.windows(2) {
            assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn small_cases() {
        assert_eq!(check(&im(&[&[2]]), 1, 1).diagonal, vec![BigInt::from(2)]);
        let s = check(&im(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3, 3);
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let s = check(&im(&[&[0, 0]]), 1, 2);
        assert_eq!(s.diagonal, vec![BigInt::zero()]);
        let s = check(&im(&[&[2, 0], &[0, 3]]), 2, 2);
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
    }
}

#![allow(dead_code)]

use proptest::prelude::*;
use reidemeister::algebra::{FieldElement, Matrix};
use reidemeister::graded::BasedComplex;

pub fn int_matrix(rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m[(r, c)] = FieldElement::int(entries[r * cols + c]);
        }
    }
    m
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| int_matrix(rows, cols, &v))
}

pub fn square(max: usize) -> impl Strategy<Value = Matrix> {
    (0..=max).prop_flat_map(|n| matrix(n, n))
}

/// Random complex: every differential factors through the kernel of the one below.
pub fn complex(max_len: usize, max_rank: usize) -> impl Strategy<Value = BasedComplex> {
    (1..=max_len)
        .prop_flat_map(move |len| {
            (proptest::collection::vec(0..=max_rank, len), proptest::collection::vec(-2i64..=2, 64))
        })
        .prop_map(|(ranks, pool)| {
            let mut it = pool.into_iter().cycle();
            let mut diffs: Vec<Matrix> = Vec::new();
            for i in 1..ranks.len() {
                let (r, c) = (ranks[i - 1], ranks[i]);
                let m = match diffs.last() {
                    None => {
                        let v: Vec<i64> = (0..r * c).map(|_| it.next().unwrap()).collect();
                        int_matrix(r, c, &v)
                    }
                    Some(prev) => {
                        let k = prev.kernel_basis();
                        if k.cols() == 0 {
                            Matrix::zeros(r, c)
                        } else {
                            let v: Vec<i64> = (0..k.cols() * c).map(|_| it.next().unwrap()).collect();
                            k.mul(&int_matrix(k.cols(), c, &v)).unwrap()
                        }
                    }
                };
                diffs.push(m);
            }
            BasedComplex::new(0, ranks, diffs).unwrap()
        })
}

//! Bounded word-problem search by length-nonincreasing relator moves on cyclic words.
//!
//! A move replaces a subword `s` by `t⁻¹` whenever `st` is a cyclic permutation of a
//! relator or its inverse and `|t| ≤ |s|`. This is Dehn's algorithm plus the
//! length-preserving half-relator moves, which is enough for free, free abelian and
//! surface groups.

use std::collections::{HashSet, VecDeque};

use super::word::Word;
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: usize = 10_000;
pub const BUDGET_ENV: &str = "REIDEMEISTER_REWRITE_BUDGET";

/// Budget from the environment, falling back to [`DEFAULT_BUDGET`].
pub fn configured_budget() -> usize {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

fn cyclic_reduce(mut w: Vec<i32>) -> Vec<i32> {
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

fn free_reduce(w: Vec<i32>) -> Vec<i32> {
    Word::from_letters(w).letters().to_vec()
}

fn rotation(w: &[i32], k: usize) -> Vec<i32> {
    w[k..].iter().chain(&w[..k]).copied().collect()
}

fn canonical(w: Vec<i32>) -> Vec<i32> {
    let w = cyclic_reduce(free_reduce(w));
    (0..w.len().max(1))
        .map(|k| if w.is_empty() { w.clone() } else { rotation(&w, k) })
        .min()
        .unwrap_or_default()
}

pub struct Rewriter {
    /// `(s, t⁻¹)` pairs.
    moves: Vec<(Vec<i32>, Vec<i32>)>,
    budget: usize,
}

impl Rewriter {
    pub fn new(relators: &[Word], budget: usize) -> Self {
        let mut moves = Vec::new();
        let mut seen = HashSet::new();
        for r in relators {
            for base in [r.clone(), r.inverse()] {
                let c = cyclic_reduce(base.letters().to_vec());
                for k in 0..c.len() {
                    let rot = rotation(&c, k);
                    let n = rot.len();
                    for cut in n.div_ceil(2)..=n {
                        let s = rot[..cut].to_vec();
                        let t_inv: Vec<i32> = rot[cut..].iter().rev().map(|l| -l).collect();
                        if seen.insert((s.clone(), t_inv.clone())) {
                            moves.push((s, t_inv));
                        }
                    }
                }
            }
        }
        Rewriter { moves, budget }
    }

    /// Whether `w` is trivial in the presented group, as far as the search can certify.
    /// `Ok(false)` means every reachable word of no greater length was explored.
    pub fn is_trivial(&self, w: &Word) -> Result<bool> {
        let start = canonical(w.letters().to_vec());
        if start.is_empty() {
            return Ok(true);
        }
        let mut seen = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(cur) = queue.pop_front() {
            for k in 0..cur.len() {
                let rot = rotation(&cur, k);
                for (s, t_inv) in &self.moves {
                    if s.len() > rot.len() || rot[..s.len()] != s[..] {
                        continue;
                    }
                    let next = canonical(t_inv.iter().chain(&rot[s.len()..]).copied().collect());
                    if next.is_empty() {
                        return Ok(true);
                    }
                    if seen.insert(next.clone()) {
                        if seen.len() > self.budget {
                            return Err(Error::RelatorRewriteBudgetExceeded { budget: self.budget });
                        }
                        queue.push_back(next);
                    }
                }
            }
        }
        Ok(false)
    }

    pub fn equal(&self, a: &Word, b: &Word) -> Result<bool> {
        self.is_trivial(&a.mul(&b.inverse()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(l: &[i32]) -> Word {
        Word::from_letters(l.iter().copied())
    }

    #[test]
    fn abelian_words() {
        let rw = Rewriter::new(&[w(&[1, 2, -1, -2])], DEFAULT_BUDGET);
        assert!(rw.is_trivial(&w(&[1, 2, -1, -2])).unwrap());
        assert!(rw.is_trivial(&w(&[1, 1, 2, -1, -2, -1])).unwrap());
        assert!(rw.is_trivial(&w(&[2, 1, 2, -1, -2, -2, 1, -1])).unwrap());
        assert!(!rw.is_trivial(&w(&[1, 2, -1])).unwrap());
        assert!(rw.equal(&w(&[1, 2]), &w(&[2, 1])).unwrap());
    }

    #[test]
    fn free_and_torsion() {
        let free = Rewriter::new(&[], DEFAULT_BUDGET);
        assert!(!free.is_trivial(&w(&[1, 2, -1, -2])).unwrap());
        let z2 = Rewriter::new(&[w(&[1, 1])], DEFAULT_BUDGET);
        assert!(z2.equal(&w(&[1]), &w(&[-1])).unwrap());
    }

    #[test]
    fn genus_two() {
        let r = w(&[1, 2, -1, -2, 3, 4, -3, -4]);
        let rw = Rewriter::new(std::slice::from_ref(&r), DEFAULT_BUDGET);
        assert!(rw.is_trivial(&r.pow(2)).unwrap());
        assert!(rw.is_trivial(&w(&[3]).mul(&r).mul(&w(&[-3]))).unwrap());
        assert!(!rw.is_trivial(&w(&[1, 2, -1, -2])).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let rw = Rewriter::new(&[w(&[1, 2, -1, -2])], 3);
        let long = w(&[1, 2, 1, 2, 1, 2, -1, -1, -1, -2, -2, -2]);
        assert!(matches!(rw.is_trivial(&long), Err(Error::RelatorRewriteBudgetExceeded { budget: 3 })));
    }
}

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::complex::CellComplex;
use super::word::Word;
use super::GroupPresentation;
use crate::snf::smith_normal_form;

/// Element of `ℤ^r ⊕ ⊕ ℤ/dᵢ`; `moduli[k] = 0` marks a free coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct H1Class {
    pub coords: Vec<i64>,
    pub moduli: Vec<i64>,
}

impl H1Class {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// `H₁ = π^{ab}` via Smith normal form of the relator exponent matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1 {
    generators: usize,
    /// Torsion divisors first, then zeros for the free part.
    moduli: Vec<i64>,
    /// Columns of the coordinate change kept in the quotient (generators × coords).
    q: Vec<Vec<i64>>,
    /// Matching rows of the inverse (coords × generators).
    q_inv: Vec<Vec<i64>>,
}

fn small(x: &BigInt) -> i64 {
    x.to_i64().expect("H1 coordinates fit in i64")
}

pub fn h1(c: &CellComplex) -> H1 {
    presentation_h1(c.presentation())
}

pub(crate) fn presentation_h1(p: &GroupPresentation) -> H1 {
    let n = p.generator_count();
    let m = p.relators().len();
    let rel: Vec<Vec<BigInt>> = p
        .relators()
        .iter()
        .map(|r| r.abelianize(n).into_iter().map(BigInt::from).collect())
        .collect();
    let s = smith_normal_form(&rel, m, n);
    let mut moduli = Vec::new();
    let mut keep = Vec::new();
    for k in 0..n {
        let d = s.diagonal.get(k).map_or(0, small);
        if d != 1 {
            moduli.push(d);
            keep.push(k);
        }
    }
    // torsion before free, stable within each group
    let mut order: Vec<usize> = (0..keep.len()).collect();
    order.sort_by_key(|&i| (moduli[i] == 0, i));
    let moduli: Vec<i64> = order.iter().map(|&i| moduli[i]).collect();
    let keep: Vec<usize> = order.iter().map(|&i| keep[i]).collect();
    let q = (0..n).map(|g| keep.iter().map(|&k| small(&s.right[g][k])).collect()).collect();
    let q_inv = keep.iter().map(|&k| s.right_inv[k].iter().map(small).collect()).collect();
    H1 { generators: n, moduli, q, q_inv }
}

impl H1 {
    pub fn rank(&self) -> usize {
        self.moduli.iter().filter(|&&d| d == 0).count()
    }

    pub fn torsion(&self) -> Vec<i64> {
        self.moduli.iter().copied().filter(|&d| d != 0).collect()
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    fn reduce(&self, mut coords: Vec<i64>) -> H1Class {
        for (c, &d) in coords.iter_mut().zip(&self.moduli) {
            if d != 0 {
                *c = c.rem_euclid(d);
            }
        }
        H1Class { coords, moduli: self.moduli.clone() }
    }

    pub fn zero(&self) -> H1Class {
        self.reduce(vec![0; self.moduli.len()])
    }

    /// The abelianization map `q`.
    pub fn abelianize(&self, w: &Word) -> H1Class {
        let x = w.abelianize(self.generators);
        let coords = (0..self.moduli.len())
            .map(|k| (0..self.generators).map(|g| x[g] * self.q[g][k]).sum())
            .collect();
        self.reduce(coords)
    }

    pub fn add(&self, a: &H1Class, b: &H1Class) -> H1Class {
        self.reduce(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &H1Class) -> H1Class {
        self.reduce(a.coords.iter().map(|x| -x).collect())
    }

    /// A word representing the class.
    pub fn representative(&self, a: &H1Class) -> Word {
        let mut letters = Vec::new();
        for g in 0..self.generators {
            let e: i64 = (0..self.moduli.len()).map(|k| a.coords[k] * self.q_inv[k][g]).sum();
            let l = g as i32 + 1;
            for _ in 0..e.unsigned_abs() {
                letters.push(if e < 0 { -l } else { l });
            }
        }
        Word::from_letters(letters)
    }
}

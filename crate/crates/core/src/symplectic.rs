//! Divided-power symplectic volumes (Pfaffians) and determinant-line pairings.

use std::collections::HashMap;

use crate::algebra::{FieldElement, Matrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSpace {
    omega: Matrix,
}

pub fn is_alternating(m: &Matrix) -> bool {
    m.is_square()
        && (0..m.rows()).all(|i| m[(i, i)].is_zero() && (i + 1..m.rows()).all(|j| (&m[(i, j)] + &m[(j, i)]).is_zero()))
}

impl SymplecticSpace {
    pub fn new(omega: Matrix) -> Result<Self> {
        if !is_alternating(&omega) || omega.rows() % 2 == 1 {
            return Err(Error::NotAlternating);
        }
        if omega.determinant()?.is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(SymplecticSpace { omega })
    }

    /// Blocks `[[0, 1], [−1, 0]]` in the basis `e₁, f₁, …, eₙ, fₙ`.
    pub fn standard(n: usize) -> Self {
        let mut m = Matrix::zeros(2 * n, 2 * n);
        for k in 0..n {
            m[(2 * k, 2 * k + 1)] = FieldElement::one();
            m[(2 * k + 1, 2 * k)] = FieldElement::int(-1);
        }
        SymplecticSpace { omega: m }
    }

    pub fn omega(&self) -> &Matrix {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.omega.rows()
    }

    pub fn direct_sum(&self, o: &SymplecticSpace) -> SymplecticSpace {
        SymplecticSpace { omega: self.omega.direct_sum(&o.omega) }
    }
}

/// Pfaffian by expansion along the first remaining row, memoized on index subsets.
pub fn pfaffian(m: &Matrix) -> Result<FieldElement> {
    if !is_alternating(m) {
        return Err(Error::NotAlternating);
    }
    let n = m.rows();
    if n % 2 == 1 {
        return Ok(FieldElement::zero_of(m.tag()));
    }
    assert!(n <= 64, "pfaffian limited to 64 rows");
    let mut memo = HashMap::new();
    Ok(pf_rec(m, if n == 64 { u64::MAX } else { (1u64 << n) - 1 }, &mut memo))
}

fn pf_rec(m: &Matrix, mask: u64, memo: &mut HashMap<u64, FieldElement>) -> FieldElement {
    if mask == 0 {
        return FieldElement::one_of(m.tag());
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let i = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << i);
    let mut acc = FieldElement::zero_of(m.tag());
    let mut sign = 1;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if !m[(i, j)].is_zero() {
            let sub = pf_rec(m, rest & !(1 << j), memo);
            let term = &m[(i, j)] * &sub;
            acc = if sign == 1 { &acc + &term } else { &acc - &term };
        }
        sign = -sign;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Coefficient of `e¹∧…∧e^{2n}` in `ωⁿ/n!`.
pub fn symplectic_volume(s: &SymplecticSpace) -> FieldElement {
    pfaffian(&s.omega).expect("validated on construction")
}

pub fn volume_squares_canonically(s: &SymplecticSpace) -> Result<bool> {
    let v = symplectic_volume(s);
    Ok(&v * &v == s.omega.determinant()?)
}

pub fn volume_additivity(s1: &SymplecticSpace, s2: &SymplecticSpace) -> bool {
    symplectic_volume(&s1.direct_sum(s2)) == &symplectic_volume(s1) * &symplectic_volume(s2)
}

/// Checks `Pf(G ⊗ ω) = det(G)^{dim W/2} · Pf(ω)^{dim V}` on the basis `vᵢ ⊗ w_j`
/// (i-major), where the reordering sign is `+1`.
pub fn ortho_symp_tensor_volume(gram: &Matrix, w: &SymplecticSpace) -> Result<bool> {
    if !gram.is_square() || gram != &gram.transpose() {
        return Err(Error::NotOrthogonal("gram matrix is not symmetric".into()));
    }
    let dg = gram.determinant()?;
    if dg.is_zero() {
        return Err(Error::Singular);
    }
    let lhs = pfaffian(&gram.kron(&w.omega))?;
    let rhs = &dg.pow((w.dim() / 2) as i64)? * &symplectic_volume(w).pow(gram.rows() as i64)?;
    Ok(lhs == rhs)
}

/// The pairing `det(V*) ⊗ det(V) → k` induced by `B: V → V*`, i.e. `det B`.
pub fn dual_pairing_det(b: &Matrix) -> Result<FieldElement> {
    let d = b.determinant()?;
    if d.is_zero() {
        return Err(Error::Singular);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alt(entries: &[i64], n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                m[(i, j)] = FieldElement::int(entries[k]);
                m[(j, i)] = FieldElement::int(-entries[k]);
                k += 1;
            }
        }
        m
    }

    /// Coefficient of `e¹∧…∧e^{2n}` in `ωⁿ/n!`, expanding the wedge power over ordered pairs.
    fn exterior_oracle(m: &Matrix) -> FieldElement {
        let n = m.rows() / 2;
        fn go(m: &Matrix, used: &mut Vec<usize>, left: usize, acc: &mut FieldElement) {
            if left == 0 {
                let mut inv = 0;
                for a in 0..used.len() {
                    for b in a + 1..used.len() {
                        if used[a] > used[b] {
                            inv += 1;
                        }
                    }
                }
                let mut term = FieldElement::int(if inv % 2 == 0 { 1 } else { -1 });
                for k in 0..used.len() / 2 {
                    // ω = Σ_{i<j} ω_ij eⁱ∧eʲ, so an ordered pair (i, j) contributes ω_ij/2
                    term = &term * &(&m[(used[2 * k], used[2 * k + 1])] * &FieldElement::rat(1, 2));
                }
                *acc = &*acc + &term;
                return;
            }
            for i in 0..m.rows() {
                for j in 0..m.rows() {
                    if i != j && !used.contains(&i) && !used.contains(&j) {
                        used.push(i);
                        used.push(j);
                        go(m, used, left - 1, acc);
                        used.truncate(used.len() - 2);
                    }
                }
            }
        }
        let mut acc = FieldElement::zero();
        go(m, &mut Vec::new(), n, &mut acc);
        let fact: i64 = (1..=n as i64).product();
        &acc * &FieldElement::rat(1, fact)
    }

    #[test]
    fn standard_volume_is_one() {
        for n in 0..5 {
            assert_eq!(symplectic_volume(&SymplecticSpace::standard(n)), FieldElement::one());
        }
        let c = FieldElement::rat(7, 3);
        let s = SymplecticSpace::new(SymplecticSpace::standard(1).omega().scale(&c)).unwrap();
        assert_eq!(symplectic_volume(&s), c);
        assert!(volume_squares_canonically(&s).unwrap());
    }

    #[test]
    fn matches_exterior_power() {
        let m = alt(&[1, 2, 3, 4, 5, 6], 4);
        assert_eq!(pfaffian(&m).unwrap(), FieldElement::int(6 - 2 * 5 + 3 * 4));
        assert_eq!(pfaffian(&m).unwrap(), exterior_oracle(&m));
        let m6 = alt(&[2, -1, 0, 3, 1, 4, 1, -2, 0, 5, 1, 1, -3, 2, 7], 6);
        assert_eq!(pfaffian(&m6).unwrap(), exterior_oracle(&m6));
        assert!(volume_squares_canonically(&SymplecticSpace::new(m6).unwrap()).unwrap());
    }

    #[test]
    fn validation() {
        assert_eq!(SymplecticSpace::new(Matrix::from_ints(&[&[1, 0], &[0, 1]])), Err(Error::NotAlternating));
        assert_eq!(SymplecticSpace::new(Matrix::zeros(2, 2)), Err(Error::Degenerate));
        assert_eq!(SymplecticSpace::new(Matrix::zeros(3, 3)), Err(Error::NotAlternating));
    }

    #[test]
    fn additivity_and_tensor() {
        let a = SymplecticSpace::new(alt(&[3], 2)).unwrap();
        let b = SymplecticSpace::new(alt(&[1, 2, 3, 4, 5, 6], 4)).unwrap();
        assert!(volume_additivity(&a, &b));
        assert!(ortho_symp_tensor_volume(&Matrix::identity(1), &b).unwrap());
        assert!(ortho_symp_tensor_volume(&Matrix::identity(2), &SymplecticSpace::standard(1)).unwrap());
        let g = Matrix::diagonal(&[FieldElement::int(2), FieldElement::rat(-1, 3)]);
        assert!(ortho_symp_tensor_volume(&g, &a).unwrap());
        let g2 = Matrix::from_ints(&[&[2, 1], &[1, 3]]);
        assert!(ortho_symp_tensor_volume(&g2, &b).unwrap());
    }

    #[test]
    fn pairing_determinant() {
        assert_eq!(dual_pairing_det(&Matrix::identity(2)).unwrap(), FieldElement::one());
        assert_eq!(dual_pairing_det(&Matrix::from_ints(&[&[2, 0], &[0, 3]])).unwrap(), FieldElement::int(6));
        assert_eq!(dual_pairing_det(&Matrix::zeros(2, 2)), Err(Error::Singular));
    }
}

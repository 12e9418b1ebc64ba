//! Graded determinant lines (Pic^ℤ with its Koszul signs), based complexes,
//! homology bases and the Euler isomorphism det C ≅ det H.

use crate::algebra::{FieldElement, FieldTag, Matrix};
use crate::error::{Error, Result};

/// A trivialized graded line: a nonzero scalar and an integer degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLineElement {
    pub scalar: FieldElement,
    pub degree: i64,
}

fn parity_sign(odd: bool) -> i32 {
    if odd {
        -1
    } else {
        1
    }
}

impl GradedLineElement {
    pub fn new(scalar: FieldElement, degree: i64) -> Result<Self> {
        if scalar.is_zero() {
            return Err(Error::Malformed("graded line scalar must be nonzero".into()));
        }
        Ok(GradedLineElement { scalar, degree })
    }

    pub fn unit() -> Self {
        GradedLineElement { scalar: FieldElement::one(), degree: 0 }
    }

    /// Unit for ⊗*.
    pub fn star_unit() -> Self {
        GradedLineElement { scalar: FieldElement::one(), degree: 1 }
    }
}

fn same_field(a: &GradedLineElement, b: &GradedLineElement) -> Result<()> {
    if a.scalar.tag() != b.scalar.tag() {
        return Err(Error::FieldMismatch(format!("{} vs {}", a.scalar.tag(), b.scalar.tag())));
    }
    Ok(())
}

/// `(L₁, n₁) ⊗ (L₂, n₂) = (L₁L₂, n₁ + n₂)`.
pub fn gl_tensor(a: &GradedLineElement, b: &GradedLineElement) -> Result<GradedLineElement> {
    same_field(a, b)?;
    Ok(GradedLineElement { scalar: &a.scalar * &b.scalar, degree: a.degree + b.degree })
}

/// Braiding sign of ⊗: `(−1)^{n₁n₂}`.
pub fn gl_braid(a: &GradedLineElement, b: &GradedLineElement) -> i32 {
    braid_sign(a.degree, b.degree)
}

pub fn braid_sign(n1: i64, n2: i64) -> i32 {
    parity_sign((n1 * n2).rem_euclid(2) == 1)
}

/// `(L₁, n₁) ⊗* (L₂, n₂) = (L₁^{n₂} L₂^{n₁}, n₁n₂)`.
pub fn gl_star_tensor(a: &GradedLineElement, b: &GradedLineElement) -> Result<GradedLineElement> {
    same_field(a, b)?;
    Ok(GradedLineElement {
        scalar: &a.scalar.pow(b.degree)? * &b.scalar.pow(a.degree)?,
        degree: a.degree * b.degree,
    })
}

fn tri(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// Braiding sign of ⊗*: `(−1)^{(n₁(n₁−1)/2)(n₂(n₂−1)/2)}`.
pub fn gl_star_braid(a: &GradedLineElement, b: &GradedLineElement) -> i32 {
    star_braid_sign(a.degree, b.degree)
}

pub fn star_braid_sign(n1: i64, n2: i64) -> i32 {
    parity_sign((tri(n1) * tri(n2)).rem_euclid(2) == 1)
}

/// Left distributivity `a ⊗* (b ⊗ c) ≅ (a ⊗* b) ⊗ (a ⊗* c)`: `(−1)^{n₂n₃n₁(n₁−1)/2}`.
pub fn left_dist_sign(n1: i64, n2: i64, n3: i64) -> i32 {
    parity_sign((n2 * n3 * tri(n1)).rem_euclid(2) == 1)
}

/// Right distributivity carries no sign.
pub fn right_dist_sign(_n1: i64, _n2: i64, _n3: i64) -> i32 {
    1
}

/// Finite chain complex `C_lo ← … ← C_hi` with column-vector differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedComplex {
    lo: i64,
    ranks: Vec<usize>,
    /// `differentials[k]: C_{lo+k+1} → C_{lo+k}`.
    differentials: Vec<Matrix>,
}

impl BasedComplex {
    /// `differentials[k]` maps degree `lo+k+1` to `lo+k`.
    pub fn new(lo: i64, ranks: Vec<usize>, differentials: Vec<Matrix>) -> Result<Self> {
        if ranks.is_empty() {
            if differentials.is_empty() {
                return Ok(BasedComplex { lo, ranks, differentials });
            }
            return Err(Error::ShapeMismatch("differentials without chain groups".into()));
        }
        if differentials.len() + 1 != ranks.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} chain groups need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                differentials.len()
            )));
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.rows() != ranks[k] || d.cols() != ranks[k + 1] {
                return Err(Error::ShapeMismatch(format!(
                    "differential out of degree {} is {}x{}, expected {}x{}",
                    lo + k as i64 + 1,
                    d.rows(),
                    d.cols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
        }
        for k in 1..differentials.len() {
            if !differentials[k - 1].mul(&differentials[k])?.is_zero() {
                return Err(Error::NotAComplex(format!(
                    "d∘d ≠ 0 out of degree {}",
                    lo + k as i64 + 1
                )));
            }
        }
        Ok(BasedComplex { lo, ranks, differentials })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: i64) -> usize {
        self.idx(i).map_or(0, |k| self.ranks[k])
    }

    fn idx(&self, i: i64) -> Option<usize> {
        let k = i - self.lo;
        (k >= 0 && (k as usize) < self.ranks.len()).then_some(k as usize)
    }

    /// `∂_i: C_i → C_{i−1}`, zero-shaped outside the stored range.
    pub fn d(&self, i: i64) -> Matrix {
        match (self.idx(i), self.idx(i - 1)) {
            (Some(k), Some(_)) => self.differentials[k - 1].clone(),
            _ => Matrix::zeros(self.rank(i - 1), self.rank(i)),
        }
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|i| if i.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(i) as i64)
            .sum()
    }

    pub fn tag(&self) -> FieldTag {
        if self.differentials.iter().any(|d| d.tag() == FieldTag::Qt) {
            FieldTag::Qt
        } else {
            FieldTag::Q
        }
    }

    /// Degreewise direct sum with `self` first in every degree.
    pub fn direct_sum(&self, o: &BasedComplex) -> BasedComplex {
        if self.ranks.is_empty() {
            return o.clone();
        }
        if o.ranks.is_empty() {
            return self.clone();
        }
        let lo = self.lo.min(o.lo);
        let hi = self.hi().max(o.hi());
        let ranks = (lo..=hi).map(|i| self.rank(i) + o.rank(i)).collect();
        let differentials = (lo + 1..=hi).map(|i| self.d(i).direct_sum(&o.d(i))).collect();
        BasedComplex { lo, ranks, differentials }
    }

    /// Same complex with the basis of each degree permuted: new basis vector `k` is old `perm[i][k]`.
    pub fn permute_bases(&self, perms: &[Vec<usize>]) -> BasedComplex {
        let p: Vec<Matrix> = perms.iter().map(|p| permutation_matrix(p)).collect();
        let differentials = (1..self.ranks.len())
            .map(|k| {
                let d = &self.differentials[k - 1];
                p[k - 1].transpose().mul(d).and_then(|x| x.mul(&p[k])).expect("shapes")
            })
            .collect();
        BasedComplex { lo: self.lo, ranks: self.ranks.clone(), differentials }
    }
}

/// Column `k` is the standard vector `e_{perm[k]}`.
pub fn permutation_matrix(perm: &[usize]) -> Matrix {
    let mut m = Matrix::zeros(perm.len(), perm.len());
    for (k, &j) in perm.iter().enumerate() {
        m[(j, k)] = FieldElement::one();
    }
    m
}

/// Sign of a permutation given as a list of images.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut j = s;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Per-degree homology representatives, stored as column matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub lo: i64,
    pub vectors: Vec<Matrix>,
}

impl GradedBasis {
    /// Empty basis for an acyclic complex.
    pub fn empty(c: &BasedComplex) -> Self {
        GradedBasis { lo: c.lo, vectors: c.ranks.iter().map(|&r| Matrix::zeros(r, 0)).collect() }
    }

    pub fn get(&self, i: i64, rank: usize) -> Matrix {
        let k = i - self.lo;
        if k >= 0 && (k as usize) < self.vectors.len() {
            self.vectors[k as usize].clone()
        } else {
            Matrix::zeros(rank, 0)
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.vectors.iter().map(Matrix::cols).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.iter().all(|v| v.cols() == 0)
    }

    pub fn direct_sum(&self, o: &GradedBasis) -> GradedBasis {
        let lo = self.lo.min(o.lo);
        let hi = (self.lo + self.vectors.len() as i64).max(o.lo + o.vectors.len() as i64);
        let rank = |b: &GradedBasis, i: i64| {
            let k = i - b.lo;
            if k >= 0 && (k as usize) < b.vectors.len() {
                b.vectors[k as usize].rows()
            } else {
                0
            }
        };
        GradedBasis {
            lo,
            vectors: (lo..hi)
                .map(|i| self.get(i, rank(self, i)).direct_sum(&o.get(i, rank(o, i))))
                .collect(),
        }
    }
}

/// Deterministic homology representatives: kernel-basis columns not in the span
/// of the boundaries, chosen by leftmost pivots after the boundary columns.
pub fn homology(c: &BasedComplex) -> GradedBasis {
    let vectors = c
        .degrees()
        .map(|i| {
            let z = c.d(i).kernel_basis();
            let (b, _) = c.d(i + 1).image_basis();
            let nb = b.cols();
            let pivots = b.hstack(&z).expect("rows").row_reduce().pivots;
            let pick: Vec<usize> = pivots.into_iter().filter(|&p| p >= nb).map(|p| p - nb).collect();
            z.select_columns(&pick)
        })
        .collect();
    GradedBasis { lo: c.lo, vectors }
}

pub fn homology_dims(c: &BasedComplex) -> Vec<usize> {
    c.degrees()
        .map(|i| {
            let r = c.rank(i);
            r - c.d(i).rank() - c.d(i + 1).rank()
        })
        .collect()
}

/// Scalar of `det^gr C` relative to the standard bases: always `(1, χ)`.
pub fn det_gr(c: &BasedComplex) -> GradedLineElement {
    GradedLineElement { scalar: FieldElement::one_of(c.tag()), degree: c.euler_characteristic() }
}

/// Turaev's sign-refinement exponent `N(C) = Σ α_i β_i mod 2`, with
/// `α_i = Σ_{j≤i} dim C_j` and `β_i = Σ_{j≤i} dim H_j`.
pub fn turaev_n(ranks: &[usize], hdims: &[usize]) -> usize {
    let (mut a, mut b, mut n) = (0usize, 0usize, 0usize);
    for (r, h) in ranks.iter().zip(hdims) {
        a += r;
        b += h;
        n += a * b;
    }
    n % 2
}

/// Image of the standard generator of det C in det H (relative to `h`):
/// `Π_i [∂b_{i+1}, h_i, b_i / c_i]^{(−1)^{i+1}}`.
pub fn euler_iso(c: &BasedComplex, h: &GradedBasis) -> Result<FieldElement> {
    euler_iso_with(c, h, crate::algebra::PivotOrder::Leftmost)
}

/// As [`euler_iso`], choosing the lifts `b_i` with the given pivot scan order.
pub fn euler_iso_with(
    c: &BasedComplex,
    h: &GradedBasis,
    order: crate::algebra::PivotOrder,
) -> Result<FieldElement> {
    let mut acc = FieldElement::one_of(c.tag());
    let lifts: Vec<Matrix> = c.degrees().map(|i| c.d(i).image_basis_with(order).1).collect();
    let lift = |i: i64| -> Matrix {
        let k = i - c.lo;
        if k >= 0 && (k as usize) < lifts.len() {
            lifts[k as usize].clone()
        } else {
            Matrix::zeros(c.rank(i), 0)
        }
    };
    for i in c.degrees() {
        let hi = h.get(i, c.rank(i));
        if hi.rows() != c.rank(i) {
            return Err(Error::NotAHomologyBasis(format!("degree {i}: wrong vector length")));
        }
        if !c.d(i).mul(&hi)?.is_zero() {
            return Err(Error::NotAHomologyBasis(format!("degree {i}: not a cycle")));
        }
        let bdry = c.d(i + 1).mul(&lift(i + 1))?;
        let m = bdry.hstack(&hi)?.hstack(&lift(i))?;
        if !m.is_square() {
            return Err(Error::NotAHomologyBasis(format!(
                "degree {i}: {} vectors for rank {}",
                m.cols(),
                m.rows()
            )));
        }
        let det = m.determinant()?;
        if det.is_zero() {
            return Err(Error::NotAHomologyBasis(format!("degree {i}: dependent modulo boundaries")));
        }
        acc = if (i + 1).rem_euclid(2) == 0 { &acc * &det } else { acc.checked_div(&det)? };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PivotOrder;

    fn gl(s: i64, n: i64) -> GradedLineElement {
        GradedLineElement::new(FieldElement::int(s), n).unwrap()
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(gl_tensor(&gl(2, 1), &gl(3, 1)).unwrap(), gl(6, 2));
        assert_eq!(gl_braid(&gl(1, 1), &gl(1, 1)), -1);
        assert_eq!(gl_tensor(&gl(5, 0), &GradedLineElement::unit()).unwrap(), gl(5, 0));
        assert_eq!(gl_star_tensor(&gl(2, 3), &gl(5, 2)).unwrap(), gl(500, 6));
        assert_eq!(star_braid_sign(2, 3), -1);
        assert_eq!(left_dist_sign(2, 1, 1), -1);
        let t = GradedLineElement::new(FieldElement::t(), 1).unwrap();
        assert!(matches!(gl_tensor(&t, &gl(1, 1)), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn det_gr_degrees() {
        let point = BasedComplex::new(0, vec![1], vec![]).unwrap();
        assert_eq!(det_gr(&point), gl(1, 1));
        let circle = BasedComplex::new(0, vec![1, 1], vec![Matrix::zeros(1, 1)]).unwrap();
        assert_eq!(det_gr(&circle).degree, 0);
        let torus =
            BasedComplex::new(0, vec![1, 2, 1], vec![Matrix::zeros(1, 2), Matrix::zeros(2, 1)]).unwrap();
        assert_eq!(det_gr(&torus).degree, 0);
    }

    #[test]
    fn euler_iso_acyclic_and_trivial() {
        let c = BasedComplex::new(0, vec![1, 1], vec![Matrix::from_ints(&[&[2]])]).unwrap();
        assert_eq!(euler_iso(&c, &GradedBasis::empty(&c)).unwrap(), FieldElement::rat(1, 2));
        let z = BasedComplex::new(0, vec![1, 2], vec![Matrix::zeros(1, 2)]).unwrap();
        let h = homology(&z);
        assert_eq!(h.dims(), vec![1, 2]);
        assert_eq!(euler_iso(&z, &h).unwrap(), FieldElement::one());
        assert!(matches!(euler_iso(&z, &GradedBasis::empty(&z)), Err(Error::NotAHomologyBasis(_))));
    }

    #[test]
    fn paper_torus_bracket() {
        // ε_x = −1, ε_y = 1: ∂a = −2v, ∂b = 0, ∂f = 0·a − 2·b
        let d1 = Matrix::from_ints(&[&[-2, 0]]);
        let d2 = Matrix::from_ints(&[&[0], &[-2]]);
        let c = BasedComplex::new(0, vec![1, 2, 1], vec![d1, d2]).unwrap();
        let h = GradedBasis::empty(&c);
        assert_eq!(euler_iso(&c, &h).unwrap(), FieldElement::int(-1));
        assert_eq!(euler_iso_with(&c, &h, PivotOrder::Rightmost).unwrap(), FieldElement::int(-1));
    }

    #[test]
    fn not_a_complex() {
        let d1 = Matrix::from_ints(&[&[1]]);
        let d2 = Matrix::from_ints(&[&[1]]);
        assert!(matches!(BasedComplex::new(0, vec![1, 1, 1], vec![d1, d2]), Err(Error::NotAComplex(_))));
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }
}

//! Truncated power series over ℚ and the Todd/Duflo series `J(x) = x / (exp(x) − 1)`.

use num_traits::{One, Zero};

use crate::algebra::{FieldElement, FieldTag, Matrix, Rational};
use crate::error::{Error, Result};

/// `Σ_{k ≤ N} a_k x^k`; arithmetic requires equal truncation orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Pads with zeros or truncates to order `n`.
    pub fn new(mut coeffs: Vec<Rational>, n: usize) -> Self {
        coeffs.resize(n + 1, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![], n)
    }

    pub fn constant(c: Rational, n: usize) -> Self {
        Self::new(vec![c], n)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(Rational::one(), n)
    }

    pub fn x(n: usize) -> Self {
        Self::new(vec![Rational::zero(), Rational::one()], n)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    fn same_order(&self, o: &Self) -> Result<()> {
        if self.order() != o.order() {
            return Err(Error::OrderMismatch(self.order(), o.order()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_order(o)?;
        Ok(TruncatedSeries { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_order(o)?;
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NonUnit);
        }
        let n = self.order();
        let inv0 = c0.recip();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -acc * &inv0;
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn derivative(&self) -> Self {
        let n = self.order();
        let c = (1..=n).map(|k| &self.coeffs[k] * Rational::from_integer(k.into())).collect();
        Self::new(c, n)
    }

    /// Antiderivative with zero constant term; the top coefficient is lost to truncation.
    pub fn integrate(&self) -> Self {
        let n = self.order();
        let mut c = vec![Rational::zero()];
        c.extend((0..n).map(|k| &self.coeffs[k] / Rational::from_integer((k + 1).into())));
        Self::new(c, n)
    }

    /// `exp(f)` for `f(0) = 0`, from `E′ = f′E`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        let df = self.derivative();
        let mut e = vec![Rational::zero(); n + 1];
        e[0] = Rational::one();
        for k in 1..=n {
            // k e_k = Σ_{j<k} (f′)_j e_{k−1−j}
            let mut acc = Rational::zero();
            for j in 0..k {
                acc += &df.coeffs[j] * &e[k - 1 - j];
            }
            e[k] = acc / Rational::from_integer(k.into());
        }
        Ok(TruncatedSeries { coeffs: e })
    }

    /// `log(f)` for `f(0) = 1`, as `∫ f′/f`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnit);
        }
        Ok(self.derivative().mul(&self.invert()?)?.integrate())
    }

    /// `f(g)` for `g(0) = 0`, by Horner's rule.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.same_order(g)?;
        if !g.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut acc = TruncatedSeries::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g)?.add(&TruncatedSeries::constant(c.clone(), n))?;
        }
        Ok(acc)
    }

    /// `f / x` for `f(0) = 0`, one order lower.
    pub fn divide_by_x(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        if self.order() == 0 {
            return Err(Error::OrderMismatch(0, 1));
        }
        Ok(TruncatedSeries { coeffs: self.coeffs[1..].to_vec() })
    }
}

/// `exp(x) − 1` over `x`, to order `n`.
fn exp_minus_one_over_x(n: usize) -> TruncatedSeries {
    let e = TruncatedSeries::x(n + 1).exp().expect("x has no constant term");
    e.sub(&TruncatedSeries::one(n + 1)).expect("same order").divide_by_x().expect("vanishing constant term")
}

/// `J(x) = x / (exp(x) − 1)` to order `n`.
pub fn j_series(n: usize) -> TruncatedSeries {
    exp_minus_one_over_x(n).invert().expect("constant term is 1")
}

type Mat2 = [[TruncatedSeries; 2]; 2];

fn mat_mul(a: &[Vec<TruncatedSeries>], b: &[Vec<TruncatedSeries>]) -> Result<Vec<Vec<TruncatedSeries>>> {
    let n = a[0][0].order();
    let mut out = vec![vec![TruncatedSeries::zero(n); b[0].len()]; a.len()];
    for i in 0..a.len() {
        for j in 0..b[0].len() {
            for k in 0..b.len() {
                out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j])?)?;
            }
        }
    }
    Ok(out)
}

fn det2(m: &Mat2) -> Result<TruncatedSeries> {
    m[0][0].mul(&m[1][1])?.sub(&m[0][1].mul(&m[1][0])?)
}

fn is_identity(m: &[Vec<TruncatedSeries>]) -> bool {
    let n = m[0][0].order();
    m.iter().enumerate().all(|(i, row)| {
        row.iter().enumerate().all(|(j, x)| *x == if i == j { TruncatedSeries::one(n) } else { TruncatedSeries::zero(n) })
    })
}

fn is_zero(m: &[Vec<TruncatedSeries>]) -> bool {
    m.iter().flatten().all(|x| x.coeffs.iter().all(Zero::is_zero))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DufloReport {
    /// `det [[1, J(2 − eˣ)], [−1, x]] = x + J(2 − eˣ)`.
    pub det: TruncatedSeries,
    pub j: TruncatedSeries,
    pub equals_j: bool,
    /// `d∘d = 0` and `h∘h = 0` on `k⟦x⟧ → k⟦x⟧² → k⟦x⟧`.
    pub squares_vanish: bool,
    /// `dh + hd = id` in every degree.
    pub contracting: bool,
    /// The two halves of `d + h` compose to the identity both ways.
    pub inverse_verified: bool,
    /// `det((d + h)|even) = J⁻¹`.
    pub even_det_is_inverse: bool,
    pub holds: bool,
}

/// The contractible complex `k⟦x⟧ → k⟦x⟧² → k⟦x⟧` with `d₁ = (eˣ − 1, J⁻¹)ᵀ`, `d₂ = (−1, x)`
/// and nullhomotopy `h₁ = (1, J(2 − eˣ))`, `h₂ = (eˣ − 2, J⁻¹)ᵀ`; `d + h` has determinant `J`.
pub fn duflo_determinant_check(n: usize) -> Result<DufloReport> {
    let j = j_series(n);
    let jinv = j.invert()?;
    let e = TruncatedSeries::x(n).exp()?;
    let one = TruncatedSeries::one(n);
    let two = TruncatedSeries::constant(Rational::from_integer(2.into()), n);
    let x = TruncatedSeries::x(n);
    let e1 = e.sub(&one)?;
    let j2e = j.mul(&two.sub(&e)?)?;

    let d1 = vec![vec![e1.clone()], vec![jinv.clone()]];
    let d2 = vec![vec![one.neg(), x.clone()]];
    let h1 = vec![vec![one.clone(), j2e.clone()]];
    let h2 = vec![vec![e.sub(&two)?], vec![jinv.clone()]];

    let squares_vanish = is_zero(&mat_mul(&d2, &d1)?) && is_zero(&mat_mul(&h1, &h2)?);
    let middle = {
        let a = mat_mul(&d1, &h1)?;
        let b = mat_mul(&h2, &d2)?;
        vec![vec![a[0][0].add(&b[0][0])?, a[0][1].add(&b[0][1])?], vec![a[1][0].add(&b[1][0])?, a[1][1].add(&b[1][1])?]]
    };
    let contracting = is_identity(&mat_mul(&h1, &d1)?) && is_identity(&middle) && is_identity(&mat_mul(&d2, &h2)?);

    // odd → even: (h₁, d₂); even → odd: (d₁ | h₂)
    let odd_even: Mat2 = [[one.clone(), j2e], [one.neg(), x.clone()]];
    let even_odd: Mat2 = [[e1, e.sub(&two)?], [jinv.clone(), jinv.clone()]];
    let oe: Vec<Vec<TruncatedSeries>> = odd_even.iter().map(|r| r.to_vec()).collect();
    let eo: Vec<Vec<TruncatedSeries>> = even_odd.iter().map(|r| r.to_vec()).collect();
    let inverse_verified = is_identity(&mat_mul(&oe, &eo)?) && is_identity(&mat_mul(&eo, &oe)?);
    let det = det2(&odd_even)?;
    let even_det_is_inverse = det2(&even_odd)? == jinv;
    let equals_j = det == j;
    Ok(DufloReport {
        holds: equals_j && squares_vanish && contracting && inverse_verified && even_det_is_inverse,
        det,
        j,
        equals_j,
        squares_vanish,
        contracting,
        inverse_verified,
        even_det_is_inverse,
    })
}

/// `J(A) = Σ_k j_k A^k` for nilpotent `A` over ℚ; the sum is finite.
pub fn j_of_nilpotent(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::NonSquare { rows: a.rows(), cols: a.cols() });
    }
    if a.tag() != FieldTag::Q {
        return Err(Error::FieldMismatch("nilpotent matrix must be rational".into()));
    }
    let n = a.rows();
    if !a.pow(n as u32)?.is_zero() {
        return Err(Error::NotNilpotent);
    }
    let j = j_series(n.max(1));
    let mut acc = Matrix::zeros(n, n);
    let mut power = Matrix::identity(n);
    for k in 0..n {
        acc = acc.add(&power.scale(&FieldElement::Q(j.coeff(k).clone())))?;
        power = power.mul(a)?;
    }
    Ok(acc)
}

/// `det J(A)`, the Todd-class determinant at a nilpotent Atiyah class.
pub fn todd_of_nilpotent(a: &Matrix) -> Result<FieldElement> {
    j_of_nilpotent(a)?.determinant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn series(c: &[(i64, i64)], n: usize) -> TruncatedSeries {
        TruncatedSeries::new(c.iter().map(|&(p, q)| rat(p, q)).collect(), n)
    }

    /// `c` with `c · (exp(x) − 1)/x = 1`, by long division.
    fn j_oracle(n: usize) -> Vec<Rational> {
        let fact = |k: usize| -> Rational { (1..=k).fold(Rational::one(), |a, i| a * Rational::from_integer(i.into())) };
        let mut c: Vec<Rational> = Vec::new();
        for m in 0..=n {
            // Σ_{k≤m} c_k / (m − k + 1)! = δ_{m0}
            let mut acc = if m == 0 { Rational::one() } else { Rational::zero() };
            for (k, ck) in c.iter().enumerate() {
                acc -= ck / fact(m - k + 1);
            }
            c.push(acc);
        }
        c
    }

    fn binom(n: u64, k: u64) -> Rational {
        let mut r = Rational::one();
        for i in 0..k {
            r = r * Rational::from_integer((n - i).into()) / Rational::from_integer((i + 1).into());
        }
        r
    }

    #[test]
    fn arithmetic() {
        let e = TruncatedSeries::x(4).exp().unwrap();
        assert_eq!(e, series(&[(1, 1), (1, 1), (1, 2), (1, 6), (1, 24)], 4));
        let geo = series(&[(1, 1), (-1, 1)], 6).invert().unwrap();
        assert_eq!(geo, TruncatedSeries::new(vec![Rational::one(); 7], 6));
        let f = series(&[(3, 2), (1, 1), (-2, 5), (7, 1)], 6);
        assert_eq!(f.invert().unwrap().mul(&f).unwrap(), TruncatedSeries::one(6));
        assert_eq!(TruncatedSeries::x(3).invert(), Err(Error::NonUnit));
        assert_eq!(TruncatedSeries::one(3).exp(), Err(Error::NonzeroConstantTerm));
        assert_eq!(f.compose(&f), Err(Error::NonzeroConstantTerm));
        assert_eq!(TruncatedSeries::one(3).add(&TruncatedSeries::one(4)), Err(Error::OrderMismatch(3, 4)));
    }

    #[test]
    fn exp_log_round_trip() {
        let n = 10;
        let g = series(&[(0, 1), (2, 3), (-1, 1), (0, 1), (5, 7)], n);
        assert_eq!(g.exp().unwrap().log().unwrap(), g);
        let log1px = TruncatedSeries::one(n).add(&TruncatedSeries::x(n)).unwrap().log().unwrap();
        let back = TruncatedSeries::x(n).exp().unwrap().sub(&TruncatedSeries::one(n)).unwrap();
        assert_eq!(back.compose(&log1px).unwrap(), TruncatedSeries::x(n));
        assert_eq!(log1px.coeff(3), &rat(1, 3));
    }

    #[test]
    fn j_matches_long_division() {
        assert_eq!(j_series(4), series(&[(1, 1), (-1, 2), (1, 12), (0, 1), (-1, 720)], 4));
        let j = j_series(12);
        assert_eq!(j.coeffs(), &j_oracle(12)[..]);
        for k in (3..=12).step_by(2) {
            assert!(j.coeff(k).is_zero());
        }
        // J · (eˣ − 1) = x
        let e1 = TruncatedSeries::x(12).exp().unwrap().sub(&TruncatedSeries::one(12)).unwrap();
        assert_eq!(j.mul(&e1).unwrap(), TruncatedSeries::x(12));
    }

    #[test]
    fn bernoulli_recursion() {
        let j = j_series(13);
        let b: Vec<Rational> = (0..=13)
            .map(|k| j.coeff(k) * (1..=k).fold(Rational::one(), |a, i| a * Rational::from_integer(i.into())))
            .collect();
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[12], rat(-691, 2730));
        for n in 1..=12u64 {
            let s: Rational = (0..=n).map(|k| binom(n + 1, k) * &b[k as usize]).sum();
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn duflo_determinant() {
        for n in 1..=12 {
            let r = duflo_determinant_check(n).unwrap();
            assert!(r.holds, "{n}: {r:?}");
        }
    }

    fn jordan(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n.saturating_sub(1) {
            m[(i, i + 1)] = FieldElement::one();
        }
        m
    }

    /// `J(A) = E(A)⁻¹` with `E(A) = Σ A^m/(m+1)!`, a finite sum.
    fn j_matrix_oracle(a: &Matrix) -> Matrix {
        let n = a.rows();
        let mut e = Matrix::zeros(n, n);
        let mut power = Matrix::identity(n);
        let mut fact = Rational::one();
        for m in 0..=n {
            fact *= Rational::from_integer((m + 1).into());
            e = e.add(&power.scale(&FieldElement::Q(fact.recip()))).unwrap();
            power = power.mul(a).unwrap();
        }
        e.inverse().unwrap()
    }

    #[test]
    fn todd_on_jordan_blocks() {
        assert_eq!(todd_of_nilpotent(&Matrix::zeros(3, 3)).unwrap(), FieldElement::one());
        let j2 = j_of_nilpotent(&jordan(2)).unwrap();
        assert_eq!(j2, Matrix::from_rows(vec![vec![FieldElement::one(), FieldElement::rat(-1, 2)], vec![FieldElement::zero(), FieldElement::one()]]).unwrap());
        for n in 1..=5 {
            let a = jordan(n);
            assert_eq!(j_of_nilpotent(&a).unwrap(), j_matrix_oracle(&a));
            assert_eq!(todd_of_nilpotent(&a).unwrap(), j_matrix_oracle(&a).determinant().unwrap());
        }
        let p = Matrix::from_ints(&[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
        let a = p.inverse().unwrap().mul(&jordan(3)).unwrap().mul(&p).unwrap();
        assert_eq!(j_of_nilpotent(&a).unwrap(), j_matrix_oracle(&a));
        assert_eq!(todd_of_nilpotent(&a).unwrap(), FieldElement::one());
        assert_eq!(todd_of_nilpotent(&Matrix::identity(2)), Err(Error::NotNilpotent));
    }
}

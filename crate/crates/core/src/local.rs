//! Local systems as matrix representations, and specialization of equivariant
//! complexes to based complexes over ℚ or ℚ(t).
//!
//! Monodromies act on row vectors from the right, `v · g = v ρ(g)`, with
//! `ρ(gh) = ρ(g)ρ(h)`. A boundary `∂e_i = Σ a_ij e_j` then becomes the block
//! matrix `(ρ(a_ij))` acting on row vectors; the stored column-vector differential
//! is its transpose. Bases are cell-major, fiber-minor.

use crate::algebra::{FieldElement, FieldTag, Matrix};
use crate::cw::{CellComplex, FundamentalFamily, GroupPresentation, GroupRingElement, Word};
use crate::error::{Error, Result};
use crate::graded::BasedComplex;

pub use crate::graded::{homology, homology_dims};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSystem {
    dim: usize,
    tag: FieldTag,
    monodromy: Vec<Matrix>,
    inverses: Vec<Matrix>,
    gram: Option<Matrix>,
}

impl LocalSystem {
    /// Validates invertibility of every monodromy and that every relator acts trivially.
    pub fn new(p: &GroupPresentation, dim: usize, monodromy: Vec<Matrix>) -> Result<Self> {
        if monodromy.len() != p.generator_count() {
            return Err(Error::RepresentationInvalid(format!(
                "{} monodromies for {} generators",
                monodromy.len(),
                p.generator_count()
            )));
        }
        let tag = if monodromy.iter().any(|m| m.tag() == FieldTag::Qt) { FieldTag::Qt } else { FieldTag::Q };
        let mut inverses = Vec::new();
        for (g, m) in monodromy.iter().enumerate() {
            let name = &p.generators()[g];
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::RepresentationInvalid(format!("monodromy of '{name}' is not {dim}x{dim}")));
            }
            let inv = m
                .inverse()
                .map_err(|_| Error::RepresentationInvalid(format!("monodromy of '{name}' is not invertible")))?;
            inverses.push(inv);
        }
        let rho = LocalSystem { dim, tag, monodromy, inverses, gram: None };
        rho.check_relators(p)?;
        Ok(rho)
    }

    /// Rank-1 system with monodromies `±1`.
    pub fn mu2(p: &GroupPresentation, signs: &[i64]) -> Result<Self> {
        if signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::RepresentationInvalid("μ₂ monodromies must be ±1".into()));
        }
        Self::new(p, 1, signs.iter().map(|&s| Matrix::scalar(FieldElement::int(s))).collect())?
            .with_gram(Matrix::identity(1))
    }

    /// Trivial system of rank `n` with the standard orthonormal form.
    pub fn trivial(p: &GroupPresentation, n: usize) -> Self {
        Self::new(p, n, vec![Matrix::identity(n); p.generator_count()])
            .and_then(|r| r.with_gram(Matrix::identity(n)))
            .expect("trivial system is valid")
    }

    /// Attaches a symmetric invariant form: `gram = gramᵀ` and `ρ(g)ᵀ · gram · ρ(g) = gram`.
    pub fn with_gram(mut self, gram: Matrix) -> Result<Self> {
        if gram.rows() != self.dim || gram.cols() != self.dim {
            return Err(Error::NotOrthogonal("gram matrix has the wrong size".into()));
        }
        if gram.transpose() != gram {
            return Err(Error::NotOrthogonal("gram matrix is not symmetric".into()));
        }
        if gram.determinant()?.is_zero() {
            return Err(Error::NotOrthogonal("gram matrix is degenerate".into()));
        }
        for (g, m) in self.monodromy.iter().enumerate() {
            if m.transpose().mul(&gram)?.mul(m)? != gram {
                return Err(Error::NotOrthogonal(format!("generator {g} does not preserve the form")));
            }
        }
        self.gram = Some(gram);
        Ok(self)
    }

    pub fn check_relators(&self, p: &GroupPresentation) -> Result<()> {
        if self.monodromy.len() != p.generator_count() {
            return Err(Error::RepresentationInvalid("generator count mismatch".into()));
        }
        for r in p.relators() {
            if self.eval(r) != Matrix::identity(self.dim) {
                return Err(Error::RepresentationInvalid(format!(
                    "relator {} does not act trivially",
                    p.format_word(r)
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tag(&self) -> FieldTag {
        self.tag
    }

    pub fn monodromy(&self) -> &[Matrix] {
        &self.monodromy
    }

    pub fn gram(&self) -> Option<&Matrix> {
        self.gram.as_ref()
    }

    pub fn eval(&self, w: &Word) -> Matrix {
        let mut acc = Matrix::identity(self.dim);
        for &l in w.letters() {
            let g = l.unsigned_abs() as usize - 1;
            let m = if l > 0 { &self.monodromy[g] } else { &self.inverses[g] };
            acc = acc.mul(m).expect("square");
        }
        acc
    }

    pub fn eval_ring(&self, a: &GroupRingElement) -> Matrix {
        let mut acc = Matrix::zeros(self.dim, self.dim);
        for (w, c) in a.terms() {
            acc = acc.add(&self.eval(w).scale(&FieldElement::int(c))).expect("square");
        }
        acc
    }

    /// `det ρ(w)`.
    pub fn det_character(&self, w: &Word) -> FieldElement {
        self.eval(w).determinant().expect("square")
    }

    /// Contragredient `ρ*(g) = (ρ(g)⁻¹)ᵀ`; the form becomes its inverse.
    pub fn dual(&self) -> LocalSystem {
        LocalSystem {
            dim: self.dim,
            tag: self.tag,
            monodromy: self.inverses.iter().map(Matrix::transpose).collect(),
            inverses: self.monodromy.iter().map(Matrix::transpose).collect(),
            gram: self.gram.as_ref().map(|g| g.inverse().expect("invertible form")),
        }
    }

    pub fn direct_sum(&self, o: &LocalSystem) -> LocalSystem {
        let gram = match (&self.gram, &o.gram) {
            (Some(a), Some(b)) => Some(a.direct_sum(b)),
            _ => None,
        };
        LocalSystem {
            dim: self.dim + o.dim,
            tag: if self.tag == FieldTag::Qt || o.tag == FieldTag::Qt { FieldTag::Qt } else { FieldTag::Q },
            monodromy: self.monodromy.iter().zip(&o.monodromy).map(|(a, b)| a.direct_sum(b)).collect(),
            inverses: self.inverses.iter().zip(&o.inverses).map(|(a, b)| a.direct_sum(b)).collect(),
            gram,
        }
    }

    /// Conjugated system `g ↦ A⁻¹ ρ(g) A`.
    pub fn conjugate(&self, a: &Matrix) -> Result<LocalSystem> {
        let ai = a.inverse()?;
        let f = |m: &Matrix| ai.mul(m).and_then(|x| x.mul(a));
        Ok(LocalSystem {
            dim: self.dim,
            tag: self.tag,
            monodromy: self.monodromy.iter().map(f).collect::<Result<_>>()?,
            inverses: self.inverses.iter().map(f).collect::<Result<_>>()?,
            gram: None,
        })
    }

    /// Substitutes `t = x` in every monodromy.
    pub fn evaluate_at(&self, x: &crate::algebra::Rational) -> Result<LocalSystem> {
        let ev = |m: &Matrix| -> Result<Matrix> {
            let data = m.entries().iter().map(|e| e.eval_at(x)).collect::<Result<Vec<_>>>()?;
            Matrix::from_vec(m.rows(), m.cols(), data)
        };
        Ok(LocalSystem {
            dim: self.dim,
            tag: FieldTag::Q,
            monodromy: self.monodromy.iter().map(ev).collect::<Result<_>>()?,
            inverses: self.inverses.iter().map(ev).collect::<Result<_>>()?,
            gram: self.gram.as_ref().map(ev).transpose()?,
        })
    }
}

/// Coordinates of `Ad_g ξ = ρ(g) ξ ρ(g)⁻¹` in the given basis of a Lie subalgebra.
pub fn adjoint(p: &GroupPresentation, rho: &LocalSystem, lie_basis: &[Matrix]) -> Result<LocalSystem> {
    let n = rho.dim;
    let k = lie_basis.len();
    if lie_basis.iter().any(|b| b.rows() != n || b.cols() != n) {
        return Err(Error::ShapeMismatch(format!("Lie basis elements must be {n}x{n}")));
    }
    let flat: Vec<Vec<FieldElement>> = lie_basis.iter().map(|b| b.entries().to_vec()).collect();
    let basis = Matrix::from_columns(n * n, &flat)?;
    if basis.rank() != k {
        return Err(Error::NotInvariantSubspace("Lie basis is linearly dependent".into()));
    }
    let mut mats = Vec::new();
    for g in 0..p.generator_count() {
        let m = &rho.monodromy[g];
        let mi = &rho.inverses[g];
        let images: Vec<Vec<FieldElement>> = lie_basis
            .iter()
            .map(|b| m.mul(b).and_then(|x| x.mul(mi)).map(|x| x.entries().to_vec()))
            .collect::<Result<_>>()?;
        let rhs = Matrix::from_columns(n * n, &images)?;
        let coords = basis.solve(&rhs).map_err(|_| {
            Error::NotInvariantSubspace(format!("conjugation by '{}' leaves the span", p.generators()[g]))
        })?;
        mats.push(coords);
    }
    LocalSystem::new(p, k, mats)
}

/// Based complex `C_•(M; ρ)` in the complex's own lifts.
pub fn specialize(c: &CellComplex, rho: &LocalSystem) -> Result<BasedComplex> {
    rho.check_relators(c.presentation())?;
    let n = rho.dim;
    let top = match c.dim() {
        Some(t) => t,
        None => return BasedComplex::new(0, vec![], vec![]),
    };
    let ranks: Vec<usize> = (0..=top).map(|d| n * c.cell_count(d)).collect();
    let mut diffs = Vec::new();
    for d in 1..=top {
        let mut m = Matrix::zeros(ranks[d - 1], ranks[d]);
        for i in 0..c.cell_count(d) {
            for j in 0..c.cell_count(d - 1) {
                let a = c.boundary_entry(d, i, j);
                if a.is_zero() {
                    continue;
                }
                let block = rho.eval_ring(a);
                for r in 0..n {
                    for s in 0..n {
                        m[(j * n + s, i * n + r)] = block[(r, s)].clone();
                    }
                }
            }
        }
        diffs.push(m);
    }
    BasedComplex::new(0, ranks, diffs)
}

/// As [`specialize`], after relifting the cells by `fam`.
pub fn specialize_with(c: &CellComplex, rho: &LocalSystem, fam: &FundamentalFamily) -> Result<BasedComplex> {
    specialize(&c.with_family(fam)?, rho)
}

/// Per-degree permutation taking `specialize(c, ρ₁) ⊕ specialize(c, ρ₂)` (blockwise)
/// to `specialize(c, ρ₁ ⊕ ρ₂)` (cell-major): entry `k` is the block index of the
/// `k`-th cell-major basis vector.
pub fn interleaving(cells: &[usize], n1: usize, n2: usize) -> Vec<Vec<usize>> {
    cells
        .iter()
        .map(|&m| {
            let mut perm = Vec::with_capacity(m * (n1 + n2));
            for cell in 0..m {
                perm.extend((0..n1).map(|r| cell * n1 + r));
                perm.extend((0..n2).map(|r| m * n1 + cell * n2 + r));
            }
            perm
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;
    use crate::cw::fox_complex;
    use crate::graded::homology_dims;

    #[test]
    fn circle_over_qt() {
        let p = GroupPresentation::free(&["z"]);
        let rho = LocalSystem::new(&p, 1, vec![Matrix::scalar(FieldElement::t())]).unwrap();
        let c = specialize(&fox_complex(&p), &rho).unwrap();
        assert_eq!(c.d(1), Matrix::scalar(FieldElement::from(Poly::from_ints(&[-1, 1]))));
        assert_eq!(homology_dims(&c), vec![0, 0]);
        let dual = rho.dual();
        assert_eq!(dual.monodromy()[0][(0, 0)], FieldElement::t().inv().unwrap());
        assert_eq!(dual.dual(), rho);
    }

    #[test]
    fn torus_systems() {
        let p = GroupPresentation::torus();
        let c = fox_complex(&p);
        let triv = LocalSystem::trivial(&p, 1);
        assert_eq!(homology_dims(&specialize(&c, &triv).unwrap()), vec![1, 2, 1]);
        for signs in [[-1, 1], [1, -1], [-1, -1]] {
            let l = LocalSystem::mu2(&p, &signs).unwrap();
            assert_eq!(homology_dims(&specialize(&c, &l).unwrap()), vec![0, 0, 0]);
            assert_eq!(l.dual(), l);
        }
        let l = LocalSystem::mu2(&p, &[-1, 1]).unwrap();
        assert_eq!(specialize(&c, &l).unwrap().d(2), Matrix::from_ints(&[&[0], &[-2]]));
    }

    #[test]
    fn invalid_representations() {
        let p = GroupPresentation::torus();
        let sing = LocalSystem::new(&p, 1, vec![Matrix::from_ints(&[&[0]]), Matrix::identity(1)]);
        assert!(matches!(sing, Err(Error::RepresentationInvalid(m)) if m.contains("'x'")));
        let a = Matrix::from_ints(&[&[1, 1], &[0, 1]]);
        let b = Matrix::from_ints(&[&[1, 0], &[1, 1]]);
        assert!(LocalSystem::new(&p, 2, vec![a, b]).is_err());
    }

    #[test]
    fn adjoint_examples() {
        let p = GroupPresentation::free(&["z"]);
        let lam = FieldElement::int(3);
        let rho = LocalSystem::new(
            &p,
            2,
            vec![Matrix::diagonal(&[lam.clone(), lam.inv().unwrap()])],
        )
        .unwrap();
        let e = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let h = Matrix::from_ints(&[&[1, 0], &[0, -1]]);
        let f = Matrix::from_ints(&[&[0, 0], &[1, 0]]);
        let ad = adjoint(&p, &rho, &[e.clone(), h, f]).unwrap();
        assert_eq!(
            ad.monodromy()[0],
            Matrix::diagonal(&[FieldElement::int(9), FieldElement::int(1), FieldElement::rat(1, 9)])
        );
        let gl1 = LocalSystem::new(&p, 1, vec![Matrix::scalar(FieldElement::int(5))]).unwrap();
        assert_eq!(adjoint(&p, &gl1, &[Matrix::identity(1)]).unwrap().monodromy()[0], Matrix::identity(1));
        let unip = LocalSystem::new(&p, 2, vec![Matrix::from_ints(&[&[1, 1], &[0, 1]])]).unwrap();
        assert!(matches!(adjoint(&p, &unip, &[f_like()]), Err(Error::NotInvariantSubspace(_))));
        let _ = e;
    }

    fn f_like() -> Matrix {
        Matrix::from_ints(&[&[0, 0], &[1, 0]])
    }

    #[test]
    fn interleaving_matches_direct_sum() {
        let p = GroupPresentation::torus();
        let c = fox_complex(&p);
        let r1 = LocalSystem::mu2(&p, &[-1, 1]).unwrap();
        let r2 = LocalSystem::new(
            &p,
            2,
            vec![Matrix::diagonal(&[FieldElement::int(2), FieldElement::rat(1, 2)]), Matrix::identity(2)],
        )
        .unwrap();
        let sum = specialize(&c, &r1.direct_sum(&r2)).unwrap();
        let blocks = specialize(&c, &r1).unwrap().direct_sum(&specialize(&c, &r2).unwrap());
        let perms = interleaving(&[1, 2, 1], 1, 2);
        assert_eq!(blocks.permute_bases(&perms), sum);
    }
}

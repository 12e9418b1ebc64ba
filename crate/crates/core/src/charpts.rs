//! Torsion volume forms at points of character varieties: adjoint systems, their
//! refined torsion, transformation laws and Mayer–Vietoris gluing.

use crate::algebra::{FieldElement, Matrix};
use crate::cw::{euler_characteristic, glue, h1, CellComplex, FundamentalFamily, GlueData, GroupPresentation, H1Class};
use crate::error::{Error, Result};
use crate::graded::{homology, homology_dims, GradedBasis};
use crate::local::{adjoint, specialize, LocalSystem};
use crate::torsion::{
    change_euler, refined_torsion, short_exact_check, HomologyOrientation, RefinedTorsion, ShortExact,
    ShortExactReport,
};

/// A representation together with a Lie subalgebra `𝔤` it normalizes. The basis fixes the
/// volume form on `𝔤` (its top wedge is 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationPoint {
    pub group: GroupPresentation,
    pub rho: LocalSystem,
    pub lie_basis: Vec<Matrix>,
    /// Symmetric `Ad`-invariant form on `𝔤`, in `lie_basis` coordinates.
    pub invariant_form: Option<Matrix>,
}

impl RepresentationPoint {
    pub fn new(
        group: GroupPresentation,
        rho: LocalSystem,
        lie_basis: Vec<Matrix>,
        invariant_form: Option<Matrix>,
    ) -> Result<Self> {
        let ad = adjoint(&group, &rho, &lie_basis)?;
        if let Some(g) = &invariant_form {
            // with_gram checks symmetry and Ad-invariance
            ad.with_gram(g.clone())?;
        }
        Ok(RepresentationPoint { group, rho, lie_basis, invariant_form })
    }

    pub fn lie_dimension(&self) -> usize {
        self.lie_basis.len()
    }

    pub fn adjoint_system(&self) -> Result<LocalSystem> {
        let ad = adjoint(&self.group, &self.rho, &self.lie_basis)?;
        match &self.invariant_form {
            Some(g) => ad.with_gram(g.clone()),
            None => Ok(ad),
        }
    }

    /// Scales the volume form on `𝔤` by `a`: the first basis vector becomes `ξ₁ / a`.
    pub fn rescaled(&self, a: &FieldElement) -> Result<RepresentationPoint> {
        let s = self.rescale_matrix(a)?;
        let mut basis = self.lie_basis.clone();
        basis[0] = basis[0].scale(&s[(0, 0)]);
        let form = match &self.invariant_form {
            Some(g) => Some(s.transpose().mul(g)?.mul(&s)?),
            None => None,
        };
        RepresentationPoint::new(self.group.clone(), self.rho.clone(), basis, form)
    }

    /// `S = diag(1/a, 1, …)`: new basis = old basis · S.
    fn rescale_matrix(&self, a: &FieldElement) -> Result<Matrix> {
        if self.lie_basis.is_empty() {
            return Err(Error::ShapeMismatch("empty Lie basis cannot be rescaled".into()));
        }
        let mut s = Matrix::identity(self.lie_dimension());
        s[(0, 0)] = a.inv()?;
        Ok(s)
    }

    /// Conjugates `ρ` by `a` and transports the Lie basis: `ξ ↦ a⁻¹ ξ a`.
    pub fn conjugated(&self, a: &Matrix) -> Result<RepresentationPoint> {
        let ai = a.inverse()?;
        let basis = self.lie_basis.iter().map(|b| ai.mul(b)?.mul(a)).collect::<Result<_>>()?;
        RepresentationPoint::new(self.group.clone(), self.rho.conjugate(a)?, basis, self.invariant_form.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointTorsion {
    pub torsion: RefinedTorsion,
    /// `−χ(M) · dim 𝔤`.
    pub virtual_dimension: i64,
}

/// Deterministic homology basis of the adjoint complex when `h` is not supplied.
fn basis_or_default(c: &CellComplex, ad: &LocalSystem, h: Option<&GradedBasis>) -> Result<GradedBasis> {
    match h {
        Some(h) => Ok(h.clone()),
        None => Ok(homology(&specialize(c, ad)?)),
    }
}

pub fn adjoint_torsion_volume(
    c: &CellComplex,
    pt: &RepresentationPoint,
    e: &FundamentalFamily,
    o: HomologyOrientation,
    h: Option<&GradedBasis>,
) -> Result<AdjointTorsion> {
    let ad = pt.adjoint_system()?;
    let h = basis_or_default(c, &ad, h)?;
    let torsion = refined_torsion(c, &ad, e, o, &h)?;
    Ok(AdjointTorsion { torsion, virtual_dimension: -euler_characteristic(c) * pt.lie_dimension() as i64 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerLaw {
    pub delta: H1Class,
    /// Recomputed from scratch with the shifted family.
    pub direct: FieldElement,
    pub predicted: FieldElement,
    /// `det Ad ρ(delta)`, the modular character.
    pub holonomy: FieldElement,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RescaleLaw {
    pub factor: FieldElement,
    pub scaled: FieldElement,
    pub expected: FieldElement,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingReport {
    pub base: FieldElement,
    pub euler_characteristic: i64,
    pub euler: Vec<EulerLaw>,
    pub rescale: Vec<RescaleLaw>,
    /// Every holonomy is 1.
    pub unimodular: bool,
    pub holds: bool,
}

pub const RESCALE_FACTORS: [(i64, i64); 3] = [(2, 1), (3, 1), (1, 2)];

/// Euler-structure law along each generator class and the `A^{χ}` law for the rescalings
/// in [`RESCALE_FACTORS`], using the deterministic homology basis.
pub fn scaling_laws_check(
    c: &CellComplex,
    pt: &RepresentationPoint,
    e: &FundamentalFamily,
    o: HomologyOrientation,
) -> Result<ScalingReport> {
    let ad = pt.adjoint_system()?;
    let h = basis_or_default(c, &ad, None)?;
    let base = refined_torsion(c, &ad, e, o, &h)?;
    let chi = euler_characteristic(c);

    let hom = h1(c);
    let mut euler = Vec::new();
    for g in 0..c.presentation().generator_count() {
        let delta = hom.abelianize(&crate::cw::Word::generator(g));
        if delta.is_zero() {
            continue;
        }
        let w = hom.representative(&delta);
        let bp = c.basepoint();
        let mut fam = e.clone();
        fam.shifts[0][bp] = w.mul(&fam.shifts[0][bp]);
        let direct = refined_torsion(c, &ad, &fam, o, &h)?.value;
        let predicted = change_euler(c, &base, &delta, &ad)?.value;
        let holonomy = ad.det_character(&w);
        let holds = direct == predicted && direct == &base.value * &holonomy;
        euler.push(EulerLaw { delta, direct, predicted, holonomy, holds });
    }

    let mut rescale = Vec::new();
    for (p, q) in RESCALE_FACTORS {
        let a = FieldElement::rat(p, q);
        let scaled_pt = pt.rescaled(&a)?;
        let s = pt.rescale_matrix(&a)?;
        // coordinates transform by Sᵀ on every cell block
        let moved = GradedBasis {
            lo: h.lo,
            vectors: h
                .vectors
                .iter()
                .map(|v| {
                    if v.cols() == 0 {
                        return Ok(v.clone());
                    }
                    let cells = v.rows() / s.rows();
                    Matrix::identity(cells).kron(&s.transpose()).mul(v)
                })
                .collect::<Result<_>>()?,
        };
        let scaled = refined_torsion(c, &scaled_pt.adjoint_system()?, e, o, &moved)?.value;
        let expected = &base.value * &a.pow(chi)?;
        rescale.push(RescaleLaw { holds: scaled == expected, factor: a, scaled, expected });
    }

    let unimodular = euler.iter().all(|l| l.holonomy.is_one());
    let holds = euler.iter().all(|l| l.holds) && rescale.iter().all(|l| l.holds);
    Ok(ScalingReport { base: base.value, euler_characteristic: chi, euler, rescale, unimodular, holds })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedReport {
    pub glued: CellComplex,
    pub euler_characteristics: [i64; 4],
    /// Homology dimensions of the glued adjoint complex.
    pub glued_homology: Vec<usize>,
    /// `τ(X₁ ⊔ X₂) = ± τ(X₀) τ(X) τ(ℋ) · (basis change)` for the Mayer–Vietoris sequence.
    pub mayer_vietoris: ShortExactReport,
    pub holds: bool,
}

/// Block `ρ(w)ᵀ` at cell position `(row, col)`.
fn put(m: &mut Matrix, n: usize, row: usize, col: usize, block: &Matrix) {
    m.set_block(row * n, col * n, block);
}

/// Mayer–Vietoris check for the adjoint system of `pt`, a point of the pushout group.
pub fn glued_point_check(
    c1: &CellComplex,
    c2: &CellComplex,
    c0: &CellComplex,
    data: &GlueData,
    pt: &RepresentationPoint,
) -> Result<GluedReport> {
    if pt.group != data.presentation {
        return Err(Error::PresentationMismatch("point is not on the pushout group".into()));
    }
    let glued = glue(c1, c2, c0, data)?;
    let ad = pt.adjoint_system()?;
    let n = ad.dim();
    let p = &data.presentation;
    let (x1, x2, x0) = (c1.map_group(p.clone(), &data.incl1), c2.map_group(p.clone(), &data.incl2), c0.map_group(p.clone(), &data.incl0));
    let a = specialize(&x0, &ad)?;
    let b1 = specialize(&x1, &ad)?;
    let b2 = specialize(&x2, &ad)?;
    let b = b1.direct_sum(&b2);
    let c = specialize(&glued, &ad)?;

    let top = b.ranks().len().max(c.ranks().len());
    let cells = |x: &CellComplex, d: usize| if d < x.all_cells().len() { x.cell_count(d) } else { 0 };
    let mut f = Vec::new();
    let mut g = Vec::new();
    for d in 0..top {
        let (n0, n1, n2, nc) = (cells(c0, d), cells(c1, d), cells(c2, d), cells(&glued, d));
        let mut fd = Matrix::zeros(n * (n1 + n2), n * n0);
        for i in 0..n0 {
            let (j1, w1) = &data.map1.images[d][i];
            let (j2, w2) = &data.map2.images[d][i];
            put(&mut fd, n, *j1, i, &ad.eval(w1).transpose());
            put(&mut fd, n, n1 + j2, i, &ad.eval(w2).transpose().scale(&FieldElement::int(-1)));
        }
        let mut gd = Matrix::zeros(n * nc, n * (n1 + n2));
        for j in 0..n1 {
            put(&mut gd, n, j, j, &Matrix::identity(n));
        }
        let mut fresh = n1;
        for j in 0..n2 {
            let hit = data.map2.images.get(d).and_then(|imgs| imgs.iter().position(|(t, _)| *t == j));
            match hit {
                Some(k) => {
                    // e₂ⱼ ≡ u⁻¹ w₁ · e₁
                    let (c1j, w1) = &data.map1.images[d][k];
                    let u = &data.map2.images[d][k].1;
                    put(&mut gd, n, *c1j, n1 + j, &ad.eval(&u.inverse().mul(w1)).transpose());
                }
                None => {
                    put(&mut gd, n, fresh, n1 + j, &Matrix::identity(n));
                    fresh += 1;
                }
            }
        }
        f.push(fd);
        g.push(gd);
    }
    let (ha, hc) = (homology(&a), homology(&c));
    let hb = homology(&b1).direct_sum(&homology(&b2));
    let mv = short_exact_check(&ShortExact { a: &a, b: &b, c: &c, f, g, ha: &ha, hb: &hb, hc: &hc })?;
    let chis = [euler_characteristic(c1), euler_characteristic(c2), euler_characteristic(c0), euler_characteristic(&glued)];
    Ok(GluedReport {
        glued_homology: homology_dims(&c),
        holds: mv.holds && chis[3] == chis[0] + chis[1] - chis[2],
        euler_characteristics: chis,
        mayer_vietoris: mv,
        glued,
    })
}

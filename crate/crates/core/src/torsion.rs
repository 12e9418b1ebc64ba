//! Reidemeister–Turaev refined torsion and its transformation laws.
//!
//! Convention (fixed): `τ(C, h) = Π_i [∂b_{i+1}, h_i, b_i / c_i]^{(−1)^{i+1}}`, refined by
//! Turaev's sign `(−1)^{N(C)}` and by `(o · sign τ̂(C_ℝ, h_ℝ))^n`, where `C_ℝ` is the
//! trivial real complex with its deterministic homology basis and `n` the rank.

use crate::algebra::{FieldElement, Matrix};
use crate::cw::{CellComplex, FundamentalFamily, H1Class, h1};
use crate::error::{Error, Result};
use crate::graded::{
    braid_sign, euler_iso, homology, homology_dims, permutation_sign, turaev_n, BasedComplex, GradedBasis,
};
use crate::local::{interleaving, specialize, specialize_with, LocalSystem};

/// Identifier printed next to every torsion value.
pub const SIGN_CONVENTION: &str = "turaev-refined: prod [d b_(i+1), h_i, b_i / c_i]^((-1)^(i+1)) * (-1)^N(C)";
pub const BASIS_ORDER: &str = "cell-major, fiber-minor; leftmost pivots";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyOrientation {
    /// `±1` relative to the deterministic real homology basis.
    pub sign: i32,
}

impl HomologyOrientation {
    pub const POSITIVE: HomologyOrientation = HomologyOrientation { sign: 1 };

    pub fn new(sign: i32) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::Malformed(format!("orientation sign must be ±1, got {sign}")));
        }
        Ok(HomologyOrientation { sign })
    }

    pub fn flipped(self) -> Self {
        HomologyOrientation { sign: -self.sign }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedTorsion {
    pub value: FieldElement,
    /// Homology basis, in the coordinates of the unshifted specialization.
    pub homology_basis: GradedBasis,
    pub euler: FundamentalFamily,
    pub orientation: HomologyOrientation,
    pub rank: usize,
}

/// Sign-refined torsion `(−1)^{N(C)} τ(C, h)` of a based complex.
pub fn sign_refined(c: &BasedComplex, h: &GradedBasis) -> Result<FieldElement> {
    let tau = euler_iso(c, h)?;
    let n = turaev_n(c.ranks(), &h.dims());
    Ok(if n == 1 { -tau } else { tau })
}

/// `sign τ̂(C_ℝ, h_ℝ)` for the trivial real complex with its deterministic homology basis.
pub fn real_sign(c: &CellComplex) -> Result<i32> {
    let triv = LocalSystem::trivial(c.presentation(), 1);
    let real = specialize(c, &triv)?;
    let v = sign_refined(&real, &homology(&real))?;
    Ok(v.sign().expect("real torsion is rational"))
}

/// Block-diagonal base change taking shifted-lift coordinates to unshifted ones.
fn family_change(c: &CellComplex, rho: &LocalSystem, e: &FundamentalFamily, d: usize) -> Matrix {
    let n = rho.dim();
    let mut s = Matrix::zeros(n * c.cell_count(d), n * c.cell_count(d));
    for i in 0..c.cell_count(d) {
        s.set_block(i * n, i * n, &rho.eval(e.shift(d, i)).transpose());
    }
    s
}

fn is_acyclic(c: &BasedComplex) -> bool {
    homology_dims(c).iter().all(|&d| d == 0)
}

pub fn refined_torsion(
    c: &CellComplex,
    rho: &LocalSystem,
    e: &FundamentalFamily,
    o: HomologyOrientation,
    h: &GradedBasis,
) -> Result<RefinedTorsion> {
    let shifted = specialize_with(c, rho, e)?;
    if h.is_empty() && !is_acyclic(&shifted) {
        return Err(Error::NotAcyclicAndNoBasis);
    }
    let moved = GradedBasis {
        lo: 0,
        vectors: (0..shifted.ranks().len())
            .map(|d| {
                let v = h.get(d as i64, shifted.rank(d as i64));
                if v.cols() == 0 {
                    return Ok(v);
                }
                family_change(c, rho, e, d).inverse()?.mul(&v)
            })
            .collect::<Result<_>>()?,
    };
    let tau = sign_refined(&shifted, &moved)?;
    let s = o.sign * real_sign(c)?;
    let value = if s == -1 && rho.dim() % 2 == 1 { -tau } else { tau };
    Ok(RefinedTorsion { value, homology_basis: h.clone(), euler: e.clone(), orientation: o, rank: rho.dim() })
}

/// Torsion for an acyclic system with the identity family.
pub fn acyclic_torsion(c: &CellComplex, rho: &LocalSystem, o: HomologyOrientation) -> Result<RefinedTorsion> {
    let e = FundamentalFamily::identity(c);
    let b = specialize(c, rho)?;
    if !is_acyclic(&b) {
        return Err(Error::NotAcyclic);
    }
    refined_torsion(c, rho, &e, o, &GradedBasis::empty(&b))
}

/// Moves the Euler structure by `delta`; the value picks up `det ρ(delta)`.
pub fn change_euler(c: &CellComplex, tau: &RefinedTorsion, delta: &H1Class, rho: &LocalSystem) -> Result<RefinedTorsion> {
    let h = h1(c);
    let w = h.representative(delta);
    let bp = c.basepoint();
    let mut euler = tau.euler.clone();
    euler.shifts[0][bp] = w.mul(&euler.shifts[0][bp]);
    Ok(RefinedTorsion { value: &tau.value * &rho.det_character(&w), euler, ..tau.clone() })
}

/// Reverses the homology orientation; the value changes by `(−1)^rank`.
pub fn change_orientation(tau: &RefinedTorsion) -> RefinedTorsion {
    let value = if tau.rank % 2 == 1 { -&tau.value } else { tau.value.clone() };
    RefinedTorsion { value, orientation: tau.orientation.flipped(), ..tau.clone() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub tau: FieldElement,
    pub tau_dual: FieldElement,
    pub equal: bool,
}

pub fn duality_check(
    c: &CellComplex,
    rho: &LocalSystem,
    e: &FundamentalFamily,
    o: HomologyOrientation,
) -> Result<DualityReport> {
    let dual = rho.dual();
    for r in [rho, &dual] {
        if !is_acyclic(&specialize_with(c, r, e)?) {
            return Err(Error::NotAcyclic);
        }
    }
    let empty = GradedBasis::empty(&specialize(c, rho)?);
    let tau = refined_torsion(c, rho, e, o, &empty)?.value;
    let tau_dual = refined_torsion(c, &dual, e, o, &empty)?.value;
    Ok(DualityReport { equal: tau == tau_dual, tau, tau_dual })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativityReport {
    pub tau_sum: FieldElement,
    pub tau_product: FieldElement,
    /// Sign predicted from the Koszul reorderings and Turaev's refinement.
    pub predicted_sign: i32,
    pub holds: bool,
}

/// Koszul sign relating `τ(C ⊕ C′)` (blockwise bases) to `τ(C)τ(C′)`.
pub fn koszul_sum_sign(a: &BasedComplex, b: &BasedComplex, ha: &GradedBasis, hb: &GradedBasis) -> i32 {
    let size = |c: &BasedComplex, h: &GradedBasis, i: i64| -> [i64; 3] {
        let bi = |k: i64| c.d(k).rank() as i64;
        [bi(i + 1), h.get(i, c.rank(i)).cols() as i64, bi(i)]
    };
    let lo = a.lo().min(b.lo());
    let hi = a.hi().max(b.hi());
    let mut sign = 1;
    for i in lo..=hi {
        let x = size(a, ha, i);
        let y = size(b, hb, i);
        // (X1 Y1 X2 Y2 X3 Y3) → (X1 X2 X3 Y1 Y2 Y3)
        sign *= braid_sign(y[0], x[1] + x[2]) * braid_sign(y[1], x[2]);
    }
    sign
}

/// Compares `τ(ρ₁ ⊕ ρ₂)` with `τ(ρ₁)τ(ρ₂)`; homology bases (empty when acyclic) are
/// combined blockwise and then interleaved cell-major.
#[allow(clippy::too_many_arguments)]
pub fn multiplicativity_check(
    c: &CellComplex,
    rho1: &LocalSystem,
    rho2: &LocalSystem,
    e: &FundamentalFamily,
    o: HomologyOrientation,
    h1b: &GradedBasis,
    h2b: &GradedBasis,
) -> Result<MultiplicativityReport> {
    let t1 = refined_torsion(c, rho1, e, o, h1b)?;
    let t2 = refined_torsion(c, rho2, e, o, h2b)?;
    let sum = rho1.direct_sum(rho2);
    let cells: Vec<usize> = c.all_cells().iter().map(Vec::len).collect();
    let perms = interleaving(&cells, rho1.dim(), rho2.dim());
    let hs = h1b.direct_sum(h2b);
    let h_sum = GradedBasis {
        lo: 0,
        vectors: (0..cells.len())
            .map(|d| {
                let v = hs.get(d as i64, cells[d] * sum.dim());
                crate::graded::permutation_matrix(&perms[d]).transpose().mul(&v)
            })
            .collect::<Result<_>>()?,
    };
    let ts = refined_torsion(c, &sum, e, o, &h_sum)?;

    let a = specialize_with(c, rho1, e)?;
    let b = specialize_with(c, rho2, e)?;
    let s = specialize_with(c, &sum, e)?;
    // bases in shifted coordinates, as used inside refined_torsion
    let shift = |r: &LocalSystem, h: &GradedBasis, bc: &BasedComplex| -> Result<GradedBasis> {
        Ok(GradedBasis {
            lo: 0,
            vectors: (0..cells.len())
                .map(|d| {
                    let v = h.get(d as i64, bc.rank(d as i64));
                    family_change(c, r, e, d).inverse()?.mul(&v)
                })
                .collect::<Result<_>>()?,
        })
    };
    let ha = shift(rho1, h1b, &a)?;
    let hb = shift(rho2, h2b, &b)?;
    let mut predicted = koszul_sum_sign(&a, &b, &ha, &hb);
    for p in &perms {
        predicted *= permutation_sign(p);
    }
    let n_parity = turaev_n(s.ranks(), &homology_dims(&s)) + turaev_n(a.ranks(), &homology_dims(&a))
        + turaev_n(b.ranks(), &homology_dims(&b));
    if n_parity % 2 == 1 {
        predicted = -predicted;
    }
    let product = &t1.value * &t2.value;
    let holds = ts.value == &product * &FieldElement::int(predicted as i64);
    Ok(MultiplicativityReport { tau_sum: ts.value, tau_product: product, predicted_sign: predicted, holds })
}


/// A short exact sequence `0 → A →f→ B →g→ C → 0` of based complexes (all starting in
/// degree 0), with homology bases.
pub struct ShortExact<'a> {
    pub a: &'a BasedComplex,
    pub b: &'a BasedComplex,
    pub c: &'a BasedComplex,
    pub f: Vec<Matrix>,
    pub g: Vec<Matrix>,
    pub ha: &'a GradedBasis,
    pub hb: &'a GradedBasis,
    pub hc: &'a GradedBasis,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactReport {
    pub tau_a: FieldElement,
    pub tau_b: FieldElement,
    pub tau_c: FieldElement,
    /// Torsion of the homology long exact sequence.
    pub tau_les: FieldElement,
    /// `Π_i [b_i / f(a_i), s(c_i)]^{(−1)^{i+1}}` for any section `s` of `g`.
    pub basis_change: FieldElement,
    pub sign: i32,
    pub holds: bool,
}

/// Coordinates of the cycle `z` in the homology basis `h` modulo boundaries `im`.
fn homology_coords(z: &Matrix, h: &Matrix, im: &Matrix) -> Result<Matrix> {
    let k = h.cols();
    let sol = h.hstack(im)?.solve(z).map_err(|_| Error::NotAHomologyBasis("class outside the span".into()))?;
    Ok(sol.block(0, 0, k, sol.cols()))
}

/// Sign in `τ(B) = ± τ(A) τ(C) τ(ℋ)` for compatible bases. With `α_i`, `β_i` the partial
/// sums up to degree `i` of chain ranks and Betti numbers, the exponent is
/// `Σ_i (β_i(A)+β_i(C))(β_i(B)+1) + α_i(A)(β_i(A)+β_i(B)) + α_i(C)(β_i(B)+β_i(C))
///  + α_{i−1}(A)α_i(C) + β_{i−1}(A)β_i(C)`.
pub fn short_exact_sign(a: &BasedComplex, b: &BasedComplex, c: &BasedComplex) -> i32 {
    let top = a.ranks().len().max(b.ranks().len()).max(c.ranks().len());
    let pad = |v: &[usize]| -> Vec<usize> { (0..top).map(|i| v.get(i).copied().unwrap_or(0)).collect() };
    let (ra, rc) = (pad(a.ranks()), pad(c.ranks()));
    let (ha, hb, hc) = (pad(&homology_dims(a)), pad(&homology_dims(b)), pad(&homology_dims(c)));
    let ps = |v: &[usize], i: usize| -> usize { v[..=i].iter().sum() };
    let prev = |v: &[usize], i: usize| -> usize { if i == 0 { 0 } else { ps(v, i - 1) } };
    let mut e = 0;
    for i in 0..top {
        let (aa, ac) = (ps(&ra, i), ps(&rc, i));
        let (ba, bb, bc) = (ps(&ha, i), ps(&hb, i), ps(&hc, i));
        e += (ba + bc) * (bb + 1) + aa * (ba + bb) + ac * (bb + bc);
        e += prev(&ra, i) * ac + prev(&ha, i) * bc;
    }
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Milnor's multiplicativity `τ(B) = ± τ(A) τ(C) τ(ℋ) · (basis change)` with raw torsions.
pub fn short_exact_check(s: &ShortExact) -> Result<ShortExactReport> {
    let top = s.b.ranks().len();
    let rank = |x: &BasedComplex, i: usize| x.rank(i as i64);
    for i in 0..top {
        let (f, g) = (&s.f[i], &s.g[i]);
        if f.rank() != rank(s.a, i) || g.rank() != rank(s.c, i) || !g.mul(f)?.is_zero() || f.rank() + g.rank() != rank(s.b, i) {
            return Err(Error::NotASubcomplex(format!("sequence is not short exact in degree {i}")));
        }
    }
    let tau_a = euler_iso(s.a, s.ha)?;
    let tau_b = euler_iso(s.b, s.hb)?;
    let tau_c = euler_iso(s.c, s.hc)?;

    let mut basis_change = FieldElement::one_of(s.b.tag());
    for i in 0..top {
        let lifts = s.g[i].solve(&Matrix::identity(rank(s.c, i)))?;
        let d = s.f[i].hstack(&lifts)?.determinant()?;
        basis_change = if i % 2 == 1 { &basis_change * &d } else { basis_change.checked_div(&d)? };
    }

    // ℋ: H_i(A) at 3i+2, H_i(B) at 3i+1, H_i(C) at 3i
    let h = |x: &GradedBasis, c: &BasedComplex, i: usize| x.get(i as i64, c.rank(i as i64));
    let im = |c: &BasedComplex, i: usize| c.d(i as i64 + 1).image_basis().0;
    let mut ranks = Vec::new();
    let mut diffs = Vec::new();
    for i in 0..top {
        let (hai, hbi, hci) = (h(s.ha, s.a, i), h(s.hb, s.b, i), h(s.hc, s.c, i));
        ranks.extend([hci.cols(), hbi.cols(), hai.cols()]);
        // H_i(C) → H_{i−1}(A)
        if i > 0 {
            let hprev = h(s.ha, s.a, i - 1);
            let mut cols = Vec::new();
            for z in hci.columns() {
                let zc = Matrix::from_columns(z.len(), &[z])?;
                let y = s.g[i].solve(&zc)?;
                let dy = s.b.d(i as i64).mul(&y)?;
                let x = s.f[i - 1].solve(&dy)?;
                cols.push(homology_coords(&x, &hprev, &im(s.a, i - 1))?.column(0));
            }
            diffs.push(Matrix::from_columns(hprev.cols(), &cols)?);
        }
        // H_i(B) → H_i(C), H_i(A) → H_i(B)
        diffs.push(homology_coords(&s.g[i].mul(&hbi)?, &hci, &im(s.c, i))?);
        diffs.push(homology_coords(&s.f[i].mul(&hai)?, &hbi, &im(s.b, i))?);
    }
    let les = BasedComplex::new(0, ranks, diffs)?;
    let tau_les = euler_iso(&les, &GradedBasis::empty(&les))?;
    let sign = short_exact_sign(s.a, s.b, s.c);
    let rhs = &(&(&tau_a * &tau_c) * &tau_les) * &basis_change;
    let holds = tau_b == &rhs * &FieldElement::int(sign as i64);
    Ok(ShortExactReport { tau_a, tau_b, tau_c, tau_les, basis_change, sign, holds })
}

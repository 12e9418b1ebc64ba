//! Closed oriented surfaces: twisted intersection forms, spin structures as chain-level
//! trivializations of the mod-2 Euler class, the sign `σ_s`, Johnson's form and Arf.
//!
//! Singular 1-chains are written with [`Segment`]s: a path from the chosen point in one
//! cell to the chosen point in another, lifted to the universal cover so that it starts
//! at the complex's own lift of the first cell and ends at `offset ·` the lift of the
//! second. Only the abelianized offsets matter for holonomies of `det V ∈ {±1}`.

use std::collections::BTreeMap;

use crate::algebra::{FieldElement, Matrix};
use crate::cw::{euler_characteristic, fox_complex, fox_derivative, h1, CellComplex, FundamentalFamily, GroupPresentation, GroupRingElement, Word};
use crate::error::{Error, Result};
use crate::graded::{homology, BasedComplex, GradedBasis};
use crate::local::{specialize, LocalSystem};
use crate::symplectic::pfaffian;
use crate::torsion::{refined_torsion, sign_refined, HomologyOrientation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellRef {
    pub dim: usize,
    pub index: usize,
}

impl CellRef {
    pub fn new(dim: usize, index: usize) -> Self {
        CellRef { dim, index }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub from: CellRef,
    pub to: CellRef,
    pub offset: Word,
}

/// A spin structure: `half_euler[d][i]` weights and a bounding chain `h` with
/// `∂h = 2·e_{1/2} − e(Σ)`, where `e(Σ) = Σ (−1)^{dim c} x_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinStructure {
    pub half_euler: Vec<Vec<i64>>,
    pub bounding_chain: Vec<(i64, Segment)>,
}

/// A surface with a CW structure and its canonical homology orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceModel {
    pub genus: usize,
    pub complex: CellComplex,
    pub orientation: HomologyOrientation,
    one_vertex: bool,
}

impl SurfaceModel {
    /// One vertex, `2g` edges `aᵢ, bᵢ`, one face attached along `Π[aᵢ, bᵢ]`.
    pub fn standard(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::UnsupportedModel("genus 0 has no one-relator model".into()));
        }
        let complex = fox_complex(&GroupPresentation::surface(genus));
        let mut m = SurfaceModel { genus, complex, orientation: HomologyOrientation::POSITIVE, one_vertex: true };
        let triv = LocalSystem::trivial(m.complex.presentation(), 1);
        let b = specialize(&m.complex, &triv)?;
        let vol = m.homology_volume(&triv, &homology(&b))?;
        m.orientation = HomologyOrientation::new(vol.sign().expect("rational"))?;
        Ok(m)
    }

    /// The `m × n` square grid on the torus, with `π₁ = ⟨x, y | x y x⁻¹ y⁻¹⟩`.
    ///
    /// Cells: vertices `v_i_j`, horizontal edges `h_i_j`, vertical edges `u_i_j`, faces
    /// `f_i_j`, indexed by `i + m·j`. The orientation is transported from the one-vertex
    /// torus, which this grid subdivides.
    pub fn grid_torus(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Malformed("grid needs positive size".into()));
        }
        let complex = grid_torus_complex(m, n)?;
        let triv = LocalSystem::trivial(complex.presentation(), 1);
        let b = specialize(&complex, &triv)?;
        let mn = m * n;
        let col = |len: usize, idx: &[usize]| {
            let mut v = vec![FieldElement::zero(); len];
            for &i in idx {
                v[i] = FieldElement::one();
            }
            v
        };
        let ha: Vec<usize> = (0..m).collect();
        let hb: Vec<usize> = (0..n).map(|j| mn + m * j).collect();
        let faces: Vec<usize> = (0..mn).collect();
        let transported = GradedBasis {
            lo: 0,
            vectors: vec![
                Matrix::from_columns(mn, &[col(mn, &[0])])?,
                Matrix::from_columns(2 * mn, &[col(2 * mn, &ha), col(2 * mn, &hb)])?,
                Matrix::from_columns(mn, &[col(mn, &faces)])?,
            ],
        };
        let s_std = sign_refined(&b, &homology(&b))?.sign().expect("rational");
        let s_tr = sign_refined(&b, &transported)?.sign().expect("rational");
        Ok(SurfaceModel {
            genus: 1,
            complex,
            orientation: HomologyOrientation::new(s_std * s_tr)?,
            one_vertex: false,
        })
    }

    pub fn is_one_vertex(&self) -> bool {
        self.one_vertex
    }

    pub fn euler_characteristic(&self) -> i64 {
        euler_characteristic(&self.complex)
    }

    /// Symplectic volume of `H_•(Σ; V)` relative to the homology basis `h`:
    /// `(−1)^{k(k−1)/2} Pf(I_{h₁}) / det ⟨h₀, h₂⟩` with `k = dim H₀`. The sign makes the
    /// scalar compatible with the Koszul reordering of graded determinant lines.
    pub fn homology_volume(&self, rho: &LocalSystem, h: &GradedBasis) -> Result<FieldElement> {
        let b = specialize(&self.complex, rho)?;
        let dims: Vec<usize> = (0..3).map(|d| h.get(d, b.rank(d)).cols()).collect();
        if dims.iter().all(|&d| d == 0) {
            return Ok(FieldElement::one_of(rho.tag()));
        }
        if !self.one_vertex {
            return Err(Error::UnsupportedModel(
                "homology pairings are only implemented for the one-vertex model".into(),
            ));
        }
        let gram = gram_of(rho);
        let h0 = h.get(0, b.rank(0));
        let h2 = h.get(2, b.rank(2));
        if h0.cols() != h2.cols() {
            return Err(Error::DegeneratePairing);
        }
        // rows pair through G⁻¹
        let p = h0.transpose().mul(&gram.inverse()?)?.mul(&h2)?;
        let dp = p.determinant()?;
        if dp.is_zero() {
            return Err(Error::DegeneratePairing);
        }
        let i1 = intersection_form_on(self, rho, &h.get(1, b.rank(1)))?;
        let k = h0.cols();
        let v = pfaffian(&i1)?.checked_div(&dp)?;
        Ok(if (k * k.saturating_sub(1) / 2) % 2 == 1 { -v } else { v })
    }
}

fn gram_of(rho: &LocalSystem) -> Matrix {
    rho.gram().cloned().unwrap_or_else(|| Matrix::identity(rho.dim()))
}

fn grid_torus_complex(m: usize, n: usize) -> Result<CellComplex> {
    let p = GroupPresentation::torus();
    let x = Word::generator(0);
    let y = Word::generator(1);
    let mn = m * n;
    let id = |i: usize, j: usize| (i % m) + m * (j % n);
    let mut cells = vec![Vec::new(), Vec::new(), Vec::new()];
    for j in 0..n {
        for i in 0..m {
            cells[0].push(format!("v_{i}_{j}"));
            cells[1].push(format!("h_{i}_{j}"));
            cells[2].push(format!("f_{i}_{j}"));
        }
    }
    for j in 0..n {
        for i in 0..m {
            cells[1].push(format!("u_{i}_{j}"));
        }
    }
    let wrap = |cond: bool, g: &Word| if cond { g.clone() } else { Word::identity() };
    let mut d1 = vec![vec![GroupRingElement::zero(); mn]; 2 * mn];
    for j in 0..n {
        for i in 0..m {
            let h = id(i, j);
            d1[h][id(i + 1, j)].add_term(1, wrap(i + 1 == m, &x));
            d1[h][id(i, j)].add_term(-1, Word::identity());
            let u = mn + id(i, j);
            d1[u][id(i, j + 1)].add_term(1, wrap(j + 1 == n, &y));
            d1[u][id(i, j)].add_term(-1, Word::identity());
        }
    }
    let mut d2 = vec![vec![GroupRingElement::zero(); 2 * mn]; mn];
    for j in 0..n {
        for i in 0..m {
            let f = &mut d2[id(i, j)];
            f[id(i, j)].add_term(1, Word::identity());
            f[mn + id(i + 1, j)].add_term(1, wrap(i + 1 == m, &x));
            f[id(i, j + 1)].add_term(-1, wrap(j + 1 == n, &y));
            f[mn + id(i, j)].add_term(-1, Word::identity());
        }
    }
    CellComplex::new(p, cells, vec![d1, d2], 0)
}

/// Relator data shared by all cup products: prefix monodromies `ρ(P_k)` and letters.
struct RelatorWalk {
    letters: Vec<i32>,
    prefix: Vec<Matrix>,
    inverses: Vec<Matrix>,
}

impl RelatorWalk {
    fn new(p: &GroupPresentation, rho: &LocalSystem) -> Self {
        let letters = p.relators()[0].letters().to_vec();
        let mut prefix = vec![Matrix::identity(rho.dim())];
        for &l in &letters {
            let g = rho.eval(&Word::from_letters([l]));
            prefix.push(prefix.last().expect("nonempty").mul(&g).expect("square"));
        }
        let inverses = (0..p.generator_count()).map(|j| rho.eval(&Word::generator_inv(j))).collect();
        RelatorWalk { letters, prefix, inverses }
    }

    /// Values of the crossed homomorphism on each letter `y_k` and each prefix `P_k`.
    fn values(&self, u: &[Vec<FieldElement>]) -> Result<(Vec<Vec<FieldElement>>, Vec<Vec<FieldElement>>)> {
        let mut on_letter = Vec::new();
        let mut on_prefix = vec![vec![FieldElement::zero(); u[0].len()]];
        for (k, &l) in self.letters.iter().enumerate() {
            let j = l.unsigned_abs() as usize - 1;
            let y = if l > 0 { u[j].clone() } else { self.inverses[j].mul_vec(&u[j])?.iter().map(|x| -x).collect() };
            let step = self.prefix[k].mul_vec(&y)?;
            on_prefix.push(on_prefix[k].iter().zip(&step).map(|(a, b)| a + b).collect());
            on_letter.push(y);
        }
        Ok((on_letter, on_prefix))
    }
}

fn bilinear(g: &Matrix, a: &[FieldElement], b: &[FieldElement]) -> Result<FieldElement> {
    let gb = g.mul_vec(b)?;
    Ok(a.iter().zip(&gb).fold(FieldElement::zero_of(g.tag()), |s, (x, y)| &s + &(x * y)))
}

/// Cup-product form on `H¹(π; M)` (columns, `g·m = ρ(g)m`, form `G`), evaluated on the
/// fundamental class through the relator `y₁⋯y_L`:
/// `Σ_k G(u(P_{k−1}), ρ(P_{k−1}) w(y_k)) + Σ_{y_k = x_j⁻¹} G(u(x_j), w(x_j))`.
fn cup_form(
    walk: &RelatorWalk,
    gram: &Matrix,
    u: (&[Vec<FieldElement>], &[Vec<FieldElement>]),
    w: &[Vec<FieldElement>],
    w_letter: &[Vec<FieldElement>],
) -> Result<FieldElement> {
    let (u_gen, u_prefix) = u;
    let mut acc = FieldElement::zero_of(gram.tag());
    for (k, &l) in walk.letters.iter().enumerate() {
        let moved = walk.prefix[k].mul_vec(&w_letter[k])?;
        acc = &acc + &bilinear(gram, &u_prefix[k], &moved)?;
        if l < 0 {
            let j = l.unsigned_abs() as usize - 1;
            acc = &acc + &bilinear(gram, &u_gen[j], &w[j])?;
        }
    }
    Ok(acc)
}

/// Intersection form on the span of the 1-cycles `h1` (columns in the specialized
/// chain coordinates), obtained from the cup form by Kronecker duality.
fn intersection_form_on(model: &SurfaceModel, rho: &LocalSystem, h1b: &Matrix) -> Result<Matrix> {
    let k = h1b.cols();
    if k == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    let p = model.complex.presentation();
    let gens = p.generator_count();
    let n = rho.dim();
    let gram = gram_of(rho);
    let r = &p.relators()[0];
    // cochain complex C⁰ → C¹ → C², as a chain complex in degrees 0, −1, −2
    let mut d1 = Matrix::zeros(gens * n, n);
    let mut d2 = Matrix::zeros(n, gens * n);
    for j in 0..gens {
        d1.set_block(j * n, 0, &rho.monodromy()[j].sub(&Matrix::identity(n))?);
        d2.set_block(0, j * n, &rho.eval_ring(&fox_derivative(r, j)));
    }
    let co = BasedComplex::new(-2, vec![n, gens * n, n], vec![d2, d1])?;
    let hc = homology(&co).get(-1, gens * n);
    if hc.cols() != k {
        return Err(Error::DegeneratePairing);
    }
    let split = |v: Vec<FieldElement>| -> Vec<Vec<FieldElement>> { v.chunks(n).map(<[_]>::to_vec).collect() };
    let us: Vec<Vec<Vec<FieldElement>>> = hc.columns().into_iter().map(split).collect();
    let walk = RelatorWalk::new(p, rho);
    let vals = us.iter().map(|u| walk.values(u)).collect::<Result<Vec<_>>>()?;
    let mut c = Matrix::zeros(k, k);
    for a in 0..k {
        for b in 0..k {
            c[(a, b)] = cup_form(&walk, &gram, (&us[a], &vals[a].1), &us[b], &vals[b].0)?;
        }
    }
    let kron = hc.transpose().mul(h1b)?;
    let nm = kron.inverse().map_err(|_| Error::DegeneratePairing)?;
    let dual_cup = nm.mul(&c)?.mul(&nm.transpose())?;
    let form = dual_cup.inverse().map_err(|_| Error::DegeneratePairing)?.transpose();
    Ok(form)
}

/// Intersection pairing on `H₁(Σ; V)` in the deterministic homology basis.
pub fn intersection_pairing(model: &SurfaceModel, rho: &LocalSystem) -> Result<(Matrix, Matrix)> {
    let b = specialize(&model.complex, rho)?;
    let h = homology(&b).get(1, b.rank(1));
    if h.cols() == 0 {
        return Ok((h, Matrix::zeros(0, 0)));
    }
    if !model.one_vertex {
        return Err(Error::UnsupportedModel("twisted pairing needs the one-vertex model".into()));
    }
    let form = intersection_form_on(model, rho, &h)?;
    Ok((h, form))
}

fn euler_chain(c: &CellComplex) -> BTreeMap<CellRef, i64> {
    let mut e = BTreeMap::new();
    for (d, cells) in c.all_cells().iter().enumerate() {
        for i in 0..cells.len() {
            e.insert(CellRef::new(d, i), if d % 2 == 0 { 1 } else { -1 });
        }
    }
    e
}

fn chain_boundary(h: &[(i64, Segment)]) -> BTreeMap<CellRef, i64> {
    let mut b = BTreeMap::new();
    for (k, s) in h {
        *b.entry(s.to).or_insert(0) += k;
        *b.entry(s.from).or_insert(0) -= k;
    }
    b.retain(|_, v| *v != 0);
    b
}

impl SpinStructure {
    /// Verifies `∂h = 2·e_{1/2} − e(Σ)` as 0-chains.
    pub fn check(&self, c: &CellComplex) -> Result<()> {
        let dims = c.all_cells().len();
        if self.half_euler.len() != dims || (0..dims).any(|d| self.half_euler[d].len() != c.cell_count(d)) {
            return Err(Error::NotASpinStructure("half-Euler weights do not match the cells".into()));
        }
        for (_, s) in &self.bounding_chain {
            for r in [s.from, s.to] {
                if r.dim >= dims || r.index >= c.cell_count(r.dim) {
                    return Err(Error::NoSuchCell { dim: r.dim, index: r.index });
                }
            }
        }
        let mut want = BTreeMap::new();
        for (d, w) in self.half_euler.iter().enumerate() {
            for (i, &x) in w.iter().enumerate() {
                *want.entry(CellRef::new(d, i)).or_insert(0) += 2 * x;
            }
        }
        for (r, x) in euler_chain(c) {
            *want.entry(r).or_insert(0) -= x;
        }
        want.retain(|_, v| *v != 0);
        if chain_boundary(&self.bounding_chain) != want {
            return Err(Error::NotASpinStructure("boundary of the chain is not 2·e½ − e".into()));
        }
        Ok(())
    }

    /// Holonomy of `det ρ` along the bounding chain.
    pub fn holonomy(&self, rho: &LocalSystem) -> Result<FieldElement> {
        let mut acc = FieldElement::one_of(rho.tag());
        for (k, s) in &self.bounding_chain {
            acc = &acc * &rho.det_character(&s.offset).pow(*k)?;
        }
        Ok(acc)
    }

    /// Adds the loop at the basepoint with the given offset, moving the structure by its class.
    pub fn shifted(&self, c: &CellComplex, loop_word: Word) -> SpinStructure {
        let bp = CellRef::new(0, c.basepoint());
        let mut s = self.clone();
        s.bounding_chain.push((1, Segment { from: bp, to: bp, offset: loop_word }));
        s
    }
}

/// Spin structure induced by the complex's own lifts: `h = Σ_c (−1)^{dim c+1} γ_c`
/// with `γ_c` the path from the basepoint to `c` and `e_{1/2} = (χ/2)·x_v`.
pub fn reference_spin(c: &CellComplex) -> Result<SpinStructure> {
    let chi = euler_characteristic(c);
    if chi % 2 != 0 {
        return Err(Error::NotASpinStructure("odd Euler characteristic".into()));
    }
    let bp = c.basepoint();
    let mut half_euler: Vec<Vec<i64>> = c.all_cells().iter().map(|v| vec![0; v.len()]).collect();
    half_euler[0][bp] = chi / 2;
    let mut chain = Vec::new();
    for (d, cells) in c.all_cells().iter().enumerate() {
        for i in 0..cells.len() {
            if d == 0 && i == bp {
                continue;
            }
            let seg = Segment { from: CellRef::new(0, bp), to: CellRef::new(d, i), offset: Word::identity() };
            chain.push((if d % 2 == 0 { -1 } else { 1 }, seg));
        }
    }
    let s = SpinStructure { half_euler, bounding_chain: chain };
    s.check(c)?;
    Ok(s)
}

/// All `2^{b₁}` spin structures `s + h`, for `h` running over `H₁(Σ; ℤ/2)` in binary order
/// of the generator coordinates.
pub fn all_spin_structures(c: &CellComplex, base: &SpinStructure) -> Vec<SpinStructure> {
    let hh = h1(c);
    let r = hh.moduli().len();
    (0..1usize << r)
        .map(|mask| {
            let mut cls = hh.zero();
            for k in 0..r {
                cls.coords[k] = ((mask >> k) & 1) as i64;
            }
            if mask == 0 {
                base.clone()
            } else {
                base.shifted(c, hh.representative(&cls))
            }
        })
        .collect()
}

/// Class of `h₁ − h₂` in `H₁(Σ; ℤ/2)`, as coordinates mod 2.
pub fn spin_diff(c: &CellComplex, s1: &SpinStructure, s2: &SpinStructure) -> Vec<u8> {
    let hh = h1(c);
    let mut acc = hh.zero();
    for (sign, s) in [(1, s1), (-1, s2)] {
        for (k, seg) in &s.bounding_chain {
            let mut cls = hh.abelianize(&seg.offset);
            if sign * k < 0 {
                cls = hh.neg(&cls);
            }
            for _ in 0..(sign * k).unsigned_abs() {
                acc = hh.add(&acc, &cls);
            }
        }
    }
    acc.coords.iter().map(|x| x.rem_euclid(2) as u8).collect()
}

/// `τ_s(V)`: refined torsion with the complex's lifts, times the `det V`-holonomy of the
/// bounding chain, times `((−1)^{n(n−1)/2} det G)^{χ/2}`: the pairing on `det V` (with its
/// Koszul sign) trivializing `det(V)^{⊗2}` over `e_{1/2}`, whose total weight is `χ/2`.
pub fn spin_torsion(model: &SurfaceModel, s: &SpinStructure, rho: &LocalSystem, h: &GradedBasis) -> Result<FieldElement> {
    let c = &model.complex;
    let e = FundamentalFamily::identity(c);
    let tau = refined_torsion(c, rho, &e, model.orientation, h)?.value;
    let n = rho.dim();
    let mut dg = gram_of(rho).determinant()?;
    if (n * n.saturating_sub(1) / 2) % 2 == 1 {
        dg = -dg;
    }
    let chi = euler_characteristic(c);
    Ok(&(&tau * &s.holonomy(rho)?) * &dg.pow(chi / 2)?)
}

fn require_orthogonal(rho: &LocalSystem, p: &GroupPresentation) -> Result<()> {
    let g = gram_of(rho);
    for (j, m) in rho.monodromy().iter().enumerate() {
        if m.transpose().mul(&g)?.mul(m)? != g {
            return Err(Error::NotOrthogonal(format!("monodromy of '{}' does not preserve the form", p.generators()[j])));
        }
    }
    Ok(())
}

/// `σ_s(V) = vol / τ_s(V) ∈ {±1}`.
pub fn sigma_s(model: &SurfaceModel, s: &SpinStructure, rho: &LocalSystem) -> Result<i32> {
    require_orthogonal(rho, model.complex.presentation())?;
    s.check(&model.complex)?;
    let b = specialize(&model.complex, rho)?;
    let h = homology(&b);
    let vol = model.homology_volume(rho, &h)?;
    let tau = spin_torsion(model, s, rho, &h)?;
    let r = vol.checked_div(&tau)?;
    if r.is_one() {
        Ok(1)
    } else if (-&r).is_one() {
        Ok(-1)
    } else {
        Err(Error::NotASign(r.to_string()))
    }
}

/// Johnson's quadratic form: `σ_s` of the rank-1 system with monodromy signs `α`.
pub fn johnson_q(model: &SurfaceModel, s: &SpinStructure, alpha: &[i64]) -> Result<i32> {
    let l = LocalSystem::mu2(model.complex.presentation(), alpha)?;
    sigma_s(model, s, &l)
}

/// All sign vectors in binary order (bit k set means generator k has monodromy −1).
pub fn sign_vectors(gens: usize) -> Vec<Vec<i64>> {
    (0..1usize << gens).map(|m| (0..gens).map(|k| if (m >> k) & 1 == 1 { -1 } else { 1 }).collect()).collect()
}

pub fn arf(model: &SurfaceModel, s: &SpinStructure) -> Result<i32> {
    let gens = model.complex.presentation().generator_count();
    let mut total = 0i64;
    for a in sign_vectors(gens) {
        total += johnson_q(model, s, &a)? as i64;
    }
    let scale = 1i64 << model.genus;
    match total {
        t if t == scale => Ok(1),
        t if t == -scale => Ok(-1),
        t => Err(Error::NotASign(format!("{t}/{scale}"))),
    }
}

/// Edges of a dimer configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimerConfiguration {
    pub edges: Vec<usize>,
}

/// `reversed[e]` flips edge `e` relative to its cell orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KasteleynOrientation {
    pub reversed: Vec<bool>,
}

/// `(tail, tail word, head, head word)` of an edge.
fn endpoints(c: &CellComplex, e: usize) -> Result<(usize, Word, usize, Word)> {
    let mut head = None;
    let mut tail = None;
    for v in 0..c.cell_count(0) {
        for (w, k) in c.boundary_entry(1, e, v).terms() {
            let slot = match k {
                1 => &mut head,
                -1 => &mut tail,
                _ => return Err(Error::Malformed(format!("edge {} is not a path", c.cells(1)[e]))),
            };
            if slot.replace((v, w.clone())).is_some() {
                return Err(Error::Malformed(format!("edge {} is not a path", c.cells(1)[e])));
            }
        }
    }
    match (tail, head) {
        (Some((t, wt)), Some((h, wh))) => Ok((t, wt, h, wh)),
        _ => Err(Error::Malformed(format!("edge {} is not a path", c.cells(1)[e]))),
    }
}

/// Face-side occurrences of edges: `(face, edge, word, ε)` where `ε = ±1` compares the
/// Kasteleyn direction with the face's boundary orientation.
fn occurrences(c: &CellComplex, k: &KasteleynOrientation) -> Vec<(usize, usize, Word, i64)> {
    let mut out = Vec::new();
    for f in 0..c.cell_count(2) {
        for e in 0..c.cell_count(1) {
            for (w, coef) in c.boundary_entry(2, f, e).terms() {
                let eps = if k.reversed[e] { -coef } else { coef };
                for _ in 0..coef.unsigned_abs() {
                    out.push((f, e, w.clone(), eps.signum()));
                }
            }
        }
    }
    out
}

/// `n_f`: the number of boundary edges of each face oriented against it.
pub fn clockwise_counts(c: &CellComplex, k: &KasteleynOrientation) -> Vec<i64> {
    let mut n = vec![0; c.cell_count(2)];
    for (f, _, _, eps) in occurrences(c, k) {
        if eps < 0 {
            n[f] += 1;
        }
    }
    n
}

pub fn is_kasteleyn(c: &CellComplex, k: &KasteleynOrientation) -> bool {
    k.reversed.len() == c.cell_count(1) && clockwise_counts(c, k).iter().all(|n| n % 2 == 1)
}

/// `e_{1/2} = Σ_{v∈V⁺} x_v + Σ_f (1−n_f)/2 · x_f`, bounded by the dimer edges (odd → even)
/// plus, for every edge, the path from the face on its clockwise side to the edge.
pub fn half_euler_from_kasteleyn(c: &CellComplex, d: &DimerConfiguration, k: &KasteleynOrientation) -> Result<SpinStructure> {
    if k.reversed.len() != c.cell_count(1) {
        return Err(Error::NotKasteleyn("orientation does not cover every edge".into()));
    }
    let nv = c.cell_count(0);
    let mut hits = vec![0; nv];
    let mut chain = Vec::new();
    let mut half_euler: Vec<Vec<i64>> = c.all_cells().iter().map(|v| vec![0; v.len()]).collect();
    for &e in &d.edges {
        if e >= c.cell_count(1) {
            return Err(Error::NotADimer(format!("edge index {e} out of range")));
        }
        let (t, wt, h, wh) = endpoints(c, e)?;
        if t == h {
            return Err(Error::NotADimer(format!("edge {} is a loop", c.cells(1)[e])));
        }
        hits[t] += 1;
        hits[h] += 1;
        let (from, wf, to, wto) = if k.reversed[e] { (h, wh, t, wt) } else { (t, wt, h, wh) };
        half_euler[0][to] = 1;
        chain.push((1, Segment { from: CellRef::new(0, from), to: CellRef::new(0, to), offset: wf.inverse().mul(&wto) }));
    }
    if let Some(v) = hits.iter().position(|&x| x != 1) {
        return Err(Error::NotADimer(format!("vertex {} meets {} dimer edges", c.cells(0)[v], hits[v])));
    }
    let n = clockwise_counts(c, k);
    if let Some(f) = n.iter().position(|x| x % 2 == 0) {
        return Err(Error::NotKasteleyn(format!("face {} has {} clockwise edges", c.cells(2)[f], n[f])));
    }
    for (f, nf) in n.iter().enumerate() {
        half_euler[2][f] = (1 - nf) / 2;
    }
    for (f, e, w, eps) in occurrences(c, k) {
        if eps < 0 {
            chain.push((1, Segment { from: CellRef::new(2, f), to: CellRef::new(1, e), offset: w }));
        }
    }
    let s = SpinStructure { half_euler, bounding_chain: chain };
    s.check(c)?;
    Ok(s)
}

/// Every Kasteleyn orientation, by exhaustive search (small graphs only).
pub fn kasteleyn_orientations(c: &CellComplex) -> Vec<KasteleynOrientation> {
    let ne = c.cell_count(1);
    assert!(ne <= 20, "exhaustive search limited to 20 edges");
    (0..1u32 << ne)
        .map(|m| KasteleynOrientation { reversed: (0..ne).map(|e| (m >> e) & 1 == 1).collect() })
        .filter(|k| is_kasteleyn(c, k))
        .collect()
}

/// Mod-2 intersection number of sign vectors on the standard surface (`aᵢ·bᵢ = 1`).
pub fn mod2_intersection(alpha: &[i64], beta: &[i64]) -> i64 {
    let bit = |s: i64| i64::from(s < 0);
    (0..alpha.len() / 2)
        .map(|i| bit(alpha[2 * i]) * bit(beta[2 * i + 1]) + bit(alpha[2 * i + 1]) * bit(beta[2 * i]))
        .sum::<i64>()
        % 2
}

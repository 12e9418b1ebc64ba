use std::collections::BTreeMap;

use super::h1::{h1, presentation_h1, H1Class};
use super::rewrite::Rewriter;
use super::word::{GroupRingElement, Word};
use super::GroupPresentation;
use crate::error::{Error, Result};

/// Cellular chains of the universal cover in a chosen family of lifts.
///
/// `boundary(d)[i][j] = a_ij` means `∂e_i = Σ_j a_ij · e_j` in the left ℤ[π]-module,
/// where `e_i` runs over the `d`-cells and `e_j` over the `(d−1)`-cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    presentation: GroupPresentation,
    cells: Vec<Vec<String>>,
    boundary: Vec<Vec<Vec<GroupRingElement>>>,
    basepoint: usize,
}

impl CellComplex {
    /// `boundary[d−1]` holds the matrix of `∂_d`; `cells[d]` the names of the `d`-cells.
    pub fn new(
        presentation: GroupPresentation,
        cells: Vec<Vec<String>>,
        boundary: Vec<Vec<Vec<GroupRingElement>>>,
        basepoint: usize,
    ) -> Result<Self> {
        if boundary.len() + 1 != cells.len().max(1) {
            return Err(Error::ShapeMismatch(format!(
                "{} cell dimensions need {} boundary matrices",
                cells.len(),
                cells.len().saturating_sub(1)
            )));
        }
        for (d, names) in cells.iter().enumerate() {
            for (i, n) in names.iter().enumerate() {
                if names[..i].contains(n) {
                    return Err(Error::Malformed(format!("duplicate {d}-cell '{n}'")));
                }
            }
        }
        for (k, m) in boundary.iter().enumerate() {
            let d = k + 1;
            if m.len() != cells[d].len() || m.iter().any(|row| row.len() != cells[d - 1].len()) {
                return Err(Error::ShapeMismatch(format!("boundary of dimension {d} has the wrong shape")));
            }
            for e in m.iter().flatten() {
                if e.max_generator().is_some_and(|g| g >= presentation.generator_count()) {
                    return Err(Error::Malformed(format!(
                        "boundary of dimension {d} uses an undeclared generator"
                    )));
                }
            }
        }
        if cells.first().is_some_and(|v| !v.is_empty() && basepoint >= v.len())
            || (cells.first().is_none_or(Vec::is_empty) && basepoint != 0)
        {
            return Err(Error::NoSuchCell { dim: 0, index: basepoint });
        }
        Ok(CellComplex { presentation, cells, boundary, basepoint })
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    /// Top dimension; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn cells(&self, d: usize) -> &[String] {
        self.cells.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn all_cells(&self) -> &[Vec<String>] {
        &self.cells
    }

    pub fn cell_count(&self, d: usize) -> usize {
        self.cells(d).len()
    }

    pub fn cell_index(&self, d: usize, name: &str) -> Option<usize> {
        self.cells(d).iter().position(|n| n == name)
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    /// Matrix of `∂_d` (rows: d-cells, columns: (d−1)-cells); empty when `d = 0` or out of range.
    pub fn boundary(&self, d: usize) -> Vec<Vec<GroupRingElement>> {
        if d == 0 || d >= self.cells.len() {
            return vec![vec![GroupRingElement::zero(); self.cell_count(d.saturating_sub(1))]; self.cell_count(d)];
        }
        self.boundary[d - 1].clone()
    }

    pub fn boundary_entry(&self, d: usize, i: usize, j: usize) -> &GroupRingElement {
        &self.boundary[d - 1][i][j]
    }

    /// Relifts every cell: `e'_i = w_i · e_i`, so `a'_ij = w_i a_ij w_j⁻¹`.
    pub fn with_family(&self, fam: &FundamentalFamily) -> Result<CellComplex> {
        fam.check(self)?;
        let boundary = self
            .boundary
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let d = k + 1;
                m.iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, a)| a.conjugate_by(&fam.shifts[d][i], &fam.shifts[d - 1][j].inverse()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(CellComplex { boundary, ..self.clone() })
    }

    /// Same cells and boundaries over a different presentation (generators mapped by `images`).
    pub fn map_group(&self, presentation: GroupPresentation, images: &[Word]) -> CellComplex {
        let boundary = self
            .boundary
            .iter()
            .map(|m| {
                m.iter()
                    .map(|row| row.iter().map(|a| a.map_words(|w| w.substitute(images))).collect())
                    .collect()
            })
            .collect();
        CellComplex { presentation, cells: self.cells.clone(), boundary, basepoint: self.basepoint }
    }
}

/// A relift of every cell relative to the complex's own lifts: new lift = shift · old lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalFamily {
    pub shifts: Vec<Vec<Word>>,
}

impl FundamentalFamily {
    pub fn identity(c: &CellComplex) -> Self {
        FundamentalFamily {
            shifts: c.cells.iter().map(|v| vec![Word::identity(); v.len()]).collect(),
        }
    }

    pub fn with_shift(mut self, d: usize, i: usize, w: Word) -> Self {
        self.shifts[d][i] = w;
        self
    }

    pub fn shift(&self, d: usize, i: usize) -> &Word {
        &self.shifts[d][i]
    }

    pub fn check(&self, c: &CellComplex) -> Result<()> {
        if self.shifts.len() != c.cells.len()
            || self.shifts.iter().zip(&c.cells).any(|(s, v)| s.len() != v.len())
        {
            return Err(Error::ShapeMismatch("fundamental family does not cover every cell".into()));
        }
        Ok(())
    }

    /// Composite family: first `self`, then `o` on top.
    pub fn then(&self, o: &FundamentalFamily) -> FundamentalFamily {
        FundamentalFamily {
            shifts: self
                .shifts
                .iter()
                .zip(&o.shifts)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| y.mul(x)).collect())
                .collect(),
        }
    }
}

pub fn euler_characteristic(c: &CellComplex) -> i64 {
    c.cells
        .iter()
        .enumerate()
        .map(|(d, v)| if d % 2 == 0 { v.len() as i64 } else { -(v.len() as i64) })
        .sum()
}

/// `Σ_a (−1)^{dim a} q(shift₂(a) · shift₁(a)⁻¹)`.
pub fn family_diff(c: &CellComplex, e1: &FundamentalFamily, e2: &FundamentalFamily) -> Result<H1Class> {
    e1.check(c)?;
    e2.check(c)?;
    let h = h1(c);
    let mut acc = h.zero();
    for d in 0..c.cells.len() {
        for i in 0..c.cell_count(d) {
            let q = h.abelianize(&e2.shifts[d][i].mul(&e1.shifts[d][i].inverse()));
            acc = if d % 2 == 0 { h.add(&acc, &q) } else { h.add(&acc, &h.neg(&q)) };
        }
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellFailure {
    pub dim: usize,
    pub index: usize,
    pub cell: String,
    /// `∂∂` of the cell, listed by the `(dim−2)`-cells where it is nonzero.
    pub residual: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CheckReport {
    pub failures: Vec<CellFailure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Whether a free group-ring element vanishes in ℤ[π].
pub fn vanishes_in_group(x: &GroupRingElement, p: &GroupPresentation, rw: &Rewriter) -> Result<bool> {
    // equal group elements share an H₁ class, so buckets can be checked separately
    let ab = presentation_h1(p);
    let mut by_class: BTreeMap<Vec<i64>, Vec<(Word, i64)>> = BTreeMap::new();
    for (w, c) in x.terms() {
        by_class.entry(ab.abelianize(w).coords).or_default().push((w.clone(), c));
    }
    for terms in by_class.values() {
        if terms.iter().map(|t| t.1).sum::<i64>() != 0 {
            return Ok(false);
        }
        if terms.is_empty() {
            continue;
        }
        let mut reps: Vec<(Word, i64)> = Vec::new();
        for (w, c) in terms {
            let mut placed = false;
            for r in reps.iter_mut() {
                if rw.equal(w, &r.0)? {
                    r.1 += c;
                    placed = true;
                    break;
                }
            }
            if !placed {
                reps.push((w.clone(), *c));
            }
        }
        if reps.iter().any(|r| r.1 != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Verifies `∂∘∂ = 0` in ℤ[π] cell by cell.
pub fn check_complex(c: &CellComplex) -> Result<CheckReport> {
    let rw = c.presentation.rewriter();
    let names = c.presentation.generators();
    let mut report = CheckReport::default();
    for d in 2..c.cells.len() {
        let a = &c.boundary[d - 1];
        let b = &c.boundary[d - 2];
        for i in 0..c.cell_count(d) {
            let mut residual = Vec::new();
            for k in 0..c.cell_count(d - 2) {
                let x = (0..c.cell_count(d - 1))
                    .fold(GroupRingElement::zero(), |acc, j| acc.add(&a[i][j].mul(&b[j][k])));
                if !vanishes_in_group(&x, &c.presentation, &rw)? {
                    residual.push((c.cells[d - 2][k].clone(), x.format(names)));
                }
            }
            if !residual.is_empty() {
                report.failures.push(CellFailure {
                    dim: d,
                    index: i,
                    cell: c.cells[d][i].clone(),
                    residual,
                });
            }
        }
    }
    Ok(report)
}

/// Fox derivative `∂r/∂g`.
pub fn fox_derivative(r: &Word, g: usize) -> GroupRingElement {
    let mut acc = GroupRingElement::zero();
    let mut prefix = Word::identity();
    let letter = g as i32 + 1;
    for &l in r.letters() {
        if l == letter {
            acc.add_term(1, prefix.clone());
        }
        let next = prefix.mul(&Word::from_letters([l]));
        if l == -letter {
            acc.add_term(-1, next.clone());
        }
        prefix = next;
    }
    acc
}

/// Presentation 2-complex: one vertex `v`, a 1-cell per generator (named after it) and a
/// 2-cell per relator, with `∂eᵢ = (gᵢ − 1)v` and `∂f_j = Σᵢ (∂r_j/∂gᵢ) eᵢ`.
pub fn fox_complex(p: &GroupPresentation) -> CellComplex {
    let n = p.generator_count();
    let gen_minus_one = |g: usize| GroupRingElement::from_terms([(1, Word::generator(g)), (-1, Word::identity())]);
    let d1 = (0..n).map(|g| vec![gen_minus_one(g)]).collect();
    let mut cells = vec![vec!["v".to_string()], p.generators().to_vec()];
    let mut boundary = vec![d1];
    if !p.relators().is_empty() {
        let names = if p.relators().len() == 1 {
            vec!["f".to_string()]
        } else {
            (1..=p.relators().len()).map(|j| format!("f{j}")).collect()
        };
        cells.push(names);
        boundary.push(p.relators().iter().map(|r| (0..n).map(|g| fox_derivative(r, g)).collect()).collect());
    }
    CellComplex::new(p.clone(), cells, boundary, 0).expect("fox complex is well formed")
}

fn fresh_name(taken: &[String], base: &str) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Splits a 1-cell `∂e = w_h v_h − w_t v_t` into `e: w_t v_t → m` and `e′: m → w_h v_h`,
/// where the new vertex `m` is lifted inside the lift of `e`.
pub fn subdivide_edge(c: &CellComplex, edge: usize) -> Result<CellComplex> {
    if edge >= c.cell_count(1) {
        return Err(Error::NoSuchCell { dim: 1, index: edge });
    }
    let row = &c.boundary[0][edge];
    let mut head = None;
    let mut tail = None;
    for (j, a) in row.iter().enumerate() {
        for (w, coef) in a.terms() {
            let slot = match coef {
                1 => &mut head,
                -1 => &mut tail,
                _ => return Err(Error::Malformed("edge boundary must be a difference of two vertices".into())),
            };
            if slot.replace((j, w.clone())).is_some() {
                return Err(Error::Malformed("edge boundary must be a difference of two vertices".into()));
            }
        }
    }
    let (Some((hj, hw)), Some((tj, tw))) = (head, tail) else {
        return Err(Error::Malformed("edge boundary must be a difference of two vertices".into()));
    };
    let mut cells = c.cells.clone();
    let vname = fresh_name(&cells[0], &format!("{}_mid", cells[1][edge]));
    let ename = fresh_name(&cells[1], &format!("{}'", cells[1][edge]));
    cells[0].push(vname);
    cells[1].push(ename);
    let m = cells[0].len() - 1;
    let mut boundary = c.boundary.clone();
    for r in boundary[0].iter_mut() {
        r.push(GroupRingElement::zero());
    }
    let nv = cells[0].len();
    let mut first = vec![GroupRingElement::zero(); nv];
    first[m] = GroupRingElement::one();
    first[tj] = first[tj].add(&GroupRingElement::monomial(-1, tw));
    let mut second = vec![GroupRingElement::zero(); nv];
    second[hj] = GroupRingElement::monomial(1, hw);
    second[m] = second[m].add(&GroupRingElement::monomial(-1, Word::identity()));
    boundary[0][edge] = first;
    boundary[0].push(second);
    if boundary.len() > 1 {
        for r in boundary[1].iter_mut() {
            let a = r[edge].clone();
            r.push(a);
        }
    }
    CellComplex::new(c.presentation.clone(), cells, boundary, c.basepoint)
}

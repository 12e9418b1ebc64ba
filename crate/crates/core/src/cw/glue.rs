use super::complex::{vanishes_in_group, CellComplex};
use super::word::{GroupRingElement, Word};
use super::GroupPresentation;
use crate::error::{Error, Result};

/// Cellular embedding of the common subcomplex: `images[d][i] = (j, w)` sends the lift
/// of the `i`-th `d`-cell to `w · e_j`, with `w` a word of the pushout group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellMap {
    pub images: Vec<Vec<(usize, Word)>>,
}

/// Caller-supplied pushout data for `X₁ ∪_{X₀} X₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueData {
    pub presentation: GroupPresentation,
    /// Images of the generators of `X₁`, `X₂`, `X₀` in the pushout group.
    pub incl1: Vec<Word>,
    pub incl2: Vec<Word>,
    pub incl0: Vec<Word>,
    pub map1: CellMap,
    pub map2: CellMap,
}

fn check_presentation(p: &GroupPresentation, incl: &[Word], target: &GroupPresentation, which: &str) -> Result<()> {
    if incl.len() != p.generator_count() {
        return Err(Error::PresentationMismatch(format!(
            "{which}: {} generator images for {} generators",
            incl.len(),
            p.generator_count()
        )));
    }
    if incl.iter().any(|w| w.max_generator().is_some_and(|g| g >= target.generator_count())) {
        return Err(Error::PresentationMismatch(format!("{which}: image uses an undeclared generator")));
    }
    let rw = target.rewriter();
    for r in p.relators() {
        if !rw.is_trivial(&r.substitute(incl))? {
            return Err(Error::PresentationMismatch(format!(
                "{which}: relator {} is not trivial in the pushout",
                p.format_word(r)
            )));
        }
    }
    Ok(())
}

fn check_map(c0: &CellComplex, c: &CellComplex, map: &CellMap, data: &GlueData, incl: &[Word], which: &str) -> Result<()> {
    let dims = c0.all_cells().len();
    if map.images.len() != dims {
        return Err(Error::NotASubcomplex(format!("{which}: map covers {} dimensions, expected {dims}", map.images.len())));
    }
    for d in 0..dims {
        let imgs = &map.images[d];
        if imgs.len() != c0.cell_count(d) {
            return Err(Error::NotASubcomplex(format!("{which}: wrong number of {d}-cell images")));
        }
        for (i, (j, _)) in imgs.iter().enumerate() {
            if *j >= c.cell_count(d) {
                return Err(Error::NotASubcomplex(format!("{which}: {d}-cell image {j} out of range")));
            }
            if imgs[..i].iter().any(|(k, _)| k == j) {
                return Err(Error::NotASubcomplex(format!("{which}: two {d}-cells map to {j}")));
            }
        }
    }
    let rw = data.presentation.rewriter();
    for d in 1..dims {
        for i in 0..c0.cell_count(d) {
            let (ti, wi) = &map.images[d][i];
            for k in 0..c.cell_count(d - 1) {
                let lhs = c
                    .boundary_entry(d, *ti, k)
                    .map_words(|w| w.substitute(incl))
                    .conjugate_by(wi, &Word::identity());
                let mut rhs = GroupRingElement::zero();
                for j in 0..c0.cell_count(d - 1) {
                    let (tj, wj) = &map.images[d - 1][j];
                    if *tj == k {
                        let a = c0.boundary_entry(d, i, j).map_words(|w| w.substitute(&data.incl0));
                        rhs = rhs.add(&a.conjugate_by(&Word::identity(), wj));
                    }
                }
                if !vanishes_in_group(&lhs.sub(&rhs), &data.presentation, &rw)? {
                    return Err(Error::NotASubcomplex(format!(
                        "{which}: boundary of {d}-cell '{}' does not match",
                        c0.cells(d)[i]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Pushout of `c1 ← c0 → c2`: the cells of `c1` followed by the cells of `c2` outside
/// the image of `c0`, with boundaries rewritten into the pushout group.
pub fn glue(c1: &CellComplex, c2: &CellComplex, c0: &CellComplex, data: &GlueData) -> Result<CellComplex> {
    check_presentation(c1.presentation(), &data.incl1, &data.presentation, "first piece")?;
    check_presentation(c2.presentation(), &data.incl2, &data.presentation, "second piece")?;
    check_presentation(c0.presentation(), &data.incl0, &data.presentation, "common piece")?;
    check_map(c0, c1, &data.map1, data, &data.incl1, "first map")?;
    check_map(c0, c2, &data.map2, data, &data.incl2, "second map")?;

    let dims = c1.all_cells().len().max(c2.all_cells().len());
    // where each cell of c2 goes: Ok(new index) or Err((c1 index, word))
    let mut target: Vec<Vec<std::result::Result<usize, (usize, Word)>>> = Vec::new();
    let mut cells: Vec<Vec<String>> = Vec::new();
    for d in 0..dims {
        let mut names = c1.cells(d).to_vec();
        let mut t = Vec::new();
        for (j, name) in c2.cells(d).iter().enumerate() {
            let hit = data
                .map2
                .images
                .get(d)
                .and_then(|imgs| imgs.iter().position(|(tj, _)| *tj == j));
            match hit {
                Some(k) => {
                    let (c1j, w1) = &data.map1.images[d][k];
                    let u = &data.map2.images[d][k].1;
                    t.push(Err((*c1j, u.inverse().mul(w1))));
                }
                None => {
                    let mut n = name.clone();
                    while names.contains(&n) {
                        n.push('\'');
                    }
                    names.push(n);
                    t.push(Ok(names.len() - 1));
                }
            }
        }
        cells.push(names);
        target.push(t);
    }
    let mut boundary = Vec::new();
    for d in 1..dims {
        let ncols = cells[d - 1].len();
        let mut rows = Vec::new();
        for i in 0..c1.cell_count(d) {
            let mut row = vec![GroupRingElement::zero(); ncols];
            for k in 0..c1.cell_count(d - 1) {
                row[k] = c1.boundary_entry(d, i, k).map_words(|w| w.substitute(&data.incl1));
            }
            rows.push(row);
        }
        for i in 0..c2.cell_count(d) {
            if target[d][i].is_err() {
                continue;
            }
            let mut row = vec![GroupRingElement::zero(); ncols];
            for j in 0..c2.cell_count(d - 1) {
                let a = c2.boundary_entry(d, i, j).map_words(|w| w.substitute(&data.incl2));
                match &target[d - 1][j] {
                    Ok(col) => row[*col] = row[*col].add(&a),
                    Err((col, w)) => row[*col] = row[*col].add(&a.conjugate_by(&Word::identity(), w)),
                }
            }
            rows.push(row);
        }
        boundary.push(rows);
    }
    if dims == 0 {
        return CellComplex::new(data.presentation.clone(), vec![], vec![], 0);
    }
    let basepoint = if c1.cell_count(0) > 0 { c1.basepoint() } else { 0 };
    CellComplex::new(data.presentation.clone(), cells, boundary, basepoint)
}

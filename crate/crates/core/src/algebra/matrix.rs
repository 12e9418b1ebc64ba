use std::fmt;
use std::ops::{Index, IndexMut};

use super::field::{FieldElement, FieldTag};
use crate::error::{Error, Result};

/// Dense row-major matrix over [`FieldElement`]. `0×n` and `n×0` shapes are legal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Column scan order used when choosing pivots for image bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotOrder {
    Leftmost,
    Rightmost,
}

#[derive(Clone, Debug)]
pub struct RowReduction {
    pub rref: Matrix,
    pub transform: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![FieldElement::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = FieldElement::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from small integer entries.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| FieldElement::int(x)).collect())
                .collect(),
        )
        .expect("rectangular")
    }

    pub fn from_columns(rows: usize, cols: &[Vec<FieldElement>]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::ShapeMismatch("column length".into()));
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn diagonal(entries: &[FieldElement]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn scalar(x: FieldElement) -> Self {
        Matrix { rows: 1, cols: 1, data: vec![x] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    /// ℚ(t) if any entry is a rational function, ℚ otherwise.
    pub fn tag(&self) -> FieldTag {
        if self.data.iter().any(|x| x.tag() == FieldTag::Qt) {
            FieldTag::Qt
        } else {
            FieldTag::Q
        }
    }

    pub fn row(&self, i: usize) -> Vec<FieldElement> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<FieldElement>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, idx.len());
        for (k, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut m = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] = &m[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn add(&self, o: &Matrix) -> Result<Matrix> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Matrix) -> Result<Matrix> {
        self.zip(o, |a, b| a - b)
    }

    fn zip(&self, o: &Matrix, f: impl Fn(&FieldElement, &FieldElement) -> FieldElement) -> Result<Matrix> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::ShapeMismatch("elementwise operation".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        self.map(|x| x * c)
    }

    pub fn map(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let m = self.mul(&Matrix::from_columns(v.len(), &[v.to_vec()])?)?;
        Ok(m.column(0))
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, o: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + o.rows, self.cols + o.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, o);
        m
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        m[(i * o.rows + k, j * o.cols + l)] = a * &o[(k, l)];
                    }
                }
            }
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        m
    }

    pub fn hstack(&self, o: &Matrix) -> Result<Matrix> {
        if self.rows != o.rows {
            return Err(Error::ShapeMismatch("hstack row counts".into()));
        }
        let mut m = Matrix::zeros(self.rows, self.cols + o.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, o);
        Ok(m)
    }

    pub fn determinant(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = FieldElement::one_of(self.tag());
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(FieldElement::zero_of(self.tag()));
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a[(col, col)].clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] * &inv;
                for c in col..n {
                    let v = &a[(r, c)] - &(&f * &a[(col, c)]);
                    a[(r, c)] = v;
                }
            }
        }
        Ok(det)
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Gauss–Jordan elimination with leftmost-column, topmost-row pivoting.
    /// Returns `transform` with `transform · self = rref`.
    pub fn row_reduce(&self) -> RowReduction {
        let mut a = self.clone();
        let mut t = Matrix::identity(self.rows);
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            t.swap_rows(p, r);
            let inv = a[(r, col)].inv().expect("nonzero pivot");
            for c in 0..self.cols {
                a[(r, c)] = &a[(r, c)] * &inv;
            }
            for c in 0..self.rows {
                t[(r, c)] = &t[(r, c)] * &inv;
            }
            for i in 0..self.rows {
                if i == r || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for c in 0..self.cols {
                    let v = &a[(i, c)] - &(&f * &a[(r, c)]);
                    a[(i, c)] = v;
                }
                for c in 0..self.rows {
                    let v = &t[(i, c)] - &(&f * &t[(r, c)]);
                    t[(i, c)] = v;
                }
            }
            pivots.push(col);
            r += 1;
        }
        RowReduction { rref: a, transform: t, pivots }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().pivots.len()
    }

    /// Columns spanning the kernel, one per free column of the reduced form.
    pub fn kernel_basis(&self) -> Matrix {
        let rr = self.row_reduce();
        let free: Vec<usize> = (0..self.cols).filter(|c| !rr.pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k[(f, j)] = FieldElement::one();
            for (row, &p) in rr.pivots.iter().enumerate() {
                k[(p, j)] = -&rr.rref[(row, f)];
            }
        }
        k
    }

    /// Pivot columns of `self` spanning its image, with the unit-vector preimages.
    pub fn image_basis(&self) -> (Matrix, Matrix) {
        self.image_basis_with(PivotOrder::Leftmost)
    }

    pub fn image_basis_with(&self, order: PivotOrder) -> (Matrix, Matrix) {
        let idx: Vec<usize> = match order {
            PivotOrder::Leftmost => self.row_reduce().pivots,
            PivotOrder::Rightmost => {
                let rev: Vec<usize> = (0..self.cols).rev().collect();
                let mut p: Vec<usize> = self
                    .select_columns(&rev)
                    .row_reduce()
                    .pivots
                    .into_iter()
                    .map(|c| self.cols - 1 - c)
                    .collect();
                p.reverse();
                p
            }
        };
        let mut pre = Matrix::zeros(self.cols, idx.len());
        for (k, &j) in idx.iter().enumerate() {
            pre[(j, k)] = FieldElement::one();
        }
        (self.select_columns(&idx), pre)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let rr = self.row_reduce();
        if rr.pivots.len() < self.rows {
            return Err(Error::Singular);
        }
        Ok(rr.transform)
    }

    /// Solves `self · x = b` for every column of `b`; fails if some column is not in the image.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix> {
        if b.rows != self.rows {
            return Err(Error::ShapeMismatch("solve: right-hand side rows".into()));
        }
        let rr = self.row_reduce();
        let tb = rr.transform.mul(b)?;
        let rank = rr.pivots.len();
        let mut x = Matrix::zeros(self.cols, b.cols);
        for j in 0..b.cols {
            if (rank..self.rows).any(|i| !tb[(i, j)].is_zero()) {
                return Err(Error::Singular);
            }
            for (row, &p) in rr.pivots.iter().enumerate() {
                x[(p, j)] = tb[(row, j)].clone();
            }
        }
        Ok(x)
    }

    /// `self^k` for square matrices.
    pub fn pow(&self, k: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

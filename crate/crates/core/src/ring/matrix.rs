use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

use super::Poly;

/// Element of the free module `A^r`, a column of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyVector {
    nvars: usize,
    entries: Vec<Poly>,
}

impl PolyVector {
    pub fn zero(nvars: usize, len: usize) -> Self {
        PolyVector {
            nvars,
            entries: vec![Poly::zero(nvars); len],
        }
    }

    pub fn unit(nvars: usize, len: usize, i: usize) -> Self {
        let mut v = Self::zero(nvars, len);
        v.entries[i] = Poly::one(nvars);
        v
    }

    pub fn from_entries(nvars: usize, entries: Vec<Poly>) -> Self {
        debug_assert!(entries.iter().all(|p| p.nvars() == nvars));
        PolyVector { nvars, entries }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Poly> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &PolyVector) -> PolyVector {
        debug_assert_eq!(self.len(), other.len());
        PolyVector {
            nvars: self.nvars,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &PolyVector) -> PolyVector {
        debug_assert_eq!(self.len(), other.len());
        PolyVector {
            nvars: self.nvars,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> PolyVector {
        PolyVector {
            nvars: self.nvars,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, p: &Poly) -> PolyVector {
        PolyVector {
            nvars: self.nvars,
            entries: self.entries.iter().map(|a| a * p).collect(),
        }
    }

    /// Concatenation `(self, other)` in `A^{r+s}`.
    pub fn concat(&self, other: &PolyVector) -> PolyVector {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        PolyVector {
            nvars: self.nvars,
            entries,
        }
    }

    pub fn slice(&self, start: usize, end: usize) -> PolyVector {
        PolyVector {
            nvars: self.nvars,
            entries: self.entries[start..end].to_vec(),
        }
    }

    pub fn permuted(&self, order: &[usize]) -> PolyVector {
        PolyVector {
            nvars: self.nvars,
            entries: order.iter().map(|&i| self.entries[i].clone()).collect(),
        }
    }
}

impl Index<usize> for PolyVector {
    type Output = Poly;
    fn index(&self, i: usize) -> &Poly {
        &self.entries[i]
    }
}

impl IndexMut<usize> for PolyVector {
    fn index_mut(&mut self, i: usize) -> &mut Poly {
        &mut self.entries[i]
    }
}

/// Matrix over `A`, acting on column vectors: a map `A^cols -> A^rows`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyMatrix {
    nvars: usize,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            nvars,
            rows,
            cols,
            data: vec![Poly::zero(nvars); rows * cols],
        }
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        let mut m = Self::zero(nvars, n, n);
        for i in 0..n {
            m[(i, i)] = Poly::one(nvars);
        }
        m
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::shape("ragged matrix rows"));
        }
        Ok(PolyMatrix {
            nvars,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a `rows x columns.len()` matrix from its columns.
    pub fn from_columns(nvars: usize, rows: usize, columns: &[PolyVector]) -> Self {
        let mut m = Self::zero(nvars, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for i in 0..rows {
                m[(i, j)] = col[i].clone();
            }
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> PolyVector {
        PolyVector::from_entries(
            self.nvars,
            (0..self.rows).map(|i| self[(i, j)].clone()).collect(),
        )
    }

    pub fn columns(&self) -> Vec<PolyVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn apply(&self, v: &PolyVector) -> PolyVector {
        debug_assert_eq!(v.len(), self.cols, "matrix/vector shape");
        let mut out = PolyVector::zero(self.nvars, self.rows);
        for j in 0..self.cols {
            if v[j].is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = &self[(i, j)];
                if !a.is_zero() {
                    out[i] = &out[i] + &(a * &v[j]);
                }
            }
        }
        out
    }

    pub fn try_apply(&self, v: &PolyVector) -> Result<PolyVector> {
        if v.len() != self.cols {
            return Err(Error::shape(format!(
                "vector of length {} applied to {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok(self.apply(v))
    }

    /// `self * other`.
    pub fn compose(&self, other: &PolyMatrix) -> PolyMatrix {
        debug_assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = PolyMatrix::zero(self.nvars, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn try_compose(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.compose(other))
    }

    fn zip_with(&self, other: &PolyMatrix, f: impl Fn(&Poly, &Poly) -> Poly) -> PolyMatrix {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        PolyMatrix {
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix {
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.nvars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &PolyMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.nvars, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        out
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &PolyMatrix) -> PolyMatrix {
        debug_assert_eq!(self.rows, other.rows);
        let mut out = PolyMatrix::zero(self.nvars, self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &PolyMatrix) -> PolyMatrix {
        debug_assert_eq!(self.cols, other.cols);
        let mut out = PolyMatrix::zero(self.nvars, self.rows + other.rows, self.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, other);
        out
    }

    /// First nonzero entry of `self - other`, for diagnostics.
    pub fn first_difference(&self, other: &PolyMatrix) -> Option<(usize, usize)> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Some((0, 0));
        }
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self[(i, j)] != other[(i, j)])
    }

    /// Submatrix on the given row and column indices, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.nvars, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn block_diagonal(&self, other: &PolyMatrix) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.nvars, self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn scale(&self, p: &Poly) -> PolyMatrix {
        PolyMatrix {
            nvars: self.nvars,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * p).collect(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Poly)> {
        let cols = self.cols;
        self.data
            .iter()
            .enumerate()
            .map(move |(k, p)| ((k / cols.max(1), k % cols.max(1)), p))
    }

    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| !self[(i, j)].is_zero())
    }
}

impl Index<(usize, usize)> for PolyMatrix {
    type Output = Poly;
    fn index(&self, (i, j): (usize, usize)) -> &Poly {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Poly {
        &mut self.data[i * self.cols + j]
    }
}

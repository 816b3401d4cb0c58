use crate::error::{Error, Result};
use crate::ring::{PolyMatrix, PolyVector};

use super::basis::{buchberger_basis, GroebnerBasis, MonomialOrder};

/// Solves `M u = t` over `A` for a fixed column set.
///
/// Keeps a Gröbner basis of the vectors `(col_j, e_j)` in `A^{rows + cols}`.
/// With position over term the top block dominates, so reducing `(t, 0)`
/// leaves `(0, -u)` exactly when `t` is in the column span, and the basis
/// elements with vanishing top block generate the syzygies.
#[derive(Clone, Debug)]
pub struct ColumnSolver {
    nvars: usize,
    rows: usize,
    cols: usize,
    gb: GroebnerBasis,
}

impl ColumnSolver {
    pub fn new(m: &PolyMatrix) -> Result<Self> {
        Self::from_columns(m.nvars(), m.rows(), &m.columns())
    }

    pub fn from_columns(nvars: usize, rows: usize, columns: &[PolyVector]) -> Result<Self> {
        let cols = columns.len();
        let mut gens = Vec::with_capacity(cols);
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows || c.nvars() != nvars {
                return Err(Error::shape(format!(
                    "column {j} has length {}, expected {rows}",
                    c.len()
                )));
            }
            gens.push(c.concat(&PolyVector::unit(nvars, cols, j)));
        }
        let gb = buchberger_basis(&gens, rows + cols, nvars, MonomialOrder)?;
        Ok(ColumnSolver {
            nvars,
            rows,
            cols,
            gb,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn check(&self, t: &PolyVector) -> Result<()> {
        if t.len() != self.rows || t.nvars() != self.nvars {
            return Err(Error::shape(format!(
                "right-hand side of length {}, expected {}",
                t.len(),
                self.rows
            )));
        }
        Ok(())
    }

    /// A witness `u` with `M u = t`, or `None` if `t` is not in the column span.
    pub fn solve(&self, t: &PolyVector) -> Result<Option<PolyVector>> {
        self.check(t)?;
        let aug = t.concat(&PolyVector::zero(self.nvars, self.cols));
        let r = self.gb.reduce(&aug);
        if !r.slice(0, self.rows).is_zero() {
            return Ok(None);
        }
        Ok(Some(r.slice(self.rows, self.rows + self.cols).neg()))
    }

    pub fn contains(&self, t: &PolyVector) -> Result<bool> {
        self.check(t)?;
        let aug = t.concat(&PolyVector::zero(self.nvars, self.cols));
        Ok(self.gb.reduce(&aug).slice(0, self.rows).is_zero())
    }

    /// Remainder of `t` modulo the column span (zero iff `t` is in the span).
    pub fn remainder(&self, t: &PolyVector) -> Result<PolyVector> {
        self.check(t)?;
        let aug = t.concat(&PolyVector::zero(self.nvars, self.cols));
        Ok(self.gb.reduce(&aug).slice(0, self.rows))
    }

    /// Generators of the syzygy module, a Gröbner basis in `A^cols`, unpruned.
    pub fn raw_kernel(&self) -> Vec<PolyVector> {
        self.gb
            .elements()
            .iter()
            .filter(|g| g.slice(0, self.rows).is_zero())
            .map(|g| g.slice(self.rows, self.rows + self.cols))
            .collect()
    }

    /// Generators of `{u : M u = 0}` with redundant members removed.
    pub fn kernel(&self) -> Result<Vec<PolyVector>> {
        prune_generators(self.nvars, self.cols, self.raw_kernel())
    }
}

/// Drops generators that lie in the span of the others, scanning from the last one.
pub fn prune_generators(nvars: usize, rank: usize, gens: Vec<PolyVector>) -> Result<Vec<PolyVector>> {
    let mut keep = gens;
    let mut i = keep.len();
    while i > 0 {
        i -= 1;
        if keep.len() <= 1 {
            break;
        }
        let others: Vec<PolyVector> = keep
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, v)| v.clone())
            .collect();
        let gb = buchberger_basis(&others, rank, nvars, MonomialOrder)?;
        if gb.contains(&keep[i]) {
            keep.remove(i);
        }
    }
    Ok(keep)
}

/// Division-algorithm witness for `M u = t`, or `None` when `t` is outside the column span.
pub fn solve_linear_over_ring(m: &PolyMatrix, t: &PolyVector) -> Result<Option<PolyVector>> {
    if t.len() != m.rows() {
        return Err(Error::shape(format!(
            "matrix has {} rows, right-hand side has length {}",
            m.rows(),
            t.len()
        )));
    }
    ColumnSolver::new(m)?.solve(t)
}

/// Generators of the module of relations among `generators` in `A^rank`.
pub fn syzygy_basis(generators: &[PolyVector], rank: usize, nvars: usize) -> Result<Vec<PolyVector>> {
    ColumnSolver::from_columns(nvars, rank, generators)?.kernel()
}

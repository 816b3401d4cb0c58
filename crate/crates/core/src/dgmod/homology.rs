use std::ops::RangeInclusive;

use num::One;

use crate::error::{Error, Result};
use crate::groebner::ColumnSolver;
use crate::ring::{Poly, PolyMatrix, PolyVector, Rational};

use super::complex::{validate_complex, GradedComplex};

/// A complex homotopy equivalent to the input, obtained by cancelling unit
/// entries of the differentials, with the comparison maps.
#[derive(Clone, Debug)]
pub struct UnitReduction {
    pub reduced: GradedComplex,
    /// `incl[i] : R_i -> C_i`, a chain map.
    pub incl: Vec<PolyMatrix>,
    /// `proj[i] : C_i -> R_i`, a chain map with `proj ∘ incl = id`.
    pub proj: Vec<PolyMatrix>,
    pub cancelled: usize,
}

fn nonzero_count(m: &PolyMatrix, row: Option<usize>, col: Option<usize>) -> usize {
    match (row, col) {
        (Some(r), None) => (0..m.cols()).filter(|&j| !m[(r, j)].is_zero()).count(),
        (None, Some(c)) => (0..m.rows()).filter(|&i| !m[(i, c)].is_zero()).count(),
        _ => 0,
    }
}

/// Finds the unit entry with the smallest row-times-column fill-in.
fn find_pivot(c: &GradedComplex) -> Option<(usize, usize, usize)> {
    let mut best: Option<(usize, (usize, usize, usize))> = None;
    for i in 1..=c.top_degree() {
        let d = c.d(i).expect("stored differential");
        for ((a, b), p) in d.entries() {
            if p.is_constant() {
                let cost = (nonzero_count(d, Some(a), None) - 1) * (nonzero_count(d, None, Some(b)) - 1);
                if best.as_ref().map_or(true, |(bc, _)| cost < *bc) {
                    best = Some((cost, (i, a, b)));
                    if cost == 0 {
                        return Some((i, a, b));
                    }
                }
            }
        }
    }
    best.map(|(_, p)| p)
}

fn without(n: usize, skip: usize) -> Vec<usize> {
    (0..n).filter(|&k| k != skip).collect()
}

/// Gaussian elimination on unit entries: cancels pairs of generators joined
/// by a constant entry until every differential entry is a non-unit.
pub fn reduce_unit_pivots(c: &GradedComplex) -> UnitReduction {
    let nvars = c.nvars();
    let mut cur = c.clone();
    let mut incl: Vec<PolyMatrix> = (0..=c.top_degree())
        .map(|i| PolyMatrix::identity(nvars, c.rank(i)))
        .collect();
    let mut proj = incl.clone();
    let mut cancelled = 0;
    while let Some((i, a, b)) = find_pivot(&cur) {
        cancelled += 1;
        let d = cur.d(i).unwrap().clone();
        let u_inv = Rational::one() / d[(a, b)].as_constant().expect("unit pivot");
        let rows_keep = without(d.rows(), a);
        let cols_keep = without(d.cols(), b);
        let delta = d.select(&[a], &cols_keep);
        let gamma = d.select(&rows_keep, &[b]);
        let eps = d.select(&rows_keep, &cols_keep);
        let new_d = eps.sub(&gamma.compose(&delta).scale(&Poly::constant(nvars, u_inv.clone())));

        // J_i : x -> (b: -u^{-1} delta x, rest: x)
        let mut j = PolyMatrix::zero(nvars, d.cols(), cols_keep.len());
        let coef = delta.scale(&Poly::constant(nvars, -u_inv.clone()));
        for (k, &col) in cols_keep.iter().enumerate() {
            j[(col, k)] = Poly::one(nvars);
            j[(b, k)] = coef[(0, k)].clone();
        }
        incl[i] = incl[i].compose(&j);
        let rows_old: Vec<usize> = (0..incl[i - 1].rows()).collect();
        incl[i - 1] = incl[i - 1].select(&rows_old, &rows_keep);

        let cols_old: Vec<usize> = (0..proj[i].cols()).collect();
        proj[i] = proj[i].select(&cols_keep, &cols_old);
        let pm = &proj[i - 1];
        let all_cols: Vec<usize> = (0..pm.cols()).collect();
        let kept = pm.select(&rows_keep, &all_cols);
        let row_a = pm.select(&[a], &all_cols);
        proj[i - 1] = kept.sub(&gamma.compose(&row_a).scale(&Poly::constant(nvars, u_inv)));

        let mut ranks = cur.ranks().to_vec();
        ranks[i] -= 1;
        ranks[i - 1] -= 1;
        let mut diffs = cur.differentials().to_vec();
        diffs[i - 1] = new_d;
        if i + 1 <= cur.top_degree() {
            let m = &diffs[i];
            let all: Vec<usize> = (0..m.cols()).collect();
            diffs[i] = m.select(&cols_keep, &all);
        }
        if i >= 2 {
            let m = &diffs[i - 2];
            let all: Vec<usize> = (0..m.rows()).collect();
            diffs[i - 2] = m.select(&all, &rows_keep);
        }
        cur = GradedComplex::new(nvars, ranks, diffs).expect("reduction keeps shapes");
    }
    UnitReduction {
        reduced: cur,
        incl,
        proj,
        cancelled,
    }
}

/// Homology verdict in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeHomology {
    pub degree: usize,
    pub exact: bool,
    /// Cycles (in the input's coordinates) that are not boundaries.
    pub witnesses: Vec<PolyVector>,
    /// Set at the top stored degree, where further cells could still change the answer.
    pub provisional: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessCertificate {
    pub degrees: Vec<DegreeHomology>,
}

impl ExactnessCertificate {
    pub fn is_exact(&self) -> bool {
        self.degrees.iter().all(|d| d.exact)
    }

    pub fn first_failure(&self) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|d| !d.exact)
    }
}

/// Generators of `ker d_i` inside `A^{r_i}`; a Gröbner basis, not pruned.
pub(crate) fn cycle_generators(c: &GradedComplex, i: usize) -> Result<Vec<PolyVector>> {
    let n = c.nvars();
    let r = c.rank(i);
    let d = c.differential(i);
    if d.is_zero() {
        return Ok((0..r).map(|k| PolyVector::unit(n, r, k)).collect());
    }
    Ok(ColumnSolver::new(&d)?.raw_kernel())
}

/// Certifies `ker d_i = im d_{i+1}` for each `i` in `degrees`, or returns
/// cycles that are not boundaries. Unit entries are cancelled first, so the
/// Gröbner work happens on the smaller homotopy-equivalent complex.
pub fn exactness_certificate(c: &GradedComplex, degrees: RangeInclusive<usize>) -> Result<ExactnessCertificate> {
    if !validate_complex(c).is_valid() {
        return Err(Error::invalid("exactness requested for a complex with d^2 != 0"));
    }
    let red = reduce_unit_pivots(c);
    let r = &red.reduced;
    let mut out = Vec::new();
    for i in degrees {
        let provisional = i == c.top_degree();
        if r.rank(i) == 0 {
            out.push(DegreeHomology {
                degree: i,
                exact: true,
                witnesses: Vec::new(),
                provisional,
            });
            continue;
        }
        let cycles = cycle_generators(r, i)?;
        let bounds = ColumnSolver::new(&r.differential(i + 1))?;
        let mut witnesses = Vec::new();
        for z in cycles {
            if !bounds.contains(&z)? {
                witnesses.push(red.incl[i].apply(&z));
            }
        }
        out.push(DegreeHomology {
            degree: i,
            exact: witnesses.is_empty(),
            witnesses,
            provisional,
        });
    }
    Ok(ExactnessCertificate { degrees: out })
}

/// Finite presentation of `H_i`: generators are cycles, and column `j` of
/// `relations` writes the `j`-th boundary in terms of those generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub degree: usize,
    pub generators: Vec<PolyVector>,
    pub relations: PolyMatrix,
    pub provisional: bool,
}

impl Presentation {
    /// Index of a generator that is nonzero in homology, if any.
    pub fn nonzero_witness(&self) -> Result<Option<usize>> {
        if self.generators.is_empty() {
            return Ok(None);
        }
        let n = self.relations.nvars();
        let g = self.generators.len();
        let solver = ColumnSolver::new(&self.relations)?;
        for k in 0..g {
            if !solver.contains(&PolyVector::unit(n, g, k))? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    pub fn is_zero_module(&self) -> Result<bool> {
        Ok(self.nonzero_witness()?.is_none())
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_zero()
    }
}

pub fn homology_presentation(c: &GradedComplex, i: usize) -> Result<Presentation> {
    if !validate_complex(c).is_valid() {
        return Err(Error::invalid("homology requested for a complex with d^2 != 0"));
    }
    let n = c.nvars();
    let r = c.rank(i);
    let d = c.differential(i);
    let generators = if d.is_zero() {
        (0..r).map(|k| PolyVector::unit(n, r, k)).collect()
    } else {
        ColumnSolver::new(&d)?.kernel()?
    };
    let next = c.differential(i + 1);
    let mut relations = PolyMatrix::zero(n, generators.len(), next.cols());
    if !generators.is_empty() {
        let solver = ColumnSolver::from_columns(n, r, &generators)?;
        for j in 0..next.cols() {
            let u = solver
                .solve(&next.column(j))?
                .ok_or_else(|| Error::engine(format!("boundary {j} in degree {i} is not a cycle combination")))?;
            for k in 0..generators.len() {
                relations[(k, j)] = u[k].clone();
            }
        }
    }
    Ok(Presentation {
        degree: i,
        generators,
        relations,
        provisional: i == c.top_degree(),
    })
}

use crate::error::{Error, Result};
use crate::groebner::ColumnSolver;
use crate::ring::{PolyMatrix, PolyVector};

use super::complex::ChainMap;

/// Witness that `from - to = d'h + hd` in degrees `0..=bound`.
///
/// `maps[i] : A^{r_i} -> A^{r'_{i+1}}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainHomotopy {
    from: ChainMap,
    to: ChainMap,
    maps: Vec<PolyMatrix>,
}

impl ChainHomotopy {
    pub fn new(from: ChainMap, to: ChainMap, maps: Vec<PolyMatrix>) -> Result<Self> {
        if from.source() != to.source() || from.target() != to.target() {
            return Err(Error::shape("homotopy between maps with different endpoints"));
        }
        let (s, t) = (from.source(), from.target());
        for (i, h) in maps.iter().enumerate() {
            if h.rows() != t.rank(i + 1) || h.cols() != s.rank(i) {
                return Err(Error::shape(format!(
                    "h{i} is {}x{}, expected {}x{}",
                    h.rows(),
                    h.cols(),
                    t.rank(i + 1),
                    s.rank(i)
                )));
            }
        }
        Ok(ChainHomotopy { from, to, maps })
    }

    pub fn from(&self) -> &ChainMap {
        &self.from
    }

    pub fn to(&self) -> &ChainMap {
        &self.to
    }

    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    /// Degrees covered by the witness.
    pub fn bound(&self) -> usize {
        self.maps.len().saturating_sub(1)
    }

    pub fn component(&self, i: usize) -> PolyMatrix {
        match self.maps.get(i) {
            Some(h) => h.clone(),
            None => PolyMatrix::zero(
                self.from.nvars(),
                self.from.target().rank(i + 1),
                self.from.source().rank(i),
            ),
        }
    }

    /// First degree where the homotopy identity fails, re-checked from scratch.
    pub fn defect(&self) -> Option<usize> {
        let s = self.from.source();
        let t = self.from.target();
        for i in 0..self.maps.len() {
            let lhs = self.from.component(i).sub(&self.to.component(i));
            let mut rhs = t.differential(i + 1).compose(&self.maps[i]);
            if i >= 1 {
                rhs = rhs.add(&self.maps[i - 1].compose(&s.differential(i)));
            }
            if lhs != rhs {
                return Some(i);
            }
        }
        None
    }

    pub fn verify(&self) -> bool {
        self.defect().is_none()
    }
}

pub fn zero_homotopy(f: &ChainMap, bound: usize) -> ChainHomotopy {
    let maps = (0..=bound)
        .map(|i| PolyMatrix::zero(f.nvars(), f.target().rank(i + 1), f.source().rank(i)))
        .collect();
    ChainHomotopy {
        from: f.clone(),
        to: f.clone(),
        maps,
    }
}

/// Degree-by-degree solve: `d'_{i+1} h_i = f_i - g_i - h_{i-1} d_i`.
fn solve_greedy(f: &ChainMap, g: &ChainMap, bound: usize) -> Result<Option<Vec<PolyMatrix>>> {
    let s = f.source();
    let t = f.target();
    let n = f.nvars();
    let mut maps: Vec<PolyMatrix> = Vec::new();
    for i in 0..=bound {
        let mut rhs = f.component(i).sub(&g.component(i));
        if i >= 1 {
            rhs = rhs.sub(&maps[i - 1].compose(&s.differential(i)));
        }
        let mut h = PolyMatrix::zero(n, t.rank(i + 1), s.rank(i));
        if !rhs.is_zero() {
            let solver = ColumnSolver::new(&t.differential(i + 1))?;
            for j in 0..rhs.cols() {
                match solver.solve(&rhs.column(j))? {
                    Some(u) => {
                        for k in 0..u.len() {
                            h[(k, j)] = u[k].clone();
                        }
                    }
                    None => return Ok(None),
                }
            }
        }
        maps.push(h);
    }
    Ok(Some(maps))
}

/// All degrees at once as one linear system over `A`; decides existence exactly.
fn solve_global(f: &ChainMap, g: &ChainMap, bound: usize) -> Result<Option<Vec<PolyMatrix>>> {
    let s = f.source();
    let t = f.target();
    let n = f.nvars();
    // unknown offsets: h_i entry (p, q) at var_off[i] + p * r_i + q
    let mut var_off = Vec::new();
    let mut nv = 0;
    for i in 0..=bound {
        var_off.push(nv);
        nv += t.rank(i + 1) * s.rank(i);
    }
    let mut eq_off = Vec::new();
    let mut ne = 0;
    for i in 0..=bound {
        eq_off.push(ne);
        ne += t.rank(i) * s.rank(i);
    }
    let mut m = PolyMatrix::zero(n, ne, nv);
    let mut rhs = PolyVector::zero(n, ne);
    for i in 0..=bound {
        let (ri, ti) = (s.rank(i), t.rank(i));
        let diff = f.component(i).sub(&g.component(i));
        let dt = t.differential(i + 1);
        let ds = s.differential(i);
        for p in 0..ti {
            for q in 0..ri {
                let e = eq_off[i] + p * ri + q;
                rhs[e] = diff[(p, q)].clone();
                // Σ_k d'[p,k] h_i[k,q]
                for k in 0..t.rank(i + 1) {
                    let c = &dt[(p, k)];
                    if !c.is_zero() {
                        let v = var_off[i] + k * ri + q;
                        m[(e, v)] = &m[(e, v)] + c;
                    }
                }
                // Σ_k h_{i-1}[p,k] d[k,q]
                if i >= 1 {
                    let rp = s.rank(i - 1);
                    for k in 0..rp {
                        let c = &ds[(k, q)];
                        if !c.is_zero() {
                            let v = var_off[i - 1] + p * rp + k;
                            m[(e, v)] = &m[(e, v)] + c;
                        }
                    }
                }
            }
        }
    }
    let Some(u) = ColumnSolver::new(&m)?.solve(&rhs)? else {
        return Ok(None);
    };
    let maps = (0..=bound)
        .map(|i| {
            let (rows, cols) = (t.rank(i + 1), s.rank(i));
            let mut h = PolyMatrix::zero(n, rows, cols);
            for p in 0..rows {
                for q in 0..cols {
                    h[(p, q)] = u[var_off[i] + p * cols + q].clone();
                }
            }
            h
        })
        .collect();
    Ok(Some(maps))
}

/// A chain homotopy `f ≃ g` up to degree `bound`, or `None` if none exists.
///
/// Tries the cheap degree-by-degree solve first; when that gets stuck it
/// falls back to the simultaneous system, so `None` is a real verdict.
pub fn solve_left_homotopy(f: &ChainMap, g: &ChainMap, bound: usize) -> Result<Option<ChainHomotopy>> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(Error::shape("maps with different endpoints"));
    }
    let maps = match solve_greedy(f, g, bound)? {
        Some(m) => m,
        None => match solve_global(f, g, bound)? {
            Some(m) => m,
            None => return Ok(None),
        },
    };
    let h = ChainHomotopy::new(f.clone(), g.clone(), maps)?;
    if let Some(i) = h.defect() {
        return Err(Error::engine(format!("solved homotopy fails in degree {i}")));
    }
    Ok(Some(h))
}

/// `h1 : f ≃ g` and `h2 : g ≃ k` give `h1 + h2 : f ≃ k`.
pub fn compose_homotopies(h1: &ChainHomotopy, h2: &ChainHomotopy) -> Result<ChainHomotopy> {
    if h1.to != h2.from {
        return Err(Error::shape("homotopies do not share the middle map"));
    }
    let bound = h1.bound().min(h2.bound());
    let maps = (0..=bound)
        .map(|i| h1.component(i).add(&h2.component(i)))
        .collect();
    ChainHomotopy::new(h1.from.clone(), h2.to.clone(), maps)
}

/// `h : f ≃ g` gives `-h : g ≃ f`.
pub fn reverse_homotopy(h: &ChainHomotopy) -> ChainHomotopy {
    ChainHomotopy {
        from: h.to.clone(),
        to: h.from.clone(),
        maps: h.maps.iter().map(PolyMatrix::neg).collect(),
    }
}

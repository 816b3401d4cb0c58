use crate::dgmod::{solve_left_homotopy, AnchoredComplex, ChainHomotopy, ChainMap};
use crate::error::{Error, Result};
use crate::groebner::ColumnSolver;
use crate::ring::{PolyMatrix, PolyVector};

use super::cells::CellularMap;
use super::classify::{AnchoredMap, Classification};
use super::factor::Factorization;

/// A commutative square
///
/// ```text
///   base --top--> Y
///    |i           |p
///   result -bot-> X
/// ```
#[derive(Clone, Debug)]
pub struct LiftingProblem {
    pub i: CellularMap,
    pub p: AnchoredMap,
    pub top: ChainMap,
    pub bottom: ChainMap,
}

/// Column order used by the per-cell solves. Different orders can give
/// different (homotopic) lifts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveOrder {
    Forward,
    Reversed,
}

fn solve_ordered(m: &PolyMatrix, t: &PolyVector, order: SolveOrder) -> Result<Option<PolyVector>> {
    match order {
        SolveOrder::Forward => ColumnSolver::new(m)?.solve(t),
        SolveOrder::Reversed => {
            let cols: Vec<PolyVector> = m.columns().into_iter().rev().collect();
            let u = ColumnSolver::from_columns(m.nvars(), m.rows(), &cols)?.solve(t)?;
            Ok(u.map(|u| {
                let k = u.len();
                PolyVector::from_entries(u.nvars(), (0..k).map(|j| u[k - 1 - j].clone()).collect())
            }))
        }
    }
}

pub fn solve_lifting(prob: &LiftingProblem, cert: &Classification) -> Result<ChainMap> {
    solve_lifting_with(prob, cert, SolveOrder::Forward)
}

/// A diagonal `h : result -> Y` with `h ∘ i = top` and `p ∘ h = bottom`,
/// built one cell at a time. Needs `p` certified as a trivial fibration.
pub fn solve_lifting_with(prob: &LiftingProblem, cert: &Classification, order: SolveOrder) -> Result<ChainMap> {
    if !cert.trivial_fibration {
        return Err(Error::invalid("lifting needs a trivial-fibration certificate for p"));
    }
    let a = prob.i.base().complex();
    let b = prob.i.result().complex();
    let y = prob.p.source().complex();
    let x = prob.p.target().complex();
    if prob.top.source() != a || prob.top.target() != y {
        return Err(Error::shape("top map does not go from the base to the source of p"));
    }
    if prob.bottom.source() != b || prob.bottom.target() != x {
        return Err(Error::shape("bottom map does not go from the cell complex to the target of p"));
    }
    let left = prob.p.map().compose(&prob.top)?;
    let right = prob.bottom.compose(&prob.i.inclusion())?;
    if left.reframed(a, x)? != right.reframed(a, x)? {
        return Err(Error::invalid("lifting square does not commute"));
    }
    if !prob.i.base().anchors_commute(prob.p.source(), &prob.top)
        || !prob.i.result().anchors_commute(prob.p.target(), &prob.bottom)
    {
        return Err(Error::invalid("square maps do not commute with the anchors"));
    }

    let n = b.nvars();
    let top = b.top_degree();
    let mut h: Vec<PolyMatrix> = (0..=top)
        .map(|i| {
            let mut m = PolyMatrix::zero(n, y.rank(i), b.rank(i));
            m.set_block(0, 0, &prob.top.component(i));
            m
        })
        .collect();
    let gens = prob.i.new_generators();
    for created in &gens {
        for &(d, idx) in created {
            // boundary of the new generator in the complex built so far
            let z = (d > 0).then(|| b.differential(d).column(idx));
            let want = prob.bottom.component(d).column(idx);
            let pd = prob.p.map().component(d);
            let (m, rhs) = match &z {
                None => (pd, want),
                Some(z) => {
                    let hz = h[d - 1].apply(z);
                    (y.differential(d).vstack(&pd), hz.concat(&want))
                }
            };
            let u = solve_ordered(&m, &rhs, order)?.ok_or_else(|| {
                Error::engine(format!(
                    "no lift for the cell generator ({d}, {idx}); contradicts the trivial-fibration certificate"
                ))
            })?;
            for r in 0..u.len() {
                h[d][(r, idx)] = u[r].clone();
            }
        }
    }
    let lift = ChainMap::new(b.clone(), y.clone(), h)?;
    if !lift.is_chain_map() || !prob.i.result().anchors_commute(prob.p.source(), &lift) {
        return Err(Error::engine("assembled lift fails the chain-map check"));
    }
    Ok(lift)
}

/// A lift `QX -> QY` of `f : X -> Y` along two replacements, with a second
/// lift from the other solve order and a homotopy between the two.
#[derive(Clone, Debug)]
pub struct ReplacementLift {
    pub lift: ChainMap,
    pub second: ChainMap,
    pub homotopy: Option<ChainHomotopy>,
}

pub fn lift_between_replacements(qx: &Factorization, qy: &Factorization, f: &AnchoredMap) -> Result<ReplacementLift> {
    if !qx.cellular.is_absolute() {
        return Err(Error::invalid("source replacement is not built from zero"));
    }
    if f.source() != qx.p.target() || f.target() != qy.p.target() {
        return Err(Error::shape("map does not connect the replaced objects"));
    }
    let prob = LiftingProblem {
        i: qx.cellular.clone(),
        p: qy.p.clone(),
        top: ChainMap::zero(qx.cellular.base().complex(), qy.p.source().complex()),
        bottom: f.map().compose(qx.p.map())?,
    };
    let lift = solve_lifting_with(&prob, &qy.certificate, SolveOrder::Forward)?;
    let second = solve_lifting_with(&prob, &qy.certificate, SolveOrder::Reversed)?;
    let bound = qx.certificate.bound.min(qy.certificate.bound);
    let homotopy = solve_left_homotopy(&lift, &second, bound)?;
    Ok(ReplacementLift { lift, second, homotopy })
}

/// Result of checking that `p_* : π^l(A, Y) -> π^l(A, X)` is a bijection on samples.
#[derive(Clone, Debug)]
pub struct PiBijectionReport {
    pub lifts: Vec<ChainMap>,
    /// `p ∘ lift == sample` for every sample.
    pub surjective: bool,
    /// `(i, j, samples homotopic, lifts homotopic)`.
    pub pairs: Vec<(usize, usize, bool, bool)>,
    pub injective: bool,
}

impl PiBijectionReport {
    pub fn holds(&self) -> bool {
        self.surjective && self.injective
    }
}

/// Spot check on sample maps `A -> X` for a cofibrant `A` (built from zero)
/// and a certified trivial fibration `p : Y -> X`.
pub fn pi_l_bijection_check(
    p: &AnchoredMap,
    cert: &Classification,
    a: &CellularMap,
    samples: &[ChainMap],
    bound: usize,
) -> Result<PiBijectionReport> {
    if !a.is_absolute() {
        return Err(Error::invalid("source is not given as a cell complex from zero"));
    }
    let zero = AnchoredComplex::zero(a.result().nvars());
    let mut lifts = Vec::new();
    let mut surjective = true;
    for s in samples {
        let prob = LiftingProblem {
            i: a.clone(),
            p: p.clone(),
            top: ChainMap::zero(zero.complex(), p.source().complex()),
            bottom: s.clone(),
        };
        let l = solve_lifting(&prob, cert)?;
        surjective &= p.map().compose(&l)?.reframed(s.source(), s.target())? == *s;
        lifts.push(l);
    }
    let mut pairs = Vec::new();
    let mut injective = true;
    for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            let hs = solve_left_homotopy(&samples[i], &samples[j], bound)?.is_some();
            let hl = solve_left_homotopy(&lifts[i], &lifts[j], bound)?.is_some();
            // p preserves homotopies, so lifts homotopic forces samples homotopic
            injective &= hs == hl;
            pairs.push((i, j, hs, hl));
        }
    }
    Ok(PiBijectionReport {
        lifts,
        surjective,
        pairs,
        injective,
    })
}

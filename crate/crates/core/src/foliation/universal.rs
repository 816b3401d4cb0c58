use crate::dgmod::{AnchoredComplex, GradedComplex};
use crate::error::{Error, Result};
use crate::modelcat::classify_onto;
use crate::groebner::ColumnSolver;
use crate::linfty::{
    check_residuals, generator_tuples, jacobi_residual, BracketTable, GradedBasis, GradedElement, LInftyAlgebroid,
    ResidualReport,
};
use crate::ring::{lie_bracket, PolyMatrix, PolyVector, VectorField};

use super::involutive::Foliation;
use super::resolution::{anchor_map, Resolution};

/// An `L∞`-algebroid structure on a resolution: `ℓ1 = d`, anchor = `ρ`,
/// higher brackets chosen by deterministic lifts.
#[derive(Clone, Debug)]
pub struct UniversalStructure {
    pub resolution: Resolution,
    pub algebroid: LInftyAlgebroid,
    pub max_arity: usize,
    pub max_degree: usize,
    pub report: ResidualReport,
}

impl UniversalStructure {
    pub fn holds(&self) -> bool {
        self.report.passes() && self.resolution.holds()
    }
}

/// Basis names: the foliation's generator names in degree 0, `s{d}_{k}` above.
pub fn resolution_basis(r: &Resolution, f: &Foliation) -> Result<GradedBasis> {
    let mut gens: Vec<(String, usize)> = f.names().iter().map(|s| (s.clone(), 0)).collect();
    for (d, &rank) in r.ranks().iter().enumerate().skip(1) {
        gens.extend((1..=rank).map(|k| (format!("s{d}_{k}"), d)));
    }
    GradedBasis::new(gens)
}

fn offsets(r: &Resolution) -> Vec<usize> {
    let mut off = vec![0];
    for &k in r.ranks() {
        off.push(off.last().unwrap() + k);
    }
    off
}

/// Coordinates of a homogeneous element of degree `d` in the resolution.
fn to_vector(e: &GradedElement, off: &[usize], d: usize, nvars: usize) -> PolyVector {
    let mut v = PolyVector::zero(nvars, off[d + 1] - off[d]);
    for (g, c) in e.terms() {
        v[g - off[d]] = c.clone();
    }
    v
}

fn from_vector(v: &PolyVector, off: &[usize], d: usize) -> GradedElement {
    GradedElement::from_terms(v.entries().iter().enumerate().map(|(k, c)| (off[d] + k, c.clone())))
}

/// Builds brackets of arity `2..=max_arity` on `r` one generator tuple at a
/// time, in order of arity and then total degree.
///
/// Degree-0 pairs get the lift of the Lie bracket of their anchors through
/// the generator matrix. Every other tuple gets `u` with `d u = -J`, where
/// `J` is its Jacobiator with the tuple's own bracket still zero; `J` is a
/// cycle once the lower identities hold, so exactness of `r` provides `u`.
/// Lifts are Gröbner normal-form witnesses, hence reproducible; any other
/// choice differs by a boundary and gives a homotopic structure.
pub fn build_universal_structure(r: &Resolution, f: &Foliation, max_arity: usize, max_degree: usize) -> Result<UniversalStructure> {
    let n = f.nvars();
    let basis = resolution_basis(r, f)?;
    let off = offsets(r);
    let top = r.ranks().len() - 1;
    let c = r.complex.complex();
    let mut table = BracketTable::new(max_arity.max(1));
    for d in 1..=top {
        let m = c.differential(d);
        for k in 0..c.rank(d) {
            let v = from_vector(&m.column(k), &off, d - 1);
            if !v.is_zero() {
                table.set(&basis, &[off[d] + k], v)?;
            }
        }
    }
    let anchor: Vec<VectorField> = (0..basis.len())
        .map(|g| {
            if g < f.len() {
                f.generators()[g].clone()
            } else {
                VectorField::zero(n)
            }
        })
        .collect();
    let mut l = LInftyAlgebroid::new(n, basis, table, anchor)?;
    let rho = if f.is_empty() {
        None
    } else {
        Some(ColumnSolver::new(&f.matrix())?)
    };
    let dsolvers: Vec<Option<ColumnSolver>> = (0..=top)
        .map(|d| if d == 0 { Ok(None) } else { ColumnSolver::new(&c.differential(d)).map(Some) })
        .collect::<Result<_>>()?;
    // every tuple whose bracket could land in the resolution
    let input_cap = top + max_degree;
    for k in 2..=max_arity {
        let mut tuples = generator_tuples(&l, k, input_cap);
        tuples.sort_by_key(|t| t.iter().map(|&g| l.basis().degree(g)).sum::<usize>());
        for t in tuples {
            let total: usize = t.iter().map(|&g| l.basis().degree(g)).sum();
            let out = total + k - 2;
            if out > top {
                continue;
            }
            let value = if out == 0 {
                let b = lie_bracket(&l.anchor()[t[0]], &l.anchor()[t[1]])?;
                let sol = rho.as_ref().expect("degree-0 pair without generators").solve(b.components())?;
                let sol = sol.ok_or_else(|| Error::engine("bracket of anchors left the foliation"))?;
                from_vector(&sol, &off, 0)
            } else {
                let inputs: Vec<GradedElement> = t.iter().map(|&g| l.generator(g)).collect();
                let jr = jacobi_residual(&l, &inputs)?;
                if jr.is_zero() {
                    continue;
                }
                let rhs = to_vector(&jr.neg(), &off, out - 1, n);
                let u = dsolvers[out].as_ref().unwrap().solve(&rhs)?.ok_or_else(|| {
                    Error::engine(format!(
                        "Jacobi defect of {:?} is not a boundary: {}",
                        t,
                        jr.display_with(l.basis(), &crate::ring::default_variables(n))
                    ))
                })?;
                from_vector(&u, &off, out)
            };
            if !value.is_zero() {
                let basis = l.basis().clone();
                l.brackets_mut().set(&basis, &t, value)?;
            }
        }
    }
    let report = check_residuals(&l, max_arity, max_degree)?;
    Ok(UniversalStructure {
        resolution: r.clone(),
        algebroid: l,
        max_arity,
        max_degree,
        report,
    })
}

/// The anchored complex under `l`: `ℓ1` as differential, generators of each
/// degree in basis order, ranks padded with zeros up to `length`.
pub fn underlying_complex(l: &LInftyAlgebroid, length: usize) -> Result<AnchoredComplex> {
    let n = l.nvars();
    let b = l.basis();
    let top = length.max(if b.is_empty() { 0 } else { b.max_degree() });
    let by_degree: Vec<Vec<usize>> = (0..=top).map(|d| b.in_degree(d)).collect();
    let ranks: Vec<usize> = by_degree.iter().map(Vec::len).collect();
    let mut diffs = Vec::new();
    for d in 1..=top {
        let mut m = PolyMatrix::zero(n, ranks[d - 1], ranks[d]);
        for (k, &g) in by_degree[d].iter().enumerate() {
            let v = l.brackets().get(b, &[g]);
            for (h, c) in v.terms() {
                let row = by_degree[d - 1].iter().position(|&x| x == h).ok_or_else(|| {
                    Error::invalid(format!("[{}] leaves degree {}", b.name(g), d - 1))
                })?;
                m[(row, k)] = c.clone();
            }
        }
        diffs.push(m);
    }
    let mut anchor = PolyMatrix::zero(n, n, ranks[0]);
    for (k, &g) in by_degree[0].iter().enumerate() {
        for (i, c) in l.anchor()[g].components().entries().iter().enumerate() {
            anchor[(i, k)] = c.clone();
        }
    }
    AnchoredComplex::new(GradedComplex::new(n, ranks, diffs)?, anchor)
}

/// Re-checks an `L∞`-algebroid offered as a universal structure over `f`:
/// its underlying complex must resolve `f` up to `length - 1` and every
/// residual within `(max_arity, max_degree)` must vanish.
pub fn verify_universal(
    f: &Foliation,
    l: &LInftyAlgebroid,
    length: usize,
    max_arity: usize,
    max_degree: usize,
) -> Result<UniversalStructure> {
    if l.nvars() != f.nvars() {
        return Err(Error::shape("algebroid over a different ring"));
    }
    let complex = underlying_complex(l, length)?;
    let p = anchor_map(&complex)?;
    let certificate = classify_onto(&p, &f.target(), length.saturating_sub(1))?;
    let resolution = Resolution {
        complex,
        length,
        certificate,
    };
    let report = check_residuals(l, max_arity.min(l.max_arity()), max_degree)?;
    Ok(UniversalStructure {
        resolution,
        algebroid: l.clone(),
        max_arity,
        max_degree,
        report,
    })
}

use crate::dgmod::{mapping_cone, AnchoredComplex, ChainMap};
use crate::error::{Error, Result};
use crate::groebner::ColumnSolver;
use crate::ring::{PolyMatrix, PolyVector};

use super::cells::{CellAttachment, CellularMap};
use super::classify::{classify_onto, AnchoredMap, Classification, Target};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorMode {
    /// Cofibration followed by a trivial fibration (all generating cells).
    CofibrationTrivialFibration,
    /// Trivial cofibration followed by a fibration (only `0 -> D(n)` cells).
    TrivialCofibrationFibration,
}

/// `f = p ∘ i` with `i` a relative cell complex.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub cellular: CellularMap,
    pub p: AnchoredMap,
    pub target: Target,
    pub certificate: Classification,
    pub mode: FactorMode,
    /// Rounds of homology killing that were needed.
    pub rounds: usize,
}

impl Factorization {
    pub fn result(&self) -> &AnchoredComplex {
        self.cellular.result()
    }
}

/// Working state: the current cell complex and the map out of it.
struct Engine {
    cells: CellularMap,
    y: AnchoredComplex,
    p: Vec<PolyMatrix>,
}

impl Engine {
    fn nvars(&self) -> usize {
        self.y.nvars()
    }

    fn component(&self, i: usize) -> PolyMatrix {
        match self.p.get(i) {
            Some(m) => m.clone(),
            None => PolyMatrix::zero(self.nvars(), self.y.complex().rank(i), self.cells.result().complex().rank(i)),
        }
    }

    /// Attaches `a`; each new generator `(degree, _)` is sent to the matching value.
    fn attach(&mut self, a: CellAttachment, values: &[PolyVector]) -> Result<()> {
        self.cells.push(a)?;
        let gens = self.cells.new_generators();
        let created = gens.last().unwrap();
        let n = self.nvars();
        let z = self.cells.result().complex();
        let top = z.top_degree();
        let mut comps = Vec::with_capacity(top + 1);
        for i in 0..=top {
            let old = self.component(i);
            let mut m = PolyMatrix::zero(n, self.y.complex().rank(i), z.rank(i));
            m.set_block(0, 0, &old);
            for (&(d, idx), v) in created.iter().zip(values) {
                if d == i {
                    for r in 0..v.len() {
                        m[(r, idx)] = v[r].clone();
                    }
                }
            }
            comps.push(m);
        }
        self.p = comps;
        Ok(())
    }

    fn chain_map(&self) -> Result<ChainMap> {
        ChainMap::new(
            self.cells.result().complex().clone(),
            self.y.complex().clone(),
            (0..=self.cells.result().complex().top_degree()).map(|i| self.component(i)).collect(),
        )
    }

    fn anchored(&self) -> Result<AnchoredMap> {
        AnchoredMap::new(self.cells.result().clone(), self.y.clone(), self.chain_map()?)
    }
}

/// Drops witnesses that are boundaries modulo the ones kept.
pub(crate) fn prune_witnesses(nvars: usize, rows: usize, boundaries: &PolyMatrix, witnesses: Vec<PolyVector>) -> Result<Vec<PolyVector>> {
    if witnesses.len() <= 1 {
        return Ok(witnesses);
    }
    let mut keep = witnesses;
    let mut i = keep.len();
    while i > 0 {
        i -= 1;
        let mut cols = boundaries.columns();
        cols.extend(keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, w)| w.clone()));
        if ColumnSolver::from_columns(nvars, rows, &cols)?.contains(&keep[i])? {
            keep.remove(i);
        }
    }
    Ok(keep)
}

/// Factors `f : X -> target` through a relative cell complex on `X`.
///
/// First every target generator outside the image gets a cell (`0 -> S(0)`
/// in degree 0, `0 -> D(n)` above). In the cofibration mode, cone homology
/// is then killed degree by degree with `S(k-1) -> D(k)` cells until the
/// cone is exact up to `bound + 1`.
pub fn factor_onto(f: &AnchoredMap, target: &Target, bound: usize, mode: FactorMode) -> Result<Factorization> {
    let y = target.ambient();
    if f.target() != &y {
        return Err(Error::shape("map does not land in the target's ambient complex"));
    }
    let n = y.nvars();
    let mut eng = Engine {
        cells: CellularMap::identity(f.source()),
        y: y.clone(),
        p: f.map().components().to_vec(),
    };
    let yc = y.complex().clone();

    if mode == FactorMode::CofibrationTrivialFibration {
        let targets = target.degree0_targets();
        for t in targets {
            if ColumnSolver::new(&eng.component(0))?.contains(&t)? {
                continue;
            }
            let rho = y.anchor().apply(&t);
            eng.attach(CellAttachment::sphere0_raw(rho), &[t])?;
        }
    }
    for i in 1..=yc.top_degree() {
        for k in 0..yc.rank(i) {
            let t = PolyVector::unit(n, yc.rank(i), k);
            if ColumnSolver::new(&eng.component(i))?.contains(&t)? {
                continue;
            }
            let dt = yc.differential(i).apply(&t);
            eng.attach(CellAttachment::empty_to_disc(i), &[dt, t])?;
        }
    }

    let mut rounds = 0;
    if mode == FactorMode::CofibrationTrivialFibration {
        let max_rounds = 2 * (bound + 3);
        loop {
            let cone = mapping_cone(&eng.chain_map()?);
            let cert = crate::dgmod::exactness_certificate(&cone, target.cone_start()..=bound + 1)?;
            let Some(fail) = cert.first_failure() else { break };
            rounds += 1;
            if rounds > max_rounds {
                return Err(Error::Bound(format!("homology killing did not settle after {max_rounds} rounds")));
            }
            let k = fail.degree;
            if k == 0 {
                return Err(Error::engine("degree-0 cone homology left after surjection"));
            }
            let witnesses = prune_witnesses(n, cone.rank(k), &cone.differential(k + 1), fail.witnesses.clone())?;
            let zc = eng.cells.result().complex().clone();
            let yk = yc.rank(k);
            let pk = eng.component(k);
            let solver = ColumnSolver::new(&pk)?;
            for w in witnesses {
                let ypart = w.slice(0, yk);
                let mut zpart = w.slice(yk, w.len());
                if !ypart.is_zero() {
                    let lift = solver
                        .solve(&ypart)?
                        .ok_or_else(|| Error::engine(format!("map not surjective in degree {k}")))?;
                    zpart = zpart.add(&zc.differential(k).apply(&lift));
                }
                let zero = PolyVector::zero(n, yc.rank(k));
                eng.attach(CellAttachment::sphere_to_disc(k, zpart), &[zero])?;
            }
        }
    }

    let p = eng.anchored()?;
    let certificate = classify_onto(&p, target, bound)?;
    Ok(Factorization {
        cellular: eng.cells,
        p,
        target: target.clone(),
        certificate,
        mode,
        rounds,
    })
}

/// Factorization of a morphism between anchored complexes.
pub fn factor_cof_trivfib(f: &AnchoredMap, bound: usize, mode: FactorMode) -> Result<Factorization> {
    factor_onto(f, &Target::Complex(f.target().clone()), bound, mode)
}

/// Cofibrant replacement `Q -> X` by factoring `0 -> X`.
pub fn cofibrant_replacement(x: &AnchoredComplex, bound: usize) -> Result<Factorization> {
    replace_target(&Target::Complex(x.clone()), bound)
}

/// Cofibrant replacement of a complex or of a foliation `F ⊂ T_A`.
pub fn replace_target(target: &Target, bound: usize) -> Result<Factorization> {
    let f = AnchoredMap::from_zero(&target.ambient());
    factor_onto(&f, target, bound, FactorMode::CofibrationTrivialFibration)
}

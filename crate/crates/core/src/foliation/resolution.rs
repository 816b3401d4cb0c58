use crate::dgmod::{AnchoredComplex, GradedComplex};
use crate::error::Result;
use crate::groebner::{prune_generators, syzygy_basis};
use crate::modelcat::{classify_onto, tangent_complex, AnchoredMap, CellularMap, Classification, FactorMode, Factorization};
use crate::dgmod::ChainMap;
use crate::ring::{PolyMatrix, PolyVector};

use super::involutive::Foliation;

/// A free resolution of a foliation: degree 0 is free on the generators with
/// the generator matrix as anchor, `d_{i+1}` spans the syzygies of `d_i`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub complex: AnchoredComplex,
    pub length: usize,
    /// The anchor as a map onto the foliation, classified up to `length - 1`:
    /// `H_0 = F` and exactness in degrees `1..length`.
    pub certificate: Classification,
}

impl Resolution {
    pub fn ranks(&self) -> &[usize] {
        self.complex.complex().ranks()
    }

    pub fn holds(&self) -> bool {
        self.certificate.weak_equivalence && self.certificate.surjective_in_degree0 && self.certificate.image_contained
    }

    /// The resolution as a cell complex over zero with its map to `T_A`.
    pub fn as_factorization(&self, f: &Foliation) -> Result<Factorization> {
        anchored_factorization(&self.complex, f, self.certificate.bound)
    }
}

/// `x -> T_A` via the anchor, with `x` presented as cells and classified
/// against the foliation.
pub(crate) fn anchored_factorization(x: &AnchoredComplex, f: &Foliation, bound: usize) -> Result<Factorization> {
    let cellular = CellularMap::from_free(x)?;
    let p = anchor_map(cellular.result())?;
    let target = f.target();
    let certificate = classify_onto(&p, &target, bound)?;
    Ok(Factorization {
        cellular,
        p,
        target,
        certificate,
        mode: FactorMode::CofibrationTrivialFibration,
        rounds: 0,
    })
}

pub(crate) fn anchor_map(x: &AnchoredComplex) -> Result<AnchoredMap> {
    let t = tangent_complex(x.nvars());
    let c = x.complex();
    let comps = (0..=c.top_degree())
        .map(|i| {
            if i == 0 {
                x.anchor().clone()
            } else {
                PolyMatrix::zero(x.nvars(), 0, c.rank(i))
            }
        })
        .collect();
    AnchoredMap::new(x.clone(), t.clone(), ChainMap::new(c.clone(), t.complex().clone(), comps)?)
}

/// Iterated syzygies up to degree `length`; ranks past the last nonzero
/// module are kept as zeros so the complex always has top degree `length`.
pub fn free_resolution(f: &Foliation, length: usize) -> Result<Resolution> {
    let n = f.nvars();
    let mut ranks = vec![f.len()];
    let mut diffs: Vec<PolyMatrix> = Vec::new();
    let mut cur = f.matrix();
    for _ in 1..=length {
        let cols = cur.columns();
        let syz = if cols.is_empty() {
            Vec::new()
        } else {
            prune_generators(n, cur.cols(), syzygy_basis(&cols, cur.rows(), n)?)?
        };
        let syz: Vec<PolyVector> = syz.into_iter().filter(|v| !v.is_zero()).collect();
        let d = PolyMatrix::from_columns(n, cur.cols(), &syz);
        ranks.push(syz.len());
        diffs.push(d.clone());
        cur = d;
    }
    let complex = AnchoredComplex::new(GradedComplex::new(n, ranks, diffs)?, f.matrix())?;
    let p = anchor_map(&complex)?;
    let certificate = classify_onto(&p, &f.target(), length.saturating_sub(1))?;
    Ok(Resolution {
        complex,
        length,
        certificate,
    })
}

/// Re-classifies a complex offered as a resolution of `f` of the given length.
pub fn verify_resolution(f: &Foliation, complex: &AnchoredComplex, length: usize) -> Result<Resolution> {
    if complex.nvars() != f.nvars() {
        return Err(crate::Error::Shape("complex over a different ring".into()));
    }
    let p = anchor_map(complex)?;
    let certificate = classify_onto(&p, &f.target(), length.saturating_sub(1))?;
    Ok(Resolution {
        complex: complex.clone(),
        length,
        certificate,
    })
}

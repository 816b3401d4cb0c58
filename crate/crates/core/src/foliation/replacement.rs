use crate::dgmod::{is_quasi_iso, reduce_unit_pivots, solve_left_homotopy, AnchoredComplex, ChainHomotopy, ChainMap, QuasiIsoCertificate};
use crate::error::{Error, Result};
use crate::freealg::{oriented_truncation, FreeLR, OrientedTruncation, Word, WordElement};
use crate::linfty::GradedBasis;
use crate::modelcat::{classify_onto, lift_between_replacements, prune_witnesses, tangent_complex, AnchoredMap, Classification, Factorization};
use crate::ring::{PolyMatrix, VectorField};

use super::involutive::Foliation;
use super::resolution::{anchor_map, anchored_factorization};

/// One free generator of the replacement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LrCell {
    pub name: String,
    pub degree: usize,
    pub weight: usize,
    /// Zero in degree 0.
    pub boundary: WordElement,
    /// Zero above degree 0.
    pub anchor: VectorField,
}

/// A cofibrant replacement of a foliation in `L∞`-algebroids, presented by
/// free cells and certified through its truncated underlying complex.
#[derive(Clone, Debug)]
pub struct LrReplacement {
    pub cells: Vec<LrCell>,
    pub max_weight: usize,
    pub max_degree: usize,
    pub ctx: FreeLR,
    /// Oriented words of weight `<= max_weight` and degree `<= max_degree + 1`.
    pub truncation: OrientedTruncation,
    pub p: AnchoredMap,
    pub certificate: Classification,
    pub rounds: usize,
}

impl LrReplacement {
    pub fn holds(&self) -> bool {
        self.certificate.trivial_fibration && self.certificate.image_contained
    }

    pub fn complex(&self) -> &AnchoredComplex {
        &self.truncation.complex
    }

    pub fn write_cells(&self, vars: &[String]) -> String {
        super::text::write_cells(&self.cells, vars)
    }

    /// The underlying complex with unit pivots cancelled, as cells over zero
    /// with its map to `T_A`; homotopy equivalent to the full truncation.
    pub fn reduced_factorization(&self, f: &Foliation) -> Result<Factorization> {
        let c = self.complex();
        let red = reduce_unit_pivots(c.complex());
        let anchor = if red.reduced.rank(0) == 0 {
            PolyMatrix::zero(c.nvars(), c.nvars(), 0)
        } else {
            c.anchor().compose(&red.incl[0])
        };
        let x = AnchoredComplex::new(red.reduced.clone(), anchor)?;
        anchored_factorization(&x, f, self.max_degree)
    }
}

fn build_ctx(nvars: usize, cells: &[LrCell]) -> Result<FreeLR> {
    let basis = GradedBasis::new(cells.iter().map(|c| (c.name.clone(), c.degree)).collect())?;
    FreeLR::new(
        nvars,
        basis,
        cells.iter().map(|c| c.boundary.clone()).collect(),
        cells.iter().map(|c| c.anchor.clone()).collect(),
    )
}

/// Small-object argument in `L∞`-algebroids over `f`, truncated at bracket
/// weight `w` and degree `d`.
///
/// Starts from one degree-0 cell per generator, then repeatedly finds the
/// lowest degree where the underlying complex of the free algebroid fails to
/// resolve `f`, and attaches a cell along each missing cycle of least weight.
/// Cells of degree `k` are free algebroids on `S(k-1) -> D(k)`.
pub fn cofibrant_replacement_linfty(f: &Foliation, w: usize, d: usize) -> Result<LrReplacement> {
    let n = f.nvars();
    let mut cells: Vec<LrCell> = f
        .names()
        .iter()
        .zip(f.generators())
        .map(|(name, g)| LrCell {
            name: name.clone(),
            degree: 0,
            weight: 0,
            boundary: WordElement::zero(),
            anchor: g.clone(),
        })
        .collect();
    let cap = (d + 2) * (w + 2) + 2;
    for round in 0..=cap {
        let mut r = certify_cells(f, cells.clone(), w, d)?;
        r.rounds = round;
        let Some(fail) = r.certificate.cone.first_failure().cloned() else {
            return Ok(r);
        };
        let k = fail.degree;
        if k == 0 || k > d + 1 {
            return Err(Error::engine(format!("unexpected cone failure in degree {k}")));
        }
        let c = r.truncation.complex.complex();
        let witnesses = prune_witnesses(n, c.rank(k - 1), &c.differential(k), fail.witnesses)?;
        let elems: Vec<WordElement> = witnesses.iter().map(|z| r.truncation.element(k - 1, z)).collect();
        let weights: Vec<usize> = elems.iter().map(|e| e.max_weight(r.ctx.leaf_weights())).collect();
        let least = *weights.iter().min().unwrap();
        let mut count = cells.iter().filter(|c| c.degree == k).count();
        for (e, wt) in elems.into_iter().zip(weights) {
            if wt != least {
                continue;
            }
            count += 1;
            cells.push(LrCell {
                name: format!("c{k}_{count}"),
                degree: k,
                weight: wt,
                boundary: e,
                anchor: VectorField::zero(n),
            });
        }
    }
    Err(Error::Bound(format!(
        "no replacement within {cap} rounds at weight {w}, degree {d}"
    )))
}

/// Rebuilds the free algebroid on `cells` and classifies its truncation
/// against `f`; `rounds` is left at 0.
pub fn certify_cells(f: &Foliation, cells: Vec<LrCell>, w: usize, d: usize) -> Result<LrReplacement> {
    if cells.iter().any(|c| c.anchor.nvars() != f.nvars()) {
        return Err(Error::shape("cell anchors over a different ring"));
    }
    let ctx = build_ctx(f.nvars(), &cells)?;
    let truncation = oriented_truncation(&ctx, w, d + 1)?;
    let p = anchor_map(&truncation.complex)?;
    let certificate = classify_onto(&p, &f.target(), d)?;
    Ok(LrReplacement {
        cells,
        max_weight: w,
        max_degree: d,
        ctx,
        truncation,
        p,
        certificate,
        rounds: 0,
    })
}

/// Lifts in both directions between two replacements of the same foliation,
/// with every identity re-verified.
#[derive(Clone, Debug)]
pub struct ReplacementComparison {
    pub bound: usize,
    pub phi: ChainMap,
    pub phi_second: ChainMap,
    pub psi: ChainMap,
    pub phi_quasi_iso: QuasiIsoCertificate,
    pub psi_quasi_iso: QuasiIsoCertificate,
    /// `ψ ∘ φ ≃ id`.
    pub round_trip_1: Option<ChainHomotopy>,
    /// `φ ∘ ψ ≃ id`.
    pub round_trip_2: Option<ChainHomotopy>,
    /// `φ ≃ φ'`.
    pub lifts_agree: Option<ChainHomotopy>,
}

impl ReplacementComparison {
    pub fn holds(&self) -> bool {
        let ok = |h: &Option<ChainHomotopy>| h.as_ref().is_some_and(ChainHomotopy::verify);
        self.phi.is_chain_map()
            && self.psi.is_chain_map()
            && self.phi_second.is_chain_map()
            && self.phi_quasi_iso.holds
            && self.psi_quasi_iso.holds
            && ok(&self.round_trip_1)
            && ok(&self.round_trip_2)
            && ok(&self.lifts_agree)
    }
}

/// Compares two replacements `Q1 -> F`, `Q2 -> F` within the smaller of
/// their bounds.
pub fn compare_replacements(q1: &Factorization, q2: &Factorization) -> Result<ReplacementComparison> {
    if q1.p.target() != q2.p.target() {
        return Err(Error::shape("replacements over different ambient complexes"));
    }
    if !q1.certificate.trivial_fibration || !q2.certificate.trivial_fibration {
        return Err(Error::invalid("both replacements need trivial-fibration certificates"));
    }
    let id = AnchoredMap::identity(&tangent_complex(q1.p.target().nvars()));
    let bound = q1.certificate.bound.min(q2.certificate.bound);
    let a = lift_between_replacements(q1, q2, &id)?;
    let b = lift_between_replacements(q2, q1, &id)?;
    let phi = a.lift;
    let psi = b.lift;
    let x1 = q1.result().complex();
    let x2 = q2.result().complex();
    let round_trip_1 = solve_left_homotopy(&psi.compose(&phi)?.reframed(x1, x1)?, &ChainMap::identity(x1), bound)?;
    let round_trip_2 = solve_left_homotopy(&phi.compose(&psi)?.reframed(x2, x2)?, &ChainMap::identity(x2), bound)?;
    Ok(ReplacementComparison {
        bound,
        phi_quasi_iso: is_quasi_iso(&phi, bound)?,
        psi_quasi_iso: is_quasi_iso(&psi, bound)?,
        phi_second: a.second,
        lifts_agree: a.homotopy,
        phi,
        psi,
        round_trip_1,
        round_trip_2,
    })
}

/// Words of the replacement's truncation in degree `d`, for reports.
pub fn truncation_words(r: &LrReplacement, d: usize) -> Vec<&Word> {
    (0..r.truncation.by_degree.get(d).map_or(0, Vec::len))
        .map(|k| r.truncation.word(d, k))
        .collect()
}

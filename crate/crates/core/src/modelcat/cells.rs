use std::fmt;

use crate::dgmod::{AnchoredComplex, ChainMap, GradedComplex};
use crate::error::{Error, Result};
use crate::ring::{PolyMatrix, PolyVector, VectorField};

use super::AnchoredMap;

/// Generating (trivial) cofibrations of `Mod/T_A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratingCell {
    /// `0 -> S(0)`; the new generator gets a freely chosen anchor.
    Sphere0,
    /// `S(n-1) -> D(n)`, `n >= 1`, attached along a cycle.
    SphereToDisc(usize),
    /// `0 -> D(n)`, `n >= 1`; acyclic, so a trivial cofibration.
    EmptyToDisc(usize),
}

impl GeneratingCell {
    pub fn degree(&self) -> usize {
        match *self {
            GeneratingCell::Sphere0 => 0,
            GeneratingCell::SphereToDisc(n) | GeneratingCell::EmptyToDisc(n) => n,
        }
    }
}

impl fmt::Display for GeneratingCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratingCell::Sphere0 => write!(f, "S0"),
            GeneratingCell::SphereToDisc(n) => write!(f, "S{}->D{}", n - 1, n),
            GeneratingCell::EmptyToDisc(n) => write!(f, "0->D{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellAttachment {
    pub cell: GeneratingCell,
    /// Attaching cycle in degree `n - 1` for `SphereToDisc(n)`.
    pub boundary: Option<PolyVector>,
    /// Anchor of the new generator for `Sphere0`.
    pub anchor: Option<PolyVector>,
}

impl CellAttachment {
    pub fn sphere0(anchor: &VectorField) -> Self {
        CellAttachment {
            cell: GeneratingCell::Sphere0,
            boundary: None,
            anchor: Some(anchor.components().clone()),
        }
    }

    pub fn sphere0_raw(anchor: PolyVector) -> Self {
        CellAttachment {
            cell: GeneratingCell::Sphere0,
            boundary: None,
            anchor: Some(anchor),
        }
    }

    pub fn sphere_to_disc(n: usize, cycle: PolyVector) -> Self {
        assert!(n >= 1);
        CellAttachment {
            cell: GeneratingCell::SphereToDisc(n),
            boundary: Some(cycle),
            anchor: None,
        }
    }

    pub fn empty_to_disc(n: usize) -> Self {
        assert!(n >= 1);
        CellAttachment {
            cell: GeneratingCell::EmptyToDisc(n),
            boundary: None,
            anchor: None,
        }
    }
}

/// Appends one basis element in `degree` with the given boundary and anchor.
fn append_generator(
    x: &AnchoredComplex,
    degree: usize,
    boundary: Option<&PolyVector>,
    anchor: Option<&PolyVector>,
) -> AnchoredComplex {
    let c = x.complex().extended_to(degree);
    let n = c.nvars();
    let mut ranks = c.ranks().to_vec();
    ranks[degree] += 1;
    let mut diffs: Vec<PolyMatrix> = c.differentials().to_vec();
    if degree >= 1 {
        let col = match boundary {
            Some(z) => PolyMatrix::from_columns(n, z.len(), std::slice::from_ref(z)),
            None => PolyMatrix::zero(n, ranks[degree - 1], 1),
        };
        diffs[degree - 1] = diffs[degree - 1].hstack(&col);
    }
    if degree + 1 <= c.top_degree() {
        let cols = diffs[degree].cols();
        diffs[degree] = diffs[degree].vstack(&PolyMatrix::zero(n, 1, cols));
    }
    let mut rho = x.anchor().clone();
    if degree == 0 {
        let col = match anchor {
            Some(v) => PolyMatrix::from_columns(n, n, std::slice::from_ref(v)),
            None => PolyMatrix::zero(n, n, 1),
        };
        rho = rho.hstack(&col);
    }
    let cx = GradedComplex::new(n, ranks, diffs).expect("append keeps shapes");
    AnchoredComplex::from_parts_unchecked(cx, rho)
}

/// Checks the attaching data of `a` against `x`.
pub fn check_attachment(x: &AnchoredComplex, a: &CellAttachment) -> Result<()> {
    let n = x.nvars();
    match a.cell {
        GeneratingCell::Sphere0 => match &a.anchor {
            Some(v) if v.len() == n => Ok(()),
            Some(_) => Err(Error::shape("sphere anchor has the wrong length")),
            None => Err(Error::invalid("sphere cell without an anchor value")),
        },
        GeneratingCell::EmptyToDisc(k) | GeneratingCell::SphereToDisc(k) if k == 0 => {
            Err(Error::invalid("disc cells start in degree 1"))
        }
        GeneratingCell::EmptyToDisc(_) => Ok(()),
        GeneratingCell::SphereToDisc(k) => {
            let z = a
                .boundary
                .as_ref()
                .ok_or_else(|| Error::invalid("disc cell without an attaching cycle"))?;
            let c = x.complex();
            if z.len() != c.rank(k - 1) {
                return Err(Error::shape(format!(
                    "attaching cycle has length {}, degree {} has rank {}",
                    z.len(),
                    k - 1,
                    c.rank(k - 1)
                )));
            }
            let dz = c.differential(k - 1).apply(z);
            if !dz.is_zero() {
                return Err(Error::invalid(format!(
                    "attaching element is not a cycle: d{} z = {:?}",
                    k - 1,
                    dz.entries()
                )));
            }
            if k == 1 {
                let rz = x.anchor().apply(z);
                if !rz.is_zero() {
                    return Err(Error::invalid(format!(
                        "degree-1 cell needs an anchor-free boundary, rho(z) = {:?}",
                        rz.entries()
                    )));
                }
            }
            Ok(())
        }
    }
}

/// Pushout of a generating cell along its attaching map. New generators are
/// appended after the existing ones in each degree, so the inclusion is `[I; 0]`.
pub fn attach_cell_pushout(x: &AnchoredComplex, a: &CellAttachment) -> Result<(AnchoredComplex, ChainMap)> {
    check_attachment(x, a)?;
    let out = match a.cell {
        GeneratingCell::Sphere0 => append_generator(x, 0, None, a.anchor.as_ref()),
        GeneratingCell::SphereToDisc(k) => append_generator(x, k, a.boundary.as_ref(), None),
        GeneratingCell::EmptyToDisc(k) => {
            let y = append_generator(x, k - 1, None, None);
            let r = y.complex().rank(k - 1);
            let e = PolyVector::unit(x.nvars(), r, r - 1);
            append_generator(&y, k, Some(&e), None)
        }
    };
    let incl = inclusion(x.complex(), out.complex());
    Ok((out, incl))
}

/// `[I; 0]` in each degree.
pub(crate) fn inclusion(base: &GradedComplex, result: &GradedComplex) -> ChainMap {
    let n = base.nvars();
    let top = result.top_degree().max(base.top_degree());
    let comps = (0..=top)
        .map(|i| {
            let mut m = PolyMatrix::zero(n, result.rank(i), base.rank(i));
            m.set_block(0, 0, &PolyMatrix::identity(n, base.rank(i)));
            m
        })
        .collect();
    ChainMap::new(base.clone(), result.clone(), comps).expect("inclusion shapes")
}

/// A relative cell complex: `base` with `attachments` replayed in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularMap {
    base: AnchoredComplex,
    attachments: Vec<CellAttachment>,
    result: AnchoredComplex,
}

impl CellularMap {
    pub fn identity(base: &AnchoredComplex) -> Self {
        CellularMap {
            base: base.clone(),
            attachments: Vec::new(),
            result: base.clone(),
        }
    }

    pub fn build(base: &AnchoredComplex, attachments: Vec<CellAttachment>) -> Result<Self> {
        let mut cur = base.clone();
        for a in &attachments {
            cur = attach_cell_pushout(&cur, a)?.0;
        }
        Ok(CellularMap {
            base: base.clone(),
            attachments,
            result: cur,
        })
    }

    /// Presents a bounded free anchored complex as cells attached to zero,
    /// degree by degree: `0 -> S(0)` with the anchor in degree 0 and
    /// `S(k-1) -> D(k)` along the boundary above. The result agrees with `x`
    /// up to trailing zero ranks.
    pub fn from_free(x: &AnchoredComplex) -> Result<Self> {
        let c = x.complex();
        let mut cells = Vec::new();
        for k in 0..c.rank(0) {
            cells.push(CellAttachment::sphere0_raw(x.anchor().column(k)));
        }
        for d in 1..=c.top_degree() {
            let m = c.differential(d);
            for k in 0..c.rank(d) {
                cells.push(CellAttachment::sphere_to_disc(d, m.column(k)));
            }
        }
        CellularMap::build(&AnchoredComplex::zero(x.nvars()), cells)
    }

    pub(crate) fn push(&mut self, a: CellAttachment) -> Result<()> {
        self.result = attach_cell_pushout(&self.result, &a)?.0;
        self.attachments.push(a);
        Ok(())
    }

    pub fn base(&self) -> &AnchoredComplex {
        &self.base
    }

    pub fn result(&self) -> &AnchoredComplex {
        &self.result
    }

    pub fn attachments(&self) -> &[CellAttachment] {
        &self.attachments
    }

    pub fn inclusion(&self) -> ChainMap {
        inclusion(self.base.complex(), self.result.complex())
    }

    /// Whether the base is the zero object, i.e. the result is cofibrant.
    pub fn is_absolute(&self) -> bool {
        self.base.complex().is_zero()
    }

    /// Positions `(degree, index)` of the generators each attachment created.
    pub fn new_generators(&self) -> Vec<Vec<(usize, usize)>> {
        let mut ranks: Vec<usize> = self.base.complex().ranks().to_vec();
        let mut bump = |d: usize| {
            if ranks.len() <= d {
                ranks.resize(d + 1, 0);
            }
            ranks[d] += 1;
            (d, ranks[d] - 1)
        };
        self.attachments
            .iter()
            .map(|a| match a.cell {
                GeneratingCell::Sphere0 => vec![bump(0)],
                GeneratingCell::SphereToDisc(k) => vec![bump(k)],
                GeneratingCell::EmptyToDisc(k) => {
                    let lo = bump(k - 1);
                    vec![lo, bump(k)]
                }
            })
            .collect()
    }

    /// Replays the log from the base and compares; also re-checks `d^2 = 0`
    /// and the anchor condition on the result.
    pub fn verify(&self) -> bool {
        match CellularMap::build(&self.base, self.attachments.clone()) {
            Ok(c) => {
                c.result == self.result
                    && crate::dgmod::validate_complex(self.result.complex()).is_valid()
                    && self.result.anchor_defect().is_none()
            }
            Err(_) => false,
        }
    }

    /// Attachment log, one line per cell.
    pub fn write_log(&self, names: &[String]) -> String {
        let mut out = String::new();
        for a in &self.attachments {
            match a.cell {
                GeneratingCell::Sphere0 => {
                    let v = VectorField::new(a.anchor.clone().unwrap()).expect("anchor length");
                    out.push_str(&format!("cell S0 anchor = {}\n", v.display_with(names)));
                }
                GeneratingCell::SphereToDisc(k) => {
                    let z = a.boundary.as_ref().unwrap();
                    let parts: Vec<String> = z
                        .entries()
                        .iter()
                        .map(|p| p.display_with(names).to_string())
                        .collect();
                    out.push_str(&format!("cell D{k} boundary = [{}]\n", parts.join(", ")));
                }
                GeneratingCell::EmptyToDisc(k) => out.push_str(&format!("cell 0->D{k}\n")),
            }
        }
        out
    }

    /// Pushout of `self` along `g : base -> C`: the same cells attached to `C`
    /// through `g`, with the induced map between the results.
    pub fn pushout_along(&self, g: &AnchoredMap) -> Result<(CellularMap, ChainMap)> {
        if g.source() != &self.base {
            return Err(Error::shape("pushout along a map out of a different base"));
        }
        let n = self.base.nvars();
        let mut src = self.base.clone();
        let mut tgt = CellularMap::identity(g.target());
        let mut comps: Vec<PolyMatrix> = g.map().components().to_vec();
        for a in &self.attachments {
            let moved = match a.cell {
                GeneratingCell::SphereToDisc(k) => {
                    let f = comps.get(k - 1).cloned().unwrap_or_else(|| {
                        PolyMatrix::zero(n, tgt.result.complex().rank(k - 1), src.complex().rank(k - 1))
                    });
                    CellAttachment::sphere_to_disc(k, f.apply(a.boundary.as_ref().unwrap()))
                }
                _ => a.clone(),
            };
            src = attach_cell_pushout(&src, a)?.0;
            tgt.push(moved)?;
            let top = src.complex().top_degree().max(tgt.result.complex().top_degree());
            let mut next = Vec::with_capacity(top + 1);
            for i in 0..=top {
                let (r, c) = (tgt.result.complex().rank(i), src.complex().rank(i));
                let mut m = PolyMatrix::zero(n, r, c);
                if let Some(old) = comps.get(i) {
                    m.set_block(0, 0, old);
                }
                // each new source generator maps to the matching new target generator
                let (old_r, old_c) = comps.get(i).map_or((0, 0), |o| (o.rows(), o.cols()));
                for k in 0..(c - old_c) {
                    m[(old_r + k, old_c + k)] = crate::ring::Poly::one(n);
                }
                next.push(m);
            }
            comps = next;
        }
        let map = ChainMap::new(src.complex().clone(), tgt.result.complex().clone(), comps)?;
        Ok((tgt, map))
    }
}

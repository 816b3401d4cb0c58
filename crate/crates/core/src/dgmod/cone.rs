use crate::error::{Error, Result};
use crate::ring::PolyMatrix;

use super::complex::{ChainMap, GradedComplex};
use super::homology::{exactness_certificate, ExactnessCertificate};

/// `cone_n = Y_n ⊕ X_{n-1}` with `d(y, x) = (dy + f(x), -dx)`.
pub fn mapping_cone(f: &ChainMap) -> GradedComplex {
    let x = f.source();
    let y = f.target();
    let n = f.nvars();
    let top = y.top_degree().max(x.top_degree() + 1);
    let ranks: Vec<usize> = (0..=top)
        .map(|i| y.rank(i) + if i >= 1 { x.rank(i - 1) } else { 0 })
        .collect();
    let mut diffs = Vec::with_capacity(top);
    for i in 1..=top {
        let mut d = PolyMatrix::zero(n, ranks[i - 1], ranks[i]);
        let (ry_hi, ry_lo) = (y.rank(i), y.rank(i - 1));
        d.set_block(0, 0, &y.differential(i));
        d.set_block(0, ry_hi, &f.component(i - 1));
        if i >= 2 {
            d.set_block(ry_lo, ry_hi, &x.differential(i - 1).neg());
        }
        diffs.push(d);
    }
    GradedComplex::new(n, ranks, diffs).expect("cone shapes")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsoCertificate {
    pub holds: bool,
    pub bound: usize,
    /// Exactness of the mapping cone in degrees `0..=bound + 1`.
    pub cone: ExactnessCertificate,
}

/// Decides whether `H_i(f)` is an isomorphism for `i <= bound`.
///
/// This holds iff the cone is exact in degrees `0..=bound` and the
/// connecting map out of `H_{bound+1}` vanishes; exactness of the cone at
/// `bound + 1` is required here, which is the sufficient form used
/// throughout (replacements are built until it passes).
pub fn is_quasi_iso(f: &ChainMap, bound: usize) -> Result<QuasiIsoCertificate> {
    if let Err((i, r, c)) = f.check() {
        return Err(Error::invalid(format!(
            "not a chain map: degree {i} entry ({r}, {c})"
        )));
    }
    let cone = exactness_certificate(&mapping_cone(f), 0..=bound + 1)?;
    Ok(QuasiIsoCertificate {
        holds: cone.is_exact(),
        bound,
        cone,
    })
}

/// `Cyl(X)` with its two end inclusions and the collapse.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub cyl: GradedComplex,
    pub i0: ChainMap,
    pub i1: ChainMap,
    pub proj: ChainMap,
}

/// `Cyl_n = X_n ⊕ X_{n-1} ⊕ X_n`, `d(x, s, y) = (dx + s, -ds, dy - s)`.
pub fn cylinder_object(x: &GradedComplex) -> Cylinder {
    let n = x.nvars();
    let top = if x.is_zero() { 0 } else { x.top_degree() + 1 };
    let r = |i: usize| x.rank(i);
    let lo = |i: usize| if i >= 1 { x.rank(i - 1) } else { 0 };
    let ranks: Vec<usize> = (0..=top).map(|i| 2 * r(i) + lo(i)).collect();
    let mut diffs = Vec::new();
    for i in 1..=top {
        let mut d = PolyMatrix::zero(n, ranks[i - 1], ranks[i]);
        let dx = x.differential(i);
        let id = PolyMatrix::identity(n, r(i - 1));
        // rows: X_{i-1} | X_{i-2} | X_{i-1}; cols: X_i | X_{i-1} | X_i
        let (c_s, c_y) = (r(i), r(i) + lo(i));
        let (r_s, r_y) = (r(i - 1), r(i - 1) + lo(i - 1));
        d.set_block(0, 0, &dx);
        d.set_block(0, c_s, &id);
        d.set_block(r_s, c_s, &x.differential(i - 1).neg());
        d.set_block(r_y, c_s, &id.neg());
        d.set_block(r_y, c_y, &dx);
        diffs.push(d);
    }
    let cyl = GradedComplex::new(n, ranks.clone(), diffs).expect("cylinder shapes");
    let mut i0 = Vec::new();
    let mut i1 = Vec::new();
    let mut proj = Vec::new();
    for i in 0..=top {
        let mut a = PolyMatrix::zero(n, ranks[i], r(i));
        a.set_block(0, 0, &PolyMatrix::identity(n, r(i)));
        i0.push(a);
        let mut b = PolyMatrix::zero(n, ranks[i], r(i));
        b.set_block(r(i) + lo(i), 0, &PolyMatrix::identity(n, r(i)));
        i1.push(b);
        let mut p = PolyMatrix::zero(n, r(i), ranks[i]);
        p.set_block(0, 0, &PolyMatrix::identity(n, r(i)));
        p.set_block(0, r(i) + lo(i), &PolyMatrix::identity(n, r(i)));
        proj.push(p);
    }
    Cylinder {
        i0: ChainMap::new(x.clone(), cyl.clone(), i0).expect("i0"),
        i1: ChainMap::new(x.clone(), cyl.clone(), i1).expect("i1"),
        proj: ChainMap::new(cyl.clone(), x.clone(), proj).expect("proj"),
        cyl,
    }
}

/// `Path(X)` with the constant-path inclusion and the two end projections.
#[derive(Clone, Debug)]
pub struct PathObject {
    pub path: GradedComplex,
    pub incl: ChainMap,
    pub p0: ChainMap,
    pub p1: ChainMap,
}

/// `Path_n = X_n ⊕ X_n ⊕ X_{n+1}` with `d(x, y, s) = (dx, dy, x - y - ds)` for
/// `n >= 1`. In degree 0 the differential would leave the non-negative range,
/// so `Path_0` is the submodule `{x = y + ds}`, free on `(y, s) ∈ X_0 ⊕ X_1`.
pub fn path_object(x: &GradedComplex) -> PathObject {
    let n = x.nvars();
    let top = x.top_degree();
    let r = |i: usize| x.rank(i);
    let ranks: Vec<usize> = (0..=top)
        .map(|i| if i == 0 { r(0) + r(1) } else { 2 * r(i) + r(i + 1) })
        .collect();
    let mut diffs = Vec::new();
    for i in 1..=top {
        let mut d = PolyMatrix::zero(n, ranks[i - 1], ranks[i]);
        let dx = x.differential(i);
        let (c_y, c_s) = (r(i), 2 * r(i));
        if i == 1 {
            // (x, y, s) -> (y0, s0) = (dy, x - y - ds)
            d.set_block(0, c_y, &dx);
            d.set_block(r(0), 0, &PolyMatrix::identity(n, r(1)));
            d.set_block(r(0), c_y, &PolyMatrix::identity(n, r(1)).neg());
            d.set_block(r(0), c_s, &x.differential(2).neg());
        } else {
            let (r_y, r_s) = (r(i - 1), 2 * r(i - 1));
            d.set_block(0, 0, &dx);
            d.set_block(r_y, c_y, &dx);
            d.set_block(r_s, 0, &PolyMatrix::identity(n, r(i)));
            d.set_block(r_s, c_y, &PolyMatrix::identity(n, r(i)).neg());
            d.set_block(r_s, c_s, &x.differential(i + 1).neg());
        }
        diffs.push(d);
    }
    let path = GradedComplex::new(n, ranks.clone(), diffs).expect("path shapes");
    let mut incl = Vec::new();
    let mut p0 = Vec::new();
    let mut p1 = Vec::new();
    for i in 0..=top {
        let id = PolyMatrix::identity(n, r(i));
        let mut a = PolyMatrix::zero(n, ranks[i], r(i));
        let mut q0 = PolyMatrix::zero(n, r(i), ranks[i]);
        let mut q1 = PolyMatrix::zero(n, r(i), ranks[i]);
        if i == 0 {
            a.set_block(0, 0, &id);
            q0.set_block(0, 0, &id);
            q0.set_block(0, r(0), &x.differential(1));
            q1.set_block(0, 0, &id);
        } else {
            a.set_block(0, 0, &id);
            a.set_block(r(i), 0, &id);
            q0.set_block(0, 0, &id);
            q1.set_block(0, r(i), &id);
        }
        incl.push(a);
        p0.push(q0);
        p1.push(q1);
    }
    PathObject {
        incl: ChainMap::new(x.clone(), path.clone(), incl).expect("incl"),
        p0: ChainMap::new(path.clone(), x.clone(), p0).expect("p0"),
        p1: ChainMap::new(path.clone(), x.clone(), p1).expect("p1"),
        path,
    }
}

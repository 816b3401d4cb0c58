use crate::error::{Error, Result};

use super::{Poly, PolyVector};

/// Polynomial vector field `Σ fᵢ ∂/∂xᵢ`, an element of the derivation module `T_A`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VectorField {
    components: PolyVector,
}

impl VectorField {
    pub fn new(components: PolyVector) -> Result<Self> {
        if components.len() != components.nvars() {
            return Err(Error::shape(format!(
                "vector field needs {} components, got {}",
                components.nvars(),
                components.len()
            )));
        }
        Ok(VectorField { components })
    }

    pub fn zero(nvars: usize) -> Self {
        VectorField {
            components: PolyVector::zero(nvars, nvars),
        }
    }

    /// The coordinate field `∂/∂xᵢ`.
    pub fn coordinate(nvars: usize, i: usize) -> Self {
        VectorField {
            components: PolyVector::unit(nvars, nvars, i),
        }
    }

    pub fn nvars(&self) -> usize {
        self.components.nvars()
    }

    pub fn components(&self) -> &PolyVector {
        &self.components
    }

    pub fn into_components(self) -> PolyVector {
        self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_zero()
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField {
            components: self.components.add(&other.components),
        }
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        VectorField {
            components: self.components.sub(&other.components),
        }
    }

    pub fn scale(&self, f: &Poly) -> VectorField {
        VectorField {
            components: self.components.scale(f),
        }
    }

    /// Formats as `f1*dx1 + ...` using the given variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.components.entries().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = derivation_name(names, i);
            let body = c.display_with(names).to_string();
            if c.terms().len() == 1 {
                if c.is_one() {
                    parts.push(d);
                } else if body == "-1" {
                    parts.push(format!("-{d}"));
                } else {
                    parts.push(format!("{body}*{d}"));
                }
            } else {
                parts.push(format!("({body})*{d}"));
            }
        }
        if parts.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, p) in parts.into_iter().enumerate() {
            if k == 0 {
                out.push_str(&p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&p);
            }
        }
        out
    }
}

/// Name of the basis derivation `∂/∂xᵢ` in the text syntax.
pub fn derivation_name(names: &[String], i: usize) -> String {
    match names.get(i) {
        Some(n) => format!("d{n}"),
        None => format!("dx{}", i + 1),
    }
}

/// `v(f) = Σ vᵢ ∂f/∂xᵢ`.
pub fn apply_derivation(v: &VectorField, f: &Poly) -> Result<Poly> {
    if v.nvars() != f.nvars() {
        return Err(Error::shape(format!(
            "derivation on {} variables applied to polynomial in {}",
            v.nvars(),
            f.nvars()
        )));
    }
    let mut acc = Poly::zero(f.nvars());
    for (i, vi) in v.components.entries().iter().enumerate() {
        if vi.is_zero() {
            continue;
        }
        let df = f.partial_derivative(i);
        if !df.is_zero() {
            acc = &acc + &(vi * &df);
        }
    }
    Ok(acc)
}

/// Commutator `[v, w]` of polynomial derivations.
pub fn lie_bracket(v: &VectorField, w: &VectorField) -> Result<VectorField> {
    if v.nvars() != w.nvars() {
        return Err(Error::shape("vector fields over different rings"));
    }
    let n = v.nvars();
    let mut comps = Vec::with_capacity(n);
    for j in 0..n {
        let a = apply_derivation(v, &w.components[j])?;
        let b = apply_derivation(w, &v.components[j])?;
        comps.push(&a - &b);
    }
    Ok(VectorField {
        components: PolyVector::from_entries(n, comps),
    })
}

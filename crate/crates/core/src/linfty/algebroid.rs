use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ring::{apply_derivation, derivation_name, lie_bracket, Poly, PolyVector, VectorField};

use super::element::{combine_fields, GradedBasis, GradedElement};
use super::signs::sort_with_sign;

/// Brackets on generator tuples, stored only for sorted tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTable {
    max_arity: usize,
    /// `entries[k - 1]` holds the arity-`k` values.
    entries: Vec<BTreeMap<Vec<usize>, GradedElement>>,
}

impl BracketTable {
    pub fn new(max_arity: usize) -> Self {
        BracketTable {
            max_arity,
            entries: vec![BTreeMap::new(); max_arity],
        }
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    /// Sets `[g_t1, ..., g_tk] = value`, normalizing to the sorted tuple.
    pub fn set(&mut self, basis: &GradedBasis, tuple: &[usize], value: GradedElement) -> Result<()> {
        let k = tuple.len();
        if k == 0 || k > self.max_arity {
            return Err(Error::invalid(format!("arity {k} outside 1..={}", self.max_arity)));
        }
        if tuple.iter().any(|&i| i >= basis.len()) {
            return Err(Error::shape("bracket tuple refers to an unknown generator"));
        }
        let expect = tuple.iter().map(|&i| basis.degree(i)).sum::<usize>() + k;
        if !value.is_zero() {
            match value.degree(basis) {
                Some(d) if d + 2 == expect => {}
                _ => {
                    return Err(Error::invalid(format!(
                        "bracket value on {:?} is not homogeneous of degree {}",
                        tuple,
                        expect as isize - 2
                    )))
                }
            }
        }
        match sort_with_sign(tuple, |i| basis.degree(i)) {
            None if value.is_zero() => Ok(()),
            None => Err(Error::invalid(format!(
                "bracket on {tuple:?} must vanish by antisymmetry"
            ))),
            Some((key, sign)) => {
                let v = value.scale_int(sign);
                if v.is_zero() {
                    self.entries[k - 1].remove(&key);
                } else {
                    self.entries[k - 1].insert(key, v);
                }
                Ok(())
            }
        }
    }

    /// `[g_t1, ..., g_tk]` with the antisymmetry sign applied.
    pub fn get(&self, basis: &GradedBasis, tuple: &[usize]) -> GradedElement {
        let k = tuple.len();
        if k == 0 || k > self.max_arity {
            return GradedElement::zero();
        }
        match sort_with_sign(tuple, |i| basis.degree(i)) {
            None => GradedElement::zero(),
            Some((key, sign)) => match self.entries[k - 1].get(&key) {
                Some(v) => v.scale_int(sign),
                None => GradedElement::zero(),
            },
        }
    }

    /// Stored `(arity, sorted tuple, value)` triples in a fixed order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Vec<usize>, &GradedElement)> {
        self.entries
            .iter()
            .enumerate()
            .flat_map(|(k, m)| m.iter().map(move |(t, v)| (k + 1, t, v)))
    }

    pub fn len(&self) -> usize {
        self.entries.iter().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Overwrites a sorted entry without normalization (for mutation tests).
    pub fn set_raw(&mut self, k: usize, key: Vec<usize>, value: GradedElement) {
        if value.is_zero() {
            self.entries[k - 1].remove(&key);
        } else {
            self.entries[k - 1].insert(key, value);
        }
    }
}

/// An L∞-algebroid on a free graded `A`-module with finitely many generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LInftyAlgebroid {
    nvars: usize,
    basis: GradedBasis,
    brackets: BracketTable,
    anchor: Vec<VectorField>,
    /// Binary brackets are the commutator of the vector fields the elements
    /// name (only for the tangent model, where generator `i` is `∂_i`).
    native_tangent: bool,
}

impl LInftyAlgebroid {
    pub fn new(nvars: usize, basis: GradedBasis, brackets: BracketTable, anchor: Vec<VectorField>) -> Result<Self> {
        if anchor.len() != basis.len() {
            return Err(Error::shape("one anchor value per generator is required"));
        }
        for (i, v) in anchor.iter().enumerate() {
            if v.nvars() != nvars {
                return Err(Error::shape("anchor value over the wrong ring"));
            }
            if basis.degree(i) > 0 && !v.is_zero() {
                return Err(Error::invalid(format!(
                    "generator '{}' of positive degree has a nonzero anchor",
                    basis.name(i)
                )));
            }
        }
        Ok(LInftyAlgebroid {
            nvars,
            basis,
            brackets,
            anchor,
            native_tangent: false,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn brackets(&self) -> &BracketTable {
        &self.brackets
    }

    pub fn brackets_mut(&mut self) -> &mut BracketTable {
        &mut self.brackets
    }

    pub fn anchor(&self) -> &[VectorField] {
        &self.anchor
    }

    pub fn set_anchor(&mut self, i: usize, v: VectorField) {
        self.anchor[i] = v;
    }

    pub fn max_arity(&self) -> usize {
        self.brackets.max_arity()
    }

    pub fn is_tangent_model(&self) -> bool {
        self.native_tangent
    }

    pub fn anchor_of(&self, e: &GradedElement) -> VectorField {
        combine_fields(e, &self.anchor, self.nvars)
    }

    pub fn generator(&self, i: usize) -> GradedElement {
        GradedElement::generator(self.nvars, i)
    }
}

/// `T_A` as an algebroid: generators `∂_i` in degree 0, the commutator as
/// binary bracket, identity anchor, no other brackets.
pub fn tangent_model(vars: &[String], max_arity: usize) -> LInftyAlgebroid {
    let n = vars.len();
    let basis = GradedBasis::new((0..n).map(|i| (derivation_name(vars, i), 0)).collect()).unwrap();
    let anchor = (0..n).map(|i| VectorField::coordinate(n, i)).collect();
    let mut l = LInftyAlgebroid::new(n, basis, BracketTable::new(max_arity.max(2)), anchor).unwrap();
    l.native_tangent = true;
    l
}

/// Reads an element of the tangent model as a vector field.
pub fn element_to_field(e: &GradedElement, nvars: usize) -> VectorField {
    let mut comps = PolyVector::zero(nvars, nvars);
    for (i, c) in e.terms() {
        comps[i] = c.clone();
    }
    VectorField::new(comps).unwrap()
}

pub fn field_to_element(v: &VectorField) -> GradedElement {
    GradedElement::from_terms(v.components().entries().iter().cloned().enumerate())
}

/// `Σ_i ρ(u)(b_i) g_i` for `w = Σ b_i g_i`.
fn derive_coefficients(rho: &VectorField, w: &GradedElement) -> Result<GradedElement> {
    let mut out = GradedElement::zero();
    if rho.is_zero() {
        return Ok(out);
    }
    for (i, b) in w.terms() {
        out.add_term(i, &apply_derivation(rho, b)?);
    }
    Ok(out)
}

/// `[v_1, ..., v_k]_k` expanded over generator tuples.
///
/// Brackets of arity `k != 2` are `A`-linear in every slot. The binary
/// bracket obeys `[u, b w] = b[u, w] + ρ(u)(b) w`, and by antisymmetry
/// `[a u, w] = a[u, w] - ρ(w)(a) u` (the sign is `+1` whenever `ρ(w) != 0`
/// because then `w` has degree 0).
pub fn evaluate_bracket(l: &LInftyAlgebroid, k: usize, inputs: &[GradedElement]) -> Result<GradedElement> {
    if inputs.len() != k {
        return Err(Error::shape(format!("arity {k} bracket given {} inputs", inputs.len())));
    }
    if k == 0 || k > l.max_arity() {
        return Err(Error::invalid(format!("arity {k} exceeds the maximum {}", l.max_arity())));
    }
    if inputs.iter().any(GradedElement::is_zero) {
        return Ok(GradedElement::zero());
    }
    if l.native_tangent {
        if k != 2 {
            return Ok(GradedElement::zero());
        }
        let v = element_to_field(&inputs[0], l.nvars);
        let w = element_to_field(&inputs[1], l.nvars);
        return Ok(field_to_element(&lie_bracket(&v, &w)?));
    }
    let supports: Vec<Vec<(usize, &Poly)>> = inputs.iter().map(|e| e.terms().collect()).collect();
    let mut out = GradedElement::zero();
    let mut idx = vec![0usize; k];
    'outer: loop {
        let tuple: Vec<usize> = (0..k).map(|s| supports[s][idx[s]].0).collect();
        let val = l.brackets.get(&l.basis, &tuple);
        if !val.is_zero() {
            let mut c = supports[0][idx[0]].1.clone();
            for s in 1..k {
                c = &c * supports[s][idx[s]].1;
            }
            out = out.add(&val.scale(&c));
        }
        for s in (0..k).rev() {
            idx[s] += 1;
            if idx[s] < supports[s].len() {
                continue 'outer;
            }
            idx[s] = 0;
        }
        break;
    }
    if k == 2 {
        let (u, w) = (&inputs[0], &inputs[1]);
        out = out.add(&derive_coefficients(&l.anchor_of(u), w)?);
        out = out.sub(&derive_coefficients(&l.anchor_of(w), u)?);
    }
    Ok(out)
}

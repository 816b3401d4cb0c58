use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ring::{Poly, VectorField};

/// Named generators with non-negative degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedBasis {
    names: Vec<String>,
    degrees: Vec<usize>,
}

impl GradedBasis {
    pub fn new(generators: Vec<(String, usize)>) -> Result<Self> {
        let mut names = Vec::with_capacity(generators.len());
        let mut degrees = Vec::with_capacity(generators.len());
        for (name, d) in generators {
            if names.contains(&name) {
                return Err(Error::invalid(format!("generator '{name}' declared twice")));
            }
            names.push(name);
            degrees.push(d);
        }
        Ok(GradedBasis { names, degrees })
    }

    /// `prefix<d>_<k>` names for the given ranks per degree.
    pub fn from_ranks(prefix: &str, ranks: &[usize]) -> Self {
        let mut gens = Vec::new();
        for (d, &r) in ranks.iter().enumerate() {
            for k in 0..r {
                gens.push((format!("{prefix}{d}_{}", k + 1), d));
            }
        }
        GradedBasis::new(gens).expect("generated names are distinct")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Generator indices of degree `d`, in basis order.
    pub fn in_degree(&self, d: usize) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degrees[i] == d).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }
}

/// An `A`-linear combination of generators.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedElement {
    terms: BTreeMap<usize, Poly>,
}

impl std::fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl GradedElement {
    pub fn zero() -> Self {
        GradedElement::default()
    }

    pub fn generator(nvars: usize, i: usize) -> Self {
        GradedElement::term(i, Poly::one(nvars))
    }

    pub fn term(i: usize, c: Poly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(i, c);
        }
        GradedElement { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Poly)>) -> Self {
        let mut e = GradedElement::zero();
        for (i, c) in terms {
            e.add_term(i, &c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Poly)> {
        self.terms.iter().map(|(&i, c)| (i, c))
    }

    pub fn coefficient(&self, i: usize) -> Option<&Poly> {
        self.terms.get(&i)
    }

    pub fn support(&self) -> Vec<usize> {
        self.terms.keys().copied().collect()
    }

    pub fn add_term(&mut self, i: usize, c: &Poly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&i) {
            Some(old) => {
                let s = &*old + c;
                if s.is_zero() {
                    self.terms.remove(&i);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(i, c.clone());
            }
        }
    }

    pub fn add(&self, other: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        for (i, c) in other.terms() {
            out.add_term(i, c);
        }
        out
    }

    pub fn sub(&self, other: &GradedElement) -> GradedElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GradedElement {
        GradedElement {
            terms: self.terms.iter().map(|(&i, c)| (i, -c)).collect(),
        }
    }

    pub fn scale(&self, a: &Poly) -> GradedElement {
        if a.is_zero() {
            return GradedElement::zero();
        }
        GradedElement::from_terms(self.terms.iter().map(|(&i, c)| (i, c * a)))
    }

    pub fn scale_int(&self, s: i8) -> GradedElement {
        if s >= 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// The common degree of the support, if homogeneous (zero is homogeneous of every degree).
    pub fn degree(&self, basis: &GradedBasis) -> Option<usize> {
        let mut it = self.terms.keys().map(|&i| basis.degree(i));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self, basis: &GradedBasis) -> bool {
        self.is_zero() || self.degree(basis).is_some()
    }

    pub fn display_with(&self, basis: &GradedBasis, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (i, c)) in self.terms().enumerate() {
            let name = basis.name(i);
            let piece = if c.is_one() {
                name.to_string()
            } else if (-c).is_one() {
                format!("-{name}")
            } else if c.terms().len() == 1 {
                format!("{}*{name}", c.display_with(vars))
            } else {
                format!("({})*{name}", c.display_with(vars))
            };
            if k == 0 {
                out.push_str(&piece);
            } else if let Some(rest) = piece.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&piece);
            }
        }
        out
    }
}

/// `Σ c_i v_i` for per-generator vector fields `v`.
pub fn combine_fields(e: &GradedElement, fields: &[VectorField], nvars: usize) -> VectorField {
    let mut acc = VectorField::zero(nvars);
    for (i, c) in e.terms() {
        if !fields[i].is_zero() {
            acc = acc.add(&fields[i].scale(c));
        }
    }
    acc
}

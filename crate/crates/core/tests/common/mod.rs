#![allow(dead_code)]

use num::BigRational;
use proptest::prelude::*;
use semimodel_core::dgmod::{ChainMap, GradedComplex};
use semimodel_core::foliation::Foliation;
use semimodel_core::ring::parse::{parse_poly, parse_vector_field};
use semimodel_core::ring::{default_variables, Monomial, Poly, PolyMatrix, PolyVector, VectorField};

pub fn vars(n: usize) -> Vec<String> {
    default_variables(n)
}

pub fn p(s: &str) -> Poly {
    parse_poly(s, &vars(2)).unwrap()
}

pub fn vf(s: &str) -> VectorField {
    parse_vector_field(s, &vars(2)).unwrap()
}

pub fn mat(rows: &[&[&str]]) -> PolyMatrix {
    PolyMatrix::from_rows(2, rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect()).unwrap()
}

pub fn fol(names: &[&str], fields: &[&str]) -> Foliation {
    Foliation::new(2, names.iter().map(|s| s.to_string()).collect(), fields.iter().map(|s| vf(s)).collect()).unwrap()
}

/// Vector fields on the plane vanishing at the origin.
pub fn f0() -> Foliation {
    fol(&["e11", "e12", "e21", "e22"], &["x*dx", "y*dx", "x*dy", "y*dy"])
}

pub fn f0_permuted() -> Foliation {
    fol(&["e22", "e21", "e12", "e11"], &["y*dy", "x*dy", "y*dx", "x*dx"])
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Up to `terms` terms, exponents at most `deg` each, small rational coefficients.
pub fn poly(nvars: usize, terms: usize, deg: u16) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (prop::collection::vec(0..=deg, nvars), -3i64..=3, prop::sample::select(vec![1i64, 1, 2])),
        0..=terms,
    )
    .prop_map(move |ts| {
        Poly::from_terms(
            nvars,
            ts.into_iter()
                .map(|(e, n, d)| (Monomial::from_exponents(&e), rat(n, d))),
        )
    })
}

pub fn field(nvars: usize, terms: usize, deg: u16) -> impl Strategy<Value = VectorField> {
    prop::collection::vec(poly(nvars, terms, deg), nvars)
        .prop_map(move |cs| VectorField::new(PolyVector::from_entries(nvars, cs)).unwrap())
}

pub fn matrix(nvars: usize, rows: usize, cols: usize, terms: usize, deg: u16) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(prop::collection::vec(poly(nvars, terms, deg), cols), rows)
        .prop_map(move |r| {
            if rows == 0 {
                PolyMatrix::zero(nvars, 0, cols)
            } else {
                PolyMatrix::from_rows(nvars, r).unwrap()
            }
        })
}

pub fn koszul() -> GradedComplex {
    GradedComplex::new(2, vec![1, 2, 1], vec![mat(&[&["x", "y"]]), mat(&[&["y"], &["-x"]])]).unwrap()
}

/// A handful of free complexes over two variables with `top_degree <= 2`.
pub fn sample_complexes() -> Vec<GradedComplex> {
    vec![
        GradedComplex::sphere(2, 0),
        GradedComplex::sphere(2, 1),
        GradedComplex::disc(2, 1),
        GradedComplex::disc(2, 2),
        koszul(),
        GradedComplex::disc(2, 1).direct_sum(&GradedComplex::sphere(2, 0)),
        GradedComplex::new(2, vec![1, 1], vec![mat(&[&["x"]])]).unwrap(),
        GradedComplex::new(2, vec![2, 1], vec![mat(&[&["y"], &["-x"]])]).unwrap(),
    ]
}

/// `f + d h + h d` for an arbitrary degree-raising `h`.
pub fn perturb(f: &ChainMap, h: &[PolyMatrix]) -> ChainMap {
    let s = f.source();
    let t = f.target();
    let comps = (0..=s.top_degree())
        .map(|i| {
            let mut c = f.component(i);
            if let Some(hi) = h.get(i) {
                c = c.add(&t.differential(i + 1).compose(hi));
            }
            if i >= 1 {
                if let Some(hp) = h.get(i - 1) {
                    c = c.add(&hp.compose(&s.differential(i)));
                }
            }
            c
        })
        .collect();
    ChainMap::new(s.clone(), t.clone(), comps).unwrap()
}

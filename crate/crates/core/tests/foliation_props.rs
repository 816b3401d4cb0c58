mod common;

use common::poly;
use proptest::prelude::*;
use semimodel_core::foliation::{
    build_universal_structure, cofibrant_replacement_linfty, free_resolution, Foliation,
};
use semimodel_core::linfty::{anchor_compat_residual, evaluate_bracket};
use semimodel_core::ring::{lie_bracket, Monomial, Poly, VectorField};

/// `I · T_A` for a monomial ideal `I` is always bracket-closed.
fn ideal_foliation() -> impl Strategy<Value = Foliation> {
    prop::collection::vec((0u16..=2, 0u16..=2), 1..=2).prop_map(|ms| {
        let mut gens = Vec::new();
        for (a, b) in ms {
            let m = Poly::term(Monomial::from_exponents(&[a, b]), num::one());
            for i in 0..2 {
                gens.push(VectorField::coordinate(2, i).scale(&m));
            }
        }
        Foliation::from_fields(2, gens).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn resolutions_resolve(f in ideal_foliation()) {
        let r = free_resolution(&f, 2).unwrap();
        prop_assert!(r.holds());
        let c = r.complex.complex();
        prop_assert!(r.complex.anchor().compose(&c.differential(1)).is_zero());
        // the anchor of each generator is the generator
        for (k, g) in f.generators().iter().enumerate() {
            prop_assert_eq!(&r.complex.anchor().column(k), g.components());
        }
    }

    #[test]
    fn universal_structures_pass_their_residuals(f in ideal_foliation(), a in poly(2, 2, 1)) {
        let r = free_resolution(&f, 2).unwrap();
        let u = build_universal_structure(&r, &f, 3, 2).unwrap();
        prop_assert!(u.holds(), "{:?}", u.report);
        let l = &u.algebroid;
        let deg0 = l.basis().in_degree(0);
        for &i in &deg0 {
            for &j in &deg0 {
                let (x, y) = (l.generator(i), l.generator(j));
                // ρ ℓ2 = [ρ, ρ] on degree 0
                let lhs = l.anchor_of(&evaluate_bracket(l, 2, &[x.clone(), y.clone()]).unwrap());
                prop_assert_eq!(lhs, lie_bracket(&l.anchor()[i], &l.anchor()[j]).unwrap());
                prop_assert!(anchor_compat_residual(l, &x, &y, &a).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn low_weight_replacements_are_certified(f in ideal_foliation()) {
        let q = cofibrant_replacement_linfty(&f, 1, 1).unwrap();
        prop_assert!(q.holds());
        prop_assert_eq!(q.cells.iter().filter(|c| c.degree == 0).count(), f.len());
    }
}

#[test]
fn zero_and_full_foliations() {
    let z = Foliation::from_fields(2, vec![]).unwrap();
    assert!(free_resolution(&z, 2).unwrap().holds());
    assert!(cofibrant_replacement_linfty(&z, 2, 2).unwrap().cells.is_empty());
    let t = Foliation::from_fields(2, (0..2).map(|i| VectorField::coordinate(2, i)).collect()).unwrap();
    let r = free_resolution(&t, 2).unwrap();
    assert_eq!(r.ranks(), &[2, 0, 0]);
    let u = build_universal_structure(&r, &t, 3, 2).unwrap();
    assert!(u.holds());
}

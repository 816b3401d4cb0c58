mod common;

use common::{poly, vars, vf};
use proptest::prelude::*;
use semimodel_core::dgmod::validate_complex;
use semimodel_core::freealg::{
    enumerate_words, extend_strict_morphism, extension_disagreement, oriented_truncation, relation_basis,
    relation_span_membership, self_extension_is_identity, FreeLR, Membership, Word, WordElement,
};
use semimodel_core::linfty::{field_to_element, tangent_model, GradedBasis, GradedElement};
use semimodel_core::ring::{Poly, VectorField};

const FIELDS: [&str; 8] = ["dx", "dy", "x*dx", "y*dx", "x*dy", "y*dy", "x*dx + y*dy", "0"];

/// Two-generator anchored modules: two functions in degree 0, or one in
/// degree 0 and one in degree 1.
fn module() -> impl Strategy<Value = FreeLR> {
    let two_even = (0..FIELDS.len(), 0..FIELDS.len()).prop_map(|(i, j)| {
        let basis = GradedBasis::new(vec![("a".into(), 0), ("b".into(), 0)]).unwrap();
        FreeLR::new(2, basis, vec![WordElement::zero(); 2], vec![vf(FIELDS[i]), vf(FIELDS[j])]).unwrap()
    });
    let with_odd = (0..FIELDS.len(), poly(2, 2, 1)).prop_map(|(i, c): (usize, Poly)| {
        let basis = GradedBasis::new(vec![("a".into(), 0), ("u".into(), 1)]).unwrap();
        // d u = c a needs c ρ(a) = 0
        let (anchor, d) = if c.is_zero() {
            (vf(FIELDS[i]), WordElement::zero())
        } else {
            (VectorField::zero(2), WordElement::term(Word::Leaf(0), c))
        };
        FreeLR::new(2, basis, vec![WordElement::zero(), d], vec![anchor, VectorField::zero(2)]).unwrap()
    });
    prop_oneof![two_even, with_odd]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oriented_truncations_are_complexes(ctx in module(), w in 0usize..3, d in 0usize..3) {
        let t = oriented_truncation(&ctx, w, d).unwrap();
        prop_assert!(validate_complex(t.complex.complex()).is_valid());
        prop_assert!(t.complex.anchor_defect().is_none());
    }

    #[test]
    fn relations_vanish_in_the_oriented_form(ctx in module()) {
        let span = ctx.span(2, 2);
        let rels = relation_basis(&ctx, &span).unwrap();
        for (_, r) in &rels.relations {
            prop_assert!(ctx.orient(r).unwrap().is_zero());
            let is_member = matches!(relation_span_membership(&ctx, &span, &rels, r).unwrap(), Membership::Member { .. });
            prop_assert!(is_member);
        }
        let leaf_verdict = relation_span_membership(&ctx, &span, &rels, &ctx.leaf(0)).unwrap();
        let non_member = matches!(leaf_verdict, Membership::NonMember { .. });
        prop_assert!(non_member);
    }

    #[test]
    fn anchors_extend_uniquely_to_the_tangent_model(ctx in module()) {
        let span = ctx.span(2, 2);
        let rels = relation_basis(&ctx, &span).unwrap();
        let t = tangent_model(&vars(2), 3);
        let f: Vec<GradedElement> = (0..ctx.basis().len())
            .map(|v| if ctx.basis().degree(v) == 0 { field_to_element(ctx.generator_anchor(v)) } else { GradedElement::zero() })
            .collect();
        let ext = extend_strict_morphism(&ctx, &span, &rels, &f, &t).unwrap();
        prop_assert!(ext.holds(), "{:?}", ext.failures);
        prop_assert_eq!(extension_disagreement(&ctx, &span, &f, &t, &ext).unwrap(), None);
        prop_assert!(self_extension_is_identity(&ctx, &span).unwrap());
    }
}

#[test]
fn enumeration_grows_with_both_bounds() {
    let basis = GradedBasis::new(vec![("a".into(), 0), ("u".into(), 1)]).unwrap();
    let mut prev: Vec<Vec<usize>> = Vec::new();
    for w in 0..=3 {
        let row: Vec<usize> = (0..=3).map(|d| enumerate_words(&basis, w, d).len()).collect();
        assert!(row.windows(2).all(|p| p[0] <= p[1]), "{row:?}");
        if let Some(last) = prev.last() {
            assert!(last.iter().zip(&row).all(|(a, b)| a <= b));
        }
        prev.push(row);
    }
}

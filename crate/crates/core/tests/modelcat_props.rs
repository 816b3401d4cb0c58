mod common;

use common::{matrix, perturb, sample_complexes};
use proptest::prelude::*;
use semimodel_core::dgmod::{is_quasi_iso, validate_complex, AnchoredComplex, ChainMap, GradedComplex};
use semimodel_core::modelcat::{
    classify_morphism, cofibrant_replacement, factor_cof_trivfib, AnchoredMap, FactorMode, Factorization,
};
use semimodel_core::ring::PolyMatrix;

fn pick() -> impl Strategy<Value = GradedComplex> {
    prop::sample::select(sample_complexes())
}

fn check_factorization(q: &Factorization, f: &AnchoredMap, bound: usize) {
    assert!(q.cellular.verify());
    assert!(validate_complex(q.result().complex()).is_valid());
    assert!(q.p.map().is_chain_map());
    let through = q.p.map().compose(&q.cellular.inclusion()).unwrap();
    assert_eq!(
        through.reframed(f.source().complex(), f.target().complex()).unwrap(),
        f.map().clone()
    );
    let again = classify_morphism(&q.p, bound).unwrap();
    assert_eq!(again, q.certificate);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn replacements_are_certified(x in pick()) {
        let bound = x.top_degree();
        let xa = AnchoredComplex::unanchored(x.clone());
        let q = cofibrant_replacement(&xa, bound).unwrap();
        prop_assert!(q.certificate.trivial_fibration);
        prop_assert!(q.cellular.is_absolute());
        prop_assert!(is_quasi_iso(q.p.map(), bound).unwrap().holds);
        check_factorization(&q, &AnchoredMap::from_zero(&xa), bound);
    }

    #[test]
    fn both_factorizations_of_random_maps((x, y, h) in (pick(), pick()).prop_flat_map(|(x, y)| {
        let shapes: Vec<(usize, usize)> = (0..=x.top_degree()).map(|i| (y.rank(i + 1), x.rank(i))).collect();
        let h = shapes.into_iter().map(|(r, c)| matrix(2, r, c, 2, 1).boxed()).collect::<Vec<_>>();
        (Just(x), Just(y), h)
    })) {
        let h: Vec<PolyMatrix> = h;
        let f = perturb(&ChainMap::zero(&x, &y), &h);
        let bound = x.top_degree().max(y.top_degree());
        let fa = AnchoredMap::new(AnchoredComplex::unanchored(x), AnchoredComplex::unanchored(y), f).unwrap();
        let q = factor_cof_trivfib(&fa, bound, FactorMode::CofibrationTrivialFibration).unwrap();
        prop_assert!(q.certificate.trivial_fibration);
        check_factorization(&q, &fa, bound);
        let r = factor_cof_trivfib(&fa, bound, FactorMode::TrivialCofibrationFibration).unwrap();
        prop_assert!(r.certificate.fibration);
        check_factorization(&r, &fa, bound);
        // the trivial cofibration is a quasi-isomorphism
        prop_assert!(is_quasi_iso(&r.cellular.inclusion(), bound).unwrap().holds);
    }
}

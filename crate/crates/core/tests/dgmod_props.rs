mod common;

use common::{matrix, perturb, sample_complexes};
use proptest::prelude::*;
use semimodel_core::dgmod::{
    compose_homotopies, cylinder_object, is_quasi_iso, mapping_cone, path_object, reduce_unit_pivots, reverse_homotopy,
    solve_left_homotopy, validate_complex, ChainMap, GradedComplex,
};
use semimodel_core::ring::PolyMatrix;

fn pick() -> impl Strategy<Value = GradedComplex> {
    prop::sample::select(sample_complexes())
}

/// A degree-raising family `h_i : X_i -> Y_{i+1}` with small entries.
fn homotopy_data(x: &GradedComplex, y: &GradedComplex) -> BoxedStrategy<Vec<PolyMatrix>> {
    let shapes: Vec<(usize, usize)> = (0..=x.top_degree()).map(|i| (y.rank(i + 1), x.rank(i))).collect();
    shapes
        .into_iter()
        .map(|(r, c)| matrix(2, r, c, 2, 1).boxed())
        .collect::<Vec<_>>()
        .boxed()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn perturbed_maps_are_homotopic((x, y, h, h2) in (pick(), pick()).prop_flat_map(|(x, y)| {
        let a = homotopy_data(&x, &y);
        let b = homotopy_data(&x, &y);
        (Just(x), Just(y), a, b)
    })) {
        let f = ChainMap::zero(&x, &y);
        let g = perturb(&f, &h);
        prop_assert!(g.is_chain_map());
        let k = perturb(&g, &h2);
        let bound = x.top_degree();
        let fg = solve_left_homotopy(&f, &g, bound).unwrap().expect("f ~ g");
        let gk = solve_left_homotopy(&g, &k, bound).unwrap().expect("g ~ k");
        prop_assert!(fg.verify());
        prop_assert!(reverse_homotopy(&fg).verify());
        prop_assert!(compose_homotopies(&fg, &gk).unwrap().verify());
    }

    #[test]
    fn cylinders_and_paths(x in pick()) {
        let c = cylinder_object(&x);
        prop_assert!(validate_complex(&c.cyl).is_valid());
        prop_assert!(c.i0.is_chain_map() && c.i1.is_chain_map() && c.proj.is_chain_map());
        prop_assert!(is_quasi_iso(&c.proj, x.top_degree()).unwrap().holds);
        let p = path_object(&x);
        prop_assert!(validate_complex(&p.path).is_valid());
        prop_assert!(is_quasi_iso(&p.incl, x.top_degree()).unwrap().holds);
    }

    #[test]
    fn identity_cone_is_acyclic_and_reduction_is_an_equivalence(x in pick(), y in pick()) {
        let s = x.direct_sum(&y);
        let id = ChainMap::identity(&s);
        prop_assert!(is_quasi_iso(&id, s.top_degree()).unwrap().holds);
        prop_assert!(validate_complex(&mapping_cone(&id)).is_valid());
        let red = reduce_unit_pivots(&s);
        let r = &red.reduced;
        let incl = ChainMap::new(r.clone(), s.clone(), red.incl.clone()).unwrap();
        let proj = ChainMap::new(s.clone(), r.clone(), red.proj.clone()).unwrap();
        prop_assert!(incl.is_chain_map() && proj.is_chain_map());
        prop_assert_eq!(proj.compose(&incl).unwrap(), ChainMap::identity(r));
        let back = incl.compose(&proj).unwrap();
        prop_assert!(solve_left_homotopy(&back, &id, s.top_degree()).unwrap().is_some());
    }
}

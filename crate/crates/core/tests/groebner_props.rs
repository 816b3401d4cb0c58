mod common;

use common::{matrix, poly};
use proptest::prelude::*;
use semimodel_core::groebner::{syzygy_basis, ColumnSolver};
use semimodel_core::ring::PolyVector;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Anything of the form `M u` is found again, with a witness that checks out.
    #[test]
    fn solves_what_it_should(m in matrix(2, 2, 3, 2, 1), u in prop::collection::vec(poly(2, 2, 1), 3)) {
        let u = PolyVector::from_entries(2, u);
        let t = m.apply(&u);
        let s = ColumnSolver::new(&m).unwrap();
        let w = s.solve(&t).unwrap().expect("image element not found");
        prop_assert_eq!(m.apply(&w), t.clone());
        prop_assert!(s.remainder(&t).unwrap().is_zero());
    }

    /// Kernel generators are syzygies, and every `M`-relation built from two
    /// columns (the Koszul-type ones) lies in their span.
    #[test]
    fn syzygies_are_complete_for_koszul_relations(m in matrix(2, 1, 3, 2, 1)) {
        let cols = m.columns();
        let syz = syzygy_basis(&cols, 1, 2).unwrap();
        for z in &syz {
            prop_assert!(m.apply(z).is_zero());
        }
        let span = ColumnSolver::from_columns(2, 3, &syz).unwrap();
        for i in 0..3 {
            for j in i + 1..3 {
                let mut k = PolyVector::zero(2, 3);
                k[i] = m[(0, j)].clone();
                k[j] = -&m[(0, i)];
                prop_assert!(m.apply(&k).is_zero());
                prop_assert!(k.is_zero() || span.contains(&k).unwrap());
            }
        }
    }
}

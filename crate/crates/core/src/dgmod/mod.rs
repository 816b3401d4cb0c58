//! Bounded non-negatively graded complexes of free `A`-modules, anchored
//! complexes (objects of `Mod/T_A`), homology certificates, cylinder and
//! path objects, and chain homotopies.
//!
//! Everything is stated up to an explicit degree bound. Homology in the top
//! stored degree is flagged provisional.

mod complex;
mod cone;
mod homology;
mod homotopy;
pub mod text;

pub use complex::{validate_complex, AnchoredComplex, ChainMap, GradedComplex, Validity};
pub use cone::{cylinder_object, is_quasi_iso, mapping_cone, path_object, Cylinder, PathObject, QuasiIsoCertificate};
pub use homology::{
    exactness_certificate, homology_presentation, reduce_unit_pivots, DegreeHomology, ExactnessCertificate,
    Presentation, UnitReduction,
};
pub use homotopy::{compose_homotopies, reverse_homotopy, solve_left_homotopy, zero_homotopy, ChainHomotopy};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse::parse_poly;
    use crate::ring::{default_variables, Poly, PolyMatrix, PolyVector};

    fn vars() -> Vec<String> {
        default_variables(2)
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &vars()).unwrap()
    }

    fn mat(rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(2, rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect()).unwrap()
    }

    fn koszul() -> GradedComplex {
        GradedComplex::new(2, vec![1, 2, 1], vec![mat(&[&["x", "y"]]), mat(&[&["y"], &["-x"]])]).unwrap()
    }

    fn scalar_map(src: &GradedComplex, tgt: &GradedComplex, deg: usize, s: &str) -> ChainMap {
        let mut comps = Vec::new();
        for i in 0..=deg {
            comps.push(if i == deg {
                mat(&[&[s]])
            } else {
                PolyMatrix::zero(2, tgt.rank(i), src.rank(i))
            });
        }
        ChainMap::new(src.clone(), tgt.clone(), comps).unwrap()
    }

    #[test]
    fn validity_examples() {
        assert!(validate_complex(&GradedComplex::disc(2, 3)).is_valid());
        assert!(validate_complex(&GradedComplex::zero(2)).is_valid());
        let bad = GradedComplex::new(2, vec![1, 1, 1], vec![mat(&[&["1"]]), mat(&[&["1"]])]).unwrap();
        match validate_complex(&bad) {
            Validity::Invalid { degree, row, col, value } => {
                assert_eq!((degree, row, col), (2, 0, 0));
                assert!(value.is_one());
            }
            Validity::Valid => panic!("id∘id accepted"),
        }
    }

    #[test]
    fn exactness_examples() {
        let k = koszul();
        assert!(exactness_certificate(&k, 1..=2).unwrap().is_exact());
        let h0 = exactness_certificate(&k, 0..=0).unwrap();
        assert!(!h0.is_exact());
        assert_eq!(h0.degrees[0].witnesses, vec![PolyVector::unit(2, 1, 0)]);
        let d = GradedComplex::disc(2, 2);
        assert!(exactness_certificate(&d, 0..=3).unwrap().is_exact());
        let s = GradedComplex::sphere(2, 0);
        let cert = exactness_certificate(&s, 0..=0).unwrap();
        assert!(!cert.is_exact());
        assert!(cert.degrees[0].provisional);
    }

    #[test]
    fn cone_examples() {
        let s = GradedComplex::sphere(2, 0);
        let id = ChainMap::identity(&s);
        let c = mapping_cone(&id);
        assert_eq!(c.ranks(), &[1, 1]);
        assert!(exactness_certificate(&c, 0..=1).unwrap().is_exact());

        let zero = ChainMap::zero(&s, &s);
        let h = homology_presentation(&mapping_cone(&zero), 0).unwrap();
        assert_eq!(h.generators.len(), 1);
        assert!(h.is_free());

        let by_x = scalar_map(&s, &s, 0, "x");
        let h = homology_presentation(&mapping_cone(&by_x), 0).unwrap();
        assert_eq!(h.generators.len(), 1);
        assert_eq!(h.relations, mat(&[&["x"]]));
        assert!(!h.is_zero_module().unwrap());
    }

    #[test]
    fn quasi_iso_examples() {
        let k = koszul();
        assert!(is_quasi_iso(&ChainMap::identity(&k), 2).unwrap().holds);
        let d1 = GradedComplex::disc(2, 1);
        let z = GradedComplex::zero(2);
        assert!(is_quasi_iso(&ChainMap::zero(&d1, &z), 1).unwrap().holds);
        let s = GradedComplex::sphere(2, 0);
        let cert = is_quasi_iso(&ChainMap::zero(&s, &z), 0).unwrap();
        assert!(!cert.holds);
        let fail = cert.cone.first_failure().unwrap();
        assert_eq!(fail.degree, 1);
        assert_eq!(fail.witnesses, vec![PolyVector::unit(2, 1, 0)]);
    }

    #[test]
    fn presentation_examples() {
        let s = homology_presentation(&GradedComplex::sphere(2, 0), 0).unwrap();
        assert_eq!(s.generators.len(), 1);
        assert!(s.is_free());
        let k = homology_presentation(&koszul(), 0).unwrap();
        assert_eq!(k.generators.len(), 1);
        assert_eq!(k.relations, mat(&[&["x", "y"]]));
        let d = homology_presentation(&GradedComplex::disc(2, 1), 0).unwrap();
        assert_eq!(d.relations, mat(&[&["1"]]));
        assert!(d.is_zero_module().unwrap());
    }

    fn check_cylinder(x: &GradedComplex) {
        let c = cylinder_object(x);
        assert!(validate_complex(&c.cyl).is_valid());
        for m in [&c.i0, &c.i1, &c.proj] {
            assert!(m.is_chain_map());
        }
        let id = ChainMap::identity(x);
        assert_eq!(c.proj.compose(&c.i0).unwrap().reframed(x, x).unwrap(), id);
        assert_eq!(c.proj.compose(&c.i1).unwrap().reframed(x, x).unwrap(), id);
        assert!(is_quasi_iso(&c.proj, x.top_degree()).unwrap().holds);
    }

    fn check_path(x: &GradedComplex) {
        let pth = path_object(x);
        assert!(validate_complex(&pth.path).is_valid());
        for m in [&pth.incl, &pth.p0, &pth.p1] {
            assert!(m.is_chain_map());
        }
        let id = ChainMap::identity(x);
        assert_eq!(pth.p0.compose(&pth.incl).unwrap(), id);
        assert_eq!(pth.p1.compose(&pth.incl).unwrap(), id);
        assert!(is_quasi_iso(&pth.incl, x.top_degree()).unwrap().holds);
    }

    #[test]
    fn cylinder_and_path_examples() {
        let s = GradedComplex::sphere(2, 0);
        assert_eq!(cylinder_object(&s).cyl.ranks(), &[2, 1]);
        assert!(cylinder_object(&GradedComplex::zero(2)).cyl.is_zero());
        assert!(path_object(&GradedComplex::zero(2)).path.is_zero());
        assert_eq!(cylinder_object(&GradedComplex::disc(2, 1)).cyl.ranks(), &[2, 3, 1]);
        for x in [s, GradedComplex::disc(2, 1), GradedComplex::disc(2, 2), koszul()] {
            check_cylinder(&x);
            check_path(&x);
        }
    }

    #[test]
    fn homotopy_examples() {
        let d1 = GradedComplex::disc(2, 1);
        let id = ChainMap::identity(&d1);
        let h = solve_left_homotopy(&id, &id, 1).unwrap().unwrap();
        assert!(h.maps().iter().all(PolyMatrix::is_zero));

        let zero = ChainMap::zero(&d1, &d1);
        let h = solve_left_homotopy(&id, &zero, 1).unwrap().unwrap();
        assert_eq!(h.maps()[0], mat(&[&["1"]]));
        assert!(h.maps()[1].is_zero() || h.maps()[1].rows() == 0);
        assert!(h.verify());

        let s = GradedComplex::sphere(2, 0);
        assert!(solve_left_homotopy(&ChainMap::identity(&s), &ChainMap::zero(&s, &s), 0)
            .unwrap()
            .is_none());
    }

    #[test]
    fn homotopy_algebra() {
        let d1 = GradedComplex::disc(2, 1);
        let f = ChainMap::identity(&d1);
        let g = ChainMap::zero(&d1, &d1);
        let k = ChainMap::new(d1.clone(), d1.clone(), vec![mat(&[&["x"]]), mat(&[&["x"]])]).unwrap();
        let h1 = solve_left_homotopy(&f, &g, 1).unwrap().unwrap();
        let h2 = solve_left_homotopy(&g, &k, 1).unwrap().unwrap();
        let h = compose_homotopies(&h1, &h2).unwrap();
        assert_eq!(h.from(), &f);
        assert_eq!(h.to(), &k);
        assert!(h.verify());
        let r = reverse_homotopy(&h);
        assert!(r.verify());
        assert_eq!(reverse_homotopy(&r), h);
        let same = compose_homotopies(&h1, &zero_homotopy(&g, 1)).unwrap();
        assert_eq!(same, h1);
        assert!(compose_homotopies(&h2, &h1).is_err());
    }

    #[test]
    fn homotopy_into_non_acyclic_target() {
        // target A --x--> A, source S(0)
        let t = GradedComplex::new(2, vec![1, 1], vec![mat(&[&["x"]])]).unwrap();
        let s = GradedComplex::sphere(2, 0);
        let f = scalar_map(&s, &t, 0, "x^2");
        let g = ChainMap::zero(&s, &t);
        let h = solve_left_homotopy(&f, &g, 0).unwrap().unwrap();
        assert_eq!(h.maps()[0], mat(&[&["x"]]));
        let f = scalar_map(&s, &t, 0, "y");
        assert!(solve_left_homotopy(&f, &g, 0).unwrap().is_none());
    }

    #[test]
    fn unit_reduction_is_a_homotopy_equivalence() {
        let c = GradedComplex::disc(2, 1).direct_sum(&koszul());
        let red = reduce_unit_pivots(&c);
        assert_eq!(red.cancelled, 1);
        assert_eq!(red.reduced.ranks(), &[1, 2, 1]);
        let r = &red.reduced;
        let incl = ChainMap::new(r.clone(), c.clone(), red.incl.clone()).unwrap();
        let proj = ChainMap::new(c.clone(), r.clone(), red.proj.clone()).unwrap();
        assert!(incl.is_chain_map());
        assert!(proj.is_chain_map());
        assert_eq!(proj.compose(&incl).unwrap(), ChainMap::identity(r));
        let back = incl.compose(&proj).unwrap();
        assert!(solve_left_homotopy(&back, &ChainMap::identity(&c), 2).unwrap().is_some());
    }

    #[test]
    fn text_roundtrip() {
        let a = AnchoredComplex::new(
            koszul(),
            mat(&[&["x"], &["y"]]),
        );
        // ρ d1 = (x^2, xy; ...) ≠ 0, so that anchor is rejected
        assert!(a.is_err());
        let a = AnchoredComplex::new(
            GradedComplex::new(2, vec![2, 1], vec![mat(&[&["y"], &["-x"]])]).unwrap(),
            mat(&[&["x", "y"], &["0", "0"]]),
        )
        .unwrap();
        let txt = text::write_complex(&a, &vars());
        assert_eq!(
            txt,
            "complex {\n  ranks = [2, 1];\n  d1 = [[y], [-x]];\n  anchor = [[x, y], [0, 0]];\n}\n"
        );
        assert_eq!(text::parse_complex(&txt, &vars()).unwrap(), a);
        let err = text::parse_complex("complex { ranks = [1]; d2 = [[x]]; }", &vars()).unwrap_err();
        assert!(err.to_string().contains("1:24"), "{err}");
    }
}

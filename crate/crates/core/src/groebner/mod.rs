//! Gröbner bases for submodules of `A^r`, normal forms, linear solving and syzygies.
//!
//! The order is fixed: position over term (lower component index wins),
//! degrevlex inside a component.

mod basis;
mod solve;

pub use basis::{buchberger_basis, leading_term, normal_form, GroebnerBasis, MonomialOrder};
pub use solve::{prune_generators, solve_linear_over_ring, syzygy_basis, ColumnSolver};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse::parse_poly;
    use crate::ring::{default_variables, Poly, PolyMatrix, PolyVector};

    fn p(s: &str) -> Poly {
        parse_poly(s, &default_variables(2)).unwrap()
    }

    fn v1(s: &str) -> PolyVector {
        PolyVector::from_entries(2, vec![p(s)])
    }

    fn gb1(gens: &[&str]) -> GroebnerBasis {
        let g: Vec<PolyVector> = gens.iter().map(|s| v1(s)).collect();
        buchberger_basis(&g, 1, 2, MonomialOrder).unwrap()
    }

    // Plain saturation: add every nonzero S-remainder until none appear,
    // with naive division written independently of the engine.
    fn naive_divide(f: &Poly, gs: &[Poly]) -> Poly {
        let mut f = f.clone();
        let mut rem = Poly::zero(f.nvars());
        while let Some((m, c)) = f.leading_term().cloned() {
            let mut hit = false;
            for g in gs {
                let (gm, gc) = g.leading_term().unwrap();
                if gm.divides(&m) {
                    let q = Poly::term(gm.quotient_of(&m).unwrap(), &c / gc);
                    f = &f - &(&q * g);
                    hit = true;
                    break;
                }
            }
            if !hit {
                let t = Poly::term(m, c);
                rem = &rem + &t;
                f = &f - &t;
            }
        }
        rem
    }

    fn naive_basis(gens: &[Poly]) -> Vec<Poly> {
        let mut g: Vec<Poly> = gens.iter().filter(|x| !x.is_zero()).cloned().collect();
        loop {
            let mut added = None;
            'outer: for i in 0..g.len() {
                for j in i + 1..g.len() {
                    let (mi, ci) = g[i].leading_term().unwrap();
                    let (mj, cj) = g[j].leading_term().unwrap();
                    let l = mi.lcm(mj);
                    let s = &(&Poly::term(mi.quotient_of(&l).unwrap(), ci.recip()) * &g[i])
                        - &(&Poly::term(mj.quotient_of(&l).unwrap(), cj.recip()) * &g[j]);
                    let r = naive_divide(&s, &g);
                    if !r.is_zero() {
                        added = Some(r);
                        break 'outer;
                    }
                }
            }
            match added {
                Some(r) => g.push(r),
                None => break,
            }
        }
        // reduce: minimal, monic, tails reduced
        let mut minimal: Vec<Poly> = Vec::new();
        for (i, f) in g.iter().enumerate() {
            let m = &f.leading_term().unwrap().0;
            let dominated = g.iter().enumerate().any(|(j, h)| {
                let hm = &h.leading_term().unwrap().0;
                j != i && hm.divides(m) && (hm != m || j < i)
            });
            if !dominated {
                let c = f.leading_term().unwrap().1.recip();
                minimal.push(f.scale(&c));
            }
        }
        let mut out = Vec::new();
        for i in 0..minimal.len() {
            let others: Vec<Poly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, x)| x.clone())
                .collect();
            let lead = Poly::term(minimal[i].leading_term().unwrap().0.clone(), crate::ring::rational(1, 1));
            let tail = &minimal[i] - &lead;
            out.push(&lead + &naive_divide(&tail, &others));
        }
        out.sort_by(|a, b| b.leading_term().unwrap().0.cmp(&a.leading_term().unwrap().0));
        out
    }

    fn entries(gb: &GroebnerBasis) -> Vec<Poly> {
        gb.elements().iter().map(|v| v[0].clone()).collect()
    }

    #[test]
    fn basis_examples() {
        assert_eq!(entries(&gb1(&["x", "y"])), vec![p("x"), p("y")]);
        assert!(gb1(&[]).is_zero_module());
        let gens = ["x^2 - y*x", "x*y"];
        let oracle = naive_basis(&gens.iter().map(|s| p(s)).collect::<Vec<_>>());
        assert_eq!(entries(&gb1(&gens)), oracle);
    }

    #[test]
    fn basis_matches_oracle_on_mixed_ideals() {
        for gens in [
            vec!["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"],
            vec!["x^2 + y^2 - 1", "x - y"],
            vec!["x*y - 1", "y^2 - x", "x^3"],
        ] {
            let oracle = naive_basis(&gens.iter().map(|s| p(s)).collect::<Vec<_>>());
            assert_eq!(entries(&gb1(&gens)), oracle, "{gens:?}");
        }
    }

    #[test]
    fn normal_form_examples() {
        let gb = gb1(&["x", "y"]);
        assert!(normal_form(&v1("0"), &gb).unwrap().is_zero());
        assert!(normal_form(&v1("x^2 + y"), &gb).unwrap().is_zero());
        assert_eq!(normal_form(&v1("1"), &gb).unwrap(), v1("1"));
        assert!(normal_form(&PolyVector::zero(2, 2), &gb).is_err());
    }

    fn row(s: &[&str]) -> PolyMatrix {
        PolyMatrix::from_rows(2, vec![s.iter().map(|x| p(x)).collect()]).unwrap()
    }

    #[test]
    fn solve_examples() {
        let m = row(&["x", "y"]);
        assert!(solve_linear_over_ring(&m, &v1("0")).unwrap().unwrap().is_zero());
        let t = v1("x^2 + x*y");
        let u = solve_linear_over_ring(&m, &t).unwrap().unwrap();
        assert_eq!(m.apply(&u), t);
        assert!(solve_linear_over_ring(&m, &v1("1")).unwrap().is_none());
        assert!(solve_linear_over_ring(&m, &PolyVector::zero(2, 2)).is_err());
    }

    #[test]
    fn syzygy_examples() {
        assert!(syzygy_basis(&[v1("x")], 1, 2).unwrap().is_empty());

        let syz = syzygy_basis(&[v1("x"), v1("y")], 1, 2).unwrap();
        let koszul = PolyVector::from_entries(2, vec![p("y"), p("-x")]);
        let gb = buchberger_basis(&syz, 2, 2, MonomialOrder).unwrap();
        assert!(gb.contains(&koszul));
        let back = buchberger_basis(&[koszul], 2, 2, MonomialOrder).unwrap();
        assert!(syz.iter().all(|s| back.contains(s)));

        let syz = syzygy_basis(&[v1("x^2"), v1("x*y")], 1, 2).unwrap();
        assert_eq!(syz.len(), 1);
        let rel = PolyVector::from_entries(2, vec![p("y"), p("-x")]);
        let gb = buchberger_basis(&syz, 2, 2, MonomialOrder).unwrap();
        assert!(gb.contains(&rel));
    }

    #[test]
    fn module_solve_over_two_components() {
        // columns (x, 0), (y, x), (0, y) in A^2
        let m = PolyMatrix::from_rows(2, vec![vec![p("x"), p("y"), p("0")], vec![p("0"), p("x"), p("y")]])
            .unwrap();
        let t = PolyVector::from_entries(2, vec![p("x*y"), p("x^2 + y^2")]);
        let u = solve_linear_over_ring(&m, &t).unwrap().unwrap();
        assert_eq!(m.apply(&u), t);
        for s in ColumnSolver::new(&m).unwrap().kernel().unwrap() {
            assert!(m.apply(&s).is_zero());
        }
    }

    mod props {
        use super::*;
        use crate::ring::{rational, Monomial};
        use proptest::prelude::*;

        fn small_poly() -> impl Strategy<Value = Poly> {
            prop::collection::vec(((0u16..3, 0u16..3), -3i64..4), 0..4).prop_map(|ts| {
                Poly::from_terms(
                    2,
                    ts.into_iter()
                        .map(|((a, b), c)| (Monomial::from_exponents(&[a, b]), rational(c, 1))),
                )
            })
        }

        fn vec2() -> impl Strategy<Value = PolyVector> {
            (small_poly(), small_poly()).prop_map(|(a, b)| PolyVector::from_entries(2, vec![a, b]))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn nf_zero_iff_solvable(cols in prop::collection::vec(vec2(), 1..4), coeffs in prop::collection::vec(small_poly(), 4), noise in vec2(), inside in any::<bool>()) {
                let m = PolyMatrix::from_columns(2, 2, &cols);
                let mut t = PolyVector::zero(2, 2);
                for (c, k) in cols.iter().zip(&coeffs) {
                    t = t.add(&c.scale(k));
                }
                if !inside {
                    t = t.add(&noise);
                }
                let gb = buchberger_basis(&cols, 2, 2, MonomialOrder).unwrap();
                let nf_zero = normal_form(&t, &gb).unwrap().is_zero();
                let sol = solve_linear_over_ring(&m, &t).unwrap();
                prop_assert_eq!(nf_zero, sol.is_some());
                if let Some(u) = sol {
                    prop_assert_eq!(m.apply(&u), t);
                }
                if inside {
                    prop_assert!(nf_zero);
                }
            }

            #[test]
            fn syzygies_hold_and_capture_relations(base in prop::collection::vec(vec2(), 1..3), a in small_poly(), b in small_poly()) {
                // append a*c_0 + b*c_last so that (a, 0, ..., b, -1) is a relation by construction
                let k = base.len();
                let mut cols = base.clone();
                cols.push(base[0].scale(&a).add(&base[k - 1].scale(&b)));
                let mut rel = vec![Poly::zero(2); k + 1];
                rel[0] = &rel[0] + &a;
                rel[k - 1] = &rel[k - 1] + &b;
                rel[k] = Poly::from_int(2, -1);
                let rel = PolyVector::from_entries(2, rel);

                let syz = syzygy_basis(&cols, 2, 2).unwrap();
                let m = PolyMatrix::from_columns(2, 2, &cols);
                prop_assert!(m.apply(&rel).is_zero());
                for s in &syz {
                    prop_assert!(m.apply(s).is_zero());
                }
                let gb = buchberger_basis(&syz, cols.len(), 2, MonomialOrder).unwrap();
                prop_assert!(gb.contains(&rel));
            }

            #[test]
            fn deterministic(cols in prop::collection::vec(vec2(), 0..4)) {
                let a = buchberger_basis(&cols, 2, 2, MonomialOrder).unwrap();
                let b = buchberger_basis(&cols, 2, 2, MonomialOrder).unwrap();
                prop_assert_eq!(a, b);
            }
        }
    }
}

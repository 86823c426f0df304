use cliffhc_core::clifford::Clifford;
use cliffhc_core::exterior::{wedge, Multivector};
use cliffhc_core::lie_core::{build_algebra, langlands_dual, FormChoice, LieAlgebra};
use cliffhc_core::principal::{
    centralizer_dim, lemma_last_check, principal_grading, principal_tds, rho_contraction, verify_main2,
    LemmaLastOutcome,
};
use cliffhc_core::symmetric::{dynkin_space, invariant_generators, SymPolynomial};
use cliffhc_core::transgression::{
    check_invariant_algebra, clifford_square_check, gram_matrix, invariant_algebra, is_invariant, kernel_invariants,
    mv_rank, primitive_basis, s_map, transgress, transgress_with_pair, transgression_constant,
};
use cliffhc_core::Q;
use proptest::prelude::*;

fn alg(s: &str) -> LieAlgebra {
    build_algebra(&s.parse().unwrap(), FormChoice::MinimalTrace).unwrap()
}

fn q(n: i64) -> Q {
    Q::from_int(n)
}

#[test]
fn transgression_constants() {
    assert_eq!(transgression_constant(0), q(1));
    assert_eq!(transgression_constant(1), Q::frac(1, 6));
    assert_eq!(transgression_constant(2), Q::frac(4, 120));
}

#[test]
fn casimir_transgresses_to_the_fundamental_three_form() {
    let g = alg("A1");
    let f = &invariant_generators(&g).unwrap()[0];
    let p = transgress(&g, f, 1).unwrap();
    let (fv, h, e) = (Multivector::basis(3, 0), Multivector::basis(3, 1), Multivector::basis(3, 2));
    let ehf = wedge(&wedge(&e, &h), &fv);
    assert_eq!(p.len(), 1);
    assert_eq!(p.homogeneous_degree(), Some(3));
    assert!(!p.coeff(0b111).is_zero());
    assert_eq!(p, ehf.scale(&(p.coeff(0b111) / ehf.coeff(0b111))));
    assert!(transgress(&g, f, 2).is_err());
}

#[test]
fn decomposable_polynomials_transgress_to_zero() {
    for t in ["A2", "B2"] {
        let g = alg(t);
        let f1 = &invariant_generators(&g).unwrap()[0];
        assert!(transgress(&g, &f1.mul(f1), 3).unwrap().is_zero(), "{t}");
    }
}

#[test]
fn s_map_is_multiplicative() {
    let g = alg("A2");
    let gens = invariant_generators(&g).unwrap();
    let (a, b) = (&gens[0], &gens[1]);
    assert_eq!(s_map(&g, &a.mul(b)), wedge(&s_map(&g, a), &s_map(&g, b)));
    assert_eq!(s_map(&g, &SymPolynomial::one(8)), Multivector::one(8));
}

#[test]
fn transgression_does_not_depend_on_the_dual_pair() {
    for t in ["A1", "A2", "B2"] {
        let g = alg(t);
        let (basis, dual) = g.dual_bases();
        // swapping the roles gives another pair of dual bases because the form is symmetric
        for (m, f) in dynkin_space(&g, &invariant_generators(&g).unwrap()).unwrap().iter().enumerate() {
            let deg = f.homogeneous_degree().unwrap() - 1;
            let standard = transgress(&g, f, deg).unwrap();
            assert_eq!(transgress_with_pair(&g, &basis, &dual, f, deg).unwrap(), standard, "{t} {m}");
            assert_eq!(transgress_with_pair(&g, &dual, &basis, f, deg).unwrap(), standard, "{t} {m} swapped");
        }
    }
}

#[test]
fn primitive_bases() {
    for (t, d) in [("A1", vec![3]), ("A2", vec![3, 5]), ("B2", vec![3, 7]), ("A1+A1", vec![3, 3]), ("G2", vec![3, 11])]
    {
        let g = alg(t);
        let pb = primitive_basis(&g).unwrap();
        assert_eq!(pb.degrees(), d, "{t}");
        assert!(pb.elements.iter().all(|p| is_invariant(&g, p)), "{t}");
        assert!(pb.form.determinant() != q(0), "{t}");
        // orthogonalized along with the generators
        for i in 0..pb.rank() {
            for j in 0..pb.rank() {
                if i != j {
                    assert!(pb.form[(i, j)].is_zero(), "{t}");
                }
            }
        }
    }
}

#[test]
fn invariant_algebra_of_a2() {
    let g = alg("A2");
    let pb = primitive_basis(&g).unwrap();
    let ps = invariant_algebra(&pb);
    assert_eq!(ps.len(), 4);
    assert_eq!(ps.iter().map(|p| p.max_degree().unwrap()).max(), Some(8));
    check_invariant_algebra(&g, &ps).unwrap();
    let cl = Clifford::of_algebra(&g);
    assert!(!gram_matrix(cl.space(), &ps).determinant().is_zero());
    // oracle: brute-force kernel of all theta(x)
    let ker = kernel_invariants(&g);
    assert_eq!(ker.len(), 4);
    let mut both = ker.clone();
    both.extend(ps);
    assert_eq!(mv_rank(&both), 4);
}

#[test]
fn primitive_square_law() {
    let g = alg("A1");
    let cl = Clifford::of_algebra(&g);
    let p = &primitive_basis(&g).unwrap().elements[0];
    let sq = clifford_square_check(&cl, p, &q(1));
    assert!(sq.holds());
    let pp = cliffhc_core::exterior::extended_form(cl.space(), p, p);
    assert_eq!(sq.scalar(), Some(-pp));
    for t in ["A2", "B2"] {
        let g = alg(t);
        let cl = Clifford::of_algebra(&g);
        let pb = primitive_basis(&g).unwrap();
        for p in &pb.elements {
            assert!(clifford_square_check(&cl, p, &q(1)).holds(), "{t}");
        }
        // distinct primitives anticommute
        let (a, b) = (&pb.elements[0], &pb.elements[1]);
        assert!(cl.mul(a, b, &q(1)).add(&cl.mul(b, a, &q(1))).is_zero(), "{t}");
    }
}

#[test]
fn principal_triples() {
    for t in ["A1", "A2", "B2", "G2"] {
        let gd = langlands_dual(&alg(t)).unwrap();
        let tds = principal_tds(&gd).unwrap();
        assert_eq!(centralizer_dim(&gd, &tds), gd.rank(), "{t}");
    }
    let g = alg("A1");
    let tds = principal_tds(&g).unwrap();
    assert_eq!(tds.e0, g.unit(g.x(0)));
    assert_eq!(tds.h0, g.unit(g.h(0)));
    assert_eq!(tds.f0, g.unit(g.y(0)));
}

#[test]
fn principal_grading_pieces() {
    for (t, expect) in [("A2", vec![(1, 1), (2, 1)]), ("A1+A1", vec![(1, 2)]), ("G2", vec![(1, 1), (5, 1)])] {
        let g = alg(t);
        let gd = langlands_dual(&g).unwrap();
        let tds = principal_tds(&gd).unwrap();
        let ex = g.exponents_from_heights();
        let pieces = principal_grading(&gd, &tds, &ex).unwrap();
        let dims: Vec<_> = pieces.iter().map(|(m, b)| (*m, b.len())).collect();
        assert_eq!(dims, expect, "{t}");
        // the degree-3 piece is the line through 2 rho_check of the dual
        let (_, rc) = gd.rho_and_rho_check();
        assert!(pieces[0].1.iter().any(|v| cliffhc_core::linalg::proportional(v, &rc).is_some()) || t == "A1+A1");
    }
    let g = alg("A2");
    let gd = langlands_dual(&g).unwrap();
    let tds = principal_tds(&gd).unwrap();
    let pieces = principal_grading(&gd, &tds, &[1, 2]).unwrap();
    let gram = gd.cartan_form();
    assert!(cliffhc_core::linalg::bilinear(&gram, &pieces[0].1[0], &pieces[1].1[0]).is_zero());
    assert!(principal_grading(&gd, &tds, &[1, 1]).is_err());
}

#[test]
fn grading_reports() {
    for t in ["A1", "A2", "B2", "G2", "A1+A1"] {
        let g = alg(t);
        let pb = primitive_basis(&g).unwrap();
        let rep = verify_main2(&g, &pb).unwrap();
        assert!(rep.degrees.iter().all(|d| d.spans_equal), "{t}");
        assert!(rep.phi_images_orthogonal && rep.pieces_orthogonal && rep.phi_images_degree_one, "{t}");
        assert!(rep.rho_in_degree_three, "{t}");
    }
    let b2 = alg("B2");
    let rep = verify_main2(&b2, &primitive_basis(&b2).unwrap()).unwrap();
    assert_eq!(rep.dual, "C2");
    assert!(!rep.rho_parallel_to_rho_check);
}

#[test]
fn rho_contractions() {
    let g = alg("A2");
    let gens = dynkin_space(&g, &invariant_generators(&g).unwrap()).unwrap();
    let h = rho_contraction(&g, &gens[0], 1).unwrap();
    let (rho, _) = g.rho_and_rho_check();
    assert!(cliffhc_core::linalg::proportional(&h, &rho).is_some());
    assert!(rho_contraction(&g, &gens[1], 1).is_err());
}

#[test]
fn lemma_last_outcomes() {
    let g = alg("A2");
    let gens = dynkin_space(&g, &invariant_generators(&g).unwrap()).unwrap();
    assert_eq!(lemma_last_check(&g, &gens).unwrap(), LemmaLastOutcome::Checked(vec![true, true]));
    for t in ["B2", "G2"] {
        let g = alg(t);
        let gens = dynkin_space(&g, &invariant_generators(&g).unwrap()).unwrap();
        match lemma_last_check(&g, &gens).unwrap() {
            LemmaLastOutcome::HypothesisNotMet(why) => assert!(why.contains("not orthogonal"), "{t}: {why}"),
            other => panic!("{t}: {other:?}"),
        }
    }
}

fn sym(nvars: usize, deg: usize) -> impl Strategy<Value = SymPolynomial> {
    prop::collection::vec((prop::collection::vec(0usize..nvars, deg), -3i64..=3), 1..4).prop_map(move |ts| {
        let mut p = SymPolynomial::zero(nvars);
        for (vars, c) in ts {
            let mut e = vec![0u8; nvars];
            for v in vars {
                e[v] += 1;
            }
            p.add_term(e, Q::from_int(c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn s_is_an_algebra_map(a in sym(8, 2), b in sym(8, 1)) {
        let g = alg("A2");
        prop_assert_eq!(s_map(&g, &a.mul(&b)), wedge(&s_map(&g, &a), &s_map(&g, &b)));
    }

    #[test]
    fn transgression_is_linear(a in sym(8, 3), b in sym(8, 3), c in -3i64..=3) {
        let g = alg("A2");
        let lhs = transgress(&g, &a.add(&b.scale(&Q::from_int(c))), 2).unwrap();
        let rhs = transgress(&g, &a, 2).unwrap().add(&transgress(&g, &b, 2).unwrap().scale(&Q::from_int(c)));
        prop_assert_eq!(lhs, rhs);
    }
}

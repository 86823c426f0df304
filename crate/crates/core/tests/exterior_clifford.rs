use cliffhc_core::clifford::{delta, delta_on_pbw, taylor_decompose, taylor_evaluate, Clifford};
use cliffhc_core::enveloping::{Enveloping, PbwElement};
use cliffhc_core::exterior::{
    coboundary, contract_basis, extended_form, koszul_d, theta, theta_vec, wedge, Multivector, QuadSpace,
};
use cliffhc_core::lie_core::{build_algebra, FormChoice, LieAlgebra};
use cliffhc_core::Q;
use proptest::prelude::*;

fn alg(s: &str) -> LieAlgebra {
    build_algebra(&s.parse().unwrap(), FormChoice::MinimalTrace).unwrap()
}

fn q(n: i64) -> Q {
    Q::from_int(n)
}

/// (f, h, e) of A1 as multivectors.
fn feh() -> (LieAlgebra, Multivector, Multivector, Multivector) {
    let g = alg("A1");
    (g, Multivector::basis(3, 0), Multivector::basis(3, 1), Multivector::basis(3, 2))
}

/// Sign of a permutation by counting inversions.
fn inversion_sign(p: &[usize]) -> Q {
    let inv = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    Q::sign(inv)
}

#[test]
fn wedge_examples() {
    let (_, f, h, e) = feh();
    assert!(wedge(&e, &e).is_zero());
    assert_eq!(wedge(&e, &h), wedge(&h, &e).neg());
    let ehf = wedge(&wedge(&e, &h), &f);
    // e∧h∧f in frozen order (f, h, e) is the permutation (2,1,0)
    assert_eq!(ehf, Multivector::blade(3, 0b111, inversion_sign(&[2, 1, 0])));
}

#[test]
fn wedge_sign_matches_inversion_count() {
    let dim = 6;
    let idx = [4usize, 1, 5, 0, 3];
    let w = idx.iter().fold(Multivector::one(dim), |acc, &i| wedge(&acc, &Multivector::basis(dim, i)));
    let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
    assert_eq!(w, Multivector::blade(dim, mask, inversion_sign(&idx)));
}

#[test]
fn contraction_examples() {
    let (g, f, h, e) = feh();
    let sp = QuadSpace::of_algebra(&g);
    let ehf = wedge(&wedge(&e, &h), &f);
    // iota(f)(e∧h∧f) = (f,e) h∧f
    assert_eq!(contract_basis(&sp, 0, &ehf), wedge(&h, &f));
    assert!(contract_basis(&sp, 1, &Multivector::one(3)).is_zero());
    assert_eq!(extended_form(&sp, &wedge(&e, &f), &wedge(&e, &f)), q(-1));
    assert_eq!(extended_form(&sp, &Multivector::one(3), &Multivector::one(3)), q(1));
    assert_eq!(extended_form(&sp, &e, &h), q(0));
}

#[test]
fn theta_and_coboundary_examples() {
    let (g, f, h, e) = feh();
    assert!(theta(&g, 1, &wedge(&e, &f)).is_zero());
    assert!(theta(&g, 2, &Multivector::one(3)).is_zero());
    let ehf = wedge(&wedge(&e, &h), &f);
    for x in 0..3 {
        assert!(theta(&g, x, &ehf).is_zero());
    }
    // d(h) = 1/2 (f∧[e,h] + (h/2)∧[h,h] + e∧[f,h]) with [e,h] = -2e, [f,h] = 2f
    let oracle = wedge(&f, &e.scale(&q(-2))).add(&wedge(&e, &f.scale(&q(2)))).scale(&Q::frac(1, 2));
    assert_eq!(coboundary(&g, 1), oracle);
    assert_eq!(coboundary(&g, 1), wedge(&e, &f).scale(&q(2)));
}

#[test]
fn coboundary_is_equivariant_and_squares_to_zero() {
    for t in ["A2", "B2"] {
        let g = alg(t);
        let n = g.dim();
        for y in 0..n {
            for x in 0..n {
                let lhs = theta(&g, y, &coboundary(&g, x));
                let br = g.bracket(&g.unit(y), &g.unit(x));
                let mut rhs = Multivector::zero(n);
                for (c, v) in br.iter().enumerate() {
                    if !v.is_zero() {
                        rhs = rhs.add(&coboundary(&g, c).scale(v));
                    }
                }
                assert_eq!(lhs, rhs, "{t}");
            }
        }
        for m in [0b1u64, 0b101, 0b1110, 0b10011] {
            let u = Multivector::blade(n, m, q(1));
            assert!(koszul_d(&g, &koszul_d(&g, &u)).is_zero(), "{t} d^2");
        }
    }
}

#[test]
fn clifford_examples() {
    let (g, f, _, e) = feh();
    let cl = Clifford::of_algebra(&g);
    let one = q(1);
    assert_eq!(cl.mul(&e, &f, &one), wedge(&e, &f).add(&Multivector::one(3)));
    assert_eq!(cl.mul(&f, &e, &one), wedge(&e, &f).neg().add(&Multivector::one(3)));
    assert_eq!(cl.mul(&e, &f, &one).add(&cl.mul(&f, &e, &one)), Multivector::scalar(3, q(2)));
    // Taylor coefficients for (e, f)
    let us = taylor_decompose(&cl, &e, &f).unwrap();
    assert_eq!(us[0], wedge(&e, &f));
    assert_eq!(us[1], Multivector::one(3));
    let us = taylor_decompose(&cl, &Multivector::scalar(3, q(5)), &f).unwrap();
    assert!(us[1..].iter().all(|u| u.is_zero()));
}

#[test]
fn beta_wedge_examples() {
    let (g, f, h, e) = feh();
    let cl = Clifford::of_algebra(&g);
    let one = q(1);
    let ef = wedge(&e, &f);
    let half_comm = cl.mul(&e, &f, &one).sub(&cl.mul(&f, &e, &one)).scale(&Q::frac(1, 2));
    assert_eq!(cl.beta_wedge(&ef, &one).unwrap(), half_comm);
    assert_eq!(half_comm, ef);
    assert_eq!(cl.beta_wedge(&h, &one).unwrap(), h);
    // h1, h2 and e1 - f1 are pairwise orthogonal
    let g = alg("A1+A1");
    let cl = Clifford::of_algebra(&g);
    let x = Multivector::basis(6, g.h(0));
    let y = Multivector::basis(6, g.h(1));
    let z = Multivector::basis(6, g.x(0)).sub(&Multivector::basis(6, g.y(0)));
    let xyz = wedge(&wedge(&x, &y), &z);
    assert_eq!(cl.beta_wedge(&xyz, &one).unwrap(), cl.product(&[x, y, z], &one));
}

#[test]
fn delta_examples() {
    let (g, f, _, e) = feh();
    let cl = Clifford::of_algebra(&g);
    let one = q(1);
    assert_eq!(delta(&g, &cl, 1, &one), wedge(&e, &f));
    for t in ["A2", "B2"] {
        let g = alg(t);
        let cl = Clifford::of_algebra(&g);
        for x in 0..g.dim() {
            for hb in [q(0), q(1), q(2), Q::frac(1, 2)] {
                let d = delta(&g, &cl, x, &hb);
                assert_eq!(d, coboundary(&g, x).scale(&Q::frac(1, 2)), "{t}");
            }
        }
    }
    let u = Enveloping::new(&g);
    assert_eq!(delta_on_pbw(&g, &cl, &PbwElement::one(3), &one).unwrap(), Multivector::one(3));
    let dh = delta(&g, &cl, 1, &one);
    let hh = PbwElement::monomial(vec![0, 2, 0], q(1));
    assert_eq!(delta_on_pbw(&g, &cl, &hh, &one).unwrap(), cl.mul(&dh, &dh, &one));
    let ef = u.word(&[2, 0]);
    let fe = u.word(&[0, 2]);
    let lhs = delta_on_pbw(&g, &cl, &ef, &one).unwrap().sub(&delta_on_pbw(&g, &cl, &fe, &one).unwrap());
    assert_eq!(lhs, dh);
}

fn mv(dim: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec((0u64..1 << dim, -3i64..=3), 1..5)
        .prop_map(move |ts| Multivector::from_terms(dim, ts.into_iter().map(|(m, c)| (m, Q::from_int(c)))))
}

/// Homogeneous multivector of a random degree.
fn hmv(dim: usize) -> impl Strategy<Value = Multivector> {
    (0..=dim).prop_flat_map(move |k| {
        let blades: Vec<u64> = (0u64..1 << dim).filter(|m| m.count_ones() as usize == k).collect();
        prop::collection::vec((prop::sample::select(blades), -3i64..=3), 1..4)
            .prop_map(move |ts| Multivector::from_terms(dim, ts.into_iter().map(|(m, c)| (m, Q::from_int(c)))))
    })
}

fn hbar() -> impl Strategy<Value = Q> {
    (-3i64..=3, 1i64..=3).prop_map(|(n, d)| Q::frac(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn clifford_is_associative(a in mv(8), b in mv(8), c in mv(8), h in hbar()) {
        let g = alg("A2");
        let cl = Clifford::of_algebra(&g);
        prop_assert_eq!(cl.mul(&cl.mul(&a, &b, &h), &c, &h), cl.mul(&a, &cl.mul(&b, &c, &h), &h));
    }

    #[test]
    fn hbar_zero_is_wedge(a in mv(10), b in mv(10)) {
        let g = alg("B2");
        let cl = Clifford::of_algebra(&g);
        prop_assert_eq!(cl.mul(&a, &b, &Q::zero()), wedge(&a, &b));
    }

    #[test]
    fn fast_product_matches_reference(a in mv(8), b in mv(8), h in hbar()) {
        let g = alg("A2");
        let cl = Clifford::of_algebra(&g);
        prop_assert_eq!(cl.mul(&a, &b, &h), cl.mul_ref(&a, &b, &h));
    }

    #[test]
    fn vectors_satisfy_clifford_relation(x in 0usize..8, y in 0usize..8, h in hbar()) {
        let g = alg("A2");
        let cl = Clifford::of_algebra(&g);
        let (u, v) = (Multivector::basis(8, x), Multivector::basis(8, y));
        let s = cl.mul(&u, &v, &h).add(&cl.mul(&v, &u, &h));
        prop_assert_eq!(s, Multivector::scalar(8, &(&h * q(2)) * &g.form()[(x, y)]));
    }

    #[test]
    fn taylor_interpolates(a in hmv(8), b in hmv(8), h in hbar()) {
        let g = alg("A2");
        let cl = Clifford::of_algebra(&g);
        let us = taylor_decompose(&cl, &a, &b).unwrap();
        prop_assert_eq!(taylor_evaluate(&us, &h), cl.mul(&a, &b, &h));
    }

    #[test]
    fn contraction_is_a_superderivation(a in mv(8), b in mv(8), x in 0usize..8, h in hbar()) {
        let g = alg("A2");
        let cl = Clifford::of_algebra(&g);
        let sp = cl.space().clone();
        // odd and even parts separately
        for (ap, sign) in [(a.scale_by_degree(|d| if d % 2 == 0 { q(1) } else { q(0) }), q(1)),
                           (a.scale_by_degree(|d| if d % 2 == 1 { q(1) } else { q(0) }), q(-1))] {
            let lhs = contract_basis(&sp, x, &cl.mul(&ap, &b, &h));
            let rhs = cl.mul(&contract_basis(&sp, x, &ap), &b, &h).add(&cl.mul(&ap, &contract_basis(&sp, x, &b), &h).scale(&sign));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn contractions_anticommute(u in mv(8), x in 0usize..8, y in 0usize..8) {
        let g = alg("A2");
        let sp = QuadSpace::of_algebra(&g);
        let a = contract_basis(&sp, x, &contract_basis(&sp, y, &u));
        let b = contract_basis(&sp, y, &contract_basis(&sp, x, &u));
        prop_assert!(a.add(&b).is_zero());
    }

    #[test]
    fn beta_wedge_is_identity_on_carrier(u in mv(8).prop_filter("degree <= 7", |u| u.coeff(0xff).is_zero()), h in hbar()) {
        let g = alg("A2");
        let cl = Clifford::of_algebra(&g);
        prop_assert_eq!(cl.beta_wedge(&u, &h).unwrap(), u);
        // the permutation sum stops at degree 7
        prop_assert!(cl.beta_wedge(&Multivector::blade(8, 0xff, Q::one()), &h).is_err());
    }

    #[test]
    fn theta_is_a_derivation(a in mv(8), b in mv(8), x in 0usize..8) {
        let g = alg("A2");
        let lhs = theta(&g, x, &wedge(&a, &b));
        let rhs = wedge(&theta(&g, x, &a), &b).add(&wedge(&a, &theta(&g, x, &b)));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(theta_vec(&g, &g.unit(x), &a), theta(&g, x, &a));
    }
}

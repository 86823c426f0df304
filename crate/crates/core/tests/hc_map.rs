use cliffhc_core::clifford::delta;
use cliffhc_core::enveloping::PbwElement;
use cliffhc_core::exterior::{wedge, Multivector};
use cliffhc_core::hc_map::{phi0, zero_weight_blades, HcMap, RMatrixOperator};
use cliffhc_core::lie_core::{build_algebra, FormChoice, LieAlgebra};
use cliffhc_core::transgression::{invariant_algebra, primitive_basis};
use cliffhc_core::Q;
use proptest::prelude::*;

fn alg(s: &str) -> LieAlgebra {
    build_algebra(&s.parse().unwrap(), FormChoice::MinimalTrace).unwrap()
}

fn q(n: i64) -> Q {
    Q::from_int(n)
}

fn ehf() -> Multivector {
    let (f, h, e) = (Multivector::basis(3, 0), Multivector::basis(3, 1), Multivector::basis(3, 2));
    wedge(&wedge(&e, &h), &f)
}

#[test]
fn chevalley_projection_on_the_exterior_algebra() {
    let g = alg("A1");
    assert!(phi0(&g, &ehf()).is_zero());
    assert_eq!(phi0(&g, &Multivector::basis(3, 1)), Multivector::basis(1, 0));
    let g = alg("A2");
    let ps = invariant_algebra(&primitive_basis(&g).unwrap());
    assert_eq!(phi0(&g, &ps[0]), Multivector::one(2));
    assert!(ps[1..].iter().all(|p| phi0(&g, p).is_zero()));
}

#[test]
fn rmatrix_examples() {
    let g = alg("A1");
    let hc = HcMap::new(&g);
    let h = Multivector::basis(3, 1);
    assert_eq!(hc.iota_r(&ehf()), h.neg());
    assert!(hc.iota_r(&h).is_zero());
    assert!(hc.iota_r(&hc.iota_r(&ehf())).is_zero());
    let g = alg("A2");
    let hc = HcMap::new(&g);
    for m in 0..1u64 << 2 {
        let u = hc.lift_cartan(&Multivector::blade(2, m, q(1)));
        assert!(hc.iota_r(&u).is_zero());
    }
    assert!(RMatrixOperator::with_order(&g, &[0, 0, 1]).is_err());
    assert!(RMatrixOperator::with_order(&g, &[0, 1]).is_err());
    assert!(RMatrixOperator::with_order(&g, &[2, 0, 1]).is_ok());
}

#[test]
fn phi_examples() {
    let g = alg("A1");
    let hc = HcMap::new(&g);
    let one = q(1);
    assert_eq!(hc.phi(&ehf(), &one), Multivector::basis(1, 0).neg());
    assert_eq!(hc.phi_normal_order(&ehf(), &one), Multivector::basis(1, 0).neg());
    let dh = delta(&g, hc.clifford(), 1, &one);
    assert_eq!(hc.phi(&dh, &one), Multivector::one(1));
    for t in ["A2", "B2", "G2"] {
        let g = alg(t);
        let hc = HcMap::new(&g);
        for hb in [q(0), q(1), q(2), Q::frac(1, 2)] {
            for m in 0..1u64 << g.rank() {
                let u = Multivector::blade(g.rank(), m, q(3));
                assert_eq!(hc.phi(&hc.lift_cartan(&u), &hb), u, "{t}");
                assert_eq!(hc.phi_normal_order(&hc.lift_cartan(&u), &hb), u, "{t}");
            }
        }
    }
}

#[test]
fn composition_examples() {
    let g = alg("A1");
    let hc = HcMap::new(&g);
    let (l, r) = hc.phi_compose_delta(&PbwElement::basis(3, 1), &q(1)).unwrap();
    assert_eq!((l, r.clone()), (Multivector::one(1), q(1)));
    let (l, r) = hc.phi_compose_delta(&PbwElement::one(3), &q(1)).unwrap();
    assert_eq!((l, r), (Multivector::one(1), q(1)));
    let hh = PbwElement::monomial(vec![0, 2, 0], q(1));
    let (l, r) = hc.phi_compose_delta(&hh, &q(2)).unwrap();
    assert_eq!(r, q(4));
    assert_eq!(l, Multivector::scalar(1, q(4)));
}

#[test]
fn triangular_coordinates_reconstruct_the_input() {
    let g = alg("A2");
    let hc = HcMap::new(&g);
    let u = Multivector::from_terms(8, [(0b1011_0110, q(2)), (0b0111, q(-1)), (0b1000_0001, Q::frac(1, 3))]);
    for hb in [q(1), Q::frac(1, 2)] {
        let coords = hc.triangular_coordinates(&u, &hb);
        assert!(!coords.is_empty());
        assert_eq!(hc.phi_normal_order(&u, &hb), hc.phi_rmatrix(&u, &hb));
    }
}

fn mv(dim: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec((0u64..1 << dim, -3i64..=3, 1i64..=3), 1..6)
        .prop_map(move |ts| Multivector::from_terms(dim, ts.into_iter().map(|(m, n, d)| (m, Q::frac(n, d)))))
}

fn hbar() -> impl Strategy<Value = Q> {
    (-3i64..=3, 1i64..=3).prop_map(|(n, d)| Q::frac(n, d))
}

fn weight_zero(g: &LieAlgebra) -> impl Strategy<Value = Multivector> {
    let zw = zero_weight_blades(g);
    let dim = g.dim();
    prop::collection::vec((prop::sample::select(zw), -3i64..=3), 1..4)
        .prop_map(move |ts| Multivector::from_terms(dim, ts.into_iter().map(|(m, c)| (m, Q::from_int(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn routes_agree_a2(u in mv(8), h in hbar()) {
        let g = alg("A2");
        let hc = HcMap::new(&g);
        prop_assert_eq!(hc.phi_rmatrix(&u, &h), hc.phi_normal_order(&u, &h));
    }

    #[test]
    fn routes_agree_b2(u in mv(10), h in hbar()) {
        let g = alg("B2");
        let hc = HcMap::new(&g);
        prop_assert_eq!(hc.phi_rmatrix(&u, &h), hc.phi_normal_order(&u, &h));
    }

    #[test]
    fn rmatrix_order_does_not_matter(u in mv(10), perm in Just(vec![3usize, 1, 0, 2]).prop_shuffle(), h in hbar()) {
        let g = alg("B2");
        let hc = HcMap::new(&g);
        let op = RMatrixOperator::with_order(&g, &perm).unwrap();
        prop_assert_eq!(hc.phi_rmatrix_with(&op, &u, &h), hc.phi_rmatrix(&u, &h));
    }

    #[test]
    fn phi_is_multiplicative_on_weight_zero(
        u in weight_zero(&alg("A2")), v in weight_zero(&alg("A2")), h in hbar()
    ) {
        let g = alg("A2");
        let hc = HcMap::new(&g);
        let lhs = hc.phi(&hc.clifford().mul(&u, &v, &h), &h);
        let rhs = hc.cartan_clifford().mul(&hc.phi(&u, &h), &hc.phi(&v, &h), &h);
        prop_assert_eq!(lhs, rhs);
    }
}

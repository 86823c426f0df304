use cliffhc_core::lie_core::{build_algebra, FormChoice, LieAlgebra};
use cliffhc_core::verify::{default_hbars, run, Suite, SweepPolicy, Verifier};
use cliffhc_core::Q;

fn alg(s: &str) -> LieAlgebra {
    build_algebra(&s.parse().unwrap(), FormChoice::MinimalTrace).unwrap()
}

fn small() -> SweepPolicy {
    SweepPolicy {
        element_limit: 256,
        pair_limit: 4096,
        samples: 64,
        pair_samples: 512,
        pbw_degree: 3,
        ..Default::default()
    }
}

#[test]
fn suites_parse() {
    for s in ["main1", "main2", "lemmas", "all"] {
        assert_eq!(s.parse::<Suite>().unwrap().to_string(), s);
    }
    assert!("main3".parse::<Suite>().is_err());
}

#[test]
fn small_algebras_pass_everything() {
    for t in ["A1", "A2", "A1+A1"] {
        let g = alg(t);
        let rep = run(&g, Suite::All, default_hbars(), SweepPolicy::default()).unwrap();
        let bad: Vec<_> = rep.failures().map(|a| a.id.clone()).collect();
        assert!(rep.passed, "{t}: {bad:?}");
        assert!(rep.get("main1/phi-injective@hbar=1").is_some());
        assert!(rep.get("main1/phi-injective@hbar=0").is_none());
        assert!(rep.get("lemma/route-equivalence").is_some());
    }
}

#[test]
fn reports_are_deterministic() {
    let g = alg("A2");
    let a = run(&g, Suite::All, default_hbars(), small()).unwrap().to_json();
    let b = run(&g, Suite::All, default_hbars(), small()).unwrap().to_json();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], "cliffhc-report/1");
    assert_eq!(v["hbar"], serde_json::json!(["0", "1", "2", "1/2"]));
    let ids: Vec<&str> = v["assertions"].as_array().unwrap().iter().map(|a| a["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted);
}

#[test]
fn main2_passes_on_rank_two() {
    for t in ["B2", "G2"] {
        let g = alg(t);
        let rep = run(&g, Suite::Main2, default_hbars(), small()).unwrap();
        assert!(rep.passed, "{t}: {:?}", rep.failures().map(|a| &a.id).collect::<Vec<_>>());
        let own = rep.get("main2/discriminates-own-grading").unwrap();
        assert!(own.passed);
    }
}

#[test]
fn closed_formula_constants_on_b2() {
    // the normalized constants exist only where the rho-contraction is a multiple of rho
    let g = alg("B2");
    let v = Verifier::new(&g, vec![Q::one()], small()).unwrap();
    let rep = v.run(Suite::Lemmas).unwrap();
    let a = rep.get("lemma/closed-formula").unwrap();
    assert!(!a.passed);
    assert_eq!(a.detail["constants"], serde_json::json!(["1", null]));
    let second = &a.detail["per_generator"][1];
    assert_eq!(second["rho_contraction"], serde_json::json!(["27/16", "-3/8"]));
    assert_eq!(second["value_at_rho"], "21/16");
    assert_eq!(second["vanishing_representative"]["constant"], "1/6");
    let others: Vec<_> = rep.failures().map(|a| a.id.as_str()).filter(|id| *id != "lemma/closed-formula").collect();
    assert!(others.is_empty(), "{others:?}");
}

#[test]
fn closed_formula_holds_on_a2() {
    let g = alg("A2");
    let rep = run(&g, Suite::Lemmas, vec![Q::one()], small()).unwrap();
    let a = rep.get("lemma/closed-formula").unwrap();
    assert!(a.passed, "{}", a.detail);
    assert_eq!(a.detail["constants"], serde_json::json!(["1", "1/2"]));
}

#[test]
fn explicit_generators_must_be_invariant() {
    use cliffhc_core::symmetric::SymPolynomial;
    let g = alg("A1");
    let bad = SymPolynomial::var(3, 0).mul(&SymPolynomial::var(3, 0));
    assert!(Verifier::with_generators(&g, &[bad], default_hbars(), small()).is_err());
}

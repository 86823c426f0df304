//! Verification suites: every check becomes a keyed assertion in a deterministic report.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::clifford::{delta, delta_on_pbw, taylor_decompose, taylor_evaluate, Clifford};
use crate::enveloping::{monomials_up_to, Enveloping, PbwElement, WordHc};
use crate::error::{Error, Result};
use crate::exterior::{contract_basis, extended_form, Mask, Multivector, QuadSpace};
use crate::hc_map::{blade_weight, zero_weight_blades, HcMap, RMatrixOperator};
use crate::lie_core::{build_algebra, dual_identification, langlands_dual, FormChoice, LieAlgebra};
use crate::linalg::{self, Matrix};
use crate::principal::{
    ad_power_on_cartan, centralizer_dim, lemma_last_check, principal_grading, principal_tds, rho_contraction,
    verify_main2, LemmaLastOutcome,
};
use crate::rational::Q;
use crate::symmetric::{chevalley_projection, iota_s, shifted_reflection, weyl_act, SymPolynomial};
use crate::transgression::{
    alpha, check_invariant_algebra, gram_matrix, invariant_algebra, is_invariant, kernel_invariants, mv_rank,
    primitive_basis, primitive_basis_from, transgress_with, transgression_constant, SMap,
};

pub const REPORT_SCHEMA: &str = "cliffhc-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Main1,
    Main2,
    Lemmas,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "main1" => Ok(Suite::Main1),
            "main2" => Ok(Suite::Main2),
            "lemmas" => Ok(Suite::Lemmas),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite '{s}' (main1, main2, lemmas, all)"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Main1 => "main1",
            Suite::Main2 => "main2",
            Suite::Lemmas => "lemmas",
            Suite::All => "all",
        })
    }
}

pub fn default_hbars() -> Vec<Q> {
    vec![Q::zero(), Q::one(), Q::from_int(2), Q::frac(1, 2)]
}

/// When a sweep is exhaustive and how it is sampled otherwise.
#[derive(Clone, Debug, Serialize)]
pub struct SweepPolicy {
    /// Single-element sweeps are exhaustive up to this many elements.
    pub element_limit: usize,
    /// Pair sweeps are exhaustive up to this many pairs.
    pub pair_limit: usize,
    /// Sample size when a single-element sweep is not exhaustive, and random multivectors per route check.
    pub samples: usize,
    /// Sample size when a pair sweep is not exhaustive.
    pub pair_samples: usize,
    pub seed: u64,
    /// Maximal PBW degree for the composition identity.
    pub pbw_degree: usize,
}

impl Default for SweepPolicy {
    fn default() -> Self {
        SweepPolicy {
            element_limit: 1 << 14,
            pair_limit: 1 << 20,
            samples: 1000,
            pair_samples: 20_000,
            seed: 0x5eed_c11f,
            pbw_degree: 4,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub id: String,
    pub anchor: String,
    pub statement: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: String,
    pub algebra: String,
    pub form: String,
    pub suite: String,
    pub hbar: Vec<String>,
    pub sweep: SweepPolicy,
    pub passed: bool,
    pub assertions: Vec<Assertion>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.passed)
    }

    pub fn get(&self, id: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn hb(q: &Q) -> String {
    format!("hbar={q}")
}

fn mvj(u: &Multivector) -> Value {
    serde_json::to_value(u.to_json()).expect("multivector serializes")
}

fn vecj(v: &[Q]) -> Value {
    json!(v.iter().map(|q| q.to_string()).collect::<Vec<_>>())
}

/// Sweep over `0..n` exhaustively or by a seeded sample.
fn sweep_indices(n: u64, limit: usize, samples: usize, rng: &mut ChaCha8Rng) -> (bool, Vec<u64>) {
    if n <= limit as u64 {
        (true, (0..n).collect())
    } else {
        (false, (0..samples).map(|_| rng.gen_range(0..n)).collect())
    }
}

fn sweep_pairs(items: &[u64], limit: usize, samples: usize, rng: &mut ChaCha8Rng) -> (bool, Vec<(u64, u64)>) {
    let n = items.len();
    if n * n <= limit {
        (true, items.iter().flat_map(|&a| items.iter().map(move |&b| (a, b))).collect())
    } else {
        (false, (0..samples).map(|_| (items[rng.gen_range(0..n)], items[rng.gen_range(0..n)])).collect())
    }
}

/// Random sparse multivector with small rational coefficients.
pub fn random_multivector(dim: usize, rng: &mut ChaCha8Rng, max_terms: usize) -> Multivector {
    let k = rng.gen_range(1..=max_terms);
    let terms: Vec<(Mask, Q)> = (0..k)
        .map(|_| {
            let m = rng.gen_range(0..1u64 << dim);
            (m, Q::frac(rng.gen_range(-5..=5), rng.gen_range(1..=4)))
        })
        .collect();
    Multivector::from_terms(dim, terms)
}

pub struct Verifier<'g> {
    g: &'g LieAlgebra,
    hc: HcMap<'g>,
    pb: crate::transgression::PrimitiveBasis,
    ps: Vec<Multivector>,
    hbars: Vec<Q>,
    policy: SweepPolicy,
    rng: ChaCha8Rng,
    out: Vec<Assertion>,
}

impl<'g> Verifier<'g> {
    pub fn new(g: &'g LieAlgebra, hbars: Vec<Q>, policy: SweepPolicy) -> Result<Self> {
        if hbars.is_empty() {
            return Err(Error::Parse("empty hbar list".into()));
        }
        Self::with_primitive(g, primitive_basis(g)?, hbars, policy)
    }

    /// Start from already computed (e.g. cached) Dynkin generators.
    pub fn with_generators(
        g: &'g LieAlgebra,
        gens: &[SymPolynomial],
        hbars: Vec<Q>,
        policy: SweepPolicy,
    ) -> Result<Self> {
        Self::with_primitive(g, primitive_basis_from(g, gens)?, hbars, policy)
    }

    fn with_primitive(
        g: &'g LieAlgebra,
        pb: crate::transgression::PrimitiveBasis,
        hbars: Vec<Q>,
        policy: SweepPolicy,
    ) -> Result<Self> {
        if hbars.is_empty() {
            return Err(Error::Parse("empty hbar list".into()));
        }
        let ps = invariant_algebra(&pb);
        let rng = ChaCha8Rng::seed_from_u64(policy.seed);
        Ok(Verifier { g, hc: HcMap::new(g), pb, ps, hbars, policy, rng, out: Vec::new() })
    }

    pub fn primitive(&self) -> &crate::transgression::PrimitiveBasis {
        &self.pb
    }

    pub fn hc(&self) -> &HcMap<'g> {
        &self.hc
    }

    fn push(&mut self, id: impl Into<String>, anchor: &str, statement: &str, passed: bool, detail: Value) {
        self.out.push(Assertion { id: id.into(), anchor: anchor.into(), statement: statement.into(), passed, detail });
    }

    fn cl(&self) -> &Clifford {
        self.hc.clifford()
    }

    pub fn run(mut self, suite: Suite) -> Result<Report> {
        if matches!(suite, Suite::Main1 | Suite::All) {
            self.main1()?;
        }
        if matches!(suite, Suite::Main2 | Suite::All) {
            self.main2()?;
        }
        if matches!(suite, Suite::Lemmas | Suite::All) {
            self.lemmas()?;
        }
        let mut assertions = std::mem::take(&mut self.out);
        assertions.sort_by(|a, b| a.id.cmp(&b.id));
        Ok(Report {
            schema: REPORT_SCHEMA.into(),
            algebra: self.g.cartan_type.to_string(),
            form: form_name(self.g.form_choice).into(),
            suite: suite.to_string(),
            hbar: self.hbars.iter().map(|q| q.to_string()).collect(),
            passed: assertions.iter().all(|a| a.passed),
            sweep: self.policy.clone(),
            assertions,
        })
    }

    // ---------------------------------------------------------------- main1

    pub fn main1(&mut self) -> Result<()> {
        let g = self.g;
        let r = g.rank();
        let degrees: Vec<Option<usize>> = self.pb.elements.iter().map(|p| p.homogeneous_degree()).collect();
        let expected: Vec<Option<usize>> = self.pb.degrees().into_iter().map(Some).collect();
        let invariant = self.pb.elements.iter().all(|p| is_invariant(g, p));
        let heights = g.exponents_from_heights();
        self.push(
            "main1/primitive-invariants",
            "primitive-invariants",
            "p_i = t(f_i) is invariant and homogeneous of degree 2m_i+1; exponents agree with root heights",
            degrees == expected && invariant && heights == self.pb.exponents,
            json!({"degrees": self.pb.degrees(), "exponents": self.pb.exponents, "exponents_from_heights": heights}),
        );
        let ok = check_invariant_algebra(g, &self.ps).is_ok() && self.ps.len() == 1 << r;
        self.push(
            "main1/invariant-algebra",
            "hopf-koszul-samelson",
            "the 2^r wedge products p_I are invariant and linearly independent",
            ok,
            json!({"count": self.ps.len(), "degrees": self.ps.iter().map(|p| p.homogeneous_degree()).collect::<Vec<_>>()}),
        );
        let hbars = self.hbars.clone();
        for h in &hbars {
            let images: Vec<Multivector> = self.ps.iter().map(|p| self.hc.phi(p, h)).collect();
            if !h.is_zero() {
                let m = Matrix::from_rows(
                    images.iter().map(|v| (0..1u64 << r).map(|mask| v.coeff(mask)).collect()).collect(),
                );
                let det = m.determinant();
                self.push(
                    format!("main1/phi-injective@{}", hb(h)),
                    "clifford-hc-isomorphism",
                    "coefficient matrix of Phi(p_I) over the blades of the exterior algebra of h is nonsingular",
                    !det.is_zero(),
                    json!({"determinant": det.to_string(), "matrix": m.to_rows().iter().map(|r| vecj(r)).collect::<Vec<_>>()}),
                );
            }
            let mut bad = Vec::new();
            for i in 0..self.ps.len() {
                for j in 0..self.ps.len() {
                    let lhs = self.hc.phi(&self.cl().mul(&self.ps[i], &self.ps[j], h), h);
                    let rhs = self.hc.cartan_clifford().mul(&images[i], &images[j], h);
                    if lhs != rhs {
                        bad.push(json!({"I": i, "J": j, "lhs": mvj(&lhs), "rhs": mvj(&rhs)}));
                    }
                }
            }
            self.push(
                format!("main1/phi-multiplicative@{}", hb(h)),
                "clifford-hc-isomorphism",
                "Phi(p_I . p_J) = Phi(p_I) . Phi(p_J) for all pairs",
                bad.is_empty(),
                json!({"pairs": self.ps.len() * self.ps.len(), "counterexamples": bad}),
            );
        }
        let one = Q::one();
        let images: Vec<Multivector> = self.pb.elements.iter().map(|p| self.hc.phi(p, &one)).collect();
        let deg1 = images.iter().all(|v| v.homogeneous_degree() == Some(1));
        self.push(
            "main1/phi-primitive-degree-one",
            "phi-bijective-on-primitives",
            "Phi(p_i) is homogeneous of degree 1",
            deg1,
            json!({"images": images.iter().map(mvj).collect::<Vec<_>>()}),
        );
        let rank = mv_rank(&images);
        self.push(
            "main1/phi-primitive-spans-h",
            "phi-bijective-on-primitives",
            "Phi(P) spans h",
            deg1 && rank == r,
            json!({"rank": rank, "r": r}),
        );
        let bad: Vec<usize> = (1..self.ps.len()).filter(|&i| !crate::hc_map::phi0(g, &self.ps[i]).is_zero()).collect();
        let unit_ok = crate::hc_map::phi0(g, &self.ps[0]) == Multivector::one(r);
        self.push(
            "main1/phi0-of-invariants-is-scalar",
            "chevalley-projection-failure",
            "the undeformed projection sends the invariant algebra onto scalars only",
            bad.is_empty() && unit_ok,
            json!({"nonzero_on": bad}),
        );
        Ok(())
    }

    // ---------------------------------------------------------------- main2

    pub fn main2(&mut self) -> Result<()> {
        let g = self.g;
        let r = g.rank();
        let gd = langlands_dual(g)?;
        let tds = principal_tds(&gd);
        let tds_ok = tds.is_ok();
        let tds = tds?;
        let cdim = centralizer_dim(&gd, &tds);
        let ad_h0 = gd.ad_of(&tds.h0);
        let kernel = ad_h0.nullspace();
        let kernel_is_h = kernel.len() == r
            && kernel.iter().all(|v| v.iter().enumerate().all(|(a, q)| q.is_zero() || gd.is_cartan(a)));
        let strings: usize = self.pb.exponents.iter().map(|m| 2 * m + 1).sum();
        self.push(
            "main2/principal-tds",
            "principal-tds",
            "(e0, 2 rho_check, f0) is an sl2-triple in the dual, e0 is principal, h is the centralizer of h0",
            tds_ok && cdim == r && kernel_is_h,
            json!({"dual": gd.cartan_type.to_string(), "coefficients": vecj(&tds.coefficients), "centralizer_dim": cdim}),
        );
        self.push(
            "main2/string-dimensions",
            "principal-tds",
            "sum over exponents of (2m+1) equals dim g",
            strings == gd.dim(),
            json!({"sum": strings, "dim": gd.dim()}),
        );
        let rep = verify_main2(g, &self.pb)?;
        let detail = serde_json::to_value(&rep).expect("report serializes");
        self.push(
            "main2/grading-matches-dual",
            "principal-grading",
            "span of Phi(p_j) with m_j = m equals the degree-(2m+1) piece of the dual principal grading",
            rep.degrees.iter().all(|d| d.spans_equal) && rep.phi_images_degree_one,
            detail.clone(),
        );
        self.push(
            "main2/rho-in-degree-three",
            "principal-grading",
            "rho lies in the degree-3 component of the Phi-grading",
            rep.rho_in_degree_three,
            json!({"rho": rep.rho, "phi_p1_parallel_to_rho": rep.phi_p1_parallel_to_rho}),
        );
        self.push(
            "main2/orthogonality",
            "principal-grading",
            "Phi(p_i) pairwise orthogonal; grading pieces of distinct degrees orthogonal",
            rep.phi_images_orthogonal && rep.pieces_orthogonal,
            json!({"phi_images_orthogonal": rep.phi_images_orthogonal, "pieces_orthogonal": rep.pieces_orthogonal}),
        );
        // own principal grading of g: equal to the dual one exactly when rho and rho_check are parallel
        let own_tds = principal_tds(g)?;
        let own = principal_grading(g, &own_tds, &self.pb.exponents)?;
        let hc_images: Vec<Vec<Q>> =
            self.pb.elements.iter().map(|p| self.hc.phi(p, &Q::one()).as_vector().unwrap_or_default()).collect();
        let own_equal = own.iter().all(|(m, piece)| {
            let imgs: Vec<Vec<Q>> =
                (0..self.pb.rank()).filter(|&i| self.pb.exponents[i] == *m).map(|i| hc_images[i].clone()).collect();
            linalg::same_span(piece, &imgs)
        });
        self.push(
            "main2/discriminates-own-grading",
            "langlands-dual",
            "the Phi-grading equals g's own principal grading exactly when rho is parallel to rho_check",
            own_equal == rep.rho_parallel_to_rho_check,
            json!({"own_grading_equal": own_equal, "rho_parallel_to_rho_check": rep.rho_parallel_to_rho_check,
                   "rho": rep.rho, "rho_check": rep.rho_check}),
        );
        // form independence
        let other = match g.form_choice {
            FormChoice::Killing => FormChoice::MinimalTrace,
            FormChoice::MinimalTrace => FormChoice::Killing,
        };
        let g2 = build_algebra(&g.cartan_type, other)?;
        let pieces_here = dual_pieces_in_h(g, &self.pb.exponents)?;
        let pieces_other = dual_pieces_in_h(&g2, &self.pb.exponents)?;
        let same = pieces_here.len() == pieces_other.len()
            && pieces_here.iter().zip(&pieces_other).all(|(a, b)| linalg::same_span(a, b));
        self.push(
            "main2/form-independence",
            "principal-grading",
            "the dual principal grading on h is the same for the Killing and the trace form",
            same,
            json!({"other_form": form_name(other)}),
        );
        // lemma last: conditional contract on the Dynkin generators, unconditional kernel property
        let outcome = lemma_last_check(g, &self.pb.generators)?;
        let (passed, d) = match &outcome {
            LemmaLastOutcome::Checked(v) => (v.iter().all(|&b| b), json!({"checked": v})),
            LemmaLastOutcome::HypothesisNotMet(why) => (true, json!({"hypothesis_not_met": why})),
        };
        self.push(
            "main2/lemma-last",
            "principal-basis-criterion",
            "if iota_S(rho)^{m_k} b_k are nonzero and orthogonal they are killed by (ad e0)^{m_k+1} in the dual",
            passed,
            d,
        );
        let psi = dual_identification(g);
        let mut kernel_ok = true;
        for (b, &m) in self.pb.generators.iter().zip(&self.pb.exponents) {
            let h = rho_contraction(g, b, m)?;
            kernel_ok &= linalg::is_zero_vec(&ad_power_on_cartan(&gd, &tds.e0, &psi.mul_vec(&h), m + 1));
        }
        self.push(
            "main2/lemma-last-kernel",
            "principal-basis-criterion",
            "(ad e0)^{m+1} kills iota_S(rho)^m b for every invariant generator b of degree m+1",
            kernel_ok,
            json!({}),
        );
        Ok(())
    }

    /// Per generator: `iota_S(rho)^m f`, the value `f(rho)` (full contraction), and the constant obtained
    /// after subtracting the multiple of a power of `f_1` that makes the generator vanish at rho.
    fn closed_formula_diagnostics(&self) -> Result<Vec<Value>> {
        let g = self.g;
        let (rho, _) = g.rho_and_rho_check();
        let rv = g.cartan_to_g(&rho);
        let full = |f: &SymPolynomial, k: usize| -> SymPolynomial { (0..k).fold(f.clone(), |p, _| iota_s(g, &rv, &p)) };
        let value = |f: &SymPolynomial, k: usize| -> Q {
            let p = full(f, k);
            p.coeff(&vec![0; g.dim()])
        };
        let images: Vec<Vec<Q>> =
            self.pb.elements.iter().map(|p| self.hc.phi(p, &Q::one()).as_vector().unwrap_or_default()).collect();
        let (f1, m1) = (&self.pb.generators[0], self.pb.exponents[0]);
        let mut out = Vec::new();
        for (i, (f, &m)) in self.pb.generators.iter().zip(&self.pb.exponents).enumerate() {
            let w = rho_contraction(g, f, m)?;
            let at_rho = value(f, m + 1);
            let mut adjusted = Value::Null;
            if i > 0 && !at_rho.is_zero() && (m + 1) % (m1 + 1) == 0 {
                let k = (m + 1) / (m1 + 1);
                let pw = f1.pow(k);
                let c = &at_rho / &value(&pw, m + 1);
                let fr = f.sub(&pw.scale(&c));
                let wr = rho_contraction(g, &fr, m)?;
                adjusted = json!({
                    "subtracted_multiple_of_f1_power": c.to_string(),
                    "power": k,
                    "contraction": vecj(&wr),
                    "constant": linalg::proportional(&images[i], &wr).map(|c| c.to_string()),
                });
            }
            out.push(json!({
                "exponent": m,
                "phi_image": vecj(&images[i]),
                "rho_contraction": vecj(&w),
                "value_at_rho": at_rho.to_string(),
                "vanishing_representative": adjusted,
            }));
        }
        Ok(out)
    }

    // ---------------------------------------------------------------- lemmas

    pub fn lemmas(&mut self) -> Result<()> {
        self.lemma_taylor();
        self.lemma_superderiv();
        self.lemma_homo();
        self.lemma_calc();
        self.lemma_phi_delta();
        self.lemma_composition()?;
        self.lemma_square();
        self.lemma_koszul();
        self.lemma_shifted_weyl()?;
        self.lemma_routes();
        self.lemma_rmatrix();
        self.lemma_delta_bracket();
        self.lemma_transgression()?;
        self.lemma_kernel_oracle();
        self.lemma_closed_formula()?;
        Ok(())
    }

    fn all_blades(&mut self) -> (bool, Vec<u64>) {
        let n = 1u64 << self.g.dim();
        sweep_indices(n, self.policy.element_limit, self.policy.samples, &mut self.rng)
    }

    fn blade_pairs(&mut self) -> (bool, Vec<(u64, u64)>) {
        let dim = self.g.dim();
        let n = 1usize << dim;
        if n * n <= self.policy.pair_limit {
            let items: Vec<u64> = (0..n as u64).collect();
            sweep_pairs(&items, usize::MAX, 0, &mut self.rng)
        } else {
            let s = self.policy.pair_samples;
            (false, (0..s).map(|_| (self.rng.gen_range(0..n as u64), self.rng.gen_range(0..n as u64))).collect())
        }
    }

    fn lemma_closed_formula(&mut self) -> Result<()> {
        let rep = verify_main2(self.g, &self.pb)?;
        let diagnostics = self.closed_formula_diagnostics()?;
        self.push(
            "lemma/closed-formula",
            "closed-formula",
            "Phi(p_i) is a nonzero multiple of iota_S(rho)^{m_i} f_i for the Dynkin generators",
            rep.closed_formula_holds,
            json!({"constants": rep.closed_formula_constants, "per_generator": diagnostics}),
        );
        Ok(())
    }

    fn lemma_taylor(&mut self) {
        let dim = self.g.dim();
        let (full, pairs) = self.blade_pairs();
        let mut checks = self.hbars.clone();
        checks.push(Q::from_int(3));
        let mut bad = Vec::new();
        for &(a, b) in &pairs {
            let (ua, ub) = (Multivector::blade(dim, a, Q::one()), Multivector::blade(dim, b, Q::one()));
            let Ok(us) = taylor_decompose(self.cl(), &ua, &ub) else {
                bad.push(json!([a, b, "decompose"]));
                continue;
            };
            let (i, j) = (a.count_ones() as usize, b.count_ones() as usize);
            let shape = us.len() <= i.min(j) + 1
                && us.iter().enumerate().all(|(s, u)| u.homogeneous_degree().is_none_or(|d| d == i + j - 2 * s));
            let top_ok = us[0] == crate::exterior::wedge(&ua, &ub);
            if !shape || !top_ok || checks.iter().any(|h| taylor_evaluate(&us, h) != self.cl().mul(&ua, &ub, h)) {
                bad.push(json!([a, b]));
            }
        }
        self.push(
            "lemma/taylor",
            "clifford-taylor-expansion",
            "a ._hbar b = a∧b + hbar u_{i+j-2} + hbar^2 u_{i+j-4} + ... with hbar-independent u",
            bad.is_empty(),
            json!({"exhaustive": full, "pairs": pairs.len(), "counterexamples": bad}),
        );
    }

    fn lemma_superderiv(&mut self) {
        let dim = self.g.dim();
        let (full, pairs) = self.blade_pairs();
        let hbars = self.hbars.clone();
        let sp = self.cl().space().clone();
        let mut bad = Vec::new();
        'outer: for &(a, b) in &pairs {
            let (ua, ub) = (Multivector::blade(dim, a, Q::one()), Multivector::blade(dim, b, Q::one()));
            let sign = Q::sign(a.count_ones() as usize);
            for h in &hbars {
                let prod = self.cl().mul(&ua, &ub, h);
                for x in 0..dim {
                    let lhs = contract_basis(&sp, x, &prod);
                    let r1 = self.cl().mul(&contract_basis(&sp, x, &ua), &ub, h);
                    let r2 = self.cl().mul(&ua, &contract_basis(&sp, x, &ub), h);
                    if lhs != r1.add(&r2.scale(&sign)) {
                        bad.push(json!({"a": a, "b": b, "x": x, "hbar": h.to_string()}));
                        if bad.len() > 10 {
                            break 'outer;
                        }
                    }
                }
            }
        }
        self.push(
            "lemma/superderivation",
            "contraction-superderivation",
            "iota(x)(u.v) = (iota(x)u).v + (-1)^|u| u.(iota(x)v)",
            bad.is_empty(),
            json!({"exhaustive": full, "pairs": pairs.len(), "counterexamples": bad}),
        );
    }

    fn zero_weight(&self) -> Vec<u64> {
        zero_weight_blades(self.g)
    }

    fn lemma_homo(&mut self) {
        let dim = self.g.dim();
        let zw = self.zero_weight();
        let lim = self.policy.pair_limit;
        let s = self.policy.pair_samples;
        let (full, pairs) = sweep_pairs(&zw, lim, s, &mut self.rng);
        let hbars = self.hbars.clone();
        let mut bad = Vec::new();
        for h in &hbars {
            for &(a, b) in &pairs {
                let (ua, ub) = (Multivector::blade(dim, a, Q::one()), Multivector::blade(dim, b, Q::one()));
                let lhs = self.hc.phi(&self.cl().mul(&ua, &ub, h), h);
                let rhs = self.hc.cartan_clifford().mul(&self.hc.phi(&ua, h), &self.hc.phi(&ub, h), h);
                if lhs != rhs {
                    bad.push(json!({"a": a, "b": b, "hbar": h.to_string()}));
                }
            }
        }
        // weight preservation: nonzero-weight blades go to zero under phi0, iota(r) and Phi
        let (_, blades) = self.all_blades();
        let mut weight_bad = Vec::new();
        for &m in &blades {
            if blade_weight(self.g, m).iter().all(|&c| c == 0) {
                continue;
            }
            let u = Multivector::blade(dim, m, Q::one());
            let ir = self.hc.iota_r(&u);
            let ir_ok = ir.terms().iter().all(|(mm, _)| blade_weight(self.g, *mm) == blade_weight(self.g, m));
            if !self.hc.phi0(&u).is_zero() || !self.hc.phi(&u, &Q::one()).is_zero() || !ir_ok {
                weight_bad.push(m);
            }
        }
        self.push(
            "lemma/homomorphism-on-h-invariants",
            "phi-homomorphism",
            "Phi(u.v) = Phi(u).Phi(v) for weight-zero u, v",
            bad.is_empty(),
            json!({"exhaustive": full, "pairs": pairs.len(), "counterexamples": bad}),
        );
        self.push(
            "lemma/weight-preservation",
            "phi-homomorphism",
            "Phi, Phi_0 kill nonzero weight vectors and iota(r) preserves weights",
            weight_bad.is_empty(),
            json!({"counterexamples": weight_bad}),
        );
    }

    fn lemma_calc(&mut self) {
        let g = self.g;
        let r = g.rank();
        let hbars = self.hbars.clone();
        let mut bad = Vec::new();
        for h in &hbars {
            for j in 0..r {
                let d = delta(g, self.cl(), g.h(j), h);
                let v = self.hc.phi(&d, h);
                // rho(h_j) = 1 for simple coroots
                if v != Multivector::scalar(r, h.clone()) {
                    bad.push(json!({"j": j, "hbar": h.to_string(), "value": mvj(&v)}));
                }
            }
        }
        self.push(
            "lemma/calc-cartan",
            "delta-cartan-value",
            "Phi_hbar(delta(h_j)) equals the scalar hbar rho(h_j) = hbar",
            bad.is_empty(),
            json!({"counterexamples": bad}),
        );
        // delta(x) lies in Cl(g) n+: Phi(w . delta(x)) = 0
        let (full, blades) = self.all_blades();
        let one = Q::one();
        let dim = g.dim();
        let mut bad2 = Vec::new();
        for i in 0..g.n_pos() {
            let d = delta(g, self.cl(), g.x(i), &one);
            for &m in &blades {
                let w = Multivector::blade(dim, m, Q::one());
                if !self.hc.phi(&self.cl().mul(&w, &d, &one), &one).is_zero() {
                    bad2.push(json!({"root": i, "w": m}));
                }
            }
        }
        self.push(
            "lemma/calc-positive",
            "delta-positive-ideal",
            "Phi(w . delta(x)) = 0 for x in n+",
            bad2.is_empty(),
            json!({"exhaustive": full, "w_count": blades.len(), "counterexamples": bad2}),
        );
    }

    fn lemma_phi_delta(&mut self) {
        let g = self.g;
        let dim = g.dim();
        let zw = self.zero_weight();
        let (full, idx) = sweep_indices(zw.len() as u64, self.policy.element_limit, self.policy.samples, &mut self.rng);
        let sp = self.cl().space().clone();
        let sph = self.hc.cartan_clifford().space().clone();
        let mut bad = Vec::new();
        for h in &self.hbars.clone() {
            for &k in &idx {
                let u = Multivector::blade(dim, zw[k as usize], Q::one());
                let pu = self.hc.phi(&u, h);
                for j in 0..g.rank() {
                    let lhs = contract_basis(&sph, j, &pu);
                    let rhs = self.hc.phi(&contract_basis(&sp, g.h(j), &u), h);
                    if lhs != rhs {
                        bad.push(json!({"u": zw[k as usize], "j": j, "hbar": h.to_string()}));
                    }
                }
            }
        }
        self.push(
            "lemma/phi-commutes-with-cartan-contraction",
            "phi-contraction",
            "iota(h) Phi(u) = Phi(iota(h) u) for weight-zero u",
            bad.is_empty(),
            json!({"exhaustive": full, "count": idx.len(), "counterexamples": bad}),
        );
    }

    fn lemma_composition(&mut self) -> Result<()> {
        let g = self.g;
        let dim = g.dim();
        let r = g.rank();
        let monos = monomials_up_to(dim, self.policy.pbw_degree);
        let mut bad = Vec::new();
        for h in &self.hbars.clone() {
            let ds: Vec<Multivector> = (0..dim).map(|a| delta(g, self.cl(), a, h)).collect();
            let (rho, _) = g.rho_and_rho_check();
            let point: Vec<Q> = rho.iter().map(|c| c * h).collect();
            // prefix products memoized along the sorted monomial list
            let mut memo: std::collections::HashMap<Vec<u8>, Multivector> = std::collections::HashMap::new();
            memo.insert(vec![0; dim], Multivector::one(dim));
            for e in &monos {
                let Some(last) = e.iter().rposition(|&k| k > 0) else { continue };
                let mut prefix = e.clone();
                prefix[last] -= 1;
                let p = self.cl().mul(&memo[&prefix], &ds[last], h);
                memo.insert(e.clone(), p.clone());
                let weight_zero = blade_weight_exps(g, e);
                let lhs = if weight_zero { self.hc.phi(&p, h) } else { Multivector::zero(r) };
                if !weight_zero && !self.hc.phi(&p, h).is_zero() {
                    bad.push(json!({"monomial": e, "hbar": h.to_string(), "reason": "nonzero weight image"}));
                    continue;
                }
                let u = PbwElement::monomial(e.clone(), Q::one());
                let rhs = crate::symmetric::evaluate_at(g, &crate::enveloping::classical_hc(g, &u), &point);
                if lhs != Multivector::scalar(r, rhs.clone()) {
                    bad.push(json!({"monomial": e, "hbar": h.to_string(), "lhs": mvj(&lhs), "rhs": rhs.to_string()}));
                }
            }
        }
        // the library entry point agrees on a few elements
        let u = Enveloping::new(g);
        let sample = u.word(&[g.x(0), g.y(0)]);
        let d = delta_on_pbw(g, self.cl(), &sample, &Q::one())?;
        let (lhs, rhs) = self.hc.phi_compose_delta(&sample, &Q::one())?;
        let entry_ok = lhs == Multivector::scalar(r, rhs) && self.hc.phi(&d, &Q::one()) == lhs;
        self.push(
            "lemma/composition",
            "hc-composition",
            "Phi_hbar(delta(u)) = Psi(u)(hbar rho) for every PBW monomial of bounded degree",
            bad.is_empty() && entry_ok,
            json!({"monomials": monos.len(), "max_degree": self.policy.pbw_degree, "counterexamples": bad}),
        );
        Ok(())
    }

    fn lemma_square(&mut self) {
        let sp = self.cl().space().clone();
        let r = self.pb.rank();
        let one = Q::one();
        let mut bad = Vec::new();
        let mut scaling = Vec::new();
        for h in &self.hbars.clone() {
            for i in 0..r {
                for j in 0..r {
                    let (p, q) = (&self.pb.elements[i], &self.pb.elements[j]);
                    let anti = self.cl().mul(p, q, h).add(&self.cl().mul(q, p, h));
                    let deg = p.homogeneous_degree().unwrap_or(0) as i64;
                    let expect = extended_form(&sp, &alpha(p), q) * Q::from_int(2) * h.pow(deg);
                    let ok = if p.homogeneous_degree() == q.homogeneous_degree() {
                        anti == Multivector::scalar(self.g.dim(), expect.clone())
                    } else {
                        anti.is_zero()
                    };
                    if !ok {
                        bad.push(json!({"i": i, "j": j, "hbar": h.to_string(), "got": mvj(&anti), "expected": expect.to_string()}));
                    }
                }
                if *h == one {
                    let c = crate::transgression::clifford_square_check(self.cl(), &self.pb.elements[i], h);
                    if !c.holds() {
                        bad.push(json!({"square": i}));
                    }
                }
            }
            let p = &self.pb.elements[0];
            let sq = self.cl().mul(p, p, h).scalar_part();
            scaling.push(json!({"hbar": h.to_string(), "p1_square": sq.to_string()}));
        }
        // sampled combinations at hbar = 1
        for _ in 0..8 {
            let coeffs: Vec<Q> = (0..r).map(|_| Q::from_int(self.rng.gen_range(-3..=3))).collect();
            let mut p = Multivector::zero(self.g.dim());
            for (c, e) in coeffs.iter().zip(&self.pb.elements) {
                p = p.add(&e.scale(c));
            }
            let c = crate::transgression::clifford_square_check(self.cl(), &p, &one);
            if !c.holds() {
                bad.push(json!({"combination": vecj(&coeffs)}));
            }
        }
        self.push(
            "lemma/clifford-square",
            "primitive-square-law",
            "p.q + q.p = 2 hbar^(2m+1) (alpha(p), q) on P; at hbar = 1, p.p = (alpha(p), p)",
            bad.is_empty(),
            json!({"counterexamples": bad, "hbar_scaling": scaling}),
        );
        let mut anti_bad = Vec::new();
        let mut ordered_bad = Vec::new();
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                let (p, q) = (&self.pb.elements[i], &self.pb.elements[j]);
                if !self.cl().mul(p, q, &one).add(&self.cl().mul(q, p, &one)).is_zero() {
                    anti_bad.push(json!([i, j]));
                }
            }
        }
        for (set, pi) in self.ps.iter().enumerate() {
            let factors: Vec<Multivector> =
                (0..r).filter(|i| set >> i & 1 == 1).map(|i| self.pb.elements[i].clone()).collect();
            if self.cl().product(&factors, &one) != *pi {
                ordered_bad.push(set);
            }
        }
        self.push(
            "lemma/primitive-anticommute",
            "primitive-square-law",
            "distinct orthogonal p_i anticommute, and p_I equals the ordered Clifford product of its factors",
            anti_bad.is_empty() && ordered_bad.is_empty(),
            json!({"anticommute_failures": anti_bad, "product_failures": ordered_bad}),
        );
    }

    fn lemma_koszul(&mut self) {
        let sp = QuadSpace::of_algebra(self.g);
        let gram = gram_matrix(&sp, &self.ps);
        let det = gram.determinant();
        self.push(
            "lemma/koszul-nonsingular",
            "koszul-form",
            "the extended form restricted to the invariant algebra is nonsingular",
            !det.is_zero(),
            json!({"determinant": det.to_string(), "size": self.ps.len()}),
        );
    }

    fn lemma_shifted_weyl(&mut self) -> Result<()> {
        let g = self.g;
        let mut w = WordHc::new(g);
        let mut bad = Vec::new();
        let mut images = Vec::new();
        let weyl = g.weyl_group();
        for (k, f) in self.pb.generators.iter().enumerate() {
            let psi = w.of_beta(f);
            for i in 0..g.rank() {
                if shifted_reflection(g, i, &psi) != psi {
                    bad.push(json!({"generator": k, "reflection": i}));
                }
            }
            let psi0 = chevalley_projection(g, f);
            for (i, s) in weyl.generators.iter().enumerate() {
                if weyl_act(s, &psi0) != psi0 {
                    bad.push(json!({"generator": k, "plain_reflection": i}));
                }
            }
            images.push(psi.to_json());
        }
        self.push(
            "lemma/shifted-weyl-invariance",
            "classical-hc",
            "Psi(beta(f_i)) is invariant under the rho-shifted Weyl action; Psi_0(f_i) under the plain one",
            bad.is_empty(),
            json!({"counterexamples": bad, "images": images}),
        );
        Ok(())
    }

    fn lemma_routes(&mut self) {
        let g = self.g;
        let dim = g.dim();
        let n = 1u64 << dim;
        let hbars = self.hbars.clone();
        let mut bad = Vec::new();
        let full = n as usize <= self.policy.element_limit;
        if full {
            for h in &hbars {
                for m in 0..n {
                    let u = Multivector::blade(dim, m, Q::one());
                    if self.hc.phi_rmatrix(&u, h) != self.hc.phi_normal_order(&u, h) {
                        bad.push(json!({"blade": m, "hbar": h.to_string()}));
                    }
                }
            }
        }
        let s = self.policy.samples;
        let us: Vec<Multivector> = (0..s).map(|_| random_multivector(dim, &mut self.rng, 4)).collect();
        for h in &hbars {
            for (k, u) in us.iter().enumerate() {
                if self.hc.phi_rmatrix(u, h) != self.hc.phi_normal_order(u, h) {
                    bad.push(json!({"sample": k, "hbar": h.to_string()}));
                }
            }
        }
        for h in &hbars {
            for (k, p) in self.ps.iter().enumerate() {
                if self.hc.phi_rmatrix(p, h) != self.hc.phi_normal_order(p, h) {
                    bad.push(json!({"p_I": k, "hbar": h.to_string()}));
                }
            }
        }
        self.push(
            "lemma/route-equivalence",
            "r-matrix-formula",
            "Phi_hbar by triangular normal ordering equals phi0(exp(hbar iota(r)) u)",
            bad.is_empty(),
            json!({"exhaustive": full, "blades": if full { n } else { 0 }, "random_samples": s, "counterexamples": bad}),
        );
        // hbar-homogeneity of Phi_hbar(p_i)
        let one = Q::one();
        let mut hom_bad = Vec::new();
        for (p, &m) in self.pb.elements.iter().zip(&self.pb.exponents) {
            let base = self.hc.phi(p, &one);
            for h in &hbars {
                if self.hc.phi(p, h) != base.scale(&h.pow(m as i64)) {
                    hom_bad.push(json!({"m": m, "hbar": h.to_string()}));
                }
            }
        }
        self.push(
            "lemma/hbar-homogeneity",
            "r-matrix-formula",
            "Phi_hbar(p_i) = hbar^{m_i} Phi(p_i)",
            hom_bad.is_empty(),
            json!({"counterexamples": hom_bad}),
        );
    }

    fn lemma_rmatrix(&mut self) {
        let g = self.g;
        let dim = g.dim();
        let (full, blades) = self.all_blades();
        let op = self.hc.rmatrix().clone();
        let n = op.pairs.len();
        let mut bad = Vec::new();
        let mut rev: Vec<usize> = (0..g.n_pos()).collect();
        rev.reverse();
        let op_rev = RMatrixOperator::with_order(g, &rev).expect("reversed order");
        for &m in &blades {
            let u = Multivector::blade(dim, m, Q::one());
            for i in 0..n {
                let ti = op.summand(self.cl(), i, &u);
                if !op.summand(self.cl(), i, &ti).is_zero() {
                    bad.push(json!({"square": i, "u": m}));
                }
                for j in i + 1..n {
                    let a = op.summand(self.cl(), i, &op.summand(self.cl(), j, &u));
                    let b = op.summand(self.cl(), j, &ti);
                    if a != b {
                        bad.push(json!({"commute": [i, j], "u": m}));
                    }
                }
            }
            if op.apply(self.cl(), &u) != op_rev.apply(self.cl(), &u) {
                bad.push(json!({"order": m}));
            }
            let d = u.homogeneous_degree().unwrap_or(0);
            if op.apply(self.cl(), &u).homogeneous_degree().is_some_and(|k| k + 2 != d) {
                bad.push(json!({"degree": m}));
            }
        }
        self.push(
            "lemma/rmatrix-summands",
            "r-matrix-formula",
            "summands iota(x_i)iota(y_i) commute pairwise and square to zero; iota(r) is order-independent",
            bad.is_empty(),
            json!({"exhaustive": full, "elements": blades.len(), "counterexamples": bad}),
        );
    }

    fn lemma_delta_bracket(&mut self) {
        let g = self.g;
        let dim = g.dim();
        let mut bad = Vec::new();
        let mut half_d_bad = Vec::new();
        for h in &self.hbars.clone() {
            let ds: Vec<Multivector> = (0..dim).map(|a| delta(g, self.cl(), a, h)).collect();
            for a in 0..dim {
                let d = crate::exterior::coboundary(g, a).scale(&Q::frac(1, 2));
                if ds[a] != d {
                    half_d_bad.push(json!({"x": a, "hbar": h.to_string()}));
                }
                for b in 0..dim {
                    let comm = self.cl().mul(&ds[a], &ds[b], h).sub(&self.cl().mul(&ds[b], &ds[a], h));
                    let mut br = Multivector::zero(dim);
                    for (c, q) in g.bracket_basis(a, b) {
                        br = br.add(&ds[*c].scale(q));
                    }
                    if comm != br.scale(h) {
                        bad.push(json!({"x": a, "y": b, "hbar": h.to_string()}));
                    }
                }
            }
        }
        self.push(
            "lemma/delta-bracket",
            "delta-homomorphism",
            "[delta(x), delta(y)]_hbar = hbar delta([x,y]); a Lie homomorphism at hbar = 1",
            bad.is_empty(),
            json!({"counterexamples": bad}),
        );
        self.push(
            "lemma/delta-half-coboundary",
            "delta-homomorphism",
            "delta(x) = d(x)/2 with no scalar part, for every hbar",
            half_d_bad.is_empty(),
            json!({"counterexamples": half_d_bad}),
        );
    }

    fn lemma_transgression(&mut self) -> Result<()> {
        let g = self.g;
        let dim = g.dim();
        let mut s = SMap::new(g);
        let mut bad = Vec::new();
        let sp = self.cl().space().clone();
        for (f, &m) in self.pb.generators.iter().zip(&self.pb.exponents) {
            let t = transgress_with(g, &mut s, f, m)?;
            let c = transgression_constant(m) * Q::from_int(2 * m as i64 + 1);
            // iota(z) t(f) = (m!)^2/(2m)! s(iota_S(z) f)
            for z in 0..dim {
                let lhs = contract_basis(&sp, z, &t);
                let rhs = s.apply(&iota_s(g, &g.unit(z), f)).scale(&c);
                if lhs != rhs {
                    bad.push(json!({"m": m, "z": z}));
                }
            }
        }
        // products of invariants transgress to zero
        let f1 = &self.pb.generators[0];
        let m1 = self.pb.exponents[0];
        let sq: SymPolynomial = f1.mul(f1);
        let t_sq = transgress_with(g, &mut s, &sq, 2 * m1 + 1)?;
        self.push(
            "lemma/transgression",
            "transgression",
            "iota(z) t(f) = (m!)^2/(2m)! s(iota_S(z) f), and t vanishes on products of invariants",
            bad.is_empty() && t_sq.is_zero(),
            json!({"counterexamples": bad, "t_of_square_zero": t_sq.is_zero()}),
        );
        Ok(())
    }

    fn lemma_kernel_oracle(&mut self) {
        if self.g.dim() > 10 {
            return;
        }
        let k = kernel_invariants(self.g);
        let mut all = k.clone();
        all.extend(self.ps.iter().cloned());
        let rk = mv_rank(&k);
        let ok = k.len() == 1 << self.g.rank() && rk == k.len() && mv_rank(&all) == rk;
        self.push(
            "lemma/kernel-oracle",
            "hopf-koszul-samelson",
            "solving theta(x)u = 0 on the whole exterior algebra gives exactly span{p_I}",
            ok,
            json!({"kernel_dim": k.len(), "expected": 1usize << self.g.rank()}),
        );
    }
}

fn blade_weight_exps(g: &LieAlgebra, e: &[u8]) -> bool {
    let mut w = vec![0i64; g.rank()];
    for (a, &k) in e.iter().enumerate() {
        for (wi, c) in w.iter_mut().zip(g.weight(a)) {
            *wi += c * k as i64;
        }
    }
    w.iter().all(|&c| c == 0)
}

/// Dual principal grading pieces transported into h (Cartan coordinates of g).
pub fn dual_pieces_in_h(g: &LieAlgebra, exponents: &[usize]) -> Result<Vec<Vec<Vec<Q>>>> {
    let gd = langlands_dual(g)?;
    let tds = principal_tds(&gd)?;
    let psi_inv = dual_identification(g).inverse().ok_or_else(|| Error::Structure("singular identification".into()))?;
    Ok(principal_grading(&gd, &tds, exponents)?
        .into_iter()
        .map(|(_, piece)| piece.iter().map(|v| psi_inv.mul_vec(v)).collect())
        .collect())
}

pub fn form_name(f: FormChoice) -> &'static str {
    match f {
        FormChoice::Killing => "killing",
        FormChoice::MinimalTrace => "trace",
    }
}

/// Build the algebra and run a suite.
pub fn run(g: &LieAlgebra, suite: Suite, hbars: Vec<Q>, policy: SweepPolicy) -> Result<Report> {
    Verifier::new(g, hbars, policy)?.run(suite)
}

//! Principal three-dimensional subalgebra of the Langlands dual, the principal grading on h,
//! and its comparison with the grading induced by the Clifford Harish-Chandra map.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hc_map::HcMap;
use crate::lie_core::{dual_identification, langlands_dual, LieAlgebra};
use crate::linalg::{self, Matrix};
use crate::rational::Q;
use crate::symmetric::{iota_s, SymPolynomial};
use crate::transgression::PrimitiveBasis;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalTds {
    pub e0: Vec<Q>,
    pub h0: Vec<Q>,
    pub f0: Vec<Q>,
    /// `2 rho_check = sum c_i alpha_i` coefficients, i.e. `h0 = sum c_i H_i`.
    pub coefficients: Vec<Q>,
}

fn strs(v: &[Q]) -> Vec<String> {
    v.iter().map(|q| q.to_string()).collect()
}

/// `e0 = sum x_i`, `h0 = 2 rho_check`, `f0 = sum c_i y_i` with `[e0, f0] = h0`. Relations are checked.
pub fn principal_tds(gd: &LieAlgebra) -> Result<PrincipalTds> {
    let (r, dim) = (gd.rank(), gd.dim());
    let (_, rho_check) = gd.rho_and_rho_check();
    let coefficients: Vec<Q> = rho_check.iter().map(|k| k * Q::from_int(2)).collect();
    let mut e0 = vec![Q::zero(); dim];
    let mut f0 = vec![Q::zero(); dim];
    let h0 = gd.cartan_to_g(&coefficients);
    for i in 0..r {
        e0[gd.x(i)] = Q::one();
        // [x_i, y_i] = t_i, a multiple of h_i
        let t = gd.root_in_h(i);
        let k = (0..r).find(|&j| !t[j].is_zero()).ok_or_else(|| Error::Structure("zero simple coroot".into()))?;
        f0[gd.y(i)] = &coefficients[k] / &t[k];
    }
    let two = Q::from_int(2);
    let scale = |v: &[Q], c: &Q| -> Vec<Q> { v.iter().map(|a| a * c).collect() };
    let ok = gd.bracket(&h0, &e0) == scale(&e0, &two)
        && gd.bracket(&h0, &f0) == scale(&f0, &-two.clone())
        && gd.bracket(&e0, &f0) == h0;
    if !ok {
        return Err(Error::Structure("principal triple fails the sl2 relations".into()));
    }
    Ok(PrincipalTds { e0, h0, f0, coefficients })
}

/// Dimension of the centralizer of `e0` (equals the rank for a principal element).
pub fn centralizer_dim(gd: &LieAlgebra, tds: &PrincipalTds) -> usize {
    gd.dim() - gd.ad_of(&tds.e0).rank()
}

/// `(ad e0)^k h` for h in Cartan coordinates of `gd`.
pub fn ad_power_on_cartan(gd: &LieAlgebra, e0: &[Q], h: &[Q], k: usize) -> Vec<Q> {
    let ad = gd.ad_of(e0);
    let mut v = gd.cartan_to_g(h);
    for _ in 0..k {
        v = ad.mul_vec(&v);
    }
    v
}

/// Principal grading of the Cartan subalgebra of `gd` (coordinates in gd's Cartan basis).
/// Returns `(m, basis)` per distinct exponent, increasing.
pub fn principal_grading(
    gd: &LieAlgebra,
    tds: &PrincipalTds,
    exponents: &[usize],
) -> Result<Vec<(usize, Vec<Vec<Q>>)>> {
    let r = gd.rank();
    let ad = gd.ad_of(&tds.e0);
    let gram = gd.cartan_form();
    let mut distinct: Vec<usize> = exponents.to_vec();
    distinct.dedup();
    let mut prev: Vec<Vec<Q>> = Vec::new();
    let mut out = Vec::new();
    for &m in &distinct {
        // F_m = kernel of (ad e0)^{m+1} restricted to h
        let mut p = Matrix::identity(gd.dim());
        for _ in 0..=m {
            p = ad.mul(&p);
        }
        let restricted =
            Matrix::from_rows((0..gd.dim()).map(|row| (0..r).map(|j| p[(row, gd.h(j))].clone()).collect()).collect());
        let f_m = restricted.nullspace();
        let piece = linalg::orthocomplement_within(&gram, &f_m, &prev);
        let mult = exponents.iter().filter(|&&e| e == m).count();
        if piece.len() != mult {
            return Err(Error::Dimension(format!(
                "graded piece of degree {} has dimension {}, expected {mult}",
                2 * m + 1,
                piece.len()
            )));
        }
        out.push((m, piece));
        prev = f_m;
    }
    Ok(out)
}

/// `iota_S(rho)^m f`, which for `deg f = m + 1` is linear; returned as a vector in Cartan coordinates
/// when it lies in h.
pub fn rho_contraction(g: &LieAlgebra, f: &SymPolynomial, m: usize) -> Result<Vec<Q>> {
    let (rho, _) = g.rho_and_rho_check();
    let rv = g.cartan_to_g(&rho);
    let mut p = f.clone();
    for _ in 0..m {
        p = iota_s(g, &rv, &p);
    }
    let v = p.as_linear()?;
    if v.iter().enumerate().any(|(a, q)| !q.is_zero() && !g.is_cartan(a)) {
        return Err(Error::Structure("iota_S(rho)^m f has root components".into()));
    }
    Ok(g.cartan_range().map(|a| v[a].clone()).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub exponent: usize,
    pub degree: usize,
    /// Principal-grading piece transported to h, Cartan coordinates.
    pub dual_piece: Vec<Vec<String>>,
    /// `Phi(p_j)` for the primitive elements of this degree.
    pub phi_images: Vec<Vec<String>>,
    pub spans_equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradingReport {
    pub algebra: String,
    pub dual: String,
    pub exponents: Vec<usize>,
    pub degrees: Vec<DegreeReport>,
    pub rho: Vec<String>,
    pub rho_check: Vec<String>,
    pub phi_p1_parallel_to_rho: bool,
    /// rho lies in the span of the degree-3 images (equivalent to the line above for simple g).
    pub rho_in_degree_three: bool,
    pub rho_parallel_to_rho_check: bool,
    pub phi_images_orthogonal: bool,
    pub pieces_orthogonal: bool,
    pub phi_images_degree_one: bool,
    /// Per primitive element: `c` with `Phi(p_i) = c iota_S(rho)^{m_i} f_i`, or null if not parallel.
    pub closed_formula_constants: Vec<Option<String>>,
    pub closed_formula_holds: bool,
    /// Subspace equality, degree one, rho in degree 3, orthogonality.
    pub verdict: bool,
}

/// Compare the grading of h by `Phi(P)` with the principal grading of the dual.
pub fn verify_main2(g: &LieAlgebra, pb: &PrimitiveBasis) -> Result<GradingReport> {
    let gd = langlands_dual(g)?;
    let tds = principal_tds(&gd)?;
    let psi_inv = dual_identification(g).inverse().ok_or_else(|| Error::Structure("singular identification".into()))?;
    let pieces = principal_grading(&gd, &tds, &pb.exponents)?;
    let hc = HcMap::new(g);
    let one = Q::one();
    let mut images = Vec::new();
    let mut degree_one = true;
    for p in &pb.elements {
        let v = hc.phi(p, &one);
        degree_one &= v.homogeneous_degree() == Some(1);
        images.push(v.as_vector().unwrap_or_else(|_| vec![Q::zero(); g.rank()]));
    }
    let gram = g.cartan_form();
    let mut degrees = Vec::new();
    let mut all_pieces = Vec::new();
    for (m, piece) in &pieces {
        let back: Vec<Vec<Q>> = piece.iter().map(|v| psi_inv.mul_vec(v)).collect();
        let imgs: Vec<Vec<Q>> = (0..pb.rank()).filter(|&i| pb.exponents[i] == *m).map(|i| images[i].clone()).collect();
        let spans_equal = linalg::same_span(&back, &imgs);
        degrees.push(DegreeReport {
            exponent: *m,
            degree: 2 * m + 1,
            dual_piece: back.iter().map(|v| strs(v)).collect(),
            phi_images: imgs.iter().map(|v| strs(v)).collect(),
            spans_equal,
        });
        all_pieces.push(back);
    }
    let mut pieces_orthogonal = true;
    for a in 0..all_pieces.len() {
        for b in a + 1..all_pieces.len() {
            for u in &all_pieces[a] {
                for v in &all_pieces[b] {
                    pieces_orthogonal &= linalg::bilinear(&gram, u, v).is_zero();
                }
            }
        }
    }
    let mut phi_images_orthogonal = true;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            phi_images_orthogonal &= linalg::bilinear(&gram, &images[i], &images[j]).is_zero();
        }
    }
    let (rho, rho_check) = g.rho_and_rho_check();
    let phi_p1_parallel_to_rho = images.first().is_some_and(|v| linalg::proportional(v, &rho).is_some());
    let rho_parallel_to_rho_check = linalg::proportional(&rho, &rho_check).is_some();
    let deg3: Vec<Vec<Q>> = (0..pb.rank()).filter(|&i| pb.exponents[i] == 1).map(|i| images[i].clone()).collect();
    let rho_in_degree_three = !deg3.is_empty() && {
        let mut with = deg3.clone();
        with.push(rho.clone());
        linalg::rank_of(&with) == linalg::rank_of(&deg3)
    };
    let mut constants = Vec::new();
    for (i, f) in pb.generators.iter().enumerate() {
        let c = rho_contraction(g, f, pb.exponents[i])
            .ok()
            .and_then(|w| linalg::proportional(&images[i], &w))
            .map(|c| c.to_string());
        constants.push(c);
    }
    let closed_formula_holds = constants.iter().all(Option::is_some);
    let verdict = degrees.iter().all(|d| d.spans_equal)
        && degree_one
        && rho_in_degree_three
        && phi_images_orthogonal
        && pieces_orthogonal;
    Ok(GradingReport {
        algebra: g.cartan_type.to_string(),
        dual: gd.cartan_type.to_string(),
        exponents: pb.exponents.clone(),
        degrees,
        rho: strs(&rho),
        rho_check: strs(&rho_check),
        phi_p1_parallel_to_rho,
        rho_in_degree_three,
        rho_parallel_to_rho_check,
        phi_images_orthogonal,
        pieces_orthogonal,
        phi_images_degree_one: degree_one,
        closed_formula_constants: constants,
        closed_formula_holds,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaLastOutcome {
    HypothesisNotMet(String),
    /// Per generator: whether `(ad e0)^{m_k+1} psi(h_k)` vanishes.
    Checked(Vec<bool>),
}

/// With `h_k = iota_S(rho)^{m_k} b_k`: if the `h_k` are nonzero and pairwise orthogonal, check that
/// `(ad e0)^{m_k+1}` kills their images in the dual.
pub fn lemma_last_check(g: &LieAlgebra, gens: &[SymPolynomial]) -> Result<LemmaLastOutcome> {
    let mut hs = Vec::new();
    let mut ms = Vec::new();
    for b in gens {
        let d = b.homogeneous_degree().ok_or_else(|| Error::Degree("generator not homogeneous".into()))?;
        if d == 0 {
            return Err(Error::Degree("constant generator".into()));
        }
        match rho_contraction(g, b, d - 1) {
            Ok(v) => hs.push(v),
            Err(e) => return Ok(LemmaLastOutcome::HypothesisNotMet(e.to_string())),
        }
        ms.push(d - 1);
    }
    if let Some(k) = hs.iter().position(|v| linalg::is_zero_vec(v)) {
        return Ok(LemmaLastOutcome::HypothesisNotMet(format!("h_{} vanishes", k + 1)));
    }
    let gram = g.cartan_form();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            if !linalg::bilinear(&gram, &hs[i], &hs[j]).is_zero() {
                return Ok(LemmaLastOutcome::HypothesisNotMet(format!(
                    "h_{} and h_{} are not orthogonal",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let gd = langlands_dual(g)?;
    let tds = principal_tds(&gd)?;
    let psi = dual_identification(g);
    Ok(LemmaLastOutcome::Checked(
        hs.iter()
            .zip(&ms)
            .map(|(h, &m)| linalg::is_zero_vec(&ad_power_on_cartan(&gd, &tds.e0, &psi.mul_vec(h), m + 1)))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::{build_algebra, FormChoice};

    #[test]
    fn a1_triple() {
        let g = build_algebra(&"A1".parse().unwrap(), FormChoice::MinimalTrace).unwrap();
        let tds = principal_tds(&g).unwrap();
        assert_eq!(tds.coefficients, vec![Q::one()]);
        assert_eq!(centralizer_dim(&g, &tds), 1);
    }
}

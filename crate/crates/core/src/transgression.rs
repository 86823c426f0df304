//! Transgression `t`, the homomorphism `s`, primitive invariants and the invariant algebra they generate.

use std::collections::HashMap;

use serde::Serialize;

use crate::clifford::Clifford;
use crate::error::{Error, Result};
use crate::exterior::{
    coboundary, coboundary_with_pair, extended_form, theta, wedge, Acc, Multivector, MultivectorJson, QuadSpace,
};
use crate::lie_core::LieAlgebra;
use crate::linalg::{self, Matrix};
use crate::rational::Q;
use crate::symmetric::{dynkin_space, invariant_generators, iota_s, SymPolynomial};

/// `s(z_1 ... z_n) = d z_1 ∧ ... ∧ d z_n`, memoized by monomial.
pub struct SMap {
    dim: usize,
    d: Vec<Multivector>,
    memo: HashMap<Vec<u8>, Multivector>,
}

impl SMap {
    pub fn new(g: &LieAlgebra) -> Self {
        let d = (0..g.dim()).map(|x| coboundary(g, x)).collect();
        SMap { dim: g.dim(), d, memo: HashMap::new() }
    }

    /// `s` built from the coboundary computed with another pair of dual bases.
    pub fn with_pair(g: &LieAlgebra, basis: &[Vec<Q>], dual: &[Vec<Q>]) -> Self {
        let d = (0..g.dim()).map(|x| coboundary_with_pair(g, basis, dual, &g.unit(x))).collect();
        SMap { dim: g.dim(), d, memo: HashMap::new() }
    }

    pub fn monomial(&mut self, e: &[u8]) -> Multivector {
        let Some(last) = e.iter().rposition(|&k| k > 0) else {
            return Multivector::one(self.dim);
        };
        if let Some(v) = self.memo.get(e) {
            return v.clone();
        }
        let mut prefix = e.to_vec();
        prefix[last] -= 1;
        let p = self.monomial(&prefix);
        let out = wedge(&p, &self.d[last]);
        self.memo.insert(e.to_vec(), out.clone());
        out
    }

    pub fn apply(&mut self, f: &SymPolynomial) -> Multivector {
        let mut acc = Acc::new(self.dim);
        for (e, q) in f.terms() {
            let v = self.monomial(e);
            acc.add_mv(&v, q);
        }
        acc.finish()
    }
}

pub fn s_map(g: &LieAlgebra, f: &SymPolynomial) -> Multivector {
    SMap::new(g).apply(f)
}

/// `(m!)^2 / (2m+1)!`.
pub fn transgression_constant(m: usize) -> Q {
    let mf = Q::factorial(m as u64);
    &mf * &mf * Q::factorial(2 * m as u64 + 1).recip()
}

fn check_degree(f: &SymPolynomial, m: usize) -> Result<()> {
    match f.homogeneous_degree() {
        Some(d) if d == m + 1 => Ok(()),
        _ if f.is_zero() => Ok(()),
        _ => Err(Error::Degree(format!("transgression slot m={m} needs a homogeneous polynomial of degree {}", m + 1))),
    }
}

/// `t(f) = (m!)^2/(2m+1)! sum_a e_a ∧ s(iota_S(e^a) f)`; with the standard pair `iota_S(e^a) = d/dz_a`.
pub fn transgress(g: &LieAlgebra, f: &SymPolynomial, m: usize) -> Result<Multivector> {
    transgress_with(g, &mut SMap::new(g), f, m)
}

pub fn transgress_with(g: &LieAlgebra, s: &mut SMap, f: &SymPolynomial, m: usize) -> Result<Multivector> {
    check_degree(f, m)?;
    let dim = g.dim();
    let mut acc = Acc::new(dim);
    for a in 0..dim {
        let da = f.derivative(a);
        if da.is_zero() {
            continue;
        }
        let w = wedge(&Multivector::basis(dim, a), &s.apply(&da));
        acc.add_mv(&w, &Q::one());
    }
    Ok(acc.finish().scale(&transgression_constant(m)))
}

/// Transgression through an explicit pair of dual bases (dense vectors), for the independence check.
pub fn transgress_with_pair(
    g: &LieAlgebra,
    basis: &[Vec<Q>],
    dual: &[Vec<Q>],
    f: &SymPolynomial,
    m: usize,
) -> Result<Multivector> {
    check_degree(f, m)?;
    let mut s = SMap::with_pair(g, basis, dual);
    let mut acc = Acc::new(g.dim());
    for (ea, eda) in basis.iter().zip(dual) {
        let w = wedge(&Multivector::from_vector(ea), &s.apply(&iota_s(g, eda, f)));
        acc.add_mv(&w, &Q::one());
    }
    Ok(acc.finish().scale(&transgression_constant(m)))
}

/// `alpha`: multiply the degree-(2m+1) component by `(-1)^m`.
pub fn alpha(u: &Multivector) -> Multivector {
    u.scale_by_degree(|d| if (d / 2) % 2 == 1 { Q::from_int(-1) } else { Q::one() })
}

pub fn is_invariant(g: &LieAlgebra, u: &Multivector) -> bool {
    (0..g.dim()).all(|x| theta(g, x, u).is_zero())
}

#[derive(Clone, Debug)]
pub struct PrimitiveBasis {
    /// `p_i = t(f_i)`, ordered by degree.
    pub elements: Vec<Multivector>,
    /// Dynkin generators `f_i`, orthogonalized along with the `p_i`.
    pub generators: Vec<SymPolynomial>,
    pub exponents: Vec<usize>,
    /// `(alpha(p_i), p_j)`.
    pub form: Matrix,
}

#[derive(Serialize)]
pub struct PrimitiveBasisJson {
    pub exponents: Vec<usize>,
    pub degrees: Vec<usize>,
    pub generators: Vec<Vec<(Vec<u8>, String)>>,
    pub transgression_constants: Vec<String>,
    pub elements: Vec<MultivectorJson>,
    pub form: Vec<Vec<String>>,
}

impl PrimitiveBasis {
    pub fn rank(&self) -> usize {
        self.elements.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.exponents.iter().map(|m| 2 * m + 1).collect()
    }

    pub fn to_json(&self) -> PrimitiveBasisJson {
        PrimitiveBasisJson {
            exponents: self.exponents.clone(),
            degrees: self.degrees(),
            generators: self.generators.iter().map(|f| f.to_json()).collect(),
            transgression_constants: self.exponents.iter().map(|&m| transgression_constant(m).to_string()).collect(),
            elements: self.elements.iter().map(|p| p.to_json()).collect(),
            form: self.form.to_rows().iter().map(|r| r.iter().map(|q| q.to_string()).collect()).collect(),
        }
    }
}

/// Primitive invariants `p_i = t(f_i)` from the Dynkin generators, invariance-checked and
/// orthogonalized within equal degrees.
pub fn primitive_basis(g: &LieAlgebra) -> Result<PrimitiveBasis> {
    let gens = dynkin_space(g, &invariant_generators(g)?)?;
    primitive_basis_from(g, &gens)
}

pub fn primitive_basis_from(g: &LieAlgebra, gens: &[SymPolynomial]) -> Result<PrimitiveBasis> {
    let sp = QuadSpace::of_algebra(g);
    let mut s = SMap::new(g);
    let mut items: Vec<(usize, SymPolynomial, Multivector)> = Vec::new();
    for f in gens {
        let deg = f.homogeneous_degree().ok_or_else(|| Error::Degree("generator not homogeneous".into()))?;
        let m = deg - 1;
        let p = transgress_with(g, &mut s, f, m)?;
        if p.is_zero() {
            return Err(Error::Invariants(format!("transgression of a degree-{deg} generator vanished")));
        }
        if let Some(x) = (0..g.dim()).find(|&x| !theta(g, x, &p).is_zero()) {
            return Err(Error::Invariants(format!(
                "t(f) of degree {} not invariant under basis vector {x}",
                2 * m + 1
            )));
        }
        items.push((m, f.clone(), p));
    }
    items.sort_by_key(|(m, _, _)| *m);
    // Gram-Schmidt inside each degree
    for i in 0..items.len() {
        for j in 0..i {
            if items[j].0 != items[i].0 {
                continue;
            }
            let num = extended_form(&sp, &items[i].2, &items[j].2);
            if num.is_zero() {
                continue;
            }
            let den = extended_form(&sp, &items[j].2, &items[j].2);
            if den.is_zero() {
                return Err(Error::Invariants("isotropic primitive element in Gram-Schmidt".into()));
            }
            let c = num / den;
            let (fj, pj) = (items[j].1.clone(), items[j].2.clone());
            items[i].1 = items[i].1.sub(&fj.scale(&c));
            items[i].2 = items[i].2.sub(&pj.scale(&c));
        }
    }
    let elements: Vec<Multivector> = items.iter().map(|t| t.2.clone()).collect();
    if mv_rank(&elements) != elements.len() {
        return Err(Error::Invariants("primitive elements are dependent".into()));
    }
    let form = Matrix::from_rows(
        elements.iter().map(|p| elements.iter().map(|q| extended_form(&sp, &alpha(p), q)).collect()).collect(),
    );
    Ok(PrimitiveBasis {
        exponents: items.iter().map(|t| t.0).collect(),
        generators: items.iter().map(|t| t.1.clone()).collect(),
        elements,
        form,
    })
}

/// Rank of a list of multivectors as coordinate vectors over their joint support.
pub fn mv_rank(us: &[Multivector]) -> usize {
    let mut masks: Vec<u64> = us.iter().flat_map(|u| u.terms().iter().map(|(m, _)| *m)).collect();
    masks.sort_unstable();
    masks.dedup();
    let rows: Vec<Vec<Q>> = us.iter().map(|u| masks.iter().map(|m| u.coeff(*m)).collect()).collect();
    linalg::rank_of(&rows)
}

/// `p_I = p_{i1} ∧ ... ∧ p_{ik}` for every subset I (bit i of the index selects p_i).
pub fn invariant_algebra(pb: &PrimitiveBasis) -> Vec<Multivector> {
    let r = pb.rank();
    let dim = pb.elements.first().map_or(0, |p| p.dim());
    (0..1usize << r)
        .map(|set| {
            (0..r).filter(|i| set >> i & 1 == 1).fold(Multivector::one(dim), |acc, i| wedge(&acc, &pb.elements[i]))
        })
        .collect()
}

/// Checks on the invariant algebra: every p_I invariant and the family independent.
pub fn check_invariant_algebra(g: &LieAlgebra, ps: &[Multivector]) -> Result<()> {
    if let Some(k) = ps.iter().position(|p| !is_invariant(g, p)) {
        return Err(Error::Invariants(format!("p_I #{k} is not invariant")));
    }
    if mv_rank(ps) != ps.len() {
        return Err(Error::Invariants("the p_I are dependent".into()));
    }
    Ok(())
}

/// Gram matrix of the extended form on a family.
pub fn gram_matrix(sp: &QuadSpace, us: &[Multivector]) -> Matrix {
    Matrix::from_rows(us.iter().map(|u| us.iter().map(|v| extended_form(sp, u, v)).collect()).collect())
}

/// `p ._hbar p` together with `(alpha(p), p)`.
#[derive(Clone, Debug)]
pub struct SquareCheck {
    pub square: Multivector,
    pub alpha_pairing: Q,
}

impl SquareCheck {
    /// Scalar value of the square, if it is a scalar.
    pub fn scalar(&self) -> Option<Q> {
        match self.square.max_degree() {
            None => Some(Q::zero()),
            Some(0) => Some(self.square.scalar_part()),
            _ => None,
        }
    }

    pub fn holds(&self) -> bool {
        self.scalar().is_some_and(|s| s == self.alpha_pairing)
    }
}

pub fn clifford_square_check(cl: &Clifford, p: &Multivector, hbar: &Q) -> SquareCheck {
    SquareCheck { square: cl.mul(p, p, hbar), alpha_pairing: extended_form(cl.space(), &alpha(p), p) }
}

/// Invariants of the exterior algebra by direct kernel solve of `theta(x) u = 0`, degree by degree.
/// Only zero-weight blades can occur; simple root vectors generate g, so their thetas suffice.
pub fn kernel_invariants(g: &LieAlgebra) -> Vec<Multivector> {
    let dim = g.dim();
    assert!(dim <= 16, "brute-force kernel limited to small algebras");
    let zero = crate::hc_map::zero_weight_blades(g);
    let gens: Vec<usize> = (0..g.rank()).flat_map(|i| [g.x(i), g.y(i)]).collect();
    let mut out = Vec::new();
    for k in 0..=dim {
        let cols: Vec<u64> = zero.iter().copied().filter(|m| m.count_ones() as usize == k).collect();
        if cols.is_empty() {
            continue;
        }
        let mut rows: HashMap<(usize, u64), Vec<Q>> = HashMap::new();
        for (c, &m) in cols.iter().enumerate() {
            let b = Multivector::blade(dim, m, Q::one());
            for (gi, &x) in gens.iter().enumerate() {
                for (mm, q) in theta(g, x, &b).terms() {
                    rows.entry((gi, *mm)).or_insert_with(|| vec![Q::zero(); cols.len()])[c] = q.clone();
                }
            }
        }
        let mut keys: Vec<_> = rows.keys().copied().collect();
        keys.sort_unstable();
        let mat = if keys.is_empty() {
            Matrix::zeros(1, cols.len())
        } else {
            Matrix::from_rows(keys.iter().map(|k| rows[k].clone()).collect())
        };
        for v in mat.nullspace() {
            out.push(Multivector::from_terms(dim, cols.iter().copied().zip(v)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::{build_algebra, FormChoice};

    #[test]
    fn a1_casimir_transgresses_to_top_form() {
        let g = build_algebra(&"A1".parse().unwrap(), FormChoice::MinimalTrace).unwrap();
        let pb = primitive_basis(&g).unwrap();
        assert_eq!(pb.exponents, vec![1]);
        let p = &pb.elements[0];
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[0].0, 0b111);
        assert_eq!(kernel_invariants(&g).len(), 2);
    }
}

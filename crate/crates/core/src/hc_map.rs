//! Clifford Harish-Chandra maps: the Chevalley projection `phi0`, the r-matrix operator, and
//! `Phi_hbar` by two independent routes (contraction exponential and triangular normal ordering).

use std::collections::HashMap;
use std::sync::RwLock;

use crate::clifford::{delta_on_pbw, Clifford};
use crate::enveloping::{classical_hc, PbwElement};
use crate::error::{Error, Result};
use crate::exterior::{bits, contract_basis, Acc, Mask, Multivector};
use crate::lie_core::{BasisRole, LieAlgebra};
use crate::rational::Q;
use crate::symmetric::evaluate_at;

/// Chevalley projection on the exterior algebra: keep pure-Cartan blades, re-indexed to width r.
pub fn phi0(g: &LieAlgebra, u: &Multivector) -> Multivector {
    u.restrict_compress(g.cartan_mask())
}

/// `iota(r) = sum_i iota(x_i) iota(y_i)` over positive roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrixOperator {
    /// `(x_i, y_i)` basis indices with `(x_i, y_i) = 1`.
    pub pairs: Vec<(usize, usize)>,
}

impl RMatrixOperator {
    pub fn new(g: &LieAlgebra) -> Self {
        Self::with_order(g, &(0..g.n_pos()).collect::<Vec<_>>()).expect("identity order")
    }

    /// Same operator with the positive roots visited in another order.
    pub fn with_order(g: &LieAlgebra, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; g.n_pos()];
        for &i in order {
            if i >= g.n_pos() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Structure("order is not a permutation of the positive roots".into()));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Structure("order misses a positive root".into()));
        }
        let pairs: Vec<(usize, usize)> = order.iter().map(|&i| (g.x(i), g.y(i))).collect();
        for &(x, y) in &pairs {
            if !g.form()[(x, y)].is_one() {
                return Err(Error::Structure(format!("(x, y) != 1 for pair ({x}, {y})")));
            }
        }
        Ok(RMatrixOperator { pairs })
    }

    /// One summand `iota(x_i) iota(y_i)`.
    pub fn summand(&self, cl: &Clifford, i: usize, u: &Multivector) -> Multivector {
        let (x, y) = self.pairs[i];
        contract_basis(cl.space(), x, &contract_basis(cl.space(), y, u))
    }

    pub fn apply(&self, cl: &Clifford, u: &Multivector) -> Multivector {
        let mut acc = Acc::new(u.dim());
        for i in 0..self.pairs.len() {
            acc.add_mv(&self.summand(cl, i, u), &Q::one());
        }
        acc.finish()
    }
}

/// Harish-Chandra map context for one algebra: Clifford products on g and h plus a per-hbar memo
/// of the triangular basis `N(A) = (Y_A ∧ H_A) . X_A`.
pub struct HcMap<'g> {
    g: &'g LieAlgebra,
    cl: Clifford,
    clh: Clifford,
    rmat: RMatrixOperator,
    tri: RwLock<HashMap<(Q, Mask), Multivector>>,
}

impl<'g> HcMap<'g> {
    pub fn new(g: &'g LieAlgebra) -> Self {
        HcMap {
            g,
            cl: Clifford::of_algebra(g),
            clh: Clifford::of_cartan(g),
            rmat: RMatrixOperator::new(g),
            tri: RwLock::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.g
    }

    pub fn clifford(&self) -> &Clifford {
        &self.cl
    }

    pub fn cartan_clifford(&self) -> &Clifford {
        &self.clh
    }

    pub fn rmatrix(&self) -> &RMatrixOperator {
        &self.rmat
    }

    pub fn phi0(&self, u: &Multivector) -> Multivector {
        phi0(self.g, u)
    }

    pub fn iota_r(&self, u: &Multivector) -> Multivector {
        self.rmat.apply(&self.cl, u)
    }

    /// `Phi_hbar(u) = sum_s hbar^s / s! phi0(iota(r)^s u)`.
    pub fn phi_rmatrix(&self, u: &Multivector, hbar: &Q) -> Multivector {
        self.phi_rmatrix_with(&self.rmat, u, hbar)
    }

    pub fn phi_rmatrix_with(&self, op: &RMatrixOperator, u: &Multivector, hbar: &Q) -> Multivector {
        let mut acc = Acc::new(self.g.rank());
        let mut cur = u.clone();
        let mut s = 0u64;
        let mut coef = Q::one();
        while !cur.is_zero() {
            acc.add_mv(&self.phi0(&cur), &coef);
            if hbar.is_zero() {
                break;
            }
            s += 1;
            coef = &coef * hbar * Q::from_int(s as i64).recip();
            cur = op.apply(&self.cl, &cur);
        }
        acc.finish()
    }

    /// Triangular basis element for mask A: the y and h parts as one blade, times the x part.
    fn triangular(&self, a: Mask, hbar: &Q) -> Multivector {
        let key = (hbar.clone(), a);
        if let Some(v) = self.tri.read().unwrap().get(&key) {
            return v.clone();
        }
        let dim = self.g.dim();
        let xmask: Mask =
            bits(a).filter(|&i| matches!(self.g.role(i), BasisRole::PosRoot(_))).fold(0, |m, i| m | 1 << i);
        let left = Multivector::blade(dim, a & !xmask, Q::one());
        let right = Multivector::blade(dim, xmask, Q::one());
        let n = self.cl.mul(&left, &right, hbar);
        self.tri.write().unwrap().insert(key, n.clone());
        n
    }

    /// Coordinates of u on the triangular basis, found by peeling top degrees.
    pub fn triangular_coordinates(&self, u: &Multivector, hbar: &Q) -> Vec<(Mask, Q)> {
        let mut rest = u.clone();
        let mut coords = Vec::new();
        while let Some(top) = rest.max_degree() {
            let lead = rest.grade(top);
            let mut acc = Acc::new(u.dim());
            for (m, q) in lead.terms() {
                coords.push((*m, q.clone()));
                acc.add_mv(&self.triangular(*m, hbar), q);
            }
            rest = rest.sub(&acc.finish());
            debug_assert!(rest.max_degree().is_none_or(|d| d < top));
        }
        coords.sort_by_key(|(m, _)| *m);
        coords
    }

    /// `Phi_hbar` through the triangular factorization: augmentations kill every coordinate with a y or x.
    pub fn phi_normal_order(&self, u: &Multivector, hbar: &Q) -> Multivector {
        let cm = self.g.cartan_mask();
        let kept = self.triangular_coordinates(u, hbar).into_iter().filter(|(m, _)| m & !cm == 0);
        Multivector::from_terms(self.g.dim(), kept).restrict_compress(cm)
    }

    pub fn phi(&self, u: &Multivector, hbar: &Q) -> Multivector {
        self.phi_rmatrix(u, hbar)
    }

    /// `Phi_hbar(delta(u))` and `Psi(u)(hbar rho)`.
    pub fn phi_compose_delta(&self, u: &PbwElement, hbar: &Q) -> Result<(Multivector, Q)> {
        let d = delta_on_pbw(self.g, &self.cl, u, hbar)?;
        let lhs = self.phi(&d, hbar);
        let (rho, _) = self.g.rho_and_rho_check();
        let point: Vec<Q> = rho.iter().map(|c| c * hbar).collect();
        let rhs = evaluate_at(self.g, &classical_hc(self.g, u), &point);
        Ok((lhs, rhs))
    }

    /// Lift a width-r element of the exterior algebra of h back into width dim g.
    pub fn lift_cartan(&self, v: &Multivector) -> Multivector {
        v.expand_into(self.g.dim(), self.g.cartan_mask())
    }
}

/// Sum of the weights of a blade's basis vectors (simple-root coordinates).
pub fn blade_weight(g: &LieAlgebra, m: Mask) -> Vec<i64> {
    let mut w = vec![0i64; g.rank()];
    for i in bits(m) {
        for (a, b) in w.iter_mut().zip(g.weight(i)) {
            *a += b;
        }
    }
    w
}

/// Blades of weight zero: a basis of the h-invariants.
pub fn zero_weight_blades(g: &LieAlgebra) -> Vec<Mask> {
    (0..1u64 << g.dim()).filter(|&m| blade_weight(g, m).iter().all(|&c| c == 0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::{build_algebra, FormChoice};

    #[test]
    fn a1_values() {
        let g = build_algebra(&"A1".parse().unwrap(), FormChoice::MinimalTrace).unwrap();
        let hc = HcMap::new(&g);
        let (f, h, e) = (Multivector::basis(3, 0), Multivector::basis(3, 1), Multivector::basis(3, 2));
        let ehf = crate::exterior::wedge(&crate::exterior::wedge(&e, &h), &f);
        assert_eq!(hc.iota_r(&ehf), h.neg());
        let one = Q::one();
        let hr = Multivector::basis(1, 0);
        assert_eq!(hc.phi_rmatrix(&ehf, &one), hr.neg());
        assert_eq!(hc.phi_normal_order(&ehf, &one), hr.neg());
        let ef = crate::exterior::wedge(&e, &f);
        let two = Q::from_int(2);
        assert_eq!(hc.phi_rmatrix(&ef, &two), Multivector::scalar(1, two.clone()));
        assert_eq!(hc.phi_normal_order(&ef, &two), Multivector::scalar(1, two));
    }
}

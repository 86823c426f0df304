//! Clifford products on the exterior-algebra carrier, `sigma`/`beta_wedge`, and the delta map.
//!
//! `gamma_hbar(x) u = x ∧ u + hbar iota(x) u`. Products are computed two ways: the literal
//! gamma cascade (`mul_ref`), and a fast route that splits the space into mutually orthogonal
//! blocks and multiplies blade pieces through precomputed per-block tables.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use crate::enveloping::PbwElement;
use crate::error::{Error, Result};
use crate::exterior::{bits, contract_basis, wedge, Acc, Mask, Multivector, QuadSpace};
use crate::lie_core::LieAlgebra;
use crate::linalg::Matrix;
use crate::rational::Q;

/// `table[la][lb]` = product of local blades, with masks already global.
type BlockTable = Vec<Vec<Vec<(Mask, Q)>>>;

pub struct Clifford {
    sp: QuadSpace,
    tables: RwLock<HashMap<Q, Arc<Vec<BlockTable>>>>,
}

impl Clifford {
    pub fn new(sp: QuadSpace) -> Self {
        Clifford { sp, tables: RwLock::new(HashMap::new()) }
    }

    pub fn of_algebra(g: &LieAlgebra) -> Self {
        Self::new(QuadSpace::of_algebra(g))
    }

    pub fn of_cartan(g: &LieAlgebra) -> Self {
        Self::new(QuadSpace::of_cartan(g))
    }

    pub fn space(&self) -> &QuadSpace {
        &self.sp
    }

    pub fn dim(&self) -> usize {
        self.sp.dim()
    }

    /// `gamma_hbar(e_k) u`.
    pub fn gamma(&self, k: usize, hbar: &Q, u: &Multivector) -> Multivector {
        let w = wedge(&Multivector::basis(u.dim(), k), u);
        w.add(&contract_basis(&self.sp, k, u).scale(hbar))
    }

    /// Reference product by the gamma cascade on the left factor's blades.
    pub fn mul_ref(&self, a: &Multivector, b: &Multivector, hbar: &Q) -> Multivector {
        let mut acc = Acc::new(a.dim());
        let mut memo = HashMap::new();
        for (m, q) in a.terms() {
            acc.add_mv(&self.blade_times_ref(*m, b, hbar, &mut memo), q);
        }
        acc.finish()
    }

    fn blade_times_ref(
        &self,
        m: Mask,
        b: &Multivector,
        hbar: &Q,
        memo: &mut HashMap<Mask, Multivector>,
    ) -> Multivector {
        if m == 0 {
            return b.clone();
        }
        if let Some(v) = memo.get(&m) {
            return v.clone();
        }
        // e_A = a1 ∧ e_A' = gamma(a1) e_A' - hbar iota(a1) e_A'
        let a1 = m.trailing_zeros() as usize;
        let rest = m & !(1 << a1);
        let first = self.gamma(a1, hbar, &self.blade_times_ref(rest, b, hbar, memo));
        let mut acc = Acc::new(b.dim());
        acc.add_mv(&first, &Q::one());
        if !hbar.is_zero() {
            let c = contract_basis(&self.sp, a1, &Multivector::blade(b.dim(), rest, Q::one()));
            for (mm, qq) in c.terms() {
                acc.add_mv(&self.blade_times_ref(*mm, b, hbar, memo), &(-(qq * hbar)));
            }
        }
        let out = acc.finish();
        memo.insert(m, out.clone());
        out
    }

    fn tables(&self, hbar: &Q) -> Arc<Vec<BlockTable>> {
        if let Some(t) = self.tables.read().unwrap().get(hbar) {
            return t.clone();
        }
        let built: Vec<BlockTable> = (0..self.sp.blocks().len()).map(|b| self.build_table(b, hbar)).collect();
        let arc = Arc::new(built);
        self.tables.write().unwrap().entry(hbar.clone()).or_insert(arc).clone()
    }

    fn build_table(&self, b: usize, hbar: &Q) -> BlockTable {
        let blk = &self.sp.blocks()[b];
        let k = blk.len();
        let gram = Matrix::from_rows(
            blk.iter().map(|&i| blk.iter().map(|&j| self.sp.gram()[(i, j)].clone()).collect()).collect(),
        );
        let local = Clifford::new(QuadSpace::new(gram));
        (0..1usize << k)
            .map(|la| {
                (0..1usize << k)
                    .map(|lb| {
                        let p = local.mul_ref(
                            &Multivector::blade(k, la as u64, Q::one()),
                            &Multivector::blade(k, lb as u64, Q::one()),
                            hbar,
                        );
                        p.terms().iter().map(|(m, q)| (self.sp.global_mask(b, *m as usize), q.clone())).collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// Product of two frozen-order blades through the block tables.
    fn blade_product(&self, t: &[BlockTable], a: Mask, b: Mask, c: &Q, acc: &mut Acc) {
        let mut neg = self.sp.reorder_sign(a) ^ self.sp.reorder_sign(b);
        let mut a_after = a.count_ones();
        let mut parts: Vec<&[(Mask, Q)]> = Vec::new();
        for (g, bm) in self.sp.block_masks().iter().enumerate() {
            let (ag, bg) = (a & bm, b & bm);
            a_after -= ag.count_ones();
            if (bg.count_ones() * a_after) & 1 == 1 {
                neg = !neg;
            }
            if ag == 0 && bg == 0 {
                continue;
            }
            let e = &t[g][self.sp.local_mask(g, ag)][self.sp.local_mask(g, bg)];
            if e.is_empty() {
                return;
            }
            parts.push(e);
        }
        let base = if neg { -c.clone() } else { c.clone() };
        let mut combos: Vec<(Mask, Q)> = vec![(0, base)];
        for e in parts {
            if e.len() == 1 {
                let (m, q) = &e[0];
                for cm in combos.iter_mut() {
                    cm.0 |= m;
                    if !q.is_one() {
                        cm.1 *= q;
                    }
                }
            } else {
                let mut next = Vec::with_capacity(combos.len() * e.len());
                for (cm, cq) in &combos {
                    for (m, q) in e {
                        next.push((cm | m, cq * q));
                    }
                }
                combos = next;
            }
        }
        for (m, q) in combos {
            acc.add_signed(m, q, self.sp.reorder_sign(m));
        }
    }

    /// Clifford product `a ._hbar b`.
    pub fn mul(&self, a: &Multivector, b: &Multivector, hbar: &Q) -> Multivector {
        assert_eq!(a.dim(), b.dim(), "dimension mismatch");
        assert_eq!(a.dim(), self.dim(), "multivector width differs from the quadratic space");
        let t = self.tables(hbar);
        let work = a.len() * b.len();
        if work < 4096 {
            let mut acc = Acc::new(a.dim());
            for (ma, qa) in a.terms() {
                for (mb, qb) in b.terms() {
                    self.blade_product(&t, *ma, *mb, &(qa * qb), &mut acc);
                }
            }
            return acc.finish();
        }
        let accs: Vec<Acc> = a
            .terms()
            .par_chunks(8.max(a.len() / 64))
            .map(|chunk| {
                let mut acc = Acc::new(a.dim());
                for (ma, qa) in chunk {
                    for (mb, qb) in b.terms() {
                        self.blade_product(&t, *ma, *mb, &(qa * qb), &mut acc);
                    }
                }
                acc
            })
            .collect();
        let mut total = Acc::new(a.dim());
        for acc in accs {
            total.merge(acc);
        }
        total.finish()
    }

    pub fn try_mul(&self, a: &Multivector, b: &Multivector, hbar: &Q) -> Result<Multivector> {
        a.check_dim(b)?;
        if a.dim() != self.dim() {
            return Err(Error::Dimension("quadratic space width".into()));
        }
        Ok(self.mul(a, b, hbar))
    }

    /// Ordered product of several elements.
    pub fn product(&self, factors: &[Multivector], hbar: &Q) -> Multivector {
        factors.iter().fold(Multivector::one(self.dim()), |acc, f| self.mul(&acc, f, hbar))
    }

    /// `sigma(x_1 ... x_n) = gamma(x_1)...gamma(x_n) 1` for a word of degree-1 elements.
    pub fn sigma(&self, word: &[Multivector], hbar: &Q) -> Result<Multivector> {
        let mut u = Multivector::one(self.dim());
        for x in word.iter().rev() {
            let v = x.as_vector()?;
            let mut acc = Acc::new(self.dim());
            for (k, q) in v.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
                acc.add_mv(&self.gamma(k, hbar, &u), q);
            }
            u = acc.finish();
        }
        Ok(u)
    }

    /// `beta_wedge(x_1 ∧ ... ∧ x_n) = 1/n! sum_pi sgn(pi) x_pi(1) ... x_pi(n)`, evaluated on the carrier.
    /// Exhaustive over permutations, so limited to degree 7.
    pub fn beta_wedge(&self, u: &Multivector, hbar: &Q) -> Result<Multivector> {
        let mut acc = Acc::new(self.dim());
        for (m, q) in u.terms() {
            let idx: Vec<usize> = bits(*m).collect();
            if idx.len() > 7 {
                return Err(Error::Degree("beta_wedge limited to degree 7".into()));
            }
            let n = idx.len();
            let inv_fact = Q::factorial(n as u64).recip();
            for (perm, odd) in permutations_with_sign(n) {
                let word: Vec<Multivector> = perm.iter().map(|&p| Multivector::basis(self.dim(), idx[p])).collect();
                let s = self.sigma(&word, hbar)?;
                let c = if odd { -(q * &inv_fact) } else { q * &inv_fact };
                acc.add_mv(&s, &c);
            }
        }
        Ok(acc.finish())
    }
}

fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(vec![], false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations_with_sign(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            // inserting n-1 at position k passes (len - k) smaller elements
            out.push((q, odd ^ ((p.len() - k) % 2 == 1)));
        }
    }
    out
}

/// Components `u_{i+j-2s}` with `a ._hbar b = sum_s hbar^s u_{i+j-2s}`; index s in the result.
pub fn taylor_decompose(cl: &Clifford, a: &Multivector, b: &Multivector) -> Result<Vec<Multivector>> {
    let dim = cl.dim();
    let (i, j) = match (a.homogeneous_degree(), b.homogeneous_degree()) {
        (Some(i), Some(j)) => (i, j),
        _ if a.is_zero() || b.is_zero() => return Ok(vec![Multivector::zero(dim)]),
        _ => return Err(Error::Degree("taylor_decompose needs homogeneous inputs".into())),
    };
    let p = cl.mul(a, b, &Q::one());
    let smax = i.min(j);
    let mut out: Vec<Multivector> = (0..=smax).map(|s| p.grade(i + j - 2 * s)).collect();
    while out.len() > 1 && out.last().is_some_and(|u| u.is_zero()) {
        out.pop();
    }
    Ok(out)
}

/// Evaluate a Taylor list at a given hbar.
pub fn taylor_evaluate(us: &[Multivector], hbar: &Q) -> Multivector {
    let dim = us.first().map_or(0, |u| u.dim());
    let mut acc = Acc::new(dim);
    for (s, u) in us.iter().enumerate() {
        acc.add_mv(u, &hbar.pow(s as i64));
    }
    acc.finish()
}

/// `delta(x) = 1/4 sum_a e_a ._hbar [e^a, x]` for a dense vector x.
pub fn delta_vec(g: &LieAlgebra, cl: &Clifford, x: &[Q], hbar: &Q) -> Multivector {
    let dim = g.dim();
    let quarter = Q::frac(1, 4);
    let mut acc = Acc::new(dim);
    for a in 0..dim {
        let mut ed = vec![Q::zero(); dim];
        for (b, q) in g.dual_vector(a) {
            ed[b] = q;
        }
        let br = g.bracket(&ed, x);
        if br.iter().all(Q::is_zero) {
            continue;
        }
        let p = cl.mul(&Multivector::basis(dim, a), &Multivector::from_vector(&br), hbar);
        acc.add_mv(&p, &quarter);
    }
    acc.finish()
}

pub fn delta(g: &LieAlgebra, cl: &Clifford, x: usize, hbar: &Q) -> Multivector {
    delta_vec(g, cl, &g.unit(x), hbar)
}

/// delta on PBW elements: each normal-ordered monomial maps to the ordered product of delta of its factors.
pub fn delta_on_pbw(g: &LieAlgebra, cl: &Clifford, u: &PbwElement, hbar: &Q) -> Result<Multivector> {
    if u.dim() != g.dim() {
        return Err(Error::Dimension("PBW element from another algebra".into()));
    }
    let ds: Vec<Multivector> = (0..g.dim()).map(|a| delta(g, cl, a, hbar)).collect();
    let mut acc = Acc::new(g.dim());
    for (mono, q) in u.terms() {
        let mut p = Multivector::one(g.dim());
        for (a, &e) in mono.iter().enumerate() {
            for _ in 0..e {
                p = cl.mul(&p, &ds[a], hbar);
            }
        }
        acc.add_mv(&p, q);
    }
    Ok(acc.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::{build_algebra, FormChoice};

    #[test]
    fn a1_examples() {
        let g = build_algebra(&"A1".parse().unwrap(), FormChoice::MinimalTrace).unwrap();
        let cl = Clifford::of_algebra(&g);
        let (f, e) = (Multivector::basis(3, 0), Multivector::basis(3, 2));
        let one = Q::one();
        let ef = wedge(&e, &f);
        assert_eq!(cl.mul(&e, &f, &one), ef.add(&Multivector::one(3)));
        assert_eq!(cl.mul(&f, &e, &one), ef.neg().add(&Multivector::one(3)));
        assert_eq!(cl.mul_ref(&e, &f, &one), cl.mul(&e, &f, &one));
        // delta(h) = e ∧ f
        assert_eq!(delta(&g, &cl, 1, &one), ef);
    }

    #[test]
    fn permutation_signs() {
        let ps = permutations_with_sign(3);
        assert_eq!(ps.len(), 6);
        assert_eq!(ps.iter().filter(|p| p.1).count(), 3);
        for (p, odd) in ps {
            let inv = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            assert_eq!(inv % 2 == 1, odd);
        }
    }
}

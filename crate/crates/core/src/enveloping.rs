//! PBW-ordered universal enveloping algebra, symmetrization and the classical Harish-Chandra map.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::lie_core::{BasisRole, LieAlgebra};
use crate::rational::Q;
use crate::symmetric::SymPolynomial;

/// Element of U(g): normal-ordered monomials (exponents over the frozen basis order) with coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwElement {
    dim: usize,
    terms: BTreeMap<Vec<u8>, Q>,
}

impl PbwElement {
    pub fn zero(dim: usize) -> Self {
        PbwElement { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(vec![0; dim], Q::one())
    }

    pub fn basis(dim: usize, a: usize) -> Self {
        let mut e = vec![0; dim];
        e[a] = 1;
        Self::monomial(e, Q::one())
    }

    pub fn monomial(e: Vec<u8>, q: Q) -> Self {
        let mut p = Self::zero(e.len());
        p.add_term(e, q);
        p
    }

    pub fn add_term(&mut self, e: Vec<u8>, q: Q) {
        if q.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += q;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, q);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, q) in &o.terms {
            p.add_term(e.clone(), q.clone());
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Q::from_int(-1)))
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut p = Self::zero(self.dim);
        for (e, q) in &self.terms {
            p.add_term(e.clone(), q * c);
        }
        p
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().map(|&k| k as usize).sum()).max().unwrap_or(0)
    }
}

/// Expand an exponent vector into its ordered word of basis indices.
pub fn word_of(e: &[u8]) -> Vec<usize> {
    e.iter().enumerate().flat_map(|(a, &k)| std::iter::repeat_n(a, k as usize)).collect()
}

/// Multiplication context with a memo of `monomial * e_k` rewrites. Not shared across threads.
pub struct Enveloping<'g> {
    g: &'g LieAlgebra,
    memo: RefCell<HashMap<(Vec<u8>, usize), PbwElement>>,
}

impl<'g> Enveloping<'g> {
    pub fn new(g: &'g LieAlgebra) -> Self {
        Enveloping { g, memo: RefCell::new(HashMap::new()) }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        self.g
    }

    /// `M * e_k` in normal order, using `M' e_j e_k = M' e_k e_j + M' [e_j, e_k]`.
    fn mono_times(&self, m: &[u8], k: usize) -> PbwElement {
        let dim = m.len();
        let last = m.iter().rposition(|&x| x > 0);
        if last.is_none_or(|j| j <= k) {
            let mut e = m.to_vec();
            e[k] += 1;
            return PbwElement::monomial(e, Q::one());
        }
        let key = (m.to_vec(), k);
        if let Some(v) = self.memo.borrow().get(&key) {
            return v.clone();
        }
        let j = last.unwrap();
        let mut mp = m.to_vec();
        mp[j] -= 1;
        let mut out = PbwElement::zero(dim);
        for (e, q) in self.mono_times(&mp, k).terms {
            out = out.add(&self.mono_times(&e, j).scale(&q));
        }
        for (c, q) in self.g.bracket_basis(j, k) {
            out = out.add(&self.mono_times(&mp, *c).scale(q));
        }
        self.memo.borrow_mut().insert(key, out.clone());
        out
    }

    fn times_basis(&self, u: &PbwElement, k: usize) -> PbwElement {
        let mut out = PbwElement::zero(u.dim);
        for (e, q) in &u.terms {
            out = out.add(&self.mono_times(e, k).scale(q));
        }
        out
    }

    /// Product of a word of basis elements.
    pub fn word(&self, w: &[usize]) -> PbwElement {
        w.iter().fold(PbwElement::one(self.g.dim()), |acc, &k| self.times_basis(&acc, k))
    }

    pub fn mul(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero(a.dim);
        for (eb, qb) in &b.terms {
            let mut t = a.clone();
            for k in word_of(eb) {
                t = self.times_basis(&t, k);
            }
            out = out.add(&t.scale(qb));
        }
        out
    }

    pub fn try_mul(&self, a: &PbwElement, b: &PbwElement) -> Result<PbwElement> {
        if a.dim != self.g.dim() || b.dim != self.g.dim() {
            return Err(Error::Dimension("PBW element from another algebra".into()));
        }
        Ok(self.mul(a, b))
    }

    pub fn commutator(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// Symmetrization: each monomial maps to the average of its distinct orderings.
    pub fn beta_sym(&self, f: &SymPolynomial) -> PbwElement {
        let mut out = PbwElement::zero(self.g.dim());
        for (e, q) in f.terms() {
            let words = distinct_arrangements(&word_of(e));
            let w = Q::from_int(words.len() as i64).recip();
            for word in words {
                out = out.add(&self.word(&word).scale(&(q * &w)));
            }
        }
        out
    }
}

/// All distinct orderings of a multiset word, in lexicographic order.
pub fn distinct_arrangements(w: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = w.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    // next_permutation
    loop {
        let n = cur.len();
        if n < 2 {
            return out;
        }
        let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else { return out };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// Classical Harish-Chandra map: keep pure-Cartan monomials, as a polynomial in the r Cartan variables.
pub fn classical_hc(g: &LieAlgebra, u: &PbwElement) -> SymPolynomial {
    let r = g.rank();
    let cr = g.cartan_range();
    let mut p = SymPolynomial::zero(r);
    for (e, q) in u.terms() {
        if e.iter().enumerate().all(|(a, &k)| k == 0 || cr.contains(&a)) {
            p.add_term(e[cr.clone()].to_vec(), q.clone());
        }
    }
    p
}

/// Harish-Chandra image of a word without normal ordering: leading y or trailing x vanish,
/// a leading h factors out, a leading x is commuted to the right.
pub struct WordHc<'g> {
    g: &'g LieAlgebra,
    memo: HashMap<Vec<usize>, SymPolynomial>,
}

impl<'g> WordHc<'g> {
    pub fn new(g: &'g LieAlgebra) -> Self {
        WordHc { g, memo: HashMap::new() }
    }

    fn weight_zero(&self, w: &[usize]) -> bool {
        let r = self.g.rank();
        (0..r).all(|j| w.iter().map(|&a| self.g.weight(a)[j]).sum::<i64>() == 0)
    }

    pub fn of_word(&mut self, w: &[usize]) -> SymPolynomial {
        let r = self.g.rank();
        if w.is_empty() {
            return SymPolynomial::one(r);
        }
        if !self.weight_zero(w) {
            return SymPolynomial::zero(r);
        }
        if let Some(p) = self.memo.get(w) {
            return p.clone();
        }
        let out = match self.g.role(w[0]) {
            BasisRole::NegRoot(_) => SymPolynomial::zero(r),
            _ if matches!(self.g.role(*w.last().unwrap()), BasisRole::PosRoot(_)) => SymPolynomial::zero(r),
            BasisRole::Cartan(j) => SymPolynomial::var(r, j).mul(&self.of_word(&w[1..])),
            BasisRole::PosRoot(_) => {
                let x = w[0];
                let rest = &w[1..];
                let mut acc = SymPolynomial::zero(r);
                for k in 0..rest.len() {
                    for (c, q) in self.g.bracket_basis(x, rest[k]) {
                        let mut nw = rest.to_vec();
                        nw[k] = *c;
                        acc = acc.add(&self.of_word(&nw).scale(q));
                    }
                }
                acc
            }
        };
        self.memo.insert(w.to_vec(), out.clone());
        out
    }

    /// `Psi(beta(f))` through words.
    pub fn of_beta(&mut self, f: &SymPolynomial) -> SymPolynomial {
        let r = self.g.rank();
        let mut out = SymPolynomial::zero(r);
        for (e, q) in f.terms() {
            let word = word_of(e);
            if !self.weight_zero(&word) {
                continue;
            }
            let words = distinct_arrangements(&word);
            let w = Q::from_int(words.len() as i64).recip();
            let mut s = SymPolynomial::zero(r);
            for wd in words {
                s = s.add(&self.of_word(&wd));
            }
            out = out.add(&s.scale(&(q * &w)));
        }
        out
    }
}

/// All normal-ordered monomials of total degree <= `max_deg`.
pub fn monomials_up_to(dim: usize, max_deg: usize) -> Vec<Vec<u8>> {
    fn rec(dim: usize, a: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if a == dim {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[a] = k as u8;
            rec(dim, a + 1, left - k, cur, out);
        }
        cur[a] = 0;
    }
    let mut out = Vec::new();
    rec(dim, 0, max_deg, &mut vec![0; dim], &mut out);
    out.sort_by_key(|e| (e.iter().map(|&k| k as usize).sum::<usize>(), e.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::{build_algebra, FormChoice};

    #[test]
    fn a1_rewrites() {
        let g = build_algebra(&"A1".parse().unwrap(), FormChoice::MinimalTrace).unwrap();
        let u = Enveloping::new(&g);
        let (f, h, e) = (0, 1, 2);
        let ef = u.word(&[e, f]);
        let expect = u.word(&[f, e]).add(&PbwElement::basis(3, h));
        assert_eq!(ef, expect);
        assert_eq!(u.word(&[h, h]), PbwElement::monomial(vec![0, 2, 0], Q::one()));
    }

    #[test]
    fn arrangements() {
        assert_eq!(distinct_arrangements(&[1, 0, 1]).len(), 3);
        assert_eq!(distinct_arrangements(&[0, 1, 2]).len(), 6);
        assert_eq!(distinct_arrangements(&[]).len(), 1);
        assert_eq!(monomials_up_to(3, 2).len(), 10);
    }
}

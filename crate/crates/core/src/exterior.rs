//! Sparse exterior algebra over a quadratic space: blades are bitmasks over the frozen basis order.

use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie_core::LieAlgebra;
use crate::linalg::Matrix;
use crate::rational::Q;

pub type Mask = u64;

/// Multiplicative hash for bitmask keys.
#[derive(Default)]
pub struct MaskHasher(u64);

impl Hasher for MaskHasher {
    fn finish(&self) -> u64 {
        self.0
    }
    fn write(&mut self, bytes: &[u8]) {
        for b in bytes {
            self.0 = (self.0 ^ *b as u64).wrapping_mul(0x100000001b3);
        }
    }
    fn write_u64(&mut self, n: u64) {
        self.0 = (n ^ (n >> 29)).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    }
}

pub type MaskMap<V> = HashMap<Mask, V, BuildHasherDefault<MaskHasher>>;

#[inline]
pub fn degree(m: Mask) -> usize {
    m.count_ones() as usize
}

#[inline]
fn below(i: usize) -> Mask {
    (1u64 << i) - 1
}

/// Sign of `e_A ∧ e_B` relative to `e_{A∪B}` (assumes disjoint): parity of pairs a > b.
#[inline]
pub fn wedge_sign(a: Mask, b: Mask) -> bool {
    let mut n = 0u32;
    let mut bb = b;
    while bb != 0 {
        let i = bb.trailing_zeros();
        n += (a >> i).count_ones();
        bb &= bb - 1;
    }
    n & 1 == 1
}

pub fn bits(m: Mask) -> impl Iterator<Item = usize> {
    let mut mm = m;
    std::iter::from_fn(move || {
        if mm == 0 {
            None
        } else {
            let i = mm.trailing_zeros() as usize;
            mm &= mm - 1;
            Some(i)
        }
    })
}

/// Element of the exterior algebra (and, through the sigma identification, of the Clifford algebra).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Multivector {
    dim: usize,
    terms: Vec<(Mask, Q)>,
}

/// Accumulator for building multivectors.
pub struct Acc {
    dim: usize,
    map: MaskMap<Q>,
}

impl Acc {
    pub fn new(dim: usize) -> Self {
        Acc { dim, map: MaskMap::default() }
    }

    #[inline]
    pub fn add(&mut self, m: Mask, q: Q) {
        if q.is_zero() {
            return;
        }
        match self.map.get_mut(&m) {
            Some(v) => *v += q,
            None => {
                self.map.insert(m, q);
            }
        }
    }

    #[inline]
    pub fn add_signed(&mut self, m: Mask, q: Q, neg: bool) {
        self.add(m, if neg { -q } else { q })
    }

    pub fn add_mv(&mut self, u: &Multivector, c: &Q) {
        for (m, q) in &u.terms {
            self.add(*m, q * c);
        }
    }

    pub fn merge(&mut self, other: Acc) {
        for (m, q) in other.map {
            self.add(m, q);
        }
    }

    pub fn finish(self) -> Multivector {
        let mut terms: Vec<(Mask, Q)> = self.map.into_iter().filter(|(_, q)| !q.is_zero()).collect();
        terms.sort_unstable_by_key(|t| t.0);
        Multivector { dim: self.dim, terms }
    }
}

impl Multivector {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= 64, "bitmask width limited to 64");
        Multivector { dim, terms: vec![] }
    }

    pub fn scalar(dim: usize, q: Q) -> Self {
        Self::blade(dim, 0, q)
    }

    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, Q::one())
    }

    pub fn blade(dim: usize, mask: Mask, q: Q) -> Self {
        assert!(dim <= 64 && (dim == 64 || mask >> dim == 0), "mask outside ambient dimension");
        let terms = if q.is_zero() { vec![] } else { vec![(mask, q)] };
        Multivector { dim, terms }
    }

    pub fn basis(dim: usize, a: usize) -> Self {
        Self::blade(dim, 1 << a, Q::one())
    }

    /// Degree-1 element from dense coordinates.
    pub fn from_vector(v: &[Q]) -> Self {
        let mut acc = Acc::new(v.len());
        for (a, q) in v.iter().enumerate() {
            acc.add(1 << a, q.clone());
        }
        acc.finish()
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Mask, Q)>) -> Self {
        let mut acc = Acc::new(dim);
        for (m, q) in terms {
            assert!(dim == 64 || m >> dim == 0, "mask outside ambient dimension");
            acc.add(m, q);
        }
        acc.finish()
    }

    /// Wedge of basis vectors in the given order.
    pub fn wedge_of(dim: usize, idx: &[usize]) -> Self {
        idx.iter().fold(Self::one(dim), |acc, &a| wedge(&acc, &Self::basis(dim, a)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(Mask, Q)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mask, Q)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Mask) -> Q {
        match self.terms.binary_search_by_key(&m, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn scalar_part(&self) -> Q {
        self.coeff(0)
    }

    /// Degree-k component.
    pub fn grade(&self, k: usize) -> Multivector {
        Multivector { dim: self.dim, terms: self.terms.iter().filter(|(m, _)| degree(*m) == k).cloned().collect() }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.iter().map(|(m, _)| degree(*m)).collect();
        d.sort();
        d.dedup();
        d
    }

    /// `Some(k)` when homogeneous of degree k (zero counts as homogeneous of any degree: returns None).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.degrees();
        (d.len() == 1).then(|| d[0])
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.iter().map(|(m, _)| degree(*m)).max()
    }

    /// Every term has even (false) or odd (true) degree.
    pub fn parity(&self) -> Option<bool> {
        let mut it = self.terms.iter().map(|(m, _)| degree(*m) % 2 == 1);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn add(&self, o: &Multivector) -> Multivector {
        self.check_dim(o).expect("dimension mismatch");
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            if j == o.terms.len() || (i < self.terms.len() && self.terms[i].0 < o.terms[j].0) {
                out.push(self.terms[i].clone());
                i += 1;
            } else if i == self.terms.len() || o.terms[j].0 < self.terms[i].0 {
                out.push(o.terms[j].clone());
                j += 1;
            } else {
                let q = &self.terms[i].1 + &o.terms[j].1;
                if !q.is_zero() {
                    out.push((self.terms[i].0, q));
                }
                i += 1;
                j += 1;
            }
        }
        Multivector { dim: self.dim, terms: out }
    }

    pub fn sub(&self, o: &Multivector) -> Multivector {
        self.add(&o.scale(&Q::from_int(-1)))
    }

    pub fn scale(&self, c: &Q) -> Multivector {
        if c.is_zero() {
            return Multivector::zero(self.dim);
        }
        Multivector { dim: self.dim, terms: self.terms.iter().map(|(m, q)| (*m, q * c)).collect() }
    }

    pub fn neg(&self) -> Multivector {
        self.scale(&Q::from_int(-1))
    }

    /// Multiply the degree-k part by `f(k)`.
    pub fn scale_by_degree(&self, f: impl Fn(usize) -> Q) -> Multivector {
        Multivector::from_terms(self.dim, self.terms.iter().map(|(m, q)| (*m, q * f(degree(*m)))))
    }

    pub fn check_dim(&self, o: &Multivector) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::Dimension(format!("ambient {} vs {}", self.dim, o.dim)));
        }
        Ok(())
    }

    /// Coordinates as a degree-1 vector; errors when other degrees are present.
    pub fn as_vector(&self) -> Result<Vec<Q>> {
        let mut v = vec![Q::zero(); self.dim];
        for (m, q) in &self.terms {
            if degree(*m) != 1 {
                return Err(Error::Degree("expected a degree-1 element".into()));
            }
            v[m.trailing_zeros() as usize] = q.clone();
        }
        Ok(v)
    }

    /// Keep terms whose mask is inside `sub`, re-indexed onto the bits of `sub`.
    pub fn restrict_compress(&self, sub: Mask) -> Multivector {
        let idx: Vec<usize> = bits(sub).collect();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m & !sub == 0)
            .map(|(m, q)| {
                let mut c = 0u64;
                for (k, &i) in idx.iter().enumerate() {
                    if m >> i & 1 == 1 {
                        c |= 1 << k;
                    }
                }
                (c, q.clone())
            })
            .collect();
        Multivector { dim: idx.len(), terms }
    }

    /// Inverse of `restrict_compress`: spread a width-k element onto the bits of `sub` in a width-`dim` space.
    pub fn expand_into(&self, dim: usize, sub: Mask) -> Multivector {
        let idx: Vec<usize> = bits(sub).collect();
        assert_eq!(idx.len(), self.dim);
        Multivector::from_terms(
            dim,
            self.terms.iter().map(|(m, q)| (bits(*m).fold(0u64, |acc, k| acc | 1 << idx[k]), q.clone())),
        )
    }

    pub fn to_json(&self) -> MultivectorJson {
        MultivectorJson {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, q)| (format!("{m:#x}"), q.to_string())).collect(),
        }
    }

    pub fn from_json(j: &MultivectorJson) -> Result<Multivector> {
        let mut terms = Vec::new();
        for (m, q) in &j.terms {
            let mask = u64::from_str_radix(m.trim_start_matches("0x"), 16)
                .map_err(|_| Error::Parse(format!("bad mask {m:?}")))?;
            if j.dim < 64 && mask >> j.dim != 0 {
                return Err(Error::Parse("mask outside ambient dimension".into()));
            }
            terms.push((mask, q.parse()?));
        }
        Ok(Multivector::from_terms(j.dim, terms))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultivectorJson {
    pub dim: usize,
    pub terms: Vec<(String, String)>,
}

pub fn wedge(a: &Multivector, b: &Multivector) -> Multivector {
    a.check_dim(b).expect("dimension mismatch");
    let mut acc = Acc::new(a.dim);
    for (ma, qa) in &a.terms {
        for (mb, qb) in &b.terms {
            if ma & mb != 0 {
                continue;
            }
            acc.add_signed(ma | mb, qa * qb, wedge_sign(*ma, *mb));
        }
    }
    acc.finish()
}

pub fn try_wedge(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.check_dim(b)?;
    Ok(wedge(a, b))
}

/// A vector space with a symmetric bilinear form, split into mutually orthogonal blocks.
#[derive(Clone, Debug)]
pub struct QuadSpace {
    dim: usize,
    gram: Matrix,
    rows: Vec<Vec<(usize, Q)>>,
    /// Connected components of the Gram pattern, ordered by smallest element.
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
    local: Vec<usize>,
    block_masks: Vec<Mask>,
    /// `inv[i]`: indices j > i that come before i in block order.
    inv: Vec<Mask>,
    /// Per block, determinant of the Gram minor for local subsets: `det[b][la][lb]`.
    dets: Vec<Vec<Vec<Q>>>,
}

impl QuadSpace {
    pub fn new(gram: Matrix) -> Self {
        let dim = gram.rows;
        assert!(dim <= 64 && gram.cols == dim);
        let rows: Vec<Vec<(usize, Q)>> = (0..dim)
            .map(|i| (0..dim).filter(|&j| !gram[(i, j)].is_zero()).map(|j| (j, gram[(i, j)].clone())).collect())
            .collect();
        // union-find over nonzero entries
        let mut parent: Vec<usize> = (0..dim).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut i = i;
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, _) in row {
                let (a, b) = (find(&mut parent, i), find(&mut parent, *j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut root_block: HashMap<usize, usize> = HashMap::new();
        for i in 0..dim {
            let r = find(&mut parent, i);
            let b = *root_block.entry(r).or_insert_with(|| {
                blocks.push(vec![]);
                blocks.len() - 1
            });
            blocks[b].push(i);
        }
        let mut block_of = vec![0; dim];
        let mut local = vec![0; dim];
        let mut pos = vec![0; dim];
        let mut p = 0;
        for (b, blk) in blocks.iter().enumerate() {
            for (k, &i) in blk.iter().enumerate() {
                block_of[i] = b;
                local[i] = k;
                pos[i] = p;
                p += 1;
            }
        }
        let inv = (0..dim).map(|i| (i + 1..dim).filter(|&j| pos[j] < pos[i]).fold(0u64, |m, j| m | 1 << j)).collect();
        let block_masks = blocks.iter().map(|blk| blk.iter().fold(0u64, |m, &i| m | 1 << i)).collect();
        let dets = blocks
            .iter()
            .map(|blk| {
                let k = blk.len();
                assert!(k <= 12, "orthogonal block too large");
                (0..1usize << k)
                    .map(|la| {
                        (0..1usize << k)
                            .map(|lb| {
                                if la.count_ones() != lb.count_ones() {
                                    return Q::zero();
                                }
                                let ia: Vec<usize> = bits(la as u64).map(|t| blk[t]).collect();
                                let ib: Vec<usize> = bits(lb as u64).map(|t| blk[t]).collect();
                                if ia.is_empty() {
                                    return Q::one();
                                }
                                let m = Matrix::from_rows(
                                    ia.iter().map(|&x| ib.iter().map(|&y| gram[(x, y)].clone()).collect()).collect(),
                                );
                                m.determinant()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        QuadSpace { dim, gram, rows, blocks, block_of, local, block_masks, inv, dets }
    }

    /// Quadratic space of g with its invariant form.
    pub fn of_algebra(g: &LieAlgebra) -> Self {
        Self::new(g.form().clone())
    }

    /// Quadratic space of the Cartan subalgebra (width r, coroot basis).
    pub fn of_cartan(g: &LieAlgebra) -> Self {
        Self::new(g.cartan_form())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn row(&self, i: usize) -> &[(usize, Q)] {
        &self.rows[i]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_masks(&self) -> &[Mask] {
        &self.block_masks
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    /// Local bit index of `i` inside its block.
    pub fn local_index(&self, i: usize) -> usize {
        self.local[i]
    }

    /// Sign (true = negative) relating the frozen-order blade `e_A` to the block-ordered product.
    #[inline]
    pub fn reorder_sign(&self, a: Mask) -> bool {
        let mut n = 0u32;
        let mut aa = a;
        while aa != 0 {
            let i = aa.trailing_zeros() as usize;
            n += (a & self.inv[i]).count_ones();
            aa &= aa - 1;
        }
        n & 1 == 1
    }

    /// Local mask of `a ∩ block b`.
    #[inline]
    pub fn local_mask(&self, b: usize, a: Mask) -> usize {
        let mut out = 0usize;
        let mut aa = a & self.block_masks[b];
        while aa != 0 {
            let i = aa.trailing_zeros() as usize;
            out |= 1 << self.local[i];
            aa &= aa - 1;
        }
        out
    }

    /// Global mask from a local mask of block b.
    #[inline]
    pub fn global_mask(&self, b: usize, la: usize) -> Mask {
        let blk = &self.blocks[b];
        bits(la as u64).fold(0u64, |m, t| m | 1 << blk[t])
    }

    /// Extended form on blades: `det((a_i, b_j))`.
    pub fn blade_pairing(&self, a: Mask, b: Mask) -> Q {
        if degree(a) != degree(b) {
            return Q::zero();
        }
        let mut out = Q::one();
        for blk in 0..self.blocks.len() {
            let (la, lb) = (self.local_mask(blk, a), self.local_mask(blk, b));
            if la.count_ones() != lb.count_ones() {
                return Q::zero();
            }
            if la == 0 {
                continue;
            }
            let d = &self.dets[blk][la][lb];
            if d.is_zero() {
                return Q::zero();
            }
            out *= d;
        }
        if self.reorder_sign(a) != self.reorder_sign(b) {
            out = -out;
        }
        out
    }
}

/// `iota(e_k)` applied to a blade, accumulated into `acc` with factor `c`.
#[inline]
fn contract_blade(sp: &QuadSpace, k: usize, m: Mask, c: &Q, acc: &mut Acc) {
    for (j, g) in sp.row(k) {
        if m >> j & 1 == 1 {
            let neg = (m & below(*j)).count_ones() & 1 == 1;
            acc.add_signed(m & !(1 << j), c * g, neg);
        }
    }
}

/// Contraction by a basis vector.
pub fn contract_basis(sp: &QuadSpace, k: usize, u: &Multivector) -> Multivector {
    let mut acc = Acc::new(u.dim);
    for (m, q) in &u.terms {
        contract_blade(sp, k, *m, q, &mut acc);
    }
    acc.finish()
}

/// Contraction by a dense vector.
pub fn contract_vec(sp: &QuadSpace, x: &[Q], u: &Multivector) -> Multivector {
    let mut acc = Acc::new(u.dim);
    for (k, xk) in x.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
        for (m, q) in &u.terms {
            contract_blade(sp, k, *m, &(q * xk), &mut acc);
        }
    }
    acc.finish()
}

/// `iota(x) u` for a degree-1 multivector `x`.
pub fn contract(sp: &QuadSpace, x: &Multivector, u: &Multivector) -> Result<Multivector> {
    x.check_dim(u)?;
    if sp.dim() != u.dim() {
        return Err(Error::Dimension("quadratic space width".into()));
    }
    let v = x.as_vector()?;
    Ok(contract_vec(sp, &v, u))
}

/// Extended bilinear form on the exterior algebra.
pub fn extended_form(sp: &QuadSpace, u: &Multivector, v: &Multivector) -> Q {
    let mut out = Q::zero();
    for (a, p) in &u.terms {
        for (b, q) in &v.terms {
            if degree(*a) != degree(*b) {
                continue;
            }
            let d = sp.blade_pairing(*a, *b);
            if !d.is_zero() {
                out += p * q * d;
            }
        }
    }
    out
}

/// Adjoint action `theta(e_x)` as a degree-preserving derivation.
pub fn theta(g: &LieAlgebra, x: usize, u: &Multivector) -> Multivector {
    let mut acc = Acc::new(u.dim);
    for (m, q) in &u.terms {
        for j in bits(*m) {
            for (c, s) in g.bracket_basis(x, j) {
                let rest = m & !(1 << j);
                if *c == j {
                    acc.add(*m, q * s);
                } else if rest >> c & 1 == 0 {
                    let (lo, hi) = if *c < j { (*c, j) } else { (j, *c) };
                    let between = rest & below(hi) & !below(lo + 1);
                    acc.add_signed(rest | 1 << c, q * s, between.count_ones() & 1 == 1);
                }
            }
        }
    }
    acc.finish()
}

pub fn theta_vec(g: &LieAlgebra, x: &[Q], u: &Multivector) -> Multivector {
    let mut acc = Acc::new(u.dim);
    for (a, xa) in x.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
        acc.add_mv(&theta(g, a, u), xa);
    }
    acc.finish()
}

/// `d x = 1/2 sum_a e_a ∧ [e^a, x]` for a basis vector.
pub fn coboundary(g: &LieAlgebra, x: usize) -> Multivector {
    let dim = g.dim();
    let half = Q::frac(1, 2);
    let mut acc = Acc::new(dim);
    for a in 0..dim {
        for (b, gab) in g.dual_vector(a) {
            for (c, s) in g.bracket_basis(b, x) {
                if a != *c {
                    let m = 1u64 << a | 1u64 << c;
                    acc.add_signed(m, &half * &gab * s, a > *c);
                }
            }
        }
    }
    acc.finish()
}

/// Coboundary with an explicit pair of dual bases (dense vectors).
pub fn coboundary_with_pair(g: &LieAlgebra, basis: &[Vec<Q>], dual: &[Vec<Q>], x: &[Q]) -> Multivector {
    let dim = g.dim();
    let mut acc = Acc::new(dim);
    let half = Q::frac(1, 2);
    for (ea, eda) in basis.iter().zip(dual) {
        let br = g.bracket(eda, x);
        let w = wedge(&Multivector::from_vector(ea), &Multivector::from_vector(&br));
        acc.add_mv(&w, &half);
    }
    acc.finish()
}

/// Koszul differential: `d` extended to all of the exterior algebra as a degree +1 superderivation.
pub fn koszul_d(g: &LieAlgebra, u: &Multivector) -> Multivector {
    let dim = u.dim;
    let ds: Vec<Multivector> = (0..dim).map(|x| coboundary(g, x)).collect();
    let mut acc = Acc::new(dim);
    for (m, q) in &u.terms {
        let idx: Vec<usize> = bits(*m).collect();
        for (p, &j) in idx.iter().enumerate() {
            let pre = Multivector::blade(dim, m & below(j), Q::one());
            let post = Multivector::blade(dim, m & !below(j + 1), Q::one());
            let t = wedge(&wedge(&pre, &ds[j]), &post);
            acc.add_mv(&t, &(q * Q::sign(p)));
        }
    }
    acc.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::{build_algebra, FormChoice};

    fn a1() -> LieAlgebra {
        build_algebra(&"A1".parse().unwrap(), FormChoice::MinimalTrace).unwrap()
    }

    // A1 frozen order: f=0, h=1, e=2
    #[test]
    fn wedge_examples() {
        let (f, h, e) = (Multivector::basis(3, 0), Multivector::basis(3, 1), Multivector::basis(3, 2));
        assert!(wedge(&e, &e).is_zero());
        assert_eq!(wedge(&e, &h), wedge(&h, &e).neg());
        // e∧h∧f reverses three vectors: sign -1 against the frozen blade f∧h∧e
        let ehf = wedge(&wedge(&e, &h), &f);
        assert_eq!(ehf, Multivector::blade(3, 0b111, Q::from_int(-1)));
    }

    #[test]
    fn contraction_example() {
        let g = a1();
        let sp = QuadSpace::of_algebra(&g);
        let ehf = Multivector::wedge_of(3, &[2, 1, 0]);
        let got = contract_basis(&sp, 0, &ehf);
        assert_eq!(got, Multivector::wedge_of(3, &[1, 0]));
        assert!(contract_basis(&sp, 0, &Multivector::one(3)).is_zero());
    }

    #[test]
    fn extended_form_examples() {
        let g = a1();
        let sp = QuadSpace::of_algebra(&g);
        let ef = Multivector::wedge_of(3, &[2, 0]);
        assert_eq!(extended_form(&sp, &ef, &ef), Q::from_int(-1));
        assert_eq!(extended_form(&sp, &Multivector::one(3), &Multivector::one(3)), Q::one());
        assert_eq!(extended_form(&sp, &Multivector::basis(3, 2), &Multivector::basis(3, 1)), Q::zero());
    }

    #[test]
    fn theta_examples() {
        let g = a1();
        let ef = Multivector::wedge_of(3, &[2, 0]);
        assert!(theta(&g, 1, &ef).is_zero());
        assert!(theta(&g, 2, &Multivector::one(3)).is_zero());
        assert!(theta(&g, 2, &Multivector::wedge_of(3, &[2, 1, 0])).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let u = Multivector::from_terms(5, [(0b101, Q::frac(3, 4)), (0b10, Q::from_int(-2))]);
        let j = u.to_json();
        assert_eq!(j.terms[0].0, "0x2");
        assert_eq!(Multivector::from_json(&j).unwrap(), u);
        let bad = MultivectorJson { dim: 2, terms: vec![("0x8".into(), "1".into())] };
        assert!(Multivector::from_json(&bad).is_err());
    }
}

//! Semisimple Lie algebras with explicit structure constants, invariant forms and root data.
//!
//! Basis order is frozen as `y_1..y_n, h_1..h_r, x_1..x_n`: negative root vectors, simple
//! coroots, positive root vectors, with `(x_i, y_i) = 1`.

mod serial;
mod types;
mod weyl;

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

pub use serial::AlgebraData;
pub use types::{defining_generators, expected_dim, CartanType, FormChoice, Series};
pub use weyl::WeylGroup;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum BasisRole {
    NegRoot(usize),
    Cartan(usize),
    PosRoot(usize),
}

/// Sparse linear combination of basis elements.
pub type Combo = Vec<(usize, Q)>;

#[derive(Debug)]
pub struct LieAlgebra {
    pub cartan_type: CartanType,
    pub form_choice: FormChoice,
    /// Per factor: local generator k is the standard generator `perm[f][k]`.
    pub perm: Vec<Vec<usize>>,
    rank: usize,
    n_pos: usize,
    roles: Vec<BasisRole>,
    labels: Vec<String>,
    bracket: Vec<Combo>,
    form: Matrix,
    form_inv: Matrix,
    cartan: Matrix,
    root_coeffs: Vec<Vec<i64>>,
    weights: Vec<Vec<i64>>,
    root_h: Vec<Vec<Q>>,
    factor_of_simple: Vec<usize>,
    rep: Vec<Matrix>,
    rep_blocks: Vec<(usize, usize)>,
    exponents: OnceLock<Vec<usize>>,
}

impl Clone for LieAlgebra {
    fn clone(&self) -> Self {
        let exps = OnceLock::new();
        if let Some(e) = self.exponents.get() {
            let _ = exps.set(e.clone());
        }
        LieAlgebra {
            cartan_type: self.cartan_type.clone(),
            form_choice: self.form_choice,
            perm: self.perm.clone(),
            rank: self.rank,
            n_pos: self.n_pos,
            roles: self.roles.clone(),
            labels: self.labels.clone(),
            bracket: self.bracket.clone(),
            form: self.form.clone(),
            form_inv: self.form_inv.clone(),
            cartan: self.cartan.clone(),
            root_coeffs: self.root_coeffs.clone(),
            weights: self.weights.clone(),
            root_h: self.root_h.clone(),
            factor_of_simple: self.factor_of_simple.clone(),
            rep: self.rep.clone(),
            rep_blocks: self.rep_blocks.clone(),
            exponents: exps,
        }
    }
}

/// Build the algebra of a Cartan type with the given invariant form.
pub fn build_algebra(ty: &CartanType, form: FormChoice) -> Result<LieAlgebra> {
    let perm = ty.factors.iter().map(|&(_, n)| (0..n).collect()).collect();
    build_with_perm(ty, form, perm)
}

struct RootRec {
    coeffs: Vec<i64>,
    x: Matrix,
    f: Matrix,
}

/// Build with a relabelling of the simple generators inside each factor.
pub fn build_with_perm(ty: &CartanType, form_choice: FormChoice, perm: Vec<Vec<usize>>) -> Result<LieAlgebra> {
    ty.validate()?;
    let r = ty.rank();
    // block-diagonal defining representation
    let mut blocks = Vec::new();
    let mut total = 0;
    let mut gens_local = Vec::new();
    for (fi, &(s, n)) in ty.factors.iter().enumerate() {
        let (d, g) = defining_generators(s, n);
        let p = &perm[fi];
        if p.len() != n {
            return Err(Error::Structure("permutation length".into()));
        }
        blocks.push((total, d));
        gens_local.push(p.iter().map(|&k| g[k].clone()).collect::<Vec<_>>());
        total += d;
    }
    let embed = |fi: usize, m: &Matrix| {
        let (off, d) = blocks[fi];
        let mut out = Matrix::zeros(total, total);
        for i in 0..d {
            for j in 0..d {
                out[(off + i, off + j)] = m[(i, j)].clone();
            }
        }
        out
    };
    let mut e_gen = Vec::new();
    let mut f_gen = Vec::new();
    let mut factor_of_simple = Vec::new();
    for (fi, g) in gens_local.iter().enumerate() {
        for (e, f) in g {
            e_gen.push(embed(fi, e));
            f_gen.push(embed(fi, f));
            factor_of_simple.push(fi);
        }
    }
    let h_gen: Vec<Matrix> = (0..r).map(|i| e_gen[i].commutator(&f_gen[i])).collect();

    // positive roots by breadth-first search over [e_i, X]
    let mut roots: Vec<RootRec> = Vec::new();
    let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..r {
        let mut c = vec![0; r];
        c[i] = 1;
        seen.insert(c.clone(), roots.len());
        queue.push_back(roots.len());
        roots.push(RootRec { coeffs: c, x: e_gen[i].clone(), f: f_gen[i].clone() });
    }
    while let Some(k) = queue.pop_front() {
        for i in 0..r {
            if factor_of_simple[i] != factor_of_simple[roots[k].coeffs.iter().position(|&c| c != 0).unwrap()] {
                continue;
            }
            let mut c = roots[k].coeffs.clone();
            c[i] += 1;
            if seen.contains_key(&c) {
                continue;
            }
            let x = e_gen[i].commutator(&roots[k].x);
            if x.is_zero() {
                continue;
            }
            let f = f_gen[i].commutator(&roots[k].f);
            if f.is_zero() {
                return Err(Error::Structure("negative root vector vanished".into()));
            }
            seen.insert(c.clone(), roots.len());
            queue.push_back(roots.len());
            roots.push(RootRec { coeffs: c, x, f });
        }
    }
    roots.sort_by(|a, b| {
        let ha: i64 = a.coeffs.iter().sum();
        let hb: i64 = b.coeffs.iter().sum();
        ha.cmp(&hb).then_with(|| b.coeffs.cmp(&a.coeffs))
    });
    let n = roots.len();
    let dim = 2 * n + r;
    let expected: usize = ty.factors.iter().map(|&(s, k)| expected_dim(s, k)).sum();
    if dim != expected {
        return Err(Error::Structure(format!("{ty}: dimension {dim}, expected {expected}")));
    }

    // unscaled basis; fix the form, then rescale y so that (x_i, y_i) = 1
    let mut basis: Vec<Matrix> = Vec::with_capacity(dim);
    basis.extend(roots.iter().map(|rt| rt.f.clone()));
    basis.extend(h_gen.iter().cloned());
    basis.extend(roots.iter().map(|rt| rt.x.clone()));
    let coords = Coordinates::new(&basis)?;
    let form0 = match form_choice {
        FormChoice::MinimalTrace => trace_form(&basis),
        FormChoice::Killing => killing_form(&structure_constants(&basis, &coords)?, dim),
    };
    for i in 0..n {
        let c = form0[(n + r + i, i)].clone();
        if c.is_zero() {
            return Err(Error::Structure("root pair is isotropic".into()));
        }
        basis[i] = basis[i].scale(&c.recip());
    }
    let coords = Coordinates::new(&basis)?;
    let bracket = structure_constants(&basis, &coords)?;
    let form = match form_choice {
        FormChoice::MinimalTrace => trace_form(&basis),
        FormChoice::Killing => killing_form(&bracket, dim),
    };
    let form_inv = form.inverse().ok_or_else(|| Error::Structure("degenerate form".into()))?;

    let mut roles = Vec::with_capacity(dim);
    let mut labels = Vec::with_capacity(dim);
    for i in 0..n {
        roles.push(BasisRole::NegRoot(i));
        labels.push(format!("y{}", i + 1));
    }
    for j in 0..r {
        roles.push(BasisRole::Cartan(j));
        labels.push(format!("h{}", j + 1));
    }
    for i in 0..n {
        roles.push(BasisRole::PosRoot(i));
        labels.push(format!("x{}", i + 1));
    }
    let root_coeffs: Vec<Vec<i64>> = roots.iter().map(|rt| rt.coeffs.clone()).collect();
    let rep_blocks = blocks;

    let mut g = LieAlgebra {
        cartan_type: ty.clone(),
        form_choice,
        perm,
        rank: r,
        n_pos: n,
        roles,
        labels,
        bracket,
        form,
        form_inv,
        cartan: Matrix::zeros(r, r),
        root_coeffs,
        weights: vec![],
        root_h: vec![],
        factor_of_simple,
        rep: basis,
        rep_blocks,
        exponents: OnceLock::new(),
    };
    g.finish_root_data()?;
    g.validate()?;
    Ok(g)
}

/// Coordinates of matrices against a basis via a set of pivot entries.
struct Coordinates {
    pivots: Vec<(usize, usize)>,
    solve: Matrix,
}

impl Coordinates {
    fn new(basis: &[Matrix]) -> Result<Self> {
        let d = basis[0].rows;
        let flat = Matrix::from_rows(basis.iter().map(|m| m.data.clone()).collect());
        let (_, piv) = flat.rref();
        if piv.len() != basis.len() {
            return Err(Error::Structure("basis matrices are dependent".into()));
        }
        let pivots: Vec<(usize, usize)> = piv.iter().map(|&p| (p / d, p % d)).collect();
        // S[a][k] = basis[a] at pivot k; coordinates c solve c^T S = m_P
        let s = Matrix::from_rows(basis.iter().map(|m| pivots.iter().map(|&ij| m[ij].clone()).collect()).collect());
        let solve = s.inverse().ok_or_else(|| Error::Structure("pivot block singular".into()))?;
        Ok(Coordinates { pivots, solve })
    }

    fn of(&self, m: &Matrix, basis: &[Matrix]) -> Result<Combo> {
        let mp: Vec<Q> = self.pivots.iter().map(|&ij| m[ij].clone()).collect();
        // c^T = m_P S^{-1}
        let c = self.solve.transpose().mul_vec(&mp);
        let mut recon = Matrix::zeros(m.rows, m.cols);
        for (a, ca) in c.iter().enumerate() {
            if !ca.is_zero() {
                recon = recon.add(&basis[a].scale(ca));
            }
        }
        if recon != *m {
            return Err(Error::Structure("bracket leaves the span of the basis".into()));
        }
        Ok(c.into_iter().enumerate().filter(|(_, q)| !q.is_zero()).collect())
    }
}

fn structure_constants(basis: &[Matrix], coords: &Coordinates) -> Result<Vec<Combo>> {
    let dim = basis.len();
    let mut out = vec![Vec::new(); dim * dim];
    for a in 0..dim {
        for b in a + 1..dim {
            let c = coords.of(&basis[a].commutator(&basis[b]), basis)?;
            out[b * dim + a] = c.iter().map(|(k, q)| (*k, -q.clone())).collect();
            out[a * dim + b] = c;
        }
    }
    Ok(out)
}

fn trace_form(basis: &[Matrix]) -> Matrix {
    let dim = basis.len();
    let mut g = Matrix::zeros(dim, dim);
    for a in 0..dim {
        for b in a..dim {
            let t = basis[a].mul(&basis[b]).trace();
            g[(b, a)] = t.clone();
            g[(a, b)] = t;
        }
    }
    g
}

fn ad_from(bracket: &[Combo], dim: usize, a: usize) -> Matrix {
    let mut m = Matrix::zeros(dim, dim);
    for b in 0..dim {
        for (c, q) in &bracket[a * dim + b] {
            m[(*c, b)] = q.clone();
        }
    }
    m
}

fn killing_form(bracket: &[Combo], dim: usize) -> Matrix {
    let ads: Vec<Matrix> = (0..dim).map(|a| ad_from(bracket, dim, a)).collect();
    let mut g = Matrix::zeros(dim, dim);
    for a in 0..dim {
        for b in a..dim {
            let t = ads[a].mul(&ads[b]).trace();
            g[(b, a)] = t.clone();
            g[(a, b)] = t;
        }
    }
    g
}

impl LieAlgebra {
    pub fn dim(&self) -> usize {
        self.roles.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of positive roots.
    pub fn n_pos(&self) -> usize {
        self.n_pos
    }

    pub fn y(&self, i: usize) -> usize {
        i
    }

    pub fn h(&self, j: usize) -> usize {
        self.n_pos + j
    }

    pub fn x(&self, i: usize) -> usize {
        self.n_pos + self.rank + i
    }

    pub fn role(&self, a: usize) -> BasisRole {
        self.roles[a]
    }

    pub fn roles(&self) -> &[BasisRole] {
        &self.roles
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_cartan(&self, a: usize) -> bool {
        matches!(self.roles[a], BasisRole::Cartan(_))
    }

    pub fn cartan_range(&self) -> std::ops::Range<usize> {
        self.n_pos..self.n_pos + self.rank
    }

    /// Bitmask of the Cartan basis elements.
    pub fn cartan_mask(&self) -> u64 {
        self.cartan_range().fold(0, |m, a| m | 1 << a)
    }

    /// `[e_a, e_b]` as a sparse combination.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, Q)] {
        &self.bracket[a * self.dim() + b]
    }

    /// Bracket of two dense vectors.
    pub fn bracket(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (a, ua) in u.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
            for (b, vb) in v.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
                let uv = ua * vb;
                for (c, q) in self.bracket_basis(a, b) {
                    out[*c] += &uv * q;
                }
            }
        }
        out
    }

    /// Matrix of `ad e_a` (column b holds `[e_a, e_b]`).
    pub fn ad_matrix(&self, a: usize) -> Matrix {
        ad_from(&self.bracket, self.dim(), a)
    }

    /// Matrix of `ad u` for a dense vector.
    pub fn ad_of(&self, u: &[Q]) -> Matrix {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (a, ua) in u.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
            m = m.add(&self.ad_matrix(a).scale(ua));
        }
        m
    }

    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn form_inv(&self) -> &Matrix {
        &self.form_inv
    }

    pub fn form_of(&self, u: &[Q], v: &[Q]) -> Q {
        linalg::bilinear(&self.form, u, v)
    }

    /// Form restricted to the Cartan subalgebra, in the coroot basis.
    pub fn cartan_form(&self) -> Matrix {
        let r = self.rank;
        let mut m = Matrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                m[(i, j)] = self.form[(self.h(i), self.h(j))].clone();
            }
        }
        m
    }

    /// `cartan[i][j] = alpha_j(h_i)`.
    pub fn cartan_matrix(&self) -> &Matrix {
        &self.cartan
    }

    /// Positive roots in simple-root coordinates.
    pub fn root_coeffs(&self) -> &[Vec<i64>] {
        &self.root_coeffs
    }

    /// Eigenvalues `(wt(e_a)(h_j))_j` of the Cartan basis on basis element `a`.
    pub fn weight(&self, a: usize) -> &[i64] {
        &self.weights[a]
    }

    /// `t_alpha = [x_alpha, y_alpha]` in Cartan coordinates: the root as an element of h.
    pub fn root_in_h(&self, i: usize) -> &[Q] {
        &self.root_h[i]
    }

    /// `(alpha_j, alpha_j)` for simple roots.
    pub fn simple_root_norms(&self) -> Vec<Q> {
        let g = self.cartan_form();
        (0..self.rank).map(|j| linalg::bilinear(&g, &self.root_h[j], &self.root_h[j])).collect()
    }

    pub fn factor_of_simple(&self) -> &[usize] {
        &self.factor_of_simple
    }

    /// Factor index of a basis element.
    pub fn factor_of_basis(&self, a: usize) -> usize {
        match self.roles[a] {
            BasisRole::Cartan(j) => self.factor_of_simple[j],
            BasisRole::NegRoot(i) | BasisRole::PosRoot(i) => {
                let k = self.root_coeffs[i].iter().position(|&c| c != 0).unwrap();
                self.factor_of_simple[k]
            }
        }
    }

    /// Defining-representation matrix of basis element `a` (block diagonal over factors).
    pub fn rep_matrix(&self, a: usize) -> &Matrix {
        &self.rep[a]
    }

    /// `(offset, size)` of each factor's block in the defining representation.
    pub fn rep_blocks(&self) -> &[(usize, usize)] {
        &self.rep_blocks
    }

    pub fn unit(&self, a: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        v[a] = Q::one();
        v
    }

    /// Embed Cartan coordinates into g.
    pub fn cartan_to_g(&self, hv: &[Q]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        for (j, q) in hv.iter().enumerate() {
            v[self.h(j)] = q.clone();
        }
        v
    }

    pub fn exponents(&self) -> Option<&Vec<usize>> {
        self.exponents.get()
    }

    /// Store exponents once; later calls must agree.
    pub fn set_exponents(&self, e: Vec<usize>) -> Result<()> {
        match self.exponents.get() {
            Some(old) if *old != e => Err(Error::Invariants(format!("exponents {e:?} disagree with {old:?}"))),
            Some(_) => Ok(()),
            None => {
                let _ = self.exponents.set(e);
                Ok(())
            }
        }
    }

    /// Exponents from the root-height partition: #roots of height k = #{i : m_i >= k}.
    pub fn exponents_from_heights(&self) -> Vec<usize> {
        let mut count = HashMap::new();
        for c in &self.root_coeffs {
            *count.entry(c.iter().sum::<i64>() as usize).or_insert(0usize) += 1;
        }
        let c = |k: usize| count.get(&k).copied().unwrap_or(0usize);
        let mut out = Vec::new();
        let mut k = 1;
        while c(k) > 0 {
            for _ in c(k + 1)..c(k) {
                out.push(k);
            }
            k += 1;
        }
        out.sort();
        out
    }

    fn finish_root_data(&mut self) -> Result<()> {
        let (r, n, dim) = (self.rank, self.n_pos, self.dim());
        let mut cartan = Matrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                let v = self.bracket_basis(self.h(i), self.x(j)).iter().find(|(c, _)| *c == self.x(j));
                cartan[(i, j)] = v.map_or(Q::zero(), |(_, q)| q.clone());
            }
        }
        let ci: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let q = &cartan[(i, j)];
                        if !q.is_integer() {
                            return Err(Error::Structure("non-integral Cartan entry".into()));
                        }
                        Ok(q.to_string().parse::<i64>().unwrap())
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<_>>()?;
        let mut weights = vec![vec![0i64; r]; dim];
        for i in 0..n {
            let w: Vec<i64> = (0..r).map(|j| (0..r).map(|k| self.root_coeffs[i][k] * ci[j][k]).sum()).collect();
            weights[self.y(i)] = w.iter().map(|x| -x).collect();
            weights[self.x(i)] = w;
        }
        self.weights = weights;
        self.cartan = cartan;
        let mut root_h = Vec::with_capacity(n);
        for i in 0..n {
            let t = self.bracket_basis(self.x(i), self.y(i));
            let mut v = vec![Q::zero(); r];
            for (c, q) in t {
                match self.roles[*c] {
                    BasisRole::Cartan(j) => v[j] = q.clone(),
                    _ => return Err(Error::Structure("[x, y] not in h".into())),
                }
            }
            root_h.push(v);
        }
        self.root_h = root_h;
        Ok(())
    }

    /// Exhaustive structural checks; used on construction and after deserialization.
    pub fn validate(&self) -> Result<()> {
        let dim = self.dim();
        for a in 0..dim {
            if !self.bracket_basis(a, a).is_empty() {
                return Err(Error::Structure("[a, a] != 0".into()));
            }
            for b in 0..dim {
                let ab: HashMap<usize, &Q> = self.bracket_basis(a, b).iter().map(|(c, q)| (*c, q)).collect();
                let ba = self.bracket_basis(b, a);
                if ab.len() != ba.len() || ba.iter().any(|(c, q)| ab.get(c).map(|p| (*p).clone()) != Some(-q.clone())) {
                    return Err(Error::Structure(format!("antisymmetry fails at ({a},{b})")));
                }
            }
        }
        self.check_jacobi()?;
        if self.form.transpose() != self.form {
            return Err(Error::Structure("form not symmetric".into()));
        }
        // ad-invariance ([a,b],c) + (b,[a,c]) = 0
        for a in 0..dim {
            let ad = self.ad_matrix(a);
            let m = ad.transpose().mul(&self.form).add(&self.form.mul(&ad));
            if !m.is_zero() {
                return Err(Error::Structure("form not ad-invariant".into()));
            }
        }
        for i in 0..self.n_pos {
            if !self.form[(self.x(i), self.y(i))].is_one() {
                return Err(Error::Structure("(x_i, y_i) != 1".into()));
            }
            for k in 0..self.n_pos {
                if !self.form[(self.x(i), self.x(k))].is_zero() || !self.form[(self.y(i), self.y(k))].is_zero() {
                    return Err(Error::Structure("n+ or n- not isotropic".into()));
                }
            }
        }
        if self.cartan_form().determinant().is_zero() {
            return Err(Error::Structure("form degenerate on h".into()));
        }
        Ok(())
    }

    fn check_jacobi(&self) -> Result<()> {
        use rayon::prelude::*;
        let dim = self.dim();
        let bad = (0..dim).into_par_iter().find_any(|&a| {
            for b in a + 1..dim {
                for c in b + 1..dim {
                    let mut acc: HashMap<usize, Q> = HashMap::new();
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        for (k, q) in self.bracket_basis(y, z) {
                            for (m, p) in self.bracket_basis(x, *k) {
                                *acc.entry(*m).or_insert_with(Q::zero) += q * p;
                            }
                        }
                    }
                    if acc.values().any(|q| !q.is_zero()) {
                        return true;
                    }
                }
            }
            false
        });
        match bad {
            Some(a) => Err(Error::Structure(format!("Jacobi identity fails involving basis {a}"))),
            None => Ok(()),
        }
    }

    /// Dual bases: `e_a` (the standard basis) and `e^a` with `(e_a, e^b) = delta_ab`.
    pub fn dual_bases(&self) -> (Vec<Vec<Q>>, Vec<Vec<Q>>) {
        let dim = self.dim();
        let basis = (0..dim).map(|a| self.unit(a)).collect();
        let dual = (0..dim).map(|a| self.form_inv.row_vec(a)).collect();
        (basis, dual)
    }

    /// Sparse form of `e^a`.
    pub fn dual_vector(&self, a: usize) -> Combo {
        self.form_inv.row(a).iter().enumerate().filter(|(_, q)| !q.is_zero()).map(|(b, q)| (b, q.clone())).collect()
    }

    /// `(rho, rho_check)` as Cartan coordinates.
    pub fn rho_and_rho_check(&self) -> (Vec<Q>, Vec<Q>) {
        let r = self.rank;
        let ones = vec![Q::one(); r];
        let rho = self.cartan_form().inverse().expect("nondegenerate").mul_vec(&ones);
        let rho_check = self.cartan.transpose().solve(&ones).expect("Cartan matrix invertible");
        (rho, rho_check)
    }

    pub fn weyl_group(&self) -> WeylGroup {
        WeylGroup::new(&self.cartan)
    }
}

/// The Langlands dual: Cartan matrix equal to the transpose, built with the same form choice.
pub fn langlands_dual(g: &LieAlgebra) -> Result<LieAlgebra> {
    let at = g.cartan.transpose();
    let ty = CartanType { factors: g.cartan_type.factors.iter().map(|&(s, n)| (s.dual(), n)).collect() };
    // search generator relabellings per factor until the Cartan matrix matches exactly
    let base = build_algebra(&ty, g.form_choice)?;
    let mut perm = Vec::new();
    let mut off = 0;
    for &(_, n) in &ty.factors {
        let found = permutations(n)
            .into_iter()
            .find(|p| (0..n).all(|i| (0..n).all(|j| base.cartan[(off + p[i], off + p[j])] == at[(off + i, off + j)])));
        match found {
            Some(p) => perm.push(p),
            None => return Err(Error::Structure("no relabelling realizes the transposed Cartan matrix".into())),
        }
        off += n;
    }
    let gd = build_with_perm(&ty, g.form_choice, perm)?;
    if gd.cartan != at {
        return Err(Error::Structure("dual Cartan matrix is not the transpose".into()));
    }
    Ok(gd)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Identification `psi: h -> h_dual` sending the coroot `h_j` to `(2/(alpha_j,alpha_j)) H_j`,
/// i.e. `t_{alpha_j} -> H_j`. Returned as an `r x r` matrix acting on Cartan coordinates.
pub fn dual_identification(g: &LieAlgebra) -> Matrix {
    let norms = g.simple_root_norms();
    let r = g.rank();
    let mut m = Matrix::zeros(r, r);
    for j in 0..r {
        m[(j, j)] = Q::from_int(2) / &norms[j];
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> LieAlgebra {
        build_algebra(&s.parse().unwrap(), FormChoice::MinimalTrace).unwrap()
    }

    #[test]
    fn a1_matches_two_by_two_matrices() {
        let g = alg("A1");
        assert_eq!(g.dim(), 3);
        let (f, h, e) = (0, 1, 2);
        // oracle: explicit sl2 matrices
        let em = Matrix::from_int_rows(&[vec![0, 1], vec![0, 0]]);
        let fm = Matrix::from_int_rows(&[vec![0, 0], vec![1, 0]]);
        let hm = em.commutator(&fm);
        assert_eq!(hm.commutator(&em), em.scale(&Q::from_int(2)));
        assert_eq!(g.bracket_basis(h, e), &[(e, Q::from_int(2))]);
        assert_eq!(g.bracket_basis(e, f), &[(h, Q::one())]);
        assert_eq!(g.form()[(e, f)], Q::one());
        assert_eq!(g.form()[(h, h)], Q::from_int(2));
    }

    #[test]
    fn dimensions_and_roots() {
        for (t, d, p) in [("A2", 8, 3), ("B2", 10, 4), ("C2", 10, 4), ("G2", 14, 6), ("A3", 15, 6), ("A1+A1", 6, 2)] {
            let g = alg(t);
            assert_eq!((g.dim(), g.n_pos()), (d, p), "{t}");
        }
        let g = build_algebra(&"G2".parse().unwrap(), FormChoice::Killing).unwrap();
        assert_eq!((g.dim(), g.n_pos()), (14, 6));
    }

    #[test]
    fn cartan_conventions() {
        assert_eq!(alg("B2").cartan_matrix(), &Matrix::from_int_rows(&[vec![2, -1], vec![-2, 2]]));
        assert_eq!(alg("C2").cartan_matrix(), &Matrix::from_int_rows(&[vec![2, -2], vec![-1, 2]]));
        assert_eq!(alg("G2").cartan_matrix(), &Matrix::from_int_rows(&[vec![2, -3], vec![-1, 2]]));
    }

    #[test]
    fn exponents_from_heights_known() {
        assert_eq!(alg("A2").exponents_from_heights(), vec![1, 2]);
        assert_eq!(alg("B2").exponents_from_heights(), vec![1, 3]);
        assert_eq!(alg("G2").exponents_from_heights(), vec![1, 5]);
        assert_eq!(alg("A1+A1").exponents_from_heights(), vec![1, 1]);
        assert_eq!(alg("A3").exponents_from_heights(), vec![1, 2, 3]);
    }
}

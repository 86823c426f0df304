//! Symmetric algebra S(g) / S(h): sparse polynomials, invariant generators, Dynkin orthogonalization.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::lie_core::{BasisRole, LieAlgebra, Series};
use crate::linalg::{self, Matrix};
use crate::rational::Q;

/// Polynomial in `nvars` commuting variables; variable `a` stands for basis element `e_a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u8>, Q>,
}

impl SymPolynomial {
    pub fn zero(nvars: usize) -> Self {
        SymPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, q: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], q);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, a: usize) -> Self {
        let mut e = vec![0; nvars];
        e[a] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Q::one());
        p
    }

    /// Linear polynomial `sum v_a z_a`.
    pub fn linear(v: &[Q]) -> Self {
        let mut p = Self::zero(v.len());
        for (a, q) in v.iter().enumerate() {
            let mut e = vec![0; v.len()];
            e[a] = 1;
            p.add_term(e, q.clone());
        }
        p
    }

    pub fn monomial(exps: Vec<u8>, q: Q) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, q);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u8>, Q)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, q) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, q);
        }
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

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Q)> {
        self.terms.iter()
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

    pub fn coeff(&self, e: &[u8]) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn total_degree(e: &[u8]) -> usize {
        e.iter().map(|&x| x as usize).sum()
    }

    /// Degree if homogeneous (None for zero or mixed).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|e| Self::total_degree(e));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| Self::total_degree(e)).max()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
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
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SymPolynomial { nvars: self.nvars, terms: self.terms.iter().map(|(e, q)| (e.clone(), q * c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut acc: HashMap<Vec<u8>, Q> = HashMap::new();
        for (ea, qa) in &self.terms {
            for (eb, qb) in &o.terms {
                let e: Vec<u8> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert_with(Q::zero) += qa * qb;
            }
        }
        SymPolynomial { nvars: self.nvars, terms: acc.into_iter().filter(|(_, q)| !q.is_zero()).collect() }
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// Partial derivative in variable `a`.
    pub fn derivative(&self, a: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (e, q) in &self.terms {
            if e[a] > 0 {
                let mut f = e.clone();
                f[a] -= 1;
                p.add_term(f, q * Q::from_int(e[a] as i64));
            }
        }
        p
    }

    /// Evaluate at a point.
    pub fn evaluate(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, q)| {
                e.iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .fold(q.clone(), |acc, (a, &k)| acc * point[a].pow(k as i64))
            })
            .sum()
    }

    /// Substitute each variable `z_a` by a polynomial `subs[a]` (all over the same new ring).
    pub fn substitute(&self, subs: &[SymPolynomial]) -> Self {
        assert_eq!(subs.len(), self.nvars);
        let nv = subs.first().map_or(0, |s| s.nvars);
        let mut powers: HashMap<(usize, u8), SymPolynomial> = HashMap::new();
        let mut out = Self::zero(nv);
        for (e, q) in &self.terms {
            let mut t = Self::constant(nv, q.clone());
            for (a, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = powers.entry((a, k)).or_insert_with(|| subs[a].pow(k as usize)).clone();
                t = t.mul(&pw);
            }
            out = out.add(&t);
        }
        out
    }

    /// Substitute `z_a -> sum_b m[a][b] w_b` (linear change of variables).
    pub fn linear_substitute(&self, m: &Matrix) -> Self {
        let subs: Vec<SymPolynomial> = (0..self.nvars).map(|a| Self::linear(m.row(a))).collect();
        self.substitute(&subs)
    }

    /// Coefficient vector over a fixed monomial list.
    pub fn coefficients_on(&self, monos: &[Vec<u8>]) -> Vec<Q> {
        monos.iter().map(|m| self.coeff(m)).collect()
    }

    /// Re-index variables: keep only `vars` (in order), dropping terms that use others.
    pub fn restrict_vars(&self, vars: &[usize]) -> Self {
        let mut p = Self::zero(vars.len());
        'outer: for (e, q) in &self.terms {
            let mut f = vec![0u8; vars.len()];
            let mut used = 0usize;
            for (k, &v) in vars.iter().enumerate() {
                f[k] = e[v];
                used += e[v] as usize;
            }
            if used != Self::total_degree(e) {
                continue 'outer;
            }
            p.add_term(f, q.clone());
        }
        p
    }

    /// Embed a polynomial in fewer variables, sending variable k to `vars[k]`.
    pub fn embed_vars(&self, nvars: usize, vars: &[usize]) -> Self {
        let mut p = Self::zero(nvars);
        for (e, q) in &self.terms {
            let mut f = vec![0u8; nvars];
            for (k, &v) in vars.iter().enumerate() {
                f[v] = e[k];
            }
            p.add_term(f, q.clone());
        }
        p
    }

    /// Coefficients of a degree-<=1 polynomial as a dense vector (constant term must vanish).
    pub fn as_linear(&self) -> Result<Vec<Q>> {
        let mut v = vec![Q::zero(); self.nvars];
        for (e, q) in &self.terms {
            if Self::total_degree(e) != 1 {
                return Err(Error::Degree("expected a linear polynomial".into()));
            }
            v[e.iter().position(|&k| k == 1).unwrap()] = q.clone();
        }
        Ok(v)
    }

    /// Terms as `(exponents, "p/q")` pairs, deterministic.
    pub fn to_json(&self) -> Vec<(Vec<u8>, String)> {
        self.terms.iter().map(|(e, q)| (e.clone(), q.to_string())).collect()
    }
}

/// Directional derivative: `iota_S(x) z_a = (x, e_a)`, extended as a derivation.
pub fn iota_s(g: &LieAlgebra, x: &[Q], f: &SymPolynomial) -> SymPolynomial {
    let gx = g.form().mul_vec(x);
    let mut out = SymPolynomial::zero(f.nvars());
    for (a, c) in gx.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
        out = out.add(&f.derivative(a).scale(c));
    }
    out
}

/// `theta(e_x) f`: the adjoint action as a derivation of S(g).
pub fn theta_s(g: &LieAlgebra, x: usize, f: &SymPolynomial) -> SymPolynomial {
    let n = g.dim();
    let mut out = SymPolynomial::zero(n);
    for b in 0..n {
        let br = g.bracket_basis(x, b);
        if br.is_empty() {
            continue;
        }
        let d = f.derivative(b);
        if d.is_zero() {
            continue;
        }
        let mut v = vec![Q::zero(); n];
        for (c, q) in br {
            v[*c] = q.clone();
        }
        out = out.add(&d.mul(&SymPolynomial::linear(&v)));
    }
    out
}

pub fn is_invariant(g: &LieAlgebra, f: &SymPolynomial) -> bool {
    (0..g.dim()).all(|x| theta_s(g, x, f).is_zero())
}

type PolyMatrix = Vec<Vec<SymPolynomial>>;

/// `X = sum_a pi(e_a) e^a` restricted to the representation block of one factor.
fn casimir_matrix(g: &LieAlgebra, factor: usize) -> PolyMatrix {
    let n = g.dim();
    let (off, d) = g.rep_blocks()[factor];
    let mut x = vec![vec![SymPolynomial::zero(n); d]; d];
    for b in 0..n {
        // pi_b = sum_a pi(e_a) Ginv[a][b]
        for a in 0..n {
            let c = &g.form_inv()[(a, b)];
            if c.is_zero() {
                continue;
            }
            let m = g.rep_matrix(a);
            for i in 0..d {
                for j in 0..d {
                    let v = &m[(off + i, off + j)];
                    if !v.is_zero() {
                        let mut e = vec![0u8; n];
                        e[b] = 1;
                        x[i][j].add_term(e, v * c);
                    }
                }
            }
        }
    }
    x
}

fn pm_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let d = a.len();
    let nv = a[0][0].nvars();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let mut s = SymPolynomial::zero(nv);
                    for k in 0..d {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            s = s.add(&a[i][k].mul(&b[k][j]));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn pm_trace_of_product(a: &PolyMatrix, b: &PolyMatrix) -> SymPolynomial {
    let d = a.len();
    let mut s = SymPolynomial::zero(a[0][0].nvars());
    for i in 0..d {
        for k in 0..d {
            if !a[i][k].is_zero() && !b[k][i].is_zero() {
                s = s.add(&a[i][k].mul(&b[k][i]));
            }
        }
    }
    s
}

/// Pfaffian of a skew matrix of polynomials, by expansion along the first row.
fn pfaffian(m: &PolyMatrix, idx: &[usize]) -> SymPolynomial {
    let nv = m[0][0].nvars();
    if idx.is_empty() {
        return SymPolynomial::one(nv);
    }
    let i0 = idx[0];
    let mut s = SymPolynomial::zero(nv);
    for k in 1..idx.len() {
        let j = idx[k];
        if m[i0][j].is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx.iter().enumerate().filter(|&(t, _)| t != 0 && t != k).map(|(_, &v)| v).collect();
        let term = m[i0][j].mul(&pfaffian(m, &rest));
        s = if k % 2 == 1 { s.add(&term) } else { s.sub(&term) };
    }
    s
}

/// Symmetric bilinear form on the representation block preserved by the factor, if one exists.
fn invariant_symmetric_form(g: &LieAlgebra, factor: usize) -> Option<Matrix> {
    let (off, d) = g.rep_blocks()[factor];
    // unknowns: B[i][j] for i <= j
    let idx: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
    let pos = |i: usize, j: usize| idx.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap();
    let mut rows = Vec::new();
    for a in 0..g.dim() {
        if g.factor_of_basis(a) != factor {
            continue;
        }
        let m = g.rep_matrix(a);
        // (X^T B + B X)[i][j] = sum_k X[k][i] B[k][j] + B[i][k] X[k][j]
        for i in 0..d {
            for j in i..d {
                let mut row = vec![Q::zero(); idx.len()];
                for k in 0..d {
                    let xki = &m[(off + k, off + i)];
                    if !xki.is_zero() {
                        row[pos(k, j)] += xki;
                    }
                    let xkj = &m[(off + k, off + j)];
                    if !xkj.is_zero() {
                        row[pos(i, k)] += xkj;
                    }
                }
                if row.iter().any(|q| !q.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let ns = Matrix::from_rows(rows).nullspace();
    let v = ns.into_iter().next()?;
    let mut b = Matrix::zeros(d, d);
    for (k, &(i, j)) in idx.iter().enumerate() {
        b[(i, j)] = v[k].clone();
        b[(j, i)] = v[k].clone();
    }
    (b.determinant() != Q::zero()).then_some(b)
}

fn coxeter_number(s: Series, n: usize) -> usize {
    match s {
        Series::A => n + 1,
        Series::B | Series::C => 2 * n,
        Series::D => 2 * n - 2,
        Series::G => 6,
        Series::E | Series::F => 0,
    }
}

/// Products of at least `min_factors` generators with total degree `deg`.
fn products_of_degree(gens: &[SymPolynomial], degs: &[usize], deg: usize, min_factors: usize) -> Vec<SymPolynomial> {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        gens: &[SymPolynomial],
        degs: &[usize],
        start: usize,
        left: usize,
        count: usize,
        cur: &SymPolynomial,
        min: usize,
        out: &mut Vec<SymPolynomial>,
    ) {
        if left == 0 {
            if count >= min {
                out.push(cur.clone());
            }
            return;
        }
        for k in start..gens.len() {
            if degs[k] <= left {
                rec(gens, degs, k, left - degs[k], count + 1, &cur.mul(&gens[k]), min, out);
            }
        }
    }
    let mut out = Vec::new();
    if let Some(g0) = gens.first() {
        rec(gens, degs, 0, deg, 0, &SymPolynomial::one(g0.nvars()), min_factors, &mut out);
    }
    out
}

fn in_span(v: &SymPolynomial, span: &[SymPolynomial]) -> bool {
    if v.is_zero() {
        return true;
    }
    let mut monos: Vec<Vec<u8>> = v.terms().map(|(e, _)| e.clone()).collect();
    for s in span {
        monos.extend(s.terms().map(|(e, _)| e.clone()));
    }
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<Q>> = span.iter().map(|s| s.coefficients_on(&monos)).collect();
    let r0 = linalg::rank_of(&rows);
    let mut with = rows;
    with.push(v.coefficients_on(&monos));
    linalg::rank_of(&with) == r0
}

/// Homogeneous generators of the invariant polynomials, sorted by degree; stores the exponents on `g`.
pub fn invariant_generators(g: &LieAlgebra) -> Result<Vec<SymPolynomial>> {
    let r = g.rank();
    let nfac = g.cartan_type.factors.len();
    let maxdeg = g.cartan_type.factors.iter().map(|&(s, n)| coxeter_number(s, n)).max().unwrap_or(0);
    let xs: Vec<PolyMatrix> = (0..nfac).map(|f| casimir_matrix(g, f)).collect();
    let mut powers: Vec<Vec<PolyMatrix>> = xs.iter().map(|x| vec![x.clone()]).collect();
    let mut accepted: Vec<SymPolynomial> = Vec::new();
    let mut degs: Vec<usize> = Vec::new();
    for k in 2..=maxdeg {
        let mut candidates = Vec::new();
        for f in 0..nfac {
            let (s, n) = g.cartan_type.factors[f];
            if k > coxeter_number(s, n) {
                continue;
            }
            // powers[f][j] = X^{j+1}
            while powers[f].len() < k - 1 {
                let next = pm_mul(powers[f].last().unwrap(), &xs[f]);
                powers[f].push(next);
            }
            candidates.push(pm_trace_of_product(&powers[f][k - 2], &xs[f]));
            if s == Series::D && k == n {
                let b = invariant_symmetric_form(g, f)
                    .ok_or_else(|| Error::Invariants("no invariant symmetric form for type D".into()))?;
                let bx = pm_mul(&pm_const(&b, g.dim()), &xs[f]);
                let idx: Vec<usize> = (0..bx.len()).collect();
                candidates.push(pfaffian(&bx, &idx));
            }
        }
        for c in candidates {
            if c.is_zero() {
                continue;
            }
            let span = products_of_degree(&accepted, &degs, k, 1);
            if !in_span(&c, &span) {
                accepted.push(c);
                degs.push(k);
            }
        }
        if accepted.len() == r {
            break;
        }
    }
    if accepted.len() != r {
        return Err(Error::Invariants(format!("found {} generators, rank {r}", accepted.len())));
    }
    for f in &accepted {
        if !is_invariant(g, f) {
            return Err(Error::Invariants("trace power is not ad-invariant".into()));
        }
    }
    g.set_exponents(degs.iter().map(|d| d - 1).collect())?;
    Ok(accepted)
}

fn pm_const(m: &Matrix, nvars: usize) -> PolyMatrix {
    (0..m.rows).map(|i| (0..m.cols).map(|j| SymPolynomial::constant(nvars, m[(i, j)].clone())).collect()).collect()
}

/// Multi-index factorial `A! = prod a_i!`.
fn multi_factorial(e: &[u8]) -> Q {
    e.iter().map(|&k| Q::factorial(k as u64)).product()
}

/// Polarization pairing `(f, h) = (d_f h)(0)`, where `d_f` substitutes `z_b -> iota_S(e_b)`.
pub fn pairing(g: &LieAlgebra, f: &SymPolynomial, h: &SymPolynomial) -> Q {
    let ft = f.linear_substitute(g.form());
    let mut s = Q::zero();
    for (e, q) in ft.terms() {
        let c = h.coeff(e);
        if !c.is_zero() {
            s += q * &c * multi_factorial(e);
        }
    }
    s
}

/// Dynkin generators: each generator made orthogonal to products of lower-degree invariants.
pub fn dynkin_space(g: &LieAlgebra, gens: &[SymPolynomial]) -> Result<Vec<SymPolynomial>> {
    let degs: Vec<usize> = gens
        .iter()
        .map(|f| f.homogeneous_degree().ok_or_else(|| Error::Degree("generator not homogeneous".into())))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (k, f) in gens.iter().enumerate() {
        let lower: Vec<usize> = (0..gens.len()).filter(|&j| degs[j] < degs[k]).collect();
        let lg: Vec<SymPolynomial> = lower.iter().map(|&j| gens[j].clone()).collect();
        let ld: Vec<usize> = lower.iter().map(|&j| degs[j]).collect();
        let prods = products_of_degree(&lg, &ld, degs[k], 2);
        // keep an independent subset
        let mut basis: Vec<SymPolynomial> = Vec::new();
        for p in prods {
            if !in_span(&p, &basis) {
                basis.push(p);
            }
        }
        if basis.is_empty() {
            out.push(f.clone());
            continue;
        }
        let gram = Matrix::from_rows(basis.iter().map(|a| basis.iter().map(|b| pairing(g, a, b)).collect()).collect());
        let rhs: Vec<Q> = basis.iter().map(|a| pairing(g, a, f)).collect();
        let c = gram.solve(&rhs).ok_or_else(|| Error::Invariants("degenerate pairing on decomposables".into()))?;
        let mut fk = f.clone();
        for (ci, b) in c.iter().zip(&basis) {
            fk = fk.sub(&b.scale(ci));
        }
        out.push(fk);
    }
    Ok(out)
}

/// Chevalley projection: drop every monomial touching a root variable; result in the r Cartan variables.
pub fn chevalley_projection(g: &LieAlgebra, f: &SymPolynomial) -> SymPolynomial {
    let vars: Vec<usize> = g.cartan_range().collect();
    f.restrict_vars(&vars)
}

/// Evaluate a polynomial on h at `lambda` (Cartan coordinates): `h_j -> (lambda, h_j)`.
pub fn evaluate_at(g: &LieAlgebra, f: &SymPolynomial, lambda: &[Q]) -> Q {
    let point = g.cartan_form().mul_vec(lambda);
    f.evaluate(&point)
}

/// Action of a Weyl element (matrix on Cartan coordinates) on a polynomial over h.
pub fn weyl_act(w: &Matrix, f: &SymPolynomial) -> SymPolynomial {
    // h_j -> sum_i w[i][j] h_i
    f.linear_substitute(&w.transpose())
}

/// Shifted action of simple reflection `s_i` on functions of `l_j = lambda(h_j)`:
/// `l_j -> l_j - cartan[j][i] (l_i + 1)`.
pub fn shifted_reflection(g: &LieAlgebra, i: usize, f: &SymPolynomial) -> SymPolynomial {
    let r = g.rank();
    let c = g.cartan_matrix();
    let subs: Vec<SymPolynomial> = (0..r)
        .map(|j| {
            let mut v = vec![Q::zero(); r];
            v[j] += Q::one();
            v[i] -= &c[(j, i)];
            SymPolynomial::linear(&v).add(&SymPolynomial::constant(r, -c[(j, i)].clone()))
        })
        .collect();
    f.substitute(&subs)
}

/// Rank of the Jacobian of `polys` at a point.
pub fn jacobian_rank(polys: &[SymPolynomial], point: &[Q]) -> usize {
    let rows: Vec<Vec<Q>> =
        polys.iter().map(|p| (0..p.nvars()).map(|a| p.derivative(a).evaluate(point)).collect()).collect();
    linalg::rank_of(&rows)
}

/// Variables for the Cartan coordinates, in the order of h_1..h_r.
pub fn cartan_vars(g: &LieAlgebra) -> Vec<usize> {
    (0..g.dim()).filter(|&a| matches!(g.role(a), BasisRole::Cartan(_))).collect()
}

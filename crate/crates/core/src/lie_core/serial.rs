//! JSON form of an algebra, used by the on-disk cache.

use serde::{Deserialize, Serialize};

use super::{BasisRole, CartanType, FormChoice, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Q;

/// `(a, b, [a, b])` with the bracket as sparse `(index, coefficient)` pairs.
pub type BracketEntry = (usize, usize, Vec<(usize, Q)>);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraData {
    pub schema: String,
    #[serde(rename = "type")]
    pub ty: String,
    pub form: FormChoice,
    /// Root vectors come from iterated brackets of Chevalley generators in the defining representation.
    pub convention: String,
    pub perm: Vec<Vec<usize>>,
    pub basis: Vec<String>,
    pub roles: Vec<BasisRole>,
    pub bracket: Vec<BracketEntry>,
    pub form_matrix: Vec<(usize, usize, Q)>,
    pub cartan: Vec<Vec<Q>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub rep_blocks: Vec<(usize, usize)>,
    pub rep: Vec<Vec<(usize, usize, Q)>>,
}

pub const SCHEMA: &str = "cliffhc-algebra/1";

fn sparse(m: &Matrix) -> Vec<(usize, usize, Q)> {
    let mut out = Vec::new();
    for i in 0..m.rows {
        for j in 0..m.cols {
            if !m[(i, j)].is_zero() {
                out.push((i, j, m[(i, j)].clone()));
            }
        }
    }
    out
}

fn dense(n: usize, entries: &[(usize, usize, Q)]) -> Result<Matrix> {
    let mut m = Matrix::zeros(n, n);
    for (i, j, q) in entries {
        if *i >= n || *j >= n {
            return Err(Error::Parse("matrix entry out of range".into()));
        }
        m[(*i, *j)] = q.clone();
    }
    Ok(m)
}

impl LieAlgebra {
    pub fn to_data(&self) -> AlgebraData {
        let dim = self.dim();
        let mut bracket = Vec::new();
        for a in 0..dim {
            for b in a + 1..dim {
                let c = self.bracket_basis(a, b);
                if !c.is_empty() {
                    bracket.push((a, b, c.to_vec()));
                }
            }
        }
        AlgebraData {
            schema: SCHEMA.into(),
            ty: self.cartan_type.to_string(),
            form: self.form_choice,
            convention: "defining-rep-bfs".into(),
            perm: self.perm.clone(),
            basis: self.labels.clone(),
            roles: self.roles.clone(),
            bracket,
            form_matrix: sparse(&self.form),
            cartan: self.cartan.to_rows(),
            positive_roots: self.root_coeffs.clone(),
            rep_blocks: self.rep_blocks.clone(),
            rep: self.rep.iter().map(sparse).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_data()).expect("serializable")
    }

    /// Rebuild from JSON and re-run every structural check.
    pub fn from_json(s: &str) -> Result<LieAlgebra> {
        let d: AlgebraData = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_data(d)
    }

    pub fn from_data(d: AlgebraData) -> Result<LieAlgebra> {
        if d.schema != SCHEMA {
            return Err(Error::Parse(format!("schema {:?}", d.schema)));
        }
        let ty: CartanType = d.ty.parse()?;
        ty.validate()?;
        let dim = d.basis.len();
        let r = ty.rank();
        if d.roles.len() != dim || d.rep.len() != dim || dim < r || !(dim - r).is_multiple_of(2) {
            return Err(Error::Parse("inconsistent sizes".into()));
        }
        let n = (dim - r) / 2;
        let mut bracket = vec![Vec::new(); dim * dim];
        for (a, b, c) in &d.bracket {
            if *a >= dim || *b >= dim || c.iter().any(|(k, _)| *k >= dim) {
                return Err(Error::Parse("bracket index out of range".into()));
            }
            bracket[b * dim + a] = c.iter().map(|(k, q)| (*k, -q.clone())).collect();
            bracket[a * dim + b] = c.clone();
        }
        let form = dense(dim, &d.form_matrix)?;
        let form_inv = form.inverse().ok_or_else(|| Error::Structure("degenerate form".into()))?;
        let rep_dim: usize = d.rep_blocks.iter().map(|b| b.1).sum();
        let rep = d.rep.iter().map(|e| dense(rep_dim, e)).collect::<Result<Vec<_>>>()?;
        let mut factor_of_simple = Vec::new();
        for (fi, &(_, k)) in ty.factors.iter().enumerate() {
            factor_of_simple.extend(std::iter::repeat_n(fi, k));
        }
        let mut g = LieAlgebra {
            cartan_type: ty,
            form_choice: d.form,
            perm: d.perm,
            rank: r,
            n_pos: n,
            roles: d.roles,
            labels: d.basis,
            bracket,
            form,
            form_inv,
            cartan: Matrix::zeros(r, r),
            root_coeffs: d.positive_roots,
            weights: vec![],
            root_h: vec![],
            factor_of_simple,
            rep,
            rep_blocks: d.rep_blocks,
            exponents: Default::default(),
        };
        if g.root_coeffs.len() != n {
            return Err(Error::Parse("root count".into()));
        }
        g.finish_root_data()?;
        if g.cartan.to_rows() != d.cartan {
            return Err(Error::Structure("stored Cartan matrix disagrees with brackets".into()));
        }
        g.validate()?;
        Ok(g)
    }
}

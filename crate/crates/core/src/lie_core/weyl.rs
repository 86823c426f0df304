use std::collections::{HashSet, VecDeque};

use crate::linalg::Matrix;
use crate::rational::Q;

/// Weyl group acting on Cartan coordinates (coroot basis).
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub generators: Vec<Matrix>,
}

impl WeylGroup {
    /// `s_i(h_j) = h_j - alpha_i(h_j) h_i`, with `cartan[j][i] = alpha_i(h_j)`.
    pub fn new(cartan: &Matrix) -> Self {
        let r = cartan.rows;
        let generators = (0..r)
            .map(|i| {
                let mut s = Matrix::identity(r);
                for j in 0..r {
                    // column j is the image of h_j
                    let v = &s[(i, j)] - &cartan[(j, i)];
                    s[(i, j)] = v;
                }
                s
            })
            .collect();
        WeylGroup { generators }
    }

    /// All group elements by closure under left multiplication by generators.
    pub fn elements(&self, limit: usize) -> Option<Vec<Matrix>> {
        let r = self.generators.first().map_or(0, |g| g.rows);
        let id = Matrix::identity(r);
        let mut seen: HashSet<Vec<Q>> = HashSet::new();
        seen.insert(id.data.clone());
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for s in &self.generators {
                let sw = s.mul(&w);
                if seen.insert(sw.data.clone()) {
                    if out.len() >= limit {
                        return None;
                    }
                    out.push(sw.clone());
                    queue.push_back(sw);
                }
            }
        }
        Some(out)
    }

    pub fn order(&self) -> usize {
        self.elements(100_000).map_or(0, |e| e.len())
    }
}

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    /// Series of the Langlands dual.
    pub fn dual(self) -> Series {
        match self {
            Series::B => Series::C,
            Series::C => Series::B,
            s => s,
        }
    }
}

/// Cartan type as a list of simple factors, e.g. `A1+A1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType {
    pub factors: Vec<(Series, usize)>,
}

impl CartanType {
    pub fn simple(s: Series, rank: usize) -> Self {
        CartanType { factors: vec![(s, rank)] }
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.1).sum()
    }

    pub fn validate(&self) -> Result<()> {
        if self.factors.is_empty() {
            return Err(Error::Unsupported("empty Cartan type".into()));
        }
        for &(s, n) in &self.factors {
            let ok = match s {
                Series::A => (1..=7).contains(&n),
                Series::B | Series::C => (2..=4).contains(&n),
                Series::D => cfg!(feature = "d4") && n == 4,
                Series::G => n == 2,
                Series::E | Series::F => false,
            };
            if !ok {
                let why = if s == Series::D && n == 4 { " (enable the `d4` feature)" } else { "" };
                return Err(Error::Unsupported(format!("{}{}{}", s.letter(), n, why)));
            }
        }
        if self.rank() > 8 {
            return Err(Error::Unsupported(format!("{self}: total rank above 8")));
        }
        Ok(())
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|(s, n)| format!("{}{}", s.letter(), n)).collect();
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('⊕', "+").replace(['x', 'X'], "+");
        let mut factors = Vec::new();
        for part in norm.split('+') {
            let part = part.trim();
            let mut chars = part.chars();
            let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
                Some('A') => Series::A,
                Some('B') => Series::B,
                Some('C') => Series::C,
                Some('D') => Series::D,
                Some('E') => Series::E,
                Some('F') => Series::F,
                Some('G') => Series::G,
                _ => return Err(Error::Parse(format!("bad Cartan type {s:?}"))),
            };
            let n: usize = chars.as_str().parse().map_err(|_| Error::Parse(format!("bad Cartan type {s:?}")))?;
            if n == 0 {
                return Err(Error::Parse(format!("bad Cartan type {s:?}")));
            }
            factors.push((series, n));
        }
        Ok(CartanType { factors })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormChoice {
    #[serde(rename = "killing")]
    Killing,
    #[serde(rename = "trace")]
    MinimalTrace,
}

impl FormChoice {
    pub fn name(self) -> &'static str {
        match self {
            FormChoice::Killing => "killing",
            FormChoice::MinimalTrace => "trace",
        }
    }
}

impl fmt::Display for FormChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "killing" => Ok(FormChoice::Killing),
            "trace" | "minimaltrace" | "minimal-trace" => Ok(FormChoice::MinimalTrace),
            _ => Err(Error::Parse(format!("unknown form {s:?} (expected killing|trace)"))),
        }
    }
}

fn unit(n: usize, i: usize, j: usize, c: i64) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = Q::from_int(c);
    m
}

fn sum(ms: &[Matrix]) -> Matrix {
    ms.iter().skip(1).fold(ms[0].clone(), |a, b| a.add(b))
}

/// Chevalley generators `(e_i, f_i)` of one simple factor in its defining representation.
/// Conventions: `cartan[i][j] = alpha_j(h_i)`; B_n has alpha_1 long, C_n and G2 have alpha_1 short.
pub fn defining_generators(s: Series, n: usize) -> (usize, Vec<(Matrix, Matrix)>) {
    match s {
        Series::A => {
            let d = n + 1;
            (d, (0..n).map(|k| (unit(d, k, k + 1, 1), unit(d, k + 1, k, 1))).collect())
        }
        Series::B => {
            let d = 2 * n + 1;
            let mut g = Vec::new();
            for k in 0..n - 1 {
                let f = sum(&[unit(d, k + 1, k, 1), unit(d, 2 * n - k, 2 * n - k - 1, 1)]);
                g.push((f.transpose(), f));
            }
            let f = sum(&[unit(d, n, n - 1, 1), unit(d, n + 1, n, 1)]);
            let e = sum(&[unit(d, n - 1, n, 2), unit(d, n, n + 1, 2)]);
            g.push((e, f));
            (d, g)
        }
        Series::C => {
            let d = 2 * n;
            let mut g = Vec::new();
            for k in 0..n - 1 {
                let f = sum(&[unit(d, k + 1, k, 1), unit(d, d - 1 - k, d - 2 - k, 1)]);
                g.push((f.transpose(), f));
            }
            let f = unit(d, n, n - 1, 1);
            g.push((f.transpose(), f));
            (d, g)
        }
        Series::D => {
            let d = 2 * n;
            let mut g = Vec::new();
            for k in 0..n - 1 {
                let f = sum(&[unit(d, k + 1, k, 1), unit(d, d - 1 - k, d - 2 - k, 1)]);
                g.push((f.transpose(), f));
            }
            let f = sum(&[unit(d, n, n - 2, 1), unit(d, n + 1, n - 1, 1)]);
            g.push((f.transpose(), f));
            (d, g)
        }
        Series::G => {
            let d = 7;
            let f1 = sum(&[unit(d, 1, 0, 1), unit(d, 3, 2, 1), unit(d, 4, 3, 1), unit(d, 6, 5, 1)]);
            let e1 = sum(&[unit(d, 0, 1, 1), unit(d, 2, 3, 2), unit(d, 3, 4, 2), unit(d, 5, 6, 1)]);
            let f2 = sum(&[unit(d, 2, 1, 1), unit(d, 5, 4, 1)]);
            let e2 = sum(&[unit(d, 1, 2, 1), unit(d, 4, 5, 1)]);
            (d, vec![(e1, f1), (e2, f2)])
        }
        Series::E | Series::F => unreachable!("validated earlier"),
    }
}

/// Expected dimension of a simple factor.
pub fn expected_dim(s: Series, n: usize) -> usize {
    match s {
        Series::A => n * (n + 2),
        Series::B | Series::C => n * (2 * n + 1),
        Series::D => n * (2 * n - 1),
        Series::G => 14,
        Series::E | Series::F => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_types() {
        assert_eq!("A1+A1".parse::<CartanType>().unwrap().to_string(), "A1+A1");
        assert_eq!("a1xa1".parse::<CartanType>().unwrap().factors.len(), 2);
        assert_eq!("G2".parse::<CartanType>().unwrap().rank(), 2);
        assert!("Z9".parse::<CartanType>().is_err());
        assert!("A".parse::<CartanType>().is_err());
        assert!("E6".parse::<CartanType>().unwrap().validate().is_err());
        assert!("G3".parse::<CartanType>().unwrap().validate().is_err());
    }

    #[test]
    fn generators_satisfy_sl2_relations() {
        for (s, n) in [(Series::A, 2), (Series::B, 2), (Series::C, 3), (Series::G, 2)] {
            let (_, gens) = defining_generators(s, n);
            for (e, f) in &gens {
                let h = e.commutator(f);
                assert_eq!(h.commutator(e), e.scale(&Q::from_int(2)));
                assert_eq!(h.commutator(f), f.scale(&Q::from_int(-2)));
            }
        }
    }
}

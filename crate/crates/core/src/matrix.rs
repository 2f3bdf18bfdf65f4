//! Small dense rational matrices: group elements and linear parts.

use std::fmt;
use std::ops::Mul;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::Coef;

/// A square `n × n` matrix with exact rational entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    n: usize,
    data: Vec<Coef>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Coef::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Coef::one();
        }
        m
    }

    pub fn diagonal(entries: &[Coef]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n);
        for (i, c) in entries.iter().enumerate() {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    /// From integer rows; panics on ragged input.
    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), n, "matrix must be square");
                r.iter().map(|&v| Coef::from_integer(v.into()))
            })
            .collect();
        Self { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<Coef>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Self { n, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Coef {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Coef) {
        self.data[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Coef] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<Coef>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.data[j * self.n + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, factor: &Coef) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Exactly one nonzero entry per row and column (signed permutations,
    /// diagonal scalings).
    pub fn is_monomial(&self) -> bool {
        (0..self.n).all(|i| self.row(i).iter().filter(|c| !c.is_zero()).count() == 1)
            && (0..self.n).all(|j| (0..self.n).filter(|&i| !self.get(i, j).is_zero()).count() == 1)
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = Self::identity(n).rows();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            inv.swap(c, p);
            let d = a[c][c].clone();
            for j in 0..n {
                a[c][j] = &a[c][j] / &d;
                inv[c][j] = &inv[c][j] / &d;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for j in 0..n {
                        let (ac, ic) = (a[c][j].clone(), inv[c][j].clone());
                        a[r][j] -= &f * ac;
                        inv[r][j] -= &f * ic;
                    }
                }
            }
        }
        Some(Self {
            n,
            data: inv.into_iter().flatten().collect(),
        })
    }

    /// Block-diagonal matrix assembled from square blocks.
    pub fn block_diagonal(blocks: &[Matrix]) -> Self {
        let n = blocks.iter().map(Matrix::size).sum();
        let mut m = Self::zeros(n);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.set(offset + i, offset + j, b.get(i, j).clone());
                }
            }
            offset += b.n;
        }
        m
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matrix sizes differ");
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

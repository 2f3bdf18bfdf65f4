use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::Zero;

use super::ScalarPoly;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::Coef;

/// A polynomial self-map `V → V`: `n` scalar components in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VecPoly {
    components: Vec<ScalarPoly>,
}

impl VecPoly {
    pub fn zero(n: usize) -> Self {
        Self {
            components: vec![ScalarPoly::zero(n); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            components: (0..n).map(|i| ScalarPoly::var(n, i)).collect(),
        }
    }

    /// The linear map `x ↦ A x`.
    pub fn linear(a: &Matrix) -> Self {
        Self {
            components: (0..a.size()).map(|i| ScalarPoly::linear(a.row(i))).collect(),
        }
    }

    /// Constant map.
    pub fn constant(values: &[Coef]) -> Self {
        let n = values.len();
        Self {
            components: values
                .iter()
                .map(|c| ScalarPoly::constant(n, c.clone()))
                .collect(),
        }
    }

    pub fn from_components(components: Vec<ScalarPoly>) -> Result<Self> {
        let n = components.len();
        for c in &components {
            if c.nvars() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.nvars(),
                });
            }
        }
        Ok(Self { components })
    }

    /// The map whose only nonzero component is `i`, equal to `f`.
    pub fn single(n: usize, i: usize, f: ScalarPoly) -> Self {
        let mut v = Self::zero(n);
        v.components[i] = f;
        v
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[ScalarPoly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &ScalarPoly {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(ScalarPoly::is_zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.components.iter().filter_map(ScalarPoly::degree).max()
    }

    pub fn low_degree(&self) -> Option<usize> {
        self.components.iter().filter_map(ScalarPoly::low_degree).min()
    }

    pub fn is_homogeneous(&self, k: usize) -> bool {
        self.components.iter().all(|c| c.is_homogeneous(k))
    }

    pub fn map(&self, f: impl Fn(&ScalarPoly) -> ScalarPoly) -> Self {
        Self {
            components: self.components.iter().map(f).collect(),
        }
    }

    pub fn homogeneous_part(&self, k: usize) -> Self {
        self.map(|c| c.homogeneous_part(k))
    }

    pub fn truncate(&self, kmax: usize) -> Self {
        self.map(|c| c.truncate(kmax))
    }

    pub fn scale(&self, factor: &Coef) -> Self {
        self.map(|c| c.scale(factor))
    }

    /// Multiplication by a scalar polynomial.
    pub fn mul_scalar(&self, f: &ScalarPoly) -> Self {
        self.map(|c| c * f)
    }

    /// `x ↦ p(A x)`, componentwise.
    pub fn precompose_linear(&self, a: &Matrix) -> Self {
        self.map(|c| c.precompose_linear(a))
    }

    /// The matrix of the linear part: entry `(i, j)` is the coefficient of
    /// `x_j` in component `i`.
    pub fn linear_part(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n);
        for (i, comp) in self.components.iter().enumerate() {
            for j in 0..n {
                let c = comp.coefficient(&super::Monomial::var(n, j));
                if !c.is_zero() {
                    m.set(i, j, c);
                }
            }
        }
        m
    }

    /// Lifts to an `n`-dimensional map: local variable `l` becomes
    /// `x_{block[l]}` and local component `l` lands in component `block[l]`.
    pub fn embed(&self, n: usize, block: &[usize]) -> Self {
        let mut out = Self::zero(n);
        for (l, comp) in self.components.iter().enumerate() {
            out.components[block[l]] = comp.embed(n, block);
        }
        out
    }
}

/// Component `i` of the result is `Σ_j (∂p_i/∂x_j) v_j`, i.e. `Dp · v`.
pub fn jacobian_times(p: &VecPoly, v: &VecPoly) -> VecPoly {
    assert_eq!(p.dim(), v.dim(), "dimensions differ");
    let n = p.dim();
    let partials: Vec<Vec<ScalarPoly>> = p
        .components
        .iter()
        .map(|pi| (0..n).map(|j| pi.differentiate(j)).collect())
        .collect();
    VecPoly {
        components: partials
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&v.components)
                    .filter(|(d, _)| !d.is_zero())
                    .fold(ScalarPoly::zero(n), |acc, (d, vj)| &acc + &(d * vj))
            })
            .collect(),
    }
}

/// `x ↦ A p(x)`.
pub fn postcompose_linear(a: &Matrix, p: &VecPoly) -> VecPoly {
    assert_eq!(a.size(), p.dim(), "dimensions differ");
    let n = p.dim();
    VecPoly {
        components: (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| !a.get(i, j).is_zero())
                    .fold(ScalarPoly::zero(n), |acc, j| {
                        &acc + &p.components[j].scale(a.get(i, j))
                    })
            })
            .collect(),
    }
}

impl Add for &VecPoly {
    type Output = VecPoly;

    fn add(self, rhs: &VecPoly) -> VecPoly {
        assert_eq!(self.dim(), rhs.dim(), "dimensions differ");
        VecPoly {
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &VecPoly {
    type Output = VecPoly;

    fn sub(self, rhs: &VecPoly) -> VecPoly {
        assert_eq!(self.dim(), rhs.dim(), "dimensions differ");
        VecPoly {
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &VecPoly {
    type Output = VecPoly;

    fn neg(self) -> VecPoly {
        self.map(|c| -c)
    }
}

impl fmt::Display for VecPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Coef {
        Coef::from_integer(n.into())
    }

    fn x(i: usize) -> ScalarPoly {
        ScalarPoly::var(2, i)
    }

    fn v2(a: ScalarPoly, b: ScalarPoly) -> VecPoly {
        VecPoly::from_components(vec![a, b]).unwrap()
    }

    #[test]
    fn jacobian_of_identity() {
        let v = v2(&x(0) * &x(1), x(1).pow(3));
        assert_eq!(jacobian_times(&VecPoly::identity(2), &v), v);
    }

    #[test]
    fn jacobian_of_quadratic() {
        let p = v2(ScalarPoly::zero(2), x(0).pow(2));
        let v = v2(x(1), ScalarPoly::zero(2));
        let expected = v2(ScalarPoly::zero(2), (&x(0) * &x(1)).scale(&q(2)));
        assert_eq!(jacobian_times(&p, &v), expected);
    }

    #[test]
    fn jacobian_of_constant() {
        let p = VecPoly::constant(&[q(1), q(2)]);
        assert!(jacobian_times(&p, &VecPoly::identity(2)).is_zero());
    }

    #[test]
    fn postcompose_examples() {
        let id = VecPoly::identity(2);
        assert_eq!(postcompose_linear(&Matrix::identity(2), &id), id);
        let refl = Matrix::from_integers(&[vec![1, 0], vec![0, -1]]);
        assert_eq!(postcompose_linear(&refl, &id), v2(x(0), -&x(1)));
        let two = Matrix::identity(2).scale(&q(2));
        let p = v2(x(1), ScalarPoly::zero(2));
        assert_eq!(postcompose_linear(&two, &p), v2(x(1).scale(&q(2)), ScalarPoly::zero(2)));
    }

    #[test]
    fn linear_part_roundtrip() {
        let l = Matrix::from_integers(&[vec![0, 1], vec![-3, 2]]);
        assert_eq!(VecPoly::linear(&l).linear_part(), l);
    }
}

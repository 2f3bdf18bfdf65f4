use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::Monomial;
use crate::matrix::Matrix;
use crate::Coef;

/// A polynomial `V → ℝ` with exact rational coefficients. Terms are kept in
/// the global monomial ordering and zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Coef>,
}

impl ScalarPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Coef) -> Self {
        Self::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Coef::one())
    }

    /// The coordinate function `x_i` (zero-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_terms(nvars, [(Monomial::var(nvars, i), Coef::one())])
    }

    pub fn monomial(m: Monomial, c: Coef) -> Self {
        let nvars = m.nvars();
        Self::from_terms(nvars, [(m, c)])
    }

    /// Sums repeated monomials and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coef)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `Σ_j coeffs[j] x_j`.
    pub fn linear(coeffs: &[Coef]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| (Monomial::var(n, j), c.clone())),
        )
    }

    pub fn add_term(&mut self, m: Monomial, c: Coef) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coef)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coef {
        self.terms.get(m).cloned().unwrap_or_else(Coef::zero)
    }

    /// Highest total degree present; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Lowest total degree present; `None` for the zero polynomial.
    pub fn low_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Monomial::degree)
    }

    /// True for zero or when every term has degree `k`.
    pub fn is_homogeneous(&self, k: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == k)
    }

    pub fn homogeneous_part(&self, k: usize) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every term of degree above `kmax`.
    pub fn truncate(&self, kmax: usize) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= kmax)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Coef) -> Self {
        if factor.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// Product with every term of degree above `kmax` discarded.
    pub fn mul_truncated(&self, other: &ScalarPoly, kmax: usize) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable counts differ");
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > kmax {
                break;
            }
            for (mb, cb) in &other.terms {
                if da + mb.degree() > kmax {
                    break;
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `x_i` (zero-based).
    pub fn differentiate(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut ex = m.exponents().to_vec();
            ex[i] -= 1;
            out.add_term(Monomial::new(ex), c * Coef::from_integer(e.into()));
        }
        out
    }

    /// Derivative along the linear vector field `x ↦ A x`:
    /// `Σ_j ∂f/∂x_j (A x)_j`.
    pub fn lie_derivative_linear(&self, a: &Matrix) -> Self {
        let n = self.nvars;
        let mut out = Self::zero(n);
        for j in 0..n {
            let d = self.differentiate(j);
            if d.is_zero() {
                continue;
            }
            let form = Self::linear(a.row(j));
            out = &out + &(&d * &form);
        }
        out
    }

    /// `x ↦ f(A x)`.
    pub fn precompose_linear(&self, a: &Matrix) -> Self {
        assert_eq!(a.size(), self.nvars, "matrix size differs from variable count");
        let n = self.nvars;
        if a.is_monomial() {
            // x_i ↦ a_{i,π(i)} x_{π(i)}
            let image: Vec<(usize, Coef)> = (0..n)
                .map(|i| {
                    let j = (0..n).find(|&j| !a.get(i, j).is_zero()).unwrap();
                    (j, a.get(i, j).clone())
                })
                .collect();
            let mut out = Self::zero(n);
            for (m, c) in &self.terms {
                let mut ex = vec![0u32; n];
                let mut coef = c.clone();
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e > 0 {
                        ex[image[i].0] += e;
                        coef *= num::pow(image[i].1.clone(), e as usize);
                    }
                }
                out.add_term(Monomial::new(ex), coef);
            }
            return out;
        }
        let forms: Vec<ScalarPoly> = (0..n).map(|i| Self::linear(a.row(i))).collect();
        let mut powers: HashMap<(usize, u32), ScalarPoly> = HashMap::new();
        let mut out = Self::zero(n);
        for (m, c) in &self.terms {
            let mut term = Self::constant(n, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers
                    .entry((i, e))
                    .or_insert_with(|| forms[i].pow(e))
                    .clone();
                term = &term * &p;
            }
            out = &out + &term;
        }
        out
    }

    /// Lifts to `n` variables, sending local variable `l` to `x_{block[l]}`.
    pub fn embed(&self, n: usize, block: &[usize]) -> Self {
        Self::from_terms(
            n,
            self.terms
                .iter()
                .map(|(m, c)| (m.embed(n, block), c.clone())),
        )
    }

    /// Evaluation at a rational point.
    pub fn eval(&self, point: &[Coef]) -> Coef {
        let mut acc = Coef::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }
}

impl Add for &ScalarPoly {
    type Output = ScalarPoly;

    fn add(self, rhs: &ScalarPoly) -> ScalarPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable counts differ");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ScalarPoly {
    type Output = ScalarPoly;

    fn sub(self, rhs: &ScalarPoly) -> ScalarPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable counts differ");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;

    fn neg(self) -> ScalarPoly {
        self.scale(&-Coef::one())
    }
}

impl Mul for &ScalarPoly {
    type Output = ScalarPoly;

    fn mul(self, rhs: &ScalarPoly) -> ScalarPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable counts differ");
        let mut out = ScalarPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let is_const = m.degree() == 0;
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if is_const {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Coef {
        Coef::from_integer(n.into())
    }

    fn x(n: usize, i: usize) -> ScalarPoly {
        ScalarPoly::var(n, i)
    }

    #[test]
    fn power_rule() {
        let p = &(&x(2, 0) * &x(2, 0)) * &x(2, 1);
        assert_eq!(p.differentiate(0), (&x(2, 0) * &x(2, 1)).scale(&q(2)));
    }

    #[test]
    fn derivative_of_constant_vanishes() {
        assert!(ScalarPoly::constant(3, q(5)).differentiate(1).is_zero());
    }

    #[test]
    fn derivative_picks_linear_variable() {
        let p = &x(2, 0).pow(3) + &x(2, 1);
        assert_eq!(p.differentiate(1), ScalarPoly::one(2));
    }

    #[test]
    fn swap_substitution() {
        let swap = Matrix::from_integers(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(x(2, 1).precompose_linear(&swap), x(2, 0));
    }

    #[test]
    fn reflection_substitution() {
        let refl = Matrix::from_integers(&[vec![1, 0], vec![0, -1]]);
        assert_eq!(x(2, 1).precompose_linear(&refl), -&x(2, 1));
    }

    #[test]
    fn general_substitution_matches_monomial_path() {
        let a = Matrix::from_integers(&[vec![1, 1], vec![0, 1]]);
        // (x1 + x2) * x2
        let p = &x(2, 0) * &x(2, 1);
        let expected = &(&x(2, 0) + &x(2, 1)) * &x(2, 1);
        assert_eq!(p.precompose_linear(&a), expected);
    }

    #[test]
    fn display_is_readable() {
        let p = &(&x(2, 0) * &x(2, 0)).scale(&q(3)) - &ScalarPoly::constant(2, q(1));
        assert_eq!(p.to_string(), "-1 + 3*x1^2");
    }
}

//! Complex coordinates on `ℝ² × ℂ²` realized in six real variables.
//!
//! `z₁ = x₃ + i x₄` and `z₂ = x₅ + i x₆`. A complex component `ż_j = w`
//! becomes the real pair `(Re w, Im w)`.

use crate::poly::{ScalarPoly, VecPoly};

/// Real position of `Re z₁` (zero-based).
pub const Z1: usize = 2;
/// Real position of `Re z₂` (zero-based).
pub const Z2: usize = 4;

/// A complex-valued polynomial `re + i·im` in real variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexPoly {
    pub re: ScalarPoly,
    pub im: ScalarPoly,
}

impl ComplexPoly {
    pub fn real(re: ScalarPoly) -> Self {
        let n = re.nvars();
        Self {
            re,
            im: ScalarPoly::zero(n),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::real(ScalarPoly::one(n))
    }

    /// `x_p + i x_{p+1}`.
    pub fn variable(n: usize, p: usize) -> Self {
        Self {
            re: ScalarPoly::var(n, p),
            im: ScalarPoly::var(n, p + 1),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn mul(&self, other: &ComplexPoly) -> Self {
        Self {
            re: &(&self.re * &other.re) - &(&self.im * &other.im),
            im: &(&self.re * &other.im) + &(&self.im * &other.re),
        }
    }

    /// Multiplication by the imaginary unit.
    pub fn times_i(&self) -> Self {
        Self {
            re: -&self.im,
            im: self.re.clone(),
        }
    }

    /// Multiplication by a real polynomial.
    pub fn times_real(&self, f: &ScalarPoly) -> Self {
        Self {
            re: &self.re * f,
            im: &self.im * f,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.re.nvars());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `|w|² = w w̄`.
    pub fn norm_sq(&self) -> ScalarPoly {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }
}

/// The map with `w` in the complex slot starting at real position `p` and
/// zeros elsewhere.
pub fn complex_slot(n: usize, p: usize, w: &ComplexPoly) -> VecPoly {
    let mut comps = vec![ScalarPoly::zero(n); n];
    comps[p] = w.re.clone();
    comps[p + 1] = w.im.clone();
    VecPoly::from_components(comps).expect("components share the variable count")
}

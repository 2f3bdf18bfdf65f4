//! The homological operator `Ad_L(p) = Dp·Lx − Lp`, its kernels and images,
//! and the linear parts used by the resonant examples.

use num::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteSignedGroup;
use crate::linalg::{nullspace, SparseVector};
use crate::matrix::Matrix;
use crate::poly::{
    from_coords, int, jacobian_times, postcompose_linear, scalar_from_coords, scalar_to_coords,
    to_coords, SliceBasis, VecPoly,
};
use crate::spaces::{slice_dim, GradedSubspace, SliceKind};

/// Whether the two rotation frequencies are taken in exact resonance or
/// replaced by a nonresonant surrogate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResonanceMode {
    Resonant,
    NonresonantSurrogate,
}

/// Parameters of the six-dimensional block linear part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResonantDescriptor {
    pub n1: u32,
    pub n2: u32,
    pub mode: ResonanceMode,
    /// Second frequency in surrogate mode.
    pub surrogate_prime: Option<u64>,
    /// Largest degree for which surrogate kernels agree with the truly
    /// nonresonant ones.
    pub valid_to_degree: Option<usize>,
}

/// A linearization `L`, optionally tagged with its resonant descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearPart {
    matrix: Matrix,
    resonance: Option<ResonantDescriptor>,
}

impl LinearPart {
    pub fn from_matrix(matrix: Matrix) -> Self {
        Self {
            matrix,
            resonance: None,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.size()
    }

    pub fn resonance(&self) -> Option<&ResonantDescriptor> {
        self.resonance.as_ref()
    }

    /// `L^t`, carrying the same validity bound.
    pub fn transpose(&self) -> Self {
        Self {
            matrix: self.matrix.transpose(),
            resonance: self.resonance.clone(),
        }
    }

    /// Fails when `k` exceeds the surrogate validity bound.
    pub fn check_degree(&self, k: usize) -> Result<()> {
        if let Some(bound) = self.resonance.as_ref().and_then(|r| r.valid_to_degree) {
            if k > bound {
                return Err(Error::BeyondSurrogateBound { k, bound });
            }
        }
        Ok(())
    }
}

/// Columns of `Ad_L` on the degree-`k` slice, in canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologicalMatrix {
    pub k: usize,
    pub n: usize,
    pub columns: Vec<SparseVector>,
}

impl HomologicalMatrix {
    /// Side length of the square matrix.
    pub fn size(&self) -> usize {
        self.columns.len()
    }

    /// Dense row-major copy, for small slices.
    pub fn to_dense(&self) -> Vec<Vec<crate::Coef>> {
        let size = self.size();
        let mut rows = vec![vec![crate::Coef::from_integer(0.into()); size]; size];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in col.entries() {
                rows[*i][j] = c.clone();
            }
        }
        rows
    }
}

/// `Ad_L(p)(x) = Dp(x)·Lx − L·p(x)`.
pub fn ad(l: &Matrix, p: &VecPoly) -> VecPoly {
    let lx = VecPoly::linear(l);
    &jacobian_times(p, &lx) - &postcompose_linear(l, p)
}

/// The matrix of `Ad_L` on the degree-`k` slice.
pub fn ad_matrix(l: &LinearPart, k: usize) -> Result<HomologicalMatrix> {
    l.check_degree(k)?;
    Ok(HomologicalMatrix {
        k,
        n: l.dim(),
        columns: ad_columns(l.matrix(), k),
    })
}

fn ad_columns(l: &Matrix, k: usize) -> Vec<SparseVector> {
    let n = l.size();
    let sb = SliceBasis::new(n, k);
    (0..n * sb.len())
        .into_par_iter()
        .map(|j| {
            let p = from_coords(&SparseVector::unit(j), &sb);
            to_coords(&ad(l, &p), &sb).expect("Ad_L preserves degree")
        })
        .collect()
}

/// `ker Ad_L` on the degree-`k` slice.
pub fn kernel_deg(l: &LinearPart, k: usize) -> Result<GradedSubspace> {
    l.check_degree(k)?;
    let cols = ad_columns(l.matrix(), k);
    Ok(GradedSubspace::from_vectors(
        SliceKind::Vector,
        l.dim(),
        k,
        &nullspace(&cols),
    ))
}

/// `Ad_L(P⃗^k)`.
pub fn image_deg(l: &LinearPart, k: usize) -> Result<GradedSubspace> {
    l.check_degree(k)?;
    let cols = ad_columns(l.matrix(), k);
    Ok(GradedSubspace::from_vectors(SliceKind::Vector, l.dim(), k, &cols))
}

/// `Ad_L` applied to a vector subspace.
pub fn image_of(l: &LinearPart, space: &GradedSubspace) -> Result<GradedSubspace> {
    l.check_degree(space.degree())?;
    let sb = SliceBasis::new(space.nvars(), space.degree());
    let cols: Vec<SparseVector> = space
        .basis()
        .par_iter()
        .map(|v| to_coords(&ad(l.matrix(), &from_coords(v, &sb)), &sb).expect("degree preserved"))
        .collect();
    Ok(GradedSubspace::from_vectors(
        SliceKind::Vector,
        space.nvars(),
        space.degree(),
        &cols,
    ))
}

/// `P⃗^k(S) = ker Ad_{L^t}`, the maps equivariant under `S = {e^{sL^t}}`.
pub fn s_equivariants_deg(l: &LinearPart, k: usize) -> Result<GradedSubspace> {
    kernel_deg(&l.transpose(), k)
}

/// `P^k(S)`: scalar polynomials with `∇f · L^t x = 0`.
pub fn s_invariants_deg(l: &LinearPart, k: usize) -> Result<GradedSubspace> {
    l.check_degree(k)?;
    let lt = l.matrix().transpose();
    let n = l.dim();
    let sb = SliceBasis::new(n, k);
    let cols: Vec<SparseVector> = (0..sb.len())
        .into_par_iter()
        .map(|j| {
            let f = scalar_from_coords(&SparseVector::unit(j), &sb);
            scalar_to_coords(&f.lie_derivative_linear(&lt), &sb).expect("degree preserved")
        })
        .collect();
    Ok(GradedSubspace::from_vectors(
        SliceKind::Scalar,
        n,
        k,
        &nullspace(&cols),
    ))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Smallest prime strictly greater than `m`.
pub fn next_prime_above(m: u64) -> u64 {
    (m + 1..).find(|&p| is_prime(p)).expect("primes are unbounded")
}

fn rotation(omega: i64) -> Matrix {
    Matrix::from_integers(&[vec![0, omega], vec![-omega, 0]])
}

/// The block matrix `N ⊕ R(ω₁) ⊕ R(ω₂)` on `ℝ² × ℂ²` with
/// `N = [[0, 1], [0, 0]]` and `R(ω) = [[0, ω], [−ω, 0]]`.
///
/// Resonant mode uses `ω = (n₁, n₂)`; surrogate mode uses `ω = (1, P)` with
/// `P` the smallest prime above `kmax + 1` and records `kmax` as the
/// validity bound.
pub fn build_resonant_l(n1: u32, n2: u32, mode: ResonanceMode, kmax: usize) -> Result<LinearPart> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::InvalidResonance("n1 and n2 must be positive".into()));
    }
    if mode == ResonanceMode::Resonant && n1.gcd(&n2) != 1 {
        return Err(Error::NotCoprime { n1, n2 });
    }
    let nil = Matrix::from_integers(&[vec![0, 1], vec![0, 0]]);
    let (w1, w2, prime, bound) = match mode {
        ResonanceMode::Resonant => (n1 as i64, n2 as i64, None, None),
        ResonanceMode::NonresonantSurrogate => {
            let p = next_prime_above(kmax as u64 + 1);
            (1, p as i64, Some(p), Some(kmax))
        }
    };
    Ok(LinearPart {
        matrix: Matrix::block_diagonal(&[nil, rotation(w1), rotation(w2)]),
        resonance: Some(ResonantDescriptor {
            n1,
            n2,
            mode,
            surrogate_prime: prime,
            valid_to_degree: bound,
        }),
    })
}

/// Per-generator outcome of the compatibility check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityEntry {
    pub index: usize,
    pub sign: i64,
    /// `γ L γ⁻¹ = σ(γ) L`.
    pub matrix_ok: bool,
    /// `γ L^t γ⁻¹ = σ(γ) L^t`.
    pub transpose_ok: bool,
}

impl CompatibilityEntry {
    pub fn pass(&self) -> bool {
        self.matrix_ok && self.transpose_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityReport {
    pub entries: Vec<CompatibilityEntry>,
}

impl CompatibilityReport {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(CompatibilityEntry::pass)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.entries.iter().find(|e| !e.pass()).map(|e| e.index)
    }

    /// `Err(Incompatible)` naming the first failing generator.
    pub fn into_result(self) -> Result<()> {
        match self.first_failure() {
            Some(index) => Err(Error::Incompatible { index }),
            None => Ok(()),
        }
    }
}

/// Checks that every generator conjugates `L` and `L^t` to `σ(γ)` times
/// themselves.
pub fn validate_compatibility(l: &LinearPart, group: &FiniteSignedGroup) -> CompatibilityReport {
    let lm = l.matrix();
    let lt = lm.transpose();
    let entries = group
        .generators()
        .iter()
        .enumerate()
        .map(|(index, g)| {
            let s = int(g.sign());
            let conj = |a: &Matrix| &(g.matrix() * a) * g.inverse_matrix();
            CompatibilityEntry {
                index,
                sign: g.sign(),
                matrix_ok: conj(lm) == lm.scale(&s),
                transpose_ok: conj(&lt) == lt.scale(&s),
            }
        })
        .collect();
    CompatibilityReport { entries }
}

/// Dimension of the full vector slice, for reports.
pub fn vector_slice_dim(n: usize, k: usize) -> usize {
    slice_dim(SliceKind::Vector, n, k)
}

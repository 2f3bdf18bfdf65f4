//! The complement `Q⃗^k(S⋊Γ)`, the split of the reversible-equivariants it
//! induces, and degree-by-degree normalization of a concrete field.

pub mod complex;
pub mod golden;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{act_star, FiniteSignedGroup};
use crate::homological::{
    ad, image_of, s_equivariants_deg, s_invariants_deg, validate_compatibility, LinearPart,
};
use crate::linalg::{solve, SparseVector};
use crate::poly::{
    agree_through, compose_truncated, from_coords, invert_near_identity, jacobian_times, to_coords,
    ScalarPoly, SliceBasis, VecPoly,
};
use crate::spaces::{
    algebra_slice, equivariants_deg, hilbert_basis_sigma, intersect, invariants_deg,
    rev_equivariants_deg, DirectSumCheck, GradedSubspace,
};

/// A normalization problem: `ẋ = X(x)` with `X(0) = 0` and linear part `L`,
/// reversible-equivariant under `group`, truncated at degree `kmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    n: usize,
    linear: LinearPart,
    group: FiniteSignedGroup,
    kmax: usize,
    field: Option<VecPoly>,
}

impl ProblemSpec {
    pub fn new(
        linear: LinearPart,
        group: FiniteSignedGroup,
        kmax: usize,
        field: Option<VecPoly>,
    ) -> Result<Self> {
        let n = linear.dim();
        if group.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: group.dim(),
            });
        }
        linear.check_degree(kmax)?;
        validate_compatibility(&linear, &group).into_result()?;
        if let Some(x) = &field {
            if x.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: x.dim(),
                });
            }
            if !x.homogeneous_part(0).is_zero() {
                return Err(Error::FieldConstantTerm);
            }
            if x.homogeneous_part(1) != VecPoly::linear(linear.matrix()) {
                return Err(Error::LinearPartMismatch);
            }
            if let Some((degree, index)) = reversibility_failure(&group, x, kmax)? {
                return Err(Error::FieldNotReversible { degree, index });
            }
        }
        Ok(Self {
            n,
            linear,
            group,
            kmax,
            field,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn linear(&self) -> &LinearPart {
        &self.linear
    }

    pub fn group(&self) -> &FiniteSignedGroup {
        &self.group
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn field(&self) -> Option<&VecPoly> {
        self.field.as_ref()
    }

    /// The field to normalize, defaulting to `Lx`.
    pub fn field_or_linear(&self) -> VecPoly {
        match &self.field {
            Some(x) => x.clone(),
            None => VecPoly::linear(self.linear.matrix()),
        }
    }
}

/// First `(degree, generator index)` at which `γ ⋆ X_d ≠ σ(γ) X_d`, for
/// `1 ≤ d ≤ kmax`.
pub fn reversibility_failure(
    group: &FiniteSignedGroup,
    field: &VecPoly,
    kmax: usize,
) -> Result<Option<(usize, usize)>> {
    for d in 1..=kmax {
        let part = field.homogeneous_part(d);
        if part.is_zero() {
            continue;
        }
        for (index, g) in group.generators().iter().enumerate() {
            if act_star(g, &part)? != part.scale(&g.sign_coef()) {
                return Ok(Some((d, index)));
            }
        }
    }
    Ok(None)
}

/// `Q⃗^k(S⋊Γ)`: the `S`-equivariants that are `Γ`-reversible-equivariant.
/// With trivial `σ` this is the classical equivariant complement.
pub fn complement_deg(l: &LinearPart, group: &FiniteSignedGroup, k: usize) -> Result<GradedSubspace> {
    validate_compatibility(l, group).into_result()?;
    let s_eq = s_equivariants_deg(l, k)?;
    let sym = if group.sigma_is_trivial() {
        equivariants_deg(group, k)
    } else {
        rev_equivariants_deg(group, k)
    };
    intersect(&s_eq, &sym)
}

/// Complements over a range of degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementReport {
    pub n: usize,
    pub slices: Vec<GradedSubspace>,
}

/// [`complement_deg`] for `k_from..=k_to`, degrees computed in parallel.
pub fn complement_range(
    l: &LinearPart,
    group: &FiniteSignedGroup,
    k_from: usize,
    k_to: usize,
) -> Result<ComplementReport> {
    l.check_degree(k_to)?;
    let slices = (k_from..=k_to)
        .into_par_iter()
        .map(|k| complement_deg(l, group, k))
        .collect::<Result<_>>()?;
    Ok(ComplementReport { n: l.dim(), slices })
}

/// `P^d(S⋊Γ)`: the `S`-invariants that are `Γ`-invariant.
pub fn invariant_ring_deg(l: &LinearPart, group: &FiniteSignedGroup, d: usize) -> Result<GradedSubspace> {
    intersect(&s_invariants_deg(l, d)?, &invariants_deg(group, d))
}

/// Degree-wise comparison of the algebra spanned by a candidate Hilbert
/// basis with the invariant ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertLine {
    pub d: usize,
    pub dim_algebra: usize,
    pub dim_invariants: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertReport {
    pub u_list: Vec<ScalarPoly>,
    pub dmax: usize,
    pub basis: Vec<ScalarPoly>,
    pub lines: Vec<HilbertLine>,
}

impl HilbertReport {
    pub fn pass(&self) -> bool {
        self.lines.iter().all(|l| l.equal)
    }
}

/// Builds `{R(u_i)} ∪ {S(u_i)S(u_j)}` from a Hilbert basis of the
/// symmetry-part invariants, prunes it up to `dmax`, and compares the
/// generated algebra with `P^d(S⋊Γ)` for `d ≤ dmax`.
pub fn hilbert_report(
    l: &LinearPart,
    group: &FiniteSignedGroup,
    u_list: &[ScalarPoly],
    dmax: usize,
) -> Result<HilbertReport> {
    l.check_degree(dmax)?;
    let basis = hilbert_basis_sigma(group, u_list, dmax)?;
    let n = l.dim();
    let lines = (0..=dmax)
        .into_par_iter()
        .map(|d| {
            let alg = algebra_slice(n, &basis, d)?;
            let inv = invariant_ring_deg(l, group, d)?;
            Ok(HilbertLine {
                d,
                dim_algebra: alg.dim(),
                dim_invariants: inv.dim(),
                equal: alg == inv,
            })
        })
        .collect::<Result<_>>()?;
    Ok(HilbertReport {
        u_list: u_list.to_vec(),
        dmax,
        basis,
        lines,
    })
}

/// Outcome of checking `Q⃗^k(Γ) = Q⃗^k(S⋊Γ) ⊕ Ad_L(P⃗^k(Γ))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementSplitReport {
    pub k: usize,
    pub dim_rev_equivariants: usize,
    pub dim_complement: usize,
    pub dim_image: usize,
    pub sum_spans: bool,
    pub intersection_zero: bool,
}

impl ComplementSplitReport {
    pub fn pass(&self) -> bool {
        self.sum_spans
            && self.intersection_zero
            && self.dim_rev_equivariants == self.dim_complement + self.dim_image
    }
}

/// Computes the three subspaces of the split at degree `k` exactly.
pub fn verify_complement_split(
    l: &LinearPart,
    group: &FiniteSignedGroup,
    k: usize,
) -> Result<ComplementSplitReport> {
    l.check_degree(k)?;
    if group.sigma_is_trivial() {
        return Err(Error::TrivialSigma);
    }
    let whole = rev_equivariants_deg(group, k);
    let complement = complement_deg(l, group, k)?;
    let image = image_of(l, &equivariants_deg(group, k))?;
    let check = DirectSumCheck::compute(&whole, &complement, &image)?;
    Ok(ComplementSplitReport {
        k,
        dim_rev_equivariants: whole.dim(),
        dim_complement: complement.dim(),
        dim_image: image.dim(),
        sum_spans: check.spans_whole,
        intersection_zero: check.intersection == 0,
    })
}

/// The subspaces one normalization step needs at degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepSpaces {
    pub k: usize,
    pub complement: GradedSubspace,
    pub equivariants: GradedSubspace,
}

impl StepSpaces {
    pub fn compute(l: &LinearPart, group: &FiniteSignedGroup, k: usize) -> Result<Self> {
        l.check_degree(k)?;
        Ok(Self {
            k,
            complement: complement_deg(l, group, k)?,
            equivariants: equivariants_deg(group, k),
        })
    }
}

/// One degree of the normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormStep {
    pub k: usize,
    pub dim_complement: usize,
    /// Retained term, in the complement.
    pub g_k: VecPoly,
    /// Generator of the change of coordinates `x = y + ξ_k(y)`.
    pub xi_k: VecPoly,
    /// `X̃_k − Ad_L(ξ_k) = g_k`.
    pub residual_check: bool,
    /// `D(I+ξ_k)·X_new = X_old∘(I+ξ_k)` through `kmax`.
    pub witness_check: bool,
    /// The new field is reversible-equivariant through `kmax`.
    pub equivariance_check: bool,
}

impl NormalFormStep {
    pub fn pass(&self) -> bool {
        self.residual_check && self.witness_check && self.equivariance_check
    }
}

/// Normalizes the degree-`k` part of `field`, computing the needed spaces.
pub fn normalize_step(
    field: &VecPoly,
    l: &LinearPart,
    group: &FiniteSignedGroup,
    k: usize,
    kmax: usize,
) -> Result<(NormalFormStep, VecPoly)> {
    validate_compatibility(l, group).into_result()?;
    let spaces = StepSpaces::compute(l, group, k)?;
    normalize_step_with(field, l, group, &spaces, kmax)
}

/// Normalizes the degree-`k` part of `field` against precomputed spaces.
///
/// Solves `X̃_k = g_k + Ad_L(ξ_k)` with `g_k` in the complement and `ξ_k`
/// equivariant; free coordinates of `ξ_k` are set to zero.
pub fn normalize_step_with(
    field: &VecPoly,
    l: &LinearPart,
    group: &FiniteSignedGroup,
    spaces: &StepSpaces,
    kmax: usize,
) -> Result<(NormalFormStep, VecPoly)> {
    let k = spaces.k;
    let n = l.dim();
    if field.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: field.dim(),
        });
    }
    let sb = SliceBasis::new(n, k);
    let target = field.homogeneous_part(k);
    let rhs = to_coords(&target, &sb)?;
    let comp = spaces.complement.basis();
    let eq_maps = spaces.equivariants.maps();
    let images: Vec<SparseVector> = eq_maps
        .par_iter()
        .map(|p| to_coords(&ad(l.matrix(), p), &sb))
        .collect::<Result<_>>()?;
    let mut columns = comp.to_vec();
    columns.extend(images.iter().cloned());
    let sol = solve(&columns, &rhs).ok_or(Error::Inconsistent { k })?;

    let mut g_coords = SparseVector::zero();
    let mut xi = VecPoly::zero(n);
    for (j, c) in sol.entries() {
        if *j < comp.len() {
            g_coords = g_coords.add_scaled(c, &comp[*j]);
        } else {
            xi = &xi + &eq_maps[*j - comp.len()].scale(c);
        }
    }
    let g = from_coords(&g_coords, &sb);
    let residual_check = &target - &ad(l.matrix(), &xi) == g;

    let old = field.truncate(kmax);
    let (new, witness_check) = if xi.is_zero() {
        (old, true)
    } else {
        let phi = &VecPoly::identity(n) + &xi;
        let psi = invert_near_identity(&phi, kmax)?;
        let pulled = jacobian_times(&psi, &old).truncate(kmax);
        let new = compose_truncated(&pulled, &phi, kmax)?;
        let lhs = jacobian_times(&phi, &new).truncate(kmax);
        let rhs = compose_truncated(&old, &phi, kmax)?;
        let ok = agree_through(&lhs, &rhs, kmax);
        (new, ok)
    };
    let equivariance_check = reversibility_failure(group, &new, kmax)?.is_none();
    let step = NormalFormStep {
        k,
        dim_complement: spaces.complement.dim(),
        g_k: g,
        xi_k: xi,
        residual_check,
        witness_check,
        equivariance_check,
    };
    Ok((step, new))
}

/// The result of normalizing through `kmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormResult {
    pub spec: ProblemSpec,
    pub steps: Vec<NormalFormStep>,
    /// `Lx + Σ g_k`.
    pub normal_field: VecPoly,
    /// `x = Φ(y)`, the composition of the per-degree changes truncated at
    /// `kmax`.
    pub coordinate_change: VecPoly,
}

impl NormalFormResult {
    pub fn pass(&self) -> bool {
        self.steps.iter().all(NormalFormStep::pass)
    }
}

/// Iterates [`normalize_step_with`] for `k = 2..=kmax`. The per-degree
/// spaces are computed in parallel up front.
pub fn normal_form(spec: &ProblemSpec) -> Result<NormalFormResult> {
    let l = spec.linear();
    let group = spec.group();
    let kmax = spec.kmax();
    let n = spec.dim();
    let spaces: Vec<StepSpaces> = (2..=kmax)
        .into_par_iter()
        .map(|k| StepSpaces::compute(l, group, k))
        .collect::<Result<_>>()?;
    let mut field = spec.field_or_linear().truncate(kmax);
    let mut total = VecPoly::identity(n);
    let mut steps = Vec::with_capacity(spaces.len());
    for s in &spaces {
        let (step, next) = normalize_step_with(&field, l, group, s, kmax)?;
        if !step.xi_k.is_zero() {
            let phi = &VecPoly::identity(n) + &step.xi_k;
            total = compose_truncated(&total, &phi, kmax)?;
        }
        field = next;
        steps.push(step);
    }
    Ok(NormalFormResult {
        spec: spec.clone(),
        steps,
        normal_field: field,
        coordinate_change: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::close_group_in;
    use crate::homological::kernel_deg;
    use crate::matrix::Matrix;
    use crate::poly::int;

    fn nilpotent() -> LinearPart {
        LinearPart::from_matrix(Matrix::from_integers(&[vec![0, 1], vec![0, 0]]))
    }

    #[test]
    fn nilpotent_complement_equals_kernel() {
        let l = nilpotent();
        let g = FiniteSignedGroup::trivial(2);
        let c = complement_deg(&l, &g, 2).unwrap();
        assert_eq!(c, kernel_deg(&l.transpose(), 2).unwrap());
        let x1 = ScalarPoly::var(2, 0);
        let x2 = ScalarPoly::var(2, 1);
        let a = VecPoly::from_components(vec![x1.pow(2), &x1 * &x2]).unwrap();
        let b = VecPoly::single(2, 1, x1.pow(2));
        assert_eq!(c, GradedSubspace::from_maps(2, 2, &[a, b]).unwrap());
    }

    #[test]
    fn linear_field_is_already_normal() {
        let l = nilpotent();
        let g = FiniteSignedGroup::trivial(2);
        let spec = ProblemSpec::new(l.clone(), g, 4, None).unwrap();
        let r = normal_form(&spec).unwrap();
        assert!(r.pass());
        assert_eq!(r.normal_field, VecPoly::linear(l.matrix()));
        assert!(r.steps.iter().all(|s| s.g_k.is_zero() && s.xi_k.is_zero()));
        assert_eq!(r.coordinate_change, VecPoly::identity(2));
    }

    #[test]
    fn image_term_is_removed() {
        let l = nilpotent();
        let g = FiniteSignedGroup::trivial(2);
        let q = VecPoly::single(2, 0, ScalarPoly::var(2, 1).pow(2));
        let x = &VecPoly::linear(l.matrix()) + &ad(l.matrix(), &q);
        let (step, new) = normalize_step(&x, &l, &g, 2, 3).unwrap();
        assert!(step.g_k.is_zero());
        assert_eq!(ad(l.matrix(), &step.xi_k), ad(l.matrix(), &q));
        assert!(new.homogeneous_part(2).is_zero());
        assert!(step.pass());
    }

    #[test]
    fn field_validation() {
        let l = nilpotent();
        let g = FiniteSignedGroup::trivial(2);
        let bad_linear = VecPoly::identity(2);
        assert_eq!(
            ProblemSpec::new(l.clone(), g.clone(), 3, Some(bad_linear)).unwrap_err(),
            Error::LinearPartMismatch
        );
        let with_constant = &VecPoly::linear(l.matrix()) + &VecPoly::constant(&[int(1), int(0)]);
        assert_eq!(
            ProblemSpec::new(l, g, 3, Some(with_constant)).unwrap_err(),
            Error::FieldConstantTerm
        );
    }

    #[test]
    fn reversibility_is_checked_per_degree() {
        // L = [[0,1],[0,0]] with R(x1,x2) = (x1,-x2) reversing
        let l = nilpotent();
        let r = crate::group::SignedElement::new(Matrix::from_integers(&[vec![1, 0], vec![0, -1]]), -1)
            .unwrap();
        let g = close_group_in(2, &[r], 8).unwrap();
        let x1 = ScalarPoly::var(2, 0);
        let good = &VecPoly::linear(l.matrix()) + &VecPoly::single(2, 1, x1.pow(2));
        assert!(ProblemSpec::new(l.clone(), g.clone(), 3, Some(good)).is_ok());
        let bad = &VecPoly::linear(l.matrix()) + &VecPoly::single(2, 0, x1.pow(2));
        assert_eq!(
            ProblemSpec::new(l, g, 3, Some(bad)).unwrap_err(),
            Error::FieldNotReversible { degree: 2, index: 0 }
        );
    }
}

//! Finite signed matrix groups and their actions on polynomials.
//!
//! A [`FiniteSignedGroup`] is a finite group `Γ` of invertible matrices with a
//! sign character `σ: Γ → {±1}`. Elements with sign `-1` are reversing
//! symmetries; the kernel of `σ` is the symmetry subgroup `Γ₊`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{postcompose_linear, ScalarPoly, VecPoly};
use crate::Coef;

/// Default bound on the order of a group produced by [`close_group`].
pub const DEFAULT_MAX_ORDER: usize = 64;

/// A group element together with its sign `σ(γ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedElement {
    matrix: Matrix,
    inverse: Matrix,
    sign: i8,
}

impl SignedElement {
    /// Fails on a singular matrix or a sign other than `±1`.
    pub fn new(matrix: Matrix, sign: i64) -> Result<Self> {
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidSign(sign));
        }
        let inverse = matrix
            .inverse()
            .ok_or(Error::SingularGenerator { index: 0 })?;
        Ok(Self {
            matrix,
            inverse,
            sign: sign as i8,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: Matrix::identity(n),
            inverse: Matrix::identity(n),
            sign: 1,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inverse
    }

    pub fn sign(&self) -> i64 {
        self.sign as i64
    }

    pub fn sign_coef(&self) -> Coef {
        Coef::from_integer(self.sign.into())
    }

    pub fn dim(&self) -> usize {
        self.matrix.size()
    }

    /// The product `self · other`.
    pub fn compose(&self, other: &SignedElement) -> SignedElement {
        SignedElement {
            matrix: &self.matrix * &other.matrix,
            inverse: &other.inverse * &self.inverse,
            sign: self.sign * other.sign,
        }
    }
}

impl fmt::Display for SignedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (σ = {:+})", self.matrix, self.sign)
    }
}

/// A finite matrix group with sign character, closed under products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSignedGroup {
    n: usize,
    generators: Vec<SignedElement>,
    elements: Vec<SignedElement>,
    delta: Option<usize>,
}

/// Breadth-first closure of `generators` under right multiplication.
///
/// The identity comes first and elements appear in discovery order. The
/// sign map is checked on every product edge, which certifies that it is a
/// homomorphism on the generated group. `delta` is the first element of sign
/// `-1` in that order.
pub fn close_group(generators: &[SignedElement], max_order: usize) -> Result<FiniteSignedGroup> {
    let n = match generators.first() {
        Some(g) => g.dim(),
        None => return Err(Error::Invalid("at least one generator is required".into())),
    };
    close_group_in(n, generators, max_order)
}

/// As [`close_group`], for an explicit ambient dimension (allows an empty
/// generator list, which yields the trivial group).
pub fn close_group_in(
    n: usize,
    generators: &[SignedElement],
    max_order: usize,
) -> Result<FiniteSignedGroup> {
    for g in generators {
        if g.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.dim(),
            });
        }
    }
    let mut elements = vec![SignedElement::identity(n)];
    let mut index: HashMap<Matrix, usize> = HashMap::new();
    index.insert(Matrix::identity(n), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let prod = elements[i].compose(g);
            match index.get(&prod.matrix) {
                Some(&j) => {
                    if elements[j].sign != prod.sign {
                        return Err(Error::NotHomomorphism {
                            element: prod.matrix.to_string(),
                        });
                    }
                }
                None => {
                    if elements.len() >= max_order {
                        return Err(Error::NotFinite { bound: max_order });
                    }
                    index.insert(prod.matrix.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(prod);
                }
            }
        }
    }
    let delta = elements.iter().position(|e| e.sign == -1);
    Ok(FiniteSignedGroup {
        n,
        generators: generators.to_vec(),
        elements,
        delta,
    })
}

/// Builds signed elements from `(matrix, sign)` pairs and closes them,
/// reporting the index of a singular generator.
pub fn group_from_generators(
    n: usize,
    generators: Vec<(Matrix, i64)>,
    max_order: usize,
) -> Result<FiniteSignedGroup> {
    let gens = generators
        .into_iter()
        .enumerate()
        .map(|(i, (m, s))| {
            SignedElement::new(m, s).map_err(|e| match e {
                Error::SingularGenerator { .. } => Error::SingularGenerator { index: i },
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    close_group_in(n, &gens, max_order)
}

impl FiniteSignedGroup {
    pub fn trivial(n: usize) -> Self {
        Self {
            n,
            generators: Vec::new(),
            elements: vec![SignedElement::identity(n)],
            delta: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SignedElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[SignedElement] {
        &self.generators
    }

    /// Whether every element has sign `+1`.
    pub fn sigma_is_trivial(&self) -> bool {
        self.delta.is_none()
    }

    pub fn delta(&self) -> Option<&SignedElement> {
        self.delta.map(|i| &self.elements[i])
    }

    /// The symmetry subgroup `Γ₊`, in generation order.
    pub fn plus_subgroup(&self) -> Vec<&SignedElement> {
        self.elements.iter().filter(|e| e.sign == 1).collect()
    }

    /// A generating set of `Γ₊`, chosen greedily in generation order.
    pub fn plus_generators(&self) -> Vec<SignedElement> {
        let mut gens: Vec<SignedElement> = Vec::new();
        let mut span: Vec<Matrix> = vec![Matrix::identity(self.n)];
        for e in self.plus_subgroup() {
            if span.contains(&e.matrix) {
                continue;
            }
            gens.push(e.clone());
            span = close_group_in(self.n, &gens, self.order())
                .expect("subgroup of a finite group")
                .elements
                .into_iter()
                .map(|x| x.matrix)
                .collect();
        }
        gens
    }

    /// The same group with the reversing element at position `index` as
    /// `delta`.
    pub fn with_delta(&self, index: usize) -> Result<Self> {
        match self.elements.get(index) {
            Some(e) if e.sign == -1 => Ok(Self {
                delta: Some(index),
                ..self.clone()
            }),
            _ => Err(Error::Invalid(format!("element {index} is not a reversing symmetry"))),
        }
    }

    /// Positions of all reversing elements.
    pub fn reversing_indices(&self) -> Vec<usize> {
        (0..self.order()).filter(|&i| self.elements[i].sign == -1).collect()
    }

    fn require_delta(&self) -> Result<&SignedElement> {
        self.delta().ok_or(Error::TrivialSigma)
    }
}

fn check_scalar_dim(g: &SignedElement, f: &ScalarPoly) -> Result<()> {
    if f.nvars() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: f.nvars(),
        });
    }
    Ok(())
}

fn check_vector_dim(g: &SignedElement, p: &VecPoly) -> Result<()> {
    if p.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: p.dim(),
        });
    }
    Ok(())
}

/// `γ ⊙ f`, the function `x ↦ f(γx)`.
pub fn act_odot(g: &SignedElement, f: &ScalarPoly) -> Result<ScalarPoly> {
    check_scalar_dim(g, f)?;
    Ok(f.precompose_linear(&g.matrix))
}

/// `γ ⋆ p`, the map `x ↦ γ⁻¹ p(γx)`.
///
/// This is a right action: `g ⋆ (h ⋆ p) = (h·g) ⋆ p`.
pub fn act_star(g: &SignedElement, p: &VecPoly) -> Result<VecPoly> {
    check_vector_dim(g, p)?;
    Ok(postcompose_linear(&g.inverse, &p.precompose_linear(&g.matrix)))
}

fn half() -> Coef {
    Coef::new(1.into(), 2.into())
}

fn check_plus_invariant(group: &FiniteSignedGroup, f: &ScalarPoly) -> Result<()> {
    for t in group.plus_generators() {
        if act_odot(&t, f)? != *f {
            return Err(Error::NotPlusInvariant {
                element: t.matrix.to_string(),
            });
        }
    }
    Ok(())
}

fn check_plus_equivariant(group: &FiniteSignedGroup, p: &VecPoly) -> Result<()> {
    for t in group.plus_generators() {
        if act_star(&t, p)? != *p {
            return Err(Error::NotPlusInvariant {
                element: t.matrix.to_string(),
            });
        }
    }
    Ok(())
}

/// `R(f) = ½(f + δ ⊙ f)` on `Γ₊`-invariant `f`.
pub fn reynolds_r(group: &FiniteSignedGroup, f: &ScalarPoly) -> Result<ScalarPoly> {
    let delta = group.require_delta()?;
    check_plus_invariant(group, f)?;
    Ok((f + &act_odot(delta, f)?).scale(&half()))
}

/// `S(f) = ½(f - δ ⊙ f)` on `Γ₊`-invariant `f`.
pub fn reynolds_s(group: &FiniteSignedGroup, f: &ScalarPoly) -> Result<ScalarPoly> {
    let delta = group.require_delta()?;
    check_plus_invariant(group, f)?;
    Ok((f - &act_odot(delta, f)?).scale(&half()))
}

/// `R⃗(p) = ½(p + δ ⋆ p)` on `Γ₊`-equivariant `p`; lands in the
/// `Γ`-equivariants.
pub fn vec_r(group: &FiniteSignedGroup, p: &VecPoly) -> Result<VecPoly> {
    let delta = group.require_delta()?;
    check_plus_equivariant(group, p)?;
    Ok((p + &act_star(delta, p)?).scale(&half()))
}

/// `S⃗(p) = ½(p - δ ⋆ p)` on `Γ₊`-equivariant `p`; lands in the
/// `Γ`-reversible-equivariants.
pub fn vec_s(group: &FiniteSignedGroup, p: &VecPoly) -> Result<VecPoly> {
    let delta = group.require_delta()?;
    check_plus_equivariant(group, p)?;
    Ok((p - &act_star(delta, p)?).scale(&half()))
}

/// `π(p) = ½(avg_{τ∈Γ₊} τ ⋆ p − avg_{τ∈Γ₊} (δτ) ⋆ p)`, defined on all of
/// the polynomial maps.
pub fn project_pi(group: &FiniteSignedGroup, p: &VecPoly) -> Result<VecPoly> {
    let delta = group.require_delta()?;
    let plus = group.plus_subgroup();
    let mut acc = VecPoly::zero(p.dim());
    for t in &plus {
        acc = &acc + &act_star(t, p)?;
        acc = &acc - &act_star(&delta.compose(t), p)?;
    }
    let weight = Coef::new(1.into(), (2 * plus.len()).into());
    Ok(acc.scale(&weight))
}

/// Average of `σ(γ) γ ⋆ p` over the whole group: the projection onto the
/// reversible-equivariants that also works for trivial `σ` (where it is the
/// projection onto the equivariants).
pub fn signed_average(group: &FiniteSignedGroup, p: &VecPoly) -> Result<VecPoly> {
    let mut acc = VecPoly::zero(p.dim());
    for g in group.elements() {
        let term = act_star(g, p)?;
        acc = if g.sign == 1 { &acc + &term } else { &acc - &term };
    }
    Ok(acc.scale(&Coef::new(1.into(), group.order().into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn phi6() -> SignedElement {
        SignedElement::new(
            Matrix::diagonal(&[int(1), int(-1), int(1), int(-1), int(1), int(-1)]),
            -1,
        )
        .unwrap()
    }

    #[test]
    fn phi_closes_to_order_two() {
        let g = close_group(&[phi6()], 16).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.plus_subgroup().len(), 1);
        assert_eq!(g.delta().unwrap(), &phi6());
    }

    #[test]
    fn identity_alone_is_trivial() {
        let g = close_group(&[SignedElement::identity(3)], 1).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.sigma_is_trivial());
    }

    #[test]
    fn reflections_generate_dihedral_group() {
        let k1 = SignedElement::new(Matrix::from_integers(&[vec![0, 1], vec![1, 0]]), 1).unwrap();
        let k2 = SignedElement::new(Matrix::from_integers(&[vec![1, 0], vec![0, -1]]), 1).unwrap();
        assert_eq!(close_group(&[k1, k2], 16).unwrap().order(), 8);
    }

    #[test]
    fn infinite_group_is_caught() {
        let g = SignedElement::new(Matrix::from_integers(&[vec![1, 1], vec![0, 1]]), 1).unwrap();
        assert_eq!(close_group(&[g], 10), Err(Error::NotFinite { bound: 10 }));
    }

    #[test]
    fn sign_conflict_is_caught() {
        let g = SignedElement::new(Matrix::from_integers(&[vec![-1, 0], vec![0, -1]]), -1).unwrap();
        let h = SignedElement::new(Matrix::from_integers(&[vec![-1, 0], vec![0, -1]]), 1).unwrap();
        assert!(matches!(close_group(&[g, h], 16), Err(Error::NotHomomorphism { .. })));
        let r = SignedElement::new(Matrix::from_integers(&[vec![0, -1], vec![1, 0]]), -1).unwrap();
        let g = close_group(&[r], 16).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.plus_subgroup().len(), 2);
    }

    #[test]
    fn singular_generator_rejected() {
        let res = group_from_generators(2, vec![(Matrix::zeros(2), 1)], 8);
        assert_eq!(res, Err(Error::SingularGenerator { index: 0 }));
        assert_eq!(
            SignedElement::new(Matrix::identity(2), 2),
            Err(Error::InvalidSign(2))
        );
    }

    #[test]
    fn star_of_reflection() {
        let g = SignedElement::new(Matrix::from_integers(&[vec![1, 0], vec![0, -1]]), 1).unwrap();
        let p = VecPoly::single(2, 0, ScalarPoly::var(2, 1));
        let expected = VecPoly::single(2, 0, -&ScalarPoly::var(2, 1));
        assert_eq!(act_star(&g, &p).unwrap(), expected);
        assert_eq!(act_star(&g, &VecPoly::identity(2)).unwrap(), VecPoly::identity(2));
    }

    #[test]
    fn odot_of_phi() {
        let x = |i| ScalarPoly::var(6, i);
        assert_eq!(act_odot(&phi6(), &x(1)).unwrap(), -&x(1));
        assert_eq!(act_odot(&phi6(), &x(0)).unwrap(), x(0));
    }

    #[test]
    fn reynolds_split_of_coordinates() {
        let g = close_group(&[phi6()], 16).unwrap();
        let x1 = ScalarPoly::var(6, 0);
        assert_eq!(reynolds_r(&g, &x1).unwrap(), x1);
        assert!(reynolds_s(&g, &x1).unwrap().is_zero());
        let x2 = ScalarPoly::var(6, 1);
        assert!(reynolds_r(&g, &x2).unwrap().is_zero());
        assert_eq!(reynolds_s(&g, &x2).unwrap(), x2);
    }

    #[test]
    fn identity_map_is_equivariant() {
        let g = close_group(&[phi6()], 16).unwrap();
        let id = VecPoly::identity(6);
        assert_eq!(vec_r(&g, &id).unwrap(), id);
        assert!(vec_s(&g, &id).unwrap().is_zero());
    }

    #[test]
    fn constant_field_is_reversible() {
        let g = close_group(&[phi6()], 16).unwrap();
        let h0 = VecPoly::single(6, 1, ScalarPoly::one(6));
        assert_eq!(vec_s(&g, &h0).unwrap(), h0);
        assert!(vec_r(&g, &h0).unwrap().is_zero());
        assert_eq!(project_pi(&g, &h0).unwrap(), h0);
    }

    #[test]
    fn pi_needs_reversing_element() {
        let g = FiniteSignedGroup::trivial(2);
        assert_eq!(project_pi(&g, &VecPoly::identity(2)), Err(Error::TrivialSigma));
    }

    #[test]
    fn reynolds_rejects_non_plus_invariant() {
        // Γ₊ = {I, -I}
        let r = SignedElement::new(Matrix::from_integers(&[vec![-1, 0], vec![0, -1]]), 1).unwrap();
        let s = SignedElement::new(Matrix::from_integers(&[vec![1, 0], vec![0, -1]]), -1).unwrap();
        let g = close_group(&[r, s], 16).unwrap();
        let x1 = ScalarPoly::var(2, 0);
        assert!(matches!(reynolds_r(&g, &x1), Err(Error::NotPlusInvariant { .. })));
    }
}

//! Degree-`k` slices of invariant, anti-invariant, equivariant and
//! reversible-equivariant polynomials, with exact subspace operations.

use std::collections::BTreeMap;

use num::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{act_odot, act_star, reynolds_r, reynolds_s, FiniteSignedGroup, SignedElement};
use crate::linalg::{in_span, intersect as intersect_spans, rref_span, SparseVector};
use crate::poly::{
    from_coords, scalar_from_coords, scalar_to_coords, to_coords, ScalarPoly, SliceBasis, VecPoly,
};
use crate::Coef;

/// Whether a slice holds scalar polynomials or polynomial maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SliceKind {
    Scalar,
    Vector,
}

/// A subspace of the degree-`k` slice, stored as a canonical reduced
/// echelon basis of coordinate columns. Equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedSubspace {
    kind: SliceKind,
    n: usize,
    k: usize,
    basis: Vec<SparseVector>,
}

impl GradedSubspace {
    /// The span of arbitrary coordinate columns.
    pub fn from_vectors(kind: SliceKind, n: usize, k: usize, vectors: &[SparseVector]) -> Self {
        Self {
            kind,
            n,
            k,
            basis: rref_span(vectors),
        }
    }

    pub fn zero(kind: SliceKind, n: usize, k: usize) -> Self {
        Self {
            kind,
            n,
            k,
            basis: Vec::new(),
        }
    }

    pub fn full(kind: SliceKind, n: usize, k: usize) -> Self {
        let dim = slice_dim(kind, n, k);
        Self {
            kind,
            n,
            k,
            basis: (0..dim).map(SparseVector::unit).collect(),
        }
    }

    /// The span of homogeneous scalar polynomials of degree `k`.
    pub fn from_scalars(n: usize, k: usize, polys: &[ScalarPoly]) -> Result<Self> {
        let basis = SliceBasis::new(n, k);
        let cols = polys
            .iter()
            .map(|p| {
                check_nvars(n, p.nvars())?;
                scalar_to_coords(p, &basis)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_vectors(SliceKind::Scalar, n, k, &cols))
    }

    /// The span of homogeneous polynomial maps of degree `k`.
    pub fn from_maps(n: usize, k: usize, maps: &[VecPoly]) -> Result<Self> {
        let basis = SliceBasis::new(n, k);
        let cols = maps
            .iter()
            .map(|p| to_coords(p, &basis))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_vectors(SliceKind::Vector, n, k, &cols))
    }

    pub fn kind(&self) -> SliceKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Dimension of the ambient slice.
    pub fn ambient_dim(&self) -> usize {
        slice_dim(self.kind, self.n, self.k)
    }

    pub fn basis(&self) -> &[SparseVector] {
        &self.basis
    }

    pub fn contains_coords(&self, v: &SparseVector) -> bool {
        in_span(v, &self.basis)
    }

    pub fn contains_map(&self, p: &VecPoly) -> Result<bool> {
        self.expect_kind(SliceKind::Vector)?;
        Ok(self.contains_coords(&to_coords(p, &SliceBasis::new(self.n, self.k))?))
    }

    pub fn contains_scalar(&self, f: &ScalarPoly) -> Result<bool> {
        self.expect_kind(SliceKind::Scalar)?;
        Ok(self.contains_coords(&scalar_to_coords(f, &SliceBasis::new(self.n, self.k))?))
    }

    /// Whether `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &GradedSubspace) -> bool {
        self.basis.iter().all(|v| other.contains_coords(v))
    }

    /// Basis elements as polynomial maps (vector slices only).
    pub fn maps(&self) -> Vec<VecPoly> {
        let sb = SliceBasis::new(self.n, self.k);
        self.basis.iter().map(|v| from_coords(v, &sb)).collect()
    }

    /// Basis elements as scalar polynomials (scalar slices only).
    pub fn scalars(&self) -> Vec<ScalarPoly> {
        let sb = SliceBasis::new(self.n, self.k);
        self.basis.iter().map(|v| scalar_from_coords(v, &sb)).collect()
    }

    fn expect_kind(&self, kind: SliceKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::SliceMismatch(format!(
                "expected a {kind:?} slice, found {:?}",
                self.kind
            )));
        }
        Ok(())
    }

    fn check_same_slice(&self, other: &GradedSubspace) -> Result<()> {
        if self.kind != other.kind || self.n != other.n || self.k != other.k {
            return Err(Error::SliceMismatch(format!(
                "({:?}, n = {}, k = {}) vs ({:?}, n = {}, k = {})",
                self.kind, self.n, self.k, other.kind, other.n, other.k
            )));
        }
        Ok(())
    }
}

fn check_nvars(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Dimension of the full degree-`k` slice.
pub fn slice_dim(kind: SliceKind, n: usize, k: usize) -> usize {
    let m = binomial(n + k - 1, k);
    match kind {
        SliceKind::Scalar => m,
        SliceKind::Vector => n * m,
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Columns of the linear map `f ↦ γ ⊙ f` on the scalar slice.
pub fn odot_operator(g: &SignedElement, k: usize) -> Vec<SparseVector> {
    let sb = SliceBasis::new(g.dim(), k);
    (0..sb.len())
        .into_par_iter()
        .map(|j| {
            let f = scalar_from_coords(&SparseVector::unit(j), &sb);
            let image = act_odot(g, &f).expect("dimensions agree");
            scalar_to_coords(&image, &sb).expect("degree is preserved")
        })
        .collect()
}

/// Columns of the linear map `p ↦ γ ⋆ p` on the vector slice.
pub fn star_operator(g: &SignedElement, k: usize) -> Vec<SparseVector> {
    let sb = SliceBasis::new(g.dim(), k);
    (0..g.dim() * sb.len())
        .into_par_iter()
        .map(|j| {
            let p = from_coords(&SparseVector::unit(j), &sb);
            let image = act_star(g, &p).expect("dimensions agree");
            to_coords(&image, &sb).expect("degree is preserved")
        })
        .collect()
}

/// Common solution space of `T_i v = c_i v` for operators given by columns.
fn fixed_space(
    kind: SliceKind,
    n: usize,
    k: usize,
    conditions: &[(Vec<SparseVector>, Coef)],
) -> GradedSubspace {
    if conditions.is_empty() {
        return GradedSubspace::full(kind, n, k);
    }
    let dim = slice_dim(kind, n, k);
    let stacked: Vec<SparseVector> = (0..dim)
        .into_par_iter()
        .map(|j| {
            let mut pairs = Vec::new();
            for (c, (cols, mult)) in conditions.iter().enumerate() {
                let col = cols[j].add_scaled(&-mult.clone(), &SparseVector::unit(j));
                pairs.extend(col.entries().iter().map(|(i, v)| (c * dim + i, v.clone())));
            }
            SparseVector::from_pairs(pairs)
        })
        .collect();
    let kernel = crate::linalg::nullspace(&stacked);
    GradedSubspace {
        kind,
        n,
        k,
        basis: kernel,
    }
}

fn scalar_conditions(gens: &[SignedElement], k: usize, signed: bool) -> Vec<(Vec<SparseVector>, Coef)> {
    gens.iter()
        .map(|g| {
            let mult = if signed { g.sign_coef() } else { Coef::one() };
            (odot_operator(g, k), mult)
        })
        .collect()
}

fn vector_conditions(gens: &[SignedElement], k: usize, signed: bool) -> Vec<(Vec<SparseVector>, Coef)> {
    gens.iter()
        .map(|g| {
            let mult = if signed { g.sign_coef() } else { Coef::one() };
            (star_operator(g, k), mult)
        })
        .collect()
}

/// `P^k(Γ)`: `f(γx) = f(x)`.
pub fn invariants_deg(group: &FiniteSignedGroup, k: usize) -> GradedSubspace {
    let conds = scalar_conditions(group.generators(), k, false);
    fixed_space(SliceKind::Scalar, group.dim(), k, &conds)
}

/// `Q^k(Γ)`: `f(γx) = σ(γ) f(x)`.
pub fn anti_invariants_deg(group: &FiniteSignedGroup, k: usize) -> GradedSubspace {
    let conds = scalar_conditions(group.generators(), k, true);
    fixed_space(SliceKind::Scalar, group.dim(), k, &conds)
}

/// `P⃗^k(Γ)`: `g(γx) = γ g(x)`.
pub fn equivariants_deg(group: &FiniteSignedGroup, k: usize) -> GradedSubspace {
    let conds = vector_conditions(group.generators(), k, false);
    fixed_space(SliceKind::Vector, group.dim(), k, &conds)
}

/// `Q⃗^k(Γ)`: `g(γx) = σ(γ) γ g(x)`.
pub fn rev_equivariants_deg(group: &FiniteSignedGroup, k: usize) -> GradedSubspace {
    let conds = vector_conditions(group.generators(), k, true);
    fixed_space(SliceKind::Vector, group.dim(), k, &conds)
}

/// `P^k(Γ₊)`.
pub fn plus_invariants_deg(group: &FiniteSignedGroup, k: usize) -> GradedSubspace {
    let conds = scalar_conditions(&group.plus_generators(), k, false);
    fixed_space(SliceKind::Scalar, group.dim(), k, &conds)
}

/// `P⃗^k(Γ₊)`.
pub fn plus_equivariants_deg(group: &FiniteSignedGroup, k: usize) -> GradedSubspace {
    let conds = vector_conditions(&group.plus_generators(), k, false);
    fixed_space(SliceKind::Vector, group.dim(), k, &conds)
}

/// Exact intersection of two subspaces of the same slice.
pub fn intersect(a: &GradedSubspace, b: &GradedSubspace) -> Result<GradedSubspace> {
    a.check_same_slice(b)?;
    Ok(GradedSubspace {
        kind: a.kind,
        n: a.n,
        k: a.k,
        basis: intersect_spans(&a.basis, &b.basis),
    })
}

/// Sum of two subspaces of the same slice.
pub fn sum(a: &GradedSubspace, b: &GradedSubspace) -> Result<GradedSubspace> {
    a.check_same_slice(b)?;
    let mut all = a.basis.clone();
    all.extend(b.basis.iter().cloned());
    Ok(GradedSubspace::from_vectors(a.kind, a.n, a.k, &all))
}

/// One line of a direct-sum check `whole = left ⊕ right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectSumCheck {
    pub whole: usize,
    pub left: usize,
    pub right: usize,
    pub intersection: usize,
    /// Whether `left + right` equals `whole` as subspaces.
    pub spans_whole: bool,
}

impl DirectSumCheck {
    pub fn compute(whole: &GradedSubspace, left: &GradedSubspace, right: &GradedSubspace) -> Result<Self> {
        let s = sum(left, right)?;
        let i = intersect(left, right)?;
        Ok(Self {
            whole: whole.dim(),
            left: left.dim(),
            right: right.dim(),
            intersection: i.dim(),
            spans_whole: s == *whole,
        })
    }

    pub fn pass(&self) -> bool {
        self.spans_whole && self.intersection == 0 && self.whole == self.left + self.right
    }
}

/// Report of `P^k(Γ₊) = P^k(Γ) ⊕ Q^k(Γ)` and its vector analogue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub k: usize,
    pub scalar: DirectSumCheck,
    pub vector: DirectSumCheck,
}

impl DecompositionReport {
    pub fn pass(&self) -> bool {
        self.scalar.pass() && self.vector.pass()
    }
}

/// Checks both decompositions over `Γ₊` at degree `k`.
pub fn decompose_plus_check(group: &FiniteSignedGroup, k: usize) -> Result<DecompositionReport> {
    if group.sigma_is_trivial() {
        return Err(Error::TrivialSigma);
    }
    let scalar = DirectSumCheck::compute(
        &plus_invariants_deg(group, k),
        &invariants_deg(group, k),
        &anti_invariants_deg(group, k),
    )?;
    let vector = DirectSumCheck::compute(
        &plus_equivariants_deg(group, k),
        &equivariants_deg(group, k),
        &rev_equivariants_deg(group, k),
    )?;
    Ok(DecompositionReport { k, scalar, vector })
}

/// Splits a polynomial into its nonzero homogeneous parts.
fn homogeneous_parts(f: &ScalarPoly) -> Vec<ScalarPoly> {
    match (f.low_degree(), f.degree()) {
        (Some(lo), Some(hi)) => (lo..=hi)
            .map(|d| f.homogeneous_part(d))
            .filter(|p| !p.is_zero())
            .collect(),
        _ => Vec::new(),
    }
}

/// Exponent vectors `e` with `Σ e_i degrees[i] = d`.
fn weighted_exponents(degrees: &[usize], d: usize) -> Vec<Vec<u32>> {
    fn go(degrees: &[usize], i: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == degrees.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = degrees[i];
        let max = left.checked_div(w).unwrap_or(0);
        for e in 0..=max {
            cur.push(e as u32);
            go(degrees, i + 1, left - e * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(degrees, 0, d, &mut Vec::new(), &mut out);
    out
}

/// All products of the homogeneous, positive-degree `gens` of total degree
/// `d` (the empty product when `d = 0`).
fn products_of_degree(n: usize, gens: &[ScalarPoly], d: usize) -> Result<Vec<ScalarPoly>> {
    let mut degrees = Vec::with_capacity(gens.len());
    for g in gens {
        check_nvars(n, g.nvars())?;
        match g.degree() {
            Some(deg) if deg > 0 && g.is_homogeneous(deg) => degrees.push(deg),
            Some(0) => degrees.push(0),
            None => degrees.push(0),
            Some(deg) => return Err(Error::NotHomogeneous { degree: deg }),
        }
    }
    let active: Vec<usize> = (0..gens.len()).filter(|&i| degrees[i] > 0).collect();
    let active_degrees: Vec<usize> = active.iter().map(|&i| degrees[i]).collect();
    let mut powers: BTreeMap<(usize, u32), ScalarPoly> = BTreeMap::new();
    let exps = weighted_exponents(&active_degrees, d);
    Ok(exps
        .into_iter()
        .map(|e| {
            let mut prod = ScalarPoly::one(n);
            for (slot, &ex) in e.iter().enumerate() {
                if ex > 0 {
                    let gi = active[slot];
                    let pw = powers
                        .entry((gi, ex))
                        .or_insert_with(|| gens[gi].pow(ex))
                        .clone();
                    prod = &prod * &pw;
                }
            }
            prod
        })
        .collect())
}

/// Degree-`d` slice of the algebra generated by homogeneous `gens`.
pub fn algebra_slice(n: usize, gens: &[ScalarPoly], d: usize) -> Result<GradedSubspace> {
    let prods = products_of_degree(n, gens, d)?;
    GradedSubspace::from_scalars(n, d, &prods)
}

/// The generating set `{R(u_i)} ∪ {S(u_i)S(u_j) : i ≤ j}` built from a
/// Hilbert basis of `P(Γ₊)`, with zero members dropped and redundant members
/// pruned.
///
/// Inputs are split into homogeneous parts first. Candidates are visited in
/// increasing degree (ties in construction order); a candidate of degree at
/// most `dmax` is dropped when it already lies in the degree slice of the
/// algebra generated by those kept so far. Candidates above `dmax` are kept.
pub fn hilbert_basis_sigma(
    group: &FiniteSignedGroup,
    u_list: &[ScalarPoly],
    dmax: usize,
) -> Result<Vec<ScalarPoly>> {
    let n = group.dim();
    let mut parts = Vec::new();
    for u in u_list {
        check_nvars(n, u.nvars())?;
        parts.extend(homogeneous_parts(u));
    }
    let rs = parts
        .iter()
        .map(|u| reynolds_r(group, u))
        .collect::<Result<Vec<_>>>()?;
    let ss = parts
        .iter()
        .map(|u| reynolds_s(group, u))
        .collect::<Result<Vec<_>>>()?;
    let mut candidates: Vec<ScalarPoly> = rs;
    for i in 0..ss.len() {
        for j in i..ss.len() {
            candidates.push(&ss[i] * &ss[j]);
        }
    }
    let mut candidates: Vec<(usize, ScalarPoly)> = candidates
        .into_iter()
        .filter(|c| !c.is_zero())
        .map(|c| (c.degree().unwrap_or(0), c))
        .collect();
    candidates.sort_by_key(|(d, _)| *d);
    let mut kept: Vec<ScalarPoly> = Vec::new();
    for (d, c) in candidates {
        if d == 0 {
            continue;
        }
        if d <= dmax && algebra_slice(n, &kept, d)?.contains_scalar(&c)? {
            continue;
        }
        kept.push(c);
    }
    Ok(kept)
}

/// Generators of one factor of a product action: the variable positions it
/// occupies and its invariants and equivariants in local coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorGenerators {
    pub block: Vec<usize>,
    pub invariants: Vec<ScalarPoly>,
    pub equivariants: Vec<VecPoly>,
}

/// Generators for the product action on `V × W` from generators on each
/// factor: invariants are lifted and equivariants are padded with zeros.
pub fn product_generators(
    n: usize,
    first: &FactorGenerators,
    second: &FactorGenerators,
) -> Result<(Vec<ScalarPoly>, Vec<VecPoly>)> {
    let mut seen = vec![false; n];
    for &i in first.block.iter().chain(&second.block) {
        if i >= n || seen[i] {
            return Err(Error::OverlappingBlocks);
        }
        seen[i] = true;
    }
    let mut invariants = Vec::new();
    let mut equivariants = Vec::new();
    for factor in [first, second] {
        let m = factor.block.len();
        for u in &factor.invariants {
            check_nvars(m, u.nvars())?;
            invariants.push(u.embed(n, &factor.block));
        }
        for g in &factor.equivariants {
            check_nvars(m, g.dim())?;
            equivariants.push(g.embed(n, &factor.block));
        }
    }
    Ok((invariants, equivariants))
}

/// Degree-`k` slice of the module generated by `equivariant_gens` over the
/// algebra generated by `invariant_gens`. All generators must be
/// homogeneous.
pub fn module_slice(
    n: usize,
    equivariant_gens: &[VecPoly],
    invariant_gens: &[ScalarPoly],
    k: usize,
) -> Result<GradedSubspace> {
    let sb = SliceBasis::new(n, k);
    let mut cols = Vec::new();
    let mut algebra_cache: BTreeMap<usize, Vec<ScalarPoly>> = BTreeMap::new();
    for g in equivariant_gens {
        check_nvars(n, g.dim())?;
        let Some(d) = g.degree() else { continue };
        if !g.is_homogeneous(d) {
            return Err(Error::NotHomogeneous { degree: d });
        }
        if d > k {
            continue;
        }
        let multipliers = match algebra_cache.get(&(k - d)) {
            Some(m) => m.clone(),
            None => {
                let m = algebra_slice(n, invariant_gens, k - d)?.scalars();
                algebra_cache.insert(k - d, m.clone());
                m
            }
        };
        for m in &multipliers {
            cols.push(to_coords(&g.mul_scalar(m), &sb)?);
        }
    }
    Ok(GradedSubspace::from_vectors(SliceKind::Vector, n, k, &cols))
}

//! Reference generator data for the six-dimensional resonant examples on
//! `ℝ² × ℂ²`, expanded into real coordinates for any coprime `(n₁, n₂)`.

use std::fmt;
use std::str::FromStr;

use num::Integer;
use rayon::prelude::*;

use super::complex::{complex_slot, ComplexPoly, Z1, Z2};
use super::complement_deg;
use crate::error::{Error, Result};
use crate::group::{close_group, FiniteSignedGroup, SignedElement};
use crate::homological::{build_resonant_l, LinearPart, ResonanceMode};
use crate::matrix::Matrix;
use crate::poly::{int, ScalarPoly, VecPoly};
use crate::spaces::module_slice;

const N: usize = 6;

/// Which reversing symmetry group acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `⟨φ⟩`.
    Z2,
    /// `⟨φ, ψ⟩`.
    Z2xZ2,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z2" => Ok(Family::Z2),
            "z2xz2" => Ok(Family::Z2xZ2),
            other => Err(Error::Invalid(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Z2 => "z2",
            Family::Z2xZ2 => "z2xz2",
        })
    }
}

/// Normal form type of a `⟨φ, ψ⟩` problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormalFormType {
    A,
    B,
    C,
    D,
}

impl fmt::Display for NormalFormType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Type from the parity rules: `a₀` selects `{A, B}` or `{C, D}` and
/// `a₁^{n₂} a₂^{n₁}` selects the first or second letter.
pub fn type_for(n1: u32, n2: u32, signs: [i64; 3]) -> NormalFormType {
    let [a0, a1, a2] = signs;
    let eps = a1.pow(n2) * a2.pow(n1);
    match (a0 == 1, eps == 1) {
        (true, true) => NormalFormType::A,
        (true, false) => NormalFormType::B,
        (false, true) => NormalFormType::C,
        (false, false) => NormalFormType::D,
    }
}

/// `φ(x₁, x₂, z₁, z₂) = (x₁, −x₂, z̄₁, z̄₂)`.
pub fn phi() -> SignedElement {
    let m = Matrix::diagonal(&[int(1), int(-1), int(1), int(-1), int(1), int(-1)]);
    SignedElement::new(m, -1).expect("φ is an involution")
}

/// `ψ(x₁, x₂, z₁, z₂) = (a₀x₁, −a₀x₂, a₁z̄₁, a₂z̄₂)`.
pub fn psi(signs: [i64; 3]) -> Result<SignedElement> {
    for s in signs {
        if s != 1 && s != -1 {
            return Err(Error::InvalidSign(s));
        }
    }
    let [a0, a1, a2] = signs;
    let m = Matrix::diagonal(&[int(a0), int(-a0), int(a1), int(-a1), int(a2), int(-a2)]);
    SignedElement::new(m, -1)
}

/// The invariants `u₁ = x₁`, `u₂ = |z₁|²`, `u₃ = |z₂|²`,
/// `u₄ = Re(z₁^{n₂} z̄₂^{n₁})`, `u₅ = Im(z₁^{n₂} z̄₂^{n₁})`.
pub fn u_list(n1: u32, n2: u32) -> [ScalarPoly; 5] {
    let z1 = ComplexPoly::variable(N, Z1);
    let z2 = ComplexPoly::variable(N, Z2);
    let w = z1.pow(n2).mul(&z2.conj().pow(n1));
    [
        ScalarPoly::var(N, 0),
        z1.norm_sq(),
        z2.norm_sq(),
        w.re,
        w.im,
    ]
}

/// The ten generators `H₀, …, H₉` in real coordinates.
pub fn h_list(n1: u32, n2: u32) -> [VecPoly; 10] {
    let [u1, _, _, _, im] = u_list(n1, n2);
    let x2 = ScalarPoly::var(N, 1);
    let z1 = ComplexPoly::variable(N, Z1);
    let z2 = ComplexPoly::variable(N, Z2);
    let a = z1.conj().pow(n2 - 1).mul(&z2.pow(n1));
    let b = z1.pow(n2).mul(&z2.conj().pow(n1 - 1));
    let h1 = VecPoly::from_components(vec![
        &u1 * &im,
        &x2 * &im,
        ScalarPoly::zero(N),
        ScalarPoly::zero(N),
        ScalarPoly::zero(N),
        ScalarPoly::zero(N),
    ])
    .expect("six components");
    [
        VecPoly::single(N, 1, ScalarPoly::one(N)),
        h1,
        complex_slot(N, Z1, &z1.times_i()),
        complex_slot(N, Z1, &a.times_i()),
        complex_slot(N, Z1, &z1.times_real(&im)),
        complex_slot(N, Z1, &a.times_real(&im)),
        complex_slot(N, Z2, &z2.times_i()),
        complex_slot(N, Z2, &b.times_i()),
        complex_slot(N, Z2, &z2.times_real(&im)),
        complex_slot(N, Z2, &b.times_real(&im)),
    ]
}

/// Reference data for one resonant example.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenCase {
    pub family: Family,
    pub n1: u32,
    pub n2: u32,
    /// `(a₀, a₁, a₂)`; `None` for the `⟨φ⟩` family.
    pub signs: Option<[i64; 3]>,
    pub normal_form_type: Option<NormalFormType>,
    pub linear: LinearPart,
    pub group: FiniteSignedGroup,
    /// Module generators of the expected complement.
    pub generators: Vec<VecPoly>,
    /// Algebra generators of the invariant ring acting on them.
    pub invariants: Vec<ScalarPoly>,
}

impl GoldenCase {
    /// Largest degree of the golden comparisons, `2(n₁+n₂)+1`.
    pub fn degree_bound(&self) -> usize {
        2 * (self.n1 + self.n2) as usize + 1
    }
}

/// Builds the linear part, group and expected generators. `signs` is
/// required for [`Family::Z2xZ2`] and ignored otherwise.
pub fn golden_case(family: Family, n1: u32, n2: u32, signs: Option<[i64; 3]>) -> Result<GoldenCase> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::InvalidResonance("n1 and n2 must be positive".into()));
    }
    if n1.gcd(&n2) != 1 {
        return Err(Error::NotCoprime { n1, n2 });
    }
    let linear = build_resonant_l(n1, n2, ResonanceMode::Resonant, 0)?;
    let h = h_list(n1, n2);
    let [u1, u2, u3, u4, _] = u_list(n1, n2);
    match family {
        Family::Z2 => Ok(GoldenCase {
            family,
            n1,
            n2,
            signs: None,
            normal_form_type: None,
            linear,
            group: close_group(&[phi()], 8)?,
            generators: h.to_vec(),
            invariants: vec![u1, u2, u3, u4],
        }),
        Family::Z2xZ2 => {
            let signs = signs.ok_or_else(|| Error::Invalid("signs are required for z2xz2".into()))?;
            let group = close_group(&[phi(), psi(signs)?], 8)?;
            let t = type_for(n1, n2, signs);
            let times = |f: &ScalarPoly, idx: &[usize]| -> Vec<VecPoly> {
                idx.iter().map(|&i| h[i].mul_scalar(f)).collect()
            };
            let pick = |idx: &[usize]| -> Vec<VecPoly> { idx.iter().map(|&i| h[i].clone()).collect() };
            let (generators, invariants) = match t {
                NormalFormType::A => (h.to_vec(), vec![u1, u2, u3, u4]),
                NormalFormType::B => {
                    let mut g = pick(&[0, 2, 5, 6, 9]);
                    g.extend(times(&u4, &[1, 3, 4, 7, 8]));
                    (g, vec![u1, u2, u3, u4.pow(2)])
                }
                NormalFormType::C => {
                    let mut g = times(&u1, &[0]);
                    g.extend(pick(&[1, 2, 3, 4, 5, 6, 7, 8, 9]));
                    (g, vec![u1.pow(2), u2, u3, u4])
                }
                NormalFormType::D => {
                    let l = [0, 1, 3, 4, 7, 8];
                    let mut g = pick(&[2, 5, 6, 9]);
                    g.extend(times(&u1, &l));
                    g.extend(times(&u4, &l));
                    let u1u4 = &u1 * &u4;
                    (g, vec![u1.pow(2), u2, u3, u4.pow(2), u1u4])
                }
            };
            Ok(GoldenCase {
                family,
                n1,
                n2,
                signs: Some(signs),
                normal_form_type: Some(t),
                linear,
                group,
                generators,
                invariants,
            })
        }
    }
}

/// Comparison of the computed complement with the expected module slice at
/// one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenLine {
    pub k: usize,
    pub dim_computed: usize,
    pub dim_expected: usize,
    pub equal: bool,
}

pub fn golden_check(case: &GoldenCase, k: usize) -> Result<GoldenLine> {
    let computed = complement_deg(&case.linear, &case.group, k)?;
    let expected = module_slice(N, &case.generators, &case.invariants, k)?;
    Ok(GoldenLine {
        k,
        dim_computed: computed.dim(),
        dim_expected: expected.dim(),
        equal: computed == expected,
    })
}

/// Golden comparisons over a range of degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenReport {
    pub case: GoldenCase,
    pub lines: Vec<GoldenLine>,
}

impl GoldenReport {
    pub fn pass(&self) -> bool {
        self.lines.iter().all(|l| l.equal)
    }
}

/// [`golden_check`] for `k_from..=k_to`, degrees computed in parallel.
pub fn golden_report(case: GoldenCase, k_from: usize, k_to: usize) -> Result<GoldenReport> {
    let lines = (k_from..=k_to)
        .into_par_iter()
        .map(|k| golden_check(&case, k))
        .collect::<Result<_>>()?;
    Ok(GoldenReport { case, lines })
}

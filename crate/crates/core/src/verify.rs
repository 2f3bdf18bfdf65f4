//! Exhaustive and seeded randomized checks of the structural identities
//! behind the complement construction.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{act_star, project_pi, vec_r, vec_s, FiniteSignedGroup};
use crate::homological::{ad, image_deg, image_of, kernel_deg, s_equivariants_deg, LinearPart};
use crate::linalg::SparseVector;
use crate::normalform::{complement_deg, verify_complement_split};
use crate::poly::{from_coords, int, SliceBasis, VecPoly};
use crate::spaces::{
    decompose_plus_check, equivariants_deg, plus_equivariants_deg, rev_equivariants_deg,
    DirectSumCheck, GradedSubspace, SliceKind,
};

/// A named group of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    /// `P⃗^k = ker Ad_{L^t} ⊕ Ad_L(P⃗^k)`.
    Elphick,
    /// `Q⃗^k(Γ) = Q⃗^k(S⋊Γ) ⊕ Ad_L(P⃗^k(Γ))`.
    ComplementSplit,
    /// Module interchange, Reynolds intertwining and twisted equivariance
    /// of `Ad_L`.
    Lemmas,
    /// Properties of the projection `π`.
    Pi,
    /// `P(Γ₊) = P(Γ) ⊕ Q(Γ)` and the vector analogue.
    DecomposePlus,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Elphick,
        Suite::ComplementSplit,
        Suite::Lemmas,
        Suite::Pi,
        Suite::DecomposePlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Elphick => "elphick",
            Suite::ComplementSplit => "complement-split",
            Suite::Lemmas => "lemmas",
            Suite::Pi => "pi",
            Suite::DecomposePlus => "decompose-plus",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite {s:?}")))
    }
}

/// One check at one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub check: String,
    pub k: usize,
    /// Random samples drawn; zero for exhaustive checks.
    pub samples: usize,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub lines: Vec<CheckLine>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failures(&self) -> Vec<&CheckLine> {
        self.lines.iter().filter(|l| !l.pass).collect()
    }

    /// Total random samples drawn by `check`.
    pub fn samples_for(&self, check: &str) -> usize {
        self.lines
            .iter()
            .filter(|l| l.check == check)
            .map(|l| l.samples)
            .sum()
    }
}

/// Reports of several suites run with one seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyRun {
    pub seed: u64,
    pub reports: Vec<SuiteReport>,
}

impl VerifyRun {
    pub fn pass(&self) -> bool {
        self.reports.iter().all(SuiteReport::pass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub k_from: usize,
    pub k_to: usize,
    pub seed: u64,
    /// Random samples per randomized check, spread over the degrees.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            k_from: 2,
            k_to: 4,
            seed: 0,
            samples: 100,
        }
    }
}

impl VerifyConfig {
    fn degrees(&self) -> Vec<usize> {
        (self.k_from..=self.k_to).collect()
    }
}

/// A deterministic generator for sample `index` of check `stream`.
pub fn sample_rng(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((stream << 32) | index);
    rng
}

/// A combination of the basis of `space` with coefficients in `-3..=3`.
pub fn random_in(space: &GradedSubspace, rng: &mut impl Rng) -> VecPoly {
    let sb = SliceBasis::new(space.nvars(), space.degree());
    let mut acc = SparseVector::zero();
    for b in space.basis() {
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            acc = acc.add_scaled(&int(c), b);
        }
    }
    from_coords(&acc, &sb)
}

/// A homogeneous degree-`k` map with up to `terms` random monomial entries.
pub fn random_map(n: usize, k: usize, terms: usize, rng: &mut impl Rng) -> VecPoly {
    let sb = SliceBasis::new(n, k);
    let size = n * sb.len();
    let pairs: Vec<_> = (0..terms)
        .map(|_| {
            let c: i64 = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
            (rng.gen_range(0..size), int(c))
        })
        .collect();
    from_coords(&SparseVector::from_pairs(pairs), &sb)
}

/// Runs one suite. Randomized checks draw `cfg.samples` samples each,
/// assigned to degrees round-robin.
pub fn run_suite(
    suite: Suite,
    l: &LinearPart,
    group: &FiniteSignedGroup,
    cfg: &VerifyConfig,
) -> Result<SuiteReport> {
    l.check_degree(cfg.k_to)?;
    if l.dim() != group.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: group.dim(),
        });
    }
    let lines = match suite {
        Suite::Elphick => elphick(l, cfg)?,
        Suite::ComplementSplit => complement_split(l, group, cfg)?,
        Suite::Lemmas => lemmas(l, group, cfg)?,
        Suite::Pi => pi(l, group, cfg)?,
        Suite::DecomposePlus => decompose_plus(group, cfg)?,
    };
    Ok(SuiteReport { suite, lines })
}

fn exhaustive(check: &str, k: usize, pass: bool, detail: String) -> CheckLine {
    CheckLine {
        check: check.to_string(),
        k,
        samples: 0,
        pass,
        detail,
    }
}

fn elphick(l: &LinearPart, cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    cfg.degrees()
        .into_par_iter()
        .map(|k| {
            let whole = GradedSubspace::full(SliceKind::Vector, l.dim(), k);
            let ker = kernel_deg(&l.transpose(), k)?;
            let im = image_deg(l, k)?;
            let c = DirectSumCheck::compute(&whole, &ker, &im)?;
            Ok(exhaustive(
                "elphick",
                k,
                c.pass(),
                format!(
                    "dim {} = {} + {}, intersection {}",
                    c.whole, c.left, c.right, c.intersection
                ),
            ))
        })
        .collect()
}

fn complement_split(l: &LinearPart, group: &FiniteSignedGroup, cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    cfg.degrees()
        .into_par_iter()
        .map(|k| {
            let r = verify_complement_split(l, group, k)?;
            Ok(exhaustive(
                "complement-split",
                k,
                r.pass(),
                format!(
                    "dim {} = {} + {}, sum {}, intersection zero {}",
                    r.dim_rev_equivariants, r.dim_complement, r.dim_image, r.sum_spans, r.intersection_zero
                ),
            ))
        })
        .collect()
}

/// Runs `f` on `samples` seeded samples, grouped into one line per degree.
fn sampled<F>(check: &str, stream: u64, cfg: &VerifyConfig, f: F) -> Result<Vec<CheckLine>>
where
    F: Fn(usize, &mut ChaCha8Rng) -> Result<bool> + Sync,
{
    let degrees = cfg.degrees();
    if degrees.is_empty() {
        return Ok(Vec::new());
    }
    let outcomes: Vec<(usize, bool)> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let k = degrees[i % degrees.len()];
            let mut rng = sample_rng(cfg.seed, stream, i as u64);
            f(k, &mut rng).map(|ok| (k, ok))
        })
        .collect::<Result<_>>()?;
    Ok(degrees
        .iter()
        .map(|&k| {
            let here: Vec<bool> = outcomes.iter().filter(|o| o.0 == k).map(|o| o.1).collect();
            let failed = here.iter().filter(|ok| !**ok).count();
            CheckLine {
                check: check.to_string(),
                k,
                samples: here.len(),
                pass: failed == 0,
                detail: format!("{} of {} samples hold", here.len() - failed, here.len()),
            }
        })
        .collect())
}

struct DegreeSpaces {
    equivariants: GradedSubspace,
    rev_equivariants: GradedSubspace,
    plus_equivariants: GradedSubspace,
}

fn degree_spaces(group: &FiniteSignedGroup, cfg: &VerifyConfig) -> Vec<(usize, DegreeSpaces)> {
    cfg.degrees()
        .into_par_iter()
        .map(|k| {
            (
                k,
                DegreeSpaces {
                    equivariants: equivariants_deg(group, k),
                    rev_equivariants: rev_equivariants_deg(group, k),
                    plus_equivariants: plus_equivariants_deg(group, k),
                },
            )
        })
        .collect()
}

fn lookup(spaces: &[(usize, DegreeSpaces)], k: usize) -> &DegreeSpaces {
    &spaces.iter().find(|s| s.0 == k).expect("degree in range").1
}

fn lemmas(l: &LinearPart, group: &FiniteSignedGroup, cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    if group.sigma_is_trivial() {
        return Err(Error::TrivialSigma);
    }
    let spaces = degree_spaces(group, cfg);
    let lm = l.matrix();
    let n = l.dim();
    let mut lines = sampled("ad-interchanges-modules", 1, cfg, |k, rng| {
        let s = lookup(&spaces, k);
        let p = random_in(&s.equivariants, rng);
        let q = random_in(&s.rev_equivariants, rng);
        Ok(s.rev_equivariants.contains_map(&ad(lm, &p))? && s.equivariants.contains_map(&ad(lm, &q))?)
    })?;
    lines.extend(sampled("reynolds-intertwining", 2, cfg, |k, rng| {
        let p = random_in(&lookup(&spaces, k).plus_equivariants, rng);
        Ok(vec_s(group, &ad(lm, &p))? == ad(lm, &vec_r(group, &p)?))
    })?);
    lines.extend(sampled("twisted-equivariance", 3, cfg, |k, rng| {
        let p = random_map(n, k, 6, rng);
        let adp = ad(lm, &p);
        for g in group.elements() {
            if ad(lm, &act_star(g, &p)?) != act_star(g, &adp)?.scale(&g.sign_coef()) {
                return Ok(false);
            }
        }
        Ok(true)
    })?);
    Ok(lines)
}

fn pi(l: &LinearPart, group: &FiniteSignedGroup, cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    if group.sigma_is_trivial() {
        return Err(Error::TrivialSigma);
    }
    let spaces = degree_spaces(group, cfg);
    let lm = l.matrix();
    let n = l.dim();
    let alternates: Vec<FiniteSignedGroup> = group
        .reversing_indices()
        .into_iter()
        .map(|i| group.with_delta(i))
        .collect::<Result<_>>()?;

    let mut lines = sampled("pi-projection", 4, cfg, |k, rng| {
        let s = lookup(&spaces, k);
        let p = random_map(n, k, 6, rng);
        let pp = project_pi(group, &p)?;
        let fixed = random_in(&s.rev_equivariants, rng);
        let mut ok = (pp.is_zero() || pp.is_homogeneous(k))
            && project_pi(group, &pp)? == pp
            && s.rev_equivariants.contains_map(&pp)?
            && project_pi(group, &fixed)? == fixed;
        for alt in &alternates {
            ok = ok && project_pi(alt, &p)? == pp;
        }
        Ok(ok)
    })?;

    let per_degree: Vec<(usize, GradedSubspace, GradedSubspace, GradedSubspace, GradedSubspace)> = cfg
        .degrees()
        .into_par_iter()
        .map(|k| {
            let s_eq = s_equivariants_deg(l, k)?;
            let complement = complement_deg(l, group, k)?;
            let image = image_deg(l, k)?;
            let target = image_of(l, &lookup(&spaces, k).equivariants)?;
            Ok((k, s_eq, complement, image, target))
        })
        .collect::<Result<_>>()?;

    for (k, s_eq, complement, image, target) in &per_degree {
        let projected = project_space(group, s_eq)?;
        lines.push(exhaustive(
            "pi-of-s-equivariants",
            *k,
            projected == *complement,
            format!("dim π(P⃗(S)) {} vs complement {}", projected.dim(), complement.dim()),
        ));
        let projected = project_space(group, image)?;
        lines.push(exhaustive(
            "pi-of-image",
            *k,
            projected == *target,
            format!("dim π(Ad_L(P⃗)) {} vs Ad_L(P⃗(Γ)) {}", projected.dim(), target.dim()),
        ));
    }
    let find = |k: usize| per_degree.iter().find(|d| d.0 == k).expect("degree in range");
    lines.extend(sampled("pi-of-s-equivariants-sampled", 5, cfg, |k, rng| {
        let (_, s_eq, complement, _, _) = find(k);
        let p = random_in(s_eq, rng);
        complement.contains_map(&project_pi(group, &p)?)
    })?);
    lines.extend(sampled("pi-of-image-sampled", 6, cfg, |k, rng| {
        let (_, _, _, _, target) = find(k);
        let p = random_map(n, k, 6, rng);
        target.contains_map(&project_pi(group, &ad(lm, &p))?)
    })?);
    Ok(lines)
}

/// `π` applied to every basis vector of `space`, spanned.
fn project_space(group: &FiniteSignedGroup, space: &GradedSubspace) -> Result<GradedSubspace> {
    let images: Vec<VecPoly> = space
        .maps()
        .par_iter()
        .map(|p| project_pi(group, p))
        .collect::<Result<_>>()?;
    GradedSubspace::from_maps(space.nvars(), space.degree(), &images)
}

fn decompose_plus(group: &FiniteSignedGroup, cfg: &VerifyConfig) -> Result<Vec<CheckLine>> {
    let reports = cfg
        .degrees()
        .into_par_iter()
        .map(|k| decompose_plus_check(group, k))
        .collect::<Result<Vec<_>>>()?;
    let mut lines = Vec::new();
    for r in reports {
        lines.push(exhaustive(
            "scalar-decomposition",
            r.k,
            r.scalar.pass(),
            format!(
                "dim {} = {} + {}, intersection {}",
                r.scalar.whole, r.scalar.left, r.scalar.right, r.scalar.intersection
            ),
        ));
        lines.push(exhaustive(
            "vector-decomposition",
            r.k,
            r.vector.pass(),
            format!(
                "dim {} = {} + {}, intersection {}",
                r.vector.whole, r.vector.left, r.vector.right, r.vector.intersection
            ),
        ));
    }
    Ok(lines)
}

//! Acceptance criteria. Each criterion prints one `criterion N: PASS|FAIL`
//! line; the process exits non-zero if any of them fails.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use revnf::group::{close_group, FiniteSignedGroup, SignedElement};
use revnf::homological::{
    ad, build_resonant_l, image_deg, kernel_deg, validate_compatibility, LinearPart, ResonanceMode,
};
use revnf::matrix::Matrix;
use revnf::normalform::golden::{golden_case, phi, psi, type_for, u_list, Family, NormalFormType};
use revnf::normalform::{
    complement_deg, hilbert_report, normal_form, normalize_step_with, verify_complement_split,
    ProblemSpec, StepSpaces,
};
use revnf::poly::{
    agree_through, compose_truncated, invert_near_identity, jacobian_times, ScalarPoly, VecPoly,
};
use revnf::spaces::{module_slice, DirectSumCheck, GradedSubspace, SliceKind};
use revnf::verify::{random_in, run_suite, sample_rng, Suite, VerifyConfig};

const N: usize = 6;

fn x(i: usize) -> ScalarPoly {
    ScalarPoly::var(N, i - 1)
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

fn resonant(n1: u32, n2: u32) -> LinearPart {
    build_resonant_l(n1, n2, ResonanceMode::Resonant, 0).unwrap()
}

fn phi_group() -> FiniteSignedGroup {
    close_group(&[phi()], 8).unwrap()
}

fn pair_group(signs: [i64; 3]) -> FiniteSignedGroup {
    close_group(&[phi(), psi(signs).unwrap()], 8).unwrap()
}

fn vec_of(components: [ScalarPoly; 6]) -> VecPoly {
    VecPoly::from_components(components.to_vec()).unwrap()
}

fn criterion_1() -> bool {
    let l = LinearPart::from_matrix(Matrix::from_integers(&[vec![0, 1], vec![0, 0]]));
    let x1 = ScalarPoly::var(2, 0);
    let radial = VecPoly::identity(2);
    let e2 = VecPoly::single(2, 1, ScalarPoly::one(2));
    (1..=8).all(|k| {
        let ker = kernel_deg(&l.transpose(), k).unwrap();
        let expected = module_slice(2, &[radial.clone(), e2.clone()], std::slice::from_ref(&x1), k).unwrap();
        ker.dim() == 2 && ker == expected
    })
}

fn criterion_2() -> bool {
    [(1, 1), (1, 2)].into_iter().all(|(n1, n2)| {
        let l = resonant(n1, n2);
        (2..=6).all(|k| {
            let whole = GradedSubspace::full(SliceKind::Vector, N, k);
            let ker = kernel_deg(&l.transpose(), k).unwrap();
            let im = image_deg(&l, k).unwrap();
            let c = DirectSumCheck::compute(&whole, &ker, &im).unwrap();
            let expected_whole = N as u64 * binomial(k as u64 + 5, 5);
            c.whole as u64 == expected_whole
                && c.left + c.right == c.whole
                && c.intersection == 0
                && c.pass()
        })
    })
}

fn type_signs() -> [(NormalFormType, [i64; 3]); 4] {
    [
        (NormalFormType::A, [1, -1, 1]),
        (NormalFormType::B, [1, -1, -1]),
        (NormalFormType::C, [-1, 1, 1]),
        (NormalFormType::D, [-1, -1, -1]),
    ]
}

fn criterion_3() -> bool {
    let l = resonant(1, 2);
    let mut groups = vec![phi_group()];
    groups.extend(type_signs().map(|(_, s)| pair_group(s)));
    groups.iter().all(|g| {
        (2..=6).all(|k| {
            let r = verify_complement_split(&l, g, k).unwrap();
            r.dim_rev_equivariants == r.dim_complement + r.dim_image && r.intersection_zero && r.pass()
        })
    })
}

/// `H₀, …, H₉` for `n₁ = n₂ = 1`, expanded by hand in real coordinates
/// `z₁ = x₃ + i x₄`, `z₂ = x₅ + i x₆`.
fn h_list_one_one() -> Vec<VecPoly> {
    let z = ScalarPoly::zero(N);
    let im = &(&x(4) * &x(5)) - &(&x(3) * &x(6));
    let o = ScalarPoly::one(N);
    let n = |p: &ScalarPoly| -p;
    let m = |a: usize, p: &ScalarPoly| &x(a) * p;
    vec![
        vec_of([z.clone(), o, z.clone(), z.clone(), z.clone(), z.clone()]),
        vec_of([m(1, &im), m(2, &im), z.clone(), z.clone(), z.clone(), z.clone()]),
        vec_of([z.clone(), z.clone(), n(&x(4)), x(3), z.clone(), z.clone()]),
        vec_of([z.clone(), z.clone(), n(&x(6)), x(5), z.clone(), z.clone()]),
        vec_of([z.clone(), z.clone(), m(3, &im), m(4, &im), z.clone(), z.clone()]),
        vec_of([z.clone(), z.clone(), m(5, &im), m(6, &im), z.clone(), z.clone()]),
        vec_of([z.clone(), z.clone(), z.clone(), z.clone(), n(&x(6)), x(5)]),
        vec_of([z.clone(), z.clone(), z.clone(), z.clone(), n(&x(4)), x(3)]),
        vec_of([z.clone(), z.clone(), z.clone(), z.clone(), m(5, &im), m(6, &im)]),
        vec_of([z.clone(), z.clone(), z.clone(), z, m(3, &im), m(4, &im)]),
    ]
}

fn invariants_one_one() -> Vec<ScalarPoly> {
    let sq = |a: usize, b: usize| &(&x(a) * &x(a)) + &(&x(b) * &x(b));
    let re = &(&x(3) * &x(5)) + &(&x(4) * &x(6));
    vec![x(1), sq(3, 4), sq(5, 6), re]
}

fn criterion_4() -> bool {
    let hand = h_list_one_one();
    let hand_inv = invariants_one_one();
    let one_one = golden_case(Family::Z2, 1, 1, None).unwrap();
    if one_one.generators != hand || one_one.invariants != hand_inv {
        return false;
    }
    [(1, 1), (1, 2)].into_iter().all(|(n1, n2)| {
        let case = golden_case(Family::Z2, n1, n2, None).unwrap();
        let bound = 2 * (n1 + n2) as usize + 1;
        (2..=bound).all(|k| {
            let computed = complement_deg(&case.linear, &case.group, k).unwrap();
            let expected = module_slice(N, &case.generators, &case.invariants, k).unwrap();
            computed == expected
        })
    })
}

fn criterion_5() -> bool {
    let parity_ok = type_signs().iter().all(|&(t, [a0, a1, a2])| {
        let eps = a1.pow(2) * a2;
        let expected = match (a0, eps) {
            (1, 1) => NormalFormType::A,
            (1, _) => NormalFormType::B,
            (_, 1) => NormalFormType::C,
            _ => NormalFormType::D,
        };
        t == expected && type_for(1, 2, [a0, a1, a2]) == t
    });
    parity_ok
        && type_signs().into_iter().all(|(t, signs)| {
            let case = golden_case(Family::Z2xZ2, 1, 2, Some(signs)).unwrap();
            case.normal_form_type == Some(t)
                && (2..=6).all(|k| {
                    let computed = complement_deg(&case.linear, &case.group, k).unwrap();
                    let expected = module_slice(N, &case.generators, &case.invariants, k).unwrap();
                    computed == expected
                })
        })
}

/// Scales a polynomial so that its first term has coefficient one.
fn monic(p: &ScalarPoly) -> ScalarPoly {
    let (_, c) = p.terms().next().expect("nonzero");
    p.scale(&c.recip())
}

fn criterion_6() -> bool {
    [(1, 1), (1, 2)].into_iter().all(|(n1, n2)| {
        let l = resonant(n1, n2);
        let us = u_list(n1, n2);
        let dmax = 2 * (n1 + n2) as usize + 2;
        let report = hilbert_report(&l, &phi_group(), &us, dmax).unwrap();
        let got: HashSet<String> = report.basis.iter().map(|b| monic(b).to_string()).collect();
        let want: HashSet<String> = us[..4].iter().map(|u| monic(u).to_string()).collect();
        report.basis.len() == 4 && got == want && report.lines.len() == dmax + 1 && report.pass()
    })
}

fn criterion_7() -> bool {
    let sampled = [
        "ad-interchanges-modules",
        "reynolds-intertwining",
        "twisted-equivariance",
        "pi-projection",
        "pi-of-s-equivariants-sampled",
        "pi-of-image-sampled",
    ];
    let exhaustive = ["pi-of-s-equivariants", "pi-of-image", "scalar-decomposition", "vector-decomposition"];
    let cases = [
        (resonant(1, 1), phi_group()),
        (resonant(1, 2), pair_group([-1, -1, -1])),
    ];
    cases.iter().all(|(l, g)| {
        let identity_cfg = VerifyConfig { k_from: 2, k_to: 5, seed: 7, samples: 100 };
        let decomposition_cfg = VerifyConfig { k_from: 0, ..identity_cfg };
        let reports = [
            run_suite(Suite::Lemmas, l, g, &identity_cfg).unwrap(),
            run_suite(Suite::Pi, l, g, &identity_cfg).unwrap(),
            run_suite(Suite::DecomposePlus, l, g, &decomposition_cfg).unwrap(),
        ];
        let all_pass = reports.iter().all(|r| r.pass());
        let enough = sampled
            .iter()
            .all(|c| reports.iter().map(|r| r.samples_for(c)).sum::<usize>() >= 100);
        let present = exhaustive.iter().all(|c| {
            let degrees: HashSet<usize> = reports
                .iter()
                .flat_map(|r| r.lines.iter())
                .filter(|line| line.check == *c)
                .map(|line| line.k)
                .collect();
            !degrees.is_empty()
        });
        let decomposition_degrees: HashSet<usize> = reports[2].lines.iter().map(|l| l.k).collect();
        all_pass && enough && present && decomposition_degrees == (0..=5).collect()
    })
}

/// Plants `c_k` in the complement and `q_k` among the equivariants, builds
/// `X = (DΦ·N)∘Φ⁻¹` for `N = Lx + Σ c_k` and `Φ = ∏ (I + q_k)`, and
/// normalizes `X`.
fn planted(l: &LinearPart, g: &FiniteSignedGroup, seed: u64) -> bool {
    let kmax = 4;
    let id = VecPoly::identity(N);
    let lx = VecPoly::linear(l.matrix());
    let mut normal = lx.clone();
    let mut phi_total = id.clone();
    let mut planted = Vec::new();
    for k in 2..=kmax {
        let spaces = StepSpaces::compute(l, g, k).unwrap();
        let mut rng = sample_rng(seed, 0, k as u64);
        let c = random_in(&spaces.complement, &mut rng);
        let q_raw = random_in(&spaces.equivariants, &mut rng);
        let probe = &(&lx + &c) + &ad(l.matrix(), &q_raw);
        let (step, _) = normalize_step_with(&probe, l, g, &spaces, k).unwrap();
        if step.g_k != c {
            return false;
        }
        let q = step.xi_k;
        normal = &normal + &c;
        phi_total = compose_truncated(&phi_total, &(&id + &q), kmax).unwrap();
        planted.push((c, q));
    }
    let inverse = invert_near_identity(&phi_total, kmax).unwrap();
    let field = compose_truncated(&jacobian_times(&phi_total, &normal), &inverse, kmax).unwrap();
    let spec = ProblemSpec::new(l.clone(), g.clone(), kmax, Some(field.clone())).unwrap();
    let result = normal_form(&spec).unwrap();

    let recovered = result
        .steps
        .iter()
        .zip(&planted)
        .all(|(s, (c, q))| s.g_k == *c && s.xi_k == *q);
    let witness = agree_through(
        &jacobian_times(&result.coordinate_change, &result.normal_field),
        &compose_truncated(&field, &result.coordinate_change, kmax).unwrap(),
        kmax,
    );
    let change = agree_through(&result.coordinate_change, &phi_total, kmax);

    let again = ProblemSpec::new(l.clone(), g.clone(), kmax, Some(result.normal_field.clone())).unwrap();
    let rerun = normal_form(&again).unwrap();
    let idempotent = rerun.normal_field == result.normal_field
        && rerun.steps.iter().all(|s| s.xi_k.is_zero())
        && rerun.coordinate_change == id;

    result.pass()
        && recovered
        && result.normal_field == normal
        && witness
        && change
        && idempotent
        && planted.iter().any(|(_, q)| !q.is_zero())
}

fn criterion_8() -> bool {
    planted(&resonant(1, 1), &phi_group(), 1)
        && planted(&resonant(1, 2), &phi_group(), 2)
        && planted(&resonant(1, 2), &pair_group([-1, -1, -1]), 3)
}

/// Closure of integer matrices under multiplication, by brute force.
fn brute_force_order(gens: &[[[i64; 2]; 2]]) -> usize {
    let mul = |a: &[[i64; 2]; 2], b: &[[i64; 2]; 2]| {
        let mut c = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                c[i][j] = (0..2).map(|t| a[i][t] * b[t][j]).sum();
            }
        }
        c
    };
    let mut seen: HashSet<[[i64; 2]; 2]> = HashSet::from([[[1, 0], [0, 1]]]);
    loop {
        let next: Vec<_> = seen
            .iter()
            .flat_map(|a| gens.iter().map(move |g| mul(a, g)))
            .filter(|m| !seen.contains(m))
            .collect();
        if next.is_empty() {
            return seen.len();
        }
        seen.extend(next);
    }
}

fn criterion_9() -> bool {
    let k1 = [[0, 1], [1, 0]];
    let k2 = [[1, 0], [0, -1]];
    let el = |m: [[i64; 2]; 2]| {
        SignedElement::new(Matrix::from_integers(&[m[0].to_vec(), m[1].to_vec()]), 1).unwrap()
    };
    let kappa = close_group(&[el(k1), el(k2)], 16).unwrap();
    let order_ok = kappa.order() == 8 && brute_force_order(&[k1, k2]) == 8;

    let rotation = LinearPart::from_matrix(Matrix::from_integers(&[vec![0, -1], vec![1, 0]]));
    let rotation_fails = !validate_compatibility(&rotation, &close_group(&[el(k2)], 4).unwrap()).pass();

    let signs = [-1i64, 1];
    let all_patterns = signs.iter().all(|&a0| {
        signs.iter().all(|&a1| {
            signs.iter().all(|&a2| {
                [(1, 1), (1, 2)]
                    .into_iter()
                    .all(|(n1, n2)| validate_compatibility(&resonant(n1, n2), &pair_group([a0, a1, a2])).pass())
            })
        })
    });
    let phi_passes = [(1, 1), (1, 2)]
        .into_iter()
        .all(|(n1, n2)| validate_compatibility(&resonant(n1, n2), &phi_group()).pass());
    order_ok && rotation_fails && phi_passes && all_patterns
}

fn main() {
    type Criterion = (&'static str, fn() -> bool);
    let criteria: [Criterion; 9] = [
        ("nilpotent-block kernel", criterion_1),
        ("Elphick decomposition", criterion_2),
        ("complement split", criterion_3),
        ("golden complements for Z2", criterion_4),
        ("golden complements for Z2xZ2 types", criterion_5),
        ("Hilbert basis of the invariant ring", criterion_6),
        ("randomized identities", criterion_7),
        ("planted normalization", criterion_8),
        ("group closure and compatibility", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(run)).unwrap_or(false);
        let status = if ok { "PASS" } else { "FAIL" };
        println!("criterion {}: {status} ({name}, {:.2?})", i + 1, start.elapsed());
        if !ok {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

use proptest::prelude::*;

use revnf::group::{act_star, close_group, project_pi, FiniteSignedGroup};
use revnf::homological::{ad, build_resonant_l, LinearPart, ResonanceMode};
use revnf::normalform::golden::{phi, psi};
use revnf::normalform::{normalize_step_with, reversibility_failure, StepSpaces};
use revnf::poly::{
    agree_through, compose_truncated, format_coef, frac, invert_near_identity, jacobian_times,
    to_coords, Monomial, ScalarPoly, SliceBasis, VecPoly,
};
use revnf::spaces::{rev_equivariants_deg, GradedSubspace, SliceKind};
use revnf::Coef;

fn coef() -> impl Strategy<Value = Coef> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

fn scalar(n: usize, degs: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = ScalarPoly> {
    let exps = proptest::collection::vec(0u32..=*degs.end(), n);
    proptest::collection::vec((exps, coef()), 0..4).prop_map(move |terms| {
        let lo = *degs.start() as usize;
        let hi = *degs.end() as usize;
        ScalarPoly::from_terms(
            n,
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::new(e), c))
                .filter(|(m, _)| (lo..=hi).contains(&m.degree())),
        )
    })
}

fn vector(n: usize, degs: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = VecPoly> {
    proptest::collection::vec(scalar(n, degs), n)
        .prop_map(|cs| VecPoly::from_components(cs).expect("n components"))
}

fn homogeneous(n: usize, k: usize) -> impl Strategy<Value = VecPoly> {
    vector(n, k as u32..=k as u32).prop_map(move |p| p.homogeneous_part(k))
}

fn resonant() -> LinearPart {
    build_resonant_l(1, 1, ResonanceMode::Resonant, 0).unwrap()
}

fn groups() -> Vec<FiniteSignedGroup> {
    vec![
        close_group(&[phi()], 8).unwrap(),
        close_group(&[phi(), psi([-1, -1, 1]).unwrap()], 8).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inverse_of_near_identity_map(q in vector(3, 2..=3)) {
        let kmax = 5;
        let phi = &VecPoly::identity(3) + &q;
        let inv = invert_near_identity(&phi, kmax).unwrap();
        let id = VecPoly::identity(3);
        prop_assert!(agree_through(&compose_truncated(&phi, &inv, kmax).unwrap(), &id, kmax));
        prop_assert!(agree_through(&compose_truncated(&inv, &phi, kmax).unwrap(), &id, kmax));
    }

    #[test]
    fn composition_is_associative(
        a in vector(2, 1..=2),
        b in vector(2, 2..=2),
        c in vector(2, 2..=3),
    ) {
        let kmax = 4;
        let b = &VecPoly::identity(2) + &b;
        let c = &VecPoly::identity(2) + &c;
        let left = compose_truncated(&compose_truncated(&a, &b, kmax).unwrap(), &c, kmax).unwrap();
        let right = compose_truncated(&a, &compose_truncated(&b, &c, kmax).unwrap(), kmax).unwrap();
        prop_assert!(agree_through(&left, &right, kmax));
    }

    #[test]
    fn ad_is_linear(p in homogeneous(6, 2), q in homogeneous(6, 2), c in coef()) {
        let l = resonant();
        let lhs = ad(l.matrix(), &(&p + &q.scale(&c)));
        let rhs = &ad(l.matrix(), &p) + &ad(l.matrix(), &q).scale(&c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pi_is_a_projection_onto_reversible_equivariants(p in homogeneous(6, 2), which in 0usize..2) {
        let g = &groups()[which];
        let once = project_pi(g, &p).unwrap();
        prop_assert_eq!(project_pi(g, &once).unwrap(), once.clone());
        let rev = rev_equivariants_deg(g, 2);
        prop_assert!(rev.contains_map(&once).unwrap());
        for e in g.elements() {
            let moved = act_star(e, &once).unwrap();
            prop_assert_eq!(moved.scale(&e.sign_coef()), once.clone());
        }
    }

    #[test]
    fn spans_are_canonical(
        ps in proptest::collection::vec(homogeneous(2, 3), 1..5),
        scales in proptest::collection::vec(1i64..5, 5),
    ) {
        let sb = SliceBasis::new(2, 3);
        let coords: Vec<_> = ps.iter().map(|p| to_coords(p, &sb).unwrap()).collect();
        let a = GradedSubspace::from_vectors(SliceKind::Vector, 2, 3, &coords);
        let mut mixed: Vec<_> = coords
            .iter()
            .zip(&scales)
            .map(|(v, s)| v.scale(&frac(*s, 1)))
            .collect();
        mixed.reverse();
        if mixed.len() > 1 {
            let extra = mixed[0].add(&mixed[1]);
            mixed.push(extra);
        }
        let b = GradedSubspace::from_vectors(SliceKind::Vector, 2, 3, &mixed);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn normalization_step_satisfies_the_witness(
        p2 in homogeneous(6, 2),
        p3 in homogeneous(6, 3),
        which in 0usize..2,
    ) {
        let l = resonant();
        let g = &groups()[which];
        let kmax = 3;
        let field = &(&VecPoly::linear(l.matrix()) + &project_pi(g, &p2).unwrap())
            + &project_pi(g, &p3).unwrap();
        prop_assert!(reversibility_failure(g, &field, kmax).unwrap().is_none());
        let spaces = StepSpaces::compute(&l, g, 2).unwrap();
        let (step, new) = normalize_step_with(&field, &l, g, &spaces, kmax).unwrap();
        prop_assert!(step.pass());
        prop_assert!(spaces.complement.contains_map(&step.g_k).unwrap());
        prop_assert_eq!(new.homogeneous_part(2), step.g_k.clone());
        let phi = &VecPoly::identity(6) + &step.xi_k;
        prop_assert!(agree_through(
            &jacobian_times(&phi, &new),
            &compose_truncated(&field, &phi, kmax).unwrap(),
            kmax,
        ));
    }

    #[test]
    fn coefficients_round_trip(c in coef()) {
        prop_assert_eq!(revnf::poly::parse_coef(&format_coef(&c)).unwrap(), c);
    }
}

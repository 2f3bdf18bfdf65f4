//! Vectorization of homogeneous polynomials against the ordered slice basis.
//!
//! Scalar slices use the monomial basis directly. Vector slices use
//! `e_i ⊗ m`, component-major: coordinate `i * M + idx(m)` where `M` is the
//! number of degree-`k` monomials.

use super::{ScalarPoly, SliceBasis, VecPoly};
use crate::error::{Error, Result};
use crate::linalg::SparseVector;

pub fn scalar_to_coords(p: &ScalarPoly, basis: &SliceBasis) -> Result<SparseVector> {
    if !p.is_homogeneous(basis.degree()) {
        return Err(Error::NotHomogeneous {
            degree: basis.degree(),
        });
    }
    Ok(SparseVector::from_pairs(p.terms().map(|(m, c)| {
        (basis.position(m).expect("homogeneous monomial is in the slice"), c.clone())
    })))
}

pub fn scalar_from_coords(v: &SparseVector, basis: &SliceBasis) -> ScalarPoly {
    ScalarPoly::from_terms(
        basis.nvars(),
        v.entries()
            .iter()
            .map(|(i, c)| (basis.monomial(*i).clone(), c.clone())),
    )
}

pub fn to_coords(p: &VecPoly, basis: &SliceBasis) -> Result<SparseVector> {
    if p.dim() != basis.nvars() {
        return Err(Error::DimensionMismatch {
            expected: basis.nvars(),
            found: p.dim(),
        });
    }
    if !p.is_homogeneous(basis.degree()) {
        return Err(Error::NotHomogeneous {
            degree: basis.degree(),
        });
    }
    let m = basis.len();
    Ok(SparseVector::from_pairs(p.components().iter().enumerate().flat_map(
        |(i, comp)| {
            comp.terms().map(move |(mono, c)| {
                (
                    i * m + basis.position(mono).expect("homogeneous monomial is in the slice"),
                    c.clone(),
                )
            })
        },
    )))
}

pub fn from_coords(v: &SparseVector, basis: &SliceBasis) -> VecPoly {
    let n = basis.nvars();
    let m = basis.len();
    let mut comps = vec![ScalarPoly::zero(n); n];
    for (idx, c) in v.entries() {
        comps[idx / m].add_term(basis.monomial(idx % m).clone(), c.clone());
    }
    VecPoly::from_components(comps).expect("components share the variable count")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Coef;

    #[test]
    fn zero_map_is_zero_column() {
        let b = SliceBasis::new(2, 3);
        assert!(to_coords(&VecPoly::zero(2), &b).unwrap().is_zero());
    }

    #[test]
    fn basis_vector_slot() {
        let b = SliceBasis::new(2, 1);
        let p = VecPoly::single(2, 0, ScalarPoly::var(2, 1));
        // component 1, monomial x2 -> slot 0 * 2 + 1
        assert_eq!(to_coords(&p, &b).unwrap(), SparseVector::unit(1));
    }

    #[test]
    fn non_homogeneous_rejected() {
        let b = SliceBasis::new(2, 1);
        let p = VecPoly::single(2, 0, &ScalarPoly::var(2, 1) + &ScalarPoly::one(2));
        assert_eq!(to_coords(&p, &b), Err(Error::NotHomogeneous { degree: 1 }));
    }

    #[test]
    fn roundtrip_degree_three() {
        let b = SliceBasis::new(3, 3);
        let v = SparseVector::from_pairs(
            (0..3 * b.len())
                .step_by(4)
                .map(|i| (i, Coef::new((i as i64 - 7).into(), 3.into()))),
        );
        let p = from_coords(&v, &b);
        assert_eq!(to_coords(&p, &b).unwrap(), v);
    }
}

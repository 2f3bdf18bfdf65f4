//! Truncated composition and inversion of formal maps.

use std::collections::HashMap;

use super::{ScalarPoly, VecPoly};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

struct PowerCache<'a> {
    q: &'a VecPoly,
    kmax: usize,
    powers: HashMap<(usize, u32), ScalarPoly>,
}

impl<'a> PowerCache<'a> {
    fn new(q: &'a VecPoly, kmax: usize) -> Self {
        Self {
            q,
            kmax,
            powers: HashMap::new(),
        }
    }

    fn power(&mut self, j: usize, e: u32) -> ScalarPoly {
        if e == 0 {
            return ScalarPoly::one(self.q.dim());
        }
        if let Some(p) = self.powers.get(&(j, e)) {
            return p.clone();
        }
        let prev = self.power(j, e - 1);
        let p = prev.mul_truncated(self.q.component(j), self.kmax);
        self.powers.insert((j, e), p.clone());
        p
    }

    fn compose(&mut self, f: &ScalarPoly) -> ScalarPoly {
        let n = self.q.dim();
        let mut out = ScalarPoly::zero(n);
        for (m, c) in f.terms() {
            // q has no constant term, so a degree-d monomial only produces
            // terms of degree ≥ d.
            if m.degree() > self.kmax {
                break;
            }
            let mut term = ScalarPoly::constant(n, c.clone());
            for (j, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let pw = self.power(j, e);
                    term = term.mul_truncated(&pw, self.kmax);
                }
            }
            out = &out + &term;
        }
        out
    }
}

fn check_no_constant(q: &VecPoly) -> Result<()> {
    if q.low_degree() == Some(0) {
        return Err(Error::ConstantTerm);
    }
    Ok(())
}

/// `f ∘ q` with every term of degree above `kmax` dropped. `q` must vanish
/// at the origin.
pub fn compose_scalar_truncated(f: &ScalarPoly, q: &VecPoly, kmax: usize) -> Result<ScalarPoly> {
    check_no_constant(q)?;
    if f.nvars() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: q.dim(),
            found: f.nvars(),
        });
    }
    Ok(PowerCache::new(q, kmax).compose(f))
}

/// `p ∘ q` truncated at degree `kmax`. `q` must vanish at the origin.
pub fn compose_truncated(p: &VecPoly, q: &VecPoly, kmax: usize) -> Result<VecPoly> {
    check_no_constant(q)?;
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: q.dim(),
            found: p.dim(),
        });
    }
    let mut cache = PowerCache::new(q, kmax);
    let comps = p
        .components()
        .iter()
        .map(|c| cache.compose(c))
        .collect();
    VecPoly::from_components(comps)
}

/// Truncated inverse of a near-identity map `φ = I + (terms of degree ≥ 2)`:
/// returns `ψ` with `φ ∘ ψ = I` through degree `kmax`, built one degree at a
/// time by cancelling the lowest-order defect.
pub fn invert_near_identity(phi: &VecPoly, kmax: usize) -> Result<VecPoly> {
    let n = phi.dim();
    if phi.low_degree() == Some(0) {
        return Err(Error::NotNearIdentity);
    }
    if phi.linear_part() != Matrix::identity(n) {
        return Err(Error::NotNearIdentity);
    }
    let id = VecPoly::identity(n);
    let mut psi = id.clone();
    for d in 2..=kmax {
        let defect = (&compose_truncated(phi, &psi, d)? - &id).homogeneous_part(d);
        if !defect.is_zero() {
            psi = &psi - &defect;
        }
    }
    Ok(psi)
}

/// Whether two maps agree on every degree up to `kmax`.
pub fn agree_through(a: &VecPoly, b: &VecPoly, kmax: usize) -> bool {
    (a - b).truncate(kmax).is_zero()
}

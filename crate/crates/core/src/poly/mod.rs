//! Exact graded multivariate polynomials over ℚ and polynomial self-maps.

mod compose;
mod coords;
mod monomial;
mod scalar;
mod vector;

pub use compose::{agree_through, compose_scalar_truncated, compose_truncated, invert_near_identity};
pub use coords::{from_coords, scalar_from_coords, scalar_to_coords, to_coords};
pub use monomial::{monomial_basis, Monomial, SliceBasis};
pub use scalar::ScalarPoly;
pub use vector::{jacobian_times, postcompose_linear, VecPoly};

use crate::error::{Error, Result};
use crate::Coef;

/// Parses `"p/q"`, `"p"` or `"-p/q"`; the result is reduced.
pub fn parse_coef(s: &str) -> Result<Coef> {
    let t = s.trim();
    let parsed: std::result::Result<Coef, _> = t.parse();
    match parsed {
        Ok(c) => Ok(c),
        Err(_) => Err(Error::Coefficient(s.to_string())),
    }
}

/// Always renders as `"p/q"`, including integers (`"3/1"`).
pub fn format_coef(c: &Coef) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Shorthand for an integer coefficient.
pub fn int(n: i64) -> Coef {
    Coef::from_integer(n.into())
}

/// Shorthand for the fraction `p/q`.
pub fn frac(p: i64, q: i64) -> Coef {
    Coef::new(p.into(), q.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_syntax() {
        assert_eq!(parse_coef("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse_coef("-2").unwrap(), int(-2));
        assert!(parse_coef("0.5").is_err());
        assert!(parse_coef("1/0").is_err());
        assert_eq!(format_coef(&int(3)), "3/1");
        assert_eq!(format_coef(&frac(-6, 4)), "-3/2");
    }
}

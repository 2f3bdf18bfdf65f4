use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Exponent vector of a monomial `x_1^{e_1} ⋯ x_n^{e_n}`.
///
/// Monomials are ordered graded-lexicographically: lower total degree
/// first, and within a degree the larger power of `x_1` first (then `x_2`,
/// and so on). With two variables the degree-2 monomials therefore come out
/// as `x_1^2, x_1 x_2, x_2^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    pub fn one(n: usize) -> Self {
        Self {
            exponents: vec![0; n],
        }
    }

    /// The variable `x_i` (zero-based index).
    pub fn var(n: usize, i: usize) -> Self {
        let mut exponents = vec![0; n];
        exponents[i] = 1;
        Self { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> usize {
        self.exponents.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Extends to a larger ambient space, placing the local variables at
    /// the global positions listed in `block`.
    pub fn embed(&self, n: usize, block: &[usize]) -> Monomial {
        let mut exponents = vec![0; n];
        for (local, &global) in block.iter().enumerate() {
            exponents[global] = self.exponents[local];
        }
        Monomial { exponents }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            // larger leading exponents sort first
            other.exponents.cmp(&self.exponents)
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of total degree exactly `k` in `n` variables, in the global
/// ordering. There are `C(n + k - 1, k)` of them.
pub fn monomial_basis(n: usize, k: usize) -> Vec<Monomial> {
    assert!(n >= 1, "need at least one variable");
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    fill(&mut current, 0, k as u32, &mut out);
    out
}

// Emits exponent vectors with the earliest variables taking the largest
// powers first, which is exactly ascending order within a degree.
fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    let n = current.len();
    if pos == n - 1 {
        current[pos] = remaining;
        out.push(Monomial::new(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

/// The ordered monomial basis of one graded slice together with a reverse
/// index, used to vectorize homogeneous polynomials.
#[derive(Clone, Debug)]
pub struct SliceBasis {
    n: usize,
    k: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl SliceBasis {
    pub fn new(n: usize, k: usize) -> Self {
        let monomials = monomial_basis(n, k);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self {
            n,
            k,
            monomials,
            index,
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: u64, k: u64) -> u64 {
        (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
    }

    #[test]
    fn constant_slice() {
        assert_eq!(monomial_basis(2, 0), vec![Monomial::one(2)]);
    }

    #[test]
    fn quadratic_slice_order() {
        let b = monomial_basis(2, 2);
        let expected: Vec<Monomial> = [[2, 0], [1, 1], [0, 2]]
            .iter()
            .map(|e| Monomial::new(e.to_vec()))
            .collect();
        assert_eq!(b, expected);
    }

    #[test]
    fn slice_sizes_match_stars_and_bars() {
        assert_eq!(monomial_basis(6, 5).len(), 252);
        for n in 1..5 {
            for k in 0..6 {
                assert_eq!(
                    monomial_basis(n, k).len() as u64,
                    binomial((n + k - 1) as u64, k as u64)
                );
            }
        }
    }

    #[test]
    fn basis_is_sorted() {
        let b = monomial_basis(3, 3);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        assert!(Monomial::one(3) < b[0]);
    }
}

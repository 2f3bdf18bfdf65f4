//! Exact sparse linear algebra over the rationals.
//!
//! Every matrix the engine meets (homological operators, fixed-space
//! constraints, stacked subspace bases) is very sparse and splits into many
//! small blocks once coordinates that never interact are separated. The
//! routines here find those blocks with a union-find pass over the support
//! and run dense fraction-free elimination on each block independently.
//!
//! Subspaces are always reported in canonical reduced echelon form: the pivot
//! of a basis vector is its lowest nonzero coordinate, it carries the
//! coefficient one, every other basis vector vanishes there, and vectors are
//! sorted by pivot. Two equal subspaces therefore have identical bases.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, Integer, One, Zero};
use rayon::prelude::*;

use crate::Coef;

/// A sparse vector with entries sorted by index and no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVector {
    entries: Vec<(usize, Coef)>,
}

impl SparseVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Unit vector at `index`.
    pub fn unit(index: usize) -> Self {
        Self {
            entries: vec![(index, Coef::one())],
        }
    }

    /// Builds a vector from arbitrary `(index, value)` pairs, summing repeats
    /// and dropping zeros.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Coef)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<usize, Coef> = BTreeMap::new();
        for (i, c) in pairs {
            *acc.entry(i).or_insert_with(Coef::zero) += c;
        }
        Self {
            entries: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn from_dense(values: &[Coef]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Coef> {
        let mut out = vec![Coef::zero(); len];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Coef)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Lowest index with a nonzero entry.
    pub fn pivot(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn get(&self, index: usize) -> Coef {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Coef::zero(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, factor: &Coef) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            entries: self
                .entries
                .iter()
                .map(|(i, c)| (*i, c * factor))
                .collect(),
        }
    }

    /// Returns `self + factor * other`.
    pub fn add_scaled(&self, factor: &Coef, other: &SparseVector) -> Self {
        if factor.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|e| e.0);
            let ib = other.entries.get(b).map(|e| e.0);
            match (ia, ib) {
                (Some(x), Some(y)) if x == y => {
                    let v = &self.entries[a].1 + factor * &other.entries[b].1;
                    if !v.is_zero() {
                        out.push((x, v));
                    }
                    a += 1;
                    b += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push(self.entries[a].clone());
                    a += 1;
                }
                (Some(x), None) => {
                    out.push((x, self.entries[a].1.clone()));
                    a += 1;
                }
                (_, Some(y)) => {
                    out.push((y, factor * &other.entries[b].1));
                    b += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &SparseVector) -> Self {
        self.add_scaled(&Coef::one(), other)
    }

    pub fn sub(&self, other: &SparseVector) -> Self {
        self.add_scaled(&-Coef::one(), other)
    }

    /// Relabels indices with `map`. The map must be strictly increasing on
    /// the support for the result to stay sorted; otherwise entries are
    /// re-sorted.
    pub fn remap(&self, map: impl Fn(usize) -> usize) -> Self {
        Self::from_pairs(self.entries.iter().map(|(i, c)| (map(*i), c.clone())))
    }
}

/// Linear combination `Σ coeffs[j] * vectors[j]`.
pub fn combine(vectors: &[SparseVector], coeffs: &SparseVector) -> SparseVector {
    SparseVector::from_pairs(
        coeffs
            .entries()
            .iter()
            .flat_map(|(j, a)| vectors[*j].entries().iter().map(move |(i, c)| (*i, c * a))),
    )
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Groups items whose supports overlap. `supports[j]` lists the coordinates
/// touched by item `j`. Returns the groups in order of their smallest item.
fn group_by_support(supports: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(supports.len());
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (j, support) in supports.iter().enumerate() {
        for &coord in support {
            match owner.get(&coord) {
                Some(&other) => uf.union(j, other),
                None => {
                    owner.insert(coord, j);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for j in 0..supports.len() {
        let root = uf.find(j);
        groups.entry(root).or_default().push(j);
    }
    groups.into_values().collect()
}

fn primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        if !v.is_zero() {
            *v /= &g;
        }
    }
}

fn integer_row(row: &[Coef]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in row {
        if !c.is_zero() {
            lcm = lcm.lcm(c.denom());
        }
    }
    row.iter()
        .map(|c| {
            if c.is_zero() {
                BigInt::zero()
            } else {
                c.numer() * (&lcm / c.denom())
            }
        })
        .collect()
}

/// Dense reduced row echelon form, computed fraction-free: rows are kept as
/// primitive integer vectors during elimination and divided by their pivots
/// only at the end. Pivot choice is the first row (in input order) with a
/// nonzero entry in the current column. Returns the nonzero reduced rows and
/// their pivot columns.
pub fn dense_rref(rows: &[Vec<Coef>], ncols: usize) -> (Vec<Vec<Coef>>, Vec<usize>) {
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    for row in a.iter_mut() {
        primitive(row);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(found) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, found);
        let pivot_row = a[r].clone();
        let p = pivot_row[c].clone();
        for (j, row) in a.iter_mut().enumerate() {
            if j == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                if y.is_zero() {
                    *x *= &p;
                } else {
                    *x = &*x * &p - &f * y;
                }
            }
            primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    let reduced = a
        .into_iter()
        .take(r)
        .zip(pivots.iter())
        .map(|(row, &pc)| {
            let d = row[pc].clone();
            row.into_iter()
                .map(|v| BigRational::new(v, d.clone()))
                .collect()
        })
        .collect();
    (reduced, pivots)
}

/// Canonical reduced echelon basis of the span of `vectors`.
pub fn rref_span(vectors: &[SparseVector]) -> Vec<SparseVector> {
    let vectors: Vec<&SparseVector> = vectors.iter().filter(|v| !v.is_zero()).collect();
    let supports: Vec<Vec<usize>> = vectors
        .iter()
        .map(|v| v.entries().iter().map(|(i, _)| *i).collect())
        .collect();
    let groups = group_by_support(&supports);
    let mut out: Vec<SparseVector> = groups
        .par_iter()
        .flat_map_iter(|group| {
            let mut coords: Vec<usize> = group
                .iter()
                .flat_map(|&j| supports[j].iter().copied())
                .collect();
            coords.sort_unstable();
            coords.dedup();
            let local: BTreeMap<usize, usize> =
                coords.iter().enumerate().map(|(l, &g)| (g, l)).collect();
            let rows: Vec<Vec<Coef>> = group
                .iter()
                .map(|&j| {
                    let mut row = vec![Coef::zero(); coords.len()];
                    for (i, c) in vectors[j].entries() {
                        row[local[i]] = c.clone();
                    }
                    row
                })
                .collect();
            let (reduced, _) = dense_rref(&rows, coords.len());
            reduced
                .into_iter()
                .map(|row| {
                    SparseVector::from_pairs(
                        row.into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(l, c)| (coords[l], c)),
                    )
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_by_key(|v| v.pivot());
    out
}

/// Column indices, row indices and the dense local matrix of one block.
type Block = (Vec<usize>, Vec<usize>, Vec<Vec<Coef>>);

/// Block decomposition of a column-given matrix: for each group of columns
/// that share rows, the sorted column indices, the sorted row indices and
/// the dense local matrix (rows × columns).
fn column_blocks(columns: &[SparseVector]) -> Vec<Block> {
    let supports: Vec<Vec<usize>> = columns
        .iter()
        .map(|v| v.entries().iter().map(|(i, _)| *i).collect())
        .collect();
    group_by_support(&supports)
        .into_iter()
        .map(|cols| {
            let mut rows: Vec<usize> = cols
                .iter()
                .flat_map(|&j| supports[j].iter().copied())
                .collect();
            rows.sort_unstable();
            rows.dedup();
            let local: BTreeMap<usize, usize> =
                rows.iter().enumerate().map(|(l, &g)| (g, l)).collect();
            let mut dense = vec![vec![Coef::zero(); cols.len()]; rows.len()];
            for (lc, &j) in cols.iter().enumerate() {
                for (i, c) in columns[j].entries() {
                    dense[local[i]][lc] = c.clone();
                }
            }
            (cols, rows, dense)
        })
        .collect()
}

/// Canonical basis of `{a : Σ_j a_j columns[j] = 0}`, as vectors indexed by
/// column.
pub fn nullspace(columns: &[SparseVector]) -> Vec<SparseVector> {
    let blocks = column_blocks(columns);
    let kernel: Vec<SparseVector> = blocks
        .par_iter()
        .flat_map_iter(|(cols, _rows, dense)| {
            let (reduced, pivots) = dense_rref(dense, cols.len());
            let mut is_pivot = vec![false; cols.len()];
            for &p in &pivots {
                is_pivot[p] = true;
            }
            (0..cols.len())
                .filter(|&f| !is_pivot[f])
                .map(|f| {
                    let mut pairs = vec![(cols[f], Coef::one())];
                    for (row, &p) in reduced.iter().zip(pivots.iter()) {
                        if !row[f].is_zero() {
                            pairs.push((cols[p], -row[f].clone()));
                        }
                    }
                    SparseVector::from_pairs(pairs)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    rref_span(&kernel)
}

/// Rank of a column-given matrix.
pub fn rank(columns: &[SparseVector]) -> usize {
    rref_span(columns).len()
}

/// Solves `Σ_j x_j columns[j] = rhs`. Among all solutions returns the one
/// whose free variables (non-pivot columns of the reduced system, pivots
/// chosen first-nonzero in column order) are zero. `None` if inconsistent.
pub fn solve(columns: &[SparseVector], rhs: &SparseVector) -> Option<SparseVector> {
    let mut augmented: Vec<SparseVector> = columns.to_vec();
    augmented.push(rhs.clone());
    let rhs_col = columns.len();
    let blocks = column_blocks(&augmented);
    let mut solution = Vec::new();
    for (cols, _rows, dense) in &blocks {
        let Some(rhs_local) = cols.iter().position(|&c| c == rhs_col) else {
            continue;
        };
        // rhs is the last column of this block because it has the largest index.
        debug_assert_eq!(rhs_local, cols.len() - 1);
        let (reduced, pivots) = dense_rref(dense, cols.len());
        if pivots.contains(&rhs_local) {
            return None;
        }
        for (row, &p) in reduced.iter().zip(pivots.iter()) {
            if !row[rhs_local].is_zero() {
                solution.push((cols[p], row[rhs_local].clone()));
            }
        }
    }
    Some(SparseVector::from_pairs(solution))
}

/// Remainder of `v` after reduction by a canonical echelon basis.
pub fn reduce(v: &SparseVector, basis: &[SparseVector]) -> SparseVector {
    let mut r = v.clone();
    for b in basis {
        let p = b.pivot().expect("echelon basis vectors are nonzero");
        let c = r.get(p);
        if !c.is_zero() {
            r = r.add_scaled(&-c, b);
        }
    }
    r
}

/// Whether `v` lies in the span of a canonical echelon basis.
pub fn in_span(v: &SparseVector, basis: &[SparseVector]) -> bool {
    reduce(v, basis).is_zero()
}

/// Canonical basis of the intersection of two spans given by canonical
/// echelon bases.
pub fn intersect(a: &[SparseVector], b: &[SparseVector]) -> Vec<SparseVector> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut columns: Vec<SparseVector> = a.to_vec();
    columns.extend(b.iter().map(|v| v.scale(&-Coef::one())));
    let kernel = nullspace(&columns);
    let vectors: Vec<SparseVector> = kernel
        .iter()
        .map(|k| {
            let alpha = SparseVector::from_pairs(
                k.entries()
                    .iter()
                    .filter(|(j, _)| *j < a.len())
                    .map(|(j, c)| (*j, c.clone())),
            );
            combine(a, &alpha)
        })
        .collect();
    rref_span(&vectors)
}

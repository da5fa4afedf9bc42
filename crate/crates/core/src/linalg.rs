//! Exact rational linear algebra.
//!
//! Small systems (structure-constant transforms, derivation matrices) use a
//! dense [`RatMatrix`] with plain rational row reduction. The large kernels
//! (Leibniz systems, Chevalley-Eilenberg differentials) go through
//! [`SparseIntMatrix`], a fraction-free elimination over integers with
//! per-row gcd normalization to keep intermediate entries small.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses a rational literal `p` or `p/q` with decimal integers.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| Error::BadRational(s.to_string()))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        RatMatrix {
            nrows,
            ncols,
            data: vec![BigRational::zero(); nrows * ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    got: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(RatMatrix { nrows, ncols, data })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigRational]> {
        self.data.chunks(self.ncols.max(1))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &RatMatrix,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Result<RatMatrix> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.nrows * self.ncols,
                got: other.nrows * other.ncols,
            });
        }
        Ok(RatMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> RatMatrix {
        RatMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn matmul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                got: other.nrows,
            });
        }
        let mut out = RatMatrix::zero(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + a * b;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                got: v.len(),
            });
        }
        let mut out = vec![BigRational::zero(); self.nrows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        Ok(out)
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.ncols {
            if row == self.nrows {
                break;
            }
            let pivot_row = (row..self.nrows).find(|&r| !self.get(r, col).is_zero());
            let Some(pr) = pivot_row else { continue };
            self.swap_rows(row, pr);
            let inv = self.get(row, col).clone();
            for j in col..self.ncols {
                let v = self.get(row, j) / &inv;
                self.set(row, j, v);
            }
            for r in 0..self.nrows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for j in col..self.ncols {
                    let v = self.get(r, j) - &factor * self.get(row, j);
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.ncols {
            self.data.swap(a * self.ncols + j, b * self.ncols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Exact nullspace via dense rational elimination.
    pub fn kernel(&self) -> Subspace {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![BigRational::zero(); self.ncols];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m.get(r, f).clone();
            }
            basis.push(v);
        }
        Subspace::new(self.ncols, basis)
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        if self.nrows != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.nrows,
                got: self.ncols,
            });
        }
        let n = self.nrows;
        let mut aug = RatMatrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, BigRational::one());
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(k, &p)| p != k) {
            return Err(Error::SingularMatrix);
        }
        let mut inv = RatMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = RatMatrix::zero(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }
}

/// A linear subspace of `Q^n` held in canonical form: the basis matrix is in
/// reduced row echelon form, so two subspaces are equal iff the structs are.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: RatMatrix,
}

impl Subspace {
    pub fn new(ambient: usize, rows: Vec<Vec<BigRational>>) -> Subspace {
        let mut m = if rows.is_empty() {
            RatMatrix::zero(0, ambient)
        } else {
            RatMatrix::from_rows(rows).expect("ragged basis rows")
        };
        assert_eq!(m.ncols, ambient, "basis vectors have wrong length");
        let pivots = m.rref();
        let dim = pivots.len();
        let mut basis = RatMatrix::zero(dim, ambient);
        for i in 0..dim {
            for j in 0..ambient {
                basis.set(i, j, m.get(i, j).clone());
            }
        }
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace::new(ambient, Vec::new())
    }

    pub fn whole(ambient: usize) -> Subspace {
        Subspace::coordinate_span(ambient, 0..ambient)
    }

    /// Span of a set of standard basis vectors.
    pub fn coordinate_span(ambient: usize, coords: impl IntoIterator<Item = usize>) -> Subspace {
        let rows = coords
            .into_iter()
            .map(|i| {
                let mut v = vec![BigRational::zero(); ambient];
                v[i] = BigRational::one();
                v
            })
            .collect();
        Subspace::new(ambient, rows)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut v = v.to_vec();
        for row in self.basis.rows() {
            let lead = match row.iter().position(|x| !x.is_zero()) {
                Some(c) => c,
                None => continue,
            };
            if !v[lead].is_zero() {
                let factor = v[lead].clone() / row[lead].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &factor * r;
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.rows().all(|r| self.contains(r))
    }

    /// Sum of two subspaces of the same ambient space.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let rows = self
            .basis
            .rows()
            .chain(other.basis.rows())
            .map(|r| r.to_vec())
            .collect();
        Subspace::new(self.ambient, rows)
    }

    /// `dim(self ∩ other)` via the dimension formula.
    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }
}

/// A sparse matrix over the integers, one sorted `(col, value)` row at a
/// time, for fraction-free rank and kernel computations.
#[derive(Clone, Debug)]
pub struct SparseIntMatrix {
    ncols: usize,
    rows: Vec<Vec<(usize, BigInt)>>,
}

impl SparseIntMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseIntMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<(usize, BigInt)>] {
        &self.rows
    }

    /// Adds a row given as unsorted `(col, value)` entries; duplicates are
    /// summed and zeros dropped. Rows that vanish entirely are not stored.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, BigInt)>) {
        let mut map: std::collections::BTreeMap<usize, BigInt> = std::collections::BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.ncols, "column index out of range");
            let e = map.entry(c).or_insert_with(BigInt::zero);
            *e += v;
        }
        let row: Vec<(usize, BigInt)> = map.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    /// Adds a rational row after clearing denominators.
    pub fn push_rational_row(&mut self, entries: impl IntoIterator<Item = (usize, BigRational)>) {
        let entries: Vec<(usize, BigRational)> =
            entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let mut lcm = BigInt::one();
        for (_, v) in &entries {
            lcm = lcm.lcm(v.denom());
        }
        self.push_row(
            entries
                .into_iter()
                .map(|(c, v)| (c, (v * BigRational::from_integer(lcm.clone())).to_integer())),
        );
    }

    pub fn to_rat_matrix(&self) -> RatMatrix {
        let mut m = RatMatrix::zero(self.rows.len(), self.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                m.set(i, *c, BigRational::from_integer(v.clone()));
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.eliminate().len()
    }

    /// Fraction-free forward elimination: returns pivot rows keyed by their
    /// leading column. Every pivot row only carries entries at columns at or
    /// after its lead.
    fn eliminate(&self) -> std::collections::BTreeMap<usize, Vec<(usize, BigInt)>> {
        let mut pivots: std::collections::BTreeMap<usize, Vec<(usize, BigInt)>> =
            std::collections::BTreeMap::new();
        for row in &self.rows {
            let mut row = normalize_row(row.clone());
            loop {
                let Some(&(lead, _)) = row.first() else { break };
                match pivots.get(&lead) {
                    Some(p) => {
                        row = normalize_row(cross_eliminate(&row, p));
                    }
                    None => {
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
        pivots
    }

    /// Exact nullspace.
    pub fn kernel(&self) -> Subspace {
        let pivots = self.eliminate();
        let pivot_cols: std::collections::BTreeSet<usize> = pivots.keys().copied().collect();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![BigRational::zero(); self.ncols];
            v[f] = BigRational::one();
            for (&lead, row) in pivots.iter().rev() {
                let mut acc = BigRational::zero();
                for (c, coeff) in row.iter().skip(1) {
                    if !v[*c].is_zero() {
                        acc += BigRational::from_integer(coeff.clone()) * &v[*c];
                    }
                }
                if acc.is_zero() {
                    v[lead] = BigRational::zero();
                } else {
                    v[lead] = -acc / BigRational::from_integer(row[0].1.clone());
                }
            }
            basis.push(v);
        }
        Subspace::new(self.ncols, basis)
    }
}

/// Divides a sparse integer row by the gcd of its entries and makes the
/// leading entry positive.
fn normalize_row(mut row: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    row.retain(|(_, v)| !v.is_zero());
    if row.is_empty() {
        return row;
    }
    let mut g = BigInt::zero();
    for (_, v) in &row {
        g = g.gcd(v);
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in &mut row {
            *v = &*v / &g;
        }
    }
    row
}

/// `pivot_lead * row - row_lead * pivot`, eliminating the shared leading
/// column. Both inputs are sorted by column; so is the result.
fn cross_eliminate(row: &[(usize, BigInt)], pivot: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    debug_assert_eq!(row[0].0, pivot[0].0);
    let a = &pivot[0].1;
    let b = &row[0].1;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let mut i = 1;
    let mut j = 1;
    while i < row.len() || j < pivot.len() {
        let next = match (row.get(i), pivot.get(j)) {
            (Some((rc, rv)), Some((pc, pv))) => match rc.cmp(pc) {
                std::cmp::Ordering::Less => {
                    i += 1;
                    (*rc, a * rv)
                }
                std::cmp::Ordering::Greater => {
                    j += 1;
                    (*pc, -(b * pv))
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (*rc, a * rv - b * pv)
                }
            },
            (Some((rc, rv)), None) => {
                i += 1;
                (*rc, a * rv)
            }
            (None, Some((pc, pv))) => {
                j += 1;
                (*pc, -(b * pv))
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert_eq!(m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).kernel().dim(), 0);
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        assert_eq!(m(&[&[0, 0, 0], &[0, 0, 0]]).kernel().dim(), 3);
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = a.kernel();
        assert_eq!(k.dim(), 2);
        for row in k.basis().rows() {
            let img = a.apply(row).unwrap();
            assert!(img.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv).unwrap(), RatMatrix::identity(2));
        assert!(matches!(
            m(&[&[1, 2], &[2, 4]]).inverse(),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn subspace_equality_is_canonical() {
        let a = Subspace::new(
            3,
            vec![
                vec![rat(1), rat(1), rat(0)],
                vec![rat(0), rat(0), rat(1)],
            ],
        );
        let b = Subspace::new(
            3,
            vec![
                vec![rat(2), rat(2), rat(2)],
                vec![rat(0), rat(0), rat(5)],
            ],
        );
        assert_eq!(a, b);
        assert!(a.contains(&[rat(3), rat(3), rat(7)]));
        assert!(!a.contains(&[rat(1), rat(0), rat(0)]));
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3) / rat(4));
        assert_eq!(parse_rational("-2").unwrap(), rat(-2));
        assert_eq!(format_rational(&(rat(1) / rat(2))), "1/2");
        assert_eq!(format_rational(&rat(-7)), "-7");
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn sparse_kernel_matches_dense() {
        let dense = m(&[&[1, 2, 3, 0], &[0, 1, 1, 1], &[1, 3, 4, 1]]);
        let mut sparse = SparseIntMatrix::new(4);
        for row in dense.rows() {
            sparse.push_rational_row(row.iter().cloned().enumerate());
        }
        assert_eq!(sparse.kernel(), dense.kernel());
        assert_eq!(sparse.rank(), dense.rank());
    }

    proptest! {
        // fraction-free elimination agrees with the straightforward
        // rational elimination oracle
        #[test]
        fn sparse_rank_matches_dense_oracle(
            entries in prop::collection::vec((0usize..5, 0usize..6, -4i64..=4), 0..20)
        ) {
            let mut dense = RatMatrix::zero(5, 6);
            for (i, j, v) in &entries {
                let new = dense.get(*i, *j) + rat(*v);
                dense.set(*i, *j, new);
            }
            let mut sparse = SparseIntMatrix::new(6);
            for row in dense.rows() {
                sparse.push_rational_row(row.iter().cloned().enumerate());
            }
            prop_assert_eq!(sparse.rank(), dense.rank());
            prop_assert_eq!(sparse.kernel(), dense.kernel());
        }
    }
}

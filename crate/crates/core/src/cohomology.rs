//! Chevalley-Eilenberg cohomology of small Lie algebras with trivial
//! coefficients.
//!
//! Cochain bases are indexed by subset bitmasks; the differential is
//! `(d w)(v_0..v_k) = sum_{r<s} (-1)^{r+s} w([v_r, v_s], ..no v_r, v_s..)`.
//! Betti numbers come from exact ranks of the sparse differentials:
//! `b_k = C(N, k) - rank d_k - rank d_{k-1}`.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::grading::Grading;
use crate::liealg::StructureConstants;
use crate::linalg::{RatMatrix, SparseIntMatrix};
use crate::{Error, Limits, Result};

/// Dimension cap: ranks at the middle degree stay affordable
/// (`C(14,7) = 3432` columns).
pub const DEFAULT_MAX_DIM: usize = 14;

/// A sparse rational matrix with explicit shape, for the differentials.
#[derive(Clone, Debug)]
pub struct CeMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub entries: Vec<(usize, usize, BigRational)>,
}

impl CeMatrix {
    pub fn rank(&self) -> usize {
        let mut rows: HashMap<usize, Vec<(usize, BigRational)>> = HashMap::new();
        for (r, c, v) in &self.entries {
            rows.entry(*r).or_default().push((*c, v.clone()));
        }
        let mut m = SparseIntMatrix::new(self.ncols);
        let mut keys: Vec<usize> = rows.keys().copied().collect();
        keys.sort_unstable();
        for k in keys {
            m.push_rational_row(rows.remove(&k).unwrap());
        }
        m.rank()
    }

    /// True when `self * other` is the zero matrix.
    pub fn compose_is_zero(&self, other: &CeMatrix) -> bool {
        assert_eq!(self.ncols, other.nrows, "shape mismatch in composition");
        let mut by_row: HashMap<usize, Vec<(usize, &BigRational)>> = HashMap::new();
        for (r, c, v) in &other.entries {
            by_row.entry(*r).or_default().push((*c, v));
        }
        let mut acc: HashMap<(usize, usize), BigRational> = HashMap::new();
        for (r2, c2, v2) in &self.entries {
            if let Some(cols) = by_row.get(c2) {
                for (c1, v1) in cols {
                    let e = acc.entry((*r2, *c1)).or_insert_with(BigRational::zero);
                    *e += v2 * *v1;
                }
            }
        }
        acc.values().all(|v| v.is_zero())
    }

    pub fn to_rat_matrix(&self) -> RatMatrix {
        let mut m = RatMatrix::zero(self.nrows, self.ncols);
        for (r, c, v) in &self.entries {
            let val = m.get(*r, *c) + v;
            m.set(*r, *c, val);
        }
        m
    }
}

/// All `k`-element subsets of `0..n` as bitmasks, ascending.
fn subsets(n: usize, k: usize) -> Vec<u32> {
    assert!(n <= 31);
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut mask: u32 = (1 << k) - 1;
    let limit: u32 = 1 << n;
    while mask < limit {
        out.push(mask);
        // Gosper's hack: next mask with the same popcount
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    out
}

fn check_bound(alg: &StructureConstants, max_dim: usize) -> Result<usize> {
    let n = alg.dim();
    if n > max_dim {
        return Err(Error::DimensionBound {
            dim: n,
            bound: max_dim,
        });
    }
    Ok(n)
}

/// The matrix of `d_k : Lambda^k n* -> Lambda^{k+1} n*`; rows are indexed by
/// `(k+1)`-subsets, columns by `k`-subsets, both in ascending mask order.
pub fn ce_differential(alg: &StructureConstants, k: usize, max_dim: usize) -> Result<CeMatrix> {
    let n = check_bound(alg, max_dim)?;
    if k > n {
        return Err(Error::DimensionBound {
            dim: k,
            bound: n,
        });
    }
    let domain = subsets(n, k);
    let codomain = subsets(n, k + 1);
    let col_index: HashMap<u32, usize> = domain.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut entries = Vec::new();
    for (row, &t) in codomain.iter().enumerate() {
        let elems: Vec<usize> = (0..n).filter(|&b| t & (1 << b) != 0).collect();
        for r in 0..elems.len() {
            for s in (r + 1)..elems.len() {
                let (i, j) = (elems[r], elems[s]);
                let rest = t & !(1u32 << i) & !(1u32 << j);
                for (m, c) in alg.bracket_basis(i, j) {
                    let mbit = 1u32 << m;
                    if rest & mbit != 0 {
                        continue;
                    }
                    let merged = rest | mbit;
                    let pos = (rest & (mbit - 1)).count_ones() as usize;
                    let sign = if (r + s + pos) % 2 == 0 { 1 } else { -1 };
                    let col = col_index[&merged];
                    let value = if sign == 1 { c.clone() } else { -c.clone() };
                    entries.push((row, col, value));
                }
            }
        }
    }
    Ok(CeMatrix {
        nrows: codomain.len(),
        ncols: domain.len(),
        entries,
    })
}

/// The Betti numbers `b_0..b_N` and their sum.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BettiVector {
    pub b: Vec<usize>,
    pub total: u64,
}

impl BettiVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.b
            .iter()
            .enumerate()
            .map(|(k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) })
            .sum()
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.b.len();
        (0..n).all(|k| self.b[k] == self.b[n - 1 - k])
    }
}

/// Exact Betti numbers of the Chevalley-Eilenberg complex.
pub fn betti(alg: &StructureConstants, max_dim: usize) -> Result<BettiVector> {
    let n = check_bound(alg, max_dim)?;
    let mut ranks = vec![0usize; n + 1];
    for (k, rank) in ranks.iter_mut().enumerate() {
        *rank = ce_differential(alg, k, max_dim)?.rank();
    }
    let mut b = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let dim_k: usize = binomial(n, k);
        let below = if k == 0 { 0 } else { ranks[k - 1] };
        b.push(dim_k - ranks[k] - below);
    }
    let total = b.iter().map(|&v| v as u64).sum();
    Ok(BettiVector { b, total })
}

/// The two inequality checks on one algebra and grading: the cohomology
/// lower bound `dim H*(n) >= L(p)` and, informationally, the toral-rank
/// comparison `dim H*(n) >= 2^(dim z)`.
#[derive(Clone, Debug)]
pub struct DsBoundReport {
    pub total_betti: u64,
    pub length: BigUint,
    pub holds: bool,
    pub trc_bound: BigUint,
    pub trc_holds: bool,
}

pub fn check_ds_bound(
    alg: &StructureConstants,
    grading: &Grading,
    max_dim: usize,
    limits: &Limits,
) -> Result<DsBoundReport> {
    let b = betti(alg, max_dim)?;
    let length = grading.associated_polynomial(alg, limits)?.length();
    let total = BigUint::from(b.total);
    let trc_bound = BigUint::one() << alg.center().dim();
    Ok(DsBoundReport {
        total_betti: b.total,
        holds: total >= length,
        length,
        trc_holds: total >= trc_bound,
        trc_bound,
    })
}

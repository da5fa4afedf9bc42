//! The derivation algebra of a structure-constant Lie algebra, and the
//! structure results for `Der(n(n))`: the lifted `gl(E)` subalgebra, the
//! split `D = D_A + D_1`, lower-triangularity of the residual part and the
//! forced relations among its diagonal coefficients.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::family::FamilyLayout;
use crate::grading::Grading;
use crate::liealg::StructureConstants;
use crate::linalg::{rat, RatMatrix, SparseIntMatrix};
use crate::{Error, Result};

/// A basis of the derivation algebra as exact matrices (column `q` holds
/// the image of the `q`-th basis vector).
#[derive(Clone, Debug)]
pub struct DerivationBasis {
    pub mats: Vec<RatMatrix>,
}

impl DerivationBasis {
    pub fn dim(&self) -> usize {
        self.mats.len()
    }
}

/// Exact Leibniz check: `D [b_i, b_j] = [D b_i, b_j] + [b_i, D b_j]` for all
/// basis pairs.
pub fn is_derivation(alg: &StructureConstants, d: &RatMatrix) -> bool {
    let n = alg.dim();
    if d.nrows() != n || d.ncols() != n {
        return false;
    }
    let col = |q: usize| -> Vec<BigRational> { (0..n).map(|p| d.get(p, q).clone()).collect() };
    let unit = |q: usize| -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); n];
        v[q] = BigRational::one();
        v
    };
    for i in 0..n {
        for j in (i + 1)..n {
            let bracket = alg
                .bracket(&unit(i), &unit(j))
                .expect("dimensions checked");
            let lhs = d.apply(&bracket).expect("dimensions checked");
            let rhs1 = alg.bracket(&col(i), &unit(j)).expect("dimensions checked");
            let rhs2 = alg.bracket(&unit(i), &col(j)).expect("dimensions checked");
            for p in 0..n {
                if lhs[p] != &rhs1[p] + &rhs2[p] {
                    return false;
                }
            }
        }
    }
    true
}

/// Assembles the Leibniz system sparsely: one equation per basis pair and
/// output coordinate, in the `N^2` matrix entries `D[p][q]` (column index
/// `p * N + q`).
fn leibniz_system(alg: &StructureConstants) -> SparseIntMatrix {
    let n = alg.dim();
    let mut system = SparseIntMatrix::new(n * n);
    for i in 0..n {
        for j in (i + 1)..n {
            let mut rows: std::collections::BTreeMap<usize, Vec<(usize, BigRational)>> =
                std::collections::BTreeMap::new();
            // D applied to [b_i, b_j]
            for (k, c) in alg.bracket_basis(i, j) {
                for m in 0..n {
                    rows.entry(m).or_default().push((m * n + k, c.clone()));
                }
            }
            // -[D b_i, b_j] and -[b_i, D b_j]
            for p in 0..n {
                for (m, c) in alg.bracket_basis(p, j) {
                    rows.entry(m).or_default().push((p * n + i, -c.clone()));
                }
                for (m, c) in alg.bracket_basis(i, p) {
                    rows.entry(m).or_default().push((p * n + j, -c.clone()));
                }
            }
            for (_, row) in rows {
                system.push_rational_row(row);
            }
        }
    }
    system
}

/// Exact basis of `Der(L)` as the kernel of the Leibniz system. Every
/// returned matrix is re-checked against the Leibniz identity.
pub fn derivation_space(alg: &StructureConstants) -> DerivationBasis {
    let n = alg.dim();
    let kernel = leibniz_system(alg).kernel();
    let mut mats = Vec::with_capacity(kernel.dim());
    for row in kernel.basis().rows() {
        let mut d = RatMatrix::zero(n, n);
        for (idx, v) in row.iter().enumerate() {
            if !v.is_zero() {
                d.set(idx / n, idx % n, v.clone());
            }
        }
        assert!(
            is_derivation(alg, &d),
            "kernel vector fails the Leibniz identity"
        );
        mats.push(d);
    }
    DerivationBasis { mats }
}

/// Lifts `A` in `gl(E)` to the block-diagonal derivation `D_A`: `A` on `E`,
/// `Lambda^2 A` on the wedges, `A` again on `X`, `U` and `Y`, zero on
/// `a, b, x, u, y, c, f, h`.
pub fn lift_gl(layout: &FamilyLayout, a: &RatMatrix) -> Result<RatMatrix> {
    let n = layout.n();
    if a.nrows() != n || a.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: a.nrows().max(a.ncols()),
        });
    }
    let dim = layout.dim();
    let mut d = RatMatrix::zero(dim, dim);
    for i in 1..=n {
        for k in 1..=n {
            let v = a.get(k - 1, i - 1);
            if v.is_zero() {
                continue;
            }
            d.set(layout.e(k), layout.e(i), v.clone());
            d.set(layout.x_i(k), layout.x_i(i), v.clone());
            d.set(layout.u_i(k), layout.u_i(i), v.clone());
            d.set(layout.y_i(k), layout.y_i(i), v.clone());
        }
    }
    // Lambda^2 A (e_i ^ e_j) = A e_i ^ e_j + e_i ^ A e_j
    for i in 1..=n {
        for j in (i + 1)..=n {
            let col = layout.wedge(i, j);
            for k in 1..=n {
                let c1 = a.get(k - 1, i - 1); // A e_i component on e_k, wedged with e_j
                if !c1.is_zero() && k != j {
                    let (row, sign) = if k < j {
                        (layout.wedge(k, j), rat(1))
                    } else {
                        (layout.wedge(j, k), rat(-1))
                    };
                    let v = d.get(row, col) + c1 * sign;
                    d.set(row, col, v);
                }
                let c2 = a.get(k - 1, j - 1); // e_i wedged with A e_j component on e_k
                if !c2.is_zero() && k != i {
                    let (row, sign) = if i < k {
                        (layout.wedge(i, k), rat(1))
                    } else {
                        (layout.wedge(k, i), rat(-1))
                    };
                    let v = d.get(row, col) + c2 * sign;
                    d.set(row, col, v);
                }
            }
        }
    }
    Ok(d)
}

/// The split of a derivation of `n(n)` into its `gl(E)` lift and the
/// residual part mapping `E` into `W`.
#[derive(Clone, Debug)]
pub struct LeviSplit {
    /// `A = p_E ∘ D|_E` on `E`.
    pub gl_part: RatMatrix,
    /// The lifted derivation `D_A`.
    pub lifted: RatMatrix,
    /// `D_1 = D - D_A`, in `Der(n)_1`.
    pub residual: RatMatrix,
}

/// Splits `D = D_A + D_1` with `A` the `E`-block of `D`.
pub fn levi_split(
    alg: &StructureConstants,
    layout: &FamilyLayout,
    d: &RatMatrix,
) -> Result<LeviSplit> {
    if !is_derivation(alg, d) {
        return Err(Error::NotDerivation);
    }
    let n = layout.n();
    let mut a = RatMatrix::zero(n, n);
    for i in 1..=n {
        for k in 1..=n {
            a.set(k - 1, i - 1, d.get(layout.e(k), layout.e(i)).clone());
        }
    }
    let lifted = lift_gl(layout, &a)?;
    let residual = d.sub(&lifted)?;
    debug_assert!(is_in_der1(layout, &residual));
    debug_assert!(is_derivation(alg, &residual));
    Ok(LeviSplit {
        gl_part: a,
        lifted,
        residual,
    })
}

/// True when the matrix maps `E` into `W`, the defining condition of
/// `Der(n)_1`.
pub fn is_in_der1(layout: &FamilyLayout, d: &RatMatrix) -> bool {
    let n = layout.n();
    for i in 1..=n {
        for k in 1..=n {
            if !d.get(layout.e(k), layout.e(i)).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Lower-triangularity of a `Der(n)_1` element in the ordered basis: every
/// image lies in the span of the same and later basis vectors.
pub fn check_triangular(layout: &FamilyLayout, d1: &RatMatrix) -> Result<bool> {
    if !is_in_der1(layout, d1) {
        return Err(Error::NotInDer1);
    }
    let dim = layout.dim();
    for c in 0..dim {
        for r in 0..c {
            if !d1.get(r, c).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The diagonal relations forced on `Der(n)_1`:
/// `lambda_{e_i} = 0`, `lambda_a = lambda_b = lambda_x`,
/// `lambda_u = lambda_y = lambda_c = 2 lambda_a` and
/// `lambda_f = lambda_h = 3 lambda_a`.
pub fn check_diagonal_relations(layout: &FamilyLayout, d1: &RatMatrix) -> Result<bool> {
    if !is_in_der1(layout, d1) {
        return Err(Error::NotInDer1);
    }
    let diag = |idx: usize| d1.get(idx, idx).clone();
    let n = layout.n();
    for i in 1..=n {
        if !diag(layout.e(i)).is_zero() {
            return Ok(false);
        }
    }
    let la = diag(layout.a());
    let two_la = &la + &la;
    let three_la = &two_la + &la;
    Ok(diag(layout.b()) == la
        && diag(layout.x()) == la
        && diag(layout.u()) == two_la
        && diag(layout.y()) == two_la
        && diag(layout.c()) == two_la
        && diag(layout.f()) == three_la
        && diag(layout.h()) == three_la)
}

/// The diagonal derivation `v -> deg(v) v` of a single-variable grading.
pub fn grading_derivation(alg: &StructureConstants, grading: &Grading) -> Result<RatMatrix> {
    if grading.nvars() != 1 {
        return Err(Error::MultivariateInput);
    }
    let violations = grading.validate(alg)?;
    if !violations.is_empty() {
        return Err(Error::InvalidGrading {
            violations: violations.len(),
        });
    }
    let n = alg.dim();
    let mut d = RatMatrix::zero(n, n);
    for (idx, label) in alg.labels().iter().enumerate() {
        let w = grading.degree(label)?.entries()[0];
        d.set(idx, idx, BigRational::from_integer(w.into()));
    }
    debug_assert!(is_derivation(alg, &d));
    Ok(d)
}

/// For a derivation whose minimal polynomial divides `(T-1)(T-2)(T-3)`,
/// the multiplicities of the eigenvalues 1, 2, 3. Errors when the
/// divisibility fails.
pub fn multiplicities_123(d: &RatMatrix) -> Result<(usize, usize, usize)> {
    let n = d.nrows();
    if n != d.ncols() {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: d.ncols(),
        });
    }
    let shifted = |lambda: i64| -> RatMatrix {
        let mut m = d.clone();
        for i in 0..n {
            let v = m.get(i, i) - rat(lambda);
            m.set(i, i, v);
        }
        m
    };
    let product = shifted(1)
        .matmul(&shifted(2))?
        .matmul(&shifted(3))?;
    if !product.is_zero() {
        return Err(Error::NotDiagonalizable);
    }
    let mult = |lambda: i64| n - shifted(lambda).rank();
    Ok((mult(1), mult(2), mult(3)))
}

/// Matrix commutator `[a, b] = ab - ba`.
pub fn commutator(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix> {
    a.matmul(b)?.sub(&b.matmul(a)?)
}

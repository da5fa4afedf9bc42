//! Dense univariate polynomials for the large sweeps.
//!
//! The products in the verification module have the shape
//! `(1-x)^a (1-x^2)^b (1-x^3)^c` with `b` around 20,000. The dense path
//! seeds the accumulator with the high-multiplicity binomial factor (built
//! directly from a binomial row) and folds the remaining short factors in
//! by shifted-scaled accumulation, which costs `O((a+1) deg + (c+1) deg)`
//! big-integer operations instead of iterating factor by factor.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::{Error, Result};

use super::{binomial_row, ExpVec, MultiPoly};

/// A dense univariate polynomial: `coeffs[k]` is the coefficient of `x^k`.
///
/// Invariant: the trailing coefficient is nonzero unless the polynomial is
/// zero (empty vector).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DensePoly {
    coeffs: Vec<BigInt>,
}

impl DensePoly {
    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DensePoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// Builds from raw coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    /// The expansion of `(1 - x^gap)^m`.
    pub fn binomial(gap: u64, m: u64) -> Result<Self> {
        if gap == 0 {
            return Err(Error::ZeroExponent);
        }
        let gap = usize::try_from(gap).map_err(|_| Error::ExponentOverflow)?;
        let len = gap
            .checked_mul(m as usize)
            .and_then(|d| d.checked_add(1))
            .ok_or(Error::ExponentOverflow)?;
        let row = binomial_row(m);
        let mut coeffs = vec![BigInt::zero(); len];
        for (k, c) in row.into_iter().enumerate() {
            let signed = if k % 2 == 0 {
                BigInt::from(c)
            } else {
                -BigInt::from(c)
            };
            coeffs[gap * k] = signed;
        }
        Ok(DensePoly { coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Multiplies by `(1 - x^gap)^m` in one pass over the output:
    /// `out[i] = sum_k (-1)^k C(m,k) self[i - gap k]`.
    pub fn mul_binomial(&self, gap: u64, m: u64) -> Result<DensePoly> {
        if gap == 0 {
            return Err(Error::ZeroExponent);
        }
        if self.is_zero() {
            return Ok(DensePoly::zero());
        }
        let gap = usize::try_from(gap).map_err(|_| Error::ExponentOverflow)?;
        let shift = gap
            .checked_mul(m as usize)
            .ok_or(Error::ExponentOverflow)?;
        let out_len = self
            .coeffs
            .len()
            .checked_add(shift)
            .ok_or(Error::ExponentOverflow)?;
        let signed_row: Vec<BigInt> = binomial_row(m)
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                if k % 2 == 0 {
                    BigInt::from(c)
                } else {
                    -BigInt::from(c)
                }
            })
            .collect();
        let mut out = vec![BigInt::zero(); out_len];
        for (i, slot) in out.iter_mut().enumerate() {
            let k_min = i.saturating_sub(self.coeffs.len() - 1).div_ceil(gap);
            let k_max = (i / gap).min(m as usize);
            let mut acc = BigInt::zero();
            for k in k_min..=k_max {
                let src = &self.coeffs[i - gap * k];
                if src.is_zero() {
                    continue;
                }
                acc += &signed_row[k] * src;
            }
            *slot = acc;
        }
        Ok(DensePoly::from_coeffs(out))
    }

    /// Plain exact convolution.
    pub fn mul(&self, other: &DensePoly) -> DensePoly {
        if self.is_zero() || other.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        DensePoly::from_coeffs(out)
    }

    pub fn pow(&self, e: u32) -> DensePoly {
        let mut acc = DensePoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The length `L(p)`.
    pub fn length(&self) -> BigUint {
        let mut acc = BigUint::zero();
        for c in &self.coeffs {
            acc += c.magnitude();
        }
        acc
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn to_multi(&self) -> MultiPoly {
        MultiPoly::from_terms(
            1,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (ExpVec::new(vec![k as u64]), c.clone())),
        )
        .expect("dense to sparse conversion cannot fail")
    }
}

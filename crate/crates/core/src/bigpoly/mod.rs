//! Exact integer-coefficient polynomials.
//!
//! Two representations are provided: a sparse multivariate polynomial
//! ([`MultiPoly`]) keyed by exponent vectors, and a dense univariate one
//! ([`dense::DensePoly`]) used by the large verification sweeps. Both store
//! arbitrary-precision integers; the central quantity everywhere is the
//! length `L(p)`, the sum of the absolute values of the coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Limits, Result};

pub mod dense;

pub use dense::DensePoly;

/// An exponent (or degree) vector in `Z_{>=0}^d`.
///
/// Ordering is lexicographic, which gives every polynomial a canonical term
/// order for serialization.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpVec(Vec<u64>);

impl ExpVec {
    pub fn new(entries: Vec<u64>) -> Self {
        assert!(!entries.is_empty(), "exponent vector needs d >= 1");
        ExpVec(entries)
    }

    pub fn zero(nvars: usize) -> Self {
        ExpVec::new(vec![0; nvars])
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &ExpVec) -> Result<ExpVec> {
        if self.nvars() != other.nvars() {
            return Err(Error::VarMismatch(self.nvars(), other.nvars()));
        }
        let mut out = Vec::with_capacity(self.0.len());
        for (&a, &b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_add(b).ok_or(Error::ExponentOverflow)?);
        }
        Ok(ExpVec(out))
    }

    pub fn scale(&self, k: u64) -> Result<ExpVec> {
        let mut out = Vec::with_capacity(self.0.len());
        for &a in &self.0 {
            out.push(a.checked_mul(k).ok_or(Error::ExponentOverflow)?);
        }
        Ok(ExpVec(out))
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A sparse multivariate polynomial with `BigInt` coefficients.
///
/// Invariants: no stored coefficient is zero and every exponent vector has
/// exactly `nvars` entries.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<ExpVec, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars >= 1);
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(nvars, ExpVec::zero(nvars), BigInt::one())
    }

    pub fn monomial(nvars: usize, exp: ExpVec, coeff: BigInt) -> Self {
        assert_eq!(exp.nvars(), nvars);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        MultiPoly { nvars, terms }
    }

    /// Builds a polynomial from raw terms, summing duplicates and dropping
    /// zero coefficients.
    pub fn from_terms(nvars: usize, it: impl IntoIterator<Item = (ExpVec, BigInt)>) -> Result<Self> {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in it {
            if e.nvars() != nvars {
                return Err(Error::VarMismatch(nvars, e.nvars()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &ExpVec) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&ExpVec::zero(self.nvars))
    }

    fn add_term(&mut self, exp: ExpVec, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        if self.nvars != other.nvars {
            return Err(Error::VarMismatch(self.nvars, other.nvars));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    /// Exact product. Fails cleanly when the result would exceed the term
    /// capacity in `limits`.
    pub fn mul(&self, other: &MultiPoly, limits: &Limits) -> Result<MultiPoly> {
        if self.nvars != other.nvars {
            return Err(Error::VarMismatch(self.nvars, other.nvars));
        }
        let mut terms: BTreeMap<ExpVec, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.add(eb)?;
                let prod = ca * cb;
                use std::collections::btree_map::Entry;
                match terms.entry(e) {
                    Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                    Entry::Occupied(mut o) => {
                        *o.get_mut() += prod;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
                if terms.len() > limits.max_terms {
                    return Err(Error::Capacity {
                        terms: terms.len(),
                        limit: limits.max_terms,
                    });
                }
            }
        }
        Ok(MultiPoly {
            nvars: self.nvars,
            terms,
        })
    }

    /// The length `L(p)`: the sum of the absolute values of all coefficients.
    pub fn length(&self) -> BigUint {
        let mut acc = BigUint::zero();
        for c in self.terms.values() {
            acc += c.magnitude();
        }
        acc
    }

    /// Substitutes `x_d = x_1^m`, dropping the last variable: the term
    /// `x_1^{a_1} ... x_d^{a_d}` maps to `x_1^{a_1 + m a_d} x_2^{a_2} ...
    /// x_{d-1}^{a_{d-1}}`. Colliding images are summed.
    pub fn substitute_last(&self, m: u64) -> Result<MultiPoly> {
        if self.nvars < 2 {
            return Err(Error::UnivariateInput);
        }
        if m == 0 {
            return Err(Error::BadShift);
        }
        let d = self.nvars;
        let mut out = MultiPoly::zero(d - 1);
        for (e, c) in &self.terms {
            let entries = e.entries();
            let last = entries[d - 1];
            let first = entries[0]
                .checked_add(last.checked_mul(m).ok_or(Error::ExponentOverflow)?)
                .ok_or(Error::ExponentOverflow)?;
            let mut img = Vec::with_capacity(d - 1);
            img.push(first);
            img.extend_from_slice(&entries[1..d - 1]);
            out.add_term(ExpVec::new(img), c.clone());
        }
        Ok(out)
    }

    /// Maximum exponent of variable `var` over the support, or 0 for the
    /// zero polynomial.
    pub fn max_exponent(&self, var: usize) -> u64 {
        self.terms
            .keys()
            .map(|e| e.entries()[var])
            .max()
            .unwrap_or(0)
    }

    /// Coordinatewise maximum exponent over the support.
    pub fn degree_vec(&self) -> ExpVec {
        let mut out = vec![0u64; self.nvars];
        for e in self.terms.keys() {
            for (o, &x) in out.iter_mut().zip(e.entries()) {
                *o = (*o).max(x);
            }
        }
        ExpVec::new(out)
    }

    /// Evaluates at an integer point (used as an independent expansion check
    /// in tests).
    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt> {
        if point.len() != self.nvars {
            return Err(Error::VarMismatch(self.nvars, point.len()));
        }
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (&a, x) in e.entries().iter().zip(point) {
                term *= x.pow(u32::try_from(a).map_err(|_| Error::ExponentOverflow)?);
            }
            acc += term;
        }
        Ok(acc)
    }
}

impl fmt::Display for MultiPoly {
    /// Writes terms in canonical order as `1 - 2*x + 2*x^3 - x^4` (single
    /// variable) or with `x1..xd` names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let single = self.nvars == 1;
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.magnitude();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || e.is_zero() {
                parts.push(mag.to_string());
            }
            for (v, &a) in e.entries().iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let name = if single {
                    "x".to_string()
                } else {
                    format!("x{}", v + 1)
                };
                if a == 1 {
                    parts.push(name);
                } else {
                    parts.push(format!("{}^{}", name, a));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// One factor `(1 - x^alpha)^m` of a factored associated polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factor {
    pub exp: ExpVec,
    pub mult: u64,
}

/// A product of factors `(1 - x^alpha)^m` with nonzero `alpha` and `m >= 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactorList {
    nvars: usize,
    factors: Vec<Factor>,
}

impl FactorList {
    pub fn new(nvars: usize, factors: Vec<Factor>) -> Result<Self> {
        for f in &factors {
            if f.exp.nvars() != nvars {
                return Err(Error::VarMismatch(nvars, f.exp.nvars()));
            }
            if f.exp.is_zero() {
                return Err(Error::ZeroExponent);
            }
            if f.mult == 0 {
                return Err(Error::ZeroMultiplicity);
            }
        }
        Ok(FactorList { nvars, factors })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_univariate(&self) -> bool {
        self.nvars == 1
    }

    /// Total degree vector `sum m * alpha` of the expanded product.
    pub fn degree_vec(&self) -> Result<ExpVec> {
        let mut acc = ExpVec::zero(self.nvars);
        for f in &self.factors {
            acc = acc.add(&f.exp.scale(f.mult)?)?;
        }
        Ok(acc)
    }

    /// Fully expands the product.
    pub fn expand(&self, limits: &Limits) -> Result<MultiPoly> {
        let mut acc = MultiPoly::one(self.nvars);
        for f in &self.factors {
            let factor = binomial_pow(&f.exp, f.mult);
            acc = acc.mul(&factor, limits)?;
        }
        Ok(acc)
    }

    /// Expands a univariate factor list densely.
    pub fn expand_dense(&self, limits: &Limits) -> Result<DensePoly> {
        if !self.is_univariate() {
            return Err(Error::MultivariateInput);
        }
        let mut acc = DensePoly::one();
        for f in &self.factors {
            let deg = acc
                .degree()
                .unwrap_or(0)
                .checked_add(
                    usize::try_from(f.exp.entries()[0].checked_mul(f.mult).ok_or(Error::ExponentOverflow)?)
                        .map_err(|_| Error::ExponentOverflow)?,
                )
                .ok_or(Error::ExponentOverflow)?;
            if deg + 1 > limits.max_terms {
                return Err(Error::Capacity {
                    terms: deg + 1,
                    limit: limits.max_terms,
                });
            }
            acc = acc.mul_binomial(f.exp.entries()[0], f.mult)?;
        }
        Ok(acc)
    }

    /// Substitutes `x_d = x_1^m` in every factor, dropping the last variable.
    pub fn substitute_last(&self, m: u64) -> Result<FactorList> {
        if self.nvars < 2 {
            return Err(Error::UnivariateInput);
        }
        if m == 0 {
            return Err(Error::BadShift);
        }
        let d = self.nvars;
        let mut factors = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            let entries = f.exp.entries();
            let first = entries[0]
                .checked_add(entries[d - 1].checked_mul(m).ok_or(Error::ExponentOverflow)?)
                .ok_or(Error::ExponentOverflow)?;
            let mut img = Vec::with_capacity(d - 1);
            img.push(first);
            img.extend_from_slice(&entries[1..d - 1]);
            factors.push(Factor {
                exp: ExpVec::new(img),
                mult: f.mult,
            });
        }
        FactorList::new(d - 1, factors)
    }
}

/// Expands one factor `(1 - x^alpha)^m` directly: the term at exponent
/// `k * alpha` has coefficient `(-1)^k C(m, k)`.
pub fn binomial_pow(alpha: &ExpVec, m: u64) -> MultiPoly {
    assert!(!alpha.is_zero(), "factor exponent must be nonzero");
    assert!(m >= 1, "multiplicity must be at least 1");
    let row = binomial_row(m);
    let mut terms = BTreeMap::new();
    for (k, c) in row.into_iter().enumerate() {
        let exp = alpha
            .scale(k as u64)
            .expect("binomial exponent overflow");
        let signed = if k % 2 == 0 {
            BigInt::from(c)
        } else {
            -BigInt::from(c)
        };
        terms.insert(exp, signed);
    }
    MultiPoly {
        nvars: alpha.nvars(),
        terms,
    }
}

/// The binomial row `C(m, 0), ..., C(m, m)` computed by the exact
/// multiply-divide recurrence.
pub(crate) fn binomial_row(m: u64) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(m as usize + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for k in 0..m {
        c = c * BigUint::from(m - k) / BigUint::from(k + 1);
        row.push(c.clone());
    }
    row
}

/// Exact `L(expand(factors))` for a univariate factor list, without a full
/// expansion when the factor exponents form a staircase.
///
/// Factors are processed in ascending exponent order. Whenever the next
/// exponent `T` strictly exceeds the degree of the product accumulated so
/// far, the shifted copies `x^{jT} p` have pairwise disjoint supports and
/// the factor `(1 - x^T)^k` multiplies the length by exactly `2^k`. A factor
/// that does not separate forces any pending separated factors back into the
/// dense accumulator before it is folded in.
pub fn staircase_length(factors: &FactorList, limits: &Limits) -> Result<BigUint> {
    if !factors.is_univariate() {
        return Err(Error::MultivariateInput);
    }
    let mut sorted: Vec<&Factor> = factors.factors().iter().collect();
    sorted.sort_by_key(|f| f.exp.entries()[0]);

    let mut acc = DensePoly::one();
    let mut pending: Vec<(u64, u64)> = Vec::new();
    let mut virtual_deg: u64 = 0;
    let mut doublings: u64 = 0;

    let fold = |acc: &mut DensePoly, gap: u64, mult: u64, limits: &Limits| -> Result<()> {
        let extra = gap.checked_mul(mult).ok_or(Error::ExponentOverflow)?;
        let deg = (acc.degree().unwrap_or(0) as u64)
            .checked_add(extra)
            .ok_or(Error::ExponentOverflow)?;
        let deg = usize::try_from(deg).map_err(|_| Error::ExponentOverflow)?;
        if deg + 1 > limits.max_terms {
            return Err(Error::Capacity {
                terms: deg + 1,
                limit: limits.max_terms,
            });
        }
        *acc = acc.mul_binomial(gap, mult)?;
        Ok(())
    };

    for f in sorted {
        let t = f.exp.entries()[0];
        let k = f.mult;
        if t > virtual_deg {
            pending.push((t, k));
            doublings = doublings.checked_add(k).ok_or(Error::ExponentOverflow)?;
        } else {
            for (pt, pk) in pending.drain(..) {
                fold(&mut acc, pt, pk, limits)?;
            }
            doublings = 0;
            fold(&mut acc, t, k, limits)?;
        }
        virtual_deg = virtual_deg
            .checked_add(t.checked_mul(k).ok_or(Error::ExponentOverflow)?)
            .ok_or(Error::ExponentOverflow)?;
    }
    Ok(acc.length() << doublings)
}

// --- serialization -----------------------------------------------------

/// Wire form of a sparse polynomial: exponents plus decimal coefficient
/// strings, terms in canonical order.
#[derive(Serialize, Deserialize)]
pub struct PolyFile {
    pub d: usize,
    pub terms: Vec<PolyTermFile>,
}

#[derive(Serialize, Deserialize)]
pub struct PolyTermFile {
    pub e: Vec<u64>,
    pub c: String,
}

impl MultiPoly {
    pub fn to_file(&self) -> PolyFile {
        PolyFile {
            d: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| PolyTermFile {
                    e: e.entries().to_vec(),
                    c: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_file(file: &PolyFile) -> Result<MultiPoly> {
        let mut p = MultiPoly::zero(file.d);
        for t in &file.terms {
            if t.e.len() != file.d {
                return Err(Error::VarMismatch(file.d, t.e.len()));
            }
            let c: BigInt = t.c.parse().map_err(|_| Error::BadRational(t.c.clone()))?;
            p.add_term(ExpVec::new(t.e.clone()), c);
        }
        Ok(p)
    }
}

/// Wire form of a factor list.
#[derive(Serialize, Deserialize)]
pub struct FactorsFile {
    pub factors: Vec<FactorFile>,
}

#[derive(Serialize, Deserialize)]
pub struct FactorFile {
    pub e: Vec<u64>,
    pub m: u64,
}

impl FactorList {
    pub fn to_file(&self) -> FactorsFile {
        FactorsFile {
            factors: self
                .factors
                .iter()
                .map(|f| FactorFile {
                    e: f.exp.entries().to_vec(),
                    m: f.mult,
                })
                .collect(),
        }
    }

    pub fn from_file(file: &FactorsFile) -> Result<FactorList> {
        let nvars = file
            .factors
            .first()
            .map(|f| f.e.len())
            .unwrap_or(1);
        let factors = file
            .factors
            .iter()
            .map(|f| Factor {
                exp: ExpVec::new(f.e.clone()),
                mult: f.m,
            })
            .collect();
        FactorList::new(nvars, factors)
    }
}

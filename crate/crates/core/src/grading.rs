//! `Z_+^d`-gradings of a structure-constant algebra, associated polynomials
//! and the length-preserving collapse down to one variable.
//!
//! A grading assigns a nonzero degree vector to every basis label; validity
//! means degree additivity on every nonzero bracket. Collapsing substitutes
//! `x_d = x_1^m`: with `m` above the largest first-coordinate exponent in
//! the support of the associated polynomial, distinct terms cannot collide
//! and the length is preserved exactly.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bigpoly::{ExpVec, Factor, FactorList, MultiPoly};
use crate::liealg::StructureConstants;
use crate::{Error, Limits, Result};

/// A basis-aligned grading: every basis label carries a nonzero degree
/// vector in `Z_+^d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Grading {
    nvars: usize,
    degrees: BTreeMap<String, ExpVec>,
}

/// A bracket `[b_i, b_j]` with a component on `b_k` whose degree is not the
/// sum of the input degrees.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradingViolation {
    pub i: String,
    pub j: String,
    pub k: String,
}

impl Grading {
    pub fn new(nvars: usize, degrees: BTreeMap<String, ExpVec>) -> Result<Self> {
        assert!(nvars >= 1);
        for (label, deg) in &degrees {
            if deg.nvars() != nvars {
                return Err(Error::VarMismatch(nvars, deg.nvars()));
            }
            if deg.is_zero() {
                return Err(Error::ZeroDegree(label.clone()));
            }
        }
        Ok(Grading { nvars, degrees })
    }

    /// Single-variable grading from plain integer degrees.
    pub fn from_weights(weights: impl IntoIterator<Item = (String, u64)>) -> Result<Self> {
        Grading::new(
            1,
            weights
                .into_iter()
                .map(|(l, w)| (l, ExpVec::new(vec![w])))
                .collect(),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degrees(&self) -> &BTreeMap<String, ExpVec> {
        &self.degrees
    }

    pub fn degree(&self, label: &str) -> Result<&ExpVec> {
        self.degrees
            .get(label)
            .ok_or_else(|| Error::MissingDegree(label.to_string()))
    }

    /// Degree-additivity check. Hard errors for label mismatches; additivity
    /// failures are returned as a violation list.
    pub fn validate(&self, alg: &StructureConstants) -> Result<Vec<GradingViolation>> {
        for label in self.degrees.keys() {
            alg.label_index(label)?;
        }
        let degs: Vec<&ExpVec> = alg
            .labels()
            .iter()
            .map(|l| self.degree(l))
            .collect::<Result<_>>()?;
        let mut violations = Vec::new();
        for (i, j, terms) in alg.nonzero_pairs() {
            let sum = degs[i].add(degs[j])?;
            for (k, _) in terms {
                if *degs[*k] != sum {
                    violations.push(GradingViolation {
                        i: alg.label(i).to_string(),
                        j: alg.label(j).to_string(),
                        k: alg.label(*k).to_string(),
                    });
                }
            }
        }
        Ok(violations)
    }

    /// The factored associated polynomial: one factor `(1 - x^alpha)^{d_alpha}`
    /// per distinct degree, where `d_alpha` counts labels of degree `alpha`.
    pub fn factor_list(&self) -> Result<FactorList> {
        let mut counts: BTreeMap<ExpVec, u64> = BTreeMap::new();
        for deg in self.degrees.values() {
            *counts.entry(deg.clone()).or_insert(0) += 1;
        }
        FactorList::new(
            self.nvars,
            counts
                .into_iter()
                .map(|(exp, mult)| Factor { exp, mult })
                .collect(),
        )
    }

    /// Validates and expands the associated polynomial.
    pub fn associated_polynomial(
        &self,
        alg: &StructureConstants,
        limits: &Limits,
    ) -> Result<MultiPoly> {
        let violations = self.validate(alg)?;
        if !violations.is_empty() {
            return Err(Error::InvalidGrading {
                violations: violations.len(),
            });
        }
        self.factor_list()?.expand(limits)
    }

    /// Applies the collapse map `alpha -> (alpha_1 + m alpha_d, alpha_2, ...,
    /// alpha_{d-1})` to every degree vector.
    fn collapse_degrees(&self, m: u64) -> Result<Grading> {
        if self.nvars < 2 {
            return Err(Error::UnivariateInput);
        }
        if m == 0 {
            return Err(Error::BadShift);
        }
        let d = self.nvars;
        let mut degrees = BTreeMap::new();
        for (label, deg) in &self.degrees {
            let entries = deg.entries();
            let first = entries[0]
                .checked_add(entries[d - 1].checked_mul(m).ok_or(Error::ExponentOverflow)?)
                .ok_or(Error::ExponentOverflow)?;
            let mut img = Vec::with_capacity(d - 1);
            img.push(first);
            img.extend_from_slice(&entries[1..d - 1]);
            degrees.insert(label.clone(), ExpVec::new(img));
        }
        Grading::new(d - 1, degrees)
    }

    /// Renames variables by a permutation: new coordinate `k` is old
    /// coordinate `perm[k]`. Used to rotate any variable into last position
    /// before a collapse step.
    pub fn reorder_vars(&self, perm: &[usize]) -> Result<Grading> {
        if perm.len() != self.nvars {
            return Err(Error::VarMismatch(self.nvars, perm.len()));
        }
        let mut seen = vec![false; self.nvars];
        for &p in perm {
            if p >= self.nvars || seen[p] {
                return Err(Error::VarMismatch(self.nvars, p));
            }
            seen[p] = true;
        }
        let degrees = self
            .degrees
            .iter()
            .map(|(l, deg)| {
                let entries = deg.entries();
                (
                    l.clone(),
                    ExpVec::new(perm.iter().map(|&p| entries[p]).collect()),
                )
            })
            .collect();
        Grading::new(self.nvars, degrees)
    }
}

/// The smallest substitution exponent guaranteed to preserve length:
/// `1 + max(alpha_1)` over the support of `p`.
pub fn min_safe_m(p: &MultiPoly) -> Result<u64> {
    if p.nvars() < 2 {
        return Err(Error::UnivariateInput);
    }
    p.max_exponent(0)
        .checked_add(1)
        .ok_or(Error::ExponentOverflow)
}

/// A length-safe substitution exponent computable without expanding `p`:
/// `1 + sum d_alpha alpha_1` bounds the first-coordinate degree from above.
pub fn degree_bound_m(factors: &FactorList) -> Result<u64> {
    let mut acc: u64 = 0;
    for f in factors.factors() {
        let c = f.exp.entries()[0]
            .checked_mul(f.mult)
            .ok_or(Error::ExponentOverflow)?;
        acc = acc.checked_add(c).ok_or(Error::ExponentOverflow)?;
    }
    acc.checked_add(1).ok_or(Error::ExponentOverflow)
}

/// How the substitution exponent for one collapse step is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CollapseStrategy {
    /// `m = min_safe_m(p)`; requires one expansion of `p`.
    Minimal,
    /// `m = 1 + sum d_alpha alpha_1`; no expansion needed.
    DegreeBound,
    /// A caller-chosen `m >= 1`. May lose length when too small.
    Explicit(u64),
}

/// Result of one collapse step.
#[derive(Clone, Debug)]
pub struct CollapseStep {
    pub grading: Grading,
    pub m: u64,
    /// Lengths before and after, when the strategy already paid for the
    /// expansions (`Minimal` and `Explicit`); `DegreeBound` skips them.
    pub lengths: Option<(BigUint, BigUint)>,
}

impl CollapseStep {
    /// True when the step is known to have lost length.
    pub fn is_lossy(&self) -> bool {
        matches!(&self.lengths, Some((before, after)) if after < before)
    }
}

/// One collapse step `d -> d - 1` eliminating the last variable.
pub fn collapse_once(
    alg: &StructureConstants,
    grading: &Grading,
    strategy: CollapseStrategy,
    limits: &Limits,
) -> Result<CollapseStep> {
    if grading.nvars() < 2 {
        return Err(Error::UnivariateInput);
    }
    let violations = grading.validate(alg)?;
    if !violations.is_empty() {
        return Err(Error::InvalidGrading {
            violations: violations.len(),
        });
    }
    let (m, lengths) = match strategy {
        CollapseStrategy::Minimal => {
            let p = grading.factor_list()?.expand(limits)?;
            let m = min_safe_m(&p)?;
            let before = p.length();
            let after = p.substitute_last(m)?.length();
            (m, Some((before, after)))
        }
        CollapseStrategy::DegreeBound => {
            let m = degree_bound_m(&grading.factor_list()?)?;
            (m, None)
        }
        CollapseStrategy::Explicit(m) => {
            if m == 0 {
                return Err(Error::BadShift);
            }
            let p = grading.factor_list()?.expand(limits)?;
            let before = p.length();
            let after = p.substitute_last(m)?.length();
            (m, Some((before, after)))
        }
    };
    Ok(CollapseStep {
        grading: grading.collapse_degrees(m)?,
        m,
        lengths,
    })
}

/// Iterates minimal collapse steps down to a one-variable grading; the
/// length of the associated polynomial is asserted unchanged by
/// recomputation.
pub fn collapse_to_line(
    alg: &StructureConstants,
    grading: &Grading,
    limits: &Limits,
) -> Result<(Grading, Vec<u64>)> {
    let initial_length = grading.associated_polynomial(alg, limits)?.length();
    let mut current = grading.clone();
    let mut ms = Vec::new();
    while current.nvars() > 1 {
        let step = collapse_once(alg, &current, CollapseStrategy::Minimal, limits)?;
        ms.push(step.m);
        current = step.grading;
    }
    let final_length = current.associated_polynomial(alg, limits)?.length();
    if final_length != initial_length {
        return Err(Error::LengthNotPreserved);
    }
    Ok((current, ms))
}

// --- file format --------------------------------------------------------

/// Wire form: `{"d": 2, "degrees": {"e1": [1,0], ...}}`.
#[derive(Serialize, Deserialize)]
pub struct GradingFile {
    pub d: usize,
    pub degrees: BTreeMap<String, Vec<u64>>,
}

impl Grading {
    pub fn to_file(&self) -> GradingFile {
        GradingFile {
            d: self.nvars,
            degrees: self
                .degrees
                .iter()
                .map(|(l, e)| (l.clone(), e.entries().to_vec()))
                .collect(),
        }
    }

    pub fn from_file(file: &GradingFile) -> Result<Grading> {
        Grading::new(
            file.d,
            file.degrees
                .iter()
                .map(|(l, e)| (l.clone(), ExpVec::new(e.clone())))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigpoly::staircase_length;
    use num_bigint::BigUint;

    fn lim() -> Limits {
        Limits::default()
    }

    fn h1_labeled() -> StructureConstants {
        // the 3-dimensional Heisenberg algebra with [e1, e2] = e3
        let mut alg =
            StructureConstants::new(vec!["e1".into(), "e2".into(), "e3".into()]).unwrap();
        alg.set_bracket("e1", "e2", &[("e3", crate::linalg::rat(1))])
            .unwrap();
        alg
    }

    fn weights(ws: &[(&str, u64)]) -> Grading {
        Grading::from_weights(ws.iter().map(|(l, w)| (l.to_string(), *w))).unwrap()
    }

    fn multi(degs: &[(&str, &[u64])]) -> Grading {
        Grading::new(
            degs[0].1.len(),
            degs.iter()
                .map(|(l, e)| (l.to_string(), ExpVec::new(e.to_vec())))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn validate_heisenberg_gradings() {
        let alg = h1_labeled();
        assert!(weights(&[("e1", 1), ("e2", 1), ("e3", 2)])
            .validate(&alg)
            .unwrap()
            .is_empty());

        let bad = weights(&[("e1", 1), ("e2", 1), ("e3", 3)]);
        let violations = bad.validate(&alg).unwrap();
        assert_eq!(
            violations,
            vec![GradingViolation {
                i: "e1".into(),
                j: "e2".into(),
                k: "e3".into()
            }]
        );
    }

    #[test]
    fn validate_rejects_unknown_and_missing_labels() {
        let alg = h1_labeled();
        let stray = weights(&[("e1", 1), ("e2", 1), ("e3", 2), ("w", 1)]);
        assert!(matches!(
            stray.validate(&alg),
            Err(Error::UnknownLabel(l)) if l == "w"
        ));
        let missing = weights(&[("e1", 1), ("e2", 1)]);
        assert!(matches!(
            missing.validate(&alg),
            Err(Error::MissingDegree(l)) if l == "e3"
        ));
    }

    #[test]
    fn zero_degree_is_rejected_at_construction() {
        let r = Grading::from_weights(vec![("e1".to_string(), 0)]);
        assert!(matches!(r, Err(Error::ZeroDegree(_))));
    }

    #[test]
    fn associated_polynomial_examples() {
        let alg = h1_labeled();
        let g = weights(&[("e1", 1), ("e2", 1), ("e3", 2)]);
        let p = g.associated_polynomial(&alg, &lim()).unwrap();
        assert_eq!(p.to_string(), "1 - 2*x + 2*x^3 - x^4");
        assert_eq!(p.length(), BigUint::from(6u32));

        let a1 = StructureConstants::abelian(1);
        let g = weights(&[("e1", 1)]);
        assert_eq!(
            g.associated_polynomial(&a1, &lim()).unwrap().to_string(),
            "1 - x"
        );

        // h2, dim 5, graded 1,1,1,1,2: (1-x)^4 (1-x^2) has length 20
        let h2 = StructureConstants::heisenberg(2);
        let g = weights(&[("e1", 1), ("e2", 1), ("f1", 1), ("f2", 1), ("z", 2)]);
        let p = g.associated_polynomial(&h2, &lim()).unwrap();
        assert_eq!(p.length(), BigUint::from(20u32));
    }

    #[test]
    fn associated_polynomial_requires_validity() {
        let alg = h1_labeled();
        let bad = weights(&[("e1", 1), ("e2", 1), ("e3", 3)]);
        assert!(matches!(
            bad.associated_polynomial(&alg, &lim()),
            Err(Error::InvalidGrading { violations: 1 })
        ));
    }

    #[test]
    fn min_safe_m_examples() {
        // 1 - x1 - x2 + x1 x2: support max alpha_1 = 1
        let f = FactorList::new(
            2,
            vec![
                Factor {
                    exp: ExpVec::new(vec![1, 0]),
                    mult: 1,
                },
                Factor {
                    exp: ExpVec::new(vec![0, 1]),
                    mult: 1,
                },
            ],
        )
        .unwrap();
        let p = f.expand(&lim()).unwrap();
        assert_eq!(min_safe_m(&p).unwrap(), 2);

        // 1 - x2 has no x1 in its support
        let p = FactorList::new(
            2,
            vec![Factor {
                exp: ExpVec::new(vec![0, 1]),
                mult: 1,
            }],
        )
        .unwrap()
        .expand(&lim())
        .unwrap();
        assert_eq!(min_safe_m(&p).unwrap(), 1);

        // (1-x1)(1-x1^2)(1-x2): support contains x1^3
        let f = FactorList::new(
            2,
            vec![
                Factor {
                    exp: ExpVec::new(vec![1, 0]),
                    mult: 1,
                },
                Factor {
                    exp: ExpVec::new(vec![2, 0]),
                    mult: 1,
                },
                Factor {
                    exp: ExpVec::new(vec![0, 1]),
                    mult: 1,
                },
            ],
        )
        .unwrap();
        let p = f.expand(&lim()).unwrap();
        assert_eq!(min_safe_m(&p).unwrap(), 4);
        // the expansion-free bound is at least as large
        assert!(degree_bound_m(&f).unwrap() >= 4);

        let univar = FactorList::new(
            1,
            vec![Factor {
                exp: ExpVec::new(vec![1]),
                mult: 1,
            }],
        )
        .unwrap()
        .expand(&lim())
        .unwrap();
        assert!(matches!(min_safe_m(&univar), Err(Error::UnivariateInput)));
    }

    /// 3-dimensional abelian algebra with degrees (1,0), (2,0), (0,1): the
    /// adversarial collapse example.
    fn abelian3_setup() -> (StructureConstants, Grading) {
        let alg = StructureConstants::abelian(3);
        let g = multi(&[("e1", &[1, 0]), ("e2", &[2, 0]), ("e3", &[0, 1])]);
        (alg, g)
    }

    #[test]
    fn collapse_minimal_preserves_length() {
        let (alg, g) = abelian3_setup();
        let step = collapse_once(&alg, &g, CollapseStrategy::Minimal, &lim()).unwrap();
        assert_eq!(step.m, 4);
        let (before, after) = step.lengths.clone().unwrap();
        assert_eq!(before, BigUint::from(8u32));
        assert_eq!(after, BigUint::from(8u32));
        assert!(!step.is_lossy());
        // resulting degrees are 1, 2, 4
        assert_eq!(step.grading.degree("e1").unwrap().entries(), &[1]);
        assert_eq!(step.grading.degree("e2").unwrap().entries(), &[2]);
        assert_eq!(step.grading.degree("e3").unwrap().entries(), &[4]);
        assert!(step.grading.validate(&alg).unwrap().is_empty());
    }

    #[test]
    fn collapse_explicit_m1_is_lossy_with_warning() {
        let (alg, g) = abelian3_setup();
        let step = collapse_once(&alg, &g, CollapseStrategy::Explicit(1), &lim()).unwrap();
        assert_eq!(step.m, 1);
        let (before, after) = step.lengths.clone().unwrap();
        assert_eq!(before, BigUint::from(8u32));
        assert_eq!(after, BigUint::from(6u32));
        assert!(step.is_lossy());
        assert_eq!(step.grading.degree("e3").unwrap().entries(), &[1]);
    }

    #[test]
    fn collapse_degenerate_second_variable() {
        // no label uses the last coordinate: degrees unchanged in
        // coordinate 1 for any m
        let alg = StructureConstants::abelian(2);
        let g = multi(&[("e1", &[1, 0]), ("e2", &[3, 0])]);
        for strategy in [
            CollapseStrategy::Minimal,
            CollapseStrategy::DegreeBound,
            CollapseStrategy::Explicit(7),
        ] {
            let step = collapse_once(&alg, &g, strategy, &lim()).unwrap();
            assert_eq!(step.grading.degree("e1").unwrap().entries(), &[1]);
            assert_eq!(step.grading.degree("e2").unwrap().entries(), &[3]);
        }
    }

    #[test]
    fn collapse_rejects_bad_inputs() {
        let (alg, g) = abelian3_setup();
        assert!(matches!(
            collapse_once(&alg, &g, CollapseStrategy::Explicit(0), &lim()),
            Err(Error::BadShift)
        ));
        let line = weights(&[("e1", 1), ("e2", 2), ("e3", 1)]);
        assert!(matches!(
            collapse_once(&alg, &line, CollapseStrategy::Minimal, &lim()),
            Err(Error::UnivariateInput)
        ));
    }

    #[test]
    fn collapse_to_line_from_three_variables() {
        let alg = StructureConstants::abelian(4);
        let g = multi(&[
            ("e1", &[1, 0, 0]),
            ("e2", &[0, 2, 0]),
            ("e3", &[0, 0, 1]),
            ("e4", &[1, 1, 1]),
        ]);
        let before = g.associated_polynomial(&alg, &lim()).unwrap().length();
        let (line, ms) = collapse_to_line(&alg, &g, &lim()).unwrap();
        assert_eq!(line.nvars(), 1);
        assert_eq!(ms.len(), 2);
        let after = line.associated_polynomial(&alg, &lim()).unwrap().length();
        assert_eq!(before, after);
    }

    #[test]
    fn collapse_to_line_returns_one_variable_grading_unchanged() {
        let alg = h1_labeled();
        let g = weights(&[("e1", 1), ("e2", 1), ("e3", 2)]);
        let (line, ms) = collapse_to_line(&alg, &g, &lim()).unwrap();
        assert_eq!(line, g);
        assert!(ms.is_empty());
    }

    #[test]
    fn degree_bound_strategy_validates_and_preserves() {
        let (alg, g) = abelian3_setup();
        let step = collapse_once(&alg, &g, CollapseStrategy::DegreeBound, &lim()).unwrap();
        assert!(step.lengths.is_none());
        // degree_bound m = 1 + (1 + 2 + 0) = 4
        assert_eq!(step.m, 4);
        let before = g.associated_polynomial(&alg, &lim()).unwrap().length();
        let after = step
            .grading
            .associated_polynomial(&alg, &lim())
            .unwrap()
            .length();
        assert_eq!(before, after);
    }

    #[test]
    fn reorder_vars_rotates_coordinates() {
        let g = multi(&[("e1", &[1, 0]), ("e2", &[2, 3])]);
        let r = g.reorder_vars(&[1, 0]).unwrap();
        assert_eq!(r.degree("e1").unwrap().entries(), &[0, 1]);
        assert_eq!(r.degree("e2").unwrap().entries(), &[3, 2]);
        assert!(g.reorder_vars(&[0, 0]).is_err());
    }

    #[test]
    fn factor_counts_group_equal_degrees() {
        let g = weights(&[("a", 1), ("b", 1), ("c", 2)]);
        let f = g.factor_list().unwrap();
        assert_eq!(f.factors().len(), 2);
        let p = f.expand(&lim()).unwrap();
        // constant term 1 and degree vector sum of d_alpha * alpha
        assert_eq!(p.constant_term(), num_bigint::BigInt::from(1));
        assert_eq!(p.degree_vec().entries(), &[4]);
        // checks against the dense staircase route as well
        assert_eq!(staircase_length(&f, &lim()).unwrap(), p.length());
    }

    #[test]
    fn grading_file_round_trip() {
        let g = multi(&[("e1", &[1, 0]), ("e2", &[0, 2])]);
        let json = serde_json::to_string(&g.to_file()).unwrap();
        let back = Grading::from_file(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, g);
    }
}

//! Lie algebras presented by exact rational structure constants.
//!
//! The bracket table is stored sparsely on ordered pairs `(i, j)` with
//! `i < j`; the other orientation is derived by antisymmetry and `[b, b]`
//! is structurally zero.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::linalg::{format_rational, parse_rational, rat, RatMatrix, SparseIntMatrix, Subspace};
use crate::{Error, Result};

/// Sparse vector: sorted `(coordinate, coefficient)` pairs.
pub type SparseVec = Vec<(usize, BigRational)>;

#[derive(Clone, Debug)]
pub struct StructureConstants {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    table: BTreeMap<(usize, usize), SparseVec>,
}

impl PartialEq for StructureConstants {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.table == other.table
    }
}
impl Eq for StructureConstants {}

impl StructureConstants {
    /// An algebra with all brackets zero.
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(StructureConstants {
            labels,
            index,
            table: BTreeMap::new(),
        })
    }

    pub fn abelian(n: usize) -> Self {
        StructureConstants::new((1..=n).map(|i| format!("e{}", i)).collect())
            .expect("generated labels are unique")
    }

    /// The Heisenberg algebra `h_m`: `[e_i, f_i] = z`, dimension `2m + 1`.
    pub fn heisenberg(m: usize) -> Self {
        let mut labels: Vec<String> = (1..=m).map(|i| format!("e{}", i)).collect();
        labels.extend((1..=m).map(|i| format!("f{}", i)));
        labels.push("z".to_string());
        let mut alg = StructureConstants::new(labels).expect("generated labels are unique");
        for i in 0..m {
            alg.set_bracket_idx(i, m + i, vec![(2 * m, rat(1))])
                .expect("valid indices");
        }
        alg
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Sets `[b_i, b_j]` for `i != j`; the pair is stored in `i < j`
    /// orientation with the sign adjusted.
    pub fn set_bracket_idx(&mut self, i: usize, j: usize, terms: SparseVec) -> Result<()> {
        if i >= self.dim() || j >= self.dim() || i == j {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: i.max(j),
            });
        }
        let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
        let mut vec: SparseVec = terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, if flip { -c } else { c }))
            .collect();
        vec.sort_by_key(|(k, _)| *k);
        if vec.is_empty() {
            self.table.remove(&key);
        } else {
            self.table.insert(key, vec);
        }
        Ok(())
    }

    pub fn set_bracket(&mut self, i: &str, j: &str, terms: &[(&str, BigRational)]) -> Result<()> {
        let iv = self.label_index(i)?;
        let jv = self.label_index(j)?;
        let terms = terms
            .iter()
            .map(|(k, c)| Ok((self.label_index(k)?, c.clone())))
            .collect::<Result<SparseVec>>()?;
        self.set_bracket_idx(iv, jv, terms)
    }

    /// `[b_i, b_j]` as a sparse vector (handles orientation and `i == j`).
    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        if i == j {
            return Vec::new();
        }
        if i < j {
            self.table.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            self.table
                .get(&(j, i))
                .map(|v| v.iter().map(|(k, c)| (*k, -c)).collect())
                .unwrap_or_default()
        }
    }

    /// Bilinear extension of the bracket table.
    pub fn bracket(&self, v: &[BigRational], w: &[BigRational]) -> Result<Vec<BigRational>> {
        let n = self.dim();
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        if w.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: w.len(),
            });
        }
        let mut out = vec![BigRational::zero(); n];
        for ((i, j), terms) in &self.table {
            let a = &v[*i] * &w[*j] - &v[*j] * &w[*i];
            if a.is_zero() {
                continue;
            }
            for (k, c) in terms {
                out[*k] += &a * c;
            }
        }
        Ok(out)
    }

    /// Bracket of two sparse vectors.
    pub fn bracket_sparse(&self, v: &SparseVec, w: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (i, a) in v {
            for (j, b) in w {
                let coeff = a * b;
                for (k, c) in self.bracket_basis(*i, *j) {
                    let e = acc.entry(k).or_insert_with(BigRational::zero);
                    *e += &coeff * c;
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// All triples `i < j < k` violating the Jacobi identity.
    pub fn check_jacobi(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let mut violations = Vec::new();
        let unit = |i: usize| -> SparseVec { vec![(i, rat(1))] };
        for i in 0..n {
            for j in (i + 1)..n {
                let bij = self.bracket_basis(i, j);
                for k in (j + 1)..n {
                    let bjk = self.bracket_basis(j, k);
                    let bki = self.bracket_basis(k, i);
                    let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
                    for (m, c) in self
                        .bracket_sparse(&bij, &unit(k))
                        .into_iter()
                        .chain(self.bracket_sparse(&bjk, &unit(i)))
                        .chain(self.bracket_sparse(&bki, &unit(j)))
                    {
                        let e = acc.entry(m).or_insert_with(BigRational::zero);
                        *e += c;
                    }
                    if acc.values().any(|c| !c.is_zero()) {
                        violations.push((i, j, k));
                    }
                }
            }
        }
        violations
    }

    fn stacked_adjoint(&self) -> SparseIntMatrix {
        let n = self.dim();
        let mut m = SparseIntMatrix::new(n);
        // One row per (fixed b_j, output coordinate k): the entry at column
        // i is the k-coordinate of [b_i, b_j].
        let mut rows: BTreeMap<(usize, usize), Vec<(usize, BigRational)>> = BTreeMap::new();
        for ((i, j), terms) in &self.table {
            for (k, c) in terms {
                rows.entry((*j, *k)).or_default().push((*i, c.clone()));
                rows.entry((*i, *k)).or_default().push((*j, -c));
            }
        }
        for (_, row) in rows {
            m.push_rational_row(row);
        }
        m
    }

    /// The center: the joint kernel of all adjoint maps.
    pub fn center(&self) -> Subspace {
        self.stacked_adjoint().kernel()
    }

    /// Span of all brackets `[b_i, w]` with `w` running over a subspace.
    fn bracket_span(&self, sub: &Subspace) -> Subspace {
        let mut rows = Vec::new();
        for w in sub.basis().rows() {
            let sparse: SparseVec = w
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect();
            for i in 0..self.dim() {
                let img = self.bracket_sparse(&vec![(i, rat(1))], &sparse);
                if !img.is_empty() {
                    let mut dense = vec![BigRational::zero(); self.dim()];
                    for (k, c) in img {
                        dense[k] = c;
                    }
                    rows.push(dense);
                }
            }
        }
        Subspace::new(self.dim(), rows)
    }

    /// The derived subalgebra `[n, n]`.
    pub fn derived_subalgebra(&self) -> Subspace {
        self.bracket_span(&Subspace::whole(self.dim()))
    }

    /// Lower central series `C^1 = n, C^{k+1} = [n, C^k]` down to zero,
    /// together with the nilpotency class (the last `k` with `C^k != 0`).
    pub fn lower_central_series(&self) -> Result<(Vec<Subspace>, usize)> {
        let mut series = vec![Subspace::whole(self.dim())];
        loop {
            let next = self.bracket_span(series.last().unwrap());
            if next.dim() == 0 {
                let class = series.len();
                series.push(next);
                return Ok((series, class));
            }
            if next.dim() >= series.last().unwrap().dim() || series.len() > self.dim() {
                return Err(Error::NotNilpotent);
            }
            series.push(next);
        }
    }

    /// Structure constants of the same algebra in the basis whose vectors
    /// are the columns of `p` (expressed in old coordinates).
    pub fn change_basis(&self, p: &RatMatrix) -> Result<StructureConstants> {
        let n = self.dim();
        if p.nrows() != n || p.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.nrows().max(p.ncols()),
            });
        }
        let p_inv = p.inverse()?;
        let mut out = StructureConstants::new(self.labels.clone())?;
        let col = |m: &RatMatrix, j: usize| -> Vec<BigRational> {
            (0..n).map(|i| m.get(i, j).clone()).collect()
        };
        for i in 0..n {
            let bi = col(p, i);
            for j in (i + 1)..n {
                let bj = col(p, j);
                let img_old = self.bracket(&bi, &bj)?;
                let img_new = p_inv.apply(&img_old)?;
                let terms: SparseVec = img_new
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                out.set_bracket_idx(i, j, terms)?;
            }
        }
        Ok(out)
    }

    /// Nonzero ordered bracket pairs `(i, j)` with `i < j`.
    pub fn nonzero_pairs(&self) -> impl Iterator<Item = (usize, usize, &SparseVec)> {
        self.table.iter().map(|((i, j), v)| (*i, *j, v))
    }
}

// --- file format --------------------------------------------------------

/// Wire form: rational coefficients as decimal strings (`p` or `p/q`);
/// omitted pairs are zero.
#[derive(Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketFile>,
}

#[derive(Serialize, Deserialize)]
pub struct BracketFile {
    pub i: String,
    pub j: String,
    pub terms: Vec<BracketTermFile>,
}

#[derive(Serialize, Deserialize)]
pub struct BracketTermFile {
    pub k: String,
    pub c: String,
}

impl StructureConstants {
    pub fn to_file(&self) -> AlgebraFile {
        AlgebraFile {
            dim: self.dim(),
            basis: self.labels.clone(),
            brackets: self
                .table
                .iter()
                .map(|((i, j), terms)| BracketFile {
                    i: self.labels[*i].clone(),
                    j: self.labels[*j].clone(),
                    terms: terms
                        .iter()
                        .map(|(k, c)| BracketTermFile {
                            k: self.labels[*k].clone(),
                            c: format_rational(c),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Parses the file format. Either orientation of a pair may appear;
    /// duplicates are accepted only when they agree up to antisymmetry.
    pub fn from_file(file: &AlgebraFile) -> Result<StructureConstants> {
        if file.basis.len() != file.dim {
            return Err(Error::DimensionMismatch {
                expected: file.dim,
                got: file.basis.len(),
            });
        }
        let mut alg = StructureConstants::new(file.basis.clone())?;
        let mut seen: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for b in &file.brackets {
            let i = alg.label_index(&b.i)?;
            let j = alg.label_index(&b.j)?;
            if i == j {
                return Err(Error::InconsistentBracket(b.i.clone(), b.j.clone()));
            }
            let mut terms = SparseVec::new();
            for t in &b.terms {
                let k = alg.label_index(&t.k)?;
                terms.push((k, parse_rational(&t.c)?));
            }
            let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
            let mut canon: SparseVec = terms
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, if flip { -c } else { c }))
                .collect();
            canon.sort_by_key(|(k, _)| *k);
            if let Some(prev) = seen.get(&key) {
                if *prev != canon {
                    return Err(Error::InconsistentBracket(b.i.clone(), b.j.clone()));
                }
            } else {
                seen.insert(key, canon.clone());
                alg.set_bracket_idx(key.0, key.1, canon)?;
            }
        }
        Ok(alg)
    }
}

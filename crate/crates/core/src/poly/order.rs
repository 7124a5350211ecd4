use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Term;
use crate::error::{Error, Result};
use crate::field::Rational;
use crate::matrix::Matrix;

/// What a weight matrix was built as. Purely informational: comparisons
/// always go through the matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderingKind {
    DegRevLex,
    Lex,
    /// Elimination ordering for the listed indeterminate indices.
    Elimination(Vec<usize>),
    Custom,
}

/// A term ordering given by an integer weight matrix.
///
/// `s > t` iff the first nonzero entry of `W * (log s - log t)` is positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermOrdering {
    kind: OrderingKind,
    weights: Vec<Vec<i64>>,
}

impl TermOrdering {
    pub fn degrevlex(nvars: usize) -> Self {
        let mut weights = vec![vec![1; nvars]];
        for i in (1..nvars).rev() {
            weights.push(neg_unit(nvars, i));
        }
        TermOrdering {
            kind: OrderingKind::DegRevLex,
            weights,
        }
    }

    pub fn lex(nvars: usize) -> Self {
        let weights = (0..nvars)
            .map(|i| {
                let mut row = vec![0; nvars];
                row[i] = 1;
                row
            })
            .collect();
        TermOrdering {
            kind: OrderingKind::Lex,
            weights,
        }
    }

    /// Block elimination ordering for `elim`: the first row counts the
    /// degree in the eliminated indeterminates, followed by DegRevLex on the
    /// remaining ones and a DegRevLex tie-break inside the eliminated block.
    ///
    /// With `elim` equal to all indeterminates this is exactly DegRevLex.
    pub fn elimination(elim: &[usize], nvars: usize) -> Result<Self> {
        let weights = vec![1; elim.len()];
        Self::weighted_elimination(elim, &weights, nvars)
    }

    /// Like [`TermOrdering::elimination`] but with positive weights on the
    /// eliminated block in the first row. Every such matrix is an
    /// elimination ordering for `elim`.
    pub fn weighted_elimination(elim: &[usize], weights: &[i64], nvars: usize) -> Result<Self> {
        let elim = check_selection(elim, nvars)?;
        if weights.len() != elim.len() || weights.iter().any(|&w| w <= 0) {
            return Err(Error::NotATermOrdering(
                "elimination weights must be positive, one per indeterminate".into(),
            ));
        }
        let is_elim = membership(&elim, nvars);
        let rest: Vec<usize> = (0..nvars).filter(|&i| !is_elim[i]).collect();

        let mut first = vec![0; nvars];
        let mut sorted_pairs: Vec<(usize, i64)> =
            elim.iter().copied().zip(weights.iter().copied()).collect();
        sorted_pairs.sort_unstable();
        for &(i, w) in &sorted_pairs {
            first[i] = w;
        }
        let mut rows = vec![first];
        rows.extend(degrevlex_block(&rest, nvars));
        let mut sorted = elim.clone();
        sorted.sort_unstable();
        let uniform = weights.iter().all(|&w| w == weights[0]);
        if uniform {
            // block degree is already the first row
            for &i in sorted.iter().skip(1).rev() {
                rows.push(neg_unit(nvars, i));
            }
        } else {
            rows.extend(degrevlex_block(&sorted, nvars));
        }
        let ordering = TermOrdering {
            kind: OrderingKind::Elimination(sorted),
            weights: rows,
        };
        if !uniform {
            // the extra block rows make the matrix non-square; rank is still n
            ordering.validate()?;
        }
        Ok(ordering)
    }

    /// Elimination ordering that is Lex on the eliminated block (in the
    /// given order) and DegRevLex on the rest.
    pub fn lex_elimination(elim: &[usize], nvars: usize) -> Result<Self> {
        let elim = check_selection(elim, nvars)?;
        let is_elim = membership(&elim, nvars);
        let rest: Vec<usize> = (0..nvars).filter(|&i| !is_elim[i]).collect();
        let mut rows: Vec<Vec<i64>> = elim
            .iter()
            .map(|&i| {
                let mut row = vec![0; nvars];
                row[i] = 1;
                row
            })
            .collect();
        rows.extend(degrevlex_block(&rest, nvars));
        let mut sorted = elim.clone();
        sorted.sort_unstable();
        Ok(TermOrdering {
            kind: OrderingKind::Elimination(sorted),
            weights: rows,
        })
    }

    /// Validates an explicit weight matrix.
    pub fn from_matrix(weights: Vec<Vec<i64>>) -> Result<Self> {
        let ordering = TermOrdering {
            kind: OrderingKind::Custom,
            weights,
        };
        ordering.validate()?;
        Ok(ordering)
    }

    fn validate(&self) -> Result<()> {
        let nvars = self.weights.first().map_or(0, Vec::len);
        if self.weights.iter().any(|r| r.len() != nvars) {
            return Err(Error::NotATermOrdering("rows of unequal length".into()));
        }
        if nvars == 0 {
            return Err(Error::NotATermOrdering("empty matrix".into()));
        }
        for col in 0..nvars {
            match self.weights.iter().map(|r| r[col]).find(|&w| w != 0) {
                Some(w) if w > 0 => {}
                _ => {
                    return Err(Error::NotATermOrdering(format!(
                        "first nonzero entry of column {} is not positive",
                        col + 1
                    )))
                }
            }
        }
        let m = Matrix::<Rational>::from_i64_rows(&self.weights);
        if m.rank() != nvars {
            return Err(Error::NotATermOrdering("matrix is not of full column rank".into()));
        }
        Ok(())
    }

    pub fn kind(&self) -> &OrderingKind {
        &self.kind
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn arity(&self) -> usize {
        self.weights.first().map_or(0, Vec::len)
    }

    /// Compares two terms, checking arities.
    pub fn cmp(&self, s: &Term, t: &Term) -> Result<Ordering> {
        for term in [s, t] {
            if term.arity() != self.arity() {
                return Err(Error::ArityMismatch {
                    expected: self.arity(),
                    found: term.arity(),
                });
            }
        }
        Ok(self.compare(s, t))
    }

    /// Compares two terms of the correct arity.
    pub fn compare(&self, s: &Term, t: &Term) -> Ordering {
        if s == t {
            return Ordering::Equal;
        }
        for row in &self.weights {
            let d: i64 = row
                .iter()
                .zip(s.exps().iter().zip(t.exps()))
                .map(|(w, (&a, &b))| w * (a as i64 - b as i64))
                .sum();
            match d.cmp(&0) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        Ordering::Equal
    }

    /// The weight vector `W * log(t)`; comparing these lexicographically is
    /// the same as comparing the terms.
    pub fn weight_key(&self, exps: &[u32]) -> Vec<i64> {
        self.weights
            .iter()
            .map(|row| row.iter().zip(exps).map(|(w, &e)| w * e as i64).sum())
            .collect()
    }

    /// Whether every term containing an indeterminate of `elim` is larger
    /// than every term free of them.
    ///
    /// Sufficient check: either the first row is positive on `elim` and zero
    /// elsewhere, or the leading rows that vanish outside `elim` form a valid
    /// ordering matrix on the `elim` block.
    pub fn is_elimination_for(&self, elim: &[usize]) -> bool {
        let n = self.arity();
        if elim.is_empty() || elim.iter().any(|&i| i >= n) {
            return false;
        }
        let is_elim = membership(elim, n);
        let first = &self.weights[0];
        if (0..n).all(|i| if is_elim[i] { first[i] > 0 } else { first[i] == 0 }) {
            return true;
        }
        let prefix: Vec<Vec<i64>> = self
            .weights
            .iter()
            .take_while(|row| (0..n).all(|i| is_elim[i] || row[i] == 0))
            .map(|row| elim.iter().map(|&i| row[i]).collect())
            .collect();
        if prefix.is_empty() {
            return false;
        }
        let columns_ok = (0..elim.len()).all(|c| {
            prefix
                .iter()
                .map(|r| r[c])
                .find(|&w| w != 0)
                .is_some_and(|w| w > 0)
        });
        columns_ok && Matrix::<Rational>::from_i64_rows(&prefix).rank() == elim.len()
    }
}

fn neg_unit(nvars: usize, i: usize) -> Vec<i64> {
    let mut row = vec![0; nvars];
    row[i] = -1;
    row
}

/// DegRevLex restricted to the indeterminates in `block` (sorted by index).
fn degrevlex_block(block: &[usize], nvars: usize) -> Vec<Vec<i64>> {
    if block.is_empty() {
        return Vec::new();
    }
    let mut rows = Vec::with_capacity(block.len());
    let mut deg = vec![0; nvars];
    for &i in block {
        deg[i] = 1;
    }
    rows.push(deg);
    for &i in block.iter().skip(1).rev() {
        rows.push(neg_unit(nvars, i));
    }
    rows
}

fn check_selection(sel: &[usize], nvars: usize) -> Result<Vec<usize>> {
    if sel.is_empty() {
        return Err(Error::EmptyIndeterminates);
    }
    let mut seen = vec![false; nvars];
    for &i in sel {
        if i >= nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: nvars,
            });
        }
        if seen[i] {
            return Err(Error::DuplicateIndeterminate(format!("#{}", i + 1)));
        }
        seen[i] = true;
    }
    Ok(sel.to_vec())
}

fn membership(sel: &[usize], nvars: usize) -> Vec<bool> {
    let mut m = vec![false; nvars];
    for &i in sel {
        if i < nvars {
            m[i] = true;
        }
    }
    m
}

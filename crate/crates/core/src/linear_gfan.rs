//! Gröbner fans of ideals generated by linear forms.
//!
//! For an ideal generated by linearly independent forms with coefficient
//! matrix `A` (r x n), the marked reduced Gröbner bases correspond one to one
//! with the column index sets `idx` for which the square submatrix `A_idx`
//! is invertible, i.e. with the bases of the column matroid of `A`. The
//! basis for `idx` is read off from `A_idx^{-1} A`.

use std::collections::HashSet;

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::{linear_forms_matrix, Poly, Ring, Term, TermOrdering};

/// Combinations C(n, r) up to which the automatic backend enumerates all
/// maximal minors instead of walking basis exchanges.
pub const EXHAUSTIVE_LIMIT: u128 = 50_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FanBackend {
    /// Test every maximal minor.
    Exhaustive,
    /// Breadth-first search over basis exchanges from one seed basis.
    Exchange,
    /// Exhaustive for small inputs, exchange otherwise.
    #[default]
    Auto,
}

/// A marked reduced Gröbner basis of a linear ideal: pairs of a marker
/// indeterminate and a linear form with coefficient one at the marker and
/// zero at every other marker.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedReducedGB<F> {
    /// Sorted by marker index.
    pub pairs: Vec<(usize, Poly<F>)>,
}

impl<F: Field> MarkedReducedGB<F> {
    pub fn markers(&self) -> Vec<usize> {
        self.pairs.iter().map(|(m, _)| *m).collect()
    }

    pub fn forms(&self) -> Vec<Poly<F>> {
        self.pairs.iter().map(|(_, f)| f.clone()).collect()
    }

    /// Text form such as `{(x, x - z + 2w), (y, y + 2w)}`.
    pub fn display(&self, ring: &Ring) -> String {
        let n = ring.arity();
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|(m, f)| format!("({}, {})", ring.name(*m), ring.fmt_marked(&Term::var(n, *m), f)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// The Gröbner fan of a linear ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFan<F> {
    /// Column index sets of the nonsingular maximal minors, lexicographic.
    pub bases: Vec<Vec<usize>>,
    /// One marked reduced Gröbner basis per entry of `bases`.
    pub gbs: Vec<MarkedReducedGB<F>>,
}

impl<F> LinearFan<F> {
    pub fn len(&self) -> usize {
        self.gbs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gbs.is_empty()
    }
}

fn check_indices(ncols: usize, idx: &[usize]) -> Result<()> {
    if let Some(&bad) = idx.iter().find(|&&j| j >= ncols) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            bound: ncols,
        });
    }
    if idx.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidJob("column indices must be strictly increasing".into()));
    }
    Ok(())
}

/// Whether the selected columns of `a` are linearly independent.
pub fn column_submatrix_rank_ok<F: Field>(a: &Matrix<F>, idx: &[usize]) -> Result<bool> {
    check_indices(a.ncols(), idx)?;
    a.columns_independent(idx)
}

/// The marked reduced Gröbner basis with markers `idx`, computed as
/// `A_idx^{-1} A`.
pub fn reduced_gb_for_basis<F: Field>(a: &Matrix<F>, idx: &[usize]) -> Result<MarkedReducedGB<F>> {
    check_indices(a.ncols(), idx)?;
    if idx.len() != a.nrows() {
        return Err(Error::SingularSubmatrix);
    }
    let inv = a.select_columns(idx)?.inverse()?;
    let reduced = inv.mul(a)?;
    Ok(MarkedReducedGB {
        pairs: idx
            .iter()
            .zip(reduced.rows())
            .map(|(&m, row)| (m, Poly::from_linear(row)))
            .collect(),
    })
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// All r-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut c: Vec<usize> = (0..r).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..r).rev().find(|&i| c[i] != i + n - r) else {
            return out;
        };
        c[i] += 1;
        for k in i + 1..r {
            c[k] = c[k - 1] + 1;
        }
    }
}

/// Bases of the column matroid by testing every maximal minor.
pub fn matroid_bases_exhaustive<F: Field>(a: &Matrix<F>) -> Result<Vec<Vec<usize>>> {
    let r = a.nrows();
    if a.rank() < r {
        return Err(Error::RankDeficient);
    }
    let all = combinations(a.ncols(), r);
    let mut keep: Vec<Vec<usize>> = all
        .into_par_iter()
        .filter(|idx| a.columns_independent(idx).unwrap_or(false))
        .collect();
    keep.sort();
    Ok(keep)
}

/// Gauss–Jordan pivot making column `col` the unit vector `e_row`.
fn pivot<F: Field>(m: &mut [Vec<F>], row: usize, col: usize) {
    let inv = m[row][col].inv();
    for v in m[row].iter_mut() {
        *v *= &inv;
    }
    let prow = m[row].clone();
    for (r, line) in m.iter_mut().enumerate() {
        if r == row || line[col].is_zero() {
            continue;
        }
        let f = line[col].clone();
        for (v, p) in line.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *v -= &(f.clone() * p.clone());
            }
        }
    }
}

/// Bases of the column matroid, found by a breadth-first walk over basis
/// exchanges. With `B` a basis and `A' = A_B^{-1} A`, the set
/// `B - B[i] + j` is again a basis exactly when `A'[i][j] != 0`, and the
/// exchange graph is connected, so the walk reaches every basis. The cost
/// grows with the number of bases rather than with C(n, r).
pub fn matroid_bases_exchange<F: Field>(a: &Matrix<F>) -> Result<Vec<Vec<usize>>> {
    let r = a.nrows();
    let (red, seed) = a.rref();
    if seed.len() < r {
        return Err(Error::RankDeficient);
    }
    if r == 0 {
        return Ok(vec![Vec::new()]);
    }
    // Row k of each tableau is the form marked by basis[k].
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(seed.clone());
    let mut frontier: Vec<(Vec<usize>, Vec<Vec<F>>)> = vec![(seed, red.to_rows())];
    while !frontier.is_empty() {
        let found: Vec<(Vec<usize>, Vec<Vec<F>>)> = frontier
            .par_iter()
            .flat_map_iter(|(basis, tab)| {
                let mut next = Vec::new();
                for (i, row) in tab.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        if v.is_zero() || basis.contains(&j) {
                            continue;
                        }
                        let mut nb = basis.clone();
                        nb[i] = j;
                        let mut key = nb.clone();
                        key.sort_unstable();
                        if seen.contains(&key) {
                            continue;
                        }
                        let mut t = tab.clone();
                        pivot(&mut t, i, j);
                        next.push((key, nb, t));
                    }
                }
                next.into_iter().map(|(key, nb, t)| {
                    // Store the tableau with rows ordered like the sorted key.
                    let mut order: Vec<usize> = (0..nb.len()).collect();
                    order.sort_by_key(|&k| nb[k]);
                    let t = order.iter().map(|&k| t[k].clone()).collect();
                    (key, t)
                })
            })
            .collect();
        let mut next = Vec::new();
        for (key, t) in found {
            if seen.insert(key.clone()) {
                next.push((key, t));
            }
        }
        frontier = next;
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Bases of the column matroid of a matrix with independent rows.
pub fn matroid_bases<F: Field>(a: &Matrix<F>) -> Result<Vec<Vec<usize>>> {
    matroid_bases_exchange(a)
}

fn with_backend<F: Field>(a: &Matrix<F>, backend: FanBackend) -> Result<Vec<Vec<usize>>> {
    match backend {
        FanBackend::Exhaustive => matroid_bases_exhaustive(a),
        FanBackend::Exchange => matroid_bases_exchange(a),
        FanBackend::Auto => {
            if binomial(a.ncols(), a.nrows()) <= EXHAUSTIVE_LIMIT {
                matroid_bases_exhaustive(a)
            } else {
                matroid_bases_exchange(a)
            }
        }
    }
}

/// The coefficient matrix of a basis of the span of `forms`. Dependent
/// input is reduced to its row echelon basis with a warning.
pub fn independent_coefficients<F: Field>(forms: &[Poly<F>], nvars: usize) -> Result<Matrix<F>> {
    let a = linear_forms_matrix(forms, nvars)?;
    let rank = a.rank();
    if rank < a.nrows() {
        if forms.iter().any(|f| !f.is_zero()) {
            warn!(
                "{} linear forms span only a {}-dimensional space; using a basis",
                forms.len(),
                rank
            );
        }
        return Ok(a.rref().0);
    }
    Ok(a)
}

/// The Gröbner fan of the ideal generated by the linear forms `forms`.
///
/// The zero ideal (no forms, or only zero forms) has the one-element fan
/// consisting of the empty basis.
pub fn gfan_linear_with<F: Field>(
    forms: &[Poly<F>],
    nvars: usize,
    backend: FanBackend,
) -> Result<LinearFan<F>> {
    let a = independent_coefficients(forms, nvars)?;
    if a.nrows() == 0 {
        return Ok(LinearFan {
            bases: vec![Vec::new()],
            gbs: vec![MarkedReducedGB { pairs: Vec::new() }],
        });
    }
    let bases = with_backend(&a, backend)?;
    let gbs = bases
        .par_iter()
        .map(|idx| reduced_gb_for_basis(&a, idx))
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearFan { bases, gbs })
}

pub fn gfan_linear<F: Field>(forms: &[Poly<F>], nvars: usize) -> Result<LinearFan<F>> {
    gfan_linear_with(forms, nvars, FanBackend::Auto)
}

/// The leading-term sets (as sorted indeterminate indices) of the fan.
pub fn ltgfan_linear<F: Field>(forms: &[Poly<F>], nvars: usize) -> Result<Vec<Vec<usize>>> {
    let a = independent_coefficients(forms, nvars)?;
    if a.nrows() == 0 {
        return Ok(vec![Vec::new()]);
    }
    with_backend(&a, FanBackend::Auto)
}

/// The indeterminates that are leading terms of the reduced `o`-Gröbner
/// basis of the ideal generated by `forms`, ascending by index.
///
/// Gaussian elimination with the columns sorted by `o` descending yields
/// this basis directly.
pub fn linear_leading_terms<F: Field>(
    forms: &[Poly<F>],
    nvars: usize,
    o: &TermOrdering,
) -> Result<Vec<usize>> {
    let a = linear_forms_matrix(forms, nvars)?;
    let mut cols: Vec<usize> = (0..nvars).collect();
    cols.sort_by(|&i, &j| o.compare(&Term::var(nvars, j), &Term::var(nvars, i)));
    let (_, piv) = a.select_columns(&cols)?.rref();
    let mut out: Vec<usize> = piv.into_iter().map(|p| cols[p]).collect();
    out.sort_unstable();
    Ok(out)
}

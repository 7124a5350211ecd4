//! Cotangent equivalence classes of indeterminates.
//!
//! For a space `L` of linear forms, `x_i ~ x_j` when the residues of `x_i`
//! and `x_j` in `P_1 / L` span the same line. Indeterminates with residue
//! zero are trivial; a nonzero residue equivalent to no other indeterminate
//! is basic; the remaining classes have at least two members and are
//! called proper.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{linear_forms_matrix, Poly, Term, TermOrdering};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CotangentClasses {
    pub nvars: usize,
    /// The class of indeterminates with zero residue.
    pub trivial: Vec<usize>,
    pub basic: Vec<usize>,
    /// Classes of size at least two, each ascending, ordered by first member.
    pub proper: Vec<Vec<usize>>,
}

impl CotangentClasses {
    fn from_groups(nvars: usize, mut trivial: Vec<usize>, groups: Vec<Vec<usize>>) -> Self {
        trivial.sort_unstable();
        let mut basic = Vec::new();
        let mut proper = Vec::new();
        for mut g in groups {
            g.sort_unstable();
            if g.len() == 1 {
                basic.push(g[0]);
            } else {
                proper.push(g);
            }
        }
        basic.sort_unstable();
        proper.sort();
        CotangentClasses {
            nvars,
            trivial,
            basic,
            proper,
        }
    }

    /// The union of the trivial and the proper classes; its complement is
    /// the set of basic indeterminates.
    pub fn support_union(&self) -> Vec<usize> {
        let mut u: Vec<usize> = self.trivial.clone();
        u.extend(self.proper.iter().flatten());
        u.sort_unstable();
        u
    }

    /// Number of leading-term sets, `prod |E_i|`.
    pub fn fan_size(&self) -> u128 {
        self.proper.iter().map(|c| c.len() as u128).product()
    }

    /// Whether the parts partition `0..nvars`.
    pub fn is_partition(&self) -> bool {
        let mut seen = vec![0u32; self.nvars];
        for &i in self.trivial.iter().chain(&self.basic).chain(self.proper.iter().flatten()) {
            if i >= self.nvars {
                return false;
            }
            seen[i] += 1;
        }
        seen.iter().all(|&c| c == 1)
    }
}

fn coefficient_rows<F: Field>(forms: &[Poly<F>], nvars: usize) -> Result<Vec<Vec<F>>> {
    for f in forms {
        if !f.is_linear_form() {
            return Err(Error::NotLinear);
        }
    }
    Ok(linear_forms_matrix(forms, nvars)?.to_rows())
}

/// Whether every form has at most two terms.
pub fn is_binomial<F: Field>(forms: &[Poly<F>]) -> bool {
    forms.iter().all(|f| f.len() <= 2)
}

/// Classes computed from residues: reduce every `x_i` modulo the reduced row
/// echelon basis of `L` and group the nonzero normal forms by the line
/// they span. Works for arbitrary linear forms.
pub fn cotangent_classes_generic<F: Field>(forms: &[Poly<F>], nvars: usize) -> Result<CotangentClasses> {
    let rows = coefficient_rows(forms, nvars)?;
    let (red, pivots) = crate::matrix::Matrix::from_rows(rows, nvars)?.rref();
    let mut pivot_row = vec![None; nvars];
    for (r, &p) in pivots.iter().enumerate() {
        pivot_row[p] = Some(r);
    }
    let mut trivial = Vec::new();
    let mut lines: HashMap<Vec<F>, Vec<usize>> = HashMap::new();
    let mut order: Vec<Vec<F>> = Vec::new();
    for i in 0..nvars {
        // normal form of x_i: x_i itself, or x_i minus its pivot row
        let nf: Vec<F> = match pivot_row[i] {
            None => (0..nvars).map(|j| if j == i { F::one() } else { F::zero() }).collect(),
            Some(r) => (0..nvars)
                .map(|j| if j == i { F::zero() } else { -red.get(r, j).clone() })
                .collect(),
        };
        let Some(lead) = nf.iter().find(|c| !c.is_zero()).cloned() else {
            trivial.push(i);
            continue;
        };
        let inv = lead.inv();
        let key: Vec<F> = nf.into_iter().map(|c| c * inv.clone()).collect();
        lines
            .entry(key.clone())
            .or_insert_with(|| {
                order.push(key);
                Vec::new()
            })
            .push(i);
    }
    let groups = order.into_iter().map(|k| lines.remove(&k).unwrap()).collect();
    Ok(CotangentClasses::from_groups(nvars, trivial, groups))
}

/// Union-find with multiplicative potentials: `ratio[i]` relates the
/// residue of `x_i` to that of its root.
struct RatioUnionFind<F> {
    parent: Vec<usize>,
    ratio: Vec<F>,
    dead: Vec<bool>,
}

impl<F: Field> RatioUnionFind<F> {
    fn new(n: usize) -> Self {
        RatioUnionFind {
            parent: (0..n).collect(),
            ratio: vec![F::one(); n],
            dead: vec![false; n],
        }
    }

    /// Root of `i` and the factor `r` with `res(x_i) = r * res(x_root)`.
    fn find(&mut self, i: usize) -> (usize, F) {
        let p = self.parent[i];
        if p == i {
            return (i, F::one());
        }
        let (root, r) = self.find(p);
        let total = self.ratio[i].clone() * r;
        self.parent[i] = root;
        self.ratio[i] = total.clone();
        (root, total)
    }

    fn kill(&mut self, i: usize) {
        let (root, _) = self.find(i);
        self.dead[root] = true;
    }

    /// Records `a x_i + b x_j = 0`, i.e. `res(x_i) = (-b/a) res(x_j)`.
    fn relate(&mut self, i: usize, a: &F, j: usize, b: &F) {
        let (ri, fi) = self.find(i);
        let (rj, fj) = self.find(j);
        let want = -(b.clone() / a.clone());
        if ri == rj {
            // consistent cycle iff fi = want * fj
            if fi != want * fj {
                self.dead[ri] = true;
            }
            return;
        }
        // res(ri) = res(x_i)/fi = want * fj / fi * res(rj)
        let r = want * fj / fi;
        self.parent[ri] = rj;
        self.ratio[ri] = r;
        if self.dead[ri] {
            self.dead[rj] = true;
        }
    }
}

/// Classes for forms with at most two terms each, by weighted union-find.
pub fn cotangent_classes_binomial<F: Field>(forms: &[Poly<F>], nvars: usize) -> Result<CotangentClasses> {
    let rows = coefficient_rows(forms, nvars)?;
    let mut uf = RatioUnionFind::new(nvars);
    for row in &rows {
        let nz: Vec<usize> = (0..nvars).filter(|&j| !row[j].is_zero()).collect();
        match nz.as_slice() {
            [] => {}
            [i] => uf.kill(*i),
            [i, j] => uf.relate(*i, &row[*i], *j, &row[*j]),
            _ => return Err(Error::InvalidJob("form with more than two terms".into())),
        }
    }
    let mut trivial = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for i in 0..nvars {
        let (root, _) = uf.find(i);
        if uf.dead[root] {
            trivial.push(i);
        } else {
            let k = *slot.entry(root).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[k].push(i);
        }
    }
    Ok(CotangentClasses::from_groups(nvars, trivial, groups))
}

/// Cotangent classes of the span of `forms`: union-find for binomial input,
/// residue normal forms otherwise.
pub fn cotangent_classes<F: Field>(forms: &[Poly<F>], nvars: usize) -> Result<CotangentClasses> {
    if is_binomial(forms) {
        cotangent_classes_binomial(forms, nvars)
    } else {
        cotangent_classes_generic(forms, nvars)
    }
}

/// Union of the supports of the forms, ascending. For any spanning set of
/// the same space this is the same set.
pub fn support_union<F: Field>(forms: &[Poly<F>], nvars: usize) -> Vec<usize> {
    let mut seen = vec![false; nvars];
    for f in forms {
        for i in f.support_vars() {
            seen[i] = true;
        }
    }
    (0..nvars).filter(|&i| seen[i]).collect()
}

/// The σ-smallest member of a class.
pub fn sigma_smallest(class: &[usize], o: &TermOrdering) -> Option<usize> {
    let n = o.arity();
    class
        .iter()
        .copied()
        .min_by(|&a, &b| o.compare(&Term::var(n, a), &Term::var(n, b)))
}

/// `E_0` together with every proper class minus its σ-smallest member;
/// for binomial linear parts these are the leading indeterminates of the
/// reduced σ-Gröbner basis of `L`.
pub fn sigma_leading_s(classes: &CotangentClasses, o: &TermOrdering) -> Vec<usize> {
    let mut s = classes.trivial.clone();
    for class in &classes.proper {
        let low = sigma_smallest(class, o).expect("proper classes are nonempty");
        s.extend(class.iter().copied().filter(|&i| i != low));
    }
    s.sort_unstable();
    s
}

/// All sets `E_0 ∪ E_1* ∪ ... ∪ E_q*` where `E_i*` omits one member of
/// `E_i`, sorted lexicographically. Choices are generated class by class,
/// members in ascending order.
pub fn enumerate_ltgfan_binomial(classes: &CotangentClasses) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![classes.trivial.clone()];
    for class in &classes.proper {
        let mut next = Vec::with_capacity(out.len() * class.len());
        for partial in &out {
            for &omit in class {
                let mut z = partial.clone();
                z.extend(class.iter().copied().filter(|&i| i != omit));
                next.push(z);
            }
        }
        out = next;
    }
    for z in out.iter_mut() {
        z.sort_unstable();
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::poly::Ring;

    fn forms(names: &[&str], text: &str) -> Vec<Poly<Rational>> {
        Ring::new(names).unwrap().parse_polys(text).unwrap()
    }

    #[test]
    fn simple_cases() {
        let f = forms(&["a", "b"], "a");
        let c = cotangent_classes(&f, 2).unwrap();
        assert_eq!((c.trivial.clone(), c.basic.clone()), (vec![0], vec![1]));
        assert!(c.proper.is_empty());

        let f = forms(&["a", "b", "c", "d"], "a - b, b - c");
        let c = cotangent_classes(&f, 4).unwrap();
        assert_eq!(c.proper, vec![vec![0, 1, 2]]);
        assert_eq!(c.basic, vec![3]);
        assert_eq!(c, cotangent_classes_generic(&f, 4).unwrap());
    }

    #[test]
    fn inconsistent_cycle_is_trivial() {
        let f = forms(&["a", "b", "c"], "a - b, a + b");
        let c = cotangent_classes(&f, 3).unwrap();
        assert_eq!(c.trivial, vec![0, 1]);
        assert_eq!(c, cotangent_classes_generic(&f, 3).unwrap());
        let f = forms(&["a", "b", "c"], "2a - 3b, 4a - 6b, b - c");
        let c = cotangent_classes(&f, 3).unwrap();
        assert_eq!(c.proper, vec![vec![0, 1, 2]]);
        assert_eq!(c, cotangent_classes_generic(&f, 3).unwrap());
    }

    #[test]
    fn non_binomial_uses_residues() {
        let f = forms(&["a", "b", "c"], "a + b + c");
        let c = cotangent_classes(&f, 3).unwrap();
        assert!(c.trivial.is_empty());
        assert_eq!(c.basic, vec![0, 1, 2]);
        assert!(cotangent_classes(&forms(&["a"], "a^2"), 1).is_err());
    }

    #[test]
    fn enumeration_and_sigma_set() {
        let f = forms(&["a", "b", "c", "d", "e"], "a, b - c, d - e");
        let c = cotangent_classes(&f, 5).unwrap();
        let fan = enumerate_ltgfan_binomial(&c);
        assert_eq!(fan.len() as u128, c.fan_size());
        assert_eq!(fan, vec![vec![0, 1, 3], vec![0, 1, 4], vec![0, 2, 3], vec![0, 2, 4]]);
        assert_eq!(sigma_leading_s(&c, &TermOrdering::degrevlex(5)), vec![0, 1, 3]);
        assert_eq!(support_union(&f, 5), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn single_class_without_trivial_part() {
        let f = forms(&["a", "b"], "a - b");
        let c = cotangent_classes(&f, 2).unwrap();
        assert_eq!(enumerate_ltgfan_binomial(&c), vec![vec![0], vec![1]]);
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

/// A power product `x_1^a_1 ... x_n^a_n`, stored as its exponent vector.
///
/// The derived `Ord` is the plain lexicographic order on exponent vectors.
/// It is only used to key maps deterministically; term orderings are
/// handled by [`TermOrdering`](super::TermOrdering).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Term {
    exps: Vec<u32>,
}

impl Term {
    pub fn one(nvars: usize) -> Self {
        Term {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Term { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Term { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// The index `i` if this term is the indeterminate `x_i`.
    pub fn as_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 if found.is_none() => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    pub fn exp(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn mul(&self, other: &Term) -> Term {
        debug_assert_eq!(self.arity(), other.arity());
        Term {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul_var(&self, index: usize) -> Term {
        let mut exps = self.exps.clone();
        exps[index] += 1;
        Term { exps }
    }

    pub fn divides(&self, other: &Term) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn checked_div(&self, other: &Term) -> Option<Term> {
        if !other.divides(self) {
            return None;
        }
        Some(Term {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn lcm(&self, other: &Term) -> Term {
        Term {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Term) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of indeterminates occurring in the term.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Componentwise difference `log(self) - log(other)`.
    pub fn log_difference(&self, other: &Term) -> Vec<i64> {
        self.exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term{:?}", self.exps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_term_arithmetic() {
        let s = Term::from_exps(vec![2, 1, 0]);
        let t = Term::from_exps(vec![1, 3, 0]);
        assert_eq!(s.mul(&t).exps(), &[3, 4, 0]);
        assert_eq!(s.lcm(&t).exps(), &[2, 3, 0]);
        assert!(!s.divides(&t));
        assert_eq!(
            s.mul(&t).checked_div(&t),
            Some(Term::from_exps(vec![2, 1, 0]))
        );
        assert_eq!(Term::var(3, 1).as_var(), Some(1));
        assert_eq!(s.as_var(), None);
        assert_eq!(Term::one(3).as_var(), None);
        assert_eq!(s.degree(), 3);
    }
}

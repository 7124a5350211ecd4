use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;

use super::{Term, TermOrdering};
use crate::error::{Error, Result};
use crate::field::Field;

/// A sparse multivariate polynomial: a finite map from terms to nonzero
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<F> {
    nvars: usize,
    terms: BTreeMap<Term, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(Term::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::monomial(Term::var(nvars, index), F::one())
    }

    pub fn monomial(term: Term, c: F) -> Self {
        let nvars = term.arity();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(term, c);
        }
        Poly { nvars, terms }
    }

    /// Builds a polynomial from (term, coefficient) pairs, summing repeats.
    pub fn from_terms(nvars: usize, pairs: impl IntoIterator<Item = (Term, F)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (t, c) in pairs {
            debug_assert_eq!(t.arity(), nvars);
            p.add_term(t, &c);
        }
        p
    }

    /// The linear form `sum coeffs[i] * x_i`.
    pub fn from_linear(coeffs: &[F]) -> Self {
        let n = coeffs.len();
        Poly::from_terms(
            n,
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (Term::var(n, i), c.clone())),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in the deterministic (exponent-lexicographic) map order.
    pub fn iter(&self) -> impl Iterator<Item = (&Term, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, t: &Term) -> F {
        self.terms.get(t).cloned().unwrap_or_else(F::zero)
    }

    pub fn add_term(&mut self, t: Term, c: &F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&t);
                }
            }
            None => {
                self.terms.insert(t, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, v)| {
                    let mut v = v.clone();
                    v *= c;
                    (t.clone(), v)
                })
                .collect(),
        }
    }

    pub fn mul_term(&self, t: &Term, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(s, v)| {
                    let mut v = v.clone();
                    v *= c;
                    (s.mul(t), v)
                })
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Standard total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Term::degree).max()
    }

    /// The σ-largest term of the support with its coefficient.
    pub fn leading_term(&self, o: &TermOrdering) -> Result<(Term, F)> {
        if o.arity() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: o.arity(),
                found: self.nvars,
            });
        }
        self.terms
            .iter()
            .max_by(|a, b| o.compare(a.0, b.0))
            .map(|(t, c)| (t.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    /// Terms sorted descending with respect to `o`.
    pub fn sorted_terms(&self, o: &TermOrdering) -> Vec<(&Term, &F)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| o.compare(b.0, a.0));
        v
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, o: &TermOrdering) -> Result<Self> {
        let (_, lc) = self.leading_term(o)?;
        Ok(self.scale(&lc.inv()))
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&Term::one(self.nvars))
    }

    /// Sum of the monomials of standard degree `d`.
    pub fn homogeneous_component(&self, d: u32) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.degree() == d)
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect(),
        }
    }

    /// The degree-one homogeneous component. Fails when the constant term is
    /// nonzero, i.e. when the polynomial is not in the maximal ideal of the
    /// origin.
    pub fn linear_part(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstant);
        }
        Ok(self.homogeneous_component(1))
    }

    pub fn is_linear_form(&self) -> bool {
        self.terms.keys().all(|t| t.degree() == 1)
    }

    /// Coefficient vector of a linear form.
    pub fn linear_coeffs(&self) -> Result<Vec<F>> {
        let mut v = vec![F::zero(); self.nvars];
        for (t, c) in &self.terms {
            match t.as_var() {
                Some(i) => v[i] = c.clone(),
                None => return Err(Error::NotLinear),
            }
        }
        Ok(v)
    }

    pub fn contains_var(&self, index: usize) -> bool {
        self.terms.keys().any(|t| t.exp(index) > 0)
    }

    /// Indices of indeterminates occurring in some term, ascending.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars];
        for t in self.terms.keys() {
            for i in t.support() {
                seen[i] = true;
            }
        }
        (0..self.nvars).filter(|&i| seen[i]).collect()
    }

    /// Applies the substitution `x_i -> images[i]` (identity where `None`).
    pub fn substitute(&self, images: &[Option<Poly<F>>]) -> Self {
        debug_assert_eq!(images.len(), self.nvars);
        let mut powers: Vec<Vec<Poly<F>>> = vec![Vec::new(); self.nvars];
        let mut out = Poly::zero(self.nvars);
        for (t, c) in &self.terms {
            let mut fixed = vec![0u32; self.nvars];
            let mut acc = Poly::one(self.nvars);
            for (i, &e) in t.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &images[i] {
                    None => fixed[i] = e,
                    Some(img) => {
                        let cache = &mut powers[i];
                        if cache.is_empty() {
                            cache.push(Poly::one(self.nvars));
                        }
                        while cache.len() <= e as usize {
                            let next = &cache[cache.len() - 1] * img;
                            cache.push(next);
                        }
                        acc = &acc * &cache[e as usize];
                    }
                }
            }
            let shifted = acc.mul_term(&Term::from_exps(fixed), c);
            out = &out + &shifted;
        }
        out
    }

    /// Exact division by a nonzero polynomial; `None` if it does not divide.
    pub fn exact_div(&self, d: &Poly<F>, o: &TermOrdering) -> Option<Self> {
        let (ld, lc) = d.leading_term(o).ok()?;
        let lc_inv = lc.inv();
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while !rem.is_zero() {
            let (lt, c) = rem.leading_term(o).ok()?;
            let q = lt.checked_div(&ld)?;
            let mut qc = c;
            qc *= &lc_inv;
            rem = &rem - &d.mul_term(&q, &qc);
            quot.add_term(q, &qc);
        }
        Some(quot)
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (t, c) in &small.terms {
            out.add_term(t.clone(), c);
        }
        out
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let mut out = self.clone();
        for (t, c) in &rhs.terms {
            out.add_term(t.clone(), &-c.clone());
        }
        out
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        let mut out = Poly::zero(self.nvars);
        for (s, a) in &self.terms {
            for (t, b) in &rhs.terms {
                let mut c = a.clone();
                c *= b;
                out.add_term(s.mul(t), &c);
            }
        }
        out
    }
}

impl<F: Field> Add for Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: Poly<F>) -> Poly<F> {
        &self + &rhs
    }
}

impl<F: Field> Sub for Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: Poly<F>) -> Poly<F> {
        &self - &rhs
    }
}

impl<F: Field> Mul for Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Poly<F>) -> Poly<F> {
        &self * &rhs
    }
}

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

impl<F: Field> Poly<F> {
    /// Multiplies the polynomial by `x_index`.
    pub fn mul_var(&self, index: usize) -> Self {
        self.mul_term(&Term::var(self.nvars, index), &F::one())
    }

    /// Whether the coefficient of every term equals one.
    pub fn is_monic_everywhere(&self) -> bool {
        self.terms.values().all(One::is_one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    #[test]
    fn arithmetic_identities() {
        let x = Poly::<Rational>::var(2, 0);
        let y = Poly::<Rational>::var(2, 1);
        let f = &(&x * &x) + &y.scale(&q(3));
        let g = &x - &Poly::constant(2, q(2));
        assert_eq!(&(&f + &g) - &g, f);
        assert_eq!(&f * &g, &g * &f);
        assert!((&f - &f).is_zero());
        assert_eq!(g.pow(2), &g * &g);
        assert_eq!((&f * &g).exact_div(&g, &TermOrdering::degrevlex(2)), Some(f.clone()));
    }

    #[test]
    fn linear_part_rejects_constants() {
        let x = Poly::<Rational>::var(2, 0);
        let f = &x + &Poly::one(2);
        assert_eq!(f.linear_part(), Err(Error::NonzeroConstant));
        let g = &x * &x;
        assert!(g.linear_part().unwrap().is_zero());
    }

    #[test]
    fn constant_leading_term() {
        let c = Poly::constant(3, q(5));
        let (t, v) = c.leading_term(&TermOrdering::lex(3)).unwrap();
        assert!(t.is_one());
        assert_eq!(v, q(5));
        assert_eq!(Poly::<Rational>::zero(3).leading_term(&TermOrdering::lex(3)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn substitution_eliminates() {
        // x -> y^2 in x - y^2 gives 0
        let x = Poly::<Rational>::var(2, 0);
        let y = Poly::<Rational>::var(2, 1);
        let f = &x - &(&y * &y);
        let img = vec![Some(&y * &y), None];
        assert!(f.substitute(&img).is_zero());
        let g = &(&x * &x) + &y;
        assert_eq!(g.substitute(&img), &y.pow(4) + &y);
    }
}

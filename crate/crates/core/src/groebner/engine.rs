//! Internal polynomial representation used by the Buchberger loop.
//!
//! A monomial is stored as one boxed slice holding the weight vector `W*e`
//! followed by the exponent vector `e`. The derived slice ordering then
//! compares weight vectors first, which is exactly the term ordering, and
//! products are elementwise sums because the weight map is linear.

use std::collections::BTreeMap;

use crate::field::Field;
use crate::poly::{Poly, Term, TermOrdering};

pub(crate) type Mono = Box<[i64]>;

/// Terms sorted strictly descending; the first one is the leading term.
#[derive(Clone, Debug)]
pub(crate) struct IPoly<F> {
    pub terms: Vec<(Mono, F)>,
}

impl<F: Field> IPoly<F> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    pub fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.first() {
            if !lc.is_one() {
                let inv = lc.inv();
                for (_, c) in self.terms.iter_mut() {
                    *c *= &inv;
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Ctx {
    pub n: usize,
    pub k: usize,
    weights: Vec<Vec<i64>>,
}

impl Ctx {
    pub fn new(o: &TermOrdering) -> Self {
        Ctx {
            n: o.arity(),
            k: o.weights().len(),
            weights: o.weights().to_vec(),
        }
    }

    pub fn exps<'a>(&self, m: &'a [i64]) -> &'a [i64] {
        &m[self.k..]
    }

    pub fn mono_of(&self, e: &[i64]) -> Mono {
        let mut v = Vec::with_capacity(self.k + self.n);
        v.extend(
            self.weights
                .iter()
                .map(|row| row.iter().zip(e).map(|(w, x)| w * x).sum::<i64>()),
        );
        v.extend_from_slice(e);
        v.into_boxed_slice()
    }

    pub fn mono(&self, t: &Term) -> Mono {
        let e: Vec<i64> = t.exps().iter().map(|&x| x as i64).collect();
        self.mono_of(&e)
    }

    pub fn term(&self, m: &[i64]) -> Term {
        Term::from_exps(self.exps(m).iter().map(|&x| x as u32).collect())
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Mono {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    /// `a / b`, assuming `b` divides `a`.
    pub fn div(&self, a: &[i64], b: &[i64]) -> Mono {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn divides(&self, b: &[i64], a: &[i64]) -> bool {
        self.exps(b).iter().zip(self.exps(a)).all(|(x, y)| x <= y)
    }

    pub fn lcm(&self, a: &[i64], b: &[i64]) -> Mono {
        let e: Vec<i64> = self
            .exps(a)
            .iter()
            .zip(self.exps(b))
            .map(|(x, y)| *x.max(y))
            .collect();
        self.mono_of(&e)
    }

    pub fn coprime(&self, a: &[i64], b: &[i64]) -> bool {
        self.exps(a)
            .iter()
            .zip(self.exps(b))
            .all(|(x, y)| *x == 0 || *y == 0)
    }

    pub fn degree(&self, m: &[i64]) -> i64 {
        self.exps(m).iter().sum()
    }

    /// Bit `i mod 64` is set when indeterminate `i` occurs. A divisor's
    /// mask is a submask of its multiple's.
    pub fn mask(&self, m: &[i64]) -> u64 {
        self.exps(m)
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |acc, (i, _)| acc | (1u64 << (i % 64)))
    }

    pub fn to_internal<F: Field>(&self, p: &Poly<F>) -> IPoly<F> {
        let mut terms: Vec<(Mono, F)> = p.iter().map(|(t, c)| (self.mono(t), c.clone())).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        IPoly { terms }
    }

    pub fn to_poly<F: Field>(&self, p: &IPoly<F>) -> Poly<F> {
        Poly::from_terms(self.n, p.terms.iter().map(|(m, c)| (self.term(m), c.clone())))
    }

    /// `q * g` scaled by `c`, for a monomial `q`.
    pub fn mul_mono<F: Field>(&self, g: &IPoly<F>, q: &[i64], c: &F) -> IPoly<F> {
        IPoly {
            terms: g
                .terms
                .iter()
                .map(|(m, d)| (self.mul(m, q), d.clone() * c.clone()))
                .collect(),
        }
    }
}

/// A reducer set: monic polynomials with cached leading-term masks.
pub(crate) struct Reducers<'a, F> {
    pub polys: Vec<&'a IPoly<F>>,
    pub masks: Vec<u64>,
}

impl<'a, F: Field> Reducers<'a, F> {
    pub fn new(ctx: &Ctx, polys: Vec<&'a IPoly<F>>) -> Self {
        let masks = polys.iter().map(|p| ctx.mask(p.lm())).collect();
        Reducers { polys, masks }
    }

    pub fn find(&self, ctx: &Ctx, m: &[i64]) -> Option<&'a IPoly<F>> {
        let mm = ctx.mask(m);
        self.polys
            .iter()
            .zip(&self.masks)
            .find(|(p, &mask)| mask & !mm == 0 && ctx.divides(p.lm(), m))
            .map(|(p, _)| *p)
    }
}

/// Full normal form of `f` with respect to monic reducers.
pub(crate) fn normal_form<F: Field>(ctx: &Ctx, f: &IPoly<F>, red: &Reducers<'_, F>) -> IPoly<F> {
    let mut steps = 0;
    normal_form_bounded(ctx, f, red, &mut steps, u64::MAX).expect("unbounded")
}

/// Normal form that counts elementary reduction steps in `steps` and gives
/// up with `None` once the count reaches `limit`.
pub(crate) fn normal_form_bounded<F: Field>(
    ctx: &Ctx,
    f: &IPoly<F>,
    red: &Reducers<'_, F>,
    steps: &mut u64,
    limit: u64,
) -> Option<IPoly<F>> {
    let mut acc: BTreeMap<Mono, F> = f.terms.iter().cloned().collect();
    let mut out = Vec::new();
    while let Some((m, c)) = acc.pop_last() {
        match red.find(ctx, &m) {
            Some(g) => {
                if *steps >= limit {
                    return None;
                }
                *steps += 1;
                let q = ctx.div(&m, g.lm());
                for (t, d) in &g.terms[1..] {
                    let key = ctx.mul(t, &q);
                    let delta = c.clone() * d.clone();
                    match acc.entry(key) {
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            *e.get_mut() -= &delta;
                            if e.get().is_zero() {
                                e.remove();
                            }
                        }
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert(-delta);
                        }
                    }
                }
            }
            None => out.push((m, c)),
        }
    }
    Some(IPoly { terms: out })
}

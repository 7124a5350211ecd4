use log::debug;
use serde::{Deserialize, Serialize};

use super::engine::{normal_form, normal_form_bounded, Ctx, IPoly, Mono, Reducers};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Poly, TermOrdering};

/// Default number of elementary reduction steps before a computation gives
/// up.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairStrategy {
    /// Smallest lcm in the term ordering first. For elimination orderings
    /// this keeps coefficient growth in check far better than selecting by
    /// total degree.
    #[default]
    Normal,
    /// Smallest sugar degree first.
    Sugar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbOptions {
    /// Maximum number of elementary reduction steps, each cancelling one
    /// term against a basis element.
    pub budget: u64,
    pub strategy: PairStrategy,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions {
            budget: DEFAULT_BUDGET,
            strategy: PairStrategy::Normal,
        }
    }
}

impl GbOptions {
    pub fn with_budget(budget: u64) -> Self {
        GbOptions {
            budget,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GbStatus {
    Complete,
    /// The budget ran out; the basis is a partial result and not
    /// interreduced.
    Aborted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GBResult<F> {
    /// Reduced and monic, sorted by leading term descending when complete.
    pub basis: Vec<Poly<F>>,
    pub ordering: TermOrdering,
    pub status: GbStatus,
    /// Number of elementary reduction steps performed.
    pub reductions: u64,
}

impl<F: Field> GBResult<F> {
    pub fn is_complete(&self) -> bool {
        self.status == GbStatus::Complete
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].total_degree() == Some(0)
    }

    pub fn normal_form(&self, f: &Poly<F>) -> Poly<F> {
        normal_form_poly(f, &self.basis, &self.ordering)
    }

    /// Ideal membership; only meaningful for a complete basis.
    pub fn contains(&self, f: &Poly<F>) -> bool {
        self.normal_form(f).is_zero()
    }
}

/// Normal form of `f` modulo `basis` (not necessarily a Gröbner basis).
pub fn normal_form_poly<F: Field>(f: &Poly<F>, basis: &[Poly<F>], o: &TermOrdering) -> Poly<F> {
    let ctx = Ctx::new(o);
    let internal: Vec<IPoly<F>> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut p = ctx.to_internal(g);
            p.make_monic();
            p
        })
        .collect();
    let red = Reducers::new(&ctx, internal.iter().collect());
    ctx.to_poly(&normal_form(&ctx, &ctx.to_internal(f), &red))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: i64,
}

struct State<F> {
    ctx: Ctx,
    polys: Vec<IPoly<F>>,
    sugar: Vec<i64>,
    /// Indices of the current minimal basis.
    basis: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<F: Field> State<F> {
    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (self.polys[i].lm(), self.polys[j].lm());
        let lcm = self.ctx.lcm(a, b);
        let deg = self.ctx.degree(&lcm);
        let si = self.sugar[i] + deg - self.ctx.degree(a);
        let sj = self.sugar[j] + deg - self.ctx.degree(b);
        Pair {
            i,
            j,
            lcm,
            sugar: si.max(sj),
        }
    }

    /// Gebauer–Möller update with the new basis element `h`.
    fn update(&mut self, h: usize) {
        let ctx = &self.ctx;
        let lh = self.polys[h].lm().clone();
        let cands: Vec<Pair> = self.basis.iter().map(|&g| self.make_pair(g, h)).collect();
        let coprime: Vec<bool> = self
            .basis
            .iter()
            .map(|&g| ctx.coprime(self.polys[g].lm(), &lh))
            .collect();
        // C holds unprocessed new pairs, D accepted ones; a pair is dropped
        // when another pair in C or D has an lcm dividing its own.
        let mut pending: Vec<usize> = (0..cands.len()).rev().collect();
        let mut accepted: Vec<usize> = Vec::new();
        while let Some(a) = pending.pop() {
            let dominated = !coprime[a]
                && pending
                    .iter()
                    .chain(accepted.iter())
                    .any(|&b| ctx.divides(&cands[b].lcm, &cands[a].lcm));
            if !dominated {
                accepted.push(a);
            }
        }
        let mut keep = vec![false; cands.len()];
        for a in accepted {
            keep[a] = true;
        }
        // Triangle criterion: drop an old pair when lt(h) divides its lcm,
        // unless h shares that lcm with one of the pair's members.
        self.pairs.retain(|p| {
            if !ctx.divides(&lh, &p.lcm) {
                return true;
            }
            let l1 = ctx.lcm(self.polys[p.i].lm(), &lh);
            let l2 = ctx.lcm(self.polys[p.j].lm(), &lh);
            l1 == p.lcm || l2 == p.lcm
        });
        for (a, pair) in cands.into_iter().enumerate() {
            if keep[a] && !coprime[a] {
                self.pairs.push(pair);
            }
        }
        let polys = &self.polys;
        self.basis.retain(|&g| !ctx.divides(&lh, polys[g].lm()));
        self.basis.push(h);
    }

    fn select(&mut self, strategy: PairStrategy) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        fn key(p: &Pair, strategy: PairStrategy) -> (i64, &Mono) {
            match strategy {
                PairStrategy::Normal => (0, &p.lcm),
                PairStrategy::Sugar => (p.sugar, &p.lcm),
            }
        }
        let mut best = 0;
        for k in 1..self.pairs.len() {
            if key(&self.pairs[k], strategy) < key(&self.pairs[best], strategy) {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> IPoly<F> {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let qf = self.ctx.div(&p.lcm, f.lm());
        let qg = self.ctx.div(&p.lcm, g.lm());
        let a = self.ctx.mul_mono(&IPoly { terms: f.terms[1..].to_vec() }, &qf, &F::one());
        let b = self.ctx.mul_mono(&IPoly { terms: g.terms[1..].to_vec() }, &qg, &F::one());
        sub(&a, &b)
    }

    fn reducers(&self) -> Reducers<'_, F> {
        Reducers::new(&self.ctx, self.basis.iter().map(|&i| &self.polys[i]).collect())
    }

    fn add(&mut self, mut p: IPoly<F>, sugar: i64) {
        p.make_monic();
        self.polys.push(p);
        self.sugar.push(sugar);
        self.update(self.polys.len() - 1);
    }
}

fn sub<F: Field>(a: &IPoly<F>, b: &IPoly<F>) -> IPoly<F> {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let ord = match (a.terms.get(i), b.terms.get(j)) {
            (Some(x), Some(y)) => x.0.cmp(&y.0),
            (Some(_), None) => std::cmp::Ordering::Greater,
            _ => std::cmp::Ordering::Less,
        };
        match ord {
            std::cmp::Ordering::Greater => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((b.terms[j].0.clone(), -b.terms[j].1.clone()));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = a.terms[i].1.clone() - b.terms[j].1.clone();
                if !c.is_zero() {
                    out.push((a.terms[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    IPoly { terms: out }
}

/// Reduced Gröbner basis of the ideal generated by `gens` with respect to
/// `o`, computed by Buchberger's algorithm with the Gebauer–Möller criteria.
///
/// Running out of budget is not an error: the result is marked
/// [`GbStatus::Aborted`] and holds the partial basis.
pub fn buchberger<F: Field>(gens: &[Poly<F>], o: &TermOrdering, opts: GbOptions) -> Result<GBResult<F>> {
    let ctx = Ctx::new(o);
    for g in gens {
        if g.nvars() != ctx.n {
            return Err(Error::ArityMismatch {
                expected: ctx.n,
                found: g.nvars(),
            });
        }
    }
    let mut st = State {
        ctx: ctx.clone(),
        polys: Vec::new(),
        sugar: Vec::new(),
        basis: Vec::new(),
        pairs: Vec::new(),
    };
    // Feed the generators in increasing order of leading term after
    // reducing each against what is already there.
    let mut input: Vec<IPoly<F>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| ctx.to_internal(g))
        .collect();
    input.sort_by(|a, b| a.lm().cmp(b.lm()));
    let mut steps = 0u64;
    let mut status = GbStatus::Complete;
    for g in input {
        let sugar = g.terms.iter().map(|(m, _)| ctx.degree(m)).max().unwrap_or(0);
        match normal_form_bounded(&ctx, &g, &st.reducers(), &mut steps, opts.budget) {
            None => {
                status = GbStatus::Aborted;
                break;
            }
            Some(r) if !r.is_zero() => st.add(r, sugar),
            Some(_) => {}
        }
    }

    let mut pairs_done = 0u64;
    while status == GbStatus::Complete {
        let Some(pair) = st.select(opts.strategy) else { break };
        pairs_done += 1;
        let s = st.spoly(&pair);
        let Some(r) = normal_form_bounded(&ctx, &s, &st.reducers(), &mut steps, opts.budget) else {
            status = GbStatus::Aborted;
            break;
        };
        if !r.is_zero() {
            if ctx.degree(r.lm()) == 0 {
                // The unit ideal: nothing else matters.
                st.basis.clear();
                st.pairs.clear();
                st.add(r, 0);
                break;
            }
            st.add(r, pair.sugar);
        }
    }
    debug!(
        "buchberger: {} pairs, {} steps, {} basis elements, status {:?}",
        pairs_done,
        steps,
        st.basis.len(),
        status
    );

    let basis = if status == GbStatus::Complete {
        interreduce(&ctx, &st.polys, &st.basis)
    } else {
        st.basis.iter().map(|&i| st.polys[i].clone()).collect()
    };
    Ok(GBResult {
        basis: basis.iter().map(|p| ctx.to_poly(p)).collect(),
        ordering: o.clone(),
        status,
        reductions: steps,
    })
}

/// Tail-reduces a minimal basis, giving the reduced basis sorted by leading
/// term descending.
fn interreduce<F: Field>(ctx: &Ctx, polys: &[IPoly<F>], basis: &[usize]) -> Vec<IPoly<F>> {
    let mut idx: Vec<usize> = basis.to_vec();
    idx.sort_by(|&a, &b| polys[b].lm().cmp(polys[a].lm()));
    let mut out: Vec<IPoly<F>> = Vec::with_capacity(idx.len());
    for (k, &i) in idx.iter().enumerate() {
        let others: Vec<&IPoly<F>> = idx
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != k)
            .map(|(_, &j)| &polys[j])
            .collect();
        let red = Reducers::new(ctx, others);
        let p = &polys[i];
        let tail = IPoly {
            terms: p.terms[1..].to_vec(),
        };
        let mut terms = vec![p.terms[0].clone()];
        terms.extend(normal_form(ctx, &tail, &red).terms);
        let mut q = IPoly { terms };
        q.make_monic();
        out.push(q);
    }
    out
}

//! Defining ideals of border basis schemes.
//!
//! For an order ideal `O = {t_1, ..., t_mu}` with border
//! `{b_1, ..., b_nu}`, the scheme lives in the polynomial ring over the
//! indeterminates `c_ij` (row-major in `(i, j)`), and its ideal is generated
//! by the next-door and across-the-rim neighbour generators.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::cotangent::cotangent_classes;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Poly, Ring, Term, TermOrdering};

fn sort_terms(terms: &mut [Term]) {
    if let Some(n) = terms.first().map(Term::arity) {
        let o = TermOrdering::degrevlex(n);
        terms.sort_by(|a, b| o.compare(a, b));
    }
}

/// A finite divisor-closed set of terms, sorted by degree and then
/// DegRevLex ascending, so `t_1 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderIdeal {
    nvars: usize,
    terms: Vec<Term>,
}

impl OrderIdeal {
    /// The divisor closure of the given terms.
    pub fn from_maximal(gens: &[Term]) -> Result<Self> {
        let Some(first) = gens.first() else {
            return Err(Error::InvalidOrderIdeal("no generating terms".into()));
        };
        let nvars = first.arity();
        if nvars == 0 {
            return Err(Error::EmptyIndeterminates);
        }
        let mut set: HashSet<Term> = HashSet::new();
        let mut stack: Vec<Term> = Vec::new();
        for g in gens {
            if g.arity() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: g.arity(),
                });
            }
            stack.push(g.clone());
        }
        while let Some(t) = stack.pop() {
            if !set.insert(t.clone()) {
                continue;
            }
            for i in t.support() {
                stack.push(t.checked_div(&Term::var(nvars, i)).expect("divisor"));
            }
        }
        let mut terms: Vec<Term> = set.into_iter().collect();
        sort_terms(&mut terms);
        Ok(OrderIdeal { nvars, terms })
    }

    /// Validates that the given terms already form an order ideal.
    pub fn from_terms(terms: Vec<Term>) -> Result<Self> {
        let closure = Self::from_maximal(&terms)?;
        let given: HashSet<&Term> = terms.iter().collect();
        if closure.terms.len() != given.len() || !closure.terms.iter().all(|t| given.contains(t)) {
            return Err(Error::InvalidOrderIdeal("not closed under division".into()));
        }
        Ok(closure)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn index_of(&self, t: &Term) -> Option<usize> {
        self.terms.iter().position(|s| s == t)
    }

    pub fn contains(&self, t: &Term) -> bool {
        self.index_of(t).is_some()
    }

    /// `(x_1 O ∪ ... ∪ x_n O) \ O`, sorted like the order ideal.
    pub fn border(&self) -> Vec<Term> {
        let own: HashSet<&Term> = self.terms.iter().collect();
        let mut out: HashSet<Term> = HashSet::new();
        for t in &self.terms {
            for k in 0..self.nvars {
                let u = t.mul_var(k);
                if !own.contains(&u) {
                    out.insert(u);
                }
            }
        }
        let mut v: Vec<Term> = out.into_iter().collect();
        sort_terms(&mut v);
        v
    }

    /// Indices of the rim terms: those with some `x_k t` outside `O`.
    pub fn rim(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.nvars).any(|k| !self.contains(&self.terms[i].mul_var(k))))
            .collect()
    }

    pub fn interior(&self) -> Vec<usize> {
        let rim = self.rim();
        (0..self.len()).filter(|i| !rim.contains(i)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NeighbourPair {
    /// `b_j = x_l b_jp`; generators `c_j - A_l c_jp`.
    NextDoor { j: usize, jp: usize, l: usize },
    /// `b_j = x_l t_m` and `b_jp = x_k t_m`; generators `A_k c_j - A_l c_jp`.
    AcrossRim {
        j: usize,
        jp: usize,
        k: usize,
        l: usize,
        m: usize,
    },
}

/// One entry of a neighbour tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighbourGenerator<F> {
    pub pair: NeighbourPair,
    /// Row index (`i` for next-door, `m` for across-the-rim).
    pub entry: usize,
    pub poly: Poly<F>,
}

/// Outcome of [`BorderScheme::verify_structure`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub generators: usize,
    pub arrow_homogeneous: bool,
    pub linear_parts: bool,
    pub quadratic_parts: bool,
    pub basic_are_rim: bool,
    pub proper_classes_meet_rim: bool,
    pub failures: Vec<String>,
}

impl StructureReport {
    pub fn all_passed(&self) -> bool {
        self.arrow_homogeneous
            && self.linear_parts
            && self.quadratic_parts
            && self.basic_are_rim
            && self.proper_classes_meet_rim
    }
}

/// The data of the border basis scheme of an order ideal.
#[derive(Clone, Debug)]
pub struct BorderScheme {
    order_ideal: OrderIdeal,
    border: Vec<Term>,
    ring: Ring,
}

impl BorderScheme {
    pub fn new(order_ideal: OrderIdeal) -> Self {
        let border = order_ideal.border();
        let (mu, nu) = (order_ideal.len(), border.len());
        let wide = mu >= 10 || nu >= 10;
        let names: Vec<String> = (1..=mu)
            .flat_map(|i| {
                (1..=nu).map(move |j| {
                    if wide {
                        format!("c{i}_{j}")
                    } else {
                        format!("c{i}{j}")
                    }
                })
            })
            .collect();
        let ring = Ring::new(&names).expect("generated names are valid");
        BorderScheme {
            order_ideal,
            border,
            ring,
        }
    }

    pub fn order_ideal(&self) -> &OrderIdeal {
        &self.order_ideal
    }

    pub fn border(&self) -> &[Term] {
        &self.border
    }

    /// The ring `K[C]`.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn mu(&self) -> usize {
        self.order_ideal.len()
    }

    pub fn nu(&self) -> usize {
        self.border.len()
    }

    /// Number of indeterminates `x_1..x_n` of the order ideal.
    pub fn n(&self) -> usize {
        self.order_ideal.nvars()
    }

    /// Expected dimension `mu * n` of the scheme.
    pub fn expected_dimension(&self) -> usize {
        self.mu() * self.n()
    }

    /// Flat index of `c_ij` (0-based `i`, `j`).
    pub fn c_index(&self, i: usize, j: usize) -> usize {
        i * self.nu() + j
    }

    /// Inverse of [`Self::c_index`].
    pub fn c_position(&self, idx: usize) -> (usize, usize) {
        (idx / self.nu(), idx % self.nu())
    }

    fn ncvars(&self) -> usize {
        self.mu() * self.nu()
    }

    fn c<F: Field>(&self, i: usize, j: usize) -> Poly<F> {
        Poly::var(self.ncvars(), self.c_index(i, j))
    }

    fn border_index(&self, t: &Term) -> Option<usize> {
        self.border.iter().position(|b| b == t)
    }

    /// `deg_W(c_ij) = log(b_j) - log(t_i)`.
    pub fn arrow_degree(&self, i: usize, j: usize) -> Vec<i64> {
        self.border[j].log_difference(&self.order_ideal.terms()[i])
    }

    fn arrow_degree_of(&self, t: &Term) -> Vec<i64> {
        let mut d = vec![0i64; self.n()];
        for idx in t.support() {
            let (i, j) = self.c_position(idx);
            for (acc, v) in d.iter_mut().zip(self.arrow_degree(i, j)) {
                *acc += v * t.exp(idx) as i64;
            }
        }
        d
    }

    /// Indices of the rim indeterminates `c_ij` with `t_i` in the rim.
    pub fn rim_indeterminates(&self) -> Vec<usize> {
        let rim = self.order_ideal.rim();
        (0..self.ncvars())
            .filter(|&idx| rim.contains(&self.c_position(idx).0))
            .collect()
    }

    /// The generic multiplication matrices `A_1..A_n`, indexed
    /// `[k][row][column]`.
    pub fn multiplication_matrices<F: Field>(&self) -> Vec<Vec<Vec<Poly<F>>>> {
        let (mu, nv) = (self.mu(), self.ncvars());
        (0..self.n())
            .map(|k| {
                let mut a = vec![vec![Poly::zero(nv); mu]; mu];
                for (i, t) in self.order_ideal.terms().iter().enumerate() {
                    let u = t.mul_var(k);
                    if let Some(r) = self.order_ideal.index_of(&u) {
                        a[r][i] = Poly::one(nv);
                    } else {
                        let j = self.border_index(&u).expect("x_k t lies in O or its border");
                        for (r, row) in a.iter_mut().enumerate() {
                            row[i] = self.c(r, j);
                        }
                    }
                }
                a
            })
            .collect()
    }

    /// All next-door pairs, then all across-the-rim pairs (one orientation,
    /// `l < k`).
    pub fn neighbour_pairs(&self) -> Vec<NeighbourPair> {
        let mut out = Vec::new();
        for j in 0..self.nu() {
            for jp in 0..self.nu() {
                for l in 0..self.n() {
                    if self.border[jp].mul_var(l) == self.border[j] {
                        out.push(NeighbourPair::NextDoor { j, jp, l });
                    }
                }
            }
        }
        for (m, t) in self.order_ideal.terms().iter().enumerate() {
            for l in 0..self.n() {
                for k in (l + 1)..self.n() {
                    if let (Some(j), Some(jp)) = (
                        self.border_index(&t.mul_var(l)),
                        self.border_index(&t.mul_var(k)),
                    ) {
                        out.push(NeighbourPair::AcrossRim { j, jp, k, l, m });
                    }
                }
            }
        }
        out
    }

    fn mat_vec<F: Field>(&self, a: &[Vec<Poly<F>>], j: usize) -> Vec<Poly<F>> {
        a.iter()
            .map(|row| {
                let mut acc = Poly::zero(self.ncvars());
                for (i, e) in row.iter().enumerate() {
                    if !e.is_zero() {
                        acc = &acc + &(e * &self.c(i, j));
                    }
                }
                acc
            })
            .collect()
    }

    /// The full tuple of `mu` polynomials of a neighbour pair.
    pub fn pair_tuple<F: Field>(&self, pair: &NeighbourPair, mats: &[Vec<Vec<Poly<F>>>]) -> Vec<Poly<F>> {
        match *pair {
            NeighbourPair::NextDoor { j, jp, l } => {
                let v = self.mat_vec(&mats[l], jp);
                (0..self.mu()).map(|i| &self.c::<F>(i, j) - &v[i]).collect()
            }
            NeighbourPair::AcrossRim { j, jp, k, l, .. } => {
                let a = self.mat_vec(&mats[k], j);
                let b = self.mat_vec(&mats[l], jp);
                a.iter().zip(&b).map(|(x, y)| x - y).collect()
            }
        }
    }

    /// The nonzero entries of all neighbour tuples.
    pub fn neighbour_generators<F: Field>(&self) -> Vec<NeighbourGenerator<F>> {
        let mats = self.multiplication_matrices::<F>();
        self.neighbour_pairs()
            .into_iter()
            .flat_map(|pair| {
                self.pair_tuple(&pair, &mats)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_zero())
                    .map(move |(entry, poly)| NeighbourGenerator { pair, entry, poly })
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    /// Generators of the defining ideal: the neighbour generators.
    pub fn defining_ideal<F: Field>(&self) -> Vec<Poly<F>> {
        self.neighbour_generators().into_iter().map(|g| g.poly).collect()
    }

    /// The nonzero entries of all commutators `A_k A_l - A_l A_k`, `k < l`.
    pub fn commutator_entries<F: Field>(&self) -> Vec<Poly<F>> {
        let mats = self.multiplication_matrices::<F>();
        let mu = self.mu();
        let mut out = Vec::new();
        for k in 0..self.n() {
            for l in (k + 1)..self.n() {
                for r in 0..mu {
                    for c in 0..mu {
                        let mut e = Poly::zero(self.ncvars());
                        for s in 0..mu {
                            e = &e + &(&mats[k][r][s] * &mats[l][s][c]);
                            e = &e - &(&mats[l][r][s] * &mats[k][s][c]);
                        }
                        if !e.is_zero() {
                            out.push(e);
                        }
                    }
                }
            }
        }
        out
    }

    /// Expected linear part (up to sign) of a neighbour generator.
    fn expected_linear<F: Field>(&self, g: &NeighbourGenerator<F>) -> Poly<F> {
        let oi = &self.order_ideal;
        let nv = self.ncvars();
        let below = |t: &Term, v: usize| -> Option<usize> {
            t.checked_div(&Term::var(self.n(), v))
                .and_then(|s| oi.index_of(&s))
        };
        match g.pair {
            NeighbourPair::NextDoor { j, jp, l } => {
                let i = g.entry;
                let mut p = self.c::<F>(i, j);
                if let Some(ip) = below(&oi.terms()[i], l) {
                    p = &p - &self.c(ip, jp);
                }
                p
            }
            NeighbourPair::AcrossRim { j, jp, k, l, .. } => {
                let tm = &oi.terms()[g.entry];
                let mut p = Poly::zero(nv);
                if let Some(i) = below(tm, k) {
                    p = &p + &self.c(i, j);
                }
                if let Some(ip) = below(tm, l) {
                    p = &p - &self.c(ip, jp);
                }
                p
            }
        }
    }

    /// Allowed quadratic terms of a neighbour generator.
    fn allowed_quadratic<F: Field>(&self, g: &NeighbourGenerator<F>) -> HashSet<Term> {
        let nv = self.ncvars();
        let exposed = |v: usize| -> Vec<(usize, usize)> {
            // (lambda, rho) with b_lambda = x_v t_rho
            self.order_ideal
                .terms()
                .iter()
                .enumerate()
                .filter_map(|(rho, t)| self.border_index(&t.mul_var(v)).map(|lam| (lam, rho)))
                .collect()
        };
        let prod = |a: usize, b: usize| Term::var(nv, a).mul(&Term::var(nv, b));
        let mut out = HashSet::new();
        match g.pair {
            NeighbourPair::NextDoor { jp, l, .. } => {
                for (lam, rho) in exposed(l) {
                    out.insert(prod(self.c_index(g.entry, lam), self.c_index(rho, jp)));
                }
            }
            NeighbourPair::AcrossRim { j, jp, k, l, .. } => {
                for (kap, rho) in exposed(k) {
                    out.insert(prod(self.c_index(g.entry, kap), self.c_index(rho, j)));
                }
                for (lam, sig) in exposed(l) {
                    out.insert(prod(self.c_index(g.entry, lam), self.c_index(sig, jp)));
                }
            }
        }
        out
    }

    fn expected_arrow_degree<F: Field>(&self, g: &NeighbourGenerator<F>) -> Vec<i64> {
        match g.pair {
            NeighbourPair::NextDoor { j, .. } => self.arrow_degree(g.entry, j),
            NeighbourPair::AcrossRim { j, k, .. } => {
                let mut d = self.arrow_degree(g.entry, j);
                d[k] += 1;
                d
            }
        }
    }

    /// Checks the structural statements about neighbour generators: arrow
    /// homogeneity, the shape of linear and quadratic parts, and the
    /// position of basic and proper cotangent classes relative to the rim.
    pub fn verify_structure<F: Field>(&self) -> StructureReport {
        let gens = self.neighbour_generators::<F>();
        let mut rep = StructureReport {
            generators: gens.len(),
            arrow_homogeneous: true,
            linear_parts: true,
            quadratic_parts: true,
            basic_are_rim: true,
            proper_classes_meet_rim: true,
            failures: Vec::new(),
        };
        let name = |g: &NeighbourGenerator<F>| format!("{:?}[{}]", g.pair, g.entry + 1);
        for g in &gens {
            let want = self.expected_arrow_degree(g);
            if g.poly.iter().any(|(t, _)| self.arrow_degree_of(t) != want) {
                rep.arrow_homogeneous = false;
                rep.failures.push(format!("{} is not arrow-homogeneous", name(g)));
            }
            let lin = g.poly.homogeneous_component(1);
            let exp = self.expected_linear(g);
            if lin != exp && lin != -exp.clone() {
                rep.linear_parts = false;
                rep.failures.push(format!(
                    "{} has linear part {} instead of {}",
                    name(g),
                    self.ring.fmt_poly(&lin),
                    self.ring.fmt_poly(&exp)
                ));
            }
            let allowed = self.allowed_quadratic(g);
            let bad_deg = g.poly.iter().any(|(t, _)| t.degree() == 0 || t.degree() > 2);
            let bad_quad = g
                .poly
                .iter()
                .any(|(t, _)| t.degree() == 2 && !allowed.contains(t));
            if bad_deg || bad_quad {
                rep.quadratic_parts = false;
                rep.failures.push(format!("{} has an unexpected quadratic term", name(g)));
            }
        }
        let lin: Vec<Poly<F>> = gens.iter().map(|g| g.poly.homogeneous_component(1)).collect();
        match cotangent_classes(&lin, self.ncvars()) {
            Ok(classes) => {
                let rim: HashSet<usize> = self.rim_indeterminates().into_iter().collect();
                for b in &classes.basic {
                    if !rim.contains(b) {
                        rep.basic_are_rim = false;
                        rep.failures
                            .push(format!("basic indeterminate {} is interior", self.ring.name(*b)));
                    }
                }
                for class in &classes.proper {
                    if !class.iter().any(|c| rim.contains(c)) {
                        rep.proper_classes_meet_rim = false;
                        rep.failures.push("a proper class has no rim indeterminate".into());
                    }
                }
            }
            Err(e) => {
                rep.basic_are_rim = false;
                rep.proper_classes_meet_rim = false;
                rep.failures.push(format!("cotangent classes failed: {e}"));
            }
        }
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    fn t(e: &[u32]) -> Term {
        Term::from_exps(e.to_vec())
    }

    #[test]
    fn order_ideal_closure() {
        let o = OrderIdeal::from_maximal(&[t(&[2, 3])]).unwrap();
        assert_eq!(o.len(), 12);
        assert_eq!(o.terms()[0], t(&[0, 0]));
        assert!(OrderIdeal::from_maximal(&[]).is_err());
        assert!(OrderIdeal::from_terms(vec![t(&[0, 0]), t(&[1, 1])]).is_err());
        let one = OrderIdeal::from_maximal(&[t(&[0, 0])]).unwrap();
        assert_eq!(one.border(), vec![t(&[0, 1]), t(&[1, 0])]);
        assert_eq!(one.rim(), vec![0]);
        assert!(one.interior().is_empty());
    }

    #[test]
    fn point_scheme_has_no_relations() {
        let s = BorderScheme::new(OrderIdeal::from_maximal(&[t(&[0, 0])]).unwrap());
        assert_eq!(s.neighbour_pairs().len(), 1);
        assert!(s.defining_ideal::<Rational>().is_empty());
        let s1 = BorderScheme::new(OrderIdeal::from_maximal(&[t(&[0])]).unwrap());
        let m = s1.multiplication_matrices::<Rational>();
        assert_eq!(s1.ring().fmt_poly(&m[0][0][0]), "c11");
    }

    #[test]
    fn three_term_ideal_verifies() {
        let o = OrderIdeal::from_maximal(&[t(&[1, 0]), t(&[0, 1])]).unwrap();
        let s = BorderScheme::new(o);
        assert_eq!((s.mu(), s.nu()), (3, 3));
        let rep = s.verify_structure::<Rational>();
        assert!(rep.all_passed(), "{:?}", rep.failures);
    }
}

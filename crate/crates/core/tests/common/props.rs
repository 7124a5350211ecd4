//! Seeded randomized checks. Each returns the number of cases checked or a
//! description of the first counterexample.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reembed_core::border_basis::{BorderScheme, OrderIdeal};
use reembed_core::cotangent::{cotangent_classes, enumerate_ltgfan_binomial};
use reembed_core::groebner::{check_z_separating, check_z_separating_with, GbOptions, Verdict};
use reembed_core::linear_gfan::{combinations, ltgfan_linear, matroid_bases};
use reembed_core::poly::linear_part_of_ideal;
use reembed_core::reembed::gfan_candidates;
use reembed_core::{QMatrix, QPoly, Rational, Term, TermOrdering};

pub type Outcome = Result<usize, String>;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Rank of an integer matrix by fraction-free elimination in i128.
fn int_rank(rows: &[Vec<i64>], cols: &[usize]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| cols.iter().map(|&c| r[c] as i128).collect()).collect();
    let (nr, nc) = (m.len(), cols.len());
    let mut rank = 0;
    for c in 0..nc {
        let Some(p) = (rank..nr).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, p);
        for i in rank + 1..nr {
            let (a, b) = (m[rank][c], m[i][c]);
            for j in 0..nc {
                m[i][j] = a * m[i][j] - b * m[rank][j];
            }
            let g = m[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
            if g > 1 {
                m[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Random rational matrices against an integer minor oracle. Rows are
/// integer rows divided by a random denominator, which leaves the matroid
/// unchanged.
pub fn matroid_bases_agree(cases: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let r = rng.gen_range(1..=4);
        let n = rng.gen_range(r..=9);
        let all: Vec<usize> = (0..n).collect();
        // the rows of a coefficient matrix are independent by construction
        let ints: Vec<Vec<i64>> = loop {
            let m: Vec<Vec<i64>> = (0..r)
                .map(|_| (0..n).map(|_| if rng.gen_bool(0.4) { 0 } else { rng.gen_range(-3..=3) }).collect())
                .collect();
            if int_rank(&m, &all) == r {
                break m;
            }
        };
        let rows: Vec<Vec<Rational>> = ints
            .iter()
            .map(|row| {
                let d = rng.gen_range(1..=5);
                row.iter().map(|&a| q(a, d)).collect()
            })
            .collect();
        let a = QMatrix::from_rows(rows, n).map_err(|e| e.to_string())?;
        let oracle: Vec<Vec<usize>> = combinations(n, r)
            .into_iter()
            .filter(|s| int_rank(&ints, s) == r)
            .collect();
        let mut got = matroid_bases(&a).map_err(|e| e.to_string())?;
        got.sort();
        if got != oracle {
            return Err(format!("case {case}: matrix {ints:?} gave {got:?}, oracle {oracle:?}"));
        }
    }
    Ok(cases)
}

fn random_binomial_forms(rng: &mut ChaCha8Rng, n: usize) -> Vec<QPoly> {
    let m = rng.gen_range(0..=n);
    (0..m)
        .map(|_| {
            let mut c = vec![q(0, 1); n];
            let i = rng.gen_range(0..n);
            c[i] = q(rng.gen_range(1..=4), 1);
            if rng.gen_bool(0.8) {
                let j = rng.gen_range(0..n);
                if j != i {
                    let v = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    c[j] = q(v, rng.gen_range(1..=3));
                }
            }
            QPoly::from_linear(&c)
        })
        .collect()
}

/// Closed-form leading-term sets for binomial linear ideals against the
/// general fan computation.
pub fn binomial_fans_agree(cases: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let n = rng.gen_range(1..=12);
        let forms = random_binomial_forms(&mut rng, n);
        let classes = cotangent_classes(&forms, n).map_err(|e| e.to_string())?;
        let closed: BTreeSet<Vec<usize>> = enumerate_ltgfan_binomial(&classes).into_iter().collect();
        let general: BTreeSet<Vec<usize>> = ltgfan_linear(&forms, n).map_err(|e| e.to_string())?.into_iter().collect();
        if closed != general {
            return Err(format!("case {case}: {forms:?} closed {closed:?} general {general:?}"));
        }
        if closed.len() as u128 != classes.fan_size() {
            return Err(format!("case {case}: fan size {} but product {}", closed.len(), classes.fan_size()));
        }
    }
    Ok(cases)
}

fn random_term(rng: &mut ChaCha8Rng, n: usize, deg: u32) -> Term {
    let mut e = vec![0u32; n];
    for _ in 0..deg {
        e[rng.gen_range(0..n)] += 1;
    }
    Term::from_exps(e)
}

/// Generators with a random linear part and a few nonlinear terms. Half of
/// them solve for one indeterminate, which makes separation common.
fn random_ideal(rng: &mut ChaCha8Rng, n: usize) -> Vec<QPoly> {
    let m = rng.gen_range(1..n);
    (0..m)
        .map(|_| {
            let mut p = QPoly::zero(n);
            let lin_terms = if rng.gen_bool(0.5) { 1 } else { rng.gen_range(0..=2) };
            for _ in 0..lin_terms {
                p.add_term(Term::var(n, rng.gen_range(0..n)), &q(rng.gen_range(-2..=2), 1));
            }
            for _ in 0..rng.gen_range(1..=2) {
                let d = rng.gen_range(2..=3);
                p.add_term(random_term(rng, n, d), &q(rng.gen_range(-2..=2), 1));
            }
            p
        })
        .filter(|p| !p.is_zero())
        .collect()
}

/// Every separating tuple found by brute force over subsets of the
/// indeterminates lies inside a leading-term set of the linear part, and
/// the verdict does not depend on which elimination ordering is used.
/// Returns the number of separating tuples seen.
pub fn separating_tuples_are_candidates(cases: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = GbOptions::with_budget(20_000);
    let mut hits = 0;
    for case in 0..cases {
        let n = rng.gen_range(2..=6);
        let gens = random_ideal(&mut rng, n);
        if gens.is_empty() {
            continue;
        }
        let dim = linear_part_of_ideal(&gens, n).map_err(|e| e.to_string())?.len();
        for s in 1..n {
            let cands: BTreeSet<Vec<usize>> = if s <= dim {
                gfan_candidates(&gens, s).map_err(|e| e.to_string())?.1.into_iter().collect()
            } else {
                BTreeSet::new()
            };
            for z in combinations(n, s) {
                let sep = check_z_separating(&gens, &z, opts).map_err(|e| e.to_string())?;
                let v = sep.verdict();
                if v == Verdict::Yes {
                    hits += 1;
                    if !cands.contains(&z) {
                        return Err(format!("case {case}: {gens:?} separating {z:?} not among {cands:?}"));
                    }
                }
                let lex = TermOrdering::lex_elimination(&z, n).map_err(|e| e.to_string())?;
                let w = check_z_separating_with(&gens, &z, &lex, opts).map_err(|e| e.to_string())?.verdict();
                if v != Verdict::Inconclusive && w != Verdict::Inconclusive && v != w {
                    return Err(format!("case {case}: {gens:?} {z:?} verdicts {v:?} vs {w:?}"));
                }
            }
        }
    }
    Ok(hits)
}

/// Random staircases in two indeterminates with at most `max_len` terms.
pub fn random_order_ideal(rng: &mut ChaCha8Rng, max_len: usize) -> OrderIdeal {
    let total = rng.gen_range(1..=max_len);
    let mut heights: Vec<u32> = Vec::new();
    let mut left = total as u32;
    while left > 0 {
        let cap = heights.last().copied().unwrap_or(left).min(left);
        let h = rng.gen_range(1..=cap);
        heights.push(h);
        left -= h;
    }
    let terms = heights
        .iter()
        .enumerate()
        .flat_map(|(i, &h)| (0..h).map(move |j| Term::from_exps(vec![i as u32, j])))
        .collect();
    OrderIdeal::from_terms(terms).expect("staircase is an order ideal")
}

/// Structural checks of the neighbour generators on random order ideals.
pub fn border_structure_holds(cases: usize, seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let oi = random_order_ideal(&mut rng, 7);
        let desc: Vec<Vec<u32>> = oi.terms().iter().map(|t| t.exps().to_vec()).collect();
        let scheme = BorderScheme::new(oi);
        let report = scheme.verify_structure::<Rational>();
        if !report.all_passed() {
            return Err(format!("case {case}: order ideal {desc:?} failed {:?}", report.failures));
        }
    }
    Ok(cases)
}

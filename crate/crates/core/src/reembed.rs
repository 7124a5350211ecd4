//! Searching for separating re-embeddings `P/I ≅ K[Y]/(I ∩ K[Y])`.
//!
//! Two candidate generators are offered: subsets of the marked terms of the
//! Gröbner fan of the linear part, and (for binomial linear parts) unions of
//! cotangent classes with one member removed. Each candidate is verified by
//! an elimination Gröbner basis.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cotangent::{cotangent_classes, is_binomial, CotangentClasses};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{
    check_z_separating, coherent_interreduce, eliminate_by_substitution, normal_form_poly,
    GBResult, GbOptions, Separation, Verdict,
};
use crate::linear_gfan::{combinations, ltgfan_linear};
use crate::poly::{linear_part_of_ideal, Poly, TermOrdering};

/// Largest candidate list the non-optimal cotangent search will build.
pub const MAX_CANDIDATES: usize = 100_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    pub gb: GbOptions,
    /// Candidates not started before this much time has passed are
    /// reported as unverified.
    pub wall: Option<Duration>,
}

/// One verified re-embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reembedding<F> {
    pub z: Vec<usize>,
    pub y: Vec<usize>,
    /// `z_i -> h_i` with `h_i ∈ K[Y]`.
    pub substitution: Vec<(usize, Poly<F>)>,
    /// Nonzero images of the generators; they generate `I ∩ K[Y]`.
    pub elimination_gens: Vec<Poly<F>>,
    pub optimal: bool,
    pub affine_cell: bool,
    /// The elimination Gröbner basis that proved separation.
    pub certificate: GBResult<F>,
}

/// A single candidate check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attempt {
    pub z: Vec<usize>,
    pub verdict: Verdict,
    /// Indeterminates that were leading terms of the elimination basis.
    pub linear_leading: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<F> {
    Found(Box<Reembedding<F>>),
    /// Every candidate was checked and rejected.
    NotFound,
    /// Some candidates hit the budget or were never started.
    Inconclusive { unverified: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfanSearch<F> {
    pub dim_lin: usize,
    pub candidates: usize,
    pub trace: Vec<Attempt>,
    pub outcome: SearchOutcome<F>,
}

/// Every verified candidate of a list, in candidate order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verified<F> {
    pub dim_lin: usize,
    pub candidates: usize,
    pub trace: Vec<Attempt>,
    pub results: Vec<Reembedding<F>>,
    /// Candidates that hit the budget or were never started.
    pub unverified: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CotangentSearch<F> {
    pub classes: CotangentClasses,
    /// False when the linear part is not binomial and fan candidates were
    /// used instead.
    pub closed_form: bool,
    pub verified: Verified<F>,
}

fn arity<F: Field>(gens: &[Poly<F>]) -> Result<usize> {
    let n = gens
        .first()
        .map(Poly::nvars)
        .ok_or_else(|| Error::TrivialCase("no generators".into()))?;
    if n < 2 {
        return Err(Error::TrivialCase("a single indeterminate".into()));
    }
    Ok(n)
}

/// Basis of the linear part; fails on generators outside the maximal ideal.
pub fn linear_part<F: Field>(gens: &[Poly<F>]) -> Result<Vec<Poly<F>>> {
    let n = arity(gens)?;
    linear_part_of_ideal(gens, n)
}

fn build<F: Field>(gens: &[Poly<F>], z: &[usize], sep: &Separation<F>, dim: usize) -> Result<Reembedding<F>> {
    let n = gens[0].nvars();
    if z.len() == n {
        return Err(Error::TrivialCase("the ideal is the maximal ideal".into()));
    }
    let tuple = sep
        .tuple(z)
        .ok_or_else(|| Error::NotSeparating("missing marker in basis".into()))?;
    let coh = coherent_interreduce(&tuple)?;
    let elimination_gens = eliminate_by_substitution(gens, &coh)?;
    Ok(Reembedding {
        z: z.to_vec(),
        y: (0..n).filter(|i| !z.contains(i)).collect(),
        substitution: coh.substitution(),
        affine_cell: elimination_gens.is_empty(),
        elimination_gens,
        optimal: z.len() == dim,
        certificate: sep.gb().clone(),
    })
}

fn attempt<F: Field>(gens: &[Poly<F>], z: &[usize], opts: GbOptions) -> Result<(Attempt, Separation<F>)> {
    let sep = check_z_separating(gens, z, opts)?;
    let linear_leading = match &sep {
        Separation::No { linear_leading, .. } => linear_leading.clone(),
        Separation::Yes(gb) | Separation::Inconclusive(gb) => crate::groebner::linear_leading_terms(gb),
    };
    Ok((
        Attempt {
            z: z.to_vec(),
            verdict: sep.verdict(),
            linear_leading,
        },
        sep,
    ))
}

/// Candidate tuples of size `s`: every `s`-subset of every leading-term
/// set of the fan of the linear part, deduplicated and sorted.
pub fn gfan_candidates<F: Field>(gens: &[Poly<F>], s: usize) -> Result<(usize, Vec<Vec<usize>>)> {
    let n = arity(gens)?;
    let lin = linear_part_of_ideal(gens, n)?;
    let dim = lin.len();
    let mut set = BTreeSet::new();
    if s >= 1 && s <= dim {
        for lt in ltgfan_linear(&lin, n)? {
            for pick in combinations(lt.len(), s) {
                set.insert(pick.iter().map(|&i| lt[i]).collect::<Vec<_>>());
            }
        }
    }
    Ok((dim, set.into_iter().collect()))
}

/// Tries the fan candidates of size `s` in order and returns the first one
/// that verifies. Candidates are checked in parallel batches; the result
/// does not depend on the number of threads.
pub fn find_reembedding_via_gfan<F: Field>(gens: &[Poly<F>], s: usize, opts: SearchOptions) -> Result<GfanSearch<F>> {
    let (dim, cands) = gfan_candidates(gens, s)?;
    let start = Instant::now();
    let batch = rayon::current_num_threads().max(1);
    let mut trace = Vec::new();
    let mut unverified = Vec::new();
    for (b, chunk) in cands.chunks(batch).enumerate() {
        if opts.wall.is_some_and(|w| start.elapsed() > w) {
            unverified.extend(cands[b * batch..].iter().cloned());
            break;
        }
        let results: Vec<(Attempt, Separation<F>)> = chunk
            .par_iter()
            .map(|z| attempt(gens, z, opts.gb))
            .collect::<Result<_>>()?;
        for (att, sep) in results {
            let z = att.z.clone();
            let verdict = att.verdict;
            trace.push(att);
            match verdict {
                Verdict::Yes => {
                    let found = build(gens, &z, &sep, dim)?;
                    return Ok(GfanSearch {
                        dim_lin: dim,
                        candidates: cands.len(),
                        trace,
                        outcome: SearchOutcome::Found(Box::new(found)),
                    });
                }
                Verdict::Inconclusive => unverified.push(z),
                Verdict::No => {}
            }
        }
    }
    let outcome = if unverified.is_empty() {
        SearchOutcome::NotFound
    } else {
        SearchOutcome::Inconclusive { unverified }
    };
    Ok(GfanSearch {
        dim_lin: dim,
        candidates: cands.len(),
        trace,
        outcome,
    })
}

fn proper_subsets(class: &[usize]) -> Vec<Vec<usize>> {
    let k = class.len();
    (0u64..(1u64 << k) - 1)
        .map(|mask| (0..k).filter(|b| mask >> b & 1 == 1).map(|b| class[b]).collect())
        .collect()
}

/// Candidate tuples from cotangent classes. With `optimal_only`, one member
/// is dropped from every proper class; otherwise any subset of the trivial
/// class combined with proper subsets of the proper classes.
pub fn cotangent_candidates(classes: &CotangentClasses, optimal_only: bool) -> Result<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<usize>> = if optimal_only {
        vec![classes.trivial.clone()]
    } else {
        if classes.trivial.len() > 20 {
            return Err(Error::TooLarge("trivial class too large for subset search".into()));
        }
        proper_subsets(&[classes.trivial.clone(), vec![usize::MAX]].concat())
            .into_iter()
            .map(|mut v| {
                v.retain(|&i| i != usize::MAX);
                v
            })
            .collect()
    };
    for class in &classes.proper {
        let choices: Vec<Vec<usize>> = if optimal_only {
            class
                .iter()
                .map(|&omit| class.iter().copied().filter(|&i| i != omit).collect())
                .collect()
        } else {
            if class.len() > 20 {
                return Err(Error::TooLarge("proper class too large for subset search".into()));
            }
            proper_subsets(class)
        };
        if out.len().saturating_mul(choices.len()) > MAX_CANDIDATES {
            return Err(Error::TooLarge(format!("more than {MAX_CANDIDATES} candidates")));
        }
        out = out
            .iter()
            .flat_map(|p| {
                choices.iter().map(move |c| {
                    let mut z = p.clone();
                    z.extend(c);
                    z
                })
            })
            .collect();
    }
    let mut seen = BTreeSet::new();
    Ok(out
        .into_iter()
        .filter_map(|mut z| {
            z.sort_unstable();
            (!z.is_empty() && seen.insert(z.clone())).then_some(z)
        })
        .collect())
}

/// Verifies every cotangent candidate and returns all that succeed, in
/// candidate order. Falls back to fan candidates when the linear part is
/// not binomial.
pub fn find_reembedding_via_cotangent<F: Field>(
    gens: &[Poly<F>],
    optimal_only: bool,
    opts: SearchOptions,
) -> Result<CotangentSearch<F>> {
    let n = arity(gens)?;
    let lin = linear_part_of_ideal(gens, n)?;
    let dim = lin.len();
    let classes = cotangent_classes(&lin, n)?;
    let closed_form = is_binomial(&lin);
    let cands = if closed_form {
        cotangent_candidates(&classes, optimal_only)?
    } else if optimal_only {
        gfan_candidates(gens, dim)?.1
    } else {
        let mut all = Vec::new();
        for s in 1..=dim {
            all.extend(gfan_candidates(gens, s)?.1);
        }
        all
    };
    let verified = verify_candidates(gens, &cands, dim, opts)?;
    Ok(CotangentSearch {
        classes,
        closed_form,
        verified,
    })
}

/// Checks all candidates in parallel and collects the successes in
/// candidate order.
pub fn verify_candidates<F: Field>(
    gens: &[Poly<F>],
    cands: &[Vec<usize>],
    dim: usize,
    opts: SearchOptions,
) -> Result<Verified<F>> {
    let start = Instant::now();
    let checked: Vec<Option<(Attempt, Separation<F>)>> = cands
        .par_iter()
        .map(|z| {
            if opts.wall.is_some_and(|w| start.elapsed() > w) {
                Ok(None)
            } else {
                attempt(gens, z, opts.gb).map(Some)
            }
        })
        .collect::<Result<_>>()?;
    let mut trace = Vec::new();
    let mut results = Vec::new();
    let mut unverified = Vec::new();
    for (z, item) in cands.iter().zip(checked) {
        match item {
            None => unverified.push(z.clone()),
            Some((att, sep)) => {
                match att.verdict {
                    Verdict::Yes => results.push(build(gens, z, &sep, dim)?),
                    Verdict::Inconclusive => unverified.push(z.clone()),
                    Verdict::No => {}
                }
                trace.push(att);
            }
        }
    }
    Ok(Verified {
        dim_lin: dim,
        candidates: cands.len(),
        trace,
        results,
        unverified,
    })
}

/// All fan candidates of size `s` that verify.
pub fn find_all_via_gfan<F: Field>(gens: &[Poly<F>], s: usize, opts: SearchOptions) -> Result<Verified<F>> {
    let (dim, cands) = gfan_candidates(gens, s)?;
    verify_candidates(gens, &cands, dim, opts)
}

/// Whether the re-embedding is optimal: `|Z| = dim Lin(I)`. For binomial
/// linear parts this also requires every trivial indeterminate in `Z` and
/// exactly one member of each proper class in `Y`.
pub fn certify_optimal<F: Field>(res: &Reembedding<F>, gens: &[Poly<F>]) -> Result<bool> {
    let lin = linear_part(gens)?;
    if res.z.len() != lin.len() {
        return Ok(false);
    }
    if !is_binomial(&lin) {
        return Ok(true);
    }
    let classes = cotangent_classes(&lin, gens[0].nvars())?;
    let trivial_ok = classes.trivial.iter().all(|i| res.z.contains(i));
    let classes_ok = classes
        .proper
        .iter()
        .all(|c| c.iter().filter(|i| res.y.contains(i)).count() == 1);
    if !(trivial_ok && classes_ok) {
        log::warn!("optimal tuple violates the cotangent class structure");
    }
    Ok(trivial_ok && classes_ok)
}

/// Whether `P/I ≅ K[Y]`: the substitution must annihilate every generator.
/// Also confirms that the separating polynomials alone generate `I`.
pub fn certify_affine_cell<F: Field>(res: &Reembedding<F>, gens: &[Poly<F>]) -> Result<Verdict> {
    if !res.certificate.is_complete() {
        return Ok(Verdict::Inconclusive);
    }
    let n = gens.first().map(Poly::nvars).unwrap_or(0);
    let tuple: Vec<Poly<F>> = res
        .substitution
        .iter()
        .map(|(z, h)| &Poly::var(n, *z) - h)
        .collect();
    let mut images: Vec<Option<Poly<F>>> = vec![None; n];
    for (z, h) in &res.substitution {
        images[*z] = Some(h.clone());
    }
    if gens.iter().any(|g| !g.substitute(&images).is_zero()) {
        return Ok(Verdict::No);
    }
    // Distinct indeterminate leading terms are pairwise coprime, so the
    // tuple is already a Gröbner basis of the ideal it generates.
    let o = TermOrdering::elimination(&res.z, n)?;
    if gens.iter().any(|g| !normal_form_poly(g, &tuple, &o).is_zero()) {
        log::warn!("separating tuple does not generate the ideal");
        return Ok(Verdict::No);
    }
    Ok(Verdict::Yes)
}

/// A re-embedding for a caller-chosen `Z`, if the ideal is `Z`-separating.
pub fn reembed_with<F: Field>(gens: &[Poly<F>], z: &[usize], opts: GbOptions) -> Result<(Attempt, Option<Reembedding<F>>)> {
    let n = arity(gens)?;
    let dim = linear_part_of_ideal(gens, n)?.len();
    let (att, sep) = attempt(gens, z, opts)?;
    let found = match att.verdict {
        Verdict::Yes => Some(build(gens, z, &sep, dim)?),
        _ => None,
    };
    Ok((att, found))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::poly::Ring;

    #[test]
    fn principal_ideal() {
        let r = Ring::new(&["x1", "x2"]).unwrap();
        let g = r.parse_polys::<Rational>("x1 - x2^2").unwrap();
        let s = find_reembedding_via_gfan(&g, 1, SearchOptions::default()).unwrap();
        let SearchOutcome::Found(res) = s.outcome else {
            panic!("expected a re-embedding");
        };
        assert_eq!(res.z, vec![0]);
        assert!(res.optimal && res.affine_cell);
        assert_eq!(r.fmt_poly(&res.substitution[0].1), "x2^2");
        assert!(certify_optimal(&res, &g).unwrap());
        assert_eq!(certify_affine_cell(&res, &g).unwrap(), Verdict::Yes);
    }

    #[test]
    fn trivial_cases_rejected() {
        let r = Ring::new(&["x"]).unwrap();
        let g = r.parse_polys::<Rational>("x - x^2").unwrap();
        assert!(matches!(
            find_reembedding_via_gfan(&g, 1, SearchOptions::default()),
            Err(Error::TrivialCase(_))
        ));
        let r2 = Ring::new(&["x", "y"]).unwrap();
        let m = r2.parse_polys::<Rational>("x, y").unwrap();
        assert!(matches!(
            find_reembedding_via_gfan(&m, 2, SearchOptions::default()),
            Err(Error::TrivialCase(_))
        ));
    }

    #[test]
    fn no_linear_part_means_nothing_to_find() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let g = r.parse_polys::<Rational>("x^2 - y^3").unwrap();
        let s = find_reembedding_via_gfan(&g, 1, SearchOptions::default()).unwrap();
        assert_eq!(s.candidates, 0);
        assert_eq!(s.outcome, SearchOutcome::NotFound);
        let c = find_reembedding_via_cotangent(&g, true, SearchOptions::default()).unwrap();
        assert!(c.verified.results.is_empty() && c.verified.trace.is_empty());
    }

    #[test]
    fn candidate_lists() {
        let classes = CotangentClasses {
            nvars: 5,
            trivial: vec![0],
            basic: vec![4],
            proper: vec![vec![1, 2], vec![3]],
        };
        let opt = cotangent_candidates(&classes, true).unwrap();
        assert_eq!(opt, vec![vec![0, 2], vec![0, 1]]);
        let all = cotangent_candidates(&classes, false).unwrap();
        assert_eq!(all.len(), 2 * 3 - 1);
        let empty = CotangentClasses {
            nvars: 2,
            trivial: vec![],
            basic: vec![0, 1],
            proper: vec![],
        };
        assert!(cotangent_candidates(&empty, true).unwrap().is_empty());
    }

    #[test]
    fn negative_affine_cell() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let g = r.parse_polys::<Rational>("x - y^2, y^4 + y^2").unwrap();
        let (att, res) = reembed_with(&g, &[0], GbOptions::default()).unwrap();
        assert_eq!(att.verdict, Verdict::Yes);
        let res = res.unwrap();
        assert!(!res.affine_cell);
        assert_eq!(r.fmt_poly(&res.elimination_gens[0]), "y^4 + y^2");
        assert_eq!(certify_affine_cell(&res, &g).unwrap(), Verdict::No);
    }
}

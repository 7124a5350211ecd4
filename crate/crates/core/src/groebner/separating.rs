//! Separating tuples: the Gröbner-basis check, coherent interreduction,
//! elimination by substitution and a desk-scale regular-sequence test.

use serde::{Deserialize, Serialize};

use super::buchberger::{buchberger, GBResult, GbOptions};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Poly, Term, TermOrdering};

/// Largest support any intermediate polynomial may reach during
/// substitution before we give up.
pub const EXPANSION_GUARD: usize = 200_000;

/// Three-valued answer for checks that can run out of budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    Inconclusive,
}

/// Polynomials `f_1..f_s` whose leading terms are the indeterminates
/// `markers[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingTuple<F> {
    pub polys: Vec<Poly<F>>,
    pub markers: Vec<usize>,
    pub coherent: bool,
}

impl<F: Field> SeparatingTuple<F> {
    /// Builds a tuple and computes its coherence flag.
    pub fn new(polys: Vec<Poly<F>>, markers: Vec<usize>) -> Result<Self> {
        if polys.len() != markers.len() {
            return Err(Error::ArityMismatch {
                expected: markers.len(),
                found: polys.len(),
            });
        }
        let mut t = SeparatingTuple {
            polys,
            markers,
            coherent: false,
        };
        t.coherent = t.is_coherent();
        Ok(t)
    }

    /// No marker `z_j` occurs in `f_i` for `i != j`.
    pub fn is_coherent(&self) -> bool {
        self.polys.iter().enumerate().all(|(i, f)| {
            self.markers
                .iter()
                .enumerate()
                .all(|(j, &z)| i == j || !f.contains_var(z))
        })
    }

    /// `h_i = z_i - f_i` for monic `f_i`: the image of `z_i` under the
    /// re-embedding.
    pub fn substitution(&self) -> Vec<(usize, Poly<F>)> {
        self.markers
            .iter()
            .zip(&self.polys)
            .map(|(&z, f)| {
                let nv = f.nvars();
                (z, &Poly::var(nv, z) - f)
            })
            .collect()
    }
}

/// Result of [`check_z_separating`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation<F> {
    /// Every marker is the leading term of a reduced basis element.
    Yes(GBResult<F>),
    /// Some marker is missing; `linear_leading` lists the indeterminates
    /// that are leading terms of the reduced basis.
    No {
        gb: GBResult<F>,
        linear_leading: Vec<usize>,
    },
    Inconclusive(GBResult<F>),
}

impl<F: Field> Separation<F> {
    pub fn verdict(&self) -> Verdict {
        match self {
            Separation::Yes(_) => Verdict::Yes,
            Separation::No { .. } => Verdict::No,
            Separation::Inconclusive(_) => Verdict::Inconclusive,
        }
    }

    pub fn gb(&self) -> &GBResult<F> {
        match self {
            Separation::Yes(gb) | Separation::Inconclusive(gb) => gb,
            Separation::No { gb, .. } => gb,
        }
    }

    /// The separating tuple read off a positive answer, in marker order.
    pub fn tuple(&self, z: &[usize]) -> Option<SeparatingTuple<F>> {
        let Separation::Yes(gb) = self else {
            return None;
        };
        let polys = z
            .iter()
            .map(|&zi| {
                gb.basis
                    .iter()
                    .find(|g| leading_var(g, &gb.ordering) == Some(zi))
                    .cloned()
            })
            .collect::<Option<Vec<_>>>()?;
        SeparatingTuple::new(polys, z.to_vec()).ok()
    }
}

fn leading_var<F: Field>(g: &Poly<F>, o: &TermOrdering) -> Option<usize> {
    g.leading_term(o).ok().and_then(|(t, _)| t.as_var())
}

/// Indeterminates that occur as leading terms of the basis.
pub fn linear_leading_terms<F: Field>(gb: &GBResult<F>) -> Vec<usize> {
    let mut v: Vec<usize> = gb
        .basis
        .iter()
        .filter_map(|g| leading_var(g, &gb.ordering))
        .collect();
    v.sort_unstable();
    v
}

/// Decides whether the ideal is `Z`-separating using the block elimination
/// ordering for `z`.
pub fn check_z_separating<F: Field>(gens: &[Poly<F>], z: &[usize], opts: GbOptions) -> Result<Separation<F>> {
    let n = gens
        .first()
        .map(Poly::nvars)
        .ok_or(Error::EmptyIndeterminates)?;
    let o = TermOrdering::elimination(z, n)?;
    check_z_separating_with(gens, z, &o, opts)
}

/// Same as [`check_z_separating`] for a caller-supplied elimination
/// ordering.
pub fn check_z_separating_with<F: Field>(
    gens: &[Poly<F>],
    z: &[usize],
    o: &TermOrdering,
    opts: GbOptions,
) -> Result<Separation<F>> {
    if z.is_empty() {
        return Err(Error::EmptyIndeterminates);
    }
    if !o.is_elimination_for(z) {
        return Err(Error::NotATermOrdering("not an elimination ordering for the markers".into()));
    }
    let gb = buchberger(gens, o, opts)?;
    if !gb.is_complete() {
        return Ok(Separation::Inconclusive(gb));
    }
    let lead = linear_leading_terms(&gb);
    if !gb.is_unit_ideal() && z.iter().all(|zi| lead.binary_search(zi).is_ok()) {
        Ok(Separation::Yes(gb))
    } else {
        Ok(Separation::No {
            gb,
            linear_leading: lead,
        })
    }
}

/// Checks that `z` occurs in `f` only as the single term `c * z` with a
/// nonzero constant `c`, and returns `c`.
fn marker_coefficient<F: Field>(f: &Poly<F>, z: usize) -> Result<F> {
    let zt = Term::var(f.nvars(), z);
    let mut coeff = None;
    for (t, c) in f.iter() {
        if t.exp(z) > 0 {
            if *t != zt {
                return Err(Error::NotSeparating(format!(
                    "marker {z} occurs in a non-linear term"
                )));
            }
            coeff = Some(c.clone());
        }
    }
    coeff.ok_or_else(|| Error::NotSeparating(format!("marker {z} does not occur")))
}

/// Rewrites the tuple so that no marker occurs outside its own polynomial,
/// then makes every `f_i` monic in `z_i`.
///
/// Each `z_j` in `f_i` is replaced by `z_j - f_j / c_j`; repeated until
/// nothing changes. Fails if a marker stops being linear or the supports
/// explode.
pub fn coherent_interreduce<F: Field>(tuple: &SeparatingTuple<F>) -> Result<SeparatingTuple<F>> {
    let s = tuple.markers.len();
    let mut polys = tuple.polys.clone();
    for _round in 0..=s {
        let mut images: Vec<Option<Poly<F>>> = vec![None; polys.first().map_or(0, Poly::nvars)];
        let mut changed = false;
        for (f, &z) in polys.iter().zip(&tuple.markers) {
            let c = marker_coefficient(f, z)?;
            let nv = f.nvars();
            images[z] = Some(&Poly::var(nv, z) - &f.scale(&c.inv()));
        }
        for i in 0..s {
            let zi = tuple.markers[i];
            if !tuple
                .markers
                .iter()
                .any(|&zj| zj != zi && polys[i].contains_var(zj))
            {
                continue;
            }
            let mut own = images.clone();
            own[zi] = None;
            polys[i] = polys[i].substitute(&own);
            if polys[i].len() > EXPANSION_GUARD {
                return Err(Error::ExpansionGuard(format!(
                    "support exceeded {EXPANSION_GUARD} terms"
                )));
            }
            changed = true;
        }
        if !changed {
            let polys = polys
                .iter()
                .zip(&tuple.markers)
                .map(|(f, &z)| Ok(f.scale(&marker_coefficient(f, z)?.inv())))
                .collect::<Result<Vec<_>>>()?;
            return SeparatingTuple::new(polys, tuple.markers.clone());
        }
    }
    Err(Error::ExpansionGuard("substitution did not stabilise".into()))
}

/// Applies `z_i -> h_i` to every generator and returns the nonzero
/// images, which generate the elimination ideal.
pub fn eliminate_by_substitution<F: Field>(gens: &[Poly<F>], coh: &SeparatingTuple<F>) -> Result<Vec<Poly<F>>> {
    if !coh.is_coherent() {
        return Err(Error::NotSeparating("tuple is not coherent".into()));
    }
    let Some(nv) = gens.first().map(Poly::nvars).or(coh.polys.first().map(Poly::nvars)) else {
        return Ok(Vec::new());
    };
    let mut images: Vec<Option<Poly<F>>> = vec![None; nv];
    for (z, h) in coh.substitution() {
        images[z] = Some(h);
    }
    let mut out = Vec::new();
    for g in gens {
        let r = g.substitute(&images);
        if r.len() > EXPANSION_GUARD {
            return Err(Error::ExpansionGuard(format!(
                "support exceeded {EXPANSION_GUARD} terms"
            )));
        }
        if !r.is_zero() {
            out.push(r);
        }
    }
    Ok(out)
}

/// Largest ring the regular-sequence check accepts.
pub const REGULAR_MAX_VARS: usize = 6;
/// Largest generator degree the regular-sequence check accepts.
pub const REGULAR_MAX_DEGREE: u32 = 8;

fn extend_ring<F: Field>(f: &Poly<F>, t_factor: u32) -> Poly<F> {
    let n = f.nvars();
    Poly::from_terms(
        n + 1,
        f.iter().map(|(t, c)| {
            let mut e = t.exps().to_vec();
            e.push(t_factor);
            (Term::from_exps(e), c.clone())
        }),
    )
}

/// Generators of `J : f` for `J = <gens>`, using `J ∩ <f>` computed by
/// eliminating an extra indeterminate `t` from `t J + (1 - t) <f>`.
pub fn colon_ideal<F: Field>(gens: &[Poly<F>], f: &Poly<F>, opts: GbOptions) -> Result<Option<Vec<Poly<F>>>> {
    let n = f.nvars();
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut ext: Vec<Poly<F>> = gens.iter().map(|g| extend_ring(g, 1)).collect();
    let fe = extend_ring(f, 0);
    ext.push(&fe - &extend_ring(f, 1));
    let o = TermOrdering::elimination(&[n], n + 1)?;
    let gb = buchberger(&ext, &o, opts)?;
    if !gb.is_complete() {
        return Ok(None);
    }
    let mut out = Vec::new();
    for g in gb.basis.iter().filter(|g| !g.contains_var(n)) {
        let g = Poly::from_terms(
            n,
            g.iter()
                .map(|(t, c)| (Term::from_exps(t.exps()[..n].to_vec()), c.clone())),
        );
        let q = g
            .exact_div(f, &TermOrdering::degrevlex(n))
            .ok_or_else(|| Error::NotSeparating("intersection element not divisible".into()))?;
        out.push(q);
    }
    Ok(Some(out))
}

/// Whether `fs` is a regular sequence in the given order: each `f_i` is a
/// nonzerodivisor modulo the earlier ones and the quotient is nonzero.
/// Refuses rings with more than six indeterminates or generators of degree
/// above eight.
pub fn check_regular_sequence<F: Field>(fs: &[Poly<F>], opts: GbOptions) -> Result<Verdict> {
    let Some(n) = fs.first().map(Poly::nvars) else {
        return Ok(Verdict::Yes);
    };
    if n > REGULAR_MAX_VARS {
        return Err(Error::TooLarge(format!("{n} indeterminates")));
    }
    for f in fs {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.total_degree().unwrap_or(0) > REGULAR_MAX_DEGREE {
            return Err(Error::TooLarge("generator degree above 8".into()));
        }
    }
    let o = TermOrdering::degrevlex(n);
    let all = buchberger(fs, &o, opts)?;
    if !all.is_complete() {
        return Ok(Verdict::Inconclusive);
    }
    if all.is_unit_ideal() {
        return Ok(Verdict::No);
    }
    let mut inconclusive = false;
    for i in 1..fs.len() {
        let prefix = &fs[..i];
        let Some(colon) = colon_ideal(prefix, &fs[i], opts)? else {
            inconclusive = true;
            continue;
        };
        let j = buchberger(prefix, &o, opts)?;
        if !j.is_complete() {
            inconclusive = true;
            continue;
        }
        if colon.iter().any(|g| !j.contains(g)) {
            return Ok(Verdict::No);
        }
    }
    Ok(if inconclusive {
        Verdict::Inconclusive
    } else {
        Verdict::Yes
    })
}

/// Regular in every order of its elements.
pub fn check_permutable_regular_sequence<F: Field>(fs: &[Poly<F>], opts: GbOptions) -> Result<Verdict> {
    let mut idx: Vec<usize> = (0..fs.len()).collect();
    let mut worst = Verdict::Yes;
    loop {
        let perm: Vec<Poly<F>> = idx.iter().map(|&i| fs[i].clone()).collect();
        match check_regular_sequence(&perm, opts)? {
            Verdict::No => return Ok(Verdict::No),
            Verdict::Inconclusive => worst = Verdict::Inconclusive,
            Verdict::Yes => {}
        }
        if !next_permutation(&mut idx) {
            return Ok(worst);
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::poly::Ring;

    fn ring(names: &[&str]) -> Ring {
        Ring::new(names).unwrap()
    }

    #[test]
    fn principal_binomial_separates() {
        let r = ring(&["x1", "x2"]);
        let g = vec![r.parse_poly::<Rational>("x1 - x2").unwrap()];
        let s = check_z_separating(&g, &[0], GbOptions::default()).unwrap();
        assert_eq!(s.verdict(), Verdict::Yes);
        assert!(s.tuple(&[0]).unwrap().coherent);
        assert!(check_z_separating(&g, &[], GbOptions::default()).is_err());
    }

    #[test]
    fn two_step_interreduction() {
        let r = ring(&["x", "y", "z", "w"]);
        let f = r
            .parse_polys::<Rational>("w^2 + x - y + 3z, zw^2 + w^3 + y, w^3 - xz + yz - 3z^2 + y")
            .unwrap();
        let t = SeparatingTuple::new(f[..2].to_vec(), vec![0, 1]).unwrap();
        assert!(!t.coherent);
        let c = coherent_interreduce(&t).unwrap();
        assert!(c.coherent);
        assert_eq!(r.fmt_poly(&c.polys[0]), "z*w^2 + w^3 + w^2 + x + 3z");
        assert_eq!(c.polys[1], f[1]);
        assert!(eliminate_by_substitution(&f, &c).unwrap().is_empty());
    }

    #[test]
    fn single_marker_is_untouched() {
        let r = ring(&["z1", "y"]);
        let f = r.parse_poly::<Rational>("z1 - y^2").unwrap();
        let t = SeparatingTuple::new(vec![f.clone()], vec![0]).unwrap();
        assert_eq!(coherent_interreduce(&t).unwrap().polys, vec![f]);
    }

    #[test]
    fn nonlinear_marker_rejected() {
        let r = ring(&["x", "y"]);
        let f = r.parse_poly::<Rational>("x^2 + x - y").unwrap();
        let g = r.parse_poly::<Rational>("y - x").unwrap();
        let t = SeparatingTuple::new(vec![g, f], vec![1, 0]).unwrap();
        assert!(matches!(coherent_interreduce(&t), Err(Error::NotSeparating(_))));
    }

    #[test]
    fn regular_sequences() {
        let r = ring(&["x", "y"]);
        let opts = GbOptions::default();
        let xy = r.parse_polys::<Rational>("x, y").unwrap();
        assert_eq!(check_regular_sequence(&xy, opts).unwrap(), Verdict::Yes);
        let bad = r.parse_polys::<Rational>("x, x*y").unwrap();
        assert_eq!(check_regular_sequence(&bad, opts).unwrap(), Verdict::No);
        let colon = colon_ideal(&bad[..1], &bad[1], opts).unwrap().unwrap();
        assert_eq!(colon.len(), 1);
        assert_eq!(r.fmt_poly(&colon[0]), "1");
        let unit = r.parse_polys::<Rational>("x, x + 1").unwrap();
        assert_eq!(check_regular_sequence(&unit, opts).unwrap(), Verdict::No);
        let big = Ring::new(&["a", "b", "c", "d", "e", "f", "g"]).unwrap();
        let p = big.parse_polys::<Rational>("a").unwrap();
        assert!(matches!(check_regular_sequence(&p, opts), Err(Error::TooLarge(_))));
    }

    #[test]
    fn permutations() {
        let mut v = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 6);
    }
}

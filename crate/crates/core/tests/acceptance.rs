//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so the report is always printed; exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::props;
use common::*;
use reembed_core::cotangent::{cotangent_classes, enumerate_ltgfan_binomial, sigma_leading_s};
use reembed_core::groebner::*;
use reembed_core::linear_gfan::gfan_linear;
use reembed_core::poly::rref_forms;
use reembed_core::reembed::*;
use reembed_core::{QPoly, Rational, TermOrdering};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn err(e: reembed_core::Error) -> String {
    e.to_string()
}

fn sorted(mut v: Vec<QPoly>) -> Vec<QPoly> {
    v.sort_by_key(|p| format!("{p:?}"));
    v
}

fn two_forms() -> Check {
    let r = ring(&XYZW);
    let fan = gfan_linear(&polys(&r, TWO_FORMS), 4).map_err(err)?;
    let expected = [
        [("x", "x - z + 2w"), ("y", "y + 2w")],
        [("x", "x - y - z"), ("w", "w + 1/2*y")],
        [("y", "y + 2w"), ("z", "z - x - 2w")],
        [("y", "y - x + z"), ("w", "w + 1/2*x - 1/2*z")],
        [("z", "z - x + y"), ("w", "w + 1/2*y")],
    ];
    ensure(fan.gbs.len() == 5, || format!("{} marked bases", fan.gbs.len()))?;
    for (gb, want) in fan.gbs.iter().zip(expected) {
        let want: Vec<(usize, QPoly)> = want
            .iter()
            .map(|(m, p)| (r.index_of(m).unwrap(), r.parse_poly(p).unwrap()))
            .collect();
        ensure(gb.pairs == want, || format!("got {}", gb.display(&r)))?;
    }
    Ok(())
}

fn hidden_separation() -> Check {
    let r = ring(&XYZ);
    let f = polys(&r, HIDDEN_SEPARATION);
    let o = TermOrdering::elimination(&[0], 3).map_err(err)?;
    let gb = buchberger(&f, &o, GbOptions::default()).map_err(err)?;
    ensure(gb.is_complete(), || "basis incomplete".into())?;
    let want = polys(&r, "x - y^2, y^4 + y^2");
    ensure(sorted(gb.basis.clone()) == sorted(want), || format!("basis {:?}", gb.basis))?;
    let v = check_z_separating(&f, &[0], GbOptions::default()).map_err(err)?.verdict();
    ensure(v == Verdict::Yes, || format!("verdict {v:?}"))
}

fn curve() -> Check {
    let r = ring(&XYZW);
    let f = polys(&r, CURVE);
    let s = find_reembedding_via_gfan(&f, 3, SearchOptions::default()).map_err(err)?;
    let tried: Vec<(Vec<usize>, Verdict)> = s.trace.iter().map(|a| (a.z.clone(), a.verdict)).collect();
    ensure(tried == vec![(vec![0, 1, 2], Verdict::No), (vec![0, 1, 3], Verdict::Yes)], || format!("trace {tried:?}"))?;
    ensure(s.trace[0].linear_leading == vec![0], || format!("rejection generated by {:?}", s.trace[0].linear_leading))?;
    let SearchOutcome::Found(res) = s.outcome else {
        return Err("no re-embedding".into());
    };
    let want = polys(&r, "x - 1/2*z^6 - z^4 - z^2, y + 1/2*z^6 + z^4, w + z^3 + z");
    ensure(sorted(res.certificate.basis.clone()) == sorted(want), || format!("basis {:?}", res.certificate.basis))?;
    let cert = certify_affine_cell(&res, &f).map_err(err)?;
    ensure(cert == Verdict::Yes, || format!("affine cell {cert:?}"))
}

fn affine_plane() -> Check {
    let r = ring(&XYZW);
    let f = polys(&r, AFFINE_PLANE);
    let t = SeparatingTuple::new(f[..2].to_vec(), vec![0, 1]).map_err(err)?;
    let c = coherent_interreduce(&t).map_err(err)?;
    let f1 = r.parse_poly("z*w^2 + w^3 + w^2 + x + 3z").unwrap();
    ensure(c.polys[0] == f1, || format!("f1' = {}", r.fmt_poly(&c.polys[0])))?;
    let rest = eliminate_by_substitution(&f[2..], &c).map_err(err)?;
    ensure(rest.is_empty(), || "f3 survives the substitution".into())?;
    let (att, res) = reembed_with(&f, &[0, 1], GbOptions::default()).map_err(err)?;
    ensure(att.verdict == Verdict::Yes, || format!("verdict {:?}", att.verdict))?;
    let res = res.ok_or("no re-embedding")?;
    ensure(res.y == vec![2, 3], || format!("Y = {:?}", res.y))?;
    let cert = certify_affine_cell(&res, &f).map_err(err)?;
    ensure(cert == Verdict::Yes, || format!("affine cell {cert:?}"))?;
    let seq = check_regular_sequence(&[c.polys[0].clone(), c.polys[1].clone()], GbOptions::default()).map_err(err)?;
    ensure(seq == Verdict::Yes, || format!("regular sequence {seq:?}"))
}

fn staircase_run() -> Check {
    let s = staircase();
    let dims = (s.mu(), s.nu(), s.ring().arity());
    ensure(dims == (8, 5, 40), || format!("mu, nu, n = {dims:?}"))?;
    let gens = s.defining_ideal::<Rational>();
    ensure(gens.len() == 32, || format!("{} generators", gens.len()))?;

    let lin: Vec<QPoly> = gens.iter().map(|g| g.homogeneous_component(1)).collect();
    let listed = s.ring().parse_polys::<Rational>(LISTED_LINEAR_PARTS).map_err(err)?;
    let ours = rref_forms(&lin, 40).map_err(err)?;
    ensure(ours.len() == 24, || format!("dim Lin = {}", ours.len()))?;
    ensure(ours == rref_forms(&listed, 40).map_err(err)?, || "linear parts span a different space".into())?;

    let classes = cotangent_classes(&lin, 40).map_err(err)?;
    ensure(classes.trivial == indices(&s, &TRIVIAL_CLASS), || format!("E0 = {:?}", names(&s, &classes.trivial)))?;
    let proper: BTreeSet<Vec<String>> = classes.proper.iter().map(|c| names(&s, c)).collect();
    let want: BTreeSet<Vec<String>> = [vec!["c51", "c85"], vec!["c43", "c54"], vec!["c41", "c52", "c75"]]
        .iter()
        .map(|c| c.iter().map(|x| x.to_string()).collect())
        .collect();
    ensure(proper == want, || format!("proper classes {proper:?}"))?;
    ensure(classes.basic == indices(&s, &BASIC), || format!("basic {:?}", names(&s, &classes.basic)))?;
    let rim = s.rim_indeterminates();
    ensure(classes.basic.iter().all(|b| rim.contains(b)), || "a basic indeterminate off the rim".into())?;
    ensure(enumerate_ltgfan_binomial(&classes).len() == 12, || "LTGFan size".into())?;
    let sigma = sigma_leading_s(&classes, &TermOrdering::degrevlex(40));
    ensure(sigma == indices(&s, &S_SIGMA), || format!("S_sigma {:?}", names(&s, &sigma)))?;

    let search = find_reembedding_via_cotangent(&gens, true, SearchOptions::default()).map_err(err)?;
    let v = &search.verified;
    ensure(v.candidates == 12 && v.results.len() == 12, || {
        format!("{} of {} candidates verified", v.results.len(), v.candidates)
    })?;
    for res in &v.results {
        ensure(res.y.len() == 16, || format!("|Y| = {}", res.y.len()))?;
        let cert = certify_affine_cell(res, &gens).map_err(err)?;
        ensure(cert == Verdict::Yes, || format!("{:?}: affine cell {cert:?}", names(&s, &res.z)))?;
    }
    Ok(())
}

fn property_suite() -> Check {
    let named = [
        ("matroid bases", props::matroid_bases_agree(200, 7)),
        ("binomial fans", props::binomial_fans_agree(100, 11)),
        ("fan containment", props::separating_tuples_are_candidates(50, 13)),
        ("border structure", props::border_structure_holds(30, 17)),
    ];
    for (name, outcome) in named {
        outcome.map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn negative_control() -> Check {
    let r = ring(&["x", "y"]);
    let f = polys(&r, "x - y^2, y^4 + y^2");
    let (att, res) = reembed_with(&f, &[0], GbOptions::default()).map_err(err)?;
    ensure(att.verdict == Verdict::Yes, || format!("verdict {:?}", att.verdict))?;
    let res = res.ok_or("no re-embedding")?;
    let cert = certify_affine_cell(&res, &f).map_err(err)?;
    ensure(cert == Verdict::No, || format!("affine cell {cert:?}"))?;
    ensure(res.elimination_gens == polys(&r, "y^4 + y^2"), || format!("{:?}", res.elimination_gens))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("two-form fan", two_forms, Duration::from_millis(100)),
        ("hidden separation", hidden_separation, Duration::from_secs(1)),
        ("curve search", curve, Duration::from_secs(1)),
        ("affine plane", affine_plane, Duration::from_secs(1)),
        ("staircase scheme", staircase_run, Duration::from_secs(60)),
        ("property suite", property_suite, Duration::from_secs(300)),
        ("negative control", negative_control, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (k, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(took <= *limit, || format!("took {took:?}, limit {limit:?}"))
        });
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({took:.2?})", k + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({took:.2?}): {e}", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

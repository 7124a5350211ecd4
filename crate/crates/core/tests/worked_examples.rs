mod common;

use common::*;
use reembed_core::cotangent::{cotangent_classes, enumerate_ltgfan_binomial, sigma_leading_s};
use reembed_core::groebner::*;
use reembed_core::linear_gfan::{gfan_linear, ltgfan_linear};
use reembed_core::poly::{linear_forms_matrix, linear_part_of_ideal, rref_forms};
use reembed_core::reembed::*;
use reembed_core::{QPoly, TermOrdering};

fn set(mut v: Vec<QPoly>) -> Vec<QPoly> {
    v.sort_by_key(|p| format!("{p:?}"));
    v
}

#[test]
fn hidden_separation_basis() {
    let r = ring(&XYZ);
    let f = polys(&r, HIDDEN_SEPARATION);
    assert_eq!(f.len(), 10);
    let o = TermOrdering::elimination(&[0], 3).unwrap();
    let gb = buchberger(&f, &o, GbOptions::default()).unwrap();
    assert!(gb.is_complete());
    assert_eq!(set(gb.basis.clone()), set(polys(&r, "x - y^2, y^4 + y^2")));
    let again = buchberger(&gb.basis, &o, GbOptions::default()).unwrap();
    assert_eq!(again.basis, gb.basis);
    for g in &f {
        assert!(gb.contains(g));
    }
    // any other elimination ordering for x gives the same basis
    let lex = TermOrdering::lex_elimination(&[0], 3).unwrap();
    let gb2 = buchberger(&f, &lex, GbOptions::default()).unwrap();
    assert_eq!(set(gb2.basis), set(gb.basis.clone()));

    let sep = check_z_separating(&f, &[0], GbOptions::default()).unwrap();
    assert_eq!(sep.verdict(), Verdict::Yes);
    let coh = coherent_interreduce(&sep.tuple(&[0]).unwrap()).unwrap();
    let image = eliminate_by_substitution(&f, &coh).unwrap();
    let image_gb = buchberger(&image, &TermOrdering::degrevlex(3), GbOptions::default()).unwrap();
    assert_eq!(image_gb.basis, polys(&r, "y^4 + y^2"));
}

#[test]
fn curve_search_order_and_result() {
    let r = ring(&XYZW);
    let f = polys(&r, CURVE);
    let lin = linear_part_of_ideal(&f, 4).unwrap();
    assert_eq!(set(lin.clone()), set(polys(&r, "x, y, z + w")));
    assert_eq!(ltgfan_linear(&lin, 4).unwrap(), vec![vec![0, 1, 2], vec![0, 1, 3]]);

    let no = check_z_separating(&f, &[0, 1, 2], GbOptions::default()).unwrap();
    match &no {
        Separation::No { linear_leading, .. } => assert_eq!(linear_leading, &vec![0]),
        other => panic!("expected rejection, got {:?}", other.verdict()),
    }

    let s = find_reembedding_via_gfan(&f, 3, SearchOptions::default()).unwrap();
    let tried: Vec<(Vec<usize>, Verdict)> = s.trace.iter().map(|a| (a.z.clone(), a.verdict)).collect();
    assert_eq!(tried, vec![(vec![0, 1, 2], Verdict::No), (vec![0, 1, 3], Verdict::Yes)]);
    let SearchOutcome::Found(res) = s.outcome else { panic!("no re-embedding") };
    assert_eq!(
        set(res.certificate.basis.clone()),
        set(polys(&r, "x - 1/2*z^6 - z^4 - z^2, y + 1/2*z^6 + z^4, w + z^3 + z"))
    );
    let want = polys(&r, "1/2*z^6 + z^4 + z^2, -1/2*z^6 - z^4, -z^3 - z");
    let got: Vec<QPoly> = res.substitution.iter().map(|(_, h)| h.clone()).collect();
    assert_eq!(res.z, vec![0, 1, 3]);
    assert_eq!(got, want);
    assert!(res.optimal && res.affine_cell);
    assert!(certify_optimal(&res, &f).unwrap());
    assert_eq!(certify_affine_cell(&res, &f).unwrap(), Verdict::Yes);
}

#[test]
fn affine_plane_by_substitution() {
    let r = ring(&XYZW);
    let f = polys(&r, AFFINE_PLANE);
    let t = SeparatingTuple::new(f[..2].to_vec(), vec![0, 1]).unwrap();
    let c = coherent_interreduce(&t).unwrap();
    assert_eq!(c.polys[0], polys(&r, "z*w^2 + w^3 + w^2 + x + 3z")[0]);
    assert_eq!(c.polys[1], f[1]);
    assert!(eliminate_by_substitution(&f[2..], &c).unwrap().is_empty());
    assert!(eliminate_by_substitution(&c.polys, &c).unwrap().is_empty());
    let (att, res) = reembed_with(&f, &[0, 1], GbOptions::default()).unwrap();
    assert_eq!(att.verdict, Verdict::Yes);
    let res = res.unwrap();
    assert_eq!(res.y, vec![2, 3]);
    assert_eq!(certify_affine_cell(&res, &f).unwrap(), Verdict::Yes);
    let seq = vec![c.polys[0].clone(), c.polys[1].clone()];
    assert_eq!(check_permutable_regular_sequence(&seq, GbOptions::default()).unwrap(), Verdict::Yes);
}

#[test]
fn two_forms_fan() {
    let r = ring(&XYZW);
    let l = polys(&r, TWO_FORMS);
    let fan = gfan_linear(&l, 4).unwrap();
    let expected = [
        [("x", "x - z + 2w"), ("y", "y + 2w")],
        [("x", "x - y - z"), ("w", "w + 1/2*y")],
        [("y", "y + 2w"), ("z", "z - x - 2w")],
        [("y", "y - x + z"), ("w", "w + 1/2*x - 1/2*z")],
        [("z", "z - x + y"), ("w", "w + 1/2*y")],
    ];
    assert_eq!(fan.gbs.len(), expected.len());
    for (gb, want) in fan.gbs.iter().zip(expected) {
        let want: Vec<(usize, QPoly)> = want
            .iter()
            .map(|(m, p)| (r.index_of(m).unwrap(), r.parse_poly(p).unwrap()))
            .collect();
        assert_eq!(gb.pairs, want);
    }
}

#[test]
fn staircase_scheme() {
    let s = staircase();
    assert_eq!((s.mu(), s.nu(), s.ring().arity()), (8, 5, 40));
    assert_eq!(s.expected_dimension(), 16);
    let b: Vec<String> = s.border().iter().map(|t| ring(&["x", "y"]).fmt_term(t)).collect();
    assert_eq!(b, ["x^2*y", "x^3", "y^4", "x*y^3", "x^2*y^2"]);
    let gens = s.defining_ideal::<reembed_core::Rational>();
    assert_eq!(gens.len(), 32);

    let lin: Vec<QPoly> = gens.iter().map(|g| g.homogeneous_component(1)).collect();
    let listed = s.ring().parse_polys::<reembed_core::Rational>(LISTED_LINEAR_PARTS).unwrap();
    assert_eq!(listed.len(), 24);
    // same space: identical reduced row echelon forms
    assert_eq!(rref_forms(&lin, 40).unwrap(), rref_forms(&listed, 40).unwrap());
    assert_eq!(linear_forms_matrix(&lin, 40).unwrap().rank(), 24);

    let classes = cotangent_classes(&lin, 40).unwrap();
    assert_eq!(classes.trivial, indices(&s, &TRIVIAL_CLASS));
    assert_eq!(classes.basic, indices(&s, &BASIC));
    let proper: Vec<Vec<String>> = classes.proper.iter().map(|c| names(&s, c)).collect();
    assert_eq!(proper, vec![vec!["c41", "c52", "c75"], vec!["c43", "c54"], vec!["c51", "c85"]]);
    assert_eq!(enumerate_ltgfan_binomial(&classes).len(), 12);
    let o = TermOrdering::degrevlex(40);
    assert_eq!(sigma_leading_s(&classes, &o), indices(&s, &S_SIGMA));
    let report = s.verify_structure::<reembed_core::Rational>();
    assert!(report.all_passed(), "{:?}", report.failures);
}

//! Fixture data shared by the integration tests.
#![allow(dead_code)]

use reembed_core::border_basis::{BorderScheme, OrderIdeal};
use reembed_core::{QPoly, Ring, Term};

pub const XYZ: [&str; 3] = ["x", "y", "z"];
pub const XYZW: [&str; 4] = ["x", "y", "z", "w"];

pub const HIDDEN_SEPARATION: &str = "\
    x*y^2 + 1/2*y^3 - 1/2*y^2*z - x^2 - 1/2*x*y - y^2 + 1/2*x*z + x,
    y^2*z^2 + 3y^3 - 4y^2*z - x*z^2 - 3x*y + 4x*z,
    y^3*z - x*y*z - y^2*z + x*z,
    y^4 - x*y^2 - y^3 + x*y,
    x^2*y^2 - x^3,
    x^3 + 1/2*x^2*y + x*y^2 + 1/2*y^3 - 1/2*x^2*z - 1/2*y^2*z - x^2 - y^2,
    x^2*z^2 + y^2*z^2 + 3x^2*y + 3y^3 - 4x^2*z - 4y^2*z,
    x^2*y*z + y^3*z - x^2*z - y^2*z,
    x^2*y^2 + y^4 - x^2*y - y^3,
    x^4 + x^2*y^2";

pub const AFFINE_PLANE: &str = "w^2 + x - y + 3z, z*w^2 + w^3 + y, w^3 - x*z + y*z - 3z^2 + y";

pub const CURVE: &str = "x - y - w^2, x + y - z^2, z + w + z^3";

pub const TWO_FORMS: &str = "x + y - z + 4w, x - y - z";

pub fn ring(names: &[&str]) -> Ring {
    Ring::new(names).unwrap()
}

pub fn polys(r: &Ring, text: &str) -> Vec<QPoly> {
    r.parse_polys(text).unwrap()
}

pub fn staircase() -> BorderScheme {
    let gens: Vec<Term> = [[0, 3], [1, 2], [2, 0]]
        .iter()
        .map(|e| Term::from_exps(e.to_vec()))
        .collect();
    BorderScheme::new(OrderIdeal::from_maximal(&gens).unwrap())
}

pub fn names(s: &BorderScheme, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| s.ring().name(i).to_string()).collect()
}

pub fn indices(s: &BorderScheme, names: &[&str]) -> Vec<usize> {
    let mut v = s.ring().indices_of(names).unwrap();
    v.sort_unstable();
    v
}

pub const TRIVIAL_CLASS: [&str; 20] = [
    "c11", "c12", "c13", "c14", "c15", "c21", "c22", "c23", "c24", "c25", "c31", "c32", "c33",
    "c34", "c35", "c42", "c44", "c45", "c55", "c65",
];

pub const BASIC: [&str; 13] = [
    "c53", "c61", "c62", "c63", "c64", "c71", "c72", "c73", "c74", "c81", "c82", "c83", "c84",
];

pub const LISTED_LINEAR_PARTS: &str = "c65, c51 - c85, c45, c44, c55, c43 - c54, c42, c41 - c75, \
    c52 - c75, c35, c34, c33, c31, c25, c24, c23, c22, c21, c32, c15, c14, c13, c12, c11";

pub const S_SIGMA: [&str; 24] = [
    "c11", "c12", "c13", "c14", "c15", "c21", "c22", "c23", "c24", "c25", "c31", "c32", "c33",
    "c34", "c35", "c41", "c42", "c43", "c44", "c45", "c51", "c52", "c55", "c65",
];
pub mod props;

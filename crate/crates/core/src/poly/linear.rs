use super::Poly;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// The coefficient matrix of a list of linear forms (one row per form).
pub fn linear_forms_matrix<F: Field>(forms: &[Poly<F>], nvars: usize) -> Result<Matrix<F>> {
    let rows = forms
        .iter()
        .map(|f| {
            if f.nvars() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: f.nvars(),
                });
            }
            f.linear_coeffs()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows, nvars)
}

/// Canonical basis (reduced row echelon form, leftmost pivots) of the span
/// of the given linear forms.
pub fn rref_forms<F: Field>(forms: &[Poly<F>], nvars: usize) -> Result<Vec<Poly<F>>> {
    let (r, _) = linear_forms_matrix(forms, nvars)?.rref();
    Ok(r.rows().map(Poly::from_linear).collect())
}

/// A canonical basis of the linear part `Lin_M(I)` of the ideal generated by
/// `gens`. The span of the generators' linear parts already equals
/// `Lin_M(I)`, so no Gröbner basis is needed.
pub fn linear_part_of_ideal<F: Field>(gens: &[Poly<F>], nvars: usize) -> Result<Vec<Poly<F>>> {
    let lin = gens
        .iter()
        .map(Poly::linear_part)
        .collect::<Result<Vec<_>>>()?;
    rref_forms(&lin, nvars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use crate::poly::Ring;

    #[test]
    fn linear_part_of_small_ideal() {
        let r = Ring::new(&["x", "y", "z", "w"]).unwrap();
        let gens: Vec<Poly<Rational>> = r
            .parse_polys("x - y - w^2, y - z - w - z^2, z + w + z^3")
            .unwrap();
        let basis = linear_part_of_ideal(&gens, 4).unwrap();
        let shown: Vec<String> = basis.iter().map(|f| r.fmt_poly(f)).collect();
        assert_eq!(shown, vec!["x", "y", "z + w"]);
        let none: Vec<Poly<Rational>> = r.parse_polys("x^2 - y^3").unwrap();
        assert!(linear_part_of_ideal(&none, 4).unwrap().is_empty());
        let bad: Vec<Poly<Rational>> = r.parse_polys("x + 1").unwrap();
        assert_eq!(linear_part_of_ideal(&bad, 4), Err(Error::NonzeroConstant));
    }
}

use std::collections::HashMap;
use std::fmt::Write;

use super::parse::PolyParser;
use super::{Poly, Term, TermOrdering};
use crate::error::{Error, Result};
use crate::field::Field;

/// The named indeterminate tuple `X = (x_1, ..., x_n)` of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidRing("no indeterminates".into()));
        }
        let mut index = HashMap::new();
        let mut out = Vec::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            let name = name.as_ref().trim();
            if !is_identifier(name) {
                return Err(Error::InvalidRing(format!("`{name}` is not an identifier")));
            }
            if index.insert(name.to_string(), i).is_some() {
                return Err(Error::DuplicateIndeterminate(name.to_string()));
            }
            out.push(name.to_string());
        }
        Ok(Ring { names: out, index })
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Resolves a list of names to indices, rejecting unknown and repeated ones.
    pub fn indices_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref().trim();
            let i = self
                .index_of(n)
                .ok_or_else(|| Error::UnknownIndeterminate(n.to_string()))?;
            if out.contains(&i) {
                return Err(Error::DuplicateIndeterminate(n.to_string()));
            }
            out.push(i);
        }
        Ok(out)
    }

    pub fn parse_poly<F: Field>(&self, text: &str) -> Result<Poly<F>> {
        PolyParser::new(self, text, 1, 1).parse_single()
    }

    /// Parses a comma-separated list of polynomials.
    pub fn parse_polys<F: Field>(&self, text: &str) -> Result<Vec<Poly<F>>> {
        PolyParser::new(self, text, 1, 1).parse_list()
    }

    /// Like [`Self::parse_polys`], reporting errors relative to the given
    /// starting line and column.
    pub fn parse_polys_at<F: Field>(&self, text: &str, line: usize, column: usize) -> Result<Vec<Poly<F>>> {
        PolyParser::new(self, text, line, column).parse_list()
    }

    pub fn fmt_term(&self, t: &Term) -> String {
        let mut s = String::new();
        for i in t.support() {
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(&self.names[i]);
            if t.exp(i) > 1 {
                let _ = write!(s, "^{}", t.exp(i));
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    /// Formats with terms in descending DegRevLex order.
    pub fn fmt_poly<F: Field>(&self, p: &Poly<F>) -> String {
        self.fmt_poly_ordered(p, &TermOrdering::degrevlex(self.arity()))
    }

    pub fn fmt_poly_ordered<F: Field>(&self, p: &Poly<F>, o: &TermOrdering) -> String {
        let terms: Vec<(Term, F)> = p
            .sorted_terms(o)
            .into_iter()
            .map(|(t, c)| (t.clone(), c.clone()))
            .collect();
        self.fmt_term_list(&terms)
    }

    /// Formats a marked polynomial with its marker term first, the remaining
    /// terms in descending DegRevLex order, e.g. `x - z + 2w`.
    pub fn fmt_marked<F: Field>(&self, marker: &Term, p: &Poly<F>) -> String {
        let o = TermOrdering::degrevlex(self.arity());
        let mut terms: Vec<(Term, F)> = Vec::with_capacity(p.len());
        terms.push((marker.clone(), p.coeff(marker)));
        terms.extend(
            p.sorted_terms(&o)
                .into_iter()
                .filter(|(t, _)| *t != marker)
                .map(|(t, c)| (t.clone(), c.clone())),
        );
        terms.retain(|(_, c)| !c.is_zero());
        self.fmt_term_list(&terms)
    }

    fn fmt_term_list<F: Field>(&self, terms: &[(Term, F)]) -> String {
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (t, c)) in terms.iter().enumerate() {
            let negative = c.is_negative_repr();
            let mag = if negative { -c.clone() } else { c.clone() };
            if k == 0 {
                if negative {
                    s.push('-');
                }
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            let m = self.fmt_term(t);
            if t.is_one() {
                let _ = write!(s, "{mag}");
            } else if mag.is_one() {
                s.push_str(&m);
            } else {
                let cs = mag.to_string();
                if cs.contains('/') {
                    let _ = write!(s, "{cs}*{m}");
                } else {
                    let _ = write!(s, "{cs}{m}");
                }
            }
        }
        s
    }
}

//! Sparse multivariate polynomials over a prime field. Terms are kept in
//! decreasing grevlex order with no zero coefficients, so equality is
//! representation equality and the leading term is `terms[0]`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::monomial::{grevlex, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly {
    field: FieldSpec,
    nvars: usize,
    /// Sorted strictly decreasing under grevlex; coefficients nonzero.
    terms: Vec<(Monomial, u64)>,
}

impl Poly {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Poly {
            field,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: FieldSpec, nvars: usize, c: i64) -> Self {
        let c = field.reduce(c);
        let mut p = Poly::zero(field, nvars);
        if c != 0 {
            p.terms.push((Monomial::one(nvars), c));
        }
        p
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        Poly::constant(field, nvars, 1)
    }

    pub fn var(field: FieldSpec, nvars: usize, i: usize) -> Self {
        Poly {
            field,
            nvars,
            terms: vec![(Monomial::var(nvars, i), 1)],
        }
    }

    pub fn monomial(field: FieldSpec, m: Monomial, c: u64) -> Self {
        let nvars = m.nvars();
        let mut p = Poly::zero(field, nvars);
        if c % field.characteristic() != 0 {
            p.terms.push((m, c % field.characteristic()));
        }
        p
    }

    /// Build from arbitrary (monomial, coefficient) pairs; merges duplicates
    /// and drops zeros.
    pub fn from_terms(field: FieldSpec, nvars: usize, terms: Vec<(Monomial, i64)>) -> Self {
        let mut ts: Vec<(Monomial, u64)> = terms
            .into_iter()
            .map(|(m, c)| (m, field.reduce(c)))
            .collect();
        ts.sort_by(|a, b| grevlex(&b.0, &a.0));
        let mut merged: Vec<(Monomial, u64)> = Vec::with_capacity(ts.len());
        for (m, c) in ts {
            if let Some(last) = merged.last_mut() {
                if last.0 == m {
                    last.1 = field.add(last.1, c);
                    continue;
                }
            }
            merged.push((m, c));
        }
        merged.retain(|(_, c)| *c != 0);
        Poly {
            field,
            nvars,
            terms: merged,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<(&Monomial, u64)> {
        self.terms.first().map(|(m, c)| (m, *c))
    }

    /// Total degree of the highest term, or None for 0.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// If all terms share one total degree, that degree. The zero polynomial
    /// is homogeneous of every degree; we report None for it.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        if self.terms.iter().all(|(m, _)| m.degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    fn check_context(&self, other: &Poly) -> Result<()> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_context(other)?;
        let f = self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match grevlex(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(self.terms[i].1, other.terms[j].1);
                    if c != 0 {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Ok(Poly {
            field: f,
            nvars: self.nvars,
            terms: out,
        })
    }

    pub fn neg(&self) -> Poly {
        let f = self.field;
        Poly {
            field: f,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Poly {
        let f = self.field;
        let c = c % f.characteristic();
        if c == 0 {
            return Poly::zero(f, self.nvars);
        }
        Poly {
            field: f,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), f.mul(*k, c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: u64) -> Poly {
        let f = self.field;
        let c = c % f.characteristic();
        if c == 0 {
            return Poly::zero(f, self.nvars);
        }
        // Multiplying by a fixed monomial preserves grevlex order.
        Poly {
            field: f,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, k)| (mm.mul(m), f.mul(*k, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_context(other)?;
        let f = self.field;
        let mut acc = Poly::zero(f, self.nvars);
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_term(m, *c))?;
        }
        Ok(acc)
    }

    /// Lowest-degree homogeneous component; 0 maps to 0.
    pub fn initial_form(&self) -> Poly {
        let Some(d) = self.terms.iter().map(|(m, _)| m.degree()).min() else {
            return self.clone();
        };
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .cloned()
                .collect(),
        }
    }

    /// Divide all monomials by `m`; requires exact divisibility termwise.
    pub fn exact_monomial_div(&self, m: &Monomial) -> Option<Poly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (mm, c) in &self.terms {
            if !m.divides(mm) {
                return None;
            }
            terms.push((m.quotient(mm), *c));
        }
        Some(Poly {
            field: self.field,
            nvars: self.nvars,
            terms,
        })
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *c != 1 || m.is_one() {
                write!(f, "{}", c)?;
                if !m.is_one() {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for (v, e) in m.exps().iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.names[v])?;
                if *e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> FieldSpec {
        FieldSpec::default()
    }

    fn x() -> Poly {
        Poly::var(f(), 2, 0)
    }

    fn y() -> Poly {
        Poly::var(f(), 2, 1)
    }

    #[test]
    fn additive_inverse() {
        // (x + y) + (p-1)*x = y
        let p = f().characteristic();
        let s = x().add(&y()).unwrap().add(&x().scale(p - 1)).unwrap();
        assert_eq!(s, y());
    }

    #[test]
    fn add_identity() {
        let g = x().mul(&y()).unwrap().add(&y()).unwrap();
        assert_eq!(g.add(&Poly::zero(f(), 2)).unwrap(), g);
    }

    #[test]
    fn add_keeps_grevlex_leading_term() {
        // x^2 + xy has leading term x^2
        let g = x().mul(&x()).unwrap().add(&x().mul(&y()).unwrap()).unwrap();
        let (lm, lc) = g.leading().unwrap();
        assert_eq!(lm, &Monomial::new(vec![2, 0]));
        assert_eq!(lc, 1);
        assert_eq!(g.terms().len(), 2);
    }

    #[test]
    fn difference_of_squares() {
        let lhs = x()
            .add(&y())
            .unwrap()
            .mul(&x().sub(&y()).unwrap())
            .unwrap();
        let rhs = x()
            .mul(&x())
            .unwrap()
            .sub(&y().mul(&y()).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mul_identity() {
        let g = x().mul(&y()).unwrap().add(&y()).unwrap();
        assert_eq!(g.mul(&Poly::one(f(), 2)).unwrap(), g);
    }

    #[test]
    fn square_of_binomial() {
        // (x + y)^2 = x^2 + 2xy + y^2 over F_32003
        let s = x().add(&y()).unwrap();
        let sq = s.mul(&s).unwrap();
        let expected = Poly::from_terms(
            f(),
            2,
            vec![
                (Monomial::new(vec![2, 0]), 1),
                (Monomial::new(vec![1, 1]), 2),
                (Monomial::new(vec![0, 2]), 1),
            ],
        );
        assert_eq!(sq, expected);
    }

    #[test]
    fn homogeneous_product_degree_adds() {
        let a = x().add(&y()).unwrap(); // degree 1
        let b = x().mul(&y()).unwrap(); // degree 2
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod.homogeneous_degree(), Some(3));
    }

    #[test]
    fn initial_form_examples() {
        // x + x^2 -> x
        let g = x().add(&x().mul(&x()).unwrap()).unwrap();
        assert_eq!(g.initial_form(), x());
        // homogeneous f -> f
        let h = x().add(&y()).unwrap();
        assert_eq!(h.initial_form(), h);
        // 0 -> 0
        let z = Poly::zero(f(), 2);
        assert_eq!(z.initial_form(), z);
    }

    #[test]
    fn canonical_form_idempotent() {
        let raw = vec![
            (Monomial::new(vec![1, 0]), 5i64),
            (Monomial::new(vec![0, 1]), 3),
            (Monomial::new(vec![1, 0]), -5),
        ];
        let g = Poly::from_terms(f(), 2, raw);
        let g2 = Poly::from_terms(
            f(),
            2,
            g.terms().iter().map(|(m, c)| (m.clone(), *c as i64)).collect(),
        );
        assert_eq!(g, g2);
        assert_eq!(g, y().scale(3));
    }
}

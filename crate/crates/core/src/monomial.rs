//! Monomials in the ambient polynomial ring, with the standard grading
//! (every variable has degree 1), and the monomial orders used by the
//! Groebner engine.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// A monomial, stored as an exponent vector with cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    exps: Vec<u32>,
    deg: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let deg = exps.iter().sum();
        Monomial { exps, deg }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
            deg: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps, deg: 1 }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            exps,
            deg: self.deg + other.deg,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(a, b)| a - b)
            .collect();
        Monomial {
            exps,
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::new(exps)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Total orders on monomials. Grevlex is the default everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            MonomialOrder::Grevlex => {
                match a.deg.cmp(&b.deg) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // Degree tie: the monomial whose last differing exponent is
                // smaller wins (reverse lexicographic on negated exponents).
                for i in (0..a.exps.len()).rev() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => {}
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => {
                for i in 0..a.exps.len() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

pub fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    MonomialOrder::Grevlex.compare(a, b)
}

/// Position in a free module paired with a monomial. Ordered
/// position-over-term: lower position wins, ties broken by grevlex.
pub fn module_cmp(
    (pa, ma): (usize, &Monomial),
    (pb, mb): (usize, &Monomial),
) -> Ordering {
    match pb.cmp(&pa) {
        Ordering::Equal => grevlex(ma, mb),
        ord => ord,
    }
}

/// Enumerate all monomials of total degree `d` in `nvars` variables,
/// in decreasing grevlex order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(out: &mut Vec<Monomial>, cur: &mut Vec<u32>, idx: usize, rem: u32) {
        if idx + 1 == cur.len() {
            cur[idx] = rem;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in (0..=rem).rev() {
            cur[idx] = e;
            rec(out, cur, idx + 1, rem - e);
        }
        cur[idx] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::new(vec![]));
        }
        return out;
    }
    rec(&mut out, &mut cur, 0, d);
    out.sort_by(|a, b| grevlex(b, a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn grevlex_degree_tie() {
        // x^2 > xy with x > y
        assert_eq!(grevlex(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
    }

    #[test]
    fn grevlex_total_degree_first() {
        // x^3 > xy
        assert_eq!(grevlex(&m(&[3, 0]), &m(&[1, 1])), Ordering::Greater);
    }

    #[test]
    fn grevlex_smallest_trailing_variable_loses() {
        // y^2 > xz with x > y > z
        assert_eq!(grevlex(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(monomials_of_degree(2, 3).len(), 4);
        assert_eq!(monomials_of_degree(3, 3).len(), 10);
        assert_eq!(monomials_of_degree(3, 0).len(), 1);
    }

    #[test]
    fn total_order_on_small_sets() {
        // Antisymmetry and transitivity, exhaustively up to degree 4 in 3 vars.
        let mut all = Vec::new();
        for d in 0..=4 {
            all.extend(monomials_of_degree(3, d));
        }
        for a in &all {
            for b in &all {
                let ab = grevlex(a, b);
                let ba = grevlex(b, a);
                assert_eq!(ab, ba.reverse());
                if ab == Ordering::Equal {
                    assert_eq!(a, b);
                }
                for c in &all {
                    if ab == Ordering::Less && grevlex(b, c) == Ordering::Less {
                        assert_eq!(grevlex(a, c), Ordering::Less);
                    }
                }
            }
        }
    }

    #[test]
    fn divisibility_refined() {
        let a = m(&[1, 1]);
        let b = m(&[2, 1]);
        assert!(a.divides(&b));
        assert_eq!(grevlex(&b, &a), Ordering::Greater);
        assert_eq!(a.quotient(&b), m(&[1, 0]));
    }
}

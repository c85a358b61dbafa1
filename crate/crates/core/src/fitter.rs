//! Fitting eventually-polynomial integer sequences with exact rational
//! arithmetic. Hilbert-Samuel functions agree with a polynomial for large n;
//! the fitter finds the smallest-degree polynomial matching a stable tail of
//! the data and reports the window it was certified on.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A polynomial with exact rational coefficients, valid for n >= n0 and
/// verified against the data on `window`. The zero polynomial has degree -1.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedPolynomial {
    /// Ascending powers of n; empty for the zero polynomial.
    pub coeffs: Vec<BigRational>,
    pub degree: i64,
    /// The polynomial matches the data for all n >= n0.
    pub n0: i64,
    /// Inclusive range of n-values the match was checked on.
    pub window: (i64, i64),
}

impl Serialize for FittedPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FittedPolynomial", 4)?;
        let coeffs: Vec<[String; 2]> = self
            .coeffs
            .iter()
            .map(|c| [c.numer().to_string(), c.denom().to_string()])
            .collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("n0", &self.n0)?;
        st.serialize_field("window", &self.window)?;
        st.end()
    }
}

impl FittedPolynomial {
    pub fn zero(n0: i64, window: (i64, i64)) -> Self {
        FittedPolynomial {
            coeffs: Vec::new(),
            degree: -1,
            n0,
            window,
        }
    }

    pub fn eval(&self, n: i64) -> BigRational {
        let x = BigRational::from(BigInt::from(n));
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }

    /// Evaluate at an integer point where the value must be an integer.
    pub fn eval_int(&self, n: i64) -> Option<BigInt> {
        let v = self.eval(n);
        if v.denom().is_one() {
            Some(v.numer().clone())
        } else {
            None
        }
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.degree < 0
    }

    /// Human-readable form in the variable `n`.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let term = match j {
                0 => format!("{}", mag),
                1 if mag.is_one() => "n".into(),
                1 => format!("{}*n", mag),
                _ if mag.is_one() => format!("n^{}", j),
                _ => format!("{}*n^{}", mag, j),
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() {
                    format!("-{}", term)
                } else {
                    term
                });
            } else {
                parts.push(format!(
                    " {} {}",
                    if c.is_negative() { "-" } else { "+" },
                    term
                ));
            }
        }
        parts.concat()
    }
}

/// Coefficients (ascending) of the binomial C(n - n0, j) as a polynomial
/// in n, exact rationals.
fn binomial_poly(n0: i64, j: usize) -> Vec<BigRational> {
    // Product over t = 0..j of (n - n0 - t) / (t + 1).
    let mut coeffs = vec![BigRational::one()];
    for t in 0..j {
        let shift = BigRational::from(BigInt::from(-(n0 + t as i64)));
        // Multiply by (n + shift).
        let mut next = vec![BigRational::zero(); coeffs.len() + 1];
        for (a, c) in coeffs.iter().enumerate() {
            next[a + 1] += c;
            next[a] += c * &shift;
        }
        let div = BigRational::from(BigInt::from(t as i64 + 1));
        for c in next.iter_mut() {
            *c /= &div;
        }
        coeffs = next;
    }
    coeffs
}

/// Fit the values f(start), f(start+1), ..., finding the least-degree
/// polynomial that matches a tail of the data. The k-th finite difference
/// must be constant over at least 3 points, and the certified tail must
/// contain at least k + 3 points.
pub fn fit_sequence(start: i64, values: &[i64]) -> Result<FittedPolynomial> {
    let len = values.len();
    if len < 3 {
        return Err(Error::Inconclusive(format!(
            "need at least 3 data points to fit, got {}",
            len
        )));
    }
    let window = (start, start + len as i64 - 1);
    // Difference table: rows[k] holds the k-th differences.
    let mut rows: Vec<Vec<BigInt>> = vec![values.iter().map(|v| BigInt::from(*v)).collect()];
    for k in 0..len - 1 {
        let prev = &rows[k];
        if prev.len() < 2 {
            break;
        }
        let next: Vec<BigInt> = prev.windows(2).map(|w| &w[1] - &w[0]).collect();
        rows.push(next);
    }
    for k in 0..rows.len() {
        let row = &rows[k];
        // Longest constant suffix of row k.
        let mut s = row.len() - 1;
        while s > 0 && row[s - 1] == row[s] {
            s -= 1;
        }
        let suffix_len = row.len() - s;
        if suffix_len < 3 {
            continue;
        }
        // Tail of the original data starting where the suffix begins.
        let tail_points = len - s;
        if tail_points < k + 3 {
            continue;
        }
        let n0 = start + s as i64;
        // Newton forward differences at the tail start.
        let mut coeffs = vec![BigRational::zero(); k + 1];
        let mut all_zero = true;
        for (j, row_j) in rows.iter().enumerate().take(k + 1) {
            let d = &row_j[s];
            if d.is_zero() {
                continue;
            }
            all_zero = false;
            let b = binomial_poly(n0, j);
            let dr = BigRational::from(d.clone());
            for (a, c) in b.iter().enumerate() {
                coeffs[a] += c * &dr;
            }
        }
        let mut poly = if all_zero {
            FittedPolynomial::zero(n0, window)
        } else {
            let mut degree = k as i64;
            while degree > 0 && coeffs[degree as usize].is_zero() {
                degree -= 1;
            }
            coeffs.truncate(degree as usize + 1);
            FittedPolynomial {
                coeffs,
                degree,
                n0,
                window,
            }
        };
        // Certify against every data point in the tail, and extend n0
        // downward while earlier points also match.
        let matches = |n: i64| -> bool {
            let idx = (n - start) as usize;
            poly.eval(n) == BigRational::from(BigInt::from(values[idx]))
        };
        if !(n0..=window.1).all(matches) {
            continue;
        }
        let mut lo = poly.n0;
        while lo > start && matches(lo - 1) {
            lo -= 1;
        }
        poly.n0 = lo;
        return Ok(poly);
    }
    Err(Error::Inconclusive(
        "no finite difference stabilized over the data window; widen n_max".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn fit(start: i64, vals: &[i64]) -> FittedPolynomial {
        fit_sequence(start, vals).unwrap()
    }

    #[test]
    fn constant_sequence() {
        let p = fit(0, &[5, 5, 5, 5]);
        assert_eq!(p.degree, 0);
        assert_eq!(p.eval_int(10).unwrap(), BigInt::from(5));
        assert_eq!(p.n0, 0);
    }

    #[test]
    fn zero_sequence() {
        let p = fit(0, &[0, 0, 0, 0]);
        assert!(p.is_zero());
        assert_eq!(p.degree, -1);
    }

    #[test]
    fn triangular_numbers() {
        // (n+1)(n+2)/2.
        let vals: Vec<i64> = (0..8).map(|n| (n + 1) * (n + 2) / 2).collect();
        let p = fit(0, &vals);
        assert_eq!(p.degree, 2);
        assert_eq!(p.n0, 0);
        assert_eq!(
            p.leading_coefficient(),
            BigRational::new(BigInt::from(1), BigInt::from(2))
        );
        assert_eq!(p.eval_int(100).unwrap(), BigInt::from(101 * 102 / 2));
    }

    #[test]
    fn eventually_polynomial_with_prefix() {
        // 1 at n = 0, then 2n + 1.
        let mut vals = vec![1i64];
        vals.extend((1..8).map(|n| 2 * n + 1));
        let p = fit(0, &vals);
        assert_eq!(p.degree, 1);
        // 2*0 + 1 = 1 happens to match the n = 0 value too.
        assert_eq!(p.n0, 0);
        let q = fit_sequence(0, &[7, 3, 5, 7, 9, 11, 13]).unwrap();
        assert_eq!(q.degree, 1);
        assert_eq!(q.n0, 1);
    }

    #[test]
    fn too_few_points_is_inconclusive() {
        assert!(fit_sequence(0, &[1, 2]).is_err());
        // Degree-3 data over 5 points: constant row has only 2 entries.
        assert!(fit_sequence(0, &[0, 1, 8, 27, 64]).is_err());
    }

    #[test]
    fn random_integer_valued_polynomials_round_trip() {
        // Integer combinations of binomial basis polynomials are integer
        // valued; fitting enough samples must recover them exactly.
        let mut state: u64 = 0x9e3779b97f4a7c15;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..100 {
            let deg = (next() % 5) as usize;
            let cs: Vec<i64> = (0..=deg).map(|_| (next() % 21) as i64 - 10).collect();
            let value = |n: i64| -> i64 {
                // sum cs[j] * C(n, j).
                let mut total = 0i64;
                for (j, c) in cs.iter().enumerate() {
                    let mut b = 1i64;
                    for t in 0..j as i64 {
                        b = b * (n - t) / (t + 1);
                    }
                    total += c * b;
                }
                total
            };
            let vals: Vec<i64> = (0..(deg as i64 + 6)).map(value).collect();
            let p = fit_sequence(0, &vals).unwrap();
            for n in 0..20 {
                assert_eq!(
                    p.eval(n).to_integer().to_i64().unwrap(),
                    value(n),
                    "coeffs {:?} at n = {}",
                    cs,
                    n
                );
            }
        }
    }

    #[test]
    fn display_forms() {
        let p = fit(0, &[1, 3, 5, 7, 9]);
        assert_eq!(p.display(), "2*n + 1");
        let z = FittedPolynomial::zero(0, (0, 3));
        assert_eq!(z.display(), "0");
    }
}

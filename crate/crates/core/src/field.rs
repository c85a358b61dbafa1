//! Prime field scalars. All coefficients live in `F_p` with canonical
//! representatives in `[0, p)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default characteristic; large enough that random linear forms behave
/// generically under seeded search.
pub const DEFAULT_CHARACTERISTIC: u64 = 32003;

/// A prime field `F_p`. Cheap to copy; every algebraic object carries one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u64,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec {
            p: DEFAULT_CHARACTERISTIC,
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        // Products are computed in u64; keep p below 2^31 so a*b never wraps.
        if p >= 1 << 31 {
            return Err(Error::CharacteristicTooLarge(p));
        }
        Ok(FieldSpec { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero scalar.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_32003() {
        let f = FieldSpec::default();
        assert_eq!(f.characteristic(), 32003);
    }

    #[test]
    fn rejects_composite() {
        assert!(FieldSpec::new(32001).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(0).is_err());
    }

    #[test]
    fn field_axioms_spot_checks() {
        let f = FieldSpec::new(32003).unwrap();
        let p = f.characteristic();
        assert_eq!(f.add(p - 1, 1), 0);
        assert_eq!(f.sub(0, 1), p - 1);
        for a in [1u64, 2, 7, 31, p - 1] {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.reduce(-1), p - 1);
        assert_eq!(f.reduce(p as i64), 0);
    }
}

//! Realizing `C_N` over the rationals with one ramified prime.
//!
//! For a prime `p ≡ 1 (mod N)`, `(Z/p)^×` is cyclic of order `p - 1`, so the
//! field of `p`-th roots of unity has a subfield cyclic of degree `N`, ramified
//! only at `p`.

use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};

pub const MAX_N: u64 = 1_000_000;
pub const SEARCH_BOUND: u64 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConductorRecord {
    pub n: u64,
    pub prime: u64,
    pub group: String,
    pub ramified_primes: usize,
    /// Candidates `kN + 1` rejected before `p` was found.
    pub rejected: u64,
}

/// The smallest prime `p ≡ 1 (mod N)`.
pub fn cyclic_conductor(n: u64) -> Result<ConductorRecord> {
    if n < 2 {
        return Err(Error::Invalid(format!(
            "N = {n}: the trivial group needs no ramification; N must be at least 2"
        )));
    }
    if n > MAX_N {
        return Err(Error::Invalid(format!("N = {n} exceeds {MAX_N}")));
    }
    let mut rejected = 0;
    let mut p = n + 1;
    while p <= SEARCH_BOUND {
        if is_prime(p) {
            return Ok(ConductorRecord {
                n,
                prime: p,
                group: format!("C{n}"),
                ramified_primes: 1,
                rejected,
            });
        }
        rejected += 1;
        p += n;
    }
    Err(Error::Invalid(format!(
        "no prime 1 mod {n} below {SEARCH_BOUND}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(n: u64) -> u64 {
        (2..)
            .find(|&p| p % n == 1 && (2..p).all(|d| p % d != 0))
            .unwrap()
    }

    #[test]
    fn small_conductors() {
        for (n, p) in [(3, 7), (4, 5), (5, 11), (8, 17), (12, 13), (2, 3)] {
            assert_eq!(cyclic_conductor(n).unwrap().prime, p);
        }
        for n in 2..60 {
            assert_eq!(cyclic_conductor(n).unwrap().prime, brute(n));
        }
        assert!(cyclic_conductor(1).is_err());
        assert!(cyclic_conductor(MAX_N + 1).is_err());
    }
}

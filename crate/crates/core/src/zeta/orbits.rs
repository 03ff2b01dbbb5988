//! Frobenius orbit counts from point counts.
//!
//! Counting points of a variety over every extension F_{q^s} double-counts
//! orbits: a degree-d orbit contributes d points to N_s exactly when d | s.
//! So N_s = sum_{d | s} d b_d, and Moebius inversion recovers the orbit
//! counts b_d exactly. Counts that do not come from a variety betray
//! themselves here by producing fractional or negative b_d.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// The Moebius function; zero on non-squarefree arguments.
pub fn moebius(n: u64) -> i64 {
    debug_assert!(n >= 1);
    let mut n = n;
    let mut factors = 0;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            factors += 1;
        }
        d += 1;
    }
    if n > 1 {
        factors += 1;
    }
    if factors % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Orbit counts b_1..b_S from point counts N_1..N_S:
/// b_d = (1/d) sum_{e | d} mu(d/e) N_e, exact integer arithmetic.
pub fn orbit_counts(counts: &[BigInt]) -> Result<Vec<BigInt>> {
    let mut out = Vec::with_capacity(counts.len());
    for d in 1..=counts.len() {
        let mut acc = BigInt::zero();
        for e in 1..=d {
            if d % e == 0 {
                acc += BigInt::from(moebius((d / e) as u64)) * &counts[e - 1];
            }
        }
        let (b, rem) = acc.div_rem(&BigInt::from(d));
        if !rem.is_zero() {
            return Err(Error::NonIntegralOrbitCount { d });
        }
        if b.is_negative() {
            return Err(Error::NegativeOrbitCount {
                d,
                value: b.to_string(),
            });
        }
        out.push(b);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn moebius_small_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (n, &mu) in (1..=12).zip(&expected) {
            assert_eq!(moebius(n), mu, "mu({n})");
        }
    }

    #[test]
    fn projective_line_over_f2() {
        let counts: Vec<BigInt> = [3, 5, 9, 17].map(big).into();
        assert_eq!(orbit_counts(&counts).unwrap(), [3, 1, 2, 3].map(big).to_vec());
    }

    #[test]
    fn period_two_counts() {
        let counts: Vec<BigInt> = [0, 2, 0, 2].map(big).into();
        assert_eq!(orbit_counts(&counts).unwrap(), [0, 1, 0, 0].map(big).to_vec());
    }

    #[test]
    fn single_rational_point() {
        let counts: Vec<BigInt> = vec![big(1); 6];
        let mut expected = vec![big(0); 6];
        expected[0] = big(1);
        assert_eq!(orbit_counts(&counts).unwrap(), expected);
    }

    #[test]
    fn non_variety_counts_are_rejected() {
        // N_2 < N_1 forces a negative orbit count.
        let counts: Vec<BigInt> = [5, 1].map(big).into();
        assert!(matches!(
            orbit_counts(&counts),
            Err(Error::NegativeOrbitCount { d: 2, .. })
        ));
        // N_2 - N_1 odd forces a fractional one.
        let counts: Vec<BigInt> = [2, 5].map(big).into();
        assert!(matches!(
            orbit_counts(&counts),
            Err(Error::NonIntegralOrbitCount { d: 2 })
        ));
    }
}

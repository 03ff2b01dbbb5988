//! Truncated power series with exact rational coefficients.
//!
//! The zeta series of a variety is exp(sum_s N_s T^s / s); everything here
//! stays in BigRational so that integrality of the resulting coefficients is
//! a checkable fact rather than a float accident.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficients c_0..c_S of a series truncated at order S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty());
        TruncatedSeries { coeffs }
    }

    /// The constant series 1 truncated at `order`.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = BigRational::one();
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        TruncatedSeries::new(out)
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn inverse(&self) -> Result<TruncatedSeries> {
        if self.coeffs[0].is_zero() {
            return Err(Error::DivisionByZero);
        }
        let order = self.order();
        let c0_inv = self.coeffs[0].recip();
        let mut out = vec![BigRational::zero(); order + 1];
        out[0] = c0_inv.clone();
        for k in 1..=order {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                acc += self.coeff(j) * &out[k - j];
            }
            out[k] = -acc * &c0_inv;
        }
        Ok(TruncatedSeries::new(out))
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, e: i64) -> Result<TruncatedSeries> {
        let base = if e < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut acc = TruncatedSeries::one(self.order());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// The coefficients as integers, when they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

/// exp(sum_{s>=1} N_s T^s / s) truncated at order S = counts.len().
///
/// Uses the derivative recurrence k c_k = sum_{j=1}^{k} N_j c_{k-j}, which
/// keeps every intermediate value rational.
pub fn zeta_series(counts: &[BigInt]) -> TruncatedSeries {
    let order = counts.len();
    let mut coeffs = vec![BigRational::zero(); order + 1];
    coeffs[0] = BigRational::one();
    for k in 1..=order {
        let mut acc = BigRational::zero();
        for j in 1..=k {
            acc += BigRational::from_integer(counts[j - 1].clone()) * &coeffs[k - j];
        }
        coeffs[k] = acc / BigRational::from_integer(BigInt::from(k));
    }
    TruncatedSeries::new(coeffs)
}

/// prod_{d>=1} (1 - T^d)^{-b_d} truncated at `order`.
///
/// Negative b_d are accepted (they contribute a finite binomial factor), so
/// the product is defined for any integer orbit data, not only counts that
/// arise from a variety.
pub fn euler_product_series(orbit_counts: &[BigInt], order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(order);
    for (d0, b) in orbit_counts.iter().enumerate() {
        let d = d0 + 1;
        if d > order || b.is_zero() {
            continue;
        }
        acc = acc.mul(&power_of_one_minus_td(d, b, order));
    }
    acc
}

/// (1 - T^d)^{-b} truncated at `order`, exact for any sign of b.
fn power_of_one_minus_td(d: usize, b: &BigInt, order: usize) -> TruncatedSeries {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    coeffs[0] = BigRational::one();
    if b.is_positive() {
        // Binomial series: coefficient of T^{dk} is C(b+k-1, k).
        let mut c = BigInt::one();
        let mut k = 0usize;
        while (k + 1) * d <= order {
            k += 1;
            c = c * (b + BigInt::from(k as u64) - 1u32) / BigInt::from(k as u64);
            coeffs[k * d] = BigRational::from_integer(c.clone());
        }
    } else {
        // (1 - T^d)^m with m = -b: finite alternating binomial.
        let m = -b;
        let mut c = BigInt::one();
        let mut k = 0usize;
        while (k + 1) * d <= order && BigInt::from(k as u64) < m {
            k += 1;
            c = c * (&m - BigInt::from(k as u64) + 1u32) / BigInt::from(k as u64);
            let signed = if k % 2 == 1 { -c.clone() } else { c.clone() };
            coeffs[k * d] = BigRational::from_integer(signed);
        }
    }
    TruncatedSeries::new(coeffs)
}

/// Truncated expansion of 1 / (1 - aT): the geometric series in a.
pub fn geometric_series(a: &BigInt, order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut cur = BigInt::one();
    for _ in 0..=order {
        coeffs.push(BigRational::from_integer(cur.clone()));
        cur *= a;
    }
    TruncatedSeries::new(coeffs)
}

/// A polynomial, read as a truncated series.
pub fn poly_series(poly: &[BigInt], order: usize) -> TruncatedSeries {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    for (k, c) in poly.iter().take(order + 1).enumerate() {
        coeffs[k] = BigRational::from_integer(c.clone());
    }
    TruncatedSeries::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn ints(series: &TruncatedSeries) -> Vec<i64> {
        series
            .integer_coeffs()
            .expect("integral series")
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn zero_counts_give_the_constant_series() {
        let s = zeta_series(&[big(0), big(0), big(0)]);
        assert_eq!(ints(&s), vec![1, 0, 0, 0]);
    }

    #[test]
    fn line_counts_expand_the_rational_form() {
        // N_s = 1 + 5^s is the expansion of 1/((1-T)(1-5T)).
        let counts: Vec<BigInt> = (1..=3).map(|s| big(1 + 5i64.pow(s))).collect();
        let s = zeta_series(&counts);
        assert_eq!(ints(&s), vec![1, 6, 31, 156]);
        // Independent route: multiply the two geometric series directly.
        let direct = geometric_series(&big(1), 3).mul(&geometric_series(&big(5), 3));
        assert_eq!(s, direct);
    }

    #[test]
    fn alternating_counts_give_one_over_one_minus_t_squared() {
        let counts: Vec<BigInt> = (1..=5).map(|s| big(1 + (-1i64).pow(s as u32))).collect();
        let s = zeta_series(&counts);
        assert_eq!(ints(&s), vec![1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn euler_product_single_orbit_degrees() {
        let s = euler_product_series(&[big(0), big(1)], 6);
        assert_eq!(ints(&s), vec![1, 0, 1, 0, 1, 0, 1]);
        let s = euler_product_series(&[big(1)], 5);
        assert_eq!(ints(&s), vec![1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn euler_product_handles_negative_exponents() {
        // (1 - T)^2 = 1 - 2T + T^2.
        let s = euler_product_series(&[big(-2)], 4);
        assert_eq!(ints(&s), vec![1, -2, 1, 0, 0]);
    }

    #[test]
    fn inverse_and_powi_round_trip() {
        let p = poly_series(&[big(1), big(-2), big(5)], 6);
        let inv = p.inverse().unwrap();
        assert_eq!(p.mul(&inv), TruncatedSeries::one(6));
        let cubed = p.powi(3).unwrap();
        let inv_cubed = p.powi(-3).unwrap();
        assert_eq!(cubed.mul(&inv_cubed), TruncatedSeries::one(6));
    }
}

//! Truncated formal power series with exact rational coefficients, the
//! Poincare series of a Koszul algebra, and deviations extracted by
//! peeling the infinite-product factorization one degree at a time.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesError {
    ConstantTermNotOne,
    /// A deviation came out non-integral; the series is not realizable.
    NonIntegerDeviation {
        index: usize,
    },
    TruncationTooShort {
        need: usize,
        have: usize,
    },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::ConstantTermNotOne => write!(f, "series must start with 1"),
            SeriesError::NonIntegerDeviation { index } => {
                write!(f, "deviation {index} is not an integer")
            }
            SeriesError::TruncationTooShort { need, have } => {
                write!(f, "need {need} coefficients, have {have}")
            }
        }
    }
}

/// A power series known modulo z^order, with exact coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        PowerSeries { coeffs }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        PowerSeries {
            coeffs: values
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        }
    }

    pub fn from_dims(values: &[usize], order: usize) -> Self {
        let mut coeffs: Vec<BigRational> = values
            .iter()
            .map(|&v| BigRational::from_integer(BigInt::from(v)))
            .collect();
        coeffs.resize(order, BigRational::zero());
        PowerSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order];
        if order > 0 {
            coeffs[0] = BigRational::one();
        }
        PowerSeries { coeffs }
    }

    /// Truncation order (number of known coefficients).
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient as i64 when it is a small integer.
    pub fn coeff_i64(&self, i: usize) -> Option<i64> {
        let c = self.coeff(i);
        if !c.denom().is_one() {
            return None;
        }
        integer_to_i64(c.numer())
    }

    /// Integer coefficients, when they are integers.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.denom().is_one().then(|| c.numer().clone()))
            .collect()
    }

    pub fn truncate(&self, order: usize) -> PowerSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(order);
        coeffs.resize(order, BigRational::zero());
        PowerSeries { coeffs }
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); order];
        for i in 0..order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..order - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &self.coeffs[i] * &other.coeffs[j];
            }
        }
        PowerSeries { coeffs }
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn inverse(&self) -> Result<PowerSeries, SeriesError> {
        if self.coeffs.is_empty() || self.coeffs[0].is_zero() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let order = self.order();
        let c0inv = self.coeffs[0].recip();
        let mut inv = vec![BigRational::zero(); order];
        inv[0] = c0inv.clone();
        for i in 1..order {
            let mut acc = BigRational::zero();
            for j in 1..=i {
                acc = &acc + &self.coeffs[j] * &inv[i - j];
            }
            inv[i] = -(acc * &c0inv);
        }
        Ok(PowerSeries { coeffs: inv })
    }

    /// Substitute -z for z.
    pub fn alternate(&self) -> PowerSeries {
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
                .collect(),
        }
    }

    /// (1 + sign*z^step)^exponent for integer exponents of either sign.
    pub fn binomial_power(step: usize, sign: i64, exponent: i64, order: usize) -> PowerSeries {
        debug_assert!(step >= 1 && (sign == 1 || sign == -1));
        let mut base = PowerSeries::one(order);
        if step < order {
            base.coeffs[step] = BigRational::from_integer(BigInt::from(sign));
        }
        let e = exponent.unsigned_abs();
        let mut acc = PowerSeries::one(order);
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        if exponent < 0 {
            acc.inverse().expect("unit constant term")
        } else {
            acc
        }
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<alloc::string::String> =
            self.coeffs.iter().map(|c| alloc::format!("{c}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// The Poincare series 1/H(-z) of a Koszul algebra with Hilbert series H.
pub fn poincare_from_koszul(h: &PowerSeries, order: usize) -> Result<PowerSeries, SeriesError> {
    if !h.coeff(0).is_one() {
        return Err(SeriesError::ConstantTermNotOne);
    }
    h.truncate(order).alternate().inverse()
}

/// Deviations e_1..e_m: the unique integers with
/// P = prod_{i odd} (1+z^i)^{e_i} * prod_{i even} (1-z^i)^{-e_i} mod z^{m+1},
/// computed by successive factor peeling.
pub fn deviations(p: &PowerSeries, m: usize) -> Result<Vec<i64>, SeriesError> {
    if p.order() < m + 1 {
        return Err(SeriesError::TruncationTooShort {
            need: m + 1,
            have: p.order(),
        });
    }
    if !p.coeff(0).is_one() {
        return Err(SeriesError::ConstantTermNotOne);
    }
    let order = m + 1;
    let mut q = p.truncate(order);
    let mut eps = Vec::with_capacity(m);
    for i in 1..=m {
        let c = q.coeff(i);
        if !c.denom().is_one() {
            return Err(SeriesError::NonIntegerDeviation { index: i });
        }
        let numer = c.numer().clone();
        let e: i64 = integer_to_i64(&numer).ok_or(SeriesError::NonIntegerDeviation { index: i })?;
        eps.push(e);
        let peel = if i % 2 == 1 {
            PowerSeries::binomial_power(i, 1, -e, order)
        } else {
            PowerSeries::binomial_power(i, -1, e, order)
        };
        q = q.mul(&peel);
    }
    Ok(eps)
}

/// Rebuild the truncated series from deviations (inverse of `deviations`).
pub fn series_from_deviations(eps: &[i64], order: usize) -> PowerSeries {
    let mut acc = PowerSeries::one(order);
    for (idx, &e) in eps.iter().enumerate() {
        let i = idx + 1;
        let factor = if i % 2 == 1 {
            PowerSeries::binomial_power(i, 1, e, order)
        } else {
            PowerSeries::binomial_power(i, -1, -e, order)
        };
        acc = acc.mul(&factor);
    }
    acc
}

fn integer_to_i64(v: &BigInt) -> Option<i64> {
    let (sign, digits) = v.to_u64_digits();
    match digits.len() {
        0 => Some(0),
        1 => {
            let mag = digits[0];
            match sign {
                num_bigint::Sign::Minus => {
                    if mag <= (i64::MAX as u64) + 1 {
                        Some((mag as i64).wrapping_neg())
                    } else {
                        None
                    }
                }
                _ => {
                    if mag <= i64::MAX as u64 {
                        Some(mag as i64)
                    } else {
                        None
                    }
                }
            }
        }
        _ => None,
    }
}

/// True when the series has only non-negative integer coefficients.
pub fn is_nonnegative_integral(p: &PowerSeries) -> bool {
    p.coeffs()
        .iter()
        .all(|c| c.denom().is_one() && !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn poincare_of_the_example_hilbert_series() {
        let h = PowerSeries::from_integers(&[1, 5, 7, 3]);
        let p = poincare_from_koszul(&h, 7).unwrap();
        let ints = p.integer_coeffs().unwrap();
        let got: Vec<i64> = ints.iter().map(|v| integer_to_i64(v).unwrap()).collect();
        // recurrence b_i = 5 b_{i-1} - 7 b_{i-2} + 3 b_{i-3}
        assert_eq!(got, vec![1, 5, 18, 58, 179, 543, 1636]);
    }

    #[test]
    fn poincare_of_hypersurface() {
        let h = PowerSeries::from_integers(&[1, 1]);
        let p = poincare_from_koszul(&h, 6).unwrap();
        for i in 0..6 {
            assert!(p.coeff(i).is_one());
        }
    }

    #[test]
    fn poincare_of_two_variable_ci() {
        // H = 1 + 2z + z^2; 1/H(-z) = (1-z)^{-2} = sum (i+1) z^i
        let h = PowerSeries::from_integers(&[1, 2, 1]);
        let p = poincare_from_koszul(&h, 6).unwrap();
        for i in 0..6 {
            assert_eq!(
                p.coeff(i),
                BigRational::from_integer(BigInt::from(i as i64 + 1))
            );
        }
    }

    #[test]
    fn deviations_of_the_example() {
        let h = PowerSeries::from_integers(&[1, 5, 7, 3]);
        let p = poincare_from_koszul(&h, 6).unwrap();
        assert_eq!(deviations(&p, 3).unwrap(), vec![5, 8, 8]);
    }

    #[test]
    fn deviations_of_hypersurface_and_field() {
        let p = PowerSeries::from_integers(&[1, 1, 1, 1, 1, 1]);
        assert_eq!(deviations(&p, 4).unwrap(), vec![1, 1, 0, 0]);
        let field = PowerSeries::from_integers(&[1, 0, 0, 0, 0]);
        assert_eq!(deviations(&field, 4).unwrap(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn deviation_round_trip() {
        let h = PowerSeries::from_integers(&[1, 5, 7, 3]);
        let p = poincare_from_koszul(&h, 7).unwrap();
        let eps = deviations(&p, 6).unwrap();
        let rebuilt = series_from_deviations(&eps, 7);
        assert_eq!(rebuilt, p.truncate(7));
    }

    #[test]
    fn non_integer_deviation_is_flagged() {
        let p = PowerSeries::new(vec![
            BigRational::one(),
            BigRational::new(BigInt::from(1), BigInt::from(2)),
        ]);
        assert_eq!(
            deviations(&p, 1).unwrap_err(),
            SeriesError::NonIntegerDeviation { index: 1 }
        );
    }

    #[test]
    fn inverse_is_exact() {
        let h = PowerSeries::from_integers(&[1, 3, 1, 4]);
        let inv = h.inverse().unwrap();
        let prod = h.mul(&inv);
        assert_eq!(prod, PowerSeries::one(4));
    }
}

//! Activation fractions.
//!
//! A threshold `rho` in `(0, 1]` is only ever used to compare an integer count of
//! active in-neighbors against `rho * d` for an integer in-degree `d`. The
//! [`Fraction`] trait captures exactly that comparison so the cascade code can be
//! written once and instantiated with exact rationals (the default, see
//! [`crate::Rho`]) or with `f32`/`f64` when a real-valued threshold is wanted.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Float, ToPrimitive};

use crate::error::ParseFractionError;

/// A scalar usable as an activation fraction.
pub trait Fraction: Copy + fmt::Debug + fmt::Display + PartialOrd + Send + Sync {
    /// Compares `count` with `self * d`.
    fn cmp_scaled(&self, count: usize, d: usize) -> Ordering;

    /// Smallest integer `c` with `c >= self * d`, i.e. `ceil(self * d)`.
    fn min_active(&self, d: usize) -> usize;

    /// `true` iff `0 < self <= 1`.
    fn is_valid(&self) -> bool;

    fn to_f64(&self) -> f64;

    /// `count >= self * d`.
    #[inline]
    fn reached_by(&self, count: usize, d: usize) -> bool {
        self.cmp_scaled(count, d) != Ordering::Less
    }

    /// `self * d > 1`, i.e. `d > 1 / self`.
    #[inline]
    fn exceeds_reciprocal(&self, d: usize) -> bool {
        self.cmp_scaled(1, d) == Ordering::Less
    }
}

macro_rules! impl_ratio_fraction {
    ($($int:ty),*) => {$(
        impl Fraction for Ratio<$int> {
            #[inline]
            fn cmp_scaled(&self, count: usize, d: usize) -> Ordering {
                // b * count vs a * d, widened so neither product can overflow
                let lhs = i128::from(*self.denom()) * count as i128;
                let rhs = i128::from(*self.numer()) * d as i128;
                lhs.cmp(&rhs)
            }

            #[inline]
            fn min_active(&self, d: usize) -> usize {
                let num = i128::from(*self.numer()) * d as i128;
                let den = i128::from(*self.denom());
                Integer::div_ceil(&num, &den) as usize
            }

            fn is_valid(&self) -> bool {
                let (a, b) = (i128::from(*self.numer()), i128::from(*self.denom()));
                b > 0 && a > 0 && a <= b
            }

            fn to_f64(&self) -> f64 {
                ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
            }
        }
    )*};
}

impl_ratio_fraction!(u8, u16, u32, u64, i32, i64);

macro_rules! impl_float_fraction {
    ($($float:ty),*) => {$(
        impl Fraction for $float {
            #[inline]
            fn cmp_scaled(&self, count: usize, d: usize) -> Ordering {
                let rhs = *self * d as $float;
                (count as $float).partial_cmp(&rhs).unwrap_or(Ordering::Less)
            }

            #[inline]
            fn min_active(&self, d: usize) -> usize {
                Float::ceil(*self * d as $float) as usize
            }

            fn is_valid(&self) -> bool {
                *self > 0.0 && *self <= 1.0
            }

            fn to_f64(&self) -> f64 {
                f64::from(*self)
            }
        }
    )*};
}

impl_float_fraction!(f32, f64);

/// Parses `a/b` (or a bare integer `a`) into a reduced rational in `(0, 1]`.
pub fn parse_ratio<T>(text: &str) -> Result<Ratio<T>, ParseFractionError>
where
    T: Clone + Integer + FromStr,
    Ratio<T>: Fraction,
{
    let text = text.trim();
    let bad = || ParseFractionError::Malformed(text.to_string());
    let (numer, denom) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text, "1"),
    };
    let numer: T = numer.parse().map_err(|_| bad())?;
    let denom: T = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(ParseFractionError::ZeroDenominator(text.to_string()));
    }
    let ratio = Ratio::new(numer, denom);
    if !ratio.is_valid() {
        return Err(ParseFractionError::OutOfRange(text.to_string()));
    }
    Ok(ratio)
}

/// Formats a rational as `a/b`, always with an explicit denominator.
pub fn format_ratio<T: fmt::Display + Clone + Integer>(ratio: &Ratio<T>) -> String {
    format!("{}/{}", ratio.numer(), ratio.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    type R = Ratio<u64>;

    #[test]
    fn min_active_is_ceiling() {
        let third = R::new(1, 3);
        assert_eq!(third.min_active(0), 0);
        assert_eq!(third.min_active(1), 1);
        assert_eq!(third.min_active(3), 1);
        assert_eq!(third.min_active(4), 2);
        assert_eq!(R::new(2, 3).min_active(5), 4);
        assert_eq!(R::new(1, 1).min_active(7), 7);
    }

    #[test]
    fn exceeds_reciprocal_is_strict() {
        let half = R::new(1, 2);
        assert!(!half.exceeds_reciprocal(2));
        assert!(half.exceeds_reciprocal(3));
        assert!(!R::new(1, 1).exceeds_reciprocal(1));
        assert!(R::new(1, 1).exceeds_reciprocal(2));
    }

    #[test]
    fn float_and_ratio_agree_on_dyadic_values() {
        for d in 0..40 {
            for c in 0..=d {
                assert_eq!(R::new(1, 4).cmp_scaled(c, d), 0.25f64.cmp_scaled(c, d));
                assert_eq!(R::new(1, 2).min_active(d), 0.5f32.min_active(d));
            }
        }
    }

    #[test]
    fn parse_and_format() {
        let r: R = parse_ratio("2/4").unwrap();
        assert_eq!(r, R::new(1, 2));
        assert_eq!(format_ratio(&r), "1/2");
        assert_eq!(parse_ratio::<u64>("1").unwrap(), R::new(1, 1));
        assert!(matches!(parse_ratio::<u64>("3/2"), Err(ParseFractionError::OutOfRange(_))));
        assert!(matches!(parse_ratio::<u64>("0/5"), Err(ParseFractionError::OutOfRange(_))));
        assert!(matches!(parse_ratio::<u64>("1/0"), Err(ParseFractionError::ZeroDenominator(_))));
        assert!(matches!(parse_ratio::<u64>("x/2"), Err(ParseFractionError::Malformed(_))));
    }

    #[test]
    fn validity() {
        assert!(0.5f64.is_valid());
        assert!(!0.0f64.is_valid());
        assert!(!1.5f32.is_valid());
        assert!(Ratio::<i64>::new(1, 3).is_valid());
        assert!(!Ratio::<i64>::new(-1, 3).is_valid());
    }
}

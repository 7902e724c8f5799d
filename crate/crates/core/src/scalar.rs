//! Exact scalar traits.
//!
//! Nothing in this crate touches floating point. Determinants are computed
//! over any [`ExactInt`] and certificates are checked over any
//! [`ExactRational`]; the concrete aliases live at the crate root.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Integer type usable for fraction-free elimination.
pub trait ExactInt:
    Clone + Integer + Signed + FromPrimitive + ToPrimitive + Debug + Display + Hash
{
    fn of(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("integer type too narrow")
    }
}

impl<T> ExactInt for T where
    T: Clone + Integer + Signed + FromPrimitive + ToPrimitive + Debug + Display + Hash
{
}

/// Field of exact rationals.
pub trait ExactRational:
    Clone + Ord + Num + Signed + Debug + Display + Hash + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;

    fn from_frac(numer: i64, denom: i64) -> Self;

    fn is_integral(&self) -> bool;

    /// Denominator of the reduced fraction, as an integral rational.
    fn denominator(&self) -> Self;

    /// `p/q` form with `q >= 1`, always including the slash.
    fn to_pq(&self) -> String;

    /// Accepts `p/q` or a bare integer `p`.
    fn parse_pq(s: &str) -> Option<Self>;

    fn half() -> Self {
        Self::from_frac(1, 2)
    }

    /// Least common multiple of two integral values.
    fn lcm_integral(&self, other: &Self) -> Self;
}

impl<I> ExactRational for Ratio<I>
where
    I: Clone
        + Integer
        + Signed
        + FromPrimitive
        + Debug
        + Display
        + Hash
        + FromStr
        + Send
        + Sync
        + 'static,
{
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(I::from_i64(v).expect("integer type too narrow"))
    }

    fn from_frac(numer: i64, denom: i64) -> Self {
        Ratio::new(
            I::from_i64(numer).expect("integer type too narrow"),
            I::from_i64(denom).expect("integer type too narrow"),
        )
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn denominator(&self) -> Self {
        Ratio::from_integer(self.denom().clone())
    }

    fn to_pq(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn parse_pq(s: &str) -> Option<Self> {
        let s = s.trim();
        match s.split_once('/') {
            Some((p, q)) => {
                let p = I::from_str(p.trim()).ok()?;
                let q = I::from_str(q.trim()).ok()?;
                if q.is_zero() {
                    None
                } else {
                    Some(Ratio::new(p, q))
                }
            }
            None => I::from_str(s).ok().map(Ratio::from_integer),
        }
    }

    fn lcm_integral(&self, other: &Self) -> Self {
        debug_assert!(self.is_integer() && other.is_integer());
        Ratio::from_integer(self.numer().lcm(other.numer()))
    }
}

/// Sum of a slice of rationals.
pub fn sum<T: ExactRational>(values: &[T]) -> T {
    values.iter().fold(T::zero(), |acc, v| acc + v.clone())
}

/// Dot product of two equally sized slices.
pub fn dot<T: ExactRational>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn denominator_lcm<T: ExactRational>(values: &[T]) -> T {
    values
        .iter()
        .fold(T::one(), |acc, v| acc.lcm_integral(&v.denominator()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{BigRational, Rational};
    use num_traits::One;

    #[test]
    fn pq_round_trip() {
        let r = Rational::from_frac(-6, 8);
        assert_eq!(r.to_pq(), "-3/4");
        assert_eq!(Rational::parse_pq("-3/4"), Some(r));
        assert_eq!(Rational::parse_pq("5"), Some(Rational::from_int(5)));
        assert_eq!(Rational::parse_pq("1/0"), None);
        assert_eq!(BigRational::parse_pq("7/4").unwrap().to_pq(), "7/4");
    }

    #[test]
    fn denominators() {
        let v = [
            Rational::from_frac(1, 2),
            Rational::from_frac(4, 5),
            Rational::from_int(3),
        ];
        assert_eq!(denominator_lcm(&v), Rational::from_int(10));
        assert_eq!(denominator_lcm::<Rational>(&[]), Rational::one());
    }
}

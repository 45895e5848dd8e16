//! Exact values of the form `c * sqrt(r)` with rational `c` and `r >= 0`.

use std::fmt;
use std::ops::Mul;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `coeff * sqrt(radicand)`. Perfect-square radicands are folded into the coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Radical {
    coeff: BigRational,
    radicand: BigRational,
}

impl Radical {
    /// Panics if `radicand` is negative.
    pub fn new(coeff: BigRational, radicand: BigRational) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        if coeff.is_zero() || radicand.is_zero() {
            return Self::zero();
        }
        match exact_sqrt(&radicand) {
            Some(root) => Self {
                coeff: coeff * root,
                radicand: BigRational::one(),
            },
            None => Self { coeff, radicand },
        }
    }

    pub fn rational(value: BigRational) -> Self {
        Self::new(value, BigRational::one())
    }

    /// `sqrt(radicand)`.
    pub fn sqrt(radicand: BigRational) -> Self {
        Self::new(BigRational::one(), radicand)
    }

    pub fn zero() -> Self {
        Self {
            coeff: BigRational::zero(),
            radicand: BigRational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    /// The exact rational value, if the radical is rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.radicand.is_one().then_some(&self.coeff)
    }

    /// The square of the value, always rational.
    pub fn square(&self) -> BigRational {
        &self.coeff * &self.coeff * &self.radicand
    }

    pub fn to_f64(&self) -> f64 {
        let c = self.coeff.to_f64().unwrap_or(f64::NAN);
        if self.radicand.is_one() {
            c
        } else {
            c * self.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
        }
    }
}

impl Mul for &Radical {
    type Output = Radical;

    fn mul(self, rhs: &Radical) -> Radical {
        Radical::new(&self.coeff * &rhs.coeff, &self.radicand * &rhs.radicand)
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", self.coeff)
        } else if self.coeff.is_one() {
            write!(f, "sqrt({})", self.radicand)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn exact_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let num = exact_isqrt(x.numer().magnitude())?;
    let den = exact_isqrt(x.denom().magnitude())?;
    Some(BigRational::new(
        BigInt::from_biguint(Sign::Plus, num),
        BigInt::from_biguint(Sign::Plus, den),
    ))
}

fn exact_isqrt(x: &BigUint) -> Option<BigUint> {
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}

/// `p/q` with an explicit denominator, e.g. `-1/9` or `0/1`.
pub fn format_ratio(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn perfect_squares_fold() {
        let r = Radical::sqrt(q(4, 9));
        assert_eq!(r.as_rational(), Some(&q(2, 3)));
        let r = Radical::sqrt(q(1, 2));
        assert_eq!(r.as_rational(), None);
        assert!((r.to_f64() - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn products_collapse_to_a_single_radical() {
        let a = Radical::sqrt(q(1, 2));
        let b = Radical::new(q(2, 3), q(1, 2));
        let p = &a * &b;
        assert_eq!(p.as_rational(), Some(&q(1, 3)));
        assert_eq!(p.square(), q(1, 9));
        let c = &a * &Radical::sqrt(q(1, 3));
        assert_eq!(c.radicand(), &q(1, 6));
    }

    #[test]
    fn zero_is_normalized() {
        assert!(Radical::new(q(0, 1), q(5, 7)).is_zero());
        assert_eq!(Radical::new(q(3, 1), q(0, 1)), Radical::zero());
    }

    #[test]
    fn ratio_formatting() {
        assert_eq!(format_ratio(&q(-1, 9)), "-1/9");
        assert_eq!(format_ratio(&q(0, 5)), "0/1");
        assert_eq!(format_ratio(&q(6, 3)), "2/1");
    }
}

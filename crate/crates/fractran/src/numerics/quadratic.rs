//! Exact arithmetic in ℚ[√2].
//!
//! A [`QuadraticRational`] is `a + b·√2` with rational `a`, `b`. Because √2
//! is irrational, the representation is unique, so zero testing and sign
//! determination reduce to exact rational comparisons. This is what lets
//! Newton-iteration error terms like `x_k − √2` be manipulated as honest
//! values instead of floating-point approximations.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// An element `a + b·√2` of ℚ[√2].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticRational {
    a: Rational,
    b: Rational,
}

impl QuadraticRational {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    /// The element √2 itself.
    pub fn sqrt2() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn from_rational(a: Rational) -> Self {
        Self::new(a, Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt2_coefficient(&self) -> &Rational {
        &self.b
    }

    /// Exact zero test: `a + b√2 = 0` with rational coefficients forces
    /// `a = b = 0` (otherwise √2 = −a/b would be rational).
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign: −1, 0 or +1.
    ///
    /// Mixed-sign cases compare `a²` against `2b²`, which decides
    /// `|a| ≷ |b|√2` without ever forming an irrational value.
    pub fn signum(&self) -> i32 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        match (sa, sb) {
            (0, 0) => 0,
            (_, 0) => sa,
            (0, _) => sb,
            (1, 1) => 1,
            (-1, -1) => -1,
            _ => {
                // a and b have opposite signs; the winner is whichever has
                // larger square (weighting b² by 2).
                let a2 = self.a.numer() * self.a.numer() * self.b.denom() * self.b.denom();
                let b2_twice =
                    self.b.numer() * self.b.numer() * self.a.denom() * self.a.denom() * 2;
                match a2.cmp(&b2_twice) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => {
                        unreachable!("a² = 2b² with b ≠ 0 would make √2 rational")
                    }
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

fn rational_sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl Add for &QuadraticRational {
    type Output = QuadraticRational;
    fn add(self, rhs: &QuadraticRational) -> QuadraticRational {
        QuadraticRational::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &QuadraticRational {
    type Output = QuadraticRational;
    fn sub(self, rhs: &QuadraticRational) -> QuadraticRational {
        QuadraticRational::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &QuadraticRational {
    type Output = QuadraticRational;
    fn mul(self, rhs: &QuadraticRational) -> QuadraticRational {
        // (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
        let two = Rational::from_integer(BigInt::from(2));
        QuadraticRational::new(
            &self.a * &rhs.a + two * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Neg for QuadraticRational {
    type Output = QuadraticRational;
    fn neg(self) -> QuadraticRational {
        QuadraticRational::new(-self.a, -self.b)
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for QuadraticRational {
            type Output = QuadraticRational;
            fn $method(self, rhs: QuadraticRational) -> QuadraticRational {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl PartialOrd for QuadraticRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).signum() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

impl fmt::Display for QuadraticRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√2", self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(an: i64, ad: i64, bn: i64, bd: i64) -> QuadraticRational {
        QuadraticRational::new(
            Rational::new(BigInt::from(an), BigInt::from(ad)),
            Rational::new(BigInt::from(bn), BigInt::from(bd)),
        )
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = QuadraticRational::sqrt2();
        assert_eq!(&s * &s, QuadraticRational::from_int(2));
    }

    #[test]
    fn sign_mixed_cases() {
        // 3/2 − √2 > 0 (9 > 8), 7/5 − √2 < 0 (49 < 50)
        assert_eq!(q(3, 2, -1, 1).signum(), 1);
        assert_eq!(q(7, 5, -1, 1).signum(), -1);
        // −3/2 + √2 < 0, −7/5 + √2 > 0
        assert_eq!(q(-3, 2, 1, 1).signum(), -1);
        assert_eq!(q(-7, 5, 1, 1).signum(), 1);
        assert_eq!(q(0, 1, 0, 1).signum(), 0);
        assert_eq!(q(0, 1, -2, 3).signum(), -1);
    }

    #[test]
    fn ordering_follows_value() {
        // 1 < 7/5 < √2 < 3/2 < 2·√2
        let vals = [
            QuadraticRational::from_int(1),
            q(7, 5, 0, 1),
            QuadraticRational::sqrt2(),
            q(3, 2, 0, 1),
            q(0, 1, 2, 1),
        ];
        for w in vals.windows(2) {
            assert!(w[0] < w[1], "{} !< {}", w[0], w[1]);
        }
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-200i64..200, 1i64..60)
            .prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn arb_quad() -> impl Strategy<Value = QuadraticRational> {
        (arb_rational(), arb_rational()).prop_map(|(a, b)| QuadraticRational::new(a, b))
    }

    proptest! {
        #[test]
        fn ring_axioms(x in arb_quad(), y in arb_quad(), z in arb_quad()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
        }

        #[test]
        fn sign_agrees_with_float_approx(x in arb_quad()) {
            // Float arithmetic is only a sanity cross-check for the exact
            // sign logic; it never participates in library results.
            let af: f64 = fraction_to_f64(x.rational_part());
            let bf: f64 = fraction_to_f64(x.sqrt2_coefficient());
            let approx = af + bf * std::f64::consts::SQRT_2;
            if approx.abs() > 1e-6 {
                prop_assert_eq!(x.signum(), if approx > 0.0 { 1 } else { -1 });
            }
        }
    }

    fn fraction_to_f64(r: &Rational) -> f64 {
        let n: f64 = r.numer().to_string().parse().unwrap();
        let d: f64 = r.denom().to_string().parse().unwrap();
        n / d
    }
}

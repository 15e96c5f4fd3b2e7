use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::numerics::Natural;

/// A FRACTRAN instruction: a positive fraction, stored exactly as given.
///
/// Fractions are deliberately *not* reduced on construction. Published
/// fraction lists are canonical artifacts and a reducible entry (such as
/// 267/723) is preserved verbatim; reduction would not change semantics
/// but would destroy provenance. [`Fraction::reduced`] gives the
/// normalized view for equivalence checks, and [`Program::lints`]
/// flags reducible entries.
///
/// [`Program::lints`]: super::Program::lints
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: Natural,
    den: Natural,
}

impl Fraction {
    /// Build a fraction; both parts must be positive.
    pub fn new(num: Natural, den: Natural) -> Option<Self> {
        if num.is_zero() || den.is_zero() {
            None
        } else {
            Some(Self { num, den })
        }
    }

    pub fn from_u64(num: u64, den: u64) -> Option<Self> {
        Self::new(Natural::from(num), Natural::from(den))
    }

    pub fn num(&self) -> &Natural {
        &self.num
    }

    pub fn den(&self) -> &Natural {
        &self.den
    }

    /// The reduced (coprime) view of this fraction.
    pub fn reduced(&self) -> Fraction {
        let g = self.num.gcd(&self.den);
        Fraction {
            num: &self.num / &g,
            den: &self.den / &g,
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.num.gcd(&self.den).is_one()
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl From<Fraction> for (BigUint, BigUint) {
    fn from(f: Fraction) -> Self {
        (f.num, f.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_parts() {
        assert!(Fraction::from_u64(0, 3).is_none());
        assert!(Fraction::from_u64(2, 0).is_none());
        assert!(Fraction::from_u64(1, 1).is_some());
    }

    #[test]
    fn reduction_is_a_view() {
        let f = Fraction::from_u64(267, 723).unwrap();
        assert!(!f.is_reduced());
        assert_eq!(f.reduced(), Fraction::from_u64(89, 241).unwrap());
        // The original is untouched.
        assert_eq!(f.to_string(), "267/723");
    }
}

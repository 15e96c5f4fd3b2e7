//! Infinite-product truncations for √2 and π as exact integers.
//!
//! For an admissible truncation length `E`:
//!
//! * √2 route (`E ≡ 2 mod 4`, `E ≥ 6`):
//!   `N_E = E · (2·6·10⋯(E−4))²` and `D_E = (E−1) · (1·3)(5·7)⋯((E−5)(E−3))`,
//!   i.e. the full product factors `(4k+2)²/((4k+1)(4k+3))` up to `E−4`
//!   and then the partial factor `E/(E−1)`.
//! * π route (`E` even, `E ≥ 4`):
//!   `N_E = 2·E·(E−2)²⋯4²·2²` and `D_E = (E−1)²·(E−3)²⋯3²·1²`.
//!
//! Both truncations over-approximate their constant and converge from
//! above with error `O(1/E)`; the exact bracketing pair is checked by
//! [`bracketing_check`]. That `O(1/E)` rate is also the reason digit
//! indices beyond single digits are out of reach on real hardware: digit
//! `n` needs `E ~ 10ⁿ`, i.e. `~10ⁿ/4` product factors. The materialized
//! constructors refuse absurd lengths rather than thrash; see
//! [`truncation_digit_streaming`] for the cheaper certified fixed-point
//! route, which extends the reachable range by a few digits but cannot
//! change the exponential wall.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::numerics::{isqrt, pi_enclosure, pow10, Natural, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TruncationError {
    #[error("truncation length {e} invalid for {kind:?}: {reason}")]
    BadLength {
        kind: TruncationKind,
        e: u64,
        reason: String,
    },
    #[error(
        "truncation length {e} needs ~{factors} product factors; \
         exact materialization is capped at {max} factors"
    )]
    TooLong { e: u64, factors: u64, max: u64 },
    #[error("digit {n} not certified at length {e}: accuracy bound not met")]
    AccuracyNotMet { e: u64, n: u32 },
    #[error("streaming guard digits exhausted at length {e}, digit {n}")]
    GuardExhausted { e: u64, n: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruncationKind {
    CatalanSqrt2,
    WallisPi,
}

impl TruncationKind {
    pub fn name(self) -> &'static str {
        match self {
            TruncationKind::CatalanSqrt2 => "CATALAN_SQRT2",
            TruncationKind::WallisPi => "WALLIS_PI",
        }
    }

    fn validate_length(self, e: u64) -> Result<(), TruncationError> {
        let bad = |reason: &str| TruncationError::BadLength {
            kind: self,
            e,
            reason: reason.to_string(),
        };
        match self {
            TruncationKind::CatalanSqrt2 => {
                if e < 6 {
                    Err(bad("must be at least 6"))
                } else if e % 4 != 2 {
                    Err(bad("must be ≡ 2 (mod 4)"))
                } else {
                    Ok(())
                }
            }
            TruncationKind::WallisPi => {
                if e < 4 {
                    Err(bad("must be at least 4"))
                } else if e % 2 != 0 {
                    Err(bad("must be even"))
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl fmt::Display for TruncationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exact product truncation `N_E / D_E`, stored in the structural
/// (unreduced) form given by the defining factor pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    pub kind: TruncationKind,
    pub e: u64,
    pub n_e: Natural,
    pub d_e: Natural,
}

impl Truncation {
    pub fn value(&self) -> Rational {
        Rational::new(self.n_e.clone().into(), self.d_e.clone().into())
    }
}

/// Materialization cap: beyond ~4·10⁶ factors the products hold tens of
/// millions of digits and exact construction stops being a sane default.
pub const MAX_MATERIALIZED_FACTORS: u64 = 4_000_000;

/// Lengths up to this get the second-route expansion cross-check.
const CROSS_CHECK_MAX_E: u64 = 4_000;

fn check_factor_budget(e: u64, per: u64) -> Result<(), TruncationError> {
    let factors = e / per;
    if factors > MAX_MATERIALIZED_FACTORS {
        Err(TruncationError::TooLong {
            e,
            factors,
            max: MAX_MATERIALIZED_FACTORS,
        })
    } else {
        Ok(())
    }
}

/// The √2 truncation at length `E`.
///
/// For moderate `E` the structural product is verified against the
/// per-factor expansion `∏ (4k+2)²/((4k+1)(4k+3)) · E/(E−1)` computed in
/// reduced rational arithmetic; the two routes must agree exactly.
pub fn catalan_truncation(e: u64) -> Result<Truncation, TruncationError> {
    TruncationKind::CatalanSqrt2.validate_length(e)?;
    check_factor_budget(e, 4)?;
    let mut n_e = Natural::from(e);
    let mut d_e = Natural::from(e - 1);
    let mut j = 2u64;
    while j + 4 <= e {
        n_e *= Natural::from(j * j);
        d_e *= Natural::from((j - 1) * (j + 1));
        j += 4;
    }
    let t = Truncation {
        kind: TruncationKind::CatalanSqrt2,
        e,
        n_e,
        d_e,
    };
    if e <= CROSS_CHECK_MAX_E {
        let mut product = Rational::new(e.into(), (e - 1).into());
        let mut j = 2u64;
        while j + 4 <= e {
            product *= Rational::new((j * j).into(), ((j - 1) * (j + 1)).into());
            j += 4;
        }
        assert_eq!(t.value(), product, "factor-pattern mismatch at E = {e}");
    }
    Ok(t)
}

/// The π truncation at length `E`, same contract as [`catalan_truncation`].
pub fn wallis_truncation(e: u64) -> Result<Truncation, TruncationError> {
    TruncationKind::WallisPi.validate_length(e)?;
    check_factor_budget(e, 2)?;
    let mut n_e = Natural::from(2 * e);
    let mut d_e = Natural::one();
    let mut j = 2u64;
    while j + 2 <= e {
        n_e *= Natural::from(j * j);
        j += 2;
    }
    let mut i = 1u64;
    while i < e {
        d_e *= Natural::from(i * i);
        i += 2;
    }
    let t = Truncation {
        kind: TruncationKind::WallisPi,
        e,
        n_e,
        d_e,
    };
    if e <= CROSS_CHECK_MAX_E {
        let mut product = Rational::new((2 * e).into(), (e - 1).into());
        let mut j = 2u64;
        while j + 2 <= e {
            product *= Rational::new((j * j).into(), ((j - 1) * (j + 1)).into());
            j += 2;
        }
        assert_eq!(t.value(), product, "factor-pattern mismatch at E = {e}");
    }
    Ok(t)
}

fn truncate(kind: TruncationKind, e: u64) -> Result<Truncation, TruncationError> {
    match kind {
        TruncationKind::CatalanSqrt2 => catalan_truncation(e),
        TruncationKind::WallisPi => wallis_truncation(e),
    }
}

/// Is length `E` certified accurate for digit `n`?
///
/// √2: `2√2/E < 10⁻ⁿ ⇔ E² > 8·10^(2n)`, an exact integer comparison.
/// π: `π/E < 10⁻ⁿ ⇔ E > π·10ⁿ`, decided against the Machin enclosure at
/// increasing precision until one side is certain.
pub fn accuracy_certified(kind: TruncationKind, e: u64, n: u32) -> bool {
    match kind {
        TruncationKind::CatalanSqrt2 => {
            Natural::from(e) * Natural::from(e) > Natural::from(8u32) * pow10(2 * n)
        }
        TruncationKind::WallisPi => {
            let shift = Rational::from_integer(pow10(n).into());
            let e_rat = Rational::from_integer(e.into());
            let mut digits = n + 15;
            loop {
                let enc = pi_enclosure(digits);
                if enc.hi() * &shift < e_rat {
                    return true;
                }
                if enc.lo() * &shift >= e_rat {
                    return false;
                }
                digits *= 2;
            }
        }
    }
}

/// Digit `n` of a materialized truncation: `⌊10ⁿ·N_E/D_E⌋ mod 10` by
/// exact integer division. In checked mode the accuracy precondition must
/// hold; unchecked mode exists for negative testing.
pub fn truncation_digit(t: &Truncation, n: u32, checked: bool) -> Result<u8, TruncationError> {
    if checked && !accuracy_certified(t.kind, t.e, n) {
        return Err(TruncationError::AccuracyNotMet { e: t.e, n });
    }
    let shifted = pow10(n) * &t.n_e;
    let floor = shifted / &t.d_e;
    Ok((floor % Natural::from(10u32)).to_u8().expect("single digit"))
}

/// Smallest certified-accurate truncation length for digit `n`.
///
/// Returned as a [`Natural`]: the value itself is computable for any `n`
/// even where the corresponding truncation is far beyond materializing
/// (it grows like `10ⁿ`).
pub fn minimal_e(kind: TruncationKind, n: u32) -> Natural {
    match kind {
        TruncationKind::CatalanSqrt2 => {
            // Smallest integer with c² > 8·10^(2n); that bound is never a
            // perfect square (odd power of 2), so c = isqrt + 1.
            let bound = Natural::from(8u32) * pow10(2 * n);
            let c = isqrt(&bound) + 1u32;
            // Round up to ≡ 2 (mod 4), minimum 6.
            let mut c = c.max(Natural::from(6u32));
            let rem = (&c % 4u32).to_u8().unwrap() as u32;
            if rem != 2 {
                c += (4 + 2 - rem as u64) % 4;
            }
            c
        }
        TruncationKind::WallisPi => {
            // Smallest even integer > π·10ⁿ.
            let mut digits = n + 15;
            let floor_shifted = loop {
                let enc = pi_enclosure(digits);
                let shift = Rational::from_integer(pow10(n).into());
                let lo = (enc.lo() * &shift).floor().to_integer();
                let hi = (enc.hi() * &shift).floor().to_integer();
                if lo == hi {
                    break lo.to_biguint().expect("positive");
                }
                digits *= 2;
            };
            let c = floor_shifted + 1u32;
            let c = c.max(Natural::from(4u32));
            if (&c % 2u32).is_zero() {
                c
            } else {
                c + 1u32
            }
        }
    }
}

/// `minimal_e` for lengths that fit a `u64` (digit indices up to ~17).
pub fn minimal_e_u64(kind: TruncationKind, n: u32) -> Option<u64> {
    minimal_e(kind, n).to_u64()
}

/// A digit extraction backed by the bracket certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedDigit {
    pub kind: TruncationKind,
    pub n: u32,
    /// The truncation length whose bracket pair pinned the digit.
    pub e: u64,
    pub digit: u8,
}

/// Digit `n` of the truncated constant's *limit*, certified without any
/// external reference.
///
/// The error bound `O(1/E)` alone cannot pin a digit: the truncation
/// approaches from above, and when the constant's own expansion sits
/// close below a decade boundary the truncation lands on the other side
/// of it (for π at `n = 3`, the smallest bound-satisfying length gives
/// `π_E = 3.1420…`, reading 2 where π has 1). The bracket pair repairs
/// this exactly: the constant lies strictly between the rescaled
/// truncation and the truncation, so when both ends of the bracket agree
/// on `⌊10ⁿ·x⌋`, that floor — and hence the digit — is certain. This
/// searches upward from the bound-derived length until the pair agrees.
pub fn digit_certified(kind: TruncationKind, n: u32) -> Result<CertifiedDigit, TruncationError> {
    let start = minimal_e_u64(kind, n).ok_or(TruncationError::TooLong {
        e: u64::MAX,
        factors: u64::MAX,
        max: MAX_MATERIALIZED_FACTORS,
    })?;
    let step = match kind {
        TruncationKind::CatalanSqrt2 => 4u64,
        TruncationKind::WallisPi => 2u64,
    };
    let mut e = start;
    // The crossing clears once the error drops below the gap to the next
    // decade boundary; a handful of doublings is ample for any digit that
    // is not pathologically close to 999… .
    while e < start.saturating_mul(4096) {
        if let Some(digit) = bracket_digit(kind, e, n)? {
            return Ok(CertifiedDigit { kind, n, e, digit });
        }
        // Exponential-ish advance, snapped to the parity class.
        let next = (e + e / 8).max(e + step);
        e = next - (next - e) % step;
    }
    Err(TruncationError::GuardExhausted { e, n })
}

/// Floor agreement of the bracket pair at one length, via the streaming
/// fixed-point bounds. `Some(digit)` when `⌊10ⁿ·x̃⌋ = ⌊10ⁿ·x⌋`.
fn bracket_digit(
    kind: TruncationKind,
    e: u64,
    n: u32,
) -> Result<Option<u8>, TruncationError> {
    let guard: u32 = 12;
    let (lo, hi) = stream_bounds(kind, e, n, guard)?;
    // Rescale factor for the lower bracket: E/(E+2) for √2, E/(E+1) for π.
    let shift = match kind {
        TruncationKind::CatalanSqrt2 => 2u64,
        TruncationKind::WallisPi => 1u64,
    };
    let tilde_lo = &lo * e / (e + shift);
    let tilde_hi = (&hi * e + (e + shift - 1)) / (e + shift);
    let g = pow10(guard);
    let f_hi_lo = &lo / &g;
    let f_hi_hi = &hi / &g;
    let f_tilde_lo = &tilde_lo / &g;
    let f_tilde_hi = &tilde_hi / &g;
    if f_hi_lo != f_hi_hi || f_tilde_lo != f_tilde_hi {
        return Err(TruncationError::GuardExhausted { e, n });
    }
    if f_tilde_lo == f_hi_lo {
        Ok(Some(
            (f_hi_lo % Natural::from(10u32)).to_u8().expect("digit"),
        ))
    } else {
        Ok(None)
    }
}

/// Streamed fixed-point bounds `lo ≤ 10^(n+guard)·N_E/D_E ≤ hi`.
fn stream_bounds(
    kind: TruncationKind,
    e: u64,
    n: u32,
    guard: u32,
) -> Result<(Natural, Natural), TruncationError> {
    kind.validate_length(e)?;
    let scale = pow10(n + guard);
    let (mut lo, mut hi) = match kind {
        TruncationKind::CatalanSqrt2 => (scale.clone(), scale),
        TruncationKind::WallisPi => (&scale * 2u32, scale * 2u32),
    };
    let apply = |num: u64, den: u64, lo: &mut Natural, hi: &mut Natural| {
        *lo = &*lo * num / den;
        let hn = &*hi * num;
        *hi = (&hn + (den - 1)) / den;
    };
    let step = match kind {
        TruncationKind::CatalanSqrt2 => 4u64,
        TruncationKind::WallisPi => 2u64,
    };
    let mut j = 2u64;
    while j + step <= e {
        apply(j * j, (j - 1) * (j + 1), &mut lo, &mut hi);
        j += step;
    }
    apply(e, e - 1, &mut lo, &mut hi);
    Ok((lo, hi))
}

/// Certified streaming digit extraction.
///
/// Maintains fixed-point lower/upper bounds of `10ⁿ·N_E/D_E` with 12
/// guard digits, one rounding each way per factor. With at most ~10⁹
/// factors the accumulated drift stays far below the guard, and the
/// digit is accepted only when both bounds agree on the shifted floor.
/// Cost is one small-by-big multiply and divide per factor, so lengths up
/// to about 10⁹ are reachable without materializing the products.
pub fn truncation_digit_streaming(
    kind: TruncationKind,
    e: u64,
    n: u32,
    checked: bool,
) -> Result<u8, TruncationError> {
    if checked && !accuracy_certified(kind, e, n) {
        return Err(TruncationError::AccuracyNotMet { e, n });
    }
    let guard: u32 = 12;
    let (lo, hi) = stream_bounds(kind, e, n, guard)?;
    let g = pow10(guard);
    let dlo = lo / &g;
    let dhi = hi / &g;
    if dlo != dhi {
        return Err(TruncationError::GuardExhausted { e, n });
    }
    Ok((dlo % Natural::from(10u32)).to_u8().expect("single digit"))
}

/// Outcome of the exact bracketing check: the truncation must sit above
/// its constant, and its rescaled companion (`E/(E+2)` for √2,
/// `E/(E+1)` for π) below it.
#[derive(Debug, Clone)]
pub struct BracketingReport {
    pub kind: TruncationKind,
    pub e: u64,
    pub upper_holds: bool,
    pub lower_holds: bool,
    /// Exact integer comparisons backing the verdict, as decimal strings.
    pub witnesses: Vec<(String, String, String)>,
}

impl BracketingReport {
    pub fn pass(&self) -> bool {
        self.upper_holds && self.lower_holds
    }
}

/// Check the two-sided bracket for one truncation.
///
/// √2 is decided by pure integer comparisons
/// (`N² > 2D²` and `E²N² < 2(E+2)²D²`); π against the Machin enclosure,
/// with precision raised until the enclosure separates.
pub fn bracketing_check(t: &Truncation) -> BracketingReport {
    let mut witnesses = Vec::new();
    let (upper_holds, lower_holds) = match t.kind {
        TruncationKind::CatalanSqrt2 => {
            let n2 = &t.n_e * &t.n_e;
            let d2_twice = Natural::from(2u32) * &t.d_e * &t.d_e;
            let upper = n2 > d2_twice;
            witnesses.push(("N²".into(), n2.to_string(), format!("2D²={d2_twice}")));
            let e = Natural::from(t.e);
            let e2 = Natural::from(t.e + 2);
            let lhs = &e * &e * &t.n_e * &t.n_e;
            let rhs = Natural::from(2u32) * &e2 * &e2 * &t.d_e * &t.d_e;
            let lower = lhs < rhs;
            witnesses.push(("E²N²".into(), lhs.to_string(), format!("2(E+2)²D²={rhs}")));
            (upper, lower)
        }
        TruncationKind::WallisPi => {
            let value = t.value();
            let tilde = &value * Rational::new(t.e.into(), (t.e + 1).into());
            let mut digits = 60u32;
            loop {
                let enc = pi_enclosure(digits);
                let upper_certain = &value > enc.hi();
                let upper_refuted = &value < enc.lo();
                let lower_certain = &tilde < enc.lo();
                let lower_refuted = &tilde > enc.hi();
                if (upper_certain || upper_refuted) && (lower_certain || lower_refuted) {
                    witnesses.push((
                        "π_E".into(),
                        value.to_string(),
                        format!("π_enclosure_hi={}", enc.hi()),
                    ));
                    witnesses.push((
                        "π_Ẽ".into(),
                        tilde.to_string(),
                        format!("π_enclosure_lo={}", enc.lo()),
                    ));
                    break (upper_certain, lower_certain);
                }
                digits *= 2;
            }
        }
    };
    BracketingReport {
        kind: t.kind,
        e: t.e,
        upper_holds,
        lower_holds,
        witnesses,
    }
}

#[derive(Debug, Clone)]
pub struct NonIntegralityReport {
    pub kind: TruncationKind,
    pub e: u64,
    pub n: u32,
    /// The reduced denominator `q` of `N_E/D_E`.
    pub reduced_denominator: String,
    pub pass: bool,
}

/// `10ⁿ·N_E/D_E` must never be an integer (else the digit convention
/// could sit on a `0.999…` boundary). With `N_E/D_E = p/q` reduced, the
/// product is integral iff `q | 10ⁿ`; the check strips the factors 2 and
/// 5 from `q` and compares exponents.
pub fn non_integrality_check(t: &Truncation, n: u32) -> NonIntegralityReport {
    let g = t.n_e.gcd(&t.d_e);
    let q = &t.d_e / &g;
    let strip = |mut v: Natural, p: u32| -> (Natural, u32) {
        let pb = Natural::from(p);
        let mut count = 0;
        loop {
            let (d, r) = v.div_rem(&pb);
            if r.is_zero() {
                v = d;
                count += 1;
            } else {
                return (v, count);
            }
        }
    };
    let (rest, twos) = strip(q.clone(), 2);
    let (rest, fives) = strip(rest, 5);
    let divides_power_of_ten = rest.is_one() && twos <= n && fives <= n;
    NonIntegralityReport {
        kind: t.kind,
        e: t.e,
        n,
        reduced_denominator: q.to_string(),
        pass: !divides_power_of_ten,
    }
}

/// Iterator over all admissible truncations up to `max_e`, built
/// incrementally (`N` and `D` are extended by two factors per step
/// instead of being reconstructed).
pub fn truncation_sweep(kind: TruncationKind, max_e: u64) -> TruncationSweep {
    let e0 = match kind {
        TruncationKind::CatalanSqrt2 => 6,
        TruncationKind::WallisPi => 4,
    };
    TruncationSweep {
        kind,
        next: truncate(kind, e0).ok(),
        max_e,
    }
}

pub struct TruncationSweep {
    kind: TruncationKind,
    next: Option<Truncation>,
    max_e: u64,
}

impl Iterator for TruncationSweep {
    type Item = Truncation;

    fn next(&mut self) -> Option<Truncation> {
        let current = self.next.take()?;
        if current.e > self.max_e {
            return None;
        }
        self.next = match self.kind {
            TruncationKind::CatalanSqrt2 => {
                // N_{E+4} = N_E·E·(E+4); D_{E+4} = D_E·(E+1)·(E+3).
                let e = current.e;
                Some(Truncation {
                    kind: self.kind,
                    e: e + 4,
                    n_e: &current.n_e * Natural::from(e) * Natural::from(e + 4),
                    d_e: &current.d_e * Natural::from(e + 1) * Natural::from(e + 3),
                })
            }
            TruncationKind::WallisPi => {
                // N_{E+2} = N_E·E·(E+2); D_{E+2} = D_E·(E+1)².
                let e = current.e;
                Some(Truncation {
                    kind: self.kind,
                    e: e + 2,
                    n_e: &current.n_e * Natural::from(e) * Natural::from(e + 2),
                    d_e: &current.d_e * Natural::from((e + 1) * (e + 1)),
                })
            }
        };
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{pi_digit_reference, sqrt2_digit_reference};

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn catalan_small_cases() {
        let t = catalan_truncation(6).unwrap();
        assert_eq!((t.n_e.clone(), t.d_e.clone()), (nat(24), nat(15)));
        assert_eq!(t.value(), Rational::new(8.into(), 5.into()));
        let t = catalan_truncation(10).unwrap();
        assert_eq!((t.n_e.clone(), t.d_e.clone()), (nat(1440), nat(945)));
        assert_eq!(t.value(), Rational::new(32.into(), 21.into()));
        assert!(matches!(
            catalan_truncation(8),
            Err(TruncationError::BadLength { .. })
        ));
    }

    #[test]
    fn wallis_small_cases() {
        let t = wallis_truncation(4).unwrap();
        assert_eq!((t.n_e.clone(), t.d_e.clone()), (nat(32), nat(9)));
        let t = wallis_truncation(8).unwrap();
        assert_eq!((t.n_e.clone(), t.d_e.clone()), (nat(36864), nat(11025)));
        assert!(matches!(
            wallis_truncation(5),
            Err(TruncationError::BadLength { .. })
        ));
    }

    #[test]
    fn digit_extraction() {
        let t = wallis_truncation(8).unwrap();
        assert_eq!(truncation_digit(&t, 0, true).unwrap(), 3);
        let t = catalan_truncation(10).unwrap();
        assert_eq!(truncation_digit(&t, 0, true).unwrap(), 1);
        let t = catalan_truncation(30).unwrap();
        assert_eq!(truncation_digit(&t, 1, true).unwrap(), 4);
        assert_eq!(truncation_digit(&t, 1, true).unwrap(), sqrt2_digit_reference(1));
        // Checked mode refuses an uncertified digit.
        let t = catalan_truncation(6).unwrap();
        assert!(matches!(
            truncation_digit(&t, 1, true),
            Err(TruncationError::AccuracyNotMet { .. })
        ));
        assert!(truncation_digit(&t, 1, false).is_ok());
    }

    #[test]
    fn minimal_lengths() {
        assert_eq!(minimal_e_u64(TruncationKind::CatalanSqrt2, 0), Some(6));
        assert_eq!(minimal_e_u64(TruncationKind::CatalanSqrt2, 1), Some(30));
        assert_eq!(minimal_e_u64(TruncationKind::WallisPi, 0), Some(4));
        assert_eq!(minimal_e_u64(TruncationKind::WallisPi, 1), Some(32));
        // Growth is 10ⁿ: digit 5 needs E near 2.83·10⁵ (√2) / 3.15·10⁵ (π).
        assert_eq!(minimal_e_u64(TruncationKind::CatalanSqrt2, 5), Some(282846));
        assert_eq!(minimal_e_u64(TruncationKind::WallisPi, 5), Some(314160));
    }

    #[test]
    fn minimal_length_is_minimal() {
        for kind in [TruncationKind::CatalanSqrt2, TruncationKind::WallisPi] {
            for n in 0..=3u32 {
                let e = minimal_e_u64(kind, n).unwrap();
                assert!(accuracy_certified(kind, e, n), "{kind} E={e} n={n}");
                let step = match kind {
                    TruncationKind::CatalanSqrt2 => 4,
                    TruncationKind::WallisPi => 2,
                };
                if e > step + 2 {
                    assert!(
                        !accuracy_certified(kind, e - step, n),
                        "{kind} E={} should fail at n={n}",
                        e - step
                    );
                }
            }
        }
    }

    #[test]
    fn bracketing_small_cases() {
        for e in [6u64, 10, 30] {
            let r = bracketing_check(&catalan_truncation(e).unwrap());
            assert!(r.pass(), "catalan E={e}");
        }
        for e in [4u64, 8, 20] {
            let r = bracketing_check(&wallis_truncation(e).unwrap());
            assert!(r.pass(), "wallis E={e}");
        }
    }

    #[test]
    fn non_integrality_small_cases() {
        let t = catalan_truncation(10).unwrap();
        assert!(non_integrality_check(&t, 0).pass);
        assert!(non_integrality_check(&t, 3).pass);
        assert_eq!(non_integrality_check(&t, 0).reduced_denominator, "21");
        let t = wallis_truncation(8).unwrap();
        let r = non_integrality_check(&t, 2);
        assert!(r.pass);
        assert_eq!(r.reduced_denominator, "1225"); // 5²·7², and 7² ∤ 10ⁿ
    }

    #[test]
    fn sweep_matches_direct_construction() {
        let direct: Vec<Truncation> = (0..20)
            .map(|i| catalan_truncation(6 + 4 * i).unwrap())
            .collect();
        let swept: Vec<Truncation> = truncation_sweep(TruncationKind::CatalanSqrt2, 6 + 4 * 19)
            .collect();
        assert_eq!(direct, swept);
        let direct: Vec<Truncation> = (0..20)
            .map(|i| wallis_truncation(4 + 2 * i).unwrap())
            .collect();
        let swept: Vec<Truncation> =
            truncation_sweep(TruncationKind::WallisPi, 4 + 2 * 19).collect();
        assert_eq!(direct, swept);
    }

    #[test]
    fn streaming_agrees_with_materialized() {
        for n in 0..=3u32 {
            for kind in [TruncationKind::CatalanSqrt2, TruncationKind::WallisPi] {
                let e = minimal_e_u64(kind, n).unwrap();
                let t = truncate(kind, e).unwrap();
                assert_eq!(
                    truncation_digit(&t, n, true).unwrap(),
                    truncation_digit_streaming(kind, e, n, true).unwrap(),
                    "{kind} E={e} n={n}"
                );
            }
        }
    }

    #[test]
    fn certified_digits_match_references_small_range() {
        for n in 0..=4u32 {
            let c = digit_certified(TruncationKind::CatalanSqrt2, n).unwrap();
            assert_eq!(c.digit, sqrt2_digit_reference(n), "√2 digit {n}");
            let c = digit_certified(TruncationKind::WallisPi, n).unwrap();
            assert_eq!(c.digit, pi_digit_reference(n), "π digit {n}");
        }
    }

    #[test]
    fn bound_satisfying_length_can_still_miss_the_digit() {
        // The error bound π/E < 10⁻ⁿ does not forbid crossing a decade
        // boundary. At n = 3 the smallest even E past π·10³ is 3142, and
        // 10³·π_E lands at 3142.09… — the truncation reads digit 2 where
        // π has 1. The bracket certificate detects and repairs this.
        let e = minimal_e_u64(TruncationKind::WallisPi, 3).unwrap();
        assert_eq!(e, 3142);
        let t = wallis_truncation(e).unwrap();
        let raw = truncation_digit(&t, 3, true).unwrap();
        assert_eq!(raw, 2);
        assert_ne!(raw, pi_digit_reference(3));
        let c = digit_certified(TruncationKind::WallisPi, 3).unwrap();
        assert_eq!(c.digit, pi_digit_reference(3));
        assert!(c.e > e, "certificate must have moved past the bound length");
    }

    #[test]
    fn mod4_doubling_recurrence_preserves_residue() {
        // Entering a doubling pass with 4j+2 exits with 4(2j+1)+2; the
        // residue class mod 4 is invariant. Checked over a large range.
        for j in 0..=1_000_000u64 {
            let enter = 4 * j + 2;
            let exit = 4 * (2 * j + 1) + 2;
            assert_eq!(enter % 4, 2);
            assert_eq!(exit % 4, 2);
        }
    }

    #[test]
    fn materialization_cap_is_an_error_not_a_hang() {
        let e = 4_000_000_000_000u64 + 2; // ≡ 2 mod 4, ~10¹² factors
        assert!(matches!(
            catalan_truncation(e),
            Err(TruncationError::TooLong { .. })
        ));
    }
}

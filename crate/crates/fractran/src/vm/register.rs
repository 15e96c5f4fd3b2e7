use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::numerics::{factor_u64, is_prime_u64, Natural};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegisterError {
    #[error("register must be a positive integer")]
    Zero,
    #[error("{0} is not prime; factored registers use prime bases only")]
    NotPrime(u64),
    #[error("cannot parse register spec {spec:?}: {reason}")]
    BadSpec { spec: String, reason: String },
    #[error("register has a factor too large to extract: {0}")]
    Unfactorable(String),
}

/// Machine state: an unbounded positive integer, in monolithic or factored
/// (prime → exponent) form. The two forms convert losslessly; the factored
/// form never stores zero exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegisterValue {
    Monolithic(Natural),
    Factored(BTreeMap<u64, u64>),
}

impl RegisterValue {
    pub fn one() -> Self {
        RegisterValue::Factored(BTreeMap::new())
    }

    pub fn from_natural(value: Natural) -> Result<Self, RegisterError> {
        if value.is_zero() {
            return Err(RegisterError::Zero);
        }
        Ok(RegisterValue::Monolithic(value))
    }

    /// Build a factored register from `(prime, exponent)` pairs. Repeated
    /// primes accumulate; zero exponents are dropped; non-prime bases are
    /// rejected.
    pub fn from_factors<I>(factors: I) -> Result<Self, RegisterError>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut map = BTreeMap::new();
        for (p, e) in factors {
            if !is_prime_u64(p) {
                return Err(RegisterError::NotPrime(p));
            }
            if e > 0 {
                *map.entry(p).or_insert(0) += e;
            }
        }
        Ok(RegisterValue::Factored(map))
    }

    /// The plain integer value. Exact, but materializes the full product.
    pub fn to_natural(&self) -> Natural {
        match self {
            RegisterValue::Monolithic(n) => n.clone(),
            RegisterValue::Factored(map) => {
                let mut acc = Natural::one();
                for (&p, &e) in map {
                    acc *= pow_u64(p, e);
                }
                acc
            }
        }
    }

    /// The factored view over primes from `basis_hint` plus whatever small
    /// primes remain. Fails only when a monolithic value keeps a cofactor
    /// larger than `u64` after the hinted primes are divided out.
    pub fn to_factors(&self, basis_hint: &[u64]) -> Result<BTreeMap<u64, u64>, RegisterError> {
        match self {
            RegisterValue::Factored(map) => Ok(map.clone()),
            RegisterValue::Monolithic(n) => {
                let mut rest = n.clone();
                let mut map = BTreeMap::new();
                for &p in basis_hint {
                    let pb = Natural::from(p);
                    let mut e = 0u64;
                    loop {
                        let (q, r) = num_integer::Integer::div_rem(&rest, &pb);
                        if r.is_zero() {
                            rest = q;
                            e += 1;
                        } else {
                            break;
                        }
                    }
                    if e > 0 {
                        map.insert(p, e);
                    }
                }
                if !rest.is_one() {
                    let small = rest
                        .to_u64()
                        .ok_or_else(|| RegisterError::Unfactorable(rest.to_string()))?;
                    for (p, e) in factor_u64(small) {
                        *map.entry(p).or_insert(0) += u64::from(e);
                    }
                }
                Ok(map)
            }
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            RegisterValue::Monolithic(n) => n.is_one(),
            RegisterValue::Factored(map) => map.is_empty(),
        }
    }

    /// Factored rendering `p^e*…` (round-trips through
    /// [`parse_register_spec`]), or the decimal value when monolithic.
    pub fn display_factored(&self) -> String {
        match self {
            RegisterValue::Monolithic(n) => match self.to_factors(&[]) {
                Ok(map) => render_factors(&map),
                Err(_) => n.to_string(),
            },
            RegisterValue::Factored(map) => render_factors(map),
        }
    }
}

fn render_factors(map: &BTreeMap<u64, u64>) -> String {
    if map.is_empty() {
        return "1".to_string();
    }
    map.iter()
        .map(|(p, e)| {
            if *e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for RegisterValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_natural())
    }
}

fn pow_u64(base: u64, exp: u64) -> Natural {
    // Exponents beyond u32 would overflow memory long before this point
    // for any realistic base, but square-and-multiply keeps it correct.
    let mut acc = Natural::one();
    let mut sq = Natural::from(base);
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// Decode a register as a pure power of two: `Some(k)` iff `r = 2^k`
/// (`k = 0` allowed), `None` otherwise.
pub fn decode_power_of_two(r: &RegisterValue) -> Option<u64> {
    match r {
        RegisterValue::Monolithic(n) => {
            if n.is_zero() || n.count_ones() != 1 {
                None
            } else {
                n.trailing_zeros()
            }
        }
        RegisterValue::Factored(map) => {
            if map.keys().any(|&p| p != 2) {
                None
            } else {
                Some(map.get(&2).copied().unwrap_or(0))
            }
        }
    }
}

/// Parse a start-register spec: either a decimal integer (digit grouping
/// `,`/`_` allowed) or a factored expression like `2^3*3^4*89`.
pub fn parse_register_spec(spec: &str) -> Result<RegisterValue, RegisterError> {
    let bad = |reason: &str| RegisterError::BadSpec {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    let cleaned: String = spec.chars().filter(|c| !matches!(c, ',' | '_')).collect();
    let cleaned = cleaned.trim();
    if cleaned.is_empty() {
        return Err(bad("empty"));
    }
    if cleaned.chars().all(|c| c.is_ascii_digit()) {
        let n: Natural = cleaned.parse().map_err(|_| bad("not a number"))?;
        return RegisterValue::from_natural(n);
    }
    let mut factors = Vec::new();
    for part in cleaned.split('*') {
        let part = part.trim();
        let (base, exp) = match part.split_once('^') {
            Some((b, e)) => (
                b.trim().parse::<u64>().map_err(|_| bad("bad base"))?,
                e.trim().parse::<u64>().map_err(|_| bad("bad exponent"))?,
            ),
            None => (part.parse::<u64>().map_err(|_| bad("bad factor"))?, 1),
        };
        factors.push((base, exp));
    }
    RegisterValue::from_factors(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_examples() {
        let m = |v: u64| RegisterValue::from_natural(Natural::from(v)).unwrap();
        assert_eq!(decode_power_of_two(&m(128)), Some(7));
        assert_eq!(decode_power_of_two(&m(1)), Some(0));
        assert_eq!(decode_power_of_two(&m(96)), None);
        assert_eq!(decode_power_of_two(&RegisterValue::one()), Some(0));
        let f = RegisterValue::from_factors([(2, 9)]).unwrap();
        assert_eq!(decode_power_of_two(&f), Some(9));
        let f = RegisterValue::from_factors([(2, 9), (3, 1)]).unwrap();
        assert_eq!(decode_power_of_two(&f), None);
    }

    #[test]
    fn spec_parsing() {
        let v = parse_register_spec("2^3*3^4*89").unwrap();
        assert_eq!(v.to_natural(), Natural::from(8u32 * 81 * 89));
        let v = parse_register_spec("648").unwrap();
        assert_eq!(v.to_natural(), Natural::from(648u32));
        let v = parse_register_spec("1_000,000").unwrap();
        assert_eq!(v.to_natural(), Natural::from(1_000_000u32));
        let v = parse_register_spec("89").unwrap();
        assert_eq!(v.to_natural(), Natural::from(89u32));
        assert!(parse_register_spec("0").is_err());
        assert!(parse_register_spec("2^3*6").is_err());
        assert!(parse_register_spec("").is_err());
        assert!(parse_register_spec("2^").is_err());
    }

    #[test]
    fn conversions_are_lossless() {
        let f = RegisterValue::from_factors([(2, 3), (3, 4), (89, 1)]).unwrap();
        let n = f.to_natural();
        let m = RegisterValue::from_natural(n.clone()).unwrap();
        assert_eq!(m.to_factors(&[2, 3, 89]).unwrap(), f.to_factors(&[]).unwrap());
        assert_eq!(f.display_factored(), "2^3*3^4*89");
        assert_eq!(
            parse_register_spec(&f.display_factored()).unwrap().to_natural(),
            n
        );
    }

    #[test]
    fn factored_drops_zero_exponents() {
        let f = RegisterValue::from_factors([(2, 0), (3, 2)]).unwrap();
        assert_eq!(f.to_factors(&[]).unwrap().len(), 1);
        assert!(RegisterValue::from_factors([(6, 1)]).is_err());
    }
}

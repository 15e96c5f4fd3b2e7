use std::collections::BTreeSet;
use std::fmt;

use num_traits::ToPrimitive;
use thiserror::Error;

use super::Fraction;
use crate::numerics::{factor_u64, Natural};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProgramError {
    #[error("a program needs at least one fraction")]
    Empty,
    #[error("fraction {index} ({value}) has a component too large to factor")]
    ComponentTooLarge { index: usize, value: String },
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ProgramParseError {
    pub line: usize,
    pub message: String,
}

/// A reducible fraction in a program. Harmless semantically, but usually a
/// transcription smell, so it is surfaced rather than silently normalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lint {
    pub index: usize,
    pub fraction: Fraction,
    pub reduced: Fraction,
}

impl fmt::Display for Lint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "fraction {} ({}) is reducible to {}",
            self.index, self.fraction, self.reduced
        )
    }
}

/// An ordered FRACTRAN program plus its prime basis: exactly the primes
/// dividing some numerator or denominator in the list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    name: String,
    fractions: Vec<Fraction>,
    prime_basis: BTreeSet<u64>,
}

impl Program {
    pub fn new(name: impl Into<String>, fractions: Vec<Fraction>) -> Result<Self, ProgramError> {
        if fractions.is_empty() {
            return Err(ProgramError::Empty);
        }
        let mut prime_basis = BTreeSet::new();
        for (index, f) in fractions.iter().enumerate() {
            for part in [f.num(), f.den()] {
                let small = part
                    .to_u64()
                    .ok_or_else(|| ProgramError::ComponentTooLarge {
                        index,
                        value: part.to_string(),
                    })?;
                for (p, _) in factor_u64(small) {
                    prime_basis.insert(p);
                }
            }
        }
        Ok(Self {
            name: name.into(),
            fractions,
            prime_basis,
        })
    }

    pub fn from_u64_pairs(
        name: impl Into<String>,
        pairs: &[(u64, u64)],
    ) -> Result<Self, ProgramError> {
        let fractions = pairs
            .iter()
            .map(|&(n, d)| Fraction::from_u64(n, d).expect("positive fraction"))
            .collect();
        Self::new(name, fractions)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn fractions(&self) -> &[Fraction] {
        &self.fractions
    }

    pub fn len(&self) -> usize {
        self.fractions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fractions.is_empty()
    }

    pub fn prime_basis(&self) -> &BTreeSet<u64> {
        &self.prime_basis
    }

    /// Reducible-fraction lints, in list order.
    pub fn lints(&self) -> Vec<Lint> {
        self.fractions
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_reduced())
            .map(|(index, f)| Lint {
                index,
                fraction: f.clone(),
                reduced: f.reduced(),
            })
            .collect()
    }

    /// Serialize to the program file format: one `NUM/DEN` per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.fractions {
            out.push_str(&f.to_string());
            out.push('\n');
        }
        out
    }
}

/// Parse the program file format: one fraction per line as `NUM/DEN`,
/// `#` comments, blank lines ignored, digit grouping (`,`/`_`) stripped.
pub fn parse_program(name: impl Into<String>, text: &str) -> Result<Program, ProgramParseError> {
    let mut fractions = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (num_s, den_s) = content.split_once('/').ok_or_else(|| ProgramParseError {
            line,
            message: format!("expected NUM/DEN, got {content:?}"),
        })?;
        let parse_nat = |s: &str| -> Result<Natural, ProgramParseError> {
            let cleaned: String = s
                .trim()
                .chars()
                .filter(|c| !matches!(c, ',' | '_'))
                .collect();
            cleaned.parse().map_err(|_| ProgramParseError {
                line,
                message: format!("bad integer {s:?}"),
            })
        };
        let num = parse_nat(num_s)?;
        let den = parse_nat(den_s)?;
        let fraction = Fraction::new(num, den).ok_or_else(|| ProgramParseError {
            line,
            message: "numerator and denominator must be positive".to_string(),
        })?;
        fractions.push(fraction);
    }
    Program::new(name, fractions).map_err(|e| ProgramParseError {
        line: 0,
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_basis() {
        let p = parse_program("t", "2/3\n# comment\n\n10/7 # inline\n").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(
            p.prime_basis().iter().copied().collect::<Vec<_>>(),
            vec![2, 3, 5, 7]
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_program("t", "2/3\nnot a fraction\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_program("t", "2/0\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_program("t", "# nothing\n").unwrap_err();
        assert!(e.message.contains("at least one"));
    }

    #[test]
    fn digit_grouping_stripped() {
        let p = parse_program("t", "227,123,851/466\n106_609/3611\n").unwrap();
        assert_eq!(p.fractions()[0].to_string(), "227123851/466");
        assert_eq!(p.fractions()[1].to_string(), "106609/3611");
    }

    #[test]
    fn serialization_roundtrips() {
        let p = parse_program("t", "2/3\n227,123,851/466\n1/1024\n").unwrap();
        let again = parse_program("t", &p.to_text()).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn lints_catch_reducible_entries() {
        let p = parse_program("t", "267/723\n2/3\n").unwrap();
        let lints = p.lints();
        assert_eq!(lints.len(), 1);
        assert_eq!(lints[0].index, 0);
        assert_eq!(lints[0].reduced, Fraction::from_u64(89, 241).unwrap());
    }
}

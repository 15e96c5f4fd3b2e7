//! `digits` subcommand: print digits 0..=n by one of the methods,
//! cross-checked against the reference generator.

use fractran::catalog::{self, CatalogName, DigitOutcome};
use fractran::numerics::{pi_digit_reference, sqrt2_digit_reference};
use fractran::oracles::{digit_certified, newton_digit, TruncationKind};
use fractran::vm::{Budget, EngineKind};

use crate::{EXIT_BUDGET_EXHAUSTED, EXIT_INPUT_ERROR, EXIT_OK, EXIT_VERIFICATION_FAILED};

pub fn cmd_digits(constant: &str, method: &str, n: u32, budget: u128) -> u8 {
    let reference: fn(u32) -> u8 = match constant {
        "sqrt2" => sqrt2_digit_reference,
        "pi" => pi_digit_reference,
        other => {
            eprintln!("error: unknown constant {other:?} (expected sqrt2 or pi)");
            return EXIT_INPUT_ERROR;
        }
    };
    let mut digits = Vec::with_capacity(n as usize + 1);
    for i in 0..=n {
        let digit = match (constant, method) {
            ("sqrt2", "reference") | ("pi", "reference") => Ok(reference(i)),
            ("sqrt2", "catalan") => digit_certified(TruncationKind::CatalanSqrt2, i)
                .map(|c| c.digit)
                .map_err(|e| e.to_string()),
            ("pi", "wallis") => digit_certified(TruncationKind::WallisPi, i)
                .map(|c| c.digit)
                .map_err(|e| e.to_string()),
            ("sqrt2", "newton") => Ok(newton_digit(i)),
            ("sqrt2", "vm") | ("pi", "vm") => {
                let name = if constant == "pi" {
                    CatalogName::Pigame
                } else {
                    CatalogName::NrSqrt2Game
                };
                match catalog::digit_via_vm(
                    name,
                    u64::from(i),
                    EngineKind::Accelerated,
                    Budget {
                        max_steps: budget,
                        max_accel_steps: Some(10_000_000),
                    },
                ) {
                    Ok(DigitOutcome::Digit { digit, .. }) => Ok(digit),
                    Ok(DigitOutcome::BudgetExhausted { steps }) => {
                        eprintln!("digit {i}: budget exhausted after {steps} steps");
                        return EXIT_BUDGET_EXHAUSTED;
                    }
                    Ok(DigitOutcome::InvalidHalt { register, steps }) => {
                        Err(format!("invalid halt at {register} after {steps} steps"))
                    }
                    Err(e) => Err(e.to_string()),
                }
            }
            (c, m) => {
                eprintln!("error: method {m:?} does not apply to {c:?}");
                return EXIT_INPUT_ERROR;
            }
        };
        match digit {
            Ok(d) => {
                if d != reference(i) {
                    eprintln!(
                        "digit {i}: method {method} produced {d}, reference says {}",
                        reference(i)
                    );
                    return EXIT_VERIFICATION_FAILED;
                }
                digits.push(d.to_string());
            }
            Err(e) => {
                eprintln!("digit {i}: {e}");
                return EXIT_VERIFICATION_FAILED;
            }
        }
    }
    println!("{}", digits.join(" "));
    EXIT_OK
}

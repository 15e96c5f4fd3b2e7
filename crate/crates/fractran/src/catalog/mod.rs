//! The shipped program catalog.
//!
//! Four programs, stored verbatim in the program file format under
//! `programs/` and embedded at compile time:
//!
//! * **ADDGAME** — `{2/3}`; from `2^a·3^b` it halts at `2^(a+b)`.
//! * **PIGAME** — Conway's π digit machine. Started at `2^n·89` it halts
//!   at `2^d` where `d` is digit `n` of π. The start state includes the
//!   node prime 89: without it nothing in the list applies to a plain
//!   power of two (for `n < 10`) and the machine halts immediately on its
//!   own input.
//! * **SQRT2GAME** — the Catalan-product analogue for √2, started at
//!   `2^n·173`, halting at `2^d` with `d` digit `n` of √2.
//! * **NRSQRT2GAME** — √2 digits via Newton–Raphson, started at `2^n·89`.
//!
//! Digit-position runs of PIGAME and SQRT2GAME are tractable only for
//! `n = 0`: their first phase manufactures a truncation length that grows
//! like `2^(10^n)`, so `n ≥ 1` end-to-end runs exceed any budget. The
//! catalog therefore also exposes [`sqrt2game_phase2_state`], the
//! documented mid-program injection point at node 83, which lets the
//! later phases be exercised with a chosen truncation length.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

use crate::numerics::Natural;
use crate::vm::{
    decode_power_of_two, parse_program, run, Budget, EngineKind, Outcome, Program, RegisterValue,
    RunConfig, Status, VmError,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog program {0:?}")]
    UnknownName(String),
    #[error("phase-2 injection needs E ≡ 2 (mod 4) and E ≥ 6, got {0}")]
    BadTruncationLength(u64),
    #[error("{name} runs take a digit index, not ({a}, {b})")]
    WrongParameters { name: String, a: u64, b: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogName {
    Addgame,
    Pigame,
    Sqrt2Game,
    NrSqrt2Game,
}

impl CatalogName {
    pub const ALL: [CatalogName; 4] = [
        CatalogName::Addgame,
        CatalogName::Pigame,
        CatalogName::Sqrt2Game,
        CatalogName::NrSqrt2Game,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CatalogName::Addgame => "ADDGAME",
            CatalogName::Pigame => "PIGAME",
            CatalogName::Sqrt2Game => "SQRT2GAME",
            CatalogName::NrSqrt2Game => "NRSQRT2GAME",
        }
    }

    /// The digit constant this program computes, if any.
    pub fn constant(self) -> Option<&'static str> {
        match self {
            CatalogName::Addgame => None,
            CatalogName::Pigame => Some("pi"),
            CatalogName::Sqrt2Game | CatalogName::NrSqrt2Game => Some("sqrt2"),
        }
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CatalogName {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "ADDGAME" => Ok(CatalogName::Addgame),
            "PIGAME" => Ok(CatalogName::Pigame),
            "SQRT2GAME" => Ok(CatalogName::Sqrt2Game),
            "NRSQRT2GAME" => Ok(CatalogName::NrSqrt2Game),
            _ => Err(CatalogError::UnknownName(s.to_string())),
        }
    }
}

macro_rules! embedded_program {
    ($fn_name:ident, $name:expr, $file:expr) => {
        fn $fn_name() -> &'static Program {
            static CELL: OnceLock<Program> = OnceLock::new();
            CELL.get_or_init(|| {
                parse_program($name, include_str!($file)).expect("embedded program parses")
            })
        }
    };
}

embedded_program!(addgame, "ADDGAME", "../../programs/addgame.frac");
embedded_program!(pigame, "PIGAME", "../../programs/pigame.frac");
embedded_program!(sqrt2game, "SQRT2GAME", "../../programs/sqrt2game.frac");
embedded_program!(nrsqrt2game, "NRSQRT2GAME", "../../programs/nrsqrt2game.frac");

/// The catalog program with the given name.
pub fn program(name: CatalogName) -> &'static Program {
    match name {
        CatalogName::Addgame => addgame(),
        CatalogName::Pigame => pigame(),
        CatalogName::Sqrt2Game => sqrt2game(),
        CatalogName::NrSqrt2Game => nrsqrt2game(),
    }
}

/// Start state for a digit run: `2^n · (entry node prime)`.
///
/// ADDGAME has no digit semantics; use [`addgame_start`] instead.
pub fn start_state(name: CatalogName, n: u64) -> Result<RegisterValue, CatalogError> {
    let node = match name {
        CatalogName::Pigame | CatalogName::NrSqrt2Game => 89,
        CatalogName::Sqrt2Game => 173,
        CatalogName::Addgame => {
            return Err(CatalogError::WrongParameters {
                name: name.to_string(),
                a: n,
                b: 0,
            })
        }
    };
    Ok(RegisterValue::from_factors([(2, n), (node, 1)]).expect("valid factors"))
}

/// ADDGAME start state `2^a · 3^b`.
pub fn addgame_start(a: u64, b: u64) -> RegisterValue {
    RegisterValue::from_factors([(2, a), (3, b)]).expect("valid factors")
}

/// A SQRT2GAME state injected at node 83, where the first phase would have
/// left truncation length `E` and shift `10^n`.
#[derive(Debug, Clone)]
pub struct Phase2State {
    pub register: RegisterValue,
    pub e: u64,
    pub n: u32,
    /// Whether `E` is long enough for digit `n` (`E² > 8·10^(2n)`, the
    /// integer form of `2√2/E < 10⁻ⁿ`). A short `E` is allowed — negative
    /// testing needs it — but flagged.
    pub accuracy_satisfied: bool,
}

/// Build the node-83 injection state `83 · 3 · 5^E · 7^(10^n) · 59`.
///
/// `E` must be ≡ 2 (mod 4) and ≥ 6 or the Catalan truncation it feeds is
/// malformed; the accuracy precondition is reported, not enforced.
pub fn sqrt2game_phase2_state(e: u64, n: u32) -> Result<Phase2State, CatalogError> {
    if e % 4 != 2 || e < 6 {
        return Err(CatalogError::BadTruncationLength(e));
    }
    let shift = 10u64
        .checked_pow(n)
        .ok_or(CatalogError::BadTruncationLength(e))?;
    let register = RegisterValue::from_factors([(83, 1), (3, 1), (5, e), (7, shift), (59, 1)])
        .expect("valid factors");
    let accuracy_satisfied = {
        let e2 = Natural::from(e) * Natural::from(e);
        let bound = Natural::from(8u32) * crate::numerics::pow10(2 * n);
        e2 > bound
    };
    Ok(Phase2State {
        register,
        e,
        n,
        accuracy_satisfied,
    })
}

/// How a digit-producing VM run ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DigitOutcome {
    /// Halted at `2^digit`.
    Digit { digit: u8, steps: u128 },
    /// Ran out of budget; the machine may or may not halt eventually.
    BudgetExhausted { steps: u128 },
    /// Halted at a value that is not `2^d` for a digit `d` — always a
    /// verification failure, never silently accepted.
    InvalidHalt { register: String, steps: u128 },
}

/// Run a catalog digit program for digit `n` and decode the halt value.
pub fn digit_via_vm(
    name: CatalogName,
    n: u64,
    engine: EngineKind,
    budget: Budget,
) -> Result<DigitOutcome, CatalogError> {
    let start = start_state(name, n)?;
    let config = RunConfig::new(engine, budget);
    let outcome = run(program(name), &start, &config)
        .unwrap_or_else(|e| panic!("{name} digit run failed: {e}"));
    Ok(decode_digit_outcome(&outcome))
}

/// Decode a finished run into a [`DigitOutcome`].
pub fn decode_digit_outcome(outcome: &Outcome) -> DigitOutcome {
    match outcome.status {
        Status::BudgetExhausted => DigitOutcome::BudgetExhausted {
            steps: outcome.steps,
        },
        Status::Halted => match decode_power_of_two(&outcome.final_register) {
            Some(k) if k <= 9 => DigitOutcome::Digit {
                digit: k as u8,
                steps: outcome.steps,
            },
            _ => DigitOutcome::InvalidHalt {
                register: outcome.final_register.display_factored(),
                steps: outcome.steps,
            },
        },
    }
}

/// Convenience: a factored-engine budget run, as `digit_via_vm` but with
/// the raw [`Outcome`] preserved.
pub fn run_digit_program(
    name: CatalogName,
    n: u64,
    engine: EngineKind,
    budget: Budget,
) -> Result<(Outcome, DigitOutcome), CatalogError> {
    let start = start_state(name, n)?;
    let config = RunConfig::new(engine, budget);
    let outcome =
        run(program(name), &start, &config).map_err(|e| panic!("{name} run failed: {e}"));
    let outcome = outcome.unwrap();
    let digit = decode_digit_outcome(&outcome);
    Ok((outcome, digit))
}

/// Propagate VM errors for callers that want them (injection runs mostly).
pub fn run_from(
    name: CatalogName,
    start: &RegisterValue,
    config: &RunConfig,
) -> Result<Outcome, VmError> {
    run(program(name), start, config)
}

/// The documented register states of the first two multiply-accumulate
/// loops after a node-83 injection with truncation length `E` and shift
/// `10^n`, as ordered constellations for
/// [`find_state_sequence`](crate::vm::find_state_sequence).
///
/// Loop parts alternate an "up" half (i) and a "down" half (ii); after
/// them the working registers hold, in order:
///
/// ```text
/// I(i):   r11 = 10ⁿE          r5 = E    r23 = 1      r7 = 0   r59 = 0
/// I(ii):  r5  = E−2   r7 = E−2   r17 = E−1   r3 = 10ⁿE   r59 = E−1
/// II(i):  r11 = (E−2)²        r5 = E−2   r7 = 0   r23 = E−1
/// II(ii): r5 = E−4   r7 = 10ⁿE(E−4)   r17 = E−3   r3 = (E−2)²   r59 = (E−1)(E−3)
/// ```
pub fn sqrt2game_loop_table(e: u64, n: u32) -> Vec<(&'static str, crate::vm::Constellation)> {
    let shift = 10u64.pow(n);
    vec![
        (
            "I(i)",
            vec![(11, shift * e), (5, e), (23, 1), (7, 0), (59, 0)],
        ),
        (
            "I(ii)",
            vec![
                (5, e - 2),
                (7, e - 2),
                (17, e - 1),
                (3, shift * e),
                (59, e - 1),
            ],
        ),
        (
            "II(i)",
            vec![(11, (e - 2) * (e - 2)), (5, e - 2), (7, 0), (23, e - 1)],
        ),
        (
            "II(ii)",
            vec![
                (5, e - 4),
                (7, shift * e * (e - 4)),
                (17, e - 3),
                (3, (e - 2) * (e - 2)),
                (59, (e - 1) * (e - 3)),
            ],
        ),
    ]
}

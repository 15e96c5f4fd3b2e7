//! The FRACTRAN virtual machine.
//!
//! A [`Program`] is an ordered, non-empty list of positive [`Fraction`]s.
//! One step multiplies the register by the first fraction that keeps it an
//! integer; the machine halts when none does. Halting is undecidable in
//! general, so every run carries a mandatory step budget and budget
//! exhaustion is an ordinary outcome, not an error.
//!
//! Three engines implement the same semantics:
//!
//! * **monolithic** — the register is a single unbounded integer and each
//!   step is a trial division. The slowest engine, but the most direct
//!   reading of the semantics; it serves as the reference in equivalence
//!   fuzzing.
//! * **factored** — the register is an exponent vector over a fixed prime
//!   basis (the primes of the program plus those of the start value). The
//!   basis is complete: numerators can only introduce basis primes, so no
//!   exponent outside it can ever become nonzero.
//! * **accelerated** — the factored engine plus loop compression: when the
//!   first applicable fraction would remain first for `m` consecutive
//!   steps, all `m` firings are applied at once, with `m` computed in
//!   closed form from exponent deficits. Reported step counts are always
//!   true underlying steps.
//!
//! Factored-engine exponents are stored as `u64`. That caps a register at
//! the astronomically large 2^(2^64); a program that climbs past the cap
//! gets an explicit [`VmError::ExponentOverflow`] rather than a wrong
//! answer. The monolithic engine has no such cap.

mod engine;
mod fraction;
pub mod fuzz;
mod inspect;
mod program;
mod register;

pub use engine::{
    run, step, AccelStep, Budget, EngineKind, FactoredExecution, MonolithicExecution, Outcome,
    PowerOfTwoEvent, RunConfig, Snapshot, Status, VmError,
};
pub use fraction::Fraction;
pub use inspect::{find_state_sequence, Constellation};
pub use program::{parse_program, Lint, Program, ProgramError, ProgramParseError};
pub use register::{decode_power_of_two, parse_register_spec, RegisterError, RegisterValue};

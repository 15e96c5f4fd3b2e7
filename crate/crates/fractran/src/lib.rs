//! An exact-arithmetic FRACTRAN toolkit.
//!
//! A FRACTRAN program is an ordered list of positive fractions. Execution
//! repeatedly multiplies a single positive-integer register by the first
//! fraction in the list that yields an integer, and halts when no fraction
//! does. The entire machine state lives in the prime factorization of the
//! register, which makes the language tiny and the arithmetic unforgiving:
//! everything here is exact, and no floating point participates in any
//! result that is checked or reported.
//!
//! The crate has five parts:
//!
//! * [`numerics`] — unbounded naturals, exact rationals, the ring ℚ\[√2\],
//!   integer square roots, and independent reference digit generators for
//!   √2 (via integer square roots) and π (via a fixed-point Machin
//!   formula).
//! * [`vm`] — the virtual machine: a monolithic big-integer engine, a
//!   factored exponent-vector engine, and a loop-accelerated engine that
//!   compresses runs of a single fraction, all with exact step accounting.
//! * [`compiler`] — a small flowchart DSL (nodes are primes, arrows carry
//!   fraction labels in priority order) and the emitter that converts a
//!   chart into a fraction list, plus an annotator that recovers node
//!   transitions from an existing list.
//! * [`catalog`] — the shipped programs: ADDGAME, PIGAME, SQRT2GAME and
//!   NRSQRT2GAME, with their start-state builders, halt decoders and
//!   mid-run injection states.
//! * [`oracles`] — exact implementations of the Wallis and Catalan product
//!   truncations, their bracketing and non-integrality checks, and the
//!   Newton–Raphson (Heron) iteration for √2, used as ground truth for
//!   the virtual machine.

pub mod catalog;
pub mod compiler;
pub mod numerics;
pub mod oracles;
pub mod vm;

//! Exact-arithmetic ground truth for everything the catalog programs
//! claim to compute.
//!
//! Two families of digit machinery live here, both float-free:
//!
//! * [`truncation`] — the Wallis product truncation for π and the Catalan
//!   product truncation for √2, as exact integer pairs `N_E/D_E`, with
//!   the bracketing inequalities, the minimal sufficient truncation
//!   length, digit extraction (materialized or certified streaming), and
//!   the non-integrality check that rules out the `0.999…` boundary
//!   hazard.
//! * [`newton`] — the Newton–Raphson (Heron) iteration `x₁ = 1`,
//!   `x_{k+1} = (x_k² + 2q_k²)/(2p_k q_k)`, with its exact one-step error
//!   identity, a contraction certificate, digit extraction, and the
//!   witnesses showing where the naive closed-form error chain fails
//!   while digit agreement still holds.
//!
//! Everything is checked against the independent references in
//! [`crate::numerics`] (integer square roots for √2, a Machin enclosure
//! for π).

pub mod newton;
pub mod report;
pub mod truncation;

pub use newton::{
    contraction_certified_range, epsilon_chain_witnesses, heron_contraction_check,
    heron_identity_holds_for, newton_digit, newton_iterate, ContractionCertificate,
    EpsilonChainRecord, HeronCheck, NewtonError, NewtonIterate,
};
pub use report::Record;
pub use truncation::{
    accuracy_certified, bracketing_check, catalan_truncation, digit_certified, minimal_e,
    minimal_e_u64, non_integrality_check, truncation_digit, truncation_digit_streaming,
    truncation_sweep, wallis_truncation, BracketingReport, CertifiedDigit, NonIntegralityReport,
    Truncation, TruncationError, TruncationKind,
};

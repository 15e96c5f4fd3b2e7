//! Deterministic random-case generation for engine-equivalence checks.
//!
//! Cases are small on purpose: up to 8 fractions over primes ≤ 13 and
//! starts below 2³⁰, stepped for a bounded number of true steps. Within
//! that envelope the monolithic, factored and accelerated engines must
//! agree exactly on final register, true step count and status.

use rand::Rng;

use super::{run, Budget, EngineKind, Fraction, Program, RegisterValue, RunConfig};
use crate::numerics::Natural;

pub const FUZZ_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

#[derive(Debug, Clone)]
pub struct FuzzCase {
    pub program: Program,
    pub start: Natural,
}

/// Draw a random program/start pair.
pub fn random_case(rng: &mut impl Rng) -> FuzzCase {
    let n_fractions = rng.gen_range(1..=8);
    let mut fractions = Vec::with_capacity(n_fractions);
    for _ in 0..n_fractions {
        let part = |rng: &mut dyn rand::RngCore| -> u64 {
            let mut v = 1u64;
            for p in FUZZ_PRIMES {
                if rng.gen_range(0..2) == 1 {
                    v *= p.pow(rng.gen_range(1..=3));
                }
            }
            v
        };
        fractions.push(Fraction::from_u64(part(rng), part(rng)).unwrap());
    }
    let start = Natural::from(rng.gen_range(1u64..=(1 << 30)));
    FuzzCase {
        program: Program::new("fuzz", fractions).unwrap(),
        start,
    }
}

/// Run all three engines for `max_steps` true steps and compare outcomes.
/// Returns a human-readable discrepancy report on failure.
pub fn check_engine_agreement(case: &FuzzCase, max_steps: u128) -> Result<(), String> {
    let start = RegisterValue::Monolithic(case.start.clone());
    let mut results = Vec::new();
    for engine in [
        EngineKind::Monolithic,
        EngineKind::Factored,
        EngineKind::Accelerated,
    ] {
        let config = RunConfig::new(engine, Budget::steps(max_steps));
        let outcome = run(&case.program, &start, &config)
            .map_err(|e| format!("{} engine error: {e} (case {case:?})", engine.name()))?;
        results.push((engine, outcome));
    }
    let (_, reference) = &results[0];
    let ref_final = reference.final_register.to_natural();
    for (engine, outcome) in &results[1..] {
        if outcome.status != reference.status
            || outcome.steps != reference.steps
            || outcome.final_register.to_natural() != ref_final
        {
            return Err(format!(
                "{} disagrees with monolithic: \
                 status {:?} vs {:?}, steps {} vs {}, final {} vs {} (case: program [{}] start {})",
                engine.name(),
                outcome.status,
                reference.status,
                outcome.steps,
                reference.steps,
                outcome.final_register.to_natural(),
                ref_final,
                case.program
                    .fractions()
                    .iter()
                    .map(|f| f.to_string())
                    .collect::<Vec<_>>()
                    .join(", "),
                case.start,
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn engines_agree_on_small_sample() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xF);
        for i in 0..500 {
            let case = random_case(&mut rng);
            if let Err(e) = check_engine_agreement(&case, 300) {
                panic!("case {i}: {e}");
            }
        }
    }
}

//! Step-level instrumentation helpers built on the factored engine.

use super::{FactoredExecution, Program, RegisterValue, VmError};

/// An expected register constellation: exact exponent values for a set of
/// primes (zeros included — a listed prime must be absent).
pub type Constellation = Vec<(u64, u64)>;

/// Walk the execution and find the first step at which each constellation
/// holds, in order: `expectations[i+1]` is only searched for after
/// `expectations[i]` was seen. Returns one `Option<step>` per
/// constellation; the walk stops at a halt, at `max_steps`, or once every
/// constellation is found.
pub fn find_state_sequence(
    program: &Program,
    start: &RegisterValue,
    expectations: &[Constellation],
    max_steps: u128,
) -> Result<Vec<Option<u128>>, VmError> {
    let mut exec = FactoredExecution::new(program, start)?;
    let mut found: Vec<Option<u128>> = vec![None; expectations.len()];
    let mut next = 0usize;
    let mut step: u128 = 0;
    loop {
        while next < expectations.len()
            && expectations[next]
                .iter()
                .all(|&(p, e)| exec.exponent(p) == e)
        {
            found[next] = Some(step);
            next += 1;
        }
        if next == expectations.len() || step == max_steps {
            break;
        }
        match exec.step_once()? {
            Some(_) => step += 1,
            None => break,
        }
    }
    Ok(found)
}

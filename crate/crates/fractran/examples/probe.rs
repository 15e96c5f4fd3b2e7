//! Scratch probe: node-prime discipline across catalog programs.

use fractran::catalog::{self, CatalogName};
use fractran::vm::FactoredExecution;

fn main() {
    for (name, n, max_steps) in [
        (CatalogName::Pigame, 0u64, 1_000_000u64),
        (CatalogName::Pigame, 1, 1_000_000),
        (CatalogName::Sqrt2Game, 0, 1_000_000),
        (CatalogName::NrSqrt2Game, 0, 1_000_000),
        (CatalogName::NrSqrt2Game, 1, 1_000_000),
    ] {
        let start = catalog::start_state(name, n).unwrap();
        let program = catalog::program(name);
        let mut exec = FactoredExecution::new(program, &start).unwrap();
        let big: Vec<u64> = program.prime_basis().iter().copied().filter(|&p| p >= 13).collect();
        // per-prime max exponent, max simultaneous big-prime count
        let mut max_exp = vec![0u64; big.len()];
        let mut max_simul = 0usize;
        let mut steps = 0u64;
        loop {
            let mut simul = 0;
            for (i, &p) in big.iter().enumerate() {
                let e = exec.exponent(p);
                if e > 0 {
                    simul += 1;
                    max_exp[i] = max_exp[i].max(e);
                }
            }
            max_simul = max_simul.max(simul);
            if steps >= max_steps || exec.step_once().unwrap().is_none() {
                break;
            }
            steps += 1;
        }
        let exceeding: Vec<(u64, u64)> = big
            .iter()
            .zip(&max_exp)
            .filter(|&(_, &e)| e > 1)
            .map(|(&p, &e)| (p, e))
            .collect();
        println!(
            "{name} n={n}: steps observed {steps}, max simultaneous primes>=13: {max_simul}, primes with exponent>1: {exceeding:?}"
        );
    }
}

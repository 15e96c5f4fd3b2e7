//! Direct flowchart interpretation, independent of the fraction emitter.
//!
//! The interpreter walks the chart itself: it keeps a current node and an
//! exact data value, fires the first arrow (in priority order) whose label
//! denominator divides the data, and halts when none does. Compiled
//! programs must reproduce this walk step for step — the interpreter never
//! looks at emitted fractions, which is what makes it a useful oracle for
//! the emitter.

use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

use super::Flowchart;
use crate::numerics::Natural;

/// One interpreter step: which node was entered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Visit {
    pub node: u64,
    pub data: Natural,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InterpStatus {
    Halted,
    OutOfBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpOutcome {
    pub status: InterpStatus,
    pub visits: Vec<Visit>,
    pub final_node: u64,
    pub final_data: Natural,
}

/// Run the chart from its start node with the given data value.
pub fn interpret(chart: &Flowchart, data: Natural, max_steps: usize) -> InterpOutcome {
    let mut node = chart.start;
    let mut data = data;
    let mut visits = vec![Visit {
        node,
        data: data.clone(),
    }];
    for _ in 0..max_steps {
        let current = chart.node(node).expect("validated chart");
        let fired = current.arrows.iter().find_map(|arrow| {
            let (q, r) = data.div_rem(&arrow.label_den);
            if r.is_zero() {
                Some((arrow.target, q * &arrow.label_num))
            } else {
                None
            }
        });
        match fired {
            None => {
                return InterpOutcome {
                    status: InterpStatus::Halted,
                    final_node: node,
                    final_data: data.clone(),
                    visits,
                }
            }
            Some((target, next)) => {
                node = target;
                data = next;
                visits.push(Visit {
                    node,
                    data: data.clone(),
                });
            }
        }
    }
    InterpOutcome {
        status: InterpStatus::OutOfBudget,
        final_node: node,
        final_data: data.clone(),
        visits,
    }
}

/// Primes used for data parts of random charts; disjoint from the node
/// primes below so labels stay coprime to nodes.
pub const DATA_PRIMES: [u64; 4] = [2, 3, 5, 7];
pub const NODE_PRIMES: [u64; 7] = [11, 13, 17, 19, 23, 29, 31];

/// Draw a random multi-node chart: 2–4 nodes, up to 3 arrows each, labels
/// over [`DATA_PRIMES`].
pub fn random_chart(rng: &mut impl Rng) -> Flowchart {
    use super::{Arrow, Node};
    let n_nodes = rng.gen_range(2..=4);
    let primes: Vec<u64> = NODE_PRIMES[..n_nodes].to_vec();
    let label_part = |rng: &mut dyn rand::RngCore| -> Natural {
        let mut v = 1u64;
        for p in DATA_PRIMES {
            if rng.gen_range(0..2) == 1 {
                v *= p.pow(rng.gen_range(1..=2));
            }
        }
        Natural::from(v)
    };
    let nodes = primes
        .iter()
        .map(|&prime| {
            let n_arrows = rng.gen_range(1..=3);
            let arrows = (0..n_arrows)
                .map(|_| {
                    // No self-loops in the generated charts.
                    let mut target = primes[rng.gen_range(0..primes.len())];
                    while target == prime {
                        target = primes[rng.gen_range(0..primes.len())];
                    }
                    Arrow {
                        target,
                        label_num: label_part(rng),
                        label_den: label_part(rng),
                    }
                })
                .collect();
            Node { prime, arrows }
        })
        .collect();
    Flowchart {
        start: primes[0],
        nodes,
    }
}

/// Random data value over [`DATA_PRIMES`].
pub fn random_data(rng: &mut impl Rng) -> Natural {
    let mut v = 1u64;
    for p in DATA_PRIMES {
        v *= p.pow(rng.gen_range(0..=4));
    }
    Natural::from(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compiler::{compile, parse_flowchart};
    use crate::vm::{run, Budget, EngineKind, RegisterValue, RunConfig};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Simulation equivalence: the compiled program, started at
    /// `data · start_node`, visits the same nodes with the same data as
    /// the interpreter, and halts at the same state.
    fn check_simulation(chart: &Flowchart, data: Natural, max_steps: usize) {
        let compiled = compile(chart).unwrap();
        let oracle = interpret(chart, data.clone(), max_steps);
        let start =
            RegisterValue::from_natural(&data * Natural::from(chart.start)).unwrap();
        let mut config = RunConfig::new(
            EngineKind::Factored,
            Budget::steps(max_steps as u128),
        );
        config.trace_nodes = chart.node_primes().into_iter().collect();
        let vm_out = run(&compiled.program, &start, &config).unwrap();

        // Same halting behavior and same final state (node · data).
        match oracle.status {
            InterpStatus::Halted => {
                assert!(vm_out.halted());
                assert_eq!(
                    vm_out.final_register.to_natural(),
                    &oracle.final_data * Natural::from(oracle.final_node)
                );
                assert_eq!(vm_out.steps, (oracle.visits.len() - 1) as u128);
            }
            InterpStatus::OutOfBudget => {
                assert!(!vm_out.halted());
            }
        }

        // Same node visit sequence. The VM snapshots record node *entries*
        // (consecutive repeats collapse); dedup the oracle stream to match.
        let mut oracle_entries = Vec::new();
        for v in &oracle.visits {
            if oracle_entries.last() != Some(&v.node) {
                oracle_entries.push(v.node);
            }
        }
        let vm_entries: Vec<u64> = vm_out.snapshots.iter().map(|s| s.node).collect();
        assert_eq!(vm_entries, oracle_entries);
    }

    #[test]
    fn compiled_two_node_cycle_simulates() {
        let chart =
            parse_flowchart("start 5\nnode 5:\n  -> 7 * 1/1\nnode 7:\n  -> 5 * 3/2\n").unwrap();
        check_simulation(&chart, Natural::from(16u32), 200);
    }

    #[test]
    fn random_charts_simulate() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let chart = random_chart(&mut rng);
            let data = random_data(&mut rng);
            check_simulation(&chart, data, 150);
        }
    }
}

//! `verify` subcommand: the oracle suites and the catalog VM checks, each
//! reporting line-oriented records and a pass/fail summary.

use fractran::catalog::{self, CatalogName, DigitOutcome};
use fractran::numerics::{pi_digit_reference, sqrt2_digit_reference};
use fractran::oracles::{
    bracketing_check, contraction_certified_range, digit_certified, epsilon_chain_witnesses,
    heron_contraction_check, newton_digit, non_integrality_check, truncation_sweep, Record,
    TruncationKind,
};
use fractran::vm::{find_state_sequence, fuzz, Budget, EngineKind, RunConfig};
use rand::SeedableRng;

use crate::{EXIT_BUDGET_EXHAUSTED, EXIT_INPUT_ERROR, EXIT_OK, EXIT_VERIFICATION_FAILED};

struct SuiteRun {
    records: Vec<Record>,
    attempt_exhausted: bool,
    show_all: bool,
}

impl SuiteRun {
    fn new(show_all: bool) -> Self {
        Self {
            records: Vec::new(),
            attempt_exhausted: false,
            show_all,
        }
    }

    fn push(&mut self, record: Record) {
        if self.show_all || !record.is_pass() {
            println!("{record}");
        }
        self.records.push(record);
    }

    fn finish(self, suite: &str) -> (bool, bool) {
        let failures = self.records.iter().filter(|r| !r.is_pass()).count();
        println!(
            "suite={suite} checks={} failures={failures} attempt_exhausted={}",
            self.records.len(),
            self.attempt_exhausted
        );
        (failures == 0, self.attempt_exhausted)
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_verify(
    suite: &str,
    max_e: u64,
    e: u64,
    n: u32,
    max_k: u64,
    budget: u128,
    cases: u64,
    records: bool,
) -> u8 {
    let suites: Vec<&str> = if suite == "all" {
        vec![
            "bracketing",
            "non-integrality",
            "contraction",
            "digit-agreement",
            "vm-addgame",
            "vm-sqrt2game-injected",
            "vm-trace-tables",
            "vm-nrsqrt2game",
            "engine-fuzz",
        ]
    } else {
        vec![suite]
    };
    let mut all_pass = true;
    let mut any_exhausted = false;
    for s in suites {
        let mut run = SuiteRun::new(records);
        let ok = match s {
            "bracketing" => suite_bracketing(&mut run, max_e),
            "non-integrality" => suite_non_integrality(&mut run, max_e, if n == 0 { 40 } else { n }),
            "contraction" => suite_contraction(&mut run, max_k),
            "digit-agreement" => suite_digit_agreement(&mut run, n),
            "vm-addgame" => suite_vm_addgame(&mut run),
            "vm-sqrt2game-injected" => suite_injected(&mut run, e, n, budget),
            "vm-trace-tables" => suite_trace_tables(&mut run, if e == 10 { 30 } else { e }, n),
            "vm-sqrt2game-full" => suite_full(&mut run, CatalogName::Sqrt2Game, n, budget),
            "vm-pigame-full" => suite_full(&mut run, CatalogName::Pigame, n, budget),
            "vm-nrsqrt2game" => suite_nrsqrt2game(&mut run, n, budget),
            "engine-fuzz" => suite_engine_fuzz(&mut run, cases),
            other => {
                eprintln!("error: unknown suite {other:?}");
                return EXIT_INPUT_ERROR;
            }
        };
        if !ok {
            return EXIT_INPUT_ERROR;
        }
        let (pass, exhausted) = run.finish(s);
        all_pass &= pass;
        any_exhausted |= exhausted;
    }
    if !all_pass {
        EXIT_VERIFICATION_FAILED
    } else if any_exhausted {
        EXIT_BUDGET_EXHAUSTED
    } else {
        EXIT_OK
    }
}

fn suite_bracketing(run: &mut SuiteRun, max_e: u64) -> bool {
    for kind in [TruncationKind::CatalanSqrt2, TruncationKind::WallisPi] {
        for t in truncation_sweep(kind, max_e) {
            let r = bracketing_check(&t);
            run.push(
                Record::new("bracketing")
                    .field("kind", kind.name())
                    .field("E", t.e)
                    .field("upper", r.upper_holds)
                    .field("lower", r.lower_holds)
                    .pass(r.pass()),
            );
        }
    }
    true
}

fn suite_non_integrality(run: &mut SuiteRun, max_e: u64, max_n: u32) -> bool {
    for kind in [TruncationKind::CatalanSqrt2, TruncationKind::WallisPi] {
        for t in truncation_sweep(kind, max_e) {
            let mut pass = true;
            for n in 0..=max_n {
                pass &= non_integrality_check(&t, n).pass;
            }
            run.push(
                Record::new("non-integrality")
                    .field("kind", kind.name())
                    .field("E", t.e)
                    .field("max_n", max_n)
                    .pass(pass),
            );
        }
    }
    true
}

fn suite_contraction(run: &mut SuiteRun, max_k: u64) -> bool {
    let materialize_to = 18;
    for k in 1..=max_k.min(materialize_to) {
        let c = heron_contraction_check(k).expect("within cap");
        run.push(
            Record::new("contraction")
                .field("k", k)
                .field("identity", c.identity_holds)
                .field("x_ge_1", c.x_at_least_one)
                .field("mode", "materialized")
                .pass(c.pass()),
        );
    }
    let cert = contraction_certified_range(max_k, materialize_to);
    run.push(
        Record::new("contraction-certificate")
            .field("max_k", max_k)
            .field("materialized_through", cert.materialized_through)
            .field("identity_samples", cert.identity_samples)
            .pass(cert.certified()),
    );
    for rec in epsilon_chain_witnesses(6) {
        // The closed-form bound 2^(−3N) fails at small N; that is the
        // expected, documented outcome, so the record is informational.
        run.push(
            Record::new("epsilon-chain")
                .field("N", rec.n)
                .field("exceeds_2^-3N", rec.exceeds_closed_form)
                .pass(true),
        );
    }
    true
}

fn suite_digit_agreement(run: &mut SuiteRun, max_n: u32) -> bool {
    let trunc_max = if max_n == 0 { 6 } else { max_n.min(7) };
    let newton_max = if max_n == 0 { 200 } else { max_n.min(200) };
    for n in 0..=trunc_max {
        let c = digit_certified(TruncationKind::CatalanSqrt2, n).expect("feasible range");
        run.push(
            Record::new("digit-agreement")
                .field("method", "catalan")
                .field("n", n)
                .field("E", c.e)
                .field("digit", c.digit)
                .pass(c.digit == sqrt2_digit_reference(n)),
        );
        let c = digit_certified(TruncationKind::WallisPi, n).expect("feasible range");
        run.push(
            Record::new("digit-agreement")
                .field("method", "wallis")
                .field("n", n)
                .field("E", c.e)
                .field("digit", c.digit)
                .pass(c.digit == pi_digit_reference(n)),
        );
    }
    let mut newton_ok = true;
    for n in 0..=newton_max {
        newton_ok &= newton_digit(n) == sqrt2_digit_reference(n);
    }
    run.push(
        Record::new("digit-agreement")
            .field("method", "newton")
            .field("max_n", newton_max)
            .pass(newton_ok),
    );
    true
}

fn suite_vm_addgame(run: &mut SuiteRun) -> bool {
    let mut pass = true;
    for a in 0..=12u64 {
        for b in 0..=12u64 {
            let start = catalog::addgame_start(a, b);
            let config = RunConfig::new(EngineKind::Factored, Budget::steps(100));
            let out = catalog::run_from(CatalogName::Addgame, &start, &config).expect("small run");
            pass &= out.halted() && out.decoded_exponent() == Some(a + b);
        }
    }
    run.push(Record::new("vm-addgame").field("range", "a,b<=12").pass(pass));
    true
}

fn suite_injected(run: &mut SuiteRun, e: u64, n: u32, budget: u128) -> bool {
    let state = match catalog::sqrt2game_phase2_state(e, n) {
        Ok(s) => s,
        Err(err) => {
            eprintln!("error: {err}");
            return false;
        }
    };
    let config = RunConfig::new(EngineKind::Factored, Budget::steps(budget.min(10_000_000)));
    let out = catalog::run_from(CatalogName::Sqrt2Game, &state.register, &config)
        .expect("factored run");
    let expected = sqrt2_digit_reference(n);
    let got = catalog::decode_digit_outcome(&out);
    let pass = matches!(got, DigitOutcome::Digit { digit, .. } if digit == expected);
    run.push(
        Record::new("vm-sqrt2game-injected")
            .field("E", e)
            .field("n", n)
            .field("expected_digit", expected)
            .field("outcome", format!("{got:?}").replace(' ', ""))
            .pass(pass),
    );
    true
}

fn suite_trace_tables(run: &mut SuiteRun, e: u64, n: u32) -> bool {
    let state = match catalog::sqrt2game_phase2_state(e, n) {
        Ok(s) => s,
        Err(err) => {
            eprintln!("error: {err}");
            return false;
        }
    };
    let table = catalog::sqrt2game_loop_table(e, n);
    let expectations: Vec<_> = table.iter().map(|(_, c)| c.clone()).collect();
    let found = find_state_sequence(
        catalog::program(CatalogName::Sqrt2Game),
        &state.register,
        &expectations,
        10_000_000,
    )
    .expect("factored walk");
    for ((label, _), step) in table.iter().zip(&found) {
        run.push(
            Record::new("vm-trace-tables")
                .field("E", e)
                .field("n", n)
                .field("loop", label)
                .field("first_step", step.map_or("none".into(), |s| s.to_string()))
                .pass(step.is_some()),
        );
    }
    true
}

fn suite_full(run: &mut SuiteRun, name: CatalogName, n: u32, budget: u128) -> bool {
    let expected = match name {
        CatalogName::Pigame => pi_digit_reference(n),
        _ => sqrt2_digit_reference(n),
    };
    let b = Budget {
        max_steps: u128::MAX,
        max_accel_steps: Some(budget.min(u64::MAX as u128) as u64),
    };
    let got = catalog::digit_via_vm(name, u64::from(n), EngineKind::Accelerated, b)
        .expect("digit program");
    // Attempt-class: exhaustion is reported, not failed; a halt at the
    // wrong value is always a failure.
    let (pass, exhausted) = match &got {
        DigitOutcome::Digit { digit, .. } => (*digit == expected, false),
        DigitOutcome::BudgetExhausted { .. } => (true, true),
        DigitOutcome::InvalidHalt { .. } => (false, false),
    };
    run.attempt_exhausted |= exhausted;
    run.push(
        Record::new("vm-full")
            .field("program", name)
            .field("n", n)
            .field("expected_digit", expected)
            .field("outcome", format!("{got:?}").replace(' ', ""))
            .pass(pass),
    );
    true
}

fn suite_nrsqrt2game(run: &mut SuiteRun, max_n: u32, budget: u128) -> bool {
    for n in 0..=max_n {
        let expected = sqrt2_digit_reference(n);
        let got = catalog::digit_via_vm(
            CatalogName::NrSqrt2Game,
            u64::from(n),
            EngineKind::Factored,
            Budget::steps(budget),
        )
        .expect("digit program");
        let pass = matches!(&got, DigitOutcome::Digit { digit, .. } if *digit == expected);
        run.push(
            Record::new("vm-nrsqrt2game")
                .field("n", n)
                .field("expected_digit", expected)
                .field("outcome", format!("{got:?}").replace(' ', ""))
                .pass(pass),
        );
    }
    true
}

fn suite_engine_fuzz(run: &mut SuiteRun, cases: u64) -> bool {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xF2AC);
    let mut failures = 0u64;
    for _ in 0..cases {
        let case = fuzz::random_case(&mut rng);
        if let Err(e) = fuzz::check_engine_agreement(&case, 1_000) {
            failures += 1;
            println!("engine-fuzz discrepancy: {e}");
        }
    }
    run.push(
        Record::new("engine-fuzz")
            .field("cases", cases)
            .field("discrepancies", failures)
            .pass(failures == 0),
    );
    true
}

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use super::{decode_power_of_two, Fraction, Program, RegisterValue};
use crate::numerics::{factor_u64, Natural};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VmError {
    #[error("step budget must be positive")]
    ZeroBudget,
    #[error("register must be ≥ 1")]
    InvalidRegister,
    #[error("start register not factorable over the engine basis: {0}")]
    UnfactorableStart(String),
    #[error("fraction component {0} too large for the factored engine")]
    FractionTooLarge(String),
    #[error("exponent of prime {prime} exceeded engine capacity at step {step}")]
    ExponentOverflow { prime: u64, step: u128 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineKind {
    Monolithic,
    Factored,
    Accelerated,
}

impl EngineKind {
    pub fn name(self) -> &'static str {
        match self {
            EngineKind::Monolithic => "monolithic",
            EngineKind::Factored => "factored",
            EngineKind::Accelerated => "accelerated",
        }
    }
}

/// Mandatory execution budget. `max_steps` counts true machine steps on
/// every engine; `max_accel_steps` additionally caps compressed steps on
/// the accelerated engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_steps: u128,
    pub max_accel_steps: Option<u64>,
}

impl Budget {
    pub fn steps(max_steps: u128) -> Self {
        Self {
            max_steps,
            max_accel_steps: None,
        }
    }

    pub fn accelerated(max_accel_steps: u64) -> Self {
        Self {
            max_steps: u128::MAX,
            max_accel_steps: Some(max_accel_steps),
        }
    }

    fn validate(&self) -> Result<(), VmError> {
        if self.max_steps == 0 || self.max_accel_steps == Some(0) {
            Err(VmError::ZeroBudget)
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub engine: EngineKind,
    pub budget: Budget,
    /// Primes whose divisibility marks a traced node; a snapshot is taken
    /// each time the register *becomes* divisible by one of them.
    pub trace_nodes: Vec<u64>,
    /// Primes whose exponents are stored in snapshot payloads (defaults to
    /// the trace primes plus the program basis when empty).
    pub snapshot_primes: Vec<u64>,
    /// Hard caps so multi-million-step traces cannot exhaust memory.
    pub max_snapshots: usize,
    pub max_events: usize,
}

impl RunConfig {
    pub fn new(engine: EngineKind, budget: Budget) -> Self {
        Self {
            engine,
            budget,
            trace_nodes: Vec::new(),
            snapshot_primes: Vec::new(),
            max_snapshots: 100_000,
            max_events: 100_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Halted,
    BudgetExhausted,
}

/// A `(step, exponent)` record of the register being a pure power of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerOfTwoEvent {
    pub step: u128,
    pub exponent: u64,
}

/// Register snapshot taken when a traced node prime starts dividing the
/// register, restricted to the configured payload primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub step: u128,
    pub node: u64,
    pub registers: Vec<(u64, u64)>,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: Status,
    pub final_register: RegisterValue,
    pub steps: u128,
    /// Compressed step count; `None` on non-accelerated engines.
    pub accel_steps: Option<u64>,
    pub emitted: Vec<PowerOfTwoEvent>,
    pub snapshots: Vec<Snapshot>,
    /// True when an event/snapshot cap truncated the respective stream.
    pub truncated_trace: bool,
}

impl Outcome {
    pub fn halted(&self) -> bool {
        self.status == Status::Halted
    }

    /// The halt value decoded as a power of two, when applicable.
    pub fn decoded_exponent(&self) -> Option<u64> {
        decode_power_of_two(&self.final_register)
    }
}

/// One step of the defining semantics: `f_j · r` for the first fraction
/// with an integral product, or `None` at a halt state.
pub fn step(program: &Program, register: &Natural) -> Option<Natural> {
    assert!(!register.is_zero(), "register must be ≥ 1");
    for f in program.fractions() {
        let (q, r) = register.div_rem(f.den());
        if r.is_zero() {
            return Some(q * f.num());
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Monolithic engine
// ---------------------------------------------------------------------------

/// Step-by-step execution over a single unbounded integer register.
pub struct MonolithicExecution {
    fractions: Vec<(Natural, Natural)>,
    register: Natural,
}

impl MonolithicExecution {
    pub fn new(program: &Program, start: &RegisterValue) -> Result<Self, VmError> {
        let register = start.to_natural();
        if register.is_zero() {
            return Err(VmError::InvalidRegister);
        }
        Ok(Self {
            fractions: program
                .fractions()
                .iter()
                .map(|f| (f.num().clone(), f.den().clone()))
                .collect(),
            register,
        })
    }

    pub fn register(&self) -> &Natural {
        &self.register
    }

    /// True when no fraction applies to the current register.
    pub fn is_halted(&self) -> bool {
        self.fractions
            .iter()
            .all(|(_, den)| !(&self.register % den).is_zero())
    }

    /// Fire the first applicable fraction; returns its index, or `None`
    /// when halted.
    pub fn step_once(&mut self) -> Option<usize> {
        for (i, (num, den)) in self.fractions.iter().enumerate() {
            let (q, r) = self.register.div_rem(den);
            if r.is_zero() {
                self.register = q * num;
                debug_assert!(!self.register.is_zero());
                return Some(i);
            }
        }
        None
    }
}

// ---------------------------------------------------------------------------
// Factored engine
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
struct ExecFraction {
    /// Exponents the register must meet, sparse over basis indices.
    den: Vec<(u32, u32)>,
    /// Net exponent change when fired.
    delta: Vec<(u32, i64)>,
}

/// The result of one accelerated step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AccelStep {
    Halted,
    /// Fraction `index` fired `times` consecutive true steps.
    Fired { index: usize, times: u128 },
}

/// Step-by-step or accelerated execution over an exponent vector.
///
/// The basis is fixed at launch: program primes plus start-value primes.
/// Numerators can only introduce basis primes, so the vector is a complete
/// representation for the whole run.
pub struct FactoredExecution {
    basis: Vec<u64>,
    fractions: Vec<ExecFraction>,
    exps: Vec<u64>,
    /// Count of nonzero exponents at non-2 primes; zero means the register
    /// is a pure power of two.
    nonzero_non_two: usize,
    two_idx: Option<usize>,
    /// Scratch dense delta, used by the accelerated step.
    scratch: Vec<i64>,
}

impl FactoredExecution {
    pub fn new(program: &Program, start: &RegisterValue) -> Result<Self, VmError> {
        if matches!(start, RegisterValue::Monolithic(n) if n.is_zero()) {
            return Err(VmError::InvalidRegister);
        }
        let basis_hint: Vec<u64> = program.prime_basis().iter().copied().collect();
        let start_factors = start
            .to_factors(&basis_hint)
            .map_err(|e| VmError::UnfactorableStart(e.to_string()))?;
        let mut basis: Vec<u64> = basis_hint;
        for &p in start_factors.keys() {
            if !basis.contains(&p) {
                basis.push(p);
            }
        }
        basis.sort_unstable();
        let index_of = |p: u64| basis.binary_search(&p).expect("prime in basis") as u32;

        let mut fractions = Vec::with_capacity(program.len());
        for f in program.fractions() {
            fractions.push(compile_fraction(f, &index_of)?);
        }

        let mut exps = vec![0u64; basis.len()];
        for (&p, &e) in &start_factors {
            exps[index_of(p) as usize] = e;
        }
        let two_idx = basis.binary_search(&2).ok();
        let nonzero_non_two = exps
            .iter()
            .enumerate()
            .filter(|&(i, &e)| Some(i) != two_idx && e > 0)
            .count();
        Ok(Self {
            scratch: vec![0; basis.len()],
            basis,
            fractions,
            exps,
            nonzero_non_two,
            two_idx,
        })
    }

    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    /// Exponent of `prime` in the current register (0 for non-basis
    /// primes, which provably stay at 0).
    pub fn exponent(&self, prime: u64) -> u64 {
        match self.basis.binary_search(&prime) {
            Ok(i) => self.exps[i],
            Err(_) => 0,
        }
    }

    /// Nonzero `(prime, exponent)` pairs of the current register.
    pub fn exponents(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.basis
            .iter()
            .zip(&self.exps)
            .filter(|&(_, &e)| e > 0)
            .map(|(&p, &e)| (p, e))
    }

    pub fn register(&self) -> RegisterValue {
        RegisterValue::Factored(self.exponents().collect::<BTreeMap<_, _>>())
    }

    pub fn is_power_of_two(&self) -> bool {
        self.nonzero_non_two == 0
    }

    pub fn exponent_of_two(&self) -> u64 {
        self.two_idx.map_or(0, |i| self.exps[i])
    }

    fn first_applicable(&self) -> Option<usize> {
        'next: for (i, f) in self.fractions.iter().enumerate() {
            for &(idx, e) in &f.den {
                if self.exps[idx as usize] < u64::from(e) {
                    continue 'next;
                }
            }
            return Some(i);
        }
        None
    }

    fn apply(&mut self, index: usize, times: u128, step: u128) -> Result<(), VmError> {
        // self.fractions is not touched through &mut self below; split the
        // borrow by taking the delta out temporarily.
        let delta = std::mem::take(&mut self.fractions[index].delta);
        // A saturated conversion is safe: any nonzero delta scaled by more
        // than i128::MAX steps overflows the u64 exponent range anyway and
        // is caught below.
        let times_i = i128::try_from(times).unwrap_or(i128::MAX);
        let mut result = Ok(());
        for &(idx, d) in &delta {
            let idx = idx as usize;
            let old = self.exps[idx];
            let new = i128::from(d)
                .checked_mul(times_i)
                .and_then(|prod| prod.checked_add(i128::from(old)));
            let new = match new {
                Some(v) if (0..=i128::from(u64::MAX)).contains(&v) => v as u64,
                _ => {
                    result = Err(VmError::ExponentOverflow {
                        prime: self.basis[idx],
                        step,
                    });
                    break;
                }
            };
            self.exps[idx] = new;
            if Some(idx) != self.two_idx {
                match (old > 0, new > 0) {
                    (false, true) => self.nonzero_non_two += 1,
                    (true, false) => self.nonzero_non_two -= 1,
                    _ => {}
                }
            }
        }
        self.fractions[index].delta = delta;
        result
    }

    /// Fire the first applicable fraction once.
    pub fn step_once(&mut self) -> Result<Option<usize>, VmError> {
        match self.first_applicable() {
            None => Ok(None),
            Some(i) => {
                self.apply(i, 1, 0)?;
                Ok(Some(i))
            }
        }
    }

    /// One compressed step: fire the current first-applicable fraction as
    /// many consecutive times (up to `max_times`) as it provably remains
    /// the first applicable one.
    ///
    /// With the register evolving linearly as `exps + t·δ`, the fraction
    /// itself stays applicable for an initial interval of `t`, and each
    /// earlier fraction's applicability region is also an interval; the
    /// run length is cut at the earliest point either interval logic says
    /// the scan result would change.
    pub fn accelerated_step(&mut self, max_times: u128, step: u128) -> Result<AccelStep, VmError> {
        let j = match self.first_applicable() {
            None => return Ok(AccelStep::Halted),
            Some(j) => j,
        };
        debug_assert!(max_times >= 1);

        // Dense view of δ_j for O(1) lookups.
        for &(idx, d) in &self.fractions[j].delta {
            self.scratch[idx as usize] = d;
        }

        // How long does j itself stay applicable? Binding constraints come
        // only from strictly decreasing exponents.
        let mut m: u128 = max_times;
        for &(idx, e) in &self.fractions[j].den {
            let d = self.scratch[idx as usize];
            if d < 0 {
                let slack = self.exps[idx as usize] - u64::from(e); // ≥ 0: j applies now
                let t_max = u128::from(slack) / d.unsigned_abs() as u128;
                m = m.min(t_max + 1);
            }
        }

        // When does some earlier fraction become applicable?
        for f in &self.fractions[..j] {
            let mut lo: u128 = 0;
            let mut hi: u128 = u128::MAX;
            let mut never = false;
            for &(idx, e) in &f.den {
                let cur = self.exps[idx as usize];
                let need = u64::from(e);
                let d = self.scratch[idx as usize];
                if cur >= need {
                    if d < 0 {
                        let t_max = u128::from(cur - need) / d.unsigned_abs() as u128;
                        hi = hi.min(t_max);
                    }
                } else if d <= 0 {
                    never = true;
                    break;
                } else {
                    let deficit = u128::from(need - cur);
                    let du = d as u128;
                    lo = lo.max(deficit.div_ceil(du));
                }
            }
            if !never && lo <= hi {
                // At t = lo this earlier fraction applies, so j's run must
                // stop there. lo ≥ 1 because j was first at t = 0.
                debug_assert!(lo >= 1);
                m = m.min(lo);
            }
        }

        for &(idx, _) in &self.fractions[j].delta {
            self.scratch[idx as usize] = 0;
        }

        self.apply(j, m, step)?;
        Ok(AccelStep::Fired { index: j, times: m })
    }
}

fn compile_fraction(
    f: &Fraction,
    index_of: &impl Fn(u64) -> u32,
) -> Result<ExecFraction, VmError> {
    let factor = |n: &Natural| -> Result<Vec<(u64, u32)>, VmError> {
        let small = num_traits::ToPrimitive::to_u64(n)
            .ok_or_else(|| VmError::FractionTooLarge(n.to_string()))?;
        Ok(factor_u64(small))
    };
    let num = factor(f.num())?;
    let den = factor(f.den())?;
    let mut delta: BTreeMap<u32, i64> = BTreeMap::new();
    for &(p, e) in &num {
        *delta.entry(index_of(p)).or_insert(0) += i64::from(e);
    }
    let mut den_sparse = Vec::with_capacity(den.len());
    for &(p, e) in &den {
        let idx = index_of(p);
        *delta.entry(idx).or_insert(0) -= i64::from(e);
        den_sparse.push((idx, e));
    }
    delta.retain(|_, d| *d != 0);
    Ok(ExecFraction {
        den: den_sparse,
        delta: delta.into_iter().collect(),
    })
}

// ---------------------------------------------------------------------------
// Run drivers
// ---------------------------------------------------------------------------

struct TraceState {
    trace_nodes: Vec<u64>,
    was_divisible: Vec<bool>,
    snapshot_primes: Vec<u64>,
    emitted: Vec<PowerOfTwoEvent>,
    snapshots: Vec<Snapshot>,
    max_snapshots: usize,
    max_events: usize,
    truncated: bool,
}

impl TraceState {
    fn new(config: &RunConfig, program: &Program) -> Self {
        let snapshot_primes = if config.snapshot_primes.is_empty() {
            let mut v: Vec<u64> = program.prime_basis().iter().copied().collect();
            for &p in &config.trace_nodes {
                if !v.contains(&p) {
                    v.push(p);
                }
            }
            v.sort_unstable();
            v
        } else {
            config.snapshot_primes.clone()
        };
        Self {
            was_divisible: vec![false; config.trace_nodes.len()],
            trace_nodes: config.trace_nodes.clone(),
            snapshot_primes,
            emitted: Vec::new(),
            snapshots: Vec::new(),
            max_snapshots: config.max_snapshots,
            max_events: config.max_events,
            truncated: false,
        }
    }

    fn record_event(&mut self, step: u128, exponent: u64) {
        if self.emitted.len() < self.max_events {
            self.emitted.push(PowerOfTwoEvent { step, exponent });
        } else {
            self.truncated = true;
        }
    }

    fn record_node_entries(&mut self, step: u128, divisible: impl Fn(u64) -> bool, payload: &impl Fn(&[u64]) -> Vec<(u64, u64)>) {
        for i in 0..self.trace_nodes.len() {
            let node = self.trace_nodes[i];
            let now = divisible(node);
            if now && !self.was_divisible[i] {
                if self.snapshots.len() < self.max_snapshots {
                    let registers = payload(&self.snapshot_primes);
                    self.snapshots.push(Snapshot {
                        step,
                        node,
                        registers,
                    });
                } else {
                    self.truncated = true;
                }
            }
            self.was_divisible[i] = now;
        }
    }
}

/// Execute `program` from `start` under `config`. Dispatches to the
/// selected engine; results are deterministic and engine-independent up to
/// the documented trace compression of the accelerated engine.
pub fn run(program: &Program, start: &RegisterValue, config: &RunConfig) -> Result<Outcome, VmError> {
    config.budget.validate()?;
    match config.engine {
        EngineKind::Monolithic => run_monolithic(program, start, config),
        EngineKind::Factored => run_factored(program, start, config),
        EngineKind::Accelerated => run_accelerated_impl(program, start, config),
    }
}

fn run_monolithic(
    program: &Program,
    start: &RegisterValue,
    config: &RunConfig,
) -> Result<Outcome, VmError> {
    let mut exec = MonolithicExecution::new(program, start)?;
    let mut trace = TraceState::new(config, program);
    let mut steps: u128 = 0;
    let status = loop {
        observe_monolithic(&mut trace, steps, exec.register());
        if steps == config.budget.max_steps {
            break if exec.is_halted() {
                Status::Halted
            } else {
                Status::BudgetExhausted
            };
        }
        match exec.step_once() {
            None => break Status::Halted,
            Some(_) => steps += 1,
        }
    };
    Ok(Outcome {
        status,
        final_register: RegisterValue::Monolithic(exec.register().clone()),
        steps,
        accel_steps: None,
        emitted: trace.emitted,
        snapshots: trace.snapshots,
        truncated_trace: trace.truncated,
    })
}

fn observe_monolithic(trace: &mut TraceState, step: u128, register: &Natural) {
    if register.count_ones() == 1 {
        trace.record_event(step, register.trailing_zeros().unwrap_or(0));
    }
    if trace.trace_nodes.is_empty() {
        return;
    }
    let divisible = |p: u64| (register % p).is_zero();
    let payload = |primes: &[u64]| -> Vec<(u64, u64)> {
        primes
            .iter()
            .map(|&p| {
                let mut e = 0u64;
                let mut rest = register.clone();
                let pb = Natural::from(p);
                loop {
                    let (q, r) = rest.div_rem(&pb);
                    if r.is_zero() {
                        rest = q;
                        e += 1;
                    } else {
                        break;
                    }
                }
                (p, e)
            })
            .collect()
    };
    trace.record_node_entries(step, divisible, &payload);
}

fn run_factored(
    program: &Program,
    start: &RegisterValue,
    config: &RunConfig,
) -> Result<Outcome, VmError> {
    let mut exec = FactoredExecution::new(program, start)?;
    let mut trace = TraceState::new(config, program);
    let mut steps: u128 = 0;
    let status = loop {
        observe_factored(&mut trace, steps, &exec);
        match exec.first_applicable() {
            None => break Status::Halted,
            Some(j) => {
                if steps == config.budget.max_steps {
                    break Status::BudgetExhausted;
                }
                exec.apply(j, 1, steps)?;
                steps += 1;
            }
        }
    };
    Ok(Outcome {
        status,
        final_register: exec.register(),
        steps,
        accel_steps: None,
        emitted: trace.emitted,
        snapshots: trace.snapshots,
        truncated_trace: trace.truncated,
    })
}

fn run_accelerated_impl(
    program: &Program,
    start: &RegisterValue,
    config: &RunConfig,
) -> Result<Outcome, VmError> {
    let mut exec = FactoredExecution::new(program, start)?;
    let mut trace = TraceState::new(config, program);
    let mut steps: u128 = 0;
    let mut accel_steps: u64 = 0;
    let max_accel = config.budget.max_accel_steps.unwrap_or(u64::MAX);
    let status = loop {
        observe_factored(&mut trace, steps, &exec);
        if steps == config.budget.max_steps || accel_steps == max_accel {
            break if exec.first_applicable().is_none() {
                Status::Halted
            } else {
                Status::BudgetExhausted
            };
        }
        let remaining = config.budget.max_steps - steps;
        match exec.accelerated_step(remaining, steps)? {
            AccelStep::Halted => break Status::Halted,
            AccelStep::Fired { times, .. } => {
                steps += times;
                accel_steps += 1;
            }
        }
    };
    Ok(Outcome {
        status,
        final_register: exec.register(),
        steps,
        accel_steps: Some(accel_steps),
        emitted: trace.emitted,
        snapshots: trace.snapshots,
        truncated_trace: trace.truncated,
    })
}

fn observe_factored(trace: &mut TraceState, step: u128, exec: &FactoredExecution) {
    if exec.is_power_of_two() {
        trace.record_event(step, exec.exponent_of_two());
    }
    if trace.trace_nodes.is_empty() {
        return;
    }
    let divisible = |p: u64| exec.exponent(p) > 0;
    let payload = |primes: &[u64]| -> Vec<(u64, u64)> {
        primes.iter().map(|&p| (p, exec.exponent(p))).collect()
    };
    trace.record_node_entries(step, divisible, &payload);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vm::parse_register_spec;

    fn addgame() -> Program {
        Program::from_u64_pairs("ADDGAME", &[(2, 3)]).unwrap()
    }

    fn reg(spec: &str) -> RegisterValue {
        parse_register_spec(spec).unwrap()
    }

    #[test]
    fn step_applies_first_integral_fraction() {
        // 2/3 on 2³·3⁴ redistributes one exponent.
        let next = step(&addgame(), &reg("2^3*3^4").to_natural()).unwrap();
        assert_eq!(next, reg("2^4*3^3").to_natural());
        // 2/3 on 2⁷ has no integral product.
        assert_eq!(step(&addgame(), &reg("2^7").to_natural()), None);
    }

    #[test]
    fn addgame_adds_exponents() {
        for engine in [
            EngineKind::Monolithic,
            EngineKind::Factored,
            EngineKind::Accelerated,
        ] {
            let config = RunConfig::new(engine, Budget::steps(1_000));
            let outcome = run(&addgame(), &reg("648"), &config).unwrap();
            assert_eq!(outcome.status, Status::Halted, "{}", engine.name());
            assert_eq!(outcome.final_register.to_natural(), reg("128").to_natural());
            assert_eq!(outcome.steps, 4);
            assert_eq!(outcome.decoded_exponent(), Some(7));
        }
    }

    #[test]
    fn accelerated_compresses_single_fraction_loops() {
        let config = RunConfig::new(EngineKind::Accelerated, Budget::steps(1 << 40));
        let outcome = run(&addgame(), &reg("3^1000"), &config).unwrap();
        assert_eq!(outcome.status, Status::Halted);
        assert_eq!(outcome.steps, 1000);
        assert_eq!(outcome.accel_steps, Some(1));
        assert_eq!(outcome.decoded_exponent(), Some(1000));
    }

    #[test]
    fn budget_zero_is_rejected_and_budget_one_halting_state_is_halted() {
        let config = RunConfig::new(EngineKind::Factored, Budget::steps(0));
        let err = run(&addgame(), &reg("128"), &config).unwrap_err();
        assert_eq!(err, VmError::ZeroBudget);
        for engine in [
            EngineKind::Monolithic,
            EngineKind::Factored,
            EngineKind::Accelerated,
        ] {
            let config = RunConfig::new(engine, Budget::steps(1));
            let outcome = run(&addgame(), &reg("128"), &config).unwrap();
            assert_eq!(outcome.status, Status::Halted);
            assert_eq!(outcome.steps, 0);
        }
    }

    #[test]
    fn budget_exhaustion_is_an_outcome() {
        for engine in [
            EngineKind::Monolithic,
            EngineKind::Factored,
            EngineKind::Accelerated,
        ] {
            let config = RunConfig::new(engine, Budget::steps(2));
            let outcome = run(&addgame(), &reg("3^10"), &config).unwrap();
            assert_eq!(outcome.status, Status::BudgetExhausted, "{}", engine.name());
            assert_eq!(outcome.steps, 2);
            assert_eq!(
                outcome.final_register.to_natural(),
                reg("2^2*3^8").to_natural()
            );
        }
    }

    #[test]
    fn halting_exactly_at_budget_reports_halted() {
        for engine in [
            EngineKind::Monolithic,
            EngineKind::Factored,
            EngineKind::Accelerated,
        ] {
            let config = RunConfig::new(engine, Budget::steps(4));
            let outcome = run(&addgame(), &reg("648"), &config).unwrap();
            assert_eq!(outcome.status, Status::Halted, "{}", engine.name());
            assert_eq!(outcome.steps, 4);
        }
    }

    #[test]
    fn power_of_two_events_are_streamed() {
        // 2/3 then 3/1: once the 3s are gone the second fraction refills
        // them, so the register revisits powers of two repeatedly.
        let p = Program::from_u64_pairs("osc", &[(2, 3), (3, 1)]).unwrap();
        let config = RunConfig::new(EngineKind::Factored, Budget::steps(7));
        let outcome = run(&p, &reg("3"), &config).unwrap();
        assert_eq!(outcome.status, Status::BudgetExhausted);
        // States: 3, 2, 2·3, 2², 2²·3, 2³, 2³·3, 2⁴ — events at steps 1, 3, 5, 7.
        let steps: Vec<u128> = outcome.emitted.iter().map(|e| e.step).collect();
        assert_eq!(steps, vec![1, 3, 5, 7]);
        let exps: Vec<u64> = outcome.emitted.iter().map(|e| e.exponent).collect();
        assert_eq!(exps, vec![1, 2, 3, 4]);
    }

    #[test]
    fn node_entry_snapshots() {
        // Walk 5 → 7 → 5 → 7 …: snapshot each time a node prime is entered.
        let p = Program::from_u64_pairs("walk", &[(7, 5), (5, 7)]).unwrap();
        let mut config = RunConfig::new(EngineKind::Factored, Budget::steps(4));
        config.trace_nodes = vec![5, 7];
        config.snapshot_primes = vec![5, 7];
        let outcome = run(&p, &reg("5"), &config).unwrap();
        let visits: Vec<(u128, u64)> = outcome.snapshots.iter().map(|s| (s.step, s.node)).collect();
        assert_eq!(visits, vec![(0, 5), (1, 7), (2, 5), (3, 7), (4, 5)]);
    }

    #[test]
    fn exponent_overflow_is_an_error_not_a_wrong_answer() {
        // 4/2 doubles the register every step; ~2⁶³ steps of it would be
        // needed to overflow, so drive it with the accelerated engine and
        // an enormous true-step budget.
        let p = Program::from_u64_pairs("grow", &[(4, 2)]).unwrap();
        let config = RunConfig::new(EngineKind::Accelerated, Budget::accelerated(100));
        let err = run(&p, &reg("2"), &config).unwrap_err();
        assert!(matches!(err, VmError::ExponentOverflow { prime: 2, .. }));
    }

    #[test]
    fn accelerated_run_stops_when_an_earlier_fraction_enables() {
        // Fraction 1 (5/9) needs two 3s; fraction 2 (3/2) feeds it one 3
        // per step. The 3/2 run must stop exactly when 3² accumulates.
        let p = Program::from_u64_pairs("enable", &[(5, 9), (3, 2)]).unwrap();
        let config = RunConfig::new(EngineKind::Accelerated, Budget::steps(1_000));
        let outcome = run(&p, &reg("2^10"), &config).unwrap();
        let plain = RunConfig::new(EngineKind::Factored, Budget::steps(1_000));
        let expect = run(&p, &reg("2^10"), &plain).unwrap();
        assert_eq!(outcome.status, expect.status);
        assert_eq!(outcome.steps, expect.steps);
        assert_eq!(
            outcome.final_register.to_natural(),
            expect.final_register.to_natural()
        );
        assert!(outcome.accel_steps.unwrap() < u64::try_from(expect.steps).unwrap());
    }

    #[test]
    fn identity_fraction_loops_forever_within_budget() {
        let p = Program::from_u64_pairs("spin", &[(6, 6)]).unwrap();
        let config = RunConfig::new(EngineKind::Accelerated, Budget::steps(1 << 20));
        let outcome = run(&p, &reg("6"), &config).unwrap();
        assert_eq!(outcome.status, Status::BudgetExhausted);
        assert_eq!(outcome.steps, 1 << 20);
        assert_eq!(outcome.final_register.to_natural(), reg("6").to_natural());
    }

    #[test]
    fn start_of_one_halts_addgame_at_exponent_zero() {
        let config = RunConfig::new(EngineKind::Factored, Budget::steps(10));
        let outcome = run(&addgame(), &RegisterValue::one(), &config).unwrap();
        assert_eq!(outcome.status, Status::Halted);
        assert_eq!(outcome.decoded_exponent(), Some(0));
    }
}

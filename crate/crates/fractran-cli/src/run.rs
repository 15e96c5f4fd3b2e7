//! `run`, `compile` and `export-catalog` subcommands.

use std::path::{Path, PathBuf};

use fractran::catalog::{self, CatalogName};
use fractran::compiler;
use fractran::vm::{
    parse_program, parse_register_spec, run, Budget, Program, RunConfig, Status,
};

use crate::{EngineArg, EXIT_BUDGET_EXHAUSTED, EXIT_INPUT_ERROR, EXIT_OK};

fn load_program(catalog_name: Option<String>, file: Option<PathBuf>) -> Result<Program, String> {
    match (catalog_name, file) {
        (Some(name), None) => {
            let name: CatalogName = name.parse().map_err(|e| format!("{e}"))?;
            Ok(catalog::program(name).clone())
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "program".to_string());
            parse_program(name, &text).map_err(|e| format!("{}: {e}", path.display()))
        }
        _ => Err("exactly one of --catalog or --file is required".to_string()),
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_run(
    catalog_name: Option<String>,
    file: Option<PathBuf>,
    start: &str,
    engine: EngineArg,
    budget: u128,
    accel_budget: u64,
    trace_nodes: Vec<u64>,
    snapshot_primes: Vec<u64>,
) -> u8 {
    let program = match load_program(catalog_name, file) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let start = match parse_register_spec(start) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    for lint in program.lints() {
        eprintln!("warning: {lint}");
    }
    let mut budget = Budget {
        max_steps: budget,
        max_accel_steps: None,
    };
    if engine == EngineArg::Accelerated {
        budget.max_accel_steps = Some(accel_budget);
    }
    let mut config = RunConfig::new(engine.kind(), budget);
    config.trace_nodes = trace_nodes;
    config.snapshot_primes = snapshot_primes;

    let outcome = match run(&program, &start, &config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };

    let factored = outcome.final_register.display_factored();
    let decimal = outcome.final_register.to_natural();
    let decimal = if decimal.to_string().len() <= 80 {
        decimal.to_string()
    } else {
        format!("({} decimal digits)", decimal.to_string().len())
    };
    println!("status: {:?}", outcome.status);
    println!("register: {decimal}");
    println!("register_factored: {factored}");
    println!("steps: {}", outcome.steps);
    if let Some(a) = outcome.accel_steps {
        println!("accelerated_steps: {a}");
    }
    if let Some(k) = outcome.decoded_exponent() {
        println!("power_of_two_exponent: {k}");
    }
    for event in &outcome.emitted {
        println!("emitted: step={} exponent={}", event.step, event.exponent);
    }
    for snap in &outcome.snapshots {
        let regs: Vec<String> = snap
            .registers
            .iter()
            .map(|(p, e)| format!("r{p}={e}"))
            .collect();
        println!("snapshot: step={} node={} {}", snap.step, snap.node, regs.join(" "));
    }
    if outcome.truncated_trace {
        eprintln!("warning: event/snapshot streams truncated by caps");
    }
    match outcome.status {
        Status::Halted => EXIT_OK,
        Status::BudgetExhausted => EXIT_BUDGET_EXHAUSTED,
    }
}

pub fn cmd_compile(input: &Path, output: &Path, provenance: Option<&Path>) -> u8 {
    let text = match std::fs::read_to_string(input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", input.display());
            return EXIT_INPUT_ERROR;
        }
    };
    let chart = match compiler::parse_flowchart(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", input.display());
            return EXIT_INPUT_ERROR;
        }
    };
    let compiled = match compiler::compile(&chart) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    if let Err(e) = std::fs::write(output, compiled.program.to_text()) {
        eprintln!("error: cannot write {}: {e}", output.display());
        return EXIT_INPUT_ERROR;
    }
    let prov_path = provenance
        .map(|p| p.to_path_buf())
        .unwrap_or_else(|| output.with_extension("prov"));
    let mut prov = String::new();
    for (i, p) in compiled.provenance.iter().enumerate() {
        prov.push_str(&format!("{i}\t{p}\n"));
    }
    if let Err(e) = std::fs::write(&prov_path, prov) {
        eprintln!("error: cannot write {}: {e}", prov_path.display());
        return EXIT_INPUT_ERROR;
    }
    println!("{} fractions -> {}", compiled.program.len(), output.display());
    EXIT_OK
}

pub fn cmd_export_catalog(name: &str, output: &Path) -> u8 {
    let name: CatalogName = match name.parse() {
        Ok(n) => n,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT_ERROR;
        }
    };
    let program = catalog::program(name);
    if let Err(e) = std::fs::write(output, program.to_text()) {
        eprintln!("error: cannot write {}: {e}", output.display());
        return EXIT_INPUT_ERROR;
    }
    println!("{} fractions -> {}", program.len(), output.display());
    EXIT_OK
}

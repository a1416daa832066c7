//! Experiment execution and artifact writing.

use crate::config::RunConfig;
use crate::CliError;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::time::Instant;
use wordevo::rng::labels;
use wordevo::{
    derive_seed, stream, GenerationStats, Grammar, LexiconSet, Scenario, VerificationReport,
};

/// Header of every per-scenario CSV; the six trailing columns hold the
/// best grammar's probabilities in canonical listing order.
pub const CSV_HEADER: &str =
    "generation,avg_distance,avg_entropy,best_distance,best_entropy,p_svo,p_sov,p_vso,p_vos,p_ovs,p_osv";

fn io_error(context: &str, path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{context} {}: {e}", path.display()))
}

/// Write via a temp file in the same directory, then rename into place.
fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let file_name = path
        .file_name()
        .ok_or_else(|| CliError::Io(format!("no file name in {}", path.display())))?;
    let tmp = path.with_file_name(format!("{}.tmp", file_name.to_string_lossy()));
    std::fs::write(&tmp, contents).map_err(|e| io_error("cannot write", &tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| io_error("cannot rename into", path, e))
}

fn to_pretty_json<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut bytes = serde_json::to_vec_pretty(value)
        .map_err(|e| CliError::Io(format!("cannot serialize: {e}")))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Fixed-width scientific float formatting: deterministic bytes and enough
/// digits to reconstruct every value exactly.
fn fmt_float(v: f64) -> String {
    format!("{v:.15e}")
}

fn render_csv(history: &[GenerationStats]) -> String {
    let mut csv = String::with_capacity(history.len() * 220);
    csv.push_str(CSV_HEADER);
    csv.push('\n');
    for row in history {
        csv.push_str(&row.generation.to_string());
        for value in [
            row.avg_distance,
            row.avg_entropy,
            row.best_distance,
            row.best_entropy,
        ] {
            csv.push(',');
            csv.push_str(&fmt_float(value));
        }
        for p in row.best_grammar.probabilities() {
            csv.push(',');
            csv.push_str(&fmt_float(*p));
        }
        csv.push('\n');
    }
    csv
}

#[derive(Serialize)]
struct BestGrammarEntry {
    scenario: &'static str,
    /// Probabilities in canonical listing order (see `orders`).
    probabilities: Grammar,
    max_order: &'static str,
    max_probability: f64,
    entropy: f64,
    best_distance: f64,
}

#[derive(Serialize)]
struct BestGrammarsFile {
    orders: [&'static str; 6],
    grammars: Vec<BestGrammarEntry>,
}

#[derive(Serialize)]
struct ScenarioSummary {
    scenario: &'static str,
    derived_seed: u64,
    csv: String,
    final_avg_distance: f64,
    final_avg_entropy: f64,
    final_best_distance: f64,
    final_best_entropy: f64,
    final_best_grammar: Grammar,
}

#[derive(Serialize)]
struct Summary<'a> {
    config: &'a RunConfig,
    master_seed: u64,
    scenarios: Vec<ScenarioSummary>,
    wall_clock_seconds: f64,
}

/// Seed for one scenario's experiment, derived from the master seed so the
/// scenarios in a suite differ only by their information structure.
pub fn scenario_seed(master_seed: u64, scenario: Scenario) -> u64 {
    derive_seed(master_seed, &[labels::SCENARIO, scenario as u64])
}

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    std::fs::create_dir_all(&config.out)
        .map_err(|e| io_error("cannot create output directory", &config.out, e))?;
    write_atomic(&config.out.join("config.json"), &to_pretty_json(config)?)?;

    match config.verify_resolution {
        Some(resolution) => run_verify(config, resolution),
        None => run_scenarios(config),
    }
}

fn run_verify(config: &RunConfig, resolution: u32) -> Result<(), CliError> {
    let report = wordevo::verify_theorem(resolution);
    write_atomic(
        &config.out.join("verification.json"),
        &to_pretty_json(&report)?,
    )?;
    print_verification(&report);
    if report.pass {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

fn print_verification(report: &VerificationReport) {
    for model in &report.models {
        let min = model
            .min_nonzero
            .map(|v| v.to_string())
            .unwrap_or_else(|| "none".to_string());
        println!(
            "verify[{}]: {} (zero set {} of {} grid points, min nonzero {})",
            model.model.label(),
            if model.pass { "PASS" } else { "FAIL" },
            model.zero_set.len(),
            model.grid_size,
            min,
        );
    }
}

fn run_scenarios(config: &RunConfig) -> Result<(), CliError> {
    let started = Instant::now();
    let mut summaries = Vec::new();
    let mut best_entries = Vec::new();

    for scenario in config.scenario.scenarios() {
        let seed = scenario_seed(config.seed, scenario);
        let params = config.evolution_params(scenario, seed);
        let history = wordevo::run_experiment(&params).map_err(|e| CliError::Config(e.to_string()))?;

        let csv_name = format!("{}.csv", scenario.label());
        write_atomic(&config.out.join(&csv_name), render_csv(&history).as_bytes())?;

        if config.emit_lexicons {
            emit_lexicons(config, scenario, &params)?;
        }

        let last = history.last().expect("at least one generation row");
        println!(
            "{}: {} generations -> {} (final avg distance {:.4}, avg entropy {:.4})",
            scenario.label(),
            history.len(),
            config.out.join(&csv_name).display(),
            last.avg_distance,
            last.avg_entropy,
        );
        best_entries.push(BestGrammarEntry {
            scenario: scenario.label(),
            probabilities: last.best_grammar.clone(),
            max_order: last.best_grammar.argmax_orders()[0].label(),
            max_probability: last.best_grammar.max_probability(),
            entropy: last.best_entropy,
            best_distance: last.best_distance,
        });
        summaries.push(ScenarioSummary {
            scenario: scenario.label(),
            derived_seed: seed,
            csv: csv_name,
            final_avg_distance: last.avg_distance,
            final_avg_entropy: last.avg_entropy,
            final_best_distance: last.best_distance,
            final_best_entropy: last.best_entropy,
            final_best_grammar: last.best_grammar.clone(),
        });
    }

    let best = BestGrammarsFile {
        orders: ["SVO", "SOV", "VSO", "VOS", "OVS", "OSV"],
        grammars: best_entries,
    };
    write_atomic(&config.out.join("best_grammars.json"), &to_pretty_json(&best)?)?;

    let summary = Summary {
        config,
        master_seed: config.seed,
        scenarios: summaries,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
    };
    write_atomic(&config.out.join("summary.json"), &to_pretty_json(&summary)?)?;
    Ok(())
}

fn emit_lexicons(
    config: &RunConfig,
    scenario: Scenario,
    params: &wordevo::EvolutionParams,
) -> Result<(), CliError> {
    // Same stream the experiment used, so the files match the run exactly.
    let mut rng = stream(params.master_seed, &[labels::LEXICON]);
    let lexicons = LexiconSet::generate(scenario, &params.lexicon, &mut rng)
        .map_err(|e| CliError::Config(e.to_string()))?;
    for lexicon in lexicons.lexicons() {
        let mut bytes = Vec::new();
        lexicon
            .write_text(&mut bytes)
            .map_err(|e| CliError::Io(format!("cannot render lexicon: {e}")))?;
        let name = match lexicons {
            LexiconSet::Unified(_) => format!("{}.lexicon.txt", scenario.label()),
            LexiconSet::Split { .. } => {
                format!("{}.{}s.txt", scenario.label(), lexicon.kind().label())
            }
        };
        write_atomic(&config.out.join(name), &bytes)?;
    }
    Ok(())
}

/// Stable output path for a scenario CSV (used by tests).
pub fn csv_path(out: &Path, scenario: Scenario) -> PathBuf {
    out.join(format!("{}.csv", scenario.label()))
}

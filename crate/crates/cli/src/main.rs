//! `swapdeon`: parsing, truth tables, model checking, bounded
//! countermodel search and proof verification for a family of
//! paraconsistent deontic logics.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use swapdeon::logics::RestrictionId;
use swapdeon::models::{check_valuation, load_model_as, truth_at};
use swapdeon::proofs::load_proof;
use swapdeon::search::{find_countermodel, SearchBounds, SearchError, Verdict};
use swapdeon::{Formula, LogicDescriptor};

const EXIT_OK: u8 = 0;
const EXIT_FOUND: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "swapdeon", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LogicArgs {
    /// Logic name: dmbc, dmbcciw, dmbcci, dbc, dci, dmbccl, dcila, c1d,
    /// cnd, cnd-strict
    #[arg(long)]
    logic: String,
    /// Hierarchy level for cnd/cnd-strict
    #[arg(long)]
    n: Option<u32>,
    /// Drop a valuation restriction (non-standard semantics); repeatable.
    /// Ids: cl, ca#, cao, cn-rest, cn-o-boo, strict-o
    #[arg(long = "disable-restriction", value_name = "ID")]
    disable: Vec<String>,
}

impl LogicArgs {
    fn resolve(&self) -> Result<LogicDescriptor, String> {
        let mut logic =
            swapdeon::get_logic(&self.logic, self.n).map_err(|e| e.to_string())?;
        for id in &self.disable {
            let rid = RestrictionId::parse(id)
                .ok_or_else(|| format!("unknown restriction id `{id}`"))?;
            logic = logic.without_restriction(rid).map_err(|e| e.to_string())?;
        }
        Ok(logic)
    }
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    logic: LogicArgs,
    /// Largest frame size to explore
    #[arg(long, default_value_t = 2)]
    max_worlds: usize,
    /// Time budget in milliseconds
    #[arg(long, default_value_t = 10_000)]
    timeout_ms: u64,
    /// Reproducible search returning the first countermodel in
    /// enumeration order
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    deterministic: bool,
    /// Emit machine-readable JSON including the model
    #[arg(long)]
    json: bool,
}

impl SearchArgs {
    fn bounds(&self) -> SearchBounds {
        SearchBounds {
            max_worlds: self.max_worlds,
            time_budget: Some(Duration::from_millis(self.timeout_ms)),
            deterministic: self.deterministic,
            ..Default::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print it back
    Parse {
        /// Logic whose signature and sugar to parse under (default dmbc)
        #[arg(long, default_value = "dmbc")]
        logic: String,
        #[arg(long)]
        n: Option<u32>,
        /// Fully parenthesized output
        #[arg(long)]
        full_parens: bool,
        #[arg(long)]
        json: bool,
        formula: String,
    },
    /// Print the nondeterministic truth tables of a logic
    Tables {
        #[command(flatten)]
        logic: LogicArgs,
        /// One of: and, or, imp, neg, circ (default: all defined)
        #[arg(long)]
        op: Option<String>,
    },
    /// List the axiom schemas of a logic in registry order
    Axioms {
        #[command(flatten)]
        logic: LogicArgs,
    },
    /// Check a model file against its logic's conditions
    CheckModel {
        file: PathBuf,
        #[arg(long = "disable-restriction", value_name = "ID")]
        disable: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a closure formula at a world of a model
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        world: String,
        #[arg(long)]
        json: bool,
        formula: String,
    },
    /// Search for a countermodel to a formula's validity
    Valid {
        #[command(flatten)]
        search: SearchArgs,
        formula: String,
    },
    /// Search for a countermodel to an entailment
    Entails {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long = "premise")]
        premises: Vec<String>,
        conclusion: String,
    },
    /// Alias of `entails` with flag-style conclusion
    Countermodel {
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long = "premise")]
        premises: Vec<String>,
        #[arg(long)]
        conclusion: String,
    },
    /// Verify a Hilbert derivation file
    VerifyProof {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Parse { logic, n, full_parens, json, formula } => {
            let started = Instant::now();
            let logic = swapdeon::get_logic(&logic, n).map_err(|e| e.to_string())?;
            let f = logic.parse(&formula).map_err(|e| e.to_string())?;
            let rendered = if full_parens { f.render_full() } else { f.render() };
            if json {
                println!(
                    "{}",
                    json!({
                        "verdict": "ok",
                        "formula": rendered,
                        "elapsed_ms": started.elapsed().as_millis() as u64,
                    })
                );
            } else {
                println!("{rendered}");
            }
            Ok(EXIT_OK)
        }
        Command::Tables { logic, op } => {
            let logic = logic.resolve()?;
            let ops: Vec<String> = match op {
                Some(op) => vec![op],
                None => {
                    let mut all = vec!["and".into(), "or".into(), "imp".into(), "neg".into()];
                    if logic.algebra().has_circ() {
                        all.push("circ".into());
                    }
                    all
                }
            };
            for (i, op) in ops.iter().enumerate() {
                let table = logic
                    .truth_table(op)
                    .ok_or_else(|| format!("operator `{op}` is not defined for {}", logic.display_name()))?;
                if i > 0 {
                    println!();
                }
                print!("{table}");
            }
            Ok(EXIT_OK)
        }
        Command::Axioms { logic } => {
            let logic = logic.resolve()?;
            for schema in logic.axiom_schemas() {
                println!("{:<8} {}", schema.id.as_str(), demo_instance(schema));
            }
            Ok(EXIT_OK)
        }
        Command::CheckModel { file, disable, json } => {
            let started = Instant::now();
            let bytes = read_file(&file)?;
            let bytes = unwrap_verdict_envelope(bytes)?;
            let logic = logic_of_model_bytes(&bytes, &disable)?;
            let model = load_model_as(logic, &bytes).map_err(|e| e.to_string())?;
            let violations = check_valuation(&model);
            nonstandard_note(model.logic());
            if json {
                let vs: Vec<serde_json::Value> = violations
                    .iter()
                    .map(|v| {
                        json!({
                            "world": v.world,
                            "formula": v.formula.render(),
                            "rule": v.rule,
                            "expected": v.expected,
                            "actual": v.actual,
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    json!({
                        "verdict": if vs.is_empty() { "ok" } else { "violations" },
                        "violations": vs,
                        "elapsed_ms": started.elapsed().as_millis() as u64,
                    })
                );
            } else if violations.is_empty() {
                println!("ok: model satisfies all conditions on its closure");
            } else {
                for v in &violations {
                    println!("{v}");
                }
            }
            Ok(if violations.is_empty() { EXIT_OK } else { EXIT_FOUND })
        }
        Command::Eval { model, world, json, formula } => {
            let started = Instant::now();
            let bytes = read_file(&model)?;
            let bytes = unwrap_verdict_envelope(bytes)?;
            let m = swapdeon::models::load_model(&bytes).map_err(|e| e.to_string())?;
            let violations = check_valuation(&m);
            if !violations.is_empty() {
                return Err(format!(
                    "model fails {} condition(s); run check-model for details",
                    violations.len()
                ));
            }
            let f = m.logic().parse(&formula).map_err(|e| e.to_string())?;
            let truth = truth_at(&m, &world, &f).map_err(|e| e.to_string())?;
            let label = m.label_of(&f, &world).map_err(|e| e.to_string())?;
            if json {
                println!(
                    "{}",
                    json!({
                        "verdict": "ok",
                        "value": label,
                        "designated": truth,
                        "elapsed_ms": started.elapsed().as_millis() as u64,
                    })
                );
            } else {
                println!("{} = {} ({})", f.render(), label, if truth { "true" } else { "false" });
            }
            Ok(EXIT_OK)
        }
        Command::Valid { search, formula } => {
            let logic = search.logic.resolve()?;
            let f = logic.parse(&formula).map_err(|e| e.to_string())?;
            run_search(&logic, &[], &f, &search)
        }
        Command::Entails { search, premises, conclusion } => {
            let logic = search.logic.resolve()?;
            let premises = parse_all(&logic, &premises)?;
            let conclusion = logic.parse(&conclusion).map_err(|e| e.to_string())?;
            run_search(&logic, &premises, &conclusion, &search)
        }
        Command::Countermodel { search, premises, conclusion } => {
            let logic = search.logic.resolve()?;
            let premises = parse_all(&logic, &premises)?;
            let conclusion = logic.parse(&conclusion).map_err(|e| e.to_string())?;
            run_search(&logic, &premises, &conclusion, &search)
        }
        Command::VerifyProof { file, json } => {
            let started = Instant::now();
            let bytes = read_file(&file)?;
            let proof = load_proof(&bytes).map_err(|e| e.to_string())?;
            match proof.verify() {
                Ok(()) => {
                    if json {
                        println!(
                            "{}",
                            json!({
                                "verdict": "ok",
                                "elapsed_ms": started.elapsed().as_millis() as u64,
                            })
                        );
                    } else {
                        println!("ok: derivation verifies");
                    }
                    Ok(EXIT_OK)
                }
                Err(failure) => {
                    if json {
                        println!(
                            "{}",
                            json!({
                                "verdict": "failed",
                                "reason": failure.to_string(),
                                "elapsed_ms": started.elapsed().as_millis() as u64,
                            })
                        );
                    } else {
                        println!("failed: {failure}");
                    }
                    Ok(EXIT_FOUND)
                }
            }
        }
    }
}

fn parse_all(logic: &LogicDescriptor, texts: &[String]) -> Result<Vec<Formula>, String> {
    texts.iter().map(|t| logic.parse(t).map_err(|e| format!("in `{t}`: {e}"))).collect()
}

fn read_file(path: &PathBuf) -> Result<Vec<u8>, String> {
    std::fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

/// `countermodel --json` wraps the model in a verdict object; accept
/// both that envelope and a bare model file.
fn unwrap_verdict_envelope(bytes: Vec<u8>) -> Result<Vec<u8>, String> {
    let value: serde_json::Value =
        serde_json::from_slice(&bytes).map_err(|e| format!("malformed JSON: {e}"))?;
    if value.get("verdict").is_some() {
        if let Some(model) = value.get("model") {
            return serde_json::to_vec(model).map_err(|e| e.to_string());
        }
        return Err("verdict envelope carries no model".into());
    }
    Ok(bytes)
}

fn logic_of_model_bytes(bytes: &[u8], disable: &[String]) -> Result<LogicDescriptor, String> {
    let value: serde_json::Value =
        serde_json::from_slice(bytes).map_err(|e| format!("malformed JSON: {e}"))?;
    let name = value
        .get("logic")
        .and_then(|v| v.as_str())
        .ok_or("model JSON lacks a `logic` key")?;
    let n = value.get("n").and_then(|v| v.as_u64()).map(|v| v as u32);
    let mut logic = swapdeon::get_logic(name, n).map_err(|e| e.to_string())?;
    for id in disable {
        let rid =
            RestrictionId::parse(id).ok_or_else(|| format!("unknown restriction id `{id}`"))?;
        logic = logic.without_restriction(rid).map_err(|e| e.to_string())?;
    }
    Ok(logic)
}

fn nonstandard_note(logic: &LogicDescriptor) {
    if !logic.disabled_restrictions().is_empty() {
        let ids: Vec<&str> =
            logic.disabled_restrictions().iter().map(|r| r.as_str()).collect();
        eprintln!(
            "note: non-standard semantics, restriction(s) disabled: {}",
            ids.join(", ")
        );
    }
}

fn run_search(
    logic: &LogicDescriptor,
    premises: &[Formula],
    conclusion: &Formula,
    args: &SearchArgs,
) -> Result<u8, String> {
    let started = Instant::now();
    nonstandard_note(logic);
    match find_countermodel(logic, premises, conclusion, &args.bounds()) {
        Ok(Verdict::Countermodel { model, world }) => {
            if args.json {
                println!(
                    "{}",
                    json!({
                        "verdict": "countermodel",
                        "world": world,
                        "model": model.to_json(),
                        "elapsed_ms": started.elapsed().as_millis() as u64,
                    })
                );
            } else {
                println!(
                    "countermodel found (certified on closure), witness world {world}:"
                );
                print_model_text(&model);
            }
            Ok(EXIT_FOUND)
        }
        Ok(Verdict::NoCounterexampleWithinBounds { frames_explored }) => {
            if args.json {
                println!(
                    "{}",
                    json!({
                        "verdict": "no-counterexample-within-bounds",
                        "frames_explored": frames_explored,
                        "max_worlds": args.max_worlds,
                        "elapsed_ms": started.elapsed().as_millis() as u64,
                    })
                );
            } else {
                println!(
                    "no counterexample within bounds ({} serial frames up to {} worlds); not a validity proof",
                    frames_explored, args.max_worlds
                );
            }
            Ok(EXIT_OK)
        }
        Err(SearchError::BudgetExhausted { frames_explored }) => {
            if args.json {
                println!(
                    "{}",
                    json!({
                        "verdict": "budget-exhausted",
                        "frames_explored": frames_explored,
                        "elapsed_ms": started.elapsed().as_millis() as u64,
                    })
                );
            } else {
                println!(
                    "time budget exhausted after {frames_explored} fully explored frames; verdict unknown"
                );
            }
            Ok(EXIT_BUDGET)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn print_model_text(model: &swapdeon::SwapKripkeModel) {
    let frame = model.frame();
    let edges: Vec<String> =
        frame.edges().iter().map(|(a, b)| format!("{a}->{b}")).collect();
    println!("  logic: {}", model.logic().display_name());
    println!("  worlds: {}", frame.worlds().join(", "));
    println!("  relation: {}", edges.join(", "));
    for w in frame.worlds() {
        let mut cells = Vec::new();
        for f in model.closure().formulas() {
            cells.push(format!("{} = {}", f.render(), model.label_of(f, w).unwrap()));
        }
        println!("  {w}: {}", cells.join("; "));
    }
}

/// A readable instance of the schema over fresh atoms, for listings.
fn demo_instance(schema: &swapdeon::logics::AxiomSchema) -> String {
    use swapdeon::logics::MetaVar;
    let mut subst = swapdeon::logics::Subst::new();
    subst.insert(MetaVar::Alpha, Formula::atom("a"));
    subst.insert(MetaVar::Beta, Formula::atom("b"));
    subst.insert(MetaVar::Gamma, Formula::atom("c"));
    swapdeon::logics::instantiate(schema, &subst)
        .map(|f| f.render())
        .unwrap_or_else(|_| "<unrenderable>".into())
}

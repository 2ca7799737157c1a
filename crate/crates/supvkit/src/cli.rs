//! The command-line surface: file-based pipelines over automaton
//! documents.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::alphabet::ObservationMask;
use crate::analysis::{
    classify_selfloops, find_tolerable_projections, run_harness, InstanceLimits, ProjectionOptions,
    SelfLoopClass,
};
use crate::automaton::{des_isomorphic, meet, sync, Automaton, IsoCheck};
use crate::dot::dot;
use crate::format::{parse, serialize, AutomatonDocument};
use crate::language::format_word;
use crate::observation::{
    inverse_project, is_normal, is_observable, is_relatively_observable, project, supconrobs,
    NormalityCheck, ObservabilityCheck, ObservabilityWitness, ObservationCondition,
};
use crate::reduction::supreduce;
use crate::synthesis::{compute_flags, supcon};

const EXIT_OK: u8 = 0;
const EXIT_PROPERTY_FAILS: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "supvkit",
    version,
    about = "Supervisory control toolkit: synthesis, reduction, and observation analysis of discrete-event systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Observation mask flags, shared by the observation-sensitive
/// subcommands. `--unobservable` and `--observable` are mutually
/// exclusive complement forms; with neither, every event is observable.
#[derive(Args, Debug)]
struct MaskArgs {
    /// Comma-separated labels of the unobservable events.
    #[arg(long, value_name = "LABELS")]
    unobservable: Option<String>,
    /// Comma-separated labels of the observable events (complement form).
    #[arg(long, value_name = "LABELS")]
    observable: Option<String>,
}

impl MaskArgs {
    fn to_mask(&self, automaton: &Automaton) -> Result<ObservationMask, CliError> {
        let alphabet = automaton.alphabet();
        match (&self.unobservable, &self.observable) {
            (Some(_), Some(_)) => Err(CliError::usage(
                "--unobservable and --observable are mutually exclusive",
            )),
            (Some(unobs), None) => ObservationMask::unobservable(alphabet, split_labels(unobs))
                .map_err(CliError::from_error),
            (None, Some(obs)) => ObservationMask::observable(alphabet, split_labels(obs))
                .map_err(CliError::from_error),
            (None, None) => Ok(ObservationMask::full(alphabet)),
        }
    }
}

fn split_labels(csv: &str) -> impl Iterator<Item = &str> {
    csv.split(',').map(str::trim).filter(|s| !s.is_empty())
}

#[derive(Subcommand)]
enum Command {
    /// Restrict an automaton to its reachable, co-reachable part.
    Trim {
        input: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Synchronous product of two automata.
    Sync {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Language intersection of two automata over one alphabet.
    Meet {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Synthesize the supremal controllable supervisor. A specification
    /// over a sub-alphabet is lifted by self-looping the missing events.
    Supcon {
        plant: PathBuf,
        spec: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Synthesize a controllable, relatively observable supervisor.
    Supconrobs {
        plant: PathBuf,
        spec: PathBuf,
        #[command(flatten)]
        mask: MaskArgs,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Reduce a supervisor against its plant.
    Supreduce {
        sup: PathBuf,
        plant: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Project an automaton onto its observable events.
    Project {
        input: PathBuf,
        #[command(flatten)]
        mask: MaskArgs,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Check observability of a supervisor.
    CheckObs {
        sup: PathBuf,
        plant: PathBuf,
        #[command(flatten)]
        mask: MaskArgs,
    },
    /// Check relative observability of a supervisor. The ambient
    /// defaults to the supervisor itself.
    CheckRobs {
        sup: PathBuf,
        plant: PathBuf,
        #[arg(long, value_name = "FILE")]
        ambient: Option<PathBuf>,
        #[command(flatten)]
        mask: MaskArgs,
    },
    /// Check normality of a supervisor.
    CheckNormal {
        sup: PathBuf,
        plant: PathBuf,
        #[command(flatten)]
        mask: MaskArgs,
    },
    /// Classify how each event occurs (self-loops only, everywhere,
    /// mixed, absent).
    ClassifySelfloops { input: PathBuf },
    /// Propose and validate tolerable observation restrictions.
    FindProjections {
        sup: PathBuf,
        plant: PathBuf,
        #[arg(long, value_name = "FILE")]
        ambient: Option<PathBuf>,
        /// Validate every subset of the self-loop-only events (budgeted;
        /// override the budget with SUPVKIT_BUDGET).
        #[arg(long)]
        exhaustive: bool,
    },
    /// Decide DES-isomorphism of two automata.
    Iso { a: PathBuf, b: PathBuf },
    /// Export an automaton as a Graphviz digraph.
    Dot {
        input: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Run the randomized verification harness.
    Harness {
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 6)]
        max_states: usize,
        #[arg(long, default_value_t = 4)]
        max_events: usize,
    },
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: &str) -> CliError {
        CliError {
            message: message.to_string(),
            code: EXIT_USAGE,
        }
    }

    fn from_error<E: std::fmt::Display>(e: E) -> CliError {
        CliError {
            message: e.to_string(),
            code: EXIT_USAGE,
        }
    }
}

fn load(path: &Path) -> Result<(AutomatonDocument, Automaton), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(&format!("cannot read {}: {e}", path.display())))?;
    let doc = parse(&text).map_err(|e| CliError::usage(&format!("{}: {e}", path.display())))?;
    let automaton = doc
        .to_automaton()
        .map_err(|e| CliError::usage(&format!("{}: {e}", path.display())))?;
    Ok((doc, automaton))
}

fn emit(doc: &AutomatonDocument, out: &Option<PathBuf>) -> Result<(), CliError> {
    let text = serialize(doc);
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::usage(&format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_text(text: &str, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::usage(&format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Lifts a specification over a sub-alphabet to the plant alphabet by
/// self-looping the missing events.
fn lift_spec(spec: &Automaton, plant: &Automaton) -> Result<Automaton, CliError> {
    if spec.alphabet() == plant.alphabet() {
        return Ok(spec.clone());
    }
    if spec.alphabet().is_subset_of(plant.alphabet()) {
        return Ok(inverse_project(spec, plant.alphabet()));
    }
    Err(CliError::usage(
        "specification alphabet is not a subset of the plant alphabet",
    ))
}

fn print_observation_witness(a: &Automaton, w: &ObservabilityWitness) {
    let alphabet = a.alphabet();
    println!("s  = {}", format_word(alphabet, &w.s));
    println!("s' = {}", format_word(alphabet, &w.s_prime));
    match w.condition {
        ObservationCondition::Continuation => {
            let event = w.event.expect("continuation witness carries an event");
            println!(
                "violation: {}·{} is allowed but {}·{} is not, though the plant permits it",
                format_word(alphabet, &w.s),
                alphabet.label(event),
                format_word(alphabet, &w.s_prime),
                alphabet.label(event),
            );
        }
        ObservationCondition::Marking => {
            println!("violation: marking is not decided consistently across the pair");
        }
    }
}

fn budget_from_env() -> u128 {
    std::env::var("SUPVKIT_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1 << 12)
}

fn class_word(class: SelfLoopClass) -> &'static str {
    match class {
        SelfLoopClass::SelfLoopOnly => "self-loop-only",
        SelfLoopClass::UniversalSelfLoop => "universal-self-loop",
        SelfLoopClass::Mixed => "mixed",
        SelfLoopClass::Absent => "absent",
    }
}

fn run_command(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Trim { input, out } => {
            let (doc, a) = load(&input)?;
            let trimmed = a.reachable_trim();
            emit(
                &AutomatonDocument::from_automaton(&format!("trim({})", doc.name), &trimmed),
                &out,
            )?;
            Ok(EXIT_OK)
        }
        Command::Sync { a, b, out } => {
            let (doc_a, aut_a) = load(&a)?;
            let (doc_b, aut_b) = load(&b)?;
            let product = sync(&aut_a, &aut_b).map_err(CliError::from_error)?;
            emit(
                &AutomatonDocument::from_automaton(
                    &format!("sync({},{})", doc_a.name, doc_b.name),
                    &product.automaton,
                ),
                &out,
            )?;
            Ok(EXIT_OK)
        }
        Command::Meet { a, b, out } => {
            let (doc_a, aut_a) = load(&a)?;
            let (doc_b, aut_b) = load(&b)?;
            let product = meet(&aut_a, &aut_b).map_err(CliError::from_error)?;
            emit(
                &AutomatonDocument::from_automaton(
                    &format!("meet({},{})", doc_a.name, doc_b.name),
                    &product.automaton,
                ),
                &out,
            )?;
            Ok(EXIT_OK)
        }
        Command::Supcon { plant, spec, out } => {
            let (doc_p, aut_p) = load(&plant)?;
            let (doc_s, aut_s) = load(&spec)?;
            let lifted = lift_spec(&aut_s, &aut_p)?;
            let sup = supcon(&aut_p, &lifted).map_err(CliError::from_error)?;
            eprintln!("supcon: {} states", sup.state_count());
            emit(
                &AutomatonDocument::from_supervisor(
                    &format!("supcon({},{})", doc_p.name, doc_s.name),
                    &sup,
                ),
                &out,
            )?;
            Ok(EXIT_OK)
        }
        Command::Supconrobs {
            plant,
            spec,
            mask,
            out,
        } => {
            let (doc_p, aut_p) = load(&plant)?;
            let (doc_s, aut_s) = load(&spec)?;
            let lifted = lift_spec(&aut_s, &aut_p)?;
            let mask = mask.to_mask(&aut_p)?;
            let sup = supconrobs(&aut_p, &lifted, &mask).map_err(CliError::from_error)?;
            eprintln!("supconrobs: {} states", sup.state_count());
            emit(
                &AutomatonDocument::from_supervisor(
                    &format!("supconrobs({},{})", doc_p.name, doc_s.name),
                    &sup,
                ),
                &out,
            )?;
            Ok(EXIT_OK)
        }
        Command::Supreduce { sup, plant, out } => {
            let (doc_s, aut_s) = load(&sup)?;
            let (_, aut_p) = load(&plant)?;
            let supervisor = compute_flags(&aut_s, &aut_p).map_err(CliError::from_error)?;
            let reduced = supreduce(&supervisor).map_err(CliError::from_error)?;
            eprintln!(
                "supreduce: {} -> {} states",
                supervisor.state_count(),
                reduced.automaton.state_count()
            );
            emit(
                &AutomatonDocument::from_reduced(&format!("supreduce({})", doc_s.name), &reduced),
                &out,
            )?;
            Ok(EXIT_OK)
        }
        Command::Project { input, mask, out } => {
            let (doc, a) = load(&input)?;
            let mask = mask.to_mask(&a)?;
            let projected = project(&a, &mask);
            emit(
                &AutomatonDocument::from_automaton(&format!("project({})", doc.name), &projected),
                &out,
            )?;
            Ok(EXIT_OK)
        }
        Command::CheckObs { sup, plant, mask } => {
            let (_, aut_s) = load(&sup)?;
            let (_, aut_p) = load(&plant)?;
            let mask = mask.to_mask(&aut_p)?;
            match is_observable(&aut_s, &aut_p, &mask).map_err(CliError::from_error)? {
                ObservabilityCheck::Observable => {
                    println!("observable");
                    Ok(EXIT_OK)
                }
                ObservabilityCheck::Violated(w) => {
                    println!("not observable");
                    print_observation_witness(&aut_s, &w);
                    Ok(EXIT_PROPERTY_FAILS)
                }
            }
        }
        Command::CheckRobs {
            sup,
            plant,
            ambient,
            mask,
        } => {
            let (_, aut_s) = load(&sup)?;
            let (_, aut_p) = load(&plant)?;
            let ambient = match ambient {
                Some(path) => load(&path)?.1,
                None => aut_s.clone(),
            };
            let mask = mask.to_mask(&aut_p)?;
            match is_relatively_observable(&aut_s, &ambient, &aut_p, &mask)
                .map_err(CliError::from_error)?
            {
                ObservabilityCheck::Observable => {
                    println!("relatively observable");
                    Ok(EXIT_OK)
                }
                ObservabilityCheck::Violated(w) => {
                    println!("not relatively observable");
                    print_observation_witness(&aut_s, &w);
                    Ok(EXIT_PROPERTY_FAILS)
                }
            }
        }
        Command::CheckNormal { sup, plant, mask } => {
            let (_, aut_s) = load(&sup)?;
            let (_, aut_p) = load(&plant)?;
            let mask = mask.to_mask(&aut_p)?;
            match is_normal(&aut_s, &aut_p, &mask).map_err(CliError::from_error)? {
                NormalityCheck::Normal => {
                    println!("normal");
                    Ok(EXIT_OK)
                }
                NormalityCheck::Violated { witness } => {
                    println!("not normal");
                    println!(
                        "witness = {} (in P\u{207b}\u{00b9}P(K\u{0304}) \u{2229} L(G) but not in K\u{0304})",
                        format_word(aut_s.alphabet(), &witness)
                    );
                    Ok(EXIT_PROPERTY_FAILS)
                }
            }
        }
        Command::ClassifySelfloops { input } => {
            let (_, a) = load(&input)?;
            let report = classify_selfloops(&a);
            for entry in &report.per_event {
                let label = a.alphabet().label(entry.event);
                let mut line = format!("event {label}: {}", class_word(entry.class));
                if !entry.self_loop_states.is_empty() {
                    line.push_str(&format!(
                        " loops at {}",
                        entry
                            .self_loop_states
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(",")
                    ));
                }
                if !entry.other_transitions.is_empty() {
                    line.push_str(&format!(
                        " moves {}",
                        entry
                            .other_transitions
                            .iter()
                            .map(|(s, t)| format!("{s}->{t}"))
                            .collect::<Vec<_>>()
                            .join(",")
                    ));
                }
                println!("{line}");
            }
            Ok(EXIT_OK)
        }
        Command::FindProjections {
            sup,
            plant,
            ambient,
            exhaustive,
        } => {
            let (_, aut_s) = load(&sup)?;
            let (_, aut_p) = load(&plant)?;
            let ambient = match ambient {
                Some(path) => load(&path)?.1,
                None => aut_s.clone(),
            };
            let supervisor = compute_flags(&aut_s, &aut_p).map_err(CliError::from_error)?;
            let options = ProjectionOptions {
                exhaustive,
                budget: budget_from_env(),
            };
            let verdicts = find_tolerable_projections(&supervisor, &aut_p, &ambient, &options)
                .map_err(CliError::from_error)?;
            let alphabet = aut_p.alphabet();
            for v in &verdicts {
                let hidden: Vec<&str> = v.unobservable.iter().map(|&e| alphabet.label(e)).collect();
                println!(
                    "unobservable=[{}] rel_obs={} normal={}",
                    hidden.join(","),
                    if v.rel_obs { "yes" } else { "no" },
                    if v.normal { "yes" } else { "no" },
                );
            }
            Ok(EXIT_OK)
        }
        Command::Iso { a, b } => {
            let (_, aut_a) = load(&a)?;
            let (_, aut_b) = load(&b)?;
            match des_isomorphic(&aut_a, &aut_b) {
                IsoCheck::Isomorphic { .. } => {
                    println!("isomorphic");
                    Ok(EXIT_OK)
                }
                IsoCheck::NotIsomorphic { witness } => {
                    println!("not isomorphic");
                    if let Some(w) = witness {
                        println!(
                            "distinguishing string: {}",
                            format_word(aut_a.alphabet(), &w)
                        );
                    }
                    Ok(EXIT_PROPERTY_FAILS)
                }
            }
        }
        Command::Dot { input, out } => {
            let (doc, a) = load(&input)?;
            emit_text(&dot(&a, &doc.name), &out)?;
            Ok(EXIT_OK)
        }
        Command::Harness {
            seeds,
            max_states,
            max_events,
        } => {
            let limits = InstanceLimits {
                max_states,
                max_events,
            };
            let summary = run_harness(0..seeds, &limits).map_err(CliError::from_error)?;
            for line in &summary.lines {
                println!("{line}");
            }
            println!(
                "summary: seeds={} nonempty={} failures={} consistency_checked={} normal_consistency_checked={} selfloops_checked={}",
                summary.seeds,
                summary.nonempty,
                summary.failures,
                summary.lookalike_checked,
                summary.normal_lookalike_checked,
                summary.selfloop_checked,
            );
            if summary.failures == 0 {
                Ok(EXIT_OK)
            } else {
                Ok(EXIT_PROPERTY_FAILS)
            }
        }
    }
}

/// Parses the process arguments, runs the selected command, and maps
/// the outcome to the exit-code contract (0 success / property holds,
/// 1 property fails, 2 usage or validation error).
pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // keep clap's rendered help/error text
            let _ = e.print();
            let code = if e.exit_code() == 0 {
                0
            } else {
                EXIT_USAGE as i32
            };
            return ExitCode::from(code as u8);
        }
    };
    match run_command(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}


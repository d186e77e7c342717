//! Thin command-line driver over the library: validate documents, run
//! the constructions, decide equivalences, and run the example suite.
//!
//! Exit status: 0 success, 1 negative verdict (violations found, not
//! equivalent, or a construction rejected its input), 2 usage or parse
//! errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use stackt::{
    actions_equivalent, check_equivalence, fixed_point_groupoid, parse_spec, quotient_groupoid,
    run_paper_suite, serialize_spec, strictify, torsor_quotient_groupoid, validate_action,
    validate_g_morphism, ActionEquivalence, Error, Payload, Report, SpecDocument,
};

#[derive(Parser)]
#[command(name = "stackt", version, about = "Finite groupoids under weak group actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Args)]
struct Common {
    /// Input document.
    #[arg(long)]
    input: PathBuf,
    /// Write the result document here.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Search cap; defaults to STACKT_BUDGET or 1000000.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Check every axiom instance of the document's subject.
    Validate(Common),
    /// Replace a weak action by an equivalent strict one.
    Strictify(Common),
    /// Compute the fixed-point groupoid of an action.
    FixedPoints(Common),
    /// Compute the quotient groupoid of an action.
    Quotient(Common),
    /// Materialize the torsor description of the quotient.
    TorsorQuotient(Common),
    /// Decide equivalence between the subjects of two documents.
    Equiv {
        #[command(flatten)]
        common: Common,
        /// Second document to compare against.
        #[arg(long)]
        against: PathBuf,
    },
    /// Run the executable example suite.
    PaperSuite {
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the rendered report here as well.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn default_budget(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("STACKT_BUDGET")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(1_000_000)
}

fn load(path: &Path) -> Result<SpecDocument, Error> {
    parse_spec(&std::fs::read_to_string(path)?)
}

fn load_action(path: &Path) -> Result<stackt::WeakAction, Error> {
    match load(path)?.payload {
        Payload::Action { action } => Ok(action),
        _ => Err(Error::Semantic {
            detail: format!("{} is not an action document", path.display()),
        }),
    }
}

/// Exit code for errors: malformed inputs are usage errors, everything
/// else is a negative verdict.
fn error_status(e: &Error) -> ExitCode {
    match e {
        Error::Parse { .. } | Error::Version { .. } | Error::Semantic { .. } | Error::Io(_) => {
            ExitCode::from(2)
        }
        _ => ExitCode::from(1),
    }
}

fn emit_document(doc: &SpecDocument, common: &Common, summary: &str) -> Result<(), Error> {
    let text = serialize_spec(doc);
    if let Some(path) = &common.output {
        std::fs::write(path, &text)?;
    }
    match common.format {
        Format::Text => println!("{summary}"),
        Format::Machine => print!("{text}"),
    }
    Ok(())
}

fn emit_report(report: &Report, format: Format) {
    match format {
        Format::Text => print!("{report}"),
        Format::Machine => {
            println!("{}", serde_json::to_string_pretty(report).expect("report serializes"))
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Validate(common) => {
            let doc = load(&common.input)?;
            let report = match &doc.payload {
                Payload::Group { group } => group.validate(),
                Payload::Groupoid { groupoid } => groupoid.validate(),
                Payload::Action { action } => validate_action(action),
                Payload::GMorphism { source, target, morphism } => {
                    let mut r = validate_action(source);
                    r.merge(validate_action(target));
                    if r.is_valid() {
                        r.merge(validate_g_morphism(source, morphism, target));
                    }
                    r
                }
            };
            emit_report(&report, common.format);
            Ok(if report.is_valid() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Strictify(common) => {
            let action = load_action(&common.input)?;
            let s = strictify(&action)?;
            let summary = format!(
                "strictified: {} objects, {} arrows, strict = {}",
                s.strict.space.objects,
                s.strict.space.arrows.len(),
                s.strict.is_strict()
            );
            emit_document(&SpecDocument::action(s.strict.clone()), &common, &summary)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::FixedPoints(common) => {
            let action = load_action(&common.input)?;
            let fp = fixed_point_groupoid(&action)?;
            let summary = format!(
                "fixed-point groupoid: {} objects, {} arrows",
                fp.groupoid.objects,
                fp.groupoid.arrows.len()
            );
            emit_document(&SpecDocument::groupoid(fp.groupoid.clone()), &common, &summary)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Quotient(common) => {
            let action = load_action(&common.input)?;
            let q = quotient_groupoid(&action)?;
            let summary = format!(
                "quotient groupoid: {} objects, {} arrows",
                q.space.objects,
                q.space.arrows.len()
            );
            emit_document(&SpecDocument::groupoid(q.space.clone()), &common, &summary)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::TorsorQuotient(common) => {
            let action = load_action(&common.input)?;
            let tq = torsor_quotient_groupoid(&action, default_budget(common.budget))?;
            let summary = format!(
                "torsor quotient: {} objects, {} arrows",
                tq.groupoid.objects,
                tq.groupoid.arrows.len()
            );
            emit_document(&SpecDocument::groupoid(tq.groupoid.clone()), &common, &summary)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Equiv { common, against } => {
            let budget = default_budget(common.budget);
            let left = load(&common.input)?;
            let right = load(&against)?;
            let (equivalent, witness) = match (&left.payload, &right.payload) {
                (Payload::Groupoid { groupoid: a }, Payload::Groupoid { groupoid: b }) => {
                    match check_equivalence(a, b, budget)? {
                        stackt::EquivalenceVerdict::Equivalent(f) => (true, Some(f)),
                        _ => (false, None),
                    }
                }
                (Payload::Action { action: a }, Payload::Action { action: b }) => {
                    match actions_equivalent(a, b, budget)? {
                        ActionEquivalence::Equivalent(m) => (true, Some(m.f)),
                        _ => (false, None),
                    }
                }
                _ => {
                    return Err(Error::Semantic {
                        detail: "equiv needs two groupoid documents or two action documents".into(),
                    })
                }
            };
            match common.format {
                Format::Text => match &witness {
                    Some(f) => println!("equivalent; witness object map {:?}", f.object_map),
                    None => println!("not equivalent"),
                },
                Format::Machine => println!(
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "equivalent": equivalent,
                        "witness": witness,
                    }))
                    .expect("verdict serializes")
                ),
            }
            Ok(if equivalent { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::PaperSuite { budget, format, output } => {
            let report = run_paper_suite(default_budget(budget));
            let rendered = match format {
                Format::Text => report.render_text(),
                Format::Machine => report.render_machine(),
            };
            if let Some(path) = output {
                std::fs::write(path, &rendered)?;
            }
            print!("{rendered}");
            Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            error_status(&e)
        }
    }
}

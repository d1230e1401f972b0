use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use monideal::classify::{classify, is_cm, is_scm, is_shellable_ideal, linear_quotients_decision};
use monideal::corpus::{self, CheckStatus};
use monideal::decomposition::{associated_primes, irreducible_decomposition};
use monideal::document::{parse_document, render_document, Body, IdealDocument};
use monideal::filtrations::{is_almost_clean, is_clean, is_pretty_clean};
use monideal::resolutions::{betti_table, polarize};
use monideal::shelling::{shellability, Refutation, Shellability, ShellingOptions};
use monideal::simplicial::alexander_dual_ideal;
use monideal::verdict::{Certificate, Decision, Route, Verdict};
use monideal::{is_generic, Budget, Error};
use serde_json::json;

const EXIT_USAGE: u8 = 1;
const EXIT_INCONSISTENCY: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;

/// Decide structural properties of monomial ideals.
///
/// FILE is a path, `-` for standard input, or `@name` for a bundled example
/// (see `monideal corpus --list`).
#[derive(Parser)]
#[command(name = "monideal", version)]
struct Cli {
    /// Field characteristic (0 or a prime); overrides the document.
    #[arg(long = "char", global = true, value_name = "P")]
    characteristic: Option<u32>,

    /// Wall-clock limit for searches; exhausted searches report "undecided".
    #[arg(long, global = true, value_name = "SECONDS")]
    time_budget: Option<f64>,

    /// Print filtrations, shelling orders and linear-quotient orders.
    #[arg(long, global = true)]
    certificate: bool,

    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report as JSON lines, one per input.
    Classify { files: Vec<String> },
    /// Alexander dual of a squarefree ideal.
    Dual { file: String },
    Radical { file: String },
    /// Irredundant irreducible decomposition.
    Decompose { file: String },
    /// Associated primes.
    Ass { file: String },
    /// Graded Betti numbers of the ideal.
    Betti { file: String },
    /// Polarization, printed as a document.
    Polarize { file: String },
    IsGeneric { file: String },
    IsCm { file: String },
    IsScm { file: String },
    IsClean { file: String },
    IsPrettyClean { file: String },
    IsAlmostClean { file: String },
    /// Shellability of the complex (or of the complex of a squarefree ideal).
    IsShellable {
        file: String,
        /// Skip the homological refutation and search every facet order.
        #[arg(long)]
        exhaustive: bool,
    },
    LinearQuotients { file: String },
    /// Run bundled examples against their expected verdicts.
    Corpus {
        names: Vec<String>,
        /// Only list the bundled examples.
        #[arg(long)]
        list: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Inconsistency(_)) {
            EXIT_INCONSISTENCY
        } else {
            EXIT_USAGE
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("monideal: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

impl Cli {
    fn budget(&self) -> Budget {
        self.time_budget.map_or(Budget::unlimited(), Budget::from_secs_f64)
    }

    fn load(&self, file: &str) -> Result<IdealDocument, Failure> {
        let text = if let Some(name) = file.strip_prefix('@') {
            corpus::find(name)
                .ok_or_else(|| usage(format!("no bundled example named `{name}`")))?
                .source
                .to_string()
        } else if file == "-" {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| usage(format!("stdin: {e}")))?;
            s
        } else {
            std::fs::read_to_string(file).map_err(|e| usage(format!("{file}: {e}")))?
        };
        let doc = parse_document(&text).map_err(|e| usage(format!("{file}: {e}")))?;
        match self.characteristic {
            Some(p) => Ok(doc.with_characteristic(p)?),
            None => Ok(doc),
        }
    }
}

fn usage(message: String) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message,
    }
}

fn print_list(cli: &Cli, key: &str, items: Vec<String>) {
    if cli.json {
        println!("{}", json!({ key: items }));
    } else {
        println!("{}", items.join(", "));
    }
}

fn print_decision(cli: &Cli, property: &str, mut d: Decision) -> Outcome {
    if !cli.certificate {
        d.certificate = None;
    }
    if cli.json {
        println!("{}", json!({ "property": property, "decision": d }));
    } else {
        println!("{}", d.verdict.as_str());
        if let Some(note) = &d.note {
            println!("# {note}");
        }
        if let Some(c) = &d.certificate {
            println!("# {} over {}", c.kind(), c.variables().join(", "));
            for item in c.items() {
                println!("{item}");
            }
        }
    }
    Ok(if d.verdict == Verdict::Undecided { EXIT_UNDECIDED } else { 0 })
}

fn run(cli: &Cli) -> Outcome {
    let budget = cli.budget();
    match &cli.command {
        Command::Classify { files } => {
            if files.is_empty() {
                return Err(usage("classify needs at least one file".into()));
            }
            let mut code = 0;
            for file in files {
                let doc = cli.load(file)?;
                let mut report = classify(&doc.ideal()?, &budget)?;
                if !cli.certificate {
                    for d in report.verdicts.values_mut() {
                        d.certificate = None;
                    }
                }
                if report.has_undecided() {
                    code = EXIT_UNDECIDED;
                }
                println!("{}", json!({ "label": doc.label, "report": report }));
            }
            Ok(code)
        }
        Command::Dual { file } => {
            let dual = alexander_dual_ideal(&cli.load(file)?.ideal()?)?;
            print_list(cli, "dual", dual.gen_strings());
            Ok(0)
        }
        Command::Radical { file } => {
            let rad = cli.load(file)?.ideal()?.radical();
            print_list(cli, "radical", rad.gen_strings());
            Ok(0)
        }
        Command::Decompose { file } => {
            let ideal = cli.load(file)?.ideal()?;
            let dec = irreducible_decomposition(&ideal)?;
            let comps: Vec<Vec<String>> = dec
                .components()
                .iter()
                .map(|c| c.to_ideal(ideal.ring()).gen_strings())
                .collect();
            if cli.json {
                println!("{}", json!({ "components": comps }));
            } else {
                for c in comps {
                    println!("({})", c.join(", "));
                }
            }
            Ok(0)
        }
        Command::Ass { file } => {
            let ideal = cli.load(file)?.ideal()?;
            let primes: Vec<String> = associated_primes(&ideal)?
                .iter()
                .map(|p| p.display(ideal.ring()).to_string())
                .collect();
            if cli.json {
                println!("{}", json!({ "associated_primes": primes }));
            } else {
                for p in primes {
                    println!("{p}");
                }
            }
            Ok(0)
        }
        Command::Betti { file } => {
            let table = betti_table(&cli.load(file)?.ideal()?)?;
            if cli.json {
                println!("{}", serde_json::to_string(&table).expect("serializable"));
            } else {
                for [i, j, b] in table.rows() {
                    println!("beta_{i},{j} = {b}");
                }
            }
            Ok(0)
        }
        Command::Polarize { file } => {
            let doc = cli.load(file)?;
            let pol = polarize(&doc.ideal()?)?;
            let out = IdealDocument {
                label: doc.label.map(|l| format!("{l} (polarized)")),
                ring: pol.ideal.ring().clone(),
                body: Body::Ideal(pol.ideal.clone()),
                expect: Default::default(),
                expect_dual: None,
                expect_radical: None,
                extended: false,
            };
            if cli.json {
                println!("{}", monideal::document::render_json(&out));
            } else {
                print!("{}", render_document(&out));
            }
            Ok(0)
        }
        Command::IsGeneric { file } => {
            let ideal = cli.load(file)?.ideal()?;
            let d = Decision {
                verdict: Verdict::from_option(Some(is_generic(&ideal)?)),
                routes: vec![Route::Definition],
                via_polarization: false,
                characteristic: ideal.ring().characteristic(),
                note: None,
                certificate: None,
            };
            print_decision(cli, "generic", d)
        }
        Command::IsCm { file } => print_decision(cli, "cohen_macaulay", is_cm(&cli.load(file)?.ideal()?)?),
        Command::IsScm { file } => print_decision(cli, "sequentially_cm", is_scm(&cli.load(file)?.ideal()?)?),
        Command::IsClean { file } => print_decision(cli, "clean", is_clean(&cli.load(file)?.ideal()?, &budget)?),
        Command::IsPrettyClean { file } => {
            print_decision(cli, "pretty_clean", is_pretty_clean(&cli.load(file)?.ideal()?, &budget)?)
        }
        Command::IsAlmostClean { file } => {
            print_decision(cli, "almost_clean", is_almost_clean(&cli.load(file)?.ideal()?, &budget)?)
        }
        Command::IsShellable { file, exhaustive } => {
            let doc = cli.load(file)?;
            if !*exhaustive {
                return print_decision(cli, "shellable", is_shellable_ideal(&doc.ideal()?, &budget)?);
            }
            let complex = doc.complex()?;
            let options = ShellingOptions {
                homological_prefilter: false,
                budget,
            };
            let s = shellability(&complex, &options)?;
            let d = Decision {
                verdict: Verdict::from_option(s.as_bool()),
                routes: vec![Route::ShellingSearch],
                via_polarization: false,
                characteristic: doc.ring.characteristic(),
                note: matches!(s, Shellability::NotShellable(Refutation::ExhaustiveSearch))
                    .then(|| "no facet order is a shelling".to_string()),
                certificate: match s {
                    Shellability::Shellable(order) => Some(Certificate::ShellingOrder {
                        ring: doc.ring.clone(),
                        facets: order,
                    }),
                    _ => None,
                },
            };
            print_decision(cli, "shellable", d)
        }
        Command::LinearQuotients { file } => print_decision(
            cli,
            "linear_quotients",
            linear_quotients_decision(&cli.load(file)?.ideal()?, &budget)?,
        ),
        Command::Corpus { names, list } => run_corpus(cli, names, *list, &budget),
    }
}

fn run_corpus(cli: &Cli, names: &[String], list: bool, budget: &Budget) -> Outcome {
    if list {
        for e in corpus::CORPUS {
            println!("{}", e.name);
        }
        return Ok(0);
    }
    let entries: Vec<&corpus::CorpusEntry> = if names.is_empty() {
        corpus::CORPUS.iter().collect()
    } else {
        names
            .iter()
            .map(|n| corpus::find(n).ok_or_else(|| usage(format!("no bundled example named `{n}`"))))
            .collect::<Result<_, _>>()?
    };
    let mut failed = false;
    let mut tolerated = false;
    for entry in entries {
        let mut doc = entry.document()?;
        if let Some(p) = cli.characteristic {
            doc = doc.with_characteristic(p)?;
        }
        let outcome = corpus::run_document(entry.name, &doc, budget)?;
        failed |= !outcome.passed();
        tolerated |= outcome.has_tolerated();
        if cli.json {
            println!("{}", serde_json::to_string(&outcome).expect("serializable"));
            continue;
        }
        let status = if !outcome.passed() {
            "FAIL"
        } else if outcome.has_tolerated() {
            "UNDECIDED"
        } else {
            "PASS"
        };
        println!("{status} {}", entry.name);
        for c in outcome.checks.iter().filter(|c| c.status != CheckStatus::Pass) {
            println!("  {}: expected {}, got {}", c.property, c.expected, c.actual);
        }
    }
    Ok(if failed {
        EXIT_INCONSISTENCY
    } else if tolerated {
        EXIT_UNDECIDED
    } else {
        0
    })
}

//! `crosssec`: batch driver for the built-in instances and user machines.
//!
//! Exit status 0 means the check passed (or a requested refutation was
//! found), 1 a failed check, 2 unreadable or malformed input.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use crosssec::lang::{load_machine, Et0lSystem, LanguageRep, Machine, Nfa};
use crosssec::separation::{
    build_sep_instance, builtin_k, extract_k, verify_sep_cross_section, InstanceDescriptor,
};
use crosssec::verify::builtins::{l_prop31, l_prop35};
use crosssec::verify::pipeline::{normalize_pipeline, shape_contained};
use crosssec::verify::refute::{refute_regular_cross_section, Budget, RefuteOutcome};
use crosssec::verify::{verify_with, EvalMap, VerificationReport, VerifyConfig};
use crosssec::{show_word, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Parser)]
#[command(name = "crosssec", version, about = "Cross-section verification for monoids built from actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone)]
struct Opts {
    /// Ball radius for coverage checks.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    radius: u64,
    /// Representatives are searched up to this length.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    search_len: u64,
    /// Collisions are searched among words up to this length.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    max_len: u64,
    /// Evaluation budget for the refuter.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    /// Prefix-closed regular cross-section of F[T] × ℤ.
    Prop31,
    /// One-counter cross-section of F[T].
    Prop35,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a built-in cross-section.
    VerifyBuiltin { instance: Builtin },
    /// Search for a certificate that an automaton is not a cross-section of F[T].
    Refute {
        #[arg(long)]
        nfa: PathBuf,
    },
    /// Run the normalization transducers on an automaton, or on random ones.
    Pipeline {
        #[arg(long, required_unless_present = "random")]
        nfa: Option<PathBuf>,
        /// Number of random candidates (uses --seed).
        #[arg(long, conflicts_with = "nfa")]
        random: Option<usize>,
    },
    /// List the words of an ET0L system (a file, builtin:l2 or builtin:l3).
    Et0l {
        #[arg(long)]
        system: String,
    },
    /// Build and verify the separation instance for K (a built-in name or a machine file).
    Separate {
        #[arg(long)]
        k: String,
    },
    /// Read K back from the cross-section of an instance descriptor.
    ExtractK {
        #[arg(long)]
        instance: PathBuf,
    },
}

/// Input problems; reported with exit status 2.
#[derive(Debug)]
struct InputError(anyhow::Error);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for InputError {}

fn input<T, E: Into<anyhow::Error>>(r: std::result::Result<T, E>, what: &Path) -> Result<T> {
    r.map_err(|e| InputError(e.into().context(what.display().to_string())).into())
}

fn read(path: &Path) -> Result<String> {
    input(std::fs::read_to_string(path), path)
}

fn read_machine(path: &Path) -> Result<Machine> {
    let text = read(path)?;
    input(load_machine(&text), path)
}

fn read_nfa(path: &Path) -> Result<Nfa> {
    match read_machine(path)? {
        Machine::Nfa(n) => Ok(n),
        other => Err(InputError(anyhow::anyhow!("{}: expected an nfa, found {}", path.display(), other.kind())).into()),
    }
}

fn config(o: &Opts) -> VerifyConfig {
    VerifyConfig::new(o.radius as usize, o.search_len as usize, o.max_len as usize)
}

fn emit_report(r: &VerificationReport, f: Format) {
    match f {
        Format::Text => print!("{}", r.to_text()),
        Format::Json => println!("{}", r.to_json()),
    }
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn words_json(ws: &BTreeSet<Word>) -> serde_json::Value {
    json!(ws.iter().collect::<Vec<_>>())
}

fn print_words(ws: &BTreeSet<Word>, f: Format) {
    match f {
        Format::Json => println!("{}", serde_json::to_string_pretty(&words_json(ws)).unwrap()),
        Format::Text => {
            for w in ws {
                println!("{}", if w.is_empty() { "ε".into() } else { show_word(w) });
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let o = &cli.opts;
    match cli.command {
        Command::VerifyBuiltin { instance } => {
            let (lang, report) = match instance {
                Builtin::Prop31 => {
                    let l = LanguageRep::Regular(l_prop31());
                    let r = verify_with(&l, &EvalMap::product(), &config(o))?;
                    (l, r)
                }
                Builtin::Prop35 => {
                    let l = LanguageRep::OneCounter(l_prop35());
                    let r = verify_with(&l, &EvalMap::ft(), &config(o))?;
                    (l, r)
                }
            };
            log::info!("verified {} language", lang.kind());
            emit_report(&report, o.format);
            Ok(status(report.passed()))
        }
        Command::Refute { nfa } => {
            let cand = read_nfa(&nfa)?;
            let mut budget = Budget { max_len: o.max_len as usize, radius: o.radius as usize, ..Budget::default() };
            if let Some(b) = o.budget {
                budget.evaluations = b;
            }
            let out = refute_regular_cross_section(&cand, &budget)?;
            match (o.format, &out) {
                (Format::Json, _) => println!("{}", serde_json::to_string_pretty(&out)?),
                (Format::Text, RefuteOutcome::Refuted(r)) => {
                    println!("refuted: {:?} at {}", r.kind, r.element);
                    println!("  [{}]", show_word(&r.w1));
                    if let Some(w2) = &r.w2 {
                        println!("  [{}]", show_word(w2));
                    }
                    if !r.conclusive {
                        println!("  (bounded: longer representatives may exist)");
                    }
                    for t in &r.trace {
                        println!("  trace: {t}");
                    }
                }
                (Format::Text, RefuteOutcome::NotFound { strategies, evaluations }) => {
                    println!("no certificate within {evaluations} evaluations");
                    for s in strategies {
                        println!("  tried: {s}");
                    }
                }
            }
            Ok(status(matches!(out, RefuteOutcome::Refuted(_))))
        }
        Command::Pipeline { nfa, random } => {
            let cands: Vec<(String, Nfa)> = match (nfa, random) {
                (Some(p), _) => vec![(p.display().to_string(), read_nfa(&p)?)],
                (None, Some(n)) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
                    (0..n).map(|i| (format!("random #{i}"), random_candidate(&mut rng))).collect()
                }
                (None, None) => bail!("pass --nfa or --random"),
            };
            let mut all_ok = true;
            let mut docs = Vec::new();
            for (name, cand) in cands {
                let stages = normalize_pipeline(&cand);
                let ok = shape_contained(&stages[3]);
                all_ok &= ok;
                let sample = stages[3].enumerate(o.max_len as usize);
                match o.format {
                    Format::Json => docs.push(json!({
                        "candidate": name,
                        "stage_states": stages.iter().map(|s| s.num_states()).collect::<Vec<_>>(),
                        "shape_contained": ok,
                        "last_stage_words": words_json(&sample),
                    })),
                    Format::Text => {
                        let sizes: Vec<String> = stages.iter().map(|s| s.num_states().to_string()).collect();
                        println!("{name}: stage sizes {}; shape contained: {ok}", sizes.join(", "));
                        for w in sample.iter().take(20) {
                            println!("  {}", show_word(w));
                        }
                    }
                }
            }
            if o.format == Format::Json {
                println!("{}", serde_json::to_string_pretty(&docs)?);
            }
            Ok(status(all_ok))
        }
        Command::Et0l { system } => {
            let sys = match system.as_str() {
                "builtin:l2" => Et0lSystem::l2(),
                "builtin:l3" => Et0lSystem::l3(),
                path => {
                    let p = Path::new(path);
                    match read_machine(p)? {
                        Machine::Et0l(e) => e,
                        other => bail!(InputError(anyhow::anyhow!("{path}: expected an et0l system, found {}", other.kind()))),
                    }
                }
            };
            let n = o.max_len as usize;
            // Nonterminals can vanish, so sentential forms get some room
            // beyond the word bound.
            let prune = n + sys.alphabet().len();
            print_words(&sys.generate(n, prune)?, o.format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Separate { k } => {
            let (b, lang) = match builtin_k(&k) {
                Ok(pair) => pair,
                Err(_) => {
                    let p = Path::new(&k);
                    let lang = match read_machine(p)? {
                        Machine::Nfa(n) => LanguageRep::Regular(n),
                        Machine::Et0l(e) => LanguageRep::et0l(e),
                        Machine::Ocm(m) => LanguageRep::OneCounter(m),
                        Machine::Gsm(_) => bail!(InputError(anyhow::anyhow!("{k}: a transducer is not a language"))),
                    };
                    (lang.alphabet(), lang)
                }
            };
            let inst = input(build_sep_instance(b, lang), Path::new(&k))?;
            let report = verify_sep_cross_section(&inst, &config(o))?;
            emit_report(&report, o.format);
            Ok(status(report.passed()))
        }
        Command::ExtractK { instance } => {
            let d = input(InstanceDescriptor::from_json(&read(&instance)?), &instance)?;
            let dir = instance.parent().unwrap_or(Path::new("."));
            let inst = input(d.instantiate(dir), &instance)?;
            print_words(&extract_k(&inst.l_k, o.max_len as usize), o.format);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn random_candidate(rng: &mut ChaCha8Rng) -> Nfa {
    let names = ["x", "y", "y'", "z", "z'", "p00", "Omega"];
    let alphabet = crosssec::syms(&names);
    let states = rng.gen_range(2..=5);
    let mut n = Nfa::new(alphabet.clone());
    for i in 0..states {
        n.add_state(format!("q{i}"));
    }
    n.set_initial(0);
    for s in 0..states {
        n.set_accepting(s, rng.gen_bool(0.4));
        for &a in &alphabet {
            for t in 0..states {
                if rng.gen_bool(0.12) {
                    n.add_transition(s, a, t);
                }
            }
        }
    }
    n
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

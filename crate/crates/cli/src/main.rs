use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use treestack::analysis::{check_cycle_free, uniform_visit_bound};
use treestack::automaton::split_word;
use treestack::compare::{check_word, Summary};
use treestack::constructions::automaton_for;
use treestack::document::{automaton_from_json, automaton_to_json, grammar_from_json, group_spec_from_json};
use treestack::oracle::{enumerate_named_words, GroupSpec};
use treestack::search::{find_accepting_run, search, Searcher, Strategy};
use treestack::{Automaton, SearchBudget, StorageKind, Verdict};

#[derive(Parser)]
#[command(name = "treestack", version, about = "Tree-stack automata and word-problem constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct BudgetFlags {
    /// Maximum number of configurations explored per word.
    #[arg(long, default_value_t = 1_000_000)]
    max_configs: usize,
    /// Maximum number of ε-moves between two letters.
    #[arg(long, default_value_t = 10_000)]
    max_eps: usize,
    /// Maximum summed stack height or pointer depth of stored configurations.
    #[arg(long, default_value_t = 20_000_000)]
    max_cells: usize,
}

impl BudgetFlags {
    fn budget(self) -> SearchBudget {
        SearchBudget {
            max_configurations: self.max_configs,
            max_eps_moves_between_letters: self.max_eps,
            max_storage_cells: self.max_cells,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether an automaton accepts a word.
    Accept {
        automaton: PathBuf,
        word: String,
        /// Print the accepting run, one step per line.
        #[arg(long)]
        trace: bool,
        /// Letter separator for multi-character letters.
        #[arg(long)]
        sep: Option<String>,
        #[command(flatten)]
        budget: BudgetFlags,
    },
    /// Build the word-problem automaton of a group spec.
    Construct {
        kind: Kind,
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Restriction bound of the component automata.
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Compare an automaton against the group oracle on many words.
    Compare {
        automaton: PathBuf,
        spec: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        /// Check this many random words of length at most `--max-len`.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        sep: Option<String>,
        #[command(flatten)]
        budget: BudgetFlags,
    },
    /// Report cycle-freeness and the uniform visit bound.
    Analyze {
        automaton: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Decide membership of a word in the language of a grammar.
    Mcfg {
        grammar: PathBuf,
        word: String,
        #[arg(long)]
        sep: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    FreeProduct,
    Amalgam,
    Hnn,
    Graph,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::FreeProduct => "free-product",
            Kind::Amalgam => "amalgam",
            Kind::Hnn => "hnn",
            Kind::Graph => "graph",
        }
    }

    fn matches(self, spec: &GroupSpec) -> bool {
        matches!(
            (self, spec),
            (Kind::FreeProduct, GroupSpec::FreeProduct(..))
                | (Kind::Amalgam, GroupSpec::Amalgam(..))
                | (Kind::Hnn, GroupSpec::Hnn { .. })
                | (Kind::Graph, GroupSpec::Graph(_))
        )
    }
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_automaton(path: &Path) -> Result<Automaton, Failure> {
    automaton_from_json(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_spec(path: &Path) -> Result<GroupSpec, Failure> {
    group_spec_from_json(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn show_word(w: &[String], sep: Option<&str>) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.join(sep.unwrap_or(""))
    }
}

fn cmd_accept(path: &Path, word: &str, trace: bool, sep: Option<&str>, budget: SearchBudget) -> Result<u8, Failure> {
    let m = load_automaton(path)?;
    let w = m.parse_word(word, sep)?;
    let verdict = if trace {
        match find_accepting_run(&m, &w, &budget) {
            Some(run) => {
                println!("state | read | pred | instr | pointer | label");
                let c0 = &run.configurations[0];
                println!(
                    "{} | - | - | - | {} | {}",
                    m.states[c0.state],
                    pointer(c0),
                    m.label_name(&c0.storage.current_label())
                );
                for (&t, c) in run.transitions.iter().zip(&run.configurations[1..]) {
                    let t = &m.transitions[t];
                    println!(
                        "{} | {} | {} | {} | {} | {}",
                        m.states[c.state],
                        t.read.map_or("ε", |a| m.alphabet[a].as_str()),
                        m.describe_predicate(&t.predicate),
                        m.describe_instruction(&t.instruction),
                        pointer(c),
                        m.label_name(&c.storage.current_label())
                    );
                }
                Verdict::Accepted
            }
            None => search(&m, &w, &budget, Strategy::Auto).verdict,
        }
    } else {
        search(&m, &w, &budget, Strategy::Auto).verdict
    };
    println!("{}", verdict.as_str());
    Ok(match verdict {
        Verdict::Accepted => 0,
        Verdict::Rejected => 1,
        Verdict::BudgetExhausted => 2,
    })
}

fn pointer(c: &treestack::Configuration) -> String {
    c.storage.pointer().map_or("-".to_string(), |p| p.to_string())
}

fn cmd_construct(kind: Kind, spec_path: &Path, output: Option<&Path>, k: usize) -> Result<u8, Failure> {
    let spec = load_spec(spec_path)?;
    if !kind.matches(&spec) {
        return Err(Failure(format!(
            "{}: $.kind: spec is not of kind `{}`",
            spec_path.display(),
            kind.name()
        )));
    }
    let m = automaton_for(&spec, k)?;
    let text = automaton_to_json(&m) + "\n";
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    Ok(0)
}

struct CompareArgs<'a> {
    max_len: usize,
    sample: Option<usize>,
    seed: u64,
    sep: Option<&'a str>,
    budget: SearchBudget,
}

fn cmd_compare(m_path: &Path, spec_path: &Path, args: CompareArgs) -> Result<u8, Failure> {
    let m = load_automaton(m_path)?;
    let spec = load_spec(spec_path)?;
    let alphabet = spec.alphabet();
    let mut sorted_m = m.alphabet.clone();
    let mut sorted_s = alphabet.clone();
    sorted_m.sort();
    sorted_s.sort();
    if sorted_m != sorted_s {
        return Err(Failure(format!(
            "alphabets differ: automaton {{{}}}, spec {{{}}}",
            m.alphabet.join(", "),
            alphabet.join(", ")
        )));
    }
    let words = match args.sample {
        None => enumerate_named_words(&alphabet, args.max_len),
        Some(count) => {
            println!("seed: {}", args.seed);
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            (0..count)
                .map(|_| {
                    let len = rng.gen_range(0..=args.max_len);
                    (0..len)
                        .map(|_| alphabet[rng.gen_range(0..alphabet.len())].clone())
                        .collect()
                })
                .collect()
        }
    };
    let searcher = Searcher::new(&m, Strategy::Auto);
    let checks: Vec<_> = words
        .par_iter()
        .map(|w| check_word(&searcher, &spec, w, &args.budget))
        .collect();
    let mut summary = Summary::default();
    for c in &checks {
        summary.add(c);
        if !c.matches() {
            println!(
                "mismatch: {} | automaton: {} | oracle: {}",
                show_word(&c.word, args.sep),
                c.verdict.as_str(),
                if c.expected { "trivial" } else { "nontrivial" }
            );
        }
    }
    println!("{summary}");
    Ok(if summary.is_clean() { 0 } else { 1 })
}

fn cmd_analyze(path: &Path, k: usize) -> Result<u8, Failure> {
    let m = load_automaton(path)?;
    println!("storage: {}", m.storage.name());
    println!("states: {}", m.states.len());
    println!("transitions: {}", m.transitions.len());
    match check_cycle_free(&m) {
        None => println!("cycle-free: yes"),
        Some(w) => println!("cycle-free: no, witness: {}", w.describe(&m)),
    }
    if m.storage == StorageKind::TreeStack {
        match uniform_visit_bound(&m, k) {
            Ok(b) => println!("uniform visit bound (k = {k}): {b}"),
            Err(e) => println!("uniform visit bound (k = {k}): none, {e}"),
        }
    } else {
        println!("uniform visit bound (k = {k}): n/a for {} storage", m.storage.name());
    }
    Ok(0)
}

fn cmd_mcfg(path: &Path, word: &str, sep: Option<&str>) -> Result<u8, Failure> {
    let g = grammar_from_json(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let w = split_word(word, sep);
    if let Some(a) = w.iter().find(|a| !g.terminals.contains(a)) {
        return Err(Failure(format!("unknown terminal `{a}`")));
    }
    let m = g.membership(&w)?;
    println!("{}", if m.accepted { "accepted" } else { "rejected" });
    if m.deleting_warning {
        println!("deleting-grammar-warning");
    }
    Ok(if m.accepted { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Accept {
            automaton,
            word,
            trace,
            sep,
            budget,
        } => cmd_accept(automaton, word, *trace, sep.as_deref(), budget.budget()),
        Command::Construct { kind, spec, output, k } => cmd_construct(*kind, spec, output.as_deref(), *k),
        Command::Compare {
            automaton,
            spec,
            max_len,
            sample,
            seed,
            sep,
            budget,
        } => cmd_compare(
            automaton,
            spec,
            CompareArgs {
                max_len: *max_len,
                sample: *sample,
                seed: *seed,
                sep: sep.as_deref(),
                budget: budget.budget(),
            },
        ),
        Command::Analyze { automaton, k } => cmd_analyze(automaton, *k),
        Command::Mcfg { grammar, word, sep } => cmd_mcfg(grammar, word, sep.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use winset::decision::{intersect_nonempty_with_budget, member, DEFAULT_PRODUCT_BUDGET};
use winset::enumerate::{max_winset_complexity_with_progress, EnumerateConfig, Engine};
use winset::gadgets::{
    circuit_to_dfa, circuit_value_instance, exact_ones_dfa, gen_state, gen_subset,
    iterated_instance, lower_bound_gadget, testing, Circuit,
};
use winset::oracle::{alice_wins, winning_slice, TargetPredicate};
use winset::winset::{winset_dfa_with_budget, DEFAULT_STATE_BUDGET};
use winset::{Dfa, Error, Nfa, TurnWord};

#[derive(Parser)]
#[command(name = "winset", version, about = "Winning sets of binary regular languages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal DFA for the winning set of a DFA over 01
    Wdfa {
        dfa: PathBuf,
        #[command(flatten)]
        emit: EmitArg,
        /// Cap on materialized game states
        #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
        budget: usize,
    },
    /// Minimize a DFA
    Minimize {
        dfa: PathBuf,
        #[command(flatten)]
        emit: EmitArg,
    },
    /// Check two DFAs for language equality; prints a distinguishing word if
    /// they differ
    Equiv { left: PathBuf, right: PathBuf },
    /// Check whether two words lead to the same state of the minimal DFA
    Congruent { dfa: PathBuf, v: String, w: String },
    /// Winning-set decision procedures
    #[command(subcommand)]
    Decide(Decide),
    /// Brute-force evaluation of the game
    #[command(subcommand)]
    Oracle(Oracle),
    /// Generate gadget automata: gen-subset, gen-state, testing, lower-bound,
    /// exact-ones, or `circuit <file>`
    Gadget {
        name: String,
        /// Size parameter, or the circuit file for `circuit`
        arg: String,
        #[command(flatten)]
        emit: EmitArg,
        /// Circuit value instance for this input vector (e.g. TFT or 101)
        #[arg(long, conflicts_with = "iterate")]
        value: Option<String>,
        /// Iterated circuit instance: input vector and watched index
        #[arg(long, num_args = 2, value_names = ["A", "I"])]
        iterate: Option<Vec<String>>,
    },
    /// Largest minimal winning-set DFA over all n-state DFAs
    Enumerate {
        n: usize,
        /// Wall-clock limit in seconds
        #[arg(long)]
        budget: Option<f64>,
        /// Worker threads (0 = all cores)
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write a DFA reaching the maximum to this file
        #[arg(long)]
        emit_witness: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = EngineArg::Fast)]
        engine: EngineArg,
    },
}

#[derive(Subcommand)]
enum Decide {
    /// Is the turn order in the winning set?
    Member { dfa: PathBuf, word: String },
    /// A shortest turn order in the winning set accepted by an NFA over AB
    Intersect {
        dfa: PathBuf,
        nfa: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PRODUCT_BUDGET)]
        budget: usize,
    },
}

#[derive(Subcommand)]
enum Oracle {
    /// Does Alice win on this turn order? TARGET is a DFA file or one of
    /// dyck, parity, contains-011, exact-ones:K
    Member { target: String, word: String },
    /// All winning turn orders of length n
    Slice { target: String, n: usize },
}

#[derive(Args)]
struct EmitArg {
    #[arg(long, value_enum, default_value_t = Emit::Dfa)]
    emit: Emit,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Dfa,
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Fast,
    Generic,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_dfa(path: &Path) -> Result<Dfa> {
    let text = read(path)?;
    let parsed = if text.trim_start().starts_with('{') {
        Dfa::from_json(&text)
    } else {
        Dfa::parse(&text)
    };
    parsed.with_context(|| format!("in {}", path.display()))
}

fn load_nfa(path: &Path) -> Result<Nfa> {
    Nfa::parse(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn render(dfa: &Dfa, emit: Emit) -> String {
    match emit {
        Emit::Dfa => dfa.to_text(),
        Emit::Dot => dfa.to_dot(),
        Emit::Json => dfa.to_json() + "\n",
    }
}

/// Renders a DFA followed by `key value` notes: comments in the text and DOT
/// formats, extra fields next to the automaton in JSON.
fn render_with_notes(dfa: &Dfa, emit: Emit, notes: &[(&str, String)]) -> String {
    match emit {
        Emit::Json => {
            let mut out = format!("{{\"dfa\":{}", dfa.to_json());
            for (k, v) in notes {
                out += &format!(",\"{k}\":\"{v}\"");
            }
            out + "}\n"
        }
        _ => {
            let mut out = render(dfa, emit);
            let marker = if emit == Emit::Dot { "//" } else { "#" };
            for (k, v) in notes {
                out += &format!("{marker} {k} {v}\n");
            }
            out
        }
    }
}

fn verdict(yes: bool) -> ExitCode {
    println!("{yes}");
    if yes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn parse_bits(text: &str) -> Result<Vec<bool>> {
    text.chars()
        .map(|c| match c {
            'T' | 't' | '1' => Ok(true),
            'F' | 'f' | '0' => Ok(false),
            _ => bail!("bad truth value {c:?} in {text:?}; use T/F or 1/0"),
        })
        .collect()
}

fn target(name: &str, len: usize) -> Result<TargetPredicate> {
    let path = Path::new(name);
    if path.exists() {
        return Ok(TargetPredicate::from_dfa(&load_dfa(path)?, len)?);
    }
    Ok(TargetPredicate::builtin(name, len)?)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Wdfa { dfa, emit, budget } => {
            let w = winset_dfa_with_budget(&load_dfa(&dfa)?, budget)?;
            write!(out, "{}", render(&w, emit.emit))?;
        }
        Command::Minimize { dfa, emit } => {
            write!(out, "{}", render(&load_dfa(&dfa)?.minimize(), emit.emit))?;
        }
        Command::Equiv { left, right } => {
            let (a, b) = (load_dfa(&left)?, load_dfa(&right)?);
            return Ok(match a.distinguishing_word(&b)? {
                None => {
                    writeln!(out, "equivalent")?;
                    ExitCode::SUCCESS
                }
                Some(w) => {
                    writeln!(out, "distinguished by {}", a.alphabet().format_word(&w))?;
                    ExitCode::from(1)
                }
            });
        }
        Command::Congruent { dfa, v, w } => {
            let d = load_dfa(&dfa)?;
            let (v, w) = (d.alphabet().parse_word(&v)?, d.alphabet().parse_word(&w)?);
            return Ok(verdict(d.congruent(&v, &w)));
        }
        Command::Decide(Decide::Member { dfa, word }) => {
            let w: TurnWord = word.parse()?;
            return Ok(verdict(member(&load_dfa(&dfa)?, &w)?));
        }
        Command::Decide(Decide::Intersect { dfa, nfa, budget }) => {
            let found = intersect_nonempty_with_budget(&load_dfa(&dfa)?, &load_nfa(&nfa)?, budget)?;
            return Ok(match found {
                Some(w) => {
                    writeln!(out, "{w}")?;
                    ExitCode::SUCCESS
                }
                None => {
                    writeln!(out, "empty")?;
                    ExitCode::from(1)
                }
            });
        }
        Command::Oracle(Oracle::Member { target: name, word }) => {
            let w: TurnWord = word.parse()?;
            return Ok(verdict(alice_wins(&target(&name, w.len())?, &w)?));
        }
        Command::Oracle(Oracle::Slice { target: name, n }) => {
            for w in winning_slice(&target(&name, n)?)? {
                writeln!(out, "{w}")?;
            }
        }
        Command::Gadget {
            name,
            arg,
            emit,
            value,
            iterate,
        } => {
            let text = gadget(&name, &arg, emit.emit, value, iterate)?;
            write!(out, "{text}")?;
        }
        Command::Enumerate {
            n,
            budget,
            jobs,
            emit_witness,
            engine,
        } => {
            let config = EnumerateConfig {
                budget: budget.map(Duration::from_secs_f64),
                jobs,
                engine: match engine {
                    EngineArg::Fast => Engine::Fast,
                    EngineArg::Generic => Engine::Generic,
                },
            };
            let progress = |done: u64, total: u64| {
                if total >= 1 << 20 {
                    eprintln!("{done}/{total} candidates");
                }
            };
            let r = max_winset_complexity_with_progress(n, &config, &progress)?;
            if let Some(path) = emit_witness {
                fs::write(&path, r.witness.to_text())
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            writeln!(out, "n={} max={} exhausted={}", r.n, r.max_size, r.exhausted)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn gadget(
    name: &str,
    arg: &str,
    emit: Emit,
    value: Option<String>,
    iterate: Option<Vec<String>>,
) -> Result<String> {
    if name == "circuit" {
        let c = Circuit::parse(&read(Path::new(arg))?).with_context(|| format!("in {arg}"))?;
        if let Some(a) = value {
            let (dfa, w) = circuit_value_instance(&c, &parse_bits(&a)?)?;
            return Ok(render_with_notes(&dfa, emit, &[("word", w.to_string())]));
        }
        if let Some(v) = iterate {
            let a = parse_bits(&v[0])?;
            let i: usize = v[1].parse().with_context(|| format!("bad index {:?}", v[1]))?;
            let inst = iterated_instance(&c, &a, i)?;
            return Ok(render_with_notes(
                &inst.dfa,
                emit,
                &[("base", inst.base.to_string()), ("period", inst.period.to_string())],
            ));
        }
        let art = circuit_to_dfa(&c)?;
        let mut notes = vec![("p", art.p.to_string())];
        let pairs = |v: &[(usize, usize)]| {
            v.iter()
                .map(|(t, f)| format!("{t}/{f}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        notes.push(("inputs", pairs(&art.input_states)));
        notes.push(("outputs", pairs(&art.output_states)));
        return Ok(render_with_notes(&art.dfa, emit, &notes));
    }
    if value.is_some() || iterate.is_some() {
        bail!("--value and --iterate only apply to `gadget circuit`");
    }
    let n: usize = arg.parse().with_context(|| format!("bad size {arg:?}"))?;
    if n == 0 {
        bail!("gadget size must be at least 1");
    }
    let dfa = match name {
        "gen-subset" => gen_subset(n).dfa,
        "gen-state" => gen_state(n).dfa,
        "testing" => testing(n).dfa,
        "lower-bound" => lower_bound_gadget(n).dfa,
        "exact-ones" => exact_ones_dfa(n),
        _ => bail!("unknown gadget {name:?}; expected gen-subset, gen-state, testing, lower-bound, exact-ones or circuit"),
    };
    Ok(render(&dfa, emit))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if let Some(Error::BudgetExceeded { .. }) = e.downcast_ref::<Error>() {
                eprintln!("hint: raise --budget");
            }
            ExitCode::from(2)
        }
    }
}

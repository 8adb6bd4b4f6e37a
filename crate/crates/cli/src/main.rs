use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rabin_core::automata::{npt_emptiness, npt_member, parse_automaton, Emptiness, NondetTreeAutomaton, NondetWordAutomaton, ParsedAutomaton};
use rabin_core::complementation::complement;
use rabin_core::determinization::{complement_dpw, parity_to_buchi, safra_determinize};
use rabin_core::games::{solve, ParityGame, Player};
use rabin_core::mso::{self, Formula};
use rabin_core::regular_trees::RegularTree;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "rabin", version, about = "Parity tree automata, parity games and MSO over the infinite binary tree")]
struct Cli {
    /// Print a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FormulaInput {
    /// File holding the formula.
    file: Option<PathBuf>,
    /// Formula given inline.
    #[arg(short = 'e', long = "expr", conflicts_with = "file")]
    expr: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an MSO sentence over the infinite binary tree (exit 0 if true, 1 if false).
    Decide {
        #[command(flatten)]
        input: FormulaInput,
        /// Macro-state cap for each complementation.
        #[arg(long, default_value_t = mso_budget())]
        budget: usize,
        /// Print sets for a leading block of existential set quantifiers.
        #[arg(long)]
        witness: bool,
        /// Print the per-subformula cost ledger.
        #[arg(long)]
        ledger: bool,
    },
    /// Compile an MSO formula into a tree automaton over its valuation alphabet.
    Compile {
        #[command(flatten)]
        input: FormulaInput,
        #[arg(long, default_value_t = mso_budget())]
        budget: usize,
    },
    /// Complement a nondeterministic parity tree automaton.
    Complement {
        file: PathBuf,
        #[arg(long, default_value_t = rabin_core::complementation::DEFAULT_BUDGET)]
        budget: usize,
        /// Also print construction statistics.
        #[arg(long)]
        report: bool,
    },
    /// Decide whether a tree automaton accepts a regular tree.
    Membership { automaton: PathBuf, tree: PathBuf },
    /// Decide whether a tree automaton accepts some tree, printing a witness.
    Emptiness { automaton: PathBuf },
    /// Solve a finite parity game.
    SolveGame { file: PathBuf },
    /// Determinize a parity word automaton.
    Determinize {
        file: PathBuf,
        #[arg(long, default_value_t = rabin_core::determinization::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Complement a parity word automaton through determinization.
    ComplementWord {
        file: PathBuf,
        #[arg(long, default_value_t = rabin_core::determinization::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Print the positional determinacy sentence for tree-like games.
    Psi {
        /// Largest rank x of the games.
        #[arg(long)]
        index: u32,
        /// Number of extra layers k.
        #[arg(long, default_value_t = 0)]
        layers: usize,
    },
}

fn mso_budget() -> usize {
    200_000
}

/// Text for humans, value for `--json`, and the process exit code.
struct Output {
    text: String,
    value: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, value: Value) -> Self {
        Output { text, value, code: 0 }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn formula(input: &FormulaInput) -> Result<Formula> {
    let text = match (&input.expr, &input.file) {
        (Some(e), _) => e.clone(),
        (None, Some(f)) => read(f)?,
        (None, None) => bail!("give a formula file or -e \"formula\""),
    };
    Ok(mso::parse(text.trim())?)
}

fn tree_automaton(path: &Path) -> Result<NondetTreeAutomaton> {
    match parse_automaton(&read(path)?)? {
        ParsedAutomaton::Tree(a) => Ok(a),
        _ => bail!("{}: expected an npt automaton", path.display()),
    }
}

fn word_automaton(path: &Path) -> Result<NondetWordAutomaton> {
    match parse_automaton(&read(path)?)? {
        ParsedAutomaton::Word(a) => Ok(a),
        ParsedAutomaton::Deterministic(d) => Ok(d.to_nondet()),
        ParsedAutomaton::Tree(_) => bail!("{}: expected a word automaton", path.display()),
    }
}

fn run(command: &Command) -> Result<Output> {
    Ok(match command {
        Command::Decide { input, budget, witness, ledger } => {
            let f = formula(input)?;
            if !f.is_sentence() {
                let free: Vec<String> = f.free_variables().into_iter().collect();
                bail!("not a sentence; free variables: {}", free.join(", "));
            }
            let d = mso::decide_with(&f, *budget, *witness)?;
            let (sets, pi13) = (mso::set_quantifier_blocks(&f), mso::is_pi13(&f));
            let mut text = format!("{}\n", d.value);
            if let Some(w) = &d.witness {
                text.push_str(&format!("# witness for {}\n{}", w.variables.join(" "), w.tree));
            }
            if *ledger {
                for e in &d.ledger {
                    text.push_str(&format!("# {e}\n"));
                }
            }
            let value = json!({
                "value": d.value,
                "set_quantifier_blocks": sets,
                "pi13": pi13,
                "witness": d.witness.as_ref().map(|w| json!({"variables": w.variables, "tree": w.tree.to_string()})),
                "ledger": d.ledger.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            });
            Output { text, value, code: if d.value { 0 } else { 1 } }
        }
        Command::Compile { input, budget } => {
            let c = mso::compile_with_budget(&formula(input)?, *budget)?;
            let text = format!("# variables: {}\n{}", c.variables.join(" "), c.automaton);
            let value = json!({
                "variables": c.variables,
                "states": c.automaton.state_count(),
                "automaton": c.automaton.to_string(),
                "ledger": c.ledger.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            });
            Output::ok(text, value)
        }
        Command::Complement { file, budget, report } => {
            let (b, r) = complement(&tree_automaton(file)?, *budget)?;
            let mut text = b.to_string();
            if *report {
                text.push_str(&r.to_string());
            }
            let value = json!({"automaton": b.to_string(), "report": r.to_string()});
            Output::ok(text, value)
        }
        Command::Membership { automaton, tree } => {
            let a = tree_automaton(automaton)?;
            let t = RegularTree::parse(&read(tree)?)?;
            let m = npt_member(&a, &t)?;
            let verdict = if m.accepted { "accepted" } else { "rejected" };
            Output::ok(format!("{verdict}\n"), json!({"accepted": m.accepted, "game_vertices": m.game.vertex_count()}))
        }
        Command::Emptiness { automaton } => match npt_emptiness(&tree_automaton(automaton)?) {
            Emptiness::Empty => Output::ok("empty\n".into(), json!({"empty": true})),
            Emptiness::Witness(t) => Output::ok(format!("nonempty\n{t}"), json!({"empty": false, "witness": t.to_string()})),
        },
        Command::SolveGame { file } => {
            let g = ParityGame::parse(&read(file)?)?;
            let s = solve(&g);
            let names = |p: Player| s.region(p).iter().map(|&v| g.name(v).to_string()).collect::<Vec<_>>();
            let strategy = |p: Player| {
                s.strategy(p).moves.iter().map(|(&v, &w)| (g.name(v).to_string(), json!(g.name(w)))).collect::<serde_json::Map<_, _>>()
            };
            let mut value = json!({
                "exists": {"region": names(Player::Exists), "strategy": strategy(Player::Exists)},
                "forall": {"region": names(Player::Forall), "strategy": strategy(Player::Forall)},
            });
            if let Some(v) = g.initial() {
                value["initial_winner"] = json!(s.winner(v).to_string());
            }
            Output::ok(s.render(&g), value)
        }
        Command::Determinize { file, budget } => {
            let d = safra_determinize(&parity_to_buchi(&word_automaton(file)?), *budget)?;
            Output::ok(d.to_string(), json!({"states": d.state_count(), "automaton": d.to_string()}))
        }
        Command::ComplementWord { file, budget } => {
            let d = complement_dpw(&safra_determinize(&parity_to_buchi(&word_automaton(file)?), *budget)?);
            Output::ok(d.to_string(), json!({"states": d.state_count(), "automaton": d.to_string()}))
        }
        Command::Psi { index, layers } => {
            let f = mso::positional_determinacy_sentence(*index, *layers);
            let blocks = mso::quantifier_blocks(&f);
            Output::ok(format!("{f}\n"), json!({"sentence": f.to_string(), "quantifier_blocks": blocks}))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = if cli.json {
                writeln!(stdout, "{}", json!({"ok": true, "result": out.value}))
            } else {
                write!(stdout, "{}", out.text)
            };
            ExitCode::from(out.code)
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({"ok": false, "error": format!("{e:#}")}));
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}

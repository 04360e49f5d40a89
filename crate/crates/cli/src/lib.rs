//! The `algcps` command line, as a function from arguments to output.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use algcps::cps::{cps, cps_applied};
use algcps::harness::{check_lemma, Budgets, CheckReport, Coverage, GenConfig, LemmaId};
use algcps::inverse::{classify, invert};
use algcps::rewrite::{normalize, NormalizeOutcome, DEFAULT_MAX_STATES, DEFAULT_MAX_STEPS};
use algcps::{parse_in, Calculus, Direction, Gaussian, Rational, Scalar, Term};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_TIMEOUT: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "algcps",
    version,
    about = "Reduce, translate and invert terms of the linear and algebraic lambda calculi"
)]
pub struct Cli {
    /// Coefficient ring.
    #[arg(long, value_enum, default_value_t = Ring::Rational, global = true)]
    pub ring: Ring,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ring {
    Rational,
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// JSON.
    Structured,
}

#[derive(Debug, Args)]
pub struct Input {
    /// The term, e.g. "(\x. \f. f x x) (y + z)".
    #[arg(
        required_unless_present = "file",
        conflicts_with = "file",
        allow_hyphen_values = true
    )]
    pub term: Option<String>,
    /// Read the term from a file instead.
    #[arg(long, short)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the term back.
    Parse {
        #[command(flatten)]
        input: Input,
    },
    /// Normalize with the fixed strategy and print the value.
    Reduce {
        #[arg(long)]
        calculus: Calculus,
        /// Budget of non-vector-space steps.
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        steps: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Like reduce, printing every step.
    Trace {
        #[arg(long)]
        calculus: Calculus,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        steps: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Print the CPS translation.
    Translate {
        #[arg(long)]
        dir: Direction,
        /// Apply the translation to the continuation variable k.
        #[arg(long)]
        apply_k: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Map a computation or suspension back to a source term.
    Invert {
        #[arg(long)]
        dir: Direction,
        #[command(flatten)]
        input: Input,
    },
    /// Print the grammar class of a term.
    Classify {
        #[arg(long)]
        dir: Direction,
        #[command(flatten)]
        input: Input,
    },
    /// Check properties of the translations on generated instances.
    Check {
        /// A check name, or `all`.
        #[arg(long, default_value = "all", value_parser = parse_lemmas)]
        lemma: Lemmas,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        instances: usize,
        #[arg(long, default_value_t = 5)]
        depth: u32,
        /// States per reachability search.
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        budget: usize,
        /// Only this direction.
        #[arg(long)]
        dir: Option<Direction>,
    },
}

#[derive(Debug, Clone)]
pub struct Lemmas(pub Vec<LemmaId>);

fn parse_lemmas(s: &str) -> Result<Lemmas, String> {
    if s == "all" {
        return Ok(Lemmas(LemmaId::ALL.to_vec()));
    }
    s.parse::<LemmaId>()
        .map(|id| Lemmas(vec![id]))
        .map_err(|e| {
            let names: Vec<_> = LemmaId::ALL.iter().map(|l| l.name()).collect();
            format!("{e}; expected `all` or one of {}", names.join(", "))
        })
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: u8, message: impl std::fmt::Display) -> Self {
        Output {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output::ok(text)
            };
        }
    };
    match cli.ring {
        Ring::Rational => execute::<Rational>(&cli),
        Ring::Gaussian => execute::<Gaussian>(&cli),
    }
}

fn read_term<S: Scalar>(input: &Input) -> Result<Term<S>, Output> {
    let text = match (&input.term, &input.file) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Output::error(EXIT_USAGE, format!("{}: {e}", path.display())))?,
        (None, None) => return Err(Output::error(EXIT_USAGE, "no term given")),
    };
    parse_in::<S>(text.trim()).map_err(|e| Output::error(EXIT_USAGE, e))
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn structured(v: serde_json::Value) -> String {
    line(serde_json::to_string_pretty(&v).expect("json serializes"))
}

fn execute<S: Scalar>(cli: &Cli) -> Output {
    match exec_inner::<S>(cli) {
        Ok(out) | Err(out) => out,
    }
}

fn exec_inner<S: Scalar>(cli: &Cli) -> Result<Output, Output> {
    let json = cli.format == Format::Structured;
    let out = match &cli.command {
        Command::Parse { input } => {
            let t = read_term::<S>(input)?;
            Output::ok(if json {
                structured(json!({ "term": t.to_string() }))
            } else {
                line(&t)
            })
        }
        Command::Reduce {
            calculus,
            steps,
            input,
        } => {
            let t = read_term::<S>(input)?;
            let n = normalize(&t, *calculus, *steps);
            let result = n.result().to_string();
            let stdout = if json {
                structured(json!({
                    "outcome": n.outcome,
                    "term": result,
                    "steps": n.steps,
                }))
            } else {
                match n.outcome {
                    NormalizeOutcome::Value => line(&result),
                    NormalizeOutcome::Stuck => line(format!("STUCK {result}")),
                    NormalizeOutcome::Timeout => line("TIMEOUT"),
                }
            };
            Output {
                code: exit_for(n.outcome),
                stdout,
                stderr: String::new(),
            }
        }
        Command::Trace {
            calculus,
            steps,
            input,
        } => {
            let t = read_term::<S>(input)?;
            let n = normalize(&t, *calculus, *steps);
            let stdout = if json {
                let mut doc = n.trace.to_json();
                doc["outcome"] = json!(n.outcome);
                structured(doc)
            } else {
                let mut s = n.trace.render_text();
                match n.outcome {
                    NormalizeOutcome::Value => {}
                    NormalizeOutcome::Stuck => s.push_str("STUCK\n"),
                    NormalizeOutcome::Timeout => s.push_str("TIMEOUT\n"),
                }
                s
            };
            Output {
                code: exit_for(n.outcome),
                stdout,
                stderr: String::new(),
            }
        }
        Command::Translate {
            dir,
            apply_k,
            input,
        } => {
            let t = read_term::<S>(input)?;
            let r = if *apply_k {
                cps_applied(&t, *dir)
            } else {
                cps(&t, *dir)
            };
            let r = r.map_err(|e| Output::error(EXIT_PRECONDITION, e))?;
            Output::ok(if json {
                structured(json!({ "dir": dir, "term": r.to_string() }))
            } else {
                line(&r)
            })
        }
        Command::Invert { dir, input } => {
            let t = read_term::<S>(input)?;
            let class = classify(&t, *dir);
            let r = invert(&t, *dir).map_err(|e| Output::error(EXIT_PRECONDITION, e))?;
            Output::ok(if json {
                structured(json!({ "class": class.to_string(), "term": r.to_string() }))
            } else {
                line(&r)
            })
        }
        Command::Classify { dir, input } => {
            let t = read_term::<S>(input)?;
            let class = classify(&t, *dir);
            Output::ok(if json {
                structured(json!({ "class": class.to_string() }))
            } else {
                line(class)
            })
        }
        Command::Check {
            lemma,
            seed,
            instances,
            depth,
            budget,
            dir,
        } => {
            let cfg = GenConfig::<S> {
                seed: *seed,
                max_depth: *depth,
                ..GenConfig::default()
            };
            let budgets = Budgets {
                max_states: *budget,
                instances: *instances,
                ..Budgets::default()
            };
            let dirs: Vec<Direction> = match dir {
                Some(d) => vec![*d],
                None => Direction::BOTH.to_vec(),
            };
            let reports: Vec<CheckReport> = lemma
                .0
                .iter()
                .flat_map(|&id| dirs.iter().map(move |&d| (id, d)))
                .map(|(id, d)| check_lemma(id, d, &cfg, &budgets))
                .collect();
            let failed = reports.iter().any(|r| !r.ok());
            let stdout = if json {
                structured(json!(reports))
            } else {
                render_reports(&reports)
            };
            Output {
                code: if failed { EXIT_CHECK_FAILED } else { EXIT_OK },
                stdout,
                stderr: String::new(),
            }
        }
    };
    Ok(out)
}

fn exit_for(outcome: NormalizeOutcome) -> u8 {
    match outcome {
        NormalizeOutcome::Timeout => EXIT_TIMEOUT,
        _ => EXIT_OK,
    }
}

fn render_reports(reports: &[CheckReport]) -> String {
    let mut s = String::new();
    let mut cov = Coverage::default();
    for r in reports {
        cov.merge(&r.coverage);
        let _ = writeln!(s, "{}", r.summary());
        for f in &r.failures {
            let _ = writeln!(
                s,
                "  FAIL seed {} stream {}: {}",
                f.seed, f.stream, f.detail
            );
            let _ = writeln!(s, "    input:  {}", f.input.join(" | "));
            let _ = writeln!(s, "    shrunk: {}", f.shrunk.join(" | "));
            if let Some(w) = &f.witness {
                for l in w.lines() {
                    let _ = writeln!(s, "    | {l}");
                }
            }
        }
    }
    let missing = cov.missing();
    let _ = writeln!(
        s,
        "note: passing instances do not establish a property, only fail to refute it"
    );
    let _ = writeln!(
        s,
        "coverage: {}/28 rules fired{}",
        28 - missing.len(),
        if missing.is_empty() {
            String::new()
        } else {
            format!(", never: {missing:?}")
        }
    );
    s
}

//! `pclosure`: compute polynomial closures of pseudo-convergent sequences.
//!
//! Exit status: 0 when the verdict holds (member, equal, valid, ...), 1 when
//! it does not, 2 on malformed input.

mod demo;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pclosure::pcvseq::{classify, closure_describe, closure_equal, EqualityFailure, PCSeq};
use pclosure::regbasis::{expand_in_basis, hn_build, hn_eval};
use pclosure::syntax::{parse_expr, parse_kpoly, SequenceSpec};

use report::{emit, Item, Record};

#[derive(Parser)]
#[command(
    name = "pclosure",
    version,
    about = "Polynomial closures of pseudo-convergent sequences over Q(t1,...,tr)"
)]
struct Cli {
    /// One JSON object per output line.
    #[arg(long, global = true)]
    json: bool,
    /// Largest index examined by the H_n(a) in V test.
    #[arg(long, global = true, default_value_t = 30)]
    horizon: usize,
    /// Largest polynomial degree accepted by `hn` and `expand`.
    #[arg(long = "max-degree", global = true, default_value_t = 32)]
    max_degree: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a sequence file describes a pseudo-convergent sequence.
    Validate { file: PathBuf },
    /// Print s_n.
    Term { file: PathBuf, n: usize },
    /// Print the gauge value v(s_{n+1} - s_n).
    Gauge { file: PathBuf, n: usize },
    /// Describe the polynomial closure.
    Closure { file: PathBuf },
    /// Decide whether an element lies in the closure.
    Classify {
        file: PathBuf,
        /// Element of K, e.g. "t2 + t1" or "(1 - t1)/t2^3".
        #[arg(long)]
        elem: String,
    },
    /// Decide whether two sequences have the same closure.
    Equal { left: PathBuf, right: PathBuf },
    /// Print the n-th regular basis polynomial.
    Hn {
        file: PathBuf,
        n: usize,
        /// Also evaluate H_n at this element and report its valuation.
        #[arg(long)]
        eval: Option<String>,
    },
    /// Expand a polynomial in X in the regular basis.
    Expand {
        file: PathBuf,
        /// Polynomial in X with coefficients in K, e.g. "X^2 - t2*X".
        #[arg(long)]
        poly: String,
    },
    /// Run a scripted construction.
    Demo {
        #[command(subcommand)]
        which: DemoKind,
    },
    /// Print the canonical form of a sequence file.
    PrintSpec { file: PathBuf },
}

#[derive(Subcommand)]
enum DemoKind {
    /// E = {t^(n+1)} and E' = {t^(n+2)}: the closure of E is not that of E' union {t}.
    Nontopological {
        /// Rank r of the value group; t = t_r and p = t1.
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
}

/// Records to print and whether the verdict holds.
struct Outcome {
    records: Vec<Record>,
    holds: bool,
}

impl Outcome {
    fn one(record: Record, holds: bool) -> Self {
        Outcome {
            records: vec![record],
            holds,
        }
    }
}

fn load(path: &Path) -> Result<PCSeq, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let spec = SequenceSpec::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    spec.build().map_err(|e| format!("{}: {e}", path.display()))
}

fn expr_err(what: &str, text: &str, e: pclosure::Error) -> String {
    format!("{what} {text:?}: {e}")
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Validate { file } => {
            let seq = load(file)?;
            let (prefix, tail) = seq.gauge_form();
            let rec = Record::new("validate", Item::str("pseudo-convergent"))
                .field("rank", Item::int(seq.rank()))
                .field("n0", Item::int(seq.start()))
                .field(
                    "prefix_gauge",
                    Item::List(prefix.iter().map(Item::vec).collect()),
                )
                .field("tail_gauge_base", Item::vec(&tail.base))
                .field("tail_gauge_step", Item::vec(&tail.step));
            Ok(Outcome::one(rec, true))
        }
        Command::Term { file, n } => {
            let seq = load(file)?;
            let s = seq.term(*n);
            let rec = Record::new("term", Item::str(&s))
                .field("n", Item::int(*n))
                .field("valuation", Item::Val(s.valuation()));
            Ok(Outcome::one(rec, true))
        }
        Command::Gauge { file, n } => {
            let seq = load(file)?;
            let rec = Record::new("gauge", Item::vec(&seq.gauge_at(*n))).field("n", Item::int(*n));
            Ok(Outcome::one(rec, true))
        }
        Command::Closure { file } => {
            let seq = load(file)?;
            let d = closure_describe(&seq);
            let cosets = d
                .prefix_cosets
                .iter()
                .map(|c| {
                    Item::obj(vec![
                        ("k", Item::int(c.k)),
                        ("center", Item::str(&c.center)),
                        ("scale", Item::str(&c.scale)),
                        ("prime", Item::prime(&c.prime)),
                    ])
                })
                .collect();
            let tail = Item::obj(vec![
                ("from_k", Item::int(seq.start())),
                ("center", Item::str("s_k")),
                (
                    "scale",
                    Item::str(format!("({})*t^(k*{})", d.tail.u, d.tail.b)),
                ),
                ("prime", Item::prime(&d.tail_prime)),
            ]);
            let rec = Record::new("closure", Item::str("described"))
                .field("sigma", Item::str(&d.sigma))
                .field("breadth", Item::cut(&d.breadth))
                .field("prefix_cosets", Item::List(cosets))
                .field("tail_cosets", tail);
            Ok(Outcome::one(rec, true))
        }
        Command::Classify { file, elem } => {
            let seq = load(file)?;
            let alpha = parse_expr(elem, seq.rank()).map_err(|e| expr_err("element", elem, e))?;
            let cert = classify(&seq, &alpha);
            let mut rec = Record::new("classify", Item::classification(&cert.class))
                .field("elem", Item::str(&alpha))
                .field("member", Item::Bool(cert.class.is_member()))
                .field("limit_gap", Item::Val(cert.limit_gap.clone()));
            if let Some(k) = cert.index {
                rec = rec.field("index", Item::int(k));
            }
            if let Some(g) = &cert.gauge {
                rec = rec.field("gauge", Item::vec(g));
            }
            if let Some(g) = &cert.term_gap {
                rec = rec.field("term_gap", Item::Val(g.clone()));
            }
            if let Some(g) = &cert.scaled_gap {
                rec = rec.field("scaled_gap", Item::Val(g.clone()));
            }
            if let Some(p) = &cert.prime {
                rec = rec.field("prime", Item::prime(p));
            }
            Ok(Outcome::one(rec, cert.class.is_member()))
        }
        Command::Equal { left, right } => {
            let e = load(left)?;
            let f = load(right)?;
            let rep = closure_equal(&e, &f).map_err(|e| e.to_string())?;
            let mut rec = Record::new("equal", Item::Bool(rep.equal()))
                .field("aligned_start", Item::int(rep.aligned_start))
                .field(
                    "checked",
                    Item::List(rep.checked.iter().map(Item::str).collect()),
                );
            if let Some(fail) = &rep.failure {
                let detail = match fail {
                    EqualityFailure::GaugeMismatch { n, left, right } => Item::tag(
                        "GaugeMismatch",
                        vec![
                            ("n", Item::int(*n)),
                            ("left", Item::vec(left)),
                            ("right", Item::vec(right)),
                        ],
                    ),
                    EqualityFailure::CosetCondition { k, valuation } => Item::tag(
                        "CosetCondition",
                        vec![
                            ("k", Item::int(*k)),
                            ("valuation", Item::Val(valuation.clone())),
                        ],
                    ),
                };
                rec = rec
                    .field("failure", detail)
                    .field("certificate", Item::str(fail));
            }
            Ok(Outcome::one(rec, rep.equal()))
        }
        Command::Hn { file, n, eval } => {
            let seq = load(file)?;
            if *n > cli.max_degree {
                return Err(format!(
                    "degree {n} exceeds --max-degree {}",
                    cli.max_degree
                ));
            }
            let mut rec =
                Record::new("hn", Item::str(hn_build(&seq, *n))).field("n", Item::int(*n));
            if let Some(text) = eval {
                let alpha =
                    parse_expr(text, seq.rank()).map_err(|e| expr_err("element", text, e))?;
                let value = hn_eval(&seq, *n, &alpha);
                rec = rec
                    .field("at", Item::str(&alpha))
                    .field("value", Item::str(&value))
                    .field("valuation", Item::Val(value.valuation()))
                    .field("in_v", Item::Bool(value.in_v()));
            }
            Ok(Outcome::one(rec, true))
        }
        Command::Expand { file, poly } => {
            let seq = load(file)?;
            let f = parse_kpoly(poly, seq.rank()).map_err(|e| expr_err("polynomial", poly, e))?;
            let degree = f.degree().unwrap_or(0);
            if degree > cli.max_degree {
                return Err(format!(
                    "degree {degree} exceeds --max-degree {}",
                    cli.max_degree
                ));
            }
            let exp = expand_in_basis(&seq, &f);
            let coeffs = exp
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| {
                    Item::obj(vec![
                        ("n", Item::int(n)),
                        ("coeff", Item::str(a)),
                        ("valuation", Item::Val(a.valuation())),
                        ("in_v", Item::Bool(a.in_v())),
                    ])
                })
                .collect();
            let iv = exp.all_in_v();
            let rec = Record::new("expand", Item::Bool(iv))
                .field("poly", Item::str(&f))
                .field("integer_valued", Item::Bool(iv))
                .field("coeffs", Item::List(coeffs));
            Ok(Outcome::one(rec, iv))
        }
        Command::Demo {
            which: DemoKind::Nontopological { rank },
        } => demo::nontopological(*rank, cli.horizon),
        Command::PrintSpec { file } => {
            let seq = load(file)?;
            let canon = SequenceSpec::from_seq(&seq);
            let rec = Record::new("print-spec", Item::str(canon.to_text().trim_end()))
                .field("rank", Item::int(canon.rank))
                .field(
                    "prefix",
                    Item::List(canon.prefix.iter().map(Item::str).collect()),
                )
                .field("tail_u", Item::str(&canon.u))
                .field(
                    "tail_b",
                    Item::List(canon.b.iter().map(|c| Item::Int(*c)).collect()),
                )
                .field("tail_n0", Item::int(canon.n0));
            if cli.json {
                return Ok(Outcome::one(rec, true));
            }
            print!("{}", canon.to_text());
            Ok(Outcome {
                records: Vec::new(),
                holds: true,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&outcome.records, cli.json) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

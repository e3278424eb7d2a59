//! Command line front end for the process calculus workbench.
//!
//! Exposes parsing, transition system construction, equivalence checking,
//! norms, parallel decomposition, and the quotient order axioms, plus a
//! `repro` command that re-runs the built-in example systems and verifies
//! their documented outcomes.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use pardec::decomp::{check_unique_with_limit, parallel_decompositions_with_limit, DecompStatus};
use pardec::equiv::{check_relation, equivalent_with_limit, Semantics};
use pardec::lts::{build_lts, default_state_limit, LimitExceeded, Lts};
use pardec::monoid::{process_quotient, ProcessQuotient, QuotientError};
use pardec::norms::{classify_lts, weak_norm};
use pardec::order::{check_axioms, AxiomReport, AxiomResult};
use pardec::syntax::{format_expr, parse_expr, ProcessExpr};

#[derive(Parser)]
#[command(
    name = "pardec",
    version,
    about = "Analyse processes built from prefixing, choice, interleaving, and iteration",
    after_help = "Expressions use the grammar  P ::= 0 | a.P | P + P | P || P | a*P\n\
                  with `tau' as the silent action. Pass `-' as an expression to\n\
                  read it from standard input."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Equivalence used by the analyses.
    #[arg(long, global = true, value_enum, default_value_t = SemanticsArg::Branching)]
    semantics: SemanticsArg,

    /// Output format; `dot` is only supported by `lts`.
    #[arg(long, global = true, value_enum, default_value_t = OutputArg::Text)]
    output: OutputArg,

    /// Cap on explored states before an analysis is aborted.
    #[arg(long, global = true, env = "PARDEC_STATE_LIMIT", default_value_t = default_state_limit())]
    state_limit: usize,

    /// Seed for randomised workflows, kept for reproducible scripting.
    /// The built-in analyses are deterministic and ignore it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SemanticsArg {
    Strong,
    Branching,
    Weak,
}

impl SemanticsArg {
    fn to_semantics(self) -> Semantics {
        match self {
            SemanticsArg::Strong => Semantics::Strong,
            SemanticsArg::Branching => Semantics::Branching,
            SemanticsArg::Weak => Semantics::Weak,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputArg {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an expression and echo its canonical form.
    Parse { expr: String },
    /// Build the reachable transition system.
    Lts { expr: String },
    /// Decide whether two expressions are equivalent.
    Equiv { left: String, right: String },
    /// Print the least number of visible actions needed to reach deadlock.
    Norm { expr: String },
    /// Print norm, depth, and the normedness classes of an expression.
    Classify { expr: String },
    /// Enumerate parallel decompositions and judge their uniqueness.
    Decompose { expr: String },
    /// Check the order axioms on the quotient of an expression.
    Axioms { expr: String },
    /// Re-run a built-in example and assert its expected outcomes.
    Repro {
        #[arg(value_enum)]
        case: ReproCase,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ReproCase {
    /// Single iterated action: no decomposition, order axioms fail.
    Ex1,
    /// Two-component system with distinct decompositions of one process.
    Ex2,
    /// The nine-state transition graph of the two-component system.
    Fig1,
}

enum Failure {
    /// Bad input; maps to exit code 2.
    Usage(String),
    /// The analysis could not complete, or a repro expectation failed;
    /// maps to exit code 1.
    Analysis(String),
}

impl From<LimitExceeded> for Failure {
    fn from(e: LimitExceeded) -> Failure {
        Failure::Analysis(e.to_string())
    }
}

impl From<QuotientError> for Failure {
    fn from(e: QuotientError) -> Failure {
        Failure::Analysis(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Analysis(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn read_expr(arg: &str) -> Result<ProcessExpr, Failure> {
    let text = if arg == "-" {
        std::io::read_to_string(std::io::stdin())
            .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?
    } else {
        arg.to_string()
    };
    parse_expr(&text).map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let _ = cli.seed; // reserved for randomised workflows
    let sem = cli.semantics.to_semantics();
    let out = cli.output;
    if out == OutputArg::Dot && !matches!(cli.command, Command::Lts { .. }) {
        return Err(Failure::Usage(
            "dot output is only supported by the lts command".into(),
        ));
    }
    match &cli.command {
        Command::Parse { expr } => {
            let canonical = format_expr(&read_expr(expr)?);
            match out {
                OutputArg::Text => println!("{canonical}"),
                OutputArg::Json => println!("{}", json!({ "expr": canonical })),
                OutputArg::Dot => unreachable!(),
            }
        }
        Command::Lts { expr } => {
            let l = build_lts(&read_expr(expr)?, cli.state_limit)?;
            match out {
                OutputArg::Text => print_lts_text(&l),
                OutputArg::Json => println!("{}", l.to_json()),
                OutputArg::Dot => print!("{}", l.export_dot()),
            }
        }
        Command::Equiv { left, right } => {
            let p = read_expr(left)?;
            let q = read_expr(right)?;
            let eq = equivalent_with_limit(&p, &q, sem, cli.state_limit)?;
            match out {
                OutputArg::Text => println!("{}", if eq { "equivalent" } else { "not equivalent" }),
                OutputArg::Json => {
                    println!("{}", json!({ "semantics": sem.name(), "equivalent": eq }))
                }
                OutputArg::Dot => unreachable!(),
            }
        }
        Command::Norm { expr } => {
            let l = build_lts(&read_expr(expr)?, cli.state_limit)?;
            let v = weak_norm(&l, l.initial());
            match out {
                OutputArg::Text => println!("{v}"),
                OutputArg::Json => println!("{}", json!({ "norm": v })),
                OutputArg::Dot => unreachable!(),
            }
        }
        Command::Classify { expr } => {
            let l = build_lts(&read_expr(expr)?, cli.state_limit)?;
            let c = classify_lts(&l);
            match out {
                OutputArg::Text => {
                    println!("weak norm:      {}", c.weak_norm);
                    println!("weak depth:     {}", c.weak_depth);
                    println!("weakly normed:  {}", c.weakly_normed);
                    println!("totally normed: {}", c.totally_normed);
                    println!("weakly bounded: {}", c.weakly_bounded);
                }
                OutputArg::Json => {
                    println!("{}", serde_json::to_value(&c).expect("classification serialises"))
                }
                OutputArg::Dot => unreachable!(),
            }
        }
        Command::Decompose { expr } => {
            let v = check_unique_with_limit(&read_expr(expr)?, sem, cli.state_limit)?;
            let parts = |ps: &Option<Vec<ProcessExpr>>| -> Option<Vec<String>> {
                ps.as_ref()
                    .map(|p| p.iter().map(format_expr).collect::<Vec<_>>())
            };
            let first = parts(&v.first);
            let second = parts(&v.second);
            match out {
                OutputArg::Text => {
                    println!("status: {}", v.status);
                    if let Some(ps) = &first {
                        println!("decomposition: {}", braces(ps));
                    }
                    if let Some(ps) = &second {
                        println!("alternative:   {}", braces(ps));
                    }
                    if v.caveat {
                        println!(
                            "note: the system is not totally normed, so the candidate \
                             set is not guaranteed to be complete"
                        );
                    }
                }
                OutputArg::Json => {
                    let mut obj = json!({
                        "status": v.status.to_string(),
                        "parts": first.unwrap_or_default(),
                        "caveat": v.caveat,
                    });
                    if let Some(ps) = second {
                        obj["alt_parts"] = json!(ps);
                    }
                    println!("{obj}");
                }
                OutputArg::Dot => unreachable!(),
            }
        }
        Command::Axioms { expr } => {
            let q = process_quotient(&read_expr(expr)?, sem, cli.state_limit)?;
            // One past the carrier size makes every power sequence resolve
            // (repeat or leave the carrier), so verdicts are exact.
            let report = check_axioms(q.monoid(), q.order(), q.num_classes() + 1);
            match out {
                OutputArg::Text => print_axioms_text(&q, &report),
                OutputArg::Json => println!("{}", axioms_json(&q, &report)),
                OutputArg::Dot => unreachable!(),
            }
        }
        Command::Repro { case } => repro(*case, cli.state_limit, out)?,
    }
    Ok(())
}

fn braces(parts: &[String]) -> String {
    format!("{{{}}}", parts.join(", "))
}

fn print_lts_text(l: &Lts) {
    println!(
        "states: {}  transitions: {}  initial: {}",
        l.num_states(),
        l.transitions().len(),
        l.initial()
    );
    for (i, e) in l.states().iter().enumerate() {
        println!("  {i}: {}", format_expr(e));
    }
    for (src, act, dst) in l.transitions() {
        println!("  {src} -{}-> {dst}", act.label());
    }
}

fn print_axioms_text(q: &ProcessQuotient, report: &AxiomReport) {
    println!(
        "classes: {} (semantics: {})",
        q.num_classes(),
        q.semantics().name()
    );
    for c in 0..q.num_classes() {
        println!("  [{c}] {}", format_expr(q.representative(c)));
    }
    for (name, res) in report.iter() {
        match res {
            AxiomResult::Pass => println!("{name}: pass"),
            AxiomResult::CappedPass => println!("{name}: pass (exponent search capped)"),
            AxiomResult::Fail { witness } => println!("{name}: fail  witness: {witness:?}"),
        }
    }
}

fn axioms_json(q: &ProcessQuotient, report: &AxiomReport) -> serde_json::Value {
    let classes: Vec<_> = (0..q.num_classes())
        .map(|c| json!({ "id": c, "repr": format_expr(q.representative(c)) }))
        .collect();
    let mut axioms = serde_json::Map::new();
    for (name, res) in report.iter() {
        let entry = match res {
            AxiomResult::Pass => json!({ "status": "pass" }),
            AxiomResult::CappedPass => json!({ "status": "capped_pass" }),
            AxiomResult::Fail { witness } => json!({ "status": "fail", "witness": witness }),
        };
        axioms.insert(name.to_string(), entry);
    }
    json!({
        "semantics": q.semantics().name(),
        "classes": classes,
        "axioms": axioms,
    })
}

struct Check {
    name: &'static str,
    ok: bool,
    detail: String,
}

impl Check {
    fn new(name: &'static str, ok: bool, detail: impl Into<String>) -> Check {
        Check {
            name,
            ok,
            detail: detail.into(),
        }
    }
}

fn repro(case: ReproCase, state_limit: usize, out: OutputArg) -> Result<(), Failure> {
    let checks = match case {
        ReproCase::Ex1 => repro_ex1(state_limit)?,
        ReproCase::Ex2 => repro_ex2(state_limit)?,
        ReproCase::Fig1 => repro_fig1(state_limit)?,
    };
    let case_name = match case {
        ReproCase::Ex1 => "ex1",
        ReproCase::Ex2 => "ex2",
        ReproCase::Fig1 => "fig1",
    };
    let failed = checks.iter().filter(|c| !c.ok).count();
    match out {
        OutputArg::Text => {
            for c in &checks {
                if c.ok {
                    println!("ok   {}", c.name);
                } else {
                    println!("FAIL {} ({})", c.name, c.detail);
                }
            }
            println!(
                "{case_name}: {}/{} checks passed",
                checks.len() - failed,
                checks.len()
            );
        }
        OutputArg::Json => {
            let list: Vec<_> = checks
                .iter()
                .map(|c| json!({ "name": c.name, "ok": c.ok, "detail": c.detail }))
                .collect();
            println!(
                "{}",
                json!({ "case": case_name, "ok": failed == 0, "checks": list })
            );
        }
        OutputArg::Dot => unreachable!(),
    }
    if failed > 0 {
        return Err(Failure::Analysis(format!(
            "{failed} expectation(s) of {case_name} failed"
        )));
    }
    Ok(())
}

fn must(expr: &str) -> ProcessExpr {
    parse_expr(expr).expect("built-in expression parses")
}

/// The single iterated action `a*0`: equivalent to a parallel copy of
/// itself, hence without any parallel decomposition, and a witness that
/// the quotient order violates the least-identity and archimedean axioms.
fn repro_ex1(state_limit: usize) -> Result<Vec<Check>, Failure> {
    let loop_expr = must("a*0");
    let doubled = must("a*0 || a*0");
    let mut checks = Vec::new();

    let eq = equivalent_with_limit(&loop_expr, &doubled, Semantics::Branching, state_limit)?;
    checks.push(Check::new(
        "iterated action absorbs a parallel copy of itself",
        eq,
        format!("equivalent = {eq}"),
    ));

    let d = parallel_decompositions_with_limit(&loop_expr, Semantics::Branching, state_limit)?;
    checks.push(Check::new(
        "no parallel decomposition exists",
        d.decompositions.is_empty() && !d.truncated,
        format!(
            "{} decompositions, truncated = {}",
            d.decompositions.len(),
            d.truncated
        ),
    ));

    let q = process_quotient(&loop_expr, Semantics::Branching, state_limit)?;
    let minimal = q.order().strictly_below(q.root_class()).is_empty();
    checks.push(Check::new(
        "class of the root is order-minimal",
        minimal,
        format!("strict predecessors of the root class exist = {}", !minimal),
    ));

    let report = check_axioms(q.monoid(), q.order(), q.num_classes() + 1);
    checks.push(Check::new(
        "identity fails to be a least element",
        matches!(report.least_identity, AxiomResult::Fail { .. }),
        format!("least_identity = {:?}", report.least_identity),
    ));
    checks.push(Check::new(
        "archimedean axiom fails",
        matches!(report.archimedean, AxiomResult::Fail { .. }),
        format!("archimedean = {:?}", report.archimedean),
    ));
    Ok(checks)
}

/// The two-component system with `P = a*tau.b.0` and `Q = b.0`: the pairs
/// `P‖P` and `P‖Q` are equivalent while `P` and `Q` are not, both
/// components have weak norm one, and `P‖P` admits two genuinely distinct
/// parallel decompositions.
fn repro_ex2(state_limit: usize) -> Result<Vec<Check>, Failure> {
    let p = must("a*tau.b.0");
    let q = must("b.0");
    let pp = must("(a*tau.b.0) || (a*tau.b.0)");
    let pq = must("(a*tau.b.0) || b.0");
    let mut checks = Vec::new();

    for sem in [Semantics::Branching, Semantics::Weak] {
        let eq = equivalent_with_limit(&pp, &pq, sem, state_limit)?;
        checks.push(Check::new(
            match sem {
                Semantics::Branching => "doubled and mixed compositions equivalent (branching)",
                _ => "doubled and mixed compositions equivalent (weak)",
            },
            eq,
            format!("equivalent = {eq}"),
        ));
        let neq = equivalent_with_limit(&p, &q, sem, state_limit)?;
        checks.push(Check::new(
            match sem {
                Semantics::Branching => "components distinguished (branching)",
                _ => "components distinguished (weak)",
            },
            !neq,
            format!("equivalent = {neq}"),
        ));
    }

    let lp = build_lts(&p, state_limit)?;
    let lq = build_lts(&q, state_limit)?;
    let np = weak_norm(&lp, lp.initial());
    let nq = weak_norm(&lq, lq.initial());
    checks.push(Check::new(
        "both components have weak norm one",
        np == pardec::norms::NormValue::Finite(1) && np == nq,
        format!("norms {np} and {nq}"),
    ));

    // The published witnessing relation: five pairs over the states of
    // the doubled system, closed under symmetry, together with the
    // diagonal.
    let l = build_lts(&pp, state_limit)?;
    let state = |text: &str| -> Result<usize, Failure> {
        l.find_state(&must(text)).ok_or_else(|| {
            Failure::Analysis(format!("expected state {text} missing from the system"))
        })
    };
    let mut pairs = vec![
        (state("(a*tau.b.0) || (a*tau.b.0)")?, state("(a*tau.b.0) || b.0")?),
        (state("(a*tau.b.0) || (a*tau.b.0)")?, state("b.0 || (a*tau.b.0)")?),
        (state("(a*tau.b.0) || b.0")?, state("b.0 || (a*tau.b.0)")?),
        (state("(a*tau.b.0) || 0")?, state("0 || (a*tau.b.0)")?),
        (state("b.0 || 0")?, state("0 || b.0")?),
    ];
    for s in 0..l.num_states() {
        pairs.push((s, s));
    }
    for sem in [Semantics::Branching, Semantics::Weak] {
        let verdict = check_relation(&l, &pairs, sem)
            .map_err(|e| Failure::Analysis(e.to_string()))?;
        checks.push(Check::new(
            match sem {
                Semantics::Branching => "witnessing relation checks out (branching)",
                _ => "witnessing relation checks out (weak)",
            },
            verdict.is_ok(),
            format!("{verdict:?}"),
        ));
    }

    for sem in [Semantics::Branching, Semantics::Weak] {
        let v = check_unique_with_limit(&pp, sem, state_limit)?;
        let detail = match (&v.first, &v.second) {
            (Some(f), Some(s)) => format!(
                "{} vs {}",
                braces(&f.iter().map(format_expr).collect::<Vec<_>>()),
                braces(&s.iter().map(format_expr).collect::<Vec<_>>())
            ),
            _ => format!("status {}", v.status),
        };
        checks.push(Check::new(
            match sem {
                Semantics::Branching => "two distinct decompositions (branching)",
                _ => "two distinct decompositions (weak)",
            },
            v.status == DecompStatus::Multiple,
            detail,
        ));
    }
    Ok(checks)
}

/// The transition graph of the doubled system: nine states, seventeen
/// transitions, with five visible self-loops.
fn repro_fig1(state_limit: usize) -> Result<Vec<Check>, Failure> {
    let l = build_lts(&must("(a*tau.b.0) || (a*tau.b.0)"), state_limit)?;
    let mut checks = Vec::new();
    checks.push(Check::new(
        "nine reachable states",
        l.num_states() == 9,
        format!("{} states", l.num_states()),
    ));
    checks.push(Check::new(
        "seventeen transitions",
        l.transitions().len() == 17,
        format!("{} transitions", l.transitions().len()),
    ));
    let mut loops_a = 0;
    let mut silent = 0;
    let mut visible_b = 0;
    for (src, act, dst) in l.transitions() {
        if act.is_silent() {
            silent += 1;
        } else if act.label() == "a" && src == dst {
            loops_a += 1;
        } else if act.label() == "b" {
            visible_b += 1;
        }
    }
    checks.push(Check::new(
        "five a-loops, six silent steps, six b-steps",
        loops_a == 5 && silent == 6 && visible_b == 6,
        format!("{loops_a} a-loops, {silent} silent, {visible_b} b"),
    ));
    Ok(checks)
}

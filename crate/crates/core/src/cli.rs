//! Command-line front end.
//!
//! Exit codes: 0 when the command ran, 2 for usage, parse and validation
//! errors, 3 when a policy class is larger than `--max-policies`.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::engine::{
    enumerate_policies, execute_policy, outcome_probability, outcomes, Outcome,
    DEFAULT_POLICY_LIMIT,
};
use crate::error::Error;
use crate::model::{parse_assignment, parse_instance, Instance, Policy, PolicyClass};
use crate::queries::{solve, Answer, Problem, Query, SolveMethod};
use crate::reductions::{generate, parse_x3c, reduce_x3c_to_balalt, Reduction};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_SIZE_LIMIT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "seqalloc", version, about = "Sequential allocation solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a policy and print the resulting assignment.
    Exec {
        file: PathBuf,
        #[arg(long)]
        policy: String,
        /// Print every pick before the assignment.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        pad_dummies: bool,
    },
    /// Answer a possible/necessary question.
    Query {
        file: PathBuf,
        #[arg(long)]
        problem: Problem,
        #[arg(long = "class", value_parser = parse_class)]
        class: PolicyClass,
        #[command(flatten)]
        target: TargetArgs,
        /// Use the agent's top k = m/n items as the set.
        #[arg(long)]
        top_k: bool,
        #[command(flatten)]
        config: Config,
    },
    /// Decide whether an assignment is possible or necessary for a class.
    CheckAssignment {
        file: PathBuf,
        #[arg(long)]
        assignment: PathBuf,
        #[arg(long = "class", value_parser = parse_class)]
        class: PolicyClass,
        #[arg(long)]
        mode: Mode,
        #[command(flatten)]
        config: Config,
    },
    /// List the policies of a class, or their distinct outcomes.
    Enumerate {
        file: PathBuf,
        #[arg(long = "class", value_parser = parse_class)]
        class: PolicyClass,
        #[arg(long)]
        distinct_outcomes: bool,
        #[arg(long, default_value_t = DEFAULT_POLICY_LIMIT, value_parser = clap::value_parser!(u64).range(1..))]
        max_policies: u64,
        #[arg(long)]
        pad_dummies: bool,
    },
    /// Fraction of the class whose outcome has a property, as `p/q`.
    Prob {
        file: PathBuf,
        #[arg(long = "class", value_parser = parse_class)]
        class: PolicyClass,
        /// Needed with --set to choose between exact set and subset.
        #[arg(long)]
        problem: Option<Problem>,
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, default_value_t = DEFAULT_POLICY_LIMIT, value_parser = clap::value_parser!(u64).range(1..))]
        max_policies: u64,
        #[arg(long)]
        pad_dummies: bool,
    },
    /// Write a generated hardness instance.
    Gen {
        reduction: Reduction,
        /// Possible-item source instance (exact-cover file for palla).
        source: PathBuf,
        #[arg(short = 'o', long = "output")]
        out: PathBuf,
        /// Source agent; defaults to the first agent.
        #[arg(long)]
        agent: Option<String>,
        /// Source item; defaults to the first item.
        #[arg(long)]
        item: Option<String>,
    },
}

#[derive(Args, Debug)]
struct TargetArgs {
    #[arg(long)]
    agent: Option<String>,
    #[arg(long)]
    item: Option<String>,
    /// Space-separated item names.
    #[arg(long)]
    set: Option<String>,
    /// Assignment file.
    #[arg(long)]
    assignment: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Config {
    #[arg(long, default_value = "auto")]
    method: SolveMethod,
    #[arg(long, default_value_t = DEFAULT_POLICY_LIMIT, value_parser = clap::value_parser!(u64).range(1..))]
    max_policies: u64,
    /// Also print the assignment the witness produces.
    #[arg(long)]
    witness: bool,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[arg(long)]
    pad_dummies: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Possible,
    Necessary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Machine,
}

fn parse_class(s: &str) -> Result<PolicyClass, String> {
    s.parse()
}

/// Failure of a command: an input problem or an oversized class.
enum Failure {
    Invalid(String),
    TooLarge(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeLimit { .. } => Failure::TooLarge(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::TooLarge(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_SIZE_LIMIT
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path, pad: bool) -> Result<Instance, Failure> {
    let inst = parse_instance(&read(path)?)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    Ok(if pad { inst.pad_dummies() } else { inst })
}

fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Exec {
            file,
            policy,
            trace,
            pad_dummies,
        } => {
            let inst = load(&file, pad_dummies)?;
            let pi = Policy::parse(&inst, &policy)?;
            let run = execute_policy(&inst, &pi)?;
            if trace {
                for step in &run.steps {
                    writeln!(
                        out,
                        "{}. {} takes {}",
                        step.turn + 1,
                        inst.agent_name(step.agent),
                        inst.item_name(step.item)
                    )?;
                }
            }
            write!(out, "{}", run.assignment.to_text(&inst))?;
        }
        Command::Query {
            file,
            problem,
            class,
            target,
            top_k,
            config,
        } => {
            let inst = load(&file, config.pad_dummies)?;
            let mut q = build_query(&inst, problem, class, &target)?;
            q.top_k = top_k;
            let ans = solve(&inst, &q, config.method, config.max_policies)?;
            report(&inst, &ans, &config, out)?;
        }
        Command::CheckAssignment {
            file,
            assignment,
            class,
            mode,
            config,
        } => {
            let inst = load(&file, config.pad_dummies)?;
            let m = parse_assignment(&read(&assignment)?, &inst)?;
            let problem = match mode {
                Mode::Possible => Problem::PossibleAssignment,
                Mode::Necessary => Problem::NecessaryAssignment,
            };
            let ans = solve(
                &inst,
                &Query::assignment(problem, class, m),
                config.method,
                config.max_policies,
            )?;
            report(&inst, &ans, &config, out)?;
        }
        Command::Enumerate {
            file,
            class,
            distinct_outcomes,
            max_policies,
            pad_dummies,
        } => {
            let inst = load(&file, pad_dummies)?;
            if distinct_outcomes {
                for m in outcomes(&inst, class, max_policies)? {
                    writeln!(out, "{}", m.to_inline(&inst))?;
                }
            } else {
                for pi in enumerate_policies(&inst, class, max_policies)? {
                    writeln!(out, "{}", pi.to_text(&inst))?;
                }
            }
        }
        Command::Prob {
            file,
            class,
            problem,
            target,
            max_policies,
            pad_dummies,
        } => {
            let inst = load(&file, pad_dummies)?;
            let outcome = prob_outcome(&inst, problem, &target)?;
            let p = outcome_probability(&inst, class, &outcome, max_policies)?;
            writeln!(out, "{}/{}", p.numer(), p.denom())?;
        }
        Command::Gen {
            reduction,
            source,
            out: path,
            agent,
            item,
        } => {
            let text = read(&source)?;
            let output = if reduction.from_x3c() {
                reduce_x3c_to_balalt(&parse_x3c(&text)?)?
            } else {
                let src = parse_instance(&text)?;
                let agent = match agent {
                    Some(name) => src.agent(&name)?,
                    None => 0,
                };
                let item = match item {
                    Some(name) => src.item(&name)?,
                    None if src.num_items() > 0 => 0,
                    None => return Err(Failure::Invalid("the source has no items".into())),
                };
                generate(reduction, &src, agent, item)?
            };
            let body = output.to_text();
            std::fs::write(&path, &body)
                .map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", path.display())))?;
            writeln!(
                out,
                "wrote {} ({} agents, {} items)",
                path.display(),
                output.instance.num_agents(),
                output.instance.num_items()
            )?;
            for line in body.lines().filter(|l| l.starts_with("# query:")) {
                writeln!(out, "{}", &line[2..])?;
            }
        }
    }
    Ok(())
}

fn item_list(inst: &Instance, text: &str) -> Result<Vec<usize>, Failure> {
    Ok(text
        .split_whitespace()
        .map(|name| inst.item(name))
        .collect::<Result<Vec<_>, _>>()?)
}

fn build_query(
    inst: &Instance,
    problem: Problem,
    cls: PolicyClass,
    target: &TargetArgs,
) -> Result<Query, Failure> {
    Ok(Query {
        problem,
        cls,
        agent: target.agent.as_deref().map(|a| inst.agent(a)).transpose()?,
        item: target.item.as_deref().map(|i| inst.item(i)).transpose()?,
        item_set: target
            .set
            .as_deref()
            .map(|s| item_list(inst, s))
            .transpose()?,
        target: match &target.assignment {
            Some(path) => Some(parse_assignment(&read(path)?, inst)?),
            None => None,
        },
        top_k: false,
    })
}

fn prob_outcome(
    inst: &Instance,
    problem: Option<Problem>,
    target: &TargetArgs,
) -> Result<Outcome, Failure> {
    let problem = match (problem, target) {
        (Some(p), _) => p,
        (
            None,
            TargetArgs {
                assignment: Some(_),
                ..
            },
        ) => Problem::PossibleAssignment,
        (None, TargetArgs { item: Some(_), .. }) => Problem::PossibleItem,
        (None, TargetArgs { set: Some(_), .. }) => {
            return Err(Failure::Invalid(
                "--set needs --problem to choose between set and subset".into(),
            ))
        }
        _ => {
            return Err(Failure::Invalid(
                "give --item, --set or --assignment to describe the outcome".into(),
            ))
        }
    };
    // the possible/necessary reading does not matter for a probability
    let q = build_query(inst, problem, PolicyClass::Arbitrary, target)?;
    Ok(q.outcome(inst)?)
}

fn report(inst: &Instance, ans: &Answer, config: &Config, out: &mut dyn Write) -> CmdResult {
    let decision = if ans.decision { "YES" } else { "NO" };
    let witness = ans.witness.as_ref().map(|w| w.to_text(inst));
    if config.output == Output::Machine {
        let record = json!({
            "decision": decision,
            "method": ans.method.name(),
            "derived_from_sketch": ans.derived_from_sketch,
            "witness": witness,
            "class_size": ans.class_size.as_ref().map(|c| c.to_string()),
        });
        writeln!(out, "{record}")?;
        return Ok(());
    }
    writeln!(out, "{decision}")?;
    if let Some(w) = &witness {
        writeln!(out, "witness: {w}")?;
        if config.witness {
            let m = execute_policy(inst, ans.witness.as_ref().unwrap())?.assignment;
            writeln!(out, "outcome: {}", m.to_inline(inst))?;
        }
    }
    let sketch = if ans.derived_from_sketch {
        " (derived from sketch)"
    } else {
        ""
    };
    writeln!(out, "method: {}{sketch}", ans.method)?;
    Ok(())
}

use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use lambdacc::ars::Verdict;
use lambdacc::enumerate::enumerate_terms;
use lambdacc::lab::{gallery_run, LabConfig, Property, Universe};
use lambdacc::measure::{measure, measure_val};
use lambdacc::par::{self, Mode};
use lambdacc::rewrite::{enumerate_redexes, Rule};
use lambdacc::strategy::{
    halts, iterated_strategy, leftmost, normalize_full, random_maximal, root_eval, weak_beta_c,
    Fuel, Outcome,
};
use lambdacc::syntax::{export_trace, parse_com, parse_val, print_cbv, print_ml, print_star};
use lambdacc::translate::{cc_to_kernel, cc_to_ml, cc_to_star};
use lambdacc::{ClosureClass, Com, RuleSet};

#[derive(Parser)]
#[command(name = "lambdacc", version, about = "Reduction, strategies and bounded checks for the computational lambda-calculus")]
struct Cli {
    /// Worker threads for `check` and `enumerate`.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Run universe checks on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Source {
    /// Term text; read from --file or stdin when absent.
    term: Option<String>,
    #[arg(long, conflicts_with = "term")]
    file: Option<PathBuf>,
}

impl Source {
    fn text(&self) -> Result<String> {
        match (&self.term, &self.file) {
            (Some(t), _) => Ok(t.clone()),
            (None, Some(f)) => std::fs::read_to_string(f).with_context(|| format!("reading {}", f.display())),
            (None, None) => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s).context("reading stdin")?;
                Ok(s)
            }
        }
    }
}

#[derive(Args)]
struct FuelArg {
    #[arg(long, env = "LAMBDACC_FUEL", default_value_t = Fuel::DEFAULT.0,
          value_parser = clap::value_parser!(u64).range(1..))]
    fuel: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Closure {
    Full,
    Surface,
    Weak,
}

impl From<Closure> for ClosureClass {
    fn from(c: Closure) -> Self {
        match c {
            Closure::Full => ClosureClass::Full,
            Closure::Surface => ClosureClass::Surface,
            Closure::Weak => ClosureClass::Weak,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    BetaC,
    Sigma,
    Id,
    Iota,
    Eta,
}

impl From<RuleArg> for Rule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::BetaC => Rule::BetaC,
            RuleArg::Sigma => Rule::Sigma,
            RuleArg::Id => Rule::Id,
            RuleArg::Iota => Rule::Iota,
            RuleArg::Eta => Rule::Eta,
        }
    }
}

#[derive(Args)]
struct RulesArg {
    #[arg(long, value_enum, default_value = "full")]
    closure: Closure,
    /// Comma-separated rules; the calculus' own rules by default.
    #[arg(long, value_enum, value_delimiter = ',', default_values = ["beta-c", "sigma", "id"])]
    rules: Vec<RuleArg>,
}

impl RulesArg {
    fn set(&self) -> RuleSet {
        RuleSet::of(&self.rules.iter().map(|r| Rule::from(*r)).collect::<Vec<_>>())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    WeakBeta,
    Root,
    IterWeak,
    IterSurface,
    FullRandom,
    Leftmost,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Ml,
    Star,
    Kernel,
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    Weak,
    Surface,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the canonical form of a term.
    Parse(Source),
    /// List the redexes of a term.
    Step {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        rules: RulesArg,
    },
    /// Reduce with a strategy; prints the last term or a JSON trace.
    Reduce {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value = "weak-beta")]
        strategy: Strategy,
        /// Closure and rules of `full-random` and `leftmost`.
        #[command(flatten)]
        rules: RulesArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        fuel: FuelArg,
        #[arg(long)]
        json: bool,
    },
    /// Reach the normal form of the whole calculus, if there is one.
    Normalize {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum, default_value = "surface")]
        via: Via,
        #[command(flatten)]
        fuel: FuelArg,
        #[arg(long)]
        json: bool,
    },
    /// Whether weak beta_c evaluation halts: true, false or unknown.
    Halts {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        fuel: FuelArg,
    },
    /// Translate into let notation, star notation or the CbV kernel.
    Translate {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Print "size aux" of the termination measure.
    Measure(Source),
    /// List all terms up to a node count.
    Enumerate {
        #[arg(long)]
        max_nodes: usize,
        #[arg(long)]
        closed: bool,
        /// Free variable names for open terms.
        #[arg(long, value_delimiter = ',', default_value = "z")]
        free: Vec<String>,
    },
    /// Run bounded property checks; one JSON report per line.
    Check {
        /// Properties to run; all of them when absent.
        #[arg(long, value_parser = property_name)]
        property: Vec<String>,
        #[arg(long, default_value_t = 9)]
        closed_nodes: usize,
        #[arg(long, default_value_t = 7)]
        open_nodes: usize,
    },
    /// Run the named examples against their expected verdicts.
    Gallery {
        #[arg(long)]
        json: bool,
    },
}

fn property_name(s: &str) -> Result<String, String> {
    match Property::from_name(s) {
        Some(p) => Ok(p.name().to_string()),
        None => Err(format!(
            "unknown property; expected one of {}",
            Property::ALL.map(Property::name).join(", ")
        )),
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Unknown => "unknown",
    }
}

/// A failure that maps to exit code 1 rather than 2.
struct CheckFailed;

fn parse(src: &Source) -> Result<Com> {
    let text = src.text()?;
    Ok(parse_com(text.trim())?)
}

fn show(o: &Outcome, json: bool) {
    if json {
        println!("{}", export_trace(o.trace()));
        return;
    }
    println!("{}", o.trace().last());
    match o {
        Outcome::NormalForm(..) => {}
        Outcome::Cycle(..) => eprintln!("cycle after {} steps", o.trace().len()),
        Outcome::FuelExhausted(t) => eprintln!("fuel exhausted after {} steps", t.len()),
    }
}

fn exec(cli: Cli) -> Result<Option<CheckFailed>> {
    let mode = if cli.sequential { Mode::Sequential } else { Mode::Parallel };
    if let Some(n) = cli.jobs {
        par::set_jobs(n);
    }
    match cli.cmd {
        Cmd::Parse(src) => println!("{}", parse(&src)?),
        Cmd::Step { src, rules } => {
            let t = parse(&src)?;
            for r in enumerate_redexes(&t, rules.closure.into(), rules.set()) {
                println!("{r}");
            }
        }
        Cmd::Reduce {
            src,
            strategy,
            rules,
            seed,
            fuel,
            json,
        } => {
            let t = parse(&src)?;
            let f = Fuel(fuel.fuel);
            let o = match strategy {
                Strategy::WeakBeta => weak_beta_c(&t, f),
                Strategy::Root => root_eval(&t, f),
                Strategy::IterWeak => iterated_strategy(&t, ClosureClass::Weak, f),
                Strategy::IterSurface => iterated_strategy(&t, ClosureClass::Surface, f),
                Strategy::FullRandom => random_maximal(&t, rules.closure.into(), rules.set(), seed, f),
                Strategy::Leftmost => leftmost(&t, rules.closure.into(), rules.set(), f),
            };
            show(&o, json);
        }
        Cmd::Normalize { src, via, fuel, json } => {
            let t = parse(&src)?;
            let e = match via {
                Via::Weak => ClosureClass::Weak,
                Via::Surface => ClosureClass::Surface,
            };
            show(&normalize_full(&t, e, Fuel(fuel.fuel)), json);
        }
        Cmd::Halts { src, fuel } => {
            let t = parse(&src)?;
            let v = match halts(&t, Fuel(fuel.fuel)) {
                Some(true) => "true",
                Some(false) => "false",
                None => "unknown",
            };
            println!("{v}");
        }
        Cmd::Translate { src, to } => {
            let t = parse(&src)?;
            let out = match to {
                Target::Ml => print_ml(&cc_to_ml(&t)),
                Target::Star => print_star(&cc_to_star(&t)),
                Target::Kernel => print_cbv(&cc_to_kernel(&t)),
            };
            println!("{out}");
        }
        Cmd::Measure(src) => {
            let text = src.text()?;
            let text = text.trim();
            let m = match parse_com(text) {
                Ok(t) => measure(&t),
                Err(e) => measure_val(&parse_val(text).map_err(|_| e)?),
            };
            println!("{} {}", m.size, m.aux);
        }
        Cmd::Enumerate { max_nodes, closed, free } => {
            if max_nodes == 0 {
                bail!("--max-nodes must be at least 1");
            }
            let free: Vec<&str> = free.iter().map(String::as_str).collect();
            for t in enumerate_terms(max_nodes, &free, closed) {
                println!("{t}");
            }
        }
        Cmd::Check {
            property,
            closed_nodes,
            open_nodes,
        } => {
            let props: Vec<Property> = if property.is_empty() {
                Property::ALL.to_vec()
            } else {
                property.iter().filter_map(|p| Property::from_name(p)).collect()
            };
            let u = Universe::new(closed_nodes, open_nodes);
            let cfg = LabConfig { mode, ..LabConfig::default() };
            let mut failed = false;
            for p in props {
                for r in p.run(&u, &cfg) {
                    println!("{}", serde_json::to_string(&r)?);
                    let tag = if r.ok() { "PASS" } else { "FAIL" };
                    let expect = if r.expect_fail { ", failure expected" } else { "" };
                    eprintln!("{tag} {} ({}{expect}, {} unknown)", r.property, verdict_name(r.verdict), r.unknown);
                    failed |= !r.ok();
                }
            }
            return Ok(failed.then_some(CheckFailed));
        }
        Cmd::Gallery { json } => {
            let mut failed = false;
            for r in gallery_run() {
                if json {
                    println!("{}", serde_json::to_string(&r)?);
                } else {
                    let expected = if r.expect_fail { "fail" } else { "pass" };
                    let got = verdict_name(r.verdict);
                    let tag = if r.ok() { "PASS" } else { "FAIL" };
                    println!("{tag} {} (expected {expected}, got {got})", r.property);
                }
                failed |= !r.ok();
            }
            return Ok(failed.then_some(CheckFailed));
        }
    }
    Ok(None)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match exec(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(CheckFailed)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

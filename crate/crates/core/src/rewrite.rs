//! Root rules, redex enumeration under the three context grammars, and
//! traces.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::term::{Com, Val, Var};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    BetaC,
    Sigma,
    Id,
    /// `id` steps whose argument is not a return.
    Iota,
    /// `λx.V!x → V`, a rewrite of values. Never in the default rule sets.
    Eta,
}

impl Rule {
    pub const ALL: [Rule; 5] = [Rule::BetaC, Rule::Sigma, Rule::Id, Rule::Iota, Rule::Eta];

    pub fn name(self) -> &'static str {
        match self {
            Rule::BetaC => "beta_c",
            Rule::Sigma => "sigma",
            Rule::Id => "id",
            Rule::Iota => "iota",
            Rule::Eta => "eta",
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A set of rules, iterated in the order `BetaC < Sigma < Id < Iota < Eta`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct RuleSet(u8);

impl RuleSet {
    pub const EMPTY: RuleSet = RuleSet(0);
    pub const BETA_C: RuleSet = RuleSet(1);
    pub const SIGMA: RuleSet = RuleSet(2);
    pub const ID: RuleSet = RuleSet(4);
    pub const IOTA: RuleSet = RuleSet(8);
    pub const ETA: RuleSet = RuleSet(16);
    /// `β_c ∪ σ`
    pub const SIGMA_BETA: RuleSet = RuleSet(3);
    /// `β_c ∪ σ ∪ id`, the reduction of the calculus.
    pub const LAMBDA_C: RuleSet = RuleSet(7);
    /// `β_c, σ, id, ι`
    pub const ALL: RuleSet = RuleSet(15);

    pub fn of(rules: &[Rule]) -> RuleSet {
        RuleSet(rules.iter().fold(0, |a, r| a | r.bit()))
    }

    pub fn contains(self, r: Rule) -> bool {
        self.0 & r.bit() != 0
    }

    pub fn union(self, other: RuleSet) -> RuleSet {
        RuleSet(self.0 | other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Rule> {
        Rule::ALL.into_iter().filter(move |r| self.contains(*r))
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.iter().map(Rule::name).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// One step down a computation. The derived order lists a node's subterms
/// left to right, so lexicographic path order is leftmost-outermost.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathToken {
    /// `!(λx.C)`
    RetBody,
    /// `(λx.C)M`
    FunBody,
    /// `V C`
    AppArg,
}

pub type Path = Vec<PathToken>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureClass {
    Full,
    Surface,
    Weak,
}

impl ClosureClass {
    pub fn admits(self, path: &[PathToken]) -> bool {
        match self {
            ClosureClass::Full => true,
            ClosureClass::Surface => !path.contains(&PathToken::RetBody),
            ClosureClass::Weak => path.iter().all(|t| *t == PathToken::AppArg),
        }
    }

    fn admits_token(self, t: PathToken) -> bool {
        self.admits(&[t])
    }

    /// The narrowest class containing the path.
    pub fn of_path(path: &[PathToken]) -> ClosureClass {
        if ClosureClass::Weak.admits(path) {
            ClosureClass::Weak
        } else if ClosureClass::Surface.admits(path) {
            ClosureClass::Surface
        } else {
            ClosureClass::Full
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClosureClass::Full => "full",
            ClosureClass::Surface => "surface",
            ClosureClass::Weak => "weak",
        }
    }
}

/// A redex: the rule applied at the computation reached by `path`. For `Eta`
/// the rewritten value is the one held directly by that computation.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct RedexOccurrence {
    pub path: Path,
    pub rule: Rule,
}

impl RedexOccurrence {
    pub fn new(path: Path, rule: Rule) -> Self {
        RedexOccurrence { path, rule }
    }

    pub fn root(rule: Rule) -> Self {
        RedexOccurrence {
            path: Vec::new(),
            rule,
        }
    }

    /// Closure class of the occurrence. Value rewrites (η) sit in no
    /// surface context.
    pub fn closure(&self) -> ClosureClass {
        if self.rule == Rule::Eta {
            ClosureClass::Full
        } else {
            ClosureClass::of_path(&self.path)
        }
    }
}

impl fmt::Display for RedexOccurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<_> = self
            .path
            .iter()
            .map(|t| match t {
                PathToken::RetBody => "ret_body",
                PathToken::FunBody => "fun_body",
                PathToken::AppArg => "app_arg",
            })
            .collect();
        write!(f, "{}@[{}]", self.rule, p.join(","))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RewriteError {
    #[error("no subterm at path")]
    BadPath,
    #[error("rule {0} does not match at the given path")]
    NoMatch(Rule),
}

fn eta_val(v: &Val) -> Option<Val> {
    if let Val::Abs(_, body) = v {
        if let Com::App(f, arg) = &**body {
            if **arg == Com::Ret(Val::Var(Var::Bound(0))) && !f.mentions(0) {
                return Some(f.shift(-1, 0));
            }
        }
    }
    None
}

fn is_identity(v: &Val) -> bool {
    matches!(v, Val::Abs(_, b) if **b == Com::Ret(Val::Var(Var::Bound(0))))
}

/// Contracts `t` at the root, if `rule` matches there.
pub fn root_step(rule: Rule, t: &Com) -> Option<Com> {
    match rule {
        Rule::BetaC => match t {
            Com::App(Val::Abs(_, body), arg) => match &**arg {
                Com::Ret(v) => Some(body.instantiate(v)),
                _ => None,
            },
            _ => None,
        },
        Rule::Sigma => match t {
            Com::App(Val::Abs(hy, n), arg) => match &**arg {
                Com::App(Val::Abs(hx, m), l) => {
                    // N moves under the x binder; indices make the side
                    // condition x ∉ fv(N) automatic.
                    let inner = Com::app(Val::Abs(hy.clone(), Box::new(n.shift(1, 1))), (**m).clone());
                    Some(Com::App(Val::Abs(hx.clone(), Box::new(inner)), l.clone()))
                }
                _ => None,
            },
            _ => None,
        },
        Rule::Id => match t {
            Com::App(f, arg) if is_identity(f) => Some((**arg).clone()),
            _ => None,
        },
        Rule::Iota => match t {
            Com::App(f, arg) if is_identity(f) && !arg.is_ret() => Some((**arg).clone()),
            _ => None,
        },
        Rule::Eta => match t {
            Com::Ret(v) => eta_val(v).map(Com::Ret),
            Com::App(v, m) => eta_val(v).map(|v2| Com::App(v2, m.clone())),
        },
    }
}

pub fn subterm_at<'a>(t: &'a Com, path: &[PathToken]) -> Option<&'a Com> {
    let Some((first, rest)) = path.split_first() else {
        return Some(t);
    };
    let next = match (first, t) {
        (PathToken::RetBody, Com::Ret(Val::Abs(_, b))) => b,
        (PathToken::FunBody, Com::App(Val::Abs(_, b), _)) => b,
        (PathToken::AppArg, Com::App(_, m)) => m,
        _ => return None,
    };
    subterm_at(next, rest)
}

/// Rebuilds `t` with the subterm at `path` replaced by `f` of it.
pub fn replace_at<F>(t: &Com, path: &[PathToken], f: F) -> Option<Com>
where
    F: FnOnce(&Com) -> Option<Com>,
{
    let Some((first, rest)) = path.split_first() else {
        return f(t);
    };
    match (first, t) {
        (PathToken::RetBody, Com::Ret(Val::Abs(h, b))) => {
            let b2 = replace_at(b, rest, f)?;
            Some(Com::Ret(Val::Abs(h.clone(), Box::new(b2))))
        }
        (PathToken::FunBody, Com::App(Val::Abs(h, b), m)) => {
            let b2 = replace_at(b, rest, f)?;
            Some(Com::App(Val::Abs(h.clone(), Box::new(b2)), m.clone()))
        }
        (PathToken::AppArg, Com::App(v, m)) => {
            let m2 = replace_at(m, rest, f)?;
            Some(Com::app(v.clone(), m2))
        }
        _ => None,
    }
}

fn collect(t: &Com, cls: ClosureClass, rules: RuleSet, path: &mut Path, out: &mut Vec<RedexOccurrence>) {
    for r in rules.iter() {
        if r == Rule::Eta && cls != ClosureClass::Full {
            continue;
        }
        if root_step(r, t).is_some() {
            out.push(RedexOccurrence::new(path.clone(), r));
        }
    }
    let mut go = |tok: PathToken, sub: &Com, path: &mut Path| {
        if cls.admits_token(tok) {
            path.push(tok);
            collect(sub, cls, rules, path, out);
            path.pop();
        }
    };
    match t {
        Com::Ret(Val::Abs(_, b)) => go(PathToken::RetBody, b, path),
        Com::Ret(Val::Var(_)) => {}
        Com::App(v, m) => {
            if let Val::Abs(_, b) = v {
                go(PathToken::FunBody, b, path);
            }
            go(PathToken::AppArg, m, path);
        }
    }
}

/// Every occurrence of a rule in `rules` at a position allowed by `cls`,
/// leftmost-outermost first.
pub fn enumerate_redexes(t: &Com, cls: ClosureClass, rules: RuleSet) -> Vec<RedexOccurrence> {
    let mut out = Vec::new();
    collect(t, cls, rules, &mut Vec::new(), &mut out);
    out
}

pub fn apply_redex(t: &Com, r: &RedexOccurrence) -> Result<Com, RewriteError> {
    subterm_at(t, &r.path).ok_or(RewriteError::BadPath)?;
    replace_at(t, &r.path, |s| root_step(r.rule, s)).ok_or(RewriteError::NoMatch(r.rule))
}

pub fn is_normal(t: &Com, cls: ClosureClass, rules: RuleSet) -> bool {
    enumerate_redexes(t, cls, rules).is_empty()
}

/// One-step reducts together with the occurrence contracted.
pub fn reducts(t: &Com, cls: ClosureClass, rules: RuleSet) -> Vec<(RedexOccurrence, Com)> {
    enumerate_redexes(t, cls, rules)
        .into_iter()
        .map(|r| {
            let s = apply_redex(t, &r).expect("enumerated redex applies");
            (r, s)
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
pub struct Counts {
    pub beta_c: u64,
    pub sigma: u64,
    pub id: u64,
    pub iota: u64,
    #[serde(skip)]
    pub eta: u64,
}

impl Counts {
    pub fn bump(&mut self, r: Rule) {
        match r {
            Rule::BetaC => self.beta_c += 1,
            Rule::Sigma => self.sigma += 1,
            Rule::Id => self.id += 1,
            Rule::Iota => self.iota += 1,
            Rule::Eta => self.eta += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.beta_c + self.sigma + self.id + self.iota + self.eta
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    NormalForm,
    Cycle,
    FuelExhausted,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraceStep {
    pub occurrence: RedexOccurrence,
    pub result: Com,
}

/// A reduction sequence with per-rule counters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trace {
    pub initial: Com,
    pub steps: Vec<TraceStep>,
    pub counts: Counts,
    pub status: Status,
}

impl Trace {
    pub fn new(initial: Com) -> Self {
        Trace {
            initial,
            steps: Vec::new(),
            counts: Counts::default(),
            status: Status::NormalForm,
        }
    }

    pub fn push(&mut self, occurrence: RedexOccurrence, result: Com) {
        self.counts.bump(occurrence.rule);
        self.steps.push(TraceStep { occurrence, result });
    }

    /// The last term of the sequence.
    pub fn last(&self) -> &Com {
        self.steps.last().map_or(&self.initial, |s| &s.result)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the steps from `initial`, checking each against its recorded
    /// result.
    pub fn replay(&self) -> Result<(), RewriteError> {
        let mut cur = self.initial.clone();
        for s in &self.steps {
            let next = apply_redex(&cur, &s.occurrence)?;
            if next != s.result {
                return Err(RewriteError::NoMatch(s.occurrence.rule));
            }
            cur = next;
        }
        Ok(())
    }
}

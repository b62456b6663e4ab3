//! The rewriting properties of λ_© checked over enumerated universes, and
//! the gallery of named examples.
//!
//! Each property has a per-term check, so a single term can be inspected
//! from the CLI or a test, and a universe runner producing `CheckReport`s.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::ars::{
    bounded_convertible, check_commutation, check_factorization, check_local_confluence,
    check_quasi_diamond, longest_path, reachable, Bounds, Check, CheckReport, Verdict,
};
use crate::enumerate::{enumerate_cbv, enumerate_ml, universe};
use crate::measure::measure;
use crate::par::{self, Mode};
use crate::rewrite::{
    enumerate_redexes, is_normal, reducts, root_step, ClosureClass, RedexOccurrence, Rule, RuleSet,
};
use crate::strategy::{
    halts, iterated_strategy, leftmost, normalize_full, random_maximal, root_eval, weak_beta_c,
    Fuel, Outcome,
};
use crate::syntax::{parse_com, parse_ml};
use crate::term::{named_constants, Com, Val};
use crate::translate::{
    beta_v_step, cbv_embed, cc_to_kernel, cc_to_ml, cc_to_star, kernel_to_cc, ml_step, ml_to_cc,
    star_step, star_to_cc, CbvTerm, MlClosure, MlTerm,
};

/// Search bounds of the factorization checks: e- and i-phases.
pub const FACT_SEARCH: Bounds = Bounds::new(12, 20_000);
/// Bounds of exhaustive reachability graphs.
pub const GRAPH: Bounds = Bounds::new(32, 5_000);
/// Join depth of the confluence checks.
pub const JOIN: Bounds = Bounds::new(4, 5_000);
/// Cones of the convertibility checks.
pub const CONVERT: Bounds = Bounds::new(8, 5_000);
/// Fuel of the deterministic evaluators inside checks.
pub const LAB_FUEL: Fuel = Fuel(2_000);
pub const SEEDS: u64 = 20;

type Step = Vec<(RedexOccurrence, Com)>;

/// `rules` closed under `cls`.
pub fn cc_step(cls: ClosureClass, rules: RuleSet) -> impl Fn(&Com) -> Step + Sync + Copy {
    move |t| reducts(t, cls, rules)
}

/// Steps under `outer` that are not `inner` steps.
pub fn beyond(inner: ClosureClass, outer: ClosureClass, rules: RuleSet) -> impl Fn(&Com) -> Step + Sync + Copy {
    move |t| {
        reducts(t, outer, rules)
            .into_iter()
            .filter(|(o, _)| !inner.admits(&o.path))
            .collect()
    }
}

fn beta_weight(o: &RedexOccurrence) -> u32 {
    u32::from(o.rule == Rule::BetaC)
}

fn no_weight(_: &RedexOccurrence) -> u32 {
    0
}

/// A set of start terms with a description for reports.
#[derive(Clone, Debug)]
pub struct Universe {
    pub terms: Vec<Com>,
    pub desc: String,
}

impl Universe {
    pub fn new(closed_nodes: usize, open_nodes: usize) -> Self {
        Universe {
            terms: universe(closed_nodes, open_nodes),
            desc: format!("closed<={closed_nodes} open<={open_nodes} over z"),
        }
    }

    pub fn of(terms: Vec<Com>, desc: impl Into<String>) -> Self {
        Universe {
            terms,
            desc: desc.into(),
        }
    }

    /// Puts `t` first, so its witness leads the report.
    pub fn with_first(&self, t: &Com) -> Self {
        let mut terms = vec![t.clone()];
        terms.extend(self.terms.iter().filter(|u| *u != t).cloned());
        Universe {
            terms,
            desc: format!("{} + {t}", self.desc),
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Default for Universe {
    fn default() -> Self {
        Universe::new(9, 7)
    }
}

/// Sizes of the sibling universes used by the translation checks.
#[derive(Clone, Copy, Debug)]
pub struct LabConfig {
    pub mode: Mode,
    pub cbv_closed: usize,
    pub cbv_open: usize,
    pub ml_nodes: usize,
}

impl Default for LabConfig {
    fn default() -> Self {
        LabConfig {
            mode: Mode::Parallel,
            cbv_closed: 8,
            cbv_open: 6,
            ml_nodes: 5,
        }
    }
}

fn run<F>(name: &str, u: &Universe, bounds: &str, mode: Mode, f: F) -> CheckReport
where
    F: Fn(&Com) -> Check + Sync + Send,
{
    CheckReport::from_checks(name, u.desc.clone(), bounds, par::map(&u.terms, mode, f))
}

// ---- factorization and postponement ----

/// Surface factorization of λ_© from `t`, sequences up to `seq_len`.
pub fn surface_fact_check(t: &Com, seq_len: usize) -> Check {
    let e = cc_step(ClosureClass::Surface, RuleSet::LAMBDA_C);
    let i = beyond(ClosureClass::Surface, ClosureClass::Full, RuleSet::LAMBDA_C);
    check_factorization(t, &e, &i, &no_weight, seq_len, FACT_SEARCH)
}

/// Weak factorization of λ_©, which the calculus lacks.
pub fn weak_fact_check(t: &Com, seq_len: usize) -> Check {
    let e = cc_step(ClosureClass::Weak, RuleSet::LAMBDA_C);
    let i = beyond(ClosureClass::Weak, ClosureClass::Full, RuleSet::LAMBDA_C);
    check_factorization(t, &e, &i, &no_weight, seq_len, FACT_SEARCH)
}

/// Weak factorization of surface σβ_c, preserving the β_c count.
pub fn weak_fact_count_check(t: &Com, seq_len: usize) -> Check {
    let e = cc_step(ClosureClass::Weak, RuleSet::SIGMA_BETA);
    let i = beyond(ClosureClass::Weak, ClosureClass::Surface, RuleSet::SIGMA_BETA);
    check_factorization(t, &e, &i, &beta_weight, seq_len, FACT_SEARCH)
}

/// Surface ι steps postpone after surface σβ_c steps.
pub fn iota_postpone_check(t: &Com, seq_len: usize) -> Check {
    let e = cc_step(ClosureClass::Surface, RuleSet::SIGMA_BETA);
    let i = cc_step(ClosureClass::Surface, RuleSet::IOTA);
    check_factorization(t, &e, &i, &no_weight, seq_len, FACT_SEARCH)
}

// ---- evaluation ----

fn graph_has_ret(t: &Com) -> Option<bool> {
    let g = reachable(t, cc_step(ClosureClass::Full, RuleSet::LAMBDA_C), GRAPH);
    if g.nodes.iter().any(Com::is_ret) {
        Some(true)
    } else if g.truncated {
        None
    } else {
        Some(false)
    }
}

fn returns(o: &Outcome) -> Option<bool> {
    match o {
        Outcome::NormalForm(n, _) => Some(n.is_ret()),
        Outcome::Cycle(..) => Some(false),
        Outcome::FuelExhausted(_) => None,
    }
}

/// Ret-reachability in the full graph, weak β_c evaluation and root
/// evaluation agree, and the two evaluators count the same β_c steps.
pub fn return_value_check(t: &Com) -> Check {
    let wb = weak_beta_c(t, LAB_FUEL);
    let re = root_eval(t, LAB_FUEL);
    let views = [
        ("graph", graph_has_ret(t)),
        ("weak_beta_c", returns(&wb)),
        ("root_eval", returns(&re)),
    ];
    let known: Vec<_> = views.iter().filter_map(|(n, v)| v.map(|b| (n, b))).collect();
    if known.windows(2).any(|w| w[0].1 != w[1].1) {
        let note = known.iter().map(|(n, b)| format!("{n}={b}")).collect::<Vec<_>>().join(" ");
        return Check::fail(vec![t.to_string()], note);
    }
    if returns(&wb) == Some(true) && returns(&re) == Some(true) && wb.beta_c() != re.beta_c() {
        return Check::fail(
            vec![t.to_string()],
            format!("beta_c counts differ: weak {} root {}", wb.beta_c(), re.beta_c()),
        );
    }
    if known.len() < views.len() {
        return Check::unknown(vec![t.to_string()], "a search was cut off");
    }
    Check::pass()
}

/// Summary of seeded maximal σβ_c sequences.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BetaCountStats {
    pub samples: u64,
    pub terminated: u64,
    pub cycled: u64,
    pub exhausted: u64,
    pub beta_counts: BTreeSet<u64>,
    pub finals: BTreeSet<String>,
}

pub fn beta_count_stats(t: &Com, cls: ClosureClass, samples: u64, fuel: Fuel) -> BetaCountStats {
    let mut s = BetaCountStats {
        samples,
        terminated: 0,
        cycled: 0,
        exhausted: 0,
        beta_counts: BTreeSet::new(),
        finals: BTreeSet::new(),
    };
    for seed in 0..samples {
        match random_maximal(t, cls, RuleSet::SIGMA_BETA, seed, fuel) {
            Outcome::NormalForm(n, tr) => {
                s.terminated += 1;
                s.beta_counts.insert(tr.counts.beta_c);
                s.finals.insert(n.to_string());
            }
            Outcome::Cycle(..) => s.cycled += 1,
            Outcome::FuelExhausted(_) => s.exhausted += 1,
        }
    }
    s
}

/// Uniform normalization of surface or weak σβ_c over `SEEDS` runs. A
/// cycle is a genuine infinite sequence; running out of fuel is not.
pub fn uniform_norm_check(t: &Com, cls: ClosureClass) -> Check {
    let s = beta_count_stats(t, cls, SEEDS, LAB_FUEL);
    let w = || vec![t.to_string()];
    if s.terminated == 0 {
        return Check::pass();
    }
    if s.cycled > 0 {
        return Check::fail(w(), format!("{} of {} runs terminated, {} cycled", s.terminated, s.samples, s.cycled));
    }
    if s.beta_counts.len() > 1 {
        return Check::fail(w(), format!("beta_c counts {:?}", s.beta_counts));
    }
    if cls == ClosureClass::Surface && s.finals.len() > 1 {
        return Check::fail(w(), format!("normal forms {:?}", s.finals));
    }
    if s.exhausted > 0 {
        return Check::unknown(w(), "some runs ran out of fuel");
    }
    Check::pass()
}

fn unique_nf(t: &Com, rules: RuleSet) -> Result<Option<Com>, Check> {
    let g = reachable(t, cc_step(ClosureClass::Full, rules), GRAPH);
    match g.normal_forms().as_slice() {
        [] => Ok(None),
        [n] => Ok(Some((*n).clone())),
        many => Err(Check::fail(
            std::iter::once(t.to_string()).chain(many.iter().map(|n| n.to_string())).collect(),
            format!("several {rules}-normal forms"),
        )),
    }
}

fn matches_nf(t: &Com, nf: &Com, o: &Outcome, who: &str) -> Check {
    match o {
        Outcome::NormalForm(n, _) if n == nf => Check::pass(),
        Outcome::FuelExhausted(_) => Check::unknown(vec![t.to_string(), nf.to_string()], format!("{who} ran out of fuel")),
        _ => Check::fail(vec![t.to_string(), nf.to_string()], format!("{who} missed the normal form")),
    }
}

/// When exhaustive search finds a σβ_c-normal form, both iterated
/// strategies reach it; likewise for λ_©-normal forms and `normalize_full`.
pub fn normalization_check(t: &Com) -> Check {
    let mut acc = Check::pass();
    match unique_nf(t, RuleSet::SIGMA_BETA) {
        Err(c) => return c,
        Ok(Some(nf)) => {
            for e in [ClosureClass::Weak, ClosureClass::Surface] {
                let who = format!("iterated {}", e.name());
                acc = acc.and(matches_nf(t, &nf, &iterated_strategy(t, e, LAB_FUEL), &who));
            }
        }
        Ok(None) => {}
    }
    match unique_nf(t, RuleSet::LAMBDA_C) {
        Err(c) => return c,
        Ok(Some(nf)) => {
            for e in [ClosureClass::Weak, ClosureClass::Surface] {
                let who = format!("normalize_full {}", e.name());
                acc = acc.and(matches_nf(t, &nf, &normalize_full(t, e, LAB_FUEL), &who));
            }
        }
        Ok(None) => {}
    }
    acc
}

/// Existence of a normal form per rule set: `None` if the graph was cut
/// off before one turned up.
fn has_nf(t: &Com, cls: ClosureClass, rules: RuleSet) -> Option<bool> {
    let g = reachable(t, cc_step(cls, rules), GRAPH);
    if !g.normal_forms().is_empty() {
        Some(true)
    } else if g.truncated {
        None
    } else {
        Some(false)
    }
}

/// λ_© has a normal form iff σβ_c has one.
pub fn iota_irrelevance_check(t: &Com) -> Check {
    match (has_nf(t, ClosureClass::Full, RuleSet::LAMBDA_C), has_nf(t, ClosureClass::Full, RuleSet::SIGMA_BETA)) {
        (Some(a), Some(b)) if a != b => {
            Check::fail(vec![t.to_string()], format!("lambda_c nf {a}, sigma_beta nf {b}"))
        }
        (Some(_), Some(_)) => Check::pass(),
        _ => Check::unknown(vec![t.to_string()], "graph cut off"),
    }
}

/// σβ_c-normalizing implies β_c-normalizing.
pub fn sigma_beta_to_beta_check(t: &Com) -> Check {
    match has_nf(t, ClosureClass::Full, RuleSet::SIGMA_BETA) {
        Some(true) => match has_nf(t, ClosureClass::Full, RuleSet::BETA_C) {
            Some(true) => Check::pass(),
            Some(false) => Check::fail(vec![t.to_string()], "no beta_c-normal form"),
            None => Check::unknown(vec![t.to_string()], "beta_c graph cut off"),
        },
        _ => Check::pass(),
    }
}

/// Surface σβ_c has at most one normal form in the bounded graph.
pub fn surface_unique_nf_check(t: &Com) -> Check {
    let g = reachable(t, cc_step(ClosureClass::Surface, RuleSet::SIGMA_BETA), GRAPH);
    let nfs = g.normal_forms();
    if nfs.len() > 1 {
        Check::fail(
            std::iter::once(t.to_string()).chain(nfs.iter().map(|n| n.to_string())).collect(),
            "two surface normal forms",
        )
    } else {
        Check::pass()
    }
}

// ---- measures ----

/// id steps shrink the size; σ steps keep it and shrink aux.
pub fn measure_descent_check(t: &Com) -> Check {
    let m = measure(t);
    for (o, s) in reducts(t, ClosureClass::Full, RuleSet::SIGMA.union(RuleSet::ID)) {
        let n = measure(&s);
        let ok = match o.rule {
            Rule::Sigma => n.size == m.size && n.aux < m.aux,
            _ => n.size < m.size,
        };
        if !ok {
            return Check::fail(
                vec![t.to_string(), s.to_string()],
                format!("{} step from ({},{}) to ({},{})", o.rule, m.size, m.aux, n.size, n.aux),
            );
        }
    }
    Check::pass()
}

/// No σ∪id sequence is longer than `size + aux`.
pub fn measure_bound_check(t: &Com) -> Check {
    let m = measure(t);
    match longest_path(t, &cc_step(ClosureClass::Full, RuleSet::SIGMA.union(RuleSet::ID)), GRAPH.max_nodes) {
        Some(n) if n as u64 <= m.size + m.aux => Check::pass(),
        Some(n) => Check::fail(vec![t.to_string()], format!("sequence of length {n}")),
        None => Check::unknown(vec![t.to_string()], "graph cut off"),
    }
}

// ---- confluence ----

/// One cell of the confluence matrix.
#[derive(Clone, Debug)]
pub struct MatrixCell {
    pub cls: ClosureClass,
    pub rules: RuleSet,
    /// Known counterexample; `None` for claimed-confluent cells.
    pub counterexample: Option<Com>,
}

impl MatrixCell {
    pub fn name(&self) -> String {
        format!("local-confluence {} {}", self.cls.name(), self.rules)
    }
}

/// Expected verdicts for β_c, σ, id and their unions, per closure.
pub fn confluence_matrix() -> Vec<MatrixCell> {
    let c = named_constants();
    let b = RuleSet::BETA_C;
    let s = RuleSet::SIGMA;
    let i = RuleSet::ID;
    let mut cells = Vec::new();
    for cls in [ClosureClass::Full, ClosureClass::Surface] {
        for rules in [b, i, s, b.union(i), b.union(s), b.union(s).union(i)] {
            cells.push(MatrixCell {
                cls,
                rules,
                counterexample: None,
            });
        }
        cells.push(MatrixCell {
            cls,
            rules: s.union(i),
            counterexample: Some(c.sigma_id_overlap.clone()),
        });
    }
    cells.push(MatrixCell {
        cls: ClosureClass::Weak,
        rules: i,
        counterexample: None,
    });
    for rules in [s, s.union(b), RuleSet::LAMBDA_C] {
        cells.push(MatrixCell {
            cls: ClosureClass::Weak,
            rules,
            counterexample: Some(c.weak_t.clone()),
        });
    }
    cells
}

fn confluence_reports(u: &Universe, mode: Mode) -> Vec<CheckReport> {
    let bounds = format!("join depth {} cap {}", JOIN.depth, JOIN.max_nodes);
    let mut out = Vec::new();
    for cell in confluence_matrix() {
        let step = cc_step(cell.cls, cell.rules);
        let r = match &cell.counterexample {
            None => run(&cell.name(), u, &bounds, mode, |t| check_local_confluence(t, &step, JOIN)),
            // Weak counterexamples exceed the universe; check them alone.
            Some(w) if cell.cls == ClosureClass::Weak => {
                let only = Universe::of(vec![w.clone()], w.to_string());
                run(&cell.name(), &only, &bounds, mode, |t| check_local_confluence(t, &step, JOIN))
                    .expecting_failure_at(w)
            }
            Some(w) => run(&cell.name(), &u.with_first(w), &bounds, mode, |t| {
                check_local_confluence(t, &step, JOIN)
            })
            .expecting_failure_at(w),
        };
        out.push(r);
    }
    let sb = cc_step(ClosureClass::Surface, RuleSet::BETA_C);
    out.push(run("quasi-diamond surface {beta_c}", u, "one step", mode, |t| check_quasi_diamond(t, &sb)));
    for cls in [ClosureClass::Full, ClosureClass::Surface] {
        let b = cc_step(cls, RuleSet::BETA_C);
        let i = cc_step(cls, RuleSet::ID);
        let name = format!("commutation {} beta_c/id", cls.name());
        out.push(run(&name, u, &bounds, mode, |t| check_commutation(t, &b, &i, JOIN)));
    }
    out
}

// ---- translations ----

fn set<T: Eq + std::hash::Hash>(xs: impl IntoIterator<Item = T>) -> HashSet<T> {
    xs.into_iter().collect()
}

/// Star notation: syntactic round trip and one-step simulation both ways.
pub fn star_check(t: &Com) -> Check {
    let p = cc_to_star(t);
    if star_to_cc(&p) != *t {
        return Check::fail(vec![t.to_string(), p.to_string()], "round trip changed the term");
    }
    let cc = set(reducts(t, ClosureClass::Full, RuleSet::LAMBDA_C).into_iter().map(|(o, s)| (o.rule, s)));
    let star = set(star_step(&p).into_iter().map(|(r, q)| (r, star_to_cc(&q))));
    let forward = set(cc.iter().map(|(r, s)| (*r, cc_to_star(s))));
    let star_raw = set(star_step(&p));
    if cc != star || forward != star_raw {
        return Check::fail(vec![t.to_string(), p.to_string()], "one-step reducts differ");
    }
    Check::pass()
}

/// Kernel of CbV: syntactic round trip and β_c/β_v simulation both ways.
pub fn kernel_check(t: &Com) -> Check {
    let k = cc_to_kernel(t);
    if !k.is_kernel() || kernel_to_cc(&k).as_ref() != Ok(t) {
        return Check::fail(vec![t.to_string(), k.to_string()], "round trip changed the term");
    }
    let cc = set(reducts(t, ClosureClass::Full, RuleSet::BETA_C).into_iter().map(|(_, s)| cc_to_kernel(&s)));
    let kv = set(beta_v_step(&k));
    let back = set(beta_v_step(&k).iter().map(kernel_to_cc));
    let cc_back = set(reducts(t, ClosureClass::Full, RuleSet::BETA_C).into_iter().map(|(_, s)| Ok(s)));
    if cc != kv || back != cc_back {
        return Check::fail(vec![t.to_string(), k.to_string()], "one-step reducts differ");
    }
    Check::pass()
}

/// Kernel terms map back to themselves through λ_©.
pub fn kernel_inverse_check(p: &CbvTerm) -> Check {
    match kernel_to_cc(p) {
        Ok(t) if cc_to_kernel(&t) == *p => Check::pass(),
        _ => Check::fail(vec![p.to_string()], "kernel round trip failed"),
    }
}

/// Every β_v step of `p` is simulated by at least one kernel step between
/// the embeddings.
pub fn embed_check(p: &CbvTerm) -> Check {
    let ep = cbv_embed(p);
    if !ep.is_kernel() {
        return Check::fail(vec![p.to_string(), ep.to_string()], "image is not a kernel term");
    }
    let step = |q: &CbvTerm| beta_v_step(q).into_iter().map(|r| ((), r)).collect::<Vec<_>>();
    let first = beta_v_step(&ep);
    let mut acc = Check::pass();
    for q in beta_v_step(p) {
        let eq = cbv_embed(&q);
        if first.contains(&eq) {
            continue;
        }
        let found = first.iter().any(|r| reachable(r, step, Bounds::new(4, 500)).contains(&eq));
        if !found {
            let terms = vec![p.to_string(), q.to_string(), eq.to_string()];
            acc = acc.and(Check::unknown(terms, "no simulating sequence within depth 5"));
        }
    }
    acc
}

/// Whether `t` has a subterm `x M` with `M` not a return.
pub fn has_var_app(t: &Com) -> bool {
    fn val(v: &Val) -> bool {
        matches!(v, Val::Abs(_, b) if has_var_app(b))
    }
    match t {
        Com::Ret(v) => val(v),
        Com::App(v, m) => (matches!(v, Val::Var(_)) && !m.is_ret()) || val(v) || has_var_app(m),
    }
}

/// λ_© → λ_ml* → λ_©: syntactic identity exactly on terms without an
/// `x M` subterm, and convertible with η in every case.
pub fn ml_cc_round_trip_check(t: &Com) -> Check {
    let back = ml_to_cc(&cc_to_ml(t));
    let terms = || vec![t.to_string(), back.to_string()];
    if (back == *t) == has_var_app(t) {
        return Check::fail(terms(), "syntactic round trip disagrees with the x M shape");
    }
    let step = cc_step(ClosureClass::Full, RuleSet::LAMBDA_C.union(RuleSet::ETA));
    match bounded_convertible(t, &back, &step, CONVERT) {
        Some(true) => Check::pass(),
        Some(false) => Check::fail(terms(), "not joinable with eta"),
        None => Check::unknown(terms(), "cones cut off"),
    }
}

/// λ_ml* → λ_© → λ_ml*: convertible in λ_ml*.
pub fn ml_round_trip_check(p: &MlTerm) -> Check {
    let back = cc_to_ml(&ml_to_cc(p));
    let step = |q: &MlTerm| ml_step(q, MlClosure::Full);
    match bounded_convertible(p, &back, &step, CONVERT) {
        Some(true) => Check::pass(),
        Some(false) => Check::fail(vec![p.to_string(), back.to_string()], "not joinable"),
        None => Check::unknown(vec![p.to_string(), back.to_string()], "cones cut off"),
    }
}

/// Kept apart from the universe runners: the full CbV universe is large.
pub fn cbv_universe(closed: usize, open: usize) -> Vec<CbvTerm> {
    let mut all = enumerate_cbv(closed, &[]);
    let closed_set: HashSet<_> = all.iter().cloned().collect();
    all.extend(enumerate_cbv(open, &["z"]).into_iter().filter(|p| !closed_set.contains(p)));
    all
}

fn translation_reports(u: &Universe, cfg: &LabConfig) -> Vec<CheckReport> {
    let mode = cfg.mode;
    let mut out = vec![
        run("star round trip and simulation", u, "exact", mode, star_check),
        run("kernel round trip and simulation", u, "exact", mode, kernel_check),
    ];
    let cbv = cbv_universe(cfg.cbv_closed, cfg.cbv_open);
    let cbv_desc = format!("cbv closed<={} open<={} over z", cfg.cbv_closed, cfg.cbv_open);
    let kernel: Vec<_> = cbv.iter().filter(|p| p.is_kernel()).cloned().collect();
    out.push(CheckReport::from_checks(
        "kernel inverse round trip",
        format!("kernel terms of {cbv_desc}"),
        "exact",
        par::map(&kernel, mode, kernel_inverse_check),
    ));
    out.push(CheckReport::from_checks(
        "cbv embedding simulation",
        cbv_desc,
        "depth 5 cap 500",
        par::map(&cbv, mode, embed_check),
    ));
    let conv = format!("cones depth {} cap {}", CONVERT.depth, CONVERT.max_nodes);
    out.push(run("ml round trip from lambda_c", u, &conv, mode, ml_cc_round_trip_check));
    let ml = enumerate_ml(cfg.ml_nodes, &["z"]);
    out.push(CheckReport::from_checks(
        "ml round trip from ml",
        format!("ml terms <={} nodes over z", cfg.ml_nodes),
        conv,
        par::map(&ml, mode, ml_round_trip_check),
    ));
    out.push(xm_report());
    out
}

/// `x(z!z)` and its round trip are not convertible without η.
pub fn xm_report() -> CheckReport {
    let t = parse_com("x(z!z)").expect("fixed term parses");
    let back = ml_to_cc(&cc_to_ml(&t));
    let step = cc_step(ClosureClass::Full, RuleSet::LAMBDA_C);
    let c = match bounded_convertible(&t, &back, &step, CONVERT) {
        Some(false) => Check::fail(vec![t.to_string(), back.to_string()], "round trip differs modulo lambda_c"),
        Some(true) => Check::pass(),
        None => Check::unknown(vec![t.to_string()], "cones cut off"),
    };
    CheckReport::from_checks("ml round trip of x M without eta", t.to_string(), "exact", vec![c]).expecting_failure_at(&t)
}

// ---- adequacy ----

/// Halting of weak β_c evaluation is invariant under every λ_© step.
pub fn adequacy_check(t: &Com) -> Check {
    let h = halts(t, LAB_FUEL);
    let mut acc = Check::pass();
    for (o, s) in reducts(t, ClosureClass::Full, RuleSet::LAMBDA_C) {
        let hs = halts(&s, LAB_FUEL);
        match (h, hs) {
            (Some(a), Some(b)) if a != b => {
                return Check::fail(vec![t.to_string(), s.to_string()], format!("{o}: halts {a} then {b}"));
            }
            (Some(_), Some(_)) => {}
            _ => acc = acc.and(Check::unknown(vec![t.to_string(), s.to_string()], "fuel ran out")),
        }
    }
    acc
}

// ---- property registry ----

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Property {
    SurfaceFact,
    WeakFact,
    WeakFactCount,
    IotaPostpone,
    UniformNorm,
    Normalization,
    MeasureDescent,
    ReturnValue,
    IotaIrrelevance,
    ConfluenceMatrix,
    Translations,
    Adequacy,
}

impl Property {
    pub const ALL: [Property; 12] = [
        Property::SurfaceFact,
        Property::WeakFact,
        Property::WeakFactCount,
        Property::IotaPostpone,
        Property::UniformNorm,
        Property::Normalization,
        Property::MeasureDescent,
        Property::ReturnValue,
        Property::IotaIrrelevance,
        Property::ConfluenceMatrix,
        Property::Translations,
        Property::Adequacy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::SurfaceFact => "surface-fact",
            Property::WeakFact => "weak-fact",
            Property::WeakFactCount => "weak-fact-count",
            Property::IotaPostpone => "iota-postpone",
            Property::UniformNorm => "uniform-norm",
            Property::Normalization => "normalization",
            Property::MeasureDescent => "measure-descent",
            Property::ReturnValue => "return-value",
            Property::IotaIrrelevance => "iota-irrelevance",
            Property::ConfluenceMatrix => "confluence-matrix",
            Property::Translations => "translations",
            Property::Adequacy => "adequacy",
        }
    }

    pub fn from_name(s: &str) -> Option<Property> {
        Property::ALL.into_iter().find(|p| p.name() == s)
    }

    pub fn run(self, u: &Universe, cfg: &LabConfig) -> Vec<CheckReport> {
        let mode = cfg.mode;
        let fact = format!("seq len 4, search depth {} cap {}", FACT_SEARCH.depth, FACT_SEARCH.max_nodes);
        let graph = format!("graph depth {} cap {}", GRAPH.depth, GRAPH.max_nodes);
        match self {
            Property::SurfaceFact => vec![run(self.name(), u, &fact, mode, |t| surface_fact_check(t, 4))],
            Property::WeakFact => {
                let vo = named_constants().van_oostrom;
                vec![run(self.name(), &u.with_first(&vo), &fact, mode, |t| weak_fact_check(t, 4)).expecting_failure_at(&vo)]
            }
            Property::WeakFactCount => vec![run(self.name(), u, &fact, mode, |t| weak_fact_count_check(t, 4))],
            Property::IotaPostpone => {
                let b = format!("seq len 3, search depth {} cap {}", FACT_SEARCH.depth, FACT_SEARCH.max_nodes);
                vec![run(self.name(), u, &b, mode, |t| iota_postpone_check(t, 3))]
            }
            Property::UniformNorm => {
                let b = format!("{SEEDS} seeds, fuel {}", LAB_FUEL.0);
                vec![
                    run("uniform-norm surface", u, &b, mode, |t| uniform_norm_check(t, ClosureClass::Surface)),
                    run("uniform-norm weak", u, &b, mode, |t| uniform_norm_check(t, ClosureClass::Weak)),
                ]
            }
            Property::Normalization => vec![run(self.name(), u, &graph, mode, normalization_check)],
            Property::MeasureDescent => vec![
                run(self.name(), u, "one step", mode, measure_descent_check),
                run("measure-bound", u, &graph, mode, measure_bound_check),
            ],
            Property::ReturnValue => vec![run(self.name(), u, &graph, mode, return_value_check)],
            Property::IotaIrrelevance => vec![
                run(self.name(), u, &graph, mode, iota_irrelevance_check),
                run("sigma-beta-to-beta", u, &graph, mode, sigma_beta_to_beta_check),
                run("surface-unique-nf", u, &graph, mode, surface_unique_nf_check),
            ],
            Property::ConfluenceMatrix => confluence_reports(u, mode),
            Property::Translations => translation_reports(u, cfg),
            Property::Adequacy => {
                let b = format!("fuel {}", LAB_FUEL.0);
                vec![run(self.name(), u, &b, mode, adequacy_check)]
            }
        }
    }
}

// ---- gallery ----

const GALLERY_TABLE: &str = include_str!("../data/gallery.txt");

/// Expected verdicts of the gallery, in file order.
pub fn gallery_expectations() -> Vec<(String, Verdict)> {
    GALLERY_TABLE
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, v) = l.split_once(char::is_whitespace).expect("gallery line has two fields");
            let v = match v.trim() {
                "pass" => Verdict::Pass,
                "fail" => Verdict::Fail,
                other => panic!("bad gallery verdict {other}"),
            };
            (name.to_string(), v)
        })
        .collect()
}

fn p(s: &str) -> Com {
    parse_com(s).expect("gallery term parses")
}

fn pm(s: &str) -> MlTerm {
    parse_ml(s).expect("gallery term parses")
}

fn holds(b: bool, terms: Vec<String>, note: &str) -> Check {
    if b {
        Check::pass()
    } else {
        Check::fail(terms, note)
    }
}

/// The let-term of the sequencing example, with `R = P = Q = L = z z`.
/// Its outer binder is `w` so that `R` keeps the free `z`.
pub fn sequencing_term() -> MlTerm {
    pm("let w = (let x = (let y = z z in z z) in z z) in z z")
}

fn scenario(name: &str) -> Option<Check> {
    let c = named_constants();
    let vo = &c.van_oostrom;
    let check = match name {
        "van-oostrom-no-weak-redex" => holds(
            enumerate_redexes(vo, ClosureClass::Weak, RuleSet::LAMBDA_C).is_empty(),
            vec![vo.to_string()],
            "weak redex found",
        ),
        "van-oostrom-full-two-steps" => {
            let o = leftmost(vo, ClosureClass::Full, RuleSet::of(&[Rule::BetaC, Rule::Id]), LAB_FUEL);
            let rules: Vec<_> = o.trace().steps.iter().map(|s| s.occurrence.rule).collect();
            holds(
                o.normal_form() == Some(&p("z!z")) && rules == [Rule::BetaC, Rule::Id],
                vec![vo.to_string()],
                "did not reach z!z in two steps",
            )
        }
        "weak-factorization-van-oostrom" => weak_fact_check(vo, 4),
        "weak-t-two-weak-normal-forms" => {
            let g = reachable(&c.weak_t, cc_step(ClosureClass::Weak, RuleSet::SIGMA), GRAPH);
            let nfs: HashSet<_> = g.normal_forms().into_iter().cloned().collect();
            let m2 = p("(\\y.(\\x.(\\z.z!z)(z!z))(z!z))(z!z)");
            let n2 = p("(\\y.(\\z.z!z)((\\x.z!z)(z!z)))(z!z)");
            holds(
                !g.truncated
                    && nfs == set([m2.clone(), n2.clone()])
                    && [m2, n2].iter().all(|n| is_normal(n, ClosureClass::Weak, RuleSet::LAMBDA_C)),
                vec![c.weak_t.to_string()],
                "weak sigma normal forms differ from M2, N2",
            )
        }
        "weak-sigma-local-confluence" => {
            check_local_confluence(&c.weak_t, &cc_step(ClosureClass::Weak, RuleSet::SIGMA), JOIN)
        }
        "m-z-beta-normal" => holds(
            is_normal(&c.blocked_beta_mz, ClosureClass::Full, RuleSet::BETA_C)
                && !is_normal(&c.blocked_beta_mz, ClosureClass::Full, RuleSet::LAMBDA_C),
            vec![c.blocked_beta_mz.to_string()],
            "M_z is not beta_c-normal or is normal",
        ),
        "m-z-surface-enters-cycle" => {
            let nz = p("(\\y.(\\x.x!x)!(\\x.x!x))(z!z)");
            let o = iterated_strategy(&c.blocked_beta_mz, ClosureClass::Surface, LAB_FUEL);
            let steps: Vec<_> = o.trace().steps.iter().map(|s| s.occurrence.rule).collect();
            let one_cycle = reducts(&nz, ClosureClass::Surface, RuleSet::SIGMA_BETA)
                .iter()
                .map(|(o, s)| (o.rule, s))
                .eq([(Rule::BetaC, &nz)]);
            holds(
                matches!(&o, Outcome::Cycle(t, _) if *t == nz) && steps == [Rule::Sigma, Rule::BetaC] && one_cycle,
                vec![c.blocked_beta_mz.to_string()],
                "surface strategy did not enter the N_z loop",
            )
        }
        "sigma-id-overlap-needs-beta" => {
            let t = &c.sigma_id_overlap;
            let a = root_step(Rule::Sigma, t).expect("sigma applies");
            let b = reducts(t, ClosureClass::Surface, RuleSet::ID).remove(0).1;
            let si = RuleSet::SIGMA.union(RuleSet::ID);
            let disjoint = bounded_convertible(&a, &b, &cc_step(ClosureClass::Surface, si), JOIN) == Some(false);
            let beta_closes = reducts(&a, ClosureClass::Surface, RuleSet::BETA_C).iter().any(|(_, s)| *s == b);
            holds(disjoint && beta_closes, vec![t.to_string(), a.to_string(), b.to_string()], "overlap closes differently")
        }
        "sigma-id-local-confluence" => check_local_confluence(
            &c.sigma_id_overlap,
            &cc_step(ClosureClass::Surface, RuleSet::SIGMA.union(RuleSet::ID)),
            JOIN,
        ),
        "let-sequencing-two-normal-forms" => {
            let t = sequencing_term();
            let step = |q: &MlTerm| ml_step(q, MlClosure::LetEval);
            let g = reachable(&t, step, GRAPH);
            let nfs: HashSet<_> = g.normal_forms().into_iter().cloned().collect();
            let t1 = pm("let y = z z in let x = z z in let w = z z in z z");
            let t2 = pm("let y = z z in let w = (let x = z z in z z) in z z");
            holds(!g.truncated && nfs == set([t1, t2]), vec![t.to_string()], "LetEval normal forms differ from T', T''")
        }
        "let-eval-local-confluence" => {
            check_local_confluence(&sequencing_term(), &|q: &MlTerm| ml_step(q, MlClosure::LetEval), JOIN)
        }
        "let-eta-no-sequencing-step" => {
            let m = pm("let y = z z in let x = [y] in [x]");
            let full = reachable(&m, |q: &MlTerm| ml_step(q, MlClosure::Full), GRAPH);
            holds(
                ml_step(&m, MlClosure::LetEval).is_empty() && full.contains(&pm("z z")),
                vec![m.to_string()],
                "sequencing step found or z z unreachable",
            )
        }
        "weak-id-nondeterministic-confluent" => {
            let t = p("(\\x.!x)(z((\\y.!y)(z!z)))");
            let step = cc_step(ClosureClass::Weak, RuleSet::ID);
            let two = enumerate_redexes(&t, ClosureClass::Weak, RuleSet::ID).len() == 2;
            holds(two, vec![t.to_string()], "expected two weak id redexes").and(check_local_confluence(&t, &step, JOIN))
        }
        "delta-bang-self-loop" => {
            let g = reachable(&c.delta_bang, cc_step(ClosureClass::Full, RuleSet::BETA_C), Bounds::new(3, 100));
            holds(
                g.len() == 1 && g.edges[0].iter().map(|(_, v)| *v).eq([0]),
                vec![c.delta_bang.to_string()],
                "not a single self-loop",
            )
        }
        "weak-t-uniform-beta-count" => {
            let s = beta_count_stats(&c.weak_t, ClosureClass::Weak, SEEDS, LAB_FUEL);
            holds(
                s.terminated == SEEDS && s.beta_counts == BTreeSet::from([0]),
                vec![c.weak_t.to_string()],
                "weak runs disagree on termination or beta_c count",
            )
        }
        _ => return None,
    };
    Some(check)
}

/// Runs every gallery scenario; each report's `ok` compares the outcome
/// with the shipped expectation.
pub fn gallery_run() -> Vec<CheckReport> {
    gallery_expectations()
        .into_iter()
        .map(|(name, expected)| {
            let check = scenario(&name).unwrap_or_else(|| panic!("unknown gallery scenario {name}"));
            let r = CheckReport::from_checks(name, "gallery", "fixed", vec![check]);
            if expected == Verdict::Fail {
                r.expecting_failure()
            } else {
                r
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn van_oostrom_breaks_weak_factorization() {
        let c = named_constants();
        let r = weak_fact_check(&c.van_oostrom, 4);
        assert_eq!(r.verdict, Verdict::Fail);
        let w = r.witness.unwrap();
        assert_eq!(w.terms, vec![c.van_oostrom.to_string(), "z!z".to_string()]);
        assert_eq!(surface_fact_check(&c.van_oostrom, 4).verdict, Verdict::Pass);
    }

    #[test]
    fn var_app_shape() {
        assert!(has_var_app(&p("x(z!z)")));
        assert!(has_var_app(&p("!(\\y.y(z!z))")));
        assert!(!has_var_app(&p("(\\y.y!y)(z!z)")));
        assert!(!has_var_app(&p("z!z")));
    }

    #[test]
    fn gallery_matches() {
        for r in gallery_run() {
            assert!(r.ok(), "{}: {:?}", r.property, r);
        }
    }

    #[test]
    fn stats_on_a_value() {
        let s = beta_count_stats(&p("!z"), ClosureClass::Surface, 3, LAB_FUEL);
        assert_eq!((s.terminated, s.beta_counts.len(), s.finals.len()), (3, 1, 1));
    }
}

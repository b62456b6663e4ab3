//! Bounded analysis of abstract rewriting systems given by a step function.
//!
//! A step function maps a term to its labelled one-step reducts. Nothing
//! here knows about a particular calculus; the λ_© instances live in `lab`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Display;
use std::hash::Hash;

use serde::Serialize;

/// Search limits: BFS depth and the node cap of a single graph.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Bounds {
    pub depth: usize,
    pub max_nodes: usize,
}

impl Bounds {
    pub const fn new(depth: usize, max_nodes: usize) -> Self {
        Bounds { depth, max_nodes }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionGraph<T, L> {
    pub nodes: Vec<T>,
    pub index: HashMap<T, usize>,
    /// Outgoing edges per node.
    pub edges: Vec<Vec<(L, usize)>>,
    pub depth: Vec<usize>,
    /// Whether the node's successors were computed.
    pub expanded: Vec<bool>,
    /// Some node with successors was left unexpanded.
    pub truncated: bool,
}

impl<T: Clone + Eq + Hash, L: Clone> ReductionGraph<T, L> {
    pub fn contains(&self, t: &T) -> bool {
        self.index.contains_key(t)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Expanded nodes without successors.
    pub fn normal_forms(&self) -> Vec<&T> {
        (0..self.nodes.len())
            .filter(|&i| self.expanded[i] && self.edges[i].is_empty())
            .map(|i| &self.nodes[i])
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }
}

/// Breadth-first exploration from `t`.
pub fn reachable<T, L, F>(t: &T, step: F, bounds: Bounds) -> ReductionGraph<T, L>
where
    T: Clone + Eq + Hash,
    L: Clone,
    F: Fn(&T) -> Vec<(L, T)>,
{
    let mut g = ReductionGraph {
        nodes: vec![t.clone()],
        index: HashMap::from([(t.clone(), 0)]),
        edges: vec![Vec::new()],
        depth: vec![0],
        expanded: vec![false],
        truncated: false,
    };
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let succ = step(&g.nodes[u]);
        if g.depth[u] >= bounds.depth {
            if !succ.is_empty() {
                g.truncated = true;
            }
            continue;
        }
        g.expanded[u] = true;
        for (l, s) in succ {
            let v = match g.index.get(&s) {
                Some(&v) => v,
                None => {
                    if g.nodes.len() >= bounds.max_nodes {
                        g.truncated = true;
                        g.expanded[u] = false;
                        continue;
                    }
                    let v = g.nodes.len();
                    g.index.insert(s.clone(), v);
                    g.nodes.push(s);
                    g.edges.push(Vec::new());
                    g.depth.push(g.depth[u] + 1);
                    g.expanded.push(false);
                    queue.push_back(v);
                    v
                }
            };
            g.edges[u].push((l, v));
        }
    }
    g
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

/// A counterexample, printed so it can be replayed from the CLI.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Witness {
    pub terms: Vec<String>,
    pub note: String,
}

/// Result of a check on one start term.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Check {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass() -> Self {
        Check {
            verdict: Verdict::Pass,
            witness: None,
        }
    }

    pub fn fail(terms: Vec<String>, note: impl Into<String>) -> Self {
        Check {
            verdict: Verdict::Fail,
            witness: Some(Witness {
                terms,
                note: note.into(),
            }),
        }
    }

    pub fn unknown(terms: Vec<String>, note: impl Into<String>) -> Self {
        Check {
            verdict: Verdict::Unknown,
            witness: Some(Witness {
                terms,
                note: note.into(),
            }),
        }
    }

    /// Folds another result in: fail beats unknown beats pass.
    pub fn and(self, other: Check) -> Check {
        match (self.verdict, other.verdict) {
            (Verdict::Fail, _) => self,
            (_, Verdict::Fail) => other,
            (Verdict::Unknown, _) => self,
            (_, Verdict::Unknown) => other,
            _ => self,
        }
    }
}

/// Outcome of a property over a universe of start terms.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckReport {
    pub property: String,
    pub universe: String,
    pub bounds: String,
    pub verdict: Verdict,
    /// The property is expected to fail; `ok` then requires a failure.
    pub expect_fail: bool,
    /// Start term the expected failure must be witnessed by.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_witness: Option<String>,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub unknown: usize,
    pub witnesses: Vec<Witness>,
}

const MAX_WITNESSES: usize = 8;

impl CheckReport {
    pub fn from_checks(
        property: impl Into<String>,
        universe: impl Into<String>,
        bounds: impl Into<String>,
        checks: Vec<Check>,
    ) -> Self {
        let mut r = CheckReport {
            property: property.into(),
            universe: universe.into(),
            bounds: bounds.into(),
            verdict: Verdict::Pass,
            expect_fail: false,
            expected_witness: None,
            instances: checks.len(),
            passed: 0,
            failed: 0,
            unknown: 0,
            witnesses: Vec::new(),
        };
        let mut unknown_witnesses = Vec::new();
        for c in checks {
            match c.verdict {
                Verdict::Pass => r.passed += 1,
                Verdict::Fail => {
                    r.failed += 1;
                    if r.witnesses.len() < MAX_WITNESSES {
                        r.witnesses.extend(c.witness);
                    }
                }
                Verdict::Unknown => {
                    r.unknown += 1;
                    if unknown_witnesses.len() < MAX_WITNESSES {
                        unknown_witnesses.extend(c.witness);
                    }
                }
            }
        }
        r.verdict = if r.failed > 0 {
            Verdict::Fail
        } else if r.unknown > 0 {
            Verdict::Unknown
        } else {
            Verdict::Pass
        };
        if r.failed == 0 {
            r.witnesses = unknown_witnesses;
        }
        r
    }

    pub fn expecting_failure(mut self) -> Self {
        self.expect_fail = true;
        self
    }

    /// Expects a failure witnessed by the start term `t`.
    pub fn expecting_failure_at(mut self, t: impl Display) -> Self {
        self.expect_fail = true;
        self.expected_witness = Some(t.to_string());
        self
    }

    /// Whether the outcome matches the expectation: no failure for a theorem, a
    /// failure (at the named witness, if any) for a claimed counterexample.
    pub fn ok(&self) -> bool {
        if self.expect_fail {
            self.verdict == Verdict::Fail
                && self.expected_witness.as_deref().map_or(true, |w| self.has_witness(w))
        } else {
            self.failed == 0
        }
    }

    pub fn unknown_ratio(&self) -> f64 {
        if self.instances == 0 {
            0.0
        } else {
            self.unknown as f64 / self.instances as f64
        }
    }

    pub fn has_witness(&self, term: &str) -> bool {
        self.witnesses.iter().any(|w| w.terms.first().map(String::as_str) == Some(term))
    }
}

/// Set of `(term, weight)` states reachable with up to `depth` steps.
fn weighted_closure<T, L, F, W>(
    starts: &[(T, u32)],
    step: &F,
    weight: &W,
    bounds: Bounds,
) -> (HashSet<(T, u32)>, bool)
where
    T: Clone + Eq + Hash,
    F: Fn(&T) -> Vec<(L, T)>,
    W: Fn(&L) -> u32,
{
    let mut seen: HashSet<(T, u32)> = starts.iter().cloned().collect();
    let mut frontier: Vec<(T, u32)> = seen.iter().cloned().collect();
    let mut truncated = false;
    for _ in 0..bounds.depth {
        let mut next = Vec::new();
        for (t, w) in &frontier {
            for (l, s) in step(t) {
                let st = (s, w + weight(&l));
                if seen.contains(&st) {
                    continue;
                }
                if seen.len() >= bounds.max_nodes {
                    truncated = true;
                    continue;
                }
                seen.insert(st.clone());
                next.push(st);
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    if !frontier.is_empty() && frontier.iter().any(|(t, _)| !step(t).is_empty()) {
        truncated = true;
    }
    (seen, truncated)
}

/// Factorization by search: every `(e ∪ i)`-sequence from `t` of length at
/// most `seq_len` must be matched by some `e* · i*` path to the same end
/// with the same total `weight` (use a zero weight to ignore counts).
pub fn check_factorization<T, L, E, I, W>(
    t: &T,
    e: &E,
    i: &I,
    weight: &W,
    seq_len: usize,
    search: Bounds,
) -> Check
where
    T: Clone + Eq + Hash + Display,
    E: Fn(&T) -> Vec<(L, T)>,
    I: Fn(&T) -> Vec<(L, T)>,
    W: Fn(&L) -> u32,
{
    let union = |u: &T| {
        let mut v = e(u);
        v.extend(i(u));
        v
    };
    let start = vec![(t.clone(), 0)];
    let (targets, _) = weighted_closure(&start, &union, weight, Bounds::new(seq_len, usize::MAX));
    let (e_set, e_trunc) = weighted_closure(&start, e, weight, search);
    let e_states: Vec<_> = e_set.into_iter().collect();
    let (ei_set, i_trunc) = weighted_closure(&e_states, i, weight, search);
    let mut missing: Vec<_> = targets.iter().filter(|s| !ei_set.contains(s)).collect();
    if missing.is_empty() {
        return Check::pass();
    }
    missing.sort_by_key(|(n, w)| (n.to_string(), *w));
    let (n, w) = missing[0];
    let terms = vec![t.to_string(), n.to_string()];
    let note = format!("no e*·i* path to the target with weight {w}");
    if e_trunc || i_trunc {
        Check::unknown(terms, note)
    } else {
        Check::fail(terms, note)
    }
}

fn distinct_reducts<T, L, F>(t: &T, step: &F) -> Vec<T>
where
    T: Clone + Eq + Hash,
    F: Fn(&T) -> Vec<(L, T)>,
{
    let mut seen = HashSet::new();
    step(t)
        .into_iter()
        .map(|(_, s)| s)
        .filter(|s| seen.insert(s.clone()))
        .collect()
}

fn joinable<T, L, F, G>(a: &T, b: &T, sa: &F, sb: &G, bounds: Bounds) -> Option<bool>
where
    T: Clone + Eq + Hash,
    L: Clone,
    F: Fn(&T) -> Vec<(L, T)>,
    G: Fn(&T) -> Vec<(L, T)>,
{
    if a == b {
        return Some(true);
    }
    let ga = reachable(a, sa, bounds);
    let gb = reachable(b, sb, bounds);
    let (small, large) = if ga.len() <= gb.len() { (&ga, &gb) } else { (&gb, &ga) };
    if small.nodes.iter().any(|n| large.contains(n)) {
        Some(true)
    } else if ga.truncated || gb.truncated {
        None
    } else {
        Some(false)
    }
}

/// Every one-step peak `a ← t → b` joins within `bounds.depth` steps on
/// each side.
pub fn check_local_confluence<T, L, F>(t: &T, step: &F, bounds: Bounds) -> Check
where
    T: Clone + Eq + Hash + Display,
    L: Clone,
    F: Fn(&T) -> Vec<(L, T)>,
{
    let rs = distinct_reducts(t, step);
    let mut acc = Check::pass();
    for x in 0..rs.len() {
        for y in x + 1..rs.len() {
            let terms = || vec![t.to_string(), rs[x].to_string(), rs[y].to_string()];
            match joinable(&rs[x], &rs[y], step, step, bounds) {
                Some(true) => {}
                Some(false) => return Check::fail(terms(), "peak does not join"),
                None => acc = acc.and(Check::unknown(terms(), "join search truncated")),
            }
        }
    }
    acc
}

/// Every peak of distinct reducts closes in exactly one step on each side.
pub fn check_quasi_diamond<T, L, F>(t: &T, step: &F) -> Check
where
    T: Clone + Eq + Hash + Display,
    F: Fn(&T) -> Vec<(L, T)>,
{
    let rs = distinct_reducts(t, step);
    let next: Vec<HashSet<T>> = rs.iter().map(|r| distinct_reducts(r, step).into_iter().collect()).collect();
    for x in 0..rs.len() {
        for y in x + 1..rs.len() {
            if next[x].is_disjoint(&next[y]) {
                return Check::fail(
                    vec![t.to_string(), rs[x].to_string(), rs[y].to_string()],
                    "no common one-step reduct",
                );
            }
        }
    }
    Check::pass()
}

/// Commutation of two relations from `t`: for `a ←1 t →2 b` there is `c`
/// with `a →2* c` and `b →1* c`.
pub fn check_commutation<T, L, F, G>(t: &T, s1: &F, s2: &G, bounds: Bounds) -> Check
where
    T: Clone + Eq + Hash + Display,
    L: Clone,
    F: Fn(&T) -> Vec<(L, T)>,
    G: Fn(&T) -> Vec<(L, T)>,
{
    let r1 = distinct_reducts(t, s1);
    let r2 = distinct_reducts(t, s2);
    let mut acc = Check::pass();
    for a in &r1 {
        for b in &r2 {
            let terms = || vec![t.to_string(), a.to_string(), b.to_string()];
            match joinable(a, b, s2, s1, bounds) {
                Some(true) => {}
                Some(false) => return Check::fail(terms(), "diagram does not close"),
                None => acc = acc.and(Check::unknown(terms(), "join search truncated")),
            }
        }
    }
    acc
}

/// Strong postponement from `t`: `t →i u →e s` implies `t →e* · →i= s`.
pub fn check_strong_postponement<T, L, E, I>(t: &T, e: &E, i: &I, bounds: Bounds) -> Check
where
    T: Clone + Eq + Hash + Display,
    L: Clone,
    E: Fn(&T) -> Vec<(L, T)>,
    I: Fn(&T) -> Vec<(L, T)>,
{
    let mut g: Option<ReductionGraph<T, L>> = None;
    let mut acc = Check::pass();
    for u in distinct_reducts(t, i) {
        for s in distinct_reducts(&u, e) {
            let g = g.get_or_insert_with(|| reachable(t, e, bounds));
            if g.contains(&s) || g.nodes.iter().any(|w| i(w).iter().any(|(_, x)| *x == s)) {
                continue;
            }
            let terms = vec![t.to_string(), u.to_string(), s.to_string()];
            if g.truncated {
                acc = acc.and(Check::unknown(terms, "e-search truncated"));
            } else {
                return Check::fail(terms, "no e*·i= path");
            }
        }
    }
    acc
}

/// Joinability of `a` and `b` by forward search from both: `Some(true)` if
/// the cones meet, `Some(false)` if both cones are finite and disjoint,
/// `None` if a search was cut off. For a confluent relation `Some(false)`
/// refutes convertibility.
pub fn bounded_convertible<T, L, F>(a: &T, b: &T, step: &F, bounds: Bounds) -> Option<bool>
where
    T: Clone + Eq + Hash,
    L: Clone,
    F: Fn(&T) -> Vec<(L, T)>,
{
    joinable(a, b, step, step, bounds)
}

/// Length of the longest path from `t`, for a terminating step function.
/// `None` if the graph is cut off or has a cycle.
pub fn longest_path<T, L, F>(t: &T, step: &F, max_nodes: usize) -> Option<usize>
where
    T: Clone + Eq + Hash,
    L: Clone,
    F: Fn(&T) -> Vec<(L, T)>,
{
    let g = reachable(t, step, Bounds::new(usize::MAX, max_nodes));
    if g.truncated {
        return None;
    }
    // Iterative DFS with colours for cycle detection.
    let n = g.len();
    let mut best: Vec<Option<usize>> = vec![None; n];
    let mut state = vec![0u8; n];
    let mut stack = vec![(0usize, 0usize)];
    state[0] = 1;
    while let Some(&mut (u, ref mut k)) = stack.last_mut() {
        if *k < g.edges[u].len() {
            let v = g.edges[u][*k].1;
            *k += 1;
            match state[v] {
                0 => {
                    state[v] = 1;
                    stack.push((v, 0));
                }
                1 => return None,
                _ => {}
            }
        } else {
            let b = g.edges[u].iter().map(|(_, v)| best[*v].unwrap() + 1).max().unwrap_or(0);
            best[u] = Some(b);
            state[u] = 2;
            stack.pop();
        }
    }
    best[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    // A toy ARS on integers: n → n-1 and n → n-2 for n ≥ 2, 1 → 0.
    fn down(n: &u32) -> Vec<(char, u32)> {
        match *n {
            0 => vec![],
            1 => vec![('a', 0)],
            n => vec![('a', n - 1), ('b', n - 2)],
        }
    }

    #[test]
    fn graph_and_truncation() {
        let g = reachable(&5u32, down, Bounds::new(10, 100));
        assert_eq!(g.len(), 6);
        assert!(!g.truncated);
        assert_eq!(g.normal_forms(), vec![&0]);
        let h = reachable(&5u32, down, Bounds::new(1, 100));
        assert!(h.truncated);
        let single = reachable(&0u32, down, Bounds::new(5, 100));
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn confluence_of_a_confluent_toy() {
        assert_eq!(check_local_confluence(&6u32, &down, Bounds::new(4, 100)).verdict, Verdict::Pass);
        assert_eq!(check_quasi_diamond(&6u32, &down).verdict, Verdict::Pass);
        assert_eq!(longest_path(&6u32, &down, 100), Some(6));
    }

    #[test]
    fn non_confluent_toy() {
        // 0 → 1, 0 → 2, both normal.
        let s = |n: &u32| if *n == 0 { vec![((), 1u32), ((), 2)] } else { vec![] };
        let c = check_local_confluence(&0u32, &s, Bounds::new(4, 100));
        assert_eq!(c.verdict, Verdict::Fail);
        assert_eq!(c.witness.unwrap().terms, vec!["0", "1", "2"]);
        assert_eq!(bounded_convertible(&1u32, &2, &s, Bounds::new(4, 100)), Some(false));
        assert_eq!(bounded_convertible(&0u32, &2, &s, Bounds::new(4, 100)), Some(true));
    }

    #[test]
    fn factorization_toy() {
        // e: even → even-2, i: n → n-1. Any e/i mix factorizes here.
        let e = |n: &u32| if *n >= 2 && n % 2 == 0 { vec![('e', n - 2)] } else { vec![] };
        let i = |n: &u32| if *n >= 1 { vec![('i', n - 1)] } else { vec![] };
        let c = check_factorization(&6u32, &e, &i, &|_: &char| 0, 4, Bounds::new(8, 1000));
        assert_eq!(c.verdict, Verdict::Pass);
        // With i empty the check is trivial.
        let none = |_: &u32| Vec::<(char, u32)>::new();
        assert_eq!(check_factorization(&6u32, &e, &none, &|_: &char| 0, 4, Bounds::new(8, 1000)).verdict, Verdict::Pass);
        // e only from 1 → 0; i: 2 → 1. Then 2 →i 1 →e 0 cannot put e first.
        let e2 = |n: &u32| if *n == 1 { vec![('e', 0)] } else { vec![] };
        let i2 = |n: &u32| if *n == 2 { vec![('i', 1)] } else { vec![] };
        let f = check_factorization(&2u32, &e2, &i2, &|_: &char| 0, 4, Bounds::new(8, 1000));
        assert_eq!(f.verdict, Verdict::Fail);
        assert_eq!(check_strong_postponement(&2u32, &e2, &i2, Bounds::new(8, 100)).verdict, Verdict::Fail);
    }

    #[test]
    fn report_aggregation() {
        let r = CheckReport::from_checks("p", "u", "b", vec![Check::pass(), Check::unknown(vec!["t".into()], "cut")]);
        assert_eq!(r.verdict, Verdict::Unknown);
        assert!(r.ok());
        let f = CheckReport::from_checks("p", "u", "b", vec![Check::fail(vec!["t".into()], "no")]).expecting_failure();
        assert!(f.ok() && f.has_witness("t"));
    }
}

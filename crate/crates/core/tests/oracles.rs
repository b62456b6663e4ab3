//! Cross-checks against a second, deliberately naive implementation: named
//! variables, capture-avoiding substitution by fresh renaming, and rules
//! matched on the named tree. Terms cross back into the library through
//! its parser.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::atomic::{AtomicUsize, Ordering};

use lambdacc::enumerate::{enumerate_terms, universe};
use lambdacc::lab::{LabConfig, Property, Universe};
use lambdacc::measure::{measure, measure_val};
use lambdacc::par::Mode;
use lambdacc::rewrite::{apply_redex, reducts, PathToken, RedexOccurrence};
use lambdacc::strategy::{iterated_strategy, root_eval, Fuel};
use lambdacc::syntax::{parse_com, parse_val, print_ml};
use lambdacc::term::named_constants;
use lambdacc::translate::cc_to_ml;
use lambdacc::{ClosureClass, Com, Rule, RuleSet, Val, Var};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum NV {
    Var(String),
    Lam(String, Box<NC>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum NC {
    Ret(NV),
    App(NV, Box<NC>),
}

static FRESH: AtomicUsize = AtomicUsize::new(0);

fn fresh() -> String {
    format!("f{}", FRESH.fetch_add(1, Ordering::Relaxed))
}

fn fv_v(v: &NV, out: &mut BTreeSet<String>) {
    match v {
        NV::Var(x) => {
            out.insert(x.clone());
        }
        NV::Lam(x, b) => {
            let mut inner = BTreeSet::new();
            fv_c(b, &mut inner);
            inner.remove(x);
            out.extend(inner);
        }
    }
}

fn fv_c(c: &NC, out: &mut BTreeSet<String>) {
    match c {
        NC::Ret(v) => fv_v(v, out),
        NC::App(v, m) => {
            fv_v(v, out);
            fv_c(m, out);
        }
    }
}

fn fv(c: &NC) -> BTreeSet<String> {
    let mut s = BTreeSet::new();
    fv_c(c, &mut s);
    s
}

fn subst_v(v: &NV, x: &str, w: &NV) -> NV {
    match v {
        NV::Var(y) if y == x => w.clone(),
        NV::Var(_) => v.clone(),
        NV::Lam(y, _) if y == x => v.clone(),
        NV::Lam(y, b) => {
            // Always rename: simple and obviously capture-free.
            let z = fresh();
            let b = subst_c(b, y, &NV::Var(z.clone()));
            NV::Lam(z, Box::new(subst_c(&b, x, w)))
        }
    }
}

fn subst_c(c: &NC, x: &str, w: &NV) -> NC {
    match c {
        NC::Ret(v) => NC::Ret(subst_v(v, x, w)),
        NC::App(v, m) => NC::App(subst_v(v, x, w), Box::new(subst_c(m, x, w))),
    }
}

/// Root rules, written out independently of the library.
fn root(c: &NC) -> Vec<(Rule, NC)> {
    let mut out = Vec::new();
    if let NC::App(NV::Lam(x, body), arg) = c {
        if let NC::Ret(v) = &**arg {
            out.push((Rule::BetaC, subst_c(body, x, v)));
        }
        if let NC::App(NV::Lam(x2, m), l) = &**arg {
            // (λy.N)((λx.M)L) → (λx.(λy.N)M)L with x renamed away from N
            let z = fresh();
            let m2 = subst_c(m, x2, &NV::Var(z.clone()));
            let inner = NC::App(NV::Lam(x.clone(), body.clone()), Box::new(m2));
            out.push((Rule::Sigma, NC::App(NV::Lam(z, Box::new(inner)), l.clone())));
        }
        if matches!(&**body, NC::Ret(NV::Var(y)) if y == x) {
            out.push((Rule::Id, (**arg).clone()));
        }
    }
    out
}

/// One-step reducts with their path, over all subterm positions.
fn steps(c: &NC) -> Vec<(Vec<PathToken>, Rule, NC)> {
    let mut out: Vec<_> = root(c).into_iter().map(|(r, s)| (vec![], r, s)).collect();
    let mut under = |tok: PathToken, sub: &NC, rebuild: &dyn Fn(NC) -> NC| {
        for (mut p, r, s) in steps(sub) {
            p.insert(0, tok);
            out.push((p, r, rebuild(s)));
        }
    };
    match c {
        NC::Ret(NV::Lam(x, b)) => under(PathToken::RetBody, b, &|s| NC::Ret(NV::Lam(x.clone(), Box::new(s)))),
        NC::Ret(NV::Var(_)) => {}
        NC::App(v, m) => {
            if let NV::Lam(x, b) = v {
                under(PathToken::FunBody, b, &|s| NC::App(NV::Lam(x.clone(), Box::new(s)), m.clone()));
            }
            under(PathToken::AppArg, m, &|s| NC::App(v.clone(), Box::new(s)));
        }
    }
    out
}

fn admitted(cls: ClosureClass, p: &[PathToken]) -> bool {
    match cls {
        ClosureClass::Full => true,
        ClosureClass::Surface => !p.contains(&PathToken::RetBody),
        ClosureClass::Weak => p.iter().all(|t| *t == PathToken::AppArg),
    }
}

fn show_v(v: &NV) -> String {
    match v {
        NV::Var(x) => x.clone(),
        NV::Lam(x, b) => format!("(\\{x}.{})", show_c(b)),
    }
}

fn show_c(c: &NC) -> String {
    match c {
        NC::Ret(v) => format!("!{}", show_v(v)),
        NC::App(v, m) => format!("{}({})", show_v(v), show_c(m)),
    }
}

fn to_lib(c: &NC) -> Com {
    parse_com(&show_c(c)).unwrap_or_else(|e| panic!("{}: {e}", show_c(c)))
}

/// Reads a library term by walking its de Bruijn structure.
fn from_lib(t: &Com) -> NC {
    fn v(x: &Val, env: &mut Vec<String>) -> NV {
        match x {
            Val::Var(Var::Free(n)) => NV::Var(n.to_string()),
            Val::Var(Var::Bound(i)) => NV::Var(env[env.len() - 1 - *i as usize].clone()),
            Val::Abs(_, b) => {
                let name = format!("b{}", env.len());
                env.push(name.clone());
                let body = c(b, env);
                env.pop();
                NV::Lam(name, Box::new(body))
            }
        }
    }
    fn c(t: &Com, env: &mut Vec<String>) -> NC {
        match t {
            Com::Ret(x) => NC::Ret(v(x, env)),
            Com::App(x, m) => NC::App(v(x, env), Box::new(c(m, env))),
        }
    }
    c(t, &mut Vec::new())
}

fn oracle_measure_v(v: &NV) -> (u64, u64) {
    match v {
        NV::Var(_) => (1, 1),
        NV::Lam(_, b) => {
            let (s, a) = oracle_measure_c(b);
            (s + 1, a + s)
        }
    }
}

fn oracle_measure_c(c: &NC) -> (u64, u64) {
    match c {
        NC::Ret(v) => oracle_measure_v(v),
        NC::App(v, m) => {
            let (s1, a1) = oracle_measure_v(v);
            let (s2, a2) = oracle_measure_c(m);
            (s1 + s2, a1 + a2 + 2 * s1 * s2)
        }
    }
}

fn small_universe() -> Vec<Com> {
    universe(7, 6)
}

#[test]
fn one_step_reducts_agree_with_the_oracle() {
    for t in small_universe() {
        let nt = from_lib(&t);
        assert_eq!(to_lib(&nt), t);
        for cls in [ClosureClass::Full, ClosureClass::Surface, ClosureClass::Weak] {
            let lib: HashSet<(Vec<PathToken>, Rule, Com)> = reducts(&t, cls, RuleSet::LAMBDA_C)
                .into_iter()
                .map(|(o, s)| (o.path, o.rule, s))
                .collect();
            let oracle: HashSet<_> = steps(&nt)
                .into_iter()
                .filter(|(p, _, _)| admitted(cls, p))
                .map(|(p, r, s)| (p, r, to_lib(&s)))
                .collect();
            assert_eq!(lib, oracle, "{t} under {cls:?}");
        }
    }
}

#[test]
fn measure_agrees_with_the_oracle() {
    for t in small_universe() {
        let m = measure(&t);
        assert_eq!((m.size, m.aux), oracle_measure_c(&from_lib(&t)), "{t}");
    }
    let i = measure_val(&parse_val("\\x.!x").unwrap());
    assert_eq!((i.size, i.aux), (2, 2));
    let zz = measure(&parse_com("z!z").unwrap());
    assert_eq!((zz.size, zz.aux), (2, 4));
}

#[test]
fn free_variables_and_substitution() {
    let c = named_constants();
    assert_eq!(fv(&from_lib(&c.van_oostrom)), BTreeSet::from(["z".to_string()]));
    let xs: Vec<String> = c.van_oostrom.free_vars().iter().map(|s| s.to_string()).collect();
    assert_eq!(xs, ["z"]);
    let delta = parse_val("\\y.y!y").unwrap();
    let built = parse_com("x!x").unwrap().substitute("x", &delta);
    let oracle = subst_c(&from_lib(&parse_com("x!x").unwrap()), "x", &NV::Lam("y".into(), Box::new(from_lib(&parse_com("y!y").unwrap()))));
    assert_eq!(built, to_lib(&oracle));
    assert_eq!(built.to_string(), "(\\y.y!y)!(\\y.y!y)");
}

#[test]
fn named_constants_print() {
    let c = named_constants();
    assert_eq!(c.blocked_beta_mz.to_string(), "(\\x.x!x)((\\y.!(\\x.x!x))(z!z))");
    assert_eq!(to_lib(&from_lib(&c.blocked_beta_mz)), c.blocked_beta_mz);
}

#[test]
fn van_oostrom_redexes_and_delta_loop() {
    let c = named_constants();
    let rs: Vec<(Vec<PathToken>, Rule)> = steps(&from_lib(&c.van_oostrom))
        .into_iter()
        .filter(|(p, _, _)| admitted(ClosureClass::Surface, p))
        .map(|(p, r, _)| (p, r))
        .collect();
    assert_eq!(rs, [(vec![PathToken::FunBody], Rule::BetaC), (vec![PathToken::FunBody], Rule::Id)]);
    let lib: Vec<_> = reducts(&c.van_oostrom, ClosureClass::Surface, RuleSet::LAMBDA_C)
        .into_iter()
        .map(|(o, _)| (o.path, o.rule))
        .collect();
    assert_eq!(lib, rs);
    let looped = apply_redex(&c.delta_bang, &RedexOccurrence::root(Rule::BetaC)).unwrap();
    assert_eq!(looped, c.delta_bang);
    assert_eq!(steps(&from_lib(&c.delta_bang)).len(), 1);
}

/// Normal forms reachable by the oracle's own reducer.
fn oracle_normal_forms(t: &Com, rules: &[Rule], cap: usize) -> (HashSet<Com>, bool) {
    let mut seen: HashSet<Com> = HashSet::from([t.clone()]);
    let mut queue = VecDeque::from([t.clone()]);
    let mut nfs = HashSet::new();
    let mut complete = true;
    while let Some(u) = queue.pop_front() {
        let next: Vec<Com> = steps(&from_lib(&u))
            .into_iter()
            .filter(|(_, r, _)| rules.contains(r))
            .map(|(_, _, s)| to_lib(&s))
            .collect();
        if next.is_empty() {
            nfs.insert(u.clone());
        }
        for s in next {
            if seen.len() >= cap {
                complete = false;
                break;
            }
            if seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    (nfs, complete)
}

#[test]
fn root_evaluation_reaches_the_unique_value() {
    let t = parse_com("(\\x.!x)((\\y.!y)!z)").unwrap();
    let (nfs, complete) = oracle_normal_forms(&t, &[Rule::BetaC, Rule::Sigma, Rule::Id], 1000);
    assert!(complete);
    assert_eq!(nfs, HashSet::from([parse_com("!z").unwrap()]));
    let o = root_eval(&t, Fuel::DEFAULT);
    assert_eq!(o.normal_form().map(|n| n.to_string()), Some("!z".into()));
    let rules: Vec<_> = o.trace().steps.iter().map(|s| s.occurrence.rule).collect();
    assert_eq!(rules, [Rule::Sigma, Rule::BetaC, Rule::BetaC]);
}

#[test]
fn iterated_weak_strategy_matches_exhaustive_search() {
    let t = parse_com("!(\\x.(\\y.!y)!x)").unwrap();
    let (nfs, complete) = oracle_normal_forms(&t, &[Rule::BetaC, Rule::Sigma], 1000);
    assert!(complete);
    assert_eq!(nfs, HashSet::from([parse_com("!(\\x.!x)").unwrap()]));
    let o = iterated_strategy(&t, ClosureClass::Weak, Fuel::DEFAULT);
    assert_eq!(o.normal_form().map(|n| n.to_string()), Some("!(\\x.!x)".into()));
    // Over the universe: whenever the oracle finds the σβ_c normal form,
    // both iterated strategies land on it.
    for t in universe(6, 5) {
        let (nfs, complete) = oracle_normal_forms(&t, &[Rule::BetaC, Rule::Sigma], 300);
        if complete && nfs.len() == 1 {
            for e in [ClosureClass::Weak, ClosureClass::Surface] {
                let o = iterated_strategy(&t, e, Fuel(1000));
                assert_eq!(o.normal_form(), nfs.iter().next(), "{t}");
            }
        }
    }
}

#[test]
fn let_translation_of_a_variable_application() {
    let t = parse_com("x(z!z)").unwrap();
    assert_eq!(print_ml(&cc_to_ml(&t)), "let y = z z in x y");
}

#[test]
fn enumeration_small_sizes() {
    assert!(enumerate_terms(2, &[], true).is_empty());
    assert_eq!(enumerate_terms(3, &[], true).len(), 1);
    let one: Vec<String> = enumerate_terms(1, &["z"], false).iter().map(|t| t.to_string()).collect();
    assert_eq!(one, ["!z"]);
    // Binders named by depth give a canonical rendering, so duplicates up
    // to alpha would collide here.
    let n4: HashSet<String> = enumerate_terms(4, &["z"], false)
        .iter()
        .map(|t| show_c(&from_lib(t)))
        .collect();
    assert_eq!(n4.len(), enumerate_terms(4, &["z"], false).len());
}

#[test]
fn parallel_and_sequential_runs_agree() {
    let u = Universe::new(6, 5);
    for p in [Property::SurfaceFact, Property::ConfluenceMatrix, Property::MeasureDescent] {
        let par = p.run(&u, &LabConfig { mode: Mode::Parallel, ..LabConfig::default() });
        let seq = p.run(&u, &LabConfig { mode: Mode::Sequential, ..LabConfig::default() });
        assert_eq!(par, seq, "{}", p.name());
    }
}

//! Evaluators and normalizing strategies.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rewrite::{
    apply_redex, enumerate_redexes, is_normal, root_step, ClosureClass, PathToken,
    RedexOccurrence, Rule, RuleSet, Status, Trace,
};
use crate::term::{Com, Val};

/// Step budget of a driver.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fuel(pub u64);

impl Fuel {
    pub const DEFAULT: Fuel = Fuel(10_000);
}

impl Default for Fuel {
    fn default() -> Self {
        Fuel::DEFAULT
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Outcome {
    NormalForm(Com, Trace),
    /// The sequence revisited a term.
    Cycle(Com, Trace),
    FuelExhausted(Trace),
}

impl Outcome {
    pub fn trace(&self) -> &Trace {
        match self {
            Outcome::NormalForm(_, t) | Outcome::Cycle(_, t) | Outcome::FuelExhausted(t) => t,
        }
    }

    pub fn into_trace(self) -> Trace {
        match self {
            Outcome::NormalForm(_, t) | Outcome::Cycle(_, t) | Outcome::FuelExhausted(t) => t,
        }
    }

    pub fn normal_form(&self) -> Option<&Com> {
        match self {
            Outcome::NormalForm(t, _) => Some(t),
            _ => None,
        }
    }

    pub fn status(&self) -> Status {
        self.trace().status
    }

    pub fn beta_c(&self) -> u64 {
        self.trace().counts.beta_c
    }
}

/// Runs `next` until it has nothing to contract, a term repeats, or the
/// fuel runs out.
fn drive<F>(t: &Com, fuel: Fuel, trace: Trace, mut next: F) -> Outcome
where
    F: FnMut(&Com) -> Option<RedexOccurrence>,
{
    let mut trace = trace;
    let mut seen: HashSet<Com> = HashSet::new();
    seen.insert(t.clone());
    for s in &trace.steps {
        seen.insert(s.result.clone());
    }
    let mut cur = t.clone();
    let mut used = 0u64;
    loop {
        let Some(occ) = next(&cur) else {
            trace.status = Status::NormalForm;
            return Outcome::NormalForm(cur, trace);
        };
        if used >= fuel.0 {
            trace.status = Status::FuelExhausted;
            return Outcome::FuelExhausted(trace);
        }
        let s = apply_redex(&cur, &occ).expect("strategy picked a valid redex");
        used += 1;
        trace.push(occ, s.clone());
        if !seen.insert(s.clone()) {
            trace.status = Status::Cycle;
            return Outcome::Cycle(s, trace);
        }
        cur = s;
    }
}

/// Contracts the unique weak β_c redex until none is left.
pub fn weak_beta_c(t: &Com, fuel: Fuel) -> Outcome {
    drive(t, fuel, Trace::new(t.clone()), |m| {
        enumerate_redexes(m, ClosureClass::Weak, RuleSet::BETA_C).into_iter().next()
    })
}

/// Root β_c, else root σ, with no contextual closure.
pub fn root_eval(t: &Com, fuel: Fuel) -> Outcome {
    drive(t, fuel, Trace::new(t.clone()), |m| {
        [Rule::BetaC, Rule::Sigma]
            .into_iter()
            .find(|r| root_step(*r, m).is_some())
            .map(RedexOccurrence::root)
    })
}

/// Picks uniformly among the available redexes at every step.
pub fn random_maximal(t: &Com, cls: ClosureClass, rules: RuleSet, seed: u64, fuel: Fuel) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    drive(t, fuel, Trace::new(t.clone()), |m| {
        let mut rs = enumerate_redexes(m, cls, rules);
        if rs.is_empty() {
            None
        } else {
            let k = rng.gen_range(0..rs.len());
            Some(rs.swap_remove(k))
        }
    })
}

/// Leftmost-outermost reduction.
pub fn leftmost(t: &Com, cls: ClosureClass, rules: RuleSet, fuel: Fuel) -> Outcome {
    drive(t, fuel, Trace::new(t.clone()), |m| {
        enumerate_redexes(m, cls, rules).into_iter().next()
    })
}

/// Next redex of iterated `e`-reduction: an `e`-redex if there is one,
/// otherwise descend as the inference rules prescribe.
pub fn iterated_next(t: &Com, e: ClosureClass) -> Option<RedexOccurrence> {
    if let Some(r) = enumerate_redexes(t, e, RuleSet::SIGMA_BETA).into_iter().next() {
        return Some(r);
    }
    let (tok, sub) = match t {
        Com::Ret(Val::Var(_)) => return None,
        Com::Ret(Val::Abs(_, p)) => (PathToken::RetBody, &**p),
        Com::App(Val::Abs(_, p), q) => {
            if is_normal(p, ClosureClass::Full, RuleSet::SIGMA_BETA) {
                (PathToken::AppArg, &**q)
            } else {
                (PathToken::FunBody, &**p)
            }
        }
        Com::App(Val::Var(_), q) => (PathToken::AppArg, &**q),
    };
    let mut r = iterated_next(sub, e)?;
    r.path.insert(0, tok);
    Some(r)
}

/// Iterated weak or surface reduction over `{β_c, σ}`.
pub fn iterated_strategy(t: &Com, e: ClosureClass, fuel: Fuel) -> Outcome {
    assert!(e != ClosureClass::Full, "iterated strategy is defined for weak and surface");
    drive(t, fuel, Trace::new(t.clone()), |m| iterated_next(m, e))
}

/// Iterated strategy to a σβ_c-normal form, then ι steps to a normal form
/// of the whole calculus.
pub fn normalize_full(t: &Com, e: ClosureClass, fuel: Fuel) -> Outcome {
    let first = iterated_strategy(t, e, fuel);
    let Outcome::NormalForm(n, trace) = first else {
        return first;
    };
    let left = Fuel(fuel.0 - trace.len() as u64);
    let out = drive(&n, left, trace, |m| {
        enumerate_redexes(m, ClosureClass::Full, RuleSet::IOTA).into_iter().next()
    });
    if let Outcome::NormalForm(m, _) = &out {
        debug_assert!(is_normal(m, ClosureClass::Full, RuleSet::LAMBDA_C));
    }
    out
}

/// Whether weak β_c evaluation halts: `None` when the fuel runs out first.
pub fn halts(t: &Com, fuel: Fuel) -> Option<bool> {
    match weak_beta_c(t, fuel) {
        Outcome::NormalForm(..) => Some(true),
        Outcome::Cycle(..) => Some(false),
        Outcome::FuelExhausted(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_com;
    use crate::term::named_constants;

    fn p(s: &str) -> Com {
        parse_com(s).unwrap()
    }

    #[test]
    fn weak_beta() {
        let c = named_constants();
        let o = weak_beta_c(&p("(\\x.!x)!z"), Fuel::DEFAULT);
        assert_eq!(o.normal_form(), Some(&p("!z")));
        assert_eq!(o.beta_c(), 1);
        let d = weak_beta_c(&c.delta_bang, Fuel::DEFAULT);
        assert!(matches!(&d, Outcome::Cycle(t, tr) if *t == c.delta_bang && tr.len() == 1));
        let v = weak_beta_c(&c.van_oostrom, Fuel::DEFAULT);
        assert_eq!(v.normal_form(), Some(&c.van_oostrom));
        assert_eq!(v.beta_c(), 0);
    }

    #[test]
    fn root_evaluation() {
        let o = root_eval(&p("(\\x.!x)((\\y.!y)!z)"), Fuel::DEFAULT);
        assert_eq!(o.normal_form(), Some(&p("!z")));
        assert_eq!(o.trace().counts.sigma, 1);
        assert_eq!(o.trace().counts.beta_c, 2);
        assert_eq!(o.trace().steps[0].occurrence.rule, Rule::Sigma);
        let r = root_eval(&p("!(\\x.x!x)"), Fuel::DEFAULT);
        assert!(r.trace().is_empty() && r.normal_form().is_some());
        assert!(matches!(root_eval(&named_constants().delta_bang, Fuel::DEFAULT), Outcome::Cycle(..)));
    }

    #[test]
    fn fuel_is_respected() {
        let c = named_constants();
        // Δ!Δ loops immediately, so use a term that grows instead.
        let grow = p("(\\x.(\\y.x!x)(x!x))!(\\x.(\\y.x!x)(x!x))");
        let o = weak_beta_c(&grow, Fuel(5));
        assert!(matches!(o, Outcome::FuelExhausted(ref t) if t.len() == 5));
        assert_eq!(halts(&grow, Fuel(5)), None);
        assert_eq!(halts(&c.delta_bang, Fuel(5)), Some(false));
        assert_eq!(halts(&c.blocked_beta_mz, Fuel(5)), Some(true));
        assert_eq!(halts(&p("!y"), Fuel(1)), Some(true));
    }

    #[test]
    fn iterated() {
        let c = named_constants();
        let o = iterated_strategy(&c.blocked_beta_mz, ClosureClass::Surface, Fuel::DEFAULT);
        assert!(matches!(&o, Outcome::Cycle(t, _) if *t == p("(\\y.(\\x.x!x)!(\\x.x!x))(z!z)")));
        let w = iterated_strategy(&p("!(\\x.(\\y.!y)!x)"), ClosureClass::Weak, Fuel::DEFAULT);
        assert_eq!(w.normal_form(), Some(&p("!(\\x.!x)")));
        assert_eq!(w.trace().steps[0].occurrence.path, vec![PathToken::RetBody]);
        for e in [ClosureClass::Weak, ClosureClass::Surface] {
            let z = iterated_strategy(&p("z!z"), e, Fuel::DEFAULT);
            assert!(z.trace().is_empty() && z.normal_form().is_some());
        }
    }

    #[test]
    fn full_normalization() {
        let c = named_constants();
        let a = normalize_full(&p("(\\x.!x)(z!z)"), ClosureClass::Weak, Fuel::DEFAULT);
        assert_eq!(a.normal_form(), Some(&p("z!z")));
        assert_eq!(a.trace().counts.iota, 1);
        let v = normalize_full(&c.van_oostrom, ClosureClass::Surface, Fuel::DEFAULT);
        assert_eq!(v.normal_form(), Some(&p("z!z")));
        assert!(matches!(normalize_full(&c.delta_bang, ClosureClass::Surface, Fuel::DEFAULT), Outcome::Cycle(..)));
    }

    #[test]
    fn random_is_reproducible() {
        let c = named_constants();
        let a = random_maximal(&c.weak_t, ClosureClass::Weak, RuleSet::SIGMA_BETA, 7, Fuel::DEFAULT);
        let b = random_maximal(&c.weak_t, ClosureClass::Weak, RuleSet::SIGMA_BETA, 7, Fuel::DEFAULT);
        assert_eq!(a, b);
        let z = random_maximal(&p("!z"), ClosureClass::Full, RuleSet::ALL, 3, Fuel::DEFAULT);
        assert!(z.trace().is_empty());
    }
}

//! The unit/bind notation λ⋆ with its own reduction engine.

use crate::rewrite::Rule;
use crate::term::{Com, Hint, Val, Var};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum StarVal {
    Var(Var),
    Lam(Hint, Box<StarTerm>),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum StarTerm {
    /// `unit V`
    Unit(StarVal),
    /// `M ⋆ V`
    Bind(Box<StarTerm>, StarVal),
}

impl StarVal {
    fn map_vars<F: Fn(u32, &Var) -> StarVal>(&self, d: u32, f: &F) -> StarVal {
        match self {
            StarVal::Var(x) => f(d, x),
            StarVal::Lam(h, b) => StarVal::Lam(h.clone(), Box::new(b.map_vars(d + 1, f))),
        }
    }

    fn shift(&self, by: i64, cutoff: u32) -> StarVal {
        self.map_vars(0, &|d, x| match x {
            Var::Bound(i) if *i >= cutoff + d => StarVal::Var(Var::Bound((*i as i64 + by) as u32)),
            _ => StarVal::Var(x.clone()),
        })
    }
}

impl StarTerm {
    fn map_vars<F: Fn(u32, &Var) -> StarVal>(&self, d: u32, f: &F) -> StarTerm {
        match self {
            StarTerm::Unit(v) => StarTerm::Unit(v.map_vars(d, f)),
            StarTerm::Bind(m, v) => StarTerm::Bind(Box::new(m.map_vars(d, f)), v.map_vars(d, f)),
        }
    }

    fn shift(&self, by: i64, cutoff: u32) -> StarTerm {
        self.map_vars(0, &|d, x| match x {
            Var::Bound(i) if *i >= cutoff + d => StarVal::Var(Var::Bound((*i as i64 + by) as u32)),
            _ => StarVal::Var(x.clone()),
        })
    }

    fn instantiate(&self, v: &StarVal) -> StarTerm {
        self.map_vars(0, &|d, x| match x {
            Var::Bound(i) if *i == d => v.shift(d as i64, 0),
            Var::Bound(i) if *i > d => StarVal::Var(Var::Bound(i - 1)),
            _ => StarVal::Var(x.clone()),
        })
    }
}

fn root(t: &StarTerm, out: &mut Vec<(Rule, StarTerm)>) {
    let StarTerm::Bind(m, v) = t else { return };
    // unit V ⋆ λx.N → N[V/x]
    if let (StarTerm::Unit(w), StarVal::Lam(_, n)) = (&**m, v) {
        out.push((Rule::BetaC, n.instantiate(w)));
    }
    // M ⋆ λx.unit x → M
    if let StarVal::Lam(_, b) = v {
        if **b == StarTerm::Unit(StarVal::Var(Var::Bound(0))) {
            out.push((Rule::Id, (**m).clone()));
        }
    }
    // (L ⋆ λx.M) ⋆ λy.N → L ⋆ λx.(M ⋆ λy.N)
    if let (StarTerm::Bind(l, StarVal::Lam(hx, m2)), StarVal::Lam(hy, n)) = (&**m, v) {
        let inner = StarTerm::Bind(m2.clone(), StarVal::Lam(hy.clone(), Box::new(n.shift(1, 1))));
        out.push((
            Rule::Sigma,
            StarTerm::Bind(l.clone(), StarVal::Lam(hx.clone(), Box::new(inner))),
        ));
    }
}

/// One-step reducts under `[] | unit(λx.C) | C ⋆ V | M ⋆ (λx.C)`.
pub fn star_step(t: &StarTerm) -> Vec<(Rule, StarTerm)> {
    let mut out = Vec::new();
    root(t, &mut out);
    match t {
        StarTerm::Unit(StarVal::Lam(h, b)) => {
            for (r, b2) in star_step(b) {
                out.push((r, StarTerm::Unit(StarVal::Lam(h.clone(), Box::new(b2)))));
            }
        }
        StarTerm::Unit(StarVal::Var(_)) => {}
        StarTerm::Bind(m, v) => {
            for (r, m2) in star_step(m) {
                out.push((r, StarTerm::Bind(Box::new(m2), v.clone())));
            }
            if let StarVal::Lam(h, b) = v {
                for (r, b2) in star_step(b) {
                    out.push((r, StarTerm::Bind(m.clone(), StarVal::Lam(h.clone(), Box::new(b2)))));
                }
            }
        }
    }
    out
}

fn val_to_star(v: &Val) -> StarVal {
    match v {
        Val::Var(x) => StarVal::Var(x.clone()),
        Val::Abs(h, b) => StarVal::Lam(h.clone(), Box::new(cc_to_star(b))),
    }
}

/// `!V ↦ unit V`, `V M ↦ M ⋆ V`.
pub fn cc_to_star(t: &Com) -> StarTerm {
    match t {
        Com::Ret(v) => StarTerm::Unit(val_to_star(v)),
        Com::App(v, m) => StarTerm::Bind(Box::new(cc_to_star(m)), val_to_star(v)),
    }
}

fn val_to_cc(v: &StarVal) -> Val {
    match v {
        StarVal::Var(x) => Val::Var(x.clone()),
        StarVal::Lam(h, b) => Val::Abs(h.clone(), Box::new(star_to_cc(b))),
    }
}

pub fn star_to_cc(t: &StarTerm) -> Com {
    match t {
        StarTerm::Unit(v) => Com::Ret(val_to_cc(v)),
        StarTerm::Bind(m, v) => Com::app(val_to_cc(v), star_to_cc(m)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_com, print_star};

    #[test]
    fn application_reverses_order() {
        let t = parse_com("(\\x.!x)(z!z)").unwrap();
        assert_eq!(print_star(&cc_to_star(&t)), "unit z * z * (\\x.unit x)");
        assert_eq!(star_to_cc(&cc_to_star(&t)), t);
    }

    #[test]
    fn beta_on_the_star_side() {
        let t = cc_to_star(&parse_com("(\\x.x!x)!z").unwrap());
        let r = star_step(&t);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].0, Rule::BetaC);
        assert_eq!(star_to_cc(&r[0].1), parse_com("z!z").unwrap());
    }
}

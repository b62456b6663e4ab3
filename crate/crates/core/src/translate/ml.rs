//! The let-calculus λ_ml*, its rules and the two translations to and from
//! the core calculus.

use serde::Serialize;

use crate::term::{Com, Hint, Val, Var};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum MlVal {
    Var(Var),
    Lam(Hint, Box<MlTerm>),
}

/// Computations of λ_ml*.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum MlTerm {
    /// `[V]`
    Unit(MlVal),
    /// `let x = M in N`; `N` is under the binder.
    Let(Hint, Box<MlTerm>, Box<MlTerm>),
    /// `V W`
    App(MlVal, MlVal),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum MlRule {
    CBeta,
    CEta,
    CLetBeta,
    CLetEta,
    CLetAss,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MlClosure {
    Full,
    /// Only `[] | let x = E in M`.
    LetEval,
}

impl MlVal {
    pub fn free(name: &str) -> MlVal {
        MlVal::Var(Var::Free(name.into()))
    }

    fn map_vars<F: Fn(u32, &Var) -> MlVal>(&self, d: u32, f: &F) -> MlVal {
        match self {
            MlVal::Var(x) => f(d, x),
            MlVal::Lam(h, b) => MlVal::Lam(h.clone(), Box::new(b.map_vars(d + 1, f))),
        }
    }

    pub fn shift(&self, by: i64, cutoff: u32) -> MlVal {
        self.map_vars(0, &|d, x| MlVal::Var(shift(x, by, cutoff + d)))
    }

    pub fn mentions(&self, k: u32) -> bool {
        match self {
            MlVal::Var(x) => *x == Var::Bound(k),
            MlVal::Lam(_, b) => b.mentions(k + 1),
        }
    }

    pub fn nodes(&self) -> usize {
        match self {
            MlVal::Var(_) => 0,
            MlVal::Lam(_, b) => 1 + b.nodes(),
        }
    }
}

impl MlTerm {
    fn map_vars<F: Fn(u32, &Var) -> MlVal>(&self, d: u32, f: &F) -> MlTerm {
        match self {
            MlTerm::Unit(v) => MlTerm::Unit(v.map_vars(d, f)),
            MlTerm::Let(h, m, n) => MlTerm::Let(
                h.clone(),
                Box::new(m.map_vars(d, f)),
                Box::new(n.map_vars(d + 1, f)),
            ),
            MlTerm::App(v, w) => MlTerm::App(v.map_vars(d, f), w.map_vars(d, f)),
        }
    }

    pub fn shift(&self, by: i64, cutoff: u32) -> MlTerm {
        self.map_vars(0, &|d, x| MlVal::Var(shift(x, by, cutoff + d)))
    }

    pub fn instantiate(&self, v: &MlVal) -> MlTerm {
        self.map_vars(0, &|d, x| match x {
            Var::Bound(i) if *i == d => v.shift(d as i64, 0),
            Var::Bound(i) if *i > d => MlVal::Var(Var::Bound(i - 1)),
            _ => MlVal::Var(x.clone()),
        })
    }

    pub fn mentions(&self, k: u32) -> bool {
        match self {
            MlTerm::Unit(v) => v.mentions(k),
            MlTerm::Let(_, m, n) => m.mentions(k) || n.mentions(k + 1),
            MlTerm::App(v, w) => v.mentions(k) || w.mentions(k),
        }
    }

    /// Let, unit, application and abstraction nodes.
    pub fn nodes(&self) -> usize {
        match self {
            MlTerm::Unit(v) => 1 + v.nodes(),
            MlTerm::Let(_, m, n) => 1 + m.nodes() + n.nodes(),
            MlTerm::App(v, w) => 1 + v.nodes() + w.nodes(),
        }
    }
}

fn shift(x: &Var, by: i64, cutoff: u32) -> Var {
    match x {
        Var::Bound(i) if *i >= cutoff => Var::Bound((*i as i64 + by) as u32),
        _ => x.clone(),
    }
}

fn root_val(v: &MlVal) -> Option<MlVal> {
    // λx.V x → V when x ∉ fv(V)
    if let MlVal::Lam(_, b) = v {
        if let MlTerm::App(f, MlVal::Var(Var::Bound(0))) = &**b {
            if !f.mentions(0) {
                return Some(f.shift(-1, 0));
            }
        }
    }
    None
}

fn root(t: &MlTerm, out: &mut Vec<(MlRule, MlTerm)>) {
    match t {
        MlTerm::App(MlVal::Lam(_, body), w) => out.push((MlRule::CBeta, body.instantiate(w))),
        MlTerm::Let(hy, m, n) => {
            if let MlTerm::Unit(v) = &**m {
                out.push((MlRule::CLetBeta, n.instantiate(v)));
            }
            if **n == MlTerm::Unit(MlVal::Var(Var::Bound(0))) {
                out.push((MlRule::CLetEta, (**m).clone()));
            }
            if let MlTerm::Let(hx, l, m2) = &**m {
                // N moves under the x binder.
                let inner = MlTerm::Let(hy.clone(), m2.clone(), Box::new(n.shift(1, 1)));
                out.push((
                    MlRule::CLetAss,
                    MlTerm::Let(hx.clone(), l.clone(), Box::new(inner)),
                ));
            }
        }
        _ => {}
    }
}

fn val_steps(v: &MlVal) -> Vec<(MlRule, MlVal)> {
    let mut out = Vec::new();
    if let Some(r) = root_val(v) {
        out.push((MlRule::CEta, r));
    }
    if let MlVal::Lam(h, b) = v {
        for (r, b2) in ml_step(b, MlClosure::Full) {
            out.push((r, MlVal::Lam(h.clone(), Box::new(b2))));
        }
    }
    out
}

/// All one-step reducts under the requested closure, in a fixed order.
pub fn ml_step(t: &MlTerm, cls: MlClosure) -> Vec<(MlRule, MlTerm)> {
    let mut out = Vec::new();
    root(t, &mut out);
    match t {
        MlTerm::Unit(v) => {
            if cls == MlClosure::Full {
                for (r, v2) in val_steps(v) {
                    out.push((r, MlTerm::Unit(v2)));
                }
            }
        }
        MlTerm::Let(h, m, n) => {
            for (r, m2) in ml_step(m, cls) {
                out.push((r, MlTerm::Let(h.clone(), Box::new(m2), n.clone())));
            }
            if cls == MlClosure::Full {
                for (r, n2) in ml_step(n, cls) {
                    out.push((r, MlTerm::Let(h.clone(), m.clone(), Box::new(n2))));
                }
            }
        }
        MlTerm::App(v, w) => {
            if cls == MlClosure::Full {
                for (r, v2) in val_steps(v) {
                    out.push((r, MlTerm::App(v2, w.clone())));
                }
                for (r, w2) in val_steps(w) {
                    out.push((r, MlTerm::App(v.clone(), w2)));
                }
            }
        }
    }
    out
}

/// `⟨⟨·⟩⟩` on values.
pub fn ml_val_to_cc(v: &MlVal) -> Val {
    match v {
        MlVal::Var(x) => Val::Var(x.clone()),
        MlVal::Lam(h, b) => Val::Abs(h.clone(), Box::new(ml_to_cc(b))),
    }
}

/// `⟨⟨·⟩⟩ : λ_ml* → λ_©`
pub fn ml_to_cc(t: &MlTerm) -> Com {
    match t {
        MlTerm::Unit(v) => Com::Ret(ml_val_to_cc(v)),
        MlTerm::App(v, w) => Com::app(ml_val_to_cc(v), Com::Ret(ml_val_to_cc(w))),
        MlTerm::Let(h, m, n) => Com::app(Val::Abs(h.clone(), Box::new(ml_to_cc(n))), ml_to_cc(m)),
    }
}

pub fn cc_val_to_ml(v: &Val) -> MlVal {
    match v {
        Val::Var(x) => MlVal::Var(x.clone()),
        Val::Abs(h, b) => MlVal::Lam(h.clone(), Box::new(cc_to_ml(b))),
    }
}

/// `⌈·⌉ : λ_© → λ_ml*`. An argument of the form `!W` always selects the
/// application clause.
pub fn cc_to_ml(t: &Com) -> MlTerm {
    match t {
        Com::Ret(v) => MlTerm::Unit(cc_val_to_ml(v)),
        Com::App(v, m) => match (v, &**m) {
            (_, Com::Ret(w)) => MlTerm::App(cc_val_to_ml(v), cc_val_to_ml(w)),
            (Val::Var(x), _) => {
                // let y = ⌈M⌉ in x y, with y fresh
                let x = MlVal::Var(x.clone()).shift(1, 0);
                MlTerm::Let(
                    Hint::new("y"),
                    Box::new(cc_to_ml(m)),
                    Box::new(MlTerm::App(x, MlVal::Var(Var::Bound(0)))),
                )
            }
            (Val::Abs(h, n), _) => {
                MlTerm::Let(h.clone(), Box::new(cc_to_ml(m)), Box::new(cc_to_ml(n)))
            }
        },
    }
}

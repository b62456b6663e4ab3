//! Two-sorted terms of the computational core.
//!
//! Bound variables are de Bruijn indices; free variables keep their names.
//! Binders carry a printing hint that is ignored by `Eq`, `Hash` and `Ord`,
//! so derived equality is alpha-equivalence.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// Printing name of a binder. Every `Hint` compares equal to every other.
#[derive(Clone)]
pub struct Hint(Arc<str>);

impl Hint {
    pub fn new(name: &str) -> Self {
        Hint(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl PartialEq for Hint {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Hint {}

impl Hash for Hint {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

impl PartialOrd for Hint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Hint {
    fn cmp(&self, _: &Self) -> Ordering {
        Ordering::Equal
    }
}

impl fmt::Debug for Hint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A variable occurrence: a de Bruijn index or a free name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Var {
    Bound(u32),
    Free(Arc<str>),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Val {
    Var(Var),
    Abs(Hint, Box<Com>),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Com {
    /// `!V`
    Ret(Val),
    /// `V M`
    App(Val, Box<Com>),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Shape {
    Ret,
    AppVar,
    AppAbs,
}

impl Val {
    pub fn free(name: &str) -> Val {
        Val::Var(Var::Free(Arc::from(name)))
    }

    /// `λname.body`, binding the free occurrences of `name` in `body`.
    pub fn lam(name: &str, body: Com) -> Val {
        Val::Abs(Hint::new(name), Box::new(body.shift(1, 0).close(name, 0)))
    }

    pub fn is_abs(&self) -> bool {
        matches!(self, Val::Abs(..))
    }

    pub fn nodes(&self) -> usize {
        match self {
            Val::Var(_) => 0,
            Val::Abs(_, b) => 1 + b.nodes(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Val::Var(Var::Free(n)) => {
                out.insert(n.clone());
            }
            Val::Var(Var::Bound(_)) => {}
            Val::Abs(_, b) => b.collect_free(out),
        }
    }

    /// Rebuilds the value, replacing each variable occurrence. `f` receives
    /// the number of binders crossed so far.
    pub(crate) fn map_vars<F: Fn(u32, &Var) -> Val>(&self, depth: u32, f: &F) -> Val {
        match self {
            Val::Var(x) => f(depth, x),
            Val::Abs(h, b) => Val::Abs(h.clone(), Box::new(b.map_vars(depth + 1, f))),
        }
    }

    /// Adds `by` to every index that escapes `cutoff` enclosing binders.
    pub fn shift(&self, by: i64, cutoff: u32) -> Val {
        if by == 0 {
            return self.clone();
        }
        self.map_vars(0, &|d, x| Val::Var(shift_var(x, by, cutoff + d)))
    }

    /// Whether index `k` (relative to this position) occurs.
    pub fn mentions(&self, k: u32) -> bool {
        match self {
            Val::Var(Var::Bound(i)) => *i == k,
            Val::Var(Var::Free(_)) => false,
            Val::Abs(_, b) => b.mentions(k + 1),
        }
    }

    fn close(&self, name: &str, depth: u32) -> Val {
        self.map_vars(depth, &|d, x| match x {
            Var::Free(n) if &**n == name => Val::Var(Var::Bound(d)),
            _ => Val::Var(x.clone()),
        })
    }

    fn instantiate(&self, v: &Val) -> Val {
        self.map_vars(0, &|d, x| subst_var(x, d, d, v))
    }
}

fn shift_var(x: &Var, by: i64, cutoff: u32) -> Var {
    match x {
        Var::Bound(i) if *i >= cutoff => {
            let j = *i as i64 + by;
            assert!(j >= 0, "negative de Bruijn index after shift");
            Var::Bound(j as u32)
        }
        _ => x.clone(),
    }
}

// Replaces index `k` by `v` (lifted over `d` binders) and closes the gap.
fn subst_var(x: &Var, k: u32, d: u32, v: &Val) -> Val {
    match x {
        Var::Bound(i) if *i == k => v.shift(d as i64, 0),
        Var::Bound(i) if *i > k => Val::Var(Var::Bound(i - 1)),
        _ => Val::Var(x.clone()),
    }
}

impl Com {
    pub fn ret(v: Val) -> Com {
        Com::Ret(v)
    }

    pub fn app(v: Val, m: Com) -> Com {
        Com::App(v, Box::new(m))
    }

    pub fn shape(&self) -> Shape {
        match self {
            Com::Ret(_) => Shape::Ret,
            Com::App(Val::Var(_), _) => Shape::AppVar,
            Com::App(Val::Abs(..), _) => Shape::AppAbs,
        }
    }

    pub fn is_ret(&self) -> bool {
        matches!(self, Com::Ret(_))
    }

    /// Number of `!`, application and abstraction nodes. Variables are free.
    pub fn nodes(&self) -> usize {
        match self {
            Com::Ret(v) => 1 + v.nodes(),
            Com::App(v, m) => 1 + v.nodes() + m.nodes(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Com::Ret(v) => v.collect_free(out),
            Com::App(v, m) => {
                v.collect_free(out);
                m.collect_free(out);
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub(crate) fn map_vars<F: Fn(u32, &Var) -> Val>(&self, depth: u32, f: &F) -> Com {
        match self {
            Com::Ret(v) => Com::Ret(v.map_vars(depth, f)),
            Com::App(v, m) => Com::App(v.map_vars(depth, f), Box::new(m.map_vars(depth, f))),
        }
    }

    pub fn shift(&self, by: i64, cutoff: u32) -> Com {
        if by == 0 {
            return self.clone();
        }
        self.map_vars(0, &|d, x| Val::Var(shift_var(x, by, cutoff + d)))
    }

    pub fn mentions(&self, k: u32) -> bool {
        match self {
            Com::Ret(v) => v.mentions(k),
            Com::App(v, m) => v.mentions(k) || m.mentions(k),
        }
    }

    fn close(&self, name: &str, depth: u32) -> Com {
        self.map_vars(depth, &|d, x| match x {
            Var::Free(n) if &**n == name => Val::Var(Var::Bound(d)),
            _ => Val::Var(x.clone()),
        })
    }

    /// Opens the body of a binder with `v`: `M[V/x]` where `x` is index 0.
    pub fn instantiate(&self, v: &Val) -> Com {
        self.map_vars(0, &|d, x| subst_var(x, d, d, v))
    }

    /// Replaces the free variable `x` by `v`. Capture cannot occur because
    /// bound variables are indices.
    pub fn substitute(&self, x: &str, v: &Val) -> Com {
        // Make room for a fresh outermost binder, bind `x` to it, open it.
        self.shift(1, 0).close(x, 0).instantiate(v)
    }

    /// Whether every bound index points at an enclosing binder.
    pub fn is_locally_closed(&self) -> bool {
        fn com(m: &Com, depth: u32) -> bool {
            match m {
                Com::Ret(v) => val(v, depth),
                Com::App(v, n) => val(v, depth) && com(n, depth),
            }
        }
        fn val(v: &Val, depth: u32) -> bool {
            match v {
                Val::Var(Var::Bound(i)) => *i < depth,
                Val::Var(Var::Free(_)) => true,
                Val::Abs(_, b) => com(b, depth + 1),
            }
        }
        com(self, 0)
    }
}

/// Substitution on a value, for callers that work with values directly.
pub fn substitute_val(body: &Val, x: &str, v: &Val) -> Val {
    body.shift(1, 0).close(x, 0).instantiate(v)
}

/// Named example terms.
#[derive(Clone, Debug)]
pub struct Constants {
    /// `λx.!x`
    pub i: Val,
    /// `λx.x!x`
    pub delta: Val,
    /// `Δ!Δ`
    pub delta_bang: Com,
    /// `(λy.I!y)(z!z)`: no weak redex, yet reduces to `z!z`.
    pub van_oostrom: Com,
    /// `V((λx.P)((λy.Q)L))` with `V = λz.z!z`, `P = Q = L = z!z`.
    pub weak_t: Com,
    /// `Δ((λy.!Δ)(z!z))`
    pub blocked_beta_mz: Com,
    /// `(λy.N)((λx.!x)M)` with `M = N = z!z`.
    pub sigma_id_overlap: Com,
}

fn zz() -> Com {
    Com::app(Val::free("z"), Com::ret(Val::free("z")))
}

pub fn identity() -> Val {
    Val::lam("x", Com::ret(Val::free("x")))
}

pub fn delta() -> Val {
    Val::lam("x", Com::app(Val::free("x"), Com::ret(Val::free("x"))))
}

pub fn named_constants() -> Constants {
    let i = identity();
    let delta = delta();
    let delta_bang = Com::app(delta.clone(), Com::ret(delta.clone()));
    let van_oostrom = Com::app(
        Val::lam("y", Com::app(i.clone(), Com::ret(Val::free("y")))),
        zz(),
    );
    // The outer V binds its own z; P, Q and L use the free z.
    let v = Val::lam("z", zz());
    let weak_t = Com::app(
        v,
        Com::app(
            Val::lam("x", zz()),
            Com::app(Val::lam("y", zz()), zz()),
        ),
    );
    let blocked_beta_mz = Com::app(
        delta.clone(),
        Com::app(Val::lam("y", Com::ret(delta.clone())), zz()),
    );
    let sigma_id_overlap = Com::app(Val::lam("y", zz()), Com::app(i.clone(), zz()));
    Constants {
        i,
        delta,
        delta_bang,
        van_oostrom,
        weak_t,
        blocked_beta_mz,
        sigma_id_overlap,
    }
}

//! Exhaustive term enumeration, the substrate of every bounded check.
//!
//! Node counts include `!`, application, abstraction, `[·]` and `let`
//! constructors; variables are free. Terms come out ordered by node count,
//! then by a fixed structural order, with no two alpha-equivalent terms.

use std::collections::HashMap;
use std::sync::Arc;

use crate::term::{Com, Hint, Val, Var};
use crate::translate::{CbvTerm, MlTerm, MlVal};

const HINTS: [&str; 5] = ["x", "y", "w", "u", "v"];

fn hint(depth: usize) -> Hint {
    Hint::new(HINTS[depth % HINTS.len()])
}

fn vars(k: usize, free: &[Arc<str>]) -> Vec<Var> {
    (0..k as u32)
        .map(Var::Bound)
        .chain(free.iter().cloned().map(Var::Free))
        .collect()
}

struct CcGen {
    free: Vec<Arc<str>>,
    vals: HashMap<(usize, usize), Vec<Val>>,
    coms: HashMap<(usize, usize), Vec<Com>>,
}

impl CcGen {
    fn val(&mut self, n: usize, k: usize) -> Vec<Val> {
        if let Some(v) = self.vals.get(&(n, k)) {
            return v.clone();
        }
        let out: Vec<Val> = if n == 0 {
            vars(k, &self.free).into_iter().map(Val::Var).collect()
        } else {
            self.com(n - 1, k + 1)
                .into_iter()
                .map(|b| Val::Abs(hint(k), Box::new(b)))
                .collect()
        };
        self.vals.insert((n, k), out.clone());
        out
    }

    fn com(&mut self, n: usize, k: usize) -> Vec<Com> {
        if n == 0 {
            return Vec::new();
        }
        if let Some(c) = self.coms.get(&(n, k)) {
            return c.clone();
        }
        let mut out: Vec<Com> = self.val(n - 1, k).into_iter().map(Com::Ret).collect();
        for a in 0..n {
            let fs = self.val(a, k);
            let args = self.com(n - 1 - a, k);
            for f in &fs {
                for m in &args {
                    out.push(Com::app(f.clone(), m.clone()));
                }
            }
        }
        self.coms.insert((n, k), out.clone());
        out
    }
}

fn names(free: &[&str]) -> Vec<Arc<str>> {
    free.iter().map(|s| Arc::from(*s)).collect()
}

/// All computations with `1..=max_nodes` nodes whose free variables are
/// among `free` (none at all when `closed_only`).
pub fn enumerate_terms(max_nodes: usize, free: &[&str], closed_only: bool) -> Vec<Com> {
    let mut g = CcGen {
        free: if closed_only { Vec::new() } else { names(free) },
        vals: HashMap::new(),
        coms: HashMap::new(),
    };
    (1..=max_nodes).flat_map(|n| g.com(n, 0)).collect()
}

/// Union of closed terms up to `closed_nodes` and terms over the free
/// variable `z` up to `open_nodes`, ordered by node count, deduplicated.
pub fn universe(closed_nodes: usize, open_nodes: usize) -> Vec<Com> {
    let mut all = enumerate_terms(closed_nodes, &[], true);
    all.extend(
        enumerate_terms(open_nodes, &["z"], false)
            .into_iter()
            .filter(|t| !t.is_closed()),
    );
    all.sort_by_key(|t| t.nodes());
    all
}

/// The default desk-scale universe: closed terms up to 9 nodes plus open
/// terms up to 7 nodes over one free variable.
pub fn default_universe() -> Vec<Com> {
    universe(9, 7)
}

/// Full call-by-value terms (values included) with `0..=max_nodes` nodes.
pub fn enumerate_cbv(max_nodes: usize, free: &[&str]) -> Vec<CbvTerm> {
    fn go(n: usize, k: usize, free: &[Arc<str>], memo: &mut HashMap<(usize, usize), Vec<CbvTerm>>) -> Vec<CbvTerm> {
        if let Some(v) = memo.get(&(n, k)) {
            return v.clone();
        }
        let out: Vec<CbvTerm> = if n == 0 {
            vars(k, free).into_iter().map(CbvTerm::Var).collect()
        } else {
            let mut out: Vec<CbvTerm> = go(n - 1, k + 1, free, memo)
                .into_iter()
                .map(|b| CbvTerm::Lam(hint(k), Box::new(b)))
                .collect();
            for a in 0..n {
                let ps = go(a, k, free, memo);
                let qs = go(n - 1 - a, k, free, memo);
                for p in &ps {
                    for q in &qs {
                        out.push(CbvTerm::app(p.clone(), q.clone()));
                    }
                }
            }
            out
        };
        memo.insert((n, k), out.clone());
        out
    }
    let free = names(free);
    let mut memo = HashMap::new();
    (0..=max_nodes).flat_map(|n| go(n, 0, &free, &mut memo)).collect()
}

/// λ_ml* computations with `1..=max_nodes` nodes.
pub fn enumerate_ml(max_nodes: usize, free: &[&str]) -> Vec<MlTerm> {
    struct G {
        free: Vec<Arc<str>>,
        vals: HashMap<(usize, usize), Vec<MlVal>>,
        coms: HashMap<(usize, usize), Vec<MlTerm>>,
    }
    impl G {
        fn val(&mut self, n: usize, k: usize) -> Vec<MlVal> {
            if let Some(v) = self.vals.get(&(n, k)) {
                return v.clone();
            }
            let out: Vec<MlVal> = if n == 0 {
                vars(k, &self.free).into_iter().map(MlVal::Var).collect()
            } else {
                self.com(n - 1, k + 1)
                    .into_iter()
                    .map(|b| MlVal::Lam(hint(k), Box::new(b)))
                    .collect()
            };
            self.vals.insert((n, k), out.clone());
            out
        }

        fn com(&mut self, n: usize, k: usize) -> Vec<MlTerm> {
            if n == 0 {
                return Vec::new();
            }
            if let Some(c) = self.coms.get(&(n, k)) {
                return c.clone();
            }
            let mut out: Vec<MlTerm> = self.val(n - 1, k).into_iter().map(MlTerm::Unit).collect();
            for a in 0..n {
                let vs = self.val(a, k);
                let ws = self.val(n - 1 - a, k);
                for v in &vs {
                    for w in &ws {
                        out.push(MlTerm::App(v.clone(), w.clone()));
                    }
                }
            }
            for a in 0..n {
                let ms = self.com(a, k);
                let bodies = self.com(n - 1 - a, k + 1);
                for m in &ms {
                    for b in &bodies {
                        out.push(MlTerm::Let(hint(k), Box::new(m.clone()), Box::new(b.clone())));
                    }
                }
            }
            self.coms.insert((n, k), out.clone());
            out
        }
    }
    let mut g = G {
        free: names(free),
        vals: HashMap::new(),
        coms: HashMap::new(),
    };
    (1..=max_nodes).flat_map(|n| g.com(n, 0)).collect()
}

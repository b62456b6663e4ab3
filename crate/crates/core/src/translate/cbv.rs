//! Plotkin's call-by-value calculus, its kernel, and the bridges to the
//! β_c fragment of the core calculus.

use thiserror::Error;

use crate::term::{Com, Hint, Val, Var};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum CbvTerm {
    Var(Var),
    Lam(Hint, Box<CbvTerm>),
    App(Box<CbvTerm>, Box<CbvTerm>),
}

#[derive(Debug, Error, PartialEq, Eq, Hash)]
#[error("not a kernel term: an application has a non-value in function position")]
pub struct NotKernel;

impl CbvTerm {
    pub fn free(name: &str) -> CbvTerm {
        CbvTerm::Var(Var::Free(name.into()))
    }

    pub fn app(p: CbvTerm, q: CbvTerm) -> CbvTerm {
        CbvTerm::App(Box::new(p), Box::new(q))
    }

    pub fn is_value(&self) -> bool {
        !matches!(self, CbvTerm::App(..))
    }

    /// Every application has a value in function position.
    pub fn is_kernel(&self) -> bool {
        match self {
            CbvTerm::Var(_) => true,
            CbvTerm::Lam(_, b) => b.is_kernel(),
            CbvTerm::App(p, q) => p.is_value() && p.is_kernel() && q.is_kernel(),
        }
    }

    /// Abstraction and application nodes.
    pub fn nodes(&self) -> usize {
        match self {
            CbvTerm::Var(_) => 0,
            CbvTerm::Lam(_, b) => 1 + b.nodes(),
            CbvTerm::App(p, q) => 1 + p.nodes() + q.nodes(),
        }
    }

    fn map_vars<F: Fn(u32, &Var) -> CbvTerm>(&self, d: u32, f: &F) -> CbvTerm {
        match self {
            CbvTerm::Var(x) => f(d, x),
            CbvTerm::Lam(h, b) => CbvTerm::Lam(h.clone(), Box::new(b.map_vars(d + 1, f))),
            CbvTerm::App(p, q) => CbvTerm::app(p.map_vars(d, f), q.map_vars(d, f)),
        }
    }

    pub fn shift(&self, by: i64, cutoff: u32) -> CbvTerm {
        self.map_vars(0, &|d, x| match x {
            Var::Bound(i) if *i >= cutoff + d => CbvTerm::Var(Var::Bound((*i as i64 + by) as u32)),
            _ => CbvTerm::Var(x.clone()),
        })
    }

    pub fn instantiate(&self, v: &CbvTerm) -> CbvTerm {
        self.map_vars(0, &|d, x| match x {
            Var::Bound(i) if *i == d => v.shift(d as i64, 0),
            Var::Bound(i) if *i > d => CbvTerm::Var(Var::Bound(i - 1)),
            _ => CbvTerm::Var(x.clone()),
        })
    }
}

/// One-step β_v reducts, `(λx.M)V → M[V/x]`, under arbitrary contexts. On
/// kernel terms this is the kernel reduction.
pub fn beta_v_step(t: &CbvTerm) -> Vec<CbvTerm> {
    let mut out = Vec::new();
    if let CbvTerm::App(p, q) = t {
        if let CbvTerm::Lam(_, body) = &**p {
            if q.is_value() {
                out.push(body.instantiate(q));
            }
        }
    }
    match t {
        CbvTerm::Var(_) => {}
        CbvTerm::Lam(h, b) => {
            for b2 in beta_v_step(b) {
                out.push(CbvTerm::Lam(h.clone(), Box::new(b2)));
            }
        }
        CbvTerm::App(p, q) => {
            for p2 in beta_v_step(p) {
                out.push(CbvTerm::App(Box::new(p2), q.clone()));
            }
            for q2 in beta_v_step(q) {
                out.push(CbvTerm::App(p.clone(), Box::new(q2)));
            }
        }
    }
    out
}

fn val_to_kernel(v: &Val) -> CbvTerm {
    match v {
        Val::Var(x) => CbvTerm::Var(x.clone()),
        Val::Abs(h, b) => CbvTerm::Lam(h.clone(), Box::new(cc_to_kernel(b))),
    }
}

/// Forgets every `!`.
pub fn cc_to_kernel(t: &Com) -> CbvTerm {
    match t {
        Com::Ret(v) => val_to_kernel(v),
        Com::App(v, m) => CbvTerm::app(val_to_kernel(v), cc_to_kernel(m)),
    }
}

/// Puts a `!` on every value outside function position.
pub fn kernel_to_cc(t: &CbvTerm) -> Result<Com, NotKernel> {
    match t {
        CbvTerm::Var(x) => Ok(Com::Ret(Val::Var(x.clone()))),
        CbvTerm::Lam(h, b) => Ok(Com::Ret(Val::Abs(h.clone(), Box::new(kernel_to_cc(b)?)))),
        CbvTerm::App(p, q) => {
            let f = match &**p {
                CbvTerm::Var(x) => Val::Var(x.clone()),
                CbvTerm::Lam(h, b) => Val::Abs(h.clone(), Box::new(kernel_to_cc(b)?)),
                CbvTerm::App(..) => return Err(NotKernel),
            };
            Ok(Com::app(f, kernel_to_cc(q)?))
        }
    }
}

/// Full CbV into the kernel: `PQ ↦ (λw.w⌈Q⌉)⌈P⌉` when `P` is not a value.
pub fn cbv_embed(t: &CbvTerm) -> CbvTerm {
    match t {
        CbvTerm::Var(_) => t.clone(),
        CbvTerm::Lam(h, b) => CbvTerm::Lam(h.clone(), Box::new(cbv_embed(b))),
        CbvTerm::App(p, q) => {
            if p.is_value() {
                CbvTerm::app(cbv_embed(p), cbv_embed(q))
            } else {
                let body = CbvTerm::app(CbvTerm::Var(Var::Bound(0)), cbv_embed(q).shift(1, 0));
                CbvTerm::app(CbvTerm::Lam(Hint::new("w"), Box::new(body)), cbv_embed(p))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_cbv, parse_com, print_cbv};

    #[test]
    fn forgetting_bangs() {
        let t = parse_com("!(\\x.!x)").unwrap();
        assert_eq!(print_cbv(&cc_to_kernel(&t)), "\\x.x");
        assert_eq!(kernel_to_cc(&CbvTerm::free("x")).unwrap(), parse_com("!x").unwrap());
        assert_eq!(kernel_to_cc(&cc_to_kernel(&t)).unwrap(), t);
    }

    #[test]
    fn embedding_clauses() {
        let a = parse_cbv("(\\x.x) z").unwrap();
        assert_eq!(cbv_embed(&a), a);
        let b = parse_cbv("((\\x.x) (\\y.y)) z").unwrap();
        assert_eq!(print_cbv(&cbv_embed(&b)), "(\\w.w z) ((\\x.x) (\\y.y))");
        assert!(!b.is_kernel());
        assert!(cbv_embed(&b).is_kernel());
        assert_eq!(kernel_to_cc(&b), Err(NotKernel));
    }

    #[test]
    fn beta_v_needs_a_value_argument() {
        let t = parse_cbv("(\\x.x) (y y)").unwrap();
        assert_eq!(beta_v_step(&t), vec![]);
        let u = parse_cbv("(\\x.x x) (\\y.y)").unwrap();
        assert_eq!(beta_v_step(&u), vec![parse_cbv("(\\y.y) (\\y.y)").unwrap()]);
    }
}

use std::collections::BTreeSet;

use crate::term::Var;

/// Names of enclosing binders while printing, innermost last.
pub(crate) type Env = Vec<String>;

pub(crate) fn var_name(x: &Var, env: &Env) -> String {
    match x {
        Var::Free(n) => n.to_string(),
        Var::Bound(i) => {
            let i = *i as usize;
            if i < env.len() {
                env[env.len() - 1 - i].clone()
            } else {
                format!("?{i}")
            }
        }
    }
}

/// Picks the printed name of a binder: its hint, unless that would capture
/// another variable referenced in the body, in which case a numeric suffix
/// is appended. `visit` must report every variable occurrence in the body
/// together with the number of binders crossed inside the body.
pub(crate) fn pick<F>(hint: &str, env: &Env, visit: F) -> String
where
    F: FnOnce(&mut dyn FnMut(u32, &Var)),
{
    let mut taken = BTreeSet::new();
    visit(&mut |d, x| match x {
        Var::Free(n) => {
            taken.insert(n.to_string());
        }
        Var::Bound(i) if *i > d => {
            let outer = (*i - d - 1) as usize;
            if outer < env.len() {
                taken.insert(env[env.len() - 1 - outer].clone());
            }
        }
        Var::Bound(_) => {}
    });
    let base = if hint.is_empty() { "x" } else { hint };
    if !taken.contains(base) {
        return base.to_string();
    }
    (1..)
        .map(|k| format!("{base}{k}"))
        .find(|n| !taken.contains(n))
        .expect("unbounded search")
}

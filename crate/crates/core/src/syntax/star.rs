use super::lex::{Cursor, Scope, Tok};
use super::names::{pick, var_name, Env};
use super::ParseError;
use crate::term::{Hint, Var};
use crate::translate::{StarTerm, StarVal};

const KEYWORDS: &[&str] = &["unit"];

/// Parses `unit V` and left-associative `M * V` (or `M ⋆ V`).
pub fn parse_star(src: &str) -> Result<StarTerm, ParseError> {
    let mut p = Parser {
        cur: Cursor::new(src)?,
        scope: Scope::default(),
    };
    let t = p.com()?;
    p.cur.finish()?;
    Ok(t)
}

struct Parser {
    cur: Cursor,
    scope: Scope,
}

impl Parser {
    fn com(&mut self) -> Result<StarTerm, ParseError> {
        let mut m = if self.cur.is_keyword("unit") {
            self.cur.bump();
            StarTerm::Unit(self.atom()?)
        } else if *self.cur.peek() == Tok::LParen {
            self.cur.bump();
            let m = self.com()?;
            self.cur.expect(Tok::RParen, "')'")?;
            m
        } else {
            return Err(self.cur.error("expected a computation", &["'unit'", "'('"]));
        };
        while *self.cur.peek() == Tok::Star {
            self.cur.bump();
            let v = self.atom()?;
            m = StarTerm::Bind(Box::new(m), v);
        }
        Ok(m)
    }

    fn atom(&mut self) -> Result<StarVal, ParseError> {
        match self.cur.peek().clone() {
            Tok::Lambda => {
                self.cur.bump();
                let name = self.cur.ident(KEYWORDS)?;
                self.cur.expect(Tok::Dot, "'.'")?;
                self.scope.push(name.clone());
                let body = self.com();
                self.scope.pop();
                Ok(StarVal::Lam(Hint::new(&name), Box::new(body?)))
            }
            Tok::LParen => {
                self.cur.bump();
                let v = self.atom()?;
                self.cur.expect(Tok::RParen, "')'")?;
                Ok(v)
            }
            _ => {
                let name = self.cur.ident(KEYWORDS)?;
                Ok(StarVal::Var(match self.scope.lookup(&name) {
                    Some(i) => Var::Bound(i),
                    None => Var::Free(name.as_str().into()),
                }))
            }
        }
    }
}

pub fn print_star(t: &StarTerm) -> String {
    let mut out = String::new();
    com(t, &mut Env::new(), &mut out);
    out
}

fn com(t: &StarTerm, env: &mut Env, out: &mut String) {
    match t {
        StarTerm::Unit(v) => {
            out.push_str("unit ");
            atom(v, env, out);
        }
        StarTerm::Bind(m, v) => {
            com(m, env, out);
            out.push_str(" * ");
            atom(v, env, out);
        }
    }
}

fn atom(v: &StarVal, env: &mut Env, out: &mut String) {
    match v {
        StarVal::Var(x) => out.push_str(&var_name(x, env)),
        StarVal::Lam(h, b) => {
            let name = pick(h.as_str(), env, |f| visit(b, 0, f));
            out.push_str("(\\");
            out.push_str(&name);
            out.push('.');
            env.push(name);
            com(b, env, out);
            env.pop();
            out.push(')');
        }
    }
}

fn visit(t: &StarTerm, d: u32, f: &mut dyn FnMut(u32, &Var)) {
    let val = |v: &StarVal, f: &mut dyn FnMut(u32, &Var)| match v {
        StarVal::Var(x) => f(d, x),
        StarVal::Lam(_, b) => visit(b, d + 1, f),
    };
    match t {
        StarTerm::Unit(v) => val(v, f),
        StarTerm::Bind(m, v) => {
            visit(m, d, f);
            val(v, f);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in ["unit z", "unit z * z * (\\x.unit x)", "unit (\\x.unit x * f) * g"] {
            assert_eq!(print_star(&parse_star(s).unwrap()), s);
        }
        assert_eq!(parse_star("unit z ⋆ f").unwrap(), parse_star("unit z * f").unwrap());
    }

    #[test]
    fn rejects_values() {
        assert!(parse_star("z").is_err());
        assert!(parse_star("unit").is_err());
    }
}

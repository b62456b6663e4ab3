use super::lex::{Cursor, Scope, Tok};
use super::names::{pick, var_name, Env};
use super::ParseError;
use crate::term::{Hint, Var};
use crate::translate::CbvTerm;

/// Ordinary lambda syntax with left-associative application.
pub fn parse_cbv(src: &str) -> Result<CbvTerm, ParseError> {
    let mut p = Parser {
        cur: Cursor::new(src)?,
        scope: Scope::default(),
    };
    let t = p.term()?;
    p.cur.finish()?;
    Ok(t)
}

struct Parser {
    cur: Cursor,
    scope: Scope,
}

impl Parser {
    fn term(&mut self) -> Result<CbvTerm, ParseError> {
        let mut t = self.atom()?;
        loop {
            match self.cur.peek() {
                Tok::Ident(_) | Tok::LParen | Tok::Lambda => {
                    let a = self.atom()?;
                    t = CbvTerm::app(t, a);
                }
                _ => return Ok(t),
            }
        }
    }

    fn atom(&mut self) -> Result<CbvTerm, ParseError> {
        match self.cur.peek().clone() {
            Tok::Lambda => {
                self.cur.bump();
                let name = self.cur.ident(&[])?;
                self.cur.expect(Tok::Dot, "'.'")?;
                self.scope.push(name.clone());
                let body = self.term();
                self.scope.pop();
                Ok(CbvTerm::Lam(Hint::new(&name), Box::new(body?)))
            }
            Tok::LParen => {
                self.cur.bump();
                let t = self.term()?;
                self.cur.expect(Tok::RParen, "')'")?;
                Ok(t)
            }
            Tok::Ident(_) => {
                let name = self.cur.ident(&[])?;
                Ok(CbvTerm::Var(match self.scope.lookup(&name) {
                    Some(i) => Var::Bound(i),
                    None => Var::Free(name.as_str().into()),
                }))
            }
            _ => Err(self.cur.error("expected a term", &["'\\'", "'('", "identifier"])),
        }
    }
}

pub fn print_cbv(t: &CbvTerm) -> String {
    let mut out = String::new();
    term(t, &mut Env::new(), &mut out);
    out
}

fn term(t: &CbvTerm, env: &mut Env, out: &mut String) {
    match t {
        CbvTerm::Var(x) => out.push_str(&var_name(x, env)),
        CbvTerm::Lam(h, b) => {
            let name = pick(h.as_str(), env, |f| visit(b, 0, f));
            out.push('\\');
            out.push_str(&name);
            out.push('.');
            env.push(name);
            term(b, env, out);
            env.pop();
        }
        CbvTerm::App(p, q) => {
            if matches!(**p, CbvTerm::Lam(..)) {
                paren(p, env, out);
            } else {
                term(p, env, out);
            }
            out.push(' ');
            if matches!(**q, CbvTerm::Var(_)) {
                term(q, env, out);
            } else {
                paren(q, env, out);
            }
        }
    }
}

fn paren(t: &CbvTerm, env: &mut Env, out: &mut String) {
    out.push('(');
    term(t, env, out);
    out.push(')');
}

fn visit(t: &CbvTerm, d: u32, f: &mut dyn FnMut(u32, &Var)) {
    match t {
        CbvTerm::Var(x) => f(d, x),
        CbvTerm::Lam(_, b) => visit(b, d + 1, f),
        CbvTerm::App(p, q) => {
            visit(p, d, f);
            visit(q, d, f);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in ["x", "\\x.x", "(\\x.x) z", "x y z", "x (y z)", "(\\w.w z) ((\\x.x) (\\y.y))"] {
            assert_eq!(print_cbv(&parse_cbv(s).unwrap()), s);
        }
    }
}

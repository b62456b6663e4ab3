use super::lex::{Cursor, Scope, Tok};
use super::names::{pick, var_name, Env};
use super::ParseError;
use crate::term::{Com, Hint, Val, Var};

enum Sorted {
    Val(Val),
    Com(Com),
}

/// Parses a computation: `!V`, `V M`, `\x.M` abstractions, parentheses.
pub fn parse_com(src: &str) -> Result<Com, ParseError> {
    let mut p = Parser {
        cur: Cursor::new(src)?,
        scope: Scope::default(),
    };
    let m = p.com()?;
    p.cur.finish()?;
    Ok(m)
}

pub fn parse_val(src: &str) -> Result<Val, ParseError> {
    let mut p = Parser {
        cur: Cursor::new(src)?,
        scope: Scope::default(),
    };
    let span = p.cur.span();
    let v = match p.either()? {
        Sorted::Val(v) => v,
        Sorted::Com(_) => {
            return Err(ParseError::new(
                "expected a value, found a computation".into(),
                span,
                vec!["value".into()],
            ))
        }
    };
    p.cur.finish()?;
    Ok(v)
}

struct Parser {
    cur: Cursor,
    scope: Scope,
}

fn starts_term(t: &Tok) -> bool {
    matches!(t, Tok::Lambda | Tok::Bang | Tok::LParen | Tok::Ident(_))
}

impl Parser {
    fn com(&mut self) -> Result<Com, ParseError> {
        let span = self.cur.span();
        match self.either()? {
            Sorted::Com(m) => Ok(m),
            Sorted::Val(_) => Err(ParseError::new(
                "a value is not a computation; use !V to return it".into(),
                span,
                vec!["'!'".into(), "an argument after the value".into()],
            )),
        }
    }

    fn either(&mut self) -> Result<Sorted, ParseError> {
        match self.cur.peek().clone() {
            Tok::Bang => {
                self.cur.bump();
                Ok(Sorted::Com(Com::Ret(self.atom_val()?)))
            }
            Tok::Lambda => Ok(Sorted::Val(self.lambda()?)),
            Tok::Ident(_) => {
                let v = self.var()?;
                self.maybe_app(v)
            }
            Tok::LParen => {
                self.cur.bump();
                let inner = self.either()?;
                self.cur.expect(Tok::RParen, "')'")?;
                match inner {
                    Sorted::Val(v) => self.maybe_app(v),
                    Sorted::Com(m) => {
                        if starts_term(self.cur.peek()) {
                            Err(self.cur.error(
                                "a computation cannot be applied; the function must be a value",
                                &["')'", "end of input"],
                            ))
                        } else {
                            Ok(Sorted::Com(m))
                        }
                    }
                }
            }
            _ => Err(self.cur.error("expected a term", &["'!'", "'\\'", "'('", "identifier"])),
        }
    }

    fn maybe_app(&mut self, v: Val) -> Result<Sorted, ParseError> {
        if starts_term(self.cur.peek()) {
            let arg = self.com()?;
            Ok(Sorted::Com(Com::app(v, arg)))
        } else {
            Ok(Sorted::Val(v))
        }
    }

    fn var(&mut self) -> Result<Val, ParseError> {
        let name = self.cur.ident(&[])?;
        Ok(Val::Var(match self.scope.lookup(&name) {
            Some(i) => Var::Bound(i),
            None => Var::Free(name.as_str().into()),
        }))
    }

    fn lambda(&mut self) -> Result<Val, ParseError> {
        self.cur.expect(Tok::Lambda, "'\\'")?;
        let name = self.cur.ident(&[])?;
        self.cur.expect(Tok::Dot, "'.'")?;
        self.scope.push(name.clone());
        let body = self.com();
        self.scope.pop();
        Ok(Val::Abs(Hint::new(&name), Box::new(body?)))
    }

    /// The operand of `!`: a variable, an abstraction, or a parenthesized value.
    fn atom_val(&mut self) -> Result<Val, ParseError> {
        match self.cur.peek().clone() {
            Tok::Ident(_) => self.var(),
            Tok::Lambda => self.lambda(),
            Tok::LParen => {
                let span = self.cur.span();
                self.cur.bump();
                let inner = self.either()?;
                self.cur.expect(Tok::RParen, "')'")?;
                match inner {
                    Sorted::Val(v) => Ok(v),
                    Sorted::Com(_) => Err(ParseError::new(
                        "'!' applies to values only".into(),
                        span,
                        vec!["value".into()],
                    )),
                }
            }
            _ => Err(self.cur.error("expected a value after '!'", &["identifier", "'\\'", "'('"])),
        }
    }
}

pub fn print_com(t: &Com) -> String {
    let mut out = String::new();
    com(t, &mut Env::new(), &mut out);
    out
}

pub fn print_val(v: &Val) -> String {
    let mut out = String::new();
    val(v, &mut Env::new(), &mut out);
    out
}

fn com(t: &Com, env: &mut Env, out: &mut String) {
    match t {
        Com::Ret(v) => {
            out.push('!');
            atom(v, env, out);
        }
        Com::App(v, m) => {
            atom(v, env, out);
            if m.is_ret() {
                com(m, env, out);
            } else {
                out.push('(');
                com(m, env, out);
                out.push(')');
            }
        }
    }
}

fn atom(v: &Val, env: &mut Env, out: &mut String) {
    match v {
        Val::Var(x) => out.push_str(&var_name(x, env)),
        Val::Abs(..) => {
            out.push('(');
            val(v, env, out);
            out.push(')');
        }
    }
}

fn val(v: &Val, env: &mut Env, out: &mut String) {
    match v {
        Val::Var(x) => out.push_str(&var_name(x, env)),
        Val::Abs(h, body) => {
            let name = pick(h.as_str(), env, |f| visit_com(body, 0, f));
            out.push('\\');
            out.push_str(&name);
            out.push('.');
            env.push(name);
            com(body, env, out);
            env.pop();
        }
    }
}

pub(crate) fn visit_com(t: &Com, d: u32, f: &mut dyn FnMut(u32, &Var)) {
    match t {
        Com::Ret(v) => visit_val(v, d, f),
        Com::App(v, m) => {
            visit_val(v, d, f);
            visit_com(m, d, f);
        }
    }
}

fn visit_val(v: &Val, d: u32, f: &mut dyn FnMut(u32, &Var)) {
    match v {
        Val::Var(x) => f(d, x),
        Val::Abs(_, b) => visit_com(b, d + 1, f),
    }
}

use super::lex::{Cursor, Scope, Tok};
use super::names::{pick, var_name, Env};
use super::ParseError;
use crate::term::{Hint, Var};
use crate::translate::{MlTerm, MlVal};

const KEYWORDS: &[&str] = &["let", "in"];

enum Sorted {
    Val(MlVal),
    Com(MlTerm),
}

/// Parses λ_ml* computations: `[V]`, `let x = M in N`, `V W`.
pub fn parse_ml(src: &str) -> Result<MlTerm, ParseError> {
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
    fn starts_value(&self) -> bool {
        match self.cur.peek() {
            Tok::Ident(s) => !KEYWORDS.contains(&s.as_str()),
            Tok::Lambda | Tok::LParen => true,
            _ => false,
        }
    }

    fn com(&mut self) -> Result<MlTerm, ParseError> {
        let span = self.cur.span();
        match self.either()? {
            Sorted::Com(t) => Ok(t),
            Sorted::Val(_) => Err(ParseError::new(
                "a value is not a computation; write [V] or apply it".into(),
                span,
                vec!["'['".into(), "a value operand".into()],
            )),
        }
    }

    fn val(&mut self) -> Result<MlVal, ParseError> {
        let span = self.cur.span();
        match self.either()? {
            Sorted::Val(v) => Ok(v),
            Sorted::Com(_) => Err(ParseError::new(
                "application operands must be values".into(),
                span,
                vec!["value".into()],
            )),
        }
    }

    fn either(&mut self) -> Result<Sorted, ParseError> {
        let head = match self.cur.peek().clone() {
            Tok::LBracket => {
                self.cur.bump();
                let v = self.val()?;
                self.cur.expect(Tok::RBracket, "']'")?;
                return Ok(Sorted::Com(MlTerm::Unit(v)));
            }
            Tok::Ident(s) if s == "let" => {
                self.cur.bump();
                let name = self.cur.ident(KEYWORDS)?;
                self.cur.expect(Tok::Eq, "'='")?;
                let m = self.com()?;
                if !self.cur.is_keyword("in") {
                    return Err(self.cur.error("expected 'in'", &["'in'"]));
                }
                self.cur.bump();
                self.scope.push(name.clone());
                let n = self.com();
                self.scope.pop();
                return Ok(Sorted::Com(MlTerm::Let(Hint::new(&name), Box::new(m), Box::new(n?))));
            }
            Tok::Lambda => return Ok(Sorted::Val(self.lambda()?)),
            Tok::Ident(_) => Sorted::Val(self.var()?),
            Tok::LParen => {
                self.cur.bump();
                let inner = self.either()?;
                self.cur.expect(Tok::RParen, "')'")?;
                inner
            }
            _ => {
                return Err(self.cur.error("expected a term", &["'['", "'let'", "'\\'", "'('", "identifier"]))
            }
        };
        match head {
            Sorted::Val(v) if self.starts_value() => {
                let w = self.atom()?;
                Ok(Sorted::Com(MlTerm::App(v, w)))
            }
            Sorted::Com(_) if self.starts_value() => Err(self.cur.error(
                "application operands must be values",
                &["end of term"],
            )),
            other => Ok(other),
        }
    }

    fn atom(&mut self) -> Result<MlVal, ParseError> {
        match self.cur.peek().clone() {
            Tok::Lambda => self.lambda(),
            Tok::LParen => {
                self.cur.bump();
                let v = self.val()?;
                self.cur.expect(Tok::RParen, "')'")?;
                Ok(v)
            }
            _ => self.var(),
        }
    }

    fn var(&mut self) -> Result<MlVal, ParseError> {
        let name = self.cur.ident(KEYWORDS)?;
        Ok(MlVal::Var(match self.scope.lookup(&name) {
            Some(i) => Var::Bound(i),
            None => Var::Free(name.as_str().into()),
        }))
    }

    fn lambda(&mut self) -> Result<MlVal, ParseError> {
        self.cur.expect(Tok::Lambda, "'\\'")?;
        let name = self.cur.ident(KEYWORDS)?;
        self.cur.expect(Tok::Dot, "'.'")?;
        self.scope.push(name.clone());
        let body = self.com();
        self.scope.pop();
        Ok(MlVal::Lam(Hint::new(&name), Box::new(body?)))
    }
}

pub fn print_ml(t: &MlTerm) -> String {
    let mut out = String::new();
    com(t, &mut Env::new(), &mut out);
    out
}

fn com(t: &MlTerm, env: &mut Env, out: &mut String) {
    match t {
        MlTerm::Unit(v) => {
            out.push('[');
            val(v, env, out);
            out.push(']');
        }
        MlTerm::App(v, w) => {
            atom(v, env, out);
            out.push(' ');
            atom(w, env, out);
        }
        MlTerm::Let(h, m, n) => {
            let name = pick(h.as_str(), env, |f| visit(n, 0, f));
            out.push_str("let ");
            out.push_str(&name);
            out.push_str(" = ");
            if matches!(**m, MlTerm::Let(..)) {
                out.push('(');
                com(m, env, out);
                out.push(')');
            } else {
                com(m, env, out);
            }
            out.push_str(" in ");
            env.push(name);
            com(n, env, out);
            env.pop();
        }
    }
}

fn atom(v: &MlVal, env: &mut Env, out: &mut String) {
    match v {
        MlVal::Var(x) => out.push_str(&var_name(x, env)),
        MlVal::Lam(..) => {
            out.push('(');
            val(v, env, out);
            out.push(')');
        }
    }
}

fn val(v: &MlVal, env: &mut Env, out: &mut String) {
    match v {
        MlVal::Var(x) => out.push_str(&var_name(x, env)),
        MlVal::Lam(h, b) => {
            let name = pick(h.as_str(), env, |f| visit(b, 0, f));
            out.push('\\');
            out.push_str(&name);
            out.push('.');
            env.push(name);
            com(b, env, out);
            env.pop();
        }
    }
}

fn visit(t: &MlTerm, d: u32, f: &mut dyn FnMut(u32, &Var)) {
    match t {
        MlTerm::Unit(v) => visit_val(v, d, f),
        MlTerm::App(v, w) => {
            visit_val(v, d, f);
            visit_val(w, d, f);
        }
        MlTerm::Let(_, m, n) => {
            visit(m, d, f);
            visit(n, d + 1, f);
        }
    }
}

fn visit_val(v: &MlVal, d: u32, f: &mut dyn FnMut(u32, &Var)) {
    match v {
        MlVal::Var(x) => f(d, x),
        MlVal::Lam(_, b) => visit(b, d + 1, f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_let_and_unit() {
        let t = parse_ml("let x = [z] in [x]").unwrap();
        assert_eq!(
            t,
            MlTerm::Let(
                Hint::new("x"),
                Box::new(MlTerm::Unit(MlVal::free("z"))),
                Box::new(MlTerm::Unit(MlVal::Var(Var::Bound(0)))),
            )
        );
    }

    #[test]
    fn round_trips() {
        for s in [
            "(\\x.[x]) z",
            "let y = z z in let x = [y] in [x]",
            "let y = (let x = [a] in [x]) in y y",
            "[\\x.let y = x x in [y]]",
        ] {
            assert_eq!(print_ml(&parse_ml(s).unwrap()), s);
        }
    }

    #[test]
    fn rejects_non_value_operands() {
        assert!(parse_ml("(z z) z").is_err());
        assert!(parse_ml("z").is_err());
        assert!(parse_ml("let in = [z] in [z]").is_err());
    }
}

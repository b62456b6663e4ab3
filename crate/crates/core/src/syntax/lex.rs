use super::{ParseError, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Lambda,
    Dot,
    Bang,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Eq,
    Star,
    Ident(String),
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Lambda => "'\\'".into(),
            Tok::Dot => "'.'".into(),
            Tok::Bang => "'!'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Eq => "'='".into(),
            Tok::Star => "'*'".into(),
            Tok::Ident(s) => format!("identifier '{s}'"),
            Tok::Eof => "end of input".into(),
        }
    }
}

pub(crate) fn lex(src: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        let single = match c {
            '\\' | 'λ' => Some(Tok::Lambda),
            '.' => Some(Tok::Dot),
            '!' => Some(Tok::Bang),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '=' => Some(Tok::Eq),
            '*' | '⋆' => Some(Tok::Star),
            _ => None,
        };
        if let Some(t) = single {
            it.next();
            out.push((t, SourceSpan::new(i, i + c.len_utf8())));
            continue;
        }
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if is_ident_start(c) {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if is_ident_continue(d) {
                    end = j + d.len_utf8();
                    it.next();
                } else {
                    break;
                }
            }
            out.push((Tok::Ident(src[i..end].to_string()), SourceSpan::new(i, end)));
            continue;
        }
        return Err(ParseError::new(
            format!("unexpected character {c:?}"),
            SourceSpan::new(i, i + c.len_utf8()),
            vec!["a term".into()],
        ));
    }
    out.push((Tok::Eof, SourceSpan::new(src.len(), src.len())));
    Ok(out)
}

fn is_ident_start(c: char) -> bool {
    (c.is_alphabetic() && c != 'λ') || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    (c.is_alphanumeric() && c != 'λ') || c == '_' || c == '\''
}

/// Token cursor shared by the four parsers.
pub(crate) struct Cursor {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

impl Cursor {
    pub(crate) fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Cursor {
            toks: lex(src)?,
            pos: 0,
        })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    pub(crate) fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    pub(crate) fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    pub(crate) fn error(&self, msg: impl Into<String>, expected: &[&str]) -> ParseError {
        ParseError::new(
            format!("{} (found {})", msg.into(), self.peek().describe()),
            self.span(),
            expected.iter().map(|s| s.to_string()).collect(),
        )
    }

    pub(crate) fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {what}"), &[what]))
        }
    }

    pub(crate) fn ident(&mut self, reserved: &[&str]) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if !reserved.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.error("expected a variable name", &["identifier"])),
        }
    }

    pub(crate) fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input", &["end of input"]))
        }
    }
}

/// Binder scope: resolves a name to a de Bruijn index.
#[derive(Default)]
pub(crate) struct Scope(Vec<String>);

impl Scope {
    pub(crate) fn push(&mut self, n: String) {
        self.0.push(n);
    }

    pub(crate) fn pop(&mut self) {
        self.0.pop();
    }

    pub(crate) fn lookup(&self, n: &str) -> Option<u32> {
        self.0.iter().rev().position(|m| m == n).map(|i| i as u32)
    }
}

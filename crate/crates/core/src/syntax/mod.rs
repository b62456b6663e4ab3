//! Concrete syntax for the core calculus and its siblings, and the JSON
//! trace format.

mod cbv;
mod cc;
mod json;
pub(crate) mod lex;
mod ml;
mod names;
mod star;

use std::fmt;

pub use cbv::{parse_cbv, print_cbv};
pub use cc::{parse_com, parse_val, print_com, print_val};
pub use json::{export_trace, trace_json, TraceJson};
pub use ml::{parse_ml, print_ml};
pub use star::{parse_star, print_star};

/// Byte offsets into the parsed text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub begin: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(begin: usize, end: usize) -> Self {
        debug_assert!(begin <= end);
        SourceSpan { begin, end }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message} at {}..{}", span.begin, span.end)]
pub struct ParseError {
    pub message: String,
    pub span: SourceSpan,
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(message: String, span: SourceSpan, expected: Vec<String>) -> Self {
        ParseError {
            message,
            span,
            expected,
        }
    }
}

impl fmt::Display for crate::term::Com {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_com(self))
    }
}

impl fmt::Display for crate::term::Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_val(self))
    }
}

impl fmt::Display for crate::translate::MlTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_ml(self))
    }
}

impl fmt::Display for crate::translate::StarTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_star(self))
    }
}

impl fmt::Display for crate::translate::CbvTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_cbv(self))
    }
}

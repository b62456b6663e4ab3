//! JSON rendering of reduction traces.

use serde::Serialize;

use crate::rewrite::{ClosureClass, Counts, PathToken, Rule, Status, Trace};

pub const TRACE_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepJson {
    pub rule: Rule,
    pub path: Vec<PathToken>,
    pub closure: ClosureClass,
    pub result: String,
}

/// Serialized form of a trace. Field order is part of the format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceJson {
    pub schema: u32,
    pub initial: String,
    pub steps: Vec<StepJson>,
    pub counts: Counts,
    pub status: Status,
}

pub fn trace_json(tr: &Trace) -> TraceJson {
    TraceJson {
        schema: TRACE_SCHEMA,
        initial: tr.initial.to_string(),
        steps: tr
            .steps
            .iter()
            .map(|s| StepJson {
                rule: s.occurrence.rule,
                path: s.occurrence.path.clone(),
                closure: s.occurrence.closure(),
                result: s.result.to_string(),
            })
            .collect(),
        counts: tr.counts,
        status: tr.status,
    }
}

/// Compact JSON text of a trace.
pub fn export_trace(tr: &Trace) -> String {
    serde_json::to_string(&trace_json(tr)).expect("trace serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{ClosureClass, RuleSet};
    use crate::strategy::{leftmost, Fuel};
    use crate::syntax::parse_com;
    use crate::term::named_constants;

    #[test]
    fn empty_trace() {
        let tr = Trace::new(parse_com("!z").unwrap());
        assert_eq!(
            export_trace(&tr),
            r#"{"schema":1,"initial":"!z","steps":[],"counts":{"beta_c":0,"sigma":0,"id":0,"iota":0},"status":"normal_form"}"#
        );
    }

    #[test]
    fn van_oostrom_full_reduction() {
        let c = named_constants();
        let o = leftmost(&c.van_oostrom, ClosureClass::Full, RuleSet::of(&[Rule::BetaC, Rule::Id]), Fuel::DEFAULT);
        let v: serde_json::Value = serde_json::from_str(&export_trace(o.trace())).unwrap();
        let rules: Vec<_> = v["steps"].as_array().unwrap().iter().map(|s| s["rule"].as_str().unwrap()).collect();
        assert_eq!(rules, ["beta_c", "id"]);
        assert_eq!(v["steps"][0]["path"], serde_json::json!(["fun_body"]));
        assert_eq!(v["steps"][1]["result"], "z!z");
    }
}
